use cherednik::groups::*;
use cherednik::scalars::*;
use cherednik::typea::*;
use cherednik::unitarity::{Interval, LocusDescription};
use proptest::prelude::*;

fn p(s: &str) -> Partition {
    parse_partition(s).unwrap()
}

#[test]
fn hook_stat_examples() {
    for n in 1..=6usize {
        let row = hook_stats(&Partition::new(vec![n]));
        assert_eq!((row.ell, row.m_star, row.big_n), (n, 1, n));
        assert_eq!(row.content, (n * (n - 1) / 2) as i64);
        let col = hook_stats(&Partition::new(vec![1; n]));
        assert_eq!((col.ell, col.m_star, col.big_n), (n, n, 1));
        assert_eq!(col.content, -((n * (n - 1) / 2) as i64));
    }
    assert_eq!(hook_stats(&p("2,2")), HookStats { ell: 3, m_star: 2, big_n: 2, content: 0 });
    assert!(parse_partition("2,,1").is_err());
    assert!(parse_partition("2,0").is_err());
    assert_eq!(p("1,3,3"), p("3,3,1"));
}

#[test]
fn conjugation_symmetry() {
    for n in 2..=7 {
        for t in Partition::all(n) {
            let (a, b) = (hook_stats(&t), hook_stats(&t.conjugate()));
            assert_eq!(a.ell, b.ell);
            assert_eq!(a.content, -b.content);
            // largest hook from its definition
            assert_eq!(a.ell, *t.hook_lengths().iter().max().unwrap());
            assert_eq!(genera_locus(&t.conjugate()), genera_locus(&t).negated(), "{}", t);
        }
    }
}

#[test]
fn tau_shift_examples() {
    assert_eq!(tau_shift(&p("2,2"), 1).unwrap(), p("2,1,1"));
    assert_eq!(tau_shift(&p("2,2"), 2).unwrap(), p("1,1,1,1"));
    assert_eq!(tau_shift(&p("3,3,1"), 1).unwrap(), p("3,2,1,1"));
    assert!(tau_shift(&p("3,3,1"), 3).is_err());
    assert!(tau_shift(&p("3,1"), 0).is_err());
}

#[test]
fn f_closed_examples() {
    let c = UniPoly::linear(int(0), int(1));
    let lin = |k: i64| UniPoly::constant(int(1)).add_scaled_ret(&int(-k), &c);
    assert_eq!(f_closed_uni(&p("2,2"), 1), lin(2));
    assert_eq!(f_closed_uni(&p("2,2"), 2), lin(2).mul(&lin(3)));
    assert_eq!(f_closed(&p("2,2"), 1).unwrap(), lin(2).to_param_poly());
    assert!(f_closed(&p("2,2"), 3).is_err());
    for n in 1..=6 {
        for t in Partition::all(n) {
            let ms = hook_stats(&t).m_star;
            for i in 1..=ms {
                assert_eq!(f_closed_uni(&t, i).eval(&int(0)), int(1));
                if i < ms {
                    // quotient is the next linear factor
                    let next = lin((hook_stats(&t).big_n + i) as i64);
                    assert_eq!(f_closed_uni(&t, i).mul(&next), f_closed_uni(&t, i + 1));
                }
            }
        }
    }
}

trait AddScaled {
    fn add_scaled_ret(self, q: &Rational, o: &UniPoly) -> UniPoly;
}

impl AddScaled for UniPoly {
    fn add_scaled_ret(mut self, q: &Rational, o: &UniPoly) -> UniPoly {
        self.add_scaled(q, o);
        self
    }
}

#[test]
fn line_grams_match_closed_form_small() {
    for n in 2..=4 {
        // (1^n) shifts to itself, so it has no separate tau_i line
        for t in Partition::all(n).into_iter().filter(|t| t.parts()[0] > 1) {
            for i in 1..=hook_stats(&t).m_star {
                let g = tau_line_gram(&t, i).unwrap();
                let g0 = g.eval(&int(0));
                assert!(g0 > int(0));
                assert_eq!(g.scale(&g0.recip()), f_closed_uni(&t, i), "{} i {}", t, i);
            }
        }
    }
}

#[test]
fn genera_examples() {
    let line = |iv: Interval, pts: Vec<Rational>| LocusDescription::Line { intervals: vec![iv], points: pts };
    assert_eq!(genera_locus(&p("2,2")), line(Interval::new(Some(rat(-1, 3)), Some(rat(1, 3))), vec![rat(-1, 2), rat(1, 2)]));
    assert_eq!(genera_locus(&p("2,1")), line(Interval::new(Some(rat(-1, 3)), Some(rat(1, 3))), vec![]));
    assert_eq!(genera_locus(&p("5")), line(Interval::new(None, Some(rat(1, 5))), vec![]));
    assert_eq!(genera_locus(&p("1,1,1")), line(Interval::new(Some(rat(-1, 3)), None), vec![]));
    // (3,3): ell 4, N 3 gives {1/3}; conjugate (2,2,2): ell 4, N 2 gives {-1/2, -1/3}
    let pts = vec![rat(-1, 2), rat(-1, 3), rat(1, 3)];
    assert_eq!(genera_locus(&p("3,3")), line(Interval::new(Some(rat(-1, 4)), Some(rat(1, 4))), pts));
}

#[test]
fn kasatani_examples() {
    let w = kasatani_weights(3, 1, 2).unwrap();
    assert_eq!(w.len(), 2);
    assert_eq!((w[0].tau.clone(), w[0].degree.clone()), (p("1,1,1"), int(3)));
    assert_eq!(w[1].tau, p("3"));
    let w = kasatani_weights(3, 1, 3).unwrap();
    assert_eq!((w[0].tau.clone(), w[0].degree.clone()), (p("2,1"), int(1)));
    let w = kasatani_weights(4, 1, 2).unwrap();
    let got: Vec<(Partition, Rational)> = w.into_iter().map(|k| (k.tau, k.degree)).collect();
    assert_eq!(got, vec![(p("1,1,1,1"), int(6)), (p("3,1"), int(2)), (p("4"), int(0))]);
    assert!(kasatani_weights(4, 2, 4).is_err());
    assert!(kasatani_weights(3, 1, 4).is_err());
    assert!(kasatani_weights(3, 0, 2).is_err());
    // every weight is a partition of n
    for n in 2..=8 {
        for m in 2..=n {
            for w in kasatani_weights(n, 1, m).unwrap() {
                assert_eq!(w.tau.n(), n);
            }
        }
    }
}

#[test]
fn p_kappa_examples() {
    assert!(p_kappa_member(&p("2,2"), &int(2)));
    assert!(p_kappa_member(&p("2,2"), &rat(3, 2)));
    assert!(!p_kappa_member(&p("1,1"), &rat(1, 2)));
    assert!(!p_kappa_member(&p("2,2"), &int(-3)));
}

// Definition-level oracle: fill a finite patch of tau + Z p and test the
// row and diagonal conditions on every pair inside it.
fn brute_force(tau: &Partition, kappa: i64, bound: i64) -> Vec<Vec<i64>> {
    let n = tau.n();
    let m = tau.len() as i64;
    let cells: Vec<(i64, i64)> = tau.cells().iter().map(|&(r, c)| (r as i64 + 1, c as i64 + 1)).collect();
    let reach = bound / n as i64 + 3;
    let mut out = Vec::new();
    let mut w = vec![1i64; n];
    loop {
        let mut res: Vec<i64> = w.iter().map(|v| (v - 1) % n as i64).collect();
        res.sort();
        res.dedup();
        if res.len() == n {
            let mut patch = std::collections::HashMap::new();
            for k in -reach..=reach {
                for (x, &(a, b)) in cells.iter().enumerate() {
                    patch.insert((a - k * m, b + k * (kappa - m)), w[x] - k * n as i64);
                }
            }
            let ok = patch.iter().all(|(&(a, b), &t)| {
                let row = patch.get(&(a, b + 1)).is_none_or(|&u| t < u);
                let diag = (0..3 * reach * m).all(|k| patch.get(&(a + k + 1, b + k)).is_none_or(|&u| t < u));
                row && diag
            });
            if ok {
                out.push(w.clone());
            }
        }
        let mut i = 0;
        while i < n && w[i] == bound {
            w[i] = 1;
            i += 1;
        }
        if i == n {
            break;
        }
        w[i] += 1;
    }
    out.sort();
    out
}

#[test]
fn enumeration_matches_definition() {
    for (t, kappa, bound) in [("2,1", 3, 7), ("2,1", 4, 8), ("1,1", 2, 6), ("3", 1, 8), ("1,1,1", 3, 7), ("2,2", 2, 7), ("3,1", 4, 7), ("3,1", 5, 9)] {
        let t = p(t);
        let mut got: Vec<Vec<i64>> = enumerate_tableaux(&t, kappa, bound).unwrap().into_iter().map(|(x, _)| x.window.iter().map(|c| c.1).collect()).collect();
        got.sort();
        assert_eq!(got, brute_force(&t, kappa, bound as i64), "{} kappa {}", t, kappa);
    }
}

#[test]
fn enumeration_examples() {
    assert_eq!(enumerate_tableaux(&p("2,1"), 3, 3).unwrap().len(), 2);
    assert!(enumerate_tableaux(&p("2,1"), 2, 3).is_err());
    assert_eq!(enumerate_tableaux(&p("2,1"), 7, 3).unwrap().len(), 2);
    let one = enumerate_tableaux(&p("1,1"), 2, 2).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].1.entries, vec![int(0), int(-1)]);
    for n in 1..=5 {
        for t in Partition::all(n) {
            let k = hook_stats(&t.conjugate()).big_n as i64;
            assert_eq!(enumerate_tableaux(&t, k, n).unwrap().len(), t.num_syt(), "{}", t);
        }
    }
    let small = enumerate_tableaux(&p("2,2"), 2, 8).unwrap();
    let big = enumerate_tableaux(&p("2,2"), 2, 12).unwrap();
    assert_eq!(&big[..small.len()], &small[..]);
    assert!(matches!(enumerate_tableaux(&p("1,1"), 1, 4), Err(TypeAError::NotDiagonalizable(..))));
}

#[test]
fn spectra_examples() {
    // N((2,1)) = 3 - 1 + 1 = 3, so kappa = 3 is the smallest admissible value
    let r = spectra_unitary_check(&p("2,1"), 3, 9).unwrap();
    assert!(!r.is_empty() && r.iter().all(|t| t.passes()));
    let r = spectra_unitary_check(&p("2,2"), 2, 12).unwrap();
    assert!(!r.is_empty() && r.iter().all(|t| t.passes()));
    assert!(spectra_unitary_check(&p("1,1"), 1, 6).is_err());
    // alpha from the eigenvalue formula, on the column (1,1) with kappa 2
    let r = spectra_unitary_check(&p("1,1"), 2, 2).unwrap();
    assert_eq!(r[0].content.alpha, vec![int(1), int(2)]);
}

#[test]
fn intertwiner_identities() {
    let r = intertwiner_check(2, &int(5), 0);
    assert!(r.all_ok(), "{:?}", r);
    let generic = rat(1000003, 999983);
    let r = intertwiner_check(3, &generic, 3);
    assert!(r.all_ok(), "{:?}", r);
    assert!(r.sigma_squared_checked > 0);
    assert!(r.skipped.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn integral_kappa_tableaux_pass(n in 2usize..=4, pick in 0usize..5, extra in 0i64..3) {
        let parts = Partition::all(n);
        let t = &parts[pick % parts.len()];
        let k = hook_stats(&t.conjugate()).big_n as i64 + extra;
        for rep in spectra_unitary_check(t, k, 3 * n).unwrap() {
            prop_assert!(rep.passes());
        }
    }
}
