use cherednik::groups::*;
use cherednik::linalg::form;
use cherednik::scalars::*;
use cherednik::unitarity::*;
use cherednik::verma::*;
use num_traits::Signed;
use proptest::prelude::*;

fn tau_of(g: &ReflectionGroup, s: &str) -> usize {
    g.parse_irrep(s).unwrap()
}

// norm of the witness recomputed from the generic Gram at the same point
fn recheck_witness(g: &ReflectionGroup, tau: usize, point: &[Rational], v: &Verdict) {
    let Verdict::NonUnitary { witness_degree, witness_norm, witness_vector, .. } = v else { return };
    let mut verma = Verma::new(g, tau, point_params(g, point).unwrap(), Cyclotomic::one());
    let gram = verma.gram(*witness_degree).clone();
    let piece = verma.piece(*witness_degree).clone();
    let mut w = vec![Cyclotomic::zero(); piece.dim()];
    for e in witness_vector {
        w[piece.index(&e.monomial, e.tau_index)] = e.value.clone();
    }
    assert_eq!(&form(&gram, &w, &w), witness_norm);
    assert_eq!(certify_sign(witness_norm).unwrap().sign, Sign::Negative);
}

#[test]
fn s2_trivial_points() {
    let g = build_symmetric(2).unwrap();
    let t = g.trivial();
    let v = certify_point(&g, t, &[rat(1, 4)], 8).unwrap();
    assert_eq!(v, Verdict::ConsistentUpTo { checked_degree: 8, kernel_dims: vec![0; 9] });
    let v = certify_point(&g, t, &[rat(3, 4)], 8).unwrap();
    assert_eq!(v.witness_degree(), Some(1));
    recheck_witness(&g, t, &[rat(3, 4)], &v);
    // C^2 = C p1 + C(x1 - x2): at c = 1/2 only the constants in x1 - x2 survive,
    // so the quotient has one vector per degree and the kernel has m.
    let v = certify_point(&g, t, &[rat(1, 2)], 8).unwrap();
    assert_eq!(v.kernel_dims().unwrap(), &(0..=8).collect::<Vec<_>>()[..]);
}

#[test]
fn z2_trivial_half_has_one_kernel_vector_per_degree() {
    let g = build_cyclic(2).unwrap();
    // b = 2c; a_1 = 1 - b_1 = 0 kills every positive degree
    let v = certify_point(&g, g.trivial(), &[int(1)], 8).unwrap();
    let mut expect = vec![1; 9];
    expect[0] = 0;
    assert_eq!(v.kernel_dims().unwrap(), &expect[..]);
}

#[test]
fn s3_standard_sweep_interval() {
    let g = build_symmetric(3).unwrap();
    let t = tau_of(&g, "2,1");
    let grid: Vec<Vec<Rational>> = (-12..=12).map(|k| vec![rat(k, 12)]).collect();
    let out = sweep(&g, t, &grid, 6, Some(2)).unwrap();
    for (p, v) in grid.iter().zip(&out) {
        let v = v.as_ref().unwrap();
        let outside = p[0].abs() > rat(1, 3);
        assert_eq!(v.is_non_unitary(), outside, "c = {}", p[0]);
        recheck_witness(&g, t, p, v);
    }
}

// every character of Z/4 through the shifted coordinates
#[test]
fn cyclic4_characters_match_shifted_predictor() {
    let g = build_cyclic(4).unwrap();
    let vals = [int(-1), rat(1, 2), int(2), rat(7, 2)];
    for k in 0..4 {
        let tau = g.parse_irrep(&k.to_string()).unwrap();
        let c = Certifier::new(&g, tau, 6).unwrap();
        for x in &vals {
            for y in &vals {
                for z in &vals {
                    let b = vec![x.clone(), y.clone(), z.clone()];
                    let v = c.certify(&b).unwrap();
                    assert_eq!(!v.is_non_unitary(), predictor_rank1(&rank1_shift(&b, k)), "k {} b {:?}", k, b);
                }
            }
        }
    }
}

#[test]
fn cyclic3_grid_matches_rank1_predictor() {
    let g = build_cyclic(3).unwrap();
    let c = Certifier::new(&g, g.trivial(), 4).unwrap();
    assert_eq!(c.engine_name(), "symbolic");
    for a in -2..=2 {
        for b in -2..=2 {
            let p = vec![rat(a, 1), rat(b, 1)];
            let v = c.certify(&p).unwrap();
            assert_eq!(!v.is_non_unitary(), predictor_rank1(&p), "b = {:?}", p);
        }
    }
}

#[test]
fn zero_is_consistent_everywhere() {
    for kind in [GroupKind::Symmetric(3), GroupKind::Cyclic(4), GroupKind::DihedralOdd(1), GroupKind::DihedralEven(2)] {
        let g = ReflectionGroup::build(kind).unwrap();
        let zero = vec![int(0); param_arity(&g)];
        for tau in 0..g.irreps.len() {
            let v = certify_point(&g, tau, &zero, 4).unwrap();
            assert!(!v.is_non_unitary(), "{} {}", kind, g.irreps[tau].label);
            assert!(v.kernel_dims().unwrap().iter().all(|&k| k == 0));
        }
    }
}

#[test]
fn engines_agree() {
    for n in [3, 4] {
        let g = build_symmetric(n).unwrap();
        for tau in 0..g.irreps.len() {
            let fast = Certifier::new(&g, tau, 4).unwrap();
            assert_eq!(fast.engine_name(), "isotypic");
            let slow = Certifier::pointwise(&g, tau, 4);
            for k in [-3, -1, 1, 2, 3, 4, 6] {
                let p = [rat(k, 6)];
                let a = fast.certify(&p).unwrap();
                let b = slow.certify(&p).unwrap();
                assert_eq!(a.kind(), b.kind());
                assert_eq!(a.witness_degree(), b.witness_degree());
                assert_eq!(a.kernel_dims(), b.kernel_dims());
                recheck_witness(&g, tau, &p, &a);
            }
        }
    }
    let g = build_dihedral_even(2).unwrap();
    for tau in 0..g.irreps.len() {
        let fast = Certifier::new(&g, tau, 3).unwrap();
        let slow = Certifier::pointwise(&g, tau, 3);
        for p in [[rat(1, 3), rat(-1, 2)], [rat(1, 5), rat(1, 5)], [rat(2, 3), int(0)]] {
            let a = fast.certify(&p).unwrap();
            assert_eq!(a, slow.certify(&p).unwrap());
            recheck_witness(&g, tau, &p, &a);
        }
    }
}

#[test]
fn sign_twist_reflects_verdicts() {
    let g = build_symmetric(4).unwrap();
    for (a, b) in [("4", "1,1,1,1"), ("3,1", "2,1,1"), ("2,2", "2,2")] {
        let ca = Certifier::new(&g, tau_of(&g, a), 4).unwrap();
        let cb = Certifier::new(&g, tau_of(&g, b), 4).unwrap();
        for k in -6..=6 {
            let x = ca.certify(&[rat(k, 6)]).unwrap();
            let y = cb.certify(&[rat(-k, 6)]).unwrap();
            assert_eq!(x.witness_degree(), y.witness_degree());
            assert_eq!(x.kernel_dims(), y.kernel_dims());
        }
    }
    let g = build_dihedral_even(3).unwrap();
    let triv = g.trivial();
    for (label, s1, s2) in [("eps1", -1, 1), ("eps2", 1, -1), ("sign", -1, -1)] {
        let ct = Certifier::new(&g, triv, 4).unwrap();
        let ce = Certifier::new(&g, tau_of(&g, label), 4).unwrap();
        for (p, q) in [(1, 3), (-1, 2), (2, 3), (1, 6)] {
            let pt = [rat(p, q), rat(q - p, 3 * q)];
            let tw = [&pt[0] * int(s1), &pt[1] * int(s2)];
            assert_eq!(ct.certify(&pt).unwrap().witness_degree(), ce.certify(&tw).unwrap().witness_degree());
        }
    }
}

#[test]
fn necessary_condition_examples() {
    for n in 2..=4 {
        let g = build_symmetric(n).unwrap();
        let t = g.trivial();
        let r = necessary_conditions(&g, t, &[rat(1, n as i64)]).unwrap();
        assert_eq!(r.hc_nonneg, Some(true));
        let c = rat(1, n as i64) + rat(1, 100);
        let r = necessary_conditions(&g, t, &[c.clone()]).unwrap();
        assert_eq!(r.hc_nonneg, Some(false));
        assert_eq!(certify_point(&g, t, &[c], 2).unwrap().witness_degree(), Some(1));
    }
    let g = build_symmetric(3).unwrap();
    let r = necessary_conditions(&g, tau_of(&g, "2,1"), &[rat(1, 2)]).unwrap();
    // c (D_tau - D_sigma) <= 1 with D = content: fails for sigma = (1,1,1) since 0 - (-3) = 3
    let ok = |label: &str| r.degree1.iter().find(|(s, _)| s.to_string() == label).unwrap().1;
    assert!(!ok("1,1,1"));
    assert!(ok("3"));
    let r = necessary_conditions(&g, tau_of(&g, "2,1"), &[rat(-1, 2)]).unwrap();
    assert!(!r.degree1.iter().find(|(s, _)| s.to_string() == "3").unwrap().1);
    for kind in [GroupKind::Symmetric(3), GroupKind::Cyclic(3), GroupKind::DihedralEven(2)] {
        let g = ReflectionGroup::build(kind).unwrap();
        for tau in 0..g.irreps.len() {
            let r = necessary_conditions(&g, tau, &vec![int(0); param_arity(&g)]).unwrap();
            assert!(r.all_pass());
        }
    }
}

#[test]
fn failed_conditions_give_low_witnesses() {
    let groups = [GroupKind::Symmetric(3), GroupKind::Symmetric(4), GroupKind::DihedralOdd(2), GroupKind::DihedralEven(2)];
    for kind in groups {
        let g = ReflectionGroup::build(kind).unwrap();
        let cert: Vec<Certifier> = (0..g.irreps.len()).map(|t| Certifier::new(&g, t, 1).unwrap()).collect();
        let pts: Vec<Vec<Rational>> = if param_arity(&g) == 1 {
            (-8..=8).map(|k| vec![rat(k, 4)]).collect()
        } else {
            (-3..=3).flat_map(|a| (-3..=3).map(move |b| vec![rat(a, 3), rat(b, 3)])).collect()
        };
        for p in &pts {
            for (tau, c) in cert.iter().enumerate() {
                let r = necessary_conditions(&g, tau, p).unwrap();
                if !r.all_pass() {
                    assert!(c.certify(p).unwrap().witness_degree().unwrap() <= 1, "{} {} {:?}", kind, tau, p);
                }
            }
        }
    }
}

#[test]
fn rank1_predictor_examples() {
    for k in -4..=8 {
        let c = rat(k, 8);
        assert_eq!(predictor_rank1(&[&c * int(2)]), c <= rat(1, 2));
    }
    assert!(predictor_rank1(&[int(0), int(0)]));
    assert!(predictor_rank1(&[int(1), int(5)]));
    assert!(!predictor_rank1(&[int(2), int(0)]));
    assert!(!predictor_rank1(&[int(0), int(3)]));
}

fn line(lo: Option<Rational>, hi: Option<Rational>) -> LocusDescription {
    LocusDescription::Line { intervals: vec![Interval::new(lo, hi)], points: vec![] }
}

#[test]
fn dihedral_predictor_examples() {
    let g = build_dihedral_odd(2).unwrap();
    assert_eq!(predictor_dihedral(&g, tau_of(&g, "tau1")).unwrap(), line(Some(rat(-1, 5)), Some(rat(1, 5))));
    assert_eq!(predictor_dihedral(&g, g.trivial()).unwrap(), line(None, Some(rat(1, 5))));
    let g = build_dihedral_even(2).unwrap();
    let l = predictor_dihedral(&g, tau_of(&g, "tau1")).unwrap();
    for a in -6..=6 {
        for b in -6..=6 {
            let (x, y) = (rat(a, 6), rat(b, 6));
            let inside = (&x + &y).abs() <= rat(1, 2) && (&x - &y).abs() <= rat(1, 2);
            assert_eq!(l.contains(&[x, y]), inside);
        }
    }
    let g = build_dihedral_even(3).unwrap();
    let l = predictor_dihedral(&g, g.trivial()).unwrap();
    assert!(l.contains(&[rat(1, 2), rat(-1, 3)]));
    assert!(!l.contains(&[rat(2, 3), rat(-1, 2)]));
    // the boundary line c1 + c2 = 1/d is unbounded
    assert!(l.contains(&[int(3), rat(-8, 3)]));
    assert!(!l.contains(&[rat(1, 6), rat(1, 5)]));
    let s = predictor_dihedral(&g, tau_of(&g, "sign")).unwrap();
    assert!(s.contains(&[rat(-1, 2), rat(1, 3)]));
    let c = build_cyclic(3).unwrap();
    assert!(predictor_dihedral(&c, 0).is_err());
}

#[test]
fn coxeter_exterior_examples() {
    let g = build_symmetric(4).unwrap();
    assert_eq!(predictor_coxeter_exterior(&g, 0).unwrap(), line(None, Some(rat(1, 4))));
    assert_eq!(predictor_coxeter_exterior(&g, 3).unwrap(), line(Some(rat(-1, 4)), None));
    assert_eq!(predictor_coxeter_exterior(&g, 1).unwrap(), line(Some(rat(-1, 4)), Some(rat(1, 4))));
    assert_eq!(g.irreps[exterior_power_irrep(&g, 2).unwrap()].label.to_string(), "2,1,1");
    let d = build_dihedral_odd(2).unwrap();
    assert_eq!(predictor_coxeter_exterior(&d, 1).unwrap(), line(Some(rat(-1, 5)), Some(rat(1, 5))));
}

#[test]
fn locus_json_and_twist() {
    let g = build_dihedral_even(2).unwrap();
    let l = predictor_dihedral(&g, g.trivial()).unwrap();
    let j = l.to_json();
    assert_eq!(j["arity"], 2);
    assert_eq!(j["regions"].as_array().unwrap().len(), 2);
    let e1 = l.twisted(&[-1, 1]);
    assert_eq!(e1, predictor_dihedral(&g, tau_of(&g, "eps1")).unwrap());
    let line = predictor_coxeter_exterior(&build_symmetric(3).unwrap(), 0).unwrap();
    assert_eq!(line.to_json()["intervals"][0][0], "-inf");
    assert_eq!(line.negated(), predictor_coxeter_exterior(&build_symmetric(3).unwrap(), 2).unwrap());
}

#[test]
fn mm_poles() {
    let s4 = MMData { degrees: vec![2, 3, 4] };
    assert_eq!(mm_pole_order(&s4, &rat(1, 4)), 1);
    assert_eq!(mm_first_pole(&s4), Some(rat(1, 4)));
    assert_eq!(mm_pole_order(&s4, &int(-1)), 0);
    for n in 2..=8i64 {
        let d = MMData { degrees: (2..=n as usize).collect() };
        for m in 2..=n {
            for r in 1..m {
                if num_integer::gcd(r, m) == 1 {
                    assert_eq!(mm_pole_order(&d, &rat(r, m)), n / m, "n {} c {}/{}", n, r, m);
                }
            }
        }
    }
}

#[test]
fn worker_override() {
    std::env::set_var(WORKERS_ENV, "3");
    assert_eq!(worker_count(Some(1)), 3);
    std::env::set_var(WORKERS_ENV, "junk");
    assert_eq!(worker_count(Some(2)), 2);
    std::env::remove_var(WORKERS_ENV);
    assert!(worker_count(None) >= 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // truncating earlier never changes an early witness
    #[test]
    fn monotone_in_truncation(p in -30i64..30, q in 1i64..12) {
        let g = build_symmetric(3).unwrap();
        let c = [rat(p, q)];
        for tau in 0..g.irreps.len() {
            let hi = certify_point(&g, tau, &c, 5).unwrap();
            let lo = certify_point(&g, tau, &c, 3).unwrap();
            match hi.witness_degree() {
                Some(d) if d <= 3 => prop_assert_eq!(lo.witness_degree(), Some(d)),
                _ => prop_assert!(!lo.is_non_unitary()),
            }
        }
    }

    #[test]
    fn locus_twist_is_involutive(a in -12i64..12, b in -12i64..12) {
        let g = build_dihedral_even(3).unwrap();
        let l = predictor_dihedral(&g, g.trivial()).unwrap();
        let pt = [rat(a, 6), rat(b, 6)];
        let tw = l.twisted(&[-1, 1]);
        prop_assert_eq!(l.contains(&pt), tw.contains(&[-&pt[0], pt[1].clone()]));
        prop_assert_eq!(tw.twisted(&[-1, 1]), l);
    }
}
