use cherednik::groups::symmetric::{seminormal, standard_tableaux};
use cherednik::groups::*;
use cherednik::linalg::{rank, Matrix};
use cherednik::scalars::*;

fn all_small_groups() -> Vec<ReflectionGroup> {
    let mut v = Vec::new();
    for n in 2..=4 {
        v.push(build_symmetric(n).unwrap());
    }
    for m in 2..=12 {
        v.push(build_cyclic(m).unwrap());
    }
    for d in 1..=3 {
        v.push(build_dihedral_odd(d).unwrap());
    }
    for d in 2..=6 {
        v.push(build_dihedral_even(d).unwrap());
    }
    v
}

fn cz(k: i64) -> Cyclotomic {
    Cyclotomic::from_int(k)
}

fn matrix_trace(m: &Matrix<Cyclotomic>) -> Cyclotomic {
    (0..m.rows).fold(Cyclotomic::zero(), |a, i| &a + m.get(i, i))
}

#[test]
fn multiplication_table_is_a_group() {
    for g in all_small_groups() {
        let t = g.multiplication_table();
        let n = g.order();
        for a in 0..n {
            assert_eq!(t[a][0], a);
            assert_eq!(t[0][a], a);
            assert_eq!(t[a][g.inverse[a]], 0);
            let mut row = t[a].clone();
            row.sort_unstable();
            assert_eq!(row, (0..n).collect::<Vec<_>>(), "{}", g.kind);
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(t[t[a][b]][c], t[a][t[b][c]], "{}", g.kind);
                }
            }
        }
        // matrices compose like the table
        for a in 0..n {
            for b in 0..n {
                assert_eq!(g.matrix_hstar(a).mul(&g.matrix_hstar(b)), g.matrix_hstar(t[a][b]));
            }
        }
    }
}

#[test]
fn reflection_data() {
    for g in all_small_groups() {
        let total: usize = g.degrees.iter().map(|d| d - 1).sum();
        assert_eq!(g.num_reflections(), total, "{}", g.kind);
        for r in &g.reflections {
            let pairing = r.alpha.iter().zip(&r.alpha_check).fold(Cyclotomic::zero(), |a, (x, y)| &a + &(x * y));
            assert_eq!(pairing, cz(2));
            let m = g.matrix_hstar(r.element);
            for i in 0..g.dim_h {
                let sa = (0..g.dim_h).fold(Cyclotomic::zero(), |a, j| &a + &(m.get(i, j) * &r.alpha[j]));
                assert_eq!(sa, &r.lambda * &r.alpha[i]);
            }
            assert!(!r.lambda.is_one());
            if g.is_coxeter() {
                assert_eq!(r.lambda, cz(-1));
                assert_eq!(g.mul(r.element, r.element), 0);
            }
        }
        // S closed under conjugation, classes respected
        for r in &g.reflections {
            for w in 0..g.order() {
                let c = g.mul(g.mul(w, r.element), g.inverse[w]);
                let other = g.reflections.iter().find(|q| q.element == c).expect("conjugate of a reflection");
                assert_eq!(other.class, r.class);
            }
        }
    }
}

#[test]
fn build_examples() {
    let s3 = build_symmetric(3).unwrap();
    assert_eq!((s3.num_reflections(), s3.num_reflection_classes(), s3.dim_h), (3, 1, 3));
    let s4 = build_symmetric(4).unwrap();
    assert_eq!(s4.coxeter_number(), 4);
    let s2 = build_symmetric(2).unwrap();
    let c2 = build_cyclic(2).unwrap();
    assert_eq!(s2.num_reflections(), 1);
    assert_eq!(c2.num_reflections(), 1);
    assert_eq!(s2.reflections[0].lambda, c2.reflections[0].lambda);

    let c3 = build_cyclic(3).unwrap();
    assert_eq!(c3.num_reflections(), 2);
    for r in &c3.reflections {
        assert_eq!(r.lambda.pow(3), cz(1));
        assert!(!r.lambda.is_one());
    }
    assert_eq!(build_cyclic(5).unwrap().num_reflection_classes(), 4);

    let d1 = build_dihedral_odd(1).unwrap();
    assert_eq!(d1.irreps.len(), 3);
    assert_eq!(d1.coxeter_number(), 3);
    let d2 = build_dihedral_even(2).unwrap();
    let labels: Vec<String> = d2.irreps.iter().map(|r| r.label.to_string()).collect();
    assert_eq!(labels, ["triv", "sign", "eps1", "eps2", "tau1"]);
    assert_eq!(d2.num_reflection_classes(), 2);
    let s1 = d2.reflections.iter().find(|r| r.element == 4).unwrap();
    let s2 = d2.reflections.iter().find(|r| r.element == 5).unwrap();
    assert_eq!((s1.class, s2.class), (0, 1));

    assert!(build_symmetric(1).is_err());
    assert!(build_symmetric(9).is_err());
    assert!(build_cyclic(13).is_err());
    assert!(build_dihedral_even(13).is_err());
    assert!(build_dihedral_odd(12).is_err());
}

#[test]
fn group_spec_round_trip() {
    for s in ["Sn:4", "Cyc:5", "DihOdd:2", "DihEven:3"] {
        let k: GroupKind = s.parse().unwrap();
        assert_eq!(k.to_string(), s);
    }
    assert!("Foo:3".parse::<GroupKind>().is_err());
    assert!("Sn".parse::<GroupKind>().is_err());
}

#[test]
fn irreps_are_unitary_representations() {
    let mut groups = all_small_groups();
    groups.push(build_symmetric(5).unwrap());
    for g in &groups {
        let t = g.multiplication_table();
        let n = g.order();
        let step = if n > 48 { 7 } else { 1 };
        for irr in &g.irreps {
            let ms = irr.matrices();
            assert_eq!(ms.len(), n);
            let f = Matrix::from_rows(
                (0..irr.dim)
                    .map(|i| (0..irr.dim).map(|j| if i == j { Cyclotomic::from_rational(irr.form[i].clone()) } else { Cyclotomic::zero() }).collect())
                    .collect(),
            );
            for a in (0..n).step_by(step) {
                // rho(a)^T F conj(rho(a)) = F
                let m = &ms[a];
                let lhs = m.transpose().mul(&f).mul(&m.map(|x| x.conj()));
                assert_eq!(lhs, f, "{} {}", g.kind, irr.label);
                for b in 0..n {
                    assert_eq!(ms[a].mul(&ms[b]), ms[t[a][b]], "{} {}", g.kind, irr.label);
                }
            }
        }
    }
}

#[test]
fn character_orthogonality() {
    let mut groups = all_small_groups();
    groups.push(build_symmetric(5).unwrap());
    for g in &groups {
        let dims: usize = g.irreps.iter().map(|r| r.dim * r.dim).sum();
        assert_eq!(dims, g.order(), "{}", g.kind);
        for (i, a) in g.irreps.iter().enumerate() {
            for (j, b) in g.irreps.iter().enumerate() {
                let ip = character_inner(g, a.characters(), b.characters());
                assert_eq!(ip, cz((i == j) as i64), "{} {} {}", g.kind, a.label, b.label);
            }
        }
    }
}

#[test]
fn seminormal_tableaux_counts() {
    for n in 1..=7 {
        for p in Partition::all(n) {
            assert_eq!(standard_tableaux(&p).len(), p.num_syt());
            let sn = seminormal(&p);
            assert!(sn.norms.iter().all(|x| x > &Rational::from_integer(0.into())));
        }
    }
}

fn regular_rep(g: &ReflectionGroup) -> Vec<Matrix<Cyclotomic>> {
    let n = g.order();
    (0..n)
        .map(|a| {
            let mut m = Matrix::filled(n, n, Cyclotomic::zero());
            for b in 0..n {
                m.set(g.mul(a, b), b, Cyclotomic::one());
            }
            m
        })
        .collect()
}

fn check_projectors(ps: &[(usize, Matrix<Cyclotomic>)], dim: usize) {
    let id = Matrix::identity(dim, &Cyclotomic::zero());
    let mut sum = Matrix::filled(dim, dim, Cyclotomic::zero());
    for (i, (_, p)) in ps.iter().enumerate() {
        assert_eq!(p.mul(p), *p);
        for (j, (_, q)) in ps.iter().enumerate() {
            if i != j {
                assert!(p.mul(q).is_zero());
            }
        }
        for (x, y) in sum.data.iter_mut().zip(&p.data) {
            *x = &*x + y;
        }
    }
    assert_eq!(sum, id);
}

#[test]
fn projector_examples() {
    let s3 = build_symmetric(3).unwrap();
    let reg = regular_rep(&s3);
    let ps = isotypic_projectors(&s3, &reg).unwrap();
    check_projectors(&ps, 6);
    let mut ranks: Vec<usize> = ps.iter().map(|(_, p)| rank(p)).collect();
    ranks.sort_unstable();
    assert_eq!(ranks, [1, 1, 4]);

    let h = hstar_rep(&s3);
    let ps = isotypic_projectors(&s3, &h).unwrap();
    check_projectors(&ps, 3);
    let triv = s3.parse_irrep("3").unwrap();
    let std = s3.parse_irrep("2,1").unwrap();
    let found: Vec<(usize, usize)> = ps.iter().map(|(k, p)| (*k, rank(p))).collect();
    assert!(found.contains(&(triv, 1)) && found.contains(&(std, 2)) && found.len() == 2);

    let d2 = build_dihedral_odd(2).unwrap();
    let t1 = d2.parse_irrep("tau1").unwrap();
    let rep = tensor_rep(d2.irreps[t1].matrices(), d2.irreps[t1].matrices());
    let ps = isotypic_projectors(&d2, &rep).unwrap();
    check_projectors(&ps, 4);
    let mut got: Vec<(String, usize)> = ps.iter().map(|(k, p)| (d2.irreps[*k].label.to_string(), rank(p) / d2.irreps[*k].dim)).collect();
    got.sort();
    assert_eq!(got, [("sign".to_string(), 1), ("tau2".to_string(), 1), ("triv".to_string(), 1)]);
    // brute-force character inner products agree
    let chi: Vec<Cyclotomic> = rep.iter().map(matrix_trace).collect();
    for irr in &d2.irreps {
        let expect = if irr.label == IrrepLabel::Tau(1) { 0 } else { 1 };
        assert_eq!(character_inner(&d2, &chi, irr.characters()), cz(expect));
    }

    // a non-representation is rejected
    let mut bad = hstar_rep(&s3);
    bad.swap(1, 2);
    assert_eq!(isotypic_projectors(&s3, &bad).unwrap_err(), GroupError::NotARepresentation);
}

#[test]
fn class_sums_act_by_content() {
    for n in 2..=5 {
        let g = build_symmetric(n).unwrap();
        for (k, irr) in g.irreps.iter().enumerate() {
            let IrrepLabel::Partition(p) = &irr.label else { unreachable!() };
            let d = g.total_reflection_sum(k);
            assert_eq!(d, cz(p.content()));
            // explicit class-sum matrix is that scalar
            let mut sum = Matrix::filled(irr.dim, irr.dim, Cyclotomic::zero());
            for r in &g.reflections {
                for (x, y) in sum.data.iter_mut().zip(&irr.matrix(r.element).data) {
                    *x = &*x + y;
                }
            }
            let scalar = Matrix::identity(irr.dim, &Cyclotomic::zero()).map(|x| x * &d);
            assert_eq!(sum, scalar);
        }
    }
    let s3 = build_symmetric(3).unwrap();
    assert_eq!(s3.total_reflection_sum(s3.parse_irrep("3").unwrap()), cz(3));
    assert_eq!(s3.total_reflection_sum(s3.parse_irrep("1,1,1").unwrap()), cz(-3));
}

#[test]
fn exterior_powers_class_sum() {
    // wedge^i of the reflection representation: hooks for S_n, triv/tau1/sign for dihedral
    for n in 3..=5 {
        let g = build_symmetric(n).unwrap();
        let r = n - 1;
        for i in 0..=r {
            let mut parts = vec![n - i];
            parts.extend(std::iter::repeat(1).take(i));
            let k = g.irrep_index(&IrrepLabel::Partition(Partition::new(parts))).unwrap();
            let s = g.num_reflections() as i64;
            let expect = Rational::from_integer(s.into()) * (Rational::from_integer(1.into()) - rat(2 * i as i64, r as i64));
            assert_eq!(g.total_reflection_sum(k), Cyclotomic::from_rational(expect));
        }
    }
    for g in [build_dihedral_odd(2).unwrap(), build_dihedral_even(3).unwrap()] {
        let s = g.num_reflections() as i64;
        assert_eq!(g.total_reflection_sum(g.parse_irrep("triv").unwrap()), cz(s));
        assert_eq!(g.total_reflection_sum(g.parse_irrep("tau1").unwrap()), cz(0));
        assert_eq!(g.total_reflection_sum(g.parse_irrep("sign").unwrap()), cz(-s));
    }
}

#[test]
fn dihedral_tensor_identities() {
    for d in 2..=6 {
        let g = build_dihedral_even(d).unwrap();
        for l in 1..d {
            let t = &g.irreps[g.parse_irrep(&format!("tau{}", l)).unwrap()];
            let target = &g.irreps[g.parse_irrep(&format!("tau{}", d - l)).unwrap()];
            for eps in ["eps1", "eps2"] {
                let e = &g.irreps[g.parse_irrep(eps).unwrap()];
                for w in 0..g.order() {
                    assert_eq!(&t.character(w) * &e.character(w), target.character(w));
                }
            }
        }
        // rotation eigenvalues in tau_l
        let z = Cyclotomic::root(2 * d as u32, 1);
        for l in 1..d {
            let t = &g.irreps[g.parse_irrep(&format!("tau{}", l)).unwrap()];
            let m = t.matrix(1);
            assert_eq!(*m.get(0, 0), z.pow(l as u32));
            assert_eq!(&m.get(1, 1).clone() * &z.pow(l as u32), cz(1));
        }
    }
    let d = build_dihedral_even(2).unwrap();
    let s = d.reflections.iter().find(|r| r.element == 4).unwrap().element;
    let e1 = &d.irreps[d.parse_irrep("eps1").unwrap()];
    let e2 = &d.irreps[d.parse_irrep("eps2").unwrap()];
    assert_eq!((e1.character(s), e2.character(s)), (cz(-1), cz(1)));
    assert_eq!((e1.character(1), e2.character(1)), (cz(-1), cz(-1)));
}

#[test]
fn irrep_parsing() {
    let s4 = build_symmetric(4).unwrap();
    assert!(s4.parse_irrep("2,2").is_ok());
    assert!(s4.parse_irrep("2,1").is_err());
    assert!(s4.parse_irrep("1,2,1").is_err());
    let c5 = build_cyclic(5).unwrap();
    assert_eq!(c5.parse_irrep("chi3").unwrap(), 3);
    assert_eq!(c5.parse_irrep("2").unwrap(), 2);
    assert!(c5.parse_irrep("chi5").is_err());
    let d = build_dihedral_odd(2).unwrap();
    assert!(d.parse_irrep("eps1").is_err());
    assert!(d.parse_irrep("tau2").is_ok());
    assert!(d.parse_irrep("tau3").is_err());
    let j = s4.reflection_json();
    assert_eq!(j["reflections"].as_array().unwrap().len(), 6);
}
