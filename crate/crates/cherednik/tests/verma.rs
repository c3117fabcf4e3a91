use cherednik::groups::*;
use cherednik::linalg::Matrix;
use cherednik::scalars::*;
use cherednik::verma::*;

fn pp_groups() -> Vec<ReflectionGroup> {
    vec![
        build_cyclic(2).unwrap(),
        build_cyclic(3).unwrap(),
        build_cyclic(4).unwrap(),
        build_dihedral_odd(1).unwrap(),
        build_dihedral_odd(2).unwrap(),
        build_dihedral_even(2).unwrap(),
    ]
}

fn symbolic<'a>(g: &'a ReflectionGroup, tau: usize) -> Verma<'a, ParamPoly> {
    let params = symbolic_params(g).unwrap();
    let one = ParamPoly::one(param_arity(g));
    Verma::new(g, tau, params, one)
}

fn uni<'a>(g: &'a ReflectionGroup, tau: usize) -> Verma<'a, UniPoly> {
    Verma::new(g, tau, unipoly_params(g).unwrap(), UniPoly::constant(int(1)))
}

fn dense_action(v: &mut Verma<'_, ParamPoly>, m: usize) -> Vec<Matrix<Cyclotomic>> {
    let n = v.piece(m).dim();
    (0..v.group.order())
        .map(|w| {
            let mut mat = Matrix::filled(n, n, Cyclotomic::zero());
            for (b, col) in v.w_action(m, w).into_iter().enumerate() {
                for (a, z) in col {
                    mat.set(a, b, z);
                }
            }
            mat
        })
        .collect()
}

fn lift(m: &Matrix<Cyclotomic>, arity: usize) -> Matrix<ParamPoly> {
    m.map(|z| ParamPoly::constant(arity, z.clone()))
}

#[test]
fn oracle_pair_small() {
    for g in pp_groups() {
        for tau in 0..g.irreps.len() {
            let mut v = symbolic(&g, tau);
            for m in 0..=4 {
                let a = v.gram(m).clone();
                let b = v.gram_via_f(m);
                assert_eq!(a, b, "{} tau {} degree {}", g.kind, g.irreps[tau].label, m);
                assert!(a.is_hermitian());
            }
        }
    }
    for n in 2..=3 {
        let g = build_symmetric(n).unwrap();
        for tau in 0..g.irreps.len() {
            let mut v = uni(&g, tau);
            for m in 0..=4 {
                let a = v.gram(m).clone();
                assert_eq!(a, v.gram_via_f(m));
                assert!(a.is_hermitian());
            }
        }
    }
}

#[test]
fn gram_at_zero_is_beta0() {
    for g in pp_groups() {
        for tau in 0..g.irreps.len() {
            let mut v = symbolic(&g, tau);
            let zero = vec![int(0); param_arity(&g)];
            for m in 0..=3 {
                let at0 = v.gram(m).map(|p| p.eval(&zero).unwrap());
                let b0 = v.beta0_gram(m).map(|p| p.eval(&zero).unwrap());
                assert_eq!(at0, b0);
            }
        }
    }
}

#[test]
fn beta0_examples() {
    let g = build_dihedral_odd(1).unwrap();
    let mut v = symbolic(&g, g.trivial());
    let d = v.beta0_diag(2);
    let p = v.piece(2).clone();
    assert_eq!(d[p.index(&[1, 1], 0)], int(1));
    assert_eq!(d[p.index(&[2, 0], 0)], int(2));
    assert_eq!(v.beta0_diag(0), vec![int(1)]);
}

#[test]
fn w_invariance_of_gram() {
    for g in pp_groups() {
        for tau in 0..g.irreps.len() {
            let mut v = symbolic(&g, tau);
            let arity = param_arity(&g);
            for m in 1..=3 {
                let gm = v.gram(m).clone();
                for a in dense_action(&mut v, m) {
                    let a = lift(&a, arity);
                    let lhs = a.transpose().mul(&gm).mul(&a.map(|x| x.conj()));
                    assert_eq!(lhs, gm, "{} degree {}", g.kind, m);
                }
            }
        }
    }
}

#[test]
fn grading_element_acts_by_weight() {
    for g in pp_groups() {
        for tau in 0..g.irreps.len() {
            let mut v = symbolic(&g, tau);
            let arity = param_arity(&g);
            let hc = v.h_weight();
            for m in 0..=3 {
                let h = v.h_operator(m);
                let n = h.rows;
                let shift = hc.add(&ParamPoly::constant(arity, Cyclotomic::from_int(m as i64)));
                let expect = Matrix::identity(n, &ParamPoly::zero(arity)).map(|x| x.mul(&shift));
                assert_eq!(h, expect, "{} tau {} m {}", g.kind, g.irreps[tau].label, m);
                // [h, x_i] = x_i
                let h1 = v.h_operator(m + 1);
                for i in 0..g.dim_h {
                    let x = v.x_matrix(m, i);
                    let comm = h1.mul(&x);
                    let comm2 = x.mul(&h);
                    let diff = Matrix { rows: comm.rows, cols: comm.cols, data: comm.data.iter().zip(&comm2.data).map(|(a, b)| a.sub(b)).collect() };
                    assert_eq!(diff, x);
                }
            }
        }
    }
}

#[test]
fn h_weight_examples() {
    for n in 2..=5 {
        let g = build_symmetric(n).unwrap();
        let triv = g.parse_irrep(&n.to_string()).unwrap();
        let v = uni(&g, triv);
        let nn = n as i64;
        // n/2 - c n(n-1)/2
        assert_eq!(v.h_weight(), UniPoly::linear(rat(nn, 2), rat(-nn * (nn - 1), 2)));
        // h acts on C^n: n/2 - |S| c
        let s = (nn * (nn - 1)) / 2;
        assert_eq!(v.h_weight().eval(&rat(1, 7)), rat(nn, 2) - Rational::from_integer(s.into()) * rat(1, 7));
        for tau in 0..g.irreps.len() {
            let v = uni(&g, tau);
            assert_eq!(v.h_weight().eval(&int(0)), rat(nn, 2));
            let IrrepLabel::Partition(p) = &g.irreps[tau].label else { unreachable!() };
            assert_eq!(v.h_weight(), UniPoly::linear(rat(nn, 2), int(-p.content())));
        }
    }
}

#[test]
fn rank_one_recursion() {
    // cyclic Z/m, trivial tau: beta(x^n, x^n) = a_n with a_n = a_{n-1}(n - b_n)
    for m in 2..=5usize {
        let g = build_cyclic(m).unwrap();
        let mut v = symbolic(&g, 0);
        let arity = m - 1;
        let b = |n: usize| {
            let k = n % m;
            if k == 0 {
                ParamPoly::zero(arity)
            } else {
                ParamPoly::var(arity, k - 1)
            }
        };
        let mut a = ParamPoly::one(arity);
        for n in 1..=8 {
            let step = ParamPoly::constant(arity, Cyclotomic::from_int(n as i64)).sub(&b(n));
            a = a.mul(&step);
            assert_eq!(*v.gram(n).get(0, 0), a, "m={} n={}", m, n);
        }
    }
    // b from class values inverts the chosen coordinates
    let g = build_cyclic(5).unwrap();
    let c = point_params(&g, &[rat(1, 2), rat(-1, 3), rat(2, 7), rat(1, 11)]).unwrap();
    let b = cyclic_b_from_c(5, &c);
    assert_eq!(b, vec![Cyclotomic::from_rational(rat(1, 2)), Cyclotomic::from_rational(rat(-1, 3)), Cyclotomic::from_rational(rat(2, 7)), Cyclotomic::from_rational(rat(1, 11))]);
}

#[test]
fn z2_examples() {
    let g = build_cyclic(2).unwrap();
    let c = UniPoly::linear(int(0), int(1));
    // b_1 = 2c
    let mut v = Verma::new(&g, 0, vec![c.scale(&int(1))], UniPoly::constant(int(1)));
    let y = v.y_matrix(1, 0);
    assert_eq!(*y.get(0, 0), UniPoly::linear(int(1), int(-2)));
    assert!(v.y_matrix(1, 0).rows == 1);
    assert_eq!(*v.gram(2).get(0, 0), UniPoly::linear(int(2), int(-4)));
    assert_eq!(*v.f_operator(2).get(0, 0), UniPoly::linear(int(1), int(-2)));
}

#[test]
fn degree_one_law() {
    for g in pp_groups() {
        let arity = param_arity(&g);
        for tau in 0..g.irreps.len() {
            let mut v = symbolic(&g, tau);
            let f1 = v.f_operator(1).clone();
            let reps = dense_action(&mut v, 1);
            let hc = v.h_weight();
            for (sigma, p) in isotypic_projectors(&g, &reps).unwrap() {
                let scalar = ParamPoly::one(arity).add(&hc).sub(&v.h_weight_of(sigma));
                let pl = lift(&p, arity);
                assert_eq!(f1.mul(&pl), pl.map(|x| x.mul(&scalar)), "{} {} {}", g.kind, g.irreps[tau].label, g.irreps[sigma].label);
            }
        }
    }
    // even dihedral, trivial tau: 1 - (c1 + c2) d
    for d in 2..=3 {
        let g = build_dihedral_even(d).unwrap();
        let mut v = symbolic(&g, g.trivial());
        let f1 = v.f_operator(1).clone();
        let s = ParamPoly::var(2, 0).add(&ParamPoly::var(2, 1)).scale(&Cyclotomic::from_int(-(d as i64)));
        let expect = ParamPoly::one(2).add(&s);
        assert_eq!(f1, Matrix::identity(2, &ParamPoly::zero(2)).map(|x| x.mul(&expect)));
    }
}

#[test]
fn dunkl_examples_s3() {
    // the two isotypic pieces of h* for tau = (3): eigenvalues 1 + h(tau) - h(sigma)
    let g = build_symmetric(3).unwrap();
    let triv = g.parse_irrep("3").unwrap();
    let mut v = uni(&g, triv);
    let f1 = v.f_operator(1).clone();
    let one = UniPoly::constant(int(1));
    // x1+x2+x3 spans the trivial piece, x1-x2 lies in (2,1)
    let apply = |u: &[i64]| -> Vec<UniPoly> {
        (0..3).map(|i| (0..3).fold(UniPoly::zero(), |a, j| a.plus(&f1.get(i, j).scale(&int(u[j]))))).collect()
    };
    let s = apply(&[1, 1, 1]);
    assert!(s.iter().all(|x| *x == one));
    let d = apply(&[1, -1, 0]);
    let lam = UniPoly::linear(int(1), int(-3));
    assert_eq!(d, vec![lam.clone(), lam.negated(), UniPoly::zero()]);
}

#[test]
fn singular_vector_examples() {
    let g = build_symmetric(3).unwrap();
    let triv = g.parse_irrep("3").unwrap();
    let at = |c: Rational| Verma::new(&g, triv, vec![Cyclotomic::from_rational(c)], Cyclotomic::one());
    let mut v = at(rat(1, 3));
    let s = singular_vectors(&mut v, 1);
    assert_eq!(s.dimension, 2);
    assert_eq!(s.types, vec![(IrrepLabel::Partition(Partition(vec![2, 1])), 1)]);
    let mut v = at(rat(1, 2));
    for m in 1..=2 {
        assert_eq!(singular_vectors(&mut v, m).dimension, 0);
    }
    let s = singular_vectors(&mut v, 3);
    assert_eq!(s.types, vec![(IrrepLabel::Partition(Partition(vec![1, 1, 1])), 1)]);
    let mut v = at(rat(1, 1000007));
    for m in 1..=4 {
        assert_eq!(singular_vectors(&mut v, m).dimension, 0);
    }
    // singular vectors are killed by every y_i and lie in the kernel of the form
    let mut v = at(rat(1, 3));
    let s = singular_vectors(&mut v, 1);
    let gram = v.gram(1).clone();
    for u in &s.basis {
        for w in 0..3 {
            let mut e = vec![Cyclotomic::zero(); 3];
            e[w] = Cyclotomic::one();
            assert!(cherednik::linalg::form(&gram, u, &e).is_zero());
        }
    }
}

fn commutator(a: &Matrix<ParamPoly>, b: &Matrix<ParamPoly>, c: &Matrix<ParamPoly>, d: &Matrix<ParamPoly>) -> Matrix<ParamPoly> {
    let x = a.mul(b);
    let y = c.mul(d);
    Matrix { rows: x.rows, cols: x.cols, data: x.data.iter().zip(&y.data).map(|(p, q)| p.sub(q)).collect() }
}

#[test]
fn sl2_triple() {
    for g in [build_cyclic(2).unwrap(), build_dihedral_odd(1).unwrap(), build_dihedral_even(2).unwrap()] {
        for tau in 0..g.irreps.len() {
            let mut v = symbolic(&g, tau);
            let arity = param_arity(&g);
            for m in 2..=4 {
                // [e, f] = h on degree m
                let ef = commutator(&v.e_sl2(m - 2).unwrap(), &v.f_sl2(m).unwrap(), &v.f_sl2(m + 2).unwrap(), &v.e_sl2(m).unwrap());
                assert_eq!(ef, v.h_operator(m), "{} m {}", g.kind, m);
                // [h, f] = -2f
                let f = v.f_sl2(m).unwrap();
                let hf = commutator(&v.h_operator(m - 2), &f, &f, &v.h_operator(m));
                assert_eq!(hf, f.map(|x| x.scale(&Cyclotomic::from_int(-2))));
                let _ = arity;
            }
        }
    }
    let g = build_symmetric(3).unwrap();
    let triv = g.trivial();
    let mut v = Verma::new(&g, triv, symbolic_params(&g).unwrap(), ParamPoly::one(1));
    for m in 0..=2 {
        let e = v.e_sl2(m).unwrap();
        let he = commutator(&v.h_operator(m + 2), &e, &e, &v.h_operator(m));
        assert_eq!(he, e.map(|x| x.scale(&Cyclotomic::from_int(2))));
    }
}

#[test]
fn gaussian_form() {
    // x-self-adjointness on the truncation
    for g in [build_cyclic(2).unwrap(), build_symmetric(3).unwrap(), build_dihedral_even(2).unwrap()] {
        for tau in 0..g.irreps.len() {
            let mut v = symbolic(&g, tau);
            let d = 4;
            let gam = v.gaussian_gram(d).unwrap();
            assert!(gam.is_hermitian());
            let off = v.truncation_offsets(d);
            // degree-0 block is the tau form
            let g0 = v.gram(0).clone();
            for i in 0..off[1] {
                for j in 0..off[1] {
                    assert_eq!(gam.get(i, j), g0.get(i, j));
                }
            }
            let total = off[d + 1];
            let arity = param_arity(&g);
            for x in real_coordinates(&g) {
                // matrix of multiplication by x on the truncation (top degree dropped)
                let mut xm = Matrix::filled(total, total, ParamPoly::zero(arity));
                for m in 0..d {
                    for (k, a) in x.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        let xk = v.x_matrix(m, k);
                        for r in 0..xk.rows {
                            for c in 0..xk.cols {
                                if !xk.get(r, c).is_zero() {
                                    xm.set(off[m + 1] + r, off[m] + c, ParamPoly::constant(arity, a.clone()));
                                }
                            }
                        }
                    }
                }
                // gamma(x u, u') = gamma(u, x u') for u, u' of degree < d
                let lhs = xm.transpose().mul(&gam);
                let rhs = gam.mul(&xm.map(|p| p.conj()));
                for i in 0..off[d] {
                    for j in 0..off[d] {
                        assert_eq!(lhs.get(i, j), rhs.get(i, j), "{} {}", g.kind, g.irreps[tau].label);
                    }
                }
            }
        }
    }
}

#[test]
fn gaussian_examples_z2() {
    let g = build_cyclic(2).unwrap();
    let mut v = Verma::new(&g, 0, vec![Cyclotomic::zero()], Cyclotomic::one());
    let gam = v.gaussian_gram(2).unwrap();
    // gamma(x^2, 1) != 0 at c = 0
    assert!(!gam.get(2, 0).is_zero());
    // at b_1 = 1 (c = 1/2) the kernel of gamma equals the kernel of beta on the truncation
    let mut v = Verma::new(&g, 0, vec![Cyclotomic::from_rational(rat(1, 2))], Cyclotomic::one());
    let d = 4;
    let gam = v.gaussian_gram(d).unwrap();
    let mut beta = Matrix::filled(d + 1, d + 1, Cyclotomic::zero());
    for m in 0..=d {
        beta.set(m, m, v.gram(m).get(0, 0).clone());
    }
    let kg = cherednik::linalg::nullspace(&gam, &Cyclotomic::zero());
    let kb = cherednik::linalg::nullspace(&beta, &Cyclotomic::zero());
    assert_eq!(kg.len(), kb.len());
    assert_eq!(kb.len(), d);
}

#[test]
fn character_twist_cyclic() {
    // Gram of (chi_k (x) chi_j, c) equals Gram of (chi_j, chi_k^{-1} c)
    for m in 2..=4usize {
        let g = build_cyclic(m).unwrap();
        let l = m as u32;
        let c: Vec<Cyclotomic> = point_params(&g, &(1..m).map(|n| rat(n as i64, 5)).collect::<Vec<_>>()).unwrap();
        for j in 0..m {
            for k in 0..m {
                // chi_k(g^s) = zeta^{sk}; c' = chi_k^{-1} c
                let twisted: Vec<Cyclotomic> = c.iter().enumerate().map(|(s, x)| x * &Cyclotomic::root(l, -(((s + 1) * k) as i64))).collect();
                let mut a = Verma::new(&g, (j + k) % m, twisted, Cyclotomic::one());
                let mut b = Verma::new(&g, j, c.clone(), Cyclotomic::one());
                for d in 0..=5 {
                    assert_eq!(a.gram(d), b.gram(d));
                }
            }
        }
    }
}
