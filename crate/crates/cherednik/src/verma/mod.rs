//! Graded pieces of Verma modules M_c(tau) = tau (x) S(h*), the Dunkl action,
//! and the contravariant form computed by lowering and by the F-operator.

pub mod isotypic;
mod smallq;

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::groups::{GroupKind, IrrepLabel, MonomialMatrix, ReflectionGroup};
use crate::linalg::{nullspace, rank, Matrix};
use crate::scalars::{Cyclotomic, ParamPoly, Rational, Scalar, ScalarError, UniPoly};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum VermaError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("{0}")]
    Unsupported(String),
}

// ---------------------------------------------------------------- parameters

/// Number of real coordinates on the parameter space: one per reflection
/// class, or b_1..b_{m-1} for a cyclic group of order m > 2.
pub fn param_arity(g: &ReflectionGroup) -> usize {
    g.num_reflection_classes()
}

/// c on each reflection class as a linear form in the coordinates.
pub fn class_coefficients(g: &ReflectionGroup) -> Vec<Vec<Cyclotomic>> {
    let k = g.num_reflection_classes();
    match g.kind {
        GroupKind::Cyclic(m) => {
            // c_j = (1/2m) sum_n b_n (zeta^{-j(n-1)} - zeta^{-jn}), inverse of
            // b_n = 2 sum_j c_j (1 - lambda^{jn}) / (1 - lambda^j)
            let l = m as u32;
            let f = Rational::new(1.into(), (2 * m as i64).into());
            (1..m as i64)
                .map(|j| {
                    (1..m as i64)
                        .map(|n| (&Cyclotomic::root(l, -j * (n - 1)) - &Cyclotomic::root(l, -j * n)).scale(&f))
                        .collect()
                })
                .collect()
        }
        _ => (0..k).map(|i| (0..k).map(|j| Cyclotomic::from_int((i == j) as i64)).collect()).collect(),
    }
}

/// b-coordinates from class values c_j of a cyclic group (inverse of class_coefficients).
pub fn cyclic_b_from_c(m: usize, c: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let l = m as u32;
    (1..m as i64)
        .map(|n| {
            let mut acc = Cyclotomic::zero();
            for (j, cj) in c.iter().enumerate() {
                let j = j as i64 + 1;
                // (1 - lambda^{jn}) / (1 - lambda^j) = sum_{e<n} lambda^{je}
                let geo = (0..n).fold(Cyclotomic::zero(), |a, e| &a + &Cyclotomic::root(l, j * e));
                acc = &acc + &(cj * &geo);
            }
            acc.scale(&Rational::from_integer(2.into()))
        })
        .collect()
}

pub fn symbolic_params(g: &ReflectionGroup) -> Result<Vec<ParamPoly>, VermaError> {
    let arity = param_arity(g);
    if arity > crate::scalars::poly::MAX_ARITY {
        return Err(VermaError::Unsupported(format!("{} parameters exceed the symbolic limit", arity)));
    }
    Ok(class_coefficients(g)
        .iter()
        .map(|row| {
            row.iter().enumerate().fold(ParamPoly::zero(arity), |acc, (i, a)| acc.add(&ParamPoly::var(arity, i).scale(a)))
        })
        .collect())
}

/// Single-parameter groups with rational data (symmetric groups, Z/2).
pub fn unipoly_params(g: &ReflectionGroup) -> Option<Vec<UniPoly>> {
    if param_arity(g) != 1 || g.root_order > 2 {
        return None;
    }
    let a = class_coefficients(g)[0][0].as_rational()?.clone();
    Some(vec![UniPoly::linear(Rational::zero(), a)])
}

pub fn point_params(g: &ReflectionGroup, point: &[Rational]) -> Result<Vec<Cyclotomic>, VermaError> {
    let arity = param_arity(g);
    if point.len() != arity {
        return Err(ScalarError::ArityMismatch { expected: arity, got: point.len() }.into());
    }
    Ok(class_coefficients(g)
        .iter()
        .map(|row| row.iter().zip(point).fold(Cyclotomic::zero(), |acc, (a, p)| &acc + &a.scale(p)))
        .collect())
}

// ---------------------------------------------------------------- monomials

#[derive(Clone, Debug)]
pub struct Monomials {
    pub nvars: usize,
    pub degree: usize,
    pub list: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl Monomials {
    pub fn new(nvars: usize, degree: usize) -> Self {
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        let mut list = Vec::new();
        if nvars > 0 {
            rec(0, degree as u32, &mut vec![0; nvars], &mut list);
        }
        let index = list.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Monomials { nvars, degree, list, index }
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn index_of(&self, mu: &[u32]) -> usize {
        self.index[mu]
    }
}

/// Nondecreasing word of variable indices for a monomial.
pub fn word(mu: &[u32]) -> Vec<usize> {
    mu.iter().enumerate().flat_map(|(k, &e)| std::iter::repeat(k).take(e as usize)).collect()
}

pub fn mu_factorial(mu: &[u32]) -> Rational {
    mu.iter().fold(Rational::one(), |a, &e| a * Rational::from_integer(crate::scalars::rational::factorial(e as usize)))
}

/// Image of x^mu under a monomial matrix: (root exponent, new exponent vector).
pub fn act_monomial(w: &MonomialMatrix, mu: &[u32], l: u32) -> (u32, Vec<u32>) {
    let mut nu = vec![0u32; mu.len()];
    let mut root: u64 = 0;
    for (k, &e) in mu.iter().enumerate() {
        nu[w.perm[k]] += e;
        root += e as u64 * w.roots[k] as u64;
    }
    ((root % l as u64) as u32, nu)
}

/// Basis of tau (x) S^m h*: index = monomial index * dim tau + tau index.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: usize,
    pub dim_tau: usize,
    pub monomials: Monomials,
}

impl GradedPiece {
    pub fn new(dim_h: usize, dim_tau: usize, degree: usize) -> Self {
        GradedPiece { degree, dim_tau, monomials: Monomials::new(dim_h, degree) }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len() * self.dim_tau
    }

    pub fn label(&self, b: usize) -> (&[u32], usize) {
        (&self.monomials.list[b / self.dim_tau], b % self.dim_tau)
    }

    pub fn index(&self, mu: &[u32], t: usize) -> usize {
        self.monomials.index_of(mu) * self.dim_tau + t
    }
}

// ---------------------------------------------------------------- engine

#[derive(Clone, Debug)]
struct Refl {
    class: usize,
    elem: MonomialMatrix,
    alpha: Vec<Cyclotomic>,
    check: Vec<Cyclotomic>,
    rho: Matrix<Cyclotomic>,
}

/// Sparse column: (row index, value).
pub type SparseCol<S> = Vec<(usize, S)>;

/// Verma module M_c(tau) with per-degree caches. `params` holds c on each
/// reflection class, as symbolic polynomials or as values at a point.
pub struct Verma<'a, S: Scalar> {
    pub group: &'a ReflectionGroup,
    pub tau: usize,
    pub params: Vec<S>,
    one: S,
    refl: Vec<Refl>,
    pieces: Vec<GradedPiece>,
    /// ys[m][b][i] = y_i e_b for e_b in degree m (m >= 1; ys[0] empty)
    ys: Vec<Vec<Vec<SparseCol<S>>>>,
    grams: Vec<Matrix<S>>,
    fops: Vec<Matrix<S>>,
}

impl<'a, S: Scalar> Verma<'a, S> {
    pub fn new(group: &'a ReflectionGroup, tau: usize, params: Vec<S>, one: S) -> Self {
        assert_eq!(params.len(), group.num_reflection_classes());
        let rho = &group.irreps[tau];
        let refl = group
            .reflections
            .iter()
            .map(|r| Refl {
                class: r.class,
                elem: group.elements[r.element].clone(),
                alpha: r.alpha.clone(),
                check: r.alpha_check.clone(),
                rho: rho.matrix(r.element).clone(),
            })
            .collect();
        Verma { group, tau, params, one, refl, pieces: Vec::new(), ys: vec![Vec::new()], grams: Vec::new(), fops: Vec::new() }
    }

    pub fn dim_tau(&self) -> usize {
        self.group.irreps[self.tau].dim
    }

    fn embed_q(&self, q: &Rational) -> S {
        self.one.mul_cyclo(&Cyclotomic::from_rational(q.clone()))
    }

    fn ensure_pieces(&mut self, m: usize) {
        while self.pieces.len() <= m {
            let d = self.pieces.len();
            self.pieces.push(GradedPiece::new(self.group.dim_h, self.dim_tau(), d));
        }
    }

    pub fn piece(&mut self, m: usize) -> &GradedPiece {
        self.ensure_pieces(m);
        &self.pieces[m]
    }

    /// Scalar by which sum_s 2c_s/(1-lambda_s) s acts on tau.
    fn class_scalar(&self, tau: usize) -> S {
        let g = self.group;
        let rho = &g.irreps[tau];
        let mut acc = self.one.zero_like();
        for (k, cls) in g.reflection_classes.iter().enumerate() {
            let mut z = Cyclotomic::zero();
            for &ri in cls {
                let r = &g.reflections[ri];
                let f = &(&Cyclotomic::from_int(2) / &(&Cyclotomic::one() - &r.lambda)) * &rho.character(r.element);
                z = &z + &f;
            }
            let z = z.scale(&Rational::new(1.into(), (rho.dim as i64).into()));
            acc = acc.plus(&self.params[k].mul_cyclo(&z));
        }
        acc
    }

    /// h_c(sigma) for any irrep sigma of the group.
    pub fn h_weight_of(&self, sigma: usize) -> S {
        let half = Rational::new((self.group.dim_h as i64).into(), 2.into());
        self.embed_q(&half).minus(&self.class_scalar(sigma))
    }

    pub fn h_weight(&self) -> S {
        self.h_weight_of(self.tau)
    }

    fn ensure_y(&mut self, m: usize) {
        self.ensure_pieces(m);
        while self.ys.len() <= m {
            let d = self.ys.len();
            let cols = self.compute_y(d);
            self.ys.push(cols);
        }
    }

    // y_i (x_{k1}...x_{km} v) by moving y through the word with
    // [y, x] = (y, x) - sum_s c_s (y, alpha_s)(x, alpha_s^vee) s
    fn compute_y(&self, m: usize) -> Vec<Vec<SparseCol<S>>> {
        let p = &self.pieces[m];
        let q = &self.pieces[m - 1];
        let dh = self.group.dim_h;
        let dt = self.dim_tau();
        let l = self.group.root_order;
        let zero = self.one.zero_like();
        let mut out = Vec::with_capacity(p.dim());
        for b in 0..p.dim() {
            let (mu, t) = p.label(b);
            let mut acc: Vec<BTreeMap<usize, S>> = vec![BTreeMap::new(); dh];
            for i in 0..dh {
                if mu[i] > 0 {
                    let mut nu = mu.to_vec();
                    nu[i] -= 1;
                    let v = self.embed_q(&Rational::from_integer(mu[i].into()));
                    acc[i].insert(q.index(&nu, t), v);
                }
            }
            let w = word(mu);
            let mut cacc: HashMap<(usize, usize, usize), Cyclotomic> = HashMap::new();
            for r in &self.refl {
                for j in 0..m {
                    let av = &r.check[w[j]];
                    if av.is_zero() {
                        continue;
                    }
                    let mut nu = vec![0u32; dh];
                    for &k in &w[..j] {
                        nu[k] += 1;
                    }
                    let mut root: u64 = 0;
                    for &k in &w[j + 1..] {
                        nu[r.elem.perm[k]] += 1;
                        root += r.elem.roots[k] as u64;
                    }
                    let base = av * &Cyclotomic::root(l.max(1), root as i64);
                    for t2 in 0..dt {
                        let rr = r.rho.get(t2, t);
                        if rr.is_zero() {
                            continue;
                        }
                        let tgt = q.index(&nu, t2);
                        let coef = &base * rr;
                        for i in 0..dh {
                            let a = &r.alpha[i];
                            if a.is_zero() {
                                continue;
                            }
                            let e = cacc.entry((r.class, i, tgt)).or_insert_with(Cyclotomic::zero);
                            *e = &*e + &(&coef * a);
                        }
                    }
                }
            }
            for ((cls, i, tgt), z) in cacc {
                if z.is_zero() {
                    continue;
                }
                let v = self.params[cls].mul_cyclo(&z).negated();
                let e = acc[i].entry(tgt).or_insert_with(|| zero.clone());
                *e = e.plus(&v);
            }
            out.push(acc.into_iter().map(|m| m.into_iter().filter(|(_, v)| !v.is_nil()).collect()).collect());
        }
        out
    }

    /// Columns y_i e_b for all basis vectors of degree m.
    pub fn y_columns(&mut self, m: usize) -> &[Vec<SparseCol<S>>] {
        assert!(m >= 1);
        self.ensure_y(m);
        &self.ys[m]
    }

    /// Matrix of y_i from degree m to degree m-1.
    pub fn y_matrix(&mut self, m: usize, i: usize) -> Matrix<S> {
        self.ensure_y(m);
        let rows = self.pieces[m - 1].dim();
        let cols = self.pieces[m].dim();
        let mut mat = Matrix::filled(rows, cols, self.one.zero_like());
        for (b, col) in self.ys[m].iter().enumerate() {
            for (r, v) in &col[i] {
                mat.set(*r, b, v.clone());
            }
        }
        mat
    }

    /// Matrix of multiplication by x_k from degree m to degree m+1.
    pub fn x_matrix(&mut self, m: usize, k: usize) -> Matrix<S> {
        self.ensure_pieces(m + 1);
        let (p, q) = (&self.pieces[m], &self.pieces[m + 1]);
        let mut mat = Matrix::filled(q.dim(), p.dim(), self.one.zero_like());
        for b in 0..p.dim() {
            let (mu, t) = p.label(b);
            let mut nu = mu.to_vec();
            nu[k] += 1;
            mat.set(q.index(&nu, t), b, self.one.clone());
        }
        mat
    }

    /// Diagonal of beta_0: ||x^mu (x) e_t||^2 = mu! N_t.
    pub fn beta0_diag(&mut self, m: usize) -> Vec<Rational> {
        self.ensure_pieces(m);
        let p = &self.pieces[m];
        let form = &self.group.irreps[self.tau].form;
        (0..p.dim())
            .map(|b| {
                let (mu, t) = p.label(b);
                mu_factorial(mu) * &form[t]
            })
            .collect()
    }

    pub fn beta0_gram(&mut self, m: usize) -> Matrix<S> {
        let d = self.beta0_diag(m);
        let mut g = Matrix::filled(d.len(), d.len(), self.one.zero_like());
        for (i, x) in d.iter().enumerate() {
            g.set(i, i, self.embed_q(x));
        }
        g
    }

    /// Gram matrix G[a][b] = beta(e_a, e_b) by lowering:
    /// beta_m(x_k u, u') = beta_{m-1}(u, y_k u').
    pub fn gram(&mut self, m: usize) -> &Matrix<S> {
        if self.grams.is_empty() {
            let g0 = self.beta0_gram(0);
            self.grams.push(g0);
        }
        while self.grams.len() <= m {
            let d = self.grams.len();
            self.ensure_y(d);
            let g = self.lower_gram(d);
            self.grams.push(g);
        }
        &self.grams[m]
    }

    fn lower_gram(&self, m: usize) -> Matrix<S> {
        let p = &self.pieces[m];
        let q = &self.pieces[m - 1];
        let prev = &self.grams[m - 1];
        let n = p.dim();
        let zero = self.one.zero_like();
        let mut g = Matrix::filled(n, n, zero.clone());
        // rows grouped by the first variable present
        let mut by_var: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.group.dim_h];
        for a in 0..n {
            let (mu, t) = p.label(a);
            let k = mu.iter().position(|&e| e > 0).unwrap();
            let mut nu = mu.to_vec();
            nu[k] -= 1;
            by_var[k].push((a, q.index(&nu, t)));
        }
        for (k, rows) in by_var.iter().enumerate() {
            if rows.is_empty() {
                continue;
            }
            for b in 0..n {
                let col: Vec<(usize, S)> = self.ys[m][b][k].iter().map(|(c, v)| (*c, v.conj())).collect();
                for &(a, a1) in rows {
                    let mut acc = zero.clone();
                    for (c, v) in &col {
                        let e = prev.get(a1, *c);
                        if !e.is_nil() {
                            acc = acc.plus(&e.times(v));
                        }
                    }
                    g.set(a, b, acc);
                }
            }
        }
        g
    }

    /// F_{c,tau,m} with beta_c(v, v') = beta_0(F v, v'), from the recursion
    /// F_m(a_1..a_m v) = 1/m sum_j a_j F_{m-1}(..a_j omitted..)
    ///   - 1/m sum_j sum_s c_s <a_j, alpha_s^vee> alpha_s F_{m-1}(a_1..a_{j-1} s(a_{j+1}..a_m v)).
    pub fn f_operator(&mut self, m: usize) -> &Matrix<S> {
        if self.fops.is_empty() {
            self.ensure_pieces(0);
            let n0 = self.pieces[0].dim();
            self.fops.push(Matrix::identity(n0, &self.one.zero_like()));
        }
        while self.fops.len() <= m {
            let d = self.fops.len();
            self.ensure_pieces(d);
            let f = self.next_f(d);
            self.fops.push(f);
        }
        &self.fops[m]
    }

    fn next_f(&self, m: usize) -> Matrix<S> {
        let p = &self.pieces[m];
        let q = &self.pieces[m - 1];
        let prev = &self.fops[m - 1];
        let dh = self.group.dim_h;
        let dt = self.dim_tau();
        let l = self.group.root_order;
        let zero = self.one.zero_like();
        // up[r][k]: index of x_k e_r in degree m
        let up: Vec<Vec<usize>> = (0..q.dim())
            .map(|r| {
                let (mu, t) = q.label(r);
                (0..dh)
                    .map(|k| {
                        let mut nu = mu.to_vec();
                        nu[k] += 1;
                        p.index(&nu, t)
                    })
                    .collect()
            })
            .collect();
        let inv_m = Rational::new(1.into(), (m as i64).into());
        let mut f = Matrix::filled(p.dim(), p.dim(), zero.clone());
        for b in 0..p.dim() {
            let (mu, t) = p.label(b);
            let w = word(mu);
            // coefficient of x_k F_{m-1}(e_src), keyed by (k, src)
            let mut coef: BTreeMap<(usize, usize), S> = BTreeMap::new();
            for k in 0..dh {
                if mu[k] > 0 {
                    let mut nu = mu.to_vec();
                    nu[k] -= 1;
                    coef.insert((k, q.index(&nu, t)), self.embed_q(&Rational::from_integer(mu[k].into())));
                }
            }
            let mut cacc: HashMap<(usize, usize, usize), Cyclotomic> = HashMap::new();
            for r in &self.refl {
                for j in 0..m {
                    let av = &r.check[w[j]];
                    if av.is_zero() {
                        continue;
                    }
                    let mut nu = vec![0u32; dh];
                    for &k in &w[..j] {
                        nu[k] += 1;
                    }
                    let mut root: u64 = 0;
                    for &k in &w[j + 1..] {
                        nu[r.elem.perm[k]] += 1;
                        root += r.elem.roots[k] as u64;
                    }
                    let base = av * &Cyclotomic::root(l.max(1), root as i64);
                    for t2 in 0..dt {
                        let rr = r.rho.get(t2, t);
                        if rr.is_zero() {
                            continue;
                        }
                        let src = q.index(&nu, t2);
                        let c0 = &base * rr;
                        for k in 0..dh {
                            let a = &r.alpha[k];
                            if !a.is_zero() {
                                let e = cacc.entry((r.class, k, src)).or_insert_with(Cyclotomic::zero);
                                *e = &*e + &(&c0 * a);
                            }
                        }
                    }
                }
            }
            for ((cls, k, src), z) in cacc {
                if z.is_zero() {
                    continue;
                }
                let v = self.params[cls].mul_cyclo(&z).negated();
                let e = coef.entry((k, src)).or_insert_with(|| zero.clone());
                *e = e.plus(&v);
            }
            let mut col = vec![zero.clone(); p.dim()];
            for ((k, src), s) in &coef {
                if s.is_nil() {
                    continue;
                }
                for r in 0..q.dim() {
                    let e = prev.get(r, *src);
                    if !e.is_nil() {
                        let i = up[r][*k];
                        col[i] = col[i].plus(&s.times(e));
                    }
                }
            }
            let sc = self.embed_q(&inv_m);
            for (i, v) in col.into_iter().enumerate() {
                if !v.is_nil() {
                    f.set(i, b, v.times(&sc));
                }
            }
        }
        f
    }

    /// beta_0 composed with F: G[a][b] = F[b][a] * beta_0(e_b, e_b).
    pub fn gram_via_f(&mut self, m: usize) -> Matrix<S> {
        let d = self.beta0_diag(m);
        let f = self.f_operator(m).clone();
        let n = d.len();
        let mut g = Matrix::filled(n, n, self.one.zero_like());
        for a in 0..n {
            for b in 0..n {
                let e = f.get(b, a);
                if !e.is_nil() {
                    g.set(a, b, e.times(&self.embed_q(&d[b])));
                }
            }
        }
        g
    }

    /// Action of a group element on degree m, as sparse columns.
    pub fn w_action(&mut self, m: usize, w: usize) -> Vec<Vec<(usize, Cyclotomic)>> {
        self.ensure_pieces(m);
        w_action_on(self.group, self.tau, &self.pieces[m], w)
    }

    /// Matrix of the grading element h on degree m.
    pub fn h_operator(&mut self, m: usize) -> Matrix<S> {
        self.ensure_pieces(m + 1);
        let n = self.pieces[m].dim();
        let zero = self.one.zero_like();
        let mut h = Matrix::filled(n, n, zero.clone());
        if m > 0 {
            for i in 0..self.group.dim_h {
                let x = self.x_matrix(m - 1, i);
                let y = self.y_matrix(m, i);
                let xy = x.mul(&y);
                for (a, b) in h.data.iter_mut().zip(&xy.data) {
                    *a = a.plus(b);
                }
            }
        }
        let half = self.embed_q(&Rational::new((self.group.dim_h as i64).into(), 2.into()));
        for i in 0..n {
            let v = h.get(i, i).plus(&half);
            h.set(i, i, v);
        }
        // - sum_s 2c_s/(1-lambda_s) s
        let g = self.group;
        for r in &g.reflections {
            let z = &Cyclotomic::from_int(2) / &(&Cyclotomic::one() - &r.lambda);
            let coef = self.params[r.class].mul_cyclo(&z);
            let act = w_action_on(g, self.tau, &self.pieces[m], r.element);
            for (b, col) in act.iter().enumerate() {
                for (a, v) in col {
                    let e = h.get(*a, b).minus(&coef.mul_cyclo(v));
                    h.set(*a, b, e);
                }
            }
        }
        h
    }

    /// Operator f = 1/2 sum Q_ij y_i y_j from degree m to m-2 (Coxeter groups).
    pub fn f_sl2(&mut self, m: usize) -> Result<Matrix<S>, VermaError> {
        let q = invariant_quadratic(self.group)?;
        let rows = self.piece(m - 2).dim();
        let cols = self.piece(m).dim();
        let mut out = Matrix::filled(rows, cols, self.one.zero_like());
        let half = Rational::new(1.into(), 2.into());
        for (i, row) in q.iter().enumerate() {
            for (j, qij) in row.iter().enumerate() {
                if qij.is_zero() {
                    continue;
                }
                let prod = self.y_matrix(m - 1, i).mul(&self.y_matrix(m, j));
                let z = qij.scale(&half);
                for (a, b) in out.data.iter_mut().zip(&prod.data) {
                    if !b.is_nil() {
                        *a = a.plus(&b.mul_cyclo(&z));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Operator e = -1/2 sum Q_ij x_i x_j from degree m to m+2.
    pub fn e_sl2(&mut self, m: usize) -> Result<Matrix<S>, VermaError> {
        let q = invariant_quadratic(self.group)?;
        let rows = self.piece(m + 2).dim();
        let cols = self.piece(m).dim();
        let mut out = Matrix::filled(rows, cols, self.one.zero_like());
        let mhalf = Rational::new((-1).into(), 2.into());
        for (i, row) in q.iter().enumerate() {
            for (j, qij) in row.iter().enumerate() {
                if qij.is_zero() {
                    continue;
                }
                let prod = self.x_matrix(m + 1, i).mul(&self.x_matrix(m, j));
                let z = qij.scale(&mhalf);
                for (a, b) in out.data.iter_mut().zip(&prod.data) {
                    if !b.is_nil() {
                        *a = a.plus(&b.mul_cyclo(&z));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Offsets of each degree inside the truncation V_0 + ... + V_D.
    pub fn truncation_offsets(&mut self, d: usize) -> Vec<usize> {
        self.ensure_pieces(d);
        let mut off = vec![0];
        for m in 0..=d {
            off.push(off[m] + self.pieces[m].dim());
        }
        off
    }

    /// Gaussian form gamma(v, v') = beta(exp(f) v, exp(f) v') on degrees <= d.
    pub fn gaussian_gram(&mut self, d: usize) -> Result<Matrix<S>, VermaError> {
        let off = self.truncation_offsets(d);
        let total = off[d + 1];
        let zero = self.one.zero_like();
        // powers[q][j] = f^j / j! : V_q -> V_{q-2j}
        let mut fs: Vec<Option<Matrix<S>>> = vec![None; d + 1];
        for m in 2..=d {
            fs[m] = Some(self.f_sl2(m)?);
        }
        let mut powers: Vec<Vec<Matrix<S>>> = Vec::new();
        for q in 0..=d {
            let nq = self.pieces[q].dim();
            let mut v = vec![Matrix::identity(nq, &zero)];
            let mut j = 1;
            while 2 * j <= q {
                let prev = &v[j - 1];
                let fm = fs[q - 2 * (j - 1)].as_ref().unwrap();
                let s = self.embed_q(&Rational::new(1.into(), (j as i64).into()));
                v.push(fm.mul(prev).map(|x| x.times(&s)));
                j += 1;
            }
            powers.push(v);
        }
        for m in 0..=d {
            self.gram(m);
        }
        let mut out = Matrix::filled(total, total, zero.clone());
        for p in 0..=d {
            for q in 0..=d {
                if (p + q) % 2 == 1 {
                    continue;
                }
                for k in (p % 2..=p.min(q)).step_by(2) {
                    let (ja, jb) = ((p - k) / 2, (q - k) / 2);
                    let a = &powers[p][ja];
                    let b = &powers[q][jb];
                    let g = &self.grams[k];
                    let block = a.transpose().mul(g).mul(&b.map(|x| x.conj()));
                    for i in 0..block.rows {
                        for j in 0..block.cols {
                            let e = block.get(i, j);
                            if !e.is_nil() {
                                let v = out.get(off[p] + i, off[q] + j).plus(e);
                                out.set(off[p] + i, off[q] + j, v);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Action of w on tau (x) S^m h*: x^mu (x) e_t -> (w x^mu) (x) rho(w) e_t.
pub fn w_action_on(g: &ReflectionGroup, tau: usize, piece: &GradedPiece, w: usize) -> Vec<Vec<(usize, Cyclotomic)>> {
    let rho = g.irreps[tau].matrix(w);
    let el = &g.elements[w];
    let l = g.root_order.max(1);
    (0..piece.dim())
        .map(|b| {
            let (mu, t) = piece.label(b);
            let (root, nu) = act_monomial(el, mu, l);
            let z = Cyclotomic::root(l, root as i64);
            (0..piece.dim_tau)
                .filter(|&t2| !rho.get(t2, t).is_zero())
                .map(|t2| (piece.index(&nu, t2), &z * rho.get(t2, t)))
                .collect()
        })
        .collect()
}

/// W-invariant symmetric form on h in the coordinates y_i (real orthonormal basis squared).
pub fn invariant_quadratic(g: &ReflectionGroup) -> Result<Vec<Vec<Cyclotomic>>, VermaError> {
    let z = Cyclotomic::zero;
    let o = Cyclotomic::one;
    match g.kind {
        GroupKind::Symmetric(n) => Ok((0..n).map(|i| (0..n).map(|j| if i == j { o() } else { z() }).collect()).collect()),
        GroupKind::Cyclic(2) => Ok(vec![vec![o()]]),
        // x1 = (u + iv)/sqrt2, x2 = conj: u^2 + v^2 = 2 x1 x2
        GroupKind::DihedralOdd(_) | GroupKind::DihedralEven(_) => Ok(vec![vec![z(), o()], vec![o(), z()]]),
        _ => Err(VermaError::Unsupported("sl2 triple needs a real reflection group".into())),
    }
}

/// Real linear forms spanning h_R^* (coefficients in the x basis).
pub fn real_coordinates(g: &ReflectionGroup) -> Vec<Vec<Cyclotomic>> {
    match g.kind {
        GroupKind::DihedralOdd(_) | GroupKind::DihedralEven(_) => {
            let i = Cyclotomic::root(4, 1);
            vec![vec![Cyclotomic::one(), Cyclotomic::one()], vec![i.clone(), -&i]]
        }
        _ => (0..g.dim_h).map(|k| (0..g.dim_h).map(|j| Cyclotomic::from_int((j == k) as i64)).collect()).collect(),
    }
}

// ---------------------------------------------------------------- singular vectors

#[derive(Clone, Debug)]
pub struct SingularSpace {
    pub degree: usize,
    pub dimension: usize,
    /// (irrep label, multiplicity)
    pub types: Vec<(IrrepLabel, usize)>,
    pub basis: Vec<Vec<Cyclotomic>>,
}

/// Common kernel of all y_i on degree m at a parameter point.
pub fn singular_vectors(v: &mut Verma<'_, Cyclotomic>, m: usize) -> SingularSpace {
    assert!(m >= 1);
    let dh = v.group.dim_h;
    let rows_each = v.piece(m - 1).dim();
    let cols = v.piece(m).dim();
    let mut stacked = Matrix::filled(rows_each * dh, cols, Cyclotomic::zero());
    for (b, col) in v.y_columns(m).iter().enumerate() {
        for (i, ci) in col.iter().enumerate() {
            for (r, x) in ci {
                stacked.set(i * rows_each + r, b, x.clone());
            }
        }
    }
    let basis = nullspace(&stacked, &Cyclotomic::zero());
    let types = if basis.is_empty() { Vec::new() } else { isotypic_multiplicities(v, m, &basis) };
    SingularSpace { degree: m, dimension: basis.len(), types, basis }
}

/// Multiplicities of each irrep in the W-stable span of `vectors` (degree m).
pub fn isotypic_multiplicities<S: Scalar>(v: &mut Verma<'_, S>, m: usize, vectors: &[Vec<Cyclotomic>]) -> Vec<(IrrepLabel, usize)> {
    let g = v.group;
    let n = v.piece(m).dim();
    let actions: Vec<Vec<Vec<(usize, Cyclotomic)>>> = (0..g.order()).map(|w| v.w_action(m, w)).collect();
    let mut out = Vec::new();
    for irr in &g.irreps {
        let mut rows = Vec::with_capacity(vectors.len());
        for vec in vectors {
            let mut acc = vec![Cyclotomic::zero(); n];
            for (w, act) in actions.iter().enumerate() {
                let chi = irr.character(w).conj();
                if chi.is_zero() {
                    continue;
                }
                for (b, x) in vec.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let cx = &chi * x;
                    for (a, z) in &act[b] {
                        acc[*a] = &acc[*a] + &(&cx * z);
                    }
                }
            }
            rows.push(acc);
        }
        let r = rank(&Matrix::from_rows(rows));
        if r > 0 {
            out.push((irr.label.clone(), r / irr.dim));
        }
    }
    out
}
