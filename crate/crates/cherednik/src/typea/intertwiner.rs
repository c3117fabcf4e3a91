//! Intertwiners on M_kappa(triv) for S_n, with
//! y_i x_j = x_j y_i - s_ij and y_i x_i = x_i y_i + kappa + sum_{k != i} s_ik.
//! On polynomials y_i = kappa d/dx_i + sum_{k != i} (1 - s_ik)/(x_i - x_k).

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::linalg::{nullspace, Matrix};
use crate::scalars::rational::fmt_rational;
use crate::scalars::Rational;
use crate::verma::Monomials;

type Vector = Vec<Rational>;

struct Space {
    n: usize,
    kappa: Rational,
    monos: Vec<Monomials>,
}

impl Space {
    fn new(n: usize, kappa: Rational, top: usize) -> Self {
        Space { n, kappa, monos: (0..=top).map(|d| Monomials::new(n, d)).collect() }
    }

    fn dim(&self, d: usize) -> usize {
        self.monos[d].len()
    }

    fn basis(&self, d: usize, b: usize) -> Vector {
        let mut v = vec![Rational::zero(); self.dim(d)];
        v[b] = Rational::one();
        v
    }

    /// Swap x_i and x_j (zero-based).
    fn s(&self, d: usize, i: usize, j: usize, f: &[Rational]) -> Vector {
        let mut out = vec![Rational::zero(); f.len()];
        for (b, q) in f.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let mut mu = self.monos[d].list[b].clone();
            mu.swap(i, j);
            out[self.monos[d].index_of(&mu)] += q;
        }
        out
    }

    fn x(&self, d: usize, k: usize, f: &[Rational]) -> Vector {
        let mut out = vec![Rational::zero(); self.dim(d + 1)];
        for (b, q) in f.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let mut mu = self.monos[d].list[b].clone();
            mu[k] += 1;
            out[self.monos[d + 1].index_of(&mu)] += q;
        }
        out
    }

    fn y(&self, d: usize, i: usize, f: &[Rational]) -> Vector {
        if d == 0 {
            return Vec::new();
        }
        let lower = &self.monos[d - 1];
        let mut out = vec![Rational::zero(); lower.len()];
        for (b, q) in f.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let mu = &self.monos[d].list[b];
            if mu[i] > 0 {
                let mut nu = mu.clone();
                nu[i] -= 1;
                out[lower.index_of(&nu)] += &self.kappa * q * Rational::from_integer(mu[i].into());
            }
            for k in (0..self.n).filter(|&k| k != i) {
                // (x_i^a x_k^b - x_k^a x_i^b)/(x_i - x_k)
                let (a, bb) = (mu[i], mu[k]);
                if a == bb {
                    continue;
                }
                let (hi, lo, sign) = if a > bb { (a, bb, Rational::one()) } else { (bb, a, -Rational::one()) };
                for t in 0..hi - lo {
                    let mut nu = mu.clone();
                    nu[i] = lo + t;
                    nu[k] = lo + (hi - lo - 1 - t);
                    out[lower.index_of(&nu)] += &sign * q;
                }
            }
        }
        out
    }

    /// z_i = y_i x_i - sum_{j < i} s_ij
    fn z(&self, d: usize, i: usize, f: &[Rational]) -> Vector {
        let mut out = self.y(d + 1, i, &self.x(d, i, f));
        for j in 0..i {
            let sf = self.s(d, i, j, f);
            for (o, v) in out.iter_mut().zip(sf) {
                *o -= v;
            }
        }
        out
    }

    /// Phi = x_n s_{n-1} ... s_1, applied right to left.
    fn phi(&self, d: usize, f: &[Rational]) -> Vector {
        let g = (0..self.n - 1).fold(f.to_vec(), |g, k| self.s(d, k, k + 1, &g));
        self.x(d, self.n - 1, &g)
    }

    /// Psi = y_1 s_1 ... s_{n-1}, applied right to left.
    fn psi(&self, d: usize, f: &[Rational]) -> Vector {
        let g = (0..self.n - 1).rev().fold(f.to_vec(), |g, k| self.s(d, k, k + 1, &g));
        self.y(d, 0, &g)
    }

    /// Contravariant form with <1, 1> = 1 and <x_k f, g> = <f, y_k g>.
    fn grams(&self, top: usize) -> Vec<Vec<Vector>> {
        let mut out: Vec<Vec<Vector>> = vec![vec![vec![Rational::one()]]];
        for d in 1..=top {
            let prev = &out[d - 1];
            let mut g = vec![vec![Rational::zero(); self.dim(d)]; self.dim(d)];
            for (a, mu) in self.monos[d].list.iter().enumerate() {
                let k = mu.iter().position(|&e| e > 0).unwrap();
                let mut nu = mu.clone();
                nu[k] -= 1;
                let a1 = self.monos[d - 1].index_of(&nu);
                for (b, gb) in g[a].iter_mut().enumerate() {
                    let yb = self.y(d, k, &self.basis(d, b));
                    *gb = yb.iter().zip(&prev[a1]).fold(Rational::zero(), |acc, (u, v)| acc + u * v);
                }
            }
            out.push(g);
        }
        out
    }
}

fn form(g: &[Vector], u: &[Rational], v: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (a, ua) in u.iter().enumerate() {
        if ua.is_zero() {
            continue;
        }
        for (b, vb) in v.iter().enumerate() {
            if !vb.is_zero() {
                acc += ua * vb * &g[a][b];
            }
        }
    }
    acc
}

fn sub_scaled(a: &[Rational], q: &Rational, b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - q * y).collect()
}

/// Common eigenvalues of the z_i on a vector, if it is a joint eigenvector.
fn weight_of(sp: &Space, d: usize, f: &[Rational]) -> Option<Vec<Rational>> {
    let p = f.iter().position(|q| !q.is_zero())?;
    (0..sp.n)
        .map(|i| {
            let zf = sp.z(d, i, f);
            let lam = &zf[p] / &f[p];
            zf.iter().zip(f).all(|(a, b)| *a == &lam * b).then_some(lam)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntertwinerReport {
    pub n: usize,
    pub kappa: Rational,
    pub max_degree: usize,
    /// Psi Phi = z_1 on each degree 0..=max_degree.
    pub psi_phi: Vec<bool>,
    /// <Phi f, g> = <f, Psi g> on each degree.
    pub phi_adjoint: Vec<bool>,
    /// z_1..z_n have a joint eigenbasis on each degree.
    pub diagonalizable: Vec<bool>,
    pub sigma_squared_checked: usize,
    pub sigma_squared_ok: bool,
    /// sigma_i self-adjoint on weight vectors of degree <= 2.
    pub sigma_self_adjoint_ok: bool,
    /// (degree, i, weight) with alpha_i = alpha_{i+1}.
    pub skipped: Vec<(usize, usize, Vec<Rational>)>,
}

impl IntertwinerReport {
    pub fn all_ok(&self) -> bool {
        self.psi_phi.iter().all(|&b| b)
            && self.phi_adjoint.iter().all(|&b| b)
            && self.diagonalizable.iter().all(|&b| b)
            && self.sigma_squared_ok
            && self.sigma_self_adjoint_ok
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "kappa": fmt_rational(&self.kappa),
            "max_degree": self.max_degree,
            "psi_phi": self.psi_phi,
            "phi_adjoint": self.phi_adjoint,
            "diagonalizable": self.diagonalizable,
            "sigma_squared_checked": self.sigma_squared_checked,
            "sigma_squared_ok": self.sigma_squared_ok,
            "sigma_self_adjoint_ok": self.sigma_self_adjoint_ok,
            "skipped": self.skipped.iter().map(|(d, i, w)| json!({
                "degree": d, "i": i + 1, "weight": w.iter().map(fmt_rational).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// sigma_i f = s_i f - f/(alpha_i - alpha_{i+1}) on a weight vector.
fn sigma(sp: &Space, d: usize, i: usize, f: &[Rational], w: &[Rational]) -> Option<Vector> {
    let delta = &w[i] - &w[i + 1];
    if delta.is_zero() {
        return None;
    }
    Some(sub_scaled(&sp.s(d, i, i + 1, f), &delta.recip(), f))
}

/// Checks Psi Phi = z_1, Phi* = Psi, sigma_i^2 and sigma_i* = sigma_i on
/// degrees 0..=m of M_kappa(triv).
pub fn intertwiner_check(n: usize, kappa: &Rational, m: usize) -> IntertwinerReport {
    assert!(n >= 2);
    let sp = Space::new(n, kappa.clone(), m + 1);
    let grams = sp.grams(m + 1);
    let mut rep = IntertwinerReport {
        n,
        kappa: kappa.clone(),
        max_degree: m,
        psi_phi: Vec::new(),
        phi_adjoint: Vec::new(),
        diagonalizable: Vec::new(),
        sigma_squared_checked: 0,
        sigma_squared_ok: true,
        sigma_self_adjoint_ok: true,
        skipped: Vec::new(),
    };
    for d in 0..=m {
        let dim = sp.dim(d);
        rep.psi_phi.push((0..dim).all(|b| {
            let e = sp.basis(d, b);
            sp.psi(d + 1, &sp.phi(d, &e)) == sp.z(d, 0, &e)
        }));
        rep.phi_adjoint.push((0..dim).all(|a| {
            let e = sp.basis(d, a);
            let pe = sp.phi(d, &e);
            (0..sp.dim(d + 1)).all(|b| {
                let g = sp.basis(d + 1, b);
                form(&grams[d + 1], &pe, &g) == form(&grams[d], &e, &sp.psi(d + 1, &g))
            })
        }));

        // joint eigenvectors: z_i are triangular on monomials, so weights
        // are read off the diagonals and checked by exact kernels
        let zs: Vec<Vec<Vector>> = (0..n).map(|i| (0..dim).map(|b| sp.z(d, i, &sp.basis(d, b))).collect()).collect();
        let mut weights: Vec<Vec<Rational>> = (0..dim).map(|b| (0..n).map(|i| zs[i][b][b].clone()).collect()).collect();
        weights.sort();
        weights.dedup();
        let mut eig: Vec<(Vector, Vec<Rational>)> = Vec::new();
        for w in weights {
            let mut rows = Vec::with_capacity(n * dim);
            for (i, zi) in zs.iter().enumerate() {
                for r in 0..dim {
                    rows.push((0..dim).map(|c| if r == c { &zi[c][r] - &w[i] } else { zi[c][r].clone() }).collect());
                }
            }
            for v in nullspace(&Matrix::from_rows(rows), &Rational::zero()) {
                eig.push((v, w.clone()));
            }
        }
        rep.diagonalizable.push(eig.len() == dim);

        for (f, w) in &eig {
            for i in 0..n - 1 {
                let Some(g) = sigma(&sp, d, i, f, w) else {
                    rep.skipped.push((d, i, w.clone()));
                    continue;
                };
                let delta = &w[i] - &w[i + 1];
                let expect = (&delta * &delta - Rational::one()) / (&delta * &delta);
                let lhs = if g.iter().all(|q| q.is_zero()) {
                    g.clone()
                } else {
                    match weight_of(&sp, d, &g).and_then(|wg| sigma(&sp, d, i, &g, &wg)) {
                        Some(h) => h,
                        None => {
                            rep.sigma_squared_ok = false;
                            continue;
                        }
                    }
                };
                rep.sigma_squared_checked += 1;
                if lhs != f.iter().map(|q| q * &expect).collect::<Vector>() {
                    rep.sigma_squared_ok = false;
                }
            }
        }
        if d <= 2 {
            for (f, wf) in &eig {
                for (g, wg) in &eig {
                    for i in 0..n - 1 {
                        let (Some(sf), Some(sg)) = (sigma(&sp, d, i, f, wf), sigma(&sp, d, i, g, wg)) else { continue };
                        if form(&grams[d], &sf, g) != form(&grams[d], f, &sg) {
                            rep.sigma_self_adjoint_ok = false;
                        }
                    }
                }
            }
        }
    }
    rep
}
