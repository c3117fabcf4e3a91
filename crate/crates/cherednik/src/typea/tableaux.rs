//! Standard periodic tableaux on tau + Z p, p = (-m, kappa - m), for integer kappa.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::{p_kappa_member, TypeAError};
use crate::groups::Partition;
use crate::scalars::rational::fmt_rational;
use crate::scalars::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicTableau {
    pub tau: Partition,
    pub kappa: Rational,
    /// (-m, kappa - m) with m the number of rows.
    pub period: (i64, Rational),
    /// Values on the cells of tau, 1-based (row, column), row-major.
    pub window: Vec<((usize, usize), i64)>,
}

impl PeriodicTableau {
    /// T at an arbitrary box b + k p with b in tau.
    pub fn value(&self, cell: usize, k: i64) -> i64 {
        self.window[cell].1 - k * self.tau.n() as i64
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tau": self.tau.parts(),
            "kappa": fmt_rational(&self.kappa),
            "period": [self.period.0, fmt_rational(&self.period.1)],
            "window": self.window.iter().map(|((a, b), v)| json!([a, b, v])).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContentVector {
    /// ct(T^{-1}(1)), ..., ct(T^{-1}(n))
    pub entries: Vec<Rational>,
    /// alpha_i = ct(T^{-1}(n - i + 1)) + kappa, the weight of z_i.
    pub alpha: Vec<Rational>,
}

fn content_vector(t: &PeriodicTableau) -> ContentVector {
    let n = t.tau.n() as i64;
    let mut entries = vec![Rational::zero(); n as usize];
    for &((a, b), v) in &t.window {
        let i = (v - 1).rem_euclid(n) + 1;
        let k = (v - i) / n;
        entries[(i - 1) as usize] = Rational::from_integer((b as i64 - a as i64).into()) + &t.kappa * Rational::from_integer(k.into());
    }
    let alpha = (0..n as usize).map(|i| &entries[n as usize - 1 - i] + &t.kappa).collect();
    ContentVector { entries, alpha }
}

/// Minimal strict offsets: T(x) < T(y) + off[x][y] for all x, y in tau.
fn offsets(tau: &Partition, kappa: i64, bound: i64) -> Vec<Vec<Option<i64>>> {
    let cells: Vec<(i64, i64)> = tau.cells().iter().map(|&(r, c)| (r as i64 + 1, c as i64 + 1)).collect();
    let n = tau.n() as i64;
    let len = cells.len();
    let mut off = vec![vec![None; len]; len];
    let tmax = bound / n + 1;
    for (x, &(a, b)) in cells.iter().enumerate() {
        for (y, &(a2, b2)) in cells.iter().enumerate() {
            let mut best: Option<i64> = None;
            // same translate: row neighbour or a box down-right along (k+1, k)
            let row = a2 == a && b2 == b + 1;
            let diag = a2 > a && b2 - b == a2 - a - 1;
            if row || diag {
                best = Some(0);
            }
            // translate by -t p: ct(y) = ct(x) - 1 + t kappa
            if best.is_none() {
                for t in 1..=tmax {
                    if (b2 - a2) == (b - a) - 1 + t * kappa {
                        best = Some(t * n);
                        break;
                    }
                }
            }
            off[x][y] = best;
        }
    }
    off
}

/// All standard periodic tableaux with window entries in [1, bound], sorted
/// by largest entry and then by window, so a smaller bound gives a prefix.
pub fn enumerate_tableaux(tau: &Partition, kappa: i64, bound: usize) -> Result<Vec<(PeriodicTableau, ContentVector)>, TypeAError> {
    let kq = Rational::from_integer(kappa.into());
    if kappa <= 0 || !p_kappa_member(tau, &kq) {
        return Err(TypeAError::NotDiagonalizable(tau.to_string(), kappa.to_string()));
    }
    let n = tau.n();
    if bound < n {
        return Err(TypeAError::OutOfRange(format!("entry bound {} below n = {}", bound, n)));
    }
    let cells: Vec<(usize, usize)> = tau.cells().iter().map(|&(r, c)| (r + 1, c + 1)).collect();
    let off = offsets(tau, kappa, bound as i64);
    let mut found: Vec<Vec<i64>> = Vec::new();
    let mut vals = vec![0i64; n];
    let mut used = vec![false; n];
    fn dfs(
        pos: usize,
        bound: i64,
        n: usize,
        off: &[Vec<Option<i64>>],
        vals: &mut Vec<i64>,
        used: &mut Vec<bool>,
        found: &mut Vec<Vec<i64>>,
    ) {
        if pos == n {
            found.push(vals.clone());
            return;
        }
        'value: for v in 1..=bound {
            let r = (v as usize - 1) % n;
            if used[r] {
                continue;
            }
            for q in 0..pos {
                if let Some(o) = off[q][pos] {
                    if vals[q] >= v + o {
                        continue 'value;
                    }
                }
                if let Some(o) = off[pos][q] {
                    if v >= vals[q] + o {
                        continue 'value;
                    }
                }
            }
            vals[pos] = v;
            used[r] = true;
            dfs(pos + 1, bound, n, off, vals, used, found);
            used[r] = false;
        }
    }
    dfs(0, bound as i64, n, &off, &mut vals, &mut used, &mut found);
    found.sort_by(|a, b| (a.iter().max(), a).cmp(&(b.iter().max(), b)));
    let m = tau.len() as i64;
    Ok(found
        .into_iter()
        .map(|w| {
            let t = PeriodicTableau {
                tau: tau.clone(),
                kappa: kq.clone(),
                period: (-m, Rational::from_integer((kappa - m).into())),
                window: cells.iter().copied().zip(w).collect(),
            };
            let cv = content_vector(&t);
            (t, cv)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableauReport {
    pub tableau: PeriodicTableau,
    pub content: ContentVector,
    /// alpha_1 >= 0
    pub alpha1_nonneg: bool,
    /// (alpha_i - alpha_{i+1})^2 >= 1 for every i
    pub gaps_ok: bool,
}

impl TableauReport {
    pub fn passes(&self) -> bool {
        self.alpha1_nonneg && self.gaps_ok
    }

    pub fn to_json(&self) -> Value {
        json!({
            "tableau": self.tableau.to_json(),
            "content": self.content.entries.iter().map(fmt_rational).collect::<Vec<_>>(),
            "alpha": self.content.alpha.iter().map(fmt_rational).collect::<Vec<_>>(),
            "alpha1_nonneg": self.alpha1_nonneg,
            "gaps_ok": self.gaps_ok,
        })
    }
}

/// The two weight conditions of the spectral criterion, per tableau.
pub fn spectra_unitary_check(tau: &Partition, kappa: i64, bound: usize) -> Result<Vec<TableauReport>, TypeAError> {
    let one = Rational::from_integer(1.into());
    Ok(enumerate_tableaux(tau, kappa, bound)?
        .into_iter()
        .map(|(tableau, content)| {
            let a = &content.alpha;
            let alpha1_nonneg = !a[0].is_negative();
            let gaps_ok = a.windows(2).all(|w| {
                let d = &w[0] - &w[1];
                &d * &d >= one
            });
            TableauReport { tableau, content, alpha1_nonneg, gaps_ok }
        })
        .collect())
}
