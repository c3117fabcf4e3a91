use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::scalars::{Cyclotomic, Rational};

/// Weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.0.first().copied().unwrap_or(0);
        Partition((1..=w).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// Cells (row, col), zero-based, row by row.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.0.iter().enumerate().flat_map(|(i, &p)| (0..p).map(move |j| (i, j))).collect()
    }

    /// Sum of col - row over all cells.
    pub fn content(&self) -> i64 {
        self.cells().iter().map(|&(i, j)| j as i64 - i as i64).sum()
    }

    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        self.cells().iter().map(|&(i, j)| (self.0[i] - j) + (conj.0[j] - i) - 1).collect()
    }

    /// Rows whose last cell can be removed, top to bottom.
    pub fn removable_rows(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| i + 1 == self.0.len() || self.0[i + 1] < self.0[i]).collect()
    }

    /// Rows where a cell can be added (including a new row), top to bottom.
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.0.len()).filter(|&i| i == 0 || self.0.get(i).copied().unwrap_or(0) < self.0[i - 1]).collect()
    }

    pub fn remove_from_row(&self, r: usize) -> Partition {
        let mut p = self.0.clone();
        p[r] -= 1;
        Partition::new(p)
    }

    pub fn add_to_row(&self, r: usize) -> Partition {
        let mut p = self.0.clone();
        if r == p.len() {
            p.push(1);
        } else {
            p[r] += 1;
        }
        Partition(p)
    }

    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                rec(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    pub fn num_syt(&self) -> usize {
        let n = self.n();
        let mut num: u128 = (1..=n as u128).product();
        for h in self.hook_lengths() {
            num /= h as u128;
        }
        num as usize
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Result<Vec<usize>, _> = s.split(',').map(|t| t.trim().parse::<usize>()).collect();
        let parts = parts.map_err(|_| format!("cannot parse partition '{}'", s))?;
        if parts.is_empty() || parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(format!("'{}' is not a weakly decreasing list of positive parts", s));
        }
        Ok(Partition(parts))
    }
}

/// Standard Young tableau stored as the cell of each entry 1..n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Syt {
    pub cells: Vec<(usize, usize)>,
}

impl Syt {
    pub fn content(&self, k: usize) -> i64 {
        let (r, c) = self.cells[k];
        c as i64 - r as i64
    }

    pub fn shape(&self) -> Partition {
        let mut rows = Vec::new();
        for &(r, _) in &self.cells {
            if rows.len() <= r {
                rows.resize(r + 1, 0);
            }
            rows[r] += 1;
        }
        Partition(rows)
    }

    /// Swap entries k and k+1 (zero-based k), if the result is standard.
    pub fn swap(&self, k: usize) -> Option<Syt> {
        let (a, b) = (self.cells[k], self.cells[k + 1]);
        if a.0 == b.0 || a.1 == b.1 {
            return None;
        }
        let mut cells = self.cells.clone();
        cells.swap(k, k + 1);
        Some(Syt { cells })
    }
}

/// All standard tableaux of a shape; entry n sits in a removable corner,
/// corners taken top to bottom.
pub fn standard_tableaux(shape: &Partition) -> Vec<Syt> {
    if shape.n() == 0 {
        return vec![Syt { cells: Vec::new() }];
    }
    let mut out = Vec::new();
    for r in shape.removable_rows() {
        let smaller = shape.remove_from_row(r);
        let cell = (r, shape.0[r] - 1);
        for mut t in standard_tableaux(&smaller) {
            t.cells.push(cell);
            out.push(t);
        }
    }
    out
}

/// Young's seminormal form: rational generator matrices and the diagonal invariant form.
pub struct Seminormal {
    pub tableaux: Vec<Syt>,
    pub index: HashMap<Syt, usize>,
    /// s_k for k = 0..n-2 swapping entries k+1 and k+2
    pub generators: Vec<Matrix<Rational>>,
    pub norms: Vec<Rational>,
}

pub fn seminormal(shape: &Partition) -> Seminormal {
    let tableaux = standard_tableaux(shape);
    let index: HashMap<Syt, usize> = tableaux.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let n = shape.n();
    let d = tableaux.len();
    let mut generators = Vec::new();
    for k in 0..n.saturating_sub(1) {
        let mut m = Matrix::filled(d, d, Rational::zero());
        for (i, t) in tableaux.iter().enumerate() {
            let r = Rational::from_integer((t.content(k + 1) - t.content(k)).into());
            m.set(i, i, r.recip());
            if let Some(u) = t.swap(k) {
                let j = index[&u];
                // the tableau with k+1 in the higher row carries coefficient 1
                let coef = if r > Rational::zero() { Rational::one() } else { Rational::one() - (&r * &r).recip() };
                m.set(j, i, coef);
            }
        }
        generators.push(m);
    }
    // norms: <s v_T, v_U> = <v_T, s v_U>
    let mut norms: Vec<Option<Rational>> = vec![None; d];
    norms[0] = Some(Rational::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for (k, g) in generators.iter().enumerate() {
            if let Some(u) = tableaux[i].swap(k) {
                let j = index[&u];
                if norms[j].is_none() {
                    let ni = norms[i].clone().unwrap();
                    norms[j] = Some(ni * g.get(i, j) / g.get(j, i));
                    stack.push(j);
                }
            }
        }
    }
    let norms = norms.into_iter().map(|x| x.expect("disconnected tableau graph")).collect();
    Seminormal { tableaux, index, generators, norms }
}

pub fn to_cyclotomic(m: &Matrix<Rational>) -> Matrix<Cyclotomic> {
    m.map(|q| Cyclotomic::from_rational(q.clone()))
}
