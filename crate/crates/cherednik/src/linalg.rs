//! Dense exact matrices and Hermitian congruence diagonalization.

use crate::scalars::{Field, Scalar, ScalarError, Sign};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Matrix { rows, cols, data: vec![v; rows * cols] }
    }

    pub fn identity(n: usize, zero: &T) -> Self {
        let mut m = Self::filled(n, n, zero.zero_like());
        for i in 0..n {
            m.data[i * n + i] = zero.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let data: Vec<T> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c);
        Matrix { rows: r, cols: c, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, o.rows);
        let zero = self.data.first().or(o.data.first()).expect("empty product").zero_like();
        let mut out = Matrix::filled(self.rows, o.cols, zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_nil() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_nil() {
                        let v = out.get(i, j).plus(&a.times(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> Matrix<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).conj());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i..self.cols).all(|j| *self.get(j, i) == self.get(i, j).conj()))
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_nil())
    }
}

/// u^T G conj(v): the sesquilinear form with Gram matrix G.
pub fn form<T: Scalar>(g: &Matrix<T>, u: &[T], v: &[T]) -> T {
    let zero = g.data[0].zero_like();
    let mut acc = zero;
    for (a, ua) in u.iter().enumerate() {
        if ua.is_nil() {
            continue;
        }
        for (b, vb) in v.iter().enumerate() {
            if vb.is_nil() {
                continue;
            }
            let e = g.get(a, b);
            if !e.is_nil() {
                acc = acc.plus(&ua.times(e).times(&vb.conj()));
            }
        }
    }
    acc
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_nil()) else { continue };
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = m.get(r, c).inv();
        for j in c..m.cols {
            let v = m.get(r, j).times(&inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let f = m.get(i, c).clone();
            if f.is_nil() {
                continue;
            }
            for j in c..m.cols {
                let rj = m.get(r, j);
                if !rj.is_nil() {
                    let v = m.get(i, j).minus(&f.times(rj));
                    m.set(i, j, v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of {v : M v = 0}, each vector of length cols.
pub fn nullspace<F: Field>(m: &Matrix<F>, zero: &F) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let pivots = if m.rows == 0 { Vec::new() } else { rref(&mut a) };
    let mut out = Vec::new();
    for free in 0..m.cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![zero.zero_like(); m.cols];
        v[free] = zero.one_like();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = a.get(r, free).negated();
        }
        out.push(v);
    }
    out
}

/// Outcome of congruence diagonalization of a Hermitian matrix.
#[derive(Clone, Debug)]
pub enum Congruence<F> {
    /// Positive semidefinite: T G T^* = diag(pivots, 0, ..., 0) with T invertible (rows of `transform`).
    Psd { pivots: Vec<F>, kernel_dim: usize, transform: Vec<Vec<F>>, order: Vec<usize> },
    /// A vector with certified negative norm.
    Negative { witness: Vec<F>, norm: F },
}

/// Symmetric Gaussian elimination with diagonal pivoting. The first
/// certified-negative direction found is returned as a witness.
pub fn congruence<F: Field>(g: &Matrix<F>, zero: &F) -> Result<Congruence<F>, ScalarError> {
    let n = g.rows;
    let mut w = g.clone();
    let mut basis: Vec<Vec<F>> = (0..n)
        .map(|i| {
            let mut v = vec![zero.zero_like(); n];
            v[i] = zero.one_like();
            v
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    let mut order = Vec::new();
    while !active.is_empty() {
        let mut chosen = None;
        for &i in &active {
            let d = w.get(i, i);
            if d.is_nil() {
                continue;
            }
            match d.real_sign()? {
                Sign::Negative => {
                    return Ok(Congruence::Negative { witness: basis[i].clone(), norm: d.clone() });
                }
                _ => {
                    chosen = Some(i);
                    break;
                }
            }
        }
        let Some(p) = chosen else {
            // zero diagonal: any nonzero entry gives an indefinite 2x2 block
            for &i in &active {
                for &j in &active {
                    let b = w.get(i, j);
                    if i != j && !b.is_nil() {
                        let witness: Vec<F> =
                            basis[i].iter().zip(&basis[j]).map(|(x, y)| x.minus(&b.times(y))).collect();
                        let norm = b.times(&b.conj()).plus(&b.times(&b.conj())).negated();
                        return Ok(Congruence::Negative { witness, norm });
                    }
                }
            }
            let kernel_dim = active.len();
            order.extend(active.iter().copied());
            let transform = order.iter().map(|&i| basis[i].clone()).collect();
            return Ok(Congruence::Psd { pivots, kernel_dim, transform, order });
        };
        let dinv = w.get(p, p).inv();
        active.retain(|&i| i != p);
        for &j in &active {
            let f = w.get(j, p).times(&dinv);
            if f.is_nil() {
                continue;
            }
            for &k in &active {
                let wpk = w.get(p, k);
                if !wpk.is_nil() {
                    let v = w.get(j, k).minus(&f.times(wpk));
                    w.set(j, k, v);
                }
            }
            let bp = basis[p].clone();
            for (x, y) in basis[j].iter_mut().zip(&bp) {
                if !y.is_nil() {
                    *x = x.minus(&f.times(y));
                }
            }
        }
        pivots.push(w.get(p, p).clone());
        order.push(p);
    }
    let transform = order.iter().map(|&i| basis[i].clone()).collect();
    Ok(Congruence::Psd { pivots, kernel_dim: 0, transform, order })
}
