use num_traits::Zero;
use std::fmt;

use super::rational::Rational;
use super::{Cyclotomic, ParamPoly, Scalar};

/// Dense polynomial in one variable with rational coefficients, low degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly(pub Vec<Rational>);

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly(Vec::new())
    }

    pub fn constant(q: Rational) -> Self {
        UniPoly(vec![q]).trimmed()
    }

    /// a + b*c
    pub fn linear(a: Rational, b: Rational) -> Self {
        UniPoly(vec![a, b]).trimmed()
    }

    pub fn trimmed(mut self) -> Self {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn degree(&self) -> usize {
        self.0.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_assign(&mut self, o: &UniPoly) {
        if self.0.len() < o.0.len() {
            self.0.resize(o.0.len(), Rational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    /// self += q * o
    pub fn add_scaled(&mut self, q: &Rational, o: &UniPoly) {
        if q.is_zero() {
            return;
        }
        if self.0.len() < o.0.len() {
            self.0.resize(o.0.len(), Rational::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            if !b.is_zero() {
                *a += q * b;
            }
        }
    }

    pub fn scale(&self, q: &Rational) -> UniPoly {
        if q.is_zero() {
            return UniPoly::zero();
        }
        UniPoly(self.0.iter().map(|c| c * q).collect())
    }

    /// Multiplication by the variable.
    pub fn shift(&self) -> UniPoly {
        if self.0.is_empty() {
            return UniPoly::zero();
        }
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(Rational::zero());
        v.extend(self.0.iter().cloned());
        UniPoly(v)
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return UniPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        UniPoly(v).trimmed()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn to_param_poly(&self) -> ParamPoly {
        let terms: Vec<(Vec<u32>, Cyclotomic)> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (vec![k as u32], Cyclotomic::from_rational(c.clone())))
            .collect();
        ParamPoly::from_terms(1, &terms)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_param_poly())
    }
}

impl Scalar for UniPoly {
    fn zero_like(&self) -> Self {
        UniPoly::zero()
    }
    fn one_like(&self) -> Self {
        UniPoly::constant(Rational::from_integer(1.into()))
    }
    fn is_nil(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_assign(o);
        r.trimmed()
    }
    fn minus(&self, o: &Self) -> Self {
        let mut r = self.clone();
        r.add_scaled(&Rational::from_integer((-1).into()), o);
        r.trimmed()
    }
    fn times(&self, o: &Self) -> Self {
        UniPoly::mul(self, o)
    }
    fn negated(&self) -> Self {
        UniPoly(self.0.iter().map(|c| -c).collect())
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn mul_cyclo(&self, c: &Cyclotomic) -> Self {
        self.scale(c.as_rational().expect("irrational factor in a rational computation")).trimmed()
    }
}
