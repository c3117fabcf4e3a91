use std::collections::BTreeMap;
use std::fmt;

use super::cyclotomic::Cyclotomic;
use super::rational::Rational;
use super::ScalarError;

const BITS: u32 = 16;
pub const MAX_ARITY: usize = 4;

/// Polynomial in a few real parameters with cyclotomic coefficients.
///
/// Exponent tuples are packed 16 bits per variable, so a key orders
/// monomials lexicographically with the first variable most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamPoly {
    arity: usize,
    terms: BTreeMap<u64, Cyclotomic>,
}

fn pack(exps: &[u32]) -> u64 {
    exps.iter().fold(0u64, |k, &e| {
        assert!(e < (1 << BITS), "exponent overflow");
        (k << BITS) | e as u64
    })
}

fn unpack(key: u64, arity: usize) -> Vec<u32> {
    (0..arity)
        .map(|i| ((key >> (BITS * (arity - 1 - i) as u32)) & ((1 << BITS) - 1)) as u32)
        .collect()
}

impl ParamPoly {
    pub fn zero(arity: usize) -> Self {
        assert!(arity <= MAX_ARITY);
        ParamPoly { arity, terms: BTreeMap::new() }
    }

    pub fn constant(arity: usize, c: Cyclotomic) -> Self {
        let mut p = Self::zero(arity);
        if !c.is_zero() {
            p.terms.insert(0, c);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Cyclotomic::one())
    }

    /// The i-th indeterminate.
    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        let mut p = Self::zero(arity);
        p.terms.insert(pack(&e), Cyclotomic::one());
        p
    }

    pub fn from_terms(arity: usize, terms: &[(Vec<u32>, Cyclotomic)]) -> Self {
        let mut p = Self::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity);
            p.add_term(pack(e), c.clone());
        }
        p
    }

    fn add_term(&mut self, key: u64, c: Cyclotomic) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Vec<u32>, &Cyclotomic)> {
        self.terms.iter().map(move |(k, c)| (unpack(*k, self.arity), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|k| unpack(*k, self.arity).iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn constant_term(&self) -> Cyclotomic {
        self.terms.get(&0).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.arity, o.arity);
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(*k, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        ParamPoly { arity: self.arity, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.arity, o.arity);
        let mut r = Self::zero(self.arity);
        for (ka, a) in &self.terms {
            for (kb, b) in &o.terms {
                // packed keys add componentwise as long as no field overflows
                r.add_term(ka + kb, a * b);
            }
        }
        r
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        ParamPoly { arity: self.arity, terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&Cyclotomic::from_rational(q.clone()))
    }

    /// Conjugates coefficients; the parameters themselves are real.
    pub fn conj(&self) -> Self {
        ParamPoly { arity: self.arity, terms: self.terms.iter().map(|(k, c)| (*k, c.conj())).collect() }
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Cyclotomic, ScalarError> {
        let pt: Vec<Cyclotomic> = point.iter().cloned().map(Cyclotomic::from_rational).collect();
        self.eval_cyclotomic(&pt)
    }

    pub fn eval_cyclotomic(&self, point: &[Cyclotomic]) -> Result<Cyclotomic, ScalarError> {
        if point.len() != self.arity {
            return Err(ScalarError::ArityMismatch { expected: self.arity, got: point.len() });
        }
        let mut acc = Cyclotomic::zero();
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (i, e) in unpack(*k, self.arity).into_iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Coefficient list in the single variable (arity 1 only).
    pub fn univariate_coeffs(&self) -> Vec<Cyclotomic> {
        assert_eq!(self.arity, 1);
        let d = self.degree() as usize;
        let mut v = vec![Cyclotomic::zero(); d + 1];
        for (k, c) in &self.terms {
            v[*k as usize] = c.clone();
        }
        v
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names: Vec<String> = if self.arity == 1 {
            vec!["c".into()]
        } else {
            (1..=self.arity).map(|i| format!("c{}", i)).collect()
        };
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, e) in unpack(*k, self.arity).into_iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*{}", names[i])?,
                    _ => write!(f, "*{}^{}", names[i], e)?,
                }
            }
        }
        Ok(())
    }
}
