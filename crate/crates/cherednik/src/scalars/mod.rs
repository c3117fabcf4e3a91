//! Exact scalars: rationals, cyclotomic numbers, parameter polynomials,
//! and certified signs of real cyclotomic values.

pub mod cyclotomic;
pub mod poly;
pub mod rational;
pub mod sign;
pub mod unipoly;

pub use cyclotomic::Cyclotomic;
pub use poly::ParamPoly;
pub use rational::{int, parse_rational, rat, Rational};
pub use sign::{certify_sign, Sign, SignCertificate};
pub use unipoly::UniPoly;

use num_traits::{One, Signed, Zero};
use std::fmt::Debug;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ScalarError {
    #[error("cannot parse '{0}' as a rational")]
    Parse(String),
    #[error("value is not real: {0}")]
    NotReal(String),
    #[error("sign undecided at the precision ceiling for {0}")]
    PrecisionCeiling(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected {expected} parameters, got {got}")]
    ArityMismatch { expected: usize, got: usize },
}

/// Commutative ring with an involution; matrices of these carry the forms.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_nil(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    fn conj(&self) -> Self;
    fn mul_cyclo(&self, c: &Cyclotomic) -> Self;
}

/// Scalars that admit division and a certified real sign.
pub trait Field: Scalar {
    fn inv(&self) -> Self;
    fn real_sign(&self) -> Result<Sign, ScalarError>;
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn mul_cyclo(&self, c: &Cyclotomic) -> Self {
        self * c.as_rational().expect("irrational factor in a rational computation")
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
    fn real_sign(&self) -> Result<Sign, ScalarError> {
        Ok(if Zero::is_zero(self) {
            Sign::Zero
        } else if self.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        })
    }
}

impl Scalar for Cyclotomic {
    fn zero_like(&self) -> Self {
        Cyclotomic::zero()
    }
    fn one_like(&self) -> Self {
        Cyclotomic::one()
    }
    fn is_nil(&self) -> bool {
        Cyclotomic::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Cyclotomic::conj(self)
    }
    fn mul_cyclo(&self, c: &Cyclotomic) -> Self {
        self * c
    }
}

impl Field for Cyclotomic {
    fn inv(&self) -> Self {
        Cyclotomic::inv(self).expect("inverse of zero")
    }
    fn real_sign(&self) -> Result<Sign, ScalarError> {
        certify_sign(self).map(|c| c.sign)
    }
}

impl Scalar for ParamPoly {
    fn zero_like(&self) -> Self {
        ParamPoly::zero(self.arity())
    }
    fn one_like(&self) -> Self {
        ParamPoly::one(self.arity())
    }
    fn is_nil(&self) -> bool {
        ParamPoly::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        ParamPoly::add(self, o)
    }
    fn minus(&self, o: &Self) -> Self {
        ParamPoly::sub(self, o)
    }
    fn times(&self, o: &Self) -> Self {
        ParamPoly::mul(self, o)
    }
    fn negated(&self) -> Self {
        ParamPoly::neg(self)
    }
    fn conj(&self) -> Self {
        ParamPoly::conj(self)
    }
    fn mul_cyclo(&self, c: &Cyclotomic) -> Self {
        self.scale(c)
    }
}
