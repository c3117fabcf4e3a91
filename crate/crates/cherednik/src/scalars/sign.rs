use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::cyclotomic::Cyclotomic;
use super::rational::Rational;
use super::ScalarError;

pub const START_BITS: u32 = 64;
pub const CEILING_BITS: u32 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

#[derive(Clone, Debug)]
pub struct SignCertificate {
    pub value: Cyclotomic,
    pub sign: Sign,
    /// 0 when the sign was decided without interval evaluation.
    pub precision_bits: u32,
}

/// Closed interval [lo, hi] * 2^-bits with outward rounding.
#[derive(Clone, Debug)]
struct Iv {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn floor_shift(x: &BigInt, bits: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << bits))
}

fn ceil_shift(x: &BigInt, bits: u32) -> BigInt {
    -(-x).div_floor(&(BigInt::one() << bits))
}

impl Iv {
    fn from_rational(q: &Rational, bits: u32) -> Iv {
        let scaled = q.numer() << bits;
        let lo = scaled.div_floor(q.denom());
        let hi = -(-&scaled).div_floor(q.denom());
        Iv { lo, hi, bits }
    }

    fn add(&self, o: &Iv) -> Iv {
        Iv { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, bits: self.bits }
    }

    fn neg(&self) -> Iv {
        Iv { lo: -&self.hi, hi: -&self.lo, bits: self.bits }
    }

    fn mul(&self, o: &Iv) -> Iv {
        let ps = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let mn = ps.iter().min().unwrap();
        let mx = ps.iter().max().unwrap();
        Iv { lo: floor_shift(mn, self.bits), hi: ceil_shift(mx, self.bits), bits: self.bits }
    }

    fn div_int(&self, k: &BigInt) -> Iv {
        debug_assert!(k.is_positive());
        Iv { lo: self.lo.div_floor(k), hi: -(-&self.hi).div_floor(k), bits: self.bits }
    }

    /// widen by +-r where r = num/2^bits units given as integer ulps
    fn widen(&self, ulps: &BigInt) -> Iv {
        Iv { lo: &self.lo - ulps, hi: &self.hi + ulps, bits: self.bits }
    }

    fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

// arctan(1/k) by its alternating series, with an explicit tail bound
fn arctan_inv(k: u64, bits: u32) -> Iv {
    let kb = BigInt::from(k);
    let one = BigInt::one() << bits;
    let mut acc = Iv { lo: BigInt::zero(), hi: BigInt::zero(), bits };
    let mut pow = kb.clone();
    let mut j: u64 = 0;
    loop {
        let den = &pow * BigInt::from(2 * j + 1);
        if den > one {
            // tail is bounded by the first omitted term, which is < 1 ulp
            return acc.widen(&BigInt::one());
        }
        let lo = one.div_floor(&den);
        let hi = -(-&one).div_floor(&den);
        let term = Iv { lo, hi, bits };
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.add(&term.neg()) };
        pow = &pow * &kb * &kb;
        j += 1;
    }
}

fn pi(bits: u32) -> Iv {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let a = arctan_inv(5, bits);
    let b = arctan_inv(239, bits);
    let s16 = Iv { lo: &a.lo * 16, hi: &a.hi * 16, bits };
    let s4 = Iv { lo: &b.lo * 4, hi: &b.hi * 4, bits };
    s16.add(&s4.neg())
}

// cos of an interval argument with |theta| <= 4 by Taylor series and Lagrange remainder
fn cos_iv(theta: &Iv) -> Iv {
    let bits = theta.bits;
    let one = Iv { lo: BigInt::one() << bits, hi: BigInt::one() << bits, bits };
    let t2 = theta.mul(theta);
    let mut term = one.clone();
    let mut acc = one;
    let mut k: u64 = 0;
    // remainder after the term of degree 2k is at most 4^(2k+2)/(2k+2)!
    let mut rem = Rational::from_integer(BigInt::from(8));
    loop {
        k += 1;
        let d = BigInt::from((2 * k - 1) * (2 * k));
        term = term.mul(&t2).div_int(&d).neg();
        acc = acc.add(&term);
        rem = rem * Rational::from_integer(BigInt::from(16)) / Rational::from_integer(BigInt::from((2 * k + 1) * (2 * k + 2)));
        let bound = Rational::from_integer(BigInt::one() << bits) * &rem;
        if bound < Rational::one() {
            return acc.widen(&BigInt::from(2));
        }
    }
}

fn eval_interval(x: &Cyclotomic, bits: u32) -> Iv {
    let n = x.order() as i64;
    let work = bits + 32;
    let mut acc = Iv { lo: BigInt::zero(), hi: BigInt::zero(), bits: work };
    let p = if n > 1 { Some(pi(work)) } else { None };
    for (e, a) in x.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let ai = Iv::from_rational(a, work);
        let c = if e == 0 {
            Iv { lo: BigInt::one() << work, hi: BigInt::one() << work, bits: work }
        } else {
            // angle 2 pi e'/n with e' folded into (-n/2, n/2]
            let mut ep = e as i64;
            if 2 * ep > n {
                ep -= n;
            }
            let p = p.as_ref().unwrap();
            let num = Iv { lo: &p.lo * BigInt::from(2 * ep), hi: &p.hi * BigInt::from(2 * ep), bits: work };
            let num = if ep < 0 { Iv { lo: num.hi.clone(), hi: num.lo.clone(), bits: work } } else { num };
            cos_iv(&num.div_int(&BigInt::from(n)))
        };
        acc = acc.add(&ai.mul(&c));
    }
    acc
}

/// Certified sign of a real cyclotomic number.
pub fn certify_sign(x: &Cyclotomic) -> Result<SignCertificate, ScalarError> {
    if !x.is_real() {
        return Err(ScalarError::NotReal(x.to_string()));
    }
    if x.is_zero() {
        return Ok(SignCertificate { value: x.clone(), sign: Sign::Zero, precision_bits: 0 });
    }
    if let Some(q) = x.as_rational() {
        let sign = if q.is_positive() { Sign::Positive } else { Sign::Negative };
        return Ok(SignCertificate { value: x.clone(), sign, precision_bits: 0 });
    }
    let mut bits = START_BITS;
    while bits <= CEILING_BITS {
        if let Some(sign) = eval_interval(x, bits).sign() {
            return Ok(SignCertificate { value: x.clone(), sign, precision_bits: bits });
        }
        bits *= 2;
    }
    Err(ScalarError::PrecisionCeiling(x.to_string()))
}

/// Interval enclosure of a real cyclotomic as a pair of rationals.
pub fn real_enclosure(x: &Cyclotomic, bits: u32) -> (Rational, Rational) {
    let iv = eval_interval(x, bits);
    let den = BigInt::one() << iv.bits;
    (Rational::new(iv.lo, den.clone()), Rational::new(iv.hi, den))
}
