//! Rationals that stay on machine words while they fit and fall back to
//! big integers otherwise. The isotypic engine spends nearly all its time on
//! small fractions, where num's gcd on BigUint dominates.

use std::cmp::Ordering;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use crate::scalars::Rational;

/// Invariant: `Small` whenever numerator and denominator fit in i64, reduced
/// with positive denominator; `Big` only for values that do not fit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Q {
    Small(i64, i64),
    Big(Box<Rational>),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return gcd_u64(a as u64, b as u64) as u128;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Q {
    pub fn zero() -> Q {
        Q::Small(0, 1)
    }

    pub fn one() -> Q {
        Q::Small(1, 1)
    }

    pub fn int(v: i64) -> Q {
        Q::Small(v, 1)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }

    fn from_i128(n: i128, d: i128) -> Q {
        debug_assert!(d != 0);
        if n == 0 {
            return Q::zero();
        }
        let g = gcd_u128(n.unsigned_abs(), d.unsigned_abs()) as i128;
        let (mut n, mut d) = (n / g, d / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Q::Small(a, b),
            _ => Q::Big(Box::new(Rational::new_raw(BigInt::from(n), BigInt::from(d)))),
        }
    }

    pub fn from_rational(r: &Rational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(a), Some(b)) => Q::Small(a, b),
            _ => Q::Big(Box::new(r.clone())),
        }
    }

    pub fn to_rational(&self) -> Rational {
        match self {
            Q::Small(a, b) => Rational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Q::Big(r) => (**r).clone(),
        }
    }

    fn big(r: Rational) -> Q {
        Q::from_rational(&r)
    }

    pub fn recip(&self) -> Q {
        match self {
            Q::Small(a, b) => Q::from_i128(*b as i128, *a as i128),
            Q::Big(r) => Q::big(r.recip()),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(_, b) => *b == 1,
            Q::Big(r) => r.is_integer(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Q::Small(a, _) => a.signum() as i32,
            Q::Big(r) => {
                if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }
}

impl<'a> Add<&'a Q> for &Q {
    type Output = Q;
    fn add(self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if b == d {
                    Q::from_i128(*a as i128 + *c as i128, *b as i128)
                } else {
                    Q::from_i128(*a as i128 * *d as i128 + *c as i128 * *b as i128, *b as i128 * *d as i128)
                }
            }
            _ => Q::big(self.to_rational() + o.to_rational()),
        }
    }
}

impl<'a> Sub<&'a Q> for &Q {
    type Output = Q;
    fn sub(self, o: &Q) -> Q {
        self + &(-o)
    }
}

impl<'a> Mul<&'a Q> for &Q {
    type Output = Q;
    fn mul(self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128),
            _ => Q::big(self.to_rational() * o.to_rational()),
        }
    }
}

impl<'a> Div<&'a Q> for &Q {
    type Output = Q;
    fn div(self, o: &Q) -> Q {
        self * &o.recip()
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(a, b) if *a != i64::MIN => Q::Small(-a, *b),
            _ => Q::big(-self.to_rational()),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

impl<'a> AddAssign<&'a Q> for Q {
    fn add_assign(&mut self, o: &Q) {
        *self = &*self + o;
    }
}

impl<'a> SubAssign<&'a Q> for Q {
    fn sub_assign(&mut self, o: &Q) {
        *self = &*self - o;
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, o: &Q) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Q {
    fn cmp(&self, o: &Q) -> Ordering {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_rational().cmp(&o.to_rational()),
        }
    }
}

impl From<i64> for Q {
    fn from(v: i64) -> Q {
        Q::int(v)
    }
}

impl From<&Rational> for Q {
    fn from(r: &Rational) -> Q {
        Q::from_rational(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;
    use num_traits::Zero;

    #[test]
    fn matches_big_rationals() {
        let xs = [rat(3, 7), rat(-5, 12), rat(0, 1), rat(1, 1), rat(i64::MAX, 3), rat(-7, i64::MAX)];
        for a in &xs {
            for b in &xs {
                let (qa, qb) = (Q::from_rational(a), Q::from_rational(b));
                assert_eq!((&qa + &qb).to_rational(), a + b);
                assert_eq!((&qa - &qb).to_rational(), a - b);
                assert_eq!((&qa * &qb).to_rational(), a * b);
                assert_eq!(qa.cmp(&qb), a.cmp(b));
                if !b.is_zero() {
                    assert_eq!((&qa / &qb).to_rational(), a / b);
                }
                // canonical form: equal values compare equal structurally
                assert_eq!(Q::from_rational(&(a * b)), &qa * &qb);
            }
        }
        assert!(matches!(Q::from_rational(&rat(i64::MAX, 3)).mul(&Q::int(9)), Q::Big(_)));
        assert_eq!(Q::int(i64::MIN).neg().to_rational(), -Rational::from_integer(i64::MIN.into()));
        assert!(Q::one().is_one() && Q::zero().is_zero());
    }
}
