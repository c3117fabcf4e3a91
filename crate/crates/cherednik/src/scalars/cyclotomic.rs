use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use super::rational::{fmt_rational, parse_rational, Rational};
use super::ScalarError;

/// Reduction data for Q(zeta_n): x^k mod Phi_n for every k < n.
struct FieldTable {
    n: u32,
    phi: usize,
    powers: Vec<Vec<Rational>>,
}

fn cyclotomic_poly(n: u32, cache: &mut HashMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    // x^n - 1, low degree first
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_poly(d, cache);
            num = exact_div(&num, &den);
        }
    }
    cache.insert(n, num.clone());
    num
}

// division of integer polynomials by a monic divisor, remainder must vanish
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    let nd = num.len() - 1;
    let mut q = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let coef = r[k + dd].clone();
        if coef.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            r[k + j] -= &coef * dj;
        }
        q[k] = coef;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

fn build_table(n: u32) -> FieldTable {
    static POLYS: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let poly = {
        let mut cache = POLYS.get_or_init(|| Mutex::new(HashMap::new())).lock().unwrap();
        cyclotomic_poly(n, &mut cache)
    };
    let phi = poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![Rational::zero(); phi];
    cur[0] = Rational::one();
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce with x^phi = -sum poly[j] x^j
        let top = cur[phi - 1].clone();
        let mut next = vec![Rational::zero(); phi];
        for j in (1..phi).rev() {
            next[j] = cur[j - 1].clone();
        }
        if !top.is_zero() {
            for j in 0..phi {
                next[j] -= &top * Rational::from_integer(poly[j].clone());
            }
        }
        cur = next;
    }
    FieldTable { n, phi, powers }
}

fn table(n: u32) -> Arc<FieldTable> {
    static TABLES: OnceLock<Mutex<HashMap<u32, Arc<FieldTable>>>> = OnceLock::new();
    let m = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = m.lock().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(build_table(n));
    m.lock().unwrap().insert(n, t.clone());
    t
}

pub fn euler_phi(n: u32) -> usize {
    table(n).phi
}

/// Element of Q(zeta_N) in the power basis 1, zeta, ..., zeta^(phi-1) modulo Phi_N.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { order: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(q: Rational) -> Self {
        Cyclotomic { order: 1, coeffs: vec![q] }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(k)))
    }

    /// zeta_n^e
    pub fn root(n: u32, e: i64) -> Self {
        let t = table(n);
        let k = e.rem_euclid(n as i64) as usize;
        Cyclotomic { order: n, coeffs: t.powers[k].clone() }.normalize()
    }

    /// Element sum a_e zeta_n^e from arbitrary exponent/coefficient pairs.
    pub fn from_terms(n: u32, terms: &[(i64, Rational)]) -> Self {
        let t = table(n);
        let mut c = vec![Rational::zero(); t.phi];
        for (e, a) in terms {
            let k = e.rem_euclid(n as i64) as usize;
            for (j, p) in t.powers[k].iter().enumerate() {
                if !p.is_zero() {
                    c[j] += a * p;
                }
            }
        }
        Cyclotomic { order: n, coeffs: c }.normalize()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Canonical representative: fields of degree one collapse to order 1.
    pub fn normalize(mut self) -> Self {
        if self.order != 1 && (self.coeffs.len() == 1 || self.coeffs[1..].iter().all(|c| c.is_zero())) {
            self.coeffs.truncate(1);
            self.order = 1;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.order == 1 {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn lift(&self, n: u32) -> Self {
        if n == self.order {
            return self.clone();
        }
        assert!(n % self.order == 0, "cannot lift order {} to {}", self.order, n);
        let t = table(n);
        let step = (n / self.order) as usize;
        let mut c = vec![Rational::zero(); t.phi];
        for (e, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, p) in t.powers[(e * step) % n as usize].iter().enumerate() {
                if !p.is_zero() {
                    c[j] += a * p;
                }
            }
        }
        Cyclotomic { order: n, coeffs: c }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let n = a.order.lcm(&b.order);
        (a.lift(n), b.lift(n))
    }

    pub fn conj(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        let t = table(self.order);
        let n = self.order as usize;
        let mut c = vec![Rational::zero(); t.phi];
        for (e, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, p) in t.powers[(n - e) % n].iter().enumerate() {
                if !p.is_zero() {
                    c[j] += a * p;
                }
            }
        }
        Cyclotomic { order: self.order, coeffs: c }.normalize()
    }

    pub fn is_real(&self) -> bool {
        self.order == 1 || self.conj() == *self
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|c| c * q).collect() }.normalize()
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        // solve (self * y) = 1 through the multiplication matrix
        let t = table(self.order);
        let phi = t.phi;
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); phi + 1]; phi];
        let mut col = self.clone();
        let x = Cyclotomic::root(self.order, 1).lift(self.order);
        for j in 0..phi {
            let cl = col.lift(self.order);
            for i in 0..phi {
                m[i][j] = cl.coeffs[i].clone();
            }
            col = &col * &x;
        }
        m[0][phi] = Rational::one();
        for k in 0..phi {
            let p = (k..phi).find(|&r| !m[r][k].is_zero()).ok_or(ScalarError::DivisionByZero)?;
            m.swap(k, p);
            let piv = m[k][k].recip();
            for j in k..=phi {
                m[k][j] = &m[k][j] * &piv;
            }
            for r in 0..phi {
                if r != k && !m[r][k].is_zero() {
                    let f = m[r][k].clone();
                    for j in k..=phi {
                        let v = &f * &m[k][j];
                        m[r][j] -= v;
                    }
                }
            }
        }
        let coeffs = m.into_iter().map(|row| row[phi].clone()).collect();
        Ok(Cyclotomic { order: self.order, coeffs }.normalize())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    /// Floating approximation (re, im), for diagnostics only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, a) in self.coeffs.iter().enumerate() {
            let th = 2.0 * std::f64::consts::PI * e as f64 / n;
            let a = super::rational::to_f64(a);
            re += a * th.cos();
            im += a * th.sin();
        }
        (re, im)
    }

    pub fn to_json(&self) -> CyclotomicJson {
        CyclotomicJson {
            order: self.order,
            terms: self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(e, a)| (e as u32, fmt_rational(a)))
                .collect(),
        }
    }

    pub fn from_json(j: &CyclotomicJson) -> Result<Self, ScalarError> {
        let mut terms = Vec::new();
        for (e, a) in &j.terms {
            terms.push((*e as i64, parse_rational(a)?));
        }
        if j.order == 0 {
            return Err(ScalarError::Parse("order 0".into()));
        }
        Ok(Self::from_terms(j.order, &terms))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CyclotomicJson {
    pub order: u32,
    pub terms: Vec<(u32, String)>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::common(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl From<Rational> for Cyclotomic {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, o: &Cyclotomic) -> Cyclotomic {
        if self.order == o.order {
            let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
            return Cyclotomic { order: self.order, coeffs }.normalize();
        }
        let (a, b) = Cyclotomic::common(self, o);
        &a + &b
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, o: &Cyclotomic) -> Cyclotomic {
        if self.order == o.order {
            let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect();
            return Cyclotomic { order: self.order, coeffs }.normalize();
        }
        let (a, b) = Cyclotomic::common(self, o);
        &a - &b
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, o: &Cyclotomic) -> Cyclotomic {
        if self.order == 1 {
            return o.scale(&self.coeffs[0]);
        }
        if o.order == 1 {
            return self.scale(&o.coeffs[0]);
        }
        if self.order != o.order {
            let (a, b) = Cyclotomic::common(self, o);
            return &a * &b;
        }
        let t = table(self.order);
        let phi = t.phi;
        let mut prod = vec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut c: Vec<Rational> = prod[..phi].to_vec();
        for (k, a) in prod.iter().enumerate().skip(phi) {
            if a.is_zero() {
                continue;
            }
            for (j, p) in t.powers[k % t.n as usize].iter().enumerate() {
                if !p.is_zero() {
                    c[j] += a * p;
                }
            }
        }
        Cyclotomic { order: self.order, coeffs: c }.normalize()
    }
}

impl<'a> Neg for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { order: self.order, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn div(self, o: &Cyclotomic) -> Cyclotomic {
        self * &o.inv().expect("division by zero cyclotomic")
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, o: Cyclotomic) -> Cyclotomic {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, o: &Cyclotomic) -> Cyclotomic {
                (&self).$m(o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);
owned_ops!(Div, div);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (e, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if e == 0 {
                write!(f, "{}", a)?;
            } else {
                write!(f, "({})*z{}^{}", a, self.order, e)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
