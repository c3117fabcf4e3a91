//! Type A combinatorics: hook statistics, the closed-form loci of S_n,
//! Dunkl-Kasatani lowest weights, periodic tableaux and intertwiners.

pub mod intertwiner;
pub mod tableaux;

pub use intertwiner::{intertwiner_check, IntertwinerReport};
pub use tableaux::{enumerate_tableaux, spectra_unitary_check, ContentVector, PeriodicTableau, TableauReport};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::groups::{build_symmetric, IrrepLabel, Partition};
use crate::scalars::{ParamPoly, Rational, UniPoly};
use crate::unitarity::{Interval, LocusDescription};
use crate::verma::isotypic::TypeA;
use crate::verma::VermaError;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum TypeAError {
    #[error("cannot parse partition '{0}'")]
    PartitionParse(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{0} is not in P_kappa for kappa = {1}")]
    NotDiagonalizable(String, String),
    #[error(transparent)]
    Verma(#[from] VermaError),
}

/// "3,3,1" in any order; zeros are rejected.
pub fn parse_partition(s: &str) -> Result<Partition, TypeAError> {
    let bad = || TypeAError::PartitionParse(s.to_string());
    let parts: Vec<usize> = s.split(',').map(|p| p.trim().parse::<usize>().map_err(|_| bad())).collect::<Result<_, _>>()?;
    if parts.is_empty() || parts.contains(&0) {
        return Err(bad());
    }
    Ok(Partition::new(parts))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HookStats {
    /// Largest hook length.
    pub ell: usize,
    /// Multiplicity of the largest part.
    pub m_star: usize,
    /// ell - m_star + 1
    pub big_n: usize,
    pub content: i64,
}

pub fn hook_stats(tau: &Partition) -> HookStats {
    let p = tau.parts();
    let ell = p[0] + p.len() - 1;
    let m_star = p.iter().take_while(|&&x| x == p[0]).count();
    HookStats { ell, m_star, big_n: ell - m_star + 1, content: tau.content() }
}

/// Lower i copies of the largest part by one and append i parts equal to 1.
pub fn tau_shift(tau: &Partition, i: usize) -> Result<Partition, TypeAError> {
    let hs = hook_stats(tau);
    if i == 0 || i > hs.m_star {
        return Err(TypeAError::OutOfRange(format!("i = {} outside 1..={} for {}", i, hs.m_star, tau)));
    }
    let mut parts = tau.parts().to_vec();
    for x in parts.iter_mut().take(i) {
        *x -= 1;
    }
    parts.retain(|&x| x > 0);
    parts.extend(std::iter::repeat_n(1, i));
    Ok(Partition::new(parts))
}

/// (1 - Nc)(1 - (N+1)c)...(1 - (N+i-1)c).
pub fn f_closed_uni(tau: &Partition, i: usize) -> UniPoly {
    let n0 = hook_stats(tau).big_n as i64;
    (0..i as i64).fold(UniPoly::constant(Rational::one()), |acc, k| {
        acc.mul(&UniPoly::linear(Rational::one(), Rational::from_integer((-(n0 + k)).into())))
    })
}

pub fn f_closed(tau: &Partition, i: usize) -> Result<ParamPoly, TypeAError> {
    let hs = hook_stats(tau);
    if i == 0 || i > hs.m_star {
        return Err(TypeAError::OutOfRange(format!("i = {} outside 1..={} for {}", i, hs.m_star, tau)));
    }
    Ok(f_closed_uni(tau, i).to_param_poly())
}

/// Gram of the contravariant form on the unique tau_i line in degree i,
/// as a polynomial in c.
pub fn tau_line_gram(tau: &Partition, i: usize) -> Result<UniPoly, TypeAError> {
    let target = tau_shift(tau, i)?;
    let g = build_symmetric(tau.n()).map_err(|e| TypeAError::InvalidParams(e.to_string()))?;
    let t = g.irrep_index(&IrrepLabel::Partition(tau.clone())).expect("partition labels every S_n irrep");
    let s = g.irrep_index(&IrrepLabel::Partition(target.clone())).expect("partition labels every S_n irrep");
    let mut e = TypeA::new(&g, t, UniPoly::linear(Rational::zero(), Rational::one()))?;
    let gram = e.gram(i, s);
    if gram.rows != 1 {
        return Err(TypeAError::OutOfRange(format!("{} occurs {} times in degree {}", target, gram.rows, i)));
    }
    Ok(gram.get(0, 0).clone())
}

/// Closed-form unitarity locus of L_c(tau) for S_n.
pub fn genera_locus(tau: &Partition) -> LocusDescription {
    let n = tau.n() as i64;
    let q = |p: i64, d: i64| Rational::new(p.into(), d.into());
    let p = tau.parts();
    if p.len() == 1 {
        return LocusDescription::Line { intervals: vec![Interval::new(None, Some(q(1, n)))], points: vec![] };
    }
    if p[0] == 1 {
        return LocusDescription::Line { intervals: vec![Interval::new(Some(q(-1, n)), None)], points: vec![] };
    }
    let hs = hook_stats(tau);
    let hc = hook_stats(&tau.conjugate());
    let ell = hs.ell as i64;
    let mut points: Vec<Rational> = (hs.big_n..hs.ell).map(|k| q(1, k as i64)).collect();
    points.extend((hc.big_n..hc.ell).map(|k| q(-1, k as i64)));
    points.sort();
    LocusDescription::Line { intervals: vec![Interval::new(Some(q(-1, ell)), Some(q(1, ell)))], points }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KasataniWeight {
    pub tau: Partition,
    /// c (ct((n)) - ct(tau)) at c = r/m.
    pub degree: Rational,
}

/// Lowest weights tau_c^1..tau_c^{l+1} of the singular generators of the
/// polynomial representation at c = r/m.
pub fn kasatani_weights(n: usize, r: i64, m: usize) -> Result<Vec<KasataniWeight>, TypeAError> {
    if r < 1 || m < 2 || m > n || r.gcd(&(m as i64)) != 1 {
        return Err(TypeAError::InvalidParams(format!("n = {}, r = {}, m = {}", n, r, m)));
    }
    let c = Rational::new(r.into(), (m as i64).into());
    let top = Partition::new(vec![n]).content();
    let weight = |tau: Partition| {
        let degree = &c * Rational::from_integer((top - tau.content()).into());
        KasataniWeight { tau, degree }
    };
    let l = n / m;
    let mut out = Vec::with_capacity(l + 1);
    for j in 1..=l {
        let rest = n - (j - 1) * m;
        let (qj, sj) = (rest / (m - 1), rest % (m - 1));
        let mut parts = vec![j * m - 1];
        parts.extend(std::iter::repeat_n(m - 1, qj - 1));
        if sj > 0 {
            parts.push(sj);
        }
        out.push(weight(Partition::new(parts)));
    }
    out.push(weight(Partition::new(vec![n])));
    Ok(out)
}

/// kappa = s/r in lowest terms lies in the diagonalizable range iff s >= N(tau*).
pub fn p_kappa_member(tau: &Partition, kappa: &Rational) -> bool {
    kappa.is_positive() && *kappa.numer() >= hook_stats(&tau.conjugate()).big_n.into()
}
