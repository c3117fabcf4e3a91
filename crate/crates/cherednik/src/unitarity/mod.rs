//! Positivity of the contravariant form at rational parameter points,
//! parameter sweeps, necessary conditions and closed-form loci.

pub mod locus;

pub use locus::{
    exterior_power_irrep, mm_first_pole, mm_pole_order, predictor_coxeter_exterior, predictor_dihedral,
    predictor_rank1, rank1_shift, Constraint, Interval, LocusDescription, MMData, Region, Relation,
};

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::groups::{character_inner, GroupKind, IrrepLabel, ReflectionGroup};
use crate::linalg::{congruence, Congruence, Matrix};
use crate::scalars::rational::fmt_rational;
use crate::scalars::{certify_sign, Cyclotomic, ParamPoly, Rational, ScalarError, Sign, UniPoly};
use crate::verma::isotypic::{to_dense, SVec, TypeA, MAX_ISOTYPIC_N};
use crate::verma::{param_arity, point_params, symbolic_params, GradedPiece, Verma, VermaError};

/// Environment variable overriding the sweep worker count.
pub const WORKERS_ENV: &str = "CHEREDNIK_WORKERS";

#[derive(Debug, Clone, Error, PartialEq)]
pub enum UnitarityError {
    #[error(transparent)]
    Verma(#[from] VermaError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("unsupported irrep: {0}")]
    UnsupportedIrrep(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessEntry {
    pub monomial: Vec<u32>,
    pub tau_index: usize,
    pub value: Cyclotomic,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// A vector of degree `witness_degree` with certified negative norm.
    NonUnitary { witness_degree: usize, checked_degree: usize, witness_norm: Cyclotomic, witness_vector: Vec<WitnessEntry> },
    /// Every Gram up to `checked_degree` is positive semidefinite. Not a
    /// unitarity certificate on its own.
    ConsistentUpTo { checked_degree: usize, kernel_dims: Vec<usize> },
}

impl Verdict {
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::NonUnitary { .. } => "NonUnitary",
            Verdict::ConsistentUpTo { .. } => "ConsistentUpTo",
        }
    }

    pub fn is_non_unitary(&self) -> bool {
        matches!(self, Verdict::NonUnitary { .. })
    }

    pub fn witness_degree(&self) -> Option<usize> {
        match self {
            Verdict::NonUnitary { witness_degree, .. } => Some(*witness_degree),
            _ => None,
        }
    }

    pub fn checked_degree(&self) -> usize {
        match self {
            Verdict::NonUnitary { checked_degree, .. } | Verdict::ConsistentUpTo { checked_degree, .. } => *checked_degree,
        }
    }

    pub fn kernel_dims(&self) -> Option<&[usize]> {
        match self {
            Verdict::ConsistentUpTo { kernel_dims, .. } => Some(kernel_dims),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Verdict::NonUnitary { witness_degree, checked_degree, witness_norm, witness_vector } => json!({
                "kind": "NonUnitary",
                "witness_degree": witness_degree,
                "checked_degree": checked_degree,
                "witness_norm": witness_norm.to_string(),
                "witness_vector": witness_vector.iter().map(|e| json!({
                    "monomial": e.monomial,
                    "tau_index": e.tau_index,
                    "value": e.value.to_string(),
                })).collect::<Vec<_>>(),
            }),
            Verdict::ConsistentUpTo { checked_degree, kernel_dims } => json!({
                "kind": "ConsistentUpTo",
                "checked_degree": checked_degree,
                "kernel_dims": kernel_dims,
            }),
        }
    }
}

fn witness_entries(piece: &GradedPiece, v: &[Cyclotomic]) -> Vec<WitnessEntry> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(b, x)| {
            let (mu, t) = piece.label(b);
            WitnessEntry { monomial: mu.to_vec(), tau_index: t, value: x.clone() }
        })
        .collect()
}

enum Engine<'g> {
    /// Multiplicity Grams G_sigma(d) of the K-spaces, polynomial in c.
    Isotypic(Box<TypeA<'g, UniPoly>>),
    /// Full Grams per degree, polynomial in the coordinates.
    Symbolic(Vec<Matrix<ParamPoly>>),
    /// A fresh numeric Verma module per point.
    Pointwise,
}

/// Per-(group, tau) certification state, shared read-only across a sweep.
pub struct Certifier<'g> {
    pub group: &'g ReflectionGroup,
    pub tau: usize,
    pub max_degree: usize,
    engine: Engine<'g>,
}

impl<'g> Certifier<'g> {
    /// Chooses the fastest exact engine available for the group.
    pub fn new(group: &'g ReflectionGroup, tau: usize, max_degree: usize) -> Result<Self, UnitarityError> {
        if tau >= group.irreps.len() {
            return Err(UnitarityError::UnsupportedIrrep(format!("irrep index {}", tau)));
        }
        let engine = match group.kind {
            GroupKind::Symmetric(n) if n <= MAX_ISOTYPIC_N => {
                let mut e = TypeA::new(group, tau, UniPoly::linear(Rational::zero(), Rational::from_integer(1.into())))?;
                e.ensure(max_degree);
                Engine::Isotypic(Box::new(e))
            }
            _ if param_arity(group) <= crate::scalars::poly::MAX_ARITY => {
                let params = symbolic_params(group)?;
                let one = ParamPoly::one(param_arity(group));
                let mut v = Verma::new(group, tau, params, one);
                Engine::Symbolic((0..=max_degree).map(|m| v.gram(m).clone()).collect())
            }
            _ => Engine::Pointwise,
        };
        Ok(Certifier { group, tau, max_degree, engine })
    }

    /// Numeric engine only; used to cross-check the other two.
    pub fn pointwise(group: &'g ReflectionGroup, tau: usize, max_degree: usize) -> Self {
        Certifier { group, tau, max_degree, engine: Engine::Pointwise }
    }

    pub fn engine_name(&self) -> &'static str {
        match self.engine {
            Engine::Isotypic(_) => "isotypic",
            Engine::Symbolic(_) => "symbolic",
            Engine::Pointwise => "pointwise",
        }
    }

    fn check_point(&self, point: &[Rational]) -> Result<(), UnitarityError> {
        let a = param_arity(self.group);
        if point.len() != a {
            return Err(UnitarityError::InvalidPoint(format!("expected {} coordinates, got {}", a, point.len())));
        }
        Ok(())
    }

    /// Point in natural coordinates: class values, or b_1..b_{m-1} for cyclic groups.
    pub fn certify(&self, point: &[Rational]) -> Result<Verdict, UnitarityError> {
        self.check_point(point)?;
        match &self.engine {
            Engine::Isotypic(e) => self.certify_isotypic(e, &point[0]),
            Engine::Symbolic(grams) => {
                let dim_tau = self.group.irreps[self.tau].dim;
                let mut kernel_dims = Vec::with_capacity(grams.len());
                for (m, g) in grams.iter().enumerate() {
                    let mut rows = Vec::with_capacity(g.rows);
                    for i in 0..g.rows {
                        rows.push(g.row(i).iter().map(|p| p.eval(point)).collect::<Result<Vec<_>, _>>()?);
                    }
                    let piece = GradedPiece::new(self.group.dim_h, dim_tau, m);
                    match self.diagonalize(&Matrix::from_rows(rows), m, &piece)? {
                        Ok(k) => kernel_dims.push(k),
                        Err(v) => return Ok(v),
                    }
                }
                Ok(Verdict::ConsistentUpTo { checked_degree: self.max_degree, kernel_dims })
            }
            Engine::Pointwise => {
                let params = point_params(self.group, point)?;
                let mut v = Verma::new(self.group, self.tau, params, Cyclotomic::one());
                let mut kernel_dims = Vec::new();
                for m in 0..=self.max_degree {
                    let g = v.gram(m).clone();
                    let piece = v.piece(m).clone();
                    match self.diagonalize(&g, m, &piece)? {
                        Ok(k) => kernel_dims.push(k),
                        Err(v) => return Ok(v),
                    }
                }
                Ok(Verdict::ConsistentUpTo { checked_degree: self.max_degree, kernel_dims })
            }
        }
    }

    /// Ok(Ok(kernel dim)) or Ok(Err(witness verdict)).
    fn diagonalize(&self, g: &Matrix<Cyclotomic>, m: usize, piece: &GradedPiece) -> Result<Result<usize, Verdict>, UnitarityError> {
        Ok(match congruence(g, &Cyclotomic::zero())? {
            Congruence::Psd { kernel_dim, .. } => Ok(kernel_dim),
            Congruence::Negative { witness, norm } => Err(Verdict::NonUnitary {
                witness_degree: m,
                checked_degree: m,
                witness_norm: norm,
                witness_vector: witness_entries(piece, &witness),
            }),
        })
    }

    fn certify_isotypic(&self, e: &TypeA<'g, UniPoly>, c: &Rational) -> Result<Verdict, UnitarityError> {
        let n = e.n();
        let dim_tau = self.group.irreps[self.tau].dim;
        // nullities of G_sigma(d) at c, evaluated once per (d, sigma)
        let mut null: Vec<Vec<usize>> = Vec::new();
        let mut kernel_dims = Vec::new();
        for m in 0..=self.max_degree {
            let mut row = Vec::with_capacity(e.num_shapes());
            for sigma in 0..e.num_shapes() {
                let g = e.gram_at(m, sigma);
                if g.rows == 0 {
                    row.push(0);
                    continue;
                }
                let q = g.map(|p| p.eval(c));
                match congruence(&q, &Rational::zero())? {
                    Congruence::Psd { kernel_dim, .. } => row.push(kernel_dim),
                    Congruence::Negative { witness, norm } => {
                        // G_sigma(m) is the j = 0 block; blocks with j > 0 repeat lower degrees
                        let v = e.copies_at(m, sigma).iter().zip(&witness).fold(SVec::new(), |mut acc, (cp, w)| {
                            for (k, x) in cp {
                                let s = acc.entry(k.clone()).or_insert_with(Rational::zero);
                                *s += x * w;
                            }
                            acc
                        });
                        let v: SVec = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
                        let piece = GradedPiece::new(n, dim_tau, m);
                        let dense: Vec<Cyclotomic> = to_dense(&v, &piece).into_iter().map(Cyclotomic::from_rational).collect();
                        return Ok(Verdict::NonUnitary {
                            witness_degree: m,
                            checked_degree: m,
                            witness_norm: Cyclotomic::from_rational(norm),
                            witness_vector: witness_entries(&piece, &dense),
                        });
                    }
                }
            }
            null.push(row);
            // M_m = sum_j p1^j K_{m-j}; p1^j is injective and scales the form by j! n^j
            let k: usize = (0..=m)
                .map(|j| (0..e.num_shapes()).map(|s| null[m - j][s] * e.shape_dim(s)).sum::<usize>())
                .sum();
            kernel_dims.push(k);
        }
        Ok(Verdict::ConsistentUpTo { checked_degree: self.max_degree, kernel_dims })
    }

    /// Certifies every grid point on a worker pool; output follows grid order.
    pub fn sweep(&self, grid: &[Vec<Rational>], workers: Option<usize>) -> Vec<Result<Verdict, UnitarityError>> {
        let threads = worker_count(workers);
        let run = || grid.par_iter().map(|p| self.certify(p)).collect::<Vec<_>>();
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(run),
            Err(_) => grid.iter().map(|p| self.certify(p)).collect(),
        }
    }
}

/// Environment override, then the configured value, then available parallelism.
pub fn worker_count(configured: Option<usize>) -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
        .filter(|&w| w > 0)
        .or(configured.filter(|&w| w > 0))
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

/// One-shot certification with the default engine.
pub fn certify_point(group: &ReflectionGroup, tau: usize, point: &[Rational], max_degree: usize) -> Result<Verdict, UnitarityError> {
    Certifier::new(group, tau, max_degree)?.certify(point)
}

pub fn sweep(
    group: &ReflectionGroup,
    tau: usize,
    grid: &[Vec<Rational>],
    max_degree: usize,
    workers: Option<usize>,
) -> Result<Vec<Result<Verdict, UnitarityError>>, UnitarityError> {
    Ok(Certifier::new(group, tau, max_degree)?.sweep(grid, workers))
}

#[derive(Clone, Debug, PartialEq)]
pub struct NecessaryReport {
    /// None when the group is not a Coxeter group.
    pub hc_nonneg: Option<bool>,
    /// (sigma, h_c(sigma) <= h_c(tau) + 1) for every sigma inside tau (x) h*.
    pub degree1: Vec<(IrrepLabel, bool)>,
}

impl NecessaryReport {
    pub fn all_pass(&self) -> bool {
        self.hc_nonneg != Some(false) && self.degree1.iter().all(|(_, ok)| *ok)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "hc_nonneg": self.hc_nonneg,
            "degree1": self.degree1.iter().map(|(s, ok)| json!({"sigma": s.to_string(), "satisfied": ok})).collect::<Vec<_>>(),
        })
    }
}

/// Rank of the reflection part of h (S_n acts on C^n with a trivial line).
fn essential_rank(g: &ReflectionGroup) -> usize {
    match g.kind {
        GroupKind::Symmetric(n) => n - 1,
        _ => g.dim_h,
    }
}

fn nonneg(x: &Cyclotomic) -> Result<bool, UnitarityError> {
    Ok(x.is_zero() || certify_sign(x)?.sign == Sign::Positive)
}

/// Lowest-weight nonnegativity and the degree-one inequalities.
pub fn necessary_conditions(group: &ReflectionGroup, tau: usize, point: &[Rational]) -> Result<NecessaryReport, UnitarityError> {
    let params = point_params(group, point)?;
    let v = Verma::new(group, tau, params, Cyclotomic::one());
    let h_tau = v.h_weight_of(tau);
    let hc_nonneg = if group.is_coxeter() {
        let shift = Rational::new(((group.dim_h - essential_rank(group)) as i64).into(), 2.into());
        Some(nonneg(&(&h_tau - &Cyclotomic::from_rational(shift)))?)
    } else {
        None
    };
    let hchar: Vec<Cyclotomic> = (0..group.order())
        .map(|w| {
            let m = group.matrix_hstar(w);
            (0..m.rows).fold(Cyclotomic::zero(), |a, i| &a + m.get(i, i))
        })
        .collect();
    let prod: Vec<Cyclotomic> = group.irreps[tau].characters().iter().zip(&hchar).map(|(a, b)| a * b).collect();
    let mut degree1 = Vec::new();
    for (s, irr) in group.irreps.iter().enumerate() {
        if character_inner(group, &prod, irr.characters()).is_zero() {
            continue;
        }
        let gap = &(&h_tau + &Cyclotomic::one()) - &v.h_weight_of(s);
        degree1.push((irr.label.clone(), nonneg(&gap)?));
    }
    Ok(NecessaryReport { hc_nonneg, degree1 })
}

/// Rational grid in natural coordinates, formatted for reports.
pub fn fmt_point(p: &[Rational]) -> String {
    p.iter().map(fmt_rational).collect::<Vec<_>>().join(",")
}
