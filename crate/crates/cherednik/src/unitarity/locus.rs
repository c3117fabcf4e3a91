//! Closed-form unitarity loci and the Macdonald-Mehta pole count.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::UnitarityError;
use crate::groups::{GroupKind, IrrepLabel, Partition, ReflectionGroup};
use crate::scalars::rational::fmt_rational;
use crate::scalars::Rational;

/// Closed interval; `None` is an infinite end.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl Interval {
    pub fn new(lo: Option<Rational>, hi: Option<Rational>) -> Self {
        Interval { lo, hi }
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|l| l <= x) && self.hi.as_ref().is_none_or(|h| x <= h)
    }

    fn negated(&self) -> Interval {
        Interval { lo: self.hi.as_ref().map(|h| -h), hi: self.lo.as_ref().map(|l| -l) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

/// coeffs . c  (rel)  bound
#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub rel: Relation,
    pub bound: Rational,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rational>, rel: Relation, bound: Rational) -> Self {
        Constraint { coeffs, rel, bound }
    }

    pub fn holds(&self, c: &[Rational]) -> bool {
        let lhs = self.coeffs.iter().zip(c).fold(Rational::zero(), |a, (x, y)| a + x * y);
        match self.rel {
            Relation::Le => lhs <= self.bound,
            Relation::Lt => lhs < self.bound,
            Relation::Eq => lhs == self.bound,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Region {
    pub constraints: Vec<Constraint>,
}

impl Region {
    pub fn contains(&self, c: &[Rational]) -> bool {
        self.constraints.iter().all(|k| k.holds(c))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LocusDescription {
    /// Union of closed intervals and isolated points on a line.
    Line { intervals: Vec<Interval>, points: Vec<Rational> },
    /// Union of regions cut out by linear relations.
    Plane { regions: Vec<Region> },
}

impl LocusDescription {
    pub fn arity(&self) -> usize {
        match self {
            LocusDescription::Line { .. } => 1,
            LocusDescription::Plane { .. } => 2,
        }
    }

    pub fn contains(&self, c: &[Rational]) -> bool {
        match self {
            LocusDescription::Line { intervals, points } => {
                c.len() == 1 && (intervals.iter().any(|i| i.contains(&c[0])) || points.contains(&c[0]))
            }
            LocusDescription::Plane { regions } => c.len() == 2 && regions.iter().any(|r| r.contains(c)),
        }
    }

    /// Image under c_i -> signs_i c_i, the effect of a sign character twist.
    pub fn twisted(&self, signs: &[i64]) -> LocusDescription {
        match self {
            LocusDescription::Line { intervals, points } => {
                if signs[0] > 0 {
                    self.clone()
                } else {
                    let mut points: Vec<Rational> = points.iter().map(|p| -p).collect();
                    points.sort();
                    LocusDescription::Line { intervals: intervals.iter().rev().map(Interval::negated).collect(), points }
                }
            }
            LocusDescription::Plane { regions } => LocusDescription::Plane {
                regions: regions
                    .iter()
                    .map(|r| Region {
                        constraints: r
                            .constraints
                            .iter()
                            .map(|k| Constraint {
                                coeffs: k.coeffs.iter().zip(signs).map(|(a, &s)| a * Rational::from_integer(s.into())).collect(),
                                rel: k.rel,
                                bound: k.bound.clone(),
                            })
                            .collect(),
                    })
                    .collect(),
            },
        }
    }

    pub fn negated(&self) -> LocusDescription {
        self.twisted(&vec![-1; self.arity()])
    }

    pub fn to_json(&self) -> Value {
        let end = |x: &Option<Rational>, inf: &str| x.as_ref().map(fmt_rational).unwrap_or_else(|| inf.to_string());
        match self {
            LocusDescription::Line { intervals, points } => json!({
                "arity": 1,
                "intervals": intervals.iter().map(|i| json!([end(&i.lo, "-inf"), end(&i.hi, "+inf")])).collect::<Vec<_>>(),
                "points": points.iter().map(fmt_rational).collect::<Vec<_>>(),
            }),
            LocusDescription::Plane { regions } => json!({
                "arity": 2,
                "regions": regions.iter().map(|r| r.constraints.iter().map(|k| json!({
                    "coeffs": k.coeffs.iter().map(fmt_rational).collect::<Vec<_>>(),
                    "rel": match k.rel { Relation::Le => "<=", Relation::Lt => "<", Relation::Eq => "=" },
                    "bound": fmt_rational(&k.bound),
                })).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
        }
    }
}

impl std::fmt::Display for LocusDescription {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LocusDescription::Line { intervals, points } => {
                let mut parts: Vec<String> = intervals
                    .iter()
                    .map(|i| {
                        let lo = i.lo.as_ref().map_or("(-inf".to_string(), |x| format!("[{}", fmt_rational(x)));
                        let hi = i.hi.as_ref().map_or("+inf)".to_string(), |x| format!("{}]", fmt_rational(x)));
                        format!("{}, {}", lo, hi)
                    })
                    .collect();
                if !points.is_empty() {
                    parts.push(format!("{{{}}}", points.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")));
                }
                write!(f, "{}", parts.join(" u "))
            }
            LocusDescription::Plane { .. } => write!(f, "{}", self.to_json()),
        }
    }
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

/// Rank one: with entries n - b_n for n = 1..m-1, the point is in the locus
/// iff every entry before the first zero is positive.
pub fn predictor_rank1(b: &[Rational]) -> bool {
    for (k, bn) in b.iter().enumerate() {
        let e = Rational::from_integer((k as i64 + 1).into()) - bn;
        if e.is_zero() {
            return true;
        }
        if e.is_negative() {
            return false;
        }
    }
    true
}

/// b-coordinates seen by the character chi_k: b'_n = b_{n+k} - b_k, with
/// b_0 = 0 and b periodic mod m.
pub fn rank1_shift(b: &[Rational], k: usize) -> Vec<Rational> {
    let m = b.len() + 1;
    let at = |n: usize| if n % m == 0 { Rational::zero() } else { b[n % m - 1].clone() };
    (1..m).map(|n| at(n + k) - at(k)).collect()
}

pub fn predictor_dihedral(g: &ReflectionGroup, tau: usize) -> Result<LocusDescription, UnitarityError> {
    let label = &g.irreps[tau].label;
    match g.kind {
        GroupKind::DihedralOdd(d) => {
            let h = 2 * d as i64 + 1;
            let interval = match label {
                IrrepLabel::Triv => Interval::new(None, Some(q(1, h))),
                IrrepLabel::Sign => Interval::new(Some(q(-1, h)), None),
                IrrepLabel::Tau(l) => Interval::new(Some(q(-(*l as i64), h)), Some(q(*l as i64, h))),
                _ => return Err(UnitarityError::UnsupportedIrrep(label.to_string())),
            };
            Ok(LocusDescription::Line { intervals: vec![interval], points: vec![] })
        }
        GroupKind::DihedralEven(d) => {
            let d = d as i64;
            let one = Rational::one;
            let triv = LocusDescription::Plane {
                regions: vec![
                    Region {
                        constraints: vec![
                            Constraint::new(vec![one(), one()], Relation::Lt, q(1, d)),
                            Constraint::new(vec![one(), Rational::zero()], Relation::Le, q(1, 2)),
                            Constraint::new(vec![Rational::zero(), one()], Relation::Le, q(1, 2)),
                        ],
                    },
                    Region { constraints: vec![Constraint::new(vec![one(), one()], Relation::Eq, q(1, d))] },
                ],
            };
            Ok(match label {
                IrrepLabel::Triv => triv,
                IrrepLabel::Sign => triv.twisted(&[-1, -1]),
                IrrepLabel::Eps1 => triv.twisted(&[-1, 1]),
                IrrepLabel::Eps2 => triv.twisted(&[1, -1]),
                IrrepLabel::Tau(l) => {
                    let l = *l as i64;
                    let s = q(l, d);
                    let t = q(d - l, d);
                    let m1 = -one();
                    LocusDescription::Plane {
                        regions: vec![Region {
                            constraints: vec![
                                Constraint::new(vec![one(), one()], Relation::Le, s.clone()),
                                Constraint::new(vec![m1.clone(), m1.clone()], Relation::Le, s),
                                Constraint::new(vec![one(), m1.clone()], Relation::Le, t.clone()),
                                Constraint::new(vec![m1, one()], Relation::Le, t),
                            ],
                        }],
                    }
                }
                _ => return Err(UnitarityError::UnsupportedIrrep(label.to_string())),
            })
        }
        _ => Err(UnitarityError::UnsupportedIrrep(format!("{} is not dihedral", g.kind))),
    }
}

/// Index of the irrep realising the i-th exterior power of the reflection
/// representation.
pub fn exterior_power_irrep(g: &ReflectionGroup, i: usize) -> Option<usize> {
    let label = match g.kind {
        GroupKind::Symmetric(n) => {
            if i >= n {
                return None;
            }
            let mut parts = vec![n - i];
            parts.extend(std::iter::repeat_n(1, i));
            IrrepLabel::Partition(Partition::new(parts))
        }
        GroupKind::DihedralOdd(_) | GroupKind::DihedralEven(_) => match i {
            0 => IrrepLabel::Triv,
            1 => IrrepLabel::Tau(1),
            2 => IrrepLabel::Sign,
            _ => return None,
        },
        _ => return None,
    };
    g.irrep_index(&label)
}

/// Locus of the i-th exterior power for equal parameters on all reflections.
pub fn predictor_coxeter_exterior(g: &ReflectionGroup, i: usize) -> Result<LocusDescription, UnitarityError> {
    let rank = match g.kind {
        GroupKind::Symmetric(n) => n - 1,
        GroupKind::DihedralOdd(_) | GroupKind::DihedralEven(_) => 2,
        _ => return Err(UnitarityError::UnsupportedIrrep(format!("{} has no Coxeter predictor here", g.kind))),
    };
    if i > rank {
        return Err(UnitarityError::UnsupportedIrrep(format!("exterior power {} exceeds rank {}", i, rank)));
    }
    let h = g.coxeter_number() as i64;
    let interval = if i == 0 {
        Interval::new(None, Some(q(1, h)))
    } else if i == rank {
        Interval::new(Some(q(-1, h)), None)
    } else {
        Interval::new(Some(q(-1, h)), Some(q(1, h)))
    };
    Ok(LocusDescription::Line { intervals: vec![interval], points: vec![] })
}

/// Degrees d_j of the Gamma-factor product K(c) = K_0 prod Gamma(1 - d_j c) / Gamma(1 - c).
/// K_0 is a positive constant that never enters the bookkeeping.
#[derive(Clone, Debug, PartialEq)]
pub struct MMData {
    pub degrees: Vec<usize>,
}

impl MMData {
    pub fn of_group(g: &ReflectionGroup) -> Self {
        MMData { degrees: g.degrees.clone() }
    }
}

fn nonpositive_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_positive()
}

/// Poles of the numerator Gamma factors minus those of the denominator.
pub fn mm_pole_order(data: &MMData, c: &Rational) -> i64 {
    let num = data
        .degrees
        .iter()
        .filter(|&&d| nonpositive_integer(&(Rational::one() - Rational::from_integer(d.into()) * c)))
        .count() as i64;
    num - nonpositive_integer(&(Rational::one() - c)) as i64
}

/// Smallest positive c with a pole.
pub fn mm_first_pole(data: &MMData) -> Option<Rational> {
    let mut cands: Vec<Rational> = data
        .degrees
        .iter()
        .filter(|&&d| d > 0)
        .flat_map(|&d| (1..=d).map(move |k| q(k as i64, d as i64)))
        .collect();
    cands.sort();
    cands.dedup();
    cands.into_iter().find(|c| mm_pole_order(data, c) > 0)
}
