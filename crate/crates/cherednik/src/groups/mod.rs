//! Reflection groups (symmetric, cyclic, dihedral) with exact reflection
//! data and explicit irreducible representations.

pub mod symmetric;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{rank, Matrix};
use crate::scalars::cyclotomic::CyclotomicJson;
use crate::scalars::{Cyclotomic, Rational};
pub use symmetric::{Partition, Syt};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GroupError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("unknown group spec '{0}'")]
    UnknownGroupSpec(String),
    #[error("unknown irrep '{0}'")]
    UnknownIrrep(String),
    #[error("matrices do not form a representation")]
    NotARepresentation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GroupKind {
    Symmetric(usize),
    Cyclic(usize),
    DihedralOdd(usize),
    DihedralEven(usize),
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Symmetric(n) => write!(f, "Sn:{}", n),
            GroupKind::Cyclic(m) => write!(f, "Cyc:{}", m),
            GroupKind::DihedralOdd(d) => write!(f, "DihOdd:{}", d),
            GroupKind::DihedralEven(d) => write!(f, "DihEven:{}", d),
        }
    }
}

impl FromStr for GroupKind {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::UnknownGroupSpec(s.to_string());
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        let k: usize = arg.trim().parse().map_err(|_| bad())?;
        match name.trim() {
            "Sn" => Ok(GroupKind::Symmetric(k)),
            "Cyc" => Ok(GroupKind::Cyclic(k)),
            "DihOdd" => Ok(GroupKind::DihedralOdd(k)),
            "DihEven" => Ok(GroupKind::DihedralEven(k)),
            _ => Err(bad()),
        }
    }
}

/// Monomial matrix acting on the coordinates of h*: x_k -> zeta_L^roots[k] x_perm[k].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialMatrix {
    pub perm: Vec<usize>,
    pub roots: Vec<u32>,
}

impl MonomialMatrix {
    pub fn identity(n: usize) -> Self {
        MonomialMatrix { perm: (0..n).collect(), roots: vec![0; n] }
    }

    /// self after other (apply other first).
    pub fn compose(&self, other: &MonomialMatrix, l: u32) -> MonomialMatrix {
        let perm = other.perm.iter().map(|&k| self.perm[k]).collect();
        let roots = (0..other.perm.len()).map(|k| (other.roots[k] + self.roots[other.perm[k]]) % l).collect();
        MonomialMatrix { perm, roots }
    }

    pub fn dense(&self, l: u32) -> Matrix<Cyclotomic> {
        let n = self.perm.len();
        let mut m = Matrix::filled(n, n, Cyclotomic::zero());
        for k in 0..n {
            m.set(self.perm[k], k, Cyclotomic::root(l, self.roots[k] as i64));
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IrrepLabel {
    Partition(Partition),
    Character(usize),
    Triv,
    Sign,
    Eps1,
    Eps2,
    Tau(usize),
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::Partition(p) => write!(f, "{}", p),
            IrrepLabel::Character(k) => write!(f, "chi{}", k),
            IrrepLabel::Triv => write!(f, "triv"),
            IrrepLabel::Sign => write!(f, "sign"),
            IrrepLabel::Eps1 => write!(f, "eps1"),
            IrrepLabel::Eps2 => write!(f, "eps2"),
            IrrepLabel::Tau(l) => write!(f, "tau{}", l),
        }
    }
}

/// Irreducible representation given by matrices for every group element.
pub struct Irrep {
    pub label: IrrepLabel,
    pub dim: usize,
    /// Diagonal of the invariant Hermitian form in the model basis.
    pub form: Vec<Rational>,
    gen_matrices: Vec<Matrix<Cyclotomic>>,
    words: Vec<Vec<usize>>,
    matrices: OnceLock<Vec<Matrix<Cyclotomic>>>,
    characters: OnceLock<Vec<Cyclotomic>>,
}

impl Irrep {
    fn from_generators(label: IrrepLabel, form: Vec<Rational>, gens: Vec<Matrix<Cyclotomic>>, words: &[Vec<usize>]) -> Irrep {
        let dim = form.len();
        Irrep {
            label,
            dim,
            form,
            gen_matrices: gens,
            words: words.to_vec(),
            matrices: OnceLock::new(),
            characters: OnceLock::new(),
        }
    }

    fn from_all(label: IrrepLabel, form: Vec<Rational>, all: Vec<Matrix<Cyclotomic>>) -> Irrep {
        let dim = form.len();
        let cell = OnceLock::new();
        let _ = cell.set(all);
        Irrep { label, dim, form, gen_matrices: Vec::new(), words: Vec::new(), matrices: cell, characters: OnceLock::new() }
    }

    /// Matrices of all group elements, in element order.
    pub fn matrices(&self) -> &[Matrix<Cyclotomic>] {
        self.matrices.get_or_init(|| {
            let id = Matrix::identity(self.dim, &Cyclotomic::zero());
            self.words
                .iter()
                .map(|w| w.iter().fold(id.clone(), |acc, &g| acc.mul(&self.gen_matrices[g])))
                .collect()
        })
    }

    pub fn matrix(&self, g: usize) -> &Matrix<Cyclotomic> {
        &self.matrices()[g]
    }

    pub fn characters(&self) -> &[Cyclotomic] {
        self.characters.get_or_init(|| {
            self.matrices()
                .iter()
                .map(|m| (0..self.dim).fold(Cyclotomic::zero(), |a, i| &a + m.get(i, i)))
                .collect()
        })
    }

    pub fn character(&self, g: usize) -> Cyclotomic {
        self.characters()[g].clone()
    }
}

#[derive(Clone, Debug)]
pub struct ReflectionDatum {
    pub element: usize,
    /// covector in h*, coordinates in the x basis
    pub alpha: Vec<Cyclotomic>,
    /// vector in h, coordinates in the y basis
    pub alpha_check: Vec<Cyclotomic>,
    /// eigenvalue of s on alpha
    pub lambda: Cyclotomic,
    pub class: usize,
}

#[derive(Serialize)]
pub struct ReflectionDatumJson {
    pub element: usize,
    pub alpha: Vec<CyclotomicJson>,
    pub alpha_check: Vec<CyclotomicJson>,
    pub lambda: CyclotomicJson,
    pub class: usize,
}

impl ReflectionDatum {
    pub fn to_json(&self) -> ReflectionDatumJson {
        ReflectionDatumJson {
            element: self.element,
            alpha: self.alpha.iter().map(|c| c.to_json()).collect(),
            alpha_check: self.alpha_check.iter().map(|c| c.to_json()).collect(),
            lambda: self.lambda.to_json(),
            class: self.class,
        }
    }
}

pub struct ReflectionGroup {
    pub kind: GroupKind,
    pub dim_h: usize,
    /// all roots of unity in the h* matrices are powers of zeta_root_order
    pub root_order: u32,
    pub elements: Vec<MonomialMatrix>,
    index: HashMap<MonomialMatrix, usize>,
    pub inverse: Vec<usize>,
    pub class_of: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub reflections: Vec<ReflectionDatum>,
    /// groups of indices into `reflections`
    pub reflection_classes: Vec<Vec<usize>>,
    pub degrees: Vec<usize>,
    pub irreps: Vec<Irrep>,
}

pub const MAX_SYMMETRIC: usize = 8;

impl ReflectionGroup {
    pub fn build(kind: GroupKind) -> Result<ReflectionGroup, GroupError> {
        match kind {
            GroupKind::Symmetric(n) => build_symmetric(n),
            GroupKind::Cyclic(m) => build_cyclic(m),
            GroupKind::DihedralOdd(d) => build_dihedral_odd(d),
            GroupKind::DihedralEven(d) => build_dihedral_even(d),
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn index_of(&self, m: &MonomialMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let m = self.elements[a].compose(&self.elements[b], self.root_order);
        self.index[&m]
    }

    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        (0..self.order()).map(|a| (0..self.order()).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// Dense matrix of an element on h* (x coordinates).
    pub fn matrix_hstar(&self, g: usize) -> Matrix<Cyclotomic> {
        self.elements[g].dense(self.root_order)
    }

    pub fn num_reflection_classes(&self) -> usize {
        self.reflection_classes.len()
    }

    pub fn is_coxeter(&self) -> bool {
        !matches!(self.kind, GroupKind::Cyclic(m) if m > 2)
    }

    /// Largest degree; equals the Coxeter number for Coxeter groups.
    pub fn coxeter_number(&self) -> usize {
        *self.degrees.iter().max().unwrap()
    }

    pub fn num_reflections(&self) -> usize {
        self.reflections.len()
    }

    pub fn irrep_index(&self, label: &IrrepLabel) -> Option<usize> {
        self.irreps.iter().position(|r| &r.label == label)
    }

    pub fn trivial(&self) -> usize {
        self.irreps.iter().position(|r| r.characters().iter().all(|c| c.is_one())).unwrap()
    }

    pub fn parse_irrep(&self, s: &str) -> Result<usize, GroupError> {
        let s = s.trim();
        let label = match self.kind {
            GroupKind::Symmetric(_) => IrrepLabel::Partition(s.parse().map_err(|_| GroupError::UnknownIrrep(s.into()))?),
            GroupKind::Cyclic(_) => {
                let k = s.strip_prefix("chi").unwrap_or(s);
                IrrepLabel::Character(k.parse().map_err(|_| GroupError::UnknownIrrep(s.into()))?)
            }
            _ => match s {
                "triv" => IrrepLabel::Triv,
                "sign" => IrrepLabel::Sign,
                "eps1" => IrrepLabel::Eps1,
                "eps2" => IrrepLabel::Eps2,
                _ => {
                    let l = s.strip_prefix("tau").ok_or_else(|| GroupError::UnknownIrrep(s.into()))?;
                    IrrepLabel::Tau(l.parse().map_err(|_| GroupError::UnknownIrrep(s.into()))?)
                }
            },
        };
        self.irrep_index(&label).ok_or_else(|| GroupError::UnknownIrrep(s.into()))
    }

    /// Scalar by which the sum of the reflections of class k acts on an irrep.
    pub fn reflection_eigenvalue_sum(&self, irrep: usize, class: usize) -> Cyclotomic {
        let rho = &self.irreps[irrep];
        let refl = &self.reflection_classes[class];
        let chi = rho.character(self.reflections[refl[0]].element);
        chi.scale(&(Rational::from_integer(refl.len().into()) / Rational::from_integer(rho.dim.into())))
    }

    /// D_tau: eigenvalue of the sum of all reflections (Coxeter case).
    pub fn total_reflection_sum(&self, irrep: usize) -> Cyclotomic {
        (0..self.num_reflection_classes()).fold(Cyclotomic::zero(), |a, k| &a + &self.reflection_eigenvalue_sum(irrep, k))
    }

    pub fn reflection_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.kind.to_string(),
            "order": self.order(),
            "dim_h": self.dim_h,
            "degrees": self.degrees,
            "reflections": self.reflections.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// Breadth-first closure under right multiplication by generators.
fn close(gens: &[MonomialMatrix], dim: usize, l: u32) -> (Vec<MonomialMatrix>, Vec<Vec<usize>>) {
    let id = MonomialMatrix::identity(dim);
    let mut elements = vec![id.clone()];
    let mut words = vec![Vec::new()];
    let mut seen: HashMap<MonomialMatrix, usize> = HashMap::new();
    seen.insert(id, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (k, g) in gens.iter().enumerate() {
            let m = elements[i].compose(g, l);
            if !seen.contains_key(&m) {
                seen.insert(m.clone(), elements.len());
                let mut w = words[i].clone();
                w.push(k);
                words.push(w);
                elements.push(m);
                queue.push_back(elements.len() - 1);
            }
        }
    }
    (elements, words)
}

struct Skeleton {
    kind: GroupKind,
    dim_h: usize,
    root_order: u32,
    elements: Vec<MonomialMatrix>,
    degrees: Vec<usize>,
}

fn finish(sk: Skeleton, make_irreps: impl FnOnce(&[MonomialMatrix]) -> Vec<Irrep>) -> ReflectionGroup {
    let Skeleton { kind, dim_h, root_order: l, elements, degrees } = sk;
    let index: HashMap<MonomialMatrix, usize> = elements.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let id = MonomialMatrix::identity(dim_h);
    let inverse: Vec<usize> = elements
        .iter()
        .map(|g| (0..elements.len()).find(|&h| g.compose(&elements[h], l) == id).unwrap())
        .collect();
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for g in 0..elements.len() {
        if class_of[g] != usize::MAX {
            continue;
        }
        let k = classes.len();
        let mut cls = Vec::new();
        for h in 0..elements.len() {
            let c = elements[h].compose(&elements[g], l).compose(&elements[inverse[h]], l);
            let ci = index[&c];
            if class_of[ci] == usize::MAX {
                class_of[ci] = k;
                cls.push(ci);
            }
        }
        cls.sort_unstable();
        classes.push(cls);
    }
    // reflections: rank(s - 1) = 1 on h*
    let mut reflections = Vec::new();
    let mut class_map: HashMap<usize, usize> = HashMap::new();
    let mut reflection_classes: Vec<Vec<usize>> = Vec::new();
    for g in 1..elements.len() {
        let m = elements[g].dense(l);
        let mut a = m.clone();
        for i in 0..dim_h {
            let v = a.get(i, i) - &Cyclotomic::one();
            a.set(i, i, v);
        }
        if rank(&a) != 1 {
            continue;
        }
        let col = (0..dim_h).find(|&j| (0..dim_h).any(|i| !a.get(i, j).is_zero())).unwrap();
        let mut alpha: Vec<Cyclotomic> = (0..dim_h).map(|i| a.get(i, col).clone()).collect();
        let lead = alpha.iter().find(|c| !c.is_zero()).unwrap().inv().unwrap();
        alpha = alpha.iter().map(|c| c * &lead).collect();
        // s alpha = lambda alpha
        let sa: Vec<Cyclotomic> = (0..dim_h)
            .map(|i| (0..dim_h).fold(Cyclotomic::zero(), |acc, j| &acc + &(m.get(i, j) * &alpha[j])))
            .collect();
        let pivot = alpha.iter().position(|c| !c.is_zero()).unwrap();
        let lambda = &sa[pivot] / &alpha[pivot];
        // on h the element acts by the conjugate matrix (unitary monomial)
        let mut b = m.map(|c| c.conj());
        for i in 0..dim_h {
            let v = b.get(i, i) - &Cyclotomic::one();
            b.set(i, i, v);
        }
        let colb = (0..dim_h).find(|&j| (0..dim_h).any(|i| !b.get(i, j).is_zero())).unwrap();
        let check: Vec<Cyclotomic> = (0..dim_h).map(|i| b.get(i, colb).clone()).collect();
        let pairing = alpha.iter().zip(&check).fold(Cyclotomic::zero(), |acc, (x, y)| &acc + &(x * y));
        let scale = &Cyclotomic::from_int(2) / &pairing;
        let alpha_check: Vec<Cyclotomic> = check.iter().map(|c| c * &scale).collect();
        let cls = *class_map.entry(class_of[g]).or_insert_with(|| {
            reflection_classes.push(Vec::new());
            reflection_classes.len() - 1
        });
        reflection_classes[cls].push(reflections.len());
        reflections.push(ReflectionDatum { element: g, alpha, alpha_check, lambda, class: cls });
    }
    let irreps = make_irreps(&elements);
    ReflectionGroup {
        kind,
        dim_h,
        root_order: l,
        elements,
        index,
        inverse,
        class_of,
        classes,
        reflections,
        reflection_classes,
        degrees,
        irreps,
    }
}

pub fn build_symmetric(n: usize) -> Result<ReflectionGroup, GroupError> {
    if !(2..=MAX_SYMMETRIC).contains(&n) {
        return Err(GroupError::OutOfRange(format!("symmetric group needs 2 <= n <= {}", MAX_SYMMETRIC)));
    }
    let gens: Vec<MonomialMatrix> = (0..n - 1)
        .map(|k| {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.swap(k, k + 1);
            MonomialMatrix { perm, roots: vec![0; n] }
        })
        .collect();
    let (elements, words) = close(&gens, n, 1);
    let sk = Skeleton { kind: GroupKind::Symmetric(n), dim_h: n, root_order: 1, elements, degrees: (2..=n).collect() };
    Ok(finish(sk, |_| {
        Partition::all(n)
            .into_iter()
            .map(|p| {
                let sn = symmetric::seminormal(&p);
                let gens = sn.generators.iter().map(symmetric::to_cyclotomic).collect();
                Irrep::from_generators(IrrepLabel::Partition(p), sn.norms, gens, &words)
            })
            .collect()
    }))
}

pub fn build_cyclic(m: usize) -> Result<ReflectionGroup, GroupError> {
    if !(2..=12).contains(&m) {
        return Err(GroupError::OutOfRange("cyclic group needs 2 <= m <= 12".into()));
    }
    let l = m as u32;
    // g^j acts on the coordinate x by zeta_m^j
    let elements: Vec<MonomialMatrix> = (0..m).map(|j| MonomialMatrix { perm: vec![0], roots: vec![j as u32] }).collect();
    let sk = Skeleton { kind: GroupKind::Cyclic(m), dim_h: 1, root_order: l, elements, degrees: vec![m] };
    Ok(finish(sk, |_| {
        (0..m)
            .map(|k| {
                let all = (0..m)
                    .map(|j| Matrix::from_rows(vec![vec![Cyclotomic::root(l, (j * k) as i64)]]))
                    .collect();
                Irrep::from_all(IrrepLabel::Character(k), vec![Rational::one()], all)
            })
            .collect()
    }))
}

/// Elements r^k (k < n) then s r^k, with r acting on h* by diag(zeta, zeta^-1)
/// and s swapping the two coordinates.
fn dihedral_elements(n: usize) -> Vec<MonomialMatrix> {
    let l = n as u32;
    let mut v = Vec::with_capacity(2 * n);
    for k in 0..n as u32 {
        v.push(MonomialMatrix { perm: vec![0, 1], roots: vec![k % l, (l - k % l) % l] });
    }
    for k in 0..n as u32 {
        // s r^k: x1 -> zeta^k x2, x2 -> zeta^-k x1
        v.push(MonomialMatrix { perm: vec![1, 0], roots: vec![k % l, (l - k % l) % l] });
    }
    v
}

fn two_dim(n: usize, l_index: usize) -> Vec<Matrix<Cyclotomic>> {
    let l = n as u32;
    let z = |e: i64| Cyclotomic::root(l, e);
    let zero = Cyclotomic::zero;
    let mut all = Vec::with_capacity(2 * n);
    for k in 0..n as i64 {
        let e = k * l_index as i64;
        all.push(Matrix::from_rows(vec![vec![z(e), zero()], vec![zero(), z(-e)]]));
    }
    for k in 0..n as i64 {
        let e = k * l_index as i64;
        // s * diag(z^e, z^-e)
        all.push(Matrix::from_rows(vec![vec![zero(), z(-e)], vec![z(e), zero()]]));
    }
    all
}

fn one_dim(n: usize, rot: i64, refl: i64) -> Vec<Matrix<Cyclotomic>> {
    let mut all = Vec::with_capacity(2 * n);
    for k in 0..n as u32 {
        all.push(Matrix::from_rows(vec![vec![Cyclotomic::from_int(rot.pow(k))]]));
    }
    for k in 0..n as u32 {
        all.push(Matrix::from_rows(vec![vec![Cyclotomic::from_int(refl * rot.pow(k))]]));
    }
    all
}

pub fn build_dihedral_odd(d: usize) -> Result<ReflectionGroup, GroupError> {
    if d < 1 || 2 * (2 * d + 1) > 48 {
        return Err(GroupError::OutOfRange("odd dihedral group needs d >= 1 and order <= 48".into()));
    }
    let n = 2 * d + 1;
    let sk = Skeleton { kind: GroupKind::DihedralOdd(d), dim_h: 2, root_order: n as u32, elements: dihedral_elements(n), degrees: vec![2, n] };
    Ok(finish(sk, |_| {
        let mut v = vec![
            Irrep::from_all(IrrepLabel::Triv, vec![Rational::one()], one_dim(n, 1, 1)),
            Irrep::from_all(IrrepLabel::Sign, vec![Rational::one()], one_dim(n, 1, -1)),
        ];
        for l in 1..=d {
            v.push(Irrep::from_all(IrrepLabel::Tau(l), vec![Rational::one(); 2], two_dim(n, l)));
        }
        v
    }))
}

pub fn build_dihedral_even(d: usize) -> Result<ReflectionGroup, GroupError> {
    if d < 2 || 4 * d > 48 {
        return Err(GroupError::OutOfRange("even dihedral group needs d >= 2 and order <= 48".into()));
    }
    let n = 2 * d;
    let sk = Skeleton { kind: GroupKind::DihedralEven(d), dim_h: 2, root_order: n as u32, elements: dihedral_elements(n), degrees: vec![2, n] };
    let mut g = finish(sk, |_| {
        let mut v = vec![
            Irrep::from_all(IrrepLabel::Triv, vec![Rational::one()], one_dim(n, 1, 1)),
            Irrep::from_all(IrrepLabel::Sign, vec![Rational::one()], one_dim(n, 1, -1)),
            // eps1: s -> -1, s r -> 1, so r -> -1
            Irrep::from_all(IrrepLabel::Eps1, vec![Rational::one()], one_dim(n, -1, -1)),
            // eps2: s -> 1, s r -> -1
            Irrep::from_all(IrrepLabel::Eps2, vec![Rational::one()], one_dim(n, -1, 1)),
        ];
        for l in 1..d {
            v.push(Irrep::from_all(IrrepLabel::Tau(l), vec![Rational::one(); 2], two_dim(n, l)));
        }
        v
    });
    // class 0 must contain s_1 = s (element n), class 1 contains s_2 = s r
    let s1 = n;
    let c_s1 = g.reflections.iter().find(|r| r.element == s1).unwrap().class;
    if c_s1 != 0 {
        g.reflection_classes.swap(0, 1);
        for r in g.reflections.iter_mut() {
            r.class = 1 - r.class;
        }
    }
    Ok(g)
}

/// Isotypic projectors P = (dim/|W|) sum_w conj(chi(w)) rep(w) for a representation
/// given by matrices in element order; checks multiplicativity on sampled pairs.
pub fn isotypic_projectors(g: &ReflectionGroup, rep: &[Matrix<Cyclotomic>]) -> Result<Vec<(usize, Matrix<Cyclotomic>)>, GroupError> {
    if rep.len() != g.order() {
        return Err(GroupError::NotARepresentation);
    }
    let n = g.order();
    let step = (n / 17).max(1);
    for a in (0..n).step_by(step) {
        for b in (0..n).step_by(step) {
            if rep[a].mul(&rep[b]) != rep[g.mul(a, b)] {
                return Err(GroupError::NotARepresentation);
            }
        }
    }
    let dim = rep[0].rows;
    let mut out = Vec::new();
    for (k, irr) in g.irreps.iter().enumerate() {
        let mut p = Matrix::filled(dim, dim, Cyclotomic::zero());
        for w in 0..n {
            let chi = irr.character(w).conj();
            if chi.is_zero() {
                continue;
            }
            for (x, y) in p.data.iter_mut().zip(&rep[w].data) {
                if !y.is_zero() {
                    *x = &*x + &(y * &chi);
                }
            }
        }
        let f = Rational::from_integer(irr.dim.into()) / Rational::from_integer(n.into());
        let p = p.map(|x| x.scale(&f));
        if !p.is_zero() {
            out.push((k, p));
        }
    }
    Ok(out)
}

/// Tensor (Kronecker) product of two representations.
pub fn tensor_rep(a: &[Matrix<Cyclotomic>], b: &[Matrix<Cyclotomic>]) -> Vec<Matrix<Cyclotomic>> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let (p, q) = (x.rows, y.rows);
            let mut m = Matrix::filled(p * q, p * q, Cyclotomic::zero());
            for i in 0..p {
                for j in 0..p {
                    let xij = x.get(i, j);
                    if xij.is_zero() {
                        continue;
                    }
                    for k in 0..q {
                        for l in 0..q {
                            let ykl = y.get(k, l);
                            if !ykl.is_zero() {
                                m.set(i * q + k, j * q + l, xij * ykl);
                            }
                        }
                    }
                }
            }
            m
        })
        .collect()
}

/// Matrices of all elements acting on h* (x coordinates).
pub fn hstar_rep(g: &ReflectionGroup) -> Vec<Matrix<Cyclotomic>> {
    (0..g.order()).map(|w| g.matrix_hstar(w)).collect()
}

/// Inner product of characters (1/|W|) sum chi_a(w) conj(chi_b(w)).
pub fn character_inner(g: &ReflectionGroup, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
    let s = a.iter().zip(b).fold(Cyclotomic::zero(), |acc, (x, y)| &acc + &(x * &y.conj()));
    s.scale(&(Rational::one() / Rational::from_integer(g.order().into())))
}
