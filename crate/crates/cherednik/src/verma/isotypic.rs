//! Type A engine on isotypic multiplicity spaces.
//!
//! For S_n on C^n every graded piece splits as the orthogonal sum of
//! p1^j K_{m-j}, where p1 = x_1 + ... + x_n and K = ker(y_1 + ... + y_n).
//! Since beta(p1^j u, p1^j u') = j! n^j beta(u, u'), positivity only has to be
//! checked on K. Each W-type sigma of K_m carries a multiplicity Gram
//! G_sigma(m), obtained from lower degrees through
//! m beta(u, u') = sum_i beta(d_i u, y_i u') and the branching S_{n-1} < S_n.
//! Copies are tracked by their value on the first seminormal vector e_R.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use super::smallq::Q;
use super::VermaError;
use crate::groups::symmetric::{seminormal, standard_tableaux, Partition, Seminormal, Syt};
use crate::groups::{GroupKind, IrrepLabel, MonomialMatrix, ReflectionGroup};
use crate::linalg::{nullspace, Matrix};
use crate::scalars::rational::factorial;
use crate::scalars::{Cyclotomic, Rational, Scalar};

use super::GradedPiece;

pub const MAX_ISOTYPIC_N: usize = 6;

/// (exponent vector, index in the seminormal basis of tau)
pub type Key = (Vec<u32>, usize);
pub type SVec = BTreeMap<Key, Rational>;

/// Exponents padded to MAX_ISOTYPIC_N; the order matches that of `Key`.
type Mono = [u8; MAX_ISOTYPIC_N];
type IKey = (Mono, u8);
type QVec = BTreeMap<IKey, Q>;

fn export(v: &QVec, n: usize) -> SVec {
    v.iter().map(|((mu, t), q)| ((mu[..n].iter().map(|&e| e as u32).collect(), *t as usize), q.to_rational())).collect()
}

fn import(v: &SVec) -> QVec {
    v.iter()
        .map(|((mu, t), q)| {
            let mut m = [0u8; MAX_ISOTYPIC_N];
            for (a, &e) in m.iter_mut().zip(mu) {
                *a = u8::try_from(e).expect("exponent beyond the engine range");
            }
            ((m, *t as u8), Q::from_rational(q))
        })
        .collect()
}

fn add_to(dst: &mut QVec, k: IKey, q: Q) {
    if q.is_zero() {
        return;
    }
    match dst.entry(k) {
        Entry::Vacant(e) => {
            e.insert(q);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += &q;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn axpy(dst: &mut QVec, q: &Q, src: &QVec) {
    if q.is_zero() {
        return;
    }
    for (k, v) in src {
        add_to(dst, *k, q * v);
    }
}

fn scaled(v: &QVec, q: &Q) -> QVec {
    v.iter().map(|(k, x)| (*k, x * q)).collect()
}

fn lift<S: Scalar>(one: &S, q: &Rational) -> S {
    one.mul_cyclo(&Cyclotomic::from_rational(q.clone()))
}

fn qint(v: impl TryInto<i64>) -> Q {
    Q::int(v.try_into().ok().expect("small integer"))
}

type Dense = Vec<Vec<Q>>;

/// Polynomial in c with small-rational coefficients, lowest degree first.
#[derive(Clone, Debug, Default, PartialEq)]
struct QPoly(Vec<Q>);

impl QPoly {
    fn constant(q: Q) -> QPoly {
        QPoly(vec![q])
    }

    /// self += q * c^shift * o
    fn add_scaled(&mut self, q: &Q, o: &QPoly, shift: usize) {
        if q.is_zero() {
            return;
        }
        if self.0.len() < o.0.len() + shift {
            self.0.resize(o.0.len() + shift, Q::zero());
        }
        for (i, x) in o.0.iter().enumerate() {
            if !x.is_zero() {
                self.0[i + shift] += &(q * x);
            }
        }
    }

    fn to_scalar<S: Scalar>(&self, one: &S, cpow: &mut Vec<S>, c: &S) -> S {
        let mut acc = one.zero_like();
        for (i, q) in self.0.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            while cpow.len() <= i {
                let next = cpow.last().map_or_else(|| one.clone(), |p| p.times(c));
                cpow.push(next);
            }
            acc = acc.plus(&lift(&cpow[i], &q.to_rational()));
        }
        acc
    }
}

struct Removal {
    /// index of the smaller shape among partitions of n-1
    sub: usize,
    /// tableau R_sub with n added
    t: usize,
    /// generator moves (k, from, to) leading from tableau 0 to t
    path: Vec<(usize, usize, usize)>,
}

struct Shape {
    sn: Seminormal,
    dim: usize,
    /// rho(g)[0][0] for every g, and the same scaled to integers when that fits
    corner: Vec<Q>,
    corner_int: Option<Vec<i64>>,
    chars: Vec<Q>,
    removals: Vec<Removal>,
}

struct Reader {
    /// (shape, first index, count) for each block of coordinates
    blocks: Vec<(usize, usize, usize)>,
    pivots: Vec<IKey>,
    transform: Vec<Vec<Q>>,
    size: usize,
}

impl Reader {
    fn len(&self) -> usize {
        self.size
    }

    fn read(&self, v: &QVec) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.size];
        for (p, t) in self.pivots.iter().zip(&self.transform) {
            if let Some(q) = v.get(p) {
                for (x, y) in out.iter_mut().zip(t) {
                    if !y.is_zero() {
                        *x += &(q * y);
                    }
                }
            }
        }
        out
    }
}

struct Degree<S> {
    rspace: Vec<Vec<QVec>>,
    rpivots: Vec<Vec<IKey>>,
    kcopies: Vec<Vec<QVec>>,
    /// the Grams as polynomials in c, and substituted into S
    qgrams: Vec<Vec<Vec<QPoly>>>,
    grams: Vec<Matrix<S>>,
}

/// Multiplicity-space engine for S_n, generic over the scalar carrying c.
pub struct TypeA<'a, S: Scalar> {
    pub group: &'a ReflectionGroup,
    pub tau: usize,
    n: usize,
    c: S,
    one: S,
    shapes: Vec<Shape>,
    tmats: Vec<Dense>,
    /// tau matrices times a common denominator, row-major
    tmats_int: Option<Vec<Vec<i64>>>,
    /// permutation of each group element
    perms: Vec<Vec<usize>>,
    gens: Vec<usize>,
    transp: Vec<Vec<usize>>,
    degrees: Vec<Degree<S>>,
    readers: HashMap<(usize, usize), Reader>,
}

fn perm_element(g: &ReflectionGroup, n: usize, a: usize, b: usize) -> usize {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(a, b);
    g.index_of(&MonomialMatrix { perm, roots: vec![0; n] }).expect("transposition in S_n")
}

fn path_from_root(sn: &Seminormal, target: usize) -> Vec<(usize, usize, usize)> {
    let d = sn.tableaux.len();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; d];
    let mut seen = vec![false; d];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for k in 0..sn.generators.len() {
            if let Some(u) = sn.tableaux[i].swap(k) {
                let j = sn.index[&u];
                if !seen[j] {
                    seen[j] = true;
                    parent[j] = Some((k, i));
                    queue.push_back(j);
                }
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = target;
    while let Some((k, from)) = parent[cur] {
        path.push((k, from, cur));
        cur = from;
    }
    path.reverse();
    path
}

/// Partitions of m into at most n parts, padded with zeros.
fn padded_partitions(m: usize, n: usize) -> Vec<Vec<u8>> {
    fn rec(m: usize, max: usize, slots: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if m == 0 {
            let mut v = cur.clone();
            v.resize(cur.len() + slots, 0);
            out.push(v);
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=max.min(m)).rev() {
            cur.push(p as u8);
            rec(m - p, p, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, n, &mut Vec::new(), &mut out);
    out
}

/// Distinct rearrangements of a multiset, padded to Mono.
fn rearrangements(lambda: &[u8]) -> Vec<Mono> {
    let mut v = lambda.to_vec();
    v.sort_unstable();
    let pad = |v: &[u8]| {
        let mut m = [0u8; MAX_ISOTYPIC_N];
        m[..v.len()].copy_from_slice(v);
        m
    };
    let mut out = vec![pad(&v)];
    // next permutation in lexicographic order
    loop {
        let n = v.len();
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| v[i] < v[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| v[j] > v[i]).unwrap();
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(pad(&v));
    }
    out
}

impl<'a, S: Scalar> TypeA<'a, S> {
    /// `c` is the reflection parameter; `one` its unit.
    pub fn new(group: &'a ReflectionGroup, tau: usize, c: S) -> Result<Self, VermaError> {
        let n = match group.kind {
            GroupKind::Symmetric(n) if n <= MAX_ISOTYPIC_N => n,
            _ => return Err(VermaError::Unsupported(format!("isotypic engine needs S_n with n <= {}", MAX_ISOTYPIC_N))),
        };
        let one = c.one_like();
        let gens: Vec<usize> = (0..n - 1).map(|k| perm_element(group, n, k, k + 1)).collect();
        let mut transp = vec![vec![usize::MAX; n]; n];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    transp[a][b] = perm_element(group, n, a, b);
                }
            }
        }
        let subs = Partition::all(n - 1);
        let tree = spanning_tree(group, &gens);
        let mut shapes = Vec::new();
        let mut tmats = Vec::new();
        for (idx, irrep) in group.irreps.iter().enumerate() {
            let IrrepLabel::Partition(p) = &irrep.label else { unreachable!() };
            let sn = seminormal(p);
            let dim = sn.tableaux.len();
            let gq = gen_matrices(&sn);
            let corner: Vec<Q> = first_columns(&tree, &gq).into_iter().map(|v| v[0].clone()).collect();
            let corner_int = to_integers(corner.iter());
            let chars = class_characters(group, &tree, &gq);
            if idx == tau {
                tmats = all_matrices(&tree, &gq);
            }
            let mut removals = Vec::new();
            for r in p.removable_rows() {
                let small = p.remove_from_row(r);
                let sub = subs.iter().position(|q| *q == small).unwrap();
                let mut cells = standard_tableaux(&small).swap_remove(0).cells;
                cells.push((r, p.0[r] - 1));
                let t = sn.index[&Syt { cells }];
                let path = path_from_root(&sn, t);
                removals.push(Removal { sub, t, path });
            }
            shapes.push(Shape { sn, dim, corner, corner_int, chars, removals });
        }
        let tmats_int = to_integers(tmats.iter().flatten().flatten()).map(|flat| {
            let d2 = shapes[tau].dim * shapes[tau].dim;
            flat.chunks(d2).map(|c| c.to_vec()).collect()
        });
        let perms = group.elements.iter().map(|el| el.perm.clone()).collect();
        Ok(TypeA {
            group,
            tau,
            n,
            c,
            one,
            shapes,
            tmats,
            tmats_int,
            perms,
            gens,
            transp,
            degrees: Vec::new(),
            readers: HashMap::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_shapes(&self) -> usize {
        self.shapes.len()
    }

    pub fn shape_dim(&self, sigma: usize) -> usize {
        self.shapes[sigma].dim
    }

    fn tau_mats(&self) -> &[Dense] {
        &self.tmats
    }

    fn permute(&self, g: usize, mu: &Mono) -> Mono {
        let mut nu = [0u8; MAX_ISOTYPIC_N];
        for (k, &p) in self.perms[g].iter().enumerate() {
            nu[p] = mu[k];
        }
        nu
    }

    fn act(&self, g: usize, v: &QVec) -> QVec {
        let mats = &self.tau_mats()[g];
        let mut out = QVec::new();
        for ((mu, t), q) in v {
            let nu = self.permute(g, mu);
            for (s, row) in mats.iter().enumerate() {
                let e = &row[*t as usize];
                if !e.is_zero() {
                    add_to(&mut out, (nu, s as u8), q * e);
                }
            }
        }
        out
    }

    fn deriv(&self, v: &QVec, i: usize) -> QVec {
        let mut out = QVec::new();
        for ((mu, t), q) in v {
            if mu[i] > 0 {
                let mut nu = *mu;
                nu[i] -= 1;
                add_to(&mut out, (nu, *t), q * &Q::int(mu[i] as i64));
            }
        }
        out
    }

    fn dsum(&self, v: &QVec) -> QVec {
        let mut out = QVec::new();
        for ((mu, t), q) in v {
            for i in 0..self.n {
                if mu[i] > 0 {
                    let mut nu = *mu;
                    nu[i] -= 1;
                    add_to(&mut out, (nu, *t), q * &Q::int(mu[i] as i64));
                }
            }
        }
        out
    }

    fn p1(&self, v: &QVec) -> QVec {
        let mut out = QVec::new();
        for ((mu, t), q) in v {
            for i in 0..self.n {
                let mut nu = *mu;
                nu[i] = nu[i].checked_add(1).expect("exponent beyond the engine range");
                add_to(&mut out, (nu, *t), q.clone());
            }
        }
        out
    }

    /// Coefficient of c in y_i: minus the sum over j of the divided difference
    /// (f - s_ij f)/(x_i - x_j) tensored with s_ij on tau.
    fn dunkl_tail(&self, v: &QVec, i: usize) -> QVec {
        // collect the divided differences per transposition, then act on tau once
        let mut per_j: Vec<HashMap<IKey, Q>> = vec![HashMap::new(); self.n];
        for ((mu, t), q) in v {
            for j in 0..self.n {
                if j == i || mu[i] == mu[j] {
                    continue;
                }
                let (a, b) = (mu[i], mu[j]);
                let acc = &mut per_j[j];
                let sign = if a > b { -q } else { q.clone() };
                for k in 0..a.abs_diff(b) {
                    let mut nu = *mu;
                    // a > b: x_i^(a-1-k) x_j^(b+k); a < b: x_i^(a+k) x_j^(b-1-k)
                    if a > b {
                        nu[i] = a - 1 - k;
                        nu[j] = b + k;
                    } else {
                        nu[i] = a + k;
                        nu[j] = b - 1 - k;
                    }
                    *acc.entry((nu, *t)).or_insert_with(Q::zero) += &sign;
                }
            }
        }
        let mut out = QVec::new();
        for (j, acc) in per_j.into_iter().enumerate() {
            if acc.is_empty() {
                continue;
            }
            let m = &self.tau_mats()[self.transp[i][j]];
            for ((nu, t), coef) in acc {
                if coef.is_zero() {
                    continue;
                }
                for (s, row) in m.iter().enumerate() {
                    let e = &row[t as usize];
                    if !e.is_zero() {
                        add_to(&mut out, (nu, s as u8), &coef * e);
                    }
                }
            }
        }
        out
    }

    fn transport(&self, sigma: usize, path: &[(usize, usize, usize)], v: &QVec) -> QVec {
        let sn = &self.shapes[sigma].sn;
        let mut cur = v.clone();
        for &(k, from, to) in path {
            let g = &sn.generators[k];
            let mut next = self.act(self.gens[k], &cur);
            axpy(&mut next, &-Q::from_rational(g.get(from, from)), &cur);
            cur = scaled(&next, &Q::from_rational(g.get(to, from)).recip());
        }
        cur
    }

    /// Value of E_RR on x^mu (x) e_t, up to a nonzero scalar.
    fn project_ref(&self, sigma: usize, mu: &Mono, t: usize) -> QVec {
        if let (Some(ci), Some(ti)) = (&self.shapes[sigma].corner_int, &self.tmats_int) {
            let d = self.shapes[self.tau].dim;
            let mut acc: HashMap<IKey, i128> = HashMap::new();
            for g in 0..self.perms.len() {
                let coef = ci[g] as i128;
                if coef == 0 {
                    continue;
                }
                let nu = self.permute(g, mu);
                for s in 0..d {
                    let a = ti[g][s * d + t];
                    if a != 0 {
                        *acc.entry((nu, s as u8)).or_insert(0) += coef * a as i128;
                    }
                }
            }
            // rescale by the content so the entries stay small
            let g = acc.values().fold(0u128, |g, v| num_integer::gcd(g, v.unsigned_abs()));
            return acc
                .into_iter()
                .filter(|(_, v)| *v != 0)
                .map(|(k, v)| (k, Q::int(i64::try_from(v / g as i128).expect("projection entry"))))
                .collect();
        }
        let mut out = QVec::new();
        let corner = &self.shapes[sigma].corner;
        let tm = self.tau_mats();
        for (g, coef) in corner.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            let nu = self.permute(g, mu);
            for (s, row) in tm[g].iter().enumerate() {
                if !row[t].is_zero() {
                    add_to(&mut out, (nu, s as u8), coef * &row[t]);
                }
            }
        }
        out
    }

    pub fn ensure(&mut self, m: usize) {
        assert!(m < u8::MAX as usize, "degree beyond the engine range");
        while self.degrees.len() <= m {
            let d = self.degrees.len();
            let deg = self.build_degree(d);
            self.degrees.push(deg);
            self.compute_grams(d);
        }
    }

    fn build_degree(&self, m: usize) -> Degree<S> {
        let ns = self.shapes.len();
        let order = qint(self.group.order());
        let chars: Vec<Vec<Q>> =
            self.shapes.iter().map(|s| self.group.class_of.iter().map(|&k| s.chars[k].clone()).collect()).collect();
        let mut rspace = vec![Vec::new(); ns];
        let mut rpivots = vec![Vec::new(); ns];
        for lambda in padded_partitions(m, self.n) {
            let orbit = rearrangements(&lambda);
            let fix: Vec<i64> =
                (0..self.perms.len()).map(|g| orbit.iter().filter(|mu| self.permute(g, mu) == **mu).count() as i64).collect();
            for sigma in 0..ns {
                let mult = fix
                    .iter()
                    .enumerate()
                    .fold(Q::zero(), |a, (g, &f)| &a + &(&(&Q::int(f) * &chars[self.tau][g]) * &chars[sigma][g]));
                let mult = &mult / &order;
                assert!(mult.is_integer());
                let mult = match mult {
                    Q::Small(v, _) if v > 0 => v as usize,
                    _ => 0,
                };
                if mult == 0 {
                    continue;
                }
                let mut basis: Vec<QVec> = Vec::new();
                let mut piv: Vec<IKey> = Vec::new();
                'fill: for mu in &orbit {
                    for t in 0..self.shapes[self.tau].dim {
                        let w = self.project_ref(sigma, mu, t);
                        insert_reduced(&mut basis, &mut piv, w);
                        if basis.len() == mult {
                            break 'fill;
                        }
                    }
                }
                assert_eq!(basis.len(), mult, "reference space smaller than predicted");
                rspace[sigma].extend(basis);
                rpivots[sigma].extend(piv);
            }
        }
        let kcopies: Vec<Vec<QVec>> = (0..ns)
            .map(|sigma| {
                if m == 0 {
                    return rspace[sigma].clone();
                }
                let prev = &self.degrees[m - 1];
                let cols = rspace[sigma].len();
                if cols == 0 {
                    return Vec::new();
                }
                let rows = prev.rspace[sigma].len();
                let mut dm = Matrix::filled(rows.max(1), cols, Rational::zero());
                for (b, v) in rspace[sigma].iter().enumerate() {
                    let dv = self.dsum(v);
                    for (r, k) in prev.rpivots[sigma].iter().enumerate() {
                        if let Some(q) = dv.get(k) {
                            dm.set(r, b, q.to_rational());
                        }
                    }
                }
                nullspace(&dm, &Rational::zero())
                    .into_iter()
                    .map(|z| {
                        let mut v = QVec::new();
                        for (q, b) in z.iter().zip(&rspace[sigma]) {
                            axpy(&mut v, &Q::from_rational(q), b);
                        }
                        v
                    })
                    .collect()
            })
            .collect();
        Degree { rspace, rpivots, kcopies, qgrams: Vec::new(), grams: Vec::new() }
    }

    fn reader(&mut self, d: usize, sub: usize) -> &Reader {
        if !self.readers.contains_key(&(d, sub)) {
            let mut blocks = Vec::new();
            let mut vectors = Vec::new();
            for (sigma, sh) in self.shapes.iter().enumerate() {
                for rem in sh.removals.iter().filter(|r| r.sub == sub) {
                    let start = vectors.len();
                    for v in &self.degrees[d].kcopies[sigma] {
                        vectors.push(self.transport(sigma, &rem.path, v));
                    }
                    blocks.push((sigma, start, vectors.len() - start));
                }
            }
            let k = vectors.len();
            // sparse elimination, tracking reduced_i = sum_j transform[i][j] vectors[j]
            let mut reduced: Vec<QVec> = Vec::new();
            let mut pivots: Vec<IKey> = Vec::new();
            let mut transform: Vec<Vec<Q>> = Vec::new();
            for (j, v) in vectors.iter().enumerate() {
                let mut w = v.clone();
                let mut t = vec![Q::zero(); k];
                t[j] = Q::one();
                for ((r, p), tr) in reduced.iter().zip(&pivots).zip(&transform) {
                    if let Some(q) = w.get(p).cloned() {
                        axpy(&mut w, &-&q, r);
                        for (x, y) in t.iter_mut().zip(tr) {
                            *x -= &(&q * y);
                        }
                    }
                }
                let (key, lead) = w.iter().next().map(|(a, b)| (*a, b.clone())).expect("dependent copies");
                let inv = lead.recip();
                let w = scaled(&w, &inv);
                let t: Vec<Q> = t.iter().map(|x| x * &inv).collect();
                for (r, tr) in reduced.iter_mut().zip(transform.iter_mut()) {
                    if let Some(q) = r.get(&key).cloned() {
                        axpy(r, &-&q, &w);
                        for (x, y) in tr.iter_mut().zip(&t) {
                            *x -= &(&q * y);
                        }
                    }
                }
                reduced.push(w);
                pivots.push(key);
                transform.push(t);
            }
            let size = vectors.len();
            self.readers.insert((d, sub), Reader { blocks, pivots, transform, size });
        }
        &self.readers[&(d, sub)]
    }

    /// Split v (degree deg) as the sum of p1^k kappa_k with kappa_k in K.
    fn split(&self, v: &QVec, deg: usize) -> Vec<QVec> {
        // D^j v = sum_{k >= j} k!/(k-j)! n^j p1^{k-j} kappa_k, solved from the top
        let nq = Rational::from_integer(self.n.into());
        let mut chain = vec![v.clone()];
        for j in 1..=deg {
            let next = self.dsum(&chain[j - 1]);
            chain.push(next);
        }
        let mut out = vec![QVec::new(); deg + 1];
        // lifted[k2] = p1^{k2-k} kappa_{k2} for the current k
        let mut lifted: Vec<QVec> = vec![QVec::new(); deg + 1];
        for k in (0..=deg).rev() {
            let mut acc = std::mem::take(&mut chain[k]);
            let nk = num_traits::pow(nq.clone(), k);
            for k2 in k + 1..=deg {
                if out[k2].is_empty() {
                    continue;
                }
                lifted[k2] = self.p1(&lifted[k2]);
                let coef = Rational::from_integer(factorial(k2) / factorial(k2 - k)) * &nk;
                axpy(&mut acc, &-Q::from_rational(&coef), &lifted[k2]);
            }
            if acc.is_empty() {
                continue;
            }
            let kappa = scaled(&acc, &Q::from_rational(&(Rational::from_integer(factorial(k)) * &nk).recip()));
            lifted[k] = kappa.clone();
            out[k] = kappa;
        }
        out
    }

    fn coords(&mut self, v: &QVec, deg: usize, sub: usize) -> Vec<Vec<Q>> {
        self.split(v, deg)
            .iter()
            .enumerate()
            .map(|(k, kappa)| {
                let r = self.reader(deg - k, sub);
                if r.len() == 0 {
                    debug_assert!(kappa.is_empty());
                    Vec::new()
                } else {
                    r.read(kappa)
                }
            })
            .collect()
    }

    fn compute_grams(&mut self, m: usize) {
        let ns = self.shapes.len();
        let qgrams: Vec<Vec<Vec<QPoly>>> = if m == 0 {
            (0..ns)
                .map(|s| {
                    let k = self.degrees[0].kcopies[s].len();
                    (0..k).map(|i| (0..k).map(|j| QPoly::constant(if i == j { Q::one() } else { Q::zero() })).collect()).collect()
                })
                .collect()
        } else {
            (0..ns).map(|sigma| self.gram_recursion(m, sigma)).collect()
        };
        let mut cpow = Vec::new();
        let grams = qgrams
            .iter()
            .map(|g| {
                let a = g.len();
                let mut out = Matrix::filled(a, a, self.one.zero_like());
                for (i, row) in g.iter().enumerate() {
                    for (j, p) in row.iter().enumerate() {
                        out.set(i, j, p.to_scalar(&self.one, &mut cpow, &self.c));
                    }
                }
                out
            })
            .collect();
        self.degrees[m].qgrams = qgrams;
        self.degrees[m].grams = grams;
    }

    /// m G(u, u') = sum over removals of the branching terms from degree m - 1.
    fn gram_recursion(&mut self, m: usize, sigma: usize) -> Vec<Vec<QPoly>> {
        let n = self.n;
        let nq = Rational::from_integer(n.into());
        let copies = self.degrees[m].kcopies[sigma].clone();
        let a = copies.len();
        let mut gm = vec![vec![QPoly::default(); a]; a];
        if a == 0 {
            return gm;
        }
        let dsig = Rational::from_integer(self.shapes[sigma].dim.into());
        let pref = &nq / (Rational::from_integer(m.into()) * &dsig);
        let removals: Vec<(usize, usize, Vec<(usize, usize, usize)>)> =
            self.shapes[sigma].removals.iter().map(|r| (r.sub, r.t, r.path.clone())).collect();
        for (sub, t, path) in removals {
            let dsub = Rational::from_integer(standard_tableaux(&Partition::all(n - 1)[sub]).len().into());
            let nt = self.shapes[sigma].sn.norms[t].clone();
            let outer = &pref * dsub / nt;
            let moved: Vec<QVec> = copies.iter().map(|v| self.transport(sigma, &path, v)).collect();
            let u: Vec<Vec<Vec<Q>>> = moved.iter().map(|p| self.coords(&self.deriv(p, n - 1), m - 1, sub)).collect();
            let w: Vec<Vec<Vec<Q>>> = moved.iter().map(|p| self.coords(&self.dunkl_tail(p, n - 1), m - 1, sub)).collect();
            for k in 0..m {
                let d = m - 1 - k;
                let blocks = self.reader(d, sub).blocks.clone();
                let jk = Rational::from_integer(factorial(k)) * num_traits::pow(nq.clone(), k);
                for (sp, start, len) in blocks {
                    if len == 0 {
                        continue;
                    }
                    let tp = self.shapes[sp].removals.iter().find(|r| r.sub == sub).unwrap().t;
                    let scal = Q::from_rational(&(&outer * &jk * &self.shapes[sp].sn.norms[tp]));
                    let x = &self.degrees[d].qgrams[sp];
                    for ia in 0..a {
                        let ua = &u[ia][k];
                        let row: Vec<QPoly> = (0..len)
                            .map(|l| {
                                let mut acc = QPoly::default();
                                for j in 0..len {
                                    acc.add_scaled(&ua[start + j], &x[j][l], 0);
                                }
                                acc
                            })
                            .collect();
                        for ib in 0..a {
                            let ub = &u[ib][k];
                            let wb = &w[ib][k];
                            let mut s0 = QPoly::default();
                            let mut s1 = QPoly::default();
                            for l in 0..len {
                                s0.add_scaled(&ub[start + l], &row[l], 0);
                                s1.add_scaled(&wb[start + l], &row[l], 0);
                            }
                            // the real parameter is its own conjugate
                            gm[ia][ib].add_scaled(&scal, &s0, 0);
                            gm[ia][ib].add_scaled(&scal, &s1, 1);
                        }
                    }
                }
            }
        }
        gm
    }

    /// Multiplicity Gram of sigma on K_m, in the basis of `k_copies`.
    pub fn gram(&mut self, m: usize, sigma: usize) -> &Matrix<S> {
        self.ensure(m);
        &self.degrees[m].grams[sigma]
    }

    /// Values on e_R of the copies of sigma inside K_m.
    pub fn k_copies(&mut self, m: usize, sigma: usize) -> Vec<SVec> {
        self.ensure(m);
        self.copies_at(m, sigma)
    }

    /// Degrees computed so far.
    pub fn computed(&self) -> usize {
        self.degrees.len()
    }

    /// Gram of an already computed degree.
    pub fn gram_at(&self, m: usize, sigma: usize) -> &Matrix<S> {
        &self.degrees[m].grams[sigma]
    }

    pub fn copies_at(&self, m: usize, sigma: usize) -> Vec<SVec> {
        self.degrees[m].kcopies[sigma].iter().map(|v| export(v, self.n)).collect()
    }

    /// Multiplicity of sigma in the whole degree m piece.
    pub fn multiplicity(&mut self, m: usize, sigma: usize) -> usize {
        self.ensure(m);
        self.degrees[m].rspace[sigma].len()
    }

    /// Blocks (j, j! n^j, G_sigma(m-j)) of the multiplicity Gram on the whole
    /// degree m piece, in the basis p1^j (copies of K_{m-j}).
    pub fn full_blocks(&mut self, m: usize, sigma: usize) -> Vec<(usize, Rational, Matrix<S>)> {
        self.ensure(m);
        let nq = Rational::from_integer(self.n.into());
        (0..=m)
            .filter(|&j| !self.degrees[m - j].kcopies[sigma].is_empty())
            .map(|j| {
                let s = Rational::from_integer(factorial(j)) * num_traits::pow(nq.clone(), j);
                (j, s, self.degrees[m - j].grams[sigma].clone())
            })
            .collect()
    }

    /// p1^j applied to a vector.
    pub fn p1_power(&self, v: &SVec, j: usize) -> SVec {
        export(&(0..j).fold(import(v), |acc, _| self.p1(&acc)), self.n)
    }

    pub fn lift(&self, q: &Rational) -> S {
        lift(&self.one, q)
    }
}

fn insert_reduced(basis: &mut Vec<QVec>, piv: &mut Vec<IKey>, mut w: QVec) {
    for (b, p) in basis.iter().zip(piv.iter()) {
        if let Some(q) = w.get(p).cloned() {
            axpy(&mut w, &-q, b);
        }
    }
    let Some((key, lead)) = w.iter().next().map(|(k, q)| (*k, q.clone())) else { return };
    let w = scaled(&w, &lead.recip());
    for b in basis.iter_mut() {
        if let Some(q) = b.get(&key).cloned() {
            axpy(b, &-q, &w);
        }
    }
    basis.push(w);
    piv.push(key);
}

/// BFS tree over the group: parent[j] = (k, i) with j = gens[k] * i, in visiting order.
struct Tree {
    order: Vec<usize>,
    parent: Vec<Option<(usize, usize)>>,
}

fn spanning_tree(group: &ReflectionGroup, gens: &[usize]) -> Tree {
    let mut parent = vec![None; group.order()];
    let mut seen = vec![false; group.order()];
    seen[0] = true;
    let mut order = vec![0usize];
    let mut head = 0;
    while head < order.len() {
        let i = order[head];
        head += 1;
        for (k, &gk) in gens.iter().enumerate() {
            let j = group.mul(gk, i);
            if !seen[j] {
                seen[j] = true;
                parent[j] = Some((k, i));
                order.push(j);
            }
        }
    }
    assert_eq!(order.len(), group.order(), "generators span the group");
    Tree { order, parent }
}

/// Nonzero entries (row, column, value) of each seminormal generator.
struct SparseGens {
    d: usize,
    mats: Vec<Vec<(usize, usize, Q)>>,
}

fn gen_matrices(sn: &Seminormal) -> SparseGens {
    let d = sn.tableaux.len();
    let mats = sn
        .generators
        .iter()
        .map(|g| {
            let mut out = Vec::new();
            for r in 0..d {
                for l in 0..d {
                    if !g.get(r, l).is_zero() {
                        out.push((r, l, Q::from_rational(g.get(r, l))));
                    }
                }
            }
            out
        })
        .collect();
    SparseGens { d, mats }
}

fn apply_gen(gens: &SparseGens, k: usize, v: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(); v.len()];
    for (r, l, a) in &gens.mats[k] {
        if !v[*l].is_zero() {
            out[*r] += &(a * &v[*l]);
        }
    }
    out
}

/// rho(g) e_0 for every g.
fn first_columns(tree: &Tree, gens: &SparseGens) -> Vec<Vec<Q>> {
    let mut cols: Vec<Vec<Q>> = vec![Vec::new(); tree.parent.len()];
    let mut e0 = vec![Q::zero(); gens.d];
    e0[0] = Q::one();
    cols[0] = e0;
    for &j in &tree.order[1..] {
        let (k, i) = tree.parent[j].unwrap();
        cols[j] = apply_gen(gens, k, &cols[i]);
    }
    cols
}

/// Character values on the conjugacy classes, from one word per class.
fn class_characters(group: &ReflectionGroup, tree: &Tree, gens: &SparseGens) -> Vec<Q> {
    let d = gens.d;
    group
        .classes
        .iter()
        .map(|cl| {
            let mut word = Vec::new();
            let mut cur = cl[0];
            while let Some((k, i)) = tree.parent[cur] {
                word.push(k);
                cur = i;
            }
            (0..d).fold(Q::zero(), |acc, j| {
                let mut v = vec![Q::zero(); d];
                v[j] = Q::one();
                for &k in word.iter().rev() {
                    v = apply_gen(gens, k, &v);
                }
                &acc + &v[j]
            })
        })
        .collect()
}

fn all_matrices(tree: &Tree, gens: &SparseGens) -> Vec<Dense> {
    let d = gens.d;
    let mut mats: Vec<Dense> = vec![Vec::new(); tree.parent.len()];
    mats[0] = (0..d).map(|i| (0..d).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect();
    for &j in &tree.order[1..] {
        let (k, i) = tree.parent[j].unwrap();
        let src = &mats[i];
        let mut out = vec![vec![Q::zero(); d]; d];
        for (r, l, a) in &gens.mats[k] {
            for (c, x) in out[*r].iter_mut().enumerate() {
                if !src[*l][c].is_zero() {
                    *x += &(a * &src[*l][c]);
                }
            }
        }
        mats[j] = out;
    }
    mats
}

/// Common-denominator integer images, if all stay below 2^40 so that sums of
/// group-many products cannot overflow i128.
fn to_integers<'r>(xs: impl Iterator<Item = &'r Q> + Clone) -> Option<Vec<i64>> {
    let mut den: i128 = 1;
    for x in xs.clone() {
        let Q::Small(_, b) = x else { return None };
        den = num_integer::lcm(den, *b as i128);
        if den > 1 << 40 {
            return None;
        }
    }
    xs.map(|x| match x {
        Q::Small(a, b) => {
            let v = *a as i128 * (den / *b as i128);
            (v.abs() < 1 << 40).then_some(v as i64)
        }
        Q::Big(_) => None,
    })
    .collect()
}

/// Dense coordinates of a sparse vector in a generic graded piece.
pub fn to_dense(v: &SVec, piece: &GradedPiece) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); piece.dim()];
    for ((mu, t), q) in v {
        out[piece.index(mu, *t)] = q.clone();
    }
    out
}
