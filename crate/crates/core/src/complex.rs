//! Bounded, degreewise finitely generated free chain complexes over the
//! integers, and graded maps between them.
//!
//! Sign conventions:
//! - the hom differential is `D(f) = d_Y ∘ f − (−1)^r f ∘ d_X` for `f` of degree `r`;
//! - the translation `X[n]` has `X[n]_d = X_{d−n}` and differential `(−1)^n d_X`;
//! - `Cone(f)_d = X_{d−1} ⊕ Y_d` with differential `[[−d_X, 0], [f, d_Y]]`;
//! - `Cyl(f)_d = X_d ⊕ Y_d ⊕ X_{d−1}` with the third summand sent to
//!   `−x ⊕ f(x) ⊕ −d_X(x)`.
//!
//! The cylinder's summand order and labels coincide with the canonical
//! resolution object of a 1-simplex, see [`crate::frames`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};

pub type Degree = i64;

pub(crate) fn sign(exp: i64) -> i64 {
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// A bounded chain complex of free abelian groups with labelled bases.
///
/// Only degrees of positive rank are stored, and differentials are stored
/// only when nonzero, so two complexes with the same data compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainComplex {
    name: String,
    ranks: BTreeMap<Degree, usize>,
    diffs: BTreeMap<Degree, IntMatrix>,
    labels: BTreeMap<Degree, Vec<String>>,
}

impl ChainComplex {
    /// Validates shapes, label lists and `d ∘ d = 0`.
    ///
    /// `diffs[d]` is the differential out of degree `d`, a matrix of shape
    /// `rank(d−1) × rank(d)`. Missing labels default to `e0, e1, …`.
    pub fn new(
        name: impl Into<String>,
        ranks: BTreeMap<Degree, usize>,
        diffs: BTreeMap<Degree, IntMatrix>,
        labels: BTreeMap<Degree, Vec<String>>,
    ) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidComplex { name: name.clone(), reason };
        let ranks: BTreeMap<Degree, usize> = ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        let rank = |d: Degree| ranks.get(&d).copied().unwrap_or(0);

        let mut kept = BTreeMap::new();
        for (d, m) in diffs {
            if m.shape() != (rank(d - 1), rank(d)) {
                return Err(invalid(format!(
                    "differential out of degree {d} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    rank(d - 1),
                    rank(d)
                )));
            }
            if !m.is_zero() {
                kept.insert(d, m);
            }
        }

        let mut all_labels = BTreeMap::new();
        for (&d, &r) in &ranks {
            let ls = match labels.get(&d) {
                Some(ls) => {
                    if ls.len() != r {
                        return Err(invalid(format!("degree {d} has {} labels for rank {r}", ls.len())));
                    }
                    let mut sorted = ls.clone();
                    sorted.sort();
                    sorted.dedup();
                    if sorted.len() != r {
                        return Err(invalid(format!("duplicate basis labels in degree {d}")));
                    }
                    ls.clone()
                }
                None => (0..r).map(|i| format!("e{i}")).collect(),
            };
            all_labels.insert(d, ls);
        }
        if let Some(d) = labels.keys().find(|d| !ranks.contains_key(d)) {
            if !labels[d].is_empty() {
                return Err(invalid(format!("labels given for degree {d} of rank 0")));
            }
        }

        let c = ChainComplex { name: name.clone(), ranks, diffs: kept, labels: all_labels };
        if let Some(d) = c.d_squared_violation() {
            return Err(invalid(format!("d∘d ≠ 0 out of degree {d}")));
        }
        Ok(c)
    }

    pub(crate) fn from_parts_unchecked(
        name: String,
        ranks: BTreeMap<Degree, usize>,
        diffs: BTreeMap<Degree, IntMatrix>,
        labels: BTreeMap<Degree, Vec<String>>,
    ) -> Self {
        let ranks: BTreeMap<_, _> = ranks.into_iter().filter(|&(_, r)| r > 0).collect();
        let diffs = diffs.into_iter().filter(|(_, m)| !m.is_zero()).collect();
        ChainComplex { name, ranks, diffs, labels }
    }

    pub fn zero() -> Self {
        ChainComplex { name: "0".into(), ranks: BTreeMap::new(), diffs: BTreeMap::new(), labels: BTreeMap::new() }
    }

    /// `rank` copies of ℤ in a single degree, zero differential.
    pub fn concentrated(name: impl Into<String>, degree: Degree, rank: usize) -> Self {
        let mut ranks = BTreeMap::new();
        ranks.insert(degree, rank);
        Self::new(name, ranks, BTreeMap::new(), BTreeMap::new()).expect("concentrated complex is valid")
    }

    /// ℤ⟨0⟩, the tensor unit.
    pub fn unit() -> Self {
        Self::concentrated("Z", 0, 1)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn rank(&self, d: Degree) -> usize {
        self.ranks.get(&d).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &BTreeMap<Degree, usize> {
        &self.ranks
    }

    pub fn support(&self) -> Vec<Degree> {
        self.ranks.keys().copied().collect()
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Differential out of degree `d`, shape `rank(d−1) × rank(d)`.
    pub fn diff(&self, d: Degree) -> IntMatrix {
        self.diffs.get(&d).cloned().unwrap_or_else(|| IntMatrix::zeros(self.rank(d - 1), self.rank(d)))
    }

    pub fn nonzero_diffs(&self) -> &BTreeMap<Degree, IntMatrix> {
        &self.diffs
    }

    pub fn labels(&self, d: Degree) -> &[String] {
        self.labels.get(&d).map_or(&[], |v| v.as_slice())
    }

    pub fn all_labels(&self) -> &BTreeMap<Degree, Vec<String>> {
        &self.labels
    }

    /// Equality of ranks, labels and differentials, ignoring the name.
    pub fn same_data(&self, other: &ChainComplex) -> bool {
        self.ranks == other.ranks && self.diffs == other.diffs && self.labels == other.labels
    }

    /// First degree `d` with `diff(d−1) · diff(d) ≠ 0`, if any.
    pub fn d_squared_violation(&self) -> Option<Degree> {
        self.diffs.keys().copied().find(|&d| !(&self.diff(d - 1) * &self.diff(d)).is_zero())
    }

    /// Lowest and highest degree of positive rank.
    fn degree_window(&self) -> Option<(Degree, Degree)> {
        Some((*self.ranks.keys().next()?, *self.ranks.keys().next_back()?))
    }
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChainComplex")
            .field("name", &self.name)
            .field("ranks", &self.ranks)
            .field("diffs", &self.diffs)
            .field("labels", &self.labels)
            .finish()
    }
}

/// The translation `X[n]`.
pub fn shift(x: &ChainComplex, n: Degree) -> ChainComplex {
    let s = BigInt::from(sign(n));
    ChainComplex {
        name: x.name.clone(),
        ranks: x.ranks.iter().map(|(&d, &r)| (d + n, r)).collect(),
        diffs: x.diffs.iter().map(|(&d, m)| (d + n, m.scale(&s))).collect(),
        labels: x.labels.iter().map(|(&d, l)| (d + n, l.clone())).collect(),
    }
}

/// A homogeneous map of degree `r`: `X_d → Y_{d+r}` for every `d`.
///
/// Blocks are keyed by source degree; zero blocks are not stored.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMap {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    degree: Degree,
    blocks: BTreeMap<Degree, IntMatrix>,
}

fn same_complex(a: &Arc<ChainComplex>, b: &Arc<ChainComplex>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl GradedMap {
    pub fn new(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        degree: Degree,
        blocks: BTreeMap<Degree, IntMatrix>,
    ) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (d, m) in blocks {
            let want = (target.rank(d + degree), source.rank(d));
            if m.shape() != want {
                return Err(Error::InvalidMap(format!(
                    "block at source degree {d} of map {} → {} has shape {}x{}, expected {}x{}",
                    source.name(),
                    target.name(),
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
            if !m.is_zero() {
                kept.insert(d, m);
            }
        }
        Ok(GradedMap { source, target, degree, blocks: kept })
    }

    pub fn zero(source: Arc<ChainComplex>, target: Arc<ChainComplex>, degree: Degree) -> Self {
        GradedMap { source, target, degree, blocks: BTreeMap::new() }
    }

    pub fn identity(x: Arc<ChainComplex>) -> Self {
        let blocks = x.ranks.iter().map(|(&d, &r)| (d, IntMatrix::identity(r))).collect();
        GradedMap { source: x.clone(), target: x, degree: 0, blocks }
    }

    /// Builds a map from a block function, which is only consulted where
    /// both sides are nonzero.
    pub fn from_fn(
        source: Arc<ChainComplex>,
        target: Arc<ChainComplex>,
        degree: Degree,
        mut f: impl FnMut(Degree) -> IntMatrix,
    ) -> Result<Self> {
        let mut blocks = BTreeMap::new();
        for d in source.support() {
            if target.rank(d + degree) > 0 {
                blocks.insert(d, f(d));
            }
        }
        Self::new(source, target, degree, blocks)
    }

    pub fn source(&self) -> &Arc<ChainComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChainComplex> {
        &self.target
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn blocks(&self) -> &BTreeMap<Degree, IntMatrix> {
        &self.blocks
    }

    /// Block at source degree `d`, shape `rank_target(d+r) × rank_source(d)`.
    pub fn block(&self, d: Degree) -> IntMatrix {
        self.blocks
            .get(&d)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.target.rank(d + self.degree), self.source.rank(d)))
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn with_endpoints(&self, source: Arc<ChainComplex>, target: Arc<ChainComplex>) -> Result<Self> {
        Self::new(source, target, self.degree, self.blocks.clone())
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GradedMap) -> Result<GradedMap> {
        if !same_complex(&first.target, &self.source) {
            return Err(Error::InvalidMap(format!(
                "cannot compose: {} is not {}",
                first.target.name(),
                self.source.name()
            )));
        }
        let mut blocks = BTreeMap::new();
        for (&d, m) in &first.blocks {
            if let Some(n) = self.blocks.get(&(d + first.degree)) {
                blocks.insert(d, n * m);
            }
        }
        Self::new(first.source.clone(), self.target.clone(), first.degree + self.degree, blocks)
    }

    fn check_parallel(&self, other: &GradedMap) -> Result<()> {
        if self.degree != other.degree
            || !same_complex(&self.source, &other.source)
            || !same_complex(&self.target, &other.target)
        {
            return Err(Error::InvalidMap("maps are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedMap) -> Result<GradedMap> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &GradedMap) -> Result<GradedMap> {
        self.combine(other, -1)
    }

    fn combine(&self, other: &GradedMap, coeff: i64) -> Result<GradedMap> {
        self.check_parallel(other)?;
        let mut blocks = self.blocks.clone();
        for (&d, m) in &other.blocks {
            let entry = blocks.entry(d).or_insert_with(|| IntMatrix::zeros(m.rows(), m.cols()));
            entry.add_block(0, 0, m, coeff);
        }
        Self::new(self.source.clone(), self.target.clone(), self.degree, blocks)
    }

    pub fn scale(&self, c: i64) -> GradedMap {
        let c = BigInt::from(c);
        let blocks = self.blocks.iter().map(|(&d, m)| (d, m.scale(&c))).filter(|(_, m)| !m.is_zero()).collect();
        GradedMap { source: self.source.clone(), target: self.target.clone(), degree: self.degree, blocks }
    }

    pub fn neg(&self) -> GradedMap {
        self.scale(-1)
    }

    /// `D(f) = d_Y ∘ f − (−1)^r f ∘ d_X`, of degree `r − 1`.
    pub fn hom_differential(&self) -> GradedMap {
        let r = self.degree;
        let s = sign(r);
        let mut blocks = BTreeMap::new();
        for d in self.source.support() {
            let rows = self.target.rank(d + r - 1);
            if rows == 0 {
                continue;
            }
            let mut m = &self.target.diff(d + r) * &self.block(d);
            let rhs = &self.block(d - 1) * &self.source.diff(d);
            m.add_block(0, 0, &rhs, -s);
            blocks.insert(d, m);
        }
        GradedMap::new(self.source.clone(), self.target.clone(), r - 1, blocks)
            .expect("hom differential has consistent shapes")
    }

    pub fn is_cycle(&self) -> bool {
        self.hom_differential().is_zero()
    }

    pub fn is_chain_map(&self) -> bool {
        self.degree == 0 && self.is_cycle()
    }

    fn require_chain_map(&self, what: &str) -> Result<()> {
        if !self.is_chain_map() {
            return Err(Error::NotAChainMap(format!(
                "{what}: {} → {} of degree {}",
                self.source.name(),
                self.target.name(),
                self.degree
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for GradedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedMap")
            .field("source", &self.source.name())
            .field("target", &self.target.name())
            .field("degree", &self.degree)
            .field("blocks", &self.blocks)
            .finish()
    }
}

/// Free function form of [`GradedMap::hom_differential`].
pub fn hom_differential(f: &GradedMap) -> GradedMap {
    f.hom_differential()
}

/// Mapping cone of a chain map.
pub fn cone(f: &GradedMap) -> Result<ChainComplex> {
    f.require_chain_map("cone")?;
    let (x, y) = (f.source(), f.target());
    let mut ranks = BTreeMap::new();
    let mut labels = BTreeMap::new();
    let lo = x.degree_window().map(|(a, _)| a + 1).into_iter().chain(y.degree_window().map(|(a, _)| a)).min();
    let hi = x.degree_window().map(|(_, b)| b + 1).into_iter().chain(y.degree_window().map(|(_, b)| b)).max();
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return Ok(ChainComplex::zero().with_name(format!("Cone({}→{})", x.name(), y.name())));
    };
    for d in lo..=hi {
        let r = x.rank(d - 1) + y.rank(d);
        ranks.insert(d, r);
        let ls: Vec<String> = x
            .labels(d - 1)
            .iter()
            .map(|l| format!("s:{l}"))
            .chain(y.labels(d).iter().map(|l| format!("t:{l}")))
            .collect();
        labels.insert(d, ls);
    }
    let mut diffs = BTreeMap::new();
    for d in lo..=hi {
        let (xs, ys) = (x.rank(d - 1), y.rank(d));
        let (xt, yt) = (x.rank(d - 2), y.rank(d - 1));
        let mut m = IntMatrix::zeros(xt + yt, xs + ys);
        m.add_block(0, 0, &x.diff(d - 1), -1);
        m.add_block(xt, 0, &f.block(d - 1), 1);
        m.add_block(xt, xs, &y.diff(d), 1);
        diffs.insert(d, m);
    }
    ChainComplex::new(format!("Cone({}→{})", x.name(), y.name()), ranks, diffs, labels)
}

/// Mapping cylinder with its two end inclusions and the projection onto
/// the target end.
#[derive(Debug, Clone)]
pub struct Cylinder {
    pub complex: Arc<ChainComplex>,
    pub in_src: GradedMap,
    pub in_tgt: GradedMap,
    pub proj: GradedMap,
}

pub fn cylinder(f: &GradedMap) -> Result<Cylinder> {
    f.require_chain_map("cylinder")?;
    let (x, y) = (f.source().clone(), f.target().clone());
    let lo = x.degree_window().map(|(a, _)| a).into_iter().chain(y.degree_window().map(|(a, _)| a)).min();
    let hi = x.degree_window().map(|(_, b)| b + 1).into_iter().chain(y.degree_window().map(|(_, b)| b)).max();
    let mut ranks = BTreeMap::new();
    let mut labels = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    if let (Some(lo), Some(hi)) = (lo, hi) {
        for d in lo..=hi {
            ranks.insert(d, x.rank(d) + y.rank(d) + x.rank(d - 1));
            let ls: Vec<String> = x
                .labels(d)
                .iter()
                .map(|l| format!("0:{l}"))
                .chain(y.labels(d).iter().map(|l| format!("1:{l}")))
                .chain(x.labels(d - 1).iter().map(|l| format!("0,1:{l}")))
                .collect();
            labels.insert(d, ls);
        }
        for d in lo..=hi {
            let (a, b, c) = (x.rank(d), y.rank(d), x.rank(d - 1));
            let (a2, b2, c2) = (x.rank(d - 1), y.rank(d - 1), x.rank(d - 2));
            let mut m = IntMatrix::zeros(a2 + b2 + c2, a + b + c);
            m.add_block(0, 0, &x.diff(d), 1);
            m.add_block(a2, a, &y.diff(d), 1);
            m.add_block(0, a + b, &IntMatrix::identity(c), -1);
            m.add_block(a2, a + b, &f.block(d - 1), 1);
            m.add_block(a2 + b2, a + b, &x.diff(d - 1), -1);
            diffs.insert(d, m);
        }
    }
    let complex = Arc::new(ChainComplex::new(format!("Cyl({}→{})", x.name(), y.name()), ranks, diffs, labels)?);

    let in_src = GradedMap::from_fn(x.clone(), complex.clone(), 0, |d| {
        let mut m = IntMatrix::zeros(complex.rank(d), x.rank(d));
        m.set_block(0, 0, &IntMatrix::identity(x.rank(d)));
        m
    })?;
    let in_tgt = GradedMap::from_fn(y.clone(), complex.clone(), 0, |d| {
        let mut m = IntMatrix::zeros(complex.rank(d), y.rank(d));
        m.set_block(x.rank(d), 0, &IntMatrix::identity(y.rank(d)));
        m
    })?;
    let proj = GradedMap::from_fn(complex.clone(), y.clone(), 0, |d| {
        let mut m = IntMatrix::zeros(y.rank(d), complex.rank(d));
        m.set_block(0, 0, &f.block(d));
        m.set_block(0, x.rank(d), &IntMatrix::identity(y.rank(d)));
        m
    })?;
    Ok(Cylinder { complex, in_src, in_tgt, proj })
}

/// One block of the hom complex basis: maps `X_k → Y_{k+n}`, laid out
/// row-major starting at `offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomBlock {
    pub source_degree: Degree,
    pub offset: usize,
    pub rows: usize,
    pub cols: usize,
}

/// Coordinates of `Map(X, Y)_n`.
pub fn hom_layout(x: &ChainComplex, y: &ChainComplex, n: Degree) -> (Vec<HomBlock>, usize) {
    let mut blocks = Vec::new();
    let mut offset = 0;
    for k in x.support() {
        let rows = y.rank(k + n);
        if rows == 0 {
            continue;
        }
        let cols = x.rank(k);
        blocks.push(HomBlock { source_degree: k, offset, rows, cols });
        offset += rows * cols;
    }
    (blocks, offset)
}

/// Coordinates of `f` in the basis of `Map(X, Y)_{|f|}`.
pub fn map_to_vector(f: &GradedMap) -> Vec<BigInt> {
    let (layout, dim) = hom_layout(f.source(), f.target(), f.degree());
    let mut v = vec![BigInt::zero(); dim];
    for b in layout {
        if let Some(m) = f.blocks().get(&b.source_degree) {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    v[b.offset + i * b.cols + j] = m.get(i, j).clone();
                }
            }
        }
    }
    v
}

pub fn vector_to_map(
    x: &Arc<ChainComplex>,
    y: &Arc<ChainComplex>,
    n: Degree,
    v: &[BigInt],
) -> Result<GradedMap> {
    let (layout, dim) = hom_layout(x, y, n);
    if v.len() != dim {
        return Err(Error::DimensionMismatch(format!("vector of length {} for a hom space of rank {dim}", v.len())));
    }
    let mut blocks = BTreeMap::new();
    for b in layout {
        let m = IntMatrix::from_fn(b.rows, b.cols, |i, j| v[b.offset + i * b.cols + j].clone());
        blocks.insert(b.source_degree, m);
    }
    GradedMap::new(x.clone(), y.clone(), n, blocks)
}

/// Matrix of `D : Map(X, Y)_n → Map(X, Y)_{n−1}` in the hom bases.
pub fn hom_differential_matrix(x: &Arc<ChainComplex>, y: &Arc<ChainComplex>, n: Degree) -> IntMatrix {
    let (_, dim_src) = hom_layout(x, y, n);
    let (_, dim_tgt) = hom_layout(x, y, n - 1);
    let mut m = IntMatrix::zeros(dim_tgt, dim_src);
    let mut e = vec![BigInt::zero(); dim_src];
    for j in 0..dim_src {
        e[j] = BigInt::one();
        let f = vector_to_map(x, y, n, &e).expect("basis vector has the right length");
        let col = map_to_vector(&f.hom_differential());
        for (i, c) in col.into_iter().enumerate() {
            m.set(i, j, c);
        }
        e[j] = BigInt::zero();
    }
    m
}

/// The mapping complex `Map(X, Y)` as a chain complex.
///
/// Degree-`n` basis elements are labelled `k:x>y` for the elementary map
/// sending basis element `x` of `X_k` to `y` of `Y_{k+n}`.
pub fn hom_complex(x: &Arc<ChainComplex>, y: &Arc<ChainComplex>) -> ChainComplex {
    let (Some((xl, xh)), Some((yl, yh))) = (x.degree_window(), y.degree_window()) else {
        return ChainComplex::zero().with_name(format!("Map({},{})", x.name(), y.name()));
    };
    let (lo, hi) = (yl - xh, yh - xl);
    let mut ranks = BTreeMap::new();
    let mut labels = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for n in lo..=hi {
        let (layout, dim) = hom_layout(x, y, n);
        ranks.insert(n, dim);
        let mut ls = Vec::with_capacity(dim);
        for b in &layout {
            let k = b.source_degree;
            for yi in y.labels(k + n) {
                for xi in x.labels(k) {
                    ls.push(format!("{k}:{xi}>{yi}"));
                }
            }
        }
        labels.insert(n, ls);
        diffs.insert(n, hom_differential_matrix(x, y, n));
    }
    ChainComplex::new(format!("Map({},{})", x.name(), y.name()), ranks, diffs, labels)
        .expect("hom complex is a valid complex")
}

/// Free rank and torsion coefficients of one homology group.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.betti > 0 {
            parts.push(if self.betti == 1 { "Z".to_string() } else { format!("Z^{}", self.betti) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Nonzero homology groups, by degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologySummary {
    pub groups: BTreeMap<Degree, HomologyGroup>,
}

impl HomologySummary {
    pub fn is_acyclic(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn group(&self, d: Degree) -> HomologyGroup {
        self.groups.get(&d).cloned().unwrap_or_default()
    }

    pub fn betti(&self, d: Degree) -> usize {
        self.group(d).betti
    }

    pub fn torsion(&self, d: Degree) -> Vec<BigInt> {
        self.group(d).torsion
    }
}

pub fn homology(x: &ChainComplex) -> HomologySummary {
    let mut groups = BTreeMap::new();
    for d in x.support() {
        let out = linalg::rank(&x.diff(d));
        let inc = linalg::snf(&x.diff(d + 1));
        let betti = x.rank(d) - out - inc.rank();
        let torsion: Vec<BigInt> = inc.invariant_factors().into_iter().filter(|t| !t.is_one()).collect();
        let g = HomologyGroup { betti, torsion };
        if !g.is_zero() {
            groups.insert(d, g);
        }
    }
    HomologySummary { groups }
}

/// Whether a chain map is a chain homotopy equivalence, decided by
/// acyclicity of its cone.
pub fn is_weak_equivalence(f: &GradedMap) -> Result<bool> {
    Ok(homology(&cone(f)?).is_acyclic())
}

/// A degree `r+1` map `h` with `D(h) = f`, if one exists.
pub fn is_nullhomotopic(f: &GradedMap) -> Result<Option<GradedMap>> {
    let (x, y) = (f.source(), f.target());
    let m = hom_differential_matrix(x, y, f.degree() + 1);
    let b = map_to_vector(f);
    match linalg::solve(&m, &b)? {
        Some(v) => Ok(Some(vector_to_map(x, y, f.degree() + 1, &v)?)),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_term(a: i64) -> Arc<ChainComplex> {
        // ℤ in degree 1 →(·a)→ ℤ in degree 0
        let ranks = BTreeMap::from([(0, 1), (1, 1)]);
        let diffs = BTreeMap::from([(1, IntMatrix::from_i64(&[&[a]]))]);
        Arc::new(ChainComplex::new("T", ranks, diffs, BTreeMap::new()).unwrap())
    }

    fn times(c: i64) -> GradedMap {
        let z = Arc::new(ChainComplex::unit());
        GradedMap::new(z.clone(), z, 0, BTreeMap::from([(0, IntMatrix::from_i64(&[&[c]]))])).unwrap()
    }

    #[test]
    fn rejects_bad_shapes_and_nonzero_square() {
        let ranks = BTreeMap::from([(0, 1), (1, 1)]);
        let diffs = BTreeMap::from([(1, IntMatrix::zeros(2, 1))]);
        assert!(ChainComplex::new("bad", ranks, diffs, BTreeMap::new()).is_err());

        let ranks = BTreeMap::from([(0, 1), (1, 1), (2, 1)]);
        let diffs = BTreeMap::from([(1, IntMatrix::from_i64(&[&[1]])), (2, IntMatrix::from_i64(&[&[1]]))]);
        assert!(ChainComplex::new("bad", ranks, diffs, BTreeMap::new()).is_err());
    }

    #[test]
    fn identity_is_a_cycle() {
        let id = GradedMap::identity(two_term(3));
        assert!(id.hom_differential().is_zero());
    }

    #[test]
    fn hom_differential_by_hand() {
        let x = two_term(2);
        let f = GradedMap::new(x.clone(), x.clone(), 0, BTreeMap::from([(0, IntMatrix::from_i64(&[&[1]]))])).unwrap();
        let df = f.hom_differential();
        assert_eq!(df.degree(), -1);
        // d∘f − f∘d on degree 1: 0 − 1·2
        assert_eq!(df.block(1), IntMatrix::from_i64(&[&[-2]]));
        assert!(df.hom_differential().is_zero());
    }

    #[test]
    fn shift_examples() {
        let x = two_term(5);
        assert_eq!(shift(&x, 0), *x);
        assert_eq!(shift(&shift(&x, 3), -3), *x);
        let z2 = shift(&ChainComplex::unit(), 2);
        assert_eq!(z2.support(), vec![2]);
        assert_eq!(shift(&x, 1).diff(2), IntMatrix::from_i64(&[&[-5]]));
    }

    #[test]
    fn cone_examples() {
        let z = Arc::new(ChainComplex::unit());
        assert!(homology(&cone(&GradedMap::identity(z.clone())).unwrap()).is_acyclic());

        let h = homology(&cone(&times(0)).unwrap());
        assert_eq!(h.betti(0), 1);
        assert_eq!(h.betti(1), 1);

        let h = homology(&cone(&times(2)).unwrap());
        assert_eq!(h.betti(0), 0);
        assert_eq!(h.torsion(0), vec![BigInt::from(2)]);
        assert!(h.group(1).is_zero());
    }

    #[test]
    fn cone_rejects_non_chain_maps() {
        let x = two_term(2);
        let f = GradedMap::new(x.clone(), x, 0, BTreeMap::from([(0, IntMatrix::from_i64(&[&[1]]))])).unwrap();
        assert!(matches!(cone(&f), Err(Error::NotAChainMap(_))));
        assert!(matches!(cylinder(&f), Err(Error::NotAChainMap(_))));
    }

    #[test]
    fn cylinder_examples() {
        let z = Arc::new(ChainComplex::unit());
        let cyl = cylinder(&GradedMap::identity(z)).unwrap();
        assert_eq!(cyl.complex.rank(0), 2);
        assert_eq!(cyl.complex.rank(1), 1);
        assert_eq!(homology(&cyl.complex).betti(0), 1);

        let cyl = cylinder(&times(2)).unwrap();
        let h = homology(&cyl.complex);
        assert_eq!(h.betti(0), 1);
        assert!(h.torsion(0).is_empty());
        assert!(cyl.in_src.is_chain_map() && cyl.in_tgt.is_chain_map() && cyl.proj.is_chain_map());
        assert_eq!(cyl.proj.compose(&cyl.in_tgt).unwrap(), GradedMap::identity(cyl.in_tgt.source().clone()));
        assert!(is_weak_equivalence(&cyl.in_tgt).unwrap());
        assert!(!is_weak_equivalence(&cyl.in_src).unwrap());
    }

    #[test]
    fn hom_complex_examples() {
        let z = Arc::new(ChainComplex::unit());
        let y = two_term(3);
        let h = hom_complex(&z, &y);
        assert_eq!(h.ranks(), y.ranks());
        assert_eq!(h.diff(1), y.diff(1));

        let dual = hom_complex(&y, &z);
        assert_eq!(dual.rank(0), y.rank(0));
        assert_eq!(dual.rank(-1), y.rank(1));
    }

    #[test]
    fn homology_examples() {
        assert_eq!(homology(&ChainComplex::unit()).betti(0), 1);
        assert!(homology(&two_term(1)).is_acyclic());
        assert_eq!(homology(&two_term(4)).torsion(0), vec![BigInt::from(4)]);
    }

    #[test]
    fn weak_equivalence_examples() {
        let z = Arc::new(ChainComplex::unit());
        assert!(is_weak_equivalence(&GradedMap::identity(z)).unwrap());
        assert!(!is_weak_equivalence(&times(2)).unwrap());
    }

    #[test]
    fn nullhomotopy_examples() {
        let z = Arc::new(ChainComplex::unit());
        let h = is_nullhomotopic(&GradedMap::zero(z.clone(), z.clone(), 0)).unwrap().unwrap();
        assert!(h.is_zero());

        let a = two_term(1);
        let id = GradedMap::identity(a);
        let h = is_nullhomotopic(&id).unwrap().expect("acyclic complex is contractible");
        assert_eq!(h.hom_differential(), id);

        assert!(is_nullhomotopic(&times(2)).unwrap().is_none());
    }
}
