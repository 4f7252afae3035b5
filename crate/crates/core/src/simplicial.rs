//! Finite ordinals, the direct category `D[n]`, and the coalgebra `Path(n)`
//! together with its comodules `Cell(α)`.
//!
//! Objects of `D[n]` are order maps `[m] → [n]`; a morphism `φ → ψ` is a
//! strictly increasing `σ` with `φ = ψ ∘ σ`. Cells of `Cell(α)` are keyed by
//! nonempty subsets of the domain of `α`, stored as sorted index lists.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::sign;
use crate::error::{Error, Result};

/// An order-preserving map `[m] → [n]`, written as its value sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderMap {
    values: Vec<usize>,
    n: usize,
}

impl OrderMap {
    pub fn new(values: Vec<usize>, n: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidOrderMap("empty sequence".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidOrderMap(format!("{} is not nondecreasing", join(&values))));
        }
        if let Some(v) = values.iter().find(|&&v| v > n) {
            return Err(Error::InvalidOrderMap(format!("value {v} outside [{n}]")));
        }
        Ok(OrderMap { values, n })
    }

    pub fn identity(n: usize) -> Self {
        OrderMap { values: (0..=n).collect(), n }
    }

    /// Parses `"0,1,2"` as a map into `[n]`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        Self::new(parse_indices(s)?, n)
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `m` for a map `[m] → [n]`.
    pub fn dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn codomain(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn first(&self) -> usize {
        self.values[0]
    }

    pub fn last(&self) -> usize {
        *self.values.last().expect("order maps are nonempty")
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &OrderMap) -> Result<OrderMap> {
        if inner.n != self.dim() {
            return Err(Error::InvalidOrderMap(format!(
                "cannot compose {self} after {inner}: codomain [{}] is not [{}]",
                inner.n,
                self.dim()
            )));
        }
        Ok(OrderMap { values: inner.values.iter().map(|&i| self.values[i]).collect(), n: self.n })
    }

    /// The restriction `α ∘ i_S` to an index subset.
    pub fn restrict(&self, subset: &[usize]) -> OrderMap {
        OrderMap { values: subset.iter().map(|&i| self.values[i]).collect(), n: self.n }
    }

    pub fn concat(&self, tail: &[usize]) -> Result<OrderMap> {
        let mut v = self.values.clone();
        v.extend_from_slice(tail);
        Self::new(v, self.n)
    }
}

impl fmt::Display for OrderMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.values))
    }
}

impl fmt::Debug for OrderMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩→[{}]", join(&self.values), self.n)
    }
}

pub fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_indices(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad index `{p}` in `{s}`"))))
        .collect()
}

/// A morphism `src → tgt` of `D[n]`, given by the strictly increasing
/// index map `sigma` with `src = tgt ∘ sigma`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DMorphism {
    src: OrderMap,
    tgt: OrderMap,
    sigma: Vec<usize>,
}

impl DMorphism {
    pub fn new(src: OrderMap, tgt: OrderMap, sigma: Vec<usize>) -> Result<Self> {
        if sigma.len() != src.values.len() {
            return Err(Error::InvalidOrderMap("injection has the wrong length".into()));
        }
        if sigma.windows(2).any(|w| w[0] >= w[1]) || sigma.iter().any(|&i| i > tgt.dim()) {
            return Err(Error::InvalidOrderMap(format!("{} is not a strictly increasing injection", join(&sigma))));
        }
        if src.n != tgt.n || tgt.restrict(&sigma) != src {
            return Err(Error::InvalidOrderMap(format!("{src} ≠ {tgt} ∘ {}", join(&sigma))));
        }
        Ok(DMorphism { src, tgt, sigma })
    }

    pub fn identity(alpha: OrderMap) -> Self {
        let sigma = (0..alpha.values.len()).collect();
        DMorphism { src: alpha.clone(), tgt: alpha, sigma }
    }

    /// The inclusion of the restriction `tgt ∘ i_S` into `tgt`.
    pub fn inclusion(tgt: &OrderMap, subset: &[usize]) -> Result<Self> {
        Self::new(tgt.restrict(subset), tgt.clone(), subset.to_vec())
    }

    pub fn src(&self) -> &OrderMap {
        &self.src
    }

    pub fn tgt(&self) -> &OrderMap {
        &self.tgt
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &DMorphism) -> Result<DMorphism> {
        if first.tgt != self.src {
            return Err(Error::InvalidOrderMap("morphisms are not composable".into()));
        }
        let sigma = first.sigma.iter().map(|&i| self.sigma[i]).collect();
        DMorphism::new(first.src.clone(), self.tgt.clone(), sigma)
    }
}

/// Weak equivalences of `D[n]` are the injections preserving the last index.
pub fn is_weak_equivalence_d(m: &DMorphism) -> bool {
    *m.sigma.last().expect("nonempty") == m.tgt.dim()
}

/// All order maps `[m] → [n]` with `m ≤ max_dim`, in lexicographic order.
pub fn enumerate_d_objects(n: usize, max_dim: usize) -> Vec<OrderMap> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..=n).map(|v| vec![v]).collect();
    while let Some(seq) = stack.pop() {
        if seq.len() <= max_dim {
            let last = *seq.last().unwrap();
            for v in (last..=n).rev() {
                let mut next = seq.clone();
                next.push(v);
                stack.push(next);
            }
        }
        out.push(OrderMap { values: seq, n });
    }
    out.sort();
    out
}

/// Nonempty subsets of `{0..size-1}`, ordered by size and then
/// lexicographically. This is the canonical summand order of resolutions.
pub fn nonempty_subsets(size: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u64..(1u64 << size))
        .map(|mask| (0..size).filter(|&i| mask & (1 << i) != 0).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Every morphism of `D[n]` with target `tgt`, one per nonempty subset of
/// its domain.
pub fn morphisms_into(tgt: &OrderMap) -> Vec<DMorphism> {
    nonempty_subsets(tgt.values.len())
        .into_iter()
        .map(|s| DMorphism::inclusion(tgt, &s).expect("restrictions are morphisms"))
        .collect()
}

/// Finitely supported integer combination of basis keys.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalChain<K: Ord> {
    terms: BTreeMap<K, BigInt>,
}

impl<K: Ord> Default for FormalChain<K> {
    fn default() -> Self {
        FormalChain { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> FormalChain<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        let mut c = Self::zero();
        c.add_term(key, BigInt::from(1));
        c
    }

    pub fn add_term(&mut self, key: K, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> FormalChain<L>) -> FormalChain<L> {
        let mut out = FormalChain::zero();
        for (k, c) in &self.terms {
            for (l, d) in f(k).terms {
                out.add_term(l, d * c);
            }
        }
        out
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for FormalChain<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(k, v)| (k, v.to_string()))).finish()
    }
}

pub type Seq = Vec<usize>;
pub type PathChain = FormalChain<Seq>;
pub type PathTensor = FormalChain<(Seq, Seq)>;
pub type CellChain = FormalChain<Seq>;
/// Terms `(cell key ⊗ path key)` of the `Cell(α)` coaction.
pub type CellTensor = FormalChain<(Seq, Seq)>;

fn remove_at(v: &[usize], j: usize) -> Seq {
    v.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &x)| x).collect()
}

fn check_path_key(key: &Seq, degree: &mut Option<usize>) -> Result<usize> {
    if key.len() < 2 {
        return Err(Error::Degree(format!("path element ⟨{}⟩ has degree < 1", join(key))));
    }
    if key.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidOrderMap(format!("{} is not nondecreasing", join(key))));
    }
    let k = key.len() - 1;
    match degree {
        Some(d) if *d != k => Err(Error::Degree(format!("mixed degrees {d} and {k}"))),
        _ => {
            *degree = Some(k);
            Ok(k)
        }
    }
}

/// Differential of `Path(n)`: the alternating sum of inner faces.
pub fn path_diff(c: &PathChain) -> Result<PathChain> {
    let mut degree = None;
    for (key, _) in c.terms() {
        check_path_key(key, &mut degree)?;
    }
    Ok(c.map_linear(|key| {
        let k = key.len() - 1;
        let mut out = FormalChain::zero();
        for j in 1..k {
            out.add_term(remove_at(key, j), BigInt::from(sign(j as i64)));
        }
        out
    }))
}

/// Comultiplication of `Path(n)`, splitting a sequence at each inner index
/// into `(suffix ⊗ prefix)`.
pub fn path_comult(c: &PathChain) -> Result<PathTensor> {
    let mut degree = None;
    for (key, _) in c.terms() {
        check_path_key(key, &mut degree)?;
    }
    Ok(c.map_linear(|key| {
        let k = key.len() - 1;
        let mut out = FormalChain::zero();
        for j in 1..k {
            let s = sign((j * (k - j)) as i64);
            out.add_term((key[j..].to_vec(), key[..=j].to_vec()), BigInt::from(s));
        }
        out
    }))
}

fn check_cell_key(alpha: &OrderMap, key: &Seq, degree: &mut Option<usize>) -> Result<usize> {
    let size = alpha.values.len();
    let bad = || Error::InvalidSubset { key: join(key), size };
    if key.is_empty() || key.windows(2).any(|w| w[0] >= w[1]) || key.iter().any(|&i| i >= size) {
        return Err(bad());
    }
    let k = key.len() - 1;
    match degree {
        Some(d) if *d != k => Err(Error::Degree(format!("mixed degrees {d} and {k}"))),
        _ => {
            *degree = Some(k);
            Ok(k)
        }
    }
}

/// Differential of `Cell(α)`: drop each index but the first, with sign `(−1)^j`.
pub fn cell_diff(alpha: &OrderMap, c: &CellChain) -> Result<CellChain> {
    let mut degree = None;
    for (key, _) in c.terms() {
        check_cell_key(alpha, key, &mut degree)?;
    }
    Ok(c.map_linear(|key| {
        let k = key.len() - 1;
        let mut out = FormalChain::zero();
        for j in 1..=k {
            out.add_term(remove_at(key, j), BigInt::from(sign(j as i64)));
        }
        out
    }))
}

/// Coaction `Cell(α) → Cell(α) ⊗ Path(n)`: suffix subset ⊗ image of the prefix.
pub fn cell_comult(alpha: &OrderMap, c: &CellChain) -> Result<CellTensor> {
    let mut degree = None;
    for (key, _) in c.terms() {
        check_cell_key(alpha, key, &mut degree)?;
    }
    Ok(c.map_linear(|key| {
        let k = key.len() - 1;
        let mut out = FormalChain::zero();
        for j in 1..=k {
            let s = sign((j * (k - j)) as i64);
            out.add_term((key[j..].to_vec(), alpha.restrict(&key[..=j]).values), BigInt::from(s));
        }
        out
    }))
}

/// The identification `Cell(α) ≅ Cell(σ ∘ α)` induced by postcomposition.
///
/// Both sides are keyed by subsets of the domain of `α`, so on keys the
/// bijection is the identity; only the comodule structure changes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellReindex {
    pub from: OrderMap,
    pub to: OrderMap,
    pub keys: BTreeMap<Seq, Seq>,
}

impl CellReindex {
    pub fn apply(&self, c: &CellChain) -> Result<CellChain> {
        let mut out = FormalChain::zero();
        for (k, v) in c.terms() {
            let image = self.keys.get(k).ok_or_else(|| Error::InvalidSubset { key: join(k), size: self.from.values.len() })?;
            out.add_term(image.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn inverse(&self) -> CellReindex {
        CellReindex {
            from: self.to.clone(),
            to: self.from.clone(),
            keys: self.keys.iter().map(|(a, b)| (b.clone(), a.clone())).collect(),
        }
    }
}

pub fn reindex_cell(sigma: &OrderMap, alpha: &OrderMap) -> Result<CellReindex> {
    let to = sigma.compose(alpha)?;
    let keys = nonempty_subsets(alpha.values.len()).into_iter().map(|s| (s.clone(), s)).collect();
    Ok(CellReindex { from: alpha.clone(), to, keys })
}
