//! Simplices of the dg-nerve of chain complexes.
//!
//! An `n`-simplex is a list of complexes `X_0, …, X_n` with a map
//! `f(s) : X_{i_0} → X_{i_k}` of degree `k−1` for every strictly increasing
//! `s = ⟨i_0 < … < i_k⟩`, `k ≥ 1`, subject to
//!
//! ```text
//! D f(s) + Σ_{0<j<k} (−1)^j f(∂_j s) + Σ_{0<j<k} (−1)^{(j−1)k} f(s_{≥j}) ∘ f(s_{≤j}) = 0.
//! ```
//!
//! Non-injective sequences are never stored: `⟨i,i⟩` evaluates to the
//! identity and every longer sequence with a repeat to zero.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::json;

use crate::complex::{sign, ChainComplex, GradedMap};
use crate::error::{Error, Result};
use crate::report::{CheckItem, Report};
use crate::simplicial::{join, nonempty_subsets, OrderMap};

#[derive(Debug, Clone, PartialEq)]
pub struct NerveSimplex {
    objects: Vec<Arc<ChainComplex>>,
    maps: BTreeMap<Vec<usize>, GradedMap>,
}

/// Strictly increasing sequences in `[n]` of length between `min_len` and
/// `max_len`, by length and then lexicographically.
pub fn increasing_sequences(n: usize, min_len: usize, max_len: usize) -> Vec<Vec<usize>> {
    nonempty_subsets(n + 1).into_iter().filter(|s| (min_len..=max_len).contains(&s.len())).collect()
}

impl NerveSimplex {
    /// Builds a possibly partial simplex. Stored maps are re-pointed at the
    /// shared object handles after their endpoints are checked.
    pub fn new(objects: Vec<Arc<ChainComplex>>, maps: BTreeMap<Vec<usize>, GradedMap>) -> Result<Self> {
        if objects.is_empty() {
            return Err(Error::InvalidSimplex("a simplex needs at least one object".into()));
        }
        let n = objects.len() - 1;
        let mut kept = BTreeMap::new();
        for (seq, f) in maps {
            let loc = join(&seq);
            if seq.len() < 2 || seq.windows(2).any(|w| w[0] >= w[1]) || seq.iter().any(|&i| i > n) {
                return Err(Error::InvalidSimplex(format!(
                    "key {loc} is not a strictly increasing sequence of length ≥ 2 in [{n}]"
                )));
            }
            let (x, y) = (&objects[seq[0]], &objects[*seq.last().unwrap()]);
            if **f.source() != **x || **f.target() != **y {
                return Err(Error::InvalidSimplex(format!(
                    "map at {loc} goes {} → {}, expected {} → {}",
                    f.source().name(),
                    f.target().name(),
                    x.name(),
                    y.name()
                )));
            }
            let want = seq.len() as i64 - 2;
            if f.degree() != want {
                return Err(Error::InvalidSimplex(format!("map at {loc} has degree {}, expected {want}", f.degree())));
            }
            kept.insert(seq, f.with_endpoints(x.clone(), y.clone())?);
        }
        Ok(NerveSimplex { objects, maps: kept })
    }

    /// The 0-simplex on a single complex.
    pub fn point(x: Arc<ChainComplex>) -> Self {
        NerveSimplex { objects: vec![x], maps: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn objects(&self) -> &[Arc<ChainComplex>] {
        &self.objects
    }

    pub fn object(&self, i: usize) -> &Arc<ChainComplex> {
        &self.objects[i]
    }

    pub fn maps(&self) -> &BTreeMap<Vec<usize>, GradedMap> {
        &self.maps
    }

    pub fn get(&self, seq: &[usize]) -> Option<&GradedMap> {
        self.maps.get(seq)
    }

    /// Strictly increasing sequences with no stored map.
    pub fn missing_sequences(&self) -> Vec<Vec<usize>> {
        increasing_sequences(self.n(), 2, self.n() + 1).into_iter().filter(|s| !self.maps.contains_key(s)).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.missing_sequences().is_empty()
    }

    /// A copy with the map at `seq` replaced or inserted.
    pub fn with_cochain(&self, seq: Vec<usize>, f: GradedMap) -> Result<Self> {
        let mut maps = self.maps.clone();
        maps.insert(seq, f);
        Self::new(self.objects.clone(), maps)
    }

    /// A copy with the map at `seq` removed.
    pub fn without_cochain(&self, seq: &[usize]) -> Self {
        let mut out = self.clone();
        out.maps.remove(seq);
        out
    }

    /// `f(seq)` for any nondecreasing sequence of length at least 2.
    pub fn eval_cochain(&self, seq: &[usize]) -> Result<GradedMap> {
        if seq.len() < 2 {
            return Err(Error::Degree(format!("cochains are evaluated on sequences of length ≥ 2, got ⟨{}⟩", join(seq))));
        }
        if let Some(&i) = seq.iter().find(|&&i| i > self.n()) {
            return Err(Error::InvalidOrderMap(format!("index {i} outside [{}]", self.n())));
        }
        if seq.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidOrderMap(format!("{} is not nondecreasing", join(seq))));
        }
        let (x, y) = (&self.objects[seq[0]], &self.objects[*seq.last().unwrap()]);
        if seq.windows(2).any(|w| w[0] == w[1]) {
            return Ok(if seq.len() == 2 {
                GradedMap::identity(x.clone())
            } else {
                GradedMap::zero(x.clone(), y.clone(), seq.len() as i64 - 2)
            });
        }
        self.maps.get(seq).cloned().ok_or_else(|| Error::MissingCochain(join(seq)))
    }

    /// Left-hand side of the Maurer–Cartan equation at `seq`; zero exactly
    /// when the equation holds there.
    pub fn mc_residual(&self, seq: &[usize]) -> Result<GradedMap> {
        let k = seq.len() - 1;
        let mut r = self.eval_cochain(seq)?.hom_differential();
        for j in 1..k {
            let mut face = seq.to_vec();
            face.remove(j);
            let term = self.eval_cochain(&face)?;
            r = r.add(&term.scale(sign(j as i64)))?;
        }
        for j in 1..k {
            let prefix = self.eval_cochain(&seq[..=j])?;
            let suffix = self.eval_cochain(&seq[j..])?;
            let term = suffix.compose(&prefix)?;
            r = r.add(&term.scale(sign(((j - 1) * k) as i64)))?;
        }
        Ok(r)
    }

    /// Checks the Maurer–Cartan equation on every strictly increasing
    /// sequence of length 2 to `n+1`, reporting each one.
    pub fn validate_maurer_cartan(&self) -> Report {
        let mut report = Report::new();
        for seq in increasing_sequences(self.n(), 2, self.n() + 1) {
            let loc = join(&seq);
            let item = match self.mc_residual(&seq) {
                Ok(r) if r.is_zero() => CheckItem::pass("maurer_cartan", loc),
                Ok(r) => CheckItem::fail(
                    "maurer_cartan",
                    loc,
                    json!({ "residual_degree": r.degree(), "nonzero_source_degrees": r.blocks().keys().collect::<Vec<_>>() }),
                ),
                Err(e) => CheckItem::fail("maurer_cartan", loc, json!({ "error": e.to_string() })),
            };
            report.push(item);
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate_maurer_cartan().passed()
    }
}

/// Pullback `σ^*(s)` along `σ : [m] → [n]`.
pub fn act(sigma: &OrderMap, s: &NerveSimplex) -> Result<NerveSimplex> {
    if sigma.codomain() != s.n() {
        return Err(Error::InvalidOrderMap(format!("{sigma:?} does not land in [{}]", s.n())));
    }
    let objects: Vec<_> = sigma.values().iter().map(|&i| s.objects[i].clone()).collect();
    let mut maps = BTreeMap::new();
    for beta in increasing_sequences(sigma.dim(), 2, sigma.dim() + 1) {
        let image = sigma.restrict(&beta);
        maps.insert(beta, s.eval_cochain(image.values())?);
    }
    NerveSimplex::new(objects, maps)
}

/// The simplex of a string of composable chain maps, with all higher
/// coherences zero.
pub fn make_strict(maps: &[GradedMap]) -> Result<NerveSimplex> {
    let Some(first) = maps.first() else {
        return Err(Error::InvalidSimplex("make_strict needs at least one map".into()));
    };
    let mut objects = vec![first.source().clone()];
    for (i, f) in maps.iter().enumerate() {
        if !f.is_chain_map() {
            return Err(Error::NotAChainMap(format!("map {} of the string", i + 1)));
        }
        if **f.source() != **objects.last().unwrap() {
            return Err(Error::InvalidSimplex(format!("maps {i} and {} are not composable", i + 1)));
        }
        objects.push(f.target().clone());
    }
    let n = maps.len();
    let steps: Vec<GradedMap> =
        maps.iter().enumerate().map(|(i, f)| f.with_endpoints(objects[i].clone(), objects[i + 1].clone())).collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for seq in increasing_sequences(n, 2, n + 1) {
        let (a, b) = (seq[0], *seq.last().unwrap());
        let f = if seq.len() == 2 {
            let mut acc = steps[a].clone();
            for step in &steps[a + 1..b] {
                acc = step.compose(&acc)?;
            }
            acc
        } else {
            GradedMap::zero(objects[a].clone(), objects[b].clone(), seq.len() as i64 - 2)
        };
        out.insert(seq, f);
    }
    NerveSimplex::new(objects, out)
}

/// The 2-simplex with edges `f`, `g`, long edge `g∘f + D(H)` and filler `H`.
pub fn make_perturbed_2simplex(f: &GradedMap, g: &GradedMap, h: &GradedMap) -> Result<NerveSimplex> {
    let strict = make_strict(&[f.clone(), g.clone()])?;
    let (x0, x2) = (strict.object(0).clone(), strict.object(2).clone());
    if h.degree() != 1 || **h.source() != *x0 || **h.target() != *x2 {
        return Err(Error::DimensionMismatch(format!(
            "homotopy must be a degree 1 map {} → {}, got degree {} map {} → {}",
            x0.name(),
            x2.name(),
            h.degree(),
            h.source().name(),
            h.target().name()
        )));
    }
    let h = h.with_endpoints(x0, x2)?;
    let long = strict.maps[&vec![0, 2]].add(&h.hom_differential())?;
    strict.with_cochain(vec![0, 2], long)?.with_cochain(vec![0, 1, 2], h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::IntMatrix;

    fn z() -> Arc<ChainComplex> {
        Arc::new(ChainComplex::unit())
    }

    fn times(c: i64) -> GradedMap {
        GradedMap::new(z(), z(), 0, BTreeMap::from([(0, IntMatrix::from_i64(&[&[c]]))])).unwrap()
    }

    fn two_term() -> Arc<ChainComplex> {
        let ranks = BTreeMap::from([(0, 1), (1, 1)]);
        let diffs = BTreeMap::from([(1, IntMatrix::from_i64(&[&[1]]))]);
        Arc::new(ChainComplex::new("T", ranks, diffs, BTreeMap::new()).unwrap())
    }

    #[test]
    fn unitality_lookup() {
        let s = make_strict(&[times(2), times(3)]).unwrap();
        assert_eq!(s.eval_cochain(&[2, 2]).unwrap(), GradedMap::identity(s.object(2).clone()));
        assert!(s.eval_cochain(&[0, 0, 1]).unwrap().is_zero());
        assert_eq!(s.eval_cochain(&[0, 1]).unwrap(), times(2));
        assert_eq!(s.eval_cochain(&[0, 2]).unwrap(), times(6));
        assert!(s.eval_cochain(&[0, 3]).is_err());
        assert!(matches!(s.eval_cochain(&[1]), Err(Error::Degree(_))));
    }

    #[test]
    fn strict_simplices_validate() {
        let s = make_strict(&[times(2), times(3), times(-1)]).unwrap();
        assert!(s.is_complete());
        let report = s.validate_maurer_cartan();
        assert_eq!(report.len(), 11);
        assert!(report.passed());
    }

    #[test]
    fn perturbation_by_a_non_cycle_is_caught() {
        let t = two_term();
        let id = GradedMap::identity(t.clone());
        let s = make_strict(&[id.clone(), id]).unwrap();
        let bump = GradedMap::new(t.clone(), t.clone(), 1, BTreeMap::from([(0, IntMatrix::from_i64(&[&[1]]))])).unwrap();
        assert!(!bump.is_cycle());
        let bad = s.with_cochain(vec![0, 1, 2], bump.clone()).unwrap();
        let fails: Vec<_> = bad.validate_maurer_cartan().failures().map(|i| i.location.clone()).collect();
        assert_eq!(fails, vec!["0,1,2".to_string()]);

        let good = make_perturbed_2simplex(&GradedMap::identity(t.clone()), &GradedMap::identity(t), &bump).unwrap();
        assert!(good.is_valid());
        assert_ne!(good.get(&[0, 2]).unwrap(), &good.get(&[1, 2]).unwrap().compose(good.get(&[0, 1]).unwrap()).unwrap());
    }

    #[test]
    fn action_by_degeneracy_and_face() {
        let s = make_strict(&[times(5)]).unwrap();
        let deg = act(&OrderMap::new(vec![0, 0], 1).unwrap(), &s).unwrap();
        assert_eq!(deg.get(&[0, 1]).unwrap(), &times(1));
        let s2 = make_strict(&[times(2), times(3)]).unwrap();
        let face = act(&OrderMap::new(vec![0, 2], 2).unwrap(), &s2).unwrap();
        assert_eq!(face.get(&[0, 1]).unwrap(), &times(6));
        assert!(face.is_valid());
        assert_eq!(act(&OrderMap::identity(2), &s2).unwrap(), s2);
    }

    #[test]
    fn rejects_wrong_degree_and_endpoints() {
        let objects = vec![z(), z()];
        let bad = BTreeMap::from([(vec![0, 1], GradedMap::zero(z(), z(), 1))]);
        assert!(NerveSimplex::new(objects.clone(), bad).is_err());
        let bad = BTreeMap::from([(vec![1, 0], times(1))]);
        assert!(NerveSimplex::new(objects, bad).is_err());
        assert!(make_strict(&[times(1), GradedMap::identity(two_term())]).is_err());
    }
}
