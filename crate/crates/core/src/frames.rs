//! Resolution objects `B(X,f)(α)` of a nerve simplex and the diagram they
//! form over `D[n]`.
//!
//! `B(α)` is the twisted direct sum over nonempty subsets `S ⊆ [a]` of the
//! translated complexes `X_{α(s_0)}[|S|−1]`. With `k = |S|−1` the differential
//! on the summand `ι_S` is
//!
//! ```text
//! d ι_S = (−1)^k ι_S d_X
//!       + Σ_{j=1..k} (−1)^j ι_{S∖s_j}
//!       + Σ_{j=1..k} (−1)^{k(j−1)} ι_{S_{≥j}} ∘ f(α⟨s_0..s_j⟩).
//! ```
//!
//! Summands are ordered by subset size, then lexicographically, then by
//! the basis order of the source complex; the element `e` of summand `S` is
//! labelled `"S:e"`, e.g. `"0,1:e0"`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::json;

use crate::complex::{
    hom_layout, is_weak_equivalence, map_to_vector, shift, sign, vector_to_map, ChainComplex, Degree, GradedMap,
};
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::nerve::{act, NerveSimplex};
use crate::report::{CheckItem, Report};
use crate::simplicial::{
    enumerate_d_objects, is_weak_equivalence_d, join, morphisms_into, nonempty_subsets, DMorphism, OrderMap,
};

fn subset_order(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone)]
pub struct FrameObject {
    simplex: Arc<NerveSimplex>,
    alpha: OrderMap,
    cells: Vec<Vec<usize>>,
    starts: BTreeMap<Degree, Vec<usize>>,
    complex: Arc<ChainComplex>,
}

impl FrameObject {
    pub fn simplex(&self) -> &Arc<NerveSimplex> {
        &self.simplex
    }

    pub fn alpha(&self) -> &OrderMap {
        &self.alpha
    }

    pub fn complex(&self) -> &Arc<ChainComplex> {
        &self.complex
    }

    /// Subsets indexing the summands, in canonical order.
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn cell_index(&self, subset: &[usize]) -> Option<usize> {
        self.cells.binary_search_by(|c| subset_order(c, subset)).ok()
    }

    /// The complex `X_{α(s_0)}` translated into summand `S`.
    pub fn cell_source(&self, cell: usize) -> &Arc<ChainComplex> {
        self.simplex.object(self.alpha.get(self.cells[cell][0]))
    }

    /// First basis index of summand `cell` in degree `d`.
    pub fn block_start(&self, cell: usize, d: Degree) -> usize {
        self.starts.get(&d).map_or(0, |s| s[cell])
    }

    /// Rank of summand `cell` in degree `d`.
    pub fn block_rank(&self, cell: usize, d: Degree) -> usize {
        let k = self.cells[cell].len() as Degree - 1;
        self.cell_source(cell).rank(d - k)
    }

    /// Summand inclusion `ι_S : X_{α(s_0)} → B(α)`, of degree `|S|−1`.
    pub fn summand_inclusion(&self, subset: &[usize]) -> Result<GradedMap> {
        let c = self.cell_index(subset).ok_or_else(|| Error::InvalidSubset { key: join(subset), size: self.cells.len() })?;
        let k = subset.len() as Degree - 1;
        let x = self.cell_source(c).clone();
        GradedMap::from_fn(x.clone(), self.complex.clone(), k, |d| {
            let mut m = IntMatrix::zeros(self.complex.rank(d + k), x.rank(d));
            m.set_block(self.block_start(c, d + k), 0, &IntMatrix::identity(x.rank(d)));
            m
        })
    }

    /// Replaces one differential entry without any validation. Only meant
    /// for negative controls of the checks below.
    pub fn with_corrupted_entry(&self, degree: Degree, row: usize, col: usize, value: i64) -> FrameObject {
        let mut diffs = self.complex.nonzero_diffs().clone();
        let mut m = self.complex.diff(degree);
        m.set(row, col, BigInt::from(value));
        diffs.insert(degree, m);
        let complex = ChainComplex::from_parts_unchecked(
            self.complex.name().to_string(),
            self.complex.ranks().clone(),
            diffs,
            self.complex.all_labels().clone(),
        );
        FrameObject { complex: Arc::new(complex), ..self.clone() }
    }
}

/// Builds `B(α)` for a valid simplex.
pub fn build_frame_object(s: &NerveSimplex, alpha: &OrderMap) -> Result<FrameObject> {
    let report = s.validate_maurer_cartan();
    if let Some(bad) = report.failures().next() {
        return Err(Error::InvalidSimplex(format!("Maurer–Cartan equation fails at {}", bad.location)));
    }
    build_unchecked(Arc::new(s.clone()), alpha)
}

/// Builds `B(α)` without validating the simplex first. The result is a
/// complex exactly when the Maurer–Cartan equation holds on the faces of `α`.
pub fn build_unchecked(s: Arc<NerveSimplex>, alpha: &OrderMap) -> Result<FrameObject> {
    if alpha.codomain() != s.n() {
        return Err(Error::InvalidOrderMap(format!("{alpha:?} does not land in [{}]", s.n())));
    }
    let cells = nonempty_subsets(alpha.dim() + 1);
    let sources: Vec<Arc<ChainComplex>> = cells.iter().map(|c| s.object(alpha.get(c[0])).clone()).collect();
    let shifts: Vec<Degree> = cells.iter().map(|c| c.len() as Degree - 1).collect();

    let degrees: BTreeSet<Degree> =
        sources.iter().zip(&shifts).flat_map(|(x, &k)| x.support().into_iter().map(move |d| d + k)).collect();
    let mut ranks = BTreeMap::new();
    let mut labels = BTreeMap::new();
    let mut starts = BTreeMap::new();
    for &d in &degrees {
        let mut offs = Vec::with_capacity(cells.len());
        let mut total = 0;
        let mut ls = Vec::new();
        for (c, (x, &k)) in cells.iter().zip(sources.iter().zip(&shifts)) {
            offs.push(total);
            total += x.rank(d - k);
            let key = join(c);
            ls.extend(x.labels(d - k).iter().map(|l| format!("{key}:{l}")));
        }
        starts.insert(d, offs);
        ranks.insert(d, total);
        labels.insert(d, ls);
    }
    let rank = |d: Degree| ranks.get(&d).copied().unwrap_or(0);
    let start = |c: usize, d: Degree| starts.get(&d).map_or(0, |o: &Vec<usize>| o[c]);
    let index = |subset: &[usize]| cells.binary_search_by(|c| subset_order(c, subset)).expect("subsets of the domain are cells");

    let mut cochains: BTreeMap<Vec<usize>, GradedMap> = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for &d in &degrees {
        let mut m = IntMatrix::zeros(rank(d - 1), rank(d));
        for (c, cell) in cells.iter().enumerate() {
            let (x, k) = (&sources[c], shifts[c]);
            if x.rank(d - k) == 0 {
                continue;
            }
            let col = start(c, d);
            m.add_block(start(c, d - 1), col, &x.diff(d - k), sign(k));
            for j in 1..cell.len() {
                let mut face = cell.clone();
                face.remove(j);
                m.add_block(start(index(&face), d - 1), col, &IntMatrix::identity(x.rank(d - k)), sign(j as i64));
                let image = alpha.restrict(&cell[..=j]).values().to_vec();
                let f = match cochains.get(&image) {
                    Some(f) => f.clone(),
                    None => {
                        let f = s.eval_cochain(&image)?;
                        cochains.insert(image, f.clone());
                        f
                    }
                };
                m.add_block(start(index(&cell[j..]), d - 1), col, &f.block(d - k), sign(k * (j as i64 - 1)));
            }
        }
        diffs.insert(d, m);
    }
    let complex = ChainComplex::from_parts_unchecked(format!("B({alpha})"), ranks, diffs, labels);
    Ok(FrameObject { simplex: s, alpha: alpha.clone(), cells, starts, complex: Arc::new(complex) })
}

/// `d ∘ d = 0` on the built complex.
pub fn check_d_squared(o: &FrameObject) -> CheckItem {
    let loc = o.alpha.to_string();
    match o.complex.d_squared_violation() {
        None => CheckItem::pass("d_squared", loc),
        Some(d) => CheckItem::fail("d_squared", loc, json!({ "degree": d })),
    }
}

/// The basis inclusion `(S, e) ↦ (σ(S), e)` between built objects.
pub fn inclusion_map(src: &FrameObject, tgt: &FrameObject, m: &DMorphism) -> Result<GradedMap> {
    if src.alpha != *m.src() || tgt.alpha != *m.tgt() {
        return Err(Error::MissingObject(format!("objects do not match the morphism {:?} → {:?}", m.src(), m.tgt())));
    }
    let sigma = m.sigma();
    GradedMap::from_fn(src.complex.clone(), tgt.complex.clone(), 0, |d| {
        let mut out = IntMatrix::zeros(tgt.complex.rank(d), src.complex.rank(d));
        for (c, cell) in src.cells.iter().enumerate() {
            let image: Vec<usize> = cell.iter().map(|&i| sigma[i]).collect();
            let tc = tgt.cell_index(&image).expect("images of cells are cells");
            let r = src.block_rank(c, d);
            out.set_block(tgt.block_start(tc, d), src.block_start(c, d), &IntMatrix::identity(r));
        }
        out
    })
}

/// The diagram `B(X,f)` restricted to objects of length at most `max_len`.
#[derive(Debug, Clone)]
pub struct FrameDiagram {
    simplex: Arc<NerveSimplex>,
    max_len: usize,
    objects: BTreeMap<OrderMap, FrameObject>,
    maps: BTreeMap<DMorphism, GradedMap>,
}

impl FrameDiagram {
    pub fn build(s: &NerveSimplex, max_len: usize) -> Result<Self> {
        if max_len == 0 {
            return Err(Error::Precondition("truncation length must be at least 1".into()));
        }
        let report = s.validate_maurer_cartan();
        if let Some(bad) = report.failures().next() {
            return Err(Error::InvalidSimplex(format!("Maurer–Cartan equation fails at {}", bad.location)));
        }
        let simplex = Arc::new(s.clone());
        let mut objects = BTreeMap::new();
        for alpha in enumerate_d_objects(s.n(), max_len - 1) {
            let o = build_unchecked(simplex.clone(), &alpha)?;
            objects.insert(alpha, o);
        }
        let mut maps = BTreeMap::new();
        for (alpha, tgt) in &objects {
            for m in morphisms_into(alpha) {
                let src = &objects[m.src()];
                maps.insert(m.clone(), inclusion_map(src, tgt, &m)?);
            }
        }
        Ok(FrameDiagram { simplex, max_len, objects, maps })
    }

    pub fn simplex(&self) -> &Arc<NerveSimplex> {
        &self.simplex
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn objects(&self) -> &BTreeMap<OrderMap, FrameObject> {
        &self.objects
    }

    pub fn object(&self, alpha: &OrderMap) -> Result<&FrameObject> {
        self.objects.get(alpha).ok_or_else(|| Error::MissingObject(format!("{alpha:?}")))
    }

    pub fn morphisms(&self) -> impl Iterator<Item = &DMorphism> {
        self.maps.keys()
    }

    pub fn structure_map(&self, m: &DMorphism) -> Result<&GradedMap> {
        self.maps.get(m).ok_or_else(|| Error::MissingObject(format!("{:?} → {:?}", m.src(), m.tgt())))
    }
}

pub fn structure_map<'a>(d: &'a FrameDiagram, m: &DMorphism) -> Result<&'a GradedMap> {
    d.structure_map(m)
}

/// Latching data at `α`: the span of the proper summands and its inclusion.
#[derive(Debug, Clone)]
pub struct Latching {
    pub sub: Arc<ChainComplex>,
    pub incl: GradedMap,
    /// The quotient by the latching object, on the complementary basis.
    pub cokernel: ChainComplex,
}

/// Splits `B(α)` along the last summand, which is the only non-proper one.
pub fn latching_map(o: &FrameObject) -> Result<Latching> {
    if o.alpha.dim() == 0 {
        return Err(Error::Precondition("the latching object of a singleton is initial".into()));
    }
    let full = o.cells.len() - 1;
    let b = &o.complex;
    let proper = |d: Degree| o.block_start(full, d).min(b.rank(d));
    let mut sub_ranks = BTreeMap::new();
    let mut sub_labels = BTreeMap::new();
    let mut sub_diffs = BTreeMap::new();
    let mut cok_ranks = BTreeMap::new();
    let mut cok_labels = BTreeMap::new();
    let mut cok_diffs = BTreeMap::new();
    for d in b.support() {
        let p = proper(d);
        let r = b.rank(d);
        sub_ranks.insert(d, p);
        sub_labels.insert(d, b.labels(d)[..p].to_vec());
        cok_ranks.insert(d, r - p);
        cok_labels.insert(d, b.labels(d)[p..].to_vec());
        let m = b.diff(d);
        let (p1, r1) = (proper(d - 1), b.rank(d - 1));
        sub_diffs.insert(d, m.block(0, 0, p1, p));
        cok_diffs.insert(d, m.block(p1, p, r1 - p1, r - p));
    }
    let name = format!("L({})", o.alpha);
    let sub = Arc::new(ChainComplex::from_parts_unchecked(
        name.clone(),
        sub_ranks,
        sub_diffs,
        sub_labels.into_iter().filter(|(_, l)| !l.is_empty()).collect(),
    ));
    let cokernel = ChainComplex::from_parts_unchecked(
        format!("{}/{}", b.name(), name),
        cok_ranks,
        cok_diffs,
        cok_labels.into_iter().filter(|(_, l)| !l.is_empty()).collect(),
    );
    let incl = GradedMap::from_fn(sub.clone(), b.clone(), 0, |d| {
        let mut m = IntMatrix::zeros(b.rank(d), sub.rank(d));
        m.set_block(0, 0, &IntMatrix::identity(sub.rank(d)));
        m
    })?;
    Ok(Latching { sub, incl, cokernel })
}

/// Inclusion of the last vertex, `ι_{a} : X_{α(a)} → B(α)`.
pub fn include_last(o: &FrameObject) -> Result<GradedMap> {
    o.summand_inclusion(&[o.alpha.dim()])
}

/// Retraction `B(α) → X_{α(a)}` with `r ι_S = (−1)^k f(α(S)·α(a))`.
pub fn retraction(o: &FrameObject) -> Result<GradedMap> {
    let a = o.alpha.dim();
    let target = o.simplex.object(o.alpha.get(a)).clone();
    let mut blocks: BTreeMap<Degree, IntMatrix> = BTreeMap::new();
    for d in o.complex.support() {
        blocks.insert(d, IntMatrix::zeros(target.rank(d), o.complex.rank(d)));
    }
    for (c, cell) in o.cells.iter().enumerate() {
        let k = cell.len() as Degree - 1;
        let mut seq = o.alpha.restrict(cell).values().to_vec();
        seq.push(o.alpha.get(a));
        let f = o.simplex.eval_cochain(&seq)?;
        for (&d, block) in f.blocks() {
            let m = blocks.get_mut(&(d + k)).expect("summand degrees are in the support");
            m.add_block(0, o.block_start(c, d + k), block, sign(k));
        }
    }
    GradedMap::new(o.complex.clone(), target, 0, blocks)
}

/// Homotopy on `B(α)` with `h ι_S = (−1)^k ι_{S∪{a}}` for `a ∉ S`.
pub fn homotopy(o: &FrameObject) -> Result<GradedMap> {
    let a = o.alpha.dim();
    let b = &o.complex;
    let mut blocks: BTreeMap<Degree, IntMatrix> = BTreeMap::new();
    for d in b.support() {
        if b.rank(d + 1) > 0 {
            blocks.insert(d, IntMatrix::zeros(b.rank(d + 1), b.rank(d)));
        }
    }
    for (c, cell) in o.cells.iter().enumerate() {
        if cell.contains(&a) {
            continue;
        }
        let k = cell.len() as Degree - 1;
        let mut bigger = cell.clone();
        bigger.push(a);
        let t = o.cell_index(&bigger).expect("adding the last index gives a cell");
        for d in o.cell_source(c).support() {
            let r = o.cell_source(c).rank(d);
            let m = blocks.get_mut(&(d + k)).expect("the enlarged summand lives one degree up");
            m.add_block(o.block_start(t, d + k + 1), o.block_start(c, d + k), &IntMatrix::identity(r), sign(k));
        }
    }
    GradedMap::new(b.clone(), b.clone(), 1, blocks)
}

/// `r ∘ j = id` and `D(h) = j ∘ r − id`.
pub fn check_last_vertex_retraction(o: &FrameObject) -> Result<Report> {
    let loc = o.alpha.to_string();
    let (j, r, h) = (include_last(o)?, retraction(o)?, homotopy(o)?);
    let mut report = Report::new();
    let rj = r.compose(&j)?;
    let ok = rj == GradedMap::identity(j.source().clone());
    report.push(CheckItem::from_outcome("retraction", loc.clone(), if ok { Ok(()) } else { Err(json!("r∘j ≠ id")) }));
    let want = j.compose(&r)?.sub(&GradedMap::identity(o.complex.clone()))?;
    let ok = h.hom_differential() == want;
    report.push(CheckItem::from_outcome("homotopy", loc, if ok { Ok(()) } else { Err(json!("D(h) ≠ j∘r − id")) }));
    Ok(report)
}

/// Every structure map along a weak equivalence has acyclic cone.
pub fn is_homotopical(d: &FrameDiagram) -> Report {
    let mut report = Report::new();
    for (m, f) in &d.maps {
        if !is_weak_equivalence_d(m) {
            continue;
        }
        let loc = format!("{}->{}", m.src(), m.tgt());
        let item = match is_weak_equivalence(f) {
            Ok(true) => CheckItem::pass("homotopical", loc),
            Ok(false) => CheckItem::fail("homotopical", loc, json!("cone is not acyclic")),
            Err(e) => CheckItem::fail("homotopical", loc, json!({ "error": e.to_string() })),
        };
        report.push(item);
    }
    report
}

/// The inclusion is injective with free cokernel in every degree, i.e. its
/// Smith form has only unit invariant factors and full column rank.
fn degreewise_split_injective(f: &GradedMap) -> std::result::Result<(), Degree> {
    for d in f.source().support() {
        let m = f.block(d);
        let s = linalg::snf(&m);
        if s.rank() != m.cols() || s.invariant_factors().iter().any(|x| !x.is_one()) {
            return Err(d);
        }
    }
    Ok(())
}

/// Latching checks at one object: the proper span is a subcomplex, the
/// inclusion is degreewise split, and the quotient is `X_{α(0)}[a]`.
pub fn check_latching(o: &FrameObject) -> CheckItem {
    let loc = o.alpha.to_string();
    if o.alpha.dim() == 0 {
        return CheckItem::pass("reedy", loc);
    }
    let b = &o.complex;
    let full = o.cells.len() - 1;
    for d in b.support() {
        let m = b.diff(d);
        let (p, p1) = (o.block_start(full, d).min(b.rank(d)), o.block_start(full, d - 1).min(b.rank(d - 1)));
        for i in p1..m.rows() {
            for jj in 0..p {
                if !m.get(i, jj).is_zero() {
                    return CheckItem::fail("reedy", loc, json!({ "degree": d, "reason": "proper span is not a subcomplex" }));
                }
            }
        }
    }
    let lat = match latching_map(o) {
        Ok(l) => l,
        Err(e) => return CheckItem::fail("reedy", loc, json!({ "error": e.to_string() })),
    };
    if let Err(d) = degreewise_split_injective(&lat.incl) {
        return CheckItem::fail("reedy", loc, json!({ "degree": d, "reason": "inclusion is not split injective" }));
    }
    let expected = shift(o.simplex.object(o.alpha.get(0)), o.alpha.dim() as Degree);
    if lat.cokernel.ranks() != expected.ranks() {
        return CheckItem::fail("reedy", loc, json!({ "reason": "cokernel ranks differ from the translated source" }));
    }
    for d in expected.support() {
        if lat.cokernel.diff(d) != expected.diff(d) {
            return CheckItem::fail("reedy", loc, json!({ "degree": d, "reason": "cokernel differential differs" }));
        }
    }
    CheckItem::pass("reedy", loc)
}

pub fn is_reedy_cofibrant(d: &FrameDiagram) -> Report {
    let mut report = Report::new();
    for o in d.objects.values() {
        report.push(check_latching(o));
    }
    report
}

/// Structure maps respect composition and identities.
pub fn check_functoriality(d: &FrameDiagram) -> Report {
    let mut report = Report::new();
    for (second, g) in &d.maps {
        let loc = format!("{}->{}", second.src(), second.tgt());
        let mut failure = None;
        if second.src() == second.tgt() && *g != GradedMap::identity(g.source().clone()) {
            failure = Some(json!("identity is not sent to the identity"));
        }
        for first in morphisms_into(second.src()) {
            let composite = second.compose(&first).expect("composable by construction");
            let want = d.maps[&composite].clone();
            let got = g.compose(&d.maps[&first]).expect("maps are composable");
            if got != want {
                failure = Some(json!({ "via": first.src().to_string() }));
                break;
            }
        }
        report.push(CheckItem::from_outcome("functoriality", loc, failure.map_or(Ok(()), Err)));
    }
    report
}

/// `B(σ^*s)(α)` equals `B(s)(σ∘α)` as labelled complexes, for every `α`
/// over `[m]` of length at most `max_len`.
pub fn check_simplicial_compat(sigma: &OrderMap, s: &NerveSimplex, max_len: usize) -> Result<Report> {
    let pulled = Arc::new(act(sigma, s)?);
    let base = Arc::new(s.clone());
    let mut report = Report::new();
    for alpha in enumerate_d_objects(sigma.dim(), max_len.saturating_sub(1)) {
        let loc = format!("sigma={sigma} alpha={alpha}");
        let left = build_unchecked(pulled.clone(), &alpha)?;
        let right = build_unchecked(base.clone(), &sigma.compose(&alpha)?)?;
        let item = if left.cells != right.cells {
            CheckItem::fail("simplicial", loc, json!("cell keys differ"))
        } else if !left.complex.same_data(&right.complex) {
            CheckItem::fail("simplicial", loc, json!("complexes differ"))
        } else {
            CheckItem::pass("simplicial", loc)
        };
        report.push(item);
    }
    Ok(report)
}

/// Matrix of a linear operator `Map(x, y)_n → Map(x2, y2)_n2`, built column
/// by column from basis maps.
fn operator_matrix(
    (x, y, n): (&Arc<ChainComplex>, &Arc<ChainComplex>, Degree),
    (x2, y2, n2): (&Arc<ChainComplex>, &Arc<ChainComplex>, Degree),
    op: impl Fn(&GradedMap) -> Result<GradedMap>,
) -> Result<IntMatrix> {
    let (_, cols) = hom_layout(x, y, n);
    let (_, rows) = hom_layout(x2, y2, n2);
    let mut m = IntMatrix::zeros(rows, cols);
    let mut e = vec![BigInt::zero(); cols];
    for j in 0..cols {
        e[j] = BigInt::one();
        let image = map_to_vector(&op(&vector_to_map(x, y, n, &e)?)?);
        for (i, c) in image.into_iter().enumerate() {
            m.set(i, j, c);
        }
        e[j] = BigInt::zero();
    }
    Ok(m)
}

fn stack(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut m = IntMatrix::zeros(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    m
}

/// Retraction and homotopy for an acyclic cofibration `ι : A → B`.
#[derive(Debug, Clone)]
pub struct Splitting {
    pub p: GradedMap,
    pub h: GradedMap,
}

/// Solves for `p` with `D(p) = 0`, `p ∘ ι = id`, then for `h` with
/// `D(h) = ι ∘ p − id`, `h ∘ ι = 0`.
pub fn split_acyclic_cofibration(iota: &GradedMap) -> Result<Splitting> {
    if !iota.is_chain_map() {
        return Err(Error::Precondition("the map to split is not a chain map".into()));
    }
    if let Err(d) = degreewise_split_injective(iota) {
        return Err(Error::Precondition(format!("not split injective in degree {d}")));
    }
    if !is_weak_equivalence(iota)? {
        return Err(Error::Precondition("cokernel is not acyclic".into()));
    }
    let (a, b) = (iota.source(), iota.target());

    let dp = operator_matrix((b, a, 0), (b, a, -1), |p| Ok(p.hom_differential()))?;
    let pi = operator_matrix((b, a, 0), (a, a, 0), |p| p.compose(iota))?;
    let mut rhs = vec![BigInt::zero(); dp.rows()];
    rhs.extend(map_to_vector(&GradedMap::identity(a.clone())));
    let p = linalg::solve(&stack(&dp, &pi), &rhs)?
        .ok_or_else(|| Error::Precondition("no integral retraction exists".into()))?;
    let p = vector_to_map(b, a, 0, &p)?;

    let dh = operator_matrix((b, b, 1), (b, b, 0), |h| Ok(h.hom_differential()))?;
    let hi = operator_matrix((b, b, 1), (a, b, 1), |h| h.compose(iota))?;
    let mut rhs = map_to_vector(&iota.compose(&p)?.sub(&GradedMap::identity(b.clone()))?);
    rhs.extend(vec![BigInt::zero(); hi.rows()]);
    let h = linalg::solve(&stack(&dh, &hi), &rhs)?
        .ok_or_else(|| Error::Precondition("no integral homotopy exists".into()))?;
    let h = vector_to_map(b, b, 1, &h)?;
    Ok(Splitting { p, h })
}

/// `p ∘ ι_{0}` for the retraction `p` of the target end of a cylinder.
pub fn recover_map_from_cylinder(o: &FrameObject) -> Result<GradedMap> {
    if o.simplex.n() != 1 || o.alpha != OrderMap::identity(1) {
        return Err(Error::Precondition("recovery needs the object ⟨0,1⟩ of a 1-simplex".into()));
    }
    let split = split_acyclic_cofibration(&o.summand_inclusion(&[1])?)?;
    split.p.compose(&o.summand_inclusion(&[0])?)
}

/// Whether `candidate` completes `partial` at the top sequence.
pub fn verify_mc_extension(partial: &NerveSimplex, candidate: &GradedMap) -> Result<bool> {
    let n = partial.n();
    if n == 0 {
        return Err(Error::Precondition("a 0-simplex has no top cochain".into()));
    }
    let top: Vec<usize> = (0..=n).collect();
    if let Some(m) = partial.missing_sequences().into_iter().find(|m| *m != top) {
        return Err(Error::Precondition(format!("missing cochain on the proper face {}", join(&m))));
    }
    let (x, y) = (partial.object(0), partial.object(n));
    if candidate.degree() != n as Degree - 1 || **candidate.source() != **x || **candidate.target() != **y {
        return Err(Error::DimensionMismatch(format!(
            "candidate must be a degree {} map {} → {}",
            n - 1,
            x.name(),
            y.name()
        )));
    }
    let candidate = candidate.with_endpoints(x.clone(), y.clone())?;
    let mut rhs = GradedMap::zero(x.clone(), y.clone(), n as Degree - 2);
    for j in 1..n {
        let mut face = top.clone();
        face.remove(j);
        rhs = rhs.sub(&partial.eval_cochain(&face)?.scale(sign(j as i64)))?;
    }
    for j in 1..n {
        let term = partial.eval_cochain(&top[j..])?.compose(&partial.eval_cochain(&top[..=j])?)?;
        rhs = rhs.sub(&term.scale(sign(((j - 1) * n) as i64)))?;
    }
    Ok(candidate.hom_differential() == rhs)
}

/// The combined suite: differentials, Reedy and homotopical conditions,
/// last-vertex retractions, functoriality, and compatibility with every
/// face and degeneracy of `[n]`.
pub fn check_all(s: &NerveSimplex, max_len: usize) -> Result<Report> {
    let mut report = s.validate_maurer_cartan();
    if !report.passed() {
        return Ok(report);
    }
    let d = FrameDiagram::build(s, max_len)?;
    for o in d.objects.values() {
        report.push(check_d_squared(o));
    }
    report.extend(is_reedy_cofibrant(&d));
    report.extend(is_homotopical(&d));
    for o in d.objects.values() {
        report.extend(check_last_vertex_retraction(o)?);
    }
    report.extend(check_functoriality(&d));
    let n = s.n();
    let mut sigmas = Vec::new();
    for i in 0..=n {
        if n > 0 {
            let values: Vec<usize> = (0..=n).filter(|&v| v != i).collect();
            sigmas.push(OrderMap::new(values, n)?);
        }
        let mut values: Vec<usize> = (0..=n).collect();
        values.insert(i, i);
        sigmas.push(OrderMap::new(values, n)?);
    }
    for sigma in sigmas {
        report.extend(check_simplicial_compat(&sigma, s, max_len)?);
    }
    Ok(report)
}
