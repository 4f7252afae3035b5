//! Oracles shared by the integration tests. They are written against the
//! public API only and avoid the code paths they are used to check.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use dgframes::complex::{hom_layout, map_to_vector, vector_to_map, ChainComplex, Degree, GradedMap};
use dgframes::linalg::{self, IntMatrix};
use dgframes::nerve::NerveSimplex;
use dgframes::simplicial::{enumerate_d_objects, path_comult, path_diff, PathChain};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Cochain value with the unitality rule applied by hand.
pub fn eval(s: &NerveSimplex, seq: &[usize]) -> GradedMap {
    let x = s.object(seq[0]).clone();
    let y = s.object(*seq.last().unwrap()).clone();
    let degenerate = seq.windows(2).any(|w| w[0] == w[1]);
    match (degenerate, seq.len()) {
        (true, 2) => GradedMap::identity(x),
        (true, len) => GradedMap::zero(x, y, len as Degree - 2),
        (false, _) => s.get(seq).expect("complete simplex").clone(),
    }
}

/// Sequences where `D f + f ∘ d + f ∗ f` does not vanish, computed through
/// the coalgebra structure of the path complex. Degenerate sequences up to
/// length `n+2` are included.
pub fn convolution_failures(s: &NerveSimplex) -> BTreeSet<Vec<usize>> {
    let n = s.n();
    let mut out = BTreeSet::new();
    for alpha in enumerate_d_objects(n, n + 1) {
        let seq = alpha.values().to_vec();
        if seq.len() < 2 {
            continue;
        }
        let mut total = eval(s, &seq).hom_differential();
        let basis = PathChain::basis(seq.clone());
        for (key, c) in path_diff(&basis).unwrap().terms() {
            let c = c.to_i64().unwrap();
            total = total.add(&eval(s, key).scale(c)).unwrap();
        }
        for ((left, right), c) in path_comult(&basis).unwrap().terms() {
            // Koszul sign of (f ⊗ f)(x ⊗ y) with |f| = −1.
            let koszul = if (left.len() - 1) % 2 == 0 { 1 } else { -1 };
            let c = c.to_i64().unwrap() * koszul;
            let term = eval(s, left).compose(&eval(s, right)).unwrap();
            total = total.add(&term.scale(c)).unwrap();
        }
        if !total.is_zero() {
            out.insert(seq);
        }
    }
    out
}

/// Matrix of a linear operator between hom spaces, built from basis maps.
pub fn operator(
    src: (&Arc<ChainComplex>, &Arc<ChainComplex>, Degree),
    dst: (&Arc<ChainComplex>, &Arc<ChainComplex>, Degree),
    op: impl Fn(&GradedMap) -> GradedMap,
) -> IntMatrix {
    let (_, cols) = hom_layout(src.0, src.1, src.2);
    let (_, rows) = hom_layout(dst.0, dst.1, dst.2);
    let mut m = IntMatrix::zeros(rows, cols);
    for j in 0..cols {
        let mut e = vec![BigInt::zero(); cols];
        e[j] = BigInt::one();
        let v = map_to_vector(&op(&vector_to_map(src.0, src.1, src.2, &e).unwrap()));
        for (i, c) in v.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

/// Whether a chain map has an integral homotopy inverse, decided by one
/// joint linear solve for `(g, h, h')` with `D g = 0`, `D h = g f − id`,
/// `D h' = f g − id`.
pub fn has_homotopy_inverse(f: &GradedMap) -> bool {
    let (x, y) = (f.source(), f.target());
    let (_, ng) = hom_layout(y, x, 0);
    let (_, nh) = hom_layout(x, x, 1);
    let (_, nh2) = hom_layout(y, y, 1);
    let dg = operator((y, x, 0), (y, x, -1), |g| g.hom_differential());
    let gf = operator((y, x, 0), (x, x, 0), |g| g.compose(f).unwrap());
    let fg = operator((y, x, 0), (y, y, 0), |g| f.compose(g).unwrap());
    let dh = operator((x, x, 1), (x, x, 0), |h| h.hom_differential());
    let dh2 = operator((y, y, 1), (y, y, 0), |h| h.hom_differential());
    let rows = dg.rows() + gf.rows() + fg.rows();
    let mut m = IntMatrix::zeros(rows, ng + nh + nh2);
    m.set_block(0, 0, &dg);
    m.set_block(dg.rows(), 0, &gf);
    m.add_block(dg.rows(), ng, &dh, -1);
    m.set_block(dg.rows() + gf.rows(), 0, &fg);
    m.add_block(dg.rows() + gf.rows(), ng + nh, &dh2, -1);
    let mut b = vec![BigInt::zero(); dg.rows()];
    b.extend(map_to_vector(&GradedMap::identity(x.clone())));
    b.extend(map_to_vector(&GradedMap::identity(y.clone())));
    linalg::solve(&m, &b).unwrap().is_some()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
