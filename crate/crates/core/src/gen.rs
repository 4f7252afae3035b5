//! Seeded random complexes, maps and valid nerve simplices.
//!
//! Higher coherences of a perturbed simplex are produced by horn filling:
//! maps on sequences `⟨i, i+1, …⟩` are chosen freely, and the remaining ones
//! are solved for from the Maurer–Cartan equation of `⟨i_0, i_0+1, i_1, …⟩`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complex::{hom_differential_matrix, hom_layout, sign, vector_to_map, ChainComplex, Degree, GradedMap};
use crate::error::Result;
use crate::linalg::{kernel_basis, IntMatrix};
use crate::nerve::{increasing_sequences, make_strict, NerveSimplex};

pub type GenRng = ChaCha8Rng;

pub fn rng(seed: u64) -> GenRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy)]
pub struct Params {
    pub max_rank: usize,
    pub max_width: usize,
    pub min_degree: Degree,
    pub max_low_degree: Degree,
    /// Bound on coefficients of random combinations and free entries.
    pub coeff: i64,
}

impl Default for Params {
    fn default() -> Self {
        Params { max_rank: 3, max_width: 4, min_degree: -1, max_low_degree: 1, coeff: 1 }
    }
}

fn small(rng: &mut GenRng, bound: i64) -> BigInt {
    BigInt::from(rng.gen_range(-bound..=bound))
}

fn combination(rng: &mut GenRng, basis: &[Vec<BigInt>], len: usize, bound: i64) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    for b in basis {
        let c = small(rng, bound);
        if c.is_zero() {
            continue;
        }
        for (x, y) in v.iter_mut().zip(b) {
            *x += &c * y;
        }
    }
    v
}

/// A nonzero complex with ranks at most `max_rank` on at most `max_width`
/// consecutive degrees. Each differential has columns drawn from the kernel
/// of the one below it.
pub fn random_complex(rng: &mut GenRng, name: &str, p: &Params) -> Arc<ChainComplex> {
    let lo = rng.gen_range(p.min_degree..=p.max_low_degree);
    let width = rng.gen_range(1..=p.max_width);
    let mut ranks: BTreeMap<Degree, usize> = (0..width).map(|i| (lo + i as Degree, rng.gen_range(0..=p.max_rank))).collect();
    if ranks.values().all(|&r| r == 0) {
        ranks.insert(lo, 1);
    }
    let rank = |d: Degree| ranks.get(&d).copied().unwrap_or(0);
    let mut diffs: BTreeMap<Degree, IntMatrix> = BTreeMap::new();
    for d in lo + 1..lo + width as Degree {
        let below = diffs.get(&(d - 1)).cloned().unwrap_or_else(|| IntMatrix::zeros(rank(d - 2), rank(d - 1)));
        let kernel = kernel_basis(&below);
        let cols: Vec<Vec<BigInt>> = (0..rank(d)).map(|_| combination(rng, &kernel, rank(d - 1), p.coeff)).collect();
        diffs.insert(d, IntMatrix::from_fn(rank(d - 1), rank(d), |i, j| cols[j][i].clone()));
    }
    Arc::new(ChainComplex::new(name, ranks, diffs, BTreeMap::new()).expect("generated complex is valid"))
}

/// A random chain map, a combination of a basis of the degree-0 cycles.
pub fn random_chain_map(rng: &mut GenRng, x: &Arc<ChainComplex>, y: &Arc<ChainComplex>, p: &Params) -> GradedMap {
    let d = hom_differential_matrix(x, y, 0);
    let kernel = kernel_basis(&d);
    let v = combination(rng, &kernel, d.cols(), p.coeff);
    vector_to_map(x, y, 0, &v).expect("kernel vectors have the hom rank")
}

/// A random graded map of the given degree with small entries.
pub fn random_graded_map(rng: &mut GenRng, x: &Arc<ChainComplex>, y: &Arc<ChainComplex>, degree: Degree, p: &Params) -> GradedMap {
    let (_, dim) = hom_layout(x, y, degree);
    let v: Vec<BigInt> = (0..dim).map(|_| small(rng, p.coeff)).collect();
    vector_to_map(x, y, degree, &v).expect("vector has the hom rank")
}

pub fn random_objects(rng: &mut GenRng, n: usize, p: &Params) -> Vec<Arc<ChainComplex>> {
    (0..=n).map(|i| random_complex(rng, &format!("X{i}"), p)).collect()
}

/// A random strict `n`-simplex for `n ≥ 1`.
pub fn random_strict_simplex(rng: &mut GenRng, n: usize, p: &Params) -> NerveSimplex {
    assert!(n >= 1, "strict simplices need at least one edge");
    let objects = random_objects(rng, n, p);
    let maps: Vec<GradedMap> = (0..n).map(|i| random_chain_map(rng, &objects[i], &objects[i + 1], p)).collect();
    make_strict(&maps).expect("generated maps are composable chain maps")
}

/// A random valid `n`-simplex whose free coherences are random graded maps.
pub fn random_perturbed_simplex(rng: &mut GenRng, n: usize, p: &Params) -> NerveSimplex {
    let objects = random_objects(rng, n, p);
    fill_simplex(rng, objects, p, true).expect("horn filling produces consistent maps")
}

/// A random valid simplex on the given objects. With `perturb` false the
/// free coherences are zero and the result is strict.
pub fn fill_simplex(rng: &mut GenRng, objects: Vec<Arc<ChainComplex>>, p: &Params, perturb: bool) -> Result<NerveSimplex> {
    let n = objects.len() - 1;
    let mut s = NerveSimplex::new(objects.clone(), BTreeMap::new())?;
    for i0 in (0..n).rev() {
        let seqs: Vec<Vec<usize>> = increasing_sequences(n, 2, n + 1).into_iter().filter(|q| q[0] == i0).collect();
        let (free, determined): (Vec<_>, Vec<_>) = seqs.into_iter().partition(|q| q[1] == i0 + 1);
        for q in free {
            let (x, y) = (&objects[q[0]], &objects[*q.last().unwrap()]);
            let f = if q.len() == 2 {
                random_chain_map(rng, x, y, p)
            } else if perturb {
                random_graded_map(rng, x, y, q.len() as Degree - 2, p)
            } else {
                GradedMap::zero(x.clone(), y.clone(), q.len() as Degree - 2)
            };
            s = s.with_cochain(q, f)?;
        }
        for q in determined {
            let f = solve_inner_horn(&s, &q)?;
            s = s.with_cochain(q, f)?;
        }
    }
    Ok(s)
}

/// The value at `q = ⟨i_0, i_1, …⟩` forced by the equation at
/// `⟨i_0, i_0+1, i_1, …⟩`, where `q` is the first inner face.
fn solve_inner_horn(s: &NerveSimplex, q: &[usize]) -> Result<GradedMap> {
    let mut top = vec![q[0], q[0] + 1];
    top.extend_from_slice(&q[1..]);
    let k = top.len() - 1;
    let mut f = s.eval_cochain(&top)?.hom_differential();
    for j in 2..k {
        let mut face = top.clone();
        face.remove(j);
        f = f.add(&s.eval_cochain(&face)?.scale(sign(j as i64)))?;
    }
    for j in 1..k {
        let term = s.eval_cochain(&top[j..])?.compose(&s.eval_cochain(&top[..=j])?)?;
        f = f.add(&term.scale(sign(((j - 1) * k) as i64)))?;
    }
    Ok(f)
}

/// A random valid simplex of dimension `n`, strict or perturbed.
pub fn random_simplex(rng: &mut GenRng, n: usize, perturbed: bool, p: &Params) -> NerveSimplex {
    if n == 0 {
        return NerveSimplex::point(random_complex(rng, "X0", p));
    }
    if perturbed {
        random_perturbed_simplex(rng, n, p)
    } else {
        random_strict_simplex(rng, n, p)
    }
}
