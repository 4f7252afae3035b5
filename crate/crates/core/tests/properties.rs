mod common;

use std::sync::Arc;

use dgframes::complex::{hom_differential_matrix, homology, is_weak_equivalence, shift, GradedMap};
use dgframes::frames::{
    build_unchecked, check_d_squared, check_functoriality, check_last_vertex_retraction, check_latching,
    check_simplicial_compat, FrameDiagram,
};
use dgframes::gen::{random_chain_map, random_complex, random_graded_map, random_simplex, rng, Params};
use dgframes::linalg::{self, IntMatrix};
use dgframes::nerve::act;
use dgframes::simplicial::{
    cell_comult, cell_diff, enumerate_d_objects, is_weak_equivalence_d, morphisms_into, path_comult, path_diff,
    reindex_cell, CellChain, FormalChain, OrderMap, PathChain,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn matrix(max: usize) -> impl Strategy<Value = IntMatrix> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-4i64..=4, r * c)
            .prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| BigInt::from(v[i * c + j])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalisation(m in matrix(5)) {
        let f = linalg::snf(&m);
        prop_assert_eq!(&(&f.u * &m) * &f.v, f.s.clone());
        prop_assert!(f.u.determinant().unwrap().abs() == BigInt::from(1));
        prop_assert!(f.v.determinant().unwrap().abs() == BigInt::from(1));
        let d = f.invariant_factors();
        for w in d.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        for i in 0..f.s.rows() {
            for j in 0..f.s.cols() {
                if i != j {
                    prop_assert!(f.s.get(i, j).is_zero());
                }
            }
        }
        prop_assert!(d.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn solve_and_kernel(m in matrix(5), x in proptest::collection::vec(-3i64..=3, 5)) {
        let x: Vec<BigInt> = x.into_iter().take(m.cols()).map(BigInt::from).collect();
        if x.len() == m.cols() {
            let b = m.mul_vec(&x).unwrap();
            let y = linalg::solve(&m, &b).unwrap().expect("b is in the image");
            prop_assert_eq!(m.mul_vec(&y).unwrap(), b);
        }
        let k = linalg::kernel_basis(&m);
        prop_assert_eq!(k.len(), m.cols() - linalg::rank(&m));
        for v in k {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn hom_differential_squares_to_zero(seed in any::<u64>(), n in -2i64..=2) {
        let p = Params::default();
        let mut r = rng(seed);
        let x = random_complex(&mut r, "X", &p);
        let y = random_complex(&mut r, "Y", &p);
        let f = random_graded_map(&mut r, &x, &y, n, &p);
        prop_assert!(f.hom_differential().hom_differential().is_zero());
        let d1 = hom_differential_matrix(&x, &y, n);
        let d0 = hom_differential_matrix(&x, &y, n - 1);
        prop_assert!((&d0 * &d1).is_zero());
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>(), a in -1i64..=1, b in -1i64..=1) {
        let p = Params::default();
        let mut r = rng(seed);
        let x = random_complex(&mut r, "X", &p);
        let y = random_complex(&mut r, "Y", &p);
        let z = random_complex(&mut r, "Z", &p);
        let f = random_graded_map(&mut r, &x, &y, a, &p);
        let g = random_graded_map(&mut r, &y, &z, b, &p);
        // D(g∘f) = D(g)∘f + (−1)^|g| g∘D(f)
        let lhs = g.compose(&f).unwrap().hom_differential();
        let s = if b % 2 == 0 { 1 } else { -1 };
        let rhs = g.hom_differential().compose(&f).unwrap().add(&g.compose(&f.hom_differential()).unwrap().scale(s)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_preserves_homology_up_to_reindexing(seed in any::<u64>(), n in -3i64..=3) {
        let mut r = rng(seed);
        let x = random_complex(&mut r, "X", &Params::default());
        let h = homology(&x);
        let hs = homology(&shift(&x, n));
        for (d, g) in &h.groups {
            prop_assert_eq!(&hs.group(d + n), g);
        }
        prop_assert_eq!(h.groups.len(), hs.groups.len());
    }

    #[test]
    fn cone_criterion_agrees_with_homotopy_inverse(seed in any::<u64>()) {
        let p = Params::default();
        let mut r = rng(seed);
        let x = random_complex(&mut r, "X", &p);
        let y = random_complex(&mut r, "Y", &p);
        let f = random_chain_map(&mut r, &x, &y, &p);
        prop_assert_eq!(is_weak_equivalence(&f).unwrap(), common::has_homotopy_inverse(&f));
    }

    #[test]
    fn action_is_functorial(seed in any::<u64>(), n in 0usize..=3, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let p = Params::default();
        let s = random_simplex(&mut rng(seed), n, true, &p);
        let sigmas: Vec<OrderMap> = (0..=3).flat_map(|m| enumerate_d_objects(n, 3).into_iter().filter(move |o| o.dim() == m)).collect();
        let sigma = i.get(&sigmas);
        let taus = enumerate_d_objects(sigma.dim(), 3);
        let tau = j.get(&taus);
        let lhs = act(tau, &act(sigma, &s).unwrap()).unwrap();
        let rhs = act(&sigma.compose(tau).unwrap(), &s).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(lhs.is_valid());
    }

    #[test]
    fn frame_objects_satisfy_every_local_check(seed in any::<u64>(), n in 0usize..=3, perturbed in any::<bool>()) {
        let s = Arc::new(random_simplex(&mut rng(seed), n, perturbed, &Params::default()));
        for alpha in enumerate_d_objects(n, 2) {
            let o = build_unchecked(s.clone(), &alpha).unwrap();
            prop_assert!(check_d_squared(&o).passed());
            prop_assert!(check_latching(&o).passed());
            prop_assert!(check_last_vertex_retraction(&o).unwrap().passed());
        }
    }

    #[test]
    fn diagrams_are_functorial(seed in any::<u64>(), n in 0usize..=2) {
        let s = random_simplex(&mut rng(seed), n, true, &Params::default());
        let d = FrameDiagram::build(&s, 3).unwrap();
        prop_assert!(check_functoriality(&d).passed());
    }

    #[test]
    fn pullback_commutes_with_resolution(seed in any::<u64>(), n in 0usize..=2, i in any::<prop::sample::Index>()) {
        let s = random_simplex(&mut rng(seed), n, true, &Params::default());
        let sigmas = enumerate_d_objects(n, 2);
        prop_assert!(check_simplicial_compat(i.get(&sigmas), &s, 3).unwrap().passed());
    }
}

fn tensor_diff(t: &FormalChain<(Vec<usize>, Vec<usize>)>, left: impl Fn(&Vec<usize>) -> FormalChain<Vec<usize>>) -> FormalChain<(Vec<usize>, Vec<usize>)> {
    // (d ⊗ 1 + 1 ⊗ d)(x ⊗ y) = dx ⊗ y + (−1)^{|x|} x ⊗ dy
    t.map_linear(|(x, y)| {
        let mut out = FormalChain::zero();
        for (dx, c) in left(x).terms() {
            out.add_term((dx.clone(), y.clone()), c.clone());
        }
        let s = if (x.len() - 1) % 2 == 0 { 1 } else { -1 };
        for (dy, c) in path_diff(&PathChain::basis(y.clone())).unwrap().terms() {
            out.add_term((x.clone(), dy.clone()), c * BigInt::from(s));
        }
        out
    })
}

fn all_sequences(n: usize, min_len: usize, max_len: usize) -> Vec<Vec<usize>> {
    enumerate_d_objects(n, max_len - 1).into_iter().map(|o| o.values().to_vec()).filter(|v| v.len() >= min_len).collect()
}

#[test]
fn path_coalgebra_axioms_exhaustive() {
    for n in 0..=3 {
        for seq in all_sequences(n, 2, 6) {
            let x = PathChain::basis(seq.clone());
            let dx = path_diff(&x).unwrap();
            if !dx.is_zero() {
                assert!(path_diff(&dx).unwrap().is_zero(), "d² at {seq:?}");
            }
            let delta = path_comult(&x).unwrap();
            // (Δ ⊗ 1)Δ = (1 ⊗ Δ)Δ
            let left = delta.map_linear(|(a, b)| {
                let mut out = FormalChain::zero();
                if a.len() >= 2 {
                    for ((a1, a2), c) in path_comult(&PathChain::basis(a.clone())).unwrap().terms() {
                        out.add_term((a1.clone(), a2.clone(), b.clone()), c.clone());
                    }
                }
                out
            });
            let right = delta.map_linear(|(a, b)| {
                let mut out = FormalChain::zero();
                if b.len() >= 2 {
                    for ((b1, b2), c) in path_comult(&PathChain::basis(b.clone())).unwrap().terms() {
                        out.add_term((a.clone(), b1.clone(), b2.clone()), c.clone());
                    }
                }
                out
            });
            assert_eq!(left, right, "coassociativity at {seq:?}");
            // Δ d = (d ⊗ 1 + 1 ⊗ d) Δ
            let lhs = if dx.is_zero() { FormalChain::zero() } else { path_comult(&dx).unwrap() };
            let rhs = tensor_diff(&delta, |a| if a.len() >= 2 { path_diff(&PathChain::basis(a.clone())).unwrap() } else { FormalChain::zero() });
            assert_eq!(lhs, rhs, "co-Leibniz at {seq:?}");
        }
    }
}

#[test]
fn cell_comodule_axioms_exhaustive() {
    for n in 0..=2 {
        for alpha in enumerate_d_objects(n, 3) {
            for key in dgframes::simplicial::nonempty_subsets(alpha.dim() + 1) {
                let c = CellChain::basis(key.clone());
                let d = cell_diff(&alpha, &c).unwrap();
                if !d.is_zero() {
                    assert!(cell_diff(&alpha, &d).unwrap().is_zero());
                }
                let delta = cell_comult(&alpha, &c).unwrap();
                // coaction is coassociative against the path comultiplication
                let left = delta.map_linear(|(s, p)| {
                    let mut out = FormalChain::zero();
                    for ((s1, p1), c) in cell_comult(&alpha, &CellChain::basis(s.clone())).unwrap().terms() {
                        out.add_term((s1.clone(), p1.clone(), p.clone()), c.clone());
                    }
                    out
                });
                let right = delta.map_linear(|(s, p)| {
                    let mut out = FormalChain::zero();
                    if p.len() >= 2 {
                        for ((p1, p2), c) in path_comult(&PathChain::basis(p.clone())).unwrap().terms() {
                            out.add_term((s.clone(), p1.clone(), p2.clone()), c.clone());
                        }
                    }
                    out
                });
                assert_eq!(left, right, "coaction at {alpha:?} {key:?}");
                // compatibility of the coaction with the differentials
                let lhs = if d.is_zero() { FormalChain::zero() } else { cell_comult(&alpha, &d).unwrap() };
                let rhs = tensor_diff(&delta, |s| cell_diff(&alpha, &CellChain::basis(s.clone())).unwrap());
                assert_eq!(lhs, rhs, "differential at {alpha:?} {key:?}");
            }
        }
    }
}

#[test]
fn reindexing_is_a_comodule_map() {
    for n in 0..=2 {
        for alpha in enumerate_d_objects(n, 2) {
            for sigma in enumerate_d_objects(n + 1, n).into_iter().filter(|s| s.dim() == n) {
                let r = reindex_cell(&sigma, &alpha).unwrap();
                for key in dgframes::simplicial::nonempty_subsets(alpha.dim() + 1) {
                    let c = CellChain::basis(key.clone());
                    let pushed = cell_comult(&alpha, &c).unwrap().map_linear(|(s, p)| {
                        FormalChain::basis((s.clone(), sigma.restrict(p).values().to_vec()))
                    });
                    let direct = cell_comult(&r.to, &r.apply(&c).unwrap()).unwrap();
                    assert_eq!(pushed, direct);
                }
            }
        }
    }
}

#[test]
fn weak_equivalences_in_d_satisfy_two_out_of_six() {
    let objects = enumerate_d_objects(2, 3);
    let mut arrows = Vec::new();
    for t in &objects {
        arrows.extend(morphisms_into(t));
    }
    for f in &arrows {
        for g in arrows.iter().filter(|g| g.src() == f.tgt()) {
            for h in arrows.iter().filter(|h| h.src() == g.tgt()) {
                let gf = g.compose(f).unwrap();
                let hg = h.compose(g).unwrap();
                if is_weak_equivalence_d(&gf) && is_weak_equivalence_d(&hg) {
                    let hgf = h.compose(&gf).unwrap();
                    assert!(is_weak_equivalence_d(f) && is_weak_equivalence_d(g) && is_weak_equivalence_d(h) && is_weak_equivalence_d(&hgf));
                }
            }
        }
    }
}

#[test]
fn structure_maps_are_chain_maps() {
    let s = random_simplex(&mut rng(9), 2, true, &Params::default());
    let d = FrameDiagram::build(&s, 3).unwrap();
    for m in d.morphisms() {
        let f: &GradedMap = d.structure_map(m).unwrap();
        assert!(f.is_chain_map());
    }
}
