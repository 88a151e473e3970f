use std::sync::Arc;

use hnd_core::adlv_oracle::DlOracle;
use hnd_core::affine_weyl::{AffineWeyl, Elt};
use hnd_core::frobenius::enumerate_sigmas;
use hnd_core::hn_theory::build_group;
use hnd_core::sigma_conj::{is_straight, is_straight_by_powers, kottwitz, newton_vector, sigma_conjugate};
use hnd_core::CartanType;
use proptest::prelude::*;

fn group(i: usize) -> Arc<AffineWeyl> {
    let (t, r) = [(CartanType::A, 2), (CartanType::C, 2), (CartanType::B, 3), (CartanType::D, 4)][i];
    build_group(t, r).unwrap()
}

fn element(g: &AffineWeyl, omega: usize, word: &[usize]) -> Elt {
    let om = g.omega_elements();
    word.iter().fold(om[omega % om.len()].clone(), |x, &i| g.left_mul_simple(i % (g.rank() + 1), &x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms(gi in 0..4usize, o in 0..4usize, a in prop::collection::vec(0..8usize, 0..10),
                    b in prop::collection::vec(0..8usize, 0..10), c in prop::collection::vec(0..8usize, 0..10)) {
        let g = group(gi);
        let (x, y, z) = (element(&g, o, &a), element(&g, 0, &b), element(&g, 0, &c));
        prop_assert_eq!(g.mul(&g.mul(&x, &y), &z), g.mul(&x, &g.mul(&y, &z)));
        prop_assert_eq!(g.mul(&x, &g.inverse(&x)), g.identity());
        prop_assert_eq!(g.length(&x), g.length_im(&x));
        prop_assert_eq!(g.parse(&g.format(&x)).unwrap(), x);
    }

    #[test]
    fn bruhat_subword(gi in 0..2usize, a in prop::collection::vec(0..8usize, 0..6), b in prop::collection::vec(0..8usize, 0..6)) {
        let g = group(gi);
        let (x, y) = (element(&g, 0, &a), element(&g, 0, &b));
        prop_assert_eq!(g.bruhat_leq(&x, &y), g.ideal_subword(&y).contains(&x));
        prop_assert_eq!(g.ideal_subword(&y), g.ideal_bfs(&y));
    }

    #[test]
    fn sigma_invariants(gi in 0..4usize, si in 0..8usize, o in 0..4usize,
                        a in prop::collection::vec(0..8usize, 0..8), b in prop::collection::vec(0..8usize, 0..8)) {
        let g = group(gi);
        let sigmas = enumerate_sigmas(&g);
        let s = &sigmas[si % sigmas.len()];
        let (x, y) = (element(&g, o, &a), element(&g, 0, &b));
        prop_assert_eq!(g.length(&s.apply(&x)), g.length(&x));
        let c = sigma_conjugate(s, &y, &x);
        prop_assert_eq!(newton_vector(s, &c).nu_bar, newton_vector(s, &x).nu_bar);
        prop_assert_eq!(kottwitz(s, &c), kottwitz(s, &x));
        prop_assert_eq!(is_straight(s, &x), is_straight_by_powers(s, &x, 12));
    }

    #[test]
    fn dl_reduction_paths_agree(si in 0..4usize, o in 0..4usize, a in prop::collection::vec(0..8usize, 0..7)) {
        let g = group(0);
        let mut sigmas = enumerate_sigmas(&g);
        let s = Arc::new(sigmas.swap_remove(si % sigmas.len()));
        let x = element(&g, o, &a);
        prop_assert!(DlOracle::new(s).dl_dimension(&x).is_ok());
    }
}
