use num_traits::One;
use paramod_core::group::{member, member_tilde, random_element, sd_inverse, in_dpol, gens, tilde_inverse};
use paramod_core::oracle::random_sd;
use paramod_core::{GroupKind, Polarization};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TYPES: &[&[u64]] = &[&[1, 2], &[1, 3], &[1, 2, 6], &[1, 4, 24], &[1, 2, 6, 30], &[5]];

fn pol(i: usize) -> Polarization {
    Polarization::from_u64(TYPES[i % TYPES.len()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_elements_are_members(t in 0usize..6, k in 0usize..4, seed in any::<u64>(), len in 0usize..20) {
        let p = pol(t);
        let kind = GroupKind::ALL[k];
        let m = random_element(kind, &p, seed, len);
        prop_assert!(member(&m.matrix(), kind, &p).unwrap().is_member());
        prop_assert!(m.verify().unwrap().is_member());
        let inv = m.inverse().unwrap();
        prop_assert!(m.compose(&inv).unwrap().tilde().is_identity());
    }

    #[test]
    fn conj_lev_is_integral(t in 0usize..6, seed in any::<u64>(), len in 0usize..20) {
        let p = pol(t);
        let m = random_element(GroupKind::ConjPolLev, &p, seed, len);
        prop_assert!(m.matrix().to_integer().is_some());
    }

    #[test]
    fn sd_closed_under_inverse(t in 0usize..6, seed in any::<u64>(), steps in 0usize..12) {
        let p = pol(t);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_sd(&p, steps, &mut rng);
        prop_assert!(in_dpol(&s, &p));
        let inv = sd_inverse(&s, &p).unwrap();
        prop_assert!(in_dpol(&inv, &p));
        prop_assert!((&s * &inv).is_identity());
        let b = gens::block(&p, &s).unwrap();
        prop_assert!(member_tilde(&b, false, &p).unwrap().is_member());
    }

    #[test]
    fn tilde_inverse_matches_generic(t in 0usize..6, seed in any::<u64>(), len in 0usize..15) {
        let p = pol(t);
        let m = random_element(GroupKind::TildePol, &p, seed, len);
        let inv = tilde_inverse(m.tilde(), &p).unwrap();
        prop_assert_eq!(inv, m.tilde().inverse().unwrap());
    }
}

#[test]
fn plane_to_gcd_is_member() {
    let p = Polarization::from_u64(&[1, 2, 6]).unwrap();
    let m = gens::plane_to_gcd(&p, 2, &6.into(), &(-4).into());
    assert!(member_tilde(&m, false, &p).unwrap().is_member());
    assert!(m.det().unwrap().is_one());
}
