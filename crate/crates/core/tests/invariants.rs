use num_bigint::BigInt;
use num_traits::One;
use paramod_core::arith::gcd;
use paramod_core::group::random_element;
use paramod_core::invariants::{divisors, ideal_generator, tuple_feasible, tuple_from_product, witness_vector};
use paramod_core::oracle::random_primitive;
use paramod_core::{GroupKind, Polarization};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TYPES: &[&[u64]] = &[&[1, 2], &[1, 4], &[1, 2, 6], &[1, 4, 24], &[1, 2, 4], &[1, 3, 6, 30], &[1, 1, 5]];

fn pol(i: usize) -> Polarization {
    Polarization::from_u64(TYPES[i % TYPES.len()]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn divisors_are_orbit_invariant(t in 0usize..7, seed in any::<u64>(), len in 0usize..20) {
        let p = pol(t);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_primitive(p.genus(), 30, &mut rng);
        let m = random_element(GroupKind::TildePol, &p, seed, len);
        let w = m.act(&v).unwrap();
        prop_assert_eq!(divisors(&w, &p).unwrap(), divisors(&v, &p).unwrap());
    }

    #[test]
    fn ideal_identity_holds(t in 0usize..7, seed in any::<u64>()) {
        let p = pol(t);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_primitive(p.genus(), 50, &mut rng);
        let gen = ideal_generator(&v, &p).unwrap();
        let d = divisors(&v, &p).unwrap();
        for i in 1..p.genus() {
            prop_assert_eq!(&gcd(p.d(i), &(&gen / d.range(1, i - 1))), d.at(i));
        }
    }

    #[test]
    fn divisors_are_feasible_and_witnessed(t in 0usize..7, seed in any::<u64>()) {
        let p = pol(t);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = random_primitive(p.genus(), 50, &mut rng);
        let d = divisors(&v, &p).unwrap();
        prop_assert!(tuple_feasible(d.values(), &p).unwrap());
        prop_assert_eq!(&tuple_from_product(d.product(), &p).unwrap(), &d);
        let w = witness_vector(&d, &p).unwrap();
        prop_assert_eq!(divisors(&w, &p).unwrap(), d);
    }
}

#[test]
fn unit_vectors_have_known_divisors() {
    let p = Polarization::from_u64(&[1, 2, 6]).unwrap();
    let e1 = paramod_core::SympVector::unit(3, 1);
    assert!(divisors(&e1, &p).unwrap().product().is_one());
    let e3 = paramod_core::SympVector::unit(3, 3);
    assert_eq!(divisors(&e3, &p).unwrap().product(), &BigInt::from(6));
}
