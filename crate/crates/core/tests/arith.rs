use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use paramod_core::arith::{
    complete_to_unimodular, gcd, gcd_all, gcd_combine, minor_divisibility_check, rows_in_lattice, saturate_lattice,
};
use paramod_core::IntMatrix;
use proptest::prelude::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn gcd_combine_reaches_full_gcd(x1 in -500i64..500, x2 in -500i64..500, ys in prop::collection::vec(-500i64..500, 0..5)) {
        prop_assume!(x1 != 0);
        let (x1, x2, ys) = (BigInt::from(x1), BigInt::from(x2), big(&ys));
        let alpha = gcd_combine(&x1, &x2, &ys).unwrap();
        let comb = &x2 + alpha.iter().zip(&ys).map(|(a, y)| a * y).sum::<BigInt>();
        let all: Vec<BigInt> = [x1.clone(), x2.clone()].into_iter().chain(ys.iter().cloned()).collect();
        prop_assert_eq!(gcd(&x1, &comb), gcd_all(&all));
    }

    #[test]
    fn minor_divisibility_implies_det(d in 1i64..30, k in 1usize..5, entries in prop::collection::vec(-20i64..20, 16)) {
        let g = 4;
        let mut rows = vec![vec![BigInt::zero(); g]; g];
        for i in 0..g {
            for j in 0..g {
                let mut x = BigInt::from(entries[i * g + j]);
                if j < k && i + 1 >= k {
                    x *= d;
                }
                rows[i][j] = x;
            }
        }
        let a = IntMatrix::from_rows(rows).unwrap();
        let d = BigInt::from(d);
        prop_assert!(minor_divisibility_check(&a, &d, k).unwrap());
        prop_assert!(a.det().unwrap().is_multiple_of(&d));
    }

    #[test]
    fn saturation_contains_input(entries in prop::collection::vec(-6i64..6, 8)) {
        let a = IntMatrix::from_rows(entries.chunks(4).map(big).collect()).unwrap();
        prop_assume!(entries.iter().any(|&x| x != 0));
        let s = saturate_lattice(&a).unwrap();
        prop_assert!(rows_in_lattice(&a, &s));
        // saturated: scaling a row of s by 1/p never lands in Z^n unless it already did
        for i in 0..s.rows() {
            prop_assert!(gcd_all(s.row(i)).is_one());
        }
    }

    #[test]
    fn completion_is_unimodular(c in prop::collection::vec(-40i64..40, 1..6)) {
        let c = big(&c);
        prop_assume!(gcd_all(&c).is_one());
        let m = complete_to_unimodular(&c).unwrap();
        prop_assert_eq!(m.row(0), &c[..]);
        prop_assert!(m.det().unwrap().abs().is_one());
    }
}

#[test]
fn gcd_combine_needs_nonzero_x1() {
    assert!(gcd_combine(&BigInt::zero(), &BigInt::one(), &[]).is_err());
}
