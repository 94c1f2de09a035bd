//! Divisor invariants `D_i(v)` of primitive vectors, the ideal `(v, Λ)` and
//! the combinatorics of divisor tuples.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{exact_div, gcd, gcd_all};
use crate::error::{Error, Result};
use crate::polarization::Polarization;
use crate::vector::SympVector;

/// `(D_1, ..., D_{g-1})` together with its product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorTuple {
    #[serde(rename = "D", with = "crate::ints::big_vec")]
    d: Vec<BigInt>,
    #[serde(with = "crate::ints::big")]
    product: BigInt,
}

impl DivisorTuple {
    /// Checks feasibility against `p`.
    pub fn new(d: Vec<BigInt>, p: &Polarization) -> Result<Self> {
        if !tuple_feasible(&d, p)? {
            return Err(Error::Infeasible {
                tuple: d.iter().map(|x| x.to_string()).collect(),
                reason: "needs D_i | d_i and gcd(d_i/D_i, D_j) = 1 for i < j".into(),
            });
        }
        Ok(Self::unchecked(d))
    }

    pub(crate) fn unchecked(d: Vec<BigInt>) -> Self {
        let product = d.iter().product();
        DivisorTuple { d, product }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.d
    }

    /// `D_i`, 1-based.
    pub fn at(&self, i: usize) -> &BigInt {
        &self.d[i - 1]
    }

    pub fn product(&self) -> &BigInt {
        &self.product
    }

    /// `D_{i..j} = D_i ... D_j`, 1-based, and 1 for `i > j`.
    pub fn range(&self, i: usize, j: usize) -> BigInt {
        if i > j {
            return BigInt::one();
        }
        self.d[i - 1..j].iter().product()
    }
}

/// `D_i(v)` for a primitive `v`.
pub fn divisors(v: &SympVector, p: &Polarization) -> Result<DivisorTuple> {
    check_dim(v, p)?;
    v.require_primitive()?;
    let g = p.genus();
    let pairs: Vec<BigInt> = (1..=g).map(|j| v.pair_gcd(j)).collect();
    let mut d: Vec<BigInt> = Vec::with_capacity(g.saturating_sub(1));
    for i in 1..g {
        let mut acc = p.d(i).clone();
        // D_{j..i-1} for j = i, i-1, ..., 1
        let mut tail = BigInt::one();
        for j in (1..=i).rev() {
            if j < i {
                tail *= &d[j - 1];
            }
            acc = gcd(&acc, &exact_div(&pairs[j - 1], &tail)?);
        }
        d.push(acc);
    }
    let t = DivisorTuple::unchecked(d);
    debug_assert!(tuple_feasible(t.values(), p).unwrap());
    Ok(t)
}

/// Positive generator of `(v, Λ) = { <v, l> : l in Z^{2g} }`.
pub fn ideal_generator(v: &SympVector, p: &Polarization) -> Result<BigInt> {
    check_dim(v, p)?;
    if v.is_zero() {
        return Err(Error::InvalidInput("zero vector has no ideal generator".into()));
    }
    let g = p.genus();
    let terms: Vec<BigInt> =
        (0..g).flat_map(|i| [&p.e()[i] * v.at(i + 1), &p.e()[i] * v.at(g + i + 1)]).collect();
    let gen = gcd_all(&terms);
    if v.is_primitive() && g >= 2 {
        let t = divisors(v, p)?;
        for i in 1..g {
            let rhs = gcd(p.d(i), &exact_div(&gen, &t.range(1, i - 1))?);
            if &rhs != t.at(i) {
                return Err(Error::Invariant(format!("ideal identity fails at i={i} for {v}")));
            }
        }
    }
    Ok(gen)
}

pub fn tuple_feasible(d: &[BigInt], p: &Polarization) -> Result<bool> {
    let g = p.genus();
    if d.len() != g.saturating_sub(1) {
        return Err(Error::Dimension { expected: g.saturating_sub(1), got: d.len() });
    }
    if d.iter().any(|x| x <= &BigInt::zero()) {
        return Err(Error::InvalidInput("divisors must be positive".into()));
    }
    for i in 0..d.len() {
        let di = p.ds()[i].clone();
        if !di.is_multiple_of(&d[i]) {
            return Ok(false);
        }
        let q = &di / &d[i];
        if d[i + 1..].iter().any(|dj| !q.gcd(dj).is_one()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(D_{1..g-1}, D_{2..g-1}, ..., D_{g-1}, 1, 0, ..., 0)`.
pub fn witness_vector(t: &DivisorTuple, p: &Polarization) -> Result<SympVector> {
    if !tuple_feasible(t.values(), p)? {
        return Err(Error::Infeasible {
            tuple: t.values().iter().map(|x| x.to_string()).collect(),
            reason: "tuple is not feasible".into(),
        });
    }
    let g = p.genus();
    let mut e = vec![BigInt::zero(); 2 * g];
    for i in 1..=g {
        e[i - 1] = t.range(i, g - 1);
    }
    let v = SympVector::new(e)?;
    let back = divisors(&v, p)?;
    if &back != t {
        return Err(Error::Invariant(format!("witness {v} has divisors {:?}", back.values())));
    }
    Ok(v)
}

/// Recovers the tuple from its product: `D_1 = gcd(d_1, P)`, then recurse
/// on `P / D_1`.
pub fn tuple_from_product(product: &BigInt, p: &Polarization) -> Result<DivisorTuple> {
    let g = p.genus();
    let bound = p.dsum_unchecked(1, g - 1);
    if product <= &BigInt::zero() || !bound.is_multiple_of(product) {
        return Err(Error::InvalidProduct { product: product.to_string(), bound: bound.to_string() });
    }
    let mut rest = product.clone();
    let mut d = Vec::with_capacity(g - 1);
    for di in p.ds() {
        let x = gcd(di, &rest);
        rest /= &x;
        d.push(x);
    }
    if !rest.is_one() {
        return Err(Error::Invariant(format!("product {product} not exhausted, {rest} left")));
    }
    DivisorTuple::new(d, p)
}

/// Every feasible tuple, ordered by product.
pub fn feasible_tuples(p: &Polarization) -> Vec<DivisorTuple> {
    let g = p.genus();
    let bound = p.dsum_unchecked(1, g - 1);
    crate::arith::divisors_of(&bound)
        .into_iter()
        .map(|n| tuple_from_product(&n, p).expect("divisor of dsum(1, g-1)"))
        .collect()
}

fn check_dim(v: &SympVector, p: &Polarization) -> Result<()> {
    if v.genus() != p.genus() {
        return Err(Error::Dimension { expected: 2 * p.genus(), got: v.entries().len() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol(e: &[u64]) -> Polarization {
        Polarization::from_u64(e).unwrap()
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn bs(x: &[i64]) -> Vec<BigInt> {
        x.iter().map(|&y| b(y)).collect()
    }

    fn v(x: &[i64]) -> SympVector {
        SympVector::from_i64(x)
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(&v(&[6, 3, 1, 0, 0, 0]), &pol(&[1, 4, 24])).unwrap().values(), &bs(&[2, 3]));
        assert_eq!(divisors(&v(&[1, 0, 0, 0, 0, 0]), &pol(&[1, 2, 6])).unwrap().values(), &bs(&[1, 1]));
        let t = divisors(&v(&[0, 0, 1, 0, 0, 0]), &pol(&[1, 2, 6])).unwrap();
        assert_eq!(t.values(), &bs(&[2, 3]));
        assert_eq!(t.product(), &b(6));
        assert!(matches!(divisors(&v(&[2, 0, 0, 0, 0, 0]), &pol(&[1, 2, 6])), Err(Error::NotPrimitive { .. })));
        let t1 = divisors(&v(&[3, 1]), &pol(&[7])).unwrap();
        assert!(t1.values().is_empty());
        assert_eq!(t1.product(), &b(1));
    }

    #[test]
    fn ideal_examples() {
        assert_eq!(ideal_generator(&v(&[2, 1, 1, 0, 0, 0]), &pol(&[1, 2, 6])).unwrap(), b(2));
        assert_eq!(ideal_generator(&v(&[1, 0, 0, 0]), &pol(&[1, 2])).unwrap(), b(1));
        assert_eq!(ideal_generator(&v(&[0, 0, 1, 0, 0, 0]), &pol(&[1, 4, 24])).unwrap(), b(24));
        assert!(ideal_generator(&v(&[0, 0, 0, 0]), &pol(&[1, 2])).is_err());
    }

    #[test]
    fn feasibility_examples() {
        let p = pol(&[1, 4, 24]);
        assert!(!tuple_feasible(&bs(&[2, 2]), &p).unwrap());
        assert!(tuple_feasible(&bs(&[2, 3]), &p).unwrap());
        assert!(tuple_feasible(&bs(&[1, 1]), &p).unwrap());
        assert!(tuple_feasible(&bs(&[1, 1]), &pol(&[1, 1, 1])).unwrap());
        assert!(tuple_feasible(&bs(&[1]), &p).is_err());
    }

    #[test]
    fn witness_examples() {
        let p = pol(&[1, 4, 24]);
        let t = DivisorTuple::new(bs(&[2, 3]), &p).unwrap();
        assert_eq!(witness_vector(&t, &p).unwrap(), v(&[6, 3, 1, 0, 0, 0]));
        let one = DivisorTuple::new(bs(&[1, 1]), &p).unwrap();
        assert_eq!(witness_vector(&one, &p).unwrap(), v(&[1, 1, 1, 0, 0, 0]));
        let q = pol(&[1, 2, 6]);
        let t = DivisorTuple::new(bs(&[2, 3]), &q).unwrap();
        assert_eq!(witness_vector(&t, &q).unwrap(), v(&[6, 3, 1, 0, 0, 0]));
        assert!(matches!(DivisorTuple::new(bs(&[2, 2]), &p), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn product_examples() {
        let p = pol(&[1, 4, 24]);
        assert_eq!(tuple_from_product(&b(6), &p).unwrap().values(), &bs(&[2, 3]));
        assert_eq!(tuple_from_product(&b(1), &p).unwrap().values(), &bs(&[1, 1]));
        assert_eq!(tuple_from_product(&b(8), &p).unwrap().values(), &bs(&[4, 2]));
        assert!(matches!(tuple_from_product(&b(5), &p), Err(Error::InvalidProduct { .. })));
        assert_eq!(feasible_tuples(&p).len(), 8);
    }

    /// Feasible tuples found by scanning every `D_i | d_i`.
    fn feasible_by_scan(p: &Polarization) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = vec![vec![]];
        for di in p.ds() {
            let divs = crate::arith::divisors_of(di);
            out = out
                .into_iter()
                .flat_map(|pre| divs.iter().map(move |x| [pre.clone(), vec![x.clone()]].concat()))
                .collect();
        }
        out.retain(|d| tuple_feasible(d, p).unwrap());
        out
    }

    #[test]
    fn feasible_tuples_match_scan() {
        for e in [&[1u64, 4, 24][..], &[1, 2, 6], &[1, 2, 4], &[1, 6, 36, 72], &[1, 1]] {
            let p = pol(e);
            let mut scan = feasible_by_scan(&p);
            let mut fast: Vec<Vec<BigInt>> = feasible_tuples(&p).iter().map(|t| t.values().to_vec()).collect();
            scan.sort();
            fast.sort();
            assert_eq!(scan, fast, "{p}");
        }
    }
}
