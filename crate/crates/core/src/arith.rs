//! Integer kernel: gcd machinery, the gcd combiner, the block-minor
//! divisibility test and lattice saturation.
//!
//! All gcds are nonnegative and `gcd(0, 0) = 0`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{row_hnf, IntMatrix};

pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Extended Euclid: returns `(g, s, t)` with `g = s*a + t*b` and `g >= 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Exact division; errors if `b` does not divide `a`.
pub fn exact_div(a: &BigInt, b: &BigInt) -> Result<BigInt> {
    if b.is_zero() {
        return Err(Error::Invariant(format!("division of {a} by zero")));
    }
    let (q, r) = a.div_rem(b);
    if !r.is_zero() {
        return Err(Error::Invariant(format!("{b} does not divide {a}")));
    }
    Ok(q)
}

pub fn divides(d: &BigInt, a: &BigInt) -> bool {
    if d.is_zero() {
        a.is_zero()
    } else {
        a.is_multiple_of(d)
    }
}

/// Largest divisor of `|n|` that is coprime to `m`. Contains every prime of
/// `n` that does not divide `m` and no prime that does.
pub fn coprime_part(n: &BigInt, m: &BigInt) -> BigInt {
    let mut t = n.abs();
    if t.is_zero() {
        return t;
    }
    loop {
        let h = t.gcd(m);
        if h.is_one() {
            return t;
        }
        t /= h;
    }
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    gcd_all(v).is_one()
}

/// Divides a nonzero vector by the gcd of its entries.
pub fn primitivize(v: &[BigInt]) -> Result<Vec<BigInt>> {
    let g = gcd_all(v);
    if g.is_zero() {
        return Err(Error::InvalidInput("zero vector has no primitive part".into()));
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Coefficients `alpha` with `gcd(x1, x2 + sum alpha_k * ys_k) = gcd(x1, x2, ys)`.
///
/// One `y` is absorbed at a time: after step `k`, `gcd(x1, x2')` already
/// equals `gcd(x1, x2, y_1..y_k)`, so the remaining `ys` can be folded the
/// same way.
pub fn gcd_combine(x1: &BigInt, x2: &BigInt, ys: &[BigInt]) -> Result<Vec<BigInt>> {
    if x1.is_zero() {
        return Err(Error::InvalidInput("gcd_combine needs x1 != 0".into()));
    }
    let mut acc = x2.clone();
    let mut alphas = Vec::with_capacity(ys.len());
    for y in ys {
        let alpha = combine_step(x1, &acc, y);
        acc += &alpha * y;
        alphas.push(alpha);
    }
    Ok(alphas)
}

/// A single `alpha` with `gcd(a, b + alpha*c) = gcd(a, b, c)` for `a != 0`.
pub(crate) fn combine_step(a: &BigInt, b: &BigInt, c: &BigInt) -> BigInt {
    let g = gcd_all([a, b, c]);
    if a.gcd(b) == g {
        return BigInt::zero();
    }
    let a1 = a / &g;
    let b1 = b / &g;
    // primes of a1 that miss b1 must not divide b1 + t*c1, the others must
    // not divide t; gcd(a1, b1, c1) = 1 settles both
    coprime_part(&a1, &b1).mod_floor(&a1.abs())
}

/// Whether `d | a_ij` for all `1 <= j <= k <= i <= g` (1-based), which
/// forces `d | det(a)`.
pub fn minor_divisibility_check(a: &IntMatrix, d: &BigInt, k: usize) -> Result<bool> {
    if !a.is_square() {
        return Err(Error::InvalidInput("matrix must be square".into()));
    }
    let g = a.rows();
    if k < 1 || k > g {
        return Err(Error::InvalidInput(format!("k = {k} outside 1..={g}")));
    }
    if !d.is_positive() {
        return Err(Error::InvalidInput("d must be positive".into()));
    }
    for i in k - 1..g {
        for j in 0..k {
            if !a[(i, j)].is_multiple_of(d) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A Z-basis of `(Q-span of rows) ∩ Z^n`, returned in row Hermite normal form.
///
/// Column operations bring the rows to `A*U = [H | 0]`; the first `r` rows of
/// `U^-1` then span a saturated lattice containing every input row.
pub fn saturate_lattice(rows: &IntMatrix) -> Result<IntMatrix> {
    let cols = row_hnf(&rows.transpose());
    let r = cols.rank;
    if r == 0 {
        return Err(Error::RankZero);
    }
    let inv_t = cols.transform_inv.transpose();
    let keep: Vec<usize> = (0..r).collect();
    let all: Vec<usize> = (0..rows.cols()).collect();
    let basis = inv_t.select(&keep, &all);
    Ok(row_hnf(&basis).hnf)
}

/// A unimodular matrix whose first row is the primitive vector `c`.
pub fn complete_to_unimodular(c: &[BigInt]) -> Result<IntMatrix> {
    if !is_primitive(c) {
        return Err(Error::NotPrimitive { gcd: gcd_all(c).to_string() });
    }
    let col = IntMatrix::from_rows(c.iter().map(|x| vec![x.clone()]).collect())?;
    // U*c^T = e_1, so c = e_1 * (U^-1)^T
    let d = row_hnf(&col);
    let m = d.transform_inv.transpose();
    debug_assert_eq!(m.row(0), c);
    Ok(m)
}

/// Whether every row of `a` is an integer combination of the rows of `basis`.
pub fn rows_in_lattice(a: &IntMatrix, basis: &IntMatrix) -> bool {
    let d = row_hnf(basis);
    (0..a.rows()).all(|i| reduce_by_hnf(a.row(i), &d.hnf, &d.pivots).iter().all(|x| x.is_zero()))
}

fn reduce_by_hnf(v: &[BigInt], hnf: &IntMatrix, pivots: &[usize]) -> Vec<BigInt> {
    let mut v = v.to_vec();
    for (p, &col) in pivots.iter().enumerate() {
        let (q, _) = v[col].div_mod_floor(&hnf[(p, col)]);
        if q.is_zero() {
            continue;
        }
        for (x, h) in v.iter_mut().zip(hnf.row(p)) {
            *x -= &q * h;
        }
    }
    v
}

/// Prime factors of a positive integer, by trial division. Only used on
/// polarization data, which is small.
pub fn prime_factors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if n.is_multiple_of(&p) {
            out.push(p.clone());
            while n.is_multiple_of(&p) {
                n /= &p;
            }
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Positive divisors of a nonzero integer, increasing.
pub fn divisors_of(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = vec![BigInt::one()];
    for p in prime_factors(&n) {
        let mut m = n.clone();
        let mut k = 0;
        while m.is_multiple_of(&p) {
            m /= &p;
            k += 1;
        }
        let mut next = Vec::with_capacity(out.len() * (k + 1));
        for d in &out {
            let mut pow = d.clone();
            for _ in 0..=k {
                next.push(pow.clone());
                pow *= &p;
            }
        }
        out = next;
    }
    out.sort();
    out
}

pub fn is_square_free(n: &BigInt) -> bool {
    prime_factors(n).iter().all(|p| !n.is_multiple_of(&(p * p)))
}
