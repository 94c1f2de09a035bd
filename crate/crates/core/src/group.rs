//! The skew form, membership predicates for the four paramodular groups,
//! the triangular ring `D(Δ)`, explicit generator families and seeded
//! random words.
//!
//! The form is `<x, y> = x Λ y^T` with `Λ = [[0, Δ], [-Δ, 0]]` and
//! `Δ = diag(e_1, ..., e_g)`. Groups act on row vectors from the right.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{exact_div, ext_gcd};
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::polarization::Polarization;
use crate::vector::SympVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    /// Integer matrices preserving `Λ`.
    TildePol,
    /// The subgroup acting trivially on the discriminant group.
    TildePolLev,
    /// `R^{-1} Γ R` for `Γ = TildePol`, with `R = diag(1, Δ)`.
    ConjPol,
    /// `R^{-1} Γ R` for `Γ = TildePolLev`.
    ConjPolLev,
}

impl GroupKind {
    pub const ALL: [GroupKind; 4] =
        [GroupKind::TildePol, GroupKind::TildePolLev, GroupKind::ConjPol, GroupKind::ConjPolLev];

    pub fn is_level(self) -> bool {
        matches!(self, GroupKind::TildePolLev | GroupKind::ConjPolLev)
    }

    pub fn is_conjugated(self) -> bool {
        matches!(self, GroupKind::ConjPol | GroupKind::ConjPolLev)
    }

    /// The integral group this kind is conjugate to.
    pub fn tilde(self) -> GroupKind {
        if self.is_level() {
            GroupKind::TildePolLev
        } else {
            GroupKind::TildePol
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::TildePol => "tilde-pol",
            GroupKind::TildePolLev => "tilde-pol-lev",
            GroupKind::ConjPol => "conj-pol",
            GroupKind::ConjPolLev => "conj-pol-lev",
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tilde-pol" | "pol" => Ok(GroupKind::TildePol),
            "tilde-pol-lev" | "lev" => Ok(GroupKind::TildePolLev),
            "conj-pol" => Ok(GroupKind::ConjPol),
            "conj-pol-lev" => Ok(GroupKind::ConjPolLev),
            _ => Err(Error::InvalidInput(format!("unknown group {s:?}"))),
        }
    }
}

/// First condition a matrix fails. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    NonInteger { row: usize, col: usize },
    Determinant { det: String },
    Form { row: usize, col: usize },
    Level { row: usize, col: usize, modulus: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonInteger { row, col } => write!(f, "entry ({row},{col}) is not an integer"),
            Violation::Determinant { det } => write!(f, "determinant is {det}, not 1"),
            Violation::Form { row, col } => write!(f, "M Λ M^T differs from Λ at ({row},{col})"),
            Violation::Level { row, col, modulus } => {
                write!(f, "entry ({row},{col}) of M - 1 is not divisible by {modulus}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Member,
    NotMember(Violation),
}

impl Verdict {
    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::Member)
    }
}

/// `Λ = [[0, Δ], [-Δ, 0]]`.
pub fn lambda(p: &Polarization) -> IntMatrix {
    let g = p.genus();
    let mut m = IntMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        m[(i, g + i)] = p.e()[i].clone();
        m[(g + i, i)] = -p.e()[i].clone();
    }
    m
}

/// `R = diag(1_g, Δ)`.
pub fn r_matrix(p: &Polarization) -> RatMatrix {
    let g = p.genus();
    let diag: Vec<BigRational> = (0..2 * g)
        .map(|i| if i < g { BigRational::one() } else { BigRational::from_integer(p.e()[i - g].clone()) })
        .collect();
    RatMatrix::diagonal(&diag)
}

pub fn r_inverse(p: &Polarization) -> RatMatrix {
    let g = p.genus();
    let diag: Vec<BigRational> = (0..2 * g)
        .map(|i| {
            if i < g {
                BigRational::one()
            } else {
                BigRational::new(BigInt::one(), p.e()[i - g].clone())
            }
        })
        .collect();
    RatMatrix::diagonal(&diag)
}

/// `<v, w> = v Λ w^T`.
pub fn pairing(v: &SympVector, w: &SympVector, p: &Polarization) -> Result<BigInt> {
    let g = p.genus();
    for x in [v, w] {
        if x.genus() != g {
            return Err(Error::Dimension { expected: 2 * g, got: 2 * x.genus() });
        }
    }
    Ok(pairing_slices(v.entries(), w.entries(), p))
}

pub(crate) fn pairing_slices(v: &[BigInt], w: &[BigInt], p: &Polarization) -> BigInt {
    let g = p.genus();
    (0..g)
        .map(|i| &p.e()[i] * (&v[i] * &w[g + i] - &v[g + i] * &w[i]))
        .sum()
}

/// Membership of a rational matrix in the given group.
pub fn member(m: &RatMatrix, kind: GroupKind, p: &Polarization) -> Result<Verdict> {
    let n = 2 * p.genus();
    if m.rows() != n || m.cols() != n {
        return Err(Error::InvalidInput(format!(
            "expected a {n}x{n} matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let tilde = if kind.is_conjugated() {
        &(&r_matrix(p) * m) * &r_inverse(p)
    } else {
        m.clone()
    };
    if let Some((row, col)) = tilde.first_non_integer() {
        return Ok(Verdict::NotMember(Violation::NonInteger { row: row + 1, col: col + 1 }));
    }
    let t = tilde.to_integer().expect("checked integral");
    Ok(tilde_verdict(&t, kind.is_level(), p))
}

/// Membership of an integer matrix in `TildePol` (or `TildePolLev`).
pub fn member_tilde(m: &IntMatrix, level: bool, p: &Polarization) -> Result<Verdict> {
    let n = 2 * p.genus();
    if m.rows() != n || m.cols() != n {
        return Err(Error::InvalidInput(format!(
            "expected a {n}x{n} matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(tilde_verdict(m, level, p))
}

fn tilde_verdict(m: &IntMatrix, level: bool, p: &Polarization) -> Verdict {
    let g = p.genus();
    let n = 2 * g;
    let det = m.det().expect("square");
    if !det.is_one() {
        return Verdict::NotMember(Violation::Determinant { det: det.to_string() });
    }
    let lam = lambda(p);
    let form = &(m * &lam) * &m.transpose();
    if let Some(pos) = (0..n * n).find(|&k| form[(k / n, k % n)] != lam[(k / n, k % n)]) {
        return Verdict::NotMember(Violation::Form { row: pos / n + 1, col: pos % n + 1 });
    }
    if level {
        for i in 0..g {
            let modulus = &p.e()[i];
            for r in [i, g + i] {
                for c in 0..n {
                    let mut x = m[(r, c)].clone();
                    if r == c {
                        x -= 1;
                    }
                    if !x.is_multiple_of(modulus) {
                        return Verdict::NotMember(Violation::Level {
                            row: r + 1,
                            col: c + 1,
                            modulus: modulus.to_string(),
                        });
                    }
                }
            }
        }
    }
    Verdict::Member
}

/// Whether `s` lies in `D(Δ)`: `dsum(j, i-1) | s_ij` for all `j < i`.
pub fn in_dpol(s: &IntMatrix, p: &Polarization) -> bool {
    let g = p.genus();
    if s.rows() != g || s.cols() != g {
        return false;
    }
    (1..=g).all(|i| (1..i).all(|j| s[(i - 1, j - 1)].is_multiple_of(&p.dsum_unchecked(j, i - 1))))
}

/// Inverse inside `SD(Δ)`. The closure of `SD(Δ)` under inversion is checked
/// on every call.
pub fn sd_inverse(s: &IntMatrix, p: &Polarization) -> Result<IntMatrix> {
    if !in_dpol(s, p) {
        return Err(Error::InvalidInput("matrix is not in D(Δ)".into()));
    }
    let det = s.det()?;
    if !det.is_one() {
        return Err(Error::NotUnimodular { det: det.to_string() });
    }
    let inv = s.inverse()?;
    if !in_dpol(&inv, p) {
        return Err(Error::Invariant(format!("inverse {inv} of {s} left D(Δ)")));
    }
    Ok(inv)
}

/// Inverse of an element of `TildePol` via `M^{-1} = Λ M^T Λ^{-1}`.
pub fn tilde_inverse(m: &IntMatrix, p: &Polarization) -> Result<IntMatrix> {
    let g = p.genus();
    let e = p.e();
    let mut inv = IntMatrix::zeros(2 * g, 2 * g);
    // blocks: [[Δ D^T Δ^-1, -Δ B^T Δ^-1], [-Δ C^T Δ^-1, Δ A^T Δ^-1]]
    for (bi, bj, si, sj, sign) in [(0, 0, 1, 1, 1), (0, 1, 0, 1, -1), (1, 0, 1, 0, -1), (1, 1, 0, 0, 1)] {
        for i in 0..g {
            for j in 0..g {
                let x = &m[(si * g + j, sj * g + i)] * &e[i];
                let y = exact_div(&x, &e[j])?;
                inv[(bi * g + i, bj * g + j)] = if sign < 0 { -y } else { y };
            }
        }
    }
    if !(m * &inv).is_identity() {
        return Err(Error::Invariant(format!("{m} is not in the paramodular group")));
    }
    Ok(inv)
}

/// Elementary matrices of the paramodular group. Indices are 1-based.
pub mod gens {
    use super::*;

    /// `[[1, B], [0, 1]]` with `b_ij = λ`, `b_ji = λ dsum(i, j-1)` (`i <= j`).
    /// On row vectors: `x_{g+j} += λ x_i` and `x_{g+i} += λ dsum(i,j-1) x_j`.
    pub fn upper(p: &Polarization, i: usize, j: usize, lambda: &BigInt) -> IntMatrix {
        translation(p, i, j, lambda, false)
    }

    /// `[[1, 0], [C, 1]]`, the transpose-shaped partner of [`upper`].
    /// On row vectors: `x_j += λ x_{g+i}` and `x_i += λ dsum(i,j-1) x_{g+j}`.
    pub fn lower(p: &Polarization, i: usize, j: usize, lambda: &BigInt) -> IntMatrix {
        translation(p, i, j, lambda, true)
    }

    fn translation(p: &Polarization, i: usize, j: usize, lambda: &BigInt, low: bool) -> IntMatrix {
        assert!(1 <= i && i <= j && j <= p.genus());
        let g = p.genus();
        let mut m = IntMatrix::identity(2 * g);
        let (ro, co) = if low { (g, 0) } else { (0, g) };
        if i == j {
            m[(ro + i - 1, co + i - 1)] += lambda;
        } else {
            m[(ro + i - 1, co + j - 1)] = lambda.clone();
            m[(ro + j - 1, co + i - 1)] = lambda * p.dsum_unchecked(i, j - 1);
        }
        m
    }

    /// `diag(A, Δ A^{-T} Δ^{-1})` for `A` in `GL(g, Z)`; errors when the
    /// second block is not integral.
    pub fn block(p: &Polarization, a: &IntMatrix) -> Result<IntMatrix> {
        let g = p.genus();
        let ainv = a.inverse()?;
        let e = p.e();
        let mut m = IntMatrix::zeros(2 * g, 2 * g);
        for i in 0..g {
            for j in 0..g {
                m[(i, j)] = a[(i, j)].clone();
                let x = &ainv[(j, i)] * &e[i];
                m[(g + i, g + j)] = exact_div(&x, &e[j])
                    .map_err(|_| Error::InvalidInput(format!("{a} does not give an integral block")))?;
            }
        }
        Ok(m)
    }

    /// `diag(A, ...)` with `A = 1 + x E_{row,col}`; below the diagonal `x`
    /// must be a multiple of `dsum(col, row-1)`.
    pub fn elementary_block(p: &Polarization, row: usize, col: usize, x: &BigInt) -> Result<IntMatrix> {
        assert_ne!(row, col);
        let mut a = IntMatrix::identity(p.genus());
        a[(row - 1, col - 1)] = x.clone();
        block(p, &a)
    }

    /// `diag(1, .., -1, .., 1)` in both blocks, flipping coordinates `i` and `g+i`.
    pub fn sign(p: &Polarization, i: usize) -> IntMatrix {
        let g = p.genus();
        let mut m = IntMatrix::identity(2 * g);
        m[(i - 1, i - 1)] = -BigInt::one();
        m[(g + i - 1, g + i - 1)] = -BigInt::one();
        m
    }

    /// `N` acting as `[[a, b], [c, d]]` on coordinates `(i, g+i)`; `ad - bc = 1`.
    pub fn plane(p: &Polarization, i: usize, n: [[BigInt; 2]; 2]) -> IntMatrix {
        let g = p.genus();
        debug_assert!((&n[0][0] * &n[1][1] - &n[0][1] * &n[1][0]).is_one());
        let mut m = IntMatrix::identity(2 * g);
        let (a, b) = (i - 1, g + i - 1);
        let [[n00, n01], [n10, n11]] = n;
        m[(a, a)] = n00;
        m[(a, b)] = n01;
        m[(b, a)] = n10;
        m[(b, b)] = n11;
        m
    }

    /// Plane matrix sending `(x, y)` in coordinates `(i, g+i)` to
    /// `(gcd(x, y), 0)`. Identity when both are zero.
    pub fn plane_to_gcd(p: &Polarization, i: usize, x: &BigInt, y: &BigInt) -> IntMatrix {
        let (d, t1, t2) = ext_gcd(x, y);
        if d.is_zero() {
            return IntMatrix::identity(2 * p.genus());
        }
        plane(p, i, [[t1, -(y / &d)], [t2, x / &d]])
    }
}

/// A verified element of one of the four groups. The integral conjugate is
/// stored; for the conjugated kinds the actual matrix is `R^{-1} M R`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    kind: GroupKind,
    pol: Polarization,
    tilde: IntMatrix,
}

impl GroupElement {
    pub fn identity(kind: GroupKind, pol: &Polarization) -> Self {
        GroupElement { kind, pol: pol.clone(), tilde: IntMatrix::identity(2 * pol.genus()) }
    }

    /// Wraps an integral matrix of `TildePol`/`TildePolLev` (the conjugate
    /// when `kind` is a conjugated kind), verifying membership.
    pub fn from_tilde(kind: GroupKind, pol: &Polarization, tilde: IntMatrix) -> Result<Self> {
        match member_tilde(&tilde, kind.is_level(), pol)? {
            Verdict::Member => Ok(GroupElement { kind, pol: pol.clone(), tilde }),
            Verdict::NotMember(v) => Err(Error::InvalidInput(format!("not in {}: {v}", kind.tilde()))),
        }
    }

    pub fn from_matrix(kind: GroupKind, pol: &Polarization, m: &RatMatrix) -> Result<Self> {
        match member(m, kind, pol)? {
            Verdict::Member => {}
            Verdict::NotMember(v) => return Err(Error::InvalidInput(format!("not in {kind}: {v}"))),
        }
        let tilde = if kind.is_conjugated() {
            (&(&r_matrix(pol) * m) * &r_inverse(pol)).to_integer().expect("membership implies integral")
        } else {
            m.to_integer().expect("membership implies integral")
        };
        Ok(GroupElement { kind, pol: pol.clone(), tilde })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn pol(&self) -> &Polarization {
        &self.pol
    }

    /// The integral representative in `TildePol`/`TildePolLev`.
    pub fn tilde(&self) -> &IntMatrix {
        &self.tilde
    }

    /// The matrix of this element in its own group.
    pub fn matrix(&self) -> RatMatrix {
        let t = RatMatrix::from(&self.tilde);
        if self.kind.is_conjugated() {
            &(&r_inverse(&self.pol) * &t) * &r_matrix(&self.pol)
        } else {
            t
        }
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.kind != other.kind || self.pol != other.pol {
            return Err(Error::InvalidInput("composing elements of different groups".into()));
        }
        Ok(GroupElement { kind: self.kind, pol: self.pol.clone(), tilde: &self.tilde * &other.tilde })
    }

    pub fn inverse(&self) -> Result<GroupElement> {
        Ok(GroupElement {
            kind: self.kind,
            pol: self.pol.clone(),
            tilde: tilde_inverse(&self.tilde, &self.pol)?,
        })
    }

    /// Re-runs the membership predicate on the stored matrix.
    pub fn verify(&self) -> Result<Verdict> {
        member(&self.matrix(), self.kind, &self.pol)
    }

    /// `v * M` for the integral representative.
    pub fn act(&self, v: &SympVector) -> Result<SympVector> {
        v.apply(&self.tilde)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({}, {}, {:?})", self.kind, self.pol, self.matrix())
    }
}

/// Random word of the given length in the generator families. Deterministic
/// in `(seed, length)`; length 0 gives the identity.
pub fn random_element(kind: GroupKind, pol: &Polarization, seed: u64, length: usize) -> GroupElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let level = kind.is_level();
    let mut m = IntMatrix::identity(2 * pol.genus());
    for _ in 0..length {
        let gen = random_generator(pol, level, &mut rng);
        m = &m * &gen;
    }
    debug_assert!(member_tilde(&m, level, pol).unwrap().is_member());
    GroupElement { kind, pol: pol.clone(), tilde: m }
}

/// One generator drawn from the translation, plane and block families. For
/// the level group the parameters are scaled so that the congruence shape
/// holds by construction.
pub fn random_generator<R: Rng>(pol: &Polarization, level: bool, rng: &mut R) -> IntMatrix {
    let g = pol.genus();
    let e = pol.e();
    let family = rng.gen_range(0..if g == 1 { 3 } else { 4 });
    match family {
        0 | 1 => {
            let mut i = rng.gen_range(1..=g);
            let mut j = rng.gen_range(1..=g);
            if i > j {
                std::mem::swap(&mut i, &mut j);
            }
            let mut l = small_nonzero(rng);
            if level {
                l *= &e[i - 1];
            }
            if family == 0 {
                gens::upper(pol, i, j, &l)
            } else {
                gens::lower(pol, i, j, &l)
            }
        }
        2 => {
            let i = rng.gen_range(1..=g);
            if level && !e[i - 1].is_one() {
                // congruence-level plane moves come from the translations
                let l = small_nonzero(rng) * &e[i - 1];
                return gens::upper(pol, i, i, &l);
            }
            gens::plane(pol, i, random_sl2(rng))
        }
        _ => {
            let row = rng.gen_range(1..=g);
            let mut col = rng.gen_range(1..g);
            if col >= row {
                col += 1;
            }
            let mut x = small_nonzero(rng);
            if level {
                x *= &e[row - 1];
            } else if row > col {
                x *= pol.dsum_unchecked(col, row - 1);
            }
            gens::elementary_block(pol, row, col, &x).expect("elementary block is integral")
        }
    }
}

fn small_nonzero<R: Rng>(rng: &mut R) -> BigInt {
    let x: i64 = rng.gen_range(1..=3);
    BigInt::from(if rng.gen_bool(0.5) { x } else { -x })
}

/// A small matrix in `SL(2, Z)` built from a random Bézout pair.
fn random_sl2<R: Rng>(rng: &mut R) -> [[BigInt; 2]; 2] {
    loop {
        let a = BigInt::from(rng.gen_range(-5i64..=5));
        let b = BigInt::from(rng.gen_range(-5i64..=5));
        let (d, s, t) = ext_gcd(&a, &b);
        if d.is_one() {
            // a*s + b*t = 1  =>  [[a, b], [-t, s]] has determinant 1
            return [[a, b], [-t, s]];
        }
    }
}

/// JSON form of a matrix: integers as numbers when they fit in `i64`,
/// otherwise (and for non-integers) as exact strings `"p/q"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub entries: Vec<Vec<Entry>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    pub fn from_rational(x: &BigRational) -> Entry {
        if x.is_integer() {
            if let Some(i) = x.to_integer().to_i64() {
                return Entry::Int(i);
            }
        }
        Entry::Text(x.to_string())
    }

    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            Entry::Int(i) => Ok(BigRational::from_integer(BigInt::from(*i))),
            Entry::Text(s) => parse_rational(s),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl MatrixDoc {
    pub fn from_rat(m: &RatMatrix) -> Self {
        MatrixDoc {
            rows: m.rows(),
            entries: (0..m.rows()).map(|i| m.row(i).iter().map(Entry::from_rational).collect()).collect(),
        }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self::from_rat(&RatMatrix::from(m))
    }

    pub fn to_rat(&self) -> Result<RatMatrix> {
        if self.entries.len() != self.rows {
            return Err(Error::Dimension { expected: self.rows, got: self.entries.len() });
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(Entry::to_rational).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RatMatrix::from_rows(rows)
    }
}

/// Parses `"1,0;0,1"` (rows by `;`, entries by `,`, rationals as `p/q`).
pub fn parse_matrix(s: &str) -> Result<RatMatrix> {
    let rows = s
        .split(';')
        .filter(|r| !r.trim().is_empty())
        .map(|r| r.split(',').map(parse_rational).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    RatMatrix::from_rows(rows)
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

    #[test]
    fn pairing_reads_off_delta() {
        let p = pol(&[1, 2, 6]);
        let e = |i| SympVector::unit(3, i);
        assert_eq!(pairing(&e(1), &e(4), &p).unwrap(), b(1));
        assert_eq!(pairing(&e(2), &e(5), &p).unwrap(), b(2));
        assert_eq!(pairing(&e(3), &e(6), &p).unwrap(), b(6));
        assert_eq!(pairing(&e(4), &e(1), &p).unwrap(), b(-1));
        assert_eq!(pairing(&e(1), &e(2), &p).unwrap(), b(0));
        assert!(pairing(&e(1), &SympVector::unit(2, 1), &p).is_err());
    }

    #[test]
    fn identity_in_every_group() {
        let p = pol(&[1, 2, 6]);
        for kind in GroupKind::ALL {
            assert!(member(&RatMatrix::identity(6), kind, &p).unwrap().is_member());
        }
    }

    #[test]
    fn translation_example() {
        let p = pol(&[1, 2]);
        let m = IntMatrix::from_i64(&[&[1, 0, 0, 1], &[0, 1, 2, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(member_tilde(&m, false, &p).unwrap().is_member());
        assert!(member_tilde(&m, true, &p).unwrap().is_member());
        assert_eq!(gens::upper(&p, 1, 2, &b(1)), m);
    }

    #[test]
    fn minus_identity() {
        let p = pol(&[1, 2, 6]);
        let mut m = IntMatrix::identity(6);
        for i in 0..6 {
            m[(i, i)] = b(-1);
        }
        assert!(member_tilde(&m, false, &p).unwrap().is_member());
        let v = member_tilde(&m, true, &p).unwrap();
        assert!(matches!(v, Verdict::NotMember(Violation::Level { .. })), "{v:?}");
        // with every dsum(1, i-1) <= 2 the level condition survives
        assert!(member_tilde(&IntMatrix::from_i64(&[&[-1, 0], &[0, -1]]), true, &pol(&[1])).unwrap().is_member());
        let m2 = {
            let mut m = IntMatrix::identity(4);
            for i in 0..4 {
                m[(i, i)] = b(-1);
            }
            m
        };
        assert!(member_tilde(&m2, true, &pol(&[1, 2])).unwrap().is_member());
    }

    #[test]
    fn membership_failures() {
        let p = pol(&[1, 2]);
        let v = member(&RatMatrix::identity(2), GroupKind::TildePol, &p);
        assert!(v.is_err());
        let mut m = RatMatrix::identity(4);
        m[(0, 1)] = BigRational::new(b(1), b(2));
        assert_eq!(
            member(&m, GroupKind::TildePol, &p).unwrap(),
            Verdict::NotMember(Violation::NonInteger { row: 1, col: 2 })
        );
        let m = RatMatrix::from(&IntMatrix::from_i64(&[&[1, 1, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]));
        assert!(matches!(member(&m, GroupKind::TildePol, &p).unwrap(), Verdict::NotMember(Violation::Form { .. })));
    }

    #[test]
    fn dpol_examples() {
        let p = pol(&[1, 2]);
        assert!(in_dpol(&IntMatrix::identity(2), &p));
        assert!(in_dpol(&IntMatrix::from_i64(&[&[1, 0], &[2, 1]]), &p));
        assert!(!in_dpol(&IntMatrix::from_i64(&[&[1, 0], &[1, 1]]), &p));
        assert!(in_dpol(&IntMatrix::from_i64(&[&[3, 7], &[0, -5]]), &p));
        assert!(!in_dpol(&IntMatrix::identity(3), &p));
    }

    #[test]
    fn sd_inverse_examples() {
        let p = pol(&[1, 2]);
        assert!(sd_inverse(&IntMatrix::identity(2), &p).unwrap().is_identity());
        let s = IntMatrix::from_i64(&[&[1, 0], &[2, 1]]);
        assert_eq!(sd_inverse(&s, &p).unwrap(), IntMatrix::from_i64(&[&[1, 0], &[-2, 1]]));
        assert!(matches!(
            sd_inverse(&IntMatrix::from_i64(&[&[2, 0], &[0, 1]]), &p),
            Err(Error::NotUnimodular { .. })
        ));
        assert!(matches!(sd_inverse(&IntMatrix::from_i64(&[&[1, 0], &[1, 1]]), &p), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn generators_are_members() {
        let p = pol(&[1, 2, 6]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for level in [false, true] {
            for _ in 0..200 {
                let m = random_generator(&p, level, &mut rng);
                assert!(member_tilde(&m, level, &p).unwrap().is_member(), "{m}");
            }
        }
    }

    #[test]
    fn random_words() {
        let p = pol(&[1, 2]);
        assert!(random_element(GroupKind::TildePol, &p, 5, 0).tilde().is_identity());
        let a = random_element(GroupKind::TildePol, &p, 1, 10);
        assert_eq!(a, random_element(GroupKind::TildePol, &p, 1, 10));
        assert!(a.verify().unwrap().is_member());
        let p3 = pol(&[1, 4, 24]);
        let l = random_element(GroupKind::TildePolLev, &p3, 7, 20);
        assert!(l.verify().unwrap().is_member());
        let c = random_element(GroupKind::ConjPolLev, &p3, 7, 20);
        assert!(c.matrix().first_non_integer().is_none());
        assert!(c.verify().unwrap().is_member());
    }

    #[test]
    fn inverse_formula() {
        let p = pol(&[1, 2, 6]);
        let m = random_element(GroupKind::TildePol, &p, 11, 15);
        let inv = m.inverse().unwrap();
        assert!(m.compose(&inv).unwrap().tilde().is_identity());
        assert!(inv.verify().unwrap().is_member());
    }

    #[test]
    fn plane_to_gcd_zeroes_second_coordinate() {
        let p = pol(&[1, 2]);
        let n = gens::plane_to_gcd(&p, 2, &b(6), &b(-4));
        let v = SympVector::from_i64(&[5, 6, 7, -4]).apply(&n).unwrap();
        assert_eq!(v, SympVector::from_i64(&[5, 2, 7, 0]));
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = parse_matrix("1,0,0,1;0,1,2,0;0,0,1,0;0,0,0,1").unwrap();
        assert!(member(&m, GroupKind::TildePol, &pol(&[1, 2])).unwrap().is_member());
        let doc = MatrixDoc::from_rat(&parse_matrix("1/2,3;-4,5/7").unwrap());
        assert_eq!(doc.entries[0][0], Entry::Text("1/2".into()));
        assert_eq!(doc.entries[0][1], Entry::Int(3));
        assert_eq!(doc.to_rat().unwrap(), parse_matrix("1/2,3;-4,5/7").unwrap());
        assert!(parse_matrix("1/0").is_err());
    }
}
