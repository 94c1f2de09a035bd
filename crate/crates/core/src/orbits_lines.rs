//! Canonical forms, equivalence tests and representatives for primitive
//! vectors under `TildePol` and `TildePolLev`.
//!
//! Every reduction is assembled from the elementary matrices in
//! [`crate::group::gens`] and carries the product as a witness, so callers
//! never have to trust the canonical form without the matrix.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{combine_step, divisors_of, exact_div, gcd_all};
use crate::error::{Error, Result};
use crate::group::{gens, GroupElement, GroupKind};
use crate::invariants::{divisors, feasible_tuples, tuple_from_product, DivisorTuple};
use crate::matrix::IntMatrix;
use crate::polarization::Polarization;
use crate::vector::SympVector;

/// `input * witness = canonical`, with the witness in the declared group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessedReduction {
    pub input: SympVector,
    pub canonical: SympVector,
    pub witness: GroupElement,
}

impl WitnessedReduction {
    /// Re-checks the product and the membership of the witness.
    pub fn verify(&self) -> Result<()> {
        let image = self.witness.act(&self.input)?;
        if image != self.canonical {
            return Err(Error::Invariant(format!(
                "{} * witness = {image}, expected {}",
                self.input, self.canonical
            )));
        }
        if !self.witness.verify()?.is_member() {
            return Err(Error::Invariant("witness left the group".into()));
        }
        Ok(())
    }
}

/// Canonical form under `TildePolLev`:
/// `(D, D_{2..g-1} a_2, ..., a_g, 0, D_{2..g-1} a_{g+2}, ..., a_{2g})` with
/// `D = D_{1..g-1}` and `0 <= a_i < D_{1..i-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LevCanonical {
    #[serde(with = "crate::ints::big")]
    pub product: BigInt,
    /// `a_2, ..., a_g` followed by `a_{g+2}, ..., a_{2g}`.
    #[serde(with = "crate::ints::big_vec")]
    pub residues: Vec<BigInt>,
}

impl LevCanonical {
    /// Reads the residues off a residue-reduced vector.
    pub fn from_vector(v: &SympVector, p: &Polarization) -> Result<Self> {
        let g = p.genus();
        let t = divisors(v, p)?;
        if v.at(1) != t.product() || !v.at(g + 1).is_zero() {
            return Err(Error::InvalidInput(format!("{v} is not in residue-reduced form")));
        }
        let mut residues = Vec::with_capacity(2 * g - 2);
        for half in [0, g] {
            for i in 2..=g {
                let x = v.at(half + i);
                let bound = t.range(1, i - 1);
                let a = exact_div(x, &t.range(i, g - 1))?;
                if a.is_negative_or_ge(&bound) {
                    return Err(Error::InvalidInput(format!("{v}: entry {} out of range", half + i)));
                }
                residues.push(a);
            }
        }
        Ok(LevCanonical { product: t.product().clone(), residues })
    }

    pub fn to_vector(&self, p: &Polarization) -> Result<SympVector> {
        let g = p.genus();
        if self.residues.len() != 2 * g - 2 {
            return Err(Error::Dimension { expected: 2 * g - 2, got: self.residues.len() });
        }
        let t = tuple_from_product(&self.product, p)?;
        let mut e = vec![BigInt::zero(); 2 * g];
        e[0] = self.product.clone();
        for (k, a) in self.residues.iter().enumerate() {
            let (half, i) = if k < g - 1 { (0, k + 2) } else { (g, k + 3 - g) };
            e[half + i - 1] = a * t.range(i, g - 1);
        }
        SympVector::new(e)
    }
}

trait RangeCheck {
    fn is_negative_or_ge(&self, bound: &BigInt) -> bool;
}

impl RangeCheck for BigInt {
    fn is_negative_or_ge(&self, bound: &BigInt) -> bool {
        self < &BigInt::zero() || self >= bound
    }
}

/// `(v̂_1, ..., v̂_g, 0, ..., 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PolCanonical {
    pub vhat: SympVector,
}

impl PolCanonical {
    /// `v̂_1..v̂_g`.
    pub fn values(&self) -> &[BigInt] {
        &self.vhat.entries()[..self.vhat.genus()]
    }

    /// The relations `v̂_g = 1`, `v̂_{i+1} | v̂_i`, `v̂_i | d_i v̂_{i+1}` and
    /// `v̂_1` a feasible product.
    pub fn check(&self, p: &Polarization) -> Result<()> {
        let g = p.genus();
        let h = self.values();
        let fail = |what: &str| Err(Error::Invariant(format!("{}: {what}", self.vhat)));
        if self.vhat.entries()[g..].iter().any(|x| !x.is_zero()) {
            return fail("second half is not zero");
        }
        if !h[g - 1].is_one() {
            return fail("last entry is not 1");
        }
        for i in 0..g - 1 {
            if !h[i].is_multiple_of(&h[i + 1]) {
                return fail("v̂_{i+1} does not divide v̂_i");
            }
            if !(p.d(i + 1) * &h[i + 1]).is_multiple_of(&h[i]) {
                return fail("v̂_i does not divide d_i v̂_{i+1}");
            }
        }
        if tuple_from_product(&h[0], p).is_err() {
            return fail("v̂_1 is not a divisor product");
        }
        Ok(())
    }
}

pub fn vhat(v: &SympVector, p: &Polarization) -> Result<PolCanonical> {
    check_input(v, p)?;
    Ok(PolCanonical { vhat: vhat_vector(v, p) })
}

fn vhat_vector(v: &SympVector, p: &Polarization) -> SympVector {
    let g = p.genus();
    let pairs: Vec<BigInt> = (1..=g).map(|j| v.pair_gcd(j)).collect();
    let mut e = vec![BigInt::zero(); 2 * g];
    for i in 1..=g {
        let terms: Vec<BigInt> = (1..=g)
            .map(|j| if j <= i { pairs[j - 1].clone() } else { p.dsum_unchecked(i, j - 1) * &pairs[j - 1] })
            .collect();
        e[i - 1] = gcd_all(&terms);
    }
    SympVector::new(e).expect("even length")
}

fn check_input(v: &SympVector, p: &Polarization) -> Result<()> {
    if v.genus() != p.genus() {
        return Err(Error::Dimension { expected: 2 * p.genus(), got: v.entries().len() });
    }
    v.require_primitive()
}

/// A vector together with the accumulated transformation.
struct Reducer<'a> {
    p: &'a Polarization,
    x: Vec<BigInt>,
    w: IntMatrix,
}

impl<'a> Reducer<'a> {
    fn new(v: &SympVector, p: &'a Polarization) -> Self {
        Reducer { p, x: v.entries().to_vec(), w: IntMatrix::identity(2 * p.genus()) }
    }

    fn apply(&mut self, m: IntMatrix) {
        self.x = m.left_mul_vec(&self.x).expect("square of matching size");
        self.w = &self.w * &m;
    }

    fn xi(&self, i: usize) -> &BigInt {
        &self.x[i - 1]
    }

    fn xg(&self, i: usize) -> &BigInt {
        &self.x[self.p.genus() + i - 1]
    }

    /// `x_i += a x_j` through `diag(1 + a E_{ji}, ...)`; for `j > i` the
    /// caller passes `a` already scaled by `dsum(i, j-1)`.
    fn add_first(&mut self, i: usize, j: usize, a: &BigInt) {
        if a.is_zero() {
            return;
        }
        let m = gens::elementary_block(self.p, j, i, a).expect("integral block");
        self.apply(m);
    }

    /// Moves `gcd(x_i, x_{g+i}, sources)` into `x_i` and clears `x_{g+i}`,
    /// keeping `x_j` (and `x_{g+j} = 0`) for `j < i`.
    fn pol_step(&mut self, i: usize) -> Result<()> {
        let g = self.p.genus();
        if self.xg(i).is_zero() {
            if self.xi(i).is_zero() {
                self.seed_nonzero(i)?;
            }
            let one = BigInt::one();
            self.apply(gens::plane(self.p, i, [[BigInt::zero(), one.clone()], [-one, BigInt::zero()]]));
        }
        for j in 1..i {
            let alpha = combine_step(self.xg(i), self.xi(i), self.xi(j));
            if alpha.is_zero() {
                continue;
            }
            self.add_first(i, j, &alpha);
            // the block op shifted x_{g+j} by a multiple of v̂_j = x_j
            if !self.xg(j).is_zero() {
                let b = -exact_div(self.xg(j), self.xi(j))?;
                self.apply(gens::upper(self.p, j, j, &b));
            }
        }
        for j in i + 1..=g {
            let s = self.p.dsum_unchecked(i, j - 1);
            let alpha = combine_step(self.xg(i), self.xi(i), &(&s * self.xi(j)));
            self.add_first(i, j, &(&alpha * &s));
            let beta = combine_step(self.xg(i), self.xi(i), &(&s * self.xg(j)));
            if !beta.is_zero() {
                self.apply(gens::lower(self.p, i, j, &beta));
            }
        }
        let (a, b) = (self.xi(i).clone(), self.xg(i).clone());
        self.apply(gens::plane_to_gcd(self.p, i, &a, &b));
        Ok(())
    }

    /// Makes `x_i` nonzero when `x_i = x_{g+i} = 0`.
    fn seed_nonzero(&mut self, i: usize) -> Result<()> {
        let g = self.p.genus();
        if i > 1 && !self.xi(i - 1).is_zero() {
            self.add_first(i, i - 1, &BigInt::one());
            return Ok(());
        }
        for j in i + 1..=g {
            let s = self.p.dsum_unchecked(i, j - 1);
            if !self.xi(j).is_zero() {
                self.add_first(i, j, &s);
                return Ok(());
            }
            if !self.xg(j).is_zero() {
                self.apply(gens::lower(self.p, i, j, &BigInt::one()));
                return Ok(());
            }
        }
        Err(Error::Invariant(format!("no nonzero source for coordinate {i} in {:?}", self.x)))
    }

    fn vector(&self) -> SympVector {
        SympVector::new(self.x.clone()).expect("even length")
    }
}

/// Reduces `v` to `(v̂_1, ..., v̂_g, 0, ..., 0)` with a witness in `TildePol`.
pub fn canon_pol(v: &SympVector, p: &Polarization) -> Result<WitnessedReduction> {
    check_input(v, p)?;
    let target = vhat_vector(v, p);
    let mut r = Reducer::new(v, p);
    for i in 1..=p.genus() {
        r.pol_step(i)?;
    }
    let canonical = r.vector();
    if canonical != target {
        return Err(Error::Invariant(format!("reduction of {v} gave {canonical}, expected v̂ = {target}")));
    }
    finish(v, canonical, r.w, GroupKind::TildePol, p)
}

/// Reduces `v` to its residue-reduced form with a witness in `TildePolLev`.
pub fn canon_lev(v: &SympVector, p: &Polarization) -> Result<(WitnessedReduction, LevCanonical)> {
    check_input(v, p)?;
    let g = p.genus();
    let t = divisors(v, p)?;
    let mut r = Reducer::new(v, p);
    r.pol_step(1)?;
    let d = r.xi(1).clone();
    if &d != t.product() {
        return Err(Error::Invariant(format!("first step of {v} gave {d}, expected {}", t.product())));
    }
    for i in 2..=g {
        let n = -r.xi(i).div_floor(&d);
        r.add_first(i, 1, &n);
        let n = -r.xg(i).div_floor(&d);
        if !n.is_zero() {
            r.apply(gens::upper(p, 1, i, &n));
        }
    }
    if !r.xg(1).is_zero() {
        let b = -exact_div(r.xg(1), &d)?;
        r.apply(gens::upper(p, 1, 1, &b));
    }
    let canonical = r.vector();
    let lev = LevCanonical::from_vector(&canonical, p)?;
    Ok((finish(v, canonical, r.w, GroupKind::TildePolLev, p)?, lev))
}

fn finish(
    v: &SympVector,
    canonical: SympVector,
    w: IntMatrix,
    kind: GroupKind,
    p: &Polarization,
) -> Result<WitnessedReduction> {
    let witness = GroupElement::from_tilde(kind, p, w)?;
    let red = WitnessedReduction { input: v.clone(), canonical, witness };
    if cfg!(debug_assertions) {
        red.verify()?;
    }
    Ok(red)
}

/// Canonical reduction for either integral kind.
pub fn canon(v: &SympVector, kind: GroupKind, p: &Polarization) -> Result<WitnessedReduction> {
    match kind {
        GroupKind::TildePol => canon_pol(v, p),
        GroupKind::TildePolLev => canon_lev(v, p).map(|(r, _)| r),
        _ => Err(Error::InvalidInput(format!("canonical forms are computed for tilde-pol and tilde-pol-lev, not {kind}"))),
    }
}

/// `v * witness = sign * canonical`, identifying `v` with `-v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineReduction {
    pub canonical: SympVector,
    pub sign: i8,
    pub witness: GroupElement,
}

/// Line mode: canonicalizes `v` and `-v` and keeps the lexicographically
/// smaller canonical vector.
pub fn canon_line(v: &SympVector, kind: GroupKind, p: &Polarization) -> Result<LineReduction> {
    let plus = canon(v, kind, p)?;
    let minus = canon(&v.neg(), kind, p)?;
    let (red, sign) = if minus.canonical.entries() < plus.canonical.entries() { (minus, -1) } else { (plus, 1) };
    Ok(LineReduction { canonical: red.canonical, sign, witness: red.witness })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transport {
    /// `v * M = w`.
    Equivalent(GroupElement),
    NotEquivalent { v_canonical: SympVector, w_canonical: SympVector },
}

impl Transport {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Transport::Equivalent(_))
    }
}

/// `M = M_v M_w^{-1}` when the canonical forms agree.
pub fn transporter(v: &SympVector, w: &SympVector, p: &Polarization, kind: GroupKind) -> Result<Transport> {
    let rv = canon(v, kind, p)?;
    let rw = canon(w, kind, p)?;
    if rv.canonical != rw.canonical {
        return Ok(Transport::NotEquivalent { v_canonical: rv.canonical, w_canonical: rw.canonical });
    }
    let m = rv.witness.compose(&rw.witness.inverse()?)?;
    let image = m.act(v)?;
    if &image != w {
        return Err(Error::Invariant(format!("transporter sends {v} to {image}, not {w}")));
    }
    Ok(Transport::Equivalent(m))
}

/// Equivalence under `TildePolLev`, checked both through canonical forms
/// and through the congruence criterion.
pub fn equiv_lev(v: &SympVector, w: &SympVector, p: &Polarization) -> Result<Transport> {
    let criterion = lev_criterion(v, w, p)?;
    let t = transporter(v, w, p, GroupKind::TildePolLev)?;
    if criterion != t.is_equivalent() {
        return Err(Error::Invariant(format!(
            "congruence criterion says {criterion} for {v}, {w} but canonical forms disagree"
        )));
    }
    Ok(t)
}

/// Equal products `D_{1..g-1}` and `v ≡ w` modulo that product.
pub fn lev_criterion(v: &SympVector, w: &SympVector, p: &Polarization) -> Result<bool> {
    let dv = divisors(v, p)?;
    let dw = divisors(w, p)?;
    if dv.product() != dw.product() {
        return Ok(false);
    }
    let d = dv.product();
    Ok(v.entries().iter().zip(w.entries()).all(|(a, b)| (a - b).is_multiple_of(d)))
}

/// One representative per `TildePolLev` orbit.
pub fn enumerate_lev(p: &Polarization) -> Vec<LevCanonical> {
    let mut out = Vec::new();
    for t in feasible_tuples(p) {
        enumerate_lev_tuple(p, &t, &mut out);
    }
    out
}

fn enumerate_lev_tuple(p: &Polarization, t: &DivisorTuple, out: &mut Vec<LevCanonical>) {
    let g = p.genus();
    let bounds: Vec<BigInt> = (0..2 * g - 2).map(|k| t.range(1, k % (g - 1).max(1) + 1)).collect();
    let mut a: Vec<BigInt> = vec![BigInt::zero(); 2 * g - 2];
    loop {
        let c = LevCanonical { product: t.product().clone(), residues: a.clone() };
        let v = c.to_vector(p).expect("valid product");
        if v.is_primitive() && &divisors(&v, p).expect("primitive") == t {
            out.push(c);
        }
        // odometer over the residue box
        let mut k = 0;
        loop {
            if k == a.len() {
                return;
            }
            a[k] += 1;
            if a[k] < bounds[k] {
                break;
            }
            a[k] = BigInt::zero();
            k += 1;
        }
    }
}

/// One representative per `TildePol` orbit, with bookkeeping on the
/// candidates the divisibility conditions admit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolEnumeration {
    pub reps: Vec<PolCanonical>,
    /// Candidates satisfying the `a_i` conditions whose `v̂` or divisors
    /// disagree with the construction.
    pub rejected: usize,
    /// Candidates equal to an earlier representative.
    pub duplicates: usize,
}

pub fn enumerate_pol(p: &Polarization) -> Vec<PolCanonical> {
    enumerate_pol_report(p).reps
}

pub fn enumerate_pol_report(p: &Polarization) -> PolEnumeration {
    let g = p.genus();
    let mut seen = BTreeSet::new();
    let mut report = PolEnumeration { reps: Vec::new(), rejected: 0, duplicates: 0 };
    for t in feasible_tuples(p) {
        let mut a = vec![BigInt::one(); g];
        choose_a(p, &t, 1, &mut a, &mut |a| {
            let mut e = vec![BigInt::zero(); 2 * g];
            for i in 1..=g {
                e[i - 1] = t.range(i, g - 1) * &a[i - 1];
            }
            let v = SympVector::new(e).expect("even length");
            let ok = v.is_primitive()
                && vhat_vector(&v, p) == v
                && divisors(&v, p).map(|d| d == t).unwrap_or(false);
            if !ok {
                report.rejected += 1;
            } else if seen.insert(v.clone()) {
                report.reps.push(PolCanonical { vhat: v });
            } else {
                report.duplicates += 1;
            }
        });
    }
    if p.classify().coprime {
        assert_eq!(report.reps.len(), divisors_of(&p.dsum_unchecked(1, g - 1)).len());
        for r in &report.reps {
            let h = r.values();
            let t = tuple_from_product(&h[0], p).expect("feasible");
            for i in 1..=g {
                assert_eq!(h[i - 1], t.range(i, g - 1), "coprime type forces a_i = 1");
            }
        }
    }
    report
}

/// Fills `a[k..g-1]` (0-based; `a_1 = a_g = 1` stay fixed) with every
/// choice satisfying `a_i | gcd(D_{i-1} a_{i-1}, (d_i / D_i) a_{i+1})`.
fn choose_a(p: &Polarization, t: &DivisorTuple, k: usize, a: &mut Vec<BigInt>, emit: &mut dyn FnMut(&[BigInt])) {
    let g = p.genus();
    if k + 1 >= g {
        let ok = (2..g).all(|i| {
            let q = p.d(i) / t.at(i);
            (q * &a[i]).is_multiple_of(&a[i - 1])
        });
        if ok {
            emit(a);
        }
        return;
    }
    // a_{k+1} (1-based) divides D_k a_k
    let cap = t.at(k) * &a[k - 1];
    for x in divisors_of(&cap) {
        a[k] = x;
        choose_a(p, t, k + 1, a, emit);
    }
    a[k] = BigInt::one();
}

/// The number of `TildePol` orbits predicted for a coprime type: the number
/// of divisors of `dsum(1, g-1)`.
pub fn coprime_orbit_count(p: &Polarization) -> usize {
    divisors_of(&p.dsum_unchecked(1, p.genus() - 1)).len()
}
