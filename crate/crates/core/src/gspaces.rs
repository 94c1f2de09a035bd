//! Maximal isotropic lattices and their reduction to the standard one
//! `e_1, ..., e_g` for square-free coprime polarizations.
//!
//! A reduction returns a unimodular `U` (acting on basis rows from the left)
//! and `γ ∈ TildePol` (acting on coordinates from the right) with
//! `U * B * γ = [1_g | 0]`, plus the tape of intermediate steps.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{combine_step, complete_to_unimodular, ext_gcd, gcd, gcd_all, prime_factors, saturate_lattice};
use crate::error::{Error, Result};
use crate::group::{gens, member_tilde, pairing_slices, random_element, GroupElement, GroupKind};
use crate::invariants::divisors;
use crate::matrix::{row_hnf, IntMatrix, RatMatrix};
use crate::orbits_lines::{transporter, Transport};
use crate::polarization::Polarization;
use crate::vector::SympVector;

/// A saturated isotropic lattice of rank `g` in `Z^{2g}`, given by a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropicLattice {
    pol: Polarization,
    basis: IntMatrix,
}

impl IsotropicLattice {
    /// The rows `e_1, ..., e_g`.
    pub fn standard(p: &Polarization) -> Self {
        let g = p.genus();
        let mut b = IntMatrix::zeros(g, 2 * g);
        for i in 0..g {
            b[(i, i)] = BigInt::one();
        }
        IsotropicLattice { pol: p.clone(), basis: b }
    }

    /// Wraps a basis after checking rank, isotropy and saturation.
    pub fn from_basis(basis: IntMatrix, p: &Polarization) -> Result<Self> {
        let l = IsotropicLattice { pol: p.clone(), basis };
        l.verify()?;
        Ok(l)
    }

    pub fn pol(&self) -> &Polarization {
        &self.pol
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn row(&self, i: usize) -> SympVector {
        SympVector::new(self.basis.row(i - 1).to_vec()).expect("2g columns")
    }

    pub fn verify(&self) -> Result<()> {
        let g = self.pol.genus();
        if self.basis.cols() != 2 * g {
            return Err(Error::Dimension { expected: 2 * g, got: self.basis.cols() });
        }
        let rank = row_hnf(&self.basis).rank;
        if self.basis.rows() != g || rank != g {
            return Err(Error::Rank { expected: g, got: rank });
        }
        check_isotropic(&self.basis, &self.pol)?;
        if saturate_lattice(&self.basis)? != row_hnf(&self.basis).hnf {
            return Err(Error::InvalidInput("basis does not span a saturated lattice".into()));
        }
        Ok(())
    }

    /// Same lattice, every coordinate moved by `γ`.
    pub fn act(&self, gamma: &IntMatrix) -> Result<Self> {
        Ok(IsotropicLattice { pol: self.pol.clone(), basis: self.basis.checked_mul(gamma)? })
    }

    /// Same lattice, basis changed by a unimodular `U`.
    pub fn rebase(&self, u: &IntMatrix) -> Result<Self> {
        let det = u.det()?;
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular { det: det.to_string() });
        }
        Ok(IsotropicLattice { pol: self.pol.clone(), basis: u.checked_mul(&self.basis)? })
    }
}

fn check_isotropic(b: &IntMatrix, p: &Polarization) -> Result<()> {
    for i in 0..b.rows() {
        for j in i + 1..b.rows() {
            let value = pairing_slices(b.row(i), b.row(j), p);
            if !value.is_zero() {
                return Err(Error::NotIsotropic { i: i + 1, j: j + 1, value: value.to_string() });
            }
        }
    }
    Ok(())
}

/// Saturated basis of the lattice spanned (over `Q`) by `rows`.
pub fn make_lattice(rows: &RatMatrix, p: &Polarization) -> Result<IsotropicLattice> {
    let g = p.genus();
    if rows.cols() != 2 * g {
        return Err(Error::Dimension { expected: 2 * g, got: rows.cols() });
    }
    let int_rows: Vec<Vec<BigInt>> = (0..rows.rows())
        .map(|i| {
            let r = rows.row(i);
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            r.iter().map(|x| (x * BigInt::from(l.clone())).to_integer()).collect()
        })
        .collect();
    let m = IntMatrix::from_rows(int_rows)?;
    check_isotropic(&m, p)?;
    let rank = row_hnf(&m).rank;
    if rank != g {
        return Err(Error::Rank { expected: g, got: rank });
    }
    IsotropicLattice::from_basis(saturate_lattice(&m)?, p)
}

/// Block-diagonal `diag(G, Δ G^{-T} Δ^{-1})` with `G ∈ SD(Δ)` such that the
/// entry `indices.last()` of `v * M` is `gcd(v_i : i in indices)`.
/// `G` is the identity outside `indices`; each factor is the 2x2 move of the
/// pair `(i_a, i_n)`, whose lower-left entry is a multiple of `e_{i_n}/e_{i_a}`.
pub fn getgcdsym_transform(v: &SympVector, indices: &[usize], p: &Polarization) -> Result<GroupElement> {
    let g = p.genus();
    if v.genus() != g {
        return Err(Error::Dimension { expected: 2 * g, got: v.entries().len() });
    }
    if indices.is_empty() || indices.windows(2).any(|w| w[0] >= w[1]) || indices[indices.len() - 1] > g || indices[0] == 0 {
        return Err(Error::InvalidInput(format!("indices {indices:?} must be strictly increasing in 1..={g}")));
    }
    let last = *indices.last().unwrap();
    let mut x: Vec<BigInt> = v.entries()[..g].to_vec();
    let mut gm = IntMatrix::identity(g);
    for &i in &indices[..indices.len() - 1] {
        let d = p.dsum_unchecked(i, last - 1);
        let [[g00, g01], [g10, g11]] = gcd_pair_move(&x[i - 1], &x[last - 1], &d);
        let mut step = IntMatrix::identity(g);
        step[(i - 1, i - 1)] = g00;
        step[(i - 1, last - 1)] = g01;
        step[(last - 1, i - 1)] = g10;
        step[(last - 1, last - 1)] = g11;
        x = step.left_mul_vec(&x)?;
        gm = &gm * &step;
    }
    if indices.len() == 1 && x[last - 1].is_negative() {
        return GroupElement::from_tilde(GroupKind::TildePol, p, gens::sign(p, last));
    }
    let m = gens::block(p, &gm)?;
    let el = GroupElement::from_tilde(GroupKind::TildePol, p, m)?;
    let u = el.act(v)?;
    let target = gcd_all(indices.iter().map(|&i| v.at(i)));
    if u.at(last) != &target {
        return Err(Error::Invariant(format!("getgcdsym produced {u}, expected entry {last} = {target}")));
    }
    Ok(el)
}

/// `G ∈ SD(diag(1, d))` with `(a, b) G = (*, gcd(a, b))`.
pub fn gcd_pair_move(a: &BigInt, b: &BigInt, d: &BigInt) -> [[BigInt; 2]; 2] {
    let (x, alpha, beta) = ext_gcd(a, b);
    if x.is_zero() {
        return [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
    }
    let t = crate::arith::coprime_part(d, &beta);
    let top = &alpha + &t * (b / &x);
    let bottom = &beta - &t * (a / &x);
    // lambda * bottom - mu * d * top = 1
    let (one, lambda, nu) = ext_gcd(&bottom, &(d * &top));
    debug_assert!(one.is_one());
    let mu = -nu;
    [[lambda, top], [d * mu, bottom]]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum StepKind {
    /// Plane move in coordinates `(col, g+col)` on every row.
    Swap { row: usize, col: usize },
    /// Row `target` changed by a multiple of row `source`, clearing `col`.
    Combine { target: usize, source: usize, col: Option<usize> },
    /// Isotropy of rows `i`, `j` forces the recorded zero; no matrix.
    Sympl { i: usize, j: usize },
    /// Row `row` replaced by a primitive combination with small divisor.
    Primit { row: usize },
    SortVector { row: usize },
    /// Group element applied to every row.
    Act,
    /// General unimodular basis change.
    Rebase,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "side", content = "matrix", rename_all = "kebab-case")]
pub enum StepOp {
    /// `B <- U B`.
    Left(IntMatrix),
    /// `B <- B γ`.
    Right(IntMatrix),
    /// Assertion on the current basis.
    Check,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TapeStep {
    pub kind: StepKind,
    pub op: StepOp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransformationTape {
    pub input: IntMatrix,
    pub output: IntMatrix,
    pub steps: Vec<TapeStep>,
}

impl TransformationTape {
    pub fn replay(&self) -> Result<IntMatrix> {
        let mut b = self.input.clone();
        for s in &self.steps {
            b = match &s.op {
                StepOp::Left(u) => u.checked_mul(&b)?,
                StepOp::Right(m) => b.checked_mul(m)?,
                StepOp::Check => b,
            };
        }
        if b != self.output {
            return Err(Error::Invariant("tape replay does not reproduce the output".into()));
        }
        Ok(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub unimodular: IntMatrix,
    pub gamma: GroupElement,
    pub tape: TransformationTape,
}

impl Reduction {
    /// `U * B * γ = [1 | 0]`, `det U = ±1`, `γ ∈ TildePol`, and the tape
    /// replays.
    pub fn verify(&self, l: &IsotropicLattice) -> Result<()> {
        let det = self.unimodular.det()?;
        if !det.abs().is_one() {
            return Err(Error::NotUnimodular { det: det.to_string() });
        }
        if !self.gamma.verify()?.is_member() {
            return Err(Error::Invariant("γ is not in the group".into()));
        }
        let out = self.unimodular.checked_mul(l.basis())?.checked_mul(self.gamma.tilde())?;
        if out != IsotropicLattice::standard(l.pol()).basis {
            return Err(Error::Invariant(format!("U B γ = {out}")));
        }
        self.tape.replay()?;
        Ok(())
    }

    /// The basis `U * B` before `γ`; it satisfies
    /// `D_{1..g-1}(row i) = dsum(1, i-1)`.
    pub fn pre_basis(&self, l: &IsotropicLattice) -> Result<IntMatrix> {
        self.unimodular.checked_mul(l.basis())
    }
}

/// `D_{1..g-1}(row i) = dsum(1, i-1)` for every row.
pub fn standard_cusp_property(b: &IntMatrix, p: &Polarization) -> Result<bool> {
    for i in 0..b.rows() {
        let v = SympVector::new(b.row(i).to_vec())?;
        if divisors(&v, p)?.product() != &p.dsum_unchecked(1, i) {
            return Ok(false);
        }
    }
    Ok(true)
}

struct State<'a> {
    p: &'a Polarization,
    b: IntMatrix,
    u: IntMatrix,
    gamma: IntMatrix,
    input: IntMatrix,
    steps: Vec<TapeStep>,
}

impl<'a> State<'a> {
    fn new(l: &'a IsotropicLattice) -> Self {
        let g = l.pol.genus();
        State {
            p: &l.pol,
            b: l.basis.clone(),
            u: IntMatrix::identity(g),
            gamma: IntMatrix::identity(2 * g),
            input: l.basis.clone(),
            steps: Vec::new(),
        }
    }

    fn left(&mut self, kind: StepKind, m: IntMatrix) {
        self.b = &m * &self.b;
        self.u = &m * &self.u;
        self.steps.push(TapeStep { kind, op: StepOp::Left(m) });
    }

    fn right(&mut self, kind: StepKind, m: IntMatrix) {
        self.b = &self.b * &m;
        self.gamma = &self.gamma * &m;
        self.steps.push(TapeStep { kind, op: StepOp::Right(m) });
    }

    fn row(&self, i: usize) -> SympVector {
        SympVector::new(self.b.row(i - 1).to_vec()).expect("2g columns")
    }

    fn fail(&self, what: String) -> Error {
        Error::Invariant(format!("{what}\ninput {}\ncurrent {}\n{} steps recorded", self.input, self.b, self.steps.len()))
    }

    fn tape(&self) -> TransformationTape {
        TransformationTape { input: self.input.clone(), output: self.b.clone(), steps: self.steps.clone() }
    }

    /// Makes `D_i(row i) = 1` by mixing rows `i..g`.
    fn min_divisor(&mut self, i: usize) -> Result<()> {
        let g = self.p.genus();
        let n = g - i + 1;
        let c = divisor_one_combination(&self.b, i, i, self.p).map_err(|e| self.fail(e.to_string()))?;
        if c.iter().enumerate().all(|(r, x)| if r == 0 { x.is_one() } else { x.is_zero() }) {
            return Ok(());
        }
        let sub = complete_to_unimodular(&c)?;
        self.left(StepKind::Primit { row: i }, embed_square(g, i, &sub));
        let d = divisors(&self.row(i), self.p)?;
        if !d.at(i).is_one() {
            return Err(self.fail(format!("row {i} has D_{i} = {} after extraction", d.at(i))));
        }
        debug_assert_eq!(sub.rows(), n);
        Ok(())
    }
}

/// Coefficients `c` over rows `first..g` (1-based) with
/// `D_k(sum c_r row_r) = 1`, `c` primitive. Needs a coprime square-free type.
fn divisor_one_combination(b: &IntMatrix, first: usize, k: usize, p: &Polarization) -> Result<Vec<BigInt>> {
    let g = p.genus();
    let n = g - first + 1;
    let modulus = p.d(k).clone();
    let mut c = vec![BigInt::zero(); n];
    c[0] = BigInt::one();
    if modulus.is_one() {
        return Ok(c);
    }
    let coords: Vec<usize> = (0..k).chain(g..g + k).collect();
    c[0] = BigInt::zero();
    for q in prime_factors(&modulus) {
        let r = (0..n)
            .find(|&r| coords.iter().any(|&s| !b[(first - 1 + r, s)].is_multiple_of(&q)))
            .ok_or_else(|| {
                Error::Invariant(format!("gcd of D_{k} over rows {first}..{g} is divisible by {q}"))
            })?;
        // idempotent for q in Z/modulus
        let co = &modulus / &q;
        let (_, inv, _) = ext_gcd(&co, &q);
        c[r] = (&c[r] + &co * inv).mod_floor(&modulus);
    }
    if !crate::arith::is_primitive(&c) {
        let rest = gcd_all(&c[1..]);
        if rest.is_zero() {
            c[1] = modulus.clone();
        } else {
            let alpha = combine_step(&rest, &c[0], &modulus);
            c[0] += alpha * &modulus;
        }
    }
    debug_assert!(crate::arith::is_primitive(&c));
    Ok(c)
}

/// `g x g` identity with `sub` placed on rows and columns `first..`.
fn embed_square(g: usize, first: usize, sub: &IntMatrix) -> IntMatrix {
    let mut m = IntMatrix::identity(g);
    for a in 0..sub.rows() {
        for c in 0..sub.cols() {
            m[(first - 1 + a, first - 1 + c)] = sub[(a, c)].clone();
        }
    }
    m
}

/// `2g x 2g` identity with `sub` on coordinates `k+1..g, g+k+1..2g`.
fn embed_tail(g: usize, k: usize, sub: &IntMatrix) -> IntMatrix {
    let h = g - k;
    let map = |a: usize| if a < h { k + a } else { g + k + (a - h) };
    let mut m = IntMatrix::identity(2 * g);
    for a in 0..2 * h {
        for c in 0..2 * h {
            m[(map(a), map(c))] = sub[(a, c)].clone();
        }
    }
    m
}

fn require_supported(p: &Polarization) -> Result<()> {
    if !p.is_square_free_coprime() {
        return Err(Error::UnsupportedPolarization(format!(
            "{p} is not square-free and coprime"
        )));
    }
    Ok(())
}

/// A vector with `D_{g-n+1} = 1` in the span of the last `n` rows, placed as
/// the first of those rows. Returns the vector, the new lattice basis and
/// the unimodular change.
pub fn min_divisor_vector(l: &IsotropicLattice, n: usize) -> Result<(SympVector, IsotropicLattice, IntMatrix)> {
    require_supported(l.pol())?;
    let g = l.pol().genus();
    if n < 2 || n > g {
        return Err(Error::InvalidInput(format!("sublattice rank {n} outside 2..={g}")));
    }
    let first = g - n + 1;
    let mut s = State::new(l);
    s.min_divisor(first)?;
    let v = s.row(first);
    Ok((v, IsotropicLattice { pol: l.pol.clone(), basis: s.b.clone() }, s.u))
}

/// Reduces `l` to the standard lattice.
pub fn reduce_to_standard(l: &IsotropicLattice) -> Result<Reduction> {
    let p = l.pol();
    require_supported(p)?;
    l.verify()?;
    let g = p.genus();
    let mut s = State::new(l);
    for k in 0..g.saturating_sub(1) {
        for i in k + 1..g {
            s.min_divisor(i)?;
        }
        // combination of rows k+1..g-1 with D_{k+1..g-1} = 1
        let mut coef: Vec<BigInt> =
            (k + 1..g).map(|n| p.dsum_unchecked(k + 1, n - 1) * p.dsum_unchecked(n + 1, g - 1)).collect();
        coef.push(BigInt::zero());
        let sub = complete_to_unimodular(&coef)?;
        if !sub.is_identity() {
            s.left(StepKind::Rebase, embed_square(g, k + 1, &sub));
        }
        let v = s.row(k + 1);
        if !divisors(&v, p)?.range(k + 1, g - 1).is_one() {
            return Err(s.fail(format!("D_{{{}..{}}}({v}) is not 1", k + 1, g - 1)));
        }
        // move v to e_{k+1} inside the tail block
        let h = g - k;
        let sub_v: Vec<BigInt> = (k..g).chain(g + k..2 * g).map(|c| v.entries()[c].clone()).collect();
        if (0..2 * g).any(|c| (c < k || (c >= g && c < g + k)) && !v.entries()[c].is_zero()) {
            return Err(s.fail(format!("row {} left the tail block", k + 1)));
        }
        let sub_v = SympVector::new(sub_v)?;
        let tail = p.tail(k);
        let m = match transporter(&sub_v, &SympVector::unit(h, 1), &tail, GroupKind::TildePol)? {
            Transport::Equivalent(m) => m,
            Transport::NotEquivalent { v_canonical, .. } => {
                return Err(s.fail(format!("{sub_v} has v̂ = {v_canonical}, not that of e_1")))
            }
        };
        s.right(StepKind::Act, embed_tail(g, k, m.tilde()));
        if s.row(k + 1) != SympVector::unit(g, k + 1) {
            return Err(s.fail(format!("row {} is not e_{}", k + 1, k + 1)));
        }
        for j in k + 2..=g {
            if !s.b[(j - 1, g + k)].is_zero() {
                return Err(s.fail(format!("isotropy should force entry ({j},{}) to 0", g + k + 1)));
            }
            s.steps.push(TapeStep { kind: StepKind::Sympl { i: k + 1, j }, op: StepOp::Check });
        }
        for j in k + 2..=g {
            let x = s.b[(j - 1, k)].clone();
            if !x.is_zero() {
                let mut m = IntMatrix::identity(g);
                m[(j - 1, k)] = -x;
                s.left(StepKind::Combine { target: j, source: k + 1, col: Some(k + 1) }, m);
            }
        }
    }
    let (a, b) = (s.b[(g - 1, g - 1)].clone(), s.b[(g - 1, 2 * g - 1)].clone());
    if !gcd(&a, &b).is_one() {
        return Err(s.fail(format!("last row ends in ({a}, {b})")));
    }
    s.right(StepKind::Act, gens::plane_to_gcd(p, g, &a, &b));
    let standard = IsotropicLattice::standard(p);
    if s.b != standard.basis {
        return Err(s.fail("final basis is not standard".into()));
    }
    let red = Reduction {
        unimodular: s.u.clone(),
        gamma: GroupElement::from_tilde(GroupKind::TildePol, p, s.gamma.clone())?,
        tape: s.tape(),
    };
    if cfg!(debug_assertions) {
        red.verify(l)?;
    }
    Ok(red)
}

/// One `gcd(D_k(v^i) : i in rows) = 1` check, with a witness row for each
/// prime of `d_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorGcdWitness {
    pub k: usize,
    #[serde(with = "crate::ints::big")]
    pub m_k: BigInt,
    /// `(prime, row)` with the prime not dividing `D_k(row)`.
    pub witnesses: Vec<(String, usize)>,
}

/// Certifies `gcd(D_k(v^{i_1}), ..., D_k(v^{i_n})) = 1` for every
/// `k >= g-n+1` on the chosen rows (1-based). A failure is a counterexample
/// and comes back as an error carrying the basis.
pub fn certify_divisor_gcd(l: &IsotropicLattice, rows: &[usize]) -> Result<Vec<DivisorGcdWitness>> {
    let p = l.pol();
    require_supported(p)?;
    let g = p.genus();
    let n = rows.len();
    if n < 2 || n > g || rows.iter().any(|&r| r == 0 || r > g) {
        return Err(Error::InvalidInput(format!("rows {rows:?} must be 2..={g} indices in 1..={g}")));
    }
    let tuples = rows.iter().map(|&r| divisors(&l.row(r), p)).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for k in g - n + 1..g {
        let m_k = gcd_all(tuples.iter().map(|t| t.at(k)));
        if !m_k.is_one() {
            return Err(Error::Invariant(format!(
                "gcd of D_{k} over rows {rows:?} is {m_k} for basis {}",
                l.basis()
            )));
        }
        let witnesses = prime_factors(p.d(k))
            .into_iter()
            .map(|q| {
                let r = rows.iter().zip(&tuples).find(|(_, t)| !t.at(k).is_multiple_of(&q)).expect("m_k = 1").0;
                (q.to_string(), *r)
            })
            .collect();
        out.push(DivisorGcdWitness { k, m_k, witnesses });
    }
    Ok(out)
}

/// `gcd_i D_k(row_i)` for `k = 1..g-1`.
pub fn divisor_gcds(b: &IntMatrix, p: &Polarization) -> Result<Vec<BigInt>> {
    let g = p.genus();
    let tuples = (0..b.rows())
        .map(|i| divisors(&SympVector::new(b.row(i).to_vec())?, p))
        .collect::<Result<Vec<_>>>()?;
    Ok((1..g).map(|k| gcd_all(tuples.iter().map(|t| t.at(k)))).collect())
}

/// Product of random elementary row operations and row swaps.
pub fn random_unimodular<R: Rng>(n: usize, steps: usize, rng: &mut R) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        if rng.gen_bool(0.2) {
            m.swap_rows(i, j);
        } else {
            let f = BigInt::from(rng.gen_range(-3i64..=3));
            m.add_row_multiple(i, j, &f);
        }
    }
    m
}

/// `U * [1 | 0] * M` for a random word `M` in `TildePol` of the given length
/// and a random unimodular `U`.
pub fn random_lattice(p: &Polarization, seed: u64, length: usize) -> IsotropicLattice {
    let g = p.genus();
    let m = random_element(GroupKind::TildePol, p, seed, length);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let u = random_unimodular(g, 3 * g, &mut rng);
    let b = &(&u * IsotropicLattice::standard(p).basis()) * m.tilde();
    debug_assert!(member_tilde(m.tilde(), false, p).unwrap().is_member());
    IsotropicLattice { pol: p.clone(), basis: b }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_matrix;

    fn pol(e: &[u64]) -> Polarization {
        Polarization::from_u64(e).unwrap()
    }

    fn v(x: &[i64]) -> SympVector {
        SympVector::from_i64(x)
    }

    #[test]
    fn make_lattice_examples() {
        let p = pol(&[1, 2, 6]);
        let l = make_lattice(&parse_matrix("1,0,0,0,0,0;0,1,0,0,0,0;0,0,1,0,0,0").unwrap(), &p).unwrap();
        assert_eq!(l, IsotropicLattice::standard(&p));
        let err = make_lattice(&parse_matrix("1,0,0,0;0,0,1,0").unwrap(), &pol(&[1, 2])).unwrap_err();
        assert_eq!(err, Error::NotIsotropic { i: 1, j: 2, value: "1".into() });
        let l = make_lattice(&parse_matrix("2,0,0,0,0,0;0,1,0,0,0,0;0,0,1,0,0,0").unwrap(), &p).unwrap();
        assert_eq!(l, IsotropicLattice::standard(&p));
        let l = make_lattice(&parse_matrix("1/2,0,0,0;0,3,0,0").unwrap(), &pol(&[1, 2])).unwrap();
        assert_eq!(l, IsotropicLattice::standard(&pol(&[1, 2])));
        assert!(matches!(
            make_lattice(&parse_matrix("1,0,0,0;2,0,0,0").unwrap(), &pol(&[1, 2])),
            Err(Error::Rank { .. })
        ));
    }

    #[test]
    fn getgcdsym_examples() {
        let p = pol(&[1, 2]);
        let m = getgcdsym_transform(&v(&[2, 3, 0, 0]), &[1, 2], &p).unwrap();
        assert_eq!(m.act(&v(&[2, 3, 0, 0])).unwrap().at(2), &BigInt::from(1));
        assert!(m.verify().unwrap().is_member());
        let m = getgcdsym_transform(&v(&[4, 6, 0, 0]), &[1, 2], &p).unwrap();
        assert_eq!(m.act(&v(&[4, 6, 0, 0])).unwrap().at(2), &BigInt::from(2));
        let q = pol(&[1, 2, 6]);
        let m = getgcdsym_transform(&v(&[1, 0, 0, 0, 0, 0]), &[1, 2, 3], &q).unwrap();
        assert_eq!(m.act(&v(&[1, 0, 0, 0, 0, 0])).unwrap().at(3), &BigInt::from(1));
        assert!(getgcdsym_transform(&v(&[1, 0, 0, 0]), &[2, 1], &p).is_err());
        assert!(getgcdsym_transform(&v(&[1, 0, 0, 0]), &[1, 3], &p).is_err());
    }

    #[test]
    fn gcd_pair_move_lands_in_sd() {
        for (a, b, d) in [(2, 3, 2), (4, 6, 2), (0, 5, 6), (7, 0, 30), (-4, 10, 6), (9, 12, 15)] {
            let (a, b, d) = (BigInt::from(a), BigInt::from(b), BigInt::from(d));
            let gm = gcd_pair_move(&a, &b, &d);
            let m = IntMatrix::from_rows(gm.iter().map(|r| r.to_vec()).collect()).unwrap();
            assert!(m.det().unwrap().is_one());
            assert!(m[(1, 0)].is_multiple_of(&d));
            assert_eq!(m.left_mul_vec(&[a.clone(), b.clone()]).unwrap()[1], gcd(&a, &b));
        }
    }

    #[test]
    fn standard_lattice_is_stabilized() {
        for e in [&[1u64, 2][..], &[1, 2, 6], &[1, 3], &[5]] {
            let p = pol(e);
            let l = IsotropicLattice::standard(&p);
            let r = reduce_to_standard(&l).unwrap();
            let moved = l.act(r.gamma.tilde()).unwrap();
            assert_eq!(row_hnf(moved.basis()).hnf, *l.basis(), "{p}");
            r.verify(&l).unwrap();
        }
    }

    #[test]
    fn random_lattices_reduce() {
        for e in [&[1u64, 2][..], &[1, 3], &[1, 2, 6], &[1, 2, 6, 30], &[1, 6, 30]] {
            let p = pol(e);
            for seed in 0..15 {
                let l = random_lattice(&p, seed, 12);
                l.verify().unwrap();
                let r = reduce_to_standard(&l).unwrap();
                r.verify(&l).unwrap();
                assert!(standard_cusp_property(&r.pre_basis(&l).unwrap(), &p).unwrap());
            }
        }
    }

    #[test]
    fn min_divisor_examples() {
        let p = pol(&[1, 2, 6]);
        let (w, _, _) = min_divisor_vector(&IsotropicLattice::standard(&p), 3).unwrap();
        assert!(divisors(&w, &p).unwrap().at(1).is_one());
        for seed in 0..10 {
            let l = random_lattice(&p, seed, 10);
            let (w, l2, u) = min_divisor_vector(&l, 2).unwrap();
            assert!(divisors(&w, &p).unwrap().at(2).is_one());
            assert_eq!(&u.checked_mul(l.basis()).unwrap(), l2.basis());
            let (w, _, _) = min_divisor_vector(&l, 3).unwrap();
            assert!(divisors(&w, &p).unwrap().at(1).is_one());
        }
        assert!(matches!(
            min_divisor_vector(&IsotropicLattice::standard(&pol(&[1, 4])), 2),
            Err(Error::UnsupportedPolarization(_))
        ));
    }

    #[test]
    fn tape_replays() {
        let p = pol(&[1, 2, 6]);
        let l = random_lattice(&p, 4, 15);
        let r = reduce_to_standard(&l).unwrap();
        assert_eq!(r.tape.replay().unwrap(), IsotropicLattice::standard(&p).basis().clone());
        let mut bad = r.tape.clone();
        bad.steps.pop();
        assert!(bad.replay().is_err());
    }

    #[test]
    fn divisor_gcd_certificates() {
        let p = pol(&[1, 2, 6]);
        for seed in 0..10 {
            let l = random_lattice(&p, seed, 10);
            certify_divisor_gcd(&l, &[1, 2, 3]).unwrap();
            certify_divisor_gcd(&l, &[1, 3]).unwrap();
            certify_divisor_gcd(&l, &[2, 3]).unwrap();
        }
    }
}
