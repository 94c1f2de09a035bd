//! Brute-force checks: random walks along orbits and exhaustive scans of a
//! residue box against the enumerated representatives.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{random_generator, GroupKind};
use crate::invariants::divisors;
use crate::matrix::IntMatrix;
use crate::orbits_lines::{canon, enumerate_lev, enumerate_pol};
use crate::polarization::Polarization;
use crate::vector::SympVector;

/// Walks from `start`, each a sequence of random generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitSample {
    pub seed: u64,
    pub kind: GroupKind,
    pub pol: Polarization,
    pub start: SympVector,
    pub steps: usize,
    /// Generators of each walk, in order.
    pub walks: Vec<Vec<IntMatrix>>,
    /// Distinct vectors met on the way, sorted, `start` included.
    pub visited: Vec<SympVector>,
}

impl OrbitSample {
    /// Replays every walk and checks that `visited` is exactly what the
    /// walks reach.
    pub fn replay(&self) -> Result<()> {
        let mut seen = vec![self.start.clone()];
        for walk in &self.walks {
            let mut x = self.start.clone();
            for m in walk {
                x = x.apply(m)?;
                seen.push(x.clone());
            }
        }
        seen.sort();
        seen.dedup();
        if seen != self.visited {
            return Err(Error::Invariant("walks do not reproduce the visited set".into()));
        }
        Ok(())
    }

    /// Vectors whose canonical form differs from that of `start`.
    pub fn escapes(&self) -> Result<Vec<SympVector>> {
        let c = canon(&self.start, self.kind, &self.pol)?.canonical;
        let mut out = Vec::new();
        for v in &self.visited {
            if canon(v, self.kind, &self.pol)?.canonical != c {
                out.push(v.clone());
            }
        }
        Ok(out)
    }
}

/// `walks` random walks of `steps` generators each, starting at `v`.
/// Only the integral kinds are sampled.
pub fn orbit_sample(
    v: &SympVector,
    kind: GroupKind,
    p: &Polarization,
    seed: u64,
    walks: usize,
    steps: usize,
) -> Result<OrbitSample> {
    if kind.is_conjugated() {
        return Err(Error::InvalidInput(format!("sampling needs an integral kind, got {}", kind.name())));
    }
    if v.genus() != p.genus() {
        return Err(Error::Dimension { expected: 2 * p.genus(), got: v.entries().len() });
    }
    v.require_primitive()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut visited = vec![v.clone()];
    let mut words = Vec::with_capacity(walks);
    for _ in 0..walks {
        let mut x = v.clone();
        let mut word = Vec::with_capacity(steps);
        for _ in 0..steps {
            let m = random_generator(p, kind.is_level(), &mut rng);
            x = x.apply(&m)?;
            visited.push(x.clone());
            word.push(m);
        }
        words.push(word);
    }
    visited.sort();
    visited.dedup();
    Ok(OrbitSample { seed, kind, pol: p.clone(), start: v.clone(), steps, walks: words, visited })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScannedClass {
    pub canonical: SympVector,
    #[serde(with = "crate::ints::big")]
    pub product: BigInt,
    /// Number of scanned vectors in the class.
    pub members: u64,
    /// Smallest scanned member.
    pub example: SympVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub kind: GroupKind,
    pub pol: Polarization,
    #[serde(with = "crate::ints::big")]
    pub bound: BigInt,
    pub scanned: u64,
    pub primitive: u64,
    /// The cap stopped the scan early.
    pub incomplete: bool,
    pub classes: Vec<ScannedClass>,
    pub enumerated: Vec<SympVector>,
    /// Scanned classes without an enumerated representative.
    pub unmatched_classes: Vec<SympVector>,
    /// Enumerated representatives never reached by the scan.
    pub unreached: Vec<SympVector>,
    pub agree: bool,
}

/// Default number of vectors examined before a scan is cut off.
pub const DEFAULT_SCAN_CAP: u64 = 5_000_000;

/// Classifies every primitive vector in `[0, bound)^{2g}` and compares the
/// classes with the enumeration for `kind`.
pub fn cross_validate_lines(p: &Polarization, kind: GroupKind, bound: &BigInt, cap: u64) -> Result<CrossValidation> {
    if kind.is_conjugated() {
        return Err(Error::InvalidInput(format!("cross-validation needs an integral kind, got {}", kind.name())));
    }
    let g = p.genus();
    let need = p.dsum_unchecked(1, g - 1);
    if bound < &need {
        return Err(Error::InvalidInput(format!("bound {bound} is below dsum(1, g-1) = {need}")));
    }
    let b = bound
        .to_u64()
        .filter(|b| *b <= u32::MAX as u64)
        .ok_or_else(|| Error::InvalidInput(format!("bound {bound} is too large to scan")))?;
    let mut classes: BTreeMap<SympVector, ScannedClass> = BTreeMap::new();
    let mut scanned = 0u64;
    let mut primitive = 0u64;
    let mut incomplete = false;
    let mut digits = vec![0u64; 2 * g];
    'scan: loop {
        if scanned >= cap {
            incomplete = true;
            break;
        }
        scanned += 1;
        let v = SympVector::new(digits.iter().map(|&x| BigInt::from(x)).collect())?;
        if v.is_primitive() {
            primitive += 1;
            let c = canon(&v, kind, p)?.canonical;
            let entry = classes.entry(c.clone()).or_insert_with(|| ScannedClass {
                product: divisors(&c, p).map(|t| t.product().clone()).unwrap_or_else(|_| BigInt::one()),
                canonical: c,
                members: 0,
                example: v.clone(),
            });
            entry.members += 1;
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < b {
                continue 'scan;
            }
            *d = 0;
        }
        break;
    }
    let enumerated: Vec<SympVector> = if kind.is_level() {
        enumerate_lev(p).iter().map(|l| l.to_vector(p)).collect::<Result<_>>()?
    } else {
        enumerate_pol(p).into_iter().map(|c| c.vhat).collect()
    };
    let unmatched_classes: Vec<SympVector> =
        classes.keys().filter(|c| !enumerated.contains(c)).cloned().collect();
    let unreached: Vec<SympVector> = enumerated.iter().filter(|r| !classes.contains_key(*r)).cloned().collect();
    let agree = !incomplete && unmatched_classes.is_empty() && unreached.is_empty();
    Ok(CrossValidation {
        kind,
        pol: p.clone(),
        bound: bound.clone(),
        scanned,
        primitive,
        incomplete,
        classes: classes.into_values().collect(),
        enumerated,
        unmatched_classes,
        unreached,
        agree,
    })
}

/// Uniform entries in `[-bound, bound]`, redrawn until primitive.
pub fn random_primitive<R: Rng>(g: usize, bound: i64, rng: &mut R) -> SympVector {
    loop {
        let v = SympVector::new((0..2 * g).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect())
            .expect("even length");
        if v.is_primitive() {
            return v;
        }
    }
}

/// Product of random elementary matrices `1 + a E_rc` in `SD(Δ)`.
pub fn random_sd<R: Rng>(p: &Polarization, steps: usize, rng: &mut R) -> IntMatrix {
    let g = p.genus();
    let mut m = IntMatrix::identity(g);
    if g < 2 {
        return m;
    }
    for _ in 0..steps {
        let r = rng.gen_range(0..g);
        let mut c = rng.gen_range(0..g - 1);
        if c >= r {
            c += 1;
        }
        let mut a = BigInt::from(rng.gen_range(-3i64..=3));
        if r > c {
            a *= p.dsum_unchecked(c + 1, r);
        }
        m.add_row_multiple(r, c, &a);
    }
    m
}
