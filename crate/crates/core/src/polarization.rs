//! Polarization types `(e_1, ..., e_g)` with `e_i | e_{i+1}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::arith::is_square_free;
use crate::error::{Error, Result};

/// A polarization type normalized to `e_1 = 1`.
///
/// Indices in the public API are 1-based to match the usual notation:
/// `d(i) = e_{i+1} / e_i` for `1 <= i <= g-1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "crate::ints::Ints", into = "crate::ints::Ints")]
pub struct Polarization {
    e: Vec<BigInt>,
    d: Vec<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub square_free: bool,
    pub coprime: bool,
}

impl Polarization {
    /// Validates the divisibility chain and divides through by `e_1`.
    pub fn new(e: Vec<BigInt>) -> Result<Self> {
        if e.is_empty() {
            return Err(Error::InvalidPolarization("empty type".into()));
        }
        if let Some(bad) = e.iter().find(|x| !x.is_positive()) {
            return Err(Error::InvalidPolarization(format!("entry {bad} is not positive")));
        }
        for w in e.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(Error::InvalidPolarization(format!("{} does not divide {}", w[0], w[1])));
            }
        }
        let e1 = e[0].clone();
        let e: Vec<BigInt> = e.into_iter().map(|x| x / &e1).collect();
        let d = e.windows(2).map(|w| &w[1] / &w[0]).collect();
        Ok(Polarization { e, d })
    }

    pub fn from_u64(e: &[u64]) -> Result<Self> {
        Self::new(e.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn genus(&self) -> usize {
        self.e.len()
    }

    /// Normalized `(e_1, ..., e_g)`, with `e_1 = 1`.
    pub fn e(&self) -> &[BigInt] {
        &self.e
    }

    /// `e_i`, 1-based.
    pub fn e_at(&self, i: usize) -> &BigInt {
        &self.e[i - 1]
    }

    /// The quotients `(d_1, ..., d_{g-1})`.
    pub fn ds(&self) -> &[BigInt] {
        &self.d
    }

    /// `d_i`, 1-based.
    pub fn d(&self, i: usize) -> &BigInt {
        &self.d[i - 1]
    }

    /// `prod_{n=i}^{j} d_n`, and 1 for the empty range `i > j`.
    pub fn dsum(&self, i: usize, j: usize) -> Result<BigInt> {
        let g = self.genus();
        if i < 1 || i > g || j > g - 1 {
            return Err(Error::InvalidInput(format!("dsum({i},{j}) outside 1<=i<={g}, 0<=j<={}", g - 1)));
        }
        Ok(self.dsum_unchecked(i, j))
    }

    pub(crate) fn dsum_unchecked(&self, i: usize, j: usize) -> BigInt {
        if i > j {
            BigInt::one()
        } else {
            &self.e[j] / &self.e[i - 1]
        }
    }

    pub fn classify(&self) -> Classification {
        let square_free = self.d.iter().all(is_square_free);
        let coprime = self
            .d
            .iter()
            .enumerate()
            .all(|(i, a)| self.d[i + 1..].iter().all(|b| a.gcd(b).is_one()));
        Classification { square_free, coprime }
    }

    pub fn is_square_free_coprime(&self) -> bool {
        let c = self.classify();
        c.square_free && c.coprime
    }

    /// The type `(1, d_{k+1}, d_{k+1} d_{k+2}, ...)` on the last `g - k`
    /// coordinates.
    pub fn tail(&self, k: usize) -> Polarization {
        let base = &self.e[k];
        Polarization::new(self.e[k..].iter().map(|x| x / base).collect())
            .expect("tail of a valid type is valid")
    }

    /// The induced type on a subset of coordinates (1-based, increasing).
    pub fn restrict(&self, indices: &[usize]) -> Polarization {
        Polarization::new(indices.iter().map(|&i| self.e[i - 1].clone()).collect())
            .expect("restriction of a valid type is valid")
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.e.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polarization{self}")
    }
}

/// Parses the comma-separated form `1,4,24`.
impl FromStr for Polarization {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let e = s
            .trim()
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::InvalidPolarization(format!("cannot parse {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Polarization::new(e)
    }
}

impl TryFrom<crate::ints::Ints> for Polarization {
    type Error = Error;
    fn try_from(e: crate::ints::Ints) -> Result<Self> {
        Polarization::new(e.into())
    }
}

impl From<Polarization> for crate::ints::Ints {
    fn from(p: Polarization) -> Self {
        p.e.into()
    }
}
