use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd_all, primitivize};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// An integer vector in `Z^{2g}`. Coordinates are 1-based in accessor names
/// (`at(i)`), 0-based in slices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "crate::ints::Ints", into = "crate::ints::Ints")]
pub struct SympVector {
    entries: Vec<BigInt>,
}

impl SympVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        if entries.is_empty() || entries.len() % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "vector length {} is not a positive even number",
                entries.len()
            )));
        }
        Ok(SympVector { entries })
    }

    pub fn from_i64(entries: &[i64]) -> Self {
        Self::new(entries.iter().map(|&x| BigInt::from(x)).collect()).expect("even length")
    }

    /// The `i`-th unit vector (1-based) in `Z^{2g}`.
    pub fn unit(g: usize, i: usize) -> Self {
        let mut e = vec![BigInt::zero(); 2 * g];
        e[i - 1] = BigInt::from(1);
        SympVector { entries: e }
    }

    pub fn genus(&self) -> usize {
        self.entries.len() / 2
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.entries
    }

    /// Entry `i`, 1-based.
    pub fn at(&self, i: usize) -> &BigInt {
        &self.entries[i - 1]
    }

    /// `gcd(v_i, v_{g+i})`, 1-based `i <= g`.
    pub fn pair_gcd(&self, i: usize) -> BigInt {
        let g = self.genus();
        gcd_all([&self.entries[i - 1], &self.entries[g + i - 1]])
    }

    pub fn content(&self) -> BigInt {
        gcd_all(&self.entries)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == BigInt::from(1)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn primitivize(&self) -> Result<Self> {
        Ok(SympVector { entries: primitivize(&self.entries)? })
    }

    pub(crate) fn require_primitive(&self) -> Result<()> {
        if self.is_primitive() {
            Ok(())
        } else {
            Err(Error::NotPrimitive { gcd: self.content().to_string() })
        }
    }

    /// Row vector times matrix.
    pub fn apply(&self, m: &IntMatrix) -> Result<SympVector> {
        Ok(SympVector { entries: m.left_mul_vec(&self.entries)? })
    }

    pub fn neg(&self) -> SympVector {
        SympVector { entries: self.entries.iter().map(|x| -x).collect() }
    }
}

impl fmt::Display for SympVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for SympVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SympVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .trim()
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::InvalidInput(format!("cannot parse vector entry {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        SympVector::new(entries)
    }
}

impl TryFrom<crate::ints::Ints> for SympVector {
    type Error = Error;
    fn try_from(v: crate::ints::Ints) -> Result<Self> {
        SympVector::new(v.into())
    }
}

impl From<SympVector> for crate::ints::Ints {
    fn from(v: SympVector) -> Self {
        v.entries.into()
    }
}
