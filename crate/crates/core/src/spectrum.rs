use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Laplacian spectrum as `(eigenvalue, multiplicity)` pairs, eigenvalues
/// strictly decreasing (0 last), multiplicities positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Spectrum {
    pairs: Vec<(u64, u64)>,
}

impl Spectrum {
    /// Normalizes: drops zero multiplicities, merges repeated eigenvalues,
    /// sorts decreasing.
    pub fn new(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut merged: BTreeMap<u64, u64> = BTreeMap::new();
        for (value, mult) in pairs {
            if mult > 0 {
                *merged.entry(value).or_default() += mult;
            }
        }
        Spectrum {
            pairs: merged.into_iter().rev().collect(),
        }
    }

    /// Like [`Spectrum::new`] but with signed multiplicities, which must
    /// be non-negative.
    pub fn from_signed(pairs: &[(u64, i128)]) -> Result<Self> {
        let mut out = Vec::with_capacity(pairs.len());
        for &(value, mult) in pairs {
            let mult = u64::try_from(mult)
                .map_err(|_| Error::Internal(format!("negative multiplicity {mult} for eigenvalue {value}")))?;
            out.push((value, mult));
        }
        Ok(Spectrum::new(out))
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    pub fn multiplicity(&self, value: u64) -> u64 {
        self.pairs.iter().find(|&&(v, _)| v == value).map_or(0, |&(_, m)| m)
    }

    /// Sum of multiplicities.
    pub fn size(&self) -> u64 {
        self.pairs.iter().map(|&(_, m)| m).sum()
    }

    /// Sum of eigenvalues with multiplicity, i.e. the trace it implies.
    pub fn weighted_sum(&self) -> u128 {
        self.pairs.iter().map(|&(v, m)| v as u128 * m as u128).sum()
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(v, m)| format!("{v}:{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}
