//! Finite partial functions from the naturals to {0, 1}, ordered by
//! reverse inclusion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::lazy::{DenseSet, LazyPoset};
use super::supersets::{counting, Supersets};

/// Default bound on domain elements considered while enumerating.
pub const DEFAULT_HORIZON: u64 = 1 << 16;

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BinaryCondition {
    values: BTreeMap<u64, bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("conditions disagree at {point}")]
pub struct IncompatibleConditions {
    pub point: u64,
}

impl BinaryCondition {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, bool)>) -> Self {
        BinaryCondition {
            values: pairs.into_iter().collect(),
        }
    }

    pub fn get(&self, x: u64) -> Option<bool> {
        self.values.get(&x).copied()
    }

    pub fn domain(&self) -> impl Iterator<Item = u64> + '_ {
        self.values.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, bool)> + '_ {
        self.values.iter().map(|(k, v)| (*k, *v))
    }

    /// `self` contains `other` as a function, i.e. `self <= other`.
    pub fn extends(&self, other: &BinaryCondition) -> bool {
        other
            .values
            .iter()
            .all(|(k, v)| self.values.get(k) == Some(v))
    }

    /// First point of the common domain where the two disagree.
    pub fn disagreement(&self, other: &BinaryCondition) -> Option<u64> {
        self.values
            .iter()
            .find(|(k, v)| other.values.get(k).is_some_and(|w| w != *v))
            .map(|(k, _)| *k)
    }

    pub fn compatible(&self, other: &BinaryCondition) -> bool {
        self.disagreement(other).is_none()
    }

    pub fn union(
        &self,
        other: &BinaryCondition,
    ) -> Result<BinaryCondition, IncompatibleConditions> {
        if let Some(point) = self.disagreement(other) {
            return Err(IncompatibleConditions { point });
        }
        let mut values = self.values.clone();
        values.extend(other.values.iter().map(|(k, v)| (*k, *v)));
        Ok(BinaryCondition { values })
    }
}

impl fmt::Display for BinaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}:{}", u8::from(*v))?;
        }
        f.write_str("}")
    }
}

/// The union of pairwise compatible conditions.
pub fn union_of_filter<'a>(
    chain: impl IntoIterator<Item = &'a BinaryCondition>,
) -> Result<BinaryCondition, IncompatibleConditions> {
    let chain: Vec<&BinaryCondition> = chain.into_iter().collect();
    for (i, a) in chain.iter().enumerate() {
        for b in &chain[i + 1..] {
            if let Some(point) = a.disagreement(b) {
                return Err(IncompatibleConditions { point });
            }
        }
    }
    chain
        .iter()
        .try_fold(BinaryCondition::empty(), |acc, c| acc.union(c))
}

/// All finite binary conditions, enumerated by (largest domain point,
/// domain as a bitmask, values as a bitmask).
#[derive(Debug, Clone, Copy)]
pub struct BinaryPoset {
    horizon: u64,
}

impl Default for BinaryPoset {
    fn default() -> Self {
        BinaryPoset {
            horizon: DEFAULT_HORIZON,
        }
    }
}

impl BinaryPoset {
    pub fn new(horizon: u64) -> Self {
        BinaryPoset { horizon }
    }
}

impl LazyPoset for BinaryPoset {
    type Elem = BinaryCondition;

    fn iter(&self) -> Box<dyn Iterator<Item = BinaryCondition> + '_> {
        self.below(&BinaryCondition::empty())
    }

    fn leq(&self, a: &BinaryCondition, b: &BinaryCondition) -> bool {
        a.extends(b)
    }

    fn describe(&self, a: &BinaryCondition) -> String {
        a.to_string()
    }

    fn below<'a>(&'a self, p: &BinaryCondition) -> Box<dyn Iterator<Item = BinaryCondition> + 'a> {
        let p = p.clone();
        let base: BTreeSet<u64> = p.domain().collect();
        Box::new(
            Supersets::new(base.clone(), self.horizon, |_| true).flat_map(move |dom| {
                let fresh: Vec<u64> = dom.difference(&base).copied().collect();
                let p = p.clone();
                counting(fresh.len()).map(move |bits| {
                    let mut values = p.values.clone();
                    values.extend(fresh.iter().copied().zip(bits));
                    BinaryCondition { values }
                })
            }),
        )
    }
}

/// `D_n`: conditions defined at `n`.
pub fn defined_at<'a>(n: u64) -> DenseSet<'a, BinaryCondition> {
    DenseSet::new(format!("D{n}"), move |c: &BinaryCondition| {
        c.get(n).is_some()
    })
}

/// `E_h`: conditions that disagree somewhere with `h`, where `h` is the
/// infinite sequence repeating `pattern`.
///
/// # Panics
/// If `pattern` is empty.
pub fn disagrees_with<'a>(pattern: Vec<bool>) -> DenseSet<'a, BinaryCondition> {
    assert!(!pattern.is_empty(), "sequence pattern must be nonempty");
    let id: String = pattern.iter().map(|b| if *b { '1' } else { '0' }).collect();
    DenseSet::new(format!("E{id}"), move |c: &BinaryCondition| {
        c.iter()
            .any(|(x, v)| pattern[(x % pattern.len() as u64) as usize] != v)
    })
}
