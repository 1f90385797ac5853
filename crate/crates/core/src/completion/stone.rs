//! Ultrafilters of a finite regular open algebra.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{CompletionError, RegularOpenAlgebra, MAX_STONE_CARRIER};
use crate::poset::FinitePoset;

/// The ultrafilters of `A ∖ {0}`, each recorded as a set of carrier indices.
#[derive(Debug, Clone)]
pub struct StoneSpace<'a> {
    algebra: &'a RegularOpenAlgebra,
    points: Vec<BTreeSet<usize>>,
    generators: Vec<usize>,
}

pub fn stone_space(algebra: &RegularOpenAlgebra) -> Result<StoneSpace<'_>, CompletionError> {
    if algebra.len() > MAX_STONE_CARRIER {
        return Err(CompletionError::CarrierTooLarge {
            size: algebra.len(),
            limit: MAX_STONE_CARRIER,
        });
    }
    let nonzero = algebra.nonzero_poset();
    let mut points = Vec::new();
    let mut generators = Vec::new();
    // A nonempty filter of a finite poset is the upward closure of any of its
    // least elements; maximal ones come from minimal elements.
    for r in 0..nonzero.len() {
        let g = nonzero.above(r);
        if nonzero
            .is_ultrafilter(&g)
            .expect("principal upsets are filters")
        {
            points.push(g.iter().map(|k| k + 1).collect());
            generators.push(r + 1);
        }
    }
    Ok(StoneSpace {
        algebra,
        points,
        generators,
    })
}

impl<'a> StoneSpace<'a> {
    pub fn algebra(&self) -> &'a RegularOpenAlgebra {
        self.algebra
    }

    pub fn points(&self) -> &[BTreeSet<usize>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The least element of the point's ultrafilter.
    pub fn generator(&self, point: usize) -> usize {
        self.generators[point]
    }

    /// `N_b = {G : b ∈ G}`, as point indices.
    pub fn basic_open(&self, b: usize) -> BTreeSet<usize> {
        (0..self.points.len())
            .filter(|&g| self.points[g].contains(&b))
            .collect()
    }

    pub fn describe_point(&self, point: usize) -> String {
        let members: Vec<String> = self.points[point]
            .iter()
            .map(|&b| self.algebra.describe(b))
            .collect();
        format!("{{{}}}", members.join(", "))
    }

    /// The nonzero part of the algebra as a poset, the carrier of the points.
    pub fn nonzero_poset(&self) -> FinitePoset {
        self.algebra.nonzero_poset()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StoneReport {
    pub passed: bool,
    pub points: usize,
    pub pairs_checked: usize,
    pub failures: Vec<String>,
}

/// Checks `N_b ∩ N_c = ∅ ⟺ b ∧ c = 0` and `N_{b∧c} = N_b ∩ N_c` for every
/// pair of carrier elements.
pub fn stone_ccc_check(space: &StoneSpace<'_>) -> StoneReport {
    let a = space.algebra;
    let opens: Vec<BTreeSet<usize>> = (0..a.len()).map(|b| space.basic_open(b)).collect();
    let mut failures = Vec::new();
    for b in 0..a.len() {
        for c in 0..a.len() {
            let both: BTreeSet<usize> = opens[b].intersection(&opens[c]).copied().collect();
            let m = a.meet(b, c);
            if both.is_empty() != (m == a.zero()) && failures.len() < 16 {
                failures.push(format!(
                    "{} and {}: N_b ∩ N_c empty={}, b ∧ c = 0 is {}",
                    a.describe(b),
                    a.describe(c),
                    both.is_empty(),
                    m == a.zero()
                ));
            }
            if opens[m] != both && failures.len() < 16 {
                failures.push(format!(
                    "N of {} ∧ {} differs from N_b ∩ N_c",
                    a.describe(b),
                    a.describe(c)
                ));
            }
        }
    }
    StoneReport {
        passed: failures.is_empty(),
        points: space.len(),
        pairs_checked: a.len() * a.len(),
        failures,
    }
}
