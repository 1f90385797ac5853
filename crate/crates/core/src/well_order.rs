//! Explicit finite relations: order-property checks, order types,
//! the comparison theorem for well-orders, and the sum/product
//! constructions used as a brute-force model of ordinal arithmetic.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::bits::BitMatrix;
use crate::ordinal::Ordinal;

/// Explicit products larger than this are rejected by [`power_order`].
pub const MAX_EXPLICIT_POWER: usize = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("{which} relation is not a well-order")]
    NotWellOrder { which: &'static str },
    #[error("cantor check supports n in 0..=4, got {0}")]
    CantorOutOfRange(usize),
    #[error("explicit order would have {size} elements, limit is {MAX_EXPLICIT_POWER}")]
    TooLarge { size: u128 },
}

/// A finite set of labels together with a binary relation on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRelation {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    rel: BitMatrix,
}

impl FiniteRelation {
    pub fn new<S, P>(
        elements: impl IntoIterator<Item = S>,
        pairs: impl IntoIterator<Item = (P, P)>,
    ) -> Result<Self, RelationError>
    where
        S: Into<String>,
        P: AsRef<str>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(RelationError::DuplicateLabel(e.clone()));
            }
        }
        let mut rel = BitMatrix::new(elements.len());
        for (x, y) in pairs {
            let lookup = |l: &str| {
                index
                    .get(l)
                    .copied()
                    .ok_or_else(|| RelationError::UnknownLabel(l.to_string()))
            };
            rel.set(lookup(x.as_ref())?, lookup(y.as_ref())?);
        }
        Ok(FiniteRelation {
            elements,
            index,
            rel,
        })
    }

    fn from_parts(elements: Vec<String>, rel: BitMatrix) -> Self {
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        FiniteRelation {
            elements,
            index,
            rel,
        }
    }

    /// The strict order `l0 < l1 < ...` on the given labels.
    pub fn chain<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let elements: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut rel = BitMatrix::new(elements.len());
        for i in 0..elements.len() {
            for j in i + 1..elements.len() {
                rel.set(i, j);
            }
        }
        Self::from_parts(elements, rel)
    }

    /// The strict order on `{0, ..., n-1}`.
    pub fn natural(n: usize) -> Self {
        Self::chain((0..n).map(|i| i.to_string()))
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn holds(&self, x: usize, y: usize) -> bool {
        self.rel.get(x, y)
    }

    pub fn relates(&self, x: &str, y: &str) -> bool {
        match (self.index_of(x), self.index_of(y)) {
            (Some(i), Some(j)) => self.rel.get(i, j),
            _ => false,
        }
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.rel
            .iter_pairs()
            .map(move |(i, j)| (self.elements[i].as_str(), self.elements[j].as_str()))
    }

    /// Adds every pair forced by transitivity.
    pub fn transitive_closure(&self) -> Self {
        let mut rel = self.rel.clone();
        rel.transitive_close();
        Self::from_parts(self.elements.clone(), rel)
    }

    fn require_well(&self, which: &'static str) -> Result<(), RelationError> {
        if check_order_properties(self).is_well {
            Ok(())
        } else {
            Err(RelationError::NotWellOrder { which })
        }
    }

    /// Element indices listed from least to greatest. Only meaningful for
    /// strict total orders, where the number of predecessors is a rank.
    fn ascending(&self) -> Vec<usize> {
        let mut ranked: Vec<(usize, usize)> = (0..self.len())
            .map(|i| (self.rel.column_count(i), i))
            .collect();
        ranked.sort_unstable();
        ranked.into_iter().map(|(_, i)| i).collect()
    }
}

/// A concrete failure of one of the order axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotReflexive { x: String },
    NotIrreflexive { x: String },
    NotTransitive { x: String, y: String, z: String },
    Incomparable { x: String, y: String },
    NoLeastElement { subset: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    /// Reflexive and transitive (a preorder; antisymmetry is not required).
    pub is_partial: bool,
    /// Transitive, irreflexive and trichotomous.
    pub is_total: bool,
    pub is_well: bool,
    pub partial_violation: Option<Violation>,
    pub total_violation: Option<Violation>,
    pub well_violation: Option<Violation>,
}

pub fn check_order_properties(r: &FiniteRelation) -> OrderReport {
    let n = r.len();
    let label = |i: usize| r.elements[i].clone();
    let transitivity = r
        .rel
        .transitivity_violation()
        .map(|(x, y, z)| Violation::NotTransitive {
            x: label(x),
            y: label(y),
            z: label(z),
        });
    let not_reflexive = (0..n).find(|&i| !r.rel.get(i, i));
    let reflexive_at = (0..n).find(|&i| r.rel.get(i, i));
    let incomparable = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !r.rel.get(i, j) && !r.rel.get(j, i));

    let partial_violation = not_reflexive
        .map(|x| Violation::NotReflexive { x: label(x) })
        .or_else(|| transitivity.clone());
    let total_violation = reflexive_at
        .map(|x| Violation::NotIrreflexive { x: label(x) })
        .or_else(|| transitivity.clone())
        .or_else(|| {
            incomparable.map(|(x, y)| Violation::Incomparable {
                x: label(x),
                y: label(y),
            })
        });
    // Every finite strict total order is a well-order, so a failure here is
    // a failure of totality; report a subset without a least element when a
    // small one exists.
    let well_violation = total_violation.as_ref().map(|v| {
        small_subset_without_least(r)
            .map(|subset| Violation::NoLeastElement {
                subset: subset.into_iter().map(label).collect(),
            })
            .unwrap_or_else(|| v.clone())
    });
    OrderReport {
        is_partial: partial_violation.is_none(),
        is_total: total_violation.is_none(),
        is_well: well_violation.is_none(),
        partial_violation,
        total_violation,
        well_violation,
    }
}

// `a` is least in `s` when `a R b` for every other `b` in `s`.
fn has_least(r: &FiniteRelation, s: &[usize]) -> bool {
    s.iter()
        .any(|&a| s.iter().all(|&b| b == a || r.rel.get(a, b)))
}

fn small_subset_without_least(r: &FiniteRelation) -> Option<Vec<usize>> {
    let n = r.len();
    for i in 0..n {
        for j in i + 1..n {
            if !has_least(r, &[i, j]) {
                return Some(vec![i, j]);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if !has_least(r, &[i, j, k]) {
                    return Some(vec![i, j, k]);
                }
            }
        }
    }
    None
}

/// The strict predecessors of `x`, in element order.
pub fn pred<'a>(r: &'a FiniteRelation, x: &str) -> Result<Vec<&'a str>, RelationError> {
    let xi = r
        .index_of(x)
        .ok_or_else(|| RelationError::UnknownLabel(x.to_string()))?;
    Ok((0..r.len())
        .filter(|&a| a != xi && r.rel.get(a, xi))
        .map(|a| r.elements[a].as_str())
        .collect())
}

/// The ordinal isomorphic to a finite well-order: its cardinality.
pub fn order_type_small(w: &FiniteRelation) -> Result<Ordinal, RelationError> {
    w.require_well("input")?;
    Ok(Ordinal::from_nat(w.len() as u64))
}

/// Disjoint union with every element of `a` placed below every element of `b`.
/// Labels are tagged `#0` (from `a`) and `#1` (from `b`).
pub fn sum_order(a: &FiniteRelation, b: &FiniteRelation) -> Result<FiniteRelation, RelationError> {
    a.require_well("left")?;
    b.require_well("right")?;
    let (na, nb) = (a.len(), b.len());
    let elements = a
        .elements
        .iter()
        .map(|l| format!("{l}#0"))
        .chain(b.elements.iter().map(|l| format!("{l}#1")))
        .collect();
    let mut rel = BitMatrix::new(na + nb);
    for (i, j) in a.rel.iter_pairs() {
        rel.set(i, j);
    }
    for (i, j) in b.rel.iter_pairs() {
        rel.set(na + i, na + j);
    }
    for i in 0..na {
        for j in 0..nb {
            rel.set(i, na + j);
        }
    }
    Ok(FiniteRelation::from_parts(elements, rel))
}

/// The carrier `b x a` ordered by the `b` coordinate first, then the `a`
/// coordinate. Its type is `type(a) * type(b)`. Labels are `(y,x)`.
pub fn product_order(
    a: &FiniteRelation,
    b: &FiniteRelation,
) -> Result<FiniteRelation, RelationError> {
    a.require_well("left")?;
    b.require_well("right")?;
    let (na, nb) = (a.len(), b.len());
    let idx = |y: usize, x: usize| y * na + x;
    let mut elements = Vec::with_capacity(na * nb);
    for y in &b.elements {
        for x in &a.elements {
            elements.push(format!("({y},{x})"));
        }
    }
    let mut rel = BitMatrix::new(na * nb);
    for y in 0..nb {
        for x in 0..na {
            for y2 in 0..nb {
                for x2 in 0..na {
                    if b.rel.get(y, y2) || (y == y2 && a.rel.get(x, x2)) {
                        rel.set(idx(y, x), idx(y2, x2));
                    }
                }
            }
        }
    }
    Ok(FiniteRelation::from_parts(elements, rel))
}

/// `a` multiplied by itself `k` times: `a^0` is a singleton, and
/// `a^(k+1) = product_order(a^k, a)`.
pub fn power_order(a: &FiniteRelation, k: u32) -> Result<FiniteRelation, RelationError> {
    a.require_well("base")?;
    let size = (a.len() as u128).checked_pow(k).unwrap_or(u128::MAX);
    if size > MAX_EXPLICIT_POWER as u128 {
        return Err(RelationError::TooLarge { size });
    }
    let mut acc = FiniteRelation::chain(["()"]);
    for _ in 0..k {
        acc = product_order(&acc, a)?;
    }
    Ok(acc)
}

/// Order type of `a^k` without materializing the relation.
///
/// The carrier is listed as length-`k` tuples by an odometer over `a`'s
/// elements (most significant coordinate = outermost factor). Each listed
/// tuple is checked to be strictly above its predecessor in the
/// lexicographic order induced by `a`'s relation, so the listing is a
/// strictly increasing enumeration of the whole product, and its length is
/// the order type.
pub fn power_order_type_streamed(a: &FiniteRelation, k: u32) -> Result<Ordinal, RelationError> {
    a.require_well("base")?;
    let k = k as usize;
    if k == 0 {
        return Ok(Ordinal::one());
    }
    if a.is_empty() {
        return Ok(Ordinal::zero());
    }
    let order = a.ascending();
    let n = order.len();
    // digits[0] is most significant
    let mut digits = vec![0usize; k];
    let mut count: u64 = 1;
    loop {
        let mut pos = k;
        loop {
            if pos == 0 {
                return Ok(Ordinal::from_nat(count));
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < n {
                break;
            }
            digits[pos] = 0;
        }
        // coordinates before `pos` are unchanged, so the tuples first
        // differ at `pos`, where the digit moved up by one
        if !a.rel.get(order[digits[pos] - 1], order[digits[pos]]) {
            return Err(RelationError::NotWellOrder { which: "product" });
        }
        count += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrichotomyCase {
    /// The two orders are isomorphic.
    Iso,
    /// The first is isomorphic to `pred(second, cut_point)`.
    PredOfSecond,
    /// `pred(first, cut_point)` is isomorphic to the second.
    PredOfFirst,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrichotomyResult {
    pub case: TrichotomyCase,
    pub cut_point: Option<String>,
    /// The isomorphism as `(first label, second label)` pairs, listed from
    /// least to greatest.
    pub iso: Vec<(String, String)>,
}

/// Compares two well-orders by pairing off least elements until one runs
/// out.
pub fn trichotomy(
    a: &FiniteRelation,
    b: &FiniteRelation,
) -> Result<TrichotomyResult, RelationError> {
    a.require_well("first")?;
    b.require_well("second")?;
    let (oa, ob) = (a.ascending(), b.ascending());
    let iso = oa
        .iter()
        .zip(&ob)
        .map(|(&x, &y)| (a.elements[x].clone(), b.elements[y].clone()))
        .collect();
    let (case, cut_point) = match oa.len().cmp(&ob.len()) {
        std::cmp::Ordering::Equal => (TrichotomyCase::Iso, None),
        std::cmp::Ordering::Less => (
            TrichotomyCase::PredOfSecond,
            Some(b.elements[ob[oa.len()]].clone()),
        ),
        std::cmp::Ordering::Greater => (
            TrichotomyCase::PredOfFirst,
            Some(a.elements[oa[ob.len()]].clone()),
        ),
    };
    Ok(TrichotomyResult {
        case,
        cut_point,
        iso,
    })
}

/// Exhaustively confirms that no map from an `n`-set onto its power set
/// exists, and that for every map the diagonal set `{a : a not in f(a)}` is
/// missed.
pub fn cantor_no_surjection(n: usize) -> Result<bool, RelationError> {
    if n > 4 {
        return Err(RelationError::CantorOutOfRange(n));
    }
    let subsets = 1usize << n;
    let maps = subsets.pow(n as u32);
    for code in 0..maps {
        // f(a) is the base-`subsets` digit `a` of `code`, a bitmask over 0..n
        let f: Vec<usize> = (0..n)
            .map(|a| (code / subsets.pow(a as u32)) % subsets)
            .collect();
        let image: BTreeSet<usize> = f.iter().copied().collect();
        if image.len() == subsets {
            return Ok(false);
        }
        let diagonal = (0..n)
            .filter(|&a| f[a] & (1 << a) == 0)
            .fold(0usize, |m, a| m | (1 << a));
        if image.contains(&diagonal) {
            return Ok(false);
        }
    }
    Ok(true)
}
