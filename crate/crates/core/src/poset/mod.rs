//! Forcing posets.
//!
//! Orders follow the forcing convention: `p <= q` reads "p extends q", and
//! an order is any reflexive transitive relation (antisymmetry is not
//! required). Elements of a [`FinitePoset`] are addressed by index; methods
//! panic on out-of-range indices, and label lookups go through
//! [`FinitePoset::index_of`] / [`FinitePoset::resolve`].

mod binary;
mod lazy;
pub(crate) mod supersets;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::bits::BitMatrix;

pub use binary::{
    defined_at, disagrees_with, union_of_filter, BinaryCondition, BinaryPoset,
    IncompatibleConditions,
};
pub use lazy::{generic_filter, DenseSet, FilterResult, GenericError, LazyPoset};
pub(crate) use supersets::Supersets;

/// Posets up to this size have their ultrafilters checked by enumerating
/// every superset.
pub const ULTRAFILTER_ENUMERATION_LIMIT: usize = 15;
pub const FIP_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("duplicate element {0:?}")]
    DuplicateElement(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("order is not reflexive at {0:?}")]
    NotReflexive(String),
    #[error("order is not transitive: {0:?} <= {1:?} <= {2:?}")]
    NotTransitive(String, String, String),
    #[error("set is not a filter")]
    NotAFilter,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FipError {
    #[error("family is empty")]
    EmptyFamily,
    #[error("family has {0} members, limit is {FIP_LIMIT}")]
    TooLarge(usize),
}

pub type ElemSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    leq: BitMatrix,
}

impl FinitePoset {
    /// Builds a poset from explicit `(p, q)` pairs meaning `p <= q`; the
    /// relation must already be reflexive and transitive.
    pub fn new<S, P>(
        elements: impl IntoIterator<Item = S>,
        leq: impl IntoIterator<Item = (P, P)>,
    ) -> Result<Self, PosetError>
    where
        S: Into<String>,
        P: AsRef<str>,
    {
        let p = Self::raw(elements, leq)?;
        p.validate()?;
        Ok(p)
    }

    /// Builds a poset from the reflexive-transitive closure of the pairs.
    pub fn closure_of<S, P>(
        elements: impl IntoIterator<Item = S>,
        leq: impl IntoIterator<Item = (P, P)>,
    ) -> Result<Self, PosetError>
    where
        S: Into<String>,
        P: AsRef<str>,
    {
        let mut p = Self::raw(elements, leq)?;
        p.leq.reflexive_close();
        p.leq.transitive_close();
        Ok(p)
    }

    /// Builds a poset on `labels` from a predicate; validated like [`FinitePoset::new`].
    pub fn from_fn(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
    ) -> Result<Self, PosetError> {
        let n = labels.len();
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    m.set(i, j);
                }
            }
        }
        let p = Self::with_matrix(labels, m)?;
        p.validate()?;
        Ok(p)
    }

    /// Like [`FinitePoset::from_fn`] for a predicate known to be a preorder.
    pub(crate) fn from_fn_trusted(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    m.set(i, j);
                }
            }
        }
        Self::with_matrix(labels, m).expect("labels are distinct")
    }

    /// Reflexive-transitive closure of a relation given on indices `0..n`,
    /// labelled by index.
    pub fn closure_from_indices(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = BitMatrix::new(n);
        for (i, j) in pairs {
            m.set(i, j);
        }
        m.reflexive_close();
        m.transitive_close();
        Self::with_matrix((0..n).map(|i| i.to_string()).collect(), m)
            .expect("index labels are distinct")
    }

    fn raw<S, P>(
        elements: impl IntoIterator<Item = S>,
        leq: impl IntoIterator<Item = (P, P)>,
    ) -> Result<Self, PosetError>
    where
        S: Into<String>,
        P: AsRef<str>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let mut p = Self::with_matrix(elements.clone(), BitMatrix::new(elements.len()))?;
        for (a, b) in leq {
            let i = p.index_of(a.as_ref())?;
            let j = p.index_of(b.as_ref())?;
            p.leq.set(i, j);
        }
        Ok(p)
    }

    fn with_matrix(elements: Vec<String>, leq: BitMatrix) -> Result<Self, PosetError> {
        let mut index = HashMap::with_capacity(elements.len());
        for (i, e) in elements.iter().enumerate() {
            if index.insert(e.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(e.clone()));
            }
        }
        Ok(FinitePoset {
            elements,
            index,
            leq,
        })
    }

    fn validate(&self) -> Result<(), PosetError> {
        if let Some(i) = (0..self.len()).find(|&i| !self.leq.get(i, i)) {
            return Err(PosetError::NotReflexive(self.elements[i].clone()));
        }
        if let Some((x, y, z)) = self.leq.transitivity_violation() {
            return Err(PosetError::NotTransitive(
                self.elements[x].clone(),
                self.elements[y].clone(),
                self.elements[z].clone(),
            ));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize, PosetError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| PosetError::UnknownElement(label.to_string()))
    }

    pub fn resolve<S: AsRef<str>>(
        &self,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<ElemSet, PosetError> {
        labels
            .into_iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect()
    }

    pub fn labels_of<'a>(&'a self, set: impl IntoIterator<Item = &'a usize>) -> Vec<&'a str> {
        set.into_iter().map(|&i| self.label(i)).collect()
    }

    /// `p <= q`.
    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq.get(p, q)
    }

    pub fn leq_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.leq.iter_pairs()
    }

    /// `{q : q <= p}`.
    pub fn below(&self, p: usize) -> ElemSet {
        (0..self.len()).filter(|&q| self.leq(q, p)).collect()
    }

    /// `{q : p <= q}`.
    pub fn above(&self, p: usize) -> ElemSet {
        (0..self.len()).filter(|&q| self.leq(p, q)).collect()
    }

    /// The upward closure of a set.
    pub fn upward_closure(&self, set: &ElemSet) -> ElemSet {
        (0..self.len())
            .filter(|&q| set.iter().any(|&p| self.leq(p, q)))
            .collect()
    }

    /// Some `d` with `d <= p` and `d <= q`.
    pub fn common_extension(&self, p: usize, q: usize) -> Option<usize> {
        (0..self.len()).find(|&d| self.leq(d, p) && self.leq(d, q))
    }

    pub fn compatible(&self, p: usize, q: usize) -> bool {
        self.common_extension(p, q).is_some()
    }

    pub fn incompatible(&self, p: usize, q: usize) -> bool {
        !self.compatible(p, q)
    }

    pub fn is_antichain(&self, s: &ElemSet) -> bool {
        s.iter()
            .all(|&p| s.iter().all(|&q| p == q || self.incompatible(p, q)))
    }

    /// Every `p` has some `d <= p` in `d_set`.
    pub fn is_dense(&self, d_set: &ElemSet) -> bool {
        (0..self.len()).all(|p| d_set.iter().any(|&d| self.leq(d, p)))
    }

    /// An element with no extension in `d_set`, if any.
    pub fn density_witness(&self, d_set: &ElemSet) -> Option<usize> {
        (0..self.len()).find(|&p| !d_set.iter().any(|&d| self.leq(d, p)))
    }

    /// `{r : (r <= p and r <= q) or r incompatible with p or with q}`,
    /// which is dense for every `p`, `q`.
    pub fn dpq_dense(&self, p: usize, q: usize) -> ElemSet {
        (0..self.len())
            .filter(|&r| {
                (self.leq(r, p) && self.leq(r, q))
                    || self.incompatible(r, p)
                    || self.incompatible(r, q)
            })
            .collect()
    }

    /// Upward closed and downward directed within itself. The empty set
    /// qualifies. A finite directed set has an element below all of its
    /// members, which is what is checked.
    pub fn is_filter(&self, g: &ElemSet) -> bool {
        let upward = g
            .iter()
            .all(|&q| (0..self.len()).all(|p| !self.leq(q, p) || g.contains(&p)));
        upward && (g.is_empty() || g.iter().any(|&r| g.iter().all(|&q| self.leq(r, q))))
    }

    /// A filter not properly contained in another filter.
    ///
    /// Small posets are checked by enumerating every strict superset. Above
    /// [`ULTRAFILTER_ENUMERATION_LIMIT`] elements the check uses the fact
    /// that a nonempty filter of a finite poset is `{q : r <= q}` for any of
    /// its least elements `r`, so it is maximal iff `r` has no strictly
    /// smaller element.
    pub fn is_ultrafilter(&self, g: &ElemSet) -> Result<bool, PosetError> {
        if !self.is_filter(g) {
            return Err(PosetError::NotAFilter);
        }
        if self.len() <= ULTRAFILTER_ENUMERATION_LIMIT {
            return Ok(self.is_ultrafilter_by_enumeration(g));
        }
        let Some(&r) = g.iter().find(|&&r| g.iter().all(|&q| self.leq(r, q))) else {
            return Ok(self.is_empty());
        };
        Ok((0..self.len()).all(|s| !self.leq(s, r) || self.leq(r, s)))
    }

    fn is_ultrafilter_by_enumeration(&self, g: &ElemSet) -> bool {
        let outside: Vec<usize> = (0..self.len()).filter(|i| !g.contains(i)).collect();
        for mask in 1u32..(1u32 << outside.len()) {
            let mut bigger = g.clone();
            bigger.extend(
                outside
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &e)| e),
            );
            if self.is_filter(&bigger) {
                return false;
            }
        }
        true
    }
}

/// Whether every nonempty subfamily has a nonempty intersection.
pub fn fip_check<T: Ord + Clone>(family: &[BTreeSet<T>]) -> Result<bool, FipError> {
    if family.is_empty() {
        return Err(FipError::EmptyFamily);
    }
    if family.len() > FIP_LIMIT {
        return Err(FipError::TooLarge(family.len()));
    }
    // depth-first over subfamilies, carrying the running intersection
    fn go<T: Ord + Clone>(family: &[BTreeSet<T>], from: usize, acc: &BTreeSet<T>) -> bool {
        (from..family.len()).all(|i| {
            let next: BTreeSet<T> = acc.intersection(&family[i]).cloned().collect();
            !next.is_empty() && go(family, i + 1, &next)
        })
    }
    Ok((0..family.len()).all(|i| !family[i].is_empty() && go(family, i + 1, &family[i])))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    /// `bot <= top`
    fn two_chain() -> FinitePoset {
        FinitePoset::closure_of(["bot", "top"], [("bot", "top")]).unwrap()
    }

    /// `p`, `q` incomparable with no common extension.
    fn antichain(n: usize) -> FinitePoset {
        FinitePoset::closure_from_indices(n, [])
    }

    #[test]
    fn validation() {
        assert_eq!(
            FinitePoset::new(["a", "b"], [("a", "a")]),
            Err(PosetError::NotReflexive("b".into()))
        );
        assert_eq!(
            FinitePoset::new(
                ["a", "b", "c"],
                [("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")]
            ),
            Err(PosetError::NotTransitive(
                "a".into(),
                "b".into(),
                "c".into()
            ))
        );
        assert_eq!(
            FinitePoset::new(["a"], [("a", "z")]),
            Err(PosetError::UnknownElement("z".into()))
        );
        assert_eq!(
            FinitePoset::new(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(PosetError::DuplicateElement("a".into()))
        );
        assert!(FinitePoset::new(["a"], [("a", "a")]).is_ok());
    }

    #[test]
    fn compatibility() {
        let p = two_chain();
        assert!(p.compatible(0, 0) && p.compatible(0, 1) && p.compatible(1, 0));
        let a = antichain(2);
        assert!(a.incompatible(0, 1));
        assert!(a.compatible(1, 1));
    }

    #[test]
    fn antichains() {
        let a = antichain(3);
        assert!(a.is_antichain(&set(&[0, 1, 2])));
        assert!(a.is_antichain(&set(&[1])));
        assert!(two_chain().is_antichain(&set(&[1])));
        assert!(!two_chain().is_antichain(&set(&[0, 1])));
    }

    #[test]
    fn density() {
        let p = two_chain();
        assert!(p.is_dense(&set(&[0, 1])));
        assert!(p.is_dense(&set(&[0])));
        assert!(!p.is_dense(&set(&[1])));
        assert_eq!(p.density_witness(&set(&[1])), Some(0));
        let a = antichain(2);
        assert!(!a.is_dense(&set(&[0])));
    }

    #[test]
    fn dpq_sets() {
        let a = antichain(2);
        assert_eq!(a.dpq_dense(0, 1), set(&[0, 1]));
        let c = two_chain();
        assert_eq!(c.dpq_dense(0, 1), set(&[0]));
        // every r below both or incompatible with one
        let c3 = FinitePoset::closure_from_indices(3, [(0, 1), (1, 2)]);
        assert_eq!(c3.dpq_dense(0, 2), set(&[0]));
        assert_eq!(c3.dpq_dense(1, 2), set(&[0, 1]));
        for p in 0..3 {
            for q in 0..3 {
                assert!(c3.is_dense(&c3.dpq_dense(p, q)));
            }
        }
        // (P, p, p): r <= p or r incompatible with p
        let v = FinitePoset::closure_from_indices(3, [(0, 1), (2, 1)]);
        assert_eq!(v.dpq_dense(0, 0), set(&[0, 2]));
    }

    #[test]
    fn filters() {
        let c = two_chain();
        assert!(c.is_filter(&c.above(0)));
        assert!(c.is_filter(&set(&[1])));
        assert!(!c.is_filter(&set(&[0])));
        assert!(c.is_filter(&set(&[])));
        let a = antichain(2);
        assert!(!a.is_filter(&set(&[0, 1])));
        assert!(a.is_filter(&set(&[0])));
    }

    #[test]
    fn ultrafilters() {
        let c = two_chain();
        assert_eq!(c.is_ultrafilter(&set(&[1])), Ok(false));
        assert_eq!(c.is_ultrafilter(&set(&[0, 1])), Ok(true));
        assert_eq!(c.is_ultrafilter(&set(&[0])), Err(PosetError::NotAFilter));
        // nonzero part of the 8-element Boolean algebra: principal filters at atoms
        let masks: Vec<u32> = (1..8).collect();
        let ba = FinitePoset::from_fn(
            masks.iter().map(|m| format!("{m:03b}")).collect(),
            |i, j| masks[i] & !masks[j] == 0,
        )
        .unwrap();
        for (i, m) in masks.iter().enumerate() {
            let uf = ba.is_ultrafilter(&ba.above(i)).unwrap();
            assert_eq!(uf, m.count_ones() == 1, "mask {m:03b}");
        }
        assert_eq!(ba.is_ultrafilter(&set(&[])), Ok(false));
    }

    #[test]
    fn ultrafilter_routes_agree() {
        // exercise both routes on the same small posets
        for n in 1..=6 {
            let p = FinitePoset::closure_from_indices(n, (1..n).map(|i| (i, i / 2)));
            for r in 0..n {
                let g = p.above(r);
                let minimal = (0..n).all(|s| !p.leq(s, r) || p.leq(r, s));
                assert_eq!(p.is_ultrafilter_by_enumeration(&g), minimal);
            }
        }
    }

    #[test]
    fn finite_intersection_property() {
        let fam = |xs: &[&[u32]]| -> Vec<BTreeSet<u32>> {
            xs.iter().map(|s| s.iter().copied().collect()).collect()
        };
        assert_eq!(fip_check(&fam(&[&[1, 2, 3], &[1, 2], &[1]])), Ok(true));
        assert_eq!(fip_check(&fam(&[&[1], &[2]])), Ok(false));
        assert_eq!(fip_check(&fam(&[&[1, 2], &[2, 3], &[1, 3]])), Ok(false));
        assert_eq!(fip_check(&fam(&[&[]])), Ok(false));
        assert_eq!(fip_check::<u32>(&[]), Err(FipError::EmptyFamily));
        let big: Vec<BTreeSet<u32>> = (0..21).map(|_| [0].into_iter().collect()).collect();
        assert_eq!(fip_check(&big), Err(FipError::TooLarge(21)));
        assert_eq!(fip_check(&big[..20]), Ok(true));
    }
}
