//! Countable posets presented by an enumeration, and the chain
//! construction of a filter meeting countably many dense sets.

use std::collections::HashSet;
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

use super::FinitePoset;

/// A poset given by a deterministic enumeration and a decidable order.
pub trait LazyPoset {
    type Elem: Clone + Eq + Hash + Debug;

    /// Every element, each exactly once, always in the same order.
    fn iter(&self) -> Box<dyn Iterator<Item = Self::Elem> + '_>;

    /// `a <= b`, i.e. `a` extends `b`.
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;

    fn describe(&self, a: &Self::Elem) -> String;

    /// The elements `q <= p`, in enumeration order. Implementations may
    /// override this with a direct construction; the order must agree with
    /// [`LazyPoset::iter`].
    fn below<'a>(&'a self, p: &Self::Elem) -> Box<dyn Iterator<Item = Self::Elem> + 'a> {
        let p = p.clone();
        Box::new(self.iter().filter(move |q| self.leq(q, &p)))
    }

    /// True when [`LazyPoset::iter`] lists the whole poset, so running out
    /// of candidates proves a set is not dense.
    fn is_exhaustive(&self) -> bool {
        false
    }
}

/// A named, decidable subset of a poset's elements.
pub struct DenseSet<'a, E> {
    pub id: String,
    test: Box<dyn Fn(&E) -> bool + 'a>,
}

impl<'a, E> DenseSet<'a, E> {
    pub fn new(id: impl Into<String>, test: impl Fn(&E) -> bool + 'a) -> Self {
        DenseSet {
            id: id.into(),
            test: Box::new(test),
        }
    }

    pub fn contains(&self, e: &E) -> bool {
        (self.test)(e)
    }
}

impl<E> Debug for DenseSet<'_, E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DenseSet")
            .field("id", &self.id)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterResult<E> {
    /// `start` followed by one element per dense set, each below the last.
    pub chain: Vec<E>,
    /// The chain together with every element of the enumeration window lying
    /// above the final chain element.
    pub filter: Vec<E>,
    /// `(dense set id, element of the chain in that set)`.
    pub met: Vec<(String, E)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenericError {
    #[error("fuel {fuel} exhausted looking for an element of {dense} below {below}")]
    FuelExhausted {
        dense: String,
        below: String,
        fuel: usize,
    },
    #[error("{dense} has no element below {below}, so it is not dense")]
    NotDense { dense: String, below: String },
}

/// Builds `p_0 = start` and, for each dense set `D_n` in turn, `p_{n+1}`:
/// the current condition itself if it already lies in `D_n`, otherwise the
/// first element of `D_n` below it in enumeration order.
///
/// At most `fuel` candidates are examined per step, and the filter is the
/// upward closure of the chain inside the first `fuel` enumerated elements.
pub fn generic_filter<P: LazyPoset + ?Sized>(
    poset: &P,
    dense: &[DenseSet<'_, P::Elem>],
    start: P::Elem,
    fuel: usize,
) -> Result<FilterResult<P::Elem>, GenericError> {
    let mut chain = vec![start];
    let mut met = Vec::with_capacity(dense.len());
    for d in dense {
        let current = chain.last().expect("chain starts nonempty");
        let next = if d.contains(current) {
            current.clone()
        } else {
            let mut examined = 0;
            let mut found = None;
            for q in poset.below(current).take(fuel) {
                examined += 1;
                if d.contains(&q) {
                    found = Some(q);
                    break;
                }
            }
            match found {
                Some(q) => q,
                None if examined < fuel && poset.is_exhaustive() => {
                    return Err(GenericError::NotDense {
                        dense: d.id.clone(),
                        below: poset.describe(current),
                    })
                }
                None => {
                    return Err(GenericError::FuelExhausted {
                        dense: d.id.clone(),
                        below: poset.describe(current),
                        fuel,
                    })
                }
            }
        };
        met.push((d.id.clone(), next.clone()));
        chain.push(next);
    }

    let last = chain.last().expect("chain starts nonempty").clone();
    let mut seen = HashSet::new();
    let mut filter = Vec::new();
    for e in chain
        .iter()
        .cloned()
        .chain(poset.iter().take(fuel).filter(|e| poset.leq(&last, e)))
    {
        if seen.insert(e.clone()) {
            filter.push(e);
        }
    }
    Ok(FilterResult { chain, filter, met })
}

impl LazyPoset for FinitePoset {
    type Elem = usize;

    fn iter(&self) -> Box<dyn Iterator<Item = usize> + '_> {
        Box::new(0..self.len())
    }

    fn leq(&self, a: &usize, b: &usize) -> bool {
        FinitePoset::leq(self, *a, *b)
    }

    fn describe(&self, a: &usize) -> String {
        self.label(*a).to_string()
    }

    fn is_exhaustive(&self) -> bool {
        true
    }
}
