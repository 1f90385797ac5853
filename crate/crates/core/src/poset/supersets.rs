//! Enumeration of finite supersets of a finite set of naturals.
//!
//! Supersets `S` of `base` whose new elements satisfy `allowed` are listed
//! ordered by `max S` first and then by `S` read as a binary number, which
//! is the global enumeration order used by the lazily presented posets.
//! Elements at or beyond `horizon` are never added.

use std::collections::BTreeSet;

pub(crate) struct Supersets<'a> {
    base: BTreeSet<u64>,
    allowed: Box<dyn Fn(u64) -> bool + 'a>,
    horizon: u64,
    /// Current maximum; `None` before the first level.
    level: Option<u64>,
    /// Positions that may be toggled at this level, ascending.
    free: Vec<u64>,
    /// Little-endian counter over `free`; `None` when the level is done.
    counter: Option<Vec<bool>>,
    /// Whether the current level forces its maximum into the set.
    add_level: bool,
    done: bool,
}

impl<'a> Supersets<'a> {
    pub(crate) fn new(
        base: BTreeSet<u64>,
        horizon: u64,
        allowed: impl Fn(u64) -> bool + 'a,
    ) -> Self {
        Supersets {
            base,
            allowed: Box::new(allowed),
            horizon,
            level: None,
            free: Vec::new(),
            counter: None,
            add_level: false,
            done: false,
        }
    }

    fn enter_next_level(&mut self) -> bool {
        loop {
            let (m, add) = match (self.level, self.base.last()) {
                // first level: the base itself, with everything below its max free
                (None, Some(&top)) => (top, false),
                (None, None) => {
                    // the empty set sits alone before level 0
                    self.level = Some(u64::MAX);
                    self.free.clear();
                    self.add_level = false;
                    self.counter = Some(Vec::new());
                    return true;
                }
                (Some(u64::MAX), _) => (0, true),
                (Some(m), _) => (m + 1, true),
            };
            self.level = Some(m);
            if add && m >= self.horizon {
                return false;
            }
            if add && !(self.allowed)(m) {
                continue;
            }
            self.add_level = add;
            self.free = (0..m)
                .filter(|x| !self.base.contains(x) && (self.allowed)(*x))
                .collect();
            self.counter = Some(vec![false; self.free.len()]);
            return true;
        }
    }
}

impl Iterator for Supersets<'_> {
    type Item = BTreeSet<u64>;

    fn next(&mut self) -> Option<BTreeSet<u64>> {
        if self.done {
            return None;
        }
        if self.counter.is_none() && !self.enter_next_level() {
            self.done = true;
            return None;
        }
        let counter = self.counter.as_mut().expect("level entered");
        let mut out = self.base.clone();
        out.extend(
            self.free
                .iter()
                .zip(counter.iter())
                .filter(|(_, on)| **on)
                .map(|(x, _)| *x),
        );
        if self.add_level {
            out.insert(self.level.expect("level entered"));
        }
        // advance the counter; finishing it closes the level
        let mut carry = true;
        for bit in counter.iter_mut() {
            if !*bit {
                *bit = true;
                carry = false;
                break;
            }
            *bit = false;
        }
        if carry {
            self.counter = None;
        }
        Some(out)
    }
}

/// Little-endian binary counter over `n` positions, yielding every
/// assignment once, starting from all-false.
pub(crate) fn counting(n: usize) -> impl Iterator<Item = Vec<bool>> {
    let mut state = Some(vec![false; n]);
    std::iter::from_fn(move || {
        let current = state.take()?;
        let mut next = current.clone();
        let mut carry = true;
        for bit in next.iter_mut() {
            if !*bit {
                *bit = true;
                carry = false;
                break;
            }
            *bit = false;
        }
        if !carry {
            state = Some(next);
        }
        Some(current)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mask(s: &BTreeSet<u64>) -> u64 {
        s.iter().map(|x| 1u64 << x).sum()
    }

    fn key(s: &BTreeSet<u64>) -> (i64, u64) {
        (s.last().map(|&m| m as i64).unwrap_or(-1), mask(s))
    }

    #[test]
    fn all_sets_in_order() {
        let sets: Vec<_> = Supersets::new(BTreeSet::new(), 4, |_| true).collect();
        assert_eq!(sets.len(), 16);
        let keys: Vec<_> = sets.iter().map(key).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(sets[0].is_empty());
        assert_eq!(sets[1], [0].into_iter().collect());
    }

    #[test]
    fn supersets_respect_base_and_filter() {
        let base: BTreeSet<u64> = [2].into_iter().collect();
        let sets: Vec<_> = Supersets::new(base.clone(), 6, |x| x % 2 == 0).collect();
        // brute force: every superset of {2} within [0,6) adding only evens
        let mut expected: Vec<BTreeSet<u64>> = (0u64..64)
            .filter(|m| m & 4 != 0 && (0..6).all(|x| m >> x & 1 == 0 || x == 2 || x % 2 == 0))
            .map(|m| (0..6).filter(|x| m >> x & 1 == 1).collect())
            .collect();
        expected.sort_by_key(key);
        assert_eq!(sets, expected);
    }

    #[test]
    fn horizon_stops_empty_scans() {
        let base: BTreeSet<u64> = [1].into_iter().collect();
        let sets: Vec<_> = Supersets::new(base.clone(), 1000, |_| false).collect();
        assert_eq!(sets, vec![base]);
    }

    #[test]
    fn counter_covers_all() {
        let all: Vec<_> = counting(3).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[1], vec![true, false, false]);
        assert_eq!(counting(0).count(), 1);
    }
}
