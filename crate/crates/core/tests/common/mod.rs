//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use forcing_core::ad::Condition;
use forcing_core::{FinitePoset, Ordinal};
use rand::Rng;

/// An ordinal below ω^ω as coefficients indexed by exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(pub Vec<u64>);

impl Poly {
    pub fn random(rng: &mut impl Rng, max_exp: usize, max_coef: u64) -> Self {
        let mut c: Vec<u64> = (0..=max_exp)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    rng.gen_range(1..=max_coef)
                } else {
                    0
                }
            })
            .collect();
        trim(&mut c);
        Poly(c)
    }

    pub fn to_ordinal(&self) -> Ordinal {
        self.0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c > 0)
            .fold(Ordinal::zero(), |acc, (e, &c)| {
                acc + Ordinal::term(Ordinal::from_nat(e as u64), c)
            })
    }

    fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|&c| c > 0)
    }

    /// Higher terms of `self` survive, the term at `b`'s degree is summed,
    /// lower ones come from `b`.
    pub fn add(&self, b: &Poly) -> Poly {
        let Some(d) = b.degree() else {
            return self.clone();
        };
        let len = self.0.len().max(b.0.len());
        let out: Vec<u64> = (0..len)
            .map(|e| {
                let x = self.0.get(e).copied().unwrap_or(0);
                let y = b.0.get(e).copied().unwrap_or(0);
                match e.cmp(&d) {
                    std::cmp::Ordering::Greater => x,
                    std::cmp::Ordering::Equal => x + y,
                    std::cmp::Ordering::Less => y,
                }
            })
            .collect();
        let mut out = out;
        trim(&mut out);
        Poly(out)
    }

    /// `a · Σ b_k ω^k = Σ_{k≥1} b_k ω^(deg a + k) + a · b_0`.
    pub fn mul(&self, b: &Poly) -> Poly {
        let Some(e) = self.degree() else {
            return Poly(vec![]);
        };
        let mut out = vec![0; e + b.0.len().max(1)];
        for (k, &c) in b.0.iter().enumerate().skip(1) {
            out[e + k] = c;
        }
        let b0 = b.0.first().copied().unwrap_or(0);
        if b0 > 0 {
            let mut tail = self.0.clone();
            tail[e] *= b0;
            out = Poly(out).add(&Poly(tail)).0;
        }
        trim(&mut out);
        Poly(out)
    }

    /// Substituting `base` for ω, valid as an order embedding when `base`
    /// exceeds every coefficient.
    pub fn eval(&self, base: u128) -> u128 {
        self.0
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * base + c as u128)
    }
}

fn trim(c: &mut Vec<u64>) {
    while c.last() == Some(&0) {
        c.pop();
    }
}

/// Reflexive-transitive closure of a random relation on a size drawn from
/// `sizes`.
pub fn random_poset(
    rng: &mut impl Rng,
    sizes: std::ops::RangeInclusive<usize>,
    density: f64,
) -> FinitePoset {
    let n = rng.gen_range(sizes);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .filter(|_| rng.gen_bool(density))
        .collect();
    FinitePoset::closure_from_indices(n, pairs)
}

/// A random subset made dense by adding each element with nothing of the
/// subset below it.
pub fn random_dense(rng: &mut impl Rng, p: &FinitePoset) -> BTreeSet<usize> {
    let mut d: BTreeSet<usize> = (0..p.len()).filter(|_| rng.gen_bool(0.3)).collect();
    for x in 0..p.len() {
        if !d.iter().any(|&y| p.leq(y, x)) {
            d.insert(x);
        }
    }
    d
}

pub fn is_filter_pairwise(p: &FinitePoset, g: &BTreeSet<usize>) -> bool {
    g.iter()
        .all(|&q| (0..p.len()).all(|x| !p.leq(q, x) || g.contains(&x)))
        && g.iter().all(|&a| {
            g.iter()
                .all(|&b| g.iter().any(|&r| p.leq(r, a) && p.leq(r, b)))
        })
}

/// Every filter of a small poset, by subset enumeration.
pub fn all_filters(p: &FinitePoset) -> Vec<BTreeSet<usize>> {
    (0u32..1 << p.len())
        .map(|m| {
            (0..p.len())
                .filter(|i| m >> i & 1 == 1)
                .collect::<BTreeSet<usize>>()
        })
        .filter(|g| is_filter_pairwise(p, g))
        .collect()
}

/// Every relation on `n` points, as a list of off-diagonal pairs.
pub fn all_relations(n: usize) -> impl Iterator<Item = Vec<(usize, usize)>> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    (0u64..1 << slots.len()).map(move |m| {
        slots
            .iter()
            .enumerate()
            .filter(|(b, _)| m >> b & 1 == 1)
            .map(|(_, &s)| s)
            .collect()
    })
}

pub fn random_condition(rng: &mut impl Rng, universe: u64, ids: &[&str]) -> Condition {
    let s: Vec<u64> = (0..universe).filter(|_| rng.gen_bool(0.25)).collect();
    let f: Vec<&str> = ids.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
    Condition::new(s, f)
}

/// A strict well-order on `n` labels listed in a shuffled order, so element
/// position says nothing about rank.
pub fn shuffled_well_order(
    rng: &mut impl Rng,
    n: usize,
    tag: &str,
) -> forcing_core::FiniteRelation {
    use rand::seq::SliceRandom;
    let mut ranks: Vec<usize> = (0..n).collect();
    ranks.shuffle(rng);
    let labels: Vec<String> = ranks.iter().map(|r| format!("{tag}{r}")).collect();
    let pairs: Vec<(String, String)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (format!("{tag}{i}"), format!("{tag}{j}"))))
        .collect();
    forcing_core::FiniteRelation::new(labels, pairs).expect("labels are distinct")
}

/// Every order-preserving injection of `a` onto a down-set of `b`, or of a
/// down-set of `a` onto `b`, found by trying all injections.
pub fn all_initial_isomorphisms(
    a: &forcing_core::FiniteRelation,
    b: &forcing_core::FiniteRelation,
) -> Vec<Vec<(String, String)>> {
    let (small, large, flipped) = if a.len() <= b.len() {
        (a, b, false)
    } else {
        (b, a, true)
    };
    let mut found = Vec::new();
    let mut image = Vec::new();
    injections(small, large, &mut image, &mut found);
    found
        .into_iter()
        .map(|img| {
            (0..small.len())
                .map(|i| {
                    let (x, y) = (
                        small.elements()[i].clone(),
                        large.elements()[img[i]].clone(),
                    );
                    if flipped {
                        (y, x)
                    } else {
                        (x, y)
                    }
                })
                .collect()
        })
        .collect()
}

fn injections(
    small: &forcing_core::FiniteRelation,
    large: &forcing_core::FiniteRelation,
    image: &mut Vec<usize>,
    found: &mut Vec<Vec<usize>>,
) {
    let i = image.len();
    if i == small.len() {
        // the image must be downward closed in the large order
        let closed = image
            .iter()
            .all(|&y| (0..large.len()).all(|z| !large.holds(z, y) || image.contains(&z)));
        if closed {
            found.push(image.clone());
        }
        return;
    }
    for y in 0..large.len() {
        if image.contains(&y) {
            continue;
        }
        let preserves = (0..i).all(|j| {
            small.holds(j, i) == large.holds(image[j], y)
                && small.holds(i, j) == large.holds(y, image[j])
        });
        if preserves {
            image.push(y);
            injections(small, large, image, found);
            image.pop();
        }
    }
}

/// Every preorder on `n` points, as the distinct reflexive-transitive
/// closures of all relations on `n` points.
pub fn all_preorders(n: usize) -> Vec<FinitePoset> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for m in 0u64..1 << slots.len() {
        // rows[i] has bit j when i <= j
        let mut rows: Vec<u32> = (0..n).map(|i| 1 << i).collect();
        for (b, &(i, j)) in slots.iter().enumerate() {
            if m >> b & 1 == 1 {
                rows[i] |= 1 << j;
            }
        }
        for k in 0..n {
            for i in 0..n {
                if rows[i] >> k & 1 == 1 {
                    rows[i] |= rows[k];
                }
            }
        }
        if seen.insert(rows.clone()) {
            let pairs = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| rows[i] >> j & 1 == 1);
            out.push(FinitePoset::closure_from_indices(
                n,
                pairs.collect::<Vec<_>>(),
            ));
        }
    }
    out
}
