//! Regular open algebras of finite posets.
//!
//! A poset carries the topology whose basic opens are `N_p = {q : q <= p}`;
//! its open sets are exactly the down-closed sets. The regular opens
//! (`b = int(cl(b))`) form a complete Boolean algebra `ro(P)` into which
//! `p ↦ int(cl(N_p))` embeds the poset densely. Subsets of the poset are
//! bitmasks over element indices.

mod stone;

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::poset::FinitePoset;

pub use stone::{stone_ccc_check, stone_space, StoneReport, StoneSpace};

/// Largest poset accepted by [`ro_algebra`].
pub const MAX_RO_POSET: usize = 12;
/// Largest carrier for which operation tables are precomputed and the
/// Boolean-algebra laws are checked.
pub const MAX_LAW_CARRIER: usize = 512;
/// Largest algebra accepted by [`stone_space`].
pub const MAX_STONE_CARRIER: usize = 1 << 12;
/// Largest carrier for which sups and infs of every subset are enumerated.
pub const MAX_SUBSET_ENUMERATION: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("poset has {size} elements, limit is {limit}")]
    PosetTooLarge { size: usize, limit: usize },
    #[error("algebra has {size} elements, limit is {limit}")]
    CarrierTooLarge { size: usize, limit: usize },
}

pub type Mask = u64;

#[derive(Debug, Clone)]
pub struct DownSetTopology {
    poset: FinitePoset,
    base: Vec<Mask>,
}

impl DownSetTopology {
    pub fn new(poset: FinitePoset) -> Result<Self, CompletionError> {
        if poset.len() > 64 {
            return Err(CompletionError::PosetTooLarge {
                size: poset.len(),
                limit: 64,
            });
        }
        let base = (0..poset.len())
            .map(|p| poset.below(p).iter().fold(0, |m, &q| m | 1 << q))
            .collect();
        Ok(DownSetTopology { poset, base })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn full(&self) -> Mask {
        if self.poset.len() == 64 {
            Mask::MAX
        } else {
            (1 << self.poset.len()) - 1
        }
    }

    /// `N_p`.
    pub fn basic(&self, p: usize) -> Mask {
        self.base[p]
    }

    pub fn is_open(&self, b: Mask) -> bool {
        self.interior(b) == b
    }

    /// The largest open subset: points whose basic neighbourhood fits in `b`.
    pub fn interior(&self, b: Mask) -> Mask {
        (0..self.poset.len())
            .filter(|&p| self.base[p] & !b == 0)
            .fold(0, |m, p| m | 1 << p)
    }

    /// Complement of the interior of the complement: points whose basic
    /// neighbourhood meets `b`.
    pub fn closure(&self, b: Mask) -> Mask {
        self.full() & !self.interior(self.full() & !b)
    }

    pub fn regularize(&self, b: Mask) -> Mask {
        self.interior(self.closure(b))
    }

    pub fn describe(&self, b: Mask) -> String {
        let labels: Vec<&str> = (0..self.poset.len())
            .filter(|p| b >> p & 1 == 1)
            .map(|p| self.poset.label(p))
            .collect();
        format!("{{{}}}", labels.join(","))
    }
}

/// The regular open algebra of a finite poset, with the dense embedding.
#[derive(Debug, Clone)]
pub struct RegularOpenAlgebra {
    topology: DownSetTopology,
    /// Regular open sets sorted by (size, mask); index 0 is the empty set.
    carrier: Vec<Mask>,
    index: HashMap<Mask, usize>,
    embedding: Vec<usize>,
    tables: Option<Tables>,
}

#[derive(Debug, Clone)]
struct Tables {
    meet: Vec<u16>,
    join: Vec<u16>,
}

pub fn ro_algebra(poset: &FinitePoset) -> Result<RegularOpenAlgebra, CompletionError> {
    if poset.len() > MAX_RO_POSET {
        return Err(CompletionError::PosetTooLarge {
            size: poset.len(),
            limit: MAX_RO_POSET,
        });
    }
    let topology = DownSetTopology::new(poset.clone())?;
    let mut carrier: Vec<Mask> = (0..=topology.full())
        .filter(|&b| topology.is_open(b) && topology.regularize(b) == b)
        .collect();
    carrier.sort_by_key(|b| (b.count_ones(), *b));
    let index: HashMap<Mask, usize> = carrier.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    let embedding = (0..poset.len())
        .map(|p| index[&topology.regularize(topology.basic(p))])
        .collect();
    let mut algebra = RegularOpenAlgebra {
        topology,
        carrier,
        index,
        embedding,
        tables: None,
    };
    let n = algebra.len();
    if n <= MAX_LAW_CARRIER {
        let mut meet = vec![0u16; n * n];
        let mut join = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                meet[i * n + j] = algebra.compute_meet(i, j) as u16;
                join[i * n + j] = algebra.compute_join(i, j) as u16;
            }
        }
        algebra.tables = Some(Tables { meet, join });
    }
    Ok(algebra)
}

impl RegularOpenAlgebra {
    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn topology(&self) -> &DownSetTopology {
        &self.topology
    }

    pub fn poset(&self) -> &FinitePoset {
        self.topology.poset()
    }

    pub fn mask(&self, i: usize) -> Mask {
        self.carrier[i]
    }

    pub fn index_of(&self, b: Mask) -> Option<usize> {
        self.index.get(&b).copied()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn one(&self) -> usize {
        self.index[&self.topology.full()]
    }

    /// `i(p) = int(cl(N_p))`, as a carrier index.
    pub fn embed(&self, p: usize) -> usize {
        self.embedding[p]
    }

    fn compute_meet(&self, i: usize, j: usize) -> usize {
        self.index[&(self.carrier[i] & self.carrier[j])]
    }

    fn compute_join(&self, i: usize, j: usize) -> usize {
        self.index[&self.topology.regularize(self.carrier[i] | self.carrier[j])]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        match &self.tables {
            Some(t) => t.meet[i * self.len() + j] as usize,
            None => self.compute_meet(i, j),
        }
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        match &self.tables {
            Some(t) => t.join[i * self.len() + j] as usize,
            None => self.compute_join(i, j),
        }
    }

    /// `int(X ∖ b)`.
    pub fn complement(&self, i: usize) -> usize {
        let t = &self.topology;
        self.index[&t.interior(t.full() & !self.carrier[i])]
    }

    /// `b <= c` iff `b ⊆ c`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.carrier[i] & !self.carrier[j] == 0
    }

    /// Minimal nonzero elements.
    pub fn atoms(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&a| (1..self.len()).all(|b| b == a || !self.leq(b, a)))
            .collect()
    }

    pub fn describe(&self, i: usize) -> String {
        self.topology.describe(self.carrier[i])
    }

    /// The nonzero elements as a poset under inclusion, labelled by
    /// [`RegularOpenAlgebra::describe`]. Index `k` is carrier index `k + 1`.
    pub fn nonzero_poset(&self) -> FinitePoset {
        let labels = (1..self.len()).map(|i| self.describe(i)).collect();
        FinitePoset::from_fn_trusted(labels, |a, b| self.leq(a + 1, b + 1))
    }

    /// Hasse diagram in Graphviz dot syntax, edges pointing upward.
    pub fn hasse_dot(&self) -> String {
        let mut out = String::from("digraph ro {\n  rankdir=BT;\n");
        for i in 0..self.len() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", self.describe(i));
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j
                    && self.leq(i, j)
                    && !(0..self.len())
                        .any(|k| k != i && k != j && self.leq(i, k) && self.leq(k, j))
                {
                    let _ = writeln!(out, "  n{i} -> n{j};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub holds: bool,
    /// True when no instance of the clause's hypothesis occurs.
    pub vacuous: bool,
    pub witness: Option<String>,
}

impl ClauseResult {
    fn pass(vacuous: bool) -> Self {
        ClauseResult {
            holds: true,
            vacuous,
            witness: None,
        }
    }

    fn fail(witness: String) -> Self {
        ClauseResult {
            holds: false,
            vacuous: false,
            witness: Some(witness),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    /// Every nonzero `b` lies above some `i(p)`.
    pub dense: ClauseResult,
    /// `p <= q` implies `i(p) <= i(q)`.
    pub monotone: ClauseResult,
    /// `p ⊥ q` iff `i(p) ∧ i(q) = 0`.
    pub incompatibility: ClauseResult,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.dense.holds && self.monotone.holds && self.incompatibility.holds
    }
}

pub fn verify_embedding(poset: &FinitePoset, algebra: &RegularOpenAlgebra) -> EmbeddingReport {
    let n = poset.len();
    let lp = |p: usize| poset.label(p).to_string();

    let dense = match (1..algebra.len())
        .find(|&b| !(0..n).any(|p| algebra.embed(p) != 0 && algebra.leq(algebra.embed(p), b)))
    {
        None => ClauseResult::pass(algebra.len() <= 1),
        Some(b) => ClauseResult::fail(format!("no i(p) below {}", algebra.describe(b))),
    };

    let mut monotone = ClauseResult::pass(false);
    'outer: for p in 0..n {
        for q in 0..n {
            if poset.leq(p, q) && !algebra.leq(algebra.embed(p), algebra.embed(q)) {
                monotone = ClauseResult::fail(format!(
                    "{} <= {} but i({}) not below i({})",
                    lp(p),
                    lp(q),
                    lp(p),
                    lp(q)
                ));
                break 'outer;
            }
        }
    }

    let mut any_incompatible = false;
    let mut incompatibility = None;
    'outer: for p in 0..n {
        for q in 0..n {
            let incompatible = poset.incompatible(p, q);
            any_incompatible |= incompatible;
            let disjoint = algebra.meet(algebra.embed(p), algebra.embed(q)) == algebra.zero();
            if incompatible != disjoint {
                incompatibility = Some(ClauseResult::fail(format!(
                    "{} and {}: incompatible={incompatible}, images disjoint={disjoint}",
                    lp(p),
                    lp(q)
                )));
                break 'outer;
            }
        }
    }
    let incompatibility = incompatibility.unwrap_or(ClauseResult::pass(!any_incompatible));

    EmbeddingReport {
        dense,
        monotone,
        incompatibility,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub passed: bool,
    pub carrier_size: usize,
    /// `subsets` when every subset's sup and inf were computed, `pairwise`
    /// when completeness was reduced to binary joins and meets being least
    /// upper and greatest lower bounds (exact for finite lattices).
    pub completeness_method: &'static str,
    pub failures: Vec<String>,
}

/// Checks the Boolean-algebra axioms and completeness exhaustively.
pub fn ba_laws_check(a: &RegularOpenAlgebra) -> Result<LawReport, CompletionError> {
    let n = a.len();
    if n > MAX_LAW_CARRIER {
        return Err(CompletionError::CarrierTooLarge {
            size: n,
            limit: MAX_LAW_CARRIER,
        });
    }
    let mut failures = Vec::new();
    let mut fail = |law: &str, xs: &[usize]| {
        if failures.len() < 16 {
            let args: Vec<String> = xs.iter().map(|&x| a.describe(x)).collect();
            failures.push(format!("{law} fails at {}", args.join(", ")));
        }
    };
    let (zero, one) = (a.zero(), a.one());
    for x in 0..n {
        let c = a.complement(x);
        if a.meet(x, c) != zero {
            fail("x ∧ x' = 0", &[x]);
        }
        if a.join(x, c) != one {
            fail("x ∨ x' = 1", &[x]);
        }
        if a.meet(x, one) != x || a.join(x, zero) != x {
            fail("identity", &[x]);
        }
        if a.meet(x, x) != x || a.join(x, x) != x {
            fail("idempotence", &[x]);
        }
        for y in 0..n {
            if a.meet(x, y) != a.meet(y, x) || a.join(x, y) != a.join(y, x) {
                fail("commutativity", &[x, y]);
            }
            if a.meet(x, a.join(x, y)) != x || a.join(x, a.meet(x, y)) != x {
                fail("absorption", &[x, y]);
            }
            if (a.meet(x, y) == x) != a.leq(x, y) {
                fail("meet agrees with inclusion", &[x, y]);
            }
            for z in 0..n {
                if a.meet(x, a.meet(y, z)) != a.meet(a.meet(x, y), z) {
                    fail("meet associativity", &[x, y, z]);
                }
                if a.join(x, a.join(y, z)) != a.join(a.join(x, y), z) {
                    fail("join associativity", &[x, y, z]);
                }
                if a.meet(x, a.join(y, z)) != a.join(a.meet(x, y), a.meet(x, z)) {
                    fail("meet distributivity", &[x, y, z]);
                }
                if a.join(x, a.meet(y, z)) != a.meet(a.join(x, y), a.join(x, z)) {
                    fail("join distributivity", &[x, y, z]);
                }
            }
        }
    }

    let completeness_method = if n <= MAX_SUBSET_ENUMERATION {
        for subset in 0u32..(1u32 << n) {
            let members: Vec<usize> = (0..n).filter(|i| subset >> i & 1 == 1).collect();
            if least_upper_bound(a, &members).is_none() {
                fail("supremum exists", &members);
            }
            if greatest_lower_bound(a, &members).is_none() {
                fail("infimum exists", &members);
            }
        }
        "subsets"
    } else {
        if !(0..n).all(|x| a.leq(zero, x) && a.leq(x, one)) {
            fail("bounds", &[zero, one]);
        }
        for x in 0..n {
            for y in 0..n {
                if least_upper_bound(a, &[x, y]) != Some(a.join(x, y)) {
                    fail("join is the least upper bound", &[x, y]);
                }
                if greatest_lower_bound(a, &[x, y]) != Some(a.meet(x, y)) {
                    fail("meet is the greatest lower bound", &[x, y]);
                }
            }
        }
        "pairwise"
    };

    Ok(LawReport {
        passed: failures.is_empty(),
        carrier_size: n,
        completeness_method,
        failures,
    })
}

// Both searches go through the inclusion order only, independent of the
// meet/join tables.
fn least_upper_bound(a: &RegularOpenAlgebra, xs: &[usize]) -> Option<usize> {
    let uppers: Vec<usize> = (0..a.len())
        .filter(|&u| xs.iter().all(|&x| a.leq(x, u)))
        .collect();
    uppers
        .iter()
        .copied()
        .find(|&u| uppers.iter().all(|&v| a.leq(u, v)))
}

fn greatest_lower_bound(a: &RegularOpenAlgebra, xs: &[usize]) -> Option<usize> {
    let lowers: Vec<usize> = (0..a.len())
        .filter(|&l| xs.iter().all(|&x| a.leq(l, x)))
        .collect();
    lowers
        .iter()
        .copied()
        .find(|&l| lowers.iter().all(|&v| a.leq(v, l)))
}
