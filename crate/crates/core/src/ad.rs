//! Almost disjoint families of subsets of the naturals, checked on finite
//! windows, and the almost-disjoint-sets poset of pairs `<s, F>`.
//!
//! A condition `<s, F>` has `s` a finite set of naturals and `F` a finite
//! set of generator ids. `<s', F'> <= <s, F>` when `s ⊆ s'`, `F ⊆ F'` and
//! no member of any `x ∈ F` is added: `x ∩ s' ⊆ s`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::poset::supersets::counting;
use crate::poset::{DenseSet, LazyPoset, Supersets};

pub const DEFAULT_HORIZON: u64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("no member of {y} above {n} outside the excluded sets below {bound}")]
    SearchExhausted { y: String, n: u64, bound: u64 },
    #[error("{0} and {1} share members in the upper half of the window")]
    NotAlmostDisjoint(String, String),
    #[error("{set} has no new element below {bound}")]
    EmptyDifference { set: String, bound: u64 },
    #[error("conditions {0} and {1} are incompatible")]
    Incompatible(String, String),
}

/// A decidable subset of the naturals.
#[derive(Clone)]
pub struct SetGen {
    id: String,
    member: Arc<dyn Fn(u64) -> bool + Send + Sync>,
}

impl fmt::Debug for SetGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("SetGen").field(&self.id).finish()
    }
}

impl SetGen {
    pub fn new(
        id: impl Into<String>,
        member: impl Fn(u64) -> bool + Send + Sync + 'static,
    ) -> Self {
        SetGen {
            id: id.into(),
            member: Arc::new(member),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn contains(&self, x: u64) -> bool {
        (self.member)(x)
    }

    /// Members below `bound`, ascending.
    pub fn enumerate_below(&self, bound: u64) -> Vec<u64> {
        (0..bound).filter(|&x| self.contains(x)).collect()
    }

    /// The first `k` members found below `bound`.
    pub fn first_members(&self, k: usize, bound: u64) -> Vec<u64> {
        (0..bound).filter(|&x| self.contains(x)).take(k).collect()
    }

    pub fn evens() -> Self {
        SetGen::new("evens", |x| x % 2 == 0)
    }

    pub fn odds() -> Self {
        SetGen::new("odds", |x| x % 2 == 1)
    }

    pub fn naturals() -> Self {
        SetGen::new("omega", |_| true)
    }

    pub fn finite(id: impl Into<String>, members: BTreeSet<u64>) -> Self {
        SetGen::new(id, move |x| members.contains(&x))
    }
}

pub fn is_triangular(t: u64) -> bool {
    let d = 8u128 * t as u128 + 1;
    let r = d.isqrt();
    r * r == d
}

/// `N^i = { t + i : t triangular }`: `N^0 = {0, 1, 3, 6, 10, ...}` and each
/// `N^i` is `N^(i-1)` shifted up by one.
pub fn triangular_family(i: u64) -> SetGen {
    SetGen::new(format!("N{i}"), move |x| x >= i && is_triangular(x - i))
}

/// Resolves a generator name: `evens`, `odds`, `omega` (or `w`), or
/// `N<i>` / `N^<i>` for the triangular family.
pub fn named_generator(name: &str) -> Result<SetGen, AdError> {
    match name {
        "evens" => return Ok(SetGen::evens()),
        "odds" => return Ok(SetGen::odds()),
        "omega" | "w" => return Ok(SetGen::naturals()),
        _ => {}
    }
    name.strip_prefix('N')
        .map(|rest| rest.strip_prefix('^').unwrap_or(rest))
        .and_then(|i| i.parse::<u64>().ok())
        .map(triangular_family)
        .ok_or_else(|| AdError::UnknownGenerator(name.to_string()))
}

/// Generators keyed by id, in a fixed order.
#[derive(Debug, Clone, Default)]
pub struct Registry {
    gens: Vec<SetGen>,
}

impl Registry {
    pub fn new(gens: impl IntoIterator<Item = SetGen>) -> Result<Self, AdError> {
        let mut r = Registry::default();
        for g in gens {
            r.push(g)?;
        }
        Ok(r)
    }

    pub fn push(&mut self, g: SetGen) -> Result<(), AdError> {
        if self.position(g.id()).is_some() {
            return Err(AdError::DuplicateGenerator(g.id().to_string()));
        }
        self.gens.push(g);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Result<&SetGen, AdError> {
        self.position(id)
            .map(|i| &self.gens[i])
            .ok_or_else(|| AdError::UnknownGenerator(id.to_string()))
    }

    fn position(&self, id: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.id() == id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.gens.iter().map(|g| g.id())
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Whether `m` belongs to some generator named in `ids`.
    fn in_union<'a>(
        &self,
        ids: impl IntoIterator<Item = &'a String>,
        m: u64,
    ) -> Result<bool, AdError> {
        for id in ids {
            if self.get(id)?.contains(m) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Demo: the single set `omega`. It is a maximal almost disjoint family
    /// (every infinite set meets `omega` infinitely), which no finite window
    /// can certify.
    pub fn demo_omega_only() -> Self {
        Registry::new([SetGen::naturals()]).expect("one generator")
    }

    /// Demo: `omega` together with every subset of `[0, bound)`, a finite
    /// piece of the family of all finite sets plus `omega`.
    pub fn demo_finite_subsets(bound: u64) -> Self {
        let mut r = Registry::demo_omega_only();
        for mask in 0u64..(1 << bound.min(12)) {
            let members: BTreeSet<u64> = (0..bound).filter(|x| mask >> x & 1 == 1).collect();
            let id = format!("fin{mask}");
            r.push(SetGen::finite(id, members))
                .expect("masks are distinct");
        }
        r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdEvidence {
    /// `|x ∩ y ∩ [0, bound)|`.
    pub intersection_size: u64,
    /// No common member lies in the upper half `[bound/2, bound)` of the
    /// window. Evidence only: almost disjointness is not finitely decidable.
    pub ad_at_bound: bool,
}

pub fn ad_check(x: &SetGen, y: &SetGen, bound: u64) -> AdEvidence {
    let common: Vec<u64> = (0..bound)
        .filter(|&m| x.contains(m) && y.contains(m))
        .collect();
    AdEvidence {
        intersection_size: common.len() as u64,
        ad_at_bound: common.iter().all(|&m| m < bound / 2),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Condition {
    pub s: BTreeSet<u64>,
    pub f: BTreeSet<String>,
}

impl Condition {
    pub fn new(
        s: impl IntoIterator<Item = u64>,
        f: impl IntoIterator<Item = impl Into<String>>,
    ) -> Self {
        Condition {
            s: s.into_iter().collect(),
            f: f.into_iter().map(Into::into).collect(),
        }
    }

    pub fn empty() -> Self {
        Self::default()
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.s.iter().map(u64::to_string).collect();
        let fs: Vec<&str> = self.f.iter().map(String::as_str).collect();
        write!(f, "<{{{}}},{{{}}}>", s.join(","), fs.join(","))
    }
}

/// `stronger <= weaker`.
pub fn pa_leq(reg: &Registry, stronger: &Condition, weaker: &Condition) -> Result<bool, AdError> {
    for id in stronger.f.iter().chain(&weaker.f) {
        reg.get(id)?;
    }
    if !weaker.s.is_subset(&stronger.s) || !weaker.f.is_subset(&stronger.f) {
        return Ok(false);
    }
    // x ∩ s' ⊆ s for x ∈ F: the added points avoid every x ∈ F
    for m in stronger.s.difference(&weaker.s) {
        if reg.in_union(&weaker.f, *m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compatible iff each side's sets meet the other side's `s` only inside
/// their own `s`; the common extension is then `<s1 ∪ s2, F1 ∪ F2>`.
pub fn pa_compatible(reg: &Registry, a: &Condition, b: &Condition) -> Result<bool, AdError> {
    Ok(covers(reg, a, b)? && covers(reg, b, a)?)
}

// ∀x ∈ a.F: x ∩ b.s ⊆ a.s
fn covers(reg: &Registry, a: &Condition, b: &Condition) -> Result<bool, AdError> {
    for id in &a.f {
        let x = reg.get(id)?;
        if b.s.iter().any(|&m| x.contains(m) && !a.s.contains(&m)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DenseKind {
    /// `D_x = { <s, F> : x ∈ F }`.
    Dx(String),
    /// `E^y_n = { <s, F> : s ∩ y has a member >= n }`.
    Eyn(String, u64),
}

impl DenseKind {
    pub fn id(&self) -> String {
        match self {
            DenseKind::Dx(x) => format!("D_{x}"),
            DenseKind::Eyn(y, n) => format!("E^{y}_{n}"),
        }
    }
}

pub fn in_dense(reg: &Registry, kind: &DenseKind, c: &Condition) -> Result<bool, AdError> {
    Ok(match kind {
        DenseKind::Dx(x) => {
            reg.get(x)?;
            c.f.contains(x)
        }
        DenseKind::Eyn(y, n) => {
            let y = reg.get(y)?;
            c.s.iter().any(|&m| m >= *n && y.contains(m))
        }
    })
}

/// An extension of `c` inside the named dense set: `<s, F ∪ {x}>` for
/// `D_x`, and `<s ∪ {m}, F>` for `E^y_n` with `m` the least member of `y`
/// above `n` outside every set of `F`, searched below `bound`.
pub fn dense_witness(
    reg: &Registry,
    kind: &DenseKind,
    c: &Condition,
    bound: u64,
) -> Result<Condition, AdError> {
    match kind {
        DenseKind::Dx(x) => {
            reg.get(x)?;
            let mut out = c.clone();
            out.f.insert(x.clone());
            Ok(out)
        }
        DenseKind::Eyn(y, n) => {
            let gen = reg.get(y)?;
            for m in n + 1..bound {
                if gen.contains(m) && !reg.in_union(&c.f, m)? {
                    let mut out = c.clone();
                    out.s.insert(m);
                    return Ok(out);
                }
            }
            Err(AdError::SearchExhausted {
                y: y.clone(),
                n: *n,
                bound,
            })
        }
    }
}

/// `d_G`: the union of the first coordinates of a pairwise compatible set.
pub fn extract_d(reg: &Registry, g: &[Condition]) -> Result<BTreeSet<u64>, AdError> {
    for (i, a) in g.iter().enumerate() {
        for b in &g[i + 1..] {
            if !pa_compatible(reg, a, b)? {
                return Err(AdError::Incompatible(a.to_string(), b.to_string()));
            }
        }
    }
    Ok(g.iter().flat_map(|c| c.s.iter().copied()).collect())
}

/// `β_ξ` = least element of `A_ξ ∖ ⋃_{η<ξ} A_η` below `bound`, for
/// `ξ < steps`. Requires the sets to look pairwise almost disjoint in the
/// window.
pub fn diagonalize(sets: &[SetGen], steps: usize, bound: u64) -> Result<Vec<u64>, AdError> {
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if !ad_check(a, b, bound).ad_at_bound {
                return Err(AdError::NotAlmostDisjoint(
                    a.id().to_string(),
                    b.id().to_string(),
                ));
            }
        }
    }
    let mut out = Vec::with_capacity(steps);
    for xi in 0..steps.min(sets.len()) {
        let earlier = &sets[..xi];
        let beta = (0..bound)
            .find(|&m| sets[xi].contains(m) && !earlier.iter().any(|a| a.contains(m)))
            .ok_or_else(|| AdError::EmptyDifference {
                set: sets[xi].id().to_string(),
                bound,
            })?;
        out.push(beta);
    }
    Ok(out)
}

/// The almost-disjoint-sets poset over a registry, enumerated by
/// (largest member of `s`, `s` as a bitmask, `F` as a bitmask over the
/// registry order).
#[derive(Debug, Clone)]
pub struct AdPoset {
    registry: Registry,
    horizon: u64,
}

impl AdPoset {
    pub fn new(registry: Registry) -> Self {
        AdPoset {
            registry,
            horizon: DEFAULT_HORIZON,
        }
    }

    pub fn with_horizon(registry: Registry, horizon: u64) -> Self {
        AdPoset { registry, horizon }
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn dense_set(&self, kind: DenseKind) -> DenseSet<'_, Condition> {
        let id = kind.id();
        DenseSet::new(id, move |c: &Condition| {
            in_dense(&self.registry, &kind, c).unwrap_or(false)
        })
    }
}

impl LazyPoset for AdPoset {
    type Elem = Condition;

    fn iter(&self) -> Box<dyn Iterator<Item = Condition> + '_> {
        self.below(&Condition::empty())
    }

    fn leq(&self, a: &Condition, b: &Condition) -> bool {
        pa_leq(&self.registry, a, b).unwrap_or(false)
    }

    fn describe(&self, a: &Condition) -> String {
        a.to_string()
    }

    fn below<'a>(&'a self, p: &Condition) -> Box<dyn Iterator<Item = Condition> + 'a> {
        let reg = &self.registry;
        let fixed: Vec<SetGen> =
            p.f.iter()
                .filter_map(|id| reg.get(id).ok().cloned())
                .collect();
        let free_ids: Vec<String> = reg
            .ids()
            .filter(|id| !p.f.contains(*id))
            .map(str::to_string)
            .collect();
        let base_f = p.f.clone();
        let allowed = move |m: u64| !fixed.iter().any(|x| x.contains(m));
        Box::new(
            Supersets::new(p.s.clone(), self.horizon, allowed).flat_map(move |s| {
                let free_ids = free_ids.clone();
                let base_f = base_f.clone();
                counting(free_ids.len()).map(move |bits| {
                    let mut f = base_f.clone();
                    f.extend(
                        free_ids
                            .iter()
                            .zip(bits)
                            .filter(|(_, on)| *on)
                            .map(|(id, _)| id.clone()),
                    );
                    Condition { s: s.clone(), f }
                })
            }),
        )
    }
}
