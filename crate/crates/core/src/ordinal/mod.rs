//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `w^e1*c1 + ... + w^ek*ck` with strictly
//! decreasing exponents (themselves ordinals) and positive coefficients.
//! The representation is canonical, so structural equality is ordinal
//! equality and the derived `Ord` is the ordinal order.

mod parse;
mod recursion;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub use parse::{parse, ParseError};
pub use recursion::{factorial_step, recurse_omega, triangular_step, RecursionError};

/// One `w^exponent * coefficient` summand. The coefficient is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    exponent: Ordinal,
    coefficient: BigUint,
}

impl Term {
    pub fn exponent(&self) -> &Ordinal {
        &self.exponent
    }

    pub fn coefficient(&self) -> &BigUint {
        &self.coefficient
    }
}

/// An ordinal below epsilon-zero.
///
/// Field order matters: the derived `Ord` compares term sequences
/// lexicographically by (exponent, coefficient), a missing term comparing
/// low, which is exactly the ordinal order on normal forms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordinal {
    terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrdinalKind {
    Zero,
    Successor,
    Limit,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_nat(1u32)
    }

    /// The first infinite ordinal.
    pub fn omega() -> Self {
        Self::omega_pow(Self::one())
    }

    /// `w^exponent`.
    pub fn omega_pow(exponent: Ordinal) -> Self {
        Self::term(exponent, BigUint::one())
    }

    /// `w^exponent * coefficient`; zero when the coefficient is zero.
    pub fn term(exponent: Ordinal, coefficient: impl Into<BigUint>) -> Self {
        let coefficient = coefficient.into();
        if coefficient.is_zero() {
            return Self::zero();
        }
        Ordinal {
            terms: vec![Term {
                exponent,
                coefficient,
            }],
        }
    }

    pub fn from_nat(n: impl Into<BigUint>) -> Self {
        Self::term(Self::zero(), n)
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs, rejecting
    /// anything that is not already in normal form.
    pub fn from_terms(terms: Vec<(Ordinal, BigUint)>) -> Option<Self> {
        let mut out = Vec::with_capacity(terms.len());
        for (exponent, coefficient) in terms {
            if coefficient.is_zero() {
                return None;
            }
            if let Some(prev) = out.last() {
                let prev: &Term = prev;
                if prev.exponent <= exponent {
                    return None;
                }
            }
            out.push(Term {
                exponent,
                coefficient,
            });
        }
        Some(Ordinal { terms: out })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The natural number this ordinal denotes, if it is finite.
    pub fn as_nat(&self) -> Option<&BigUint> {
        match self.terms.as_slice() {
            [] => None,
            [t] if t.exponent.is_zero() => Some(&t.coefficient),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.is_zero() || self.as_nat().is_some()
    }

    pub fn to_u64(&self) -> Option<u64> {
        if self.is_zero() {
            return Some(0);
        }
        self.as_nat().and_then(|n| n.to_u64())
    }

    pub fn successor(&self) -> Self {
        self + &Self::one()
    }

    pub fn classify(&self) -> OrdinalKind {
        match self.terms.last() {
            None => OrdinalKind::Zero,
            Some(t) if t.exponent.is_zero() => OrdinalKind::Successor,
            Some(_) => OrdinalKind::Limit,
        }
    }

    pub fn compare(&self, other: &Ordinal) -> Ordering {
        self.cmp(other)
    }

    /// Ordinal exponentiation `self^exponent`.
    ///
    /// Uses the closed forms below, which satisfy `a^0 = 1`,
    /// `a^(b+1) = a^b * a` and continuity at limits:
    /// * `n^(w*g + k) = w^g * n^k` for finite `n >= 2`;
    /// * `a^(l + k) = w^(e*l) * a^k` for infinite `a` with leading exponent `e`
    ///   and `l` a limit (or zero).
    pub fn pow(&self, exponent: &Ordinal) -> Ordinal {
        if exponent.is_zero() {
            return Self::one();
        }
        if self.is_zero() {
            return Self::zero();
        }
        if *self == Self::one() {
            return Self::one();
        }
        let (limit_part, finite_part) = exponent.split_finite_tail();
        if let Some(base) = self.as_nat() {
            // w^g with w*g = limit_part
            let g = Ordinal {
                terms: limit_part
                    .terms
                    .iter()
                    .map(|t| Term {
                        exponent: t.exponent.one_plus_inverse(),
                        coefficient: t.coefficient.clone(),
                    })
                    .collect(),
            };
            let finite = base.pow(finite_part_u32(&finite_part));
            return &Self::omega_pow(g) * &Self::from_nat(finite);
        }
        let lead = &self.terms[0].exponent;
        let head = if limit_part.is_zero() {
            Self::one()
        } else {
            Self::omega_pow(lead * &limit_part)
        };
        &head * &self.pow_finite(&finite_part)
    }

    /// Splits into `(limit, k)` with `self = limit + k`, `k` finite.
    fn split_finite_tail(&self) -> (Ordinal, BigUint) {
        match self.terms.last() {
            Some(t) if t.exponent.is_zero() => {
                let mut terms = self.terms.clone();
                let last = terms.pop().expect("nonempty");
                (Ordinal { terms }, last.coefficient)
            }
            _ => (self.clone(), BigUint::zero()),
        }
    }

    /// The `d` with `1 + d = self`, for `self >= 1`.
    fn one_plus_inverse(&self) -> Ordinal {
        match self.as_nat() {
            Some(n) => Self::from_nat(n - 1u32),
            None => self.clone(),
        }
    }

    fn pow_finite(&self, k: &BigUint) -> Ordinal {
        let mut result = Self::one();
        let mut base = self.clone();
        let bits = k.bits();
        for i in 0..bits {
            if k.bit(i) {
                result = &result * &base;
            }
            if i + 1 < bits {
                base = &base * &base;
            }
        }
        result
    }
}

fn finite_part_u32(k: &BigUint) -> u32 {
    k.to_u32()
        .expect("finite exponent of a natural base exceeds u32::MAX")
}

/// Maximum of a finite collection; zero for the empty collection.
pub fn sup<'a>(xs: impl IntoIterator<Item = &'a Ordinal>) -> Ordinal {
    xs.into_iter().max().cloned().unwrap_or_default()
}

impl Add for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        let Some(lead) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut rest = rhs.terms.iter();
        for t in &self.terms {
            match t.exponent.cmp(&lead.exponent) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    terms.push(Term {
                        exponent: t.exponent.clone(),
                        coefficient: &t.coefficient + &lead.coefficient,
                    });
                    rest.next();
                    break;
                }
                Ordering::Less => break,
            }
        }
        terms.extend(rest.cloned());
        Ordinal { terms }
    }
}

impl Add for Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: Ordinal) -> Ordinal {
        &self + &rhs
    }
}

impl Mul for &Ordinal {
    type Output = Ordinal;

    /// Left-distributes `self` over the terms of `rhs`:
    /// `a * w^f*d = w^(e1+f)*d` for `f > 0`, and `a * d` multiplies only the
    /// leading coefficient of `a`.
    fn mul(self, rhs: &Ordinal) -> Ordinal {
        if self.is_zero() || rhs.is_zero() {
            return Ordinal::zero();
        }
        let lead = &self.terms[0];
        let mut acc = Ordinal::zero();
        for t in &rhs.terms {
            let piece = if t.exponent.is_zero() {
                let mut terms = self.terms.clone();
                terms[0].coefficient = &lead.coefficient * &t.coefficient;
                Ordinal { terms }
            } else {
                Ordinal::term(&lead.exponent + &t.exponent, t.coefficient.clone())
            };
            acc = &acc + &piece;
        }
        acc
    }
}

impl Mul for Ordinal {
    type Output = Ordinal;

    fn mul(self, rhs: Ordinal) -> Ordinal {
        &self * &rhs
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::from_nat(n)
    }
}

impl fmt::Display for Ordinal {
    /// Canonical rendering, e.g. `w^2*3 + w + 5`; re-parses to the same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coefficient)?;
                continue;
            }
            f.write_str("w")?;
            if t.exponent != Ordinal::one() {
                if t.exponent.is_atom() {
                    write!(f, "^{}", t.exponent)?;
                } else {
                    write!(f, "^({})", t.exponent)?;
                }
            }
            if !t.coefficient.is_one() {
                write!(f, "*{}", t.coefficient)?;
            }
        }
        Ok(())
    }
}

impl Ordinal {
    // Renders without operators: a natural number or a bare `w`.
    fn is_atom(&self) -> bool {
        self.is_finite() || *self == Ordinal::omega()
    }
}

impl std::str::FromStr for Ordinal {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}
