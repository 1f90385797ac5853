//! Executable finite fragments of ordinal arithmetic and forcing.
//!
//! * [`ordinal`]: Cantor-normal-form ordinals below epsilon-zero.
//! * [`well_order`]: explicit finite relations and order types, used as the
//!   brute-force model for ordinal arithmetic.
//! * [`poset`]: compatibility, dense sets, filters and the generic-filter
//!   chain construction over finite and lazily enumerated posets.
//! * [`ad`]: almost disjoint families and the almost-disjoint-sets poset.
//! * [`completion`]: regular open algebras of finite posets and their
//!   Stone spaces.

mod bits;

pub mod ad;
pub mod completion;
pub mod ordinal;
pub mod poset;
pub mod well_order;

pub use ordinal::{Ordinal, OrdinalKind};
pub use poset::FinitePoset;
pub use well_order::FiniteRelation;
