//! Relation and poset files: a JSON object with `elements`, `leq` (alias
//! `pairs`) as a list of `[a, b]` pairs, an optional `close` flag and
//! optional named `sets`.

use std::collections::BTreeMap;
use std::path::Path;

use forcing_core::poset::{ElemSet, PosetError};
use forcing_core::{FinitePoset, FiniteRelation};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationFile {
    elements: Vec<String>,
    #[serde(default, alias = "pairs")]
    leq: Vec<(String, String)>,
    #[serde(default)]
    close: bool,
    #[serde(default)]
    sets: BTreeMap<String, Vec<String>>,
}

fn read(path: &Path) -> Result<RelationFile, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

/// A relation file; `close` adds the transitive closure.
pub fn relation(path: &Path) -> Result<FiniteRelation, CliError> {
    let f = read(path)?;
    let r = FiniteRelation::new(f.elements, f.leq)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok(if f.close { r.transitive_closure() } else { r })
}

pub struct PosetFile {
    pub poset: FinitePoset,
    pub sets: BTreeMap<String, ElemSet>,
}

/// A poset file; `close` takes the reflexive-transitive closure, otherwise
/// the pairs must already be reflexive and transitive.
pub fn poset(path: &Path) -> Result<PosetFile, CliError> {
    let f = read(path)?;
    let built = if f.close {
        FinitePoset::closure_of(f.elements, f.leq)
    } else {
        FinitePoset::new(f.elements, f.leq)
    };
    let poset = built.map_err(|e| match e {
        PosetError::NotReflexive(_) | PosetError::NotTransitive(..) => {
            CliError::Violation(format!("{}: {e}", path.display()))
        }
        other => CliError::Parse(format!("{}: {other}", path.display())),
    })?;
    let mut sets = BTreeMap::new();
    for (name, labels) in f.sets {
        let set = poset
            .resolve(&labels)
            .map_err(|e| CliError::Parse(format!("{}: set {name}: {e}", path.display())))?;
        sets.insert(name, set);
    }
    Ok(PosetFile { poset, sets })
}
