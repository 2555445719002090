//! Places where the published classification disagrees with computation.
//!
//! The list ships as `data/errata.json`; every entry is re-derived by the
//! test suite.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Erratum {
    pub id: String,
    pub location: String,
    pub published: String,
    pub computed: String,
}

const ERRATA_JSON: &str = include_str!("../data/errata.json");

pub fn errata() -> Vec<Erratum> {
    serde_json::from_str(ERRATA_JSON).expect("bundled errata file is valid")
}

pub fn find(id: &str) -> Option<Erratum> {
    errata().into_iter().find(|e| e.id == id)
}
