use anyhow::Context;
use serde::Deserialize;
use std::path::Path;

/// Inputs for `verify` and `assemble-a`; unknown keys are rejected.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub identity: Option<String>,
    pub field: Option<String>,
    pub group: Option<String>,
    pub subgroup_order: Option<usize>,
    pub p: Option<u64>,
    pub k: Option<i64>,
    pub ideal_exponent: Option<i64>,
    pub scalar: Option<i64>,
    pub t: Option<i64>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

impl Scenario {
    pub fn load(path: &Path) -> anyhow::Result<Scenario> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn need<T: Clone>(v: &Option<T>, name: &str) -> anyhow::Result<T> {
        v.clone().with_context(|| format!("scenario is missing {name:?}"))
    }
}
