//! File formats. Rationals are JSON strings, so every file is exact.

use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use skeleton_core::realize::{leaf_counts_from_cover, CoverDescription, CoveringDatum};
use skeleton_core::tree::MetricTree;
use skeleton_core::{Error, Root};

use crate::error::CliError;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_owned(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// `curve.json`: `{"n": 3, "roots": [{"point": <series or "inf">, "mult": 2}]}`.
/// Parsed without validation so that the library reports typed errors.
#[derive(Debug, Serialize, Deserialize)]
pub struct CurveFile {
    pub n: u64,
    pub roots: Vec<Root>,
}

/// `cov.json`: a tree, one ramification flag per edge, and either the
/// branch points per vertex (`leaf_counts`) or the cover's `weights` and
/// `preimages` per vertex.
#[derive(Debug, Serialize, Deserialize)]
pub struct CoveringFile {
    pub tree: MetricTree,
    pub ramified: Vec<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leaf_counts: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preimages: Option<Vec<u64>>,
}

impl CoveringFile {
    pub fn into_datum(self, p: u64) -> Result<CoveringDatum, Error> {
        match (self.leaf_counts, self.weights, self.preimages) {
            (Some(leaf_counts), None, None) => Ok(CoveringDatum {
                tree: self.tree,
                p,
                ramified: self.ramified,
                leaf_counts,
            }),
            (None, Some(weights), Some(preimages)) => leaf_counts_from_cover(&CoverDescription {
                tree: self.tree,
                p,
                ramified: self.ramified,
                weights,
                preimages,
            }),
            _ => Err(Error::InvalidInput(
                "give either leaf_counts, or both weights and preimages".into(),
            )),
        }
    }
}
