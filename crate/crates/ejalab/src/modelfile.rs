//! The on-disk model format: a JSON document describing either a finite
//! model (`outcomes` + `tests` + `states`, with an optional symmetry
//! `group`) or an algebra (`jordan: {family, size}`).
//!
//! ```json
//! {
//!   "outcomes": ["x", "x'", "y", "y'"],
//!   "tests": [["x", "x'"], ["y", "y'"]],
//!   "states": "full",
//!   "group": [[2, 3, 1, 0], [1, 0, 2, 3]]
//! }
//! ```
//!
//! `states` is either the keyword `"full"` (all probability weights) or an
//! explicit list of vertex weights, one entry per outcome in declaration
//! order. `group` lists permutations as index arrays (`g[i]` is the image
//! of outcome `i`); the listed permutations are closed into a group.
//!
//! ```json
//! { "jordan": { "family": "complexherm", "size": 2 } }
//! ```

use std::path::Path;

use nalgebra::DVector;
use serde::Deserialize;
use thiserror::Error;

use crate::jordan::{make_algebra, FamilySpec, JordanAlgebra, JordanError};
use crate::testspace::{FiniteModel, GroupAction, TestSpace, TestSpaceError};

#[derive(Debug, Error)]
pub enum ModelFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed model file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed model file: {0}")]
    Semantic(String),
    #[error(transparent)]
    Space(#[from] TestSpaceError),
    #[error(transparent)]
    Jordan(#[from] JordanError),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModelFile {
    outcomes: Option<Vec<String>>,
    tests: Option<Vec<Vec<String>>>,
    states: Option<StatesField>,
    group: Option<Vec<Vec<usize>>>,
    jordan: Option<RawJordan>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum StatesField {
    Keyword(String),
    Vertices(Vec<Vec<f64>>),
}

#[derive(Debug, Deserialize)]
struct RawJordan {
    family: String,
    size: usize,
}

/// A loaded model file.
#[derive(Debug, Clone)]
pub enum LoadedModel {
    Finite {
        model: FiniteModel,
        group: Option<GroupAction>,
    },
    Jordan(JordanAlgebra),
}

pub fn parse_model(text: &str) -> Result<LoadedModel, ModelFileError> {
    let raw: RawModelFile = serde_json::from_str(text)?;
    if let Some(jordan) = raw.jordan {
        if raw.outcomes.is_some() || raw.tests.is_some() || raw.states.is_some() {
            return Err(ModelFileError::Semantic(
                "a file declares either `jordan` or a finite model, not both".into(),
            ));
        }
        let family = FamilySpec::parse(&jordan.family).ok_or_else(|| {
            ModelFileError::Semantic(format!(
                "unknown family `{}` (expected classical|realherm|complexherm|quatherm|spin)",
                jordan.family
            ))
        })?;
        return Ok(LoadedModel::Jordan(make_algebra(family, jordan.size)?));
    }

    let tests = raw
        .tests
        .ok_or_else(|| ModelFileError::Semantic("missing `tests`".into()))?;
    let outcomes = match raw.outcomes {
        Some(o) => o,
        None => {
            // infer from the tests, first-appearance order
            let mut seen: Vec<String> = Vec::new();
            for t in &tests {
                for o in t {
                    if !seen.contains(o) {
                        seen.push(o.clone());
                    }
                }
            }
            seen
        }
    };
    let space = TestSpace::new(outcomes, tests)?;

    let model = match raw.states {
        None | Some(StatesField::Keyword(_)) => {
            if let Some(StatesField::Keyword(k)) = &raw.states {
                if k != "full" {
                    return Err(ModelFileError::Semantic(format!(
                        "unknown states keyword `{k}` (expected \"full\" or a vertex list)"
                    )));
                }
            }
            FiniteModel::full(space.clone())?
        }
        Some(StatesField::Vertices(rows)) => {
            let vertices: Vec<DVector<f64>> = rows
                .into_iter()
                .map(|r| {
                    if r.len() != space.n_outcomes() {
                        Err(ModelFileError::Semantic(format!(
                            "state vertex has {} entries, expected {}",
                            r.len(),
                            space.n_outcomes()
                        )))
                    } else {
                        Ok(DVector::from_vec(r))
                    }
                })
                .collect::<Result<_, _>>()?;
            FiniteModel::with_states(space.clone(), vertices)?
        }
    };

    let group = match raw.group {
        Some(gens) => Some(GroupAction::from_generators(model.space(), &gens)?),
        None => None,
    };
    Ok(LoadedModel::Finite { model, group })
}

pub fn load_model(path: impl AsRef<Path>) -> Result<LoadedModel, ModelFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ModelFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_model(&text)
}
