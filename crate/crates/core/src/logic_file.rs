//! JSON logic documents.
//!
//! ```json
//! {"atoms": 5, "labels": ["a", "b", "c", "d", "e"],
//!  "contexts": [[0, 1, 2], [0, 3, 4]],
//!  "rays": [[1, 0, 0], [0, 1, 1], [0, 1, -1], [0, 1, 0], [0, 0, 1]]}
//! ```
//!
//! Atoms are zero-based. `labels` and `rays` are optional; when present
//! they must hold one entry per atom. Ray components are exact integers.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::{LogicError, OrthoLogic};
use crate::realization::{catalog, check_realization, Ray, RealizationError};

#[derive(Debug, Error)]
pub enum LogicFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed logic document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error("rays do not realize the logic: {0}")]
    NotARealization(String),
    #[error("unknown logic {0:?}: not a catalog name and no such file")]
    UnknownSource(String),
}

/// A logic together with an optional integer realization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicDocument {
    pub logic: OrthoLogic,
    pub rays: Option<Vec<Ray>>,
}

#[derive(Serialize, Deserialize)]
struct RawDocument {
    #[serde(flatten)]
    logic: OrthoLogic,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rays: Option<Vec<Ray>>,
}

impl LogicDocument {
    /// Parses a document, checking that any rays realize the logic exactly.
    pub fn from_json(text: &str) -> Result<Self, LogicFileError> {
        let raw: RawDocument = serde_json::from_str(text)?;
        let doc = LogicDocument {
            logic: raw.logic,
            rays: raw.rays,
        };
        doc.validate()?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let raw = RawDocument {
            logic: self.logic.clone(),
            rays: self.rays.clone(),
        };
        serde_json::to_string_pretty(&raw).expect("documents always serialize")
    }

    pub fn load(path: &Path) -> Result<Self, LogicFileError> {
        let text = fs::read_to_string(path).map_err(|source| LogicFileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: &Path) -> Result<(), LogicFileError> {
        fs::write(path, self.to_json() + "\n").map_err(|source| LogicFileError::Io {
            path: path.display().to_string(),
            source,
        })
    }

    /// Resolves a catalog name first, then a file path.
    pub fn resolve(source: &str) -> Result<Self, LogicFileError> {
        if let Some(entry) = catalog(source) {
            return Ok(LogicDocument {
                logic: entry.logic,
                rays: entry.rays,
            });
        }
        let path = Path::new(source);
        if path.is_file() {
            return Self::load(path);
        }
        Err(LogicFileError::UnknownSource(source.to_string()))
    }

    fn validate(&self) -> Result<(), LogicFileError> {
        if let Some(rays) = &self.rays {
            let report = check_realization(&self.logic, rays, 0.0)?;
            if !report.ok {
                let detail = match (report.non_orthogonal.first(), report.parallel.first()) {
                    (Some(&(c, a, b)), _) => {
                        format!("atoms {a} and {b} share context {c} but their rays are not orthogonal")
                    }
                    (None, Some(&(a, b))) => format!("atoms {a} and {b} have parallel rays"),
                    (None, None) => unreachable!("a failed report names a violation"),
                };
                return Err(LogicFileError::NotARealization(detail));
            }
        }
        Ok(())
    }
}
