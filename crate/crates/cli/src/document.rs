//! Input documents: varieties, jobs and syzygy lists.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use toric_log::toric::{build_variety, ClassElement, Fan, ToricData};
use toric_log::{Error, Result};

/// A simplicial fan with named Cox variables. Cones use 1-based ray indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyDocument {
    pub name: String,
    pub dim: usize,
    pub variables: Vec<String>,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    pub complete: bool,
    pub projective: bool,
}

impl VarietyDocument {
    pub fn build(&self) -> Result<ToricData> {
        if self.variables.len() != self.rays.len() {
            return Err(Error::InvalidFan(format!(
                "{} variables for {} rays",
                self.variables.len(),
                self.rays.len()
            )));
        }
        for (i, name) in self.variables.iter().enumerate() {
            if self.variables[..i].contains(name) {
                return Err(Error::InvalidFan(format!("variable `{name}` is named twice")));
            }
        }
        let mut cones = Vec::with_capacity(self.max_cones.len());
        for (c, cone) in self.max_cones.iter().enumerate() {
            let zero_based = cone
                .iter()
                .map(|&i| {
                    i.checked_sub(1)
                        .ok_or_else(|| Error::InvalidFan(format!("cone {} uses ray index 0; indices are 1-based", c + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            cones.push(zero_based);
        }
        let rays = self
            .rays
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        let td = build_variety(Fan::new(self.dim, rays, cones), self.complete)?;
        Ok(td.with_projective(self.projective))
    }
}

/// A class as `"a,b"` or `"a,b|t"`, or as an object with explicit parts.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassDocument {
    Text(String),
    Parts {
        free: Vec<i64>,
        #[serde(default)]
        torsion: Vec<i64>,
    },
}

impl ClassDocument {
    pub fn resolve(&self, td: &ToricData) -> Result<ClassElement> {
        let (free, torsion) = match self {
            ClassDocument::Text(text) => parse_class(text)?,
            ClassDocument::Parts { free, torsion } => (
                free.iter().map(|&v| BigInt::from(v)).collect(),
                torsion.iter().map(|&v| BigInt::from(v)).collect(),
            ),
        };
        td.class(free, torsion)
    }
}

fn parse_class(text: &str) -> Result<(Vec<BigInt>, Vec<BigInt>)> {
    let parse_list = |part: &str| -> Result<Vec<BigInt>> {
        let part = part.trim();
        if part.is_empty() {
            return Ok(Vec::new());
        }
        part.split(',')
            .map(|v| {
                v.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::InvalidInput(format!("bad class coordinate `{}` in `{text}`", v.trim())))
            })
            .collect()
    };
    match text.split_once('|') {
        Some((free, torsion)) => Ok((parse_list(free)?, parse_list(torsion)?)),
        None => Ok((parse_list(text)?, Vec::new())),
    }
}

/// A list of syzygies, each given by one polynomial string per variable.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SyzygyDocument {
    Bare(Vec<Vec<String>>),
    Wrapped { syzygies: Vec<Vec<String>> },
}

impl SyzygyDocument {
    pub fn into_vectors(self) -> Vec<Vec<String>> {
        match self {
            SyzygyDocument::Bare(v) | SyzygyDocument::Wrapped { syzygies: v } => v,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VarietyReference {
    Path(PathBuf),
    Inline(VarietyDocument),
}

/// A single invocation described as a document; the variety path is
/// resolved relative to the job file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobDocument {
    pub command: String,
    pub variety: VarietyReference,
    #[serde(default)]
    pub polynomials: Vec<String>,
    #[serde(default)]
    pub syzygies: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub kappa: Option<ClassDocument>,
    #[serde(default)]
    pub extended: bool,
    #[serde(default)]
    pub max_box: Option<u32>,
    #[serde(default)]
    pub combination_limit: Option<u64>,
    #[serde(default)]
    pub s: Option<usize>,
    #[serde(default)]
    pub new_weight: Option<u64>,
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}
