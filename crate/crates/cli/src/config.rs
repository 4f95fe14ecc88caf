//! JSON couple configurations and block-vector files.

use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use twistlab::{BlockVector, InterpolationCouple, OrliczFunction};

use crate::Failure;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PhiConfig {
    EssSup,
    Power { p: f64 },
    PowerLog { p: f64, alpha: f64 },
    MonotoneTable { points: Vec<[f64; 2]> },
}

impl PhiConfig {
    pub fn build(&self) -> twistlab::Result<OrliczFunction> {
        match self {
            Self::EssSup => Ok(OrliczFunction::ess_sup()),
            Self::Power { p } => OrliczFunction::power(*p),
            Self::PowerLog { p, alpha } => OrliczFunction::power_log(*p, *alpha),
            Self::MonotoneTable { points } => {
                OrliczFunction::monotone_table(points.iter().map(|[t, v]| (*t, *v)).collect())
            }
        }
    }

    /// Exponent of a pure power function, `None` for the ess-sup function.
    pub fn power_exponent(&self) -> Option<Option<f64>> {
        match self {
            Self::EssSup => Some(None),
            Self::Power { p } => Some(Some(*p)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoupleConfig {
    pub phi0: PhiConfig,
    pub phi1: PhiConfig,
    pub theta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jet_order: Option<usize>,
}

impl CoupleConfig {
    /// The `(ℓ∞, ℓ₁)` couple.
    pub fn kalton_peck(theta: f64) -> Self {
        Self {
            phi0: PhiConfig::EssSup,
            phi1: PhiConfig::Power { p: 1.0 },
            theta,
            jet_order: None,
        }
    }

    pub fn load(path: Option<&Path>, theta: Option<f64>) -> Result<Self, Failure> {
        let mut cfg = match path {
            Some(p) => {
                let text = read(p)?;
                serde_json::from_str(&text)
                    .map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?
            }
            None => Self::kalton_peck(0.5),
        };
        if let Some(t) = theta {
            cfg.theta = t;
        }
        Ok(cfg)
    }

    pub fn build(&self) -> Result<InterpolationCouple, Failure> {
        let couple = InterpolationCouple::new(self.phi0.build()?, self.phi1.build()?, self.theta)?;
        Ok(match self.jet_order {
            Some(order) => couple.with_jet_order(order)?,
            None => couple,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    k: usize,
    block: Vec<[f64; 2]>,
}

/// On-disk block vector. `order` must be `"high_to_low"`: each block lists
/// `x_{n−1}` first and `x_0` last.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VectorFile {
    n: usize,
    order: String,
    entries: Vec<EntryFile>,
}

pub const BLOCK_ORDER: &str = "high_to_low";

pub fn load_vector(path: &Path) -> Result<BlockVector, Failure> {
    let text = read(path)?;
    let file: VectorFile =
        serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    if file.order != BLOCK_ORDER {
        return Err(Failure::usage(format!(
            "{}: unsupported block order {:?}, expected {BLOCK_ORDER:?}",
            path.display(),
            file.order
        )));
    }
    let entries = file
        .entries
        .into_iter()
        .map(|e| (e.k, e.block.into_iter().map(|[re, im]| Complex::new(re, im)).collect()))
        .collect();
    BlockVector::new(file.n, entries).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

#[cfg(test)]
pub fn vector_json(v: &BlockVector) -> String {
    let file = VectorFile {
        n: v.n(),
        order: BLOCK_ORDER.into(),
        entries: v
            .entries()
            .iter()
            .map(|e| EntryFile {
                k: e.k,
                block: e.block.iter().map(|z| [z.re, z.im]).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("vector serializes")
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}
