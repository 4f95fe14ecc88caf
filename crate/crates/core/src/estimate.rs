use num_complex::Complex;
use serde::Serialize;

use crate::blocks::BlockVector;
use crate::scalar::Real;

/// The input at which an empirical supremum (or infimum) was attained.
///
/// Each estimator documents the layout of `points` and `params` it writes,
/// and exposes a replay function consuming the same layout.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness<T: Real> {
    None,
    Scalars {
        values: Vec<T>,
    },
    Points {
        points: Vec<Vec<Complex<T>>>,
        params: Vec<T>,
    },
    Blocks {
        vectors: Vec<BlockVector<T>>,
        params: Vec<T>,
    },
}

/// Empirical value of a constant together with its attaining witness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantEstimate<T: Real> {
    pub name: String,
    pub value: T,
    pub witness: Witness<T>,
    pub trials: usize,
    /// Samples dropped by a degenerate-input rule (zero denominators, zero vectors).
    pub skipped: usize,
}

impl<T: Real> ConstantEstimate<T> {
    pub fn new(name: impl Into<String>, value: T, witness: Witness<T>, trials: usize) -> Self {
        Self {
            name: name.into(),
            value,
            witness,
            trials,
            skipped: 0,
        }
    }

    pub fn with_skipped(mut self, skipped: usize) -> Self {
        self.skipped = skipped;
        self
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }
}
