use std::collections::BTreeMap;

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A finitely supported complex sequence, keyed by coordinate.
pub type Sequence<T> = BTreeMap<usize, Complex<T>>;

/// One coordinate of a [`BlockVector`]: the block `(x_{n−1}(k), …, x_0(k))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockEntry<T> {
    pub k: usize,
    pub block: Vec<Complex<T>>,
}

/// Finitely supported sequence of `ℂⁿ` blocks.
///
/// Blocks are stored highest component first, `(x_{n−1}, …, x_0)`.
/// Coordinates are kept ascending and all-zero blocks are never stored.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockVector<T> {
    n: usize,
    entries: Vec<BlockEntry<T>>,
}

impl<T: Real> BlockVector<T> {
    pub fn new(n: usize, entries: Vec<(usize, Vec<Complex<T>>)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Usage("block dimension must be at least 1".into()));
        }
        let mut map: BTreeMap<usize, Vec<Complex<T>>> = BTreeMap::new();
        for (k, block) in entries {
            if block.len() != n {
                return Err(Error::Usage(format!(
                    "block at coordinate {k} has length {}, expected {n}",
                    block.len()
                )));
            }
            if block.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::Domain(format!("non-finite entry at coordinate {k}")));
            }
            if map.insert(k, block).is_some() {
                return Err(Error::Usage(format!("coordinate {k} appears twice")));
            }
        }
        Ok(Self {
            n,
            entries: map
                .into_iter()
                .filter(|(_, b)| b.iter().any(|z| !z.is_zero()))
                .map(|(k, block)| BlockEntry { k, block })
                .collect(),
        })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            entries: Vec::new(),
        }
    }

    /// Builds from dense component sequences given highest component first;
    /// `components[0]` is `x_{n−1}` and the last one is `x_0`.
    pub fn from_components(components: &[Vec<Complex<T>>]) -> Result<Self> {
        let n = components.len();
        let len = components.iter().map(Vec::len).max().unwrap_or(0);
        let entries = (0..len)
            .map(|k| {
                let block = components
                    .iter()
                    .map(|c| c.get(k).copied().unwrap_or_else(Complex::zero))
                    .collect();
                (k, block)
            })
            .collect();
        Self::new(n, entries)
    }

    /// A single-coordinate vector.
    pub fn single(k: usize, block: Vec<Complex<T>>) -> Result<Self> {
        let n = block.len();
        Self::new(n, vec![(k, block)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[BlockEntry<T>] {
        &self.entries
    }

    pub fn support(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.k).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Component sequences over the support, lowest first: `out[j][i] = x_j(support[i])`.
    pub fn components_ascending(&self) -> Vec<Vec<Complex<T>>> {
        (0..self.n)
            .map(|j| {
                self.entries
                    .iter()
                    .map(|e| e.block[self.n - 1 - j])
                    .collect()
            })
            .collect()
    }

    /// Inverse of [`components_ascending`](Self::components_ascending).
    pub fn from_components_ascending(support: &[usize], comps: &[Vec<Complex<T>>]) -> Result<Self> {
        let n = comps.len();
        let entries = support
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, comps.iter().rev().map(|c| c[i]).collect()))
            .collect();
        Self::new(n, entries)
    }

    /// The component sequence `x_j`.
    pub fn component(&self, j: usize) -> Sequence<T> {
        self.entries
            .iter()
            .map(|e| (e.k, e.block[self.n - 1 - j]))
            .collect()
    }

    /// The lower `m` components `(x_{m−1}, …, x_0)`.
    pub fn prefix(&self, m: usize) -> Result<Self> {
        if m == 0 || m > self.n {
            return Err(Error::Usage(format!(
                "prefix length {m} outside 1..={}",
                self.n
            )));
        }
        Self::new(
            m,
            self.entries
                .iter()
                .map(|e| (e.k, e.block[self.n - m..].to_vec()))
                .collect(),
        )
    }

    pub fn scale(&self, lambda: Complex<T>) -> Self {
        if lambda.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|e| BlockEntry {
                    k: e.k,
                    block: e.block.iter().map(|z| *z * lambda).collect(),
                })
                .collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Usage(format!(
                "cannot add block vectors of dimension {} and {}",
                self.n, other.n
            )));
        }
        let mut map: BTreeMap<usize, Vec<Complex<T>>> = BTreeMap::new();
        for e in self.entries.iter().chain(&other.entries) {
            let slot = map
                .entry(e.k)
                .or_insert_with(|| vec![Complex::zero(); self.n]);
            for (s, z) in slot.iter_mut().zip(&e.block) {
                *s = *s + *z;
            }
        }
        Self::new(self.n, map.into_iter().collect())
    }

    pub fn max_modulus(&self) -> T {
        self.entries
            .iter()
            .flat_map(|e| e.block.iter())
            .fold(T::zero(), |m, z| m.max(z.norm()))
    }
}
