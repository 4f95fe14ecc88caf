//! Scalar Orlicz functions and the Luxemburg norm of finite complex sequences.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::estimate::{ConstantEstimate, Witness};
use crate::scalar::Real;
use crate::solve;

/// Magnitude range sampled by the scalar constant estimators.
pub const SAMPLE_MAGNITUDES: (f64, f64) = (1e-4, 1e4);

#[derive(Debug, Clone, PartialEq)]
pub enum OrliczKind<T> {
    /// `t ↦ t^p`, `p ≥ 1`.
    Power { p: T },
    /// `t ↦ t^p · log(1 + t)^α`, `p ≥ 1`, `α > 0`.
    PowerLog { p: T, alpha: T },
    /// The `ℓ∞` side of a couple: its inverse is identically 1 and it has no forward evaluator.
    EssSup,
    /// Piecewise-linear interpolation of `(t, φ(t))` nodes, extended linearly past the last node.
    MonotoneTable { points: Vec<(T, T)> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrliczFunction<T> {
    kind: OrliczKind<T>,
    nondegenerate: bool,
    delta2: bool,
    /// False for user tables, whose convexity is not checked.
    convexity_verified: bool,
}

impl<T: Real> OrliczFunction<T> {
    pub fn power(p: T) -> Result<Self> {
        if !(p >= T::one()) || !p.is_finite() {
            return Err(Error::Domain(format!("power exponent must be >= 1, got {p}")));
        }
        Ok(Self {
            kind: OrliczKind::Power { p },
            nondegenerate: true,
            delta2: true,
            convexity_verified: true,
        })
    }

    pub fn power_log(p: T, alpha: T) -> Result<Self> {
        if !(p >= T::one()) || !p.is_finite() {
            return Err(Error::Domain(format!("power exponent must be >= 1, got {p}")));
        }
        if !(alpha > T::zero()) || !alpha.is_finite() {
            return Err(Error::Domain(format!("log exponent must be > 0, got {alpha}")));
        }
        Ok(Self {
            kind: OrliczKind::PowerLog { p, alpha },
            nondegenerate: true,
            delta2: true,
            convexity_verified: true,
        })
    }

    pub fn ess_sup() -> Self {
        Self {
            kind: OrliczKind::EssSup,
            nondegenerate: false,
            delta2: false,
            convexity_verified: true,
        }
    }

    /// Builds a table function from nodes `(t_i, φ_i)`.
    ///
    /// Nodes must start at `(0, 0)`, have strictly increasing `t` and
    /// nondecreasing `φ`. The function is nondegenerate when every node past
    /// the origin has `φ_i > 0`.
    pub fn monotone_table(points: Vec<(T, T)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Domain("table needs at least two nodes".into()));
        }
        if points[0] != (T::zero(), T::zero()) {
            return Err(Error::Domain("table must start at (0, 0)".into()));
        }
        for w in points.windows(2) {
            let ((t0, f0), (t1, f1)) = (w[0], w[1]);
            if !(t1 > t0) || !(f1 >= f0) || !t1.is_finite() || !f1.is_finite() {
                return Err(Error::Domain(
                    "table nodes must have increasing t and nondecreasing values".into(),
                ));
            }
        }
        let nondegenerate = points[1].1 > T::zero();
        Ok(Self {
            kind: OrliczKind::MonotoneTable { points },
            nondegenerate,
            delta2: false,
            convexity_verified: false,
        })
    }

    pub fn kind(&self) -> &OrliczKind<T> {
        &self.kind
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.nondegenerate
    }

    pub fn is_ess_sup(&self) -> bool {
        matches!(self.kind, OrliczKind::EssSup)
    }

    pub fn satisfies_delta2(&self) -> bool {
        self.delta2
    }

    pub fn convexity_verified(&self) -> bool {
        self.convexity_verified
    }

    pub fn eval(&self, t: T) -> Result<T> {
        if !(t >= T::zero()) {
            return Err(Error::Domain(format!("Orlicz function evaluated at {t}")));
        }
        match &self.kind {
            OrliczKind::Power { p } => Ok(t.powf(*p)),
            OrliczKind::PowerLog { p, alpha } => Ok(t.powf(*p) * t.ln_1p().powf(*alpha)),
            OrliczKind::EssSup => Err(Error::Unsupported(
                "the ess-sup side has no forward evaluator".into(),
            )),
            OrliczKind::MonotoneTable { points } => Ok(table_eval(points, t)),
        }
    }

    /// `φ⁻¹(s)`; identically 1 on the ess-sup side.
    pub fn inverse(&self, s: T) -> Result<T> {
        if !(s >= T::zero()) {
            return Err(Error::Domain(format!("Orlicz inverse evaluated at {s}")));
        }
        match &self.kind {
            OrliczKind::EssSup => Ok(T::one()),
            _ if !self.nondegenerate => Err(Error::Unsupported(
                "degenerate Orlicz function has no inverse".into(),
            )),
            _ if s == T::zero() => Ok(T::zero()),
            OrliczKind::Power { p } => Ok(s.powf(p.recip())),
            _ => solve::invert_increasing(|t| self.eval(t), s, T::one(), "Orlicz inverse"),
        }
    }

    /// Luxemburg norm `inf{ρ > 0 : Σ φ(|x_k|/ρ) ≤ 1}` of a finite sequence.
    pub fn luxemburg_norm(&self, x: &[Complex<T>]) -> Result<T> {
        let moduli: Vec<T> = x.iter().map(|z| z.norm()).collect();
        self.luxemburg_norm_of_moduli(&moduli)
    }

    pub fn luxemburg_norm_of_moduli(&self, moduli: &[T]) -> Result<T> {
        let max = moduli.iter().fold(T::zero(), |m, &v| m.max(v));
        if max == T::zero() {
            return Ok(T::zero());
        }
        if self.is_ess_sup() {
            return Ok(max);
        }
        let guess = max / self.inverse(T::one())?;
        solve::luxemburg_infimum(
            |rho| {
                moduli
                    .iter()
                    .filter(|v| **v > T::zero())
                    .try_fold(T::zero(), |acc, &v| Ok(acc + self.eval(v / rho)?))
            },
            guess,
            "Luxemburg norm",
        )
    }

    fn require_nondegenerate(&self) -> Result<()> {
        if self.nondegenerate {
            Ok(())
        } else {
            Err(Error::Unsupported(
                "constant estimation needs a nondegenerate function".into(),
            ))
        }
    }

    /// `φ(2t)/φ(t)`.
    pub fn doubling_ratio(&self, t: T) -> Result<T> {
        let base = self.eval(t)?;
        if t > T::zero() && base == T::zero() {
            return Err(Error::Degenerate(format!("φ({t}) = 0 with t > 0")));
        }
        Ok(self.eval(t + t)? / base)
    }

    /// Supremum of `φ(2t)/φ(t)` over a grid; witness is `[t]`.
    pub fn estimate_delta2(&self, grid: &[T]) -> Result<ConstantEstimate<T>> {
        let mut best: Option<(T, T)> = None;
        for &t in grid {
            if !(t > T::zero()) {
                continue;
            }
            let r = self.doubling_ratio(t)?;
            if best.is_none_or(|(b, _)| r > b) {
                best = Some((r, t));
            }
        }
        let (value, t) =
            best.ok_or_else(|| Error::Usage("Δ₂ grid has no positive points".into()))?;
        Ok(ConstantEstimate::new(
            "delta2",
            value,
            Witness::Scalars { values: vec![t] },
            grid.len(),
        ))
    }

    /// `φ(x+y)/(φ(x)+φ(y))`.
    pub fn quasi_additivity_ratio(&self, x: T, y: T) -> Result<T> {
        Ok(self.eval(x + y)? / (self.eval(x)? + self.eval(y)?))
    }

    /// Empirical `c` with `φ(x+y) ≤ c(φ(x)+φ(y))`; witness is `[x, y]`.
    pub fn estimate_quasi_additivity(&self, samples: usize, seed: u64) -> Result<ConstantEstimate<T>> {
        self.require_nondegenerate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = (T::neg_infinity(), T::zero(), T::zero());
        for _ in 0..samples {
            let x = log_uniform(&mut rng, SAMPLE_MAGNITUDES);
            let y = log_uniform(&mut rng, SAMPLE_MAGNITUDES);
            let r = self.quasi_additivity_ratio(x, y)?;
            if r > best.0 {
                best = (r, x, y);
            }
        }
        Ok(ConstantEstimate::new(
            "quasi_additivity",
            best.0,
            Witness::Scalars {
                values: vec![best.1, best.2],
            },
            samples,
        ))
    }

    /// `φ(a·x)/φ(x)`.
    pub fn scaling_ratio(&self, a: T, x: T) -> Result<T> {
        Ok(self.eval(a * x)? / self.eval(x)?)
    }

    /// Empirical `D_a` with `φ(a·x) ≤ D_a φ(x)`; witness is `[x]`.
    pub fn estimate_scaling_constant(
        &self,
        a: T,
        samples: usize,
        seed: u64,
    ) -> Result<ConstantEstimate<T>> {
        self.require_nondegenerate()?;
        if !(a > T::zero()) {
            return Err(Error::Domain(format!("scale must be positive, got {a}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = (T::neg_infinity(), T::zero());
        for _ in 0..samples {
            let x = log_uniform(&mut rng, SAMPLE_MAGNITUDES);
            let r = self.scaling_ratio(a, x)?;
            if r > best.0 {
                best = (r, x);
            }
        }
        Ok(ConstantEstimate::new(
            format!("scaling[{a}]"),
            best.0,
            Witness::Scalars {
                values: vec![best.1],
            },
            samples,
        ))
    }
}

fn table_eval<T: Real>(points: &[(T, T)], t: T) -> T {
    let i = points.partition_point(|(ti, _)| *ti <= t);
    // `i ≥ 1` because the first node is at t = 0 and t ≥ 0.
    let (t0, f0, t1, f1) = if i < points.len() {
        let (t0, f0) = points[i - 1];
        let (t1, f1) = points[i];
        (t0, f0, t1, f1)
    } else {
        let (t0, f0) = points[points.len() - 2];
        let (t1, f1) = points[points.len() - 1];
        (t0, f0, t1, f1)
    };
    f0 + (f1 - f0) * (t - t0) / (t1 - t0)
}

pub(crate) fn log_uniform<T: Real, R: Rng>(rng: &mut R, range: (f64, f64)) -> T {
    let (lo, hi) = (range.0.ln(), range.1.ln());
    T::lit(rng.gen_range(lo..=hi).exp())
}

/// Doubling constant, quasi-additivity constant and scale constants of one function.
#[derive(Debug, Clone, PartialEq)]
pub struct Delta2Profile<T: Real> {
    pub doubling: ConstantEstimate<T>,
    pub quasi_additivity: ConstantEstimate<T>,
    pub scaling: Vec<(T, ConstantEstimate<T>)>,
}

impl<T: Real> Delta2Profile<T> {
    pub fn estimate(
        f: &OrliczFunction<T>,
        grid: &[T],
        scales: &[T],
        samples: usize,
        seed: u64,
    ) -> Result<Self> {
        let doubling = f.estimate_delta2(grid)?;
        let quasi_additivity = f.estimate_quasi_additivity(samples, seed)?;
        let scaling = scales
            .iter()
            .map(|&a| Ok((a, f.estimate_scaling_constant(a, samples, seed)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            doubling,
            quasi_additivity,
            scaling,
        })
    }
}

/// `count` log-spaced points covering `[lo, hi]`.
pub fn log_grid<T: Real>(lo: T, hi: T, count: usize) -> Vec<T> {
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    let step = (b - a) / T::lit((count - 1) as f64);
    (0..count)
        .map(|i| (a + step * T::lit(i as f64)).exp())
        .collect()
}
