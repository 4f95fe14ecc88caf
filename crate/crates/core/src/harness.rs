//! Seeded randomized estimators for the constants the theory guarantees to
//! exist, and closed-form oracles for the classical couples.
//!
//! Every trial draws from its own ChaCha stream keyed by `(seed, trial)`, so
//! results do not depend on scheduling and a run with more trials extends
//! (never reshuffles) a run with fewer. Trials run on the rayon pool; the
//! reduction is sequential in trial order with first-index tie breaking.
//!
//! Reported suprema are lower bounds on the true constants.

use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::blocks::{BlockVector, Sequence};
use crate::derived::{fenchel_orlicz_norm, rochberg_quasinorm};
use crate::error::{Error, Result};
use crate::estimate::{ConstantEstimate, Witness};
use crate::interpolation::{InterpolationCouple, OMEGA_SIGN};
use crate::orlicz::{log_grid, OrliczFunction};
use crate::scalar::Real;

/// Slack factor applied to sampled boundary suprema in the three-lines check.
pub const THREE_LINES_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig<T> {
    pub seed: u64,
    pub trials: usize,
    /// Derived order `n`.
    pub n: usize,
    /// Inclusive range of support sizes for random block vectors.
    pub dims: (usize, usize),
    /// Log-uniform range of entry moduli.
    pub magnitudes: (T, T),
    pub tolerance: T,
    /// Probability that a random entry is exactly zero.
    pub zero_probability: f64,
}

impl<T: Real> TrialConfig<T> {
    pub fn new(seed: u64, trials: usize, n: usize) -> Self {
        Self {
            seed,
            trials,
            n,
            dims: (1, 16),
            magnitudes: (T::lit(1e-3), T::lit(1e3)),
            tolerance: T::lit(1e-9),
            zero_probability: 0.1,
        }
    }

    pub fn with_dims(mut self, lo: usize, hi: usize) -> Self {
        self.dims = (lo, hi);
        self
    }

    pub fn with_magnitudes(mut self, lo: T, hi: T) -> Self {
        self.magnitudes = (lo, hi);
        self
    }

    pub fn with_tolerance(mut self, tolerance: T) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_zero_probability(mut self, p: f64) -> Self {
        self.zero_probability = p;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Usage("trials must be at least 1".into()));
        }
        if self.n == 0 {
            return Err(Error::Usage("derived order must be at least 1".into()));
        }
        if self.dims.0 == 0 || self.dims.0 > self.dims.1 {
            return Err(Error::Usage(format!("bad support range {:?}", self.dims)));
        }
        let (lo, hi) = self.magnitudes;
        if !(lo > T::zero()) || !(lo <= hi) || !hi.is_finite() {
            return Err(Error::Usage(format!("bad magnitude range ({lo}, {hi})")));
        }
        if !(0.0..1.0).contains(&self.zero_probability) {
            return Err(Error::Usage("zero probability must lie in [0, 1)".into()));
        }
        Ok(())
    }

    /// Generator for one trial.
    pub fn rng(&self, trial: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial as u64);
        rng
    }

    fn magnitude_range(&self) -> (f64, f64) {
        (
            self.magnitudes.0.to_f64().unwrap_or(1e-3),
            self.magnitudes.1.to_f64().unwrap_or(1e3),
        )
    }

    /// Entry with log-uniform modulus and uniform phase, zero with `zero_probability`.
    pub fn random_complex<R: Rng>(&self, rng: &mut R) -> Complex<T> {
        let zero = rng.gen_bool(self.zero_probability);
        let (lo, hi) = self.magnitude_range();
        let modulus = rng.gen_range(lo.ln()..=hi.ln()).exp();
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        if zero {
            Complex::zero()
        } else {
            Complex::from_polar(T::lit(modulus), T::lit(phase))
        }
    }

    /// Real entry with log-uniform modulus and random sign.
    pub fn random_real<R: Rng>(&self, rng: &mut R) -> T {
        let zero = rng.gen_bool(self.zero_probability);
        let (lo, hi) = self.magnitude_range();
        let modulus = rng.gen_range(lo.ln()..=hi.ln()).exp();
        let negative = rng.gen_bool(0.5);
        if zero {
            T::zero()
        } else if negative {
            -T::lit(modulus)
        } else {
            T::lit(modulus)
        }
    }

    pub fn random_point<R: Rng>(&self, rng: &mut R, m: usize) -> Vec<Complex<T>> {
        (0..m).map(|_| self.random_complex(rng)).collect()
    }

    pub fn random_block_vector<R: Rng>(&self, rng: &mut R, n: usize) -> Result<BlockVector<T>> {
        let size = rng.gen_range(self.dims.0..=self.dims.1);
        BlockVector::new(n, (0..size).map(|k| (k, self.random_point(rng, n))).collect())
    }
}

/// Per-trial outcome: a value with its witness, or a skip.
type Sample<T> = Option<(T, Witness<T>)>;

fn run_trials<T, F>(cfg: &TrialConfig<T>, trial: F) -> Result<Vec<Sample<T>>>
where
    T: Real,
    F: Fn(&mut ChaCha8Rng) -> Result<Sample<T>> + Sync + Send,
{
    cfg.validate()?;
    (0..cfg.trials)
        .into_par_iter()
        .map(|i| trial(&mut cfg.rng(i)))
        .collect()
}

fn reduce<T: Real>(
    name: &str,
    samples: Vec<Sample<T>>,
    better: impl Fn(T, T) -> bool,
) -> Result<ConstantEstimate<T>> {
    let trials = samples.len();
    let mut skipped = 0;
    let mut best: Option<(T, Witness<T>)> = None;
    for (i, s) in samples.into_iter().enumerate() {
        match s {
            None => skipped += 1,
            Some((v, w)) => {
                if !v.is_finite() {
                    return Err(Error::Degenerate(format!(
                        "{name}: trial {i} produced a non-finite value {v}"
                    )));
                }
                if best.as_ref().is_none_or(|(b, _)| better(v, *b)) {
                    best = Some((v, w));
                }
            }
        }
    }
    let (value, witness) = best.ok_or_else(|| {
        Error::Degenerate(format!("{name}: all {trials} trials were skipped"))
    })?;
    Ok(ConstantEstimate::new(name, value, witness, trials).with_skipped(skipped))
}

fn sup<T: Real>(name: &str, samples: Vec<Sample<T>>) -> Result<ConstantEstimate<T>> {
    reduce(name, samples, |v, b| v > b)
}

fn inf<T: Real>(name: &str, samples: Vec<Sample<T>>) -> Result<ConstantEstimate<T>> {
    reduce(name, samples, |v, b| v < b)
}

fn points<T: Real>(points: Vec<Vec<Complex<T>>>, params: Vec<T>) -> Witness<T> {
    Witness::Points { points, params }
}

fn sub_sequences<T: Real>(a: &Sequence<T>, b: &Sequence<T>) -> Sequence<T> {
    let mut out = a.clone();
    for (k, v) in b {
        let slot = out.entry(*k).or_insert_with(Complex::zero);
        *slot = *slot - *v;
    }
    out
}

// ---------------------------------------------------------------------------
// Taylor consistency

/// `max_j |ĝ_x[j; θ] − x_j| / |x_j|`, with the absolute deviation for `x_j = 0`.
pub fn taylor_deviation<T: Real>(couple: &InterpolationCouple<T>, x: &[Complex<T>]) -> Result<T> {
    let m = x.len();
    let g = couple.g_jet(x, couple.jet_order_for(m))?;
    Ok(x.iter().rev().enumerate().fold(T::zero(), |acc, (j, xj)| {
        let scale = if xj.is_zero() { T::one() } else { xj.norm() };
        acc.max((g.jet.coeff(j) - xj).norm() / scale)
    }))
}

/// Worst Taylor-coefficient deviation over random `x ∈ ℂ^n`; witness `points = [x]`.
pub fn check_taylor_consistency<T: Real>(
    couple: &InterpolationCouple<T>,
    cfg: &TrialConfig<T>,
) -> Result<ConstantEstimate<T>> {
    let samples = run_trials(cfg, |rng| {
        let x = cfg.random_point(rng, cfg.n);
        let d = taylor_deviation(couple, &x)?;
        Ok(Some((d, points(vec![x], vec![]))))
    })?;
    sup(&format!("taylor_deviation[n={}]", cfg.n), samples)
}

// ---------------------------------------------------------------------------
// Quasilinearity

/// `‖Ω^n(x+y) − Ω^n(x) − Ω^n(y)‖_{φ_θ} / (‖x‖ + ‖y‖)` with the twisted-sum quasinorm below;
/// `None` when the denominator is below the floor.
pub fn quasilinearity_ratio<T: Real>(
    couple: &InterpolationCouple<T>,
    n: usize,
    x: &BlockVector<T>,
    y: &BlockVector<T>,
) -> Result<Option<T>> {
    let denom = rochberg_quasinorm(couple, n, x)? + rochberg_quasinorm(couple, n, y)?;
    if denom < T::denominator_floor() {
        return Ok(None);
    }
    let sum = couple.omega_n(n, &x.try_add(y)?)?;
    let defect = sub_sequences(
        &sub_sequences(&sum, &couple.omega_n(n, x)?),
        &couple.omega_n(n, y)?,
    );
    Ok(Some(couple.sequence_norm(&defect)? / denom))
}

/// Empirical quasilinearity constant of `Ω^n`; witness `vectors = [x, y]`.
pub fn estimate_quasilinearity<T: Real>(
    couple: &InterpolationCouple<T>,
    cfg: &TrialConfig<T>,
) -> Result<ConstantEstimate<T>> {
    let n = cfg.n;
    let samples = run_trials(cfg, |rng| {
        let x = cfg.random_block_vector(rng, n)?;
        let y = cfg.random_block_vector(rng, n)?;
        Ok(quasilinearity_ratio(couple, n, &x, &y)?.map(|r| {
            (
                r,
                Witness::Blocks {
                    vectors: vec![x, y],
                    params: vec![],
                },
            )
        }))
    })?;
    sup(&format!("quasilinearity[n={n}]"), samples)
}

// ---------------------------------------------------------------------------
// Quasi-convexity and Δ₂ of φ_{θ,n}

fn combine<T: Real>(x: &[Complex<T>], y: &[Complex<T>], t: T) -> Vec<Complex<T>> {
    x.iter()
        .zip(y)
        .map(|(a, b)| a.scale(t) + b.scale(T::one() - t))
        .collect()
}

/// `φ_{θ,n}(tx + (1−t)y) / (t φ_{θ,n}(x) + (1−t) φ_{θ,n}(y))`.
pub fn quasiconvexity_ratio<T: Real>(
    couple: &InterpolationCouple<T>,
    x: &[Complex<T>],
    y: &[Complex<T>],
    t: T,
) -> Result<Option<T>> {
    let denom = t * couple.phi_theta_n(x)? + (T::one() - t) * couple.phi_theta_n(y)?;
    if denom < T::denominator_floor() {
        return Ok(None);
    }
    let mixed = if t == T::one() {
        x.to_vec()
    } else if t == T::zero() {
        y.to_vec()
    } else {
        combine(x, y, t)
    };
    Ok(Some(couple.phi_theta_n(&mixed)? / denom))
}

/// Empirical quasi-convexity constant; witness `points = [x, y]`, `params = [t]`.
///
/// `x` and `y` are drawn in recursion-residual coordinates (see
/// [`InterpolationCouple::point_from_residuals`]): the residuals get the
/// configured log-uniform moduli, so `φ_{θ,n}` sees the configured scales
/// directly. For power-type couples a global rescaling of the magnitudes then
/// maps every sample through a linear map preserving the ratio.
pub fn estimate_quasiconvexity<T: Real>(
    couple: &InterpolationCouple<T>,
    cfg: &TrialConfig<T>,
) -> Result<ConstantEstimate<T>> {
    let n = cfg.n;
    let samples = run_trials(cfg, |rng| {
        let x = couple.point_from_residuals(&cfg.random_point(rng, n))?;
        let y = couple.point_from_residuals(&cfg.random_point(rng, n))?;
        let t = T::lit(rng.gen_range(0.0..=1.0));
        Ok(quasiconvexity_ratio(couple, &x, &y, t)?.map(|r| (r, points(vec![x, y], vec![t]))))
    })?;
    sup(&format!("quasiconvexity[n={n}]"), samples)
}

/// `φ_{θ,n}(2x) / φ_{θ,n}(x)`; `None` for `x` with vanishing `φ_{θ,n}`.
pub fn doubling_ratio_n<T: Real>(
    couple: &InterpolationCouple<T>,
    x: &[Complex<T>],
) -> Result<Option<T>> {
    let base = couple.phi_theta_n(x)?;
    if base < T::denominator_floor() {
        return Ok(None);
    }
    let doubled: Vec<Complex<T>> = x.iter().map(|z| *z + *z).collect();
    Ok(Some(couple.phi_theta_n(&doubled)? / base))
}

/// Empirical Δ₂ constant of `φ_{θ,n}`; witness `points = [x]`, drawn in
/// residual coordinates as in [`estimate_quasiconvexity`].
pub fn estimate_delta2_n<T: Real>(
    couple: &InterpolationCouple<T>,
    cfg: &TrialConfig<T>,
) -> Result<ConstantEstimate<T>> {
    let n = cfg.n;
    let samples = run_trials(cfg, |rng| {
        let x = couple.point_from_residuals(&cfg.random_point(rng, n))?;
        Ok(doubling_ratio_n(couple, &x)?.map(|r| (r, points(vec![x], vec![]))))
    })?;
    sup(&format!("delta2[n={n}]"), samples)
}

// ---------------------------------------------------------------------------
// Boundary estimates for g_x

/// 161 points covering `[−8, 8]`.
pub fn boundary_t_grid<T: Real>() -> Vec<T> {
    (0..161).map(|i| T::lit(-8.0 + 0.1 * i as f64)).collect()
}

/// `β ∈ {1, 2, 4, …, 1024}`.
pub fn default_beta_grid<T: Real>() -> Vec<T> {
    (0..=10).map(|i| T::lit(f64::powi(2.0, i))).collect()
}

/// `|g_x(side + it)| / φ_side⁻¹(β φ_{θ,n}(x))`.
pub fn boundary_ratio<T: Real>(
    couple: &InterpolationCouple<T>,
    x: &[Complex<T>],
    beta: T,
    side: u8,
    t: T,
) -> Result<T> {
    let level = couple.endpoint_inverse(side, beta * couple.phi_theta_n(x)?)?;
    Ok(couple.g_boundary_eval(x, side, t)?.norm() / level)
}

/// Boundary constants `(α̂, β)` with the smallest `α̂` over the β grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryConstants<T: Real> {
    pub beta: T,
    /// Witness `points = [x]`, `params = [β, side, t]`.
    pub alpha: ConstantEstimate<T>,
    /// `(β, α̂(β))` for every grid value.
    pub profile: Vec<(T, T)>,
}

pub fn estimate_boundary_constants<T: Real>(
    couple: &InterpolationCouple<T>,
    cfg: &TrialConfig<T>,
    beta_grid: &[T],
    t_grid: &[T],
) -> Result<BoundaryConstants<T>> {
    if beta_grid.is_empty() || t_grid.is_empty() {
        return Err(Error::Usage("boundary estimation needs non-empty β and t grids".into()));
    }
    let n = cfg.n;
    cfg.validate()?;
    // One row per trial: for each β, the best (ratio, side, t).
    type Row<T> = Option<(Vec<Complex<T>>, Vec<(T, u8, T)>)>;
    let rows: Vec<Row<T>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| -> Result<Row<T>> {
            let mut rng = cfg.rng(i);
            let x = cfg.random_point(&mut rng, n);
            let level = couple.phi_theta_n(&x)?;
            if level < T::denominator_floor() {
                return Ok(None);
            }
            let family = couple.g_family(&x)?;
            let mut moduli = Vec::with_capacity(2 * t_grid.len());
            for side in [0u8, 1] {
                for &t in t_grid {
                    moduli.push((side, t, family.boundary_eval(side, t)?.norm()));
                }
            }
            let per_beta = beta_grid
                .iter()
                .map(|&beta| {
                    let inv = [
                        couple.endpoint_inverse(0, beta * level)?,
                        couple.endpoint_inverse(1, beta * level)?,
                    ];
                    let mut best = (T::neg_infinity(), 0u8, T::zero());
                    for &(side, t, m) in &moduli {
                        let r = m / inv[side as usize];
                        if r > best.0 {
                            best = (r, side, t);
                        }
                    }
                    Ok(best)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Some((x, per_beta)))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut chosen: Option<(usize, ConstantEstimate<T>)> = None;
    let mut profile = Vec::with_capacity(beta_grid.len());
    for (bi, &beta) in beta_grid.iter().enumerate() {
        let samples: Vec<Sample<T>> = rows
            .iter()
            .map(|row| {
                row.as_ref().map(|(x, per_beta)| {
                    let (r, side, t) = per_beta[bi];
                    (
                        r,
                        points(vec![x.clone()], vec![beta, T::lit(side as f64), t]),
                    )
                })
            })
            .collect();
        let est = sup(&format!("boundary_alpha[n={n}]"), samples)?;
        profile.push((beta, est.value));
        if chosen.as_ref().is_none_or(|(_, c)| est.value < c.value) {
            chosen = Some((bi, est));
        }
    }
    let (bi, alpha) = chosen.expect("non-empty β grid");
    Ok(BoundaryConstants {
        beta: beta_grid[bi],
        alpha,
        profile,
    })
}

// ---------------------------------------------------------------------------
// Three-lines check

/// Slack of the maximum-principle bound for
/// `h₁ = t₀ g_{x⁰} + t₁ g_{x¹} − g_{t₀x⁰ + t₁x¹}` and `h₂ = h₁/(z−θ)^{n−1}`:
///
/// `(S·(1 + 1e−9) − |h₂(θ)|) / S` with `S` the sampled boundary supremum of
/// `|h₂|`, or `−|h₂(θ)|` when `S` vanishes. `x⁰, x¹ ∈ ℂ^{n−1}`.
pub fn three_lines_slack<T: Real>(
    couple: &InterpolationCouple<T>,
    x0: &[Complex<T>],
    x1: &[Complex<T>],
    t0: T,
    t_grid: &[T],
) -> Result<T> {
    let m = x0.len();
    if m == 0 || x1.len() != m {
        return Err(Error::Usage("three-lines check needs two points of equal length ≥ 1".into()));
    }
    let t1 = T::one() - t0;
    let mix = combine(x0, x1, t0);
    let order = couple.jet_order_for(m);
    let (g0, g1, gm) = (
        couple.g_jet(x0, order)?.jet,
        couple.g_jet(x1, order)?.jet,
        couple.g_jet(&mix, order)?.jet,
    );
    let h2_theta = (g0.coeff(m - 1).scale(t0)
        + g1.coeff(m - 1).scale(t1)
        - gm.coeff(m - 1))
    .norm();
    let theta = Complex::new(couple.theta(), T::zero());
    let (f0, f1, fm) = (couple.g_family(x0)?, couple.g_family(x1)?, couple.g_family(&mix)?);
    let mut sup = T::zero();
    for side in [0u8, 1] {
        for &t in t_grid {
            let h1 = f0.boundary_eval(side, t)?.scale(t0) + f1.boundary_eval(side, t)?.scale(t1)
                - fm.boundary_eval(side, t)?;
            let z = Complex::new(T::lit(side as f64), t);
            let dist = (z - theta).norm().powi(m as i32);
            sup = sup.max(h1.norm() / dist);
        }
    }
    if sup < T::denominator_floor() {
        return Ok(-h2_theta);
    }
    Ok((sup * (T::one() + T::lit(THREE_LINES_SLACK)) - h2_theta) / sup)
}

/// Minimum three-lines slack for order `n ≥ 2`; witness `points = [x⁰, x¹]`, `params = [t₀]`.
pub fn check_three_lines<T: Real>(
    couple: &InterpolationCouple<T>,
    cfg: &TrialConfig<T>,
    t_grid: &[T],
) -> Result<ConstantEstimate<T>> {
    let n = cfg.n;
    if n < 2 {
        return Err(Error::Usage("the three-lines check needs n ≥ 2".into()));
    }
    let samples = run_trials(cfg, |rng| {
        let x0 = cfg.random_point(rng, n - 1);
        let x1 = cfg.random_point(rng, n - 1);
        let t0 = T::lit(rng.gen_range(0.0..=1.0));
        let slack = three_lines_slack(couple, &x0, &x1, t0, t_grid)?;
        Ok(Some((slack, points(vec![x0, x1], vec![t0]))))
    })?;
    inf(&format!("three_lines_slack[n={n}]"), samples)
}

// ---------------------------------------------------------------------------
// Quasinorm equivalence and coordinate functionals

/// `rochberg_quasinorm(v) / fenchel_orlicz_norm(v)`.
pub fn equivalence_ratio<T: Real>(
    couple: &InterpolationCouple<T>,
    n: usize,
    v: &BlockVector<T>,
) -> Result<Option<T>> {
    let f = fenchel_orlicz_norm(couple, n, v)?;
    if f < T::denominator_floor() {
        return Ok(None);
    }
    Ok(Some(rochberg_quasinorm(couple, n, v)? / f))
}

/// `(L̂, Û)`: extreme ratios of the two quasinorms; witness `vectors = [v]`.
pub fn estimate_equivalence_constants<T: Real>(
    couple: &InterpolationCouple<T>,
    cfg: &TrialConfig<T>,
) -> Result<(ConstantEstimate<T>, ConstantEstimate<T>)> {
    let n = cfg.n;
    let samples = run_trials(cfg, |rng| {
        let v = cfg.random_block_vector(rng, n)?;
        Ok(equivalence_ratio(couple, n, &v)?.map(|r| {
            (
                r,
                Witness::Blocks {
                    vectors: vec![v],
                    params: vec![],
                },
            )
        }))
    })?;
    Ok((
        inf(&format!("equivalence_lower[n={n}]"), samples.clone())?,
        sup(&format!("equivalence_upper[n={n}]"), samples)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivedNorm {
    Fenchel,
    Rochberg,
}

impl DerivedNorm {
    pub fn eval<T: Real>(
        self,
        couple: &InterpolationCouple<T>,
        n: usize,
        v: &BlockVector<T>,
    ) -> Result<T> {
        match self {
            Self::Fenchel => fenchel_orlicz_norm(couple, n, v),
            Self::Rochberg => rochberg_quasinorm(couple, n, v),
        }
    }
}

/// Largest entry modulus of `v / ‖v‖`.
pub fn coordinate_ratio<T: Real>(
    couple: &InterpolationCouple<T>,
    norm: DerivedNorm,
    n: usize,
    v: &BlockVector<T>,
) -> Result<Option<T>> {
    let q = norm.eval(couple, n, v)?;
    if q < T::denominator_floor() {
        return Ok(None);
    }
    Ok(Some(v.max_modulus() / q))
}

/// Coordinate-functional bounds on the unit spheres of `(fenchel, rochberg)`;
/// witness `vectors = [v]`.
pub fn check_coordinate_bound<T: Real>(
    couple: &InterpolationCouple<T>,
    cfg: &TrialConfig<T>,
) -> Result<(ConstantEstimate<T>, ConstantEstimate<T>)> {
    let n = cfg.n;
    let run = |norm: DerivedNorm| {
        run_trials(cfg, |rng| {
            let v = cfg.random_block_vector(rng, n)?;
            Ok(coordinate_ratio(couple, norm, n, &v)?.map(|r| {
                (
                    r,
                    Witness::Blocks {
                        vectors: vec![v],
                        params: vec![],
                    },
                )
            }))
        })
    };
    Ok((
        sup(&format!("coordinate_bound_fenchel[n={n}]"), run(DerivedNorm::Fenchel)?)?,
        sup(&format!("coordinate_bound_rochberg[n={n}]"), run(DerivedNorm::Rochberg)?)?,
    ))
}

// ---------------------------------------------------------------------------
// Real versus complex

/// `φ_{θ,n}(x) / φ_{θ,n}(x + iy)` for real `x`, `y`.
pub fn real_complex_ratio<T: Real>(
    couple: &InterpolationCouple<T>,
    x: &[T],
    y: &[T],
) -> Result<Option<T>> {
    let full: Vec<Complex<T>> = x.iter().zip(y).map(|(a, b)| Complex::new(*a, *b)).collect();
    let denom = couple.phi_theta_n(&full)?;
    if denom < T::denominator_floor() {
        return Ok(None);
    }
    let real: Vec<Complex<T>> = x.iter().map(|a| Complex::new(*a, T::zero())).collect();
    Ok(Some(couple.phi_theta_n(&real)? / denom))
}

/// Empirical `a_n`; witness `points = [x, y]` stored as complex numbers with zero imaginary part.
pub fn estimate_real_complex_constant<T: Real>(
    couple: &InterpolationCouple<T>,
    cfg: &TrialConfig<T>,
) -> Result<ConstantEstimate<T>> {
    let n = cfg.n;
    let samples = run_trials(cfg, |rng| {
        let x: Vec<T> = (0..n).map(|_| cfg.random_real(rng)).collect();
        let y: Vec<T> = (0..n).map(|_| cfg.random_real(rng)).collect();
        let as_c = |v: &[T]| v.iter().map(|a| Complex::new(*a, T::zero())).collect();
        Ok(real_complex_ratio(couple, &x, &y)?.map(|r| (r, points(vec![as_c(&x), as_c(&y)], vec![]))))
    })?;
    sup(&format!("real_complex[n={n}]"), samples)
}

// ---------------------------------------------------------------------------
// Closed-form oracles

/// `(Σ |x_k|^p)^{1/p}`, computed with the maximum factored out.
pub fn lp_norm<T: Real>(x: &[Complex<T>], p: T) -> T {
    let max = x.iter().fold(T::zero(), |m, z| m.max(z.norm()));
    if max == T::zero() {
        return T::zero();
    }
    let sum = x
        .iter()
        .fold(T::zero(), |acc, z| acc + (z.norm() / max).powf(p));
    max * sum.powf(p.recip())
}

/// Relative sup-norm deviation of `Ω¹` from `σ(1/θ)·x_k·ln(|x_k|/‖x‖_{1/θ})` on the `(ℓ∞, ℓ₁)` couple.
pub fn kalton_peck_deviation<T: Real>(
    couple: &InterpolationCouple<T>,
    v: &BlockVector<T>,
) -> Result<T> {
    let theta = couple.theta();
    let x: Vec<Complex<T>> = v.component(0).into_values().collect();
    let norm = lp_norm(&x, theta.recip());
    let omega = couple.omega_n(1, v)?;
    let sigma = T::lit(OMEGA_SIGN as f64);
    let (mut diff, mut scale) = (T::zero(), T::zero());
    for ((_, o), xk) in omega.iter().zip(&x) {
        let closed = if xk.is_zero() {
            Complex::zero()
        } else {
            xk.scale(sigma / theta * (xk.norm() / norm).ln())
        };
        diff = diff.max((*o - closed).norm());
        scale = scale.max(closed.norm());
    }
    if scale == T::zero() {
        return Ok(diff);
    }
    Ok(diff / scale)
}

/// Compares `Ω¹` on the `(ℓ∞, ℓ₁)` couple at `θ` against the closed form; witness `vectors = [x]`.
pub fn kalton_peck_oracle<T: Real>(theta: T, cfg: &TrialConfig<T>) -> Result<ConstantEstimate<T>> {
    let couple = InterpolationCouple::kalton_peck(theta)?;
    let samples = run_trials(cfg, |rng| {
        let v = cfg.random_block_vector(rng, 1)?;
        let d = kalton_peck_deviation(&couple, &v)?;
        Ok(Some((
            d,
            Witness::Blocks {
                vectors: vec![v],
                params: vec![],
            },
        )))
    })?;
    sup("kalton_peck_deviation", samples)
}

/// Exponent `p_θ` with `1/p_θ = (1−θ)/p₀ + θ/p₁`; `p0 = None` is the ess-sup side.
pub fn interpolated_exponent<T: Real>(p0: Option<T>, p1: T, theta: T) -> T {
    let inv0 = p0.map_or(T::zero(), |p| p.recip());
    ((T::one() - theta) * inv0 + theta / p1).recip()
}

/// Builds the power couple `(ℓ_{p₀}, ℓ_{p₁})` (`p0 = None` for `ℓ∞`).
pub fn power_couple<T: Real>(p0: Option<T>, p1: T, theta: T) -> Result<InterpolationCouple<T>> {
    let phi0 = match p0 {
        Some(p) => OrliczFunction::power(p)?,
        None => OrliczFunction::ess_sup(),
    };
    InterpolationCouple::new(phi0, OrliczFunction::power(p1)?, theta)
}

/// Grid used by [`power_couple_oracle`] to compare `φ_θ` with `t^{p_θ}`.
pub fn power_oracle_grid<T: Real>() -> Vec<T> {
    log_grid(T::lit(1e-3), T::lit(1e3), 50)
}

/// Checks `φ_θ = t^{p_θ}` on [`power_oracle_grid`] and the order-one norms
/// against the closed-form `ℓ_{p_θ}` norm on random vectors. Witness is
/// `Scalars [t]` for a grid deviation or `Blocks [v]` for a vector one.
pub fn power_couple_oracle<T: Real>(
    p0: Option<T>,
    p1: T,
    theta: T,
    cfg: &TrialConfig<T>,
) -> Result<ConstantEstimate<T>> {
    let couple = power_couple(p0, p1, theta)?;
    let p = interpolated_exponent(p0, p1, theta);
    let mut best = (T::neg_infinity(), Witness::None);
    for t in power_oracle_grid::<T>() {
        let want = t.powf(p);
        let d = ((couple.phi_theta(t)? - want) / want).abs();
        if d > best.0 {
            best = (d, Witness::Scalars { values: vec![t] });
        }
    }
    let samples = run_trials(cfg, |rng| {
        let v = cfg.random_block_vector(rng, 1)?;
        let x: Vec<Complex<T>> = v.component(0).into_values().collect();
        let want = lp_norm(&x, p);
        if want < T::denominator_floor() {
            return Ok(None);
        }
        let got = fenchel_orlicz_norm(&couple, 1, &v)?;
        Ok(Some((
            ((got - want) / want).abs(),
            Witness::Blocks {
                vectors: vec![v],
                params: vec![],
            },
        )))
    })?;
    let vectors = sup("power_couple_deviation", samples)?;
    let (value, witness, skipped) = if vectors.value > best.0 {
        (vectors.value, vectors.witness, vectors.skipped)
    } else {
        (best.0, best.1, vectors.skipped)
    };
    Ok(ConstantEstimate::new("power_couple_deviation", value, witness, cfg.trials).with_skipped(skipped))
}
