//! The interpolated Orlicz function `φ_θ`, the scalar analytic families `g_x`,
//! the quasi-Young functions `φ_{θ,n}` and the quasilinear maps `Ω_θ^n`.
//!
//! Conventions:
//!
//! * Vectors in `ℂ^m` and blocks are written highest component first,
//!   `(x_{m−1}, …, x_0)`, so `x[0]` is `x_{m−1}`.
//! * The correction term added for an `m`-component vector carries `φ^{m−1}`,
//!   where `φ` is the rotated conformal map, and is divided by
//!   `k_m = m!·φ'(θ)^{m−1}`. This is the normalization that makes the
//!   `(z−θ)^{m−1}` coefficient equal `x_{m−1}`.
//! * Numerically each level is formed as `ψ^{m−1}·g_{m!d}/m!` with
//!   `ψ = φ/φ'(θ)` and `d = x_{m−1} − ĝ_prefix[m−1]`, and levels are summed
//!   with compensation. The prefix coefficient can exceed `x_{m−1}` by many
//!   orders of magnitude; this keeps the prescribed coefficient accurate
//!   relative to `x_{m−1}` rather than to the prefix.
//! * `Ω¹` is the literal first Taylor coefficient of `B¹`, so
//!   `Ω¹(x)_k = x_k · ln(φ₁⁻¹(s_k) / φ₀⁻¹(s_k))` with `s_k = φ_θ(|x_k|/‖x‖)`.
//!   For `(ℓ∞, ℓ₁)` this is `+(1/θ)·x_k·ln(|x_k|/‖x‖_{1/θ})`; see
//!   [`OMEGA_SIGN`].

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::blocks::{BlockVector, Sequence};
use crate::error::{Error, Result};
use crate::orlicz::OrliczFunction;
use crate::scalar::Real;
use crate::solve;
use crate::taylor::{log_ratio_jet, ConformalMap, Jet};

/// Largest jet order a couple can produce.
pub const MAX_JET_ORDER: usize = 24;

/// Sign `σ` in `Ω¹(x)_k = σ·(1/θ)·x_k·ln(|x_k|/‖x‖_{1/θ})` for the `(ℓ∞, ℓ₁)` couple.
pub const OMEGA_SIGN: i8 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationCouple<T: Real> {
    phi0: OrliczFunction<T>,
    phi1: OrliczFunction<T>,
    theta: T,
    conformal: ConformalMap<T>,
    /// `φ/φ'(θ)` at order [`MAX_JET_ORDER`], leading coefficients exactly `0, 1`.
    psi_jet: Jet<T>,
    jet_order: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
struct ScalarLevel<T> {
    sign: Complex<T>,
    ln_a: T,
    ln_b: T,
    inv_fact: T,
}

/// `g_x` ready for pointwise evaluation:
/// `Σ_m ψ(z)^{m−1}·g_{m!d_m}(z)/m!` with `ψ = φ/φ'(θ)` and
/// `g_w(z) = φ₀⁻¹(s)^{1−z} φ₁⁻¹(s)^z sgn(w)`, `s = φ_θ(|w|)`.
#[derive(Debug, Clone, PartialEq)]
pub struct GFamily<T: Real> {
    conformal: ConformalMap<T>,
    levels: Vec<Option<ScalarLevel<T>>>,
}

impl<T: Real> GFamily<T> {
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let psi = self.conformal.eval(z).unscale(self.conformal.derivative_at_theta());
        let one = Complex::<T>::one();
        let mut psi_pow = one;
        let mut value = Complex::zero();
        for (i, level) in self.levels.iter().enumerate() {
            if i > 0 {
                psi_pow = psi_pow * psi;
            }
            if let Some(l) = level {
                let exponent = (one - z).scale(l.ln_a) + z.scale(l.ln_b);
                value = value + psi_pow * l.sign * exponent.exp().scale(l.inv_fact);
            }
        }
        value
    }

    /// `g_x(side + i·t)`.
    pub fn boundary_eval(&self, side: u8, t: T) -> Result<Complex<T>> {
        if side > 1 {
            return Err(Error::Usage(format!("side must be 0 or 1, got {side}")));
        }
        Ok(self.eval(Complex::new(T::lit(side as f64), t)))
    }
}

/// Jet of `g_x` at `θ` for a vector `x ∈ ℂ^m`.
#[derive(Debug, Clone, PartialEq)]
pub struct GCoefficients<T> {
    pub m: usize,
    /// The input, highest component first.
    pub x: Vec<Complex<T>>,
    pub jet: Jet<T>,
}

fn sgn<T: Real>(z: Complex<T>) -> Complex<T> {
    if z.is_zero() {
        Complex::zero()
    } else {
        z / z.norm()
    }
}

fn ascending<T: Copy>(x: &[T]) -> Vec<T> {
    x.iter().rev().copied().collect()
}

fn normalized_conformal_jet<T: Real>(conformal: &ConformalMap<T>) -> Jet<T> {
    let inv = conformal.derivative_at_theta().recip();
    let mut coeffs: Vec<Complex<T>> = conformal
        .jet(MAX_JET_ORDER)
        .coeffs()
        .iter()
        .map(|c| c.scale(inv))
        .collect();
    coeffs[0] = Complex::zero();
    coeffs[1] = Complex::one();
    Jet::new(conformal.theta(), coeffs).expect("finite conformal coefficients")
}

/// Neumaier-compensated sum as an unevaluated pair `(hi, lo)`, `hi = fl(hi + lo)`.
fn compensated_sum<T: Real>(values: impl Iterator<Item = T>) -> (T, T) {
    let (mut sum, mut comp) = (T::zero(), T::zero());
    for v in values {
        let t = sum + v;
        comp = comp
            + if sum.abs() >= v.abs() {
                (sum - t) + v
            } else {
                (v - t) + sum
            };
        sum = t;
    }
    let hi = sum + comp;
    (hi, comp - (hi - sum))
}

/// Level contributions of a recursion, summed coefficientwise with compensation.
struct Levels<T: Real> {
    center: T,
    order: usize,
    terms: Vec<Jet<T>>,
}

impl<T: Real> Levels<T> {
    fn new(center: T, order: usize) -> Self {
        Self {
            center,
            order,
            terms: Vec::new(),
        }
    }

    fn push(&mut self, jet: Jet<T>) {
        self.terms.push(jet);
    }

    /// `x − Σ terms[j]` as a `(hi, lo)` pair, with `x` entering the compensated sum.
    fn residual(&self, x: Complex<T>, j: usize) -> (Complex<T>, Complex<T>) {
        let (rh, rl) = compensated_sum(std::iter::once(x.re).chain(self.terms.iter().map(|t| -t.coeff(j).re)));
        let (ih, il) = compensated_sum(std::iter::once(x.im).chain(self.terms.iter().map(|t| -t.coeff(j).im)));
        (Complex::new(rh, ih), Complex::new(rl, il))
    }

    fn coeff(&self, j: usize) -> Complex<T> {
        -self.residual(Complex::zero(), j).0
    }

    fn into_jet(self) -> Jet<T> {
        let coeffs = (0..=self.order).map(|j| self.coeff(j)).collect();
        Jet::new(self.center, coeffs).expect("finite level sums")
    }
}

impl<T: Real> InterpolationCouple<T> {
    /// `phi0` may be the ess-sup side; `phi1` must be nondegenerate.
    pub fn new(phi0: OrliczFunction<T>, phi1: OrliczFunction<T>, theta: T) -> Result<Self> {
        if !phi1.is_nondegenerate() {
            return Err(Error::Domain("φ₁ must be nondegenerate".into()));
        }
        if !phi0.is_nondegenerate() && !phi0.is_ess_sup() {
            return Err(Error::Domain(
                "φ₀ must be nondegenerate or the ess-sup side".into(),
            ));
        }
        let conformal = ConformalMap::new(theta)?;
        Ok(Self {
            phi0,
            phi1,
            theta,
            psi_jet: normalized_conformal_jet(&conformal),
            conformal,
            jet_order: None,
        })
    }

    /// The `(ℓ∞, ℓ₁)` couple, whose interpolation space at `θ` is `ℓ_{1/θ}`.
    pub fn kalton_peck(theta: T) -> Result<Self> {
        Self::new(OrliczFunction::ess_sup(), OrliczFunction::power(T::one())?, theta)
    }

    /// Fixes the jet order used by the derived operations (raised to the
    /// minimum an operation needs when smaller).
    pub fn with_jet_order(mut self, order: usize) -> Result<Self> {
        if order > MAX_JET_ORDER {
            return Err(Error::Usage(format!(
                "jet order {order} exceeds the maximum {MAX_JET_ORDER}"
            )));
        }
        self.jet_order = Some(order);
        Ok(self)
    }

    pub fn phi0(&self) -> &OrliczFunction<T> {
        &self.phi0
    }

    pub fn phi1(&self) -> &OrliczFunction<T> {
        &self.phi1
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn conformal(&self) -> &ConformalMap<T> {
        &self.conformal
    }

    /// Jet order used for derived order `n`: the configured order, or `n + 2`,
    /// but never below `n`.
    pub fn jet_order_for(&self, n: usize) -> usize {
        self.jet_order.unwrap_or(n + 2).max(n)
    }

    fn check_order(&self, order: usize) -> Result<()> {
        if order > MAX_JET_ORDER {
            return Err(Error::Usage(format!(
                "jet order {order} exceeds the maximum {MAX_JET_ORDER}"
            )));
        }
        Ok(())
    }

    /// `φ₀⁻¹(s)` for `side = 0`, `φ₁⁻¹(s)` for `side = 1`.
    pub fn endpoint_inverse(&self, side: u8, s: T) -> Result<T> {
        match side {
            0 => self.phi0.inverse(s),
            1 => self.phi1.inverse(s),
            _ => Err(Error::Usage(format!("side must be 0 or 1, got {side}"))),
        }
    }

    /// `φ_θ⁻¹(s) = φ₀⁻¹(s)^{1−θ} · φ₁⁻¹(s)^θ`.
    pub fn phi_theta_inverse(&self, s: T) -> Result<T> {
        let a = self.phi0.inverse(s)?;
        let b = self.phi1.inverse(s)?;
        Ok(a.powf(T::one() - self.theta) * b.powf(self.theta))
    }

    /// `φ_θ(t)`, the root of `φ_θ⁻¹(s) = t`.
    pub fn phi_theta(&self, t: T) -> Result<T> {
        if !(t >= T::zero()) {
            return Err(Error::Domain(format!("φ_θ evaluated at {t}")));
        }
        if t == T::zero() {
            return Ok(T::zero());
        }
        solve::invert_increasing(|s| self.phi_theta_inverse(s), t, t, "φ_θ")
    }

    /// Luxemburg norm of a finite sequence in `ℓ_{φ_θ}`.
    pub fn phi_theta_norm(&self, x: &[Complex<T>]) -> Result<T> {
        let moduli: Vec<T> = x.iter().map(|z| z.norm()).filter(|v| *v > T::zero()).collect();
        let max = moduli.iter().fold(T::zero(), |m, &v| m.max(v));
        if max == T::zero() {
            return Ok(T::zero());
        }
        let guess = max / self.phi_theta_inverse(T::one())?;
        solve::luxemburg_infimum(
            |rho| {
                moduli
                    .iter()
                    .try_fold(T::zero(), |acc, &v| Ok(acc + self.phi_theta(v / rho)?))
            },
            guess,
            "ℓ_φθ norm",
        )
    }

    /// `φ_θ`-norm of a sparse sequence.
    pub fn sequence_norm(&self, x: &Sequence<T>) -> Result<T> {
        let v: Vec<Complex<T>> = x.values().copied().collect();
        self.phi_theta_norm(&v)
    }

    /// `k_m = m!·φ'(θ)^{m−1}`.
    pub fn k_constant(&self, m: usize) -> Result<T> {
        if m == 0 {
            return Err(Error::Usage("k_m is defined for m ≥ 1".into()));
        }
        Ok(T::factorial(m) * self.conformal.derivative_at_theta().powi(m as i32 - 1))
    }

    /// `ln(φ₁⁻¹(s)/φ₀⁻¹(s))` for `s > 0`.
    fn log_ratio(&self, s: T) -> Result<T> {
        if !(s > T::zero()) {
            return Err(Error::Domain(format!(
                "log ratio needs a positive modular value, got {s} (underflow?)"
            )));
        }
        let a = self.phi0.inverse(s)?;
        let b = self.phi1.inverse(s)?;
        Ok((b / a).ln())
    }

    /// Jet of `g_w/scale` for `w = scale·(hi + lo)`, written as
    /// `(hi + lo) · exp(ln(b/a)·(z−θ))` with `a = φ₀⁻¹(s)`, `b = φ₁⁻¹(s)`,
    /// `s = φ_θ(|w|)`. Returned as two jets whose constant terms are exactly
    /// `hi` and `lo`; `lo` carries the rounding residue of `hi`.
    fn scaled_g_jets(&self, (hi, lo): (Complex<T>, Complex<T>), scale: T, order: usize) -> Result<[Jet<T>; 2]> {
        if hi.is_zero() {
            return Ok([Jet::zero(self.theta, order), Jet::zero(self.theta, order)]);
        }
        let l = self.log_ratio(self.phi_theta(hi.norm() * scale)?)?;
        Ok([
            log_ratio_jet(hi, l, self.theta, order),
            log_ratio_jet(lo, l, self.theta, order),
        ])
    }

    fn psi_truncated(&self, order: usize) -> Jet<T> {
        Jet::new(self.theta, self.psi_jet.coeffs()[..=order].to_vec()).expect("finite")
    }

    /// Runs the `g_x` recursion on `x` (lowest component first) and returns the
    /// residuals `d_m = x_{m−1} − ĝ_prefix[m−1]` (`d_1 = x_0`) with the level
    /// sum. With `full` the last level is included, otherwise only the levels
    /// the residuals need.
    fn g_levels(&self, x: &[Complex<T>], order: usize, full: bool) -> Result<(Vec<Complex<T>>, Levels<T>)> {
        self.check_order(order)?;
        if x.is_empty() {
            return Err(Error::Usage("g_x needs at least one component".into()));
        }
        if order + 1 < x.len() {
            return Err(Error::Usage(format!(
                "jet order {order} too small for {} components",
                x.len()
            )));
        }
        let psi = self.psi_truncated(order);
        let mut psi_pow = Jet::constant(self.theta, order, Complex::one());
        let mut levels = Levels::new(self.theta, order);
        let mut residuals = Vec::with_capacity(x.len());
        for m in 1..=x.len() {
            let d = if m == 1 {
                (x[0], Complex::zero())
            } else {
                levels.residual(x[m - 1], m - 1)
            };
            residuals.push(d.0);
            if m < x.len() || full {
                if m > 1 {
                    psi_pow = psi_pow.try_mul(&psi)?;
                }
                for jet in self.scaled_g_jets(d, T::factorial(m), order)? {
                    levels.push(psi_pow.try_mul(&jet)?);
                }
            }
        }
        Ok((residuals, levels))
    }

    /// Recursion residuals `(d_n, …, d_1)` of `x = (x_{n−1}, …, x_0)`:
    /// `d_1 = x_0` and `d_m = x_{m−1} − ĝ_{(x_{m−2}, …, x_0)}[m−1; θ]`, so that
    /// `φ_{θ,n}(x) = Σ_m φ_θ(|d_m|)`.
    pub fn residuals(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let asc = ascending(x);
        let (residuals, _) = self.g_levels(&asc, asc.len().max(1), false)?;
        Ok(ascending(&residuals))
    }

    /// Inverse of [`residuals`](Self::residuals): the point whose recursion
    /// residuals are `d = (d_n, …, d_1)`.
    pub fn point_from_residuals(&self, d: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let d = ascending(d);
        let n = d.len();
        if n == 0 {
            return Err(Error::Usage("need at least one residual".into()));
        }
        let order = n;
        self.check_order(order)?;
        let psi = self.psi_truncated(order);
        let mut psi_pow = Jet::constant(self.theta, order, Complex::one());
        let mut levels = Levels::new(self.theta, order);
        let mut x = Vec::with_capacity(n);
        for m in 1..=n {
            let xm = if m == 1 { d[0] } else { levels.coeff(m - 1) + d[m - 1] };
            x.push(xm);
            if m < n {
                let r = if m == 1 {
                    (xm, Complex::zero())
                } else {
                    levels.residual(xm, m - 1)
                };
                if m > 1 {
                    psi_pow = psi_pow.try_mul(&psi)?;
                }
                for jet in self.scaled_g_jets(r, T::factorial(m), order)? {
                    levels.push(psi_pow.try_mul(&jet)?);
                }
            }
        }
        Ok(ascending(&x))
    }

    /// `g_x` jet for `x` given lowest component first.
    fn g_jet_ascending(&self, x: &[Complex<T>], order: usize) -> Result<Jet<T>> {
        Ok(self.g_levels(x, order, true)?.1.into_jet())
    }

    /// Jet at `θ` of `g_x`, `x = (x_{m−1}, …, x_0)`; needs `order ≥ m`.
    pub fn g_jet(&self, x: &[Complex<T>], order: usize) -> Result<GCoefficients<T>> {
        if order < x.len() {
            return Err(Error::Usage(format!(
                "jet order {order} below the vector length {}",
                x.len()
            )));
        }
        Ok(GCoefficients {
            m: x.len(),
            x: x.to_vec(),
            jet: self.g_jet_ascending(&ascending(x), order)?,
        })
    }

    /// `g_x` prepared for pointwise evaluation anywhere in the strip. The only
    /// jet data used are the Taylor coefficients `ĝ_prefix[m−1; θ]` the
    /// recursion subtracts.
    pub fn g_family(&self, x: &[Complex<T>]) -> Result<GFamily<T>> {
        let asc = ascending(x);
        let (residuals, _) = self.g_levels(&asc, asc.len().max(1), false)?;
        let levels = residuals
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                let fact = T::factorial(i + 1);
                if d.is_zero() {
                    return Ok(None);
                }
                let s = self.phi_theta(d.norm() * fact)?;
                let (a, b) = (self.phi0.inverse(s)?, self.phi1.inverse(s)?);
                Ok(Some(ScalarLevel {
                    sign: sgn(d),
                    ln_a: a.ln(),
                    ln_b: b.ln(),
                    inv_fact: fact.recip(),
                }))
            })
            .collect::<Result<_>>()?;
        Ok(GFamily {
            conformal: self.conformal,
            levels,
        })
    }

    /// `g_x(z)`; see [`g_family`](Self::g_family) for repeated evaluation.
    pub fn g_eval(&self, x: &[Complex<T>], z: Complex<T>) -> Result<Complex<T>> {
        Ok(self.g_family(x)?.eval(z))
    }

    /// `g_x(side + i·t)`.
    pub fn g_boundary_eval(&self, x: &[Complex<T>], side: u8, t: T) -> Result<Complex<T>> {
        self.g_family(x)?.boundary_eval(side, t)
    }

    /// `φ_{θ,n}(x_{n−1}, …, x_0) = Σ_m φ_θ(|d_m|)` over the recursion residuals.
    pub fn phi_theta_n(&self, x: &[Complex<T>]) -> Result<T> {
        let asc = ascending(x);
        if asc.is_empty() {
            return Err(Error::Usage("φ_{θ,n} needs n ≥ 1".into()));
        }
        if asc.len() == 1 {
            return self.phi_theta(asc[0].norm());
        }
        let (residuals, _) = self.g_levels(&asc, asc.len(), false)?;
        residuals
            .iter()
            .try_fold(T::zero(), |acc, d| Ok(acc + self.phi_theta(d.norm())?))
    }

    /// Coordinate jets of `B¹_θ(x)` for a dense sequence `x`.
    ///
    /// Coordinate `k` is `x_k · exp(L_k (z−θ))` with
    /// `L_k = ln(φ₁⁻¹(s_k)/φ₀⁻¹(s_k))`, `s_k = φ_θ(|x_k|/‖x‖_{φ_θ})`, which is
    /// the displayed `‖x‖·φ₀⁻¹(s_k)^{1−z}φ₁⁻¹(s_k)^z sgn(x_k)` expanded at `θ`.
    pub fn b1_jets(&self, x: &[Complex<T>], order: usize) -> Result<Vec<Jet<T>>> {
        self.check_order(order)?;
        let norm = self.phi_theta_norm(x)?;
        x.iter()
            .map(|&xk| {
                if xk.is_zero() {
                    return Ok(Jet::zero(self.theta, order));
                }
                let l = self.log_ratio(self.phi_theta(xk.norm() / norm)?)?;
                Ok(log_ratio_jet(xk, l, self.theta, order))
            })
            .collect()
    }

    /// Jet of coordinate `k` of `B¹_θ(x)`.
    pub fn b1_jet(&self, x: &[Complex<T>], k: usize, order: usize) -> Result<Jet<T>> {
        if k >= x.len() {
            return Ok(Jet::zero(self.theta, order));
        }
        Ok(self.b1_jets(x, order)?.swap_remove(k))
    }

    /// Coordinate jets of `B_θ^n` for dense components given lowest first.
    ///
    /// `B¹` is homogeneous, so level `m` is `ψ^{m−1}·B¹(d)` with
    /// `d = x_{m−1} − B^{m−1}[m−1]`.
    pub fn bn_jets_ascending(&self, comps: &[Vec<Complex<T>>], order: usize) -> Result<Vec<Jet<T>>> {
        if comps.is_empty() {
            return Err(Error::Usage("B^n needs n ≥ 1".into()));
        }
        self.check_order(order)?;
        if order + 1 < comps.len() {
            return Err(Error::Usage(format!(
                "jet order {order} too small for n = {}",
                comps.len()
            )));
        }
        let len = comps[0].len();
        if comps.iter().any(|c| c.len() != len) {
            return Err(Error::Usage("components must share one support".into()));
        }
        let psi = self.psi_truncated(order);
        let mut psi_pow = Jet::constant(self.theta, order, Complex::one());
        let mut levels: Vec<Levels<T>> = (0..len).map(|_| Levels::new(self.theta, order)).collect();
        for (m, comp) in comps.iter().enumerate().map(|(i, c)| (i + 1, c)) {
            let d: Vec<Complex<T>> = if m == 1 {
                comp.clone()
            } else {
                psi_pow = psi_pow.try_mul(&psi)?;
                comp.iter().zip(&levels).map(|(x, l)| l.residual(*x, m - 1).0).collect()
            };
            for (lk, b1k) in levels.iter_mut().zip(self.b1_jets(&d, order)?) {
                lk.push(if m == 1 { b1k } else { psi_pow.try_mul(&b1k)? });
            }
        }
        Ok(levels.into_iter().map(Levels::into_jet).collect())
    }

    /// `Ω_θ^n` on dense components given lowest first (`comps.len() == n`).
    pub fn omega_ascending(&self, comps: &[Vec<Complex<T>>]) -> Result<Vec<Complex<T>>> {
        let n = comps.len();
        let order = self.jet_order_for(n);
        Ok(self
            .bn_jets_ascending(comps, order)?
            .iter()
            .map(|j| j.coeff(n))
            .collect())
    }

    /// `Ω_θ^n(x)`, the `n`-th Taylor coefficient of `B_θ^n(x)`, on the support of `v`.
    pub fn omega_n(&self, n: usize, v: &BlockVector<T>) -> Result<Sequence<T>> {
        if n == 0 {
            return Err(Error::Usage("Ω^n is defined for n ≥ 1".into()));
        }
        if v.n() != n {
            return Err(Error::Usage(format!(
                "Ω^{n} applied to a vector with {} blocks",
                v.n()
            )));
        }
        if v.is_zero() {
            return Ok(Sequence::new());
        }
        let values = self.omega_ascending(&v.components_ascending())?;
        Ok(v.support().into_iter().zip(values).collect())
    }

    /// `Ψ(x_{n−2}, …, x_0)_k = ĝ_{(x_{n−2}(k), …, x_0(k))}[n−1; θ]`.
    pub fn psi_map(&self, n: usize, prefix: &BlockVector<T>) -> Result<Sequence<T>> {
        if n < 2 {
            return Err(Error::Usage("Ψ is defined for n ≥ 2".into()));
        }
        if prefix.n() != n - 1 {
            return Err(Error::Usage(format!(
                "Ψ for n = {n} needs {} blocks, got {}",
                n - 1,
                prefix.n()
            )));
        }
        let order = self.jet_order_for(n - 1).max(n - 1);
        prefix
            .entries()
            .iter()
            .map(|e| {
                let g = self.g_jet_ascending(&ascending(&e.block), order)?;
                Ok((e.k, g.coeff(n - 1)))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taylor::{cauchy_coefficient_oracle, default_oracle_radius, two_point_power_jet};
    use std::f64::consts::{E, LN_2, PI};

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    fn kp() -> InterpolationCouple<f64> {
        InterpolationCouple::kalton_peck(0.5).unwrap()
    }

    fn powers(p0: f64, p1: f64, theta: f64) -> InterpolationCouple<f64> {
        InterpolationCouple::new(
            OrliczFunction::power(p0).unwrap(),
            OrliczFunction::power(p1).unwrap(),
            theta,
        )
        .unwrap()
    }

    #[test]
    fn phi_theta_inverse_closed_forms() {
        let theta = 0.3;
        let k = InterpolationCouple::kalton_peck(theta).unwrap();
        for s in [0.01, 0.5, 2.0, 300.0] {
            assert!((k.phi_theta_inverse(s).unwrap() - f64::powf(s, theta)).abs() < 1e-13 * s.max(1.0));
        }
        assert_eq!(k.phi_theta_inverse(0.0).unwrap(), 0.0);
        let pc = powers(2.0, 4.0, 0.25);
        let exponent = 0.75 / 2.0 + 0.25 / 4.0;
        for s in [0.1, 1.0, 7.0] {
            assert!((pc.phi_theta_inverse(s).unwrap() - f64::powf(s, exponent)).abs() < 1e-14);
        }
    }

    #[test]
    fn phi_theta_examples() {
        assert!((kp().phi_theta(3.0).unwrap() - 9.0).abs() < 1e-13);
        assert_eq!(kp().phi_theta(0.0).unwrap(), 0.0);
        assert!((powers(1.0, 3.0, 0.5).phi_theta(4.0).unwrap() - 8.0).abs() < 1e-13);
        assert!(kp().phi_theta(-1.0).is_err());
    }

    #[test]
    fn couple_validation() {
        let degenerate =
            OrliczFunction::monotone_table(vec![(0.0, 0.0), (1.0, 0.0), (2.0, 1.0)]).unwrap();
        assert!(InterpolationCouple::new(
            OrliczFunction::power(1.0).unwrap(),
            degenerate.clone(),
            0.5
        )
        .is_err());
        assert!(
            InterpolationCouple::new(degenerate, OrliczFunction::power(1.0).unwrap(), 0.5).is_err()
        );
        assert!(InterpolationCouple::kalton_peck(1.0).is_err());
        assert!(InterpolationCouple::kalton_peck(0.5)
            .unwrap()
            .with_jet_order(MAX_JET_ORDER + 1)
            .is_err());
    }

    #[test]
    fn k_constants() {
        let k = kp();
        assert_eq!(k.k_constant(1).unwrap(), 1.0);
        assert!((k.k_constant(2).unwrap() - PI).abs() < 1e-14);
        assert!((k.k_constant(3).unwrap() - 6.0 * (PI / 2.0).powi(2)).abs() < 1e-13);
        assert!(k.k_constant(0).is_err());
    }

    #[test]
    fn g_jet_examples() {
        let k = kp();
        let g = k.g_jet(&[c(1.0, 0.0)], 3).unwrap();
        assert_eq!(g.jet.coeffs(), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);

        let x1 = c(0.7, -0.2);
        let g = k.g_jet(&[x1, c(0.0, 0.0)], 4).unwrap();
        assert!(g.jet.coeff(0).norm() == 0.0);
        assert!((g.jet.coeff(1) - x1).norm() < 1e-14);

        assert!(matches!(k.g_jet(&[x1, x1, x1], 2), Err(Error::Usage(_))));
    }

    #[test]
    fn g_jet_reproduces_prescribed_coefficients() {
        let couples = [kp(), powers(1.5, 3.0, 0.3)];
        let xs = [
            vec![c(2.0, 1.0), c(-0.5, 0.1), c(0.0, 0.0), c(3.0, -4.0)],
            vec![c(1e2, 0.0), c(0.0, 1e-2), c(-7.0, 0.5)],
            vec![c(0.3, 0.3), c(1.0, 0.0), c(0.25, -0.75), c(-2.0, 0.0), c(0.5, 0.5), c(1.0, 1.0)],
        ];
        for cp in &couples {
            for x in &xs {
                let g = cp.g_jet(x, x.len() + 1).unwrap();
                for (j, xj) in x.iter().rev().enumerate() {
                    let dev = (g.jet.coeff(j) - xj).norm() / xj.norm().max(1.0);
                    assert!(dev < 1e-10, "j={j} dev={dev}");
                }
            }
        }
    }

    #[test]
    fn g_jet_matches_contour_oracle() {
        for cp in [kp(), powers(2.0, 1.0, 0.4)] {
            let theta = cp.theta();
            let r = default_oracle_radius(theta);
            let x = vec![c(0.4, -1.2), c(0.0, 0.0), c(1.5, 0.5), c(-0.8, 0.3)];
            let g = cp.g_jet(&x, 6).unwrap();
            for j in 0..=6 {
                let oracle = cauchy_coefficient_oracle(
                    |z| cp.g_eval(&x, z).unwrap(),
                    theta,
                    j,
                    r,
                    256,
                )
                .unwrap();
                let want = g.jet.coeff(j);
                assert!(
                    (oracle - want).norm() <= 1e-7 * want.norm() + 1e-9,
                    "j={j}: oracle {oracle} jet {want}"
                );
            }
        }
    }

    #[test]
    fn g_boundary_examples() {
        let k = kp();
        // x = 1: φ_θ(1) = 1, a = b = 1.
        for t in [-3.0, 0.0, 2.5] {
            assert!((k.g_boundary_eval(&[c(1.0, 0.0)], 0, t).unwrap().norm() - 1.0).abs() < 1e-14);
        }
        assert_eq!(k.g_boundary_eval(&[c(0.0, 0.0)], 1, 0.3).unwrap(), c(0.0, 0.0));
        for t in [-5.0, 0.0, 1.0, 8.0] {
            assert!((k.g_boundary_eval(&[c(2.0, 0.0)], 1, t).unwrap().norm() - 4.0).abs() < 1e-12);
            assert!((k.g_boundary_eval(&[c(2.0, 0.0)], 0, t).unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn scalar_g_is_two_point_power() {
        let k = powers(1.0, 2.0, 0.5);
        let x = c(1.7, 0.0);
        let s = k.phi_theta(x.norm()).unwrap();
        let direct = two_point_power_jet(
            k.phi0().inverse(s).unwrap(),
            k.phi1().inverse(s).unwrap(),
            c(1.0, 0.0),
            0.5,
            4,
        )
        .unwrap();
        let g = k.g_jet(&[x], 4).unwrap();
        for j in 0..=4 {
            assert!((g.jet.coeff(j) - direct.coeff(j)).norm() < 1e-13);
        }
    }

    #[test]
    fn phi_theta_n_examples() {
        let k = kp();
        let x0 = c(0.6, 0.8);
        assert!((k.phi_theta_n(&[x0]).unwrap() - k.phi_theta(1.0).unwrap()).abs() < 1e-15);
        assert!((k.phi_theta_n(&[c(0.0, 0.0), c(1.0, 0.0)]).unwrap() - 1.0).abs() < 1e-13);
        let x1 = c(-1.5, 0.5);
        let v = k.phi_theta_n(&[x1, c(0.0, 0.0)]).unwrap();
        assert!((v - k.phi_theta(x1.norm()).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn phi_theta_2_kalton_peck_closed_form() {
        // φ_{1/2,2}(x₁, x₀) = |x₀|² + |x₁ − 2 x₀ ln|x₀||².
        let k = kp();
        for (x1, x0) in [(c(0.3, 0.1), c(2.0, 0.0)), (c(-1.0, 2.0), c(0.1, -0.4))] {
            let closed = x0.norm_sqr() + (x1 - x0 * (2.0 * x0.norm().ln())).norm_sqr();
            let v = k.phi_theta_n(&[x1, x0]).unwrap();
            assert!((v - closed).abs() < 1e-12 * closed, "{v} vs {closed}");
        }
    }

    #[test]
    fn b1_examples() {
        let k = kp();
        let e1 = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        let jets = k.b1_jets(&e1, 3).unwrap();
        assert!(jets[0].is_zero() && jets[2].is_zero());
        assert!((jets[1].coeff(0) - 1.0).norm() < 1e-15);
        assert!(jets[1].coeff(1).norm() < 1e-12);

        let x = [c(0.5, 1.0), c(-2.0, 0.0), c(0.0, 0.3)];
        let jets = k.b1_jets(&x, 2).unwrap();
        let v = BlockVector::from_components(&[x.to_vec()]).unwrap();
        let omega = k.omega_n(1, &v).unwrap();
        for (i, jet) in jets.iter().enumerate() {
            assert_eq!(jet.coeff(0), x[i]);
            assert_eq!(jet.coeff(1), omega[&i]);
        }
        let zero = k.b1_jets(&[c(0.0, 0.0); 2], 2).unwrap();
        assert!(zero.iter().all(Jet::is_zero));
    }

    #[test]
    fn omega1_kalton_peck_examples() {
        let k = kp();
        let e1 = BlockVector::single(1, vec![c(1.0, 0.0)]).unwrap();
        assert!(k.omega_n(1, &e1).unwrap()[&1].norm() < 1e-12);
        let x = BlockVector::from_components(&[vec![c(1.0, 0.0), c(1.0, 0.0)]]).unwrap();
        let om = k.omega_n(1, &x).unwrap();
        for v in om.values() {
            assert!((v - c(-LN_2, 0.0)).norm() < 1e-12);
        }
        assert!(matches!(k.omega_n(0, &x), Err(Error::Usage(_))));
        assert!(matches!(k.omega_n(2, &x), Err(Error::Usage(_))));
        assert!(k.omega_n(1, &BlockVector::zero(1)).unwrap().is_empty());
    }

    #[test]
    fn bn_reproduces_lower_coefficients() {
        let k = powers(1.0, 2.0, 0.6);
        let comps = vec![
            vec![c(1.0, 0.5), c(-0.3, 0.0), c(0.0, 0.0)],
            vec![c(0.2, 0.0), c(2.0, -1.0), c(0.5, 0.5)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(-4.0, 0.1)],
        ];
        let jets = k.bn_jets_ascending(&comps, 5).unwrap();
        for (i, jet) in jets.iter().enumerate() {
            for (j, comp) in comps.iter().enumerate() {
                assert!((jet.coeff(j) - comp[i]).norm() < 1e-10 * comp[i].norm().max(1.0));
            }
        }
    }

    #[test]
    fn psi_examples() {
        let k = kp();
        let prefix = BlockVector::single(0, vec![c(1.0, 0.0)]).unwrap();
        assert!(k.psi_map(2, &prefix).unwrap()[&0].norm() < 1e-13);
        assert!(k.psi_map(2, &BlockVector::zero(1)).unwrap().is_empty());
        let x0 = c(2.0, -1.0);
        let prefix = BlockVector::single(3, vec![x0]).unwrap();
        let psi = k.psi_map(2, &prefix).unwrap();
        let s = k.phi_theta(x0.norm()).unwrap();
        let want = x0 * (k.phi1().inverse(s).unwrap() / k.phi0().inverse(s).unwrap()).ln();
        assert!((psi[&3] - want).norm() < 1e-12);
        assert!(k.psi_map(1, &prefix).is_err());
    }

    #[test]
    fn generic_over_f32() {
        let k = InterpolationCouple::<f32>::kalton_peck(0.5).unwrap();
        assert!((k.phi_theta(3.0).unwrap() - 9.0).abs() < 1e-4);
        let x = [Complex::new(0.5f32, 0.0), Complex::new(1.0, 0.0)];
        let g = k.g_jet(&x, 3).unwrap();
        assert!((g.jet.coeff(1) - x[0]).norm() < 1e-4);
        assert!((E as f32).is_finite());
    }
}
