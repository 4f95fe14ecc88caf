use num_complex::Complex;

use super::jet::Jet;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Conformal map of the strip `{0 ≤ Re z ≤ 1}` onto the unit disc sending `θ` to 0,
///
/// `z ↦ μ · (e^{iπz} − e^{iπθ}) / (e^{iπz} − e^{−iπθ})`,
///
/// with the unimodular `μ` chosen so that the derivative at `θ` is real and
/// positive. With that choice the map is real on the real segment `(0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConformalMap<T> {
    theta: T,
    rotation: Complex<T>,
}

impl<T: Real> ConformalMap<T> {
    pub fn new(theta: T) -> Result<Self> {
        if !(theta > T::zero() && theta < T::one()) {
            return Err(Error::Domain(format!("θ must lie in (0, 1), got {theta}")));
        }
        let d = Self::unrotated_derivative(theta);
        Ok(Self {
            theta,
            rotation: Complex::new(d.norm(), T::zero()) / d,
        })
    }

    /// `χ'(θ) = iπ e^{iπθ} / (e^{iπθ} − e^{−iπθ})`.
    fn unrotated_derivative(theta: T) -> Complex<T> {
        let pi = T::PI();
        let w = Complex::from_polar(T::one(), pi * theta);
        Complex::new(T::zero(), pi) * w / (w - w.conj())
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn rotation(&self) -> Complex<T> {
        self.rotation
    }

    /// `φ'(θ) = π / (2 sin πθ)`, real and positive.
    pub fn derivative_at_theta(&self) -> T {
        Self::unrotated_derivative(self.theta).norm()
    }

    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let pi = T::PI();
        let e = (Complex::new(T::zero(), pi) * z).exp();
        let w = Complex::from_polar(T::one(), pi * self.theta);
        self.rotation * (e - w) / (e - w.conj())
    }

    /// Value at `side + i·t`, `side ∈ {0, 1}`.
    pub fn boundary_eval(&self, side: u8, t: T) -> Complex<T> {
        self.eval(Complex::new(T::lit(side as f64), t))
    }

    /// Jet of the rotated map at `θ`, built from the jet of `e^{iπz}` by
    /// truncated series division.
    pub fn jet(&self, order: usize) -> Jet<T> {
        let pi = T::PI();
        let w = Complex::from_polar(T::one(), pi * self.theta);
        let ipi = Complex::new(T::zero(), pi);
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = w;
        for j in 0..=order {
            if j > 0 {
                term = term * ipi / T::lit(j as f64);
            }
            coeffs.push(term);
        }
        let exp = Jet::new(self.theta, coeffs).expect("finite coefficients");
        let num = exp
            .try_sub(&Jet::constant(self.theta, order, w))
            .expect("same jet");
        let den = exp
            .try_sub(&Jet::constant(self.theta, order, w.conj()))
            .expect("same jet");
        num.try_div(&den)
            .expect("e^{iπθ} ≠ e^{−iπθ} for θ in (0,1)")
            .scale(self.rotation)
    }
}

/// Jet at `θ` of the rotated conformal map.
pub fn conformal_jet<T: Real>(theta: T, order: usize) -> Result<Jet<T>> {
    if order < 1 {
        return Err(Error::Usage("conformal jet needs order ≥ 1".into()));
    }
    Ok(ConformalMap::new(theta)?.jet(order))
}

impl<T: Real> ConformalMap<T> {
    /// Both limits along the boundary lines: `t → −∞` gives `μ`, `t → +∞` gives `μ e^{2πiθ}`.
    pub fn boundary_limits(&self) -> (Complex<T>, Complex<T>) {
        let two_pi_theta = T::lit(2.0) * T::PI() * self.theta;
        (
            self.rotation,
            self.rotation * Complex::from_polar(T::one(), two_pi_theta),
        )
    }
}
