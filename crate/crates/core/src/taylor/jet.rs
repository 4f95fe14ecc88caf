use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Truncated Taylor polynomial `Σ_{j ≤ N} c_j (z − center)^j` with complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet<T> {
    center: T,
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Jet<T> {
    pub fn new(center: T, coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Usage("a jet needs at least one coefficient".into()));
        }
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Domain("jet coefficients must be finite".into()));
        }
        Ok(Self { center, coeffs })
    }

    pub fn zero(center: T, order: usize) -> Self {
        Self {
            center,
            coeffs: vec![Complex::zero(); order + 1],
        }
    }

    pub fn constant(center: T, order: usize, value: Complex<T>) -> Self {
        let mut j = Self::zero(center, order);
        j.coeffs[0] = value;
        j
    }

    /// The jet of `z ↦ z − center`.
    pub fn variable(center: T, order: usize) -> Self {
        let mut j = Self::zero(center, order);
        if order >= 1 {
            j.coeffs[1] = Complex::one();
        }
        j
    }

    pub fn center(&self) -> T {
        self.center
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Coefficient `j`; zero past the truncation order.
    pub fn coeff(&self, j: usize) -> Complex<T> {
        self.coeffs.get(j).copied().unwrap_or_else(Complex::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.center != other.center || self.order() != other.order() {
            return Err(Error::Usage(format!(
                "jet mismatch: center {} order {} vs center {} order {}",
                self.center,
                self.order(),
                other.center,
                other.order()
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn scale(&self, lambda: Complex<T>) -> Self {
        Self {
            center: self.center,
            coeffs: self.coeffs.iter().map(|c| *c * lambda).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.coeffs.len();
        let mut out = vec![Complex::zero(); n];
        for (k, slot) in out.iter_mut().enumerate() {
            let mut acc = Complex::zero();
            for j in 0..=k {
                acc = acc + self.coeffs[j] * other.coeffs[k - j];
            }
            *slot = acc;
        }
        Ok(Self {
            center: self.center,
            coeffs: out,
        })
    }

    /// Truncated quotient; the divisor must have a nonzero constant term.
    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let b0 = other.coeffs[0];
        if b0.is_zero() {
            return Err(Error::Domain("jet division by a series vanishing at the center".into()));
        }
        let n = self.coeffs.len();
        let mut out: Vec<Complex<T>> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc = acc - other.coeffs[j] * out[k - j];
            }
            out.push(acc / b0);
        }
        Ok(Self {
            center: self.center,
            coeffs: out,
        })
    }

    pub fn powi(&self, m: usize) -> Self {
        let mut acc = Self::constant(self.center, self.order(), Complex::one());
        for _ in 0..m {
            acc = acc.try_mul(self).expect("same jet");
        }
        acc
    }

    /// Same series with a different truncation order (zero padded).
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex::zero());
        Self {
            center: self.center,
            coeffs,
        }
    }

    /// Evaluates the truncated polynomial at `z`.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let u = z - Complex::new(self.center, T::zero());
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::zero(), |acc, c| acc * u + *c)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Self {
        Self {
            center: self.center,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }
}

pub fn jet_add<T: Real>(a: &Jet<T>, b: &Jet<T>) -> Result<Jet<T>> {
    a.try_add(b)
}

pub fn jet_scale<T: Real>(lambda: Complex<T>, a: &Jet<T>) -> Jet<T> {
    a.scale(lambda)
}

pub fn jet_mul<T: Real>(a: &Jet<T>, b: &Jet<T>) -> Result<Jet<T>> {
    a.try_mul(b)
}

/// Jet of `z ↦ value · exp(log_ratio · (z − center))`.
///
/// This is `s·a^{1−z}·b^z` rewritten around the center, with `value = s·a^{1−θ}b^θ`
/// and `log_ratio = ln(b/a)`.
pub fn log_ratio_jet<T: Real>(value: Complex<T>, log_ratio: T, center: T, order: usize) -> Jet<T> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = value;
    for j in 0..=order {
        if j > 0 {
            term = term * (log_ratio / T::lit(j as f64));
        }
        coeffs.push(term);
    }
    Jet { center, coeffs }
}

/// Jet at `center` of `z ↦ s · a^{1−z} · b^z` for positive reals `a`, `b`.
///
/// `s = 0` yields the zero jet regardless of `a` and `b`.
pub fn two_point_power_jet<T: Real>(
    a: T,
    b: T,
    s: Complex<T>,
    center: T,
    order: usize,
) -> Result<Jet<T>> {
    if s.is_zero() {
        return Ok(Jet::zero(center, order));
    }
    if !(a > T::zero()) || !(b > T::zero()) {
        return Err(Error::Domain(format!(
            "two-point power needs positive bases, got a={a}, b={b}"
        )));
    }
    let value = s * (a.powf(T::one() - center) * b.powf(center));
    Ok(log_ratio_jet(value, (b / a).ln(), center, order))
}
