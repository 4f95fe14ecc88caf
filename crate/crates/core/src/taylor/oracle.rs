use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_QUADRATURE_POINTS: usize = 256;

/// Half the distance from `center` to the boundary of the strip.
pub fn default_oracle_radius<T: Real>(center: T) -> T {
    T::lit(0.5) * center.min(T::one() - center)
}

/// Taylor coefficient `j` at `center` of an analytic `f`, by the trapezoid
/// rule applied to `(1/2πi) ∮ f(z) / (z − center)^{j+1} dz` on a circle of
/// radius `radius`.
///
/// The circle must stay inside the open strip `0 < Re z < 1`.
pub fn cauchy_coefficient_oracle<T, F>(
    f: F,
    center: T,
    j: usize,
    radius: T,
    quadrature_points: usize,
) -> Result<Complex<T>>
where
    T: Real,
    F: Fn(Complex<T>) -> Complex<T>,
{
    if quadrature_points < 64 {
        return Err(Error::Usage(format!(
            "need at least 64 quadrature points, got {quadrature_points}"
        )));
    }
    if !(radius > T::zero()) || radius >= center.min(T::one() - center) {
        return Err(Error::Domain(format!(
            "radius {radius} does not fit inside the strip around {center}"
        )));
    }
    let n = T::lit(quadrature_points as f64);
    let step = T::lit(2.0) * T::PI() / n;
    let mut acc = Complex::zero();
    for k in 0..quadrature_points {
        let angle = step * T::lit(k as f64);
        let u = Complex::from_polar(radius, angle);
        let z = Complex::new(center, T::zero()) + u;
        acc = acc + f(z) / u.powu(j as u32);
    }
    Ok(acc / n)
}
