//! Quasinorms on the derived spaces: the Luxemburg functional of `φ_{θ,n}` and
//! the recursive twisted-sum quasinorm, plus the complexification norm.

use num_complex::Complex;

use crate::blocks::BlockVector;
use crate::error::{Error, Result};
use crate::interpolation::InterpolationCouple;
use crate::scalar::Real;
use crate::solve;

/// Angular grid used by [`complexification_norm`] when callers have no preference.
pub const DEFAULT_ANGULAR_GRID: usize = 720;
const GOLDEN_WIDTH: f64 = 1e-12;

fn check_order<T: Real>(n: usize, v: &BlockVector<T>) -> Result<()> {
    if n == 0 || v.n() != n {
        return Err(Error::Usage(format!(
            "order {n} does not match a vector with {} blocks",
            v.n()
        )));
    }
    Ok(())
}

/// `inf{ρ > 0 : Σ_k φ_{θ,n}(x(k)/ρ) ≤ 1}`.
///
/// `φ_{θ,n}` is not homogeneous, so every trial `ρ` re-evaluates each block.
/// Coordinates are summed in ascending order.
pub fn fenchel_orlicz_norm<T: Real>(
    couple: &InterpolationCouple<T>,
    n: usize,
    v: &BlockVector<T>,
) -> Result<T> {
    check_order(n, v)?;
    if v.is_zero() {
        return Ok(T::zero());
    }
    let guess = v.max_modulus() / couple.phi_theta_inverse(T::one())?;
    solve::luxemburg_infimum(
        |rho| {
            let inv = rho.recip();
            v.entries().iter().try_fold(T::zero(), |acc, e| {
                let scaled: Vec<Complex<T>> = e.block.iter().map(|z| z.scale(inv)).collect();
                Ok(acc + couple.phi_theta_n(&scaled)?)
            })
        },
        guess,
        "Fenchel-Orlicz norm",
    )
}

fn rochberg_ascending<T: Real>(
    couple: &InterpolationCouple<T>,
    comps: &[Vec<Complex<T>>],
) -> Result<T> {
    let n = comps.len();
    if n == 1 {
        return couple.phi_theta_norm(&comps[0]);
    }
    let prefix = &comps[..n - 1];
    let omega = couple.omega_ascending(prefix)?;
    let twisted: Vec<Complex<T>> = comps[n - 1]
        .iter()
        .zip(&omega)
        .map(|(x, o)| *x - *o)
        .collect();
    Ok(couple.phi_theta_norm(&twisted)? + rochberg_ascending(couple, prefix)?)
}

/// `‖x_{n−1} − Ω^{n−1}(x_{n−2}, …, x_0)‖_{φ_θ} + ‖(x_{n−2}, …, x_0)‖`, with the
/// `φ_θ` Luxemburg norm at `n = 1`.
pub fn rochberg_quasinorm<T: Real>(
    couple: &InterpolationCouple<T>,
    n: usize,
    v: &BlockVector<T>,
) -> Result<T> {
    check_order(n, v)?;
    if v.is_zero() {
        return Ok(T::zero());
    }
    rochberg_ascending(couple, &v.components_ascending())
}

/// `sup_{s ∈ [0, 2π]} ‖cos(s)·x + sin(s)·y‖` for a norm on real vectors.
///
/// The supremum is taken over a uniform grid of `grid_size` angles, then
/// polished by golden-section search between the neighbours of the best
/// grid angle.
pub fn complexification_norm<T, F>(norm: F, x: &[T], y: &[T], grid_size: usize) -> Result<T>
where
    T: Real,
    F: Fn(&[T]) -> Result<T>,
{
    if x.len() != y.len() {
        return Err(Error::Usage(format!(
            "real and imaginary parts differ in length ({} vs {})",
            x.len(),
            y.len()
        )));
    }
    if grid_size < 3 {
        return Err(Error::Usage("angular grid needs at least 3 points".into()));
    }
    let at = |s: T| -> Result<T> {
        let (sin, cos) = s.sin_cos();
        let combo: Vec<T> = x.iter().zip(y).map(|(a, b)| cos * *a + sin * *b).collect();
        norm(&combo)
    };
    let step = T::lit(2.0) * T::PI() / T::lit(grid_size as f64);
    let mut best = (T::neg_infinity(), T::zero());
    for i in 0..grid_size {
        let s = step * T::lit(i as f64);
        let v = at(s)?;
        if v > best.0 {
            best = (v, s);
        }
    }
    let inv_phi = T::lit(0.5 * (5f64.sqrt() - 1.0));
    let (mut a, mut b) = (best.1 - step, best.1 + step);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (at(c)?, at(d)?);
    let width = T::lit(GOLDEN_WIDTH);
    while b - a > width {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = at(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = at(d)?;
        }
    }
    Ok(best.0.max(fc).max(fd))
}

/// Entrywise real and imaginary parts, each stored as a real-valued block vector.
pub fn real_imag_split<T: Real>(v: &BlockVector<T>) -> Result<(BlockVector<T>, BlockVector<T>)> {
    let part = |f: fn(&Complex<T>) -> T| {
        BlockVector::new(
            v.n(),
            v.entries()
                .iter()
                .map(|e| {
                    (
                        e.k,
                        e.block.iter().map(|z| Complex::new(f(z), T::zero())).collect(),
                    )
                })
                .collect(),
        )
    };
    Ok((part(|z| z.re)?, part(|z| z.im)?))
}

/// `re + i·im`.
pub fn recombine<T: Real>(re: &BlockVector<T>, im: &BlockVector<T>) -> Result<BlockVector<T>> {
    re.try_add(&im.scale(Complex::new(T::zero(), T::one())))
}
