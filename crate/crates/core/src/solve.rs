//! Bracketed root finding shared by the inverse and Luxemburg computations.
//!
//! Brackets are grown geometrically by doubling (or halving) from a start
//! point, then shrunk by Illinois false position with a bisection step
//! whenever two consecutive steps fail to halve the bracket. Iteration stops
//! once the relative bracket width reaches a few ulps or the bracket stops
//! moving, so results sit at machine precision. The refinement phase is
//! capped at [`MAX_BISECTIONS`] iterations.

use crate::error::{Error, Result};
use crate::scalar::Real;

pub const MAX_BISECTIONS: usize = 200;
const MAX_BRACKET_STEPS: usize = 4096;

fn numeric<T: Real>(what: &str, lo: T, hi: T, iterations: usize) -> Error {
    Error::Numeric {
        what: what.to_string(),
        lo: lo.to_f64().unwrap_or(f64::NAN),
        hi: hi.to_f64().unwrap_or(f64::NAN),
        iterations,
    }
}

#[inline]
fn converged<T: Real>(lo: T, hi: T, mid: T) -> bool {
    mid <= lo || mid >= hi || hi - lo <= T::lit(4.0) * T::epsilon() * hi
}

enum Refined<T> {
    Root(T),
    Bracket(T, T),
}

/// Shrinks a bracket with `g(lo) < 0 ≤ g(hi)` for a nondecreasing `g`.
/// With `stop_on_zero` an exact zero of `g` ends the search.
fn refine<T, G>(
    mut g: G,
    (mut lo, mut hi): (T, T),
    (mut glo, mut ghi): (T, T),
    stop_on_zero: bool,
    what: &str,
) -> Result<Refined<T>>
where
    T: Real,
    G: FnMut(T) -> Result<T>,
{
    let two = T::lit(2.0);
    // Which end moved last (-1 low, +1 high) and the width two steps ago.
    let mut side = 0i8;
    let mut widths = [hi - lo; 2];
    for i in 0..MAX_BISECTIONS {
        let mid = lo + (hi - lo) / two;
        if converged(lo, hi, mid) {
            return Ok(Refined::Bracket(lo, hi));
        }
        let stalled = i >= 2 && hi - lo > widths[0] / two;
        let secant = lo - glo * ((hi - lo) / (ghi - glo));
        let x = if stalled || !(secant > lo && secant < hi) {
            mid
        } else {
            secant
        };
        widths = [widths[1], hi - lo];
        let v = g(x)?;
        if v.is_nan() {
            return Err(numeric(what, lo, hi, i));
        }
        if v == T::zero() && stop_on_zero {
            return Ok(Refined::Root(x));
        }
        if v < T::zero() {
            lo = x;
            glo = v;
            if side == -1 {
                ghi = ghi / two;
            }
            side = -1;
        } else {
            hi = x;
            ghi = v;
            if side == 1 {
                glo = glo / two;
            }
            side = 1;
        }
    }
    Err(numeric(what, lo, hi, MAX_BISECTIONS))
}

/// Solves `f(t) = target` for a nondecreasing `f` on `(0, ∞)` with `f(t) → ∞`.
///
/// `target` must be positive; callers handle `target == 0` themselves.
pub fn invert_increasing<T, F>(mut f: F, target: T, start: T, what: &str) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let two = T::lit(2.0);
    let start = if start > T::zero() && start.is_finite() {
        start
    } else {
        T::one()
    };
    let mut g = |t: T| -> Result<T> { Ok(f(t)? - target) };
    let (mut lo, mut hi, glo, ghi);
    let at_start = g(start)?;
    if at_start == T::zero() {
        return Ok(start);
    }
    if at_start < T::zero() {
        lo = start;
        let mut gl = at_start;
        hi = start * two;
        let mut steps = 0;
        loop {
            let v = g(hi)?;
            if v == T::zero() {
                return Ok(hi);
            }
            if v > T::zero() {
                glo = gl;
                ghi = v;
                break;
            }
            lo = hi;
            gl = v;
            hi = hi * two;
            steps += 1;
            if steps > MAX_BRACKET_STEPS || !hi.is_finite() {
                return Err(numeric(what, lo, hi, steps));
            }
        }
    } else {
        hi = start;
        let mut gh = at_start;
        lo = start / two;
        let mut steps = 0;
        loop {
            let v = g(lo)?;
            if v == T::zero() {
                return Ok(lo);
            }
            if v < T::zero() {
                glo = v;
                ghi = gh;
                break;
            }
            hi = lo;
            gh = v;
            lo = lo / two;
            steps += 1;
            if steps > MAX_BRACKET_STEPS || lo <= T::zero() {
                return Err(numeric(what, lo, hi, steps));
            }
        }
    }
    match refine(g, (lo, hi), (glo, ghi), true, what)? {
        Refined::Root(t) => Ok(t),
        Refined::Bracket(lo, hi) => Ok(lo + (hi - lo) / two),
    }
}

/// Smallest `ρ > 0` with `modular(ρ) ≤ 1`, for a modular nonincreasing in `ρ`.
///
/// `guess` seeds the bracket search; any positive finite value works.
pub fn luxemburg_infimum<T, F>(mut modular: F, guess: T, what: &str) -> Result<T>
where
    T: Real,
    F: FnMut(T) -> Result<T>,
{
    let two = T::lit(2.0);
    let guess = if guess > T::zero() && guess.is_finite() {
        guess
    } else {
        T::one()
    };
    // Nondecreasing in ρ; feasible exactly where nonnegative.
    let mut g = |rho: T| -> Result<T> { Ok(T::one() - modular(rho)?) };
    let (mut lo, mut hi);
    let (mut glo, mut ghi);
    let mut steps = 0;
    let at_guess = g(guess)?;
    if at_guess >= T::zero() {
        hi = guess;
        ghi = at_guess;
        lo = guess / two;
        loop {
            glo = g(lo)?;
            if glo < T::zero() {
                break;
            }
            hi = lo;
            ghi = glo;
            lo = lo / two;
            steps += 1;
            if steps > MAX_BRACKET_STEPS || lo <= T::zero() {
                return Err(numeric(what, lo, hi, steps));
            }
        }
    } else {
        lo = guess;
        glo = at_guess;
        hi = guess * two;
        loop {
            ghi = g(hi)?;
            if ghi >= T::zero() {
                break;
            }
            lo = hi;
            glo = ghi;
            hi = hi * two;
            steps += 1;
            if steps > MAX_BRACKET_STEPS || !hi.is_finite() {
                return Err(numeric(what, lo, hi, steps));
            }
        }
    }
    match refine(g, (lo, hi), (glo, ghi), false, what)? {
        Refined::Root(rho) => Ok(rho),
        Refined::Bracket(_, hi) => Ok(hi),
    }
}
