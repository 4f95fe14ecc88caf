//! Interpolated Orlicz couples and the derived spaces they generate.
//!
//! The crate evaluates Orlicz and Luxemburg norms, the interpolated function
//! `φ_θ` of a couple `(ℓ_{φ₀}, ℓ_{φ₁})`, the quasi-Young functions `φ_{θ,n}`,
//! the quasilinear maps `Ω_θ^n` built from Taylor jets at `θ`, and the two
//! quasinorms on the derived spaces. The [`harness`] module estimates the
//! constants whose existence the theory guarantees.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`.

// `!(a < b)` is used on purpose so that NaN fails every domain check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod blocks;
pub mod derived;
pub mod error;
pub mod estimate;
pub mod harness;
pub mod interpolation;
pub mod orlicz;
pub mod scalar;
mod solve;
pub mod taylor;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex = num_complex::Complex<f64>;
pub type OrliczFunction = orlicz::OrliczFunction<f64>;
pub type Delta2Profile = orlicz::Delta2Profile<f64>;
pub type Jet = taylor::Jet<f64>;
pub type ConformalMap = taylor::ConformalMap<f64>;
pub type InterpolationCouple = interpolation::InterpolationCouple<f64>;
pub type GCoefficients = interpolation::GCoefficients<f64>;
pub type GFamily = interpolation::GFamily<f64>;
pub type BlockVector = blocks::BlockVector<f64>;
pub type Sequence = blocks::Sequence<f64>;
pub type ConstantEstimate = estimate::ConstantEstimate<f64>;
pub type Witness = estimate::Witness<f64>;
pub type TrialConfig = harness::TrialConfig<f64>;
