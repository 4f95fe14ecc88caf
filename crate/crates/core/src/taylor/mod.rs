//! Truncated Taylor series at the interpolation point, the strip-to-disc
//! conformal map, and a contour-integral oracle for Taylor coefficients.

mod conformal;
mod jet;
mod oracle;

pub use conformal::{conformal_jet, ConformalMap};
pub use jet::{jet_add, jet_mul, jet_scale, log_ratio_jet, two_point_power_jet, Jet};
pub use oracle::{cauchy_coefficient_oracle, default_oracle_radius, DEFAULT_QUADRATURE_POINTS};
