//! Fourier convention, sphere constants, and the smooth bridge function.
//!
//! Everything in the crate uses the unitary 2π-in-exponent transform, so the
//! Laplacian corresponds to the multiplier 4π²|ξ|² and the Gaussian
//! `e^{-π|x|²}` is a fixed point. The Riesz convolution `|x|^{-α} ⋆ u` equals
//! `c(α,d) · D^{-(d-α)} u` with the composition constant
//!
//! ```text
//! c(α,d) = π^{α - d/2} Γ((d-α)/2) / Γ(α/2)
//! ```
//!
//! which is validated empirically against a direct angular-kernel convolution
//! (see the `direct` module and the acceptance suite).

use serde::Serialize;
use statrs::function::gamma::gamma;

/// Surface area of the unit sphere S^{d-1} in R^d: `2 π^{d/2} / Γ(d/2)`.
pub fn sphere_area(d: u32) -> f64 {
    2.0 * std::f64::consts::PI.powf(d as f64 / 2.0) / gamma(d as f64 / 2.0)
}

/// Riesz composition constant under the 2π convention:
/// `|x|^{-α} ⋆ u` has Fourier transform `c(α,d) |ξ|^{-(d-α)} û(ξ)`.
pub fn riesz_constant(alpha: f64, d: u32) -> f64 {
    let dd = d as f64;
    std::f64::consts::PI.powf(alpha - dd / 2.0) * gamma((dd - alpha) / 2.0) / gamma(alpha / 2.0)
}

/// C^∞ smoothstep: exactly 0 for `t <= 0`, exactly 1 for `t >= 1`,
/// `e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)})` in between.
pub fn bridge(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        let a = (-1.0 / t).exp();
        let b = (-1.0 / (1.0 - t)).exp();
        a / (a + b)
    }
}

/// Record of the conventions in force, embedded in every serialized report.
#[derive(Debug, Clone, Serialize)]
pub struct ConventionRecord {
    /// Fourier sign/scale tag; fixed for the whole crate.
    pub fourier: &'static str,
    /// Formula of the Riesz composition constant in force.
    pub riesz_constant_formula: &'static str,
    /// Value of c(α,d) for the α used in the report, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub riesz_constant_value: Option<f64>,
    /// |S^{d-1}| for the dimension of the report.
    pub sphere_area: f64,
}

impl ConventionRecord {
    pub fn new(d: u32, alpha: Option<f64>) -> Self {
        ConventionRecord {
            fourier: "2pi-in-exponent (unitary); -Laplacian <-> 4 pi^2 |xi|^2",
            riesz_constant_formula: "pi^(alpha - d/2) Gamma((d-alpha)/2) / Gamma(alpha/2)",
            riesz_constant_value: alpha.map(|a| riesz_constant(a, d)),
            sphere_area: sphere_area(d),
        }
    }
}
