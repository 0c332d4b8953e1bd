//! Built-in analytic test profiles.
//!
//! Probes and acceptance runs draw from this fixed corpus so results are
//! reproducible without external data. Physical shapes evaluate pointwise in
//! radius; spectral shapes are prescribed in frequency and materialize
//! through the inverse transform.

use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::profile::{RadialProfile, SpectralProfile};
use statrs::function::erf::erf;
use std::f64::consts::PI;
use std::sync::Arc;

/// Radial shapes with closed-form point evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// e^{-π (r/scale)²}
    Gaussian { scale: f64 },
    /// Indicator of the ball of the given radius.
    Ball { radius: f64 },
    /// exp(-((r-center)/width)²)
    Ring { center: f64, width: f64 },
    /// (1 + (r/r0)²)^{-beta/2} · exp(-(r/cutoff)⁴); the quartic cutoff keeps
    /// the profile inside the grid while leaving a clean power-law window.
    PowerTail { beta: f64, r0: f64, cutoff: f64 },
}

impl Shape {
    pub fn eval(&self, r: f64) -> f64 {
        match *self {
            Shape::Gaussian { scale } => (-PI * (r / scale).powi(2)).exp(),
            Shape::Ball { radius } => {
                if r <= radius {
                    1.0
                } else {
                    0.0
                }
            }
            Shape::Ring { center, width } => (-((r - center) / width).powi(2)).exp(),
            Shape::PowerTail { beta, r0, cutoff } => {
                (1.0 + (r / r0).powi(2)).powf(-beta / 2.0) * (-(r / cutoff).powi(4)).exp()
            }
        }
    }

    /// Radius beyond which the shape is numerically negligible.
    pub fn support_radius(&self) -> f64 {
        match *self {
            Shape::Gaussian { scale } => 16.0 * scale.max(1e-6),
            Shape::Ball { radius } => radius,
            Shape::Ring { center, width } => center + 14.0 * width,
            Shape::PowerTail { cutoff, .. } => 3.2 * cutoff,
        }
    }

    /// Interior breakpoints where the shape is not smooth.
    pub fn breakpoints(&self) -> Vec<f64> {
        match *self {
            Shape::Ball { radius } => vec![radius],
            _ => vec![],
        }
    }

    pub fn sample(&self, grid: &Arc<RadialGrid>) -> Result<RadialProfile> {
        RadialProfile::sample(grid, |r| self.eval(r))
    }

    /// The same shape dilated: `dilate(λ).eval(r) = self.eval(λ r)`, exact.
    pub fn dilate(&self, lambda: f64) -> Shape {
        match *self {
            Shape::Gaussian { scale } => Shape::Gaussian {
                scale: scale / lambda,
            },
            Shape::Ball { radius } => Shape::Ball {
                radius: radius / lambda,
            },
            Shape::Ring { center, width } => Shape::Ring {
                center: center / lambda,
                width: width / lambda,
            },
            Shape::PowerTail { beta, r0, cutoff } => Shape::PowerTail {
                beta,
                r0: r0 / lambda,
                cutoff: cutoff / lambda,
            },
        }
    }
}

/// Shapes prescribed in frequency space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralShape {
    /// erf-smoothed indicator of the shell lo < |ξ| < hi, transition scale
    /// sigma. Gaussian smoothing gives the physical profile a Gaussian-rate
    /// envelope, so the grid holds it to roundoff.
    SmoothedAnnulus { lo: f64, hi: f64, sigma: f64 },
    /// û(ξ) = (1 + ξ²)^{-a/2}: heavy spectral tail that saturates the
    /// high-frequency decay bound for slope measurements.
    HeavyTail { a: f64 },
    /// û(ξ) = ξ^{-a} on an erf-smoothed band [lo, hi]: exactly scale-free
    /// inside the band, so frequency splits act self-similarly and the
    /// split-scale exponent of the high part is s - 1/2 on the nose.
    PowerBand {
        a: f64,
        lo: f64,
        hi: f64,
        edge_lo: f64,
        edge_hi: f64,
    },
    /// û(ξ) = e^{-π ξ²}.
    Gaussian,
}

impl SpectralShape {
    pub fn eval(&self, xi: f64) -> f64 {
        match *self {
            SpectralShape::SmoothedAnnulus { lo, hi, sigma } => {
                let s = std::f64::consts::SQRT_2 * sigma;
                0.5 * (erf((xi - lo) / s) - erf((xi - hi) / s))
            }
            SpectralShape::HeavyTail { a } => (1.0 + xi * xi).powf(-a / 2.0),
            SpectralShape::PowerBand {
                a,
                lo,
                hi,
                edge_lo,
                edge_hi,
            } => {
                let up = 0.5 * (1.0 + erf((xi - lo) / (std::f64::consts::SQRT_2 * edge_lo)));
                let down = 0.5 * (1.0 + erf((xi - hi) / (std::f64::consts::SQRT_2 * edge_hi)));
                xi.powf(-a) * up * (1.0 - down)
            }
            SpectralShape::Gaussian => (-PI * xi * xi).exp(),
        }
    }

    pub fn sample(&self, freq_grid: &Arc<RadialGrid>) -> Result<SpectralProfile> {
        SpectralProfile::sample(freq_grid, |xi| self.eval(xi))
    }
}

/// Named profiles exposed on the CLI.
pub const NAMED_PROFILES: &[&str] = &["gaussian", "ball", "ring", "power-tail", "smoothed-annulus"];

/// Resolve a CLI profile name to a sampler. `smoothed-annulus` is
/// spectral-born and handled by the caller through the calculus context.
pub fn named_shape(name: &str) -> Result<Shape> {
    match name {
        "gaussian" => Ok(Shape::Gaussian { scale: 1.0 }),
        "ball" => Ok(Shape::Ball { radius: 1.0 }),
        "ring" => Ok(Shape::Ring {
            center: 1.0,
            width: 0.25,
        }),
        "power-tail" => Ok(Shape::PowerTail {
            beta: 4.0,
            r0: 0.5,
            cutoff: 60.0,
        }),
        other => Err(Error::OutOfRange {
            what: "profile name",
            details: format!("unknown profile {other:?}; known: {NAMED_PROFILES:?}"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dilation_is_exact() {
        let s = Shape::PowerTail {
            beta: 2.8,
            r0: 1.0,
            cutoff: 60.0,
        };
        let d = s.dilate(3.0);
        for &r in &[0.01, 0.5, 2.0, 40.0] {
            assert!((d.eval(r) - s.eval(3.0 * r)).abs() < 1e-15);
        }
    }

    #[test]
    fn smoothed_annulus_plateaus() {
        let a = SpectralShape::SmoothedAnnulus {
            lo: 1.0,
            hi: 2.0,
            sigma: 0.05,
        };
        assert!((a.eval(1.5) - 1.0).abs() < 1e-12);
        assert!(a.eval(0.5).abs() < 1e-12);
        assert!(a.eval(3.0).abs() < 1e-12);
    }
}
