//! Direct angular-kernel convolutions: the validation route for the
//! spectral Riesz potential and the kernel machinery behind the weighted
//! low-frequency bound probes.
//!
//! For radial u the d-dimensional convolution against a kernel k(|x-y|)
//! reduces to
//!
//! ```text
//! (k ⋆ u)(r) = ∫_0^∞ u(ρ) ρ^{d-1} A(r, ρ) dρ,
//! A(r, ρ) = |S^{d-2}| ∫_0^π k²(r² + ρ² - 2 r ρ cos φ) sin^{d-2} φ dφ,
//! ```
//!
//! with k²(q) = (c₀ + q)^{-e/2}. c₀ = 0, e = α gives the Riesz kernel
//! |·|^{-α}; c₀ = 1, e = γ gives the Schwartz-tail kernel (1+|·|²)^{-γ/2}.
//! All quadratures are Gauss rules refined dyadically toward the singular
//! point, so no node ever touches the diagonal.

use crate::convention::sphere_area;
use crate::corpus::Shape;
use crate::error::{Error, Result};
use crate::profile::RadialProfile;
use crate::quad::{dyadic_singular, SingularEnd};
use rayon::prelude::*;
use std::f64::consts::PI;

/// A radial source for the direct convolutions: pointwise evaluation, a
/// support bound, and interior breakpoints the quadrature must honor.
pub trait RadialSource: Sync {
    fn source_eval(&self, r: f64) -> f64;
    fn source_support(&self) -> f64;
    fn source_breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

impl RadialSource for Shape {
    fn source_eval(&self, r: f64) -> f64 {
        self.eval(r)
    }
    fn source_support(&self) -> f64 {
        self.support_radius()
    }
    fn source_breakpoints(&self) -> Vec<f64> {
        self.breakpoints()
    }
}

impl RadialSource for RadialProfile {
    fn source_eval(&self, r: f64) -> f64 {
        self.eval(r)
    }
    fn source_support(&self) -> f64 {
        // effective support: one cell past the last nonzero sample
        let nodes = self.grid().nodes();
        match self.values().iter().rposition(|&v| v != 0.0) {
            Some(i) => nodes[(i + 1).min(nodes.len() - 1)],
            None => nodes[0],
        }
    }
}

/// Angle integral A(r,ρ)/|S^{d-2}| for the kernel (c0 + q)^{-e/2}.
/// The integrand concentrates at φ = 0 when c0 + (r-ρ)² ≪ rρ; dyadic
/// refinement toward 0 resolves it.
fn angle_integral(r: f64, rho: f64, e: f64, c0: f64, d: u32) -> Result<f64> {
    let dm2 = (d - 2) as f64;
    let base = c0 + (r - rho) * (r - rho);
    let cross = r * rho;
    let f = |phi: f64| {
        let s = (0.5 * phi).sin();
        let q = base + 4.0 * cross * s * s;
        phi.sin().powf(dm2) * q.powf(-0.5 * e)
    };
    dyadic_singular(&f, 0.0, PI, SingularEnd::Left, 1e-11, 1e-300, 90)
}

/// The spherical kernel K(r,ρ) = ∫_{S^{d-1}} (1 + |rθ - ρω|²)^{-γ/2} dω.
/// Requires γ > d-1 (the regime where the diagonal bound K ≲ r^{-(d-1)}
/// holds); ρ = 0 degenerates to |S^{d-1}| (1+r²)^{-γ/2}.
pub fn angular_kernel(r: f64, rho: f64, gamma: f64, d: u32) -> Result<f64> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { d });
    }
    if !(gamma > (d - 1) as f64) {
        return Err(Error::OutOfRange {
            what: "gamma",
            details: format!("angular kernel needs gamma > d-1 = {}, got {gamma}", d - 1),
        });
    }
    if !(r >= 0.0 && rho >= 0.0) {
        return Err(Error::OutOfRange {
            what: "radii",
            details: format!("need r, rho >= 0, got {r}, {rho}"),
        });
    }
    Ok(sphere_area(d - 1) * angle_integral(r, rho, gamma, 1.0, d)?)
}

/// ∫_0^∞ u(ρ) ρ^{d-1} A(r,ρ) dρ for one evaluation radius, splitting at the
/// diagonal and at source breakpoints. `e`, `c0` as in `angle_integral`.
fn convolve_at(u: &(impl RadialSource + ?Sized), r: f64, e: f64, c0: f64, d: u32) -> Result<f64> {
    let dd = d as f64;
    let support = u.source_support();
    let integrand = |rho: f64| -> f64 {
        let v = u.source_eval(rho);
        if v == 0.0 {
            return 0.0;
        }
        v * rho.powf(dd - 1.0) * angle_integral(r, rho, e, c0, d).unwrap_or(f64::NAN)
    };
    // segment boundaries: origin, breakpoints, the diagonal, support edge
    let mut cuts: Vec<f64> = vec![0.0, support];
    if r < support {
        cuts.push(r);
    }
    for b in u.source_breakpoints() {
        if b > 0.0 && b < support {
            cuts.push(b);
        }
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    cuts.dedup();
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        // refine toward whichever end is rough: the diagonal if it bounds
        // this segment, otherwise the left end (power weights at 0)
        let end = if (b - r).abs() < 1e-14 * r.max(1.0) {
            SingularEnd::Right
        } else {
            SingularEnd::Left
        };
        total += dyadic_singular(&integrand, a, b, end, 1e-9, 1e-300, 90)?;
    }
    if !total.is_finite() {
        return Err(Error::QuadratureNoConvergence(
            "angular kernel evaluation produced non-finite value".into(),
        ));
    }
    Ok(total)
}

/// Riesz potential (|x|^{-α} ⋆ u)(r) by direct nested quadrature at the
/// given radii. Validation route: requires α < d-1 so the angular integral
/// converges absolutely.
pub fn riesz_potential_direct_at(
    u: &(impl RadialSource + ?Sized),
    alpha: f64,
    d: u32,
    radii: &[f64],
) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha < (d - 1) as f64) {
        return Err(Error::OutOfRange {
            what: "alpha",
            details: format!(
                "direct route needs 0 < alpha < d-1 = {}, got {alpha}",
                d - 1
            ),
        });
    }
    let s = sphere_area(d - 1);
    radii
        .par_iter()
        .map(|&r| {
            if r == 0.0 {
                // at the origin the angle integral is trivial:
                // (|x|^{-α} ⋆ u)(0) = |S^{d-1}| ∫ u(ρ) ρ^{d-1-α} dρ
                let dd = d as f64;
                let f = |rho: f64| u.source_eval(rho) * rho.powf(dd - 1.0 - alpha);
                let mut cuts = vec![0.0f64];
                cuts.extend(
                    u.source_breakpoints()
                        .into_iter()
                        .filter(|&b| b > 0.0 && b < u.source_support()),
                );
                cuts.push(u.source_support());
                let mut t = 0.0;
                for w in cuts.windows(2) {
                    t += dyadic_singular(&f, w[0], w[1], SingularEnd::Left, 1e-11, 1e-300, 90)?;
                }
                Ok(sphere_area(d) * t)
            } else {
                Ok(s * convolve_at(u, r, alpha, 0.0, d)?)
            }
        })
        .collect()
}

/// Direct Riesz potential sampled on the grid of a profile (profile in,
/// profile out; radii are the grid nodes).
pub fn riesz_potential_direct(u: &RadialProfile, alpha: f64) -> Result<RadialProfile> {
    let grid = u.grid().clone();
    let vals = riesz_potential_direct_at(u, alpha, grid.d(), grid.nodes())?;
    RadialProfile::new(grid, vals)
}

/// ∫_{R^d} f(|y|) (1 + |x-y|²)^{-γ/2} dy at the given radii |x|; the left
/// side of the weighted low-frequency bound.
pub fn schwartz_tail_convolution_at(
    f: &(impl RadialSource + ?Sized),
    gamma: f64,
    d: u32,
    radii: &[f64],
) -> Result<Vec<f64>> {
    if !(gamma > (d - 1) as f64) {
        return Err(Error::OutOfRange {
            what: "gamma",
            details: format!("need gamma > d-1 = {}, got {gamma}", d - 1),
        });
    }
    let s = sphere_area(d - 1);
    radii
        .par_iter()
        .map(|&r| Ok(s * convolve_at(f, r, gamma, 1.0, d)?))
        .collect()
}
