//! Radial quadrature grids.
//!
//! The workhorse is a log-spaced grid on [r_min, r_max] with trapezoidal
//! weights in log-radius plus an origin patch: the cell [0, r_1] is closed
//! assuming the integrand density is constant there, which is exact to
//! O(r_1²) for radial profiles (they are even in r). A composite kind
//! (linear head + log tail) exists for quadratures that want extra uniform
//! resolution near a feature.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridKind {
    LogSpaced,
    Composite,
}

/// Sidecar metadata describing a grid; serialized next to profile CSVs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridMeta {
    pub d: u32,
    pub kind: GridKind,
    pub r_min: f64,
    pub r_max: f64,
    #[serde(rename = "N")]
    pub n: usize,
}

#[derive(Debug, Clone)]
pub struct RadialGrid {
    d: u32,
    kind: GridKind,
    nodes: Vec<f64>,
    /// Quadrature weights for ∫_0^∞ f(r) r^{d-1} dr ≈ Σ w_i f(r_i)
    /// (origin patch folded into the first weight).
    weights: Vec<f64>,
    /// Plain-measure weights for ∫ f(r) dr without the r^{d-1} factor and
    /// without any origin patch; kernel quadratures add their own.
    dr_weights: Vec<f64>,
    /// Log step of the log-spaced part.
    log_step: f64,
}

impl RadialGrid {
    /// Log-spaced grid with `n` nodes on [r_min, r_max].
    pub fn log_spaced(d: u32, r_min: f64, r_max: f64, n: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::DimensionTooSmall { d });
        }
        if !(r_min > 0.0 && r_max > r_min && r_min.is_finite() && r_max.is_finite()) {
            return Err(Error::OutOfRange {
                what: "grid span",
                details: format!("need 0 < r_min < r_max, got [{r_min}, {r_max}]"),
            });
        }
        if n < 16 {
            return Err(Error::OutOfRange {
                what: "grid size",
                details: format!("need N >= 16, got {n}"),
            });
        }
        let h = (r_max / r_min).ln() / (n - 1) as f64;
        let nodes: Vec<f64> = (0..n).map(|i| r_min * (i as f64 * h).exp()).collect();
        let dd = d as f64;
        let mut dr_weights: Vec<f64> = nodes.iter().map(|&r| h * r).collect();
        dr_weights[0] *= 0.5;
        dr_weights[n - 1] *= 0.5;
        let mut weights: Vec<f64> = nodes
            .iter()
            .zip(&dr_weights)
            .map(|(&r, &v)| v * r.powf(dd - 1.0))
            .collect();
        weights[0] += nodes[0].powf(dd) / dd; // origin patch
        Ok(RadialGrid {
            d,
            kind: GridKind::LogSpaced,
            nodes,
            weights,
            dr_weights,
            log_step: h,
        })
    }

    /// Composite grid: `cells_lin` uniform cells on [r_min, r_break] and
    /// `cells_log` log-uniform cells on [r_break, r_max], each cell holding
    /// a 5-point Gauss-Legendre rule. Quadrature is spectrally accurate per
    /// cell; nodes never sit on cell boundaries.
    pub fn composite(
        d: u32,
        r_min: f64,
        r_break: f64,
        r_max: f64,
        cells_lin: usize,
        cells_log: usize,
    ) -> Result<Self> {
        if !(r_min > 0.0 && r_break > r_min && r_max > r_break) {
            return Err(Error::OutOfRange {
                what: "composite grid span",
                details: format!(
                    "need 0 < r_min < r_break < r_max, got {r_min}, {r_break}, {r_max}"
                ),
            });
        }
        if cells_lin < 2 || cells_log < 2 {
            return Err(Error::OutOfRange {
                what: "composite grid size",
                details: format!("need >= 2 cells per segment, got {cells_lin}, {cells_log}"),
            });
        }
        // 5-point Gauss-Legendre on [0, 1]
        const X5: [f64; 5] = [
            0.04691007703066800,
            0.23076534494715845,
            0.5,
            0.76923465505284155,
            0.95308992296933200,
        ];
        const W5: [f64; 5] = [
            0.11846344252809454,
            0.23931433524968324,
            0.28444444444444444,
            0.23931433524968324,
            0.11846344252809454,
        ];
        let dd = d as f64;
        let mut nodes = Vec::with_capacity(5 * (cells_lin + cells_log));
        let mut dr_weights = Vec::with_capacity(nodes.capacity());
        let dt = (r_break - r_min) / cells_lin as f64;
        for c in 0..cells_lin {
            let a = r_min + c as f64 * dt;
            for k in 0..5 {
                nodes.push(a + dt * X5[k]);
                dr_weights.push(dt * W5[k]);
            }
        }
        let h = (r_max / r_break).ln() / cells_log as f64;
        for c in 0..cells_log {
            let ta = r_break.ln() + c as f64 * h;
            for k in 0..5 {
                let r = (ta + h * X5[k]).exp();
                nodes.push(r);
                dr_weights.push(h * W5[k] * r);
            }
        }
        let mut weights: Vec<f64> = nodes
            .iter()
            .zip(&dr_weights)
            .map(|(&r, &v)| v * r.powf(dd - 1.0))
            .collect();
        weights[0] += r_min.powf(dd) / dd; // origin patch, density frozen
        Ok(RadialGrid {
            d,
            kind: GridKind::Composite,
            nodes,
            weights,
            dr_weights,
            log_step: h,
        })
    }

    /// The frequency-side companion of a physical grid: same node count,
    /// log-spaced on [r_min, ξ_max] with ξ_max = 1/(4h). The cap keeps every
    /// retained (r, ξ) pair inside the band where the oscillatory kernel is
    /// resolved by the log step.
    pub fn frequency_companion(&self) -> Result<RadialGrid> {
        let xi_max = 0.25 / self.log_step;
        let xi_min = if xi_max > 10.0 * self.nodes[0] {
            self.nodes[0]
        } else {
            xi_max / 1e6
        };
        RadialGrid::log_spaced(self.d, xi_min, xi_max, self.nodes.len())
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn dr_weights(&self) -> &[f64] {
        &self.dr_weights
    }

    pub fn log_step(&self) -> f64 {
        self.log_step
    }

    pub fn r_min(&self) -> f64 {
        self.nodes[0]
    }

    pub fn r_max(&self) -> f64 {
        *self.nodes.last().unwrap()
    }

    pub fn meta(&self) -> GridMeta {
        GridMeta {
            d: self.d,
            kind: self.kind,
            r_min: self.r_min(),
            r_max: self.r_max(),
            n: self.len(),
        }
    }

    /// ∫_0^∞ f(r) r^{d-1} dr by the grid rule.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&r, &w)| w * f(r))
            .sum()
    }

    /// Relative error of the Gaussian moment ∫ e^{-π r²} r^{d-1} dr against
    /// its Γ-function closed form (1/2) π^{-d/2} Γ(d/2). Used as the grid
    /// adequacy self-test.
    pub fn gaussian_selftest(&self) -> f64 {
        let dd = self.d as f64;
        let exact =
            0.5 * std::f64::consts::PI.powf(-dd / 2.0) * statrs::function::gamma::gamma(dd / 2.0);
        let got = self.integrate(|r| (-std::f64::consts::PI * r * r).exp());
        (got - exact).abs() / exact
    }

    /// Index of the first node >= x, clamped to the last node.
    pub fn node_at_or_above(&self, x: f64) -> usize {
        match self.nodes.binary_search_by(|a| a.partial_cmp(&x).unwrap()) {
            Ok(i) => i,
            Err(i) => i.min(self.nodes.len() - 1),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_moment_reproduces_gamma_closed_form() {
        for d in [2u32, 3, 5, 7] {
            let g = RadialGrid::log_spaced(d, 1e-4, 1e3, 2048).unwrap();
            let err = g.gaussian_selftest();
            assert!(err < 1e-8, "d={d}: rel err {err:.3e}");
        }
    }

    #[test]
    fn composite_grid_also_passes_selftest() {
        let g = RadialGrid::composite(5, 1e-4, 0.5, 1e3, 64, 128).unwrap();
        let err = g.gaussian_selftest();
        assert!(err < 1e-8, "rel err {err:.3e}");
    }

    #[test]
    fn nodes_strictly_increasing_weights_positive() {
        let g = RadialGrid::log_spaced(5, 1e-4, 1e3, 256).unwrap();
        for pair in g.nodes().windows(2) {
            assert!(pair[0] < pair[1]);
        }
        assert!(g.weights().iter().all(|&w| w > 0.0));
        assert!(g.dr_weights().iter().all(|&w| w > 0.0));
    }

    #[test]
    fn power_moment_on_subrange() {
        // ∫_0^∞ 1_{r<=1} r^{d-1-α} dr = 1/(d-α) against the grid rule
        let g = RadialGrid::log_spaced(5, 1e-4, 1e3, 2048).unwrap();
        let alpha = 2.6;
        let got = g.integrate(|r| if r <= 1.0 { r.powf(-alpha) } else { 0.0 });
        let exact = 1.0 / (5.0 - alpha);
        // truncation at the nearest node below 1.0 costs O(h)
        assert!((got - exact).abs() / exact < 1e-2);
    }

    #[test]
    fn rejects_bad_spans() {
        assert!(RadialGrid::log_spaced(5, 0.0, 1.0, 64).is_err());
        assert!(RadialGrid::log_spaced(5, 1.0, 0.5, 64).is_err());
        assert!(RadialGrid::log_spaced(5, 1e-4, 1e3, 4).is_err());
    }

    #[test]
    fn frequency_companion_caps_at_quarter_nyquist() {
        let g = RadialGrid::log_spaced(5, 1e-4, 1e3, 2048).unwrap();
        let f = g.frequency_companion().unwrap();
        assert!((f.r_max() - 0.25 / g.log_step()).abs() < 1e-9);
        assert_eq!(f.len(), g.len());
    }

    #[test]
    fn meta_roundtrips_through_json() {
        let g = RadialGrid::log_spaced(3, 1e-4, 1e3, 128).unwrap();
        let s = serde_json::to_string(&g.meta()).unwrap();
        let back: GridMeta = serde_json::from_str(&s).unwrap();
        assert_eq!(back.d, 3);
        assert_eq!(back.n, 128);
    }
}
