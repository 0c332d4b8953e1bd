//! Frequency mollifier and physical cutoff with exact plateaus.

use crate::convention::bridge;
use serde::Serialize;

/// Radial frequency cutoff ψ̂: exactly 1 on |ξ| ≤ 1, exactly 0 on |ξ| ≥ 2,
/// the C^∞ bridge in between. The split scale enters as ψ̂(Rξ).
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct MollifierSpec;

impl MollifierSpec {
    pub fn eval(&self, xi: f64) -> f64 {
        1.0 - bridge(xi.abs() - 1.0)
    }
}

/// Physical cutoff θ: 1 on B₁, 0 outside B₂; θ_ρ(x) = θ(x/ρ).
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct CutoffSpec;

impl CutoffSpec {
    pub fn eval(&self, r: f64) -> f64 {
        1.0 - bridge(r.abs() - 1.0)
    }

    pub fn eval_scaled(&self, r: f64, rho: f64) -> f64 {
        self.eval(r / rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateaus_exact_and_range_respected() {
        let psi = MollifierSpec;
        assert_eq!(psi.eval(0.0), 1.0);
        assert_eq!(psi.eval(1.0), 1.0);
        assert_eq!(psi.eval(2.0), 0.0);
        assert_eq!(psi.eval(5.0), 0.0);
        for k in 0..=50 {
            let v = psi.eval(1.0 + k as f64 / 50.0);
            assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn cutoff_scaling() {
        let th = CutoffSpec;
        assert_eq!(th.eval_scaled(7.9, 8.0), 1.0);
        assert_eq!(th.eval_scaled(16.0, 8.0), 0.0);
        assert!(th.eval_scaled(12.0, 8.0) > 0.0 && th.eval_scaled(12.0, 8.0) < 1.0);
    }
}
