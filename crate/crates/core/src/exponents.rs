//! Closed-form arithmetic of the interpolation exponents: the endpoint
//! p₀ below 2 for radial profiles with signed fractional derivative, its
//! (α, s)-form p_rad, the admissible p-interval, the scaling parameter
//! θ(p), and the pointwise-decay exponent window σ(δ).

use crate::error::{Error, Result};
use serde::Serialize;

/// The parameter triple (d, r, S) with its derived dual pair (α, s).
/// Valid iff d ≥ 2 and 1/2 < r < min(d/2, S - 1/2); equivalently
/// d/2 < α < d - 1/2 and s > 1/2.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParamSet {
    pub d: u32,
    pub r: f64,
    #[serde(rename = "S")]
    pub s_total: f64,
    /// α = d - r
    pub alpha: f64,
    /// s = S - r
    #[serde(rename = "s")]
    pub s_gap: f64,
}

/// Admissible p-interval: open at the lower endpoint, closed at the upper
/// when one exists.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PRange {
    /// Excluded lower endpoint p₀.
    pub lower: f64,
    /// Included upper endpoint 2d/(d-2s), or None when s ≥ d/2.
    pub upper: Option<f64>,
}

impl PRange {
    pub fn contains(&self, p: f64) -> bool {
        p > self.lower && self.upper.map_or(true, |u| p <= u)
    }
}

/// Exponent summary for one parameter set.
#[derive(Debug, Clone, Serialize)]
pub struct ExponentReport {
    pub params: ParamSet,
    pub p0: f64,
    pub p_rad: f64,
    pub p_range: PRange,
    /// θ at p = 2 (equals r/S) and at the admissible endpoints.
    pub theta_at_two: f64,
    pub theta_at_p0: f64,
    pub theta_at_upper: Option<f64>,
    pub sigma_min: f64,
    pub sigma_max: f64,
    /// σ(δ) at the δ recorded below.
    pub sigma_at_delta: f64,
    pub delta: f64,
}

/// Validate (d, r, S) and derive (α, s). Boundary values are rejected:
/// every hypothesis in play is strict.
pub fn validate_params(d: u32, r: f64, s_total: f64) -> Result<ParamSet> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { d });
    }
    if !(r > 0.5) {
        return Err(Error::OrderTooSmall { r });
    }
    let half_d = d as f64 / 2.0;
    if !(r < half_d) {
        return Err(Error::OrderVsDimension { r, half_d });
    }
    let bound = s_total - 0.5;
    if !(r < bound) {
        return Err(Error::OrderVsRegularity { r, bound });
    }
    Ok(ParamSet {
        d,
        r,
        s_total,
        alpha: d as f64 - r,
        s_gap: s_total - r,
    })
}

/// Lower endpoint in (r, S) form:
/// p₀ = [d - 2r + 2(S-r)(d-1)] / [-((S-r) - 1/2)(d - 2r) + 2(S-r)(d-1)].
pub fn lower_endpoint_p0(params: &ParamSet) -> f64 {
    let d = params.d as f64;
    let r = params.r;
    let s = params.s_gap;
    let num = d - 2.0 * r + 2.0 * s * (d - 1.0);
    let den = -(s - 0.5) * (d - 2.0 * r) + 2.0 * s * (d - 1.0);
    num / den
}

/// Lower endpoint in (α, s) form:
/// p_rad = [2(α - d/2) + 2s(d-1)] / [-(2s-1)(α - d/2) + 2s(d-1)].
/// Substituting α = d - r, s = S - r recovers `lower_endpoint_p0`.
pub fn lower_endpoint_prad(d: u32, alpha: f64, s: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::DimensionTooSmall { d });
    }
    let dd = d as f64;
    if !(alpha > dd / 2.0 && alpha < dd - 0.5) {
        return Err(Error::OutOfRange {
            what: "alpha",
            details: format!("need d/2 < alpha < d - 1/2, got alpha = {alpha}, d = {d}"),
        });
    }
    if !(s > 0.5) {
        return Err(Error::OutOfRange {
            what: "s",
            details: format!("need s > 1/2, got {s}"),
        });
    }
    let a = alpha - dd / 2.0;
    let num = 2.0 * a + 2.0 * s * (dd - 1.0);
    let den = -(2.0 * s - 1.0) * a + 2.0 * s * (dd - 1.0);
    Ok(num / den)
}

/// The admissible interval (p₀, 2d/(d-2s)] when s < d/2, (p₀, ∞) otherwise.
pub fn admissible_p_range(params: &ParamSet) -> PRange {
    let d = params.d as f64;
    let s = params.s_gap;
    PRange {
        lower: lower_endpoint_p0(params),
        upper: if s < d / 2.0 {
            Some(2.0 * d / (d - 2.0 * s))
        } else {
            None
        },
    }
}

/// θ solving the scaling identity 1/p = 1/2 + (r - θS)/d, checked against
/// the (α, s) parameterization d/p = (1-θ)((d-α) + d/2) + θ(d/2 - s).
/// θ(2) = r/S; θ is increasing in p, reaches 1 at the upper endpoint, and
/// drops below r/S on (p₀, 2).
pub fn theta_from_scaling(params: &ParamSet, p: f64) -> Result<f64> {
    let range = admissible_p_range(params);
    if !range.contains(p) {
        return Err(Error::OutOfRange {
            what: "p",
            details: format!(
                "p = {p} outside the admissible interval ({}, {}]",
                range.lower,
                range.upper.map_or("inf".to_string(), |u| u.to_string())
            ),
        });
    }
    let d = params.d as f64;
    let theta = (params.r + d / 2.0 - d / p) / params.s_total;
    // same identity through (α, s); the two routes agree to rounding
    let theta_dual = ((d - params.alpha) + d / 2.0 - d / p) / (params.s_gap + d - params.alpha);
    debug_assert!(
        (theta - theta_dual).abs() < 1e-12,
        "parameterizations disagree: {theta} vs {theta_dual}"
    );
    if !(theta > 0.0 && theta <= 1.0 + 1e-12) {
        return Err(Error::OutOfRange {
            what: "theta",
            details: format!("theta = {theta} escaped (0, 1]"),
        });
    }
    Ok(theta.min(1.0))
}

/// The decay-exponent window: σ(δ) together with the open interval
/// (σ_min, σ_max) it must lie in:
///
/// ```text
/// σ(δ)  = [-(2s-1)(α - d/2 + δ) + 2s(d-1)] / (2s+1)
/// σ_min = [2s(d/2 - 1) + d/2] / (2s+1)           (δ → d-α limit)
/// σ_max = [2s(d-1) - (2s-1)(α - d/2)] / (2s+1)   (δ → 0 limit)
/// ```
pub fn sigma_of_delta(params: &ParamSet, delta: f64) -> Result<(f64, (f64, f64))> {
    let d = params.d as f64;
    let s = params.s_gap;
    let alpha = params.alpha;
    if !(delta > 0.0 && delta < d - alpha) {
        return Err(Error::OutOfRange {
            what: "delta",
            details: format!("need 0 < delta < d - alpha = {}, got {delta}", d - alpha),
        });
    }
    let denom = 2.0 * s + 1.0;
    let sigma = (-(2.0 * s - 1.0) * (alpha - d / 2.0 + delta) + 2.0 * s * (d - 1.0)) / denom;
    let lo = (2.0 * s * (d / 2.0 - 1.0) + d / 2.0) / denom;
    let hi = (2.0 * s * (d - 1.0) - (2.0 * s - 1.0) * (alpha - d / 2.0)) / denom;
    Ok((sigma, (lo, hi)))
}

/// Default δ standing in for the δ → 0 limit; recorded in every
/// report that uses it.
pub fn default_delta(params: &ParamSet) -> f64 {
    1e-6 * (params.d as f64 - params.alpha)
}

/// Assemble the full exponent report at a given δ (or the default).
pub fn exponent_report(params: &ParamSet, delta: Option<f64>) -> Result<ExponentReport> {
    let delta = delta.unwrap_or_else(|| default_delta(params));
    let p0 = lower_endpoint_p0(params);
    let p_rad = lower_endpoint_prad(params.d, params.alpha, params.s_gap)?;
    let p_range = admissible_p_range(params);
    let (sigma, (lo, hi)) = sigma_of_delta(params, delta)?;
    let d = params.d as f64;
    let theta_of = |p: f64| (params.r + d / 2.0 - d / p) / params.s_total;
    Ok(ExponentReport {
        params: *params,
        p0,
        p_rad,
        p_range,
        theta_at_two: theta_of(2.0),
        theta_at_p0: theta_of(p0),
        theta_at_upper: p_range.upper.map(theta_of),
        sigma_min: lo,
        sigma_max: hi,
        sigma_at_delta: sigma,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn figure_params() -> ParamSet {
        validate_params(5, 2.0, 3.0).unwrap()
    }

    #[test]
    fn validation_accepts_the_figure_triple() {
        let p = figure_params();
        assert_eq!(p.alpha, 3.0);
        assert_eq!(p.s_gap, 1.0);
    }

    #[test]
    fn validation_rejects_boundaries() {
        // r = S - 1/2 exactly
        match validate_params(5, 2.0, 2.5) {
            Err(Error::OrderVsRegularity { .. }) => {}
            other => panic!("expected OrderVsRegularity, got {other:?}"),
        }
        // r < 1/2
        match validate_params(2, 0.4, 3.0) {
            Err(Error::OrderTooSmall { .. }) => {}
            other => panic!("expected OrderTooSmall, got {other:?}"),
        }
        // r = d/2 exactly
        match validate_params(4, 2.0, 5.0) {
            Err(Error::OrderVsDimension { .. }) => {}
            other => panic!("expected OrderVsDimension, got {other:?}"),
        }
        assert!(validate_params(1, 0.6, 3.0).is_err());
    }

    #[test]
    fn derived_fields_are_consistent() {
        let p = validate_params(7, 1.3, 4.2).unwrap();
        assert!((p.alpha + p.r - p.d as f64).abs() < 1e-14);
        assert!((p.s_gap + p.r - p.s_total).abs() < 1e-14);
    }

    #[test]
    fn p0_at_figure_point() {
        assert!((lower_endpoint_p0(&figure_params()) - 1.2).abs() < 1e-14);
    }

    #[test]
    fn p0_matches_figure_closed_form() {
        // d=5, r=2: p0(S) = (16S - 30)/(14S - 27)
        for s_total in [2.6, 3.0, 5.0, 10.0] {
            let p = validate_params(5, 2.0, s_total).unwrap();
            let want = (16.0 * s_total - 30.0) / (14.0 * s_total - 27.0);
            assert!((lower_endpoint_p0(&p) - want).abs() < 1e-12, "S={s_total}");
        }
    }

    #[test]
    fn p0_asymptote_eight_sevenths() {
        let p = validate_params(5, 2.0, 1e9).unwrap();
        assert!((lower_endpoint_p0(&p) - 8.0 / 7.0).abs() < 1e-7);
    }

    #[test]
    fn prad_limits() {
        // α → d - 1/2 forces p_rad → 2; α → d/2 forces p_rad → 1
        let p = lower_endpoint_prad(5, 4.5 - 1e-8, 1.0).unwrap();
        assert!((p - 2.0).abs() < 1e-6);
        let p = lower_endpoint_prad(5, 2.5 + 1e-8, 1.0).unwrap();
        assert!((p - 1.0).abs() < 1e-6);
    }

    #[test]
    fn prad_equals_p0_under_substitution() {
        for (d, r, s_total) in [
            (5u32, 2.0, 3.0),
            (5, 1.2, 4.0),
            (2, 0.6, 2.0),
            (9, 3.3, 8.8),
        ] {
            let ps = validate_params(d, r, s_total).unwrap();
            let via_rad = lower_endpoint_prad(d, ps.alpha, ps.s_gap).unwrap();
            assert!(
                (via_rad - lower_endpoint_p0(&ps)).abs() < 1e-12,
                "(d,r,S)=({d},{r},{s_total})"
            );
        }
    }

    #[test]
    fn prad_strictly_inside_one_two() {
        for (d, alpha, s) in [(5u32, 3.0, 1.0), (2, 1.2, 0.8), (3, 2.2, 7.0)] {
            let p = lower_endpoint_prad(d, alpha, s).unwrap();
            assert!(p > 1.0 && p < 2.0, "(d,α,s)=({d},{alpha},{s}): {p}");
        }
    }

    #[test]
    fn range_branches() {
        // s = 1 < d/2: bounded above by 2d/(d-2s) = 10/3
        let p = figure_params();
        let range = admissible_p_range(&p);
        assert!((range.lower - 1.2).abs() < 1e-14);
        assert!((range.upper.unwrap() - 10.0 / 3.0).abs() < 1e-14);
        // d=2, r=0.6, S=2: s = 1.4 >= d/2 = 1 → unbounded
        let p = validate_params(2, 0.6, 2.0).unwrap();
        assert!(admissible_p_range(&p).upper.is_none());
    }

    #[test]
    fn theta_values() {
        let p = figure_params();
        // θ(2) = r/S = 2/3
        let th = theta_from_scaling(&p, 2.0).unwrap();
        assert!((th - 2.0 / 3.0).abs() < 1e-14);
        // θ at the upper endpoint is 1
        let up = admissible_p_range(&p).upper.unwrap();
        let th = theta_from_scaling(&p, up).unwrap();
        assert!((th - 1.0).abs() < 1e-12);
        // rejects p outside the admissible interval
        assert!(theta_from_scaling(&p, 1.1).is_err());
        assert!(theta_from_scaling(&p, 4.0).is_err());
    }

    #[test]
    fn theta_monotone_and_below_r_over_s_before_two() {
        let p = figure_params();
        let range = admissible_p_range(&p);
        let mut prev = -1.0;
        let upper = range.upper.unwrap();
        for k in 1..=40 {
            let t = k as f64 / 41.0;
            let pp = range.lower + t * (upper - range.lower);
            let th = theta_from_scaling(&p, pp).unwrap();
            assert!(th > prev, "θ must increase");
            if pp < 2.0 {
                assert!(th < p.r / p.s_total + 1e-14, "θ(p<2) stays below r/S");
            }
            prev = th;
        }
    }

    #[test]
    fn sigma_window() {
        // d=5, α=3, s=1: σ(δ→0) = 2.5, lower endpoint 5.5/3
        let p = figure_params();
        let (sigma, (lo, hi)) = sigma_of_delta(&p, 1e-9).unwrap();
        assert!((sigma - 2.5).abs() < 1e-8);
        assert!((lo - 5.5 / 3.0).abs() < 1e-14);
        assert!((hi - 2.5).abs() < 1e-14);
        assert!(sigma_of_delta(&p, 0.0).is_err());
        assert!(sigma_of_delta(&p, 2.0).is_err());
    }

    #[test]
    fn sigma_strictly_decreasing_and_inside_window() {
        let p = validate_params(5, 1.7, 3.1).unwrap();
        let d_alpha = p.d as f64 - p.alpha;
        let mut prev = f64::INFINITY;
        for k in 1..40 {
            let delta = d_alpha * k as f64 / 40.0;
            let (sigma, (lo, hi)) = sigma_of_delta(&p, delta).unwrap();
            assert!(sigma < prev);
            assert!(
                sigma > lo && sigma < hi,
                "σ({delta}) = {sigma} not in ({lo}, {hi})"
            );
            prev = sigma;
        }
    }

    #[test]
    fn sigma_prad_consistency() {
        // (σ_max + α - d/2)/σ_max = p_rad
        let p = figure_params();
        let (_, (_, hi)) = sigma_of_delta(&p, 1e-12).unwrap();
        let lhs = (hi + p.alpha - p.d as f64 / 2.0) / hi;
        let prad = lower_endpoint_prad(p.d, p.alpha, p.s_gap).unwrap();
        assert!((lhs - prad).abs() < 1e-12);
    }

    #[test]
    fn report_assembles() {
        let p = figure_params();
        let rep = exponent_report(&p, None).unwrap();
        assert!(rep.p0 > 1.0 && rep.p0 < 2.0);
        assert!((rep.p0 - rep.p_rad).abs() < 1e-12);
        assert!(rep.sigma_min < rep.sigma_max);
        assert!(rep.theta_at_p0 < rep.theta_at_two);
        assert_eq!(rep.theta_at_upper, Some(1.0));
        assert!(rep.delta > 0.0);
    }
}
