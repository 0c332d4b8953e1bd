//! Numerical probes of the frequency-splitting, decay, and weighted-integral
//! estimates: each probe evaluates the two sides of one inequality over a
//! parameter ladder and reports compensated ratios. Probes test finiteness,
//! uniformity, and exponents; none of the untracked constants.

use crate::calculus::RadialCalculus;
use crate::direct::schwartz_tail_convolution_at;
use crate::error::{Error, Result};
use crate::mollifier::{CutoffSpec, MollifierSpec};
use crate::profile::{RadialProfile, SpectralProfile};
use serde::Serialize;
use serde_json::json;
use std::sync::Arc;

/// Uniform container for inequality probes: compensated ratio samples over
/// a parameter ladder, their supremum, and the pass verdict against the
/// recorded thresholds.
#[derive(Debug, Clone, Serialize)]
pub struct BoundProbeReport {
    pub probe: String,
    pub params: serde_json::Value,
    pub samples: Vec<(f64, f64)>,
    pub sup_ratio: f64,
    pub passed: bool,
    pub thresholds: serde_json::Value,
}

impl BoundProbeReport {
    fn from_samples(
        probe: &str,
        params: serde_json::Value,
        samples: Vec<(f64, f64)>,
        thresholds: serde_json::Value,
    ) -> Self {
        let finite = samples.iter().all(|&(_, v)| v.is_finite() && v >= 0.0);
        let sup = samples.iter().fold(0.0f64, |m, &(_, v)| m.max(v));
        BoundProbeReport {
            probe: probe.to_string(),
            params,
            samples,
            sup_ratio: sup,
            passed: finite,
            thresholds,
        }
    }
}

/// Which side of the ball the weighted integral runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TailSide {
    Interior,
    Exterior,
}

/// The two documented weight choices of the scaling-invariant bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WeightChoice {
    /// w(ρ) = ρ^{-(α - d/q + 1 + δ)} for ρ > R, zero inside.
    Exterior,
    /// w(ρ) = ρ^{-(α - d/q + 1 - δ)} for ρ < R, zero outside.
    Interior,
}

/// Split u into a low-frequency part ψ_R ⋆ u and the remainder h with
/// ĥ(ξ) = (1 - ψ̂(Rξ)) û(ξ). The parts sum to u pointwise by construction.
pub fn frequency_split(
    calc: &RadialCalculus,
    u: &RadialProfile,
    scale: f64,
    psi: &MollifierSpec,
) -> Result<(RadialProfile, RadialProfile)> {
    if !(scale > 0.0) {
        return Err(Error::OutOfRange {
            what: "R",
            details: format!("need R > 0, got {scale}"),
        });
    }
    let uh = calc.spectrum_of(u)?;
    let low = calc.apply_multiplier(u, |xi| psi.eval(scale * xi))?;
    let high = u.linear_combination(1.0, &low, -1.0)?;
    // spectral twin of the remainder: (1 - ψ̂(Rξ)) û, exact on the cache
    let high_spec: Vec<f64> = calc
        .freq_grid()
        .nodes()
        .iter()
        .zip(uh.values())
        .map(|(&xi, &v)| (1.0 - psi.eval(scale * xi)) * v)
        .collect();
    high.attach_spectrum(Arc::new(SpectralProfile::new(
        Arc::clone(calc.freq_grid()),
        high_spec,
    )?));
    Ok((low, high))
}

/// High-frequency pointwise decay probe: for each split scale R the
/// compensated ratio sup_window |h(x)| |x|^{(d-1)/2} / (R^{s-1/2} ‖u‖_{Ḣ^s}).
/// The slope of log sup |h| |x|^{(d-1)/2} against log R is recorded; a
/// profile with spectral mass at every tested 1/R tracks the bound's
/// exponent s - 1/2.
pub fn high_freq_decay_probe(
    calc: &RadialCalculus,
    u: &RadialProfile,
    s: f64,
    scales: &[f64],
    window: (f64, f64),
) -> Result<BoundProbeReport> {
    if !(s > 0.5) {
        return Err(Error::OutOfRange {
            what: "s",
            details: format!("claim needs s > 1/2, got {s}"),
        });
    }
    let (lo, hi) = window;
    if lo < calc.grid().r_min() || hi > calc.grid().r_max() || lo >= hi {
        return Err(Error::OutOfRange {
            what: "window",
            details: format!("window [{lo}, {hi}] not inside the grid"),
        });
    }
    let psi = MollifierSpec;
    let hs_norm = calc.sobolev_norm(u, s)?;
    let d = calc.d() as f64;
    let mut samples = Vec::new();
    let mut sups = Vec::new();
    for &scale in scales {
        let (_, high) = frequency_split(calc, u, scale, &psi)?;
        let mut sup = 0.0f64;
        for (&r, &v) in calc.grid().nodes().iter().zip(high.values()) {
            if r >= lo && r <= hi {
                sup = sup.max(v.abs() * r.powf((d - 1.0) / 2.0));
            }
        }
        sups.push(sup);
        let ratio = if hs_norm > 0.0 {
            sup / (scale.powf(s - 0.5) * hs_norm)
        } else {
            0.0
        };
        samples.push((scale, ratio));
    }
    // slope of log sup vs log R across the ladder
    let slope = if scales.len() >= 2 && sups.iter().all(|&v| v > 0.0) {
        let xs: Vec<f64> = scales.iter().map(|&r| r.ln()).collect();
        let ys: Vec<f64> = sups.iter().map(|&v| v.ln()).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        Some(sxy / sxx)
    } else {
        None
    };
    let stability = {
        let finite: Vec<f64> = samples
            .iter()
            .map(|&(_, v)| v)
            .filter(|v| *v > 0.0)
            .collect();
        if finite.is_empty() {
            1.0
        } else {
            finite.iter().cloned().fold(0.0f64, f64::max)
                / finite.iter().cloned().fold(f64::INFINITY, f64::min)
        }
    };
    Ok(BoundProbeReport::from_samples(
        "high-freq-decay",
        json!({"s": s, "window": window, "slope": slope, "stability_factor": stability,
               "claimed_slope": s - 0.5}),
        samples,
        json!({"slope_tolerance": 0.15, "stability_cap": 1.5}),
    ))
}

/// |S^{d-1}| ∫ over one side of B_R of |u(r)| r^{d-1-γ_w} dr.
pub fn weighted_tail_integral(
    u: &RadialProfile,
    gamma_w: f64,
    radius: f64,
    side: TailSide,
) -> Result<f64> {
    let g = u.grid();
    if !(radius >= g.r_min() && radius <= g.r_max()) {
        return Err(Error::OutOfRange {
            what: "R",
            details: format!(
                "R = {radius} outside grid span [{}, {}]",
                g.r_min(),
                g.r_max()
            ),
        });
    }
    let s = crate::convention::sphere_area(g.d());
    let mut total = 0.0;
    for ((&r, &w), &v) in g.nodes().iter().zip(g.weights()).zip(u.values()) {
        let inside = r <= radius;
        if (side == TailSide::Interior) == inside {
            total += w * v.abs() * r.powf(-gamma_w);
        }
    }
    Ok(s * total)
}

/// ‖ |x|^{-α} ⋆ |u| ‖_{L^q} through the spectral potential of |u|.
pub fn riesz_lq_norm(calc: &RadialCalculus, u: &RadialProfile, alpha: f64, q: f64) -> Result<f64> {
    let abs_u = if u.values().iter().all(|&v| v >= 0.0) {
        u.clone()
    } else {
        u.map(|_, v| v.abs())
    };
    calc.riesz_potential_spectral(&abs_u, alpha)?.lp_norm(q)
}

/// Scaling-invariance probes for the exterior and interior weighted
/// integrals: over the R-ladder,
///
/// ```text
/// ratio₁(R) = R^δ  ∫_{B_R^c} |u| |x|^{-(α-d/q+δ)} dx / ‖|x|^{-α} ⋆ |u|‖_q
/// ratio₂(R) = R^{-δ} ∫_{B_R} |u| |x|^{-(α-d/q-δ)} dx / ‖|x|^{-α} ⋆ |u|‖_q
/// ```
///
/// Both are bounded uniformly in R and u; dilating u slides the curves
/// along the ladder without changing their sup. Returns the exterior and
/// interior reports in that order.
pub fn scaling_invariance_probe(
    calc: &RadialCalculus,
    u: &RadialProfile,
    alpha: f64,
    delta: f64,
    q: f64,
    ladder: &[f64],
) -> Result<(BoundProbeReport, BoundProbeReport)> {
    let d = calc.d() as f64;
    if !(q > 1.0) {
        return Err(Error::OutOfRange {
            what: "q",
            details: format!("need q > 1, got {q}"),
        });
    }
    if !(alpha > d / q && alpha < d) {
        return Err(Error::OutOfRange {
            what: "alpha",
            details: format!("need d/q < alpha < d, got alpha = {alpha}, d/q = {}", d / q),
        });
    }
    if !(delta > 0.0) {
        return Err(Error::OutOfRange {
            what: "delta",
            details: format!("need delta > 0, got {delta}"),
        });
    }
    let params = json!({"alpha": alpha, "delta": delta, "q": q});
    let thresholds = json!({"requires": "finite compensated ratios over the ladder",
                            "dilation_flatness_cap": 4.0});
    if u.is_zero() {
        let mut rep = BoundProbeReport::from_samples(
            "scaling-exterior",
            params.clone(),
            vec![],
            thresholds.clone(),
        );
        rep.passed = false;
        rep.params["degenerate"] = json!(true);
        let mut rep2 =
            BoundProbeReport::from_samples("scaling-interior", params, vec![], thresholds);
        rep2.passed = false;
        rep2.params["degenerate"] = json!(true);
        return Ok((rep, rep2));
    }
    let rhs = riesz_lq_norm(calc, u, alpha, q)?;
    if !(rhs.is_finite() && rhs > 0.0) {
        return Err(Error::DegenerateInput(format!("Riesz L^{q} norm is {rhs}")));
    }
    let mut ext = Vec::new();
    let mut int = Vec::new();
    for &radius in ladder {
        let e = weighted_tail_integral(u, alpha - d / q + delta, radius, TailSide::Exterior)?;
        let i = weighted_tail_integral(u, alpha - d / q - delta, radius, TailSide::Interior)?;
        ext.push((radius, radius.powf(delta) * e / rhs));
        int.push((radius, radius.powf(-delta) * i / rhs));
    }
    Ok((
        BoundProbeReport::from_samples("scaling-exterior", params.clone(), ext, thresholds.clone()),
        BoundProbeReport::from_samples("scaling-interior", params, int, thresholds),
    ))
}

/// Ball-average probe at center 0:
/// ∫_0^∞ (⨍_{B_ρ} |u|)^q ρ^{(d-α)q + d - 1} dρ ≤ C ‖|x|^{-α} ⋆ |u|‖_q^q.
pub fn ball_average_probe(
    calc: &RadialCalculus,
    u: &RadialProfile,
    alpha: f64,
    q: f64,
) -> Result<BoundProbeReport> {
    let d = calc.d() as f64;
    if !(q >= 1.0) || !(alpha > d / q && alpha < d) {
        return Err(Error::OutOfRange {
            what: "(alpha, q)",
            details: format!("need q >= 1 and d/q < alpha < d, got ({alpha}, {q})"),
        });
    }
    let g = calc.grid();
    // cumulative ∫_0^{ρ_i} |u| t^{d-1} dt by prefix sums of the grid rule
    let mut cum = Vec::with_capacity(g.len());
    let mut acc = 0.0;
    for (&w, &v) in g.weights().iter().zip(u.values()) {
        acc += w * v.abs();
        cum.push(acc);
    }
    let exponent = (d - alpha) * q + d - 1.0;
    let mut lhs = 0.0;
    for ((&rho, &vdr), &c) in g.nodes().iter().zip(g.dr_weights()).zip(&cum) {
        let avg = d * c / rho.powf(d); // ⨍_{B_ρ}|u| without the sphere factor
        lhs += vdr * avg.powf(q) * rho.powf(exponent);
    }
    // origin patch with the ball average frozen at its first resolved value
    let avg0 = d * cum[0] / g.nodes()[0].powf(d);
    lhs += avg0.powf(q) * g.nodes()[0].powf(exponent + 1.0) / (exponent + 1.0);
    let rhs = riesz_lq_norm(calc, u, alpha, q)?;
    let ratio = if rhs > 0.0 { lhs / rhs.powf(q) } else { 0.0 };
    let degenerate = u.is_zero();
    let mut rep = BoundProbeReport::from_samples(
        "ball-average",
        json!({"alpha": alpha, "q": q, "lhs": lhs, "rhs_q": rhs.powf(q), "degenerate": degenerate}),
        vec![(0.0, ratio)],
        json!({"requires": "finite LHS/RHS^q"}),
    );
    rep.passed &= !degenerate;
    Ok(rep)
}

/// Weighted-w probe: |∫ |u| W(|x|) dx| ≤ C ‖|x|^{-α} ⋆ |u|‖_q with
/// W(ρ) = ∫_ρ^∞ w and w one of the two documented piecewise powers.
pub fn weighted_w_probe(
    calc: &RadialCalculus,
    u: &RadialProfile,
    choice: WeightChoice,
    alpha: f64,
    q: f64,
    delta: f64,
    radius: f64,
) -> Result<BoundProbeReport> {
    let d = calc.d() as f64;
    if !(q > 1.0) || !(alpha > d / q && alpha < d) || !(delta > 0.0) || !(radius > 0.0) {
        return Err(Error::OutOfRange {
            what: "(alpha, q, delta, R)",
            details: format!("invalid probe parameters ({alpha}, {q}, {delta}, {radius})"),
        });
    }
    let e_ext = alpha - d / q + delta;
    let e_int = alpha - d / q - delta;
    let w_profile = |rho: f64| -> f64 {
        match choice {
            WeightChoice::Exterior => {
                // W(ρ) = ρ^{-e}/e beyond R, frozen at R inside
                let p = rho.max(radius);
                p.powf(-e_ext) / e_ext
            }
            WeightChoice::Interior => {
                if rho >= radius {
                    0.0
                } else if e_int.abs() < 1e-12 {
                    (radius / rho).ln()
                } else {
                    (rho.powf(-e_int) - radius.powf(-e_int)) / e_int
                }
            }
        }
    };
    let s = calc.sphere_area();
    let mut lhs = 0.0;
    for ((&r, &w), &v) in calc
        .grid()
        .nodes()
        .iter()
        .zip(calc.grid().weights())
        .zip(u.values())
    {
        lhs += w * v.abs() * w_profile(r);
    }
    lhs *= s;
    // the w-moment the hypothesis requires to be finite:
    // ∫ |w|^{q/(q-1)} ρ^{(αq+1-d)/(q-1)} dρ
    let qp = q / (q - 1.0);
    let mexp = (alpha * q + 1.0 - d) / (q - 1.0);
    let w_raw = |rho: f64| -> f64 {
        match choice {
            WeightChoice::Exterior => {
                if rho > radius {
                    rho.powf(-(e_ext + 1.0))
                } else {
                    0.0
                }
            }
            WeightChoice::Interior => {
                if rho < radius {
                    rho.powf(-(e_int + 1.0))
                } else {
                    0.0
                }
            }
        }
    };
    let moment: f64 = calc
        .grid()
        .nodes()
        .iter()
        .zip(calc.grid().dr_weights())
        .map(|(&rho, &vdr)| vdr * w_raw(rho).powf(qp) * rho.powf(mexp))
        .sum();
    if !moment.is_finite() {
        return Err(Error::OutOfRange {
            what: "w-moment",
            details: "the q/(q-1) moment of w diverges".into(),
        });
    }
    let rhs = riesz_lq_norm(calc, u, alpha, q)?;
    let ratio = if rhs > 0.0 { lhs / rhs } else { 0.0 };
    let degenerate = u.is_zero();
    let mut rep = BoundProbeReport::from_samples(
        "weighted-w",
        json!({"choice": choice, "alpha": alpha, "q": q, "delta": delta, "R": radius,
               "lhs": lhs, "rhs": rhs, "w_moment": moment, "degenerate": degenerate}),
        vec![(radius, ratio)],
        json!({"requires": "finite ratio and finite w-moment"}),
    );
    rep.passed &= !degenerate;
    Ok(rep)
}

/// Full-space weighted integral ∫ |u| |x|^{-(α - d/2 + δ)} dx, the quantity
/// bounded by a constant for profiles normalized to unit Sobolev and Riesz
/// norms.
pub fn weighted_decay_integral(
    calc: &RadialCalculus,
    u: &RadialProfile,
    alpha: f64,
    delta: f64,
) -> Result<f64> {
    let d = calc.d() as f64;
    if !(delta > 0.0 && delta < d - alpha) {
        return Err(Error::OutOfRange {
            what: "delta",
            details: format!("need 0 < delta < d - alpha = {}, got {delta}", d - alpha),
        });
    }
    let s = calc.sphere_area();
    let gamma_w = alpha - d / 2.0 + delta;
    let total: f64 = calc
        .grid()
        .nodes()
        .iter()
        .zip(calc.grid().weights())
        .zip(u.values())
        .map(|((&r, &w), &v)| w * v.abs() * r.powf(-gamma_w))
        .sum();
    Ok(s * total)
}

/// Kernel-decay probe core: compensated ratios of the weighted
/// low-frequency bound
/// |∫ f(|y|) (1+|x-y|²)^{-γ/2} dy| ≲ |x|^{-(d-1+b)} ‖|y|^b f‖_{L¹}
/// over a dyadic ladder of |x|. The growth marker tracks the small-x half
/// of the ladder, where hypothesis failure shows up: below the admissible
/// b-interval the compensating power overshoots and the ratio blows up
/// toward the origin by more than 10x per decade.
fn kernel_decay_core(
    calc: &RadialCalculus,
    f: &RadialProfile,
    gamma: f64,
    b: f64,
    ladder: &[f64],
) -> Result<BoundProbeReport> {
    let d = calc.d();
    let dd = d as f64;
    if !(b < 0.0) {
        return Err(Error::OutOfRange {
            what: "b",
            details: format!("need b < 0, got {b}"),
        });
    }
    if !(gamma > dd - 1.0) {
        return Err(Error::OutOfRange {
            what: "gamma",
            details: format!("need gamma > d-1, got {gamma}"),
        });
    }
    // ‖|y|^b f‖_{L¹} on the grid
    let s = calc.sphere_area();
    let weight_norm: f64 = s * calc
        .grid()
        .nodes()
        .iter()
        .zip(calc.grid().weights())
        .zip(f.values())
        .map(|((&r, &w), &v)| w * v.abs() * r.powf(b))
        .sum::<f64>();
    if !(weight_norm.is_finite() && weight_norm > 0.0) {
        return Err(Error::DegenerateInput(format!(
            "weighted L1 norm is {weight_norm}"
        )));
    }
    let lhs = schwartz_tail_convolution_at(f, gamma, d, ladder)?;
    let samples: Vec<(f64, f64)> = ladder
        .iter()
        .zip(&lhs)
        .map(|(&x, &v)| (x, v.abs() * x.powf(dd - 1.0 + b) / weight_norm))
        .collect();
    // growth of the ratio as x decreases, per decade, over the smallest
    // rungs (away from the source support, where the compensation alone
    // sets the trend)
    let mut growth: f64 = 1.0;
    let head = 3.min(samples.len());
    for w in samples[..head].windows(2) {
        let (x0, r0) = w[0];
        let (x1, r1) = w[1];
        if r0 > 0.0 && r1 > 0.0 && x1 > x0 {
            let per_decade = (r0 / r1).powf(std::f64::consts::LN_10 / (x1 / x0).ln());
            growth = growth.max(per_decade);
        }
    }
    let in_range = b > -(dd - 1.0);
    Ok(BoundProbeReport::from_samples(
        "kernel-decay",
        json!({"gamma": gamma, "b": b, "weight_norm": weight_norm,
               "in_hypothesis_range": in_range,
               "growth_per_decade_toward_small_x": growth}),
        samples,
        json!({"divergence_marker": "growth_per_decade > 10 flags failure beyond b = -(d-1)"}),
    ))
}

/// The probe under the bound's hypotheses b ∈ (-(d-1), 0), γ > d-1.
pub fn kernel_decay_probe(
    calc: &RadialCalculus,
    f: &RadialProfile,
    gamma: f64,
    b: f64,
    ladder: &[f64],
) -> Result<BoundProbeReport> {
    let dd = calc.d() as f64;
    if !(b > -(dd - 1.0)) {
        return Err(Error::OutOfRange {
            what: "b",
            details: format!("need b > -(d-1) = {}, got {b}", -(dd - 1.0)),
        });
    }
    kernel_decay_core(calc, f, gamma, b, ladder)
}

/// Sharpness experiment: evaluate the same compensated ratios with b pushed
/// at or beyond the excluded endpoint -(d-1). The growth marker then
/// exceeds 10x per decade toward small x, showing the hypothesis boundary
/// is real.
pub fn kernel_decay_sharpness_scan(
    calc: &RadialCalculus,
    f: &RadialProfile,
    gamma: f64,
    b_beyond: f64,
    ladder: &[f64],
) -> Result<BoundProbeReport> {
    kernel_decay_core(calc, f, gamma, b_beyond, ladder)
}

/// Commutator residual ‖θ_ρ D^r φ - D^r(θ_ρ φ)‖_{L²}.
pub fn commutator_residual(
    calc: &RadialCalculus,
    phi: &RadialProfile,
    r_ord: f64,
    rho: f64,
    theta: &CutoffSpec,
) -> Result<f64> {
    if !(r_ord > 0.0 && r_ord < 2.0) {
        return Err(Error::OutOfRange {
            what: "r",
            details: format!("commutator probe covers 0 < r < 2, got {r_ord}"),
        });
    }
    if !(rho >= 1.0 && 2.0 * rho <= calc.grid().r_max()) {
        return Err(Error::OutOfRange {
            what: "rho",
            details: format!(
                "need 1 <= rho and 2 rho <= r_max = {}, got {rho}",
                calc.grid().r_max()
            ),
        });
    }
    let dr_phi = calc.fractional_derivative(phi, r_ord)?;
    let term1 = dr_phi.map(|r, v| theta.eval_scaled(r, rho) * v);
    let cut_phi = phi.map(|r, v| theta.eval_scaled(r, rho) * v);
    let term2 = calc.fractional_derivative(&cut_phi, r_ord)?;
    term1.linear_combination(1.0, &term2, -1.0)?.lp_norm(2.0)
}

/// ‖D^r φ‖_{L²(|x| > ρ)} by tail quadrature.
pub fn exterior_tail_mass(
    calc: &RadialCalculus,
    phi: &RadialProfile,
    r_ord: f64,
    rho: f64,
) -> Result<f64> {
    let v = calc.fractional_derivative(phi, r_ord)?;
    let s = calc.sphere_area();
    let total: f64 = calc
        .grid()
        .nodes()
        .iter()
        .zip(calc.grid().weights())
        .zip(v.values())
        .filter(|((&r, _), _)| r > rho)
        .map(|((_, &w), &x)| w * x * x)
        .sum();
    Ok((s * total).sqrt())
}

/// Budget triple for the three-norm superlevel bound.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PqrBudget {
    pub p: f64,
    pub q: f64,
    pub rho: f64,
    /// cap on ‖f‖_p^p
    pub alpha0: f64,
    /// floor on ‖f‖_q^q
    pub beta0: f64,
    /// cap on ‖f‖_ρ^ρ
    pub gamma0: f64,
}

/// The calibrated (η*, c*) for a budget triple: every f meeting the budget
/// satisfies |{|f| > η*}| ≥ c*.
pub fn pqr_thresholds(b: &PqrBudget) -> Result<(f64, f64)> {
    if !(1.0 <= b.p && b.p < b.q && b.q < b.rho) {
        return Err(Error::OutOfRange {
            what: "(p, q, rho)",
            details: format!("need 1 <= p < q < rho, got ({}, {}, {})", b.p, b.q, b.rho),
        });
    }
    if !(b.alpha0 > 0.0 && b.beta0 > 0.0 && b.gamma0 > 0.0) {
        return Err(Error::OutOfRange {
            what: "budgets",
            details: "all three norm budgets must be positive".into(),
        });
    }
    let eta = (b.beta0 / (2.0 * b.alpha0)).powf(1.0 / (b.q - b.p));
    let c = (0.5 * b.beta0 / b.gamma0.powf(b.q / b.rho)).powf(b.rho / (b.rho - b.q));
    Ok((eta, c))
}
