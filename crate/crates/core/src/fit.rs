//! Log-log tail regression.

use crate::error::{Error, Result};
use crate::profile::RadialProfile;
use serde::Serialize;

/// Fitted power-law tail |u(r)| ≈ c · r^{-σ} over a radius window.
#[derive(Debug, Clone, Serialize)]
pub struct DecayFit {
    pub sigma_hat: f64,
    pub c_hat: f64,
    pub window: (f64, f64),
    /// RMS misfit of log|u| against the fitted line.
    pub residual: f64,
    pub n_points: usize,
    /// True when u changes sign among the fitted samples.
    pub sign_change: bool,
    /// True when the residual is below the power-law-regime cap (0.1).
    pub power_law_regime: bool,
}

/// Residual cap below which the window is called a clean power-law regime.
pub const POWER_LAW_RESIDUAL_CAP: f64 = 0.1;

/// Minimum usable samples for the regression.
pub const MIN_FIT_POINTS: usize = 12;

/// Ordinary least squares of log|u| on log r over the window. Zero values
/// are dropped; fewer than `MIN_FIT_POINTS` usable samples is an error.
pub fn tail_decay_fit(u: &RadialProfile, window: (f64, f64)) -> Result<DecayFit> {
    let (lo, hi) = window;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::OutOfRange {
            what: "window",
            details: format!("need 0 < lo < hi, got [{lo}, {hi}]"),
        });
    }
    if hi > u.grid().r_max() || lo < u.grid().r_min() {
        return Err(Error::OutOfRange {
            what: "window",
            details: format!(
                "window [{lo}, {hi}] outside grid [{}, {}]",
                u.grid().r_min(),
                u.grid().r_max()
            ),
        });
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut pos = false;
    let mut neg = false;
    for (&r, &v) in u.grid().nodes().iter().zip(u.values()) {
        if r < lo || r > hi || v == 0.0 {
            continue;
        }
        pos |= v > 0.0;
        neg |= v < 0.0;
        xs.push(r.ln());
        ys.push(v.abs().ln());
    }
    let n = xs.len();
    if n < MIN_FIT_POINTS {
        return Err(Error::TooFewPoints {
            got: n,
            need: MIN_FIT_POINTS,
        });
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let residual = (rss / nf).sqrt();
    Ok(DecayFit {
        sigma_hat: -slope,
        c_hat: intercept.exp(),
        window,
        residual,
        n_points: n,
        sign_change: pos && neg,
        power_law_regime: residual < POWER_LAW_RESIDUAL_CAP,
    })
}
