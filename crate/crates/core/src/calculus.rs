//! The radial operator context: transforms, Fourier multipliers, and norms.
//!
//! A `RadialCalculus` owns a physical/frequency grid pair and the dense
//! Hankel kernels between them. Multiplier operations (`D^s`, Riesz
//! potentials) act on the profile's cached spectrum when one is present and
//! attach the multiplied spectrum to their result, so composed multipliers
//! combine exactly; only profiles born from raw samples pay a forward
//! quadrature. Squared norms are spectral moments
//!
//! ```text
//! ‖u‖²_t = |S^{d-1}| ∫_0^∞ ξ^t |û(ξ)|² ξ^{d-1} dξ
//! ```
//!
//! evaluated with an origin patch that closes the cell [0, ξ_1] against a
//! locally constant |û|²; the patch carries the exact power ξ^{t+d}/(t+d),
//! which matters for the slowly convergent low-frequency mass of negative-
//! order norms.

use crate::convention::{riesz_constant, sphere_area};
use crate::error::{Error, Result};
use crate::grid::RadialGrid;
use crate::hankel::HankelTransform;
use crate::profile::{RadialProfile, SpectralProfile};
use std::sync::Arc;

pub struct RadialCalculus {
    transform: HankelTransform,
    sphere: f64,
}

impl RadialCalculus {
    /// Context on the default grid: log-spaced [1e-4, 1e3] with `n` nodes.
    pub fn new(d: u32, n: usize) -> Result<Self> {
        Self::with_grid(RadialGrid::log_spaced(d, 1e-4, 1e3, n)?)
    }

    pub fn with_grid(grid: RadialGrid) -> Result<Self> {
        let physical = Arc::new(grid);
        let frequency = Arc::new(physical.frequency_companion()?);
        let transform = HankelTransform::new(Arc::clone(&physical), frequency)?;
        let sphere = sphere_area(physical.d());
        Ok(RadialCalculus { transform, sphere })
    }

    pub fn d(&self) -> u32 {
        self.grid().d()
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        self.transform.physical()
    }

    pub fn freq_grid(&self) -> &Arc<RadialGrid> {
        self.transform.frequency()
    }

    pub fn transform(&self) -> &HankelTransform {
        &self.transform
    }

    pub fn sphere_area(&self) -> f64 {
        self.sphere
    }

    /// Forward Hankel transform by quadrature. Never consults the cache:
    /// this is the operation whose fidelity the self-tests measure.
    pub fn hankel_forward(&self, u: &RadialProfile) -> Result<SpectralProfile> {
        self.transform.forward(u)
    }

    /// Inverse Hankel transform by quadrature.
    pub fn hankel_inverse(&self, uh: &SpectralProfile) -> Result<RadialProfile> {
        self.transform.inverse(uh)
    }

    /// The spectrum of a profile, computing and caching it on first use.
    pub fn spectrum_of(&self, u: &RadialProfile) -> Result<Arc<SpectralProfile>> {
        if let Some(s) = u.cached_spectrum() {
            if s.grid().len() != self.freq_grid().len() {
                return Err(Error::GridMismatch);
            }
            return Ok(Arc::clone(s));
        }
        let s = Arc::new(self.transform.forward(u)?);
        u.attach_spectrum(Arc::clone(&s));
        Ok(s)
    }

    /// Materialize a profile from a prescribed spectrum; the result carries
    /// that spectrum as its cache.
    pub fn profile_from_spectrum(&self, spectrum: SpectralProfile) -> Result<RadialProfile> {
        let p = self.transform.inverse(&spectrum)?;
        p.attach_spectrum(Arc::new(spectrum));
        Ok(p)
    }

    /// Apply a spectral multiplier m(ξ) and return the profile together with
    /// its multiplied spectrum attached.
    pub fn apply_multiplier<F: Fn(f64) -> f64>(
        &self,
        u: &RadialProfile,
        m: F,
    ) -> Result<RadialProfile> {
        let uh = self.spectrum_of(u)?;
        let g: Vec<f64> = self
            .freq_grid()
            .nodes()
            .iter()
            .zip(uh.values())
            .map(|(&xi, &v)| m(xi) * v)
            .collect();
        self.profile_from_spectrum(SpectralProfile::new(Arc::clone(self.freq_grid()), g)?)
    }

    /// Fractional derivative D^s: the multiplier |ξ|^s. `s = 0` is the
    /// identity and returns the input unchanged. Negative orders are
    /// Riesz-type integrations and require s > -d.
    pub fn fractional_derivative(&self, u: &RadialProfile, s: f64) -> Result<RadialProfile> {
        if s == 0.0 {
            return Ok(u.clone());
        }
        if s <= -(self.d() as f64) {
            return Err(Error::LowFrequencyDivergence {
                power: s,
                d: self.d(),
            });
        }
        self.apply_multiplier(u, |xi| xi.powf(s))
    }

    /// Riesz potential |x|^{-α} ⋆ u = c(α,d) D^{-(d-α)} u by the spectral
    /// route.
    pub fn riesz_potential_spectral(&self, u: &RadialProfile, alpha: f64) -> Result<RadialProfile> {
        let dd = self.d() as f64;
        if !(alpha > 0.0 && alpha < dd) {
            return Err(Error::OutOfRange {
                what: "alpha",
                details: format!("need 0 < alpha < d = {dd}, got {alpha}"),
            });
        }
        let c = riesz_constant(alpha, self.d());
        self.apply_multiplier(u, |xi| c * xi.powf(alpha - dd))
    }

    /// Quadrature weights m_j for the spectral moment of power t:
    /// Σ_j m_j v_j² ≈ |S^{d-1}| ∫ ξ^t v(ξ)² ξ^{d-1} dξ, origin patch on j=0.
    pub fn spectral_moment_weights(&self, t: f64) -> Result<Vec<f64>> {
        let dd = self.d() as f64;
        if t + dd <= 0.0 {
            return Err(Error::LowFrequencyDivergence {
                power: t,
                d: self.d(),
            });
        }
        let g = self.freq_grid();
        let mut m: Vec<f64> = g
            .nodes()
            .iter()
            .zip(g.dr_weights())
            .map(|(&xi, &v)| self.sphere * v * xi.powf(t + dd - 1.0))
            .collect();
        m[0] += self.sphere * g.nodes()[0].powf(t + dd) / (t + dd);
        Ok(m)
    }

    /// |S^{d-1}| ∫ ξ^t |v|² ξ^{d-1} dξ for a spectral profile, with a decay
    /// check at the band edge.
    pub fn spectral_moment(&self, v: &SpectralProfile, t: f64) -> Result<f64> {
        let m = self.spectral_moment_weights(t)?;
        let vals = v.values();
        let mut total = 0.0;
        let mut peak = 0.0f64;
        for (w, &x) in m.iter().zip(vals) {
            let dens = w * x * x;
            total += dens;
            peak = peak.max(dens);
        }
        let tail = m[m.len() - 1] * vals[vals.len() - 1].powi(2);
        if peak > 0.0 && tail > 1e-8 * peak {
            return Err(Error::SpectralTail {
                fraction: tail / peak,
            });
        }
        Ok(total)
    }

    /// Homogeneous Sobolev norm ‖D^s u‖_{L²} computed in frequency.
    pub fn sobolev_norm(&self, u: &RadialProfile, s: f64) -> Result<f64> {
        if s < 0.0 {
            return Err(Error::OutOfRange {
                what: "s",
                details: format!("sobolev_norm needs s >= 0, got {s}"),
            });
        }
        let uh = self.spectrum_of(u)?;
        Ok(self.spectral_moment(&uh, 2.0 * s)?.sqrt())
    }

    /// ‖ |x|^{-α} ⋆ |u| ‖_{L²} by the spectral route applied to |u|.
    pub fn riesz_norm(&self, u: &RadialProfile, alpha: f64) -> Result<f64> {
        let dd = self.d() as f64;
        if !(alpha > dd / 2.0 && alpha < dd) {
            return Err(Error::OutOfRange {
                what: "alpha",
                details: format!("riesz_norm needs d/2 < alpha < d, got {alpha}"),
            });
        }
        let abs_u = if u.values().iter().all(|&v| v >= 0.0) {
            u.clone() // keep the cache: |u| = u
        } else {
            u.map(|_, v| v.abs())
        };
        let uh = self.spectrum_of(&abs_u)?;
        let c = riesz_constant(alpha, self.d());
        Ok((c * c * self.spectral_moment(&uh, -2.0 * (dd - alpha))?).sqrt())
    }

    /// Rescale v to u(x) = λ v(μ x) with ‖D^s u‖ = ‖|x|^{-α} ⋆ |u|‖ = 1.
    /// Returns (u, λ, μ).
    pub fn normalize_to_unit(
        &self,
        v: &RadialProfile,
        alpha: f64,
        s: f64,
    ) -> Result<(RadialProfile, f64, f64)> {
        let dd = self.d() as f64;
        let a = self.sobolev_norm(v, s)?;
        let b = self.riesz_norm(v, alpha)?;
        if !(a.is_finite() && b.is_finite() && a > 0.0 && b > 0.0) {
            return Err(Error::DegenerateInput(format!(
                "normalize_to_unit needs nonzero finite norms, got ‖D^s v‖ = {a}, riesz = {b}"
            )));
        }
        let mu = (a / b).powf(1.0 / (alpha - s - dd));
        let lambda = mu.powf(dd / 2.0 - s) / a;
        Ok((v.rescale(lambda, mu)?, lambda, mu))
    }

    /// Fraction of spectral L² mass outside the band [lo, hi]; used to
    /// decide whether a profile counts as band-limited on this grid.
    pub fn spectral_mass_outside(&self, u: &RadialProfile, lo: f64, hi: f64) -> Result<f64> {
        let uh = self.spectrum_of(u)?;
        let m = self.spectral_moment_weights(0.0)?;
        let mut inside = 0.0;
        let mut outside = 0.0;
        for ((&xi, w), &v) in self.freq_grid().nodes().iter().zip(&m).zip(uh.values()) {
            let dens = w * v * v;
            if xi < lo || xi > hi {
                outside += dens;
            } else {
                inside += dens;
            }
        }
        Ok(outside / (inside + outside))
    }
}

impl std::fmt::Debug for RadialCalculus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialCalculus")
            .field("transform", &self.transform)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn calc(d: u32, n: usize) -> RadialCalculus {
        RadialCalculus::new(d, n).unwrap()
    }

    fn gaussian(c: &RadialCalculus) -> RadialProfile {
        RadialProfile::sample(c.grid(), |r| (-PI * r * r).exp()).unwrap()
    }

    #[test]
    fn parseval_on_gaussian() {
        for d in [2u32, 3, 5] {
            let c = calc(d, 1024);
            let u = gaussian(&c);
            let phys = u.lp_norm(2.0).unwrap();
            let spec = c.hankel_forward(&u).unwrap().l2_norm();
            assert!((phys - spec).abs() / phys < 1e-6, "d={d}: {phys} vs {spec}");
        }
    }

    #[test]
    fn d0_is_identity_exactly() {
        let c = calc(5, 256);
        let u = gaussian(&c);
        let v = c.fractional_derivative(&u, 0.0).unwrap();
        assert_eq!(u.values(), v.values());
    }

    #[test]
    fn multiplier_orders_compose_exactly() {
        // D^{s1} D^{s2} u = D^{s1+s2} u on the cached spectrum
        let c = calc(5, 512);
        let u = gaussian(&c);
        let lhs = c
            .fractional_derivative(&c.fractional_derivative(&u, 0.7).unwrap(), -1.2)
            .unwrap();
        let rhs = c.fractional_derivative(&u, -0.5).unwrap();
        for (a, b) in lhs.values().iter().zip(rhs.values()) {
            assert!((a - b).abs() <= 1e-8 * b.abs().max(1e-12), "{a} vs {b}");
        }
    }

    #[test]
    fn d2_matches_gaussian_laplacian() {
        // D² e^{-πr²} = (-Δ/4π²) e^{-π|x|²} = (d/(2π) - r²) e^{-πr²}
        let c = calc(5, 2048);
        let u = gaussian(&c);
        let d2 = c.fractional_derivative(&u, 2.0).unwrap();
        let mut num = 0.0;
        let mut den = 0.0;
        for ((&r, &w), &got) in c
            .grid()
            .nodes()
            .iter()
            .zip(c.grid().weights())
            .zip(d2.values())
        {
            let want = (5.0 / (2.0 * PI) - r * r) * (-PI * r * r).exp();
            num += w * (got - want) * (got - want);
            den += w * want * want;
        }
        let err = (num / den).sqrt();
        assert!(err < 1e-5, "rel L2 err {err:.3e}");
    }

    #[test]
    fn riesz_is_scaled_negative_derivative() {
        let c = calc(5, 512);
        let u = gaussian(&c);
        let alpha = 2.6;
        let lhs = c.riesz_potential_spectral(&u, alpha).unwrap();
        let cst = riesz_constant(alpha, 5);
        let rhs = c.fractional_derivative(&u, -(5.0 - alpha)).unwrap();
        for (a, b) in lhs.values().iter().zip(rhs.values()) {
            assert!(
                (a - cst * b).abs() <= 1e-14 * (cst * b).abs().max(1e-300),
                "{a} vs {}",
                cst * b
            );
        }
    }

    #[test]
    fn riesz_positivity_preserved() {
        let c = calc(5, 1024);
        let u = gaussian(&c);
        let pot = c.riesz_potential_spectral(&u, 3.0).unwrap();
        let floor = -1e-10 * pot.values().iter().fold(0.0f64, |m, &v| m.max(v));
        assert!(pot.values().iter().all(|&v| v >= floor));
    }

    #[test]
    fn sobolev_norm_gaussian_closed_form() {
        // ‖D^s e^{-πr²}‖₂² = |S^{d-1}| (1/2) (2π)^{-(2s+d)/2} Γ((2s+d)/2)
        let c = calc(5, 2048);
        let u = gaussian(&c);
        for s in [0.0, 0.5, 1.0, 2.3] {
            let want = (sphere_area(5)
                * 0.5
                * (2.0 * PI).powf(-(2.0 * s + 5.0) / 2.0)
                * statrs::function::gamma::gamma((2.0 * s + 5.0) / 2.0))
            .sqrt();
            let got = c.sobolev_norm(&u, s).unwrap();
            assert!((got - want).abs() / want < 1e-6, "s={s}: {got} vs {want}");
        }
    }

    #[test]
    fn sobolev_zero_order_equals_l2() {
        let c = calc(3, 1024);
        let u = gaussian(&c);
        let a = c.sobolev_norm(&u, 0.0).unwrap();
        let b = u.lp_norm(2.0).unwrap();
        assert!((a - b).abs() / b < 1e-6);
    }

    #[test]
    fn riesz_norm_gaussian_closed_form() {
        // ‖c D^{-(d-α)} e^{-πr²}‖₂² = c² |S| (1/2) (2π)^{-(2α-d)/2} Γ((2α-d)/2)
        let c = calc(5, 2048);
        let u = gaussian(&c);
        for alpha in [2.6, 3.0, 3.7] {
            let cst = riesz_constant(alpha, 5);
            let want = (cst
                * cst
                * sphere_area(5)
                * 0.5
                * (2.0 * PI).powf(-(2.0 * alpha - 5.0) / 2.0)
                * statrs::function::gamma::gamma((2.0 * alpha - 5.0) / 2.0))
            .sqrt();
            let got = c.riesz_norm(&u, alpha).unwrap();
            assert!(
                (got - want).abs() / want < 1e-6,
                "alpha={alpha}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn riesz_norm_sign_invariance_is_exact() {
        let c = calc(5, 512);
        let u = RadialProfile::sample(c.grid(), |r| (-r).exp() * (3.0 * r).sin()).unwrap();
        let neg = u.map(|_, v| -v);
        let a = c.riesz_norm(&u, 3.0).unwrap();
        let b = c.riesz_norm(&neg, 3.0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scale_covariance_of_norms() {
        // analytic dilation u_λ(r) = u(λ r):
        // ‖D^s u_λ‖ = λ^{s-d/2} ‖D^s u‖, riesz_norm(u_λ) = λ^{α-3d/2} riesz_norm(u)
        let c = calc(5, 2048);
        let u = gaussian(&c);
        let s = 1.0;
        let alpha = 3.0;
        let base_s = c.sobolev_norm(&u, s).unwrap();
        let base_r = c.riesz_norm(&u, alpha).unwrap();
        for lambda in [0.5f64, 2.0] {
            let ul =
                RadialProfile::sample(c.grid(), |r| (-PI * (lambda * r).powi(2)).exp()).unwrap();
            let got_s = c.sobolev_norm(&ul, s).unwrap();
            let want_s = lambda.powf(s - 2.5) * base_s;
            assert!(
                (got_s - want_s).abs() / want_s < 1e-6,
                "sobolev λ={lambda}: {got_s} vs {want_s}"
            );
            let got_r = c.riesz_norm(&ul, alpha).unwrap();
            let want_r = lambda.powf(alpha - 7.5) * base_r;
            assert!(
                (got_r - want_r).abs() / want_r < 1e-4,
                "riesz λ={lambda}: {got_r} vs {want_r}"
            );
        }
    }

    #[test]
    fn normalize_to_unit_gaussian() {
        let c = calc(5, 2048);
        let u = gaussian(&c);
        let (n, lambda, mu) = c.normalize_to_unit(&u, 3.0, 1.0).unwrap();
        let a = c.sobolev_norm(&n, 1.0).unwrap();
        let b = c.riesz_norm(&n, 3.0).unwrap();
        assert!((a - 1.0).abs() < 1e-4, "sobolev after normalize: {a}");
        assert!((b - 1.0).abs() < 1e-4, "riesz after normalize: {b}");
        assert!(lambda > 0.0 && mu > 0.0);

        // fixed point: renormalizing the normalized profile is trivial
        let (_, l2, m2) = c.normalize_to_unit(&n, 3.0, 1.0).unwrap();
        assert!((l2 - 1.0).abs() < 1e-4, "λ on fixed point: {l2}");
        assert!((m2 - 1.0).abs() < 1e-4, "μ on fixed point: {m2}");

        // amplitude scaling: 2v halves λ, μ unchanged (exact homogeneity)
        let two = u.map(|_, v| 2.0 * v);
        let (_, l3, m3) = c.normalize_to_unit(&two, 3.0, 1.0).unwrap();
        assert!((l3 - lambda / 2.0).abs() / lambda < 1e-12);
        assert!((m3 - mu).abs() / mu < 1e-12);
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let c = calc(5, 256);
        let z = RadialProfile::zeros(c.grid());
        assert!(c.normalize_to_unit(&z, 3.0, 1.0).is_err());
        assert!(c.fractional_derivative(&gaussian(&c), -5.0).is_err());
        assert!(c.riesz_potential_spectral(&gaussian(&c), 5.0).is_err());
        assert!(c.riesz_norm(&gaussian(&c), 2.0).is_err());
    }
}
