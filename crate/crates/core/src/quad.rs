//! One-dimensional quadrature helpers for the singular angular kernels.
//!
//! Smooth pieces use 16-point Gauss-Legendre; integrable endpoint
//! singularities are handled by dyadic refinement toward the singular end
//! (Gauss nodes never touch the endpoints, so kernels that blow up at the
//! diagonal are evaluated only at interior points). Power-law piece
//! sequences have an exactly geometric tail, which is summed by
//! extrapolation once the piece ratio stabilizes.

use crate::error::{Error, Result};

/// 16-point Gauss-Legendre nodes (positive half) and weights on [-1, 1].
const GL16_X: [f64; 8] = [
    0.09501250983763744,
    0.2816035507792589,
    0.45801677765722737,
    0.6178762444026438,
    0.755404408355003,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL16_W: [f64; 8] = [
    0.1894506104550685,
    0.18260341504492358,
    0.16915651939500254,
    0.14959598881657674,
    0.12462897125553388,
    0.09515851168249279,
    0.062253523938647894,
    0.027152459411754096,
];

/// ∫_a^b f dx by a single 16-point Gauss-Legendre rule.
pub fn gl16<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut s = 0.0;
    for k in 0..8 {
        s += GL16_W[k] * (f(c + h * GL16_X[k]) + f(c - h * GL16_X[k]));
    }
    s * h
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularEnd {
    Left,
    Right,
}

/// ∫_a^b f dx where f may have an integrable singularity at one endpoint.
pub fn dyadic_singular<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    end: SingularEnd,
    rel_tol: f64,
    abs_tol: f64,
    max_levels: usize,
) -> Result<f64> {
    if !(b > a) {
        return Ok(0.0);
    }
    let span = b - a;
    let mut total = 0.0;
    let mut outer = span;
    let mut prev_piece = f64::NAN;
    let mut prev_ratio = f64::NAN;
    for level in 0..max_levels {
        let inner = 0.5 * outer;
        let (lo, hi) = match end {
            SingularEnd::Left => (a + inner, a + outer),
            SingularEnd::Right => (b - outer, b - inner),
        };
        let piece = gl16(f, lo, hi);
        total += piece;
        let tol = abs_tol + rel_tol * total.abs();
        // never stop on leading zero pieces: mass may sit further in
        if level > 2 && total != 0.0 && piece.abs() < tol {
            return Ok(total);
        }
        if prev_piece.is_finite() && prev_piece != 0.0 {
            let ratio = piece / prev_piece;
            // geometric tail: once the ratio is stable and contracting,
            // the remaining pieces sum to piece * ratio / (1 - ratio)
            if level >= 8
                && ratio > 0.0
                && ratio < 0.97
                && prev_ratio.is_finite()
                && (ratio - prev_ratio).abs() < 0.005 * (1.0 - ratio)
            {
                return Ok(total + piece * ratio / (1.0 - ratio));
            }
            prev_ratio = ratio;
        }
        prev_piece = piece;
        outer = inner;
        if outer < f64::EPSILON * span {
            return Ok(total);
        }
    }
    Err(Error::QuadratureNoConvergence(format!(
        "dyadic refinement exhausted {max_levels} levels on [{a}, {b}]"
    )))
}

/// Adaptive Simpson on a smooth integrand.
pub fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: usize,
) -> Result<f64> {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    #[allow(clippy::too_many_arguments)]
    fn rec<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: usize,
    ) -> Result<f64> {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if delta.abs() <= 15.0 * tol {
            return Ok(left + right + delta / 15.0);
        }
        if depth == 0 {
            return Err(Error::QuadratureNoConvergence(format!(
                "adaptive Simpson depth exhausted on [{a}, {b}]"
            )));
        }
        Ok(rec(f, a, fa, m, fm, left, lm, flm, 0.5 * tol, depth - 1)?
            + rec(f, m, fm, b, fb, right, rm, frm, 0.5 * tol, depth - 1)?)
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    rec(f, a, fa, b, fb, whole, m, fm, tol, max_depth)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gl16_is_exact_on_polynomials() {
        let got = gl16(&|x: f64| x.powi(10), 0.0, 2.0);
        let want = 2.0f64.powi(11) / 11.0;
        assert!((got - want).abs() / want < 1e-14);
    }

    #[test]
    fn dyadic_handles_power_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2: piece ratio is exactly 2^{-1/2}, so the
        // geometric extrapolation closes the tail.
        let got = dyadic_singular(
            &|x: f64| x.powf(-0.5),
            0.0,
            1.0,
            SingularEnd::Left,
            1e-12,
            0.0,
            80,
        )
        .unwrap();
        assert!((got - 2.0).abs() < 1e-10, "got {got}");
        // ∫_0^1 (1-x)^{-0.3} dx = 1/0.7
        let got = dyadic_singular(
            &|x: f64| (1.0 - x).powf(-0.3),
            0.0,
            1.0,
            SingularEnd::Right,
            1e-12,
            0.0,
            80,
        )
        .unwrap();
        assert!((got - 1.0 / 0.7).abs() < 1e-10, "got {got}");
    }

    #[test]
    fn dyadic_smooth_integrand() {
        let got = dyadic_singular(
            &|x: f64| x.sin(),
            0.0,
            1.0,
            SingularEnd::Left,
            1e-13,
            0.0,
            80,
        )
        .unwrap();
        let want = 1.0 - 1.0f64.cos();
        assert!((got - want).abs() < 1e-11, "got {got} want {want}");
    }

    #[test]
    fn adaptive_simpson_smooth() {
        let got = adaptive(&|x: f64| (-x * x).exp(), 0.0, 6.0, 1e-12, 40).unwrap();
        let want = 0.5 * std::f64::consts::PI.sqrt() * statrs::function::erf::erf(6.0);
        assert!((got - want).abs() < 1e-10);
    }
}
