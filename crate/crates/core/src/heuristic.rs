//! The constants `∫_1^∞ du / √(u³ − 1)` (for `k < 0`) and
//! `∫_{−1}^∞ du / √(u³ + 1)` (for `k > 0`), and the predicted point count
//! `3|k|^{5/6} N^{2/3} · constant`.
//!
//! Both integrands blow up like `(3(u ∓ 1))^{-1/2}` at the finite endpoint.
//! The primary method substitutes `u = ±1 + s²`, which makes the integrand
//! smooth, runs adaptive Simpson up to `u = A` and adds the tail in closed
//! form. An exp-sinh rule provides an independent second evaluation.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Which of the two constants applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KSign {
    Positive,
    Negative,
}

impl KSign {
    pub fn of(k: i64) -> Result<Self> {
        match k {
            0 => Err(Error::ZeroK),
            k if k > 0 => Ok(KSign::Positive),
            _ => Ok(KSign::Negative),
        }
    }

    /// `+1` for `u³ + 1`, `−1` for `u³ − 1`.
    fn sigma(self) -> f64 {
        match self {
            KSign::Positive => 1.0,
            KSign::Negative => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeuristicPrediction {
    pub k: i64,
    #[serde(rename = "N")]
    pub n: u64,
    pub constant: f64,
    pub predicted: f64,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol <= 1e-4 {
        Ok(())
    } else {
        Err(Error::Tolerance(tol))
    }
}

// Simpson's own error estimate stops being meaningful well above f64 epsilon.
const TOL_FLOOR: f64 = 1e-13;

/// The integral for `sign`, accurate to `tol`.
pub fn integral_constant(sign: KSign, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let tol = tol.max(TOL_FLOOR);
    let sigma = sign.sigma();

    // For u > A, (u³ + σ)^{-1/2} = u^{-3/2} (1 − σ/(2u³) + 3/(8u⁶) − …), so the
    // tail is 2/√A − σ/(7 A^{7/2}) with remainder below 3/(52 A^{13/2}).
    let mut a = 4.0f64;
    while 3.0 / (52.0 * a.powf(6.5)) > tol / 2.0 {
        a *= 1.5;
    }
    let tail = 2.0 / a.sqrt() - sigma / (7.0 * a.powf(3.5));

    // u = −σ + s² turns du / √(u³ + σ) into 2 ds / √(s⁴ − 3σs² + 3).
    let g = |s: f64| {
        let s2 = s * s;
        2.0 / (s2 * s2 - 3.0 * sigma * s2 + 3.0).sqrt()
    };
    let s_max = (a + sigma).sqrt();
    Ok(adaptive_simpson(&g, 0.0, s_max, tol / 2.0) + tail)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f((a + b) / 2.0));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 60)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = (a + b) / 2.0;
    let (lm, rm) = ((a + m) / 2.0, (m + b) / 2.0);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// The same integral by exp-sinh quadrature on `v = u ± 1 ∈ (0, ∞)`, with
/// `u³ + σ = v (v² − 3σv + 3)` evaluated without cancellation. Step halving
/// stops once successive estimates agree to `tol`.
pub fn integral_constant_double_exponential(sign: KSign, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let tol = tol.max(TOL_FLOOR);
    let sigma = sign.sigma();
    let half_pi = std::f64::consts::FRAC_PI_2;
    // Integrand in t after v = exp(π/2 · sinh t), dv = v · π/2 · cosh t dt.
    let term = |t: f64| {
        let v = (half_pi * t.sinh()).exp();
        if v == 0.0 || !v.is_finite() {
            return 0.0;
        }
        half_pi * t.cosh() * v.sqrt() / (v * v - 3.0 * sigma * v + 3.0).sqrt()
    };
    let t_max: f64 = 4.5;
    let mut h: f64 = 0.5;
    let mut prev = f64::NAN;
    loop {
        let n = (t_max / h).ceil() as i64;
        let sum: f64 = (-n..=n).map(|i| term(i as f64 * h)).sum();
        let estimate = h * sum;
        if (estimate - prev).abs() <= tol || h < 1e-4 {
            return Ok(estimate);
        }
        prev = estimate;
        h /= 2.0;
    }
}

/// `3 |k|^{5/6} N^{2/3} · constant`.
pub fn predicted_sum(k: i64, n: u64, tol: f64) -> Result<HeuristicPrediction> {
    let sign = KSign::of(k)?;
    if n == 0 {
        return Err(Error::EmptyRange);
    }
    let constant = integral_constant(sign, tol)?;
    let predicted = 3.0 * (k.unsigned_abs() as f64).powf(5.0 / 6.0) * (n as f64).powf(2.0 / 3.0) * constant;
    Ok(HeuristicPrediction {
        k,
        n,
        constant,
        predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        let neg = integral_constant(KSign::Negative, 1e-10).unwrap();
        let pos = integral_constant(KSign::Positive, 1e-10).unwrap();
        assert!((neg - 2.428_650_6).abs() < 1e-6, "{neg}");
        assert!((pos - 4.206_546).abs() < 1e-5, "{pos}");
    }

    #[test]
    fn methods_agree() {
        for sign in [KSign::Negative, KSign::Positive] {
            let a = integral_constant(sign, 1e-11).unwrap();
            let b = integral_constant_double_exponential(sign, 1e-11).unwrap();
            assert!((a - b).abs() < 1e-9, "{sign:?}: {a} vs {b}");
        }
    }

    #[test]
    fn coarse_tolerance_is_close() {
        for sign in [KSign::Negative, KSign::Positive] {
            let fine = integral_constant(sign, 1e-8).unwrap();
            let coarse = integral_constant(sign, 1e-4).unwrap();
            assert!((fine - coarse).abs() <= 1e-4);
        }
    }

    #[test]
    fn bad_tolerances() {
        for tol in [0.0, -1e-6, 1e-3, f64::NAN] {
            assert!(integral_constant(KSign::Negative, tol).is_err());
        }
        assert!(predicted_sum(0, 10, 1e-8).is_err());
        assert!(predicted_sum(2, 0, 1e-8).is_err());
    }

    #[test]
    fn prediction_examples() {
        let p = predicted_sum(-2, 1000, 1e-10).unwrap();
        assert!((p.predicted - 1298.2).abs() < 0.1, "{}", p.predicted);
        let one = predicted_sum(-2, 1, 1e-10).unwrap();
        assert!((one.predicted - 3.0 * 2f64.powf(5.0 / 6.0) * one.constant).abs() < 1e-12);
        let ten = predicted_sum(-2, 10, 1e-10).unwrap();
        assert!((ten.predicted / one.predicted - 10f64.powf(2.0 / 3.0)).abs() < 1e-12);
    }
}
