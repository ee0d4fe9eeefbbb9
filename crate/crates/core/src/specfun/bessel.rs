//! Bessel functions of real order: modified K_ν, J_ν, and the Hankel
//! function H⁽¹⁾_ν = J_ν + iY_ν.

use num_complex::Complex;

use super::SpecFunConfig;
use crate::error::{LabError, Result};
use crate::quad::{exp_sinh, tanh_sinh, Tolerance};
use crate::scalar::{lit, to_f64, Real};

/// Orders above this are outside the validated range.
pub const MAX_ORDER: f64 = 5.0;

/// Below this argument J_ν uses the Schläfli integral; above, Hankel's expansion.
const ASYMPTOTIC_MIN_X: f64 = 25.0;

/// Integrand cut-off relative to its peak.
const LN_CUTOFF: f64 = 41.446_531_673_892_82; // ln 1e18

/// `ln cosh v` without overflow.
fn ln_cosh<T: Real>(v: T) -> T {
    let a = v.abs();
    a + (-(a + a)).exp().ln_1p() - T::LN_2()
}

/// Modified Bessel function K_ν(x) for `0 < ν ≤ 5`, `x > 0`.
///
/// Tanh-sinh quadrature of `∫₀^∞ e^{-x cosh u} cosh(νu) du`, truncated
/// where the integrand falls below 1e-18 of its peak. The integrand is
/// scaled by its peak so that small `x` does not overflow the sum.
pub fn bessel_k<T: Real>(nu: T, x: T, cfg: &SpecFunConfig<T>) -> Result<T> {
    if !(nu > T::zero()) || nu > lit(MAX_ORDER) {
        return Err(LabError::Domain(format!("K_ν needs 0 < ν ≤ {MAX_ORDER}, got ν = {}", to_f64(nu))));
    }
    if !(x > T::zero()) || !x.is_finite() {
        return Err(LabError::Domain(format!("K_ν needs x > 0, got x = {}", to_f64(x))));
    }

    // ln of the integrand after pulling out e^{-x}
    let ln_g = |u: T| -> T {
        let half_u = u / lit(2.0);
        let sh = half_u.sinh();
        -(x * lit::<T>(2.0) * sh * sh) + ln_cosh(nu * u)
    };

    // Walk out until the integrand has dropped far below its running peak.
    let cutoff: T = lit(LN_CUTOFF);
    let step: T = lit(0.25);
    let mut peak = ln_g(T::zero());
    let mut u = T::zero();
    let mut prev = peak;
    loop {
        u = u + step;
        let v = ln_g(u);
        peak = peak.max(v);
        if v < prev && v < peak - cutoff {
            break;
        }
        prev = v;
        if u > lit(1e4) {
            return Err(LabError::Solver("K_ν integrand did not decay".into()));
        }
    }
    let upper = u;

    let tol = Tolerance::relative(T::epsilon() * lit(64.0));
    let r = tanh_sinh(|v| (ln_g(v) - peak).exp(), T::zero(), upper, tol, cfg.quad_max_levels);
    let value = (peak - x).exp() * r.value;
    if !value.is_finite() {
        return Err(LabError::Domain(format!(
            "K_ν({}) is not representable at ν = {}",
            to_f64(x),
            to_f64(nu)
        )));
    }
    Ok(value)
}

/// Hankel's asymptotic series: returns `(P, Q)` with
/// `H⁽¹⁾_ν(x) = √(2/(πx)) e^{i(x - νπ/2 - π/4)} (P + iQ)`.
pub(crate) fn hankel_asymptotic_pq<T: Real>(nu: T, x: T) -> (T, T) {
    let mu = lit::<T>(4.0) * nu * nu;
    let eight_x = lit::<T>(8.0) * x;
    let mut p = T::one();
    let mut q = T::zero();
    let mut term = T::one();
    let mut last = T::infinity();
    for k in 1..200usize {
        let odd: T = lit((2 * k - 1) as f64);
        term = term * (mu - odd * odd) / (lit::<T>(k as f64) * eight_x);
        let mag = term.abs();
        if mag > last || mag == T::zero() {
            break;
        }
        last = mag;
        // a_k / x^k enters P for even k, Q for odd k, with alternating signs
        let sign = if (k / 2) % 2 == 0 { T::one() } else { -T::one() };
        if k % 2 == 0 {
            p = p + sign * term;
        } else {
            q = q + sign * term;
        }
        if mag < T::epsilon() * lit(1e-3) {
            break;
        }
    }
    (p, q)
}

/// Bessel function of the first kind J_ν(x) for real order and `x > 0`.
pub fn bessel_j<T: Real>(nu: T, x: T, cfg: &SpecFunConfig<T>) -> Result<T> {
    if !(x > T::zero()) || !x.is_finite() {
        return Err(LabError::Domain(format!("J_ν needs x > 0, got x = {}", to_f64(x))));
    }
    if nu.abs() > lit(MAX_ORDER) {
        return Err(LabError::Domain(format!("|ν| ≤ {MAX_ORDER} required, got {}", to_f64(nu))));
    }
    if x >= lit(ASYMPTOTIC_MIN_X) {
        Ok(j_asymptotic(nu, x))
    } else {
        Ok(j_schlafli(nu, x, cfg))
    }
}

fn j_asymptotic<T: Real>(nu: T, x: T) -> T {
    let (p, q) = hankel_asymptotic_pq(nu, x);
    let omega = x - nu * T::FRAC_PI_2() - T::FRAC_PI_4();
    let amp = (lit::<T>(2.0) / (T::PI() * x)).sqrt();
    let (s, c) = omega.sin_cos();
    amp * (p * c - q * s)
}

/// J_ν(x) = (1/π)∫₀^π cos(νθ - x sin θ) dθ - (sin νπ/π)∫₀^∞ e^{-x sinh t - νt} dt
fn j_schlafli<T: Real>(nu: T, x: T, cfg: &SpecFunConfig<T>) -> T {
    let tol = Tolerance::absolute(T::epsilon() * lit(8.0));
    let oscillatory = tanh_sinh(|th: T| (nu * th - x * th.sin()).cos(), T::zero(), T::PI(), tol, cfg.quad_max_levels);
    let mut value = oscillatory.value / T::PI();
    let s = (nu * T::PI()).sin();
    if s != T::zero() {
        let tail = exp_sinh(
            |t: T| (-(x * t.sinh()) - nu * t).exp(),
            T::zero(),
            Tolerance::relative(T::epsilon() * lit(16.0)),
            cfg.quad_max_levels,
        );
        value = value - s / T::PI() * tail.value;
    }
    value
}

fn reject_integer_order<T: Real>(nu: T) -> Result<()> {
    if nu == nu.round() {
        return Err(LabError::Domain(format!(
            "integer order ν = {} is not supported; perturb ν (e.g. by 1e-7) and retry",
            to_f64(nu)
        )));
    }
    Ok(())
}

/// Bessel function of the second kind for non-integer order,
/// `Y_ν = (J_ν cos νπ - J_{-ν}) / sin νπ`.
pub fn bessel_y<T: Real>(nu: T, x: T, cfg: &SpecFunConfig<T>) -> Result<T> {
    reject_integer_order(nu)?;
    let (s, c) = (nu * T::PI()).sin_cos();
    let j_pos = bessel_j(nu, x, cfg)?;
    let j_neg = bessel_j(-nu, x, cfg)?;
    Ok((j_pos * c - j_neg) / s)
}

/// Hankel function of the first kind H⁽¹⁾_ν(x) = J_ν(x) + iY_ν(x), non-integer ν.
pub fn hankel1<T: Real>(nu: T, x: T, cfg: &SpecFunConfig<T>) -> Result<Complex<T>> {
    if !(nu > T::zero()) {
        return Err(LabError::Domain(format!("H⁽¹⁾_ν needs ν > 0, got {}", to_f64(nu))));
    }
    reject_integer_order(nu)?;
    let j = bessel_j(nu, x, cfg)?;
    let y = bessel_y(nu, x, cfg)?;
    Ok(Complex::new(j, y))
}
