//! The completed zeta function ξ(s) = ½ s(s-1) π^{-s/2} Γ(s/2) ζ(s), its
//! critical-line restriction Ξ(t), truncated Hadamard products, and the
//! two closed forms of χ(s) that the harness compares.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::scalar::{lit, real, to_f64, Real};
use crate::specfun::{euler_gamma_const, log_gamma, zeta_pole_free, SpecFunConfig};
use crate::zeros::CriticalZero;

/// A ξ evaluation together with its argument.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiValue<T> {
    pub s: Complex<T>,
    pub value: Complex<T>,
}

/// `½ s π^{-s/2} Γ(s/2) · [(s-1)ζ(s)]`, the factors taken in the order
/// written. Fails only where Γ(s/2) has a pole.
fn xi_raw<T: Real>(s: Complex<T>, cfg: &SpecFunConfig<T>) -> Result<Complex<T>> {
    let half: T = lit(0.5);
    let half_s = s * half;
    let ln_pi_gamma = log_gamma(half_s)? - half_s * T::PI().ln();
    Ok(s * half * ln_pi_gamma.exp() * zeta_pole_free(s, cfg))
}

/// ξ(s) for any finite `s`.
///
/// Arguments with `Re s < ½` are mapped to `1 - s`; on the right half-plane
/// neither Γ(s/2) nor the pole-free `(s-1)ζ(s)` is singular, so the
/// removable singularities at 0 and 1 need no special casing.
pub fn xi<T: Real>(s: Complex<T>, cfg: &SpecFunConfig<T>) -> Complex<T> {
    let right = if s.re < lit(0.5) { real(T::one()) - s } else { s };
    match xi_raw(right, cfg) {
        Ok(v) => v,
        // Re s ≥ ½ keeps s/2 off the poles of Γ; only NaN input lands here
        Err(_) => Complex::new(T::nan(), T::nan()),
    }
}

/// ξ(s) straight from the defining product, with no reflection. Where
/// Γ(s/2) has a pole (s = 0, -2, -4, …) the limit is taken from [`xi`].
///
/// Used to test the functional equation, which [`xi`] satisfies by
/// construction.
pub fn xi_unreflected<T: Real>(s: Complex<T>, cfg: &SpecFunConfig<T>) -> Complex<T> {
    xi_raw(s, cfg).unwrap_or_else(|_| xi(s, cfg))
}

/// Ξ(t) = ξ(½ + it), which is real for real `t`.
///
/// The imaginary part of the complex evaluation must stay below
/// `1e-10·(1 + |Re|)`; otherwise an accuracy error is returned.
pub fn big_xi<T: Real>(t: T, cfg: &SpecFunConfig<T>) -> Result<T> {
    let z = xi(Complex::new(lit(0.5), t), cfg);
    let bound = lit::<T>(1e-10) * (T::one() + z.re.abs());
    if !(z.im.abs() <= bound) {
        return Err(LabError::Accuracy(format!(
            "Ξ({}) has imaginary residue {:e}",
            to_f64(t),
            to_f64(z.im)
        )));
    }
    Ok(z.re)
}

/// Truncation of the Hadamard product `½ e^{b₀s} Π (1 - s/ρ) e^{s/ρ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HadamardTruncation<T> {
    /// Number of zero pairs ½ ± itₙ used.
    pub zero_count: usize,
    pub b0: T,
    /// Merge each conjugate pair into one real quadratic factor.
    pub pairing: bool,
}

/// Partial Hadamard product over the first `trunc.zero_count` zero pairs.
pub fn hadamard_partial<T: Real>(
    s: Complex<T>,
    zeros: &[CriticalZero<T>],
    trunc: HadamardTruncation<T>,
) -> Result<Complex<T>> {
    if trunc.zero_count > zeros.len() {
        return Err(LabError::Argument(format!(
            "Hadamard truncation needs {} zeros, table has {}",
            trunc.zero_count,
            zeros.len()
        )));
    }
    let half: T = lit(0.5);
    let mut product = real(T::one());
    for z in &zeros[..trunc.zero_count] {
        if trunc.pairing {
            // (1 - s/ρ)(1 - s/ρ̄) = 1 + s(s-1)/|ρ|², and 1/ρ + 1/ρ̄ = 1/|ρ|²
            let inv = T::one() / (half * half + z.t * z.t);
            product = product * (real(T::one()) + s * (s - T::one()) * inv) * (s * inv).exp();
        } else {
            for rho in [Complex::new(half, z.t), Complex::new(half, -z.t)] {
                let q = s / rho;
                product = product * (real(T::one()) - q) * q.exp();
            }
        }
    }
    Ok((s * trunc.b0).exp() * product * half)
}

/// `d/ds ln ξ(s)` at `s = 0`: five-point central differences at `h` and
/// `h/2` with `h = 1e-3`, combined by one Richardson step.
pub fn estimate_b0<T: Real>(cfg: &SpecFunConfig<T>) -> T {
    let ln_xi = |x: T| xi(real(x), cfg).re.ln();
    let five_point = |h: T| {
        let two: T = lit(2.0);
        let eight: T = lit(8.0);
        (ln_xi(-(two * h)) - eight * ln_xi(-h) + eight * ln_xi(h) - ln_xi(two * h)) / (lit::<T>(12.0) * h)
    };
    let h: T = lit(1e-3);
    let coarse = five_point(h);
    let fine = five_point(h / lit(2.0));
    (lit::<T>(16.0) * fine - coarse) / lit(15.0)
}

/// `-γ/2 - 1 + ½ ln 4π`, the exact logarithmic derivative of ξ at 0.
pub fn b0_closed_form<T: Real>() -> T {
    -euler_gamma_const::<T>() / lit(2.0) - T::one() + (lit::<T>(4.0) * T::PI()).ln() / lit(2.0)
}

/// `-γ/2 - 1 - ½ ln 4π`, the coefficient under audit.
pub fn b0_claimed<T: Real>() -> T {
    -euler_gamma_const::<T>() / lit(2.0) - T::one() - (lit::<T>(4.0) * T::PI()).ln() / lit(2.0)
}

/// χ(s) on the real axis: `e^{π(s-1)}` for `s > 1`, `e^{-πs}` for `s < 0`.
/// Undefined on `[0, 1]`.
pub fn chi_direct<T: Real>(s: T) -> Result<T> {
    if s > T::one() {
        Ok((T::PI() * (s - T::one())).exp())
    } else if s < T::zero() {
        Ok((-(T::PI() * s)).exp())
    } else {
        Err(LabError::Domain(format!(
            "χ is left unspecified on [0, 1], got s = {}",
            to_f64(s)
        )))
    }
}

/// Constants of the representation `χ(s) = ξ(s) e^{α + βs}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiConstants<T> {
    pub alpha: T,
    pub beta: T,
    #[serde(rename = "A")]
    pub a: T,
    #[serde(rename = "B")]
    pub b: T,
}

impl<T: Real> ChiConstants<T> {
    /// `A = -π`, `B = π`, `α = ln 2 - π`, `β = π + γ/2 + 1 - ½ ln 4π`.
    pub fn claimed() -> Self {
        let pi = T::PI();
        Self {
            alpha: T::LN_2() - pi,
            beta: pi + euler_gamma_const::<T>() / lit(2.0) + T::one() - (lit::<T>(4.0) * pi).ln() / lit(2.0),
            a: -pi,
            b: pi,
        }
    }

    /// Residuals of `α = ln 2 + A` and `β = B - b₀`.
    pub fn consistency_residuals(&self, b0: T) -> (T, T) {
        (self.alpha - (T::LN_2() + self.a), self.beta - (self.b - b0))
    }
}

/// `ξ(s)·e^{α + βs}`.
pub fn chi_via_ratio<T: Real>(s: Complex<T>, constants: &ChiConstants<T>, cfg: &SpecFunConfig<T>) -> Complex<T> {
    xi(s, cfg) * (s * constants.beta + constants.alpha).exp()
}

/// Recovers λ from `x = |ln χ(s)| = π(s-1)` as `λ = x/π + x²/π²`.
/// Defined for `s ≥ 1`; the result should equal `s(s-1)`.
pub fn chi_lambda_roundtrip<T: Real>(s: T) -> Result<T> {
    if !(s >= T::one()) {
        return Err(LabError::Domain(format!("needs s ≥ 1, got {}", to_f64(s))));
    }
    let x = (T::PI() * (s - T::one())).abs();
    Ok(x / T::PI() + x * x / (T::PI() * T::PI()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{exp_sinh, Tolerance};
    use crate::specfun::{complex_gamma, complex_zeta, zeta_alternating};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn cfg() -> SpecFunConfig<f64> {
        SpecFunConfig::default()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn values_at_zero_and_one() {
        assert!((xi(c(0.0, 0.0), &cfg()) - 0.5).norm() < 1e-14);
        assert!((xi(c(1.0, 0.0), &cfg()) - 0.5).norm() < 1e-14);
        // ξ(2) = ζ(2)/π·Γ(1) = π/6
        assert!((xi(c(2.0, 0.0), &cfg()).re - PI / 6.0).abs() < 1e-14);
    }

    #[test]
    fn xi_half_from_independent_pieces() {
        // Γ(1/4) from quadrature, ζ(1/2) from the η series
        let g = exp_sinh(|u: f64| (-u).exp() * u.powf(-0.75), 0.0, Tolerance::relative(1e-15), 12).value;
        assert!((g - 3.625_609_908_221_908).abs() < 1e-12);
        let z = zeta_alternating(c(0.5, 0.0)).unwrap().re;
        assert!((z + 1.460_354_508_809_587).abs() < 1e-12);
        let oracle = 0.5 * 0.5 * (-0.5) * PI.powf(-0.25) * g * z;
        let v = xi(c(0.5, 0.0), &cfg());
        assert!((v.re - oracle).abs() < 1e-13 && v.im.abs() < 1e-16, "{v} vs {oracle}");
        assert!((big_xi(0.0, &cfg()).unwrap() - 0.497_120_778_188_314_1).abs() < 1e-13);
    }

    #[test]
    fn unreflected_matches_textbook_assembly() {
        for s in [c(2.5, 3.0), c(-1.25, 7.0), c(0.3, 20.0)] {
            let direct = 0.5 * s * (s - 1.0) * (-s / 2.0 * PI.ln()).exp() * complex_gamma(s / 2.0).unwrap()
                * complex_zeta(s, &cfg()).unwrap();
            let v = xi_unreflected(s, &cfg());
            assert!((v - direct).norm() <= 1e-12 * direct.norm(), "{s}: {v} vs {direct}");
        }
        // Γ(s/2) poles fall back to the limit
        assert!((xi_unreflected(c(0.0, 0.0), &cfg()) - 0.5).norm() < 1e-14);
        assert!(xi_unreflected(c(-2.0, 0.0), &cfg()).re.is_finite());
    }

    #[test]
    fn functional_equation_on_the_grid() {
        let mut worst: f64 = 0.0;
        for i in 0..=20 {
            let sigma = -2.0 + 0.25 * i as f64;
            for t in 0..=40 {
                let s = c(sigma, t as f64);
                let a = xi_unreflected(s, &cfg());
                let b = xi_unreflected(1.0 - s, &cfg());
                worst = worst.max((a - b).norm() / (1.0 + a.norm()));
            }
        }
        assert!(worst <= 1e-9, "{worst:e}");
    }

    #[test]
    fn realness_on_the_critical_line() {
        let mut t = 0.0;
        while t <= 60.0 {
            let z = xi(c(0.5, t), &cfg());
            assert!(z.im.abs() <= 1e-10 * (1.0 + z.norm()), "t = {t}: {z}");
            assert!(big_xi(t, &cfg()).is_ok());
            t += 0.5;
        }
        assert_eq!(big_xi(7.3, &cfg()).unwrap(), big_xi(-7.3, &cfg()).unwrap());
    }

    #[test]
    fn conjugate_symmetry() {
        for sigma in [-2.0, -0.5, 0.25, 0.5, 1.0, 2.75] {
            for t in [0.5, 3.0, 17.0, 40.0] {
                let s = c(sigma, t);
                let a = xi(s.conj(), &cfg());
                let b = xi(s, &cfg()).conj();
                assert!((a.re - b.re).abs() <= 1e-12 && (a.im - b.im).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn first_zero_is_bracketed() {
        let a = big_xi(14.0, &cfg()).unwrap();
        let b = big_xi(14.5, &cfg()).unwrap();
        assert!(a.signum() != b.signum());
    }

    fn ordinates(ts: &[f64]) -> Vec<CriticalZero<f64>> {
        ts.iter()
            .enumerate()
            .map(|(i, &t)| CriticalZero {
                n: i + 1,
                t,
                bracket_lo: t,
                bracket_hi: t,
                residual: 0.0,
            })
            .collect()
    }

    #[test]
    fn hadamard_basic_properties() {
        let zs = ordinates(&[14.134_725_141_734_693, 21.022_039_638_771_556, 25.010_857_580_145_69]);
        let trunc = HadamardTruncation {
            zero_count: 3,
            b0: b0_closed_form(),
            pairing: true,
        };
        assert_eq!(hadamard_partial(c(0.0, 0.0), &zs, trunc).unwrap(), c(0.5, 0.0));
        let s = c(0.3, 2.0);
        let a = hadamard_partial(s.conj(), &zs, trunc).unwrap();
        let b = hadamard_partial(s, &zs, trunc).unwrap().conj();
        assert!((a - b).norm() < 1e-15);
        let unpaired = hadamard_partial(s, &zs, HadamardTruncation { pairing: false, ..trunc }).unwrap();
        assert!((unpaired - b.conj()).norm() < 1e-14);
        assert!(matches!(
            hadamard_partial(s, &[], trunc),
            Err(LabError::Argument(_))
        ));
    }

    #[test]
    fn b0_estimate_matches_closed_form() {
        let est = estimate_b0(&cfg());
        let exact: f64 = b0_closed_form();
        assert!((exact + 0.023_095_708_966_121_03).abs() < 1e-14);
        assert!((est - exact).abs() < 1e-9, "{est} vs {exact}");
        assert!((b0_claimed::<f64>() + 2.554_119_955_935_412).abs() < 1e-14);
    }

    #[test]
    fn chi_direct_values_and_gap() {
        assert!((chi_direct(2.0).unwrap() - PI.exp()).abs() < 1e-12);
        assert!((chi_direct(-1.0).unwrap() - PI.exp()).abs() < 1e-12);
        assert!((chi_direct(1.000_001f64).unwrap() - 1.000_003_141_597_588).abs() < 1e-12);
        for s in [0.0, 0.5, 1.0] {
            assert!(matches!(chi_direct(s), Err(LabError::Domain(_))));
        }
    }

    #[test]
    fn chi_constants() {
        let k = ChiConstants::<f64>::claimed();
        assert!((k.alpha + 2.448_445_473_029_848).abs() < 1e-14);
        assert!((k.beta - 3.164_688_362_555_914).abs() < 1e-14);
        let (ra, rb) = k.consistency_residuals(b0_closed_form());
        assert!(ra.abs() < 1e-15 && rb.abs() < 1e-14);
        let (_, rb_claimed) = k.consistency_residuals(b0_claimed());
        assert!((rb_claimed.abs() - 2.531_024_246_969_291).abs() < 1e-13);
        // ξ(2)e^{α+2β} is a fixed, measurable number
        let r = chi_via_ratio(c(2.0, 0.0), &k, &cfg());
        assert_eq!(r, chi_via_ratio(c(2.0, 0.0), &k, &cfg()));
        assert!(r.im == 0.0 && r.re > 0.0);
    }

    #[test]
    fn lambda_roundtrip() {
        assert_eq!(chi_lambda_roundtrip(2.0).unwrap(), 2.0);
        assert_eq!(chi_lambda_roundtrip(1.0).unwrap(), 0.0);
        assert!((chi_lambda_roundtrip(3.0f64).unwrap() - 6.0).abs() < 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let s: f64 = rng.gen_range(1.0..10.0) + f64::EPSILON * 8.0;
            let l = chi_lambda_roundtrip(s).unwrap();
            let exact = s * (s - 1.0);
            assert!(((l - exact) / exact).abs() <= 1e-12, "s = {s}");
        }
        assert!(chi_lambda_roundtrip(0.5).is_err());
    }

    #[test]
    fn single_precision_xi() {
        let v = xi(Complex::new(2.0f32, 0.0), &SpecFunConfig::default());
        assert!((v.re - std::f32::consts::PI / 6.0).abs() < 1e-5);
    }
}
