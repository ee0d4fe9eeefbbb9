//! Complex Γ and log Γ via the Lanczos approximation.

use num_complex::Complex;

use crate::error::{LabError, Result};
use crate::scalar::{lit, real, to_f64, Real};

// Godfrey's coefficient set for g = 607/128, 15 terms.
const LANCZOS_G: f64 = 607.0 / 128.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_091_82,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

fn is_pole<T: Real>(s: Complex<T>) -> bool {
    s.im == T::zero() && s.re <= T::zero() && s.re == s.re.floor()
}

fn pole_error<T: Real>(s: Complex<T>) -> LabError {
    LabError::Pole {
        re: to_f64(s.re),
        im: to_f64(s.im),
    }
}

/// Lanczos series `A(z)` such that `Γ(z) = √(2π) t^{z-1/2} e^{-t} A(z)`, `t = z + g - 1/2`.
fn lanczos_series<T: Real>(z: Complex<T>) -> Complex<T> {
    let zm1 = z - T::one();
    let mut acc = real(lit::<T>(LANCZOS_COEF[0]));
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc = acc + real(lit::<T>(c)) / (zm1 + lit::<T>(k as f64));
    }
    acc
}

/// `ln Γ(z)` for `Re z ≥ 1/2`, principal branch.
fn log_gamma_right<T: Real>(z: Complex<T>) -> Complex<T> {
    let half: T = lit(0.5);
    let t = z + lit::<T>(LANCZOS_G) - half;
    let half_ln_two_pi = (T::PI() + T::PI()).ln() * half;
    (z - half) * t.ln() - t + lanczos_series(z).ln() + half_ln_two_pi
}

/// `sin(πz)` with the real part reduced to `[-1/2, 1/2]` first.
pub(crate) fn sin_pi<T: Real>(z: Complex<T>) -> Complex<T> {
    let n = z.re.round();
    let f = z.re - n;
    let (sf, cf) = (T::PI() * f).sin_cos();
    let y = T::PI() * z.im;
    let v = Complex::new(sf * y.cosh(), cf * y.sinh());
    let odd = (n / lit(2.0)).fract() != T::zero();
    if odd {
        -v
    } else {
        v
    }
}

/// Complex gamma function Γ(s).
///
/// Lanczos approximation on `Re s ≥ 1/2`; the reflection formula
/// `Γ(s)Γ(1-s) = π / sin(πs)` covers the left half-plane.
pub fn complex_gamma<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    if is_pole(s) {
        return Err(pole_error(s));
    }
    if s.re < lit(0.5) {
        let reflected = complex_gamma(Complex::new(T::one(), T::zero()) - s)?;
        return Ok(real(T::PI()) / (sin_pi(s) * reflected));
    }
    Ok(log_gamma_right(s).exp())
}

/// Principal branch of `ln Γ(s)`, continuous off the negative real axis.
///
/// Arguments left of `Re s = 1/2` are shifted right with
/// `ln Γ(s) = ln Γ(s+n) - Σ ln(s+k)`, which keeps the branch continuous.
pub fn log_gamma<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    if is_pole(s) {
        return Err(pole_error(s));
    }
    let half: T = lit(0.5);
    if s.re >= half {
        return Ok(log_gamma_right(s));
    }
    let shift = (half - s.re).ceil().to_usize().unwrap_or(0);
    let mut correction = Complex::new(T::zero(), T::zero());
    for k in 0..shift {
        correction = correction + (s + lit::<T>(k as f64)).ln();
    }
    Ok(log_gamma_right(s + lit::<T>(shift as f64)) - correction)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{exp_sinh, Tolerance};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn integer_values() {
        let g1 = complex_gamma(Complex64::new(1.0, 0.0)).unwrap();
        assert!((g1.re - 1.0).abs() < 1e-14 && g1.im == 0.0);
        let g5 = complex_gamma(Complex64::new(5.0, 0.0)).unwrap();
        assert!((g5.re - 24.0).abs() < 1e-12, "{g5}");
    }

    #[test]
    fn gamma_half_matches_quadrature_oracle() {
        // oracle: ∫_0^∞ e^-u u^-1/2 du
        let oracle = exp_sinh(|u: f64| (-u).exp() / u.sqrt(), 0.0, Tolerance::absolute(1e-15), 12);
        let g = complex_gamma(Complex64::new(0.5, 0.0)).unwrap();
        assert!((g.re - oracle.value).abs() < 1e-13, "{} vs {}", g.re, oracle.value);
        assert!((g.re - 1.772_453_850_905_516).abs() < 1e-13);
    }

    #[test]
    fn poles_are_rejected() {
        for re in [0.0, -1.0, -7.0] {
            let err = complex_gamma(Complex64::new(re, 0.0)).unwrap_err();
            assert!(matches!(err, LabError::Pole { re: r, .. } if r == re));
            assert!(log_gamma(Complex64::new(re, 0.0)).is_err());
        }
        // just off the pole is fine
        assert!(complex_gamma(Complex64::new(-1.0, 1e-9)).is_ok());
    }

    #[test]
    fn log_gamma_known_values() {
        let l1 = log_gamma(Complex64::new(1.0, 0.0)).unwrap();
        assert!(l1.norm() < 1e-14);
        let l5 = log_gamma(Complex64::new(5.0, 0.0)).unwrap();
        assert!((l5.re - 24f64.ln()).abs() < 1e-13 && l5.im.abs() < 1e-15);
    }

    /// Stirling series with 8 Bernoulli corrections, valid for |s| ≫ 1.
    fn stirling_oracle(s: Complex64) -> Complex64 {
        const B: [f64; 8] = [
            1.0 / 6.0,
            -1.0 / 30.0,
            1.0 / 42.0,
            -1.0 / 30.0,
            5.0 / 66.0,
            -691.0 / 2730.0,
            7.0 / 6.0,
            -3617.0 / 510.0,
        ];
        let mut acc = (s - 0.5) * s.ln() - s + 0.5 * (2.0 * std::f64::consts::PI).ln();
        for (k, b) in B.iter().enumerate() {
            let n = 2.0 * (k as f64 + 1.0);
            acc += *b / (n * (n - 1.0)) / s.powf(n - 1.0);
        }
        acc
    }

    #[test]
    fn log_gamma_far_up_the_critical_line_matches_stirling() {
        let s = Complex64::new(0.5, 30.0);
        let lg = log_gamma(s).unwrap();
        let st = stirling_oracle(s);
        assert!((lg.re - st.re).abs() < 1e-11, "{} vs {}", lg.re, st.re);
        assert!((lg.re - (-46.204_951_270_642_23)).abs() < 1e-10);
        // the principal branch accumulates phase continuously
        assert!((lg.im - st.im).abs() < 1e-10, "{} vs {}", lg.im, st.im);
    }

    #[test]
    fn exp_log_gamma_agrees_with_gamma() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let s = Complex64::new(rng.gen_range(-8.0..12.0), rng.gen_range(-15.0..15.0));
            let g = complex_gamma(s).unwrap();
            let lg = log_gamma(s).unwrap().exp();
            assert!(rel(lg, g) < 1e-10, "s = {s}: {lg} vs {g}");
        }
    }

    #[test]
    fn log_gamma_continuous_along_vertical_lines() {
        for sigma in [-2.3, 0.25, 0.5, 1.0, 3.0] {
            let mut prev = log_gamma(Complex64::new(sigma, 0.0)).unwrap();
            let mut t = 0.0;
            while t < 100.0 {
                t += 0.05;
                let cur = log_gamma(Complex64::new(sigma, t)).unwrap();
                assert!((cur.im - prev.im).abs() < 0.5, "jump at σ = {sigma}, t = {t}");
                prev = cur;
            }
        }
    }

    #[test]
    fn recurrence_and_reflection_on_random_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 100 {
            let s = Complex64::new(rng.gen_range(-14.0..14.0), rng.gen_range(-14.0..14.0));
            if s.norm() > 20.0 || (s.re - s.re.round()).abs() < 1e-3 && s.im.abs() < 1e-3 {
                continue;
            }
            checked += 1;
            let g = complex_gamma(s).unwrap();
            let g1 = complex_gamma(s + 1.0).unwrap();
            assert!(rel(s * g, g1) <= 1e-11, "recurrence at {s}");
            let refl = g * complex_gamma(1.0 - s).unwrap();
            let target = std::f64::consts::PI / sin_pi(s);
            assert!(rel(refl, target) <= 1e-10, "reflection at {s}");
        }
    }

    #[test]
    fn single_precision_gamma() {
        let g = complex_gamma(Complex::new(4.0f32, 0.0)).unwrap();
        assert!((g.re - 6.0).abs() < 1e-4);
    }
}
