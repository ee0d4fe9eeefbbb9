//! Riemann ζ by Euler–Maclaurin summation, plus an alternating-η route kept
//! as an independent evaluation strategy.

use num_complex::Complex;

use super::SpecFunConfig;
use crate::error::{LabError, Result};
use crate::scalar::{lit, real, to_f64, Real};

/// B₂, B₄, …, B₂₄.
const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Pieces of the Euler–Maclaurin formula with cutoff `N`:
/// `ζ(s) = head + N^{1-s}/(s-1)`, where `head` collects the partial sum,
/// the half-term, and the Bernoulli corrections.
struct EulerMaclaurin<T> {
    head: Complex<T>,
    n_pow_one_minus_s: Complex<T>,
}

fn cutoff<T: Real>(s: Complex<T>, cfg: &SpecFunConfig<T>) -> usize {
    let by_height = (lit::<T>(2.0) * s.im.abs()).ceil().to_usize().unwrap_or(usize::MAX / 2) + 20;
    cfg.zeta_terms_min.max(by_height)
}

fn euler_maclaurin<T: Real>(s: Complex<T>, cfg: &SpecFunConfig<T>) -> EulerMaclaurin<T> {
    let n = cutoff(s, cfg);
    // n^{-s} = exp(-s ln n)
    let pow_neg = |k: usize| (-s * lit::<T>(k as f64).ln()).exp();

    let mut partial = Complex::new(T::zero(), T::zero());
    for k in (1..n).rev() {
        partial = partial + pow_neg(k);
    }
    let n_t: T = lit(n as f64);
    let n_neg_s = pow_neg(n);
    let mut head = partial + n_neg_s * lit::<T>(0.5);

    // Σ_k B_{2k}/(2k)! · s(s+1)…(s+2k-2) · N^{-s-2k+1}
    let pairs = cfg.zeta_bernoulli_order / 2;
    let mut rising = s; // s(s+1)…(s+2k-2)
    let mut factorial = T::one() + T::one(); // (2k)!
    let mut n_power = n_neg_s / n_t; // N^{-s-2k+1}
    for (k, &b) in BERNOULLI_EVEN.iter().enumerate().take(pairs) {
        let k = k + 1;
        if k > 1 {
            let j: T = lit((2 * k - 3) as f64);
            rising = rising * (s + j) * (s + j + T::one());
            let m: T = lit((2 * k) as f64);
            factorial = factorial * m * (m - T::one());
            n_power = n_power / (n_t * n_t);
        }
        head = head + rising * n_power * (lit::<T>(b) / factorial);
    }

    EulerMaclaurin {
        head,
        n_pow_one_minus_s: n_neg_s * n_t,
    }
}

/// ζ(s) by Euler–Maclaurin; errors only at the pole `s = 1`.
pub(crate) fn zeta_euler_maclaurin<T: Real>(s: Complex<T>, cfg: &SpecFunConfig<T>) -> Result<Complex<T>> {
    if s.re == T::one() && s.im == T::zero() {
        return Err(LabError::Pole { re: 1.0, im: 0.0 });
    }
    let em = euler_maclaurin(s, cfg);
    Ok(em.head + em.n_pow_one_minus_s / (s - T::one()))
}

/// The entire function `(s-1)·ζ(s)`, with the pole term of the
/// Euler–Maclaurin formula cancelled symbolically. Equals 1 at `s = 1`.
pub(crate) fn zeta_times_s_minus_one<T: Real>(s: Complex<T>, cfg: &SpecFunConfig<T>) -> Complex<T> {
    let em = euler_maclaurin(s, cfg);
    em.head * (s - T::one()) + em.n_pow_one_minus_s
}

/// Number of accelerated η terms used at height `t`.
fn eta_terms<T: Real>(t: T) -> usize {
    (lit::<T>(1.8) * t.abs()).ceil().to_usize().unwrap_or(0) + 40
}

/// Weights `1 - d_k/d_n`, k = 0..n-1, of Borwein's accelerated alternating sum.
fn borwein_weights(n: usize) -> Vec<f64> {
    // term_i = n (n+i-1)! 4^i / ((n-i)! (2i)!), built by ratio; rescaled to stay finite
    let mut partial = Vec::with_capacity(n + 1);
    let mut term = 1.0f64;
    let mut total = 1.0f64;
    partial.push(total);
    for i in 1..=n {
        let i_f = i as f64;
        let n_f = n as f64;
        term *= 4.0 * (n_f + i_f - 1.0) * (n_f - i_f + 1.0) / ((2.0 * i_f) * (2.0 * i_f - 1.0));
        total += term;
        partial.push(total);
        if total > 1e250 {
            for p in partial.iter_mut() {
                *p *= 1e-250;
            }
            term *= 1e-250;
            total *= 1e-250;
        }
    }
    let d_n = partial[n];
    partial[..n].iter().map(|d| 1.0 - d / d_n).collect()
}

/// ζ(s) from the alternating Dirichlet η series, accelerated with Borwein's
/// algorithm: `ζ(s) = η(s) / (1 - 2^{1-s})`.
///
/// Shares no code with the Euler–Maclaurin path; used to cross-check zero
/// locations. Accurate for `Re s > 0` (and moderately beyond) at `|Im s| ≤ 100`.
pub fn zeta_alternating<T: Real>(s: Complex<T>) -> Result<Complex<T>> {
    if s.re == T::one() && s.im == T::zero() {
        return Err(LabError::Pole { re: 1.0, im: 0.0 });
    }
    let n = eta_terms(s.im);
    let weights = borwein_weights(n);
    let mut eta = Complex::new(T::zero(), T::zero());
    for (k, w) in weights.iter().enumerate().rev() {
        let term = (-s * lit::<T>((k + 1) as f64).ln()).exp() * lit::<T>(*w);
        eta = if k % 2 == 0 { eta + term } else { eta - term };
    }
    let two: T = lit(2.0);
    let denom = real(T::one()) - ((real(T::one()) - s) * two.ln()).exp();
    if denom.norm() == T::zero() {
        return Err(LabError::Domain(format!(
            "1 - 2^(1-s) vanishes at s = {} + {}i; use the Euler–Maclaurin route",
            to_f64(s.re),
            to_f64(s.im)
        )));
    }
    Ok(eta / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn cfg() -> SpecFunConfig<f64> {
        SpecFunConfig::default()
    }

    /// Direct partial sum to M terms plus the integral tail bound M^{1-σ}/(σ-1).
    fn direct_series(s: f64, terms: usize) -> (f64, f64) {
        let mut acc = 0.0;
        for n in (1..=terms).rev() {
            acc += (n as f64).powf(-s);
        }
        let m = terms as f64;
        // Euler–Maclaurin remainder: tail ≈ M^{1-s}/(s-1) - M^{-s}/2, error ≤ s M^{-s-1}/12
        let tail = m.powf(1.0 - s) / (s - 1.0) - 0.5 * m.powf(-s);
        (acc + tail, s * m.powf(-s - 1.0) / 12.0)
    }

    #[test]
    fn zeta_two_and_four_against_direct_series() {
        for (s, expected) in [(2.0, 1.644_934_066_848_226_4), (4.0, 1.082_323_233_711_138_2)] {
            let (oracle, bound) = direct_series(s, 1_000_000);
            assert!(bound < 1e-12);
            assert!((oracle - expected).abs() < 1e-12, "oracle {oracle}");
            let z = zeta_euler_maclaurin(Complex64::new(s, 0.0), &cfg()).unwrap();
            assert!((z.re - oracle).abs() < 1e-12 && z.im == 0.0, "{z}");
        }
    }

    #[test]
    fn zeta_zero_is_minus_half() {
        let z = zeta_euler_maclaurin(Complex64::new(0.0, 0.0), &cfg()).unwrap();
        assert!((z.re + 0.5).abs() < 1e-13, "{z}");
        // η(0) = 1/2 and 1 - 2^{1-0} = -1
        let eta = zeta_alternating(Complex64::new(0.0, 0.0)).unwrap();
        assert!((eta.re + 0.5).abs() < 1e-12, "{eta}");
    }

    #[test]
    fn pole_at_one() {
        assert!(matches!(
            zeta_euler_maclaurin(Complex64::new(1.0, 0.0), &cfg()),
            Err(LabError::Pole { .. })
        ));
        assert!(zeta_alternating(Complex64::new(1.0, 0.0)).is_err());
        let r = zeta_times_s_minus_one(Complex64::new(1.0, 0.0), &cfg());
        assert!((r.re - 1.0).abs() < 1e-14 && r.im.abs() < 1e-15);
    }

    #[test]
    fn agrees_with_long_direct_series_right_of_one_and_a_half() {
        for s in [Complex64::new(1.6, 3.0), Complex64::new(2.5, -17.0), Complex64::new(3.0, 60.0)] {
            let mut direct = Complex64::new(0.0, 0.0);
            for n in (1..=1_000_000u64).rev() {
                direct += (-s * (n as f64).ln()).exp();
            }
            // analytic remainder of the truncated series, to leading order
            let m = 1_000_000f64;
            direct += (-s * m.ln()).exp() * m / (s - 1.0) - 0.5 * (-s * m.ln()).exp();
            let z = zeta_euler_maclaurin(s, &cfg()).unwrap();
            assert!((z - direct).norm() < 1e-10, "s = {s}: {z} vs {direct}");
        }
    }

    #[test]
    fn two_routes_agree_in_the_strip() {
        for &(sigma, t) in &[(0.5, 14.134_725), (0.5, 40.0), (0.2, 7.0), (0.9, 99.0), (2.0, 0.0), (-1.0, 3.0)] {
            let s = Complex64::new(sigma, t);
            let a = zeta_euler_maclaurin(s, &cfg()).unwrap();
            let b = zeta_alternating(s).unwrap();
            assert!((a - b).norm() < 1e-10 * (1.0 + a.norm()), "s = {s}: {a} vs {b}");
        }
    }

    #[test]
    fn trivial_zeros() {
        // the direct part sums n^{-s} ~ N^{1-s}, so cancellation scales with it
        for s in [-2.0f64, -4.0, -6.0] {
            let z = zeta_euler_maclaurin(Complex64::new(s, 0.0), &cfg()).unwrap();
            let scale = 20f64.powf(1.0 - s);
            assert!(z.norm() < 1e-15 * scale, "ζ({s}) = {z}");
        }
    }

    #[test]
    fn conjugate_symmetry_is_exact_to_rounding() {
        for &(sigma, t) in &[(-2.0, 5.0), (0.5, 21.0), (3.0, 100.0), (1.5, 0.3)] {
            let s = Complex64::new(sigma, t);
            let a = zeta_euler_maclaurin(s.conj(), &cfg()).unwrap();
            let b = zeta_euler_maclaurin(s, &cfg()).unwrap().conj();
            assert!((a.re - b.re).abs() <= 1e-13 && (a.im - b.im).abs() <= 1e-13);
        }
    }
}
