//! S-wave scattering off V(r) = λ/r² in units with 2m/ħ² = 1: the analytic
//! phase shift, numerical extraction from the radial equation, the Jost
//! solution, and the ∫ r K_ν²(τr) dr norm integral.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::numfmt::sci;
use crate::ode::{integrate, OdeOptions};
use crate::quad::{exp_sinh, tanh_sinh, Tolerance};
use crate::scalar::{lit, to_f64, Real};
use crate::specfun::{bessel_k, hankel1, SpecFunConfig};

/// ν = √(¼ + λ) for a repulsive coupling λ > 0.
pub fn nu_from_lambda<T: Real>(lambda: T) -> Result<T> {
    if !(lambda > T::zero()) {
        return Err(LabError::Domain(format!(
            "ν needs a repulsive coupling λ > 0, got {}",
            to_f64(lambda)
        )));
    }
    Ok((lit::<T>(0.25) + lambda).sqrt())
}

/// δ = π/4 - πν/2, energy independent. Zero at λ = 0.
pub fn phase_shift_analytic<T: Real>(lambda: T) -> Result<T> {
    if !(lambda >= T::zero()) {
        return Err(LabError::Domain(format!("phase shift needs λ ≥ 0, got {}", to_f64(lambda))));
    }
    let nu = (lit::<T>(0.25) + lambda).sqrt();
    Ok(T::FRAC_PI_4() - T::FRAC_PI_2() * nu)
}

/// S = e^{2iδ}.
pub fn s_matrix<T: Real>(delta: T) -> Complex<T> {
    Complex::from_polar(T::one(), delta + delta)
}

/// Radii and tolerance of the radial integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialSolverConfig<T> {
    pub r0: T,
    pub r_match: T,
    pub ode_tol: T,
    /// Repeat at `2·r_match` and cancel the O(1/r) tail of the phase.
    pub richardson: bool,
}

impl<T: Real> RadialSolverConfig<T> {
    /// `r0 = 1e-6/k`, `r_match = 200/k`, tolerance 1e-10, Richardson on.
    pub fn for_wavenumber(k: T) -> Self {
        Self {
            r0: lit::<T>(1e-6) / k,
            r_match: lit::<T>(200.0) / k,
            ode_tol: lit(1e-10),
            richardson: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r0 > T::zero() && self.r0 < self.r_match && self.r_match.is_finite()) {
            return Err(LabError::Validation(format!(
                "need 0 < r0 < r_match, got r0 = {}, r_match = {}",
                to_f64(self.r0),
                to_f64(self.r_match)
            )));
        }
        if !(self.ode_tol > T::zero()) {
            return Err(LabError::Validation("ode_tol must be positive".into()));
        }
        Ok(())
    }
}

/// Numerical and analytic phase shift for one (λ, k).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseShiftResult<T> {
    pub lambda: T,
    pub nu: T,
    pub k: T,
    pub delta_analytic: T,
    pub delta_numeric: T,
    /// e^{2iδ} from the numeric phase.
    pub s_matrix: Complex<T>,
}

impl<T: Real> PhaseShiftResult<T> {
    /// |S_numeric - S_analytic|.
    pub fn s_distance(&self) -> T {
        (self.s_matrix - s_matrix(self.delta_analytic)).norm()
    }
}

/// Integrates `u'' = (λ/r² - k²) u` from `r0` to each radius in `stops`
/// (increasing), starting on the regular branch `u = r^{½+ν}`.
/// Returns `(u, u')` at every stop.
pub fn integrate_radial<T: Real>(lambda: T, k: T, r0: T, stops: &[T], ode_tol: T) -> Result<Vec<(T, T)>> {
    let nu = nu_from_lambda(lambda)?;
    let half: T = lit(0.5);
    let p = half + nu;
    let mut y = [r0.powf(p), p * r0.powf(nu - half)];
    let mut x = r0;
    let k2 = k * k;
    let rhs = |r: T, y: &[T; 2]| [y[1], (lambda / (r * r) - k2) * y[0]];
    let mut out = Vec::with_capacity(stops.len());
    for &stop in stops {
        let opts = OdeOptions {
            tol: ode_tol,
            initial_step: (x * lit::<T>(1e-3)).min(lit::<T>(1e-3) / k),
            max_steps: 5_000_000,
        };
        let end = integrate(rhs, x, y, stop, opts)?;
        x = end.x;
        y = end.y;
        out.push((y[0], y[1]));
    }
    Ok(out)
}

/// Phase δ at radius `r` from `tan(kr + δ) = k u / u'`, taken mod π.
fn phase_at<T: Real>(k: T, r: T, u: T, du: T) -> T {
    (k * u).atan2(du) - k * r
}

/// `x + mπ` with the integer `m` chosen to land nearest `target`.
fn nearest_branch<T: Real>(x: T, target: T) -> T {
    x + T::PI() * ((target - x) / T::PI()).round()
}

/// Phase shift from the radial equation, reported on the branch nearest
/// the analytic value. Fails if the potential still dominates at `r_match`.
pub fn phase_shift_numeric<T: Real>(lambda: T, k: T, cfg: &RadialSolverConfig<T>) -> Result<PhaseShiftResult<T>> {
    cfg.validate()?;
    if !(k > T::zero()) {
        return Err(LabError::Domain(format!("wavenumber must be positive, got {}", to_f64(k))));
    }
    let nu = nu_from_lambda(lambda)?;
    let delta_analytic = phase_shift_analytic(lambda)?;
    // need k² ≫ λ/r² for an asymptotic phase; demand at least a factor 4
    if k * k * cfg.r_match * cfg.r_match < lit::<T>(4.0) * lambda {
        return Err(LabError::Solver(format!(
            "solution is not oscillatory at r_match = {} (k r = {})",
            to_f64(cfg.r_match),
            to_f64(k * cfg.r_match)
        )));
    }
    let two: T = lit(2.0);
    let delta = if cfg.richardson {
        let r1 = cfg.r_match;
        let r2 = two * r1;
        let v = integrate_radial(lambda, k, cfg.r0, &[r1, r2], cfg.ode_tol)?;
        let d1 = nearest_branch(phase_at(k, r1, v[0].0, v[0].1), delta_analytic);
        let d2 = nearest_branch(phase_at(k, r2, v[1].0, v[1].1), d1);
        // δ(r) ≈ δ + c/r
        two * d2 - d1
    } else {
        let v = integrate_radial(lambda, k, cfg.r0, &[cfg.r_match], cfg.ode_tol)?;
        phase_at(k, cfg.r_match, v[0].0, v[0].1)
    };
    let delta_numeric = nearest_branch(delta, delta_analytic);
    if !delta_numeric.is_finite() {
        return Err(LabError::Solver("phase extraction produced a non-finite value".into()));
    }
    Ok(PhaseShiftResult {
        lambda,
        nu,
        k,
        delta_analytic,
        delta_numeric,
        s_matrix: s_matrix(delta_numeric),
    })
}

/// Phase shifts over a λ × k grid, computed in parallel and returned in
/// row-major input order.
pub fn phase_sweep<T: Real>(lambdas: &[T], ks: &[T]) -> Vec<Result<PhaseShiftResult<T>>> {
    let grid: Vec<(T, T)> = lambdas.iter().flat_map(|&l| ks.iter().map(move |&k| (l, k))).collect();
    grid.par_iter()
        .map(|&(l, k)| phase_shift_numeric(l, k, &RadialSolverConfig::for_wavenumber(k)))
        .collect()
}

pub const SCATTER_TSV_HEADER: &str = "lambda\tnu\tk\tdelta_analytic\tdelta_numeric\ts_re\ts_im\ts_distance";

pub fn phase_shift_tsv<T: Real>(rows: &[PhaseShiftResult<T>]) -> String {
    let mut out = String::from(SCATTER_TSV_HEADER);
    out.push('\n');
    for r in rows {
        let cols = [
            r.lambda,
            r.nu,
            r.k,
            r.delta_analytic,
            r.delta_numeric,
            r.s_matrix.re,
            r.s_matrix.im,
            r.s_distance(),
        ];
        out.push_str(&cols.iter().map(|&c| sci(c)).collect::<Vec<_>>().join("\t"));
        out.push('\n');
    }
    out
}

/// Jost solution `f(k,r) = √(πkr/2) e^{i(πν/2 + π/4)} H⁽¹⁾_ν(kr)`, which
/// tends to `e^{ikr}` for large `kr`.
pub fn jost_solution<T: Real>(k: T, r: T, nu: T, cfg: &SpecFunConfig<T>) -> Result<Complex<T>> {
    if !(k > T::zero() && r > T::zero()) {
        return Err(LabError::Domain(format!(
            "Jost solution needs k, r > 0, got k = {}, r = {}",
            to_f64(k),
            to_f64(r)
        )));
    }
    let x = k * r;
    let h = hankel1(nu, x, cfg)?;
    let amp = (T::PI() * x / lit(2.0)).sqrt();
    let phase = Complex::from_polar(T::one(), T::FRAC_PI_2() * nu + T::FRAC_PI_4());
    Ok(h * phase * amp)
}

/// Value and error estimate of a quadrature-backed integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralEstimate<T> {
    pub value: T,
    pub error: T,
}

/// `∫₀^∞ r K_ν(τr)² dr` for `0 < ν < 1`, `τ > 0`.
///
/// After `x = τr` the integral is `τ^{-2} ∫₀^∞ x K_ν(x)² dx`. The piece on
/// `(0, 1]` behaves like `x^{1-2ν}` at the origin and is regularised by
/// `x = y^m`, `m = 1/(2-2ν)`; the tail uses the exp-sinh rule.
pub fn k_squared_integral<T: Real>(nu: T, tau: T, cfg: &SpecFunConfig<T>) -> Result<IntegralEstimate<T>> {
    if !(tau > T::zero()) || !tau.is_finite() {
        return Err(LabError::Domain(format!("τ must be positive, got {}", to_f64(tau))));
    }
    if nu >= T::one() {
        return Err(LabError::Divergence(format!(
            "r K_ν² ~ r^(1-2ν) is not integrable at r = 0 for ν = {} ≥ 1",
            to_f64(nu)
        )));
    }
    if !(nu > T::zero()) {
        return Err(LabError::Domain(format!("ν must be positive, got {}", to_f64(nu))));
    }
    let two: T = lit(2.0);
    let m = T::one() / (two - two * nu);
    let floor: T = lit(1e-16);
    let mut failure = None;
    let mut inner = |y: T| -> T {
        if y < floor {
            return T::zero();
        }
        let x = y.powf(m);
        match bessel_k(nu, x, cfg) {
            // x K² dx with dx = m y^{m-1} dy
            Ok(kv) => x * kv * kv * m * y.powf(m - T::one()),
            Err(e) => {
                failure.get_or_insert(e);
                T::zero()
            }
        }
    };
    let tol = Tolerance {
        abs: cfg.quad_abs_tol * lit(1e-2),
        rel: T::epsilon() * lit(64.0),
    };
    let head = tanh_sinh(&mut inner, T::zero(), T::one(), tol, cfg.quad_max_levels);
    if let Some(e) = failure {
        return Err(e);
    }
    let mut failure = None;
    let tail = exp_sinh(
        |x: T| match bessel_k(nu, x, cfg) {
            Ok(kv) => x * kv * kv,
            Err(e) => {
                failure.get_or_insert(e);
                T::zero()
            }
        },
        T::one(),
        tol,
        cfg.quad_max_levels,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let scale = T::one() / (tau * tau);
    Ok(IntegralEstimate {
        value: (head.value + tail.value) * scale,
        error: (head.error + tail.error) * scale,
    })
}

/// `πν / (2τ² sin πν)`, the exact value of [`k_squared_integral`].
pub fn k_integral_closed_form<T: Real>(nu: T, tau: T) -> T {
    T::PI() * nu / (lit::<T>(2.0) * tau * tau * (T::PI() * nu).sin())
}

/// `(1/8)(1/τ²)(πν / sin πν)`, the coefficient under audit.
pub fn k_integral_claimed<T: Real>(nu: T, tau: T) -> T {
    T::PI() * nu / (lit::<T>(8.0) * tau * tau * (T::PI() * nu).sin())
}

/// Finding of the reality argument: a finite, nonzero norm integral forces
/// `Im λₙ(iτ) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealityFinding {
    pub nu: f64,
    pub tau: f64,
    pub integral: Option<f64>,
    pub finite: bool,
    pub nonzero: bool,
    /// True exactly when the conclusion follows.
    pub conclusion: bool,
    pub statement: String,
}

/// Evaluates the premise of the reality argument and states the
/// conclusion only when it follows. Divergence is a finding, not an error;
/// only `τ ≤ 0` is rejected.
pub fn reality_argument_report<T: Real>(nu: T, tau: T, cfg: &SpecFunConfig<T>) -> Result<RealityFinding> {
    if !(tau > T::zero()) {
        return Err(LabError::Domain(format!("τ must be positive, got {}", to_f64(tau))));
    }
    let (nu_f, tau_f) = (to_f64(nu), to_f64(tau));
    match k_squared_integral(nu, tau, cfg) {
        Ok(est) => {
            let v = to_f64(est.value);
            let finite = v.is_finite();
            let nonzero = v.abs() > 1e-12;
            let conclusion = finite && nonzero;
            let statement = if conclusion {
                format!("∫ r K_ν² dr = {v:.12e} is finite and nonzero, so Im λₙ(iτ) = 0 follows")
            } else {
                format!("∫ r K_ν² dr = {v:.12e}; premise fails, conclusion withheld")
            };
            Ok(RealityFinding {
                nu: nu_f,
                tau: tau_f,
                integral: Some(v),
                finite,
                nonzero,
                conclusion,
                statement,
            })
        }
        Err(LabError::Divergence(msg)) => Ok(RealityFinding {
            nu: nu_f,
            tau: tau_f,
            integral: None,
            finite: false,
            nonzero: true,
            conclusion: false,
            statement: format!("integral diverges ({msg}); conclusion withheld"),
        }),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg() -> SpecFunConfig<f64> {
        SpecFunConfig::default()
    }

    #[test]
    fn nu_and_analytic_phase() {
        assert!(nu_from_lambda(0.0).is_err());
        assert_eq!(nu_from_lambda(2.0).unwrap(), 1.5);
        assert_eq!(nu_from_lambda(0.75).unwrap(), 1.0);
        assert_eq!(phase_shift_analytic(0.0).unwrap(), 0.0);
        assert!((phase_shift_analytic(2.0).unwrap() + PI / 2.0).abs() < 1e-15);
        assert!((phase_shift_analytic(0.75).unwrap() + PI / 4.0).abs() < 1e-15);
        for i in 1..=100 {
            assert!(phase_shift_analytic(0.1 * i as f64).unwrap() < 0.0);
        }
    }

    #[test]
    fn s_matrix_values_and_unitarity() {
        assert_eq!(s_matrix(0.0), Complex::new(1.0, 0.0));
        assert!((s_matrix(-PI / 2.0) - Complex::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((s_matrix(-PI / 4.0) - Complex::new(0.0, -1.0)).norm() < 1e-15);
        for i in 0..50 {
            let d = -3.0 + 0.13 * i as f64;
            assert!((s_matrix(d).norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn regular_solution_power_law() {
        for lambda in [0.5f64, 2.0, 5.0] {
            let r0: f64 = 1e-6;
            let v = integrate_radial(lambda, 1.0, r0, &[2.0 * r0], 1e-10).unwrap();
            let nu = nu_from_lambda(lambda).unwrap();
            let ratio = v[0].0 / r0.powf(0.5 + nu);
            assert!((ratio / 2f64.powf(0.5 + nu) - 1.0).abs() < 1e-6, "λ = {lambda}: {ratio}");
        }
    }

    #[test]
    fn numeric_phase_matches_analytic() {
        for (lambda, k) in [(2.0f64, 1.0f64), (0.75, 1.0), (2.0, 0.5)] {
            let r = phase_shift_numeric(lambda, k, &RadialSolverConfig::for_wavenumber(k)).unwrap();
            assert!(r.s_distance() <= 1e-4, "λ = {lambda}, k = {k}: {}", r.s_distance());
            assert!((r.s_matrix.norm() - 1.0).abs() <= 1e-12);
        }
        let r = phase_shift_numeric(0.75, 1.0, &RadialSolverConfig::for_wavenumber(1.0)).unwrap();
        assert!((r.s_matrix - Complex::new(0.0, -1.0)).norm() <= 1e-4);
    }

    #[test]
    fn non_oscillatory_match_point_is_a_solver_error() {
        let c = RadialSolverConfig {
            r0: 1e-6,
            r_match: 1.0,
            ode_tol: 1e-10,
            richardson: false,
        };
        assert!(matches!(phase_shift_numeric(5.0, 0.1, &c), Err(LabError::Solver(_))));
    }

    #[test]
    fn jost_asymptotics() {
        for nu in [0.6, 0.75] {
            let at = |x: f64| (jost_solution(1.0, x, nu, &cfg()).unwrap() * Complex::from_polar(1.0, -x) - 1.0).norm();
            let (d50, d200) = (at(50.0), at(200.0));
            assert!(d50 <= 2e-2 && d200 < d50, "ν = {nu}: {d50} {d200}");
        }
        assert!(jost_solution(1.0, 5.0, 2.0, &cfg()).is_err());
    }

    #[test]
    fn jost_half_order_closed_form() {
        // H_{1/2}(x) = -i √(2/(πx)) e^{ix}, so f = e^{ix} exactly at ν = 1/2
        let x = 10.0;
        let f = jost_solution(1.0, x, 0.500_000_1, &cfg()).unwrap();
        assert!((f - Complex::from_polar(1.0, x)).norm() < 1e-5, "{f}");
    }

    #[test]
    fn k_integral_matches_closed_form() {
        for nu in [0.6, 0.75, 0.9] {
            for tau in [0.5, 1.0, 2.0] {
                let q = k_squared_integral(nu, tau, &cfg()).unwrap();
                let exact = k_integral_closed_form(nu, tau);
                assert!(((q.value - exact) / exact).abs() <= 1e-8, "ν = {nu}, τ = {tau}: {} vs {exact}", q.value);
                assert!(q.error <= 1e-10);
                let ratio = q.value / k_integral_claimed(nu, tau);
                assert!((ratio - 4.0).abs() <= 1e-6);
            }
        }
    }

    #[test]
    fn k_integral_domain() {
        assert!(matches!(k_squared_integral(1.5, 1.0, &cfg()), Err(LabError::Divergence(_))));
        assert!(matches!(k_squared_integral(1.0, 1.0, &cfg()), Err(LabError::Divergence(_))));
        assert!(k_squared_integral(0.75, 0.0, &cfg()).is_err());
    }

    #[test]
    fn reality_findings() {
        let ok = reality_argument_report(0.75, 1.0, &cfg()).unwrap();
        assert!(ok.finite && ok.nonzero && ok.conclusion);
        let div = reality_argument_report(1.5, 1.0, &cfg()).unwrap();
        assert!(!div.finite && !div.conclusion && div.integral.is_none());
        assert!(reality_argument_report(0.75, 0.0, &cfg()).is_err());
    }

    #[test]
    fn tsv_layout() {
        let r = phase_shift_numeric(2.0, 1.0, &RadialSolverConfig::for_wavenumber(1.0)).unwrap();
        let text = phase_shift_tsv(&[r]);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), SCATTER_TSV_HEADER);
        assert_eq!(lines.next().unwrap().split('\t').count(), 8);
    }
}
