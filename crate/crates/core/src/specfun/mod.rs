//! Special functions consumed by the rest of the crate: complex Γ and ζ,
//! Bessel K_ν, J_ν, Y_ν, the Hankel function H⁽¹⁾_ν, and Euler's constant.
//!
//! Every function is a pure function of its arguments and an immutable
//! [`SpecFunConfig`]; identical inputs give bit-identical outputs.

mod bessel;
mod gamma;
mod zeta;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::scalar::{lit, Real};

pub use bessel::{bessel_j, bessel_k, bessel_y, hankel1, MAX_ORDER as BESSEL_MAX_ORDER};
pub use gamma::{complex_gamma, log_gamma};
pub use zeta::zeta_alternating;

/// Tuning knobs for ζ summation and quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecFunConfig<T> {
    /// Lower bound on the Euler–Maclaurin direct-sum length.
    pub zeta_terms_min: usize,
    /// Highest Bernoulli index used in the Euler–Maclaurin tail (even, 4..=24).
    pub zeta_bernoulli_order: usize,
    /// Absolute error target for the norm integrals.
    pub quad_abs_tol: T,
    /// Maximum step-halving levels in double-exponential quadrature.
    pub quad_max_levels: usize,
}

impl<T: Real> Default for SpecFunConfig<T> {
    fn default() -> Self {
        Self {
            zeta_terms_min: 10,
            zeta_bernoulli_order: 12,
            quad_abs_tol: lit(1e-12),
            quad_max_levels: 12,
        }
    }
}

impl<T: Real> SpecFunConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.zeta_terms_min < 10 {
            return Err(LabError::Validation(format!(
                "zeta_terms_min must be ≥ 10, got {}",
                self.zeta_terms_min
            )));
        }
        let order = self.zeta_bernoulli_order;
        if !order.is_multiple_of(2) || !(4..=24).contains(&order) {
            return Err(LabError::Validation(format!(
                "zeta_bernoulli_order must be even and in [4, 24], got {order}"
            )));
        }
        if !(self.quad_abs_tol > T::zero()) {
            return Err(LabError::Validation("quad_abs_tol must be positive".into()));
        }
        if self.quad_max_levels < 4 {
            return Err(LabError::Validation("quad_max_levels must be at least 4".into()));
        }
        Ok(())
    }
}

/// Riemann ζ(s) by Euler–Maclaurin summation with cutoff
/// `N = max(zeta_terms_min, ⌈2|Im s|⌉ + 20)`.
pub fn complex_zeta<T: Real>(s: Complex<T>, cfg: &SpecFunConfig<T>) -> Result<Complex<T>> {
    zeta::zeta_euler_maclaurin(s, cfg)
}

/// The entire function `(s-1)ζ(s)`; finite at `s = 1`, where it equals 1.
pub fn zeta_pole_free<T: Real>(s: Complex<T>, cfg: &SpecFunConfig<T>) -> Complex<T> {
    zeta::zeta_times_s_minus_one(s, cfg)
}

/// Euler–Mascheroni constant γ.
pub fn euler_gamma_const<T: Real>() -> T {
    lit(0.577_215_664_901_532_9)
}
