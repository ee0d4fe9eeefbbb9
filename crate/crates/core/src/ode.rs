//! Adaptive Dormand–Prince 5(4) integrator for small first-order systems.

use crate::error::{LabError, Result};
use crate::scalar::{lit, to_f64, Real};

/// Step-size control settings.
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions<T> {
    /// Per-step tolerance applied relative to the state magnitude.
    pub tol: T,
    /// Initial step; the controller adapts it immediately.
    pub initial_step: T,
    pub max_steps: usize,
}

/// Endpoint of an integration together with step statistics.
#[derive(Debug, Clone, Copy)]
pub struct OdeEndpoint<T, const N: usize> {
    pub x: T,
    pub y: [T; N],
    pub accepted: usize,
    pub rejected: usize,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];

// 5th-order weights minus embedded 4th-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn max_abs<T: Real, const N: usize>(v: &[T; N]) -> T {
    v.iter().fold(T::zero(), |m, x| m.max(x.abs()))
}

/// Integrates `y' = f(x, y)` from `x0` to `x1`, landing exactly on `x1`.
pub fn integrate<T, F, const N: usize>(
    f: F,
    x0: T,
    y0: [T; N],
    x1: T,
    opts: OdeOptions<T>,
) -> Result<OdeEndpoint<T, N>>
where
    T: Real,
    F: Fn(T, &[T; N]) -> [T; N],
{
    if !(x1 > x0) {
        return Err(LabError::Argument(format!(
            "integration interval must be increasing, got [{}, {}]",
            to_f64(x0),
            to_f64(x1)
        )));
    }
    let a: [[T; 6]; 7] = A.map(|row| row.map(lit));
    let c: [T; 7] = C.map(lit);
    let e: [T; 7] = E.map(lit);
    let safety: T = lit(0.9);
    let grow_max: T = lit(5.0);
    let shrink_min: T = lit(0.2);
    let fifth: T = lit(0.2);

    let mut x = x0;
    let mut y = y0;
    let mut h = opts.initial_step.min(x1 - x0);
    let mut k = [[T::zero(); N]; 7];
    k[0] = f(x, &y);
    let mut accepted = 0usize;
    let mut rejected = 0usize;

    while x < x1 {
        if accepted + rejected >= opts.max_steps {
            return Err(LabError::Solver(format!(
                "step budget of {} exhausted at x = {}",
                opts.max_steps,
                to_f64(x)
            )));
        }
        let last = x + h >= x1;
        if last {
            h = x1 - x;
        }
        for stage in 1..7 {
            let mut ys = y;
            for (i, yi) in ys.iter_mut().enumerate() {
                let mut acc = T::zero();
                for j in 0..stage {
                    acc = acc + a[stage][j] * k[j][i];
                }
                *yi = *yi + h * acc;
            }
            k[stage] = f(x + c[stage] * h, &ys);
        }
        // FSAL: the last stage point is the 5th-order solution
        let mut y_new = y;
        for (i, yi) in y_new.iter_mut().enumerate() {
            let mut acc = T::zero();
            for j in 0..6 {
                acc = acc + a[6][j] * k[j][i];
            }
            *yi = *yi + h * acc;
        }
        let mut err = [T::zero(); N];
        for (i, ei) in err.iter_mut().enumerate() {
            let mut acc = T::zero();
            for j in 0..7 {
                acc = acc + e[j] * k[j][i];
            }
            *ei = h * acc;
        }
        let scale = opts.tol * max_abs(&y).max(max_abs(&y_new)) + T::min_positive_value();
        let ratio = max_abs(&err) / scale;
        if !ratio.is_finite() || !h.is_finite() || h <= T::zero() {
            return Err(LabError::Solver(format!("non-finite step at x = {}", to_f64(x))));
        }

        if ratio <= T::one() {
            x = if last { x1 } else { x + h };
            y = y_new;
            k[0] = k[6];
            accepted += 1;
            let factor = if ratio == T::zero() {
                grow_max
            } else {
                (safety * ratio.powf(-fifth)).min(grow_max).max(shrink_min)
            };
            h = h * factor;
        } else {
            rejected += 1;
            h = h * (safety * ratio.powf(-fifth)).max(shrink_min);
        }
        if h < (x.abs() + T::one()) * T::epsilon() {
            return Err(LabError::Solver(format!("step size underflow at x = {}", to_f64(x))));
        }
    }

    Ok(OdeEndpoint {
        x,
        y,
        accepted,
        rejected,
    })
}
