//! Zeros of ξ on the critical line: sign-change scan of Ξ(t), bisection,
//! and the zero-table file formats.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{LabError, Result};
use crate::numfmt::{json_f64, json_num, sci};
use crate::scalar::{lit, to_f64, Real};
use crate::specfun::{log_gamma, zeta_alternating, SpecFunConfig};
use crate::xi::big_xi;

/// Header line of the zero-table CSV.
pub const ZERO_TABLE_HEADER: [&str; 5] = ["n", "t", "bracket_lo", "bracket_hi", "residual"];

/// A refined zero ½ + itₙ of ξ, stored by its ordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalZero<T> {
    /// 1-based index in the table.
    pub n: usize,
    pub t: T,
    pub bracket_lo: T,
    pub bracket_hi: T,
    /// |Ξ(t)| at the returned point.
    pub residual: T,
}

impl<T: Real> CriticalZero<T> {
    pub fn s(&self) -> Complex<T> {
        Complex::new(lit(0.5), self.t)
    }
}

/// Scan window, grid step and bisection target.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig<T> {
    pub t_min: T,
    pub t_max: T,
    pub step: T,
    pub bisect_tol: T,
}

impl<T: Real> Default for ScanConfig<T> {
    fn default() -> Self {
        Self {
            t_min: T::zero(),
            t_max: lit(60.0),
            step: lit(0.05),
            bisect_tol: lit(1e-10),
        }
    }
}

impl<T: Real> ScanConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.t_min >= T::zero() && self.t_min < self.t_max) || !self.t_max.is_finite() {
            return Err(LabError::Validation(format!(
                "need 0 ≤ t_min < t_max, got [{}, {}]",
                to_f64(self.t_min),
                to_f64(self.t_max)
            )));
        }
        if !(self.step > T::zero() && self.step <= lit(0.25)) {
            return Err(LabError::Validation(format!("step must be in (0, 0.25], got {}", to_f64(self.step))));
        }
        // brackets narrower than 1e-9 are part of the table contract
        if !(self.bisect_tol >= lit(1e-12) && self.bisect_tol <= lit(1e-9)) {
            return Err(LabError::Validation(format!(
                "bisect_tol must be in [1e-12, 1e-9], got {}",
                to_f64(self.bisect_tol)
            )));
        }
        Ok(())
    }

    /// Grid `t_min + i·step`, with the last point clamped to `t_max`.
    fn grid(&self) -> Vec<T> {
        let n = ((self.t_max - self.t_min) / self.step).ceil().to_usize().unwrap_or(0);
        (0..=n)
            .map(|i| (self.t_min + self.step * lit(i as f64)).min(self.t_max))
            .collect()
    }
}

/// Which ζ evaluation feeds Ξ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ZetaRoute {
    /// Euler–Maclaurin through [`crate::xi::xi`].
    EulerMaclaurin,
    /// Borwein-accelerated alternating η series; shares no ζ code with the
    /// default route.
    Alternating,
}

/// Ξ(t) by the chosen ζ route.
pub fn critical_xi<T: Real>(t: T, route: ZetaRoute, cfg: &SpecFunConfig<T>) -> Result<T> {
    match route {
        ZetaRoute::EulerMaclaurin => big_xi(t, cfg),
        ZetaRoute::Alternating => {
            let half: T = lit(0.5);
            let s = Complex::new(half, t);
            let zeta = zeta_alternating(s)?;
            let ln_pi_gamma = log_gamma(s * half)? - s * half * T::PI().ln();
            Ok((s * (s - T::one()) * half * ln_pi_gamma.exp() * zeta).re)
        }
    }
}

fn sign_changes<T: Real>(grid: &[T], values: &[T]) -> Vec<(T, T)> {
    grid.windows(2)
        .zip(values.windows(2))
        .filter(|(_, v)| (v[0] < T::zero()) != (v[1] < T::zero()))
        .map(|(g, _)| (g[0], g[1]))
        .collect()
}

/// Every grid interval on which Ξ changes sign, in increasing `t`.
pub fn scan_brackets<T: Real>(scan: &ScanConfig<T>, route: ZetaRoute, cfg: &SpecFunConfig<T>) -> Result<Vec<(T, T)>> {
    scan.validate()?;
    let grid = scan.grid();
    let values = grid.iter().map(|&t| critical_xi(t, route, cfg)).collect::<Result<Vec<_>>>()?;
    Ok(sign_changes(&grid, &values))
}

/// [`scan_brackets`] with grid evaluations spread over the rayon pool.
/// Output is identical to the serial scan.
pub fn scan_brackets_parallel<T: Real>(
    scan: &ScanConfig<T>,
    route: ZetaRoute,
    cfg: &SpecFunConfig<T>,
) -> Result<Vec<(T, T)>> {
    scan.validate()?;
    let grid = scan.grid();
    let values = grid.par_iter().map(|&t| critical_xi(t, route, cfg)).collect::<Result<Vec<_>>>()?;
    Ok(sign_changes(&grid, &values))
}

/// Bisects a sign-change bracket down to width `tol` and returns the midpoint.
pub fn refine_zero<T: Real>(
    n: usize,
    bracket: (T, T),
    tol: T,
    route: ZetaRoute,
    cfg: &SpecFunConfig<T>,
) -> Result<CriticalZero<T>> {
    let (mut lo, mut hi) = bracket;
    let mut f_lo = critical_xi(lo, route, cfg)?;
    let f_hi = critical_xi(hi, route, cfg)?;
    if !(lo < hi) || (f_lo < T::zero()) == (f_hi < T::zero()) {
        return Err(LabError::Argument(format!(
            "no sign change of Ξ on [{}, {}]",
            to_f64(lo),
            to_f64(hi)
        )));
    }
    let half: T = lit(0.5);
    while hi - lo > tol {
        let mid = lo + (hi - lo) * half;
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = critical_xi(mid, route, cfg)?;
        if (f_mid < T::zero()) == (f_lo < T::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    let t = lo + (hi - lo) * half;
    Ok(CriticalZero {
        n,
        t,
        bracket_lo: lo,
        bracket_hi: hi,
        residual: critical_xi(t, route, cfg)?.abs(),
    })
}

/// Scans and refines, numbering zeros from 1 in increasing `t`.
pub fn find_zeros<T: Real>(scan: &ScanConfig<T>, route: ZetaRoute, cfg: &SpecFunConfig<T>) -> Result<Vec<CriticalZero<T>>> {
    let brackets = scan_brackets_parallel(scan, route, cfg)?;
    brackets
        .par_iter()
        .enumerate()
        .map(|(i, &b)| refine_zero(i + 1, b, scan.bisect_tol, route, cfg))
        .collect()
}

/// Checks the table invariants: contiguous indices, strictly increasing
/// ordinates, and each ordinate strictly inside its bracket.
pub fn validate_table<T: Real>(zeros: &[CriticalZero<T>]) -> Result<()> {
    for (i, z) in zeros.iter().enumerate() {
        if z.n != i + 1 {
            return Err(LabError::Validation(format!("row {} has index {}", i + 1, z.n)));
        }
        if !(z.bracket_lo < z.t && z.t < z.bracket_hi) {
            return Err(LabError::Validation(format!("zero {} lies outside its bracket", z.n)));
        }
        if i > 0 && !(zeros[i - 1].t < z.t) {
            return Err(LabError::Validation(format!("ordinates not increasing at zero {}", z.n)));
        }
    }
    Ok(())
}

pub fn zero_table_csv<T: Real>(zeros: &[CriticalZero<T>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(ZERO_TABLE_HEADER).map_err(csv_io)?;
    for z in zeros {
        w.write_record([z.n.to_string(), sci(z.t), sci(z.bracket_lo), sci(z.bracket_hi), sci(z.residual)])
            .map_err(csv_io)?;
    }
    let bytes = w.into_inner().map_err(|e| LabError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("ASCII output"))
}

pub fn write_zero_table<T: Real>(path: &Path, zeros: &[CriticalZero<T>]) -> Result<()> {
    validate_table(zeros)?;
    let text = zero_table_csv(zeros)?;
    fs::File::create(path)?.write_all(text.as_bytes())?;
    Ok(())
}

pub fn parse_zero_table<T: Real>(text: &str) -> Result<Vec<CriticalZero<T>>> {
    let mut r = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    let mut records = r.records();
    let header = match records.next() {
        Some(h) => h.map_err(csv_parse)?,
        None => return Err(LabError::Parse { line: 1, message: "missing header".into() }),
    };
    if header.iter().ne(ZERO_TABLE_HEADER) {
        return Err(LabError::Parse {
            line: 1,
            message: format!("expected header {}", ZERO_TABLE_HEADER.join(",")),
        });
    }
    let mut zeros = Vec::new();
    for rec in records {
        let rec = rec.map_err(csv_parse)?;
        let line = rec.position().map_or(0, |p| p.line());
        let field = |i: usize| -> Result<f64> {
            let raw = rec.get(i).ok_or_else(|| LabError::Parse {
                line,
                message: format!("expected {} fields, found {}", ZERO_TABLE_HEADER.len(), rec.len()),
            })?;
            raw.trim().parse::<f64>().map_err(|_| LabError::Parse {
                line,
                message: format!("field `{}` is not a number: {raw:?}", ZERO_TABLE_HEADER[i]),
            })
        };
        let n = rec.get(0).and_then(|s| s.trim().parse::<usize>().ok()).ok_or_else(|| LabError::Parse {
            line,
            message: "field `n` is not a positive integer".into(),
        })?;
        if rec.len() != ZERO_TABLE_HEADER.len() {
            return Err(LabError::Parse {
                line,
                message: format!("expected {} fields, found {}", ZERO_TABLE_HEADER.len(), rec.len()),
            });
        }
        zeros.push(CriticalZero {
            n,
            t: lit(field(1)?),
            bracket_lo: lit(field(2)?),
            bracket_hi: lit(field(3)?),
            residual: lit(field(4)?),
        });
    }
    validate_table(&zeros)?;
    Ok(zeros)
}

pub fn read_zero_table<T: Real>(path: &Path) -> Result<Vec<CriticalZero<T>>> {
    parse_zero_table(&fs::read_to_string(path)?)
}

/// JSON mirror of the CSV table: `{"zeros": [{n, t, bracket_lo, bracket_hi, residual}, …]}`.
pub fn zero_table_json<T: Real>(zeros: &[CriticalZero<T>]) -> Value {
    let rows: Vec<Value> = zeros
        .iter()
        .map(|z| {
            json!({
                "n": z.n,
                "t": json_num(z.t),
                "bracket_lo": json_num(z.bracket_lo),
                "bracket_hi": json_num(z.bracket_hi),
                "residual": json_num(z.residual),
            })
        })
        .collect();
    json!({ "zeros": rows })
}

pub fn zero_table_from_json(v: &Value) -> Result<Vec<CriticalZero<f64>>> {
    let bad = |m: &str| LabError::Validation(format!("zero table JSON: {m}"));
    let rows = v.get("zeros").and_then(Value::as_array).ok_or_else(|| bad("missing `zeros` array"))?;
    let mut zeros = Vec::with_capacity(rows.len());
    for row in rows {
        let num = |k: &str| row.get(k).and_then(json_f64).ok_or_else(|| bad(&format!("bad field `{k}`")));
        zeros.push(CriticalZero {
            n: row.get("n").and_then(Value::as_u64).ok_or_else(|| bad("bad field `n`"))? as usize,
            t: num("t")?,
            bracket_lo: num("bracket_lo")?,
            bracket_hi: num("bracket_hi")?,
            residual: num("residual")?,
        });
    }
    validate_table(&zeros)?;
    Ok(zeros)
}

fn csv_io(e: csv::Error) -> LabError {
    LabError::Io(std::io::Error::other(e.to_string()))
}

fn csv_parse(e: csv::Error) -> LabError {
    let line = e.position().map_or(0, |p| p.line());
    LabError::Parse {
        line,
        message: e.to_string(),
    }
}
