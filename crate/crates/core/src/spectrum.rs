//! The λ ↔ s dictionary λ = s(s-1) and the reality/negativity audit of
//! zero-derived couplings.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::numfmt::sci;
use crate::scalar::{lit, real, to_f64, Real};
use crate::verdict::Verdict;
use crate::zeros::CriticalZero;

pub const SPECTRUM_HEADER: &str = "n,t,lambda,im_residual";

/// Coupling constant λₙ = sₙ(sₙ-1) of the zero ½ + itₙ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingConstant<T> {
    pub n: usize,
    pub lambda: T,
    pub source_t: T,
    /// |Im λ| before it was projected out.
    pub im_residual: T,
}

pub fn lambda_from_s<T: Real>(s: Complex<T>) -> Complex<T> {
    s * (s - T::one())
}

fn residual_bound<T: Real>(lambda: T) -> T {
    lit::<T>(1e-12) * (T::one() + lambda.abs())
}

/// λ from a critical zero through the complex product; the imaginary part is
/// recorded, checked against `1e-12·(1 + |λ|)`, then dropped.
pub fn lambda_from_zero<T: Real>(z: &CriticalZero<T>) -> Result<CouplingConstant<T>> {
    let l = lambda_from_s(z.s());
    let im_residual = l.im.abs();
    if !(im_residual <= residual_bound(l.re)) || !l.re.is_finite() {
        return Err(LabError::Accuracy(format!(
            "λ for t = {} has imaginary residue {}",
            to_f64(z.t),
            to_f64(im_residual)
        )));
    }
    Ok(CouplingConstant {
        n: z.n,
        lambda: l.re,
        source_t: z.t,
        im_residual,
    })
}

/// Both roots of `s² - s - λ = 0`, larger real part (or positive imaginary
/// part) first. For `λ < -¼` the real part is exactly ½.
pub fn s_from_lambda<T: Real>(lambda: T) -> (Complex<T>, Complex<T>) {
    let half: T = lit(0.5);
    let disc = lit::<T>(0.25) + lambda;
    if disc < T::zero() {
        let t = (-disc).sqrt();
        (Complex::new(half, t), Complex::new(half, -t))
    } else {
        let r = disc.sqrt();
        (real(half + r), real(half - r))
    }
}

/// One audited zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditRow {
    pub n: usize,
    pub t: f64,
    pub lambda: f64,
    pub im_residual: f64,
    pub real_ok: bool,
    pub below_quarter: bool,
    /// |t recovered from λ - t|
    pub roundtrip_error: f64,
    pub roundtrip_ok: bool,
    /// Set when λ could not be formed at all.
    pub error: Option<String>,
}

impl AuditRow {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.real_ok && self.below_quarter && self.roundtrip_ok
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumAudit {
    pub rows: Vec<AuditRow>,
    pub verdict: Verdict,
}

/// Per-zero checks: residual within tolerance, λ < -¼, and the round trip
/// λ → t within 1e-10. Confirmed only if every row passes; an empty table
/// is not applicable.
pub fn audit_spectrum<T: Real>(zeros: &[CriticalZero<T>]) -> SpectrumAudit {
    let rows: Vec<AuditRow> = zeros
        .iter()
        .map(|z| {
            let raw = lambda_from_s(z.s());
            let mut row = AuditRow {
                n: z.n,
                t: to_f64(z.t),
                lambda: to_f64(raw.re),
                im_residual: to_f64(raw.im.abs()),
                real_ok: false,
                below_quarter: false,
                roundtrip_error: f64::NAN,
                roundtrip_ok: false,
                error: None,
            };
            match lambda_from_zero(z) {
                Ok(c) => {
                    row.real_ok = true;
                    row.below_quarter = c.lambda < lit(-0.25);
                    let (root, _) = s_from_lambda(c.lambda);
                    row.roundtrip_error = to_f64((root.im - z.t.abs()).abs());
                    row.roundtrip_ok = row.roundtrip_error <= 1e-10;
                }
                Err(e) => row.error = Some(e.to_string()),
            }
            row
        })
        .collect();
    let verdict = if rows.is_empty() {
        Verdict::NotApplicable
    } else {
        Verdict::from_pass(rows.iter().all(AuditRow::passed))
    };
    SpectrumAudit { rows, verdict }
}

/// Couplings for a whole zero table, in table order.
pub fn spectrum_from_zeros<T: Real>(zeros: &[CriticalZero<T>]) -> Result<Vec<CouplingConstant<T>>> {
    zeros.iter().map(lambda_from_zero).collect()
}

pub fn spectrum_csv<T: Real>(spectrum: &[CouplingConstant<T>]) -> String {
    let mut out = String::from(SPECTRUM_HEADER);
    out.push('\n');
    for c in spectrum {
        out.push_str(&format!("{},{},{},{}\n", c.n, sci(c.source_t), sci(c.lambda), sci(c.im_residual)));
    }
    out
}

pub fn write_spectrum<T: Real>(path: &Path, spectrum: &[CouplingConstant<T>]) -> Result<()> {
    fs::File::create(path)?.write_all(spectrum_csv(spectrum).as_bytes())?;
    Ok(())
}

pub fn parse_spectrum(text: &str) -> Result<Vec<CouplingConstant<f64>>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == SPECTRUM_HEADER => {}
        _ => {
            return Err(LabError::Parse {
                line: 1,
                message: format!("expected header {SPECTRUM_HEADER}"),
            })
        }
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let line_no = i as u64 + 1;
        let bad = |m: String| LabError::Parse { line: line_no, message: m };
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 4 {
            return Err(bad(format!("expected 4 fields, found {}", fields.len())));
        }
        let num = |j: usize| fields[j].parse::<f64>().map_err(|_| bad(format!("not a number: {:?}", fields[j])));
        out.push(CouplingConstant {
            n: fields[0].parse().map_err(|_| bad(format!("bad index {:?}", fields[0])))?,
            source_t: num(1)?,
            lambda: num(2)?,
            im_residual: num(3)?,
        });
    }
    Ok(out)
}
