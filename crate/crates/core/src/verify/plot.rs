use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{LabError, Result};
use crate::numfmt::sci;
use crate::scattering::{nu_from_lambda, phase_shift_numeric, RadialSolverConfig};
use crate::specfun::SpecFunConfig;
use crate::spectrum::lambda_from_zero;
use crate::xi::big_xi;
use crate::zeros::CriticalZero;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    BigXiCurve,
    Spectrum,
    PhaseSweep,
}

impl FromStr for PlotKind {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "big_xi_curve" => Ok(PlotKind::BigXiCurve),
            "spectrum" => Ok(PlotKind::Spectrum),
            "phase_sweep" => Ok(PlotKind::PhaseSweep),
            other => Err(LabError::Usage(format!(
                "unknown plot kind {other:?}; expected big_xi_curve, spectrum or phase_sweep"
            ))),
        }
    }
}

impl PlotKind {
    pub fn name(self) -> &'static str {
        match self {
            PlotKind::BigXiCurve => "big_xi_curve",
            PlotKind::Spectrum => "spectrum",
            PlotKind::PhaseSweep => "phase_sweep",
        }
    }
}

/// What to plot. `start`, `end` and `points` describe a t grid for
/// `big_xi_curve` (step = (end-start)/(points-1)) and a logarithmic λ grid
/// for `phase_sweep`; `spectrum` reads `zeros` instead.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotRequest {
    pub kind: PlotKind,
    pub start: f64,
    pub end: f64,
    pub points: usize,
    /// Wavenumber used by `phase_sweep`.
    pub k: f64,
    pub zeros: Vec<CriticalZero<f64>>,
}

impl PlotRequest {
    /// Default ranges: Ξ on [0, 50] step 0.1; λ ∈ [0.1, 10] with 25 points at k = 1.
    pub fn new(kind: PlotKind) -> Self {
        let (start, end, points) = match kind {
            PlotKind::BigXiCurve => (0.0, 50.0, 501),
            PlotKind::PhaseSweep => (0.1, 10.0, 25),
            PlotKind::Spectrum => (0.0, 0.0, 0),
        };
        Self {
            kind,
            start,
            end,
            points,
            k: 1.0,
            zeros: Vec::new(),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match self.kind {
            PlotKind::BigXiCurve => self.start.is_finite() && self.end.is_finite() && self.start < self.end && self.points >= 2,
            PlotKind::PhaseSweep => self.start > 0.0 && self.start < self.end && self.end.is_finite() && self.points >= 2 && self.k > 0.0,
            PlotKind::Spectrum => true,
        };
        if ok {
            Ok(())
        } else {
            Err(LabError::Usage(format!(
                "invalid range for {}: [{}, {}] with {} points",
                self.kind.name(),
                self.start,
                self.end,
                self.points
            )))
        }
    }

    fn grid(&self, log: bool) -> Vec<f64> {
        let n = self.points - 1;
        (0..=n)
            .map(|i| {
                let f = i as f64 / n as f64;
                if i == n {
                    self.end
                } else if log {
                    (self.start.ln() + f * (self.end.ln() - self.start.ln())).exp()
                } else {
                    self.start + f * (self.end - self.start)
                }
            })
            .collect()
    }
}

/// TSV text: a `#` comment line naming the columns and generating flags,
/// then one header row and the data.
pub fn plot_tsv(req: &PlotRequest, cfg: &SpecFunConfig<f64>) -> Result<String> {
    req.validate()?;
    let mut out = String::new();
    match req.kind {
        PlotKind::BigXiCurve => {
            out.push_str(&format!(
                "# columns: t big_xi; flags: --kind big_xi_curve --from {} --to {} --points {}\n",
                req.start, req.end, req.points
            ));
            out.push_str("t\tbig_xi\n");
            for t in req.grid(false) {
                out.push_str(&format!("{}\t{}\n", sci(t), sci(big_xi(t, cfg)?)));
            }
        }
        PlotKind::Spectrum => {
            out.push_str(&format!(
                "# columns: n t lambda; flags: --kind spectrum ({} zeros)\n",
                req.zeros.len()
            ));
            out.push_str("n\tt\tlambda\n");
            for z in &req.zeros {
                let c = lambda_from_zero(z)?;
                out.push_str(&format!("{}\t{}\t{}\n", z.n, sci(z.t), sci(c.lambda)));
            }
        }
        PlotKind::PhaseSweep => {
            out.push_str(&format!(
                "# columns: lambda nu delta_analytic delta_numeric s_distance; flags: --kind phase_sweep --from {} --to {} --points {} --k {}\n",
                req.start, req.end, req.points, req.k
            ));
            out.push_str("lambda\tnu\tdelta_analytic\tdelta_numeric\ts_distance\n");
            let cfg = RadialSolverConfig::for_wavenumber(req.k);
            let rows: Vec<Result<String>> = {
                use rayon::prelude::*;
                req.grid(true)
                    .par_iter()
                    .map(|&l| {
                        let p = phase_shift_numeric(l, req.k, &cfg)?;
                        Ok(format!(
                            "{}\t{}\t{}\t{}\t{}\n",
                            sci(l),
                            sci(nu_from_lambda(l)?),
                            sci(p.delta_analytic),
                            sci(p.delta_numeric),
                            sci(p.s_distance())
                        ))
                    })
                    .collect()
            };
            for r in rows {
                out.push_str(&r?);
            }
        }
    }
    Ok(out)
}

pub fn emit_plot_data(req: &PlotRequest, cfg: &SpecFunConfig<f64>, path: &Path) -> Result<()> {
    let text = plot_tsv(req, cfg)?;
    fs::write(path, text)?;
    Ok(())
}
