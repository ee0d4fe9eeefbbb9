use std::fmt::Write as _;

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use super::{find_check, Quantity, RunConfig, VerificationResult, REGISTRY};
use crate::error::{LabError, Result};
use crate::numfmt::{json_f64, json_num};
use crate::verdict::{Metric, Verdict};

/// Verdict tallies.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub confirmed: usize,
    pub refuted: usize,
    pub not_applicable: usize,
}

impl Summary {
    pub fn tally(results: &[VerificationResult]) -> Self {
        let mut s = Summary::default();
        for r in results {
            match r.verdict {
                Verdict::Confirmed => s.confirmed += 1,
                Verdict::Refuted => s.refuted += 1,
                Verdict::NotApplicable => s.not_applicable += 1,
            }
        }
        s
    }

    pub fn total(&self) -> usize {
        self.confirmed + self.refuted + self.not_applicable
    }
}

/// Outcome of a suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub version: String,
    /// Snapshot of every setting the run depended on.
    pub config: Value,
    pub results: Vec<VerificationResult>,
    pub summary: Summary,
}

fn config_snapshot(cfg: &RunConfig) -> Value {
    let tolerances: Map<String, Value> = REGISTRY
        .iter()
        .map(|c| (c.id.to_string(), json_num(cfg.tolerance(c))))
        .collect();
    let mut v = json!({
        "zeta_terms_min": cfg.specfun.zeta_terms_min,
        "zeta_bernoulli_order": cfg.specfun.zeta_bernoulli_order,
        "quad_abs_tol": json_num(cfg.specfun.quad_abs_tol),
        "quad_max_levels": cfg.specfun.quad_max_levels,
        "zero_t_max": json_num(cfg.zero_t_max),
        "scan_step": json_num(cfg.scan_step),
        "jobs": cfg.jobs,
        "tolerances": tolerances,
    });
    if let Some(ts) = &cfg.timestamp {
        v["timestamp"] = Value::String(ts.clone());
    }
    v
}

fn quantity_json(q: Quantity) -> Value {
    match q {
        Quantity::Real(x) => json_num(x),
        Quantity::Complex(z) => json!({ "re": json_num(z.re), "im": json_num(z.im) }),
    }
}

fn quantity_from_json(v: &Value) -> Option<Quantity> {
    match v {
        Value::Object(m) => Some(Quantity::Complex(Complex64::new(
            json_f64(m.get("re")?)?,
            json_f64(m.get("im")?)?,
        ))),
        other => json_f64(other).map(Quantity::Real),
    }
}

fn verdict_glyph(v: Verdict) -> &'static str {
    match v {
        Verdict::Confirmed => "✅",
        Verdict::Refuted => "❌",
        Verdict::NotApplicable => "⚪",
    }
}

fn md_number(q: Quantity) -> String {
    match q {
        Quantity::Real(x) => format!("{x:.10e}"),
        Quantity::Complex(z) => format!("{:.10e} {} {:.10e}i", z.re, if z.im < 0.0 { '-' } else { '+' }, z.im.abs()),
    }
}

fn md_escape(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

impl Report {
    pub fn new(cfg: &RunConfig, results: Vec<VerificationResult>) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config: config_snapshot(cfg),
            summary: Summary::tally(&results),
            results,
        }
    }

    pub fn has_refuted(&self) -> bool {
        self.summary.refuted > 0
    }

    pub fn to_json(&self) -> Value {
        let results: Vec<Value> = self
            .results
            .iter()
            .map(|r| {
                json!({
                    "check_id": r.check_id,
                    "case": r.case,
                    "paper_anchor": r.paper_anchor,
                    "lhs": quantity_json(r.lhs),
                    "rhs": quantity_json(r.rhs),
                    "abs_err": json_num(r.abs_err),
                    "rel_err": json_num(r.rel_err),
                    "tolerance": json_num(r.tolerance),
                    "metric": r.metric,
                    "verdict": r.verdict,
                    "note": r.note,
                })
            })
            .collect();
        json!({
            "version": self.version,
            "config": self.config,
            "results": results,
            "summary": {
                "CONFIRMED": self.summary.confirmed,
                "REFUTED": self.summary.refuted,
                "NOT_APPLICABLE": self.summary.not_applicable,
            },
        })
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: String| LabError::Validation(format!("report JSON: {m}"));
        let str_field = |o: &Value, k: &str| -> Result<String> {
            o.get(k).and_then(Value::as_str).map(str::to_string).ok_or_else(|| bad(format!("missing string `{k}`")))
        };
        let num_field = |o: &Value, k: &str| -> Result<f64> {
            o.get(k).and_then(json_f64).ok_or_else(|| bad(format!("missing number `{k}`")))
        };
        let rows = v.get("results").and_then(Value::as_array).ok_or_else(|| bad("missing `results`".into()))?;
        let mut results = Vec::with_capacity(rows.len());
        for row in rows {
            let q = |k: &str| -> Result<Quantity> {
                row.get(k).and_then(quantity_from_json).ok_or_else(|| bad(format!("bad `{k}`")))
            };
            let metric: Metric = serde_json::from_value(row.get("metric").cloned().unwrap_or(Value::Null))?;
            let verdict: Verdict = serde_json::from_value(row.get("verdict").cloned().unwrap_or(Value::Null))?;
            results.push(VerificationResult {
                check_id: str_field(row, "check_id")?,
                case: str_field(row, "case")?,
                paper_anchor: str_field(row, "paper_anchor")?,
                lhs: q("lhs")?,
                rhs: q("rhs")?,
                abs_err: num_field(row, "abs_err")?,
                rel_err: num_field(row, "rel_err")?,
                tolerance: num_field(row, "tolerance")?,
                metric,
                verdict,
                note: str_field(row, "note")?,
            });
        }
        let summary = Summary::tally(&results);
        let count = |k: &str| v.get("summary").and_then(|s| s.get(k)).and_then(Value::as_u64).map(|n| n as usize);
        if count("CONFIRMED") != Some(summary.confirmed)
            || count("REFUTED") != Some(summary.refuted)
            || count("NOT_APPLICABLE") != Some(summary.not_applicable)
        {
            return Err(bad("summary does not match the results".into()));
        }
        Ok(Self {
            version: str_field(v, "version")?,
            config: v.get("config").cloned().ok_or_else(|| bad("missing `config`".into()))?,
            results,
            summary,
        })
    }

    /// One table per module, in registry order.
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# Verification report\n");
        let _ = writeln!(
            out,
            "version {} · {} confirmed · {} refuted · {} not applicable\n",
            self.version, self.summary.confirmed, self.summary.refuted, self.summary.not_applicable
        );
        let mut modules: Vec<&str> = Vec::new();
        for r in &self.results {
            let m = find_check(&r.check_id).map_or("other", |c| c.module());
            if !modules.contains(&m) {
                modules.push(m);
            }
        }
        for m in modules {
            let _ = writeln!(out, "## {m}\n");
            let _ = writeln!(out, "| check | case | anchor | lhs | rhs | \\|lhs − rhs\\| | tolerance | metric | verdict | note |");
            let _ = writeln!(out, "|---|---|---|---|---|---|---|---|---|---|");
            for r in self.results.iter().filter(|r| find_check(&r.check_id).map_or("other", |c| c.module()) == m) {
                let metric = serde_json::to_value(r.metric).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "| {} | {} | {} | {} | {} | {:.3e} | {:.1e} | {} | {} {} | {} |",
                    r.check_id,
                    md_escape(&r.case),
                    md_escape(&r.paper_anchor),
                    md_number(r.lhs),
                    md_number(r.rhs),
                    r.abs_err,
                    r.tolerance,
                    metric,
                    verdict_glyph(r.verdict),
                    r.verdict,
                    md_escape(&r.note),
                );
            }
            out.push('\n');
        }
        out
    }
}
