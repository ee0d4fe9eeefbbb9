use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckSpec, Context, VerificationResult as Row};
use crate::error::{LabError, Result};
use crate::scattering::{
    jost_solution, k_integral_claimed, k_integral_closed_form, k_squared_integral, phase_sweep,
    reality_argument_report,
};
use crate::specfun::{complex_gamma, SpecFunConfig};
use crate::spectrum::{audit_spectrum, lambda_from_zero, s_from_lambda};
use crate::verdict::Metric;
use crate::xi::{
    b0_claimed, b0_closed_form, chi_direct, chi_lambda_roundtrip, chi_via_ratio, estimate_b0, hadamard_partial, xi,
    xi_unreflected, ChiConstants, HadamardTruncation,
};

pub(super) fn run(spec: &CheckSpec, ctx: &Context) -> Result<Vec<Row>> {
    let tol = ctx.cfg.tolerance(spec);
    match spec.id {
        "xi.functional_equation" => functional_equation(spec, ctx, tol),
        "xi.no_zeros_outside_strip" => no_zeros_outside_strip(spec, ctx, tol),
        "zeros.first_ten" => first_ten(spec, ctx, tol),
        "hadamard.convergence" => hadamard_convergence(spec, ctx, tol),
        "hadamard.b0_eq39" => b0_rows(spec, ctx, tol),
        "spectrum.real_negative" => real_negative(spec, ctx, tol),
        "spectrum.below_quarter" => below_quarter(spec, ctx),
        "scatter.phase_match" => phase_match(spec, tol),
        "scatter.energy_independence" => energy_independence(spec, tol),
        "scatter.jost_asymptotic" => jost_asymptotic(spec, ctx, tol),
        "scatter.k_integral_eq36pp" => k_integral(spec, ctx, tol),
        "scatter.reality_conclusion" => reality(spec, ctx, tol),
        "chi.lambda_roundtrip" => lambda_roundtrip(spec, tol),
        "chi.ratio_vs_direct" => ratio_vs_direct(spec, ctx, tol),
        "chi.beta_eq41" => beta_rows(spec, ctx, tol),
        other => Err(LabError::Usage(format!("no implementation for {other}"))),
    }
}

fn functional_equation(spec: &CheckSpec, ctx: &Context, tol: f64) -> Result<Vec<Row>> {
    let mut worst = 0.0f64;
    let mut at = Complex64::new(0.0, 0.0);
    for i in 0..=20 {
        let sigma = -2.0 + 0.25 * i as f64;
        for t in 0..=40 {
            let s = Complex64::new(sigma, t as f64);
            let a = xi_unreflected(s, ctx.spec());
            let b = xi_unreflected(1.0 - s, ctx.spec());
            let d = (a - b).norm() / (1.0 + a.norm());
            if !(d <= worst) {
                worst = d;
                at = s;
            }
        }
    }
    Ok(vec![Row::compare(spec, "max over grid", worst, 0.0, Metric::Absolute, tol)
        .with_note(format!("worst at s = {} + {}i; both sides evaluated without reflection", at.re, at.im))])
}

/// `½ s(s-1) π^{-s/2} Γ(s/2)`, the zero-free factor in front of ζ.
fn xi_prefactor(s: Complex64) -> Result<Complex64> {
    let g = complex_gamma(s / 2.0)?;
    Ok(0.5 * s * (s - 1.0) * (-s / 2.0 * std::f64::consts::PI.ln()).exp() * g)
}

fn no_zeros_outside_strip(spec: &CheckSpec, ctx: &Context, tol: f64) -> Result<Vec<Row>> {
    let mut raw_min = f64::INFINITY;
    let mut scaled_min = f64::INFINITY;
    for sigma in [1.1, 1.5, 2.0, 3.0, -0.1, -1.0] {
        for i in 0..=80 {
            let s = Complex64::new(sigma, 0.5 * i as f64);
            let v = xi(s, ctx.spec());
            raw_min = raw_min.min(v.norm());
            scaled_min = scaled_min.min(v.norm() / xi_prefactor(s)?.norm());
        }
    }
    Ok(vec![
        Row::compare(spec, "min |ξ| / |½s(s-1)π^(-s/2)Γ(s/2)|", scaled_min, tol, Metric::Above, tol)
            .with_note("ξ decays like e^(-πt/4); the margin is measured after dividing out its zero-free prefactor"),
        Row::compare(spec, "min |ξ| (raw)", raw_min, 0.0, Metric::Above, 0.0)
            .with_note("raw minimum is positive but below 1e-6 at t = 40"),
    ])
}

fn first_ten(spec: &CheckSpec, ctx: &Context, tol: f64) -> Result<Vec<Row>> {
    let em = ctx.zeros()?;
    let eta = ctx.eta_zeros()?;
    if em.len() < 10 || eta.len() < 10 {
        return Err(LabError::Solver(format!(
            "need 10 zeros, found {} and {}",
            em.len(),
            eta.len()
        )));
    }
    let mut rows: Vec<Row> = em[..10]
        .iter()
        .zip(&eta[..10])
        .map(|(a, b)| {
            Row::compare(spec, format!("t{} vs η route", a.n), a.t, b.t, Metric::Absolute, tol)
                .with_note(format!("residual |Ξ(t)| = {:.3e}", a.residual))
        })
        .collect();
    rows.push(Row::compare(spec, "t1 reference", em[0].t, 14.134_725_14, Metric::Absolute, 1e-6));
    let below_50 = em.iter().filter(|z| z.t <= 50.0).count();
    rows.push(Row::compare(spec, "zero count on [0, 50]", below_50 as f64, 10.0, Metric::Absolute, 0.0));
    Ok(rows)
}

fn hadamard_convergence(spec: &CheckSpec, ctx: &Context, tol: f64) -> Result<Vec<Row>> {
    let zeros = ctx.zeros()?;
    let b0 = estimate_b0(ctx.spec());
    let s = Complex64::new(2.0, 0.0);
    let target = xi(s, ctx.spec());
    let err = |n: usize| -> Result<f64> {
        let trunc = HadamardTruncation {
            zero_count: n,
            b0,
            pairing: true,
        };
        Ok((hadamard_partial(s, zeros, trunc)? - target).norm() / target.norm())
    };
    let (e10, e50, e100) = (err(10)?, err(50)?, err(100)?);
    let note = format!("b0 = {b0:.12e} (numerical); relative errors {e10:.4e}, {e50:.4e}, {e100:.4e}");
    Ok(vec![
        Row::compare(spec, "N=50 error below N=10", e50, e10, Metric::Below, 0.0).with_note(note.clone()),
        Row::compare(spec, "N=100 error below N=50", e100, e50, Metric::Below, 0.0).with_note(note.clone()),
        Row::compare(spec, "N=100 relative error", e100, 0.0, Metric::Absolute, tol).with_note(note),
    ])
}

fn b0_rows(spec: &CheckSpec, ctx: &Context, tol: f64) -> Result<Vec<Row>> {
    let est = estimate_b0(ctx.spec());
    Ok(vec![
        Row::compare(spec, "estimate vs -γ/2 - 1 - ½ln4π", est, b0_claimed::<f64>(), Metric::Absolute, tol)
            .with_note("stated sign of ½ln4π"),
        Row::compare(spec, "estimate vs -γ/2 - 1 + ½ln4π", est, b0_closed_form::<f64>(), Metric::Absolute, tol)
            .with_note("opposite sign of ½ln4π"),
    ])
}

fn real_negative(spec: &CheckSpec, ctx: &Context, tol: f64) -> Result<Vec<Row>> {
    let zeros = ctx.zeros()?;
    if zeros.is_empty() {
        return Err(LabError::Solver("zero scan found no zeros".into()));
    }
    let first = &zeros[..zeros.len().min(10)];
    let audit = audit_spectrum(first);
    let mut rows: Vec<Row> = audit
        .rows
        .iter()
        .map(|r| {
            let scaled = r.im_residual / (1.0 + r.lambda.abs());
            let row = Row::compare(spec, format!("λ{} imaginary residue", r.n), scaled, 0.0, Metric::Absolute, tol);
            match &r.error {
                Some(e) => row.with_note(e.clone()),
                None => row.with_note(format!("λ = {:.16e}, |Im λ|/(1+|λ|)", r.lambda)),
            }
        })
        .collect();
    let lambda1 = lambda_from_zero(&zeros[0])?.lambda;
    rows.push(Row::compare(spec, "λ1 reference", lambda1, -200.040_445_4, Metric::Absolute, 1e-3));
    let worst_roundtrip = first
        .iter()
        .map(|z| {
            let l = lambda_from_zero(z).map(|c| c.lambda).unwrap_or(f64::NAN);
            (s_from_lambda(l).0.im - z.t).abs()
        })
        .fold(0.0f64, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) });
    rows.push(Row::compare(spec, "max round trip |t(λ) - t|", worst_roundtrip, 0.0, Metric::Absolute, 1e-10));
    Ok(rows)
}

fn below_quarter(spec: &CheckSpec, ctx: &Context) -> Result<Vec<Row>> {
    let zeros = ctx.zeros()?;
    zeros[..zeros.len().min(10)]
        .iter()
        .map(|z| {
            let c = lambda_from_zero(z)?;
            Ok(Row::compare(spec, format!("λ{}", z.n), c.lambda, -0.25, Metric::Below, 0.0))
        })
        .collect()
}

const PHASE_LAMBDAS: [f64; 4] = [0.5, 1.0, 2.0, 5.0];
const PHASE_KS: [f64; 3] = [0.5, 1.0, 2.0];

fn phase_match(spec: &CheckSpec, tol: f64) -> Result<Vec<Row>> {
    let results = phase_sweep(&PHASE_LAMBDAS, &PHASE_KS);
    let mut rows = Vec::new();
    for (i, r) in results.into_iter().enumerate() {
        let (l, k) = (PHASE_LAMBDAS[i / PHASE_KS.len()], PHASE_KS[i % PHASE_KS.len()]);
        let case = format!("λ={l}, k={k}");
        rows.push(match r {
            Ok(p) => {
                let analytic = crate::scattering::s_matrix(p.delta_analytic);
                Row::compare(spec, case, p.s_matrix, analytic, Metric::Absolute, tol)
                    .with_note(format!("δ numeric {:.12e}, analytic {:.12e}", p.delta_numeric, p.delta_analytic))
            }
            Err(e) => Row::not_applicable(spec, case, e.to_string()),
        });
    }
    Ok(rows)
}

fn energy_independence(spec: &CheckSpec, tol: f64) -> Result<Vec<Row>> {
    let results = phase_sweep(&PHASE_LAMBDAS, &PHASE_KS);
    let mut rows = Vec::new();
    for (j, l) in PHASE_LAMBDAS.iter().enumerate() {
        let chunk = &results[j * PHASE_KS.len()..(j + 1) * PHASE_KS.len()];
        let case = format!("λ={l}, k ∈ [0.5, 2]");
        let s: std::result::Result<Vec<Complex64>, String> =
            chunk.iter().map(|r| r.as_ref().map(|p| p.s_matrix).map_err(|e| e.to_string())).collect();
        rows.push(match s {
            Ok(s) => {
                let mut spread = 0.0f64;
                for a in &s {
                    for b in &s {
                        spread = spread.max((a - b).norm());
                    }
                }
                Row::compare(spec, case, spread, 0.0, Metric::Absolute, tol)
                    .with_note("max pairwise |S(k1) - S(k2)|")
            }
            Err(e) => Row::not_applicable(spec, case, e),
        });
    }
    Ok(rows)
}

fn jost_deviation(nu: f64, x: f64, cfg: &SpecFunConfig<f64>) -> Result<f64> {
    let f = jost_solution(1.0, x, nu, cfg)?;
    Ok((f * Complex64::from_polar(1.0, -x) - 1.0).norm())
}

fn jost_asymptotic(spec: &CheckSpec, ctx: &Context, tol: f64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for nu in [0.6, 0.75] {
        let d50 = jost_deviation(nu, 50.0, ctx.spec())?;
        let d200 = jost_deviation(nu, 200.0, ctx.spec())?;
        rows.push(Row::compare(spec, format!("ν={nu}, kr=50"), d50, 0.0, Metric::Absolute, tol)
            .with_note("|f e^(-ikr) - 1|"));
        rows.push(Row::compare(spec, format!("ν={nu}, kr=200 below kr=50"), d200, d50, Metric::Below, 0.0)
            .with_note("|f e^(-ikr) - 1| at kr = 200 against kr = 50"));
    }
    Ok(rows)
}

fn k_integral(spec: &CheckSpec, ctx: &Context, tol: f64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for nu in [0.6, 0.75, 0.9] {
        let mut scaled = Vec::new();
        for tau in [0.5, 1.0, 2.0] {
            let q = k_squared_integral(nu, tau, ctx.spec())?;
            let claimed = k_integral_claimed(nu, tau);
            rows.push(Row::compare(spec, format!("ν={nu}, τ={tau}: quadrature vs stated"), q.value, claimed, Metric::Relative, tol)
                .with_note(format!("ratio {:.12e}", q.value / claimed)));
            rows.push(
                Row::compare(spec, format!("ν={nu}, τ={tau}: quadrature vs πν/(2τ² sin πν)"), q.value,
                    k_integral_closed_form(nu, tau), Metric::Relative, tol)
                    .with_note(format!("quadrature error estimate {:.3e}", q.error)),
            );
            scaled.push(q.value * tau * tau);
        }
        let ratio = scaled[1] / k_integral_claimed(nu, 1.0);
        rows.push(Row::compare(spec, format!("ν={nu}: ratio to stated value"), ratio, 4.0, Metric::Absolute, 1e-6)
            .with_note("τ = 1"));
        let spread = scaled.iter().fold(0.0f64, |m, v| m.max((v - scaled[1]).abs())) / scaled[1];
        rows.push(Row::compare(spec, format!("ν={nu}: τ² I(τ) spread"), spread, 0.0, Metric::Absolute, tol)
            .with_note("relative spread of τ²·I over τ ∈ {0.5, 1, 2}"));
    }
    Ok(rows)
}

fn reality(spec: &CheckSpec, ctx: &Context, tol: f64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for nu in [0.75, 1.5] {
        let f = reality_argument_report(nu, 1.0, ctx.spec())?;
        let value = f.integral.unwrap_or(f64::NAN);
        rows.push(Row::compare(spec, format!("ν={nu}, τ=1"), value, tol, Metric::Above, tol).with_note(f.statement));
    }
    Ok(rows)
}

fn lambda_roundtrip(spec: &CheckSpec, tol: f64) -> Result<Vec<Row>> {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        // (1, 10]
        let s: f64 = 10.0 - rng.gen_range(0.0..9.0);
        let exact = s * (s - 1.0);
        worst = worst.max(((chi_lambda_roundtrip(s)? - exact) / exact).abs());
    }
    Ok(vec![
        Row::compare(spec, "max relative error, 50 random s ∈ (1, 10]", worst, 0.0, Metric::Absolute, tol),
        Row::compare(spec, "χ(2) = e^π", chi_direct(2.0)?, std::f64::consts::PI.exp(), Metric::Absolute, 1e-12),
    ])
}

fn ratio_vs_direct(spec: &CheckSpec, ctx: &Context, tol: f64) -> Result<Vec<Row>> {
    let k = ChiConstants::<f64>::claimed();
    [2.0, 3.0, -1.0]
        .into_iter()
        .map(|s| {
            let via = chi_via_ratio(Complex64::new(s, 0.0), &k, ctx.spec());
            Ok(Row::compare(spec, format!("s = {s}"), via.re, chi_direct(s)?, Metric::Relative, tol)
                .with_note(format!("ξ(s)e^(α+βs) with α = {:.12e}, β = {:.12e}", k.alpha, k.beta)))
        })
        .collect()
}

fn beta_rows(spec: &CheckSpec, ctx: &Context, tol: f64) -> Result<Vec<Row>> {
    let k = ChiConstants::<f64>::claimed();
    let numeric = estimate_b0(ctx.spec());
    Ok(vec![
        Row::compare(spec, "β vs B - b0 (stated b0)", k.beta, k.b - b0_claimed::<f64>(), Metric::Absolute, tol),
        Row::compare(spec, "β vs B - b0 (numerical b0)", k.beta, k.b - numeric, Metric::Absolute, tol),
        Row::compare(spec, "α vs ln 2 + A", k.alpha, std::f64::consts::LN_2 + k.a, Metric::Absolute, tol),
    ])
}
