//! Serialization of command results. CSV floats use 17 significant digits
//! in scientific notation; JSON floats use shortest round-trip form.

use std::fmt::Write as _;

use serde::Serialize;

use super::{ExitStatus, OutputFormat, RunConfig, Space};
use crate::audit::ClaimReport;
use crate::infotheory::EntropyReport;
use crate::states::{energy, gamma_density, phi, psi, rho_density};

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Top-level machine-readable report.
#[derive(Debug, Clone, Serialize)]
pub struct Report<'a> {
    pub version: &'static str,
    pub config: &'a RunConfig,
    pub claims: Vec<ClaimReport>,
    pub entropies: Vec<EntropyReport>,
}

impl<'a> Report<'a> {
    pub fn new(config: &'a RunConfig, claims: Vec<ClaimReport>, entropies: Vec<EntropyReport>) -> Self {
        Self {
            version: REPORT_VERSION,
            config,
            claims,
            entropies,
        }
    }
}

/// `{:.16e}` with negative zero folded to zero.
pub fn format_csv_float(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

fn csv_row(out: &mut String, first: &str, values: &[f64]) {
    out.push_str(first);
    for &v in values {
        out.push(',');
        out.push_str(&format_csv_float(v));
    }
    out.push('\n');
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct PositionRow {
    n: u32,
    x: f64,
    psi: f64,
    rho: f64,
    energy: f64,
}

#[derive(Serialize)]
struct MomentumRow {
    n: u32,
    p: f64,
    re_phi: f64,
    im_phi: f64,
    gamma: f64,
    energy: f64,
}

#[derive(Serialize)]
struct Table<'a, R> {
    version: &'static str,
    config: &'a RunConfig,
    rows: Vec<R>,
}

pub(super) fn tabulate(cfg: &RunConfig) -> String {
    let nodes = cfg.grid.nodes();
    match (cfg.space, cfg.format) {
        (Space::Position, OutputFormat::Csv) => {
            let mut out = String::from("n,x,psi,rho,energy\n");
            for &n in &cfg.n_list {
                for &x in &nodes {
                    csv_row(&mut out, &n.to_string(), &[x, psi(n, x), rho_density(n, x), energy(n)]);
                }
            }
            out
        }
        (Space::Momentum, OutputFormat::Csv) => {
            let mut out = String::from("n,p,re_phi,im_phi,gamma,energy\n");
            for &n in &cfg.n_list {
                for &p in &nodes {
                    let a = phi(n, p);
                    csv_row(&mut out, &n.to_string(), &[p, a.re, a.im, gamma_density(n, p), energy(n)]);
                }
            }
            out
        }
        (Space::Position, OutputFormat::Json) => {
            let rows = cfg
                .n_list
                .iter()
                .flat_map(|&n| {
                    nodes.iter().map(move |&x| PositionRow {
                        n: n.get(),
                        x,
                        psi: psi(n, x),
                        rho: rho_density(n, x),
                        energy: energy(n),
                    })
                })
                .collect();
            to_json(&Table {
                version: REPORT_VERSION,
                config: cfg,
                rows,
            })
        }
        (Space::Momentum, OutputFormat::Json) => {
            let rows = cfg
                .n_list
                .iter()
                .flat_map(|&n| {
                    nodes.iter().map(move |&p| {
                        let a = phi(n, p);
                        MomentumRow {
                            n: n.get(),
                            p,
                            re_phi: a.re,
                            im_phi: a.im,
                            gamma: gamma_density(n, p),
                            energy: energy(n),
                        }
                    })
                })
                .collect();
            to_json(&Table {
                version: REPORT_VERSION,
                config: cfg,
                rows,
            })
        }
    }
}

#[derive(Serialize)]
struct Series {
    name: String,
    values: Vec<f64>,
}

#[derive(Serialize)]
struct PlotData<'a> {
    version: &'static str,
    config: &'a RunConfig,
    p: Vec<f64>,
    series: Vec<Series>,
}

pub(super) fn plot_data(cfg: &RunConfig) -> String {
    let nodes = cfg.grid.nodes();
    let names: Vec<String> = cfg.n_list.iter().map(|n| format!("gamma_n{n}")).collect();
    match cfg.format {
        OutputFormat::Csv => {
            let mut out = String::from("p");
            for name in &names {
                out.push(',');
                out.push_str(name);
            }
            out.push('\n');
            for &p in &nodes {
                out.push_str(&format_csv_float(p));
                for &n in &cfg.n_list {
                    out.push(',');
                    out.push_str(&format_csv_float(gamma_density(n, p)));
                }
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let series = cfg
                .n_list
                .iter()
                .zip(names)
                .map(|(&n, name)| Series {
                    name,
                    values: nodes.iter().map(|&p| gamma_density(n, p)).collect(),
                })
                .collect();
            to_json(&PlotData {
                version: REPORT_VERSION,
                config: cfg,
                p: nodes,
                series,
            })
        }
    }
}

fn n_label(c: &ClaimReport) -> String {
    match c.n_values.as_slice() {
        [] => String::new(),
        [n] => format!("n={n}"),
        [first, .., last] if last.get() - first.get() + 1 == c.n_values.len() as u32 => {
            format!("n={first}..{last}")
        }
        many => format!(
            "n={}",
            many.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
        ),
    }
}

pub(super) fn claims_summary(report: &Report<'_>, status: ExitStatus) -> String {
    let mut out = String::new();
    for c in &report.claims {
        let verdict = if c.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{verdict} {:<26} {:<10} residual={:.3e} tol={:.1e}  {}",
            c.claim_id,
            n_label(c),
            c.residual,
            c.tolerance,
            c.details
        );
    }
    let passed = report.claims.iter().filter(|c| c.passed).count();
    let _ = writeln!(
        out,
        "{passed}/{} claims passed; exit status {}",
        report.claims.len(),
        status.code()
    );
    out
}

pub(super) fn entropy_summary(rows: &[EntropyReport]) -> String {
    let mut out = String::from(
        "   n  source      S_rho  S_gamma  S_gamma(exact)   sum   bound   margin  status\n",
    );
    for r in rows {
        let analytic = r
            .s_gamma_analytic
            .map(|v| format!("{v:>14.4}"))
            .unwrap_or_else(|| format!("{:>14}", "-"));
        let _ = writeln!(
            out,
            "{:>4}  {:<8} {:>8.4} {:>8.4} {analytic} {:>7.4} {:>7.4} {:>+8.4}  {}",
            r.n,
            r.source,
            r.s_rho,
            r.s_gamma_numeric,
            r.bbm_sum,
            r.bbm_bound,
            r.margin,
            if r.satisfied { "ok" } else { "VIOLATION" }
        );
    }
    out
}

pub(super) fn render_report(report: &Report<'_>, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv => {
            let mut out = String::from("claim_id,n_values,residual,tolerance,passed\n");
            for c in &report.claims {
                let ns = c
                    .n_values
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join(";");
                let _ = writeln!(
                    out,
                    "{},{ns},{},{},{}",
                    c.claim_id,
                    format_csv_float(c.residual),
                    format_csv_float(c.tolerance),
                    c.passed
                );
            }
            out
        }
    }
}

pub(super) fn render_entropy(report: &Report<'_>, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => to_json(report),
        OutputFormat::Csv => {
            let mut out = String::from(
                "n,source,s_rho,s_gamma_numeric,s_gamma_analytic,bbm_sum,bbm_bound,margin,satisfied\n",
            );
            for r in &report.entropies {
                let analytic = r.s_gamma_analytic.map(format_csv_float).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{},{analytic},{},{},{},{}",
                    r.n,
                    r.source,
                    format_csv_float(r.s_rho),
                    format_csv_float(r.s_gamma_numeric),
                    format_csv_float(r.bbm_sum),
                    format_csv_float(r.bbm_bound),
                    format_csv_float(r.margin),
                    r.satisfied
                );
            }
            out
        }
    }
}
