//! The `table`, `spectrum`, `profile` and `fisher` commands.

use pdm_core::measures::{fisher_closed_form, fisher_quadrature, report_tol, MeasureReport};
use pdm_core::model::{energy, wavefunction_x, SystemParams};
use pdm_core::oracle::solve_spectrum;
use serde_json::{Map, Value};

use crate::config::{RunConfig, DEFAULT_SPECTRUM_TOL, DEFAULT_TABLE_TOL};
use crate::error::CliError;
use crate::render::{col, fmt_sig, Cell, Column, Output};

/// Uncertainty table columns in order.
pub const TABLE_COLUMNS: [Column; 10] = [
    col("n", "n"),
    col("a", "a"),
    col("<x^2>", "x2_mean"),
    col("<x>", "x_mean"),
    col("dx", "dx"),
    col("<p^2>", "p2_mean"),
    col("dp", "dp"),
    col("dx*dp", "heisenberg"),
    col("I_rho", "i_rho"),
    col("I_gamma", "i_gamma"),
];

/// Profiles span this many decades below `x_max`.
pub const PROFILE_DECADES: f64 = 3.0;
/// `x_max` is where `ρ` falls below this fraction of its maximum.
pub const PROFILE_CUTOFF: f64 = 1e-12;
const PROFILE_SCAN_STEPS: usize = 8000;
const PROFILE_SCAN_RANGE: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FisherMethod {
    Closed,
    Quadrature,
}

fn params(cfg: &RunConfig, a: f64) -> Result<SystemParams, CliError> {
    Ok(SystemParams::from_dimensionless(
        cfg.v0_dimensionless,
        a,
        cfg.m0,
    )?)
}

fn num(v: f64) -> Cell {
    Cell::Num(v)
}

fn metadata(cfg: &RunConfig) -> Result<Vec<String>, CliError> {
    let first = params(cfg, cfg.a_values[0])?;
    let v0s = cfg
        .a_values
        .iter()
        .map(|&a| Ok(format!("{} (a={a})", params(cfg, a)?.v0)))
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(vec![
        format!(
            "calV0 = {}, mu = {}, m0 = {}",
            first.cal_v0, first.mu, cfg.m0
        ),
        format!("V0 = {}", v0s.join(", ")),
    ])
}

fn system_extra(p: &SystemParams) -> Map<String, Value> {
    let mut m = Map::new();
    for (k, v) in [
        ("cal_v0", p.cal_v0),
        ("v0", p.v0),
        ("m0", p.m0),
        ("mu", p.mu),
    ] {
        m.insert(
            k.into(),
            serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number),
        );
    }
    m
}

fn boundary_note(p: &SystemParams) -> Option<String> {
    (p.s == 0.0).then(|| {
        "closed-form unavailable (mu=1/2); <p^2>, dp, dx*dp and I_gamma diverge".to_string()
    })
}

/// One row per `(n, a)` with the uncertainty table columns.
pub fn cmd_table(cfg: &RunConfig) -> Result<Output, CliError> {
    let tol = cfg.tolerance.unwrap_or(DEFAULT_TABLE_TOL);
    let mut out = Output {
        columns: TABLE_COLUMNS.to_vec(),
        metadata: metadata(cfg)?,
        ..Default::default()
    };
    for (n, a) in cfg.pairs() {
        let p = params(cfg, a)?;
        let r = report_tol(&p, n, tol)?;
        out.rows.push(table_row(&r));
        let mut extra = system_extra(&p);
        if let Value::Object(all) = serde_json::to_value(r)? {
            extra.extend(all);
        }
        out.json_extra.push(extra);
        if let Some(note) = boundary_note(&p) {
            if !out.notes.contains(&note) {
                out.notes.push(note);
            }
        }
    }
    Ok(out)
}

fn table_row(r: &MeasureReport) -> Vec<Cell> {
    vec![
        Cell::Int(u64::from(r.n)),
        Cell::Param(r.a),
        num(r.x2_mean),
        num(r.x_mean),
        num(r.dx),
        num(r.p2_mean),
        num(r.dp),
        num(r.heisenberg),
        num(r.i_rho),
        num(r.i_gamma),
    ]
}

/// Analytic `εₙ` against the finite-volume oracle.
pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Output, CliError> {
    let tol = cfg.tolerance.unwrap_or(DEFAULT_SPECTRUM_TOL);
    let levels = cfg.levels.iter().max().map_or(1, |&m| m as usize + 1);
    let est = solve_spectrum(cfg.v0_dimensionless, cfg.grid_points, levels)?;
    let p = params(cfg, 1.0)?;
    let mut out = Output {
        columns: vec![
            col("n", "n"),
            col("eps_analytic", "eps_analytic"),
            col("eps_oracle", "eps_oracle"),
            col("richardson_err", "richardson_error"),
            col("rel_diff", "rel_diff"),
        ],
        metadata: vec![format!(
            "calV0 = {}, grid = {}/{}, z_margin = {}",
            cfg.v0_dimensionless,
            est.grid_points / 2,
            est.grid_points,
            est.z_margin
        )],
        ..Default::default()
    };
    let mut requested = cfg.levels.clone();
    requested.sort_unstable();
    requested.dedup();
    for n in requested {
        let k = n as usize;
        let exact = energy(&p, n).eps;
        let oracle = est.eigenvalues[k];
        let err = est.richardson_error[k];
        let rel = (oracle - exact) / exact;
        out.rows.push(vec![
            Cell::Int(u64::from(n)),
            num(exact),
            num(oracle),
            num(err),
            num(rel),
        ]);
        let mut extra = Map::new();
        extra.insert("cal_v0".into(), Value::from(cfg.v0_dimensionless));
        extra.insert("grid_points".into(), Value::from(est.grid_points));
        extra.insert("z_margin".into(), Value::from(est.z_margin));
        out.json_extra.push(extra);
        if err > tol * oracle.abs() {
            out.failures.push(format!(
                "level {n}: richardson error {} exceeds tolerance {} (relative)",
                fmt_sig(err / oracle.abs(), 3),
                fmt_sig(tol, 3)
            ));
        }
    }
    Ok(out)
}

/// Upper end of the profile: the first scan point past which `ρ` stays
/// below `PROFILE_CUTOFF` of its maximum.
pub fn profile_extent(p: &SystemParams, n: u32) -> Result<f64, CliError> {
    let step = PROFILE_SCAN_RANGE / (p.a * PROFILE_SCAN_STEPS as f64);
    let rho: Vec<f64> = (1..=PROFILE_SCAN_STEPS)
        .map(|i| wavefunction_x(p, n, i as f64 * step).map(|psi| psi * psi))
        .collect::<Result<_, _>>()?;
    let peak = rho.iter().cloned().fold(0.0, f64::max);
    let last = rho
        .iter()
        .rposition(|&r| r >= PROFILE_CUTOFF * peak)
        .unwrap_or(0);
    Ok((last + 2) as f64 * step)
}

/// `x, ψ, ρ` on a log-spaced grid ending at [`profile_extent`].
pub fn cmd_profile(cfg: &RunConfig) -> Result<Output, CliError> {
    let mut out = Output {
        columns: vec![
            col("n", "n"),
            col("a", "a"),
            col("x", "x"),
            col("psi", "psi"),
            col("rho", "rho"),
        ],
        metadata: metadata(cfg)?,
        ..Default::default()
    };
    let m = cfg.samples;
    for (n, a) in cfg.pairs() {
        let p = params(cfg, a)?;
        let x_max = profile_extent(&p, n)?;
        for i in 0..m {
            let frac = i as f64 / (m - 1) as f64;
            let x = x_max * 10f64.powf(-PROFILE_DECADES * (1.0 - frac));
            let psi = wavefunction_x(&p, n, x)?;
            out.rows.push(vec![
                Cell::Int(u64::from(n)),
                Cell::Param(a),
                num(x),
                num(psi),
                num(psi * psi),
            ]);
        }
    }
    Ok(out)
}

/// `I_F` for every `(n, a)` by the chosen method.
pub fn cmd_fisher(cfg: &RunConfig, method: FisherMethod) -> Result<Output, CliError> {
    let mut out = Output {
        columns: vec![col("n", "n"), col("a", "a"), col("I_F", "fisher_x")],
        metadata: metadata(cfg)?,
        ..Default::default()
    };
    for (n, a) in cfg.pairs() {
        let p = params(cfg, a)?;
        let value = match method {
            FisherMethod::Closed => fisher_closed_form(&p, n)?,
            FisherMethod::Quadrature => {
                if let Some(note) = boundary_note(&p) {
                    if !out.notes.contains(&note) {
                        out.notes.push(note);
                    }
                }
                fisher_quadrature(&p, n)?
            }
        };
        out.rows
            .push(vec![Cell::Int(u64::from(n)), Cell::Param(a), num(value)]);
        let mut extra = system_extra(&p);
        extra.insert(
            "method".into(),
            Value::from(match method {
                FisherMethod::Closed => "closed",
                FisherMethod::Quadrature => "quadrature",
            }),
        );
        out.json_extra.push(extra);
    }
    Ok(out)
}
