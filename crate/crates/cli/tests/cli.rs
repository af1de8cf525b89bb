use std::process::Command;

use pdm_cli::commands::TABLE_COLUMNS;
use pdm_cli::render::fmt_sig;
use pdm_cli::{cmd_fisher, cmd_profile, cmd_spectrum, cmd_table, FisherMethod, Format, RunConfig};
use serde_json::Value;

fn pdm(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pdm"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn formats_carry_identical_values() {
    let out = cmd_table(&RunConfig::default()).unwrap();
    let json: Vec<Value> = serde_json::from_str(&out.render(Format::Json).unwrap()).unwrap();
    let csv_text = out.render(Format::Csv).unwrap();
    let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    let keys: Vec<&str> = TABLE_COLUMNS.iter().map(|c| c.key).collect();
    assert_eq!(header, keys);

    let table_text = out.render(Format::Table).unwrap();
    let table_rows: Vec<Vec<&str>> = table_text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split_whitespace().collect())
        .collect();

    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 9);
    assert_eq!(json.len(), 9);
    for ((rec, obj), row) in records.iter().zip(&json).zip(&table_rows) {
        for (i, key) in keys.iter().enumerate().skip(2) {
            let from_json = obj[*key].as_f64().unwrap();
            let from_csv: f64 = rec[i].parse().unwrap();
            assert_eq!(from_csv, from_json, "{key}");
            assert_eq!(row[i], fmt_sig(from_json, 6), "{key}");
        }
        assert_eq!(rec[0].parse::<u64>().unwrap(), obj["n"].as_u64().unwrap());
        assert_eq!(rec[1].parse::<f64>().unwrap(), obj["a"].as_f64().unwrap());
    }
}

#[test]
fn json_rows_carry_every_report_field() {
    let (code, stdout, _) = pdm(&["table", "--a", "2", "--n", "0", "--format", "json"]);
    assert_eq!(code, 0);
    let v: Vec<Value> = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v.len(), 1);
    for key in TABLE_COLUMNS.iter().map(|c| c.key).chain([
        "p_mean",
        "fisher_x",
        "variance",
        "cramer_rao_v",
        "cramer_rao_prod",
        "v0",
        "cal_v0",
    ]) {
        assert!(v[0].get(key).is_some(), "missing {key}");
    }
    assert_eq!(v[0]["v0"].as_f64().unwrap(), 0.0625);
}

#[test]
fn output_is_deterministic() {
    let a = pdm(&["table", "--format", "csv"]);
    let b = pdm(&["table", "--format", "csv"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn exit_codes() {
    assert_eq!(pdm(&["table", "--a", "0"]).0, 2);
    assert_eq!(pdm(&["table", "--format", "xml"]).0, 2);
    assert_eq!(pdm(&["frobnicate"]).0, 2);
    assert_eq!(pdm(&["table", "--v0", "0.3"]).0, 2);
    assert_eq!(pdm(&["fisher", "--method", "closed", "--n", "4"]).0, 2);
    let (code, _, stderr) = pdm(&["spectrum", "--grid", "256", "--n", "3"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("exceeds tolerance"));
}

#[test]
fn boundary_depth() {
    let (code, stdout, stderr) = pdm(&["table", "--v0", "0.25"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.lines().filter(|l| !l.starts_with('#')).count(), 10);
    assert!(stderr.contains("closed-form unavailable (mu=1/2)"));
    let (code, _, stderr) = pdm(&["fisher", "--method", "closed", "--v0", "0.25"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("mu = 1/2"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = std::env::temp_dir().join(format!("pdm-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("run.cfg");
    std::fs::write(&path, "a = 3\nn = 1\nformat = csv\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, stdout, _) = pdm(&["table", "--config", p]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = stdout.lines().collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[1].starts_with("1,3,"));
    let (_, stdout, _) = pdm(&["table", "--config", p, "--a", "1"]);
    assert!(stdout.lines().nth(1).unwrap().starts_with("1,1,"));
    assert_eq!(pdm(&["table", "--config", "/nonexistent/pdm.cfg"]).0, 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn spectrum_defaults_and_free_case() {
    let cfg = RunConfig {
        levels: vec![0, 1, 2, 3],
        ..Default::default()
    };
    let out = cmd_spectrum(&cfg).unwrap();
    assert!(out.failures.is_empty());
    let json: Vec<Value> = serde_json::from_str(&out.render(Format::Json).unwrap()).unwrap();
    for row in &json {
        assert!(row["rel_diff"].as_f64().unwrap().abs() <= 1e-6);
    }
    let free = RunConfig {
        v0_dimensionless: 0.0,
        levels: vec![0],
        ..Default::default()
    };
    let json: Vec<Value> =
        serde_json::from_str(&cmd_spectrum(&free).unwrap().render(Format::Json).unwrap()).unwrap();
    assert_eq!(json[0]["eps_analytic"].as_f64().unwrap(), 6.0);
}

#[test]
fn spectrum_error_shrinks_with_grid() {
    let err = |grid| {
        let cfg = RunConfig {
            grid_points: grid,
            levels: vec![1],
            tolerance: Some(0.5),
            ..Default::default()
        };
        let json: Vec<Value> =
            serde_json::from_str(&cmd_spectrum(&cfg).unwrap().render(Format::Json).unwrap())
                .unwrap();
        json[0]["richardson_error"].as_f64().unwrap()
    };
    let ratio = err(1024) / err(2048);
    assert!((3.0..5.0).contains(&ratio), "{ratio}");
    assert!(err(512) / err(4096) > 40.0);
}

fn profile(n: u32, samples: usize) -> Vec<Value> {
    let cfg = RunConfig {
        levels: vec![n],
        a_values: vec![1.0],
        samples,
        ..Default::default()
    };
    serde_json::from_str(&cmd_profile(&cfg).unwrap().render(Format::Json).unwrap()).unwrap()
}

#[test]
fn profile_series() {
    let rows = profile(0, 100);
    assert_eq!(rows.len(), 100);
    let x: Vec<f64> = rows.iter().map(|r| r["x"].as_f64().unwrap()).collect();
    let rho: Vec<f64> = rows.iter().map(|r| r["rho"].as_f64().unwrap()).collect();
    assert!(rho.iter().all(|&r| r >= 0.0));
    assert!(x.windows(2).all(|w| w[1] > w[0] && w[0] > 0.0));
    let peak = rho.iter().cloned().fold(0.0, f64::max);
    assert!(*rho.last().unwrap() < 1e-12 * peak * 10.0);
    let trapezoid: f64 = (1..x.len())
        .map(|i| 0.5 * (x[i] - x[i - 1]) * (rho[i] + rho[i - 1]))
        .sum();
    assert!((trapezoid - 1.0).abs() < 1e-3, "{trapezoid}");
}

#[test]
fn profile_node_count() {
    for n in 0..=3u32 {
        let psi: Vec<f64> = profile(n, 400)
            .iter()
            .map(|r| r["psi"].as_f64().unwrap())
            .collect();
        let changes = psi.windows(2).filter(|w| w[0] * w[1] < 0.0).count();
        assert_eq!(changes, n as usize);
    }
}

#[test]
fn fisher_methods_agree() {
    let closed = cmd_fisher(&RunConfig::default(), FisherMethod::Closed).unwrap();
    let quad = cmd_fisher(&RunConfig::default(), FisherMethod::Quadrature).unwrap();
    let parse = |o: &pdm_cli::Output| -> Vec<f64> {
        let v: Vec<Value> = serde_json::from_str(&o.render(Format::Json).unwrap()).unwrap();
        v.iter().map(|r| r["fisher_x"].as_f64().unwrap()).collect()
    };
    for (c, q) in parse(&closed).iter().zip(parse(&quad)) {
        assert!(((c - q) / q).abs() < 1e-10);
    }
}
