use std::collections::BTreeMap;
use std::process::Command;

fn run(args: &[&str]) -> (String, String, i32) {
    run_with_env(args, &[])
}

fn run_with_env(args: &[&str], envs: &[(&str, &str)]) -> (String, String, i32) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gausstele"));
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
        out.status.code().expect("exit code"),
    )
}

struct Csv {
    meta: BTreeMap<String, String>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn parse_csv(text: &str) -> Csv {
    let mut meta = BTreeMap::new();
    let mut header = Vec::new();
    let mut rows = Vec::new();
    for line in text.lines() {
        if let Some(kv) = line.strip_prefix("# ") {
            let (k, v) = kv.split_once('=').expect("meta line has key=value");
            meta.insert(k.to_string(), v.to_string());
        } else if header.is_empty() {
            header = line.split(',').map(String::from).collect();
        } else {
            rows.push(line.split(',').map(String::from).collect());
        }
    }
    Csv { meta, header, rows }
}

fn cell(row: &[String], header: &[String], name: &str) -> f64 {
    let idx = header
        .iter()
        .position(|h| h == name)
        .expect("column exists");
    row[idx].parse().expect("numeric cell")
}

#[test]
fn threshold_zero_temperature_prints_inf() {
    let (out, _, code) = run(&[
        "threshold",
        "--lambda",
        "0.5",
        "--nth",
        "0",
        "--ns-range",
        "0",
        "0.5",
        "2",
    ]);
    assert_eq!(code, 0);
    let csv = parse_csv(&out);
    assert_eq!(csv.rows.len(), 2);
    for row in &csv.rows {
        assert_eq!(row[3], "inf");
        assert_eq!(row[4], "inf");
        assert_eq!(row[5], "nan");
    }
}

#[test]
fn threshold_without_bath_squeezing_prints_exact_zero_penalty() {
    let (out, _, code) = run(&[
        "threshold",
        "--lambda",
        "0.3,0.9",
        "--nth",
        "0.2,1",
        "--ns-range",
        "0",
        "0",
        "1",
    ]);
    assert_eq!(code, 0);
    let csv = parse_csv(&out);
    assert_eq!(csv.rows.len(), 4);
    for row in &csv.rows {
        assert_eq!(row[2], "0");
        assert_eq!(row[5], "0");
        assert_eq!(row[3], row[4]);
    }
}

#[test]
fn gamma_rescales_the_time_columns() {
    let args = [
        "threshold",
        "--lambda",
        "0.5",
        "--nth",
        "0.1",
        "--ns-range",
        "0.2",
        "0.2",
        "1",
    ];
    let (base, _, _) = run(&args);
    let mut scaled_args = args.to_vec();
    scaled_args.extend(["--gamma", "2"]);
    let (scaled, _, _) = run(&scaled_args);
    let b = parse_csv(&base);
    let s = parse_csv(&scaled);
    let ts_base = cell(&b.rows[0], &b.header, "t_s");
    let ts_scaled = cell(&s.rows[0], &s.header, "t_s");
    assert!((ts_scaled - ts_base / 2.0).abs() < 1e-11 * ts_base);
    let t0_base = cell(&b.rows[0], &b.header, "t_0");
    let t0_scaled = cell(&s.rows[0], &s.header, "t_0");
    assert!((t0_scaled - t0_base / 2.0).abs() < 1e-11 * t0_base);
    assert_eq!(s.meta["gamma"], "2");
}

#[test]
fn fidelity_coherent_policy_matches_zero_squeezing_column() {
    let (out, _, code) = run(&[
        "fidelity",
        "--ns",
        "0.3",
        "--gt-range",
        "0.1",
        "1.1",
        "6",
        "--zeta",
        "coherent",
    ]);
    assert_eq!(code, 0);
    let csv = parse_csv(&out);
    assert_eq!(csv.meta["zeta"], "coherent");
    for row in &csv.rows {
        assert_eq!(row[2], row[3]);
    }
}

#[test]
fn fidelity_fixed_zeta_is_echoed_and_bounded_by_optimum() {
    let (fixed, _, _) = run(&[
        "fidelity",
        "--ns",
        "0.3",
        "--gt-range",
        "0.5",
        "0.5",
        "1",
        "--zeta",
        "0.1",
    ]);
    let (best, _, _) = run(&[
        "fidelity",
        "--ns",
        "0.3",
        "--gt-range",
        "0.5",
        "0.5",
        "1",
        "--zeta",
        "max",
    ]);
    let f = parse_csv(&fixed);
    let b = parse_csv(&best);
    assert_eq!(f.meta["zeta"], "0.1");
    let f_fixed = cell(&f.rows[0], &f.header, "f_squeezed");
    let f_best = cell(&b.rows[0], &b.header, "f_squeezed");
    assert!(f_best >= f_fixed);
}

#[test]
fn compare_explicit_panel_overrides_profile() {
    let (out, _, code) = run(&[
        "compare",
        "--nth",
        "0.2",
        "--ns",
        "0.1",
        "--delta-sq",
        "1",
        "--gt-range",
        "0.5",
        "0.5",
        "1",
    ]);
    assert_eq!(code, 0);
    let csv = parse_csv(&out);
    assert_eq!(csv.rows.len(), 1);
    assert_eq!(csv.meta["panels"], "0.2,0.1");
    assert_eq!(cell(&csv.rows[0], &csv.header, "n_th"), 0.2);
    assert_eq!(cell(&csv.rows[0], &csv.header, "n_s"), 0.1);
}

#[test]
fn compare_panel_index_selects_one_bath() {
    let (out, _, code) = run(&["compare", "--panel", "3", "--gt-range", "0.5", "0.5", "1"]);
    assert_eq!(code, 0);
    let csv = parse_csv(&out);
    assert_eq!(csv.rows.len(), 1);
    assert_eq!(cell(&csv.rows[0], &csv.header, "n_th"), 0.5);
    assert_eq!(cell(&csv.rows[0], &csv.header, "n_s"), 0.3);
}

#[test]
fn json_output_round_trips() {
    let (out, _, code) = run(&[
        "fidelity",
        "--ns",
        "0.1",
        "--gt-range",
        "0",
        "1",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&out).expect("valid json");
    assert_eq!(doc["meta"]["command"], "fidelity");
    assert_eq!(doc["columns"].as_array().expect("columns array").len(), 5);
    assert_eq!(doc["rows"].as_array().expect("rows array").len(), 3);
}

#[test]
fn profile_directory_override_is_honored() {
    let dir = std::env::temp_dir().join(format!("gausstele-profiles-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("create temp profile dir");
    std::fs::write(
        dir.join("custom.profile"),
        "lambda=0.4\nnth=0.2\nns_range=0,0.2,2\n",
    )
    .expect("write profile");
    let (out, _, code) = run_with_env(
        &["threshold", "--preset", "custom"],
        &[("GAUSSTELE_PROFILE_DIR", dir.to_str().expect("utf8 path"))],
    );
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(code, 0);
    let csv = parse_csv(&out);
    assert_eq!(csv.meta["preset"], "custom");
    assert_eq!(csv.rows.len(), 2);
}

#[test]
fn usage_errors_exit_with_code_two() {
    let cases: &[&[&str]] = &[
        &["threshold", "--ns-range", "0", "1", "0"],
        &["threshold", "--ns-range", "1", "0", "5"],
        &["threshold", "--lambda", "-0.5"],
        &["threshold", "--preset", "nonexistent"],
        &["fidelity", "--zeta", "sideways"],
        &["fidelity", "--gamma", "0"],
        &["compare", "--nth", "0.3"],
        &["compare", "--panel", "9"],
        &["compare", "--panel", "1", "--nth", "0.3", "--ns", "0"],
    ];
    for args in cases {
        let (_, err, code) = run(args);
        assert_eq!(code, 2, "args {args:?} should fail, stderr: {err}");
        assert!(err.contains("error"), "stderr for {args:?}: {err}");
    }
}

#[test]
fn early_closed_pipe_is_not_an_error() {
    use std::io::Read;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_gausstele"))
        .arg("threshold")
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    let mut first = [0u8; 64];
    child
        .stdout
        .take()
        .expect("stdout piped")
        .read_exact(&mut first)
        .expect("some output arrives");
    // Dropping the handle above closed the pipe while the table was still
    // streaming; the writer must treat that as a normal end of output.
    let status = child.wait().expect("child exits");
    assert!(status.success(), "exit status {status}");
    let mut err = String::new();
    child
        .stderr
        .take()
        .expect("stderr piped")
        .read_to_string(&mut err)
        .expect("stderr readable");
    assert!(err.is_empty(), "stderr not empty: {err}");
}

#[test]
fn verify_exit_code_tracks_the_outcome() {
    let (out, _, code) = run(&["verify", "--grid-size", "1"]);
    assert_eq!(code, 0, "verification output:\n{out}");
    assert!(out.contains("10/10 checks passed"));
    let (out, _, code) = run(&["verify", "--grid-size", "1", "--inject-perturb", "1e-3"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL"));
    assert!(out.contains("worst at"));
}
