//! End-to-end checks that the shipped presets reproduce the qualitative
//! physics they are named for, and that repeated runs are reproducible
//! byte for byte.

use std::collections::BTreeMap;
use std::process::Command;

fn run(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_gausstele"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "{args:?} exited nonzero");
    String::from_utf8(out.stdout).expect("utf8 stdout")
}

struct Csv {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn parse_csv(text: &str) -> Csv {
    let mut header = Vec::new();
    let mut rows = Vec::new();
    for line in text.lines() {
        if line.starts_with('#') {
            continue;
        }
        if header.is_empty() {
            header = line.split(',').map(String::from).collect();
        } else {
            rows.push(line.split(',').map(String::from).collect());
        }
    }
    Csv { header, rows }
}

impl Csv {
    fn col(&self, name: &str) -> usize {
        self.header
            .iter()
            .position(|h| h == name)
            .unwrap_or_else(|| panic!("column {name} missing"))
    }

    fn num(&self, row: &[String], name: &str) -> f64 {
        row[self.col(name)].parse().expect("numeric cell")
    }
}

#[test]
fn preset_tables_are_reproducible_byte_for_byte() {
    for cmd in ["threshold", "fidelity", "compare"] {
        let first = run(&[cmd]);
        let second = run(&[cmd]);
        assert_eq!(first, second, "{cmd} preset output changed between runs");
    }
    println!("acceptance: preset reruns are byte-identical: pass");
}

#[test]
fn threshold_preset_shows_bath_squeezing_hastening_separability() {
    let csv = parse_csv(&run(&["threshold"]));
    assert_eq!(csv.rows.len(), 7 * 4 * 101);
    for row in &csv.rows {
        let n_s = csv.num(row, "n_s");
        let t_s = csv.num(row, "t_s");
        let t_0 = csv.num(row, "t_0");
        let g = csv.num(row, "G");
        assert!(t_s > 0.0 && t_0 > 0.0);
        assert!(t_s <= t_0 * (1.0 + 1e-12));
        if n_s == 0.0 {
            assert_eq!(row[csv.col("G")], "0");
        } else {
            assert!(g < 0.0, "penalty must be strictly negative at n_s={n_s}");
        }
    }
    // Along each sweep the threshold keeps falling as the bath squeezing grows.
    let mut by_curve: BTreeMap<(String, String), Vec<(f64, f64)>> = BTreeMap::new();
    for row in &csv.rows {
        by_curve
            .entry((row[csv.col("lambda")].clone(), row[csv.col("n_th")].clone()))
            .or_default()
            .push((csv.num(row, "n_s"), csv.num(row, "t_s")));
    }
    assert_eq!(by_curve.len(), 28);
    for ((lambda, n_th), mut pts) in by_curve {
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        for pair in pts.windows(2) {
            assert!(
                pair[1].1 < pair[0].1,
                "t_s must fall with n_s (lambda={lambda}, n_th={n_th})"
            );
        }
    }
    println!("acceptance: threshold preset shows strictly earlier separability under bath squeezing: pass");
}

#[test]
fn fidelity_preset_crosses_the_classical_bound_at_the_threshold() {
    let csv = parse_csv(&run(&["fidelity"]));
    assert_eq!(csv.rows.len(), 4 * 151);
    let grid_step = 3.0 / 150.0;
    let mut curves: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
    for row in &csv.rows {
        curves
            .entry(row[csv.col("n_s")].clone())
            .or_default()
            .push(row.clone());
    }
    assert_eq!(curves.len(), 4);
    for (n_s, rows) in &curves {
        let gt_s = csv.num(&rows[0], "gt_s");
        let mut crossing = None;
        for pair in rows.windows(2) {
            let f_lo = csv.num(&pair[0], "f_squeezed");
            let f_hi = csv.num(&pair[1], "f_squeezed");
            assert!(f_hi < f_lo, "fidelity must decay monotonically");
            let f_coh = csv.num(&pair[0], "f_coherent");
            assert!(f_coh <= f_lo * (1.0 + 1e-12));
            if f_lo >= 0.5 && f_hi < 0.5 {
                crossing = Some(csv.num(&pair[1], "gt"));
            }
        }
        let crossing = crossing.expect("curve crosses 1/2 inside the window");
        assert!(
            (crossing - gt_s).abs() <= grid_step + 1e-12,
            "crossing {crossing} vs threshold {gt_s} at n_s={n_s}"
        );
        if n_s == "0" {
            for row in rows {
                assert_eq!(row[csv.col("f_squeezed")], row[csv.col("f_coherent")]);
            }
        }
        let tail = csv.num(rows.last().expect("rows"), "f_squeezed");
        assert!((tail - 1.0 / 3.0).abs() < 0.05, "late-time fidelity {tail}");
    }
    println!("acceptance: fidelity preset crosses 1/2 at the separability threshold: pass");
}

#[test]
fn compare_preset_orders_direct_and_teleported_fidelities() {
    let csv = parse_csv(&run(&["compare"]));
    assert_eq!(csv.rows.len(), 4 * 151);
    let deltas = [0.1, 0.5, 1.0, 5.0];
    let dir_cols: Vec<usize> = deltas
        .iter()
        .map(|d| csv.col(&format!("f_dir_{d}")))
        .collect();
    for row in &csv.rows {
        let gt = csv.num(row, "gt");
        let f_tele = csv.num(row, "f_tele");
        let dirs: Vec<f64> = dir_cols
            .iter()
            .map(|&i| row[i].parse().expect("numeric"))
            .collect();
        for pair in dirs.windows(2) {
            assert!(
                pair[1] < pair[0] || (gt == 0.0 && pair[1] == pair[0]),
                "direct fidelity must fall as the alphabet widens"
            );
        }
        if gt == 0.0 {
            for &d in &dirs {
                assert_eq!(d, 1.0);
            }
            let fresh = 1.0 / (1.0 + (-3.0f64).exp());
            assert!((f_tele - fresh).abs() < 1e-12);
            assert_eq!(row[csv.col("delta_sq_th")], "inf");
            continue;
        }
        let d_th = csv.num(row, "delta_sq_th");
        for (&delta, &f_dir) in deltas.iter().zip(&dirs) {
            if d_th.is_finite() && delta > d_th {
                assert!(
                    f_tele > f_dir,
                    "teleportation must win beyond the break-even width \
                     (gt={gt}, delta_sq={delta}, threshold={d_th})"
                );
            }
        }
    }
    println!("acceptance: compare preset ranks teleportation above direct transmission beyond the break-even width: pass");
}

#[test]
fn verify_preset_reports_all_checks_green() {
    let out = run(&["verify", "--grid-size", "2"]);
    assert!(out.contains("10/10 checks passed"), "output:\n{out}");
    println!("acceptance: numerical verification command reports all checks green: pass");
}
