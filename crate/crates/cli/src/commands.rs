use std::collections::BTreeMap;

use rayon::prelude::*;

use gausstele::oracle::verify::{run_verification, VerifyConfig};
use gausstele::{
    avg_fidelity_tele, evolve_twb, optimal_zeta, squeezing_penalty_g, teleport_vs_direct,
    threshold_time_t0, threshold_time_ts, AmplitudeEnsemble, BathSpec, ComparisonPoint, TwbSource,
};

use crate::output::{list_echo, sig12, Table};
use crate::profiles::Profile;
use crate::{CompareArgs, FidelityArgs, ThresholdArgs, UsageError, VerifyArgs, ZetaPolicy};

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), UsageError> {
    if cond {
        Ok(())
    } else {
        Err(UsageError(msg.into()))
    }
}

/// Writes a finished table to stdout. A consumer that stops reading early
/// (`gausstele threshold | head`) closes the pipe mid-write; that is not an
/// error, so it exits quietly with success.
fn emit(text: &str) -> i32 {
    use std::io::{ErrorKind, Write};
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => 0,
        Err(e) if e.kind() == ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: cannot write output: {e}");
            1
        }
    }
}

fn nonneg_list(values: &[f64], what: &str) -> Result<(), UsageError> {
    ensure(!values.is_empty(), format!("{what} must not be empty"))?;
    for &v in values {
        ensure(
            v.is_finite() && v >= 0.0,
            format!("{what} must be >= 0, got {v}"),
        )?;
    }
    Ok(())
}

/// Expands a `[min, max, steps]` triple into an inclusive evenly spaced grid.
fn parse_range(spec: &[f64], what: &str) -> Result<Vec<f64>, UsageError> {
    let &[min, max, steps_f] = spec else {
        return Err(UsageError(format!("{what} needs exactly MIN MAX STEPS")));
    };
    ensure(
        min.is_finite() && max.is_finite() && min <= max,
        format!("{what}: need finite MIN <= MAX"),
    )?;
    ensure(
        steps_f.fract() == 0.0 && (1.0..=1e6).contains(&steps_f),
        format!("{what}: STEPS must be a whole number between 1 and 1000000"),
    )?;
    let steps = steps_f as usize;
    if steps == 1 {
        return Ok(vec![min]);
    }
    let span = max - min;
    Ok((0..steps)
        .map(|i| min + span * i as f64 / (steps - 1) as f64)
        .collect())
}

fn resolve_gamma(flag: Option<f64>) -> Result<f64, UsageError> {
    let gamma = flag.unwrap_or(1.0);
    ensure(
        gamma.is_finite() && gamma > 0.0,
        format!("--gamma must be > 0, got {gamma}"),
    )?;
    Ok(gamma)
}

fn resolve_zeta(flag: Option<ZetaPolicy>, profile: &Profile) -> Result<ZetaPolicy, UsageError> {
    let policy = match flag {
        Some(z) => z,
        None => profile.zeta("zeta")?,
    };
    if let ZetaPolicy::Fixed(v) = policy {
        ensure(v.is_finite(), format!("--zeta must be finite, got {v}"))?;
    }
    Ok(policy)
}

pub fn run_threshold(args: ThresholdArgs) -> Result<i32, UsageError> {
    let profile = Profile::load(args.preset.as_deref().unwrap_or("fig1"))?;
    let lambdas = match args.lambda {
        Some(v) => v,
        None => profile.float_list("lambda")?,
    };
    let nths = match args.nth {
        Some(v) => v,
        None => profile.float_list("nth")?,
    };
    let ns_spec = match args.ns_range {
        Some(v) => v,
        None => profile.float_list("ns_range")?,
    };
    let gamma = resolve_gamma(args.gamma)?;
    nonneg_list(&lambdas, "--lambda")?;
    nonneg_list(&nths, "--nth")?;
    let ns_grid = parse_range(&ns_spec, "--ns-range")?;
    ensure(ns_grid[0] >= 0.0, "--ns-range: MIN must be >= 0")?;

    let mut tasks = Vec::new();
    for &n_th in &nths {
        for &lambda in &lambdas {
            for &n_s in &ns_grid {
                tasks.push((n_th, lambda, n_s));
            }
        }
    }
    let rows: Vec<Vec<String>> = tasks
        .par_iter()
        .map(|&(n_th, lambda, n_s)| {
            let src = TwbSource::new(lambda).expect("validated");
            let bath = BathSpec::new(n_th, n_s).expect("validated");
            let ts = threshold_time_ts(&src, &bath);
            let t0 = threshold_time_t0(&src, n_th).expect("validated");
            let g = squeezing_penalty_g(&src, &bath).unwrap_or(f64::NAN);
            vec![
                sig12(lambda),
                sig12(n_th),
                sig12(n_s),
                sig12(ts / gamma),
                sig12(t0 / gamma),
                sig12(g),
            ]
        })
        .collect();

    let mut meta = BTreeMap::new();
    meta.insert("command".to_string(), "threshold".to_string());
    meta.insert("preset".to_string(), profile.name().to_string());
    meta.insert("lambda".to_string(), list_echo(&lambdas));
    meta.insert("nth".to_string(), list_echo(&nths));
    meta.insert("ns_range".to_string(), list_echo(&ns_spec));
    meta.insert("gamma".to_string(), gamma.to_string());
    let table = Table {
        meta,
        columns: ["lambda", "n_th", "n_s", "t_s", "t_0", "G"]
            .map(String::from)
            .to_vec(),
        rows,
    };
    Ok(emit(&table.render(args.format)))
}

pub fn run_fidelity(args: FidelityArgs) -> Result<i32, UsageError> {
    let profile = Profile::load(args.preset.as_deref().unwrap_or("fig2"))?;
    let lambda = match args.lambda {
        Some(v) => v,
        None => profile.float("lambda")?,
    };
    let n_th = match args.nth {
        Some(v) => v,
        None => profile.float("nth")?,
    };
    let ns_list = match args.ns {
        Some(v) => v,
        None => profile.float_list("ns")?,
    };
    let gt_spec = match args.gt_range {
        Some(v) => v,
        None => profile.float_list("gt_range")?,
    };
    let zeta = resolve_zeta(args.zeta, &profile)?;
    let gamma = resolve_gamma(args.gamma)?;
    nonneg_list(&[lambda], "--lambda")?;
    nonneg_list(&[n_th], "--nth")?;
    nonneg_list(&ns_list, "--ns")?;
    let gt_grid = parse_range(&gt_spec, "--gt-range")?;
    ensure(gt_grid[0] >= 0.0, "--gt-range: MIN must be >= 0")?;

    let src: TwbSource = TwbSource::new(lambda).expect("validated");
    let mut tasks = Vec::new();
    for &n_s in &ns_list {
        for &gt in &gt_grid {
            tasks.push((n_s, gt));
        }
    }
    let rows: Vec<Vec<String>> = tasks
        .par_iter()
        .map(|&(n_s, gt)| {
            let bath = BathSpec::new(n_th, n_s).expect("validated");
            let ts = threshold_time_ts(&src, &bath);
            let e = evolve_twb(&src, &bath, gt).expect("validated");
            let chosen = match zeta {
                ZetaPolicy::Max => optimal_zeta(&e),
                ZetaPolicy::Coherent => 0.0,
                ZetaPolicy::Fixed(v) => v,
            };
            let f_squeezed = avg_fidelity_tele(&e, chosen).expect("finite zeta");
            let f_coherent = avg_fidelity_tele(&e, 0.0).expect("zero zeta");
            vec![
                sig12(n_s),
                sig12(gt / gamma),
                sig12(f_squeezed),
                sig12(f_coherent),
                sig12(ts / gamma),
            ]
        })
        .collect();

    let mut meta = BTreeMap::new();
    meta.insert("command".to_string(), "fidelity".to_string());
    meta.insert("preset".to_string(), profile.name().to_string());
    meta.insert("lambda".to_string(), lambda.to_string());
    meta.insert("nth".to_string(), n_th.to_string());
    meta.insert("ns".to_string(), list_echo(&ns_list));
    meta.insert("gt_range".to_string(), list_echo(&gt_spec));
    meta.insert("zeta".to_string(), zeta.to_string());
    meta.insert("gamma".to_string(), gamma.to_string());
    let table = Table {
        meta,
        columns: ["n_s", "gt", "f_squeezed", "f_coherent", "gt_s"]
            .map(String::from)
            .to_vec(),
        rows,
    };
    Ok(emit(&table.render(args.format)))
}

pub fn run_compare(args: CompareArgs) -> Result<i32, UsageError> {
    let profile = Profile::load(args.preset.as_deref().unwrap_or("fig4"))?;
    let lambda = match args.lambda {
        Some(v) => v,
        None => profile.float("lambda")?,
    };
    let delta_list = match args.delta_sq {
        Some(v) => v,
        None => profile.float_list("delta_sq")?,
    };
    let gt_spec = match args.gt_range {
        Some(v) => v,
        None => profile.float_list("gt_range")?,
    };
    let zeta = resolve_zeta(args.zeta, &profile)?;
    let gamma = resolve_gamma(args.gamma)?;
    let panels: Vec<(f64, f64)> = match (args.nth, args.ns) {
        (Some(n_th), Some(n_s)) => {
            ensure(
                args.panel.is_none(),
                "--panel cannot be combined with --nth/--ns",
            )?;
            vec![(n_th, n_s)]
        }
        (None, None) => {
            let all = profile.panels("panels")?;
            match args.panel {
                Some(i) => vec![*all.get(i).ok_or_else(|| {
                    UsageError(format!(
                        "--panel {i} out of range; profile '{}' has {} panels",
                        profile.name(),
                        all.len()
                    ))
                })?],
                None => all,
            }
        }
        _ => {
            return Err(UsageError(
                "--nth and --ns must be given together".to_string(),
            ))
        }
    };
    nonneg_list(&[lambda], "--lambda")?;
    nonneg_list(&delta_list, "--delta-sq")?;
    for &(n_th, n_s) in &panels {
        nonneg_list(&[n_th], "--nth")?;
        nonneg_list(&[n_s], "--ns")?;
    }
    let gt_grid = parse_range(&gt_spec, "--gt-range")?;
    ensure(gt_grid[0] >= 0.0, "--gt-range: MIN must be >= 0")?;

    let src: TwbSource = TwbSource::new(lambda).expect("validated");
    let zeta_override = match zeta {
        ZetaPolicy::Max => None,
        ZetaPolicy::Coherent => Some(0.0),
        ZetaPolicy::Fixed(v) => Some(v),
    };
    let mut tasks = Vec::new();
    for &(n_th, n_s) in &panels {
        for &gt in &gt_grid {
            tasks.push((n_th, n_s, gt));
        }
    }
    let rows: Vec<Vec<String>> = tasks
        .par_iter()
        .map(|&(n_th, n_s, gt)| {
            let bath = BathSpec::new(n_th, n_s).expect("validated");
            let ts = threshold_time_ts(&src, &bath);
            let points: Vec<ComparisonPoint> = delta_list
                .iter()
                .map(|&d| {
                    let ens = AmplitudeEnsemble::new(d).expect("validated");
                    teleport_vs_direct(&src, &bath, &ens, gt, zeta_override).expect("validated")
                })
                .collect();
            let mut cells = vec![sig12(n_th), sig12(n_s), sig12(gt / gamma)];
            cells.push(sig12(points[0].fidelity_tele));
            for p in &points {
                cells.push(sig12(p.fidelity_dir));
            }
            cells.push(sig12(points[0].delta_sq_threshold));
            cells.push(sig12(ts / gamma));
            cells
        })
        .collect();

    let mut columns: Vec<String> = ["n_th", "n_s", "gt", "f_tele"].map(String::from).to_vec();
    for d in &delta_list {
        columns.push(format!("f_dir_{d}"));
    }
    columns.push("delta_sq_th".to_string());
    columns.push("gt_s".to_string());

    let mut meta = BTreeMap::new();
    meta.insert("command".to_string(), "compare".to_string());
    meta.insert("preset".to_string(), profile.name().to_string());
    meta.insert("lambda".to_string(), lambda.to_string());
    meta.insert(
        "panels".to_string(),
        panels
            .iter()
            .map(|(t, s)| format!("{t},{s}"))
            .collect::<Vec<_>>()
            .join(";"),
    );
    meta.insert("delta_sq".to_string(), list_echo(&delta_list));
    meta.insert("gt_range".to_string(), list_echo(&gt_spec));
    meta.insert("zeta".to_string(), zeta.to_string());
    meta.insert("gamma".to_string(), gamma.to_string());
    let table = Table {
        meta,
        columns,
        rows,
    };
    Ok(emit(&table.render(args.format)))
}

pub fn run_verify(args: VerifyArgs) -> Result<i32, UsageError> {
    ensure(args.grid_size >= 1, "--grid-size must be at least 1")?;
    ensure(
        args.inject_perturb.is_finite(),
        "--inject-perturb must be finite",
    )?;
    let report = run_verification(&VerifyConfig {
        grid_size: args.grid_size,
        perturbation: args.inject_perturb,
    });
    let verdict = if report.all_passed() { 0 } else { 1 };
    Ok(verdict.max(emit(&format!("{report}\n"))))
}
