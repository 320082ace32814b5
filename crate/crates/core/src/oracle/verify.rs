//! Cross-validation of every closed form against the numerical machinery.
//!
//! Each check sweeps a seeded random sample of parameter tuples, evaluates
//! a closed-form quantity and its independent numerical counterpart, and
//! records the largest absolute deviation. The seeds are fixed per check,
//! so two runs with the same configuration produce identical reports.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{evolve_single_mode, evolve_twb, BathSpec};
use crate::gaussian::{gaussian_overlap, CovarianceMatrix4, GaussianWigner1M, TwbSource};
use crate::oracle::{
    find_root_bisect, gh_avg_direct_fidelity, ode_covariance_propagate, ode_single_mode_propagate,
    quad_overlap, quad_teleport_convolution,
};
use crate::separability::{threshold_time_t0, threshold_time_ts};
use crate::teleportation::{
    avg_fidelity_tele, max_avg_fidelity, optimal_zeta, teleport_output, SqueezedState,
};
use crate::transmission::{
    avg_direct_fidelity, delta_threshold, direct_fidelity, AmplitudeEnsemble,
};

const ODE_STEP: f64 = 0.005;

/// Settings for one verification run.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    /// Scales the number of sampled tuples; each check draws `40 × grid_size`.
    pub grid_size: usize,
    /// Offset added to every closed-form value before comparison. Zero for
    /// a real run; a nonzero value must make the suite fail and exists to
    /// prove the checks can detect a broken formula.
    pub perturbation: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            grid_size: 5,
            perturbation: 0.0,
        }
    }
}

/// Outcome of a single named check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: &'static str,
    pub points: usize,
    pub max_abs_dev: f64,
    pub tolerance: f64,
    pub worst_case: String,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.points > 0 && self.max_abs_dev.is_finite() && self.max_abs_dev <= self.tolerance
    }
}

/// Outcome of a full verification run.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<CheckReport>,
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed)
    }

    pub fn failures(&self) -> Vec<&CheckReport> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            let status = if check.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{status} {:<62} points={:<4} max|dev|={:.3e} tol={:.1e}",
                check.name, check.points, check.max_abs_dev, check.tolerance
            )?;
            if !check.passed() && !check.worst_case.is_empty() {
                writeln!(f, "     worst at {}", check.worst_case)?;
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed()).count();
        write!(
            f,
            "{passed}/{} checks passed in {:.2}s",
            self.checks.len(),
            self.elapsed.as_secs_f64()
        )
    }
}

struct Tracker {
    points: usize,
    max_abs_dev: f64,
    worst_case: String,
}

impl Tracker {
    fn new() -> Self {
        Self {
            points: 0,
            max_abs_dev: 0.0,
            worst_case: String::new(),
        }
    }

    fn record(&mut self, dev: f64, describe: impl FnOnce() -> String) {
        self.points += 1;
        if self.max_abs_dev.is_nan() {
            return;
        }
        if dev.is_nan() || dev > self.max_abs_dev {
            self.max_abs_dev = dev;
            self.worst_case = describe();
        }
    }

    fn finish(self, name: &'static str, tolerance: f64) -> CheckReport {
        CheckReport {
            name,
            points: self.points,
            max_abs_dev: self.max_abs_dev,
            tolerance,
            worst_case: self.worst_case,
        }
    }
}

/// Runs every check and collects the reports.
pub fn run_verification(config: &VerifyConfig) -> VerifyReport {
    let started = Instant::now();
    let count = 40 * config.grid_size.max(1);
    let p = config.perturbation;
    let checks = vec![
        check_overlap(count, p),
        check_twb_evolution(count, p),
        check_single_mode_evolution(count, p),
        check_teleport_fidelity(count, p),
        check_direct_fidelity(count, p),
        check_teleport_moments(count, p),
        check_ensemble_average(count, p),
        check_separability_threshold(count, p),
        check_fidelity_crossing(count, p),
        check_break_even_width(count, p),
    ];
    VerifyReport {
        checks,
        elapsed: started.elapsed(),
    }
}

fn random_state(rng: &mut ChaCha8Rng) -> GaussianWigner1M {
    let mean_x = rng.gen_range(-3.0..=3.0);
    let mean_y = rng.gen_range(-3.0..=3.0);
    let var_x: f64 = rng.gen_range(0.05..=2.5);
    let var_y: f64 = rng.gen_range(0.05..=2.5);
    let rho = rng.gen_range(-0.8..=0.8);
    GaussianWigner1M::with_cov(mean_x, mean_y, var_x, var_y, rho * (var_x * var_y).sqrt())
        .expect("sampled moments are positive definite")
}

fn random_bath(rng: &mut ChaCha8Rng) -> BathSpec {
    BathSpec::new(rng.gen_range(0.0..=1.5), rng.gen_range(0.0..=1.0)).expect("valid bath")
}

fn check_overlap(count: usize, perturb: f64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut trk = Tracker::new();
    for _ in 0..count {
        let a = random_state(&mut rng);
        let b = random_state(&mut rng);
        let closed = gaussian_overlap(&a, &b).expect("valid states") + perturb;
        let dev = match quad_overlap(&a, &b) {
            Ok(q) => (q - closed).abs(),
            Err(_) => f64::INFINITY,
        };
        trk.record(dev, || format!("a={a:?} b={b:?}"));
    }
    trk.finish("state overlap: closed form vs quadrature", 1e-8)
}

fn check_twb_evolution(count: usize, perturb: f64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut trk = Tracker::new();
    for _ in 0..count {
        let lambda = rng.gen_range(0.05..=2.0);
        let bath = random_bath(&mut rng);
        let gt = rng.gen_range(0.01..=3.0);
        let src = TwbSource::new(lambda).expect("valid squeezing");
        let e = evolve_twb(&src, &bath, gt).expect("valid evolution");
        let (sp, sm) = src.wigner_variances();
        let v0 = CovarianceMatrix4::from_sigmas(sp, sm, sm, sp).expect("fresh twin beam");
        let dev = match ode_covariance_propagate(*v0.entries(), &bath, gt, ODE_STEP) {
            Ok(v) => {
                let got = [
                    v[0][0] + v[0][2],
                    v[1][1] + v[1][3],
                    v[0][0] - v[0][2],
                    v[1][1] - v[1][3],
                ];
                let want = [e.sigma1_sq(), e.sigma2_sq(), e.sigma3_sq(), e.sigma4_sq()];
                got.iter()
                    .zip(&want)
                    .map(|(g, w)| (g - (w + perturb)).abs())
                    .fold(0.0, f64::max)
            }
            Err(_) => f64::INFINITY,
        };
        trk.record(dev, || {
            format!(
                "lambda={lambda:.4} n_th={:.4} n_s={:.4} gt={gt:.4}",
                bath.n_th(),
                bath.n_s()
            )
        });
    }
    trk.finish(
        "twin-beam evolution: closed form vs moment integration",
        1e-8,
    )
}

fn check_single_mode_evolution(count: usize, perturb: f64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut trk = Tracker::new();
    for _ in 0..count {
        let zeta = rng.gen_range(-1.0..=1.0);
        let bath = random_bath(&mut rng);
        let tp = rng.gen_range(0.01..=3.0);
        let state = SqueezedState::new(0.0, 0.0, zeta).expect("valid state");
        let out = evolve_single_mode(&state, &bath, tp).expect("valid evolution");
        let (vx, vy) = state.wigner_variances();
        let dev = match ode_single_mode_propagate([[vx, 0.0], [0.0, vy]], &bath, tp, ODE_STEP) {
            Ok(v) => f64::max(
                (v[0][0] - (out.var_x() + perturb)).abs(),
                (v[1][1] - (out.var_y() + perturb)).abs(),
            ),
            Err(_) => f64::INFINITY,
        };
        trk.record(dev, || {
            format!(
                "zeta={zeta:.4} n_th={:.4} n_s={:.4} gt'={tp:.4}",
                bath.n_th(),
                bath.n_s()
            )
        });
    }
    trk.finish(
        "single-mode evolution: closed form vs moment integration",
        1e-8,
    )
}

fn check_teleport_fidelity(count: usize, perturb: f64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut trk = Tracker::new();
    for _ in 0..count {
        let lambda = rng.gen_range(0.05..=2.0);
        let bath = random_bath(&mut rng);
        let gt = rng.gen_range(0.01..=3.0);
        let zeta = rng.gen_range(-1.0..=1.0);
        let mean_x = rng.gen_range(-3.0..=3.0);
        let mean_y = rng.gen_range(-3.0..=3.0);
        let src = TwbSource::new(lambda).expect("valid squeezing");
        let e = evolve_twb(&src, &bath, gt).expect("valid evolution");
        let input = SqueezedState::new(mean_x, mean_y, zeta).expect("valid state");
        let closed = avg_fidelity_tele(&e, zeta).expect("valid zeta") + perturb;
        let out = teleport_output(&input, &e);
        let dev = match quad_overlap(&input.wigner(), &out) {
            Ok(q) => (q - closed).abs(),
            Err(_) => f64::INFINITY,
        };
        trk.record(dev, || {
            format!(
                "lambda={lambda:.4} n_th={:.4} n_s={:.4} gt={gt:.4} zeta={zeta:.4}",
                bath.n_th(),
                bath.n_s()
            )
        });
    }
    trk.finish(
        "teleportation fidelity: closed form vs overlap quadrature",
        1e-8,
    )
}

fn check_direct_fidelity(count: usize, perturb: f64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut trk = Tracker::new();
    for _ in 0..count {
        let zeta = rng.gen_range(-1.0..=1.0);
        let bath = random_bath(&mut rng);
        let tp = rng.gen_range(0.01..=3.0);
        let mean_x = rng.gen_range(-3.0..=3.0);
        let mean_y = rng.gen_range(-3.0..=3.0);
        let state = SqueezedState::new(mean_x, mean_y, zeta).expect("valid state");
        let closed = direct_fidelity(&state, &bath, tp).expect("valid inputs") + perturb;
        let evolved = evolve_single_mode(&state, &bath, tp).expect("valid evolution");
        let dev = match quad_overlap(&state.wigner(), &evolved) {
            Ok(q) => (q - closed).abs(),
            Err(_) => f64::INFINITY,
        };
        trk.record(dev, || {
            format!(
                "zeta={zeta:.4} n_th={:.4} n_s={:.4} gt'={tp:.4} means=({mean_x:.3},{mean_y:.3})",
                bath.n_th(),
                bath.n_s()
            )
        });
    }
    trk.finish("direct fidelity: closed form vs overlap quadrature", 1e-8)
}

fn check_teleport_moments(count: usize, perturb: f64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let mut trk = Tracker::new();
    for _ in 0..count {
        let lambda = rng.gen_range(0.05..=2.0);
        let bath = random_bath(&mut rng);
        let gt = rng.gen_range(0.01..=3.0);
        let zeta = rng.gen_range(-1.0..=1.0);
        let mean_x = rng.gen_range(-3.0..=3.0);
        let mean_y = rng.gen_range(-3.0..=3.0);
        let src = TwbSource::new(lambda).expect("valid squeezing");
        let e = evolve_twb(&src, &bath, gt).expect("valid evolution");
        let input = SqueezedState::new(mean_x, mean_y, zeta).expect("valid state");
        let out = teleport_output(&input, &e);
        let dev = match quad_teleport_convolution(&input, &e) {
            Ok(q) => [
                q.mean_x() - out.mean_x(),
                q.mean_y() - out.mean_y(),
                q.var_x() - out.var_x(),
                q.var_y() - out.var_y(),
            ]
            .iter()
            .map(|d| (d - perturb).abs())
            .fold(0.0, f64::max),
            Err(_) => f64::INFINITY,
        };
        trk.record(dev, || {
            format!(
                "lambda={lambda:.4} n_th={:.4} n_s={:.4} gt={gt:.4} zeta={zeta:.4}",
                bath.n_th(),
                bath.n_s()
            )
        });
    }
    trk.finish(
        "teleportation output: closed moments vs convolution quadrature",
        1e-7,
    )
}

fn check_ensemble_average(count: usize, perturb: f64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut trk = Tracker::new();
    for _ in 0..count {
        let zeta = rng.gen_range(-1.0..=1.0);
        let bath = random_bath(&mut rng);
        let tp = rng.gen_range(0.01..=3.0);
        let delta_sq = rng.gen_range(0.05..=3.0);
        let ens = AmplitudeEnsemble::new(delta_sq).expect("valid width");
        let closed = avg_direct_fidelity(zeta, &ens, &bath, tp).expect("valid inputs") + perturb;
        let dev = match gh_avg_direct_fidelity(zeta, &ens, &bath, tp) {
            Ok(q) => (q - closed).abs(),
            Err(_) => f64::INFINITY,
        };
        trk.record(dev, || {
            format!(
                "zeta={zeta:.4} delta_sq={delta_sq:.4} n_th={:.4} n_s={:.4} gt'={tp:.4}",
                bath.n_th(),
                bath.n_s()
            )
        });
    }
    trk.finish(
        "ensemble-averaged fidelity: closed form vs Gauss-Hermite",
        1e-8,
    )
}

fn check_separability_threshold(count: usize, perturb: f64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    let mut trk = Tracker::new();
    for _ in 0..count {
        let lambda = rng.gen_range(0.05..=2.0);
        let n_th = rng.gen_range(0.01..=1.5);
        let n_s = rng.gen_range(0.0..=1.0);
        let src = TwbSource::new(lambda).expect("valid squeezing");
        let bath = BathSpec::new(n_th, n_s).expect("valid bath");
        let closed = threshold_time_ts(&src, &bath) + perturb;
        let t0 = threshold_time_t0(&src, n_th).expect("positive temperature");
        let flip = |t: f64| {
            let e = evolve_twb(&src, &bath, t).expect("valid evolution");
            16.0 * e.sigma2_sq() * e.sigma3_sq() - 1.0
        };
        let dev = match find_root_bisect(flip, 0.0, t0 + 50.0, 1e-11) {
            Ok(root) => (root - closed).abs(),
            Err(_) => f64::INFINITY,
        };
        trk.record(dev, || {
            format!("lambda={lambda:.4} n_th={n_th:.4} n_s={n_s:.4}")
        });
    }
    trk.finish("separability threshold: closed form vs bisection", 1e-9)
}

fn check_fidelity_crossing(count: usize, perturb: f64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let mut trk = Tracker::new();
    for _ in 0..count {
        let lambda = rng.gen_range(0.05..=2.0);
        let n_th = rng.gen_range(0.01..=1.5);
        let n_s = rng.gen_range(0.0..=1.0);
        let src = TwbSource::new(lambda).expect("valid squeezing");
        let bath = BathSpec::new(n_th, n_s).expect("valid bath");
        let closed = threshold_time_ts(&src, &bath) + perturb;
        let t0 = threshold_time_t0(&src, n_th).expect("positive temperature");
        let excess = |t: f64| {
            let e = evolve_twb(&src, &bath, t).expect("valid evolution");
            max_avg_fidelity(&e) - 0.5
        };
        let dev = match find_root_bisect(excess, 0.0, t0 + 50.0, 1e-11) {
            Ok(root) => (root - closed).abs(),
            Err(_) => f64::INFINITY,
        };
        trk.record(dev, || {
            format!("lambda={lambda:.4} n_th={n_th:.4} n_s={n_s:.4}")
        });
    }
    trk.finish("fidelity crossing vs separability threshold", 1e-9)
}

fn check_break_even_width(count: usize, perturb: f64) -> CheckReport {
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let mut trk = Tracker::new();
    for _ in 0..count {
        let lambda: f64 = rng.gen_range(0.5..=2.0);
        let n_th: f64 = rng.gen_range(0.0..=0.8);
        let n_s: f64 = rng.gen_range(0.0..=0.5);
        let gt: f64 = rng.gen_range(0.1..=2.0);
        let src = TwbSource::new(lambda).expect("valid squeezing");
        let bath = BathSpec::new(n_th, n_s).expect("valid bath");
        let closed = match delta_threshold(&src, &bath, gt) {
            Ok(d) if d.is_finite() && d > 1e-6 => d + perturb,
            _ => continue,
        };
        let e = evolve_twb(&src, &bath, gt).expect("valid evolution");
        let zeta = optimal_zeta(&e);
        let tele = avg_fidelity_tele(&e, zeta).expect("valid zeta");
        let margin = |d: f64| {
            let ens = AmplitudeEnsemble::new(d).expect("valid width");
            tele - avg_direct_fidelity(zeta, &ens, &bath, 2.0 * gt).expect("valid inputs")
        };
        let hi = 2.0 * closed.abs().max(0.25);
        let dev = match find_root_bisect(margin, 0.0, hi, 1e-12) {
            Ok(root) => (root - closed).abs(),
            Err(_) => f64::INFINITY,
        };
        trk.record(dev, || {
            format!("lambda={lambda:.4} n_th={n_th:.4} n_s={n_s:.4} gt={gt:.4}")
        });
    }
    trk.finish("break-even noise width: closed form vs bisection", 1e-8)
}
