//! Fixed-step integration of the covariance moment equation.
//!
//! Under the channel every quadrature drifts at `−(Γ/2)x` with constant
//! diffusion, so second moments obey the linear matrix equation
//!
//! ```text
//! dV/d(Γt) = −(V − V_∞),
//! ```
//!
//! where `V_∞` is diagonal with the stationary variances `(1+2N±2M)/4` in
//! quadrature order. Integrating this numerically re-derives every
//! closed-form variance in [`crate::channel`] without touching the
//! exponential solution; the classical fourth-order scheme at the step
//! sizes used by the verification suite keeps the local error near 1e−14.

use crate::channel::BathSpec;
use crate::error::OracleError;

fn rk4_relax<const N: usize>(
    initial: [[f64; N]; N],
    stationary: [[f64; N]; N],
    time_gt: f64,
    max_step: f64,
) -> Result<[[f64; N]; N], OracleError> {
    if !time_gt.is_finite() || time_gt < 0.0 {
        return Err(OracleError::BadSpan(time_gt));
    }
    if !max_step.is_finite() || max_step <= 0.0 {
        return Err(OracleError::BadSpan(max_step));
    }
    if time_gt == 0.0 {
        return Ok(initial);
    }
    let steps = (time_gt / max_step).ceil() as usize;
    let h = time_gt / steps as f64;
    let deriv = |v: &[[f64; N]; N]| {
        let mut d = [[0.0; N]; N];
        for i in 0..N {
            for j in 0..N {
                d[i][j] = stationary[i][j] - v[i][j];
            }
        }
        d
    };
    let shifted = |v: &[[f64; N]; N], k: &[[f64; N]; N], scale: f64| {
        let mut s = [[0.0; N]; N];
        for i in 0..N {
            for j in 0..N {
                s[i][j] = v[i][j] + scale * k[i][j];
            }
        }
        s
    };
    let mut v = initial;
    for _ in 0..steps {
        let k1 = deriv(&v);
        let k2 = deriv(&shifted(&v, &k1, 0.5 * h));
        let k3 = deriv(&shifted(&v, &k2, 0.5 * h));
        let k4 = deriv(&shifted(&v, &k3, h));
        for i in 0..N {
            for j in 0..N {
                v[i][j] += h / 6.0 * (k1[i][j] + 2.0 * k2[i][j] + 2.0 * k3[i][j] + k4[i][j]);
            }
        }
    }
    Ok(v)
}

/// Propagates a two-mode 4×4 covariance matrix for a time `Γt`.
pub fn ode_covariance_propagate(
    initial: [[f64; 4]; 4],
    bath: &BathSpec,
    time_gt: f64,
    max_step: f64,
) -> Result<[[f64; 4]; 4], OracleError> {
    let (vp, vm) = bath.stationary_variances();
    let mut stationary = [[0.0; 4]; 4];
    stationary[0][0] = vp;
    stationary[1][1] = vm;
    stationary[2][2] = vp;
    stationary[3][3] = vm;
    rk4_relax(initial, stationary, time_gt, max_step)
}

/// Propagates a single-mode 2×2 covariance matrix for a time `Γt`.
pub fn ode_single_mode_propagate(
    initial: [[f64; 2]; 2],
    bath: &BathSpec,
    time_gt: f64,
    max_step: f64,
) -> Result<[[f64; 2]; 2], OracleError> {
    let (vp, vm) = bath.stationary_variances();
    rk4_relax(initial, [[vp, 0.0], [0.0, vm]], time_gt, max_step)
}
