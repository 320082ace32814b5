//! Bracketed root finding by plain bisection.

use crate::error::OracleError;

/// Finds a root of `f` starting from the bracket `[lo, hi]`.
///
/// If `f` has the same sign at both ends, the upper end is pushed out by
/// repeated doubling of the interval before giving up. The returned value
/// is the midpoint of the final bracket, whose width is at most `tol`.
pub fn find_root_bisect(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<f64, OracleError> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(OracleError::BadSpan(hi - lo));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(OracleError::BadSpan(tol));
    }
    let mut lo = lo;
    let mut hi = hi;
    let mut flo = f(lo);
    let mut fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    let mut expansions = 0;
    while flo.signum() == fhi.signum() {
        expansions += 1;
        if expansions > 60 || !hi.is_finite() {
            return Err(OracleError::NoBracket { lo, hi });
        }
        hi += hi - lo;
        fhi = f(hi);
        if fhi == 0.0 {
            return Ok(hi);
        }
    }
    for _ in 0..4096 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
