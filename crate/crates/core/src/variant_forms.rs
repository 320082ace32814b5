//! Commonly quoted closed-form variants that the first-principles oracles
//! reject, preserved verbatim for comparison.
//!
//! Four of this crate's closed forms circulate in versions that differ from
//! what the overlap, quadrature, and root-finding oracles validate. The
//! shipped defaults live in their home modules; this module keeps the
//! differing versions callable so the deviation can be reproduced and
//! measured rather than taken on faith. `FORMULA_NOTES.md` at the
//! repository root works through each difference and the checks that decide
//! it.
//!
//! None of these functions should be used for physics. Each doc comment
//! states the exact check its result fails.

use crate::channel::BathSpec;
use crate::error::DomainError;
use crate::gaussian::TwbSource;
use crate::real::{cst, diag, Real};
use crate::separability::threshold_time_t0;
use crate::teleportation::SqueezedState;
use crate::transmission::{direct_variances, AmplitudeEnsemble};

/// Separability threshold with the bare `n_s(1+n_s)/(n_th(1+n_th))` term
/// under the radical.
///
/// The validated form carries that term with an extra factor
/// `e^{−4λ}(1+2n_th)²`. Without it the result disagrees with bisection on
/// the partial-transpose product (the evolved product is not 1/16 at the
/// returned time) and the lifetime penalty G loses its sign guarantee.
/// Coincides with the shipped form when `n_s = 0`.
pub fn threshold_time_ts<T: Real>(source: &TwbSource<T>, bath: &BathSpec<T>) -> T {
    if source.lambda() == T::zero() {
        return T::zero();
    }
    if bath.n_th() == T::zero() {
        return T::infinity();
    }
    if bath.n_s() == T::zero() {
        return threshold_time_t0(source, bath.n_th()).expect("n_th is validated and positive");
    }
    let one = T::one();
    let two = cst::<T>(2.0);
    let a = (-two * source.lambda()).exp();
    let t = one + two * bath.n_th();
    let s = one + two * bath.n_s();
    let f = t * (t - a * s) / ((t - one) * (t + one));
    let g = bath.n_s() * (one + bath.n_s()) / (bath.n_th() * (one + bath.n_th()));
    (f + (f * f + g).sqrt() / t).ln()
}

/// Direct-transmission fidelity with `(1 + e^{−Γt′/2})²` on the `b` term.
///
/// The validated form uses `(1 − e^{−Γt′/2})²` on both amplitude terms,
/// mirroring how far each mean has drifted. The `+` version fails the
/// identity-channel check (`t′ = 0` should give fidelity 1 for every
/// state) and disagrees with the overlap of the input and its evolved
/// self whenever `b ≠ 0`.
pub fn direct_fidelity<T: Real>(
    state: &SqueezedState<T>,
    bath: &BathSpec<T>,
    time_gt_prime: T,
) -> Result<T, DomainError> {
    let (sa, sb) = direct_variances(state.zeta(), bath, time_gt_prime)?;
    let half = cst::<T>(0.5);
    let two = cst::<T>(2.0);
    let damp = (-half * time_gt_prime).exp();
    let faded = T::one() - damp;
    let grown = T::one() + damp;
    let exponent = state.mean_x().powi(2) * faded * faded / (two * sa)
        + state.mean_y().powi(2) * grown * grown / (two * sb);
    Ok((-exponent).exp() / (two * (sa * sb).sqrt()))
}

/// Ensemble-averaged direct fidelity with a single power of
/// `(1 − e^{−Γt′/2})` on the `Δ²` terms.
///
/// The validated form squares that factor, which is what the Gaussian
/// integral of the per-state fidelity over the amplitude ensemble
/// produces (and what the Gauss–Hermite oracle confirms). The
/// single-power version also breaks the break-even identity: the averaged
/// fidelity at `Δ² = Δ²_th` would no longer equal the teleportation
/// fidelity.
pub fn avg_direct_fidelity<T: Real>(
    zeta: T,
    ensemble: &AmplitudeEnsemble<T>,
    bath: &BathSpec<T>,
    time_gt_prime: T,
) -> Result<T, DomainError> {
    let (sa, sb) = direct_variances(zeta, bath, time_gt_prime)?;
    let half = cst::<T>(0.5);
    let faded = -(-half * time_gt_prime).exp_m1();
    let spread = faded * ensemble.delta_sq();
    Ok(half / ((spread + sa) * (spread + sb)).sqrt())
}

/// Zero-noise break-even width with `e^{−Γt}` in the denominator.
///
/// The validated reduction of the general break-even expression at
/// `n_th = n_s = 0` carries `e^{+Γt}` there, so this version is larger by
/// exactly `e^{2Γt}` and misses the bisected crossing of the two averaged
/// fidelities.
pub fn delta_threshold_zero_noise<T: Real>(
    source: &TwbSource<T>,
    time_gt: T,
) -> Result<T, DomainError> {
    if time_gt.is_nan() {
        return Err(DomainError::NonFinite {
            name: "time_gt",
            value: f64::NAN,
        });
    }
    if time_gt < T::zero() {
        return Err(DomainError::Negative {
            name: "time_gt",
            value: diag(time_gt),
        });
    }
    if time_gt == T::zero() {
        return Err(DomainError::DegenerateThreshold {
            reason: "the direct line is noiseless at zero elapsed time",
        });
    }
    let one = T::one();
    let two = cst::<T>(2.0);
    let faded = -(-time_gt).exp_m1();
    Ok((time_gt.exp() - one + (-two * source.lambda()).exp())
        / (two * (-time_gt).exp() * faded * faded))
}
