//! Entanglement lifetime of the twin beam: the partial-transpose test and
//! the separability threshold times.
//!
//! For the states produced by [`evolve_twb`](crate::channel::evolve_twb)
//! the partial-transpose criterion is necessary and sufficient and reduces
//! to two scalar conditions on the principal variances,
//!
//! ```text
//! separable  ⟺  Σ₁²Σ₄² ≥ 1/16   and   Σ₂²Σ₃² ≥ 1/16,
//! ```
//!
//! with the boundary counting as separable. The first product never binds
//! along a channel trajectory: with `B = e^{2λ}`, `T = 1+2n_th`,
//! `S = 1+2n_s`, `u = e^{−Γt}` it expands to
//! `16Σ₁²Σ₄² = B²u² + 2BTS·u(1−u) + T²(1−u)²`, which is bounded below by
//! `(u + (1−u))² = 1` because `B, T, S ≥ 1`. The second product starts at
//! `e^{−4λ}/16 < 1/16` for any squeezed source and grows to `T²/16`, so
//! its crossing defines the threshold time. Solving `16Σ₂²Σ₃² = 1` (a
//! quadratic in `u`, with `A = e^{−2λ}`) gives the closed form
//!
//! ```text
//! e^{Γt_s} = f + (1/T)·√(f² + A²T²(S²−1)/(T²−1)),
//! f = T(T − AS)/(T² − 1),
//! ```
//!
//! which for `n_s = 0` collapses to the thermal-bath threshold
//!
//! ```text
//! Γt₀ = ln(1 + (1 − e^{−2λ})/(2n_th)).
//! ```
//!
//! The ratio `G = (t_s − t₀)/t₀` isolates what bath squeezing does to the
//! entanglement lifetime at fixed `n_th`; it is negative whenever
//! `n_s > 0`, so a squeezed bath always shortens the lifetime.
//!
//! At `n_th = 0` both thresholds are reported as `+∞` (the zero-temperature
//! channel preserves the negativity of the second product at every finite
//! time in the regimes treated here), and `λ = 0` yields `t_s = 0` since a
//! product state has nothing to lose.

use crate::channel::{BathSpec, EvolvedTwinBeam};
use crate::error::DomainError;
use crate::gaussian::TwbSource;
use crate::real::{cst, diag, Real};

/// Partial-transpose test for an evolved twin beam; the boundary counts as
/// separable.
pub fn is_separable<T: Real>(twb: &EvolvedTwinBeam<T>) -> bool {
    let bound = cst::<T>(0.0625);
    twb.sigma1_sq() * twb.sigma4_sq() >= bound && twb.sigma2_sq() * twb.sigma3_sq() >= bound
}

/// Threshold time `Γt₀ = ln(1 + (1 − e^{−2λ})/(2n_th))` for a purely
/// thermal bath; `+∞` at `n_th = 0` and `0` at `λ = 0`.
pub fn threshold_time_t0<T: Real>(source: &TwbSource<T>, n_th: T) -> Result<T, DomainError> {
    if !n_th.is_finite() {
        return Err(DomainError::NonFinite {
            name: "n_th",
            value: diag(n_th),
        });
    }
    if n_th < T::zero() {
        return Err(DomainError::Negative {
            name: "n_th",
            value: diag(n_th),
        });
    }
    if n_th == T::zero() {
        return Ok(T::infinity());
    }
    let spread = -(-cst::<T>(2.0) * source.lambda()).exp_m1();
    Ok((spread / (cst::<T>(2.0) * n_th)).ln_1p())
}

/// Threshold time `Γt_s` after which the evolved twin beam is separable.
///
/// Returns `0` for an unsqueezed source and `+∞` for a zero-temperature
/// bath. For `n_s = 0` the result is bit-identical to
/// [`threshold_time_t0`].
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
    let denom = (t - one) * (t + one);
    let f = t * (t - a * s) / denom;
    let g = a * a * t * t * (s * s - one) / denom;
    let r = (f * f + g).sqrt() / t;
    let grown = if f >= T::zero() {
        f + r
    } else {
        // Equivalent rationalized root; avoids the f + r cancellation when
        // the bath squeezing dominates the thermal part (AS > T).
        (a * a * (s * s - one) - (t - a * s) * (t - a * s)) / (denom * (r - f))
    };
    grown.ln()
}

/// Relative lifetime penalty `G = (t_s − t₀)/t₀` of bath squeezing.
///
/// Exactly `0` at `n_s = 0` and strictly negative for `n_s > 0`. Undefined
/// where `t₀` is zero or infinite, so `λ > 0` and `n_th > 0` are required.
pub fn squeezing_penalty_g<T: Real>(
    source: &TwbSource<T>,
    bath: &BathSpec<T>,
) -> Result<T, DomainError> {
    let t0 = threshold_time_t0(source, bath.n_th())?;
    if t0 == T::zero() {
        return Err(DomainError::DegenerateThreshold {
            reason: "t0 vanishes for an unsqueezed twin beam",
        });
    }
    if t0.is_infinite() {
        return Err(DomainError::DegenerateThreshold {
            reason: "t0 is infinite for a zero-temperature bath",
        });
    }
    let ts = threshold_time_ts(source, bath);
    Ok((ts - t0) / t0)
}
