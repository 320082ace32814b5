//! Direct transmission through the same noisy channel, Gaussian amplitude
//! ensembles, and the teleport-versus-direct trade-off.
//!
//! The alternative to teleporting a state is to send it straight through
//! the squeezed-thermal channel for a time `Γt′`. The fidelity of that
//! transmission is the overlap of the input with its evolved self, which
//! for a displaced squeezed input `(a, b, ζ)` is
//!
//! ```text
//! F = exp{ −a²(1−e^{−Γt′/2})²/(2Σ_a²) − b²(1−e^{−Γt′/2})²/(2Σ_b²) }
//!     / (2 √(Σ_a² Σ_b²)),
//!
//! Σ_a² = e^{−2ζ}(1+e^{−Γt′})/4 + D₊²(t′),
//! Σ_b² = e^{+2ζ}(1+e^{−Γt′})/4 + D₋²(t′).
//! ```
//!
//! Averaging over amplitudes drawn from `P(α) = e^{−|α|²/(2Δ²)}/(2πΔ²)`
//! (variance `Δ²` in each of `a` and `b`) gives
//!
//! ```text
//! F̄_dir = ½ [ (qΔ² + Σ_a²)(qΔ² + Σ_b²) ]^{−1/2},   q = (1−e^{−Γt′/2})².
//! ```
//!
//! A fair comparison sends the teleportation resource one way for a time
//! `t` while the direct line covers the same distance twice, so every
//! comparison here pairs teleportation at `Γt` with direct transmission at
//! `Γt′ = 2Γt`. Since the teleportation fidelity does not depend on `Δ²`
//! while `F̄_dir` strictly decreases in it, the break-even ensemble width
//!
//! ```text
//! Δ²_th = [ −(Σ_a² + Σ_b²) + √((Σ_a² − Σ_b²)² + F̄_tele^{−2}) ]
//!         / (2 (1−e^{−Γt})²)
//! ```
//!
//! (variances at `t′ = 2t`) marks where teleportation starts to win:
//! teleportation beats direct transmission exactly when `Δ² ≥ Δ²_th`. The
//! threshold can be negative, in which case teleportation wins at every
//! width.

use crate::channel::{evolve_twb, BathSpec};
use crate::error::DomainError;
use crate::gaussian::TwbSource;
use crate::real::{cst, diag, Real};
use crate::teleportation::{avg_fidelity_tele, optimal_zeta, SqueezedState};

/// Gaussian ensemble of input amplitudes with variance `Δ²` per quadrature
/// mean: `P(α) = e^{−|α|²/(2Δ²)}/(2πΔ²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeEnsemble<T = f64> {
    delta_sq: T,
}

impl<T: Real> AmplitudeEnsemble<T> {
    pub fn new(delta_sq: T) -> Result<Self, DomainError> {
        if !delta_sq.is_finite() {
            return Err(DomainError::NonFinite {
                name: "delta_sq",
                value: diag(delta_sq),
            });
        }
        if delta_sq < T::zero() {
            return Err(DomainError::Negative {
                name: "delta_sq",
                value: diag(delta_sq),
            });
        }
        Ok(Self { delta_sq })
    }

    pub fn delta_sq(&self) -> T {
        self.delta_sq
    }
}

/// Input-plus-output overlap variances `(Σ_a², Σ_b²)` of the direct line
/// after `Γt′`.
pub fn direct_variances<T: Real>(
    zeta: T,
    bath: &BathSpec<T>,
    time_gt_prime: T,
) -> Result<(T, T), DomainError> {
    if !zeta.is_finite() {
        return Err(DomainError::NonFinite {
            name: "zeta",
            value: diag(zeta),
        });
    }
    let (dp, dm) = bath.diffusion(time_gt_prime)?;
    let two = cst::<T>(2.0);
    let four = cst::<T>(4.0);
    let retained = T::one() + (-time_gt_prime).exp();
    Ok((
        (-two * zeta).exp() * retained / four + dp,
        (two * zeta).exp() * retained / four + dm,
    ))
}

/// Fidelity of sending one displaced squeezed state straight through the
/// channel for `Γt′`.
pub fn direct_fidelity<T: Real>(
    state: &SqueezedState<T>,
    bath: &BathSpec<T>,
    time_gt_prime: T,
) -> Result<T, DomainError> {
    let (sa, sb) = direct_variances(state.zeta(), bath, time_gt_prime)?;
    let half = cst::<T>(0.5);
    let two = cst::<T>(2.0);
    let faded = -(-half * time_gt_prime).exp_m1();
    let drift = faded * faded;
    let exponent =
        state.mean_x().powi(2) * drift / (two * sa) + state.mean_y().powi(2) * drift / (two * sb);
    Ok((-exponent).exp() / (two * (sa * sb).sqrt()))
}

/// Direct-transmission fidelity averaged over the amplitude ensemble at
/// fixed input squeezing `ζ`.
pub fn avg_direct_fidelity<T: Real>(
    zeta: T,
    ensemble: &AmplitudeEnsemble<T>,
    bath: &BathSpec<T>,
    time_gt_prime: T,
) -> Result<T, DomainError> {
    let (sa, sb) = direct_variances(zeta, bath, time_gt_prime)?;
    let half = cst::<T>(0.5);
    let faded = -(-half * time_gt_prime).exp_m1();
    let spread = faded * faded * ensemble.delta_sq();
    Ok(half / ((spread + sa) * (spread + sb)).sqrt())
}

/// Large-time limits `(g₊, g₋)` of the averaged direct line: as `Γt′ → ∞`
/// with the input squeezing at its optimal asymptote,
/// `F̄_dir → ½ (g₊ g₋)^{−1/2}` with
///
/// ```text
/// g_± = Δ² + (2 + 2n_th)(S ± √(S²−1))/4,   S = 1 + 2n_s.
/// ```
pub fn asymptotic_g<T: Real>(bath: &BathSpec<T>, ensemble: &AmplitudeEnsemble<T>) -> (T, T) {
    let one = T::one();
    let two = cst::<T>(2.0);
    let four = cst::<T>(4.0);
    let t = one + two * bath.n_th();
    let s = one + two * bath.n_s();
    let h = ((s - one) * (s + one)).sqrt();
    (
        ensemble.delta_sq() + (one + t) * (s + h) / four,
        ensemble.delta_sq() + (one + t) * (s - h) / four,
    )
}

/// Break-even ensemble width at the fidelity-optimal input squeezing
/// `ζ_max(Γt)`; teleportation wins for `Δ² ≥ Δ²_th`.
pub fn delta_threshold<T: Real>(
    source: &TwbSource<T>,
    bath: &BathSpec<T>,
    time_gt: T,
) -> Result<T, DomainError> {
    let twb = evolve_twb(source, bath, time_gt)?;
    delta_threshold_with_zeta(source, bath, time_gt, optimal_zeta(&twb))
}

/// Break-even ensemble width at an explicitly chosen input squeezing.
pub fn delta_threshold_with_zeta<T: Real>(
    source: &TwbSource<T>,
    bath: &BathSpec<T>,
    time_gt: T,
    zeta: T,
) -> Result<T, DomainError> {
    let twb = evolve_twb(source, bath, time_gt)?;
    if time_gt == T::zero() {
        return Err(DomainError::DegenerateThreshold {
            reason: "the direct line is noiseless at zero elapsed time",
        });
    }
    let fidelity = avg_fidelity_tele(&twb, zeta)?;
    let (sa, sb) = direct_variances(zeta, bath, cst::<T>(2.0) * time_gt)?;
    let faded = -(-time_gt).exp_m1();
    let q = faded * faded;
    let root = ((sa - sb).powi(2) + fidelity.powi(-2)).sqrt();
    Ok((root - (sa + sb)) / (cst::<T>(2.0) * q))
}

/// Break-even width for pure dissipation (`n_th = n_s = 0`), where the
/// general expression collapses to
///
/// ```text
/// Δ²_th = (e^{Γt} − 1 + e^{−2λ}) / (2 e^{Γt} (1 − e^{−Γt})²).
/// ```
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
    let grown = time_gt.exp();
    let faded = -(-time_gt).exp_m1();
    Ok((grown - one + (-two * source.lambda()).exp()) / (two * grown * faded * faded))
}

/// One row of the teleport-versus-direct comparison at teleportation time
/// `Γt` (direct line evaluated at `Γt′ = 2Γt`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonPoint<T = f64> {
    /// Teleportation time `Γt`.
    pub time_gt: T,
    /// Direct-transmission time `Γt′ = 2Γt`.
    pub time_gt_prime: T,
    /// Input squeezing the comparison was evaluated at.
    pub zeta: T,
    /// Average teleportation fidelity at `Γt`.
    pub fidelity_tele: T,
    /// Average direct-transmission fidelity at `Γt′`.
    pub fidelity_dir: T,
    /// Break-even ensemble width; `+∞` when teleportation can never win
    /// (`Γt = 0`), negative when it always wins.
    pub delta_sq_threshold: T,
}

/// Compares teleportation at `Γt` against direct transmission of the same
/// ensemble over the doubled time `Γt′ = 2Γt`.
///
/// `zeta` defaults to the fidelity-optimal `ζ_max(Γt)` when `None`.
pub fn teleport_vs_direct<T: Real>(
    source: &TwbSource<T>,
    bath: &BathSpec<T>,
    ensemble: &AmplitudeEnsemble<T>,
    time_gt: T,
    zeta: Option<T>,
) -> Result<ComparisonPoint<T>, DomainError> {
    let twb = evolve_twb(source, bath, time_gt)?;
    let zeta = match zeta {
        Some(z) => z,
        None => optimal_zeta(&twb),
    };
    let time_gt_prime = cst::<T>(2.0) * time_gt;
    let fidelity_tele = avg_fidelity_tele(&twb, zeta)?;
    let fidelity_dir = avg_direct_fidelity(zeta, ensemble, bath, time_gt_prime)?;
    let delta_sq_threshold = if time_gt == T::zero() {
        T::infinity()
    } else {
        delta_threshold_with_zeta(source, bath, time_gt, zeta)?
    };
    Ok(ComparisonPoint {
        time_gt,
        time_gt_prime,
        zeta,
        fidelity_tele,
        fidelity_dir,
        delta_sq_threshold,
    })
}
