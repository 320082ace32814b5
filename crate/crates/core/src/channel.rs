//! The squeezed-thermal channel: bath parameters and the exact variance
//! flow of twin beams and single modes.
//!
//! Each mode couples at rate `Γ` to its own broadband squeezed-thermal bath
//! described by a thermal occupation `n_th ≥ 0` and a squeezing photon
//! number `n_s ≥ 0`. The bath enters the dynamics only through the
//! effective parameters
//!
//! ```text
//! N = n_th + n_s (1 + 2 n_th),          M = (1 + 2 n_th) √(n_s (1 + n_s)),
//! ```
//!
//! which obey `M ≤ √(N(N+1))` for every admissible `(n_th, n_s)`. Under the
//! channel every quadrature variance relaxes exponentially toward its
//! stationary value,
//!
//! ```text
//! v(t) = v(0) e^{−Γt} + v_∞ (1 − e^{−Γt}),     v_∞ = (1 + 2N ± 2M)/4,
//! ```
//!
//! with `+M` on the `x`-type and `−M` on the `y`-type quadratures. The
//! accumulated diffusion `D_±²(t) = (1 + 2N ± 2M)(1 − e^{−Γt})/4` is the
//! second term. Applied to the twin beam this yields the four principal
//! variances
//!
//! ```text
//! Σ₁² = σ₊² e^{−Γt} + D₊²,   Σ₂² = σ₋² e^{−Γt} + D₋²,
//! Σ₃² = σ₋² e^{−Γt} + D₊²,   Σ₄² = σ₊² e^{−Γt} + D₋².
//! ```
//!
//! A useful internal rescaling writes the dynamics in `τ = Γt/γ` with
//! `γ = (2N+1)^{−1}`; nothing in the public interface depends on it, and
//! all entry points take the dimensionless product `Γt` directly.

use crate::error::DomainError;
use crate::gaussian::{CovarianceMatrix4, GaussianWigner1M, TwbSource};
use crate::real::{cst, diag, Real};
use crate::teleportation::SqueezedState;

/// Squeezed-thermal bath attached to each mode of the channel.
///
/// `gamma_rate` is the physical coupling rate `Γ`, kept only so callers can
/// convert between physical time and the dimensionless `Γt` used everywhere
/// in this crate; it defaults to 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathSpec<T = f64> {
    n_th: T,
    n_s: T,
    gamma_rate: T,
}

impl<T: Real> BathSpec<T> {
    /// Bath with unit rate `Γ = 1`.
    pub fn new(n_th: T, n_s: T) -> Result<Self, DomainError> {
        Self::with_gamma(n_th, n_s, T::one())
    }

    pub fn with_gamma(n_th: T, n_s: T, gamma_rate: T) -> Result<Self, DomainError> {
        for (name, v) in [("n_th", n_th), ("n_s", n_s), ("gamma_rate", gamma_rate)] {
            if !v.is_finite() {
                return Err(DomainError::NonFinite {
                    name,
                    value: diag(v),
                });
            }
        }
        if n_th < T::zero() {
            return Err(DomainError::Negative {
                name: "n_th",
                value: diag(n_th),
            });
        }
        if n_s < T::zero() {
            return Err(DomainError::Negative {
                name: "n_s",
                value: diag(n_s),
            });
        }
        if gamma_rate <= T::zero() {
            return Err(DomainError::NonPositive {
                name: "gamma_rate",
                value: diag(gamma_rate),
            });
        }
        let bath = Self {
            n_th,
            n_s,
            gamma_rate,
        };
        let (n, m) = bath.effective_params();
        debug_assert!(
            m <= (n * (n + T::one())).sqrt() * (T::one() + T::epsilon() * cst(8.0)),
            "effective squeezing correlation exceeded its positivity bound"
        );
        Ok(bath)
    }

    pub fn n_th(&self) -> T {
        self.n_th
    }

    pub fn n_s(&self) -> T {
        self.n_s
    }

    pub fn gamma_rate(&self) -> T {
        self.gamma_rate
    }

    /// Effective photon number and squeezing correlation `(N, M)`.
    pub fn effective_params(&self) -> (T, T) {
        let one = T::one();
        let two = cst::<T>(2.0);
        let n = self.n_th + self.n_s * (one + two * self.n_th);
        let m = (one + two * self.n_th) * (self.n_s * (one + self.n_s)).sqrt();
        (n, m)
    }

    /// Stationary variances `(v₊, v₋) = ((1+2N+2M)/4, (1+2N−2M)/4)` toward
    /// which the `x`- and `y`-type quadratures relax.
    pub fn stationary_variances(&self) -> (T, T) {
        let (n, m) = self.effective_params();
        let two = cst::<T>(2.0);
        let four = cst::<T>(4.0);
        (
            (T::one() + two * n + two * m) / four,
            (T::one() + two * n - two * m) / four,
        )
    }

    /// Accumulated diffusion `(D₊²(t), D₋²(t))` after a dimensionless time
    /// `Γt`; grows from zero to the stationary variances.
    pub fn diffusion(&self, time_gt: T) -> Result<(T, T), DomainError> {
        check_time(time_gt, "time_gt")?;
        let filling = -(-time_gt).exp_m1();
        let (vp, vm) = self.stationary_variances();
        Ok((vp * filling, vm * filling))
    }
}

/// Twin beam after a dimensionless time `Γt` in the channel: the four
/// principal variances plus the time they belong to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolvedTwinBeam<T = f64> {
    sigma1_sq: T,
    sigma2_sq: T,
    sigma3_sq: T,
    sigma4_sq: T,
    time_gt: T,
}

impl<T: Real> EvolvedTwinBeam<T> {
    /// Assembles an evolved state from externally supplied variances. All
    /// four must be positive; `evolve_twb` is the constructor that also
    /// guarantees they came from an actual channel trajectory.
    pub fn from_variances(
        sigma1_sq: T,
        sigma2_sq: T,
        sigma3_sq: T,
        sigma4_sq: T,
        time_gt: T,
    ) -> Result<Self, DomainError> {
        for (name, v) in [
            ("sigma1_sq", sigma1_sq),
            ("sigma2_sq", sigma2_sq),
            ("sigma3_sq", sigma3_sq),
            ("sigma4_sq", sigma4_sq),
        ] {
            if !v.is_finite() {
                return Err(DomainError::NonFinite {
                    name,
                    value: diag(v),
                });
            }
            if v <= T::zero() {
                return Err(DomainError::NonPositive {
                    name,
                    value: diag(v),
                });
            }
        }
        check_time(time_gt, "time_gt")?;
        Ok(Self {
            sigma1_sq,
            sigma2_sq,
            sigma3_sq,
            sigma4_sq,
            time_gt,
        })
    }

    pub fn sigma1_sq(&self) -> T {
        self.sigma1_sq
    }

    pub fn sigma2_sq(&self) -> T {
        self.sigma2_sq
    }

    pub fn sigma3_sq(&self) -> T {
        self.sigma3_sq
    }

    pub fn sigma4_sq(&self) -> T {
        self.sigma4_sq
    }

    pub fn time_gt(&self) -> T {
        self.time_gt
    }

    /// Geometric mean `Σ₂Σ₃` controlling both the separability boundary and
    /// the optimized teleportation fidelity.
    pub fn sigma2_sigma3(&self) -> T {
        (self.sigma2_sq * self.sigma3_sq).sqrt()
    }

    /// The full 4×4 covariance matrix view of the state.
    pub fn covariance(&self) -> CovarianceMatrix4<T> {
        CovarianceMatrix4::from_sigmas(
            self.sigma1_sq,
            self.sigma2_sq,
            self.sigma3_sq,
            self.sigma4_sq,
        )
        .expect("positive variances always assemble")
    }
}

/// Exponential relaxation of one quadrature variance toward its stationary
/// value: `v₀ e^{−Γt} + v_∞ (1 − e^{−Γt})`.
///
/// This is the single primitive behind both [`evolve_twb`] and
/// [`evolve_single_mode`]; exposed so the relaxation semigroup can be tested
/// on intermediate states that are not twin beams.
pub fn relax_variance<T: Real>(v0: T, v_stationary: T, time_gt: T) -> T {
    let decay = (-time_gt).exp();
    v0 * decay + v_stationary * (T::one() - decay)
}

/// Evolves a twin beam for a dimensionless time `Γt ≥ 0`.
pub fn evolve_twb<T: Real>(
    source: &TwbSource<T>,
    bath: &BathSpec<T>,
    time_gt: T,
) -> Result<EvolvedTwinBeam<T>, DomainError> {
    check_time(time_gt, "time_gt")?;
    let (sp, sm) = source.wigner_variances();
    let (vp, vm) = bath.stationary_variances();
    Ok(EvolvedTwinBeam {
        sigma1_sq: relax_variance(sp, vp, time_gt),
        sigma2_sq: relax_variance(sm, vm, time_gt),
        sigma3_sq: relax_variance(sm, vp, time_gt),
        sigma4_sq: relax_variance(sp, vm, time_gt),
        time_gt,
    })
}

/// Sends a displaced squeezed state through the single-mode channel for a
/// dimensionless time `Γt′ ≥ 0`.
///
/// Means damp by `e^{−Γt′/2}`; variances relax toward the stationary bath
/// values, so the output is the Gaussian with
///
/// ```text
/// var_x = e^{−2ζ−Γt′}/4 + D₊²(t′),    var_y = e^{+2ζ−Γt′}/4 + D₋²(t′).
/// ```
pub fn evolve_single_mode<T: Real>(
    state: &SqueezedState<T>,
    bath: &BathSpec<T>,
    time_gt_prime: T,
) -> Result<GaussianWigner1M<T>, DomainError> {
    check_time(time_gt_prime, "time_gt_prime")?;
    let half = cst::<T>(0.5);
    let damp = (-half * time_gt_prime).exp();
    let (vx0, vy0) = state.wigner_variances();
    let (vp, vm) = bath.stationary_variances();
    GaussianWigner1M::new(
        state.mean_x() * damp,
        state.mean_y() * damp,
        relax_variance(vx0, vp, time_gt_prime),
        relax_variance(vy0, vm, time_gt_prime),
    )
}

fn check_time<T: Real>(t: T, name: &'static str) -> Result<(), DomainError> {
    if t.is_nan() {
        return Err(DomainError::NonFinite {
            name,
            value: f64::NAN,
        });
    }
    if t < T::zero() {
        return Err(DomainError::Negative {
            name,
            value: diag(t),
        });
    }
    Ok(())
}
