//! Continuous-variable teleportation through a decayed twin beam.
//!
//! The Braunstein–Kimble protocol with a twin beam that spent a time `Γt`
//! in the squeezed-thermal channel acts on input states as a Gaussian
//! displacement channel: the output Wigner function is the input convolved
//! with a zero-mean Gaussian kernel of covariance `diag(2Σ₃², 2Σ₂²)`. For a
//! displaced squeezed input with squeezing `ζ` the output moments are
//!
//! ```text
//! ⟨x⟩ = a,  ⟨y⟩ = b,
//! var_x = e^{−2ζ}/4 + 2Σ₃²,   var_y = e^{+2ζ}/4 + 2Σ₂²,
//! ```
//!
//! and the fidelity averaged over a flat distribution of displacements is
//!
//! ```text
//! F̄(ζ) = [(e^{2ζ} + 4Σ₂²)(e^{−2ζ} + 4Σ₃²)]^{−1/2}.
//! ```
//!
//! Maximizing over the input squeezing gives `ζ_max = ½ ln(Σ₂/Σ₃)` and
//!
//! ```text
//! F̄_max = 1 / (1 + 4 Σ₂ Σ₃),
//! ```
//!
//! which crosses the classical bound 1/2 exactly where the twin beam
//! becomes separable.

use crate::channel::EvolvedTwinBeam;
use crate::error::DomainError;
use crate::gaussian::GaussianWigner1M;
use crate::real::{cst, diag, Real};

/// Displaced squeezed single-mode input `|α, ζ⟩` with mean `(a, b)` and
/// real squeezing parameter `ζ` (positive squeezes `x`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezedState<T = f64> {
    mean_x: T,
    mean_y: T,
    zeta: T,
}

impl<T: Real> SqueezedState<T> {
    pub fn new(mean_x: T, mean_y: T, zeta: T) -> Result<Self, DomainError> {
        for (name, v) in [("mean_x", mean_x), ("mean_y", mean_y), ("zeta", zeta)] {
            if !v.is_finite() {
                return Err(DomainError::NonFinite {
                    name,
                    value: diag(v),
                });
            }
        }
        Ok(Self {
            mean_x,
            mean_y,
            zeta,
        })
    }

    /// Coherent state `|α⟩` (no squeezing).
    pub fn coherent(mean_x: T, mean_y: T) -> Result<Self, DomainError> {
        Self::new(mean_x, mean_y, T::zero())
    }

    pub fn mean_x(&self) -> T {
        self.mean_x
    }

    pub fn mean_y(&self) -> T {
        self.mean_y
    }

    pub fn zeta(&self) -> T {
        self.zeta
    }

    /// Quadrature variances `(e^{−2ζ}/4, e^{+2ζ}/4)`.
    pub fn wigner_variances(&self) -> (T, T) {
        let two = cst::<T>(2.0);
        let four = cst::<T>(4.0);
        (
            (-two * self.zeta).exp() / four,
            (two * self.zeta).exp() / four,
        )
    }

    /// The state as a one-mode Gaussian Wigner function.
    pub fn wigner(&self) -> GaussianWigner1M<T> {
        let (vx, vy) = self.wigner_variances();
        GaussianWigner1M::new(self.mean_x, self.mean_y, vx, vy)
            .expect("squeezed-state variances are positive")
    }
}

/// The Gaussian displacement kernel a teleportation channel convolves its
/// input with: covariance of the random displacement in the `(x, y)` plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TeleportKernel<T = f64> {
    var_re: T,
    var_im: T,
    cov_reim: T,
}

impl<T: Real> TeleportKernel<T> {
    /// Kernel of the protocol run with the given evolved twin beam:
    /// `diag(2Σ₃², 2Σ₂²)`.
    pub fn from_twb(resource: &EvolvedTwinBeam<T>) -> Self {
        let two = cst::<T>(2.0);
        Self {
            var_re: two * resource.sigma3_sq(),
            var_im: two * resource.sigma2_sq(),
            cov_reim: T::zero(),
        }
    }

    /// Kernel with an arbitrary displacement covariance matrix
    /// `[[var_re, cov_reim], [cov_reim, var_im]]`, for channels whose added
    /// noise is correlated between the quadratures.
    pub fn from_noise_covariance(var_re: T, var_im: T, cov_reim: T) -> Result<Self, DomainError> {
        for (name, v) in [
            ("var_re", var_re),
            ("var_im", var_im),
            ("cov_reim", cov_reim),
        ] {
            if !v.is_finite() {
                return Err(DomainError::NonFinite {
                    name,
                    value: diag(v),
                });
            }
        }
        if var_re <= T::zero() {
            return Err(DomainError::NonPositive {
                name: "var_re",
                value: diag(var_re),
            });
        }
        if var_im <= T::zero() {
            return Err(DomainError::NonPositive {
                name: "var_im",
                value: diag(var_im),
            });
        }
        if var_re * var_im - cov_reim * cov_reim <= T::zero() {
            return Err(DomainError::NotPositiveDefinite {
                what: "teleportation noise covariance",
            });
        }
        Ok(Self {
            var_re,
            var_im,
            cov_reim,
        })
    }

    pub fn var_re(&self) -> T {
        self.var_re
    }

    pub fn var_im(&self) -> T {
        self.var_im
    }

    pub fn cov_reim(&self) -> T {
        self.cov_reim
    }

    /// Convolves a Gaussian input with the kernel: means pass through,
    /// covariances add.
    pub fn apply(&self, input: &GaussianWigner1M<T>) -> GaussianWigner1M<T> {
        GaussianWigner1M::with_cov(
            input.mean_x(),
            input.mean_y(),
            input.var_x() + self.var_re,
            input.var_y() + self.var_im,
            input.cov_xy() + self.cov_reim,
        )
        .expect("sum of positive-definite covariances stays positive-definite")
    }
}

/// Builds the kernel of a teleportation-like channel whose added
/// displacement noise has the given 2×2 covariance matrix.
///
/// The matrix must be symmetric positive definite. A diagonal matrix with
/// entries `(2Σ₃², 2Σ₂²)` reproduces [`TeleportKernel::from_twb`].
pub fn generalized_noise_kernel<T: Real>(c: [[T; 2]; 2]) -> Result<TeleportKernel<T>, DomainError> {
    if c[0][1] != c[1][0] {
        return Err(DomainError::NotPositiveDefinite {
            what: "teleportation noise covariance",
        });
    }
    TeleportKernel::from_noise_covariance(c[0][0], c[1][1], c[0][1])
}

/// Teleports a displaced squeezed state through the evolved twin beam and
/// returns the output Wigner function.
pub fn teleport_output<T: Real>(
    input: &SqueezedState<T>,
    resource: &EvolvedTwinBeam<T>,
) -> GaussianWigner1M<T> {
    TeleportKernel::from_twb(resource).apply(&input.wigner())
}

/// Average teleportation fidelity at fixed input squeezing `ζ`, the average
/// running over a flat distribution of input displacements.
pub fn avg_fidelity_tele<T: Real>(
    resource: &EvolvedTwinBeam<T>,
    zeta: T,
) -> Result<T, DomainError> {
    if !zeta.is_finite() {
        return Err(DomainError::NonFinite {
            name: "zeta",
            value: diag(zeta),
        });
    }
    let two = cst::<T>(2.0);
    let four = cst::<T>(4.0);
    let a = (two * zeta).exp() + four * resource.sigma2_sq();
    let b = (-two * zeta).exp() + four * resource.sigma3_sq();
    Ok((a * b).sqrt().recip())
}

/// Input squeezing that maximizes the average fidelity for this resource:
/// `ζ_max = ½ ln(Σ₂/Σ₃)`.
pub fn optimal_zeta<T: Real>(resource: &EvolvedTwinBeam<T>) -> T {
    let s2 = resource.sigma2_sq();
    let s3 = resource.sigma3_sq();
    if s2 == s3 {
        return T::zero();
    }
    cst::<T>(0.25) * (s2 / s3).ln()
}

/// Average fidelity at the optimal input squeezing:
/// `F̄_max = 1/(1 + 4Σ₂Σ₃)`.
pub fn max_avg_fidelity<T: Real>(resource: &EvolvedTwinBeam<T>) -> T {
    (T::one() + cst::<T>(4.0) * resource.sigma2_sigma3()).recip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{evolve_twb, BathSpec};
    use crate::gaussian::TwbSource;
    use approx::assert_abs_diff_eq;

    fn resource(lambda: f64, n_th: f64, n_s: f64, gt: f64) -> EvolvedTwinBeam {
        evolve_twb(
            &TwbSource::new(lambda).unwrap(),
            &BathSpec::new(n_th, n_s).unwrap(),
            gt,
        )
        .unwrap()
    }

    #[test]
    fn squeezed_state_variances() {
        let s = SqueezedState::new(0.0, 0.0, 0.5).unwrap();
        let (vx, vy) = s.wigner_variances();
        assert_abs_diff_eq!(vx, 0.25 * (-1.0f64).exp(), epsilon = 1e-16);
        assert_abs_diff_eq!(vy, 0.25 * 1.0f64.exp(), epsilon = 1e-16);
        assert_abs_diff_eq!(vx * vy, 1.0 / 16.0, epsilon = 1e-17);
    }

    #[test]
    fn coherent_state_is_unsqueezed() {
        let s = SqueezedState::coherent(1.0, -2.0).unwrap();
        assert_eq!(s.zeta(), 0.0);
        assert_eq!(s.wigner_variances(), (0.25, 0.25));
    }

    #[test]
    fn kernel_from_pristine_twb_shrinks_with_lambda() {
        let mut prev = f64::INFINITY;
        for lambda in [0.2, 0.6, 1.0, 1.5] {
            let k = TeleportKernel::from_twb(&resource(lambda, 0.0, 0.0, 0.0));
            assert_eq!(k.var_re(), k.var_im());
            assert_eq!(k.cov_reim(), 0.0);
            assert!(k.var_re() < prev);
            prev = k.var_re();
        }
    }

    #[test]
    fn kernel_variance_of_pristine_twb() {
        let k = TeleportKernel::from_twb(&resource(1.0, 0.0, 0.0, 0.0));
        assert_abs_diff_eq!(k.var_re(), 0.5 * (-2.0f64).exp(), epsilon = 1e-16);
    }

    #[test]
    fn generalized_kernel_reduces_to_twb_kernel() {
        let r = resource(0.9, 0.5, 0.3, 0.4);
        let direct = TeleportKernel::from_twb(&r);
        let general =
            TeleportKernel::from_noise_covariance(2.0 * r.sigma3_sq(), 2.0 * r.sigma2_sq(), 0.0)
                .unwrap();
        assert_eq!(direct, general);
    }

    #[test]
    fn generalized_kernel_rejects_indefinite_covariance() {
        assert!(TeleportKernel::from_noise_covariance(1.0, 1.0, 1.5).is_err());
        assert!(TeleportKernel::from_noise_covariance(-1.0, 1.0, 0.0).is_err());
        assert!(TeleportKernel::from_noise_covariance(1.0, 1.0, 0.5).is_ok());
        assert!(generalized_noise_kernel([[1.0, 0.2], [0.3, 1.0]]).is_err());
    }

    #[test]
    fn generalized_kernel_matrix_entry_point() {
        let r = resource(1.1, 0.3, 0.2, 0.5);
        let from_matrix =
            generalized_noise_kernel([[2.0 * r.sigma3_sq(), 0.0], [0.0, 2.0 * r.sigma2_sq()]])
                .unwrap();
        assert_eq!(from_matrix, TeleportKernel::from_twb(&r));
    }

    #[test]
    fn near_zero_kernel_approaches_the_identity_map() {
        let input = SqueezedState::new(0.4, 1.1, -0.2).unwrap();
        let k = generalized_noise_kernel([[1e-150, 0.0], [0.0, 1e-150]]).unwrap();
        let out = k.apply(&input.wigner());
        let (vx, vy) = input.wigner_variances();
        assert_abs_diff_eq!(out.var_x(), vx, epsilon = 1e-140);
        assert_abs_diff_eq!(out.var_y(), vy, epsilon = 1e-140);
        assert_eq!(out.mean_x(), 0.4);
        assert_eq!(out.mean_y(), 1.1);
    }

    #[test]
    fn teleport_preserves_means_and_adds_noise() {
        let input = SqueezedState::new(1.5, -0.7, 0.3).unwrap();
        let r = resource(1.0, 0.5, 0.3, 0.2);
        let out = teleport_output(&input, &r);
        let (vx, vy) = input.wigner_variances();
        assert_eq!(out.mean_x(), 1.5);
        assert_eq!(out.mean_y(), -0.7);
        assert_abs_diff_eq!(out.var_x(), vx + 2.0 * r.sigma3_sq(), epsilon = 1e-16);
        assert_abs_diff_eq!(out.var_y(), vy + 2.0 * r.sigma2_sq(), epsilon = 1e-16);
        assert_eq!(out.cov_xy(), 0.0);
    }

    #[test]
    fn coherent_fidelity_of_pristine_twb() {
        // F̄(ζ=0, Γt=0) = 1/(1 + e^{−2λ}).
        for lambda in [0.3, 1.0, 1.5] {
            let f = avg_fidelity_tele(&resource(lambda, 0.5, 0.3, 0.0), 0.0).unwrap();
            assert_abs_diff_eq!(f, 1.0 / (1.0 + (-2.0 * lambda).exp()), epsilon = 1e-15);
        }
    }

    #[test]
    fn coherent_fidelity_at_lambda_1p5() {
        let f = avg_fidelity_tele(&resource(1.5, 0.5, 0.0, 0.0), 0.0).unwrap();
        assert_abs_diff_eq!(f, 0.9525741268224331, epsilon = 1e-15);
    }

    #[test]
    fn no_resource_squeezing_gives_classical_half() {
        // λ = 0 at t = 0: Σ₂² = Σ₃² = 1/4, so F̄(0) = 1/2 exactly.
        let f = avg_fidelity_tele(&resource(0.0, 0.5, 0.3, 0.0), 0.0).unwrap();
        assert_abs_diff_eq!(f, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn optimal_zeta_is_zero_without_bath_squeezing() {
        for gt in [0.0, 0.3, 1.0, 4.0] {
            let z = optimal_zeta(&resource(1.0, 0.5, 0.0, gt));
            assert_eq!(z, 0.0);
        }
    }

    #[test]
    fn optimal_zeta_beats_a_zeta_scan() {
        let r = resource(1.2, 0.5, 0.3, 0.6);
        let best = avg_fidelity_tele(&r, optimal_zeta(&r)).unwrap();
        for i in 0..=100 {
            let zeta = -2.0 + 4.0 * i as f64 / 100.0;
            assert!(best >= avg_fidelity_tele(&r, zeta).unwrap() - 1e-15);
        }
    }

    #[test]
    fn max_fidelity_agrees_with_fidelity_at_optimal_zeta() {
        for (lambda, n_th, n_s, gt) in [
            (0.5, 0.1, 0.0, 0.3),
            (1.0, 0.5, 0.3, 0.7),
            (1.5, 1.0, 0.7, 1.5),
            (0.2, 0.0, 0.0, 0.0),
        ] {
            let r = resource(lambda, n_th, n_s, gt);
            let via_zeta = avg_fidelity_tele(&r, optimal_zeta(&r)).unwrap();
            assert_abs_diff_eq!(max_avg_fidelity(&r), via_zeta, epsilon = 1e-14);
        }
    }

    #[test]
    fn fidelity_decays_toward_thermal_limit() {
        // F̄ → 1/(2(1+n_th)) as Γt → ∞, independent of λ and n_s.
        for (n_th, n_s) in [(0.0, 0.0), (0.3, 0.0), (0.5, 0.3), (1.0, 0.7)] {
            let r = resource(1.5, n_th, n_s, 60.0);
            let f = avg_fidelity_tele(&r, optimal_zeta(&r)).unwrap();
            assert_abs_diff_eq!(f, 0.5 / (1.0 + n_th), epsilon = 1e-10);
        }
    }

    #[test]
    fn fidelity_is_the_overlap_of_input_and_output() {
        use crate::gaussian::gaussian_overlap;
        for (lambda, n_th, n_s, gt, zeta) in [
            (0.5, 0.1, 0.0, 0.3, 0.0),
            (1.0, 0.5, 0.3, 0.7, 0.4),
            (1.5, 1.0, 0.7, 1.5, -0.8),
        ] {
            let r = resource(lambda, n_th, n_s, gt);
            let input = SqueezedState::new(0.9, -1.7, zeta).unwrap();
            let overlap = gaussian_overlap(&input.wigner(), &teleport_output(&input, &r)).unwrap();
            let closed = avg_fidelity_tele(&r, zeta).unwrap();
            assert_abs_diff_eq!(overlap, closed, epsilon = 1e-14);
        }
    }

    #[test]
    fn optimal_zeta_for_a_fourfold_variance_ratio() {
        // Σ₂ = 4Σ₃ gives ζ_max = ½ ln 4 = ln 2.
        let r = EvolvedTwinBeam::from_variances(1.0, 1.6, 0.1, 1.0, 0.0).unwrap();
        assert_abs_diff_eq!(optimal_zeta(&r), 2.0f64.ln(), epsilon = 1e-15);
    }

    #[test]
    fn squeezed_input_beats_coherent_input_under_a_squeezed_bath() {
        let r = resource(1.5, 0.5, 0.3, 0.2);
        let coherent = avg_fidelity_tele(&r, 0.0).unwrap();
        let squeezed = avg_fidelity_tele(&r, optimal_zeta(&r)).unwrap();
        assert!(squeezed > coherent);
    }

    #[test]
    fn fidelity_rejects_nonfinite_zeta() {
        let r = resource(1.0, 0.5, 0.0, 0.5);
        assert!(avg_fidelity_tele(&r, f64::NAN).is_err());
        assert!(avg_fidelity_tele(&r, f64::INFINITY).is_err());
    }
}
