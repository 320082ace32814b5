//! Phase-space Gaussians: single-mode Wigner functions, the twin-beam
//! source, the two-mode covariance form, and exact Gaussian overlaps.
//!
//! A single mode lives in quadrature coordinates `(x, y)` with vacuum
//! variance 1/4. The twin beam produced by a source with squeezing `λ ≥ 0`
//! is Gaussian in the sum/difference coordinates with
//!
//! ```text
//! σ₊² = e^{+2λ}/4,    σ₋² = e^{−2λ}/4,    σ₊²σ₋² = 1/16.
//! ```
//!
//! Overlaps are the phase-space transcription of `Tr[ρ_A ρ_B]`: for two
//! Wigner functions `π ∫ W_A W_B d²w`, which for Gaussians collapses to an
//! explicit expression in the summed covariances.

use crate::error::DomainError;
use crate::real::{cst, diag, Real};

/// A normalized single-mode Gaussian Wigner function.
///
/// Stores first and second moments: means of the two quadratures, their
/// variances, and the cross covariance. The cross term exists so numerical
/// oracles can exercise general Gaussians; every closed form in the physics
/// modules produces axis-aligned states (`cov_xy = 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianWigner1M<T = f64> {
    mean_x: T,
    mean_y: T,
    var_x: T,
    var_y: T,
    cov_xy: T,
}

impl<T: Real> GaussianWigner1M<T> {
    /// Axis-aligned Gaussian. Variances must be positive and finite.
    pub fn new(mean_x: T, mean_y: T, var_x: T, var_y: T) -> Result<Self, DomainError> {
        Self::with_cov(mean_x, mean_y, var_x, var_y, T::zero())
    }

    /// General Gaussian with a cross-quadrature covariance term.
    pub fn with_cov(
        mean_x: T,
        mean_y: T,
        var_x: T,
        var_y: T,
        cov_xy: T,
    ) -> Result<Self, DomainError> {
        for (name, v) in [
            ("mean_x", mean_x),
            ("mean_y", mean_y),
            ("var_x", var_x),
            ("var_y", var_y),
            ("cov_xy", cov_xy),
        ] {
            if !v.is_finite() {
                return Err(DomainError::NonFinite {
                    name,
                    value: diag(v),
                });
            }
        }
        if var_x <= T::zero() {
            return Err(DomainError::NonPositive {
                name: "var_x",
                value: diag(var_x),
            });
        }
        if var_y <= T::zero() {
            return Err(DomainError::NonPositive {
                name: "var_y",
                value: diag(var_y),
            });
        }
        if var_x * var_y - cov_xy * cov_xy <= T::zero() {
            return Err(DomainError::NotPositiveDefinite {
                what: "single-mode covariance",
            });
        }
        Ok(Self {
            mean_x,
            mean_y,
            var_x,
            var_y,
            cov_xy,
        })
    }

    /// The vacuum state: zero means, both variances 1/4.
    pub fn vacuum() -> Self {
        Self {
            mean_x: T::zero(),
            mean_y: T::zero(),
            var_x: cst(0.25),
            var_y: cst(0.25),
            cov_xy: T::zero(),
        }
    }

    pub fn mean_x(&self) -> T {
        self.mean_x
    }

    pub fn mean_y(&self) -> T {
        self.mean_y
    }

    pub fn var_x(&self) -> T {
        self.var_x
    }

    pub fn var_y(&self) -> T {
        self.var_y
    }

    pub fn cov_xy(&self) -> T {
        self.cov_xy
    }

    /// Determinant of the 2×2 covariance block.
    pub fn det(&self) -> T {
        self.var_x * self.var_y - self.cov_xy * self.cov_xy
    }

    /// Value of the normalized density at `(x, y)`.
    pub fn density(&self, x: T, y: T) -> T {
        let dx = x - self.mean_x;
        let dy = y - self.mean_y;
        let det = self.det();
        let quad = (self.var_y * dx * dx - cst::<T>(2.0) * self.cov_xy * dx * dy
            + self.var_x * dy * dy)
            / det;
        (-quad / cst::<T>(2.0)).exp() / (cst::<T>(2.0) * T::PI() * det.sqrt())
    }

    pub(crate) fn from_moments_unchecked(
        mean_x: T,
        mean_y: T,
        var_x: T,
        var_y: T,
        cov_xy: T,
    ) -> Self {
        Self {
            mean_x,
            mean_y,
            var_x,
            var_y,
            cov_xy,
        }
    }
}

/// Twin-beam source, parameterized by the squeezing parameter `λ ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwbSource<T = f64> {
    lambda: T,
}

impl<T: Real> TwbSource<T> {
    pub fn new(lambda: T) -> Result<Self, DomainError> {
        if !lambda.is_finite() {
            return Err(DomainError::NonFinite {
                name: "lambda",
                value: diag(lambda),
            });
        }
        if lambda < T::zero() {
            return Err(DomainError::Negative {
                name: "lambda",
                value: diag(lambda),
            });
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    /// Photon-number-expansion parameter `x = tanh λ`, in `[0, 1)`.
    pub fn tanh_parameter(&self) -> T {
        self.lambda.tanh()
    }

    /// Principal Wigner variances `(σ₊², σ₋²)` of the sum/difference
    /// quadratures. Their product is 1/16 up to rounding.
    pub fn wigner_variances(&self) -> (T, T) {
        let two = cst::<T>(2.0);
        let four = cst::<T>(4.0);
        (
            (two * self.lambda).exp() / four,
            (-two * self.lambda).exp() / four,
        )
    }
}

/// 4×4 covariance matrix of a two-mode Gaussian state in the quadrature
/// ordering `(x₁, y₁, x₂, y₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix4<T = f64> {
    entries: [[T; 4]; 4],
}

impl<T: Real> CovarianceMatrix4<T> {
    /// Builds the covariance matrix of an (evolved) twin beam from its four
    /// principal variances:
    ///
    /// ```text
    ///      ½(Σ₁²+Σ₃²)      0        ½(Σ₁²−Σ₃²)      0
    ///          0       ½(Σ₂²+Σ₄²)       0       ½(Σ₂²−Σ₄²)
    ///      ½(Σ₁²−Σ₃²)      0        ½(Σ₁²+Σ₃²)      0
    ///          0       ½(Σ₂²−Σ₄²)       0       ½(Σ₂²+Σ₄²)
    /// ```
    pub fn from_sigmas(
        sigma1_sq: T,
        sigma2_sq: T,
        sigma3_sq: T,
        sigma4_sq: T,
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
        let half = cst::<T>(0.5);
        let z = T::zero();
        let xd = half * (sigma1_sq + sigma3_sq);
        let xo = half * (sigma1_sq - sigma3_sq);
        let yd = half * (sigma2_sq + sigma4_sq);
        let yo = half * (sigma2_sq - sigma4_sq);
        Ok(Self {
            entries: [
                [xd, z, xo, z],
                [z, yd, z, yo],
                [xo, z, xd, z],
                [z, yo, z, yd],
            ],
        })
    }

    /// Validates a general symmetric positive definite 4×4 matrix.
    pub fn try_new(entries: [[T; 4]; 4]) -> Result<Self, DomainError> {
        for (i, row) in entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() || (v - entries[j][i]).abs() > T::epsilon() * cst(16.0) {
                    return Err(DomainError::NotPositiveDefinite {
                        what: "two-mode covariance",
                    });
                }
            }
        }
        if !cholesky_is_pd(&entries) {
            return Err(DomainError::NotPositiveDefinite {
                what: "two-mode covariance",
            });
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[[T; 4]; 4] {
        &self.entries
    }

    /// Reads the four principal variances back out of the matrix, inverting
    /// the half-sum/half-difference construction (exact up to rounding).
    pub fn sigma_sqs(&self) -> (T, T, T, T) {
        let e = &self.entries;
        (
            e[0][0] + e[0][2],
            e[1][1] + e[1][3],
            e[0][0] - e[0][2],
            e[1][1] - e[1][3],
        )
    }
}

fn cholesky_is_pd<T: Real>(m: &[[T; 4]; 4]) -> bool {
    let mut l = [[T::zero(); 4]; 4];
    for i in 0..4 {
        for j in 0..=i {
            let mut s = m[i][j];
            for (&a, &b) in l[i][..j].iter().zip(&l[j][..j]) {
                s = s - a * b;
            }
            if i == j {
                if s <= T::zero() {
                    return false;
                }
                l[i][j] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    true
}

/// Overlap of two single-mode Gaussian Wigner functions, `π ∫ W_A W_B d²w`.
///
/// For Wigner functions of physical states this is `Tr[ρ_A ρ_B]`, which lies
/// in `(0, 1]`; the formula itself is defined for any pair of Gaussians and
/// exceeds 1 when handed sub-vacuum variances that no state can have.
pub fn gaussian_overlap<T: Real>(
    a: &GaussianWigner1M<T>,
    b: &GaussianWigner1M<T>,
) -> Result<T, DomainError> {
    let sxx = a.var_x() + b.var_x();
    let syy = a.var_y() + b.var_y();
    let sxy = a.cov_xy() + b.cov_xy();
    let det = sxx * syy - sxy * sxy;
    if det <= T::zero() {
        return Err(DomainError::NotPositiveDefinite {
            what: "summed covariance",
        });
    }
    let dx = a.mean_x() - b.mean_x();
    let dy = a.mean_y() - b.mean_y();
    let quad = (syy * dx * dx - cst::<T>(2.0) * sxy * dx * dy + sxx * dy * dy) / det;
    Ok((-quad / cst::<T>(2.0)).exp() / (cst::<T>(2.0) * det.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TwbSource32;
    use approx::assert_abs_diff_eq;

    #[test]
    fn twb_variances_at_zero_squeezing_are_vacuum() {
        let src = TwbSource::new(0.0).unwrap();
        assert_eq!(src.wigner_variances(), (0.25, 0.25));
        assert_eq!(src.tanh_parameter(), 0.0);
    }

    #[test]
    fn twb_variances_at_unit_squeezing() {
        let (p, m) = TwbSource::new(1.0).unwrap().wigner_variances();
        assert_abs_diff_eq!(p, 1.8472640247326626, epsilon = 1e-15);
        assert_abs_diff_eq!(m, 0.033833820809153176, epsilon = 1e-17);
    }

    #[test]
    fn twb_variance_product_is_vacuum_squared() {
        for i in 0..=60 {
            let lambda = 0.05 * i as f64;
            let (p, m) = TwbSource::new(lambda).unwrap().wigner_variances();
            assert_abs_diff_eq!(p * m, 1.0 / 16.0, epsilon = 4e-17);
        }
    }

    #[test]
    fn twb_tanh_parameter_stays_in_unit_interval() {
        for i in 0..=50 {
            let x = TwbSource::new(0.2 * i as f64).unwrap().tanh_parameter();
            assert!((0.0..1.0).contains(&x));
        }
    }

    #[test]
    fn twb_rejects_negative_and_non_finite_squeezing() {
        assert!(matches!(
            TwbSource::new(-0.1),
            Err(DomainError::Negative { .. })
        ));
        assert!(TwbSource::new(f64::NAN).is_err());
    }

    #[test]
    fn overlap_of_vacuum_with_itself_is_one() {
        let v = GaussianWigner1M::<f64>::vacuum();
        assert_abs_diff_eq!(gaussian_overlap(&v, &v).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn overlap_of_displaced_vacua_decays_as_exp_of_distance_squared() {
        let v = GaussianWigner1M::<f64>::vacuum();
        let d = GaussianWigner1M::new(2.0, 0.0, 0.25, 0.25).unwrap();
        assert_abs_diff_eq!(
            gaussian_overlap(&v, &d).unwrap(),
            0.01831563888873418,
            epsilon = 1e-16
        );
    }

    #[test]
    fn overlap_of_vacuum_with_unit_thermal_state_is_half() {
        // Thermal state with mean photon number 1 has variance (2n+1)/4 = 3/4.
        let v = GaussianWigner1M::<f64>::vacuum();
        let th = GaussianWigner1M::new(0.0, 0.0, 0.75, 0.75).unwrap();
        assert_abs_diff_eq!(gaussian_overlap(&v, &th).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn overlap_is_symmetric_and_within_state_bounds() {
        let mut s = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..500 {
            let mk = |m1: f64, m2: f64, v1: f64, v2: f64, c: f64| {
                GaussianWigner1M::with_cov(m1, m2, v1, v2, c).unwrap()
            };
            let (v1, v2) = (0.25 + 3.0 * next(), 0.25 + 3.0 * next());
            let c = (next() - 0.5) * 0.8 * (v1 * v2).sqrt();
            let a = mk(4.0 * next() - 2.0, 4.0 * next() - 2.0, v1, v2, c);
            let (w1, w2) = (0.25 + 3.0 * next(), 0.25 + 3.0 * next());
            let b = mk(4.0 * next() - 2.0, 4.0 * next() - 2.0, w1, w2, 0.0);
            let ab = gaussian_overlap(&a, &b).unwrap();
            let ba = gaussian_overlap(&b, &a).unwrap();
            assert_eq!(ab, ba);
            assert!(ab > 0.0 && ab <= 1.0);
        }
    }

    #[test]
    fn covariance_of_fresh_twin_beam_has_known_entries() {
        let (p, m) = TwbSource::new(1.0).unwrap().wigner_variances();
        let v = CovarianceMatrix4::from_sigmas(p, m, m, p).unwrap();
        let e = v.entries();
        // Diagonal cosh(2λ)/4, off-diagonal ±sinh(2λ)/4.
        assert_abs_diff_eq!(e[0][0], 0.9405489227709078, epsilon = 1e-15);
        assert_abs_diff_eq!(e[0][2], 0.9067151019617548, epsilon = 1e-15);
        assert_abs_diff_eq!(e[1][3], -0.9067151019617548, epsilon = 1e-15);
        assert_eq!(e[0][1], 0.0);
        for (i, row) in e.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, e[j][i]);
            }
        }
    }

    #[test]
    fn covariance_of_vacuum_pair_is_identity_over_four() {
        let v = CovarianceMatrix4::from_sigmas(0.25, 0.25, 0.25, 0.25).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { 0.25 } else { 0.0 };
                assert_eq!(v.entries()[i][j], want);
            }
        }
    }

    #[test]
    fn covariance_round_trips_the_principal_variances() {
        let mut s = 0x243f6a8885a308d3u64;
        let mut next = move || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            0.01 + 4.0 * ((s >> 11) as f64 / (1u64 << 53) as f64)
        };
        for _ in 0..500 {
            let (s1, s2, s3, s4) = (next(), next(), next(), next());
            let v = CovarianceMatrix4::from_sigmas(s1, s2, s3, s4).unwrap();
            let (r1, r2, r3, r4) = v.sigma_sqs();
            assert_abs_diff_eq!(r1, s1, epsilon = 1e-14);
            assert_abs_diff_eq!(r2, s2, epsilon = 1e-14);
            assert_abs_diff_eq!(r3, s3, epsilon = 1e-14);
            assert_abs_diff_eq!(r4, s4, epsilon = 1e-14);
        }
    }

    #[test]
    fn covariance_construction_is_positive_definite() {
        let v = CovarianceMatrix4::from_sigmas(1.8, 0.05, 0.6, 0.3).unwrap();
        assert!(CovarianceMatrix4::try_new(*v.entries()).is_ok());
    }

    #[test]
    fn covariance_rejects_non_positive_variances() {
        assert!(CovarianceMatrix4::from_sigmas(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(CovarianceMatrix4::from_sigmas(1.0, -0.2, 1.0, 1.0).is_err());
    }

    #[test]
    fn try_new_rejects_asymmetric_and_indefinite_matrices() {
        let mut m = [[0.0f64; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 0.25;
        }
        m[0][2] = 0.3; // breaks both symmetry and positivity checks below
        assert!(CovarianceMatrix4::try_new(m).is_err());
        m[2][0] = 0.3; // symmetric again, but 0.3 > 0.25 makes the x-block indefinite
        assert!(CovarianceMatrix4::try_new(m).is_err());
    }

    #[test]
    fn wigner_rejects_degenerate_covariances() {
        assert!(GaussianWigner1M::new(0.0, 0.0, 0.0, 0.25).is_err());
        assert!(GaussianWigner1M::with_cov(0.0, 0.0, 0.25, 0.25, 0.26).is_err());
        assert!(GaussianWigner1M::new(f64::INFINITY, 0.0, 0.25, 0.25).is_err());
    }

    #[test]
    fn density_peaks_at_the_mean() {
        let g: GaussianWigner1M = GaussianWigner1M::with_cov(0.3, -0.7, 0.4, 0.9, 0.2).unwrap();
        let peak = g.density(0.3, -0.7);
        assert_abs_diff_eq!(
            peak,
            1.0 / (2.0 * std::f64::consts::PI * g.det().sqrt()),
            epsilon = 1e-15
        );
        assert!(g.density(0.5, -0.7) < peak);
    }

    #[test]
    fn single_precision_instantiation_matches_double_to_f32_accuracy() {
        let (p32, m32) = TwbSource32::new(1.0f32).unwrap().wigner_variances();
        assert!((p32 - 1.847264f32).abs() < 1e-6);
        assert!((m32 - 0.03383382f32).abs() < 1e-8);
    }
}
