//! Twin-beam entanglement decay and continuous-variable teleportation in
//! noisy Gaussian channels, in closed form.
//!
//! The crate models a two-mode squeezed vacuum (twin beam) whose modes decay
//! in independent squeezed-thermal baths, decides when the state becomes
//! separable, and scores what the degraded state is still good for: the
//! average fidelity of teleporting an unknown displaced squeezed state, and
//! the break-even point against simply sending the state through the same
//! noisy channel.
//!
//! # Unit convention
//!
//! Phase-space variances are normalized so that the **vacuum quadrature
//! variance is 1/4**. Every closed form in this crate, every covariance
//! matrix entry, and every tolerance in the test suite uses this convention.
//! A two-mode state is separable exactly when both partial-transpose products
//! `Σ₁²Σ₄²` and `Σ₂²Σ₃²` reach the vacuum-squared floor `1/16`.
//!
//! Time enters as the dimensionless combination `Γt`. The channel rate `Γ`
//! is carried by [`BathSpec`] only so callers working in physical units can
//! convert; the library itself never needs it.
//!
//! # Scalar type
//!
//! All closed-form physics is generic over the scalar via the [`Real`] trait
//! (any `num_traits::Float` with the usual constants, so `f32` and `f64`
//! both work). Type parameters default to `f64`, which is what the numerical
//! oracles and the command-line tool use. Aliases for the `f32`
//! instantiations live at the crate root.
//!
//! # Modules
//!
//! - [`gaussian`]: single-mode Wigner Gaussians, the twin-beam source, the
//!   4×4 covariance form, and exact Gaussian overlaps.
//! - [`channel`]: squeezed-thermal bath parameters and the variance flow of
//!   twin beams and single modes under the channel.
//! - [`separability`]: partial-transpose separability test, threshold times,
//!   and the squeezing penalty on the entanglement lifetime.
//! - [`teleportation`]: the noise kernel picture of teleportation, output
//!   states, and average teleportation fidelities.
//! - [`transmission`]: direct transmission through the same channel and the
//!   teleportation-versus-direct trade-off.
//! - [`oracle`]: first-principles numerical machinery (quadrature, moment
//!   ODE, bisection) plus the verification suite pairing every closed form
//!   with an independent numerical route.
//! - [`variant_forms`]: commonly quoted variants of the few closed forms
//!   whose shipped implementations differ; see `FORMULA_NOTES.md` at the
//!   repository root.

pub mod channel;
pub mod error;
pub mod gaussian;
pub mod oracle;
mod real;
pub mod separability;
pub mod teleportation;
pub mod transmission;
pub mod variant_forms;

pub use channel::{evolve_single_mode, evolve_twb, BathSpec, EvolvedTwinBeam};
pub use error::{DomainError, OracleError};
pub use gaussian::{gaussian_overlap, CovarianceMatrix4, GaussianWigner1M, TwbSource};
pub use real::Real;
pub use separability::{is_separable, squeezing_penalty_g, threshold_time_t0, threshold_time_ts};
pub use teleportation::{
    avg_fidelity_tele, generalized_noise_kernel, max_avg_fidelity, optimal_zeta, teleport_output,
    SqueezedState, TeleportKernel,
};
pub use transmission::{
    asymptotic_g, avg_direct_fidelity, delta_threshold, delta_threshold_with_zeta, direct_fidelity,
    teleport_vs_direct, AmplitudeEnsemble, ComparisonPoint,
};

/// Single-precision aliases. The default type parameter on every generic
/// struct is `f64`, so `TwbSource` already names the double-precision type.
pub type GaussianWigner1M32 = gaussian::GaussianWigner1M<f32>;
pub type TwbSource32 = gaussian::TwbSource<f32>;
pub type BathSpec32 = channel::BathSpec<f32>;
pub type EvolvedTwinBeam32 = channel::EvolvedTwinBeam<f32>;
pub type SqueezedState32 = teleportation::SqueezedState<f32>;
