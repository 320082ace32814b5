//! First-principles numerical machinery that validates every closed form
//! in the crate, plus the suite that runs all pairings.
//!
//! Nothing here reuses the closed forms it checks. Overlaps and
//! teleportation outputs are integrated on tensor Gauss–Legendre grids with
//! order-doubling error estimates; ensemble averages use Gauss–Hermite
//! rules; the channel dynamics are re-derived by integrating the covariance
//! moment equation `dV/d(Γt) = −(V − V_∞)` with a fixed-step fourth-order
//! scheme; thresholds are re-found by bisection on the defining sign
//! change. The [`verify`] submodule pairs each closed form with its
//! independent route over seeded random parameter grids and reports the
//! worst deviation per pairing; the command-line `verify` subcommand is a
//! thin wrapper around it.
//!
//! Everything runs in `f64` regardless of the scalar type the closed forms
//! are instantiated at, and every reduction uses compensated summation in a
//! fixed order, so results are bit-reproducible across runs.

mod bisect;
mod hermite;
mod ode;
mod quad;
pub mod verify;

pub use bisect::find_root_bisect;
pub use hermite::{gauss_hermite, gh_avg_direct_fidelity};
pub use ode::{ode_covariance_propagate, ode_single_mode_propagate};
pub use quad::{quad_overlap, quad_teleport_convolution};
