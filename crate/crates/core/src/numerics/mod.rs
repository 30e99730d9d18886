//! Scenario-independent numerical machinery.

mod field;
mod game;
mod optimize;
mod phi;
mod roots;

pub use field::{central_gradient, gradient_field, FieldSample, Region};
pub use game::{
    best_response, best_response_dynamics, stability_probe, verify_epsilon_nash, DynamicsOptions, FixedPoint, GameView,
    Stability, UtilityFn, Verification,
};
pub use optimize::{argmax_1d, argmax_2d, golden_section_max, Argmax, Argmax2d};
pub use phi::{phi, phi_inverse};
pub use roots::{bisect, solve_quadratic};

/// Default number of grid points for the coarse argmax scan.
pub const DEFAULT_GRID: usize = 2001;
