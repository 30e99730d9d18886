//! Equilibria of usage-based pricing games between an access provider (ISP)
//! and content providers (CPs).
//!
//! The crate is split in four layers:
//!
//! * [`model`]: demand response, class split, stickiness shares and the
//!   per-player revenue functions. Pure evaluations, no solving.
//! * [`numerics`]: scenario-independent machinery. `φ(x) = (1-x)e^{-x}` and
//!   its inverse, a stable quadratic solver, grid-seeded golden-section
//!   argmax, best responses and damped best-response dynamics, ε-Nash
//!   verification, the symmetric stability probe and gradient-field sampling.
//! * [`equilibria`]: closed-form solvers for each scenario, numeric oracles
//!   where no usable closed form exists, and the printed reference values
//!   used by the discrepancy report.
//! * [`harness`]: run configuration, sweeps, field dumps and reports, all
//!   written as CSV. The `usage-pricing` binary is a thin front end over it.
//!
//! All quantities use the units of [`MarketParams`]; the default
//! normalization `D0 = d = 1` makes `pmax = Umax = 1`.
//!
//! ```
//! use usage_pricing::{equilibria, MarketParams};
//!
//! let params = MarketParams::default();
//! let nep = equilibria::solve_basic_competition(&params);
//! assert!((nep.utilities[0] - 1.0 / 9.0).abs() < 1e-15);
//! ```

pub mod equilibria;
pub mod error;
pub mod harness;
pub mod model;
pub mod numerics;

pub use equilibria::{EquilibriumOutcome, Leader, Regime, Scenario, ScenarioSpec, Source, Stability};
pub use error::{Error, Result};
pub use model::{ClassParams, MarketParams, PriceName, PriceProfile, StickinessKind, Transfers};
