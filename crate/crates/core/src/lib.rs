//! Finite-volume solver for the two-dimensional Euler equations of an ideal
//! gas, built around a Roe flux whose numerical viscosity can be lowered on
//! the acoustic waves, raised on the shear and entropy waves, or blended
//! between the two by a Rankine–Hugoniot shock indicator.
//!
//! ```
//! use machroe::{interface_flux, prim_to_cons, GasModel, PrimitiveState, ViscosityMode, ViscosityModel};
//!
//! let gas = GasModel::default();
//! let q = prim_to_cons(&PrimitiveState::new(1.0, 0.3, -0.2, 1.0), &gas).unwrap();
//! let model = ViscosityModel::new(ViscosityMode::BlendGeometric);
//! let f = interface_flux(&q, &q, &model, &gas).unwrap();
//! assert!((f[0] - 0.3).abs() < 1e-15);
//! ```

pub mod cases;
pub mod config;
pub mod error;
pub mod euler;
pub mod grid;
pub mod metrics;
pub mod output;
pub mod riemann;
pub mod roe;
pub mod runner;
pub mod verify;

pub use cases::{build_case, make_case, rankine_hugoniot_downstream, Quantity, TestCase};
pub use config::{parse_config, Overrides};
pub use error::{ConfigError, Error, PhysicsError};
pub use euler::{
    cons_to_prim, physical_flux_x, prim_to_cons, ConservedState, FluxVector, GasModel,
    PrimitiveState,
};
pub use grid::{BoundarySpec, Field2D, Order, RunConfig, Solver};
pub use riemann::exact_riemann;
pub use roe::{interface_flux, BetaSource, ViscosityMode, ViscosityModel};
pub use runner::{execute, sweep, Outcome, RunReport, RunRequest};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/states-and-fluxes.md")]
    mod states_and_fluxes {}
    #[doc = include_str!("../../../book/src/viscosity-models.md")]
    mod viscosity_models {}
    #[doc = include_str!("../../../book/src/shock-indicator.md")]
    mod shock_indicator {}
    #[doc = include_str!("../../../book/src/grids-and-stepping.md")]
    mod grids_and_stepping {}
    #[doc = include_str!("../../../book/src/test-cases.md")]
    mod test_cases {}
    #[doc = include_str!("../../../book/src/running-and-output.md")]
    mod running_and_output {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
