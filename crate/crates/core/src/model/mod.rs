//! Governing equations: parameters, background geometry, state variables,
//! exact fluxes and sources, and the periodic grid container.

mod geometry;
mod grid;
mod params;
mod state;

use thiserror::Error;

pub use geometry::{Expansion, GeometryProfile, SpatialProfile, TimeRegime};
pub use grid::{Dim, GridState, Mesh};
pub use params::FluidParams;
pub use state::{
    cons_to_prim_1d, cons_to_prim_2d, eigenvalues, exact_source_1d, exact_source_2d, flux_1d, flux_1d_prim, flux_2d_x,
    flux_2d_x_prim, flux_2d_y, flux_2d_y_prim, prim_to_cons_1d, prim_to_cons_2d, Cons1D, Cons2D, Flux1D, Flux2D,
    Prim1D, Prim2D, Source1D, Source2D, DISCRIMINANT_TOL,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter { name: &'static str, value: f64, reason: &'static str },
    #[error("negative or non-finite density {rho}")]
    NegativeDensity { rho: f64 },
    #[error("speed {speed} is not below the light speed {light_speed}")]
    Superluminal { speed: f64, light_speed: f64 },
    #[error("momentum/energy ratio {ratio} has no admissible velocity (discriminant {discriminant})")]
    NonInvertible { ratio: f64, discriminant: f64 },
    #[error("conservative state has non-finite components")]
    NonFinite,
    #[error("background is singular at t = {t}")]
    SingularTime { t: f64 },
}
