//! Finite-volume solvers for the relativistic isothermal Euler equations on
//! expanding and contracting cosmological backgrounds.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod driver;
pub mod io;
pub mod model;
pub mod reconstruction;
pub mod riemann;
pub mod scheme;
pub mod timestep;
pub mod wb_source;
