//! Time-step selection and explicit Runge-Kutta integrators for the
//! semi-discrete system.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{Cons2D, Dim, Expansion, GridState, ModelError, TimeRegime};
use crate::scheme::SemiDiscrete;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("cell {cell}: primitive recovery failed at t = {t}: {source}")]
    StateRecovery {
        cell: usize,
        t: f64,
        #[source]
        source: ModelError,
    },
    #[error("cell {cell}: non-finite {quantity} at t = {t}")]
    NonFinite { cell: usize, t: f64, quantity: &'static str },
    #[error("background source undefined at t = {t}: {source}")]
    Geometry {
        t: f64,
        #[source]
        source: ModelError,
    },
    #[error("no wave speed and no active source at t = {t}; the time step is undefined")]
    StaticVacuum { t: f64 },
    #[error("invalid step control: {0}")]
    InvalidControl(String),
}

/// Time-step limits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepControl {
    /// Courant number.
    pub cfl: f64,
    /// In contracting runs `dt ≤ c_t |t|`.
    pub c_t: f64,
    pub dt_floor: f64,
    pub dt_cap: f64,
    pub t_end: f64,
    /// Permit `cfl ≥ 1/2`.
    pub allow_cfl_above_half: bool,
}

pub const DEFAULT_C_T: f64 = 0.5;

impl StepControl {
    pub fn new(cfl: f64, t_end: f64) -> Self {
        Self { cfl, c_t: DEFAULT_C_T, dt_floor: 0.0, dt_cap: f64::INFINITY, t_end, allow_cfl_above_half: false }
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |m: String| Err(SolverError::InvalidControl(m));
        if !(self.cfl > 0.0 && self.cfl.is_finite()) {
            return bad(format!("cfl = {} must be positive", self.cfl));
        }
        if self.cfl >= 0.5 && !self.allow_cfl_above_half {
            return bad(format!("cfl = {} is not below 1/2; set allow_cfl_above_half to permit it", self.cfl));
        }
        if !(self.c_t > 0.0 && self.c_t < 1.0) {
            return bad(format!("c_t = {} must lie in (0, 1)", self.c_t));
        }
        if !(self.dt_floor >= 0.0) || !(self.dt_cap > 0.0) || self.dt_floor > self.dt_cap {
            return bad(format!("dt_floor = {} / dt_cap = {} are inconsistent", self.dt_floor, self.dt_cap));
        }
        Ok(())
    }
}

/// `dt = cfl · min(Δx/sx, Δy/sy)`, then the contracting guard, `dt_cap` and the
/// clamp to `t_end`. `dt_floor` only applies when it does not overshoot `t_end`.
pub fn compute_dt(grid: &GridState, ctrl: &StepControl, op: &SemiDiscrete) -> Result<f64, SolverError> {
    let prims = op.primitives(&grid.cells, grid.t)?;
    let (sx, sy) = op.max_speeds(&prims);
    let m = grid.mesh;
    let mut dt = f64::INFINITY;
    if sx > 0.0 {
        dt = dt.min(ctrl.cfl * m.dx() / sx);
    }
    if m.dim() == Dim::Two && sy > 0.0 {
        dt = dt.min(ctrl.cfl * m.dy() / sy);
    }
    if !dt.is_finite() {
        return Err(SolverError::StaticVacuum { t: grid.t });
    }
    dt = dt.max(ctrl.dt_floor).min(ctrl.dt_cap);
    if op.geometry().expansion == Expansion::PowerLaw && TimeRegime::of(grid.t) == TimeRegime::Contracting {
        dt = dt.min(ctrl.c_t * grid.t.abs());
    }
    Ok(dt.min(ctrl.t_end - grid.t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Integrator {
    ForwardEuler,
    /// Classical four-stage fourth-order Runge-Kutta.
    Rk4,
    /// Three-stage third-order strong-stability-preserving Runge-Kutta.
    SspRk3,
}

impl Integrator {
    pub fn name(self) -> &'static str {
        match self {
            Integrator::ForwardEuler => "euler",
            Integrator::Rk4 => "rk4",
            Integrator::SspRk3 => "ssprk3",
        }
    }

    pub fn step(self, grid: &GridState, dt: f64, op: &SemiDiscrete) -> Result<GridState, SolverError> {
        match self {
            Integrator::ForwardEuler => step_forward_euler(grid, dt, op),
            Integrator::Rk4 => step_rk4(grid, dt, op),
            Integrator::SspRk3 => step_ssprk3(grid, dt, op),
        }
    }
}

impl fmt::Display for Integrator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Integrator {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euler" | "forward_euler" => Ok(Integrator::ForwardEuler),
            "rk4" => Ok(Integrator::Rk4),
            "ssprk3" | "ssp_rk3" => Ok(Integrator::SspRk3),
            _ => Err(format!("unknown integrator '{s}' (expected euler, rk4 or ssprk3)")),
        }
    }
}

/// `a + dt·b`
fn axpy(a: &[Cons2D], dt: f64, b: &[Cons2D]) -> Vec<Cons2D> {
    a.iter().zip(b).map(|(x, y)| *x + *y * dt).collect()
}

fn finish(grid: &GridState, cells: Vec<Cons2D>, t: f64, op: &SemiDiscrete) -> Result<GridState, SolverError> {
    for (cell, c) in cells.iter().enumerate() {
        if !c.is_finite() {
            return Err(SolverError::NonFinite { cell, t, quantity: "conservative state" });
        }
    }
    op.primitives(&cells, t)?;
    Ok(GridState { mesh: grid.mesh, t, cells })
}

pub fn step_forward_euler(grid: &GridState, dt: f64, op: &SemiDiscrete) -> Result<GridState, SolverError> {
    let k = op.rhs(&grid.cells, grid.t)?;
    finish(grid, axpy(&grid.cells, dt, &k), grid.t + dt, op)
}

pub fn step_rk4(grid: &GridState, dt: f64, op: &SemiDiscrete) -> Result<GridState, SolverError> {
    let (u, t) = (&grid.cells, grid.t);
    let half = 0.5 * dt;
    let k1 = op.rhs(u, t)?;
    let k2 = op.rhs(&axpy(u, half, &k1), t + half)?;
    let k3 = op.rhs(&axpy(u, half, &k2), t + half)?;
    let k4 = op.rhs(&axpy(u, dt, &k3), t + dt)?;
    let sixth = dt / 6.0;
    let cells = (0..u.len()).map(|i| u[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * sixth).collect();
    finish(grid, cells, t + dt, op)
}

pub fn step_ssprk3(grid: &GridState, dt: f64, op: &SemiDiscrete) -> Result<GridState, SolverError> {
    let (u, t) = (&grid.cells, grid.t);
    let u1 = axpy(u, dt, &op.rhs(u, t)?);
    let l1 = op.rhs(&u1, t + dt)?;
    let u2: Vec<Cons2D> = (0..u.len()).map(|i| u[i] * 0.75 + (u1[i] + l1[i] * dt) * 0.25).collect();
    let l2 = op.rhs(&u2, t + 0.5 * dt)?;
    let cells = (0..u.len()).map(|i| u[i] * (1.0 / 3.0) + (u2[i] + l2[i] * dt) * (2.0 / 3.0)).collect();
    finish(grid, cells, t + dt, op)
}
