//! Time loop, snapshot scheduling and run bookkeeping.

use thiserror::Error;

use crate::model::{Expansion, FluidParams, GeometryProfile, GridState, Mesh, ModelError, Prim2D};
use crate::scheme::{SchemeOptions, SemiDiscrete};
use crate::timestep::{compute_dt, Integrator, SolverError, StepControl};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("invalid run specification: {0}")]
    InvalidSpec(String),
    #[error("initial data, cell {cell}: {source}")]
    InitialData {
        cell: usize,
        #[source]
        source: ModelError,
    },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("output: {0}")]
    Sink(String),
}

/// Everything needed to run one simulation.
#[derive(Debug, Clone)]
pub struct RunSpec {
    pub mesh: Mesh,
    pub params: FluidParams,
    pub geom: GeometryProfile,
    pub scheme: SchemeOptions,
    pub integrator: Integrator,
    /// CFL, guards and the final time `t_end`.
    pub control: StepControl,
    pub t0: f64,
    /// Requested snapshot times, each in `(t0, t_end]`.
    pub snapshot_times: Vec<f64>,
    /// Primitive initial data in mesh storage order.
    pub initial: Vec<Prim2D>,
}

impl RunSpec {
    pub fn t_end(&self) -> f64 {
        self.control.t_end
    }

    pub fn validate(&self) -> Result<(), RunError> {
        let bad = |m: String| Err(RunError::InvalidSpec(m));
        self.control.validate()?;
        let (t0, t_end) = (self.t0, self.t_end());
        if !t0.is_finite() || !t_end.is_finite() {
            return bad(format!("times must be finite (t0 = {t0}, t_end = {t_end})"));
        }
        if t0 == 0.0 && self.geom.expansion != Expansion::Static {
            return bad("t0 = 0 is the background singularity".into());
        }
        if t_end < t0 {
            return bad(format!("t_end = {t_end} is before t0 = {t0}"));
        }
        if t0 < 0.0 && t_end >= 0.0 {
            return bad(format!("a contracting run must stop before t = 0 (t_end = {t_end})"));
        }
        for &s in &self.snapshot_times {
            if !(s > t0 && s <= t_end) {
                return bad(format!("snapshot time {s} is outside ({t0}, {t_end}]"));
            }
        }
        if self.initial.len() != self.mesh.len() {
            return bad(format!("initial data has {} cells, mesh has {}", self.initial.len(), self.mesh.len()));
        }
        Ok(())
    }

    pub fn operator(&self) -> SemiDiscrete {
        SemiDiscrete::new(self.mesh, self.params, self.geom, self.scheme)
    }
}

/// State emitted at the first step time not earlier than `requested`.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub requested: f64,
    pub state: GridState,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub initial: GridState,
    pub snapshots: Vec<Snapshot>,
    pub final_state: GridState,
    pub steps: usize,
}

/// Callbacks invoked during a run.
pub trait RunObserver {
    fn on_step(&mut self, _state: &GridState, _dt: f64) -> Result<(), String> {
        Ok(())
    }

    fn on_snapshot(&mut self, _snapshot: &Snapshot) -> Result<(), String> {
        Ok(())
    }
}

struct Silent;

impl RunObserver for Silent {}

pub fn run(spec: &RunSpec) -> Result<RunResult, RunError> {
    run_observed(spec, &mut Silent)
}

pub fn run_observed(spec: &RunSpec, observer: &mut dyn RunObserver) -> Result<RunResult, RunError> {
    spec.validate()?;
    let op = spec.operator();
    let initial = GridState::from_primitives(spec.mesh, spec.t0, &spec.initial, &spec.params)
        .map_err(|(cell, source)| RunError::InitialData { cell, source })?;

    let mut pending = spec.snapshot_times.clone();
    pending.sort_by(f64::total_cmp);
    pending.dedup();
    let mut pending = pending.into_iter().peekable();

    let t_end = spec.t_end();
    let mut grid = initial.clone();
    let mut snapshots = Vec::new();
    let mut steps = 0;
    while grid.t < t_end {
        let dt = compute_dt(&grid, &spec.control, &op)?;
        let last = dt >= t_end - grid.t;
        grid = spec.integrator.step(&grid, dt, &op)?;
        if last {
            grid.t = t_end;
        }
        steps += 1;
        observer.on_step(&grid, dt).map_err(RunError::Sink)?;
        while let Some(&requested) = pending.peek() {
            if requested > grid.t {
                break;
            }
            pending.next();
            let snap = Snapshot { requested, state: grid.clone() };
            observer.on_snapshot(&snap).map_err(RunError::Sink)?;
            snapshots.push(snap);
        }
    }
    Ok(RunResult { initial, snapshots, final_state: grid, steps })
}
