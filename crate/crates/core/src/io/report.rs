//! Per-snapshot summary table.

use std::fmt::Write as _;

use super::snapshot::{SnapshotError, SnapshotRecord};
use crate::diagnostics::{steady_residual, FieldStats};
use crate::model::{GeometryProfile, Mesh};

pub const REPORT_COLUMNS: &[&str] = &[
    "requested_t",
    "t",
    "rho_min",
    "rho_max",
    "rho_mean",
    "vel_max_abs",
    "rho_tilde_variation",
    "steady_c",
    "steady_residual",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportRow {
    pub requested_t: f64,
    pub t: f64,
    pub rho: FieldStats,
    pub vel_max_abs: f64,
    pub rho_tilde_variation: f64,
    pub steady_c: f64,
    pub steady_residual: f64,
}

impl ReportRow {
    pub fn from_record(
        rec: &SnapshotRecord,
        requested_t: f64,
        mesh: &Mesh,
        geom: &GeometryProfile,
    ) -> Result<Self, SnapshotError> {
        let rho = rec.column("rho")?;
        let mut vels = vec![rec.column("u")?];
        if rec.ny > 1 {
            vels.push(rec.column("v")?);
        }
        let slices: Vec<&[f64]> = vels.iter().map(Vec::as_slice).collect();
        let steady = steady_residual(&rho, &slices, mesh, geom);
        let vel_max_abs = vels.iter().map(|v| FieldStats::of(v).max_abs()).fold(0.0, f64::max);
        Ok(Self {
            requested_t,
            t: rec.t,
            rho: FieldStats::of(&rho),
            vel_max_abs,
            rho_tilde_variation: FieldStats::of(&rec.column("rho_tilde")?).relative_variation(),
            steady_c: steady.c_fit,
            steady_residual: steady.residual,
        })
    }

    fn values(&self) -> [f64; 9] {
        [
            self.requested_t,
            self.t,
            self.rho.min,
            self.rho.max,
            self.rho.mean,
            self.vel_max_abs,
            self.rho_tilde_variation,
            self.steady_c,
            self.steady_residual,
        ]
    }
}

pub fn report_csv(rows: &[ReportRow]) -> String {
    let mut s = REPORT_COLUMNS.join(",");
    s.push('\n');
    for r in rows {
        let vals: Vec<String> = r.values().iter().map(|x| format!("{x:.16e}")).collect();
        let _ = writeln!(s, "{}", vals.join(","));
    }
    s
}
