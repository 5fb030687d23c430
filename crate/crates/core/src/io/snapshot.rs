//! CSV snapshots: `#`-prefixed header lines followed by a column row and
//! numeric rows written with 17 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::config::FORMAT_VERSION;
use crate::diagnostics::{rescale_contracting, rescale_expanding, velocity_limit_distance};
use crate::model::{Dim, Expansion, FluidParams, GeometryProfile, GridState, TimeRegime};

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("snapshot lacks column '{0}'")]
    MissingColumn(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SnapshotRecord {
    pub format_version: u32,
    /// Settings of the producing run.
    pub spec: Vec<(String, String)>,
    /// Actual time of the state.
    pub t: f64,
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

impl SnapshotRecord {
    /// Columns `x[,y], rho, u[,v]` plus `rho_tilde, u_tilde[,v_tilde]` for
    /// expanding (or static) runs, or `rho_tilde, u_dist[,v_dist]` for
    /// contracting runs. Rescaled columns are NaN where the exponents are undefined.
    pub fn from_state(
        state: &GridState,
        params: &FluidParams,
        geom: &GeometryProfile,
        spec: &[(&str, String)],
    ) -> Result<Self, crate::timestep::SolverError> {
        let mesh = state.mesh;
        let prims = state.primitives(params).map_err(|(cell, source)| crate::timestep::SolverError::StateRecovery {
            cell,
            t: state.t,
            source,
        })?;
        let two_d = mesh.dim() == Dim::Two;
        let n = prims.len();
        let contracting = geom.expansion == Expansion::PowerLaw && TimeRegime::of(state.t) == TimeRegime::Contracting;

        let mut columns: Vec<&str> = if two_d { vec!["x", "y", "rho", "u", "v"] } else { vec!["x", "rho", "u"] };
        let extra: Vec<Vec<f64>> = if contracting {
            let rho_t = rescale_contracting(&prims, state.t, params).unwrap_or_else(|_| vec![f64::NAN; n]);
            let mut e = vec![rho_t, prims.iter().map(|p| velocity_limit_distance(p.u, params)).collect()];
            columns.extend(["rho_tilde", "u_dist"]);
            if two_d {
                e.push(prims.iter().map(|p| velocity_limit_distance(p.v, params)).collect());
                columns.push("v_dist");
            }
            e
        } else {
            let r = match geom.expansion {
                Expansion::Static => Ok(crate::diagnostics::RescaledFields {
                    rho: prims.iter().map(|p| p.rho).collect(),
                    u: prims.iter().map(|p| p.u).collect(),
                    v: prims.iter().map(|p| p.v).collect(),
                }),
                Expansion::PowerLaw => rescale_expanding(&prims, state.t, params),
            };
            let r = r.unwrap_or_else(|_| crate::diagnostics::RescaledFields {
                rho: vec![f64::NAN; n],
                u: vec![f64::NAN; n],
                v: vec![f64::NAN; n],
            });
            columns.extend(["rho_tilde", "u_tilde"]);
            let mut e = vec![r.rho, r.u];
            if two_d {
                columns.push("v_tilde");
                e.push(r.v);
            }
            e
        };

        let rows = mesh
            .centers()
            .zip(&prims)
            .enumerate()
            .map(|(i, ((x, y), p))| {
                let mut row = if two_d { vec![x, y, p.rho, p.u, p.v] } else { vec![x, p.rho, p.u] };
                row.extend(extra.iter().map(|col| col[i]));
                row
            })
            .collect();

        Ok(Self {
            format_version: FORMAT_VERSION,
            spec: spec.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            t: state.t,
            nx: mesh.nx(),
            ny: mesh.ny(),
            dx: mesh.dx(),
            columns: columns.into_iter().map(String::from).collect(),
            rows,
        })
    }

    pub fn column(&self, name: &str) -> Result<Vec<f64>, SnapshotError> {
        let idx = self
            .columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| SnapshotError::MissingColumn(name.to_string()))?;
        Ok(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# format_version = {}", self.format_version);
        for (k, v) in &self.spec {
            let _ = writeln!(s, "# spec.{k} = {v}");
        }
        let _ = writeln!(s, "# t = {}", fmt_num(self.t));
        let _ = writeln!(s, "# N = {}", self.nx);
        let _ = writeln!(s, "# Ny = {}", self.ny);
        let _ = writeln!(s, "# dx = {}", fmt_num(self.dx));
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| fmt_num(*x)).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn write_file(&self, path: &Path) -> Result<(), SnapshotError> {
        fs::write(path, self.to_csv()).map_err(|source| SnapshotError::Io { path: path.to_path_buf(), source })
    }

    pub fn read_file(path: &Path) -> Result<Self, SnapshotError> {
        let text = fs::read_to_string(path).map_err(|source| SnapshotError::Io { path: path.to_path_buf(), source })?;
        parse_snapshot(&text)
    }
}

pub fn parse_snapshot(text: &str) -> Result<SnapshotRecord, SnapshotError> {
    let mut rec = SnapshotRecord {
        format_version: 0,
        spec: Vec::new(),
        t: f64::NAN,
        nx: 0,
        ny: 0,
        dx: f64::NAN,
        columns: Vec::new(),
        rows: Vec::new(),
    };
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |message: String| SnapshotError::Parse { line: line_no, message };
        if let Some(header) = line.strip_prefix('#') {
            let (k, v) = header
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err(format!("malformed header '{line}'")))?;
            let bad = || err(format!("bad value for {k}: '{v}'"));
            match k {
                "format_version" => rec.format_version = v.parse().map_err(|_| bad())?,
                "t" => rec.t = v.parse().map_err(|_| bad())?,
                "N" => rec.nx = v.parse().map_err(|_| bad())?,
                "Ny" => rec.ny = v.parse().map_err(|_| bad())?,
                "dx" => rec.dx = v.parse().map_err(|_| bad())?,
                _ => match k.strip_prefix("spec.") {
                    Some(key) => rec.spec.push((key.to_string(), v.to_string())),
                    None => return Err(err(format!("unknown header key '{k}'"))),
                },
            }
        } else if rec.columns.is_empty() {
            rec.columns = line.split(',').map(|c| c.trim().to_string()).collect();
        } else if !line.trim().is_empty() {
            let row = line
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| err(format!("bad number: {e}")))?;
            if row.len() != rec.columns.len() {
                return Err(err(format!("expected {} values, got {}", rec.columns.len(), row.len())));
            }
            rec.rows.push(row);
        }
    }
    if rec.format_version != FORMAT_VERSION {
        return Err(SnapshotError::Parse {
            line: 1,
            message: format!("unsupported format_version {}", rec.format_version),
        });
    }
    if rec.rows.len() != rec.nx * rec.ny {
        return Err(SnapshotError::Parse {
            line: text.lines().count(),
            message: format!("expected {} rows, got {}", rec.nx * rec.ny, rec.rows.len()),
        });
    }
    Ok(rec)
}
