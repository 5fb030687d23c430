//! Semi-discrete right-hand side `dU_i/dt = L(U, t)_i` on a periodic mesh.
//!
//! Each mesh line is handled by the same routine in an interface frame whose
//! first velocity component is the sweep direction. A 2D evaluation adds the
//! contribution of every row (x-sweep) and every column (y-sweep, velocity
//! components swapped) and then the cell-centred expansion source `Q`.

use std::fmt;
use std::str::FromStr;

use crate::model::{Cons2D, Dim, Expansion, FluidParams, GeometryProfile, Mesh, Prim1D, Prim2D};
use crate::reconstruction::{minmod_slopes, steady_deviation, BlendParams};
use crate::riemann::{centered_fan, wave_speeds, wb_fan, RiemannOptions, Side};
use crate::timestep::SolverError;
use crate::wb_source::{integrated_centered_source, integrated_wb_source, time_source_q, DEFAULT_ALPHA_SRC};

/// Numerical flux and interface source discretization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluxScheme {
    /// Classical HLL flux with a centred source.
    Hll,
    /// Four-state solver with the well-balanced source.
    WellBalanced,
}

impl FluxScheme {
    pub fn name(self) -> &'static str {
        match self {
            FluxScheme::Hll => "hll",
            FluxScheme::WellBalanced => "wb_hll",
        }
    }
}

impl fmt::Display for FluxScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FluxScheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hll" => Ok(FluxScheme::Hll),
            "wb_hll" | "wb" => Ok(FluxScheme::WellBalanced),
            _ => Err(format!("unknown scheme '{s}' (expected hll or wb_hll)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceOrder {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeOptions {
    pub flux: FluxScheme,
    pub space_order: SpaceOrder,
    pub riemann: RiemannOptions,
    pub alpha_src: f64,
    pub blend: BlendParams,
    /// Multiply the momentum part of `Q` by `k²`.
    pub literal_q1: bool,
}

impl SchemeOptions {
    pub fn new(flux: FluxScheme, space_order: SpaceOrder) -> Self {
        Self {
            flux,
            space_order,
            riemann: RiemannOptions::default(),
            alpha_src: DEFAULT_ALPHA_SRC,
            blend: BlendParams::default(),
            literal_q1: false,
        }
    }
}

/// The spatial operator for a fixed mesh, model and background.
#[derive(Debug, Clone)]
pub struct SemiDiscrete {
    mesh: Mesh,
    params: FluidParams,
    geom: GeometryProfile,
    opts: SchemeOptions,
    ln_b: Vec<f64>,
}

struct Trace {
    lo: Side,
    hi: Side,
}

impl SemiDiscrete {
    pub fn new(mesh: Mesh, params: FluidParams, geom: GeometryProfile, opts: SchemeOptions) -> Self {
        let ln_b = mesh.centers().map(|(x, y)| geom.ln_b(x, y)).collect();
        Self { mesh, params, geom, opts, ln_b }
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn params(&self) -> &FluidParams {
        &self.params
    }

    pub fn geometry(&self) -> &GeometryProfile {
        &self.geom
    }

    pub fn options(&self) -> &SchemeOptions {
        &self.opts
    }

    pub fn primitives(&self, cells: &[Cons2D], t: f64) -> Result<Vec<Prim2D>, SolverError> {
        cells
            .iter()
            .enumerate()
            .map(|(cell, c)| {
                crate::model::cons_to_prim_2d(*c, &self.params).map_err(|source| SolverError::StateRecovery {
                    cell,
                    t,
                    source,
                })
            })
            .collect()
    }

    /// Largest `max(|λL|, |λR|)` over x-interfaces and over y-interfaces.
    pub fn max_speeds(&self, prims: &[Prim2D]) -> (f64, f64) {
        let m = &self.mesh;
        let (nx, ny) = (m.nx(), m.ny());
        let mut sx: f64 = 0.0;
        let mut sy: f64 = 0.0;
        for j in 0..ny {
            for i in 0..nx {
                let p = prims[m.index(i, j)];
                let px = prims[m.index((i + 1) % nx, j)];
                let s = wave_speeds(p.u, px.u, &self.params);
                sx = sx.max(s.max_abs());
                if m.dim() == Dim::Two {
                    let py = prims[m.index(i, (j + 1) % ny)];
                    let s = wave_speeds(p.v, py.v, &self.params);
                    sy = sy.max(s.max_abs());
                }
            }
        }
        (sx, sy)
    }

    /// `L(U, t)`.
    pub fn rhs(&self, cells: &[Cons2D], t: f64) -> Result<Vec<Cons2D>, SolverError> {
        let prims = self.primitives(cells, t)?;
        let m = self.mesh;
        let (nx, ny) = (m.nx(), m.ny());
        let mut out = vec![Cons2D::ZERO; cells.len()];

        let mut line_c = Vec::with_capacity(nx.max(ny));
        let mut line_p = Vec::with_capacity(nx.max(ny));
        let mut line_b = Vec::with_capacity(nx.max(ny));
        let mut line_out = Vec::with_capacity(nx.max(ny));

        for j in 0..ny {
            let row = j * nx..(j + 1) * nx;
            let (c, p, b) = (&cells[row.clone()], &prims[row.clone()], &self.ln_b[row.clone()]);
            self.line_rhs(c, p, b, m.dx(), t, row.start, 1, &mut line_out)?;
            for (o, d) in out[row].iter_mut().zip(&line_out) {
                *o += *d;
            }
        }

        if m.dim() == Dim::Two {
            for i in 0..nx {
                line_c.clear();
                line_p.clear();
                line_b.clear();
                for j in 0..ny {
                    let c = m.index(i, j);
                    line_c.push(cells[c].swapped());
                    line_p.push(prims[c].swapped());
                    line_b.push(self.ln_b[c]);
                }
                self.line_rhs(&line_c, &line_p, &line_b, m.dy(), t, i, nx, &mut line_out)?;
                for (j, d) in line_out.iter().enumerate() {
                    out[m.index(i, j)] += d.swapped();
                }
            }
        }

        if self.geom.expansion != Expansion::Static {
            for (o, p) in out.iter_mut().zip(&prims) {
                let q = time_source_q(*p, t, &self.geom, &self.params, self.opts.literal_q1)
                    .map_err(|source| SolverError::Geometry { t, source })?;
                *o += q;
            }
        }
        Ok(out)
    }

    fn blend_factors(&self, prims: &[Prim2D], ln_b: &[f64], h: f64) -> Vec<f64> {
        let n = prims.len();
        match self.opts.flux {
            FluxScheme::Hll => vec![1.0; n],
            FluxScheme::WellBalanced => {
                let q: Vec<Prim1D> = prims.iter().map(|p| Prim1D::from(*p)).collect();
                let s_dx: Vec<f64> = (0..n)
                    .map(|i| {
                        let r = (i + 1) % n;
                        integrated_wb_source(
                            (q[i].rho, q[i].u),
                            (q[r].rho, q[r].u),
                            ln_b[i],
                            ln_b[r],
                            &self.params,
                            self.opts.alpha_src,
                        )
                        .0
                    })
                    .collect();
                steady_deviation(&q, &s_dx, h, &self.params, &self.opts.blend)
            }
        }
    }

    /// Cell traces at both faces. `first`/`stride` map line positions to mesh cells for errors.
    #[allow(clippy::too_many_arguments)]
    fn traces(
        &self,
        cons: &[Cons2D],
        prims: &[Prim2D],
        ln_b: &[f64],
        h: f64,
        t: f64,
        first: usize,
        stride: usize,
    ) -> Result<Vec<Trace>, SolverError> {
        let params = &self.params;
        let cell_sides = cons.iter().zip(prims).map(|(c, p)| Side::with_cons(*c, *p, params));
        if self.opts.space_order == SpaceOrder::First || cons.len() < 3 {
            return Ok(cell_sides.map(|s| Trace { lo: s, hi: s }).collect());
        }

        let mut phi = self.blend_factors(prims, ln_b, h);
        let rho: Vec<f64> = prims.iter().map(|p| p.rho).collect();
        let un: Vec<f64> = prims.iter().map(|p| p.u).collect();
        let ut: Vec<f64> = prims.iter().map(|p| p.v).collect();
        let (d_rho, d_un, d_ut) = (minmod_slopes(&rho, h), minmod_slopes(&un, h), minmod_slopes(&ut, h));
        let c = params.light_speed();

        cell_sides
            .enumerate()
            .map(|(i, side)| {
                let p = prims[i];
                let offset = |sign: f64, phi: f64| {
                    let w = sign * 0.5 * h * phi;
                    Prim2D::new(p.rho + w * d_rho[i], p.u + w * d_un[i], p.v + w * d_ut[i])
                };
                let admissible = |q: Prim2D| q.rho >= 0.0 && q.speed() < c;
                if !(admissible(offset(-1.0, phi[i])) && admissible(offset(1.0, phi[i]))) {
                    phi[i] = 0.0;
                }
                if phi[i] == 0.0 || (d_rho[i] == 0.0 && d_un[i] == 0.0 && d_ut[i] == 0.0) {
                    return Ok(Trace { lo: side, hi: side });
                }
                let build = |q: Prim2D| {
                    Side::from_prim(q, params).map_err(|source| SolverError::StateRecovery {
                        cell: first + i * stride,
                        t,
                        source,
                    })
                };
                Ok(Trace { lo: build(offset(-1.0, phi[i]))?, hi: build(offset(1.0, phi[i]))? })
            })
            .collect()
    }

    /// Flux-difference and interface-source contribution of one periodic line.
    #[allow(clippy::too_many_arguments)]
    fn line_rhs(
        &self,
        cons: &[Cons2D],
        prims: &[Prim2D],
        ln_b: &[f64],
        h: f64,
        t: f64,
        first: usize,
        stride: usize,
        out: &mut Vec<Cons2D>,
    ) -> Result<(), SolverError> {
        let n = cons.len();
        let traces = self.traces(cons, prims, ln_b, h, t, first, stride)?;
        let params = &self.params;
        let mut flux = Vec::with_capacity(n);
        let mut s_dx = Vec::with_capacity(n);
        for i in 0..n {
            let r = (i + 1) % n;
            let (l, rt) = (&traces[i].hi, &traces[r].lo);
            let left = (l.prim.rho, l.prim.u);
            let right = (rt.prim.rho, rt.prim.u);
            let (s, fan) = match self.opts.flux {
                FluxScheme::WellBalanced => {
                    let (s, _) = integrated_wb_source(left, right, ln_b[i], ln_b[r], params, self.opts.alpha_src);
                    (s, wb_fan(l, rt, s, params, &self.opts.riemann))
                }
                FluxScheme::Hll => {
                    let s = integrated_centered_source(left, right, ln_b[i], ln_b[r], params);
                    (s, centered_fan(l, rt, s, params))
                }
            };
            flux.push(fan.flux(l, rt));
            s_dx.push(s);
        }
        out.clear();
        for i in 0..n {
            let prev = (i + n - 1) % n;
            let mut d = (flux[i] - flux[prev]) * (-1.0 / h);
            d.u1 += (s_dx[i] + s_dx[prev]) / (2.0 * h);
            out.push(d);
        }
        Ok(())
    }
}
