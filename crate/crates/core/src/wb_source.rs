//! Interface discretizations of the geometric source `S1` and the cell-centred
//! expansion source `Q`.
//!
//! The well-balanced interface source integrates the steady relations
//! `∂x F = S` between two neighbouring states, so that a pair lying on the
//! `u = 0, ρ = C b²` family yields exactly the jump `k²(ρR - ρL)` in the
//! momentum flux. Everything here works with the integrated quantity
//! `Ŝ1·Δx` to avoid a division and re-multiplication by `Δx`.

use crate::model::{
    cons_to_prim_1d, Cons1D, Cons2D, FluidParams, GeometryProfile, ModelError, Prim1D, Prim2D, Source1D, Source2D,
};

/// Threshold on `|Ŝ1Δx / T1|` above which the `A_LR` correction is dropped.
pub const DEFAULT_ALPHA_SRC: f64 = 100.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceBranch {
    WellBalanced,
    Fallback,
    VacuumZero,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SourceDiscretization {
    /// `Ŝ1`, the interface source per unit length.
    pub s_hat1: f64,
    /// `Ŝ1 Δx`.
    pub s_dx: f64,
    pub branch: SourceBranch,
}

/// `Ŝ1 Δx` between states `(ρL, uL)` at `B_L = ln b(xL)` and `(ρR, uR)` at `B_R`.
pub(crate) fn integrated_wb_source(
    left: (f64, f64),
    right: (f64, f64),
    ln_b_l: f64,
    ln_b_r: f64,
    params: &FluidParams,
    alpha_src: f64,
) -> (f64, SourceBranch) {
    let (rho_l, u_l) = left;
    let (rho_r, u_r) = right;
    if rho_l == 0.0 && rho_r == 0.0 {
        return (0.0, SourceBranch::VacuumZero);
    }
    let k2 = params.k2();
    let u_lr = 0.5 * (u_l + u_r);
    let lorentz = 1.0 - params.eps2() * u_lr * u_lr;
    let d_ln_b = ln_b_r - ln_b_l;

    if rho_l == 0.0 || rho_r == 0.0 {
        // 1/w_LR taken from the non-vacuum side only; the log term is undefined.
        let inv_w = rho_l.max(rho_r);
        return (2.0 * k2 * inv_w * lorentz * d_ln_b, SourceBranch::Fallback);
    }

    // 1/w_LR with w = 1/ρ and w_LR the arithmetic mean
    let inv_w = 2.0 * rho_l * rho_r / (rho_l + rho_r);
    let geometric = 2.0 * k2 * inv_w * lorentz * d_ln_b;
    // A_LR = (1/w_LR) ln(wL/wR) - (1/wR - 1/wL)
    let a_lr = inv_w * (rho_r.ln() - rho_l.ln()) - (rho_r - rho_l);
    let s_dx = geometric - k2 * a_lr;

    if d_ln_b == 0.0 {
        return (s_dx, SourceBranch::WellBalanced);
    }
    if (s_dx / geometric).abs() >= alpha_src {
        (geometric, SourceBranch::Fallback)
    } else {
        (s_dx, SourceBranch::WellBalanced)
    }
}

/// `Ŝ1 Δx` of the plain centred discretization used by the standard HLL scheme:
/// `(ρL + ρR) k² ln(bR/bL) (1 - ε² u_LR²)`.
pub(crate) fn integrated_centered_source(
    left: (f64, f64),
    right: (f64, f64),
    ln_b_l: f64,
    ln_b_r: f64,
    params: &FluidParams,
) -> f64 {
    let u_lr = 0.5 * (left.1 + right.1);
    (left.0 + right.0) * params.k2() * (ln_b_r - ln_b_l) * (1.0 - params.eps2() * u_lr * u_lr)
}

/// Well-balanced interface source between cells centred at `x_l` and `x_r`.
#[allow(clippy::too_many_arguments)]
pub fn wb_source_1(
    ul: Cons1D,
    ur: Cons1D,
    x_l: f64,
    x_r: f64,
    dx: f64,
    params: &FluidParams,
    geom: &GeometryProfile,
    alpha_src: f64,
) -> Result<SourceDiscretization, ModelError> {
    let pl = cons_to_prim_1d(ul, params)?;
    let pr = cons_to_prim_1d(ur, params)?;
    Ok(wb_source_from_prims(pl, pr, geom.ln_b(x_l, 0.5), geom.ln_b(x_r, 0.5), dx, params, alpha_src))
}

/// Same as [`wb_source_1`] for already-recovered primitives and `B = ln b` values.
pub fn wb_source_from_prims(
    pl: Prim1D,
    pr: Prim1D,
    ln_b_l: f64,
    ln_b_r: f64,
    dx: f64,
    params: &FluidParams,
    alpha_src: f64,
) -> SourceDiscretization {
    let (s_dx, branch) = integrated_wb_source((pl.rho, pl.u), (pr.rho, pr.u), ln_b_l, ln_b_r, params, alpha_src);
    SourceDiscretization { s_hat1: s_dx / dx, s_dx, branch }
}

/// Midpoint value of the expansion source `Q` for a cell at time `t`.
///
/// `literal_q1` multiplies the momentum components by an extra `k²`.
pub fn time_source_q(
    p: Prim2D,
    t: f64,
    geom: &GeometryProfile,
    params: &FluidParams,
    literal_q1: bool,
) -> Result<Source2D, ModelError> {
    let h = geom.expansion_rate(t, params.kappa())?;
    let e2 = params.eps2();
    let k2 = params.k2();
    let v2 = p.u * p.u + p.v * p.v;
    let q0 = -h * p.rho * (1.0 + 3.0 * e2 * k2 + (1.0 - e2 * k2) * e2 * v2);
    let mut coeff = -2.0 * h * p.rho * params.momentum_factor();
    if literal_q1 {
        coeff *= k2;
    }
    Ok(Cons2D { u0: q0, u1: coeff * p.u, u2: coeff * p.v })
}

pub fn time_source_q_1d(
    p: Prim1D,
    t: f64,
    geom: &GeometryProfile,
    params: &FluidParams,
    literal_q1: bool,
) -> Result<Source1D, ModelError> {
    time_source_q(p.into(), t, geom, params, literal_q1).map(Cons1D::from)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{prim_to_cons_1d, Expansion, SpatialProfile};

    fn params() -> FluidParams {
        FluidParams::new(1.0, 0.5, 2.0).unwrap()
    }

    fn src(l: (f64, f64), r: (f64, f64), bl: f64, br: f64) -> (f64, SourceBranch) {
        integrated_wb_source(l, r, bl, br, &params(), DEFAULT_ALPHA_SRC)
    }

    #[test]
    fn flat_geometry_equal_densities_gives_zero() {
        let (s, branch) = src((1.3, 0.2), (1.3, -0.1), 0.0, 0.0);
        assert_eq!(s, 0.0);
        assert_eq!(branch, SourceBranch::WellBalanced);
    }

    #[test]
    fn steady_pairs_satisfy_discrete_steady_relation() {
        let p = params();
        let geom = GeometryProfile::new(Expansion::Static, SpatialProfile::Sine);
        let n = 100;
        let dx = 1.0 / n as f64;
        for i in 0..n {
            let (xl, xr) = ((i as f64 + 0.5) * dx, (i as f64 + 1.5) * dx);
            let (rl, rr) = (geom.b(xl, 0.5).powi(2), geom.b(xr, 0.5).powi(2));
            let ul = prim_to_cons_1d(Prim1D::new(rl, 0.0), &p).unwrap();
            let ur = prim_to_cons_1d(Prim1D::new(rr, 0.0), &p).unwrap();
            let s = wb_source_1(ul, ur, xl, xr, dx, &p, &geom, DEFAULT_ALPHA_SRC).unwrap();
            assert_eq!(s.branch, SourceBranch::WellBalanced);
            assert!((s.s_dx - p.k2() * (rr - rl)).abs() < 1e-12, "interface {i}");
        }
    }

    #[test]
    fn swapping_sides_flips_the_sign_exactly() {
        let (a, _) = src((1.3, 0.2), (0.7, -0.4), 0.01, -0.02);
        let (b, _) = src((0.7, -0.4), (1.3, 0.2), -0.02, 0.01);
        assert_eq!(a, -b);
    }

    #[test]
    fn vacuum_pair_gives_exact_zero() {
        assert_eq!(src((0.0, 0.0), (0.0, 0.0), 0.1, 0.3), (0.0, SourceBranch::VacuumZero));
    }

    #[test]
    fn one_sided_vacuum_uses_fallback_with_the_occupied_density() {
        let (s, branch) = src((0.0, 0.0), (2.0, 0.0), 0.0, 0.1);
        assert_eq!(branch, SourceBranch::Fallback);
        assert!((s - 2.0 * 0.25 * 2.0 * 0.1).abs() < 1e-15);
        assert!(s.is_finite());
    }

    #[test]
    fn strong_jump_with_weak_geometry_falls_back() {
        let (s, branch) = src((1.0, 0.0), (0.1, 0.0), 0.0, 1e-6);
        assert_eq!(branch, SourceBranch::Fallback);
        let inv_w = 2.0 * 0.1 / 1.1;
        assert!((s - 2.0 * 0.25 * inv_w * 1e-6).abs() < 1e-18);
    }

    #[test]
    fn centered_source_matches_formula() {
        let p = params();
        let s = integrated_centered_source((1.0, 0.2), (2.0, 0.4), 0.1, 0.3, &p);
        assert!((s - 3.0 * 0.25 * 0.2 * (1.0 - 0.09)).abs() < 1e-15);
    }

    #[test]
    fn time_source_examples() {
        let p = params();
        let g = GeometryProfile::new(Expansion::PowerLaw, SpatialProfile::Flat);
        let q = time_source_q_1d(Prim1D::new(1.0, 0.0), 1.0, &g, &p, false).unwrap();
        assert_eq!(q.u1, 0.0);
        assert!((q.u0 + 2.0 * 1.75).abs() < 1e-15);
        let q = time_source_q_1d(Prim1D::new(1.0, 0.5), 1.0, &g, &p, false).unwrap();
        assert!((q.u1 + 2.5).abs() < 1e-15);
        let lit = time_source_q_1d(Prim1D::new(1.0, 0.5), 1.0, &g, &p, true).unwrap();
        assert!((lit.u1 + 2.5 * 0.25).abs() < 1e-15);
        let st = GeometryProfile::homogeneous_static();
        let q = time_source_q_1d(Prim1D::new(1.0, 0.5), 1.0, &st, &p, false).unwrap();
        assert_eq!(q, Cons1D::default());
        assert!(time_source_q_1d(Prim1D::new(1.0, 0.5), 0.0, &g, &p, false).is_err());
    }
}
