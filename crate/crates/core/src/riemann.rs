//! HLL-type approximate Riemann solvers.
//!
//! Two solvers share the wave-speed bounds `λL ≤ 0 ≤ λR`:
//!
//! * the classical HLL flux with a single intermediate state `U_M`;
//! * the four-state solver with intermediate states `U_M⁻` (on `λL < ξ < 0`)
//!   and `U_M⁺` (on `0 < ξ < λR`). They satisfy the integral consistency
//!   identity
//!
//!   ```text
//!   λR U_M⁺ - λL U_M⁻ = λR U_R - λL U_L - (F(U_R) - F(U_L)) + Δx Ŝ
//!   ```
//!
//!   and reduce to `U_M⁻ = U_L`, `U_M⁺ = U_R` when the two states lie on a
//!   discrete steady profile.
//!
//! Internally every state is a 3-component vector in an interface frame whose
//! first velocity component is normal to the interface; the 1D API embeds
//! states with zero transverse momentum.

use crate::model::{
    cons_to_prim_2d, eigenvalues, flux_2d_x_prim, prim_to_cons_2d, Cons1D, Cons2D, FluidParams, Flux1D, ModelError,
    Prim2D,
};

pub const DEFAULT_THETA: f64 = 1e-12;
pub const DEFAULT_SONIC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeeds {
    pub left: f64,
    pub right: f64,
}

impl WaveSpeeds {
    pub fn max_abs(&self) -> f64 {
        self.left.abs().max(self.right.abs())
    }

    fn width(&self) -> f64 {
        self.right - self.left
    }
}

/// `λR = max(0, λ2(uL), λ2(uR))`, `λL = min(0, λ1(uL), λ1(uR))`.
pub fn wave_speeds(u_l: f64, u_r: f64, params: &FluidParams) -> WaveSpeeds {
    let (l1_l, l2_l) = eigenvalues(u_l, params);
    let (l1_r, l2_r) = eigenvalues(u_r, params);
    WaveSpeeds { left: 0.0f64.min(l1_l).min(l1_r), right: 0.0f64.max(l2_l).max(l2_r) }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannOptions {
    /// Positivity floor for the `U0` components of the intermediate states.
    pub theta: f64,
    /// `|Λ|` below which the sonic branch is used.
    pub sonic_tol: f64,
}

impl Default for RiemannOptions {
    fn default() -> Self {
        Self { theta: DEFAULT_THETA, sonic_tol: DEFAULT_SONIC_TOL }
    }
}

/// Which positivity correction was applied to the `U0` components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositivityFix {
    None,
    /// `U0⁺` clamped to θ, `U0⁻` recomputed from the consistency identity.
    ClampedPlus,
    /// `U0⁻` clamped to θ, `U0⁺` recomputed from the consistency identity.
    ClampedMinus,
    /// Both clamped to θ; consistency may be violated by at most `(λR - λL)θ`.
    ClampedBoth,
}

/// One side of an interface, in the interface frame.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Side {
    pub cons: Cons2D,
    pub prim: Prim2D,
    pub flux: Cons2D,
}

impl Side {
    pub(crate) fn from_prim(prim: Prim2D, params: &FluidParams) -> Result<Self, ModelError> {
        let cons = prim_to_cons_2d(prim, params)?;
        Ok(Self::with_cons(cons, prim, params))
    }

    pub(crate) fn from_cons(cons: Cons2D, params: &FluidParams) -> Result<Self, ModelError> {
        let prim = cons_to_prim_2d(cons, params)?;
        Ok(Self::with_cons(cons, prim, params))
    }

    pub(crate) fn with_cons(cons: Cons2D, prim: Prim2D, params: &FluidParams) -> Self {
        Self { cons, prim, flux: flux_2d_x_prim(prim, params) }
    }
}

/// Intermediate states of the four-state fan.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Fan {
    pub speeds: WaveSpeeds,
    pub minus: Cons2D,
    pub plus: Cons2D,
    pub fix: PositivityFix,
}

impl Fan {
    /// `½(F(UL) + F(UR) + λL(U_M⁻ - UL) + λR(U_M⁺ - UR))`
    pub(crate) fn flux(&self, l: &Side, r: &Side) -> Cons2D {
        let s = self.speeds;
        (l.flux + r.flux + (self.minus - l.cons) * s.left + (self.plus - r.cons) * s.right) * 0.5
    }
}

/// `U_M = (λR UR - λL UL - (F(UR) - F(UL))) / (λR - λL)`
fn hll_average(l: &Side, r: &Side, s: WaveSpeeds) -> Cons2D {
    let w = s.width();
    let num = r.cons * s.right - l.cons * s.left - (r.flux - l.flux);
    Cons2D { u0: num.u0 / w, u1: num.u1 / w, u2: num.u2 / w }
}

pub(crate) fn frame_speeds(l: &Side, r: &Side, params: &FluidParams) -> WaveSpeeds {
    wave_speeds(l.prim.u, r.prim.u, params)
}

/// Classical HLL flux between two interface-frame states.
pub(crate) fn hll_flux_frame(l: &Side, r: &Side, params: &FluidParams) -> Cons2D {
    let s = frame_speeds(l, r, params);
    let w = s.width();
    let num = l.flux * s.right - r.flux * s.left + (r.cons - l.cons) * (s.right * s.left);
    Cons2D { u0: num.u0 / w, u1: num.u1 / w, u2: num.u2 / w }
}

/// Single-state fan `U_M⁻ = U_M⁺ = U_M + Ŝ1Δx/(λR - λL) e1` of the standard scheme.
pub(crate) fn centered_fan(l: &Side, r: &Side, s_dx: f64, params: &FluidParams) -> Fan {
    let speeds = frame_speeds(l, r, params);
    let mut um = hll_average(l, r, speeds);
    um.u1 += s_dx / speeds.width();
    Fan { speeds, minus: um, plus: um, fix: PositivityFix::None }
}

/// Well-balanced four-state fan for the integrated source `s_dx = Ŝ1 Δx`.
pub(crate) fn wb_fan(l: &Side, r: &Side, s_dx: f64, params: &FluidParams, opts: &RiemannOptions) -> Fan {
    let speeds = frame_speeds(l, r, params);
    let (lam_l, lam_r) = (speeds.left, speeds.right);
    let w = speeds.width();
    let um = hll_average(l, r, speeds);

    let momentum = um.u1 + s_dx / w;

    let (u_l, u_r) = (l.prim.u, r.prim.u);
    let c = params.energy_coeff();
    let lambda = (params.k2() - u_l * u_r) / (1.0 - c * u_l * u_r);
    // jump U0⁺ - U0⁻ imposed on the fan
    let jump = if lambda.abs() >= opts.sonic_tol {
        s_dx / lambda
    } else {
        (1.0 - c * params.k2()) * (r.prim.rho - l.prim.rho)
    };
    let mut plus0 = um.u0 - lam_l / w * jump;
    let mut minus0 = um.u0 - lam_r / w * jump;

    let theta = opts.theta;
    let mut fix = PositivityFix::None;
    if plus0 <= theta && minus0 <= theta {
        fix = PositivityFix::ClampedBoth;
    } else if plus0 <= theta {
        fix = PositivityFix::ClampedPlus;
        if lam_l != 0.0 {
            plus0 = theta;
            minus0 = (1.0 - lam_r / lam_l) * um.u0 + lam_r / lam_l * theta;
            if minus0 < theta {
                fix = PositivityFix::ClampedBoth;
            }
        } else {
            fix = PositivityFix::ClampedBoth;
        }
    } else if minus0 <= theta {
        fix = PositivityFix::ClampedMinus;
        if lam_r != 0.0 {
            minus0 = theta;
            plus0 = (1.0 - lam_l / lam_r) * um.u0 + lam_l / lam_r * theta;
            if plus0 < theta {
                fix = PositivityFix::ClampedBoth;
            }
        } else {
            fix = PositivityFix::ClampedBoth;
        }
    }
    if fix == PositivityFix::ClampedBoth {
        plus0 = theta;
        minus0 = theta;
    }

    Fan {
        speeds,
        minus: Cons2D { u0: minus0, u1: momentum, u2: um.u2 },
        plus: Cons2D { u0: plus0, u1: momentum, u2: um.u2 },
        fix,
    }
}

fn side_1d(c: Cons1D, params: &FluidParams) -> Result<Side, ModelError> {
    Side::from_cons(c.into(), params)
}

/// HLL flux `(λR F(UL) - λL F(UR) + λRλL(UR - UL)) / (λR - λL)`.
pub fn hll_flux(ul: Cons1D, ur: Cons1D, params: &FluidParams) -> Result<Flux1D, ModelError> {
    let (l, r) = (side_1d(ul, params)?, side_1d(ur, params)?);
    Ok(hll_flux_frame(&l, &r, params).into())
}

/// Single HLL intermediate state `U_M`.
pub fn hll_intermediate(ul: Cons1D, ur: Cons1D, params: &FluidParams) -> Result<Cons1D, ModelError> {
    let (l, r) = (side_1d(ul, params)?, side_1d(ur, params)?);
    Ok(hll_average(&l, &r, frame_speeds(&l, &r, params)).into())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntermediateStates {
    pub minus: Cons1D,
    pub plus: Cons1D,
    /// The `Ŝ1` value the states were built with.
    pub source_used: f64,
    pub speeds: WaveSpeeds,
    pub positivity: PositivityFix,
}

/// Intermediate states of the well-balanced solver for `Ŝ1 = s_hat1` on a cell of width `dx`.
pub fn wb_intermediate_states(
    ul: Cons1D,
    ur: Cons1D,
    dx: f64,
    s_hat1: f64,
    params: &FluidParams,
    opts: &RiemannOptions,
) -> Result<IntermediateStates, ModelError> {
    let (l, r) = (side_1d(ul, params)?, side_1d(ur, params)?);
    let fan = wb_fan(&l, &r, s_hat1 * dx, params, opts);
    Ok(IntermediateStates {
        minus: fan.minus.into(),
        plus: fan.plus.into(),
        source_used: s_hat1,
        speeds: fan.speeds,
        positivity: fan.fix,
    })
}

/// Interface flux `½(F(UL) + F(UR) + λL(U_M⁻ - UL) + λR(U_M⁺ - UR))`.
pub fn wb_flux(
    ul: Cons1D,
    ur: Cons1D,
    states: &IntermediateStates,
    params: &FluidParams,
) -> Result<Flux1D, ModelError> {
    let (l, r) = (side_1d(ul, params)?, side_1d(ur, params)?);
    let fan =
        Fan { speeds: states.speeds, minus: states.minus.into(), plus: states.plus.into(), fix: states.positivity };
    Ok(fan.flux(&l, &r).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{flux_1d, prim_to_cons_1d, Expansion, GeometryProfile, Prim1D, SpatialProfile};
    use crate::wb_source::{wb_source_1, DEFAULT_ALPHA_SRC};

    fn params() -> FluidParams {
        FluidParams::new(1.0, 0.5, 2.0).unwrap()
    }

    fn cons(rho: f64, u: f64) -> Cons1D {
        prim_to_cons_1d(Prim1D::new(rho, u), &params()).unwrap()
    }

    fn close(a: Cons1D, b: Cons1D, tol: f64) -> bool {
        (a.u0 - b.u0).abs() <= tol && (a.u1 - b.u1).abs() <= tol
    }

    #[test]
    fn wave_speed_examples() {
        let p = params();
        assert_eq!(wave_speeds(0.0, 0.0, &p), WaveSpeeds { left: -0.5, right: 0.5 });
        let s = wave_speeds(0.5, 0.5, &p);
        assert_eq!(s.left, 0.0);
        assert!((s.right - 2.0 * 0.5 / 1.25).abs() < 1e-15);
    }

    #[test]
    fn hll_flux_is_consistent() {
        let p = params();
        let u = cons(1.2, 0.3);
        let f = hll_flux(u, u, &p).unwrap();
        assert!(close(f, flux_1d(u, &p).unwrap(), 1e-15));
        assert_eq!(hll_flux(Cons1D::default(), Cons1D::default(), &p).unwrap(), Cons1D::default());
    }

    #[test]
    fn equal_states_without_source_reproduce_the_state() {
        let p = params();
        let u = cons(0.8, -0.2);
        let st = wb_intermediate_states(u, u, 0.01, 0.0, &p, &RiemannOptions::default()).unwrap();
        assert!(close(st.minus, u, 1e-15));
        assert!(close(st.plus, u, 1e-15));
        let f = wb_flux(u, u, &st, &p).unwrap();
        assert!(close(f, flux_1d(u, &p).unwrap(), 1e-15));
    }

    #[test]
    fn steady_pair_is_preserved_by_the_fan() {
        let p = params();
        let geom = GeometryProfile::new(Expansion::Static, SpatialProfile::TwoMode);
        let dx = 0.01;
        for i in 0..100 {
            let (xl, xr) = ((i as f64 + 0.5) * dx, (i as f64 + 1.5) * dx);
            let ul = cons(3.0 * geom.b(xl, 0.5).powi(2), 0.0);
            let ur = cons(3.0 * geom.b(xr, 0.5).powi(2), 0.0);
            let s = wb_source_1(ul, ur, xl, xr, dx, &p, &geom, DEFAULT_ALPHA_SRC).unwrap();
            let st = wb_intermediate_states(ul, ur, dx, s.s_hat1, &p, &RiemannOptions::default()).unwrap();
            assert!(close(st.minus, ul, 1e-12), "{i}: {:?} vs {:?}", st.minus, ul);
            assert!(close(st.plus, ur, 1e-12), "{i}: {:?} vs {:?}", st.plus, ur);
            assert_eq!(st.positivity, PositivityFix::None);
        }
    }

    #[test]
    fn zero_source_non_sonic_fan_flux_equals_hll() {
        let p = params();
        let (ul, ur) = (cons(1.0, 0.1), cons(0.6, -0.3));
        let st = wb_intermediate_states(ul, ur, 0.01, 0.0, &p, &RiemannOptions::default()).unwrap();
        assert!(close(st.minus, st.plus, 1e-15));
        let a = wb_flux(ul, ur, &st, &p).unwrap();
        let b = hll_flux(ul, ur, &p).unwrap();
        assert!(close(a, b, 1e-14));
    }

    #[test]
    fn sonic_branch_imposes_density_jump() {
        let p = params();
        // uL uR = k² = 0.25
        let (ul, ur) = (cons(1.0, 0.5), cons(0.7, 0.5));
        let st = wb_intermediate_states(ul, ur, 0.01, 0.0, &p, &RiemannOptions::default()).unwrap();
        let jump = (1.0 - p.energy_coeff() * p.k2()) * (0.7 - 1.0);
        assert!((st.plus.u0 - st.minus.u0 - jump).abs() < 1e-14);
    }

    #[test]
    fn positivity_correction_keeps_consistency() {
        let p = params();
        let opts = RiemannOptions { theta: 0.0, ..Default::default() };
        let (ul, ur) = (cons(1e-3, 0.0), cons(1e-3, 0.0));
        // A large source pushes one of the U0 components negative.
        let st = wb_intermediate_states(ul, ur, 0.01, 1.0, &p, &opts).unwrap();
        assert_ne!(st.positivity, PositivityFix::None);
        assert!(st.minus.u0 >= 0.0 && st.plus.u0 >= 0.0);
        let s = st.speeds;
        let lhs = st.plus.u0 * s.right - st.minus.u0 * s.left;
        let rhs = hll_intermediate(ul, ur, &p).unwrap().u0 * (s.right - s.left);
        assert!((lhs - rhs).abs() < 1e-15);
    }
}
