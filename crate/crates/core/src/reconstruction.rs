//! Piecewise-linear reconstruction of primitive variables with minmod slopes
//! and the steady-state detector that blends back to first order.
//!
//! All arrays are periodic lines of cells; interface `i + 1/2` sits between
//! cell `i` and cell `(i + 1) % n`.

use crate::model::{FluidParams, Prim1D};

/// Parameters of the blend factor `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlendParams {
    /// Lower ramp end, in units of `Δx`.
    pub m: f64,
    /// Upper ramp end, in units of `Δx`.
    pub big_m: f64,
    /// Use `ρ(u + k²)` instead of the momentum flux `ρ(u² + k²)` in `ψ`.
    pub literal_psi: bool,
}

impl Default for BlendParams {
    fn default() -> Self {
        Self { m: 1.0, big_m: 10.0, literal_psi: false }
    }
}

pub fn minmod(back: f64, fwd: f64) -> f64 {
    if back * fwd > 0.0 {
        back.signum() * back.abs().min(fwd.abs())
    } else {
        0.0
    }
}

/// Limited slopes `δ_i` of a periodic line.
pub fn minmod_slopes(q: &[f64], dx: f64) -> Vec<f64> {
    let n = q.len();
    (0..n)
        .map(|i| {
            let prev = q[(i + n - 1) % n];
            let next = q[(i + 1) % n];
            minmod((q[i] - prev) / dx, (next - q[i]) / dx)
        })
        .collect()
}

/// `φ` as a piecewise-linear ramp of the deviation measure between `mΔx` and `MΔx`.
pub fn phi_from_deviation(deviation: f64, dx: f64, blend: &BlendParams) -> f64 {
    let lo = blend.m * dx;
    let hi = blend.big_m * dx;
    if deviation <= lo {
        0.0
    } else if deviation >= hi {
        1.0
    } else {
        (deviation - lo) / (hi - lo)
    }
}

fn momentum_flux(p: Prim1D, params: &FluidParams, literal: bool) -> f64 {
    let k2 = params.k() * params.k();
    if literal {
        p.rho * (p.u + k2)
    } else {
        p.rho * (p.u * p.u + k2)
    }
}

/// Norms `‖(Δ(ρu), ψ)‖₂` at every interface; `s_dx[i]` is `Ŝ1Δx` at `i + 1/2`.
pub fn interface_deviation(q: &[Prim1D], s_dx: &[f64], params: &FluidParams, blend: &BlendParams) -> Vec<f64> {
    let n = q.len();
    assert_eq!(s_dx.len(), n);
    (0..n)
        .map(|i| {
            let (l, r) = (q[i], q[(i + 1) % n]);
            let d_mom = r.rho * r.u - l.rho * l.u;
            let psi =
                momentum_flux(r, params, blend.literal_psi) - momentum_flux(l, params, blend.literal_psi) - s_dx[i];
            d_mom.hypot(psi)
        })
        .collect()
}

/// Blend factors `φ_i` from the deviation at both faces of each cell.
pub fn steady_deviation(q: &[Prim1D], s_dx: &[f64], dx: f64, params: &FluidParams, blend: &BlendParams) -> Vec<f64> {
    let dev = interface_deviation(q, s_dx, params, blend);
    let n = q.len();
    (0..n).map(|i| phi_from_deviation(dev[i] + dev[(i + n - 1) % n], dx, blend)).collect()
}

/// Left and right traces at every interface:
/// `qL = q_i + (Δx/2) δ_i φ_i`, `qR = q_{i+1} - (Δx/2) δ_{i+1} φ_{i+1}`.
pub fn interface_values(q: &[f64], slopes: &[f64], phi: &[f64], dx: f64) -> (Vec<f64>, Vec<f64>) {
    let n = q.len();
    let half = 0.5 * dx;
    let left = (0..n).map(|i| q[i] + half * slopes[i] * phi[i]).collect();
    let right = (0..n)
        .map(|i| {
            let j = (i + 1) % n;
            q[j] - half * slopes[j] * phi[j]
        })
        .collect();
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_field_has_zero_slopes() {
        assert!(minmod_slopes(&[2.0; 6], 0.1).iter().all(|&s| s == 0.0));
    }

    #[test]
    fn linear_interior_slope_is_reproduced() {
        let dx = 0.1;
        let q: Vec<f64> = (0..10).map(|i| (i as f64 + 0.5) * dx).collect();
        let s = minmod_slopes(&q, dx);
        for &d in &s[1..9] {
            assert!((d - 1.0).abs() < 1e-12);
        }
        // the periodic wrap is an extremum
        assert_eq!(s[0], 0.0);
        assert_eq!(s[9], 0.0);
    }

    #[test]
    fn extremum_gets_zero_slope() {
        let s = minmod_slopes(&[1.0, 2.0, 1.0], 1.0);
        assert_eq!(s[1], 0.0);
    }

    #[test]
    fn ramp_is_monotone_and_clamped() {
        let b = BlendParams::default();
        let dx = 0.01;
        assert_eq!(phi_from_deviation(0.0, dx, &b), 0.0);
        assert_eq!(phi_from_deviation(0.5 * dx, dx, &b), 0.0);
        assert!((phi_from_deviation(5.5 * dx, dx, &b) - 0.5).abs() < 1e-12);
        assert_eq!(phi_from_deviation(20.0 * dx, dx, &b), 1.0);
        let mut last = 0.0;
        for i in 0..200 {
            let p = phi_from_deviation(i as f64 * 0.001, dx, &b);
            assert!(p >= last);
            last = p;
        }
    }

    #[test]
    fn steady_rest_data_gives_phi_zero() {
        let params = FluidParams::new(1.0, 0.5, 2.0).unwrap();
        let rho = [1.0, 1.1, 1.05, 0.98];
        let q: Vec<Prim1D> = rho.iter().map(|&r| Prim1D::new(r, 0.0)).collect();
        let s_dx: Vec<f64> = (0..4).map(|i| 0.25 * (rho[(i + 1) % 4] - rho[i])).collect();
        let phi = steady_deviation(&q, &s_dx, 0.25, &params, &BlendParams::default());
        assert!(phi.iter().all(|&p| p == 0.0));
    }

    fn riemann_phi(n: usize) -> Vec<f64> {
        let params = FluidParams::new(1.0, 0.7, 2.0).unwrap();
        let q: Vec<Prim1D> = (0..n).map(|i| Prim1D::new(if i < n / 2 { 1.0 } else { 0.9 }, 0.0)).collect();
        let dx = 1.0 / n as f64;
        steady_deviation(&q, &vec![0.0; n], dx, &params, &BlendParams::default())
    }

    #[test]
    fn riemann_jump_gives_phi_one_near_the_jump() {
        // |ψ| = k² · 0.1 = 0.049 exceeds MΔx once N > 204
        let n = 500;
        let phi = riemann_phi(n);
        assert_eq!(phi[n / 2 - 1], 1.0);
        assert_eq!(phi[n / 2], 1.0);
        assert_eq!(phi[n / 4], 0.0);

        let phi = riemann_phi(100);
        let expected = (0.049 - 0.01) / 0.09;
        assert!((phi[49] - expected).abs() < 1e-12);
    }

    #[test]
    fn traces_follow_phi() {
        let dx = 0.25;
        let q = [0.0, 0.25, 0.5, 0.75];
        let s = [1.0; 4];
        let (l, r) = interface_values(&q, &s, &[0.0; 4], dx);
        assert_eq!(l, q.to_vec());
        assert_eq!(r, vec![0.25, 0.5, 0.75, 0.0]);
        let (l, r) = interface_values(&q, &s, &[1.0; 4], dx);
        assert_eq!(l[1], 0.375);
        assert_eq!(r[1], 0.375);
    }
}
