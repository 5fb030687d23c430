use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use super::{FluidParams, GeometryProfile, ModelError};

/// Discriminants in `(-DISCRIMINANT_TOL, 0)` are rounded up to zero.
pub const DISCRIMINANT_TOL: f64 = 1e-12;

/// Normalized density and velocity of a 1D cell.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Prim1D {
    pub rho: f64,
    pub u: f64,
}

/// `(U0, U1) = (ρ(1 + ε⁴k²u²), ρu(1 + ε²k²))`. Also used for flux and source vectors.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Cons1D {
    pub u0: f64,
    pub u1: f64,
}

pub type Flux1D = Cons1D;
pub type Source1D = Cons1D;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Prim2D {
    pub rho: f64,
    pub u: f64,
    pub v: f64,
}

/// `(ρ(1 + ε⁴k²V²), ρu(1 + ε²k²), ρv(1 + ε²k²))`. Also used for flux and source vectors.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Cons2D {
    pub u0: f64,
    pub u1: f64,
    pub u2: f64,
}

pub type Flux2D = Cons2D;
pub type Source2D = Cons2D;

impl Prim1D {
    pub fn new(rho: f64, u: f64) -> Self {
        Self { rho, u }
    }
}

impl Cons1D {
    pub fn new(u0: f64, u1: f64) -> Self {
        Self { u0, u1 }
    }
}

impl Prim2D {
    pub fn new(rho: f64, u: f64, v: f64) -> Self {
        Self { rho, u, v }
    }

    pub fn speed(&self) -> f64 {
        (self.u * self.u + self.v * self.v).sqrt()
    }

    /// Exchanges the roles of the two velocity components.
    pub fn swapped(self) -> Self {
        Self { rho: self.rho, u: self.v, v: self.u }
    }
}

impl Cons2D {
    pub const ZERO: Cons2D = Cons2D { u0: 0.0, u1: 0.0, u2: 0.0 };

    pub fn new(u0: f64, u1: f64, u2: f64) -> Self {
        Self { u0, u1, u2 }
    }

    pub fn swapped(self) -> Self {
        Self { u0: self.u0, u1: self.u2, u2: self.u1 }
    }

    pub fn max_abs(&self) -> f64 {
        self.u0.abs().max(self.u1.abs()).max(self.u2.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.u0.is_finite() && self.u1.is_finite() && self.u2.is_finite()
    }
}

impl From<Prim1D> for Prim2D {
    fn from(p: Prim1D) -> Self {
        Prim2D { rho: p.rho, u: p.u, v: 0.0 }
    }
}

impl From<Cons1D> for Cons2D {
    fn from(c: Cons1D) -> Self {
        Cons2D { u0: c.u0, u1: c.u1, u2: 0.0 }
    }
}

impl From<Prim2D> for Prim1D {
    fn from(p: Prim2D) -> Self {
        Prim1D { rho: p.rho, u: p.u }
    }
}

impl From<Cons2D> for Cons1D {
    fn from(c: Cons2D) -> Self {
        Cons1D { u0: c.u0, u1: c.u1 }
    }
}

macro_rules! vector_ops {
    ($t:ident { $($f:ident),+ }) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, o: $t) -> $t { $t { $($f: self.$f + o.$f),+ } }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, o: $t) -> $t { $t { $($f: self.$f - o.$f),+ } }
        }
        impl Mul<f64> for $t {
            type Output = $t;
            fn mul(self, a: f64) -> $t { $t { $($f: self.$f * a),+ } }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t { $t { $($f: -self.$f),+ } }
        }
        impl AddAssign for $t {
            fn add_assign(&mut self, o: $t) { $(self.$f += o.$f;)+ }
        }
    };
}

vector_ops!(Cons1D { u0, u1 });
vector_ops!(Cons2D { u0, u1, u2 });

fn check_prim(rho: f64, speed: f64, params: &FluidParams) -> Result<(), ModelError> {
    if !(rho >= 0.0) || !rho.is_finite() {
        return Err(ModelError::NegativeDensity { rho });
    }
    if !(speed < params.light_speed()) {
        return Err(ModelError::Superluminal { speed, light_speed: params.light_speed() });
    }
    Ok(())
}

pub fn prim_to_cons_2d(p: Prim2D, params: &FluidParams) -> Result<Cons2D, ModelError> {
    let v2 = p.u * p.u + p.v * p.v;
    check_prim(p.rho, v2.sqrt(), params)?;
    let mf = params.momentum_factor();
    Ok(Cons2D { u0: p.rho * (1.0 + params.energy_coeff() * v2), u1: p.rho * p.u * mf, u2: p.rho * p.v * mf })
}

pub fn prim_to_cons_1d(p: Prim1D, params: &FluidParams) -> Result<Cons1D, ModelError> {
    prim_to_cons_2d(p.into(), params).map(Cons1D::from)
}

/// Speed `V` solving `ε⁴k² r V² - (1 + ε²k²) V + r = 0` for `r = |m| / U0`.
///
/// The admissible root is the one with the minus sign in front of the square
/// root; it is evaluated in rationalized form so that it stays accurate for
/// small `ε⁴k² r` (and for `ε = 0`).
fn speed_from_ratio(r: f64, params: &FluidParams) -> Result<f64, ModelError> {
    let a = params.momentum_factor();
    let c = params.energy_coeff();
    let mut disc = a * a - 4.0 * c * r * r;
    if disc < 0.0 {
        if disc > -DISCRIMINANT_TOL {
            disc = 0.0;
        } else {
            return Err(ModelError::NonInvertible { ratio: r, discriminant: disc });
        }
    }
    Ok(2.0 * r / (a + disc.sqrt()))
}

pub fn cons_to_prim_2d(c: Cons2D, params: &FluidParams) -> Result<Prim2D, ModelError> {
    if !c.is_finite() {
        return Err(ModelError::NonFinite);
    }
    if c.u0 < 0.0 {
        return Err(ModelError::NegativeDensity { rho: c.u0 });
    }
    if c.u0 == 0.0 {
        return Ok(Prim2D::default());
    }
    if c.u1 == 0.0 && c.u2 == 0.0 {
        return Ok(Prim2D { rho: c.u0, u: 0.0, v: 0.0 });
    }
    let m = (c.u1 * c.u1 + c.u2 * c.u2).sqrt();
    let speed = speed_from_ratio(m / c.u0, params)?;
    if !(speed < params.light_speed()) {
        return Err(ModelError::Superluminal { speed, light_speed: params.light_speed() });
    }
    let rho = c.u0 / (1.0 + params.energy_coeff() * speed * speed);
    Ok(Prim2D { rho, u: speed * (c.u1 / m), v: speed * (c.u2 / m) })
}

pub fn cons_to_prim_1d(c: Cons1D, params: &FluidParams) -> Result<Prim1D, ModelError> {
    cons_to_prim_2d(c.into(), params).map(Prim1D::from)
}

/// x-direction flux `F` evaluated from primitive variables.
pub fn flux_2d_x_prim(p: Prim2D, params: &FluidParams) -> Flux2D {
    let mf = params.momentum_factor();
    let k2 = params.k2();
    // (1+ε²k²)ρu² + k²ρ(1-ε²V²) rearranged so that v = 0 gives ρ(u²+k²) bit for bit
    Cons2D {
        u0: p.rho * p.u * mf,
        u1: p.rho * (p.u * p.u + k2) - params.eps2() * k2 * p.rho * p.v * p.v,
        u2: mf * p.rho * p.u * p.v,
    }
}

/// y-direction flux `G` evaluated from primitive variables.
pub fn flux_2d_y_prim(p: Prim2D, params: &FluidParams) -> Flux2D {
    flux_2d_x_prim(p.swapped(), params).swapped()
}

pub fn flux_2d_x(c: Cons2D, params: &FluidParams) -> Result<Flux2D, ModelError> {
    Ok(flux_2d_x_prim(cons_to_prim_2d(c, params)?, params))
}

pub fn flux_2d_y(c: Cons2D, params: &FluidParams) -> Result<Flux2D, ModelError> {
    Ok(flux_2d_y_prim(cons_to_prim_2d(c, params)?, params))
}

pub fn flux_1d_prim(p: Prim1D, params: &FluidParams) -> Flux1D {
    flux_2d_x_prim(p.into(), params).into()
}

/// `F(U) = (ρu(1+ε²k²), ρ(u²+k²))` via primitive recovery.
pub fn flux_1d(c: Cons1D, params: &FluidParams) -> Result<Flux1D, ModelError> {
    Ok(flux_1d_prim(cons_to_prim_1d(c, params)?, params))
}

/// Characteristic speeds `(λ1, λ2)` for normal velocity `u`.
pub fn eigenvalues(u: f64, params: &FluidParams) -> (f64, f64) {
    let k = params.k();
    let e2k = params.eps2() * k;
    ((u - k) / (1.0 - e2k * u), (u + k) / (1.0 + e2k * u))
}

pub fn exact_source_2d(
    p: Prim2D,
    x: f64,
    y: f64,
    t: f64,
    geom: &GeometryProfile,
    params: &FluidParams,
) -> Result<Source2D, ModelError> {
    let h = geom.expansion_rate(t, params.kappa())?;
    let (gx, gy) = geom.grad_ln_b(x, y);
    let e2 = params.eps2();
    let k2 = params.k2();
    let v2 = p.u * p.u + p.v * p.v;
    let mf = params.momentum_factor();
    let lorentz = 1.0 - e2 * v2;
    Ok(Cons2D {
        u0: -h * p.rho * (1.0 + 3.0 * e2 * k2 + (1.0 - e2 * k2) * e2 * v2),
        u1: 2.0 * p.rho * (k2 * gx * lorentz - h * mf * p.u),
        u2: 2.0 * p.rho * (k2 * gy * lorentz - h * mf * p.v),
    })
}

/// Exact source `(S0, S1)` of the 1D system at position `x` and time `t`.
pub fn exact_source_1d(
    p: Prim1D,
    x: f64,
    t: f64,
    geom: &GeometryProfile,
    params: &FluidParams,
) -> Result<Source1D, ModelError> {
    exact_source_2d(p.into(), x, 0.5, t, geom, params).map(Cons1D::from)
}
