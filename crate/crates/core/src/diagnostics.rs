//! Rescaled variables, steady-state residuals and error norms.

use thiserror::Error;

use crate::model::{FluidParams, GeometryProfile, Mesh, Prim2D, TimeRegime};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DiagnosticsError {
    #[error("snapshot at t = {t} is not in the {expected:?} regime")]
    WrongRegime { t: f64, expected: TimeRegime },
    #[error("expanding rescaling needs 3 eps^2 k^2 < 1 (got {value})")]
    SoundSpeedTooLarge { value: f64 },
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}

/// Exponents with `ρ = |t|^{-α} ρ̃` and, when known, `u = |t|^{-β} ũ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescaleExponents {
    pub alpha: f64,
    pub beta: Option<f64>,
    pub regime: TimeRegime,
}

impl RescaleExponents {
    /// `α = κ(1 + 3ε²k²)`, `β = κ(1 - 3ε²k²)`.
    pub fn expanding(params: &FluidParams) -> Result<Self, DiagnosticsError> {
        let s = 3.0 * params.eps().powi(2) * params.k().powi(2);
        if s >= 1.0 {
            return Err(DiagnosticsError::SoundSpeedTooLarge { value: s });
        }
        Ok(Self {
            alpha: params.kappa() * (1.0 + s),
            beta: Some(params.kappa() * (1.0 - s)),
            regime: TimeRegime::Expanding,
        })
    }

    /// `α = 2κ`; no velocity exponent is available.
    pub fn contracting(params: &FluidParams) -> Self {
        Self { alpha: 2.0 * params.kappa(), beta: None, regime: TimeRegime::Contracting }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RescaledFields {
    pub rho: Vec<f64>,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

/// `ρ̃ = t^α ρ`, `ũ = t^β u` (and `ṽ`) for an expanding snapshot.
pub fn rescale_expanding(prims: &[Prim2D], t: f64, params: &FluidParams) -> Result<RescaledFields, DiagnosticsError> {
    if TimeRegime::of(t) != TimeRegime::Expanding || t <= 0.0 {
        return Err(DiagnosticsError::WrongRegime { t, expected: TimeRegime::Expanding });
    }
    let e = RescaleExponents::expanding(params)?;
    let (fa, fb) = (t.powf(e.alpha), t.powf(e.beta.unwrap_or(0.0)));
    Ok(RescaledFields {
        rho: prims.iter().map(|p| fa * p.rho).collect(),
        u: prims.iter().map(|p| fb * p.u).collect(),
        v: prims.iter().map(|p| fb * p.v).collect(),
    })
}

/// `ρ̃ = |t|^{2κ} ρ` for a contracting snapshot.
pub fn rescale_contracting(prims: &[Prim2D], t: f64, params: &FluidParams) -> Result<Vec<f64>, DiagnosticsError> {
    if TimeRegime::of(t) != TimeRegime::Contracting {
        return Err(DiagnosticsError::WrongRegime { t, expected: TimeRegime::Contracting });
    }
    let f = t.abs().powf(RescaleExponents::contracting(params).alpha);
    Ok(prims.iter().map(|p| f * p.rho).collect())
}

/// Distance from `u` to the nearest of `-1/ε`, `0`, `1/ε`.
pub fn velocity_limit_distance(u: f64, params: &FluidParams) -> f64 {
    let c = params.light_speed();
    u.abs().min((u - c).abs()).min((u + c).abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyResidual {
    pub c_fit: f64,
    pub residual: f64,
}

/// Fit `ρ ≈ C b²` with `C = mean(ρ/b²)`; the residual is
/// `max |ρ/(C b²) - 1| + max |u| (+ max |v|)`.
pub fn steady_residual(rho: &[f64], velocities: &[&[f64]], mesh: &Mesh, geom: &GeometryProfile) -> SteadyResidual {
    let b2: Vec<f64> = mesh.centers().map(|(x, y)| geom.b(x, y).powi(2)).collect();
    let n = rho.len() as f64;
    let c_fit = rho.iter().zip(&b2).map(|(r, b)| r / b).sum::<f64>() / n;
    let shape = rho.iter().zip(&b2).map(|(r, b)| (r / (c_fit * b) - 1.0).abs()).fold(0.0, f64::max);
    let motion: f64 = velocities.iter().map(|v| v.iter().map(|x| x.abs()).fold(0.0, f64::max)).sum();
    SteadyResidual { c_fit, residual: shape + motion }
}

/// Cell averages of a periodic 1D field on `n` cells, from any finer or coarser field.
pub fn restrict_1d(field: &[f64], n: usize) -> Vec<f64> {
    let m = field.len();
    // work in units of 1/(n m): coarse cell c = [c m, (c+1) m), fine cell f = [f n, (f+1) n)
    (0..n)
        .map(|c| {
            let (lo, hi) = (c * m, (c + 1) * m);
            let mut sum = 0.0;
            for (f, v) in field.iter().enumerate().take(hi.div_ceil(n)).skip(lo / n) {
                let overlap = hi.min((f + 1) * n).saturating_sub(lo.max(f * n));
                sum += overlap as f64 * v;
            }
            sum / m as f64
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    pub l1: f64,
    pub linf: f64,
}

/// `Δx`-weighted L1 and max norms of `candidate - reference`; a 1D reference on
/// a different grid is first restricted to the candidate grid by cell averaging.
pub fn error_norms(candidate: &[f64], reference: &[f64]) -> Result<ErrorNorms, DiagnosticsError> {
    if candidate.is_empty() || reference.is_empty() {
        return Err(DiagnosticsError::GridMismatch("empty field".into()));
    }
    let restricted;
    let reference = if reference.len() == candidate.len() {
        reference
    } else {
        restricted = restrict_1d(reference, candidate.len());
        &restricted
    };
    let w = 1.0 / candidate.len() as f64;
    let mut norms = ErrorNorms { l1: 0.0, linf: 0.0 };
    for (a, b) in candidate.iter().zip(reference) {
        let d = (a - b).abs();
        norms.l1 += w * d;
        norms.linf = norms.linf.max(d);
    }
    Ok(norms)
}

/// Min, max and mean of a field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

impl FieldStats {
    pub fn of(field: &[f64]) -> Self {
        let mut s = FieldStats { min: f64::INFINITY, max: f64::NEG_INFINITY, mean: 0.0 };
        for &x in field {
            s.min = s.min.min(x);
            s.max = s.max.max(x);
            s.mean += x;
        }
        s.mean /= field.len() as f64;
        s
    }

    /// `(max - min) / mean`
    pub fn relative_variation(&self) -> f64 {
        (self.max - self.min) / self.mean
    }

    pub fn max_abs(&self) -> f64 {
        self.min.abs().max(self.max.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Expansion, SpatialProfile};

    fn params() -> FluidParams {
        FluidParams::new(1.0, 0.5, 2.0).unwrap()
    }

    #[test]
    fn expanding_exponents() {
        let e = RescaleExponents::expanding(&params()).unwrap();
        assert_eq!(e.alpha, 3.5);
        assert_eq!(e.beta, Some(0.5));
        let n = RescaleExponents::expanding(&FluidParams::newtonian(0.5, 2.0).unwrap()).unwrap();
        assert_eq!((n.alpha, n.beta), (2.0, Some(2.0)));
        assert!(RescaleExponents::expanding(&FluidParams::new(1.0, 0.7, 2.0).unwrap()).is_err());
        assert_eq!(RescaleExponents::contracting(&params()).alpha, 4.0);
    }

    #[test]
    fn rescaling_at_unit_time_is_identity() {
        let p = vec![Prim2D::new(1.3, 0.2, -0.1), Prim2D::new(0.4, -0.3, 0.0)];
        let r = rescale_expanding(&p, 1.0, &params()).unwrap();
        assert_eq!(r.rho, vec![1.3, 0.4]);
        assert_eq!(r.u, vec![0.2, -0.3]);
        assert_eq!(rescale_contracting(&p, -1.0, &params()).unwrap(), vec![1.3, 0.4]);
        assert!(rescale_expanding(&p, -0.5, &params()).is_err());
        assert!(rescale_contracting(&p, 2.0, &params()).is_err());
    }

    #[test]
    fn contracting_factor_is_t_to_the_fourth() {
        let p = vec![Prim2D::new(2.0, 0.0, 0.0)];
        let r = rescale_contracting(&p, -0.5, &params()).unwrap();
        assert!((r[0] - 2.0 * 0.0625).abs() < 1e-16);
    }

    #[test]
    fn velocity_distance() {
        let p = params();
        assert_eq!(velocity_limit_distance(0.97, &p), 0.030000000000000027);
        assert_eq!(velocity_limit_distance(-0.01, &p), 0.01);
    }

    #[test]
    fn steady_residual_of_scaled_profile() {
        let mesh = Mesh::one_d(50).unwrap();
        let geom = GeometryProfile::new(Expansion::Static, SpatialProfile::TwoMode);
        let rho: Vec<f64> = mesh.centers().map(|(x, y)| 2.0 * geom.b(x, y).powi(2)).collect();
        let u = vec![0.0; 50];
        let r = steady_residual(&rho, &[&u], &mesh, &geom);
        assert!((r.c_fit - 2.0).abs() < 1e-14);
        assert!(r.residual < 1e-14);
    }

    #[test]
    fn restriction_preserves_integral() {
        let fine: Vec<f64> = (0..5000).map(|i| (i as f64 * 0.37).sin()).collect();
        for n in [400, 2500, 3, 7] {
            let c = restrict_1d(&fine, n);
            let a: f64 = fine.iter().sum::<f64>() / 5000.0;
            let b: f64 = c.iter().sum::<f64>() / n as f64;
            assert!((a - b).abs() < 1e-14, "{n}");
        }
        assert_eq!(restrict_1d(&[1.0, 3.0, 5.0, 7.0], 2), vec![2.0, 6.0]);
    }

    #[test]
    fn norms_of_offset() {
        let a = vec![1.5; 10];
        let b = vec![1.0; 10];
        let n = error_norms(&a, &b).unwrap();
        assert!((n.l1 - 0.5).abs() < 1e-15);
        assert_eq!(n.linf, 0.5);
        assert_eq!(error_norms(&a, &a).unwrap(), ErrorNorms { l1: 0.0, linf: 0.0 });
    }
}
