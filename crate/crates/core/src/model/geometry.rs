use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use super::ModelError;

/// Time dependence of the background: either `a ≡ 1` or `a(t) = |t|^kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expansion {
    Static,
    PowerLaw,
}

impl fmt::Display for Expansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expansion::Static => "static",
            Expansion::PowerLaw => "power_law",
        })
    }
}

impl FromStr for Expansion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "static" => Ok(Expansion::Static),
            "power_law" => Ok(Expansion::PowerLaw),
            _ => Err(format!("unknown expansion '{s}' (expected static or power_law)")),
        }
    }
}

/// Which side of the singularity `t = 0` a run lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeRegime {
    /// `t ∈ [1, ∞)`
    Expanding,
    /// `t ∈ [-1, 0)`
    Contracting,
}

impl TimeRegime {
    pub fn of(t: f64) -> Self {
        if t < 0.0 {
            TimeRegime::Contracting
        } else {
            TimeRegime::Expanding
        }
    }
}

/// Spatial profile `b(x)` or `b(x, y)` on the unit torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpatialProfile {
    /// `b ≡ 1`
    Flat,
    /// `b(x) = 1 + 0.01 sin(2πx)`
    Sine,
    /// `b(x) = 1 + 0.01 (sin(6πx) + cos(2πx))`
    TwoMode,
    /// `b(x, y) = 0.1 + 0.01 exp(-20(x-1/2)² - 20(y-1/2)²)`
    GaussianBump,
}

impl SpatialProfile {
    pub const ALL: [SpatialProfile; 4] =
        [SpatialProfile::Flat, SpatialProfile::Sine, SpatialProfile::TwoMode, SpatialProfile::GaussianBump];

    pub fn name(self) -> &'static str {
        match self {
            SpatialProfile::Flat => "flat",
            SpatialProfile::Sine => "sine",
            SpatialProfile::TwoMode => "two_mode",
            SpatialProfile::GaussianBump => "gaussian_bump",
        }
    }

    pub fn b(self, x: f64, y: f64) -> f64 {
        match self {
            SpatialProfile::Flat => 1.0,
            SpatialProfile::Sine => 1.0 + 0.01 * (2.0 * PI * x).sin(),
            SpatialProfile::TwoMode => 1.0 + 0.01 * ((6.0 * PI * x).sin() + (2.0 * PI * x).cos()),
            SpatialProfile::GaussianBump => 0.1 + 0.01 * gaussian(x, y),
        }
    }

    /// Analytic `(∂x b, ∂y b)`.
    pub fn grad_b(self, x: f64, y: f64) -> (f64, f64) {
        match self {
            SpatialProfile::Flat => (0.0, 0.0),
            SpatialProfile::Sine => (0.01 * 2.0 * PI * (2.0 * PI * x).cos(), 0.0),
            SpatialProfile::TwoMode => {
                (0.01 * (6.0 * PI * (6.0 * PI * x).cos() - 2.0 * PI * (2.0 * PI * x).sin()), 0.0)
            }
            SpatialProfile::GaussianBump => {
                let g = 0.01 * gaussian(x, y);
                (-40.0 * (x - 0.5) * g, -40.0 * (y - 0.5) * g)
            }
        }
    }

    pub fn is_flat(self) -> bool {
        matches!(self, SpatialProfile::Flat)
    }
}

fn gaussian(x: f64, y: f64) -> f64 {
    (-20.0 * (x - 0.5).powi(2) - 20.0 * (y - 0.5).powi(2)).exp()
}

impl fmt::Display for SpatialProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SpatialProfile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SpatialProfile::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| {
            let names: Vec<_> = SpatialProfile::ALL.iter().map(|p| p.name()).collect();
            format!("unknown geometry '{s}' (expected one of {})", names.join(", "))
        })
    }
}

/// Background geometry: the scale factor `a(t)` and the spatial profile `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeometryProfile {
    pub expansion: Expansion,
    pub spatial: SpatialProfile,
}

impl GeometryProfile {
    pub fn new(expansion: Expansion, spatial: SpatialProfile) -> Self {
        Self { expansion, spatial }
    }

    /// `a ≡ 1`, `b ≡ 1`: no source terms at all.
    pub fn homogeneous_static() -> Self {
        Self::new(Expansion::Static, SpatialProfile::Flat)
    }

    pub fn b(&self, x: f64, y: f64) -> f64 {
        self.spatial.b(x, y)
    }

    /// `B = ln b`
    pub fn ln_b(&self, x: f64, y: f64) -> f64 {
        self.b(x, y).ln()
    }

    /// `(∂x b / b, ∂y b / b)`
    pub fn grad_ln_b(&self, x: f64, y: f64) -> (f64, f64) {
        let b = self.b(x, y);
        let (bx, by) = self.spatial.grad_b(x, y);
        (bx / b, by / b)
    }

    /// Expansion rate `∂t a / a`; equals `kappa / t` for the power law.
    pub fn expansion_rate(&self, t: f64, kappa: f64) -> Result<f64, ModelError> {
        if t == 0.0 || !t.is_finite() {
            return Err(ModelError::SingularTime { t });
        }
        Ok(match self.expansion {
            Expansion::Static => 0.0,
            Expansion::PowerLaw => kappa / t,
        })
    }

    pub fn scale_factor(&self, t: f64, kappa: f64) -> Result<f64, ModelError> {
        if t == 0.0 || !t.is_finite() {
            return Err(ModelError::SingularTime { t });
        }
        Ok(match self.expansion {
            Expansion::Static => 1.0,
            Expansion::PowerLaw => t.abs().powf(kappa),
        })
    }
}
