//! Built-in initial conditions and the default settings of each named test.

use std::f64::consts::PI;

use crate::model::{Dim, Expansion, GeometryProfile, Mesh, Prim2D, SpatialProfile};
use crate::scheme::FluxScheme;

/// Initial data profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// `ρ = 1` for `x ≤ 1/2`, `0.9` otherwise; `u = 0`.
    RiemannJump,
    /// `ρ = 1 + sin(6πx/7) cos(7πx/2)`, `u = 0`.
    Oscillatory,
    /// `ρ = b²`, `u = 0`.
    SteadyB2,
    /// `ρ = b² + 0.02 cos(30πx)` on `[0.2, 0.7]`, `b²` elsewhere; `u = 0`.
    PerturbedB2,
    /// `ρ = 0.1 + 0.1 exp(-20(x-1/2)² - 20(y-1/2)²)`, `u = v = 0`.
    Gaussian2D,
    /// `ρ = 1 + 0.01 sin(2πx)cos(2πx) sin(2πy)cos(2πy)`, `u = v = 0`.
    Trig2D,
}

impl Profile {
    pub fn sample(self, x: f64, y: f64, geom: &GeometryProfile) -> Prim2D {
        let rho = match self {
            Profile::RiemannJump => {
                if x <= 0.5 {
                    1.0
                } else {
                    0.9
                }
            }
            Profile::Oscillatory => 1.0 + (6.0 / 7.0 * PI * x).sin() * (3.5 * PI * x).cos(),
            Profile::SteadyB2 => geom.b(x, y).powi(2),
            Profile::PerturbedB2 => {
                let b2 = geom.b(x, y).powi(2);
                if (0.2..=0.7).contains(&x) {
                    b2 + 0.02 * (30.0 * PI * x).cos()
                } else {
                    b2
                }
            }
            Profile::Gaussian2D => 0.1 + 0.1 * (-20.0 * (x - 0.5).powi(2) - 20.0 * (y - 0.5).powi(2)).exp(),
            Profile::Trig2D => 1.0 + 0.01 * (trig(x) * trig(y)),
        };
        Prim2D::new(rho, 0.0, 0.0)
    }

    /// Cell-centre samples in mesh storage order.
    pub fn sample_mesh(self, mesh: &Mesh, geom: &GeometryProfile) -> Vec<Prim2D> {
        mesh.centers().map(|(x, y)| self.sample(x, y, geom)).collect()
    }
}

fn trig(x: f64) -> f64 {
    (2.0 * PI * x).sin() * (2.0 * PI * x).cos()
}

/// A named test: initial profile plus the default settings used with it.
#[derive(Debug, Clone, PartialEq)]
pub struct TestCase {
    pub id: &'static str,
    pub summary: &'static str,
    pub profile: Profile,
    pub dim: Dim,
    pub n: usize,
    pub k: f64,
    pub expansion: Expansion,
    pub spatial: SpatialProfile,
    pub scheme: FluxScheme,
    pub t0: f64,
    pub t_end: f64,
    pub snapshots: &'static [f64],
    pub cfl: f64,
    pub allow_cfl_above_half: bool,
}

const fn case_1d(id: &'static str, summary: &'static str, profile: Profile) -> TestCase {
    TestCase {
        id,
        summary,
        profile,
        dim: Dim::One,
        n: 100,
        k: 0.5,
        expansion: Expansion::PowerLaw,
        spatial: SpatialProfile::Flat,
        scheme: FluxScheme::Hll,
        t0: 1.0,
        t_end: 1.1,
        snapshots: &[],
        cfl: 0.3,
        allow_cfl_above_half: false,
    }
}

const fn case_2d(id: &'static str, summary: &'static str, profile: Profile) -> TestCase {
    TestCase {
        dim: Dim::Two,
        n: 100,
        t_end: 60.0,
        snapshots: &[8.0, 16.0, 50.0, 60.0],
        cfl: 0.45,
        ..case_1d(id, summary, profile)
    }
}

pub const TEST_CASES: &[TestCase] = &[
    TestCase {
        k: 0.7,
        ..case_1d("expanding_riemann", "single density jump on an expanding flat background", Profile::RiemannJump)
    },
    TestCase {
        n: 500,
        t_end: 50.0,
        snapshots: &[2.0, 5.0, 10.0, 50.0],
        ..case_1d("oscillatory_density", "oscillating density on an expanding flat background", Profile::Oscillatory)
    },
    TestCase {
        n: 500,
        t0: -1.0,
        t_end: -1e-6,
        snapshots: &[-1e-2, -1e-3, -1e-4, -1e-5, -1e-6],
        ..case_1d(
            "contracting_oscillatory",
            "oscillating density on a contracting flat background",
            Profile::Oscillatory,
        )
    },
    TestCase {
        expansion: Expansion::Static,
        spatial: SpatialProfile::Sine,
        scheme: FluxScheme::WellBalanced,
        t_end: 10.0,
        snapshots: &[10.0],
        cfl: 0.6,
        allow_cfl_above_half: true,
        ..case_1d("steady_b2", "steady state rho = b^2 with a = 1", Profile::SteadyB2)
    },
    TestCase {
        expansion: Expansion::Static,
        spatial: SpatialProfile::TwoMode,
        scheme: FluxScheme::WellBalanced,
        t_end: 10.0,
        snapshots: &[10.0],
        ..case_1d("perturbed_steady", "perturbed steady state with a = 1", Profile::PerturbedB2)
    },
    TestCase {
        spatial: SpatialProfile::TwoMode,
        scheme: FluxScheme::WellBalanced,
        t_end: 20.0,
        snapshots: &[10.0, 20.0],
        ..case_1d(
            "perturbed_steady_expanding",
            "perturbed steady state on an expanding background",
            Profile::PerturbedB2,
        )
    },
    case_2d("gaussian_2d", "2D Gaussian density bump on an expanding flat background", Profile::Gaussian2D),
    TestCase {
        t0: -1.0,
        t_end: -1e-8,
        snapshots: &[-1e-1, -1e-3, -1e-5, -1e-8],
        ..case_2d("trig_2d_contracting", "2D trigonometric data on a contracting flat background", Profile::Trig2D)
    },
    TestCase {
        expansion: Expansion::Static,
        spatial: SpatialProfile::GaussianBump,
        scheme: FluxScheme::WellBalanced,
        ..case_2d("trig_2d", "2D trigonometric data over a Gaussian geometry with a = 1", Profile::Trig2D)
    },
    TestCase {
        spatial: SpatialProfile::GaussianBump,
        scheme: FluxScheme::WellBalanced,
        ..case_2d("trig_2d_expanding", "2D trigonometric data over a Gaussian geometry, expanding", Profile::Trig2D)
    },
];

pub fn find_test(id: &str) -> Option<&'static TestCase> {
    TEST_CASES.iter().find(|c| c.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat() -> GeometryProfile {
        GeometryProfile::homogeneous_static()
    }

    #[test]
    fn riemann_sides() {
        assert_eq!(Profile::RiemannJump.sample(0.25, 0.5, &flat()).rho, 1.0);
        assert_eq!(Profile::RiemannJump.sample(0.75, 0.5, &flat()).rho, 0.9);
    }

    #[test]
    fn endpoint_values() {
        let g = GeometryProfile::new(Expansion::Static, SpatialProfile::Sine);
        assert_eq!(Profile::SteadyB2.sample(0.0, 0.5, &g), Prim2D::new(1.0, 0.0, 0.0));
        assert_eq!(Profile::Oscillatory.sample(0.0, 0.5, &flat()).rho, 1.0);
    }

    #[test]
    fn perturbation_window() {
        let g = GeometryProfile::new(Expansion::Static, SpatialProfile::TwoMode);
        let b2 = g.b(0.1, 0.5).powi(2);
        assert_eq!(Profile::PerturbedB2.sample(0.1, 0.5, &g).rho, b2);
        let b2 = g.b(0.4, 0.5).powi(2);
        let want = b2 + 0.02 * (12.0 * PI).cos();
        assert!((Profile::PerturbedB2.sample(0.4, 0.5, &g).rho - want).abs() < 1e-15);
    }

    #[test]
    fn trig_data_is_symmetric() {
        for (x, y) in [(0.1, 0.3), (0.35, 0.85), (0.05, 0.95)] {
            assert_eq!(Profile::Trig2D.sample(x, y, &flat()), Profile::Trig2D.sample(y, x, &flat()));
        }
    }

    #[test]
    fn ids_are_unique_and_findable() {
        for c in TEST_CASES {
            assert_eq!(find_test(c.id).unwrap().id, c.id);
            assert_eq!(TEST_CASES.iter().filter(|d| d.id == c.id).count(), 1);
            assert!(c.snapshots.iter().all(|&s| s > c.t0 && s <= c.t_end), "{}", c.id);
        }
        assert!(find_test("nope").is_none());
    }
}
