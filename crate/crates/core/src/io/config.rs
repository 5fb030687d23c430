//! Line-oriented `key = value` run configuration.
//!
//! Only `test` is required; every other key defaults to the settings of the
//! named test case (see [`TEST_CASES`](super::initial::TEST_CASES)).

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;

use super::initial::{find_test, TestCase, TEST_CASES};
use crate::driver::RunSpec;
use crate::model::{Dim, Expansion, FluidParams, GeometryProfile, Mesh, SpatialProfile};
use crate::reconstruction::BlendParams;
use crate::riemann::RiemannOptions;
use crate::scheme::{FluxScheme, SchemeOptions, SpaceOrder};
use crate::timestep::{Integrator, StepControl};

pub const FORMAT_VERSION: u32 = 1;

pub const KEYS: &[&str] = &[
    "test",
    "N",
    "Ny",
    "scheme",
    "order",
    "integrator",
    "eps",
    "k",
    "kappa",
    "expansion",
    "geometry",
    "t0",
    "t_end",
    "snapshots",
    "cfl",
    "allow_cfl_above_half",
    "c_t",
    "theta",
    "alpha_src",
    "m",
    "M",
    "paper_literal_psi",
    "paper_literal_q1",
    "output_dir",
    "format_version",
];

#[derive(Debug, Clone, PartialEq, Error)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

/// A fully resolved configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub test: &'static TestCase,
    pub n: usize,
    pub ny: usize,
    pub scheme: FluxScheme,
    pub space_order: SpaceOrder,
    pub integrator: Integrator,
    pub eps: f64,
    pub k: f64,
    pub kappa: f64,
    pub expansion: Expansion,
    pub geometry: SpatialProfile,
    pub t0: f64,
    pub t_end: f64,
    pub snapshots: Vec<f64>,
    pub cfl: f64,
    pub allow_cfl_above_half: bool,
    pub c_t: f64,
    pub theta: f64,
    pub alpha_src: f64,
    pub m: f64,
    pub big_m: f64,
    pub paper_literal_psi: bool,
    pub paper_literal_q1: bool,
    pub output_dir: Option<PathBuf>,
    pub format_version: u32,
}

struct Entries {
    map: BTreeMap<&'static str, (String, usize)>,
}

impl Entries {
    fn line(&self, key: &str) -> Option<usize> {
        self.map.get(key).map(|e| e.1)
    }

    fn get<T>(&self, key: &'static str, parse: impl Fn(&str) -> Result<T, String>) -> Result<Option<T>, ConfigError> {
        match self.map.get(key) {
            None => Ok(None),
            Some((raw, line)) => parse(raw).map(Some).map_err(|reason| ConfigError {
                line: Some(*line),
                message: format!("invalid value for {key} = '{raw}': {reason}"),
            }),
        }
    }
}

fn num<T: FromStr>(raw: &str) -> Result<T, String> {
    raw.parse::<T>().map_err(|_| "not a number".to_string())
}

fn flag(raw: &str) -> Result<bool, String> {
    match raw {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err("expected true or false".into()),
    }
}

fn list(raw: &str) -> Result<Vec<f64>, String> {
    if raw.trim().is_empty() {
        return Ok(Vec::new());
    }
    raw.split(',').map(|s| num::<f64>(s.trim())).collect()
}

fn order(raw: &str) -> Result<SpaceOrder, String> {
    match raw {
        "1" => Ok(SpaceOrder::First),
        "2" => Ok(SpaceOrder::Second),
        _ => Err("expected 1 or 2".into()),
    }
}

fn parsed<T: FromStr<Err = String>>(raw: &str) -> Result<T, String> {
    raw.parse()
}

fn tokenize(text: &str) -> Result<Entries, ConfigError> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| ConfigError { line: Some(line), message };
        let (key, value) =
            content.split_once('=').ok_or_else(|| err(format!("expected 'key = value', got '{content}'")))?;
        let key = key.trim();
        let known = KEYS.iter().find(|k| **k == key).ok_or_else(|| err(format!("unknown key '{key}'")))?;
        if let Some((_, first)) = map.insert(*known, (value.trim().to_string(), line)) {
            return Err(err(format!("duplicate key '{key}' (first set on line {first})")));
        }
    }
    Ok(Entries { map })
}

pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    let e = tokenize(text)?;
    let test = e
        .get("test", |raw| {
            find_test(raw).ok_or_else(|| {
                let ids: Vec<_> = TEST_CASES.iter().map(|c| c.id).collect();
                format!("unknown test (expected one of {})", ids.join(", "))
            })
        })?
        .ok_or(ConfigError { line: None, message: "missing required key 'test'".into() })?;

    let n = e.get("N", num::<usize>)?.unwrap_or(test.n);
    let two_d = test.dim == Dim::Two;
    let ny = e.get("Ny", num::<usize>)?.unwrap_or(if two_d { n } else { 1 });
    let integrator_default = if two_d { Integrator::SspRk3 } else { Integrator::Rk4 };
    let cfg = Config {
        test,
        n,
        ny,
        scheme: e.get("scheme", parsed::<FluxScheme>)?.unwrap_or(test.scheme),
        space_order: e.get("order", order)?.unwrap_or(SpaceOrder::Second),
        integrator: e.get("integrator", parsed::<Integrator>)?.unwrap_or(integrator_default),
        eps: e.get("eps", num)?.unwrap_or(1.0),
        k: e.get("k", num)?.unwrap_or(test.k),
        kappa: e.get("kappa", num)?.unwrap_or(2.0),
        expansion: e.get("expansion", parsed::<Expansion>)?.unwrap_or(test.expansion),
        geometry: e.get("geometry", parsed::<SpatialProfile>)?.unwrap_or(test.spatial),
        t0: e.get("t0", num)?.unwrap_or(test.t0),
        t_end: e.get("t_end", num)?.unwrap_or(test.t_end),
        snapshots: e.get("snapshots", list)?.unwrap_or_else(|| test.snapshots.to_vec()),
        cfl: e.get("cfl", num)?.unwrap_or(test.cfl),
        allow_cfl_above_half: e.get("allow_cfl_above_half", flag)?.unwrap_or(test.allow_cfl_above_half),
        c_t: e.get("c_t", num)?.unwrap_or(crate::timestep::DEFAULT_C_T),
        theta: e.get("theta", num)?.unwrap_or(crate::riemann::DEFAULT_THETA),
        alpha_src: e.get("alpha_src", num)?.unwrap_or(crate::wb_source::DEFAULT_ALPHA_SRC),
        m: e.get("m", num)?.unwrap_or(BlendParams::default().m),
        big_m: e.get("M", num)?.unwrap_or(BlendParams::default().big_m),
        paper_literal_psi: e.get("paper_literal_psi", flag)?.unwrap_or(false),
        paper_literal_q1: e.get("paper_literal_q1", flag)?.unwrap_or(false),
        output_dir: e.get("output_dir", |s| Ok(PathBuf::from(s)))?,
        format_version: e.get("format_version", num::<u32>)?.unwrap_or(FORMAT_VERSION),
    };
    cfg.validate(&e)?;
    Ok(cfg)
}

impl Config {
    /// Defaults of a named test with nothing overridden.
    pub fn for_test(id: &str) -> Result<Self, ConfigError> {
        parse_config(&format!("test = {id}"))
    }

    fn validate(&self, e: &Entries) -> Result<(), ConfigError> {
        let fail =
            |key: &str, message: String| Err(ConfigError { line: e.line(key), message: format!("{key}: {message}") });
        let min_cells = if self.space_order == SpaceOrder::Second { 3 } else { 1 };
        if self.n < min_cells {
            return fail("N", format!("needs at least {min_cells} cells, got {}", self.n));
        }
        if self.test.dim == Dim::Two && self.ny < min_cells {
            return fail("Ny", format!("needs at least {min_cells} cells, got {}", self.ny));
        }
        if self.test.dim == Dim::One && self.ny != 1 {
            return fail("Ny", "only meaningful for 2D tests".into());
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return fail("eps", format!("must be positive, got {}", self.eps));
        }
        if !(self.k > 0.0 && self.k.is_finite()) {
            return fail("k", format!("must be positive, got {}", self.k));
        }
        if self.eps * self.k >= 1.0 {
            let key = if e.line("k").is_some() { "k" } else { "eps" };
            return fail(
                key,
                format!("sound speed k = {} must be below the light speed 1/eps = {}", self.k, 1.0 / self.eps),
            );
        }
        if !(self.kappa > 0.0 && self.kappa.is_finite()) {
            return fail("kappa", format!("must be positive, got {}", self.kappa));
        }
        if !self.t0.is_finite() || (self.t0 == 0.0 && self.expansion != Expansion::Static) {
            return fail("t0", format!("must be finite, and nonzero unless expansion = static; got {}", self.t0));
        }
        if !(self.t_end >= self.t0 && self.t_end.is_finite()) {
            return fail("t_end", format!("must not be before t0 = {}", self.t0));
        }
        if self.t0 < 0.0 && self.t_end >= 0.0 {
            return fail("t_end", format!("a run starting at t0 = {} must end before t = 0", self.t0));
        }
        if let Some(s) = self.snapshots.iter().find(|&&s| !(s > self.t0 && s <= self.t_end)) {
            return fail("snapshots", format!("time {s} is outside ({}, {}]", self.t0, self.t_end));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return fail("cfl", format!("must lie in (0, 1], got {}", self.cfl));
        }
        if self.cfl >= 0.5 && !self.allow_cfl_above_half {
            return fail(
                "cfl",
                format!(
                    "{} violates the strict bound cfl < 1/2; set allow_cfl_above_half = true to override",
                    self.cfl
                ),
            );
        }
        if !(self.c_t > 0.0 && self.c_t < 1.0) {
            return fail("c_t", format!("must lie in (0, 1), got {}", self.c_t));
        }
        if !(self.theta >= 0.0 && self.theta.is_finite()) {
            return fail("theta", format!("must be non-negative, got {}", self.theta));
        }
        if !(self.alpha_src > 0.0) {
            return fail("alpha_src", format!("must be positive, got {}", self.alpha_src));
        }
        if !(self.m > 0.0) {
            return fail("m", format!("must be positive, got {}", self.m));
        }
        if !(self.big_m > self.m && self.big_m.is_finite()) {
            return fail("M", format!("must exceed m = {}, got {}", self.m, self.big_m));
        }
        if self.format_version != FORMAT_VERSION {
            return fail("format_version", format!("only version {FORMAT_VERSION} is supported"));
        }
        Ok(())
    }

    pub fn mesh(&self) -> Mesh {
        let mesh = match self.test.dim {
            Dim::One => Mesh::one_d(self.n),
            Dim::Two => Mesh::two_d(self.n, self.ny),
        };
        mesh.expect("cell counts validated")
    }

    pub fn params(&self) -> FluidParams {
        FluidParams::new(self.eps, self.k, self.kappa).expect("parameters validated")
    }

    pub fn geometry(&self) -> GeometryProfile {
        GeometryProfile::new(self.expansion, self.geometry)
    }

    pub fn scheme_options(&self) -> SchemeOptions {
        SchemeOptions {
            flux: self.scheme,
            space_order: self.space_order,
            riemann: RiemannOptions { theta: self.theta, ..RiemannOptions::default() },
            alpha_src: self.alpha_src,
            blend: BlendParams { m: self.m, big_m: self.big_m, literal_psi: self.paper_literal_psi },
            literal_q1: self.paper_literal_q1,
        }
    }

    pub fn run_spec(&self) -> RunSpec {
        let mesh = self.mesh();
        let geom = self.geometry();
        let mut control = StepControl::new(self.cfl, self.t_end);
        control.c_t = self.c_t;
        control.allow_cfl_above_half = self.allow_cfl_above_half;
        RunSpec {
            mesh,
            params: self.params(),
            geom,
            scheme: self.scheme_options(),
            integrator: self.integrator,
            control,
            t0: self.t0,
            snapshot_times: self.snapshots.clone(),
            initial: self.test.profile.sample_mesh(&mesh, &geom),
        }
    }

    /// Every setting as `(key, value)` in a fixed order.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        let order = match self.space_order {
            SpaceOrder::First => "1",
            SpaceOrder::Second => "2",
        };
        let snaps: Vec<String> = self.snapshots.iter().map(|s| s.to_string()).collect();
        vec![
            ("test", self.test.id.to_string()),
            ("N", self.n.to_string()),
            ("Ny", self.ny.to_string()),
            ("scheme", self.scheme.to_string()),
            ("order", order.to_string()),
            ("integrator", self.integrator.to_string()),
            ("eps", self.eps.to_string()),
            ("k", self.k.to_string()),
            ("kappa", self.kappa.to_string()),
            ("expansion", self.expansion.to_string()),
            ("geometry", self.geometry.to_string()),
            ("t0", self.t0.to_string()),
            ("t_end", self.t_end.to_string()),
            ("snapshots", snaps.join(",")),
            ("cfl", self.cfl.to_string()),
            ("allow_cfl_above_half", self.allow_cfl_above_half.to_string()),
            ("c_t", self.c_t.to_string()),
            ("theta", self.theta.to_string()),
            ("alpha_src", self.alpha_src.to_string()),
            ("m", self.m.to_string()),
            ("M", self.big_m.to_string()),
            ("paper_literal_psi", self.paper_literal_psi.to_string()),
            ("paper_literal_q1", self.paper_literal_q1.to_string()),
        ]
    }

    /// The echo rendered back into config syntax.
    pub fn to_text(&self) -> String {
        self.echo().iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_fills_defaults() {
        let c = parse_config("test = expanding_riemann\nN = 100\n").unwrap();
        assert_eq!((c.cfl, c.k, c.eps, c.kappa), (0.3, 0.7, 1.0, 2.0));
        assert_eq!(c.integrator, Integrator::Rk4);
        assert_eq!(c.space_order, SpaceOrder::Second);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let c = parse_config("# header\n\ntest = oscillatory_density # trailing\n  N = 64\n").unwrap();
        assert_eq!(c.n, 64);
    }

    #[test]
    fn cfl_above_half_needs_override() {
        let err = parse_config("test = expanding_riemann\ncfl = 0.6\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        assert!(err.message.contains("allow_cfl_above_half"));
        assert!(parse_config("test = expanding_riemann\ncfl = 0.6\nallow_cfl_above_half = true\n").is_ok());
    }

    #[test]
    fn superluminal_sound_speed_is_rejected() {
        let err = parse_config("test = expanding_riemann\nk = 2\neps = 1\n").unwrap_err();
        assert_eq!(err.line, Some(2));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_config("test = steady_b2\nbogus = 3\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        assert!(err.to_string().starts_with("line 2: unknown key"));
        let err = parse_config("N = 10\n").unwrap_err();
        assert_eq!(err.line, None);
        assert!(err.message.contains("missing required key 'test'"));
        let err = parse_config("test = steady_b2\n\nN = ten\n").unwrap_err();
        assert_eq!(err.line, Some(3));
        let err = parse_config("test = steady_b2\nN 10\n").unwrap_err();
        assert_eq!(err.line, Some(2));
        let err = parse_config("test = steady_b2\nsnapshots = 10.5\n").unwrap_err();
        assert_eq!(err.line, Some(2));
    }

    #[test]
    fn every_builtin_test_has_a_valid_default_config() {
        for c in TEST_CASES {
            let cfg = Config::for_test(c.id).unwrap();
            cfg.run_spec().validate().unwrap();
        }
    }

    #[test]
    fn echo_parses_back_to_the_same_config() {
        let c = parse_config("test = trig_2d\nN = 20\ntheta = 0\nM = 12\n").unwrap();
        assert_eq!(parse_config(&c.to_text()).unwrap(), c);
    }
}
