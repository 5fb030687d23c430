use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use flrw_core::diagnostics::error_norms;
use flrw_core::driver::{run, run_observed, RunObserver, Snapshot};
use flrw_core::io::config::{parse_config, Config};
use flrw_core::io::initial::TEST_CASES;
use flrw_core::io::report::{report_csv, ReportRow};
use flrw_core::io::snapshot::SnapshotRecord;
use flrw_core::model::{Dim, FluidParams, GeometryProfile, GridState, Mesh};

#[derive(Parser)]
#[command(name = "flrw", version, about = "Relativistic isothermal fluid flow on FLRW backgrounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configuration and write snapshots plus a report.
    Run {
        config: PathBuf,
        /// Output directory (overrides `output_dir`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the built-in tests and their defaults.
    ListTests,
    /// Print L1 and max norms of the difference in each shared column.
    Compare { a: PathBuf, b: PathBuf },
    /// Density errors of a 1D configuration on several grids against a fine reference.
    Convergence {
        config: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "50,100,200,400")]
        grids: Vec<usize>,
        #[arg(long, default_value_t = 5000)]
        reference: usize,
    },
}

enum Failure {
    Config(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Runtime(_) => 3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, out } => cmd_run(&config, out),
        Command::ListTests => {
            list_tests();
            Ok(())
        }
        Command::Compare { a, b } => cmd_compare(&a, &b),
        Command::Convergence { config, grids, reference } => cmd_convergence(&config, &grids, reference),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Config(m) | Failure::Runtime(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}

fn load_config(path: &Path) -> Result<Config, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

struct SnapshotWriter<'a> {
    dir: &'a Path,
    params: FluidParams,
    geom: GeometryProfile,
    mesh: Mesh,
    echo: Vec<(&'static str, String)>,
    rows: Vec<ReportRow>,
    written: usize,
}

impl SnapshotWriter<'_> {
    fn write(&mut self, name: &str, state: &GridState, requested: f64) -> Result<(), String> {
        let rec = SnapshotRecord::from_state(state, &self.params, &self.geom, &self.echo).map_err(|e| e.to_string())?;
        rec.write_file(&self.dir.join(name)).map_err(|e| e.to_string())?;
        self.rows.push(ReportRow::from_record(&rec, requested, &self.mesh, &self.geom).map_err(|e| e.to_string())?);
        Ok(())
    }
}

impl RunObserver for SnapshotWriter<'_> {
    fn on_snapshot(&mut self, snap: &Snapshot) -> Result<(), String> {
        self.written += 1;
        let name = format!("snapshot_{:03}.csv", self.written);
        self.write(&name, &snap.state, snap.requested)
    }
}

fn cmd_run(config: &Path, out: Option<PathBuf>) -> Result<(), Failure> {
    let cfg = load_config(config)?;
    let dir = out.or_else(|| cfg.output_dir.clone()).unwrap_or_else(|| PathBuf::from("output").join(cfg.test.id));
    fs::create_dir_all(&dir).map_err(|e| Failure::Runtime(format!("{}: {e}", dir.display())))?;
    let spec = cfg.run_spec();
    let echo = cfg.echo();
    fs::write(dir.join("config.txt"), cfg.to_text())
        .map_err(|e| Failure::Runtime(format!("{}: {e}", dir.join("config.txt").display())))?;

    let mut writer = SnapshotWriter {
        dir: &dir,
        params: spec.params,
        geom: spec.geom,
        mesh: spec.mesh,
        echo,
        rows: Vec::new(),
        written: 0,
    };
    let result = run_observed(&spec, &mut writer).map_err(|e| Failure::Runtime(e.to_string()))?;
    writer.write("final.csv", &result.final_state, spec.t_end()).map_err(Failure::Runtime)?;
    writer.write("initial.csv", &result.initial, spec.t0).map_err(Failure::Runtime)?;
    writer.rows.rotate_right(1);
    let report = dir.join("report.csv");
    fs::write(&report, report_csv(&writer.rows)).map_err(|e| Failure::Runtime(format!("{}: {e}", report.display())))?;
    println!(
        "{}: {} steps to t = {}, {} snapshots written to {}",
        cfg.test.id,
        result.steps,
        result.final_state.t,
        result.snapshots.len(),
        dir.display()
    );
    Ok(())
}

fn list_tests() {
    let mut out = io::stdout().lock();
    let _ = writeln!(
        out,
        "{:<28} {:>3} {:>5} {:>4} {:<10} {:<13} {:<7} {:>6} {:>8}  summary",
        "id", "dim", "N", "k", "expansion", "geometry", "scheme", "t0", "t_end"
    );
    for c in TEST_CASES {
        let dim = if c.dim == Dim::One { "1D" } else { "2D" };
        let _ = writeln!(
            out,
            "{:<28} {:>3} {:>5} {:>4} {:<10} {:<13} {:<7} {:>6} {:>8}  {}",
            c.id,
            dim,
            c.n,
            c.k,
            c.expansion.to_string(),
            c.spatial.to_string(),
            c.scheme.to_string(),
            c.t0,
            c.t_end,
            c.summary
        );
    }
}

fn cmd_compare(a: &Path, b: &Path) -> Result<(), Failure> {
    let ra = SnapshotRecord::read_file(a).map_err(|e| Failure::Config(e.to_string()))?;
    let rb = SnapshotRecord::read_file(b).map_err(|e| Failure::Config(e.to_string()))?;
    if ra.ny != rb.ny || (ra.ny > 1 && ra.nx != rb.nx) {
        return Err(Failure::Config(format!("grids {}x{} and {}x{} cannot be compared", ra.nx, ra.ny, rb.nx, rb.ny)));
    }
    println!("t_a = {:e}, t_b = {:e}", ra.t, rb.t);
    println!("{:<10} {:>24} {:>24}", "column", "L1", "Linf");
    for name in ra.columns.iter().filter(|c| !matches!(c.as_str(), "x" | "y")) {
        let Ok(cb) = rb.column(name) else { continue };
        let ca = ra.column(name).expect("column listed");
        let n = error_norms(&ca, &cb).map_err(|e| Failure::Config(e.to_string()))?;
        println!("{name:<10} {:>24.16e} {:>24.16e}", n.l1, n.linf);
    }
    Ok(())
}

fn final_density(cfg: &Config) -> Result<Vec<f64>, Failure> {
    let spec = cfg.run_spec();
    let r = run(&spec).map_err(|e| Failure::Runtime(format!("N = {}: {e}", cfg.n)))?;
    let prims = r
        .final_state
        .primitives(&spec.params)
        .map_err(|(cell, e)| Failure::Runtime(format!("N = {}, cell {cell}: {e}", cfg.n)))?;
    Ok(prims.iter().map(|p| p.rho).collect())
}

fn cmd_convergence(config: &Path, grids: &[usize], reference: usize) -> Result<(), Failure> {
    let cfg = load_config(config)?;
    if cfg.test.dim != Dim::One {
        return Err(Failure::Config("convergence studies are only available for 1D tests".into()));
    }
    if grids.is_empty() || grids.iter().any(|&n| n == 0 || n >= reference) {
        return Err(Failure::Config(format!("grids must be nonzero and coarser than the reference {reference}")));
    }
    let with_n = |n| Config { n, ..cfg.clone() };
    let fine = final_density(&with_n(reference))?;
    println!("{:>6} {:>24} {:>24} {:>8}", "N", "L1(rho)", "Linf(rho)", "order");
    let mut prev: Option<(usize, f64)> = None;
    for &n in grids {
        let e = error_norms(&final_density(&with_n(n))?, &fine).map_err(|e| Failure::Runtime(e.to_string()))?;
        let order = prev
            .map(|(pn, pe)| format!("{:.3}", (pe / e.l1).ln() / (n as f64 / pn as f64).ln()))
            .unwrap_or_else(|| "-".into());
        println!("{n:>6} {:>24.16e} {:>24.16e} {order:>8}", e.l1, e.linf);
        prev = Some((n, e.l1));
    }
    Ok(())
}
