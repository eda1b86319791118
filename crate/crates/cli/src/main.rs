use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use toroflux::check::{run_check, Preset};
use toroflux::sweep::{
    sweep_force, sweep_permeance, write_force_csv, write_permeance_csv, ActuatorSweepSpec, SweepRange, SweepSpec,
};
use toroflux::{permeance, DriveMode, Error, FluxTubeKind, Permeance, TorusGeometry};

/// Permeances and reluctance forces of hollow-toroid stray flux tubes.
#[derive(Parser)]
#[command(name = "toroflux", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the permeance of one flux tube in henry.
    Permeance {
        #[arg(long)]
        kind: FluxTubeKind,
        /// Pole radius, m.
        #[arg(long = "R")]
        pole_radius: f64,
        /// Inner radius, m.
        #[arg(long)]
        ri: f64,
        /// Outer radius, m.
        #[arg(long)]
        ro: f64,
    },
    /// Write a family of permeance curves as CSV.
    SweepPermeance {
        #[arg(long)]
        kind: FluxTubeKind,
        #[arg(long = "R")]
        pole_radius: f64,
        #[command(flatten)]
        held: HeldList,
        /// Swept radius grid, e.g. log:1e-5:1e-3:100.
        #[arg(long)]
        range: SweepRange,
        /// Add radii over R and G_m/(mu0 R) columns.
        #[arg(long)]
        normalized: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a force-versus-stroke table against the legacy model as CSV.
    SweepForce {
        #[arg(long, default_value = "outer-half")]
        kind: FluxTubeKind,
        #[arg(long = "R", default_value_t = 0.01)]
        pole_radius: f64,
        #[command(flatten)]
        held: HeldValue,
        /// Magnetic tension, A.
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        theta: f64,
        /// Width of the legacy half hollow cylinder, m [default: 2 pi R].
        #[arg(long)]
        legacy_width: Option<f64>,
        /// Drive coordinate grid (g for half tori, s for quarters).
        #[arg(long, default_value = "lin:0.002:0.022:200")]
        range: SweepRange,
        /// Do not add samples at the branch switches of eta.
        #[arg(long)]
        no_branch_points: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare closed forms with the quadrature and finite-difference oracles.
    Check {
        #[arg(long, default_value = "quick")]
        preset: Preset,
        /// Relative perturbation applied to the closed forms.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        perturb: f64,
    },
}

/// The held dimension; the flag used selects the drive mode.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct HeldList {
    /// Outer radii, m (comma-separated); sweeps r_i.
    #[arg(long, value_delimiter = ',')]
    ro: Option<Vec<f64>>,
    /// Thicknesses, m (comma-separated); sweeps r_i.
    #[arg(long, value_delimiter = ',')]
    t: Option<Vec<f64>>,
    /// Inner radii, m (comma-separated); sweeps r_o.
    #[arg(long, value_delimiter = ',')]
    ri: Option<Vec<f64>>,
}

impl HeldList {
    fn resolve(self) -> (DriveMode, Vec<f64>) {
        match (self.ro, self.t, self.ri) {
            (Some(v), _, _) => (DriveMode::ConstOuterRadius, v),
            (_, Some(v), _) => (DriveMode::ConstThickness, v),
            (_, _, Some(v)) => (DriveMode::ConstInnerRadius, v),
            _ => unreachable!("clap enforces exactly one held flag"),
        }
    }
}

#[derive(Args)]
#[group(multiple = false)]
struct HeldValue {
    /// Hold the outer radius, m.
    #[arg(long)]
    ro: Option<f64>,
    /// Hold the thickness, m [default: 0.01].
    #[arg(long)]
    t: Option<f64>,
    /// Hold the inner radius, m (quarters only).
    #[arg(long)]
    ri: Option<f64>,
}

impl HeldValue {
    fn resolve(self) -> (DriveMode, f64) {
        match (self.ro, self.t, self.ri) {
            (Some(v), _, _) => (DriveMode::ConstOuterRadius, v),
            (_, _, Some(v)) => (DriveMode::ConstInnerRadius, v),
            (_, t, _) => (DriveMode::ConstThickness, t.unwrap_or(0.01)),
        }
    }
}

enum Failure {
    Lib(Error),
    Io(io::Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn output(path: Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Permeance {
            kind,
            pole_radius,
            ri,
            ro,
        } => {
            let geom = TorusGeometry::new(pole_radius, ri, ro);
            match permeance(kind, &geom)? {
                Permeance::Finite(g) => println!("{g:.11e}"),
                Permeance::Degenerate => {
                    eprintln!("warning: {kind} does not exist for R={pole_radius} r_i={ri} r_o={ro}; permeance is 0");
                    println!("0");
                }
            }
        }
        Command::SweepPermeance {
            kind,
            pole_radius,
            held,
            range,
            normalized,
            out,
        } => {
            let (mode, held) = held.resolve();
            let spec = SweepSpec {
                kind,
                mode,
                pole_radius,
                held,
                range,
                normalized,
            };
            let rows = sweep_permeance(&spec)?;
            let mut w = output(out)?;
            write_permeance_csv(&mut w, &spec, &rows)?;
            w.flush()?;
        }
        Command::SweepForce {
            kind,
            pole_radius,
            held,
            theta,
            legacy_width,
            range,
            no_branch_points,
            out,
        } => {
            let (mode, held) = held.resolve();
            let spec = ActuatorSweepSpec {
                kind,
                mode,
                pole_radius,
                held,
                theta,
                stroke: range,
                legacy_width: legacy_width.unwrap_or(2.0 * std::f64::consts::PI * pole_radius),
                branch_points: !no_branch_points,
            };
            let rows = sweep_force(&spec)?;
            let mut w = output(out)?;
            write_force_csv(&mut w, &rows)?;
            w.flush()?;
        }
        Command::Check { preset, perturb } => {
            let report = run_check(preset, perturb)?;
            println!("{report}");
            if !report.passed() {
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e @ Error::Usage(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(1),
    }
}
