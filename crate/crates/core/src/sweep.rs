//! Parameter sweeps and their CSV serialization.
//!
//! Two tables are produced: permeance families over one radius (the
//! `G_m/(μ0 R)` vs `r_i/R` style of plot) and force-versus-stroke curves of
//! an actuator compared against the constant-width legacy model.

use std::f64::consts::PI;
use std::io::{self, Write};
use std::str::FromStr;

use crate::error::{usage, Error, Result};
use crate::force::{allowed_modes, drive_geometry, force, legacy_drive_gradient, DriveMode, MagneticTension};
use crate::geometry::{derive, BranchCase, FluxTubeKind, TorusGeometry, ETA_WINDOW, MU0};
use crate::permeance::{legacy_half_hollow_cylinder, permeance, LegacyCylinderSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// Sample grid `<lin|log>:<start>:<stop>:<n>`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRange {
    pub spacing: Spacing,
    pub start: f64,
    pub stop: f64,
    pub samples: usize,
}

impl SweepRange {
    pub fn linear(start: f64, stop: f64, samples: usize) -> Self {
        Self {
            spacing: Spacing::Linear,
            start,
            stop,
            samples,
        }
    }

    pub fn log(start: f64, stop: f64, samples: usize) -> Self {
        Self {
            spacing: Spacing::Log,
            start,
            stop,
            samples,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 2 {
            return Err(usage(format!("a sweep needs at least 2 samples, got {}", self.samples)));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start > 0.0 && self.stop > 0.0) {
            return Err(usage(format!(
                "sweep endpoints must be finite and positive, got {}..{}",
                self.start, self.stop
            )));
        }
        if self.start >= self.stop {
            return Err(usage(format!(
                "sweep range must be increasing, got {}..{}",
                self.start, self.stop
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.samples;
        let last = (n - 1) as f64;
        (0..n)
            .map(|k| {
                if k == n - 1 {
                    return self.stop;
                }
                let u = k as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + u * (self.stop - self.start),
                    Spacing::Log => self.start * (self.stop / self.start).powf(u),
                }
            })
            .collect()
    }
}

impl FromStr for SweepRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            usage(format!(
                "range must look like lin:<start>:<stop>:<n> or log:..., got `{s}`"
            ))
        };
        let parts: Vec<&str> = s.split(':').collect();
        let [spacing, start, stop, n] = parts.as_slice() else {
            return Err(bad());
        };
        let spacing = match *spacing {
            "lin" => Spacing::Linear,
            "log" => Spacing::Log,
            _ => return Err(bad()),
        };
        let range = SweepRange {
            spacing,
            start: start.parse().map_err(|_| bad())?,
            stop: stop.parse().map_err(|_| bad())?,
            samples: n.parse().map_err(|_| bad())?,
        };
        range.validate()?;
        Ok(range)
    }
}

/// A family of permeance curves: one curve per fixed value in `held`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub kind: FluxTubeKind,
    /// Which radius is swept: `r_i` for const-ro / const-t, `r_o` for const-ri.
    pub mode: DriveMode,
    pub pole_radius: f64,
    /// Values of the held dimension (`r_o`, `t` or `r_i`), m.
    pub held: Vec<f64>,
    /// Grid of the swept radius, m.
    pub range: SweepRange,
    /// Also emit `G_m/(μ0 R)` and radii over `R`.
    pub normalized: bool,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.range.validate()?;
        if !(self.pole_radius.is_finite() && self.pole_radius > 0.0) {
            return Err(usage(format!("pole radius must be positive, got {}", self.pole_radius)));
        }
        if self.held.is_empty() || !self.held.iter().all(|v| v.is_finite() && *v > 0.0) {
            return Err(usage("held values must be a non-empty list of positive numbers"));
        }
        Ok(())
    }

    fn geometry(&self, held: f64, swept: f64) -> TorusGeometry {
        let r = self.pole_radius;
        match self.mode {
            DriveMode::ConstOuterRadius => TorusGeometry::new(r, swept, held),
            DriveMode::ConstThickness => TorusGeometry::new(r, swept, swept + held),
            DriveMode::ConstInnerRadius => TorusGeometry::new(r, held, swept),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub held: f64,
    pub swept: f64,
    /// Exact permeance, H (0 when the tube does not exist).
    pub gm: f64,
    /// `G_m / (μ0 R)`.
    pub gm_norm: f64,
    /// Wrapped-cylinder permeance with width `2πR`, H; `None` when undefined.
    pub gm_legacy: Option<f64>,
    /// `|legacy − exact| / exact`; `None` when either side is undefined.
    pub rel_dev: Option<f64>,
    pub exists: bool,
}

pub fn sweep_permeance(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let norm = MU0 * spec.pole_radius;
    let mut rows = Vec::with_capacity(spec.held.len() * spec.range.samples);
    for &held in &spec.held {
        for swept in spec.range.values() {
            let geom = spec.geometry(held, swept);
            // the lower half is undefined (not an error) where its inner quarter cannot exist
            let gm = match permeance(spec.kind, &geom) {
                Ok(p) => p.henry(),
                Err(Error::Domain(_)) => 0.0,
                Err(e) => return Err(e),
            };
            let exists = gm > 0.0;
            let gm_legacy = if geom.outer_radius > geom.inner_radius {
                let half = legacy_half_hollow_cylinder(&LegacyCylinderSpec {
                    width: 2.0 * PI * spec.pole_radius,
                    thickness: geom.thickness(),
                    inner_radius: geom.inner_radius,
                })?;
                Some(if spec.kind.is_quarter() { 2.0 * half } else { half })
            } else {
                None
            };
            let rel_dev = match (exists, gm_legacy) {
                (true, Some(l)) => Some((l - gm).abs() / gm),
                _ => None,
            };
            rows.push(SweepRow {
                held,
                swept,
                gm,
                gm_norm: gm / norm,
                gm_legacy,
                rel_dev,
                exists,
            });
        }
    }
    Ok(rows)
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| format!("{v:e}")).unwrap_or_default()
}

pub const PERMEANCE_CSV_HEADER: &str = "held_m,swept_m,Gm_H,Gm_legacy_H,rel_dev,exists";
pub const PERMEANCE_CSV_NORMALIZED: &str = "held_over_R,swept_over_R,Gm_norm,Gm_legacy_norm";

pub fn write_permeance_csv<W: Write>(mut out: W, spec: &SweepSpec, rows: &[SweepRow]) -> io::Result<()> {
    if spec.normalized {
        writeln!(out, "{PERMEANCE_CSV_HEADER},{PERMEANCE_CSV_NORMALIZED}")?;
    } else {
        writeln!(out, "{PERMEANCE_CSV_HEADER}")?;
    }
    let r = spec.pole_radius;
    let norm = MU0 * r;
    for row in rows {
        write!(
            out,
            "{:e},{:e},{:e},{},{},{}",
            row.held,
            row.swept,
            row.gm,
            opt(row.gm_legacy),
            opt(row.rel_dev),
            row.exists as u8
        )?;
        if spec.normalized {
            write!(
                out,
                ",{:e},{:e},{:e},{}",
                row.held / r,
                row.swept / r,
                row.gm_norm,
                opt(row.gm_legacy.map(|l| l / norm))
            )?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Force-versus-stroke run of one flux tube against the legacy model.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ActuatorSweepSpec {
    pub kind: FluxTubeKind,
    pub mode: DriveMode,
    pub pole_radius: f64,
    /// The dimension `mode` holds fixed (`r_o`, `t` or `r_i`), m.
    pub held: f64,
    /// Magnetomotive force across the tube, A; used directly as `V_m`.
    pub theta: f64,
    /// Drive coordinate samples (`g` for half tori, `s` for quarters), m.
    pub stroke: SweepRange,
    /// Constant width of the legacy half hollow cylinder, m.
    pub legacy_width: f64,
    /// Add samples at `η = 1` and just outside the unit window on either side.
    pub branch_points: bool,
}

impl ActuatorSweepSpec {
    /// Outer half torus with `t = R = 10 mm`, 1 A, `w = 2πR`, `g` from 2 to 22 mm.
    pub fn reference() -> Self {
        let r = 0.01;
        Self {
            kind: FluxTubeKind::OuterHalf,
            mode: DriveMode::ConstThickness,
            pole_radius: r,
            held: 0.01,
            theta: 1.0,
            stroke: SweepRange::linear(0.002, 0.022, 200),
            legacy_width: 2.0 * PI * r,
            branch_points: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.stroke.validate()?;
        if !allowed_modes(self.kind).contains(&self.mode) {
            return Err(usage(format!(
                "drive mode {} is not defined for {}",
                self.mode, self.kind
            )));
        }
        for (name, v) in [
            ("pole radius", self.pole_radius),
            ("held dimension", self.held),
            ("legacy width", self.legacy_width),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(usage(format!("{name} must be positive, got {v}")));
            }
        }
        if !self.theta.is_finite() {
            return Err(usage(format!("theta must be finite, got {}", self.theta)));
        }
        Ok(())
    }

    fn geometry(&self, x: f64) -> TorusGeometry {
        drive_geometry(self.kind, self.mode, self.pole_radius, self.held, x)
    }

    fn eta(&self, x: f64) -> Option<f64> {
        derive(&self.geometry(x)).ok().map(|d| d.eta)
    }

    /// Drive-coordinate values where `η` equals `target`, found by bisection
    /// on each sign change between adjacent grid samples.
    fn crossings(&self, grid: &[f64], target: f64) -> Vec<f64> {
        let mut out = Vec::new();
        for pair in grid.windows(2) {
            let (Some(ea), Some(eb)) = (self.eta(pair[0]), self.eta(pair[1])) else {
                continue;
            };
            if (ea - target).signum() == (eb - target).signum() {
                continue;
            }
            let (mut lo, mut hi) = (pair[0], pair[1]);
            let above_at_lo = ea > target;
            loop {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                match self.eta(mid) {
                    Some(e) if (e > target) == above_at_lo => lo = mid,
                    Some(_) => hi = mid,
                    None => break,
                }
            }
            out.push(0.5 * (lo + hi));
        }
        out
    }

    /// The stroke grid, with branch points merged in when requested.
    pub fn samples(&self) -> Vec<f64> {
        let grid = self.stroke.values();
        if !self.branch_points {
            return grid;
        }
        let mut all = grid.clone();
        for target in [1.0 - 2.0 * ETA_WINDOW, 1.0, 1.0 + 2.0 * ETA_WINDOW] {
            all.extend(self.crossings(&grid, target));
        }
        all.sort_by(f64::total_cmp);
        all.dedup();
        all
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ForceSweepRow {
    /// Drive coordinate, m.
    pub stroke: f64,
    pub gm_new: f64,
    pub f_new: f64,
    pub gm_legacy: f64,
    pub f_legacy: f64,
    /// `|F_legacy − F_new| / |F_new|`; `None` where `F_new = 0`.
    pub rel_dev: Option<f64>,
    pub exists: bool,
    pub branch: Option<BranchCase>,
}

pub fn sweep_force(spec: &ActuatorSweepSpec) -> Result<Vec<ForceSweepRow>> {
    spec.validate()?;
    let vm = MagneticTension(spec.theta);
    let half_vm2 = 0.5 * spec.theta * spec.theta;
    spec.samples()
        .into_iter()
        .map(|x| {
            let geom = spec.geometry(x);
            let exact = force(vm, spec.kind, spec.mode, &geom)?;
            let (gm_legacy, f_legacy) = if geom.outer_radius > geom.inner_radius {
                let half = legacy_half_hollow_cylinder(&LegacyCylinderSpec {
                    width: spec.legacy_width,
                    thickness: geom.thickness(),
                    inner_radius: geom.inner_radius,
                })?;
                let gm = if spec.kind.is_quarter() { 2.0 * half } else { half };
                let grad = legacy_drive_gradient(spec.kind, spec.mode, spec.legacy_width, &geom)?;
                (gm, half_vm2 * grad)
            } else {
                (0.0, 0.0)
            };
            let rel_dev =
                (exact.exists && exact.force != 0.0).then(|| (f_legacy - exact.force).abs() / exact.force.abs());
            Ok(ForceSweepRow {
                stroke: x,
                gm_new: exact.permeance,
                f_new: exact.force,
                gm_legacy,
                f_legacy,
                rel_dev,
                exists: exact.exists,
                branch: derive(&geom).ok().map(|d| d.branch),
            })
        })
        .collect()
}

pub const FORCE_CSV_HEADER: &str = "g_m,Gm_new_H,F_new_N,Gm_legacy_H,F_legacy_N,rel_dev_percent";

pub fn write_force_csv<W: Write>(mut out: W, rows: &[ForceSweepRow]) -> io::Result<()> {
    writeln!(out, "{FORCE_CSV_HEADER}")?;
    for row in rows {
        writeln!(
            out,
            "{:e},{:e},{:e},{:e},{:e},{}",
            row.stroke,
            row.gm_new,
            row.f_new,
            row.gm_legacy,
            row.f_legacy,
            opt(row.rel_dev.map(|d| 100.0 * d))
        )?;
    }
    Ok(())
}
