//! Self-verification of the closed forms against the numerical oracles.

use std::fmt;
use std::str::FromStr;

use crate::error::{usage, Error, Result};
use crate::force::{allowed_modes, drive_coordinate, permeance_gradient};
use crate::geometry::{derive, BranchCase, FluxTubeKind, TorusGeometry};
use crate::oracle::{default_step, gradient_fd, permeance_quadrature, QuadratureConfig};
use crate::permeance::permeance;

pub const PERMEANCE_TOLERANCE: f64 = 1e-9;
pub const GRADIENT_TOLERANCE: f64 = 1e-6;

/// Points with `|η − 1|` below this are left to the branch-continuity tests.
const UNIT_EXCLUSION: f64 = 1e-3;
/// Relative distance kept from `r_o = r_i` and `r_o = R`.
const BOUNDARY_MARGIN: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    Quick,
    Full,
}

impl Preset {
    fn grid(self) -> (Vec<f64>, Vec<f64>) {
        // r_i / R and r_o / r_i
        match self {
            Preset::Quick => (vec![0.01, 0.1, 0.3, 0.6], vec![1.5, 2.5, 8.0, 40.0]),
            Preset::Full => (log_grid(1e-3, 2.0, 14), log_grid(1.05, 100.0, 14)),
        }
    }
}

fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| a * (b / a).powf(k as f64 / (n - 1) as f64)).collect()
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Preset::Quick),
            "full" => Ok(Preset::Full),
            _ => Err(usage(format!("unknown preset `{s}` (expected quick or full)"))),
        }
    }
}

/// Outcome of one oracle comparison family.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckLine {
    pub label: String,
    pub points: usize,
    pub max_error: f64,
    pub tolerance: f64,
    /// Geometry at which `max_error` occurred.
    pub worst_at: Option<TorusGeometry>,
}

impl CheckLine {
    pub fn passed(&self) -> bool {
        self.points > 0 && self.max_error <= self.tolerance
    }

    fn record(&mut self, err: f64, geom: &TorusGeometry) {
        self.points += 1;
        if err > self.max_error || err.is_nan() {
            self.max_error = err;
            self.worst_at = Some(*geom);
        }
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<40} points={:<4} max_rel_err={:.3e} tol={:.0e}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.label,
            self.points,
            self.max_error,
            self.tolerance
        )?;
        if let (false, Some(g)) = (self.passed(), self.worst_at) {
            write!(
                f,
                " at R={:e} r_i={:e} r_o={:e}",
                g.pole_radius, g.inner_radius, g.outer_radius
            )?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(CheckLine::passed)
    }

    pub fn points(&self) -> usize {
        self.lines.iter().map(|l| l.points).sum()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        write!(
            f,
            "{} ({} comparisons)",
            if self.passed() {
                "all checks passed"
            } else {
                "verification FAILED"
            },
            self.points()
        )
    }
}

fn geometries(preset: Preset, kind: FluxTubeKind) -> Vec<TorusGeometry> {
    let (inner, ratio) = preset.grid();
    let mut out = Vec::new();
    for &ri in &inner {
        for &k in &ratio {
            let geom = TorusGeometry::new(1.0, ri, ri * k);
            let Ok(d) = derive(&geom) else { continue };
            if (d.eta - 1.0).abs() < UNIT_EXCLUSION {
                continue;
            }
            if kind.is_axis_bounded() && geom.outer_radius > geom.pole_radius * (1.0 - BOUNDARY_MARGIN) {
                continue;
            }
            if kind == FluxTubeKind::LowerHalf && d.branch != BranchCase::Super {
                continue;
            }
            out.push(geom);
        }
    }
    out
}

/// Compares every closed-form permeance with adaptive quadrature and every
/// analytic gradient with a Richardson-extrapolated central difference.
///
/// `perturbation` scales the closed-form values by `1 + perturbation` before
/// comparing, which demonstrates that the check can fail.
pub fn run_check(preset: Preset, perturbation: f64) -> Result<CheckReport> {
    if !perturbation.is_finite() {
        return Err(usage(format!("perturbation must be finite, got {perturbation}")));
    }
    let scale = 1.0 + perturbation;
    let cfg = QuadratureConfig::default();
    let mut lines = Vec::new();

    for kind in FluxTubeKind::ALL {
        let mut line = CheckLine {
            label: format!("permeance {kind} vs quadrature"),
            points: 0,
            max_error: 0.0,
            tolerance: PERMEANCE_TOLERANCE,
            worst_at: None,
        };
        for geom in geometries(preset, kind) {
            let report = permeance_quadrature(kind, &geom, &cfg)?;
            let err = (scale * report.closed_form - report.quadrature).abs() / report.quadrature;
            line.record(if report.converged { err } else { f64::INFINITY }, &geom);
        }
        lines.push(line);
    }

    for kind in FluxTubeKind::ALL {
        for &mode in allowed_modes(kind) {
            let mut line = CheckLine {
                label: format!("gradient {kind} {mode} vs fd"),
                points: 0,
                max_error: 0.0,
                tolerance: GRADIENT_TOLERANCE,
                worst_at: None,
            };
            for geom in geometries(preset, kind) {
                let (_, x) = drive_coordinate(kind, mode, &geom);
                let fd = match gradient_fd(kind, mode, &geom, default_step(x)) {
                    Ok(fd) => fd,
                    Err(Error::Boundary(_)) => continue,
                    Err(e) => return Err(e),
                };
                let analytic = scale * permeance_gradient(kind, mode, &geom)?;
                // gradients can pass through zero; measure against G/x there
                let natural = permeance(kind, &geom)?.henry() / x;
                let err = (analytic - fd.richardson).abs() / analytic.abs().max(1e-3 * natural);
                line.record(err, &geom);
            }
            lines.push(line);
        }
    }
    Ok(CheckReport { lines })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::force::DriveMode;

    #[test]
    fn quick_preset_passes() {
        let report = run_check(Preset::Quick, 0.0).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.lines.len(), 5 + 10);
        assert!(report.points() >= 100, "{}", report.points());
        for mode in DriveMode::ALL {
            assert!(report.lines.iter().any(|l| l.label.contains(mode.name())));
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let report = run_check(Preset::Quick, 1e-6).unwrap();
        assert!(!report.passed());
        assert!(report
            .lines
            .iter()
            .filter(|l| l.label.starts_with("permeance"))
            .all(|l| !l.passed()));
        let text = report.to_string();
        assert!(text
            .lines()
            .filter(|l| l.starts_with("FAIL"))
            .all(|l| l.contains(" at R=")));
    }

    #[test]
    fn preset_names() {
        assert_eq!("quick".parse::<Preset>().unwrap(), Preset::Quick);
        assert_eq!("full".parse::<Preset>().unwrap(), Preset::Full);
        assert!("slow".parse::<Preset>().is_err());
        assert!(run_check(Preset::Quick, f64::NAN).is_err());
    }

    #[test]
    fn display_has_one_line_per_family() {
        let report = run_check(Preset::Quick, 0.0).unwrap();
        let text = report.to_string();
        assert_eq!(text.lines().count(), report.lines.len() + 1);
        assert!(text.lines().take(report.lines.len()).all(|l| l.starts_with("PASS")));
    }
}
