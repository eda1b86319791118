//! Central differences with one Richardson level.

use crate::error::{usage, Error, Result};
use crate::force::{allowed_modes, drive_coordinate, drive_geometry, DriveMode};
use crate::geometry::{validate, FluxTubeKind, TorusGeometry};
use crate::permeance::permeance;

/// Finite-difference estimate of a derivative.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdEstimate {
    /// Plain central difference with step `h`.
    pub central: f64,
    /// Central difference with step `2h`.
    pub central_2h: f64,
    /// `(4 D(h) − D(2h)) / 3`, fourth order for smooth functions.
    pub richardson: f64,
    pub step: f64,
}

/// `h = max(1e-6 x, 1e-9 m)`.
pub fn default_step(x: f64) -> f64 {
    (1e-6 * x.abs()).max(1e-9)
}

pub fn central_difference<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> FdEstimate {
    let d = |h: f64| (f(x + h) - f(x - h)) / (2.0 * h);
    let (central, central_2h) = (d(h), d(2.0 * h));
    FdEstimate {
        central,
        central_2h,
        richardson: (4.0 * central - central_2h) / 3.0,
        step: h,
    }
}

/// Finite-difference `dG_m/dx` of the closed-form permeance along the drive
/// coordinate of `(kind, mode)`.
pub fn gradient_fd(kind: FluxTubeKind, mode: DriveMode, geom: &TorusGeometry, h: f64) -> Result<FdEstimate> {
    gradient_fd_with(kind, mode, geom, h, |k, g| Ok(permeance(k, g)?.henry()))
}

/// As [`gradient_fd`], differentiating an arbitrary permeance model
/// (for instance the quadrature value).
pub fn gradient_fd_with<P>(
    kind: FluxTubeKind,
    mode: DriveMode,
    geom: &TorusGeometry,
    h: f64,
    model: P,
) -> Result<FdEstimate>
where
    P: Fn(FluxTubeKind, &TorusGeometry) -> Result<f64>,
{
    if !allowed_modes(kind).contains(&mode) {
        return Err(usage(format!("drive mode {mode} is not defined for {kind}")));
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(usage(format!("step must be positive, got {h}")));
    }
    let (held, x) = drive_coordinate(kind, mode, geom);
    let at = |x: f64| drive_geometry(kind, mode, geom.pole_radius, held, x);

    // every stencil point must sit in the same existence regime as the centre,
    // including the r_o = R freeze of the inner quarter under const-ri
    let regime = |g: &TorusGeometry| (validate(kind, g).exists, g.outer_radius > g.pole_radius);
    let centre = regime(geom);
    for k in [-2.0, -1.0, 1.0, 2.0] {
        let g = at(x + k * h);
        if g.inner_radius <= 0.0 || regime(&g) != centre {
            return Err(Error::Boundary(format!(
                "{kind} under {mode}: step {h} from x = {x} crosses an existence boundary"
            )));
        }
    }

    // the closure cannot return Result, so record the first failure
    let failure = std::cell::RefCell::new(None);
    let estimate = central_difference(
        |x| match model(kind, &at(x)) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        },
        x,
        h,
    );
    match failure.into_inner() {
        Some(e) => Err(e),
        None => Ok(estimate),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::force::permeance_gradient;
    use crate::geometry::outer_radius_for_eta;
    use crate::oracle::{quadrature_permeance, QuadratureConfig};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn central_difference_is_second_order() {
        // plain central error shrinks ~4x per halving of h on a smooth region
        let geom = TorusGeometry::new(1.0, 0.2, 0.6);
        let (kind, mode) = (FluxTubeKind::OuterHalf, DriveMode::ConstOuterRadius);
        let exact = permeance_gradient(kind, mode, &geom).unwrap();
        let mut errs = Vec::new();
        for h in [4e-3, 2e-3, 1e-3] {
            let e = gradient_fd(kind, mode, &geom, h).unwrap();
            errs.push((e.central - exact).abs());
        }
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!((3.6..4.4).contains(&ratio), "ratio {ratio}");
        }
    }

    #[test]
    fn matches_analytic_on_super_branch() {
        for geom in [
            TorusGeometry::new(1.0, 0.01, 0.5),
            TorusGeometry::new(2e-3, 1e-4, 9e-4),
            TorusGeometry::new(0.05, 0.004, 0.03),
        ] {
            for &mode in allowed_modes(FluxTubeKind::OuterHalf) {
                let analytic = permeance_gradient(FluxTubeKind::OuterHalf, mode, &geom).unwrap();
                let (_, x) = drive_coordinate(FluxTubeKind::OuterHalf, mode, &geom);
                let fd = gradient_fd(FluxTubeKind::OuterHalf, mode, &geom, default_step(x)).unwrap();
                assert!(rel(fd.richardson, analytic) <= 1e-6, "{geom:?} {mode}");
            }
        }
    }

    #[test]
    fn refuses_to_straddle_existence() {
        // r_i just below r_o under const-ro: the +h point collapses the tube
        let geom = TorusGeometry::new(1.0, 0.5 - 1e-9, 0.5);
        let r = gradient_fd(FluxTubeKind::OuterHalf, DriveMode::ConstOuterRadius, &geom, 1e-8);
        assert!(matches!(r, Err(Error::Boundary(_))));
        // inner quarter crossing r_o = R
        let geom = TorusGeometry::new(1.0, 0.2, 1.0 - 1e-9);
        let r = gradient_fd(FluxTubeKind::InnerQuarter, DriveMode::ConstInnerRadius, &geom, 1e-8);
        assert!(matches!(r, Err(Error::Boundary(_))));
    }

    #[test]
    fn branch_formulas_agree_with_quadrature_near_unit() {
        let cfg = QuadratureConfig {
            rel_tol: 1e-13,
            max_depth: 60,
        };
        let quad = |k: FluxTubeKind, g: &TorusGeometry| Ok(quadrature_permeance(k, g, &cfg)?.0);
        for target in [1.0 - 1e-3, 1.0 - 1e-4, 1.0 + 1e-4, 1.0 + 1e-3] {
            let ro = outer_radius_for_eta(1.0, 0.3, target).unwrap();
            let geom = TorusGeometry::new(1.0, 0.3, ro);
            for (kind, mode) in [
                (FluxTubeKind::OuterHalf, DriveMode::ConstOuterRadius),
                (FluxTubeKind::OuterHalf, DriveMode::ConstThickness),
                (FluxTubeKind::OuterQuarter, DriveMode::ConstInnerRadius),
            ] {
                let (_, x) = drive_coordinate(kind, mode, &geom);
                let h = 1e-3 * x;
                let closed = gradient_fd(kind, mode, &geom, h).unwrap().richardson;
                let numeric = gradient_fd_with(kind, mode, &geom, h, quad).unwrap().richardson;
                assert!(
                    rel(closed, numeric) <= 1e-6,
                    "eta {target} {kind} {mode}: {closed} vs {numeric}"
                );
            }
        }
    }
}
