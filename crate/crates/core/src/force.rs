//! Permeance gradients and reluctance forces `F = ½ V_m² dG_m/dx`.
//!
//! The gradient depends on which dimension of the tube is held fixed while the
//! armature moves ([`DriveMode`]). For the half tori the drive coordinate is
//! the gap `g = 2 r_i`; for quarter tori it is the stroke `s`, identified with
//! `r_i` under the half-torus modes and with `r_o` under [`DriveMode::ConstInnerRadius`].
//! A quarter under a half-torus mode sees four times the half-torus gradient.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, usage, Error, Result};
use crate::geometry::{derive, BranchCase, DerivedQuantities, FluxTubeKind, TorusGeometry, MU0};
use crate::permeance::{permeance, PERMEANCE_FLOOR};

/// Which tube dimension stays constant under motion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DriveMode {
    /// `r_o` fixed, `r_i = g/2` varies.
    ConstOuterRadius,
    /// `t` fixed, `r_i = g/2` varies and `r_o = r_i + t` follows.
    ConstThickness,
    /// `r_i` fixed, `r_o = s` varies.
    ConstInnerRadius,
}

impl DriveMode {
    pub const ALL: [DriveMode; 3] = [
        DriveMode::ConstOuterRadius,
        DriveMode::ConstThickness,
        DriveMode::ConstInnerRadius,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DriveMode::ConstOuterRadius => "const-ro",
            DriveMode::ConstThickness => "const-t",
            DriveMode::ConstInnerRadius => "const-ri",
        }
    }
}

impl fmt::Display for DriveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DriveMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DriveMode::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| usage(format!("unknown drive mode `{s}`")))
    }
}

/// Drive modes with a force formula for `kind`.
pub fn allowed_modes(kind: FluxTubeKind) -> &'static [DriveMode] {
    match kind {
        FluxTubeKind::InnerHalf | FluxTubeKind::OuterHalf => &[DriveMode::ConstOuterRadius, DriveMode::ConstThickness],
        FluxTubeKind::InnerQuarter | FluxTubeKind::OuterQuarter => &DriveMode::ALL,
        FluxTubeKind::LowerHalf => &[],
    }
}

fn ensure_allowed(kind: FluxTubeKind, mode: DriveMode) -> Result<()> {
    if kind == FluxTubeKind::LowerHalf {
        return Err(usage("the lower half torus has no force formula"));
    }
    if !allowed_modes(kind).contains(&mode) {
        return Err(usage(format!("drive mode {mode} is not defined for {kind}")));
    }
    Ok(())
}

/// Geometry at drive coordinate `x` with the mode's fixed dimension `held`.
pub fn drive_geometry(kind: FluxTubeKind, mode: DriveMode, pole_radius: f64, held: f64, x: f64) -> TorusGeometry {
    // halves move with the gap g = 2 r_i, quarters with the stroke s = r_i
    let inner = |x: f64| if kind.is_quarter() { x } else { 0.5 * x };
    match mode {
        DriveMode::ConstOuterRadius => TorusGeometry::new(pole_radius, inner(x), held),
        DriveMode::ConstThickness => {
            let ri = inner(x);
            TorusGeometry::new(pole_radius, ri, ri + held)
        }
        DriveMode::ConstInnerRadius => TorusGeometry::new(pole_radius, held, x),
    }
}

/// Inverse of [`drive_geometry`]: `(held, x)` for a geometry.
pub fn drive_coordinate(kind: FluxTubeKind, mode: DriveMode, geom: &TorusGeometry) -> (f64, f64) {
    let x_of_inner = if kind.is_quarter() {
        geom.inner_radius
    } else {
        geom.gap()
    };
    match mode {
        DriveMode::ConstOuterRadius => (geom.outer_radius, x_of_inner),
        DriveMode::ConstThickness => (geom.thickness(), x_of_inner),
        DriveMode::ConstInnerRadius => (geom.inner_radius, geom.outer_radius),
    }
}

/// `dG_m/dg` (half tori) or `dG_m/ds` (quarter tori), H/m.
///
/// Vanished tubes give 0. An inner quarter driven past `r_o = R` keeps the
/// permeance of `r_o = R` and therefore also gives 0.
pub fn permeance_gradient(kind: FluxTubeKind, mode: DriveMode, geom: &TorusGeometry) -> Result<f64> {
    ensure_allowed(kind, mode)?;
    geom.ensure_positive()?;
    if geom.outer_radius <= geom.inner_radius {
        return Ok(0.0);
    }
    if kind.is_axis_bounded() && geom.outer_radius > geom.pole_radius {
        return Ok(0.0);
    }
    if kind.is_quarter() && mode != DriveMode::ConstInnerRadius {
        return Ok(4.0 * permeance_gradient(kind.half(), mode, geom)?);
    }
    let d = derive(geom)?;
    let g = geom;
    match (kind, mode) {
        (FluxTubeKind::InnerHalf, DriveMode::ConstOuterRadius) => inner_half_const_ro(&d, g),
        (FluxTubeKind::InnerHalf, DriveMode::ConstThickness) => inner_half_const_t(&d, g),
        (FluxTubeKind::OuterHalf, DriveMode::ConstOuterRadius) => Ok(outer_half_const_ro(&d, g)),
        (FluxTubeKind::OuterHalf, DriveMode::ConstThickness) => Ok(outer_half_const_t(&d, g)),
        (FluxTubeKind::InnerQuarter, DriveMode::ConstInnerRadius) => inner_quarter_const_ri(&d, g),
        (FluxTubeKind::OuterQuarter, DriveMode::ConstInnerRadius) => Ok(outer_quarter_const_ri(&d, g)),
        _ => unreachable!("pair rejected by ensure_allowed"),
    }
}

fn super_terms(d: &DerivedQuantities) -> (f64, f64, f64) {
    (
        d.root,
        d.alpha_plus.expect("super branch carries alpha_plus"),
        d.alpha_minus.expect("super branch carries alpha_minus"),
    )
}

fn inner_only_super(d: &DerivedQuantities) -> Result<Option<(f64, f64)>> {
    match d.branch {
        BranchCase::Super => {
            let (q, ap, _) = super_terms(d);
            Ok(Some((q, ap)))
        }
        // tube closing up against the pole; G_m and its slope both tend to 0
        BranchCase::Unit => Ok(None),
        BranchCase::Sub => Err(domain(format!("inner tube at eta = {} < 1 cannot exist", d.eta))),
    }
}

fn inner_half_const_ro(d: &DerivedQuantities, g: &TorusGeometry) -> Result<f64> {
    let Some((q, ap)) = inner_only_super(d)? else {
        return Ok(0.0);
    };
    let eta = d.eta;
    let r_over_ri = g.pole_radius / g.inner_radius;
    Ok(-d.gm0 / (2.0 * d.thickness * ap) * (q - (eta / q + 1.0 / (eta * ap)) * (eta - r_over_ri)))
}

fn inner_half_const_t(d: &DerivedQuantities, g: &TorusGeometry) -> Result<f64> {
    let Some((q, ap)) = inner_only_super(d)? else {
        return Ok(0.0);
    };
    let eta = d.eta;
    let r_over_ri = g.pole_radius / g.inner_radius;
    Ok(-d.gm0 / (2.0 * g.outer_radius * ap) * (eta / q + 1.0 / (eta * ap)) * r_over_ri)
}

fn inner_quarter_const_ri(d: &DerivedQuantities, g: &TorusGeometry) -> Result<f64> {
    let Some((q, ap)) = inner_only_super(d)? else {
        return Ok(0.0);
    };
    let eta = d.eta;
    let r_over_ro = g.pole_radius / g.outer_radius;
    Ok(2.0 * d.gm0 / (d.thickness * ap) * (q + (eta / q + 1.0 / (eta * ap)) * (r_over_ro - eta)))
}

fn outer_half_const_ro(d: &DerivedQuantities, g: &TorusGeometry) -> f64 {
    let (eta, t) = (d.eta, d.thickness);
    let r_over_ri = g.pole_radius / g.inner_radius;
    let pre = -d.gm0 / (2.0 * t);
    match d.branch {
        BranchCase::Super => {
            let (q, _, am) = super_terms(d);
            pre / am * (q - (eta / q - 1.0 / (eta * am)) * (eta - r_over_ri))
        }
        BranchCase::Unit => pre / 3.0 * (1.0 + 2.0 * r_over_ri),
        BranchCase::Sub => {
            let (p, l) = (d.root, d.lambda.expect("sub branch carries lambda"));
            pre * 2.0 / l * (p - (2.0 / (eta * l) - eta / p) * (eta - r_over_ri))
        }
    }
}

fn outer_half_const_t(d: &DerivedQuantities, g: &TorusGeometry) -> f64 {
    let eta = d.eta;
    let pre = -d.gm0 * g.pole_radius / (g.inner_radius * g.outer_radius);
    match d.branch {
        BranchCase::Super => {
            let (q, _, am) = super_terms(d);
            pre / (2.0 * am) * (eta / q - 1.0 / (eta * am))
        }
        BranchCase::Unit => pre / 3.0,
        BranchCase::Sub => {
            let (p, l) = (d.root, d.lambda.expect("sub branch carries lambda"));
            pre / l * (2.0 / (eta * l) - eta / p)
        }
    }
}

fn outer_quarter_const_ri(d: &DerivedQuantities, g: &TorusGeometry) -> f64 {
    let eta = d.eta;
    let r_over_ro = g.pole_radius / g.outer_radius;
    let pre = 2.0 * d.gm0 / d.thickness;
    match d.branch {
        BranchCase::Super => {
            let (q, _, am) = super_terms(d);
            pre / am * (q + (eta / q - 1.0 / (eta * am)) * (r_over_ro - eta))
        }
        BranchCase::Unit => pre * (1.0 + 2.0 / 3.0 * (r_over_ro - 1.0)),
        BranchCase::Sub => {
            let (p, l) = (d.root, d.lambda.expect("sub branch carries lambda"));
            pre * 2.0 / l * (p + (2.0 / (eta * l) - eta / p) * (r_over_ro - eta))
        }
    }
}

/// Magnetic tension across the tube, A.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagneticTension(pub f64);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ForceResult {
    /// Force along the drive coordinate, N.
    pub force: f64,
    /// Permeance gradient, H/m.
    pub gradient: f64,
    /// Permeance in use, H; the floor when the tube has vanished.
    pub permeance: f64,
    pub exists: bool,
}

pub fn force(vm: MagneticTension, kind: FluxTubeKind, mode: DriveMode, geom: &TorusGeometry) -> Result<ForceResult> {
    if !vm.0.is_finite() {
        return Err(domain(format!("magnetic tension must be finite, got {}", vm.0)));
    }
    let gradient = permeance_gradient(kind, mode, geom)?;
    let frozen = kind == FluxTubeKind::InnerQuarter
        && mode == DriveMode::ConstInnerRadius
        && geom.outer_radius > geom.pole_radius
        && geom.inner_radius < geom.pole_radius;
    let evaluated = if frozen {
        TorusGeometry {
            outer_radius: geom.pole_radius,
            ..*geom
        }
    } else {
        *geom
    };
    let p = permeance(kind, &evaluated)?;
    let exists = !p.is_degenerate();
    let gradient = if exists { gradient } else { 0.0 };
    Ok(ForceResult {
        force: 0.5 * vm.0 * vm.0 * gradient,
        gradient,
        permeance: if exists {
            p.henry().max(PERMEANCE_FLOOR)
        } else {
            PERMEANCE_FLOOR
        },
        exists,
    })
}

/// Gap derivative of the half hollow cylinder `μ0 w/π ln(1 + 2t/g)` at
/// constant width `w` and thickness `t`.
pub fn legacy_gradient(width: f64, thickness: f64, gap: f64) -> Result<f64> {
    if ![width, thickness, gap].iter().all(|v| v.is_finite() && *v > 0.0) {
        return Err(domain(format!(
            "legacy gradient needs positive inputs, got w={width}, t={thickness}, g={gap}"
        )));
    }
    Ok(-(MU0 * width / PI) * 2.0 * thickness / (gap * (gap + 2.0 * thickness)))
}

/// Drive-coordinate derivative of the constant-width legacy model for any
/// allowed `(kind, mode)`, mirroring [`permeance_gradient`]'s coordinates.
pub fn legacy_drive_gradient(kind: FluxTubeKind, mode: DriveMode, width: f64, geom: &TorusGeometry) -> Result<f64> {
    ensure_allowed(kind, mode)?;
    geom.ensure_positive()?;
    if geom.outer_radius <= geom.inner_radius {
        return Ok(0.0);
    }
    let scale = MU0 * width / PI;
    let quarter = kind.is_quarter();
    Ok(match mode {
        DriveMode::ConstThickness => {
            let half = legacy_gradient(width, geom.thickness(), geom.gap())?;
            if quarter {
                4.0 * half
            } else {
                half
            }
        }
        // d/dg ln(r_o / (g/2)) = −1/g
        DriveMode::ConstOuterRadius => {
            let half = -scale / geom.gap();
            if quarter {
                4.0 * half
            } else {
                half
            }
        }
        // quarter: d/ds 2 ln(s / r_i) = 2/s
        DriveMode::ConstInnerRadius => 2.0 * scale / geom.outer_radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::outer_radius_for_eta;
    use crate::oracle::{default_step, gradient_fd};
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn outer_half_const_t_at_unit() {
        let ro = outer_radius_for_eta(2.0, 1.0, 1.0).unwrap();
        let geom = TorusGeometry::new(2.0, 1.0, ro);
        let gm0 = PI * MU0 * (ro - 1.0);
        let grad = permeance_gradient(FluxTubeKind::OuterHalf, DriveMode::ConstThickness, &geom).unwrap();
        assert!(rel(grad, -gm0 * 2.0 / (3.0 * 1.0 * ro)) < 1e-15);
    }

    #[test]
    fn deep_sub_branch_against_reference() {
        // eta ≈ 0.024, where central differences lose digits to cancellation;
        // reference from 50-digit arithmetic
        let geom = TorusGeometry::new(1.0, 1.1145629734096203, 2.2291259468192405e2);
        let grad = permeance_gradient(FluxTubeKind::OuterHalf, DriveMode::ConstThickness, &geom).unwrap();
        assert!(rel(grad, -3.753_832_959_920_311e-6) < 1e-13);
    }

    #[test]
    fn inner_quarter_const_ri_is_positive() {
        for (ri, ro) in [(0.01, 0.5), (0.2, 0.3), (0.5, 0.99), (0.001, 0.002)] {
            let geom = TorusGeometry::new(1.0, ri, ro);
            let grad = permeance_gradient(FluxTubeKind::InnerQuarter, DriveMode::ConstInnerRadius, &geom).unwrap();
            assert!(grad > 0.0, "{geom:?}");
        }
    }

    #[test]
    fn vanished_tubes_have_zero_gradient() {
        let collapsed = TorusGeometry::new(1.0, 0.4, 0.3);
        for kind in [
            FluxTubeKind::InnerHalf,
            FluxTubeKind::OuterHalf,
            FluxTubeKind::InnerQuarter,
            FluxTubeKind::OuterQuarter,
        ] {
            for &mode in allowed_modes(kind) {
                assert_eq!(permeance_gradient(kind, mode, &collapsed).unwrap(), 0.0);
            }
        }
        let outside = TorusGeometry::new(1.0, 0.4, 1.3);
        assert_eq!(
            permeance_gradient(FluxTubeKind::InnerHalf, DriveMode::ConstThickness, &outside).unwrap(),
            0.0
        );
    }

    #[test]
    fn inner_quarter_past_pole_keeps_permeance() {
        let geom = TorusGeometry::new(1.0, 0.3, 1.2);
        let r = force(
            MagneticTension(1.0),
            FluxTubeKind::InnerQuarter,
            DriveMode::ConstInnerRadius,
            &geom,
        )
        .unwrap();
        assert!(r.exists);
        assert_eq!(r.gradient, 0.0);
        assert_eq!(r.force, 0.0);
        let at_pole = permeance(FluxTubeKind::InnerQuarter, &TorusGeometry::new(1.0, 0.3, 1.0)).unwrap();
        assert_eq!(r.permeance, at_pole.henry());
    }

    #[test]
    fn disallowed_pairs_are_usage_errors() {
        let geom = TorusGeometry::new(1.0, 0.1, 0.5);
        for (kind, mode) in [
            (FluxTubeKind::InnerHalf, DriveMode::ConstInnerRadius),
            (FluxTubeKind::OuterHalf, DriveMode::ConstInnerRadius),
            (FluxTubeKind::LowerHalf, DriveMode::ConstThickness),
            (FluxTubeKind::LowerHalf, DriveMode::ConstOuterRadius),
        ] {
            assert!(matches!(permeance_gradient(kind, mode, &geom), Err(Error::Usage(_))));
            assert!(matches!(
                force(MagneticTension(1.0), kind, mode, &geom),
                Err(Error::Usage(_))
            ));
        }
    }

    #[test]
    fn force_is_half_vm_squared_times_gradient() {
        let geom = TorusGeometry::new(0.01, 0.001, 0.011);
        let r = force(
            MagneticTension(1.0),
            FluxTubeKind::OuterHalf,
            DriveMode::ConstThickness,
            &geom,
        )
        .unwrap();
        assert_eq!(r.force, 0.5 * r.gradient);
        let r3 = force(
            MagneticTension(3.0),
            FluxTubeKind::OuterHalf,
            DriveMode::ConstThickness,
            &geom,
        )
        .unwrap();
        assert_eq!(r3.force, 4.5 * r.gradient);
        let r0 = force(
            MagneticTension(0.0),
            FluxTubeKind::OuterHalf,
            DriveMode::ConstThickness,
            &geom,
        )
        .unwrap();
        assert_eq!(r0.force, 0.0);
        assert!(force(
            MagneticTension(f64::NAN),
            FluxTubeKind::OuterHalf,
            DriveMode::ConstThickness,
            &geom
        )
        .is_err());
    }

    #[test]
    fn vanished_force_uses_floor() {
        let geom = TorusGeometry::new(1.0, 0.5, 0.4);
        let r = force(
            MagneticTension(2.0),
            FluxTubeKind::OuterHalf,
            DriveMode::ConstOuterRadius,
            &geom,
        )
        .unwrap();
        assert!(!r.exists);
        assert_eq!(r.permeance, PERMEANCE_FLOOR);
        assert_eq!(r.gradient, 0.0);
        assert_eq!(r.force, 0.0);
    }

    #[test]
    fn paper_actuator_point_matches_fd() {
        // t = R = 10 mm, g = 2 mm
        let geom = drive_geometry(FluxTubeKind::OuterHalf, DriveMode::ConstThickness, 0.01, 0.01, 0.002);
        let r = force(
            MagneticTension(1.0),
            FluxTubeKind::OuterHalf,
            DriveMode::ConstThickness,
            &geom,
        )
        .unwrap();
        let fd = gradient_fd(
            FluxTubeKind::OuterHalf,
            DriveMode::ConstThickness,
            &geom,
            default_step(0.002),
        )
        .unwrap();
        assert!(rel(r.force, 0.5 * fd.richardson) <= 1e-6);
    }

    #[test]
    fn legacy_gradient_examples() {
        let (w, t, g) = (2.0 * PI * 0.01, 0.01, 0.004);
        let analytic = legacy_gradient(w, t, g).unwrap();
        let p = |g: f64| MU0 * w / PI * (1.0 + 2.0 * t / g).ln();
        let h = 1e-7;
        let fd = (p(g + h) - p(g - h)) / (2.0 * h);
        assert!(rel(analytic, fd) < 1e-8);
        assert!(analytic < 0.0);
        assert!(legacy_gradient(w, 1e-300, g).unwrap().abs() < 1e-300);
        assert!(legacy_gradient(0.0, t, g).is_err());
        assert!(legacy_gradient(w, t, -g).is_err());
    }

    #[test]
    fn mode_names_round_trip() {
        for m in DriveMode::ALL {
            assert_eq!(m.name().parse::<DriveMode>().unwrap(), m);
        }
        assert!("const-g".parse::<DriveMode>().is_err());
    }

    #[test]
    fn drive_coordinates_invert() {
        let geom = TorusGeometry::new(1.0, 0.2, 0.7);
        for kind in [
            FluxTubeKind::InnerHalf,
            FluxTubeKind::OuterHalf,
            FluxTubeKind::InnerQuarter,
            FluxTubeKind::OuterQuarter,
        ] {
            for &mode in allowed_modes(kind) {
                let (held, x) = drive_coordinate(kind, mode, &geom);
                let back = drive_geometry(kind, mode, 1.0, held, x);
                assert!((back.inner_radius - 0.2).abs() < 1e-15 && (back.outer_radius - 0.7).abs() < 1e-15);
            }
        }
    }

    proptest! {
        #[test]
        fn quarter_gradient_is_four_times_half(
            ri in 0.01f64..0.5,
            t_rel in 0.05f64..5.0,
            mode in prop::sample::select(vec![DriveMode::ConstOuterRadius, DriveMode::ConstThickness]),
        ) {
            let geom = TorusGeometry::new(1.0, ri, ri * (1.0 + t_rel));
            for (q, h) in [(FluxTubeKind::InnerQuarter, FluxTubeKind::InnerHalf), (FluxTubeKind::OuterQuarter, FluxTubeKind::OuterHalf)] {
                let gq = permeance_gradient(q, mode, &geom).unwrap();
                let gh = permeance_gradient(h, mode, &geom).unwrap();
                prop_assert_eq!(gq, 4.0 * gh);
            }
        }

        #[test]
        fn force_even_in_tension(vm in -100.0f64..100.0, ri in 0.01f64..0.5, t_rel in 0.05f64..5.0) {
            let geom = TorusGeometry::new(1.0, ri, ri * (1.0 + t_rel));
            let a = force(MagneticTension(vm), FluxTubeKind::OuterHalf, DriveMode::ConstOuterRadius, &geom).unwrap();
            let b = force(MagneticTension(-vm), FluxTubeKind::OuterHalf, DriveMode::ConstOuterRadius, &geom).unwrap();
            prop_assert_eq!(a.force, b.force);
        }

        #[test]
        fn gradient_signs(
            r in 0.1f64..10.0,
            ri_over_r in 1e-3f64..3.0,
            t_rel in 1e-3f64..20.0,
        ) {
            let ri = ri_over_r * r;
            let geom = TorusGeometry::new(r, ri, ri * (1.0 + t_rel));
            for kind in [FluxTubeKind::InnerHalf, FluxTubeKind::OuterHalf, FluxTubeKind::InnerQuarter, FluxTubeKind::OuterQuarter] {
                for &mode in allowed_modes(kind) {
                    let grad = permeance_gradient(kind, mode, &geom).unwrap();
                    if mode == DriveMode::ConstInnerRadius {
                        prop_assert!(grad >= 0.0, "{kind} {mode} {geom:?}: {grad}");
                    } else {
                        prop_assert!(grad <= 0.0, "{kind} {mode} {geom:?}: {grad}");
                    }
                }
            }
        }
    }
}
