//! Closed-form permeances of the five hollow-toroid flux tubes, and the legacy
//! wrapped-cylinder approximation they are compared against.
//!
//! With `G_m0 = π μ0 t` and `η = (R/t) ln(r_o/r_i)`:
//!
//! | kind        | `η > 1`            | `η = 1` | `η < 1`          |
//! |-------------|--------------------|---------|------------------|
//! | inner half  | `G_m0 √(η²−1)/α+`  | 0       | (does not exist) |
//! | outer half  | `G_m0 √(η²−1)/α−`  | `G_m0`  | `G_m0 2√(1−η²)/λ`|
//! | lower half  | `G_m0 √(η²−1)/(π/2)` | error | error            |
//!
//! Quarters are twice the corresponding half. The outer-half η = 1 value is
//! the common limit of both regular branches.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Result};
use crate::geometry::{derive, validate, BranchCase, DerivedQuantities, FluxTubeKind, TorusGeometry, MU0};

/// Smallest permeance handed to the force pathway, H. Vanished tubes are
/// replaced by this instead of zero so the reluctance stays finite.
pub const PERMEANCE_FLOOR: f64 = 1e-15;

/// Permeance of a flux tube, H.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Permeance {
    Finite(f64),
    /// The tube has vanished (`G_m = 0`, infinite reluctance).
    Degenerate,
}

impl Permeance {
    pub fn henry(self) -> f64 {
        match self {
            Permeance::Finite(v) => v,
            Permeance::Degenerate => 0.0,
        }
    }

    pub fn is_degenerate(self) -> bool {
        matches!(self, Permeance::Degenerate)
    }

    /// Value with the floor applied, for use where a reciprocal is taken.
    pub fn floored(self) -> f64 {
        self.henry().max(PERMEANCE_FLOOR)
    }

    pub fn reluctance(self) -> Reluctance {
        match self {
            Permeance::Finite(v) if v > 0.0 => Reluctance::Finite(1.0 / v),
            _ => Reluctance::Infinite,
        }
    }

    fn scale(self, factor: f64) -> Permeance {
        match self {
            Permeance::Finite(v) => Permeance::Finite(factor * v),
            Permeance::Degenerate => Permeance::Degenerate,
        }
    }
}

/// Reluctance of a flux tube, 1/H.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Reluctance {
    Finite(f64),
    Infinite,
}

impl Reluctance {
    pub fn per_henry(self) -> f64 {
        match self {
            Reluctance::Finite(v) => v,
            Reluctance::Infinite => f64::INFINITY,
        }
    }
}

pub fn permeance(kind: FluxTubeKind, geom: &TorusGeometry) -> Result<Permeance> {
    geom.ensure_positive()?;
    if !validate(kind, geom).exists {
        return Ok(Permeance::Degenerate);
    }
    let d = derive(geom)?;
    match kind {
        FluxTubeKind::InnerHalf => inner_half(&d),
        FluxTubeKind::OuterHalf => Ok(outer_half(&d)),
        FluxTubeKind::LowerHalf => lower_half(&d),
        FluxTubeKind::InnerQuarter => Ok(inner_half(&d)?.scale(2.0)),
        FluxTubeKind::OuterQuarter => Ok(outer_half(&d).scale(2.0)),
    }
}

pub fn reluctance(kind: FluxTubeKind, geom: &TorusGeometry) -> Result<Reluctance> {
    Ok(permeance(kind, geom)?.reluctance())
}

fn inner_half(d: &DerivedQuantities) -> Result<Permeance> {
    match d.branch {
        BranchCase::Super => {
            let alpha_plus = d.alpha_plus.expect("super branch carries alpha_plus");
            Ok(Permeance::Finite(d.gm0 * d.root / alpha_plus))
        }
        // η → 1 only as the tube closes up against the pole (r_i → r_o = R); R_m → ∞
        BranchCase::Unit => Ok(Permeance::Degenerate),
        BranchCase::Sub => Err(domain(format!("inner tube at eta = {} < 1 cannot exist", d.eta))),
    }
}

fn outer_half(d: &DerivedQuantities) -> Permeance {
    let value = match d.branch {
        BranchCase::Super => d.gm0 * d.root / d.alpha_minus.expect("super branch carries alpha_minus"),
        BranchCase::Unit => d.gm0,
        BranchCase::Sub => d.gm0 * 2.0 * d.root / d.lambda.expect("sub branch carries lambda"),
    };
    Permeance::Finite(value)
}

/// Series connection of an inner and an outer quarter; α+ + α− = π.
fn lower_half(d: &DerivedQuantities) -> Result<Permeance> {
    match d.branch {
        BranchCase::Super => Ok(Permeance::Finite(d.gm0 * d.root / FRAC_PI_2)),
        _ => Err(domain(format!(
            "lower half torus needs eta > 1 (its inner quarter does not exist otherwise), got {}",
            d.eta
        ))),
    }
}

/// Half hollow cylinder with circumferential flux, depth `width`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LegacyCylinderSpec {
    /// Depth of the cylinder, m. The wrapped-cylinder model uses a pole circumference.
    pub width: f64,
    pub thickness: f64,
    pub inner_radius: f64,
}

/// `μ0 w / π · ln(1 + t / r_i)`.
pub fn legacy_half_hollow_cylinder(spec: &LegacyCylinderSpec) -> Result<f64> {
    let LegacyCylinderSpec {
        width,
        thickness,
        inner_radius,
    } = *spec;
    if ![width, thickness, inner_radius]
        .iter()
        .all(|v| v.is_finite() && *v > 0.0)
    {
        return Err(domain(format!("legacy cylinder needs positive fields, got {spec:?}")));
    }
    Ok(MU0 * width / PI * (thickness / inner_radius).ln_1p())
}

/// The wrapped-cylinder approximation of a torus kind, with width `2πR`:
/// `2 μ0 R ln(r_o/r_i) = G_m0 η / (π/2)` for halves, twice that for quarters.
pub fn legacy_wrapped_permeance(kind: FluxTubeKind, geom: &TorusGeometry) -> Result<Permeance> {
    geom.ensure_positive()?;
    if geom.outer_radius <= geom.inner_radius {
        return Ok(Permeance::Degenerate);
    }
    let half = legacy_half_hollow_cylinder(&LegacyCylinderSpec {
        width: 2.0 * PI * geom.pole_radius,
        thickness: geom.thickness(),
        inner_radius: geom.inner_radius,
    })?;
    let factor = if kind.is_quarter() { 2.0 } else { 1.0 };
    Ok(Permeance::Finite(factor * half))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::outer_radius_for_eta;
    use crate::oracle::{permeance_quadrature, QuadratureConfig};
    use proptest::prelude::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn inner_half_vanishes_as_tube_closes() {
        let mut last = f64::INFINITY;
        for gap in [1e-1, 1e-2, 1e-3, 1e-4, 1e-6] {
            let g = permeance(FluxTubeKind::InnerHalf, &TorusGeometry::new(1.0, 0.5 - gap, 0.5))
                .unwrap()
                .henry();
            assert!(g < last);
            last = g;
        }
        assert!(last < 1e-11);
        let closed = TorusGeometry::new(1.0, 0.5, 0.5);
        assert_eq!(
            permeance(FluxTubeKind::InnerHalf, &closed).unwrap(),
            Permeance::Degenerate
        );
        assert_eq!(
            reluctance(FluxTubeKind::InnerHalf, &closed).unwrap(),
            Reluctance::Infinite
        );
    }

    #[test]
    fn outer_half_at_unit_eta_is_gm0() {
        let ro = outer_radius_for_eta(2.0, 1.0, 1.0).unwrap();
        let geom = TorusGeometry::new(2.0, 1.0, ro);
        let d = derive(&geom).unwrap();
        assert_eq!(d.branch, BranchCase::Unit);
        let g = permeance(FluxTubeKind::OuterHalf, &geom).unwrap().henry();
        assert!(rel(g, PI * MU0 * (ro - 1.0)) < 1e-15);
        let q = permeance(FluxTubeKind::OuterQuarter, &geom).unwrap().henry();
        assert_eq!(q, 2.0 * g);
    }

    #[test]
    fn quarter_is_twice_half() {
        let geom = TorusGeometry::new(1.0, 0.2, 0.7);
        let h = permeance(FluxTubeKind::InnerHalf, &geom).unwrap().henry();
        let q = permeance(FluxTubeKind::InnerQuarter, &geom).unwrap().henry();
        assert_eq!(q, 2.0 * h);
    }

    #[test]
    fn inner_half_matches_quadrature_small_gap() {
        let geom = TorusGeometry::new(1e-3, 1e-5, 8e-4);
        let report = permeance_quadrature(FluxTubeKind::InnerHalf, &geom, &QuadratureConfig::default()).unwrap();
        assert!(report.converged);
        assert!(report.rel_error <= 1e-9, "{report:?}");
    }

    #[test]
    fn lower_half_rejects_non_super() {
        assert!(permeance(FluxTubeKind::LowerHalf, &TorusGeometry::new(1.0, 1.0, 2.0)).is_err());
        let ro = outer_radius_for_eta(2.0, 1.0, 1.0).unwrap();
        assert!(permeance(FluxTubeKind::LowerHalf, &TorusGeometry::new(2.0, 1.0, ro)).is_err());
    }

    #[test]
    fn lower_half_is_series_of_quarters() {
        let geom = TorusGeometry::new(1.0, 0.05, 0.6);
        let lower = reluctance(FluxTubeKind::LowerHalf, &geom).unwrap().per_henry();
        let iq = reluctance(FluxTubeKind::InnerQuarter, &geom).unwrap().per_henry();
        let oq = reluctance(FluxTubeKind::OuterQuarter, &geom).unwrap().per_henry();
        assert!(rel(iq + oq, lower) < 1e-12);
    }

    #[test]
    fn reluctance_of_known_permeance() {
        assert!((Permeance::Finite(2e-9).reluctance().per_henry() - 5e8).abs() < 1e-6);
        assert_eq!(Permeance::Degenerate.reluctance(), Reluctance::Infinite);
        assert_eq!(Permeance::Degenerate.floored(), PERMEANCE_FLOOR);
    }

    #[test]
    fn legacy_examples() {
        let g = legacy_half_hollow_cylinder(&LegacyCylinderSpec {
            width: 0.01,
            thickness: 0.005,
            inner_radius: 0.005,
        })
        .unwrap();
        assert!(rel(g, MU0 * 0.01 * 2f64.ln() / PI) < 1e-15);
        assert!((g - 2.772e-9).abs() < 1e-12);

        let tiny = legacy_half_hollow_cylinder(&LegacyCylinderSpec {
            width: 0.01,
            thickness: 1e-300,
            inner_radius: 0.005,
        })
        .unwrap();
        assert!(tiny < 1e-300);

        for bad in [
            LegacyCylinderSpec {
                width: 0.0,
                thickness: 0.1,
                inner_radius: 0.1,
            },
            LegacyCylinderSpec {
                width: 0.1,
                thickness: -0.1,
                inner_radius: 0.1,
            },
            LegacyCylinderSpec {
                width: 0.1,
                thickness: 0.1,
                inner_radius: f64::NAN,
            },
        ] {
            assert!(legacy_half_hollow_cylinder(&bad).is_err());
        }
    }

    #[test]
    fn legacy_with_pole_circumference_is_gm0_eta_over_half_pi() {
        let geom = TorusGeometry::new(1.0, 0.3, 0.9);
        let d = derive(&geom).unwrap();
        let legacy = legacy_half_hollow_cylinder(&LegacyCylinderSpec {
            width: 2.0 * PI,
            thickness: d.thickness,
            inner_radius: 0.3,
        })
        .unwrap();
        assert!(rel(legacy, d.gm0 * d.eta / FRAC_PI_2) < 1e-14);
        let wrapped = legacy_wrapped_permeance(FluxTubeKind::OuterQuarter, &geom)
            .unwrap()
            .henry();
        assert!(rel(wrapped, 2.0 * legacy) < 1e-15);
    }

    #[test]
    fn planar_asymptote() {
        // r_o / r_i = 10, R / t = 1e4
        let ri = 1e-3;
        let geom = TorusGeometry::new(1e4 * 9.0 * ri, ri, 10.0 * ri);
        let legacy = legacy_wrapped_permeance(FluxTubeKind::OuterHalf, &geom)
            .unwrap()
            .henry();
        for kind in [FluxTubeKind::InnerHalf, FluxTubeKind::OuterHalf] {
            let exact = permeance(kind, &geom).unwrap().henry();
            assert!(rel(legacy, exact) <= 1e-4);
        }
    }

    proptest! {
        #[test]
        fn grows_with_outer_radius(
            ri_over_r in 1e-3f64..0.5,
            a in 1.01f64..50.0,
            b in 1.01f64..50.0,
        ) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assume!(hi / lo > 1.0 + 1e-9);
            for kind in [FluxTubeKind::OuterHalf, FluxTubeKind::OuterQuarter] {
                let g_lo = permeance(kind, &TorusGeometry::new(1.0, ri_over_r, lo * ri_over_r)).unwrap().henry();
                let g_hi = permeance(kind, &TorusGeometry::new(1.0, ri_over_r, hi * ri_over_r)).unwrap().henry();
                prop_assert!(g_hi > g_lo);
            }
        }

        #[test]
        fn inner_kinds_grow_with_outer_radius(
            ri_over_r in 1e-3f64..0.9,
            a in 0.0f64..1.0,
            b in 0.0f64..1.0,
        ) {
            prop_assume!((a - b).abs() > 1e-6);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            // r_o spans (r_i, R]
            let ro = |u: f64| ri_over_r + (1.0 - ri_over_r) * (0.01 + 0.99 * u);
            for kind in [FluxTubeKind::InnerHalf, FluxTubeKind::InnerQuarter, FluxTubeKind::LowerHalf] {
                let g_lo = permeance(kind, &TorusGeometry::new(1.0, ri_over_r, ro(lo))).unwrap().henry();
                let g_hi = permeance(kind, &TorusGeometry::new(1.0, ri_over_r, ro(hi))).unwrap().henry();
                prop_assert!(g_hi > g_lo);
            }
        }

        #[test]
        fn branch_continuity_of_outer_permeance(
            r in 0.5f64..5.0,
            ri_over_r in 0.05f64..0.9,
            delta_exp in prop::sample::select(vec![1e-3, 1e-4]),
            above in any::<bool>(),
        ) {
            let ri = ri_over_r * r;
            let target = if above { 1.0 + delta_exp } else { 1.0 - delta_exp };
            let ro = outer_radius_for_eta(r, ri, target).unwrap();
            let geom = TorusGeometry::new(r, ri, ro);
            let gm0 = PI * MU0 * (ro - ri);
            for (kind, factor) in [(FluxTubeKind::OuterHalf, 1.0), (FluxTubeKind::OuterQuarter, 2.0)] {
                let g = permeance(kind, &geom).unwrap().henry();
                prop_assert!(rel(g, factor * gm0) <= 2.0 * delta_exp * 1.1);
            }
        }
    }
}
