//! Flux-tube geometry, the derived dimensionless quantities, branch
//! classification and existence rules shared by every other module.
//!
//! A hollow-toroid flux tube is described by three radii: the pole radius `R`
//! (distance of the tube centre from the rotation axis), and the inner and
//! outer radii `r_i`, `r_o` of the half annulus that is swept around the axis.
//! Everything else (`t`, `g`, `η`, `G_m0`, `α±`, `λ`) follows from these.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};
use crate::special::{arccot, arccot_complement};

/// Vacuum permeability, H/m.
pub const MU0: f64 = 4.0e-7 * PI;

/// Half-width of the closed band `[1 − w, 1 + w]` around `η = 1` in which the
/// η = 1 limit formulas are used instead of the two regular branches.
pub const ETA_WINDOW: f64 = 1e-6;

/// Physical constants in SI units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhysicalConstants {
    /// Vacuum permeability, H/m.
    pub mu0: f64,
}

impl PhysicalConstants {
    pub const SI: PhysicalConstants = PhysicalConstants { mu0: MU0 };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::SI
    }
}

/// The five flux-tube shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FluxTubeKind {
    InnerHalf,
    LowerHalf,
    OuterHalf,
    InnerQuarter,
    OuterQuarter,
}

impl FluxTubeKind {
    pub const ALL: [FluxTubeKind; 5] = [
        FluxTubeKind::InnerHalf,
        FluxTubeKind::LowerHalf,
        FluxTubeKind::OuterHalf,
        FluxTubeKind::InnerQuarter,
        FluxTubeKind::OuterQuarter,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FluxTubeKind::InnerHalf => "inner-half",
            FluxTubeKind::LowerHalf => "lower-half",
            FluxTubeKind::OuterHalf => "outer-half",
            FluxTubeKind::InnerQuarter => "inner-quarter",
            FluxTubeKind::OuterQuarter => "outer-quarter",
        }
    }

    pub fn is_quarter(self) -> bool {
        matches!(self, FluxTubeKind::InnerQuarter | FluxTubeKind::OuterQuarter)
    }

    /// Tubes wrapping toward the rotation axis; they need `r_o ≤ R`.
    pub fn is_axis_bounded(self) -> bool {
        matches!(self, FluxTubeKind::InnerHalf | FluxTubeKind::InnerQuarter)
    }

    /// The half torus a quarter is cut from (identity for half kinds).
    pub fn half(self) -> FluxTubeKind {
        match self {
            FluxTubeKind::InnerQuarter => FluxTubeKind::InnerHalf,
            FluxTubeKind::OuterQuarter => FluxTubeKind::OuterHalf,
            other => other,
        }
    }
}

impl fmt::Display for FluxTubeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FluxTubeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FluxTubeKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown flux tube kind `{s}`")))
    }
}

/// Which side of the pole the radial integrand bends to: `+ sin ϑ` for the
/// outer tube, `− sin ϑ` for the inner one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Inner,
    Outer,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Inner => -1.0,
            Side::Outer => 1.0,
        }
    }
}

/// The three defining radii of a hollow-toroid flux tube, in metres.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusGeometry {
    /// `R`, radius of the cylindrical pole the tube wraps around.
    pub pole_radius: f64,
    /// `r_i`, inner radius of the tube cross-section (half the air gap).
    pub inner_radius: f64,
    /// `r_o`, outer radius of the tube cross-section.
    pub outer_radius: f64,
}

impl TorusGeometry {
    pub const fn new(pole_radius: f64, inner_radius: f64, outer_radius: f64) -> Self {
        Self {
            pole_radius,
            inner_radius,
            outer_radius,
        }
    }

    /// `t = r_o − r_i`.
    pub fn thickness(&self) -> f64 {
        self.outer_radius - self.inner_radius
    }

    /// `g = 2 r_i`.
    pub fn gap(&self) -> f64 {
        2.0 * self.inner_radius
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self::new(c * self.pole_radius, c * self.inner_radius, c * self.outer_radius)
    }

    fn radii_are_positive(&self) -> bool {
        [self.pole_radius, self.inner_radius, self.outer_radius]
            .iter()
            .all(|r| r.is_finite() && *r > 0.0)
    }

    pub(crate) fn ensure_positive(&self) -> Result<()> {
        if self.radii_are_positive() {
            Ok(())
        } else {
            Err(domain(format!("radii must be finite and positive, got {self:?}")))
        }
    }
}

/// Which closed form of the reluctance integral applies.
///
/// Ordered `Sub < Unit < Super`, matching increasing `η`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BranchCase {
    /// `η < 1 − w`: logarithmic branch.
    Sub,
    /// `η ∈ [1 − w, 1 + w]`: evaluated with the η = 1 limit.
    Unit,
    /// `η > 1 + w`: arctangent branch.
    Super,
}

impl fmt::Display for BranchCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchCase::Sub => "sub",
            BranchCase::Unit => "unit",
            BranchCase::Super => "super",
        })
    }
}

pub fn classify_branch(eta: f64) -> Result<BranchCase> {
    if !eta.is_finite() || eta <= 0.0 {
        return Err(domain(format!("eta must be finite and positive, got {eta}")));
    }
    Ok(if eta > 1.0 + ETA_WINDOW {
        BranchCase::Super
    } else if eta < 1.0 - ETA_WINDOW {
        BranchCase::Sub
    } else {
        BranchCase::Unit
    })
}

/// Every quantity the closed forms are written in.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedQuantities {
    /// `t = r_o − r_i` [m].
    pub thickness: f64,
    /// `g = 2 r_i` [m].
    pub gap: f64,
    /// `η = (R/t) ln(r_o/r_i)`; `R/r_i` in the degenerate limit `t = 0`.
    pub eta: f64,
    /// `G_m0 = π μ0 t` [H].
    pub gm0: f64,
    /// `√(η² − 1)` on the super branch, `√(1 − η²)` on the sub branch, 0 at unit.
    pub root: f64,
    /// `π/2 + arccot √(η² − 1)`, super branch only.
    pub alpha_plus: Option<f64>,
    /// `π/2 − arccot √(η² − 1)`, super branch only.
    pub alpha_minus: Option<f64>,
    /// `ln((1 + √(1 − η²)) / (1 − √(1 − η²)))`, sub branch only.
    pub lambda: Option<f64>,
    pub branch: BranchCase,
    /// `r_o = r_i`: the tube has zero cross-section.
    pub degenerate: bool,
}

pub fn derive(geom: &TorusGeometry) -> Result<DerivedQuantities> {
    geom.ensure_positive()?;
    let t = geom.thickness();
    if t < 0.0 {
        return Err(domain(format!(
            "outer radius {} below inner radius {}",
            geom.outer_radius, geom.inner_radius
        )));
    }
    let degenerate = t == 0.0;
    let eta = if degenerate {
        geom.pole_radius / geom.inner_radius
    } else {
        geom.pole_radius * (t / geom.inner_radius).ln_1p() / t
    };
    let branch = classify_branch(eta)?;

    let (root, alpha_plus, alpha_minus, lambda) = match branch {
        BranchCase::Super => {
            let q = ((eta - 1.0) * (eta + 1.0)).sqrt();
            (q, Some(FRAC_PI_2 + arccot(q)), Some(arccot_complement(q)), None)
        }
        BranchCase::Sub => {
            let p = ((1.0 - eta) * (1.0 + eta)).sqrt();
            // ln((1+p)/(1-p)) = 2 artanh(p)
            (p, None, None, Some(2.0 * p.atanh()))
        }
        BranchCase::Unit => (0.0, None, None, None),
    };

    Ok(DerivedQuantities {
        thickness: t,
        gap: geom.gap(),
        eta,
        gm0: PI * MU0 * t,
        root,
        alpha_plus,
        alpha_minus,
        lambda,
        branch,
        degenerate,
    })
}

/// Outer radius `r_o > r_i` at which `η(R, r_i, r_o)` equals `eta`, by bisection.
///
/// `η` falls monotonically from `R/r_i` (as `r_o → r_i`) towards 0, so a
/// solution exists iff `0 < eta < R/r_i`.
pub fn outer_radius_for_eta(pole_radius: f64, inner_radius: f64, eta: f64) -> Result<f64> {
    let limit = pole_radius / inner_radius;
    if !(eta > 0.0 && eta < limit) || !limit.is_finite() {
        return Err(domain(format!("eta {eta} not reachable for R/r_i = {limit}")));
    }
    let eta_at = |ro: f64| pole_radius * ((ro - inner_radius) / inner_radius).ln_1p() / (ro - inner_radius);
    let mut lo = inner_radius;
    let mut hi = 2.0 * inner_radius;
    while eta_at(hi) > eta {
        lo = hi;
        hi *= 2.0;
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(hi);
        }
        if mid == inner_radius || eta_at(mid) > eta {
            lo = mid;
        } else {
            hi = mid;
        }
    }
}

/// Why a tube does not exist for a given geometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nonexistence {
    /// A radius is non-finite or not positive.
    InvalidRadius,
    /// `r_o ≤ r_i`.
    Collapsed,
    /// Inner-side tube with `r_o > R` would intersect itself on the axis side.
    IntersectsAxis,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExistenceReport {
    pub exists: bool,
    pub reason: Option<Nonexistence>,
    /// Branch of `η`, present whenever `η` is defined (`r_o ≥ r_i`).
    pub branch: Option<BranchCase>,
}

pub fn validate(kind: FluxTubeKind, geom: &TorusGeometry) -> ExistenceReport {
    let missing = |reason, branch| ExistenceReport {
        exists: false,
        reason: Some(reason),
        branch,
    };
    if !geom.radii_are_positive() {
        return missing(Nonexistence::InvalidRadius, None);
    }
    let branch = derive(geom).ok().map(|d| d.branch);
    if geom.outer_radius <= geom.inner_radius {
        return missing(Nonexistence::Collapsed, branch);
    }
    if kind.is_axis_bounded() && geom.outer_radius > geom.pole_radius {
        return missing(Nonexistence::IntersectsAxis, branch);
    }
    // ln x − x increases on (0, 1), so r_o ≤ R forces η > R/r_o ≥ 1
    debug_assert!(!(kind.is_axis_bounded() && branch == Some(BranchCase::Sub)));
    ExistenceReport {
        exists: true,
        reason: None,
        branch,
    }
}
