//! Permeances and reluctance-force gradients of hollow-toroid stray flux
//! tubes around cylindrical poles.
//!
//! The five tube shapes (inner, lower and outer half tori, inner and outer
//! quarter tori) have exact closed forms in terms of
//! `η = (R/t) ln(r_o/r_i)`; see [`permeance::permeance`] and
//! [`force::permeance_gradient`]. The [`oracle`] module re-derives every value
//! numerically, and [`sweep`] produces the CSV tables used for plotting.
//!
//! ```
//! use toroflux::{permeance, FluxTubeKind, TorusGeometry};
//!
//! let geom = TorusGeometry::new(1e-3, 1e-4, 8e-4);
//! let g = permeance(FluxTubeKind::OuterHalf, &geom).unwrap();
//! assert!(g.henry() > 0.0);
//! ```

pub mod check;
pub mod error;
pub mod force;
pub mod geometry;
pub mod oracle;
pub mod permeance;
pub mod special;
pub mod sweep;

pub use error::{Error, Result};
pub use force::{
    allowed_modes, force, legacy_drive_gradient, legacy_gradient, permeance_gradient, DriveMode, ForceResult,
    MagneticTension,
};
pub use geometry::{
    classify_branch, derive, validate, BranchCase, DerivedQuantities, ExistenceReport, FluxTubeKind, TorusGeometry,
    ETA_WINDOW, MU0,
};
pub use permeance::{
    legacy_half_hollow_cylinder, legacy_wrapped_permeance, permeance, reluctance, LegacyCylinderSpec, Permeance,
    Reluctance, PERMEANCE_FLOOR,
};
