//! Browser bindings for the interactive demo page in `www/`.

use toroflux::sweep::{sweep_force, sweep_permeance, ActuatorSweepSpec, SweepRange, SweepSpec};
use toroflux::{derive, legacy_wrapped_permeance, permeance, DriveMode, FluxTubeKind, Result, TorusGeometry};
use wasm_bindgen::prelude::*;

/// One tube evaluated at one geometry.
#[wasm_bindgen]
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    eta: f64,
    branch: String,
    permeance: f64,
    legacy: f64,
    exists: bool,
}

#[wasm_bindgen]
impl Evaluation {
    #[wasm_bindgen(getter)]
    pub fn eta(&self) -> f64 {
        self.eta
    }

    #[wasm_bindgen(getter)]
    pub fn branch(&self) -> String {
        self.branch.clone()
    }

    /// Henry; 0 when the tube does not exist.
    #[wasm_bindgen(getter)]
    pub fn permeance(&self) -> f64 {
        self.permeance
    }

    /// Wrapped-cylinder permeance, henry; NaN when undefined.
    #[wasm_bindgen(getter)]
    pub fn legacy(&self) -> f64 {
        self.legacy
    }

    #[wasm_bindgen(getter)]
    pub fn exists(&self) -> bool {
        self.exists
    }
}

/// Normalized permeance families `G_m/(μ0 R)` over `r_i/R`.
///
/// Curves are stored family after family; gaps where a tube does not exist
/// are NaN so plots break the line there.
#[wasm_bindgen]
#[derive(Clone, Debug, PartialEq)]
pub struct Curves {
    x: Vec<f64>,
    exact: Vec<f64>,
    legacy: Vec<f64>,
}

#[wasm_bindgen]
impl Curves {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn exact(&self) -> Vec<f64> {
        self.exact.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn legacy(&self) -> Vec<f64> {
        self.legacy.clone()
    }
}

/// Force against stroke for the exact and the legacy model.
#[wasm_bindgen]
#[derive(Clone, Debug, PartialEq)]
pub struct ForceCurves {
    stroke: Vec<f64>,
    exact: Vec<f64>,
    legacy: Vec<f64>,
    deviation_percent: Vec<f64>,
}

#[wasm_bindgen]
impl ForceCurves {
    #[wasm_bindgen(getter)]
    pub fn stroke(&self) -> Vec<f64> {
        self.stroke.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn exact(&self) -> Vec<f64> {
        self.exact.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn legacy(&self) -> Vec<f64> {
        self.legacy.clone()
    }

    #[wasm_bindgen(getter, js_name = deviationPercent)]
    pub fn deviation_percent(&self) -> Vec<f64> {
        self.deviation_percent.clone()
    }
}

pub fn evaluate(kind: &str, pole_radius: f64, inner_radius: f64, outer_radius: f64) -> Result<Evaluation> {
    let kind: FluxTubeKind = kind.parse()?;
    let geom = TorusGeometry::new(pole_radius, inner_radius, outer_radius);
    let d = derive(&geom)?;
    let g = permeance(kind, &geom)?;
    let legacy = if outer_radius > inner_radius {
        legacy_wrapped_permeance(kind, &geom)?.henry()
    } else {
        f64::NAN
    };
    Ok(Evaluation {
        eta: d.eta,
        branch: d.branch.to_string(),
        permeance: g.henry(),
        legacy,
        exists: !g.is_degenerate(),
    })
}

/// One curve per `r_o/R` in `outer`, swept over `r_i/R` on a log grid.
pub fn permeance_curves(kind: &str, outer: &[f64], ri_min: f64, ri_max: f64, samples: usize) -> Result<Curves> {
    let spec = SweepSpec {
        kind: kind.parse()?,
        mode: DriveMode::ConstOuterRadius,
        pole_radius: 1.0,
        held: outer.to_vec(),
        range: SweepRange::log(ri_min, ri_max, samples),
        normalized: true,
    };
    let rows = sweep_permeance(&spec)?;
    let nan_unless = |keep: bool, v: f64| if keep { v } else { f64::NAN };
    Ok(Curves {
        x: spec.range.values(),
        exact: rows.iter().map(|r| nan_unless(r.exists, r.gm_norm)).collect(),
        legacy: rows
            .iter()
            .map(|r| {
                nan_unless(
                    r.exists,
                    r.gm_legacy.map_or(f64::NAN, |l| l / (toroflux::MU0 * spec.pole_radius)),
                )
            })
            .collect(),
    })
}

/// Force sweep with the legacy width fixed at `2πR`.
#[allow(clippy::too_many_arguments)]
pub fn force_curves(
    kind: &str,
    mode: &str,
    pole_radius: f64,
    held: f64,
    theta: f64,
    start: f64,
    stop: f64,
    samples: usize,
) -> Result<ForceCurves> {
    let spec = ActuatorSweepSpec {
        kind: kind.parse()?,
        mode: mode.parse()?,
        pole_radius,
        held,
        theta,
        stroke: SweepRange::linear(start, stop, samples),
        legacy_width: 2.0 * std::f64::consts::PI * pole_radius,
        branch_points: false,
    };
    let rows = sweep_force(&spec)?;
    Ok(ForceCurves {
        stroke: rows.iter().map(|r| r.stroke).collect(),
        exact: rows.iter().map(|r| r.f_new).collect(),
        legacy: rows.iter().map(|r| r.f_legacy).collect(),
        deviation_percent: rows.iter().map(|r| r.rel_dev.map_or(f64::NAN, |d| 100.0 * d)).collect(),
    })
}

#[wasm_bindgen(js_name = evaluate)]
pub fn evaluate_js(
    kind: &str,
    pole_radius: f64,
    inner_radius: f64,
    outer_radius: f64,
) -> std::result::Result<Evaluation, JsError> {
    Ok(evaluate(kind, pole_radius, inner_radius, outer_radius)?)
}

#[wasm_bindgen(js_name = permeanceCurves)]
pub fn permeance_curves_js(
    kind: &str,
    outer: Vec<f64>,
    ri_min: f64,
    ri_max: f64,
    samples: usize,
) -> std::result::Result<Curves, JsError> {
    Ok(permeance_curves(kind, &outer, ri_min, ri_max, samples)?)
}

#[wasm_bindgen(js_name = forceCurves)]
#[allow(clippy::too_many_arguments)]
pub fn force_curves_js(
    kind: &str,
    mode: &str,
    pole_radius: f64,
    held: f64,
    theta: f64,
    start: f64,
    stop: f64,
    samples: usize,
) -> std::result::Result<ForceCurves, JsError> {
    Ok(force_curves(
        kind,
        mode,
        pole_radius,
        held,
        theta,
        start,
        stop,
        samples,
    )?)
}
