//! Numerical integration used as an independent check of the closed forms.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, usage, Result};
use crate::geometry::{validate, FluxTubeKind, Side, TorusGeometry, MU0};
use crate::permeance::permeance;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig {
    /// Target relative accuracy of the integral.
    pub rel_tol: f64,
    /// Maximum bisection depth of the adaptive recursion.
    pub max_depth: u32,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_depth: 60,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol < 1e-3) {
            return Err(usage(format!("rel_tol must lie in (0, 1e-3), got {}", self.rel_tol)));
        }
        if self.max_depth < 10 {
            return Err(usage(format!("max_depth must be at least 10, got {}", self.max_depth)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    /// False if some subinterval hit `max_depth` before meeting its tolerance.
    pub converged: bool,
    pub evaluations: usize,
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` with the local
/// `|S₂ − S₁| ≤ 15 ε` acceptance test and Richardson-corrected panel sums.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, cfg: &QuadratureConfig) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(domain("integration limits must be finite"));
    }
    let mut evaluations = 3;
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);

    // Absolute tolerance from a coarse composite estimate, so a lucky
    // three-point value cannot set the scale.
    let coarse = {
        let n = 16;
        let h = (b - a) / n as f64;
        let s: f64 = (0..n)
            .map(|k| {
                let x0 = a + k as f64 * h;
                h / 6.0 * (f(x0) + 4.0 * f(x0 + 0.5 * h) + f(x0 + h))
            })
            .sum();
        evaluations += 3 * n;
        s
    };
    let eps = cfg.rel_tol * coarse.abs().max(f64::MIN_POSITIVE);

    let mut converged = true;
    let value = recurse(
        &f,
        Panel {
            a,
            b,
            fa,
            fm,
            fb,
            whole,
        },
        eps,
        cfg.max_depth,
        &mut converged,
        &mut evaluations,
    );
    Ok(Integral {
        value,
        converged: converged && value.is_finite(),
        evaluations,
    })
}

fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    p: Panel,
    eps: f64,
    depth: u32,
    converged: &mut bool,
    evaluations: &mut usize,
) -> f64 {
    let m = 0.5 * (p.a + p.b);
    let (lm, rm) = (0.5 * (p.a + m), 0.5 * (m + p.b));
    let (flm, frm) = (f(lm), f(rm));
    *evaluations += 2;
    let left = (m - p.a) / 6.0 * (p.fa + 4.0 * flm + p.fm);
    let right = (p.b - m) / 6.0 * (p.fm + 4.0 * frm + p.fb);
    let delta = left + right - p.whole;

    if delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    if depth == 0 || lm <= p.a || rm >= p.b {
        *converged = false;
        return left + right + delta / 15.0;
    }
    recurse(
        f,
        Panel {
            a: p.a,
            b: m,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole: left,
        },
        0.5 * eps,
        depth - 1,
        converged,
        evaluations,
    ) + recurse(
        f,
        Panel {
            a: m,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
        },
        0.5 * eps,
        depth - 1,
        converged,
        evaluations,
    )
}

// 5-point Gauss-Legendre on [-1, 1].
const GL5_NODES: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL5_WEIGHTS: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Composite 5-point Gauss-Legendre over geometrically spaced panels on
/// `[a, b]` with `0 < a < b`; suited to integrands behaving like `1/x`.
pub fn gauss_geometric<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    let ratio = (b / a).powf(1.0 / panels as f64);
    let mut lo = a;
    let mut sum = 0.0;
    for k in 0..panels {
        let hi = if k + 1 == panels { b } else { lo * ratio };
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        sum += half
            * GL5_NODES
                .iter()
                .zip(GL5_WEIGHTS.iter())
                .map(|(x, w)| w * f(mid + half * x))
                .sum::<f64>();
        lo = hi;
    }
    sum
}

/// Comparison of a closed-form permeance with its quadrature value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleReport {
    pub closed_form: f64,
    pub quadrature: f64,
    /// `|closed − quad| / max(|quad|, f64::MIN_POSITIVE)`.
    pub rel_error: f64,
    pub converged: bool,
}

/// Reluctance `1/(2π μ0 t) ∫ dϑ / (η ± sin ϑ)` over `[from, to]`, with `η`
/// formed directly from the raw radii.
fn reluctance_integral(
    geom: &TorusGeometry,
    side: Side,
    from: f64,
    to: f64,
    cfg: &QuadratureConfig,
) -> Result<Integral> {
    let TorusGeometry {
        pole_radius: r,
        inner_radius: ri,
        outer_radius: ro,
    } = *geom;
    let t = ro - ri;
    let eta = r / t * (ro / ri).ln();
    let sign = side.sign();
    let integral = adaptive_simpson(|th| 1.0 / (eta + sign * th.sin()), from, to, cfg)?;
    Ok(Integral {
        value: integral.value / (2.0 * PI * MU0 * t),
        ..integral
    })
}

/// Permeance by numerical integration of the reluctance integral.
///
/// Quarters integrate over their own half of the polar range (`[0, π/2]`
/// for the inner, `[π/2, π]` for the outer quarter); the lower half is the
/// series connection of both quarters.
pub fn quadrature_permeance(kind: FluxTubeKind, geom: &TorusGeometry, cfg: &QuadratureConfig) -> Result<(f64, bool)> {
    if !validate(kind, geom).exists {
        return Err(usage(format!("{kind} does not exist for {geom:?}")));
    }
    let parts: Vec<Integral> = match kind {
        FluxTubeKind::InnerHalf => vec![reluctance_integral(geom, Side::Inner, 0.0, PI, cfg)?],
        FluxTubeKind::OuterHalf => vec![reluctance_integral(geom, Side::Outer, 0.0, PI, cfg)?],
        FluxTubeKind::InnerQuarter => vec![reluctance_integral(geom, Side::Inner, 0.0, FRAC_PI_2, cfg)?],
        FluxTubeKind::OuterQuarter => vec![reluctance_integral(geom, Side::Outer, FRAC_PI_2, PI, cfg)?],
        FluxTubeKind::LowerHalf => vec![
            reluctance_integral(geom, Side::Inner, 0.0, FRAC_PI_2, cfg)?,
            reluctance_integral(geom, Side::Outer, FRAC_PI_2, PI, cfg)?,
        ],
    };
    let reluctance: f64 = parts.iter().map(|p| p.value).sum();
    let converged = parts.iter().all(|p| p.converged);
    Ok((1.0 / reluctance, converged))
}

pub fn permeance_quadrature(kind: FluxTubeKind, geom: &TorusGeometry, cfg: &QuadratureConfig) -> Result<OracleReport> {
    let (quadrature, converged) = quadrature_permeance(kind, geom, cfg)?;
    let closed_form = permeance(kind, geom)?.henry();
    Ok(OracleReport {
        closed_form,
        quadrature,
        rel_error: (closed_form - quadrature).abs() / quadrature.abs().max(f64::MIN_POSITIVE),
        converged,
    })
}

/// Permeance density of the slice at polar angle `theta`, H/rad, from
/// integrating `2π μ0 (R/r ± sin ϑ)` over `r ∈ [r_i, r_o]` numerically.
pub fn slice_permeance_quadrature(geom: &TorusGeometry, theta: f64, side: Side) -> Result<f64> {
    if !(0.0..=PI).contains(&theta) {
        return Err(domain(format!("polar angle must lie in [0, pi], got {theta}")));
    }
    geom.ensure_positive()?;
    if geom.outer_radius <= geom.inner_radius {
        return Err(usage(format!("slice needs r_o > r_i, got {geom:?}")));
    }
    let r = geom.pole_radius;
    let s = side.sign() * theta.sin();
    Ok(gauss_geometric(
        |x| 2.0 * PI * MU0 * (r / x + s),
        geom.inner_radius,
        geom.outer_radius,
        32,
    ))
}
