//! Finite-difference check of the component Maxwell equations
//!
//! ```text
//! div E = ρ_e      curl E + ∂₀cB = j_m
//! div cB = ρ_m     curl cB − ∂₀E = j_e
//! ```
//!
//! (ε₀ = 1; vacuum when no sources are given) with second-order central
//! differences of one step `h` along every coordinate.

use crate::algebra::{SpacetimePoint, Vec3};
use crate::dual::SourceTuple;
use crate::error::{Error, Result};
use crate::waves::FieldSample;

/// Relative residuals below this are treated as rounding noise when fitting
/// convergence slopes.
pub const FLOOR_REL: f64 = 1e-9;

/// Signed left-hand sides minus right-hand sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualComponents {
    pub div_e: f64,
    pub div_cb: f64,
    pub curl_e_plus_dt_cb: Vec3,
    pub curl_cb_minus_dt_e: Vec3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    pub div_e: f64,
    pub div_cb: f64,
    pub curl_e_plus_dt_cb: f64,
    pub curl_cb_minus_dt_e: f64,
    pub max_residual: f64,
    pub h: f64,
    pub point: SpacetimePoint,
    pub components: ResidualComponents,
}

impl ResidualReport {
    /// `max_residual / scale`; `scale` is normally `k₀ · max(|E|, |cB|)` over
    /// the region of interest.
    pub fn relative(&self, scale: f64) -> f64 {
        if scale > 0.0 {
            self.max_residual / scale
        } else {
            self.max_residual
        }
    }
}

fn sample_checked<F>(field_fn: &F, p: SpacetimePoint) -> Result<FieldSample>
where
    F: Fn(SpacetimePoint) -> Result<FieldSample>,
{
    let f = field_fn(p)?;
    if f.is_finite() {
        Ok(f)
    } else {
        Err(Error::NonFinite {
            what: "field sample on the difference stencil",
            point: p,
        })
    }
}

/// Maxwell residuals of `field_fn` at `p`.
pub fn maxwell_residual<F>(
    field_fn: F,
    p: SpacetimePoint,
    h: f64,
    sources: Option<&SourceTuple>,
) -> Result<ResidualReport>
where
    F: Fn(SpacetimePoint) -> Result<FieldSample>,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::usage(format!("step h must be positive and finite, got {h}")));
    }
    if !p.is_finite() {
        return Err(Error::NonFinite {
            what: "evaluation point",
            point: p,
        });
    }
    // d[a] = (∂ₐE, ∂ₐcB)
    let mut d = [(Vec3::zeros(), Vec3::zeros()); 4];
    for (axis, slot) in d.iter_mut().enumerate() {
        let fwd = sample_checked(&field_fn, p.shifted(axis, h))?;
        let bwd = sample_checked(&field_fn, p.shifted(axis, -h))?;
        let inv = 0.5 / h;
        *slot = ((fwd.e - bwd.e) * inv, (fwd.cb - bwd.cb) * inv);
    }
    let div = |sel: fn(&(Vec3, Vec3)) -> Vec3| (1..=3).map(|j| sel(&d[j])[j - 1]).sum::<f64>();
    let curl = |sel: fn(&(Vec3, Vec3)) -> Vec3| {
        let g = |j: usize, c: usize| sel(&d[j])[c];
        Vec3::new(g(2, 2) - g(3, 1), g(3, 0) - g(1, 2), g(1, 1) - g(2, 0))
    };
    let (e_of, cb_of): (fn(&(Vec3, Vec3)) -> Vec3, fn(&(Vec3, Vec3)) -> Vec3) = (|x| x.0, |x| x.1);
    let src = sources.copied().unwrap_or(SourceTuple::ZERO);
    if !src.is_finite() {
        return Err(Error::usage("sources must be finite"));
    }
    let components = ResidualComponents {
        div_e: div(e_of) - src.rho_e,
        div_cb: div(cb_of) - src.rho_m,
        curl_e_plus_dt_cb: curl(e_of) + d[0].1 - src.j_m,
        curl_cb_minus_dt_e: curl(cb_of) - d[0].0 - src.j_e,
    };
    let div_e = components.div_e.abs();
    let div_cb = components.div_cb.abs();
    let curl_e_plus_dt_cb = components.curl_e_plus_dt_cb.norm();
    let curl_cb_minus_dt_e = components.curl_cb_minus_dt_e.norm();
    Ok(ResidualReport {
        div_e,
        div_cb,
        curl_e_plus_dt_cb,
        curl_cb_minus_dt_e,
        max_residual: div_e.max(div_cb).max(curl_e_plus_dt_cb).max(curl_cb_minus_dt_e),
        h,
        point: p,
        components,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Convergence {
    /// Least-squares slope of `log r` against `log h`; `None` when fewer than
    /// two residuals lie above the floor.
    pub slope: Option<f64>,
    pub floor_limited: bool,
    /// `(h, max_residual)` for every step.
    pub residuals: Vec<(f64, f64)>,
}

/// Observed order of the residual at `p` over `steps` (at least three, in
/// geometric progression). Residuals below `FLOOR_REL · scale` are dropped
/// from the fit.
pub fn convergence_order<F>(field_fn: F, p: SpacetimePoint, steps: &[f64], scale: f64) -> Result<Convergence>
where
    F: Fn(SpacetimePoint) -> Result<FieldSample>,
{
    check_geometric(steps)?;
    let residuals = steps
        .iter()
        .map(|&h| maxwell_residual(&field_fn, p, h, None).map(|r| (h, r.max_residual)))
        .collect::<Result<Vec<_>>>()?;
    let floor = FLOOR_REL * if scale > 0.0 { scale } else { 1.0 };
    let used: Vec<(f64, f64)> = residuals
        .iter()
        .filter(|(_, r)| *r > floor)
        .map(|&(h, r)| (h.ln(), r.ln()))
        .collect();
    let slope = (used.len() >= 2).then(|| least_squares_slope(&used));
    Ok(Convergence {
        slope,
        floor_limited: used.len() < residuals.len(),
        residuals,
    })
}

fn check_geometric(steps: &[f64]) -> Result<()> {
    if steps.len() < 3 {
        return Err(Error::usage(format!(
            "convergence needs at least 3 steps, got {}",
            steps.len()
        )));
    }
    if steps.iter().any(|h| !(*h > 0.0 && h.is_finite())) {
        return Err(Error::usage("convergence steps must be positive and finite"));
    }
    let ratio = steps[1] / steps[0];
    let geometric = steps
        .windows(2)
        .all(|w| ((w[1] / w[0]) / ratio - 1.0).abs() < 1e-9);
    if !geometric || (ratio - 1.0).abs() < 1e-9 {
        return Err(Error::usage("convergence steps must form a geometric progression"));
    }
    Ok(())
}

fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::maxwell_operator_apply;
    use crate::dual::dual_transform;
    use crate::waves::{lc_frame, plane_wave_general, plane_wave_lc, plane_wave_z, Variant};
    use num_complex::Complex64;

    fn generic_n() -> Vec3 {
        Vec3::new(0.36, -0.48, 0.8)
    }

    #[test]
    fn constant_field_is_exact() {
        let f = |p| Ok(FieldSample::new(Vec3::new(1.0, 2.0, 3.0), Vec3::new(-1.0, 0.5, 0.0), p));
        let r = maxwell_residual(f, SpacetimePoint::new(0.1, 0.2, 0.3, 0.4), 1e-3, None).unwrap();
        assert_eq!(r.max_residual, 0.0);
        let c = convergence_order(f, SpacetimePoint::ORIGIN, &[1e-2, 5e-3, 2.5e-3], 1.0).unwrap();
        assert!(c.floor_limited && c.slope.is_none());
    }

    #[test]
    fn lc_wave_small_residual() {
        let fr = lc_frame(&generic_n(), &Vec3::new(1.0, 0.0, 0.5), &Vec3::new(0.0, 1.0, 0.0)).unwrap();
        let f = |p| Ok(plane_wave_lc(&fr, 1.0, 1.0, p));
        for x in [[0.1, 0.2, 0.3, 0.4], [2.0, -1.0, 0.5, 3.0]] {
            let r = maxwell_residual(f, SpacetimePoint { x }, 1e-4, None).unwrap();
            assert!(r.max_residual < 1e-7, "{}", r.max_residual);
        }
    }

    #[test]
    fn corrupted_field_is_caught() {
        let k0 = 1.0;
        let f = |p| {
            let mut s = plane_wave_z(Variant::I, k0, 1.0, p);
            s.e[1] = -s.e[1];
            Ok(s)
        };
        let p = SpacetimePoint::new(0.3, 0.0, 0.0, 0.1);
        let r = maxwell_residual(f, p, 1e-4, None).unwrap();
        assert!(r.max_residual > 0.1 * k0 * k0);
        let c = convergence_order(f, p, &[1e-2, 5e-3, 2.5e-3], k0).unwrap();
        assert!(c.slope.unwrap().abs() < 0.1);
    }

    #[test]
    fn plane_wave_converges_at_second_order() {
        let n = generic_n();
        let f = |p| plane_wave_general(Variant::I, &n, 1.0, 1.0, p);
        let c = convergence_order(f, SpacetimePoint::new(0.3, 0.2, -0.1, 0.7), &[1e-2, 5e-3, 2.5e-3], 1.0).unwrap();
        let s = c.slope.unwrap();
        assert!((s - 2.0).abs() < 0.1, "{s}");
    }

    #[test]
    fn sources_enter_right_hand_sides() {
        // E = (x₁, 0, 0) has div E = 1; cB = (0, 0, x₁) has curl cB = (0, −1, 0)
        let f = |p: SpacetimePoint| Ok(FieldSample::new(Vec3::new(p.x[1], 0.0, 0.0), Vec3::new(0.0, 0.0, p.x[1]), p));
        let s = SourceTuple {
            rho_e: 1.0,
            j_e: Vec3::new(0.0, -1.0, 0.0),
            ..SourceTuple::ZERO
        };
        let r = maxwell_residual(f, SpacetimePoint::ORIGIN, 1e-3, Some(&s)).unwrap();
        assert!(r.max_residual < 1e-12);
        let vac = maxwell_residual(f, SpacetimePoint::ORIGIN, 1e-3, None).unwrap();
        assert!((vac.div_e - 1.0).abs() < 1e-12 && (vac.curl_cb_minus_dt_e - 1.0).abs() < 1e-12);
    }

    #[test]
    fn matrix_and_component_forms_agree() {
        let n = generic_n();
        let f = |p| plane_wave_general(Variant::II, &n, 1.7, 0.6, p);
        let p = SpacetimePoint::new(0.4, -0.3, 0.8, 0.1);
        for h in [1e-2, 1e-4] {
            let comp = maxwell_residual(f, p, h, None).unwrap().components;
            let m = maxwell_operator_apply(|q| f(q).map(|s| s.rs()), p, h).unwrap();
            assert!((m.components[0] - Complex64::new(comp.div_e, comp.div_cb)).norm() < 1e-12);
            for j in 0..3 {
                let want = Complex64::new(comp.curl_e_plus_dt_cb[j], comp.curl_cb_minus_dt_e[j]);
                assert!((m.components[j + 1] - want).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn dual_preserves_residual() {
        let n = generic_n();
        let f = |p| plane_wave_general(Variant::I, &n, 1.0, 1.0, p);
        let g = |p| f(p).map(|s| dual_transform(&s));
        let p = SpacetimePoint::new(0.1, 0.9, -0.4, 0.3);
        let (a, b) = (maxwell_residual(f, p, 1e-3, None).unwrap(), maxwell_residual(g, p, 1e-3, None).unwrap());
        assert!((a.max_residual - b.max_residual).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        let nan = |p| Ok(FieldSample::new(Vec3::new(f64::NAN, 0.0, 0.0), Vec3::zeros(), p));
        assert!(matches!(
            maxwell_residual(nan, SpacetimePoint::ORIGIN, 1e-3, None),
            Err(Error::NonFinite { .. })
        ));
        let ok = |p| Ok(FieldSample::new(Vec3::zeros(), Vec3::zeros(), p));
        assert!(maxwell_residual(ok, SpacetimePoint::ORIGIN, 0.0, None).is_err());
        assert!(convergence_order(ok, SpacetimePoint::ORIGIN, &[1e-2, 5e-3], 1.0).is_err());
        assert!(convergence_order(ok, SpacetimePoint::ORIGIN, &[1e-2, 5e-3, 1e-3], 1.0).is_err());
    }
}
