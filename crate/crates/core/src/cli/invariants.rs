//! Self-check suite behind `rsmaxwell invariants`: randomized property
//! checks over all wave families with a fixed RNG seed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{alpha, maxwell_operator_apply, AlphaMatrix, SpacetimePoint, Vec3};
use crate::dual::{dual_transform, phase_transform};
use crate::error::Result;
use crate::physicality::{
    algebraic_plane_null_space, assemble_constraints, check_linear_dependence_3x3, lambdas_to_matrix,
    principal_angles, solve_null_space, DEFAULT_TOL_RANK,
};
use crate::seeds::{ScalarSeed, SeedKind};
use crate::squaring::{combine, formal_solutions, Lambda};
use crate::verify::maxwell_residual;
use crate::waves::{
    cylindrical_wave, cylindrical_wave_luminal, lc_frame, plane_wave_general, plane_wave_lc, plane_wave_z,
    CylindricalParams, Luminal, Variant,
};

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &'static str, worst: f64, limit: f64) -> Check {
    Check {
        name,
        pass: worst.is_finite() && worst < limit,
        detail: format!("worst {worst:.3e} (limit {limit:.0e})"),
    }
}

fn unit(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = Vec3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        if v.norm() > 0.2 {
            return v.normalize();
        }
    }
}

fn vec3(rng: &mut ChaCha8Rng, r: f64) -> Vec3 {
    Vec3::new(rng.random_range(-r..r), rng.random_range(-r..r), rng.random_range(-r..r))
}

fn point(rng: &mut ChaCha8Rng, r: f64) -> SpacetimePoint {
    SpacetimePoint::new(rng.random_range(-r..r), rng.random_range(-r..r), rng.random_range(-r..r), rng.random_range(-r..r))
}

fn alpha_table() -> Result<Check> {
    let a = [alpha(1)?, alpha(2)?, alpha(3)?];
    let mut ok = a.iter().all(|m| *m * *m == -AlphaMatrix::IDENTITY);
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        ok &= a[i] * a[j] == a[k] && a[j] * a[i] == -a[k];
    }
    Ok(Check {
        name: "alpha algebra",
        pass: ok,
        detail: "squares, cyclic products, anticommutators".into(),
    })
}

fn formal_columns(rng: &mut ChaCha8Rng, cases: usize) -> Result<Check> {
    let mut worst: f64 = 0.0;
    for _ in 0..cases.div_ceil(10) {
        let n = unit(rng);
        let seeds = [
            ScalarSeed::plane_along(SeedKind::RealPlane, 1.0, 1.0, [n[0], n[1], n[2]])?,
            ScalarSeed::plane_along(SeedKind::ComplexPlane, 1.0, 1.0, [n[0], n[1], n[2]])?,
            ScalarSeed::cylindrical(1.0, 1.5, rng.random_range(-1.4..1.4), rng.random_range(-3..=3))?,
        ];
        for s in &seeds {
            let p = match s.kind() {
                SeedKind::Cylindrical => SpacetimePoint::cylindrical(
                    rng.random_range(-3.0..3.0),
                    rng.random_range(0.5..5.0),
                    rng.random_range(0.0..std::f64::consts::TAU),
                    rng.random_range(-3.0..3.0),
                ),
                _ => point(rng, 5.0),
            };
            let h = if s.kind() == SeedKind::Cylindrical { 1e-5 } else { 1e-4 };
            let entries = formal_solutions(s, p)?.entries;
            let scale = s.wavenumber() * entries.iter().flatten().fold(0.0_f64, |m, z| m.max(z.norm()));
            for col in 0..4 {
                let r = maxwell_operator_apply(|q| combine(s, &Lambda::unit(col), q), p, h)?;
                worst = worst.max(r.max_abs() / scale.max(1e-300));
            }
        }
    }
    Ok(check("formal columns solve the matrix equation", worst, 1e-6))
}

fn plane_null_space(rng: &mut ChaCha8Rng, cases: usize) -> Result<Check> {
    let mut worst: f64 = 0.0;
    for i in 0..cases.div_ceil(20) {
        let n = unit(rng);
        let kind = if i % 2 == 0 { SeedKind::RealPlane } else { SeedKind::ComplexPlane };
        let s = ScalarSeed::plane_along(kind, 1.0, rng.random_range(0.5..3.0), [n[0], n[1], n[2]])?;
        let pb = solve_null_space(&assemble_constraints(&s, &[])?, DEFAULT_TOL_RANK)?;
        let all: Vec<Lambda> = pb.basis.iter().chain(&pb.kernel).copied().collect();
        let closed = algebraic_plane_null_space(&n, DEFAULT_TOL_RANK);
        let numeric = lambdas_to_matrix(&all);
        if numeric.ncols() != closed.ncols() {
            return Ok(Check {
                name: "plane null space",
                pass: false,
                detail: format!("dimension {} vs {}", numeric.ncols(), closed.ncols()),
            });
        }
        let ang = principal_angles(&numeric, &closed)?;
        worst = worst.max(ang.last().copied().unwrap_or(0.0));
    }
    Ok(check("plane null space matches closed form", worst, 1e-8))
}

fn cylindrical_ray(rng: &mut ChaCha8Rng, cases: usize) -> Result<Check> {
    let mut worst: f64 = 0.0;
    for _ in 0..cases.div_ceil(20) {
        let e = rng.random_range(0.5..3.0);
        let k = rng.random_range(-0.95..0.95) * e;
        let s = ScalarSeed::cylindrical(1.0, e, k, rng.random_range(-4..=4))?;
        let pb = solve_null_space(&assemble_constraints(&s, &[])?, DEFAULT_TOL_RANK)?;
        if pb.nullity != 2 || pb.basis.len() != 2 {
            return Ok(Check {
                name: "cylindrical admissible ray",
                pass: false,
                detail: format!("nullity {} for E={e} k={k}", pb.nullity),
            });
        }
        for l in &pb.basis {
            let c = l.c;
            let v = c[1].norm().max(c[2].norm()).max((-I * c[0] * e - c[3] * k).norm());
            worst = worst.max(v);
        }
    }
    Ok(check("cylindrical admissible ray", worst, 1e-8))
}

const I: Complex64 = Complex64::new(0.0, 1.0);

fn determinant(rng: &mut ChaCha8Rng, cases: usize) -> Check {
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let (n, a, b) = (unit(rng), vec3(rng, 2.0), vec3(rng, 2.0));
        let scale = a.norm().max(b.norm()).max(1e-300);
        worst = worst.max(check_linear_dependence_3x3(&n, &a, &b).abs() / scale.powi(3));
    }
    check("plane triple determinant vanishes", worst, 1e-12)
}

fn lc_identities(rng: &mut ChaCha8Rng, cases: usize) -> Result<Check> {
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let (n, a, b) = (unit(rng), vec3(rng, 2.0), vec3(rng, 2.0));
        let fr = lc_frame(&n, &a, &b)?;
        let s2 = a.norm_squared() + b.norm_squared();
        let formula = s2 - n.dot(&a).powi(2) - n.dot(&b).powi(2) + 2.0 * n.dot(&a.cross(&b));
        worst = worst
            .max(fr.identity_violation())
            .max((fr.l.norm_squared() - formula).abs() / s2);
        let f = plane_wave_lc(&fr, 1.0, 1.0, point(rng, 5.0));
        worst = worst
            .max(f.e_dot_cb().abs() / s2)
            .max(f.energy_difference().abs() / s2)
            .max(f.e.dot(&n).abs() / s2.sqrt());
    }
    Ok(check("L/C frame identities", worst, 1e-12))
}

fn poynting(rng: &mut ChaCha8Rng, cases: usize) -> Result<Check> {
    let mut worst: f64 = 0.0;
    for _ in 0..cases {
        let p = point(rng, 5.0);
        for v in [Variant::I, Variant::II] {
            let f = plane_wave_z(v, 1.0, 1.0, p);
            let c = (p.x[0] - p.x[3]).cos();
            worst = worst.max((f.poynting() - Vec3::z() * (c * c)).norm());
        }
        let n = unit(rng);
        let fi = plane_wave_general(Variant::I, &n, 1.0, 1.0, p)?;
        let fii = plane_wave_general(Variant::II, &n, 1.0, 1.0, p)?;
        let c = (p.x[0] - n.dot(&p.spatial())).cos();
        let s2 = c * c;
        worst = worst
            .max((fi.poynting() - n * ((1.0 - n[0] * n[0]) * s2)).norm())
            .max((fii.poynting() - n * ((1.0 - n[1] * n[1]) * s2)).norm())
            .max((fi.e.dot(&fii.e) + n[0] * n[1] * s2).abs());
    }
    Ok(check("Poynting directions and overlaps", worst, 1e-12))
}

fn duality(rng: &mut ChaCha8Rng, cases: usize) -> Result<Check> {
    let mut worst: f64 = 0.0;
    let n = unit(rng);
    let wave = |p| plane_wave_general(Variant::I, &n, 1.0, 1.0, p);
    for _ in 0..cases.div_ceil(10) {
        let p = point(rng, 5.0);
        let f = plane_wave_z(Variant::I, 1.0, 1.0, p);
        let g = plane_wave_z(Variant::II, 1.0, 1.0, p);
        let d = dual_transform(&f);
        worst = worst.max((d.e + g.e).norm()).max((d.cb + g.cb).norm());
        let dd = dual_transform(&d);
        worst = worst.max((dd.e + f.e).norm()).max((dd.cb + f.cb).norm());
        let q = phase_transform(&f, std::f64::consts::FRAC_PI_2);
        worst = worst.max((q.e - d.e).norm()).max((q.cb - d.cb).norm());
        let r0 = maxwell_residual(wave, p, 1e-3, None)?.max_residual;
        let r1 = maxwell_residual(|q| wave(q).map(|s| dual_transform(&s)), p, 1e-3, None)?.max_residual;
        worst = worst.max((r0 - r1).abs());
    }
    Ok(check("duality", worst, 1e-12))
}

fn luminal(rng: &mut ChaCha8Rng, cases: usize) -> Result<Check> {
    let mut worst: f64 = 0.0;
    for _ in 0..cases.div_ceil(10) {
        let e = rng.random_range(0.5..3.0);
        let m = rng.random_range(-4..=4);
        let l3 = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let p = SpacetimePoint::cylindrical(rng.random_range(-3.0..3.0), rng.random_range(0.5..5.0), rng.random_range(0.0..std::f64::consts::TAU), rng.random_range(-3.0..3.0));
        for (which, sign) in [(Luminal::Forward, 1.0), (Luminal::Backward, -1.0)] {
            let params = CylindricalParams {
                amplitude: 1.0,
                frequency: e,
                k: sign * e,
                m,
                lambda3: l3,
            };
            let g = cylindrical_wave(&params, p)?;
            let c = cylindrical_wave_luminal(which, 1.0, e, m, l3, p)?;
            let scale = g.max_abs().max(1.0);
            worst = worst
                .max((g.e - c.e).norm() / scale)
                .max((g.cb - c.cb).norm() / scale)
                .max(g.e[2].abs().max(g.cb[2].abs()) / scale);
        }
    }
    Ok(check("cylindrical k = ±E closed forms", worst, 1e-12))
}

fn cross_form(rng: &mut ChaCha8Rng, cases: usize) -> Result<Check> {
    let mut worst: f64 = 0.0;
    for _ in 0..cases.div_ceil(10) {
        let n = unit(rng);
        let p = point(rng, 5.0);
        let f = |q| plane_wave_general(Variant::II, &n, 1.3, 1.0, q);
        let comp = maxwell_residual(f, p, 1e-3, None)?.components;
        let m = maxwell_operator_apply(|q| f(q).map(|s| s.rs()), p, 1e-3)?;
        worst = worst.max((m.components[0] - Complex64::new(comp.div_e, comp.div_cb)).norm());
        for j in 0..3 {
            let want = Complex64::new(comp.curl_e_plus_dt_cb[j], comp.curl_cb_minus_dt_e[j]);
            worst = worst.max((m.components[j + 1] - want).norm());
        }
    }
    Ok(check("matrix and component residuals agree", worst, 1e-12))
}

/// Runs every check with `cases` random draws per property.
pub fn run_suite(cases: usize, rng_seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let rng = &mut rng;
    Ok(vec![
        alpha_table()?,
        formal_columns(rng, cases)?,
        plane_null_space(rng, cases)?,
        cylindrical_ray(rng, cases)?,
        determinant(rng, cases),
        lc_identities(rng, cases)?,
        poynting(rng, cases)?,
        duality(rng, cases)?,
        luminal(rng, cases)?,
        cross_form(rng, cases)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        for c in run_suite(40, 7).unwrap() {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }
}
