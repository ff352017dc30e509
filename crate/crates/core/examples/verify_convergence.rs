//! The finite-difference verifier: second-order convergence for exact
//! solutions and an O(1) residual for a corrupted one.
use rsmaxwell::algebra::{SpacetimePoint, Vec3};
use rsmaxwell::verify::{convergence_order, maxwell_residual};
use rsmaxwell::waves::{lc_frame, plane_wave_lc};

fn main() -> rsmaxwell::error::Result<()> {
    let n = Vec3::new(0.36, -0.48, 0.8);
    let fr = lc_frame(&n, &Vec3::new(1.0, 0.0, 0.0), &Vec3::new(0.0, 0.5, 0.0))?;
    let good = |p| Ok(plane_wave_lc(&fr, 1.0, 1.0, p));
    let bad = |p| {
        let mut f = plane_wave_lc(&fr, 1.0, 1.0, p);
        f.e[1] = -f.e[1];
        Ok(f)
    };
    let p = SpacetimePoint::new(0.4, 0.1, -0.3, 0.2);
    let steps = [1e-2, 5e-3, 2.5e-3, 1.25e-3];
    for (name, f) in [("exact", &good as &dyn Fn(SpacetimePoint) -> _), ("corrupted", &bad)] {
        let c = convergence_order(f, p, &steps, 1.0)?;
        println!("{name}: slope {:?}, floor-limited {}", c.slope, c.floor_limited);
        for (h, r) in &c.residuals {
            println!("  h={h:.2e} residual={r:.3e}");
        }
        let r = maxwell_residual(f, p, 1e-4, None)?;
        println!(
            "  at h=1e-4: div E {:.1e}, div cB {:.1e}, |curl E + dt cB| {:.1e}, |curl cB - dt E| {:.1e}",
            r.div_e, r.div_cb, r.curl_e_plus_dt_cb, r.curl_cb_minus_dt_e
        );
    }
    Ok(())
}
