//! Cylindrical waves built from Bessel seeds, including the luminal k = ±E
//! cases where the longitudinal component vanishes.
use num_complex::Complex64;
use rsmaxwell::algebra::SpacetimePoint;
use rsmaxwell::verify::maxwell_residual;
use rsmaxwell::waves::{cylindrical_wave, cylindrical_wave_luminal, CylindricalParams, Luminal};

fn main() -> rsmaxwell::error::Result<()> {
    let params = CylindricalParams {
        amplitude: 1.0,
        frequency: 2.0,
        k: 1.2,
        m: 1,
        lambda3: Complex64::new(1.0, 0.0),
    };
    for rho in [0.5, 1.5, 3.0, 5.0] {
        let p = SpacetimePoint::cylindrical(0.0, rho, 0.4, 0.0);
        let f = cylindrical_wave(&params, p)?;
        let r = maxwell_residual(|q| cylindrical_wave(&params, q), p, 1e-4, None)?;
        println!("rho={rho}: E={:.4?} cB={:.4?} residual={:.1e}", f.e.as_slice(), f.cb.as_slice(), r.max_residual);
    }
    let l3 = Complex64::new(0.0, 1.0);
    let p = SpacetimePoint::cylindrical(0.3, 1.1, 2.0, -0.5);
    for (which, k, m) in [(Luminal::Forward, 1.0, -2), (Luminal::Backward, -1.0, 2)] {
        let generic = cylindrical_wave(&CylindricalParams { amplitude: 1.0, frequency: 1.0, k, m, lambda3: l3 }, p)?;
        let closed = cylindrical_wave_luminal(which, 1.0, 1.0, m, l3, p)?;
        println!(
            "{which:?} m={m}: E3={:.1e} cB3={:.1e} closed-form mismatch={:.1e}",
            generic.e[2],
            generic.cb[2],
            (generic.e - closed.e).norm() + (generic.cb - closed.cb).norm()
        );
    }
    Ok(())
}
