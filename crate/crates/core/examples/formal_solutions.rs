//! Squaring: four formal Maxwell columns from one scalar wave, each checked
//! with the finite-difference matrix operator.
use rsmaxwell::algebra::{maxwell_operator_apply, SpacetimePoint};
use rsmaxwell::seeds::{kfg_residual, ScalarSeed, SeedKind};
use rsmaxwell::squaring::{combine, formal_solutions, Lambda};

fn main() -> rsmaxwell::error::Result<()> {
    let seeds = [
        ScalarSeed::plane_along(SeedKind::RealPlane, 1.0, 1.0, [0.36, -0.48, 0.8])?,
        ScalarSeed::plane_along(SeedKind::ComplexPlane, 1.0, 2.0, [0.0, 0.0, 1.0])?,
        ScalarSeed::cylindrical(1.0, 1.5, 0.7, 2)?,
    ];
    let p = SpacetimePoint::cylindrical(0.3, 1.2, 0.7, -0.4);
    for seed in &seeds {
        println!("{seed}");
        println!("  wave-equation residual (h=1e-3): {:.2e}", kfg_residual(seed, p, 1e-3)?);
        let m = formal_solutions(seed, p)?;
        for col in 0..4 {
            let psi = m.column(col);
            let r = maxwell_operator_apply(|q| combine(seed, &Lambda::unit(col), q), p, 1e-4)?;
            println!(
                "  column {col}: zeroth component {:.3e}, operator residual {:.2e}",
                psi.components[0].norm(),
                r.max_abs()
            );
        }
    }
    Ok(())
}
