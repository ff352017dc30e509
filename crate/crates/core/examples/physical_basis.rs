//! Which combinations of formal columns are real electromagnetic fields.
use rsmaxwell::algebra::Vec3;
use rsmaxwell::physicality::{
    algebraic_plane_null_space, assemble_constraints, lambdas_to_matrix, principal_angles, solve_null_space,
    DEFAULT_TOL_RANK,
};
use rsmaxwell::seeds::{ScalarSeed, SeedKind};
use rsmaxwell::squaring::Lambda;

fn show(label: &str, seed: &ScalarSeed) -> rsmaxwell::error::Result<Vec<Lambda>> {
    let pb = solve_null_space(&assemble_constraints(seed, &[])?, DEFAULT_TOL_RANK)?;
    println!("{label}: {seed}");
    println!(
        "  nullity {} = kernel {} + physical {} (field span {} complex)",
        pb.nullity,
        pb.kernel.len(),
        pb.dim_physical,
        pb.field_complex_rank
    );
    for l in &pb.basis {
        println!("  physical {:?}", l.c);
    }
    for l in &pb.kernel {
        println!("  kernel   {:?}", l.c);
    }
    for w in pb.warnings() {
        println!("  warning: {w}");
    }
    Ok(pb.basis.iter().chain(&pb.kernel).copied().collect())
}

fn main() -> rsmaxwell::error::Result<()> {
    show("z plane", &ScalarSeed::real_plane(1.0, [1.0, 0.0, 0.0, 1.0])?)?;

    let n = Vec3::new(0.48, 0.6, 0.64);
    let all = show("oblique plane", &ScalarSeed::plane_along(SeedKind::ComplexPlane, 1.0, 1.0, [n[0], n[1], n[2]])?)?;
    let angles = principal_angles(&lambdas_to_matrix(&all), &algebraic_plane_null_space(&n, DEFAULT_TOL_RANK))?;
    println!("  largest principal angle to the closed form: {:.2e}", angles.last().unwrap());

    show("cylindrical", &ScalarSeed::cylindrical(1.0, 1.0, 0.5, 1)?)?;
    Ok(())
}
