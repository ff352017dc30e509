//! Plane waves along z and along an arbitrary direction, with polarization
//! diagnostics.
use rsmaxwell::algebra::{SpacetimePoint, Vec3};
use rsmaxwell::waves::{plane_wave_general, plane_wave_z, polarization_report, Variant};

fn main() -> rsmaxwell::error::Result<()> {
    let p = SpacetimePoint::new(0.2, 0.0, 0.0, 0.5);
    for v in [Variant::I, Variant::II] {
        let f = plane_wave_z(v, 1.0, 1.0, p);
        let r = polarization_report(&f, Some(&Vec3::z()), 1e-14);
        println!("z variant {v}: E={:?} cB={:?} S-direction={:?}", f.e.as_slice(), f.cb.as_slice(), r.poynting_direction.map(|d| d.as_slice().to_vec()));
    }
    let n = Vec3::new(2.0, -1.0, 2.0) / 3.0;
    let p = SpacetimePoint::new(0.7, 0.1, 0.3, -0.2);
    let fi = plane_wave_general(Variant::I, &n, 1.0, 1.0, p)?;
    let fii = plane_wave_general(Variant::II, &n, 1.0, 1.0, p)?;
    for (v, f) in [(Variant::I, &fi), (Variant::II, &fii)] {
        let r = polarization_report(f, Some(&n), 1e-14);
        println!(
            "n variant {v}: E·cB={:.1e} |E|²-|cB|²={:.1e} E·n={:.1e} E×cB/n={:.6}",
            r.e_dot_cb,
            r.energy_difference,
            r.e_dot_n.unwrap(),
            f.poynting().dot(&n)
        );
    }
    println!("E_I·E_II = {:.6} (not orthogonal unless n1 n2 = 0)", fi.e.dot(&fii.e));
    Ok(())
}
