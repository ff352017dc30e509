//! Discrete and continuous duality on fields and sources.
use rsmaxwell::algebra::{SpacetimePoint, Vec3};
use rsmaxwell::dual::{dual_transform, dual_transform_sources, phase_transform, SourceTuple};
use rsmaxwell::waves::{plane_wave_z, Variant};

fn main() {
    let p = SpacetimePoint::new(0.3, 0.0, 0.0, 0.1);
    let one = plane_wave_z(Variant::I, 1.0, 1.0, p);
    let two = plane_wave_z(Variant::II, 1.0, 1.0, p);
    let d = dual_transform(&one);
    println!("variant I:      E={:?} cB={:?}", one.e.as_slice(), one.cb.as_slice());
    println!("dual of I:      E={:?} cB={:?}", d.e.as_slice(), d.cb.as_slice());
    println!("variant II:     E={:?} cB={:?}", two.e.as_slice(), two.cb.as_slice());
    let q = phase_transform(&one, std::f64::consts::FRAC_PI_4);
    println!("phase pi/4:     E={:?} cB={:?}", q.e.as_slice(), q.cb.as_slice());
    let s = SourceTuple { rho_e: 1.0, j_e: Vec3::new(0.0, 0.0, 2.0), ..SourceTuple::ZERO };
    println!("sources {s:?}\n  dual {:?}", dual_transform_sources(&s));
}
