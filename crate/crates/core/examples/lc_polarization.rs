//! General plane wave in the L/C frame and the orthogonal pair obtained from
//! equal coefficient vectors.
use rsmaxwell::algebra::{SpacetimePoint, Vec3};
use rsmaxwell::waves::{lc_frame, plane_wave_lc};

fn main() -> rsmaxwell::error::Result<()> {
    let n = Vec3::new(0.0, 0.6, 0.8);
    let (a, b) = (Vec3::new(1.0, 0.3, -0.2), Vec3::new(0.0, -0.5, 0.4));
    let fr = lc_frame(&n, &a, &b)?;
    println!("L = {:?}\nC = {:?}", fr.l.as_slice(), fr.c.as_slice());
    println!(
        "L·C = {:.1e}, |L|-|C| = {:.1e}, L·n = {:.1e}, C·n = {:.1e}",
        fr.l.dot(&fr.c),
        fr.l.norm() - fr.c.norm(),
        fr.l.dot(&n),
        fr.c.dot(&n)
    );
    let first = lc_frame(&n, &a, &Vec3::zeros())?;
    let second = lc_frame(&n, &Vec3::zeros(), &a)?;
    for t in [0.0, 0.5, 1.0] {
        let p = SpacetimePoint::new(t, 0.2, 0.1, 0.0);
        let f = plane_wave_lc(&fr, 2.0, 1.0, p);
        let (w1, w2) = (plane_wave_lc(&first, 2.0, 1.0, p), plane_wave_lc(&second, 2.0, 1.0, p));
        println!(
            "t={t}: E·cB={:+.1e} |E|²-|cB|²={:+.1e}  pair: E1·E2={:+.1e} B1·B2={:+.1e}",
            f.e_dot_cb(),
            f.energy_difference(),
            w1.e.dot(&w2.e),
            w1.cb.dot(&w2.cb)
        );
    }
    Ok(())
}
