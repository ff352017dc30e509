//! The three 4×4 α matrices and their quaternion-like multiplication table.
use rsmaxwell::algebra::{alpha, AlphaMatrix};

fn main() -> rsmaxwell::error::Result<()> {
    let a = [alpha(1)?, alpha(2)?, alpha(3)?];
    for (j, m) in a.iter().enumerate() {
        println!("alpha^{}:", j + 1);
        for r in 0..4 {
            println!("  {:?}", m.row(r));
        }
    }
    let minus_one = -AlphaMatrix::IDENTITY;
    for (j, m) in a.iter().enumerate() {
        println!("(alpha^{})^2 = -I: {}", j + 1, *m * *m == minus_one);
    }
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        println!(
            "alpha^{} alpha^{} = alpha^{}: {}   alpha^{} alpha^{} = -alpha^{}: {}",
            i + 1,
            j + 1,
            k + 1,
            a[i] * a[j] == a[k],
            j + 1,
            i + 1,
            k + 1,
            a[j] * a[i] == -a[k]
        );
    }
    Ok(())
}
