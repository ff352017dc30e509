//! From one scalar seed Φ, the four formal solutions
//!
//! ```text
//! {Ψ⁰, Ψ¹, Ψ², Ψ³} = (i∂₀ + αʲ∂ⱼ) Φ
//! ```
//!
//! Each column is annihilated by `(−i∂₀ + αʲ∂ⱼ)` whenever Φ solves the KFG
//! equation. They are evaluated pointwise from the seed's analytic gradient.

use num_complex::Complex64;

use crate::algebra::{alpha, RSVector, SpacetimePoint, I};
use crate::error::Result;
use crate::seeds::{seed_gradient, GradientSample, ScalarSeed};

/// Complex weights `λ_c = a_c + i b_c` of the four formal columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lambda {
    pub c: [Complex64; 4],
}

impl Lambda {
    pub const ZERO: Lambda = Lambda {
        c: [Complex64::new(0.0, 0.0); 4],
    };

    pub fn new(c: [Complex64; 4]) -> Self {
        Lambda { c }
    }

    /// The basis weight selecting column `index` alone.
    pub fn unit(index: usize) -> Self {
        let mut c = [Complex64::new(0.0, 0.0); 4];
        c[index] = Complex64::new(1.0, 0.0);
        Lambda { c }
    }

    pub fn a(&self, index: usize) -> f64 {
        self.c[index].re
    }

    pub fn b(&self, index: usize) -> f64 {
        self.c[index].im
    }

    /// Real coordinates `(a₀, a₁, a₂, a₃, b₀, b₁, b₂, b₃)`.
    pub fn to_real(&self) -> [f64; 8] {
        let mut out = [0.0; 8];
        for i in 0..4 {
            out[i] = self.c[i].re;
            out[i + 4] = self.c[i].im;
        }
        out
    }

    pub fn from_real(v: &[f64]) -> Self {
        assert_eq!(v.len(), 8, "lambda needs 8 real coordinates");
        let mut c = [Complex64::new(0.0, 0.0); 4];
        for i in 0..4 {
            c[i] = Complex64::new(v[i], v[i + 4]);
        }
        Lambda { c }
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn norm(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, s: Complex64) -> Lambda {
        Lambda {
            c: self.c.map(|z| z * s),
        }
    }
}

impl std::ops::Add for Lambda {
    type Output = Lambda;

    fn add(self, rhs: Lambda) -> Lambda {
        let mut c = self.c;
        for (x, y) in c.iter_mut().zip(rhs.c) {
            *x += y;
        }
        Lambda { c }
    }
}

/// The 4×4 complex matrix whose columns are Ψ⁰..Ψ³ at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormalMatrix {
    /// `entries[row][column]`
    pub entries: [[Complex64; 4]; 4],
}

impl FormalMatrix {
    pub fn column(&self, c: usize) -> RSVector {
        RSVector::new([
            self.entries[0][c],
            self.entries[1][c],
            self.entries[2][c],
            self.entries[3][c],
        ])
    }

    pub fn combine(&self, lambda: &Lambda) -> RSVector {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (r, slot) in out.iter_mut().enumerate() {
            *slot = (0..4).map(|c| self.entries[r][c] * lambda.c[c]).sum();
        }
        RSVector::new(out)
    }
}

/// `(i F₀)·𝟙 + Σⱼ αʲ Fⱼ`
pub fn formal_matrix_from_gradient(g: &GradientSample) -> FormalMatrix {
    let mut entries = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (r, row) in entries.iter_mut().enumerate() {
        row[r] = I * g.f[0];
    }
    for j in 1..=3 {
        let a = alpha(j).expect("generator index in range");
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                let e = a.entries[r][c];
                if e != 0 {
                    *slot += g.f[j] * e as f64;
                }
            }
        }
    }
    FormalMatrix { entries }
}

/// Columns Ψ⁰..Ψ³ of `(i∂₀ + αʲ∂ⱼ)Φ` at `p`.
pub fn formal_solutions(s: &ScalarSeed, p: SpacetimePoint) -> Result<FormalMatrix> {
    Ok(formal_matrix_from_gradient(&seed_gradient(s, p)?))
}

/// `λ₀Ψ⁰ + λ₁Ψ¹ + λ₂Ψ² + λ₃Ψ³` at `p`.
pub fn combine(s: &ScalarSeed, lambda: &Lambda, p: SpacetimePoint) -> Result<RSVector> {
    Ok(formal_solutions(s, p)?.combine(lambda))
}

/// The formal solutions of one seed, evaluated lazily.
#[derive(Debug, Clone, Copy)]
pub struct FormalSolutionSet {
    pub seed: ScalarSeed,
}

impl FormalSolutionSet {
    pub fn new(seed: ScalarSeed) -> Self {
        FormalSolutionSet { seed }
    }

    pub fn at(&self, p: SpacetimePoint) -> Result<FormalMatrix> {
        formal_solutions(&self.seed, p)
    }

    pub fn column(&self, index: usize, p: SpacetimePoint) -> Result<RSVector> {
        Ok(self.at(p)?.column(index))
    }

    pub fn combine(&self, lambda: &Lambda, p: SpacetimePoint) -> Result<RSVector> {
        combine(&self.seed, lambda, p)
    }
}
