//! Real 4×4 α-matrices, the Riemann–Silberstein column and the first-order
//! matrix form of the vacuum Maxwell equations,
//!
//! ```text
//! (−i∂₀ + αʲ∂ⱼ) Ψ = 0,   Ψ = (0, E + icB)ᵀ,   x₀ = ct.
//! ```
//!
//! Units follow the `c = 1` convention: the pair (E, cB) is stored directly.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Vec3 = Vector3<f64>;

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Default threshold for the zeroth component of a physical column, relative
/// to the largest component magnitude.
pub const DEFAULT_TOL_ZERO: f64 = 1e-10;

/// A point of Minkowski space with `x0 = ct`; all coordinates in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpacetimePoint {
    pub x: [f64; 4],
}

impl SpacetimePoint {
    pub const ORIGIN: SpacetimePoint = SpacetimePoint { x: [0.0; 4] };

    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        SpacetimePoint {
            x: [x0, x1, x2, x3],
        }
    }

    /// Builds a point from cylindrical coordinates `(x0, rho, phi, z)`.
    pub fn cylindrical(x0: f64, rho: f64, phi: f64, z: f64) -> Self {
        SpacetimePoint::new(x0, rho * phi.cos(), rho * phi.sin(), z)
    }

    pub fn x0(&self) -> f64 {
        self.x[0]
    }

    pub fn spatial(&self) -> Vec3 {
        Vec3::new(self.x[1], self.x[2], self.x[3])
    }

    /// Distance from the x₃ axis.
    pub fn rho(&self) -> f64 {
        self.x[1].hypot(self.x[2])
    }

    /// Azimuth around the x₃ axis, in (−π, π].
    pub fn azimuth(&self) -> f64 {
        self.x[2].atan2(self.x[1])
    }

    pub fn is_finite(&self) -> bool {
        self.x.iter().all(|v| v.is_finite())
    }

    /// The point displaced by `delta` along coordinate `axis` (0..=3).
    pub fn shifted(&self, axis: usize, delta: f64) -> Self {
        let mut x = self.x;
        x[axis] += delta;
        SpacetimePoint { x }
    }
}

impl fmt::Display for SpacetimePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(x0={}, x1={}, x2={}, x3={})",
            self.x[0], self.x[1], self.x[2], self.x[3]
        )
    }
}

/// A 4×4 matrix with integer entries.
///
/// The generators α¹, α², α³ and all their products live here; arithmetic is
/// exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlphaMatrix {
    pub entries: [[i32; 4]; 4],
}

const ALPHA_1: [[i32; 4]; 4] = [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];
const ALPHA_2: [[i32; 4]; 4] = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]];
const ALPHA_3: [[i32; 4]; 4] = [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]];

/// Returns the generator αʲ for `j ∈ {1, 2, 3}`.
pub fn alpha(j: usize) -> Result<AlphaMatrix> {
    let entries = match j {
        1 => ALPHA_1,
        2 => ALPHA_2,
        3 => ALPHA_3,
        _ => return Err(Error::usage(format!("alpha index must be 1, 2 or 3, got {j}"))),
    };
    Ok(AlphaMatrix { entries })
}

impl AlphaMatrix {
    pub const IDENTITY: AlphaMatrix = AlphaMatrix {
        entries: [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    };

    pub const ZERO: AlphaMatrix = AlphaMatrix {
        entries: [[0; 4]; 4],
    };

    pub fn row(&self, r: usize) -> [i32; 4] {
        self.entries[r]
    }

    pub fn apply(&self, v: &RSVector) -> RSVector {
        let mut out = [Complex64::new(0.0, 0.0); 4];
        for (r, slot) in out.iter_mut().enumerate() {
            for c in 0..4 {
                let e = self.entries[r][c];
                if e != 0 {
                    *slot += v.components[c] * e as f64;
                }
            }
        }
        RSVector { components: out }
    }
}

impl Mul for AlphaMatrix {
    type Output = AlphaMatrix;

    fn mul(self, rhs: AlphaMatrix) -> AlphaMatrix {
        let mut entries = [[0; 4]; 4];
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                *slot = (0..4).map(|k| self.entries[r][k] * rhs.entries[k][c]).sum();
            }
        }
        AlphaMatrix { entries }
    }
}

impl Neg for AlphaMatrix {
    type Output = AlphaMatrix;

    fn neg(self) -> AlphaMatrix {
        let mut entries = self.entries;
        entries.iter_mut().flatten().for_each(|e| *e = -*e);
        AlphaMatrix { entries }
    }
}

/// Complex 4-column `(ψ₀, ψ₁, ψ₂, ψ₃)`.
///
/// A column is a physical electromagnetic field when `ψ₀` vanishes; then
/// `ψⱼ = Eⱼ + icBⱼ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RSVector {
    pub components: [Complex64; 4],
}

impl RSVector {
    pub const ZERO: RSVector = RSVector {
        components: [Complex64::new(0.0, 0.0); 4],
    };

    pub fn new(components: [Complex64; 4]) -> Self {
        RSVector { components }
    }

    /// The column `(0, E + icB)`.
    pub fn from_fields(e: &Vec3, cb: &Vec3) -> Self {
        RSVector {
            components: [
                Complex64::new(0.0, 0.0),
                Complex64::new(e[0], cb[0]),
                Complex64::new(e[1], cb[1]),
                Complex64::new(e[2], cb[2]),
            ],
        }
    }

    pub fn e(&self) -> Vec3 {
        Vec3::new(
            self.components[1].re,
            self.components[2].re,
            self.components[3].re,
        )
    }

    pub fn cb(&self) -> Vec3 {
        Vec3::new(
            self.components[1].im,
            self.components[2].im,
            self.components[3].im,
        )
    }

    pub fn norm(&self) -> f64 {
        self.components.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.components.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// `|ψ₀| < tol · max|ψₐ|`; the zero column counts as physical.
    pub fn is_physical(&self, tol: f64) -> bool {
        self.components[0].norm() <= tol * self.max_abs()
    }

    pub fn scale(&self, s: Complex64) -> RSVector {
        RSVector {
            components: self.components.map(|c| c * s),
        }
    }
}

impl Add for RSVector {
    type Output = RSVector;

    fn add(self, rhs: RSVector) -> RSVector {
        let mut components = self.components;
        for (a, b) in components.iter_mut().zip(rhs.components) {
            *a += b;
        }
        RSVector { components }
    }
}

impl Sub for RSVector {
    type Output = RSVector;

    fn sub(self, rhs: RSVector) -> RSVector {
        let mut components = self.components;
        for (a, b) in components.iter_mut().zip(rhs.components) {
            *a -= b;
        }
        RSVector { components }
    }
}

/// Evaluates `(−i∂₀ + αʲ∂ⱼ)Ψ` at `p` with second-order central differences of
/// step `h` in every coordinate.
///
/// For an exact solution the result is the truncation error, of order
/// `h²·∂³Ψ`.
pub fn maxwell_operator_apply<F>(field_fn: F, p: SpacetimePoint, h: f64) -> Result<RSVector>
where
    F: Fn(SpacetimePoint) -> Result<RSVector>,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::usage(format!("step h must be positive and finite, got {h}")));
    }
    let mut derivs = [RSVector::ZERO; 4];
    for (axis, d) in derivs.iter_mut().enumerate() {
        let fwd_point = p.shifted(axis, h);
        let bwd_point = p.shifted(axis, -h);
        let fwd = sample_finite(&field_fn, fwd_point)?;
        let bwd = sample_finite(&field_fn, bwd_point)?;
        *d = (fwd - bwd).scale(Complex64::new(0.5 / h, 0.0));
    }
    let mut out = derivs[0].scale(-I);
    for j in 1..=3 {
        out = out + alpha(j)?.apply(&derivs[j]);
    }
    Ok(out)
}

fn sample_finite<F>(field_fn: &F, p: SpacetimePoint) -> Result<RSVector>
where
    F: Fn(SpacetimePoint) -> Result<RSVector>,
{
    let v = field_fn(p)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite {
            what: "RS column sample",
            point: p,
        })
    }
}
