//! Closed-form electromagnetic waves: plane waves along z and along a
//! general direction, the L/C polarization frame, and cylindrical waves.
//!
//! All constructors return `(E, cB)` with the full amplitude factor
//! (`k₀A` for plane waves, `λ₃`-scaled seed derivatives for cylindrical
//! ones).

use std::fmt;

use num_complex::Complex64;

use crate::algebra::{RSVector, SpacetimePoint, Vec3, I};
use crate::bessel::{bessel_j, bessel_j_prime};
use crate::error::{Error, Result};
use crate::seeds::{ScalarSeed, SeedKind, RHO_MIN};
use crate::squaring::{combine, Lambda};

/// Tolerance on `|n| = 1`.
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub e: Vec3,
    pub cb: Vec3,
    pub point: SpacetimePoint,
}

impl FieldSample {
    pub fn new(e: Vec3, cb: Vec3, point: SpacetimePoint) -> Self {
        FieldSample { e, cb, point }
    }

    /// `ψ = E + icB` as a zero-padded 4-column.
    pub fn from_rs(rs: &RSVector, point: SpacetimePoint) -> Self {
        FieldSample {
            e: rs.e(),
            cb: rs.cb(),
            point,
        }
    }

    pub fn rs(&self) -> RSVector {
        RSVector::from_fields(&self.e, &self.cb)
    }

    pub fn is_finite(&self) -> bool {
        self.e.iter().chain(self.cb.iter()).all(|v| v.is_finite())
    }

    pub fn max_abs(&self) -> f64 {
        self.e.iter().chain(self.cb.iter()).fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn e_dot_cb(&self) -> f64 {
        self.e.dot(&self.cb)
    }

    /// `|E|² − |cB|²`
    pub fn energy_difference(&self) -> f64 {
        self.e.norm_squared() - self.cb.norm_squared()
    }

    /// `E × cB`, proportional to the Poynting vector.
    pub fn poynting(&self) -> Vec3 {
        self.e.cross(&self.cb)
    }

    pub fn scale(&self, s: f64) -> Self {
        FieldSample {
            e: self.e * s,
            cb: self.cb * s,
            point: self.point,
        }
    }
}

/// Which of the two independent plane-wave solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    I,
    II,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::I => "I",
            Variant::II => "II",
        })
    }
}

fn check_unit(n: &Vec3) -> Result<()> {
    if !n.iter().all(|v| v.is_finite()) || (n.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::usage(format!(
            "propagation direction must be a unit vector, |n| = {}",
            n.norm()
        )));
    }
    Ok(())
}

/// Plane wave along +z built from `Φ = A sin(k₀x₀ − k₀x₃)`.
///
/// I: `E = (0, −k₀A cosφ, 0)`, `cB = (k₀A cosφ, 0, 0)`;
/// II: `E = (k₀A cosφ, 0, 0)`, `cB = (0, k₀A cosφ, 0)`.
pub fn plane_wave_z(variant: Variant, k0: f64, amplitude: f64, p: SpacetimePoint) -> FieldSample {
    let k3 = k0;
    let c = amplitude * (k0 * p.x[0] - k3 * p.x[3]).cos();
    let (e, cb) = match variant {
        Variant::I => (Vec3::new(0.0, -k3 * c, 0.0), Vec3::new(k0 * c, 0.0, 0.0)),
        Variant::II => (Vec3::new(k3 * c, 0.0, 0.0), Vec3::new(0.0, k0 * c, 0.0)),
    };
    FieldSample::new(e, cb, p)
}

/// Plane wave along a unit direction `n`, `φ = k₀(x₀ − n·x)`.
///
/// I: `E = (n₁²−1, n₁n₂, n₁n₃)`, `cB = (0, −n₃, n₂)`;
/// II: `E = (n₁n₂, n₂²−1, n₂n₃)`, `cB = (n₃, 0, −n₁)`; both times `k₀A cosφ`.
pub fn plane_wave_general(
    variant: Variant,
    n: &Vec3,
    k0: f64,
    amplitude: f64,
    p: SpacetimePoint,
) -> Result<FieldSample> {
    check_unit(n)?;
    let s = k0 * amplitude * (k0 * (p.x[0] - n.dot(&p.spatial()))).cos();
    let (n1, n2, n3) = (n[0], n[1], n[2]);
    let (e, cb) = match variant {
        Variant::I => (
            Vec3::new(n1 * n1 - 1.0, n1 * n2, n1 * n3),
            Vec3::new(0.0, -n3, n2),
        ),
        Variant::II => (
            Vec3::new(n1 * n2, n2 * n2 - 1.0, n2 * n3),
            Vec3::new(n3, 0.0, -n1),
        ),
    };
    Ok(FieldSample::new(e * s, cb * s, p))
}

/// The λ whose combination of the real plane seed's formal columns gives
/// [`plane_wave_general`] exactly.
pub fn plane_variant_lambda(variant: Variant, n: &Vec3) -> Lambda {
    let z = Complex64::new(0.0, 0.0);
    match variant {
        Variant::I => Lambda::new([n[0].into(), I, z, z]),
        Variant::II => Lambda::new([n[1].into(), z, I, z]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LCFrame {
    pub n: Vec3,
    pub l: Vec3,
    pub c: Vec3,
}

/// `L = n(n·a) − a − b×n`, `C = n(n·b) − b + a×n`.
pub fn lc_frame(n: &Vec3, a: &Vec3, b: &Vec3) -> Result<LCFrame> {
    check_unit(n)?;
    Ok(LCFrame {
        n: *n,
        l: n * n.dot(a) - a - b.cross(n),
        c: n * n.dot(b) - b + a.cross(n),
    })
}

impl LCFrame {
    /// Largest violation of `L·C = 0`, `L·n = C·n = 0`, `|L| = |C|`, relative
    /// to `|L|² + |C|²` (or absolute for a zero frame).
    pub fn identity_violation(&self) -> f64 {
        let scale = (self.l.norm_squared() + self.c.norm_squared()).max(f64::MIN_POSITIVE);
        let len = scale.sqrt();
        [
            self.l.dot(&self.c).abs() / scale,
            self.l.dot(&self.n).abs() / len,
            self.c.dot(&self.n).abs() / len,
            (self.l.norm_squared() - self.c.norm_squared()).abs() / scale,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// `E = k₀A(cosφ L − sinφ C)`, `cB = k₀A(sinφ L + cosφ C)`,
/// `φ = k₀(x₀ − n·x)`.
pub fn plane_wave_lc(frame: &LCFrame, k0: f64, amplitude: f64, p: SpacetimePoint) -> FieldSample {
    let (sin, cos) = (k0 * (p.x[0] - frame.n.dot(&p.spatial()))).sin_cos();
    let s = k0 * amplitude;
    FieldSample::new(
        (frame.l * cos - frame.c * sin) * s,
        (frame.l * sin + frame.c * cos) * s,
        p,
    )
}

/// Parameters of a cylindrical wave `Φ = A e^{i(Ex₀ + kz)} e^{imϕ} R(ρ)`
/// combined along the admissible ray `λ₁ = λ₂ = 0`, `λ₀ = iλ₃k/E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylindricalParams {
    pub amplitude: f64,
    pub frequency: f64,
    pub k: f64,
    pub m: i32,
    pub lambda3: Complex64,
}

impl CylindricalParams {
    pub fn seed(&self) -> Result<ScalarSeed> {
        ScalarSeed::cylindrical(self.amplitude, self.frequency, self.k, self.m)
    }

    pub fn lambda(&self) -> Lambda {
        let z = Complex64::new(0.0, 0.0);
        Lambda::new([I * self.lambda3 * (self.k / self.frequency), z, z, self.lambda3])
    }

    fn check(&self, p: &SpacetimePoint) -> Result<()> {
        let seed = self.seed()?;
        seed.validate()?;
        seed.check_domain(p)
    }
}

/// `R(ρ)` and `R'(ρ)`: `J_m(qρ)` for `q > 0`, `ρ^|m|` for `q = 0`.
fn radial(q: f64, m: i32, rho: f64) -> (f64, f64) {
    if q > 0.0 {
        (bessel_j(m, q * rho), q * bessel_j_prime(m, q * rho))
    } else {
        let n = m.unsigned_abs() as i32;
        let d = if n == 0 { 0.0 } else { n as f64 * rho.powi(n - 1) };
        (rho.powi(n), d)
    }
}

/// Cylindrical wave from the polar-coordinate component formulas:
///
/// * `ψ₃ = −λ₃(E² − k²)/E · Φ`
/// * `ψ₁ = (λ₃/E)(−ik ∂₁Φ + E ∂₂Φ)`, `ψ₂ = (λ₃/E)(−ik ∂₂Φ − E ∂₁Φ)`
///
/// with `∂₁ = cosϕ ∂_ρ − (sinϕ/ρ)∂_ϕ` and `∂₂ = sinϕ ∂_ρ + (cosϕ/ρ)∂_ϕ`.
pub fn cylindrical_wave(params: &CylindricalParams, p: SpacetimePoint) -> Result<FieldSample> {
    params.check(&p)?;
    let CylindricalParams {
        amplitude,
        frequency,
        k,
        m,
        lambda3,
    } = *params;
    let q = (frequency * frequency - k * k).max(0.0).sqrt();
    let (rho, az) = (p.rho(), p.azimuth());
    let (r, dr) = radial(q, m, rho);
    let carrier = Complex64::from_polar(amplitude, frequency * p.x[0] + k * p.x[3] + m as f64 * az);
    let phi = carrier * r;
    let d_rho = carrier * dr;
    let d_az_over_rho = I * m as f64 * phi / rho;
    let (sin, cos) = az.sin_cos();
    let d1 = d_rho * cos - d_az_over_rho * sin;
    let d2 = d_rho * sin + d_az_over_rho * cos;
    let f = lambda3 / frequency;
    let psi = RSVector::new([
        Complex64::new(0.0, 0.0),
        f * (-I * k * d1 + frequency * d2),
        f * (-I * k * d2 - frequency * d1),
        -lambda3 * (frequency * frequency - k * k) / frequency * phi,
    ]);
    Ok(FieldSample::from_rs(&psi, p))
}

/// Sign of `k/E` for the two luminal cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Luminal {
    /// `k = +E`
    Forward,
    /// `k = −E`
    Backward,
}

/// Closed forms for `k = ±E` (radial profile `ρ^|m|`):
///
/// * `k = +E`: `ψ₁ = −iλ₃e^{iϕ}(∂_ρ − m/ρ)Φ`, `ψ₂ = −λ₃e^{iϕ}(∂_ρ − m/ρ)Φ`
/// * `k = −E`: `ψ₁ = iλ₃e^{−iϕ}(∂_ρ + m/ρ)Φ`, `ψ₂ = −λ₃e^{−iϕ}(∂_ρ + m/ρ)Φ`
///
/// and `ψ₃ = 0` in both.
pub fn cylindrical_wave_luminal(
    which: Luminal,
    amplitude: f64,
    frequency: f64,
    m: i32,
    lambda3: Complex64,
    p: SpacetimePoint,
) -> Result<FieldSample> {
    let k = match which {
        Luminal::Forward => frequency,
        Luminal::Backward => -frequency,
    };
    let params = CylindricalParams {
        amplitude,
        frequency,
        k,
        m,
        lambda3,
    };
    params.check(&p)?;
    let (rho, az) = (p.rho(), p.azimuth());
    let (r, dr) = radial(0.0, m, rho);
    let carrier = Complex64::from_polar(amplitude, frequency * p.x[0] + k * p.x[3] + m as f64 * az);
    let mf = m as f64 / rho;
    let (psi1, psi2) = match which {
        Luminal::Forward => {
            let d = Complex64::from_polar(1.0, az) * carrier * (dr - mf * r);
            (-I * lambda3 * d, -lambda3 * d)
        }
        Luminal::Backward => {
            let d = Complex64::from_polar(1.0, -az) * carrier * (dr + mf * r);
            (I * lambda3 * d, -lambda3 * d)
        }
    };
    let psi = RSVector::new([Complex64::new(0.0, 0.0), psi1, psi2, Complex64::new(0.0, 0.0)]);
    Ok(FieldSample::from_rs(&psi, p))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationReport {
    pub e_dot_cb: f64,
    /// `|E|² − |cB|²`
    pub energy_difference: f64,
    /// `E×cB/|E×cB|`; `None` when `|E×cB|` is below the tolerance.
    pub poynting_direction: Option<Vec3>,
    pub e_dot_n: Option<f64>,
    pub cb_dot_n: Option<f64>,
}

impl PolarizationReport {
    pub fn direction_undefined(&self) -> bool {
        self.poynting_direction.is_none()
    }
}

/// Polarization diagnostics of one sample. `tol` is an absolute threshold on
/// `|E×cB|`.
pub fn polarization_report(f: &FieldSample, direction: Option<&Vec3>, tol: f64) -> PolarizationReport {
    let s = f.poynting();
    let norm = s.norm();
    PolarizationReport {
        e_dot_cb: f.e_dot_cb(),
        energy_difference: f.energy_difference(),
        poynting_direction: (norm > tol && norm.is_finite()).then(|| s / norm),
        e_dot_n: direction.map(|n| f.e.dot(n)),
        cb_dot_n: direction.map(|n| f.cb.dot(n)),
    }
}

/// A field family that can be evaluated pointwise.
#[derive(Debug, Clone, PartialEq)]
pub enum Wave {
    /// `Σ λ_c Ψᶜ` for a seed.
    Combine { seed: ScalarSeed, lambda: Lambda },
    PlaneZ { variant: Variant, k0: f64, amplitude: f64 },
    PlaneGeneral { variant: Variant, n: Vec3, k0: f64, amplitude: f64 },
    Lc { frame: LCFrame, k0: f64, amplitude: f64 },
    Cylindrical(CylindricalParams),
}

impl Wave {
    pub fn sample(&self, p: SpacetimePoint) -> Result<FieldSample> {
        let f = match self {
            Wave::Combine { seed, lambda } => FieldSample::from_rs(&combine(seed, lambda, p)?, p),
            Wave::PlaneZ {
                variant,
                k0,
                amplitude,
            } => plane_wave_z(*variant, *k0, *amplitude, p),
            Wave::PlaneGeneral {
                variant,
                n,
                k0,
                amplitude,
            } => plane_wave_general(*variant, n, *k0, *amplitude, p)?,
            Wave::Lc {
                frame,
                k0,
                amplitude,
            } => plane_wave_lc(frame, *k0, *amplitude, p),
            Wave::Cylindrical(c) => cylindrical_wave(c, p)?,
        };
        if !f.is_finite() {
            return Err(Error::NonFinite {
                what: "field sample",
                point: p,
            });
        }
        Ok(f)
    }

    /// The full RS column including the zeroth component (nonzero only for
    /// non-physical combinations).
    pub fn sample_rs(&self, p: SpacetimePoint) -> Result<RSVector> {
        match self {
            Wave::Combine { seed, lambda } => combine(seed, lambda, p),
            _ => Ok(self.sample(p)?.rs()),
        }
    }

    /// Dominant wavenumber, used for default steps and relative residuals.
    pub fn wavenumber(&self) -> f64 {
        match self {
            Wave::Combine { seed, .. } => seed.wavenumber(),
            Wave::PlaneZ { k0, .. } | Wave::PlaneGeneral { k0, .. } | Wave::Lc { k0, .. } => k0.abs(),
            Wave::Cylindrical(c) => c.frequency.abs(),
        }
    }

    /// Propagation direction for plane families.
    pub fn direction(&self) -> Option<Vec3> {
        match self {
            Wave::Combine { seed, .. } => seed.direction().map(Vec3::from),
            Wave::PlaneZ { .. } => Some(Vec3::z()),
            Wave::PlaneGeneral { n, .. } => Some(*n),
            Wave::Lc { frame, .. } => Some(frame.n),
            Wave::Cylindrical(_) => None,
        }
    }

    pub fn is_cylindrical(&self) -> bool {
        match self {
            Wave::Combine { seed, .. } => seed.kind() == SeedKind::Cylindrical,
            Wave::Cylindrical(_) => true,
            _ => false,
        }
    }

    /// Smallest admissible distance from the z axis.
    pub fn rho_min(&self) -> f64 {
        if self.is_cylindrical() {
            RHO_MIN
        } else {
            0.0
        }
    }
}
