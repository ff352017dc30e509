//! Scalar solutions of the massless Klein–Fock–Gordon equation
//! `(−∂₀² + ∂₁² + ∂₂² + ∂₃²)Φ = 0` with analytic first and second
//! derivatives.
//!
//! Plane seeds use the phase `φ = k₀x₀ − k·x`, so the gradient carries the
//! lowered wave vector `κ = (k₀, −k₁, −k₂, −k₃)`:
//!
//! * `RealPlane`:    `Φ = A sin φ`,  `F_a = κ_a A cos φ`
//! * `ComplexPlane`: `Φ = A e^{iφ}`, `F_a = iκ_a Φ`
//!
//! Cylindrical seeds are `Φ = A e^{iEx₀} e^{ikx₃} e^{imϕ} R(ρ)` with
//! `R = J_m(qρ)`, `q = √(E² − k²)`. In the degenerate case `q = 0` the regular
//! radial solution `R = ρ^|m|` is used instead (so that `e^{imϕ}R` is the
//! harmonic polynomial `(x₁ ± ix₂)^|m|`).

use std::fmt;

use num_complex::Complex64;

use crate::algebra::{SpacetimePoint, I};
use crate::bessel::bessel_j;
use crate::error::{Error, Result};

/// Points closer than this to the x₃ axis are rejected for cylindrical seeds.
pub const RHO_MIN: f64 = 1e-9;

const NULL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedKind {
    RealPlane,
    ComplexPlane,
    Cylindrical,
}

impl fmt::Display for SeedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeedKind::RealPlane => "real_plane",
            SeedKind::ComplexPlane => "complex_plane",
            SeedKind::Cylindrical => "cylindrical",
        })
    }
}

/// A scalar seed. Use the constructors to get validated values; the variants
/// are public so that diagnostics can be run on deliberately invalid seeds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScalarSeed {
    RealPlane { amplitude: f64, k: [f64; 4] },
    ComplexPlane { amplitude: f64, k: [f64; 4] },
    Cylindrical { amplitude: f64, frequency: f64, k: f64, m: i32 },
}

/// Values of `F_a = ∂_aΦ` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientSample {
    pub f: [Complex64; 4],
}

impl GradientSample {
    pub fn max_abs(&self) -> f64 {
        self.f.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Second derivatives `∂_a∂_bΦ`, symmetric.
pub type Hessian = [[Complex64; 4]; 4];

impl ScalarSeed {
    pub fn real_plane(amplitude: f64, k: [f64; 4]) -> Result<Self> {
        let s = ScalarSeed::RealPlane { amplitude, k };
        s.validate()?;
        Ok(s)
    }

    pub fn complex_plane(amplitude: f64, k: [f64; 4]) -> Result<Self> {
        let s = ScalarSeed::ComplexPlane { amplitude, k };
        s.validate()?;
        Ok(s)
    }

    pub fn cylindrical(amplitude: f64, frequency: f64, k: f64, m: i32) -> Result<Self> {
        let s = ScalarSeed::Cylindrical {
            amplitude,
            frequency,
            k,
            m,
        };
        s.validate()?;
        Ok(s)
    }

    /// Plane seed with `k = k₀ n`; `n` is normalized here.
    pub fn plane_along(kind: SeedKind, amplitude: f64, k0: f64, n: [f64; 3]) -> Result<Self> {
        let len = (n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).sqrt();
        if !(len > 0.0) {
            return Err(Error::usage("propagation direction must be nonzero"));
        }
        let k = [k0, k0 * n[0] / len, k0 * n[1] / len, k0 * n[2] / len];
        match kind {
            SeedKind::RealPlane => ScalarSeed::real_plane(amplitude, k),
            SeedKind::ComplexPlane => ScalarSeed::complex_plane(amplitude, k),
            SeedKind::Cylindrical => Err(Error::usage("plane_along needs a plane seed kind")),
        }
    }

    pub fn kind(&self) -> SeedKind {
        match self {
            ScalarSeed::RealPlane { .. } => SeedKind::RealPlane,
            ScalarSeed::ComplexPlane { .. } => SeedKind::ComplexPlane,
            ScalarSeed::Cylindrical { .. } => SeedKind::Cylindrical,
        }
    }

    pub fn amplitude(&self) -> f64 {
        match *self {
            ScalarSeed::RealPlane { amplitude, .. }
            | ScalarSeed::ComplexPlane { amplitude, .. }
            | ScalarSeed::Cylindrical { amplitude, .. } => amplitude,
        }
    }

    /// True when Φ is real-valued everywhere.
    pub fn is_real(&self) -> bool {
        matches!(self, ScalarSeed::RealPlane { .. })
    }

    /// Temporal wavenumber `|k₀|` (plane) or `|E|` (cylindrical).
    pub fn wavenumber(&self) -> f64 {
        match *self {
            ScalarSeed::RealPlane { k, .. } | ScalarSeed::ComplexPlane { k, .. } => k[0].abs(),
            ScalarSeed::Cylindrical { frequency, .. } => frequency.abs(),
        }
    }

    /// Unit propagation direction of a plane seed.
    pub fn direction(&self) -> Option<[f64; 3]> {
        match *self {
            ScalarSeed::RealPlane { k, .. } | ScalarSeed::ComplexPlane { k, .. } => {
                let len = (k[1] * k[1] + k[2] * k[2] + k[3] * k[3]).sqrt();
                (len > 0.0).then(|| [k[1] / len, k[2] / len, k[3] / len])
            }
            ScalarSeed::Cylindrical { .. } => None,
        }
    }

    /// Transverse wavenumber `q = √(E² − k²)` of a cylindrical seed.
    pub fn transverse_wavenumber(&self) -> Option<f64> {
        match *self {
            ScalarSeed::Cylindrical { frequency, k, .. } => {
                Some((frequency * frequency - k * k).max(0.0).sqrt())
            }
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            ScalarSeed::RealPlane { amplitude, k } | ScalarSeed::ComplexPlane { amplitude, k } => {
                if !amplitude.is_finite() || k.iter().any(|v| !v.is_finite()) {
                    return Err(Error::usage("plane seed parameters must be finite"));
                }
                let time = k[0] * k[0];
                let space = k[1] * k[1] + k[2] * k[2] + k[3] * k[3];
                if (time - space).abs() > NULL_TOL * time.max(space) {
                    return Err(Error::usage(format!(
                        "plane seed wave vector must be null: k0² − |k|² = {:e}",
                        time - space
                    )));
                }
                Ok(())
            }
            ScalarSeed::Cylindrical {
                amplitude,
                frequency,
                k,
                ..
            } => {
                if !amplitude.is_finite() || !frequency.is_finite() || !k.is_finite() {
                    return Err(Error::usage("cylindrical seed parameters must be finite"));
                }
                if frequency == 0.0 {
                    return Err(Error::usage("cylindrical seed needs a nonzero frequency E"));
                }
                if frequency * frequency < k * k {
                    return Err(Error::usage(format!(
                        "cylindrical seed needs E² ≥ k² (evanescent modes unsupported), got E={frequency}, k={k}"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn check_domain(&self, p: &SpacetimePoint) -> Result<()> {
        if let ScalarSeed::Cylindrical { .. } = self {
            let rho = p.rho();
            if !(rho > RHO_MIN) {
                return Err(Error::AxisExclusion {
                    point: *p,
                    rho,
                    rho_min: RHO_MIN,
                });
            }
        }
        Ok(())
    }
}

impl fmt::Display for ScalarSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ScalarSeed::RealPlane { amplitude, k } | ScalarSeed::ComplexPlane { amplitude, k } => {
                write!(
                    f,
                    "{} A={} k=({}, {}, {}, {})",
                    self.kind(),
                    amplitude,
                    k[0],
                    k[1],
                    k[2],
                    k[3]
                )
            }
            ScalarSeed::Cylindrical {
                amplitude,
                frequency,
                k,
                m,
            } => write!(f, "cylindrical A={amplitude} E={frequency} k={k} m={m}"),
        }
    }
}

fn plane_phase(k: &[f64; 4], p: &SpacetimePoint) -> f64 {
    k[0] * p.x[0] - k[1] * p.x[1] - k[2] * p.x[2] - k[3] * p.x[3]
}

fn lowered(k: &[f64; 4]) -> [f64; 4] {
    [k[0], -k[1], -k[2], -k[3]]
}

/// Transverse factor `u = e^{imϕ}R(ρ)` and its Cartesian derivatives in
/// (x₁, x₂).
struct Transverse {
    u: Complex64,
    du: [Complex64; 2],
    ddu: [[Complex64; 2]; 2],
}

fn transverse(q: f64, m: i32, x1: f64, x2: f64) -> Transverse {
    let rho = x1.hypot(x2);
    let phi = x2.atan2(x1);
    if q > 0.0 {
        // u_n = e^{inϕ} J_n(qρ) obeys the ladder relations
        //   (∂₁ + i∂₂) u_n = −q u_{n+1},   (∂₁ − i∂₂) u_n = q u_{n−1}.
        let u = |n: i32| Complex64::from_polar(bessel_j(n, q * rho), n as f64 * phi);
        let (um2, um1, u0, up1, up2) = (u(m - 2), u(m - 1), u(m), u(m + 1), u(m + 2));
        let h = 0.5 * q;
        let hh = h * h;
        let d1 = (um1 - up1) * h;
        let d2 = I * (um1 + up1) * h;
        let d11 = (um2 - u0 * 2.0 + up2) * hh;
        let d22 = -(um2 + u0 * 2.0 + up2) * hh;
        let d12 = I * (um2 - up2) * hh;
        Transverse {
            u: u0,
            du: [d1, d2],
            ddu: [[d11, d12], [d12, d22]],
        }
    } else {
        // q = 0: u = w^n with w = x₁ + i x₂ (m ≥ 0) or x₁ − i x₂ (m < 0).
        let n = m.unsigned_abs() as i32;
        let sigma = if m >= 0 { I } else { -I };
        let w = Complex64::new(x1, 0.0) + sigma * x2;
        let pow = |e: i32| if e < 0 { Complex64::new(0.0, 0.0) } else { w.powi(e) };
        let nf = n as f64;
        let d1 = pow(n - 1) * nf;
        let d2 = sigma * pow(n - 1) * nf;
        let d11 = pow(n - 2) * (nf * (nf - 1.0));
        let d12 = sigma * d11;
        let d22 = sigma * sigma * d11;
        Transverse {
            u: pow(n),
            du: [d1, d2],
            ddu: [[d11, d12], [d12, d22]],
        }
    }
}

/// Φ(p).
pub fn seed_value(s: &ScalarSeed, p: SpacetimePoint) -> Result<Complex64> {
    s.check_domain(&p)?;
    Ok(match *s {
        ScalarSeed::RealPlane { amplitude, k } => {
            Complex64::new(amplitude * plane_phase(&k, &p).sin(), 0.0)
        }
        ScalarSeed::ComplexPlane { amplitude, k } => {
            Complex64::from_polar(amplitude, plane_phase(&k, &p))
        }
        ScalarSeed::Cylindrical {
            amplitude,
            frequency,
            k,
            m,
        } => {
            let q = s.transverse_wavenumber().unwrap_or(0.0);
            let carrier = Complex64::from_polar(amplitude, frequency * p.x[0] + k * p.x[3]);
            carrier * transverse(q, m, p.x[1], p.x[2]).u
        }
    })
}

/// Analytic `F_a = ∂_aΦ` at `p`.
pub fn seed_gradient(s: &ScalarSeed, p: SpacetimePoint) -> Result<GradientSample> {
    s.check_domain(&p)?;
    let f = match *s {
        ScalarSeed::RealPlane { amplitude, k } => {
            let c = amplitude * plane_phase(&k, &p).cos();
            lowered(&k).map(|ka| Complex64::new(ka * c, 0.0))
        }
        ScalarSeed::ComplexPlane { amplitude, k } => {
            let phi = Complex64::from_polar(amplitude, plane_phase(&k, &p));
            lowered(&k).map(|ka| I * ka * phi)
        }
        ScalarSeed::Cylindrical {
            amplitude,
            frequency,
            k,
            m,
        } => {
            let q = s.transverse_wavenumber().unwrap_or(0.0);
            let carrier = Complex64::from_polar(amplitude, frequency * p.x[0] + k * p.x[3]);
            let t = transverse(q, m, p.x[1], p.x[2]);
            let phi = carrier * t.u;
            [
                I * frequency * phi,
                carrier * t.du[0],
                carrier * t.du[1],
                I * k * phi,
            ]
        }
    };
    Ok(GradientSample { f })
}

/// Analytic `∂_a∂_bΦ` at `p`.
pub fn seed_hessian(s: &ScalarSeed, p: SpacetimePoint) -> Result<Hessian> {
    s.check_domain(&p)?;
    let mut h = [[Complex64::new(0.0, 0.0); 4]; 4];
    match *s {
        ScalarSeed::RealPlane { amplitude, k } => {
            let sn = amplitude * plane_phase(&k, &p).sin();
            let kl = lowered(&k);
            for a in 0..4 {
                for b in 0..4 {
                    h[a][b] = Complex64::new(-kl[a] * kl[b] * sn, 0.0);
                }
            }
        }
        ScalarSeed::ComplexPlane { amplitude, k } => {
            let phi = Complex64::from_polar(amplitude, plane_phase(&k, &p));
            let kl = lowered(&k);
            for a in 0..4 {
                for b in 0..4 {
                    h[a][b] = -phi * (kl[a] * kl[b]);
                }
            }
        }
        ScalarSeed::Cylindrical {
            amplitude,
            frequency,
            k,
            m,
        } => {
            let q = s.transverse_wavenumber().unwrap_or(0.0);
            let carrier = Complex64::from_polar(amplitude, frequency * p.x[0] + k * p.x[3]);
            let t = transverse(q, m, p.x[1], p.x[2]);
            // ∂ₐ of the carrier: (iE, ·, ·, ik)
            let c = [I * frequency, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), I * k];
            let grad = [t.u, t.du[0], t.du[1], t.u];
            for a in 0..4 {
                for b in 0..4 {
                    let axial_a = a == 0 || a == 3;
                    let axial_b = b == 0 || b == 3;
                    h[a][b] = carrier
                        * match (axial_a, axial_b) {
                            (true, true) => c[a] * c[b] * t.u,
                            (true, false) => c[a] * grad[b],
                            (false, true) => c[b] * grad[a],
                            (false, false) => t.ddu[a - 1][b - 1],
                        };
                }
            }
        }
    }
    Ok(h)
}

/// `|(−∂₀² + ∂₁² + ∂₂² + ∂₃²)Φ|` by central second differences of step `h`.
pub fn kfg_residual(s: &ScalarSeed, p: SpacetimePoint, h: f64) -> Result<f64> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::usage(format!("step h must be positive and finite, got {h}")));
    }
    let centre = seed_value(s, p)?;
    let mut total = Complex64::new(0.0, 0.0);
    for axis in 0..4 {
        let second = (seed_value(s, p.shifted(axis, h))? - centre * 2.0
            + seed_value(s, p.shifted(axis, -h))?)
            / (h * h);
        if axis == 0 {
            total -= second;
        } else {
            total += second;
        }
    }
    if !(total.re.is_finite() && total.im.is_finite()) {
        return Err(Error::NonFinite {
            what: "KFG residual",
            point: p,
        });
    }
    Ok(total.norm())
}
