//! Duality `E → −cB, cB → E` and its continuous version, a phase rotation
//! of `E + icB`.

use num_complex::Complex64;

use crate::algebra::Vec3;
use crate::waves::FieldSample;

/// Electric and magnetic charge and current densities (formal units, ε₀ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SourceTuple {
    pub rho_e: f64,
    pub rho_m: f64,
    pub j_e: Vec3,
    pub j_m: Vec3,
}

impl SourceTuple {
    pub const ZERO: SourceTuple = SourceTuple {
        rho_e: 0.0,
        rho_m: 0.0,
        j_e: Vec3::new(0.0, 0.0, 0.0),
        j_m: Vec3::new(0.0, 0.0, 0.0),
    };

    pub fn is_finite(&self) -> bool {
        self.rho_e.is_finite()
            && self.rho_m.is_finite()
            && self.j_e.iter().chain(self.j_m.iter()).all(|v| v.is_finite())
    }

    /// The source column `(ρ_e + iρ_m, i j_e + j_m)` of the matrix equation.
    pub fn column(&self) -> [Complex64; 4] {
        let c = |re: f64, im: f64| Complex64::new(re, im);
        [
            c(self.rho_e, self.rho_m),
            c(self.j_m[0], self.j_e[0]),
            c(self.j_m[1], self.j_e[1]),
            c(self.j_m[2], self.j_e[2]),
        ]
    }

    pub fn from_column(col: &[Complex64; 4]) -> Self {
        SourceTuple {
            rho_e: col[0].re,
            rho_m: col[0].im,
            j_e: Vec3::new(col[1].im, col[2].im, col[3].im),
            j_m: Vec3::new(col[1].re, col[2].re, col[3].re),
        }
    }
}

/// `E^D = −cB`, `cB^D = E`, i.e. `ψ → iψ`.
pub fn dual_transform(f: &FieldSample) -> FieldSample {
    FieldSample {
        e: -f.cb,
        cb: f.e,
        point: f.point,
    }
}

/// `E + icB → e^{iχ}(E + icB)`.
pub fn phase_transform(f: &FieldSample, chi: f64) -> FieldSample {
    // sin_cos(π/2) leaves a 6e-17 cosine; keep the duality map exact
    if chi == std::f64::consts::FRAC_PI_2 {
        return dual_transform(f);
    }
    let (s, c) = chi.sin_cos();
    FieldSample {
        e: f.e * c - f.cb * s,
        cb: f.e * s + f.cb * c,
        point: f.point,
    }
}

/// `ρ_e → −ρ_m`, `j_e → j_m`, `ρ_m → ρ_e`, `j_m → −j_e`.
pub fn dual_transform_sources(s: &SourceTuple) -> SourceTuple {
    SourceTuple {
        rho_e: -s.rho_m,
        rho_m: s.rho_e,
        j_e: s.j_m,
        j_m: -s.j_e,
    }
}

/// Source column rotated together with the field, `J → e^{iχ}J`, so that
/// the sourced equation stays invariant; `χ = π/2` is
/// [`dual_transform_sources`].
pub fn phase_transform_sources(s: &SourceTuple, chi: f64) -> SourceTuple {
    let rot = Complex64::from_polar(1.0, chi);
    SourceTuple::from_column(&s.column().map(|z| z * rot))
}
