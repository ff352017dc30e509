//! Which λ-combinations of the formal columns are genuine E/B fields.
//!
//! A combination `Σ λ_c Ψᶜ` is physical when its zeroth component vanishes
//! identically. Differentiating that condition gives linear constraints on the
//! real unknowns `x = (a₀, a₁, a₂, a₃, b₀, b₁, b₂, b₃)`, `λ_c = a_c + i b_c`:
//!
//! * real Φ:    `[b₀∂₀ − aⱼ∂ⱼ]F_c = 0` and `[a₀∂₀ + bⱼ∂ⱼ]F_c = 0`
//! * complex Φ: `[−λ₀∂₀ + iλⱼ∂ⱼ]F_c = 0` (real and imaginary parts)
//!
//! for `c = 0..3`. The constraints are enforced at a set of sample points and
//! the admissible set is the numerical null space of the stacked rows.
//! Directions whose combination is identically zero form the kernel; the rest
//! span the physical solutions.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::{SpacetimePoint, Vec3};
use crate::error::{Error, Result};
use crate::seeds::{seed_gradient, seed_hessian, ScalarSeed, SeedKind};
use crate::squaring::{formal_matrix_from_gradient, Lambda};

pub const DEFAULT_SAMPLE_COUNT: usize = 32;
pub const DEFAULT_TOL_RANK: f64 = 1e-9;
/// Kernel threshold on the RMS field of a unit-norm λ, relative to the seed
/// gradient scale.
pub const KERNEL_TOL: f64 = 1e-10;

/// Storage order used for tie-breaking: a₁, b₁, a₂, b₂, a₃, b₃, a₀, b₀.
const CANONICAL_AXES: [usize; 8] = [1, 5, 2, 6, 3, 7, 0, 4];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowFamily {
    /// `[b₀∂₀ − aⱼ∂ⱼ]F_c`
    TimeBMinusSpaceA,
    /// `[a₀∂₀ + bⱼ∂ⱼ]F_c`
    TimeAPlusSpaceB,
    /// `Re [−λ₀∂₀ + iλⱼ∂ⱼ]F_c`
    ComplexRe,
    /// `Im [−λ₀∂₀ + iλⱼ∂ⱼ]F_c`
    ComplexIm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintRow {
    pub coeffs: [f64; 8],
    /// Which `F_c` the row acts on.
    pub component: usize,
    pub point_index: usize,
    pub family: RowFamily,
}

#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub seed: ScalarSeed,
    pub points: Vec<SpacetimePoint>,
    pub rows: Vec<ConstraintRow>,
}

impl ConstraintSystem {
    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows.len(), 8, |r, c| self.rows[r].coeffs[c])
    }

    pub fn is_all_zero(&self) -> bool {
        self.rows.iter().all(|r| r.coeffs.iter().all(|&v| v == 0.0))
    }

    /// Largest `|row · x|` for the real coordinates of `lambda`.
    pub fn max_violation(&self, lambda: &Lambda) -> f64 {
        let x = lambda.to_real();
        self.rows
            .iter()
            .map(|r| r.coeffs.iter().zip(x).map(|(c, v)| c * v).sum::<f64>().abs())
            .fold(0.0, f64::max)
    }
}

/// Admissible λ for one seed.
#[derive(Debug, Clone)]
pub struct PhysicalBasis {
    /// Orthonormal (as real 8-vectors) directions producing nonzero fields.
    pub basis: Vec<Lambda>,
    /// Orthonormal directions whose combination vanishes identically.
    pub kernel: Vec<Lambda>,
    /// Real dimension of the physical part, `nullity − kernel.len()`.
    pub dim_physical: usize,
    /// Real dimension of the admissible set.
    pub nullity: usize,
    /// Complex dimension of the span of the physical fields.
    pub field_complex_rank: usize,
    /// Singular values of the constraint matrix divided by the largest one,
    /// descending.
    pub singular_values: Vec<f64>,
    pub tol_rank: f64,
    /// The constraint rows were all zero; every λ is admissible.
    pub all_zero: bool,
    /// Some singular value sits within a factor 10 of the rank threshold.
    pub rank_ambiguous: bool,
}

impl PhysicalBasis {
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.all_zero {
            w.push("constraint system is identically zero: every lambda is admissible".into());
        }
        if self.rank_ambiguous {
            w.push(format!(
                "rank decision is ambiguous: a singular value lies within 10x of tol_rank = {:e}",
                self.tol_rank
            ));
        }
        w
    }

    /// Smallest retained singular value relative to the largest, if any.
    pub fn smallest_nonzero_singular_value(&self) -> Option<f64> {
        let rank = 8 - self.nullity;
        (rank > 0).then(|| self.singular_values[rank - 1])
    }
}

fn radical_inverse(mut i: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut out = 0.0;
    while i > 0 {
        out += (i % base) as f64 * f;
        i /= base;
        f *= inv;
    }
    out
}

/// Deterministic quasi-random sample points adapted to the seed: a box of one
/// wavelength around the origin for plane seeds, the shell ρ ∈ [0.5, 5] for
/// cylindrical seeds.
pub fn default_sample_points(seed: &ScalarSeed, n: usize) -> Vec<SpacetimePoint> {
    let k = seed.wavenumber();
    let wavelength = if k > 0.0 { 2.0 * std::f64::consts::PI / k } else { 1.0 };
    (1..=n as u64)
        .map(|i| {
            let u = [
                radical_inverse(i, 2),
                radical_inverse(i, 3),
                radical_inverse(i, 5),
                radical_inverse(i, 7),
            ];
            match seed.kind() {
                SeedKind::Cylindrical => SpacetimePoint::cylindrical(
                    wavelength * (2.0 * u[0] - 1.0),
                    0.5 + 4.5 * u[1],
                    2.0 * std::f64::consts::PI * u[2],
                    wavelength * (2.0 * u[3] - 1.0),
                ),
                _ => SpacetimePoint {
                    x: u.map(|v| wavelength * (2.0 * v - 1.0)),
                },
            }
        })
        .collect()
}

/// Rows `[b₀∂₀ − aⱼ∂ⱼ]F_c` and `[a₀∂₀ + bⱼ∂ⱼ]F_c` for a real-valued seed.
pub fn assemble_real_seed_constraints(
    seed: &ScalarSeed,
    points: &[SpacetimePoint],
) -> Result<ConstraintSystem> {
    if !seed.is_real() {
        return Err(Error::usage(format!(
            "real-seed constraints need a real-valued seed, got {}",
            seed.kind()
        )));
    }
    if points.is_empty() {
        return Err(Error::usage("constraint assembly needs at least one sample point"));
    }
    let mut rows = Vec::with_capacity(8 * points.len());
    for (pi, p) in points.iter().enumerate() {
        let h = seed_hessian(seed, *p)?;
        for c in 0..4 {
            // ∂_a F_c, real for a real seed
            let d = [h[0][c].re, h[1][c].re, h[2][c].re, h[3][c].re];
            rows.push(ConstraintRow {
                coeffs: [0.0, -d[1], -d[2], -d[3], d[0], 0.0, 0.0, 0.0],
                component: c,
                point_index: pi,
                family: RowFamily::TimeBMinusSpaceA,
            });
            rows.push(ConstraintRow {
                coeffs: [d[0], 0.0, 0.0, 0.0, 0.0, d[1], d[2], d[3]],
                component: c,
                point_index: pi,
                family: RowFamily::TimeAPlusSpaceB,
            });
        }
    }
    Ok(ConstraintSystem {
        seed: *seed,
        points: points.to_vec(),
        rows,
    })
}

/// Real and imaginary parts of `[−λ₀∂₀ + iλⱼ∂ⱼ]F_c`; valid for any seed.
///
/// The conjugate equation `[−λ₀*∂₀ − iλⱼ*∂ⱼ]F_c* = 0` is its complex
/// conjugate and adds no rows.
pub fn assemble_complex_seed_constraints(
    seed: &ScalarSeed,
    points: &[SpacetimePoint],
) -> Result<ConstraintSystem> {
    if points.is_empty() {
        return Err(Error::usage("constraint assembly needs at least one sample point"));
    }
    let mut rows = Vec::with_capacity(8 * points.len());
    for (pi, p) in points.iter().enumerate() {
        let h = seed_hessian(seed, *p)?;
        for c in 0..4 {
            let g: [Complex64; 4] = [h[0][c], h[1][c], h[2][c], h[3][c]];
            // −(a₀ + ib₀)G₀ + i(aⱼ + ibⱼ)Gⱼ
            rows.push(ConstraintRow {
                coeffs: [
                    -g[0].re, -g[1].im, -g[2].im, -g[3].im, g[0].im, -g[1].re, -g[2].re, -g[3].re,
                ],
                component: c,
                point_index: pi,
                family: RowFamily::ComplexRe,
            });
            rows.push(ConstraintRow {
                coeffs: [
                    -g[0].im, g[1].re, g[2].re, g[3].re, -g[0].re, -g[1].im, -g[2].im, -g[3].im,
                ],
                component: c,
                point_index: pi,
                family: RowFamily::ComplexIm,
            });
        }
    }
    Ok(ConstraintSystem {
        seed: *seed,
        points: points.to_vec(),
        rows,
    })
}

/// Picks the assembler matching the seed and the default sample set plus any
/// extra points.
pub fn assemble_constraints(
    seed: &ScalarSeed,
    extra_points: &[SpacetimePoint],
) -> Result<ConstraintSystem> {
    let mut points = default_sample_points(seed, DEFAULT_SAMPLE_COUNT);
    points.extend_from_slice(extra_points);
    if seed.is_real() {
        assemble_real_seed_constraints(seed, &points)
    } else {
        assemble_complex_seed_constraints(seed, &points)
    }
}

/// Numerical null space of a dense matrix with `ncols` columns.
#[derive(Debug, Clone)]
pub struct NullSpace {
    /// Orthonormal columns spanning the null space.
    pub basis: DMatrix<f64>,
    /// All singular values divided by the largest, descending.
    pub relative_singular_values: Vec<f64>,
}

/// Null space by SVD; singular values below `tol_rank · σ_max` count as zero.
/// A zero matrix has the full space as null space.
pub fn null_space(a: &DMatrix<f64>, tol_rank: f64) -> NullSpace {
    let n = a.ncols();
    let max_abs = a.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if max_abs == 0.0 {
        return NullSpace {
            basis: DMatrix::identity(n, n),
            relative_singular_values: vec![0.0; n],
        };
    }
    // Pad to at least n rows so that the SVD returns a complete V.
    let rows = a.nrows().max(n);
    let mut padded = DMatrix::zeros(rows, n);
    padded.view_mut((0, 0), (a.nrows(), n)).copy_from(&(a / max_abs));
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("V requested");
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let sigma_max = svd.singular_values[order[0]];
    let relative: Vec<f64> = order.iter().map(|&i| svd.singular_values[i] / sigma_max).collect();
    let null_idx: Vec<usize> = order
        .iter()
        .zip(&relative)
        .filter(|(_, &s)| s < tol_rank)
        .map(|(&i, _)| i)
        .collect();
    let mut basis = DMatrix::zeros(n, null_idx.len());
    for (col, &i) in null_idx.iter().enumerate() {
        basis.set_column(col, &v_t.row(i).transpose());
    }
    NullSpace {
        basis,
        relative_singular_values: relative,
    }
}

/// Deterministic orthonormal basis of the column span of `q` (orthonormal
/// columns): canonical axes are projected in the order a₁, b₁, a₂, b₂, a₃,
/// b₃, a₀, b₀ and Gram–Schmidt-ed; each vector's first nonzero entry (in that
/// order) is made positive and entries below 1e-13 are zeroed.
pub fn canonical_basis(q: &DMatrix<f64>) -> Vec<[f64; 8]> {
    let d = q.ncols();
    let mut out: Vec<DVector<f64>> = Vec::with_capacity(d);
    let mut candidates: Vec<DVector<f64>> = CANONICAL_AXES
        .iter()
        .map(|&axis| {
            let mut e = DVector::zeros(8);
            e[axis] = 1.0;
            q * (q.transpose() * e)
        })
        .collect();
    while out.len() < d {
        // strongest remaining projection first; ties resolved by axis order
        let mut best: Option<(usize, f64)> = None;
        for (i, c) in candidates.iter().enumerate() {
            let mut v = c.clone();
            for u in &out {
                v -= u * u.dot(&v);
            }
            let norm = v.norm();
            if best.is_none_or(|(_, bn)| norm > bn + 1e-12) {
                best = Some((i, norm));
            }
        }
        let (i, norm) = best.expect("candidates available");
        if norm < 1e-8 {
            break;
        }
        let mut v = candidates.remove(i);
        for u in &out {
            v -= u * u.dot(&v);
        }
        v /= v.norm();
        out.push(v);
    }
    out.into_iter()
        .map(|mut v| {
            if let Some(&axis) = CANONICAL_AXES.iter().find(|&&a| v[a].abs() > 1e-12) {
                if v[axis] < 0.0 {
                    v.neg_mut();
                }
            }
            // rounding-level entries become exact zeros
            v.apply(|x| {
                if x.abs() < 1e-13 {
                    *x = 0.0
                }
            });
            v /= v.norm();
            let mut arr = [0.0; 8];
            arr.copy_from_slice(v.as_slice());
            arr
        })
        .collect()
}

/// Solves the constraint system and splits its null space into kernel and
/// physical directions by evaluating the combinations at the sample points.
pub fn solve_null_space(cs: &ConstraintSystem, tol_rank: f64) -> Result<PhysicalBasis> {
    if !(tol_rank > 0.0 && tol_rank < 1.0) {
        return Err(Error::usage(format!("tol_rank must lie in (0, 1), got {tol_rank}")));
    }
    if cs.rows.iter().any(|r| r.coeffs.iter().any(|v| !v.is_finite())) {
        return Err(Error::usage("constraint rows must be finite"));
    }
    let all_zero = cs.is_all_zero();
    let ns = null_space(&normalized_by_point(cs), tol_rank);
    let nullity = ns.basis.ncols();
    let rank_ambiguous = !all_zero
        && ns
            .relative_singular_values
            .iter()
            .any(|&s| s > tol_rank / 10.0 && s < tol_rank * 10.0);

    // Field samples of each null direction: rows are Re/Im of Ψ components
    // at each point, one column per null basis vector.
    let formal: Vec<_> = cs
        .points
        .iter()
        .map(|p| seed_gradient(&cs.seed, *p).map(|g| (formal_matrix_from_gradient(&g), g.max_abs())))
        .collect::<Result<_>>()?;
    let gradient_scale = formal.iter().map(|(_, s)| *s).fold(0.0, f64::max);
    let npts = formal.len().max(1);
    let mut field = DMatrix::zeros(8 * npts, nullity.max(1));
    for col in 0..nullity {
        let lambda = Lambda::from_real(ns.basis.column(col).as_slice());
        for (pi, (m, _)) in formal.iter().enumerate() {
            let psi = m.combine(&lambda);
            for r in 0..4 {
                field[(8 * pi + 2 * r, col)] = psi.components[r].re;
                field[(8 * pi + 2 * r + 1, col)] = psi.components[r].im;
            }
        }
    }

    let (kernel_q, physical_q) = if nullity == 0 {
        (DMatrix::zeros(8, 0), DMatrix::zeros(8, 0))
    } else {
        split_kernel(&ns.basis, &field.columns(0, nullity).into_owned(), gradient_scale, npts)
    };
    let kernel: Vec<Lambda> = canonical_basis(&kernel_q)
        .iter()
        .map(|v| Lambda::from_real(v))
        .collect();
    let basis: Vec<Lambda> = canonical_basis(&physical_q)
        .iter()
        .map(|v| Lambda::from_real(v))
        .collect();
    let field_complex_rank = complex_field_rank(&formal, &basis, gradient_scale);
    Ok(PhysicalBasis {
        dim_physical: nullity - kernel.len(),
        basis,
        kernel,
        nullity,
        field_complex_rank,
        singular_values: ns.relative_singular_values,
        tol_rank,
        all_zero,
        rank_ambiguous,
    })
}

/// Each point's block of rows scaled to unit Frobenius norm; the constraints
/// are homogeneous in Φ so this only equalizes magnitudes across points.
fn normalized_by_point(cs: &ConstraintSystem) -> DMatrix<f64> {
    let mut m = cs.matrix();
    let npts = cs.points.len();
    let mut norms = vec![0.0_f64; npts];
    for (r, row) in cs.rows.iter().enumerate() {
        if row.point_index < npts {
            norms[row.point_index] += m.row(r).norm_squared();
        }
    }
    let global = norms.iter().cloned().fold(0.0, f64::max);
    for (r, row) in cs.rows.iter().enumerate() {
        if row.point_index < npts {
            let n = norms[row.point_index].sqrt();
            // leave numerically empty blocks (e.g. at nodes of the seed) unscaled
            if n > 1e-8 * global.sqrt() {
                m.row_mut(r).scale_mut(1.0 / n);
            }
        }
    }
    m
}

fn split_kernel(
    null_basis: &DMatrix<f64>,
    field: &DMatrix<f64>,
    gradient_scale: f64,
    npts: usize,
) -> (DMatrix<f64>, DMatrix<f64>) {
    let d = null_basis.ncols();
    let rows = field.nrows().max(d);
    let mut padded = DMatrix::zeros(rows, d);
    padded.view_mut((0, 0), (field.nrows(), d)).copy_from(field);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("V requested");
    let threshold = KERNEL_TOL * gradient_scale * (npts as f64).sqrt();
    let (mut kernel, mut physical) = (Vec::new(), Vec::new());
    for i in 0..d {
        let dir = null_basis * v_t.row(i).transpose();
        if svd.singular_values[i] <= threshold || gradient_scale == 0.0 {
            kernel.push(dir);
        } else {
            physical.push(dir);
        }
    }
    let to_matrix = |cols: Vec<DVector<f64>>| {
        if cols.is_empty() {
            DMatrix::zeros(8, 0)
        } else {
            DMatrix::from_columns(&cols)
        }
    };
    (to_matrix(kernel), to_matrix(physical))
}

fn complex_field_rank(
    formal: &[(crate::squaring::FormalMatrix, f64)],
    basis: &[Lambda],
    gradient_scale: f64,
) -> usize {
    if basis.is_empty() || gradient_scale == 0.0 {
        return 0;
    }
    let rows = 4 * formal.len();
    let mut m = DMatrix::<Complex64>::zeros(rows.max(basis.len()), basis.len());
    for (col, l) in basis.iter().enumerate() {
        for (pi, (fm, _)) in formal.iter().enumerate() {
            let psi = fm.combine(l);
            for r in 0..4 {
                m[(4 * pi + r, col)] = psi.components[r];
            }
        }
    }
    let sv = m.singular_values();
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > 1e-8 * smax).count()
}

/// Null space of the closed-form plane-wave system
/// `b₀ = −(a·n)`, `a₀ = b·n` for unit `n`.
pub fn algebraic_plane_null_space(n: &Vec3, tol_rank: f64) -> DMatrix<f64> {
    let a = DMatrix::from_row_slice(
        2,
        8,
        &[
            0.0, n[0], n[1], n[2], 1.0, 0.0, 0.0, 0.0, //
            1.0, 0.0, 0.0, 0.0, 0.0, -n[0], -n[1], -n[2],
        ],
    );
    null_space(&a, tol_rank).basis
}

/// Orthonormal 8×d matrix from a list of λ (Gram–Schmidt).
pub fn lambdas_to_matrix(lambdas: &[Lambda]) -> DMatrix<f64> {
    let mut cols: Vec<DVector<f64>> = Vec::new();
    for l in lambdas {
        let mut v = DVector::from_row_slice(&l.to_real());
        for u in &cols {
            v -= u * u.dot(&v);
        }
        let n = v.norm();
        if n > 1e-12 {
            cols.push(v / n);
        }
    }
    if cols.is_empty() {
        DMatrix::zeros(8, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Principal angles between the spans of two orthonormal column sets of equal
/// dimension, ascending. Computed from the sines (singular values of the
/// component of `b` orthogonal to `a`), which stay accurate for tiny angles.
pub fn principal_angles(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<Vec<f64>> {
    if a.ncols() != b.ncols() || a.nrows() != b.nrows() {
        return Err(Error::usage(format!(
            "subspaces differ in shape: {}x{} vs {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    if a.ncols() == 0 {
        return Ok(Vec::new());
    }
    let residual = b - a * (a.transpose() * b);
    let mut angles: Vec<f64> = residual
        .singular_values()
        .iter()
        .map(|s| s.clamp(0.0, 1.0).asin())
        .collect();
    angles.sort_by(f64::total_cmp);
    Ok(angles)
}

/// Determinant of the 3×3 matrix whose columns are the electric fields
/// `E₍ⱼ₎ = bⱼ(nⱼn − eⱼ) + aⱼ(eⱼ × n)` of the three elementary plane-wave
/// solutions. `n` must be a unit vector; the determinant then vanishes
/// identically because all three columns are transverse to `n`.
pub fn check_linear_dependence_3x3(n: &Vec3, a: &Vec3, b: &Vec3) -> f64 {
    let (n1, n2, n3) = (n[0], n[1], n[2]);
    let m = nalgebra::Matrix3::new(
        b[0] * n1 * n1 - b[0],
        b[1] * n2 * n1 + a[1] * n3,
        b[2] * n3 * n1 - a[2] * n2,
        b[0] * n1 * n2 - a[0] * n3,
        b[1] * n2 * n2 - b[1],
        b[2] * n3 * n2 + a[2] * n1,
        b[0] * n1 * n3 + a[0] * n2,
        b[1] * n2 * n3 - a[1] * n1,
        b[2] * n3 * n3 - b[2],
    );
    m.determinant()
}
