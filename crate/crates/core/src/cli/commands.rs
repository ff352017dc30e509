//! The `solve`, `sample`, `verify` and `dual` subcommands.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};

use rayon::prelude::*;
use serde_json::json;

use super::config::{Format, LambdaChoice, RunConfig, WaveChoice};
use super::output::{read_fields, write_fields};
use crate::algebra::{SpacetimePoint, Vec3};
use crate::dual::phase_transform;
use crate::error::{Error, Result};
use crate::physicality::{assemble_constraints, solve_null_space, PhysicalBasis};
use crate::seeds::ScalarSeed;
use crate::squaring::Lambda;
use crate::verify::{convergence_order, maxwell_residual, FLOOR_REL};
use crate::waves::{lc_frame, CylindricalParams, FieldSample, Variant, Wave};

/// Most points used for the convergence-slope estimate in `verify`.
const SLOPE_POINTS: usize = 16;
const SLOPE_FACTORS: [f64; 3] = [100.0, 50.0, 25.0];

/// Outcome of a subcommand: exit code plus what to print.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

pub fn physical_basis(cfg: &RunConfig) -> Result<PhysicalBasis> {
    let cs = assemble_constraints(&cfg.seed, &[])?;
    solve_null_space(&cs, cfg.tol_rank)
}

fn seed_direction(seed: &ScalarSeed) -> Result<Vec3> {
    seed.direction()
        .map(Vec3::from)
        .ok_or_else(|| Error::config("this wave needs a plane seed (kind=real_plane or complex_plane)"))
}

fn plane_k0(seed: &ScalarSeed) -> Result<f64> {
    match seed {
        ScalarSeed::RealPlane { k, .. } | ScalarSeed::ComplexPlane { k, .. } if k[0] > 0.0 => Ok(k[0]),
        ScalarSeed::RealPlane { .. } | ScalarSeed::ComplexPlane { .. } => Err(Error::config("plane waves need k0 > 0")),
        ScalarSeed::Cylindrical { .. } => Err(Error::config("this wave needs a plane seed")),
    }
}

/// Resolves the configured wave family and λ selection.
pub fn build_wave(cfg: &RunConfig) -> Result<Wave> {
    let seed = cfg.seed;
    let amplitude = seed.amplitude();
    Ok(match cfg.wave {
        WaveChoice::Combine => {
            let lambda = match cfg.lambda {
                LambdaChoice::Explicit(l) => l,
                LambdaChoice::Solve => pick_basis(cfg, 0)?,
                LambdaChoice::Basis(i) => pick_basis(cfg, i)?,
            };
            Wave::Combine { seed, lambda }
        }
        WaveChoice::PlaneZ1 | WaveChoice::PlaneZ2 => Wave::PlaneZ {
            variant: if cfg.wave == WaveChoice::PlaneZ1 { Variant::I } else { Variant::II },
            k0: plane_k0(&seed)?,
            amplitude,
        },
        WaveChoice::Plane1 | WaveChoice::Plane2 => Wave::PlaneGeneral {
            variant: if cfg.wave == WaveChoice::Plane1 { Variant::I } else { Variant::II },
            n: seed_direction(&seed)?,
            k0: plane_k0(&seed)?,
            amplitude,
        },
        WaveChoice::Lc => Wave::Lc {
            frame: lc_frame(&seed_direction(&seed)?, &cfg.lc_a, &cfg.lc_b)?,
            k0: plane_k0(&seed)?,
            amplitude,
        },
        WaveChoice::Cylindrical => match seed {
            ScalarSeed::Cylindrical {
                amplitude,
                frequency,
                k,
                m,
            } => Wave::Cylindrical(CylindricalParams {
                amplitude,
                frequency,
                k,
                m,
                lambda3: cfg.lambda3,
            }),
            _ => return Err(Error::config("wave=cylindrical needs kind=cylindrical")),
        },
    })
}

fn pick_basis(cfg: &RunConfig, i: usize) -> Result<Lambda> {
    let pb = physical_basis(cfg)?;
    pb.basis.get(i).copied().ok_or_else(|| {
        Error::config(format!(
            "basis index {i} out of range: the seed has {} physical direction(s)",
            pb.basis.len()
        ))
    })
}

/// Samples the wave, flipping `E₂` when the config asks for a corrupted field.
pub fn field_fn(cfg: &RunConfig, wave: &Wave) -> impl Fn(SpacetimePoint) -> Result<FieldSample> + Sync {
    let wave = wave.clone();
    let corrupt = cfg.corrupt;
    move |p| {
        let mut f = wave.sample(p)?;
        if corrupt {
            f.e[1] = -f.e[1];
        }
        Ok(f)
    }
}

fn complex_str(z: num_complex::Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}

fn lambda_str(l: &Lambda) -> String {
    let parts: Vec<String> = l.c.iter().map(|z| complex_str(*z)).collect();
    format!("({})", parts.join(", "))
}

fn lambda_json(l: &Lambda) -> serde_json::Value {
    json!(l.c.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>())
}

fn open_out(cfg: &RunConfig) -> Result<Option<BufWriter<File>>> {
    cfg.out
        .as_ref()
        .map(|p| {
            File::create(p)
                .map(BufWriter::new)
                .map_err(|e| Error::config(format!("cannot create {}: {e}", p.display())))
        })
        .transpose()
}

pub fn cmd_solve(cfg: &RunConfig) -> Result<Outcome> {
    let pb = physical_basis(cfg)?;
    let mut s = String::new();
    let w = &mut s;
    use std::fmt::Write as _;
    let _ = writeln!(w, "seed: {}", cfg.seed);
    let _ = writeln!(w, "nullity: {} (real)", pb.nullity);
    let _ = writeln!(w, "kernel: {} (real)", pb.kernel.len());
    let _ = writeln!(
        w,
        "dim_physical: {} (real), field span: {} (complex)",
        pb.dim_physical, pb.field_complex_rank
    );
    for (i, l) in pb.basis.iter().enumerate() {
        let _ = writeln!(w, "basis[{i}]: {}", lambda_str(l));
    }
    for (i, l) in pb.kernel.iter().enumerate() {
        let _ = writeln!(w, "kernel[{i}]: {}", lambda_str(l));
    }
    let sv: Vec<String> = pb.singular_values.iter().map(|v| format!("{v:.3e}")).collect();
    let _ = writeln!(w, "singular_values: {}", sv.join(" "));
    let warnings = pb.warnings();
    for warn in &warnings {
        let _ = writeln!(w, "warning: {warn}");
    }
    if let Some(mut out) = open_out(cfg)? {
        let doc = json!({
            "seed": cfg.seed.to_string(),
            "nullity": pb.nullity,
            "kernel_dim": pb.kernel.len(),
            "dim_physical": pb.dim_physical,
            "field_complex_rank": pb.field_complex_rank,
            "basis": pb.basis.iter().map(lambda_json).collect::<Vec<_>>(),
            "kernel": pb.kernel.iter().map(lambda_json).collect::<Vec<_>>(),
            "singular_values": pb.singular_values,
            "tol_rank": pb.tol_rank,
            "warnings": warnings,
        });
        match cfg.format {
            Format::Jsonl => serde_json::to_writer(&mut out, &doc)?,
            Format::Csv => serde_json::to_writer_pretty(&mut out, &doc)?,
        }
        writeln!(out)?;
        out.flush()?;
    }
    Ok(Outcome::ok(s))
}

/// Evaluates `f` on every grid point in parallel, keeping grid order;
/// points excluded by the cylinder axis are dropped and counted.
fn over_grid<T: Send>(
    points: &[SpacetimePoint],
    f: impl Fn(SpacetimePoint) -> Result<T> + Sync,
) -> Result<(Vec<T>, usize)> {
    let results: Vec<Result<Option<T>>> = points
        .par_iter()
        .map(|p| match f(*p) {
            Ok(v) => Ok(Some(v)),
            Err(Error::AxisExclusion { .. }) => Ok(None),
            Err(e) => Err(e),
        })
        .collect();
    let mut out = Vec::with_capacity(results.len());
    let mut skipped = 0;
    for r in results {
        match r? {
            Some(v) => out.push(v),
            None => skipped += 1,
        }
    }
    Ok((out, skipped))
}

pub fn cmd_sample(cfg: &RunConfig) -> Result<Outcome> {
    let wave = build_wave(cfg)?;
    let f = field_fn(cfg, &wave);
    let (rows, skipped) = over_grid(&cfg.grid.points(), &f)?;
    match open_out(cfg)? {
        Some(out) => write_fields(out, cfg.format, &rows, skipped, cfg.c)?,
        None => {
            let mut buf = Vec::new();
            write_fields(&mut buf, cfg.format, &rows, skipped, cfg.c)?;
            return Ok(Outcome::ok(String::from_utf8_lossy(&buf).into_owned()));
        }
    }
    let mut msg = format!("wrote {} rows", rows.len());
    if skipped > 0 {
        msg.push_str(&format!(", skipped {skipped} on the cylinder axis"));
    }
    Ok(Outcome::ok(msg + "\n"))
}

#[derive(Debug, Clone, Copy)]
struct PointResidual {
    point: SpacetimePoint,
    div_e: f64,
    div_cb: f64,
    curl_e: f64,
    curl_cb: f64,
    max_residual: f64,
    field_max: f64,
}

fn median(v: &mut [f64]) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Outcome> {
    let wave = build_wave(cfg)?;
    let f = field_fn(cfg, &wave);
    let h = cfg.step();
    let points = cfg.grid.points();
    let (res, skipped) = over_grid(&points, |p| {
        let r = maxwell_residual(&f, p, h, None)?;
        let s = f(p)?;
        Ok(PointResidual {
            point: p,
            div_e: r.div_e,
            div_cb: r.div_cb,
            curl_e: r.curl_e_plus_dt_cb,
            curl_cb: r.curl_cb_minus_dt_e,
            max_residual: r.max_residual,
            field_max: s.e.norm().max(s.cb.norm()),
        })
    })?;
    // relative to k · (largest field magnitude over the grid)
    let field_max = res.iter().map(|r| r.field_max).fold(0.0, f64::max);
    let scale = wave.wavenumber() * field_max;
    let rel = |r: f64| if scale > 0.0 { r / scale } else { r };
    let mut rels: Vec<f64> = res.iter().map(|r| rel(r.max_residual)).collect();
    let max_rel = rels.iter().cloned().fold(0.0, f64::max);
    let median_rel = median(&mut rels);

    let stride = res.len().div_ceil(SLOPE_POINTS).max(1);
    let steps = SLOPE_FACTORS.map(|s| s * h);
    let mut slopes = Vec::new();
    let mut floor_limited = 0;
    for r in res.iter().step_by(stride) {
        match convergence_order(&f, r.point, &steps, scale) {
            Ok(c) => match c.slope {
                Some(s) if !c.floor_limited => slopes.push(s),
                _ => floor_limited += 1,
            },
            Err(Error::AxisExclusion { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let slope = (!slopes.is_empty()).then(|| median(&mut slopes));
    let pass = !res.is_empty() && max_rel < cfg.tol;

    if let Some(mut out) = open_out(cfg)? {
        write_residuals(&mut out, cfg.format, &res, &rel)?;
        out.flush()?;
    }
    let mut s = format!(
        "points: {}\nskipped: {skipped}\nh: {h:e}\nscale: {scale:e}\nmax_relative_residual: {max_rel:e}\nmedian_relative_residual: {median_rel:e}\n",
        res.len()
    );
    match slope {
        Some(v) => s.push_str(&format!("convergence_slope: {:.3}\n", v + 0.0)),
        None => s.push_str("convergence_slope: floor-limited\n"),
    }
    if floor_limited > 0 && slope.is_some() {
        s.push_str(&format!(
            "floor_limited_points: {floor_limited} (residual below {FLOOR_REL:e} relative)\n"
        ));
    }
    s.push_str(&format!("threshold: {:e}\n", cfg.tol));
    s.push_str(if pass { "result: PASS\n" } else { "result: FAIL\n" });
    Ok(Outcome {
        code: if pass { 0 } else { 1 },
        stdout: s,
        stderr: String::new(),
    })
}

fn write_residuals<W: Write>(
    w: &mut W,
    format: Format,
    res: &[PointResidual],
    rel: &dyn Fn(f64) -> f64,
) -> Result<()> {
    const COLS: [&str; 10] = [
        "x0", "x1", "x2", "x3", "div_E", "div_cB", "curl_E_plus_dt_cB", "curl_cB_minus_dt_E", "max_residual",
        "relative",
    ];
    let vals = |r: &PointResidual| {
        let mut v = r.point.x.to_vec();
        v.extend([r.div_e, r.div_cb, r.curl_e, r.curl_cb, r.max_residual, rel(r.max_residual)]);
        v
    };
    match format {
        Format::Csv => {
            let mut wr = csv::Writer::from_writer(w);
            wr.write_record(COLS)?;
            for r in res {
                wr.write_record(vals(r).iter().map(|v| super::output::fmt_f64(*v)))?;
            }
            wr.flush()?;
        }
        Format::Jsonl => {
            for r in res {
                let obj: serde_json::Map<String, serde_json::Value> =
                    COLS.iter().zip(vals(r)).map(|(k, v)| (k.to_string(), json!(v))).collect();
                serde_json::to_writer(&mut *w, &obj)?;
                writeln!(w)?;
            }
        }
    }
    Ok(())
}

/// Applies `E + icB → e^{iχ}(E + icB)` to every row of a sampled table.
pub fn cmd_dual(
    input: &std::path::Path,
    chi: f64,
    format: Format,
    out: Option<&std::path::Path>,
    c: Option<f64>,
) -> Result<Outcome> {
    let file = File::open(input).map_err(|e| Error::config(format!("cannot open {}: {e}", input.display())))?;
    let rows = read_fields(BufReader::new(file), format)?;
    let transformed: Vec<FieldSample> = rows.iter().map(|f| phase_transform(f, chi)).collect();
    match out {
        Some(p) => {
            let file = File::create(p).map_err(|e| Error::config(format!("cannot create {}: {e}", p.display())))?;
            write_fields(BufWriter::new(file), format, &transformed, 0, c)?;
            Ok(Outcome::ok(format!("wrote {} rows\n", transformed.len())))
        }
        None => {
            let mut buf = Vec::new();
            write_fields(&mut buf, format, &transformed, 0, c)?;
            Ok(Outcome::ok(String::from_utf8_lossy(&buf).into_owned()))
        }
    }
}
