//! Flat `key=value` run configuration and grid specification.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_complex::Complex64;

use crate::algebra::{SpacetimePoint, Vec3};
use crate::error::{Error, Result};
use crate::physicality::DEFAULT_TOL_RANK;
use crate::seeds::{ScalarSeed, SeedKind};
use crate::squaring::Lambda;

/// Default verification threshold on the relative residual.
pub const DEFAULT_TOL: f64 = 1e-6;
/// Default finite-difference step as a fraction of the wavelength.
pub const DEFAULT_H_FRACTION: f64 = 1e-4;

const KNOWN_KEYS: &[&str] = &[
    "kind", "A", "k0", "k1", "k2", "k3", "n", "E", "k", "m", "wave", "a", "b", "lambda3", "lambda",
    "grid", "fix", "h", "tol", "tol_rank", "format", "out", "c", "corrupt",
];

/// Parses `key=value` lines; blank lines and `#` comments are ignored.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::config(format!("line {}: expected key=value, got {raw:?}", i + 1)))?;
        insert_checked(&mut map, k.trim(), v.trim())?;
    }
    Ok(map)
}

pub fn insert_checked(map: &mut BTreeMap<String, String>, key: &str, value: &str) -> Result<()> {
    if !KNOWN_KEYS.contains(&key) {
        return Err(Error::config(format!(
            "unknown key {key:?}; expected one of {}",
            KNOWN_KEYS.join(", ")
        )));
    }
    map.insert(key.to_string(), value.to_string());
    Ok(())
}

pub fn read_key_values(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::config(format!("cannot read seed file {}: {e}", path.display())))?;
    parse_key_values(&text)
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::config(format!("{key}: cannot parse {v:?} as a number")))
}

fn parse_list(key: &str, v: &str, len: usize) -> Result<Vec<f64>> {
    let vals = v
        .split(',')
        .map(|s| parse_num::<f64>(key, s))
        .collect::<Result<Vec<_>>>()?;
    if vals.len() != len {
        return Err(Error::config(format!("{key}: expected {len} comma-separated numbers, got {}", vals.len())));
    }
    Ok(vals)
}

fn parse_vec3(key: &str, v: &str) -> Result<Vec3> {
    let l = parse_list(key, v, 3)?;
    Ok(Vec3::new(l[0], l[1], l[2]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            _ => Err(Error::config(format!("format must be csv or jsonl, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LambdaChoice {
    Explicit(Lambda),
    Basis(usize),
    /// First vector of the solved physical basis.
    Solve,
}

impl FromStr for LambdaChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "solve" {
            return Ok(LambdaChoice::Solve);
        }
        if let Some(idx) = s.strip_prefix("basis:") {
            return Ok(LambdaChoice::Basis(parse_num("lambda", idx)?));
        }
        let v = parse_list("lambda", s, 8)?;
        let c = |i: usize| Complex64::new(v[2 * i], v[2 * i + 1]);
        let l = Lambda::new([c(0), c(1), c(2), c(3)]);
        if !l.is_finite() {
            return Err(Error::config("lambda must be finite"));
        }
        Ok(LambdaChoice::Explicit(l))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveChoice {
    Combine,
    PlaneZ1,
    PlaneZ2,
    Plane1,
    Plane2,
    Lc,
    Cylindrical,
}

impl FromStr for WaveChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "combine" => WaveChoice::Combine,
            "plane-z-1" => WaveChoice::PlaneZ1,
            "plane-z-2" => WaveChoice::PlaneZ2,
            "plane-1" => WaveChoice::Plane1,
            "plane-2" => WaveChoice::Plane2,
            "lc" => WaveChoice::Lc,
            "cylindrical" => WaveChoice::Cylindrical,
            _ => {
                return Err(Error::config(format!(
                    "wave must be combine, plane-z-1, plane-z-2, plane-1, plane-2, lc or cylindrical, got {s:?}"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisSpec {
    Fixed(f64),
    Range { min: f64, max: f64, count: usize },
}

impl AxisSpec {
    pub fn count(&self) -> usize {
        match self {
            AxisSpec::Fixed(_) => 1,
            AxisSpec::Range { count, .. } => *count,
        }
    }

    pub fn value(&self, i: usize) -> f64 {
        match *self {
            AxisSpec::Fixed(v) => v,
            AxisSpec::Range { min, max, count } => {
                if count <= 1 {
                    min
                } else if i + 1 == count {
                    max
                } else {
                    min + (max - min) * i as f64 / (count - 1) as f64
                }
            }
        }
    }
}

/// Ranges for some axes and fixed values (default 0) for the rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub axes: [AxisSpec; 4],
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            axes: [AxisSpec::Fixed(0.0); 4],
        }
    }
}

fn axis_index(name: &str) -> Result<usize> {
    match name.trim() {
        "x0" => Ok(0),
        "x1" => Ok(1),
        "x2" => Ok(2),
        "x3" => Ok(3),
        other => Err(Error::config(format!("unknown axis {other:?}; use x0, x1, x2 or x3"))),
    }
}

impl GridSpec {
    /// `axis:min:max:count[,...]` ranges and `axis=value[,...]` fixed values.
    /// A count of 0 gives an empty grid.
    pub fn parse(ranges: Option<&str>, fixed: Option<&str>) -> Result<Self> {
        let mut g = GridSpec::default();
        let mut seen = [false; 4];
        for item in fixed.iter().flat_map(|s| s.split(',')).filter(|s| !s.trim().is_empty()) {
            let (axis, v) = item
                .split_once('=')
                .ok_or_else(|| Error::config(format!("fix: expected axis=value, got {item:?}")))?;
            let i = axis_index(axis)?;
            let v: f64 = parse_num("fix", v)?;
            if !v.is_finite() {
                return Err(Error::config("fix: values must be finite"));
            }
            g.axes[i] = AxisSpec::Fixed(v);
            seen[i] = true;
        }
        for item in ranges.iter().flat_map(|s| s.split(',')).filter(|s| !s.trim().is_empty()) {
            let parts: Vec<&str> = item.split(':').collect();
            if parts.len() != 4 {
                return Err(Error::config(format!("grid: expected axis:min:max:count, got {item:?}")));
            }
            let i = axis_index(parts[0])?;
            if seen[i] {
                return Err(Error::config(format!("axis {} is both fixed and ranged", parts[0])));
            }
            let min: f64 = parse_num("grid", parts[1])?;
            let max: f64 = parse_num("grid", parts[2])?;
            let count: usize = parse_num("grid", parts[3])?;
            if !(min.is_finite() && max.is_finite()) || min > max {
                return Err(Error::config(format!("grid: need finite min <= max in {item:?}")));
            }
            g.axes[i] = AxisSpec::Range { min, max, count };
            seen[i] = true;
        }
        Ok(g)
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.count()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `idx`-th point in lexicographic order, x₃ fastest.
    pub fn point(&self, mut idx: usize) -> SpacetimePoint {
        let mut x = [0.0; 4];
        for a in (0..4).rev() {
            let n = self.axes[a].count();
            x[a] = self.axes[a].value(idx % n);
            idx /= n;
        }
        SpacetimePoint { x }
    }

    pub fn points(&self) -> Vec<SpacetimePoint> {
        (0..self.len()).map(|i| self.point(i)).collect()
    }
}

/// Everything a subcommand needs.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: ScalarSeed,
    pub wave: WaveChoice,
    pub lc_a: Vec3,
    pub lc_b: Vec3,
    pub lambda3: Complex64,
    pub lambda: LambdaChoice,
    pub grid: GridSpec,
    pub h: Option<f64>,
    pub tol: f64,
    pub tol_rank: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub c: Option<f64>,
    pub corrupt: bool,
}

fn positive(key: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::config(format!("{key} must be positive and finite, got {v}")))
    }
}

fn seed_from(map: &BTreeMap<String, String>) -> Result<ScalarSeed> {
    let get = |k: &str| map.get(k).map(String::as_str);
    let num = |k: &str, default: Option<f64>| -> Result<f64> {
        match get(k) {
            Some(v) => parse_num(k, v),
            None => default.ok_or_else(|| Error::config(format!("missing key {k}"))),
        }
    };
    let kind = get("kind").ok_or_else(|| Error::config("missing key kind"))?;
    let amplitude = num("A", Some(1.0))?;
    let seed = match kind {
        "real_plane" | "complex_plane" => {
            let sk = if kind == "real_plane" {
                SeedKind::RealPlane
            } else {
                SeedKind::ComplexPlane
            };
            if let Some(n) = get("n") {
                let n = parse_vec3("n", n)?;
                ScalarSeed::plane_along(sk, amplitude, num("k0", None)?, [n[0], n[1], n[2]])?
            } else {
                let k = [num("k0", None)?, num("k1", Some(0.0))?, num("k2", Some(0.0))?, num("k3", Some(0.0))?];
                if sk == SeedKind::RealPlane {
                    ScalarSeed::real_plane(amplitude, k)?
                } else {
                    ScalarSeed::complex_plane(amplitude, k)?
                }
            }
        }
        "cylindrical" => {
            let m = match get("m") {
                Some(v) => parse_num::<i32>("m", v)?,
                None => 0,
            };
            ScalarSeed::cylindrical(amplitude, num("E", None)?, num("k", Some(0.0))?, m)?
        }
        other => {
            return Err(Error::config(format!(
                "kind must be real_plane, complex_plane or cylindrical, got {other:?}"
            )))
        }
    };
    seed.validate().map_err(|e| Error::config(e.to_string()))?;
    Ok(seed)
}

impl RunConfig {
    pub fn from_map(map: &BTreeMap<String, String>) -> Result<Self> {
        let get = |k: &str| map.get(k).map(String::as_str);
        let seed = seed_from(map)?;
        let lambda3 = match get("lambda3") {
            Some(v) => {
                let l = parse_list("lambda3", v, 2)?;
                Complex64::new(l[0], l[1])
            }
            None => Complex64::new(1.0, 0.0),
        };
        let opt_num = |k: &str| get(k).map(|v| parse_num::<f64>(k, v)).transpose();
        Ok(RunConfig {
            seed,
            wave: get("wave").map(str::parse).transpose()?.unwrap_or(WaveChoice::Combine),
            lc_a: get("a").map(|v| parse_vec3("a", v)).transpose()?.unwrap_or_else(Vec3::zeros),
            lc_b: get("b").map(|v| parse_vec3("b", v)).transpose()?.unwrap_or_else(Vec3::zeros),
            lambda3,
            lambda: get("lambda").map(str::parse).transpose()?.unwrap_or(LambdaChoice::Solve),
            grid: GridSpec::parse(get("grid"), get("fix"))?,
            h: opt_num("h")?.map(|v| positive("h", v)).transpose()?,
            tol: positive("tol", opt_num("tol")?.unwrap_or(DEFAULT_TOL))?,
            tol_rank: {
                let t = opt_num("tol_rank")?.unwrap_or(DEFAULT_TOL_RANK);
                if !(t > 0.0 && t < 1.0) {
                    return Err(Error::config(format!("tol_rank must lie in (0, 1), got {t}")));
                }
                t
            },
            format: get("format").map(str::parse).transpose()?.unwrap_or(Format::Csv),
            out: get("out").map(PathBuf::from),
            c: opt_num("c")?.map(|v| positive("c", v)).transpose()?,
            corrupt: match get("corrupt") {
                None | Some("false") | Some("0") => false,
                Some("true") | Some("1") => true,
                Some(v) => return Err(Error::config(format!("corrupt must be true or false, got {v:?}"))),
            },
        })
    }

    /// Verifier step: explicit `h`, else a fixed fraction of the wavelength.
    pub fn step(&self) -> f64 {
        self.h.unwrap_or_else(|| {
            let k = self.seed.wavenumber();
            let wavelength = if k > 0.0 { 2.0 * std::f64::consts::PI / k } else { 1.0 };
            DEFAULT_H_FRACTION * wavelength
        })
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        })
    }
}
