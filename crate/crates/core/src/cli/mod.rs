//! Command-line front end. `main.rs` only forwards to [`run`].

pub mod commands;
pub mod config;
pub mod invariants;
pub mod output;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use commands::Outcome;
use config::{insert_checked, read_key_values, Format, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "rsmaxwell", version, about = "Maxwell solutions from scalar wave seeds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve for the admissible λ of a seed and print the physical basis.
    Solve(RunArgs),
    /// Sample a wave on a grid and write the field table.
    Sample(RunArgs),
    /// Check a wave against the Maxwell equations on a grid.
    Verify(RunArgs),
    /// Run the randomized property suite.
    Invariants(InvariantArgs),
    /// Apply the duality (or a general phase) to a sampled table.
    Dual(DualArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// key=value seed/config file
    #[arg(long)]
    pub seed: Option<PathBuf>,
    /// Extra key=value settings, applied after the file
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
    /// c0r,c0i,c1r,c1i,c2r,c2i,c3r,c3i | basis:N | solve
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// axis:min:max:count[,...]
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// axis=value[,...]
    #[arg(long, allow_hyphen_values = true)]
    pub fix: Option<String>,
    /// Finite-difference step
    #[arg(long)]
    pub h: Option<f64>,
    /// Relative residual threshold for verify
    #[arg(long)]
    pub tol: Option<f64>,
    /// Relative singular-value cutoff for the null space
    #[arg(long = "tol-rank")]
    pub tol_rank: Option<f64>,
    /// csv or jsonl
    #[arg(long)]
    pub format: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Speed of light for the extra B columns (display only)
    #[arg(long)]
    pub c: Option<f64>,
    /// Flip the sign of E2 (to exercise the verifier)
    #[arg(long)]
    pub corrupt: bool,
}

#[derive(Debug, Args)]
pub struct InvariantArgs {
    /// Random draws per property
    #[arg(long, default_value_t = 1000)]
    pub cases: usize,
    #[arg(long = "rng-seed", default_value_t = 20240607)]
    pub rng_seed: u64,
}

#[derive(Debug, Args)]
pub struct DualArgs {
    /// Table written by `sample`
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Phase angle in radians; the default π/2 is the duality map
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2, allow_hyphen_values = true)]
    pub chi: f64,
    #[arg(long, default_value = "csv")]
    pub format: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub c: Option<f64>,
}

impl RunArgs {
    pub fn to_config(&self) -> Result<RunConfig> {
        let mut map = match &self.seed {
            Some(p) => read_key_values(p)?,
            None => BTreeMap::new(),
        };
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::config(format!("--set expects KEY=VALUE, got {kv:?}")))?;
            insert_checked(&mut map, k.trim(), v.trim())?;
        }
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                map.insert(k.to_string(), v);
            }
        };
        put("lambda", self.lambda.clone());
        put("grid", self.grid.clone());
        put("fix", self.fix.clone());
        put("h", self.h.map(|v| v.to_string()));
        put("tol", self.tol.map(|v| v.to_string()));
        put("tol_rank", self.tol_rank.map(|v| v.to_string()));
        put("format", self.format.clone());
        put("out", self.out.as_ref().map(|p| p.display().to_string()));
        put("c", self.c.map(|v| v.to_string()));
        if self.corrupt {
            put("corrupt", Some("true".into()));
        }
        if self.seed.is_none() && !map.contains_key("kind") {
            return Err(Error::config("no seed given: pass --seed <file> or --set kind=..."));
        }
        RunConfig::from_map(&map)
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Solve(a) => commands::cmd_solve(&a.to_config()?),
        Command::Sample(a) => commands::cmd_sample(&a.to_config()?),
        Command::Verify(a) => commands::cmd_verify(&a.to_config()?),
        Command::Invariants(a) => {
            let checks = invariants::run_suite(a.cases, a.rng_seed)?;
            let mut s = String::new();
            for c in &checks {
                s.push_str(&format!("{} {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail));
            }
            let pass = checks.iter().all(|c| c.pass);
            Ok(Outcome {
                code: if pass { 0 } else { 1 },
                stdout: s,
                stderr: String::new(),
            })
        }
        Command::Dual(a) => {
            let format: Format = a.format.parse()?;
            commands::cmd_dual(&a.input, a.chi, format, a.out.as_deref(), a.c)
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code: 0 success, 1 verification failure, 2 usage or
/// configuration error.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                return 2;
            }
            let _ = write!(stdout, "{text}");
            return 0;
        }
    };
    match dispatch(&cli.command) {
        Ok(o) => {
            let _ = stdout.write_all(o.stdout.as_bytes());
            let _ = stderr.write_all(o.stderr.as_bytes());
            o.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}
