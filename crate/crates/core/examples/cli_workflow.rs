//! Drives the command-line front end in-process: solve, sample, verify and
//! dual on files in a scratch directory.
use std::fs;

fn run(args: &[&str]) -> i32 {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["rsmaxwell"];
    full.extend_from_slice(args);
    let code = rsmaxwell::cli::run(full, &mut out, &mut err);
    println!("$ rsmaxwell {}\n{}{}-> exit {code}\n", args.join(" "), String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    code
}

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join("rsmaxwell-cli-workflow");
    fs::create_dir_all(&dir)?;
    let seed = dir.join("plane.seed");
    fs::write(&seed, "kind=real_plane\nk0=1\nn=0.36,-0.48,0.8\nwave=plane-1\n")?;
    let seed = seed.to_str().unwrap();
    let table = dir.join("fields.csv");
    let table = table.to_str().unwrap();
    let dual = dir.join("dual.csv");

    run(&["solve", "--seed", seed]);
    run(&["sample", "--seed", seed, "--grid", "x0:0:1:3,x3:-1:1:3", "--out", table]);
    run(&["verify", "--seed", seed, "--grid", "x0:0:3:4,x1:-1:1:3,x3:0:2:3"]);
    run(&["verify", "--seed", seed, "--grid", "x0:0:3:4,x1:-1:1:3,x3:0:2:3", "--corrupt"]);
    run(&["dual", "--in", table, "--out", dual.to_str().unwrap()]);
    println!("{}", fs::read_to_string(&dual)?);
    Ok(())
}
