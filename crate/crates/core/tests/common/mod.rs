#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use extremal::extreme_measures::InvariantMeasure;
use extremal::{ActionSpec, Marginals, OrbitGrid};
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const INSTANCES: [&str; 4] = ["trivial_2x2", "swap_2x2", "sym3", "sym4"];

/// Instance commands exercised by the golden files.
pub const INSTANCE_COMMANDS: [&[&str]; 5] = [
    &["orbits"],
    &["ggood", "count"],
    &["ggood", "enumerate"],
    &["extreme", "enumerate"],
    &["extreme", "verify-bound"],
];

pub const FORMATS: [&str; 3] = ["text", "table", "structured"];

/// Commands that take no instance file.
pub const PLAIN_COMMANDS: [(&str, &[&str]); 8] = [
    ("good_count_3_3", &["good", "count", "3", "3"]),
    ("good_check_full_2x2", &["good", "check", "2", "2", "--full"]),
    ("good_enumerate_2x3", &["good", "enumerate", "2", "3"]),
    ("good_count_col_2x2_k2", &["good", "count-col", "2", "2", "--k", "2"]),
    ("good_matrix_tree_3x4", &["good", "matrix-tree", "3", "4"]),
    ("ratio_table_diag_2_5", &["ratio", "table", "--diag", "2..5"]),
    ("ratio_table_m1_n2_4", &["ratio", "table", "--m", "1..1", "--n", "2..4"]),
    ("ratio_const_alpha_2_2_2", &["ratio", "const-alpha", "2", "2", "2"]),
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn instance_path(name: &str) -> PathBuf {
    crate_dir().join("instances").join(format!("{name}.toml"))
}

pub fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests").join("golden").join(name)
}

pub struct CliRun {
    pub stdout: Vec<u8>,
    pub stderr: String,
    pub code: i32,
}

pub fn run_cli(args: &[&str]) -> CliRun {
    let out = Command::new(env!("CARGO_BIN_EXE_extremal"))
        .args(args)
        .current_dir(crate_dir())
        .output()
        .expect("binary runs");
    CliRun {
        stdout: out.stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
        code: out.status.code().unwrap_or(-1),
    }
}

/// Every golden case as (file name, argv).
pub fn golden_cases() -> Vec<(String, Vec<String>)> {
    let mut cases = Vec::new();
    for inst in INSTANCES {
        let path = Path::new("instances").join(format!("{inst}.toml"));
        for cmd in INSTANCE_COMMANDS {
            for fmt in FORMATS {
                let name = format!("{inst}__{}__{fmt}.out", cmd.join("_").replace('-', "_"));
                let mut args: Vec<String> = cmd.iter().map(|s| s.to_string()).collect();
                args.push(path.to_string_lossy().into_owned());
                args.extend(["--format".to_string(), fmt.to_string()]);
                cases.push((name, args));
            }
        }
    }
    for (name, cmd) in PLAIN_COMMANDS {
        for fmt in FORMATS {
            let mut args: Vec<String> = cmd.iter().map(|s| s.to_string()).collect();
            args.extend(["--format".to_string(), fmt.to_string()]);
            cases.push((format!("{name}__{fmt}.out"), args));
        }
    }
    cases
}

/// The instance family used for extremality cross-checks.
pub fn extremality_family() -> Vec<(&'static str, ActionSpec)> {
    vec![
        ("trivial 2x2", ActionSpec::trivial(2, 2)),
        ("trivial 2x3", ActionSpec::trivial(2, 3)),
        ("trivial 3x3", ActionSpec::trivial(3, 3)),
        ("swap 2x2", ActionSpec::swap_2x2()),
        ("S3", ActionSpec::symmetric(3)),
        ("S4", ActionSpec::symmetric(4)),
    ]
}

/// Uniform marginals followed by `extra` random invariant full-support ones.
pub fn marginal_family(grid: &OrbitGrid, extra: usize, rng: &mut ChaCha8Rng) -> Vec<Marginals> {
    let mut out = vec![Marginals::uniform(grid)];
    for _ in 0..extra {
        let mut w = |k: usize| -> Vec<BigRational> {
            (0..k)
                .map(|_| BigRational::from_integer(rng.gen_range(1i64..=9).into()))
                .collect()
        };
        let xw = w(grid.m1());
        let yw = w(grid.n1());
        out.push(Marginals::from_orbit_weights(grid, &xw, &yw).expect("random marginals are valid"));
    }
    out
}

/// A random convex combination of at least one of `points`.
pub fn random_combination(points: &[InvariantMeasure], rng: &mut ChaCha8Rng) -> InvariantMeasure {
    let k = rng.gen_range(1..=points.len());
    let mut picked: Vec<usize> = (0..points.len()).collect();
    for i in 0..k {
        let j = rng.gen_range(i..points.len());
        picked.swap(i, j);
    }
    let raw: Vec<i64> = (0..k).map(|_| rng.gen_range(1i64..=20)).collect();
    let total: i64 = raw.iter().sum();
    let parts: Vec<(BigRational, &InvariantMeasure)> = picked[..k]
        .iter()
        .zip(&raw)
        .map(|(&p, &w)| (BigRational::new(w.into(), total.into()), &points[p]))
        .collect();
    InvariantMeasure::convex_combination(&parts).expect("weights sum to one")
}
