//! Command-line front end. Every command yields a [`RunReport`] rendered as
//! text, as comma-separated table rows, or as JSON.
//!
//! Exit codes: 0 success, 2 parse error, 3 validation error, 4 resource cap
//! exceeded.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

use crate::counting_asymptotics::{self, RatioRecord, DEFAULT_PRECISION};
use crate::error::Error;
use crate::extreme_measures::{self, InvariantMeasure, Marginals};
use crate::g_good::{self, OrbitGrid};
use crate::good_sets::{self, Cell, GridSubset, DEFAULT_CAP};
use crate::group_action::ActionSpec;
use crate::instance::{digest, format_rational, Instance, ParseError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "extremal", version, about = "Extreme couplings with fixed marginals under a group action")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Cap on the number of sets an enumeration may visit.
    #[arg(long, default_value_t = DEFAULT_CAP, global = true)]
    pub limit: u64,
    /// Significant digits for decimal columns.
    #[arg(long, default_value_t = DEFAULT_PRECISION, global = true)]
    pub precision: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Table,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Orbit partitions of X, Y, X x Y and the orbit grid with multiplicities.
    Orbits { instance: PathBuf },
    /// Good subsets of a plain m x n grid.
    #[command(subcommand)]
    Good(GoodCommand),
    /// Maximal G-good sets of an instance.
    #[command(subcommand)]
    Ggood(InstanceCommand),
    /// Extreme couplings of an instance.
    #[command(subcommand)]
    Extreme(ExtremeCommand),
    /// Exact ratio of maximal good sets to the binomial bound.
    #[command(subcommand)]
    Ratio(RatioCommand),
    /// Print a generated instance file with uniform marginals.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Args)]
pub struct Dims {
    pub m: usize,
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum GoodCommand {
    /// Decide goodness of a cell set given as "i,j" tokens; prints a loop if any.
    Check {
        #[command(flatten)]
        dims: Dims,
        cells: Vec<String>,
        /// Use the full grid.
        #[arg(long)]
        full: bool,
    },
    Enumerate(Dims),
    Count(Dims),
    CountRow {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        k: usize,
    },
    CountCol {
        #[command(flatten)]
        dims: Dims,
        #[arg(long)]
        k: usize,
    },
    MatrixTree(Dims),
}

#[derive(Debug, Subcommand)]
pub enum InstanceCommand {
    Count { instance: PathBuf },
    Enumerate { instance: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum ExtremeCommand {
    Enumerate { instance: PathBuf },
    VerifyBound { instance: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum RatioCommand {
    Table {
        /// Diagonal range m = n, e.g. 2..5 (inclusive).
        #[arg(long, value_parser = parse_range, conflicts_with_all = ["m", "n"])]
        diag: Option<RangeInclusive<usize>>,
        #[arg(long, value_parser = parse_range, requires = "n")]
        m: Option<RangeInclusive<usize>>,
        #[arg(long, value_parser = parse_range, requires = "m")]
        n: Option<RangeInclusive<usize>>,
    },
    ConstAlpha { m1: usize, n1: usize, a: usize },
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    Trivial { m: usize, n: usize },
    Swap,
    Symmetric { n: usize },
    CyclicBlocks { m1: usize, n1: usize, a: usize },
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let (a, b) = s.split_once("..").unwrap_or((s, s));
    let a: usize = a.trim().parse().map_err(|_| format!("bad range {s:?}"))?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| format!("bad range {s:?}"))?;
    if a == 0 || a > b {
        return Err(format!("range {s:?} must be nonempty and start at 1 or more"));
    }
    Ok(a..=b)
}

#[derive(Clone, Debug, Serialize)]
pub struct Sizes {
    pub m: usize,
    pub n: usize,
    pub m1: usize,
    pub n1: usize,
    pub m12: usize,
}

/// Machine-readable mirror of one run.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sizes: Option<Sizes>,
    pub result: Value,
    pub exit_code: i32,
}

enum Failure {
    Parse(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) => EXIT_PARSE,
            Failure::Lib(e) if e.is_resource() => EXIT_CAP,
            Failure::Lib(_) => EXIT_INVALID,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Parse(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

/// What a command produced, before formatting.
struct Output {
    command: String,
    digest: Option<String>,
    sizes: Option<Sizes>,
    text: String,
    table: String,
    result: Value,
}

impl Output {
    fn new(command: &str) -> Self {
        Output {
            command: command.to_string(),
            digest: None,
            sizes: None,
            text: String::new(),
            table: String::new(),
            result: Value::Null,
        }
    }
}

/// Result of running the CLI: bytes for stdout and stderr plus exit code.
pub struct Run {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Run
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Run { stdout: rendered, stderr: String::new(), code }
            } else {
                Run { stdout: String::new(), stderr: rendered, code }
            };
        }
    };
    match execute(&cli) {
        Ok(out) => Run {
            stdout: render(&cli, out),
            stderr: String::new(),
            code: EXIT_OK,
        },
        Err(f) => Run {
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message()),
            code: f.exit_code(),
        },
    }
}

fn render(cli: &Cli, out: Output) -> String {
    match cli.format {
        Format::Text if out.command == "gen" => out.text,
        Format::Text => {
            let mut s = format!("command: {}\n", out.command);
            if let Some(d) = &out.digest {
                let _ = writeln!(s, "instance: sha256:{d}");
            }
            if let Some(z) = &out.sizes {
                let _ = writeln!(
                    s,
                    "sizes: m = {}, n = {}, m1 = {}, n1 = {}, m12 = {}",
                    z.m, z.n, z.m1, z.n1, z.m12
                );
            }
            s.push_str(&out.text);
            s
        }
        Format::Table => out.table,
        Format::Structured => {
            let report = RunReport {
                command: out.command,
                instance_digest: out.digest,
                sizes: out.sizes,
                result: out.result,
                exit_code: EXIT_OK,
            };
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

struct Loaded {
    instance: Instance,
    digest: String,
    grid: OrbitGrid,
}

fn load(path: &PathBuf) -> Result<Loaded, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|_| Failure::Parse(format!("{} is not UTF-8", path.display())))?;
    let instance = Instance::parse(text)?;
    let grid = OrbitGrid::build(&instance.spec)?;
    Ok(Loaded {
        instance,
        digest: digest(&bytes),
        grid,
    })
}

impl Loaded {
    fn sizes(&self) -> Sizes {
        Sizes {
            m: self.grid.x_size(),
            n: self.grid.y_size(),
            m1: self.grid.m1(),
            n1: self.grid.n1(),
            m12: self.grid.m12(),
        }
    }

    fn output(&self, command: &str) -> Output {
        let mut out = Output::new(command);
        out.digest = Some(self.digest.clone());
        out.sizes = Some(self.sizes());
        out
    }

    fn marginals(&self) -> Result<(Marginals, bool), Failure> {
        Ok(match &self.instance.marginals {
            Some((mu1, mu2)) => (Marginals::new(&self.grid, mu1.clone(), mu2.clone())?, false),
            None => (Marginals::uniform(&self.grid), true),
        })
    }
}

fn rat(v: &BigRational) -> String {
    format_rational(v)
}

fn rats(v: &[BigRational]) -> Vec<String> {
    v.iter().map(rat).collect()
}

fn cells_text(cells: &[Cell]) -> String {
    let parts: Vec<String> = cells.iter().map(|(i, j)| format!("({i},{j})")).collect();
    format!("{{{}}}", parts.join(" "))
}

fn ids_text(ids: &[usize]) -> String {
    let parts: Vec<String> = ids.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(" "))
}

/// Right-aligned matrix rendering, two-space indent.
fn matrix_text(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut s = String::new();
    for row in rows {
        let line: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
        let _ = writeln!(s, "  {}", line.join(" "));
    }
    s
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Orbits { instance } => cmd_orbits(&load(instance)?),
        Command::Good(g) => cmd_good(cli, g),
        Command::Ggood(InstanceCommand::Count { instance }) => cmd_ggood_count(&load(instance)?),
        Command::Ggood(InstanceCommand::Enumerate { instance }) => {
            cmd_ggood_enumerate(&load(instance)?, cli.limit)
        }
        Command::Extreme(ExtremeCommand::Enumerate { instance }) => {
            cmd_extreme_enumerate(&load(instance)?, cli.limit)
        }
        Command::Extreme(ExtremeCommand::VerifyBound { instance }) => {
            cmd_verify_bound(&load(instance)?, cli.limit)
        }
        Command::Ratio(r) => cmd_ratio(cli, r),
        Command::Gen(g) => cmd_gen(g),
    }
}

fn cmd_orbits(l: &Loaded) -> Result<Output, Failure> {
    let g = &l.grid;
    let mut out = l.output("orbits");
    let ny = g.y_size();
    let mut t = String::new();
    for (label, part) in [("X orbits", g.x_orbits()), ("Y orbits", g.y_orbits())] {
        let _ = writeln!(t, "{label}:");
        for (id, o) in part.orbits().iter().enumerate() {
            let _ = writeln!(t, "  {id}: {}", ids_text(o));
        }
    }
    let _ = writeln!(t, "product orbits:");
    let mut table = String::from("orbit,x_orbit,y_orbit,size\n");
    let mut product = Vec::new();
    for (id, o) in g.product_orbits().orbits().iter().enumerate() {
        let cells: Vec<Cell> = o.iter().map(|&c| (c / ny, c % ny)).collect();
        let (i, j) = g.phi(id)?;
        let _ = writeln!(t, "  {id}: cell ({i},{j}) {}", cells_text(&cells));
        let _ = writeln!(table, "{id},{i},{j},{}", cells.len());
        product.push(json!({"cell": [i, j], "points": cells}));
    }
    let alphas: Vec<Vec<String>> = (0..g.m1())
        .map(|i| (0..g.n1()).map(|j| g.alpha(i, j).to_string()).collect())
        .collect();
    let _ = writeln!(t, "orbit grid alpha:");
    t.push_str(&matrix_text(&alphas));
    let cell_orbits: Vec<Vec<Vec<usize>>> = (0..g.m1())
        .map(|i| (0..g.n1()).map(|j| g.cell_orbits(i, j).to_vec()).collect())
        .collect();
    out.result = json!({
        "x_orbits": g.x_orbits().orbits(),
        "y_orbits": g.y_orbits().orbits(),
        "product_orbits": product,
        "alpha": (0..g.m1()).map(|i| (0..g.n1()).map(|j| g.alpha(i, j)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "cell_orbits": cell_orbits,
    });
    out.text = t;
    out.table = table;
    Ok(out)
}

fn parse_cell(tok: &str) -> Result<Cell, Failure> {
    let bad = || Failure::Parse(format!("bad cell {tok:?}: expected \"i,j\""));
    let (i, j) = tok.split_once(',').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        j.trim().parse().map_err(|_| bad())?,
    ))
}

fn count_output(command: &str, key: &str, value: impl ToString) -> Output {
    let v = value.to_string();
    let mut out = Output::new(command);
    out.text = format!("{key} = {v}\n");
    out.table = format!("{key}\n{v}\n");
    out.result = json!({ key: v });
    out
}

fn cmd_good(cli: &Cli, g: &GoodCommand) -> Result<Output, Failure> {
    match g {
        GoodCommand::Check { dims, cells, full } => {
            let s = if *full {
                GridSubset::full(dims.m, dims.n)?
            } else {
                let cells = cells.iter().map(|c| parse_cell(c)).collect::<Result<Vec<_>, _>>()?;
                GridSubset::new(dims.m, dims.n, cells)?
            };
            let witness = good_sets::find_loop(&s);
            let mut out = Output::new("good check");
            let verdict = if witness.is_some() { "not good" } else { "good" };
            out.text = format!("set: {s}\nverdict: {verdict}\n");
            out.table = format!("verdict,loop\n{verdict},");
            if let Some(w) = &witness {
                let _ = writeln!(out.text, "{w}");
                let path: Vec<String> = w.cells.iter().map(|(i, j)| format!("({i};{j})")).collect();
                out.table.push_str(&path.join(" "));
            }
            out.table.push('\n');
            out.result = json!({
                "cells": s.cells(),
                "good": witness.is_none(),
                "loop": witness.map(|w| w.cells),
            });
            Ok(out)
        }
        GoodCommand::Enumerate(d) => {
            let sets = good_sets::enumerate_maximal_good(d.m, d.n, cli.limit)?;
            let mut out = Output::new("good enumerate");
            let _ = writeln!(out.text, "maximal good sets: {}", sets.len());
            out.table = String::from("index,cells\n");
            for (k, s) in sets.iter().enumerate() {
                let _ = writeln!(out.text, "  {k}: {s}");
                let cells: Vec<String> = s.cells().iter().map(|(i, j)| format!("({i};{j})")).collect();
                let _ = writeln!(out.table, "{k},{}", cells.join(" "));
            }
            out.result = json!({
                "count": sets.len(),
                "sets": sets.iter().map(|s| s.cells().to_vec()).collect::<Vec<_>>(),
            });
            Ok(out)
        }
        GoodCommand::Count(d) => Ok(count_output("good count", "count", good_sets::count_maximal_good(d.m, d.n))),
        GoodCommand::CountRow { dims, k } => Ok(count_output(
            "good count-row",
            "count",
            good_sets::count_fixed_row_points(dims.m, dims.n, *k)?,
        )),
        GoodCommand::CountCol { dims, k } => Ok(count_output(
            "good count-col",
            "count",
            good_sets::count_fixed_col_points(dims.m, dims.n, *k)?,
        )),
        GoodCommand::MatrixTree(d) => {
            if d.m == 0 || d.n == 0 {
                return Err(Error::EmptyGrid(d.m, d.n).into());
            }
            Ok(count_output(
                "good matrix-tree",
                "count",
                good_sets::count_spanning_trees_matrix_tree(d.m, d.n),
            ))
        }
    }
}

fn cmd_ggood_count(l: &Loaded) -> Result<Output, Failure> {
    let g = &l.grid;
    let count = g_good::count_maximal_ggood(g);
    let mut out = l.output("ggood count");
    let _ = writeln!(out.text, "maximal G-good sets = {count}");
    let formula = g.constant_alpha().map(|a| {
        num_traits::pow(BigUint::from(a), g.m1() + g.n1() - 1) * good_sets::count_maximal_good(g.m1(), g.n1())
    });
    if let (Some(a), Some(f)) = (g.constant_alpha(), &formula) {
        let _ = writeln!(out.text, "constant alpha = {a}, closed form = {f}");
    }
    out.table = format!("count,constant_alpha\n{count},{}\n", g.constant_alpha().map_or(String::new(), |a| a.to_string()));
    out.result = json!({
        "count": count.to_string(),
        "constant_alpha": g.constant_alpha(),
        "closed_form": formula.map(|f| f.to_string()),
    });
    Ok(out)
}

fn cmd_ggood_enumerate(l: &Loaded, limit: u64) -> Result<Output, Failure> {
    let g = &l.grid;
    g_good::check_cap(g, limit)?;
    let mut out = l.output("ggood enumerate");
    let mut rows = Vec::new();
    g_good::visit_maximal_ggood(g, |tree, s| {
        rows.push((tree.to_vec(), s));
        std::ops::ControlFlow::Continue(())
    })?;
    let _ = writeln!(out.text, "maximal G-good sets: {}", rows.len());
    out.table = String::from("index,orbits,image\n");
    let mut items = Vec::new();
    for (k, (tree, s)) in rows.iter().enumerate() {
        let _ = writeln!(out.text, "  {k}: orbits {} image {}", ids_text(s.orbits()), cells_text(tree));
        let ids: Vec<String> = s.orbits().iter().map(usize::to_string).collect();
        let img: Vec<String> = tree.iter().map(|(i, j)| format!("({i};{j})")).collect();
        let _ = writeln!(out.table, "{k},{},{}", ids.join(" "), img.join(" "));
        items.push(json!({"orbits": s.orbits(), "image": tree}));
    }
    out.result = json!({"count": rows.len(), "sets": items});
    Ok(out)
}

fn marginals_text(marg: &Marginals, defaulted: bool) -> String {
    format!(
        "marginals{}: mu1 = [{}], mu2 = [{}]\n",
        if defaulted { " (uniform default)" } else { "" },
        rats(marg.mu1()).join(" "),
        rats(marg.mu2()).join(" ")
    )
}

fn measure_json(g: &OrbitGrid, mu: &InvariantMeasure) -> Value {
    let table: Vec<Vec<String>> = mu.cell_table(g).iter().map(|r| rats(r)).collect();
    json!({
        "support": mu.support(),
        "orbit_values": rats(mu.orbit_values()),
        "cells": table,
    })
}

fn cmd_extreme_enumerate(l: &Loaded, limit: u64) -> Result<Output, Failure> {
    let g = &l.grid;
    let (marg, defaulted) = l.marginals()?;
    let ext = extreme_measures::enumerate_extreme(g, &marg, limit)?;
    let mut out = l.output("extreme enumerate");
    out.text = marginals_text(&marg, defaulted);
    let _ = writeln!(out.text, "extreme measures: {}", ext.len());
    out.table = String::from("measure,x,y,value\n");
    for (k, mu) in ext.iter().enumerate() {
        let _ = writeln!(out.text, "measure {k}: support orbits {}", ids_text(mu.support().orbits()));
        let table: Vec<Vec<String>> = mu.cell_table(g).iter().map(|r| rats(r)).collect();
        out.text.push_str(&matrix_text(&table));
        for x in 0..g.x_size() {
            for y in 0..g.y_size() {
                let v = mu.cell_value(g, x, y);
                if *v != BigRational::default() {
                    let _ = writeln!(out.table, "{k},{x},{y},{}", rat(v));
                }
            }
        }
    }
    out.result = json!({
        "marginals": {"mu1": rats(marg.mu1()), "mu2": rats(marg.mu2()), "uniform_default": defaulted},
        "count": ext.len(),
        "measures": ext.iter().map(|mu| measure_json(g, mu)).collect::<Vec<_>>(),
    });
    Ok(out)
}

fn cmd_verify_bound(l: &Loaded, limit: u64) -> Result<Output, Failure> {
    let g = &l.grid;
    let (marg, defaulted) = l.marginals()?;
    let rep = extreme_measures::verify_bound(g, &marg, limit)?;
    let mut out = l.output("extreme verify-bound");
    let r = g.m1() + g.n1() - 1;
    out.text = marginals_text(&marg, defaulted);
    let _ = writeln!(out.text, "extreme points = {}", rep.count);
    let _ = writeln!(out.text, "bound = C({}, {r}) = {}", g.m12(), rep.bound);
    let _ = writeln!(out.text, "holds = {}", rep.holds);
    let _ = writeln!(out.text, "sharp = {}", rep.sharp);
    out.table = format!("count,bound,holds,sharp\n{},{},{},{}\n", rep.count, rep.bound, rep.holds, rep.sharp);
    out.result = json!({
        "count": rep.count,
        "bound": rep.bound.to_string(),
        "binomial": [g.m12(), r],
        "holds": rep.holds,
        "sharp": rep.sharp,
    });
    Ok(out)
}

fn cmd_ratio(cli: &Cli, r: &RatioCommand) -> Result<Output, Failure> {
    match r {
        RatioCommand::Table { diag, m, n } => {
            let records: Vec<RatioRecord> = match (diag, m, n) {
                (Some(d), _, _) => counting_asymptotics::ratio_diagonal(d.clone(), cli.precision),
                (None, Some(m), Some(n)) => counting_asymptotics::ratio_table(m.clone(), n.clone(), cli.precision),
                _ => return Err(Failure::Parse("ratio table needs --diag or both --m and --n".into())),
            };
            let mut out = Output::new("ratio table");
            let header = ["m", "n", "tree_count", "binom", "ratio_exact", "ratio_decimal"];
            let mut rows: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
            for rec in &records {
                rows.push(vec![
                    rec.m.to_string(),
                    rec.n.to_string(),
                    rec.tree_count.to_string(),
                    rec.binom.to_string(),
                    rat(&rec.ratio),
                    rec.ratio_decimal.clone(),
                ]);
            }
            out.table = rows.iter().map(|r| r.join(",") + "\n").collect();
            let widths: Vec<usize> = (0..header.len())
                .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
                .collect();
            for row in &rows {
                let cols: Vec<String> = row.iter().zip(&widths).map(|(v, &w)| format!("{v:>w$}")).collect();
                let _ = writeln!(out.text, "{}", cols.join("  ").trim_end());
            }
            out.result = json!({ "precision": cli.precision, "rows": records });
            Ok(out)
        }
        RatioCommand::ConstAlpha { m1, n1, a } => {
            if *m1 == 0 || *n1 == 0 || *a == 0 {
                return Err(Error::EmptyGrid(*m1, *n1).into());
            }
            let v = counting_asymptotics::ratio_constant_alpha(*m1, *n1, *a);
            let plain = counting_asymptotics::ratio_exact(*m1, *n1).ratio;
            let dec = counting_asymptotics::render_decimal(&v, cli.precision);
            let mut out = Output::new("ratio const-alpha");
            out.text = format!(
                "ratio = {}\nratio_decimal = {dec}\nalpha-free ratio = {}\nbelow alpha-free = {}\n",
                rat(&v),
                rat(&plain),
                v <= plain
            );
            out.table = format!("m1,n1,a,ratio_exact,ratio_decimal\n{m1},{n1},{a},{},{dec}\n", rat(&v));
            out.result = json!({
                "ratio": rat(&v),
                "ratio_decimal": dec,
                "alpha_free_ratio": rat(&plain),
                "below_alpha_free": v <= plain,
            });
            Ok(out)
        }
    }
}

fn cmd_gen(g: &GenCommand) -> Result<Output, Failure> {
    let spec = match g {
        GenCommand::Trivial { m, n } => ActionSpec::trivial(*m, *n),
        GenCommand::Swap => ActionSpec::swap_2x2(),
        GenCommand::Symmetric { n } => ActionSpec::symmetric(*n),
        GenCommand::CyclicBlocks { m1, n1, a } => ActionSpec::cyclic_blocks(*m1, *n1, *a),
    };
    spec.ensure_valid()?;
    let inst = Instance::with_uniform_marginals(spec);
    let text = inst.to_toml();
    let mut out = Output::new("gen");
    out.text = text.clone();
    out.table = text.clone();
    out.result = json!({ "instance": text });
    Ok(out)
}
