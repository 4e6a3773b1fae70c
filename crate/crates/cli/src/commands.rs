//! Command dispatch for the `congrlat` binary.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use congrlat::intlinalg::{gcd_vec, solve_linear_diophantine};
use congrlat::oracle::{brute_force, brute_force_system};
use congrlat::{
    crt_compatible, AffineLattice, CongruenceSystem, Error, LinearCongruence, ParametricSolution, SolutionCount,
    SolutionSet,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::parse::{parse_system, render_row, ParsedInput};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSOLVABLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;

pub const DEFAULT_CAP: u64 = 100_000;

#[derive(Debug, Parser)]
#[command(name = "congrlat", version, about = "Solve, count and enumerate linear congruences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Largest solution set that enumeration may produce.
    #[arg(long, global = true, env = "CONGRLAT_CAP", default_value_t = DEFAULT_CAP)]
    pub cap: u64,

    /// Emit JSON instead of text (count, enumerate).
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide solvability.
    Check(InputArgs),
    /// Count distinct solutions.
    Count(InputArgs),
    /// Print the parametric general solution.
    Solve(InputArgs),
    /// List every distinct solution.
    Enumerate(InputArgs),
    /// Compare the solver against exhaustive search.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Congruence text, one per line. Read from --file or stdin when absent.
    pub expr: Option<String>,

    #[arg(short, long, conflicts_with = "expr")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Check this many random congruences and as many random systems.
    #[arg(long, conflicts_with_all = ["expr", "file"])]
    pub random: Option<u64>,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Also compare against a listed solution set, one solution per line
    /// as printed by `enumerate`.
    #[arg(long)]
    pub expect: Option<PathBuf>,
}

/// Streams used by [`run`].
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

enum Failure {
    Usage(String),
    Capacity(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => Failure::Capacity(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Runs one command and returns the process exit code.
pub fn run(cli: &Cli, io: &mut Io<'_>) -> i32 {
    let outcome = match &cli.command {
        Command::Check(args) => read_input(args, io).and_then(|p| check(&p, io)),
        Command::Count(args) => read_input(args, io).and_then(|p| count(&p, cli.json, io)),
        Command::Solve(args) => read_input(args, io).and_then(|p| solve(&p, io)),
        Command::Enumerate(args) => read_input(args, io).and_then(|p| enumerate(&p, cli.cap, cli.json, io)),
        Command::Verify(args) => verify(args, cli.cap, io),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(io.stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Capacity(msg)) => {
            let _ = writeln!(io.stderr, "error: {msg}");
            EXIT_CAPACITY
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(io.stderr, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read_input(args: &InputArgs, io: &mut Io<'_>) -> Result<ParsedInput, Failure> {
    let text = match (&args.expr, &args.file) {
        (Some(expr), _) => expr.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?,
        (None, None) => {
            let mut buf = String::new();
            io.stdin.read_to_string(&mut buf)?;
            buf
        }
    };
    parse_system(&text).map_err(|e| Failure::Usage(format!("parse error\n{e}")))
}

fn single_row(input: &ParsedInput) -> Option<&LinearCongruence> {
    match input.rows.as_slice() {
        [row] => Some(row),
        _ => None,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(input: &ParsedInput, io: &mut Io<'_>) -> Outcome {
    if let Some(row) = single_row(input) {
        let mut values = row.coeffs().to_vec();
        values.push(row.modulus().clone());
        writeln!(io.stdout, "solvable: {}", yes_no(row.is_solvable()))?;
        writeln!(io.stdout, "gcd: {}", gcd_vec(&values)?.gcd)?;
        return Ok(EXIT_OK);
    }
    let sys = input.system()?;
    writeln!(io.stdout, "solvable: {}", yes_no(sys.is_solvable()))?;
    writeln!(io.stdout, "integer system: {}", yes_no(sys.is_solvable()))?;
    if sys.arity() == 1 {
        let pass = sys.univariate_pair_compatible()?;
        writeln!(io.stdout, "pairwise univariate test: {}", if pass { "pass" } else { "fail" })?;
        if sys.rows().iter().all(|r| r.coeffs()[0].is_one()) {
            let residues: Vec<BigInt> = sys.rows().iter().map(|r| r.rhs().clone()).collect();
            let moduli: Vec<BigInt> = sys.rows().iter().map(|r| r.modulus().clone()).collect();
            let pass = crt_compatible(&residues, &moduli)?;
            writeln!(io.stdout, "pairwise crt test: {}", if pass { "pass" } else { "fail" })?;
        }
    }
    Ok(EXIT_OK)
}

/// JSON shape shared by `count` and `enumerate`.
#[derive(Serialize)]
struct JsonReport {
    modulus: serde_json::Number,
    variables: Vec<String>,
    count: serde_json::Value,
    solutions: Option<Vec<Vec<serde_json::Number>>>,
}

fn json_number(n: &BigInt) -> serde_json::Number {
    n.to_string().parse().expect("integers are valid JSON numbers")
}

fn write_json(io: &mut Io<'_>, report: &JsonReport) -> std::io::Result<()> {
    let text = serde_json::to_string(report).expect("serializable");
    writeln!(io.stdout, "{text}")
}

fn count(input: &ParsedInput, json: bool, io: &mut Io<'_>) -> Outcome {
    let (modulus, count) = match single_row(input) {
        Some(row) => (row.modulus().abs(), row.count_solutions()),
        None => {
            let sys = input.system()?;
            let n = sys.count_solutions();
            let count = if n.is_zero() { SolutionCount::None } else { SolutionCount::Finite(n) };
            (sys.lcm_modulus(), count)
        }
    };
    if json {
        let value = match &count {
            SolutionCount::None => serde_json::Value::Number(0.into()),
            SolutionCount::Finite(n) => serde_json::Value::Number(json_number(n)),
            SolutionCount::Infinite => serde_json::Value::String("infinite".into()),
        };
        write_json(
            io,
            &JsonReport {
                modulus: json_number(&modulus),
                variables: input.variables.clone(),
                count: value,
                solutions: None,
            },
        )?;
    } else {
        writeln!(io.stdout, "{count}")?;
    }
    Ok(EXIT_OK)
}

fn linear_form(out: &mut String, terms: impl Iterator<Item = (BigInt, String)>, constant: &BigInt) {
    let mut first = true;
    for (a, name) in terms {
        if a.is_zero() {
            continue;
        }
        if !first {
            out.push_str(if a.is_negative() { " - " } else { " + " });
        } else if a.is_negative() {
            out.push('-');
        }
        let magnitude = a.abs();
        if !magnitude.is_one() {
            let _ = write!(out, "{magnitude}*");
        }
        out.push_str(&name);
        first = false;
    }
    if first {
        let _ = write!(out, "{constant}");
    } else if !constant.is_zero() {
        let _ = write!(out, " {} {}", if constant.is_negative() { "-" } else { "+" }, constant.abs());
    }
}

fn render_parametric(variables: &[String], form: &ParametricSolution) -> String {
    let mut out = String::new();
    for (i, name) in variables.iter().enumerate() {
        let _ = write!(out, "{name} = ");
        let terms = form
            .basis
            .iter()
            .enumerate()
            .map(|(j, col)| (col[i].clone(), format!("k{}", j + 1)));
        linear_form(&mut out, terms, &form.offset[i]);
        let _ = writeln!(out, " (mod {})", form.modulus);
    }
    // A parameter with range 1 multiplies a column that is 0 mod the modulus.
    for (j, range) in form.param_ranges.iter().enumerate() {
        if !range.is_one() {
            let _ = writeln!(out, "k{} in 0..{}", j + 1, range - BigInt::one());
        }
    }
    out
}

fn render_lattice(variables: &[String], lattice: &AffineLattice) -> String {
    let mut out = String::new();
    for (i, name) in variables.iter().enumerate() {
        let _ = write!(out, "{name} = ");
        let terms = lattice
            .basis
            .iter()
            .enumerate()
            .map(|(j, v)| (v[i].clone(), format!("k{}", j + 1)));
        linear_form(&mut out, terms, &lattice.particular[i]);
        out.push('\n');
    }
    match lattice.basis.len() {
        0 => {}
        1 => out.push_str("k1 any integer\n"),
        k => {
            let _ = writeln!(out, "k1..k{k} any integers");
        }
    }
    out
}

fn solve(input: &ParsedInput, io: &mut Io<'_>) -> Outcome {
    let rendered = match single_row(input) {
        Some(row) if row.modulus().is_zero() => {
            solve_linear_diophantine(row.coeffs(), row.rhs())?.map(|l| render_lattice(&input.variables, &l))
        }
        Some(row) => row
            .general_solution()?
            .map(|form| render_parametric(&input.variables, &form)),
        None => input
            .system()?
            .general_solution()
            .map(|form| render_parametric(&input.variables, &form)),
    };
    match rendered {
        Some(text) => {
            io.stdout.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
        None => {
            writeln!(io.stdout, "no solutions")?;
            Ok(EXIT_UNSOLVABLE)
        }
    }
}

/// Solutions of a single equation over ℤ (modulus 0), when finitely many.
/// Vectors are left unreduced.
fn integer_solutions(variables: &[String], row: &LinearCongruence) -> Result<SolutionSet, Failure> {
    match row.count_solutions() {
        SolutionCount::None => Ok(SolutionSet::empty(BigInt::zero(), row.arity())),
        SolutionCount::Infinite => Err(Failure::Capacity(format!(
            "{} has infinitely many integer solutions",
            render_row(variables, row, false)
        ))),
        SolutionCount::Finite(_) => {
            let x = row.rhs() / &row.coeffs()[0];
            Ok(SolutionSet::from_vectors(BigInt::zero(), 1, [vec![x]]))
        }
    }
}

fn solution_set(input: &ParsedInput, cap: u64) -> Result<SolutionSet, Failure> {
    match single_row(input) {
        Some(row) if row.modulus().is_zero() => integer_solutions(&input.variables, row),
        Some(row) => Ok(row.enumerate_solutions(cap)?),
        None => {
            let sys = input.system()?;
            let l = sys.lcm_modulus();
            Ok(sys
                .solve(cap)?
                .map_or_else(|| SolutionSet::empty(l, sys.arity()), |s| s.set))
        }
    }
}

fn write_set_text(out: &mut dyn Write, set: &SolutionSet) -> std::io::Result<()> {
    for v in set {
        let line: Vec<String> = v.iter().map(BigInt::to_string).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

fn enumerate(input: &ParsedInput, cap: u64, json: bool, io: &mut Io<'_>) -> Outcome {
    let set = solution_set(input, cap)?;
    if json {
        write_json(
            io,
            &JsonReport {
                modulus: json_number(set.modulus()),
                variables: input.variables.clone(),
                count: serde_json::Value::Number(set.len().into()),
                solutions: Some(set.iter().map(|v| v.iter().map(json_number).collect()).collect()),
            },
        )?;
    } else {
        write_set_text(io.stdout, &set)?;
    }
    if set.is_empty() {
        writeln!(io.stderr, "no solutions")?;
        Ok(EXIT_UNSOLVABLE)
    } else {
        Ok(EXIT_OK)
    }
}

fn parse_expected(text: &str, modulus: &BigInt, arity: usize) -> Result<SolutionSet, Failure> {
    let mut vectors = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let v: Vec<BigInt> = line
            .split_whitespace()
            .map(|tok| tok.parse::<BigInt>())
            .collect::<Result<_, _>>()
            .map_err(|e| Failure::Usage(format!("expected-solutions line {}: {e}", i + 1)))?;
        if v.len() != arity {
            return Err(Failure::Usage(format!(
                "expected-solutions line {}: {} values for {arity} variables",
                i + 1,
                v.len()
            )));
        }
        vectors.push(v);
    }
    Ok(SolutionSet::from_vectors(modulus.clone(), arity, vectors))
}

fn describe_difference(label: &str, left: &SolutionSet, right: &SolutionSet) -> String {
    let mut out = String::new();
    for v in left.iter().filter(|v| !right.contains(v)) {
        let _ = writeln!(out, "  only in {label}: {v:?}");
    }
    out
}

fn verify_input(input: &ParsedInput, cap: u64, expect: Option<&PathBuf>, io: &mut Io<'_>) -> Outcome {
    let solver = solution_set(input, cap)?;
    let oracle = match single_row(input) {
        Some(row) => brute_force(row)?.set,
        None => brute_force_system(&input.system()?)?.set,
    };
    let mut mismatches = 0;
    if solver != oracle {
        mismatches += 1;
        writeln!(io.stderr, "solver and exhaustive search disagree")?;
        write!(io.stderr, "{}", describe_difference("solver", &solver, &oracle))?;
        write!(io.stderr, "{}", describe_difference("search", &oracle, &solver))?;
    }
    if let Some(path) = expect {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let expected = parse_expected(&text, oracle.modulus(), oracle.arity())?;
        if expected != oracle {
            mismatches += 1;
            writeln!(io.stderr, "listed solutions differ from exhaustive search")?;
            write!(io.stderr, "{}", describe_difference("list", &expected, &oracle))?;
            write!(io.stderr, "{}", describe_difference("search", &oracle, &expected))?;
        }
    }
    writeln!(io.stdout, "{} solutions, {} mismatches", oracle.len(), mismatches)?;
    Ok(if mismatches == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

/// `n ≤ 3`, `1 ≤ m ≤ 12`, coefficients and right-hand side in `[-20, 20]`.
pub fn random_congruence(rng: &mut impl Rng) -> LinearCongruence {
    let n = rng.gen_range(1..=3);
    let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..=20)).collect();
    LinearCongruence::from_i64(&coeffs, rng.gen_range(-20..=20), rng.gen_range(1..=12)).expect("n ≥ 1")
}

/// `r ≤ 2`, `n ≤ 3`, moduli in `[2, 6]`, coefficients in `[-10, 10]`.
pub fn random_system(rng: &mut impl Rng) -> CongruenceSystem {
    let n = rng.gen_range(1..=3);
    let r = rng.gen_range(1..=2);
    let rows = (0..r)
        .map(|_| {
            let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-10..=10)).collect();
            LinearCongruence::from_i64(&coeffs, rng.gen_range(-10..=10), rng.gen_range(2..=6)).expect("n ≥ 1")
        })
        .collect();
    CongruenceSystem::from_rows(rows).expect("well-formed")
}

fn verify_random(count: u64, seed: u64, io: &mut Io<'_>) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mismatches = 0u64;
    for _ in 0..count {
        let c = random_congruence(&mut rng);
        let oracle = brute_force(&c)?.set;
        let solver = c.enumerate_solutions(u64::MAX)?;
        let count_ok = match c.count_solutions() {
            SolutionCount::Finite(n) => n == BigInt::from(oracle.len()),
            SolutionCount::None => oracle.is_empty(),
            SolutionCount::Infinite => false,
        };
        if solver != oracle || c.is_solvable() == oracle.is_empty() || !count_ok {
            mismatches += 1;
            writeln!(io.stderr, "mismatch: {c}")?;
        }
        let sys = random_system(&mut rng);
        let oracle = brute_force_system(&sys)?.set;
        let solver = sys
            .solve(u64::MAX)?
            .map_or_else(|| SolutionSet::empty(sys.lcm_modulus(), sys.arity()), |s| s.set);
        if solver != oracle {
            mismatches += 1;
            let rows: Vec<String> = sys.rows().iter().map(ToString::to_string).collect();
            writeln!(io.stderr, "mismatch: {}", rows.join("; "))?;
        }
    }
    writeln!(
        io.stdout,
        "checked {count} congruences and {count} systems (seed {seed}): {mismatches} mismatches"
    )?;
    Ok(if mismatches == 0 { EXIT_OK } else { EXIT_MISMATCH })
}

fn verify(args: &VerifyArgs, cap: u64, io: &mut Io<'_>) -> Outcome {
    match args.random {
        Some(n) => verify_random(n, args.seed, io),
        None => {
            let input = read_input(&args.input, io)?;
            verify_input(&input, cap, args.expect.as_ref(), io)
        }
    }
}
