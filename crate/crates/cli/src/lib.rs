//! Command-line front end for `dynsum-core`.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 on success, 1 when the answer is negative (no solution,
//! relation does not hold, checks disagree) and 2 on usage or input errors.

pub mod expr;
mod json;
pub mod selftest;

use std::ffi::OsString;
use std::io::Write;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use dynsum_core::boolean_lattice::DivisorLattice;
use dynsum_core::chain_cycle::{divide_full, divide_full_restricted, ChainSolutions, Parity, SearchSpace};
use dynsum_core::cycle_ring::{checked_lcm, restricted_space};
use dynsum_core::division::{annihilators, enumerate_restricted, solve, IntervalSolutionSet};
use dynsum_core::oracle::{exhaustive_divide, ComponentMultiset};
use dynsum_core::structure::{classify, green, ideal_intersect, probe_ideal_meet, IdealMeetResult, Relation};
use dynsum_core::{CycleSum, Element};

const MAX: u64 = expr::MAX_LITERAL;

#[derive(Debug, Parser)]
#[command(name = "dynsum", version, about = "Arithmetic of chains and cycles with coefficients in F2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression such as "C3 + C5*C2 + L4".
    Eval {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Solve a·x = b.
    Divide {
        a: String,
        b: String,
        /// List the solutions with cycle odd parts dividing K.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=MAX))]
        k: Option<u64>,
        /// Highest cycle level in the listing; defaults to the least sound one.
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=64))]
        n: Option<u32>,
        /// Longest chain in the listing; defaults to the tallest chain of a and b.
        #[arg(long, value_parser = clap::value_parser!(u64).range(0..=MAX))]
        max_chain: Option<u64>,
        /// Print at most this many listed solutions.
        #[arg(long, default_value_t = 32)]
        enumerate: usize,
        #[arg(long)]
        json: bool,
    },
    /// Describe the annihilator of a sum of cycles.
    Annihilators { a: String },
    /// Atoms T_j of the divisor algebra of an odd K, and each C_i in terms of them.
    Atoms {
        #[arg(value_parser = clap::value_parser!(u64).range(1..=MAX))]
        k: u64,
        #[arg(long)]
        json: bool,
    },
    /// Classify a sum of cycles: unit, idempotent, regular, co-regular.
    Classify {
        x: String,
        #[arg(long)]
        json: bool,
    },
    /// Test one of the relations R, R*, R~ between two sums of cycles.
    Green {
        x: String,
        y: String,
        #[arg(long, value_enum, ignore_case = true)]
        rel: Rel,
    },
    /// Generator of the intersection of two principal ideals, when known.
    IdealMeet {
        x: String,
        y: String,
        /// Also search the window of divisors of K·2^N.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=MAX))]
        k: Option<u64>,
        /// Defaults to the highest level of x and y.
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=8))]
        n: Option<u32>,
    },
    /// Solve P(x) = S for a polynomial P in x.
    PolySolve {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        target: String,
    },
    /// Ground-truth computations on explicit digraphs.
    Oracle {
        #[command(subcommand)]
        command: OracleCommand,
    },
    /// Run seeded property checks.
    Selftest {
        #[arg(long, default_value_t = selftest::DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Multiply two elements as explicit digraphs.
    Product { a: String, b: String },
    /// Compare the solver with brute force on a finite window.
    CheckDivide {
        a: String,
        b: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=MAX))]
        k: u64,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        max_chain: u64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Rel {
    #[value(name = "R")]
    R,
    #[value(name = "Rstar")]
    RStar,
    #[value(name = "Rtilde")]
    RTilde,
}

/// Whether the command's answer was positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Yes,
    No,
}

impl From<bool> for Outcome {
    fn from(b: bool) -> Self {
        if b {
            Outcome::Yes
        } else {
            Outcome::No
        }
    }
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(Outcome::Yes) => 0,
        Ok(Outcome::No) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn element(src: &str) -> Result<Element> {
    expr::element(src).with_context(|| format!("invalid expression {src:?}"))
}

fn cycles(src: &str) -> Result<CycleSum> {
    expr::cycle_sum(src).with_context(|| format!("invalid expression {src:?}"))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<Outcome> {
    match command {
        Command::Eval { expr, json } => {
            let x = element(&expr)?;
            if json {
                writeln!(out, "{}", json::element(&x))?;
            } else {
                writeln!(out, "{x}")?;
            }
            Ok(Outcome::Yes)
        }
        Command::Divide { a, b, k, n, max_chain, enumerate, json } => {
            let (a, b) = (element(&a)?, element(&b)?);
            let limit = Limit { k, n, max_chain, show: enumerate, json };
            if a.chains.is_zero() && b.chains.is_zero() {
                divide_cycles(&a.cycles, &b.cycles, &limit, out)
            } else {
                divide_elements(&a, &b, &limit, out)
            }
        }
        Command::Annihilators { a } => {
            let ann = annihilators(&cycles(&a)?);
            writeln!(out, "z*a = 0 iff z_0 <= {} and z+ <= {}", ann.odd_hi, ann.closure_hi)?;
            Ok(Outcome::Yes)
        }
        Command::Atoms { k, json } => atoms(k, json, out),
        Command::Classify { x, json } => {
            let x = cycles(&x)?;
            let cl = classify(&x);
            if json {
                let v = serde_json::json!({
                    "unit": cl.is_unit,
                    "idempotent": cl.is_idempotent,
                    "regular": cl.is_regular,
                    "coregular": cl.is_coregular,
                    "x_plus": json::odd(&cl.x_plus),
                    "h": json::cycles(&cl.h_of_x),
                });
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "unit: {}", cl.is_unit)?;
                writeln!(out, "idempotent: {}", cl.is_idempotent)?;
                writeln!(out, "regular: {}", cl.is_regular)?;
                writeln!(out, "coregular: {}", cl.is_coregular)?;
                writeln!(out, "x+: {}", cl.x_plus)?;
                writeln!(out, "H(x): {}", cl.h_of_x)?;
            }
            Ok(Outcome::Yes)
        }
        Command::Green { x, y, rel } => {
            let relation = match rel {
                Rel::R => Relation::R,
                Rel::RStar => Relation::RStar,
                Rel::RTilde => Relation::RTilde,
            };
            let holds = green(&cycles(&x)?, &cycles(&y)?, relation);
            writeln!(out, "{holds}")?;
            Ok(holds.into())
        }
        Command::IdealMeet { x, y, k, n } => {
            let (x, y) = (cycles(&x)?, cycles(&y)?);
            match ideal_intersect(&x, &y)? {
                IdealMeetResult::Principal(g) => writeln!(out, "principal: {g}")?,
                IdealMeetResult::Unknown => writeln!(out, "undecided")?,
            }
            let Some(k) = k else { return Ok(Outcome::Yes) };
            let n = n.unwrap_or(x.max_level().max(y.max_level()));
            match probe_ideal_meet(&x, &y, k, n)? {
                Some(g) => {
                    writeln!(out, "window k={k}, n={n}: generated by {g}")?;
                    Ok(Outcome::Yes)
                }
                None => {
                    writeln!(out, "window k={k}, n={n}: no single generator")?;
                    Ok(Outcome::No)
                }
            }
        }
        Command::PolySolve { poly, target } => poly_solve(&poly, &target, out),
        Command::Oracle { command } => oracle(command, out),
        Command::Selftest { seed } => Ok(selftest::run(seed, out)?.into()),
    }
}

struct Limit {
    k: Option<u64>,
    n: Option<u32>,
    max_chain: Option<u64>,
    show: usize,
    json: bool,
}

fn list(out: &mut dyn Write, header: String, xs: &[Element], show: usize) -> Result<()> {
    writeln!(out, "{header}: {}", xs.len())?;
    for x in xs.iter().take(show) {
        writeln!(out, "  {x}")?;
    }
    if xs.len() > show {
        writeln!(out, "  ... {} more", xs.len() - show)?;
    }
    Ok(())
}

fn print_cycle_bounds(sol: &IntervalSolutionSet, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "x_0 in [{}, {}]", sol.lambda0, sol.upsilon0)?;
    for (lb, i) in sol.head.iter().zip(1..) {
        writeln!(out, "x_{i} in [{}, {}]", lb.lo, lb.hi)?;
    }
    writeln!(out, "x_i <= {} for i > {}", sol.tail_hi, sol.n)?;
    Ok(())
}

fn divide_cycles(a: &CycleSum, b: &CycleSum, limit: &Limit, out: &mut dyn Write) -> Result<Outcome> {
    let sol = solve(a, b)?;
    let listed = match limit.k {
        Some(k) => {
            let n = limit.n.unwrap_or(sol.n);
            let xs: Vec<Element> = enumerate_restricted(&sol, k, n)?.map(Element::from).collect();
            Some((k, n, xs))
        }
        None => None,
    };
    if limit.json {
        let mut v = json::cycle_division(&sol);
        if let Some((_, _, xs)) = &listed {
            v["solutions"] = xs.iter().take(limit.show).map(json::element).collect();
        }
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "solvable: {}", sol.solvable)?;
        if a.is_zero() && b.is_zero() {
            writeln!(out, "every element is a solution")?;
        }
        if sol.solvable {
            print_cycle_bounds(&sol, out)?;
            writeln!(out, "min solution: {}", sol.min_solution()?)?;
        }
        if let Some((k, n, xs)) = &listed {
            list(out, format!("solutions with odd parts | {k}, levels <= {n}"), xs, limit.show)?;
        }
    }
    Ok(sol.solvable.into())
}

fn describe_chains(c: &ChainSolutions) -> String {
    if c.is_empty() {
        return "none".into();
    }
    let tail = if c.free_tail { "anything above" } else { "nothing above" };
    format!("Z-coordinates up to {} in [{}, {}], {tail}", c.h, c.lo(), c.hi())
}

fn divide_elements(a: &Element, b: &Element, limit: &Limit, out: &mut dyn Write) -> Result<Outcome> {
    let set = divide_full(a, b)?;
    let listed = match limit.k {
        Some(k) => {
            let space = SearchSpace {
                k,
                max_level: limit.n.unwrap_or(set.cycles.n),
                max_chain: limit.max_chain.unwrap_or(a.chains.height().max(b.chains.height())),
            };
            Some((space, divide_full_restricted(a, b, &space)?))
        }
        None => None,
    };
    if limit.json {
        let mut v = json::combined_division(&set);
        if let Some((_, xs)) = &listed {
            v["solutions"] = xs.iter().take(limit.show).map(json::element).collect();
        }
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "solvable: {}", set.is_solvable())?;
        if set.is_whole_space() {
            writeln!(out, "every element is a solution")?;
        }
        for br in &set.branches {
            let t = u8::from(br.t);
            if br.is_empty() {
                writeln!(out, "t={t}: no solutions")?;
                continue;
            }
            writeln!(out, "t={t}: cycle part solves the cycle equation with |x_0| = {t} mod 2")?;
            for c in &br.chains {
                let class = if c.parity == Parity::Even { "even" } else { "odd" };
                writeln!(out, "  {class} chains: {}", describe_chains(c))?;
            }
        }
        if set.is_solvable() {
            writeln!(out, "cycle bounds:")?;
            print_cycle_bounds(&set.cycles, out)?;
            writeln!(out, "witness: {}", set.witness()?)?;
        }
        if let Some((s, xs)) = &listed {
            let header =
                format!("solutions with odd parts | {}, levels <= {}, chains <= L{}", s.k, s.max_level, s.max_chain);
            list(out, header, xs, limit.show)?;
        }
    }
    Ok(set.is_solvable().into())
}

fn atoms(k: u64, as_json: bool, out: &mut dyn Write) -> Result<Outcome> {
    let lattice = DivisorLattice::new(k)?;
    let mut rows = Vec::new();
    for (j, t) in lattice.t_atoms() {
        let expansion = lattice.expand_in_t(j)?;
        rows.push((j, t, expansion));
    }
    if as_json {
        let v: Vec<serde_json::Value> =
            rows.iter().map(|(j, t, exp)| serde_json::json!({ "j": j, "t": json::odd(t), "c_in_t": exp })).collect();
        writeln!(out, "{}", serde_json::Value::from(v))?;
    } else {
        for (j, t, exp) in rows {
            let c: Vec<String> = exp.iter().map(|i| format!("T{i}")).collect();
            writeln!(out, "T{j} = {t}    C{j} = {}", c.join(" + "))?;
        }
    }
    Ok(Outcome::Yes)
}

fn poly_solve(poly: &str, target: &str, out: &mut dyn Write) -> Result<Outcome> {
    let p = expr::parse_poly(poly)
        .map_err(expr::EvalError::from)
        .and_then(|e| e.eval_poly())
        .with_context(|| format!("invalid polynomial {poly:?}"))?;
    let s = cycles(target)?;
    writeln!(out, "P(x) = {p}")?;
    if p.is_bijective() {
        let x = p.solve_bijective(&s)?;
        if p.eval(&x) != s {
            bail!("internal error: P({x}) != {s}");
        }
        writeln!(out, "bijective: true")?;
        writeln!(out, "x = {x}")?;
        return Ok(Outcome::Yes);
    }
    writeln!(out, "bijective: false")?;
    let (x, y) = p.witness_degenerate()?;
    writeln!(out, "collision: P({x}) = P({y}) = {}", p.eval(&x))?;
    let miss = p.unreached_target()?;
    writeln!(out, "unreached: {} ({:?} fails)", miss.target, miss.failed)?;

    // Restricting to divisors of k·2^n fixes P and s, so the window decides.
    let mut k = 1u64;
    let mut n = 0u32;
    for e in [&p.a, &p.b, &p.c, &p.d, &s] {
        let (ke, ne) = e.stats()?;
        k = checked_lcm(k, ke)?;
        n = n.max(ne);
    }
    let solutions: Vec<Element> =
        restricted_space(k, n)?.into_iter().filter(|x| p.eval(x) == s).map(Element::from).collect();
    list(out, format!("solutions with odd parts | {k}, levels <= {n}"), &solutions, 32)?;
    Ok((!solutions.is_empty()).into())
}

fn oracle(command: OracleCommand, out: &mut dyn Write) -> Result<Outcome> {
    match command {
        OracleCommand::Product { a, b } => {
            let (x, y) = (element(&a)?, element(&b)?);
            let (gx, gy) =
                (ComponentMultiset::from_element(&x)?.to_digraph(), ComponentMultiset::from_element(&y)?.to_digraph());
            let prod = gx.product(&gy);
            let counts = prod.decompose()?;
            let reduced = dynsum_core::oracle::mod2(&counts)?;
            let ring = x.try_mul(&y)?;
            writeln!(out, "vertices: {}", prod.len())?;
            writeln!(out, "components: {counts}")?;
            writeln!(out, "mod 2: {reduced}")?;
            writeln!(out, "ring product: {ring}")?;
            writeln!(out, "agree: {}", reduced == ring)?;
            Ok((reduced == ring).into())
        }
        OracleCommand::CheckDivide { a, b, k, n, max_chain } => {
            let (a, b) = (element(&a)?, element(&b)?);
            let space = SearchSpace { k, max_level: n, max_chain };
            let brute: Vec<Element> = exhaustive_divide(&a, &b, &space)?.into_iter().collect();
            let mut solver = divide_full_restricted(&a, &b, &space)?;
            solver.sort();
            list(out, "brute force".into(), &brute, 32)?;
            writeln!(out, "solver: {}", solver.len())?;
            let agree = brute == solver;
            writeln!(out, "agree: {agree}")?;
            Ok(agree.into())
        }
    }
}
