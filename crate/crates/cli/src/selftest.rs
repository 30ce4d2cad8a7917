//! Seeded property checks runnable from the command line.

use std::io::Write;

use dynsum_core::chain_cycle::{divide_full, divide_full_restricted, SearchSpace};
use dynsum_core::division::solve;
use dynsum_core::formal_sum::{check_axioms, ChainCycleRule, Generator};
use dynsum_core::oracle::{exhaustive_divide, ProductOracle};
use dynsum_core::poly::CubicPoly;
use dynsum_core::sample::{sparse_element, uniform_element, uniform_restricted};
use dynsum_core::structure::{classify, green, h_map, Relation};
use dynsum_core::{CycleSum, Element};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20240607;

type Check = fn(&mut ChaCha8Rng) -> anyhow::Result<Result<usize, String>>;

const CHECKS: &[(&str, Check)] = &[
    ("semiring axioms on C1..C4, L1..L4", axioms),
    ("ring laws", ring_laws),
    ("products agree with explicit digraphs", oracle_products),
    ("cycle division membership", cycle_division),
    ("combined division against brute force", combined_division),
    ("bijective cubics invert", cubics),
    ("H(x) is co-regular and R-related to x", h_map_check),
];

/// Runs every check, printing one line each. Returns whether all passed.
pub fn run(seed: u64, out: &mut dyn Write) -> anyhow::Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut all = true;
    writeln!(out, "seed {seed}")?;
    for (name, check) in CHECKS {
        match check(&mut rng)? {
            Ok(cases) => writeln!(out, "PASS {name} ({cases} cases)")?,
            Err(detail) => {
                all = false;
                writeln!(out, "FAIL {name}: {detail}")?;
            }
        }
    }
    Ok(all)
}

fn element(rng: &mut ChaCha8Rng) -> anyhow::Result<Element> {
    Ok(sparse_element(rng, &[1, 2, 3, 4, 5, 6, 10, 12, 15], 3, &[1, 2, 3, 4, 5], 2)?)
}

fn axioms(_: &mut ChaCha8Rng) -> anyhow::Result<Result<usize, String>> {
    let gens: Vec<Generator> = (1..=4).map(Generator::Cycle).chain((1..=4).map(Generator::Chain)).collect();
    Ok(match check_axioms(&ChainCycleRule, &gens) {
        dynsum_core::formal_sum::AxiomReport::Pass { triples } => Ok(triples),
        dynsum_core::formal_sum::AxiomReport::Violation(v) => Err(format!("{v:?}")),
    })
}

fn ring_laws(rng: &mut ChaCha8Rng) -> anyhow::Result<Result<usize, String>> {
    for _ in 0..300 {
        let (x, y, z) = (element(rng)?, element(rng)?, element(rng)?);
        if &x * &y != &y * &x || &(&x * &y) * &z != &x * &(&y * &z) || &x * &(&y + &z) != &(&x * &y) + &(&x * &z) {
            return Ok(Err(format!("x = {x}, y = {y}, z = {z}")));
        }
    }
    Ok(Ok(300))
}

fn oracle_products(rng: &mut ChaCha8Rng) -> anyhow::Result<Result<usize, String>> {
    let mut oracle = ProductOracle::new();
    for _ in 0..300 {
        let (x, y) = (element(rng)?, element(rng)?);
        if oracle.multiply_mod2(&x, &y)? != &x * &y {
            return Ok(Err(format!("{x} · {y}")));
        }
    }
    Ok(Ok(300))
}

fn cycle_division(rng: &mut ChaCha8Rng) -> anyhow::Result<Result<usize, String>> {
    for _ in 0..1000 {
        let (a, b, x) =
            (uniform_restricted(rng, 15, 2)?, uniform_restricted(rng, 15, 2)?, uniform_restricted(rng, 15, 2)?);
        let b = if rand::Rng::gen_bool(rng, 0.5) { &a * &x } else { b };
        if solve(&a, &b)?.membership(&x) != (&a * &x == b) {
            return Ok(Err(format!("a = {a}, b = {b}, x = {x}")));
        }
    }
    Ok(Ok(1000))
}

fn combined_division(rng: &mut ChaCha8Rng) -> anyhow::Result<Result<usize, String>> {
    let space = SearchSpace { k: 3, max_level: 1, max_chain: 3 };
    for _ in 0..60 {
        let (a, x) = (uniform_element(rng, &space)?, uniform_element(rng, &space)?);
        let b = &a * &x;
        let mut listed = divide_full_restricted(&a, &b, &space)?;
        listed.sort();
        let brute: Vec<Element> = exhaustive_divide(&a, &b, &space)?.into_iter().collect();
        if listed != brute || !divide_full(&a, &b)?.membership(&x) {
            return Ok(Err(format!("a = {a}, b = {b}")));
        }
    }
    Ok(Ok(60))
}

fn cubics(rng: &mut ChaCha8Rng) -> anyhow::Result<Result<usize, String>> {
    for _ in 0..300 {
        let mut even = || uniform_restricted(rng, 15, 2).map(|x| x.even_part());
        let p = CubicPoly::new(even()?, even()?, &even()? + &CycleSum::one(), uniform_restricted(rng, 15, 2)?);
        let s = uniform_restricted(rng, 15, 2)?;
        let x = p.solve_bijective(&s)?;
        if p.eval(&x) != s || p.solve_bijective(&p.eval(&s))? != s {
            return Ok(Err(format!("P = {p}, s = {s}")));
        }
    }
    Ok(Ok(300))
}

fn h_map_check(rng: &mut ChaCha8Rng) -> anyhow::Result<Result<usize, String>> {
    for _ in 0..300 {
        let a = uniform_restricted(rng, 15, 2)?;
        let h = h_map(&a);
        if !classify(&h).is_coregular || !green(&a, &h, Relation::R) {
            return Ok(Err(format!("a = {a}")));
        }
    }
    Ok(Ok(300))
}
