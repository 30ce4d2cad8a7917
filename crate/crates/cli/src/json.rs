//! Machine-readable renderings. Elements are always
//! `{"cycles": [lengths], "chains": [lengths]}` with ascending lengths.

use dynsum_core::chain_cycle::{ChainSolutions, CombinedSolutionSet, Parity};
use dynsum_core::division::IntervalSolutionSet;
use dynsum_core::{CycleSum, Element, OddSet};
use serde_json::{json, Value};

/// Lengths that overflow `u64` are emitted as decimal strings.
fn length(q: u128) -> Value {
    match u64::try_from(q) {
        Ok(q) => json!(q),
        Err(_) => json!(q.to_string()),
    }
}

pub fn element(x: &Element) -> Value {
    let cycles: Vec<Value> = x.cycles.lengths().into_iter().map(length).collect();
    let chains: Vec<u64> = x.chains.iter().collect();
    json!({ "cycles": cycles, "chains": chains })
}

pub fn cycles(x: &CycleSum) -> Value {
    element(&x.clone().into())
}

pub fn odd(e: &OddSet) -> Value {
    cycles(&CycleSum::idempotent(e.clone()))
}

/// `{solvable, lambda0, upsilon0, head: [{i, lo, hi}], tail_hi, min_solution}`;
/// `min_solution` is null when unsolvable.
pub fn cycle_division(sol: &IntervalSolutionSet) -> Value {
    let head: Vec<Value> =
        sol.head.iter().zip(1u32..).map(|(lb, i)| json!({ "i": i, "lo": odd(&lb.lo), "hi": odd(&lb.hi) })).collect();
    json!({
        "solvable": sol.solvable,
        "lambda0": odd(&sol.lambda0),
        "upsilon0": odd(&sol.upsilon0),
        "head": head,
        "tail_hi": odd(&sol.tail_hi),
        "min_solution": sol.min_solution().ok().map(|x| cycles(&x)),
    })
}

fn chain_branch(c: &ChainSolutions) -> Value {
    json!({
        "parity": if c.parity == Parity::Even { "even" } else { "odd" },
        "h": c.h,
        "lo": element(&c.lo().into()),
        "hi": element(&c.hi().into()),
        "free_tail": c.free_tail,
        "empty": c.is_empty(),
    })
}

/// `{solvable, whole_space, cycles: <cycle division>, branches: [{t,
/// cycle_feasible, empty, chains: [..]}], witness}`.
pub fn combined_division(set: &CombinedSolutionSet) -> Value {
    let branches: Vec<Value> = set
        .branches
        .iter()
        .map(|br| {
            json!({
                "t": u8::from(br.t),
                "cycle_feasible": br.cycle_feasible,
                "empty": br.is_empty(),
                "chains": br.chains.iter().map(chain_branch).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "solvable": set.is_solvable(),
        "whole_space": set.is_whole_space(),
        "cycles": cycle_division(&set.cycles),
        "branches": branches,
        "witness": set.witness().ok().map(|x| element(&x)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn element_schema() {
        let x = crate::expr::element("L2 + C3 + C10").unwrap();
        assert_eq!(element(&x), json!({"cycles": [3, 10], "chains": [2]}));
        assert_eq!(element(&Element::zero()), json!({"cycles": [], "chains": []}));
    }
}
