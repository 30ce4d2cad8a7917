use std::collections::BTreeSet;

use dynsum_core::chain_cycle::{divide_chains, divide_full, divide_full_restricted, Parity, SearchSpace};
use dynsum_core::division::{enumerate_restricted, solve};
use dynsum_core::oracle::{closed_form_product, exhaustive_divide, mod2, ComponentMultiset, ProductOracle};
use dynsum_core::sample::{sparse_element, uniform_element};
use dynsum_core::{ChainSum, CycleSum, Element};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_subsets(pool: &[u64], max: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for &d in pool {
        let grown: Vec<Vec<u64>> =
            out.iter().filter(|s| s.len() < max).map(|s| [s.as_slice(), &[d]].concat()).collect();
        out.extend(grown);
    }
    out
}

#[test]
fn cycle_products_match_explicit_digraphs() {
    let pool: Vec<u64> = (1..=10).collect();
    let sums: Vec<Element> =
        small_subsets(&pool, 3).into_iter().map(|s| CycleSum::from_lengths(s).unwrap().into()).collect();
    let mut oracle = ProductOracle::new();
    for x in &sums {
        for y in &sums {
            assert_eq!(oracle.multiply_mod2(x, y).unwrap(), x * y, "{x} · {y}");
        }
    }
}

#[test]
fn closed_form_reduces_to_ring_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cycles: Vec<u64> = (1..=12).collect();
    let chains: Vec<u64> = (1..=8).collect();
    for _ in 0..2000 {
        let x = sparse_element(&mut rng, &cycles, 3, &chains, 3).unwrap();
        let y = sparse_element(&mut rng, &cycles, 3, &chains, 3).unwrap();
        let (mx, my) = (ComponentMultiset::from_element(&x).unwrap(), ComponentMultiset::from_element(&y).unwrap());
        assert_eq!(mod2(&closed_form_product(&mx, &my).unwrap()).unwrap(), &x * &y);
    }
}

#[test]
fn restricted_enumeration_matches_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let space = SearchSpace { k: 15, max_level: 1, max_chain: 0 };
    for _ in 0..300 {
        let a = uniform_element(&mut rng, &space).unwrap().cycles;
        let b = if rand::Rng::gen_bool(&mut rng, 0.5) {
            uniform_element(&mut rng, &space).unwrap().cycles
        } else {
            &a * &uniform_element(&mut rng, &space).unwrap().cycles
        };
        let listed: BTreeSet<Element> =
            enumerate_restricted(&solve(&a, &b).unwrap(), 15, 1).unwrap().map(Element::from).collect();
        let found = exhaustive_divide(&a.clone().into(), &b.clone().into(), &space).unwrap();
        assert_eq!(listed, found, "{a} · x = {b}");
    }
}

#[test]
fn combined_division_matches_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let space = SearchSpace { k: 3, max_level: 1, max_chain: 4 };
    for _ in 0..300 {
        let a = uniform_element(&mut rng, &space).unwrap();
        let x = uniform_element(&mut rng, &space).unwrap();
        let b = if rand::Rng::gen_bool(&mut rng, 0.5) { &a * &x } else { uniform_element(&mut rng, &space).unwrap() };
        let listed: BTreeSet<Element> = divide_full_restricted(&a, &b, &space).unwrap().into_iter().collect();
        let found = exhaustive_divide(&a, &b, &space).unwrap();
        assert_eq!(listed, found, "{a} · x = {b}");
        let set = divide_full(&a, &b).unwrap();
        assert_eq!(set.is_solvable(), set.witness().is_ok());
        for x in &found {
            assert!(set.membership(x));
        }
    }
}

#[test]
fn chain_division_matches_search_up_to_l9() {
    let odd = [1u64, 3, 5, 7, 9];
    let all: Vec<ChainSum> = small_subsets(&odd, odd.len()).into_iter().map(|s| s.into_iter().collect()).collect();
    for a in &all {
        for b in &all {
            let found: BTreeSet<ChainSum> = all.iter().filter(|x| &(a * *x) == b).cloned().collect();
            let listed: BTreeSet<ChainSum> =
                divide_chains(a, b, Parity::Odd).unwrap().enumerate(9).into_iter().collect();
            assert_eq!(listed, found, "{a} · x = {b}");
        }
    }
}
