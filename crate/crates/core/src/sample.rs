//! Random elements for property checks, driven by a caller-supplied RNG so
//! runs are reproducible from a seed.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::boolean_lattice::divisors;
use crate::chain_cycle::{ChainSum, Element, SearchSpace};
use crate::cycle_ring::{CycleSum, OddSet};
use crate::error::{Error, Result};

/// Uniform over cycle sums with odd parts dividing `k` and levels `≤ n`.
pub fn uniform_restricted<R: Rng + ?Sized>(rng: &mut R, k: u64, n: u32) -> Result<CycleSum> {
    if k.is_multiple_of(2) {
        return Err(Error::EvenModulus(k));
    }
    let ds = divisors(k);
    Ok(CycleSum::from_levels((0..=n).map(|i| {
        let e: OddSet = ds.iter().copied().filter(|_| rng.gen()).collect();
        (i, e)
    })))
}

/// Uniform over the elements of `space`.
pub fn uniform_element<R: Rng + ?Sized>(rng: &mut R, space: &SearchSpace) -> Result<Element> {
    let cycles = uniform_restricted(rng, space.k, space.max_level)?;
    let chains = ChainSum::from_lengths((1..=space.max_chain).filter(|_| rng.gen()))?;
    Ok(Element::new(chains, cycles))
}

/// The sum of up to `max_terms` distinct lengths drawn from `pool`.
pub fn sparse_lengths<R: Rng + ?Sized>(rng: &mut R, pool: &[u64], max_terms: usize) -> Vec<u64> {
    let count = rng.gen_range(0..=max_terms.min(pool.len()));
    pool.choose_multiple(rng, count).copied().collect()
}

pub fn sparse_cycle_sum<R: Rng + ?Sized>(rng: &mut R, pool: &[u64], max_terms: usize) -> Result<CycleSum> {
    CycleSum::from_lengths(sparse_lengths(rng, pool, max_terms))
}

pub fn sparse_element<R: Rng + ?Sized>(
    rng: &mut R,
    cycle_pool: &[u64],
    max_cycles: usize,
    chain_pool: &[u64],
    max_chains: usize,
) -> Result<Element> {
    let cycles = sparse_cycle_sum(rng, cycle_pool, max_cycles)?;
    let chains = ChainSum::from_lengths(sparse_lengths(rng, chain_pool, max_chains))?;
    Ok(Element::new(chains, cycles))
}

/// A unit `C1 + y` with `y` uniform over even-level sums in the window.
pub fn unit<R: Rng + ?Sized>(rng: &mut R, k: u64, n: u32) -> Result<CycleSum> {
    Ok(&uniform_restricted(rng, k, n)?.even_part() + &CycleSum::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samples_stay_in_window() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let space = SearchSpace { k: 15, max_level: 2, max_chain: 4 };
        for _ in 0..200 {
            let x = uniform_element(&mut rng, &space).unwrap();
            assert!(space.contains(&x));
            let g = unit(&mut rng, 15, 2).unwrap();
            assert!(g.odd_part().is_one());
            assert!(sparse_cycle_sum(&mut rng, &[1, 2, 3], 2).unwrap().count() <= 2);
        }
    }

    #[test]
    fn seeds_reproduce() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..10).map(|_| uniform_restricted(&mut rng, 45, 1).unwrap()).collect::<Vec<_>>()
        };
        assert_eq!(draw(3), draw(3));
        assert_ne!(draw(3), draw(4));
    }
}
