//! The ring `F2(L ∪ C)` of chains and cycles, and its division theory.
//!
//! Chains multiply by `L_e L_d = L_min(d,e)` within a parity class and to 0
//! across classes, so each class is a semilattice. In the basis
//! `Z_i = L_i + L_{i-2}` (with `L_0 = L_{-1} = 0`) the product becomes
//! intersection of supports. A chain times a cycle `C_d` survives exactly
//! when `d` is odd, so `x^(L) y^(C) = (|y_0| mod 2) x^(L)`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul};

use crate::boolean_lattice::{BoolElem, DivisorLattice, Interval};
use crate::cycle_ring::{CycleSum, OddSet};
use crate::division::{solve, IntervalSolutionSet, LevelBounds};
use crate::error::{Error, Result};
use crate::formal_sum::{FormalSum, Generator};

/// One of the two chain parity classes `L^(0)` (even) and `L^(1)` (odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::Even, Parity::Odd];

    pub fn of(d: u64) -> Parity {
        if d.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// The smallest chain length in the class.
    pub fn base(self) -> u64 {
        match self {
            Parity::Even => 2,
            Parity::Odd => 1,
        }
    }

    pub fn matches(self, d: u64) -> bool {
        Parity::of(d) == self
    }
}

/// A finite F2 sum of chains.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainSum {
    lengths: BTreeSet<u64>,
}

impl ChainSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn chain(d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroLength);
        }
        Ok(ChainSum { lengths: BTreeSet::from([d]) })
    }

    /// Collects chain lengths with F2 semantics: repeated lengths cancel.
    pub fn from_lengths<I: IntoIterator<Item = u64>>(lengths: I) -> Result<Self> {
        let mut s = ChainSum::zero();
        for d in lengths {
            if d == 0 {
                return Err(Error::ZeroLength);
            }
            s.toggle(d);
        }
        Ok(s)
    }

    /// `L_k`, the top of `V(𝓛_k)`; empty for `k = 0`.
    pub fn full(k: u64) -> Self {
        Self::chain(k).unwrap_or_default()
    }

    fn toggle(&mut self, d: u64) {
        if !self.lengths.remove(&d) {
            self.lengths.insert(d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn contains(&self, d: u64) -> bool {
        self.lengths.contains(&d)
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + '_ {
        self.lengths.iter().copied()
    }

    /// Longest chain present, 0 for the empty sum.
    pub fn height(&self) -> u64 {
        self.lengths.last().copied().unwrap_or(0)
    }

    /// `a^(ε)`: the chains of one parity class.
    pub fn class(&self, parity: Parity) -> ChainSum {
        ChainSum { lengths: self.iter().filter(|&d| parity.matches(d)).collect() }
    }

    pub fn is_pure(&self, parity: Parity) -> bool {
        self.iter().all(|d| parity.matches(d))
    }

    pub fn add(&self, other: &ChainSum) -> ChainSum {
        ChainSum { lengths: self.lengths.symmetric_difference(&other.lengths).copied().collect() }
    }

    /// The product, computed as intersection in Z-coordinates.
    pub fn mul(&self, other: &ChainSum) -> ChainSum {
        let (x, y) = (self.z_coords(), other.z_coords());
        Self::from_z_unchecked(&x.intersection(&y).copied().collect())
    }

    /// Z-coordinates of a sum that may mix parities; indices keep the parity
    /// of their class.
    fn z_coords(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for parity in Parity::BOTH {
            let mut acc = false;
            let class: Vec<u64> = self.iter().filter(|&d| parity.matches(d)).collect();
            let Some(&top) = class.last() else { continue };
            let mut i = top;
            loop {
                acc ^= self.contains(i);
                if acc {
                    out.insert(i);
                }
                if i <= parity.base() {
                    break;
                }
                i -= 2;
            }
        }
        out
    }

    fn from_z_unchecked(z: &BTreeSet<u64>) -> ChainSum {
        let mut s = ChainSum::zero();
        for &i in z {
            s.toggle(i);
            if i > 2 {
                s.toggle(i - 2);
            }
        }
        s
    }

    /// Coordinates in the basis `Z_b = L_b`, `Z_i = L_i + L_{i-2}` of the
    /// class, where `b` is the class base.
    pub fn to_z(&self, parity: Parity) -> Result<BTreeSet<u64>> {
        if !self.is_pure(parity) {
            return Err(Error::MixedParity);
        }
        Ok(self.z_coords())
    }

    /// Inverse of [`ChainSum::to_z`].
    pub fn from_z(indices: &BTreeSet<u64>, parity: Parity) -> Result<ChainSum> {
        if indices.iter().any(|&i| i == 0 || !parity.matches(i)) {
            return Err(Error::MixedParity);
        }
        Ok(Self::from_z_unchecked(indices))
    }
}

impl FromIterator<u64> for ChainSum {
    /// # Panics
    /// On a zero length.
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        ChainSum::from_lengths(iter).expect("chain length must be positive")
    }
}

impl Add for &ChainSum {
    type Output = ChainSum;
    fn add(self, rhs: &ChainSum) -> ChainSum {
        ChainSum::add(self, rhs)
    }
}

impl Mul for &ChainSum {
    type Output = ChainSum;
    fn mul(self, rhs: &ChainSum) -> ChainSum {
        ChainSum::mul(self, rhs)
    }
}

impl fmt::Display for ChainSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, d) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "L{d}")?;
        }
        Ok(())
    }
}

/// `L_e · L_d`.
pub fn mul_chain(e: u64, d: u64) -> Result<ChainSum> {
    if e == 0 || d == 0 {
        return Err(Error::ZeroLength);
    }
    if e % 2 != d % 2 {
        return Ok(ChainSum::zero());
    }
    ChainSum::chain(e.min(d))
}

/// `L_e · C_d`, which is `d` copies of `L_e`.
pub fn mul_chain_cycle(e: u64, d: u64) -> Result<ChainSum> {
    if e == 0 || d == 0 {
        return Err(Error::ZeroLength);
    }
    if d.is_multiple_of(2) {
        return Ok(ChainSum::zero());
    }
    ChainSum::chain(e)
}

/// An element `d = d^(0) + d^(1) + d^(C)` of `F2(L ∪ C)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    pub chains: ChainSum,
    pub cycles: CycleSum,
}

impl Element {
    pub fn new(chains: ChainSum, cycles: CycleSum) -> Self {
        Element { chains, cycles }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        CycleSum::one().into()
    }

    pub fn is_zero(&self) -> bool {
        self.chains.is_zero() && self.cycles.is_zero()
    }

    /// `a^(ε)`.
    pub fn class(&self, parity: Parity) -> ChainSum {
        self.chains.class(parity)
    }

    pub fn add(&self, other: &Element) -> Element {
        Element { chains: &self.chains + &other.chains, cycles: &self.cycles + &other.cycles }
    }

    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        let mut chains = &self.chains * &other.chains;
        if other.cycles.odd_part().len() % 2 == 1 {
            chains = &chains + &self.chains;
        }
        if self.cycles.odd_part().len() % 2 == 1 {
            chains = &chains + &other.chains;
        }
        Ok(Element { chains, cycles: self.cycles.try_mul(&other.cycles)? })
    }

    pub fn to_formal(&self) -> FormalSum<Generator> {
        let cycles = self
            .cycles
            .lengths()
            .into_iter()
            .map(|q| Generator::Cycle(u64::try_from(q).expect("cycle length exceeds u64")));
        cycles.chain(self.chains.iter().map(Generator::Chain)).collect()
    }

    pub fn from_formal(s: &FormalSum<Generator>) -> Result<Element> {
        let mut out = Element::zero();
        for g in s.iter() {
            let term = match *g {
                Generator::Cycle(d) => CycleSum::cycle(d)?.into(),
                Generator::Chain(d) => ChainSum::chain(d)?.into(),
            };
            out = &out + &term;
        }
        Ok(out)
    }
}

impl From<CycleSum> for Element {
    fn from(cycles: CycleSum) -> Self {
        Element { chains: ChainSum::zero(), cycles }
    }
}

impl From<ChainSum> for Element {
    fn from(chains: ChainSum) -> Self {
        Element { chains, cycles: CycleSum::zero() }
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        Element::add(self, rhs)
    }
}

impl Mul for &Element {
    type Output = Element;
    /// # Panics
    /// On cycle length overflow; use [`Element::try_mul`] to handle it.
    fn mul(self, rhs: &Element) -> Element {
        self.try_mul(rhs).expect("cycle length overflow in product")
    }
}

impl fmt::Display for Element {
    /// Cycles first, then chains, each ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.cycles.is_zero(), self.chains.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}", self.cycles),
            (true, false) => write!(f, "{}", self.chains),
            (false, false) => write!(f, "{} + {}", self.cycles, self.chains),
        }
    }
}

/// Solutions `x^(ε)` of a chain equation inside one parity class.
///
/// In Z-coordinates, `x` is a solution when its part at indices `≤ h` lies
/// in `[lo, hi]` and, if the tail is not free, it has nothing above `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSolutions {
    pub parity: Parity,
    pub h: u64,
    lo: BTreeSet<u64>,
    hi: BTreeSet<u64>,
    pub free_tail: bool,
}

impl ChainSolutions {
    fn new(parity: Parity, h: u64, lo: &ChainSum, hi: &ChainSum, free_tail: bool) -> Self {
        ChainSolutions { parity, h, lo: lo.z_coords(), hi: hi.z_coords(), free_tail }
    }

    pub fn lo(&self) -> ChainSum {
        ChainSum::from_z_unchecked(&self.lo)
    }

    pub fn hi(&self) -> ChainSum {
        ChainSum::from_z_unchecked(&self.hi)
    }

    /// Empty when `lo ≰ hi` or the bounds leave `V(𝓛_h)`.
    pub fn is_empty(&self) -> bool {
        !self.lo.is_subset(&self.hi) || self.hi.last().is_some_and(|&i| i > self.h)
    }

    /// Whether the parity class `x^(ε)` of `x` is a solution.
    pub fn contains(&self, x: &ChainSum) -> bool {
        if self.is_empty() {
            return false;
        }
        let z = x.class(self.parity).z_coords();
        let head: BTreeSet<u64> = z.range(..=self.h).copied().collect();
        let has_tail = z.range(self.h + 1..).next().is_some();
        self.lo.is_subset(&head) && head.is_subset(&self.hi) && (self.free_tail || !has_tail)
    }

    /// The least solution.
    pub fn min_solution(&self) -> Option<ChainSum> {
        (!self.is_empty()).then(|| self.lo())
    }

    /// Every solution of height at most `max_chain`.
    pub fn enumerate(&self, max_chain: u64) -> Vec<ChainSum> {
        if self.is_empty() || self.lo.last().is_some_and(|&i| i > max_chain) {
            return Vec::new();
        }
        let mut free: Vec<u64> = self.hi.difference(&self.lo).copied().filter(|&i| i <= max_chain).collect();
        if self.free_tail {
            let start = (self.h + 1).max(self.parity.base());
            free.extend((start..=max_chain).filter(|&i| self.parity.matches(i)));
        }
        subsets(&free)
            .map(|extra| {
                let mut z = self.lo.clone();
                z.extend(extra);
                ChainSum::from_z_unchecked(&z)
            })
            .collect()
    }
}

fn subsets(items: &[u64]) -> impl Iterator<Item = Vec<u64>> + '_ {
    assert!(items.len() < 64, "too many free coordinates to enumerate");
    (0u64..1 << items.len())
        .map(move |mask| items.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, &i)| i).collect())
}

/// Solves `a·x = b` inside one chain parity class.
///
/// With `h = Height(a)`, the solutions are the `x` whose Z-coordinates up to
/// `h` lie in `[b, b + a + L_h]`, with anything above `h`.
pub fn divide_chains(a: &ChainSum, b: &ChainSum, parity: Parity) -> Result<ChainSolutions> {
    if !a.is_pure(parity) || !b.is_pure(parity) {
        return Err(Error::MixedParity);
    }
    let h = a.height();
    Ok(ChainSolutions::new(parity, h, b, &(&(b + a) + &ChainSum::full(h)), true))
}

/// The solutions of `a·x = b` whose cycle part has `|x_0| ≡ t (mod 2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityBranch {
    pub t: bool,
    /// Whether some cycle solution has this parity of odd cycles.
    pub cycle_feasible: bool,
    /// Chain solutions indexed by class: even first, then odd.
    pub chains: [ChainSolutions; 2],
}

impl ParityBranch {
    pub fn is_empty(&self) -> bool {
        !self.cycle_feasible || self.chains.iter().any(ChainSolutions::is_empty)
    }

    pub fn class(&self, parity: Parity) -> &ChainSolutions {
        &self.chains[parity as usize]
    }
}

/// The complete solution set of `a·x = b` in `F2(L ∪ C)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinedSolutionSet {
    /// Solutions of the cycle equation `a^(C) x^(C) = b^(C)`.
    pub cycles: IntervalSolutionSet,
    /// `|a_0| mod 2`, which selects the form of the chain branches.
    pub a_odd_count: bool,
    /// Branches for `t = 0` and `t = 1`.
    pub branches: [ParityBranch; 2],
    a: Element,
    b: Element,
}

impl CombinedSolutionSet {
    pub fn a(&self) -> &Element {
        &self.a
    }

    pub fn b(&self) -> &Element {
        &self.b
    }

    pub fn is_solvable(&self) -> bool {
        self.branches.iter().any(|br| !br.is_empty())
    }

    /// `0·x = 0`: every element is a solution.
    pub fn is_whole_space(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn membership(&self, x: &Element) -> bool {
        let branch = &self.branches[usize::from(x.cycles.odd_part().len() % 2 == 1)];
        !branch.is_empty() && self.cycles.membership(&x.cycles) && branch.chains.iter().all(|c| c.contains(&x.chains))
    }

    /// Some solution, preferring `t = 0`.
    pub fn witness(&self) -> Result<Element> {
        let branch = self.branches.iter().find(|br| !br.is_empty()).ok_or(Error::Unsolvable)?;
        let mut cycles = self.cycles.min_solution()?;
        if branch.t != odd_count(&self.cycles.lambda0) {
            cycles = &(&cycles + &CycleSum::idempotent(self.cycles.lambda0.clone()))
                + &CycleSum::idempotent(self.cycles.upsilon0.clone());
        }
        let chains =
            branch.chains.iter().filter_map(ChainSolutions::min_solution).fold(ChainSum::zero(), |acc, c| &acc + &c);
        Ok(Element { chains, cycles })
    }
}

fn odd_count(e: &OddSet) -> bool {
    e.len() % 2 == 1
}

/// Solves `a·x = b` in `F2(L ∪ C)`.
///
/// Splits on `t = |x_0| mod 2`, the coefficient with which `x^(C)` acts on
/// chains. The cycle part must solve the cycle equation with that parity,
/// and each chain class must solve `b^(ε) = a^(ε) x^(ε) + t a^(ε) + a^(C) x^(ε)`.
/// Fails only on lcm overflow.
pub fn divide_full(a: &Element, b: &Element) -> Result<CombinedSolutionSet> {
    let cycles = solve(&a.cycles, &b.cycles)?;
    let a_odd_count = odd_count(&a.cycles.odd_part());
    let branch = |t: bool| {
        let cycle_feasible =
            cycles.solvable && if t { odd_count(&cycles.upsilon0) } else { !odd_count(&cycles.lambda0) };
        let chains = Parity::BOTH.map(|parity| {
            let (ae, be) = (a.class(parity), b.class(parity));
            let lo = if t { &be + &ae } else { be.clone() };
            let lo_plus_a = &lo + &ae;
            if a_odd_count {
                let h = ae.height().max(be.height());
                ChainSolutions::new(parity, h, &lo, &lo_plus_a, false)
            } else {
                let h = ae.height();
                ChainSolutions::new(parity, h, &lo, &(&lo_plus_a + &ChainSum::full(h)), true)
            }
        });
        ParityBranch { t, cycle_feasible, chains }
    };
    let branches = [branch(false), branch(true)];
    Ok(CombinedSolutionSet { cycles, a_odd_count, branches, a: a.clone(), b: b.clone() })
}

/// A finite window of `F2(L ∪ C)`: cycles with odd part dividing `k` and
/// level at most `max_level`, chains of length at most `max_chain`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSpace {
    pub k: u64,
    pub max_level: u32,
    pub max_chain: u64,
}

impl SearchSpace {
    /// Number of generators spanning the window.
    pub fn generators(&self) -> usize {
        crate::boolean_lattice::divisors(self.k).len() * (self.max_level as usize + 1) + self.max_chain as usize
    }

    pub fn contains(&self, x: &Element) -> bool {
        x.chains.height() <= self.max_chain
            && x.cycles.levels().all(|(i, e)| i <= self.max_level && e.iter().all(|q| self.k.is_multiple_of(q)))
    }
}

/// Every solution of `a·x = b` inside `space`, each verified by
/// multiplication.
///
/// The level-0 interval is split by cardinality parity inside `V(C_k)` to
/// serve the two branches. Complete for the window when
/// `lcm(K(a^(C)), K(b^(C))) | k` and `max_level ≥ max(N(a), N(b))`.
pub fn divide_full_restricted(a: &Element, b: &Element, space: &SearchSpace) -> Result<Vec<Element>> {
    let k = space.k;
    if k.is_multiple_of(2) {
        return Err(Error::EvenModulus(k));
    }
    let gens = space.generators();
    if gens > 24 {
        return Err(Error::SpaceTooLarge(gens));
    }
    let set = divide_full(a, b)?;
    let modulus = set.cycles.modulus();
    if !k.is_multiple_of(modulus) {
        return Err(Error::UnsoundRestriction { k, required: modulus });
    }
    if space.max_level < set.cycles.n {
        return Err(Error::HorizonTooSmall { given: space.max_level, required: set.cycles.n });
    }
    let mut out = Vec::new();
    if !set.cycles.solvable {
        return Ok(out);
    }
    let lattice = DivisorLattice::new(k)?;
    let interval = |bounds: LevelBounds| -> Result<Interval<'_>> {
        Interval::new(lattice.to_bool(&bounds.lo)?, lattice.to_bool(&bounds.hi)?)
    };
    let odd_sets = |elems: Vec<BoolElem<'_>>| elems.iter().map(|e| lattice.to_odd(e)).collect::<Vec<_>>();
    let mut upper = Vec::new();
    for i in 1..=space.max_level {
        upper.push((i, odd_sets(interval(set.cycles.bounds(i))?.elems())));
    }
    let (even0, odd0) = interval(set.cycles.bounds(0))?.parity_split(lattice.lattice().bottom());
    for branch in set.branches.iter().filter(|br| !br.is_empty()) {
        let level0 = odd_sets(if branch.t { odd0.elems() } else { even0.elems() });
        let mut levels = vec![(0, level0)];
        levels.extend(upper.iter().cloned());
        let cycle_parts = cartesian(&levels, CycleSum::from_levels);
        let [even, odd] = &branch.chains;
        let (evens, odds) = (even.enumerate(space.max_chain), odd.enumerate(space.max_chain));
        for cycles in &cycle_parts {
            for ce in &evens {
                for co in &odds {
                    let x = Element { chains: ce + co, cycles: cycles.clone() };
                    assert_eq!(&a.try_mul(&x)?, b, "restricted solution {x} fails a·x = b");
                    out.push(x);
                }
            }
        }
    }
    Ok(out)
}

/// All ways of picking one entry per level.
fn cartesian<T, F>(levels: &[(u32, Vec<OddSet>)], build: F) -> Vec<T>
where
    F: Fn(Vec<(u32, OddSet)>) -> T,
{
    let mut partial: Vec<Vec<(u32, OddSet)>> = vec![Vec::new()];
    for (i, options) in levels {
        partial = partial
            .into_iter()
            .flat_map(|p| {
                options.iter().map(move |e| {
                    let mut q = p.clone();
                    q.push((*i, e.clone()));
                    q
                })
            })
            .collect();
    }
    partial.into_iter().map(build).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn l(lengths: &[u64]) -> ChainSum {
        lengths.iter().copied().collect()
    }

    fn c(lengths: &[u64]) -> CycleSum {
        CycleSum::from_lengths(lengths.iter().copied()).unwrap()
    }

    fn el(chains: &[u64], cycles: &[u64]) -> Element {
        Element::new(l(chains), c(cycles))
    }

    fn z(indices: &[u64]) -> BTreeSet<u64> {
        indices.iter().copied().collect()
    }

    #[test]
    fn generator_products() {
        assert_eq!(mul_chain(3, 5).unwrap(), l(&[3]));
        assert_eq!(mul_chain(2, 3).unwrap(), ChainSum::zero());
        assert_eq!(mul_chain(4, 4).unwrap(), l(&[4]));
        assert_eq!(mul_chain_cycle(2, 3).unwrap(), l(&[2]));
        assert_eq!(mul_chain_cycle(2, 4).unwrap(), ChainSum::zero());
        assert_eq!(mul_chain_cycle(1, 1).unwrap(), l(&[1]));
        assert_eq!(mul_chain(0, 1), Err(Error::ZeroLength));
    }

    #[test]
    fn element_products() {
        assert_eq!(&el(&[3], &[]) * &el(&[1, 5], &[]), el(&[1, 3], &[]));
        assert_eq!(&el(&[2], &[]) * &el(&[], &[3, 5]), Element::zero());
        assert_eq!(&el(&[2], &[]) * &el(&[], &[3]), el(&[2], &[]));
        assert_eq!(&el(&[4, 7], &[3, 10]) * &Element::one(), el(&[4, 7], &[3, 10]));
    }

    #[test]
    fn z_coordinates() {
        assert_eq!(l(&[5]).to_z(Parity::Odd).unwrap(), z(&[1, 3, 5]));
        assert_eq!(l(&[1, 5]).to_z(Parity::Odd).unwrap(), z(&[3, 5]));
        assert_eq!(l(&[1, 3, 5]).to_z(Parity::Odd).unwrap(), z(&[1, 5]));
        assert_eq!(l(&[6]).to_z(Parity::Even).unwrap(), z(&[2, 4, 6]));
        assert_eq!(l(&[1, 2]).to_z(Parity::Odd), Err(Error::MixedParity));
        assert_eq!(ChainSum::from_z(&z(&[3, 5]), Parity::Odd).unwrap(), l(&[1, 5]));
        assert_eq!(ChainSum::from_z(&z(&[2]), Parity::Odd), Err(Error::MixedParity));
    }

    #[test]
    fn z_basis_is_orthogonal() {
        for parity in Parity::BOTH {
            let idx: Vec<u64> = (1..=15).filter(|&i| parity.matches(i)).collect();
            for &i in &idx {
                for &j in &idx {
                    let zi = ChainSum::from_z(&z(&[i]), parity).unwrap();
                    let zj = ChainSum::from_z(&z(&[j]), parity).unwrap();
                    let expected = if i == j { zi.clone() } else { ChainSum::zero() };
                    assert_eq!(&zi * &zj, expected, "Z{i}·Z{j}");
                }
            }
        }
    }

    #[test]
    fn heights() {
        assert_eq!(l(&[1, 3]).height(), 3);
        assert_eq!(ChainSum::zero().height(), 0);
        assert_eq!(l(&[8]).height(), 8);
    }

    #[test]
    fn chain_division_examples() {
        let sol = divide_chains(&l(&[3]), &l(&[1]), Parity::Odd).unwrap();
        assert_eq!((sol.lo(), sol.hi()), (l(&[1]), l(&[1])));
        assert!(sol.contains(&l(&[1])) && sol.contains(&l(&[1, 3, 5])));
        assert_eq!(&l(&[3]) * &l(&[1, 3, 5]), l(&[1]));

        let a = l(&[1, 5]);
        assert!(divide_chains(&a, &a, Parity::Odd).unwrap().contains(&a));

        assert!(divide_chains(&l(&[1]), &l(&[3]), Parity::Odd).unwrap().is_empty());
        assert_eq!(divide_chains(&l(&[1]), &l(&[2]), Parity::Odd), Err(Error::MixedParity));
    }

    #[test]
    fn chain_division_matches_search() {
        let odd: Vec<u64> = vec![1, 3, 5, 7];
        let all: Vec<ChainSum> = subsets(&odd).map(|s| s.into_iter().collect()).collect();
        for a in &all {
            for b in &all {
                let sol = divide_chains(a, b, Parity::Odd).unwrap();
                let found: BTreeSet<&ChainSum> = all.iter().filter(|x| &(a * *x) == b).collect();
                let claimed: BTreeSet<&ChainSum> = all.iter().filter(|x| sol.contains(x)).collect();
                assert_eq!(found, claimed, "{a} · x = {b}");
                let listed: BTreeSet<ChainSum> = sol.enumerate(7).into_iter().collect();
                assert_eq!(listed, found.into_iter().cloned().collect());
            }
        }
    }

    #[test]
    fn divide_by_one() {
        let b = el(&[2, 3], &[3, 5, 6]);
        let set = divide_full(&Element::one(), &b).unwrap();
        assert!(set.membership(&b));
        // b has two odd cycles, so only the t = 0 branch is populated.
        assert!(!set.branches[0].is_empty());
        assert!(set.branches[1].is_empty());
        assert_eq!(set.witness().unwrap(), b);
    }

    #[test]
    fn divide_chain_only() {
        let a = el(&[1], &[]);
        let set = divide_full(&a, &a).unwrap();
        assert!(set.membership(&a));
        // L1·C1 = L1 puts the identity in the t = 1 branch.
        assert!(set.membership(&Element::one()));
        assert_eq!(&a * &set.witness().unwrap(), a);
    }

    #[test]
    fn divide_by_zero() {
        let set = divide_full(&Element::zero(), &Element::zero()).unwrap();
        assert!(set.is_whole_space() && set.membership(&el(&[1, 4], &[3, 6])));
        assert!(!divide_full(&Element::zero(), &el(&[1], &[])).unwrap().is_solvable());
    }

    #[test]
    fn mixed_example_has_no_solution() {
        let (a, b) = (el(&[2], &[3]), el(&[2], &[]));
        assert!(!divide_full(&a, &b).unwrap().is_solvable());
        let space = SearchSpace { k: 3, max_level: 1, max_chain: 4 };
        assert!(divide_full_restricted(&a, &b, &space).unwrap().is_empty());
    }

    #[test]
    fn restricted_examples() {
        let space = SearchSpace { k: 3, max_level: 0, max_chain: 0 };
        let sols = divide_full_restricted(&Element::one(), &el(&[], &[3]), &space).unwrap();
        assert_eq!(sols, vec![el(&[], &[3])]);

        let space = SearchSpace { k: 1, max_level: 1, max_chain: 3 };
        let sols = divide_full_restricted(&el(&[1], &[2]), &el(&[1], &[]), &space).unwrap();
        assert!(sols.contains(&el(&[1], &[])));

        let space = SearchSpace { k: 15, max_level: 0, max_chain: 0 };
        assert_eq!(
            divide_full_restricted(&el(&[], &[2]), &Element::zero(), &space),
            Err(Error::HorizonTooSmall { given: 0, required: 1 })
        );
        assert_eq!(
            divide_full_restricted(&el(&[], &[7]), &Element::zero(), &space),
            Err(Error::UnsoundRestriction { k: 15, required: 7 })
        );
    }

    #[test]
    fn level_parity_split_partitions_intervals() {
        let lattice = DivisorLattice::new(15).unwrap();
        let bottom = lattice.lattice().bottom();
        let elems: Vec<BoolElem<'_>> = lattice.lattice().all_elems().collect();
        for lo in &elems {
            for hi in &elems {
                let iv = Interval::new(lo.clone(), hi.clone()).unwrap();
                let (even, odd) = iv.parity_split(bottom);
                let all: BTreeSet<OddSet> = iv.elems().iter().map(|e| lattice.to_odd(e)).collect();
                let ev: BTreeSet<OddSet> = even.elems().iter().map(|e| lattice.to_odd(e)).collect();
                let od: BTreeSet<OddSet> = odd.elems().iter().map(|e| lattice.to_odd(e)).collect();
                assert!(ev.iter().all(|e| e.len() % 2 == 0) && od.iter().all(|e| e.len() % 2 == 1));
                assert!(ev.is_disjoint(&od));
                assert_eq!(&ev | &od, all);
            }
        }
    }

    fn chains() -> impl Strategy<Value = ChainSum> {
        prop::collection::vec(1u64..=9, 0..5).prop_map(|v| v.into_iter().collect())
    }

    fn element() -> impl Strategy<Value = Element> {
        let cycle_gens = vec![1u64, 3, 5, 15, 2, 6, 10, 4, 12];
        (chains(), prop::collection::vec(prop::sample::select(cycle_gens), 0..5))
            .prop_map(|(ch, cy)| Element::new(ch, CycleSum::from_lengths(cy).unwrap()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn ring_axioms(x in element(), y in element(), w in element()) {
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x * &y) * &w, &x * &(&y * &w));
            prop_assert_eq!(&x * &(&y + &w), &(&x * &y) + &(&x * &w));
        }

        #[test]
        fn z_roundtrip(a in chains()) {
            for parity in Parity::BOTH {
                let part = a.class(parity);
                let zs = part.to_z(parity).unwrap();
                prop_assert_eq!(ChainSum::from_z(&zs, parity).unwrap(), part);
            }
        }

        #[test]
        fn chain_product_matches_generator_rule(a in chains(), b in chains()) {
            let mut naive = ChainSum::zero();
            for d in a.iter() {
                for e in b.iter() {
                    naive = &naive + &mul_chain(d, e).unwrap();
                }
            }
            prop_assert_eq!(&a * &b, naive);
        }

        #[test]
        fn membership_matches_multiplication(a in element(), b in element(), x in element()) {
            let set = divide_full(&a, &b).unwrap();
            prop_assert_eq!(set.membership(&x), &a * &x == b);
            let ax = &a * &x;
            prop_assert!(divide_full(&a, &ax).unwrap().membership(&x));
        }

        #[test]
        fn witness_solves(a in element(), x in element()) {
            let b = &a * &x;
            let w = divide_full(&a, &b).unwrap().witness().unwrap();
            prop_assert_eq!(&a * &w, b);
        }

        #[test]
        fn parity_coupling(a in element(), x in element()) {
            let t = x.cycles.odd_part().len() % 2 == 1;
            for parity in Parity::BOTH {
                let ae: Element = a.class(parity).into();
                let xc: Element = x.cycles.clone().into();
                let expected = if t { ae.clone() } else { Element::zero() };
                prop_assert_eq!(&ae * &xc, expected);
            }
        }
    }
}
