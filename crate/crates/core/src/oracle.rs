//! Explicit functional digraphs, used as ground truth for the algebra.
//!
//! Every vertex has at most one successor. The sum of two systems is the
//! disjoint union and the product is the direct product, so counting
//! components of explicit products gives the semiring with coefficients in
//! ℕ. Nothing here relies on the F2 product rules of the other modules.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::chain_cycle::{ChainSum, Element, SearchSpace};
use crate::cycle_ring::{checked_lcm, CycleSum};
use crate::error::{Error, Result};

/// A partial transformation on `0..len()`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    succ: Vec<Option<usize>>,
}

impl Digraph {
    /// # Panics
    /// If a successor is out of range.
    pub fn new(succ: Vec<Option<usize>>) -> Self {
        let n = succ.len();
        assert!(succ.iter().flatten().all(|&v| v < n), "successor out of range");
        Digraph { succ }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `C_d`: `i → i+1 mod d`.
    pub fn cycle(d: usize) -> Self {
        Digraph { succ: (0..d).map(|i| Some((i + 1) % d)).collect() }
    }

    /// `L_d`: a path on `d` vertices, the last one without successor.
    pub fn chain(d: usize) -> Self {
        Digraph { succ: (0..d).map(|i| (i + 1 < d).then_some(i + 1)).collect() }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.is_empty()
    }

    pub fn succ(&self, v: usize) -> Option<usize> {
        self.succ[v]
    }

    /// Disjoint union; the vertices of `other` are shifted past those of
    /// `self`.
    pub fn union(&self, other: &Digraph) -> Digraph {
        let shift = self.len();
        let mut succ = self.succ.clone();
        succ.extend(other.succ.iter().map(|s| s.map(|v| v + shift)));
        Digraph { succ }
    }

    /// Direct product on pairs `(u, v) ↦ u·|other| + v`, with an arc exactly
    /// when both factors have one.
    pub fn product(&self, other: &Digraph) -> Digraph {
        let m = other.len();
        let mut succ = Vec::with_capacity(self.len() * m);
        for u in &self.succ {
            for v in &other.succ {
                succ.push(match (u, v) {
                    (Some(u), Some(v)) => Some(u * m + v),
                    _ => None,
                });
            }
        }
        Digraph { succ }
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for (u, s) in self.succ.iter().enumerate() {
            if let Some(v) = s {
                pred[*v].push(u);
            }
        }
        pred
    }

    /// Fails with the first vertex of in-degree at least 2.
    pub fn check_injective(&self) -> Result<()> {
        let mut seen = vec![false; self.len()];
        for &v in self.succ.iter().flatten() {
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NonInjective(v));
            }
        }
        Ok(())
    }

    /// Vertex sets of the weakly connected components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let pred = self.predecessors();
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in self.succ[u].iter().chain(&pred[u]) {
                    if !std::mem::replace(&mut seen[v], true) {
                        queue.push_back(v);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Counts chains and cycles of an injective digraph.
    pub fn decompose(&self) -> Result<ComponentMultiset> {
        self.check_injective()?;
        let mut out = ComponentMultiset::default();
        for comp in self.components() {
            let d = comp.len() as u64;
            if comp.iter().all(|&v| self.succ[v].is_some()) {
                out.add_cycles(d, 1);
            } else {
                out.add_chains(d, 1);
            }
        }
        Ok(out)
    }

    /// Components grouped by isomorphism class, for arbitrary functional
    /// digraphs.
    pub fn census(&self) -> BTreeMap<Shape, u64> {
        let pred = self.predecessors();
        let mut out = BTreeMap::new();
        for comp in self.components() {
            *out.entry(self.shape(&comp, &pred)).or_insert(0) += 1;
        }
        out
    }

    fn shape(&self, comp: &[usize], pred: &[Vec<usize>]) -> Shape {
        // Walking |comp| steps either hits the sink or lands on the cycle.
        let mut v = comp[0];
        for _ in 0..comp.len() {
            match self.succ[v] {
                Some(w) => v = w,
                None => {
                    return Shape { size: comp.len(), code: format!("T{}", tree_code(v, pred, None)) };
                }
            }
        }
        let mut cycle = vec![v];
        let mut w = self.succ[v].expect("cycle vertex has a successor");
        while w != v {
            cycle.push(w);
            w = self.succ[w].expect("cycle vertex has a successor");
        }
        // Trees hanging off each cycle vertex exclude the cycle arc into it.
        let codes: Vec<String> = (0..cycle.len())
            .map(|i| {
                let prev = cycle[(i + cycle.len() - 1) % cycle.len()];
                tree_code(cycle[i], pred, Some(prev))
            })
            .collect();
        let best = (0..codes.len())
            .map(|r| codes[r..].iter().chain(&codes[..r]).cloned().collect::<Vec<_>>().concat())
            .min()
            .unwrap_or_default();
        Shape { size: comp.len(), code: format!("C{}[{best}]", cycle.len()) }
    }
}

/// AHU encoding of the in-tree rooted at `v`.
fn tree_code(v: usize, pred: &[Vec<usize>], skip: Option<usize>) -> String {
    let mut children: Vec<String> =
        pred[v].iter().filter(|&&u| Some(u) != skip).map(|&u| tree_code(u, pred, None)).collect();
    children.sort();
    format!("({})", children.concat())
}

/// Isomorphism class of a connected functional digraph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    pub size: usize,
    /// Canonical encoding: `T` plus the in-tree of the sink, or `C<len>` plus
    /// the least rotation of the trees hanging off the cycle.
    pub code: String,
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} vertices)", self.code, self.size)
    }
}

pub fn product(g: &Digraph, h: &Digraph) -> Digraph {
    g.product(h)
}

pub fn decompose(g: &Digraph) -> Result<ComponentMultiset> {
    g.decompose()
}

/// A sum of chains and cycles with coefficients in ℕ.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComponentMultiset {
    /// Cycle length to multiplicity.
    pub cycles: BTreeMap<u64, u64>,
    /// Chain length to multiplicity.
    pub chains: BTreeMap<u64, u64>,
}

impl ComponentMultiset {
    pub fn add_cycles(&mut self, d: u64, count: u64) {
        if count > 0 {
            *self.cycles.entry(d).or_insert(0) += count;
        }
    }

    pub fn add_chains(&mut self, d: u64, count: u64) {
        if count > 0 {
            *self.chains.entry(d).or_insert(0) += count;
        }
    }

    /// Each component of `x` once.
    pub fn from_element(x: &Element) -> Result<Self> {
        let mut out = ComponentMultiset::default();
        for q in x.cycles.lengths() {
            out.add_cycles(u64::try_from(q).map_err(|_| Error::Overflow("cycle length"))?, 1);
        }
        for d in x.chains.iter() {
            out.add_chains(d, 1);
        }
        Ok(out)
    }

    /// The explicit disjoint union of all components.
    pub fn to_digraph(&self) -> Digraph {
        let mut g = Digraph::empty();
        for (&d, &n) in &self.cycles {
            for _ in 0..n {
                g = g.union(&Digraph::cycle(d as usize));
            }
        }
        for (&d, &n) in &self.chains {
            for _ in 0..n {
                g = g.union(&Digraph::chain(d as usize));
            }
        }
        g
    }

    pub fn vertex_count(&self) -> u64 {
        self.cycles.iter().chain(&self.chains).map(|(d, n)| d * n).sum()
    }
}

impl fmt::Display for ComponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .cycles
            .iter()
            .map(|(d, n)| (d, n, 'C'))
            .chain(self.chains.iter().map(|(d, n)| (d, n, 'L')))
            .map(|(d, n, c)| if *n == 1 { format!("{c}{d}") } else { format!("{n}{c}{d}") })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

/// Multiplies two component sums with the ℕ product formulas:
/// `C_d C_e = gcd(d,e) C_lcm(d,e)`, `L_e C_d = d L_e` and, for `e ≤ d`,
/// `L_d L_e = (d−e+1) L_e + Σ_{i<e} 2 L_i`.
pub fn closed_form_product(a: &ComponentMultiset, b: &ComponentMultiset) -> Result<ComponentMultiset> {
    let mut out = ComponentMultiset::default();
    for (&d, &m) in &a.cycles {
        for (&e, &n) in &b.cycles {
            out.add_cycles(checked_lcm(d, e)?, d.gcd(&e) * m * n);
        }
        for (&e, &n) in &b.chains {
            out.add_chains(e, d * m * n);
        }
    }
    for (&d, &m) in &a.chains {
        for (&e, &n) in &b.cycles {
            out.add_chains(d, e * m * n);
        }
        for (&e, &n) in &b.chains {
            let (lo, hi) = (d.min(e), d.max(e));
            out.add_chains(lo, (hi - lo + 1) * m * n);
            for i in 1..lo {
                out.add_chains(i, 2 * m * n);
            }
        }
    }
    Ok(out)
}

/// Keeps the components of odd multiplicity.
pub fn mod2(a: &ComponentMultiset) -> Result<Element> {
    let cycles = a.cycles.iter().filter(|(_, n)| *n % 2 == 1).map(|(&d, _)| d);
    let chains = a.chains.iter().filter(|(_, n)| *n % 2 == 1).map(|(&d, _)| d);
    Ok(Element::new(ChainSum::from_lengths(chains)?, CycleSum::from_lengths(cycles)?))
}

/// A single component, the unit of the product cache.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Component {
    Cycle(u64),
    Chain(u64),
}

impl Component {
    fn digraph(self) -> Digraph {
        match self {
            Component::Cycle(d) => Digraph::cycle(d as usize),
            Component::Chain(d) => Digraph::chain(d as usize),
        }
    }

    fn of(x: &Element) -> Result<Vec<Component>> {
        let cycles = x
            .cycles
            .lengths()
            .into_iter()
            .map(|q| u64::try_from(q).map(Component::Cycle).map_err(|_| Error::Overflow("cycle length")));
        cycles.chain(x.chains.iter().map(|d| Ok(Component::Chain(d)))).collect()
    }
}

/// Multiplies elements by building explicit digraph products of their
/// components, caching each pair.
#[derive(Debug, Default)]
pub struct ProductOracle {
    cache: HashMap<(Component, Component), ComponentMultiset>,
}

impl ProductOracle {
    pub fn new() -> Self {
        Self::default()
    }

    fn pair(&mut self, g: Component, h: Component) -> Result<&ComponentMultiset> {
        let key = if g <= h { (g, h) } else { (h, g) };
        if let std::collections::hash_map::Entry::Vacant(e) = self.cache.entry(key) {
            let prod = key.0.digraph().product(&key.1.digraph()).decompose()?;
            e.insert(prod);
        }
        Ok(&self.cache[&key])
    }

    /// The product `x·y` with ℕ coefficients.
    pub fn multiply(&mut self, x: &Element, y: &Element) -> Result<ComponentMultiset> {
        let (xs, ys) = (Component::of(x)?, Component::of(y)?);
        let mut out = ComponentMultiset::default();
        for &g in &xs {
            for &h in &ys {
                let prod = self.pair(g, h)?.clone();
                for (d, n) in prod.cycles {
                    out.add_cycles(d, n);
                }
                for (d, n) in prod.chains {
                    out.add_chains(d, n);
                }
            }
        }
        Ok(out)
    }

    /// The product `x·y` reduced mod 2.
    pub fn multiply_mod2(&mut self, x: &Element, y: &Element) -> Result<Element> {
        mod2(&self.multiply(x, y)?)
    }
}

/// Every `x` in `space` with `a·x = b`, found by trying all candidates.
///
/// Products come from explicit digraphs. Candidates are visited in Gray-code
/// order so each step toggles one generator and adds its cached product.
/// Refuses spaces with more than 24 generators.
pub fn exhaustive_divide(a: &Element, b: &Element, space: &SearchSpace) -> Result<BTreeSet<Element>> {
    let gens = space.generators();
    if gens > 24 {
        return Err(Error::SpaceTooLarge(gens));
    }
    let mut generators = Vec::with_capacity(gens);
    for d in crate::boolean_lattice::divisors(space.k) {
        for i in 0..=space.max_level {
            generators.push(Element::from(CycleSum::cycle(d << i)?));
        }
    }
    for d in 1..=space.max_chain {
        generators.push(Element::from(ChainSum::chain(d)?));
    }

    let mut oracle = ProductOracle::new();
    let products: Vec<Element> = generators.iter().map(|g| oracle.multiply_mod2(a, g)).collect::<Result<_>>()?;

    // Index every component that can appear so sums become bit vectors.
    let mut universe: Vec<Component> =
        products.iter().chain([b]).map(Component::of).collect::<Result<Vec<_>>>()?.concat();
    universe.sort_unstable();
    universe.dedup();
    let index: HashMap<Component, usize> = universe.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let to_bits = |x: &Element| -> Result<FixedBitSet> {
        let mut bits = FixedBitSet::with_capacity(universe.len());
        for c in Component::of(x)? {
            bits.insert(index[&c]);
        }
        Ok(bits)
    };
    let product_bits: Vec<FixedBitSet> = products.iter().map(to_bits).collect::<Result<_>>()?;
    let target = to_bits(b)?;

    let mut out = BTreeSet::new();
    let mut current = FixedBitSet::with_capacity(universe.len());
    let mut chosen = vec![false; gens];
    let assemble = |chosen: &[bool]| {
        generators.iter().zip(chosen).filter(|(_, &on)| on).fold(Element::zero(), |acc, (g, _)| &acc + g)
    };
    for step in 0u64..1 << gens {
        if step > 0 {
            let flip = step.trailing_zeros() as usize;
            chosen[flip] = !chosen[flip];
            current.symmetric_difference_with(&product_bits[flip]);
        }
        if current == target {
            out.insert(assemble(&chosen));
        }
    }
    Ok(out)
}
