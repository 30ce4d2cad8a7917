//! Formal sums with F2 coefficients over an arbitrary generator set.
//!
//! A coefficient in F2 is either 0 or 1, so a formal sum is just its support.
//! Addition is symmetric difference; multiplication expands bilinearly
//! through a [`ProductRule`] defined on pairs of generators.
//!
//! [`check_axioms`] evaluates the commutativity, identity and associativity
//! conditions that make such a product rule yield a semiring. It only tests
//! the finitely many triples it is given, so it can refute a rule but never
//! prove one correct.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A generator of the injective-partial-transformation semiring.
///
/// The derived order puts every cycle before every chain, each sorted by
/// length, which fixes the canonical print order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    Cycle(u64),
    Chain(u64),
}

impl Generator {
    pub fn length(&self) -> u64 {
        match *self {
            Generator::Cycle(d) | Generator::Chain(d) => d,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Cycle(d) => write!(f, "C{d}"),
            Generator::Chain(d) => write!(f, "L{d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalSum<G: Ord> {
    support: BTreeSet<G>,
}

impl<G: Ord> Default for FormalSum<G> {
    fn default() -> Self {
        FormalSum { support: BTreeSet::new() }
    }
}

impl<G: Ord + Clone> FormalSum<G> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn singleton(g: G) -> Self {
        FormalSum { support: BTreeSet::from([g]) }
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn contains(&self, g: &G) -> bool {
        self.support.contains(g)
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &G> {
        self.support.iter()
    }

    /// Adds a single generator, cancelling it if already present.
    pub fn toggle(&mut self, g: G) {
        if !self.support.remove(&g) {
            self.support.insert(g);
        }
    }

    /// F2 addition: the symmetric difference of supports.
    pub fn add(&self, other: &Self) -> Self {
        FormalSum { support: self.support.symmetric_difference(&other.support).cloned().collect() }
    }

    pub fn mul<R: ProductRule<G> + ?Sized>(&self, other: &Self, rule: &R) -> Result<Self> {
        mul(self, other, rule)
    }
}

impl<G: Ord + Clone> FromIterator<G> for FormalSum<G> {
    /// Collects with F2 semantics: a generator listed twice cancels.
    fn from_iter<I: IntoIterator<Item = G>>(iter: I) -> Self {
        let mut s = FormalSum::zero();
        for g in iter {
            s.toggle(g);
        }
        s
    }
}

impl<G: Ord + fmt::Display> fmt::Display for FormalSum<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return f.write_str("0");
        }
        for (n, g) in self.support.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// A product on generators, `g · h ∈ F2 G`, with an optional identity.
pub trait ProductRule<G: Ord> {
    fn pair_product(&self, g: &G, h: &G) -> Result<FormalSum<G>>;

    fn identity(&self) -> Option<G>;
}

impl<G: Ord, R: ProductRule<G> + ?Sized> ProductRule<G> for &R {
    fn pair_product(&self, g: &G, h: &G) -> Result<FormalSum<G>> {
        (**self).pair_product(g, h)
    }

    fn identity(&self) -> Option<G> {
        (**self).identity()
    }
}

/// Bilinear extension of `rule` to formal sums.
pub fn mul<G, R>(s: &FormalSum<G>, t: &FormalSum<G>, rule: &R) -> Result<FormalSum<G>>
where
    G: Ord + Clone,
    R: ProductRule<G> + ?Sized,
{
    let mut out = FormalSum::zero();
    for g in &s.support {
        for h in &t.support {
            for k in rule.pair_product(g, h)?.support {
                out.toggle(k);
            }
        }
    }
    Ok(out)
}

pub fn add<G: Ord + Clone>(s: &FormalSum<G>, t: &FormalSum<G>) -> FormalSum<G> {
    s.add(t)
}

/// `C_m · C_n = gcd(m,n) C_lcm(m,n)`, reduced mod 2. Undefined on chains.
#[derive(Debug, Clone, Copy, Default)]
pub struct CycleRule;

/// The full product on chains and cycles, reduced mod 2.
#[derive(Debug, Clone, Copy, Default)]
pub struct ChainCycleRule;

fn cycle_pair(m: u64, n: u64) -> Result<Option<u64>> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroLength);
    }
    if m.gcd(&n).is_multiple_of(2) {
        return Ok(None);
    }
    (m / m.gcd(&n)).checked_mul(n).map(Some).ok_or(Error::Overflow("lcm"))
}

impl ProductRule<Generator> for CycleRule {
    fn pair_product(&self, g: &Generator, h: &Generator) -> Result<FormalSum<Generator>> {
        match (*g, *h) {
            (Generator::Cycle(m), Generator::Cycle(n)) => {
                Ok(cycle_pair(m, n)?.map(|l| FormalSum::singleton(Generator::Cycle(l))).unwrap_or_default())
            }
            _ => Err(Error::RuleUndefined(g.to_string(), h.to_string())),
        }
    }

    fn identity(&self) -> Option<Generator> {
        Some(Generator::Cycle(1))
    }
}

impl ProductRule<Generator> for ChainCycleRule {
    fn pair_product(&self, g: &Generator, h: &Generator) -> Result<FormalSum<Generator>> {
        use Generator::*;
        if g.length() == 0 || h.length() == 0 {
            return Err(Error::ZeroLength);
        }
        let out = match (*g, *h) {
            (Cycle(m), Cycle(n)) => cycle_pair(m, n)?.map(Cycle),
            (Chain(e), Chain(d)) => ((e + d) % 2 == 0).then(|| Chain(e.min(d))),
            (Chain(e), Cycle(d)) | (Cycle(d), Chain(e)) => (d % 2 == 1).then_some(Chain(e)),
        };
        Ok(out.map(FormalSum::singleton).unwrap_or_default())
    }

    fn identity(&self) -> Option<Generator> {
        Some(Generator::Cycle(1))
    }
}

/// A product rule given by a closure; handy for building test rules.
pub struct FnRule<G, F> {
    f: F,
    identity: Option<G>,
}

impl<G, F> FnRule<G, F>
where
    G: Ord + Clone,
    F: Fn(&G, &G) -> Result<FormalSum<G>>,
{
    pub fn new(f: F, identity: Option<G>) -> Self {
        FnRule { f, identity }
    }
}

impl<G, F> ProductRule<G> for FnRule<G, F>
where
    G: Ord + Clone,
    F: Fn(&G, &G) -> Result<FormalSum<G>>,
{
    fn pair_product(&self, g: &G, h: &G) -> Result<FormalSum<G>> {
        (self.f)(g, h)
    }

    fn identity(&self) -> Option<G> {
        self.identity.clone()
    }
}

/// A base rule with some entries of its product table replaced.
///
/// Overrides are stored for the ordered pair given; set both orders to keep
/// the table commutative.
pub struct OverrideRule<G: Ord, R> {
    base: R,
    overrides: std::collections::BTreeMap<(G, G), FormalSum<G>>,
}

impl<G: Ord + Clone, R: ProductRule<G>> OverrideRule<G, R> {
    pub fn new(base: R) -> Self {
        OverrideRule { base, overrides: Default::default() }
    }

    pub fn with(mut self, g: G, h: G, product: FormalSum<G>) -> Self {
        self.overrides.insert((g, h), product);
        self
    }
}

impl<G: Ord + Clone, R: ProductRule<G>> ProductRule<G> for OverrideRule<G, R> {
    fn pair_product(&self, g: &G, h: &G) -> Result<FormalSum<G>> {
        match self.overrides.get(&(g.clone(), h.clone())) {
            Some(p) => Ok(p.clone()),
            None => self.base.pair_product(g, h),
        }
    }

    fn identity(&self) -> Option<G> {
        self.base.identity()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation<G> {
    NotCommutative {
        g: G,
        h: G,
    },
    NoIdentity,
    IdentityFails {
        g: G,
    },
    /// `(g·h)·i` and `(h·i)·g` differ in the coefficient of `k`.
    NotAssociative {
        g: G,
        h: G,
        i: G,
        k: G,
    },
    /// The rule could not evaluate a product needed by the check.
    Undefined {
        g: G,
        h: G,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomReport<G> {
    /// Every pair and triple over the generator set satisfied the axioms.
    Pass {
        triples: usize,
    },
    Violation(AxiomViolation<G>),
}

impl<G> AxiomReport<G> {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomReport::Pass { .. })
    }
}

/// Tests commutativity, the identity law and the associativity condition
/// `Σ_j (g·h)_j (j·i)_k = Σ_j (h·i)_j (j·g)_k` over all pairs and triples of
/// `gens`, returning the first violation found.
pub fn check_axioms<G, R>(rule: &R, gens: &[G]) -> AxiomReport<G>
where
    G: Ord + Clone,
    R: ProductRule<G> + ?Sized,
{
    let product = |g: &G, h: &G| -> std::result::Result<FormalSum<G>, AxiomViolation<G>> {
        rule.pair_product(g, h).map_err(|_| AxiomViolation::Undefined { g: g.clone(), h: h.clone() })
    };
    let extend = |s: &FormalSum<G>, i: &G| -> std::result::Result<FormalSum<G>, AxiomViolation<G>> {
        let mut out = FormalSum::zero();
        for j in s.iter() {
            for k in product(j, i)?.support {
                out.toggle(k);
            }
        }
        Ok(out)
    };

    let run = || -> std::result::Result<usize, AxiomViolation<G>> {
        for g in gens {
            for h in gens {
                if product(g, h)? != product(h, g)? {
                    return Err(AxiomViolation::NotCommutative { g: g.clone(), h: h.clone() });
                }
            }
        }

        let e = rule.identity().ok_or(AxiomViolation::NoIdentity)?;
        for g in gens {
            let single = FormalSum::singleton(g.clone());
            if product(&e, g)? != single || product(g, &e)? != single {
                return Err(AxiomViolation::IdentityFails { g: g.clone() });
            }
        }

        let mut triples = 0;
        for g in gens {
            for h in gens {
                let gh = product(g, h)?;
                for i in gens {
                    let left = extend(&gh, i)?;
                    let right = extend(&product(h, i)?, g)?;
                    if let Some(k) = left.add(&right).iter().next() {
                        return Err(AxiomViolation::NotAssociative {
                            g: g.clone(),
                            h: h.clone(),
                            i: i.clone(),
                            k: k.clone(),
                        });
                    }
                    triples += 1;
                }
            }
        }
        Ok(triples)
    };

    match run() {
        Ok(triples) => AxiomReport::Pass { triples },
        Err(v) => AxiomReport::Violation(v),
    }
}
