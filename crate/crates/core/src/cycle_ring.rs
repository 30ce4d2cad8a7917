//! The ring `S = F2 C` of cycle sums.
//!
//! Every cycle length factors as `q′·2^i` with `q′` odd, and a cycle sum is
//! stored in those coordinates: level `i` maps to the [`OddSet`] of odd parts
//! `q′` present there. This is the dyadic decomposition
//! `x = Σ_i x_i C_{2^i}` with every `x_i` an idempotent.
//!
//! Odd sets form the Boolean algebra `S0` of idempotents: meet is the ring
//! product, join is `e + f + ef`, and the complement is `C1 + e`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul};

use num_integer::Integer;

use crate::error::{Error, Result};

/// `lcm(a, b)`, failing on `u64` overflow.
pub fn checked_lcm(a: u64, b: u64) -> Result<u64> {
    (a / a.gcd(&b)).checked_mul(b).ok_or(Error::Overflow("lcm"))
}

/// An idempotent of `S`: a finite set of odd cycle lengths.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OddSet {
    lengths: BTreeSet<u64>,
}

impl OddSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `C1`, the top of `S0` and the identity of `S`.
    pub fn one() -> Self {
        Self::single(1)
    }

    /// Builds `C_q` for odd `q`.
    ///
    /// # Panics
    /// If `q` is even.
    pub fn single(q: u64) -> Self {
        assert!(q % 2 == 1, "odd set member {q} must be odd");
        OddSet { lengths: BTreeSet::from([q]) }
    }

    /// Collects odd lengths with F2 semantics: repeated lengths cancel.
    pub fn from_lengths<I: IntoIterator<Item = u64>>(lengths: I) -> Result<Self> {
        let mut s = OddSet::empty();
        for q in lengths {
            match q {
                0 => return Err(Error::ZeroLength),
                q if q % 2 == 0 => return Err(Error::EvenLength(q)),
                q => s.toggle(q),
            }
        }
        Ok(s)
    }

    pub(crate) fn from_sorted_set(lengths: BTreeSet<u64>) -> Self {
        debug_assert!(lengths.iter().all(|q| q % 2 == 1));
        OddSet { lengths }
    }

    pub(crate) fn toggle(&mut self, q: u64) {
        if !self.lengths.remove(&q) {
            self.lengths.insert(q);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn contains(&self, q: u64) -> bool {
        self.lengths.contains(&q)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = u64> + '_ {
        self.lengths.iter().copied()
    }

    pub fn is_one(&self) -> bool {
        self.lengths.len() == 1 && self.lengths.contains(&1)
    }

    pub fn add(&self, other: &OddSet) -> OddSet {
        OddSet { lengths: self.lengths.symmetric_difference(&other.lengths).copied().collect() }
    }

    /// The ring product, an F2 convolution under `lcm`.
    pub fn try_mul(&self, other: &OddSet) -> Result<OddSet> {
        let mut out = OddSet::empty();
        for p in self.iter() {
            for q in other.iter() {
                out.toggle(checked_lcm(p, q)?);
            }
        }
        Ok(out)
    }

    pub fn meet(&self, other: &OddSet) -> OddSet {
        self * other
    }

    pub fn join(&self, other: &OddSet) -> OddSet {
        &self.add(other) + &(self * other)
    }

    pub fn not(&self) -> OddSet {
        self.add(&OddSet::one())
    }

    /// `e ≤ f` in `S0`, i.e. `ef = e`.
    pub fn leq(&self, other: &OddSet) -> bool {
        &(self * other) == self
    }

    /// The lcm of all members, `1` for the empty set.
    pub fn lcm(&self) -> Result<u64> {
        self.iter().try_fold(1, checked_lcm)
    }

    /// Keeps the members dividing `k`.
    pub fn restrict_div(&self, k: u64) -> OddSet {
        OddSet { lengths: self.lengths.iter().copied().filter(|q| k.is_multiple_of(*q)).collect() }
    }
}

impl FromIterator<u64> for OddSet {
    /// # Panics
    /// If any length is zero or even; use [`OddSet::from_lengths`] to
    /// validate instead.
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        OddSet::from_lengths(iter).expect("odd set members must be odd")
    }
}

impl Add for &OddSet {
    type Output = OddSet;
    fn add(self, rhs: &OddSet) -> OddSet {
        OddSet::add(self, rhs)
    }
}

impl Mul for &OddSet {
    type Output = OddSet;
    /// # Panics
    /// On lcm overflow; use [`OddSet::try_mul`] to handle it.
    fn mul(self, rhs: &OddSet) -> OddSet {
        self.try_mul(rhs).expect("cycle length overflow in product")
    }
}

impl fmt::Display for OddSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&CycleSum::idempotent(self.clone()), f)
    }
}

/// An element of `S = F2 C`, stored by dyadic level.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleSum {
    levels: BTreeMap<u32, OddSet>,
}

impl CycleSum {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::idempotent(OddSet::one())
    }

    /// The idempotent `e` viewed as an element of `S` at level 0.
    pub fn idempotent(e: OddSet) -> Self {
        Self::dyadic(e, 0)
    }

    /// `e · C_{2^level}`.
    pub fn dyadic(e: OddSet, level: u32) -> Self {
        let mut levels = BTreeMap::new();
        if !e.is_empty() {
            levels.insert(level, e);
        }
        CycleSum { levels }
    }

    /// Builds `Σ_i x_i C_{2^i}`; empty components are dropped and repeated
    /// levels are added together.
    pub fn from_levels<I: IntoIterator<Item = (u32, OddSet)>>(levels: I) -> Self {
        let mut x = CycleSum::zero();
        for (i, e) in levels {
            x.add_at(i, &e);
        }
        x
    }

    /// The single cycle `C_len`.
    pub fn cycle(len: u64) -> Result<Self> {
        if len == 0 {
            return Err(Error::ZeroLength);
        }
        let i = len.trailing_zeros();
        Ok(Self::dyadic(OddSet::single(len >> i), i))
    }

    /// Reduces a multiset of cycle lengths mod 2.
    pub fn from_lengths<I: IntoIterator<Item = u64>>(lengths: I) -> Result<Self> {
        let mut x = CycleSum::zero();
        for len in lengths {
            x = &x + &CycleSum::cycle(len)?;
        }
        Ok(x)
    }

    fn add_at(&mut self, level: u32, e: &OddSet) {
        if e.is_empty() {
            return;
        }
        let sum = match self.levels.get(&level) {
            Some(cur) => cur + e,
            None => e.clone(),
        };
        if sum.is_empty() {
            self.levels.remove(&level);
        } else {
            self.levels.insert(level, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.levels.is_empty()
    }

    /// Idempotents of `S` are exactly the sums of odd cycles.
    pub fn is_idempotent(&self) -> bool {
        self.levels.keys().all(|&i| i == 0)
    }

    /// The nonempty components `(i, x_i)` in increasing level.
    pub fn levels(&self) -> impl Iterator<Item = (u32, &OddSet)> {
        self.levels.iter().map(|(&i, e)| (i, e))
    }

    /// The component `x_i`, empty when absent.
    pub fn component(&self, i: u32) -> OddSet {
        self.levels.get(&i).cloned().unwrap_or_default()
    }

    /// `x_0`, the odd-length cycles.
    pub fn odd_part(&self) -> OddSet {
        self.component(0)
    }

    /// `x_+ = x - x_0`.
    pub fn even_part(&self) -> CycleSum {
        CycleSum { levels: self.levels.range(1..).map(|(&i, e)| (i, e.clone())).collect() }
    }

    /// `x⁺`, the join of all components: the least idempotent fixing `x`.
    pub fn plus_closure(&self) -> OddSet {
        self.levels.values().fold(OddSet::empty(), |acc, e| acc.join(e))
    }

    /// The largest occupied level, `0` for zero.
    pub fn max_level(&self) -> u32 {
        self.levels.keys().next_back().copied().unwrap_or(0)
    }

    /// `(K(a), N(a))`: the lcm of all odd parts and the largest level.
    /// Zero gives `(1, 0)`.
    pub fn stats(&self) -> Result<(u64, u32)> {
        let k = self.levels.values().try_fold(1, |acc, e| checked_lcm(acc, e.lcm()?))?;
        Ok((k, self.max_level()))
    }

    /// Number of cycles in the sum.
    pub fn count(&self) -> usize {
        self.levels.values().map(OddSet::len).sum()
    }

    /// All cycle lengths, ascending.
    pub fn lengths(&self) -> Vec<u128> {
        let mut out: Vec<u128> =
            self.levels.iter().flat_map(|(&i, e)| e.iter().map(move |q| u128::from(q) << i)).collect();
        out.sort_unstable();
        out
    }

    /// `a_{-n}`: drops every level above `n`.
    pub fn restrict_level(&self, n: u32) -> CycleSum {
        CycleSum { levels: self.levels.range(..=n).map(|(&i, e)| (i, e.clone())).collect() }
    }

    /// `a_{|k}`: keeps the cycles whose odd part divides the odd number `k`.
    pub fn restrict_div(&self, k: u64) -> Result<CycleSum> {
        if k.is_multiple_of(2) {
            return Err(Error::EvenModulus(k));
        }
        Ok(CycleSum::from_levels(self.levels().map(|(i, e)| (i, e.restrict_div(k)))))
    }

    /// Adds two cycle sums level by level.
    pub fn add(&self, other: &CycleSum) -> CycleSum {
        let mut out = self.clone();
        for (i, e) in other.levels() {
            out.add_at(i, e);
        }
        out
    }

    /// The ring product: `z_0 = x_0 y_0` and `z_i = x_0 y_i + x_i y_0`.
    pub fn try_mul(&self, other: &CycleSum) -> Result<CycleSum> {
        let (x0, y0) = (self.odd_part(), other.odd_part());
        let mut z = CycleSum::zero();
        z.add_at(0, &x0.try_mul(&y0)?);
        for (i, yi) in other.levels.range(1..) {
            z.add_at(*i, &x0.try_mul(yi)?);
        }
        for (i, xi) in self.levels.range(1..) {
            z.add_at(*i, &xi.try_mul(&y0)?);
        }
        Ok(z)
    }

    /// `x^e`, with `x^0 = C1`.
    pub fn pow(&self, e: u64) -> CycleSum {
        let (mut base, mut e, mut acc) = (self.clone(), e, CycleSum::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Add for &CycleSum {
    type Output = CycleSum;
    fn add(self, rhs: &CycleSum) -> CycleSum {
        CycleSum::add(self, rhs)
    }
}

impl Mul for &CycleSum {
    type Output = CycleSum;
    /// # Panics
    /// On lcm overflow; use [`CycleSum::try_mul`] to handle it.
    fn mul(self, rhs: &CycleSum) -> CycleSum {
        self.try_mul(rhs).expect("cycle length overflow in product")
    }
}

impl From<OddSet> for CycleSum {
    fn from(e: OddSet) -> Self {
        CycleSum::idempotent(e)
    }
}

/// `C_m · C_n`: `C_lcm(m,n)` if `gcd(m,n)` is odd, else `0`.
pub fn mul_cycles(m: u64, n: u64) -> Result<CycleSum> {
    if m == 0 || n == 0 {
        return Err(Error::ZeroLength);
    }
    if m.gcd(&n).is_multiple_of(2) {
        return Ok(CycleSum::zero());
    }
    CycleSum::cycle(checked_lcm(m, n)?)
}

/// Every cycle sum whose cycles have odd part dividing `k` and level at
/// most `n`, i.e. the sums `x` with `x = (x_{-n})_{|k}`.
///
/// Refuses spaces with more than 24 generators.
pub fn restricted_space(k: u64, n: u32) -> Result<Vec<CycleSum>> {
    if k.is_multiple_of(2) {
        return Err(Error::EvenModulus(k));
    }
    let divisors = crate::boolean_lattice::divisors(k);
    let gens = divisors.len() * (n as usize + 1);
    if gens > 24 {
        return Err(Error::SpaceTooLarge(gens));
    }
    Ok((0u32..1 << gens)
        .map(|mask| {
            CycleSum::from_levels((0..=n).map(|i| {
                let base = i as usize * divisors.len();
                let e = divisors.iter().enumerate().filter(|(j, _)| mask >> (base + j) & 1 == 1).map(|(_, &d)| d);
                (i, OddSet::from_sorted_set(e.collect()))
            }))
        })
        .collect())
}

impl fmt::Display for CycleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lengths = self.lengths();
        if lengths.is_empty() {
            return f.write_str("0");
        }
        for (n, len) in lengths.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "C{len}")?;
        }
        Ok(())
    }
}
