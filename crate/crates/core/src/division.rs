//! The complete solution set of `a·x = b` in `S`.
//!
//! Write `n = max(N(a), N(b))` and, for `0 ≤ i ≤ n`,
//! `l_i = b_i + a_0 b_i + a_i b_0` and `u_i = l_i + a_i + C1`. Then `x` solves
//! the equation exactly when
//!
//! * `x_0 ∈ [λ_0, υ_0]` with `λ_0 = ⋁ l_i` and `υ_0 = ⋀ u_i`,
//! * `x_i ∈ [λ_i, λ_i + a_0 + C1]` with `λ_i = a_0 b_i + a_i b_0` for `1 ≤ i ≤ n`,
//! * `x_i ≤ a_0 + C1` for every `i > n`.
//!
//! Every bound is an idempotent built from the components of `a` and `b`, so
//! all of them live in the divisor algebra `V(C_k)` of any `k` divisible by
//! `lcm(K(a), K(b))`. That is what makes [`enumerate_restricted`] exact.

use crate::boolean_lattice::DivisorLattice;
use crate::cycle_ring::{checked_lcm, CycleSum, OddSet};
use crate::error::{Error, Result};

/// Bounds `[lo, hi]` on one dyadic component of a solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelBounds {
    pub lo: OddSet,
    pub hi: OddSet,
}

impl LevelBounds {
    pub fn is_empty(&self) -> bool {
        !self.lo.leq(&self.hi)
    }

    pub fn contains(&self, e: &OddSet) -> bool {
        self.lo.leq(e) && e.leq(&self.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSolutionSet {
    pub solvable: bool,
    pub lambda0: OddSet,
    pub upsilon0: OddSet,
    /// Bounds for levels `1..=n`, in order.
    pub head: Vec<LevelBounds>,
    /// Upper bound for every level above `n`; the lower bound there is 0.
    pub tail_hi: OddSet,
    /// The level horizon `max(N(a), N(b))`.
    pub n: u32,
    modulus: u64,
    a: CycleSum,
    b: CycleSum,
}

impl IntervalSolutionSet {
    /// `lcm(K(a), K(b))`: every bound is supported on its divisors.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn a(&self) -> &CycleSum {
        &self.a
    }

    pub fn b(&self) -> &CycleSum {
        &self.b
    }

    /// Bounds on the component `x_i`.
    pub fn bounds(&self, i: u32) -> LevelBounds {
        match i {
            0 => LevelBounds { lo: self.lambda0.clone(), hi: self.upsilon0.clone() },
            i if i <= self.n => self.head[i as usize - 1].clone(),
            _ => LevelBounds { lo: OddSet::empty(), hi: self.tail_hi.clone() },
        }
    }

    /// The solution taking every lower endpoint.
    pub fn min_solution(&self) -> Result<CycleSum> {
        if !self.solvable {
            return Err(Error::Unsolvable);
        }
        let head = self.head.iter().zip(1..).map(|(lb, i)| (i, lb.lo.clone()));
        Ok(CycleSum::from_levels(std::iter::once((0, self.lambda0.clone())).chain(head)))
    }

    /// Whether `x` solves the equation, decided from the bounds alone.
    pub fn membership(&self, x: &CycleSum) -> bool {
        self.solvable
            && self.bounds(0).contains(&x.odd_part())
            && (1..=self.n).all(|i| self.bounds(i).contains(&x.component(i)))
            && x.levels().filter(|&(i, _)| i > self.n).all(|(_, e)| e.leq(&self.tail_hi))
    }
}

/// Solves `a·x = b`.
///
/// Fails only if `lcm(K(a), K(b))` overflows.
pub fn solve(a: &CycleSum, b: &CycleSum) -> Result<IntervalSolutionSet> {
    let (ka, na) = a.stats()?;
    let (kb, nb) = b.stats()?;
    let modulus = checked_lcm(ka, kb)?;
    let n = na.max(nb);
    let one = OddSet::one();
    let (a0, b0) = (a.odd_part(), b.odd_part());

    let mut lambda0 = OddSet::empty();
    let mut upsilon0 = one.clone();
    let mut head = Vec::with_capacity(n as usize);
    for i in 0..=n {
        let (ai, bi) = (a.component(i), b.component(i));
        let cross = &(&a0 * &bi) + &(&ai * &b0);
        let l = &bi + &cross;
        let u = &(&l + &ai) + &one;
        lambda0 = lambda0.join(&l);
        upsilon0 = upsilon0.meet(&u);
        if i > 0 {
            let hi = &(&cross + &a0) + &one;
            head.push(LevelBounds { lo: cross, hi });
        }
    }
    let tail_hi = &a0 + &one;
    Ok(IntervalSolutionSet {
        solvable: lambda0.leq(&upsilon0),
        lambda0,
        upsilon0,
        head,
        tail_hi,
        n,
        modulus,
        a: a.clone(),
        b: b.clone(),
    })
}

/// Free-function form of [`IntervalSolutionSet::min_solution`].
pub fn min_solution(sol: &IntervalSolutionSet) -> Result<CycleSum> {
    sol.min_solution()
}

/// Free-function form of [`IntervalSolutionSet::membership`].
pub fn membership(sol: &IntervalSolutionSet, x: &CycleSum) -> bool {
    sol.membership(x)
}

/// The annihilator `{z : a·z = 0}` of `a`, characterised by
/// `z_0 ≤ a⁺ + C1` and `z⁺ ≤ a_0 + C1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annihilators {
    /// `a⁺ + C1`, the bound on `z_0`.
    pub odd_hi: OddSet,
    /// `a_0 + C1`, the bound on `z⁺`.
    pub closure_hi: OddSet,
}

impl Annihilators {
    pub fn accepts(&self, z: &CycleSum) -> bool {
        z.odd_part().leq(&self.odd_hi) && z.plus_closure().leq(&self.closure_hi)
    }
}

pub fn annihilators(a: &CycleSum) -> Annihilators {
    Annihilators { odd_hi: a.plus_closure().not(), closure_hi: a.odd_part().not() }
}

/// One level of the restricted search: `lo` plus any subset of `free`.
#[derive(Debug, Clone)]
struct LevelWalk {
    level: u32,
    lo: OddSet,
    free: Vec<OddSet>,
}

/// Lazily enumerates the solutions supported on divisors of `k·2^n`.
#[derive(Debug, Clone)]
pub struct RestrictedSolutions {
    walks: Vec<LevelWalk>,
    /// One binary counter per level; `None` once exhausted.
    digits: Option<Vec<Vec<bool>>>,
}

impl RestrictedSolutions {
    fn empty() -> Self {
        RestrictedSolutions { walks: Vec::new(), digits: None }
    }

    /// Number of solutions still to come at construction, saturating.
    pub fn total(&self) -> u128 {
        if self.digits.is_none() {
            return 0;
        }
        let bits: usize = self.walks.iter().map(|w| w.free.len()).sum();
        1u128.checked_shl(bits as u32).unwrap_or(u128::MAX)
    }

    fn current(&self, digits: &[Vec<bool>]) -> CycleSum {
        CycleSum::from_levels(self.walks.iter().zip(digits).map(|(w, d)| {
            let e = w.free.iter().zip(d).filter(|(_, &on)| on).fold(w.lo.clone(), |acc, (t, _)| &acc + t);
            (w.level, e)
        }))
    }
}

impl Iterator for RestrictedSolutions {
    type Item = CycleSum;

    fn next(&mut self) -> Option<CycleSum> {
        let mut digits = self.digits.take()?;
        let out = self.current(&digits);
        // Odometer: the highest level turns fastest, level 0 slowest.
        let mut carry = true;
        for d in digits.iter_mut().rev() {
            for bit in d.iter_mut() {
                *bit = !*bit;
                if *bit {
                    carry = false;
                    break;
                }
            }
            if !carry {
                break;
            }
        }
        if !carry {
            self.digits = Some(digits);
        }
        Some(out)
    }
}

/// Enumerates every solution `x` with `x = (x_{-n})_{|k}`.
///
/// Requires `lcm(K(a), K(b)) | k` and `n ≥ max(N(a), N(b))`; under those
/// conditions the stream is complete for that space. Unsolvable equations
/// yield an empty stream.
pub fn enumerate_restricted(sol: &IntervalSolutionSet, k: u64, n: u32) -> Result<RestrictedSolutions> {
    if k.is_multiple_of(2) {
        return Err(Error::EvenModulus(k));
    }
    if !k.is_multiple_of(sol.modulus) {
        return Err(Error::UnsoundRestriction { k, required: sol.modulus });
    }
    if n < sol.n {
        return Err(Error::HorizonTooSmall { given: n, required: sol.n });
    }
    if !sol.solvable {
        return Ok(RestrictedSolutions::empty());
    }
    let lattice = DivisorLattice::new(k)?;
    let atoms = lattice.t_atoms();
    let walks: Vec<LevelWalk> = (0..=n)
        .map(|level| {
            let LevelBounds { lo, hi } = sol.bounds(level);
            let free =
                atoms.iter().filter(|(_, t)| t.leq(&hi) && (t * &lo).is_empty()).map(|(_, t)| t.clone()).collect();
            LevelWalk { level, lo, free }
        })
        .collect();
    let digits = walks.iter().map(|w| vec![false; w.free.len()]).collect();
    Ok(RestrictedSolutions { walks, digits: Some(digits) })
}
