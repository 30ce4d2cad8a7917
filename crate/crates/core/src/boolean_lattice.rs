//! Finite lattices and the Boolean algebras `V(L)` of their F2 formal sums.
//!
//! For a finite lattice `L`, the formal sums `F2 L` with the product
//! `(Σ a_l e_l)(Σ b_m e_m) = Σ a_l b_m e_{l∧m}` form a Boolean algebra whose
//! top is `e_⊤`. Its atoms are the elements `a^l`, one per `l ∈ L`, built
//! by an even-up-set recursion over `l↓` ([`FiniteLattice::a_star`]).
//!
//! The divisor lattice `C_k` of odd `k` ([`DivisorLattice`]) makes `V(C_k)`
//! the subalgebra of idempotents of `S` supported on divisors of `k`; its
//! atoms are the sums `T_j`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use num_integer::Integer;

use crate::cycle_ring::{checked_lcm, OddSet};
use crate::error::{Error, Result};

/// A finite lattice given by an explicit meet table.
#[derive(Debug)]
pub struct FiniteLattice {
    labels: Vec<String>,
    meet: Vec<Vec<usize>>,
    top: usize,
    bottom: usize,
    /// Elements sorted so that `l > m` implies `l` comes first.
    order: Vec<usize>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    atoms: OnceLock<Vec<FixedBitSet>>,
}

impl FiniteLattice {
    /// Builds a lattice from a meet table over `labels`, validating the
    /// semilattice laws and the existence of a top element.
    pub fn from_meet_table(labels: Vec<String>, meet: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::NotALattice("empty ground set".into()));
        }
        if meet.len() != n || meet.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(Error::NotALattice("meet table is not a closed square table".into()));
        }
        for x in 0..n {
            if meet[x][x] != x {
                return Err(Error::NotALattice(format!("meet is not idempotent at {}", labels[x])));
            }
            for y in 0..n {
                if meet[x][y] != meet[y][x] {
                    return Err(Error::NotALattice(format!(
                        "meet is not commutative on {} and {}",
                        labels[x], labels[y]
                    )));
                }
                for z in 0..n {
                    if meet[meet[x][y]][z] != meet[x][meet[y][z]] {
                        return Err(Error::NotALattice(format!(
                            "meet is not associative on {}, {}, {}",
                            labels[x], labels[y], labels[z]
                        )));
                    }
                }
            }
        }
        let top = (0..n)
            .find(|&t| (0..n).all(|x| meet[x][t] == x))
            .ok_or_else(|| Error::NotALattice("no top element".into()))?;
        let bottom = (0..n).fold(top, |acc, x| meet[acc][x]);

        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in 0..n {
                if meet[x][y] == x {
                    up[x].insert(y);
                    down[y].insert(x);
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (up[x].count_ones(..), x));

        Ok(FiniteLattice { labels, meet, top, bottom, order, up, down, atoms: OnceLock::new() })
    }

    /// Builds a lattice from its Hasse diagram, given as `(lower, upper)`
    /// index pairs. Meets are derived as greatest lower bounds.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (x, d) in down.iter_mut().enumerate() {
            d.insert(x);
        }
        for &(lo, hi) in covers {
            if lo >= n || hi >= n {
                return Err(Error::NotALattice(format!("cover ({lo}, {hi}) is out of range")));
            }
            down[hi].insert(lo);
        }
        // Transitive closure: fold the down-set of every member into each set.
        for k in 0..n {
            let dk = down[k].clone();
            for d in down.iter_mut() {
                if d.contains(k) {
                    d.union_with(&dk);
                }
            }
        }
        for x in 0..n {
            for y in down[x].ones() {
                if y != x && down[y].contains(x) {
                    return Err(Error::NotALattice(format!("{} and {} lie on a cycle", labels[x], labels[y])));
                }
            }
        }
        let mut meet = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                let mut lower = down[x].clone();
                lower.intersect_with(&down[y]);
                meet[x][y] = lower.ones().find(|&g| lower.is_subset(&down[g])).ok_or_else(|| {
                    Error::NotALattice(format!("{} and {} have no greatest lower bound", labels[x], labels[y]))
                })?;
            }
        }
        Self::from_meet_table(labels, meet)
    }

    /// Builds a lattice on `elements` from a meet function, which must map
    /// every pair back into the ground set.
    pub fn from_meet_fn<T, F>(elements: &[T], meet: F) -> Result<Self>
    where
        T: PartialEq + fmt::Display,
        F: Fn(&T, &T) -> T,
    {
        let labels = elements.iter().map(T::to_string).collect();
        Self::from_meet_table(labels, meet_table(elements, &meet, false)?)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, l: usize) -> &str {
        &self.labels[l]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|s| s == label)
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn meet(&self, l: usize, m: usize) -> usize {
        self.meet[l][m]
    }

    /// `l ≤ m` in the lattice order.
    pub fn le(&self, l: usize, m: usize) -> bool {
        self.meet[l][m] == l
    }

    /// The elements directly below `l`.
    pub fn lower_covers(&self, l: usize) -> Vec<usize> {
        self.down[l]
            .ones()
            .filter(|&m| m != l)
            .filter(|&m| !self.down[l].ones().any(|z| z != l && z != m && self.le(m, z)))
            .collect()
    }

    pub fn zero(&self) -> BoolElem<'_> {
        BoolElem { lat: self, bits: FixedBitSet::with_capacity(self.len()) }
    }

    /// The unit vector `e_l`.
    pub fn unit(&self, l: usize) -> BoolElem<'_> {
        self.elem([l])
    }

    /// `e_⊤`, the top of `V(L)`.
    pub fn one(&self) -> BoolElem<'_> {
        self.unit(self.top)
    }

    /// The formal sum of the given elements; repeated indices cancel.
    pub fn elem<I: IntoIterator<Item = usize>>(&self, support: I) -> BoolElem<'_> {
        let mut x = self.zero();
        for l in support {
            x.bits.toggle(l);
        }
        x
    }

    pub fn elem_from_labels(&self, labels: &[&str]) -> Option<BoolElem<'_>> {
        let idx: Option<Vec<usize>> = labels.iter().map(|s| self.index_of(s)).collect();
        idx.map(|v| self.elem(v))
    }

    /// The atom `a^d = a*(d↓)`: contains `d`, and every `m < d` lies below
    /// an even number of its elements.
    pub fn a_star(&self, d: usize) -> BoolElem<'_> {
        BoolElem { lat: self, bits: self.atoms()[d].clone() }
    }

    fn compute_a_star(&self, d: usize) -> FixedBitSet {
        let mut a = FixedBitSet::with_capacity(self.len());
        a.insert(d);
        for &m in &self.order {
            if m != d && self.down[d].contains(m) && self.up[m].intersection_count(&a) % 2 == 1 {
                a.insert(m);
            }
        }
        a
    }

    fn atoms(&self) -> &[FixedBitSet] {
        self.atoms.get_or_init(|| (0..self.len()).map(|d| self.compute_a_star(d)).collect())
    }

    /// All atoms of `V(L)`, indexed by the element they join to.
    pub fn atom_elems(&self) -> Vec<BoolElem<'_>> {
        (0..self.len()).map(|l| self.a_star(l)).collect()
    }

    /// Every element of `V(L)`; only sensible for small lattices.
    pub fn all_elems(&self) -> impl Iterator<Item = BoolElem<'_>> {
        assert!(self.len() < 32, "V(L) has 2^{} elements", self.len());
        (0u64..1 << self.len()).map(move |mask| self.elem((0..self.len()).filter(|&l| mask >> l & 1 == 1)))
    }
}

fn meet_table<T, F>(elements: &[T], meet: &F, adjoin_top: bool) -> Result<Vec<Vec<usize>>>
where
    T: PartialEq + fmt::Display,
    F: Fn(&T, &T) -> T,
{
    let n = elements.len();
    let size = if adjoin_top { n + 1 } else { n };
    let mut table = vec![vec![0; size]; size];
    for x in 0..n {
        for y in 0..n {
            let m = meet(&elements[x], &elements[y]);
            table[x][y] = elements
                .iter()
                .position(|e| *e == m)
                .ok_or_else(|| Error::NotMeetClosed(elements[x].to_string(), elements[y].to_string()))?;
        }
    }
    if adjoin_top {
        for (x, row) in table.iter_mut().enumerate() {
            row[n] = x;
        }
        table[n] = (0..=n).collect();
    }
    Ok(table)
}

/// An element of `V(L)`: a subset of the lattice's ground set.
#[derive(Clone)]
pub struct BoolElem<'l> {
    lat: &'l FiniteLattice,
    bits: FixedBitSet,
}

impl<'l> BoolElem<'l> {
    pub fn lattice(&self) -> &'l FiniteLattice {
        self.lat
    }

    fn check(&self, other: &BoolElem<'_>) -> Result<()> {
        if std::ptr::eq(self.lat, other.lat) {
            Ok(())
        } else {
            Err(Error::MixedLattices)
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn contains(&self, l: usize) -> bool {
        self.bits.contains(l)
    }

    pub fn is_zero(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn count(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn add(&self, other: &BoolElem<'l>) -> Result<BoolElem<'l>> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    fn add_unchecked(&self, other: &BoolElem<'l>) -> BoolElem<'l> {
        let mut bits = self.bits.clone();
        bits.symmetric_difference_with(&other.bits);
        BoolElem { lat: self.lat, bits }
    }

    /// The meet-convolution `Σ_{l∈a, m∈b} e_{l∧m}`.
    pub fn mul(&self, other: &BoolElem<'l>) -> Result<BoolElem<'l>> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &BoolElem<'l>) -> BoolElem<'l> {
        let mut bits = FixedBitSet::with_capacity(self.lat.len());
        for l in self.bits.ones() {
            for m in other.bits.ones() {
                bits.toggle(self.lat.meet[l][m]);
            }
        }
        BoolElem { lat: self.lat, bits }
    }

    /// `a ∨ b = a + b + ab`.
    pub fn join(&self, other: &BoolElem<'l>) -> Result<BoolElem<'l>> {
        self.check(other)?;
        Ok(self.add_unchecked(other).add_unchecked(&self.mul_unchecked(other)))
    }

    /// `¬a = a + e_⊤`.
    pub fn not(&self) -> BoolElem<'l> {
        self.add_unchecked(&self.lat.one())
    }

    /// `a ≤ b` in `V(L)`, i.e. `ab = a`.
    pub fn leq(&self, other: &BoolElem<'l>) -> Result<bool> {
        self.check(other)?;
        Ok(self.mul_unchecked(other) == *self)
    }

    /// The lattice join of the support, `⋁a`; `None` for zero.
    pub fn support_join(&self) -> Option<usize> {
        let lat = self.lat;
        self.bits.ones().reduce(|acc, l| {
            (0..lat.len())
                .filter(|&u| lat.le(acc, u) && lat.le(l, u))
                .max_by_key(|&u| lat.up[u].count_ones(..))
                .expect("a lattice has a top")
        })
    }

    /// `|x|_l`: whether `x ≥ a^l`. For `l = ⊥` this is the parity of the
    /// support size.
    pub fn norm(&self, l: usize) -> bool {
        let a = self.lat.a_star(l);
        self.mul_unchecked(&a) == a
    }
}

impl PartialEq for BoolElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.lat, other.lat) && self.bits == other.bits
    }
}

impl Eq for BoolElem<'_> {}

impl Hash for BoolElem<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl fmt::Display for BoolElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, l) in self.bits.ones().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            f.write_str(&self.lat.labels[l])?;
        }
        Ok(())
    }
}

impl fmt::Debug for BoolElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BoolElem({self})")
    }
}

/// The interval `[lo, hi]` of `V(L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval<'l> {
    pub lo: BoolElem<'l>,
    pub hi: BoolElem<'l>,
}

impl<'l> Interval<'l> {
    pub fn new(lo: BoolElem<'l>, hi: BoolElem<'l>) -> Result<Self> {
        lo.check(&hi)?;
        Ok(Interval { lo, hi })
    }

    pub fn is_empty(&self) -> bool {
        self.lo.mul_unchecked(&self.hi) != self.lo
    }

    pub fn contains(&self, x: &BoolElem<'l>) -> Result<bool> {
        Ok(!self.is_empty() && self.lo.leq(x)? && x.leq(&self.hi)?)
    }

    /// The atoms below `hi` but not below `lo`; the interval is `lo` plus
    /// any sum of them.
    pub fn free_atoms(&self) -> Vec<BoolElem<'l>> {
        self.lo
            .lat
            .atom_elems()
            .into_iter()
            .filter(|b| b.mul_unchecked(&self.hi) == *b && b.mul_unchecked(&self.lo).is_zero())
            .collect()
    }

    /// All members, in no particular order; empty if `lo ≰ hi`.
    pub fn elems(&self) -> Vec<BoolElem<'l>> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.lo.clone()];
        for b in self.free_atoms() {
            let extended: Vec<_> = out.iter().map(|x| x.add_unchecked(&b)).collect();
            out.extend(extended);
        }
        out
    }

    /// Splits the interval by `|x|_l`: the first part holds the members with
    /// `|x|_l = 0`, the second those with `|x|_l = 1`. Either part may be an
    /// empty interval.
    pub fn parity_split(&self, l: usize) -> (Interval<'l>, Interval<'l>) {
        let a = self.lo.lat.a_star(l);
        let (lo, hi) = (&self.lo, &self.hi);
        let even = Interval { lo: lo.clone(), hi: hi.add_unchecked(&hi.mul_unchecked(&a)) };
        let odd_lo = lo.add_unchecked(&a).add_unchecked(&lo.mul_unchecked(&a));
        let odd = Interval { lo: odd_lo, hi: hi.clone() };
        (even, odd)
    }
}

/// Free-function form of [`Interval::parity_split`].
pub fn interval_parity_split<'l>(iv: &Interval<'l>, l: usize) -> (Interval<'l>, Interval<'l>) {
    iv.parity_split(l)
}

/// The Boolean algebra `V(S)` of a finite meet-semilattice `S`, realised
/// inside `V(S^⊤)` where `S^⊤` adjoins a top element.
#[derive(Debug)]
pub struct SemilatticeAlgebra {
    lattice: FiniteLattice,
}

impl SemilatticeAlgebra {
    /// Label given to the adjoined top.
    pub const TOP_LABEL: &'static str = "⊤";

    pub fn new<T, F>(elements: &[T], meet: F) -> Result<Self>
    where
        T: PartialEq + fmt::Display,
        F: Fn(&T, &T) -> T,
    {
        if elements.is_empty() {
            return Err(Error::NotALattice("empty semilattice".into()));
        }
        let mut labels: Vec<String> = elements.iter().map(T::to_string).collect();
        labels.push(Self::TOP_LABEL.to_string());
        let lattice = FiniteLattice::from_meet_table(labels, meet_table(elements, &meet, true)?)?;
        Ok(SemilatticeAlgebra { lattice })
    }

    /// The lattice `S^⊤`; its last index is the adjoined top.
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    /// `e_⊤ + a^⊤`, the top of `V(S)`.
    pub fn top(&self) -> BoolElem<'_> {
        let t = self.lattice.top();
        self.lattice.unit(t).add_unchecked(&self.lattice.a_star(t))
    }

    /// All atoms `a^l` for `l ∈ S`.
    pub fn atoms(&self) -> Vec<BoolElem<'_>> {
        let t = self.lattice.top();
        (0..self.lattice.len()).filter(|&l| l != t).map(|l| self.lattice.a_star(l)).collect()
    }

    /// Membership in `V(S)`: the adjoined top is absent.
    pub fn contains(&self, x: &BoolElem<'_>) -> bool {
        std::ptr::eq(x.lat, &self.lattice) && !x.contains(self.lattice.top())
    }

    /// Every element of `V(S)`.
    pub fn elems(&self) -> impl Iterator<Item = BoolElem<'_>> {
        self.lattice.all_elems().filter(|x| self.contains(x))
    }
}

/// Builds `V(S)` for a finite meet-semilattice.
pub fn semilattice_algebra<T, F>(elements: &[T], meet: F) -> Result<SemilatticeAlgebra>
where
    T: PartialEq + fmt::Display,
    F: Fn(&T, &T) -> T,
{
    SemilatticeAlgebra::new(elements, meet)
}

/// The lattice `C_k` of cycles `C_i` with `i | k`, where `C_i ∧ C_j =
/// C_lcm(i,j)`; its top is `C1` and its bottom `C_k`.
#[derive(Debug)]
pub struct DivisorLattice {
    k: u64,
    divisors: Vec<u64>,
    lattice: FiniteLattice,
}

/// Ascending divisors of `k`.
pub fn divisors(k: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= k {
        if k.is_multiple_of(d) {
            small.push(d);
            if d * d != k {
                large.push(k / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl DivisorLattice {
    pub fn new(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroLength);
        }
        if k.is_multiple_of(2) {
            return Err(Error::EvenModulus(k));
        }
        let divisors = divisors(k);
        let labels = divisors.iter().map(|d| format!("C{d}")).collect();
        let meet = divisors
            .iter()
            .map(|&i| divisors.iter().map(|&j| divisors.binary_search(&i.lcm(&j)).unwrap()).collect())
            .collect();
        let lattice = FiniteLattice::from_meet_table(labels, meet)?;
        Ok(DivisorLattice { k, divisors, lattice })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn index(&self, d: u64) -> Result<usize> {
        self.divisors.binary_search(&d).map_err(|_| Error::NotADivisor { k: self.k, d })
    }

    pub fn to_bool(&self, e: &OddSet) -> Result<BoolElem<'_>> {
        let idx: Result<Vec<usize>> = e.iter().map(|q| self.index(q)).collect();
        Ok(self.lattice.elem(idx?))
    }

    pub fn to_odd(&self, x: &BoolElem<'_>) -> OddSet {
        OddSet::from_sorted_set(x.support().map(|l| self.divisors[l]).collect())
    }

    /// `m(j)`: the lcm of `j` and the divisors directly below it in `C_k`.
    pub fn m(&self, j: u64) -> Result<u64> {
        let idx = self.index(j)?;
        self.lattice.lower_covers(idx).into_iter().try_fold(j, |acc, c| checked_lcm(acc, self.divisors[c]))
    }

    /// The atom `T_j = Σ_{j | l | m(j)} C_l` of `V(C_k)`.
    pub fn t_atom(&self, j: u64) -> Result<OddSet> {
        let m = self.m(j)?;
        Ok(OddSet::from_sorted_set(self.divisors.iter().copied().filter(|&l| l % j == 0 && m % l == 0).collect()))
    }

    /// All atoms `(j, T_j)` in ascending `j`.
    pub fn t_atoms(&self) -> Vec<(u64, OddSet)> {
        self.divisors.iter().map(|&j| (j, self.t_atom(j).expect("j divides k"))).collect()
    }

    /// The indices `j` with `C_i = Σ_j T_j`, namely `i | j | k`.
    pub fn expand_in_t(&self, i: u64) -> Result<Vec<u64>> {
        self.index(i)?;
        Ok(self.divisors.iter().copied().filter(|j| j % i == 0).collect())
    }
}
