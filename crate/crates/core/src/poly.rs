//! Univariate polynomials over `S`.
//!
//! Since `x⁴ = x²` for every `x ∈ S`, every polynomial function is cubic.
//! A cubic `P(x) = a x³ + b x² + c x + d` is injective exactly when it is
//! surjective, exactly when `(a_0, b_0, c_0) = (0, 0, C1)`; the inverse is
//! then explicit. For the remaining polynomials a collision pair and an
//! unreached value can both be constructed.

use std::fmt;

use crate::cycle_ring::{checked_lcm, restricted_space, CycleSum, OddSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CubicPoly {
    pub a: CycleSum,
    pub b: CycleSum,
    pub c: CycleSum,
    pub d: CycleSum,
}

impl CubicPoly {
    pub fn new(a: CycleSum, b: CycleSum, c: CycleSum, d: CycleSum) -> Self {
        CubicPoly { a, b, c, d }
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        CubicPoly { c: CycleSum::one(), ..Default::default() }
    }

    /// `a + b + c`, whose even part drives both the inverse and the
    /// degeneracy witnesses.
    fn abc(&self) -> CycleSum {
        &(&self.a + &self.b) + &self.c
    }

    pub fn eval(&self, x: &CycleSum) -> CycleSum {
        let x2 = x * x;
        let x3 = &x2 * x;
        let terms = [&self.a * &x3, &self.b * &x2, &self.c * x];
        terms.iter().fold(self.d.clone(), |acc, t| &acc + t)
    }

    pub fn is_bijective(&self) -> bool {
        self.a.odd_part().is_empty() && self.b.odd_part().is_empty() && self.c.odd_part().is_one()
    }

    /// The unique `x` with `P(x) = s`:
    /// `x_0 = d_0 + s_0` and `x_+ = d_+ + s_+ + (a + b + c)_+ (d_0 + s_0)`.
    pub fn solve_bijective(&self, s: &CycleSum) -> Result<CycleSum> {
        if !self.is_bijective() {
            return Err(Error::NotBijective);
        }
        let x0 = CycleSum::idempotent(&self.d.odd_part() + &s.odd_part());
        let x_plus = &(&self.d.even_part() + &s.even_part()) + &(&self.abc().even_part() * &x0);
        Ok(&x0 + &x_plus)
    }

    /// Two distinct inputs with the same value.
    ///
    /// When `(a_0, c_0) ≠ (0, C1)`, picks `x_0 ∈ {0, C1}` with
    /// `μ_0 = a_0 x_0 + c_0 ≠ C1` and pairs `x_0` with `x_0 + (μ_0 + C1) C2`.
    /// Otherwise `b_0 ≠ 0` and the pair is `(0, b_0 + (a + b + c)_+ b_0)`.
    pub fn witness_degenerate(&self) -> Result<(CycleSum, CycleSum)> {
        if self.is_bijective() {
            return Err(Error::Bijective);
        }
        let (a0, c0) = (self.a.odd_part(), self.c.odd_part());
        let pair = if a0.is_empty() && c0.is_one() {
            let b0 = CycleSum::idempotent(self.b.odd_part());
            (CycleSum::zero(), &b0 + &(&self.abc().even_part() * &b0))
        } else {
            let x0 = if c0.is_one() { OddSet::one() } else { Default::default() };
            let mu0 = &(&a0 * &x0) + &c0;
            let shift = CycleSum::dyadic(mu0.not(), 1);
            let x = CycleSum::idempotent(x0);
            let y = &x + &shift;
            (x, y)
        };
        assert!(pair.0 != pair.1 && self.eval(&pair.0) == self.eval(&pair.1), "collision witness failed for {self}");
        Ok(pair)
    }

    /// A value outside the image, with the coefficient condition it exposes.
    ///
    /// The targets are those for `P - d`, shifted by the constant term.
    pub fn unreached_target(&self) -> Result<UnreachedTarget> {
        let abc = self.abc();
        let full = &CycleSum::from_lengths([1, 2]).expect("nonzero lengths") + &abc.even_part();
        let c2 = CycleSum::cycle(2).expect("nonzero length");
        let (target, failed) = if !abc.odd_part().is_one() {
            (full, Condition::SumOddPartIsOne)
        } else if !self.c.odd_part().is_one() {
            (c2, Condition::LinearOddPartIsOne)
        } else if !self.a.odd_part().is_empty() {
            (full, Condition::CubicOddPartIsZero)
        } else {
            return Err(Error::Bijective);
        };
        Ok(UnreachedTarget { target: &target + &self.d, failed })
    }

    /// Whether `P(x) = s` has a solution, decided by exhaustive search over
    /// the sums supported on divisors of `k·2^n` where `k` and `n` cover
    /// every coefficient and `s`.
    ///
    /// Restriction to such a space is a ring homomorphism fixing `P` and
    /// `s`, so a solution exists iff one exists inside the space.
    pub fn reaches(&self, s: &CycleSum) -> Result<bool> {
        let mut k = 1;
        let mut n = 0;
        for e in [&self.a, &self.b, &self.c, &self.d, s] {
            let (ke, ne) = e.stats()?;
            k = checked_lcm(k, ke)?;
            n = n.max(ne);
        }
        Ok(restricted_space(k, n)?.iter().any(|x| self.eval(x) == *s))
    }
}

/// The coefficient conditions of surjectivity, each refuted by a target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    /// `(a + b + c)_0 = C1`; refuted by `C1 + C2 + (a + b + c)_+`.
    SumOddPartIsOne,
    /// `c_0 = C1`; refuted by `C2`.
    LinearOddPartIsOne,
    /// `a_0 = 0`; refuted by `C1 + C2 + (a + b + c)_+`.
    CubicOddPartIsZero,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnreachedTarget {
    pub target: CycleSum,
    pub failed: Condition,
}

/// Folds exponents `e ≥ 4` onto `2 + (e mod 2)`; `coeffs[e]` multiplies `x^e`.
pub fn reduce_poly(coeffs: &[CycleSum]) -> CubicPoly {
    let mut out = [CycleSum::zero(), CycleSum::zero(), CycleSum::zero(), CycleSum::zero()];
    for (e, coeff) in coeffs.iter().enumerate() {
        let e = if e >= 4 { 2 + e % 2 } else { e };
        out[e] = &out[e] + coeff;
    }
    let [d, c, b, a] = out;
    CubicPoly { a, b, c, d }
}

impl fmt::Display for CubicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (coeff, power) in [(&self.a, "x^3"), (&self.b, "x^2"), (&self.c, "x"), (&self.d, "")] {
            if coeff.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (coeff.count(), power.is_empty()) {
                (_, true) => write!(f, "{coeff}")?,
                _ if *coeff == CycleSum::one() => f.write_str(power)?,
                (1, false) => write!(f, "{coeff}*{power}")?,
                _ => write!(f, "({coeff})*{power}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(lengths: &[u64]) -> CycleSum {
        CycleSum::from_lengths(lengths.iter().copied()).unwrap()
    }

    fn poly(a: &[u64], b: &[u64], cc: &[u64], d: &[u64]) -> CubicPoly {
        CubicPoly::new(c(a), c(b), c(cc), c(d))
    }

    #[test]
    fn reduction_examples() {
        let one = CycleSum::one();
        let zero = CycleSum::zero();
        let x5_plus_x3 = [zero.clone(), zero.clone(), zero.clone(), one.clone(), zero.clone(), one.clone()];
        assert_eq!(reduce_poly(&x5_plus_x3), CubicPoly::default());
        let x4 = [zero.clone(), zero.clone(), zero.clone(), zero.clone(), one.clone()];
        assert_eq!(reduce_poly(&x4), poly(&[], &[1], &[], &[]));
        assert_eq!(reduce_poly(&[c(&[3, 4])]), poly(&[], &[], &[], &[3, 4]));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(CubicPoly::x().eval(&c(&[7])), c(&[7]));
        assert_eq!(poly(&[], &[], &[1], &[5]).eval(&c(&[3])), c(&[3, 5]));
    }

    #[test]
    fn bijectivity_examples() {
        assert!(CubicPoly::x().is_bijective());
        assert!(!poly(&[], &[1], &[], &[]).is_bijective());
        assert!(poly(&[2], &[6], &[1, 4], &[5]).is_bijective());
    }

    #[test]
    fn identity_inverse() {
        let s = c(&[3, 6, 40]);
        assert_eq!(CubicPoly::x().solve_bijective(&s).unwrap(), s);
        assert_eq!(poly(&[], &[1], &[], &[]).solve_bijective(&s), Err(Error::NotBijective));
    }

    #[test]
    fn collision_examples() {
        assert_eq!(poly(&[], &[1], &[], &[]).witness_degenerate().unwrap(), (c(&[]), c(&[2])));
        assert_eq!(poly(&[], &[1], &[1], &[]).witness_degenerate().unwrap(), (c(&[]), c(&[1])));
        let p = poly(&[], &[], &[3], &[]);
        let (x, y) = p.witness_degenerate().unwrap();
        assert_eq!(p.eval(&x), p.eval(&y));
        // The x_0 = C1 choice from the construction also collides.
        let alt = &c(&[1]) + &CycleSum::dyadic(OddSet::from_lengths([3, 1]).unwrap(), 1);
        assert_eq!(p.eval(&c(&[1])), p.eval(&alt));
        assert_eq!(CubicPoly::x().witness_degenerate(), Err(Error::Bijective));
    }

    #[test]
    fn unreached_examples() {
        let t = poly(&[], &[1], &[], &[]).unreached_target().unwrap();
        assert_eq!(t, UnreachedTarget { target: c(&[2]), failed: Condition::LinearOddPartIsOne });
        assert!(!poly(&[], &[1], &[], &[]).reaches(&t.target).unwrap());
        let p = poly(&[1], &[3], &[3], &[]);
        let t = p.unreached_target().unwrap();
        assert_eq!(t, UnreachedTarget { target: c(&[2]), failed: Condition::LinearOddPartIsOne });
        assert!(!p.reaches(&t.target).unwrap());
        let p = poly(&[], &[3], &[1], &[5]);
        assert_eq!(p.unreached_target().unwrap().failed, Condition::SumOddPartIsOne);
        assert!(!p.reaches(&p.unreached_target().unwrap().target).unwrap());
        let p = poly(&[3], &[3], &[1], &[]);
        assert_eq!(p.unreached_target().unwrap().failed, Condition::CubicOddPartIsZero);
        assert!(!p.reaches(&p.unreached_target().unwrap().target).unwrap());
        assert!(CubicPoly::x().reaches(&c(&[6])).unwrap());
    }

    #[test]
    fn display() {
        assert_eq!(poly(&[2], &[], &[1, 4], &[5]).to_string(), "C2*x^3 + (C1 + C4)*x + C5");
        assert_eq!(CubicPoly::x().to_string(), "x");
        assert_eq!(CubicPoly::default().to_string(), "0");
    }

    fn element() -> impl Strategy<Value = CycleSum> {
        let gens = [1u64, 3, 5, 15, 2, 6, 10, 4, 12];
        prop::collection::vec(prop::sample::select(gens.to_vec()), 0..5)
            .prop_map(|v| CycleSum::from_lengths(v).unwrap())
    }

    fn bijective() -> impl Strategy<Value = CubicPoly> {
        (element(), element(), element(), element()).prop_map(|(a, b, cc, d)| {
            CubicPoly::new(a.even_part(), b.even_part(), &cc.even_part() + &CycleSum::one(), d)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn bijective_roundtrips(p in bijective(), s in element()) {
            let x = p.solve_bijective(&s).unwrap();
            prop_assert_eq!(p.eval(&x), s.clone());
            prop_assert_eq!(p.solve_bijective(&p.eval(&s)).unwrap(), s);
        }

    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn degenerate_witnesses(a in element(), b in element(), cc in element(), d in element()) {
            let p = CubicPoly::new(a, b, cc, d);
            prop_assume!(!p.is_bijective());
            let (x, y) = p.witness_degenerate().unwrap();
            prop_assert!(x != y && p.eval(&x) == p.eval(&y));
            let t = p.unreached_target().unwrap();
            prop_assert!(!p.reaches(&t.target).unwrap());
        }

        #[test]
        fn reduced_polynomials_evaluate_alike(coeffs in prop::collection::vec(element(), 0..9), x in element()) {
            let direct = coeffs.iter().enumerate().fold(CycleSum::zero(), |acc, (e, k)| &acc + &(k * &x.pow(e as u64)));
            prop_assert_eq!(reduce_poly(&coeffs).eval(&x), direct);
        }
    }
}
