//! Multiplicative structure of `S`: special elements, Green's relations and
//! intersections of principal ideals.

use crate::cycle_ring::{CycleSum, OddSet};
use crate::division::solve;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// `x_0 = C1`; equivalently `x` is cancellable, or `x² = C1`.
    pub is_unit: bool,
    pub is_idempotent: bool,
    /// `x³ = x`.
    pub is_regular: bool,
    /// `x_0 x_i = 0` for every `i ≥ 1`; equivalently `x + C1` is regular.
    pub is_coregular: bool,
    pub x_plus: OddSet,
    /// `H(x) = x + x² + x³`, the co-regular representative of the
    /// `R`-class of `x`.
    pub h_of_x: CycleSum,
}

pub fn classify(x: &CycleSum) -> Classification {
    let x2 = x * x;
    let x3 = &x2 * x;
    let x0 = x.odd_part();
    Classification {
        is_unit: x0.is_one(),
        is_idempotent: x.is_idempotent(),
        is_regular: x3 == *x,
        is_coregular: x.levels().all(|(i, xi)| i == 0 || (&x0 * xi).is_empty()),
        x_plus: x.plus_closure(),
        h_of_x: &(x + &x2) + &x3,
    }
}

/// `H(x) = x + x² + x³`.
pub fn h_map(x: &CycleSum) -> CycleSum {
    let x2 = x * x;
    &(x + &x2) + &(&x2 * x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// Mutual divisibility: `y = x·g` for some unit `g`.
    R,
    /// Same annihilators: `x⁺ = y⁺` and `x_0 = y_0`.
    RStar,
    /// Same fixing idempotents: `x⁺ = y⁺`.
    RTilde,
}

/// Tests one of the relations `R ⊊ R* ⊊ R̃`.
///
/// For `R` both characterisations, `x_0 = y_0 ≥ (x + y)⁺` and
/// `H(x) = H(y)`, are evaluated and must agree.
pub fn green(x: &CycleSum, y: &CycleSum, relation: Relation) -> bool {
    match relation {
        Relation::RTilde => x.plus_closure() == y.plus_closure(),
        Relation::RStar => x.plus_closure() == y.plus_closure() && x.odd_part() == y.odd_part(),
        Relation::R => {
            let x0 = x.odd_part();
            let by_formula = x0 == y.odd_part() && (x + y).plus_closure().leq(&x0);
            let by_h = h_map(x) == h_map(y);
            assert_eq!(by_formula, by_h, "R characterisations disagree on {x} and {y}");
            by_formula
        }
    }
}

/// Evaluates the restriction-semigroup identity `ae = (ae)⁺ a`.
pub fn restriction_identity_check(a: &CycleSum, e: &OddSet) -> bool {
    let ae = a * &CycleSum::idempotent(e.clone());
    ae == a * &CycleSum::idempotent(ae.plus_closure())
}

/// `(α, β) = (x y⁺, y x⁺)`, which satisfy `xS ∩ yS = αS ∩ βS` and
/// `α⁺ = β⁺`.
pub fn ideal_reduce(x: &CycleSum, y: &CycleSum) -> (CycleSum, CycleSum) {
    let alpha = x * &CycleSum::idempotent(y.plus_closure());
    let beta = y * &CycleSum::idempotent(x.plus_closure());
    assert_eq!(alpha.plus_closure(), beta.plus_closure());
    (alpha, beta)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealMeetResult {
    /// `xS ∩ yS = gS`.
    Principal(CycleSum),
    /// Neither known criterion applies; whether the intersection is
    /// principal is left undecided.
    Unknown,
}

/// Computes a generator of `xS ∩ yS` when `x` or `y` is regular, or when
/// `xy = 0`.
///
/// Every returned generator is re-checked to lie in both ideals.
pub fn ideal_intersect(x: &CycleSum, y: &CycleSum) -> Result<IdealMeetResult> {
    let g = if classify(x).is_regular || classify(y).is_regular {
        x * y
    } else {
        let (alpha, beta) = ideal_reduce(x, y);
        if !(&alpha * &beta).is_zero() {
            return Ok(IdealMeetResult::Unknown);
        }
        let scale = (&alpha + &beta).plus_closure().not();
        &CycleSum::idempotent(scale) * &alpha
    };
    assert!(solve(x, &g)?.solvable && solve(y, &g)?.solvable, "generator {g} escapes {x}S ∩ {y}S");
    Ok(IdealMeetResult::Principal(g))
}

/// Searches the elements supported on divisors of `k·2^n` for a generator
/// of the part of `xS ∩ yS` visible there.
///
/// Returns the first member of the intersection that divides every other
/// member, or `None` if there is none. This can only refute
/// principality within the window; it proves nothing outside it.
pub fn probe_ideal_meet(x: &CycleSum, y: &CycleSum, k: u64, n: u32) -> Result<Option<CycleSum>> {
    let mut members = Vec::new();
    for z in crate::cycle_ring::restricted_space(k, n)? {
        if solve(x, &z)?.solvable && solve(y, &z)?.solvable {
            members.push(z);
        }
    }
    for g in &members {
        let mut generates = true;
        for z in &members {
            if !solve(g, z)?.solvable {
                generates = false;
                break;
            }
        }
        if generates {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(lengths: &[u64]) -> CycleSum {
        CycleSum::from_lengths(lengths.iter().copied()).unwrap()
    }

    #[test]
    fn unit_example() {
        let x = c(&[1, 2]);
        let cl = classify(&x);
        assert!(cl.is_unit && cl.is_regular && !cl.is_idempotent);
        assert_eq!(&x * &x, CycleSum::one());
        assert_eq!(cl.h_of_x, CycleSum::one());
    }

    #[test]
    fn idempotent_example() {
        let cl = classify(&c(&[3, 5]));
        assert!(cl.is_idempotent && cl.is_regular && cl.is_coregular && !cl.is_unit);
    }

    #[test]
    fn non_regular_example() {
        let x = c(&[3, 10]);
        let cl = classify(&x);
        assert!(!cl.is_regular && !cl.is_unit);
        assert_eq!(cl.x_plus, OddSet::from_lengths([3, 5, 15]).unwrap());
    }

    #[test]
    fn strict_inclusion_witnesses() {
        let (a, b) = (c(&[1]), c(&[2]));
        assert!(green(&a, &b, Relation::RTilde));
        assert!(!green(&a, &b, Relation::RStar));
        let (a, b) = (c(&[3, 10]), c(&[3, 20]));
        assert!(green(&a, &b, Relation::RStar));
        assert!(!green(&a, &b, Relation::R));
    }

    #[test]
    fn restriction_identity_edge_cases() {
        assert!(restriction_identity_check(&CycleSum::zero(), &OddSet::from_lengths([3]).unwrap()));
        let a = c(&[3, 10, 12]);
        assert!(restriction_identity_check(&a, &OddSet::one()));
        assert_eq!(&CycleSum::idempotent(a.plus_closure()) * &a, a);
    }

    #[test]
    fn ideal_reduce_examples() {
        let (x, y) = (c(&[3, 10]), c(&[3, 20]));
        assert_eq!(ideal_reduce(&x, &y), (x.clone(), y.clone()));
        assert_eq!(ideal_reduce(&c(&[3]), &c(&[5])), (c(&[15]), c(&[15])));
        assert_eq!(ideal_reduce(&CycleSum::zero(), &c(&[5])), (CycleSum::zero(), CycleSum::zero()));
    }

    #[test]
    fn ideal_intersect_examples() {
        let c2 = c(&[2]);
        assert_eq!(ideal_intersect(&c2, &c2).unwrap(), IdealMeetResult::Principal(c2.clone()));
        let e = c(&[3, 5]);
        let y = c(&[3, 10]);
        assert_eq!(ideal_intersect(&e, &y).unwrap(), IdealMeetResult::Principal(&e * &y));
    }

    #[test]
    fn ideal_intersect_unknown_case() {
        // Neither element is regular and the product is nonzero.
        let (x, y) = (c(&[3, 10]), c(&[3, 20]));
        assert_eq!(ideal_intersect(&x, &y).unwrap(), IdealMeetResult::Unknown);
        let probe = probe_ideal_meet(&x, &y, 15, 2).unwrap();
        assert!(probe.is_some());
    }

    fn element() -> impl Strategy<Value = CycleSum> {
        let gens = [1u64, 3, 5, 15, 2, 6, 10, 30, 4, 12, 20, 8];
        prop::collection::vec(prop::sample::select(gens.to_vec()), 0..7)
            .prop_map(|v| CycleSum::from_lengths(v).unwrap())
    }

    fn unit() -> impl Strategy<Value = CycleSum> {
        element().prop_map(|x| &x.even_part() + &CycleSum::one())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn restriction_identity_holds(a in element(), e in element()) {
            prop_assert!(restriction_identity_check(&a, &e.odd_part()));
        }

        #[test]
        fn h_is_coregular_and_constant_on_r_classes(a in element(), g in unit()) {
            let h = h_map(&a);
            prop_assert!(classify(&h).is_coregular);
            prop_assert!(green(&a, &h, Relation::R));
            prop_assert!(green(&a, &(&a * &g), Relation::R));
            prop_assert_eq!(h_map(&(&a * &g)), h);
        }

        #[test]
        fn unit_group_is_elementary_abelian(g in unit(), h in unit()) {
            let one = CycleSum::one();
            prop_assert_eq!(&(&g * &h) + &one, &(&g + &one) + &(&h + &one));
        }

        #[test]
        fn idempotent_iff_regular_and_coregular(x in element()) {
            let cl = classify(&x);
            prop_assert_eq!(cl.is_idempotent, cl.is_regular && cl.is_coregular);
            prop_assert_eq!(cl.is_coregular, classify(&(&x + &CycleSum::one())).is_regular);
        }

        #[test]
        fn generators_lie_in_both_ideals(x in element(), y in element()) {
            if let IdealMeetResult::Principal(g) = ideal_intersect(&x, &y).unwrap() {
                prop_assert!(solve(&x, &g).unwrap().solvable && solve(&y, &g).unwrap().solvable);
            }
        }
    }
}
