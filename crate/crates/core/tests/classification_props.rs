use proptest::prelude::*;

use osp12::classification::{
    family_action_squares, positivity_gate, GateReason, NormSequence, DEFAULT_K_MAX,
};
use osp12::*;

fn q(n: i64, d: i64) -> Number {
    Number::ratio(n, d)
}

fn rational(bound: i64) -> impl Strategy<Value = Number> {
    (1i64..=12)
        .prop_flat_map(move |d| (-bound * d..=bound * d).prop_map(move |n| Number::ratio(n, d)))
}

fn positive_rational() -> impl Strategy<Value = Number> {
    (1i64..=12).prop_flat_map(|d| (1..=8 * d).prop_map(move |n| Number::ratio(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn recurrence_agrees_with_closed_form(mu in rational(10), delta in rational(10), k in 0usize..80) {
        let p = RepParams::lambda1(mu, delta);
        prop_assert_eq!(norm_coefficient(&p, k), norm_closed_form(&p, k));
        prop_assert_eq!(NormSequence::build(&p, 40).closed_form_mismatch(), None);
    }

    #[test]
    fn admitted_points_have_positive_norms(mu in positive_rational(), delta in rational(6)) {
        for branch in [Branch::Lambda1, Branch::Lambda2] {
            let p = RepParams::new(mu.clone(), delta.clone(), branch);
            let v = positivity_gate(&p, 60);
            if v.admissible {
                let seq = NormSequence::build(&p, 60);
                let lowest = v.lowest_weight_index.unwrap();
                for (k, a) in seq.values.range(lowest..) {
                    prop_assert!(a.is_positive(), "a_{} = {}", k, a);
                }
            }
        }
    }

    #[test]
    fn only_the_two_lowest_weight_points_survive(mu in positive_rational(), delta in rational(6)) {
        let p = RepParams::lambda1(mu.clone(), delta.clone());
        let v = positivity_gate(&p, 60);
        let is_first = delta == -&mu;
        let is_second = delta == &mu - &Number::one() && mu.compare(&Number::half()).is_gt();
        prop_assert_eq!(v.admissible, is_first || is_second);
        if is_first {
            prop_assert_eq!(v.family, Some(Family::FinalActions));
        } else if is_second {
            prop_assert_eq!(v.family, Some(Family::EquivActions));
        }
    }

    #[test]
    fn second_branch_is_the_reflected_first(mu in rational(8), delta in rational(8)) {
        let two = RepParams::new(mu.clone(), delta.clone(), Branch::Lambda2);
        let one = RepParams::lambda1(mu.clone(), -&delta - Number::one());
        prop_assert_eq!(positivity_gate(&two, 40), positivity_gate(&one, 40));
        let (c2, c1) = (casimir_values(&two), casimir_values(&one));
        prop_assert_eq!(c2.lambda, c1.lambda);
        prop_assert_eq!(c2.omega_odd, c1.omega_odd);
        for k in 0..20 {
            prop_assert_eq!(norm_coefficient(&two, k), norm_coefficient(&one, k));
        }
    }

    #[test]
    fn equivalent_families_share_coefficients(num in 3i64..40, den in 1i64..6) {
        let mu = q(num, 2 * den);
        prop_assume!(mu.compare(&Number::half()).is_gt());
        let shifted = &mu - &Number::half();
        for s in 0..40 {
            prop_assert_eq!(
                family_action_squares(Family::EquivActions, &mu, s - 1),
                family_action_squares(Family::FinalActions, &shifted, s)
            );
        }
        prop_assert!(equivalence_shift(&mu, 40).unwrap().equivalent);
    }
}

#[test]
fn gate_rejects_generic_points_with_a_witness() {
    let v = positivity_gate(&RepParams::lambda1(q(1, 1), q(1, 3)), DEFAULT_K_MAX);
    assert!(!v.admissible);
    assert_eq!(v.reason, GateReason::UnboundedBelow);

    // δ = μ − 1 with μ < ½ terminates at −1 but a₋₁ < 0
    let v = positivity_gate(&RepParams::lambda1(q(1, 4), q(-3, 4)), DEFAULT_K_MAX);
    assert!(!v.admissible);
    assert_eq!(v.reason, GateReason::NonPositiveNorm);
    let w = v.first_violation.expect("witness");
    assert_eq!(w.index, -1);
    assert_eq!(w.value, q(-1, 1));
}

#[test]
fn classify_at_one_half_collapses_to_one_module() {
    let c = classify(&q(1, 2), DEFAULT_K_MAX);
    assert_eq!(c.families(), vec![Family::FinalActions]);
    // δ = −½ and δ = μ − 1 = −½ coincide, so the λ₁ pair is one point
    assert_eq!(c.candidates[1].duplicate_of, Some(0));
}

#[test]
fn classify_above_one_half_reports_shift() {
    let c = classify(&q(3, 2), DEFAULT_K_MAX);
    assert_eq!(
        c.families(),
        vec![Family::FinalActions, Family::EquivActions]
    );
    let equiv = c
        .candidates
        .iter()
        .find(|x| x.verdict.family == Some(Family::EquivActions))
        .unwrap();
    assert_eq!(equiv.equivalent_to_mu, Some(q(1, 1)));
}

#[test]
fn classification_json_round_trip() {
    let c = classify(&q(5, 4), DEFAULT_K_MAX);
    let text = serde_json::to_string(&c).unwrap();
    let back: Classification = serde_json::from_str(&text).unwrap();
    assert_eq!(back, c);
}

#[test]
fn casimir_values_on_the_lowest_weight_point() {
    // δ = −¼ on λ₁: λ = 2δ(2δ+1) = −¼
    let cv = casimir_values(&RepParams::lambda1(q(1, 4), q(-1, 4)));
    assert_eq!(cv.lambda, q(-1, 4));
    assert_eq!(cv.omega_even, q(3, 16));
    assert_eq!(cv.omega_odd, q(3, 16));
}

#[test]
fn equivalence_needs_mu_above_one_half() {
    assert!(matches!(
        equivalence_shift(&q(1, 2), 8),
        Err(Error::InvalidParameter(_))
    ));
}

#[test]
fn approximate_parameters_use_the_zero_threshold() {
    let p = RepParams::lambda1(Number::Approx(0.25), Number::Approx(-0.25));
    let v = positivity_gate(&p, 40);
    assert!(v.admissible);
    assert_eq!(v.family, Some(Family::FinalActions));
}
