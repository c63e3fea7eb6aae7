mod common;

use common::repetition4_brute_force;
use proptest::prelude::*;
use qecmerit::classical::{
    evolve_flip_probability, mutual_info_entropies, mutual_info_generic, mutual_info_strategy1,
    mutual_info_strategy2, repetition4_channel, shannon_example, ClassicalChannelMatrix,
};
use qecmerit::Error;

proptest! {
    #[test]
    fn closed_form_matches_enumeration(q in 0.0..=1.0f64) {
        let m = repetition4_channel(q).unwrap();
        let (ok, err, unc) = repetition4_brute_force(q);
        prop_assert!((m.p_ok() - ok).abs() < 1e-12);
        prop_assert!((m.p_err() - err).abs() < 1e-12);
        prop_assert!((m.p_unc() - unc).abs() < 1e-12);
    }

    #[test]
    fn tagging_never_loses_information(q in 0.0..=0.5f64) {
        let m = repetition4_channel(q).unwrap();
        let i1 = mutual_info_strategy1(&m);
        let i2 = mutual_info_strategy2(&m).unwrap().i_avg;
        prop_assert!(i2 >= i1 - 1e-12);
        prop_assert!(m.success_strategy1() >= m.success_strategy2());
        prop_assert!((0.0..=1.0 + 1e-12).contains(&i1));
    }

    #[test]
    fn mutual_information_routes_agree(q in 0.0..=1.0f64) {
        let m = repetition4_channel(q).unwrap();
        let j1 = m.strategy1_joint();
        let j2 = m.strategy2_joint();
        prop_assert!((mutual_info_generic(&j1).unwrap() - mutual_info_entropies(&j1).unwrap()).abs() < 1e-12);
        prop_assert!((mutual_info_generic(&j2).unwrap() - mutual_info_entropies(&j2).unwrap()).abs() < 1e-12);
        prop_assert!((mutual_info_generic(&j1).unwrap() - mutual_info_strategy1(&m)).abs() < 1e-12);
    }

    #[test]
    fn flip_probability_stays_below_half(q0 in 0.0..=0.5f64, gamma in 0.0..10.0f64, t in 0.0..10.0f64) {
        let q = evolve_flip_probability(q0, gamma, t).unwrap();
        prop_assert!((q0 - 1e-15..=0.5).contains(&q));
    }
}

#[test]
fn channel_matrix_validation() {
    assert!(ClassicalChannelMatrix::new(0.5, 0.3, 0.2).is_ok());
    assert!(matches!(
        ClassicalChannelMatrix::new(0.5, 0.3, 0.3),
        Err(Error::Domain(_))
    ));
    assert!(repetition4_channel(1.2).is_err());
}

#[test]
fn fully_uncorrectable_channel_is_degenerate() {
    let m = ClassicalChannelMatrix::new(0.0, 0.0, 1.0).unwrap();
    assert!(matches!(
        mutual_info_strategy2(&m),
        Err(Error::DegenerateChannel)
    ));
}

#[test]
fn shannon_example_figures() {
    let r = shannon_example(1000.0, 0.01).unwrap();
    assert!((r.equivocation_rate - 80.8).abs() < 0.1);
    assert_eq!(r.similarity_matches, 995.0);
    assert_eq!(r.erasure_loss, 10.0);
    assert!((r.equivocation_fraction() - 0.0808).abs() < 1e-4);
    assert!(shannon_example(1000.0, 0.6).is_err());
}
