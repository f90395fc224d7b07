//! Randomized property tests for the order, metric, canonical form, and
//! automaton invariants.

use std::cmp::Ordering;

use proptest::prelude::*;

use symshift::expansion::{base_from_alpha, in_vhat};
use symshift::shiftlang::{is_admissible, ShiftAutomaton, ShiftKind};
use symshift::words::{cylinder_distance, Digit, EpSeq, Word};

fn digit_block(m: Digit, max_len: usize) -> impl Strategy<Value = Vec<Digit>> {
    prop::collection::vec(0..=m, 1..=max_len)
}

fn epseq(m: Digit, max_len: usize) -> impl Strategy<Value = EpSeq> {
    (digit_block(m, max_len), digit_block(m, max_len)).prop_filter_map(
        "valid sequence",
        move |(pre, per)| EpSeq::new(m, pre, per).ok(),
    )
}

fn vhat_seq(m: Digit, max_len: usize) -> impl Strategy<Value = EpSeq> {
    digit_block(m, max_len).prop_filter_map("periodic in V-hat", move |per| {
        EpSeq::periodic(m, per).ok().filter(in_vhat)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn lex_cmp_is_a_total_order(x in epseq(1, 6), y in epseq(1, 6), z in epseq(1, 6)) {
        let xy = x.lex_cmp(&y).unwrap();
        let yz = y.lex_cmp(&z).unwrap();
        let xz = x.lex_cmp(&z).unwrap();
        prop_assert_eq!(xy.reverse(), y.lex_cmp(&x).unwrap());
        if xy != Ordering::Greater && yz != Ordering::Greater {
            prop_assert_ne!(xz, Ordering::Greater);
        }
        prop_assert_eq!(xy == Ordering::Equal, x.to_string() == y.to_string());
    }

    #[test]
    fn reflection_reverses_order(x in epseq(2, 6), y in epseq(2, 6)) {
        let xy = x.lex_cmp(&y).unwrap();
        prop_assert_eq!(x.reflect().lex_cmp(&y.reflect()).unwrap(), xy.reverse());
        // involution
        prop_assert_eq!(x.reflect().reflect().lex_cmp(&x).unwrap(), Ordering::Equal);
    }

    #[test]
    fn metric_is_ultra(x in epseq(1, 5), y in epseq(1, 5), z in epseq(1, 5)) {
        let d = |a: &EpSeq, b: &EpSeq| -> f64 {
            cylinder_distance(a, b)
                .unwrap()
                .map_or(0.0, |j| 0.5f64.powi(j.min(1000) as i32))
        };
        prop_assert!(d(&x, &z) <= d(&x, &y).max(d(&y, &z)) + f64::EPSILON);
        prop_assert_eq!(d(&x, &y) == 0.0, x.lex_cmp(&y).unwrap() == Ordering::Equal);
    }

    #[test]
    fn canonical_form_is_idempotent(x in epseq(2, 6)) {
        let rebuilt = EpSeq::new(
            x.alphabet(),
            x.prefix(x.preperiod_len()).into_digits(),
            x.shift(x.preperiod_len()).prefix(x.period_len()).into_digits(),
        )
        .unwrap();
        prop_assert_eq!(rebuilt.to_string(), x.to_string());
    }

    #[test]
    fn shift_digits_agree(x in epseq(2, 6), n in 0usize..12) {
        let shifted = x.shift(n);
        for i in 0..12 {
            prop_assert_eq!(shifted.digit(i), x.digit(n + i));
        }
    }

    #[test]
    fn language_is_factor_and_reflection_closed(a in vhat_seq(1, 5), n in 1usize..6) {
        let aut = ShiftAutomaton::build(&a, ShiftKind::Symmetric).unwrap();
        let words = aut.enumerate_bn(n);
        for w in &words {
            // reflection closure
            let refl = w.reflect();
            prop_assert!(is_admissible(&refl, &a, ShiftKind::Symmetric).unwrap());
            // factor closure
            if n > 1 {
                prop_assert!(is_admissible(&w.prefix(n - 1), &a, ShiftKind::Symmetric).unwrap());
                prop_assert!(is_admissible(&w.suffix_from(1), &a, ShiftKind::Symmetric).unwrap());
            }
        }
    }

    #[test]
    fn base_map_is_monotone(x in vhat_seq(2, 4), y in vhat_seq(2, 4)) {
        let cmp = x.lex_cmp(&y).unwrap();
        let qx = base_from_alpha(&x).unwrap();
        let qy = base_from_alpha(&y).unwrap();
        prop_assert_eq!(qx.cmp_base(&qy), cmp);
    }

    #[test]
    fn entropy_is_monotone_in_alpha(x in vhat_seq(1, 4), y in vhat_seq(1, 4)) {
        let (lo, hi) = if x.lex_cmp(&y).unwrap() == Ordering::Less { (x, y) } else { (y, x) };
        let hl = ShiftAutomaton::build(&lo, ShiftKind::Symmetric).unwrap().entropy().h_ln;
        let hh = ShiftAutomaton::build(&hi, ShiftKind::Symmetric).unwrap().entropy().h_ln;
        prop_assert!(hl.0 <= hh.1 + 1e-9, "entropy not monotone: {} vs {}", hl.0, hh.1);
    }

    #[test]
    fn word_plus_minus_are_inverse(ds in digit_block(2, 8)) {
        let w = Word::new(2, ds).unwrap();
        if let Ok(p) = w.plus() {
            let back = p.minus().unwrap();
            prop_assert_eq!(back.digits(), w.digits());
        }
        if let Ok(mn) = w.minus() {
            let back = mn.plus().unwrap();
            prop_assert_eq!(back.digits(), w.digits());
        }
    }
}
