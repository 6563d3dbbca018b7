use std::cmp::Ordering;

use proptest::prelude::*;

use effshift_core::analytics::{complexity_count, entropy_interval_si, recover_slope_max, WindowRecovery};
use effshift_core::grid::{format_pattern, parse_pattern, translate, Letter};
use effshift_core::streams::{compare_log_ratio, rational, ApproxReal, CoLanguage, Enumeration, ScheduleConfig};
use effshift_core::zoo::{fibonacci, golden_mean, periodic_orbit, single_one, sturmian_window, ZooShift};
use effshift_core::{Alphabet, Element, Group, Pattern, Rational};

use num_bigint::BigUint;

fn groups() -> impl Strategy<Value = Group> {
    prop_oneof![Just(Group::Integers), (1u8..=3).prop_map(Group::Lattice), (1u8..=2).prop_map(Group::Free)]
}

fn element(group: Group) -> impl Strategy<Value = Element> {
    let k = 2 * group.rank();
    prop::collection::vec(0..k, 0..10).prop_map(move |w| {
        let syms: Vec<_> = w.into_iter().map(|s| s as _).collect();
        group.normalize(&syms).unwrap()
    })
}

proptest! {
    #[test]
    fn group_laws(g in groups().prop_flat_map(|g| (Just(g), element(g), element(g), element(g)))) {
        let (group, a, b, c) = g;
        prop_assert_eq!(group.mul(&group.mul(&a, &b), &c), group.mul(&a, &group.mul(&b, &c)));
        prop_assert!(group.mul(&a, &group.inverse(&a)).is_identity());
        prop_assert_eq!(group.mul(&Element::identity(), &b), b.clone());
        if group != Group::Free(2) {
            prop_assert_eq!(group.mul(&a, &b), group.mul(&b, &a));
        }
    }

    #[test]
    fn pattern_text_round_trips(
        (group, cells) in groups().prop_flat_map(|g| (Just(g), prop::collection::vec((element(g), 0u8..3), 0..6)))
    ) {
        let alphabet = Alphabet::from_chars("abc").unwrap();
        let p = Pattern::from_cells(cells.into_iter().map(|(e, a)| (e, a as Letter)));
        let text = format_pattern(&group, &alphabet, &p);
        prop_assert_eq!(parse_pattern(&group, &alphabet, &text).unwrap(), p);
    }
}

fn zoo() -> Vec<ZooShift> {
    vec![
        golden_mean(),
        fibonacci(),
        single_one(),
        periodic_orbit(Alphabet::binary(), &[0, 1, 1]).unwrap(),
        sturmian_window(ApproxReal::rational(rational(1, 4)), ApproxReal::rational(rational(3, 4))).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Oracles are factorial and invariant under translation, on words up
    /// to length 8.
    #[test]
    fn oracles_are_factorial_and_invariant(
        which in 0usize..5,
        w in prop::collection::vec(0u8..2, 1..=8),
        shift in -5i64..5,
    ) {
        let z = &zoo()[which];
        let w: Vec<Letter> = w.into_iter().map(|a| a as Letter).collect();
        let accepted = z.accepts_word(&w).unwrap();
        if accepted {
            for i in 0..w.len() {
                for j in i + 1..=w.len() {
                    prop_assert!(z.accepts_word(&w[i..j]).unwrap());
                }
            }
        }
        let moved = translate(&Group::Integers, &Element::from_position(shift), &Pattern::from_word(&w));
        prop_assert_eq!(z.accepts(&moved).unwrap(), accepted);
    }

    /// A co-language run of any length never emits an accepted pattern.
    #[test]
    fn colanguage_is_sound(which in 0usize..5, budget in 1u64..40_000) {
        let z = &zoo()[which];
        let mut co = CoLanguage::new(&z.presentation, ScheduleConfig::default());
        co.run(budget);
        for c in co.emitted() {
            prop_assert!(!z.accepts(&c.pattern).unwrap());
        }
    }

    /// The window statistic is exactly `ceil(beta n)`.
    #[test]
    fn slope_max_is_the_ceiling(q in 2i64..9, p_frac in 0.0f64..1.0, n in 1usize..12) {
        let p = ((p_frac * q as f64) as i64).clamp(1, q);
        let beta = rational(p, q);
        let x = sturmian_window(ApproxReal::rational(Rational::from_integer(0.into())), ApproxReal::rational(beta.clone())).unwrap();
        let s = recover_slope_max(x.oracle().as_ref(), n).unwrap();
        let ceil = (p * n as i64 + q - 1) / q;
        prop_assert_eq!(s.m as i64, ceil);
        prop_assert!(s.lower <= beta && beta <= s.upper);
    }

    /// Bounds from any set of rejected words contain the true endpoint.
    #[test]
    fn window_bounds_are_sound(q in 2i64..13, p_frac in 0.0f64..=1.0, len in 1usize..=7) {
        let p = ((p_frac * q as f64 / 2.0) as i64).clamp(0, q / 2);
        let a = rational(p, q);
        let x = sturmian_window(ApproxReal::rational(a.clone()), ApproxReal::rational(&a + rational(1, 2))).unwrap();
        let mut rec = WindowRecovery::new();
        for n in 1..=len {
            for i in 0..1u32 << n {
                let w: Vec<Letter> = (0..n).map(|j| ((i >> j) & 1) as Letter).collect();
                if !x.accepts_word(&w).unwrap() {
                    rec.feed(&Pattern::from_word(&w));
                }
            }
        }
        prop_assert!(rec.bounds().contains(&a));
    }

    /// Entropy bounds bracket log2(N_n)/n and log2(N_n)/(n+k) in order.
    #[test]
    fn entropy_bounds_are_ordered(count in 1u64..1_000_000, n in 1u64..40, k in 0u64..5) {
        let i = entropy_interval_si(&BigUint::from(count), n, k).unwrap();
        prop_assert!(i.lower <= i.upper);
        let c = BigUint::from(count);
        prop_assert_ne!(compare_log_ratio(&c, n + k, &i.lower).unwrap(), Ordering::Less);
        prop_assert_ne!(compare_log_ratio(&c, n, &i.upper).unwrap(), Ordering::Greater);
    }
}

#[test]
fn golden_mean_counts_are_fibonacci() {
    let g = golden_mean();
    let counts: Vec<u64> = (1..=6).map(|n| complexity_count(g.oracle().as_ref(), 2, n).unwrap()).collect();
    assert_eq!(counts, [2, 3, 5, 8, 13, 21]);
}

#[test]
fn balanced_periodic_words_are_in_rational_windows() {
    for (p, q) in [(1i64, 3i64), (2, 5), (3, 7), (1, 2)] {
        let x = sturmian_window(ApproxReal::rational(rational(p, q)), ApproxReal::rational(rational(p, q))).unwrap();
        // Mechanical word of slope p/q: letter i is floor((i+1)p/q) - floor(ip/q).
        let w: Vec<Letter> = (0..4 * q).map(|i| (((i + 1) * p) / q - (i * p) / q) as Letter).collect();
        assert!(x.accepts_word(&w).unwrap(), "{p}/{q}");
    }
}
