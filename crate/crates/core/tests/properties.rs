use freeknot::diagram::{canonical_code, parse_gauss_code, serialize, Diagram};
use freeknot::parity::{is_odd, parities, project, tower, CrossingOrder, Parity};
use freeknot::slice::{elementary_certificate, elementary_oracle};
use freeknot::smoothing::{good_choice, smooth, SmoothingChoice};
use proptest::prelude::*;

/// A random one-component word over `n` chords, as a shuffle of `0 0 1 1 ...`.
fn knot(max: usize) -> impl Strategy<Value = Vec<u32>> {
    (0..=max)
        .prop_flat_map(|n| Just((0..n as u32).flat_map(|x| [x, x]).collect::<Vec<_>>()).prop_shuffle())
}

fn diagram(w: &[u32]) -> Diagram {
    Diagram::from_numbers(&[w.to_vec()]).unwrap()
}

proptest! {
    #[test]
    fn canonical_code_ignores_rotation_reflection_and_names(w in knot(6), r in 0usize..12, flip: bool, shift in 1u32..50) {
        let d = diagram(&w);
        let r = if w.is_empty() { 0 } else { r % w.len() };
        let mut v: Vec<u32> = w[r..].iter().chain(&w[..r]).map(|x| x * 3 + shift).collect();
        if flip {
            v.reverse();
        }
        let e = diagram(&v);
        prop_assert_eq!(canonical_code(&d), canonical_code(&e));
        prop_assert!(d.is_isomorphic(&e));
    }

    #[test]
    fn serialization_parses_back(w in knot(7)) {
        let d = diagram(&w);
        let back = parse_gauss_code(&serialize(&d)).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn projection_keeps_exactly_the_even_crossings(w in knot(7)) {
        let d = diagram(&w);
        let p = parities(&d).unwrap();
        let img = project(&d).unwrap();
        let kept: Vec<_> = d.crossings().filter(|c| p[c] == Parity::Even).map(|c| d.label(c).to_string()).collect();
        let got: Vec<_> = img.crossings().map(|c| img.label(c).to_string()).collect();
        prop_assert_eq!(kept, got);
        prop_assert_eq!(is_odd(&d).unwrap(), img.is_crossing_free());
    }

    #[test]
    fn tower_orders_cover_every_crossing(w in knot(7)) {
        let d = diagram(&w);
        let t = tower(&d).unwrap();
        prop_assert_eq!(t.orders().len(), d.crossing_count());
        let stably = t.orders().values().filter(|o| **o == CrossingOrder::StablyEven).count();
        prop_assert_eq!(stably, t.stably_even().len());
        prop_assert_eq!(t.iterated_odd_order().is_some(), stably == 0);
    }

    #[test]
    fn exactly_one_smoothing_stays_connected(w in knot(6).prop_filter("needs a chord", |w| !w.is_empty()), pick: usize) {
        let d = diagram(&w);
        let c = d.crossings().nth(pick % d.crossing_count()).unwrap();
        let good = good_choice(&d, c).unwrap();
        prop_assert_eq!(smooth(&d, c, good).unwrap().component_count(), 1);
        prop_assert_eq!(smooth(&d, c, good.other()).unwrap().component_count(), 2);
        prop_assert_eq!(smooth(&d, c, SmoothingChoice::Split).unwrap().crossing_count(), d.crossing_count() - 1);
    }

    #[test]
    fn certificates_verify_and_agree_with_the_oracle(w in knot(4)) {
        let d = diagram(&w);
        let found = elementary_certificate(&d, false).unwrap();
        if let Some(c) = &found {
            prop_assert!(c.verify(&d).is_ok());
            prop_assert_eq!(2 * c.pair_count(), d.crossing_count());
        }
        prop_assert_eq!(found.is_some(), elementary_oracle(&d).unwrap());
    }
}
