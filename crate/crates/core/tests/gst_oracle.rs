use bugnav_core::similarity::{greedy_string_tiling, gst_similarity};
use proptest::prelude::*;

mod common;

use common::{naive_covered, naive_similarity};

fn stream() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..3, 0..=12)
}

#[test]
fn frozen_examples() {
    assert_eq!(gst_similarity(b"ABCDEFGHIJX", b"ABCDEFGHIJY", 9), 20.0 / 22.0);
    assert_eq!(naive_similarity(b"ABCDEFGHIJX", b"ABCDEFGHIJY", 9), 20.0 / 22.0);
    assert_eq!(naive_covered(b"ABCDE", b"BCDABDE", 2), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn matches_naive_greedy(a in stream(), b in stream(), min_len in 1usize..=5) {
        prop_assert_eq!(gst_similarity(&a, &b, min_len), naive_similarity(&a, &b, min_len));
    }

    #[test]
    fn tiles_are_disjoint_and_equal(a in stream(), b in stream(), min_len in 1usize..=4) {
        let tiles = greedy_string_tiling(&a, &b, min_len);
        let mut ma = vec![false; a.len()];
        let mut mb = vec![false; b.len()];
        for t in tiles {
            prop_assert!(t.len >= min_len);
            prop_assert_eq!(&a[t.a_start..t.a_start + t.len], &b[t.b_start..t.b_start + t.len]);
            for k in 0..t.len {
                prop_assert!(!ma[t.a_start + k] && !mb[t.b_start + k]);
                ma[t.a_start + k] = true;
                mb[t.b_start + k] = true;
            }
        }
    }

    #[test]
    fn symmetric_and_bounded(a in stream(), b in stream(), min_len in 1usize..=4) {
        let s = gst_similarity(&a, &b, min_len);
        prop_assert!((0.0..=1.0).contains(&s));
        prop_assert_eq!(s, gst_similarity(&b, &a, min_len));
    }

    #[test]
    fn self_similarity_is_one(a in prop::collection::vec(0u8..3, 4..=30), min_len in 1usize..=4) {
        prop_assert_eq!(gst_similarity(&a, &a, min_len), 1.0);
    }

    #[test]
    fn raising_min_len_never_increases(a in stream(), b in stream(), min_len in 1usize..=6) {
        prop_assert!(gst_similarity(&a, &b, min_len + 1) <= gst_similarity(&a, &b, min_len));
    }
}
