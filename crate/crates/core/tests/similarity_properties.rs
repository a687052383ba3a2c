use std::collections::BTreeSet;

use bugnav_core::code::tokenize_code;
use bugnav_core::mentions::extract_mentions;
use bugnav_core::similarity::{code_similarity_by, similarity_vector, Analysis, CandidateSide, DriverSide, SimilarityConfig};
use bugnav_core::{IssueDocument, IssueRef, RepoContext};
use proptest::prelude::*;

fn issue(body: &str) -> IssueDocument {
    IssueDocument::new(IssueRef::new("o", "r", 1).unwrap(), "title", body)
}

fn names() -> impl Strategy<Value = BTreeSet<String>> {
    prop::collection::btree_set("[a-z]{1,6}", 0..6)
}

fn context() -> impl Strategy<Value = RepoContext> {
    (names(), names(), names(), any::<bool>()).prop_map(|(deps, perms, ui, android)| RepoContext {
        dependencies: deps.iter().map(|d| format!("g:{d}").parse().unwrap()).collect(),
        permissions: perms,
        ui_elements: ui,
        android,
        ..Default::default()
    })
}

proptest! {
    #[test]
    fn mentions_are_a_subset(body in "[a-zA-Z ]{0,60}", vocab in names()) {
        let found = extract_mentions(&issue(&body), &vocab);
        prop_assert!(found.is_subset(&vocab));
    }

    #[test]
    fn vector_components_bounded_and_marked(a in context(), b in context(), body in "[a-z ]{0,40}") {
        let (di, ci) = (issue(&body), issue(""));
        let v = similarity_vector(
            DriverSide { issue: &di, context: &a },
            CandidateSide { issue: &ci, context: &b, patch: None },
            &SimilarityConfig::default(),
        );
        for (x, kind) in [(v.code, Analysis::Code), (v.dependency, Analysis::Dependency), (v.permission, Analysis::Permission), (v.ui, Analysis::Ui)] {
            prop_assert!((0.0..=1.0).contains(&x));
            if !v.applicable.contains(&kind) {
                prop_assert_eq!(x, 0.0);
            }
        }
        prop_assert!(!v.applicable.contains(&Analysis::Code));
        prop_assert_eq!(v.applicable.contains(&Analysis::Permission), a.android && b.android);
    }

    #[test]
    fn aggregate_is_monotone_in_pairs(grid in prop::collection::vec(0.0f64..=1.0, 6), idx in 0usize..6, bump in 0.0f64..=1.0) {
        let d = vec![tokenize_code("a"), tokenize_code("b"), tokenize_code("c")];
        let p = vec![tokenize_code("x"), tokenize_code("y")];
        let run = |g: &[f64]| {
            let mut k = 0;
            code_similarity_by(&d, &p, |_, _| {
                k += 1;
                g[k - 1]
            })
            .unwrap()
        };
        let mut better = grid.clone();
        better[idx] = (better[idx] + bump).min(1.0);
        prop_assert!(run(&better) >= run(&grid));
        prop_assert_eq!(run(&grid), grid.iter().copied().fold(0.0, f64::max));
    }
}
