use std::collections::BTreeSet;
use std::num::NonZeroUsize;

use bugnav_core::eval::{evaluate, mean_reciprocal_rank, precision_at_k, EvalCandidate, EvalDataset, EvalEntry};
use bugnav_core::rank::{grid_points, rank, score, tune_weights, Factors, RankInput, WeightConfig};
use bugnav_core::IssueRef;
use proptest::prelude::*;

mod common;

use common::{brute_mrr, dot_oracle};

fn unit() -> impl Strategy<Value = f64> {
    0.0f64..=1.0
}

fn factors() -> impl Strategy<Value = Factors> {
    prop::array::uniform8(unit()).prop_map(Factors::from_array)
}

fn weights() -> impl Strategy<Value = WeightConfig> {
    prop::array::uniform8(0.0f64..=1.0).prop_map(WeightConfig::from_array)
}

fn r(n: u64) -> IssueRef {
    IssueRef::new("o", "r", n).unwrap()
}

fn inputs(fs: &[Factors]) -> Vec<RankInput<usize>> {
    fs.iter().enumerate().map(|(i, f)| RankInput { item: i, search_rank: i as u32 + 1, factors: *f }).collect()
}

fn order(fs: &[Factors], w: &WeightConfig) -> Vec<usize> {
    rank(inputs(fs), w).unwrap().into_iter().map(|r| r.item).collect()
}

#[test]
fn default_code_weight() {
    let f = Factors { code: 1.0, ..Default::default() };
    assert_eq!(score(&f, &WeightConfig::default()), 0.1428);
}

#[test]
fn tuner_finds_dependency_signal() {
    // Relevant candidates sit below irrelevant ones in platform order and only
    // win on dependency similarity.
    let entries = (0..4)
        .map(|q| {
            let irrelevant = Factors { code: 1.0, dependency: 0.9, permission: 1.0, ui: 1.0, ..Default::default() };
            let relevant = Factors { dependency: 1.0, ..Default::default() };
            let candidates = vec![
                EvalCandidate { issue: r(q * 10 + 1), factors: irrelevant },
                EvalCandidate { issue: r(q * 10 + 2), factors: irrelevant },
                EvalCandidate { issue: r(q * 10 + 3), factors: relevant },
            ];
            EvalEntry { driver: r(1000 + q), candidates, relevant: [r(q * 10 + 3)].into() }
        })
        .collect();
    let dataset = EvalDataset { entries };
    let base = WeightConfig::default();
    let tuned = tune_weights(&dataset, &base, 0.0714).unwrap();
    assert_eq!(tuned.evaluated, 364);
    assert_eq!(tuned.mrr, 1.0);
    let top_dep = grid_points(&base, 0.0714).unwrap().iter().map(|w| w.w_dep).fold(0.0, f64::max);
    assert_eq!(tuned.weights.w_dep, top_dep);
    assert_eq!((tuned.weights.w_code, tuned.weights.w_perm, tuned.weights.w_ui), (0.0, 0.0, 0.0));
    assert!(dataset.reranked_mrr(&base).unwrap() < 1.0);

    // Brute force over the same grid agrees.
    let best = grid_points(&base, 0.0714)
        .unwrap()
        .into_iter()
        .map(|w| dataset.reranked_mrr(&w).unwrap())
        .fold(0.0, f64::max);
    assert_eq!(best, tuned.mrr);
}

#[test]
fn tuner_unit_step_returns_defaults() {
    let entry = EvalEntry {
        driver: r(1),
        candidates: vec![EvalCandidate { issue: r(2), factors: Factors::default() }],
        relevant: [r(2)].into(),
    };
    let tuned = tune_weights(&EvalDataset { entries: vec![entry] }, &WeightConfig::default(), 1.0).unwrap();
    assert_eq!(tuned.evaluated, 1);
    assert_eq!(tuned.weights, WeightConfig::default());
}

#[test]
fn tuner_all_irrelevant_picks_smallest_tuple() {
    let entry = EvalEntry {
        driver: r(1),
        candidates: vec![EvalCandidate { issue: r(2), factors: Factors { code: 0.5, ..Default::default() } }],
        relevant: BTreeSet::new(),
    };
    let tuned = tune_weights(&EvalDataset { entries: vec![entry] }, &WeightConfig::default(), 0.0714).unwrap();
    assert_eq!(tuned.mrr, 0.0);
    let smallest = grid_points(&WeightConfig::default(), 0.0714)
        .unwrap()
        .into_iter()
        .min_by(|a, b| a.to_array().partial_cmp(&b.to_array()).unwrap())
        .unwrap();
    assert_eq!(tuned.weights, smallest);
    assert_eq!((tuned.weights.w_code, tuned.weights.w_dep, tuned.weights.w_perm), (0.0, 0.0, 0.0));
}

#[test]
fn tuner_rejects_empty_dataset() {
    assert!(tune_weights(&EvalDataset::default(), &WeightConfig::default(), 0.25).is_err());
}

proptest! {
    #[test]
    fn score_matches_dot_product_oracle(f in factors(), w in weights()) {
        prop_assert!((score(&f, &w) - dot_oracle(&f.to_array(), &w.to_array())).abs() <= 1e-12);
    }

    #[test]
    fn score_is_linear(f in factors(), w in weights(), alpha in 0.0f64..=1.0) {
        let scaled = Factors::from_array(f.to_array().map(|v| v * alpha));
        let lhs = score(&scaled, &w);
        let rhs = alpha * score(&f, &w);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()));
    }

    #[test]
    fn raising_a_factor_never_lowers_score(f in factors(), w in weights(), idx in 0usize..8, delta in unit()) {
        let mut raised = f.to_array();
        raised[idx] = (raised[idx] + delta).min(1.0);
        prop_assert!(score(&Factors::from_array(raised), &w) >= score(&f, &w));
    }

    #[test]
    fn rank_is_a_permutation_sorted_by_score(fs in prop::collection::vec(factors(), 0..20), w in weights()) {
        let out = rank(inputs(&fs), &w).unwrap();
        let mut items: Vec<usize> = out.iter().map(|r| r.item).collect();
        items.sort_unstable();
        prop_assert_eq!(items, (0..fs.len()).collect::<Vec<_>>());
        prop_assert_eq!(out.iter().map(|r| r.final_rank).collect::<Vec<_>>(), (1..=fs.len() as u32).collect::<Vec<_>>());
        for p in out.windows(2) {
            prop_assert!(p[0].score > p[1].score || (p[0].score == p[1].score && p[0].search_rank < p[1].search_rank));
        }
    }

    #[test]
    fn zero_similarity_weights_reproduce_platform_order(
        fs in prop::collection::vec(factors(), 0..20),
        q in prop::array::uniform4(unit()),
        wq in prop::array::uniform4(0.0f64..=1.0),
    ) {
        // Equal quality factors for everybody, similarity weights zero.
        let fs: Vec<Factors> = fs
            .into_iter()
            .map(|f| Factors { issue_length: q[0], num_comment: q[1], has_fix: q[2], keywords: q[3], ..f })
            .collect();
        let w = WeightConfig { w_issue_length: wq[0], w_num_comment: wq[1], w_has_fix: wq[2], w_keywords: wq[3], ..WeightConfig::from_array([0.0; 8]) };
        prop_assert_eq!(order(&fs, &w), (0..fs.len()).collect::<Vec<_>>());
    }

    #[test]
    fn scaling_all_weights_keeps_ranking(fs in prop::collection::vec(factors(), 0..20), w in weights(), e in -10i32..=10) {
        let k = 2f64.powi(e);
        prop_assert_eq!(order(&fs, &w), order(&fs, &w.scaled(k)));
    }

    #[test]
    fn precision_is_bounded(ranked in prop::collection::vec(0u8..20, 0..15), rel in prop::collection::btree_set(0u8..20, 0..10), k in 1usize..10) {
        let p = precision_at_k(&ranked, &rel, NonZeroUsize::new(k).unwrap());
        prop_assert!((0.0..=1.0).contains(&p));
        if let Some(x) = rel.iter().next() {
            let mut fewer = rel.clone();
            fewer.remove(&x.clone());
            prop_assert!(precision_at_k(&ranked, &fewer, NonZeroUsize::new(k).unwrap()) <= p);
        }
    }

    #[test]
    fn mrr_matches_brute_force(qs in prop::collection::vec((prop::collection::vec(0u8..10, 0..8), prop::collection::btree_set(0u8..10, 0..4)), 1..6)) {
        let expected = brute_mrr(&qs);
        let got = mean_reciprocal_rank(qs.iter().map(|(r, s)| (r.as_slice(), s))).unwrap();
        prop_assert!((got - expected).abs() < 1e-12);
        prop_assert!((0.0..=1.0).contains(&got));
    }

    #[test]
    fn evaluate_is_pure_and_bounded(fs in prop::collection::vec(factors(), 1..10), rel_mask in any::<u16>(), w in weights()) {
        let candidates: Vec<EvalCandidate> = fs.iter().enumerate().map(|(i, f)| EvalCandidate { issue: r(i as u64 + 1), factors: *f }).collect();
        let relevant = (0..fs.len()).filter(|i| rel_mask & (1 << i) != 0).map(|i| r(i as u64 + 1)).collect();
        let d = EvalDataset { entries: vec![EvalEntry { driver: r(999), candidates, relevant }] };
        let a = evaluate(&d, &w).unwrap();
        prop_assert_eq!(&a, &evaluate(&d, &w).unwrap());
        for m in [&a.raw_search, &a.reranked] {
            prop_assert!((0.0..=1.0).contains(&m.mrr));
            prop_assert!(m.prec_at.values().all(|p| (0.0..=1.0).contains(p)));
        }
    }
}
