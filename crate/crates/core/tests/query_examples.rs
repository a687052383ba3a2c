use std::convert::Infallible;

use bugnav_core::query::{
    build_query, extract_condition, parse_stack_trace, summarize_title, QueryConfig, SearchQuery, Strategy,
    MAX_QUERY_LEN,
};
use bugnav_core::{IssueDocument, IssueHit, IssueRef};
use proptest::prelude::*;
use proptest::strategy::Strategy as _;

const MAUI_BODY: &str = "While using a Swedish language Maui Server project concurrently from multiple \
processes, I got several 500 Internal Server Errors with the following traceback:\n\
...AnalysisEngineProcessException: Annotator processing failed.\n\
...Caused by: java.lang.StringIndexOutOfBoundsException: String index out of range: 8\n\n\
The root cause seems to be that the Snowball stemmer used by SwedishStemmer is not thread safe. \
(see a similar issue in another project)...";

const CONFIG_BODY: &str = "The exact message is :\n\
java.io.UTFDataFormatException: encoded string too long: 93067 bytes\n\
at java.io.DataOutputStream.writeUTF(...)...\n\n\
Java DataOutputStream's writeUTF method states that it cannot write more than 65535 bytes...when \
serializing a Config object, if any String is more than 65535 bytes, it is not serializable...";

const NPE_BODY: &str = "java.lang.NullPointerException: Attempt to invoke virtual method \
'java.lang.Object android.widget.FrameLayout.getTag(int)' on a null object reference";

fn doc(owner: &str, repo: &str, title: &str, body: &str) -> IssueDocument {
    IssueDocument::new(IssueRef::new(owner, repo, 1).unwrap(), title, body)
}

fn hits(n: u32) -> Vec<IssueHit> {
    (1..=n)
        .map(|k| IssueHit { issue: doc("x", "y", "t", ""), search_rank: k })
        .map(|mut h| {
            h.issue.issue_ref.number = u64::from(h.search_rank);
            h
        })
        .collect()
}

#[test]
fn maui_root_cause() {
    let info = parse_stack_trace(MAUI_BODY).unwrap();
    assert_eq!(info.root_exception, "java.lang.StringIndexOutOfBoundsException");
    assert_eq!(info.root_message, "String index out of range: 8");
    assert_eq!(info.top_exception, "AnalysisEngineProcessException");
}

#[test]
fn config_root_cause_and_query() {
    let info = parse_stack_trace(CONFIG_BODY).unwrap();
    assert_eq!(info.root_exception, "java.io.UTFDataFormatException");
    assert_eq!(info.root_message, "encoded string too long: 93067 bytes");
    assert!(info.complete);

    let issue = doc("lightbend", "config", "UTFDataFormatException in SerializedConfigValue.scala:314", CONFIG_BODY);
    let out = build_query(&issue, &QueryConfig::default(), |_| Ok::<_, Infallible>(hits(10))).unwrap();
    assert_eq!(out.query.strategy(), Strategy::StackTrace);
    assert_eq!(out.query.render(), "UTFDataFormatException encoded string too long in:body,comments");
}

#[test]
fn npe_query_text() {
    let issue = doc("o", "app", "Crash", NPE_BODY);
    let out = build_query(&issue, &QueryConfig::default(), |_| Ok::<_, Infallible>(hits(5))).unwrap();
    assert_eq!(
        out.query.text(),
        "NullPointerException attempt to invoke virtual method java lang Object android widget FrameLayout getTag int on a null object reference"
    );
    let dotted = NPE_BODY.replace("Object android", "Object.android");
    let out = build_query(&doc("o", "app", "Crash", &dotted), &QueryConfig::default(), |_| Ok::<_, Infallible>(hits(5))).unwrap();
    assert!(out.query.text().contains("java lang Object android widget FrameLayout getTag int"));
}

#[test]
fn condition_and_summary_rows() {
    assert_eq!(
        extract_condition("Stemmer exception when training word2vec with the supplied tweets_lean.txt file").unwrap(),
        "training word2vec with the supplied tweets_lean.txt file"
    );
    let p = IssueRef::new("zelandiya", "maui-standalone", 1).unwrap();
    assert_eq!(
        summarize_title("SwedishStemmer (and DutchStemmer?) not thread safe", &p).unwrap(),
        "SwedishStemmer DutchStemmer thread safe"
    );
}

#[test]
fn condition_query_is_title_scoped() {
    let issue = doc("deeplearning4j", "deeplearning4j", "Stemmer exception when training word2vec with the supplied tweets_lean.txt file", "");
    let out = build_query(&issue, &QueryConfig::default(), |_| Ok::<_, Infallible>(hits(3))).unwrap();
    assert_eq!(out.query.strategy(), Strategy::Condition);
    assert_eq!(out.query.render(), "training word2vec with the supplied tweets_lean.txt file in:title");
}

#[test]
fn title_only_issue_retries_unscoped() {
    let issue = doc("o", "r", "Dark theme ignored", "The setting has no effect.");
    let mut seen = Vec::new();
    let out = build_query(&issue, &QueryConfig::default(), |q| {
        seen.push(q.render());
        Ok::<_, Infallible>(if q.qualifiers().is_empty() { hits(2) } else { hits(0) })
    })
    .unwrap();
    assert_eq!(seen, ["Dark theme ignored in:title", "Dark theme ignored"]);
    assert_eq!(out.query.strategy(), Strategy::SummaryUnscoped);
    assert_eq!(out.hits.len(), 2);
}

#[test]
fn qualifier_is_configurable() {
    let config = QueryConfig { stack_trace_qualifier: "in:body".into(), ..Default::default() };
    let issue = doc("lightbend", "config", "t", CONFIG_BODY);
    let out = build_query(&issue, &config, |_| Ok::<_, Infallible>(hits(10))).unwrap();
    assert_eq!(out.query.render(), "UTFDataFormatException encoded string too long in:body");
}

fn word() -> impl prop::strategy::Strategy<Value = String> {
    prop_oneof![
        "[a-z]{1,12}",
        "[A-Z][a-z]{1,10}",
        Just("when".to_string()),
        Just("the".to_string()),
        Just("java.lang.IllegalStateException:".to_string()),
        Just("Caused by:".to_string()),
        Just("\n".to_string()),
        "[a-z]{20,60}",
    ]
}

fn text() -> impl prop::strategy::Strategy<Value = String> {
    prop::collection::vec(word(), 0..80).prop_map(|w| w.join(" "))
}

proptest! {
    #[test]
    fn emitted_queries_fit_and_keep_whole_tokens(title in text(), body in text(), counts in prop::collection::vec(0u32..8, 4)) {
        let issue = doc("o", "r", &title, &body);
        let mut executed: Vec<SearchQuery> = Vec::new();
        let mut k = 0;
        let result = build_query(&issue, &QueryConfig::default(), |q| {
            executed.push(q.clone());
            k += 1;
            Ok::<_, Infallible>(hits(counts[(k - 1) % counts.len()]))
        });
        let source = format!("{title} {body}");
        for q in &executed {
            prop_assert!(q.render().chars().count() <= MAX_QUERY_LEN);
            prop_assert!(!q.text().trim().is_empty());
            if q.strategy() != Strategy::StackTrace {
                for t in q.text().split(' ') {
                    prop_assert!(source.contains(t), "token {t:?} not in source");
                }
            }
        }
        // Strategies only move down the ladder.
        for pair in executed.windows(2) {
            prop_assert!(pair[0].strategy() < pair[1].strategy());
        }
        if parse_stack_trace(&body).is_none() {
            prop_assert!(executed.iter().all(|q| q.strategy() != Strategy::StackTrace));
        }
        if let Ok(out) = result {
            prop_assert_eq!(Some(&out.query), executed.last());
        }
    }

    #[test]
    fn condition_is_a_suffix_of_the_title(title in text()) {
        if let Some(c) = extract_condition(&title) {
            prop_assert!(title.trim_end().ends_with(c.as_str()));
            prop_assert!(!c.is_empty());
        }
    }
}
