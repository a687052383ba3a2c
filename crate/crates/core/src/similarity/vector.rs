use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::{gst_similarity, overlap_coefficient, DEFAULT_MIN_MATCH_LEN};
use crate::code::{tokenize_code, CodeTokenStream};
use crate::mentions::MentionIndex;
use crate::model::DependencyId;
use crate::{IssueDocument, Patch, RepoContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Analysis {
    Code,
    Dependency,
    Permission,
    Ui,
}

/// Per-candidate similarity scores, each in `[0, 1]`. Components that did not
/// run are 0 and absent from `applicable`.
#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SimilarityVector {
    pub code: f64,
    pub dependency: f64,
    pub permission: f64,
    pub ui: f64,
    pub applicable: BTreeSet<Analysis>,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct SimilarityConfig {
    pub min_match_len: usize,
    /// Compare token kinds only, ignoring identifier names.
    pub abstract_identifiers: bool,
}

impl Default for SimilarityConfig {
    fn default() -> Self {
        Self { min_match_len: DEFAULT_MIN_MATCH_LEN, abstract_identifiers: true }
    }
}

/// Files the code lexer understands.
pub fn is_source_path(path: &str) -> bool {
    path.ends_with(".java")
}

/// Maximum pairwise similarity between driver files and patch files, or `None`
/// when either side has no files.
pub fn code_similarity_by<'a, D, F>(driver_files: D, patch_files: &[CodeTokenStream], mut pair: F) -> Option<f64>
where
    D: IntoIterator<Item = &'a CodeTokenStream>,
    F: FnMut(&CodeTokenStream, &CodeTokenStream) -> f64,
{
    let mut best: Option<f64> = None;
    for d in driver_files {
        for p in patch_files {
            let s = pair(d, p);
            best = Some(best.map_or(s, |b| b.max(s)));
        }
    }
    best
}

/// Greedy-string-tiling similarity between the driver's source files and the
/// source files a candidate's patch modifies, aggregated by maximum. `None`
/// when the patch touches no source file or the driver has none.
pub fn code_similarity(driver: &RepoContext, patch: &Patch, config: &SimilarityConfig) -> Option<f64> {
    let patch_files: Vec<CodeTokenStream> = patch
        .modified_files
        .iter()
        .filter(|f| is_source_path(&f.path))
        .map(|f| tokenize_code(&f.new_content))
        .collect();
    if config.abstract_identifiers {
        code_similarity_by(driver.code_files.values(), &patch_files, |d, p| {
            gst_similarity(&d.kinds(), &p.kinds(), config.min_match_len)
        })
    } else {
        code_similarity_by(driver.code_files.values(), &patch_files, |d, p| {
            gst_similarity(&d.tokens, &p.tokens, config.min_match_len)
        })
    }
}

pub struct DriverSide<'a> {
    pub issue: &'a IssueDocument,
    pub context: &'a RepoContext,
}

pub struct CandidateSide<'a> {
    pub issue: &'a IssueDocument,
    pub context: &'a RepoContext,
    pub patch: Option<&'a Patch>,
}

/// Computes every applicable analysis.
///
/// The driver's artifact sets are what its repository declares plus whatever
/// of the candidate's declared artifacts the driver issue mentions; the
/// candidate's sets are what its repository declares. Dependency similarity
/// runs when both sets are non-empty, permission and UI similarity only when
/// both repositories are Android apps, and code similarity only when the
/// candidate carries a patch touching source files.
pub fn similarity_vector(driver: DriverSide<'_>, candidate: CandidateSide<'_>, config: &SimilarityConfig) -> SimilarityVector {
    let mut v = SimilarityVector::default();
    let index = MentionIndex::for_issue(driver.issue);

    if let Some(code) = candidate.patch.and_then(|p| code_similarity(driver.context, p, config)) {
        v.code = code;
        v.applicable.insert(Analysis::Code);
    }

    let cand_deps = &candidate.context.dependencies;
    let vocabulary: Vec<String> = cand_deps.iter().map(DependencyId::canonical).collect();
    let mut driver_deps = driver.context.dependencies.clone();
    driver_deps.extend(index.matches(&vocabulary).iter().filter_map(|s| s.parse::<DependencyId>().ok()));
    if !driver_deps.is_empty() && !cand_deps.is_empty() {
        v.dependency = overlap_coefficient(&driver_deps, cand_deps);
        v.applicable.insert(Analysis::Dependency);
    }

    if driver.context.android && candidate.context.android {
        v.permission = mentioned_overlap(&index, &driver.context.permissions, &candidate.context.permissions);
        v.applicable.insert(Analysis::Permission);
        v.ui = mentioned_overlap(&index, &driver.context.ui_elements, &candidate.context.ui_elements);
        v.applicable.insert(Analysis::Ui);
    }
    v
}

fn mentioned_overlap(index: &MentionIndex, driver: &BTreeSet<String>, candidate: &BTreeSet<String>) -> f64 {
    let mut ours = driver.clone();
    ours.extend(index.matches(candidate));
    overlap_coefficient(&ours, candidate)
}
