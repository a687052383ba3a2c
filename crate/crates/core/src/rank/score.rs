use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::Error;

/// Ranking factors of one candidate, each in `[0, 1]`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct Factors {
    pub issue_length: f64,
    pub num_comment: f64,
    pub code: f64,
    pub dependency: f64,
    pub permission: f64,
    pub ui: f64,
    pub has_fix: f64,
    pub keywords: f64,
}

impl Factors {
    pub const LEN: usize = 8;
    pub const NAMES: [&'static str; Self::LEN] =
        ["issue_length", "num_comment", "code", "dependency", "permission", "ui", "has_fix", "keywords"];

    pub fn to_array(&self) -> [f64; Self::LEN] {
        [
            self.issue_length,
            self.num_comment,
            self.code,
            self.dependency,
            self.permission,
            self.ui,
            self.has_fix,
            self.keywords,
        ]
    }

    pub fn from_array(a: [f64; Self::LEN]) -> Self {
        let [issue_length, num_comment, code, dependency, permission, ui, has_fix, keywords] = a;
        Self { issue_length, num_comment, code, dependency, permission, ui, has_fix, keywords }
    }

    /// Per-factor terms of the score: factor times weight.
    pub fn contributions(&self, weights: &WeightConfig) -> Factors {
        let (f, w) = (self.to_array(), weights.to_array());
        Self::from_array(core::array::from_fn(|i| f[i] * w[i]))
    }

    /// True when every factor is a finite number in `[0, 1]`.
    pub fn in_unit_range(&self) -> bool {
        self.to_array().iter().all(|v| (0.0..=1.0).contains(v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default))]
pub struct WeightConfig {
    pub w_issue_length: f64,
    pub w_num_comment: f64,
    pub w_code: f64,
    pub w_dep: f64,
    pub w_perm: f64,
    pub w_ui: f64,
    pub w_has_fix: f64,
    pub w_keywords: f64,
}

impl Default for WeightConfig {
    fn default() -> Self {
        Self {
            w_issue_length: 0.0714,
            w_num_comment: 0.1428,
            w_code: 0.1428,
            w_dep: 0.2142,
            w_perm: 0.2142,
            w_ui: 0.2142,
            w_has_fix: 0.0,
            w_keywords: 0.0,
        }
    }
}

impl WeightConfig {
    /// Weights in [`Factors::NAMES`] order.
    pub fn to_array(&self) -> [f64; Factors::LEN] {
        [
            self.w_issue_length,
            self.w_num_comment,
            self.w_code,
            self.w_dep,
            self.w_perm,
            self.w_ui,
            self.w_has_fix,
            self.w_keywords,
        ]
    }

    pub fn from_array(a: [f64; Factors::LEN]) -> Self {
        let [w_issue_length, w_num_comment, w_code, w_dep, w_perm, w_ui, w_has_fix, w_keywords] = a;
        Self { w_issue_length, w_num_comment, w_code, w_dep, w_perm, w_ui, w_has_fix, w_keywords }
    }

    /// Every weight multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Self {
        Self::from_array(self.to_array().map(|w| w * k))
    }

    /// True when every weight is finite and non-negative.
    pub fn is_valid(&self) -> bool {
        self.to_array().iter().all(|w| w.is_finite() && *w >= 0.0)
    }
}

/// Weighted sum of the factors.
pub fn score(factors: &Factors, weights: &WeightConfig) -> f64 {
    let (f, w) = (factors.to_array(), weights.to_array());
    f.iter().zip(w.iter()).map(|(f, w)| f * w).sum::<f64>() + 0.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankInput<T> {
    pub item: T,
    /// 1-based position in the platform's result list.
    pub search_rank: u32,
    pub factors: Factors,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ranked<T> {
    pub item: T,
    pub search_rank: u32,
    pub factors: Factors,
    pub score: f64,
    /// 1-based position after re-ranking.
    pub final_rank: u32,
}

/// Orders candidates by score, highest first, keeping platform order among
/// equal scores.
pub fn rank<T>(candidates: Vec<RankInput<T>>, weights: &WeightConfig) -> Result<Vec<Ranked<T>>, Error> {
    let mut seen: Vec<u32> = candidates.iter().map(|c| c.search_rank).collect();
    seen.sort_unstable();
    if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateSearchRank(w[0]));
    }
    let mut scored: Vec<Ranked<T>> = candidates
        .into_iter()
        .map(|c| Ranked {
            score: score(&c.factors, weights),
            item: c.item,
            search_rank: c.search_rank,
            factors: c.factors,
            final_rank: 0,
        })
        .collect();
    scored.sort_by(|a, b| compare(a, b));
    for (i, r) in scored.iter_mut().enumerate() {
        r.final_rank = u32::try_from(i + 1).unwrap_or(u32::MAX);
    }
    Ok(scored)
}

fn compare<T>(a: &Ranked<T>, b: &Ranked<T>) -> Ordering {
    b.score.total_cmp(&a.score).then(a.search_rank.cmp(&b.search_rank))
}
