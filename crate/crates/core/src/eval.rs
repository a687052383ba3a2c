//! Prec@k and MRR, labeled datasets and side-by-side reports.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::num::NonZeroUsize;

use crate::rank::{rank, Factors, RankInput, WeightConfig};
use crate::{Error, IssueRef};

/// Cut-offs reported by [`evaluate`].
pub const REPORT_KS: [usize; 3] = [1, 3, 5];

/// Fraction of the top `k` results that are relevant. An empty result list
/// counts as fully precise; a list shorter than `k` is still divided by `k`.
pub fn precision_at_k<T: Ord>(ranked: &[T], relevant: &BTreeSet<T>, k: NonZeroUsize) -> f64 {
    if ranked.is_empty() {
        return 1.0;
    }
    let hits = ranked.iter().take(k.get()).filter(|r| relevant.contains(r)).count();
    hits as f64 / k.get() as f64
}

/// `1 / position` of the first relevant result, 0 when there is none.
pub fn reciprocal_rank<T: Ord>(ranked: &[T], relevant: &BTreeSet<T>) -> f64 {
    ranked.iter().position(|r| relevant.contains(r)).map_or(0.0, |i| 1.0 / (i + 1) as f64)
}

/// Mean of the per-query reciprocal ranks.
pub fn mean_reciprocal_rank<'a, T, I>(entries: I) -> Result<f64, Error>
where
    T: Ord + 'a,
    I: IntoIterator<Item = (&'a [T], &'a BTreeSet<T>)>,
{
    let (mut sum, mut n) = (0.0, 0usize);
    for (ranked, relevant) in entries {
        sum += reciprocal_rank(ranked, relevant);
        n += 1;
    }
    if n == 0 {
        return Err(Error::EmptyDataset);
    }
    Ok(sum / n as f64)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvalCandidate {
    pub issue: IssueRef,
    pub factors: Factors,
}

/// One driver issue: its candidates in platform order and the relevant ones.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvalEntry {
    pub driver: IssueRef,
    pub candidates: Vec<EvalCandidate>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub relevant: BTreeSet<IssueRef>,
}

impl EvalEntry {
    pub fn validate(&self) -> Result<(), Error> {
        let invalid = |reason: String| Error::InvalidDatasetEntry { driver: self.driver.to_string(), reason };
        let mut seen = BTreeSet::new();
        for c in &self.candidates {
            if !seen.insert(&c.issue) {
                return Err(invalid(format!("candidate {} listed twice", c.issue)));
            }
            if !c.factors.in_unit_range() {
                return Err(invalid(format!("factors of {} leave [0, 1]", c.issue)));
            }
        }
        if let Some(r) = self.relevant.iter().find(|r| !seen.contains(r)) {
            return Err(invalid(format!("relevant issue {r} is not a candidate")));
        }
        Ok(())
    }

    /// Candidate refs in platform order.
    pub fn raw_order(&self) -> Vec<IssueRef> {
        self.candidates.iter().map(|c| c.issue.clone()).collect()
    }

    /// Candidate refs re-ranked under `weights`.
    pub fn reranked_order(&self, weights: &WeightConfig) -> Result<Vec<IssueRef>, Error> {
        let inputs = self
            .candidates
            .iter()
            .enumerate()
            .map(|(i, c)| RankInput {
                item: &c.issue,
                search_rank: u32::try_from(i + 1).unwrap_or(u32::MAX),
                factors: c.factors,
            })
            .collect();
        Ok(rank(inputs, weights)?.into_iter().map(|r| r.item.clone()).collect())
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvalDataset {
    pub entries: Vec<EvalEntry>,
}

impl EvalDataset {
    pub fn validate(&self) -> Result<(), Error> {
        if self.entries.is_empty() {
            return Err(Error::EmptyDataset);
        }
        self.entries.iter().try_for_each(EvalEntry::validate)
    }

    pub fn num_relevant(&self) -> usize {
        self.entries.iter().map(|e| e.relevant.len()).sum()
    }

    /// MRR of the re-ranked candidate lists.
    pub fn reranked_mrr(&self, weights: &WeightConfig) -> Result<f64, Error> {
        let orders: Vec<Vec<IssueRef>> =
            self.entries.iter().map(|e| e.reranked_order(weights)).collect::<Result<_, _>>()?;
        mean_reciprocal_rank(orders.iter().zip(&self.entries).map(|(o, e)| (o.as_slice(), &e.relevant)))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SystemMetrics {
    pub prec_at: BTreeMap<usize, f64>,
    pub mrr: f64,
}

impl SystemMetrics {
    fn compute(orders: &[Vec<IssueRef>], dataset: &EvalDataset) -> Result<Self, Error> {
        let n = orders.len() as f64;
        let prec_at = REPORT_KS
            .iter()
            .map(|&k| {
                let k_nz = NonZeroUsize::new(k).unwrap_or(NonZeroUsize::MIN);
                let sum: f64 = orders.iter().zip(&dataset.entries).map(|(o, e)| precision_at_k(o, &e.relevant, k_nz)).sum();
                (k, sum / n)
            })
            .collect();
        let mrr = mean_reciprocal_rank(orders.iter().zip(&dataset.entries).map(|(o, e)| (o.as_slice(), &e.relevant)))?;
        Ok(Self { prec_at, mrr })
    }
}

/// Platform order and re-ranked order, evaluated on the same dataset.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EvalReport {
    pub num_queries: usize,
    pub num_relevant: usize,
    pub raw_search: SystemMetrics,
    pub reranked: SystemMetrics,
}

impl EvalReport {
    /// Plain-text table with one row per system.
    pub fn table(&self) -> String {
        let mut out = String::from("system       ");
        for k in REPORT_KS {
            out.push_str(&format!("  Prec@{k}"));
        }
        out.push_str("     MRR\n");
        for (name, m) in [("raw_search", &self.raw_search), ("reranked", &self.reranked)] {
            out.push_str(&format!("{name:<13}"));
            for k in REPORT_KS {
                out.push_str(&format!("  {:>6.3}", m.prec_at.get(&k).copied().unwrap_or(0.0)));
            }
            out.push_str(&format!("  {:>6.3}\n", m.mrr));
        }
        out.push_str(&format!("queries: {}, relevant labels: {}\n", self.num_queries, self.num_relevant));
        out
    }
}

/// Scores the platform order and the re-ranked order side by side.
pub fn evaluate(dataset: &EvalDataset, weights: &WeightConfig) -> Result<EvalReport, Error> {
    dataset.validate()?;
    let raw: Vec<Vec<IssueRef>> = dataset.entries.iter().map(EvalEntry::raw_order).collect();
    let reranked = reranked_orders(dataset, weights)?;
    Ok(EvalReport {
        num_queries: dataset.entries.len(),
        num_relevant: dataset.num_relevant(),
        raw_search: SystemMetrics::compute(&raw, dataset)?,
        reranked: SystemMetrics::compute(&reranked, dataset)?,
    })
}

#[cfg(feature = "parallel")]
fn reranked_orders(dataset: &EvalDataset, weights: &WeightConfig) -> Result<Vec<Vec<IssueRef>>, Error> {
    use rayon::prelude::*;
    dataset.entries.par_iter().map(|e| e.reranked_order(weights)).collect()
}

#[cfg(not(feature = "parallel"))]
fn reranked_orders(dataset: &EvalDataset, weights: &WeightConfig) -> Result<Vec<Vec<IssueRef>>, Error> {
    dataset.entries.iter().map(|e| e.reranked_order(weights)).collect()
}
