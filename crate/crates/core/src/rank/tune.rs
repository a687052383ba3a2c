use alloc::vec::Vec;
use core::cmp::Ordering;

use super::WeightConfig;
use crate::eval::EvalDataset;
use crate::Error;

/// Indices (in [`WeightConfig::to_array`] order) of the swept weights: code,
/// dependency, permission and UI similarity.
const SWEPT: [usize; 4] = [2, 3, 4, 5];
const EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct TuneResult {
    pub weights: WeightConfig,
    pub mrr: f64,
    /// Number of grid points evaluated.
    pub evaluated: usize,
}

fn check_step(step: f64) -> Result<(), Error> {
    let ok = step.is_finite() && step > 0.0 && step <= 1.0 && {
        let n = ((1.0 / step) + 0.5) as u64 as f64;
        (n * step - 1.0).abs() <= 1e-3
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidGridStep(step))
    }
}

/// Grid of weight configurations reachable from `base` by moving multiples
/// of `step` between the four similarity weights. The other weights stay as
/// in `base`, the swept total is preserved and no weight goes negative.
/// `base` itself is always a grid point.
pub fn grid_points(base: &WeightConfig, step: f64) -> Result<Vec<WeightConfig>, Error> {
    check_step(step)?;
    let b = base.to_array();
    let lo: Vec<i64> = SWEPT.iter().map(|&i| -(((b[i] + EPS) / step).max(0.0) as i64)).collect();
    let hi: i64 = lo.iter().map(|l| -l).sum();
    let mut out = Vec::new();
    for j0 in lo[0]..=hi {
        for j1 in lo[1]..=hi {
            for j2 in lo[2]..=hi {
                let j3 = -(j0 + j1 + j2);
                if j3 < lo[3] || j3 > hi {
                    continue;
                }
                let mut w = b;
                for (&i, j) in SWEPT.iter().zip([j0, j1, j2, j3]) {
                    let v = b[i] + j as f64 * step;
                    w[i] = if v.abs() < EPS { 0.0 } else { v };
                }
                if SWEPT.iter().all(|&i| w[i] >= 0.0) {
                    out.push(WeightConfig::from_array(w));
                }
            }
        }
    }
    Ok(out)
}

fn lexicographic(a: &WeightConfig, b: &WeightConfig) -> Ordering {
    a.to_array().iter().zip(b.to_array().iter()).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
}

/// Higher MRR wins, then the lexicographically smaller weight tuple.
fn better(a: (f64, WeightConfig), b: (f64, WeightConfig)) -> (f64, WeightConfig) {
    match a.0.total_cmp(&b.0).then_with(|| lexicographic(&b.1, &a.1)) {
        Ordering::Less => b,
        _ => a,
    }
}

/// Exhaustive grid search for the weights maximizing re-ranked MRR on
/// `dataset`. See [`grid_points`] for the grid.
pub fn tune_weights(dataset: &EvalDataset, base: &WeightConfig, grid_step: f64) -> Result<TuneResult, Error> {
    dataset.validate()?;
    let grid = grid_points(base, grid_step)?;
    let evaluated = grid.len();
    let (mrr, weights) = search(dataset, grid)?.unwrap_or((0.0, *base));
    Ok(TuneResult { weights, mrr, evaluated })
}

#[cfg(feature = "parallel")]
fn search(dataset: &EvalDataset, grid: Vec<WeightConfig>) -> Result<Option<(f64, WeightConfig)>, Error> {
    use rayon::prelude::*;
    let scored: Vec<(f64, WeightConfig)> =
        grid.into_par_iter().map(|w| dataset.reranked_mrr(&w).map(|m| (m, w))).collect::<Result<_, _>>()?;
    Ok(scored.into_par_iter().reduce_with(better))
}

#[cfg(not(feature = "parallel"))]
fn search(dataset: &EvalDataset, grid: Vec<WeightConfig>) -> Result<Option<(f64, WeightConfig)>, Error> {
    let mut best = None;
    for w in grid {
        let cur = (dataset.reranked_mrr(&w)?, w);
        best = Some(match best {
            None => cur,
            Some(b) => better(b, cur),
        });
    }
    Ok(best)
}
