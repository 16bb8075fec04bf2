//! Approximate randomization test for paired system comparison: per
//! shuffle, each post's two outputs swap with probability one half, and the
//! p-value is the smoothed tail frequency of |shuffled delta| at or above
//! |observed delta|.

use std::collections::HashMap;

use serde::Serialize;

use crate::corpus::Post;
use crate::error::{Error, Result};
use crate::rng::{derive_seed, Rng};

use super::{align, metrics_from_counts, PostCounts, Prediction};

/// Which report metric the test compares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    TargetRecall,
    TargetPrecision,
    TargetF,
    FPos,
    FNeg,
    AccSent,
    FAll,
}

impl Metric {
    pub fn parse(s: &str) -> Result<Metric> {
        Ok(match s {
            "target_recall" | "recall" => Metric::TargetRecall,
            "target_precision" | "precision" => Metric::TargetPrecision,
            "target_f" | "f" => Metric::TargetF,
            "f_pos" => Metric::FPos,
            "f_neg" => Metric::FNeg,
            "acc_sent" => Metric::AccSent,
            "f_all" => Metric::FAll,
            other => {
                return Err(Error::InvalidConfig(format!("unknown metric {other:?}")))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Metric::TargetRecall => "target_recall",
            Metric::TargetPrecision => "target_precision",
            Metric::TargetF => "target_f",
            Metric::FPos => "f_pos",
            Metric::FNeg => "f_neg",
            Metric::AccSent => "acc_sent",
            Metric::FAll => "f_all",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SigTestResult {
    pub metric: Metric,
    pub delta_observed: f64,
    pub p_value: f64,
    pub iterations: usize,
    pub seed: u64,
}

fn metric_of(counts: &PostCounts, metric: Metric) -> f64 {
    metrics_from_counts(counts).metric(metric)
}

/// Runs the test over `iterations` shuffles. Both systems must cover the
/// same posts. Deterministic for a fixed seed; each iteration draws its
/// swaps from a seed derived from the master seed and the iteration index.
pub fn approx_randomization(
    preds_a: &[Prediction],
    preds_b: &[Prediction],
    gold: &[Post],
    metric: Metric,
    iterations: usize,
    seed: u64,
) -> Result<SigTestResult> {
    if iterations == 0 {
        return Err(Error::InvalidConfig("iterations must be >= 1".into()));
    }
    let a_by_id: HashMap<&str, &Prediction> =
        preds_a.iter().map(|p| (p.post_id.as_str(), p)).collect();
    let b_by_id: HashMap<&str, &Prediction> =
        preds_b.iter().map(|p| (p.post_id.as_str(), p)).collect();
    if a_by_id.len() != b_by_id.len()
        || !a_by_id.keys().all(|k| b_by_id.contains_key(k))
    {
        return Err(Error::Mismatch(
            "the two systems cover different post sets".into(),
        ));
    }

    // Per-post tallies for each system; shuffled metrics are ratios of
    // re-mixed integer sums, so repeated mixes are exactly reproducible.
    let empty: Vec<crate::corpus::TargetSpan> = Vec::new();
    let mut pairs: Vec<(PostCounts, PostCounts)> = Vec::with_capacity(gold.len());
    for post in gold {
        let sa = a_by_id.get(post.id.as_str()).map(|p| &p.spans).unwrap_or(&empty);
        let sb = b_by_id.get(post.id.as_str()).map(|p| &p.spans).unwrap_or(&empty);
        pairs.push((align(post, sa).counts, align(post, sb).counts));
    }

    let total = |swap: &dyn Fn(usize) -> bool| -> (PostCounts, PostCounts) {
        let mut ta = PostCounts::default();
        let mut tb = PostCounts::default();
        for (i, (ca, cb)) in pairs.iter().enumerate() {
            if swap(i) {
                ta.add(cb);
                tb.add(ca);
            } else {
                ta.add(ca);
                tb.add(cb);
            }
        }
        (ta, tb)
    };

    let (ta, tb) = total(&|_| false);
    let delta_observed = metric_of(&ta, metric) - metric_of(&tb, metric);

    let mut hits = 0usize;
    for iter in 0..iterations {
        let mut rng = Rng::new(derive_seed(seed, &format!("shuffle-{iter}")));
        let swaps: Vec<bool> = (0..pairs.len()).map(|_| rng.bernoulli(0.5)).collect();
        let (sa, sb) = total(&|i| swaps[i]);
        let delta = metric_of(&sa, metric) - metric_of(&sb, metric);
        if delta.abs() >= delta_observed.abs() {
            hits += 1;
        }
    }

    Ok(SigTestResult {
        metric,
        delta_observed,
        p_value: (hits + 1) as f64 / (iterations + 1) as f64,
        iterations,
        seed,
    })
}
