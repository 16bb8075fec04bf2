//! Span-subset evaluation: mention-anywhere alignment of predicted and
//! gold spans, the seven-metric report, baselines, and the approximate
//! randomization significance test.
//!
//! Matching compares lemma token sequences, so scores are comparable
//! across tokenization schemes. A predicted span validates against any
//! gold mention whose tokens contain it (or vice versa) contiguously.

mod baselines;
mod sigtest;

pub use baselines::{baseline_all_np, baseline_sentiment, SentimentBaseline};
pub use sigtest::{approx_randomization, Metric, SigTestResult};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{Polarity, Post, TargetSpan};
use crate::error::{Error, Result};

/// Predicted spans for one post. Span polarities are always positive or
/// negative; ambiguity exists only in gold annotations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub post_id: String,
    pub spans: Vec<TargetSpan>,
}

/// True iff either token sequence is a contiguous, order-preserving
/// subsequence of the other. Overlap without containment does not match.
pub fn subset_match<S: AsRef<str>>(a: &[S], b: &[S]) -> bool {
    fn contains<S: AsRef<str>>(hay: &[S], needle: &[S]) -> bool {
        if needle.len() > hay.len() {
            return false;
        }
        hay.windows(needle.len()).any(|w| {
            w.iter()
                .zip(needle)
                .all(|(x, y)| x.as_ref() == y.as_ref())
        })
    }
    if a.is_empty() || b.is_empty() {
        return false;
    }
    contains(a, b) || contains(b, a)
}

/// Lemma token strings of a span, the comparison space for matching.
pub fn span_lemmas(post: &Post, span: &TargetSpan) -> Vec<String> {
    post.words[span.first_word..=span.last_word]
        .iter()
        .map(|w| w.lemma.clone())
        .collect()
}

/// Additive per-post tallies; corpus metrics are ratios of their sums.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PostCounts {
    pub gold_spans: u64,
    pub gold_polar_spans: u64,
    pub predicted_spans: u64,
    /// Predictions matching at least one gold span.
    pub predicted_correct: u64,
    /// Predictions whose only matches are ambiguous golds; excluded from
    /// the end-to-end precision denominator since their sentiment cannot
    /// be judged.
    pub predicted_only_ambiguous: u64,
    pub recalled: u64,
    pub recalled_polar: u64,
    /// Confusion over recalled polar golds and their paired predictions.
    pub pair_pp: u64,
    pub pair_pn: u64,
    pub pair_np: u64,
    pub pair_nn: u64,
}

impl PostCounts {
    pub fn add(&mut self, o: &PostCounts) {
        self.gold_spans += o.gold_spans;
        self.gold_polar_spans += o.gold_polar_spans;
        self.predicted_spans += o.predicted_spans;
        self.predicted_correct += o.predicted_correct;
        self.predicted_only_ambiguous += o.predicted_only_ambiguous;
        self.recalled += o.recalled;
        self.recalled_polar += o.recalled_polar;
        self.pair_pp += o.pair_pp;
        self.pair_pn += o.pair_pn;
        self.pair_np += o.pair_np;
        self.pair_nn += o.pair_nn;
    }

    /// Recalled polar golds whose paired prediction carries the gold
    /// polarity.
    pub fn correct_target_and_sentiment(&self) -> u64 {
        self.pair_pp + self.pair_nn
    }
}

/// Alignment of one post's predictions against its gold spans.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PostAlignment {
    pub post_id: String,
    /// Per prediction: did it match any gold span.
    pub pred_correct: Vec<bool>,
    /// Per gold span: was it recalled, and by which prediction (the
    /// largest-overlap match, earliest on ties).
    pub gold_recalled: Vec<bool>,
    pub gold_paired_pred: Vec<Option<usize>>,
    pub counts: PostCounts,
}

/// Aligns predictions to gold spans under mention-anywhere subset matching.
/// Exact duplicate predictions are collapsed first, so duplication never
/// moves any metric.
pub fn align(post: &Post, predictions: &[TargetSpan]) -> PostAlignment {
    let mut seen = std::collections::HashSet::new();
    let predictions: Vec<TargetSpan> = predictions
        .iter()
        .filter(|s| seen.insert((s.first_word, s.last_word, s.polarity)))
        .copied()
        .collect();
    let predictions = &predictions[..];
    let gold = &post.gold_targets;
    let gold_strings: Vec<Vec<String>> = gold.iter().map(|g| span_lemmas(post, g)).collect();
    let pred_strings: Vec<Vec<String>> =
        predictions.iter().map(|p| span_lemmas(post, p)).collect();

    let mut pred_correct = vec![false; predictions.len()];
    let mut pred_matches_polar = vec![false; predictions.len()];
    let mut gold_recalled = vec![false; gold.len()];
    let mut gold_paired_pred: Vec<Option<usize>> = vec![None; gold.len()];

    for (gi, g) in gold.iter().enumerate() {
        let mut best: Option<(u64, usize)> = None; // (overlap, pred index)
        for (pi, p) in predictions.iter().enumerate() {
            if !subset_match(&pred_strings[pi], &gold_strings[gi]) {
                continue;
            }
            pred_correct[pi] = true;
            if g.polarity != Polarity::Ambig {
                pred_matches_polar[pi] = true;
            }
            gold_recalled[gi] = true;
            let overlap = pred_strings[pi].len().min(gold_strings[gi].len()) as u64;
            let better = match best {
                None => true,
                Some((bo, bpi)) => {
                    overlap > bo
                        || (overlap == bo
                            && (predictions[pi].first_word, pi)
                                < (predictions[bpi].first_word, bpi))
                }
            };
            if better {
                best = Some((overlap, pi));
            }
            let _ = p;
        }
        gold_paired_pred[gi] = best.map(|(_, pi)| pi);
    }

    let mut counts = PostCounts {
        gold_spans: gold.len() as u64,
        gold_polar_spans: gold
            .iter()
            .filter(|g| g.polarity != Polarity::Ambig)
            .count() as u64,
        predicted_spans: predictions.len() as u64,
        ..Default::default()
    };
    for pi in 0..predictions.len() {
        if pred_correct[pi] {
            counts.predicted_correct += 1;
            if !pred_matches_polar[pi] {
                counts.predicted_only_ambiguous += 1;
            }
        }
    }
    for (gi, g) in gold.iter().enumerate() {
        if !gold_recalled[gi] {
            continue;
        }
        counts.recalled += 1;
        if g.polarity == Polarity::Ambig {
            continue;
        }
        counts.recalled_polar += 1;
        let paired = gold_paired_pred[gi].expect("recalled gold has a paired prediction");
        match (predictions[paired].polarity, g.polarity) {
            (Polarity::Pos, Polarity::Pos) => counts.pair_pp += 1,
            (Polarity::Pos, Polarity::Neg) => counts.pair_pn += 1,
            (Polarity::Neg, Polarity::Pos) => counts.pair_np += 1,
            (Polarity::Neg, Polarity::Neg) => counts.pair_nn += 1,
            _ => unreachable!("prediction polarity is never ambiguous"),
        }
    }

    PostAlignment {
        post_id: post.id.clone(),
        pred_correct,
        gold_recalled,
        gold_paired_pred,
        counts,
    }
}

/// All seven metrics plus the underlying tallies. Metrics are fractions in
/// [0,1]; multiply by 100 for display.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalReport {
    pub target_recall: f64,
    pub target_precision: f64,
    pub target_f: f64,
    pub f_pos: f64,
    pub f_neg: f64,
    pub acc_sent: f64,
    pub f_all: f64,
    pub counts: PostCounts,
    /// True when precision had an empty denominator (no predictions) and
    /// was reported as zero.
    pub precision_undefined: bool,
    pub per_post: Vec<PostAlignment>,
}

fn ratio(num: u64, denom: u64, vacuous: f64) -> f64 {
    if denom == 0 {
        vacuous
    } else {
        num as f64 / denom as f64
    }
}

fn harmonic(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Computes the seven metrics from summed tallies.
pub fn metrics_from_counts(c: &PostCounts) -> EvalReport {
    let target_recall = ratio(c.recalled, c.gold_spans, 1.0);
    let target_precision = ratio(c.predicted_correct, c.predicted_spans, 0.0);
    let target_f = harmonic(target_precision, target_recall);

    let p_pos = ratio(c.pair_pp, c.pair_pp + c.pair_pn, 0.0);
    let r_pos = ratio(c.pair_pp, c.pair_pp + c.pair_np, 0.0);
    let f_pos = harmonic(p_pos, r_pos);
    let p_neg = ratio(c.pair_nn, c.pair_nn + c.pair_np, 0.0);
    let r_neg = ratio(c.pair_nn, c.pair_nn + c.pair_pn, 0.0);
    let f_neg = harmonic(p_neg, r_neg);
    let acc_sent = ratio(c.correct_target_and_sentiment(), c.recalled_polar, 1.0);

    let cts = c.correct_target_and_sentiment();
    let eligible_preds = c.predicted_spans - c.predicted_only_ambiguous;
    let f_all_p = ratio(cts, eligible_preds, 0.0);
    let f_all_r = ratio(cts, c.gold_polar_spans, 0.0);
    let f_all = harmonic(f_all_p, f_all_r);

    EvalReport {
        target_recall,
        target_precision,
        target_f,
        f_pos,
        f_neg,
        acc_sent,
        f_all,
        counts: *c,
        precision_undefined: c.predicted_spans == 0,
        per_post: Vec::new(),
    }
}

impl EvalReport {
    pub fn metric(&self, m: Metric) -> f64 {
        match m {
            Metric::TargetRecall => self.target_recall,
            Metric::TargetPrecision => self.target_precision,
            Metric::TargetF => self.target_f,
            Metric::FPos => self.f_pos,
            Metric::FNeg => self.f_neg,
            Metric::AccSent => self.acc_sent,
            Metric::FAll => self.f_all,
        }
    }
}

/// Scores predictions against the gold corpus. Prediction post ids must be
/// a subset of the corpus post ids; posts without predictions count as
/// empty prediction sets.
pub fn score(gold: &[Post], predictions: &[Prediction]) -> Result<EvalReport> {
    let by_id: HashMap<&str, &Prediction> =
        predictions.iter().map(|p| (p.post_id.as_str(), p)).collect();
    for p in predictions {
        if !gold.iter().any(|g| g.id == p.post_id) {
            return Err(Error::Mismatch(format!(
                "prediction for unknown post id {:?}",
                p.post_id
            )));
        }
    }

    let empty: Vec<TargetSpan> = Vec::new();
    let mut total = PostCounts::default();
    let mut per_post = Vec::with_capacity(gold.len());
    for post in gold {
        let spans = by_id.get(post.id.as_str()).map(|p| &p.spans).unwrap_or(&empty);
        let alignment = align(post, spans);
        total.add(&alignment.counts);
        per_post.push(alignment);
    }
    let mut report = metrics_from_counts(&total);
    report.per_post = per_post;
    Ok(report)
}

/// Gold spans reinterpreted as predictions, for sanity checks and the
/// `evaluate` identity path; ambiguous golds are emitted as negative.
pub fn gold_as_predictions(posts: &[Post]) -> Vec<Prediction> {
    posts
        .iter()
        .map(|p| Prediction {
            post_id: p.id.clone(),
            spans: p
                .gold_targets
                .iter()
                .map(|g| TargetSpan {
                    first_word: g.first_word,
                    last_word: g.last_word,
                    polarity: match g.polarity {
                        Polarity::Pos => Polarity::Pos,
                        _ => Polarity::Neg,
                    },
                })
                .collect(),
        })
        .collect()
}

/// Prediction dump: one line per post, `post_id<TAB>first:last:polarity...`.
pub fn predictions_to_dump(predictions: &[Prediction]) -> String {
    let mut out = String::new();
    for p in predictions {
        out.push_str(&p.post_id);
        for s in &p.spans {
            out.push('\t');
            out.push_str(&format!("{}:{}:{}", s.first_word, s.last_word, s.polarity));
        }
        out.push('\n');
    }
    out
}

/// Parses a prediction dump produced by [`predictions_to_dump`].
pub fn predictions_from_dump(path_label: &str, text: &str) -> Result<Vec<Prediction>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split('\t');
        let post_id = fields
            .next()
            .ok_or_else(|| Error::parse(path_label, lineno, "missing post id"))?
            .to_string();
        let mut spans = Vec::new();
        for f in fields {
            let parts: Vec<&str> = f.split(':').collect();
            if parts.len() != 3 {
                return Err(Error::parse(
                    path_label,
                    lineno,
                    format!("bad span triple {f:?}"),
                ));
            }
            let first: usize = parts[0]
                .parse()
                .map_err(|_| Error::parse(path_label, lineno, "bad span start"))?;
            let last: usize = parts[1]
                .parse()
                .map_err(|_| Error::parse(path_label, lineno, "bad span end"))?;
            let polarity = match parts[2] {
                "pos" => Polarity::Pos,
                "neg" => Polarity::Neg,
                other => {
                    return Err(Error::parse(
                        path_label,
                        lineno,
                        format!("bad polarity {other:?}"),
                    ))
                }
            };
            spans.push(TargetSpan::new(first, last, polarity));
        }
        out.push(Prediction { post_id, spans });
    }
    Ok(out)
}
