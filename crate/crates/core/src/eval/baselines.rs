//! Target and sentiment baselines: all noun phrases as targets, and
//! majority / lexicon-vote polarity assignment.

use crate::corpus::{Polarity, Post, TargetSpan};
use crate::error::{Error, Result};
use crate::lexicon::{phrase_polarity, Lexicon};

/// Every maximal NP chunk as a predicted span; bare nouns outside chunks
/// become singleton spans. Polarity is left negative for later assignment.
pub fn baseline_all_np(post: &Post) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let n = post.words.len();
    let mut i = 0;
    while i < n {
        let bpc = post.words[i].bpc.as_str();
        if bpc == "B-NP" || bpc == "I-NP" {
            let first = i;
            i += 1;
            while i < n && post.words[i].bpc == "I-NP" {
                i += 1;
            }
            spans.push((first, i - 1));
        } else {
            if bpc == "O" && post.words[i].pos.to_lowercase().starts_with("noun") {
                spans.push((i, i));
            }
            i += 1;
        }
    }
    spans
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SentimentBaseline {
    /// Always negative, the corpus majority class.
    Majority,
    /// Majority vote of lexicon polarities over the punctuation-delimited
    /// phrase containing the span.
    Lexicon,
}

/// Attaches baseline polarities to target spans.
pub fn baseline_sentiment(
    post: &Post,
    spans: &[(usize, usize)],
    variant: SentimentBaseline,
    lex: Option<&Lexicon>,
) -> Result<Vec<TargetSpan>> {
    let lex = match variant {
        SentimentBaseline::Majority => None,
        SentimentBaseline::Lexicon => Some(lex.ok_or_else(|| {
            Error::InvalidConfig("lexicon baseline requires a lexicon".into())
        })?),
    };
    spans
        .iter()
        .map(|&(first, last)| {
            let polarity = match lex {
                None => Polarity::Neg,
                Some(lex) => {
                    let probe = TargetSpan::new(first, last, Polarity::Neg);
                    phrase_polarity(post, &probe, lex)
                }
            };
            Ok(TargetSpan::new(first, last, polarity))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{generate_synthetic, SynthConfig};
    use crate::eval::{align, metrics_from_counts, PostCounts};

    #[test]
    fn all_np_has_perfect_recall_on_synthetic_gold() {
        let (posts, _) = generate_synthetic(&SynthConfig {
            n_posts: 60,
            ..Default::default()
        })
        .unwrap();
        let mut total = PostCounts::default();
        for post in &posts {
            let spans = baseline_all_np(post);
            let preds = baseline_sentiment(post, &spans, SentimentBaseline::Majority, None)
                .unwrap();
            total.add(&align(post, &preds).counts);
        }
        let r = metrics_from_counts(&total);
        assert_eq!(r.target_recall, 1.0, "{r:?}");
        assert!(r.target_precision < 0.6, "{}", r.target_precision);
    }

    #[test]
    fn majority_baseline_never_predicts_positive() {
        let (posts, _) = generate_synthetic(&SynthConfig {
            n_posts: 20,
            ..Default::default()
        })
        .unwrap();
        let mut total = PostCounts::default();
        for post in &posts {
            let spans = baseline_all_np(post);
            let preds =
                baseline_sentiment(post, &spans, SentimentBaseline::Majority, None).unwrap();
            assert!(preds.iter().all(|s| s.polarity == Polarity::Neg));
            total.add(&align(post, &preds).counts);
        }
        let r = metrics_from_counts(&total);
        assert_eq!(r.f_pos, 0.0);
        assert!(r.f_neg > 0.0);
    }

    #[test]
    fn lexicon_baseline_beats_majority_on_planted_corpora() {
        let (posts, lex) = generate_synthetic(&SynthConfig {
            n_posts: 80,
            ..Default::default()
        })
        .unwrap();
        let mut maj = PostCounts::default();
        let mut voted = PostCounts::default();
        for post in &posts {
            let spans = baseline_all_np(post);
            let m = baseline_sentiment(post, &spans, SentimentBaseline::Majority, None).unwrap();
            let v =
                baseline_sentiment(post, &spans, SentimentBaseline::Lexicon, Some(&lex)).unwrap();
            maj.add(&align(post, &m).counts);
            voted.add(&align(post, &v).counts);
        }
        let rm = metrics_from_counts(&maj);
        let rv = metrics_from_counts(&voted);
        assert!(rv.acc_sent > rm.acc_sent, "{} vs {}", rv.acc_sent, rm.acc_sent);
        assert!(rv.f_pos > 0.0);
    }

    #[test]
    fn no_nouns_no_predictions() {
        let (mut posts, _) = generate_synthetic(&SynthConfig {
            n_posts: 1,
            ..Default::default()
        })
        .unwrap();
        for w in &mut posts[0].words {
            w.bpc = "O".into();
            w.pos = "verb".into();
        }
        assert!(baseline_all_np(&posts[0]).is_empty());
    }

    #[test]
    fn lexicon_variant_without_lexicon_errors() {
        let (posts, _) = generate_synthetic(&SynthConfig {
            n_posts: 1,
            ..Default::default()
        })
        .unwrap();
        assert!(
            baseline_sentiment(&posts[0], &[(0, 0)], SentimentBaseline::Lexicon, None).is_err()
        );
    }
}
