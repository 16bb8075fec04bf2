//! Scheme-specific token derivation, gold-label projection onto tokens,
//! word-level span recovery from token labels, and the clitic reduction
//! that feeds a D3 target stage into an ATB sentiment stage.

use serde::{Deserialize, Serialize};

use crate::corpus::{Polarity, Post, SegmentKind, TargetSpan};
use crate::error::{Error, Result};

/// Tokenization scheme for deriving CRF input sequences from analyzed words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// One token per word, surface form.
    Surface,
    /// One token per word, lemma form; clitics are dropped.
    Lemma,
    /// Lemma word forms with clitic tokens split off, except the definite
    /// article which stays fused to the stem.
    LemmaAtb,
    /// Lemma word forms with every clitic split off, including the
    /// definite article.
    LemmaD3,
}

impl Scheme {
    pub fn name(&self) -> &'static str {
        match self {
            Scheme::Surface => "surface",
            Scheme::Lemma => "lemma",
            Scheme::LemmaAtb => "lemma_atb",
            Scheme::LemmaD3 => "lemma_d3",
        }
    }

    pub fn parse(s: &str) -> Result<Scheme> {
        match s {
            "surface" => Ok(Scheme::Surface),
            "lemma" => Ok(Scheme::Lemma),
            "lemma_atb" | "atb" => Ok(Scheme::LemmaAtb),
            "lemma_d3" | "d3" => Ok(Scheme::LemmaD3),
            other => Err(Error::InvalidConfig(format!("unknown scheme {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenKind {
    Wordform,
    Clitic,
}

/// One CRF input token. Clitic tokens keep an explicit `+` on the side they
/// attach from (`f+`, `Al+`, `+hA`) so proclitic and enclitic homographs
/// stay distinct features.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub repr: String,
    pub pos: String,
    pub kind: TokenKind,
    pub carries_definite_article: bool,
}

/// A scheme-derived token sequence with its word alignment. `alignment[t]`
/// is the source word index of token `t`; it is total and monotone, and the
/// tokens of one word are contiguous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSequence {
    pub scheme: Scheme,
    pub tokens: Vec<Token>,
    pub alignment: Vec<usize>,
}

impl TokenSequence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Source word index of token `t`.
    pub fn word_of(&self, t: usize) -> usize {
        self.alignment[t]
    }
}

/// Sequence-labeling task discriminator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Task {
    Target,
    Sentiment,
}

/// Labels of the target model: a token is `Target` iff it is part of a
/// target mention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetLabel {
    Target,
    Outside,
}

impl TargetLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            TargetLabel::Target => "T",
            TargetLabel::Outside => "O",
        }
    }
}

/// Labels of the sentiment model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SentimentLabel {
    Pos,
    Neg,
    Neutral,
}

impl SentimentLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            SentimentLabel::Pos => "P",
            SentimentLabel::Neg => "N",
            SentimentLabel::Neutral => "NEUTRAL",
        }
    }
}

/// Derives the token sequence of `post` under `scheme`.
pub fn derive_tokens(post: &Post, scheme: Scheme) -> TokenSequence {
    let mut tokens = Vec::new();
    let mut alignment = Vec::new();

    for (w, word) in post.words.iter().enumerate() {
        let has_article = word.has_definite_article();
        match scheme {
            Scheme::Surface => {
                tokens.push(Token {
                    repr: word.surface.clone(),
                    pos: word.pos.clone(),
                    kind: TokenKind::Wordform,
                    carries_definite_article: has_article,
                });
                alignment.push(w);
            }
            Scheme::Lemma => {
                tokens.push(Token {
                    repr: word.lemma.clone(),
                    pos: word.pos.clone(),
                    kind: TokenKind::Wordform,
                    carries_definite_article: has_article,
                });
                alignment.push(w);
            }
            Scheme::LemmaAtb | Scheme::LemmaD3 => {
                let split_article = scheme == Scheme::LemmaD3;
                for seg in &word.segments {
                    match seg.kind {
                        SegmentKind::Proclitic => {
                            if seg.is_definite_article && !split_article {
                                continue; // stays fused with the stem
                            }
                            tokens.push(Token {
                                repr: format!("{}+", seg.form),
                                pos: seg.detailed_pos.clone(),
                                kind: TokenKind::Clitic,
                                carries_definite_article: seg.is_definite_article,
                            });
                            alignment.push(w);
                        }
                        SegmentKind::Stem => {
                            tokens.push(Token {
                                repr: word.lemma.clone(),
                                pos: word.pos.clone(),
                                kind: TokenKind::Wordform,
                                carries_definite_article: has_article && !split_article,
                            });
                            alignment.push(w);
                        }
                        SegmentKind::Enclitic => {
                            tokens.push(Token {
                                repr: format!("+{}", seg.form),
                                pos: seg.detailed_pos.clone(),
                                kind: TokenKind::Clitic,
                                carries_definite_article: false,
                            });
                            alignment.push(w);
                        }
                    }
                }
            }
        }
    }

    TokenSequence {
        scheme,
        tokens,
        alignment,
    }
}

fn check_alignment(post: &Post, seq: &TokenSequence) -> Result<()> {
    if seq.alignment.len() != seq.tokens.len() {
        return Err(Error::Mismatch("alignment length != token count".into()));
    }
    let n = post.words.len();
    let mut prev = 0usize;
    for &w in &seq.alignment {
        if w >= n || w < prev {
            return Err(Error::Mismatch(
                "token alignment not monotone over the post's words".into(),
            ));
        }
        prev = w;
    }
    if n > 0 && seq.alignment.last() != Some(&(n - 1)) {
        return Err(Error::Mismatch("alignment does not cover every word".into()));
    }
    Ok(())
}

/// Projects gold target spans onto tokens: every token of a word inside a
/// gold span is `Target` (ambiguous spans included).
pub fn project_target_labels(post: &Post, seq: &TokenSequence) -> Result<Vec<TargetLabel>> {
    check_alignment(post, seq)?;
    let mut in_span = vec![false; post.words.len()];
    for span in &post.gold_targets {
        for w in span.words() {
            in_span[w] = true;
        }
    }
    Ok(seq
        .alignment
        .iter()
        .map(|&w| {
            if in_span[w] {
                TargetLabel::Target
            } else {
                TargetLabel::Outside
            }
        })
        .collect())
}

/// Projects gold polarities onto tokens. Ambiguous spans project to
/// `Neutral`: they train the target model but are withheld from the
/// sentiment model.
pub fn project_sentiment_labels(post: &Post, seq: &TokenSequence) -> Result<Vec<SentimentLabel>> {
    check_alignment(post, seq)?;
    let mut word_label = vec![SentimentLabel::Neutral; post.words.len()];
    for span in &post.gold_targets {
        let label = match span.polarity {
            Polarity::Pos => SentimentLabel::Pos,
            Polarity::Neg => SentimentLabel::Neg,
            Polarity::Ambig => SentimentLabel::Neutral,
        };
        for w in span.words() {
            word_label[w] = label;
        }
    }
    Ok(seq.alignment.iter().map(|&w| word_label[w]).collect())
}

/// Recovers word-level predicted spans from token labels: a word is a
/// predicted target iff any of its tokens is `Target`; maximal runs form
/// spans; span polarity is the majority over the span's polar token labels,
/// ties and all-neutral spans defaulting to negative.
pub fn project_word_predictions(
    seq: &TokenSequence,
    target_labels: &[TargetLabel],
    sentiment_labels: &[SentimentLabel],
) -> Vec<TargetSpan> {
    assert_eq!(seq.len(), target_labels.len());
    assert_eq!(seq.len(), sentiment_labels.len());
    let n_words = seq.alignment.last().map_or(0, |&w| w + 1);
    let mut word_is_target = vec![false; n_words];
    let mut pos_votes = vec![0usize; n_words];
    let mut neg_votes = vec![0usize; n_words];

    for t in 0..seq.len() {
        let w = seq.alignment[t];
        if target_labels[t] == TargetLabel::Target {
            word_is_target[w] = true;
        }
        match sentiment_labels[t] {
            SentimentLabel::Pos => pos_votes[w] += 1,
            SentimentLabel::Neg => neg_votes[w] += 1,
            SentimentLabel::Neutral => {}
        }
    }

    let mut spans = Vec::new();
    let mut w = 0;
    while w < n_words {
        if !word_is_target[w] {
            w += 1;
            continue;
        }
        let first = w;
        let mut pos = 0;
        let mut neg = 0;
        while w < n_words && word_is_target[w] {
            pos += pos_votes[w];
            neg += neg_votes[w];
            w += 1;
        }
        let polarity = if pos > neg { Polarity::Pos } else { Polarity::Neg };
        spans.push(TargetSpan::new(first, w - 1, polarity));
    }
    spans
}

/// Collapses a D3 sequence to its ATB form by fusing definite-article
/// tokens back into their stems; a merged token is `Target` iff any of its
/// constituents was. Used between the target and sentiment stages of the
/// combined pipeline.
pub fn reduce_d3_to_atb(
    seq: &TokenSequence,
    target_labels: &[TargetLabel],
) -> Result<(TokenSequence, Vec<TargetLabel>)> {
    if seq.scheme != Scheme::LemmaD3 {
        return Err(Error::Mismatch(format!(
            "reduce_d3_to_atb requires a lemma_d3 sequence, got {}",
            seq.scheme.name()
        )));
    }
    if seq.len() != target_labels.len() {
        return Err(Error::Mismatch("labels not aligned to sequence".into()));
    }

    let mut tokens = Vec::with_capacity(seq.len());
    let mut alignment = Vec::with_capacity(seq.len());
    let mut labels = Vec::with_capacity(seq.len());
    let mut pending_article: Option<TargetLabel> = None;

    for t in 0..seq.len() {
        let tok = &seq.tokens[t];
        if tok.kind == TokenKind::Clitic && tok.carries_definite_article {
            pending_article = Some(target_labels[t]);
            continue;
        }
        let mut merged = tok.clone();
        let mut label = target_labels[t];
        if tok.kind == TokenKind::Wordform {
            if let Some(article_label) = pending_article.take() {
                merged.carries_definite_article = true;
                if article_label == TargetLabel::Target {
                    label = TargetLabel::Target;
                }
            }
        }
        tokens.push(merged);
        alignment.push(seq.alignment[t]);
        labels.push(label);
    }

    Ok((
        TokenSequence {
            scheme: Scheme::LemmaAtb,
            tokens,
            alignment,
        },
        labels,
    ))
}

/// Two-column debug dump (repr, POS), one token per line.
pub fn dump_token_table(seq: &TokenSequence) -> String {
    let mut out = String::new();
    for tok in &seq.tokens {
        out.push_str(&tok.repr);
        out.push('\t');
        out.push_str(&tok.pos);
        out.push('\n');
    }
    out
}
