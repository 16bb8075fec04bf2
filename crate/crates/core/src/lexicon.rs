//! Sentiment lexicons in three families, with token lookup and the
//! phrase-level polarity vote used by the lexicon baseline.
//!
//! File formats (all TSV, one entry per line):
//! * prior list:  `word<TAB>pos|neg`
//! * scored:      `lemma<TAB>pos_score<TAB>neg_score` (scores in [0,1])
//! * gloss keyed: `english_word<TAB>pos|neg|neutral<TAB>strong|weak`

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::{Polarity, Post, TargetSpan, WordAnalysis};
use crate::error::{Error, Result};
use crate::morpho::{Token, TokenKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LexiconKind {
    PriorList,
    Scored,
    GlossKeyed,
}

impl LexiconKind {
    /// Short identifier used in feature atom templates.
    pub fn tag(&self) -> &'static str {
        match self {
            LexiconKind::PriorList => "prior",
            LexiconKind::Scored => "scored",
            LexiconKind::GlossKeyed => "gloss",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PriorPolarity {
    Pos,
    Neg,
    Neutral,
}

impl PriorPolarity {
    /// Spelled-out form used in sentiment-path feature atoms.
    pub fn spelled(&self) -> &'static str {
        match self {
            PriorPolarity::Pos => "positive",
            PriorPolarity::Neg => "negative",
            PriorPolarity::Neutral => "neutral",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strength {
    Strong,
    Weak,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexEntry {
    pub prior: PriorPolarity,
    pub subjective: bool,
    /// Scores are meaningful for the scored family only.
    pub pos_score: f64,
    pub neg_score: f64,
    /// Strength annotation of gloss-keyed entries (optional feature atom).
    pub strength: Option<Strength>,
}

impl LexEntry {
    pub fn prior(prior: PriorPolarity) -> Self {
        LexEntry {
            prior,
            subjective: prior != PriorPolarity::Neutral,
            pos_score: 0.0,
            neg_score: 0.0,
            strength: None,
        }
    }

    pub fn neutral() -> Self {
        LexEntry {
            prior: PriorPolarity::Neutral,
            subjective: false,
            pos_score: 0.0,
            neg_score: 0.0,
            strength: None,
        }
    }
}

/// A loaded sentiment lexicon. Immutable after construction; any number of
/// readers may share it.
#[derive(Debug, Clone)]
pub struct Lexicon {
    pub kind: LexiconKind,
    entries: HashMap<String, LexEntry>,
    /// Subjectivity threshold; set for the scored family.
    pub threshold: Option<f64>,
}

impl Lexicon {
    pub fn prior_list() -> Self {
        Lexicon {
            kind: LexiconKind::PriorList,
            entries: HashMap::new(),
            threshold: None,
        }
    }

    pub fn insert(&mut self, key: String, entry: LexEntry) {
        self.entries.insert(key, entry);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn subjective_count(&self) -> usize {
        self.entries.values().filter(|e| e.subjective).count()
    }

    pub fn get(&self, key: &str) -> Option<&LexEntry> {
        self.entries.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &LexEntry)> {
        self.entries.iter()
    }

    /// Looks an analyzed word up directly (used by the phrase baseline and
    /// for dependency-parent features). Prior and scored lexicons key on
    /// the lemma; the gloss-keyed family walks the word's English glosses,
    /// first subjective hit winning, then first hit.
    pub fn lookup_word(&self, word: &WordAnalysis) -> Option<&LexEntry> {
        match self.kind {
            LexiconKind::PriorList | LexiconKind::Scored => self.entries.get(&word.lemma),
            LexiconKind::GlossKeyed => {
                let mut first: Option<&LexEntry> = None;
                for gloss in &word.glosses {
                    let key = match gloss.split_whitespace().next() {
                        Some(w) => w.to_lowercase(),
                        None => continue,
                    };
                    if let Some(e) = self.entries.get(&key) {
                        if e.subjective {
                            return Some(e);
                        }
                        first = first.or(Some(e));
                    }
                }
                first
            }
        }
    }

    /// Token-level lookup. Wordform tokens resolve through their source
    /// word; clitic tokens are function words and never hit a sentiment
    /// lexicon, so they are absent by definition.
    pub fn lookup(&self, token: &Token, word: &WordAnalysis) -> Option<&LexEntry> {
        match token.kind {
            TokenKind::Wordform => self.lookup_word(word),
            TokenKind::Clitic => None,
        }
    }
}

fn parse_prior(path: &str, lineno: usize, s: &str, allow_neutral: bool) -> Result<PriorPolarity> {
    match s {
        "pos" => Ok(PriorPolarity::Pos),
        "neg" => Ok(PriorPolarity::Neg),
        "neutral" if allow_neutral => Ok(PriorPolarity::Neutral),
        other => Err(Error::parse(
            path,
            lineno,
            format!("unknown polarity {other:?}"),
        )),
    }
}

/// Loads a lexicon file. `threshold` applies to the scored family: an entry
/// is subjective iff max(pos_score, neg_score) >= threshold, with prior set
/// to the larger side; equal scores give a neutral, non-subjective entry.
pub fn load_lexicon(path: impl AsRef<Path>, kind: LexiconKind, threshold: f64) -> Result<Lexicon> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| Error::io(&display, e))?;

    let mut lex = Lexicon {
        kind,
        entries: HashMap::new(),
        threshold: match kind {
            LexiconKind::Scored => Some(threshold),
            _ => None,
        },
    };

    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match kind {
            LexiconKind::PriorList => {
                if fields.len() != 2 {
                    return Err(Error::parse(&display, lineno, "expected word<TAB>pos|neg"));
                }
                let prior = parse_prior(&display, lineno, fields[1], false)?;
                lex.entries
                    .insert(fields[0].to_string(), LexEntry::prior(prior));
            }
            LexiconKind::Scored => {
                if fields.len() != 3 {
                    return Err(Error::parse(
                        &display,
                        lineno,
                        "expected lemma<TAB>pos_score<TAB>neg_score",
                    ));
                }
                let pos_score: f64 = fields[1].parse().map_err(|_| {
                    Error::parse(&display, lineno, format!("bad pos_score {:?}", fields[1]))
                })?;
                let neg_score: f64 = fields[2].parse().map_err(|_| {
                    Error::parse(&display, lineno, format!("bad neg_score {:?}", fields[2]))
                })?;
                for (name, v) in [("pos_score", pos_score), ("neg_score", neg_score)] {
                    if !(0.0..=1.0).contains(&v) {
                        return Err(Error::parse(
                            &display,
                            lineno,
                            format!("{name} {v} outside [0,1]"),
                        ));
                    }
                }
                let (prior, subjective) = if pos_score == neg_score {
                    (PriorPolarity::Neutral, false)
                } else if pos_score > neg_score {
                    (PriorPolarity::Pos, pos_score >= threshold)
                } else {
                    (PriorPolarity::Neg, neg_score >= threshold)
                };
                let prior = if subjective { prior } else { PriorPolarity::Neutral };
                lex.entries.insert(
                    fields[0].to_string(),
                    LexEntry {
                        prior,
                        subjective,
                        pos_score,
                        neg_score,
                        strength: None,
                    },
                );
            }
            LexiconKind::GlossKeyed => {
                if fields.len() != 3 {
                    return Err(Error::parse(
                        &display,
                        lineno,
                        "expected word<TAB>pos|neg|neutral<TAB>strong|weak",
                    ));
                }
                let prior = parse_prior(&display, lineno, fields[1], true)?;
                let strength = match fields[2] {
                    "strong" => Strength::Strong,
                    "weak" => Strength::Weak,
                    other => {
                        return Err(Error::parse(
                            &display,
                            lineno,
                            format!("unknown strength {other:?}"),
                        ))
                    }
                };
                lex.entries.insert(
                    fields[0].to_lowercase(),
                    LexEntry {
                        prior,
                        subjective: prior != PriorPolarity::Neutral,
                        pos_score: 0.0,
                        neg_score: 0.0,
                        strength: Some(strength),
                    },
                );
            }
        }
    }
    Ok(lex)
}

/// Characters that delimit phrases for the lexicon baseline. Includes the
/// Arabic question mark and comma.
const PHRASE_PUNCT: &[char] = &['.', '!', '?', '؟', '،', ';', ':'];

fn is_punct_word(word: &WordAnalysis) -> bool {
    !word.surface.is_empty() && word.surface.chars().all(|c| PHRASE_PUNCT.contains(&c))
}

/// Majority polarity vote over the punctuation-delimited phrase containing
/// the span. Posts without punctuation vote over the whole post. Ties and
/// zero hits return negative.
pub fn phrase_polarity(post: &Post, span: &TargetSpan, lex: &Lexicon) -> Polarity {
    let n = post.words.len();
    let mut start = span.first_word;
    while start > 0 && !is_punct_word(&post.words[start - 1]) {
        start -= 1;
    }
    let mut end = span.last_word;
    while end + 1 < n && !is_punct_word(&post.words[end + 1]) {
        end += 1;
    }

    let mut pos = 0usize;
    let mut neg = 0usize;
    for w in &post.words[start..=end] {
        if let Some(entry) = lex.lookup_word(w) {
            match entry.prior {
                PriorPolarity::Pos => pos += 1,
                PriorPolarity::Neg => neg += 1,
                PriorPolarity::Neutral => {}
            }
        }
    }
    if pos > neg {
        Polarity::Pos
    } else {
        Polarity::Neg
    }
}
