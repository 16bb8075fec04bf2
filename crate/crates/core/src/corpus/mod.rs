//! Annotated-post data model, corpus I/O, validation, and splitting.
//!
//! A corpus file is UTF-8 text with one JSON object per line, mirroring
//! [`Post`] with snake_case keys. The dependency head of a word is encoded
//! as `-1` for the tree root, otherwise as the head's word index.

mod synth;

pub use synth::{generate_synthetic, SynthConfig};

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rng::Rng;

/// Topic domain of a post.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Politics,
    Culture,
    Sports,
    Synthetic,
}

/// Polarity annotated on a target span. `Ambig` marks spans whose polarity
/// annotators did not agree on; they train the target model but are dropped
/// from sentiment training and sentiment scoring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    Pos,
    Neg,
    Ambig,
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Polarity::Pos => write!(f, "pos"),
            Polarity::Neg => write!(f, "neg"),
            Polarity::Ambig => write!(f, "ambig"),
        }
    }
}

/// Kind of a morphological segment within a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SegmentKind {
    Proclitic,
    Stem,
    Enclitic,
}

/// One morphological segment of a word: a clitic or the stem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub form: String,
    /// Detailed POS for clitics (e.g. `DET`, `conj`, `poss_pron_3MP`);
    /// for stems this repeats the word-level POS.
    pub detailed_pos: String,
    pub kind: SegmentKind,
    pub is_definite_article: bool,
}

/// Dependency head of a word: another word's index, or the tree root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepHead {
    Root,
    Word(usize),
}

impl Serialize for DepHead {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            DepHead::Root => s.serialize_i64(-1),
            DepHead::Word(i) => s.serialize_i64(*i as i64),
        }
    }
}

impl<'de> Deserialize<'de> for DepHead {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        if v == -1 {
            Ok(DepHead::Root)
        } else if v >= 0 {
            Ok(DepHead::Word(v as usize))
        } else {
            Err(serde::de::Error::custom(format!(
                "dep_head must be -1 or a non-negative word index, got {v}"
            )))
        }
    }
}

/// Full per-word analysis as produced by an upstream analyzer/parser.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WordAnalysis {
    pub surface: String,
    pub lemma: String,
    pub pos: String,
    pub segments: Vec<Segment>,
    pub glosses: Vec<String>,
    /// Base-phrase chunk tag, BIO style (`B-NP`, `I-NP`, `O`, ...).
    pub bpc: String,
    /// Named-entity tag, BIO style (`B-ORG`, `O`, ...).
    pub ner: String,
    pub dep_head: DepHead,
    pub dep_rel: String,
}

impl WordAnalysis {
    pub fn stem(&self) -> Option<&Segment> {
        self.segments.iter().find(|s| s.kind == SegmentKind::Stem)
    }

    pub fn has_definite_article(&self) -> bool {
        self.segments.iter().any(|s| s.is_definite_article)
    }
}

/// Gold or predicted target span over word indices (inclusive).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetSpan {
    pub first_word: usize,
    pub last_word: usize,
    pub polarity: Polarity,
}

impl TargetSpan {
    pub fn new(first_word: usize, last_word: usize, polarity: Polarity) -> Self {
        TargetSpan {
            first_word,
            last_word,
            polarity,
        }
    }

    pub fn len(&self) -> usize {
        self.last_word - self.first_word + 1
    }

    pub fn is_empty(&self) -> bool {
        false // spans are non-empty by construction (first <= last)
    }

    pub fn words(&self) -> impl Iterator<Item = usize> {
        self.first_word..=self.last_word
    }
}

/// One annotated online post.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Post {
    pub id: String,
    pub domain: Domain,
    pub words: Vec<WordAnalysis>,
    pub gold_targets: Vec<TargetSpan>,
}

impl Post {
    /// Returns human-readable descriptions of every violated invariant;
    /// empty when the post is well formed.
    pub fn validate(&self) -> Vec<String> {
        validate_post(self)
    }
}

/// Checks all structural invariants of a post. Violations are returned,
/// never thrown, so callers can report them in bulk.
pub fn validate_post(post: &Post) -> Vec<String> {
    let mut violations = Vec::new();
    let n = post.words.len();

    for (k, span) in post.gold_targets.iter().enumerate() {
        if span.first_word > span.last_word {
            violations.push(format!(
                "span {k}: first_word {} > last_word {}",
                span.first_word, span.last_word
            ));
        }
        if span.last_word >= n {
            violations.push(format!(
                "span {k}: last_word {} out of range for {n} words",
                span.last_word
            ));
        }
    }

    for (i, word) in post.words.iter().enumerate() {
        let stems = word
            .segments
            .iter()
            .filter(|s| s.kind == SegmentKind::Stem)
            .count();
        if stems != 1 {
            violations.push(format!("word {i} ({}): {stems} stem segments", word.surface));
        }
        let mut seen_stem = false;
        let mut seen_enclitic = false;
        for seg in &word.segments {
            match seg.kind {
                SegmentKind::Proclitic => {
                    if seen_stem || seen_enclitic {
                        violations.push(format!(
                            "word {i} ({}): proclitic {} after stem",
                            word.surface, seg.form
                        ));
                    }
                    // only proclitics can carry the definite article
                }
                SegmentKind::Stem => seen_stem = true,
                SegmentKind::Enclitic => {
                    if !seen_stem {
                        violations.push(format!(
                            "word {i} ({}): enclitic {} before stem",
                            word.surface, seg.form
                        ));
                    }
                    seen_enclitic = true;
                }
            }
            if seg.is_definite_article && seg.kind != SegmentKind::Proclitic {
                violations.push(format!(
                    "word {i} ({}): definite article on non-proclitic segment {}",
                    word.surface, seg.form
                ));
            }
        }
        if let DepHead::Word(h) = word.dep_head {
            if h >= n {
                violations.push(format!("word {i}: dep_head {h} out of range"));
            } else if h == i {
                violations.push(format!("word {i}: dep_head points to itself"));
            }
        }
    }

    // Head chains must terminate at the root; a chain longer than the
    // sentence means a cycle.
    for start in 0..n {
        let mut cur = start;
        let mut steps = 0;
        loop {
            match post.words[cur].dep_head {
                DepHead::Root => break,
                DepHead::Word(h) => {
                    if h >= n || h == cur {
                        break; // already reported above
                    }
                    cur = h;
                    steps += 1;
                    if steps > n {
                        violations.push(format!("word {start}: cyclic dependency head chain"));
                        break;
                    }
                }
            }
        }
    }

    violations
}

/// Serializes one post as a single canonical JSON line (no trailing newline).
pub fn post_to_line(post: &Post) -> String {
    serde_json::to_string(post).expect("post serialization cannot fail")
}

/// Loads a corpus from a one-post-per-line JSON file, validating every post.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<Post>> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let file = fs::File::open(path).map_err(|e| Error::io(&display, e))?;
    let reader = BufReader::new(file);

    let mut posts = Vec::new();
    let mut seen = HashSet::new();
    for (lineno, line) in reader.lines().enumerate() {
        let lineno = lineno + 1;
        let line = line.map_err(|e| Error::io(&display, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let post: Post = serde_json::from_str(&line)
            .map_err(|e| Error::parse(&display, lineno, e.to_string()))?;
        let violations = validate_post(&post);
        if !violations.is_empty() {
            return Err(Error::InvalidPost {
                post_id: post.id.clone(),
                violations,
            });
        }
        if !seen.insert(post.id.clone()) {
            return Err(Error::DuplicatePostId {
                id: post.id.clone(),
                line: lineno,
            });
        }
        posts.push(post);
    }
    Ok(posts)
}

/// Writes a corpus in the canonical one-post-per-line format.
pub fn save_corpus(path: impl AsRef<Path>, posts: &[Post]) -> Result<()> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let mut out = fs::File::create(path).map_err(|e| Error::io(&display, e))?;
    for post in posts {
        writeln!(out, "{}", post_to_line(post)).map_err(|e| Error::io(&display, e))?;
    }
    Ok(())
}

/// How posts are distributed over splits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitStrategy {
    /// Seeded shuffle within each domain stratum; every split receives every
    /// domain whenever its size permits.
    Stratified,
    /// Seeded shuffle over the whole corpus.
    Random,
}

/// Deterministic train/dev/test split. Sizes are the largest-remainder
/// rounding of the ratios; the three parts are disjoint and their union is
/// the input.
pub fn split_corpus(
    corpus: &[Post],
    ratios: (f64, f64, f64),
    seed: u64,
) -> Result<(Vec<Post>, Vec<Post>, Vec<Post>)> {
    split_corpus_with(corpus, ratios, seed, SplitStrategy::Stratified)
}

pub fn split_corpus_with(
    corpus: &[Post],
    ratios: (f64, f64, f64),
    seed: u64,
    strategy: SplitStrategy,
) -> Result<(Vec<Post>, Vec<Post>, Vec<Post>)> {
    let r = [ratios.0, ratios.1, ratios.2];
    if r.iter().any(|&x| x < 0.0) {
        return Err(Error::InvalidConfig("split ratios must be non-negative".into()));
    }
    let total: f64 = r.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidConfig(format!(
            "split ratios must sum to 1, got {total}"
        )));
    }
    let nonzero = r.iter().filter(|&&x| x > 0.0).count();
    if corpus.len() < nonzero {
        return Err(Error::InvalidConfig(format!(
            "corpus of {} posts cannot fill {nonzero} nonzero splits",
            corpus.len()
        )));
    }

    let n = corpus.len();
    let targets = largest_remainder(n, &r);

    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = Rng::new(seed);
    match strategy {
        SplitStrategy::Random => rng.shuffle(&mut order),
        SplitStrategy::Stratified => {
            // Shuffle within each domain stratum, then concatenate strata in
            // domain order. Assignment below walks this order round-robin by
            // quota deficit, so every stratum spreads across the splits.
            let mut strata: Vec<(Domain, Vec<usize>)> = Vec::new();
            let mut domains: Vec<Domain> = corpus.iter().map(|p| p.domain).collect();
            domains.sort();
            domains.dedup();
            for d in domains {
                let mut members: Vec<usize> =
                    (0..n).filter(|&i| corpus[i].domain == d).collect();
                rng.shuffle(&mut members);
                strata.push((d, members));
            }
            order = strata.into_iter().flat_map(|(_, m)| m).collect();
        }
    }

    // Walk the ordered posts, assigning each to the split with the largest
    // quota deficit so far. This interleaves the (stratified) order into
    // all splits, so each stratum spreads proportionally, and the capacity
    // check makes totals hit the targets exactly.
    let mut assigned = [0usize; 3];
    let mut splits: [Vec<Post>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (step, &idx) in order.iter().enumerate() {
        let progress = (step + 1) as f64 / n as f64;
        let mut best = usize::MAX;
        let mut best_deficit = f64::MIN;
        for s in 0..3 {
            if assigned[s] >= targets[s] {
                continue;
            }
            let deficit = targets[s] as f64 * progress - assigned[s] as f64;
            if deficit > best_deficit {
                best_deficit = deficit;
                best = s;
            }
        }
        assigned[best] += 1;
        splits[best].push(corpus[idx].clone());
    }

    let [train, dev, test] = splits;
    Ok((train, dev, test))
}

/// Largest-remainder apportionment of `n` items over the given ratios.
/// Ties go to the earlier split for determinism.
fn largest_remainder(n: usize, ratios: &[f64; 3]) -> [usize; 3] {
    let exact: Vec<f64> = ratios.iter().map(|r| r * n as f64).collect();
    let mut sizes: [usize; 3] = [
        exact[0].floor() as usize,
        exact[1].floor() as usize,
        exact[2].floor() as usize,
    ];
    let assigned: usize = sizes.iter().sum();
    let mut fracs: Vec<(usize, f64)> = exact
        .iter()
        .enumerate()
        .map(|(i, e)| (i, e - e.floor()))
        .collect();
    fracs.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    for k in 0..(n - assigned) {
        sizes[fracs[k % 3].0] += 1;
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(surface: &str, lemma: &str, pos: &str) -> WordAnalysis {
        WordAnalysis {
            surface: surface.into(),
            lemma: lemma.into(),
            pos: pos.into(),
            segments: vec![Segment {
                form: surface.into(),
                detailed_pos: pos.into(),
                kind: SegmentKind::Stem,
                is_definite_article: false,
            }],
            glosses: vec![],
            bpc: "O".into(),
            ner: "O".into(),
            dep_head: DepHead::Root,
            dep_rel: "---".into(),
        }
    }

    fn tiny_post(id: &str, n_words: usize) -> Post {
        Post {
            id: id.into(),
            domain: Domain::Synthetic,
            words: (0..n_words)
                .map(|i| word(&format!("w{i}"), &format!("l{i}"), "noun"))
                .collect(),
            gold_targets: vec![],
        }
    }

    #[test]
    fn well_formed_post_has_no_violations() {
        let p = tiny_post("p1", 4);
        assert!(validate_post(&p).is_empty());
    }

    #[test]
    fn inverted_span_is_one_violation() {
        let mut p = tiny_post("p1", 4);
        p.gold_targets.push(TargetSpan::new(3, 1, Polarity::Pos));
        assert_eq!(validate_post(&p).len(), 1);
    }

    #[test]
    fn span_out_of_range_is_reported_with_span() {
        let mut p = tiny_post("p1", 10);
        p.gold_targets.push(TargetSpan::new(11, 12, Polarity::Neg));
        let v = validate_post(&p);
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("span 0"), "{v:?}");
    }

    #[test]
    fn duplicated_stem_is_a_violation() {
        let mut p = tiny_post("p1", 2);
        let extra = p.words[0].segments[0].clone();
        p.words[0].segments.push(extra);
        let v = validate_post(&p);
        assert_eq!(v.len(), 1);
        assert!(v[0].contains("2 stem segments"));
    }

    #[test]
    fn cyclic_heads_are_detected() {
        let mut p = tiny_post("p1", 3);
        p.words[0].dep_head = DepHead::Word(1);
        p.words[1].dep_head = DepHead::Word(2);
        p.words[2].dep_head = DepHead::Word(0);
        assert!(validate_post(&p).iter().any(|v| v.contains("cyclic")));
    }

    #[test]
    fn empty_file_loads_empty_corpus() {
        let dir = std::env::temp_dir().join("tsa_corpus_empty_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("empty.jsonl");
        std::fs::write(&path, "").unwrap();
        assert!(load_corpus(&path).unwrap().is_empty());
    }

    #[test]
    fn roundtrip_preserves_order_and_bytes() {
        let dir = std::env::temp_dir().join("tsa_corpus_rt_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("two.jsonl");
        let posts = vec![tiny_post("a", 2), tiny_post("b", 3)];
        save_corpus(&path, &posts).unwrap();
        let bytes1 = std::fs::read(&path).unwrap();
        let loaded = load_corpus(&path).unwrap();
        assert_eq!(loaded, posts);
        save_corpus(&path, &loaded).unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), bytes1);
    }

    #[test]
    fn invalid_span_rejected_at_load_naming_span() {
        let dir = std::env::temp_dir().join("tsa_corpus_bad_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bad.jsonl");
        let mut p = tiny_post("p1", 10);
        p.gold_targets.push(TargetSpan::new(12, 12, Polarity::Pos));
        std::fs::write(&path, post_to_line(&p)).unwrap();
        let err = load_corpus(&path).unwrap_err();
        assert!(err.to_string().contains("span 0"), "{err}");
    }

    #[test]
    fn duplicate_id_rejected() {
        let dir = std::env::temp_dir().join("tsa_corpus_dup_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("dup.jsonl");
        let p = tiny_post("same", 2);
        std::fs::write(&path, format!("{}\n{}\n", post_to_line(&p), post_to_line(&p))).unwrap();
        assert!(matches!(
            load_corpus(&path).unwrap_err(),
            Error::DuplicatePostId { .. }
        ));
    }

    #[test]
    fn split_sizes_are_rounded_shares() {
        let corpus: Vec<Post> = (0..100).map(|i| tiny_post(&format!("p{i}"), 2)).collect();
        let (tr, dev, te) = split_corpus(&corpus, (0.8, 0.1, 0.1), 7).unwrap();
        assert_eq!((tr.len(), dev.len(), te.len()), (80, 10, 10));
    }

    #[test]
    fn degenerate_split_keeps_everything_in_train() {
        let corpus: Vec<Post> = (0..10).map(|i| tiny_post(&format!("p{i}"), 2)).collect();
        let (tr, dev, te) = split_corpus(&corpus, (1.0, 0.0, 0.0), 1).unwrap();
        assert_eq!((tr.len(), dev.len(), te.len()), (10, 0, 0));
    }

    #[test]
    fn split_is_deterministic() {
        let corpus: Vec<Post> = (0..37).map(|i| tiny_post(&format!("p{i}"), 2)).collect();
        let a = split_corpus(&corpus, (0.8, 0.1, 0.1), 99).unwrap();
        let b = split_corpus(&corpus, (0.8, 0.1, 0.1), 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tiny_corpus_with_three_splits_errors() {
        let corpus: Vec<Post> = (0..2).map(|i| tiny_post(&format!("p{i}"), 2)).collect();
        assert!(split_corpus(&corpus, (0.8, 0.1, 0.1), 0).is_err());
    }

    #[test]
    fn stratified_split_covers_domains() {
        let mut corpus = Vec::new();
        for i in 0..30 {
            let mut p = tiny_post(&format!("pol{i}"), 2);
            p.domain = Domain::Politics;
            corpus.push(p);
        }
        for i in 0..30 {
            let mut p = tiny_post(&format!("cul{i}"), 2);
            p.domain = Domain::Culture;
            corpus.push(p);
        }
        for i in 0..40 {
            let mut p = tiny_post(&format!("spo{i}"), 2);
            p.domain = Domain::Sports;
            corpus.push(p);
        }
        let (tr, dev, te) = split_corpus(&corpus, (0.8, 0.1, 0.1), 5).unwrap();
        assert_eq!((tr.len(), dev.len(), te.len()), (80, 10, 10));
        for split in [&tr, &dev, &te] {
            for d in [Domain::Politics, Domain::Culture, Domain::Sports] {
                assert!(split.iter().any(|p| p.domain == d), "missing {d:?}");
            }
        }
    }

    #[test]
    fn root_head_serializes_as_minus_one() {
        let p = tiny_post("p", 1);
        let line = post_to_line(&p);
        assert!(line.contains("\"dep_head\":-1"), "{line}");
    }
}
