//! Desk-scale synthetic corpus generator.
//!
//! Posts are produced from a small template grammar over a seeded
//! pseudo-lemma vocabulary. Every annotation layer is populated: segments
//! (with clitics and the definite article), POS, English glosses, BIO
//! chunk and NER tags, and a dependency tree rooted at a template verb.
//!
//! The grammar plants three kinds of targets so that token-splitting
//! schemes have something real to gain:
//!
//! * explicit targets: a noun phrase followed by an opinion adjective —
//!   recoverable from context under every scheme;
//! * pronominal targets: an opinion verb carrying an enclitic object
//!   pronoun; the same verbs also occur without the pronoun (and then mark
//!   no target), so the mention is only separable once clitics become
//!   their own tokens;
//! * implicit definite targets: a definite noun after an opinion verb; the
//!   same construction with an indefinite noun is annotated as no target,
//!   so the article token is the distinguishing signal.
//!
//! Opinion lemmas are returned in a prior-polarity lexicon so lexicon
//! features and baselines work on the generated data out of the box.

use crate::error::Result;
use crate::lexicon::{LexEntry, Lexicon, PriorPolarity};
use crate::rng::Rng;

use super::{DepHead, Domain, Polarity, Post, Segment, SegmentKind, TargetSpan, WordAnalysis};

/// Configuration for [`generate_synthetic`].
#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub n_posts: usize,
    /// Seed for vocabulary construction (lemma shapes, gloss assignment).
    pub vocab_seed: u64,
    /// Seed for the post stream.
    pub seed: u64,
    /// Fraction of single-noun explicit targets that carry the definite
    /// article. Implicit targets are always definite.
    pub definite_target_fraction: f64,
    /// Fraction of distractor nouns that carry the definite article.
    pub definite_distractor_fraction: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            n_posts: 200,
            vocab_seed: 7,
            seed: 42,
            definite_target_fraction: 0.7,
            definite_distractor_fraction: 0.15,
        }
    }
}

struct VocabEntry {
    lemma: String,
    base: String,
    gloss: String,
    ner: &'static str,
}

struct Vocab {
    nouns: Vec<VocabEntry>,
    misc_nouns: Vec<VocabEntry>,
    neutral_verbs: Vec<VocabEntry>,
    pos_verbs: Vec<VocabEntry>,
    neg_verbs: Vec<VocabEntry>,
    pos_adjs: Vec<VocabEntry>,
    neg_adjs: Vec<VocabEntry>,
    neutral_adjs: Vec<VocabEntry>,
    adverbs: Vec<VocabEntry>,
}

const NOUN_GLOSSES: &[&str] = &[
    "government", "country", "president", "team", "league", "club", "city", "council",
    "economy", "company", "school", "river", "army", "party", "court", "airport",
    "museum", "parliament", "market", "hospital", "border", "village", "region",
    "movement", "channel", "festival", "tournament", "union",
];
const MISC_GLOSSES: &[&str] = &[
    "morning", "meeting", "match", "decision", "conference", "summer", "report", "season",
];
const NEUTRAL_VERB_GLOSSES: &[&str] = &[
    "mention", "discuss", "describe", "announce", "consider", "watch", "visit", "report",
];
const POS_VERB_GLOSSES: &[&str] = &["praise", "support", "admire", "applaud", "celebrate"];
const NEG_VERB_GLOSSES: &[&str] = &["condemn", "criticize", "attack", "denounce", "reject"];
const POS_ADJ_GLOSSES: &[&str] = &["excellent", "successful", "brilliant", "generous", "wonderful", "fair"];
const NEG_ADJ_GLOSSES: &[&str] = &["terrible", "corrupt", "brutal", "unjust", "failed", "cruel"];
const NEUTRAL_ADJ_GLOSSES: &[&str] = &["large", "new", "old", "regional", "annual"];
const ADVERB_GLOSSES: &[&str] = &["greatly", "deeply", "openly", "clearly", "strongly"];

const SYLLABLES: &[&str] = &[
    "ba", "da", "fa", "ha", "ja", "ka", "la", "ma", "na", "qa", "ra", "sa", "ta", "za",
    "bi", "di", "ki", "mi", "ri", "si", "ti", "bu", "du", "ju", "mu", "nu", "ru", "su",
];

/// Enclitic object pronouns with their detailed POS.
const ENCLITICS: &[(&str, &str)] = &[
    ("h", "ivsuff_do:3MS"),
    ("hA", "ivsuff_do:3FS"),
    ("hm", "ivsuff_do:3MP"),
];

fn make_base(rng: &mut Rng, used: &mut std::collections::HashSet<String>) -> String {
    loop {
        let n = 2 + rng.gen_range(2); // 2-3 syllables
        let mut s = String::new();
        for _ in 0..n {
            s.push_str(SYLLABLES[rng.gen_range(SYLLABLES.len())]);
        }
        if used.insert(s.clone()) {
            return s;
        }
    }
}

fn build_pool(
    rng: &mut Rng,
    used: &mut std::collections::HashSet<String>,
    glosses: &[&str],
    verb: bool,
    ner_cycle: bool,
) -> Vec<VocabEntry> {
    let mut order: Vec<usize> = (0..glosses.len()).collect();
    rng.shuffle(&mut order);
    order
        .iter()
        .enumerate()
        .map(|(i, &g)| {
            let base = make_base(rng, used);
            let surface_base = if verb { format!("{base}wA") } else { base.clone() };
            VocabEntry {
                lemma: format!("{base}_1"),
                base: surface_base,
                gloss: glosses[g].to_string(),
                ner: if ner_cycle {
                    match i % 3 {
                        0 => "B-ORG",
                        1 => "B-LOC",
                        _ => "O",
                    }
                } else {
                    "O"
                },
            }
        })
        .collect()
}

fn build_vocab(vocab_seed: u64) -> Vocab {
    let mut rng = Rng::new(vocab_seed);
    let mut used = std::collections::HashSet::new();
    Vocab {
        nouns: build_pool(&mut rng, &mut used, NOUN_GLOSSES, false, true),
        misc_nouns: build_pool(&mut rng, &mut used, MISC_GLOSSES, false, false),
        neutral_verbs: build_pool(&mut rng, &mut used, NEUTRAL_VERB_GLOSSES, true, false),
        pos_verbs: build_pool(&mut rng, &mut used, POS_VERB_GLOSSES, true, false),
        neg_verbs: build_pool(&mut rng, &mut used, NEG_VERB_GLOSSES, true, false),
        pos_adjs: build_pool(&mut rng, &mut used, POS_ADJ_GLOSSES, false, false),
        neg_adjs: build_pool(&mut rng, &mut used, NEG_ADJ_GLOSSES, false, false),
        neutral_adjs: build_pool(&mut rng, &mut used, NEUTRAL_ADJ_GLOSSES, false, false),
        adverbs: build_pool(&mut rng, &mut used, ADVERB_GLOSSES, false, false),
    }
}

/// Dependency target within a sentence under construction.
#[derive(Clone, Copy)]
enum LocalHead {
    SentRoot,
    Word(usize),
}

struct WordSpec<'a> {
    entry: &'a VocabEntry,
    pos: &'a str,
    conj: Option<&'a str>,
    definite: bool,
    enclitic: Option<(&'a str, &'a str)>,
    prep: Option<&'a str>,
    bpc: &'a str,
    head: LocalHead,
    rel: &'a str,
}

fn build_word(spec: &WordSpec) -> (WordAnalysis, LocalHead) {
    let mut segments = Vec::new();
    let mut surface = String::new();
    if let Some(c) = spec.conj {
        segments.push(Segment {
            form: c.to_string(),
            detailed_pos: "conj".into(),
            kind: SegmentKind::Proclitic,
            is_definite_article: false,
        });
        surface.push_str(c);
    }
    if let Some(p) = spec.prep {
        segments.push(Segment {
            form: p.to_string(),
            detailed_pos: "prep".into(),
            kind: SegmentKind::Proclitic,
            is_definite_article: false,
        });
        surface.push_str(p);
    }
    if spec.definite {
        segments.push(Segment {
            form: "Al".into(),
            detailed_pos: "DET".into(),
            kind: SegmentKind::Proclitic,
            is_definite_article: true,
        });
        surface.push_str("Al");
    }
    segments.push(Segment {
        form: spec.entry.base.clone(),
        detailed_pos: spec.pos.to_string(),
        kind: SegmentKind::Stem,
        is_definite_article: false,
    });
    surface.push_str(&spec.entry.base);
    if let Some((form, dpos)) = spec.enclitic {
        segments.push(Segment {
            form: form.to_string(),
            detailed_pos: dpos.to_string(),
            kind: SegmentKind::Enclitic,
            is_definite_article: false,
        });
        surface.push_str(form);
    }
    let word = WordAnalysis {
        surface,
        lemma: spec.entry.lemma.clone(),
        pos: spec.pos.to_string(),
        segments,
        glosses: vec![spec.entry.gloss.clone()],
        bpc: spec.bpc.to_string(),
        ner: spec.entry.ner.to_string(),
        dep_head: DepHead::Root, // patched during assembly
        dep_rel: spec.rel.to_string(),
    };
    (word, spec.head)
}

fn punct_word() -> WordAnalysis {
    WordAnalysis {
        surface: ".".into(),
        lemma: ".".into(),
        pos: "punc".into(),
        segments: vec![Segment {
            form: ".".into(),
            detailed_pos: "punc".into(),
            kind: SegmentKind::Stem,
            is_definite_article: false,
        }],
        glosses: vec![],
        bpc: "O".into(),
        ner: "O".into(),
        dep_head: DepHead::Root,
        dep_rel: "PNX".into(),
    }
}

/// One sentence: words with sentence-local heads, the local index of the
/// sentence root, and span plans in local coordinates.
struct Sentence {
    words: Vec<(WordAnalysis, LocalHead)>,
    root: usize,
    spans: Vec<(usize, usize, Polarity)>,
}

struct PostBuilder<'a> {
    vocab: &'a Vocab,
    cfg: &'a SynthConfig,
    used_nouns: Vec<usize>,
    used_target_verbs: Vec<(bool, usize)>, // (is_positive_pool, index)
}

impl<'a> PostBuilder<'a> {
    fn pick_noun(&mut self, rng: &mut Rng) -> &'a VocabEntry {
        loop {
            let i = rng.gen_range(self.vocab.nouns.len());
            if !self.used_nouns.contains(&i) {
                self.used_nouns.push(i);
                return &self.vocab.nouns[i];
            }
        }
    }

    fn pick_opinion_verb(&mut self, rng: &mut Rng, pol: Polarity, reserve: bool) -> &'a VocabEntry {
        let positive = pol == Polarity::Pos;
        let pool = if positive {
            &self.vocab.pos_verbs
        } else {
            &self.vocab.neg_verbs
        };
        loop {
            let i = rng.gen_range(pool.len());
            if !self.used_target_verbs.contains(&(positive, i)) {
                if reserve {
                    self.used_target_verbs.push((positive, i));
                }
                return &pool[i];
            }
        }
    }

    fn opinion_adj(&self, rng: &mut Rng, pol: Polarity) -> &'a VocabEntry {
        let pool = if pol == Polarity::Pos {
            &self.vocab.pos_adjs
        } else {
            &self.vocab.neg_adjs
        };
        &pool[rng.gen_range(pool.len())]
    }

    fn conj(&self, rng: &mut Rng, p: f64) -> Option<&'a str> {
        if rng.bernoulli(p) {
            Some(if rng.bernoulli(0.5) { "w" } else { "f" })
        } else {
            None
        }
    }

    fn pp_word(&self, rng: &mut Rng, head: LocalHead) -> (WordAnalysis, LocalHead) {
        let misc = &self.vocab.misc_nouns[rng.gen_range(self.vocab.misc_nouns.len())];
        build_word(&WordSpec {
            entry: misc,
            pos: "noun",
            conj: None,
            definite: rng.bernoulli(0.4),
            enclitic: None,
            prep: Some(if rng.bernoulli(0.5) { "b" } else { "l" }),
            bpc: "B-NP",
            head,
            rel: "MOD",
        })
    }

    /// Explicit target: neutral verb, target NP, opinion adjective.
    /// An `Ambig` polarity swaps in an opinion verb that conflicts with the
    /// adjective, which is how annotator disagreement is simulated.
    fn sentence_explicit(&mut self, rng: &mut Rng, pol: Polarity) -> Sentence {
        let mut words = Vec::new();
        let conj = self.conj(rng, 0.4);

        let (verb_entry, verb_is_opinion, adj_pol) = match pol {
            Polarity::Ambig => {
                let verb_pol = if rng.bernoulli(0.5) { Polarity::Pos } else { Polarity::Neg };
                let adj_pol = if verb_pol == Polarity::Pos { Polarity::Neg } else { Polarity::Pos };
                (self.pick_opinion_verb(rng, verb_pol, false), true, adj_pol)
            }
            p => {
                let v = &self.vocab.neutral_verbs[rng.gen_range(self.vocab.neutral_verbs.len())];
                (v, false, p)
            }
        };
        let _ = verb_is_opinion;

        words.push(build_word(&WordSpec {
            entry: verb_entry,
            pos: "verb",
            conj,
            definite: false,
            enclitic: None,
            prep: None,
            bpc: "B-VP",
            head: LocalHead::SentRoot,
            rel: "---",
        }));
        let verb_ix = words.len() - 1;

        let idafa = pol != Polarity::Ambig && rng.bernoulli(0.25);
        let head_noun = self.pick_noun(rng);
        let definite = if pol == Polarity::Ambig {
            true
        } else if idafa {
            false // construct-state head stays bare; the article sits on the dependent
        } else {
            rng.bernoulli(self.cfg.definite_target_fraction)
        };
        words.push(build_word(&WordSpec {
            entry: head_noun,
            pos: "noun",
            conj: None,
            definite,
            enclitic: None,
            prep: None,
            bpc: "B-NP",
            head: LocalHead::Word(verb_ix),
            rel: "OBJ",
        }));
        let span_first = words.len() - 1;
        let mut span_last = span_first;

        if idafa {
            let second = self.pick_noun(rng);
            words.push(build_word(&WordSpec {
                entry: second,
                pos: "noun",
                conj: None,
                definite: true,
                enclitic: None,
                prep: None,
                bpc: "I-NP",
                head: LocalHead::Word(span_first),
                rel: "IDF",
            }));
            span_last = words.len() - 1;
        }

        let adj = self.opinion_adj(rng, adj_pol);
        words.push(build_word(&WordSpec {
            entry: adj,
            pos: "adj",
            conj: None,
            definite: false,
            enclitic: None,
            prep: None,
            bpc: "B-AP",
            head: LocalHead::Word(span_first),
            rel: "MOD",
        }));

        if rng.bernoulli(0.35) {
            let pp = self.pp_word(rng, LocalHead::Word(verb_ix));
            words.push(pp);
        }

        Sentence {
            words,
            root: verb_ix,
            spans: vec![(span_first, span_last, pol)],
        }
    }

    /// Pronominal target: opinion verb with an enclitic object pronoun.
    fn sentence_pronominal(&mut self, rng: &mut Rng, pol: Polarity) -> Sentence {
        let mut words = Vec::new();
        let conj = self.conj(rng, 0.5);
        let verb = self.pick_opinion_verb(rng, pol, true);
        let encl = ENCLITICS[rng.gen_range(ENCLITICS.len())];
        words.push(build_word(&WordSpec {
            entry: verb,
            pos: "verb",
            conj,
            definite: false,
            enclitic: Some(encl),
            prep: None,
            bpc: "B-NP", // the pronominal mention keeps the span NP-chunked
            head: LocalHead::SentRoot,
            rel: "---",
        }));
        let adverb = &self.vocab.adverbs[rng.gen_range(self.vocab.adverbs.len())];
        words.push(build_word(&WordSpec {
            entry: adverb,
            pos: "adv",
            conj: None,
            definite: false,
            enclitic: None,
            prep: None,
            bpc: "O",
            head: LocalHead::Word(0),
            rel: "MOD",
        }));
        Sentence {
            words,
            root: 0,
            spans: vec![(0, 0, pol)],
        }
    }

    /// Counterpart of the pronominal sentence without the pronoun: no target.
    fn sentence_pronominal_distractor(&mut self, rng: &mut Rng) -> Sentence {
        let mut words = Vec::new();
        let conj = self.conj(rng, 0.5);
        let pol = if rng.bernoulli(0.5) { Polarity::Pos } else { Polarity::Neg };
        let verb = self.pick_opinion_verb(rng, pol, false);
        words.push(build_word(&WordSpec {
            entry: verb,
            pos: "verb",
            conj,
            definite: false,
            enclitic: None,
            prep: None,
            bpc: "B-VP",
            head: LocalHead::SentRoot,
            rel: "---",
        }));
        let adverb = &self.vocab.adverbs[rng.gen_range(self.vocab.adverbs.len())];
        words.push(build_word(&WordSpec {
            entry: adverb,
            pos: "adv",
            conj: None,
            definite: false,
            enclitic: None,
            prep: None,
            bpc: "O",
            head: LocalHead::Word(0),
            rel: "MOD",
        }));
        Sentence {
            words,
            root: 0,
            spans: vec![],
        }
    }

    /// Implicit definite target: opinion verb, definite object noun, no
    /// adjective. When `definite` is false this is the indefinite
    /// counterpart that carries no gold annotation.
    fn sentence_implicit(&mut self, rng: &mut Rng, pol: Polarity, definite: bool) -> Sentence {
        let mut words = Vec::new();
        let conj = self.conj(rng, 0.4);
        let verb = self.pick_opinion_verb(rng, pol, false);
        words.push(build_word(&WordSpec {
            entry: verb,
            pos: "verb",
            conj,
            definite: false,
            enclitic: None,
            prep: None,
            bpc: "B-VP",
            head: LocalHead::SentRoot,
            rel: "---",
        }));
        let noun = self.pick_noun(rng);
        words.push(build_word(&WordSpec {
            entry: noun,
            pos: "noun",
            conj: None,
            definite,
            enclitic: None,
            prep: None,
            bpc: "B-NP",
            head: LocalHead::Word(0),
            rel: "OBJ",
        }));
        let noun_ix = words.len() - 1;
        if rng.bernoulli(0.3) {
            let pp = self.pp_word(rng, LocalHead::Word(0));
            words.push(pp);
        }
        Sentence {
            words,
            root: 0,
            spans: if definite { vec![(noun_ix, noun_ix, pol)] } else { vec![] },
        }
    }

    /// Neutral distractor: neutral verb, a noun, a neutral adjective.
    fn sentence_neutral(&mut self, rng: &mut Rng) -> Sentence {
        let mut words = Vec::new();
        let conj = self.conj(rng, 0.4);
        let verb = &self.vocab.neutral_verbs[rng.gen_range(self.vocab.neutral_verbs.len())];
        words.push(build_word(&WordSpec {
            entry: verb,
            pos: "verb",
            conj,
            definite: false,
            enclitic: None,
            prep: None,
            bpc: "B-VP",
            head: LocalHead::SentRoot,
            rel: "---",
        }));
        let noun = self.pick_noun(rng);
        words.push(build_word(&WordSpec {
            entry: noun,
            pos: "noun",
            conj: None,
            definite: rng.bernoulli(self.cfg.definite_distractor_fraction),
            enclitic: None,
            prep: None,
            bpc: "B-NP",
            head: LocalHead::Word(0),
            rel: "OBJ",
        }));
        let adj = &self.vocab.neutral_adjs[rng.gen_range(self.vocab.neutral_adjs.len())];
        words.push(build_word(&WordSpec {
            entry: adj,
            pos: "adj",
            conj: None,
            definite: false,
            enclitic: None,
            prep: None,
            bpc: "B-AP",
            head: LocalHead::Word(1),
            rel: "MOD",
        }));
        if rng.bernoulli(0.3) {
            let pp = self.pp_word(rng, LocalHead::Word(0));
            words.push(pp);
        }
        Sentence {
            words,
            root: 0,
            spans: vec![],
        }
    }
}

fn draw_polarity(rng: &mut Rng) -> Polarity {
    match rng.weighted_index(&[0.382, 0.505, 0.113]) {
        0 => Polarity::Pos,
        1 => Polarity::Neg,
        _ => Polarity::Ambig,
    }
}

/// Generates `cfg.n_posts` posts together with the prior-polarity lexicon
/// of the planted opinion lemmas. Deterministic for fixed seeds.
pub fn generate_synthetic(cfg: &SynthConfig) -> Result<(Vec<Post>, Lexicon)> {
    if cfg.n_posts == 0 {
        return Err(crate::error::Error::InvalidConfig(
            "n_posts must be at least 1".into(),
        ));
    }
    let vocab = build_vocab(cfg.vocab_seed);
    let mut rng = Rng::new(cfg.seed);
    let mut posts = Vec::with_capacity(cfg.n_posts);

    for post_ix in 0..cfg.n_posts {
        let mut builder = PostBuilder {
            vocab: &vocab,
            cfg,
            used_nouns: Vec::new(),
            used_target_verbs: Vec::new(),
        };
        let mut sentences: Vec<Sentence> = Vec::new();

        let n_targets = 1 + rng.weighted_index(&[0.45, 0.35, 0.2]);
        for _ in 0..n_targets {
            let pol = draw_polarity(&mut rng);
            if pol == Polarity::Ambig {
                sentences.push(builder.sentence_explicit(&mut rng, pol));
                continue;
            }
            match rng.weighted_index(&[0.55, 0.20, 0.25]) {
                0 => sentences.push(builder.sentence_explicit(&mut rng, pol)),
                1 => {
                    sentences.push(builder.sentence_pronominal(&mut rng, pol));
                    // paired no-pronoun counterpart, plus an extra half the time,
                    // so the bare opinion verb stays the majority reading
                    sentences.push(builder.sentence_pronominal_distractor(&mut rng));
                    if rng.bernoulli(0.5) {
                        sentences.push(builder.sentence_pronominal_distractor(&mut rng));
                    }
                }
                _ => {
                    sentences.push(builder.sentence_implicit(&mut rng, pol, true));
                    let other = if rng.bernoulli(0.5) { Polarity::Pos } else { Polarity::Neg };
                    sentences.push(builder.sentence_implicit(&mut rng, other, false));
                    if rng.bernoulli(0.5) {
                        let o2 = if rng.bernoulli(0.5) { Polarity::Pos } else { Polarity::Neg };
                        sentences.push(builder.sentence_implicit(&mut rng, o2, false));
                    }
                }
            }
        }
        let n_neutral = 1 + rng.gen_range(2);
        for _ in 0..n_neutral {
            sentences.push(builder.sentence_neutral(&mut rng));
        }

        rng.shuffle(&mut sentences);
        let with_punct = rng.bernoulli(0.7);

        // Flatten: place sentences, rebase heads, chain sentence roots to
        // the first sentence's root. Token-level T/O labels cannot separate
        // adjacent spans, so a boundary between a target-final sentence and
        // a target-initial one always gets a punctuation word.
        let mut words: Vec<WordAnalysis> = Vec::new();
        let mut gold: Vec<TargetSpan> = Vec::new();
        let mut post_root: Option<usize> = None;
        let mut prev_root: Option<usize> = None;
        for sent in sentences {
            if !with_punct {
                let prev_is_target = gold
                    .last()
                    .is_some_and(|g| g.last_word + 1 == words.len());
                let next_is_target = sent.spans.iter().any(|&(f, _, _)| f == 0);
                if prev_is_target && next_is_target {
                    let mut p = punct_word();
                    p.dep_head = match prev_root {
                        Some(r) => DepHead::Word(r),
                        None => DepHead::Root,
                    };
                    words.push(p);
                }
            }
            let offset = words.len();
            let root_global = offset + sent.root;
            for (mut w, head) in sent.words {
                w.dep_head = match head {
                    LocalHead::SentRoot => match post_root {
                        None => DepHead::Root,
                        Some(r) => {
                            w.dep_rel = "MOD".into();
                            DepHead::Word(r)
                        }
                    },
                    LocalHead::Word(i) => DepHead::Word(offset + i),
                };
                words.push(w);
            }
            if post_root.is_none() {
                post_root = Some(root_global);
            }
            prev_root = Some(root_global);
            for (f, l, pol) in sent.spans {
                gold.push(TargetSpan::new(offset + f, offset + l, pol));
            }
            if with_punct {
                let mut p = punct_word();
                p.dep_head = DepHead::Word(root_global);
                words.push(p);
            }
        }

        posts.push(Post {
            id: format!("synth-{post_ix:04}"),
            domain: match post_ix % 3 {
                0 => Domain::Politics,
                1 => Domain::Culture,
                _ => Domain::Sports,
            },
            words,
            gold_targets: gold,
        });
    }

    let mut lexicon = Lexicon::prior_list();
    for (pool, prior) in [
        (&vocab.pos_verbs, PriorPolarity::Pos),
        (&vocab.pos_adjs, PriorPolarity::Pos),
        (&vocab.neg_verbs, PriorPolarity::Neg),
        (&vocab.neg_adjs, PriorPolarity::Neg),
    ] {
        for e in pool {
            lexicon.insert(e.lemma.clone(), LexEntry::prior(prior));
        }
    }
    for e in &vocab.neutral_adjs {
        lexicon.insert(e.lemma.clone(), LexEntry::neutral());
    }

    Ok((posts, lexicon))
}
