//! Feature extraction for both CRF tasks.
//!
//! Atoms are strings of the form `template:offset=value` (offset `0`, `+1`,
//! `-2`, ...). Most families use the default +/-2 context window; the
//! dependency families use +/-4 to reach syntactic relations. Out-of-range
//! offsets emit explicit `<BOS>`/`<EOS>` boundary atoms so vector arity
//! stays stable across positions.
//!
//! Clitic tokens inherit their source word's chunk, NER, and dependency
//! attributes; sentiment-lexicon lookups are word lookups and apply to
//! wordform tokens only.

use crate::clusters::{assign_cluster, ClusterModel};
use crate::corpus::{DepHead, Post, WordAnalysis};
use crate::error::{Error, Result};
use crate::lexicon::{Lexicon, PriorPolarity, Strength};
use crate::morpho::{TargetLabel, TokenSequence};

/// Feature families and resources for one extraction pass.
#[derive(Debug, Clone)]
pub struct FeatureConfig<'a> {
    pub window_default: usize,
    pub window_dependency: usize,
    pub lexical: bool,
    pub pos: bool,
    pub bpc: bool,
    pub ner: bool,
    pub lexicon_subj: bool,
    pub lexicon_pol: bool,
    pub dep_role_path: bool,
    pub dep_sentiment_path: bool,
    pub parent_sentiment: bool,
    pub cluster: bool,
    /// Optional strong/weak strength atom for gloss-keyed entries.
    pub lexicon_strength: bool,
    /// Conjoin each position's atoms with the incoming label pair
    /// (previous-predicted-label context as explicit features rather than
    /// plain transitions). Off by default.
    pub prev_label_conjunctions: bool,
    pub lexicons: Vec<&'a Lexicon>,
    pub cluster_model: Option<&'a ClusterModel>,
}

impl<'a> FeatureConfig<'a> {
    /// Everything off; enable families explicitly.
    pub fn empty() -> Self {
        FeatureConfig {
            window_default: 2,
            window_dependency: 4,
            lexical: false,
            pos: false,
            bpc: false,
            ner: false,
            lexicon_subj: false,
            lexicon_pol: false,
            dep_role_path: false,
            dep_sentiment_path: false,
            parent_sentiment: false,
            cluster: false,
            lexicon_strength: false,
            prev_label_conjunctions: false,
            lexicons: Vec::new(),
            cluster_model: None,
        }
    }

    /// Word form and POS only: the representation-comparison setting.
    pub fn lexical_pos() -> Self {
        FeatureConfig {
            lexical: true,
            pos: true,
            ..FeatureConfig::empty()
        }
    }

    /// The full linguistic feature set: word form, POS, chunks, NER,
    /// lexicon subjectivity/polarity, and the dependency families.
    pub fn best_linguistic(lexicons: Vec<&'a Lexicon>) -> Self {
        FeatureConfig {
            lexical: true,
            pos: true,
            bpc: true,
            ner: true,
            lexicon_subj: true,
            lexicon_pol: true,
            dep_role_path: true,
            dep_sentiment_path: true,
            parent_sentiment: true,
            lexicons,
            ..FeatureConfig::empty()
        }
    }

    pub fn with_clusters(mut self, model: &'a ClusterModel) -> Self {
        self.cluster = true;
        self.cluster_model = Some(model);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.cluster && self.cluster_model.is_none() {
            return Err(Error::InvalidConfig(
                "cluster features enabled but no cluster model supplied".into(),
            ));
        }
        Ok(())
    }
}

/// CATiB-style short POS form used in dependency paths.
fn catib_pos_form(pos: &str) -> String {
    let p = pos.to_lowercase();
    if p.starts_with("noun")
        || p.starts_with("adj")
        || p.starts_with("adv")
        || p.starts_with("pron")
        || p.starts_with("num")
    {
        "nom".to_string()
    } else if p.starts_with("verb") {
        "vrb".to_string()
    } else if p.starts_with("punc") {
        "pnx".to_string()
    } else if p.starts_with("prep")
        || p.starts_with("conj")
        || p.starts_with("part")
        || p.starts_with("interj")
        || p.starts_with("det")
    {
        "prt".to_string()
    } else {
        p
    }
}

/// The dependency edge of one word, in path form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependencyPath {
    pub child: String,
    pub rel: String,
    pub parent: String,
}

impl DependencyPath {
    /// e.g. `nom_obj_vrb`, or `vrb_---_root` for the tree root.
    pub fn role_path(&self) -> String {
        format!("{}_{}_{}", self.child, self.rel, self.parent)
    }

    /// Role path decorated with endpoint polarities,
    /// e.g. `nom(neutral)_obj_vrb(negative)`.
    pub fn sentiment_path(
        &self,
        child_pol: PriorPolarity,
        parent_pol: Option<PriorPolarity>,
    ) -> String {
        match parent_pol {
            Some(pp) => format!(
                "{}({})_{}_{}({})",
                self.child,
                child_pol.spelled(),
                self.rel,
                self.parent,
                pp.spelled()
            ),
            None => format!(
                "{}({})_{}_{}",
                self.child,
                child_pol.spelled(),
                self.rel,
                self.parent
            ),
        }
    }
}

/// Path pieces for the dependency edge of `word`.
pub fn dependency_paths(post: &Post, word: usize) -> Result<DependencyPath> {
    let w = post
        .words
        .get(word)
        .ok_or_else(|| Error::Mismatch(format!("word index {word} out of range")))?;
    let parent = match w.dep_head {
        DepHead::Root => "root".to_string(),
        DepHead::Word(h) => {
            let p = post
                .words
                .get(h)
                .ok_or_else(|| Error::Mismatch(format!("dep head {h} out of range")))?;
            catib_pos_form(&p.pos)
        }
    };
    Ok(DependencyPath {
        child: catib_pos_form(&w.pos),
        rel: w.dep_rel.to_lowercase(),
        parent,
    })
}

fn off_str(o: isize) -> String {
    if o > 0 {
        format!("+{o}")
    } else {
        format!("{o}")
    }
}

/// Per-token precomputed attribute strings; window assembly reads these.
struct TokenAttrs<'a> {
    repr: &'a str,
    pos: &'a str,
    bpc: &'a str,
    ner: &'a str,
    subj: Vec<Option<bool>>,
    pol: Vec<Option<PriorPolarity>>,
    strength: Vec<Option<Strength>>,
    parent_subj: Vec<Option<bool>>,
    parent_pol: Vec<Option<PriorPolarity>>,
    cluster: Option<u32>,
    dep_role: String,
    dep_path: String,
    sent_path: String,
    is_target: Option<&'static str>,
}

fn word_polarity(lex: &Lexicon, word: &WordAnalysis) -> Option<PriorPolarity> {
    lex.lookup_word(word).map(|e| e.prior)
}

fn precompute<'a>(
    post: &'a Post,
    seq: &'a TokenSequence,
    cfg: &FeatureConfig<'_>,
    target_labels: Option<&[TargetLabel]>,
) -> Result<Vec<TokenAttrs<'a>>> {
    let mut out = Vec::with_capacity(seq.len());
    for t in 0..seq.len() {
        let tok = &seq.tokens[t];
        let word = &post.words[seq.word_of(t)];
        let parent_word = match word.dep_head {
            DepHead::Root => None,
            DepHead::Word(h) => Some(&post.words[h]),
        };

        let mut subj = Vec::new();
        let mut pol = Vec::new();
        let mut strength = Vec::new();
        let mut parent_subj = Vec::new();
        let mut parent_pol = Vec::new();
        for lex in &cfg.lexicons {
            let entry = lex.lookup(tok, word);
            subj.push(entry.map(|e| e.subjective));
            pol.push(entry.map(|e| e.prior));
            strength.push(entry.and_then(|e| e.strength));
            let pentry = parent_word.and_then(|p| lex.lookup_word(p));
            parent_subj.push(pentry.map(|e| e.subjective));
            parent_pol.push(pentry.map(|e| e.prior));
        }

        let path = dependency_paths(post, seq.word_of(t))?;
        let sent_path = if cfg.dep_sentiment_path {
            match cfg.lexicons.first() {
                Some(lex) => {
                    let child_pol =
                        word_polarity(lex, word).unwrap_or(PriorPolarity::Neutral);
                    let parent_pol = match word.dep_head {
                        DepHead::Root => None,
                        DepHead::Word(_) => Some(
                            parent_word
                                .and_then(|p| word_polarity(lex, p))
                                .unwrap_or(PriorPolarity::Neutral),
                        ),
                    };
                    path.sentiment_path(child_pol, parent_pol)
                }
                None => String::new(),
            }
        } else {
            String::new()
        };

        out.push(TokenAttrs {
            repr: &tok.repr,
            pos: &tok.pos,
            bpc: &word.bpc,
            ner: &word.ner,
            subj,
            pol,
            strength,
            parent_subj,
            parent_pol,
            cluster: if cfg.cluster {
                cfg.cluster_model.and_then(|m| assign_cluster(m, tok))
            } else {
                None
            },
            dep_role: path.rel.clone(),
            dep_path: path.role_path(),
            sent_path,
            is_target: target_labels.map(|l| l[t].as_str()),
        });
    }
    Ok(out)
}

fn emit_windowed<F>(atoms: &mut Vec<String>, n: usize, i: usize, window: usize, mut f: F)
where
    F: FnMut(&mut Vec<String>, isize, Option<usize>),
{
    let w = window as isize;
    for o in -w..=w {
        let j = i as isize + o;
        if (0..n as isize).contains(&j) {
            f(atoms, o, Some(j as usize));
        } else {
            f(atoms, o, None);
        }
    }
}

const BOS: &str = "<BOS>";
const EOS: &str = "<EOS>";

fn boundary(i: usize, o: isize) -> &'static str {
    if (i as isize + o) < 0 {
        BOS
    } else {
        EOS
    }
}

fn extract(
    post: &Post,
    seq: &TokenSequence,
    cfg: &FeatureConfig<'_>,
    target_labels: Option<&[TargetLabel]>,
    sentiment_mode: bool,
) -> Result<Vec<Vec<String>>> {
    cfg.validate()?;
    let attrs = precompute(post, seq, cfg, target_labels)?;
    let n = attrs.len();
    let kinds: Vec<&'static str> = cfg.lexicons.iter().map(|l| l.kind.tag()).collect();

    let mut vectors = Vec::with_capacity(n);
    for i in 0..n {
        let mut atoms: Vec<String> = Vec::new();

        emit_windowed(&mut atoms, n, i, cfg.window_default, |atoms, o, j| {
            let os = off_str(o);
            match j {
                Some(j) => {
                    let a = &attrs[j];
                    if cfg.lexical {
                        atoms.push(format!("repr:{os}={}", a.repr));
                    }
                    if cfg.pos {
                        atoms.push(format!("pos:{os}={}", a.pos));
                    }
                    if cfg.bpc {
                        atoms.push(format!("bpc:{os}={}", a.bpc));
                    }
                    if cfg.ner {
                        atoms.push(format!("ner:{os}={}", a.ner));
                    }
                    if cfg.lexicon_subj {
                        for (k, s) in a.subj.iter().enumerate() {
                            if let Some(s) = s {
                                atoms.push(format!(
                                    "subj.{}:{os}={}",
                                    kinds[k],
                                    if *s { "1" } else { "0" }
                                ));
                            }
                        }
                    }
                    if cfg.lexicon_strength {
                        for (k, s) in a.strength.iter().enumerate() {
                            if let Some(s) = s {
                                atoms.push(format!(
                                    "lexstrength.{}:{os}={}",
                                    kinds[k],
                                    match s {
                                        Strength::Strong => "strong",
                                        Strength::Weak => "weak",
                                    }
                                ));
                            }
                        }
                    }
                    if sentiment_mode && cfg.lexicon_pol {
                        for (k, p) in a.pol.iter().enumerate() {
                            if let Some(p) = p {
                                atoms.push(format!(
                                    "lexpol.{}:{os}={}",
                                    kinds[k],
                                    p.spelled()
                                ));
                            }
                        }
                    }
                    if cfg.cluster {
                        if let Some(c) = a.cluster {
                            atoms.push(format!("cluster:{os}=c{c}"));
                        }
                    }
                    if sentiment_mode {
                        if let Some(e) = a.is_target {
                            atoms.push(format!("istarget:{os}={e}"));
                        }
                    }
                }
                None => {
                    let b = boundary(i, o);
                    if cfg.lexical {
                        atoms.push(format!("repr:{os}={b}"));
                    }
                    if cfg.pos {
                        atoms.push(format!("pos:{os}={b}"));
                    }
                    if cfg.bpc {
                        atoms.push(format!("bpc:{os}={b}"));
                    }
                    if cfg.ner {
                        atoms.push(format!("ner:{os}={b}"));
                    }
                    if sentiment_mode && target_labels.is_some() {
                        atoms.push(format!("istarget:{os}={b}"));
                    }
                }
            }
        });

        if cfg.dep_role_path || (sentiment_mode && cfg.dep_sentiment_path) || cfg.parent_sentiment
        {
            emit_windowed(&mut atoms, n, i, cfg.window_dependency, |atoms, o, j| {
                let os = off_str(o);
                match j {
                    Some(j) => {
                        let a = &attrs[j];
                        if cfg.dep_role_path {
                            atoms.push(format!("deprole:{os}={}", a.dep_role));
                            atoms.push(format!("deppath:{os}={}", a.dep_path));
                        }
                        if cfg.parent_sentiment {
                            for (k, s) in a.parent_subj.iter().enumerate() {
                                if let Some(s) = s {
                                    atoms.push(format!(
                                        "parentsubj.{}:{os}={}",
                                        kinds[k],
                                        if *s { "1" } else { "0" }
                                    ));
                                }
                            }
                            if sentiment_mode {
                                for (k, p) in a.parent_pol.iter().enumerate() {
                                    if let Some(p) = p {
                                        atoms.push(format!(
                                            "parentpol.{}:{os}={}",
                                            kinds[k],
                                            p.spelled()
                                        ));
                                    }
                                }
                            }
                        }
                        if sentiment_mode && cfg.dep_sentiment_path && !a.sent_path.is_empty() {
                            atoms.push(format!("sentpath:{os}={}", a.sent_path));
                        }
                    }
                    None => {
                        let b = boundary(i, o);
                        if cfg.dep_role_path {
                            atoms.push(format!("deprole:{os}={b}"));
                            atoms.push(format!("deppath:{os}={b}"));
                        }
                    }
                }
            });
        }

        vectors.push(atoms);
    }
    Ok(vectors)
}

/// Feature vectors for the target model.
pub fn extract_target_features(
    post: &Post,
    seq: &TokenSequence,
    cfg: &FeatureConfig<'_>,
) -> Result<Vec<Vec<String>>> {
    extract(post, seq, cfg, None, false)
}

/// Feature vectors for the sentiment model: the target-model families plus
/// token/parent polarity, the sentiment path, and the windowed target-label
/// atoms derived from `target_labels`.
pub fn extract_sentiment_features(
    post: &Post,
    seq: &TokenSequence,
    target_labels: &[TargetLabel],
    cfg: &FeatureConfig<'_>,
) -> Result<Vec<Vec<String>>> {
    if target_labels.len() != seq.len() {
        return Err(Error::Mismatch(
            "target labels not aligned to token sequence".into(),
        ));
    }
    extract(post, seq, cfg, Some(target_labels), true)
}

/// Tab-separated debug dump: one position per line.
pub fn dump_features(vectors: &[Vec<String>]) -> String {
    let mut out = String::new();
    for v in vectors {
        out.push_str(&v.join("\t"));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{generate_synthetic, Domain, Segment, SegmentKind, SynthConfig, TargetSpan};
    use crate::corpus::Polarity;
    use crate::lexicon::LexEntry;
    use crate::morpho::{derive_tokens, project_target_labels, Scheme};

    fn seg(form: &str, dpos: &str, kind: SegmentKind, art: bool) -> Segment {
        Segment {
            form: form.into(),
            detailed_pos: dpos.into(),
            kind,
            is_definite_article: art,
        }
    }

    fn word(
        surface: &str,
        lemma: &str,
        pos: &str,
        segments: Vec<Segment>,
        head: DepHead,
        rel: &str,
    ) -> WordAnalysis {
        WordAnalysis {
            surface: surface.into(),
            lemma: lemma.into(),
            pos: pos.into(),
            segments,
            glosses: vec![],
            bpc: "O".into(),
            ner: "O".into(),
            dep_head: head,
            dep_rel: rel.into(),
        }
    }

    /// verb(root) + definite noun object
    fn verb_object_post() -> Post {
        Post {
            id: "p".into(),
            domain: Domain::Synthetic,
            words: vec![
                word(
                    "ntqd",
                    "naqad_1",
                    "verb",
                    vec![seg("ntqd", "verb", SegmentKind::Stem, false)],
                    DepHead::Root,
                    "---",
                ),
                word(
                    "AldwlT",
                    "dawolap_1",
                    "noun",
                    vec![
                        seg("Al", "DET", SegmentKind::Proclitic, true),
                        seg("dwlT", "noun", SegmentKind::Stem, false),
                    ],
                    DepHead::Word(0),
                    "OBJ",
                ),
            ],
            gold_targets: vec![TargetSpan::new(1, 1, Polarity::Neg)],
        }
    }

    #[test]
    fn det_token_appears_in_neighbor_pos_atoms() {
        let post = verb_object_post();
        let seq = derive_tokens(&post, Scheme::LemmaD3);
        // tokens: ntqd, Al+, dwlT -> the noun at index 2 sees DET at -1
        let vecs = extract_target_features(&post, &seq, &FeatureConfig::lexical_pos()).unwrap();
        assert!(vecs[2].iter().any(|a| a == "pos:-1=DET"), "{:?}", vecs[2]);
        assert!(vecs[2].iter().any(|a| a == "repr:-1=Al+"), "{:?}", vecs[2]);
    }

    #[test]
    fn all_families_off_gives_empty_vectors() {
        let post = verb_object_post();
        let seq = derive_tokens(&post, Scheme::Lemma);
        let vecs = extract_target_features(&post, &seq, &FeatureConfig::empty()).unwrap();
        assert!(vecs.iter().all(|v| v.is_empty()));
    }

    #[test]
    fn object_of_verb_role_path() {
        let post = verb_object_post();
        let path = dependency_paths(&post, 1).unwrap();
        assert_eq!(path.role_path(), "nom_obj_vrb");
        let root = dependency_paths(&post, 0).unwrap();
        assert_eq!(root.role_path(), "vrb_---_root");
    }

    #[test]
    fn idafa_path_between_nouns() {
        let mut post = verb_object_post();
        post.words.push(word(
            "AlHkwmT",
            "Hukuwmap_1",
            "noun",
            vec![
                seg("Al", "DET", SegmentKind::Proclitic, true),
                seg("HkwmT", "noun", SegmentKind::Stem, false),
            ],
            DepHead::Word(1),
            "IDF",
        ));
        let path = dependency_paths(&post, 2).unwrap();
        assert_eq!(path.role_path(), "nom_idf_nom");
    }

    #[test]
    fn deppath_atom_present_at_offset_zero() {
        let post = verb_object_post();
        let seq = derive_tokens(&post, Scheme::Lemma);
        let mut cfg = FeatureConfig::lexical_pos();
        cfg.dep_role_path = true;
        let vecs = extract_target_features(&post, &seq, &cfg).unwrap();
        assert!(
            vecs[1].iter().any(|a| a == "deppath:0=nom_obj_vrb"),
            "{:?}",
            vecs[1]
        );
    }

    #[test]
    fn sentiment_path_spells_out_endpoint_polarities() {
        let post = verb_object_post();
        let seq = derive_tokens(&post, Scheme::Lemma);
        let mut lex = Lexicon::prior_list();
        lex.insert(
            "naqad_1".into(),
            LexEntry::prior(crate::lexicon::PriorPolarity::Neg),
        );
        let mut cfg = FeatureConfig::empty();
        cfg.dep_sentiment_path = true;
        cfg.lexicons = vec![&lex];
        let labels = project_target_labels(&post, &seq).unwrap();
        let vecs = extract_sentiment_features(&post, &seq, &labels, &cfg).unwrap();
        assert!(
            vecs[1]
                .iter()
                .any(|a| a == "sentpath:0=nom(neutral)_obj_vrb(negative)"),
            "{:?}",
            vecs[1]
        );
    }

    #[test]
    fn istarget_atoms_cover_window() {
        let post = verb_object_post();
        let seq = derive_tokens(&post, Scheme::LemmaD3); // [verb, Al+, noun]
        let labels = project_target_labels(&post, &seq).unwrap();
        let vecs =
            extract_sentiment_features(&post, &seq, &labels, &FeatureConfig::empty()).unwrap();
        // verb at 0: itself outside, target at +1 and +2
        assert!(vecs[0].iter().any(|a| a == "istarget:0=O"));
        assert!(vecs[0].iter().any(|a| a == "istarget:+2=T"));
        assert!(vecs[2].iter().any(|a| a == "istarget:0=T"));
    }

    #[test]
    fn boundary_atoms_mark_sequence_edges() {
        let post = verb_object_post();
        let seq = derive_tokens(&post, Scheme::Lemma);
        let vecs = extract_target_features(&post, &seq, &FeatureConfig::lexical_pos()).unwrap();
        assert!(vecs[0].iter().any(|a| a == "repr:-1=<BOS>"));
        assert!(vecs[1].iter().any(|a| a == "repr:+1=<EOS>"));
    }

    #[test]
    fn cluster_family_without_model_errors() {
        let post = verb_object_post();
        let seq = derive_tokens(&post, Scheme::Lemma);
        let mut cfg = FeatureConfig::empty();
        cfg.cluster = true;
        assert!(extract_target_features(&post, &seq, &cfg).is_err());
    }

    #[test]
    fn atoms_are_unique_per_position() {
        let (posts, lex) = generate_synthetic(&SynthConfig {
            n_posts: 6,
            ..Default::default()
        })
        .unwrap();
        let cfg = FeatureConfig::best_linguistic(vec![&lex]);
        for post in &posts {
            let seq = derive_tokens(post, Scheme::LemmaD3);
            let labels = project_target_labels(post, &seq).unwrap();
            for v in extract_sentiment_features(post, &seq, &labels, &cfg).unwrap() {
                let set: std::collections::HashSet<&String> = v.iter().collect();
                assert_eq!(set.len(), v.len());
            }
        }
    }

    #[test]
    fn disabling_a_family_removes_exactly_its_atoms() {
        let (posts, lex) = generate_synthetic(&SynthConfig {
            n_posts: 4,
            ..Default::default()
        })
        .unwrap();
        let full = FeatureConfig::best_linguistic(vec![&lex]);
        let mut without_ner = full.clone();
        without_ner.ner = false;
        for post in &posts {
            let seq = derive_tokens(post, Scheme::LemmaAtb);
            let a = extract_target_features(post, &seq, &full).unwrap();
            let b = extract_target_features(post, &seq, &without_ner).unwrap();
            for (va, vb) in a.iter().zip(&b) {
                let sa: std::collections::HashSet<&String> = va.iter().collect();
                let sb: std::collections::HashSet<&String> = vb.iter().collect();
                assert!(sb.is_subset(&sa));
                for only_in_a in sa.difference(&sb) {
                    assert!(only_in_a.starts_with("ner:"), "unexpected {only_in_a}");
                }
                for kept in &sb {
                    assert!(!kept.starts_with("ner:"));
                }
            }
        }
    }

    #[test]
    fn window_symmetry_between_adjacent_positions() {
        let (posts, _) = generate_synthetic(&SynthConfig {
            n_posts: 3,
            ..Default::default()
        })
        .unwrap();
        for post in &posts {
            let seq = derive_tokens(post, Scheme::LemmaD3);
            let vecs =
                extract_target_features(post, &seq, &FeatureConfig::lexical_pos()).unwrap();
            // "repr:+1=v" at i and "repr:-1=v" at i+2 describe the same token
            for i in 0..vecs.len().saturating_sub(2) {
                for atom in &vecs[i] {
                    if let Some(rest) = atom.strip_prefix("repr:+1=") {
                        if rest != EOS {
                            assert!(
                                vecs[i + 2].contains(&format!("repr:-1={rest}")),
                                "no mirror for {atom} at {i}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn extraction_is_pure() {
        let (posts, lex) = generate_synthetic(&SynthConfig {
            n_posts: 2,
            ..Default::default()
        })
        .unwrap();
        let cfg = FeatureConfig::best_linguistic(vec![&lex]);
        let seq = derive_tokens(&posts[0], Scheme::LemmaD3);
        let a = extract_target_features(&posts[0], &seq, &cfg).unwrap();
        let b = extract_target_features(&posts[0], &seq, &cfg).unwrap();
        assert_eq!(a, b);
    }

    use crate::corpus::DepHead;
}
