//! The two-model pipeline: trains the target and sentiment CRFs under a
//! scheme choice, runs pipelined prediction with the polar-on-targets
//! decoding constraint, and recovers word-level spans.
//!
//! The combined scheme decodes targets on fully split (D3) sequences, then
//! fuses definite-article tokens back (ATB) before the sentiment stage.

use serde::{Deserialize, Serialize};

use crate::corpus::Post;
use crate::crf::{self, CrfModel, TrainConfig, TrainInstance};
use crate::error::{Error, Result};
use crate::eval::{score, EvalReport, Prediction};
use crate::features::{extract_sentiment_features, extract_target_features, FeatureConfig};
use crate::morpho::{
    derive_tokens, project_sentiment_labels, project_target_labels, project_word_predictions,
    reduce_d3_to_atb, Scheme, SentimentLabel, TargetLabel, Task, TokenSequence,
};
use crate::util::parallel_map;

pub const TARGET_LABELS: [&str; 2] = ["T", "O"];
pub const SENTIMENT_LABELS: [&str; 3] = ["P", "N", "NEUTRAL"];

/// Scheme selection for a pipeline run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeChoice {
    Single(Scheme),
    /// Target model on fully split tokens, sentiment model on
    /// article-fused tokens.
    CombinedD3Atb,
}

impl SchemeChoice {
    pub fn target_scheme(&self) -> Scheme {
        match self {
            SchemeChoice::Single(s) => *s,
            SchemeChoice::CombinedD3Atb => Scheme::LemmaD3,
        }
    }

    pub fn sentiment_scheme(&self) -> Scheme {
        match self {
            SchemeChoice::Single(s) => *s,
            SchemeChoice::CombinedD3Atb => Scheme::LemmaAtb,
        }
    }

    pub fn name(&self) -> String {
        match self {
            SchemeChoice::Single(s) => s.name().to_string(),
            SchemeChoice::CombinedD3Atb => "combined_d3_atb".to_string(),
        }
    }

    pub fn parse(s: &str) -> Result<SchemeChoice> {
        if s == "combined_d3_atb" || s == "combined" {
            Ok(SchemeChoice::CombinedD3Atb)
        } else {
            Ok(SchemeChoice::Single(Scheme::parse(s)?))
        }
    }
}

/// Full configuration of a pipeline run.
#[derive(Debug, Clone)]
pub struct PipelineConfig<'a> {
    pub scheme: SchemeChoice,
    pub target_features: FeatureConfig<'a>,
    pub sentiment_features: FeatureConfig<'a>,
    pub target_train: TrainConfig,
    pub sentiment_train: TrainConfig,
    /// Train the sentiment model on gold target labels (the default) or on
    /// the target model's own predictions.
    pub sentiment_teacher_forcing: bool,
}

impl<'a> PipelineConfig<'a> {
    pub fn new(
        scheme: SchemeChoice,
        target_features: FeatureConfig<'a>,
        sentiment_features: FeatureConfig<'a>,
    ) -> Self {
        PipelineConfig {
            scheme,
            target_features,
            sentiment_features,
            target_train: TrainConfig::default(),
            sentiment_train: TrainConfig::default(),
            sentiment_teacher_forcing: true,
        }
    }
}

fn target_labels_to_strings(labels: &[TargetLabel]) -> Vec<String> {
    labels.iter().map(|l| l.as_str().to_string()).collect()
}

fn sentiment_labels_to_strings(labels: &[SentimentLabel]) -> Vec<String> {
    labels.iter().map(|l| l.as_str().to_string()).collect()
}

/// Edge atoms for previous-label conjunctions: each position's node atoms,
/// attached to the edge entering the position (none for position 0).
fn prefix_edge_atoms(atoms: &[Vec<String>]) -> Vec<Vec<String>> {
    atoms
        .iter()
        .enumerate()
        .map(|(i, v)| if i == 0 { vec![] } else { v.clone() })
        .collect()
}

/// Trains the target and sentiment models independently on the corpus.
pub fn train_pipeline(corpus: &[Post], cfg: &PipelineConfig<'_>) -> Result<(CrfModel, CrfModel)> {
    if corpus.is_empty() {
        return Err(Error::Train {
            message: "empty training corpus".into(),
        });
    }

    let target_scheme = cfg.scheme.target_scheme();
    let mut target_data = Vec::with_capacity(corpus.len());
    for post in corpus {
        let seq = derive_tokens(post, target_scheme);
        let labels = project_target_labels(post, &seq)?;
        let atoms = extract_target_features(post, &seq, &cfg.target_features)?;
        target_data.push(TrainInstance::new(atoms, target_labels_to_strings(&labels)));
    }
    let mut target_model = crf::train(Task::Target, &TARGET_LABELS, &target_data, &cfg.target_train)?;
    target_model
        .meta
        .insert("scheme".into(), target_scheme.name().into());

    let sentiment_scheme = cfg.scheme.sentiment_scheme();
    let mut sentiment_data = Vec::with_capacity(corpus.len());
    let mut polar_tokens = 0usize;
    for post in corpus {
        let seq = derive_tokens(post, sentiment_scheme);
        let sent_labels = project_sentiment_labels(post, &seq)?;
        polar_tokens += sent_labels
            .iter()
            .filter(|&&l| l != SentimentLabel::Neutral)
            .count();
        let e_labels = if cfg.sentiment_teacher_forcing {
            project_target_labels(post, &seq)?
        } else {
            predict_target_stage(post, &target_model, cfg)?.1
        };
        let atoms = extract_sentiment_features(post, &seq, &e_labels, &cfg.sentiment_features)?;
        let edge_atoms = if cfg.sentiment_features.prev_label_conjunctions {
            // previous-label conjunctions reuse the position's own atoms,
            // bound to the incoming label pair
            prefix_edge_atoms(&atoms)
        } else {
            vec![]
        };
        sentiment_data.push(
            TrainInstance::new(atoms, sentiment_labels_to_strings(&sent_labels))
                .with_edges(edge_atoms),
        );
    }
    if polar_tokens == 0 {
        return Err(Error::Train {
            message: "sentiment training data has no polar tokens; the corpus \
                      contains no unambiguous targets"
                .into(),
        });
    }
    let mut sentiment_model = crf::train(
        Task::Sentiment,
        &SENTIMENT_LABELS,
        &sentiment_data,
        &cfg.sentiment_train,
    )?;
    sentiment_model
        .meta
        .insert("scheme".into(), sentiment_scheme.name().into());

    Ok((target_model, sentiment_model))
}

fn check_model(model: &CrfModel, task: Task, scheme: Scheme) -> Result<()> {
    if model.task != task {
        return Err(Error::Mismatch(format!(
            "model trained for {:?}, needed {:?}",
            model.task, task
        )));
    }
    if let Some(s) = model.meta.get("scheme") {
        if s != scheme.name() {
            return Err(Error::Mismatch(format!(
                "model trained under scheme {s}, pipeline expects {}",
                scheme.name()
            )));
        }
    }
    Ok(())
}

/// Runs the target stage of the pipeline on one post: returns the sequence
/// the sentiment stage will see (reduced to ATB for the combined scheme)
/// and the predicted target labels on it.
pub fn predict_target_stage(
    post: &Post,
    target_model: &CrfModel,
    cfg: &PipelineConfig<'_>,
) -> Result<(TokenSequence, Vec<TargetLabel>)> {
    let seq = derive_tokens(post, cfg.scheme.target_scheme());
    let atoms = extract_target_features(post, &seq, &cfg.target_features)?;
    let decoded = target_model.decode(&atoms, None)?;
    let labels: Vec<TargetLabel> = decoded
        .iter()
        .map(|&y| {
            if target_model.labels[y] == "T" {
                TargetLabel::Target
            } else {
                TargetLabel::Outside
            }
        })
        .collect();
    match cfg.scheme {
        SchemeChoice::CombinedD3Atb => reduce_d3_to_atb(&seq, &labels),
        SchemeChoice::Single(_) => Ok((seq, labels)),
    }
}

/// One post's full pipelined decode, exposing the label sequences the
/// prediction was projected from.
#[derive(Debug, Clone)]
pub struct PredictionDetail {
    pub prediction: Prediction,
    pub target_labels: Vec<TargetLabel>,
    pub sentiment_labels: Vec<SentimentLabel>,
}

/// Pipelined prediction: target Viterbi, clitic reduction when combined,
/// then sentiment Viterbi constrained so polar labels appear on target
/// tokens and nowhere else.
pub fn predict_post(
    post: &Post,
    target_model: &CrfModel,
    sentiment_model: &CrfModel,
    cfg: &PipelineConfig<'_>,
) -> Result<Prediction> {
    predict_post_detailed(post, target_model, sentiment_model, cfg).map(|d| d.prediction)
}

pub fn predict_post_detailed(
    post: &Post,
    target_model: &CrfModel,
    sentiment_model: &CrfModel,
    cfg: &PipelineConfig<'_>,
) -> Result<PredictionDetail> {
    check_model(target_model, Task::Target, cfg.scheme.target_scheme())?;
    check_model(sentiment_model, Task::Sentiment, cfg.scheme.sentiment_scheme())?;

    let (seq, target_labels) = predict_target_stage(post, target_model, cfg)?;

    if target_labels.iter().all(|&l| l == TargetLabel::Outside) {
        // no targets: the sentiment stage is skipped entirely
        return Ok(PredictionDetail {
            prediction: Prediction {
                post_id: post.id.clone(),
                spans: vec![],
            },
            sentiment_labels: vec![SentimentLabel::Neutral; target_labels.len()],
            target_labels,
        });
    }

    let atoms = extract_sentiment_features(post, &seq, &target_labels, &cfg.sentiment_features)?;
    let p_ix = sentiment_model
        .label_index("P")
        .ok_or_else(|| Error::Mismatch("sentiment model lacks label P".into()))?;
    let n_ix = sentiment_model
        .label_index("N")
        .ok_or_else(|| Error::Mismatch("sentiment model lacks label N".into()))?;
    let neutral_ix = sentiment_model
        .label_index("NEUTRAL")
        .ok_or_else(|| Error::Mismatch("sentiment model lacks label NEUTRAL".into()))?;

    let n_labels = sentiment_model.n_labels();
    let mask: Vec<Vec<bool>> = target_labels
        .iter()
        .map(|&l| {
            let mut allowed = vec![false; n_labels];
            if l == TargetLabel::Target {
                allowed[p_ix] = true;
                allowed[n_ix] = true;
            } else {
                allowed[neutral_ix] = true;
            }
            allowed
        })
        .collect();

    let edge_atoms = if cfg.sentiment_features.prev_label_conjunctions {
        prefix_edge_atoms(&atoms)
    } else {
        vec![]
    };
    let decoded = sentiment_model.decode_full(&atoms, &edge_atoms, Some(&mask))?;
    let sentiment_labels: Vec<SentimentLabel> = decoded
        .iter()
        .map(|&y| match sentiment_model.labels[y].as_str() {
            "P" => SentimentLabel::Pos,
            "N" => SentimentLabel::Neg,
            _ => SentimentLabel::Neutral,
        })
        .collect();

    let spans = project_word_predictions(&seq, &target_labels, &sentiment_labels);
    Ok(PredictionDetail {
        prediction: Prediction {
            post_id: post.id.clone(),
            spans,
        },
        target_labels,
        sentiment_labels,
    })
}

/// Predicts a whole corpus, in parallel across posts.
pub fn predict_corpus(
    posts: &[Post],
    target_model: &CrfModel,
    sentiment_model: &CrfModel,
    cfg: &PipelineConfig<'_>,
    threads: usize,
) -> Result<Vec<Prediction>> {
    let results = parallel_map(posts, threads, |post| {
        predict_post(post, target_model, sentiment_model, cfg)
    });
    results.into_iter().collect()
}

/// Trains on one split, predicts and scores another.
pub fn run_experiment(
    train_posts: &[Post],
    eval_posts: &[Post],
    cfg: &PipelineConfig<'_>,
    threads: usize,
) -> Result<(EvalReport, Vec<Prediction>, CrfModel, CrfModel)> {
    let (target_model, sentiment_model) = train_pipeline(train_posts, cfg)?;
    let predictions = predict_corpus(eval_posts, &target_model, &sentiment_model, cfg, threads)?;
    let report = score(eval_posts, &predictions)?;
    Ok((report, predictions, target_model, sentiment_model))
}
