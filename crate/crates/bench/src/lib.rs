//! Shared fixtures for the criterion benchmarks.

use tsa_core::corpus::{generate_synthetic, Post, SynthConfig};
use tsa_core::crf::{CrfModel, TrainConfig};
use tsa_core::features::FeatureConfig;
use tsa_core::lexicon::Lexicon;
use tsa_core::morpho::Scheme;
use tsa_core::pipeline::{train_pipeline, PipelineConfig, SchemeChoice};

pub struct Fixture {
    pub posts: Vec<Post>,
    pub lexicon: Lexicon,
    pub target_model: CrfModel,
    pub sentiment_model: CrfModel,
}

pub fn pipeline_config(lexicon: &Lexicon) -> PipelineConfig<'_> {
    let mut cfg = PipelineConfig::new(
        SchemeChoice::Single(Scheme::LemmaD3),
        FeatureConfig::best_linguistic(vec![lexicon]),
        FeatureConfig::best_linguistic(vec![lexicon]),
    );
    cfg.target_train = TrainConfig {
        max_iters: 60,
        ..Default::default()
    };
    cfg.sentiment_train = cfg.target_train.clone();
    cfg
}

/// Trains a small pipeline once; benchmarks measure the hot paths against
/// these fixed models.
pub fn fixture() -> Fixture {
    let (posts, lexicon) = generate_synthetic(&SynthConfig {
        n_posts: 80,
        ..Default::default()
    })
    .unwrap();
    let (target_model, sentiment_model) = {
        let cfg = pipeline_config(&lexicon);
        train_pipeline(&posts[..60], &cfg).unwrap()
    };
    Fixture {
        posts,
        lexicon,
        target_model,
        sentiment_model,
    }
}
