//! Targeted sentiment analysis for long, multi-entity posts: two pipelined
//! linear-chain CRFs over morphology-aware token sequences, with lexicon,
//! dependency, and embedding-cluster features, plus the span-subset
//! evaluation suite and significance testing.

// numeric kernels iterate parallel arrays by index throughout
#![allow(clippy::needless_range_loop)]

pub mod clusters;
pub mod corpus;
pub mod crf;
pub mod error;
pub mod eval;
pub mod features;
pub mod lexicon;
pub mod morpho;
pub mod pipeline;
pub mod rng;
pub mod util;

pub use error::{Error, Result};
