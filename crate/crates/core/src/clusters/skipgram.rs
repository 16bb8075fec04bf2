//! Desk-scale skip-gram with negative sampling, single-threaded and fully
//! deterministic for a fixed seed.

use crate::error::{Error, Result};
use crate::morpho::Scheme;
use crate::rng::Rng;

use super::EmbeddingTable;

#[derive(Debug, Clone)]
pub struct SkipgramConfig {
    pub dimension: usize,
    pub window: usize,
    pub negatives: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub min_count: usize,
    pub seed: u64,
    pub preprocessing: Scheme,
}

impl Default for SkipgramConfig {
    fn default() -> Self {
        SkipgramConfig {
            dimension: 200,
            window: 5,
            negatives: 5,
            epochs: 5,
            learning_rate: 0.025,
            min_count: 1,
            seed: 1,
            preprocessing: Scheme::Lemma,
        }
    }
}

fn sigmoid(x: f64) -> f64 {
    if x > 30.0 {
        1.0
    } else if x < -30.0 {
        0.0
    } else {
        1.0 / (1.0 + (-x).exp())
    }
}

/// Trains word vectors on token sequences. The vocabulary is every token
/// with count >= `min_count`, ordered by descending count (ties by word) so
/// runs are reproducible. With `epochs = 0` the seeded initialization is
/// returned untouched.
pub fn train_skipgram(sequences: &[Vec<String>], cfg: &SkipgramConfig) -> Result<EmbeddingTable> {
    let total_tokens: usize = sequences.iter().map(|s| s.len()).sum();
    if total_tokens == 0 {
        return Err(Error::InvalidConfig(
            "skip-gram training needs a non-empty corpus".into(),
        ));
    }
    if cfg.dimension == 0 || cfg.window == 0 {
        return Err(Error::InvalidConfig(
            "dimension and window must be positive".into(),
        ));
    }

    let mut counts: std::collections::HashMap<&str, usize> = std::collections::HashMap::new();
    for seq in sequences {
        for tok in seq {
            *counts.entry(tok.as_str()).or_insert(0) += 1;
        }
    }
    let mut vocab: Vec<(&str, usize)> = counts
        .iter()
        .filter(|(_, &c)| c >= cfg.min_count)
        .map(|(&w, &c)| (w, c))
        .collect();
    vocab.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
    if vocab.is_empty() {
        return Err(Error::InvalidConfig(
            "min_count leaves an empty vocabulary".into(),
        ));
    }
    let word_index: std::collections::HashMap<&str, usize> = vocab
        .iter()
        .enumerate()
        .map(|(i, &(w, _))| (w, i))
        .collect();
    let v = vocab.len();
    let d = cfg.dimension;

    // Unigram^(3/4) negative-sampling distribution as cumulative weights.
    let mut cumulative = Vec::with_capacity(v);
    let mut acc = 0.0f64;
    for &(_, c) in &vocab {
        acc += (c as f64).powf(0.75);
        cumulative.push(acc);
    }
    let sample_negative = |rng: &mut Rng| -> usize {
        let u = rng.next_f64() * acc;
        cumulative.partition_point(|&c| c <= u).min(v - 1)
    };

    let mut rng = Rng::new(cfg.seed);
    let mut input: Vec<f64> = (0..v * d)
        .map(|_| (rng.next_f64() - 0.5) / d as f64)
        .collect();
    let mut output = vec![0.0f64; v * d];

    let encoded: Vec<Vec<usize>> = sequences
        .iter()
        .map(|seq| {
            seq.iter()
                .filter_map(|t| word_index.get(t.as_str()).copied())
                .collect()
        })
        .collect();
    let corpus_words: usize = encoded.iter().map(|s| s.len()).sum();
    let schedule_total = (corpus_words * cfg.epochs.max(1)) as f64;
    let mut processed = 0usize;
    let mut grad_buf = vec![0.0f64; d];

    for _epoch in 0..cfg.epochs {
        for seq in &encoded {
            for (center_pos, &center) in seq.iter().enumerate() {
                processed += 1;
                let alpha = cfg.learning_rate
                    * (1.0 - processed as f64 / schedule_total).max(1e-4);
                let b = 1 + rng.gen_range(cfg.window);
                let lo = center_pos.saturating_sub(b);
                let hi = (center_pos + b).min(seq.len().saturating_sub(1));
                for ctx_pos in lo..=hi {
                    if ctx_pos == center_pos {
                        continue;
                    }
                    let context = seq[ctx_pos];
                    grad_buf.iter_mut().for_each(|g| *g = 0.0);
                    let vin = center * d;

                    // positive sample plus `negatives` draws
                    for s in 0..=cfg.negatives {
                        let (target, label) = if s == 0 {
                            (context, 1.0)
                        } else {
                            let mut neg = sample_negative(&mut rng);
                            let mut guard = 0;
                            while neg == context && guard < 8 {
                                neg = sample_negative(&mut rng);
                                guard += 1;
                            }
                            if neg == context {
                                continue;
                            }
                            (neg, 0.0)
                        };
                        let vout = target * d;
                        let mut f = 0.0;
                        for j in 0..d {
                            f += input[vin + j] * output[vout + j];
                        }
                        let g = (label - sigmoid(f)) * alpha;
                        for j in 0..d {
                            grad_buf[j] += g * output[vout + j];
                            output[vout + j] += g * input[vin + j];
                        }
                    }
                    for j in 0..d {
                        input[vin + j] += grad_buf[j];
                    }
                }
            }
        }
    }

    let mut table = EmbeddingTable::new(d, cfg.preprocessing);
    for (i, &(w, _)) in vocab.iter().enumerate() {
        let vec = input[i * d..(i + 1) * d].to_vec();
        if vec.iter().any(|x| !x.is_finite()) {
            return Err(Error::Train {
                message: format!("non-finite embedding for {w:?}"),
            });
        }
        table.insert(w.to_string(), vec);
    }
    Ok(table)
}
