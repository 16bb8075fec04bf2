//! Semantic cluster features: word-vector import/training and seeded
//! K-Means under Euclidean distance.
//!
//! Embedding text format: a header line `<vocab_size> <dimension>` followed
//! by one line per word (`word v1 v2 ... vd`). Cluster files are TSV
//! `word<TAB>cluster_id`.

mod kmeans;
mod skipgram;

pub use kmeans::{kmeans_cluster, kmeans_with_trace, ClusterModel};
pub use skipgram::{train_skipgram, SkipgramConfig};

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::morpho::{Scheme, Token};

/// A table of word vectors, all of one dimension, keyed by the token
/// representation of the scheme it was built for.
#[derive(Debug, Clone)]
pub struct EmbeddingTable {
    pub dimension: usize,
    /// Keys in insertion order; parallel to `vectors`.
    words: Vec<String>,
    vectors: Vec<Vec<f64>>,
    index: HashMap<String, usize>,
    pub preprocessing: Scheme,
    /// Number of duplicate words encountered at load (last occurrence wins).
    pub duplicate_count: usize,
}

impl EmbeddingTable {
    pub fn new(dimension: usize, preprocessing: Scheme) -> Self {
        EmbeddingTable {
            dimension,
            words: Vec::new(),
            vectors: Vec::new(),
            index: HashMap::new(),
            preprocessing,
            duplicate_count: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn vector(&self, word: &str) -> Option<&[f64]> {
        self.index.get(word).map(|&i| self.vectors[i].as_slice())
    }

    pub fn vector_at(&self, i: usize) -> &[f64] {
        &self.vectors[i]
    }

    /// Inserts or replaces a vector; replacement bumps `duplicate_count`.
    pub fn insert(&mut self, word: String, vector: Vec<f64>) {
        assert_eq!(vector.len(), self.dimension);
        match self.index.get(&word) {
            Some(&i) => {
                self.vectors[i] = vector;
                self.duplicate_count += 1;
            }
            None => {
                self.index.insert(word.clone(), self.words.len());
                self.words.push(word);
                self.vectors.push(vector);
            }
        }
    }

    pub fn cosine(&self, a: &str, b: &str) -> Option<f64> {
        let va = self.vector(a)?;
        let vb = self.vector(b)?;
        let dot: f64 = va.iter().zip(vb).map(|(x, y)| x * y).sum();
        let na: f64 = va.iter().map(|x| x * x).sum::<f64>().sqrt();
        let nb: f64 = vb.iter().map(|x| x * x).sum::<f64>().sqrt();
        if na == 0.0 || nb == 0.0 {
            return Some(0.0);
        }
        Some(dot / (na * nb))
    }
}

/// Loads an embedding table from the text format. Any line whose vector
/// length disagrees with the header dimension is an error naming the line.
pub fn load_embeddings(path: impl AsRef<Path>, preprocessing: Scheme) -> Result<EmbeddingTable> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| Error::io(&display, e))?;
    let mut lines = text.lines().enumerate();

    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::parse(&display, 1, "missing header line"))?;
    let mut parts = header.split_whitespace();
    let vocab_size: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse(&display, 1, "bad vocab size in header"))?;
    let dimension: usize = parts
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::parse(&display, 1, "bad dimension in header"))?;

    let mut table = EmbeddingTable::new(dimension, preprocessing);
    let mut rows = 0usize;
    for (lineno, line) in lines {
        let lineno = lineno + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let word = fields
            .next()
            .ok_or_else(|| Error::parse(&display, lineno, "empty line"))?;
        let mut vector = Vec::with_capacity(dimension);
        for f in fields {
            let v: f64 = f
                .parse()
                .map_err(|_| Error::parse(&display, lineno, format!("bad float {f:?}")))?;
            if !v.is_finite() {
                return Err(Error::parse(&display, lineno, "non-finite component"));
            }
            vector.push(v);
        }
        if vector.len() != dimension {
            return Err(Error::parse(
                &display,
                lineno,
                format!("{} components, expected {dimension}", vector.len()),
            ));
        }
        table.insert(word.to_string(), vector);
        rows += 1;
    }
    if rows != vocab_size {
        return Err(Error::parse(
            &display,
            1,
            format!("header declares {vocab_size} words but file has {rows}"),
        ));
    }
    Ok(table)
}

/// Writes the table in the same text format, preserving insertion order.
pub fn save_embeddings(path: impl AsRef<Path>, table: &EmbeddingTable) -> Result<()> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let mut out = fs::File::create(path).map_err(|e| Error::io(&display, e))?;
    writeln!(out, "{} {}", table.len(), table.dimension).map_err(|e| Error::io(&display, e))?;
    for (i, word) in table.words.iter().enumerate() {
        let comps: Vec<String> = table.vectors[i].iter().map(|v| format!("{v}")).collect();
        writeln!(out, "{word} {}", comps.join(" ")).map_err(|e| Error::io(&display, e))?;
    }
    Ok(())
}

/// Cluster id for a token, by its representation string; out-of-vocabulary
/// tokens get no cluster (and therefore no cluster feature).
pub fn assign_cluster(model: &ClusterModel, token: &Token) -> Option<u32> {
    model.assignment(&token.repr)
}

/// Writes `word<TAB>cluster_id` rows in the embedding table's word order.
pub fn save_clusters(
    path: impl AsRef<Path>,
    model: &ClusterModel,
    table: &EmbeddingTable,
) -> Result<()> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let mut out = fs::File::create(path).map_err(|e| Error::io(&display, e))?;
    for (word, cluster) in model.assignments_ordered(table) {
        writeln!(out, "{word}\t{cluster}").map_err(|e| Error::io(&display, e))?;
    }
    Ok(())
}

/// Reads a cluster assignment TSV back into a model (assignments only;
/// centroids are not stored in the file format).
pub fn load_clusters(path: impl AsRef<Path>) -> Result<ClusterModel> {
    let path = path.as_ref();
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|e| Error::io(&display, e))?;
    let mut pairs = Vec::new();
    let mut max_id = 0u32;
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (word, id) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(&display, lineno, "expected word<TAB>cluster_id"))?;
        let id: u32 = id
            .parse()
            .map_err(|_| Error::parse(&display, lineno, format!("bad cluster id {id:?}")))?;
        max_id = max_id.max(id);
        pairs.push((word.to_string(), id));
    }
    if pairs.is_empty() {
        return Err(Error::parse(&display, 1, "empty cluster file"));
    }
    Ok(ClusterModel::from_pairs(max_id as usize + 1, pairs))
}
