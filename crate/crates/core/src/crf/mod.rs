//! Linear-chain conditional random field engine: log-space
//! forward-backward, L2-penalized maximum-likelihood training with L-BFGS,
//! constrained Viterbi decoding, and versioned model serialization.
//!
//! Weights are laid out as one block of (feature, label) emission weights
//! followed by a block of (label, label) transition weights. Feature atoms
//! are interned into a dense alphabet at training time and frozen
//! afterwards; atoms unseen in training contribute nothing at prediction.

mod inference;
mod train;

pub use inference::{forward_backward, viterbi, weights_len, FbResult, WeightsView};
pub use train::{train, train_with_trace, EncodedSeq, TrainInstance};

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::morpho::Task;

/// Dense string-interning alphabet with stable, first-seen ordering.
#[derive(Debug, Clone, Default)]
pub struct Alphabet {
    atoms: Vec<String>,
    index: HashMap<String, u32>,
}

impl Alphabet {
    pub fn new() -> Self {
        Alphabet::default()
    }

    pub fn intern(&mut self, atom: &str) -> u32 {
        if let Some(&i) = self.index.get(atom) {
            return i;
        }
        let i = self.atoms.len() as u32;
        self.atoms.push(atom.to_string());
        self.index.insert(atom.to_string(), i);
        i
    }

    pub fn get(&self, atom: &str) -> Option<u32> {
        self.index.get(atom).copied()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atom(&self, i: u32) -> &str {
        &self.atoms[i as usize]
    }

    fn from_atoms(atoms: Vec<String>) -> Self {
        let index = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i as u32))
            .collect();
        Alphabet { atoms, index }
    }
}

/// Training hyperparameters.
#[derive(Debug, Clone)]
pub struct TrainConfig {
    /// Gaussian prior scale; the penalty is ||w||^2 / (2 sigma^2).
    pub l2_sigma: f64,
    pub max_iters: usize,
    /// Relative objective-change tolerance for termination.
    pub rel_tolerance: f64,
    pub lbfgs_memory: usize,
    /// Atoms occurring fewer times than this across the training data are
    /// dropped before training.
    pub min_feature_count: usize,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            l2_sigma: 1.0,
            max_iters: 300,
            rel_tolerance: 1e-5,
            lbfgs_memory: 10,
            min_feature_count: 1,
        }
    }
}

impl TrainConfig {
    fn validate(&self) -> Result<()> {
        if self.l2_sigma <= 0.0 || self.rel_tolerance <= 0.0 || self.lbfgs_memory == 0 {
            return Err(Error::InvalidConfig(
                "l2_sigma, rel_tolerance, and lbfgs_memory must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// A trained linear-chain CRF for one task. Immutable; safe to share across
/// threads for concurrent decoding.
#[derive(Debug, Clone)]
pub struct CrfModel {
    pub task: Task,
    pub labels: Vec<String>,
    pub features: Alphabet,
    /// Alphabet of observation atoms bound to label pairs; empty unless
    /// previous-label conjunction features were enabled at training.
    pub edge_features: Alphabet,
    pub weights: Vec<f64>,
    pub l2_sigma: f64,
    /// Free-form metadata persisted with the model (e.g. the tokenization
    /// scheme it was trained under).
    pub meta: BTreeMap<String, String>,
}

impl CrfModel {
    pub fn n_labels(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.features.len()
    }

    pub fn weights_view(&self) -> WeightsView<'_> {
        WeightsView::with_edges(
            &self.weights,
            self.n_features(),
            self.edge_features.len(),
            self.n_labels(),
        )
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Maps atom strings to feature ids, silently dropping atoms the model
    /// has never seen.
    pub fn encode_features(&self, atoms: &[Vec<String>]) -> Vec<Vec<u32>> {
        atoms
            .iter()
            .map(|pos| pos.iter().filter_map(|a| self.features.get(a)).collect())
            .collect()
    }

    pub fn encode_edge_features(&self, atoms: &[Vec<String>]) -> Vec<Vec<u32>> {
        if atoms.is_empty() || self.edge_features.is_empty() {
            return vec![];
        }
        atoms
            .iter()
            .map(|pos| {
                pos.iter()
                    .filter_map(|a| self.edge_features.get(a))
                    .collect()
            })
            .collect()
    }

    /// Viterbi decoding over atom strings with an optional per-position
    /// allowed-label mask.
    pub fn decode(
        &self,
        atoms: &[Vec<String>],
        mask: Option<&[Vec<bool>]>,
    ) -> Result<Vec<usize>> {
        self.decode_full(atoms, &[], mask)
    }

    /// Decoding with previous-label conjunction atoms; `edge_atoms[i]`
    /// belongs to the edge entering position `i` (empty slice for none).
    pub fn decode_full(
        &self,
        atoms: &[Vec<String>],
        edge_atoms: &[Vec<String>],
        mask: Option<&[Vec<bool>]>,
    ) -> Result<Vec<usize>> {
        let feats = self.encode_features(atoms);
        let edges = self.encode_edge_features(edge_atoms);
        viterbi(&self.weights_view(), &feats, &edges, mask)
    }

    /// Penalized negative log-likelihood and its gradient over a dataset of
    /// already-encoded sequences (node features and gold label indices).
    pub fn objective_and_gradient(
        &self,
        data: &[(Vec<Vec<u32>>, Vec<usize>)],
    ) -> Result<(f64, Vec<f64>)> {
        let encoded: Vec<train::EncodedSeq> = data
            .iter()
            .map(|(feats, labels)| train::EncodedSeq {
                feats: feats.clone(),
                edges: vec![],
                labels: labels.clone(),
            })
            .collect();
        train::objective_and_gradient(
            &self.weights,
            self.n_features(),
            self.edge_features.len(),
            self.n_labels(),
            &encoded,
            self.l2_sigma,
        )
    }
}

const MODEL_MAGIC: &[u8; 8] = b"TSACRF\0\0";
/// Version tag of the binary model layout; readers refuse newer files.
pub const MODEL_VERSION: u32 = 1;

fn put_u32(out: &mut Vec<u8>, v: u32) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_u64(out: &mut Vec<u8>, v: u64) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_f64(out: &mut Vec<u8>, v: f64) {
    out.extend_from_slice(&v.to_le_bytes());
}

fn put_str(out: &mut Vec<u8>, s: &str) {
    put_u32(out, s.len() as u32);
    out.extend_from_slice(s.as_bytes());
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        if self.pos + n > self.buf.len() {
            return Err(Error::ModelFormat("unexpected end of model file".into()));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn string(&mut self) -> Result<String> {
        let len = self.u32()? as usize;
        let bytes = self.take(len)?;
        String::from_utf8(bytes.to_vec())
            .map_err(|_| Error::ModelFormat("non-utf8 string in model file".into()))
    }
}

/// Serializes a model to the versioned binary layout described in
/// `docs/formats.md`.
pub fn serialize(model: &CrfModel) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(MODEL_MAGIC);
    put_u32(&mut out, MODEL_VERSION);
    out.push(match model.task {
        Task::Target => 0u8,
        Task::Sentiment => 1u8,
    });
    put_f64(&mut out, model.l2_sigma);
    put_u32(&mut out, model.labels.len() as u32);
    for l in &model.labels {
        put_str(&mut out, l);
    }
    put_u32(&mut out, model.features.len() as u32);
    for i in 0..model.features.len() {
        put_str(&mut out, model.features.atom(i as u32));
    }
    put_u32(&mut out, model.edge_features.len() as u32);
    for i in 0..model.edge_features.len() {
        put_str(&mut out, model.edge_features.atom(i as u32));
    }
    put_u32(&mut out, model.meta.len() as u32);
    for (k, v) in &model.meta {
        put_str(&mut out, k);
        put_str(&mut out, v);
    }
    put_u64(&mut out, model.weights.len() as u64);
    for &w in &model.weights {
        put_f64(&mut out, w);
    }
    out
}

/// Reads a model back; refuses files with a newer format version.
pub fn deserialize(bytes: &[u8]) -> Result<CrfModel> {
    let mut r = Reader { buf: bytes, pos: 0 };
    let magic = r.take(8)?;
    if magic != MODEL_MAGIC {
        return Err(Error::ModelFormat("bad magic; not a model file".into()));
    }
    let version = r.u32()?;
    if version > MODEL_VERSION {
        return Err(Error::ModelFormat(format!(
            "model format version {version} is newer than supported version {MODEL_VERSION}"
        )));
    }
    let task = match r.take(1)?[0] {
        0 => Task::Target,
        1 => Task::Sentiment,
        t => return Err(Error::ModelFormat(format!("unknown task tag {t}"))),
    };
    let l2_sigma = r.f64()?;
    let n_labels = r.u32()? as usize;
    let mut labels = Vec::with_capacity(n_labels);
    for _ in 0..n_labels {
        labels.push(r.string()?);
    }
    let n_feats = r.u32()? as usize;
    let mut atoms = Vec::with_capacity(n_feats);
    for _ in 0..n_feats {
        atoms.push(r.string()?);
    }
    let n_edge_feats = r.u32()? as usize;
    let mut edge_atoms = Vec::with_capacity(n_edge_feats);
    for _ in 0..n_edge_feats {
        edge_atoms.push(r.string()?);
    }
    let n_meta = r.u32()? as usize;
    let mut meta = BTreeMap::new();
    for _ in 0..n_meta {
        let k = r.string()?;
        let v = r.string()?;
        meta.insert(k, v);
    }
    let n_weights = r.u64()? as usize;
    let expected = inference::weights_len(n_feats, n_edge_feats, n_labels);
    if n_weights != expected {
        return Err(Error::ModelFormat(format!(
            "weight count {n_weights} does not match alphabets (expected {expected})"
        )));
    }
    let mut weights = Vec::with_capacity(n_weights);
    for _ in 0..n_weights {
        let w = r.f64()?;
        if !w.is_finite() {
            return Err(Error::ModelFormat("non-finite weight in model file".into()));
        }
        weights.push(w);
    }
    if r.pos != bytes.len() {
        return Err(Error::ModelFormat("trailing bytes after model data".into()));
    }
    Ok(CrfModel {
        task,
        labels,
        features: Alphabet::from_atoms(atoms),
        edge_features: Alphabet::from_atoms(edge_atoms),
        weights,
        l2_sigma,
        meta,
    })
}
