//! Log-space forward-backward and (masked) Viterbi over encoded sequences.
//!
//! Sequences carry node features (bound to the label at their position)
//! and, optionally, edge features (bound to the incoming label pair); the
//! latter realize observation-conditioned label-bigram conjunctions. An
//! empty edge slice means no edge features anywhere.

use crate::error::{Error, Result};

/// Borrowed view over a weight vector laid out as node emissions
/// (`n_features x L`), transitions (`L x L`), then edge emissions
/// (`n_edge_features x L x L`).
#[derive(Debug, Clone, Copy)]
pub struct WeightsView<'a> {
    weights: &'a [f64],
    n_features: usize,
    n_edge_features: usize,
    n_labels: usize,
}

/// Required weight-vector length for the given alphabet sizes.
pub fn weights_len(n_features: usize, n_edge_features: usize, n_labels: usize) -> usize {
    n_features * n_labels + n_labels * n_labels + n_edge_features * n_labels * n_labels
}

impl<'a> WeightsView<'a> {
    pub fn new(weights: &'a [f64], n_features: usize, n_labels: usize) -> Self {
        Self::with_edges(weights, n_features, 0, n_labels)
    }

    pub fn with_edges(
        weights: &'a [f64],
        n_features: usize,
        n_edge_features: usize,
        n_labels: usize,
    ) -> Self {
        debug_assert_eq!(
            weights.len(),
            weights_len(n_features, n_edge_features, n_labels)
        );
        WeightsView {
            weights,
            n_features,
            n_edge_features,
            n_labels,
        }
    }

    pub fn n_labels(&self) -> usize {
        self.n_labels
    }

    pub fn n_edge_features(&self) -> usize {
        self.n_edge_features
    }

    #[inline]
    pub fn emission(&self, feature: u32, label: usize) -> f64 {
        self.weights[feature as usize * self.n_labels + label]
    }

    #[inline]
    pub fn transition(&self, from: usize, to: usize) -> f64 {
        self.weights[self.n_features * self.n_labels + from * self.n_labels + to]
    }

    #[inline]
    fn edge_base(&self) -> usize {
        self.n_features * self.n_labels + self.n_labels * self.n_labels
    }

    /// Flat weight index of an edge feature bound to the pair (from, to).
    #[inline]
    pub fn edge_index(&self, feature: u32, from: usize, to: usize) -> usize {
        self.edge_base()
            + feature as usize * self.n_labels * self.n_labels
            + from * self.n_labels
            + to
    }

    /// Score of the incoming edge of a position: the label-pair transition
    /// plus any edge features firing there.
    #[inline]
    pub fn edge_score(&self, edge_feats: &[u32], from: usize, to: usize) -> f64 {
        let mut s = self.transition(from, to);
        for &f in edge_feats {
            s += self.weights[self.edge_index(f, from, to)];
        }
        s
    }

    /// Unary score of every label at one position.
    pub fn unary(&self, feats: &[u32]) -> Vec<f64> {
        let mut u = vec![0.0; self.n_labels];
        for &f in feats {
            let base = f as usize * self.n_labels;
            for (y, uy) in u.iter_mut().enumerate() {
                *uy += self.weights[base + y];
            }
        }
        u
    }

    /// Total score of one labeling. `edges[i]` holds the edge features of
    /// the edge entering position `i` (index 0 unused); empty means none.
    pub fn path_score(&self, feats: &[Vec<u32>], edges: &[Vec<u32>], labels: &[usize]) -> f64 {
        let mut s = 0.0;
        for (i, fs) in feats.iter().enumerate() {
            for &f in fs {
                s += self.emission(f, labels[i]);
            }
            if i > 0 {
                s += self.edge_score(edge_at(edges, i), labels[i - 1], labels[i]);
            }
        }
        s
    }
}

const NO_EDGES: &[u32] = &[];

#[inline]
fn edge_at(edges: &[Vec<u32>], i: usize) -> &[u32] {
    if edges.is_empty() {
        NO_EDGES
    } else {
        &edges[i]
    }
}

fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

/// Forward-backward output: the log partition function, per-position label
/// marginals, and per-edge pair marginals (row-major `from * L + to`).
#[derive(Debug, Clone)]
pub struct FbResult {
    pub log_z: f64,
    pub node_marginals: Vec<Vec<f64>>,
    pub edge_marginals: Vec<Vec<f64>>,
}

/// Runs forward-backward over one encoded sequence. Marginals sum to one
/// per position; everything is computed in log space with log-sum-exp.
pub fn forward_backward(view: &WeightsView<'_>, feats: &[Vec<u32>], edges: &[Vec<u32>]) -> FbResult {
    let n = feats.len();
    let l = view.n_labels();
    if n == 0 {
        return FbResult {
            log_z: 0.0,
            node_marginals: vec![],
            edge_marginals: vec![],
        };
    }

    let unaries: Vec<Vec<f64>> = feats.iter().map(|f| view.unary(f)).collect();

    let mut alpha = vec![vec![0.0f64; l]; n];
    alpha[0].clone_from(&unaries[0]);
    let mut scratch = vec![0.0f64; l];
    for i in 1..n {
        let ef = edge_at(edges, i);
        for y in 0..l {
            for (a, s) in scratch.iter_mut().enumerate() {
                *s = alpha[i - 1][a] + view.edge_score(ef, a, y);
            }
            alpha[i][y] = log_sum_exp(&scratch) + unaries[i][y];
        }
    }
    let log_z = log_sum_exp(&alpha[n - 1]);

    let mut beta = vec![vec![0.0f64; l]; n];
    for i in (0..n - 1).rev() {
        let ef = edge_at(edges, i + 1);
        for y in 0..l {
            for (b, s) in scratch.iter_mut().enumerate() {
                *s = view.edge_score(ef, y, b) + unaries[i + 1][b] + beta[i + 1][b];
            }
            beta[i][y] = log_sum_exp(&scratch);
        }
    }

    let node_marginals: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..l)
                .map(|y| (alpha[i][y] + beta[i][y] - log_z).exp())
                .collect()
        })
        .collect();

    let edge_marginals: Vec<Vec<f64>> = (0..n.saturating_sub(1))
        .map(|i| {
            let ef = edge_at(edges, i + 1);
            let mut e = vec![0.0f64; l * l];
            for a in 0..l {
                for b in 0..l {
                    e[a * l + b] = (alpha[i][a]
                        + view.edge_score(ef, a, b)
                        + unaries[i + 1][b]
                        + beta[i + 1][b]
                        - log_z)
                        .exp();
                }
            }
            e
        })
        .collect();

    FbResult {
        log_z,
        node_marginals,
        edge_marginals,
    }
}

/// Max-score decoding, optionally restricted to per-position allowed-label
/// sets. Ties break toward the lowest label index. Errors if a mask leaves
/// a position with no allowed label.
pub fn viterbi(
    view: &WeightsView<'_>,
    feats: &[Vec<u32>],
    edges: &[Vec<u32>],
    mask: Option<&[Vec<bool>]>,
) -> Result<Vec<usize>> {
    let n = feats.len();
    let l = view.n_labels();
    if n == 0 {
        return Ok(vec![]);
    }
    if let Some(m) = mask {
        if m.len() != n {
            return Err(Error::Decode("mask length != sequence length".into()));
        }
        for (i, allowed) in m.iter().enumerate() {
            if allowed.len() != l || !allowed.iter().any(|&a| a) {
                return Err(Error::Decode(format!(
                    "position {i}: mask allows no label"
                )));
            }
        }
    }
    let allowed = |i: usize, y: usize| mask.is_none_or(|m| m[i][y]);

    let mut delta = vec![vec![f64::NEG_INFINITY; l]; n];
    let mut back = vec![vec![0usize; l]; n];
    let unary0 = view.unary(&feats[0]);
    for y in 0..l {
        if allowed(0, y) {
            delta[0][y] = unary0[y];
        }
    }
    for i in 1..n {
        let unary = view.unary(&feats[i]);
        let ef = edge_at(edges, i);
        for y in 0..l {
            if !allowed(i, y) {
                continue;
            }
            let mut best = f64::NEG_INFINITY;
            let mut best_a = 0;
            for a in 0..l {
                if delta[i - 1][a] == f64::NEG_INFINITY {
                    continue;
                }
                let s = delta[i - 1][a] + view.edge_score(ef, a, y);
                if s > best {
                    best = s;
                    best_a = a;
                }
            }
            if best > f64::NEG_INFINITY {
                delta[i][y] = best + unary[y];
                back[i][y] = best_a;
            }
        }
    }

    let mut best_y = 0;
    let mut best = f64::NEG_INFINITY;
    for y in 0..l {
        if delta[n - 1][y] > best {
            best = delta[n - 1][y];
            best_y = y;
        }
    }
    if best == f64::NEG_INFINITY {
        return Err(Error::Decode("no admissible labeling under mask".into()));
    }

    let mut labels = vec![0usize; n];
    labels[n - 1] = best_y;
    for i in (1..n).rev() {
        labels[i - 1] = back[i][labels[i]];
    }
    Ok(labels)
}
