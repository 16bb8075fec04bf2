//! Penalized maximum-likelihood training: the objective/gradient pair from
//! forward-backward expectations, and an L-BFGS minimizer with a
//! backtracking Armijo line search.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::morpho::Task;

use super::inference::{forward_backward, weights_len, WeightsView};
use super::{Alphabet, CrfModel, TrainConfig};

/// One training sequence: deduplicated atom strings per position, optional
/// previous-label conjunction atoms per incoming edge, and gold labels.
#[derive(Debug, Clone)]
pub struct TrainInstance {
    pub atoms: Vec<Vec<String>>,
    /// `edge_atoms[i]` binds to the label pair entering position `i`;
    /// leave empty for a plain transition-only model.
    pub edge_atoms: Vec<Vec<String>>,
    pub labels: Vec<String>,
}

impl TrainInstance {
    pub fn new(atoms: Vec<Vec<String>>, labels: Vec<String>) -> Self {
        TrainInstance {
            atoms,
            edge_atoms: vec![],
            labels,
        }
    }

    pub fn with_edges(mut self, edge_atoms: Vec<Vec<String>>) -> Self {
        self.edge_atoms = edge_atoms;
        self
    }
}

/// An encoded sequence ready for the objective.
#[derive(Debug, Clone)]
pub struct EncodedSeq {
    pub feats: Vec<Vec<u32>>,
    /// Empty when the sequence carries no edge features.
    pub edges: Vec<Vec<u32>>,
    pub labels: Vec<usize>,
}

/// Negative penalized log-likelihood and gradient at `weights`.
///
/// NLL = sum over sequences of (log Z - gold score) + ||w||^2 / (2 sigma^2);
/// the gradient is (expected - observed feature counts) + w / sigma^2.
pub fn objective_and_gradient(
    weights: &[f64],
    n_features: usize,
    n_edge_features: usize,
    n_labels: usize,
    data: &[EncodedSeq],
    l2_sigma: f64,
) -> Result<(f64, Vec<f64>)> {
    let view = WeightsView::with_edges(weights, n_features, n_edge_features, n_labels);
    let mut grad = vec![0.0f64; weights.len()];
    let mut nll = 0.0f64;
    let trans_base = n_features * n_labels;

    for (seq_index, seq) in data.iter().enumerate() {
        let (feats, edges, labels) = (&seq.feats, &seq.edges, &seq.labels);
        if feats.is_empty() {
            continue;
        }
        let fb = forward_backward(&view, feats, edges);
        if !fb.log_z.is_finite() {
            return Err(Error::NonFinite { seq_index });
        }
        let gold = view.path_score(feats, edges, labels);
        nll += fb.log_z - gold;

        for (i, fs) in feats.iter().enumerate() {
            let marg = &fb.node_marginals[i];
            for &f in fs {
                let base = f as usize * n_labels;
                for (y, m) in marg.iter().enumerate() {
                    grad[base + y] += m;
                }
                grad[base + labels[i]] -= 1.0;
            }
            if i > 0 {
                let edge_marg = &fb.edge_marginals[i - 1];
                for (ab, e) in edge_marg.iter().enumerate() {
                    grad[trans_base + ab] += e;
                }
                grad[trans_base + labels[i - 1] * n_labels + labels[i]] -= 1.0;
                if !edges.is_empty() {
                    for &f in &edges[i] {
                        for (ab, e) in edge_marg.iter().enumerate() {
                            let (a, b) = (ab / n_labels, ab % n_labels);
                            grad[view.edge_index(f, a, b)] += e;
                        }
                        grad[view.edge_index(f, labels[i - 1], labels[i])] -= 1.0;
                    }
                }
            }
        }
    }

    let inv_var = 1.0 / (l2_sigma * l2_sigma);
    for (g, &w) in grad.iter_mut().zip(weights) {
        *g += w * inv_var;
        nll += 0.5 * w * w * inv_var;
    }
    if !nll.is_finite() {
        return Err(Error::Train {
            message: "objective became non-finite".into(),
        });
    }
    Ok((nll, grad))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn inf_norm(a: &[f64]) -> f64 {
    a.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
}

/// Minimizes `eval` (objective + gradient) by L-BFGS, starting from zero.
/// Returns the minimizer and the trace of accepted objective values.
fn lbfgs<F>(
    mut eval: F,
    dim: usize,
    memory: usize,
    max_iters: usize,
    rel_tolerance: f64,
) -> Result<(Vec<f64>, Vec<f64>)>
where
    F: FnMut(&[f64]) -> Result<(f64, Vec<f64>)>,
{
    let mut x = vec![0.0f64; dim];
    let (mut fx, mut grad) = eval(&x)?;
    let mut trace = vec![fx];
    if max_iters == 0 {
        return Ok((x, trace));
    }

    let mut s_list: Vec<Vec<f64>> = Vec::new();
    let mut y_list: Vec<Vec<f64>> = Vec::new();
    let mut rho_list: Vec<f64> = Vec::new();

    for iter in 0..max_iters {
        let gnorm = inf_norm(&grad);
        if gnorm < 1e-9 {
            break;
        }

        // Two-loop recursion for the search direction.
        let mut d: Vec<f64> = grad.iter().map(|g| -g).collect();
        let k = s_list.len();
        let mut alphas = vec![0.0f64; k];
        for j in (0..k).rev() {
            let a = rho_list[j] * dot(&s_list[j], &d);
            alphas[j] = a;
            for (di, yi) in d.iter_mut().zip(&y_list[j]) {
                *di -= a * yi;
            }
        }
        if k > 0 {
            let last = k - 1;
            let gamma = dot(&s_list[last], &y_list[last]) / dot(&y_list[last], &y_list[last]);
            for di in d.iter_mut() {
                *di *= gamma;
            }
        }
        for j in 0..k {
            let b = rho_list[j] * dot(&y_list[j], &d);
            for (di, si) in d.iter_mut().zip(&s_list[j]) {
                *di += (alphas[j] - b) * si;
            }
        }

        let mut dg = dot(&d, &grad);
        if dg >= 0.0 {
            // Not a descent direction; fall back to steepest descent.
            d = grad.iter().map(|g| -g).collect();
            dg = -dot(&grad, &grad);
            s_list.clear();
            y_list.clear();
            rho_list.clear();
        }

        // Backtracking line search with the Armijo condition.
        let mut step = if iter == 0 {
            (1.0 / inf_norm(&d).max(1.0)).min(1.0)
        } else {
            1.0
        };
        const C1: f64 = 1e-4;
        let mut accepted = None;
        for _ in 0..50 {
            let xt: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + step * di).collect();
            let (ft, gt) = eval(&xt)?;
            if ft <= fx + C1 * step * dg {
                accepted = Some((xt, ft, gt));
                break;
            }
            step *= 0.5;
        }
        let (xt, ft, gt) = match accepted {
            Some(v) => v,
            None => {
                if gnorm < 1e-5 {
                    break; // at numerical floor near the optimum
                }
                return Err(Error::Train {
                    message: format!(
                        "line search failed at iteration {iter}; recent objective values: {:?}",
                        &trace[trace.len().saturating_sub(5)..]
                    ),
                });
            }
        };

        let s: Vec<f64> = xt.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = gt.iter().zip(&grad).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        if sy > 1e-12 {
            if s_list.len() == memory {
                s_list.remove(0);
                y_list.remove(0);
                rho_list.remove(0);
            }
            rho_list.push(1.0 / sy);
            s_list.push(s);
            y_list.push(y);
        }

        let prev = fx;
        x = xt;
        fx = ft;
        grad = gt;
        trace.push(fx);

        if (prev - fx).abs() <= rel_tolerance * prev.abs().max(1.0) {
            break;
        }
    }
    Ok((x, trace))
}

/// Trains a CRF on the given instances. Atoms occurring fewer than
/// `min_feature_count` times are dropped before optimization. Training is
/// deterministic: alphabets are built in first-seen order and the
/// optimizer starts from zero weights.
pub fn train(
    task: Task,
    label_set: &[&str],
    data: &[TrainInstance],
    cfg: &TrainConfig,
) -> Result<CrfModel> {
    train_with_trace(task, label_set, data, cfg).map(|(m, _)| m)
}

/// Like [`train`] but also returns the accepted-objective trace, which is
/// non-increasing by construction of the line search.
pub fn train_with_trace(
    task: Task,
    label_set: &[&str],
    data: &[TrainInstance],
    cfg: &TrainConfig,
) -> Result<(CrfModel, Vec<f64>)> {
    cfg.validate()?;
    if data.is_empty() {
        return Err(Error::Train {
            message: "no training sequences".into(),
        });
    }
    let labels: Vec<String> = label_set.iter().map(|s| s.to_string()).collect();
    let n_labels = labels.len();
    if n_labels == 0 {
        return Err(Error::Train {
            message: "empty label set".into(),
        });
    }

    // Count atoms, then intern the ones that pass the cutoff in first-seen
    // order so the feature alphabets are reproducible.
    let mut counts: HashMap<&str, usize> = HashMap::new();
    let mut edge_counts: HashMap<&str, usize> = HashMap::new();
    for inst in data {
        for pos in &inst.atoms {
            for atom in pos {
                *counts.entry(atom.as_str()).or_insert(0) += 1;
            }
        }
        for pos in &inst.edge_atoms {
            for atom in pos {
                *edge_counts.entry(atom.as_str()).or_insert(0) += 1;
            }
        }
    }
    let mut features = Alphabet::new();
    let mut edge_features = Alphabet::new();
    for inst in data {
        for pos in &inst.atoms {
            for atom in pos {
                if counts[atom.as_str()] >= cfg.min_feature_count {
                    features.intern(atom);
                }
            }
        }
        for pos in &inst.edge_atoms {
            for atom in pos {
                if edge_counts[atom.as_str()] >= cfg.min_feature_count {
                    edge_features.intern(atom);
                }
            }
        }
    }

    let mut encoded: Vec<EncodedSeq> = Vec::with_capacity(data.len());
    for (si, inst) in data.iter().enumerate() {
        if inst.atoms.len() != inst.labels.len() {
            return Err(Error::Train {
                message: format!(
                    "sequence {si}: {} positions but {} labels",
                    inst.atoms.len(),
                    inst.labels.len()
                ),
            });
        }
        if !inst.edge_atoms.is_empty() && inst.edge_atoms.len() != inst.atoms.len() {
            return Err(Error::Train {
                message: format!("sequence {si}: edge atoms not aligned to positions"),
            });
        }
        let feats: Vec<Vec<u32>> = inst
            .atoms
            .iter()
            .map(|pos| pos.iter().filter_map(|a| features.get(a)).collect())
            .collect();
        let edges: Vec<Vec<u32>> = if inst.edge_atoms.is_empty() {
            vec![]
        } else {
            inst.edge_atoms
                .iter()
                .map(|pos| pos.iter().filter_map(|a| edge_features.get(a)).collect())
                .collect()
        };
        let mut ys = Vec::with_capacity(inst.labels.len());
        for lab in &inst.labels {
            match labels.iter().position(|l| l == lab) {
                Some(y) => ys.push(y),
                None => {
                    return Err(Error::Train {
                        message: format!("sequence {si}: label {lab:?} not in label set"),
                    })
                }
            }
        }
        encoded.push(EncodedSeq {
            feats,
            edges,
            labels: ys,
        });
    }

    let n_features = features.len();
    let n_edge_features = edge_features.len();
    let dim = weights_len(n_features, n_edge_features, n_labels);
    let sigma = cfg.l2_sigma;
    let (weights, trace) = lbfgs(
        |w| objective_and_gradient(w, n_features, n_edge_features, n_labels, &encoded, sigma),
        dim,
        cfg.lbfgs_memory,
        cfg.max_iters,
        cfg.rel_tolerance,
    )?;

    Ok((
        CrfModel {
            task,
            labels,
            features,
            edge_features,
            weights,
            l2_sigma: sigma,
            meta: Default::default(),
        },
        trace,
    ))
}
