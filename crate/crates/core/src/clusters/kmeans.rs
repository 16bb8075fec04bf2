//! Seeded K-Means over an embedding table, Euclidean distance throughout.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::rng::Rng;

use super::EmbeddingTable;

/// A fitted clustering: `k` centroids and a word -> cluster assignment.
#[derive(Debug, Clone)]
pub struct ClusterModel {
    pub k: usize,
    pub dimension: usize,
    /// Row-major `k x dimension` centroid matrix.
    pub centroids: Vec<f64>,
    assignment: HashMap<String, u32>,
}

impl ClusterModel {
    pub fn assignment(&self, word: &str) -> Option<u32> {
        self.assignment.get(word).copied()
    }

    pub fn centroid(&self, c: usize) -> &[f64] {
        &self.centroids[c * self.dimension..(c + 1) * self.dimension]
    }

    /// Assignments as (word, cluster) pairs in the table's word order.
    pub fn assignments_ordered<'a>(&'a self, table: &'a EmbeddingTable) -> Vec<(&'a str, u32)> {
        table
            .words()
            .iter()
            .filter_map(|w| self.assignment(w).map(|c| (w.as_str(), c)))
            .collect()
    }

    pub fn from_pairs(k: usize, pairs: impl IntoIterator<Item = (String, u32)>) -> Self {
        ClusterModel {
            k,
            dimension: 0,
            centroids: vec![],
            assignment: pairs.into_iter().collect(),
        }
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Runs K-Means and returns the model plus the inertia measured after each
/// assignment step; that sequence is non-increasing.
pub fn kmeans_with_trace(
    table: &EmbeddingTable,
    k: usize,
    seed: u64,
    max_iters: usize,
) -> Result<(ClusterModel, Vec<f64>)> {
    let n = table.len();
    if k == 0 || k > n {
        return Err(Error::InvalidConfig(format!(
            "k must be in [1, {n}], got {k}"
        )));
    }
    let d = table.dimension;
    let mut rng = Rng::new(seed);

    // Distance-weighted seeding: the first centroid uniform, each next one
    // drawn proportionally to squared distance from the chosen set.
    let mut centroids: Vec<f64> = Vec::with_capacity(k * d);
    let first = rng.gen_range(n);
    centroids.extend_from_slice(table.vector_at(first));
    let mut min_d2: Vec<f64> = (0..n)
        .map(|i| sq_dist(table.vector_at(i), &centroids[0..d]))
        .collect();
    for c in 1..k {
        let total: f64 = min_d2.iter().sum();
        let pick = if total > 0.0 {
            rng.weighted_index(&min_d2)
        } else {
            rng.gen_range(n)
        };
        centroids.extend_from_slice(table.vector_at(pick));
        let new = &centroids[c * d..(c + 1) * d];
        for i in 0..n {
            let dist = sq_dist(table.vector_at(i), new);
            if dist < min_d2[i] {
                min_d2[i] = dist;
            }
        }
    }

    let mut assign = vec![0usize; n];
    let mut inertia_trace = Vec::new();
    for _iter in 0..max_iters.max(1) {
        // Assignment step; ties to the lower cluster index.
        let mut changed = false;
        let mut inertia = 0.0;
        for i in 0..n {
            let v = table.vector_at(i);
            let mut best = 0usize;
            let mut best_d = f64::INFINITY;
            for c in 0..k {
                let dist = sq_dist(v, &centroids[c * d..(c + 1) * d]);
                if dist < best_d {
                    best_d = dist;
                    best = c;
                }
            }
            if assign[i] != best {
                assign[i] = best;
                changed = true;
            }
            inertia += best_d;
        }
        inertia_trace.push(inertia);
        if !changed && inertia_trace.len() > 1 {
            break;
        }

        // Update step: centroids move to their members' mean.
        let mut sums = vec![0.0f64; k * d];
        let mut counts = vec![0usize; k];
        for i in 0..n {
            let c = assign[i];
            counts[c] += 1;
            for (j, &x) in table.vector_at(i).iter().enumerate() {
                sums[c * d + j] += x;
            }
        }
        for c in 0..k {
            if counts[c] == 0 {
                continue;
            }
            for j in 0..d {
                centroids[c * d + j] = sums[c * d + j] / counts[c] as f64;
            }
        }
        // Empty clusters are re-seeded with the point farthest from its
        // current centroid.
        for c in 0..k {
            if counts[c] > 0 {
                continue;
            }
            let mut far = 0usize;
            let mut far_d = -1.0;
            for i in 0..n {
                let dist = sq_dist(
                    table.vector_at(i),
                    &centroids[assign[i] * d..(assign[i] + 1) * d],
                );
                if dist > far_d {
                    far_d = dist;
                    far = i;
                }
            }
            centroids[c * d..(c + 1) * d].copy_from_slice(table.vector_at(far));
        }
    }

    let assignment: HashMap<String, u32> = table
        .words()
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), assign[i] as u32))
        .collect();
    Ok((
        ClusterModel {
            k,
            dimension: d,
            centroids,
            assignment,
        },
        inertia_trace,
    ))
}

/// K-Means entry point; see [`kmeans_with_trace`] for diagnostics.
pub fn kmeans_cluster(
    table: &EmbeddingTable,
    k: usize,
    seed: u64,
    max_iters: usize,
) -> Result<ClusterModel> {
    kmeans_with_trace(table, k, seed, max_iters).map(|(m, _)| m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morpho::Scheme;

    fn table_of(points: &[(&str, Vec<f64>)]) -> EmbeddingTable {
        let d = points[0].1.len();
        let mut t = EmbeddingTable::new(d, Scheme::Lemma);
        for (w, v) in points {
            t.insert(w.to_string(), v.clone());
        }
        t
    }

    #[test]
    fn k1_centroid_is_the_mean() {
        let t = table_of(&[
            ("a", vec![1.0, 2.0]),
            ("b", vec![3.0, 4.0]),
            ("c", vec![5.0, 0.0]),
        ]);
        let (m, _) = kmeans_with_trace(&t, 1, 9, 100).unwrap();
        assert!((m.centroid(0)[0] - 3.0).abs() < 1e-9);
        assert!((m.centroid(0)[1] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn two_blobs_cluster_exactly() {
        let t = table_of(&[
            ("a1", vec![0.0, 0.1]),
            ("a2", vec![0.1, 0.0]),
            ("a3", vec![-0.1, 0.05]),
            ("a4", vec![0.02, -0.08]),
            ("b1", vec![10.0, 10.1]),
            ("b2", vec![10.1, 9.9]),
            ("b3", vec![9.9, 10.05]),
            ("b4", vec![10.02, 9.92]),
        ]);
        for seed in 0..5 {
            let m = kmeans_cluster(&t, 2, seed, 100).unwrap();
            let ca = m.assignment("a1").unwrap();
            let cb = m.assignment("b1").unwrap();
            assert_ne!(ca, cb);
            for w in ["a2", "a3", "a4"] {
                assert_eq!(m.assignment(w).unwrap(), ca);
            }
            for w in ["b2", "b3", "b4"] {
                assert_eq!(m.assignment(w).unwrap(), cb);
            }
        }
    }

    #[test]
    fn k_equals_vocab_gives_zero_inertia() {
        let t = table_of(&[
            ("a", vec![0.0, 0.0]),
            ("b", vec![1.0, 0.0]),
            ("c", vec![0.0, 1.0]),
            ("d", vec![1.0, 1.0]),
        ]);
        let (m, trace) = kmeans_with_trace(&t, 4, 3, 100).unwrap();
        assert!(trace.last().unwrap() < &1e-18);
        let mut ids: Vec<u32> = ["a", "b", "c", "d"]
            .iter()
            .map(|w| m.assignment(w).unwrap())
            .collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), 4);
    }

    #[test]
    fn inertia_is_non_increasing() {
        let mut rng = crate::rng::Rng::new(77);
        for trial in 0..20 {
            let n = 12 + rng.gen_range(20);
            let d = 2 + rng.gen_range(3);
            let mut t = EmbeddingTable::new(d, Scheme::Lemma);
            for i in 0..n {
                t.insert(
                    format!("w{i}"),
                    (0..d).map(|_| rng.next_f64() * 10.0).collect(),
                );
            }
            let k = 1 + rng.gen_range(n.min(6));
            let (_, trace) = kmeans_with_trace(&t, k, trial, 50).unwrap();
            for w in trace.windows(2) {
                assert!(w[1] <= w[0] + 1e-9, "inertia rose: {} -> {}", w[0], w[1]);
            }
        }
    }

    #[test]
    fn k_larger_than_vocab_errors() {
        let t = table_of(&[("a", vec![0.0]), ("b", vec![1.0])]);
        assert!(kmeans_cluster(&t, 3, 0, 10).is_err());
    }

    #[test]
    fn determinism_per_seed() {
        let t = table_of(&[
            ("a", vec![0.0, 0.0]),
            ("b", vec![1.0, 0.5]),
            ("c", vec![5.0, 5.0]),
            ("d", vec![5.5, 4.5]),
            ("e", vec![2.5, 2.5]),
        ]);
        let m1 = kmeans_cluster(&t, 2, 13, 100).unwrap();
        let m2 = kmeans_cluster(&t, 2, 13, 100).unwrap();
        assert_eq!(m1.centroids, m2.centroids);
        for w in ["a", "b", "c", "d", "e"] {
            assert_eq!(m1.assignment(w), m2.assignment(w));
        }
    }

    #[test]
    fn relabeling_is_stable_under_vocabulary_permutation() {
        // same points inserted in a different order cluster identically up
        // to a relabeling canonicalized by the smallest member word
        let pts = [
            ("a", vec![0.0, 0.0]),
            ("b", vec![0.2, 0.1]),
            ("c", vec![8.0, 8.0]),
            ("d", vec![8.2, 7.9]),
        ];
        let t1 = table_of(&pts);
        let rev: Vec<(&str, Vec<f64>)> = pts.iter().rev().cloned().collect();
        let t2 = table_of(&rev);
        let m1 = kmeans_cluster(&t1, 2, 4, 100).unwrap();
        let m2 = kmeans_cluster(&t2, 2, 4, 100).unwrap();

        let canonical = |m: &ClusterModel| -> Vec<Vec<&str>> {
            let mut groups: Vec<Vec<&str>> = vec![Vec::new(); 2];
            for w in ["a", "b", "c", "d"] {
                groups[m.assignment(w).unwrap() as usize].push(w);
            }
            groups.iter_mut().for_each(|g| g.sort());
            groups.sort();
            groups
        };
        assert_eq!(canonical(&m1), canonical(&m2));
    }
}
