//! Test-side oracles. Nothing here calls into the estimators or the
//! evaluation module; every reference value is recomputed from the raw
//! adjacency.

#![allow(dead_code)]

use std::collections::BTreeMap;

use netsample::graph::Graph;
use netsample::{LabelTable, NodeId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn complete(n: usize) -> Graph {
    let edges = (0..n as NodeId).flat_map(|u| (u + 1..n as NodeId).map(move |v| (u, v)));
    Graph::from_edges(n, false, edges).unwrap().0
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, false, (1..n as NodeId).map(|i| (i - 1, i))).unwrap().0
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, false, (1..=leaves as NodeId).map(|i| (0, i))).unwrap().0
}

pub fn cycle(n: usize) -> Graph {
    Graph::from_edges(n, false, (0..n as NodeId).map(|i| (i, (i + 1) % n as NodeId))).unwrap().0
}

pub fn named(labels: &[u32], names: &[&str]) -> LabelTable {
    LabelTable::new(labels.to_vec(), names.iter().map(|s| s.to_string()).collect()).unwrap()
}

pub fn uniform_labels(n: usize) -> LabelTable {
    named(&vec![0; n], &["x"])
}

/// Random connected non-bipartite graph: a random spanning tree, one
/// triangle through node 0, and `extra` random chords.
pub fn random_connected(n: usize, extra: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n as NodeId {
        edges.push((rng.random_range(0..v), v));
    }
    edges.push((0, 1));
    edges.push((1, 2));
    edges.push((0, 2));
    for _ in 0..extra {
        let u = rng.random_range(0..n as NodeId);
        let v = rng.random_range(0..n as NodeId);
        edges.push((u, v));
    }
    Graph::from_edges(n, false, edges).unwrap().0
}

/// Random simple digraph with some reciprocal arcs.
pub fn random_digraph(n: usize, arcs: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut list = Vec::new();
    for _ in 0..arcs {
        let u = rng.random_range(0..n as NodeId);
        let v = rng.random_range(0..n as NodeId);
        list.push((u, v));
        if rng.random::<f64>() < 0.3 {
            list.push((v, u));
        }
    }
    Graph::from_edges(n, true, list).unwrap().0
}

/// Exact label fractions by counting.
pub fn exact_density(labels: &LabelTable) -> Vec<f64> {
    let mut v = vec![0.0; labels.label_count()];
    for &l in labels.labels() {
        v[l as usize] += 1.0;
    }
    let n = labels.node_count() as f64;
    v.iter().map(|c| c / n).collect()
}

/// Stationary distribution of the simple random walk by power iteration on
/// the lazy chain `(I + P)/2`, which has the same fixed point.
pub fn power_iteration(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut x = vec![1.0 / n as f64; n];
    for _ in 0..20_000 {
        let mut y = vec![0.0; n];
        for u in 0..n {
            let nb = g.neighbors(u as NodeId);
            y[u] += 0.5 * x[u];
            for &w in nb {
                y[w as usize] += 0.5 * x[u] / nb.len() as f64;
            }
        }
        let diff: f64 = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).sum();
        x = y;
        if diff < 1e-15 {
            break;
        }
    }
    x
}

pub fn tv(a: &[f64], b: &[f64]) -> f64 {
    0.5 * a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

/// Exact edge label fractions by scanning adjacency directly.
pub fn exact_degree_pairs(g: &Graph) -> BTreeMap<(u32, u32), f64> {
    let mut m = BTreeMap::new();
    let mut total = 0.0;
    for u in 0..g.node_count() as NodeId {
        for &v in g.neighbors(u) {
            if u < v {
                let (a, b) = (g.degree(u) as u32, g.degree(v) as u32);
                *m.entry((a.min(b), a.max(b))).or_insert(0.0) += 1.0;
                total += 1.0;
            }
        }
    }
    m.values_mut().for_each(|x| *x /= total);
    m
}

/// Exact directed label-pair fractions over arcs.
pub fn exact_arc_label_pairs(g: &Graph, labels: &LabelTable) -> BTreeMap<(u32, u32), f64> {
    let mut m = BTreeMap::new();
    let mut total = 0.0;
    for u in 0..g.node_count() as NodeId {
        for &v in g.out_neighbors(u) {
            *m.entry((labels.label(u), labels.label(v))).or_insert(0.0) += 1.0;
            total += 1.0;
        }
    }
    m.values_mut().for_each(|x| *x /= total);
    m
}

/// Discrete power-law tail exponent, Clauset-Shalizi-Newman approximation.
pub fn tail_exponent_mle(degrees: &[usize], x_min: usize) -> f64 {
    let tail: Vec<f64> = degrees.iter().filter(|&&d| d >= x_min).map(|&d| d as f64).collect();
    let s: f64 = tail.iter().map(|d| (d / (x_min as f64 - 0.5)).ln()).sum();
    1.0 + tail.len() as f64 / s
}

pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (v / n).sqrt())
}

pub fn assert_close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
}
