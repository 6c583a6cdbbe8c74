//! Evaluation graphs.
//!
//! The public Soc-Epinions and Soc-Slashdot edge lists are used when their
//! paths are given through environment variables. Otherwise a seeded
//! stand-in with the same LCC size, edge count and reciprocity is generated
//! from a directed configuration model, so evaluations run offline.

use std::path::PathBuf;

use log::info;

use crate::error::Result;
use crate::graph::{configuration_pairs, load_edge_list, power_law_degrees, Graph, NodeId};
use crate::seed;
use rand::Rng;

/// Parameters of a synthetic stand-in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandIn {
    pub name: &'static str,
    /// Nodes generated before LCC extraction.
    pub nodes: usize,
    pub exponent: f64,
    pub min_degree: usize,
    /// Degree cap applied to the sampled sequence.
    pub max_degree: usize,
    /// Fraction of undirected edges carrying arcs in both directions.
    pub reciprocity: f64,
    pub seed: u64,
}

/// Sized after the real LCC (75,877 nodes, 405,739 edges, none reciprocal).
pub const EPINIONS: StandIn = StandIn {
    name: "soc-epinions-standin",
    nodes: 75_877,
    exponent: 2.465,
    min_degree: 4,
    max_degree: 3044,
    reciprocity: 0.0,
    seed: 0x5eed_e91,
};

/// Sized after the real LCC (77,360 nodes, 469,180 edges, 828,161 arcs).
pub const SLASHDOT: StandIn = StandIn {
    name: "soc-slashdot-standin",
    nodes: 77_360,
    exponent: 2.365,
    min_degree: 4,
    max_degree: 2539,
    reciprocity: 0.765,
    seed: 0x5eed_51a,
};

pub const EPINIONS_ENV: &str = "NETSAMPLE_EPINIONS";
pub const SLASHDOT_ENV: &str = "NETSAMPLE_SLASHDOT";

#[derive(Debug, Clone)]
pub struct Dataset {
    pub name: String,
    /// LCC of the source graph.
    pub graph: Graph,
    /// File path or `"synthetic"`.
    pub source: String,
}

/// Directed stand-in: power-law configuration model, erased to a simple
/// undirected graph, each edge made reciprocal with probability
/// `reciprocity` and otherwise oriented uniformly; LCC returned.
pub fn generate_standin(spec: &StandIn) -> Result<Graph> {
    let mut rng = seed::rng(spec.seed);
    let mut degrees = power_law_degrees(spec.nodes, spec.exponent, spec.min_degree, &mut rng);
    for d in &mut degrees {
        *d = (*d).min(spec.max_degree);
    }
    let mut pairs: Vec<(NodeId, NodeId)> = configuration_pairs(&degrees, &mut rng)
        .into_iter()
        .filter(|(u, v)| u != v)
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let mut arcs = Vec::with_capacity(pairs.len() * 2);
    for (u, v) in pairs {
        if rng.random::<f64>() < spec.reciprocity {
            arcs.push((u, v));
            arcs.push((v, u));
        } else if rng.random::<bool>() {
            arcs.push((u, v));
        } else {
            arcs.push((v, u));
        }
    }
    let (g, _) = Graph::from_edges(spec.nodes, true, arcs)?;
    Ok(g.largest_connected_component())
}

/// The real graph when `env` names an edge list, else the stand-in.
pub fn load_or_generate(env: &str, spec: &StandIn) -> Result<Dataset> {
    if let Some(path) = std::env::var_os(env).map(PathBuf::from) {
        let loaded = load_edge_list(&path, true)?;
        let graph = loaded.graph.largest_connected_component();
        info!("{env}: LCC {} nodes, {} edges", graph.node_count(), graph.edge_count());
        return Ok(Dataset { name: spec.name.trim_end_matches("-standin").into(), graph, source: path.display().to_string() });
    }
    let graph = generate_standin(spec)?;
    info!("{}: LCC {} nodes, {} edges, {} arcs", spec.name, graph.node_count(), graph.edge_count(), graph.directed_edge_count());
    Ok(Dataset { name: spec.name.into(), graph, source: "synthetic".into() })
}

pub fn epinions() -> Result<Dataset> {
    load_or_generate(EPINIONS_ENV, &EPINIONS)
}

pub fn slashdot() -> Result<Dataset> {
    load_or_generate(SLASHDOT_ENV, &SLASHDOT)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_standin_is_connected_and_directed() {
        let spec = StandIn { nodes: 2000, seed: 3, ..SLASHDOT };
        let g = generate_standin(&spec).unwrap();
        assert!(g.is_directed());
        assert!(g.is_connected());
        let recip = g.directed_edge_count() - g.edge_count();
        let frac = recip as f64 / g.edge_count() as f64;
        assert!((frac - 0.765).abs() < 0.05, "reciprocity {frac}");
    }
}
