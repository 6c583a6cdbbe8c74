//! Short-path discovery on the subgraph seen by two budgeted walkers.
//!
//! A walker run from each endpoint yields a set of crawled nodes S. Every
//! edge incident to S is visible from the replies, so the observed graph is
//! `G* = (S ∪ N(S), {edges with an endpoint in S})` and a BFS on it gives a
//! path no shorter than the true distance.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::access::{CostLedger, Crawler, NodeReply, Visibility};
use crate::detection::mxs_explore;
use crate::error::{Error, Result};
use crate::graph::{Graph, LabelTable, NodeId};
use crate::sampling::{random_walk, weighted_random_walk, SampleStream, WalkWeights};
use crate::seed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    Rw,
    Wrw { beta: f64 },
    Mxs,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Rw => "rw",
            Strategy::Wrw { .. } => "wrw",
            Strategy::Mxs => "mxs",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;
    /// `rw`, `mxs`, `wrw` (β = 1) or `wrw:<beta>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rw" => Ok(Strategy::Rw),
            "mxs" => Ok(Strategy::Mxs),
            "wrw" => Ok(Strategy::Wrw { beta: 1.0 }),
            _ => match s.strip_prefix("wrw:").map(str::parse::<f64>) {
                Some(Ok(beta)) => Ok(Strategy::Wrw { beta }),
                _ => Err(Error::Config(format!("unknown strategy {s:?}"))),
            },
        }
    }
}

/// Observed subgraph G*.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ObservedGraph {
    /// Crawled nodes.
    pub sampled: BTreeSet<NodeId>,
    adj: HashMap<NodeId, Vec<NodeId>>,
    edge_count: usize,
}

impl ObservedGraph {
    pub fn from_replies<'a>(replies: impl IntoIterator<Item = &'a NodeReply>) -> Self {
        let mut g = ObservedGraph::default();
        for r in replies {
            g.absorb(r);
        }
        g
    }

    fn absorb(&mut self, r: &NodeReply) {
        let u = r.id();
        if !self.sampled.insert(u) {
            return;
        }
        self.adj.entry(u).or_default();
        // An edge to an already crawled node was recorded from its side.
        for w in &r.neighbors {
            let w = w.id();
            if self.sampled.contains(&w) {
                continue;
            }
            self.adj.entry(w).or_default().push(u);
            self.adj.get_mut(&u).expect("inserted above").push(w);
            self.edge_count += 1;
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    /// Edges as `(min, max)` pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        let mut e: Vec<(NodeId, NodeId)> = self
            .adj
            .iter()
            .flat_map(|(&u, n)| n.iter().filter(move |&&w| u < w).map(move |&w| (u, w)))
            .collect();
        e.sort_unstable();
        e.into_iter()
    }

    /// Shortest `u → v` path; neighbors are scanned in ascending id order.
    pub fn shortest_path(&self, u: NodeId, v: NodeId) -> Option<Vec<NodeId>> {
        if !self.contains(u) || !self.contains(v) {
            return None;
        }
        let mut parent: HashMap<NodeId, NodeId> = HashMap::from([(u, u)]);
        let mut queue = VecDeque::from([u]);
        let mut next = Vec::new();
        while let Some(x) = queue.pop_front() {
            if x == v {
                let mut path = vec![v];
                let mut cur = v;
                while cur != u {
                    cur = parent[&cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            next.clear();
            next.extend(self.adj[&x].iter().copied().filter(|y| !parent.contains_key(y)));
            next.sort_unstable();
            for &y in &next {
                parent.insert(y, x);
                queue.push_back(y);
            }
        }
        None
    }
}

/// G* from the crawled nodes of several streams (seeds included).
pub fn observed_graph(streams: &[&SampleStream]) -> Result<ObservedGraph> {
    if streams.is_empty() {
        return Err(Error::EmptyStream);
    }
    Ok(ObservedGraph::from_replies(streams.iter().flat_map(|s| s.known_replies())))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathResult {
    pub u: NodeId,
    pub v: NodeId,
    pub path: Option<Vec<NodeId>>,
    /// Exact distance, filled in by the harness.
    pub true_d: Option<usize>,
    /// Edges of G*, for coverage comparisons.
    pub observed_edges: usize,
}

impl PathResult {
    pub fn found(&self) -> bool {
        self.path.is_some()
    }

    /// Length of the discovered path; `None` stands for ∞.
    pub fn d_star(&self) -> Option<usize> {
        self.path.as_ref().map(|p| p.len() - 1)
    }
}

/// Crawled nodes of one walker started at `start`.
fn walk_from(
    g: &Graph,
    labels: &LabelTable,
    visibility: Visibility,
    start: NodeId,
    steps: usize,
    strategy: Strategy,
    rng_seed: u64,
) -> Result<Vec<NodeReply>> {
    let mut c = Crawler::new(g, labels, visibility, CostLedger::unlimited())?;
    Ok(match strategy {
        Strategy::Rw => random_walk(&mut c, start, steps, rng_seed)?.known_replies().to_vec(),
        Strategy::Wrw { beta } => {
            let w = WalkWeights { beta, directed: false };
            weighted_random_walk(&mut c, start, steps, w, rng_seed)?.known_replies().to_vec()
        }
        Strategy::Mxs => mxs_explore(&mut c, start, steps, false)?.0,
    })
}

/// Runs `strategy` for `steps` from `u` and from `v` independently, merges
/// the crawled sets and searches G* for a `u → v` path.
pub fn discover_short_path(
    g: &Graph,
    labels: &LabelTable,
    visibility: Visibility,
    u: NodeId,
    v: NodeId,
    steps: usize,
    strategy: Strategy,
    rng_seed: u64,
) -> Result<PathResult> {
    if u == v {
        return Err(Error::InvalidParameter("path endpoints must differ".into()));
    }
    for x in [u, v] {
        if x as usize >= g.node_count() {
            return Err(Error::UnknownNode(x));
        }
        if g.degree(x) == 0 {
            return Err(Error::IsolatedNode(x));
        }
    }
    let a = walk_from(g, labels, visibility, u, steps, strategy, seed::derive(rng_seed, 0))?;
    let b = walk_from(g, labels, visibility, v, steps, strategy, seed::derive(rng_seed, 1))?;
    let obs = ObservedGraph::from_replies(a.iter().chain(&b));
    Ok(PathResult {
        u,
        v,
        path: obs.shortest_path(u, v),
        true_d: None,
        observed_edges: obs.edge_count(),
    })
}

/// BFS distances from `src` on the undirected view (`u32::MAX` when
/// unreachable).
pub fn bfs_distances(g: &Graph, src: NodeId) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.node_count()];
    let mut queue = VecDeque::from([src]);
    dist[src as usize] = 0;
    while let Some(x) = queue.pop_front() {
        let d = dist[x as usize] + 1;
        for &y in g.neighbors(x) {
            if dist[y as usize] == u32::MAX {
                dist[y as usize] = d;
                queue.push_back(y);
            }
        }
    }
    dist
}

pub fn exact_distance(g: &Graph, u: NodeId, v: NodeId) -> Option<usize> {
    let d = bfs_distances(g, u)[v as usize];
    (d != u32::MAX).then_some(d as usize)
}

/// Whether consecutive nodes of `path` are adjacent in `g`.
pub fn is_graph_path(g: &Graph, path: &[NodeId]) -> bool {
    !path.is_empty() && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// CSV header for [`write_path_row`].
pub const PATHS_CSV_HEADER: &str = "u,v,true_d,d_star,found,strategy,B";

pub fn write_path_row<W: std::io::Write>(
    r: &PathResult,
    strategy: Strategy,
    steps: usize,
    mut w: W,
) -> std::io::Result<()> {
    let opt = |x: Option<usize>| x.map_or_else(|| "inf".to_string(), |d| d.to_string());
    writeln!(
        w,
        "{},{},{},{},{},{},{}",
        r.u,
        r.v,
        opt(r.true_d),
        opt(r.d_star()),
        r.found(),
        strategy,
        steps
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star() -> Graph {
        Graph::from_edges(5, false, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap().0
    }

    fn reply(g: &Graph, v: NodeId) -> NodeReply {
        let l = LabelTable::from_degrees(g);
        Crawler::new(g, &l, Visibility::SelfOnly, CostLedger::unlimited()).unwrap().reply(v)
    }

    #[test]
    fn hub_sees_whole_star() {
        let g = star();
        let o = ObservedGraph::from_replies([&reply(&g, 0)]);
        assert_eq!(o.node_count(), 5);
        assert_eq!(o.edge_count(), 4);
    }

    #[test]
    fn leaf_sees_one_edge() {
        let g = star();
        let o = ObservedGraph::from_replies([&reply(&g, 3)]);
        assert_eq!(o.node_count(), 2);
        assert_eq!(o.edges().collect::<Vec<_>>(), vec![(0, 3)]);
    }

    #[test]
    fn other_triangle_is_unseen() {
        let (g, _) = Graph::from_edges(6, false, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let o = ObservedGraph::from_replies([&reply(&g, 0), &reply(&g, 1)]);
        assert!((3..6).all(|v| !o.contains(v)));
        assert_eq!(o.edge_count(), 3);
    }

    #[test]
    fn p3_walkers_meet_in_the_middle() {
        let (g, _) = Graph::from_edges(3, false, [(0, 1), (1, 2)]).unwrap();
        let l = LabelTable::from_degrees(&g);
        let r = discover_short_path(&g, &l, Visibility::SelfOnly, 0, 2, 1, Strategy::Rw, 4).unwrap();
        assert_eq!(r.path, Some(vec![0, 1, 2]));
        assert_eq!(r.d_star(), Some(2));
    }

    #[test]
    fn adjacent_pair_is_distance_one() {
        let (g, _) = Graph::from_edges(5, false, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let l = LabelTable::from_degrees(&g);
        for s in [Strategy::Rw, Strategy::Wrw { beta: 1.0 }, Strategy::Mxs] {
            let r = discover_short_path(&g, &l, Visibility::NbrDegrees, 2, 3, 3, s, 9).unwrap();
            assert_eq!(r.d_star(), Some(1));
        }
    }

    #[test]
    fn bfs_prefers_smaller_ids() {
        // Two shortest paths 0-1-3 and 0-2-3.
        let (g, _) = Graph::from_edges(4, false, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let o = ObservedGraph::from_replies((0..4).map(|v| reply(&g, v)).collect::<Vec<_>>().iter());
        assert_eq!(o.shortest_path(0, 3), Some(vec![0, 1, 3]));
    }

    #[test]
    fn strategy_parsing() {
        assert_eq!("wrw:0.5".parse::<Strategy>().unwrap(), Strategy::Wrw { beta: 0.5 });
        assert!("dfs".parse::<Strategy>().is_err());
    }
}
