//! Top-N high-degree node detection.
//!
//! Every method starts by crawling its seed (one query) and then spends the
//! rest of its budget according to its own rule. Output pools only ever
//! contain nodes whose degrees were revealed by paid-for replies.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::fmt;

use crate::access::{Crawler, NodeAttrs, NodeReply};
use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::sampling::{random_walk, weighted_random_walk, SampleStream, WalkWeights};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidatePool {
    SampledOnly,
    SampledPlusNeighborhood,
}

impl CandidatePool {
    pub fn as_str(self) -> &'static str {
        match self {
            CandidatePool::SampledOnly => "sampled-only",
            CandidatePool::SampledPlusNeighborhood => "sampled-plus-neighborhood",
        }
    }
}

/// How a node's "degree" is scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegreeScore {
    /// Undirected-view degree.
    #[default]
    Undirected,
    /// `d^(I) + d^(O)`.
    InPlusOut,
}

impl DegreeScore {
    fn of(self, a: &NodeAttrs) -> Option<u32> {
        match self {
            DegreeScore::Undirected => a.degree,
            DegreeScore::InPlusOut => a.total_degree(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectionResult {
    /// Sorted by score descending, ties by ascending id.
    pub top: Vec<(NodeId, u32)>,
    pub pool: CandidatePool,
    pub pool_size: usize,
    /// Nodes crawled into S.
    pub sampled: usize,
    pub spent: f64,
}

impl DetectionResult {
    pub fn ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.top.iter().map(|&(v, _)| v)
    }

    /// Fraction of `truth` present in the output.
    pub fn recall(&self, truth: &[NodeId]) -> f64 {
        if truth.is_empty() {
            return 0.0;
        }
        let found: HashSet<NodeId> = self.ids().collect();
        truth.iter().filter(|v| found.contains(v)).count() as f64 / truth.len() as f64
    }

    /// CSV `rank,node_id,degree,found_by`.
    pub fn write_csv<W: std::io::Write>(&self, found_by: &str, mut w: W) -> std::io::Result<()> {
        writeln!(w, "rank,node_id,degree,found_by")?;
        for (i, (v, d)) in self.top.iter().enumerate() {
            writeln!(w, "{},{v},{d},{found_by}", i + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for DetectionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} nodes from a pool of {} ({})", self.top.len(), self.pool_size, self.pool.as_str())
    }
}

/// Top `n` entries of `scores` (score desc, id asc).
pub fn top_n(scores: impl IntoIterator<Item = (NodeId, u32)>, n: usize) -> Vec<(NodeId, u32)> {
    let mut v: Vec<(NodeId, u32)> = scores.into_iter().collect();
    v.sort_unstable_by_key(|&(id, d)| (Reverse(d), id));
    v.truncate(n);
    v
}

/// Collects scores for the pool built from a set of replies.
fn pool_scores(
    replies: &[&NodeReply],
    pool: CandidatePool,
    score: DegreeScore,
) -> Result<HashMap<NodeId, u32>> {
    let mut out = HashMap::new();
    for r in replies {
        let d = score.of(&r.own).expect("own attributes are always known");
        out.insert(r.id(), d);
    }
    if pool == CandidatePool::SampledPlusNeighborhood {
        for r in replies {
            for w in &r.neighbors {
                let d = score.of(&w.attrs).ok_or_else(|| {
                    Error::Capability("neighborhood pool requires neighbor degrees".into())
                })?;
                out.entry(w.id()).or_insert(d);
            }
        }
    }
    Ok(out)
}

/// The `n` highest-degree nodes among those queried by a stream (seeds
/// included), optionally widened to their neighborhoods.
pub fn detect_from_stream(
    stream: &SampleStream,
    n: usize,
    pool: CandidatePool,
    score: DegreeScore,
) -> Result<DetectionResult> {
    if stream.known_replies().is_empty() {
        return Err(Error::EmptyStream);
    }
    let replies: Vec<&NodeReply> = stream.known_replies().iter().collect();
    let scores = pool_scores(&replies, pool, score)?;
    Ok(DetectionResult {
        pool_size: scores.len(),
        top: top_n(scores, n),
        pool,
        sampled: replies.len(),
        spent: 0.0,
    })
}

fn crawl_seed(crawler: &mut Crawler<'_>, seed: NodeId) -> Result<NodeReply> {
    crawler.check_node(seed)?;
    let r = crawler
        .query(seed)
        .ok_or_else(|| Error::InvalidParameter("budget cannot cover the seed query".into()))?;
    if r.degree() == 0 {
        return Err(Error::IsolatedNode(seed));
    }
    Ok(r)
}

/// Random-walk detection: crawl the seed, walk `steps` steps, rank the pool.
pub fn rw_detect(
    crawler: &mut Crawler<'_>,
    seed: NodeId,
    steps: usize,
    n: usize,
    pool: CandidatePool,
    rng_seed: u64,
) -> Result<DetectionResult> {
    crawl_seed(crawler, seed)?;
    let s = random_walk(crawler, seed, steps, rng_seed)?;
    let mut out = detect_from_stream(&s, n, pool, DegreeScore::Undirected)?;
    out.spent = crawler.ledger.spent();
    Ok(out)
}

/// Weighted-random-walk detection. The pool includes the neighborhood when
/// neighbor degrees are visible (always true, since the walk needs them).
pub fn wrw_detect(
    crawler: &mut Crawler<'_>,
    seed: NodeId,
    steps: usize,
    n: usize,
    weights: WalkWeights,
    rng_seed: u64,
) -> Result<DetectionResult> {
    if !crawler.visibility().reveals_neighbor_degrees() {
        return Err(Error::Capability("weighted walk needs neighbor degrees".into()));
    }
    crawl_seed(crawler, seed)?;
    let s = weighted_random_walk(crawler, seed, steps, weights, rng_seed)?;
    let score = if weights.directed { DegreeScore::InPlusOut } else { DegreeScore::Undirected };
    let mut out = detect_from_stream(&s, n, CandidatePool::SampledPlusNeighborhood, score)?;
    out.spent = crawler.ledger.spent();
    Ok(out)
}

/// Lazy max-heap of `(score, node)` with ties to the smaller id. Stale
/// entries are skipped on pop by comparing against the live score.
struct Frontier {
    heap: BinaryHeap<(i64, Reverse<NodeId>)>,
}

impl Frontier {
    fn new() -> Self {
        Frontier { heap: BinaryHeap::new() }
    }

    fn push(&mut self, v: NodeId, score: i64) {
        self.heap.push((score, Reverse(v)));
    }

    fn pop_best(&mut self, live: impl Fn(NodeId) -> Option<i64>) -> Option<NodeId> {
        while let Some((s, Reverse(v))) = self.heap.pop() {
            if live(v) == Some(s) {
                return Some(v);
            }
        }
        None
    }
}

/// Modified expansion sampling: repeatedly crawl the frontier node with the
/// most neighbors outside S, scored as `d_u - d_u^(S)` from free neighbor
/// degrees. `steps` counts additions after the seed; each costs one query.
/// With `directed_scores` the score is `d^(I)+d^(O)` minus the ψ-weighted
/// arcs into S and the output is ranked by `d^(I)+d^(O)`.
pub fn mxs_detect(
    crawler: &mut Crawler<'_>,
    seed: NodeId,
    steps: usize,
    n: usize,
    directed_scores: bool,
) -> Result<DetectionResult> {
    let (replies, _) = mxs_explore(crawler, seed, steps, directed_scores)?;
    let score = if directed_scores { DegreeScore::InPlusOut } else { DegreeScore::Undirected };
    let refs: Vec<&NodeReply> = replies.iter().collect();
    let scores = pool_scores(&refs, CandidatePool::SampledPlusNeighborhood, score)?;
    Ok(DetectionResult {
        pool_size: scores.len(),
        top: top_n(scores, n),
        pool: CandidatePool::SampledPlusNeighborhood,
        sampled: replies.len(),
        spent: crawler.ledger.spent(),
    })
}

/// Runs the MXS expansion and returns the crawled replies in the order
/// they joined S, plus whether the budget ran out.
pub fn mxs_explore(
    crawler: &mut Crawler<'_>,
    seed: NodeId,
    steps: usize,
    directed_scores: bool,
) -> Result<(Vec<NodeReply>, bool)> {
    if !crawler.visibility().reveals_neighbor_degrees() {
        return Err(Error::Capability("MXS requires neighbor degrees".into()));
    }
    let score_of = if directed_scores { DegreeScore::InPlusOut } else { DegreeScore::Undirected };
    let first = crawl_seed(crawler, seed)?;
    let mut in_s: HashSet<NodeId> = HashSet::new();
    // Frontier node → (known degree score, edges into S).
    let mut front: HashMap<NodeId, (i64, i64)> = HashMap::new();
    let mut heap = Frontier::new();
    let mut replies = Vec::with_capacity(steps + 1);

    let absorb = |r: &NodeReply,
                      in_s: &mut HashSet<NodeId>,
                      front: &mut HashMap<NodeId, (i64, i64)>,
                      heap: &mut Frontier|
     -> Result<()> {
        in_s.insert(r.id());
        front.remove(&r.id());
        for w in &r.neighbors {
            if in_s.contains(&w.id()) {
                continue;
            }
            let d = score_of
                .of(&w.attrs)
                .ok_or_else(|| Error::Capability("MXS requires neighbor degrees".into()))?
                as i64;
            let inc = if directed_scores { w.psi() as i64 } else { 1 };
            let e = front.entry(w.id()).or_insert((d, 0));
            e.1 += inc;
            heap.push(w.id(), e.0 - e.1);
        }
        Ok(())
    };

    absorb(&first, &mut in_s, &mut front, &mut heap)?;
    replies.push(first);
    let mut exhausted = false;
    for _ in 0..steps {
        let Some(v) = heap.pop_best(|v| front.get(&v).map(|&(d, s)| d - s)) else {
            break;
        };
        match crawler.query(v) {
            Some(r) => {
                absorb(&r, &mut in_s, &mut front, &mut heap)?;
                replies.push(r);
            }
            None => {
                exhausted = true;
                break;
            }
        }
    }
    Ok((replies, exhausted))
}

/// Expansion sampling: greedily add the frontier node with the most
/// neighbors outside `S ∪ N(S)`. Learning those counts requires crawling
/// every frontier node; with `free_frontier` those crawls cost nothing and
/// only additions to S are charged, as in MXS.
pub fn xs_detect(
    crawler: &mut Crawler<'_>,
    seed: NodeId,
    steps: usize,
    n: usize,
    free_frontier: bool,
) -> Result<DetectionResult> {
    let first = crawl_seed(crawler, seed)?;
    let mut explored: HashSet<NodeId> = HashSet::new();
    let mut in_s: HashSet<NodeId> = HashSet::new();
    // Crawled frontier node → (reply, unexplored neighbor count).
    let mut front: HashMap<NodeId, (NodeReply, i64)> = HashMap::new();
    let mut known_degree: HashMap<NodeId, u32> = HashMap::new();
    let mut heap = Frontier::new();
    let mut exhausted = false;

    explored.insert(first.id());
    known_degree.insert(first.id(), first.degree());
    let mut pending: Vec<NodeReply> = vec![first];

    let mut added = 0usize;
    loop {
        // Move every pending node into S and crawl its new frontier.
        for r in pending.drain(..) {
            in_s.insert(r.id());
            front.remove(&r.id());
            for w in &r.neighbors {
                let w = w.id();
                if explored.contains(&w) || exhausted {
                    continue;
                }
                let reply = if free_frontier {
                    crawler.reply(w)
                } else {
                    match crawler.query(w) {
                        Some(rep) => rep,
                        None => {
                            exhausted = true;
                            continue;
                        }
                    }
                };
                explored.insert(w);
                known_degree.insert(w, reply.degree());
                let mut unexplored = 0i64;
                for x in &reply.neighbors {
                    let x = x.id();
                    if !explored.contains(&x) {
                        unexplored += 1;
                    } else if let Some(e) = front.get_mut(&x) {
                        e.1 -= 1;
                        heap.push(x, e.1);
                    }
                }
                heap.push(w, unexplored);
                front.insert(w, (reply, unexplored));
            }
        }
        if added == steps || exhausted {
            break;
        }
        let Some(v) = heap.pop_best(|v| front.get(&v).map(|e| e.1)) else {
            break;
        };
        if free_frontier && !crawler.charge_query(v) {
            break;
        }
        let (reply, _) = front.remove(&v).expect("popped node is on the frontier");
        pending.push(reply);
        added += 1;
    }
    let pool_size = known_degree.len();
    Ok(DetectionResult {
        top: top_n(known_degree, n),
        pool: CandidatePool::SampledPlusNeighborhood,
        pool_size,
        sampled: in_s.len() + pending.len(),
        spent: crawler.ledger.spent(),
    })
}

/// Exact top-`n` node ids by degree (ties by id), for recall.
pub fn exact_top_n(g: &crate::graph::Graph, n: usize, score: DegreeScore) -> Vec<NodeId> {
    let scores = (0..g.node_count() as NodeId).map(|v| {
        let d = match score {
            DegreeScore::Undirected => g.degree(v),
            DegreeScore::InPlusOut => g.in_degree(v) + g.out_degree(v),
        };
        (v, d as u32)
    });
    top_n(scores, n).into_iter().map(|(v, _)| v).collect()
}
