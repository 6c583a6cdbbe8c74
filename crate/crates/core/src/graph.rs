//! Immutable graphs, node label tables and edge labelers.
//!
//! A [`Graph`] always carries an undirected view (used by every walker) and,
//! when built as directed, separate out/in adjacency. All neighbor lists are
//! sorted so membership tests are binary searches and every traversal is
//! deterministic.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::sync::Arc;

use log::info;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::access::NodeAttrs;
use crate::error::{Error, Result};
use crate::seed;

pub type NodeId = u32;

/// Compressed sparse rows.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl Csr {
    /// Build from per-node lists; each list is sorted and deduplicated.
    fn from_lists(lists: Vec<Vec<NodeId>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        let total = lists.iter().map(Vec::len).sum();
        let mut targets = Vec::with_capacity(total);
        offsets.push(0);
        for mut row in lists {
            row.sort_unstable();
            row.dedup();
            targets.extend_from_slice(&row);
            offsets.push(targets.len());
        }
        Csr { offsets, targets }
    }

    #[inline]
    fn row(&self, v: NodeId) -> &[NodeId] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    #[inline]
    fn contains(&self, u: NodeId, v: NodeId) -> bool {
        self.row(u).binary_search(&v).is_ok()
    }
}

/// Counts of input records dropped while building a simple graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildStats {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl BuildStats {
    pub fn dropped(&self) -> usize {
        self.self_loops + self.duplicates
    }
}

#[derive(Debug, Clone)]
pub struct Graph {
    directed: bool,
    und: Csr,
    /// Out/in adjacency; `None` for undirected graphs, where both equal `und`.
    arcs: Option<(Csr, Csr)>,
    edge_count: usize,
    directed_edge_count: usize,
    original_ids: Vec<u64>,
}

impl Graph {
    /// Build a simple graph on `n` nodes. Self-loops and duplicate edges are
    /// dropped and counted; for undirected graphs `(u,v)` and `(v,u)` are
    /// duplicates of each other.
    pub fn from_edges<I>(n: usize, directed: bool, edges: I) -> Result<(Graph, BuildStats)>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut stats = BuildStats::default();
        let mut out: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        let mut raw = 0usize;
        for (u, v) in edges {
            if u as usize >= n {
                return Err(Error::UnknownNode(u));
            }
            if v as usize >= n {
                return Err(Error::UnknownNode(v));
            }
            if u == v {
                stats.self_loops += 1;
                continue;
            }
            raw += 1;
            if directed {
                out[u as usize].push(v);
            } else {
                let (a, b) = if u < v { (u, v) } else { (v, u) };
                out[a as usize].push(b);
            }
        }
        let out = Csr::from_lists(out);
        stats.duplicates = raw - out.targets.len();

        let mut und_lists: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        let mut in_lists: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for u in 0..n as NodeId {
            for &v in out.row(u) {
                und_lists[u as usize].push(v);
                und_lists[v as usize].push(u);
                in_lists[v as usize].push(u);
            }
        }
        let und = Csr::from_lists(und_lists);
        let edge_count = und.targets.len() / 2;
        let (arcs, directed_edge_count) = if directed {
            let count = out.targets.len();
            (Some((out, Csr::from_lists(in_lists))), count)
        } else {
            (None, 2 * edge_count)
        };
        Ok((
            Graph {
                directed,
                und,
                arcs,
                edge_count,
                directed_edge_count,
                original_ids: (0..n as u64).collect(),
            },
            stats,
        ))
    }

    pub fn node_count(&self) -> usize {
        self.und.offsets.len() - 1
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// |E| of the undirected view.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// |E_d|. For undirected graphs each edge counts in both directions.
    pub fn directed_edge_count(&self) -> usize {
        self.directed_edge_count
    }

    /// Neighbors in the undirected view, sorted.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        self.und.row(v)
    }

    #[inline]
    pub fn out_neighbors(&self, v: NodeId) -> &[NodeId] {
        match &self.arcs {
            Some((out, _)) => out.row(v),
            None => self.und.row(v),
        }
    }

    #[inline]
    pub fn in_neighbors(&self, v: NodeId) -> &[NodeId] {
        match &self.arcs {
            Some((_, inc)) => inc.row(v),
            None => self.und.row(v),
        }
    }

    #[inline]
    pub fn degree(&self, v: NodeId) -> usize {
        self.neighbors(v).len()
    }

    #[inline]
    pub fn in_degree(&self, v: NodeId) -> usize {
        self.in_neighbors(v).len()
    }

    #[inline]
    pub fn out_degree(&self, v: NodeId) -> usize {
        self.out_neighbors(v).len()
    }

    /// `(u, v) ∈ E_d`.
    #[inline]
    pub fn has_arc(&self, u: NodeId, v: NodeId) -> bool {
        match &self.arcs {
            Some((out, _)) => out.contains(u, v),
            None => self.und.contains(u, v),
        }
    }

    #[inline]
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.und.contains(u, v)
    }

    /// Reciprocity multiplicity: 0 if not adjacent, 2 if both arcs exist,
    /// 1 otherwise.
    pub fn psi(&self, u: NodeId, v: NodeId) -> u32 {
        self.has_arc(u, v) as u32 + self.has_arc(v, u) as u32
    }

    pub fn max_degree(&self) -> usize {
        (0..self.node_count() as NodeId).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Undirected edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count() as NodeId).flat_map(move |u| {
            self.neighbors(u).iter().filter(move |&&v| u < v).map(move |&v| (u, v))
        })
    }

    /// Directed arcs `(u, v)`. Undirected graphs yield both orientations.
    pub fn arcs(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count() as NodeId)
            .flat_map(move |u| self.out_neighbors(u).iter().map(move |&v| (u, v)))
    }

    pub fn original_id(&self, v: NodeId) -> u64 {
        self.original_ids[v as usize]
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    /// Exact attributes of `v`; the crawler decides which of these a query
    /// actually reveals.
    pub(crate) fn attrs(&self, v: NodeId, label: u32) -> NodeAttrs {
        NodeAttrs {
            id: v,
            degree: Some(self.degree(v) as u32),
            in_degree: Some(self.in_degree(v) as u32),
            out_degree: Some(self.out_degree(v) as u32),
            label: Some(label),
        }
    }

    /// Connected components of the undirected view, each sorted ascending,
    /// ordered by their smallest member.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n as NodeId {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in self.neighbors(u) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.node_count() > 0 && self.components().len() == 1
    }

    /// Two-colourability of the undirected view.
    pub fn is_bipartite(&self) -> bool {
        let n = self.node_count();
        let mut colour = vec![u8::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            queue.push_back(s as NodeId);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if colour[w as usize] == u8::MAX {
                        colour[w as usize] = 1 - colour[u as usize];
                        queue.push_back(w);
                    } else if colour[w as usize] == colour[u as usize] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Subgraph induced by `nodes` (must be sorted, distinct). Directed arcs
    /// are preserved; nodes are relabelled in the given order.
    pub fn induced(&self, nodes: &[NodeId]) -> Graph {
        let mut remap = vec![NodeId::MAX; self.node_count()];
        for (new, &old) in nodes.iter().enumerate() {
            remap[old as usize] = new as NodeId;
        }
        let mut edges = Vec::new();
        for &u in nodes {
            for &v in self.out_neighbors(u) {
                let (a, b) = (remap[u as usize], remap[v as usize]);
                if b != NodeId::MAX && (self.directed || a < b) {
                    edges.push((a, b));
                }
            }
        }
        let (mut g, _) =
            Graph::from_edges(nodes.len(), self.directed, edges).expect("induced ids in range");
        g.original_ids = nodes.iter().map(|&v| self.original_ids[v as usize]).collect();
        g
    }

    /// Largest connected component of the undirected view. Ties go to the
    /// component holding the smallest original id.
    pub fn largest_connected_component(&self) -> Graph {
        let comps = self.components();
        let best = comps
            .iter()
            .max_by(|a, b| {
                let min_a = a.iter().map(|&v| self.original_id(v)).min();
                let min_b = b.iter().map(|&v| self.original_id(v)).min();
                a.len().cmp(&b.len()).then(min_b.cmp(&min_a))
            })
            .cloned()
            .unwrap_or_default();
        self.induced(&best)
    }

    /// Write the dense-id → original-id sidecar as CSV.
    pub fn write_id_map(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        let mut write = || -> std::io::Result<()> {
            writeln!(w, "original_id,dense_id")?;
            for (dense, orig) in self.original_ids.iter().enumerate() {
                writeln!(w, "{orig},{dense}")?;
            }
            w.flush()
        };
        write().map_err(|e| Error::io(path, e))
    }

    /// Write the graph as an edge list using original ids.
    pub fn write_edge_list(&self, path: &Path) -> Result<()> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        let mut write = || -> std::io::Result<()> {
            writeln!(
                w,
                "# nodes={} edges={} directed={}",
                self.node_count(),
                self.edge_count(),
                self.directed
            )?;
            if self.directed {
                for (u, v) in self.arcs() {
                    writeln!(w, "{} {}", self.original_id(u), self.original_id(v))?;
                }
            } else {
                for (u, v) in self.edges() {
                    writeln!(w, "{} {}", self.original_id(u), self.original_id(v))?;
                }
            }
            w.flush()
        };
        write().map_err(|e| Error::io(path, e))
    }
}

/// Result of [`load_edge_list`].
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub stats: BuildStats,
}

/// Read a whitespace-separated `u v` edge list. Lines starting with `#` (or
/// `%`) and blank lines are skipped. Original ids are compacted to
/// `0..n` in ascending order.
pub fn load_edge_list(path: &Path, directed: bool) -> Result<LoadedGraph> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let reader = BufReader::new(file);
    let mut raw: Vec<(u64, u64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut parts = trimmed.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<u64> {
            let tok = tok.ok_or_else(|| Error::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                msg: "expected two node ids".into(),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                msg: format!("invalid node id {tok:?}"),
            })
        };
        let u = parse(parts.next())?;
        let v = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                line: idx + 1,
                msg: "trailing tokens after edge".into(),
            });
        }
        raw.push((u, v));
    }
    let mut ids: Vec<u64> = raw.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    let dense = |x: u64| ids.binary_search(&x).expect("id collected") as NodeId;
    let edges: Vec<(NodeId, NodeId)> = raw.iter().map(|&(u, v)| (dense(u), dense(v))).collect();
    let (mut graph, stats) = Graph::from_edges(ids.len(), directed, edges)?;
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    graph.original_ids = ids;
    info!(
        "loaded {}: {} nodes, {} edges ({} directed), dropped {} self-loops and {} duplicates",
        path.display(),
        graph.node_count(),
        graph.edge_count(),
        graph.directed_edge_count(),
        stats.self_loops,
        stats.duplicates
    );
    Ok(LoadedGraph { graph, stats })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SyntheticKind {
    /// G(n, p).
    ErdosRenyi { p: f64 },
    /// Erased configuration model with discrete power-law degrees
    /// `P(d) ∝ d^-exponent` for `d >= min_degree`.
    PowerLaw { exponent: f64, min_degree: usize },
}

impl SyntheticKind {
    pub fn power_law(exponent: f64) -> Self {
        SyntheticKind::PowerLaw { exponent, min_degree: 2 }
    }
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    pub stats: BuildStats,
    /// Fraction of nodes in the largest connected component.
    pub lcc_fraction: f64,
}

pub fn generate_synthetic(kind: SyntheticKind, n: usize, seed: u64) -> Result<Generated> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("need n >= 3, got {n}")));
    }
    let mut rng = seed::rng(seed);
    let edges = match kind {
        SyntheticKind::ErdosRenyi { p } => {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::InvalidParameter(format!("edge probability {p} not in (0, 1]")));
            }
            let mut edges = Vec::new();
            for u in 0..n as NodeId {
                for v in (u + 1)..n as NodeId {
                    if p >= 1.0 || rng.random::<f64>() < p {
                        edges.push((u, v));
                    }
                }
            }
            edges
        }
        SyntheticKind::PowerLaw { exponent, min_degree } => {
            if !(exponent > 2.0 && exponent <= 3.5) {
                return Err(Error::InvalidParameter(format!(
                    "power-law exponent {exponent} not in (2, 3.5]"
                )));
            }
            if min_degree == 0 || min_degree >= n {
                return Err(Error::InvalidParameter(format!("min degree {min_degree} invalid")));
            }
            let degrees = power_law_degrees(n, exponent, min_degree, &mut rng);
            configuration_pairs(&degrees, &mut rng)
        }
    };
    let (graph, stats) = Graph::from_edges(n, false, edges)?;
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let lcc = graph.components().iter().map(Vec::len).max().unwrap_or(0);
    let lcc_fraction = lcc as f64 / n as f64;
    info!(
        "generated {kind:?} n={n}: {} edges, LCC fraction {lcc_fraction:.4}",
        graph.edge_count()
    );
    Ok(Generated { graph, stats, lcc_fraction })
}

/// Discrete power-law degree sequence by inverse transform of the continuous
/// approximation, capped at `n - 1`, with even total.
pub(crate) fn power_law_degrees<R: Rng>(
    n: usize,
    exponent: f64,
    min_degree: usize,
    rng: &mut R,
) -> Vec<usize> {
    let x0 = min_degree as f64 - 0.5;
    let mut degrees: Vec<usize> = (0..n)
        .map(|_| {
            let u: f64 = rng.random();
            let x = x0 * (1.0 - u).powf(-1.0 / (exponent - 1.0));
            ((x + 0.5).floor() as usize).clamp(min_degree, n - 1)
        })
        .collect();
    if degrees.iter().sum::<usize>() % 2 == 1 {
        let i = rng.random_range(0..n);
        if degrees[i] < n - 1 {
            degrees[i] += 1;
        } else {
            degrees[i] -= 1;
        }
    }
    degrees
}

/// Random stub matching; self-loops and multi-edges are left for
/// [`Graph::from_edges`] to erase.
pub(crate) fn configuration_pairs<R: Rng>(degrees: &[usize], rng: &mut R) -> Vec<(NodeId, NodeId)> {
    let mut stubs: Vec<NodeId> = degrees
        .iter()
        .enumerate()
        .flat_map(|(v, &d)| std::iter::repeat_n(v as NodeId, d))
        .collect();
    stubs.shuffle(rng);
    stubs.chunks_exact(2).map(|p| (p[0], p[1])).collect()
}

/// One categorical label per node, with dense ids `0..K`.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelTable {
    labels: Vec<u32>,
    names: Vec<String>,
    /// Numeric value per label id when the label domain is ordered (degrees).
    values: Option<Vec<f64>>,
}

impl LabelTable {
    pub fn new(labels: Vec<u32>, names: Vec<String>) -> Result<Self> {
        if let Some(&bad) = labels.iter().find(|&&l| l as usize >= names.len()) {
            return Err(Error::InvalidParameter(format!("label id {bad} >= K = {}", names.len())));
        }
        Ok(LabelTable { labels, names, values: None })
    }

    fn numeric(labels: Vec<u32>) -> Self {
        let k = labels.iter().copied().max().map_or(1, |m| m as usize + 1);
        LabelTable {
            labels,
            names: (0..k).map(|d| d.to_string()).collect(),
            values: Some((0..k).map(|d| d as f64).collect()),
        }
    }

    /// `L(v) = d_v` on the undirected view; label id equals the degree.
    pub fn from_degrees(g: &Graph) -> Self {
        Self::numeric((0..g.node_count() as NodeId).map(|v| g.degree(v) as u32).collect())
    }

    /// `L(v) = d_v^(I)`.
    pub fn from_in_degrees(g: &Graph) -> Self {
        Self::numeric((0..g.node_count() as NodeId).map(|v| g.in_degree(v) as u32).collect())
    }

    /// `L(v) = d_v^(O)`.
    pub fn from_out_degrees(g: &Graph) -> Self {
        Self::numeric((0..g.node_count() as NodeId).map(|v| g.out_degree(v) as u32).collect())
    }

    /// Independent categorical labels with the given `(name, probability)`
    /// masses.
    pub fn random_categorical(n: usize, classes: &[(&str, f64)], seed: u64) -> Result<Self> {
        let total: f64 = classes.iter().map(|c| c.1).sum();
        if classes.is_empty() || classes.iter().any(|c| c.1 < 0.0) || total <= 0.0 {
            return Err(Error::InvalidParameter("class masses must be non-negative".into()));
        }
        let mut rng = seed::rng(seed);
        let labels = (0..n)
            .map(|_| {
                let mut x = rng.random::<f64>() * total;
                for (k, c) in classes.iter().enumerate() {
                    if x < c.1 {
                        return k as u32;
                    }
                    x -= c.1;
                }
                classes.len() as u32 - 1
            })
            .collect();
        Self::new(labels, classes.iter().map(|c| c.0.to_string()).collect())
    }

    /// Read `node_id label_string` lines keyed by original ids. Every node in
    /// `g` must receive exactly one label; label ids follow sorted names.
    pub fn load(path: &Path, g: &Graph) -> Result<Self> {
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let mut by_original: BTreeMap<u64, String> = BTreeMap::new();
        for (idx, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| Error::io(path, e))?;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let perr = |msg: String| Error::Parse { path: path.to_path_buf(), line: idx + 1, msg };
            let (id, label) = t
                .split_once(char::is_whitespace)
                .ok_or_else(|| perr("expected `node_id label`".into()))?;
            let id: u64 = id.parse().map_err(|_| perr(format!("invalid node id {id:?}")))?;
            if by_original.insert(id, label.trim().to_string()).is_some() {
                return Err(perr(format!("node {id} labelled twice")));
            }
        }
        let mut names: Vec<String> = by_original.values().cloned().collect();
        names.sort();
        names.dedup();
        let mut labels = Vec::with_capacity(g.node_count());
        for v in 0..g.node_count() as NodeId {
            let orig = g.original_id(v);
            let name = by_original.get(&orig).ok_or_else(|| {
                Error::Config(format!("node {orig} has no label in {}", path.display()))
            })?;
            labels.push(names.binary_search(name).expect("name collected") as u32);
        }
        let numeric: Option<Vec<f64>> = names.iter().map(|s| s.parse::<f64>().ok()).collect();
        let mut table = Self::new(labels, names)?;
        if let Some(values) = numeric {
            if values.windows(2).all(|w| w[0] < w[1]) {
                table.values = Some(values);
            }
        }
        Ok(table)
    }

    #[inline]
    pub fn label(&self, v: NodeId) -> u32 {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// K.
    pub fn label_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, k: u32) -> &str {
        &self.names[k as usize]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Ordered numeric value of each label, if the domain is numeric.
    pub fn values(&self) -> Option<&[f64]> {
        self.values.as_deref()
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }
}

/// Edge label: an ordered pair of integers. Degree pairs store
/// `(min d, max d)`; node-label pairs store `(L(u), L(v))`.
pub type EdgeLabel = (u32, u32);

pub type CustomEdgeLabel = dyn Fn(&NodeAttrs, &NodeAttrs) -> Option<EdgeLabel> + Send + Sync;

/// What an edge labeler needs to know about the far endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LabelerNeeds {
    pub degree: bool,
    pub label: bool,
}

#[derive(Clone)]
pub enum EdgeLabeler {
    /// `(min{d_u,d_v}, max{d_u,d_v})` on the undirected view.
    DegreePair,
    /// Pair of node labels; `ordered = false` sorts the pair so that
    /// `L'(u,v) = L'(v,u)`.
    NodeLabelPair { ordered: bool },
    /// Label looked up by endpoint ids. Missing entries are an error.
    Explicit(Arc<BTreeMap<(NodeId, NodeId), u32>>),
    Custom { needs: LabelerNeeds, f: Arc<CustomEdgeLabel> },
}

impl fmt::Debug for EdgeLabeler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabeler::DegreePair => write!(f, "DegreePair"),
            EdgeLabeler::NodeLabelPair { ordered } => write!(f, "NodeLabelPair({ordered})"),
            EdgeLabeler::Explicit(t) => write!(f, "Explicit({} edges)", t.len()),
            EdgeLabeler::Custom { needs, .. } => write!(f, "Custom({needs:?})"),
        }
    }
}

impl EdgeLabeler {
    pub fn needs(&self) -> LabelerNeeds {
        match self {
            EdgeLabeler::DegreePair => LabelerNeeds { degree: true, label: false },
            EdgeLabeler::NodeLabelPair { .. } => LabelerNeeds { degree: false, label: true },
            EdgeLabeler::Explicit(_) => LabelerNeeds::default(),
            EdgeLabeler::Custom { needs, .. } => *needs,
        }
    }

    /// Label of the (directed, for ordered labelers) edge `u → v`.
    pub fn label(&self, u: &NodeAttrs, v: &NodeAttrs) -> Result<EdgeLabel> {
        let missing = |what: &str| {
            Error::Capability(format!("edge labeler needs {what} of nodes {} and {}", u.id, v.id))
        };
        match self {
            EdgeLabeler::DegreePair => {
                let (a, b) = (
                    u.degree.ok_or_else(|| missing("degrees"))?,
                    v.degree.ok_or_else(|| missing("degrees"))?,
                );
                Ok((a.min(b), a.max(b)))
            }
            EdgeLabeler::NodeLabelPair { ordered } => {
                let (a, b) = (
                    u.label.ok_or_else(|| missing("labels"))?,
                    v.label.ok_or_else(|| missing("labels"))?,
                );
                Ok(if *ordered { (a, b) } else { (a.min(b), a.max(b)) })
            }
            EdgeLabeler::Explicit(table) => table
                .get(&(u.id, v.id))
                .map(|&l| (l, 0))
                .ok_or_else(|| Error::Config(format!("edge ({}, {}) has no label", u.id, v.id))),
            EdgeLabeler::Custom { f, .. } => f(u, v).ok_or_else(|| missing("custom attributes")),
        }
    }
}
