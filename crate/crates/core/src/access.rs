//! Budgeted, visibility-gated access to a graph.
//!
//! Samplers never touch [`Graph`] adjacency directly; they go through a
//! [`Crawler`], which charges each query to a [`CostLedger`] and returns a
//! [`NodeReply`] carrying only what the configured [`Visibility`] reveals.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Geometric};

use crate::error::{Error, Result};
use crate::graph::{Graph, LabelTable, NodeId};

/// How much a query reveals about the queried node's neighbors. Neighbor ids
/// (and arc directions) are always revealed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub enum Visibility {
    SelfOnly,
    NbrDegrees,
    #[default]
    NbrDegreesLabels,
    /// Out-neighbors annotated with their in-degree and label; nothing about
    /// in-only neighbors beyond their ids.
    OutNbrWithIndeg,
}

impl Visibility {
    pub fn reveals_neighbor_degrees(self) -> bool {
        matches!(self, Visibility::NbrDegrees | Visibility::NbrDegreesLabels)
    }

    pub fn reveals_neighbor_labels(self) -> bool {
        self == Visibility::NbrDegreesLabels
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Visibility::SelfOnly => "self-only",
            Visibility::NbrDegrees => "nbr-degrees",
            Visibility::NbrDegreesLabels => "nbr-degrees-labels",
            Visibility::OutNbrWithIndeg => "out-nbr-indeg",
        }
    }
}

impl fmt::Display for Visibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Visibility {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "self-only" => Ok(Visibility::SelfOnly),
            "nbr-degrees" => Ok(Visibility::NbrDegrees),
            "nbr-degrees-labels" => Ok(Visibility::NbrDegreesLabels),
            "out-nbr-indeg" => Ok(Visibility::OutNbrWithIndeg),
            other => Err(Error::Config(format!("unknown visibility {other:?}"))),
        }
    }
}

/// Attributes of one node as known to the crawler. `None` means the
/// attribute was not revealed; consumers must fail rather than assume zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NodeAttrs {
    pub id: NodeId,
    pub degree: Option<u32>,
    pub in_degree: Option<u32>,
    pub out_degree: Option<u32>,
    pub label: Option<u32>,
}

impl NodeAttrs {
    /// `d^(I) + d^(O)` when both are known.
    pub fn total_degree(&self) -> Option<u32> {
        Some(self.in_degree? + self.out_degree?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborInfo {
    pub attrs: NodeAttrs,
    /// Queried node → neighbor is an arc.
    pub out: bool,
    /// Neighbor → queried node is an arc.
    pub inc: bool,
}

impl NeighborInfo {
    #[inline]
    pub fn id(&self) -> NodeId {
        self.attrs.id
    }

    /// ψ(queried, neighbor).
    #[inline]
    pub fn psi(&self) -> u32 {
        self.out as u32 + self.inc as u32
    }
}

/// Everything one query returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeReply {
    /// Own attributes are always fully known.
    pub own: NodeAttrs,
    /// Undirected-view neighbors in ascending id order.
    pub neighbors: Vec<NeighborInfo>,
}

impl NodeReply {
    #[inline]
    pub fn id(&self) -> NodeId {
        self.own.id
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.own.degree.expect("own degree always known")
    }

    #[inline]
    pub fn label(&self) -> u32 {
        self.own.label.expect("own label always known")
    }

    pub fn in_degree(&self) -> u32 {
        self.own.in_degree.expect("own in-degree always known")
    }

    pub fn out_degree(&self) -> u32 {
        self.own.out_degree.expect("own out-degree always known")
    }

    pub fn out_neighbors(&self) -> impl Iterator<Item = &NeighborInfo> {
        self.neighbors.iter().filter(|n| n.out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UniCharging {
    /// Exactly `c` attempts per delivered node.
    #[default]
    Deterministic,
    /// Geometric number of attempts with mean `c`.
    Stochastic,
}

/// Query budget accounting. Crawl queries cost one unit; each UNI sample
/// costs `uni_cost` attempts on average.
#[derive(Debug, Clone, PartialEq)]
pub struct CostLedger {
    pub budget: f64,
    pub spent_crawl: u64,
    pub spent_uni_attempts: f64,
    pub uni_cost: f64,
    pub uni_charging: UniCharging,
    pub exhausted: bool,
}

impl CostLedger {
    pub fn new(budget: f64, uni_cost: f64) -> Result<Self> {
        if !(uni_cost >= 1.0) {
            return Err(Error::InvalidParameter(format!("UNI cost c = {uni_cost} must be >= 1")));
        }
        if !(budget >= 0.0) {
            return Err(Error::InvalidParameter(format!("budget {budget} must be >= 0")));
        }
        Ok(CostLedger {
            budget,
            spent_crawl: 0,
            spent_uni_attempts: 0.0,
            uni_cost,
            uni_charging: UniCharging::Deterministic,
            exhausted: false,
        })
    }

    pub fn unlimited() -> Self {
        Self::new(f64::INFINITY, 1.0).expect("valid")
    }

    pub fn with_uni_charging(mut self, mode: UniCharging) -> Self {
        self.uni_charging = mode;
        self
    }

    pub fn spent(&self) -> f64 {
        self.spent_crawl as f64 + self.spent_uni_attempts
    }

    pub fn remaining(&self) -> f64 {
        (self.budget - self.spent()).max(0.0)
    }

    fn try_charge(&mut self, amount: f64) -> bool {
        if self.spent() + amount <= self.budget + 1e-9 {
            true
        } else {
            self.exhausted = true;
            false
        }
    }

    /// Charge one crawl query; returns `false` (and marks exhaustion) when the
    /// budget cannot cover it.
    pub fn charge_crawl(&mut self) -> bool {
        if self.try_charge(1.0) {
            self.spent_crawl += 1;
            true
        } else {
            false
        }
    }

    /// Charge the attempts for one UNI hit.
    pub fn charge_uni<R: Rng + ?Sized>(&mut self, rng: &mut R) -> bool {
        let attempts = match self.uni_charging {
            UniCharging::Deterministic => self.uni_cost,
            UniCharging::Stochastic => {
                let geo = Geometric::new(1.0 / self.uni_cost).expect("0 < 1/c <= 1");
                1.0 + geo.sample(rng) as f64
            }
        };
        if self.try_charge(attempts) {
            self.spent_uni_attempts += attempts;
            true
        } else {
            if self.uni_charging == UniCharging::Stochastic {
                // The misses up to the cap were still paid for.
                self.spent_uni_attempts += self.remaining();
            }
            false
        }
    }
}

/// Gatekeeper between samplers and the graph.
#[derive(Debug)]
pub struct Crawler<'a> {
    graph: &'a Graph,
    labels: &'a LabelTable,
    visibility: Visibility,
    pub ledger: CostLedger,
    /// When set, re-querying an already crawled node is free.
    cache: Option<HashSet<NodeId>>,
}

impl<'a> Crawler<'a> {
    pub fn new(graph: &'a Graph, labels: &'a LabelTable, visibility: Visibility, ledger: CostLedger) -> Result<Self> {
        if labels.node_count() != graph.node_count() {
            return Err(Error::Config(format!(
                "label table covers {} nodes, graph has {}",
                labels.node_count(),
                graph.node_count()
            )));
        }
        Ok(Crawler { graph, labels, visibility, ledger, cache: None })
    }

    /// Do not re-charge revisits.
    pub fn with_cache(mut self) -> Self {
        self.cache = Some(HashSet::new());
        self
    }

    pub fn visibility(&self) -> Visibility {
        self.visibility
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn is_directed(&self) -> bool {
        self.graph.is_directed()
    }

    pub fn label_count(&self) -> usize {
        self.labels.label_count()
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        if (v as usize) < self.graph.node_count() {
            Ok(())
        } else {
            Err(Error::UnknownNode(v))
        }
    }

    /// Crawl `v`, charging one query. `None` when the budget is exhausted.
    pub fn query(&mut self, v: NodeId) -> Option<NodeReply> {
        self.charge_query(v).then(|| self.reply(v))
    }

    /// Charge the query for `v` without materialising the reply; callers
    /// that already hold `v`'s reply reuse it.
    pub fn charge_query(&mut self, v: NodeId) -> bool {
        let free = self.cache.as_ref().is_some_and(|c| c.contains(&v));
        if !free && !self.ledger.charge_crawl() {
            return false;
        }
        if let Some(cache) = &mut self.cache {
            cache.insert(v);
        }
        true
    }

    /// Draw a uniform node, charging the UNI cost. `None` when exhausted.
    pub fn uni_draw<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Option<NodeId> {
        if !self.ledger.charge_uni(rng) {
            return None;
        }
        Some(rng.random_range(0..self.graph.node_count()) as NodeId)
    }

    /// Reply for `v` without charging; used for caller-supplied seeds whose
    /// neighborhood is already known.
    pub fn reply(&self, v: NodeId) -> NodeReply {
        let g = self.graph;
        let own = g.attrs(v, self.labels.label(v));
        let neighbors = g
            .neighbors(v)
            .iter()
            .map(|&w| {
                let out = g.has_arc(v, w);
                let inc = g.has_arc(w, v);
                let full = g.attrs(w, self.labels.label(w));
                let attrs = match self.visibility {
                    Visibility::SelfOnly => NodeAttrs { id: w, ..Default::default() },
                    Visibility::NbrDegrees => NodeAttrs { label: None, ..full },
                    Visibility::NbrDegreesLabels => full,
                    Visibility::OutNbrWithIndeg if out => NodeAttrs {
                        id: w,
                        in_degree: full.in_degree,
                        label: full.label,
                        ..Default::default()
                    },
                    Visibility::OutNbrWithIndeg => NodeAttrs { id: w, ..Default::default() },
                };
                NeighborInfo { attrs, out, inc }
            })
            .collect();
        NodeReply { own, neighbors }
    }
}
