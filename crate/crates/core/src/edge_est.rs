//! Edge label density estimators.
//!
//! Traversal estimators count labels on the edges a walk crossed.
//! Neighborhood estimators instead label every edge incident to a sampled
//! node, which needs the labeler's attributes for each neighbor. Masses are
//! kept sparse because degree-pair labels on heavy-tailed graphs are mostly
//! empty.

use std::collections::BTreeMap;
use std::fmt;

use crate::access::NodeReply;
use crate::error::{Error, Result};
use crate::graph::{EdgeLabel, EdgeLabeler};
use crate::sampling::{PiHatRule, SampleStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeEstimator {
    Traversal,
    TraversalDirected,
    Neighbor,
    NeighborDirected,
    Exact,
}

impl EdgeEstimator {
    pub fn name(&self) -> &'static str {
        match self {
            EdgeEstimator::Traversal => "traversal",
            EdgeEstimator::TraversalDirected => "traversal-directed",
            EdgeEstimator::Neighbor => "neighbor",
            EdgeEstimator::NeighborDirected => "neighbor-directed",
            EdgeEstimator::Exact => "exact",
        }
    }
}

impl fmt::Display for EdgeEstimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeDensityEstimate {
    pub values: BTreeMap<EdgeLabel, f64>,
    pub estimator: EdgeEstimator,
    /// n, H_d, H̆ or H̆_d.
    pub normalizer: f64,
}

impl EdgeDensityEstimate {
    pub fn mass(&self, l: EdgeLabel) -> f64 {
        self.values.get(&l).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.values.values().sum()
    }

    /// CSV `label,mass,estimator` with the label written as `a:b`.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "label,mass,estimator")?;
        for (&(a, b), m) in &self.values {
            writeln!(w, "{a}:{b},{m},{}", self.estimator)?;
        }
        Ok(())
    }

    /// CSV `deg_low,deg_high,mass` for degree-pair labels.
    pub fn write_joint_degree_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "deg_low,deg_high,mass")?;
        for (&(a, b), m) in &self.values {
            writeln!(w, "{a},{b},{m}")?;
        }
        Ok(())
    }
}

struct Accumulator {
    sums: BTreeMap<EdgeLabel, f64>,
    total: f64,
}

impl Accumulator {
    fn new() -> Self {
        Accumulator { sums: BTreeMap::new(), total: 0.0 }
    }

    #[inline]
    fn add(&mut self, l: EdgeLabel, w: f64) {
        *self.sums.entry(l).or_insert(0.0) += w;
        self.total += w;
    }

    fn finish(self, estimator: EdgeEstimator, normalizer: f64) -> Result<EdgeDensityEstimate> {
        if !(normalizer > 0.0) {
            return Err(Error::Config(format!("{estimator} edge estimator collected no weight")));
        }
        let values = self.sums.into_iter().map(|(l, s)| (l, s / normalizer)).collect();
        Ok(EdgeDensityEstimate { values, estimator, normalizer })
    }
}

fn check_traversals(stream: &SampleStream) -> Result<()> {
    if stream.is_empty() {
        return Err(Error::EmptyStream);
    }
    if stream.traversals().len() == 0 {
        return Err(Error::Capability(format!(
            "{} streams record no traversed edges",
            stream.method
        )));
    }
    Ok(())
}

fn check_weights(stream: &SampleStream) -> Result<()> {
    if stream.is_empty() {
        return Err(Error::EmptyStream);
    }
    if stream.pi_hat_rule == PiHatRule::None {
        return Err(Error::Capability(format!(
            "{} streams carry no stationary weights",
            stream.method
        )));
    }
    Ok(())
}

/// Fails up front when the stream's visibility cannot feed the labeler.
fn check_labeler(stream: &SampleStream, labeler: &EdgeLabeler) -> Result<()> {
    let needs = labeler.needs();
    let vis = stream.visibility;
    if needs.degree && !vis.reveals_neighbor_degrees() {
        return Err(Error::Capability("edge labeler requires neighbor degrees".into()));
    }
    if needs.label && !vis.reveals_neighbor_labels() {
        return Err(Error::Capability("edge labeler requires neighbor labels".into()));
    }
    Ok(())
}

/// τ̂: label frequencies over the traversed edges. Both endpoints were
/// queried, so any labeler works.
pub fn estimate_edge_traversal(stream: &SampleStream, labeler: &EdgeLabeler) -> Result<EdgeDensityEstimate> {
    check_traversals(stream)?;
    let mut acc = Accumulator::new();
    for (a, b) in stream.traversals() {
        acc.add(labeler.label(&a.own, &b.own)?, 1.0);
    }
    let n = acc.total;
    acc.finish(EdgeEstimator::Traversal, n)
}

fn arc_between(a: &NodeReply, b: &NodeReply) -> (bool, bool) {
    match a.neighbors.binary_search_by_key(&b.id(), |w| w.id()) {
        Ok(i) => (a.neighbors[i].out, a.neighbors[i].inc),
        Err(_) => (false, false),
    }
}

/// τ̂*: every traversed edge contributes the label of each arc it carries,
/// normalised by the number of arcs seen (H_d).
pub fn estimate_edge_traversal_directed(
    stream: &SampleStream,
    labeler: &EdgeLabeler,
) -> Result<EdgeDensityEstimate> {
    if !stream.directed {
        return Err(Error::NotDirected);
    }
    check_traversals(stream)?;
    let mut acc = Accumulator::new();
    for (a, b) in stream.traversals() {
        let (ab, ba) = arc_between(a, b);
        if ab {
            acc.add(labeler.label(&a.own, &b.own)?, 1.0);
        }
        if ba {
            acc.add(labeler.label(&b.own, &a.own)?, 1.0);
        }
    }
    let h = acc.total;
    acc.finish(EdgeEstimator::TraversalDirected, h)
}

/// τ̆: every edge incident to a sampled node `s` contributes `1/π̂_s`;
/// H̆ = Σ d_s/π̂_s.
pub fn estimate_edge_neighbor(stream: &SampleStream, labeler: &EdgeLabeler) -> Result<EdgeDensityEstimate> {
    check_weights(stream)?;
    check_labeler(stream, labeler)?;
    let mut acc = Accumulator::new();
    let mut h = 0.0;
    for (r, pi) in stream.samples() {
        for w in &r.neighbors {
            acc.add(labeler.label(&r.own, &w.attrs)?, 1.0 / pi);
        }
        h += r.degree() as f64 / pi;
    }
    acc.finish(EdgeEstimator::Neighbor, h)
}

/// τ̆*: arcs `s → w` contribute `L'(s,w)` and arcs `w → s` contribute
/// `L'(w,s)`, each with weight `1/π̂_s`; H̆_d = Σ (d_s^(I)+d_s^(O))/π̂_s.
pub fn estimate_edge_neighbor_directed(
    stream: &SampleStream,
    labeler: &EdgeLabeler,
) -> Result<EdgeDensityEstimate> {
    if !stream.directed {
        return Err(Error::NotDirected);
    }
    check_weights(stream)?;
    check_labeler(stream, labeler)?;
    let mut acc = Accumulator::new();
    let mut h = 0.0;
    for (r, pi) in stream.samples() {
        for w in &r.neighbors {
            if w.out {
                acc.add(labeler.label(&r.own, &w.attrs)?, 1.0 / pi);
            }
            if w.inc {
                acc.add(labeler.label(&w.attrs, &r.own)?, 1.0 / pi);
            }
        }
        h += (r.in_degree() + r.out_degree()) as f64 / pi;
    }
    acc.finish(EdgeEstimator::NeighborDirected, h)
}

/// The literal double sum `Σ_i Σ_{w∈N(s_i)} 1/π̂_{s_i}`, kept for checking
/// the closed form used by [`estimate_edge_neighbor`].
pub fn neighbor_normalizer_literal(stream: &SampleStream) -> f64 {
    stream.samples().map(|(r, pi)| r.neighbors.iter().map(|_| 1.0 / pi).sum::<f64>()).sum()
}
