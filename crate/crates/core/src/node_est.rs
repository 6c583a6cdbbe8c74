//! Node label density estimators.
//!
//! All estimators are ratio estimators over a [`SampleStream`]: each sample
//! contributes mass to one or more labels, weighted by `1/π̂`, and the
//! result is divided by the total weight so neither |V| nor |E| is needed.
//!
//! | estimator           | contributions per sample `s`                                    |
//! |---------------------|-----------------------------------------------------------------|
//! | `Simple`            | `1/π̂_s` to `L(s)`                                              |
//! | `Neighbor`          | `1/(π̂_s d_w)` to `L(w)` for every neighbor `w`                 |
//! | `DirectedNeighbor`  | `ψ(s,w)/(π̂_s (d_w^(I)+d_w^(O)))` to `L(w)`                     |
//! | `OutNeighbor`       | `γ/(π̂_s (d_s^(I)+γ))` to `L(s)`, `1/(π̂_s (d_w^(I)+γ))` to `L(w)` for out-neighbors |

use std::fmt;
use std::ops::Range;

use log::warn;

use crate::access::NodeReply;
use crate::error::{Error, Result};
use crate::graph::LabelTable;
use crate::sampling::{PiHatRule, SampleStream};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NodeEstimator {
    Simple,
    Neighbor,
    Mixture,
    DirectedNeighbor,
    OutNeighbor { gamma: f64 },
    /// Full-graph scan (oracle).
    Exact,
}

impl NodeEstimator {
    pub fn name(&self) -> &'static str {
        match self {
            NodeEstimator::Simple => "simple",
            NodeEstimator::Neighbor => "neighbor",
            NodeEstimator::Mixture => "mixture",
            NodeEstimator::DirectedNeighbor => "directed-neighbor",
            NodeEstimator::OutNeighbor { .. } => "out-neighbor",
            NodeEstimator::Exact => "exact",
        }
    }
}

impl fmt::Display for NodeEstimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Normalised label → mass vector.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityEstimate {
    pub values: Vec<f64>,
    pub estimator: NodeEstimator,
    pub n_used: usize,
    /// The ratio estimator's denominator (C, C̆, C̆_d or C̆_d*).
    pub normalizer: f64,
}

impl DensityEstimate {
    pub fn mass(&self, k: usize) -> f64 {
        self.values.get(k).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.values.iter().sum()
    }

    /// CSV `label,mass,estimator,n_used`.
    pub fn write_csv<W: std::io::Write>(&self, labels: &LabelTable, mut w: W) -> std::io::Result<()> {
        writeln!(w, "label,mass,estimator,n_used")?;
        for (k, m) in self.values.iter().enumerate() {
            writeln!(w, "{},{},{},{}", labels.name(k as u32), m, self.estimator, self.n_used)?;
        }
        Ok(())
    }
}

/// Accumulates weighted label contributions.
struct Accumulator {
    sums: Vec<f64>,
    total: f64,
}

impl Accumulator {
    fn new(k: usize) -> Self {
        Accumulator { sums: vec![0.0; k], total: 0.0 }
    }

    #[inline]
    fn add(&mut self, label: u32, w: f64) -> Result<()> {
        let slot = self
            .sums
            .get_mut(label as usize)
            .ok_or_else(|| Error::Config(format!("label id {label} outside the label table")))?;
        *slot += w;
        self.total += w;
        Ok(())
    }

    fn finish(self, estimator: NodeEstimator, n_used: usize) -> Result<DensityEstimate> {
        if !(self.total > 0.0) {
            return Err(Error::Config(format!("{estimator} estimator collected no weight")));
        }
        let values = self.sums.iter().map(|s| s / self.total).collect();
        Ok(DensityEstimate { values, estimator, n_used, normalizer: self.total })
    }
}

fn check_stream(stream: &SampleStream) -> Result<()> {
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

fn neighbor_capability(what: &str) -> Error {
    Error::Capability(format!("estimator requires {what}"))
}

fn simple_over(stream: &SampleStream, range: Range<usize>, k: usize) -> Result<DensityEstimate> {
    let mut acc = Accumulator::new(k);
    let n = range.len();
    for i in range {
        let (r, pi) = stream.sample(i);
        acc.add(r.label(), 1.0 / pi)?;
    }
    acc.finish(NodeEstimator::Simple, n)
}

fn neighbor_terms(r: &NodeReply, pi: f64, acc: &mut Accumulator) -> Result<()> {
    for w in &r.neighbors {
        let d = w.attrs.degree.ok_or_else(|| neighbor_capability("neighbor degrees and labels"))?;
        let l = w.attrs.label.ok_or_else(|| neighbor_capability("neighbor degrees and labels"))?;
        assert!(d > 0, "neighbor {} reported degree 0", w.id());
        acc.add(l, 1.0 / (pi * d as f64))?;
    }
    Ok(())
}

fn neighbor_over(stream: &SampleStream, range: Range<usize>, k: usize) -> Result<DensityEstimate> {
    let mut acc = Accumulator::new(k);
    let n = range.len();
    for i in range {
        let (r, pi) = stream.sample(i);
        neighbor_terms(r, pi, &mut acc)?;
    }
    acc.finish(NodeEstimator::Neighbor, n)
}

/// θ̂: reweighted label frequencies of the sampled nodes.
pub fn estimate_simple(stream: &SampleStream, label_count: usize) -> Result<DensityEstimate> {
    check_stream(stream)?;
    simple_over(stream, 0..stream.len(), label_count)
}

/// θ̆: labels of the sampled nodes' neighbors, each weighted by
/// `1/(π̂_s d_w)`.
pub fn estimate_neighbor(stream: &SampleStream, label_count: usize) -> Result<DensityEstimate> {
    check_stream(stream)?;
    if !stream.visibility.reveals_neighbor_labels() {
        return Err(neighbor_capability("neighbor degrees and labels"));
    }
    neighbor_over(stream, 0..stream.len(), label_count)
}

/// θ̆* for directed graphs: every (in or out) neighbor `w` contributes
/// `ψ(s,w) / (π̂_s (d_w^(I) + d_w^(O)))`.
pub fn estimate_directed_neighbor(stream: &SampleStream, label_count: usize) -> Result<DensityEstimate> {
    check_stream(stream)?;
    if !stream.directed {
        return Err(Error::NotDirected);
    }
    let mut acc = Accumulator::new(label_count);
    for (r, pi) in stream.samples() {
        for w in &r.neighbors {
            let total = w
                .attrs
                .total_degree()
                .ok_or_else(|| neighbor_capability("neighbor in/out degrees and labels"))?;
            let l = w.attrs.label.ok_or_else(|| neighbor_capability("neighbor in/out degrees and labels"))?;
            acc.add(l, w.psi() as f64 / (pi * total as f64))?;
        }
    }
    acc.finish(NodeEstimator::DirectedNeighbor, stream.len())
}

/// θ̆^(O): the sampled node itself with weight `γ/(d^(I)+γ)` plus its
/// out-neighbors with weight `1/(d^(I)+γ)`, all divided by π̂_s.
pub fn estimate_out_neighbor(stream: &SampleStream, label_count: usize, gamma: f64) -> Result<DensityEstimate> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidParameter(format!("gamma must be > 0, got {gamma}")));
    }
    check_stream(stream)?;
    let mut acc = Accumulator::new(label_count);
    for (r, pi) in stream.samples() {
        acc.add(r.label(), gamma / (pi * (r.in_degree() as f64 + gamma)))?;
        for w in r.out_neighbors() {
            let din = w
                .attrs
                .in_degree
                .ok_or_else(|| neighbor_capability("out-neighbors' in-degrees and labels"))?;
            let l = w.attrs.label.ok_or_else(|| neighbor_capability("out-neighbors' in-degrees and labels"))?;
            acc.add(l, 1.0 / (pi * (din as f64 + gamma)))?;
        }
    }
    acc.finish(NodeEstimator::OutNeighbor { gamma }, stream.len())
}

/// Per-label blending weights of the mixture estimator and their inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureWeights {
    /// Weight on θ̂ per label.
    pub alpha: Vec<f64>,
    pub subset_count: usize,
    pub var_simple: Vec<f64>,
    pub var_neighbor: Vec<f64>,
    /// Blend before renormalisation.
    pub raw: Vec<f64>,
}

pub const DEFAULT_SUBSET_COUNT: usize = 100;

/// `α_k = Var(θ̆_k) / (Var(θ̂_k) + Var(θ̆_k))`, or 1/2 when both vanish.
pub fn mixture_alpha(var_simple: f64, var_neighbor: f64) -> f64 {
    let denom = var_simple + var_neighbor;
    if denom > 0.0 {
        var_neighbor / denom
    } else {
        0.5
    }
}

/// Sample variance (n - 1 denominator) of each column.
fn column_variances(rows: &[Vec<f64>], k: usize) -> Vec<f64> {
    let n = rows.len() as f64;
    (0..k)
        .map(|j| {
            let mean = rows.iter().map(|r| r[j]).sum::<f64>() / n;
            rows.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / (n - 1.0)
        })
        .collect()
}

/// Blend θ̂ and θ̆ per label. The variances are estimated by splitting the
/// stream into `subset_count` equal consecutive subsets (the remainder at the
/// tail is dropped) and evaluating both estimators on each.
pub fn estimate_mixture(
    stream: &SampleStream,
    label_count: usize,
    subset_count: usize,
) -> Result<(DensityEstimate, MixtureWeights)> {
    check_stream(stream)?;
    if !stream.visibility.reveals_neighbor_labels() {
        return Err(neighbor_capability("neighbor degrees and labels"));
    }
    let n = stream.len();
    let mut subsets = subset_count.max(2);
    if n < 2 * subsets {
        let fallback = (n / 20).max(2);
        warn!("stream of {n} samples too short for {subsets} subsets; using {fallback}");
        subsets = fallback;
    }
    if n < 2 * subsets {
        return Err(Error::InvalidParameter(format!(
            "mixture needs at least {} samples, got {n}",
            2 * subsets
        )));
    }
    let size = n / subsets;
    let mut simple_rows = Vec::with_capacity(subsets);
    let mut neighbor_rows = Vec::with_capacity(subsets);
    for j in 0..subsets {
        let range = j * size..(j + 1) * size;
        simple_rows.push(simple_over(stream, range.clone(), label_count)?.values);
        neighbor_rows.push(neighbor_over(stream, range, label_count)?.values);
    }
    let var_simple = column_variances(&simple_rows, label_count);
    let var_neighbor = column_variances(&neighbor_rows, label_count);
    let alpha: Vec<f64> =
        var_simple.iter().zip(&var_neighbor).map(|(&a, &b)| mixture_alpha(a, b)).collect();

    let simple = simple_over(stream, 0..n, label_count)?;
    let neighbor = neighbor_over(stream, 0..n, label_count)?;
    let raw: Vec<f64> = (0..label_count)
        .map(|k| alpha[k] * simple.values[k] + (1.0 - alpha[k]) * neighbor.values[k])
        .collect();
    let total: f64 = raw.iter().sum();
    let values = raw.iter().map(|x| x / total).collect();
    Ok((
        DensityEstimate { values, estimator: NodeEstimator::Mixture, n_used: n, normalizer: total },
        MixtureWeights { alpha, subset_count: subsets, var_simple, var_neighbor, raw },
    ))
}

/// Complementary CDF `ξ_k = Σ_{i>k} θ_i` over a numeric label domain.
pub fn to_ccdf(density: &[f64], labels: &LabelTable) -> Result<Vec<f64>> {
    let values = labels
        .values()
        .ok_or_else(|| Error::Config("CCDF needs a numeric label domain".into()))?;
    if values.len() != density.len() || !values.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Config("label values must be ascending and match the density".into()));
    }
    Ok(ccdf(density))
}

/// Suffix sums `ξ_k = Σ_{i>k} θ_i` of an already ordered density.
pub fn ccdf(density: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; density.len()];
    let mut tail = 0.0;
    for k in (0..density.len()).rev() {
        out[k] = tail;
        tail += density[k];
    }
    out
}

/// CSV `degree,ccdf`.
pub fn write_ccdf_csv<W: std::io::Write>(ccdf: &[f64], labels: &LabelTable, mut w: W) -> std::io::Result<()> {
    writeln!(w, "degree,ccdf")?;
    for (k, x) in ccdf.iter().enumerate() {
        writeln!(w, "{},{}", labels.name(k as u32), x)?;
    }
    Ok(())
}
