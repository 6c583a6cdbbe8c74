//! Ground truth, error metrics and the Monte Carlo trial runner.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use log::info;
use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

use crate::access::{CostLedger, Crawler, UniCharging, Visibility};
use crate::edge_est::{EdgeDensityEstimate, EdgeEstimator};
use crate::error::{Error, Result};
use crate::graph::{EdgeLabeler, Graph, LabelTable, NodeId};
use crate::node_est::{self, DensityEstimate, NodeEstimator};
use crate::par::{self, Execution};
use crate::sampling::{self, FsSeeds, SampleStream, SamplingMethod, WalkWeights};
use crate::seed;

/// Exact label fractions by a full scan.
pub fn exact_node_density(labels: &LabelTable) -> DensityEstimate {
    let n = labels.node_count();
    let mut values = vec![0.0; labels.label_count()];
    for &l in labels.labels() {
        values[l as usize] += 1.0;
    }
    for x in &mut values {
        *x /= n as f64;
    }
    DensityEstimate { values, estimator: NodeEstimator::Exact, n_used: n, normalizer: n as f64 }
}

/// Exact edge label fractions. Undirected: one term per edge `(u, v)` with
/// `u < v`. Directed: one term per arc.
pub fn exact_edge_density(
    g: &Graph,
    labels: &LabelTable,
    labeler: &EdgeLabeler,
    directed: bool,
) -> Result<EdgeDensityEstimate> {
    if directed && !g.is_directed() {
        return Err(Error::NotDirected);
    }
    let attrs = |v: NodeId| g.attrs(v, labels.label(v));
    let mut counts: BTreeMap<_, f64> = BTreeMap::new();
    let mut total = 0.0;
    let pairs: Box<dyn Iterator<Item = (NodeId, NodeId)>> =
        if directed { Box::new(g.arcs()) } else { Box::new(g.edges()) };
    for (u, v) in pairs {
        *counts.entry(labeler.label(&attrs(u), &attrs(v))?).or_insert(0.0) += 1.0;
        total += 1.0;
    }
    if total == 0.0 {
        return Err(Error::EmptyGraph);
    }
    for x in counts.values_mut() {
        *x /= total;
    }
    Ok(EdgeDensityEstimate { values: counts, estimator: EdgeEstimator::Exact, normalizer: total })
}

/// Mean and standard error of the mean.
pub fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// `√E[(x - truth)²] / truth`.
pub fn nmse(estimates: impl IntoIterator<Item = f64>, truth: f64) -> f64 {
    let (mut sum, mut n) = (0.0, 0usize);
    for x in estimates {
        sum += (x - truth).powi(2);
        n += 1;
    }
    (sum / n as f64).sqrt() / truth
}

/// Euclidean distance between two sparse edge densities.
pub fn delta(a: &BTreeMap<(u32, u32), f64>, b: &BTreeMap<(u32, u32), f64>) -> f64 {
    let mut s = 0.0;
    for (k, x) in a {
        s += (x - b.get(k).copied().unwrap_or(0.0)).powi(2);
    }
    for (k, y) in b {
        if !a.contains_key(k) {
            s += y * y;
        }
    }
    s.sqrt()
}

/// Which labels get an NMSE row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassFloor {
    pub min_mass: f64,
    pub min_nodes: usize,
}

impl Default for MassFloor {
    fn default() -> Self {
        MassFloor { min_mass: 1e-4, min_nodes: 5 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NmseRow {
    pub label: usize,
    pub truth: f64,
    pub nmse: f64,
    /// NaN when the true CCDF is 0 or the label domain is not numeric.
    pub cnmse: f64,
    pub ccdf_truth: f64,
}

/// Output of [`run_trials`]: per-run estimates and per-label errors.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricsTable {
    pub truth: Vec<f64>,
    pub runs: Vec<Vec<f64>>,
    pub rows: Vec<NmseRow>,
    pub skipped_labels: usize,
}

impl MetricsTable {
    /// Build from per-run estimates. CCDF errors are computed when `numeric`.
    pub fn from_runs(truth: Vec<f64>, runs: Vec<Vec<f64>>, numeric: bool, floor: MassFloor, n_nodes: usize) -> Result<Self> {
        if runs.len() < 2 {
            return Err(Error::InvalidParameter("NMSE needs at least 2 runs".into()));
        }
        let k = truth.len();
        let (true_ccdf, run_ccdfs) = if numeric {
            (node_est::ccdf(&truth), runs.iter().map(|r| node_est::ccdf(r)).collect())
        } else {
            (vec![0.0; k], Vec::new())
        };
        let min_mass = floor.min_mass.max(floor.min_nodes as f64 / n_nodes.max(1) as f64);
        let mut rows = Vec::new();
        let mut skipped = 0;
        for j in 0..k {
            if truth[j] <= 0.0 {
                continue;
            }
            if truth[j] < min_mass {
                skipped += 1;
                continue;
            }
            let cnmse = if numeric && true_ccdf[j] > 0.0 {
                nmse(run_ccdfs.iter().map(|c: &Vec<f64>| c[j]), true_ccdf[j])
            } else {
                f64::NAN
            };
            rows.push(NmseRow {
                label: j,
                truth: truth[j],
                nmse: nmse(runs.iter().map(|r| r[j]), truth[j]),
                cnmse,
                ccdf_truth: true_ccdf[j],
            });
        }
        if skipped > 0 {
            info!("{skipped} labels below the mass floor {min_mass:.2e} left out of NMSE");
        }
        Ok(MetricsTable { truth, runs, rows, skipped_labels: skipped })
    }

    pub fn row(&self, label: usize) -> Option<&NmseRow> {
        self.rows.iter().find(|r| r.label == label)
    }

    /// Mean estimate per label.
    pub fn mean(&self) -> Vec<f64> {
        let n = self.runs.len() as f64;
        (0..self.truth.len()).map(|j| self.runs.iter().map(|r| r[j]).sum::<f64>() / n).collect()
    }

    /// CNMSE for every label with a positive true CCDF (not just those above
    /// the mass floor).
    pub fn cnmse_all(&self) -> Vec<(usize, f64)> {
        let true_ccdf = node_est::ccdf(&self.truth);
        let run_ccdfs: Vec<Vec<f64>> = self.runs.iter().map(|r| node_est::ccdf(r)).collect();
        (0..self.truth.len())
            .filter(|&j| true_ccdf[j] > 0.0)
            .map(|j| (j, nmse(run_ccdfs.iter().map(|c| c[j]), true_ccdf[j])))
            .collect()
    }

    /// `label,truth,nmse,cnmse`.
    pub fn write_nmse_csv<W: Write>(&self, labels: &LabelTable, mut w: W) -> std::io::Result<()> {
        writeln!(w, "label,truth,nmse,cnmse")?;
        for r in &self.rows {
            writeln!(w, "{},{},{},{}", labels.name(r.label as u32), r.truth, r.nmse, r.cnmse)?;
        }
        Ok(())
    }

    /// `run,label,estimate` for every nonzero estimate.
    pub fn write_runs_csv<W: Write>(&self, labels: &LabelTable, mut w: W) -> std::io::Result<()> {
        writeln!(w, "run,label,estimate")?;
        for (i, r) in self.runs.iter().enumerate() {
            for (j, x) in r.iter().enumerate() {
                if *x != 0.0 {
                    writeln!(w, "{i},{},{x}", labels.name(j as u32))?;
                }
            }
        }
        Ok(())
    }
}

/// Budget as an absolute count or a fraction of |V| (`"0.001V"`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BudgetSpec {
    Absolute(f64),
    Fraction(f64),
}

impl BudgetSpec {
    /// Resolves against `n` nodes, rounding fractions to the nearest
    /// integer and never below 1.
    pub fn resolve(self, n: usize) -> f64 {
        match self {
            BudgetSpec::Absolute(b) => b,
            BudgetSpec::Fraction(f) => (f * n as f64).round().max(1.0),
        }
    }
}

impl FromStr for BudgetSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("invalid budget {s:?} (expected e.g. 500 or 0.001V)"));
        let (num, frac) = match s.strip_suffix(['V', 'v']) {
            Some(p) => (p, true),
            None => (s, false),
        };
        let x: f64 = num.trim().parse().map_err(|_| bad())?;
        if !x.is_finite() || x <= 0.0 {
            return Err(bad());
        }
        Ok(if frac { BudgetSpec::Fraction(x) } else { BudgetSpec::Absolute(x) })
    }
}

impl fmt::Display for BudgetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BudgetSpec::Absolute(b) => write!(f, "{b}"),
            BudgetSpec::Fraction(x) => write!(f, "{x}V"),
        }
    }
}

/// One Monte Carlo experiment. `budget` is in cost units: crawl steps cost 1
/// and UNI draws cost `uni_cost`. With `charge_seeds = false` the walkers'
/// starting points are drawn uniformly for free and `budget` counts samples.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig {
    pub method: SamplingMethod,
    pub budget: f64,
    pub runs: usize,
    pub seed: u64,
    pub visibility: Visibility,
    pub uni_cost: f64,
    pub uni_charging: UniCharging,
    pub walkers: usize,
    pub charge_seeds: bool,
    pub beta: f64,
    pub exec: Execution,
}

impl Default for TrialConfig {
    fn default() -> Self {
        TrialConfig {
            method: SamplingMethod::Fs,
            budget: 100.0,
            runs: 1000,
            seed: 1,
            visibility: Visibility::NbrDegreesLabels,
            uni_cost: 1.0,
            uni_charging: UniCharging::Deterministic,
            walkers: 10,
            charge_seeds: false,
            beta: 0.5,
            exec: Execution::Parallel,
        }
    }
}

impl TrialConfig {
    pub fn validate(&self) -> Result<()> {
        if self.runs < 2 {
            return Err(Error::Config(format!("runs must be >= 2, got {}", self.runs)));
        }
        if self.budget < 1.0 {
            return Err(Error::Config(format!("budget {} resolves to no samples", self.budget)));
        }
        if self.uni_cost < 1.0 {
            return Err(Error::Config(format!("UNI cost must be >= 1, got {}", self.uni_cost)));
        }
        match self.method {
            SamplingMethod::Fs if self.walkers == 0 => {
                Err(Error::Config("FS needs at least one walker".into()))
            }
            SamplingMethod::Wrw if !self.visibility.reveals_neighbor_degrees() => Err(Error::Config(
                "weighted walk needs neighbor degrees (visibility >= nbr-degrees)".into(),
            )),
            SamplingMethod::Mxs => Err(Error::Config("MXS does not produce a weighted sample stream".into())),
            _ => Ok(()),
        }
    }

    fn walker_count(&self) -> usize {
        match self.method {
            SamplingMethod::Fs => self.walkers,
            SamplingMethod::Uni => 0,
            _ => 1,
        }
    }

    /// Samples one run can afford after paying for its seeds.
    pub fn samples_per_run(&self) -> usize {
        let b = self.budget;
        match self.method {
            SamplingMethod::Uni => (b / self.uni_cost).floor() as usize,
            _ if self.charge_seeds => (b - self.walker_count() as f64 * self.uni_cost).max(0.0).floor() as usize,
            _ => b.floor() as usize,
        }
    }
}

/// One sample stream for run `run` of `cfg`.
pub fn sample_run(g: &Graph, labels: &LabelTable, cfg: &TrialConfig, run: usize) -> Result<SampleStream> {
    let run_seed = seed::derive(cfg.seed, run as u64);
    let ledger = CostLedger::new(cfg.budget, cfg.uni_cost)?.with_uni_charging(cfg.uni_charging);
    let mut c = Crawler::new(g, labels, cfg.visibility, ledger)?;
    let n = cfg.samples_per_run();
    let free_seeds = |m: usize| -> Vec<NodeId> {
        let mut rng = seed::rng(seed::derive(run_seed, u64::MAX - 2));
        (0..m).map(|_| rng.random_range(0..g.node_count()) as NodeId).collect()
    };
    match cfg.method {
        SamplingMethod::Uni => sampling::uni_sample(&mut c, n, run_seed),
        SamplingMethod::Rw | SamplingMethod::Fs => {
            let m = cfg.walker_count();
            if n < m {
                return Err(Error::Config(format!(
                    "budget {} leaves {n} samples for {m} walkers",
                    cfg.budget
                )));
            }
            let seeds = if cfg.charge_seeds { FsSeeds::Uni(m) } else { FsSeeds::Given(free_seeds(m)) };
            let mut s = sampling::frontier_sample(&mut c, seeds, n, run_seed)?;
            s.method = cfg.method;
            Ok(s)
        }
        SamplingMethod::Wrw => {
            let start = if cfg.charge_seeds {
                let mut rng = seed::rng(seed::derive(run_seed, u64::MAX - 2));
                c.uni_draw(&mut rng).ok_or_else(|| Error::Config("budget cannot cover the seed".into()))?
            } else {
                free_seeds(1)[0]
            };
            let w = WalkWeights { beta: cfg.beta, directed: false };
            sampling::weighted_random_walk(&mut c, start, n, w, run_seed)
        }
        SamplingMethod::Mxs => Err(Error::Config("MXS does not produce a weighted sample stream".into())),
    }
}

/// Runs `cfg.runs` independent streams and maps each through `f`, in
/// parallel when `cfg.exec` allows. Results are in run order.
pub fn run_streams<T, F>(g: &Graph, labels: &LabelTable, cfg: &TrialConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&SampleStream) -> Result<T> + Sync + Send,
{
    cfg.validate()?;
    par::map_range(cfg.exec, cfg.runs, |i| sample_run(g, labels, cfg, i).and_then(|s| f(&s)))
        .into_iter()
        .collect()
}

/// Evaluate a node estimator on one stream.
pub fn apply_node_estimator(
    est: NodeEstimator,
    stream: &SampleStream,
    label_count: usize,
    subset_count: usize,
) -> Result<DensityEstimate> {
    match est {
        NodeEstimator::Simple => node_est::estimate_simple(stream, label_count),
        NodeEstimator::Neighbor => node_est::estimate_neighbor(stream, label_count),
        NodeEstimator::Mixture => Ok(node_est::estimate_mixture(stream, label_count, subset_count)?.0),
        NodeEstimator::DirectedNeighbor => node_est::estimate_directed_neighbor(stream, label_count),
        NodeEstimator::OutNeighbor { gamma } => node_est::estimate_out_neighbor(stream, label_count, gamma),
        NodeEstimator::Exact => Err(Error::Config("the exact oracle is not a stream estimator".into())),
    }
}

/// Fails before sampling when the visibility cannot feed the estimator.
pub fn check_node_capability(est: NodeEstimator, vis: Visibility, directed: bool) -> Result<()> {
    match est {
        NodeEstimator::Neighbor | NodeEstimator::Mixture if !vis.reveals_neighbor_labels() => {
            Err(Error::Capability("estimator requires neighbor degrees and labels".into()))
        }
        NodeEstimator::DirectedNeighbor if !directed => Err(Error::NotDirected),
        NodeEstimator::DirectedNeighbor if !vis.reveals_neighbor_labels() => {
            Err(Error::Capability("estimator requires neighbor in/out degrees and labels".into()))
        }
        NodeEstimator::OutNeighbor { .. }
            if !matches!(vis, Visibility::OutNbrWithIndeg | Visibility::NbrDegreesLabels) =>
        {
            Err(Error::Capability("estimator requires out-neighbors' in-degrees and labels".into()))
        }
        _ => Ok(()),
    }
}

/// Node-density Monte Carlo: `cfg.runs` estimates compared against the
/// exact density.
pub fn run_trials(
    g: &Graph,
    labels: &LabelTable,
    cfg: &TrialConfig,
    est: NodeEstimator,
    subset_count: usize,
) -> Result<MetricsTable> {
    check_node_capability(est, cfg.visibility, g.is_directed())?;
    let k = labels.label_count();
    let runs = run_streams(g, labels, cfg, |s| Ok(apply_node_estimator(est, s, k, subset_count)?.values))?;
    let truth = exact_node_density(labels).values;
    MetricsTable::from_runs(truth, runs, labels.values().is_some(), MassFloor::default(), g.node_count())
}

/// Second-smallest normalized-Laplacian eigenvalue and the matching
/// random-walk transition eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralAlpha {
    /// λ₂ of `I - D^{-1/2} A D^{-1/2}`.
    pub laplacian_lambda2: f64,
    /// Second-largest eigenvalue of `D^{-1} A`, i.e. `1 - λ₂`.
    pub transition_second: f64,
    /// Smallest eigenvalue of `D^{-1} A` (−1 iff bipartite).
    pub transition_min: f64,
}

pub const SPECTRAL_MAX_NODES: usize = 4000;

pub fn spectral_alpha(g: &Graph) -> Result<SpectralAlpha> {
    let n = g.node_count();
    if n < 2 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if n > SPECTRAL_MAX_NODES {
        return Err(Error::InvalidParameter(format!(
            "dense eigensolve limited to {SPECTRAL_MAX_NODES} nodes, graph has {n}"
        )));
    }
    let inv_sqrt: Vec<f64> = (0..n as NodeId).map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
    let mut l = DMatrix::<f64>::identity(n, n);
    for u in 0..n as NodeId {
        for &w in g.neighbors(u) {
            l[(u as usize, w as usize)] -= inv_sqrt[u as usize] * inv_sqrt[w as usize];
        }
    }
    let mut eig: Vec<f64> = SymmetricEigen::new(l).eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    Ok(SpectralAlpha {
        laplacian_lambda2: eig[1],
        transition_second: 1.0 - eig[1],
        transition_min: 1.0 - eig[n - 1],
    })
}

/// Monte Carlo comparison of a stationary RW against i.i.d.
/// degree-proportional sampling, both feeding the reweighted simple
/// estimator. Informational only.
#[derive(Debug, Clone, PartialEq)]
pub struct MixingBoundReport {
    pub alpha: SpectralAlpha,
    /// Summed per-label MSE.
    pub mse_rw: f64,
    pub mse_iid: f64,
    pub ratio: f64,
    /// Standard error of the ratio (delta method).
    pub ratio_se: f64,
    /// `1/(1 - α)` with α the transition second eigenvalue.
    pub bound_transition: f64,
    /// `1/(1 - λ₂)`; negative whenever λ₂ > 1.
    pub bound_laplacian: f64,
}

/// How one diagnostic replicate draws its `n` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiagnosticSampler {
    /// Random walk started from the stationary distribution.
    StationaryWalk,
    /// Independent draws with probability ∝ degree.
    IidDegree,
}

fn degree_draw<R: Rng>(cum: &[u64], rng: &mut R) -> NodeId {
    let x = rng.random_range(0..*cum.last().unwrap());
    cum.partition_point(|&c| c <= x) as NodeId
}

/// Squared error (summed over labels) of the simple estimator for one
/// replicate.
fn diagnostic_sq_error(
    g: &Graph,
    labels: &LabelTable,
    truth: &[f64],
    cum: &[u64],
    n: usize,
    sampler: DiagnosticSampler,
    seed: u64,
) -> f64 {
    let mut rng = seed::rng(seed);
    let mut sums = vec![0.0; truth.len()];
    let mut total = 0.0;
    let mut cur = degree_draw(cum, &mut rng);
    for _ in 0..n {
        cur = match sampler {
            DiagnosticSampler::IidDegree => degree_draw(cum, &mut rng),
            DiagnosticSampler::StationaryWalk => {
                let nb = g.neighbors(cur);
                nb[rng.random_range(0..nb.len())]
            }
        };
        let w = 1.0 / g.degree(cur) as f64;
        sums[labels.label(cur) as usize] += w;
        total += w;
    }
    sums.iter().zip(truth).map(|(s, t)| (s / total - t).powi(2)).sum()
}

/// Per-replicate squared errors for one sampler.
pub fn diagnostic_errors(
    g: &Graph,
    labels: &LabelTable,
    n: usize,
    runs: usize,
    sampler: DiagnosticSampler,
    seed: u64,
    exec: Execution,
) -> Vec<f64> {
    let truth = exact_node_density(labels).values;
    let mut cum = Vec::with_capacity(g.node_count());
    let mut acc = 0u64;
    for v in 0..g.node_count() as NodeId {
        acc += g.degree(v) as u64;
        cum.push(acc);
    }
    par::map_range(exec, runs, |i| {
        diagnostic_sq_error(g, labels, &truth, &cum, n, sampler, seed::derive(seed, i as u64))
    })
}

pub fn mixing_bound_diagnostic(
    g: &Graph,
    labels: &LabelTable,
    n: usize,
    runs: usize,
    seed: u64,
    exec: Execution,
) -> Result<MixingBoundReport> {
    if g.is_bipartite() {
        return Err(Error::Bipartite);
    }
    let alpha = spectral_alpha(g)?;
    let rw = diagnostic_errors(g, labels, n, runs, DiagnosticSampler::StationaryWalk, seed::derive(seed, 0), exec);
    let iid = diagnostic_errors(g, labels, n, runs, DiagnosticSampler::IidDegree, seed::derive(seed, 1), exec);
    let (m_rw, se_rw) = mean_se(&rw);
    let (m_iid, se_iid) = mean_se(&iid);
    let ratio = m_rw / m_iid;
    let ratio_se = ratio * ((se_rw / m_rw).powi(2) + (se_iid / m_iid).powi(2)).sqrt();
    Ok(MixingBoundReport {
        alpha,
        mse_rw: m_rw,
        mse_iid: m_iid,
        ratio,
        ratio_se,
        bound_transition: 1.0 / (1.0 - alpha.transition_second),
        bound_laplacian: 1.0 / (1.0 - alpha.laplacian_lambda2),
    })
}

/// Discrete power-law tail exponent by the approximate maximum-likelihood
/// estimator `1 + n / Σ ln(x / (x_min - 1/2))` over `x ≥ x_min`.
pub fn power_law_exponent(degrees: impl IntoIterator<Item = usize>, x_min: usize) -> Option<f64> {
    let base = x_min as f64 - 0.5;
    let (mut n, mut s) = (0usize, 0.0);
    for d in degrees.into_iter().filter(|&d| d >= x_min) {
        n += 1;
        s += (d as f64 / base).ln();
    }
    (n > 0 && s > 0.0).then(|| 1.0 + n as f64 / s)
}

/// Recall summary row `method,budget,recall_mean,recall_std,seeds`.
pub fn write_recall_summary<W: Write>(method: &str, budget: f64, recalls: &[f64], mut w: W) -> std::io::Result<()> {
    let (mean, se) = mean_se(recalls);
    let sd = se * (recalls.len() as f64).sqrt();
    writeln!(w, "{method},{budget},{mean},{sd},{}", recalls.len())
}
