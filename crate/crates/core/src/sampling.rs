//! UNI, RW, FS and WRW samplers and the [`SampleStream`] they produce.
//!
//! Walk conventions:
//! - a walker's start node is known for free (its reply is recorded as a
//!   seed); every step queries the node moved to and charges one unit;
//! - FS picks the walker to move with probability proportional to the degree
//!   of its current node, which is the embedded jump chain of the
//!   exponential-clock formulation, and stops after exactly `n` samples;
//! - every walker draws from its own stream derived from `(seed, walker)`,
//!   and the FS scheduler has a separate stream, so FS with one walker
//!   reproduces RW step for step.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::access::{Crawler, NeighborInfo, NodeAttrs, NodeReply, Visibility};
use crate::error::{Error, Result};
use crate::graph::NodeId;
use crate::seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SamplingMethod {
    Uni,
    Rw,
    Fs,
    Wrw,
    /// Greedy expansion (MXS); sampled nodes carry no stationary weight.
    Mxs,
}

impl SamplingMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SamplingMethod::Uni => "uni",
            SamplingMethod::Rw => "rw",
            SamplingMethod::Fs => "fs",
            SamplingMethod::Wrw => "wrw",
            SamplingMethod::Mxs => "mxs",
        }
    }
}

impl fmt::Display for SamplingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SamplingMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "uni" => Ok(SamplingMethod::Uni),
            "rw" => Ok(SamplingMethod::Rw),
            "fs" => Ok(SamplingMethod::Fs),
            "wrw" => Ok(SamplingMethod::Wrw),
            "mxs" => Ok(SamplingMethod::Mxs),
            other => Err(Error::Config(format!("unknown sampling method {other:?}"))),
        }
    }
}

/// Non-normalised stationary weight π̂ used to reweight samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PiHatRule {
    Uniform,
    Degree,
    /// Sum of incident edge weights.
    Weight,
    /// Not a stationary sampler; estimators refuse such streams.
    None,
}

impl PiHatRule {
    pub fn as_str(self) -> &'static str {
        match self {
            PiHatRule::Uniform => "uniform",
            PiHatRule::Degree => "degree",
            PiHatRule::Weight => "weight",
            PiHatRule::None => "none",
        }
    }
}

impl FromStr for PiHatRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(PiHatRule::Uniform),
            "degree" => Ok(PiHatRule::Degree),
            "weight" => Ok(PiHatRule::Weight),
            "none" => Ok(PiHatRule::None),
            other => Err(Error::Config(format!("unknown pi-hat rule {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Sample {
    reply: u32,
    pi_hat: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Traversal {
    from: u32,
    to: u32,
}

/// Ordered record of sampled nodes, their replies and traversed edges.
/// Replies are interned per node; the graph is immutable so a revisit
/// returns the same reply.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleStream {
    pub method: SamplingMethod,
    pub pi_hat_rule: PiHatRule,
    pub seed: u64,
    pub visibility: Visibility,
    /// Whether the underlying graph is directed.
    pub directed: bool,
    /// The budget ran out before the requested sample count was reached.
    pub exhausted: bool,
    replies: Vec<NodeReply>,
    index: HashMap<NodeId, u32>,
    samples: Vec<Sample>,
    traversed: Vec<Traversal>,
    seeds: Vec<u32>,
}

impl SampleStream {
    pub fn new(
        method: SamplingMethod,
        pi_hat_rule: PiHatRule,
        seed: u64,
        visibility: Visibility,
        directed: bool,
    ) -> Self {
        SampleStream {
            method,
            pi_hat_rule,
            seed,
            visibility,
            directed,
            exhausted: false,
            replies: Vec::new(),
            index: HashMap::new(),
            samples: Vec::new(),
            traversed: Vec::new(),
            seeds: Vec::new(),
        }
    }

    fn intern_with(&mut self, v: NodeId, make: impl FnOnce() -> NodeReply) -> u32 {
        if let Some(&idx) = self.index.get(&v) {
            return idx;
        }
        let idx = self.replies.len() as u32;
        self.replies.push(make());
        self.index.insert(v, idx);
        idx
    }

    pub(crate) fn intern(&mut self, crawler: &Crawler<'_>, v: NodeId) -> u32 {
        self.intern_with(v, || crawler.reply(v))
    }

    pub(crate) fn push_seed(&mut self, reply: u32) {
        self.seeds.push(reply);
    }

    pub(crate) fn push_sample(&mut self, reply: u32, pi_hat: f64) {
        self.samples.push(Sample { reply, pi_hat });
    }

    pub(crate) fn push_traversal(&mut self, from: u32, to: u32) {
        self.traversed.push(Traversal { from, to });
    }

    /// Replay a fixed visit sequence without charging the crawler. π̂ follows
    /// `rule` (weight-proportional replays are not supported). Non-UNI
    /// methods record a traversal between consecutive visits, which must
    /// then be adjacent.
    pub fn from_visits(
        crawler: &Crawler<'_>,
        method: SamplingMethod,
        rule: PiHatRule,
        visits: &[NodeId],
    ) -> Result<SampleStream> {
        let mut s = SampleStream::new(method, rule, 0, crawler.visibility(), crawler.is_directed());
        let mut prev: Option<u32> = None;
        for &v in visits {
            crawler.check_node(v)?;
            let r = s.intern(crawler, v);
            let pi = match rule {
                PiHatRule::Uniform => 1.0,
                PiHatRule::Degree => s.reply_at(r).degree() as f64,
                PiHatRule::Weight | PiHatRule::None => {
                    return Err(Error::Config(format!("cannot replay visits under the {} rule", rule.as_str())))
                }
            };
            if pi <= 0.0 {
                return Err(Error::IsolatedNode(v));
            }
            s.push_sample(r, pi);
            if method != SamplingMethod::Uni {
                if let Some(p) = prev {
                    if s.reply_at(p).neighbors.binary_search_by_key(&v, |w| w.id()).is_err() {
                        return Err(Error::InvalidParameter(format!(
                            "visits {} and {v} are not adjacent",
                            s.reply_at(p).id()
                        )));
                    }
                    s.push_traversal(p, r);
                }
            }
            prev = Some(r);
        }
        Ok(s)
    }

    pub(crate) fn reply_index(&self, v: NodeId) -> Option<u32> {
        self.index.get(&v).copied()
    }

    pub(crate) fn reply_at(&self, idx: u32) -> &NodeReply {
        &self.replies[idx as usize]
    }

    /// Number of samples n.
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// `(reply, π̂)` of the i-th sample.
    pub fn sample(&self, i: usize) -> (&NodeReply, f64) {
        let s = self.samples[i];
        (&self.replies[s.reply as usize], s.pi_hat)
    }

    pub fn samples(&self) -> impl ExactSizeIterator<Item = (&NodeReply, f64)> + '_ {
        self.samples.iter().map(|s| (&self.replies[s.reply as usize], s.pi_hat))
    }

    pub fn sampled_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.samples.iter().map(|s| self.replies[s.reply as usize].id())
    }

    /// Walker start nodes (empty for UNI).
    pub fn seeds(&self) -> impl Iterator<Item = &NodeReply> + '_ {
        self.seeds.iter().map(|&i| &self.replies[i as usize])
    }

    /// Traversed edges `(from, to)` with both endpoints' replies.
    pub fn traversals(&self) -> impl ExactSizeIterator<Item = (&NodeReply, &NodeReply)> + '_ {
        self.traversed
            .iter()
            .map(|t| (&self.replies[t.from as usize], &self.replies[t.to as usize]))
    }

    pub fn traversed_edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.traversals().map(|(a, b)| (a.id(), b.id()))
    }

    /// Every node whose reply is known (seeds and samples).
    pub fn known_replies(&self) -> &[NodeReply] {
        &self.replies
    }

    /// Sub-stream of samples `range`, keeping the matching traversals when
    /// the stream has one traversal per sample.
    pub fn slice(&self, range: std::ops::Range<usize>) -> SampleStream {
        let mut out =
            SampleStream::new(self.method, self.pi_hat_rule, self.seed, self.visibility, self.directed);
        let aligned = self.traversed.len() == self.samples.len();
        for i in range {
            let s = self.samples[i];
            let r = out.intern_with(self.replies[s.reply as usize].id(), || {
                self.replies[s.reply as usize].clone()
            });
            out.push_sample(r, s.pi_hat);
            if aligned {
                let t = self.traversed[i];
                let from = out.intern_with(self.replies[t.from as usize].id(), || {
                    self.replies[t.from as usize].clone()
                });
                out.push_traversal(from, r);
            }
        }
        out
    }

    /// Line-oriented record file:
    ///
    /// ```text
    /// M <method> <pi-hat rule> <seed> <visibility> <exhausted> <directed>
    /// W <node> <label> <degree> <in> <out> <neighbors...>
    /// S <node> <label> <degree> <in> <out> <pi-hat> <neighbors...>
    /// E <u> <v>
    /// ```
    ///
    /// Neighbor tokens are `id:flags:degree:in:out:label` where flags is a
    /// subset of `oi` (or `-`) and absent attributes are `-`.
    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "# netsample stream v1")?;
        writeln!(
            w,
            "M {} {} {} {} {} {}",
            self.method,
            self.pi_hat_rule.as_str(),
            self.seed,
            self.visibility,
            self.exhausted as u8,
            self.directed as u8
        )?;
        for &s in &self.seeds {
            let r = &self.replies[s as usize];
            write!(w, "W {}", own_fields(r))?;
            write_neighbors(&mut w, r)?;
        }
        for s in &self.samples {
            let r = &self.replies[s.reply as usize];
            write!(w, "S {} {}", own_fields(r), s.pi_hat)?;
            write_neighbors(&mut w, r)?;
        }
        for t in &self.traversed {
            writeln!(
                w,
                "E {} {}",
                self.replies[t.from as usize].id(),
                self.replies[t.to as usize].id()
            )?;
        }
        Ok(())
    }

    pub fn read_from<R: BufRead>(r: R) -> Result<SampleStream> {
        let path = std::path::PathBuf::from("<stream>");
        let mut stream: Option<SampleStream> = None;
        for (idx, line) in r.lines().enumerate() {
            let line = line.map_err(|e| Error::io(&path, e))?;
            let perr = |msg: &str| Error::Parse { path: path.clone(), line: idx + 1, msg: msg.into() };
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            if toks[0] == "M" {
                if toks.len() != 7 {
                    return Err(perr("M record needs 6 fields"));
                }
                let mut s = SampleStream::new(
                    toks[1].parse().map_err(|_| perr("bad method"))?,
                    toks[2].parse().map_err(|_| perr("bad pi-hat rule"))?,
                    toks[3].parse().map_err(|_| perr("bad seed"))?,
                    toks[4].parse().map_err(|_| perr("bad visibility"))?,
                    toks[6] == "1",
                );
                s.exhausted = toks[5] == "1";
                stream = Some(s);
                continue;
            }
            let s = stream.as_mut().ok_or_else(|| perr("record before M header"))?;
            match toks[0] {
                "W" | "S" => {
                    let is_sample = toks[0] == "S";
                    let own_len = 5;
                    let fixed = own_len + 1 + is_sample as usize;
                    if toks.len() < fixed {
                        return Err(perr("truncated node record"));
                    }
                    let reply = parse_reply(&toks[1..=own_len], &toks[fixed..]).ok_or_else(|| perr("bad node record"))?;
                    let id = reply.id();
                    let r = s.intern_with(id, || reply);
                    if is_sample {
                        let pi: f64 = toks[own_len + 1].parse().map_err(|_| perr("bad pi-hat"))?;
                        s.push_sample(r, pi);
                    } else {
                        s.push_seed(r);
                    }
                }
                "E" => {
                    if toks.len() != 3 {
                        return Err(perr("E record needs 2 fields"));
                    }
                    let u: NodeId = toks[1].parse().map_err(|_| perr("bad node id"))?;
                    let v: NodeId = toks[2].parse().map_err(|_| perr("bad node id"))?;
                    let (a, b) = (
                        s.reply_index(u).ok_or_else(|| perr("edge endpoint without reply"))?,
                        s.reply_index(v).ok_or_else(|| perr("edge endpoint without reply"))?,
                    );
                    s.push_traversal(a, b);
                }
                _ => return Err(perr("unknown record type")),
            }
        }
        stream.ok_or_else(|| Error::Parse { path, line: 0, msg: "missing M header".into() })
    }
}

fn own_fields(r: &NodeReply) -> String {
    format!("{} {} {} {} {}", r.id(), r.label(), r.degree(), r.in_degree(), r.out_degree())
}

fn opt(x: Option<u32>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn write_neighbors<W: Write>(w: &mut W, r: &NodeReply) -> std::io::Result<()> {
    for n in &r.neighbors {
        let flags = match (n.out, n.inc) {
            (true, true) => "oi",
            (true, false) => "o",
            (false, true) => "i",
            (false, false) => "-",
        };
        write!(
            w,
            " {}:{}:{}:{}:{}:{}",
            n.id(),
            flags,
            opt(n.attrs.degree),
            opt(n.attrs.in_degree),
            opt(n.attrs.out_degree),
            opt(n.attrs.label)
        )?;
    }
    writeln!(w)
}

fn parse_reply(own: &[&str], nbrs: &[&str]) -> Option<NodeReply> {
    let own = NodeAttrs {
        id: own[0].parse().ok()?,
        label: Some(own[1].parse().ok()?),
        degree: Some(own[2].parse().ok()?),
        in_degree: Some(own[3].parse().ok()?),
        out_degree: Some(own[4].parse().ok()?),
    };
    let parse_opt = |s: &str| -> Option<Option<u32>> {
        if s == "-" {
            Some(None)
        } else {
            s.parse().ok().map(Some)
        }
    };
    let mut neighbors = Vec::with_capacity(nbrs.len());
    for tok in nbrs {
        let f: Vec<&str> = tok.split(':').collect();
        if f.len() != 6 {
            return None;
        }
        neighbors.push(NeighborInfo {
            attrs: NodeAttrs {
                id: f[0].parse().ok()?,
                degree: parse_opt(f[2])?,
                in_degree: parse_opt(f[3])?,
                out_degree: parse_opt(f[4])?,
                label: parse_opt(f[5])?,
            },
            out: f[1].contains('o'),
            inc: f[1].contains('i'),
        });
    }
    if neighbors.len() != own.degree? as usize {
        return None;
    }
    Some(NodeReply { own, neighbors })
}

fn walker_rng(seed: u64, walker: usize) -> ChaCha8Rng {
    seed::rng(seed::derive(seed, walker as u64))
}

/// `n` i.i.d. uniform nodes (with replacement), each charged the UNI cost.
pub fn uni_sample(crawler: &mut Crawler<'_>, n: usize, seed: u64) -> Result<SampleStream> {
    let mut rng = seed::rng(seed::derive(seed, seed::UNI_STREAM));
    let mut stream = SampleStream::new(SamplingMethod::Uni, PiHatRule::Uniform, seed, crawler.visibility(), crawler.is_directed());
    for _ in 0..n {
        match crawler.uni_draw(&mut rng) {
            Some(v) => {
                let r = stream.intern(crawler, v);
                stream.push_sample(r, 1.0);
            }
            None => {
                stream.exhausted = true;
                break;
            }
        }
    }
    Ok(stream)
}

/// Simple random walk of `n` steps on the undirected view.
pub fn random_walk(crawler: &mut Crawler<'_>, start: NodeId, n: usize, seed: u64) -> Result<SampleStream> {
    let mut s = frontier_walk(crawler, FsSeeds::Given(vec![start]), n, seed)?;
    s.method = SamplingMethod::Rw;
    Ok(s)
}

/// How FS walkers are initialised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FsSeeds {
    /// Caller-supplied start nodes; their neighborhoods are free.
    Given(Vec<NodeId>),
    /// `m` UNI draws, each charged the UNI cost.
    Uni(usize),
}

/// Frontier sampling with `m` walkers, producing exactly `n` samples unless
/// the budget runs out first.
pub fn frontier_sample(crawler: &mut Crawler<'_>, seeds: FsSeeds, n: usize, seed: u64) -> Result<SampleStream> {
    let m = match &seeds {
        FsSeeds::Given(v) => v.len(),
        FsSeeds::Uni(m) => *m,
    };
    if n < m {
        return Err(Error::InvalidParameter(format!("sample count {n} < walker count {m}")));
    }
    frontier_walk(crawler, seeds, n, seed)
}

fn frontier_walk(crawler: &mut Crawler<'_>, seeds: FsSeeds, n: usize, seed: u64) -> Result<SampleStream> {
    let mut stream = SampleStream::new(SamplingMethod::Fs, PiHatRule::Degree, seed, crawler.visibility(), crawler.is_directed());
    let starts = match seeds {
        FsSeeds::Given(v) => {
            for &s in &v {
                crawler.check_node(s)?;
            }
            v
        }
        FsSeeds::Uni(m) => {
            let mut rng = seed::rng(seed::derive(seed, seed::UNI_STREAM));
            let mut v = Vec::with_capacity(m);
            for _ in 0..m {
                match crawler.uni_draw(&mut rng) {
                    Some(x) => v.push(x),
                    None => {
                        return Err(Error::Config(format!(
                            "budget {} cannot cover {m} UNI seeds at cost {}",
                            crawler.ledger.budget, crawler.ledger.uni_cost
                        )))
                    }
                }
            }
            v
        }
    };
    let m = starts.len();
    if m == 0 {
        return Err(Error::InvalidParameter("frontier sampling needs at least one walker".into()));
    }
    let mut walkers: Vec<(u32, ChaCha8Rng)> = Vec::with_capacity(m);
    for (k, &s) in starts.iter().enumerate() {
        let r = stream.intern(crawler, s);
        if stream.reply_at(r).degree() == 0 {
            return Err(Error::IsolatedNode(s));
        }
        stream.push_seed(r);
        walkers.push((r, walker_rng(seed, k)));
    }
    let mut sched = seed::rng(seed::derive(seed, seed::SCHEDULER_STREAM));
    let mut degree_sum: u64 = walkers.iter().map(|w| stream.reply_at(w.0).degree() as u64).sum();

    for _ in 0..n {
        let k = if m == 1 {
            0
        } else {
            let mut x = sched.random_range(0..degree_sum);
            let mut k = 0;
            loop {
                let d = stream.reply_at(walkers[k].0).degree() as u64;
                if x < d {
                    break k;
                }
                x -= d;
                k += 1;
            }
        };
        let (cur, rng) = &mut walkers[k];
        let here = stream.reply_at(*cur);
        let next = here.neighbors[rng.random_range(0..here.neighbors.len())].id();
        let old_degree = here.degree() as u64;
        if !crawler.charge_query(next) {
            stream.exhausted = true;
            break;
        }
        let r = stream.intern(crawler, next);
        let new_degree = stream.reply_at(r).degree() as u64;
        stream.push_sample(r, new_degree as f64);
        stream.push_traversal(*cur, r);
        *cur = r;
        degree_sum = degree_sum - old_degree + new_degree;
    }
    Ok(stream)
}

/// Edge weights for a weighted random walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkWeights {
    pub beta: f64,
    /// Use `d^(I) + d^(O)` in place of the undirected degree.
    pub directed: bool,
}

impl WalkWeights {
    fn degree_of(&self, a: &NodeAttrs) -> Result<f64> {
        let d = if self.directed { a.total_degree() } else { a.degree };
        d.map(f64::from).ok_or_else(|| {
            Error::Capability("weighted walk needs neighbor degrees (visibility >= nbr-degrees)".into())
        })
    }

    /// One-step transition probabilities from `u`, in reply order.
    pub fn transition_probabilities(&self, u: &NodeReply) -> Result<Vec<f64>> {
        let w = self.neighbor_weights(u)?;
        let total: f64 = w.iter().sum();
        Ok(w.into_iter().map(|x| x / total).collect())
    }

    /// Weights `w(u, w)` of every neighbor of `u`, in reply order.
    pub fn neighbor_weights(&self, u: &NodeReply) -> Result<Vec<f64>> {
        let du = self.degree_of(&u.own)?;
        u.neighbors
            .iter()
            .map(|n| Ok((du * self.degree_of(&n.attrs)?).powf(self.beta)))
            .collect()
    }
}

/// Weighted random walk on the undirected view with
/// `w(u, v) = (d_u d_v)^β` (or total in+out degrees when `directed`).
/// π̂_v is the weighted degree `Σ_w w(v, w)`.
pub fn weighted_random_walk(
    crawler: &mut Crawler<'_>,
    start: NodeId,
    n: usize,
    weights: WalkWeights,
    seed: u64,
) -> Result<SampleStream> {
    if !crawler.visibility().reveals_neighbor_degrees() {
        return Err(Error::Capability(format!(
            "weighted walk needs neighbor degrees, visibility is {}",
            crawler.visibility()
        )));
    }
    if !weights.beta.is_finite() {
        return Err(Error::InvalidParameter(format!("beta {} must be finite", weights.beta)));
    }
    crawler.check_node(start)?;
    let mut stream = SampleStream::new(SamplingMethod::Wrw, PiHatRule::Weight, seed, crawler.visibility(), crawler.is_directed());
    let mut cur = stream.intern(crawler, start);
    if stream.reply_at(cur).degree() == 0 {
        return Err(Error::IsolatedNode(start));
    }
    stream.push_seed(cur);
    let mut rng = walker_rng(seed, 0);
    let mut cur_weights = weights.neighbor_weights(stream.reply_at(cur))?;
    for _ in 0..n {
        let mut pick = cur_weights.len() - 1;
        if weights.beta == 0.0 {
            // Uniform weights: draw exactly as the simple walk does.
            pick = rng.random_range(0..cur_weights.len());
        } else {
            let total: f64 = cur_weights.iter().sum();
            let mut x = rng.random::<f64>() * total;
            for (i, w) in cur_weights.iter().enumerate() {
                if x < *w {
                    pick = i;
                    break;
                }
                x -= w;
            }
        }
        let next = stream.reply_at(cur).neighbors[pick].id();
        if !crawler.charge_query(next) {
            stream.exhausted = true;
            break;
        }
        let r = stream.intern(crawler, next);
        cur_weights = weights.neighbor_weights(stream.reply_at(r))?;
        stream.push_sample(r, cur_weights.iter().sum());
        stream.push_traversal(cur, r);
        cur = r;
    }
    Ok(stream)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::access::{CostLedger, Visibility};
    use crate::graph::{Graph, LabelTable};

    fn labels(n: usize) -> LabelTable {
        LabelTable::new(vec![0; n], vec!["x".into()]).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, false, (0..n as NodeId - 1).map(|i| (i, i + 1))).unwrap().0
    }

    fn k3() -> Graph {
        Graph::from_edges(3, false, [(0, 1), (1, 2), (0, 2)]).unwrap().0
    }

    #[test]
    fn uni_charges_c_per_hit() {
        let g = k3();
        let l = labels(3);
        let mut c = Crawler::new(&g, &l, Visibility::SelfOnly, CostLedger::new(1e9, 77.0).unwrap()).unwrap();
        let s = uni_sample(&mut c, 100, 1).unwrap();
        assert_eq!(s.len(), 100);
        assert_eq!(c.ledger.spent_uni_attempts, 7700.0);
        assert_eq!(s.traversals().len(), 0);
        assert!(s.samples().all(|(_, pi)| pi == 1.0));
    }

    #[test]
    fn uni_budget_cut_returns_partial_stream() {
        let g = k3();
        let l = labels(3);
        let mut c = Crawler::new(&g, &l, Visibility::SelfOnly, CostLedger::new(5.0 * 77.0, 77.0).unwrap()).unwrap();
        let s = uni_sample(&mut c, 10, 1).unwrap();
        assert_eq!(s.len(), 5);
        assert!(s.exhausted);
    }

    #[test]
    fn uni_frequencies_are_uniform() {
        let g = k3();
        let l = labels(3);
        let mut c = Crawler::new(&g, &l, Visibility::SelfOnly, CostLedger::unlimited()).unwrap();
        let s = uni_sample(&mut c, 300_000, 9).unwrap();
        let mut counts = [0usize; 3];
        for v in s.sampled_ids() {
            counts[v as usize] += 1;
        }
        for c in counts {
            assert!((c as f64 / 3e5 - 1.0 / 3.0).abs() < 0.005);
        }
    }

    #[test]
    fn walk_from_leaf_steps_to_its_only_neighbor() {
        let g = path(3);
        let l = labels(3);
        let mut c = Crawler::new(&g, &l, Visibility::SelfOnly, CostLedger::unlimited()).unwrap();
        let s = random_walk(&mut c, 0, 2, 5).unwrap();
        assert_eq!(s.sample(0).0.id(), 1);
        assert_eq!(s.traversed_edges().next(), Some((0, 1)));
    }

    #[test]
    fn walk_accounting() {
        let g = path(6);
        let l = labels(6);
        let mut c = Crawler::new(&g, &l, Visibility::SelfOnly, CostLedger::unlimited()).unwrap();
        let s = random_walk(&mut c, 2, 500, 5).unwrap();
        assert_eq!(s.len(), 500);
        assert_eq!(s.traversals().len(), 500);
        assert_eq!(c.ledger.spent_crawl, 500);
        for (u, v) in s.traversed_edges() {
            assert!(g.has_edge(u, v));
        }
        assert!(s.samples().all(|(r, pi)| pi == r.degree() as f64));
    }

    #[test]
    fn isolated_start_is_error() {
        let (g, _) = Graph::from_edges(3, false, [(0, 1)]).unwrap();
        let l = labels(3);
        let mut c = Crawler::new(&g, &l, Visibility::NbrDegrees, CostLedger::unlimited()).unwrap();
        assert!(matches!(random_walk(&mut c, 2, 5, 1), Err(Error::IsolatedNode(2))));
        let w = WalkWeights { beta: 1.0, directed: false };
        assert!(matches!(weighted_random_walk(&mut c, 2, 5, w, 1), Err(Error::IsolatedNode(2))));
        assert!(matches!(
            frontier_sample(&mut c, FsSeeds::Given(vec![0, 2]), 5, 1),
            Err(Error::IsolatedNode(2))
        ));
    }

    #[test]
    fn fs_with_one_walker_is_rw() {
        let g = crate::graph::generate_synthetic(crate::graph::SyntheticKind::power_law(2.5), 300, 3)
            .unwrap()
            .graph
            .largest_connected_component();
        let l = labels(g.node_count());
        let mut c1 = Crawler::new(&g, &l, Visibility::SelfOnly, CostLedger::unlimited()).unwrap();
        let mut c2 = Crawler::new(&g, &l, Visibility::SelfOnly, CostLedger::unlimited()).unwrap();
        let a = random_walk(&mut c1, 0, 2000, 11).unwrap();
        let b = frontier_sample(&mut c2, FsSeeds::Given(vec![0]), 2000, 11).unwrap();
        assert!(a.traversed_edges().eq(b.traversed_edges()));
    }

    #[test]
    fn fs_uni_seeding_charges() {
        let g = crate::graph::generate_synthetic(crate::graph::SyntheticKind::ErdosRenyi { p: 0.002 }, 10_000, 3)
            .unwrap()
            .graph
            .largest_connected_component();
        let l = labels(g.node_count());
        let budget = 100.0 * 77.0 + 5000.0;
        let mut c = Crawler::new(&g, &l, Visibility::SelfOnly, CostLedger::new(budget, 77.0).unwrap()).unwrap();
        let s = frontier_sample(&mut c, FsSeeds::Uni(100), 5000, 2).unwrap();
        assert_eq!(s.len(), 5000);
        assert_eq!(s.seeds().count(), 100);
        assert_eq!(c.ledger.spent_uni_attempts, 7700.0);
        assert_eq!(c.ledger.spent_crawl, 5000);
        assert!(!s.exhausted);
    }

    #[test]
    fn fs_rejects_too_few_samples() {
        let g = k3();
        let l = labels(3);
        let mut c = Crawler::new(&g, &l, Visibility::SelfOnly, CostLedger::unlimited()).unwrap();
        assert!(frontier_sample(&mut c, FsSeeds::Given(vec![0, 1, 2]), 2, 1).is_err());
        assert!(frontier_sample(&mut c, FsSeeds::Given(vec![]), 2, 1).is_err());
    }

    #[test]
    fn wrw_needs_neighbor_degrees() {
        let g = k3();
        let l = labels(3);
        let mut c = Crawler::new(&g, &l, Visibility::SelfOnly, CostLedger::unlimited()).unwrap();
        let w = WalkWeights { beta: 0.5, directed: false };
        assert!(matches!(weighted_random_walk(&mut c, 0, 5, w, 1), Err(Error::Capability(_))));
    }

    #[test]
    fn wrw_leaf_moves_to_hub() {
        let (g, _) = Graph::from_edges(5, false, (1..5).map(|v| (0, v))).unwrap();
        let l = labels(5);
        for beta in [0.0, 0.5, 1.0, 3.0] {
            let mut c = Crawler::new(&g, &l, Visibility::NbrDegrees, CostLedger::unlimited()).unwrap();
            let s = weighted_random_walk(&mut c, 3, 1, WalkWeights { beta, directed: false }, 4).unwrap();
            assert_eq!(s.sample(0).0.id(), 0);
            // Hub weighted degree: 4 edges of weight (4*1)^β.
            assert!((s.sample(0).1 - 4.0 * 4f64.powf(beta)).abs() < 1e-9);
        }
    }

    #[test]
    fn wrw_with_zero_beta_matches_rw_distribution() {
        // β = 0 gives uniform neighbor choice; check one-step frequencies.
        let g = path(4);
        let l = labels(4);
        let mut hits = 0;
        let trials = 20_000;
        for t in 0..trials {
            let mut c = Crawler::new(&g, &l, Visibility::NbrDegrees, CostLedger::unlimited()).unwrap();
            let s = weighted_random_walk(&mut c, 1, 1, WalkWeights { beta: 0.0, directed: false }, t).unwrap();
            hits += (s.sample(0).0.id() == 2) as usize;
        }
        let p = hits as f64 / trials as f64;
        assert!((p - 0.5).abs() < 0.015, "{p}");
    }

    #[test]
    fn stream_roundtrips_through_record_file() {
        let (g, _) = Graph::from_edges(4, true, [(0, 1), (1, 0), (1, 2), (3, 2), (2, 0)]).unwrap();
        let l = LabelTable::new(vec![0, 1, 0, 1], vec!["a".into(), "b".into()]).unwrap();
        for vis in [Visibility::SelfOnly, Visibility::NbrDegreesLabels, Visibility::OutNbrWithIndeg] {
            let mut c = Crawler::new(&g, &l, vis, CostLedger::unlimited()).unwrap();
            let s = frontier_sample(&mut c, FsSeeds::Given(vec![0, 3]), 50, 8).unwrap();
            let mut buf = Vec::new();
            s.write_to(&mut buf).unwrap();
            let back = SampleStream::read_from(&buf[..]).unwrap();
            let mut buf2 = Vec::new();
            back.write_to(&mut buf2).unwrap();
            assert_eq!(buf, buf2);
            assert_eq!(back.len(), s.len());
            assert!(back.samples().zip(s.samples()).all(|(a, b)| a == b));
            assert!(back.traversed_edges().eq(s.traversed_edges()));
        }
    }

    #[test]
    fn malformed_stream_file() {
        assert!(SampleStream::read_from(&b"S 0 0 1 1 1 1.0 1:oi:-:-:-:-\n"[..]).is_err());
        assert!(SampleStream::read_from(&b"M fs degree 1 self-only 0 0\nS 0 0 2 1 1 1.0 1:oi:-:-:-:-\n"[..]).is_err());
        assert!(SampleStream::read_from(&b"M fs degree 1 self-only 0 0\nE 0 1\n"[..]).is_err());
    }
}
