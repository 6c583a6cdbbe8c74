use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::Context;
use clap::ValueEnum;
use log::{info, warn};
use netsample::detection::{
    exact_top_n, mxs_detect, rw_detect, wrw_detect, xs_detect, CandidatePool, DegreeScore, DetectionResult,
};
use netsample::edge_est::{
    estimate_edge_neighbor, estimate_edge_neighbor_directed, estimate_edge_traversal,
    estimate_edge_traversal_directed, EdgeDensityEstimate,
};
use netsample::eval::{
    apply_node_estimator, check_node_capability, delta, exact_edge_density, mean_se, power_law_exponent,
    run_streams, run_trials, sample_run, write_recall_summary, TrialConfig,
};
use netsample::graph::{generate_synthetic, load_edge_list, SyntheticKind};
use netsample::node_est::NodeEstimator;
use netsample::par::{self, Execution};
use netsample::sampling::WalkWeights;
use netsample::shortpath::{discover_short_path, exact_distance, write_path_row, Strategy, PATHS_CSV_HEADER};
use netsample::{
    datasets, seed, CostLedger, Crawler, EdgeLabeler, Graph, LabelTable, NodeId, SampleStream,
    UniCharging,
};
use rand::Rng;

use crate::config::Resolved;
use crate::{
    Cli, Command, DatasetName, DetectArgs, DetectMethod, EdgeArgs, EdgeEstimatorArg, EdgeLabelsArg, GenerateArgs,
    Global, GraphKind, NodeArgs, NodeEstimatorArg, PathArgs, SampleArgs, SamplerArgs,
};

/// Exit code 2 for `Usage`, 1 for `Runtime`.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<netsample::Error> for Failure {
    fn from(e: netsample::Error) -> Self {
        use netsample::Error as E;
        match e {
            E::Capability(m) | E::Config(m) => Failure::Usage(m),
            E::Parse { .. } | E::Io { .. } | E::InvalidParameter(_) | E::NotDirected => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.into()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.into())
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

type Res<T> = Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Res<T> {
    Err(Failure::Usage(msg.into()))
}

struct Ctx {
    global: Global,
    seed: u64,
    exec: Execution,
    resolved: Resolved,
}

impl Ctx {
    fn directed(&self) -> bool {
        self.global.directed || self.global.dataset.is_some()
    }

    fn out(&self, name: &str) -> Res<BufWriter<File>> {
        let path = self.global.output_dir.join(name);
        let f = File::create(&path).with_context(|| format!("cannot create {}", path.display()))?;
        info!("writing {}", path.display());
        Ok(BufWriter::new(f))
    }

    fn write_sidecar(&self, command: &str) -> Res<()> {
        let path = self.resolved.write(&self.global.output_dir, command)?;
        info!("resolved configuration in {}", path.display());
        Ok(())
    }
}

pub fn dispatch(cli: Cli) -> Res<()> {
    let g = cli.global;
    let exec = match g.jobs {
        Some(0) => return usage("--jobs must be at least 1"),
        Some(1) => Execution::Sequential,
        Some(n) => {
            if !par::set_threads(n) {
                warn!("could not size the thread pool to {n}");
            }
            Execution::Parallel
        }
        None => Execution::Parallel,
    };
    let seed = g.seed.unwrap_or_else(|| {
        let s = rand::rng().random();
        warn!("no --seed given; using {s}");
        s
    });
    fs::create_dir_all(&g.output_dir).with_context(|| format!("cannot create {}", g.output_dir.display()))?;
    let mut resolved = Resolved::default();
    resolved.set_opt("graph", g.graph.as_ref().map(|p| p.display().to_string()));
    resolved.set_opt("dataset", g.dataset.map(|d| format!("{d:?}").to_lowercase()));
    resolved.set("directed", g.directed);
    resolved.set("labels", &g.labels);
    resolved.set("seed", seed);
    resolved.set("output-dir", g.output_dir.display());
    resolved.set("visibility", g.visibility);
    resolved.set("no-lcc", g.no_lcc);
    resolved.set_opt("jobs", g.jobs);
    let mut ctx = Ctx { global: g, seed, exec, resolved };
    match cli.command {
        Command::Stats => stats(&mut ctx),
        Command::Generate(a) => generate(&mut ctx, &a),
        Command::Sample(a) => sample(&mut ctx, &a),
        Command::EstimateNode(a) => estimate_node(&mut ctx, &a, "estimate-node"),
        Command::EstimateEdge(a) => estimate_edge(&mut ctx, &a),
        Command::Detect(a) => detect(&mut ctx, &a),
        Command::Shortpath(a) => shortpath(&mut ctx, &a),
        Command::Eval(a) => {
            if let Some(p) = &a.config {
                ctx.resolved.note(format!("loaded from {}", p.display()));
            }
            estimate_node(&mut ctx, &a.node, "eval")
        }
    }
}

struct Loaded {
    graph: Graph,
    raw_nodes: usize,
    raw_edges: usize,
    self_loops: usize,
    duplicates: usize,
}

fn load_graph(ctx: &mut Ctx) -> Res<Loaded> {
    let g = &ctx.global;
    let loaded = match (g.dataset, &g.graph) {
        (Some(name), _) => {
            let d = match name {
                DatasetName::Epinions => datasets::epinions()?,
                DatasetName::Slashdot => datasets::slashdot()?,
            };
            ctx.resolved.note(format!("dataset source: {}", d.source));
            let (n, m) = (d.graph.node_count(), d.graph.edge_count());
            Loaded { graph: d.graph, raw_nodes: n, raw_edges: m, self_loops: 0, duplicates: 0 }
        }
        (None, Some(path)) => {
            let l = load_edge_list(path, g.directed)?;
            let (n, m) = (l.graph.node_count(), l.graph.edge_count());
            let graph = if g.no_lcc { l.graph } else { l.graph.largest_connected_component() };
            Loaded { graph, raw_nodes: n, raw_edges: m, self_loops: l.stats.self_loops, duplicates: l.stats.duplicates }
        }
        (None, None) => return usage("no input graph: pass --graph FILE or --dataset NAME"),
    };
    let gr = &loaded.graph;
    ctx.resolved.note(format!(
        "graph used: {} nodes, {} edges{}",
        gr.node_count(),
        gr.edge_count(),
        if gr.is_directed() { format!(", {} arcs", gr.directed_edge_count()) } else { String::new() }
    ));
    if ctx.global.graph.is_some() {
        let path = ctx.global.output_dir.join("id_map.csv");
        loaded.graph.write_id_map(&path).map_err(|e| Failure::Runtime(e.into()))?;
    }
    Ok(loaded)
}

fn labels_for(ctx: &Ctx, g: &Graph) -> Res<LabelTable> {
    match ctx.global.labels.as_str() {
        "degree" => Ok(LabelTable::from_degrees(g)),
        "in-degree" | "out-degree" if !g.is_directed() => usage("in/out-degree labels need a directed graph"),
        "in-degree" => Ok(LabelTable::from_in_degrees(g)),
        "out-degree" => Ok(LabelTable::from_out_degrees(g)),
        path => Ok(LabelTable::load(Path::new(path), g)?),
    }
}

/// Command-line spelling of an enum value.
fn value_name(v: impl ValueEnum) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn uniform_labels(g: &Graph) -> LabelTable {
    LabelTable::new(vec![0; g.node_count()], vec!["-".into()]).expect("one label")
}

fn trial_config(ctx: &mut Ctx, s: &SamplerArgs, n_nodes: usize, runs: usize) -> TrialConfig {
    let budget = s.budget.resolve(n_nodes);
    info!("budget {} resolves to {budget} on {n_nodes} nodes", s.budget);
    let r = &mut ctx.resolved;
    r.set("method", s.method);
    r.set("walkers", s.walkers);
    r.set("budget", s.budget);
    r.set("cost-c", s.cost_c);
    r.set("beta", s.beta);
    r.set("charge-seeds", s.charge_seeds);
    r.set("stochastic-uni", s.stochastic_uni);
    r.note(format!("budget {} = {budget} cost units on {n_nodes} nodes", s.budget));
    TrialConfig {
        method: s.method,
        budget,
        runs,
        seed: ctx.seed,
        visibility: ctx.global.visibility,
        uni_cost: s.cost_c,
        uni_charging: if s.stochastic_uni { UniCharging::Stochastic } else { UniCharging::Deterministic },
        walkers: s.walkers,
        charge_seeds: s.charge_seeds,
        beta: s.beta,
        exec: ctx.exec,
    }
}

fn stats(ctx: &mut Ctx) -> Res<()> {
    let l = load_graph(ctx)?;
    let g = &l.graph;
    let n = g.node_count();
    let degrees: Vec<usize> = (0..n as NodeId).map(|v| g.degree(v)).collect();
    let components = g.components();
    let lcc = components.iter().map(Vec::len).max().unwrap_or(0);
    let mut rows: Vec<(&str, String)> = vec![
        ("loaded_nodes", l.raw_nodes.to_string()),
        ("loaded_edges", l.raw_edges.to_string()),
        ("self_loops_dropped", l.self_loops.to_string()),
        ("duplicates_dropped", l.duplicates.to_string()),
        ("nodes", n.to_string()),
        ("edges", g.edge_count().to_string()),
        ("directed", g.is_directed().to_string()),
        ("components", components.len().to_string()),
        ("largest_component", lcc.to_string()),
        ("max_degree", g.max_degree().to_string()),
        ("mean_degree", format!("{:.4}", 2.0 * g.edge_count() as f64 / n.max(1) as f64)),
        ("bipartite", g.is_bipartite().to_string()),
    ];
    if g.is_directed() {
        rows.push(("arcs", g.directed_edge_count().to_string()));
        rows.push(("reciprocal_edges", (g.directed_edge_count() - g.edge_count()).to_string()));
    }
    if let Some(a) = power_law_exponent(degrees.iter().copied(), 5) {
        rows.push(("tail_exponent_dmin5", format!("{a:.4}")));
    }
    let mut w = ctx.out("stats.csv")?;
    writeln!(w, "key,value")?;
    for (k, v) in &rows {
        writeln!(w, "{k},{v}")?;
        println!("{k:>20}  {v}");
    }
    w.flush()?;
    ctx.write_sidecar("stats")
}

fn generate(ctx: &mut Ctx, a: &GenerateArgs) -> Res<()> {
    let kind = match a.kind {
        GraphKind::PowerLaw => SyntheticKind::PowerLaw { exponent: a.exponent, min_degree: a.min_degree },
        GraphKind::ErdosRenyi => SyntheticKind::ErdosRenyi { p: a.p },
    };
    let r = &mut ctx.resolved;
    r.set("kind", value_name(a.kind));
    r.set("nodes", a.nodes);
    r.set("exponent", a.exponent);
    r.set("min-degree", a.min_degree);
    r.set("p", a.p);
    r.set("out", &a.out);
    let gen = generate_synthetic(kind, a.nodes, ctx.seed)?;
    let path = ctx.global.output_dir.join(&a.out);
    gen.graph.write_edge_list(&path).map_err(|e| Failure::Runtime(e.into()))?;
    println!(
        "{} nodes, {} edges, largest component {:.1}% -> {}",
        gen.graph.node_count(),
        gen.graph.edge_count(),
        100.0 * gen.lcc_fraction,
        path.display()
    );
    ctx.write_sidecar("generate")
}

fn sample(ctx: &mut Ctx, a: &SampleArgs) -> Res<()> {
    let l = load_graph(ctx)?;
    let labels = labels_for(ctx, &l.graph)?;
    let cfg = trial_config(ctx, &a.sampler, l.graph.node_count(), 2);
    ctx.resolved.set("out", &a.out);
    cfg.validate()?;
    ctx.write_sidecar("sample")?;
    let s = sample_run(&l.graph, &labels, &cfg, 0)?;
    let mut w = ctx.out(&a.out)?;
    s.write_to(&mut w)?;
    w.flush()?;
    println!("{} samples, {} distinct nodes crawled{}", s.len(), s.known_replies().len(), if s.exhausted { ", budget exhausted" } else { "" });
    Ok(())
}

fn node_estimator(a: &NodeArgs) -> NodeEstimator {
    match a.estimator {
        NodeEstimatorArg::Simple => NodeEstimator::Simple,
        NodeEstimatorArg::Neighbor => NodeEstimator::Neighbor,
        NodeEstimatorArg::Mixture => NodeEstimator::Mixture,
        NodeEstimatorArg::DirectedNeighbor => NodeEstimator::DirectedNeighbor,
        NodeEstimatorArg::OutNeighbor => NodeEstimator::OutNeighbor { gamma: a.gamma },
    }
}

fn estimate_node(ctx: &mut Ctx, a: &NodeArgs, command: &str) -> Res<()> {
    let est = node_estimator(a);
    if !(a.gamma > 0.0) {
        return usage(format!("--gamma must be > 0, got {}", a.gamma));
    }
    if a.stream.is_none() {
        check_node_capability(est, ctx.global.visibility, ctx.directed())?;
    }
    let l = load_graph(ctx)?;
    let labels = labels_for(ctx, &l.graph)?;
    let k = labels.label_count();
    let cfg = trial_config(ctx, &a.sampler, l.graph.node_count(), a.runs);
    let r = &mut ctx.resolved;
    r.set("estimator", est.name());
    r.set("gamma", a.gamma);
    r.set("subsets", a.subsets);
    r.set("runs", a.runs);
    r.set_opt("stream", a.stream.as_ref().map(|p| p.display().to_string()));

    if let Some(path) = &a.stream {
        let file = File::open(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let s = SampleStream::read_from(BufReader::new(file))?;
        check_node_capability(est, s.visibility, s.directed)?;
        ctx.write_sidecar(command)?;
        let d = apply_node_estimator(est, &s, k, a.subsets)?;
        let mut w = ctx.out("density.csv")?;
        d.write_csv(&labels, &mut w)?;
        w.flush()?;
        println!("{} estimate from {} recorded samples", est, s.len());
        return Ok(());
    }

    cfg.validate()?;
    ctx.write_sidecar(command)?;
    let t = run_trials(&l.graph, &labels, &cfg, est, a.subsets)?;
    let mut w = ctx.out("nmse.csv")?;
    t.write_nmse_csv(&labels, &mut w)?;
    w.flush()?;
    let mut w = ctx.out("runs.csv")?;
    t.write_runs_csv(&labels, &mut w)?;
    w.flush()?;
    let nm: Vec<f64> = t.rows.iter().map(|r| r.nmse).filter(|x| x.is_finite()).collect();
    println!(
        "{est}: {} runs of {} samples, {} labels scored ({} below the mass floor), mean NMSE {:.4}",
        cfg.runs,
        cfg.samples_per_run(),
        t.rows.len(),
        t.skipped_labels,
        mean_se(&nm).0
    );
    Ok(())
}

fn estimate_edge(ctx: &mut Ctx, a: &EdgeArgs) -> Res<()> {
    let directed_est = matches!(a.estimator, EdgeEstimatorArg::TraversalDirected | EdgeEstimatorArg::NeighborDirected);
    if directed_est && !ctx.directed() {
        return usage("directed edge estimators need --directed");
    }
    let vis = ctx.global.visibility;
    if matches!(a.estimator, EdgeEstimatorArg::Neighbor | EdgeEstimatorArg::NeighborDirected) {
        match a.edge_labels {
            EdgeLabelsArg::DegreePair if !vis.reveals_neighbor_degrees() => {
                return usage("estimator requires neighbor degrees");
            }
            EdgeLabelsArg::LabelPair | EdgeLabelsArg::OrderedLabelPair if !vis.reveals_neighbor_labels() => {
                return usage("estimator requires neighbor degrees and labels");
            }
            _ => {}
        }
    }
    let labeler = match a.edge_labels {
        EdgeLabelsArg::DegreePair => EdgeLabeler::DegreePair,
        EdgeLabelsArg::LabelPair => EdgeLabeler::NodeLabelPair { ordered: false },
        EdgeLabelsArg::OrderedLabelPair => EdgeLabeler::NodeLabelPair { ordered: true },
    };
    let l = load_graph(ctx)?;
    let g = &l.graph;
    let labels = labels_for(ctx, g)?;
    let cfg = trial_config(ctx, &a.sampler, g.node_count(), a.runs);
    let r = &mut ctx.resolved;
    r.set("estimator", value_name(a.estimator));
    r.set("edge-labels", value_name(a.edge_labels));
    r.set("runs", a.runs);
    cfg.validate()?;
    ctx.write_sidecar("estimate-edge")?;

    let estimate = |s: &SampleStream| -> netsample::Result<EdgeDensityEstimate> {
        match a.estimator {
            EdgeEstimatorArg::Traversal => estimate_edge_traversal(s, &labeler),
            EdgeEstimatorArg::TraversalDirected => estimate_edge_traversal_directed(s, &labeler),
            EdgeEstimatorArg::Neighbor => estimate_edge_neighbor(s, &labeler),
            EdgeEstimatorArg::NeighborDirected => estimate_edge_neighbor_directed(s, &labeler),
        }
    };
    let truth = exact_edge_density(g, &labels, &labeler, directed_est)?.values;
    let deltas = run_streams(g, &labels, &cfg, |s| Ok(delta(&estimate(s)?.values, &truth)))?;

    let first = estimate(&sample_run(g, &labels, &cfg, 0)?)?;
    let mut w = ctx.out("edge_density.csv")?;
    match labeler {
        EdgeLabeler::DegreePair => first.write_joint_degree_csv(&mut w)?,
        _ => first.write_csv(&mut w)?,
    }
    w.flush()?;
    let mut w = ctx.out("delta.csv")?;
    writeln!(w, "run,delta")?;
    for (i, d) in deltas.iter().enumerate() {
        writeln!(w, "{i},{d}")?;
    }
    w.flush()?;
    let mut sorted = deltas.clone();
    sorted.sort_by(f64::total_cmp);
    let below = deltas.iter().filter(|&&d| d < 0.1).count();
    println!(
        "{} runs: median delta {:.4}, {:.1}% below 0.1",
        deltas.len(),
        sorted[sorted.len() / 2],
        100.0 * below as f64 / deltas.len() as f64
    );
    Ok(())
}

fn detect(ctx: &mut Ctx, a: &DetectArgs) -> Res<()> {
    let needs_degrees = matches!(a.method, DetectMethod::Mxs | DetectMethod::Wrw | DetectMethod::Rw);
    if needs_degrees && !ctx.global.visibility.reveals_neighbor_degrees() {
        return usage(format!("{} detection requires neighbor degrees", value_name(a.method)));
    }
    if a.seeds == 0 || a.top == 0 {
        return usage("--seeds and --top must be positive");
    }
    let l = load_graph(ctx)?;
    let g = &l.graph;
    let n = g.node_count();
    let labels = uniform_labels(g);
    let steps = a.budget.resolve(n) as usize;
    info!("budget {} resolves to {steps} steps on {n} nodes", a.budget);
    let method = value_name(a.method);
    let r = &mut ctx.resolved;
    r.set("method", &method);
    r.set("budget", a.budget);
    r.set("top", a.top);
    r.set("seeds", a.seeds);
    r.set("beta", a.beta);
    r.set("directed-scores", a.directed_scores);
    r.note(format!("budget {} = {steps} steps plus the seed crawl on {n} nodes", a.budget));
    ctx.write_sidecar("detect")?;

    let directed_scores = a.directed_scores && g.is_directed();
    let score = if directed_scores { DegreeScore::InPlusOut } else { DegreeScore::Undirected };
    let truth = exact_top_n(g, a.top, score);
    let mut rng = seed::rng(seed::derive(ctx.seed, u64::MAX - 3));
    let starts: Vec<NodeId> = (0..a.seeds)
        .map(|_| loop {
            let v = rng.random_range(0..n as NodeId);
            if g.degree(v) > 0 {
                break v;
            }
        })
        .collect();
    let vis = ctx.global.visibility;
    let results: Vec<Result<DetectionResult, netsample::Error>> = par::map_range(ctx.exec, starts.len(), |i| {
        let ledger = CostLedger::new(steps as f64 + 1.0, 1.0)?;
        let mut c = Crawler::new(g, &labels, vis, ledger)?;
        let rs = seed::derive(ctx.seed, i as u64);
        let w = WalkWeights { beta: a.beta, directed: directed_scores };
        match a.method {
            DetectMethod::Mxs => mxs_detect(&mut c, starts[i], steps, a.top, directed_scores),
            DetectMethod::Xs => xs_detect(&mut c, starts[i], steps, a.top, false),
            DetectMethod::XsFree => xs_detect(&mut c, starts[i], steps, a.top, true),
            DetectMethod::Wrw => wrw_detect(&mut c, starts[i], steps, a.top, w, rs),
            DetectMethod::Rw => rw_detect(&mut c, starts[i], steps, a.top, CandidatePool::SampledPlusNeighborhood, rs),
            DetectMethod::RwSampled => rw_detect(&mut c, starts[i], steps, a.top, CandidatePool::SampledOnly, rs),
        }
    });
    let mut w = ctx.out("detection.csv")?;
    writeln!(w, "run,seed_node,rank,node_id,degree,recall,found_by")?;
    let mut recalls = Vec::with_capacity(results.len());
    for (i, res) in results.into_iter().enumerate() {
        let res = res?;
        let recall = res.recall(&truth);
        recalls.push(recall);
        for (rank, (v, d)) in res.top.iter().enumerate() {
            writeln!(w, "{i},{},{},{v},{d},{recall},{method}", starts[i], rank + 1)?;
        }
    }
    w.flush()?;
    let mut w = ctx.out("recall_summary.csv")?;
    writeln!(w, "method,budget,recall_mean,recall_std,seeds")?;
    write_recall_summary(&method, steps as f64, &recalls, &mut w)?;
    w.flush()?;
    let (m, se) = mean_se(&recalls);
    println!("{method}: mean recall of the exact top-{} = {m:.4} (se {se:.4}) over {} seeds", a.top, recalls.len());
    Ok(())
}

fn shortpath(ctx: &mut Ctx, a: &PathArgs) -> Res<()> {
    if !matches!(a.strategy, Strategy::Rw) && !ctx.global.visibility.reveals_neighbor_degrees() {
        return usage(format!("{} requires neighbor degrees", a.strategy));
    }
    if a.pairs == 0 {
        return usage("--pairs must be positive");
    }
    let l = load_graph(ctx)?;
    let g = &l.graph;
    let n = g.node_count();
    if n < 2 {
        return usage("graph needs at least two nodes");
    }
    let labels = uniform_labels(g);
    let r = &mut ctx.resolved;
    r.set(
        "strategy",
        match a.strategy {
            Strategy::Wrw { beta } => format!("wrw:{beta}"),
            s => s.to_string(),
        },
    );
    r.set("steps", a.steps);
    r.set("pairs", a.pairs);
    ctx.write_sidecar("shortpath")?;

    let mut rng = seed::rng(seed::derive(ctx.seed, u64::MAX - 4));
    let pairs: Vec<(NodeId, NodeId)> = (0..a.pairs)
        .map(|_| loop {
            let (u, v) = (rng.random_range(0..n as NodeId), rng.random_range(0..n as NodeId));
            if u != v && g.degree(u) > 0 && g.degree(v) > 0 {
                break (u, v);
            }
        })
        .collect();
    let vis = ctx.global.visibility;
    let results = par::map_range(ctx.exec, pairs.len(), |i| {
        let (u, v) = pairs[i];
        let mut r = discover_short_path(g, &labels, vis, u, v, a.steps, a.strategy, seed::derive(ctx.seed, i as u64))?;
        r.true_d = exact_distance(g, u, v);
        Ok::<_, netsample::Error>(r)
    });
    let mut w = ctx.out("paths.csv")?;
    writeln!(w, "{PATHS_CSV_HEADER}")?;
    let (mut failed, mut excess) = (0usize, Vec::new());
    for r in results {
        let r = r?;
        write_path_row(&r, a.strategy, a.steps, &mut w)?;
        match (r.d_star(), r.true_d) {
            (Some(d), Some(t)) => excess.push((d - t) as f64),
            _ => failed += 1,
        }
    }
    w.flush()?;
    println!(
        "{}: {failed}/{} failures, mean excess length {:.4}",
        a.strategy,
        pairs.len(),
        if excess.is_empty() { f64::NAN } else { mean_se(&excess).0 }
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use netsample::SamplingMethod;

    #[test]
    fn error_classes() {
        let cap = netsample::Error::Capability("estimator requires neighbor degrees and labels".into());
        assert!(matches!(Failure::from(cap), Failure::Usage(m) if m == "estimator requires neighbor degrees and labels"));
        assert!(matches!(Failure::from(netsample::Error::NotDirected), Failure::Usage(_)));
        assert!(matches!(Failure::from(netsample::Error::Disconnected), Failure::Runtime(_)));
        assert!(matches!(Failure::from(netsample::Error::EmptyStream), Failure::Runtime(_)));
    }

    #[test]
    fn sampling_method_names() {
        assert_eq!("fs".parse::<SamplingMethod>().unwrap(), SamplingMethod::Fs);
    }
}
