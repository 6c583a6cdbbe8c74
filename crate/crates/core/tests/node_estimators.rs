mod common;

use common::{assert_close, complete, exact_density, named, path, random_connected, random_digraph};
use netsample::eval::{run_streams, TrialConfig};
use netsample::node_est::{
    ccdf, estimate_directed_neighbor, estimate_mixture, estimate_neighbor, estimate_out_neighbor,
    estimate_simple, mixture_alpha, to_ccdf,
};
use netsample::sampling::{frontier_sample, FsSeeds};
use netsample::{CostLedger, Crawler, Error, Graph, LabelTable, NodeId, PiHatRule, SampleStream, SamplingMethod, Visibility};
use proptest::prelude::*;

fn crawler<'a>(g: &'a Graph, l: &'a LabelTable, vis: Visibility) -> Crawler<'a> {
    Crawler::new(g, l, vis, CostLedger::unlimited()).unwrap()
}

fn replay(g: &Graph, l: &LabelTable, vis: Visibility, rule: PiHatRule, visits: &[NodeId]) -> SampleStream {
    SampleStream::from_visits(&crawler(g, l, vis), SamplingMethod::Uni, rule, visits).unwrap()
}

fn every_node(g: &Graph) -> Vec<NodeId> {
    (0..g.node_count() as NodeId).collect()
}

/// θ̆ straight from adjacency: Σ_i Σ_{w∈N(s_i)} 1(L(w)=k)/(π̂_i d_w), normalised.
fn neighbor_oracle(g: &Graph, l: &LabelTable, visits: &[NodeId], pi: impl Fn(NodeId) -> f64) -> Vec<f64> {
    let mut v = vec![0.0; l.label_count()];
    for &s in visits {
        for &w in g.neighbors(s) {
            v[l.label(w) as usize] += 1.0 / (pi(s) * g.degree(w) as f64);
        }
    }
    let t: f64 = v.iter().sum();
    v.iter().map(|x| x / t).collect()
}

#[test]
fn simple_k3_uniform_visits() {
    let g = complete(3);
    let l = named(&[0, 0, 1], &["A", "B"]);
    let e = estimate_simple(&replay(&g, &l, Visibility::SelfOnly, PiHatRule::Uniform, &[0, 1, 2]), 2).unwrap();
    assert_close(e.values[0], 2.0 / 3.0, 1e-12);
    assert_close(e.values[1], 1.0 / 3.0, 1e-12);
}

#[test]
fn simple_p3_degree_weighted_stream() {
    // Visits 1,2,3,1 in one-based ids with π̂ = d: C = 1 + 1/2 + 1 + 1.
    let g = path(3);
    let l = named(&[0, 1, 0], &["A", "B"]);
    let e = estimate_simple(&replay(&g, &l, Visibility::SelfOnly, PiHatRule::Degree, &[0, 1, 2, 0]), 2).unwrap();
    assert_close(e.normalizer, 3.5, 1e-12);
    assert_close(e.values[0], 6.0 / 7.0, 1e-12);
    assert_close(e.values[1], 1.0 / 7.0, 1e-12);
}

#[test]
fn neighbor_k3_single_sample() {
    let g = complete(3);
    let l = named(&[0, 0, 1], &["A", "B"]);
    for v in [0, 1] {
        let s = replay(&g, &l, Visibility::NbrDegreesLabels, PiHatRule::Degree, &[v]);
        let e = estimate_neighbor(&s, 2).unwrap();
        assert_close(e.values[0], 0.5, 1e-12);
        assert_close(e.values[1], 0.5, 1e-12);
    }
}

#[test]
fn neighbor_p3_center() {
    let g = path(3);
    let l = named(&[0, 1, 0], &["A", "B"]);
    let e = estimate_neighbor(&replay(&g, &l, Visibility::NbrDegreesLabels, PiHatRule::Degree, &[1]), 2).unwrap();
    assert_close(e.values[0], 1.0, 1e-12);
    assert_close(e.values[1], 0.0, 1e-12);
}

#[test]
fn neighbor_single_label_graph() {
    let g = random_connected(40, 30, 2);
    let l = named(&[0; 40], &["only"]);
    let mut c = crawler(&g, &l, Visibility::NbrDegreesLabels);
    let s = frontier_sample(&mut c, FsSeeds::Given(vec![3]), 200, 1).unwrap();
    assert_close(estimate_neighbor(&s, 1).unwrap().values[0], 1.0, 1e-12);
}

#[test]
fn psi_cases() {
    let (both, _) = Graph::from_edges(2, true, [(0, 1), (1, 0)]).unwrap();
    let (one, _) = Graph::from_edges(3, true, [(0, 1)]).unwrap();
    assert_eq!(both.psi(0, 1), 2);
    assert_eq!(both.psi(1, 0), 2);
    assert_eq!(one.psi(0, 1), 1);
    assert_eq!(one.psi(1, 0), 1);
    assert_eq!(one.psi(0, 2), 0);
    let l = named(&[0, 0], &["x"]);
    let r = crawler(&both, &l, Visibility::NbrDegreesLabels).reply(0);
    assert_eq!(r.neighbors[0].psi(), 2);
}

#[test]
fn directed_neighbor_triangle() {
    // 1→2→3→1 in one-based ids, labels (A,A,B), sample at node 1.
    let (g, _) = Graph::from_edges(3, true, [(0, 1), (1, 2), (2, 0)]).unwrap();
    let l = named(&[0, 0, 1], &["A", "B"]);
    let s = replay(&g, &l, Visibility::NbrDegreesLabels, PiHatRule::Degree, &[0]);
    assert_eq!(s.sample(0).1, 2.0);
    let e = estimate_directed_neighbor(&s, 2).unwrap();
    assert_close(e.values[0], 0.5, 1e-12);
    assert_close(e.values[1], 0.5, 1e-12);
}

#[test]
fn out_neighbor_single_edge() {
    let (g, _) = Graph::from_edges(2, true, [(0, 1)]).unwrap();
    let l = named(&[0, 1], &["A", "B"]);
    let s = replay(&g, &l, Visibility::OutNbrWithIndeg, PiHatRule::Uniform, &[0]);
    let e = estimate_out_neighbor(&s, 2, 1.0).unwrap();
    assert_close(e.normalizer, 1.5, 1e-12);
    assert_close(e.values[0], 2.0 / 3.0, 1e-12);
    assert_close(e.values[1], 1.0 / 3.0, 1e-12);
}

#[test]
fn out_neighbor_without_arcs_is_simple() {
    let (g, _) = Graph::from_edges(5, true, std::iter::empty()).unwrap();
    let l = named(&[0, 1, 1, 2, 0], &["a", "b", "c"]);
    let s = replay(&g, &l, Visibility::OutNbrWithIndeg, PiHatRule::Uniform, &[0, 1, 1, 3, 4, 2]);
    let a = estimate_out_neighbor(&s, 3, 2.5).unwrap();
    let b = estimate_simple(&s, 3).unwrap();
    for k in 0..3 {
        assert_close(a.values[k], b.values[k], 1e-12);
    }
}

#[test]
fn capability_gates() {
    let g = random_digraph(30, 90, 1).largest_connected_component();
    let l = LabelTable::from_in_degrees(&g);
    let k = l.label_count();
    for vis in [Visibility::SelfOnly, Visibility::NbrDegrees, Visibility::OutNbrWithIndeg] {
        let s = replay(&g, &l, vis, PiHatRule::Degree, &[0, 1]);
        assert!(matches!(estimate_neighbor(&s, k), Err(Error::Capability(_))), "{vis}");
        assert!(matches!(estimate_mixture(&s, k, 100), Err(Error::Capability(_))));
        assert!(matches!(estimate_directed_neighbor(&s, k), Err(Error::Capability(_))));
    }
    let s = replay(&g, &l, Visibility::SelfOnly, PiHatRule::Degree, &[0, 1]);
    assert!(matches!(estimate_out_neighbor(&s, k, 1.0), Err(Error::Capability(_))));
    let s = replay(&g, &l, Visibility::OutNbrWithIndeg, PiHatRule::Degree, &[0]);
    assert!(estimate_out_neighbor(&s, k, 0.0).is_err());
    assert!(estimate_out_neighbor(&s, k, -1.0).is_err());

    let u = path(4);
    let lu = LabelTable::from_degrees(&u);
    let s = replay(&u, &lu, Visibility::NbrDegreesLabels, PiHatRule::Degree, &[1]);
    assert!(matches!(estimate_directed_neighbor(&s, lu.label_count()), Err(Error::NotDirected)));
    let empty = SampleStream::new(SamplingMethod::Rw, PiHatRule::Degree, 0, Visibility::NbrDegreesLabels, false);
    assert!(matches!(estimate_simple(&empty, 2), Err(Error::EmptyStream)));
}

#[test]
fn exhaustive_uniform_stream_recovers_degree_distribution() {
    let g = netsample::graph::generate_synthetic(netsample::graph::SyntheticKind::power_law(2.4), 3000, 5)
        .unwrap()
        .graph
        .largest_connected_component();
    let l = LabelTable::from_degrees(&g);
    let truth = exact_density(&l);
    let s = replay(&g, &l, Visibility::NbrDegreesLabels, PiHatRule::Uniform, &every_node(&g));
    let k = l.label_count();
    let simple = estimate_simple(&s, k).unwrap();
    let neighbor = estimate_neighbor(&s, k).unwrap();
    let (mix, _) = estimate_mixture(&s, k, 100).unwrap();
    for j in 0..k {
        assert_close(simple.values[j], truth[j], 1e-12);
        assert_close(neighbor.values[j], truth[j], 1e-12);
        assert_close(mix.values[j], truth[j], 1e-12);
    }
}

#[test]
fn exhaustive_stream_directed_estimators_are_exact() {
    let g = random_digraph(400, 1500, 9).largest_connected_component();
    let l = LabelTable::from_in_degrees(&g);
    let truth = exact_density(&l);
    let k = l.label_count();
    let s = replay(&g, &l, Visibility::NbrDegreesLabels, PiHatRule::Uniform, &every_node(&g));
    let d = estimate_directed_neighbor(&s, k).unwrap();
    let o = estimate_out_neighbor(&s, k, 1.0).unwrap();
    let s2 = replay(&g, &l, Visibility::OutNbrWithIndeg, PiHatRule::Uniform, &every_node(&g));
    let o2 = estimate_out_neighbor(&s2, k, 3.0).unwrap();
    for j in 0..k {
        assert_close(d.values[j], truth[j], 1e-12);
        assert_close(o.values[j], truth[j], 1e-12);
        assert_close(o2.values[j], truth[j], 1e-12);
    }
}

#[test]
fn neighbor_matches_adjacency_oracle_on_walks() {
    let g = random_connected(150, 200, 4);
    let l = LabelTable::random_categorical(150, &[("a", 0.5), ("b", 0.3), ("c", 0.2)], 1).unwrap();
    let mut c = crawler(&g, &l, Visibility::NbrDegreesLabels);
    let s = frontier_sample(&mut c, FsSeeds::Given(vec![0, 10, 20]), 900, 12).unwrap();
    let visits: Vec<NodeId> = s.sampled_ids().collect();
    let want = neighbor_oracle(&g, &l, &visits, |v| g.degree(v) as f64);
    let got = estimate_neighbor(&s, 3).unwrap();
    for k in 0..3 {
        assert_close(got.values[k], want[k], 1e-12);
    }
}

#[test]
fn mixture_alpha_formula() {
    assert_eq!(mixture_alpha(0.0, 0.3), 1.0);
    assert_eq!(mixture_alpha(0.2, 0.2), 0.5);
    assert_eq!(mixture_alpha(0.0, 0.0), 0.5);
    assert_close(mixture_alpha(0.1, 0.3), 0.75, 1e-15);
}

#[test]
fn mixture_blend_and_renormalisation() {
    let g = random_connected(300, 400, 6);
    let l = LabelTable::random_categorical(300, &[("a", 0.6), ("b", 0.3), ("c", 0.1)], 2).unwrap();
    let mut c = crawler(&g, &l, Visibility::NbrDegreesLabels);
    let s = frontier_sample(&mut c, FsSeeds::Given(vec![0]), 1000, 3).unwrap();
    let (mix, w) = estimate_mixture(&s, 3, 100).unwrap();
    assert_eq!(w.subset_count, 100);
    let simple = estimate_simple(&s, 3).unwrap();
    let neighbor = estimate_neighbor(&s, 3).unwrap();
    for k in 0..3 {
        assert!((0.0..=1.0).contains(&w.alpha[k]));
        assert_close(w.alpha[k], mixture_alpha(w.var_simple[k], w.var_neighbor[k]), 1e-15);
        let raw = w.alpha[k] * simple.values[k] + (1.0 - w.alpha[k]) * neighbor.values[k];
        assert_close(w.raw[k], raw, 1e-12);
    }
    let total: f64 = w.raw.iter().sum();
    for k in 0..3 {
        assert_close(mix.values[k], w.raw[k] / total, 1e-12);
    }
    assert_close(mix.total(), 1.0, 1e-12);
}

#[test]
fn mixture_subset_variances_follow_consecutive_split() {
    let g = random_connected(120, 150, 7);
    let l = LabelTable::random_categorical(120, &[("a", 0.5), ("b", 0.5)], 3).unwrap();
    let mut c = crawler(&g, &l, Visibility::NbrDegreesLabels);
    let s = frontier_sample(&mut c, FsSeeds::Given(vec![0]), 1003, 1).unwrap();
    let (_, w) = estimate_mixture(&s, 2, 10).unwrap();
    // 10 subsets of 100; the last 3 samples are dropped.
    let per: Vec<f64> = (0..10)
        .map(|j| estimate_simple(&s.slice(j * 100..(j + 1) * 100), 2).unwrap().values[0])
        .collect();
    let mean = per.iter().sum::<f64>() / 10.0;
    let var = per.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 9.0;
    assert_close(w.var_simple[0], var, 1e-12);
}

#[test]
fn mixture_short_stream_fallback() {
    let g = complete(6);
    let l = named(&[0, 1, 0, 1, 0, 1], &["a", "b"]);
    let mut c = crawler(&g, &l, Visibility::NbrDegreesLabels);
    let s = frontier_sample(&mut c, FsSeeds::Given(vec![0]), 150, 1).unwrap();
    let (_, w) = estimate_mixture(&s, 2, 100).unwrap();
    assert_eq!(w.subset_count, 7);
    let s = frontier_sample(&mut c, FsSeeds::Given(vec![0]), 30, 1).unwrap();
    assert_eq!(estimate_mixture(&s, 2, 100).unwrap().1.subset_count, 2);
}

#[test]
fn ccdf_examples() {
    assert_eq!(ccdf(&[0.5, 0.3, 0.2]), vec![0.5, 0.2, 0.0]);
    assert_eq!(ccdf(&[1.0]), vec![0.0]);
    let k100 = complete(100);
    let l = LabelTable::from_degrees(&k100);
    let xi = to_ccdf(&exact_density(&l), &l).unwrap();
    assert!(xi[..99].iter().all(|&x| x == 1.0));
    assert_eq!(xi[99], 0.0);
    let cat = named(&[0, 1], &["x", "y"]);
    assert!(to_ccdf(&[0.5, 0.5], &cat).is_err());
}

#[test]
fn estimate_csv_layout() {
    let g = complete(3);
    let l = named(&[0, 0, 1], &["A", "B"]);
    let e = estimate_simple(&replay(&g, &l, Visibility::SelfOnly, PiHatRule::Uniform, &[0, 1, 2, 2]), 2).unwrap();
    let mut out = Vec::new();
    e.write_csv(&l, &mut out).unwrap();
    assert_eq!(String::from_utf8(out).unwrap(), "label,mass,estimator,n_used\nA,0.5,simple,4\nB,0.5,simple,4\n");
}

#[test]
fn simple_and_neighbor_are_unbiased_on_a_small_graph() {
    let g = netsample::graph::generate_synthetic(netsample::graph::SyntheticKind::power_law(2.5), 2000, 21)
        .unwrap()
        .graph
        .largest_connected_component();
    let l = LabelTable::from_degrees(&g);
    let truth = exact_density(&l);
    let k = l.label_count();
    let cfg = TrialConfig { budget: 2000.0, runs: 200, seed: 4, ..TrialConfig::default() };
    let runs = run_streams(&g, &l, &cfg, |s| {
        Ok((estimate_simple(s, k)?.values, estimate_neighbor(s, k)?.values))
    })
    .unwrap();
    for j in (0..k).filter(|&j| truth[j] >= 0.05) {
        for (name, pick) in [("simple", 0), ("neighbor", 1)] {
            let mean = runs.iter().map(|r| if pick == 0 { r.0[j] } else { r.1[j] }).sum::<f64>() / runs.len() as f64;
            let rel = (mean - truth[j]).abs() / truth[j];
            assert!(rel < 0.05, "{name} label {j}: mean {mean} truth {}", truth[j]);
        }
    }
}

#[test]
fn error_shrinks_as_samples_double() {
    let g = random_connected(1000, 3000, 8);
    let l = LabelTable::from_degrees(&g);
    let truth = exact_density(&l);
    let k = l.label_count();
    let mse = |n: f64| {
        let cfg = TrialConfig { budget: n, runs: 300, seed: 5, ..TrialConfig::default() };
        let runs = run_streams(&g, &l, &cfg, |s| Ok(estimate_neighbor(s, k)?.values)).unwrap();
        runs.iter()
            .map(|r| r.iter().zip(&truth).map(|(a, b)| (a - b).powi(2)).sum::<f64>())
            .sum::<f64>()
            / runs.len() as f64
    };
    let (a, b, c) = (mse(100.0), mse(200.0), mse(400.0));
    assert!(a > b && b > c, "{a} {b} {c}");
}

fn walk_case() -> impl Strategy<Value = (usize, usize, u64, u64, usize)> {
    (5usize..60, 0usize..100, any::<u64>(), any::<u64>(), 1usize..300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_estimate_is_normalised((n, extra, gs, ws, len) in walk_case()) {
        let g = random_connected(n, extra, gs);
        let l = LabelTable::from_degrees(&g);
        let k = l.label_count();
        let mut c = crawler(&g, &l, Visibility::NbrDegreesLabels);
        let s = frontier_sample(&mut c, FsSeeds::Given(vec![0]), len, ws).unwrap();
        let mut outs = vec![estimate_simple(&s, k).unwrap(), estimate_neighbor(&s, k).unwrap()];
        if len >= 4 {
            outs.push(estimate_mixture(&s, k, 100).unwrap().0);
        }
        for e in outs {
            prop_assert!((e.total() - 1.0).abs() <= 1e-12);
            prop_assert!(e.values.iter().all(|&x| x >= 0.0));
        }
    }

    #[test]
    fn directed_estimates_are_normalised(n in 3usize..50, arcs in 2usize..150, gs in any::<u64>(), ws in any::<u64>(), gamma in 0.01f64..10.0) {
        let g = random_digraph(n, arcs, gs).largest_connected_component();
        prop_assume!(g.node_count() >= 2);
        let l = LabelTable::from_out_degrees(&g);
        let k = l.label_count();
        let mut c = crawler(&g, &l, Visibility::NbrDegreesLabels);
        let s = frontier_sample(&mut c, FsSeeds::Given(vec![0]), 100, ws).unwrap();
        for e in [estimate_directed_neighbor(&s, k).unwrap(), estimate_out_neighbor(&s, k, gamma).unwrap()] {
            prop_assert!((e.total() - 1.0).abs() <= 1e-12);
            prop_assert!(e.values.iter().all(|&x| x >= 0.0));
        }
    }

    #[test]
    fn psi_sum_identity(n in 2usize..80, arcs in 1usize..300, gs in any::<u64>()) {
        let g = random_digraph(n, arcs, gs);
        let l = named(&vec![0; n], &["x"]);
        let c = crawler(&g, &l, Visibility::NbrDegreesLabels);
        for w in 0..n as NodeId {
            let from_reply: u32 = c.reply(w).neighbors.iter().map(|x| x.psi()).sum();
            let from_graph: u32 = g.neighbors(w).iter().map(|&v| g.psi(w, v)).sum();
            let want = (g.in_degree(w) + g.out_degree(w)) as u32;
            prop_assert_eq!(from_reply, want);
            prop_assert_eq!(from_graph, want);
        }
    }
}
