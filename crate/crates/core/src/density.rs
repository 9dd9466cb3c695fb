//! Multilayer density objectives and the FirmCore-based approximation
//! algorithms for the (directed) multilayer densest-subgraph problem.
//!
//! The density of a node set is the best trade-off, over layer subsets `L̂`,
//! between the minimum per-layer density inside `L̂` and `|L̂|^β`. Because
//! the inner minimum over a subset of size `j` is maximized by the `j`
//! densest layers, the subset maximum reduces to a scan over sorted layer
//! densities.

use std::collections::HashSet;

use crate::error::GraphError;
use crate::firmcore::{self, CoreIndexTable};
use crate::firmdcore::{self, DCoreIndexTable};
use crate::mlgraph::{DirectedMultilayerGraph, MultilayerGraph, NodeSet};
use crate::parallel;

/// Which nodes a density report describes.
#[derive(Debug, Clone, PartialEq)]
pub enum ReportNodes {
    Undirected(NodeSet),
    Directed { s: NodeSet, t: NodeSet },
}

/// Core that produced an approximation result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceCore {
    FirmCore { k: u32, lambda: usize },
    FirmDCore { k: u32, r: u32, lambda: usize },
}

/// Density value together with the layer subset attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub nodes: ReportNodes,
    pub beta: f64,
    pub rho: f64,
    /// Internal ids of the layers attaining the maximum, ascending.
    pub chosen_layers: Vec<u32>,
    /// Density of every layer restricted to the subgraph.
    pub per_layer_density: Vec<f64>,
    pub source_core: Option<SourceCore>,
}

impl DensityReport {
    /// JSON form with external node and layer labels.
    pub fn to_json(&self, node_labels: &[u64], layer_labels: &[u64]) -> serde_json::Value {
        let ext_nodes = |s: &NodeSet| -> Vec<u64> {
            let mut v: Vec<u64> = s.iter().map(|n| node_labels[n as usize]).collect();
            v.sort_unstable();
            v
        };
        let mut obj = serde_json::json!({
            "rho": self.rho,
            "beta": self.beta,
            "layers": self.chosen_layers.iter().map(|&l| layer_labels[l as usize]).collect::<Vec<_>>(),
            "per_layer_density": self.per_layer_density,
        });
        match &self.nodes {
            ReportNodes::Undirected(s) => {
                obj["nodes"] = serde_json::json!(ext_nodes(s));
            }
            ReportNodes::Directed { s, t } => {
                obj["S"] = serde_json::json!(ext_nodes(s));
                obj["T"] = serde_json::json!(ext_nodes(t));
            }
        }
        obj["source_core"] = match self.source_core {
            Some(SourceCore::FirmCore { k, lambda }) => {
                serde_json::json!({ "k": k, "lambda": lambda })
            }
            Some(SourceCore::FirmDCore { k, r, lambda }) => {
                serde_json::json!({ "k": k, "r": r, "lambda": lambda })
            }
            None => serde_json::Value::Null,
        };
        obj
    }
}

/// Maximizes `(j-th largest density) · j^β` over `j`; returns the value and
/// the chosen layers (ties between layers broken by layer id, ties between
/// `j` values by the smaller `j`).
pub(crate) fn rho_from_densities(densities: &[f64], beta: f64) -> (f64, Vec<u32>) {
    let mut order: Vec<u32> = (0..densities.len() as u32).collect();
    order.sort_by(|&a, &b| {
        densities[b as usize]
            .partial_cmp(&densities[a as usize])
            .unwrap()
            .then(a.cmp(&b))
    });
    let mut best = f64::NEG_INFINITY;
    let mut best_j = 1;
    for j in 1..=order.len() {
        let value = densities[order[j - 1] as usize] * (j as f64).powf(beta);
        if value > best {
            best = value;
            best_j = j;
        }
    }
    let mut chosen: Vec<u32> = order[..best_j].to_vec();
    chosen.sort_unstable();
    (best, chosen)
}

fn check_beta(beta: f64) -> Result<(), GraphError> {
    if !(beta > 0.0) {
        return Err(GraphError::invalid(format!("beta = {beta} must be positive")));
    }
    Ok(())
}

/// ρ(S) for an undirected graph: per-layer density is `|E_ℓ[S]| / |S|`.
pub fn rho_undirected(
    g: &MultilayerGraph,
    s: &NodeSet,
    beta: f64,
) -> Result<DensityReport, GraphError> {
    check_beta(beta)?;
    if s.is_empty() {
        return Err(GraphError::invalid("node set must be non-empty"));
    }
    let mask = s.mask(g.num_nodes);
    let densities: Vec<f64> = (0..g.num_layers)
        .map(|l| g.induced_edge_count(l, &mask) as f64 / s.len() as f64)
        .collect();
    let (rho, chosen) = rho_from_densities(&densities, beta);
    Ok(DensityReport {
        nodes: ReportNodes::Undirected(s.clone()),
        beta,
        rho,
        chosen_layers: chosen,
        per_layer_density: densities,
        source_core: None,
    })
}

/// ρ(S, T) for a directed graph: per-layer density is
/// `|E_ℓ(S, T)| / sqrt(|S||T|)`.
pub fn rho_directed(
    g: &DirectedMultilayerGraph,
    s: &NodeSet,
    t: &NodeSet,
    beta: f64,
) -> Result<DensityReport, GraphError> {
    check_beta(beta)?;
    if s.is_empty() || t.is_empty() {
        return Err(GraphError::invalid("both sides must be non-empty"));
    }
    let s_mask = s.mask(g.num_nodes);
    let t_mask = t.mask(g.num_nodes);
    let norm = ((s.len() * t.len()) as f64).sqrt();
    let densities: Vec<f64> = (0..g.num_layers)
        .map(|l| g.edges_between(l, &s_mask, &t_mask) as f64 / norm)
        .collect();
    let (rho, chosen) = rho_from_densities(&densities, beta);
    Ok(DensityReport {
        nodes: ReportNodes::Directed { s: s.clone(), t: t.clone() },
        beta,
        rho,
        chosen_layers: chosen,
        per_layer_density: densities,
        source_core: None,
    })
}

/// Densest FirmCore: evaluates ρ on every distinct non-empty FirmCore and
/// returns the maximizer. Ties broken by smaller λ, larger k, smaller core.
pub fn fc_approx(
    g: &MultilayerGraph,
    beta: f64,
    threads: usize,
) -> Result<DensityReport, GraphError> {
    check_beta(beta)?;
    if g.num_nodes == 0 {
        return Err(GraphError::invalid("graph must be non-empty"));
    }
    let table = firmcore_decomposition(g, threads);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut candidates: Vec<(usize, u32, NodeSet)> = Vec::new();
    for lambda in 1..=g.num_layers {
        for k in 1..=table.max_core(lambda) {
            let core = firmcore::extract_firmcore(&table, k, lambda);
            if core.is_empty() {
                continue;
            }
            if seen.insert(core.as_slice().to_vec()) {
                candidates.push((lambda, k, core));
            }
        }
    }
    if candidates.is_empty() {
        // Only possible when no layer has an edge.
        return rho_undirected(g, &NodeSet::full(g.num_nodes), beta);
    }
    let reports = parallel::run_indexed(candidates.len(), threads, |i| {
        let (lambda, k, core) = &candidates[i];
        let mut report = rho_undirected(g, core, beta).unwrap();
        report.source_core = Some(SourceCore::FirmCore { k: *k, lambda: *lambda });
        report
    });
    let mut best: Option<(usize, DensityReport)> = None;
    for (i, report) in reports.into_iter().enumerate() {
        let replace = match &best {
            None => true,
            Some((bi, b)) => {
                let (bl, bk, bc) = &candidates[*bi];
                let (cl, ck, cc) = &candidates[i];
                report.rho > b.rho
                    || (report.rho == b.rho
                        && (cl, std::cmp::Reverse(ck), cc.len())
                            < (bl, std::cmp::Reverse(bk), bc.len()))
            }
        };
        if replace {
            best = Some((i, report));
        }
    }
    Ok(best.unwrap().1)
}

fn firmcore_decomposition(g: &MultilayerGraph, threads: usize) -> CoreIndexTable {
    firmcore::firmcore_decomposition(g, threads)
}

/// Densest FirmD-Core over all `(k, r, λ)` with `k, r ≥ 1`.
pub fn fdc_approx(
    g: &DirectedMultilayerGraph,
    beta: f64,
    threads: usize,
) -> Result<DensityReport, GraphError> {
    check_beta(beta)?;
    if g.num_nodes == 0 {
        return Err(GraphError::invalid("graph must be non-empty"));
    }
    let table: DCoreIndexTable = firmdcore::full_firmdcore(g, threads);
    let mut seen: HashSet<(Vec<u32>, Vec<u32>)> = HashSet::new();
    let mut candidates: Vec<(usize, u32, u32, NodeSet, NodeSet)> = Vec::new();
    for lambda in 1..=g.num_layers {
        let row = table.row(lambda);
        for k in 1..=row.k_max {
            let slice = &row.slices[k as usize - 1];
            let r_max = slice.t_index.iter().copied().max().unwrap_or(0);
            for r in 1..=r_max {
                let (s, t) = firmdcore::extract_firmdcore(&table, g, k, r, lambda).unwrap();
                if s.is_empty() || t.is_empty() {
                    continue;
                }
                let key = (s.as_slice().to_vec(), t.as_slice().to_vec());
                if seen.insert(key) {
                    candidates.push((lambda, k, r, s, t));
                }
            }
        }
    }
    if candidates.is_empty() {
        let all = NodeSet::full(g.num_nodes);
        return rho_directed(g, &all, &all, beta);
    }
    let reports = parallel::run_indexed(candidates.len(), threads, |i| {
        let (lambda, k, r, s, t) = &candidates[i];
        let mut report = rho_directed(g, s, t, beta).unwrap();
        report.source_core = Some(SourceCore::FirmDCore { k: *k, r: *r, lambda: *lambda });
        report
    });
    let mut best: Option<(usize, DensityReport)> = None;
    for (i, report) in reports.into_iter().enumerate() {
        let replace = match &best {
            None => true,
            Some((bi, b)) => {
                let (bl, bk, br, bs, bt) = &candidates[*bi];
                let (cl, ck, cr, cs, ct) = &candidates[i];
                report.rho > b.rho
                    || (report.rho == b.rho
                        && (cl, std::cmp::Reverse(ck), std::cmp::Reverse(cr), cs.len() + ct.len())
                            < (bl, std::cmp::Reverse(bk), std::cmp::Reverse(br), bs.len() + bt.len()))
            }
        };
        if replace {
            best = Some((i, report));
        }
    }
    Ok(best.unwrap().1)
}

/// `ψ_β = max over integer ξ ∈ [0, λ⁺) of (λ⁺ − ξ)(ξ + 1)^β`.
///
/// The closed-form maximizer is `⌊(λ⁺β − 1)/(β + 1)⌋` or its ceiling, but a
/// full scan over `ξ` is cheap and robust.
pub fn psi_beta(lambda_plus: u32, beta: f64) -> f64 {
    assert!(lambda_plus >= 1, "lambda_plus must be >= 1");
    (0..lambda_plus)
        .map(|xi| (lambda_plus - xi) as f64 * ((xi + 1) as f64).powf(beta))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Guaranteed approximation factor `ψ_β / (2|L|^{β+1})`.
pub fn approx_factor(num_layers: usize, lambda_plus: u32, beta: f64) -> f64 {
    psi_beta(lambda_plus, beta) / (2.0 * (num_layers as f64).powf(beta + 1.0))
}

/// Approximation-guarantee diagnostics for a caller-supplied `λ⁺`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ApproxDiagnostics {
    pub lambda_plus: u32,
    pub psi_beta: f64,
    pub guaranteed_factor: f64,
}

pub fn diagnostics(num_layers: usize, lambda_plus: u32, beta: f64) -> ApproxDiagnostics {
    ApproxDiagnostics {
        lambda_plus,
        psi_beta: psi_beta(lambda_plus, beta),
        guaranteed_factor: approx_factor(num_layers, lambda_plus, beta),
    }
}

/// Density lower bound for a non-empty `(k, λ)`-FirmCore:
/// `k/(2|L|) · ψ_β(λ)`.
pub fn lemma1_bound(k: u32, lambda: u32, num_layers: usize, beta: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    k as f64 / (2.0 * num_layers as f64) * psi_beta(lambda, beta)
}

/// Density lower bound for a non-empty `(k, r, λ)`-FirmD-Core:
/// `ψ_β(λ)/|L| · max{k√a, r/√a}` with `a = |S|/|T|`.
pub fn lemma4_bound(
    k: u32,
    r: u32,
    lambda: u32,
    num_layers: usize,
    beta: f64,
    s_size: usize,
    t_size: usize,
) -> f64 {
    assert!(s_size > 0 && t_size > 0, "sides must be non-empty");
    let a = s_size as f64 / t_size as f64;
    let degree_term = (k as f64 * a.sqrt()).max(r as f64 / a.sqrt());
    psi_beta(lambda, beta) / num_layers as f64 * degree_term
}

/// Exact solution to the max-min-degree problem: the `(k_max, |L|)`-FirmCore
/// where `k_max` is the largest `k` with a non-empty `(k, |L|)`-FirmCore.
pub fn bff_mm(g: &MultilayerGraph) -> Result<(NodeSet, u32), GraphError> {
    if g.num_nodes == 0 {
        return Err(GraphError::invalid("graph must be non-empty"));
    }
    let indices = firmcore::firmcore_indices(g, g.num_layers)?;
    let k_max = indices.iter().copied().max().unwrap_or(0);
    let nodes = NodeSet::from_sorted(
        indices
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= k_max)
            .map(|(v, _)| v as u32)
            .collect(),
    );
    Ok((nodes, k_max))
}

/// Ceiling with a small slack so products such as `0.3 · 10` do not round up
/// past the intended integer.
fn ceil_threshold(x: f64) -> u32 {
    (x - 1e-9).ceil().max(0.0) as u32
}

/// Search-space pruning for frequent cross-graph quasi-cliques: every
/// qualifying quasi-clique of size ≥ `min_size` is contained in the
/// `(⌈γ(min_size − 1)⌉, ⌈min_sup·|L|⌉)`-FirmCore with `γ = min_ℓ Γ(ℓ)`.
pub fn quasiclique_prune(
    g: &MultilayerGraph,
    gamma: &[f64],
    min_sup: f64,
    min_size: usize,
) -> Result<NodeSet, GraphError> {
    if gamma.len() != g.num_layers {
        return Err(GraphError::invalid("gamma length must equal num_layers"));
    }
    if gamma.iter().any(|&x| !(x > 0.0 && x <= 1.0)) {
        return Err(GraphError::invalid("gamma values must lie in (0, 1]"));
    }
    if !(min_sup > 0.0 && min_sup <= 1.0) {
        return Err(GraphError::invalid("min_sup must lie in (0, 1]"));
    }
    if min_size < 1 {
        return Err(GraphError::invalid("min_size must be >= 1"));
    }
    let gamma_min = gamma.iter().cloned().fold(f64::INFINITY, f64::min);
    let lambda = ceil_threshold(min_sup * g.num_layers as f64).max(1) as usize;
    let k = ceil_threshold(gamma_min * (min_size as f64 - 1.0));
    let indices = firmcore::firmcore_indices(g, lambda)?;
    Ok(NodeSet::from_sorted(
        indices
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= k)
            .map(|(v, _)| v as u32)
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlgraph::{generate_synthetic, SyntheticModel};
    use crate::oracle;

    #[test]
    fn rho_reduction_example() {
        let (rho, chosen) = rho_from_densities(&[3.0, 2.0, 1.0], 1.0);
        assert_eq!(rho, 4.0);
        assert_eq!(chosen, vec![0, 1]);
    }

    #[test]
    fn rho_single_layer_is_plain_density() {
        let g = MultilayerGraph::from_internal_edges(4, 1, &[(0, 0, 1), (0, 1, 2), (0, 2, 3)]);
        let s = NodeSet::full(4);
        let report = rho_undirected(&g, &s, 2.0).unwrap();
        assert!((report.rho - 0.75).abs() < 1e-12);
        assert_eq!(report.chosen_layers, vec![0]);
    }

    #[test]
    fn rho_matches_subset_enumeration() {
        for seed in 0..6 {
            let g = generate_synthetic(8, 3, SyntheticModel::UniformRandom { p: 0.5 }, seed)
                .unwrap();
            let s = NodeSet::from_unsorted(vec![0, 1, 3, 4, 6, 7]);
            for beta in [0.5, 1.0, 2.0] {
                let fast = rho_undirected(&g, &s, beta).unwrap().rho;
                let slow = oracle::rho_oracle(&g, &s, beta);
                assert!((fast - slow).abs() < 1e-12, "seed {seed} beta {beta}");
            }
        }
    }

    #[test]
    fn rho_rejects_empty_set() {
        let g = MultilayerGraph::from_internal_edges(3, 1, &[(0, 0, 1)]);
        assert!(rho_undirected(&g, &NodeSet::default(), 1.0).is_err());
        assert!(rho_undirected(&g, &NodeSet::full(3), 0.0).is_err());
    }

    #[test]
    fn rho_directed_symmetric_self_pair() {
        // Symmetric digraph: edges both ways on a triangle; S = T = V gives
        // |E(S,S)| / |S| = 6 / 3.
        let mut edges = Vec::new();
        for (u, v) in [(0u32, 1u32), (1, 2), (2, 0)] {
            edges.push((0, u, v));
            edges.push((0, v, u));
        }
        let g = DirectedMultilayerGraph::from_internal_edges(3, 1, &edges);
        let all = NodeSet::full(3);
        let report = rho_directed(&g, &all, &all, 1.0).unwrap();
        assert!((report.rho - 2.0).abs() < 1e-12);
    }

    #[test]
    fn rho_directed_single_edge() {
        let g = DirectedMultilayerGraph::from_internal_edges(2, 1, &[(0, 0, 1)]);
        let s = NodeSet::from_sorted(vec![0]);
        let t = NodeSet::from_sorted(vec![1]);
        for beta in [0.5, 1.0, 3.0] {
            assert!((rho_directed(&g, &s, &t, beta).unwrap().rho - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rho_directed_matches_enumeration() {
        for seed in 0..4 {
            let g = crate::mlgraph::generate_synthetic_directed(7, 2, 0.4, seed).unwrap();
            let s = NodeSet::from_unsorted(vec![0, 2, 3, 5]);
            let t = NodeSet::from_unsorted(vec![1, 2, 4, 6]);
            for beta in [0.5, 1.0, 2.0] {
                let fast = rho_directed(&g, &s, &t, beta).unwrap().rho;
                let slow = oracle::rho_oracle_directed(&g, &s, &t, beta);
                assert!((fast - slow).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn fc_approx_finds_isolated_clique() {
        let mut edges = Vec::new();
        for u in 0..5u32 {
            for v in (u + 1)..5 {
                edges.push((0, u, v));
            }
        }
        let g = MultilayerGraph::from_internal_edges(8, 1, &edges);
        let report = fc_approx(&g, 1.0, 1).unwrap();
        assert!((report.rho - 2.0).abs() < 1e-12);
        match report.nodes {
            ReportNodes::Undirected(s) => assert_eq!(s, NodeSet::from_sorted(vec![0, 1, 2, 3, 4])),
            _ => panic!(),
        }
    }

    #[test]
    fn fc_approx_edgeless_graph() {
        let g = MultilayerGraph::from_internal_edges(4, 2, &[]);
        let report = fc_approx(&g, 1.0, 1).unwrap();
        assert_eq!(report.rho, 0.0);
        match report.nodes {
            ReportNodes::Undirected(s) => assert_eq!(s.len(), 4),
            _ => panic!(),
        }
    }

    #[test]
    fn fdc_approx_complete_bipartite() {
        let mut edges = Vec::new();
        for u in 0..2u32 {
            for v in 2..5u32 {
                edges.push((0, u, v));
            }
        }
        let g = DirectedMultilayerGraph::from_internal_edges(5, 1, &edges);
        let report = fdc_approx(&g, 1.0, 1).unwrap();
        assert!((report.rho - 6.0 / 6.0f64.sqrt()).abs() < 1e-12);
        match report.nodes {
            ReportNodes::Directed { s, t } => {
                assert_eq!(s, NodeSet::from_sorted(vec![0, 1]));
                assert_eq!(t, NodeSet::from_sorted(vec![2, 3, 4]));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn fdc_approx_skips_degenerate_lambda() {
        // Layer 1 carries a dense structure, layer 2 is edgeless: no chosen
        // core can require qualifying degrees in both layers.
        let mut edges = Vec::new();
        for u in 0..3u32 {
            for v in 3..6u32 {
                edges.push((0, u, v));
            }
        }
        let g = DirectedMultilayerGraph::from_internal_edges(6, 2, &edges);
        let report = fdc_approx(&g, 1.0, 1).unwrap();
        match report.source_core {
            Some(SourceCore::FirmDCore { lambda, .. }) => assert!(lambda < 2),
            other => panic!("unexpected source {other:?}"),
        }
    }

    #[test]
    fn psi_beta_example_factors() {
        assert!((approx_factor(3, 2, 1.0) - 1.0 / 9.0).abs() < 1e-15);
        assert!((approx_factor(3, 2, 2.0) - 2.0 / 27.0).abs() < 1e-15);
        assert!((approx_factor(3, 2, 3.0) - 4.0 / 81.0).abs() < 1e-15);
    }

    #[test]
    fn psi_beta_lower_bound() {
        for lambda_plus in 1..=10u32 {
            for beta in [0.5, 1.0, 2.0, 3.0] {
                let psi = psi_beta(lambda_plus, beta);
                let lower = (lambda_plus as f64).powf(beta).max(lambda_plus as f64);
                assert!(psi >= lower - 1e-12);
            }
        }
    }

    #[test]
    fn lemma_bound_values() {
        assert_eq!(lemma1_bound(0, 2, 3, 1.0), 0.0);
        assert!((lemma1_bound(4, 2, 3, 1.0) - 4.0 / 3.0).abs() < 1e-12);
        // k√a = 2·2, r/√a = 8/2 with a = 4.
        assert!((lemma4_bound(2, 8, 1, 1, 1.0, 4, 1) - 4.0).abs() < 1e-12);
        // a = 1 symmetry: ψ_β · k / |L|.
        let sym = lemma4_bound(3, 3, 2, 2, 1.0, 5, 5);
        assert!((sym - psi_beta(2, 1.0) * 3.0 / 2.0).abs() < 1e-12);
    }

    #[test]
    fn bff_single_layer_max_core() {
        let mut edges = Vec::new();
        for u in 0..4u32 {
            for v in (u + 1)..4 {
                edges.push((0, u, v));
            }
        }
        edges.push((0, 0, 4)); // pendant
        let g = MultilayerGraph::from_internal_edges(5, 1, &edges);
        let (nodes, k_max) = bff_mm(&g).unwrap();
        assert_eq!(k_max, 3);
        assert_eq!(nodes, NodeSet::from_sorted(vec![0, 1, 2, 3]));
    }

    #[test]
    fn bff_edgeless_layer() {
        let g = MultilayerGraph::from_internal_edges(4, 2, &[(0, 0, 1), (0, 1, 2)]);
        let (nodes, k_max) = bff_mm(&g).unwrap();
        assert_eq!(k_max, 0);
        assert_eq!(nodes.len(), 4);
    }

    #[test]
    fn prune_min_size_one_keeps_everything() {
        let g = generate_synthetic(8, 2, SyntheticModel::UniformRandom { p: 0.4 }, 2).unwrap();
        let pruned = quasiclique_prune(&g, &[0.5, 0.5], 0.5, 1).unwrap();
        assert_eq!(pruned.len(), 8);
    }

    #[test]
    fn prune_exact_clique_rule() {
        // Γ ≡ 1, min_sup = 1, min_size = 3 → the (2, |L|)-FirmCore.
        let edges = vec![
            (0, 0, 1), (0, 1, 2), (0, 0, 2), (0, 2, 3),
            (1, 0, 1), (1, 1, 2), (1, 0, 2),
        ];
        let g = MultilayerGraph::from_internal_edges(4, 2, &edges);
        let pruned = quasiclique_prune(&g, &[1.0, 1.0], 1.0, 3).unwrap();
        assert_eq!(pruned, NodeSet::from_sorted(vec![0, 1, 2]));
    }

    #[test]
    fn prune_threshold_rounding() {
        // 0.3 · 10 must round to λ = 3, not 4.
        let g = generate_synthetic(6, 10, SyntheticModel::UniformRandom { p: 0.5 }, 4).unwrap();
        let gamma = vec![1.0; 10];
        // Equivalent call via the same thresholds: check against explicit λ.
        let pruned = quasiclique_prune(&g, &gamma, 0.3, 4).unwrap();
        let indices = crate::firmcore::firmcore_indices(&g, 3).unwrap();
        let expected = NodeSet::from_sorted(
            indices
                .iter()
                .enumerate()
                .filter(|(_, &c)| c >= 3)
                .map(|(v, _)| v as u32)
                .collect(),
        );
        assert_eq!(pruned, expected);
    }

    #[test]
    fn prune_rejects_bad_gamma() {
        let g = generate_synthetic(4, 2, SyntheticModel::UniformRandom { p: 0.5 }, 1).unwrap();
        assert!(quasiclique_prune(&g, &[0.0, 1.0], 1.0, 2).is_err());
        assert!(quasiclique_prune(&g, &[1.0], 1.0, 2).is_err());
    }
}
