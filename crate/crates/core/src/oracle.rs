//! Brute-force reference implementations used by tests.
//!
//! Everything here is deliberately simple and slow, and shares no machinery
//! with the optimized modules: peels recompute induced degrees from scratch
//! each pass, and density maximization enumerates layer subsets explicitly.
//! Exhaustive routines refuse inputs beyond an [`OracleBudget`].

use crate::error::GraphError;
use crate::mlgraph::{DirectedMultilayerGraph, MultilayerGraph, NodeSet};

/// Size limits for exhaustive routines.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_nodes: usize,
    pub max_layers: usize,
    /// Wall-clock cap for subset enumeration.
    pub time_cap: std::time::Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_nodes: 12,
            max_layers: 5,
            time_cap: std::time::Duration::from_secs(60),
        }
    }
}

impl OracleBudget {
    pub fn unlimited() -> Self {
        OracleBudget {
            max_nodes: usize::MAX,
            max_layers: usize::MAX,
            time_cap: std::time::Duration::from_secs(u64::MAX / 4),
        }
    }

    fn check(&self, num_nodes: usize, num_layers: usize, what: &str) -> Result<(), GraphError> {
        if num_nodes > self.max_nodes || num_layers > self.max_layers {
            return Err(GraphError::BudgetExceeded(format!(
                "{what}: {num_nodes} nodes / {num_layers} layers exceeds budget \
                 ({} nodes / {} layers)",
                self.max_nodes, self.max_layers
            )));
        }
        Ok(())
    }
}

fn induced_degree(g: &MultilayerGraph, layer: usize, v: u32, mask: &[bool]) -> usize {
    g.neighbors(layer, v).iter().filter(|&&u| mask[u as usize]).count()
}

/// Fixed point of removing any node that violates the FirmCore degree
/// condition, starting from all of `V`.
pub fn naive_firmcore(
    g: &MultilayerGraph,
    k: u32,
    lambda: usize,
    budget: &OracleBudget,
) -> Result<NodeSet, GraphError> {
    budget.check(g.num_nodes, g.num_layers, "naive_firmcore")?;
    if lambda == 0 || lambda > g.num_layers {
        return Err(GraphError::invalid("lambda out of range"));
    }
    let mut mask = vec![true; g.num_nodes];
    loop {
        let mut removed_any = false;
        for v in 0..g.num_nodes as u32 {
            if !mask[v as usize] {
                continue;
            }
            let qualifying = (0..g.num_layers)
                .filter(|&l| induced_degree(g, l, v, &mask) >= k as usize)
                .count();
            if qualifying < lambda {
                mask[v as usize] = false;
                removed_any = true;
            }
        }
        if !removed_any {
            break;
        }
    }
    Ok(NodeSet::from_sorted(
        mask.iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(v, _)| v as u32)
            .collect(),
    ))
}

/// Alternating peel to the maximal `(S, T)` fixed point of the FirmD-Core
/// conditions, starting from `S = T = V`.
pub fn naive_firmdcore(
    g: &DirectedMultilayerGraph,
    k: u32,
    r: u32,
    lambda: usize,
    budget: &OracleBudget,
) -> Result<(NodeSet, NodeSet), GraphError> {
    budget.check(g.num_nodes, g.num_layers, "naive_firmdcore")?;
    if lambda == 0 || lambda > g.num_layers {
        return Err(GraphError::invalid("lambda out of range"));
    }
    let mut s_mask = vec![true; g.num_nodes];
    let mut t_mask = vec![true; g.num_nodes];
    loop {
        let mut removed_any = false;
        for u in 0..g.num_nodes as u32 {
            if s_mask[u as usize] {
                let qualifying = (0..g.num_layers)
                    .filter(|&l| {
                        g.out_neighbors(l, u).iter().filter(|&&v| t_mask[v as usize]).count()
                            >= k as usize
                    })
                    .count();
                if qualifying < lambda {
                    s_mask[u as usize] = false;
                    removed_any = true;
                }
            }
            if t_mask[u as usize] {
                let qualifying = (0..g.num_layers)
                    .filter(|&l| {
                        g.in_neighbors(l, u).iter().filter(|&&v| s_mask[v as usize]).count()
                            >= r as usize
                    })
                    .count();
                if qualifying < lambda {
                    t_mask[u as usize] = false;
                    removed_any = true;
                }
            }
        }
        if !removed_any {
            break;
        }
    }
    let collect = |mask: &[bool]| {
        NodeSet::from_sorted(
            mask.iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(v, _)| v as u32)
                .collect(),
        )
    };
    Ok((collect(&s_mask), collect(&t_mask)))
}

/// Density by explicit enumeration of all non-empty layer subsets.
fn rho_by_layer_subsets(layer_densities: &[f64], beta: f64) -> f64 {
    let layers = layer_densities.len();
    let mut best = 0.0f64;
    for subset in 1u32..(1 << layers) {
        let mut min_density = f64::INFINITY;
        let mut size = 0u32;
        for (l, &d) in layer_densities.iter().enumerate() {
            if subset >> l & 1 == 1 {
                min_density = min_density.min(d);
                size += 1;
            }
        }
        best = best.max(min_density * (size as f64).powf(beta));
    }
    best
}

/// Undirected ρ(S) by layer-subset enumeration.
pub fn rho_oracle(g: &MultilayerGraph, s: &NodeSet, beta: f64) -> f64 {
    if s.is_empty() {
        return 0.0;
    }
    let mask = s.mask(g.num_nodes);
    let densities: Vec<f64> = (0..g.num_layers)
        .map(|l| g.induced_edge_count(l, &mask) as f64 / s.len() as f64)
        .collect();
    rho_by_layer_subsets(&densities, beta)
}

/// Directed ρ(S, T) by layer-subset enumeration.
pub fn rho_oracle_directed(
    g: &DirectedMultilayerGraph,
    s: &NodeSet,
    t: &NodeSet,
    beta: f64,
) -> f64 {
    if s.is_empty() || t.is_empty() {
        return 0.0;
    }
    let s_mask = s.mask(g.num_nodes);
    let t_mask = t.mask(g.num_nodes);
    let norm = ((s.len() * t.len()) as f64).sqrt();
    let densities: Vec<f64> = (0..g.num_layers)
        .map(|l| g.edges_between(l, &s_mask, &t_mask) as f64 / norm)
        .collect();
    rho_by_layer_subsets(&densities, beta)
}

fn subset_nodes(bits: u32, num_nodes: usize) -> NodeSet {
    NodeSet::from_sorted(
        (0..num_nodes as u32).filter(|v| bits >> v & 1 == 1).collect(),
    )
}

/// Optimal multilayer densest subgraph by enumerating all non-empty node
/// subsets.
pub fn exhaustive_densest(
    g: &MultilayerGraph,
    beta: f64,
    budget: &OracleBudget,
) -> Result<(f64, NodeSet), GraphError> {
    budget.check(g.num_nodes, g.num_layers, "exhaustive_densest")?;
    let start = std::time::Instant::now();
    let mut best = (0.0f64, NodeSet::default());
    for bits in 1u32..(1 << g.num_nodes) {
        if bits % 4096 == 0 && start.elapsed() > budget.time_cap {
            return Err(GraphError::BudgetExceeded("exhaustive_densest time cap".into()));
        }
        let s = subset_nodes(bits, g.num_nodes);
        let rho = rho_oracle(g, &s, beta);
        if rho > best.0 {
            best = (rho, s);
        }
    }
    Ok(best)
}

/// Optimal directed multilayer densest subgraph over all pairs of non-empty
/// subsets.
pub fn exhaustive_densest_directed(
    g: &DirectedMultilayerGraph,
    beta: f64,
    budget: &OracleBudget,
) -> Result<(f64, NodeSet, NodeSet), GraphError> {
    let cap = budget.max_nodes.min(8);
    if g.num_nodes > cap {
        return Err(GraphError::BudgetExceeded(format!(
            "exhaustive_densest_directed: {} nodes exceeds cap {cap}",
            g.num_nodes
        )));
    }
    budget.check(g.num_nodes, g.num_layers, "exhaustive_densest_directed")?;
    let start = std::time::Instant::now();
    let mut best = (0.0f64, NodeSet::default(), NodeSet::default());
    for s_bits in 1u32..(1 << g.num_nodes) {
        if start.elapsed() > budget.time_cap {
            return Err(GraphError::BudgetExceeded(
                "exhaustive_densest_directed time cap".into(),
            ));
        }
        let s = subset_nodes(s_bits, g.num_nodes);
        for t_bits in 1u32..(1 << g.num_nodes) {
            let t = subset_nodes(t_bits, g.num_nodes);
            let rho = rho_oracle_directed(g, &s, &t, beta);
            if rho > best.0 {
                best = (rho, s.clone(), t);
            }
        }
    }
    Ok(best)
}

fn quasi_degree_threshold(gamma: f64, size: usize) -> usize {
    ((gamma * (size as f64 - 1.0)) - 1e-9).ceil().max(0.0) as usize
}

/// All maximal node sets of size ≥ `min_size` that are `Γ(ℓ)`-quasi-cliques
/// in at least `⌈min_sup · |L|⌉` layers.
pub fn exhaustive_quasicliques(
    g: &MultilayerGraph,
    gamma: &[f64],
    min_sup: f64,
    min_size: usize,
    budget: &OracleBudget,
) -> Result<Vec<NodeSet>, GraphError> {
    let cap = budget.max_nodes.min(10);
    if g.num_nodes > cap {
        return Err(GraphError::BudgetExceeded(format!(
            "exhaustive_quasicliques: {} nodes exceeds cap {cap}",
            g.num_nodes
        )));
    }
    if gamma.len() != g.num_layers {
        return Err(GraphError::invalid("gamma length must equal num_layers"));
    }
    if gamma.iter().any(|&x| !(x > 0.0 && x <= 1.0)) {
        return Err(GraphError::invalid("gamma values must lie in (0, 1]"));
    }
    if !(min_sup > 0.0 && min_sup <= 1.0) {
        return Err(GraphError::invalid("min_sup must lie in (0, 1]"));
    }
    let lambda = ((min_sup * g.num_layers as f64) - 1e-9).ceil().max(1.0) as usize;
    let mut qualifying: Vec<u32> = Vec::new();
    for bits in 1u32..(1 << g.num_nodes) {
        let size = bits.count_ones() as usize;
        if size < min_size {
            continue;
        }
        let s = subset_nodes(bits, g.num_nodes);
        let mask = s.mask(g.num_nodes);
        let layers_ok = (0..g.num_layers)
            .filter(|&l| {
                let need = quasi_degree_threshold(gamma[l], size);
                s.iter().all(|v| induced_degree(g, l, v, &mask) >= need)
            })
            .count();
        if layers_ok >= lambda {
            qualifying.push(bits);
        }
    }
    // Keep only sets not strictly contained in another qualifying set.
    let maximal: Vec<NodeSet> = qualifying
        .iter()
        .filter(|&&a| !qualifying.iter().any(|&b| b != a && b & a == a))
        .map(|&a| subset_nodes(a, g.num_nodes))
        .collect();
    Ok(maximal)
}

/// Max over non-empty subsets of the min over layers of the minimum induced
/// degree.
pub fn exhaustive_bff(
    g: &MultilayerGraph,
    budget: &OracleBudget,
) -> Result<(u32, NodeSet), GraphError> {
    budget.check(g.num_nodes, g.num_layers, "exhaustive_bff")?;
    let mut best = (0u32, NodeSet::full(g.num_nodes));
    for bits in 1u32..(1 << g.num_nodes) {
        let s = subset_nodes(bits, g.num_nodes);
        let mask = s.mask(g.num_nodes);
        let value = (0..g.num_layers)
            .map(|l| s.iter().map(|v| induced_degree(g, l, v, &mask) as u32).min().unwrap())
            .min()
            .unwrap_or(0);
        if value > best.0 {
            best = (value, s);
        }
    }
    Ok(best)
}

/// Classic single-layer core numbers via the sorted-order bin algorithm.
/// Independent of the multilayer bucket peel.
pub fn classic_kcore(adj: &[Vec<u32>]) -> Vec<u32> {
    let n = adj.len();
    if n == 0 {
        return Vec::new();
    }
    let mut degree: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    let max_deg = degree.iter().copied().max().unwrap_or(0);

    // Counting sort of nodes by degree.
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &degree {
        bin[d + 1] += 1;
    }
    for i in 1..bin.len() {
        bin[i] += bin[i - 1];
    }
    let mut pos = vec![0usize; n];
    let mut vert = vec![0u32; n];
    {
        let mut fill = bin.clone();
        for v in 0..n {
            let d = degree[v];
            pos[v] = fill[d];
            vert[pos[v]] = v as u32;
            fill[d] += 1;
        }
    }
    let mut start_of = bin; // start_of[d] = first index of degree-d block

    let mut core = vec![0u32; n];
    for i in 0..n {
        let v = vert[i] as usize;
        core[v] = degree[v] as u32;
        for &u in &adj[v] {
            let u = u as usize;
            if degree[u] > degree[v] {
                // Swap u with the first node of its degree block, then
                // shrink the block.
                let du = degree[u];
                let pu = pos[u];
                let pw = start_of[du];
                let w = vert[pw] as usize;
                if u != w {
                    vert.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                start_of[du] += 1;
                degree[u] -= 1;
            }
        }
    }
    core
}
