//! FirmCore index computation.
//!
//! For a threshold `λ`, the FirmCore index `core_λ(v)` is the largest `k`
//! such that `v` belongs to the `(k, λ)`-FirmCore: the maximal subgraph in
//! which every node has induced degree at least `k` in at least `λ` layers.
//! The peel processes nodes in increasing order of their Top-λ degree (the
//! λ-th largest entry of the per-layer degree vector), which upper-bounds
//! the core index.

use std::fmt::Write as _;

use crate::error::GraphError;
use crate::mlgraph::{MultilayerGraph, NodeSet};
use crate::parallel;

/// FirmCore indices for every `λ ∈ [1, num_layers]` and every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreIndexTable {
    pub num_layers: usize,
    /// `rows[λ - 1][v]` is `core_λ(v)`.
    pub rows: Vec<Vec<u32>>,
}

impl CoreIndexTable {
    pub fn row(&self, lambda: usize) -> &[u32] {
        &self.rows[lambda - 1]
    }

    /// Maximum core index in the `λ` row (0 on an empty graph).
    pub fn max_core(&self, lambda: usize) -> u32 {
        self.row(lambda).iter().copied().max().unwrap_or(0)
    }

    /// Serializes as TSV with header `node\tlambda\tcore`, rows sorted by
    /// `(λ, external node id)`.
    pub fn to_tsv(&self, node_labels: &[u64]) -> String {
        let mut order: Vec<usize> = (0..node_labels.len()).collect();
        order.sort_by_key(|&v| node_labels[v]);
        let mut out = String::from("node\tlambda\tcore\n");
        for (i, row) in self.rows.iter().enumerate() {
            for &v in &order {
                let _ = writeln!(out, "{}\t{}\t{}", node_labels[v], i + 1, row[v]);
            }
        }
        out
    }
}

/// The λ-th largest entry of a degree vector (duplicates counted).
pub fn top_lambda(deg_vector: &[u32], lambda: usize) -> Result<u32, GraphError> {
    if lambda == 0 || lambda > deg_vector.len() {
        return Err(GraphError::invalid(format!(
            "lambda = {lambda} out of range 1..={}",
            deg_vector.len()
        )));
    }
    let mut v = deg_vector.to_vec();
    let idx = lambda - 1;
    v.select_nth_unstable_by(idx, |a, b| b.cmp(a));
    Ok(v[idx])
}

fn check_lambda(g: &MultilayerGraph, lambda: usize) -> Result<(), GraphError> {
    if lambda == 0 || lambda > g.num_layers {
        return Err(GraphError::invalid(format!(
            "lambda = {lambda} out of range 1..={}",
            g.num_layers
        )));
    }
    Ok(())
}

/// How a marked node's Top-λ bound is refreshed after degree decrements.
#[derive(Debug, Clone, Copy, PartialEq)]
enum UpdateMethod {
    /// O(|L|) scan counting entries still at or above the current bound.
    LinearScan,
    /// Re-select the λ-th largest entry of the degree vector.
    Select,
}

fn choose_method(num_layers: usize, lambda: usize, threshold_const: f64) -> UpdateMethod {
    if num_layers <= 1 {
        return UpdateMethod::LinearScan;
    }
    let l = num_layers as f64;
    if lambda as f64 >= threshold_const * l / l.log2() {
        UpdateMethod::LinearScan
    } else {
        UpdateMethod::Select
    }
}

/// Default constant for the hybrid update threshold.
pub const DEFAULT_HYBRID_THRESHOLD: f64 = 1.0;

/// FirmCore indices for one `λ`, using the default hybrid update threshold.
pub fn firmcore_indices(g: &MultilayerGraph, lambda: usize) -> Result<Vec<u32>, GraphError> {
    firmcore_indices_with_threshold(g, lambda, DEFAULT_HYBRID_THRESHOLD)
}

/// FirmCore indices for one `λ` with an explicit hybrid threshold constant
/// (the bound-update method switches to the linear scan when
/// `λ ≥ c·|L|/log₂|L|`). Both methods compute the same indices; the constant
/// only affects speed.
pub fn firmcore_indices_with_threshold(
    g: &MultilayerGraph,
    lambda: usize,
    threshold_const: f64,
) -> Result<Vec<u32>, GraphError> {
    check_lambda(g, lambda)?;
    let init: Vec<u32> = g
        .degree_vectors()
        .iter()
        .map(|d| top_lambda(d, lambda).unwrap())
        .collect();
    Ok(peel(g, lambda, init, choose_method(g.num_layers, lambda, threshold_const)))
}

/// Bucket peel with the given initial Top-λ bounds.
fn peel(g: &MultilayerGraph, lambda: usize, init: Vec<u32>, method: UpdateMethod) -> Vec<u32> {
    let n = g.num_nodes;
    let layers = g.num_layers;
    let mut bound = init;
    let max_bound = bound.iter().copied().max().unwrap_or(0) as usize;

    let mut deg: Vec<Vec<u32>> = (0..layers)
        .map(|l| (0..n as u32).map(|v| g.degree(l, v)).collect())
        .collect();
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max_bound + 1];
    for v in 0..n as u32 {
        buckets[bound[v as usize] as usize].push(v);
    }

    let mut core = vec![0u32; n];
    let mut alive = vec![true; n];
    let mut marked = vec![false; n];
    let mut touched: Vec<u32> = Vec::new();
    let mut scratch: Vec<u32> = vec![0; layers];

    for k in 0..=max_bound {
        let mut i = 0;
        while i < buckets[k].len() {
            let v = buckets[k][i];
            i += 1;
            // Stale entries from earlier bucket moves are skipped lazily.
            if !alive[v as usize] || bound[v as usize] as usize != k {
                continue;
            }
            alive[v as usize] = false;
            core[v as usize] = k as u32;

            touched.clear();
            for (l, deg_l) in deg.iter_mut().enumerate() {
                for &u in g.neighbors(l, v) {
                    let ui = u as usize;
                    if alive[ui] && bound[ui] as usize > k {
                        deg_l[ui] -= 1;
                        // The bound can only change when a layer degree falls
                        // from the bound to one below it.
                        if deg_l[ui] + 1 == bound[ui] && !marked[ui] {
                            marked[ui] = true;
                            touched.push(u);
                        }
                    }
                }
            }
            for &u in &touched {
                let ui = u as usize;
                marked[ui] = false;
                let new_bound = match method {
                    UpdateMethod::LinearScan => {
                        let at_or_above =
                            deg.iter().filter(|deg_l| deg_l[ui] >= bound[ui]).count();
                        if at_or_above >= lambda {
                            bound[ui]
                        } else {
                            bound[ui] - 1
                        }
                    }
                    UpdateMethod::Select => {
                        for (l, deg_l) in deg.iter().enumerate() {
                            scratch[l] = deg_l[ui];
                        }
                        let idx = lambda - 1;
                        scratch.select_nth_unstable_by(idx, |a, b| b.cmp(a));
                        scratch[idx]
                    }
                };
                let clamped = new_bound.max(k as u32);
                if clamped != bound[ui] {
                    bound[ui] = clamped;
                    buckets[clamped as usize].push(u);
                }
            }
        }
        buckets[k] = Vec::new();
    }
    core
}

/// Full FirmCore decomposition: one index row per `λ ∈ [1, num_layers]`.
///
/// Each node's degree vector is sorted once; per-λ peels run independently
/// and may execute concurrently. The result is identical for any `threads`.
pub fn firmcore_decomposition(g: &MultilayerGraph, threads: usize) -> CoreIndexTable {
    assert!(threads >= 1, "threads must be >= 1");
    let mut sorted_degs = g.degree_vectors();
    for d in &mut sorted_degs {
        d.sort_unstable_by(|a, b| b.cmp(a));
    }
    let rows = parallel::run_indexed(g.num_layers, threads, |i| {
        let lambda = i + 1;
        let init: Vec<u32> = sorted_degs.iter().map(|d| d[lambda - 1]).collect();
        peel(g, lambda, init, choose_method(g.num_layers, lambda, DEFAULT_HYBRID_THRESHOLD))
    });
    CoreIndexTable {
        num_layers: g.num_layers,
        rows,
    }
}

/// Nodes with `core_λ(v) ≥ k`; by uniqueness this is the `(k, λ)`-FirmCore.
pub fn extract_firmcore(table: &CoreIndexTable, k: u32, lambda: usize) -> NodeSet {
    NodeSet::from_sorted(
        table
            .row(lambda)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >= k)
            .map(|(v, _)| v as u32)
            .collect(),
    )
}
