//! FirmD-Core decomposition of directed multilayer graphs.
//!
//! A `(k, r, λ)`-FirmD-Core is the maximal `(S, T)`-induced subgraph in
//! which every node of `S` has out-degree at least `k` into `T` in at least
//! `λ` layers, and every node of `T` has in-degree at least `r` from `S` in
//! at least `λ` layers. `S` and `T` may overlap.
//!
//! For each `λ` and each out-threshold `k`, the decomposition peels `T` by
//! the in-threshold `r` with a bucket queue, recording for every node the
//! largest `r` at which it still sits on the `T` side (`t_index`) and on the
//! `S` side (`s_index`). State is re-derived from the graph at every `k`.

use std::fmt::Write as _;

use crate::error::GraphError;
use crate::mlgraph::{DirectedMultilayerGraph, NodeSet};
use crate::parallel;

/// Indices for one `(λ, k)` pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KSlice {
    /// Largest `r` with the node on the `T` side of the `(k, r, λ)`-FDC.
    pub t_index: Vec<u32>,
    /// Largest `r` with the node on the `S` side of the `(k, r, λ)`-FDC
    /// (0 for nodes never on the `S` side at this `k`).
    pub s_index: Vec<u32>,
}

/// One `λ` row: slices for `k ∈ [1, k_max]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaRow {
    /// Maximum Top-λ out-degree; all `(k, ·, λ)`-FDCs with `k > k_max` are
    /// empty.
    pub k_max: u32,
    pub slices: Vec<KSlice>,
}

/// FirmD-Core indices for every `λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DCoreIndexTable {
    pub num_nodes: usize,
    pub num_layers: usize,
    pub rows: Vec<LambdaRow>,
}

impl DCoreIndexTable {
    pub fn row(&self, lambda: usize) -> &LambdaRow {
        &self.rows[lambda - 1]
    }

    /// TSV with header `node\tlambda\tk\tt_index\ts_index`; all-zero entries
    /// are omitted.
    pub fn to_tsv(&self, node_labels: &[u64]) -> String {
        let mut order: Vec<usize> = (0..node_labels.len()).collect();
        order.sort_by_key(|&v| node_labels[v]);
        let mut out = String::from("node\tlambda\tk\tt_index\ts_index\n");
        for (li, row) in self.rows.iter().enumerate() {
            for (ki, slice) in row.slices.iter().enumerate() {
                for &v in &order {
                    let (t, s) = (slice.t_index[v], slice.s_index[v]);
                    if t > 0 || s > 0 {
                        let _ = writeln!(
                            out,
                            "{}\t{}\t{}\t{}\t{}",
                            node_labels[v],
                            li + 1,
                            ki + 1,
                            t,
                            s
                        );
                    }
                }
            }
        }
        out
    }
}

fn check_lambda(num_layers: usize, lambda: usize) -> Result<(), GraphError> {
    if lambda == 0 || lambda > num_layers {
        return Err(GraphError::invalid(format!(
            "lambda = {lambda} out of range 1..={num_layers}"
        )));
    }
    Ok(())
}

fn top_lambda_of(degs: &[Vec<u32>], v: usize, lambda: usize, scratch: &mut Vec<u32>) -> u32 {
    scratch.clear();
    scratch.extend(degs.iter().map(|d| d[v]));
    let idx = lambda - 1;
    scratch.select_nth_unstable_by(idx, |a, b| b.cmp(a));
    scratch[idx]
}

/// The maximal `(S, T)` pair for fixed thresholds, computed by a worklist
/// peel over qualifying-layer counts.
pub fn firmdcore_fixed(
    g: &DirectedMultilayerGraph,
    k: u32,
    r: u32,
    lambda: usize,
) -> Result<(NodeSet, NodeSet), GraphError> {
    check_lambda(g.num_layers, lambda)?;
    let n = g.num_nodes;
    let mut s_alive = vec![true; n];
    let mut t_alive = vec![true; n];
    // Current degrees restricted to the surviving opposite side.
    let mut out_deg: Vec<Vec<u32>> = (0..g.num_layers)
        .map(|l| (0..n as u32).map(|v| g.out_degree(l, v)).collect())
        .collect();
    let mut in_deg: Vec<Vec<u32>> = (0..g.num_layers)
        .map(|l| (0..n as u32).map(|v| g.in_degree(l, v)).collect())
        .collect();
    // Number of layers currently meeting each side's threshold.
    let count_ok = |degs: &[Vec<u32>], v: usize, need: u32| {
        degs.iter().filter(|d| d[v] >= need).count()
    };
    let mut s_ok: Vec<usize> = (0..n).map(|v| count_ok(&out_deg, v, k)).collect();
    let mut t_ok: Vec<usize> = (0..n).map(|v| count_ok(&in_deg, v, r)).collect();

    let mut work: Vec<u32> = Vec::new();
    for v in 0..n as u32 {
        if s_ok[v as usize] < lambda || t_ok[v as usize] < lambda {
            work.push(v);
        }
    }
    while let Some(v) = work.pop() {
        let vi = v as usize;
        if s_alive[vi] && s_ok[vi] < lambda {
            s_alive[vi] = false;
            if r > 0 {
                for (l, in_deg_l) in in_deg.iter_mut().enumerate() {
                    for &t in g.out_neighbors(l, v) {
                        let ti = t as usize;
                        if t_alive[ti] {
                            in_deg_l[ti] -= 1;
                            if in_deg_l[ti] + 1 == r {
                                t_ok[ti] -= 1;
                                if t_ok[ti] < lambda {
                                    work.push(t);
                                }
                            }
                        }
                    }
                }
            }
        }
        if t_alive[vi] && t_ok[vi] < lambda {
            t_alive[vi] = false;
            if k > 0 {
                for (l, out_deg_l) in out_deg.iter_mut().enumerate() {
                    for &s in g.in_neighbors(l, v) {
                        let si = s as usize;
                        if s_alive[si] {
                            out_deg_l[si] -= 1;
                            if out_deg_l[si] + 1 == k {
                                s_ok[si] -= 1;
                                if s_ok[si] < lambda {
                                    work.push(s);
                                }
                            }
                        }
                    }
                }
            }
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
    Ok((collect(&s_alive), collect(&t_alive)))
}

/// One `λ` row of the decomposition: for each `k ∈ [1, k_max]`, an in-degree
/// bucket peel over `T` assigning `t_index` at removal and `s_index` at the
/// level where the node drops off the `S` side.
pub fn firmdcore_decomposition(
    g: &DirectedMultilayerGraph,
    lambda: usize,
) -> Result<LambdaRow, GraphError> {
    check_lambda(g.num_layers, lambda)?;
    let n = g.num_nodes;
    let mut scratch = Vec::with_capacity(g.num_layers);

    let full_out: Vec<Vec<u32>> = (0..g.num_layers)
        .map(|l| (0..n as u32).map(|v| g.out_degree(l, v)).collect())
        .collect();
    let top_out: Vec<u32> = (0..n)
        .map(|v| top_lambda_of(&full_out, v, lambda, &mut scratch))
        .collect();
    let k_max = top_out.iter().copied().max().unwrap_or(0);

    let mut slices = Vec::with_capacity(k_max as usize);
    for k in 1..=k_max {
        // S starts as the nodes whose Top-λ out-degree can reach k; T = V.
        let mut s_alive: Vec<bool> = top_out.iter().map(|&t| t >= k).collect();
        let mut t_alive = vec![true; n];
        let mut out_deg = full_out.clone();
        let mut bound_plus = top_out.clone();
        // In-degrees count only edges from the filtered S.
        let mut in_deg: Vec<Vec<u32>> = (0..g.num_layers)
            .map(|l| {
                (0..n as u32)
                    .map(|v| {
                        g.in_neighbors(l, v)
                            .iter()
                            .filter(|&&u| s_alive[u as usize])
                            .count() as u32
                    })
                    .collect()
            })
            .collect();
        let mut bound_minus: Vec<u32> = (0..n)
            .map(|v| top_lambda_of(&in_deg, v, lambda, &mut scratch))
            .collect();

        let max_bound = bound_minus.iter().copied().max().unwrap_or(0) as usize;
        let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); max_bound + 1];
        for v in 0..n as u32 {
            buckets[bound_minus[v as usize] as usize].push(v);
        }

        let mut t_index = vec![0u32; n];
        let mut s_index = vec![0u32; n];
        let mut s_marked = vec![false; n];
        let mut t_marked = vec![false; n];
        let mut touched_s: Vec<u32> = Vec::new();
        let mut touched_t: Vec<u32> = Vec::new();

        for r in 0..=max_bound {
            let mut i = 0;
            while i < buckets[r].len() {
                let v = buckets[r][i];
                i += 1;
                let vi = v as usize;
                if !t_alive[vi] || bound_minus[vi] as usize != r {
                    continue;
                }
                t_alive[vi] = false;
                t_index[vi] = r as u32;

                touched_s.clear();
                for (l, out_deg_l) in out_deg.iter_mut().enumerate() {
                    for &u in g.in_neighbors(l, v) {
                        let ui = u as usize;
                        if s_alive[ui] {
                            out_deg_l[ui] -= 1;
                            if out_deg_l[ui] + 1 == bound_plus[ui] && !s_marked[ui] {
                                s_marked[ui] = true;
                                touched_s.push(u);
                            }
                        }
                    }
                }
                for &u in &touched_s {
                    let ui = u as usize;
                    s_marked[ui] = false;
                    bound_plus[ui] = top_lambda_of(&out_deg, ui, lambda, &mut scratch);
                    if bound_plus[ui] < k {
                        // u leaves S; it was on the S side of the (k, r, λ)
                        // core but not of (k, r + 1, λ).
                        s_alive[ui] = false;
                        s_index[ui] = r as u32;
                        touched_t.clear();
                        for (l, in_deg_l) in in_deg.iter_mut().enumerate() {
                            for &w in g.out_neighbors(l, u) {
                                let wi = w as usize;
                                if t_alive[wi] {
                                    in_deg_l[wi] -= 1;
                                    if in_deg_l[wi] + 1 == bound_minus[wi] && !t_marked[wi] {
                                        t_marked[wi] = true;
                                        touched_t.push(w);
                                    }
                                }
                            }
                        }
                        for &w in &touched_t {
                            let wi = w as usize;
                            t_marked[wi] = false;
                            let fresh = top_lambda_of(&in_deg, wi, lambda, &mut scratch)
                                .max(r as u32);
                            if fresh != bound_minus[wi] {
                                bound_minus[wi] = fresh;
                                buckets[fresh as usize].push(w);
                            }
                        }
                    }
                }
            }
            buckets[r] = Vec::new();
        }
        // Any S survivor was on the S side up to the last peel level.
        if let Some(&last) = t_index.iter().max() {
            for v in 0..n {
                if s_alive[v] {
                    s_index[v] = last;
                }
            }
        }
        slices.push(KSlice { t_index, s_index });
    }
    Ok(LambdaRow { k_max, slices })
}

/// Full decomposition over every `λ`; per-λ rows run concurrently and the
/// output is independent of `threads`.
pub fn full_firmdcore(g: &DirectedMultilayerGraph, threads: usize) -> DCoreIndexTable {
    assert!(threads >= 1, "threads must be >= 1");
    let rows = parallel::run_indexed(g.num_layers, threads, |i| {
        firmdcore_decomposition(g, i + 1).unwrap()
    });
    DCoreIndexTable {
        num_nodes: g.num_nodes,
        num_layers: g.num_layers,
        rows,
    }
}

/// Reconstructs the `(k, r, λ)`-FDC from the index table. Thresholds of 0
/// are resolved directly against the graph since the table stores `k ≥ 1`.
pub fn extract_firmdcore(
    table: &DCoreIndexTable,
    g: &DirectedMultilayerGraph,
    k: u32,
    r: u32,
    lambda: usize,
) -> Result<(NodeSet, NodeSet), GraphError> {
    check_lambda(table.num_layers, lambda)?;
    let n = table.num_nodes;
    let layers_meeting = |degs: &mut dyn Iterator<Item = u32>, need: u32| {
        degs.filter(|&d| d >= need).count()
    };
    if k == 0 && r == 0 {
        return Ok((NodeSet::full(n), NodeSet::full(n)));
    }
    if k == 0 {
        // S is unconstrained, so T filters on full in-degrees.
        let t = (0..n as u32)
            .filter(|&v| {
                layers_meeting(&mut (0..g.num_layers).map(|l| g.in_degree(l, v)), r) >= lambda
            })
            .collect();
        return Ok((NodeSet::full(n), NodeSet::from_sorted(t)));
    }
    if r == 0 {
        let s = (0..n as u32)
            .filter(|&v| {
                layers_meeting(&mut (0..g.num_layers).map(|l| g.out_degree(l, v)), k) >= lambda
            })
            .collect();
        return Ok((NodeSet::from_sorted(s), NodeSet::full(n)));
    }
    let row = table.row(lambda);
    if k > row.k_max {
        return Ok((NodeSet::default(), NodeSet::default()));
    }
    let slice = &row.slices[k as usize - 1];
    let s = (0..n as u32).filter(|&v| slice.s_index[v as usize] >= r).collect();
    let t = (0..n as u32).filter(|&v| slice.t_index[v as usize] >= r).collect();
    Ok((NodeSet::from_sorted(s), NodeSet::from_sorted(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mlgraph::generate_synthetic_directed;
    use crate::oracle::{self, OracleBudget};

    #[test]
    fn zero_thresholds_keep_everything() {
        let g = generate_synthetic_directed(6, 2, 0.3, 1).unwrap();
        let (s, t) = firmdcore_fixed(&g, 0, 0, 1).unwrap();
        assert_eq!(s.len(), 6);
        assert_eq!(t.len(), 6);
    }

    #[test]
    fn fixed_matches_naive_oracle() {
        let budget = OracleBudget::default();
        for seed in 0..10 {
            let g = generate_synthetic_directed(8, 2, 0.35, seed).unwrap();
            for lambda in 1..=2 {
                for k in 0..4 {
                    for r in 0..4 {
                        let fast = firmdcore_fixed(&g, k, r, lambda).unwrap();
                        let naive = oracle::naive_firmdcore(&g, k, r, lambda, &budget).unwrap();
                        assert_eq!(fast, naive, "seed {seed} k {k} r {r} lambda {lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn reconstruction_matches_fixed_point() {
        for seed in 0..10 {
            let g = generate_synthetic_directed(8, 2, 0.4, seed).unwrap();
            let table = full_firmdcore(&g, 1);
            for lambda in 1..=2 {
                let k_hi = table.row(lambda).k_max + 2;
                for k in 0..=k_hi {
                    for r in 0..=k_hi + 2 {
                        let rec = extract_firmdcore(&table, &g, k, r, lambda).unwrap();
                        let fixed = firmdcore_fixed(&g, k, r, lambda).unwrap();
                        assert_eq!(rec, fixed, "seed {seed} k {k} r {r} lambda {lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn edgeless_layer_forces_zero_indices() {
        // Layer 1 has edges, layer 2 none; with λ = 2 nothing qualifies.
        let g = crate::mlgraph::DirectedMultilayerGraph::from_internal_edges(
            4,
            2,
            &[(0, 0, 1), (0, 1, 2), (0, 2, 0)],
        );
        let row = firmdcore_decomposition(&g, 2).unwrap();
        assert_eq!(row.k_max, 0);
        assert!(row.slices.is_empty());
    }

    #[test]
    fn indices_monotone_in_k_and_lambda() {
        for seed in 0..5 {
            let g = generate_synthetic_directed(10, 3, 0.3, seed).unwrap();
            let table = full_firmdcore(&g, 1);
            for lambda in 1..=3 {
                let row = table.row(lambda);
                for ki in 1..row.slices.len() {
                    let (prev, cur) = (&row.slices[ki - 1], &row.slices[ki]);
                    for v in 0..g.num_nodes {
                        assert!(cur.t_index[v] <= prev.t_index[v]);
                        assert!(cur.s_index[v] <= prev.s_index[v]);
                    }
                }
            }
            for lambda in 1..3 {
                let (a, b) = (table.row(lambda), table.row(lambda + 1));
                for ki in 0..b.slices.len().min(a.slices.len()) {
                    for v in 0..g.num_nodes {
                        assert!(b.slices[ki].t_index[v] <= a.slices[ki].t_index[v]);
                        assert!(b.slices[ki].s_index[v] <= a.slices[ki].s_index[v]);
                    }
                }
            }
        }
    }

    #[test]
    fn definition_conditions_hold_on_reconstruction() {
        for seed in 0..5 {
            let g = generate_synthetic_directed(9, 2, 0.4, seed).unwrap();
            let table = full_firmdcore(&g, 1);
            for lambda in 1..=2 {
                for k in 1..=table.row(lambda).k_max {
                    for r in 1..=4u32 {
                        let (s, t) = extract_firmdcore(&table, &g, k, r, lambda).unwrap();
                        let t_mask = t.mask(g.num_nodes);
                        let s_mask = s.mask(g.num_nodes);
                        for u in s.iter() {
                            let ok = (0..g.num_layers)
                                .filter(|&l| {
                                    g.out_neighbors(l, u)
                                        .iter()
                                        .filter(|&&v| t_mask[v as usize])
                                        .count()
                                        >= k as usize
                                })
                                .count();
                            assert!(ok >= lambda);
                        }
                        for v in t.iter() {
                            let ok = (0..g.num_layers)
                                .filter(|&l| {
                                    g.in_neighbors(l, v)
                                        .iter()
                                        .filter(|&&u| s_mask[u as usize])
                                        .count()
                                        >= r as usize
                                })
                                .count();
                            assert!(ok >= lambda);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn thread_count_does_not_change_table() {
        let g = generate_synthetic_directed(12, 3, 0.3, 3).unwrap();
        assert_eq!(full_firmdcore(&g, 1), full_firmdcore(&g, 4));
    }

    #[test]
    fn empty_graph_table() {
        let g = crate::mlgraph::DirectedMultilayerGraph::from_internal_edges(3, 2, &[]);
        let table = full_firmdcore(&g, 1);
        for row in &table.rows {
            assert_eq!(row.k_max, 0);
        }
    }

    #[test]
    fn single_layer_kr_core_degeneration() {
        // One directed edge a -> b: the [1,1]-core is S = {a}, T = {b}.
        let g = crate::mlgraph::DirectedMultilayerGraph::from_internal_edges(2, 1, &[(0, 0, 1)]);
        let table = full_firmdcore(&g, 1);
        let (s, t) = extract_firmdcore(&table, &g, 1, 1, 1).unwrap();
        assert_eq!(s, NodeSet::from_sorted(vec![0]));
        assert_eq!(t, NodeSet::from_sorted(vec![1]));
    }
}
