//! Multilayer graph data model: ingestion from edge-list files, dense id
//! remapping, induced degrees, and synthetic generators for tests and
//! benchmarks.
//!
//! Graphs are immutable after construction and safe to share across threads.
//! Internal node and layer ids are dense `0..n`; original external ids are
//! kept in `node_labels` / `layer_labels` and used for all output.

use std::collections::HashMap;
use std::collections::HashSet;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;

/// A sorted set of internal node ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NodeSet(Vec<u32>);

impl NodeSet {
    /// Builds a set from arbitrary ids, sorting and deduplicating.
    pub fn from_unsorted(mut ids: Vec<u32>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        NodeSet(ids)
    }

    /// Wraps a strictly increasing id list without re-sorting.
    ///
    /// Panics in debug builds if the input is not strictly increasing.
    pub fn from_sorted(ids: Vec<u32>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        NodeSet(ids)
    }

    pub fn full(num_nodes: usize) -> Self {
        NodeSet((0..num_nodes as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Membership mask over `num_nodes` internal ids.
    pub fn mask(&self, num_nodes: usize) -> Vec<bool> {
        let mut m = vec![false; num_nodes];
        for &v in &self.0 {
            m[v as usize] = true;
        }
        m
    }

    pub fn is_subset_of(&self, other: &NodeSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }
}

impl FromIterator<u32> for NodeSet {
    fn from_iter<T: IntoIterator<Item = u32>>(iter: T) -> Self {
        NodeSet::from_unsorted(iter.into_iter().collect())
    }
}

/// Per-node vector of per-layer induced degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeMatrix {
    /// `rows[i]` is the degree vector (length `num_layers`) of the i-th node
    /// of the node set the matrix was computed for.
    pub rows: Vec<Vec<u32>>,
    /// Internal ids the rows correspond to, in row order.
    pub nodes: Vec<u32>,
}

/// An immutable undirected multilayer graph.
///
/// `adjacency[layer][node]` is the sorted neighbor list of `node` in `layer`.
#[derive(Debug, Clone)]
pub struct MultilayerGraph {
    pub num_nodes: usize,
    pub num_layers: usize,
    pub adjacency: Vec<Vec<Vec<u32>>>,
    pub node_labels: Vec<u64>,
    pub layer_labels: Vec<u64>,
}

/// An immutable directed multilayer graph; `in_adjacency` is the per-layer
/// transpose of `out_adjacency`.
#[derive(Debug, Clone)]
pub struct DirectedMultilayerGraph {
    pub num_nodes: usize,
    pub num_layers: usize,
    pub out_adjacency: Vec<Vec<Vec<u32>>>,
    pub in_adjacency: Vec<Vec<Vec<u32>>>,
    pub node_labels: Vec<u64>,
    pub layer_labels: Vec<u64>,
}

/// Counts of input lines dropped during ingestion.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub self_loops_dropped: usize,
    pub duplicates_dropped: usize,
}

impl LoadStats {
    pub fn dropped(&self) -> usize {
        self.self_loops_dropped + self.duplicates_dropped
    }
}

/// Result of [`load_edge_list`].
#[derive(Debug)]
pub enum LoadedGraph {
    Undirected(MultilayerGraph, LoadStats),
    Directed(DirectedMultilayerGraph, LoadStats),
}

struct Remapper {
    node_ids: HashMap<u64, u32>,
    layer_ids: HashMap<u64, u32>,
    node_labels: Vec<u64>,
    layer_labels: Vec<u64>,
}

impl Remapper {
    fn new() -> Self {
        Remapper {
            node_ids: HashMap::new(),
            layer_ids: HashMap::new(),
            node_labels: Vec::new(),
            layer_labels: Vec::new(),
        }
    }

    fn node(&mut self, ext: u64) -> u32 {
        *self.node_ids.entry(ext).or_insert_with(|| {
            self.node_labels.push(ext);
            (self.node_labels.len() - 1) as u32
        })
    }

    fn layer(&mut self, ext: u64) -> u32 {
        *self.layer_ids.entry(ext).or_insert_with(|| {
            self.layer_labels.push(ext);
            (self.layer_labels.len() - 1) as u32
        })
    }
}

fn parse_line(line_no: usize, line: &str) -> Result<Option<(u64, u64, u64)>, GraphError> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let mut fields = trimmed.split_whitespace();
    let mut next = |name: &str| -> Result<u64, GraphError> {
        let tok = fields.next().ok_or_else(|| GraphError::Parse {
            line: line_no,
            message: format!("missing {name} field, expected `layer src dst`"),
        })?;
        tok.parse::<u64>().map_err(|_| GraphError::Parse {
            line: line_no,
            message: format!("non-integer {name} field `{tok}`"),
        })
    };
    let layer = next("layer")?;
    let src = next("src")?;
    let dst = next("dst")?;
    // Trailing columns (e.g. weights) are ignored.
    Ok(Some((layer, src, dst)))
}

/// Loads a whitespace-separated `layer src dst` edge list. Lines starting
/// with `#` are ignored; self-loops and duplicate edges are dropped and
/// counted. Undirected graphs are symmetrized.
pub fn load_edge_list<P: AsRef<Path>>(path: P, directed: bool) -> Result<LoadedGraph, GraphError> {
    let file = std::fs::File::open(path)?;
    let reader = BufReader::new(file);
    let mut triples = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if let Some(t) = parse_line(idx + 1, &line)? {
            triples.push(t);
        }
    }
    if triples.is_empty() {
        return Err(GraphError::EmptyInput);
    }
    if directed {
        let (g, stats) = DirectedMultilayerGraph::from_external_edges(&triples);
        Ok(LoadedGraph::Directed(g, stats))
    } else {
        let (g, stats) = MultilayerGraph::from_external_edges(&triples);
        Ok(LoadedGraph::Undirected(g, stats))
    }
}

impl MultilayerGraph {
    /// Builds a graph from `(layer, src, dst)` triples over external ids.
    pub fn from_external_edges(triples: &[(u64, u64, u64)]) -> (Self, LoadStats) {
        let mut remap = Remapper::new();
        let mut stats = LoadStats::default();
        let mut seen: HashSet<(u32, u32, u32)> = HashSet::new();
        let mut edges = Vec::new();
        for &(l, s, d) in triples {
            let l = remap.layer(l);
            let u = remap.node(s);
            let v = remap.node(d);
            if u == v {
                stats.self_loops_dropped += 1;
                continue;
            }
            let key = (l, u.min(v), u.max(v));
            if !seen.insert(key) {
                stats.duplicates_dropped += 1;
                continue;
            }
            edges.push(key);
        }
        let num_nodes = remap.node_labels.len();
        let num_layers = remap.layer_labels.len();
        let mut adjacency = vec![vec![Vec::new(); num_nodes]; num_layers];
        for (l, u, v) in edges {
            adjacency[l as usize][u as usize].push(v);
            adjacency[l as usize][v as usize].push(u);
        }
        for layer in &mut adjacency {
            for nbrs in layer.iter_mut() {
                nbrs.sort_unstable();
            }
        }
        (
            MultilayerGraph {
                num_nodes,
                num_layers,
                adjacency,
                node_labels: remap.node_labels,
                layer_labels: remap.layer_labels,
            },
            stats,
        )
    }

    /// Builds a graph directly from internal-id edges `(layer, u, v)`.
    /// Labels default to the identity mapping.
    pub fn from_internal_edges(
        num_nodes: usize,
        num_layers: usize,
        edges: &[(u32, u32, u32)],
    ) -> Self {
        let mut seen = HashSet::new();
        let mut adjacency = vec![vec![Vec::new(); num_nodes]; num_layers];
        for &(l, u, v) in edges {
            assert!((l as usize) < num_layers && (u as usize) < num_nodes && (v as usize) < num_nodes);
            if u == v {
                continue;
            }
            if seen.insert((l, u.min(v), u.max(v))) {
                adjacency[l as usize][u as usize].push(v);
                adjacency[l as usize][v as usize].push(u);
            }
        }
        for layer in &mut adjacency {
            for nbrs in layer.iter_mut() {
                nbrs.sort_unstable();
            }
        }
        MultilayerGraph {
            num_nodes,
            num_layers,
            adjacency,
            node_labels: (0..num_nodes as u64).collect(),
            layer_labels: (0..num_layers as u64).collect(),
        }
    }

    pub fn neighbors(&self, layer: usize, v: u32) -> &[u32] {
        &self.adjacency[layer][v as usize]
    }

    pub fn degree(&self, layer: usize, v: u32) -> u32 {
        self.adjacency[layer][v as usize].len() as u32
    }

    /// Per-node degree vectors over all layers.
    pub fn degree_vectors(&self) -> Vec<Vec<u32>> {
        (0..self.num_nodes as u32)
            .map(|v| (0..self.num_layers).map(|l| self.degree(l, v)).collect())
            .collect()
    }

    pub fn edges_in_layer(&self, layer: usize) -> usize {
        self.adjacency[layer].iter().map(|n| n.len()).sum::<usize>() / 2
    }

    pub fn num_edges(&self) -> usize {
        (0..self.num_layers).map(|l| self.edges_in_layer(l)).sum()
    }

    /// Number of edges of layer `layer` inside the subgraph induced by `mask`.
    pub fn induced_edge_count(&self, layer: usize, mask: &[bool]) -> usize {
        let mut count = 0;
        for (u, nbrs) in self.adjacency[layer].iter().enumerate() {
            if !mask[u] {
                continue;
            }
            count += nbrs
                .iter()
                .filter(|&&v| mask[v as usize] && (v as usize) > u)
                .count();
        }
        count
    }

    /// Writes the graph back out in `layer src dst` form using external labels.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for l in 0..self.num_layers {
            for (u, nbrs) in self.adjacency[l].iter().enumerate() {
                for &v in nbrs {
                    if (v as usize) > u {
                        writeln!(
                            w,
                            "{} {} {}",
                            self.layer_labels[l], self.node_labels[u], self.node_labels[v as usize]
                        )?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Restricts the graph to its first `layers` layers (benchmark helper).
    pub fn layer_prefix(&self, layers: usize) -> MultilayerGraph {
        assert!(layers >= 1 && layers <= self.num_layers);
        MultilayerGraph {
            num_nodes: self.num_nodes,
            num_layers: layers,
            adjacency: self.adjacency[..layers].to_vec(),
            node_labels: self.node_labels.clone(),
            layer_labels: self.layer_labels[..layers].to_vec(),
        }
    }
}

impl DirectedMultilayerGraph {
    pub fn from_external_edges(triples: &[(u64, u64, u64)]) -> (Self, LoadStats) {
        let mut remap = Remapper::new();
        let mut stats = LoadStats::default();
        let mut seen: HashSet<(u32, u32, u32)> = HashSet::new();
        let mut edges = Vec::new();
        for &(l, s, d) in triples {
            let l = remap.layer(l);
            let u = remap.node(s);
            let v = remap.node(d);
            if u == v {
                stats.self_loops_dropped += 1;
                continue;
            }
            if !seen.insert((l, u, v)) {
                stats.duplicates_dropped += 1;
                continue;
            }
            edges.push((l, u, v));
        }
        let num_nodes = remap.node_labels.len();
        let num_layers = remap.layer_labels.len();
        let g = Self::build(num_nodes, num_layers, &edges, remap.node_labels, remap.layer_labels);
        (g, stats)
    }

    pub fn from_internal_edges(
        num_nodes: usize,
        num_layers: usize,
        edges: &[(u32, u32, u32)],
    ) -> Self {
        let mut seen = HashSet::new();
        let mut clean = Vec::new();
        for &(l, u, v) in edges {
            assert!((l as usize) < num_layers && (u as usize) < num_nodes && (v as usize) < num_nodes);
            if u != v && seen.insert((l, u, v)) {
                clean.push((l, u, v));
            }
        }
        Self::build(
            num_nodes,
            num_layers,
            &clean,
            (0..num_nodes as u64).collect(),
            (0..num_layers as u64).collect(),
        )
    }

    fn build(
        num_nodes: usize,
        num_layers: usize,
        edges: &[(u32, u32, u32)],
        node_labels: Vec<u64>,
        layer_labels: Vec<u64>,
    ) -> Self {
        let mut out_adjacency = vec![vec![Vec::new(); num_nodes]; num_layers];
        let mut in_adjacency = vec![vec![Vec::new(); num_nodes]; num_layers];
        for &(l, u, v) in edges {
            out_adjacency[l as usize][u as usize].push(v);
            in_adjacency[l as usize][v as usize].push(u);
        }
        for layer in out_adjacency.iter_mut().chain(in_adjacency.iter_mut()) {
            for nbrs in layer.iter_mut() {
                nbrs.sort_unstable();
            }
        }
        DirectedMultilayerGraph {
            num_nodes,
            num_layers,
            out_adjacency,
            in_adjacency,
            node_labels,
            layer_labels,
        }
    }

    pub fn out_neighbors(&self, layer: usize, v: u32) -> &[u32] {
        &self.out_adjacency[layer][v as usize]
    }

    pub fn in_neighbors(&self, layer: usize, v: u32) -> &[u32] {
        &self.in_adjacency[layer][v as usize]
    }

    pub fn out_degree(&self, layer: usize, v: u32) -> u32 {
        self.out_adjacency[layer][v as usize].len() as u32
    }

    pub fn in_degree(&self, layer: usize, v: u32) -> u32 {
        self.in_adjacency[layer][v as usize].len() as u32
    }

    pub fn edges_in_layer(&self, layer: usize) -> usize {
        self.out_adjacency[layer].iter().map(|n| n.len()).sum()
    }

    pub fn num_edges(&self) -> usize {
        (0..self.num_layers).map(|l| self.edges_in_layer(l)).sum()
    }

    /// Number of layer-`layer` edges from `s_mask` nodes into `t_mask` nodes.
    pub fn edges_between(&self, layer: usize, s_mask: &[bool], t_mask: &[bool]) -> usize {
        let mut count = 0;
        for (u, nbrs) in self.out_adjacency[layer].iter().enumerate() {
            if !s_mask[u] {
                continue;
            }
            count += nbrs.iter().filter(|&&v| t_mask[v as usize]).count();
        }
        count
    }

    pub fn write_edge_list<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for l in 0..self.num_layers {
            for (u, nbrs) in self.out_adjacency[l].iter().enumerate() {
                for &v in nbrs {
                    writeln!(
                        w,
                        "{} {} {}",
                        self.layer_labels[l], self.node_labels[u], self.node_labels[v as usize]
                    )?;
                }
            }
        }
        Ok(())
    }
}

/// Induced degree matrix: entry `(v, ℓ)` is the number of neighbors of `v`
/// inside `S` in layer `ℓ`, for each `v ∈ S`.
pub fn degree_matrix(g: &MultilayerGraph, s: &NodeSet) -> Result<DegreeMatrix, GraphError> {
    if let Some(v) = s.iter().find(|&v| v as usize >= g.num_nodes) {
        return Err(GraphError::invalid(format!("node id {v} out of range")));
    }
    let mask = s.mask(g.num_nodes);
    let rows = s
        .iter()
        .map(|v| {
            (0..g.num_layers)
                .map(|l| g.neighbors(l, v).iter().filter(|&&u| mask[u as usize]).count() as u32)
                .collect()
        })
        .collect();
    Ok(DegreeMatrix {
        rows,
        nodes: s.iter().collect(),
    })
}

/// Synthetic graph models.
#[derive(Debug, Clone, Copy)]
pub enum SyntheticModel {
    /// Erdős–Rényi with edge probability `p` independently in every layer.
    UniformRandom { p: f64 },
    /// An ER(`p_in`) subgraph planted on nodes `0..core_size` in every layer,
    /// over an ER(`p_out`) background on the remaining pairs.
    PlantedDense { core_size: usize, p_in: f64, p_out: f64 },
}

fn check_prob(p: f64, name: &str) -> Result<(), GraphError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(GraphError::invalid(format!("{name} = {p} not in [0, 1]")));
    }
    Ok(())
}

/// Deterministic synthetic undirected multilayer graph for a fixed seed.
pub fn generate_synthetic(
    num_nodes: usize,
    num_layers: usize,
    model: SyntheticModel,
    seed: u64,
) -> Result<MultilayerGraph, GraphError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(u32, u32, u32)> = Vec::new();
    match model {
        SyntheticModel::UniformRandom { p } => {
            check_prob(p, "p")?;
            for l in 0..num_layers as u32 {
                sample_pairs(num_nodes, p, &mut rng, |u, v| edges.push((l, u, v)));
            }
        }
        SyntheticModel::PlantedDense { core_size, p_in, p_out } => {
            check_prob(p_in, "p_in")?;
            check_prob(p_out, "p_out")?;
            if core_size > num_nodes {
                return Err(GraphError::invalid("core_size exceeds num_nodes"));
            }
            for l in 0..num_layers as u32 {
                for u in 0..num_nodes as u32 {
                    for v in (u + 1)..num_nodes as u32 {
                        let p = if (v as usize) < core_size { p_in } else { p_out };
                        if rng.gen::<f64>() < p {
                            edges.push((l, u, v));
                        }
                    }
                }
            }
        }
    }
    Ok(MultilayerGraph::from_internal_edges(num_nodes, num_layers, &edges))
}

/// Deterministic synthetic directed multilayer graph (uniform edge
/// probability per ordered pair and layer).
pub fn generate_synthetic_directed(
    num_nodes: usize,
    num_layers: usize,
    p: f64,
    seed: u64,
) -> Result<DirectedMultilayerGraph, GraphError> {
    check_prob(p, "p")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for l in 0..num_layers as u32 {
        for u in 0..num_nodes as u32 {
            for v in 0..num_nodes as u32 {
                if u != v && rng.gen::<f64>() < p {
                    edges.push((l, u, v));
                }
            }
        }
    }
    Ok(DirectedMultilayerGraph::from_internal_edges(num_nodes, num_layers, &edges))
}

/// Samples unordered pairs with probability `p` using geometric skips, so the
/// cost is proportional to the number of sampled edges rather than n².
fn sample_pairs<R: Rng, F: FnMut(u32, u32)>(num_nodes: usize, p: f64, rng: &mut R, mut emit: F) {
    if num_nodes < 2 || p <= 0.0 {
        return;
    }
    let n = num_nodes as u32;
    if p >= 1.0 {
        for u in 0..n {
            for v in (u + 1)..n {
                emit(u, v);
            }
        }
        return;
    }
    let log_q = (1.0 - p).ln();
    let mut u: u32 = 0;
    // v is one past the previously emitted column within row u.
    let mut v: u64 = 1;
    loop {
        let r: f64 = rng.gen::<f64>().max(f64::MIN_POSITIVE);
        let skip = (r.ln() / log_q).floor() as u64;
        v += skip;
        while v >= n as u64 {
            v -= n as u64;
            u += 1;
            v += u as u64 + 1;
            if u >= n - 1 {
                return;
            }
        }
        emit(u, v as u32);
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn load_str(contents: &str, directed: bool) -> Result<LoadedGraph, GraphError> {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        load_edge_list(f.path(), directed)
    }

    #[test]
    fn load_small_undirected() {
        let g = match load_str("1 10 20\n1 20 30\n2 10 30\n", false).unwrap() {
            LoadedGraph::Undirected(g, stats) => {
                assert_eq!(stats.dropped(), 0);
                g
            }
            _ => panic!("expected undirected"),
        };
        assert_eq!(g.num_nodes, 3);
        assert_eq!(g.num_layers, 2);
        assert_eq!(g.num_edges(), 3);
    }

    #[test]
    fn self_loop_dropped() {
        match load_str("1 10 10\n1 10 20\n", false).unwrap() {
            LoadedGraph::Undirected(g, stats) => {
                assert_eq!(stats.self_loops_dropped, 1);
                assert_eq!(g.num_edges(), 1);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn duplicate_symmetrized() {
        match load_str("1 10 20\n1 20 10\n", false).unwrap() {
            LoadedGraph::Undirected(g, stats) => {
                assert_eq!(stats.duplicates_dropped, 1);
                assert_eq!(g.num_edges(), 1);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = load_str("1 10 20\n1 x 20\n", false).unwrap_err();
        match err {
            GraphError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn empty_file_rejected() {
        let err = load_str("# only a comment\n\n", false).unwrap_err();
        assert!(matches!(err, GraphError::EmptyInput));
    }

    #[test]
    fn comments_and_trailing_columns_ignored() {
        match load_str("# header\n1 10 20 0.5\n", false).unwrap() {
            LoadedGraph::Undirected(g, _) => assert_eq!(g.num_edges(), 1),
            _ => panic!(),
        }
    }

    #[test]
    fn directed_transpose_invariant() {
        let g = match load_str("1 0 1\n1 1 2\n2 2 0\n1 0 1\n", true).unwrap() {
            LoadedGraph::Directed(g, stats) => {
                assert_eq!(stats.duplicates_dropped, 1);
                g
            }
            _ => panic!(),
        };
        for l in 0..g.num_layers {
            for u in 0..g.num_nodes as u32 {
                for &v in g.out_neighbors(l, u) {
                    assert!(g.in_neighbors(l, v).contains(&u));
                }
            }
            let out: usize = (0..g.num_nodes as u32).map(|v| g.out_degree(l, v) as usize).sum();
            let inn: usize = (0..g.num_nodes as u32).map(|v| g.in_degree(l, v) as usize).sum();
            assert_eq!(out, inn);
        }
    }

    #[test]
    fn round_trip_preserves_graph() {
        let g = generate_synthetic(15, 3, SyntheticModel::UniformRandom { p: 0.3 }, 7).unwrap();
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf).unwrap();
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(&buf).unwrap();
        let g2 = match load_edge_list(f.path(), false).unwrap() {
            LoadedGraph::Undirected(g2, _) => g2,
            _ => panic!(),
        };
        assert_eq!(g.num_layers, g2.num_layers);
        assert_eq!(g.num_edges(), g2.num_edges());
        // Compare via external labels: edges must coincide as labeled sets.
        let labeled = |g: &MultilayerGraph| -> HashSet<(u64, u64, u64)> {
            let mut set = HashSet::new();
            for l in 0..g.num_layers {
                for u in 0..g.num_nodes {
                    for &v in &g.adjacency[l][u] {
                        let (a, b) = (g.node_labels[u], g.node_labels[v as usize]);
                        set.insert((g.layer_labels[l], a.min(b), a.max(b)));
                    }
                }
            }
            set
        };
        assert_eq!(labeled(&g), labeled(&g2));
    }

    #[test]
    fn degree_matrix_full_graph_handshake() {
        let g = generate_synthetic(12, 3, SyntheticModel::UniformRandom { p: 0.4 }, 3).unwrap();
        let dm = degree_matrix(&g, &NodeSet::full(g.num_nodes)).unwrap();
        for l in 0..g.num_layers {
            let sum: u32 = dm.rows.iter().map(|r| r[l]).sum();
            assert_eq!(sum as usize, 2 * g.edges_in_layer(l));
        }
    }

    #[test]
    fn degree_matrix_singleton_zero() {
        let g = generate_synthetic(8, 2, SyntheticModel::UniformRandom { p: 0.8 }, 1).unwrap();
        let dm = degree_matrix(&g, &NodeSet::from_sorted(vec![3])).unwrap();
        assert_eq!(dm.rows, vec![vec![0, 0]]);
    }

    #[test]
    fn degree_matrix_matches_recount_oracle() {
        let g = generate_synthetic(8, 2, SyntheticModel::UniformRandom { p: 0.5 }, 11).unwrap();
        let s = NodeSet::from_unsorted(vec![0, 2, 3, 5, 7]);
        let dm = degree_matrix(&g, &s).unwrap();
        // Naive per-edge recount.
        for (row, v) in dm.rows.iter().zip(dm.nodes.iter()) {
            for l in 0..g.num_layers {
                let mut count = 0;
                for u in s.iter() {
                    if u != *v && g.neighbors(l, *v).contains(&u) {
                        count += 1;
                    }
                }
                assert_eq!(row[l], count);
            }
        }
    }

    #[test]
    fn degree_matrix_rejects_out_of_range() {
        let g = generate_synthetic(5, 1, SyntheticModel::UniformRandom { p: 0.5 }, 0).unwrap();
        assert!(degree_matrix(&g, &NodeSet::from_sorted(vec![99])).is_err());
    }

    #[test]
    fn synthetic_p_zero_edgeless() {
        let g = generate_synthetic(6, 2, SyntheticModel::UniformRandom { p: 0.0 }, 1).unwrap();
        assert_eq!(g.num_edges(), 0);
    }

    #[test]
    fn synthetic_p_one_complete() {
        let g = generate_synthetic(4, 2, SyntheticModel::UniformRandom { p: 1.0 }, 1).unwrap();
        assert_eq!(g.num_edges(), 12);
    }

    #[test]
    fn synthetic_deterministic() {
        let a = generate_synthetic(30, 3, SyntheticModel::UniformRandom { p: 0.2 }, 42).unwrap();
        let b = generate_synthetic(30, 3, SyntheticModel::UniformRandom { p: 0.2 }, 42).unwrap();
        assert_eq!(a.adjacency, b.adjacency);
    }

    #[test]
    fn synthetic_invalid_probability() {
        assert!(generate_synthetic(4, 1, SyntheticModel::UniformRandom { p: 1.5 }, 0).is_err());
    }

    #[test]
    fn geometric_sampler_hits_expected_density() {
        let g = generate_synthetic(200, 1, SyntheticModel::UniformRandom { p: 0.5 }, 5).unwrap();
        let total = 200 * 199 / 2;
        let m = g.num_edges();
        // Loose 5-sigma band around p * C(n, 2).
        let sigma = (total as f64 * 0.25).sqrt();
        assert!((m as f64 - total as f64 * 0.5).abs() < 5.0 * sigma);
    }
}
