//! Co-tagging networks: the weighted projection of a bipartite tag-question
//! graph onto its tags, plus degree and clustering measures.
//!
//! Edge weights count shared questions: `w_{s,t} = |{q : s,q and t,q in E}|`.
//! Projection enumerates tag pairs inside each question, so it runs in
//! `O(sum_q |tags(q)|^2)` -- cheap because questions carry few tags.
//!
//! Triangle work uses degree-ordered edge orientation with sorted-adjacency
//! intersection. Node terms are accumulated in a fixed order, single-threaded,
//! so clustering values are bit-stable run to run.

use std::collections::HashMap;
use std::io::{self, Write};

use serde::Serialize;
use thiserror::Error;

use crate::graph::BipartiteTagGraph;

#[derive(Debug, Error)]
pub enum CotagError {
    #[error("unknown tag id {tag} (graph has {n_tags} tags)")]
    UnknownTag { tag: u32, n_tags: usize },
    #[error("no maximum weight: graph has no edges")]
    NoEdges,
    #[error("invalid edge ({s}, {t}, {w}): {reason}")]
    InvalidEdge { s: u32, t: u32, w: u64, reason: &'static str },
}

/// The three clustering coefficients plus the count of nodes excluded by
/// the degree-at-least-two convention (they contribute zero to the average
/// but stay in the denominator).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClusteringReport {
    pub c_unweighted: f64,
    pub c_weighted: f64,
    /// `ln(C_w)`; absent when `C_w` is zero.
    pub ln_c_weighted: Option<f64>,
    pub c_logweighted: f64,
    pub n_nodes_deg_lt2: u64,
}

/// Weighted undirected graph on tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotagGraph {
    n_tags: usize,
    /// Edges with `s < t`, sorted by `(s, t)`.
    edges: Vec<(u32, u32, u64)>,
    /// Per node: `(neighbor, weight)` sorted by neighbor.
    adj: Vec<Vec<(u32, u64)>>,
}

impl CotagGraph {
    /// Build from an edge list; endpoints must be distinct, in range, with
    /// positive weight, and no pair may repeat.
    pub fn from_edges(n_tags: usize, raw: Vec<(u32, u32, u64)>) -> Result<Self, CotagError> {
        let mut edges = Vec::with_capacity(raw.len());
        for (a, b, w) in raw {
            let (s, t) = if a < b { (a, b) } else { (b, a) };
            let reason = if a == b {
                Some("self-loop")
            } else if t as usize >= n_tags {
                Some("endpoint out of range")
            } else if w == 0 {
                Some("zero weight")
            } else {
                None
            };
            if let Some(reason) = reason {
                return Err(CotagError::InvalidEdge { s: a, t: b, w, reason });
            }
            edges.push((s, t, w));
        }
        edges.sort_unstable();
        if edges.windows(2).any(|p| (p[0].0, p[0].1) == (p[1].0, p[1].1)) {
            let i = edges
                .windows(2)
                .position(|p| (p[0].0, p[0].1) == (p[1].0, p[1].1))
                .unwrap();
            let (s, t, w) = edges[i];
            return Err(CotagError::InvalidEdge { s, t, w, reason: "duplicate edge" });
        }
        Ok(Self::from_sorted_edges(n_tags, edges))
    }

    fn from_sorted_edges(n_tags: usize, edges: Vec<(u32, u32, u64)>) -> Self {
        let mut adj = vec![Vec::new(); n_tags];
        for &(s, t, w) in &edges {
            adj[s as usize].push((t, w));
            adj[t as usize].push((s, w));
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(v, _)| v);
        }
        Self { n_tags, edges, adj }
    }

    pub fn n_tags(&self) -> usize {
        self.n_tags
    }

    /// Edges `(s, t, w)` with `s < t`, ascending.
    pub fn edges(&self) -> &[(u32, u32, u64)] {
        &self.edges
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    fn check_tag(&self, tag: u32) -> Result<(), CotagError> {
        if (tag as usize) < self.n_tags {
            Ok(())
        } else {
            Err(CotagError::UnknownTag { tag, n_tags: self.n_tags })
        }
    }

    /// Weighted degree `k_t = sum_s w_{s,t}`.
    pub fn weighted_degree(&self, tag: u32) -> Result<u64, CotagError> {
        self.check_tag(tag)?;
        Ok(self.adj[tag as usize].iter().map(|&(_, w)| w).sum())
    }

    /// Unweighted degree `d_t`, the number of unique co-tags.
    pub fn unweighted_degree(&self, tag: u32) -> Result<u64, CotagError> {
        self.check_tag(tag)?;
        Ok(self.adj[tag as usize].len() as u64)
    }

    pub fn weighted_degrees(&self) -> Vec<u64> {
        (0..self.n_tags)
            .map(|t| self.adj[t].iter().map(|&(_, w)| w).sum())
            .collect()
    }

    pub fn unweighted_degrees(&self) -> Vec<u64> {
        self.adj.iter().map(|list| list.len() as u64).collect()
    }

    /// Visit every triangle exactly once. Edges are oriented from lower to
    /// higher `(degree, id)` and closed by sorted-adjacency intersection.
    fn for_each_triangle(&self, mut visit: impl FnMut(u32, u32, u32)) {
        let deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let ahead = |u: u32, v: u32| {
            (deg[v as usize], v) > (deg[u as usize], u)
        };
        let mut out: Vec<Vec<u32>> = vec![Vec::new(); self.n_tags];
        for &(s, t, _) in &self.edges {
            if ahead(s, t) {
                out[s as usize].push(t);
            } else {
                out[t as usize].push(s);
            }
        }
        for list in &mut out {
            list.sort_unstable();
        }
        for u in 0..self.n_tags {
            for &v in &out[u] {
                let (mut i, mut j) = (0, 0);
                let (a, b) = (&out[u], &out[v as usize]);
                while i < a.len() && j < b.len() {
                    match a[i].cmp(&b[j]) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            visit(u as u32, v, a[i]);
                            i += 1;
                            j += 1;
                        }
                    }
                }
            }
        }
    }

    /// Triangles through each node.
    pub fn triangle_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n_tags];
        self.for_each_triangle(|a, b, c| {
            counts[a as usize] += 1;
            counts[b as usize] += 1;
            counts[c as usize] += 1;
        });
        counts
    }

    /// Watts-Strogatz average `C = (1/|T|) sum_u 2 tri_u / (d_u (d_u - 1))`;
    /// nodes with degree below two contribute zero. Empty graph: zero.
    pub fn clustering_unweighted(&self) -> f64 {
        if self.n_tags == 0 {
            return 0.0;
        }
        let tri = self.triangle_counts();
        let mut total = 0.0;
        for u in 0..self.n_tags {
            let d = self.adj[u].len() as f64;
            if d >= 2.0 {
                total += 2.0 * tri[u] as f64 / (d * (d - 1.0));
            }
        }
        total / self.n_tags as f64
    }

    // Geometric-mean weighted clustering with weights mapped by `transform`
    // and normalized by their maximum. The per-triangle factor is symmetric
    // in the three edges, so each triangle contributes the same geometric
    // mean to all of its corners: twice, once per ordered neighbor pair.
    fn geometric_clustering(&self, transform: impl Fn(u64) -> f64) -> Result<f64, CotagError> {
        if self.edges.is_empty() {
            return Err(CotagError::NoEdges);
        }
        let max_w = self
            .edges
            .iter()
            .map(|&(_, _, w)| transform(w))
            .fold(f64::NEG_INFINITY, f64::max);
        let mut normalized: HashMap<(u32, u32), f64> = HashMap::with_capacity(self.edges.len());
        for &(s, t, w) in &self.edges {
            normalized.insert((s, t), transform(w) / max_w);
        }
        let mut corner_sums = vec![0.0f64; self.n_tags];
        self.for_each_triangle(|a, b, c| {
            let mut ids = [a, b, c];
            ids.sort_unstable();
            let [x, y, z] = ids;
            let g = ((normalized[&(x, y)] * normalized[&(x, z)]) * normalized[&(y, z)]).cbrt();
            corner_sums[a as usize] += g;
            corner_sums[b as usize] += g;
            corner_sums[c as usize] += g;
        });
        let mut total = 0.0;
        for u in 0..self.n_tags {
            let d = self.adj[u].len() as f64;
            if d >= 2.0 {
                total += 2.0 * corner_sums[u] / (d * (d - 1.0));
            }
        }
        Ok(total / self.n_tags as f64)
    }

    /// Weighted clustering with `w_hat = w / max w`.
    pub fn clustering_weighted(&self) -> Result<f64, CotagError> {
        self.geometric_clustering(|w| w as f64)
    }

    /// Weighted clustering with `w' = ln(w + 1)` before normalization.
    /// Stored edges have `w >= 1`, so transformed weights are always
    /// positive and no summand needs to be dropped.
    pub fn clustering_logweighted(&self) -> Result<f64, CotagError> {
        self.geometric_clustering(|w| ((w + 1) as f64).ln())
    }

    pub fn n_nodes_deg_lt2(&self) -> u64 {
        self.adj.iter().filter(|list| list.len() < 2).count() as u64
    }

    pub fn clustering_report(&self) -> Result<ClusteringReport, CotagError> {
        let c_weighted = self.clustering_weighted()?;
        Ok(ClusteringReport {
            c_unweighted: self.clustering_unweighted(),
            c_weighted,
            ln_c_weighted: (c_weighted > 0.0).then(|| c_weighted.ln()),
            c_logweighted: self.clustering_logweighted()?,
            n_nodes_deg_lt2: self.n_nodes_deg_lt2(),
        })
    }

    /// Edge list as CSV `tag_s,tag_t,weight`, sorted by `(s, t)`.
    pub fn write_edge_csv<W: Write>(
        &self,
        tag_names: &[String],
        mut out: W,
    ) -> io::Result<()> {
        writeln!(out, "tag_s,tag_t,weight")?;
        for &(s, t, w) in &self.edges {
            writeln!(out, "{},{},{}", tag_names[s as usize], tag_names[t as usize], w)?;
        }
        Ok(())
    }
}

/// Project a bipartite graph onto its tags: edge `(s, t)` iff some question
/// carries both, weighted by the number of such questions.
pub fn project(bipartite: &BipartiteTagGraph) -> CotagGraph {
    let mut weights: HashMap<(u32, u32), u64> = HashMap::new();
    for tags in bipartite.question_tags() {
        for i in 0..tags.len() {
            for j in i + 1..tags.len() {
                *weights.entry((tags[i], tags[j])).or_insert(0) += 1;
            }
        }
    }
    let mut edges: Vec<(u32, u32, u64)> = weights
        .into_iter()
        .map(|((s, t), w)| (s, t, w))
        .collect();
    edges.sort_unstable();
    CotagGraph::from_sorted_edges(bipartite.n_tags(), edges)
}
