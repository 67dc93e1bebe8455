//! Simple undirected graphs stored as one adjacency bitrow per vertex.

use std::fmt;

use serde::Serialize;

use crate::error::{check_cap, Error, Result};

/// Hard limit on vertex count: one `u64` word per adjacency row.
pub const MAX_VERTICES: usize = 64;

/// Largest graph on which simple cycles are enumerated.
pub const CYCLE_ENUMERATION_CAP: usize = 14;

/// A finite simple undirected graph on vertices `0..n`.
///
/// Bit `v` of `adj[u]` is set iff `{u, v}` is an edge. Rows are kept
/// symmetric and irreflexive by every constructor.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph `nK_1`.
    pub fn empty(n: usize) -> Result<Self> {
        check_cap("vertex count", n, MAX_VERTICES)?;
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Builds a graph from 0-based edges, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for n = {n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("loop at vertex {u}")));
            }
            if g.has_edge(u, v) {
                return Err(Error::InvalidParameter(format!("duplicate edge ({u}, {v})")));
            }
            g.insert_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw bitrows. Fails unless the rows describe a
    /// symmetric, loop-free relation on `0..n`.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_cap("vertex count", n, MAX_VERTICES)?;
        let mask = low_mask(n);
        for (u, &row) in rows.iter().enumerate() {
            if row & !mask != 0 || row >> u & 1 == 1 {
                return Err(Error::InvalidParameter(format!("row {u} is not a simple adjacency row")));
            }
            let mut rest = row;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if rows[v] >> u & 1 == 0 {
                    return Err(Error::InvalidParameter(format!("rows {u} and {v} are not symmetric")));
                }
            }
        }
        Ok(Graph { n, adj: rows })
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn row(&self, u: usize) -> u64 {
        self.adj[u]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order. This is the
    /// canonical edge order used by orientations.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            let mut above = self.adj[u] & !low_mask(u + 1);
            while above != 0 {
                let v = above.trailing_zeros() as usize;
                above &= above - 1;
                out.push((u, v));
            }
        }
        out
    }

    /// Mask with one bit per vertex.
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    pub fn triangle_count(&self) -> usize {
        let mut t = 0;
        for (u, v) in self.edges() {
            let above = !low_mask(v + 1);
            t += (self.adj[u] & self.adj[v] & above).count_ones() as usize;
        }
        t
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    let u = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.adj[u];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Two-coloring by BFS; `None` when an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for v in self.neighbors(u) {
                    match color[v] {
                        None => {
                            color[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.is_connected() && self.edge_count() + 1 == self.n
    }

    /// True iff the graph is the path `P_n` (a tree with maximum degree ≤ 2).
    pub fn is_path(&self) -> bool {
        self.is_tree() && self.max_degree() <= 2
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> {
        let mut row = self.adj[u];
        std::iter::from_fn(move || {
            if row == 0 {
                None
            } else {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                Some(v)
            }
        })
    }

    /// `G ⊔ H`, with the vertices of `other` relabelled after ours.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        check_cap("vertex count", n, MAX_VERTICES)?;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// Subgraph induced by the vertex set `mask`, relabelled in increasing
    /// order.
    pub fn induced(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = (0..self.n).filter(|&u| mask >> u & 1 == 1).collect();
        let mut adj = vec![0u64; verts.len()];
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if self.has_edge(u, v) {
                    adj[i] |= 1 << j;
                }
            }
        }
        Graph { n: verts.len(), adj }
    }

    pub fn complement(&self) -> Graph {
        let mask = low_mask(self.n);
        let adj = (0..self.n).map(|u| !self.adj[u] & mask & !(1 << u)).collect();
        Graph { n: self.n, adj }
    }

    /// True iff `G ≅ K_{1,m} ⊔ (n−m−1)K_1` for some `m ≥ 0`.
    ///
    /// Decided structurally: some vertex is incident to every edge.
    pub fn is_star_plus_isolated(&self) -> bool {
        let m = self.edge_count();
        m == 0 || (0..self.n).any(|c| self.degree(c) == m)
    }

    /// Every simple cycle exactly once, as a vertex sequence starting at its
    /// smallest vertex `s` and oriented so that the second vertex is smaller
    /// than the last.
    pub fn simple_cycles(&self) -> Result<Vec<Vec<usize>>> {
        check_cap("cycle enumeration vertex count", self.n, CYCLE_ENUMERATION_CAP)?;
        let mut out = Vec::new();
        let mut path = Vec::with_capacity(self.n);
        for s in 0..self.n {
            let allowed = !low_mask(s + 1) & self.vertex_mask();
            path.clear();
            path.push(s);
            self.extend_cycles(s, allowed, 1u64 << s, &mut path, &mut out);
        }
        Ok(out)
    }

    fn extend_cycles(&self, s: usize, allowed: u64, on_path: u64, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *path.last().unwrap();
        if path.len() >= 3 && self.has_edge(last, s) && path[1] < last {
            out.push(path.clone());
        }
        let mut next = self.adj[last] & allowed & !on_path;
        while next != 0 {
            let v = next.trailing_zeros() as usize;
            next &= next - 1;
            path.push(v);
            self.extend_cycles(s, allowed, on_path | 1 << v, path, out);
            path.pop();
        }
    }

    pub fn metrics(&self) -> GraphMetrics {
        let comps = self.components();
        let mut component_sizes: Vec<usize> = comps.iter().map(|c| c.count_ones() as usize).collect();
        component_sizes.sort_unstable_by(|a, b| b.cmp(a));
        let bipartition = self.bipartition();
        GraphMetrics {
            n: self.n,
            m: self.edge_count(),
            t: self.triangle_count(),
            max_degree: self.max_degree(),
            is_connected: comps.len() <= 1,
            component_sizes,
            is_bipartite: bipartition.is_some(),
            bipartition,
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[inline]
pub(crate) fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Structural quantities the theorem checks consume.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub n: usize,
    pub m: usize,
    pub t: usize,
    pub max_degree: usize,
    /// Sorted largest first.
    pub component_sizes: Vec<usize>,
    pub is_connected: bool,
    pub is_bipartite: bool,
    pub bipartition: Option<Vec<bool>>,
}

/// Standard labelled families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Complete(usize),
    /// `K_{1,m}`, center is vertex 0.
    Star(usize),
    Path(usize),
    Cycle(usize),
    Empty(usize),
}

impl Family {
    pub fn build(self) -> Result<Graph> {
        match self {
            Family::Complete(n) => {
                let mut g = Graph::empty(n)?;
                for u in 0..n {
                    for v in u + 1..n {
                        g.insert_edge(u, v);
                    }
                }
                Ok(g)
            }
            Family::Star(m) => {
                if m == 0 {
                    return Err(Error::InvalidParameter("star needs m >= 1".into()));
                }
                let mut g = Graph::empty(m + 1)?;
                for v in 1..=m {
                    g.insert_edge(0, v);
                }
                Ok(g)
            }
            Family::Path(n) => {
                if n == 0 {
                    return Err(Error::InvalidParameter("path needs n >= 1".into()));
                }
                let mut g = Graph::empty(n)?;
                for u in 1..n {
                    g.insert_edge(u - 1, u);
                }
                Ok(g)
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
                }
                let mut g = Family::Path(n).build()?;
                g.insert_edge(0, n - 1);
                Ok(g)
            }
            Family::Empty(n) => Graph::empty(n),
        }
    }
}

/// `K_{1,m} ⊔ kK_1`.
pub fn star_with_isolated(m: usize, k: usize) -> Result<Graph> {
    Family::Star(m).build()?.disjoint_union(&Graph::empty(k)?)
}
