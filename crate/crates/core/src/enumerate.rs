//! Small self-contained graph generators: every labeled graph on a handful
//! of vertices, labeled trees from Prüfer sequences, and one representative
//! per isomorphism class of trees.

use std::collections::HashSet;

use crate::error::{check_cap, Error, Result};
use crate::graph::Graph;

/// Largest `n` accepted by [`all_labeled_graphs`] (`2^21` graphs).
pub const ALL_GRAPHS_MAX_N: usize = 7;
/// Largest `n` accepted by [`unlabeled_trees`] (19320 classes).
pub const TREES_MAX_N: usize = 16;

/// Vertex pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn vertex_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

/// The labeled graph whose edge set is selected by the bits of `mask` over
/// [`vertex_pairs`].
pub fn labeled_graph(n: usize, mask: u64) -> Result<Graph> {
    let pairs = vertex_pairs(n);
    let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
    Graph::from_edges(n, &edges)
}

/// All `2^C(n,2)` labeled graphs on `n` vertices, in mask order.
pub fn all_labeled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    check_cap("vertices for exhaustive enumeration", n, ALL_GRAPHS_MAX_N)?;
    let pairs = vertex_pairs(n);
    let total = 1u64 << pairs.len();
    Ok((0..total).map(move |mask| {
        let mut g = Graph::empty(n).expect("n is within the vertex cap");
        for (i, &(u, v)) in pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                g.insert_edge(u, v);
            }
        }
        g
    }))
}

/// Decodes a Prüfer sequence (entries in `0..n`, length `n − 2`).
pub fn tree_from_prufer(n: usize, seq: &[usize]) -> Result<Graph> {
    if n < 2 {
        return if seq.is_empty() { Graph::empty(n) } else { Err(bad_prufer(n, seq.len())) };
    }
    if seq.len() != n - 2 || seq.iter().any(|&v| v >= n) {
        return Err(bad_prufer(n, seq.len()));
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf always remains");
        edges.push((leaf, v));
        degree[leaf] = 0;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, &edges)
}

fn bad_prufer(n: usize, len: usize) -> Error {
    Error::InvalidParameter(format!("invalid Prüfer sequence of length {len} for n = {n}"))
}

/// Canonical string for a tree, invariant under relabeling.
pub fn tree_code(g: &Graph) -> String {
    let centers = tree_centers(g);
    centers.iter().map(|&c| rooted_code(g, c, usize::MAX)).min().unwrap_or_default()
}

fn tree_centers(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&u| degree[u] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            degree[leaf] = 0;
            for v in g.neighbors(leaf) {
                if degree[v] > 0 {
                    degree[v] -= 1;
                    if degree[v] == 1 {
                        next.push(v);
                    }
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_code(g: &Graph, root: usize, parent: usize) -> String {
    let mut children: Vec<String> = g.neighbors(root).filter(|&v| v != parent).map(|v| rooted_code(g, v, root)).collect();
    children.sort_unstable();
    format!("({})", children.concat())
}

/// One labeled representative per isomorphism class of trees on `n`
/// vertices. Every tree is a smaller tree plus a leaf, so the classes on
/// `n` vertices come from extending each class on `n − 1` at every vertex.
pub fn unlabeled_trees(n: usize) -> Result<Vec<Graph>> {
    check_cap("vertices for tree enumeration", n, TREES_MAX_N)?;
    let mut trees = vec![Graph::empty(n.min(1))?];
    for k in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &trees {
            for v in 0..k - 1 {
                let mut rows = t.rows().to_vec();
                rows.push(0);
                let mut g = Graph::from_rows(rows)?;
                g.insert_edge(v, k - 1);
                if seen.insert(tree_code(&g)) {
                    next.push(g);
                }
            }
        }
        trees = next;
    }
    Ok(trees)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    #[test]
    fn labeled_counts() {
        assert_eq!(all_labeled_graphs(0).unwrap().count(), 1);
        assert_eq!(all_labeled_graphs(4).unwrap().count(), 64);
        let edges: usize = all_labeled_graphs(4).unwrap().map(|g| g.edge_count()).sum();
        assert_eq!(edges, 6 * 32);
        assert!(all_labeled_graphs(8).is_err());
        assert_eq!(labeled_graph(4, 0b111111).unwrap(), Family::Complete(4).build().unwrap());
    }

    #[test]
    fn prufer_decoding() {
        // Constant sequence → star centred on that vertex.
        let t = tree_from_prufer(5, &[0, 0, 0]).unwrap();
        assert_eq!(t, Family::Star(4).build().unwrap());
        let p = tree_from_prufer(4, &[1, 2]).unwrap();
        assert!(p.is_path() && p.has_edge(0, 1) && p.has_edge(1, 2) && p.has_edge(2, 3));
        assert!(tree_from_prufer(4, &[4, 0]).is_err());
        assert!(tree_from_prufer(4, &[0]).is_err());
        assert_eq!(tree_from_prufer(2, &[]).unwrap().edge_count(), 1);
    }

    #[test]
    fn tree_class_counts() {
        let counts: Vec<usize> = (0..=12).map(|n| unlabeled_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551]);
        assert!(unlabeled_trees(8).unwrap().iter().all(Graph::is_tree));
        assert!(unlabeled_trees(17).is_err());
    }

    #[test]
    fn tree_code_ignores_labels() {
        let a = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]).unwrap();
        let b = Graph::from_edges(5, &[(4, 3), (3, 2), (2, 1), (3, 0)]).unwrap();
        let c = Family::Path(5).build().unwrap();
        assert_eq!(tree_code(&a), tree_code(&b));
        assert_ne!(tree_code(&a), tree_code(&c));
    }
}
