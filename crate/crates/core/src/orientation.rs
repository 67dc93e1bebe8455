//! Orientations of bipartite graphs and the skew-adjacency determinantal
//! model of the permanental polynomial.
//!
//! An orientation assigns a direction to every edge. A cycle is oddly
//! oriented when an odd number of its edges point along a traversal. If a
//! bipartite graph has an orientation in which every cycle is oddly
//! oriented, then `π(G,x) = det(xI − S)` for the skew adjacency matrix `S`
//! of that orientation.

use serde::Serialize;

use crate::charpoly::char_poly;
use crate::error::{check_cap, Error, Result};
use crate::graph::Graph;
use crate::poly::{IntPolynomial, PolyJson};
use crate::spectral::symmetric_eigenvalues;

/// Largest edge count for the exhaustive orientation search.
pub const ORIENTATION_SEARCH_MAX_EDGES: usize = 20;

/// A direction for every edge of `graph`. Edges are indexed in canonical
/// order ([`Graph::edges`]); `forward[e]` means the arc runs from the
/// smaller endpoint to the larger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    graph: Graph,
    edges: Vec<(usize, usize)>,
    forward: Vec<bool>,
}

impl Orientation {
    pub fn new(graph: &Graph, forward: Vec<bool>) -> Result<Self> {
        let edges = graph.edges();
        if edges.len() != forward.len() {
            return Err(Error::InvalidParameter(format!(
                "orientation has {} directions for {} edges",
                forward.len(),
                edges.len()
            )));
        }
        Ok(Orientation { graph: graph.clone(), edges, forward })
    }

    /// Every arc from its smaller to its larger endpoint.
    pub fn canonical(graph: &Graph) -> Self {
        let edges = graph.edges();
        let forward = vec![true; edges.len()];
        Orientation { graph: graph.clone(), edges, forward }
    }

    /// Parses a string of `1` (forward) and `0` (reversed), one per edge.
    pub fn from_bitstring(graph: &Graph, bits: &str) -> Result<Self> {
        let forward = bits
            .chars()
            .map(|c| match c {
                '1' => Ok(true),
                '0' => Ok(false),
                other => Err(Error::InvalidParameter(format!("orientation bit `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(graph, forward)
    }

    pub fn bitstring(&self) -> String {
        self.forward.iter().map(|&f| if f { '1' } else { '0' }).collect()
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Arcs as `(tail, head)` pairs.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.edges
            .iter()
            .zip(&self.forward)
            .map(|(&(u, v), &f)| if f { (u, v) } else { (v, u) })
            .collect()
    }

    pub fn reversed(&self) -> Self {
        Orientation { forward: self.forward.iter().map(|f| !f).collect(), ..self.clone() }
    }

    pub fn skew_matrix(&self) -> SkewMatrix {
        let n = self.graph.n();
        let mut s = vec![vec![0i8; n]; n];
        for (tail, head) in self.arcs() {
            s[tail][head] = 1;
            s[head][tail] = -1;
        }
        SkewMatrix { entries: s }
    }

    /// True iff every simple cycle has an odd number of arcs along each of
    /// its two traversals. An odd cycle can never satisfy this, since the
    /// two counts sum to its length.
    pub fn is_odd_orientation(&self) -> Result<bool> {
        let cycles = CycleParity::of(&self.graph)?;
        Ok(cycles.iter().all(|c| c.is_odd(&self.forward)))
    }
}

/// A cycle as edge indices plus, per edge, the direction that counts as
/// "along the traversal".
struct CycleParity {
    edges: Vec<usize>,
    along: Vec<bool>,
    last_edge: usize,
}

impl CycleParity {
    fn of(g: &Graph) -> Result<Vec<CycleParity>> {
        let index: std::collections::HashMap<(usize, usize), usize> =
            g.edges().into_iter().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(g.simple_cycles()?
            .into_iter()
            .map(|cycle| {
                let len = cycle.len();
                let (edges, along): (Vec<usize>, Vec<bool>) = (0..len)
                    .map(|i| {
                        let (a, b) = (cycle[i], cycle[(i + 1) % len]);
                        (index[&(a.min(b), a.max(b))], a < b)
                    })
                    .unzip();
                let last_edge = *edges.iter().max().expect("cycles have edges");
                CycleParity { edges, along, last_edge }
            })
            .collect())
    }

    fn is_odd(&self, forward: &[bool]) -> bool {
        if self.edges.len() % 2 == 1 {
            return false;
        }
        let along = self.edges.iter().zip(&self.along).filter(|(&e, &a)| forward[e] == a).count();
        along % 2 == 1
    }
}

/// Searches for an orientation in which every cycle is oddly oriented.
///
/// Edges are fixed in canonical order, forward first, and a branch is cut
/// as soon as a fully assigned cycle has the wrong parity, so the result is
/// deterministic. Requires a bipartite graph with at most
/// [`ORIENTATION_SEARCH_MAX_EDGES`] edges.
pub fn find_odd_orientation(g: &Graph) -> Result<Option<Orientation>> {
    if !g.is_bipartite() {
        return Err(Error::NotBipartite);
    }
    let m = g.edge_count();
    check_cap("orientation search edge count", m, ORIENTATION_SEARCH_MAX_EDGES)?;
    let cycles = CycleParity::of(g)?;
    let mut closing: Vec<Vec<&CycleParity>> = vec![Vec::new(); m];
    for c in &cycles {
        closing[c.last_edge].push(c);
    }
    let mut forward = vec![true; m];
    if assign(0, &mut forward, &closing) {
        Ok(Some(Orientation::new(g, forward)?))
    } else {
        Ok(None)
    }
}

fn assign(e: usize, forward: &mut [bool], closing: &[Vec<&CycleParity>]) -> bool {
    if e == forward.len() {
        return true;
    }
    for dir in [true, false] {
        forward[e] = dir;
        if closing[e].iter().all(|c| c.is_odd(forward)) && assign(e + 1, forward, closing) {
            return true;
        }
    }
    forward[e] = true;
    false
}

/// Skew adjacency matrix of an orientation: `S_uv = 1` for an arc `u → v`,
/// `−1` for `v → u`, `0` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewMatrix {
    entries: Vec<Vec<i8>>,
}

impl SkewMatrix {
    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, u: usize, v: usize) -> i8 {
        self.entries[u][v]
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.entries
    }

    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|u| (0..n).all(|v| self.entries[u][v] == -self.entries[v][u]))
    }

    fn as_i64(&self) -> Vec<Vec<i64>> {
        self.entries.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()
    }

    /// Moduli of the eigenvalues of `S`. They are `|λ|` for the real
    /// eigenvalues `λ` of the Hermitian matrix `−iS`, obtained here as square
    /// roots of the eigenvalues of `−S² = SᵀS`.
    pub fn eigen_moduli(&self) -> Vec<f64> {
        let s = self.as_i64();
        let n = s.len();
        let gram = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| (s[k][i] * s[k][j]) as f64).sum()).collect())
            .collect();
        symmetric_eigenvalues(gram).into_iter().map(|l| l.max(0.0).sqrt()).collect()
    }
}

/// `det(xI − S)`, exactly.
pub fn skew_char_poly(s: &SkewMatrix) -> IntPolynomial {
    char_poly(&s.as_i64())
}

/// `√(2mn)`, the McClelland-type ceiling on `E_per` for graphs with an odd
/// orientation.
pub fn mcclelland_bound(g: &Graph) -> f64 {
    (2.0 * g.edge_count() as f64 * g.n() as f64).sqrt()
}

/// Output of the `orient` command.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientReport {
    pub found: bool,
    pub orientation: Option<String>,
    pub skew_poly: Option<PolyJson>,
    pub matches_perm_poly: bool,
}

/// Searches for an odd orientation and compares `det(xI − S)` with `π`.
pub fn orient_report(g: &Graph, perm_poly: &IntPolynomial) -> Result<OrientReport> {
    Ok(match find_odd_orientation(g)? {
        Some(o) => {
            let skew = skew_char_poly(&o.skew_matrix());
            OrientReport {
                found: true,
                orientation: Some(o.bitstring()),
                matches_perm_poly: &skew == perm_poly,
                skew_poly: Some(skew.to_json()),
            }
        }
        None => OrientReport { found: false, orientation: None, skew_poly: None, matches_perm_poly: false },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::permanent::perm_poly_ryser;

    fn fam(f: Family) -> Graph {
        f.build().unwrap()
    }

    fn cyclic_c4(reversed_first: bool) -> Orientation {
        // C_4 edges in canonical order: (0,1) (0,3) (1,2) (2,3).
        // The cyclic orientation 0→1→2→3→0 reverses (0,3).
        let g = fam(Family::Cycle(4));
        let mut fwd = vec![true, false, true, true];
        if reversed_first {
            fwd[0] = false;
        }
        Orientation::new(&g, fwd).unwrap()
    }

    #[test]
    fn skew_matrix_examples() {
        let p3 = Orientation::canonical(&fam(Family::Path(3)));
        let s = p3.skew_matrix();
        assert_eq!((s.get(0, 1), s.get(1, 2), s.get(1, 0), s.get(2, 1), s.get(0, 2)), (1, 1, -1, -1, 0));
        assert!(s.is_skew_symmetric());
        let empty = Orientation::canonical(&Graph::empty(3).unwrap()).skew_matrix();
        assert!(empty.rows().iter().flatten().all(|&x| x == 0));
        let r = p3.reversed().skew_matrix();
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(r.get(u, v), -s.get(u, v));
            }
        }
    }

    #[test]
    fn odd_orientation_predicate() {
        let tree = fam(Family::Star(4));
        assert!(Orientation::canonical(&tree).is_odd_orientation().unwrap());
        assert!(!cyclic_c4(false).is_odd_orientation().unwrap());
        assert!(cyclic_c4(true).is_odd_orientation().unwrap());
        let c5 = fam(Family::Cycle(5));
        assert!(!Orientation::canonical(&c5).is_odd_orientation().unwrap());
    }

    #[test]
    fn search_examples() {
        let tree = fam(Family::Path(6));
        let o = find_odd_orientation(&tree).unwrap().unwrap();
        assert_eq!(o.bitstring(), "11111");
        for n in [4, 6, 8] {
            let g = fam(Family::Cycle(n));
            let o = find_odd_orientation(&g).unwrap().expect("even cycles admit odd orientations");
            assert!(o.is_odd_orientation().unwrap());
        }
        assert_eq!(find_odd_orientation(&fam(Family::Cycle(5))), Err(Error::NotBipartite));
    }

    #[test]
    fn skew_char_poly_examples() {
        let p3 = fam(Family::Path(3));
        let want = perm_poly_ryser(&p3).unwrap();
        for bits in ["00", "01", "10", "11"] {
            let o = Orientation::from_bitstring(&p3, bits).unwrap();
            assert_eq!(skew_char_poly(&o.skew_matrix()), want);
        }
        assert_eq!(skew_char_poly(&cyclic_c4(true).skew_matrix()), IntPolynomial::from_i64(&[1, 0, 4, 0, 4]).unwrap());
        let zero = Orientation::canonical(&Graph::empty(4).unwrap()).skew_matrix();
        assert_eq!(skew_char_poly(&zero), IntPolynomial::monomial(4));
    }

    #[test]
    fn eigen_moduli_pair_up_and_sum_to_2m() {
        let o = cyclic_c4(true);
        let moduli = o.skew_matrix().eigen_moduli();
        let sq: f64 = moduli.iter().map(|x| x * x).sum();
        assert!((sq - 8.0).abs() < 1e-10);
        for pair in moduli.chunks(2) {
            assert!((pair[0] - pair[1]).abs() < 1e-10);
        }
    }

    #[test]
    fn mcclelland_examples() {
        assert!((mcclelland_bound(&fam(Family::Path(3))) - 12f64.sqrt()).abs() < 1e-12);
        assert_eq!(mcclelland_bound(&fam(Family::Complete(2))), 2.0);
        assert!((mcclelland_bound(&fam(Family::Cycle(4))) - 32f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn orient_report_json() {
        let g = fam(Family::Cycle(6));
        let r = orient_report(&g, &perm_poly_ryser(&g).unwrap()).unwrap();
        assert!(r.found && r.matches_perm_poly);
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["orientation"].as_str().unwrap().len(), 6);
        assert!(j["skew_poly"]["coeffs"].is_array());
    }
}
