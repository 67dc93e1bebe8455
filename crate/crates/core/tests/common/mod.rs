#![allow(dead_code)]

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use permenergy::enumerate::tree_from_prufer;
use permenergy::{Graph, IntPolynomial};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `per(xI − A)` summed over all `n!` permutations. A permutation with `f`
/// fixed points contributes `(−1)^(n−f) x^f` times the product of the
/// adjacency entries it uses off the diagonal.
pub fn brute_force_perm_poly(g: &Graph) -> IntPolynomial {
    let n = g.n();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let mut fixed = 0;
        for (i, &j) in p.iter().enumerate() {
            if i == j {
                fixed += 1;
            } else if !g.has_edge(i, j) {
                return;
            }
        }
        let sign = if (n - fixed).is_multiple_of(2) { 1 } else { -1 };
        coeffs[n - fixed] += sign;
    });
    IntPolynomial::new(coeffs).unwrap()
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// Roots as eigenvalues of the companion matrix. Zero roots are split off
/// first. The matrix is shifted by a real constant because nalgebra's Schur
/// iteration stalls on spectra symmetric about the origin, which every
/// bipartite graph produces.
pub fn companion_roots(p: &IntPolynomial) -> Vec<Complex64> {
    let (zeros, rest) = p.strip_zero_roots();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let c = rest.to_f64();
    let n = rest.degree();
    if n == 0 {
        return roots;
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for j in 0..n {
        m[(0, j)] = -c[j + 1];
    }
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    const SHIFT: f64 = 0.6180339887;
    for i in 0..n {
        m[(i, i)] += SHIFT;
    }
    let schur = m.try_schur(f64::EPSILON, 10_000).expect("Schur iteration converges");
    roots.extend(schur.complex_eigenvalues().iter().map(|z| z - SHIFT));
    roots
}

/// Adjacency eigenvalues from nalgebra's symmetric solver.
pub fn nalgebra_eigenvalues(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let m = DMatrix::<f64>::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

/// A uniform labeled tree with each edge then kept with probability `keep`.
pub fn random_forest(rng: &mut impl Rng, n: usize, keep: f64) -> Graph {
    let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| rng.gen_range(0..n)).collect();
    let tree = tree_from_prufer(n, &seq).unwrap();
    let edges: Vec<_> = tree.edges().into_iter().filter(|_| rng.gen_bool(keep)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Greedy matching distance between two root lists of equal length.
pub fn root_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}
