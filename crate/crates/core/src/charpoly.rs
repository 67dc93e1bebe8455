//! Exact characteristic polynomials of integer matrices (Berkowitz).
//!
//! Division-free, so it runs entirely in `BigInt` arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graph::Graph;
use crate::poly::IntPolynomial;

/// `det(xI − M)` for a square integer matrix.
pub fn char_poly(m: &[Vec<i64>]) -> IntPolynomial {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    // c holds det(xI − M_r) for the leading r×r block, highest degree first.
    let mut c: Vec<BigInt> = vec![BigInt::one()];
    for r in 0..n {
        // Block [[A_r, col], [row, a_rr]] with A_r the leading r×r block.
        let row: Vec<BigInt> = a[r][..r].to_vec();
        let col: Vec<BigInt> = (0..r).map(|i| a[i][r].clone()).collect();
        // Toeplitz column: 1, −a_rr, −row·col, −row·A·col, −row·A²·col, ...
        let mut t = Vec::with_capacity(r + 2);
        t.push(BigInt::one());
        t.push(-a[r][r].clone());
        let mut v = col;
        for _ in 0..r {
            let dot: BigInt = row.iter().zip(&v).map(|(x, y)| x * y).sum();
            t.push(-dot);
            v = (0..r).map(|i| (0..r).map(|j| &a[i][j] * &v[j]).sum()).collect();
        }
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, ti) in t.iter().enumerate() {
            for (j, cj) in c.iter().enumerate() {
                if i + j < r + 2 {
                    next[i + j] += ti * cj;
                }
            }
        }
        c = next;
    }
    IntPolynomial::new(c).expect("characteristic polynomial is monic")
}

/// `χ(G,x) = det(xI − A(G))`.
pub fn adjacency_char_poly(g: &Graph) -> IntPolynomial {
    let n = g.n();
    let m: Vec<Vec<i64>> = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v) as i64).collect()).collect();
    char_poly(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    fn coeffs(p: &IntPolynomial) -> Vec<i64> {
        p.coeffs().iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn small_matrices() {
        assert_eq!(coeffs(&char_poly(&[])), vec![1]);
        assert_eq!(coeffs(&char_poly(&[vec![5]])), vec![1, -5]);
        // [[1,2],[3,4]]: x^2 − 5x − 2
        assert_eq!(coeffs(&char_poly(&[vec![1, 2], vec![3, 4]])), vec![1, -5, -2]);
        // upper triangular: product of (x − d_i)
        let m = vec![vec![2, 7, -1], vec![0, -3, 4], vec![0, 0, 1]];
        assert_eq!(coeffs(&char_poly(&m)), vec![1, 0, -7, 6]);
    }

    #[test]
    fn adjacency_examples() {
        // χ(K_3) = (x − 2)(x + 1)^2
        assert_eq!(coeffs(&adjacency_char_poly(&Family::Complete(3).build().unwrap())), vec![1, 0, -3, -2]);
        // χ(C_4) = x^4 − 4x^2
        assert_eq!(coeffs(&adjacency_char_poly(&Family::Cycle(4).build().unwrap())), vec![1, 0, -4, 0, 0]);
        // χ(P_3) = x^3 − 2x
        assert_eq!(coeffs(&adjacency_char_poly(&Family::Path(3).build().unwrap())), vec![1, 0, -2, 0]);
    }
}
