//! Cyclic Jacobi eigenvalue iteration for small dense symmetric matrices.

const MAX_SWEEPS: usize = 100;

/// Eigenvalues of the symmetric matrix `a` (row-major, `n × n`), sorted in
/// decreasing order. Only the upper triangle is trusted; the input is
/// symmetrised first.
pub fn symmetric_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            a[j][i] = a[i][j];
        }
    }
    let total: f64 = a.iter().flatten().map(|x| x * x).sum();
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off <= total * 1e-32 || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, p, q);
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev
}

fn rotate(a: &mut [Vec<f64>], p: usize, q: usize) {
    let apq = a[p][q];
    if apq == 0.0 {
        return;
    }
    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    for row in a.iter_mut() {
        let (akp, akq) = (row[p], row[q]);
        row[p] = c * akp - s * akq;
        row[q] = s * akp + c * akq;
    }
    for k in 0..a.len() {
        let (apk, aqk) = (a[p][k], a[q][k]);
        a[p][k] = c * apk - s * aqk;
        a[q][k] = s * apk + c * aqk;
    }
    a[p][q] = 0.0;
    a[q][p] = 0.0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let ev = symmetric_eigenvalues(vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        assert!((ev[0] - 3.0).abs() < 1e-14 && (ev[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn diagonal_input_is_untouched() {
        let ev = symmetric_eigenvalues(vec![vec![1.0, 0.0, 0.0], vec![0.0, -4.0, 0.0], vec![0.0, 0.0, 2.5]]);
        assert_eq!(ev, vec![2.5, 1.0, -4.0]);
    }

    #[test]
    fn trace_and_frobenius_are_preserved() {
        let a = vec![
            vec![4.0, -2.0, 1.0, 0.5],
            vec![-2.0, 3.0, 0.0, 1.0],
            vec![1.0, 0.0, -1.0, 2.0],
            vec![0.5, 1.0, 2.0, 0.0],
        ];
        let fro: f64 = a.iter().flatten().map(|x| x * x).sum();
        let ev = symmetric_eigenvalues(a);
        assert!((ev.iter().sum::<f64>() - 6.0).abs() < 1e-12);
        assert!((ev.iter().map(|x| x * x).sum::<f64>() - fro).abs() < 1e-10);
    }
}
