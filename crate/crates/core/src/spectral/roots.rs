//! Complex roots of integer polynomials.
//!
//! The root `0` is split off exactly, then the rest is broken into exact
//! square-free factors, so the iterative solver only ever sees simple
//! roots. Each factor is converted to `f64` (the only precision boundary)
//! and solved by Aberth–Ehrlich simultaneous iteration.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{horner, IntPolynomial};

pub const MAX_ITERATIONS: usize = 500;
/// Convergence threshold on the largest Aberth step, relative to root scale.
pub const STEP_TOLERANCE: f64 = 1e-13;
/// Acceptance threshold on `|p(μ)| / Σ|c_k||μ|^(n−k)` for every root.
pub const RESIDUAL_TOLERANCE: f64 = 1e-10;
/// Backward error at which an iterate counts as converged.
const ROUNDING_RESIDUAL: f64 = 8.0 * f64::EPSILON;

/// The `n` roots of a degree-`n` polynomial, with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct RootMultiset {
    /// Sorted by real part, then imaginary part.
    pub roots: Vec<Complex64>,
    /// `|p(μ_i)|` for each entry of `roots`.
    pub residuals: Vec<f64>,
    /// Multiplicity of the exact root `0`, removed before iteration.
    pub zero_multiplicity: usize,
    /// Largest Aberth iteration count over the square-free factors.
    pub iterations: usize,
}

/// Wire form: `{"zero_multiplicity", "roots": [[re, im], ...], "energy", "max_residual"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootJson {
    pub zero_multiplicity: usize,
    pub roots: Vec<[f64; 2]>,
    pub energy: f64,
    pub max_residual: f64,
}

impl RootMultiset {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// `Σ |μ_i|`.
    pub fn energy(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).sum()
    }

    pub fn sum(&self) -> Complex64 {
        self.roots.iter().sum()
    }

    pub fn sum_of_squares(&self) -> Complex64 {
        self.roots.iter().map(|z| z * z).sum()
    }

    /// `Σ |μ_i|²`.
    pub fn sum_of_square_moduli(&self) -> f64 {
        self.roots.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> RootJson {
        RootJson {
            zero_multiplicity: self.zero_multiplicity,
            roots: self.roots.iter().map(|z| [z.re, z.im]).collect(),
            energy: self.energy(),
            max_residual: self.max_residual(),
        }
    }

    /// True if the multiset equals its conjugate within `tol`.
    pub fn is_conjugate_closed(&self, tol: f64) -> bool {
        let conj: Vec<Complex64> = self.roots.iter().map(|z| z.conj()).collect();
        multiset_distance(&self.roots, &conj) <= tol
    }
}

/// Roots of a monic integer polynomial, with exact zero-root stripping and
/// square-free splitting.
pub fn perm_roots(p: &IntPolynomial) -> Result<RootMultiset> {
    if !p.is_monic() {
        return Err(Error::InvalidParameter("root finding needs a monic polynomial".into()));
    }
    let (zeros, rest) = p.strip_zero_roots();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    let mut iterations = 0;
    if rest.degree() > 0 {
        for (factor, mult) in rest.square_free_factors()? {
            let (found, iters) = simple_roots(&factor.to_f64())?;
            iterations = iterations.max(iters);
            for z in found {
                roots.extend(std::iter::repeat_n(z, mult));
            }
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let coeffs = p.to_f64();
    let residuals: Vec<f64> = roots.iter().map(|&z| horner(&coeffs, z).norm()).collect();
    let worst = roots
        .iter()
        .zip(&residuals)
        .map(|(&z, &r)| r / backward_scale(&coeffs, z))
        .fold(0.0, f64::max);
    if worst > RESIDUAL_TOLERANCE {
        return Err(Error::NoConvergence { iterations, max_residual: residuals.iter().copied().fold(0.0, f64::max) });
    }
    Ok(RootMultiset { roots, residuals, zero_multiplicity: zeros, iterations })
}

/// `max(1, Σ |c_k| |z|^(n−k))`, the natural scale of `|p(z)|`.
pub fn backward_scale(coeffs: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().fold(0.0, |acc, c| acc * r + c.abs()).max(1.0)
}

/// Roots of a monic square-free polynomial given highest degree first.
fn simple_roots(c: &[f64]) -> Result<(Vec<Complex64>, usize)> {
    let d = c.len() - 1;
    match d {
        0 => return Ok((Vec::new(), 0)),
        1 => return Ok((vec![Complex64::new(-c[1], 0.0)], 0)),
        2 => return Ok((quadratic(c[1], c[2]).to_vec(), 0)),
        _ => {}
    }
    let mut z = initial_points(c);
    let dc: Vec<f64> = c[..d].iter().enumerate().map(|(k, &ck)| ck * (d - k) as f64).collect();
    let mut done = vec![false; d];
    let mut iters = 0;
    while iters < MAX_ITERATIONS && done.iter().any(|&x| !x) {
        iters += 1;
        let scale = z.iter().map(|w| w.norm()).fold(1.0, f64::max);
        for k in 0..d {
            if done[k] {
                continue;
            }
            let pz = horner(c, z[k]);
            // Residual at rounding level: the iterate is a root of a
            // polynomial within a few ulps of `c`.
            if pz.norm() <= ROUNDING_RESIDUAL * backward_scale(c, z[k]) {
                done[k] = true;
                continue;
            }
            let ratio = pz / horner(&dc, z[k]);
            let repulsion: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[k] -= step;
            done[k] = step.norm() <= STEP_TOLERANCE * scale;
        }
        if z.iter().any(|w| !w.is_finite()) {
            let max_residual = z.iter().map(|&w| horner(c, w).norm()).fold(0.0, f64::max);
            return Err(Error::NoConvergence { iterations: iters, max_residual });
        }
    }
    // Two iterates settling on one root would leave another root unfound;
    // the root sum then misses `−c_1`.
    let scale = z.iter().map(|w| w.norm()).fold(1.0, f64::max);
    let sum: Complex64 = z.iter().sum();
    if (sum + c[1]).norm() > 1e-8 * d as f64 * scale {
        let max_residual = z.iter().map(|&w| horner(c, w).norm()).fold(0.0, f64::max);
        return Err(Error::NoConvergence { iterations: iters, max_residual });
    }
    pair_conjugates(&mut z);
    Ok((z, iters))
}

/// Starting points on a circle of radius `1 + max_k |c_k|^(1/k)`, rotated
/// off the real axis.
fn initial_points(c: &[f64]) -> Vec<Complex64> {
    let d = c.len() - 1;
    let radius = 1.0 + (1..=d).map(|k| c[k].abs().powf(1.0 / k as f64)).fold(0.0, f64::max);
    (0..d).map(|k| Complex64::from_polar(radius, TAU * k as f64 / d as f64 + 0.4)).collect()
}

/// Roots of `x² + b x + c`.
fn quadratic(b: f64, c: f64) -> [Complex64; 2] {
    let disc = b * b - 4.0 * c;
    if disc >= 0.0 {
        let s = disc.sqrt();
        let q = -0.5 * (b + b.signum() * s);
        if q == 0.0 {
            return [Complex64::new(0.0, 0.0); 2];
        }
        [Complex64::new(q, 0.0), Complex64::new(c / q, 0.0)]
    } else {
        let re = -0.5 * b;
        let im = 0.5 * (-disc).sqrt();
        [Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

/// Snaps nearly real roots onto the axis and makes the remaining ones
/// exact conjugate pairs. The roots are those of a real square-free
/// polynomial, so the upper and lower half-planes hold equally many.
fn pair_conjugates(z: &mut [Complex64]) {
    let scale = z.iter().map(|w| w.norm()).fold(1.0, f64::max);
    let tau = 1e-9 * scale;
    let upper: Vec<usize> = (0..z.len()).filter(|&i| z[i].im > tau).collect();
    let mut lower: Vec<usize> = (0..z.len()).filter(|&i| z[i].im < -tau).collect();
    if upper.len() != lower.len() {
        return;
    }
    for i in 0..z.len() {
        if z[i].im.abs() <= tau {
            z[i].im = 0.0;
        }
    }
    for &u in &upper {
        let (pos, &l) = lower
            .iter()
            .enumerate()
            .min_by(|(_, &a), (_, &b)| (z[a].conj() - z[u]).norm().total_cmp(&(z[b].conj() - z[u]).norm()))
            .expect("as many lower roots as upper roots");
        lower.swap_remove(pos);
        let mid = (z[u] + z[l].conj()) * 0.5;
        z[u] = mid;
        z[l] = mid.conj();
    }
}

/// Bottleneck-free matching distance between two equal-size multisets:
/// greedy nearest-partner matching, returning the largest matched gap.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut pool: Vec<Complex64> = b.to_vec();
    let mut worst: f64 = 0.0;
    for &x in a {
        let (i, d) = pool
            .iter()
            .enumerate()
            .map(|(i, &y)| (i, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("pool is non-empty");
        worst = worst.max(d);
        pool.swap_remove(i);
    }
    worst
}
