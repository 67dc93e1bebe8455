//! Analytic permanental polynomials, roots and energies for stars, cycles
//! and complete graphs. Used as fast paths and as oracles for the generic
//! engine.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::permanent::derangement_count;
use crate::poly::IntPolynomial;
use crate::spectral::RootMultiset;

/// `log(1 + √2)`, the constant in the odd-cycle root parametrisation.
pub fn odd_cycle_constant() -> f64 {
    (1.0 + 2f64.sqrt()).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Analytic data for `π(C_n, x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleClosedForm {
    pub n: usize,
    pub parity: Parity,
    /// `log(1+√2)`; only meaningful for odd cycles.
    pub a: f64,
    pub roots: Vec<Complex64>,
    pub energy: f64,
}

impl CycleClosedForm {
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
        }
        let a = odd_cycle_constant();
        Ok(if n.is_multiple_of(2) {
            CycleClosedForm { n, parity: Parity::Even, a, roots: even_cycle_roots(n)?, energy: even_cycle_energy(n)? }
        } else {
            CycleClosedForm {
                n,
                parity: Parity::Odd,
                a,
                roots: odd_cycle_root_values(n),
                energy: odd_cycle_energy_ratio(n)? * n as f64,
            }
        })
    }
}

/// `π(K_{1,m} ⊔ (n−m−1)K_1, x) = x^n + m x^(n−2)`.
pub fn star_poly(m: usize, n: usize) -> Result<IntPolynomial> {
    if m == 0 || n < m + 1 {
        return Err(Error::InvalidParameter(format!("star needs n >= m + 1 >= 2, got m = {m}, n = {n}")));
    }
    let mut c = vec![BigInt::zero(); n + 1];
    c[0] = 1.into();
    c[2] = m.into();
    IntPolynomial::new(c)
}

/// `π(K_n, x)`: every principal `k`-subset of `K_n` is `K_k`, so
/// `c_k = (−1)^k C(n,k) D_k`.
pub fn complete_poly(n: usize) -> IntPolynomial {
    let mut binom = BigInt::from(1);
    let mut c = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let term = &binom * derangement_count(k);
        c.push(if k % 2 == 1 { -term } else { term });
        binom = binom * (n - k) / (k + 1);
    }
    IntPolynomial::new(c).expect("leading coefficient is 1")
}

fn require_even(n: usize) -> Result<()> {
    if n % 2 == 1 || n < 4 {
        return Err(Error::InvalidParameter(format!("expected an even cycle length >= 4, got {n}")));
    }
    Ok(())
}

fn require_odd(n: usize) -> Result<()> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::InvalidParameter(format!("expected an odd cycle length >= 3, got {n}")));
    }
    Ok(())
}

/// `E_per(C_n) = 4 / sin(π/n)` for even `n`.
pub fn even_cycle_energy(n: usize) -> Result<f64> {
    require_even(n)?;
    Ok(4.0 / (PI / n as f64).sin())
}

/// `−2i·sin((2t−1)π/n)` for `t = 1..n`.
pub fn even_cycle_roots(n: usize) -> Result<Vec<Complex64>> {
    require_even(n)?;
    Ok((1..=n)
        .map(|t| Complex64::new(0.0, -2.0 * ((2 * t - 1) as f64 * PI / n as f64).sin()))
        .collect())
}

fn odd_cycle_root_values(n: usize) -> Vec<Complex64> {
    let a = odd_cycle_constant();
    (0..n)
        .map(|k| 2.0 * (Complex64::new(a, 2.0 * PI * k as f64) / n as f64).sinh())
        .collect()
}

/// `μ_k = 2 sinh((a + 2πik)/n)`, `k = 0..n−1`, for odd `n`. Residuals are
/// measured with the λ-form of `π(C_n, x)`.
pub fn odd_cycle_roots(n: usize) -> Result<RootMultiset> {
    require_odd(n)?;
    let mut roots = odd_cycle_root_values(n);
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let residuals = roots.iter().map(|&z| cycle_poly_lambda_check(n, z).norm()).collect();
    Ok(RootMultiset { roots, residuals, zero_multiplicity: 0, iterations: 0 })
}

/// `|μ_k|` for the odd-cycle roots, via `|sinh(u + iθ)|² = sinh²u + sin²θ`.
fn odd_cycle_moduli(n: usize) -> impl Iterator<Item = f64> {
    let sh = (odd_cycle_constant() / n as f64).sinh();
    (0..n).map(move |k| {
        let s = (2.0 * PI * k as f64 / n as f64).sin();
        2.0 * (sh * sh + s * s).sqrt()
    })
}

/// `π(C_n, x) = λ₊ⁿ + λ₋ⁿ + 2(−1)ⁿ` with `λ± = (x ± √(x²+4))/2`. The sum is
/// symmetric in `λ±`, so the principal square-root branch is used as is.
pub fn cycle_poly_lambda_check(n: usize, x: Complex64) -> Complex64 {
    let root = (x * x + 4.0).sqrt();
    let plus = (x + root) / 2.0;
    let minus = (x - root) / 2.0;
    let sign = if n.is_multiple_of(2) { 2.0 } else { -2.0 };
    plus.powu(n as u32) + minus.powu(n as u32) + sign
}

/// `n · D_n^(1/n)`, a lower bound on `E_per(K_n)`.
pub fn kn_energy_lower_bound(n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let d = derangement_count(n);
    if d.is_zero() {
        return 0.0;
    }
    let ln = match d.to_f64() {
        Some(v) if v.is_finite() => v.ln(),
        _ => d.bits() as f64 * std::f64::consts::LN_2,
    };
    n as f64 * (ln / n as f64).exp()
}

/// `D_n^(1/n)`, the spectral-radius threshold below which `K_n` dominates.
pub fn derangement_root(n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        kn_energy_lower_bound(n) / n as f64
    }
}

/// `E_per(C_n)/n` for odd `n`, summed analytically; valid far beyond the
/// exact engine's size limits.
pub fn odd_cycle_energy_ratio(n: usize) -> Result<f64> {
    require_odd(n)?;
    Ok(odd_cycle_moduli(n).sum::<f64>() / n as f64)
}

/// `E_per(C_n)` for any `n ≥ 3` from the closed forms.
pub fn cycle_energy(n: usize) -> Result<f64> {
    Ok(CycleClosedForm::new(n)?.energy)
}
