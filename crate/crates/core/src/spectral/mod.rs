//! Numeric layer: adjacency spectra and permanental roots.

mod jacobi;
mod roots;

pub use jacobi::symmetric_eigenvalues;
pub use roots::{backward_scale, multiset_distance, perm_roots, RootJson, RootMultiset, MAX_ITERATIONS, RESIDUAL_TOLERANCE, STEP_TOLERANCE};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::permanent::{perm_poly, perm_poly_ryser, Engine, EngineCaps};
use crate::poly::IntPolynomial;

/// Adjacency eigenvalues `λ_1 ≥ … ≥ λ_n` and the spectral radius.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub rho: f64,
}

impl Spectrum {
    /// `E(G) = Σ |λ_i|`.
    pub fn energy(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.abs()).sum()
    }
}

pub fn adjacency_spectrum(g: &Graph) -> Result<Spectrum> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameter("spectrum of the empty vertex set".into()));
    }
    let a = (0..n)
        .map(|u| (0..n).map(|v| if g.has_edge(u, v) { 1.0 } else { 0.0 }).collect())
        .collect();
    let eigenvalues = symmetric_eigenvalues(a);
    let rho = eigenvalues.iter().map(|l| l.abs()).fold(0.0, f64::max);
    Ok(Spectrum { eigenvalues, rho })
}

/// `E(G)`; zero for the graph with no vertices.
pub fn adjacency_energy(g: &Graph) -> Result<f64> {
    if g.n() == 0 {
        return Ok(0.0);
    }
    Ok(adjacency_spectrum(g)?.energy())
}

/// `π(G,x)` together with its roots.
#[derive(Debug, Clone)]
pub struct PermanentalSpectrum {
    pub poly: IntPolynomial,
    pub roots: RootMultiset,
}

impl PermanentalSpectrum {
    pub fn of(g: &Graph, engine: Engine, caps: &EngineCaps) -> Result<Self> {
        let poly = perm_poly(g, engine, caps)?;
        let roots = perm_roots(&poly)?;
        Ok(PermanentalSpectrum { poly, roots })
    }

    pub fn energy(&self) -> f64 {
        self.roots.energy()
    }
}

/// `E_per(G) = Σ |μ_i|` with the default engine and caps.
pub fn permanental_energy(g: &Graph) -> Result<f64> {
    Ok(perm_roots(&perm_poly_ryser(g)?)?.energy())
}
