//! Theorem checks for the permanental energy of a single graph.
//!
//! Every bound is evaluated even when slack, and each check yields a
//! verdict. All verdicts are proved statements, so a failure on any valid
//! graph indicates a bug in the numerics or the engines.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::charpoly::adjacency_char_poly;
use crate::closed_forms::{complete_poly, derangement_root};
use crate::error::{Error, Result};
use crate::format::to_graph6;
use crate::graph::{Graph, GraphMetrics, CYCLE_ENUMERATION_CAP};
use crate::orientation::{find_odd_orientation, mcclelland_bound, skew_char_poly, ORIENTATION_SEARCH_MAX_EDGES};
use crate::permanent::{perm_poly, permanent_capped, Engine, EngineCaps};
use crate::poly::IntPolynomial;
use crate::spectral::{adjacency_spectrum, perm_roots, RootMultiset, Spectrum};

/// Slack allowed when asserting an inequality between computed energies.
pub const BOUND_TOL: f64 = 1e-8;
/// Distance from `2√m` under which the lower bound counts as attained.
pub const TIGHT_TOL: f64 = 1e-6;
/// Slack on `|Σ μ_i|`, per vertex.
pub const MU_SUM_TOL: f64 = 1e-8;
/// Slack on `|Σ μ_i² + 2m|`, relative to `max(1, m)`.
pub const MU_SQUARE_TOL: f64 = 1e-6;
/// Slack on `(Σ|μ|)² ≥ 2 Σ|μ|²`.
pub const L1_L2_TOL: f64 = 1e-6;
/// Slack on `|E_per − E|` for forests and 4k-cycle-free bipartite graphs,
/// per vertex.
pub const FOREST_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReportConfig {
    pub engine: Engine,
    pub caps: EngineCaps,
}

/// Everything the checks need, computed once per graph.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub graph: Graph,
    pub metrics: GraphMetrics,
    pub poly: IntPolynomial,
    pub roots: RootMultiset,
    pub spectrum: Spectrum,
}

impl Evaluation {
    pub fn new(g: &Graph, config: &ReportConfig) -> Result<Self> {
        let poly = perm_poly(g, config.engine, &config.caps)?;
        let roots = perm_roots(&poly)?;
        let spectrum = adjacency_spectrum(g)?;
        Ok(Evaluation { graph: g.clone(), metrics: g.metrics(), poly, roots, spectrum })
    }

    pub fn e_per(&self) -> f64 {
        self.roots.energy()
    }
}

fn leq(value: f64, bound: f64) -> bool {
    value <= bound + BOUND_TOL * bound.abs().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerCheck {
    pub bound: f64,
    pub holds: bool,
    /// Numerically attained, within [`TIGHT_TOL`].
    pub tight: bool,
    /// Structural star-plus-isolated test; must agree with `tight`.
    pub star: bool,
}

/// `E_per(G) ≥ 2√m`, with equality exactly for a star plus isolated vertices.
pub fn check_lower(ev: &Evaluation) -> LowerCheck {
    let bound = 2.0 * (ev.metrics.m as f64).sqrt();
    let e = ev.e_per();
    LowerCheck {
        bound,
        holds: leq(bound, e),
        tight: (e - bound).abs() <= TIGHT_TOL,
        star: ev.graph.is_star_plus_isolated(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpperCheck {
    pub bound: f64,
    pub holds: bool,
}

/// `E_per(G) ≤ n ρ(G)`.
pub fn check_upper_rho(ev: &Evaluation) -> UpperCheck {
    let bound = ev.metrics.n as f64 * ev.spectrum.rho;
    UpperCheck { bound, holds: leq(ev.e_per(), bound) }
}

/// `E_per(G) ≤ n (√(8m+1) − 1)/2`.
pub fn check_upper_stanley(ev: &Evaluation) -> UpperCheck {
    let bound = stanley_bound(ev.metrics.n, ev.metrics.m);
    UpperCheck { bound, holds: leq(ev.e_per(), bound) }
}

pub fn stanley_bound(n: usize, m: usize) -> f64 {
    n as f64 * ((8.0 * m as f64 + 1.0).sqrt() - 1.0) / 2.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaCheck {
    /// `n Δ(G)`.
    pub bound: f64,
    /// `n (n − 1)`.
    pub complete_bound: f64,
    pub holds: bool,
}

/// `E_per(G) ≤ n Δ(G) ≤ n(n−1)`; needs `n ≥ 2`.
pub fn check_upper_delta(ev: &Evaluation) -> Result<DeltaCheck> {
    let n = ev.metrics.n;
    if n < 2 {
        return Err(Error::InvalidParameter("the max-degree bound needs n >= 2".into()));
    }
    let bound = (n * ev.metrics.max_degree) as f64;
    let complete_bound = (n * (n - 1)) as f64;
    Ok(DeltaCheck { bound, complete_bound, holds: leq(ev.e_per(), bound) && bound <= complete_bound })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DominanceCheck {
    /// `D_n^(1/n)`.
    pub threshold: f64,
    pub kn_energy: f64,
    /// `ρ(G) ≤ D_n^(1/n)`.
    pub applies: bool,
    pub holds: bool,
}

/// If `ρ(G) ≤ D_n^(1/n)` then `E_per(G) ≤ E_per(K_n)`.
pub fn check_kn_dominance(ev: &Evaluation) -> Result<DominanceCheck> {
    let n = ev.metrics.n;
    let threshold = derangement_root(n);
    let kn_energy = perm_roots(&complete_poly(n))?.energy();
    let applies = ev.spectrum.rho <= threshold;
    Ok(DominanceCheck { threshold, kn_energy, applies, holds: !applies || leq(ev.e_per(), kn_energy) })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McClellandCheck {
    pub bound: f64,
    /// An orientation with every cycle oddly oriented was found.
    pub hypothesis: bool,
    /// `det(xI − S) = π(G,x)` exactly for that orientation.
    pub det_model: bool,
    pub holds: bool,
}

/// `E_per(G) ≤ √(2mn)` for bipartite graphs with an odd orientation.
/// Returns `None` when the hypothesis cannot be decided at this size.
pub fn check_mcclelland(ev: &Evaluation) -> Result<Option<McClellandCheck>> {
    let g = &ev.graph;
    let bound = mcclelland_bound(g);
    if !ev.metrics.is_bipartite {
        return Ok(Some(McClellandCheck { bound, hypothesis: false, det_model: false, holds: true }));
    }
    if g.n() > CYCLE_ENUMERATION_CAP || ev.metrics.m > ORIENTATION_SEARCH_MAX_EDGES {
        return Ok(None);
    }
    Ok(Some(match find_odd_orientation(g)? {
        None => McClellandCheck { bound, hypothesis: false, det_model: false, holds: true },
        Some(o) => {
            let det_model = skew_char_poly(&o.skew_matrix()) == ev.poly;
            McClellandCheck { bound, hypothesis: true, det_model, holds: det_model && leq(ev.e_per(), bound) }
        }
    }))
}

/// `c_0 = 1, c_1 = 0, c_2 = m, c_3 = −2t` and `(−1)^k c_k ≥ 0`.
pub fn check_coefficients(ev: &Evaluation) -> bool {
    let c = ev.poly.coeffs();
    let n = ev.metrics.n;
    let expect = [
        (0, BigInt::from(1)),
        (1, BigInt::zero()),
        (2, BigInt::from(ev.metrics.m)),
        (3, -BigInt::from(2 * ev.metrics.t)),
    ];
    expect.iter().filter(|(k, _)| *k <= n).all(|(k, v)| &c[*k] == v)
        && c.iter().enumerate().all(|(k, ck)| if k % 2 == 0 { !ck.is_negative() } else { !ck.is_positive() })
}

/// `c_n = π(G,0) = (−1)^n per(A(G))`.
pub fn check_constant_term(ev: &Evaluation, caps: &EngineCaps) -> Result<bool> {
    let n = ev.metrics.n;
    let per = permanent_capped(&ev.graph, ev.graph.vertex_mask(), caps.permanent_max_k)?;
    let want = if n % 2 == 1 { -per } else { per };
    Ok(ev.poly.coeff(n) == &want)
}

/// Bipartite graphs without cycles of length divisible by four satisfy
/// `π(G,x) = i^(−n) χ(G, ix)`. Returns `None` if the hypothesis fails or
/// cannot be decided at this size, else whether the identity holds exactly.
pub fn check_perspectrum(ev: &Evaluation) -> Result<Option<bool>> {
    let g = &ev.graph;
    if !ev.metrics.is_bipartite {
        return Ok(None);
    }
    if !g.is_forest() {
        if g.n() > CYCLE_ENUMERATION_CAP {
            return Ok(None);
        }
        if g.simple_cycles()?.iter().any(|c| c.len() % 4 == 0) {
            return Ok(None);
        }
    }
    let chi = adjacency_char_poly(g);
    // i^(−n) χ(ix) has coefficient a_k i^(−k) on x^(n−k); a_k = 0 for odd k
    // on bipartite graphs.
    let ok = chi.coeffs().iter().zip(ev.poly.coeffs()).enumerate().all(|(k, (a, c))| {
        if k % 2 == 1 {
            a.is_zero() && c.is_zero()
        } else if k % 4 == 0 {
            c == a
        } else {
            *c == -a
        }
    });
    Ok(Some(ok))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    fn from(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: &'static str,
    pub status: Status,
}

/// Per-graph result of every check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub t: usize,
    pub e_per: f64,
    pub e_adj: f64,
    pub rho: f64,
    pub lower_2sqrtm: f64,
    pub upper_nrho: f64,
    pub upper_stanley: f64,
    pub upper_ndelta: f64,
    pub upper_nn1: f64,
    pub mcclelland: Option<McClellandCheck>,
    pub kn_dominance: DominanceCheck,
    pub is_star_plus_isolated: bool,
    pub lower_tight: bool,
    pub verdicts: Vec<Verdict>,
}

impl BoundsReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != Status::Fail)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.verdicts.iter().filter(|v| v.status == Status::Fail).map(|v| v.check).collect()
    }

    pub fn status(&self, check: &str) -> Option<Status> {
        self.verdicts.iter().find(|v| v.check == check).map(|v| v.status)
    }
}

/// Runs every check on `g`.
pub fn full_report(g: &Graph, config: &ReportConfig) -> Result<BoundsReport> {
    let ev = Evaluation::new(g, config)?;
    report_from(&ev, config)
}

pub fn report_from(ev: &Evaluation, config: &ReportConfig) -> Result<BoundsReport> {
    let g = &ev.graph;
    let n = ev.metrics.n;
    let m = ev.metrics.m;
    let e = ev.e_per();
    let e_adj = ev.spectrum.energy();
    let mut verdicts = Vec::new();
    let mut push = |check: &'static str, status: Status| verdicts.push(Verdict { check, status });

    let lower = check_lower(ev);
    push("lower_bound", Status::from(lower.holds));
    push("lower_equality", Status::from(lower.tight == lower.star));
    if ev.metrics.is_connected && n >= 2 {
        let bound = 2.0 * ((n - 1) as f64).sqrt();
        let is_star = m == n - 1 && g.is_star_plus_isolated();
        let tight = (e - bound).abs() <= TIGHT_TOL;
        push("connected_min", Status::from(leq(bound, e) && tight == is_star));
    } else {
        push("connected_min", Status::NotApplicable);
    }

    let rho = check_upper_rho(ev);
    push("upper_nrho", Status::from(rho.holds));
    let stanley = check_upper_stanley(ev);
    push("upper_stanley", Status::from(stanley.holds));
    let (upper_ndelta, upper_nn1) = match check_upper_delta(ev) {
        Ok(d) => {
            push("upper_ndelta", Status::from(d.holds));
            (d.bound, d.complete_bound)
        }
        Err(_) => {
            push("upper_ndelta", Status::NotApplicable);
            (0.0, 0.0)
        }
    };
    if n >= 2 {
        let ordered = leq(lower.bound, e) && leq(e, rho.bound) && leq(rho.bound, upper_ndelta);
        push("bound_ordering", Status::from(ordered));
    } else {
        push("bound_ordering", Status::NotApplicable);
    }

    let roots = &ev.roots;
    push("root_disk", Status::from(roots.max_modulus() <= ev.spectrum.rho + BOUND_TOL));
    push("mu_sum", Status::from(roots.sum().norm() <= MU_SUM_TOL * n as f64));
    let sq = roots.sum_of_squares() + 2.0 * m as f64;
    push("mu_square_sum", Status::from(sq.norm() <= MU_SQUARE_TOL * (m as f64).max(1.0)));
    push("l1_l2", Status::from(e * e >= 2.0 * roots.sum_of_square_moduli() - L1_L2_TOL));
    push("coefficients", Status::from(check_coefficients(ev)));
    push("constant_term", Status::from(check_constant_term(ev, &config.caps)?));

    if g.is_forest() {
        push("forest_identity", Status::from((e - e_adj).abs() <= FOREST_TOL * n as f64));
    } else {
        push("forest_identity", Status::NotApplicable);
    }
    match check_perspectrum(ev)? {
        Some(exact) => {
            let energies = (e - e_adj).abs() <= FOREST_TOL * n as f64;
            push("perspectrum", Status::from(exact && energies));
        }
        None => push("perspectrum", Status::NotApplicable),
    }

    let mcclelland = check_mcclelland(ev)?;
    match mcclelland {
        Some(c) if c.hypothesis => push("mcclelland", Status::from(c.holds)),
        _ => push("mcclelland", Status::NotApplicable),
    }

    let kn = check_kn_dominance(ev)?;
    push("kn_dominance", if kn.applies { Status::from(kn.holds) } else { Status::NotApplicable });

    Ok(BoundsReport {
        graph_id: to_graph6(g),
        n,
        m,
        t: ev.metrics.t,
        e_per: e,
        e_adj,
        rho: ev.spectrum.rho,
        lower_2sqrtm: lower.bound,
        upper_nrho: rho.bound,
        upper_stanley: stanley.bound,
        upper_ndelta,
        upper_nn1,
        mcclelland,
        kn_dominance: kn,
        is_star_plus_isolated: lower.star,
        lower_tight: lower.tight,
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{star_with_isolated, Family};

    fn ev(g: &Graph) -> Evaluation {
        Evaluation::new(g, &ReportConfig::default()).unwrap()
    }

    fn fam(f: Family) -> Graph {
        f.build().unwrap()
    }

    #[test]
    fn lower_examples() {
        let c = check_lower(&ev(&fam(Family::Star(4))));
        assert_eq!((c.bound, c.holds, c.tight, c.star), (4.0, true, true, true));
        let c = check_lower(&ev(&fam(Family::Path(4))));
        assert!((c.bound - 2.0 * 3f64.sqrt()).abs() < 1e-12);
        assert!(c.holds && !c.tight && !c.star);
        let c = check_lower(&ev(&Graph::empty(3).unwrap()));
        assert_eq!((c.bound, c.holds, c.tight), (0.0, true, true));
    }

    #[test]
    fn upper_examples() {
        for n in 2..8 {
            let e = ev(&fam(Family::Star(n - 1)));
            let c = check_upper_rho(&e);
            assert!((c.bound - n as f64 * ((n - 1) as f64).sqrt()).abs() < 1e-9 && c.holds);
        }
        let k3 = ev(&fam(Family::Complete(3)));
        let c = check_upper_rho(&k3);
        assert!((c.bound - 6.0).abs() < 1e-10 && c.holds);
        let k1 = ev(&Graph::empty(1).unwrap());
        assert_eq!(check_upper_rho(&k1).bound, 0.0);
        assert!(check_upper_rho(&k1).holds);

        assert!((check_upper_stanley(&k3).bound - 6.0).abs() < 1e-12);
        assert_eq!(check_upper_stanley(&ev(&Graph::empty(4).unwrap())).bound, 0.0);
        assert!((check_upper_stanley(&ev(&fam(Family::Complete(4)))).bound - 12.0).abs() < 1e-12);

        assert_eq!(check_upper_delta(&ev(&fam(Family::Cycle(5)))).unwrap().bound, 10.0);
        let d = check_upper_delta(&ev(&fam(Family::Complete(5)))).unwrap();
        assert_eq!((d.bound, d.complete_bound), (20.0, 20.0));
        let d = check_upper_delta(&ev(&fam(Family::Star(4)))).unwrap();
        assert!(d.bound == 20.0 && d.holds);
        assert!(check_upper_delta(&k1).is_err());
    }

    #[test]
    fn dominance_examples() {
        let c8 = check_kn_dominance(&ev(&fam(Family::Cycle(8)))).unwrap();
        assert!((c8.threshold - 14833f64.powf(1.0 / 8.0)).abs() < 1e-12);
        assert!(c8.applies && c8.holds);
        let k6 = check_kn_dominance(&ev(&fam(Family::Complete(6)))).unwrap();
        assert!(!k6.applies);
        assert!((k6.threshold - 265f64.powf(1.0 / 6.0)).abs() < 1e-12);
        let k1 = check_kn_dominance(&ev(&Graph::empty(1).unwrap())).unwrap();
        assert!(k1.applies && k1.holds);
    }

    #[test]
    fn full_report_examples() {
        let cfg = ReportConfig::default();
        let r = full_report(&fam(Family::Complete(3)), &cfg).unwrap();
        assert!((r.e_per - 4.2596).abs() < 5e-4);
        assert!((r.lower_2sqrtm - 2.0 * 3f64.sqrt()).abs() < 1e-12);
        assert!((r.upper_nrho - 6.0).abs() < 1e-9);
        assert!(r.all_pass(), "{:?}", r.failures());
        assert_eq!(r.mcclelland.map(|m| m.hypothesis), Some(false));

        let r = full_report(&star_with_isolated(5, 1).unwrap(), &cfg).unwrap();
        assert!(r.lower_tight && r.is_star_plus_isolated && r.all_pass());

        let r = full_report(&fam(Family::Path(6)), &cfg).unwrap();
        assert!((r.e_per - r.e_adj).abs() < 1e-8);
        assert_eq!(r.status("forest_identity"), Some(Status::Pass));
        assert_eq!(r.status("perspectrum"), Some(Status::Pass));
        assert_eq!(r.status("mcclelland"), Some(Status::Pass));
        assert!(r.all_pass());
    }

    #[test]
    fn perspectrum_applies_to_c6_not_c4() {
        let c6 = ev(&fam(Family::Cycle(6)));
        assert_eq!(check_perspectrum(&c6).unwrap(), Some(true));
        let c4 = ev(&fam(Family::Cycle(4)));
        assert_eq!(check_perspectrum(&c4).unwrap(), None);
        let k3 = ev(&fam(Family::Complete(3)));
        assert_eq!(check_perspectrum(&k3).unwrap(), None);
    }

    #[test]
    fn report_serialises_verdicts_in_snake_case() {
        let r = full_report(&fam(Family::Path(3)), &ReportConfig::default()).unwrap();
        let j = serde_json::to_value(&r).unwrap();
        assert_eq!(j["graph_id"], "Bg");
        assert_eq!(j["verdicts"][0]["check"], "lower_bound");
        assert!(j["verdicts"].as_array().unwrap().iter().any(|v| v["status"] == "not_applicable"));
    }
}
