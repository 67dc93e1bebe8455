use std::f64::consts::PI;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use serde::Serialize;

use super::fmt_float;
use crate::bounds::ReportConfig;
use crate::closed_forms::{cycle_energy, kn_energy_lower_bound};
use crate::error::{Error, Result};
use crate::graph::Family;
use crate::permanent::perm_poly;
use crate::spectral::perm_roots;

pub const FAMILY_CSV_HEADER: &str = "n,family,energy,closed_form_energy,abs_diff";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Cycle,
    /// `K_{1,n−1}`; `n` counts vertices.
    Star,
    Path,
    /// The closed-form column holds the lower bound `n·D_n^(1/n)`.
    Complete,
    Empty,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Cycle => "cycle",
            FamilyKind::Star => "star",
            FamilyKind::Path => "path",
            FamilyKind::Complete => "complete",
            FamilyKind::Empty => "empty",
        }
    }

    fn family(self, n: usize) -> Result<Family> {
        Ok(match self {
            FamilyKind::Cycle => Family::Cycle(n),
            FamilyKind::Star if n >= 2 => Family::Star(n - 1),
            FamilyKind::Star => return Err(Error::InvalidParameter("a star needs at least 2 vertices".into())),
            FamilyKind::Path => Family::Path(n),
            FamilyKind::Complete => Family::Complete(n),
            FamilyKind::Empty => Family::Empty(n),
        })
    }

    fn closed_form(self, n: usize) -> Result<f64> {
        Ok(match self {
            FamilyKind::Cycle => cycle_energy(n)?,
            FamilyKind::Star => 2.0 * ((n - 1) as f64).sqrt(),
            // The path is a tree, so its permanental energy equals its
            // adjacency energy Σ 2|cos(jπ/(n+1))|.
            FamilyKind::Path => (1..=n).map(|j| 2.0 * (j as f64 * PI / (n + 1) as f64).cos().abs()).sum(),
            FamilyKind::Complete => kn_energy_lower_bound(n),
            FamilyKind::Empty => 0.0,
        })
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cycle" | "cycles" => FamilyKind::Cycle,
            "star" | "stars" => FamilyKind::Star,
            "path" | "paths" => FamilyKind::Path,
            "complete" => FamilyKind::Complete,
            "empty" => FamilyKind::Empty,
            _ => return Err(Error::InvalidParameter(format!("unknown family {s:?}"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyRow {
    pub n: usize,
    pub family: &'static str,
    pub energy: f64,
    pub closed_form_energy: f64,
    pub abs_diff: f64,
}

/// Generic-engine energy next to the analytic value for each `n` in range.
pub fn family_table(kind: FamilyKind, range: RangeInclusive<usize>, config: &ReportConfig) -> Result<Vec<FamilyRow>> {
    range
        .map(|n| {
            let g = kind.family(n)?.build()?;
            let energy = perm_roots(&perm_poly(&g, config.engine, &config.caps)?)?.energy();
            let closed_form_energy = kind.closed_form(n)?;
            Ok(FamilyRow { n, family: kind.name(), energy, closed_form_energy, abs_diff: (energy - closed_form_energy).abs() })
        })
        .collect()
}

pub fn family_table_csv(rows: &[FamilyRow]) -> String {
    let mut out = format!("{FAMILY_CSV_HEADER}\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            r.family,
            fmt_float(r.energy),
            fmt_float(r.closed_form_energy),
            fmt_float(r.abs_diff)
        ));
    }
    out
}

/// `(n, energy)` points.
pub fn family_plot_data(rows: &[FamilyRow]) -> Vec<(f64, f64)> {
    rows.iter().map(|r| (r.n as f64, r.energy)).collect()
}
