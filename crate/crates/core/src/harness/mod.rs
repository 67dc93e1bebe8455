//! Batch drivers behind the command line: family tables and corpus scans.

mod family;
mod scan;

pub use family::{family_plot_data, family_table, family_table_csv, FamilyKind, FamilyRow, FAMILY_CSV_HEADER};
pub use scan::{
    scan, scan_csv_row, Entry, Manifest, Observation, ScanConfig, ScanMode, ScanOutcome, ScanResult, TreeCheck,
    SCAN_CSV_HEADER,
};

/// Formats `x` with at most 12 significant digits, using the shortest
/// decimal that round-trips the rounded value. Magnitudes below `1e-4` or
/// from `1e15` up use exponent notation. `-0` prints as `0`.
pub fn fmt_float(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("scientific notation round-trips");
    if rounded == 0.0 {
        return "0".into();
    }
    let mag = rounded.abs();
    if !(1e-4..1e15).contains(&mag) {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    }
}

/// `x,y` lines with a header, for external plotting.
pub fn plot_data(points: &[(f64, f64)]) -> String {
    let mut out = String::from("x,y\n");
    for &(x, y) in points {
        out.push_str(&format!("{},{}\n", fmt_float(x), fmt_float(y)));
    }
    out
}
