use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::fmt_float;
use crate::bounds::{full_report, BoundsReport, ReportConfig, Status};
use crate::error::{Error, Result};
use crate::format::{parse_graph6, to_graph6};
use crate::graph::Graph;
use crate::permanent::Engine;

pub const SCAN_CSV_HEADER: &str = "index,graph6,n,m,t,e_per,e_adj,rho,verdict";

const MANIFEST: &str = "manifest.json";
const CSV: &str = "scan.csv";
const JSONL: &str = "reports.jsonl";
const SUMMARY: &str = "summary.json";

/// Energies this close count as equal when deciding uniqueness.
const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    All,
    /// Every graph must be a tree; additionally checks star ≤ T ≤ path.
    TreesOnly,
}

#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub report: ReportConfig,
    pub workers: usize,
    pub mode: ScanMode,
    /// Results directory; a manifest there makes the scan resumable.
    pub out_dir: Option<PathBuf>,
    /// Stop after this many graphs in total, leaving a resumable state.
    pub limit: Option<usize>,
    pub batch_size: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            report: ReportConfig::default(),
            workers: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            mode: ScanMode::All,
            out_dir: None,
            limit: None,
            batch_size: 2048,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub graph6: String,
    pub e_per: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TreeCheck {
    pub min_is_star: bool,
    pub max_is_path: bool,
    /// No non-star tree attains the minimum.
    pub star_unique: bool,
    /// No non-path tree attains the maximum.
    pub path_unique: bool,
}

impl TreeCheck {
    pub fn holds(&self) -> bool {
        self.min_is_star && self.max_is_path && self.star_unique && self.path_unique
    }
}

/// An empirical pattern; reported, never treated as a failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Observation {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanResult {
    pub n: usize,
    pub corpus_size: usize,
    pub completed: usize,
    pub max_entry: Entry,
    /// Graphs within the tie tolerance of the maximum, the maximizer included.
    pub max_ties: usize,
    pub min_entry: Entry,
    pub min_connected_entry: Option<Entry>,
    /// Highest energy among graphs other than `K_n`.
    pub best_non_complete: Option<Entry>,
    pub per_m_frontier: BTreeMap<usize, Entry>,
    /// Graphs with at least one failing verdict.
    pub failures: usize,
    pub failed_graphs: Vec<String>,
    pub tree_check: Option<TreeCheck>,
    pub observations: Vec<Observation>,
}

impl ScanResult {
    pub fn is_complete(&self) -> bool {
        self.completed == self.corpus_size
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool_version: String,
    pub corpus_sha256: String,
    pub corpus_size: usize,
    pub n: usize,
    pub mode: ScanMode,
    pub engine: Engine,
    pub completed: usize,
}

impl Manifest {
    fn same_run(&self, other: &Manifest) -> bool {
        self.corpus_sha256 == other.corpus_sha256
            && self.corpus_size == other.corpus_size
            && self.mode == other.mode
            && self.engine == other.engine
    }
}

#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub result: ScanResult,
    /// CSV rows (without header) for every completed graph, in input order.
    pub csv_rows: Vec<String>,
    pub manifest: Manifest,
}

impl ScanOutcome {
    pub fn csv(&self) -> String {
        let mut out = format!("{SCAN_CSV_HEADER}\n");
        for r in &self.csv_rows {
            out.push_str(r);
            out.push('\n');
        }
        out
    }
}

/// What the fold needs to know about one scanned graph.
#[derive(Debug, Clone)]
struct Record {
    graph6: String,
    m: usize,
    e_per: f64,
    connected: bool,
    complete: bool,
    failed: bool,
    star: bool,
    path: bool,
    complement_matching: Option<usize>,
}

impl Record {
    fn new(g: &Graph, graph6: String, e_per: f64, failed: bool) -> Self {
        let n = g.n();
        let m = g.edge_count();
        let comp = g.complement();
        Record {
            graph6,
            m,
            e_per,
            connected: g.is_connected(),
            complete: 2 * m == n * n.saturating_sub(1),
            failed,
            star: g.is_tree() && g.is_star_plus_isolated(),
            path: g.is_path(),
            complement_matching: (comp.max_degree() <= 1).then(|| comp.edge_count()),
        }
    }

    fn entry(&self) -> Entry {
        Entry { graph6: self.graph6.clone(), e_per: self.e_per }
    }
}

pub fn scan_csv_row(index: usize, r: &BoundsReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        index,
        r.graph_id,
        r.n,
        r.m,
        r.t,
        fmt_float(r.e_per),
        fmt_float(r.e_adj),
        fmt_float(r.rho),
        if r.all_pass() { "pass" } else { "fail" }
    )
}

fn corpus_hash(ids: &[String]) -> String {
    let mut h = Sha256::new();
    for id in ids {
        h.update(id.as_bytes());
        h.update(b"\n");
    }
    format!("{:x}", h.finalize())
}

fn better_max(cand: &Record, cur: &Record) -> bool {
    cand.e_per > cur.e_per || (cand.e_per == cur.e_per && cand.graph6 < cur.graph6)
}

fn better_min(cand: &Record, cur: &Record) -> bool {
    cand.e_per < cur.e_per || (cand.e_per == cur.e_per && cand.graph6 < cur.graph6)
}

fn pick<'a>(cur: Option<&'a Record>, cand: &'a Record, better: fn(&Record, &Record) -> bool) -> Option<&'a Record> {
    match cur {
        Some(c) if !better(cand, c) => Some(c),
        _ => Some(cand),
    }
}

/// Scans `graphs`, evaluating every theorem check on each.
///
/// The result depends only on the corpus and the report configuration; the
/// worker count and batch size do not affect it. With `out_dir` set, rows are
/// appended to `scan.csv` and `reports.jsonl` batch by batch and
/// `manifest.json` records progress, so a later call with the same corpus
/// resumes where the previous one stopped.
pub fn scan(graphs: &[Graph], config: &ScanConfig) -> Result<ScanOutcome> {
    let first = graphs.first().ok_or_else(|| Error::InvalidParameter("empty corpus".into()))?;
    let n = first.n();
    if let Some(i) = graphs.iter().position(|g| g.n() != n) {
        return Err(Error::InvalidParameter(format!(
            "graph {} has {} vertices, expected {n}",
            i + 1,
            graphs[i].n()
        )));
    }
    if config.mode == ScanMode::TreesOnly {
        if let Some(i) = graphs.iter().position(|g| !g.is_tree()) {
            return Err(Error::InvalidParameter(format!("graph {} is not a tree", i + 1)));
        }
    }
    let ids: Vec<String> = graphs.iter().map(to_graph6).collect();
    let mut manifest = Manifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        corpus_sha256: corpus_hash(&ids),
        corpus_size: graphs.len(),
        n,
        mode: config.mode,
        engine: config.report.engine,
        completed: 0,
    };

    let mut records = Vec::with_capacity(graphs.len());
    let mut csv_rows = Vec::with_capacity(graphs.len());
    let mut sink = match &config.out_dir {
        Some(dir) => Some(Sink::open(dir, &mut manifest, &mut records, &mut csv_rows)?),
        None => None,
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))?;
    let stop = config.limit.unwrap_or(usize::MAX).min(graphs.len());
    let batch = config.batch_size.max(1);
    let mut start = manifest.completed;
    while start < stop {
        let end = (start + batch).min(stop);
        let reports: Vec<BoundsReport> = pool.install(|| {
            graphs[start..end].par_iter().map(|g| full_report(g, &config.report)).collect::<Result<_>>()
        })?;
        let rows: Vec<String> = reports.iter().enumerate().map(|(i, r)| scan_csv_row(start + i, r)).collect();
        if let Some(sink) = sink.as_mut() {
            sink.append(&reports, &rows)?;
        }
        for (i, r) in reports.iter().enumerate() {
            records.push(Record::new(&graphs[start + i], ids[start + i].clone(), r.e_per, !r.all_pass()));
        }
        csv_rows.extend(rows);
        start = end;
        manifest.completed = end;
        if let Some(sink) = sink.as_mut() {
            sink.write_manifest(&manifest)?;
        }
    }

    let result = fold(n, graphs.len(), &records, config.mode)?;
    if let Some(sink) = &sink {
        if result.is_complete() {
            sink.write_summary(&result)?;
        }
    }
    Ok(ScanOutcome { result, csv_rows, manifest })
}

fn fold(n: usize, corpus_size: usize, records: &[Record], mode: ScanMode) -> Result<ScanResult> {
    let (mut max, mut min, mut min_conn, mut non_complete) = (None, None, None, None);
    let mut frontier: BTreeMap<usize, &Record> = BTreeMap::new();
    for r in records {
        max = pick(max, r, better_max);
        min = pick(min, r, better_min);
        if r.connected {
            min_conn = pick(min_conn, r, better_min);
        }
        if !r.complete {
            non_complete = pick(non_complete, r, better_max);
        }
        let slot = frontier.entry(r.m).or_insert(r);
        if better_max(r, slot) {
            *slot = r;
        }
    }
    let (Some(max), Some(min)) = (max, min) else {
        return Err(Error::InvalidParameter("scan stopped before any graph was processed".into()));
    };
    let max_ties = records.iter().filter(|r| (r.e_per - max.e_per).abs() <= TIE_TOL).count();

    let tree_check = (mode == ScanMode::TreesOnly).then(|| TreeCheck {
        min_is_star: min.star,
        max_is_path: max.path,
        star_unique: records.iter().all(|r| r.star || r.e_per > min.e_per + TIE_TOL),
        path_unique: records.iter().all(|r| r.path || r.e_per < max.e_per - TIE_TOL),
    });

    let mut observations = Vec::new();
    if mode == ScanMode::All && (5..=6).contains(&n) {
        let full = n * (n - 1) / 2;
        for k in 1..=2 {
            if let Some(r) = frontier.get(&(full - k)) {
                observations.push(Observation {
                    name: format!("max at m = {} is K_{n} minus a {k}-matching", full - k),
                    holds: r.complement_matching == Some(k),
                });
            }
        }
    }

    let failed: Vec<&Record> = records.iter().filter(|r| r.failed).collect();
    Ok(ScanResult {
        n,
        corpus_size,
        completed: records.len(),
        max_entry: max.entry(),
        max_ties,
        min_entry: min.entry(),
        min_connected_entry: min_conn.map(Record::entry),
        best_non_complete: non_complete.map(Record::entry),
        per_m_frontier: frontier.into_iter().map(|(m, r)| (m, r.entry())).collect(),
        failures: failed.len(),
        failed_graphs: failed.iter().take(20).map(|r| r.graph6.clone()).collect(),
        tree_check,
        observations,
    })
}

struct Sink {
    dir: PathBuf,
    csv: File,
    jsonl: File,
}

impl Sink {
    /// Opens (or resumes) the results directory, loading completed work into
    /// `records` and `csv_rows`.
    fn open(dir: &Path, manifest: &mut Manifest, records: &mut Vec<Record>, csv_rows: &mut Vec<String>) -> Result<Self> {
        fs::create_dir_all(dir)?;
        let manifest_path = dir.join(MANIFEST);
        let mut completed = 0;
        if manifest_path.exists() {
            let old: Manifest = serde_json::from_str(&fs::read_to_string(&manifest_path)?)
                .map_err(|e| Error::Manifest(format!("{}: {e}", manifest_path.display())))?;
            if !old.same_run(manifest) {
                return Err(Error::Manifest(format!(
                    "{} belongs to a different corpus or configuration",
                    manifest_path.display()
                )));
            }
            completed = old.completed;
        }
        // Rows written after the last manifest update are discarded.
        let rows = read_lines(&dir.join(CSV), completed + 1)?;
        let reports = read_lines(&dir.join(JSONL), completed)?;
        if completed > 0 && (rows.len() != completed + 1 || reports.len() != completed) {
            return Err(Error::Manifest(format!("results in {} are shorter than the manifest claims", dir.display())));
        }
        for line in &reports {
            records.push(record_from_json(line)?);
        }
        csv_rows.extend(rows.into_iter().skip(1));
        manifest.completed = completed;

        let mut csv = File::create(dir.join(CSV))?;
        writeln!(csv, "{SCAN_CSV_HEADER}")?;
        for r in csv_rows.iter() {
            writeln!(csv, "{r}")?;
        }
        let mut jsonl = File::create(dir.join(JSONL))?;
        for line in &reports {
            writeln!(jsonl, "{line}")?;
        }
        let sink = Sink { dir: dir.to_path_buf(), csv, jsonl };
        sink.write_manifest(manifest)?;
        Ok(sink)
    }

    fn append(&mut self, reports: &[BoundsReport], rows: &[String]) -> Result<()> {
        for (r, row) in reports.iter().zip(rows) {
            writeln!(self.csv, "{row}")?;
            let line = serde_json::to_string(r).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(self.jsonl, "{line}")?;
        }
        self.csv.flush()?;
        self.jsonl.flush()?;
        Ok(())
    }

    fn write_manifest(&self, manifest: &Manifest) -> Result<()> {
        write_json_atomic(&self.dir.join(MANIFEST), manifest)
    }

    fn write_summary(&self, result: &ScanResult) -> Result<()> {
        write_json_atomic(&self.dir.join(SUMMARY), result)
    }
}

fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let tmp = path.with_extension("json.tmp");
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    fs::write(&tmp, text + "\n")?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn read_lines(path: &Path, max: usize) -> Result<Vec<String>> {
    if !path.exists() {
        return Ok(Vec::new());
    }
    let file = OpenOptions::new().read(true).open(path)?;
    BufReader::new(file).lines().take(max).map(|l| l.map_err(Error::from)).collect()
}

fn record_from_json(line: &str) -> Result<Record> {
    let bad = |what: &str| Error::Manifest(format!("unreadable report line ({what})"));
    let v: serde_json::Value = serde_json::from_str(line).map_err(|e| bad(&e.to_string()))?;
    let id = v["graph_id"].as_str().ok_or_else(|| bad("graph_id"))?;
    let e_per = v["e_per"].as_f64().ok_or_else(|| bad("e_per"))?;
    let fail = serde_json::to_value(Status::Fail).expect("status serialises");
    let failed = v["verdicts"].as_array().ok_or_else(|| bad("verdicts"))?.iter().any(|x| x["status"] == fail);
    let g = parse_graph6(id).map_err(|e| bad(&e.to_string()))?;
    Ok(Record::new(&g, id.to_string(), e_per, failed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{all_labeled_graphs, unlabeled_trees};
    use crate::graph::Family;

    fn corpus(n: usize) -> Vec<Graph> {
        all_labeled_graphs(n).unwrap().collect()
    }

    fn config(workers: usize) -> ScanConfig {
        ScanConfig { workers, batch_size: 7, ..ScanConfig::default() }
    }

    #[test]
    fn all_graphs_n4() {
        let out = scan(&corpus(4), &config(2)).unwrap();
        let r = &out.result;
        assert_eq!((r.n, r.corpus_size, r.completed, r.failures), (4, 64, 64, 0));
        assert_eq!(r.max_entry.graph6, to_graph6(&Family::Complete(4).build().unwrap()));
        assert_eq!(r.max_ties, 1);
        let runner = parse_graph6(&r.best_non_complete.as_ref().unwrap().graph6).unwrap();
        assert_eq!(runner.edge_count(), 5);
        assert_eq!(r.min_entry.e_per, 0.0);
        assert_eq!(r.per_m_frontier.len(), 7);
        assert_eq!(out.csv_rows.len(), 64);
    }

    #[test]
    fn connected_min_n5_is_star() {
        let r = scan(&corpus(5), &config(4)).unwrap().result;
        let e = r.min_connected_entry.unwrap();
        assert!((e.e_per - 4.0).abs() < 1e-12);
        let g = parse_graph6(&e.graph6).unwrap();
        assert!(g.is_tree() && g.is_star_plus_isolated());
        assert!(r.observations.iter().all(|o| o.holds), "{:?}", r.observations);
    }

    #[test]
    fn trees_n7() {
        let cfg = ScanConfig { mode: ScanMode::TreesOnly, ..config(3) };
        let r = scan(&unlabeled_trees(7).unwrap(), &cfg).unwrap().result;
        assert!(r.tree_check.unwrap().holds());
        assert!(parse_graph6(&r.min_entry.graph6).unwrap().is_star_plus_isolated());
        assert!(parse_graph6(&r.max_entry.graph6).unwrap().is_path());
        assert!(scan(&corpus(3), &cfg).is_err());
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let c = corpus(5);
        let a = scan(&c, &config(1)).unwrap();
        let b = scan(&c, &ScanConfig { batch_size: 1000, ..config(4) }).unwrap();
        assert_eq!(a.csv(), b.csv());
        assert_eq!(a.result, b.result);
    }

    #[test]
    fn resumes_from_manifest() {
        let c = corpus(4);
        let dir = tempfile::tempdir().unwrap();
        let cfg = ScanConfig { out_dir: Some(dir.path().to_path_buf()), ..config(2) };
        let partial = scan(&c, &ScanConfig { limit: Some(30), ..cfg.clone() }).unwrap();
        assert!(!partial.result.is_complete());
        assert_eq!(partial.manifest.completed, 30);
        assert!(!dir.path().join(SUMMARY).exists());

        let resumed = scan(&c, &cfg).unwrap();
        let fresh = scan(&c, &config(1)).unwrap();
        assert_eq!(resumed.result, fresh.result);
        assert_eq!(fs::read_to_string(dir.path().join(CSV)).unwrap(), fresh.csv());
        assert_eq!(fs::read_to_string(dir.path().join(JSONL)).unwrap().lines().count(), 64);
        assert!(dir.path().join(SUMMARY).exists());

        let other = corpus(3);
        assert!(matches!(scan(&other, &cfg), Err(Error::Manifest(_))));
    }

    #[test]
    fn rejects_mixed_orders() {
        let g = vec![Graph::empty(3).unwrap(), Graph::empty(4).unwrap()];
        assert!(scan(&g, &config(1)).is_err());
        assert!(scan(&[], &config(1)).is_err());
    }
}
