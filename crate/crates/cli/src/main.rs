use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use permenergy::bounds::{full_report, ReportConfig};
use permenergy::enumerate::{all_labeled_graphs, unlabeled_trees};
use permenergy::format::parse_graphs;
use permenergy::harness::{family_plot_data, family_table, family_table_csv, plot_data, scan, FamilyKind, ScanConfig, ScanMode};
use permenergy::orientation::orient_report;
use permenergy::permanent::{perm_poly, perm_poly_minors_capped, perm_poly_ryser_capped};
use permenergy::{adjacency_spectrum, perm_roots, to_graph6};
use permenergy::{Engine, EngineCaps, Error, Graph, GraphFormat};

/// Permanental polynomials and permanental energy of simple graphs.
#[derive(Parser)]
#[command(name = "permenergy", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args)]
struct Options {
    /// Input format.
    #[arg(long, global = true, default_value = "graph6")]
    format: GraphFormat,
    /// Engine used for π(G,x).
    #[arg(long, global = true, value_enum, default_value = "ryser")]
    engine: EngineArg,
    /// Compute π(G,x) with both engines and fail if they differ.
    #[arg(long, global = true)]
    xcheck: bool,
    /// Largest vertex count accepted by the polynomial engines.
    #[arg(long, global = true, env = "PERMENERGY_NCAP")]
    ncap: Option<usize>,
    /// Worker threads for scans.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Results directory for scans.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print `x,y` columns instead of the usual output.
    #[arg(long, global = true)]
    emit_plot_data: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Ryser,
    Minors,
}

#[derive(Clone, Copy, ValueEnum)]
enum Generate {
    /// Every labeled graph on `--n` vertices (n ≤ 7).
    Labeled,
    /// One tree per isomorphism class on `--n` vertices (n ≤ 16).
    Trees,
}

#[derive(Subcommand)]
enum Command {
    /// Exact coefficients of π(G,x).
    Poly { input: Option<String> },
    /// Permanental energy, adjacency energy, spectral radius and roots.
    Energy { input: Option<String> },
    /// Every theorem check; exit status 1 if any verdict fails.
    Check { input: Option<String> },
    /// Checks every graph of a graph6 stream and reports the extremes.
    Scan {
        input: Option<String>,
        /// Require trees and check star ≤ T ≤ path.
        #[arg(long)]
        trees_only: bool,
        /// Build the corpus internally instead of reading it.
        #[arg(long, value_enum, requires = "n")]
        generate: Option<Generate>,
        /// Vertex count for `--generate`.
        #[arg(long)]
        n: Option<usize>,
        /// Stop after this many graphs; rerun to resume.
        #[arg(long)]
        limit: Option<usize>,
        /// Print the per-graph CSV instead of the summary.
        #[arg(long)]
        csv: bool,
    },
    /// Generic-engine energies of a graph family next to closed forms.
    Family {
        kind: FamilyKind,
        from: usize,
        to: usize,
    },
    /// Searches for an orientation with every cycle oddly oriented.
    Orient { input: Option<String> },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => 3,
            Error::EngineMismatch | Error::NoConvergence { .. } => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 2, message: e.to_string() }
    }
}

fn verdict_failure(message: impl Into<String>) -> Failure {
    Failure { code: 1, message: message.into() }
}

impl Options {
    fn engine(&self) -> Engine {
        match self.engine {
            EngineArg::Ryser => Engine::Ryser,
            EngineArg::Minors => Engine::Minors,
        }
    }

    fn caps(&self) -> EngineCaps {
        let mut caps = EngineCaps::default();
        if let Some(n) = self.ncap {
            caps.ryser_max_n = n;
            caps.minors_max_n = n;
        }
        caps
    }

    fn report(&self) -> ReportConfig {
        ReportConfig { engine: self.engine(), caps: self.caps() }
    }

    fn poly(&self, g: &Graph) -> Result<permenergy::IntPolynomial, Failure> {
        let caps = self.caps();
        if self.xcheck {
            let a = perm_poly_ryser_capped(g, caps.ryser_max_n)?;
            let b = perm_poly_minors_capped(g, caps.minors_max_n)?;
            if a != b {
                return Err(Error::EngineMismatch.into());
            }
            return Ok(a);
        }
        Ok(perm_poly(g, self.engine(), &caps)?)
    }
}

fn read_input(input: Option<&str>) -> Result<String, Failure> {
    match input {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
        Some(p) if fs::metadata(p).is_ok() => Ok(fs::read_to_string(p)?),
        Some(literal) => Ok(literal.to_string()),
    }
}

fn read_graphs(input: Option<&str>, format: GraphFormat) -> Result<Vec<Graph>, Failure> {
    let text = read_input(input)?;
    let graphs = parse_graphs(&text, format).map_err(|(line, e)| Failure {
        code: 2,
        message: if line > 0 { format!("line {line}: {e}") } else { e.to_string() },
    })?;
    if graphs.is_empty() {
        return Err(Failure { code: 2, message: "no graph in input".into() });
    }
    Ok(graphs)
}

fn print_json(out: &mut impl Write, value: &impl serde::Serialize) -> Result<(), Failure> {
    let line = serde_json::to_string(value).map_err(|e| Failure { code: 2, message: e.to_string() })?;
    writeln!(out, "{line}")?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let opts = &cli.opts;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match &cli.command {
        Command::Poly { input } => {
            for g in read_graphs(input.as_deref(), opts.format)? {
                let p = opts.poly(&g)?;
                let json = p.to_json();
                print_json(&mut out, &json!({ "graph6": to_graph6(&g), "n": json.n, "coeffs": json.coeffs, "text": p.to_string() }))?;
            }
        }
        Command::Energy { input } => {
            for g in read_graphs(input.as_deref(), opts.format)? {
                let roots = perm_roots(&opts.poly(&g)?)?;
                if opts.emit_plot_data {
                    let points: Vec<(f64, f64)> = roots.roots.iter().map(|z| (z.re, z.im)).collect();
                    write!(out, "{}", plot_data(&points))?;
                    continue;
                }
                let spectrum = adjacency_spectrum(&g)?;
                print_json(
                    &mut out,
                    &json!({
                        "graph6": to_graph6(&g),
                        "n": g.n(),
                        "m": g.edge_count(),
                        "e_per": roots.energy(),
                        "e_adj": spectrum.energy(),
                        "rho": spectrum.rho,
                        "roots": roots.to_json(),
                    }),
                )?;
            }
        }
        Command::Check { input } => {
            let mut failed = Vec::new();
            for g in read_graphs(input.as_deref(), opts.format)? {
                if opts.xcheck {
                    opts.poly(&g)?;
                }
                let report = full_report(&g, &opts.report())?;
                print_json(&mut out, &report)?;
                if !report.all_pass() {
                    failed.push(format!("{}: {}", report.graph_id, report.failures().join(", ")));
                }
            }
            if !failed.is_empty() {
                return Err(verdict_failure(format!("failed verdicts: {}", failed.join("; "))));
            }
        }
        Command::Scan { input, trees_only, generate, n, limit, csv } => {
            let graphs: Vec<Graph> = match (generate, n) {
                (Some(Generate::Labeled), Some(n)) => all_labeled_graphs(*n)?.collect(),
                (Some(Generate::Trees), Some(n)) => unlabeled_trees(*n)?,
                _ => read_graphs(input.as_deref(), GraphFormat::Graph6)?,
            };
            let mut config = ScanConfig {
                report: opts.report(),
                mode: if *trees_only { ScanMode::TreesOnly } else { ScanMode::All },
                out_dir: opts.out.clone(),
                limit: *limit,
                ..ScanConfig::default()
            };
            if let Some(w) = opts.workers {
                config.workers = w;
            }
            let outcome = scan(&graphs, &config)?;
            let result = &outcome.result;
            if *csv {
                write!(out, "{}", outcome.csv())?;
            } else {
                print_json(&mut out, result)?;
            }
            if result.failures > 0 {
                return Err(verdict_failure(format!("{} graphs failed a verdict", result.failures)));
            }
            if result.tree_check.is_some_and(|t| !t.holds()) {
                return Err(verdict_failure("tree extremes are not star and path"));
            }
            for o in result.observations.iter().filter(|o| !o.holds) {
                eprintln!("note: expected pattern not observed: {}", o.name);
            }
        }
        Command::Family { kind, from, to } => {
            let rows = family_table(*kind, *from..=*to, &opts.report())?;
            if opts.emit_plot_data {
                write!(out, "{}", plot_data(&family_plot_data(&rows)))?;
            } else {
                write!(out, "{}", family_table_csv(&rows))?;
            }
        }
        Command::Orient { input } => {
            for g in read_graphs(input.as_deref(), opts.format)? {
                let report = orient_report(&g, &opts.poly(&g)?)?;
                print_json(&mut out, &report)?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("permenergy: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
