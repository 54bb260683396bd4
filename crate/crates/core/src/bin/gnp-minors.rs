use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gnp_minors::analysis::{exact_ccl_with_cap, first_moment_log_bound, verify_minor, DEFAULT_EXACT_CAP};
use gnp_minors::certificate::MinorCertificate;
use gnp_minors::error::{Error, Result};
use gnp_minors::extract::{ExtractConfig, Regime};
use gnp_minors::graph::Graph;
use gnp_minors::harness::{read_records, render_table, run_experiment, run_trial, summarize, ExperimentConfig, GridPoint};
use gnp_minors::rng::RngStream;
use gnp_minors::sample::sample_gnp;

#[derive(Parser)]
#[command(version, about = "Large complete minors in random graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n, p) and write its edge list.
    Sample {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        density: Density,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run one extraction and write the certificate.
    Extract(ExtractArgs),
    /// Check a certificate against a graph.
    Verify { graph: PathBuf, certificate: PathBuf },
    /// Largest complete minor of a small graph, by exhaustive search.
    Exact {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
        cap: usize,
    },
    /// First-moment bound on the number of K_k minors in G(n, p).
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        k: usize,
    },
    /// Run a configured experiment grid and write CSV.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Base seed, overriding the config.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Summarize a trials CSV per grid point.
    Summarize { trials: PathBuf },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Density {
    #[arg(long)]
    p: Option<f64>,
    /// Expected degree; p = c / n.
    #[arg(long)]
    c: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Dense,
    Sparse,
}

#[derive(Args)]
struct ExtractArgs {
    #[arg(long, value_enum)]
    regime: RegimeArg,
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    density: Density,
    #[arg(long, default_value_t = 0.2)]
    eps: f64,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    #[arg(long, default_value_t = 0.3)]
    alpha: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for certificate.txt, graph.txt and record.json;
    /// the certificate goes to stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

impl Density {
    fn p(&self, n: usize) -> f64 {
        self.p.unwrap_or_else(|| self.c.unwrap_or(f64::NAN) / n as f64)
    }

    fn c(&self, n: usize) -> f64 {
        self.c.unwrap_or_else(|| self.p.unwrap_or(f64::NAN) * n as f64)
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::read_edge_list(BufReader::new(File::open(path)?))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn extract(args: &ExtractArgs) -> Result<()> {
    let point = match args.regime {
        RegimeArg::Dense => GridPoint::dense(args.n, args.density.p(args.n), args.eps),
        RegimeArg::Sparse => GridPoint::sparse(args.n, args.density.c(args.n), args.delta, args.alpha),
    };
    let (record, extraction) = run_trial(&point, 0, 0, args.seed, &ExtractConfig::default())?;
    for warning in &extraction.diagnostics.warnings {
        eprintln!("warning: {warning}");
    }
    match &args.output {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            extraction.certificate.write(create(&dir.join("certificate.txt"))?)?;
            extraction.graph.write_edge_list(create(&dir.join("graph.txt"))?)?;
            let json = serde_json::json!({ "record": record, "diagnostics": extraction.diagnostics });
            let mut out = create(&dir.join("record.json"))?;
            writeln!(out, "{}", serde_json::to_string_pretty(&json).expect("serializable"))?;
            out.flush()?;
        }
        None => extraction.certificate.write(std::io::stdout().lock())?,
    }
    let regime = match point.regime {
        Regime::Dense => "dense",
        Regime::Sparse => "sparse",
    };
    eprintln!(
        "{regime} n={} p={:.6} order={} target={} ratio={:.3} verify=pass",
        point.n, point.p, record.order, record.target_order, record.ratio
    );
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Sample { n, density, seed, output } => {
            let g = sample_gnp(n, density.p(n), &RngStream::new(seed, 0))?;
            match output {
                Some(path) => g.write_edge_list(create(&path)?)?,
                None => g.write_edge_list(std::io::stdout().lock())?,
            }
        }
        Command::Extract(args) => extract(&args)?,
        Command::Verify { graph, certificate } => {
            let g = read_graph(&graph)?;
            let cert = MinorCertificate::read(BufReader::new(File::open(certificate)?))?;
            return Ok(match verify_minor(&g, &cert) {
                Ok(()) => {
                    println!("pass: K_{} minor", cert.order);
                    ExitCode::SUCCESS
                }
                Err(violation) => {
                    println!("fail: {violation}");
                    ExitCode::from(1)
                }
            });
        }
        Command::Exact { graph, cap } => {
            let (order, witness) = exact_ccl_with_cap(&read_graph(&graph)?, cap)?;
            println!("ccl {order}");
            print!("{}", witness.to_text());
        }
        Command::Bound { n, p, k } => {
            let report = first_moment_log_bound(n, p, k)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        }
        Command::Experiment { config, jobs, output, seed } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if jobs.is_some() {
                cfg.jobs = jobs;
            }
            if let Some(dir) = output {
                cfg.output = dir;
            }
            if let Some(base) = seed {
                cfg.seeds.base = base;
            }
            let records = run_experiment(&cfg)?;
            print!("{}", render_table(&summarize(&records)?));
        }
        Command::Summarize { trials } => {
            let records = read_records(BufReader::new(File::open(trials)?))?;
            print!("{}", render_table(&summarize(&records)?));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Verification(_) => 1,
                Error::Io(_) => 3,
                _ => 2,
            })
        }
    }
}
