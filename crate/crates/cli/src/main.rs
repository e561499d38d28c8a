use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use wsdepnet::collection::{load_canonical, load_sawsdl, NamePolicy};
use wsdepnet::community::{walktrap, write_dendrogram_csv, write_partition_csv, PartitionRow};
use wsdepnet::depnet::{build_network, export, load_network, save_network, ExportFormat};
use wsdepnet::matching::{Matcher, MatcherKind};
use wsdepnet::powerlaw::{degree_distribution, write_degree_csv};
use wsdepnet::report::{
    analyze, compare, render_comparison, render_report, AnalysisConfig, MetricsReport,
};
use wsdepnet::topology::{degree_stats, giant_subnetwork};
use wsdepnet::{Error, Result};

#[derive(Parser)]
#[command(
    name = "wsdepnet",
    version,
    about = "Parameter dependency networks of web-service collections"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CollectionFormat {
    Canonical,
    Sawsdl,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    In,
    Out,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Build a dependency network from a service collection
    Extract {
        #[arg(long)]
        collection: PathBuf,
        #[arg(long, value_enum)]
        format: CollectionFormat,
        #[arg(long, default_value = "syntactic-equal")]
        matcher: MatcherKind,
        /// GraphML output; archetype members go to `<out>.members.json`
        #[arg(long)]
        out: PathBuf,
        /// Compare parameter names case-insensitively
        #[arg(long)]
        case_fold: bool,
    },
    /// Compute the metric profile of a network's giant component
    Analyze {
        network: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
        #[arg(long, default_value_t = 100)]
        er_samples: usize,
        #[arg(long, default_value_t = 1000)]
        bootstrap: usize,
        #[arg(long, default_value_t = 4)]
        walktrap_t: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare two JSON reports (syntactic first, semantic second)
    Compare {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Walktrap communities of the giant component as CSV
    Communities {
        network: PathBuf,
        #[arg(long, default_value_t = 4)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the merge list
        #[arg(long)]
        dendrogram: Option<PathBuf>,
    },
    /// Degree distribution as CSV
    DegreeDist {
        network: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        which: Which,
        /// Use every node instead of the giant component
        #[arg(long)]
        whole: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a network to GraphML, DOT or a tab-separated edge list
    Export {
        network: PathBuf,
        /// Defaults to the format implied by the extension of --out
        #[arg(long)]
        format: Option<ExportFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(out: Option<&Path>, write: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match out {
        Some(path) => {
            let mut buf = Vec::new();
            write(&mut buf)?;
            fs::write(path, buf).map_err(|source| Error::Io {
                path: path.to_path_buf(),
                source,
            })
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write(&mut lock)?;
            lock.flush()?;
            Ok(())
        }
    }
}

fn read_report(path: &Path) -> Result<MetricsReport> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Extract {
            collection,
            format,
            matcher,
            out,
            case_fold,
        } => {
            let c = match format {
                CollectionFormat::Canonical => load_canonical(&collection)?,
                CollectionFormat::Sawsdl => load_sawsdl(&collection)?,
            };
            let matcher = Matcher::new(matcher).with_names(NamePolicy { case_fold });
            let net = build_network(&c, matcher);
            log::info!(
                "{} instances -> {} nodes, {} links ({} self-dependencies dropped)",
                c.instance_count(),
                net.node_count(),
                net.link_count(),
                net.self_loop_count()
            );
            save_network(&net, &out)
        }
        Command::Analyze {
            network,
            report,
            er_samples,
            bootstrap,
            walktrap_t,
            seed,
            out,
        } => {
            let net = load_network(&network)?;
            let config = AnalysisConfig {
                er_samples,
                bootstrap_n: bootstrap,
                walktrap_t,
                seed,
            };
            let r = analyze(&net, &config)?;
            let text = match report {
                ReportFormat::Json => r.to_json() + "\n",
                ReportFormat::Text => render_report(&r),
            };
            emit(out.as_deref(), |w| Ok(w.write_all(text.as_bytes())?))
        }
        Command::Compare {
            left,
            right,
            report,
            out,
        } => {
            let c = compare(&read_report(&left)?, &read_report(&right)?);
            let text = match report {
                ReportFormat::Json => c.to_json() + "\n",
                ReportFormat::Text => render_comparison(&c),
            };
            emit(out.as_deref(), |w| Ok(w.write_all(text.as_bytes())?))
        }
        Command::Communities {
            network,
            t,
            out,
            dendrogram,
        } => {
            let net = load_network(&network)?;
            let giant = giant_subnetwork(&net)?;
            let (partition, merges) = walktrap(&giant.network.graph(), t)?;
            let rows: Vec<PartitionRow> = partition
                .assignment
                .iter()
                .enumerate()
                .map(|(i, &c)| {
                    let id = giant.original_ids[i];
                    PartitionRow {
                        node_id: id,
                        label: net.nodes()[id].label.clone(),
                        community_id: c,
                    }
                })
                .collect();
            log::info!(
                "{} communities, modularity {:.4}",
                partition.community_count,
                partition.modularity
            );
            if let Some(path) = dendrogram {
                emit(Some(&path), |w| write_dendrogram_csv(&merges, w))?;
            }
            emit(out.as_deref(), |w| write_partition_csv(&rows, w))
        }
        Command::DegreeDist {
            network,
            which,
            whole,
            out,
        } => {
            let net = load_network(&network)?;
            let g = if whole {
                net.graph()
            } else {
                giant_subnetwork(&net)?.network.graph()
            };
            let stats = degree_stats(&g);
            let degrees = match which {
                Which::In => stats.in_degrees,
                Which::Out => stats.out_degrees,
                Which::All => stats.total_degrees,
            };
            let degrees: Vec<u64> = degrees.into_iter().map(|d| d as u64).collect();
            emit(out.as_deref(), |w| {
                write_degree_csv(&degree_distribution(&degrees), w)
            })
        }
        Command::Export {
            network,
            format,
            out,
        } => {
            let format = format
                .or_else(|| out.as_deref().and_then(ExportFormat::from_extension))
                .ok_or_else(|| {
                    Error::InvalidArgument(
                        "--format is required when --out has no known extension".into(),
                    )
                })?;
            let net = load_network(&network)?;
            emit(out.as_deref(), |w| export(&net, format, w))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        _ if e.is_degenerate() => 3,
        Error::InvalidArgument(_) => 1,
        Error::Metric { source, .. } => exit_code(source),
        _ => 2,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
