//! `mgs`: build torus-family quivers, verify and search maximal green
//! sequences, and run the explorer server.
//!
//! Exit codes: 0 success (or maximal), 1 negative result, 2 usage error,
//! 3 internal error.

use std::fs;
use std::io::Write;
use std::net::{IpAddr, SocketAddr};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mgs_core::engine::{apply_sequence, check_sequence, coframe_permutation, Mode};
use mgs_core::family::{CycleFamily, TorusFamily};
use mgs_core::format::{deserialize_labeled, serialize_labeled, to_dot};
use mgs_core::labels::{parse_sequence, resolve_vertex, LabelMap};
use mgs_core::quiver::{color_string, IceQuiver};
use mgs_core::search::{search_mgs, SearchMode};
use mgs_core::{server, EngineError};

#[derive(Parser, Debug)]
#[command(name = "mgs", version, about = "Quiver mutation and maximal green sequences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Doc, global = true)]
    format: Format,
    /// Write the report to FILE instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Doc,
    Dot,
    Plain,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the framed torus quiver for genus N.
    Build { n: usize },
    /// Check whether a sequence is a maximal green sequence.
    Check {
        #[command(flatten)]
        quiver: QuiverSource,
        #[command(flatten)]
        sequence: SequenceSource,
    },
    /// Search for maximal green sequences.
    Search {
        #[command(flatten)]
        quiver: QuiverSource,
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = ModeArg::First)]
        mode: ModeArg,
    },
    /// Emit the per-step color trace of a sequence.
    Trace {
        #[command(flatten)]
        quiver: QuiverSource,
        #[command(flatten)]
        sequence: SequenceSource,
        /// Include the quiver after every step.
        #[arg(long)]
        snapshots: bool,
        /// Allow mutation at red vertices.
        #[arg(long)]
        unrestricted: bool,
    },
    /// Mutate once and emit the resulting quiver.
    Mutate {
        #[command(flatten)]
        quiver: QuiverSource,
        /// Vertex index or label.
        #[arg(long)]
        vertex: String,
        #[arg(long)]
        unrestricted: bool,
    },
    /// Run the explorer HTTP server.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: IpAddr,
        /// Directory holding the built browser explorer.
        #[arg(long)]
        static_dir: Option<PathBuf>,
        /// Seconds before an idle session is dropped.
        #[arg(long, default_value_t = 3600)]
        idle_secs: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    All,
    First,
    Shortest,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::All => SearchMode::All,
            ModeArg::First => SearchMode::First,
            ModeArg::Shortest => SearchMode::Shortest,
        }
    }
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct QuiverSource {
    /// Quiver document.
    #[arg(value_name = "QUIVER")]
    path: Option<PathBuf>,
    /// The framed torus quiver of genus N.
    #[arg(long, value_name = "N")]
    torus: Option<usize>,
    /// The framed oriented N-cycle.
    #[arg(long, value_name = "N")]
    cycle: Option<usize>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SequenceSource {
    /// The full torus sequence (needs --torus).
    #[arg(long)]
    theorem: bool,
    /// The cycle sequence (needs --torus or --cycle).
    #[arg(long)]
    cycle_lemma: bool,
    /// Whitespace-separated vertex indices or labels.
    #[arg(long = "file", value_name = "FILE")]
    sequence_file: Option<PathBuf>,
}

enum Family {
    Torus(TorusFamily),
    Cycle(CycleFamily),
    None,
}

struct Loaded {
    quiver: IceQuiver,
    labels: Option<LabelMap>,
    family: Family,
}

#[derive(Debug)]
enum Failure {
    Negative(String),
    Usage(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Negative(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn load(src: &QuiverSource) -> Result<Loaded, Failure> {
    if let Some(n) = src.torus {
        let t = TorusFamily::new(n).map_err(usage)?;
        return Ok(Loaded {
            quiver: t.quiver(),
            labels: Some(t.label_map()),
            family: Family::Torus(t),
        });
    }
    if let Some(n) = src.cycle {
        let c = CycleFamily::new(n).map_err(usage)?;
        return Ok(Loaded {
            quiver: c.quiver(),
            labels: Some(c.label_map()),
            family: Family::Cycle(c),
        });
    }
    let path = src.path.as_ref().expect("clap enforces one source");
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let (quiver, labels) = deserialize_labeled(&text).map_err(usage)?;
    Ok(Loaded {
        quiver,
        labels,
        family: Family::None,
    })
}

fn sequence(src: &SequenceSource, loaded: &Loaded) -> Result<Vec<usize>, Failure> {
    if src.theorem {
        return match loaded.family {
            Family::Torus(t) => Ok(t.theorem_sequence().steps().to_vec()),
            _ => Err(usage("--theorem needs --torus")),
        };
    }
    if src.cycle_lemma {
        return match loaded.family {
            Family::Torus(t) => Ok(t.cycle_sequence().steps().to_vec()),
            Family::Cycle(c) => Ok(c.cycle_sequence().steps().to_vec()),
            Family::None => Err(usage("--cycle-lemma needs --torus or --cycle")),
        };
    }
    let path = src.sequence_file.as_ref().expect("clap enforces one source");
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let steps = parse_sequence(&text, loaded.labels.as_ref()).map_err(usage)?;
    if let Some(&bad) = steps.iter().find(|&&v| v >= loaded.quiver.n_mutable()) {
        return Err(usage(format!("vertex {bad} is not mutable")));
    }
    Ok(steps)
}

fn name(labels: Option<&LabelMap>, v: usize) -> String {
    labels
        .and_then(|l| l.name(v))
        .map(str::to_string)
        .unwrap_or_else(|| v.to_string())
}

fn plain_quiver(q: &IceQuiver, labels: Option<&LabelMap>) -> String {
    let mut out = format!("{} mutable, {} frozen\n", q.n_mutable(), q.n_frozen());
    for a in q.arrows() {
        out.push_str(&format!(
            "{} -> {} x{}\n",
            name(labels, a.source),
            name(labels, a.target),
            a.multiplicity
        ));
    }
    out
}

fn render_quiver(format: Format, q: &IceQuiver, labels: Option<&LabelMap>) -> String {
    match format {
        Format::Doc => serialize_labeled(q, labels) + "\n",
        Format::Dot => to_dot(q, labels),
        Format::Plain => plain_quiver(q, labels),
    }
}

fn json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

/// Runs one command, returning the text for standard output.
fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    match &cli.command {
        Command::Build { n } => {
            let t = TorusFamily::new(*n).map_err(usage)?;
            Ok((render_quiver(cli.format, &t.quiver(), Some(&t.label_map())), true))
        }
        Command::Check { quiver, sequence: seq } => {
            let loaded = load(quiver)?;
            let steps = sequence(seq, &loaded)?;
            let report = check_sequence(&loaded.quiver, &steps).map_err(usage)?;
            let text = match cli.format {
                Format::Doc => json(&report.to_document()),
                Format::Dot => to_dot(&report.final_quiver, loaded.labels.as_ref()),
                Format::Plain => {
                    let mut s = format!(
                        "length {}\ngreen {}\nmaximal {}\nfinal colors {}\n",
                        steps.len(),
                        report.is_green,
                        report.is_maximal,
                        color_string(&report.final_colors)
                    );
                    if let Some(k) = report.failure_index {
                        s.push_str(&format!(
                            "failed at step {k} ({} is red)\n",
                            name(loaded.labels.as_ref(), steps[k - 1])
                        ));
                    }
                    if let Some(p) = coframe_permutation(&report) {
                        s.push_str(&format!("frozen permutation {p:?}\n"));
                    }
                    s
                }
            };
            Ok((text, report.is_maximal))
        }
        Command::Search {
            quiver,
            max_len,
            budget,
            mode,
        } => {
            let loaded = load(quiver)?;
            let (report, complete) = match search_mgs(&loaded.quiver, *max_len, *budget, (*mode).into()) {
                Ok(r) => {
                    let done = r.exhausted;
                    (r, done)
                }
                Err(EngineError::BudgetExceeded { partial, .. }) => (*partial, false),
                Err(e) => return Err(usage(e)),
            };
            let doc = report.to_document(loaded.labels.as_ref());
            let text = match cli.format {
                Format::Plain => {
                    let mut s = format!(
                        "{} sequences, {} states, exhausted {}\n",
                        doc.sequences.len(),
                        doc.states_explored,
                        doc.exhausted
                    );
                    for seq in &doc.sequences {
                        s.push_str(&seq.join(" "));
                        s.push('\n');
                    }
                    s
                }
                _ => json(&doc),
            };
            Ok((text, complete && !report.sequences.is_empty()))
        }
        Command::Trace {
            quiver,
            sequence: seq,
            snapshots,
            unrestricted,
        } => {
            let loaded = load(quiver)?;
            let steps = sequence(seq, &loaded)?;
            let mode = if *unrestricted {
                Mode::Unrestricted
            } else {
                Mode::StrictGreen
            };
            let trace = match apply_sequence(&loaded.quiver, &steps, mode, *snapshots) {
                Ok(t) => t,
                Err(e @ EngineError::NotGreenAtStep { .. }) => return Err(Failure::Negative(e.to_string())),
                Err(e) => return Err(usage(e)),
            };
            let doc = trace.to_document(loaded.labels.as_ref());
            let text = match cli.format {
                Format::Plain => doc
                    .steps
                    .iter()
                    .map(|s| {
                        format!(
                            "{:>4} {:<8} {}\n",
                            s.index,
                            s.label.clone().unwrap_or_else(|| s.vertex.to_string()),
                            s.colors
                        )
                    })
                    .collect(),
                _ => json(&doc),
            };
            Ok((text, true))
        }
        Command::Mutate {
            quiver,
            vertex,
            unrestricted,
        } => {
            let loaded = load(quiver)?;
            let v = resolve_vertex(vertex, loaded.labels.as_ref()).map_err(usage)?;
            if v >= loaded.quiver.n_mutable() {
                return Err(usage(format!("vertex {vertex} is not mutable")));
            }
            if !*unrestricted {
                let color = loaded.quiver.vertex_color(v).map_err(usage)?;
                if !color.is_green() {
                    return Err(Failure::Negative(format!("vertex {vertex} is {color}")));
                }
            }
            let q = loaded.quiver.mutate(v).map_err(usage)?;
            Ok((render_quiver(cli.format, &q, loaded.labels.as_ref()), true))
        }
        Command::Serve { .. } => unreachable!("handled in main"),
    }
}

fn serve(host: IpAddr, port: u16, static_dir: Option<PathBuf>, idle_secs: u64) -> Result<(), Failure> {
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| Failure::Internal(e.to_string()))?;
    let app = server::AppState::new(Duration::from_secs(idle_secs), static_dir);
    runtime
        .block_on(server::serve(SocketAddr::new(host, port), app, |addr| {
            println!("listening on http://{addr}");
            let _ = std::io::stdout().flush();
        }))
        .map_err(|e| Failure::Internal(format!("cannot serve on {host}:{port}: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Serve {
        port,
        host,
        static_dir,
        idle_secs,
    } = &cli.command
    {
        return match serve(*host, *port, static_dir.clone(), *idle_secs) {
            Ok(()) => ExitCode::SUCCESS,
            Err(f) => finish_err(f),
        };
    }
    match run(&cli) {
        Ok((text, positive)) => {
            if let Err(e) = emit(&cli, &text) {
                return finish_err(e);
            }
            if positive {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => finish_err(f),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Internal(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn finish_err(f: Failure) -> ExitCode {
    let msg = match &f {
        Failure::Negative(m) | Failure::Usage(m) | Failure::Internal(m) => m,
    };
    eprintln!("mgs: {msg}");
    ExitCode::from(f.code())
}
