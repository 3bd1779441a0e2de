//! `spinecell`: validate, generate, scramble and recognize triangulated 3-manifolds.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use spinecell::spine::{build_initial_spine, collapse_all, CollapseOutcome};
use spinecell::triangulation::{generate, scramble};
use spinecell::{recognize, CensusKind, ChainComplex, PaintState, RecognizeConfig, SimplexId, Strategy, Triangulation};

#[derive(Debug, Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Input { path: String, source: spinecell::Error },
    #[error(transparent)]
    Core(#[from] spinecell::Error),
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// One `key=value` record per line.
    Lines,
    /// Human-oriented summary.
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "spinecell", version, about = "Spine collapsing sphere recognition for triangulated 3-manifolds")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Lines, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a gluing file describes a closed connected 3-manifold.
    Validate {
        /// Gluing file, `-` for standard input.
        file: String,
    },
    /// Integer homology of a triangulation, one line per dimension.
    Homology {
        /// Gluing file, `-` for standard input.
        file: String,
    },
    /// Build the initial spine and collapse it as far as free faces allow.
    Spine {
        /// Gluing file, `-` for standard input.
        file: String,
        /// Tetrahedron the dual spanning tree is grown from.
        #[arg(long, default_value_t = 0)]
        seed_tet: usize,
        /// Spanning tree order: bfs, dfs or star.
        #[arg(long, default_value_t = Strategy::Bfs, value_parser = parse_strategy)]
        strategy: Strategy,
        /// Write the move trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Run the sphere recognizer and print its verdict line.
    Recognize {
        /// Gluing file, `-` for standard input.
        file: String,
        /// Seed tetrahedron of the initial spine.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Spanning tree order: bfs, dfs or star.
        #[arg(long, default_value_t = Strategy::Bfs, value_parser = parse_strategy)]
        strategy: Strategy,
        /// Cap on recorded moves after the initial spine.
        #[arg(long, default_value_t = 1_000_000)]
        max_steps: usize,
        /// Write the move trace here.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Emit a census triangulation: boundary4simplex, minimal-s3 or lens:P,Q.
    Gen {
        #[arg(value_parser = parse_census)]
        kind: CensusKind,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply random Pachner moves to a triangulation.
    Scramble {
        /// Gluing file, `-` for standard input.
        file: String,
        /// Number of moves to attempt.
        #[arg(long)]
        moves: usize,
        /// Random seed.
        #[arg(long)]
        seed: u64,
        /// Output file; standard output when absent.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn parse_strategy(s: &str) -> std::result::Result<Strategy, String> {
    s.parse().map_err(|e: spinecell::Error| e.to_string())
}

fn parse_census(s: &str) -> std::result::Result<CensusKind, String> {
    s.parse().map_err(|e: spinecell::Error| e.to_string())
}

fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        io::stdin().read_to_string(&mut text).map_err(|source| CliError::Read { path: "<stdin>".into(), source })?;
    } else {
        text = fs::read_to_string(path).map_err(|source| CliError::Read { path: path.into(), source })?;
    }
    Ok(text)
}

fn load(path: &str) -> Result<Triangulation> {
    Triangulation::parse(&read_input(path)?).map_err(|source| CliError::Input { path: path.into(), source })
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Write { path: p.display().to_string(), source }),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write { path: "<stdout>".into(), source }),
    }
}

fn spine_line(label: &str, s: &PaintState) -> String {
    format!(
        "{label} triangles={} edges={} vertices={} chi={}\n",
        s.black_triangle_count(),
        s.black_edge_count(),
        s.black_vertex_count(),
        s.chi()
    )
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Validate { file } => {
            let t = load(&file)?;
            let r = t.validate();
            let (v, e, f, n) = r.counts;
            let out = match cli.format {
                Format::Lines => format!(
                    "valid={} tets={n} vertices={v} edges={e} triangles={f} chi={} orientable={}\n",
                    r.passes(),
                    r.chi,
                    r.orientable
                ),
                Format::Text => format!(
                    "{} tetrahedra, {v} vertices, {e} edges, {f} triangles; {}\n",
                    n,
                    if r.passes() { "closed 3-manifold" } else { "not a closed 3-manifold" }
                ),
            };
            emit(None, &out)?;
            for failure in &r.failures {
                eprintln!("{failure}");
            }
            Ok(if r.passes() { 0 } else { 1 })
        }
        Command::Homology { file } => {
            let t = load(&file)?;
            let h = ChainComplex::of_triangulation(&t).homology()?;
            let out = match cli.format {
                Format::Lines => h.to_lines(),
                Format::Text => format!("{h}\n"),
            };
            emit(None, &out)?;
            Ok(0)
        }
        Command::Spine { file, seed_tet, strategy, trace } => {
            let t = load(&file)?;
            t.require_closed_manifold()?;
            let s = build_initial_spine(&t, SimplexId::tet(seed_tet), strategy)?;
            let (end, outcome) = collapse_all(&s);
            let outcome = match outcome {
                CollapseOutcome::Point => "point",
                _ => "stuck",
            };
            let mut out = spine_line("initial", &s);
            out.push_str(&spine_line(&format!("collapsed outcome={outcome}"), &end));
            if cli.format == Format::Text {
                out = format!("strategy {strategy}, seed tetrahedron {seed_tet}\n{out}");
            }
            if let Some(p) = &trace {
                emit(Some(p), &end.trace().to_text())?;
            }
            emit(None, &out)?;
            Ok(0)
        }
        Command::Recognize { file, seed, strategy, max_steps, trace } => {
            let t = load(&file)?;
            let seed_tet = usize::try_from(seed)
                .map_err(|_| spinecell::Error::InvalidParameters(format!("seed tetrahedron {seed} out of range")))?;
            let config = RecognizeConfig { seed_tet, strategy, max_steps, trace_path: trace };
            let out = recognize(&t, &config)?;
            emit(None, &format!("{}\n", out.line()))?;
            Ok(out.verdict.exit_code() as u8)
        }
        Command::Gen { kind, output } => {
            emit(output.as_ref(), &generate(kind)?.serialize())?;
            Ok(0)
        }
        Command::Scramble { file, moves, seed, output } => {
            let t = load(&file)?;
            t.require_closed_manifold()?;
            emit(output.as_ref(), &scramble(&t, moves, seed).serialize())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
