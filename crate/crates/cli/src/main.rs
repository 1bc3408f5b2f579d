//! `slim`: encode graphs into succinct archives and query them.
//!
//! Every report is line oriented `key=value`. Any failure prints a single
//! `error=...` line on standard error and exits with status 1.

mod bench;
mod query;
mod verify;

use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use slim_core::archive::{self, Archive, EncodeOptions, Section};
use slim_core::corpus::{self, Kind};
use slim_core::graph::Graph;
use slim_core::query::QueryEngine;
use slim_core::text;

/// A failure with its one-line reason.
#[derive(Debug)]
pub struct Fail(pub String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

pub type Res<T> = Result<T, Fail>;

#[derive(Parser)]
#[command(name = "slim", version, about = "Succinct graph archives with constant-time queries")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Fault {
    /// Drop one arc of the director before checking it.
    DropArc,
}

/// Where a graph comes from: a file, or a seeded generator.
#[derive(Args, Clone, Debug)]
pub struct Source {
    /// Graph file in the text format.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Generator used when no file is given: tree, grid, maximal-planar or degenerate-<k>.
    #[arg(long)]
    kind: Option<String>,
    #[arg(long, default_value_t = 1024)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random colors from a palette of this size on generated graphs; 0 for none.
    #[arg(long, default_value_t = 0)]
    colors: u32,
}

impl Source {
    fn load(&self) -> Res<Graph> {
        match (&self.input, &self.kind) {
            (Some(path), None) => read_graph(path),
            (None, Some(kind)) => generate(kind, self.n, self.seed, self.colors),
            (Some(_), Some(_)) => Err(Fail("give either --in or --kind, not both".into())),
            (None, None) => Err(Fail("no input: give --in FILE or --kind KIND".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph in the text format.
    Generate {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Encode a graph into an archive and print its bit counts.
    Encode {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: PathBuf,
        /// Query sections, e.g. `deg,adj,nr3`; defaults to deg, adj and nr<t>.
        #[arg(long)]
        sections: Option<String>,
        /// Radius of the default near section.
        #[arg(long, default_value_t = 3)]
        t: u32,
    },
    /// Decode an archive back to the text format.
    Decode {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Answer `deg u`, `color u`, `adj u v`, `nbrs u` or `near u v t` on input ids.
    Query {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Read one query per line from standard input.
        #[arg(long)]
        batch: bool,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        query: Vec<String>,
    },
    /// Run the round-trip, partition, director and query validators.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 3)]
        t: u32,
    },
    /// Report the star-partition conditions and the partition validators.
    VerifyPartition {
        #[command(flatten)]
        source: Source,
    },
    /// Report the director cap, directive coverage per distance and the enhancement audit.
    VerifyDirector {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 3)]
        t: u32,
        /// Corrupt the director on purpose to exercise the checks.
        #[arg(long, value_enum)]
        inject: Option<Fault>,
    },
    /// Size, encode/decode time and query-time tables over growing n.
    Bench {
        #[arg(long, default_value = "tree")]
        kind: String,
        /// Largest size; the table also covers n/64, n/16 and n/4.
        #[arg(long, default_value_t = 1 << 16)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        t: u32,
        /// Random probes per query kind and size.
        #[arg(long, default_value_t = 10_000)]
        queries: usize,
    },
}

fn read_graph(path: &Path) -> Res<Graph> {
    let s = fs::read_to_string(path).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
    text::parse(&s).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

pub fn generate(kind: &str, n: usize, seed: u64, colors: u32) -> Res<Graph> {
    let k = Kind::parse(kind).ok_or_else(|| Fail(format!("unknown kind '{kind}'")))?;
    let g = corpus::generate(k, n, seed);
    Ok(if colors > 0 {
        let n = g.n();
        g.with_colors(Some(corpus::random_colors(n, colors, seed ^ 0x5eed)))
    } else {
        g
    })
}

fn emit(out: Option<&Path>, body: &str) -> Res<()> {
    match out {
        Some(p) => fs::write(p, body).map_err(|e| Fail(format!("{}: {e}", p.display()))),
        None => {
            io::stdout().write_all(body.as_bytes())?;
            Ok(())
        }
    }
}

pub fn read_archive(path: &Path) -> Res<Archive> {
    let bytes = fs::read(path).map_err(|e| Fail(format!("{}: {e}", path.display())))?;
    Archive::from_bytes(&bytes).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn sections_for(list: Option<&str>, t: u32) -> Res<Vec<Section>> {
    let s = list.map_or_else(|| format!("deg,adj,nr{t}"), str::to_string);
    Section::parse_list(&s).map_err(Fail)
}

/// The one-line encode report.
pub fn report_line(g: &Graph, r: &archive::EncodeReport) -> String {
    let mut line = format!(
        "n={} arcs={} payload_bits={} bits_per_vertex={:.3} chi_bits={} code_bits={}",
        r.n,
        g.arc_count(),
        r.payload_bits,
        r.payload_bits as f64 / r.n.max(1) as f64,
        r.chi_bits,
        r.code_bits
    );
    for (s, bits) in &r.sections {
        line.push_str(&format!(" section_{s}={bits}"));
    }
    line
}

fn run(cmd: Command) -> Res<bool> {
    match cmd {
        Command::Generate { source, out, format: Format::Text } => {
            emit(out.as_deref(), &text::write(&source.load()?))?;
        }
        Command::Encode { source, out, sections, t } => {
            let g = source.load()?;
            let opts = EncodeOptions::with_sections(&sections_for(sections.as_deref(), t)?);
            let (a, report) = archive::encode(&g, &opts);
            fs::write(&out, a.to_bytes()).map_err(|e| Fail(format!("{}: {e}", out.display())))?;
            println!("{}", report_line(&g, &report));
        }
        Command::Decode { input, out, format: Format::Text } => {
            let g = archive::decode(&read_archive(&input)?)?;
            emit(out.as_deref(), &text::write(&g))?;
        }
        Command::Query { input, batch, query } => {
            let a = read_archive(&input)?;
            let engine = QueryEngine::open(&a)?;
            if !batch {
                if query.is_empty() {
                    return Err(Fail("no query given".into()));
                }
                println!("{}", query::answer(&engine, &query.join(" "))?);
                return Ok(true);
            }
            let mut ok = true;
            let stdout = io::stdout();
            let mut w = io::BufWriter::new(stdout.lock());
            for line in io::stdin().lock().lines() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match query::answer(&engine, &line) {
                    Ok(s) => writeln!(w, "{s}")?,
                    Err(Fail(e)) => {
                        ok = false;
                        writeln!(w, "error={}", one_line(&e))?;
                    }
                }
            }
            w.flush()?;
            return Ok(ok);
        }
        Command::Verify { source, t } => return verify::verify(&source.load()?, t, source.seed),
        Command::VerifyPartition { source } => return verify::verify_partition(&source.load()?),
        Command::VerifyDirector { source, t, inject } => {
            return verify::verify_director(&source.load()?, t, matches!(inject, Some(Fault::DropArc)))
        }
        Command::Bench { kind, n, seed, t, queries } => bench::run(&kind, n, seed, t, queries)?,
    }
    Ok(true)
}

fn one_line(s: &str) -> String {
    s.replace(['\n', '\r'], " ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(Fail(e)) => {
            eprintln!("error={}", one_line(&e));
            ExitCode::FAILURE
        }
    }
}
