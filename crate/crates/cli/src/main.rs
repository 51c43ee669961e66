//! `scover`: build, check and minimize s-covers from the command line.
//!
//! Exit status is 0 on success, 1 when a family fails verification and 2 on
//! usage or I/O errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use scover::construct::{asymptotic_cover, grid_construction, near_pencil, projective_plane, recursive_tight};
use scover::io::{parse_document, serialize};
use scover::lemmas::{compute_profile, lemma_bounds, LemmaError};
use scover::model::{bound_of, cap_of, CapMode, CoverFamily};
use scover::solver::{brute_oracle, min_cover_exact, SearchBudget};
use scover::verify::verify_cover;

mod report;

#[derive(Parser)]
#[command(name = "scover", version, about = "Construct, verify and minimize s-covers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a constructed family as a JSON document.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
        /// Write to FILE instead of stdout.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check linearity, coverage and the line-size cap.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "standard")]
        cap: CapMode,
        #[command(flatten)]
        fmt: Format,
    },
    /// Degree and neighbourhood structure of a family.
    Profile {
        file: PathBuf,
        #[command(flatten)]
        fmt: Format,
    },
    /// Evaluate the counting bounds on a verified family.
    Lemmas {
        file: PathBuf,
        #[command(flatten)]
        fmt: Format,
    },
    /// Exact minimum number of lines.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        /// Maximum line size; defaults to floor((n-1)/(s-1)).
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long, default_value_t = 10_000_000)]
        max_nodes: u64,
        #[arg(long, default_value_t = 300.0)]
        max_seconds: f64,
        /// Use the brute-force oracle instead (n <= 8).
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        fmt: Format,
    },
    /// Print the lower bound (n-1)/(s-1)+s-1 and the cap floor((n-1)/(s-1)).
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
}

#[derive(Subcommand)]
enum ConstructKind {
    /// t x (s-1) grid plus an apex joined to every row.
    Grid {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        s: usize,
    },
    /// Near pencil on n points.
    NearPencil {
        #[arg(long)]
        n: usize,
    },
    /// Projective plane of prime order q.
    Plane {
        #[arg(long)]
        q: u64,
    },
    /// Tight family for (s-1) | (n-1).
    Tight {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
    /// Blocks plus a projective plane, for large n.
    Asymptotic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
    },
}

#[derive(Args, Clone, Copy)]
struct Format {
    /// Human-readable table instead of JSON.
    #[arg(long)]
    pretty: bool,
}

enum Outcome {
    Ok,
    Failed,
}

fn read_family(path: &Path) -> Result<CoverFamily> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    let (f, _) = parse_document(&bytes).with_context(|| format!("parsing {}", path.display()))?;
    Ok(f)
}

fn emit_json<T: serde::Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn construct(kind: &ConstructKind) -> Result<(CoverFamily, BTreeMap<String, String>)> {
    let mut meta = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        meta.insert(k.to_string(), v);
    };
    let f = match *kind {
        ConstructKind::Grid { t, s } => {
            put("construction", "grid".into());
            put("t", t.to_string());
            put("s", s.to_string());
            grid_construction(t, s)?
        }
        ConstructKind::NearPencil { n } => {
            put("construction", "near-pencil".into());
            put("n", n.to_string());
            near_pencil(n)?
        }
        ConstructKind::Plane { q } => {
            put("construction", "plane".into());
            put("q", q.to_string());
            projective_plane(q)?
        }
        ConstructKind::Tight { n, s } => {
            put("construction", "tight".into());
            put("n", n.to_string());
            put("s", s.to_string());
            recursive_tight(n, s)?
        }
        ConstructKind::Asymptotic { n, s } => {
            put("construction", "asymptotic".into());
            put("n", n.to_string());
            put("s", s.to_string());
            asymptotic_cover(n, s)?
        }
    };
    Ok((f, meta))
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Construct { kind, out } => {
            let (f, meta) = construct(&kind)?;
            let mut bytes = serialize(&f, &meta);
            bytes.push(b'\n');
            match out {
                Some(path) => fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{}", String::from_utf8(bytes)?),
            }
            Ok(Outcome::Ok)
        }
        Command::Verify { file, cap, fmt } => {
            let f = read_family(&file)?;
            let r = verify_cover(&f, cap);
            if fmt.pretty {
                print!("{}", report::verification(&r));
            } else {
                emit_json(&r)?;
            }
            Ok(if r.is_valid() { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Profile { file, fmt } => {
            let f = read_family(&file)?;
            let p = compute_profile(&f)?;
            if fmt.pretty {
                print!("{}", report::profile(&p));
            } else {
                emit_json(&p)?;
            }
            Ok(Outcome::Ok)
        }
        Command::Lemmas { file, fmt } => {
            let f = read_family(&file)?;
            let p = compute_profile(&f)?;
            match lemma_bounds(&f, &p, &[]) {
                Ok(r) => {
                    if fmt.pretty {
                        print!("{}", report::lemmas(&r));
                    } else {
                        emit_json(&r)?;
                    }
                    Ok(Outcome::Ok)
                }
                Err(e @ LemmaError::NotACover { .. }) => {
                    eprintln!("scover: {e}");
                    Ok(Outcome::Failed)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Search { n, s, cap, max_nodes, max_seconds, oracle, fmt } => {
            anyhow::ensure!(s >= 2 && n >= s, "search needs n >= s >= 2");
            let cap = cap.unwrap_or_else(|| cap_of(n, s));
            if oracle {
                let m = brute_oracle(n, s, cap)?;
                if fmt.pretty {
                    println!("oracle minimum for n = {n}, s = {s}, cap = {cap}: {m}");
                } else {
                    emit_json(&serde_json::json!({ "n": n, "s": s, "cap": cap, "m_star": m }))?;
                }
                return Ok(Outcome::Ok);
            }
            let budget = SearchBudget::new(max_nodes, max_seconds)?;
            let r = min_cover_exact(n, s, cap, &budget)?;
            if fmt.pretty {
                print!("{}", report::search(&r, cap));
            } else {
                emit_json(&r)?;
            }
            Ok(Outcome::Ok)
        }
        Command::Bound { n, s } => {
            anyhow::ensure!(s >= 2 && n >= 2, "bound needs n >= 2 and s >= 2");
            let b = bound_of(n, s);
            emit_json(&serde_json::json!({
                "n": n,
                "s": s,
                "cap": cap_of(n, s),
                "bound": { "num": b.numer(), "den": b.denom() },
            }))?;
            Ok(Outcome::Ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("scover: {e:#}");
            ExitCode::from(2)
        }
    }
}
