//! `wseq`: Whitehead sequence invariants of free differential graded
//! tensor algebras over the integers — homology tables, perfectness
//! verdicts, characteristic-pair splitting and quasi-isomorphism-type
//! counts.

mod commands;
mod errors;
mod formats;
mod report;

use std::path::PathBuf;

use clap::{Parser, Subcommand};

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected '<lo>..<hi>', got '{}'", s))?;
    let lo: usize = a.trim().parse().map_err(|_| format!("bad range start '{}'", a))?;
    let hi: usize = b.trim().parse().map_err(|_| format!("bad range end '{}'", b))?;
    if lo > hi {
        return Err(format!("empty range {}..{}", lo, hi));
    }
    Ok((lo, hi))
}

#[derive(Parser)]
#[command(
    name = "wseq",
    version,
    about = "Whitehead sequence invariants of free dg tensor algebras over Z",
    after_help = "Environment:\n  WSEQ_WORD_CAP  raise the per-degree word-basis bound (default 20000)\n\nExit codes: 0 success (including infinite/unknown outcomes), 2 parse or\nvalidation error, 3 resource bound exceeded, 4 internal invariant failure."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Homology of the generator module and of the truncated algebra
    Homology {
        /// A `.dga` document
        file: PathBuf,
        /// Top degree of the table (default: the top generator degree)
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Per-degree sequence data and perfectness verdicts
    Whitehead {
        /// A `.dga` document
        file: PathBuf,
        /// Inclusive degree range, e.g. 2..4
        #[arg(long, value_parser = parse_range)]
        range: (usize, usize),
        #[arg(long)]
        json: bool,
    },
    /// Enumerate and count quasi-isomorphism-type candidates over a
    /// homology table
    Classify {
        /// A `.hgr` homology table
        file: PathBuf,
        /// realized | closed-form | table:<file>
        #[arg(long)]
        provider: String,
        /// Top homology degree staged through
        #[arg(long)]
        max_degree: usize,
        /// naive | orbit
        #[arg(long, default_value = "naive")]
        equivalence: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two algebras have isomorphic sequences
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Inclusive degree range, e.g. 2..4
        #[arg(long, value_parser = parse_range)]
        range: (usize, usize),
        #[arg(long)]
        json: bool,
    },
    /// Split off the perfect differential and its extension classes
    Split {
        /// A `.dga` document
        file: PathBuf,
        /// Inclusive degree range for the printed classes, e.g. 2..4
        #[arg(long, value_parser = parse_range)]
        range: (usize, usize),
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    let out = match &cli.cmd {
        Cmd::Homology { file, max_degree, json } => commands::homology(file, *max_degree, *json),
        Cmd::Whitehead { file, range, json } => commands::whitehead(file, *range, *json),
        Cmd::Classify { file, provider, max_degree, equivalence, json } => {
            commands::classify(file, provider, *max_degree, equivalence, *json)
        }
        Cmd::Compare { a, b, range, json } => commands::compare(a, b, *range, *json),
        Cmd::Split { file, range, json } => commands::split(file, *range, *json),
    };
    match out {
        Ok(s) => {
            // tolerate a closed pipe (`wseq ... | head`)
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = writeln!(stdout, "{}", s) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("error: {}", e);
                    std::process::exit(2);
                }
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(e.exit_code());
        }
    }
}
