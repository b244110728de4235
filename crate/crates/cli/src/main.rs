//! `overrot` — analyze cyclic patterns of interval maps: over-rotation
//! data, forced over-rotation intervals, kneading sequences, and the
//! construction of unimodal very badly ordered cycles.
//!
//! Exit codes: 0 on success, 2 on usage or domain errors, 3 on an internal
//! consistency failure (two independent computation routes disagreeing —
//! a bug surface, never a user error).

mod report;

use clap::{Parser, Subcommand};
use overrot::sharkovsky::{sharkovsky_compare, sharkovsky_tail, SharkovskyIndex};
use overrot::{
    build_markov, forced_cycles_up_to, gamma, rotation_kneading, strongest_kneading, vbo_build,
    Error, Pattern,
};
use std::cmp::Ordering;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "overrot", version, about = "Over-rotation analysis of cyclic patterns of interval maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for a pattern ("2 4 6 5 3 1" or "(1 2 4 5 3 6)")
    Analyze {
        pattern: String,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
        /// Emit the report as aligned text (the default)
        #[arg(long, conflicts_with = "json")]
        text: bool,
    },
    /// The unimodal over-twist pattern of over-rotation number P/Q
    Gamma { p: usize, q: usize },
    /// Unimodal very badly ordered cycle of over-rotation pair (K*P, K*Q)
    Vbo { k: usize, p: usize, q: usize },
    /// Weakest (default) or strongest kneading sequence for [P/Q, 1/2]
    Knead {
        p: usize,
        q: usize,
        /// Produce the strongest sequence instead of the weakest
        #[arg(long)]
        strongest: bool,
        /// Print the first N symbols instead of the canonical form
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Patterns of all cycles forced by a pattern, up to a period bound
    Forced {
        pattern: String,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
    },
    /// Compare two periods in the Sharkovsky ordering
    Sharkovsky { m: u64, n: u64 },
    /// Covering graph of basic intervals; optionally write DOT
    Markov {
        pattern: String,
        /// Write the graph in DOT format to this path ("-" for stdout)
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) | Error::NoCycle => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> overrot::Result<()> {
    match command {
        Command::Analyze { pattern, json, .. } => {
            let p = Pattern::parse(&pattern)?;
            let report = report::analyze(&p)?;
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
        }
        Command::Gamma { p, q } => {
            println!("{}", gamma(p, q)?.one_line());
        }
        Command::Vbo { k, p, q } => {
            println!("{}", vbo_build(k, p, q)?.one_line());
        }
        Command::Knead {
            p,
            q,
            strongest,
            terms,
        } => {
            let seq = if strongest {
                strongest_kneading(p, q)?
            } else {
                rotation_kneading(p, q)?
            };
            match terms {
                Some(n) => println!("{}", seq.prefix(n)),
                None => println!("{seq}"),
            }
        }
        Command::Forced {
            pattern,
            max_period,
        } => {
            if max_period < 1 {
                return Err(Error::BadParameters("max period must be at least 1".into()));
            }
            let p = Pattern::parse(&pattern)?;
            for fc in forced_cycles_up_to(&p, max_period)? {
                let mut orbit = fc.witness.clone();
                orbit.sort();
                let orbit = orbit
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                println!(
                    "{}  orp {}  rho {}  orbit {{{orbit}}}{}",
                    fc.pattern.one_line(),
                    fc.orp,
                    fc.orp.rho(),
                    if fc.degenerate { "  (degenerate segment)" } else { "" }
                );
            }
        }
        Command::Sharkovsky { m, n } => {
            if m < 1 || n < 1 {
                return Err(Error::BadParameters("periods must be positive".into()));
            }
            let word = match sharkovsky_compare(m, n) {
                Ordering::Greater => "sharper than",
                Ordering::Equal => "equal to",
                Ordering::Less => "duller than",
            };
            println!("{m} {word} {n}");
            // A short view of the tail below the sharper of the two.
            let k = if sharkovsky_compare(m, n) == Ordering::Less { n } else { m };
            let tail: Vec<String> = sharkovsky_tail(SharkovskyIndex::Period(k), k.max(16))
                .take(8)
                .map(|v| v.to_string())
                .collect();
            println!("tail of {k}: {} ...", tail.join(" > "));
        }
        Command::Markov { pattern, dot } => {
            let p = Pattern::parse(&pattern)?;
            let g = build_markov(&p)?;
            match dot {
                Some(path) if path.as_os_str() == "-" => print!("{}", g.to_dot()),
                Some(path) => {
                    std::fs::write(&path, g.to_dot()).map_err(|e| {
                        Error::BadParameters(format!("cannot write {}: {e}", path.display()))
                    })?;
                }
                None => {
                    for (i, nd) in g.nodes().iter().enumerate() {
                        let side = match nd.side {
                            overrot::Side::Left => "L",
                            overrot::Side::Right => "R",
                        };
                        println!("node n{i}: [{},{}] {side}", nd.lo, nd.hi);
                    }
                    for &(u, v) in g.edges() {
                        println!("edge n{u} -> n{v} w={}", g.weight(u, v));
                    }
                }
            }
        }
    }
    Ok(())
}
