use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use gkcodes::codes;
use gkcodes::curve::{CurvePoint, GKCurve};
use gkcodes::rrspace::{self, TwoPointDivisor};
use gkcodes::search::{self, SearchSpec};
use gkcodes::semigroup::{gamma_closed_form, TwoPointSemigroup};
use gkcodes::verify;

/// Two-point AG codes on the Giulietti-Korchmaros maximal curves.
#[derive(Parser)]
#[command(name = "gkcodes", version, about)]
struct Cli {
    /// Worker-thread cap for the parallel sections (1 = fully sequential).
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate the rational points as CSV lines `kind,a,b,c`.
    Points {
        /// Curve parameter (prime power >= 2).
        #[arg(long)]
        n: u64,
        /// Emit a JSON envelope instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// The minimal generating set of H(P0, Pinf) as sorted CSV pairs.
    Gamma {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
    /// Membership grid of H(P0, Pinf) on [0, bound]^2 as 0/1 CSV rows.
    #[command(name = "box", visible_alias = "semigroup-box")]
    BoxGrid {
        #[arg(long)]
        n: u64,
        /// Grid bound; defaults to 2g.
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Dimension of the Riemann-Roch space L(a1*P0 + a2*Pinf).
    Ell {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a1: u64,
        #[arg(long)]
        a2: u64,
        #[arg(long)]
        json: bool,
    },
    /// Build the evaluation code (or its dual) for G = a1*P0 + a2*Pinf.
    Code {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a1: u64,
        #[arg(long)]
        a2: u64,
        /// Build the dual code.
        #[arg(long)]
        dual: bool,
        /// Write the generator matrix: header `q n k`, then k rows.
        #[arg(long)]
        export: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Search for codes whose certified distance beats the designed bound.
    Search {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        deg_min: u64,
        #[arg(long)]
        deg_max: u64,
        /// Also emit shortened records for s = 1..=SHORTEN.
        #[arg(long, default_value_t = 0)]
        shorten: u64,
        /// Write the records as a JSON array to this file.
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        /// Rebuild and re-certify every record (slow for large curves).
        #[arg(long)]
        cross_check: bool,
    },
    /// Run the verification battery for the given curve.
    Verify {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Cmd) -> Result<ExitCode, Box<dyn std::error::Error>> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match cmd {
        Cmd::Points { n, json } => {
            let curve = GKCurve::new(n)?;
            if json {
                let rows: Vec<serde_json::Value> = curve
                    .points()
                    .iter()
                    .map(|p| match p {
                        CurvePoint::Infinity => json!({ "kind": "infinity" }),
                        CurvePoint::Affine { a, b, c } => json!({
                            "kind": "affine",
                            "a": a.encoding(),
                            "b": b.encoding(),
                            "c": c.encoding(),
                        }),
                    })
                    .collect();
                envelope(&mut out, "points", json!({ "n": n }), json!(rows))?;
            } else {
                for p in curve.points() {
                    match p {
                        CurvePoint::Infinity => writeln!(out, "infinity,,,")?,
                        CurvePoint::Affine { a, b, c } => writeln!(
                            out,
                            "affine,{},{},{}",
                            a.encoding(),
                            b.encoding(),
                            c.encoding()
                        )?,
                    }
                }
            }
        }
        Cmd::Gamma { n, json } => {
            let curve = GKCurve::new(n)?;
            let gamma = gamma_closed_form(&curve);
            if json {
                let pairs: Vec<[u64; 2]> = gamma.pairs().iter().map(|&(a, b)| [a, b]).collect();
                envelope(&mut out, "gamma", json!({ "n": n }), json!(pairs))?;
            } else {
                for (a, b) in gamma.pairs() {
                    writeln!(out, "{a},{b}")?;
                }
            }
        }
        Cmd::BoxGrid { n, bound, json } => {
            let curve = GKCurve::new(n)?;
            let b = bound.unwrap_or(2 * curve.genus());
            let tps = TwoPointSemigroup::with_bound(&curve, b)?;
            let rows: Vec<Vec<u8>> = (0..=b)
                .map(|alpha| tps.grid_row(alpha).iter().map(|&m| m as u8).collect())
                .collect();
            if json {
                envelope(&mut out, "box", json!({ "n": n, "bound": b }), json!(rows))?;
            } else {
                for row in rows {
                    let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                    writeln!(out, "{}", line.join(","))?;
                }
            }
        }
        Cmd::Ell { n, a1, a2, json } => {
            let curve = GKCurve::new(n)?;
            let pts = curve.code_points();
            let dim = rrspace::ell(&curve, TwoPointDivisor::new(a1, a2), &pts)?;
            if json {
                envelope(
                    &mut out,
                    "ell",
                    json!({ "n": n, "a1": a1, "a2": a2 }),
                    json!(dim),
                )?;
            } else {
                writeln!(out, "{dim}")?;
            }
        }
        Cmd::Code {
            n,
            a1,
            a2,
            dual,
            export,
            json,
        } => {
            let curve = GKCurve::new(n)?;
            let g_div = TwoPointDivisor::new(a1, a2);
            let code = if dual {
                codes::build_comega(&curve, g_div)?
            } else {
                codes::build_cl(&curve, g_div)?
            };
            if let Some(path) = &export {
                let file = File::create(path)?;
                code.write_export(BufWriter::new(file))?;
            }
            let (len, k, d) = code.params();
            if json {
                envelope(
                    &mut out,
                    "code",
                    json!({ "n": n, "a1": a1, "a2": a2, "dual": dual }),
                    json!({
                        "q": code.field().order(),
                        "n": len,
                        "k": k,
                        "d_bound": d,
                        "exported": export.map(|p| p.display().to_string()),
                    }),
                )?;
            } else {
                writeln!(out, "q={} n={} k={} d>={}", code.field().order(), len, k, d)?;
            }
        }
        Cmd::Search {
            n,
            deg_min,
            deg_max,
            shorten,
            json,
            cross_check,
        } => {
            let curve = GKCurve::new(n)?;
            let tps = TwoPointSemigroup::new(&curve)?;
            let mut spec = SearchSpec::new(&curve, deg_min, deg_max);
            spec.cross_check = cross_check;
            let mut records = search::search_matthews(&curve, &tps, &spec)?;
            if shorten > 0 {
                let derived = search::expand_by_shortening(&records, shorten)?;
                records.extend(derived);
            }
            for r in &records {
                writeln!(
                    out,
                    "[{}, {}, >={}] {:?} a=({},{}) b=({},{}) s={} one-point>={} ",
                    r.n, r.k, r.d_bound, r.kind, r.a1, r.a2, r.b1, r.b2, r.s, r.comparator_d
                )?;
            }
            if let Some(path) = json {
                let file = File::create(path)?;
                serde_json::to_writer_pretty(BufWriter::new(file), &records)?;
            }
        }
        Cmd::Verify { n, json } => {
            let report = verify::run(n);
            if json {
                envelope(
                    &mut out,
                    "verify",
                    json!({ "n": n }),
                    serde_json::to_value(&report)?,
                )?;
            } else {
                for c in &report.checks {
                    writeln!(
                        out,
                        "{} {:<26} expected: {} | actual: {} ({} ms)",
                        if c.pass { "PASS" } else { "FAIL" },
                        c.name,
                        c.expected,
                        c.actual,
                        c.millis
                    )?;
                }
                writeln!(
                    out,
                    "overall: {}",
                    if report.overall { "PASS" } else { "FAIL" }
                )?;
            }
            out.flush()?;
            return Ok(if report.overall {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn envelope<W: Write>(
    out: &mut W,
    command: &str,
    params: serde_json::Value,
    result: serde_json::Value,
) -> io::Result<()> {
    let doc = json!({ "command": command, "params": params, "result": result });
    writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
}
