//! `polyzeta` — evaluate and cross-validate S(k), ζ(2k) and S(k,a).
//!
//! Exit codes: 0 success (all verification rows pass), 1 verification
//! failure, 2 invalid arguments or configuration.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use polyzeta::combinatorial::{enumerate_admissible, s_k_closed, tuple_term, volume_delta, zeta_2k_closed};
use polyzeta::exact::PiMultiple;
use polyzeta::report::{run_verification, VerificationReport, VerifyConfig};
use polyzeta::series::{s_2a_closed, s_3a_closed};

#[derive(Parser)]
#[command(name = "polyzeta", version, about = "Multi-route evaluator and cross-validator for S(k), zeta(2k) and S(k,a)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact closed form of S(k) and its decimal expansion
    Closed {
        /// Exponent k ≥ 1
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 15)]
        digits: usize,
    },
    /// Print the exact closed form of zeta(2k) and its decimal expansion
    Zeta {
        /// Half-exponent k ≥ 1 (the argument of zeta is 2k)
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 15)]
        digits: usize,
    },
    /// Evaluate the closed form of S(k,a) for k in {2,3}
    Ska {
        /// Exponent k (2 or 3; no closed form is implemented beyond 3)
        #[arg(long)]
        k: u32,
        /// Step a > 1
        #[arg(long)]
        a: f64,
        #[arg(long, default_value_t = 15)]
        digits: usize,
    },
    /// List the admissible tuples for k with α-vectors and exact terms
    Tuples {
        /// Cycle length k ≥ 2
        #[arg(long)]
        k: u32,
        /// Largest k the listing will accept
        #[arg(long, default_value_t = 16)]
        cap: u32,
    },
    /// Run every route for every quantity and emit the verification report
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest k for the S(k) and volume rows
    #[arg(long = "k-max", default_value_t = 6)]
    k_max: u32,
    /// Steps a for the S(k,a) and density rows (repeatable)
    #[arg(long = "a")]
    a_values: Vec<f64>,
    /// Monte Carlo samples per estimator
    #[arg(long, default_value_t = 1_000_000, value_parser = parse_samples)]
    samples: u64,
    /// Seed for all Monte Carlo rows
    #[arg(long, env = "POLYZETA_SEED", default_value_t = 42)]
    seed: u64,
    /// Base tolerance for deterministic route pairs
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report to a file instead of stdout
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Accepts plain integers and scientific notation like `1e6`.
fn parse_samples(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    let f: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if f.is_finite() && f >= 1.0 && f <= 1e18 && f.fract() == 0.0 {
        Ok(f as u64)
    } else {
        Err(format!("not a whole positive sample count: {s}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Closed { k, digits } => {
            let s = s_k_closed(k)?;
            print_exact(&format!("S({k})"), &s, digits);
            Ok(ExitCode::SUCCESS)
        }
        Command::Zeta { k, digits } => {
            let z = zeta_2k_closed(k)?;
            print_exact(&format!("zeta({})", 2 * k), &z, digits);
            Ok(ExitCode::SUCCESS)
        }
        Command::Ska { k, a, digits } => {
            let v = match k {
                2 => s_2a_closed(a)?,
                3 => s_3a_closed(a)?,
                _ => anyhow::bail!("ska supports k = 2 or 3 only (no closed form beyond 3)"),
            };
            println!("S({k},{a}) = {v:.prec$}", prec = digits.min(17));
            Ok(ExitCode::SUCCESS)
        }
        Command::Tuples { k, cap } => {
            if k < 2 || k > cap {
                anyhow::bail!("tuples requires 2 ≤ k ≤ {cap}");
            }
            print_tuples(k)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let cfg = VerifyConfig {
                k_max: args.k_max,
                a_values: if args.a_values.is_empty() {
                    VerifyConfig::default().a_values
                } else {
                    args.a_values.clone()
                },
                samples: args.samples,
                seed: args.seed,
                tol: args.tol,
            };
            let report = run_verification(&cfg)?;
            let rendered = match args.format {
                Format::Text => render_text(&report),
                Format::Json => serde_json::to_string_pretty(&report)?,
                Format::Csv => render_csv(&report)?,
            };
            match &args.out {
                Some(path) => fs::write(path, rendered.as_bytes())
                    .with_context(|| format!("writing {}", path.display()))?,
                None => println!("{rendered}"),
            }
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn print_exact(name: &str, v: &PiMultiple, digits: usize) {
    println!("{name} = {v}");
    println!("{:width$} = {}", "", v.to_decimal_string(digits), width = name.len());
}

fn print_tuples(k: u32) -> anyhow::Result<()> {
    let mut per_n = Vec::new();
    for n in 1..=k / 2 {
        let mut count = 0u64;
        for t in enumerate_admissible(k, n) {
            let alpha = t.alpha_exponents();
            let term = tuple_term(&alpha);
            println!(
                "({})  α = ({})  term = {}/{}",
                t.entries().iter().map(u32::to_string).collect::<Vec<_>>().join(","),
                alpha.0.iter().map(u8::to_string).collect::<Vec<_>>().join(","),
                term.numer(),
                term.denom(),
            );
            count += 1;
        }
        per_n.push((n, count));
    }
    let vol = volume_delta(k)?;
    let counts = per_n
        .iter()
        .map(|(n, c)| format!("n={n}: {c}"))
        .collect::<Vec<_>>()
        .join(", ");
    println!("counts: {counts}");
    println!("Vol(Delta^{k}) = {}/{}", vol.numer(), vol.denom());
    Ok(())
}

fn render_text(report: &VerificationReport) -> String {
    let mut out = String::new();
    let m = &report.metadata;
    let _ = writeln!(
        out,
        "polyzeta verification  (k_max={}, samples={}, seed={}, tol={:.1e})",
        m.k_max, m.samples, m.seed, m.tol
    );
    let _ = writeln!(out);
    for q in &report.quantities {
        let id = match (q.k, q.a) {
            (Some(k), Some(a)) => format!("{} [k={k}, a={a}]", q.quantity),
            (Some(k), None) => format!("{} [k={k}]", q.quantity),
            (None, Some(a)) => format!("{} [a={a}]", q.quantity),
            (None, None) => q.quantity.clone(),
        };
        let _ = writeln!(
            out,
            "{}  {id}  (max rel discrepancy {:.3e})",
            if q.pass { "PASS" } else { "FAIL" },
            q.max_rel_discrepancy
        );
        for r in &q.routes {
            let _ = writeln!(
                out,
                "      {:<28} {:>22.15e}  ± {:.3e}{}",
                r.route,
                r.value,
                r.uncertainty,
                if r.statistical { "  (statistical)" } else { "" }
            );
        }
        if let Some(note) = &q.note {
            let _ = writeln!(out, "      note: {note}");
        }
    }
    let _ = writeln!(out);
    for note in &m.notes {
        let _ = writeln!(
            out,
            "note [{}] k={}: printed {:.12} vs derived {:.12} (factor {}): {}",
            note.id, note.k, note.printed_value, note.derived_value, note.factor, note.detail
        );
    }
    let pass = report.quantities.iter().filter(|q| q.pass).count();
    let _ = writeln!(out, "\n{pass}/{} quantities pass", report.quantities.len());
    out
}

fn render_csv(report: &VerificationReport) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["quantity", "k", "a", "route", "value", "uncertainty", "pass"])?;
    for q in &report.quantities {
        for r in &q.routes {
            w.write_record([
                q.quantity.as_str(),
                &q.k.map(|k| k.to_string()).unwrap_or_default(),
                &q.a.map(|a| a.to_string()).unwrap_or_default(),
                r.route.as_str(),
                &format!("{:.17e}", r.value),
                &format!("{:.6e}", r.uncertainty),
                &q.pass.to_string(),
            ])?;
        }
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
