use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use bethe_lab::aba::{bethe_vector, renormalised_vector, StateVector};
use bethe_lab::asm::{asm_count, dwbc_partition_brute, gen_poly};
use bethe_lab::detform::ik_determinant;
use bethe_lab::exec::Exec;
use bethe_lab::field::rat::{parse_rat, rat_to_string};
use bethe_lab::field::{Rat, Ring, Scalar};
use bethe_lab::params::{parse_q, Deformation, ModelParams, Sampler};
use bethe_lab::spinchain::{singlet, singlet_norm};
use bethe_lab::verify::{all_pass, run_suite, CheckRecord, Suite, VerifyConfig};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

const DEFAULT_MAX_N: usize = 6;

#[derive(Parser, Debug)]
#[command(name = "bethe-lab", version, about = "Exact checks for the twisted nineteen-vertex model")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Number of sites
    #[arg(long, global = true, default_value_t = 3)]
    n: usize,
    /// Deformation parameter as p/r
    #[arg(long, global = true)]
    q: Option<String>,
    /// Comma-separated inhomogeneities p1/r1,p2/r2,...
    #[arg(long, global = true, value_delimiter = ',')]
    w: Option<Vec<String>>,
    /// Seed for random rational draws
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run an invariant suite
    Verify {
        #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
        suite: String,
    },
    /// Homogeneous zero-energy state, components as polynomials in x
    Singlet {
        /// Write the components to this file (same as --out)
        #[arg(long)]
        emit: Option<String>,
    },
    /// Components of the renormalised eigenvector
    Vector {
        /// Emit the unnormalised Bethe vector instead
        #[arg(long)]
        bethe: bool,
    },
    /// Izergin-Korepin determinant against the lattice sum
    Ikdet {
        /// Comma-separated row parameters, drawn from the seed when absent
        #[arg(long, value_delimiter = ',')]
        zeta: Option<Vec<String>>,
    },
    /// Alternating sign matrix enumeration
    Asm {
        #[arg(value_enum)]
        what: AsmWhat,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AsmWhat {
    Count,
    Genpoly,
}

struct Report {
    json: Value,
    csv: Vec<Vec<String>>,
    text: String,
    pass: bool,
}

fn max_n() -> Result<usize, String> {
    match std::env::var("BETHE_LAB_MAX_N") {
        Ok(v) => v
            .parse()
            .map_err(|_| format!("BETHE_LAB_MAX_N must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_N),
    }
}

fn parse_rats(items: &[String]) -> Result<Vec<Rat>, String> {
    items
        .iter()
        .map(|s| parse_rat(s).map_err(|e| format!("bad rational {s:?}: {e}")))
        .collect()
}

fn deformation(cli: &Cli) -> Result<Option<Deformation>, String> {
    cli.q
        .as_deref()
        .map(|q| parse_q(q).map_err(|e| e.to_string()))
        .transpose()
}

fn config(cli: &Cli) -> Result<VerifyConfig, String> {
    let cap = max_n()?;
    if cli.n > cap {
        return Err(format!("n = {} exceeds the size cap {cap} (BETHE_LAB_MAX_N)", cli.n));
    }
    let w = cli.w.as_deref().map(parse_rats).transpose()?;
    VerifyConfig::new(cli.n, deformation(cli)?, w, cli.seed).map_err(|e| e.to_string())
}

fn components(v: &StateVector<impl Ring + fmt::Display + Serialize>) -> (Vec<Value>, Vec<Vec<String>>) {
    let mut json_rows = Vec::new();
    let mut csv_rows = vec![vec!["state".to_string(), "value".to_string()]];
    for (s, c) in v.iter() {
        json_rows.push(json!({"state": s.to_string(), "value": c}));
        csv_rows.push(vec![s.to_string(), c.to_string()]);
    }
    (json_rows, csv_rows)
}

fn text_of(rows: &[Vec<String>]) -> String {
    rows.iter().map(|r| r.join("  ")).collect::<Vec<_>>().join("\n") + "\n"
}

fn verify(suite: Suite, cfg: &VerifyConfig) -> Report {
    let records = run_suite(suite, cfg, Exec::default());
    let pass = all_pass(&records);
    let mut csv = vec![vec!["check", "params", "pass", "elapsed_ms"]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>()];
    let mut text = String::new();
    for r in &records {
        csv.push(vec![
            r.check.clone(),
            r.params.to_string(),
            r.pass.to_string(),
            format!("{:.3}", r.elapsed_ms),
        ]);
        text.push_str(&text_line(r));
    }
    text.push_str(&format!(
        "{} of {} checks passed\n",
        records.iter().filter(|r| r.pass).count(),
        records.len()
    ));
    let json = json!({
        "suite": suite,
        "seed": cfg.seed,
        "pass": pass,
        "records": records,
    });
    Report { json, csv, text, pass }
}

fn text_line(r: &CheckRecord) -> String {
    let tag = if r.pass { "PASS" } else { "FAIL" };
    match &r.error {
        Some(e) => format!("{tag} {} ({e})\n", r.check),
        None => format!("{tag} {}\n", r.check),
    }
}

fn model_json(p: &ModelParams) -> Value {
    let w: Vec<String> = p
        .w()
        .iter()
        .map(|x| x.to_rat().map_or_else(|| x.to_string(), |r| rat_to_string(&r)))
        .collect();
    json!({"n": p.n(), "q": rat_to_string(p.def().q()), "w": w, "twist": p.twist()})
}

fn vector(cfg: &VerifyConfig, bethe: bool) -> Result<Report, String> {
    let p = cfg.params();
    let v = if bethe { bethe_vector(&p) } else { renormalised_vector(&p) }.map_err(|e| e.to_string())?;
    let (rows, csv) = components(&v);
    let mut json = model_json(&p);
    json["components"] = Value::Array(rows);
    Ok(Report { json, text: text_of(&csv), csv, pass: true })
}

fn singlet_report(n: usize) -> Result<Report, String> {
    let phi = singlet(n).map_err(|e| e.to_string())?;
    let (rows, csv) = components(&phi);
    let norm = singlet_norm(&phi);
    let json = json!({"n": n, "norm": norm, "components": rows});
    let text = format!("{}norm  {norm}\n", text_of(&csv));
    Ok(Report { json, csv, text, pass: true })
}

fn ikdet(cli: &Cli, cfg: &VerifyConfig, zeta: Option<&[String]>) -> Result<Report, String> {
    let def = &cfg.def;
    let zeta: Vec<Rat> = match zeta {
        Some(z) => parse_rats(z)?,
        None => Sampler::new(cli.seed.wrapping_add(1)).generic(def, cfg.n, &cfg.w),
    };
    if zeta.len() != cfg.n {
        return Err(format!("expected {} zeta values, got {}", cfg.n, zeta.len()));
    }
    let zs: Vec<Scalar> = zeta.iter().cloned().map(Scalar::rational).collect();
    let ws: Vec<Scalar> = cfg.w.iter().cloned().map(Scalar::rational).collect();
    let ik = ik_determinant(&zs, &ws, def).map_err(|e| e.to_string())?;
    let direct = dwbc_partition_brute(&zs, &ws, def, Exec::default()).map_err(|e| e.to_string())?;
    let matched = ik == direct;
    let fmt = |s: &Scalar| s.to_rat().map_or_else(|| s.to_string(), |r| rat_to_string(&r));
    let json = json!({
        "n": cfg.n,
        "q": rat_to_string(def.q()),
        "w": cfg.w.iter().map(rat_to_string).collect::<Vec<_>>(),
        "zeta": zeta.iter().map(rat_to_string).collect::<Vec<_>>(),
        "Z_IK": ik,
        "Z_direct": direct,
        "match": matched,
    });
    let csv = vec![
        vec!["key".into(), "value".into()],
        vec!["Z_IK".into(), fmt(&ik)],
        vec!["Z_direct".into(), fmt(&direct)],
        vec!["match".into(), matched.to_string()],
    ];
    Ok(Report { json, text: text_of(&csv[1..]), csv, pass: matched })
}

fn asm_report(n: usize, what: AsmWhat) -> Result<Report, String> {
    let cap = max_n()?;
    if n == 0 || n > cap {
        return Err(format!("n must lie in 1..={cap}"));
    }
    match what {
        AsmWhat::Count => {
            let c = asm_count(n).map_err(|e| e.to_string())?;
            let csv = vec![vec!["n".into(), "count".into()], vec![n.to_string(), c.to_string()]];
            Ok(Report { json: json!({"n": n, "count": c}), text: format!("{c}\n"), csv, pass: true })
        }
        AsmWhat::Genpoly => {
            let g = gen_poly(n).map_err(|e| e.to_string())?;
            let s = g.to_string();
            let csv = vec![vec!["n".into(), "gen_poly".into()], vec![n.to_string(), s.clone()]];
            let json = json!({"n": n, "coeffs": g.coeffs, "gen_poly": s});
            Ok(Report { json, text: format!("{s}\n"), csv, pass: true })
        }
    }
}

fn render(report: &Report, format: Format) -> Result<String, String> {
    Ok(match format {
        Format::Json => {
            serde_json::to_string_pretty(&report.json).map_err(|e| e.to_string())? + "\n"
        }
        Format::Text => report.text.clone(),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &report.csv {
                w.write_record(row).map_err(|e| e.to_string())?;
            }
            String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?
        }
    })
}

fn run(cli: &Cli) -> Result<Report, String> {
    match &cli.command {
        Command::Verify { suite } => {
            let suite: Suite = suite.parse()?;
            Ok(verify(suite, &config(cli)?))
        }
        Command::Singlet { .. } => {
            let cap = max_n()?;
            if cli.n == 0 || cli.n > cap {
                return Err(format!("n must lie in 1..={cap}"));
            }
            singlet_report(cli.n)
        }
        Command::Vector { bethe } => vector(&config(cli)?, *bethe),
        Command::Ikdet { zeta } => ikdet(cli, &config(cli)?, zeta.as_deref()),
        Command::Asm { what } => asm_report(cli.n, *what),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let body = match render(&report, cli.format) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let target = match &cli.command {
        Command::Singlet { emit: Some(path) } => Some(path),
        _ => cli.out.as_ref(),
    };
    let written = match target {
        Some(path) => fs::write(path, body),
        None => io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
