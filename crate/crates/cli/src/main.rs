//! Command-line front end: class harvesting, candidate enumeration, the
//! per-candidate tools, and end-to-end reproduction of the nonexistence
//! cases.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use equiangular::angles::{angle_table, compatible};
use equiangular::classes::{collect_classes, HarvestOptions};
use equiangular::enumerate::{candidate_charpolys, CandidateOptions};
use equiangular::feasibility::{
    build_system, enumerate_configurations, find_certificate, find_warranty, solve_rational, verify_certificate,
    warranties, Certificate, CertificateKind, Feasibility,
};
use equiangular::interlace::{spectrum_of, SpectrumData};
use equiangular::pipeline::{analyse, reproduce, Case, Context, CLASS_EXPONENT};
use equiangular::{FactoredPoly, IntPoly};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "equiangular", version, about = "Exact nonexistence checks for Seidel matrices of equiangular line systems")]
struct Cli {
    /// Directory holding harvested congruence class sets.
    #[arg(long, global = true, default_value = "class-cache")]
    cache_dir: PathBuf,
    /// Seed for sampling random Seidel matrices.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Cap on random matrices sampled per class set.
    #[arg(long, global = true, default_value_t = 2_000_000)]
    max_samples: u64,
    /// Use class sets that have not reached their size bound.
    #[arg(long, global = true)]
    allow_incomplete_classes: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Harvest the congruence classes of characteristic polynomials of
    /// Seidel matrices of odd order n modulo 2^e.
    Classes {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = CLASS_EXPONENT)]
        e: u32,
    },
    /// Candidate characteristic polynomials for n lines in R^d.
    Candidates {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Smallest eigenvalue.
        #[arg(long, default_value_t = -5, allow_hyphen_values = true)]
        lambda0: i64,
    },
    /// Interlacing family of a characteristic polynomial.
    Interlace {
        /// Factored polynomial, or a file holding one (text or JSON).
        #[arg(long)]
        charpoly: String,
    },
    /// Certificate search, or verification of a certificate table.
    Certify {
        #[arg(long, required_unless_present = "verify")]
        charpoly: Option<String>,
        /// JSON array of {charpoly, certificate, warranted?, subfamily?} rows.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// Integer interlacing configurations.
    Configs {
        #[arg(long)]
        charpoly: String,
        /// Family indices (1-based) to use; all by default.
        #[arg(long, value_delimiter = ',')]
        subfamily: Vec<usize>,
        /// Family indices (1-based) that must occur.
        #[arg(long, value_delimiter = ',')]
        require: Vec<usize>,
        /// Family indices (1-based) that must not occur.
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<usize>,
    },
    /// Compatibility of two family members (1-based indices).
    Compat {
        #[arg(long)]
        charpoly: String,
        #[arg(long)]
        f: usize,
        #[arg(long)]
        g: usize,
    },
    /// Squared angles of every family member.
    Angles {
        #[arg(long)]
        charpoly: String,
    },
    /// Run the full elimination pipeline: a named case or one polynomial.
    Reproduce {
        #[arg(value_parser = parse_case, required_unless_present = "charpoly")]
        case: Option<Case>,
        #[arg(long, conflicts_with = "case")]
        charpoly: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Markdown,
    Csv,
}

fn parse_case(s: &str) -> std::result::Result<Case, String> {
    s.parse().map_err(|e: equiangular::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(1)
        }
    }
}

impl Cli {
    fn harvest(&self) -> HarvestOptions {
        HarvestOptions {
            seed: self.seed,
            max_samples: self.max_samples,
            jobs: self.jobs.max(1),
            cache_dir: Some(self.cache_dir.clone()),
        }
    }

    fn context(&self) -> Context {
        let mut ctx = Context::new(self.harvest());
        ctx.allow_incomplete = self.allow_incomplete_classes;
        ctx
    }
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("JSON values serialise"));
}

/// A factored polynomial given inline or in a file (plain text or JSON).
fn read_charpoly(arg: &str) -> Result<FactoredPoly> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    } else {
        arg.to_string()
    };
    let trimmed = text.trim();
    if trimmed.starts_with('{') || trimmed.starts_with('"') {
        let v: Value = serde_json::from_str(trimmed)?;
        return match v {
            Value::String(s) => Ok(s.parse()?),
            Value::Object(ref o) if o.contains_key("charpoly") => read_charpoly(
                o["charpoly"].as_str().context("charpoly field must be a string")?,
            ),
            other => Ok(serde_json::from_value(other)?),
        };
    }
    Ok(trimmed.parse()?)
}

struct Loaded {
    spectrum: SpectrumData,
    family: Vec<IntPoly>,
}

fn load(ctx: &Context, arg: &str) -> Result<Loaded> {
    let chi = read_charpoly(arg)?;
    let spectrum = spectrum_of(&chi)?;
    let family = ctx.family(&spectrum)?;
    Ok(Loaded { spectrum, family })
}

fn member(l: &Loaded, i: usize) -> Value {
    json!({
        "index": i + 1,
        "quotient": l.family[i].to_string(),
        "charpoly": l.spectrum.submatrix_charpoly(&l.family[i]).map(|p| p.to_string()).unwrap_or_default(),
    })
}

fn index(l: &Loaded, i: usize) -> Result<usize> {
    if i == 0 || i > l.family.len() {
        bail!("member index {} out of range 1..={}", i, l.family.len());
    }
    Ok(i - 1)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let ctx = cli.context();
    match &cli.command {
        Command::Classes { n, e } => {
            let start = Instant::now();
            let set = collect_classes(*n, *e, &cli.harvest())?;
            let mut v = report::class_set(&set);
            v["path"] = json!(equiangular::classes::CongruenceClassSet::cache_path(&cli.cache_dir, *n, *e));
            v["elapsed_seconds"] = json!(start.elapsed().as_secs_f64());
            print(&v);
            if !set.complete {
                eprintln!("warning: class set incomplete after {} samples", set.samples);
                return Ok(ExitCode::from(2));
            }
        }
        Command::Candidates { n, d, lambda0 } => {
            let start = Instant::now();
            let set = ctx.classes(*n)?;
            let opts = CandidateOptions {
                allow_incomplete: cli.allow_incomplete_classes,
                ..CandidateOptions::default()
            };
            let cands = candidate_charpolys(*n, *d, *lambda0, &set, &opts)?;
            print(&json!({
                "candidates": cands.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "count": cands.len(),
                "provenance": {
                    "n": n, "d": d, "lambda0": lambda0,
                    "class_set": report::class_set(&set),
                    "elapsed_seconds": start.elapsed().as_secs_f64(),
                },
            }));
        }
        Command::Interlace { charpoly } => {
            let l = load(&ctx, charpoly)?;
            print(&json!({
                "count": l.family.len(),
                "family": (0..l.family.len()).map(|i| member(&l, i)).collect::<Vec<_>>(),
            }));
        }
        Command::Certify { charpoly, verify } => {
            if let Some(path) = verify {
                return verify_table(&ctx, path);
            }
            let l = load(&ctx, charpoly.as_deref().expect("clap enforces one of the two"))?;
            let sys = build_system(&l.spectrum, &l.family)?;
            let v = match find_certificate(&sys) {
                Feasibility::Infeasible(c) => json!({
                    "family_size": l.family.len(),
                    "feasible": false,
                    "certificate": report::certificate(&c),
                }),
                Feasibility::Feasible(x) => json!({
                    "family_size": l.family.len(),
                    "feasible": true,
                    "solution": report::rationals(&x),
                    "warranted": warranties(&sys).iter().map(|c| json!({
                        "member": member(&l, match c.kind { CertificateKind::Warranty(r) => r, _ => 0 }),
                        "certificate": report::certificate(c),
                    })).collect::<Vec<_>>(),
                }),
            };
            print(&v);
        }
        Command::Configs {
            charpoly,
            subfamily,
            require,
            forbid,
        } => {
            let l = load(&ctx, charpoly)?;
            let sub: Vec<usize> = if subfamily.is_empty() {
                (0..l.family.len()).collect()
            } else {
                subfamily.iter().map(|&i| index(&l, i)).collect::<Result<_>>()?
            };
            let position = |i: usize| -> Result<usize> {
                let i = index(&l, i)?;
                sub.iter().position(|&j| j == i).context("index not in the subfamily")
            };
            let req = require.iter().map(|&i| position(i)).collect::<Result<Vec<_>>>()?;
            let forb = forbid.iter().map(|&i| position(i)).collect::<Result<Vec<_>>>()?;
            let sys = build_system(&l.spectrum, &l.family)?.restrict(&sub);
            let configs = enumerate_configurations(&sys, &forb, &req)?;
            print(&json!({
                "subfamily": sub.iter().map(|&i| member(&l, i)).collect::<Vec<_>>(),
                "rational_solution": report::rational_solution(&solve_rational(&sys)),
                "configurations": configs.iter().map(|c| report::ints(c)).collect::<Vec<_>>(),
            }));
        }
        Command::Compat { charpoly, f, g } => {
            let l = load(&ctx, charpoly)?;
            let (fi, gi) = (index(&l, *f)?, index(&l, *g)?);
            let c = compatible(&l.spectrum, &l.family[fi], &l.family[gi])?;
            print(&json!({
                "f": member(&l, fi),
                "g": member(&l, gi),
                "compatible": c.compatible,
                "value": c.value.map(|v| v.to_string()),
                "signs": c.signs,
            }));
        }
        Command::Angles { charpoly } => {
            let l = load(&ctx, charpoly)?;
            let t = angle_table(&l.spectrum, &l.family)?;
            print(&report::angle_table(&t, &l.family));
        }
        Command::Reproduce {
            case,
            charpoly,
            format,
            output,
        } => return run_reproduce(cli, ctx, *case, charpoly.as_deref(), *format, output.as_deref()),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_reproduce(
    cli: &Cli,
    mut ctx: Context,
    case: Option<Case>,
    charpoly: Option<&str>,
    format: Format,
    output: Option<&Path>,
) -> Result<ExitCode> {
    let Some(case) = case else {
        let chi = read_charpoly(charpoly.expect("clap enforces one of the two"))?;
        let r = analyse(&ctx, &chi)?;
        print(&report::candidate(&r));
        return Ok(if r.verdict.is_eliminated() { ExitCode::SUCCESS } else { ExitCode::from(2) });
    };
    ctx.certificates_only = case.certificates_only();
    let r = reproduce(&ctx, case, cli.jobs.max(1))?;
    let classes: Vec<Value> = ctx.class_sets().iter().map(|s| report::class_set(s)).collect();
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&report::case(&r, cli.seed, &classes))?,
        Format::Markdown => report::markdown(&r),
        Format::Csv => report::csv(&r)?,
    };
    match output {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => println!("{}", text),
    }
    eprintln!("{}", report::conclusion(&r));
    Ok(if r.bound_established() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

/// Checks every row of a certificate table; exit code 2 if any fails.
fn verify_table(ctx: &Context, path: &Path) -> Result<ExitCode> {
    let rows: Vec<Value> = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    let mut results = Vec::new();
    let mut all = true;
    for row in &rows {
        let chi = row["charpoly"].as_str().context("row without charpoly")?;
        let vector = row["certificate"]
            .as_array()
            .context("row without certificate")?
            .iter()
            .map(|v| match v {
                Value::String(s) => s.parse::<BigInt>().context("bad certificate entry"),
                Value::Number(n) => n.to_string().parse::<BigInt>().context("bad certificate entry"),
                _ => bail!("bad certificate entry {}", v),
            })
            .collect::<Result<Vec<_>>>()?;
        let l = load(ctx, chi)?;
        let mut sys = build_system(&l.spectrum, &l.family)?;
        if let Some(sub) = row.get("subfamily").and_then(Value::as_array) {
            let rows = sub
                .iter()
                .map(|m| warranted_index(&l, m.as_str().context("subfamily entries must be strings")?))
                .collect::<Result<Vec<_>>>()?;
            sys = sys.restrict(&rows);
        }
        let kind = match row.get("warranted").and_then(Value::as_str) {
            None => CertificateKind::Infeasible,
            Some(w) => CertificateKind::Warranty(warranted_index(&l, w)?),
        };
        let ok = verify_certificate(&sys, &Certificate { kind, vector });
        // The search must also find some certificate of the same kind.
        let found = match kind {
            CertificateKind::Infeasible => matches!(find_certificate(&sys), Feasibility::Infeasible(_)),
            CertificateKind::Warranty(r) => find_warranty(&sys, r).is_some(),
        };
        all &= ok && found;
        results.push(json!({
            "charpoly": chi,
            "family_size": l.family.len(),
            "valid": ok,
            "search_agrees": found,
        }));
    }
    print(&json!({ "rows": results, "all_valid": all }));
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

/// Family index of a member given as its quotient or its full polynomial.
fn warranted_index(l: &Loaded, w: &str) -> Result<usize> {
    let p: FactoredPoly = w.parse()?;
    let expanded = p.expand();
    let quotient = if expanded.degree() == l.spectrum.distinct() - 1 {
        expanded
    } else {
        expanded.exact_div(&l.spectrum.mu)?
    };
    l.family
        .iter()
        .position(|f| *f == quotient)
        .with_context(|| format!("{} is not in the interlacing family", w))
}
