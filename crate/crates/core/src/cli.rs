//! Command-line front end. Exit codes: 0 success, 1 verification failure,
//! 2 usage or parse error.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::abelian::h1;
use crate::covers::{classify, double_cover};
use crate::error::Error;
use crate::parse::{parse_hom, parse_seifert};
use crate::rs::kernel_presentation;
use crate::seifert::{SeifertInvariants, TypeSymbol};
use crate::verify::{fuzz, verify_cover, FuzzConfig, VerifyReport};
use crate::z2hom::enumerate_epimorphisms;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "seifert-covers",
    version,
    about = "Double covers of Seifert fibered 3-manifolds"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a symbol against the type and fiber conditions.
    Validate { symbol: String },
    /// Print the standard presentation of the fundamental group.
    Pi1 { symbol: String },
    /// List every epimorphism onto Z/2 with its cover case.
    Enumerate { symbol: String },
    /// Print the double cover predicted for one epimorphism.
    Cover {
        symbol: String,
        /// Homomorphism as `gen=bit,...`; unlisted generators map to 0.
        #[arg(long)]
        phi: String,
    },
    /// Compare predicted covers with the rewritten kernel presentation.
    Verify {
        symbol: String,
        #[arg(long, conflicts_with = "all")]
        phi: Option<String>,
        /// Check every epimorphism (the default without --phi).
        #[arg(long)]
        all: bool,
        /// Also print the kernel presentation, Tietze-simplified.
        #[arg(long)]
        show_presentation: bool,
    },
    /// Verify a seeded random corpus of symbols.
    Fuzz(FuzzArgs),
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub max_e: i64,
    #[arg(long, default_value_t = 2)]
    pub max_g: u32,
    #[arg(long, default_value_t = 3)]
    pub max_n: usize,
    #[arg(long, default_value_t = 9)]
    pub max_a: i64,
    #[arg(long, default_value_t = 9)]
    pub max_b: i64,
    /// Restrict to these types, comma separated (default: all).
    #[arg(long, value_delimiter = ',')]
    pub types: Vec<String>,
}

/// Text to print and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            code: EXIT_OK,
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Inconsistent(_) => EXIT_FAILED,
        _ => EXIT_USAGE,
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn load(symbol: &str) -> Result<SeifertInvariants, Error> {
    let inv = parse_seifert(symbol)?;
    inv.check()?;
    Ok(inv)
}

pub fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Validate { symbol } => {
            let inv = parse_seifert(symbol)?;
            let report = inv.validate();
            let code = if report.ok { EXIT_OK } else { EXIT_FAILED };
            let stdout = if cli.json {
                pretty(&json!({
                    "symbol": inv.to_string(),
                    "ok": report.ok,
                    "violations": report.violations,
                }))
            } else if report.ok {
                format!("{inv}: valid\n")
            } else {
                let mut s = format!("{inv}: invalid\n");
                for v in &report.violations {
                    let _ = writeln!(s, "  {v}");
                }
                s
            };
            Ok(Outcome { stdout, code })
        }
        Command::Pi1 { symbol } => {
            let inv = load(symbol)?;
            let p = inv.fundamental_presentation()?;
            let homology = h1(&p);
            let stdout = if cli.json {
                pretty(&json!({
                    "symbol": inv.to_string(),
                    "generators": p.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "relators": p.relators().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "h1": homology,
                }))
            } else {
                let mut s = format!("{p}\nH1 = {homology}\n");
                s.insert_str(0, &format!("{inv}\n"));
                s
            };
            Ok(Outcome::ok(stdout))
        }
        Command::Enumerate { symbol } => {
            let inv = load(symbol)?;
            let p = inv.fundamental_presentation()?;
            let epis = enumerate_epimorphisms(&p)?;
            let mut rows = Vec::with_capacity(epis.len());
            for phi in &epis {
                rows.push((phi, classify(&inv, phi)?.tag));
            }
            let stdout = if cli.json {
                pretty(&json!({
                    "symbol": inv.to_string(),
                    "count": epis.len(),
                    "epimorphisms": rows.iter().map(|(phi, tag)| json!({
                        "phi": phi.to_string(),
                        "tag": tag,
                    })).collect::<Vec<_>>(),
                }))
            } else {
                let mut s = String::new();
                for (phi, tag) in &rows {
                    let _ = writeln!(s, "{phi}  {tag}");
                }
                let _ = writeln!(s, "{} epimorphisms", epis.len());
                s
            };
            Ok(Outcome::ok(stdout))
        }
        Command::Cover { symbol, phi } => {
            let inv = load(symbol)?;
            let phi = parse_hom(phi, &inv.fundamental_presentation()?)?;
            let tag = classify(&inv, &phi)?.tag;
            let cover = double_cover(&inv, &phi)?;
            let stdout = if cli.json {
                pretty(&json!({
                    "symbol": inv.to_string(),
                    "phi": phi.to_string(),
                    "tag": tag,
                    "cover": cover.to_string(),
                }))
            } else {
                format!("{cover}\n")
            };
            Ok(Outcome::ok(stdout))
        }
        Command::Verify {
            symbol,
            phi,
            all: _,
            show_presentation,
        } => {
            let inv = load(symbol)?;
            let p = inv.fundamental_presentation()?;
            let phis = match phi {
                Some(text) => vec![parse_hom(text, &p)?],
                None => enumerate_epimorphisms(&p)?,
            };
            let mut reports: Vec<(VerifyReport, Option<String>)> = Vec::new();
            for phi in &phis {
                let report = verify_cover(&inv, phi)?;
                let kernel = if *show_presentation {
                    Some(kernel_presentation(&p, phi, None, true)?.to_string())
                } else {
                    None
                };
                reports.push((report, kernel));
            }
            let failed = reports.iter().filter(|(r, _)| !r.pass).count();
            let stdout = if cli.json {
                let items: Vec<serde_json::Value> = reports
                    .iter()
                    .map(|(r, k)| {
                        let mut v = serde_json::to_value(r).expect("report serializes");
                        if let Some(k) = k {
                            v["kernel_presentation"] = json!(k);
                        }
                        v
                    })
                    .collect();
                pretty(&json!({
                    "symbol": inv.to_string(),
                    "checked": reports.len(),
                    "failed": failed,
                    "reports": items,
                }))
            } else {
                let mut s = String::new();
                for (r, k) in &reports {
                    let predicted = r
                        .predicted
                        .as_ref()
                        .map_or("-".to_string(), ToString::to_string);
                    let _ = writeln!(
                        s,
                        "{} {}  {}  {}  H1 = {}",
                        if r.pass { "PASS" } else { "FAIL" },
                        r.phi,
                        r.tag,
                        predicted,
                        r.oracle_h1
                    );
                    for f in &r.failures {
                        let _ =
                            writeln!(s, "    {}: expected {}, got {}", f.stage, f.expected, f.got);
                    }
                    if let Some(k) = k {
                        let _ = writeln!(s, "    kernel {k}");
                    }
                }
                let _ = writeln!(s, "{} checked, {} failed", reports.len(), failed);
                s
            };
            let code = if failed == 0 { EXIT_OK } else { EXIT_FAILED };
            Ok(Outcome { stdout, code })
        }
        Command::Fuzz(args) => {
            let types = if args.types.is_empty() {
                TypeSymbol::ALL.to_vec()
            } else {
                args.types
                    .iter()
                    .map(|t| {
                        TypeSymbol::from_name(t.trim()).ok_or_else(|| Error::Syntax {
                            position: 0,
                            message: format!("unknown type symbol `{t}`"),
                        })
                    })
                    .collect::<Result<_, _>>()?
            };
            let config = FuzzConfig {
                count: args.count,
                seed: args.seed,
                max_e: args.max_e,
                max_g: args.max_g,
                max_n: args.max_n,
                max_a: args.max_a,
                max_b: args.max_b,
                types,
                ..FuzzConfig::default()
            };
            let summary = fuzz(&config);
            let code = if summary.failures.is_empty() {
                EXIT_OK
            } else {
                EXIT_FAILED
            };
            let stdout = if cli.json {
                pretty(&serde_json::to_value(&summary).expect("summary serializes"))
            } else {
                let mut s = format!(
                    "{} cases, {} epimorphisms, {} failures\n",
                    summary.cases,
                    summary.epimorphisms,
                    summary.failures.len()
                );
                for f in &summary.failures {
                    let _ = writeln!(
                        s,
                        "  #{} {} [{}] {}: expected {}, got {}",
                        f.case, f.symbol, f.phi, f.stage, f.expected, f.got
                    );
                }
                s
            };
            Ok(Outcome { stdout, code })
        }
    }
}
