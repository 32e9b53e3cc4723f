//! `superspin`: OPEs and the decomposition checks from the command line.
//!
//! Exit status is 0 when every reported claim holds, 1 when one fails and 2
//! for usage, parse or unsupported-input errors.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use superspin::algebras::{named_current, Family};
use superspin::dsl;
use superspin::expr::{Charge, FieldSymbol, OperatorExpr};
use superspin::oracle;
use superspin::report::{expr_terms, ope_report, PoleReport, TermReport, VerificationReport};
use superspin::scalars::{RatN, Rational};
use superspin::sugawara::{self, StressLabel, StressTensor};
use superspin::wick::{ope, LaurentOPE};

#[derive(Parser)]
#[command(name = "superspin", version, about = "OPEs of free Dirac fermions and ghosts with symbolic flavor rank N")]
struct Cli {
    /// Output format. `latex` is accepted by `ope`, `parse` and `central-charge`.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Subcommand)]
enum Command {
    /// Laurent expansion of A(z, z̄) B(w, w̄). Operands are DSL expressions,
    /// current names (H, J, S+, Shat-, ...) or stress tensors (T_free, T_su0, ...).
    Ope {
        a: String,
        b: String,
        /// Highest pole order kept in each variable.
        #[arg(long, env = "SUPERSPIN_DEPTH", default_value_t = 2)]
        depth: u32,
    },
    /// Canonical form of a DSL expression.
    Parse { expr: String },
    /// Decomposition identities of the free stress tensor.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Central charge of a stress tensor.
    CentralCharge {
        #[arg(value_parser = parse_label)]
        label: StressLabel,
    },
    /// Conformal weights of the fundamental fields in each sector.
    Weights {
        #[arg(value_parser = parse_family)]
        family: Family,
        #[arg(long, value_enum)]
        field: FieldKind,
    },
    /// One-loop beta functions of the left-right current perturbations.
    Beta {
        #[arg(value_parser = parse_family)]
        family: Family,
    },
    /// Density-of-states exponents Γ and ν.
    DosTable {
        /// Comma-separated ranks at which to evaluate ν.
        #[arg(long, value_delimiter = ',')]
        eval: Vec<i64>,
    },
    /// Brute-force checks on explicit generator matrices.
    Oracle {
        #[command(subcommand)]
        target: OracleTarget,
    },
}

#[derive(Subcommand)]
enum VerifyTarget {
    Su,
    So,
    All,
    /// The sp(2n) decomposition on explicit flavors.
    SpNumeric {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=2))]
        n: u32,
    },
}

#[derive(Subcommand)]
enum OracleTarget {
    /// Completeness relation and group constants at rank n.
    Completeness {
        #[arg(value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldKind {
    Psi,
    Beta,
}

fn parse_label(s: &str) -> Result<StressLabel, String> {
    s.parse().map_err(|e: superspin::Error| e.to_string())
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: superspin::Error| e.to_string())
}

enum Failure {
    Usage(String),
    Engine(superspin::Error),
}

impl From<superspin::Error> for Failure {
    fn from(e: superspin::Error) -> Self {
        match e {
            superspin::Error::Parse(_) | superspin::Error::Unsupported(_) => Failure::Usage(e.to_string()),
            e => Failure::Engine(e),
        }
    }
}

impl From<superspin::expr::ExprError> for Failure {
    fn from(e: superspin::expr::ExprError) -> Self {
        Failure::Engine(e.into())
    }
}

/// What a command prints and whether its claims held.
struct Outcome {
    text: String,
    ok: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, ok: true }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn operand(src: &str) -> Result<OperatorExpr, Failure> {
    if let Some(e) = named_current(src) {
        return Ok(e);
    }
    if let Some(label) = src.strip_prefix("T_").and_then(|l| l.parse::<StressLabel>().ok()) {
        return Ok(sugawara::build_t(label)?.expr);
    }
    dsl::parse(src).map_err(|e| Failure::Usage(format!("{src}: {e}")))
}

#[derive(Serialize)]
struct OpeJson<'a> {
    a: String,
    b: String,
    depth: u32,
    poles: &'a [PoleReport],
}

fn pole_label(p: u32, q: u32) -> String {
    match (p, q) {
        (0, 0) => "regular".into(),
        (p, 0) => format!("(z-w)^-{p}"),
        (0, q) => format!("(zb-wb)^-{q}"),
        (p, q) => format!("(z-w)^-{p} (zb-wb)^-{q}"),
    }
}

fn run_ope(a: &str, b: &str, depth: u32, format: Format) -> Result<Outcome, Failure> {
    let (ea, eb) = (operand(a)?, operand(b)?);
    let l: LaurentOPE = ope(&ea, &eb, depth)?;
    let text = match format {
        Format::Latex => dsl::ope_latex(&l),
        Format::Json => json(&OpeJson { a: ea.to_string(), b: eb.to_string(), depth, poles: &ope_report(&l) }),
        Format::Text => {
            let lines: Vec<String> =
                l.entries().rev().map(|(&(p, q), e)| format!("{}: {e}", pole_label(p, q))).collect();
            if lines.is_empty() {
                "0".into()
            } else {
                lines.join("\n")
            }
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct ParseJson {
    canonical: String,
    terms: Vec<TermReport>,
}

fn run_parse(src: &str, format: Format) -> Result<Outcome, Failure> {
    let e = operand(src)?;
    let text = match format {
        Format::Text => e.to_string(),
        Format::Latex => dsl::to_latex(&e),
        Format::Json => json(&ParseJson { canonical: e.to_string(), terms: expr_terms(&e) }),
    };
    Ok(Outcome::ok(text))
}

fn reports_outcome(reports: &[VerificationReport], format: Format) -> Result<Outcome, Failure> {
    let ok = reports.iter().all(VerificationReport::passed);
    let text = match format {
        Format::Json => json(&reports),
        Format::Latex => return Err(Failure::Usage("latex output is not available for reports".into())),
        Format::Text => reports
            .iter()
            .map(|r| {
                let mut line = format!("{}: {}", if r.passed() { "verified" } else { "FAILED" }, r.claim);
                if let Some(w) = &r.witness_terms {
                    line.push_str(&format!(" ({} residual terms)", r.lhs_minus_rhs_term_count));
                    for t in w {
                        line.push_str(&format!("\n    {t}"));
                    }
                }
                line
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Outcome { text, ok })
}

fn decomposition_report(family: Family) -> Result<VerificationReport, Failure> {
    let (sup, bos) = sugawara::decomposition_labels(family)?;
    let residual = sugawara::decomposition_residual(family)?;
    Ok(VerificationReport::from_residual(format!("T_free = T_{sup} + T_{bos}"), &residual))
}

fn run_verify(target: &VerifyTarget, format: Format) -> Result<Outcome, Failure> {
    let reports = match target {
        VerifyTarget::Su => vec![decomposition_report(Family::Su)?],
        VerifyTarget::So => vec![decomposition_report(Family::So)?],
        VerifyTarget::All => vec![decomposition_report(Family::Su)?, decomposition_report(Family::So)?],
        VerifyTarget::SpNumeric { n } => {
            let n = *n as usize;
            let mut out = vec![VerificationReport::from_bool(
                format!("sp({}): T_free = T_osp(2|2) + T_sp0 on explicit flavors", 2 * n),
                oracle::numeric_verify_sp(n)?,
            )];
            if n == 1 {
                out.push(VerificationReport::from_bool(
                    "sp(2) sectors coincide with su(2) at N = 2",
                    oracle::sp_su_coincidence()?,
                ));
            }
            out
        }
    };
    reports_outcome(&reports, format)
}

fn run_central_charge(label: StressLabel, format: Format) -> Result<Outcome, Failure> {
    let c = sugawara::central_charge(&sugawara::build_t(label)?)?;
    let text = match format {
        Format::Text => c.to_string(),
        Format::Latex => dsl::ratn_latex(&c),
        Format::Json => json(&serde_json::json!({ "tensor": label.name(), "central_charge": c })),
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct WeightRow {
    field: String,
    free: RatN,
    super_sector: RatN,
    level_zero: RatN,
    additive: bool,
}

fn run_weights(family: Family, kind: FieldKind, format: Format) -> Result<Outcome, Failure> {
    let (sup, bos) = sugawara::decomposition_labels(family)?;
    let tensors: Vec<StressTensor> =
        [StressLabel::Free, sup, bos].into_iter().map(sugawara::build_t).collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for charge in [Charge::Plus, Charge::Minus] {
        let sym = match kind {
            FieldKind::Psi => FieldSymbol::psi(charge, "i"),
            FieldKind::Beta => FieldSymbol::beta(charge, "i"),
        };
        let f = OperatorExpr::field(sym.clone());
        let w: Vec<RatN> = tensors.iter().map(|t| sugawara::conformal_weight(t, &f)).collect::<Result<_, _>>()?;
        rows.push(WeightRow {
            field: sym.to_string(),
            additive: w[0] == &w[1] + &w[2],
            free: w[0].clone(),
            super_sector: w[1].clone(),
            level_zero: w[2].clone(),
        });
    }
    let ok = rows.iter().all(|r| r.additive);
    let text = match format {
        Format::Json => json(
            &serde_json::json!({ "family": family, "super": sup.name(), "level_zero": bos.name(), "weights": rows }),
        ),
        Format::Latex => return Err(Failure::Usage("latex output is not available for weights".into())),
        Format::Text => rows
            .iter()
            .map(|r| {
                format!(
                    "{}: free {}, {} {}, {} {}, additive {}",
                    r.field,
                    r.free,
                    sup,
                    r.super_sector,
                    bos,
                    r.level_zero,
                    if r.additive { "yes" } else { "NO" }
                )
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok(Outcome { text, ok })
}

#[derive(Serialize)]
struct BetaTerm {
    couplings: [String; 2],
    coefficient: RatN,
}

#[derive(Serialize)]
struct BetaLine {
    coupling: String,
    terms: Vec<BetaTerm>,
}

fn run_beta(family: Family, format: Format) -> Result<Outcome, Failure> {
    let sys = sugawara::beta_one_loop(family)?;
    let text = match format {
        Format::Text => sys.render(),
        Format::Latex => return Err(Failure::Usage("latex output is not available for beta".into())),
        Format::Json => {
            let lines: Vec<BetaLine> = (0..sys.couplings.len())
                .map(|k| BetaLine {
                    coupling: sys.couplings[k].clone(),
                    terms: sys
                        .quadratic_terms(k)
                        .into_iter()
                        .map(|((i, j), c)| BetaTerm {
                            couplings: [sys.couplings[i].clone(), sys.couplings[j].clone()],
                            coefficient: c,
                        })
                        .collect(),
                })
                .collect();
            json(&serde_json::json!({ "family": family, "beta": lines }))
        }
    };
    Ok(Outcome::ok(text))
}

#[derive(Serialize)]
struct DosRow {
    family: Family,
    kappa: RatN,
    gamma: RatN,
    nu: RatN,
    evaluations: Vec<DosEval>,
}

#[derive(Serialize)]
struct DosEval {
    n: i64,
    /// `None` at a pole.
    nu: Option<String>,
}

fn run_dos_table(eval: &[i64], format: Format) -> Result<Outcome, Failure> {
    let mut rows = Vec::new();
    for family in [Family::Su, Family::So, Family::Sp] {
        let d = sugawara::dos_exponents(family)?;
        let evaluations = eval
            .iter()
            .map(|&n| DosEval { n, nu: d.nu.eval(&Rational::from_integer(n.into())).ok().map(|v| v.to_string()) })
            .collect();
        rows.push(DosRow { family, kappa: d.kappa, gamma: d.gamma, nu: d.nu, evaluations });
    }
    let text = match format {
        Format::Json => json(&rows),
        Format::Latex => return Err(Failure::Usage("latex output is not available for dos-table".into())),
        Format::Text => {
            let mut out = vec![format!("{:<8}{:<20}{:<20}", "family", "Gamma", "nu")];
            for r in &rows {
                let mut line =
                    format!("{:<8}{:<20}{:<20}", r.family.to_string(), r.gamma.to_string(), r.nu.to_string());
                for e in &r.evaluations {
                    line.push_str(&format!("  nu(N={})={}", e.n, e.nu.as_deref().unwrap_or("pole")));
                }
                out.push(line.trim_end().to_string());
            }
            out.join("\n")
        }
    };
    Ok(Outcome::ok(text))
}

fn run_oracle(target: &OracleTarget, format: Format) -> Result<Outcome, Failure> {
    match target {
        OracleTarget::Completeness { family, n } => {
            let reports: Vec<VerificationReport> = oracle::constant_checks(*family, *n)?
                .into_iter()
                .map(|c| VerificationReport::from_bool(c.claim, c.passed))
                .collect();
            reports_outcome(&reports, format)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let f = cli.format;
    match &cli.command {
        Command::Ope { a, b, depth } => run_ope(a, b, *depth, f),
        Command::Parse { expr } => run_parse(expr, f),
        Command::Verify { target } => run_verify(target, f),
        Command::CentralCharge { label } => run_central_charge(*label, f),
        Command::Weights { family, field } => run_weights(*family, *field, f),
        Command::Beta { family } => run_beta(*family, f),
        Command::DosTable { eval } => run_dos_table(eval, f),
        Command::Oracle { target } => run_oracle(target, f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{}", out.text);
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
