//! `su2free`: freeness checks, family enumeration, cross-checks and tables.

mod spec;
mod tables;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use su2free::ade::AdeKind;
use su2free::classify::{compare_with_expected, crosscheck, evaluate, Bounds, CrosscheckError, FamilySpec, ItemOutcome, TheoremId};
use su2free::congruence::{cos_equality_lattice, neg_congruence, res_solvable, simple_system_trivial_only, solve_linear, HalfTarget};
use su2free::freeness::{coincidence_set, is_free, FreenessError, DEFAULT_BUDGET};
use su2free::goursat::build_goursat;

use spec::{parse_spec, GroupDoc, SpecError};

const EXIT_PARSE: u8 = 2;
const EXIT_NON_FREE: u8 = 3;
const EXIT_BUDGET: u8 = 4;
const EXIT_MISMATCH: u8 = 5;

#[derive(Parser)]
#[command(name = "su2free", version, about = "Free actions of finite subgroups of SU(2)³ on S³ × S³")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on the number of element triples.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Decide freeness of a group given inline or as a file path.
    Check { spec: String },
    /// List the members of a family with their verdicts.
    Enumerate {
        /// Theorem id, or one of splittable, typeI, typeII.
        #[arg(long)]
        family: String,
        /// `param=N,third=M`.
        #[arg(long)]
        bounds: Option<String>,
        /// Comma-separated factor kinds to keep: Z, BD, 2T, 2O, 2I.
        #[arg(long)]
        kinds: Option<String>,
    },
    /// Cross-check a theorem's predicates against the oracle.
    Verify {
        theorem: String,
        #[arg(long)]
        bounds: Option<String>,
    },
    /// Regenerate the group tables.
    Tables,
    /// Evaluate the integer lemmas.
    Lemma {
        #[command(subcommand)]
        lemma: Lemma,
    },
}

#[derive(Subcommand)]
enum Lemma {
    /// Solutions of a·x + b·y = c.
    Linear {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        #[arg(allow_hyphen_values = true)]
        b: i64,
        #[arg(allow_hyphen_values = true)]
        c: i64,
    },
    /// Modulus of the solutions of x ≡ −r·x (mod n).
    Neg {
        n: i64,
        #[arg(allow_hyphen_values = true)]
        r: i64,
    },
    /// Lattice of cos(2πx/n) = cos(2πy/m).
    Cos { n: i64, m: i64 },
    /// Solvability of cos(2πx/3n) = ±1/2 with x in a residue class mod 3.
    Res {
        n: i64,
        residue: i64,
        /// `+` or `-`.
        #[arg(allow_hyphen_values = true)]
        sign: String,
    },
    /// Whether the simple-group system has only the trivial solution.
    Simple {
        p: i64,
        #[arg(allow_hyphen_values = true)]
        r: i64,
        #[arg(allow_hyphen_values = true)]
        s: i64,
    },
}

struct Fail(u8, String);

impl From<SpecError> for Fail {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::TooLarge(_) => Fail(EXIT_BUDGET, e.to_string()),
            _ => Fail(EXIT_PARSE, e.to_string()),
        }
    }
}

impl From<FreenessError> for Fail {
    fn from(e: FreenessError) -> Self {
        match e {
            FreenessError::Budget { .. } => Fail(EXIT_BUDGET, e.to_string()),
            FreenessError::Invalid(_) => Fail(EXIT_PARSE, e.to_string()),
        }
    }
}

impl From<su2free::GroupError> for Fail {
    fn from(e: su2free::GroupError) -> Self {
        Fail(EXIT_PARSE, e.to_string())
    }
}

impl From<su2free::ParseError> for Fail {
    fn from(e: su2free::ParseError) -> Self {
        Fail(EXIT_PARSE, format!("parse error at {}: {}", e.position, e.message))
    }
}

impl From<CrosscheckError> for Fail {
    fn from(e: CrosscheckError) -> Self {
        match e {
            CrosscheckError::Freeness(f) => f.into(),
            CrosscheckError::Group(g) => g.into(),
        }
    }
}

impl From<io::Error> for Fail {
    fn from(e: io::Error) -> Self {
        Fail(1, e.to_string())
    }
}

/// Collected output lines and the exit status.
struct Output {
    lines: Vec<String>,
    status: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text: String = out.lines.iter().map(|l| format!("{l}\n")).collect();
            let written = match &cli.out {
                Some(p) => fs::write(p, text),
                None => io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(out.status)
        }
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Fail> {
    match &cli.command {
        Command::Check { spec } => check(spec, cli),
        Command::Enumerate { family, bounds, kinds } => enumerate(family, bounds.as_deref(), kinds.as_deref(), cli),
        Command::Verify { theorem, bounds } => verify(theorem, bounds.as_deref(), cli),
        Command::Tables => Ok(Output { lines: tables::render(cli.format == Format::Records), status: 0 }),
        Command::Lemma { lemma } => Ok(Output { lines: vec![render(&run_lemma(lemma)?, cli.format)], status: 0 }),
    }
}

fn render(v: &Value, f: Format) -> String {
    match f {
        Format::Records => v.to_string(),
        Format::Text => match v {
            Value::Object(m) => m
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}={s}"),
                    other => format!("{k}={other}"),
                })
                .collect::<Vec<_>>()
                .join(" "),
            other => other.to_string(),
        },
    }
}

fn check(arg: &str, cli: &Cli) -> Result<Output, Fail> {
    let src = match fs::metadata(arg) {
        Ok(m) if m.is_file() => fs::read_to_string(arg)?,
        _ => arg.to_string(),
    };
    let v = match parse_spec(&src, cli.budget)? {
        GroupDoc::Product(g) => {
            let verdict = is_free(&g, cli.budget)?;
            let mut v = json!({ "free": verdict.free, "order": g.order() });
            if let Some(w) = verdict.witness {
                v["witness"] = json!(w.map(|q| q.to_string()));
            }
            let status = if verdict.free { 0 } else { EXIT_NON_FREE };
            return Ok(Output { lines: vec![render(&v, cli.format)], status });
        }
        GroupDoc::Quintuple(q) => {
            let c = build_goursat(&q);
            let w: Vec<String> = coincidence_set(&c).iter().map(|k| k.to_string()).collect();
            json!({ "order": c.order(), "coincidence_set": w })
        }
    };
    Ok(Output { lines: vec![render(&v, cli.format)], status: 0 })
}

fn parse_bounds(t: TheoremId, s: Option<&str>) -> Result<Bounds, Fail> {
    let mut b = Bounds::default_for(t);
    let Some(s) = s else { return Ok(b) };
    let mut offset = 0;
    for item in s.split(',') {
        let bad = || Fail(EXIT_PARSE, format!("parse error at {offset}: invalid bound '{item}'"));
        let (k, v) = item.split_once('=').ok_or_else(bad)?;
        let v: i64 = v.trim().parse().map_err(|_| bad())?;
        if v < 1 {
            return Err(bad());
        }
        match k.trim() {
            "param" => b.param = v,
            "third" => b.third = v,
            _ => return Err(bad()),
        }
        offset += item.len() + 1;
    }
    Ok(b)
}

fn parse_theorem(s: &str) -> Result<TheoremId, Fail> {
    let alias = match s {
        "splittable" => "main",
        "typeI" => "typeB",
        "typeII" => "type3",
        other => other,
    };
    Ok(alias.parse::<TheoremId>()?)
}

fn kind_tag(k: AdeKind) -> &'static str {
    match k {
        AdeKind::Cyclic(_) => "Z",
        AdeKind::BinaryDihedral(_) => "BD",
        AdeKind::BinaryTetrahedral => "2T",
        AdeKind::BinaryOctahedral => "2O",
        AdeKind::BinaryIcosahedral => "2I",
    }
}

fn factor_kinds(spec: &FamilySpec) -> Vec<AdeKind> {
    match *spec {
        FamilySpec::Simple { .. } => Vec::new(),
        FamilySpec::Splittable { row, n, m, l } => row.kinds(n, m, l).to_vec(),
        FamilySpec::Semi { third, .. } => vec![third],
    }
}

fn report_value(o: &ItemOutcome) -> Value {
    match o {
        ItemOutcome::Report(r) => serde_json::to_value(r).expect("serializable report"),
        ItemOutcome::OverBudget { family, params, order } => {
            json!({ "family": family, "params": params, "error": "budget", "order": order })
        }
    }
}

fn report_text(o: &ItemOutcome) -> String {
    match o {
        ItemOutcome::Report(r) => {
            let w = r.witness.as_ref().map(|w| format!(" witness=({})", w.join(", "))).unwrap_or_default();
            format!("{} {} predicate={} oracle={}{w}", r.family, r.params, r.predicate, r.oracle)
        }
        ItemOutcome::OverBudget { family, params, order } => format!("{family} {params} budget-exceeded order={order}"),
    }
}

fn enumerate(family: &str, bounds: Option<&str>, kinds: Option<&str>, cli: &Cli) -> Result<Output, Fail> {
    let t = parse_theorem(family)?;
    let b = parse_bounds(t, bounds)?;
    let keep: Option<Vec<String>> = kinds.map(|k| k.split(',').map(|s| s.trim().to_string()).collect());
    if let Some(k) = &keep {
        if let Some(bad) = k.iter().find(|s| !["Z", "BD", "2T", "2O", "2I"].contains(&s.as_str())) {
            return Err(Fail(EXIT_PARSE, format!("unknown kind '{bad}'")));
        }
    }
    let filter = |s: &FamilySpec| match &keep {
        None => true,
        Some(k) => factor_kinds(s).iter().all(|f| k.iter().any(|x| x == kind_tag(*f))),
    };
    let items = evaluate(t, b, cli.budget, filter)?;
    let lines = items
        .iter()
        .map(|o| match cli.format {
            Format::Records => report_value(o).to_string(),
            Format::Text => report_text(o),
        })
        .collect();
    Ok(Output { lines, status: 0 })
}

fn verify(theorem: &str, bounds: Option<&str>, cli: &Cli) -> Result<Output, Fail> {
    let t: TheoremId = theorem.parse()?;
    let b = parse_bounds(t, bounds)?;
    let reports = crosscheck(t, b, cli.budget)?;
    let (unexpected, missing) = compare_with_expected(t, &reports);
    let mismatches = reports.iter().filter(|r| r.is_mismatch()).count();
    eprintln!(
        "{t}: {} reports, {mismatches} mismatches, {} unexpected, {} missing",
        reports.len(),
        unexpected.len(),
        missing.len()
    );
    for k in &unexpected {
        eprintln!("unexpected mismatch: {k}");
    }
    for k in &missing {
        eprintln!("expected mismatch not observed: {k}");
    }
    let lines = reports
        .into_iter()
        .map(ItemOutcome::Report)
        .map(|o| match cli.format {
            Format::Records => report_value(&o).to_string(),
            Format::Text => report_text(&o),
        })
        .collect();
    let status = if unexpected.is_empty() && missing.is_empty() { 0 } else { EXIT_MISMATCH };
    Ok(Output { lines, status })
}

fn run_lemma(l: &Lemma) -> Result<Value, Fail> {
    Ok(match *l {
        Lemma::Linear { a, b, c } => match solve_linear(a, b, c)? {
            None => json!({ "solvable": false }),
            Some(s) => json!({ "solvable": true, "base": [s.base.0, s.base.1], "step": [s.steps[0].0, s.steps[0].1] }),
        },
        Lemma::Neg { n, r } => json!({ "n1": neg_congruence(n, r)? }),
        Lemma::Cos { n, m } => {
            let c = cos_equality_lattice(n, m)?;
            json!({ "k": c.k, "n1": c.n1, "m1": c.m1 })
        }
        Lemma::Res { n, residue, ref sign } => {
            let target = match sign.as_str() {
                "+" | "+1/2" => HalfTarget::PlusHalf,
                "-" | "-1/2" => HalfTarget::MinusHalf,
                other => return Err(Fail(EXIT_PARSE, format!("unknown sign '{other}'"))),
            };
            json!({ "solvable": res_solvable(n, residue, target)? })
        }
        Lemma::Simple { p, r, s } => json!({ "trivial_only": simple_system_trivial_only(p, r, s)? }),
    })
}
