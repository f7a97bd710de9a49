//! The `weylspec` command line.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::coxeter::{CoxeterSystem, Element, Family, Side, SimpleSubset};
use crate::error::Error;
use crate::poset::Poset;
use crate::symplectic::{self, EoStratum};
use crate::twisted::TwistedOrder;
use crate::verify::{self, VerifyOptions};

pub const MAX_ORDER_ENV: &str = "WEYLSPEC_MAX_ORDER";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "weylspec",
    version,
    about = "Parabolic quotients, the twisted specialization order and Ekedahl-Oort posets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List ^J W, W^J or ^J W^K with lengths and reduced words.
    Quotient(QuotientArgs),
    /// Build the order ⪯ on ^J W, or the Ekedahl-Oort poset with --eo.
    Poset(PosetArgs),
    /// Run a property suite and print a JSON report.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Option<Family>,
    #[arg(long)]
    pub rank: Option<usize>,
    /// Diagram automorphism as a 1-based permutation ("2,1,3"), or "id".
    #[arg(long, default_value = "id")]
    pub frobenius: String,
    /// Upper bound on enumerated group sizes; overrides WEYLSPEC_MAX_ORDER.
    #[arg(long)]
    pub max_order: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuotientSide {
    Left,
    Right,
    Double,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PosetFormat {
    Json,
    Dot,
    Csv,
}

#[derive(Debug, Args)]
pub struct QuotientArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// 1-based generator indices, comma separated; "" for the empty set.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    pub j: String,
    /// Right-hand subset for --side double.
    #[arg(long, default_value = "")]
    pub k: String,
    #[arg(long, value_enum, default_value_t = QuotientSide::Left)]
    pub side: QuotientSide,
    #[arg(long, value_enum, default_value_t = ListFormat::Text)]
    pub format: ListFormat,
}

#[derive(Debug, Args)]
pub struct PosetArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value = "")]
    pub j: String,
    /// Ekedahl-Oort poset of A_g; replaces --family/--rank/--j.
    #[arg(long)]
    pub eo: Option<usize>,
    #[arg(long, value_enum, default_value_t = PosetFormat::Json)]
    pub format: PosetFormat,
    /// Include the full relation matrix in JSON output.
    #[arg(long)]
    pub leq: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// One of bruhat, quotients, howlett, jinfty, springer, spec-order, eo.
    pub suite: String,
    #[command(flatten)]
    pub system: SystemArgs,
    /// Genus for the eo suite.
    #[arg(long)]
    pub g: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

/// Parses "1,3", "1 3" or "" into a subset of `{0..rank}`.
pub fn parse_subset(s: &str, rank: usize) -> Result<SimpleSubset, Error> {
    let mut out = SimpleSubset::EMPTY;
    for tok in s.split(|c: char| c == ',' || c.is_whitespace()) {
        let tok = tok.trim().trim_start_matches('s');
        if tok.is_empty() {
            continue;
        }
        match tok.parse::<usize>() {
            Ok(i) if (1..=rank).contains(&i) => out.insert(i - 1),
            _ => {
                return Err(Error::InvalidIndex(format!(
                    "{tok:?} is not a generator index in 1..={rank}"
                )))
            }
        }
    }
    Ok(out)
}

pub fn parse_frobenius(s: &str, rank: usize) -> Result<Option<Vec<usize>>, Error> {
    if s.trim() == "id" {
        return Ok(None);
    }
    let perm = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(i) if (1..=rank).contains(&i) => Ok(i - 1),
            _ => Err(Error::InvalidIndex(format!("bad Frobenius entry {t:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Some(perm))
}

fn max_order(args: &SystemArgs) -> Result<Option<usize>, Error> {
    if let Some(n) = args.max_order {
        return if n == 0 {
            Err(Error::Precondition("--max-order must be positive".into()))
        } else {
            Ok(Some(n))
        };
    }
    match std::env::var(MAX_ORDER_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Precondition(format!("{MAX_ORDER_ENV}={v:?} is not a positive integer"))),
        },
        Err(_) => Ok(None),
    }
}

fn build_system(args: &SystemArgs) -> Result<CoxeterSystem, Error> {
    let (Some(family), Some(rank)) = (args.family, args.rank) else {
        return Err(Error::Precondition("--family and --rank are required".into()));
    };
    let frob = parse_frobenius(&args.frobenius, rank)?;
    let mut sys = CoxeterSystem::new(family, rank, frob)?;
    if let Some(n) = max_order(args)? {
        sys = sys.with_max_order(n);
    }
    Ok(sys)
}

fn one_based(word: &[usize]) -> Vec<usize> {
    word.iter().map(|s| s + 1).collect()
}

fn frobenius_json(sys: &CoxeterSystem) -> serde_json::Value {
    if sys.frobenius_is_identity() {
        serde_json::Value::String("id".into())
    } else {
        serde_json::json!(one_based(sys.frobenius()))
    }
}

#[derive(Serialize)]
struct ListedElement {
    word: Vec<usize>,
    length: usize,
}

#[derive(Serialize)]
struct QuotientListing {
    family: String,
    rank: usize,
    j: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<Vec<usize>>,
    side: &'static str,
    elements: Vec<ListedElement>,
}

#[derive(Serialize)]
struct PosetNode {
    id: String,
    word: Vec<usize>,
    eps: Option<String>,
    length: usize,
}

#[derive(Serialize)]
struct PosetDocument {
    family: String,
    rank: usize,
    j: Vec<usize>,
    frobenius: serde_json::Value,
    nodes: Vec<PosetNode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    leq: Option<Vec<Vec<bool>>>,
    covers: Vec<[usize; 2]>,
}

fn cmd_quotient(args: &QuotientArgs, out: &mut dyn Write) -> Result<(), Error> {
    let sys = build_system(&args.system)?;
    let j = parse_subset(&args.j, sys.rank())?;
    let k = parse_subset(&args.k, sys.rank())?;
    let (elements, side) = match args.side {
        QuotientSide::Left => (sys.min_coset_reps(j, Side::Left)?, "left"),
        QuotientSide::Right => (sys.min_coset_reps(j, Side::Right)?, "right"),
        QuotientSide::Double => (sys.double_reps(j, k)?, "double"),
    };
    match args.format {
        ListFormat::Text => {
            for x in &elements {
                writeln!(out, "{}\t{}", x.length(), sys.word_string(x)).map_err(io_err)?;
            }
        }
        ListFormat::Json => {
            let doc = QuotientListing {
                family: sys.family().to_string(),
                rank: sys.rank(),
                j: j.to_one_based(),
                k: (args.side == QuotientSide::Double).then(|| k.to_one_based()),
                side,
                elements: elements
                    .iter()
                    .map(|x| ListedElement {
                        word: one_based(&sys.canonical_word(x)),
                        length: x.length(),
                    })
                    .collect(),
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializes"))
                .map_err(io_err)?;
        }
    }
    Ok(())
}

fn io_err(e: std::io::Error) -> Error {
    Error::Precondition(format!("write failed: {e}"))
}

struct Rendered {
    doc: PosetDocument,
    csv: String,
    dot: String,
}

fn finish<L>(doc: PosetDocument, p: &Poset<L>, name: &str) -> Rendered {
    let ids: Vec<String> = doc.nodes.iter().map(|n| n.id.clone()).collect();
    let labels: Vec<String> = doc
        .nodes
        .iter()
        .map(|n| format!("{} / {}", n.id, n.length))
        .collect();
    Rendered {
        csv: p.to_csv(&ids),
        dot: p.to_dot(name, &labels),
        doc,
    }
}

fn render_spec(sys: &CoxeterSystem, j: SimpleSubset, p: &Poset<Element>, leq: bool) -> Rendered {
    let nodes = p
        .labels()
        .iter()
        .map(|x| PosetNode {
            id: sys.word_string(x),
            word: one_based(&sys.canonical_word(x)),
            eps: None,
            length: x.length(),
        })
        .collect();
    let doc = PosetDocument {
        family: sys.family().to_string(),
        rank: sys.rank(),
        j: j.to_one_based(),
        frobenius: frobenius_json(sys),
        nodes,
        leq: leq.then(|| p.matrix()),
        covers: p.covers().iter().map(|&(a, b)| [a, b]).collect(),
    };
    finish(doc, p, &format!("{}{} J={j}", sys.family(), sys.rank()))
}

fn render_eo(g: usize, p: &Poset<EoStratum>, leq: bool) -> Result<Rendered, Error> {
    let (sys, j) = symplectic::build_symplectic(g)?;
    let nodes = p
        .labels()
        .iter()
        .map(|s| PosetNode {
            id: s.eps.to_string(),
            word: one_based(&sys.canonical_word(&s.element)),
            eps: Some(s.eps.to_string()),
            length: s.dimension,
        })
        .collect();
    let doc = PosetDocument {
        family: "C".into(),
        rank: g,
        j: j.to_one_based(),
        frobenius: serde_json::Value::String("id".into()),
        nodes,
        leq: leq.then(|| p.matrix()),
        covers: p.covers().iter().map(|&(a, b)| [a, b]).collect(),
    };
    Ok(finish(doc, p, &format!("EO g={g}")))
}

fn cmd_poset(args: &PosetArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Error> {
    let rendered = if let Some(g) = args.eo {
        if g > symplectic::DEFAULT_MAX_G {
            return Err(Error::BoundExceeded {
                what: format!("EO strata for g = {g}"),
                limit: 1 << symplectic::DEFAULT_MAX_G,
            });
        }
        let _ = writeln!(err, "computing Ekedahl-Oort poset for g = {g}");
        render_eo(g, &symplectic::eo_poset(g)?, args.leq)?
    } else {
        let sys = build_system(&args.system)?;
        let j = parse_subset(&args.j, sys.rank())?;
        let _ = writeln!(err, "computing ⪯ on ^JW for {}{} J={j}", sys.family(), sys.rank());
        let t = TwistedOrder::new(&sys, j)?;
        render_spec(&sys, j, &t.spec_poset()?, args.leq)
    };
    let text = match args.format {
        PosetFormat::Json => {
            let mut s = serde_json::to_string_pretty(&rendered.doc).expect("serializes");
            s.push('\n');
            s
        }
        PosetFormat::Csv => rendered.csv,
        PosetFormat::Dot => rendered.dot,
    };
    out.write_all(text.as_bytes()).map_err(io_err)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, Error> {
    if !verify::SUITES.contains(&args.suite.as_str()) {
        return Err(Error::Precondition(format!(
            "unknown suite {:?}; expected one of {}",
            args.suite,
            verify::SUITES.join(", ")
        )));
    }
    let opts = VerifyOptions {
        samples: args.samples,
        seed: args.seed,
        ..VerifyOptions::default()
    };
    let report = if args.suite == "eo" {
        let g = args
            .g
            .ok_or_else(|| Error::Precondition("the eo suite needs --g".into()))?;
        if g > symplectic::DEFAULT_MAX_G {
            return Err(Error::BoundExceeded {
                what: format!("EO strata for g = {g}"),
                limit: 1 << symplectic::DEFAULT_MAX_G,
            });
        }
        let _ = writeln!(err, "running eo suite for g = {g}");
        verify::eo(g)?
    } else {
        let sys = build_system(&args.system)?;
        let _ = writeln!(err, "running {} suite on {}{}", args.suite, sys.family(), sys.rank());
        verify::run_suite(&args.suite, &sys, &opts)?
    };
    writeln!(out, "{}", report.to_json()).map_err(io_err)?;
    Ok(report.passed)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TheoremViolation(_) | Error::PosetAxiom(_) => EXIT_VERIFY_FAILED,
        _ => EXIT_USAGE,
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Quotient(a) => cmd_quotient(a, out).map(|_| true),
        Command::Poset(a) => cmd_poset(a, out, err).map(|_| true),
        Command::Verify(a) => cmd_verify(a, out, err),
    };
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VERIFY_FAILED,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_parsing() {
        assert_eq!(parse_subset("", 3).unwrap(), SimpleSubset::EMPTY);
        assert_eq!(parse_subset("1,3", 3).unwrap().to_one_based(), vec![1, 3]);
        assert_eq!(parse_subset("s2 s1", 3).unwrap().to_one_based(), vec![1, 2]);
        assert!(parse_subset("4", 3).is_err());
        assert!(parse_subset("0", 3).is_err());
        assert!(parse_subset("x", 3).is_err());
    }

    #[test]
    fn frobenius_parsing() {
        assert_eq!(parse_frobenius("id", 3).unwrap(), None);
        assert_eq!(parse_frobenius("3,2,1", 3).unwrap(), Some(vec![2, 1, 0]));
        assert!(parse_frobenius("3,2,9", 3).is_err());
    }
}
