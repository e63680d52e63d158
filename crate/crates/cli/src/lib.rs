//! Command-line front end for `thuemult`: build, minimize, compare, decide,
//! check and scan automata stored as JSON documents.
//!
//! Exit codes: 0 on success or a definite answer, 1 when a check fails or two
//! automata differ, 2 on invalid input.

pub mod document;
pub mod dot;

use std::collections::BTreeMap;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::Value;
use thuemult::automata::{distinguishing_word, minimize, Dfa, PairAlphabetCodec};
use thuemult::constructions::{
    build_divisibility_dfa, build_letter_count_dfa, build_minimal_mt_direct, build_mult_pair_dfa,
    build_multiple_of_set_dfa, build_product, build_projected_product, build_thue_dfa, build_thue_pair_dfa,
    state_complexity_mn, state_complexity_mt,
};
use thuemult::decision::decide_multiple_of_thue;
use thuemult::oracle::{conjecture_scan, cross_check_mn_with, cross_check_mt_with, write_csv, CrossCheckReport};

use document::{integer_value, AutomatonDocument};

#[derive(Debug, Parser)]
#[command(name = "thuemult", version, about = "Automata for multiples of the Thue-Morse set")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an automaton and write it as JSON.
    Build(BuildArgs),
    /// Minimize a document into its canonical complete form.
    Minimize {
        /// Input document, `-` for standard input.
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Test two documents for language equality; prints a distinguishing word if they differ.
    Compare { left: PathBuf, right: PathBuf },
    /// Decide whether a document accepts val⁻¹(mT) for some m.
    Decide {
        input: PathBuf,
        /// Base exponent; defaults to the document metadata or the alphabet size.
        #[arg(long)]
        p: Option<u32>,
        #[arg(short, long)]
        verbose: bool,
    },
    /// Compare the state complexity formulas with minimized automata, as CSV.
    Check(CheckArgs),
    /// Measure m·X for letter-count sets X against the conjectured formula, as CSV.
    Scan(ScanArgs),
    /// Export a document to Graphviz DOT.
    Dot {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Thue,
    ThuePair,
    MultPair,
    Divisibility,
    Product,
    ProjectedProduct,
    MinimalMt,
    LetterCount,
    MultipleOfSet,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    pub kind: Kind,
    #[arg(long)]
    pub m: Option<BigUint>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub b: Option<u32>,
    /// Counted letter (letter-count).
    #[arg(long)]
    pub c: Option<u32>,
    /// Modulus of the letter count.
    #[arg(long = "M")]
    pub modulus: Option<u64>,
    /// Remainder of the letter count.
    #[arg(long = "R", default_value_t = 0)]
    pub remainder: u64,
    /// Set automaton for multiple-of-set.
    #[arg(long)]
    pub set: Option<PathBuf>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Also write a DOT rendering here.
    #[arg(long)]
    pub dot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Mt,
    Mn,
    All,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[arg(long, default_value_t = 64)]
    pub m_max: u64,
    #[arg(long, default_value_t = 3)]
    pub p_max: u32,
    #[arg(long, value_delimiter = ',', default_value = "2,3,4,5,8,10")]
    pub b_list: Vec<u32>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, default_value_t = 1)]
    pub p: u32,
    #[arg(long)]
    pub c: u32,
    #[arg(long = "M")]
    pub modulus: u64,
    #[arg(long = "R", default_value_t = 0)]
    pub remainder: u64,
    #[arg(long, default_value_t = 32)]
    pub m_max: u64,
}

pub type Formula = fn(u64, u32) -> thuemult::Result<u64>;

fn mt_formula(m: u64, p: u32) -> thuemult::Result<u64> {
    let v = state_complexity_mt(m, p)?;
    u64::try_from(v).map_err(|e| thuemult::Error::Capacity(e.to_string()))
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    }
}

pub fn load_document(path: &Path) -> Result<AutomatonDocument> {
    AutomatonDocument::from_json(&read_input(path)?).with_context(|| format!("invalid document {}", path.display()))
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn require<T: Clone>(value: &Option<T>, flag: &str, kind: Kind) -> Result<T> {
    value.clone().ok_or_else(|| anyhow!("--{flag} is required for {kind:?}"))
}

fn small_m(m: &BigUint) -> Result<u64> {
    u64::try_from(m).map_err(|_| anyhow!("m = {m} is too large for this construction"))
}

/// Builds the requested automaton with its metadata and, for pair
/// automata, the pair base.
pub fn build(args: &BuildArgs) -> Result<(Dfa, BTreeMap<String, Value>, Option<u32>)> {
    let kind = args.kind;
    let name = kind.to_possible_value().expect("no skipped variants").get_name().to_string();
    let mut meta = BTreeMap::from([("construction".to_string(), Value::from(name))]);
    let mut put = |key: &str, v: Value| {
        meta.insert(key.to_string(), v);
    };
    let m = || require(&args.m, "m", kind);
    let p = || require(&args.p, "p", kind);
    let b = || require(&args.b, "b", kind);
    let (dfa, pair_base) = match kind {
        Kind::Thue => {
            put("p", p()?.into());
            (build_thue_dfa(p()?)?, None)
        }
        Kind::ThuePair => {
            put("p", p()?.into());
            (build_thue_pair_dfa(p()?)?, Some(1 << p()?))
        }
        Kind::MultPair | Kind::Divisibility => {
            let mv = small_m(&m()?)?;
            put("m", mv.into());
            put("b", b()?.into());
            if kind == Kind::MultPair {
                (build_mult_pair_dfa(mv, b()?)?, Some(b()?))
            } else {
                (build_divisibility_dfa(mv, b()?)?, None)
            }
        }
        Kind::Product | Kind::ProjectedProduct => {
            let mv = small_m(&m()?)?;
            put("m", mv.into());
            put("p", p()?.into());
            if kind == Kind::Product {
                (build_product(mv, p()?)?, Some(1 << p()?))
            } else {
                (build_projected_product(mv, p()?)?, None)
            }
        }
        Kind::MinimalMt => {
            put("m", integer_value(m()?.to_string()));
            put("p", p()?.into());
            (build_minimal_mt_direct(&m()?, p()?)?, None)
        }
        Kind::LetterCount => {
            let c = require(&args.c, "c", kind)?;
            let modulus = require(&args.modulus, "M", kind)?;
            put("b", b()?.into());
            put("c", c.into());
            put("M", modulus.into());
            put("R", args.remainder.into());
            (build_letter_count_dfa(b()?, c, modulus, args.remainder)?, None)
        }
        Kind::MultipleOfSet => {
            let path = require(&args.set, "set", kind)?;
            let set = load_document(&path)?.to_dfa()?;
            let base = match args.b {
                Some(b) => b,
                None => u32::try_from(set.alphabet_size())?,
            };
            let mv = small_m(&m()?)?;
            put("m", mv.into());
            put("b", base.into());
            (build_multiple_of_set_dfa(&set, mv, base)?, None)
        }
    };
    if let Some(pb) = pair_base {
        meta.insert("pair_base".to_string(), pb.into());
    }
    Ok((dfa, meta, pair_base))
}

fn pair_codec(doc: &AutomatonDocument) -> Result<Option<PairAlphabetCodec>> {
    match doc.metadata_u64("pair_base")? {
        Some(b) => Ok(Some(PairAlphabetCodec::new(u32::try_from(b)?)?)),
        None => Ok(None),
    }
}

fn infer_p(doc: &AutomatonDocument, explicit: Option<u32>) -> Result<u32> {
    if let Some(p) = explicit {
        return Ok(p);
    }
    if let Some(p) = doc.metadata_u64("p")? {
        if doc.metadata_u64("pair_base")?.is_none() {
            return Ok(u32::try_from(p)?);
        }
    }
    let k = doc.alphabet_size;
    if k >= 2 && k.is_power_of_two() {
        Ok(k.trailing_zeros())
    } else {
        bail!("cannot infer p from an alphabet of size {k}; pass --p")
    }
}

/// Runs the check suites with the given formulas; returns 1 if any row fails.
pub fn run_check(args: &CheckArgs, mt: Formula, mn: Formula, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let mut rows: Vec<CrossCheckReport> = Vec::new();
    if matches!(args.suite, Suite::Mt | Suite::All) {
        for m in 1..=args.m_max {
            for p in 1..=args.p_max {
                rows.push(cross_check_mt_with(m, p, mt)?);
            }
        }
    }
    if matches!(args.suite, Suite::Mn | Suite::All) {
        for m in 1..=args.m_max {
            for &b in &args.b_list {
                rows.push(cross_check_mn_with(m, b, mn)?);
            }
        }
    }
    write_csv(&rows, &mut *out)?;
    let failures: Vec<&CrossCheckReport> = rows.iter().filter(|r| !r.pass).collect();
    for r in &failures {
        writeln!(err, "FAIL {r}")?;
    }
    writeln!(err, "{} of {} rows passed", rows.len() - failures.len(), rows.len())?;
    Ok(if failures.is_empty() { 0 } else { 1 })
}

/// Executes a parsed command; the returned value is the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    match &cli.command {
        Command::Build(args) => {
            let (dfa, meta, pair_base) = build(args)?;
            if let Some(path) = &args.dot {
                let codec = pair_base.map(PairAlphabetCodec::new).transpose()?;
                fs::write(path, dot::to_dot(&dfa, codec)).with_context(|| format!("cannot write {}", path.display()))?;
            }
            emit(&AutomatonDocument::from_dfa(&dfa, meta).to_json(), args.output.as_deref(), out)?;
            Ok(0)
        }
        Command::Minimize { input, output } => {
            let doc = load_document(input)?;
            let minimal = minimize(&doc.to_dfa()?);
            emit(&AutomatonDocument::from_dfa(&minimal, doc.metadata).to_json(), output.as_deref(), out)?;
            Ok(0)
        }
        Command::Compare { left, right } => {
            let (a, b) = (load_document(left)?.to_dfa()?, load_document(right)?.to_dfa()?);
            match distinguishing_word(&a, &b)? {
                None => {
                    writeln!(out, "equivalent")?;
                    Ok(0)
                }
                Some(w) => {
                    let word: Vec<String> = w.iter().map(u32::to_string).collect();
                    writeln!(out, "different: [{}]", word.join(","))?;
                    Ok(1)
                }
            }
        }
        Command::Decide { input, p, verbose } => {
            let doc = load_document(input)?;
            let p = infer_p(&doc, *p)?;
            let outcome = decide_multiple_of_thue(&doc.to_dfa()?, p)?;
            writeln!(out, "{}", outcome.result)?;
            if *verbose {
                writeln!(err, "minimized state count: {}", outcome.minimized_state_count)?;
                let tested: Vec<String> = outcome.candidates_tested.iter().map(|(k, z)| format!("({k},{z})")).collect();
                writeln!(err, "candidates (k,z) tested: {}", tested.join(" "))?;
            }
            Ok(0)
        }
        Command::Check(args) => run_check(args, mt_formula, state_complexity_mn, out, err),
        Command::Scan(args) => {
            let rows = conjecture_scan(args.q, args.p, args.c, args.modulus, args.remainder, args.m_max)
                ?;
            write_csv(&rows, &mut *out)?;
            let agree = rows.iter().filter(|r| r.agree).count();
            writeln!(err, "{agree} of {} rows agree with M·k + ceil(z/p)", rows.len())?;
            Ok(0)
        }
        Command::Dot { input, output } => {
            let doc = load_document(input)?;
            emit(&dot::to_dot(&doc.to_dfa()?, pair_codec(&doc)?), output.as_deref(), out)?;
            Ok(0)
        }
    }
}
