//! Command-line interface over the `finsym` library: validation,
//! spininess checks, reduction, reflection, colimits, object
//! constructions, and morphism enumeration for truncated symmetric sets
//! stored as JSON documents.
//!
//! Every command prints a JSON summary to stdout (or, for `construct`
//! without `--output`, the document itself). Exit codes: 0 success or
//! checked property true, 1 checked property false, 2 malformed input or
//! arguments, 3 resource cap exceeded (a search budget, or a reflection
//! stopped by `--max-iters` before stabilizing — its outputs are still
//! written).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use finsym::constructions::{b_com, b_q, groupoid_to_partial_group, ladder, word_classifier};
use finsym::group::{FiniteGroup, FiniteGroupoid};
use finsym::homsearch::enumerate_homs;
use finsym::io::{
    parse_diagram, parse_group, parse_groupoid, parse_symset, to_json, ReflectReportDoc,
    ReportDoc, SymMapDoc, SymSetDoc,
};
use finsym::reflect::{colimit_partial, reflect_with, PartialCategory};
use finsym::spiny::{is_spiny, SpineChoice};
use finsym::symset::{colimit_sym, nerve, nerve_group, reduce};
use finsym::{Error, Exec, TruncSymSet};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "finsym",
    version,
    about = "Finite truncated symmetric sets: validation, reflection, colimits, morphism search"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the generator identities of a symset document
    Validate {
        file: PathBuf,
    },
    /// Decide whether cells are determined by their spine tuples
    Spiny {
        file: PathBuf,
        /// Spine systems to test: `standard` or `random:SEED:COUNT`
        #[arg(long, default_value = "standard")]
        spines: String,
    },
    /// Merge all fully degenerate cells and write the reduced quotient
    Reduce {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Iterate spine-collision merges to the spiny reflection
    Reflect {
        file: PathBuf,
        /// Stop after this many merge passes (default: run to stabilization)
        #[arg(long)]
        max_iters: Option<usize>,
        #[arg(short, long)]
        output: PathBuf,
        /// Where to write the pass-by-pass merge report
        #[arg(long)]
        report: PathBuf,
    },
    /// Colimit of a diagram document in the chosen category
    Colimit {
        diagram: PathBuf,
        #[arg(long)]
        category: Category,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build a named object and emit it as a symset document
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Enumerate morphisms between two symset documents
    Homs {
        src: PathBuf,
        dst: PathBuf,
        /// Print only the count, not the morphisms themselves
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Category {
    /// Plain presheaf colimit, no reflection
    Sym,
    /// Partial groupoids: reflect the presheaf colimit
    Pgpd,
    /// Partial groups: reduce the presheaf colimit, then reflect
    Pgrp,
}

impl Category {
    fn as_str(self) -> &'static str {
        match self {
            Category::Sym => "sym",
            Category::Pgpd => "pgpd",
            Category::Pgrp => "pgrp",
        }
    }
}

#[derive(Subcommand)]
enum Construct {
    /// Nerve of a finite group
    Bg {
        /// `cyclic:N`, `dihedral:N`, `symmetric:N`, `*`-joined products
        /// of those, or a path to a group document
        group: String,
        #[arg(long, default_value_t = 3)]
        trunc: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reduction of the nerve of a groupoid document
    Groupoid {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        trunc: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sub-nerve of the chains generating a subgroup whose q-th
    /// lower-central term is trivial
    Bq {
        group: String,
        q: usize,
        #[arg(long, default_value_t = 3)]
        trunc: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sub-nerve of the pairwise-commuting chains
    Bcom {
        group: String,
        #[arg(long, default_value_t = 3)]
        trunc: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classifier of length-m words: the reduced representable
    WordClassifier {
        m: usize,
        #[arg(long, default_value_t = 3)]
        trunc: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Nerve of the chaotic groupoid on k objects
    Chaotic {
        k: usize,
        #[arg(long, default_value_t = 3)]
        trunc: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Two-sheeted ladder over k+2 posts (a non-spiny stress example)
    Ladder {
        k: usize,
        #[arg(long, default_value_t = 3)]
        trunc: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SearchCapExceeded { .. } => 3,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn json_err(e: serde_json::Error) -> Failure {
    Failure { code: 2, message: e.to_string() }
}

fn main() -> ExitCode {
    match run(Cli::parse().cmd) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, Failure> {
    match cmd {
        Cmd::Validate { file } => {
            let x = load_symset(&file)?;
            let report = x.validate();
            let doc = serde_json::to_value(ReportDoc::from_validation(&report)).map_err(json_err)?;
            print_summary(&json!({
                "command": "validate",
                "pass": report.pass,
                "report": doc,
                "sizes": sizes(&x),
            }))?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Cmd::Spiny { file, spines } => {
            let x = load_symset(&file)?;
            let choice = parse_spines(&spines)?;
            let report = is_spiny(&x, &choice)?;
            let doc = serde_json::to_value(ReportDoc::from_spiny(&report)).map_err(json_err)?;
            print_summary(&json!({
                "command": "spiny",
                "pass": report.pass,
                "report": doc,
                "sizes": sizes(&x),
                "spines": spines,
            }))?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Cmd::Reduce { file, output } => {
            let x = load_symset(&file)?;
            let (q, _) = reduce(&x);
            write_symset(&output, &q)?;
            print_summary(&json!({
                "command": "reduce",
                "output": output.display().to_string(),
                "sizes": sizes(&q),
            }))?;
            Ok(0)
        }
        Cmd::Reflect { file, max_iters, output, report } => {
            let x = load_symset(&file)?;
            let (q, _, rep) = reflect_with(&x, max_iters, Exec::default())?;
            write_symset(&output, &q)?;
            write_text(&report, &to_json(&ReflectReportDoc::from_report(&rep))?)?;
            print_summary(&json!({
                "command": "reflect",
                "iterations": rep.iterations,
                "output": output.display().to_string(),
                "report": report.display().to_string(),
                "sizes": sizes(&q),
                "stabilized": rep.stabilized,
            }))?;
            Ok(if rep.stabilized { 0 } else { 3 })
        }
        Cmd::Colimit { diagram, category, output } => {
            let owned = parse_diagram(&read(&diagram)?)?;
            let data = owned.data()?;
            let (q, legs) = match category {
                Category::Sym => colimit_sym(&data)?,
                Category::Pgpd => {
                    let (q, legs, _) = colimit_partial(&data, PartialCategory::Pgpd)?;
                    (q, legs)
                }
                Category::Pgrp => {
                    let (q, legs, _) = colimit_partial(&data, PartialCategory::Pgrp)?;
                    (q, legs)
                }
            };
            write_symset(&output, &q)?;
            print_summary(&json!({
                "command": "colimit",
                "category": category.as_str(),
                "legs": legs.len(),
                "output": output.display().to_string(),
                "sizes": sizes(&q),
            }))?;
            Ok(0)
        }
        Cmd::Construct { kind } => {
            let (name, output, x) = build(kind)?;
            emit(name, output.as_deref(), &x)
        }
        Cmd::Homs { src, dst, count_only } => {
            let s = load_symset(&src)?;
            let t = load_symset(&dst)?;
            let homs = enumerate_homs(&s, &t)?;
            if count_only {
                print_summary(&json!({ "command": "homs", "count": homs.len() }))?;
            } else {
                let mut docs = Vec::with_capacity(homs.len());
                for h in &homs {
                    docs.push(serde_json::to_value(SymMapDoc::from_map(h)).map_err(json_err)?);
                }
                print_summary(&json!({
                    "command": "homs",
                    "count": homs.len(),
                    "homs": docs,
                }))?;
            }
            Ok(0)
        }
    }
}

fn build(kind: Construct) -> Result<(&'static str, Option<PathBuf>, TruncSymSet), Failure> {
    match kind {
        Construct::Bg { group, trunc, output } => {
            let g = parse_group_desc(&group)?;
            Ok(("bg", output, nerve_group(&g, trunc)))
        }
        Construct::Groupoid { file, trunc, output } => {
            let gpd = parse_groupoid(&read(&file)?)?;
            Ok(("groupoid", output, groupoid_to_partial_group(&gpd, trunc).0))
        }
        Construct::Bq { group, q, trunc, output } => {
            if q == 0 {
                return Err(Failure::input("bq requires q >= 1"));
            }
            let g = parse_group_desc(&group)?;
            Ok(("bq", output, b_q(&g, q, trunc).0))
        }
        Construct::Bcom { group, trunc, output } => {
            let g = parse_group_desc(&group)?;
            Ok(("bcom", output, b_com(&g, trunc).0))
        }
        Construct::WordClassifier { m, trunc, output } => {
            Ok(("word-classifier", output, word_classifier(m, trunc)?))
        }
        Construct::Chaotic { k, trunc, output } => {
            if k == 0 {
                return Err(Failure::input("chaotic requires k >= 1"));
            }
            Ok(("chaotic", output, nerve(&FiniteGroupoid::chaotic(k), trunc)))
        }
        Construct::Ladder { k, trunc, output } => Ok(("ladder", output, ladder(k, trunc)?)),
    }
}

fn emit(kind: &str, output: Option<&Path>, x: &TruncSymSet) -> Result<u8, Failure> {
    match output {
        Some(path) => {
            write_symset(path, x)?;
            print_summary(&json!({
                "command": "construct",
                "kind": kind,
                "output": path.display().to_string(),
                "sizes": sizes(x),
            }))?;
        }
        None => print!("{}", to_json(&SymSetDoc::from_symset(x))?),
    }
    Ok(0)
}

/// `cyclic:N` / `dihedral:N` / `symmetric:N` (`dihedral:N` is the
/// symmetry group of the N-gon, order 2N), `*`-joined direct products of
/// those, or a path to a `group/v1` document.
fn parse_group_desc(desc: &str) -> Result<FiniteGroup, Failure> {
    let mut parts = desc.split('*');
    let mut g = parse_group_atom(parts.next().expect("split yields at least one part"))?;
    for part in parts {
        g = FiniteGroup::direct_product(&g, &parse_group_atom(part)?);
    }
    Ok(g)
}

fn parse_group_atom(atom: &str) -> Result<FiniteGroup, Failure> {
    if let Some((family, size)) = atom.split_once(':') {
        let n: usize = size
            .parse()
            .map_err(|_| Failure::input(format!("bad group size in `{atom}`")))?;
        if n == 0 {
            return Err(Failure::input(format!("group size must be positive in `{atom}`")));
        }
        return match family {
            "cyclic" => Ok(FiniteGroup::cyclic(n)),
            "dihedral" => Ok(FiniteGroup::dihedral(n)),
            "symmetric" => Ok(FiniteGroup::symmetric(n)),
            _ => Err(Failure::input(format!(
                "unknown group family `{family}` (expected cyclic, dihedral, or symmetric)"
            ))),
        };
    }
    parse_group(&read(Path::new(atom))?).map_err(Failure::from)
}

fn parse_spines(spec: &str) -> Result<SpineChoice, Failure> {
    if spec == "standard" {
        return Ok(SpineChoice::Standard);
    }
    if let Some(rest) = spec.strip_prefix("random:") {
        if let Some((seed, count)) = rest.split_once(':') {
            let seed: u64 =
                seed.parse().map_err(|_| Failure::input(format!("bad seed in `{spec}`")))?;
            let count: usize =
                count.parse().map_err(|_| Failure::input(format!("bad count in `{spec}`")))?;
            if count == 0 {
                return Err(Failure::input("spine system count must be positive"));
            }
            return Ok(SpineChoice::Random { seed, count });
        }
    }
    Err(Failure::input(format!(
        "bad --spines `{spec}` (expected `standard` or `random:SEED:COUNT`)"
    )))
}

fn sizes(x: &TruncSymSet) -> Vec<usize> {
    (0..=x.trunc()).map(|n| x.level_size(n)).collect()
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn load_symset(path: &Path) -> Result<TruncSymSet, Failure> {
    Ok(parse_symset(&read(path)?)?)
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_symset(path: &Path, x: &TruncSymSet) -> Result<(), Failure> {
    write_text(path, &to_json(&SymSetDoc::from_symset(x))?)
}

fn print_summary(v: &serde_json::Value) -> Result<(), Failure> {
    println!("{}", serde_json::to_string_pretty(v).map_err(json_err)?);
    Ok(())
}
