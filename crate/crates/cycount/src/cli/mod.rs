//! Command-line interface: `rulings`, `augcount`, `hall` and `verify`.
//!
//! Output is JSON with sorted keys. Exit status is 0 when every assertion holds, 1 on an
//! assertion failure (with the first counterexample) and 2 on usage errors.

pub mod suites;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::aug::{global_object_oracle, link_invariant, z_transfer, ORACLE_MAX_Q, ORACLE_MAX_STRANDS};
use crate::error::CyError;
use crate::exact::{laurent_eval_z, QuadExt};
use crate::hall::{
    build_root_nilpotent, build_stable_nakayama, check_associativity, heart_embedding_check, twist_reading_check,
    CategoryModel, CheckReport, HallAlgebra, NilClass, Partition,
};
use crate::tangle::{parse_tangle, ruling_polynomial, ruling_transfer, TangleWord};
use suites::{run_suite, SuiteConfig, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cycount", version, about = "Exact counts for Legendrian tangles and odd Calabi-Yau Hall algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ruling polynomial of a closed word, or the ruling transfer matrix of an open one.
    Rulings {
        #[arg(long)]
        tangle: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Counting invariant of a tangle over one or more fields.
    Augcount {
        #[arg(long)]
        tangle: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        q: Vec<u64>,
        /// Also run the brute-force census of global objects (closed plat words only).
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        json: bool,
    },
    /// Checks on a Hall algebra instance.
    Hall {
        #[arg(long, value_enum)]
        instance: Instance,
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// `m` for the Nakayama instance, largest indecomposable (and stalk size) for the root category.
        #[arg(long)]
        param: usize,
        #[arg(long, value_enum)]
        check: HallCheck,
        #[arg(long)]
        json: bool,
    },
    /// Acceptance suites.
    Verify {
        /// `all` or one of the suite names.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<u64>>,
        /// Directory of `.tng` words checked alongside the random ones.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Instance {
    Nakayama,
    Nilpotent,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum HallCheck {
    Associativity,
    Heart,
    Twist,
}

/// Why a command stopped.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Error(CyError),
    Assertion(Value),
}

impl From<CyError> for Failure {
    fn from(e: CyError) -> Self {
        match e {
            CyError::Parse { .. } | CyError::Grading(_) => Failure::Usage(e.to_string()),
            e => Failure::Error(e),
        }
    }
}

/// Shipped corpus of tangle words.
pub fn default_corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn read_word(path: &Path) -> Result<TangleWord, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    parse_tangle(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Every `.tng` file in `dir`, sorted by name.
pub fn load_corpus(dir: &Path) -> Result<Vec<(String, TangleWord)>, String> {
    let entries = std::fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "tng"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(format!("no .tng files in {}", dir.display()));
    }
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            let w = parse_tangle(&text).map_err(|e| format!("{}: {e}", p.display()))?;
            let name = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok((name, w))
        })
        .collect()
}

fn rulings_cmd(tangle: &Path) -> Result<Value, Failure> {
    let w = read_word(tangle)?;
    match ruling_polynomial(&w) {
        Some(p) => Ok(json!({ "polynomial": p.to_json() })),
        None => {
            let m = ruling_transfer(&w);
            Ok(json!({ "matrix": m.to_json(&crate::exact::LaurentPoly::zero()) }))
        }
    }
}

fn augcount_cmd(tangle: &Path, qs: &[u64], oracle: bool) -> Result<Value, Failure> {
    let w = read_word(tangle)?;
    if oracle && !w.is_closed() {
        return Err(Failure::Usage("--oracle needs a closed word".into()));
    }
    let mut values = Vec::new();
    for &q in qs {
        crate::exact::Field::new(q).map_err(|e| Failure::Usage(e.to_string()))?;
        let mut entry = serde_json::Map::new();
        entry.insert("q".into(), json!(q));
        if w.is_closed() {
            let v = link_invariant(&w, q)?;
            let poly = ruling_polynomial(&w).unwrap_or_default();
            let from_rulings = laurent_eval_z(&poly, q)?;
            if v != from_rulings {
                return Err(Failure::Assertion(json!({
                    "q": q, "value": v.to_json(), "ruling_polynomial_value": from_rulings.to_json(),
                })));
            }
            entry.insert("value".into(), v.to_json());
            if oracle {
                if q > ORACLE_MAX_Q || w.max_strands() > ORACLE_MAX_STRANDS {
                    return Err(Failure::Usage(format!(
                        "the census handles q <= {ORACLE_MAX_Q} and at most {ORACLE_MAX_STRANDS} strands"
                    )));
                }
                let c = global_object_oracle(&w, q)?;
                if c.total != v {
                    return Err(Failure::Assertion(json!({ "q": q, "value": v.to_json(), "census_total": c.total.to_json() })));
                }
                entry.insert(
                    "census".into(),
                    json!({
                        "classes": c.entries,
                        "components": c.components,
                        "total": c.total.to_json(),
                    }),
                );
            }
        } else {
            let z = z_transfer(&w, q)?;
            entry.insert("matrix".into(), z.to_json(&QuadExt::zero(q)));
        }
        values.push(Value::Object(entry));
    }
    Ok(json!({ "values": values }))
}

fn report_value(rep: &CheckReport) -> Value {
    json!({
        "check": rep.check,
        "cases": rep.cases,
        "skipped": rep.skipped,
        "passed": rep.passed(),
        "counterexample": rep.failures.first(),
    })
}

fn hall_cmd(instance: Instance, q: u64, param: usize, check: HallCheck) -> Result<Value, Failure> {
    crate::exact::Field::new(q).map_err(|e| Failure::Usage(e.to_string()))?;
    let all_pairs = |v: &[NilClass]| -> Vec<(NilClass, NilClass)> {
        v.iter().flat_map(|z| v.iter().map(move |x| (z.clone(), x.clone()))).collect()
    };
    let rep = match (instance, check) {
        (Instance::Nakayama, HallCheck::Heart) => {
            return Err(Failure::Usage("the heart check needs the nilpotent instance".into()));
        }
        (Instance::Nakayama, c) => {
            let m = u32::try_from(param).map_err(|_| Failure::Usage(format!("m = {param} is too large")))?;
            let model = build_stable_nakayama(q, m).map_err(|e| Failure::Usage(e.to_string()))?;
            if c == HallCheck::Associativity {
                check_associativity(&HallAlgebra::new(&model)?, &model.indecomposables(), crate::config::max_dim())?
            } else {
                let cls = model.classes_up_to(2);
                let pairs: Vec<_> = cls.iter().flat_map(|z| cls.iter().map(move |x| (z.clone(), x.clone()))).collect();
                twist_reading_check(&model, -1, -3, &pairs)?
            }
        }
        (Instance::Nilpotent, c) => {
            if param == 0 {
                return Err(Failure::Usage("--param must be positive".into()));
            }
            let model = build_root_nilpotent(q, 12).map_err(|e| Failure::Usage(e.to_string()))?;
            let alg = HallAlgebra::new(&model)?;
            match c {
                HallCheck::Associativity => {
                    let gens: Vec<NilClass> = (1..=param)
                        .flat_map(|k| {
                            let p = Partition::new(vec![k]);
                            [NilClass::stalk0(p.clone()), NilClass::stalk1(p)]
                        })
                        .collect();
                    check_associativity(&alg, &gens, crate::config::max_dim())?
                }
                HallCheck::Heart => {
                    heart_embedding_check(&alg, &suites::heart_pairs(param), |z, x| model.classical_expansion(z, x))?
                }
                HallCheck::Twist => {
                    let cls: Vec<NilClass> = (0..=param)
                        .flat_map(Partition::of_size)
                        .flat_map(|a| (0..=param).flat_map(Partition::of_size).map(move |b| NilClass::new(a.clone(), b)))
                        .filter(|c| c.size() <= param)
                        .collect();
                    twist_reading_check(&model, 1, 3, &all_pairs(&cls))?
                }
            }
        }
    };
    let mut v = report_value(&rep);
    v["instance"] = json!(format!("{instance:?}").to_lowercase());
    v["q"] = json!(q);
    if !rep.passed() {
        return Err(Failure::Assertion(v));
    }
    Ok(v)
}

fn verify_cmd(suite: &str, qs: Option<Vec<u64>>, corpus: Option<PathBuf>, seed: u64) -> Result<Value, Failure> {
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if let Some(s) = SUITES.iter().find(|s| **s == suite) {
        vec![*s]
    } else {
        return Err(Failure::Usage(format!("unknown suite `{suite}`; expected all or one of {}", SUITES.join(", "))));
    };
    if let Some(qs) = &qs {
        for &q in qs {
            crate::exact::Field::new(q).map_err(|e| Failure::Usage(e.to_string()))?;
        }
    }
    let dir = corpus.unwrap_or_else(default_corpus_dir);
    let corpus = load_corpus(&dir).map_err(Failure::Usage)?;
    let cfg = SuiteConfig { qs, seed, corpus };
    let mut results = Vec::new();
    for name in names {
        let r = run_suite(name, &cfg)?;
        let failed = !r.passed;
        results.push(r);
        if failed {
            return Err(Failure::Assertion(json!({ "suites": results, "passed": false })));
        }
    }
    Ok(json!({ "suites": results, "passed": true }))
}

fn render(v: &Value, as_json: bool) -> String {
    if as_json {
        serde_json::to_string(v).expect("JSON values serialize")
    } else {
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    }
}

/// Runs the command line `args` (program name first), writing results to `out` and
/// diagnostics to `err`. Returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let (result, as_json) = match cli.command {
        Command::Rulings { tangle, json } => (rulings_cmd(&tangle), json),
        Command::Augcount { tangle, q, oracle, json } => (augcount_cmd(&tangle, &q, oracle), json),
        Command::Hall { instance, q, param, check, json } => (hall_cmd(instance, q, param, check), json),
        Command::Verify { suite, q, corpus, seed, json } => (verify_cmd(&suite, q, corpus, seed), json),
    };
    match result {
        Ok(v) => {
            let _ = writeln!(out, "{}", render(&v, as_json));
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Error(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILED
        }
        Err(Failure::Assertion(v)) => {
            let _ = writeln!(out, "{}", render(&v, as_json));
            let _ = writeln!(err, "assertion failed");
            EXIT_FAILED
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
