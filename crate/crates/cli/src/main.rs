use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use monodec::algebra::{ApproximationAlgebra, AxiomReport, AxiomSystem, Orientation};
use monodec::boolean::{inf_formula, verify_equiv, TruthTable};
use monodec::decompose::{decompose_traced, DecomposeOptions, DecompositionTrace, Strategy};
use monodec::error::Error;
use monodec::formula::{Formula, FormulaFile};
use monodec::io::{
    read_json, theta_form_json, AlgebraRef, FormFile, MapFile, MvTableFile, PosetFile, PosetRef,
};
use monodec::order::PosetMap;
use monodec::selftest;
use monodec::theta::{decompose_theta, synthesize_mv, MvTable};

#[derive(Parser)]
#[command(
    name = "monodec",
    version,
    about = "Decompose non-monotone maps on finite posets into monotone parts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    emit: Emit,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Text,
    /// `inf` only: the formula alone.
    Formula,
    /// `inf` only: the parts, innermost first.
    Parts,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a map into nested monotone parts.
    Decompose {
        #[arg(long)]
        map: PathBuf,
        /// Built-in selector (e.g. chain-primal:4) or algebra JSON file.
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value = "t1")]
        strategy: Strategy,
        /// Write step records as JSON to stderr.
        #[arg(long)]
        trace: bool,
        /// Write step records to this file instead of stderr.
        #[arg(long)]
        trace_file: Option<PathBuf>,
    },
    /// Implication chain of monotone parts for a Boolean function.
    Inf {
        #[arg(long)]
        tt: PathBuf,
    },
    /// Formula over thresholds and scalers for a many-valued table.
    Mv {
        #[arg(long)]
        table: PathBuf,
    },
    /// Formula over ⊟, ⊞ and up-set indicator leaves.
    Theta {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        algebra: String,
    },
    /// Check an algebra against an axiom system.
    CheckAxioms {
        #[arg(long)]
        algebra: String,
        /// A, A*, B, B*, B+ or B+*; defaults to the systems matching the
        /// algebra's orientation.
        #[arg(long)]
        system: Option<AxiomSystem>,
    },
    /// Embed a poset into the Boolean cube of its size.
    Embed {
        /// Poset JSON file, or a name such as grid:3:2.
        #[arg(long)]
        poset: String,
    },
    /// Check a form or formula against a map or table.
    Verify {
        #[arg(long, conflicts_with = "formula", required_unless_present = "formula")]
        form: Option<PathBuf>,
        #[arg(long)]
        formula: Option<PathBuf>,
        #[arg(long)]
        against: PathBuf,
    },
    /// Run the acceptance criteria.
    Selftest {
        /// Largest arity of the exhaustive Boolean suite.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

enum Failure {
    /// Bad input: exit 2.
    Input(Error),
    /// Construction failure: exit 3, with the trace when one exists.
    Internal(Error, Option<DecompositionTrace>),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e, None)
        } else {
            Failure::Input(e)
        }
    }
}

macro_rules! impl_failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::from(Error::from(e))
            }
        }
    )*};
}

impl_failure_from!(
    monodec::error::OrderError,
    monodec::error::AlgebraError,
    monodec::error::DecomposeError,
    monodec::error::FormulaError,
    monodec::error::TableError,
    serde_json::Error,
    std::io::Error
);

/// What a command printed and whether its check succeeded.
struct Outcome {
    stdout: String,
    ok: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, ok: true }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e, trace)) => {
            eprintln!("internal error: {e}");
            if let Some(t) = trace {
                eprintln!("{}", pretty(&serde_json::to_value(t).expect("plain data")));
            }
            ExitCode::from(3)
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("plain data")
}

fn algebra(arg: &str) -> Result<ApproximationAlgebra, Failure> {
    Ok(AlgebraRef::from_arg(arg)?.resolve()?)
}

fn load_map(path: &Path, alg: &ApproximationAlgebra) -> Result<PosetMap, Failure> {
    let file: MapFile = read_json(path)?;
    Ok(file.resolve(Some(alg.levels()))?)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let emit = cli.emit;
    match &cli.command {
        Command::Decompose {
            map,
            algebra: sel,
            strategy,
            trace,
            trace_file,
        } => {
            let alg = algebra(sel)?;
            let psi = load_map(map, &alg)?;
            let (result, steps) = decompose_traced(&psi, &alg, DecomposeOptions::from(*strategy));
            let steps_json = pretty(&serde_json::to_value(&steps).expect("plain data"));
            if let Some(path) = trace_file {
                fs::write(path, format!("{steps_json}\n"))?;
            } else if *trace {
                eprintln!("{steps_json}");
            }
            let form = match result {
                Ok(form) => form,
                Err(e) => {
                    let e = Error::from(e);
                    return Err(if e.is_internal() {
                        Failure::Internal(e, Some(steps))
                    } else {
                        Failure::Input(e)
                    });
                }
            };
            let stdout = match emit {
                Emit::Text => {
                    let mut s = String::new();
                    for (i, part) in form.parts.iter().enumerate() {
                        s.push_str(&format!("part {}: {part}\n", i + 1));
                    }
                    let stats = form.stats();
                    s.push_str(&format!(
                        "{} parts, {} compositions, longest chain {} elements\n",
                        stats.parts, stats.compose_ops, stats.domain_chain_elements
                    ));
                    s
                }
                _ => format!(
                    "{}\n",
                    pretty(&serde_json::to_value(FormFile::of(&form, &alg))?)
                ),
            };
            Ok(Outcome::ok(stdout))
        }
        Command::Inf { tt } => {
            let table = TruthTable::parse_file(&fs::read_to_string(tt)?)?;
            let (inf, formula) = inf_formula(&table)?;
            let stdout = match emit {
                Emit::Formula | Emit::Text => format!("{formula}\n"),
                Emit::Parts => inf.parts.iter().map(|p| format!("{p}\n")).collect(),
                Emit::Json => format!("{}\n", pretty(&inf.to_json(&formula))),
            };
            Ok(Outcome::ok(stdout))
        }
        Command::Mv { table } => {
            let file: MvTableFile = read_json(table)?;
            let out = synthesize_mv(&file.build()?)?;
            let stdout = match emit {
                Emit::Json => format!(
                    "{}\n",
                    pretty(&json!({
                        "q": out.q,
                        "n": out.arity,
                        "unaries": out.unaries,
                        "formula": out.formula.to_string(),
                    }))
                ),
                _ => out.to_string(),
            };
            Ok(Outcome::ok(stdout))
        }
        Command::Theta { map, algebra: sel } => {
            let alg = algebra(sel)?;
            let psi = load_map(map, &alg)?;
            let form = decompose_theta(&psi, &alg, None)?;
            let stdout = match (emit, &form.grounded) {
                (Emit::Text | Emit::Formula, Some(g)) => {
                    let arity = psi.domain().grid_shape().map_or(0, |s| s.1);
                    let mut file = FormulaFile::new(alg.q(), arity, g.clone());
                    if alg.is_builtin() {
                        file = file.with_algebra(alg.name());
                    }
                    file.unaries.extend(form.unaries.clone());
                    file.to_string()
                }
                (Emit::Text | Emit::Formula, None) => {
                    let mut s = format!("{}\n", form.skeleton);
                    for (i, leaf) in form.substitution.iter().enumerate() {
                        s.push_str(&format!("z{} = {leaf}\n", i + 1));
                    }
                    s
                }
                _ => format!("{}\n", pretty(&theta_form_json(&form))),
            };
            Ok(Outcome::ok(stdout))
        }
        Command::CheckAxioms {
            algebra: sel,
            system,
        } => {
            let alg = algebra(sel)?;
            let systems = match system {
                Some(s) => vec![*s],
                None => match alg.orientation() {
                    Orientation::Primal => vec![AxiomSystem::A, AxiomSystem::B],
                    Orientation::Dual => vec![AxiomSystem::AStar, AxiomSystem::BStar],
                },
            };
            let reports = systems
                .iter()
                .map(|&s| alg.check_axioms(s, None))
                .collect::<Result<Vec<AxiomReport>, _>>()?;
            let ok = reports.iter().all(AxiomReport::passed);
            let stdout = match emit {
                Emit::Json if reports.len() == 1 => {
                    format!("{}\n", pretty(&serde_json::to_value(&reports[0])?))
                }
                Emit::Json => format!("{}\n", pretty(&serde_json::to_value(&reports)?)),
                _ => {
                    let mut s = String::new();
                    for r in &reports {
                        s.push_str(&format!(
                            "{} {}: {}\n",
                            r.algebra,
                            r.system,
                            if r.passed() { "pass" } else { "FAIL" }
                        ));
                        for v in &r.axioms {
                            s.push_str(&format!("  {:<4} {:?}", v.axiom, v.status));
                            if let Some(c) = &v.counterexample {
                                s.push_str(&format!("  [{}] {}", c.values.join(", "), c.note));
                            }
                            s.push('\n');
                        }
                    }
                    s
                }
            };
            Ok(Outcome { stdout, ok })
        }
        Command::Embed { poset } => {
            let m = if Path::new(poset).is_file() {
                read_json::<PosetFile>(poset)?.build()?
            } else {
                PosetRef::Named(poset.clone()).resolve()?
            };
            let m = Arc::new(m);
            let f = m.embed_into_cube()?;
            let cube = f.codomain();
            let stdout = match emit {
                Emit::Json => {
                    let table: serde_json::Map<String, Value> = (0..m.len())
                        .map(|x| {
                            (
                                m.id(x).to_string(),
                                Value::String(cube.id(f.get(x)).to_string()),
                            )
                        })
                        .collect();
                    format!("{}\n", pretty(&json!({ "cube": m.len(), "table": table })))
                }
                _ => (0..m.len())
                    .map(|x| format!("{} -> {}\n", m.id(x), cube.id(f.get(x))))
                    .collect(),
            };
            Ok(Outcome::ok(stdout))
        }
        Command::Verify {
            form,
            formula,
            against,
        } => match (form, formula) {
            (Some(form), _) => {
                let file: FormFile = read_json(form)?;
                let (form, alg) = file.resolve()?;
                let psi = load_map(against, &alg)?;
                let report = form.verify(&psi, &alg)?;
                let stdout = match emit {
                    Emit::Json => format!("{}\n", pretty(&serde_json::to_value(&report)?)),
                    _ => verdict_text(
                        report.ok,
                        report
                            .mismatch
                            .as_deref()
                            .or(report.nonmonotone.as_ref().map(|w| w.high.as_str())),
                    ),
                };
                Ok(Outcome {
                    stdout,
                    ok: report.ok,
                })
            }
            (None, Some(path)) => {
                let file = load_formula(path)?;
                let witness = verify_formula(&file, against)?;
                let stdout = match emit {
                    Emit::Json => format!(
                        "{}\n",
                        pretty(&json!({ "ok": witness.is_none(), "witness": witness }))
                    ),
                    _ => verdict_text(witness.is_none(), witness.as_deref()),
                };
                Ok(Outcome {
                    stdout,
                    ok: witness.is_none(),
                })
            }
            (None, None) => Err(Failure::Input(Error::Input(
                "give --form or --formula".into(),
            ))),
        },
        Command::Selftest { max_n, only } => {
            let cfg = selftest::Config {
                seed: cli.seed,
                max_n: *max_n,
            };
            let ids: Vec<usize> = if only.is_empty() {
                (1..=10).collect()
            } else {
                only.clone()
            };
            let results: Vec<_> = ids.iter().map(|&id| selftest::run(id, &cfg)).collect();
            let ok = results.iter().all(|r| r.passed);
            let stdout = match emit {
                Emit::Json => format!("{}\n", pretty(&serde_json::to_value(&results)?)),
                _ => selftest::report(&results),
            };
            Ok(Outcome { stdout, ok })
        }
    }
}

/// A formula file in text form, or the JSON printed by `mv` and `inf`.
fn load_formula(path: &Path) -> Result<FormulaFile, Failure> {
    let text = fs::read_to_string(path)?;
    if !text.trim_start().starts_with('{') {
        return Ok(FormulaFile::parse(&text)?);
    }
    let v: Value = serde_json::from_str(&text)?;
    let bad = || Failure::Input(Error::Input("JSON formula needs a `formula` string".into()));
    let formula = Formula::parse(v.get("formula").and_then(Value::as_str).ok_or_else(bad)?)?;
    let q = v.get("q").and_then(Value::as_u64).unwrap_or(2) as usize;
    let arity = match v.get("n").and_then(Value::as_u64) {
        Some(n) => n as usize,
        None => formula.max_var(),
    };
    let mut file = FormulaFile::new(q, arity, formula);
    if let Some(a) = v.get("algebra").and_then(Value::as_str) {
        file = file.with_algebra(a);
    }
    if let Some(u) = v.get("unaries") {
        let extra: std::collections::BTreeMap<String, Vec<usize>> =
            serde_json::from_value(u.clone())?;
        file.unaries.extend(extra);
    }
    Ok(file)
}

fn verdict_text(ok: bool, witness: Option<&str>) -> String {
    match (ok, witness) {
        (true, _) => "ok\n".into(),
        (false, Some(w)) => format!("mismatch at {w}\n"),
        (false, None) => "mismatch\n".into(),
    }
}

/// First point (rendered) where a formula file disagrees with a truth
/// table, many-valued table or map over a grid.
fn verify_formula(file: &FormulaFile, against: &Path) -> Result<Option<String>, Failure> {
    let text = fs::read_to_string(against)?;
    let value: Option<Value> = serde_json::from_str(&text).ok();
    let render = |p: Vec<usize>| p.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    match value {
        Some(v) if v.get("domain").is_some() => {
            let sem = file.semantics()?;
            let map: MapFile = serde_json::from_value(v)?;
            let chain = Arc::new(PosetRef::Named(format!("chain:{}", file.q)).resolve()?);
            let psi = map.resolve(Some(&chain))?;
            let m = psi.domain();
            if m.grid_shape().map(|s| s.1) != Some(file.arity) {
                return Err(Failure::Input(Error::Input(
                    "map domain is not a grid of the formula's arity".into(),
                )));
            }
            for x in 0..m.len() {
                let c = m.coords(x).expect("grid element");
                if file.formula.eval_at(&sem, &c, None)? != psi.get(x) {
                    return Ok(Some(m.id(x).to_string()));
                }
            }
            Ok(None)
        }
        Some(v) if v.get("q").is_some() => {
            let table: MvTable = serde_json::from_value::<MvTableFile>(v)?.build()?;
            if table.q != file.q || table.n != file.arity {
                return Err(Failure::Input(Error::Input(
                    "table shape differs from the formula header".into(),
                )));
            }
            Ok(file
                .semantics()?
                .first_mismatch(&file.formula, &table.values)?
                .map(render))
        }
        _ => {
            let tt = TruthTable::parse_file(&text)?;
            if file.q != 2 {
                return Err(Failure::Input(Error::Input(
                    "truth tables need a two-valued formula".into(),
                )));
            }
            if file.algebra.is_some() || !file.unaries.is_empty() {
                let values: Vec<usize> = tt.values().iter().map(|&b| b as usize).collect();
                let mut sem = file.semantics()?;
                sem.arity = tt.arity();
                return Ok(sem.first_mismatch(&file.formula, &values)?.map(render));
            }
            Ok(verify_equiv(&file.formula, &tt)?.map(render))
        }
    }
}
