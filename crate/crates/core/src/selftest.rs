//! The acceptance suite: ten criteria, each checked against the brute-force
//! references in [`crate::oracle`].

#![allow(clippy::needless_range_loop)]

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{ApproximationAlgebra, AxiomSystem};
use crate::boolean::{inf_formula, TruthTable};
use crate::decompose::{decompose, decompose_traced, DecomposeOptions, Strategy};
use crate::error::DecomposeError;
use crate::formula::{BinOp, Formula};
use crate::oracle::{self, Interp};
use crate::order::{Poset, PosetMap};
use crate::theta::{decompose_theta, synthesize_mv, MvTable, ThetaKind};

/// Time budgets per criterion.
pub const BUDGETS: [Duration; 10] = [
    Duration::from_secs(1),
    Duration::from_secs(60),
    Duration::from_secs(1),
    Duration::from_secs(30),
    Duration::from_secs(30),
    Duration::from_secs(30),
    Duration::from_secs(10),
    Duration::from_secs(10),
    Duration::from_secs(10),
    Duration::from_secs(5),
];

pub const RANDOM_POSETS: usize = 200;
pub const RANDOM_POSET_MAX: usize = 10;
pub const RANDOM_CHAIN_MAX: usize = 5;
pub const MV_RANDOM: usize = 500;
pub const EMBED_POSETS: usize = 100;
pub const EMBED_POSET_MAX: usize = 8;

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    /// Largest arity for the exhaustive Boolean suite.
    pub max_n: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, max_n: 4 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
    pub budget_millis: u128,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<28} {} ({} ms)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.millis
        )
    }
}

const NAMES: [&str; 10] = [
    "boolean algebra axioms",
    "implicative normal form n<=4",
    "xor witness",
    "random posets, chain-primal",
    "duality",
    "strategies",
    "formula decomposition n=3",
    "many-valued synthesis",
    "cube embedding",
    "chain algebras",
];

/// Runs one criterion (1-based).
pub fn run(id: usize, cfg: &Config) -> CriterionResult {
    let start = Instant::now();
    let outcome: Result<String, String> = match id {
        1 => boolean_axioms(),
        2 => inf_all(cfg.max_n),
        3 => xor_witness(),
        4 => random_chain_primal(cfg.seed),
        5 => duality(cfg.max_n.min(3)),
        6 => strategies(cfg.seed),
        7 => theta_n3(),
        8 => many_valued(cfg.seed),
        9 => embeddings(cfg.seed),
        10 => chain_algebras(),
        _ => Err(format!("no criterion {id}")),
    };
    let elapsed = start.elapsed();
    let budget = BUDGETS.get(id.wrapping_sub(1)).copied().unwrap_or_default();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if passed && elapsed > budget {
        passed = false;
        detail = format!("{detail}; over the {} ms budget", budget.as_millis());
    }
    CriterionResult {
        id,
        name: NAMES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed,
        detail,
        millis: elapsed.as_millis(),
        budget_millis: budget.as_millis(),
    }
}

pub fn run_all(cfg: &Config) -> Vec<CriterionResult> {
    (1..=10).map(|id| run(id, cfg)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

fn all_tables(n: usize) -> impl ParallelIterator<Item = TruthTable> {
    let len = 1usize << n;
    (0..1u64 << len).into_par_iter().map(move |bits| {
        TruthTable::from_fn(n, |i| bits >> (len - 1 - i) & 1 == 1).expect("valid arity")
    })
}

fn check_systems(alg: &ApproximationAlgebra, systems: &[AxiomSystem]) -> Result<usize, String> {
    let mut checked = 0;
    for &sys in systems {
        let report = alg.check_axioms(sys, None).map_err(err)?;
        let failed: Vec<String> = report.failures().map(|v| v.axiom.clone()).collect();
        ensure(failed.is_empty(), || {
            format!("{} fails {sys}: {}", alg.name(), failed.join(", "))
        })?;
        checked += report.axioms.len();
    }
    Ok(checked)
}

fn boolean_axioms() -> Result<String, String> {
    let dual = ApproximationAlgebra::from_selector("boolean-dual").map_err(err)?;
    let primal = ApproximationAlgebra::from_selector("boolean-primal").map_err(err)?;
    let a = check_systems(&dual, &[AxiomSystem::AStar, AxiomSystem::BPlusStar])?;
    let b = check_systems(&primal, &[AxiomSystem::A, AxiomSystem::B])?;
    Ok(format!("{} axiom instances hold", a + b))
}

fn inf_all(max_n: usize) -> Result<String, String> {
    let mut total = 0usize;
    let mut max_arrows = 0usize;
    for n in 1..=max_n {
        let outcome: Vec<Result<usize, String>> = all_tables(n)
            .map(|tt| {
                let (inf, formula) = inf_formula(&tt).map_err(|e| format!("{tt}: {e}"))?;
                ensure(inf.parts.iter().all(TruthTable::is_monotone), || {
                    format!("{tt}: non-monotone part")
                })?;
                ensure(inf.arrows() <= n, || {
                    format!("{tt}: {} arrows", inf.arrows())
                })?;
                ensure(inf.recompose() == tt, || {
                    format!("{tt}: parts do not recompose")
                })?;
                let interp = classical();
                let ok = oracle::points(2, n)
                    .iter()
                    .enumerate()
                    .all(|(i, p)| interp.eval(&formula, p) == Some(tt.get(i) as usize));
                ensure(ok, || format!("{tt}: formula differs"))?;
                ensure((inf.arrows() == 0) == tt.is_monotone(), || {
                    format!("{tt}: arrows vs monotonicity")
                })?;
                Ok(inf.arrows())
            })
            .collect();
        for r in outcome {
            max_arrows = max_arrows.max(r?);
            total += 1;
        }
    }
    Ok(format!("{total} functions, max arrows {max_arrows}"))
}

fn classical() -> Interp<'static> {
    Interp {
        q: 2,
        boxminus: &|a, b| a & (1 - b),
        boxplus: &|a, b| a | b,
    }
}

fn xor_witness() -> Result<String, String> {
    let tt: TruthTable = "0110".parse().map_err(err)?;
    let (inf, formula) = inf_formula(&tt).map_err(err)?;
    let expected = Formula::parse("(imp (imp (or x1 x2) (and x1 x2)) lit:0)").map_err(err)?;
    let interp = classical();
    for (i, p) in oracle::points(2, 2).iter().enumerate() {
        let want = tt.get(i) as usize;
        ensure(interp.eval(&formula, p) == Some(want), || {
            format!("synthesized formula wrong at {p:?}")
        })?;
        ensure(interp.eval(&expected, p) == Some(want), || {
            format!("reference formula wrong at {p:?}")
        })?;
    }
    ensure(inf.arrows() == 2, || format!("{} arrows", inf.arrows()))?;
    Ok(format!("{formula}, 2 arrows"))
}

struct Case {
    psi: PosetMap,
    alg_q: usize,
}

fn random_cases(seed: u64) -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..RANDOM_POSETS)
        .map(|_| {
            let m = Arc::new(oracle::random_poset(&mut rng, RANDOM_POSET_MAX));
            let q = rng.gen_range(2..=RANDOM_CHAIN_MAX);
            let table = oracle::random_table(&mut rng, m.len(), q);
            let levels = Arc::new(Poset::chain(q).expect("valid chain"));
            Case {
                psi: PosetMap::new(m, levels, table).expect("table fits"),
                alg_q: q,
            }
        })
        .collect()
}

fn random_chain_primal(seed: u64) -> Result<String, String> {
    let cases = random_cases(seed);
    let results: Vec<Result<bool, String>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, case)| {
            let alg = ApproximationAlgebra::builtin("chain-primal", case.alg_q).map_err(err)?;
            let (form, _) =
                decompose(&case.psi, &alg, Strategy::T1).map_err(|e| format!("case {i}: {e}"))?;
            let m = case.psi.domain();
            let rel = oracle::relation(m);
            let lrel = oracle::relation(alg.levels());
            let parts: Vec<Vec<usize>> = form.parts.iter().map(|p| p.table().to_vec()).collect();
            ensure(oracle::recompose(&alg, &parts) == case.psi.table(), || {
                format!("case {i}: recomposition")
            })?;
            ensure(
                parts
                    .iter()
                    .all(|p| oracle::nonmono_pairs(&rel, &lrel, p).is_empty()),
                || format!("case {i}: non-monotone part"),
            )?;
            ensure(form.compose_ops() <= oracle::longest_chain(&rel), || {
                format!("case {i}: {} compositions", form.compose_ops())
            })?;
            let domains: Vec<Vec<(usize, usize)>> = oracle::residuals(&alg, &parts)
                .iter()
                .map(|r| oracle::nonmono_pairs(&rel, &lrel, r))
                .collect();
            let shrinking = domains.windows(2).all(|w| {
                w[1].len() < w[0].len() && w[1].iter().all(|p| w[0].binary_search(p).is_ok())
            });
            Ok(shrinking)
        })
        .collect();
    let mut shrink_ok = 0;
    for r in results {
        shrink_ok += r? as usize;
    }
    let detail = format!(
        "{n}/{n} verify; n(psi_i) strictly shrinks in {shrink_ok}/{n}",
        n = cases.len()
    );
    if shrink_ok == cases.len() {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn duality(max_n: usize) -> Result<String, String> {
    let alg = ApproximationAlgebra::from_selector("boolean-dual").map_err(err)?;
    let mut total = 0;
    for n in 1..=max_n {
        let outcome: Vec<Result<(), String>> = all_tables(n)
            .map(|tt| {
                let psi = tt.to_map().map_err(err)?;
                let (form, _) =
                    decompose(&psi, &alg, Strategy::T1).map_err(|e| format!("{tt}: {e}"))?;
                let engine: Vec<Vec<usize>> =
                    form.parts.iter().map(|p| p.table().to_vec()).collect();
                let direct =
                    oracle::dual_decompose(&psi, &alg).map_err(|e| format!("{tt}: {e}"))?;
                ensure(engine == direct, || {
                    format!("{tt}: dual-path parts differ from direct parts")
                })
            })
            .collect();
        for r in outcome {
            r?;
            total += 1;
        }
    }
    Ok(format!("{total} functions agree part for part"))
}

/// The diamond `bot < a, b < top`, listed so that `b` is the first lower
/// cover of `top`.
pub fn diamond_counterexample() -> (PosetMap, ApproximationAlgebra) {
    let m = Poset::build(
        &["bot", "b", "a", "top"],
        &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
    )
    .expect("diamond");
    let alg = ApproximationAlgebra::builtin("chain-primal", 3).expect("builtin");
    let psi =
        PosetMap::new(Arc::new(m), Arc::clone(alg.levels()), vec![0, 0, 2, 1]).expect("table fits");
    (psi, alg)
}

fn strategies(seed: u64) -> Result<String, String> {
    let cases = random_cases(seed);
    let results: Vec<Result<usize, String>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, case)| {
            let mut compared = 0;
            for name in ["chain-primal", "chain-dual"] {
                let alg = ApproximationAlgebra::builtin(name, case.alg_q).map_err(err)?;
                ensure(alg.plus_is_aci(), || format!("{name}: ⊞ not ACI"))?;
                let t1 = decompose(&case.psi, &alg, Strategy::T1).map(|r| r.0);
                let t2 = decompose(&case.psi, &alg, Strategy::T2Fold).map(|r| r.0);
                match (&t1, &t2) {
                    (Ok(a), Ok(b)) => ensure(a.parts == b.parts, || {
                        format!("case {i} {name}: t2-fold differs")
                    })?,
                    (
                        Err(DecomposeError::NoProgress { .. }),
                        Err(DecomposeError::NoProgress { .. }),
                    ) => {}
                    _ => {
                        return Err(format!(
                            "case {i} {name}: t1 {:?} vs t2-fold {:?}",
                            t1.err(),
                            t2.err()
                        ))
                    }
                }
                compared += 1;
            }
            Ok(compared)
        })
        .collect();
    let mut compared = 0;
    for r in results {
        compared += r?;
    }
    let (psi, alg) = diamond_counterexample();
    let opts = DecomposeOptions {
        strategy: Strategy::T2Chain,
        track_pairs: Some(true),
    };
    match decompose_traced(&psi, &alg, opts).0 {
        Err(DecomposeError::NonMonotonePart { low, high, .. }) if low == "a" && high == "top" => {}
        other => {
            return Err(format!(
                "diamond: expected NonMonotonePart (a, top), got {other:?}"
            ))
        }
    }
    Ok(format!(
        "{compared} runs agree; diamond gives NonMonotonePart (a, top)"
    ))
}

fn theta_n3() -> Result<String, String> {
    let alg = ApproximationAlgebra::from_selector("boolean-primal").map_err(err)?;
    let outcome: Vec<Result<usize, String>> = all_tables(3)
        .map(|tt| {
            let psi = tt.to_map().map_err(err)?;
            let form = decompose_theta(&psi, &alg, None).map_err(|e| format!("{tt}: {e}"))?;
            ensure(
                form.operators()
                    .iter()
                    .all(|op| matches!(op, BinOp::BoxMinus | BinOp::BoxPlus)),
                || format!("{tt}: skeleton uses {:?}", form.operators()),
            )?;
            ensure(form.skeleton.unary_names().is_empty(), || {
                format!("{tt}: unary in skeleton")
            })?;
            let m = psi.domain();
            for leaf in &form.substitution {
                let ThetaKind::Special { x, .. } = leaf.kind() else {
                    return Err(format!("{tt}: non-special leaf"));
                };
                let a = m.coords(m.index_of(x).map_err(err)?).expect("cube");
                let monomial: Vec<usize> = oracle::points(2, 3)
                    .iter()
                    .map(|p| a.iter().zip(p).all(|(&need, &have)| have >= need) as usize)
                    .collect();
                ensure(leaf.map().table() == monomial, || {
                    format!("{tt}: leaf {} is not a monomial", leaf.label())
                })?;
            }
            let grounded = form
                .grounded
                .as_ref()
                .ok_or_else(|| format!("{tt}: not grounded"))?;
            let interp = classical();
            let ok = oracle::points(2, 3)
                .iter()
                .enumerate()
                .all(|(i, p)| interp.eval(grounded, p) == Some(tt.get(i) as usize));
            ensure(ok, || format!("{tt}: grounded formula differs"))?;
            Ok(form.substitution.len())
        })
        .collect();
    let mut leaves = 0;
    let mut count = 0;
    for r in outcome {
        leaves += r?;
        count += 1;
    }
    Ok(format!("{count} functions, {leaves} leaves in total"))
}

fn check_mv(table: &MvTable) -> Result<(), String> {
    let file = synthesize_mv(table).map_err(err)?;
    let minus = |a: usize, b: usize| a.saturating_sub(b);
    let plus = |a: usize, b: usize| a.max(b);
    let interp = Interp {
        q: table.q,
        boxminus: &minus,
        boxplus: &plus,
    };
    for (name, declared) in &file.unaries {
        let own: Vec<Option<usize>> = (0..table.q)
            .map(|v| interp.eval(&Formula::unary(name.clone(), Formula::Var(1)), &[v]))
            .collect();
        ensure(
            own.iter().zip(declared).all(|(a, &b)| *a == Some(b)),
            || format!("unary {name} table {declared:?}"),
        )?;
    }
    for (i, p) in oracle::points(table.q, table.n).iter().enumerate() {
        ensure(
            interp.eval(&file.formula, p) == Some(table.values[i]),
            || format!("{:?} differs at {p:?}", table.values),
        )?;
    }
    if table.q == 2 {
        ensure(file.formula.unary_names().is_empty(), || {
            "unary in a two-valued formula".into()
        })?;
        let classic = TruthTable::of_formula(&file.formula, table.n).map_err(err)?;
        let want: Vec<bool> = table.values.iter().map(|&v| v == 1).collect();
        ensure(classic.values() == want.as_slice(), || {
            "classical evaluation differs".into()
        })?;
    }
    Ok(())
}

fn many_valued(seed: u64) -> Result<String, String> {
    let mut tables = Vec::new();
    for code in 0..27usize {
        tables.push(MvTable::new(3, 1, vec![code / 9, code / 3 % 3, code % 3]).map_err(err)?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MV_RANDOM {
        tables.push(MvTable::new(3, 2, oracle::random_table(&mut rng, 9, 3)).map_err(err)?);
    }
    for n in 1..=2usize {
        for code in 0..1usize << (1 << n) {
            let values = (0..1usize << n).map(|i| code >> i & 1).collect();
            tables.push(MvTable::new(2, n, values).map_err(err)?);
        }
    }
    let results: Vec<Result<(), String>> = tables.par_iter().map(check_mv).collect();
    for r in results {
        r?;
    }
    Ok(format!(
        "{} tables (27 unary, {MV_RANDOM} binary, 20 two-valued)",
        tables.len()
    ))
}

fn embeddings(seed: u64) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..EMBED_POSETS {
        let m = Arc::new(oracle::random_poset(&mut rng, EMBED_POSET_MAX));
        let f = m.embed_into_cube().map_err(|e| format!("poset {i}: {e}"))?;
        let n = m.len();
        ensure(f.codomain().cube_arity() == Some(n), || {
            format!("poset {i}: wrong cube")
        })?;
        let rel = oracle::relation(&m);
        let crel = |a: usize, b: usize| a & b == a;
        for x in 0..n {
            for y in 0..n {
                ensure(rel[x][y] == crel(f.get(x), f.get(y)), || {
                    format!("poset {i}: ({}, {}) not reflected", m.id(x), m.id(y))
                })?;
            }
        }
    }
    Ok(format!("{EMBED_POSETS} posets embed"))
}

fn chain_algebras() -> Result<String, String> {
    let mut checked = 0;
    for q in 3..=5 {
        let primal = ApproximationAlgebra::builtin("chain-primal", q).map_err(err)?;
        let dual = ApproximationAlgebra::builtin("chain-dual", q).map_err(err)?;
        checked += check_systems(&primal, &[AxiomSystem::A, AxiomSystem::B])?;
        checked += check_systems(&dual, &[AxiomSystem::AStar, AxiomSystem::BStar])?;
    }
    for (chain, boolean) in [
        ("chain-primal:2", "boolean-primal"),
        ("chain-dual:2", "boolean-dual"),
    ] {
        let a = ApproximationAlgebra::from_selector(chain).map_err(err)?;
        let b = ApproximationAlgebra::from_selector(boolean).map_err(err)?;
        ensure(
            a.minus_table() == b.minus_table()
                && a.plus_table() == b.plus_table()
                && a.dot_table() == b.dot_table(),
            || format!("{chain} differs from {boolean}"),
        )?;
    }
    Ok(format!(
        "{checked} axiom instances hold; q=2 matches the Boolean tables"
    ))
}

/// Renders a result list as the acceptance report.
pub fn report(results: &[CriterionResult]) -> String {
    results.iter().map(|r| format!("{r}\n")).collect()
}
