//! Browser bindings. Every entry point takes plain strings and returns a
//! JSON string: either the result object or `{"error": "..."}`.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use monodec::algebra::AxiomSystem;
use monodec::boolean::{baseline_sizes, inf_formula, TruthTable};
use monodec::decompose::{decompose, Strategy};
use monodec::error::Error;
use monodec::io::{AlgebraRef, FormFile, MapFile};
use monodec::theta::{synthesize_mv, MvTable};

fn respond(r: Result<Value, Error>) -> String {
    let v = r.unwrap_or_else(|e| json!({ "error": e.to_string() }));
    serde_json::to_string_pretty(&v).expect("plain data")
}

fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

/// Implication chain for a truth table such as `0110`.
#[wasm_bindgen]
pub fn inf(table: &str) -> String {
    respond((|| {
        let tt: TruthTable = table.trim().parse()?;
        let (chain, formula) = inf_formula(&tt)?;
        let mut v = chain.to_json(&formula);
        v["baseline"] = serde_json::to_value(baseline_sizes(&tt)?)?;
        Ok(v)
    })())
}

/// Formula for a many-valued table given as whitespace or comma separated
/// levels, `x_1` most significant.
#[wasm_bindgen]
pub fn mv(q: usize, n: usize, values: &str) -> String {
    respond((|| {
        let values = values
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| input(format!("bad level `{s}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let file = synthesize_mv(&MvTable::new(q, n, values)?)?;
        Ok(json!({
            "formula": file.formula.to_string(),
            "size": file.formula.size(),
            "file": file.to_string(),
        }))
    })())
}

/// Decomposes a map file (JSON text) with a built-in algebra selector.
#[wasm_bindgen]
pub fn decompose_map(map_json: &str, algebra: &str, strategy: &str) -> String {
    respond((|| {
        let alg = AlgebraRef::Named(algebra.to_string()).resolve()?;
        let strategy: Strategy = strategy.parse().map_err(input)?;
        let map: MapFile = serde_json::from_str(map_json)?;
        let psi = map.resolve(Some(alg.levels()))?;
        let (form, _) = decompose(&psi, &alg, strategy)?;
        let stats = form.stats();
        let mut v = serde_json::to_value(FormFile::of(&form, &alg))?;
        v["stats"] = serde_json::to_value(stats)?;
        Ok(v)
    })())
}

/// Axiom report for a built-in algebra.
#[wasm_bindgen]
pub fn check_axioms(algebra: &str, system: &str) -> String {
    respond((|| {
        let alg = AlgebraRef::Named(algebra.to_string()).resolve()?;
        let system: AxiomSystem = system.parse()?;
        Ok(serde_json::to_value(alg.check_axioms(system, None)?)?)
    })())
}
