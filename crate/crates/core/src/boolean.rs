//! Boolean functions as implication chains of monotone parts.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::ApproximationAlgebra;
use crate::decompose::{decompose, Strategy};
use crate::error::{Error, FormulaError, TableError};
use crate::formula::{BinOp, Formula, Semantics};
use crate::order::{Poset, PosetMap, MAX_CUBE_ARITY};

/// Truth table of an `n`-ary Boolean function; index `i` has `x_1` as its
/// most significant bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    values: Vec<bool>,
}

impl TruthTable {
    pub fn new(values: Vec<bool>) -> Result<Self, TableError> {
        let len = values.len();
        let arity = len.trailing_zeros() as usize;
        if !len.is_power_of_two() || !(1..=MAX_CUBE_ARITY).contains(&arity) {
            return Err(TableError::BadLength(len));
        }
        Ok(TruthTable { arity, values })
    }

    pub fn from_fn(arity: usize, f: impl Fn(usize) -> bool) -> Result<Self, TableError> {
        if !(1..=MAX_CUBE_ARITY).contains(&arity) {
            return Err(TableError::BadLength(1 << arity.min(31)));
        }
        Self::new((0..1usize << arity).map(f).collect())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn get(&self, i: usize) -> bool {
        self.values[i]
    }

    pub fn ones(&self) -> usize {
        self.values.iter().filter(|&&v| v).count()
    }

    pub fn is_monotone(&self) -> bool {
        (0..self.values.len())
            .all(|i| !self.values[i] || (0..self.arity).all(|b| self.values[i | 1 << b]))
    }

    pub fn complement(&self) -> TruthTable {
        TruthTable {
            arity: self.arity,
            values: self.values.iter().map(|v| !v).collect(),
        }
    }

    /// `x ↦ ¬f(¬x)`.
    pub fn dual(&self) -> TruthTable {
        let mask = self.values.len() - 1;
        TruthTable {
            arity: self.arity,
            values: (0..self.values.len())
                .map(|i| !self.values[i ^ mask])
                .collect(),
        }
    }

    pub fn to_map(&self) -> Result<PosetMap, Error> {
        let cube = Arc::new(Poset::boolean_cube(self.arity)?);
        let levels = Arc::new(Poset::chain(2)?);
        Ok(PosetMap::new(
            cube,
            levels,
            self.values.iter().map(|&v| v as usize).collect(),
        )?)
    }

    pub fn from_map(map: &PosetMap) -> Result<Self, TableError> {
        if map.domain().cube_arity().is_none() || map.codomain().len() != 2 {
            return Err(TableError::BadLength(map.table().len()));
        }
        Self::new(map.table().iter().map(|&v| v == 1).collect())
    }

    /// Evaluates a two-valued formula at every point.
    pub fn of_formula(f: &Formula, arity: usize) -> Result<Self, Error> {
        let sem = Semantics::classical(arity);
        let values = sem.table_of(f)?.into_iter().map(|v| v == 1).collect();
        Ok(Self::new(values)?)
    }

    /// Parses the `n=<arity>` / value-string file format, or its JSON form
    /// `{"n": 2, "values": "0110"}`. A bare value string is accepted too.
    pub fn parse_file(text: &str) -> Result<Self, Error> {
        let trimmed = text.trim();
        let (declared, body) = if trimmed.starts_with('{') {
            let file: TruthTableFile = serde_json::from_str(trimmed)?;
            (Some(file.n), file.values)
        } else {
            let mut lines = trimmed.lines().map(str::trim).filter(|l| !l.is_empty());
            let first = lines.next().unwrap_or("");
            match first.strip_prefix("n=") {
                Some(n) => {
                    let n = n
                        .parse()
                        .map_err(|_| Error::Input(format!("bad arity line `{first}`")))?;
                    (Some(n), lines.collect::<String>())
                }
                None => (None, trimmed.to_string()),
            }
        };
        let tt: TruthTable = body.parse()?;
        match declared {
            Some(n) if n != tt.arity => Err(TableError::BadLength(tt.values.len()).into()),
            _ => Ok(tt),
        }
    }
}

impl FromStr for TruthTable {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, TableError> {
        let values = s
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(TableError::BadChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(values)
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.values {
            f.write_str(if v { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TruthTableFile {
    n: usize,
    values: String,
}

/// An implication chain `((P_k → P_{k-1}) → …) → P_1` of monotone parts,
/// stored innermost first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inf {
    pub parts: Vec<TruthTable>,
}

impl Inf {
    pub fn arrows(&self) -> usize {
        self.parts.len() - 1
    }

    /// Evaluates the chain back into a table.
    pub fn recompose(&self) -> TruthTable {
        let mut acc = self.parts[0].clone();
        for part in &self.parts[1..] {
            acc.values = acc
                .values
                .iter()
                .zip(&part.values)
                .map(|(&a, &b)| !a || b)
                .collect();
        }
        acc
    }
}

#[derive(Serialize)]
struct InfJson<'a> {
    parts: Vec<String>,
    arrows: usize,
    formula: &'a str,
}

impl Inf {
    pub fn to_json(&self, formula: &Formula) -> serde_json::Value {
        let formula = formula.to_string();
        serde_json::to_value(InfJson {
            parts: self.parts.iter().map(ToString::to_string).collect(),
            arrows: self.arrows(),
            formula: &formula,
        })
        .expect("plain data")
    }
}

/// Runs the dual decomposition under `boolean-dual` and returns its parts
/// innermost first.
pub fn synth_inf(tt: &TruthTable) -> Result<Inf, Error> {
    let alg = ApproximationAlgebra::builtin("boolean-dual", 2)?;
    let psi = tt.to_map()?;
    let (form, _) = decompose(&psi, &alg, Strategy::T1)?;
    let parts = form
        .parts
        .iter()
        .rev()
        .map(TruthTable::from_map)
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(p) = parts.iter().find(|p| !p.is_monotone()) {
        return Err(TableError::NotMonotone(p.to_string()).into());
    }
    let inf = Inf { parts };
    let back = inf.recompose();
    if back != *tt {
        let i = (0..back.values.len())
            .find(|&i| back.values[i] != tt.values[i])
            .expect("differs");
        return Err(FormulaError::NotEquivalent {
            point: bits(i, tt.arity),
        }
        .into());
    }
    Ok(inf)
}

fn bits(i: usize, n: usize) -> Vec<usize> {
    (0..n).map(|j| i >> (n - 1 - j) & 1).collect()
}

/// Join of positive monomials over the minimal true points.
pub fn monotone_dnf(part: &TruthTable) -> Result<Formula, TableError> {
    if !part.is_monotone() {
        return Err(TableError::NotMonotone(part.to_string()));
    }
    let n = part.arity;
    let minimal: Vec<usize> = (0..part.values.len())
        .filter(|&i| {
            part.values[i] && (0..n).all(|b| i >> b & 1 == 0 || !part.values[i & !(1 << b)])
        })
        .collect();
    let mut monomials: Vec<Vec<usize>> = minimal
        .iter()
        .map(|&i| (1..=n).filter(|&j| i >> (n - j) & 1 == 1).collect())
        .collect();
    monomials.sort();
    let terms = monomials.into_iter().map(|vars| {
        Formula::fold(BinOp::And, vars.into_iter().map(Formula::Var)).unwrap_or(Formula::Const(1))
    });
    Ok(Formula::fold(BinOp::Or, terms).unwrap_or(Formula::Const(0)))
}

/// The implication chain of [`synth_inf`] with each part written as its
/// monotone DNF, checked against `tt`.
pub fn inf_formula(tt: &TruthTable) -> Result<(Inf, Formula), Error> {
    let inf = synth_inf(tt)?;
    let grounded = inf
        .parts
        .iter()
        .map(monotone_dnf)
        .collect::<Result<Vec<_>, _>>()?;
    let formula = Formula::fold(BinOp::Imp, grounded).expect("at least one part");
    if let Some(point) = verify_equiv(&formula, tt)? {
        return Err(FormulaError::NotEquivalent { point }.into());
    }
    Ok((inf, formula))
}

/// First assignment (as bits, `x_1` first) where `f` and `tt` disagree.
pub fn verify_equiv(f: &Formula, tt: &TruthTable) -> Result<Option<Vec<usize>>, FormulaError> {
    if f.max_var() > tt.arity {
        return Err(FormulaError::ArityMismatch {
            expected: tt.arity,
            found: f.max_var(),
        });
    }
    let table: Vec<usize> = tt.values.iter().map(|&v| v as usize).collect();
    Semantics::classical(tt.arity).first_mismatch(f, &table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BaselineSizes {
    pub dnf_terms: usize,
    pub cnf_clauses: usize,
    pub inf_arrows: usize,
    pub inf_literals: usize,
}

/// Minterm/maxterm counts next to the INF's arrow and literal counts.
pub fn baseline_sizes(tt: &TruthTable) -> Result<BaselineSizes, Error> {
    let (inf, formula) = inf_formula(tt)?;
    Ok(BaselineSizes {
        dnf_terms: tt.ones(),
        cnf_clauses: tt.values.len() - tt.ones(),
        inf_arrows: inf.arrows(),
        inf_literals: formula.literal_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tt(s: &str) -> TruthTable {
        s.parse().unwrap()
    }

    #[test]
    fn parsing() {
        assert_eq!(tt("0110").arity(), 2);
        assert_eq!("011".parse::<TruthTable>(), Err(TableError::BadLength(3)));
        assert_eq!("01x0".parse::<TruthTable>(), Err(TableError::BadChar('x')));
        assert_eq!("1".parse::<TruthTable>(), Err(TableError::BadLength(1)));
        assert_eq!(TruthTable::parse_file("n=2\n0110\n").unwrap(), tt("0110"));
        assert_eq!(
            TruthTable::parse_file(r#"{"n":2,"values":"0001"}"#).unwrap(),
            tt("0001")
        );
        assert!(TruthTable::parse_file("n=3\n0110").is_err());
    }

    #[test]
    fn inf_examples() {
        let xor = synth_inf(&tt("0110")).unwrap();
        assert_eq!(xor.parts, vec![tt("0111"), tt("0001"), tt("0000")]);
        assert_eq!(xor.arrows(), 2);
        assert_eq!(synth_inf(&tt("0001")).unwrap().parts, vec![tt("0001")]);
        assert_eq!(
            synth_inf(&tt("10")).unwrap().parts,
            vec![tt("01"), tt("00")]
        );
    }

    #[test]
    fn dnf_examples() {
        assert_eq!(monotone_dnf(&tt("0111")).unwrap().to_string(), "(or x1 x2)");
        assert_eq!(
            monotone_dnf(&tt("0001")).unwrap().to_string(),
            "(and x1 x2)"
        );
        assert_eq!(monotone_dnf(&tt("0000")).unwrap().to_string(), "lit:0");
        assert_eq!(monotone_dnf(&tt("1111")).unwrap().to_string(), "lit:1");
        assert!(monotone_dnf(&tt("0110")).is_err());
    }

    #[test]
    fn formula_examples() {
        let (_, f) = inf_formula(&tt("0110")).unwrap();
        assert_eq!(f.to_string(), "(imp (imp (or x1 x2) (and x1 x2)) lit:0)");
        assert_eq!(
            inf_formula(&tt("0001")).unwrap().1.to_string(),
            "(and x1 x2)"
        );
        assert_eq!(inf_formula(&tt("1111")).unwrap().1.to_string(), "lit:1");
    }

    #[test]
    fn equivalence_witness() {
        let (_, f) = inf_formula(&tt("0110")).unwrap();
        assert_eq!(verify_equiv(&f, &tt("0110")).unwrap(), None);
        assert_eq!(verify_equiv(&f, &tt("0111")).unwrap(), Some(vec![1, 1]));
        assert_eq!(verify_equiv(&Formula::Const(1), &tt("1111")).unwrap(), None);
        assert!(matches!(
            verify_equiv(&Formula::Var(3), &tt("0110")),
            Err(FormulaError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn baselines() {
        let xor = baseline_sizes(&tt("0110")).unwrap();
        assert_eq!((xor.dnf_terms, xor.cnf_clauses, xor.inf_arrows), (2, 2, 2));
        let and = baseline_sizes(&tt("0001")).unwrap();
        assert_eq!((and.dnf_terms, and.inf_arrows), (1, 0));
        assert_eq!(baseline_sizes(&tt("0000")).unwrap().dnf_terms, 0);
    }

    #[test]
    fn dual_function() {
        assert_eq!(tt("0001").dual(), tt("0111"));
        assert_eq!(tt("0110").dual(), tt("1001"));
    }
}
