//! Approximation algebras: a level poset `L` with a peel operation `⊟`, an
//! upper-bound aggregation `⊞` (binary table plus a set rule) and a neutral
//! residual map `⊙`, together with exhaustive checkers for the axiom
//! systems the decompositions rely on.
//!
//! Dual (starred) systems are checked by dualizing: reversing `L`, swapping
//! the arguments of `⊟*` and flipping the set rule turns every starred axiom
//! into its unstarred counterpart, so one checker covers both.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::order::Poset;

/// Largest `|L|` for which all subsets are enumerated under axiom 2.
pub const MAX_SUBSET_CHECK: usize = 12;
/// Largest level set an algebra may have.
pub const MAX_LEVELS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Primal,
    Dual,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Primal => Orientation::Dual,
            Orientation::Dual => Orientation::Primal,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Primal => "primal",
            Orientation::Dual => "dual",
        })
    }
}

impl FromStr for Orientation {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "primal" => Ok(Orientation::Primal),
            "dual" => Ok(Orientation::Dual),
            other => Err(AlgebraError::UnknownName(other.to_string())),
        }
    }
}

/// How `⊞` acts on a finite set of levels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetRule {
    /// Order supremum in `L`.
    Join,
    /// Order infimum in `L`.
    Meet,
    /// Fold of the binary table over the distinct values in level order.
    Fold,
}

impl SetRule {
    fn flip(self) -> Self {
        match self {
            SetRule::Join => SetRule::Meet,
            SetRule::Meet => SetRule::Join,
            SetRule::Fold => SetRule::Fold,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxiomSystem {
    #[serde(rename = "A")]
    A,
    #[serde(rename = "A*")]
    AStar,
    #[serde(rename = "B")]
    B,
    #[serde(rename = "B*")]
    BStar,
    #[serde(rename = "B+")]
    BPlus,
    #[serde(rename = "B+*")]
    BPlusStar,
}

impl AxiomSystem {
    pub const ALL: [AxiomSystem; 6] = [
        AxiomSystem::A,
        AxiomSystem::AStar,
        AxiomSystem::B,
        AxiomSystem::BStar,
        AxiomSystem::BPlus,
        AxiomSystem::BPlusStar,
    ];

    pub fn is_starred(self) -> bool {
        matches!(
            self,
            AxiomSystem::AStar | AxiomSystem::BStar | AxiomSystem::BPlusStar
        )
    }

    /// The same system with the star toggled.
    pub fn dual(self) -> Self {
        match self {
            AxiomSystem::A => AxiomSystem::AStar,
            AxiomSystem::AStar => AxiomSystem::A,
            AxiomSystem::B => AxiomSystem::BStar,
            AxiomSystem::BStar => AxiomSystem::B,
            AxiomSystem::BPlus => AxiomSystem::BPlusStar,
            AxiomSystem::BPlusStar => AxiomSystem::BPlus,
        }
    }

    fn unstarred(self) -> Self {
        if self.is_starred() {
            self.dual()
        } else {
            self
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomSystem::A => "A",
            AxiomSystem::AStar => "A*",
            AxiomSystem::B => "B",
            AxiomSystem::BStar => "B*",
            AxiomSystem::BPlus => "B+",
            AxiomSystem::BPlusStar => "B+*",
        }
    }

    /// The system needed by the decomposition for a given orientation.
    pub fn for_decomposition(orientation: Orientation, binary_plus: bool) -> Self {
        match (orientation, binary_plus) {
            (Orientation::Primal, false) => AxiomSystem::A,
            (Orientation::Primal, true) => AxiomSystem::B,
            (Orientation::Dual, false) => AxiomSystem::AStar,
            (Orientation::Dual, true) => AxiomSystem::BStar,
        }
    }
}

impl fmt::Display for AxiomSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AxiomSystem {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomSystem::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| AlgebraError::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Axiom 1 on an unspecified or large domain poset: every finite poset
    /// satisfies it.
    HoldsByFiniteness,
    /// `|L|` too large for subset enumeration; only sets of size <= 2 were
    /// enumerated.
    PairsOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Level (or domain element) ids involved, in the order the note uses.
    pub values: Vec<String>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub axiom: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub system: AxiomSystem,
    pub axioms: Vec<AxiomVerdict>,
    /// Whether the binary `⊞` is associative, commutative and idempotent.
    pub plus_is_aci: bool,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|v| v.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomVerdict> {
        self.axioms.iter().filter(|v| v.status == Status::Fail)
    }

    pub fn verdict(&self, axiom: &str) -> Option<&AxiomVerdict> {
        self.axioms.iter().find(|v| v.axiom == axiom)
    }
}

/// Operation tables over a finite level poset.
#[derive(Clone, Debug)]
pub struct ApproximationAlgebra {
    name: String,
    levels: Arc<Poset>,
    boxminus: Vec<usize>,
    boxplus: Vec<usize>,
    dot: Vec<usize>,
    set_rule: SetRule,
    orientation: Orientation,
    passed: BTreeSet<AxiomSystem>,
}

impl PartialEq for ApproximationAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.levels == other.levels
            && self.boxminus == other.boxminus
            && self.boxplus == other.boxplus
            && self.dot == other.dot
            && self.set_rule == other.set_rule
            && self.orientation == other.orientation
    }
}

impl ApproximationAlgebra {
    /// Built-in instances. `q` is ignored for the Boolean ones (which fix
    /// `q = 2`) and must lie in `2..=16` for chains.
    pub fn builtin(name: &str, q: usize) -> Result<Self, AlgebraError> {
        let (q, advertised): (usize, &[AxiomSystem]) = match name {
            "boolean-primal" => (2, &[AxiomSystem::A, AxiomSystem::B, AxiomSystem::BPlus]),
            "boolean-dual" => (
                2,
                &[
                    AxiomSystem::AStar,
                    AxiomSystem::BStar,
                    AxiomSystem::BPlusStar,
                ],
            ),
            "chain-primal" | "chain-dual" => {
                if !(2..=MAX_LEVELS).contains(&q) {
                    return Err(AlgebraError::ChainSizeOutOfRange(q));
                }
                if name == "chain-primal" {
                    (q, &[AxiomSystem::A, AxiomSystem::B, AxiomSystem::BPlus])
                } else {
                    (
                        q,
                        &[
                            AxiomSystem::AStar,
                            AxiomSystem::BStar,
                            AxiomSystem::BPlusStar,
                        ],
                    )
                }
            }
            other => return Err(AlgebraError::UnknownName(other.to_string())),
        };
        let top = q - 1;
        let square = |f: &dyn Fn(usize, usize) -> usize| -> Vec<usize> {
            (0..q * q).map(|i| f(i / q, i % q)).collect()
        };
        let (boxminus, boxplus, dot, set_rule, orientation) = match name {
            "boolean-primal" => (
                square(&|a, b| a & (1 - b)),
                square(&|a, b| a | b),
                vec![0; 2],
                SetRule::Join,
                Orientation::Primal,
            ),
            "boolean-dual" => (
                square(&|a, b| (1 - a) | b),
                square(&|a, b| a & b),
                vec![1; 2],
                SetRule::Meet,
                Orientation::Dual,
            ),
            "chain-primal" => (
                square(&|a, b| a.saturating_sub(b)),
                square(&|a, b| a.max(b)),
                vec![0; q],
                SetRule::Join,
                Orientation::Primal,
            ),
            _ => (
                square(&|a, b| top.min(top - a + b)),
                square(&|a, b| a.min(b)),
                vec![top; q],
                SetRule::Meet,
                Orientation::Dual,
            ),
        };
        let display = if name.starts_with("chain") {
            format!("{name}:{q}")
        } else {
            name.to_string()
        };
        let mut alg = ApproximationAlgebra {
            name: display,
            levels: Arc::new(Poset::chain(q)?),
            boxminus,
            boxplus,
            dot,
            set_rule,
            orientation,
            passed: BTreeSet::new(),
        };
        for &sys in advertised {
            let report = alg.certify(sys, None)?;
            debug_assert!(report.passed(), "built-in {} fails {}", alg.name, sys);
        }
        Ok(alg)
    }

    /// Resolves `boolean-primal`, `boolean-dual`, `chain-primal:q`,
    /// `chain-dual:q`.
    pub fn from_selector(selector: &str) -> Result<Self, AlgebraError> {
        match selector.split_once(':') {
            Some((name, q)) => {
                let q: usize = q
                    .parse()
                    .map_err(|_| AlgebraError::UnknownName(selector.to_string()))?;
                Self::builtin(name, q)
            }
            None if selector.starts_with("chain") => Err(AlgebraError::UnknownName(format!(
                "{selector} (chain algebras need a size, e.g. {selector}:4)"
            ))),
            None => Self::builtin(selector, 2),
        }
    }

    /// A user-supplied algebra on the chain `0 < .. < q-1`. The set rule is
    /// the fold of the binary `⊞`.
    pub fn from_tables(
        name: &str,
        q: usize,
        orientation: Orientation,
        boxminus: Vec<Vec<usize>>,
        boxplus: Vec<Vec<usize>>,
        dot: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        if !(1..=MAX_LEVELS).contains(&q) {
            return Err(AlgebraError::ChainSizeOutOfRange(q));
        }
        let flat =
            |table: &'static str, rows: Vec<Vec<usize>>| -> Result<Vec<usize>, AlgebraError> {
                if rows.len() != q || rows.iter().any(|r| r.len() != q) {
                    return Err(AlgebraError::BadTable {
                        table,
                        reason: format!("expected {q}x{q}"),
                    });
                }
                let out: Vec<usize> = rows.into_iter().flatten().collect();
                if let Some(v) = out.iter().find(|&&v| v >= q) {
                    return Err(AlgebraError::BadTable {
                        table,
                        reason: format!("level {v} out of range"),
                    });
                }
                Ok(out)
            };
        let boxminus = flat("boxminus", boxminus)?;
        let boxplus = flat("boxplus", boxplus)?;
        if dot.len() != q || dot.iter().any(|&v| v >= q) {
            return Err(AlgebraError::BadTable {
                table: "dot",
                reason: format!("expected {q} levels below {q}"),
            });
        }
        Ok(ApproximationAlgebra {
            name: name.to_string(),
            levels: Arc::new(Poset::chain(q)?),
            boxminus,
            boxplus,
            dot,
            set_rule: SetRule::Fold,
            orientation,
            passed: BTreeSet::new(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn q(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &Arc<Poset> {
        &self.levels
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn set_rule(&self) -> SetRule {
        self.set_rule
    }

    pub fn is_builtin(&self) -> bool {
        self.set_rule != SetRule::Fold
    }

    /// Axiom systems this algebra has been certified against.
    pub fn passed(&self) -> &BTreeSet<AxiomSystem> {
        &self.passed
    }

    pub fn has_passed(&self, system: AxiomSystem) -> bool {
        self.passed.contains(&system)
    }

    pub fn minus(&self, a: usize, b: usize) -> usize {
        self.boxminus[a * self.q() + b]
    }

    pub fn plus(&self, a: usize, b: usize) -> usize {
        self.boxplus[a * self.q() + b]
    }

    pub fn dot(&self, a: usize) -> usize {
        self.dot[a]
    }

    pub fn minus_table(&self) -> Vec<Vec<usize>> {
        self.boxminus
            .chunks(self.q())
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn plus_table(&self) -> Vec<Vec<usize>> {
        self.boxplus
            .chunks(self.q())
            .map(<[usize]>::to_vec)
            .collect()
    }

    pub fn dot_table(&self) -> &[usize] {
        &self.dot
    }

    /// The constant value of `⊙` when it is a constant map.
    pub fn constant_dot(&self) -> Option<usize> {
        let first = self.dot[0];
        self.dot.iter().all(|&v| v == first).then_some(first)
    }

    /// `⊞` applied to a nonempty set of levels given as a bit mask.
    pub fn set_plus_mask(&self, mask: u32) -> Result<usize, AlgebraError> {
        let members: Vec<usize> = (0..self.q()).filter(|&l| mask >> l & 1 == 1).collect();
        self.set_plus(&members)
    }

    /// `⊞` applied to a nonempty set of levels.
    pub fn set_plus(&self, members: &[usize]) -> Result<usize, AlgebraError> {
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let fail = || AlgebraError::NoSupremum(sorted.clone());
        match self.set_rule {
            SetRule::Join => self.levels.supremum(&sorted).ok_or_else(fail),
            SetRule::Meet => self.levels.dualize().supremum(&sorted).ok_or_else(fail),
            SetRule::Fold => {
                let (&first, rest) = sorted.split_first().ok_or_else(fail)?;
                Ok(rest.iter().fold(first, |acc, &v| self.plus(acc, v)))
            }
        }
    }

    /// One recomposition step: `⊟(approx, residual)` for primal algebras,
    /// `⊟*(residual, approx)` for dual ones.
    pub fn compose(&self, approx: usize, residual: usize) -> usize {
        match self.orientation {
            Orientation::Primal => self.minus(approx, residual),
            Orientation::Dual => self.minus(residual, approx),
        }
    }

    /// First `z` in level order with `compose(approx, z) = target` and
    /// `⊙(approx) <= z` (primal) or `⊙*(approx) >= z` (dual).
    pub fn solve_residual(&self, approx: usize, target: usize) -> Result<usize, AlgebraError> {
        let l = &self.levels;
        let in_regime = match self.orientation {
            Orientation::Primal => l.leq(target, approx),
            Orientation::Dual => l.leq(approx, target),
        };
        if !in_regime {
            return Err(AlgebraError::OutsideRegime { approx, target });
        }
        let bound = self.dot(approx);
        (0..self.q())
            .find(|&z| {
                let ordered = match self.orientation {
                    Orientation::Primal => l.leq(bound, z),
                    Orientation::Dual => l.leq(z, bound),
                };
                ordered && self.compose(approx, z) == target
            })
            .ok_or(AlgebraError::NoResidual { approx, target })
    }

    /// The order-dual algebra: `L` reversed, `⊟` arguments swapped, set
    /// rule flipped, orientation flipped. Starred axioms of `self` are the
    /// unstarred axioms of the result, and a primal decomposition under the
    /// result is a dual decomposition under `self`.
    pub fn dualized(&self) -> ApproximationAlgebra {
        let q = self.q();
        let boxminus = (0..q * q).map(|i| self.minus(i % q, i / q)).collect();
        ApproximationAlgebra {
            name: format!("({})^op", self.name),
            levels: Arc::new(self.levels.dualize()),
            boxminus,
            boxplus: self.boxplus.clone(),
            dot: self.dot.clone(),
            set_rule: self.set_rule.flip(),
            orientation: self.orientation.flip(),
            passed: self.passed.iter().map(|s| s.dual()).collect(),
        }
    }

    /// Whether the binary `⊞` is associative, commutative and idempotent.
    pub fn plus_is_aci(&self) -> bool {
        let q = self.q();
        (0..q).all(|a| self.plus(a, a) == a)
            && (0..q).all(|a| (0..q).all(|b| self.plus(a, b) == self.plus(b, a)))
            && (0..q).all(|a| {
                (0..q).all(|b| {
                    (0..q).all(|c| self.plus(self.plus(a, b), c) == self.plus(a, self.plus(b, c)))
                })
            })
    }

    /// Runs the checker and records a pass.
    pub fn certify(
        &mut self,
        system: AxiomSystem,
        domain: Option<&Poset>,
    ) -> Result<AxiomReport, AlgebraError> {
        let report = self.check_axioms(system, domain)?;
        if report.passed() {
            self.passed.insert(system);
        }
        Ok(report)
    }

    /// Exhaustively checks an axiom system. Axiom 1 is checked over all
    /// subsets of `domain` when it has at most 12 elements.
    pub fn check_axioms(
        &self,
        system: AxiomSystem,
        domain: Option<&Poset>,
    ) -> Result<AxiomReport, AlgebraError> {
        if self.q() > MAX_LEVELS {
            return Err(AlgebraError::DomainTooLarge {
                size: self.q(),
                max: MAX_LEVELS,
            });
        }
        let star = system.is_starred();
        let dual_alg;
        let dual_domain;
        let (alg, domain) = if star {
            dual_alg = self.dualized();
            dual_domain = domain.map(Poset::dualize);
            (&dual_alg, dual_domain.as_ref())
        } else {
            (self, domain)
        };
        let suffix = if star { "*" } else { "" };
        let letter = match system.unstarred() {
            AxiomSystem::A => "A",
            _ => "B",
        };
        let mut axioms = vec![alg.check_minimal_subsets(domain, &format!("{letter}1{suffix}"))];
        match system.unstarred() {
            AxiomSystem::A => axioms.push(alg.check_set_plus(&format!("A2{suffix}"))),
            _ => axioms.push(alg.check_binary_plus(&format!("B2{suffix}"))),
        }
        axioms.push(alg.check_neutral(&format!("{letter}3{suffix}")));
        axioms.push(alg.check_residual_exists(&format!("{letter}4{suffix}")));
        if system.unstarred() == AxiomSystem::BPlus {
            axioms.push(alg.check_maximal_levels(&format!("B5+{suffix}")));
        }
        Ok(AxiomReport {
            algebra: self.name.clone(),
            system,
            axioms,
            plus_is_aci: self.plus_is_aci(),
        })
    }

    fn level_ids(&self, xs: &[usize]) -> Vec<String> {
        self.levels.names(xs)
    }

    fn check_minimal_subsets(&self, domain: Option<&Poset>, axiom: &str) -> AxiomVerdict {
        let Some(m) = domain.filter(|m| m.len() <= MAX_SUBSET_CHECK) else {
            return verdict(axiom, Status::HoldsByFiniteness, None);
        };
        for mask in 0u32..(1 << m.len()) {
            let set: Vec<usize> = (0..m.len()).filter(|&i| mask >> i & 1 == 1).collect();
            let mins = m.minimal_elements(&set);
            let dominated = set.iter().all(|&s| mins.iter().any(|&t| m.leq(t, s)));
            let antichain = mins
                .iter()
                .all(|&a| mins.iter().all(|&b| a == b || !m.leq(a, b)));
            if !(dominated && antichain && mins.iter().all(|x| set.contains(x))) {
                return verdict(
                    axiom,
                    Status::Fail,
                    Some(Counterexample {
                        values: m.names(&set),
                        note: "no dominating antichain of minimal elements".into(),
                    }),
                );
            }
        }
        verdict(axiom, Status::Pass, None)
    }

    fn check_set_plus(&self, axiom: &str) -> AxiomVerdict {
        let q = self.q();
        let l = &self.levels;
        let exhaustive = q <= MAX_SUBSET_CHECK;
        let mut cache = vec![None; 1 << q];
        let mut value = |mask: u32| -> Option<usize> {
            *cache[mask as usize].get_or_insert_with(|| self.set_plus_mask(mask).ok())
        };
        for mask in 1u32..(1 << q) {
            if !exhaustive && mask.count_ones() > 2 {
                continue;
            }
            let members: Vec<usize> = (0..q).filter(|&i| mask >> i & 1 == 1).collect();
            let Some(v) = value(mask) else {
                return verdict(
                    axiom,
                    Status::Fail,
                    Some(Counterexample {
                        values: self.level_ids(&members),
                        note: "set aggregation undefined".into(),
                    }),
                );
            };
            if let Some(&x) = members.iter().find(|&&x| !l.leq(x, v)) {
                return verdict(
                    axiom,
                    Status::Fail,
                    Some(Counterexample {
                        values: self.level_ids(&[x, v]),
                        note: format!(
                            "{} is not below the aggregate of {:?}",
                            l.id(x),
                            self.level_ids(&members)
                        ),
                    }),
                );
            }
            for e in 0..q {
                let bigger = mask | 1 << e;
                if bigger == mask || (!exhaustive && bigger.count_ones() > 2) {
                    continue;
                }
                if let Some(w) = value(bigger) {
                    if !l.leq(v, w) {
                        let wider: Vec<usize> = (0..q).filter(|&i| bigger >> i & 1 == 1).collect();
                        return verdict(
                            axiom,
                            Status::Fail,
                            Some(Counterexample {
                                values: self.level_ids(&[v, w]),
                                note: format!(
                                    "aggregate of {:?} is not below aggregate of {:?}",
                                    self.level_ids(&members),
                                    self.level_ids(&wider)
                                ),
                            }),
                        );
                    }
                }
            }
        }
        let status = if exhaustive {
            Status::Pass
        } else {
            Status::PairsOnly
        };
        verdict(axiom, status, None)
    }

    fn check_binary_plus(&self, axiom: &str) -> AxiomVerdict {
        let q = self.q();
        for x in 0..q {
            for y in 0..q {
                let s = self.plus(x, y);
                if !self.levels.leq(x, s) || !self.levels.leq(y, s) {
                    return verdict(
                        axiom,
                        Status::Fail,
                        Some(Counterexample {
                            values: self.level_ids(&[x, y, s]),
                            note: "binary aggregate is not an upper bound of its arguments".into(),
                        }),
                    );
                }
            }
        }
        verdict(axiom, Status::Pass, None)
    }

    fn check_neutral(&self, axiom: &str) -> AxiomVerdict {
        let q = self.q();
        for l in 0..q {
            if self.minus(l, self.dot(l)) != l {
                return verdict(
                    axiom,
                    Status::Fail,
                    Some(Counterexample {
                        values: self.level_ids(&[l]),
                        note: "peeling the neutral residual does not return the level".into(),
                    }),
                );
            }
        }
        for a in 0..q {
            for b in 0..q {
                if self.levels.leq(a, b) && !self.levels.leq(self.dot(a), self.dot(b)) {
                    return verdict(
                        axiom,
                        Status::Fail,
                        Some(Counterexample {
                            values: self.level_ids(&[a, b]),
                            note: "neutral residual map is not monotone".into(),
                        }),
                    );
                }
            }
        }
        verdict(axiom, Status::Pass, None)
    }

    fn check_residual_exists(&self, axiom: &str) -> AxiomVerdict {
        let q = self.q();
        for l in 0..q {
            for lp in 0..q {
                if !self.levels.leq(l, lp) {
                    continue;
                }
                let found =
                    (0..q).any(|z| self.minus(lp, z) == l && self.levels.leq(self.dot(lp), z));
                if !found {
                    return verdict(
                        axiom,
                        Status::Fail,
                        Some(Counterexample {
                            values: self.level_ids(&[l, lp]),
                            note: format!(
                                "l={}, l'={}: no l'' with peel(l', l'') = l and dot(l') <= l''",
                                self.levels.id(l),
                                self.levels.id(lp)
                            ),
                        }),
                    );
                }
            }
        }
        verdict(axiom, Status::Pass, None)
    }

    fn check_maximal_levels(&self, axiom: &str) -> AxiomVerdict {
        let maxima = self.levels.maxima();
        for l in 0..self.q() {
            if !maxima.iter().any(|&m| self.levels.leq(l, m)) {
                return verdict(
                    axiom,
                    Status::Fail,
                    Some(Counterexample {
                        values: self.level_ids(&[l]),
                        note: "no maximal level above".into(),
                    }),
                );
            }
        }
        verdict(axiom, Status::Pass, None)
    }
}

fn verdict(axiom: &str, status: Status, counterexample: Option<Counterexample>) -> AxiomVerdict {
    AxiomVerdict {
        axiom: axiom.to_string(),
        status,
        counterexample,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(sel: &str) -> ApproximationAlgebra {
        ApproximationAlgebra::from_selector(sel).unwrap()
    }

    #[test]
    fn builtin_tables() {
        let bd = alg("boolean-dual");
        assert_eq!(bd.minus(1, 0), 0);
        assert_eq!(bd.minus(0, 0), 1);
        let cp = alg("chain-primal:4");
        assert_eq!(cp.minus(3, 2), 1);
        assert_eq!(cp.minus(1, 2), 0);
        let cd = alg("chain-dual:3");
        assert_eq!(cd.minus(2, 1), 1);
        assert_eq!(cd.minus(0, 1), 2);
    }

    #[test]
    fn builtin_errors() {
        assert_eq!(
            ApproximationAlgebra::from_selector("fuzzy"),
            Err(AlgebraError::UnknownName("fuzzy".into()))
        );
        assert_eq!(
            ApproximationAlgebra::builtin("chain-primal", 17),
            Err(AlgebraError::ChainSizeOutOfRange(17))
        );
        assert_eq!(
            ApproximationAlgebra::builtin("chain-dual", 1),
            Err(AlgebraError::ChainSizeOutOfRange(1))
        );
    }

    #[test]
    fn builtins_pass_advertised_systems() {
        let cases = [
            ("boolean-primal", vec![AxiomSystem::A, AxiomSystem::B]),
            (
                "boolean-dual",
                vec![AxiomSystem::AStar, AxiomSystem::BPlusStar],
            ),
            ("chain-primal:5", vec![AxiomSystem::A, AxiomSystem::B]),
            ("chain-dual:5", vec![AxiomSystem::AStar, AxiomSystem::BStar]),
        ];
        let m = Poset::boolean_cube(3).unwrap();
        for (sel, systems) in cases {
            let a = alg(sel);
            for s in systems {
                assert!(a.has_passed(s), "{sel} not certified for {s}");
                let r = a.check_axioms(s, Some(&m)).unwrap();
                assert!(r.passed(), "{sel} {s}: {r:?}");
                assert!(r.plus_is_aci);
            }
        }
    }

    #[test]
    fn dual_builtins_fail_unstarred_axiom_four() {
        // → under the primal reading: 0 <= 1 needs z with 1 → z = 0 and 1 <= z.
        let r = alg("boolean-dual")
            .check_axioms(AxiomSystem::A, None)
            .unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn axiom_four_counterexample() {
        let and = vec![vec![0, 0], vec![0, 1]];
        let or = vec![vec![0, 1], vec![1, 1]];
        let a = ApproximationAlgebra::from_tables(
            "and-or",
            2,
            Orientation::Primal,
            and,
            or,
            vec![1, 1],
        )
        .unwrap();
        let r = a.check_axioms(AxiomSystem::A, None).unwrap();
        let v = r.verdict("A4").unwrap();
        assert_eq!(v.status, Status::Fail);
        assert_eq!(v.counterexample.as_ref().unwrap().values, vec!["0", "1"]);
        assert_eq!(r.verdict("A3").unwrap().status, Status::Pass);
        assert_eq!(r.failures().count(), 1);
    }

    #[test]
    fn compose_examples() {
        assert_eq!(alg("boolean-dual").compose(0, 1), 0);
        assert_eq!(alg("boolean-primal").compose(1, 1), 0);
        assert_eq!(alg("chain-primal:4").compose(3, 2), 1);
    }

    #[test]
    fn solve_examples() {
        assert_eq!(alg("boolean-dual").solve_residual(0, 1), Ok(0));
        assert_eq!(alg("boolean-primal").solve_residual(1, 0), Ok(1));
        assert_eq!(alg("chain-primal:4").solve_residual(3, 1), Ok(2));
        assert!(matches!(
            alg("chain-primal:4").solve_residual(1, 3),
            Err(AlgebraError::OutsideRegime { .. })
        ));
    }

    #[test]
    fn no_residual_reported() {
        let and = vec![vec![0, 0], vec![0, 1]];
        let or = vec![vec![0, 1], vec![1, 1]];
        let a = ApproximationAlgebra::from_tables(
            "and-or",
            2,
            Orientation::Primal,
            and,
            or,
            vec![1, 1],
        )
        .unwrap();
        assert_eq!(
            a.solve_residual(1, 0),
            Err(AlgebraError::NoResidual {
                approx: 1,
                target: 0
            })
        );
    }

    #[test]
    fn q2_chains_match_boolean() {
        assert_eq!(alg("chain-primal:2"), alg("boolean-primal"));
        assert_eq!(alg("chain-dual:2"), alg("boolean-dual"));
    }

    #[test]
    fn neutral_residual_restores_level() {
        for sel in [
            "boolean-primal",
            "boolean-dual",
            "chain-primal:6",
            "chain-dual:6",
        ] {
            let a = alg(sel);
            for l in 0..a.q() {
                assert_eq!(a.compose(l, a.dot(l)), l, "{sel} level {l}");
            }
        }
    }

    #[test]
    fn large_chain_checks_pairs_only() {
        let a = alg("chain-primal:14");
        let r = a.check_axioms(AxiomSystem::A, None).unwrap();
        assert!(r.passed());
        assert_eq!(r.verdict("A2").unwrap().status, Status::PairsOnly);
    }

    #[test]
    fn non_aci_fold_is_recorded() {
        // ⊞(a, b) = b is not commutative.
        let a = ApproximationAlgebra::from_tables(
            "right",
            2,
            Orientation::Primal,
            vec![vec![0, 0], vec![1, 0]],
            vec![vec![0, 1], vec![0, 1]],
            vec![0, 0],
        )
        .unwrap();
        let r = a.check_axioms(AxiomSystem::B, None).unwrap();
        assert!(!r.plus_is_aci);
        assert_eq!(r.verdict("B2").unwrap().status, Status::Fail);
    }

    #[test]
    fn axiom_one_over_domain() {
        let m = Poset::boolean_cube(2).unwrap();
        let r = alg("boolean-primal")
            .check_axioms(AxiomSystem::A, Some(&m))
            .unwrap();
        assert_eq!(r.verdict("A1").unwrap().status, Status::Pass);
        let r = alg("boolean-primal")
            .check_axioms(AxiomSystem::A, None)
            .unwrap();
        assert_eq!(r.verdict("A1").unwrap().status, Status::HoldsByFiniteness);
    }
}
