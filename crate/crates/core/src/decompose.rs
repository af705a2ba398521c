//! The successive-approximation engine.
//!
//! Given `ψ : M -> L` and a primal algebra, each step computes the active
//! set `M_i` (elements whose down-set contains a non-monotone pair of the
//! current residual), replaces the residual on `M_i` by an upper
//! approximation `φ_i` built from its down-set, and solves for the next
//! residual pointwise. The loop stops when the residual is monotone:
//!
//! ```text
//! ψ = ⊟(φ_1, ⊟(φ_2, ... ⊟(φ_t, ψ_t)))
//! ```
//!
//! Dual algebras run the same loop on the dualized domain and algebra, which
//! yields the left-nested form `⊟*(... ⊟*(ψ_t, φ_t) ..., φ_1)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::algebra::{ApproximationAlgebra, AxiomSystem, Orientation};
use crate::error::DecomposeError;
use crate::order::{NonMonoDomain, Poset, PosetMap, MAX_EXPLICIT};

/// How the upper approximation `φ` is built on the active set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Strategy {
    /// Set aggregation over the image of the down-set.
    #[serde(rename = "t1")]
    T1,
    /// Right fold of the binary aggregation over the down-set in canonical
    /// order.
    #[serde(rename = "t2-fold")]
    T2Fold,
    /// `φ(x) = ⊞(ψ(x), φ(parent(x)))` along a spanning forest whose parent
    /// is the first lower cover in canonical order.
    #[serde(rename = "t2-chain")]
    T2Chain,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::T1 => "t1",
            Strategy::T2Fold => "t2-fold",
            Strategy::T2Chain => "t2-chain",
        }
    }

    fn uses_binary_plus(self) -> bool {
        self != Strategy::T1
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "t1" => Ok(Strategy::T1),
            "t2-fold" => Ok(Strategy::T2Fold),
            "t2-chain" => Ok(Strategy::T2Chain),
            other => Err(format!(
                "unknown strategy `{other}` (t1, t2-fold, t2-chain)"
            )),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    pub strategy: Strategy,
    /// Compute the full non-monotonicity domain at every step. Defaults to
    /// on for domains of at most 4096 elements.
    pub track_pairs: Option<bool>,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            strategy: Strategy::T1,
            track_pairs: None,
        }
    }
}

impl From<Strategy> for DecomposeOptions {
    fn from(strategy: Strategy) -> Self {
        DecomposeOptions {
            strategy,
            track_pairs: None,
        }
    }
}

/// Nested monotone parts `φ_1, .., φ_t` followed by the final residual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximatingForm {
    pub orientation: Orientation,
    pub parts: Vec<PosetMap>,
    pub algebra: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: usize,
    /// `|n(ψ_i)|`, when pairs are tracked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonmono_count: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub nonmono_pairs: Vec<(String, String)>,
    /// `n(ψ_i) ⊊ n(ψ_{i-1})`; absent on the first step or when untracked.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonmono_shrank: Option<bool>,
    /// `M_i`.
    pub active: Vec<String>,
    /// `M^i`, the complement.
    pub passive: Vec<String>,
    /// Minimal elements of `M_i`.
    pub active_minimal: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionTrace {
    pub orientation: Option<Orientation>,
    pub strategy: Option<Strategy>,
    pub steps: Vec<StepRecord>,
}

impl DecompositionTrace {
    /// Whether every tracked step strictly shrank the non-monotonicity
    /// domain. `None` when pairs were not tracked.
    pub fn nonmono_strictly_shrinking(&self) -> Option<bool> {
        let flags: Vec<Option<bool>> = self
            .steps
            .iter()
            .skip(1)
            .map(|s| s.nonmono_shrank)
            .collect();
        if flags.iter().any(Option::is_none) {
            return None;
        }
        Some(flags.into_iter().all(|f| f == Some(true)))
    }

    /// Sizes of `M_1, M_2, ..`.
    pub fn active_sizes(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.active.len()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormStats {
    pub parts: usize,
    pub compose_ops: usize,
    pub domain_chain_elements: usize,
    pub bound_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonMonotoneWitness {
    pub part: usize,
    pub low: String,
    pub high: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormReport {
    pub ok: bool,
    pub recomposes: bool,
    /// First domain element where the recomposition differs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nonmonotone: Option<NonMonotoneWitness>,
    pub stats: FormStats,
}

impl ApproximatingForm {
    pub fn compose_ops(&self) -> usize {
        self.parts.len().saturating_sub(1)
    }

    pub fn domain(&self) -> &Arc<Poset> {
        self.parts[0].domain()
    }

    /// Folds the parts back together, innermost last part first.
    pub fn recompose(&self, alg: &ApproximationAlgebra) -> Result<PosetMap, DecomposeError> {
        let (last, rest) = self
            .parts
            .split_last()
            .ok_or_else(|| DecomposeError::ShapeMismatch("form has no parts".into()))?;
        if alg.orientation() != self.orientation {
            return Err(DecomposeError::ShapeMismatch(format!(
                "{} form against {} algebra",
                self.orientation,
                alg.orientation()
            )));
        }
        if **last.codomain() != **alg.levels() {
            return Err(DecomposeError::ShapeMismatch(
                "codomain differs from the algebra's levels".into(),
            ));
        }
        if rest
            .iter()
            .any(|p| **p.domain() != **last.domain() || **p.codomain() != **last.codomain())
        {
            return Err(DecomposeError::ShapeMismatch(
                "parts disagree on domain or codomain".into(),
            ));
        }
        let mut acc = last.table().to_vec();
        for part in rest.iter().rev() {
            for (slot, &approx) in acc.iter_mut().zip(part.table()) {
                *slot = alg.compose(approx, *slot);
            }
        }
        Ok(PosetMap::new(
            Arc::clone(last.domain()),
            Arc::clone(last.codomain()),
            acc,
        )?)
    }

    pub fn stats(&self) -> FormStats {
        let chain = self
            .parts
            .first()
            .map_or(0, |p| p.domain().max_chain_elements());
        FormStats {
            parts: self.parts.len(),
            compose_ops: self.compose_ops(),
            domain_chain_elements: chain,
            bound_ok: self.compose_ops() <= chain,
        }
    }

    /// Checks exact recomposition, monotonicity of every part and the
    /// chain-length bound.
    pub fn verify(
        &self,
        psi: &PosetMap,
        alg: &ApproximationAlgebra,
    ) -> Result<FormReport, DecomposeError> {
        let stats = self.stats();
        let rebuilt = self.recompose(alg)?;
        let mismatch = if rebuilt.table().len() != psi.table().len() {
            Some("<shape>".to_string())
        } else {
            rebuilt
                .first_difference(psi)
                .map(|x| psi.domain().id(x).to_string())
        };
        let nonmonotone = self.parts.iter().enumerate().find_map(|(i, p)| {
            p.is_monotone().err().map(|(lo, hi)| NonMonotoneWitness {
                part: i,
                low: p.domain().id(lo).to_string(),
                high: p.domain().id(hi).to_string(),
            })
        });
        let recomposes = mismatch.is_none();
        Ok(FormReport {
            ok: recomposes && nonmonotone.is_none() && stats.bound_ok,
            recomposes,
            mismatch,
            nonmonotone,
            stats,
        })
    }
}

/// Decomposes `psi` under `alg`.
pub fn decompose(
    psi: &PosetMap,
    alg: &ApproximationAlgebra,
    options: impl Into<DecomposeOptions>,
) -> Result<(ApproximatingForm, DecompositionTrace), DecomposeError> {
    let (result, trace) = decompose_traced(psi, alg, options);
    result.map(|form| (form, trace))
}

/// Like [`decompose`] but always hands back the trace, including on failure.
pub fn decompose_traced(
    psi: &PosetMap,
    alg: &ApproximationAlgebra,
    options: impl Into<DecomposeOptions>,
) -> (
    Result<ApproximatingForm, DecomposeError>,
    DecompositionTrace,
) {
    let options = options.into();
    let mut trace = DecompositionTrace {
        orientation: Some(alg.orientation()),
        strategy: Some(options.strategy),
        steps: Vec::new(),
    };
    let result = run(psi, alg, &options, &mut trace);
    (result, trace)
}

fn run(
    psi: &PosetMap,
    alg: &ApproximationAlgebra,
    options: &DecomposeOptions,
    trace: &mut DecompositionTrace,
) -> Result<ApproximatingForm, DecomposeError> {
    if **psi.codomain() != **alg.levels() {
        return Err(DecomposeError::ShapeMismatch(
            "map codomain is not the algebra's level poset".into(),
        ));
    }
    let domain = Arc::clone(psi.domain());
    let (work_domain, work_alg) = match alg.orientation() {
        Orientation::Primal => (Arc::clone(&domain), alg.clone()),
        Orientation::Dual => (Arc::new(domain.dualize()), alg.dualized()),
    };
    let required =
        AxiomSystem::for_decomposition(Orientation::Primal, options.strategy.uses_binary_plus());
    if !work_alg.has_passed(required) {
        let report = work_alg.check_axioms(required, None)?;
        if !report.passed() {
            let detail = report
                .failures()
                .map(|v| match &v.counterexample {
                    Some(c) => format!("{} ({})", v.axiom, c.note),
                    None => v.axiom.clone(),
                })
                .collect::<Vec<_>>()
                .join("; ");
            return Err(DecomposeError::AlgebraRejected {
                system: required
                    .dual_if(alg.orientation() == Orientation::Dual)
                    .to_string(),
                detail,
            });
        }
    }
    let track = options.track_pairs.unwrap_or(domain.len() <= MAX_EXPLICIT);
    let tables = primal_loop(
        &work_domain,
        &work_alg,
        psi.table(),
        options.strategy,
        track,
        trace,
    )?;
    let codomain = Arc::clone(alg.levels());
    let parts = tables
        .into_iter()
        .map(|t| PosetMap::new(Arc::clone(&domain), Arc::clone(&codomain), t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ApproximatingForm {
        orientation: alg.orientation(),
        parts,
        algebra: alg.name().to_string(),
    })
}

trait DualIf {
    fn dual_if(self, cond: bool) -> Self;
}

impl DualIf for AxiomSystem {
    fn dual_if(self, cond: bool) -> Self {
        if cond {
            self.dual()
        } else {
            self
        }
    }
}

/// Per-step view of the current residual: down-set images, violation tops
/// and the active set.
struct StepState {
    down_mask: Vec<u32>,
    active: FixedBitSet,
}

/// The active set of `table`: the up-closure of all violation tops.
pub(crate) fn active_set(m: &Poset, levels: &Poset, table: &[usize]) -> Vec<usize> {
    let q = levels.len();
    let not_below: Vec<u32> = (0..q)
        .map(|v| {
            (0..q)
                .filter(|&u| !levels.leq(u, v))
                .fold(0u32, |acc, u| acc | 1 << u)
        })
        .collect();
    analyse(m, table, &not_below).active.ones().collect()
}

fn analyse(m: &Poset, cur: &[usize], not_below: &[u32]) -> StepState {
    let n = m.len();
    let mut down_mask = vec![0u32; n];
    let mut active = FixedBitSet::with_capacity(n);
    for &x in m.topological_order() {
        let mut mask = 1u32 << cur[x];
        let mut inherited = false;
        for &c in m.lower_covers(x) {
            mask |= down_mask[c];
            inherited |= active.contains(c);
        }
        down_mask[x] = mask;
        if inherited || mask & not_below[cur[x]] != 0 {
            active.insert(x);
        }
    }
    StepState { down_mask, active }
}

fn primal_loop(
    m: &Arc<Poset>,
    alg: &ApproximationAlgebra,
    psi: &[usize],
    strategy: Strategy,
    track: bool,
    trace: &mut DecompositionTrace,
) -> Result<Vec<Vec<usize>>, DecomposeError> {
    let n = m.len();
    let q = alg.q();
    let l = alg.levels();
    let not_below: Vec<u32> = (0..q)
        .map(|v| {
            (0..q)
                .filter(|&u| !l.leq(u, v))
                .fold(0u32, |acc, u| acc | 1 << u)
        })
        .collect();
    let codomain = Arc::clone(l);
    let mut plus_cache: HashMap<u32, usize> = HashMap::new();

    let mut parts = Vec::new();
    let mut cur = psi.to_vec();
    let mut prev_active: Option<FixedBitSet> = None;
    let mut prev_pairs: Option<NonMonoDomain> = None;

    for step in 1.. {
        if step > n + 1 {
            return Err(DecomposeError::IterationOverflow { limit: n + 1 });
        }
        let state = analyse(m, &cur, &not_below);
        let pairs = if track {
            Some(PosetMap::new(Arc::clone(m), Arc::clone(&codomain), cur.clone())?.nonmono_domain())
        } else {
            None
        };
        let shrank = match (&prev_pairs, &pairs) {
            (Some(prev), Some(now)) => Some(now.len() < prev.len() && now.is_subset_of(prev)),
            _ => None,
        };
        let active: Vec<usize> = state.active.ones().collect();
        let passive: Vec<usize> = (0..n).filter(|&x| !state.active.contains(x)).collect();
        let minimal = m.minimal_elements(&active);
        trace.steps.push(StepRecord {
            step,
            nonmono_count: pairs.as_ref().map(NonMonoDomain::len),
            nonmono_pairs: pairs
                .as_ref()
                .map(|p| {
                    p.pairs
                        .iter()
                        .map(|&(a, b)| (m.id(a).to_string(), m.id(b).to_string()))
                        .collect()
                })
                .unwrap_or_default(),
            nonmono_shrank: shrank,
            active: m.names(&active),
            passive: m.names(&passive),
            active_minimal: m.names(&minimal),
        });

        if active.is_empty() {
            parts.push(cur);
            return Ok(parts);
        }
        if let Some(prev) = &prev_active {
            let prev_list: Vec<usize> = prev.ones().collect();
            let prev_min = m.minimal_elements(&prev_list);
            let shrinks =
                state.active.is_subset(prev) && state.active.count_ones(..) < prev.count_ones(..);
            let skips_minimal = prev_min.iter().all(|&x| !state.active.contains(x));
            if !(shrinks && skips_minimal) {
                return Err(DecomposeError::NoProgress { step });
            }
        }

        let mut phi = cur.clone();
        match strategy {
            Strategy::T1 => {
                for &x in &active {
                    let mask = state.down_mask[x];
                    phi[x] = match plus_cache.get(&mask) {
                        Some(&v) => v,
                        None => {
                            let v = alg.set_plus_mask(mask)?;
                            plus_cache.insert(mask, v);
                            v
                        }
                    };
                }
            }
            Strategy::T2Fold => {
                for &x in &active {
                    let below = m.down_set(x);
                    let (&last, rest) = below.split_last().expect("down-set contains x");
                    phi[x] = rest
                        .iter()
                        .rev()
                        .fold(cur[last], |acc, &z| alg.plus(cur[z], acc));
                }
            }
            Strategy::T2Chain => {
                for &x in m.topological_order() {
                    if state.active.contains(x) {
                        if let Some(&parent) = m.lower_covers(x).first() {
                            phi[x] = alg.plus(cur[x], phi[parent]);
                        }
                    }
                }
            }
        }

        let phi_map = PosetMap::new(Arc::clone(m), Arc::clone(&codomain), phi)?;
        if let Err((lo, hi)) = phi_map.is_monotone() {
            return Err(DecomposeError::NonMonotonePart {
                step,
                low: m.id(lo).to_string(),
                high: m.id(hi).to_string(),
            });
        }
        let phi = phi_map.table().to_vec();
        if let Some(x) = (0..n).find(|&x| !l.leq(cur[x], phi[x])) {
            return Err(DecomposeError::UpperBoundViolated {
                element: m.id(x).to_string(),
            });
        }
        let mut next = vec![0; n];
        for x in 0..n {
            next[x] = if phi[x] != cur[x] {
                alg.solve_residual(phi[x], cur[x])?
            } else {
                alg.dot(cur[x])
            };
        }
        parts.push(phi);
        cur = next;
        prev_active = Some(state.active);
        prev_pairs = pairs;
    }
    unreachable!("loop returns or errors")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bool_map(n: usize, bits: &str) -> PosetMap {
        let l = Arc::new(Poset::chain(2).unwrap());
        let cube = Arc::new(Poset::boolean_cube(n).unwrap());
        PosetMap::new(cube, l, bits.bytes().map(|b| (b - b'0') as usize).collect()).unwrap()
    }

    fn bits(m: &PosetMap) -> String {
        m.table()
            .iter()
            .map(|v| char::from(b'0' + *v as u8))
            .collect()
    }

    fn alg(sel: &str) -> ApproximationAlgebra {
        ApproximationAlgebra::from_selector(sel).unwrap()
    }

    #[test]
    fn monotone_input_is_one_part() {
        let and = bool_map(2, "0001");
        let (form, trace) = decompose(&and, &alg("boolean-primal"), Strategy::T1).unwrap();
        assert_eq!(form.parts.len(), 1);
        assert_eq!(form.compose_ops(), 0);
        assert_eq!(trace.steps.len(), 1);
    }

    #[test]
    fn negation_primal() {
        let not = bool_map(1, "10");
        let a = alg("boolean-primal");
        let (form, _) = decompose(&not, &a, Strategy::T1).unwrap();
        let parts: Vec<String> = form.parts.iter().map(bits).collect();
        assert_eq!(parts, vec!["11", "01"]);
        assert_eq!(bits(&form.recompose(&a).unwrap()), "10");
        let s = form.stats();
        assert_eq!((s.compose_ops, s.domain_chain_elements), (1, 2));
    }

    #[test]
    fn xor_dual() {
        let xor = bool_map(2, "0110");
        let a = alg("boolean-dual");
        let (form, _) = decompose(&xor, &a, Strategy::T1).unwrap();
        let parts: Vec<String> = form.parts.iter().map(bits).collect();
        assert_eq!(parts, vec!["0000", "0001", "0111"]);
        assert_eq!(bits(&form.recompose(&a).unwrap()), "0110");
        assert_eq!(
            form.stats(),
            FormStats {
                parts: 3,
                compose_ops: 2,
                domain_chain_elements: 3,
                bound_ok: true
            }
        );
    }

    #[test]
    fn verify_reports() {
        let xor = bool_map(2, "0110");
        let a = alg("boolean-dual");
        let (form, _) = decompose(&xor, &a, Strategy::T1).unwrap();
        assert!(form.verify(&xor, &a).unwrap().ok);
        let r = form.verify(&bool_map(2, "1001"), &a).unwrap();
        assert!(!r.ok);
        assert_eq!(r.mismatch.as_deref(), Some("00"));

        let mut broken = form.clone();
        broken.parts[1] = bool_map(2, "0110");
        let r = broken.verify(&xor, &a).unwrap();
        let w = r.nonmonotone.unwrap();
        assert_eq!((w.part, w.low.as_str(), w.high.as_str()), (1, "01", "11"));
    }

    #[test]
    fn recompose_single_part_is_identity() {
        let f = bool_map(2, "0111");
        let form = ApproximatingForm {
            orientation: Orientation::Primal,
            parts: vec![f.clone()],
            algebra: "boolean-primal".into(),
        };
        assert_eq!(form.recompose(&alg("boolean-primal")).unwrap(), f);
        assert!(matches!(
            form.recompose(&alg("boolean-dual")),
            Err(DecomposeError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn rejects_defective_algebra() {
        let a = ApproximationAlgebra::from_tables(
            "and-or",
            2,
            Orientation::Primal,
            vec![vec![0, 0], vec![0, 1]],
            vec![vec![0, 1], vec![1, 1]],
            vec![1, 1],
        )
        .unwrap();
        let err = decompose(&bool_map(1, "10"), &a, Strategy::T1).unwrap_err();
        assert!(
            matches!(err, DecomposeError::AlgebraRejected { .. }),
            "{err:?}"
        );
    }

    #[test]
    fn codomain_mismatch() {
        let err = decompose(&bool_map(1, "10"), &alg("chain-primal:3"), Strategy::T1).unwrap_err();
        assert!(matches!(err, DecomposeError::ShapeMismatch(_)));
    }

    #[test]
    fn diamond_chain_strategy_breaks_monotonicity() {
        let m = Arc::new(
            Poset::build(
                &["bot", "b", "a", "top"],
                &[("bot", "a"), ("bot", "b"), ("a", "top"), ("b", "top")],
            )
            .unwrap(),
        );
        let a = alg("chain-primal:3");
        let psi = PosetMap::new(m, Arc::clone(a.levels()), vec![0, 0, 2, 1]).unwrap();
        let err = decompose(&psi, &a, Strategy::T2Chain).unwrap_err();
        assert_eq!(
            err,
            DecomposeError::NonMonotonePart {
                step: 1,
                low: "a".into(),
                high: "top".into()
            }
        );
        // t1 and t2-fold handle the same input.
        for s in [Strategy::T1, Strategy::T2Fold] {
            let (form, _) = decompose(&psi, &a, s).unwrap();
            assert!(form.verify(&psi, &a).unwrap().ok);
        }
    }

    #[test]
    fn nonmono_domain_can_grow_while_active_set_shrinks() {
        // a < b < c with ψ = 1, 0, 1: n(ψ) = {(a,b)}, n(ψ_1) = {(b,c)}.
        let m = Arc::new(Poset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap());
        let a = alg("boolean-primal");
        let psi = PosetMap::new(m, Arc::clone(a.levels()), vec![1, 0, 1]).unwrap();
        let (form, trace) = decompose(&psi, &a, Strategy::T1).unwrap();
        assert!(form.verify(&psi, &a).unwrap().ok);
        assert_eq!(
            trace.steps[0].nonmono_pairs,
            vec![("a".to_string(), "b".to_string())]
        );
        assert_eq!(
            trace.steps[1].nonmono_pairs,
            vec![("b".to_string(), "c".to_string())]
        );
        assert_eq!(trace.nonmono_strictly_shrinking(), Some(false));
        assert_eq!(trace.active_sizes(), vec![2, 1, 0]);
    }
}
