//! Up-set indicator leaves, threshold unaries, formula-level decomposition
//! into `⊟`/`⊞` skeletons over those leaves, and many-valued synthesis from
//! threshold unaries.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{ApproximationAlgebra, AxiomSystem, Orientation};
use crate::decompose::active_set;
use crate::error::{DecomposeError, Error, FormulaError, OrderError};
use crate::formula::{BinOp, Formula, FormulaFile, Semantics};
use crate::order::{Poset, PosetMap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThetaKind {
    /// Indicator of the up-set of `x`, `x` covering `y`.
    Special { y: String, x: String },
    /// `Γ_level` applied to variable `var` (1-based).
    Gamma { level: usize, var: usize },
}

/// A monotone two-valued map: the fixed top level on an up-set, the `⊙`
/// constant elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaFunction {
    map: PosetMap,
    kind: ThetaKind,
}

impl ThetaFunction {
    fn new(map: PosetMap, kind: ThetaKind) -> Result<Self, OrderError> {
        if let Err((lo, hi)) = map.is_monotone() {
            return Err(OrderError::NotAnEmbedding {
                x: map.domain().id(lo).to_string(),
                y: map.domain().id(hi).to_string(),
            });
        }
        Ok(ThetaFunction { map, kind })
    }

    pub fn map(&self) -> &PosetMap {
        &self.map
    }

    pub fn kind(&self) -> &ThetaKind {
        &self.kind
    }

    pub fn label(&self) -> String {
        match &self.kind {
            ThetaKind::Special { y, x } => format!("{y}<{x}"),
            ThetaKind::Gamma { level, var } => format!("G{level}@x{var}"),
        }
    }
}

impl fmt::Display for ThetaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "θ[{}] {}", self.label(), self.map)
    }
}

/// Top and `⊙` level of an algebra, read in its working (primal) order.
fn extremes(alg: &ApproximationAlgebra) -> Result<(usize, usize), DecomposeError> {
    let base = alg.constant_dot().ok_or(DecomposeError::NonConstantDot)?;
    let l = alg.levels();
    let tops = match alg.orientation() {
        Orientation::Primal => l.maxima(),
        Orientation::Dual => l.minima(),
    };
    match tops.as_slice() {
        [top] => Ok((*top, base)),
        _ => Err(DecomposeError::Unsupported(
            "level poset has no greatest element".into(),
        )),
    }
}

/// The special θ-function for the cover pair `(y, x)`.
///
/// For a dual algebra the pair is read in the dual order, so `y` covers `x`
/// in `m` and the indicator marks the down-set of `x`.
pub fn special_theta(
    m: &Arc<Poset>,
    alg: &ApproximationAlgebra,
    y: &str,
    x: &str,
) -> Result<ThetaFunction, DecomposeError> {
    let (top, base) = extremes(alg)?;
    let (yi, xi) = (m.index_of(y)?, m.index_of(x)?);
    let dual = alg.orientation() == Orientation::Dual;
    let covered = if dual {
        m.covers(xi, yi)
    } else {
        m.covers(yi, xi)
    };
    if !covered {
        return Err(DecomposeError::NotCoverPair {
            y: y.to_string(),
            x: x.to_string(),
        });
    }
    let map = PosetMap::from_fn(Arc::clone(m), Arc::clone(alg.levels()), |z| {
        let inside = if dual { m.leq(z, xi) } else { m.leq(xi, z) };
        if inside {
            top
        } else {
            base
        }
    })?;
    Ok(ThetaFunction::new(
        map,
        ThetaKind::Special {
            y: y.to_string(),
            x: x.to_string(),
        },
    )?)
}

/// `Γ_i` over the chain with `q` levels: top from level `i` upward, bottom
/// below it.
pub fn gamma(q: usize, i: usize) -> Result<Vec<usize>, FormulaError> {
    if q < 2 || i >= q {
        return Err(FormulaError::LevelOutOfRange { level: i, q });
    }
    Ok((0..q).map(|v| if i <= v { q - 1 } else { 0 }).collect())
}

/// `θ_i^j` on `L_q^n`: `Γ_i` of the `j`-th coordinate.
pub fn theta_from_gamma(q: usize, n: usize, i: usize, j: usize) -> Result<ThetaFunction, Error> {
    if j == 0 || j > n {
        return Err(FormulaError::IndexOutOfRange { index: j, max: n }.into());
    }
    let g = gamma(q, i)?;
    let grid = Arc::new(Poset::grid(q, n)?);
    let levels = Arc::new(Poset::chain(q)?);
    let map = PosetMap::from_fn(Arc::clone(&grid), levels, |x| {
        let c = grid.coords(x).expect("grid element");
        g[c[j - 1]]
    })?;
    Ok(ThetaFunction::new(
        map,
        ThetaKind::Gamma { level: i, var: j },
    )?)
}

/// A leaf class: meets of its generators, optionally composed with scaler
/// unaries that send the top level to any other level.
#[derive(Clone, Debug)]
pub struct KClass {
    generators: Vec<ThetaFunction>,
    levels: Arc<Poset>,
    orientation: Orientation,
    top: usize,
    base: usize,
    scalers: bool,
}

impl KClass {
    /// All special θ-functions of `m` under `alg`; scalers are admitted
    /// when `L` has more than two levels.
    pub fn special(m: &Arc<Poset>, alg: &ApproximationAlgebra) -> Result<Self, DecomposeError> {
        let (top, base) = extremes(alg)?;
        let dual = alg.orientation() == Orientation::Dual;
        let mut seen = BTreeSet::new();
        let mut generators = Vec::new();
        for (lo, hi) in m.cover_pairs() {
            let (y, x) = if dual { (hi, lo) } else { (lo, hi) };
            if seen.insert(x) {
                generators.push(special_theta(m, alg, m.id(y), m.id(x))?);
            }
        }
        Ok(KClass {
            generators,
            levels: Arc::clone(alg.levels()),
            orientation: alg.orientation(),
            top,
            base,
            scalers: alg.q() > 2,
        })
    }

    /// The threshold functions `θ_i^j` (`1 <= i < q`, `1 <= j <= n`) on `L_q^n`.
    pub fn gamma(q: usize, n: usize) -> Result<Self, Error> {
        let mut generators = Vec::new();
        for j in 1..=n {
            for i in 1..q {
                generators.push(theta_from_gamma(q, n, i, j)?);
            }
        }
        Ok(KClass {
            generators,
            levels: Arc::new(Poset::chain(q)?),
            orientation: Orientation::Primal,
            top: q - 1,
            base: 0,
            scalers: q > 2,
        })
    }

    pub fn generators(&self) -> &[ThetaFunction] {
        &self.generators
    }

    pub fn admits_scalers(&self) -> bool {
        self.scalers
    }

    fn below(&self, a: usize, b: usize) -> bool {
        match self.orientation {
            Orientation::Primal => self.levels.leq(a, b),
            Orientation::Dual => self.levels.leq(b, a),
        }
    }

    /// Whether `table` is a member: constant, or (a scaling of) the meet of
    /// the generators lying above its indicator.
    pub fn contains(&self, table: &[usize]) -> bool {
        let raised: BTreeSet<usize> = table.iter().copied().filter(|&v| v != self.base).collect();
        let level = match raised.len() {
            0 => return true,
            1 => *raised.iter().next().expect("one level"),
            _ => return false,
        };
        if level != self.top && !(self.scalers && self.below(self.base, level)) {
            return false;
        }
        if table.iter().all(|&v| v == level) {
            return true;
        }
        let indicator: Vec<bool> = table.iter().map(|&v| v == level).collect();
        let mut meet: Option<Vec<bool>> = None;
        for g in &self.generators {
            let gt = g.map().table();
            if gt.len() != table.len() {
                return false;
            }
            if indicator
                .iter()
                .zip(gt)
                .all(|(&on, &v)| !on || v == self.top)
            {
                let on: Vec<bool> = gt.iter().map(|&v| v == self.top).collect();
                meet = Some(match meet {
                    None => on,
                    Some(acc) => acc.iter().zip(&on).map(|(&a, &b)| a && b).collect(),
                });
            }
        }
        meet.is_some_and(|m| m == indicator)
    }
}

/// Output of [`decompose_theta`]: a `⊟`/`⊞` skeleton over slots `z_i`, the
/// leaf substitution, and a grounded formula when the domain is a grid.
#[derive(Clone, Debug)]
pub struct ThetaForm {
    pub orientation: Orientation,
    pub algebra: String,
    pub skeleton: Formula,
    /// `substitution[i]` is the leaf for `z_{i+1}`.
    pub substitution: Vec<Arc<ThetaFunction>>,
    pub grounded: Option<Formula>,
    /// Scaler tables used by the skeleton.
    pub unaries: BTreeMap<String, Vec<usize>>,
}

impl ThetaForm {
    /// The skeleton with every slot replaced by its leaf.
    pub fn instantiated(&self) -> Formula {
        let p = self
            .substitution
            .iter()
            .enumerate()
            .map(|(i, t)| (i + 1, Formula::Theta(Arc::clone(t))))
            .collect();
        self.skeleton.substitute(&p).expect("every slot has a leaf")
    }

    pub fn semantics(
        &self,
        alg: &ApproximationAlgebra,
        arity: usize,
    ) -> Result<Semantics, FormulaError> {
        let mut sem = Semantics::with_algebra(alg, arity);
        for (name, table) in &self.unaries {
            sem.declare_unary(name.clone(), table.clone())?;
        }
        Ok(sem)
    }

    /// Operators used by the skeleton.
    pub fn operators(&self) -> BTreeSet<BinOp> {
        self.skeleton.binary_ops()
    }
}

/// Node budget for one decomposition.
const MAX_NODES: usize = 1 << 20;

struct Builder<'a> {
    work: &'a Arc<Poset>,
    alg: &'a ApproximationAlgebra,
    original: &'a Arc<Poset>,
    levels: &'a Arc<Poset>,
    k: &'a KClass,
    dual: bool,
    top: usize,
    base: usize,
    slots: HashMap<usize, usize>,
    leaves: Vec<Arc<ThetaFunction>>,
    unaries: BTreeMap<String, Vec<usize>>,
    nodes: usize,
}

impl Builder<'_> {
    fn table_string(&self, t: &[usize]) -> String {
        let m = PosetMap::new(
            Arc::clone(self.original),
            Arc::clone(self.levels),
            t.to_vec(),
        );
        m.map_or_else(|_| format!("{t:?}"), |m| m.to_string())
    }

    fn express(&mut self, f: Vec<usize>) -> Result<Formula, DecomposeError> {
        self.nodes += 1;
        if self.nodes > MAX_NODES {
            return Err(DecomposeError::IterationOverflow { limit: MAX_NODES });
        }
        let l = self.alg.levels();
        let active = active_set(self.work, l, &f);
        if active.is_empty() {
            return self.join_of_leaves(&f);
        }
        let x = self.work.minimal_elements(&active)[0];
        let inside: Vec<bool> = (0..f.len()).map(|z| self.work.leq(x, z)).collect();
        let mut phi = f.clone();
        for &z in &active {
            let theta = if inside[z] { self.top } else { self.base };
            phi[z] = self.alg.plus(f[z], theta);
            if !l.leq(f[z], phi[z]) {
                return Err(DecomposeError::UpperBoundViolated {
                    element: self.work.id(z).to_string(),
                });
            }
        }
        if phi == f {
            return Err(DecomposeError::NoProgress { step: self.nodes });
        }
        let residual = (0..f.len())
            .map(|z| {
                if phi[z] != f[z] {
                    self.alg.solve_residual(phi[z], f[z])
                } else {
                    Ok(self.alg.dot(f[z]))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let approx = self.express(phi)?;
        let rest = self.express(residual)?;
        Ok(if self.dual {
            Formula::bin(BinOp::BoxMinus, rest, approx)
        } else {
            Formula::bin(BinOp::BoxMinus, approx, rest)
        })
    }

    /// A monotone table as a `⊞`-join of scaled leaves.
    fn join_of_leaves(&mut self, g: &[usize]) -> Result<Formula, DecomposeError> {
        let l = self.alg.levels();
        let n = g.len();
        let mut terms = Vec::new();
        for x in 0..n {
            let v = g[x];
            if v == self.base || self.work.lower_covers(x).iter().any(|&c| l.leq(v, g[c])) {
                continue;
            }
            let leaf = if self.work.up_set(x).len() == n {
                Formula::Const(v)
            } else if self.work.lower_covers(x).is_empty() {
                return Err(DecomposeError::NotRepresentable {
                    table: self.table_string(g),
                });
            } else {
                let slot = self.leaf(x)?;
                if v == self.top {
                    slot
                } else if self.k.admits_scalers() {
                    let name = format!("{}{v}", if self.dual { 'V' } else { 'U' });
                    let table = (0..self.alg.q())
                        .map(|u| if u == self.top { v } else { self.base })
                        .collect();
                    self.unaries.insert(name.clone(), table);
                    Formula::unary(name, slot)
                } else {
                    return Err(DecomposeError::NotRepresentable {
                        table: self.table_string(g),
                    });
                }
            };
            terms.push(leaf);
        }
        Ok(Formula::fold(BinOp::BoxPlus, terms).unwrap_or(Formula::Const(self.base)))
    }

    fn leaf(&mut self, x: usize) -> Result<Formula, DecomposeError> {
        if let Some(&slot) = self.slots.get(&x) {
            return Ok(Formula::Slot(slot));
        }
        let y = self.work.lower_covers(x)[0];
        let theta = special_theta(
            self.original,
            &self.original_alg(),
            self.work.id(y),
            self.work.id(x),
        )?;
        if !self.k.contains(theta.map().table()) {
            return Err(DecomposeError::NotRepresentable {
                table: theta.map().to_string(),
            });
        }
        self.leaves.push(Arc::new(theta));
        let slot = self.leaves.len();
        self.slots.insert(x, slot);
        Ok(Formula::Slot(slot))
    }

    fn original_alg(&self) -> ApproximationAlgebra {
        if self.dual {
            self.alg.dualized()
        } else {
            self.alg.clone()
        }
    }
}

/// Expresses `psi` as a `⊟`/`⊞` formula over leaves from `k` (by default
/// the special θ-functions of the domain), verified pointwise.
pub fn decompose_theta(
    psi: &PosetMap,
    alg: &ApproximationAlgebra,
    k: Option<&KClass>,
) -> Result<ThetaForm, Error> {
    if **psi.codomain() != **alg.levels() {
        return Err(DecomposeError::ShapeMismatch(
            "map codomain is not the algebra's level poset".into(),
        )
        .into());
    }
    let original = Arc::clone(psi.domain());
    let dual = alg.orientation() == Orientation::Dual;
    let (work, work_alg) = if dual {
        (Arc::new(original.dualize()), alg.dualized())
    } else {
        (Arc::clone(&original), alg.clone())
    };
    if !work_alg.has_passed(AxiomSystem::BPlus) {
        let report = work_alg.check_axioms(AxiomSystem::BPlus, None)?;
        if !report.passed() {
            let detail = report
                .failures()
                .map(|v| v.axiom.clone())
                .collect::<Vec<_>>()
                .join(", ");
            return Err(DecomposeError::AlgebraRejected {
                system: if dual { "B+*" } else { "B+" }.into(),
                detail,
            }
            .into());
        }
    }
    let (top, base) = extremes(alg)?;
    let wl = work_alg.levels();
    if !(0..alg.q()).all(|v| wl.leq(base, v)) {
        return Err(DecomposeError::Unsupported("⊙ is not the least level".into()).into());
    }
    let default_k;
    let k = match k {
        Some(k) => k,
        None => {
            default_k = KClass::special(&original, alg)?;
            &default_k
        }
    };
    let mut b = Builder {
        work: &work,
        alg: &work_alg,
        original: &original,
        levels: alg.levels(),
        k,
        dual,
        top,
        base,
        slots: HashMap::new(),
        leaves: Vec::new(),
        unaries: BTreeMap::new(),
        nodes: 0,
    };
    let skeleton = b.express(psi.table().to_vec())?;
    let form = ThetaForm {
        orientation: alg.orientation(),
        algebra: alg.name().to_string(),
        grounded: None,
        skeleton,
        substitution: b.leaves,
        unaries: b.unaries,
    };

    let sem = form.semantics(alg, 0)?;
    let inst = form.instantiated();
    for x in 0..original.len() {
        if inst.eval_at(&sem, &[], Some(x))? != psi.get(x) {
            return Err(FormulaError::NotEquivalent { point: vec![x] }.into());
        }
    }
    let grounded = ground(&form, &original, alg, top, base)?;
    if let Some(g) = &grounded {
        for x in 0..original.len() {
            let c = original.coords(x).expect("grid element");
            if g.eval_at(&sem, &c, None)? != psi.get(x) {
                return Err(FormulaError::NotEquivalent { point: c }.into());
            }
        }
    }
    Ok(ThetaForm { grounded, ..form })
}

/// Rewrites leaves over a grid domain into threshold formulas in the
/// variables: conjunctions of `Γ_{a_j}(x_j)` (primal) or disjunctions of
/// `Γ_{a_j+1}(x_j)` (dual). Plain variables replace the thresholds at `q = 2`.
fn ground(
    form: &ThetaForm,
    m: &Poset,
    alg: &ApproximationAlgebra,
    top: usize,
    base: usize,
) -> Result<Option<Formula>, FormulaError> {
    let q = alg.q();
    let Some((radix, _, false)) = m.grid_shape() else {
        return Ok(None);
    };
    let dual = form.orientation == Orientation::Dual;
    let endpoints = if dual {
        (top, base) == (0, q - 1)
    } else {
        (top, base) == (q - 1, 0)
    };
    if radix > q || !endpoints || alg.levels().max_chain_elements() != q {
        return Ok(None);
    }
    let threshold = |level: usize, j: usize| {
        if q == 2 {
            Formula::Var(j)
        } else {
            Formula::unary(format!("G{level}"), Formula::Var(j))
        }
    };
    let mut p = BTreeMap::new();
    for (i, leaf) in form.substitution.iter().enumerate() {
        let ThetaKind::Special { x, .. } = leaf.kind() else {
            return Ok(None);
        };
        let a = m
            .coords(m.index_of(x).map_err(|_| FormulaError::UnresolvedTheta)?)
            .expect("grid element");
        let f = if dual {
            let terms = a
                .iter()
                .enumerate()
                .filter(|(_, &c)| c + 1 < radix)
                .map(|(j, &c)| threshold(c + 1, j + 1));
            Formula::fold(BinOp::Or, terms)
        } else {
            let terms = a
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(j, &c)| threshold(c, j + 1));
            Formula::fold(BinOp::And, terms)
        };
        p.insert(i + 1, f.ok_or(FormulaError::UnresolvedTheta)?);
    }
    form.skeleton.substitute(&p).map(Some)
}

/// A `q`-valued function of `n` arguments, row-major with `x_1` most
/// significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvTable {
    pub q: usize,
    pub n: usize,
    pub values: Vec<usize>,
}

pub const MAX_MV_POINTS: usize = 1 << 16;

impl MvTable {
    pub fn new(q: usize, n: usize, values: Vec<usize>) -> Result<Self, FormulaError> {
        if !(2..=crate::algebra::MAX_LEVELS).contains(&q) {
            return Err(FormulaError::LevelOutOfRange {
                level: q,
                q: crate::algebra::MAX_LEVELS,
            });
        }
        let expected = (q as u64)
            .checked_pow(n as u32)
            .filter(|&p| n >= 1 && p <= MAX_MV_POINTS as u64);
        match expected {
            Some(p) if p as usize == values.len() => {}
            _ => {
                return Err(FormulaError::TableShapeMismatch {
                    expected: expected.map_or(MAX_MV_POINTS, |p| p as usize),
                    found: values.len(),
                })
            }
        }
        if let Some(&v) = values.iter().find(|&&v| v >= q) {
            return Err(FormulaError::LevelOutOfRange { level: v, q });
        }
        Ok(MvTable { q, n, values })
    }

    pub fn semantics(&self) -> Semantics {
        Semantics::chain(self.q, self.n)
    }
}

/// Builds `⋁_a u_{ψ(a)}(⋀_j eq_{a_j}(x_j))` from threshold unaries, scalers
/// and `imp`/`lit:0` negation, then checks it at every point.
pub fn synthesize_mv(table: &MvTable) -> Result<FormulaFile, FormulaError> {
    let q = table.q;
    let top = q - 1;
    let threshold = |level: usize, j: usize| {
        if q == 2 {
            Formula::Var(j)
        } else {
            Formula::unary(format!("G{level}"), Formula::Var(j))
        }
    };
    let neg = |f: Formula| Formula::imp(f, Formula::Const(0));
    let eq = |c: usize, j: usize| {
        if c == top {
            threshold(c, j)
        } else if c == 0 {
            neg(threshold(1, j))
        } else {
            Formula::and(threshold(c, j), neg(threshold(c + 1, j)))
        }
    };
    let sem = table.semantics();
    let terms: Vec<Formula> = sem
        .points()
        .zip(&table.values)
        .filter(|(_, &v)| v != 0)
        .map(|(a, &v)| {
            let conj = Formula::fold(BinOp::And, a.iter().enumerate().map(|(j, &c)| eq(c, j + 1)))
                .expect("n >= 1");
            if v == top {
                conj
            } else {
                Formula::unary(format!("U{v}"), conj)
            }
        })
        .collect();
    let formula = balanced(BinOp::Or, terms).unwrap_or(Formula::Const(0));
    if let Some(point) = sem.first_mismatch(&formula, &table.values)? {
        return Err(FormulaError::NotEquivalent { point });
    }
    Ok(FormulaFile::new(q, table.n, formula))
}

/// Balanced tree of `op`, keeping evaluation depth logarithmic.
fn balanced(op: BinOp, mut items: Vec<Formula>) -> Option<Formula> {
    match items.len() {
        0 => None,
        1 => items.pop(),
        len => {
            let right = items.split_off(len / 2);
            Some(Formula::bin(op, balanced(op, items)?, balanced(op, right)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cube(n: usize) -> Arc<Poset> {
        Arc::new(Poset::boolean_cube(n).unwrap())
    }

    fn alg(sel: &str) -> ApproximationAlgebra {
        ApproximationAlgebra::from_selector(sel).unwrap()
    }

    fn map(m: &Arc<Poset>, a: &ApproximationAlgebra, t: &[usize]) -> PosetMap {
        PosetMap::new(Arc::clone(m), Arc::clone(a.levels()), t.to_vec()).unwrap()
    }

    #[test]
    fn special_theta_examples() {
        let b = alg("boolean-primal");
        let t = special_theta(&cube(2), &b, "00", "01").unwrap();
        assert_eq!(t.map().table(), &[0, 1, 0, 1]);
        let t = special_theta(&cube(3), &b, "000", "100").unwrap();
        assert_eq!(t.map().table(), &[0, 0, 0, 0, 1, 1, 1, 1]);
        let c3 = alg("chain-primal:3");
        let m = Arc::new(Poset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap());
        let t = special_theta(&m, &c3, "a", "b").unwrap();
        assert_eq!(t.map().table(), &[0, 2, 2]);
        assert!(matches!(
            special_theta(&m, &c3, "a", "c"),
            Err(DecomposeError::NotCoverPair { .. })
        ));
    }

    #[test]
    fn non_constant_dot_is_rejected() {
        let two = vec![vec![0, 0], vec![1, 0]];
        let plus = vec![vec![0, 1], vec![1, 1]];
        let a =
            ApproximationAlgebra::from_tables("odd", 2, Orientation::Primal, two, plus, vec![0, 1])
                .unwrap();
        assert_eq!(
            special_theta(&cube(1), &a, "0", "1").unwrap_err(),
            DecomposeError::NonConstantDot
        );
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(3, 1).unwrap(), vec![0, 2, 2]);
        assert_eq!(gamma(3, 0).unwrap(), vec![2, 2, 2]);
        assert_eq!(gamma(2, 1).unwrap(), vec![0, 1]);
        assert!(gamma(3, 3).is_err());
        assert_eq!(
            theta_from_gamma(2, 2, 1, 2).unwrap().map().table(),
            &[0, 1, 0, 1]
        );
        assert_eq!(
            theta_from_gamma(3, 1, 2, 1).unwrap().map().table(),
            &[0, 0, 2]
        );
        assert_eq!(theta_from_gamma(3, 2, 0, 1).unwrap().map().table(), &[2; 9]);
        assert!(matches!(
            theta_from_gamma(2, 2, 1, 3),
            Err(Error::Formula(FormulaError::IndexOutOfRange { .. }))
        ));
    }

    #[test]
    fn k_class_membership() {
        let b = alg("boolean-primal");
        let k = KClass::special(&cube(2), &b).unwrap();
        assert!(k.contains(&[0, 0, 0, 1]));
        assert!(k.contains(&[0, 1, 0, 1]));
        assert!(k.contains(&[1, 1, 1, 1]));
        assert!(!k.contains(&[0, 1, 1, 1]));
        let g = KClass::gamma(3, 2).unwrap();
        // Γ2(x1) ∧ Γ1(x2)
        let meet: Vec<usize> = (0..9)
            .map(|i| if i / 3 >= 2 && i % 3 >= 1 { 2 } else { 0 })
            .collect();
        assert!(g.contains(&meet));
        let scaled: Vec<usize> = meet.iter().map(|&v| v / 2).collect();
        assert!(g.contains(&scaled));
        let union: Vec<usize> = (0..9)
            .map(|i| if i / 3 >= 2 || i % 3 >= 2 { 2 } else { 0 })
            .collect();
        assert!(!g.contains(&union));
    }

    #[test]
    fn and_is_a_single_leaf() {
        let b = alg("boolean-primal");
        let m = cube(2);
        let form = decompose_theta(&map(&m, &b, &[0, 0, 0, 1]), &b, None).unwrap();
        assert_eq!(form.skeleton, Formula::Slot(1));
        assert_eq!(form.grounded.unwrap().to_string(), "(and x1 x2)");
    }

    #[test]
    fn negation_subtracts_from_top() {
        let b = alg("boolean-primal");
        let form = decompose_theta(&map(&cube(1), &b, &[1, 0]), &b, None).unwrap();
        assert_eq!(form.skeleton.to_string(), "(boxminus lit:1 z1)");
        assert_eq!(form.grounded.unwrap().to_string(), "(boxminus lit:1 x1)");
    }

    #[test]
    fn xor_over_monomials() {
        let b = alg("boolean-primal");
        let form = decompose_theta(&map(&cube(2), &b, &[0, 1, 1, 0]), &b, None).unwrap();
        let ops = form.operators();
        assert!(ops
            .iter()
            .all(|op| matches!(op, BinOp::BoxMinus | BinOp::BoxPlus)));
        let g = form.grounded.unwrap();
        assert_eq!(
            Semantics::with_algebra(&b, 2).table_of(&g).unwrap(),
            vec![0, 1, 1, 0]
        );
    }

    #[test]
    fn dual_orientation_grounds_to_clauses() {
        let d = alg("boolean-dual");
        for t in 0..16usize {
            let table: Vec<usize> = (0..4).map(|i| t >> (3 - i) & 1).collect();
            let form = decompose_theta(&map(&cube(2), &d, &table), &d, None).unwrap();
            let g = form.grounded.unwrap();
            assert!(!g.binary_ops().contains(&BinOp::And), "{g}");
            assert_eq!(Semantics::with_algebra(&d, 2).table_of(&g).unwrap(), table);
        }
    }

    #[test]
    fn chains_use_scalers() {
        let c = alg("chain-primal:3");
        let m = Arc::new(Poset::grid(3, 1).unwrap());
        let form = decompose_theta(&map(&m, &c, &[2, 0, 1]), &c, None).unwrap();
        assert!(form.unaries.contains_key("U1"));
        let g = form.grounded.unwrap();
        let mut sem = Semantics::with_algebra(&c, 1);
        for (n, t) in &form.unaries {
            sem.declare_unary(n.clone(), t.clone()).unwrap();
        }
        assert_eq!(sem.table_of(&g).unwrap(), vec![2, 0, 1]);
    }

    #[test]
    fn isolated_minimal_element_is_not_representable() {
        let b = alg("boolean-primal");
        let m = Arc::new(Poset::build(&["a", "b"], &[] as &[(&str, &str)]).unwrap());
        let err = decompose_theta(&map(&m, &b, &[1, 0]), &b, None).unwrap_err();
        assert!(matches!(
            err,
            Error::Decompose(DecomposeError::NotRepresentable { .. })
        ));
        assert!(err.is_internal());
    }

    #[test]
    fn mv_examples() {
        let f = synthesize_mv(&MvTable::new(2, 1, vec![1, 0]).unwrap()).unwrap();
        assert_eq!(f.formula.to_string(), "(imp x1 lit:0)");
        let f = synthesize_mv(&MvTable::new(3, 1, vec![0, 1, 2]).unwrap()).unwrap();
        let sem = f.semantics().unwrap();
        assert_eq!(sem.table_of(&f.formula).unwrap(), vec![0, 1, 2]);
        let f = synthesize_mv(&MvTable::new(3, 2, vec![1; 9]).unwrap()).unwrap();
        assert!(f.formula.unary_names().contains("U1"));
        assert!(f.unaries.contains_key("U1") && f.unaries.contains_key("G1"));
        assert_eq!(
            f.semantics().unwrap().table_of(&f.formula).unwrap(),
            vec![1; 9]
        );
        let zero = synthesize_mv(&MvTable::new(3, 1, vec![0; 3]).unwrap()).unwrap();
        assert_eq!(zero.formula, Formula::Const(0));
    }

    #[test]
    fn mv_table_shape() {
        assert!(matches!(
            MvTable::new(3, 2, vec![0; 8]),
            Err(FormulaError::TableShapeMismatch { .. })
        ));
        assert!(matches!(
            MvTable::new(3, 1, vec![0, 3, 0]),
            Err(FormulaError::LevelOutOfRange { .. })
        ));
    }
}
