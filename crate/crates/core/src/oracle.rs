//! Brute-force reference implementations used to cross-check the engine.
//!
//! Nothing here calls into the decomposition code paths it checks: order
//! relations are rebuilt from the cover pairs by transitive closure, pairs
//! are scanned exhaustively, and formulas are evaluated by a separate
//! interpreter with its own unary tables.

#![allow(clippy::needless_range_loop)]

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::ApproximationAlgebra;
use crate::formula::{BinOp, Formula};
use crate::order::{Poset, PosetMap};

/// Reflexive-transitive closure of a relation given by edges.
pub fn closure(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut r = vec![vec![false; n]; n];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(a, b) in edges {
        r[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    if r[k][j] {
                        r[i][j] = true;
                    }
                }
            }
        }
    }
    r
}

/// `rel[a][b]` iff `a <= b`, rebuilt from the covers of `m`.
pub fn relation(m: &Poset) -> Vec<Vec<bool>> {
    closure(m.len(), &m.cover_pairs())
}

/// All comparable pairs `(lo, hi)` on which `table` breaks monotonicity.
pub fn nonmono_pairs(
    rel: &[Vec<bool>],
    levels: &[Vec<bool>],
    table: &[usize],
) -> Vec<(usize, usize)> {
    let n = rel.len();
    let mut out = Vec::new();
    for lo in 0..n {
        for hi in 0..n {
            if rel[lo][hi] && !levels[table[lo]][table[hi]] {
                out.push((lo, hi));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Number of elements on a longest chain.
pub fn longest_chain(rel: &[Vec<bool>]) -> usize {
    let n = rel.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (0..n).filter(|&y| rel[y][x]).count());
    let mut best = vec![1; n];
    for (i, &x) in order.iter().enumerate() {
        for &y in &order[..i] {
            if y != x && rel[y][x] {
                best[x] = best[x].max(best[y] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Right fold of the parts with the algebra's composition step.
pub fn recompose(alg: &ApproximationAlgebra, parts: &[Vec<usize>]) -> Vec<usize> {
    let (last, rest) = parts.split_last().expect("nonempty");
    rest.iter().rev().fold(last.clone(), |acc, p| {
        p.iter()
            .zip(&acc)
            .map(|(&a, &r)| alg.compose(a, r))
            .collect()
    })
}

/// The residual sequence `ψ_0 = ψ, ψ_1, ..` implied by a list of parts.
pub fn residuals(alg: &ApproximationAlgebra, parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    (0..parts.len())
        .map(|i| recompose(alg, &parts[i..]))
        .collect()
}

/// Direct dual decomposition in the original order: the active set is the
/// down-closure of the lower ends of all violating pairs, the approximation
/// aggregates `ψ` over up-sets with the algebra's set rule.
pub fn dual_decompose(
    psi: &PosetMap,
    alg: &ApproximationAlgebra,
) -> Result<Vec<Vec<usize>>, String> {
    let m = psi.domain();
    let n = m.len();
    let rel = relation(m);
    let lrel = relation(alg.levels());
    let mut cur = psi.table().to_vec();
    let mut parts = Vec::new();
    for _ in 0..=n + 1 {
        let pairs = nonmono_pairs(&rel, &lrel, &cur);
        if pairs.is_empty() {
            parts.push(cur);
            return Ok(parts);
        }
        let active: Vec<bool> = (0..n)
            .map(|x| pairs.iter().any(|&(lo, _)| rel[x][lo]))
            .collect();
        let mut phi = cur.clone();
        for x in (0..n).filter(|&x| active[x]) {
            let above: Vec<usize> = (0..n).filter(|&z| rel[x][z]).map(|z| cur[z]).collect();
            phi[x] = alg.set_plus(&above).map_err(|e| e.to_string())?;
        }
        let next = (0..n)
            .map(|x| {
                if phi[x] == cur[x] {
                    Ok(alg.dot(cur[x]))
                } else {
                    alg.solve_residual(phi[x], cur[x])
                        .map_err(|e| e.to_string())
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        parts.push(phi);
        cur = next;
    }
    Err("no convergence".into())
}

/// Operation tables for [`eval`]: `q` levels on a chain, with `boxminus`
/// and `boxplus` supplied as closures.
pub struct Interp<'a> {
    pub q: usize,
    pub boxminus: &'a dyn Fn(usize, usize) -> usize,
    pub boxplus: &'a dyn Fn(usize, usize) -> usize,
}

impl Interp<'_> {
    fn unary(&self, name: &str, v: usize) -> Option<usize> {
        let top = self.q - 1;
        let (family, level) = name.split_at(1);
        let level: usize = level.parse().ok()?;
        Some(match family {
            "G" => {
                if v >= level {
                    top
                } else {
                    0
                }
            }
            "U" => {
                if v == top {
                    level
                } else {
                    0
                }
            }
            "V" => {
                if v == 0 {
                    level
                } else {
                    top
                }
            }
            _ => return None,
        })
    }

    /// Evaluates `f` at `point`; `None` on anything it does not understand.
    pub fn eval(&self, f: &Formula, point: &[usize]) -> Option<usize> {
        let top = self.q as isize - 1;
        Some(match f {
            Formula::Var(j) => *point.get(j.checked_sub(1)?)?,
            Formula::Const(c) => *c,
            Formula::Unary(name, a) => self.unary(name, self.eval(a, point)?)?,
            Formula::Bin(op, a, b) => {
                let (x, y) = (self.eval(a, point)?, self.eval(b, point)?);
                match op {
                    BinOp::And => x.min(y),
                    BinOp::Or => x.max(y),
                    BinOp::Imp => top.min(top - x as isize + y as isize) as usize,
                    BinOp::BoxMinus => (self.boxminus)(x, y),
                    BinOp::BoxPlus => (self.boxplus)(x, y),
                }
            }
            Formula::Slot(_) | Formula::Theta(_) => return None,
        })
    }
}

/// Points of `{0..q}^n`, `x_1` most significant.
pub fn points(q: usize, n: usize) -> Vec<Vec<usize>> {
    (0..q.pow(n as u32))
        .map(|mut i| {
            let mut p = vec![0; n];
            for slot in p.iter_mut().rev() {
                *slot = i % q;
                i /= q;
            }
            p
        })
        .collect()
}

/// Random poset on `1..=max_n` elements: a random DAG over a shuffled
/// labelling, edges kept with a random density.
pub fn random_poset(rng: &mut impl Rng, max_n: usize) -> Poset {
    let n = rng.gen_range(1..=max_n);
    let density: f64 = rng.gen_range(0.15..0.6);
    let mut labels: Vec<String> = (0..n).map(|i| format!("m{i}")).collect();
    labels.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                edges.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    let mut elements = labels.clone();
    elements.sort();
    Poset::build(&elements, &edges).expect("acyclic by construction")
}

pub fn random_table(rng: &mut impl Rng, len: usize, q: usize) -> Vec<usize> {
    (0..len).map(|_| rng.gen_range(0..q)).collect()
}
