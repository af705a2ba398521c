//! Finite posets and the order-theoretic primitives the decompositions
//! consume.
//!
//! A [`Poset`] is either an explicit relation (built from a cover list, at
//! most [`MAX_EXPLICIT`] elements) or an implicit product of chains
//! (`grid`), which covers Boolean cubes up to arity 16 and finite chains.
//! Elements are addressed by their index in the canonical enumeration; ids
//! are only for I/O.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::OrderError;

/// Largest explicit (table-backed) poset.
pub const MAX_EXPLICIT: usize = 4096;
/// Largest implicit grid (`radix^arity`).
pub const MAX_GRID: usize = 1 << 16;
/// Largest Boolean cube arity.
pub const MAX_CUBE_ARITY: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Shape {
    /// `below[y]` holds every `x <= y`; `above[x]` every `y >= x`.
    Explicit {
        below: Vec<FixedBitSet>,
        above: Vec<FixedBitSet>,
    },
    /// Product of `arity` chains `0 < 1 < .. < radix-1`, index is the
    /// mixed-radix value with coordinate 1 most significant.
    Grid {
        radix: usize,
        arity: usize,
        reversed: bool,
    },
}

/// A finite partially ordered set.
#[derive(Clone, Debug)]
pub struct Poset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    shape: Shape,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    /// A linear extension, bottom first.
    topo: Vec<usize>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.shape == other.shape
    }
}

impl Eq for Poset {}

impl Poset {
    /// Builds a poset from element ids and a generating cover relation.
    ///
    /// The input pairs need not be a transitive reduction; the stored cover
    /// list is the reduction of their transitive closure.
    pub fn build<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self, OrderError> {
        let n = elements.len();
        if n == 0 {
            return Err(OrderError::Empty);
        }
        if n > MAX_EXPLICIT {
            return Err(OrderError::TooLarge {
                size: n,
                max: MAX_EXPLICIT,
            });
        }
        let mut index = HashMap::with_capacity(n);
        let mut ids = Vec::with_capacity(n);
        for (i, e) in elements.iter().enumerate() {
            let e = e.as_ref().to_string();
            if index.insert(e.clone(), i).is_some() {
                return Err(OrderError::DuplicateElement(e));
            }
            ids.push(e);
        }
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut succs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (a, b) in covers {
            let lo = *index
                .get(a.as_ref())
                .ok_or_else(|| OrderError::UnknownElement(a.as_ref().to_string()))?;
            let hi = *index
                .get(b.as_ref())
                .ok_or_else(|| OrderError::UnknownElement(b.as_ref().to_string()))?;
            if lo == hi {
                return Err(OrderError::CycleDetected(ids[lo].clone()));
            }
            if !succs[lo].contains(&hi) {
                succs[lo].push(hi);
                preds[hi].push(lo);
            }
        }

        // Kahn's algorithm; smallest index first keeps the extension canonical.
        let mut indegree: Vec<usize> = preds.iter().map(Vec::len).collect();
        let mut ready: std::collections::BTreeSet<usize> =
            (0..n).filter(|&i| indegree[i] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(x) = ready.pop_first() {
            topo.push(x);
            for &y in &succs[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    ready.insert(y);
                }
            }
        }
        if topo.len() < n {
            let stuck = (0..n).find(|&i| indegree[i] > 0).unwrap_or(0);
            return Err(OrderError::CycleDetected(ids[stuck].clone()));
        }

        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for &y in &topo {
            let mut row = FixedBitSet::with_capacity(n);
            row.insert(y);
            for &p in &preds[y] {
                row.union_with(&below[p]);
            }
            below[y] = row;
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (y, row) in below.iter().enumerate() {
            for x in row.ones() {
                above[x].insert(y);
            }
        }

        // A generating pair (p, y) is a cover unless p lies strictly below
        // another generator of y.
        let mut lower_covers = vec![Vec::new(); n];
        for y in 0..n {
            let mut shadow = FixedBitSet::with_capacity(n);
            for &p in &preds[y] {
                let mut strict = below[p].clone();
                strict.set(p, false);
                shadow.union_with(&strict);
            }
            let mut lc: Vec<usize> = preds[y]
                .iter()
                .copied()
                .filter(|&p| !shadow.contains(p))
                .collect();
            lc.sort_unstable();
            lower_covers[y] = lc;
        }
        let upper_covers = invert_covers(&lower_covers);

        Ok(Poset {
            ids,
            index,
            shape: Shape::Explicit { below, above },
            lower_covers,
            upper_covers,
            topo,
        })
    }

    /// The Boolean cube `B^n` under the componentwise order, `1 <= n <= 16`.
    pub fn boolean_cube(arity: usize) -> Result<Self, OrderError> {
        if arity == 0 || arity > MAX_CUBE_ARITY {
            return Err(OrderError::ArityOutOfRange {
                arity,
                max: MAX_CUBE_ARITY,
            });
        }
        Self::grid(2, arity)
    }

    /// The chain `0 < 1 < .. < q-1`.
    pub fn chain(q: usize) -> Result<Self, OrderError> {
        Self::grid(q, 1)
    }

    /// The product of `arity` copies of the chain of length `radix`.
    pub fn grid(radix: usize, arity: usize) -> Result<Self, OrderError> {
        if radix == 0 || arity == 0 {
            return Err(OrderError::Empty);
        }
        let size = radix
            .checked_pow(arity as u32)
            .filter(|&s| s <= MAX_GRID)
            .ok_or(OrderError::TooLarge {
                size: usize::MAX,
                max: MAX_GRID,
            })?;
        let ids: Vec<String> = (0..size).map(|i| grid_id(i, radix, arity)).collect();
        let index = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let mut lower_covers = vec![Vec::new(); size];
        let mut weight = 1;
        for _ in 0..arity {
            for (x, lc) in lower_covers.iter_mut().enumerate() {
                if (x / weight) % radix > 0 {
                    lc.push(x - weight);
                }
            }
            weight *= radix;
        }
        for lc in &mut lower_covers {
            lc.sort_unstable();
        }
        let upper_covers = invert_covers(&lower_covers);
        Ok(Poset {
            ids,
            index,
            shape: Shape::Grid {
                radix,
                arity,
                reversed: false,
            },
            lower_covers,
            upper_covers,
            topo: (0..size).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn index_of(&self, id: &str) -> Result<usize, OrderError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| OrderError::UnknownElement(id.to_string()))
    }

    /// `(radix, arity, reversed)` when the poset is an implicit grid.
    pub fn grid_shape(&self) -> Option<(usize, usize, bool)> {
        match self.shape {
            Shape::Grid {
                radix,
                arity,
                reversed,
            } => Some((radix, arity, reversed)),
            Shape::Explicit { .. } => None,
        }
    }

    /// Arity when this is an un-reversed Boolean cube.
    pub fn cube_arity(&self) -> Option<usize> {
        match self.grid_shape() {
            Some((2, n, false)) => Some(n),
            _ => None,
        }
    }

    /// Coordinates of a grid element, coordinate 1 first.
    pub fn coords(&self, x: usize) -> Option<Vec<usize>> {
        let (radix, arity, _) = self.grid_shape()?;
        Some(digits(x, radix, arity))
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        match &self.shape {
            Shape::Explicit { below, .. } => below[y].contains(x),
            Shape::Grid {
                radix,
                arity,
                reversed,
            } => {
                let (a, b) = if *reversed { (y, x) } else { (x, y) };
                grid_leq(a, b, *radix, *arity)
            }
        }
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Elements covered by `x`, ascending.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower_covers[x]
    }

    /// Elements covering `x`, ascending.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper_covers[x]
    }

    pub fn covers(&self, lower: usize, upper: usize) -> bool {
        self.lower_covers[upper].binary_search(&lower).is_ok()
    }

    /// All cover pairs `(lower, upper)` sorted lexicographically.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .upper_covers
            .iter()
            .enumerate()
            .flat_map(|(x, ups)| ups.iter().map(move |&y| (x, y)))
            .collect();
        out.sort_unstable();
        out
    }

    /// A linear extension of the order, bottom first.
    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    /// `{y | y <= x}` in canonical order.
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        match &self.shape {
            Shape::Explicit { below, .. } => below[x].ones().collect(),
            Shape::Grid {
                radix,
                arity,
                reversed: false,
            } => grid_below(x, *radix, *arity),
            Shape::Grid {
                radix,
                arity,
                reversed: true,
            } => grid_above(x, *radix, *arity),
        }
    }

    /// `{y | x <= y}` in canonical order.
    pub fn up_set(&self, x: usize) -> Vec<usize> {
        match &self.shape {
            Shape::Explicit { above, .. } => above[x].ones().collect(),
            Shape::Grid {
                radix,
                arity,
                reversed: false,
            } => grid_above(x, *radix, *arity),
            Shape::Grid {
                radix,
                arity,
                reversed: true,
            } => grid_below(x, *radix, *arity),
        }
    }

    /// Id-level wrapper over [`Poset::down_set`].
    pub fn down_set_of(&self, id: &str) -> Result<Vec<usize>, OrderError> {
        Ok(self.down_set(self.index_of(id)?))
    }

    /// Id-level wrapper over [`Poset::up_set`].
    pub fn up_set_of(&self, id: &str) -> Result<Vec<usize>, OrderError> {
        Ok(self.up_set(self.index_of(id)?))
    }

    /// The minimal members of `set`, canonical order. Every member of `set`
    /// dominates at least one of them and they are pairwise incomparable.
    pub fn minimal_elements(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&s| !set.iter().any(|&t| self.lt(t, s)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn maximal_elements(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&s| !set.iter().any(|&t| self.lt(s, t)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Minimal elements of the whole poset.
    pub fn minima(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.lower_covers[x].is_empty())
            .collect()
    }

    /// Maximal elements of the whole poset.
    pub fn maxima(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.upper_covers[x].is_empty())
            .collect()
    }

    /// Least upper bound of a nonempty set, if one exists.
    pub fn supremum(&self, set: &[usize]) -> Option<usize> {
        if set.is_empty() {
            return None;
        }
        let uppers: Vec<usize> = (0..self.len())
            .filter(|&u| set.iter().all(|&s| self.leq(s, u)))
            .collect();
        uppers
            .iter()
            .copied()
            .find(|&u| uppers.iter().all(|&v| self.leq(u, v)))
    }

    /// Number of elements in a longest chain.
    pub fn max_chain_elements(&self) -> usize {
        let mut height = vec![1usize; self.len()];
        for &x in &self.topo {
            for &c in &self.lower_covers[x] {
                height[x] = height[x].max(height[c] + 1);
            }
        }
        height.into_iter().max().unwrap_or(0)
    }

    /// The order-dual poset on the same ids and enumeration.
    pub fn dualize(&self) -> Poset {
        let shape = match &self.shape {
            Shape::Explicit { below, above } => Shape::Explicit {
                below: above.clone(),
                above: below.clone(),
            },
            Shape::Grid {
                radix,
                arity,
                reversed,
            } => Shape::Grid {
                radix: *radix,
                arity: *arity,
                reversed: !reversed,
            },
        };
        Poset {
            ids: self.ids.clone(),
            index: self.index.clone(),
            shape,
            lower_covers: self.upper_covers.clone(),
            upper_covers: self.lower_covers.clone(),
            topo: self.topo.iter().rev().copied().collect(),
        }
    }

    /// Backtracking search for an order isomorphism `self -> other`, for
    /// posets of at most 12 elements. Returns the image of each element.
    pub fn find_isomorphism(&self, other: &Poset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() || n > 12 {
            return None;
        }
        let profile = |p: &Poset, x: usize| (p.down_set(x).len(), p.up_set(x).len());
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            i: usize,
            a: &Poset,
            b: &Poset,
            image: &mut Vec<usize>,
            used: &mut Vec<bool>,
            profile: &dyn Fn(&Poset, usize) -> (usize, usize),
        ) -> bool {
            if i == a.len() {
                return true;
            }
            for cand in 0..b.len() {
                if used[cand] || profile(a, i) != profile(b, cand) {
                    continue;
                }
                let consistent = (0..i).all(|j| {
                    a.leq(j, i) == b.leq(image[j], cand) && a.leq(i, j) == b.leq(cand, image[j])
                });
                if !consistent {
                    continue;
                }
                image[i] = cand;
                used[cand] = true;
                if go(i + 1, a, b, image, used, profile) {
                    return true;
                }
                used[cand] = false;
            }
            false
        }
        go(0, self, other, &mut image, &mut used, &profile).then_some(image)
    }

    /// Whether the poset is order-isomorphic to its dual.
    pub fn is_self_dual(&self) -> bool {
        self.find_isomorphism(&self.dualize()).is_some()
    }

    /// Order-embeds the poset into `B^{|P|}`: `x` goes to the characteristic
    /// vector of its down-set over the canonical enumeration (element 1 is
    /// the most significant coordinate). The embedding property is checked
    /// over all pairs before returning.
    pub fn embed_into_cube(self: &Arc<Self>) -> Result<PosetMap, OrderError> {
        let n = self.len();
        if n > MAX_CUBE_ARITY {
            return Err(OrderError::ArityOutOfRange {
                arity: n,
                max: MAX_CUBE_ARITY,
            });
        }
        let cube = Arc::new(Poset::boolean_cube(n)?);
        let table: Vec<usize> = (0..n)
            .map(|x| {
                self.down_set(x)
                    .into_iter()
                    .fold(0usize, |acc, e| acc | (1 << (n - 1 - e)))
            })
            .collect();
        for x in 0..n {
            for y in 0..n {
                if self.leq(x, y) != cube.leq(table[x], table[y]) {
                    return Err(OrderError::NotAnEmbedding {
                        x: self.ids[x].clone(),
                        y: self.ids[y].clone(),
                    });
                }
            }
        }
        PosetMap::new(Arc::clone(self), cube, table)
    }

    /// Ids of a set of indices.
    pub fn names(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&x| self.ids[x].clone()).collect()
    }
}

fn invert_covers(lower: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut upper = vec![Vec::new(); lower.len()];
    for (y, lc) in lower.iter().enumerate() {
        for &x in lc {
            upper[x].push(y);
        }
    }
    upper
}

fn digits(mut x: usize, radix: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = x % radix;
        x /= radix;
    }
    out
}

fn grid_id(x: usize, radix: usize, arity: usize) -> String {
    let d = digits(x, radix, arity);
    if arity == 1 {
        d[0].to_string()
    } else if radix <= 10 {
        d.iter().map(|v| char::from(b'0' + *v as u8)).collect()
    } else {
        d.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn grid_leq(mut x: usize, mut y: usize, radix: usize, arity: usize) -> bool {
    if radix == 2 {
        return x & !y == 0;
    }
    for _ in 0..arity {
        if x % radix > y % radix {
            return false;
        }
        x /= radix;
        y /= radix;
    }
    true
}

fn grid_below(x: usize, radix: usize, arity: usize) -> Vec<usize> {
    if radix == 2 {
        // Submasks of x in increasing order.
        let mut out = Vec::with_capacity(1 << x.count_ones());
        let mut s = 0usize;
        loop {
            out.push(s);
            if s == x {
                break;
            }
            s = ((s | !x).wrapping_add(1)) & x;
        }
        return out;
    }
    let bounds = digits(x, radix, arity);
    odometer(&vec![0; arity], &bounds, radix)
}

fn grid_above(x: usize, radix: usize, arity: usize) -> Vec<usize> {
    let lows = digits(x, radix, arity);
    odometer(&lows, &vec![radix - 1; arity], radix)
}

/// All tuples between `lo` and `hi` coordinatewise, as indices ascending.
fn odometer(lo: &[usize], hi: &[usize], radix: usize) -> Vec<usize> {
    let mut cur = lo.to_vec();
    let mut out = Vec::new();
    loop {
        out.push(cur.iter().fold(0, |acc, d| acc * radix + d));
        let mut k = cur.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < hi[k] {
                cur[k] += 1;
                break;
            }
            cur[k] = lo[k];
        }
    }
}

/// A total map between two posets, stored as a table over the domain's
/// canonical enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    domain: Arc<Poset>,
    codomain: Arc<Poset>,
    table: Vec<usize>,
}

/// A comparable pair `(low, high)` with `low <= high`.
pub type Pair = (usize, usize);

impl PosetMap {
    pub fn new(
        domain: Arc<Poset>,
        codomain: Arc<Poset>,
        table: Vec<usize>,
    ) -> Result<Self, OrderError> {
        if table.len() != domain.len() {
            return Err(OrderError::TableLength {
                expected: domain.len(),
                found: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= codomain.len()) {
            return Err(OrderError::UnknownElement(format!("codomain index {bad}")));
        }
        Ok(PosetMap {
            domain,
            codomain,
            table,
        })
    }

    pub fn constant(
        domain: Arc<Poset>,
        codomain: Arc<Poset>,
        value: usize,
    ) -> Result<Self, OrderError> {
        let table = vec![value; domain.len()];
        Self::new(domain, codomain, table)
    }

    pub fn from_fn(
        domain: Arc<Poset>,
        codomain: Arc<Poset>,
        f: impl Fn(usize) -> usize,
    ) -> Result<Self, OrderError> {
        let table = (0..domain.len()).map(f).collect();
        Self::new(domain, codomain, table)
    }

    pub fn domain(&self) -> &Arc<Poset> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<Poset> {
        &self.codomain
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn get(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `Ok(())` when monotone, otherwise the first violating cover pair.
    ///
    /// Scanning covers suffices: a violation on a comparable pair propagates
    /// to some cover along any maximal chain between the two.
    pub fn is_monotone(&self) -> Result<(), Pair> {
        for x in 0..self.domain.len() {
            for &y in self.domain.upper_covers(x) {
                if !self.codomain.leq(self.table[x], self.table[y]) {
                    return Err((x, y));
                }
            }
        }
        Ok(())
    }

    /// Every comparable pair on which the map fails to preserve order.
    pub fn nonmono_domain(&self) -> NonMonoDomain {
        let mut pairs = Vec::new();
        for hi in 0..self.domain.len() {
            let v = self.table[hi];
            for lo in self.domain.down_set(hi) {
                if !self.codomain.leq(self.table[lo], v) {
                    pairs.push((lo, hi));
                }
            }
        }
        pairs.sort_unstable();
        NonMonoDomain { pairs }
    }

    pub fn first_difference(&self, other: &PosetMap) -> Option<usize> {
        (0..self.table.len().min(other.table.len())).find(|&x| self.table[x] != other.table[x])
    }
}

impl fmt::Display for PosetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self
            .table
            .iter()
            .enumerate()
            .map(|(x, &v)| format!("{}:{}", self.domain.id(x), self.codomain.id(v)))
            .collect();
        write!(f, "{{{}}}", cells.join(", "))
    }
}

/// The non-monotonicity domain of a map, as sorted pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NonMonoDomain {
    pub pairs: Vec<Pair>,
}

impl NonMonoDomain {
    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn contains(&self, pair: Pair) -> bool {
        self.pairs.binary_search(&pair).is_ok()
    }

    pub fn is_subset_of(&self, other: &NonMonoDomain) -> bool {
        self.pairs.iter().all(|&p| other.contains(p))
    }

    /// Tops of the violating pairs, deduplicated.
    pub fn tops(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.pairs.iter().map(|p| p.1).collect();
        t.sort_unstable();
        t.dedup();
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain3() -> Poset {
        Poset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn cube(n: usize) -> Arc<Poset> {
        Arc::new(Poset::boolean_cube(n).unwrap())
    }

    fn bool_map(n: usize, bits: &str) -> PosetMap {
        let l = Arc::new(Poset::chain(2).unwrap());
        let table = bits.bytes().map(|b| (b - b'0') as usize).collect();
        PosetMap::new(cube(n), l, table).unwrap()
    }

    #[test]
    fn singleton_and_chain() {
        let p = Poset::build(&["a"], &[]).unwrap();
        assert!(p.leq(0, 0));
        assert_eq!(p.len(), 1);
        let c = chain3();
        assert!(c.leq(0, 2));
        assert!(!c.leq(2, 0));
        assert_eq!(c.cover_pairs(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn transitive_input_is_reduced() {
        let p = Poset::build(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("a", "c")]).unwrap();
        assert_eq!(p.cover_pairs(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn cycles_and_unknowns_rejected() {
        assert!(matches!(
            Poset::build(&["a", "b"], &[("a", "b"), ("b", "a")]),
            Err(OrderError::CycleDetected(_))
        ));
        assert!(matches!(
            Poset::build(&["a"], &[("a", "z")]),
            Err(OrderError::UnknownElement(_))
        ));
        assert!(matches!(
            Poset::build(&["a", "a"], &[]),
            Err(OrderError::DuplicateElement(_))
        ));
    }

    #[test]
    fn cube_shapes() {
        let b1 = Poset::boolean_cube(1).unwrap();
        assert_eq!(b1.ids(), &["0", "1"]);
        assert!(b1.lt(0, 1));
        let b2 = Poset::boolean_cube(2).unwrap();
        assert_eq!(b2.ids(), &["00", "01", "10", "11"]);
        assert!(b2.lt(0, 1) && b2.lt(0, 2) && b2.lt(1, 3) && b2.lt(2, 3));
        assert!(!b2.comparable(1, 2));
        assert_eq!(Poset::boolean_cube(3).unwrap().max_chain_elements(), 4);
        assert!(matches!(
            Poset::boolean_cube(0),
            Err(OrderError::ArityOutOfRange { .. })
        ));
        assert!(matches!(
            Poset::boolean_cube(17),
            Err(OrderError::ArityOutOfRange { .. })
        ));
    }

    #[test]
    fn down_and_up_sets() {
        let b2 = Poset::boolean_cube(2).unwrap();
        assert_eq!(b2.names(&b2.down_set_of("10").unwrap()), vec!["00", "10"]);
        assert_eq!(b2.names(&b2.up_set_of("01").unwrap()), vec!["01", "11"]);
        assert_eq!(chain3().down_set(2), vec![0, 1, 2]);
        assert!(b2.down_set_of("zz").is_err());
        let g = Poset::grid(3, 2).unwrap();
        assert_eq!(
            g.names(&g.down_set_of("11").unwrap()),
            vec!["00", "01", "10", "11"]
        );
        assert_eq!(g.names(&g.up_set_of("21").unwrap()), vec!["21", "22"]);
    }

    #[test]
    fn minimal_elements_examples() {
        let b2 = Poset::boolean_cube(2).unwrap();
        assert_eq!(b2.minimal_elements(&[1, 2, 3]), vec![1, 2]);
        assert_eq!(b2.minimal_elements(&[3]), vec![3]);
        assert_eq!(chain3().minimal_elements(&[1, 2]), vec![1]);
    }

    #[test]
    fn chain_lengths() {
        assert_eq!(Poset::boolean_cube(2).unwrap().max_chain_elements(), 3);
        let anti = Poset::build(&["a", "b", "c", "d", "e"], &[]).unwrap();
        assert_eq!(anti.max_chain_elements(), 1);
        for n in 1..=6 {
            assert_eq!(Poset::boolean_cube(n).unwrap().max_chain_elements(), n + 1);
        }
    }

    #[test]
    fn dualize_examples() {
        let c = chain3();
        let d = c.dualize();
        assert!(d.leq(2, 1) && d.leq(1, 0));
        assert_eq!(d.dualize(), c);
        assert!(Poset::boolean_cube(2).unwrap().is_self_dual());
        let single = Poset::build(&["a"], &[]).unwrap();
        assert_eq!(single.dualize(), single);
        // A "V" is not self-dual.
        let v = Poset::build(&["a", "b", "c"], &[("a", "b"), ("a", "c")]).unwrap();
        assert!(!v.is_self_dual());
    }

    #[test]
    fn monotonicity_examples() {
        assert_eq!(bool_map(2, "0001").is_monotone(), Ok(()));
        assert_eq!(bool_map(2, "0110").is_monotone(), Err((1, 3)));
        assert_eq!(bool_map(2, "1111").is_monotone(), Ok(()));
        assert_eq!(
            bool_map(2, "0110").nonmono_domain().pairs,
            vec![(1, 3), (2, 3)]
        );
        assert!(bool_map(2, "0111").nonmono_domain().is_empty());
        assert_eq!(bool_map(1, "10").nonmono_domain().pairs, vec![(0, 1)]);
    }

    #[test]
    fn embedding_examples() {
        let ab = Arc::new(Poset::build(&["a", "b"], &[("a", "b")]).unwrap());
        let e = ab.embed_into_cube().unwrap();
        assert_eq!(e.codomain().names(e.table()), vec!["10", "11"]);
        let anti = Arc::new(Poset::build(&["a", "b"], &[]).unwrap());
        let e = anti.embed_into_cube().unwrap();
        assert_eq!(e.codomain().names(e.table()), vec!["10", "01"]);
        let single = Arc::new(Poset::build(&["a"], &[]).unwrap());
        assert_eq!(single.embed_into_cube().unwrap().table(), &[1]);
    }

    #[test]
    fn reversed_grid_matches_explicit_dual() {
        let g = Poset::grid(3, 2).unwrap();
        let d = g.dualize();
        for x in 0..9 {
            for y in 0..9 {
                assert_eq!(d.leq(x, y), g.leq(y, x));
            }
            let mut ups = d.up_set(x);
            ups.sort_unstable();
            assert_eq!(ups, g.down_set(x));
        }
    }
}
