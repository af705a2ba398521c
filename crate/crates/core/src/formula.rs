//! Formula trees over a finite chain of levels, their s-expression syntax,
//! evaluation and substitution.
//!
//! Syntax is fully parenthesized: `x3` is a variable, `z2` a placeholder
//! slot, `lit:1` a level constant, `(u:G1 x2)` a unary application and
//! `(imp a b)`, `(boxminus a b)`, `(boxplus a b)` binary nodes. `and` and
//! `or` accept two or more arguments and nest to the left.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{ApproximationAlgebra, Orientation};
use crate::error::FormulaError;
use crate::theta::ThetaFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinOp {
    BoxMinus,
    BoxPlus,
    And,
    Or,
    Imp,
}

impl BinOp {
    pub fn keyword(self) -> &'static str {
        match self {
            BinOp::BoxMinus => "boxminus",
            BinOp::BoxPlus => "boxplus",
            BinOp::And => "and",
            BinOp::Or => "or",
            BinOp::Imp => "imp",
        }
    }

    fn from_keyword(s: &str) -> Option<Self> {
        Some(match s {
            "boxminus" => BinOp::BoxMinus,
            "boxplus" => BinOp::BoxPlus,
            "and" => BinOp::And,
            "or" => BinOp::Or,
            "imp" => BinOp::Imp,
            _ => return None,
        })
    }

    fn is_variadic(self) -> bool {
        matches!(self, BinOp::And | BinOp::Or)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Formula {
    /// Input variable, 1-based.
    Var(usize),
    Const(usize),
    Unary(String, Box<Formula>),
    Bin(BinOp, Box<Formula>, Box<Formula>),
    /// Free placeholder `z_i`, 1-based.
    Slot(usize),
    /// A leaf standing for a member of the leaf class, evaluated by table
    /// lookup at a domain element.
    Theta(Arc<ThetaFunction>),
}

impl Formula {
    pub fn bin(op: BinOp, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Bin(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn unary(name: impl Into<String>, arg: Formula) -> Formula {
        Formula::Unary(name.into(), Box::new(arg))
    }

    pub fn and(lhs: Formula, rhs: Formula) -> Formula {
        Formula::bin(BinOp::And, lhs, rhs)
    }

    pub fn or(lhs: Formula, rhs: Formula) -> Formula {
        Formula::bin(BinOp::Or, lhs, rhs)
    }

    pub fn imp(lhs: Formula, rhs: Formula) -> Formula {
        Formula::bin(BinOp::Imp, lhs, rhs)
    }

    /// Left-nested fold of `op` over `items`; `None` when empty.
    pub fn fold(op: BinOp, items: impl IntoIterator<Item = Formula>) -> Option<Formula> {
        items.into_iter().reduce(|acc, f| Formula::bin(op, acc, f))
    }

    pub fn parse(text: &str) -> Result<Formula, FormulaError> {
        let mut p = Parser { src: text, pos: 0 };
        let f = p.expr()?;
        p.skip_ws();
        if p.pos < text.len() {
            return Err(p.error("trailing input"));
        }
        Ok(f)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Unary(_, a) => 1 + a.size(),
            Formula::Bin(_, a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }

    /// Number of variable occurrences.
    pub fn literal_count(&self) -> usize {
        match self {
            Formula::Var(_) => 1,
            Formula::Unary(_, a) => a.literal_count(),
            Formula::Bin(_, a, b) => a.literal_count() + b.literal_count(),
            _ => 0,
        }
    }

    pub fn max_var(&self) -> usize {
        match self {
            Formula::Var(j) => *j,
            Formula::Unary(_, a) => a.max_var(),
            Formula::Bin(_, a, b) => a.max_var().max(b.max_var()),
            _ => 0,
        }
    }

    /// Binary operators occurring anywhere.
    pub fn binary_ops(&self) -> BTreeSet<BinOp> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Formula::Bin(op, _, _) = f {
                out.insert(*op);
            }
        });
        out
    }

    /// Unary names occurring anywhere.
    pub fn unary_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Formula::Unary(name, _) = f {
                out.insert(name.clone());
            }
        });
        out
    }

    pub fn slots(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Formula::Slot(i) = f {
                out.insert(*i);
            }
        });
        out
    }

    fn walk(&self, visit: &mut impl FnMut(&Formula)) {
        visit(self);
        match self {
            Formula::Unary(_, a) => a.walk(visit),
            Formula::Bin(_, a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
            _ => {}
        }
    }

    /// Replaces every slot `z_i` by `p[i]`.
    pub fn substitute(&self, p: &BTreeMap<usize, Formula>) -> Result<Formula, FormulaError> {
        Ok(match self {
            Formula::Slot(i) => p.get(i).cloned().ok_or(FormulaError::UnboundVariable(*i))?,
            Formula::Unary(name, a) => Formula::Unary(name.clone(), Box::new(a.substitute(p)?)),
            Formula::Bin(op, a, b) => {
                Formula::Bin(*op, Box::new(a.substitute(p)?), Box::new(b.substitute(p)?))
            }
            other => other.clone(),
        })
    }

    /// Evaluates at a point of `L^n` given by its coordinates.
    pub fn eval(&self, sem: &Semantics, coords: &[usize]) -> Result<usize, FormulaError> {
        if coords.len() != sem.arity {
            return Err(FormulaError::ArityMismatch {
                expected: sem.arity,
                found: coords.len(),
            });
        }
        let element = (sem.arity > 0).then(|| coords.iter().fold(0, |acc, &c| acc * sem.q + c));
        self.eval_at(sem, coords, element)
    }

    /// Evaluates with an explicit domain element for theta leaves.
    pub fn eval_at(
        &self,
        sem: &Semantics,
        coords: &[usize],
        element: Option<usize>,
    ) -> Result<usize, FormulaError> {
        match self {
            Formula::Var(j) => {
                if *j == 0 || *j > coords.len() {
                    return Err(FormulaError::IndexOutOfRange {
                        index: *j,
                        max: coords.len(),
                    });
                }
                Ok(coords[j - 1])
            }
            Formula::Const(c) => {
                if *c >= sem.q {
                    return Err(FormulaError::LevelOutOfRange {
                        level: *c,
                        q: sem.q,
                    });
                }
                Ok(*c)
            }
            Formula::Unary(name, a) => {
                let v = a.eval_at(sem, coords, element)?;
                let table = sem.unary(name)?;
                Ok(table[v])
            }
            Formula::Bin(op, a, b) => {
                let x = a.eval_at(sem, coords, element)?;
                let y = b.eval_at(sem, coords, element)?;
                Ok(sem.apply(*op, x, y))
            }
            Formula::Slot(i) => Err(FormulaError::UnboundVariable(*i)),
            Formula::Theta(theta) => {
                let e = element.ok_or(FormulaError::UnresolvedTheta)?;
                Ok(theta.map().get(e))
            }
        }
    }

    fn write_sexp(&self, out: &mut String) {
        match self {
            Formula::Var(j) => out.push_str(&format!("x{j}")),
            Formula::Const(c) => out.push_str(&format!("lit:{c}")),
            Formula::Slot(i) => out.push_str(&format!("z{i}")),
            Formula::Theta(t) => out.push_str(&format!("th:{}", t.label())),
            Formula::Unary(name, a) => {
                out.push_str("(u:");
                out.push_str(name);
                out.push(' ');
                a.write_sexp(out);
                out.push(')');
            }
            Formula::Bin(op, _, _) => {
                let mut args = Vec::new();
                self.spine(*op, &mut args);
                out.push('(');
                out.push_str(op.keyword());
                for a in args {
                    out.push(' ');
                    a.write_sexp(out);
                }
                out.push(')');
            }
        }
    }

    /// Operands of a left-nested chain of a variadic operator.
    fn spine<'a>(&'a self, op: BinOp, args: &mut Vec<&'a Formula>) {
        match self {
            Formula::Bin(o, a, b) if *o == op => {
                if op.is_variadic() {
                    a.spine(op, args);
                } else {
                    args.push(a);
                }
                args.push(b);
            }
            other => args.push(other),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_sexp(&mut s);
        f.write_str(&s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> FormulaError {
        FormulaError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn atom(&mut self) -> &str {
        let start = self.pos;
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() || c == '(' || c == ')' {
                break;
            }
            self.pos += c.len_utf8();
        }
        &self.src[start..self.pos]
    }

    fn expr(&mut self) -> Result<Formula, FormulaError> {
        self.skip_ws();
        match self.src[self.pos..].chars().next() {
            None => Err(self.error("unexpected end of input")),
            Some(')') => Err(self.error("unexpected `)`")),
            Some('(') => {
                self.pos += 1;
                self.skip_ws();
                let head_pos = self.pos;
                let head = self.atom().to_string();
                let mut args = Vec::new();
                loop {
                    self.skip_ws();
                    match self.src[self.pos..].chars().next() {
                        Some(')') => {
                            self.pos += 1;
                            break;
                        }
                        None => return Err(self.error("unclosed `(`")),
                        _ => args.push(self.expr()?),
                    }
                }
                let wrong = |n: &str| FormulaError::Parse {
                    pos: head_pos,
                    msg: format!("`{head}` takes {n}"),
                };
                if let Some(name) = head.strip_prefix("u:") {
                    if name.is_empty() || args.len() != 1 {
                        return Err(wrong("one argument"));
                    }
                    return Ok(Formula::unary(name, args.pop().expect("one arg")));
                }
                let op = BinOp::from_keyword(&head).ok_or(FormulaError::Parse {
                    pos: head_pos,
                    msg: format!("unknown operator `{head}`"),
                })?;
                if op.is_variadic() {
                    if args.len() < 2 {
                        return Err(wrong("at least two arguments"));
                    }
                } else if args.len() != 2 {
                    return Err(wrong("two arguments"));
                }
                Ok(Formula::fold(op, args).expect("nonempty"))
            }
            Some(_) => {
                let at = self.pos;
                let tok = self.atom().to_string();
                let number = |digits: &str| -> Result<usize, FormulaError> {
                    digits.parse().map_err(|_| FormulaError::Parse {
                        pos: at,
                        msg: format!("bad atom `{tok}`"),
                    })
                };
                if let Some(d) = tok.strip_prefix("lit:") {
                    Ok(Formula::Const(number(d)?))
                } else if let Some(d) = tok.strip_prefix('x') {
                    let j = number(d)?;
                    if j == 0 {
                        return Err(FormulaError::Parse {
                            pos: at,
                            msg: "variables are 1-based".into(),
                        });
                    }
                    Ok(Formula::Var(j))
                } else if let Some(d) = tok.strip_prefix('z') {
                    Ok(Formula::Slot(number(d)?))
                } else {
                    Err(FormulaError::Parse {
                        pos: at,
                        msg: format!("bad atom `{tok}`"),
                    })
                }
            }
        }
    }
}

/// Interpretation of the connectives over the chain `0 < .. < q-1`.
///
/// `and`/`or` are min/max. `boxminus`/`boxplus` come from the ambient
/// algebra (truncated subtraction and max by default); `imp` is the ambient
/// `⊟*` for dual algebras and the Łukasiewicz implication otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Semantics {
    pub q: usize,
    pub arity: usize,
    boxminus: Vec<usize>,
    boxplus: Vec<usize>,
    imp: Vec<usize>,
    unaries: BTreeMap<String, Vec<usize>>,
}

impl Semantics {
    pub fn chain(q: usize, arity: usize) -> Semantics {
        let top = q.saturating_sub(1);
        let square =
            |f: &dyn Fn(usize, usize) -> usize| (0..q * q).map(|i| f(i / q, i % q)).collect();
        Semantics {
            q,
            arity,
            boxminus: square(&|a, b| a.saturating_sub(b)),
            boxplus: square(&|a, b| a.max(b)),
            imp: square(&|a, b| top.min(top - a + b)),
            unaries: BTreeMap::new(),
        }
    }

    /// Two-valued semantics: `and`, `or`, `imp` are the classical ones.
    pub fn classical(arity: usize) -> Semantics {
        Semantics::chain(2, arity)
    }

    /// Connectives of `alg` on top of the chain defaults.
    pub fn with_algebra(alg: &ApproximationAlgebra, arity: usize) -> Semantics {
        let mut sem = Semantics::chain(alg.q(), arity);
        sem.boxminus = alg.minus_table().concat();
        sem.boxplus = alg.plus_table().concat();
        if alg.orientation() == Orientation::Dual {
            sem.imp = sem.boxminus.clone();
        }
        sem
    }

    pub fn declare_unary(
        &mut self,
        name: impl Into<String>,
        table: Vec<usize>,
    ) -> Result<(), FormulaError> {
        if table.len() != self.q {
            return Err(FormulaError::TableShapeMismatch {
                expected: self.q,
                found: table.len(),
            });
        }
        if let Some(&v) = table.iter().find(|&&v| v >= self.q) {
            return Err(FormulaError::LevelOutOfRange {
                level: v,
                q: self.q,
            });
        }
        self.unaries.insert(name.into(), table);
        Ok(())
    }

    pub fn unaries(&self) -> &BTreeMap<String, Vec<usize>> {
        &self.unaries
    }

    /// Declared table, or one of the standard families: `G<i>` (threshold
    /// at level `i`), `U<c>` (top to `c`, else bottom), `V<c>` (bottom to
    /// `c`, else top).
    pub fn unary(&self, name: &str) -> Result<Vec<usize>, FormulaError> {
        if let Some(t) = self.unaries.get(name) {
            return Ok(t.clone());
        }
        standard_unary(name, self.q).ok_or_else(|| FormulaError::UnboundUnary(name.to_string()))
    }

    pub fn apply(&self, op: BinOp, x: usize, y: usize) -> usize {
        let i = x * self.q + y;
        match op {
            BinOp::And => x.min(y),
            BinOp::Or => x.max(y),
            BinOp::Imp => self.imp[i],
            BinOp::BoxMinus => self.boxminus[i],
            BinOp::BoxPlus => self.boxplus[i],
        }
    }

    /// Every point of `L^arity` in canonical (most-significant-first) order.
    pub fn points(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let total = self.q.pow(self.arity as u32);
        (0..total).map(move |mut i| {
            let mut c = vec![0; self.arity];
            for slot in c.iter_mut().rev() {
                *slot = i % self.q;
                i /= self.q;
            }
            c
        })
    }

    /// Evaluates at every point; the result is the formula's value table.
    pub fn table_of(&self, f: &Formula) -> Result<Vec<usize>, FormulaError> {
        self.points().map(|p| f.eval(self, &p)).collect()
    }

    /// First point where `f` disagrees with `table`.
    pub fn first_mismatch(
        &self,
        f: &Formula,
        table: &[usize],
    ) -> Result<Option<Vec<usize>>, FormulaError> {
        let expected = self.q.pow(self.arity as u32);
        if table.len() != expected {
            return Err(FormulaError::TableShapeMismatch {
                expected,
                found: table.len(),
            });
        }
        for (p, &want) in self.points().zip(table) {
            if f.eval(self, &p)? != want {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }
}

/// Tables for the `G<i>`, `U<c>` and `V<c>` unary families.
pub fn standard_unary(name: &str, q: usize) -> Option<Vec<usize>> {
    let (family, rest) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
    let level: usize = rest.parse().ok()?;
    if level >= q.max(1) && !(family == "G" && level == q) {
        return None;
    }
    let top = q - 1;
    Some(match family {
        "G" => (0..q).map(|v| if level <= v { top } else { 0 }).collect(),
        "U" => (0..q).map(|v| if v == top { level } else { 0 }).collect(),
        "V" => (0..q).map(|v| if v == 0 { level } else { top }).collect(),
        _ => return None,
    })
}

/// A formula together with its declared level count, arity, optional
/// ambient algebra and unary tables.
#[derive(Clone, Debug, PartialEq)]
pub struct FormulaFile {
    pub q: usize,
    pub arity: usize,
    pub algebra: Option<String>,
    pub unaries: BTreeMap<String, Vec<usize>>,
    pub formula: Formula,
}

impl FormulaFile {
    pub fn new(q: usize, arity: usize, formula: Formula) -> Self {
        let unaries = formula
            .unary_names()
            .into_iter()
            .filter_map(|n| standard_unary(&n, q).map(|t| (n, t)))
            .collect();
        FormulaFile {
            q,
            arity,
            algebra: None,
            unaries,
            formula,
        }
    }

    pub fn with_algebra(mut self, selector: impl Into<String>) -> Self {
        self.algebra = Some(selector.into());
        self
    }

    /// Parses `;; q=<q> n=<n> [algebra=<sel>]`, optional
    /// `;; unary <name> <v0> .. <v(q-1)>` lines, then the formula.
    pub fn parse(text: &str) -> Result<Self, FormulaError> {
        let mut q = None;
        let mut arity = None;
        let mut algebra = None;
        let mut unaries = BTreeMap::new();
        let mut body = String::new();
        let mut offset = 0;
        let mut body_offset = None;
        for line in text.lines() {
            let trimmed = line.trim();
            if let Some(header) = trimmed.strip_prefix(";;") {
                let words: Vec<&str> = header.split_whitespace().collect();
                if words.first() == Some(&"unary") {
                    if words.len() < 3 {
                        return Err(FormulaError::Parse {
                            pos: offset,
                            msg: "unary needs a name and values".into(),
                        });
                    }
                    let table = words[2..]
                        .iter()
                        .map(|w| w.parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|_| FormulaError::Parse {
                            pos: offset,
                            msg: "bad unary value".into(),
                        })?;
                    unaries.insert(words[1].to_string(), table);
                } else {
                    for w in words {
                        let bad = || FormulaError::Parse {
                            pos: offset,
                            msg: format!("bad header field `{w}`"),
                        };
                        match w.split_once('=') {
                            Some(("q", v)) => q = Some(v.parse().map_err(|_| bad())?),
                            Some(("n", v)) => arity = Some(v.parse().map_err(|_| bad())?),
                            Some(("algebra", v)) => algebra = Some(v.to_string()),
                            _ => return Err(bad()),
                        }
                    }
                }
            } else if !trimmed.is_empty() {
                body_offset.get_or_insert(offset);
                body.push_str(line);
                body.push('\n');
            }
            offset += line.len() + 1;
        }
        let formula = Formula::parse(&body).map_err(|e| match e {
            FormulaError::Parse { pos, msg } => FormulaError::Parse {
                pos: pos + body_offset.unwrap_or(0),
                msg,
            },
            other => other,
        })?;
        let q = q.unwrap_or(2);
        let arity = arity.unwrap_or_else(|| formula.max_var());
        for table in unaries.values() {
            if table.len() != q {
                return Err(FormulaError::TableShapeMismatch {
                    expected: q,
                    found: table.len(),
                });
            }
        }
        Ok(FormulaFile {
            q,
            arity,
            algebra,
            unaries,
            formula,
        })
    }

    /// Semantics for this file: declared unaries on top of the ambient
    /// algebra (or the chain defaults).
    pub fn semantics(&self) -> Result<Semantics, crate::error::Error> {
        let mut sem = match &self.algebra {
            Some(sel) => {
                Semantics::with_algebra(&ApproximationAlgebra::from_selector(sel)?, self.arity)
            }
            None => Semantics::chain(self.q, self.arity),
        };
        if sem.q != self.q {
            return Err(crate::error::Error::Input(format!(
                "algebra has {} levels, header says q={}",
                sem.q, self.q
            )));
        }
        for (name, table) in &self.unaries {
            sem.declare_unary(name.clone(), table.clone())?;
        }
        Ok(sem)
    }
}

impl fmt::Display for FormulaFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, ";; q={} n={}", self.q, self.arity)?;
        if let Some(a) = &self.algebra {
            write!(f, " algebra={a}")?;
        }
        writeln!(f)?;
        for (name, table) in &self.unaries {
            let vals: Vec<String> = table.iter().map(usize::to_string).collect();
            writeln!(f, ";; unary {name} {}", vals.join(" "))?;
        }
        writeln!(f, "{}", self.formula)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        Formula::parse(s).unwrap()
    }

    #[test]
    fn prints_and_parses() {
        let f = p("(imp (imp (or x1 x2) (and x1 x2)) lit:0)");
        assert_eq!(f.to_string(), "(imp (imp (or x1 x2) (and x1 x2)) lit:0)");
        let g = p("(or x1 x2 (and x1 x3 x2))");
        assert_eq!(g.to_string(), "(or x1 x2 (and x1 x3 x2))");
        // right-nested chains keep their parentheses
        let h = p("(or x1 (or x2 x3))");
        assert_eq!(h.to_string(), "(or x1 (or x2 x3))");
        assert_eq!(p("(u:G1 x2)").to_string(), "(u:G1 x2)");
        assert_eq!(p("  z3 ").to_string(), "z3");
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "(imp x1)",
            "(foo x1 x2)",
            "(and x1",
            "x0",
            "y1",
            ")",
            "",
            "(u: x1)",
            "x1 x2",
        ] {
            assert!(
                matches!(Formula::parse(bad), Err(FormulaError::Parse { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn evaluation_examples() {
        let sem = Semantics::classical(1);
        assert_eq!(Formula::Const(1).eval(&sem, &[0]).unwrap(), 1);
        assert_eq!(p("(imp x1 lit:0)").eval(&sem, &[1]).unwrap(), 0);
        let sem3 = Semantics::chain(3, 1);
        assert_eq!(p("(u:G1 x1)").eval(&sem3, &[2]).unwrap(), 2);
        assert_eq!(p("(u:G2 x1)").eval(&sem3, &[1]).unwrap(), 0);
    }

    #[test]
    fn evaluation_errors() {
        let sem = Semantics::classical(2);
        assert!(matches!(
            p("x1").eval(&sem, &[1]),
            Err(FormulaError::ArityMismatch {
                expected: 2,
                found: 1
            })
        ));
        assert_eq!(
            p("(u:Q x1)").eval(&sem, &[1, 0]),
            Err(FormulaError::UnboundUnary("Q".into()))
        );
        assert!(matches!(
            p("x3").eval(&sem, &[1, 0]),
            Err(FormulaError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            p("lit:2").eval(&sem, &[1, 0]),
            Err(FormulaError::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn substitution() {
        let mut map = BTreeMap::new();
        map.insert(1, p("x2"));
        assert_eq!(p("z1").substitute(&map).unwrap(), p("x2"));
        map.insert(2, p("x1"));
        let joined = p("(boxplus z1 z2)").substitute(&map).unwrap();
        let sem = Semantics::classical(2);
        assert_eq!(sem.table_of(&joined).unwrap(), vec![0, 1, 1, 1]);
        map.remove(&2);
        assert_eq!(
            p("(boxplus z1 z2)").substitute(&map),
            Err(FormulaError::UnboundVariable(2))
        );
    }

    #[test]
    fn standard_unaries() {
        assert_eq!(standard_unary("G1", 3), Some(vec![0, 2, 2]));
        assert_eq!(standard_unary("G0", 3), Some(vec![2, 2, 2]));
        assert_eq!(standard_unary("U1", 3), Some(vec![0, 0, 1]));
        assert_eq!(standard_unary("V1", 3), Some(vec![1, 2, 2]));
        assert_eq!(standard_unary("G4", 3), None);
        assert_eq!(standard_unary("W1", 3), None);
    }

    #[test]
    fn formula_file_round_trip() {
        let text = ";; q=3 n=2\n;; unary G1 0 2 2\n;; unary M 2 1 0\n(or (u:G1 x1) (u:M x2))\n";
        let file = FormulaFile::parse(text).unwrap();
        assert_eq!((file.q, file.arity), (3, 2));
        assert_eq!(file.to_string(), text);
        let sem = file.semantics().unwrap();
        assert_eq!(file.formula.eval(&sem, &[0, 0]).unwrap(), 2);
        assert_eq!(file.formula.eval(&sem, &[0, 2]).unwrap(), 0);
    }

    #[test]
    fn algebra_header_selects_connectives() {
        let file =
            FormulaFile::parse(";; q=2 n=1 algebra=boolean-primal\n(boxminus lit:1 x1)\n").unwrap();
        let sem = file.semantics().unwrap();
        assert_eq!(sem.table_of(&file.formula).unwrap(), vec![1, 0]);
    }
}
