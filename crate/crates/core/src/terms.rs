//! Terms over a signature and a fixed variable list.
//!
//! Terms carry indices only; the signature and variable names are supplied
//! when parsing, printing or evaluating. Children live behind an `Arc`, so
//! cloning a term is cheap and subterms may be shared freely. Equality and
//! hashing are structural.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::algebra::FiniteAlgebra;
use crate::geometry::AlgebraicSet;
use crate::signature::Signature;
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    Const(usize),
    App(usize, Arc<[Term]>),
}

impl Term {
    /// Arity-checked application.
    pub fn app(sig: &Signature, op: usize, children: Vec<Term>) -> Result<Term> {
        let symbol = sig
            .ops()
            .get(op)
            .ok_or_else(|| Error::UnknownSymbol(format!("#{op}")))?;
        if symbol.arity != children.len() {
            return Err(Error::ArityMismatch {
                symbol: symbol.name.clone(),
                expected: symbol.arity,
                found: children.len(),
            });
        }
        Ok(Term::App(op, children.into()))
    }

    /// Application without the arity check; callers guarantee it.
    pub(crate) fn app_unchecked(op: usize, children: Vec<Term>) -> Term {
        Term::App(op, children.into())
    }

    pub fn height(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 0,
            Term::App(_, ch) => 1 + ch.iter().map(Term::height).max().unwrap_or(0),
        }
    }

    /// Number of nodes in the tree (shared subterms counted once per occurrence).
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::App(_, ch) => 1 + ch.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Checks arity and index bounds against a signature and variable count.
    pub fn check(&self, sig: &Signature, nvars: usize) -> Result<()> {
        match self {
            Term::Var(i) if *i < nvars => Ok(()),
            Term::Var(i) => Err(Error::VariableMismatch(format!(
                "variable index {i} out of range for {nvars} variable(s)"
            ))),
            Term::Const(c) if *c < sig.constants().len() => Ok(()),
            Term::Const(c) => Err(Error::UnknownSymbol(format!("constant #{c}"))),
            Term::App(op, ch) => {
                let symbol = sig
                    .ops()
                    .get(*op)
                    .ok_or_else(|| Error::UnknownSymbol(format!("#{op}")))?;
                if symbol.arity != ch.len() {
                    return Err(Error::ArityMismatch {
                        symbol: symbol.name.clone(),
                        expected: symbol.arity,
                        found: ch.len(),
                    });
                }
                ch.iter().try_for_each(|t| t.check(sig, nvars))
            }
        }
    }

    pub fn display<S: AsRef<str>>(&self, sig: &Signature, vars: &[S]) -> String {
        let mut out = String::new();
        self.write_into(&mut out, sig, vars);
        out
    }

    fn write_into<S: AsRef<str>>(&self, out: &mut String, sig: &Signature, vars: &[S]) {
        match self {
            Term::Var(i) => out.push_str(vars[*i].as_ref()),
            Term::Const(c) => out.push_str(&sig.constants()[*c]),
            Term::App(op, ch) => {
                let _ = write!(out, "{}(", sig.ops()[*op].name);
                for (k, t) in ch.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    t.write_into(out, sig, vars);
                }
                out.push(')');
            }
        }
    }
}

/// Canonical text of a term: no whitespace, `op(arg,arg)`.
pub fn print_term<S: AsRef<str>>(t: &Term, sig: &Signature, vars: &[S]) -> String {
    t.display(sig, vars)
}

/// Parses `term := var | const | op "(" term ("," term)* ")"`.
///
/// Variables shadow constants of the same name.
pub fn parse_term<S: AsRef<str>>(text: &str, sig: &Signature, vars: &[S]) -> Result<Term> {
    let mut p = Parser {
        src: text.as_bytes(),
        text,
        pos: 0,
        sig,
        vars,
    };
    let t = p.term()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(t)
}

struct Parser<'a, S> {
    src: &'a [u8],
    text: &'a str,
    pos: usize,
    sig: &'a Signature,
    vars: &'a [S],
}

impl<S: AsRef<str>> Parser<'_, S> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while let Some(ch) = self.text[self.pos..].chars().next() {
            if ch.is_whitespace() || matches!(ch, '(' | ')' | ',') {
                break;
            }
            self.pos += ch.len_utf8();
        }
        if start == self.pos {
            return Err(self.error("expected a symbol"));
        }
        Ok(&self.text[start..self.pos])
    }

    fn term(&mut self) -> Result<Term> {
        let name = self.ident()?.to_string();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let mut children = vec![self.term()?];
            loop {
                match self.peek() {
                    Some(b',') => {
                        self.pos += 1;
                        children.push(self.term()?);
                    }
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.error("expected ',' or ')'")),
                }
            }
            let op = self
                .sig
                .op_index(&name)
                .ok_or_else(|| self.unknown_or_arity(&name, children.len()))?;
            return Term::app(self.sig, op, children);
        }
        if let Some(i) = self.vars.iter().position(|v| v.as_ref() == name) {
            return Ok(Term::Var(i));
        }
        if let Some(c) = self.sig.constant_index(&name) {
            return Ok(Term::Const(c));
        }
        if let Some(op) = self.sig.op_index(&name) {
            return Err(Error::ArityMismatch {
                symbol: name,
                expected: self.sig.arity(op),
                found: 0,
            });
        }
        Err(Error::UnknownSymbol(name))
    }

    fn unknown_or_arity(&self, name: &str, found: usize) -> Error {
        if self.sig.constant_index(name).is_some() || self.vars.iter().any(|v| v.as_ref() == name)
        {
            Error::ArityMismatch {
                symbol: name.to_string(),
                expected: 0,
                found,
            }
        } else {
            Error::UnknownSymbol(name.to_string())
        }
    }
}

/// Value of `t` in `b` under the assignment `asg` (one element per variable).
pub fn evaluate(t: &Term, b: &FiniteAlgebra, asg: &[usize]) -> usize {
    match t {
        Term::Var(i) => asg[*i],
        Term::Const(c) => b.constant(*c),
        Term::App(op, ch) => {
            let args: Vec<usize> = ch.iter().map(|s| evaluate(s, b, asg)).collect();
            b.apply(*op, &args)
        }
    }
}

/// The term function of `t` on `y`, one value per point in canonical order.
pub fn term_function(t: &Term, y: &AlgebraicSet, b: &FiniteAlgebra) -> Vec<usize> {
    y.points().iter().map(|p| evaluate(t, b, p)).collect()
}

/// Number of terms of height at most `depth`, saturating.
pub fn count_terms(sig: &Signature, nvars: usize, depth: usize) -> u64 {
    let leaves = (nvars + sig.constants().len()) as u64;
    let mut count = leaves;
    for _ in 0..depth {
        let mut next = leaves;
        for op in sig.ops() {
            let mut p: u64 = 1;
            for _ in 0..op.arity {
                p = p.saturating_mul(count);
            }
            next = next.saturating_add(p);
        }
        count = next;
    }
    count
}

/// All terms of height at most `depth`.
///
/// Order is height-major. Height 0 lists variables then constants. Each
/// further height lists operations by ascending arity (ties by signature
/// index), and for each operation the argument tuples in lexicographic order
/// of the positions already produced.
pub fn enumerate_terms(
    sig: &Signature,
    nvars: usize,
    depth: usize,
    limits: &Limits,
) -> Result<Vec<Term>> {
    if depth > limits.depth_cap {
        return Err(Error::cap("term depth", depth as u64, limits.depth_cap as u64));
    }
    let total = count_terms(sig, nvars, depth);
    if total > limits.term_cap {
        return Err(Error::cap("term count", total, limits.term_cap));
    }
    let mut terms: Vec<Term> = (0..nvars).map(Term::Var).collect();
    terms.extend((0..sig.constants().len()).map(Term::Const));
    let mut ops: Vec<usize> = (0..sig.ops().len()).collect();
    ops.sort_by_key(|&o| (sig.arity(o), o));

    // terms[prev_end..] have height exactly h-1 at level h.
    let mut prev_start = 0;
    for _ in 0..depth {
        let prev_end = terms.len();
        if prev_end == prev_start {
            break;
        }
        let mut level = Vec::new();
        for &op in &ops {
            let arity = sig.arity(op);
            let mut idx = vec![0usize; arity];
            loop {
                if idx.iter().any(|&i| i >= prev_start) {
                    let children = idx.iter().map(|&i| terms[i].clone()).collect();
                    level.push(Term::app_unchecked(op, children));
                }
                if !advance(&mut idx, prev_end) {
                    break;
                }
            }
        }
        prev_start = prev_end;
        terms.extend(level);
    }
    Ok(terms)
}

/// Odometer step over `[0, base)^k`, last position fastest. False once wrapped.
pub(crate) fn advance(idx: &mut [usize], base: usize) -> bool {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return true;
        }
        *slot = 0;
    }
    false
}
