//! Equations, systems, and the ideal they generate.
//!
//! Membership in the ideal `[S]` is decided by ground congruence closure
//! over the shared-subterm graph of the system and the query, with
//! variables read as fresh constants.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::AEmbedding;
use crate::dsu::DisjointSets;
use crate::geometry;
use crate::signature::Signature;
use crate::terms::{parse_term, print_term, Term};
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn display<S: AsRef<str>>(&self, sig: &Signature, vars: &[S]) -> String {
        format!(
            "{} ≈ {}",
            print_term(&self.lhs, sig, vars),
            print_term(&self.rhs, sig, vars)
        )
    }
}

/// An ordered system of equations over one signature and variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqSystem {
    sig: Arc<Signature>,
    vars: Vec<String>,
    equations: Vec<Equation>,
}

impl EqSystem {
    pub fn new(sig: Arc<Signature>, vars: Vec<String>, equations: Vec<Equation>) -> Result<Self> {
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || v.chars().any(|c| c.is_whitespace() || "(),".contains(c)) {
                return Err(Error::VariableMismatch(format!("invalid variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::VariableMismatch(format!("duplicate variable {v}")));
            }
            if sig.has_symbol(v) {
                return Err(Error::VariableMismatch(format!(
                    "variable {v} clashes with a signature symbol"
                )));
            }
        }
        for eq in &equations {
            eq.lhs.check(&sig, vars.len())?;
            eq.rhs.check(&sig, vars.len())?;
        }
        Ok(EqSystem {
            sig,
            vars,
            equations,
        })
    }

    /// System over variables named `x1..xn`.
    pub fn with_default_vars(sig: Arc<Signature>, n: usize, equations: Vec<Equation>) -> Result<Self> {
        EqSystem::new(sig, default_vars(n), equations)
    }

    pub fn sig(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Same ambient language and variables, different equations.
    pub fn with_equations(&self, equations: Vec<Equation>) -> Result<EqSystem> {
        EqSystem::new(self.sig.clone(), self.vars.clone(), equations)
    }

    /// The first `k` equations.
    pub fn prefix(&self, k: usize) -> EqSystem {
        EqSystem {
            sig: self.sig.clone(),
            vars: self.vars.clone(),
            equations: self.equations[..k.min(self.len())].to_vec(),
        }
    }

    /// The equations at the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> EqSystem {
        EqSystem {
            sig: self.sig.clone(),
            vars: self.vars.clone(),
            equations: indices.iter().map(|&i| self.equations[i].clone()).collect(),
        }
    }

    pub fn same_ambient(&self, other: &EqSystem) -> bool {
        self.sig == other.sig && self.vars == other.vars
    }

    pub fn check_equation(&self, e: &Equation) -> Result<()> {
        e.lhs.check(&self.sig, self.nvars())?;
        e.rhs.check(&self.sig, self.nvars())
    }

    pub fn display_equation(&self, e: &Equation) -> String {
        e.display(&self.sig, &self.vars)
    }

    /// Concatenation in list order.
    pub fn union(systems: &[EqSystem]) -> Result<Option<EqSystem>> {
        let Some(first) = systems.first() else {
            return Ok(None);
        };
        let mut equations = Vec::new();
        for s in systems {
            if !s.same_ambient(first) {
                return Err(Error::VariableMismatch(
                    "systems do not share a signature and variable list".into(),
                ));
            }
            equations.extend(s.equations.iter().cloned());
        }
        Ok(Some(first.with_equations(equations)?))
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            vars: self.vars.clone(),
            equations: self
                .equations
                .iter()
                .map(|e| EquationJson {
                    lhs: print_term(&e.lhs, &self.sig, &self.vars),
                    rhs: print_term(&e.rhs, &self.sig, &self.vars),
                })
                .collect(),
        }
    }

    pub fn from_json(raw: &SystemJson, sig: Arc<Signature>) -> Result<EqSystem> {
        let equations = raw
            .equations
            .iter()
            .map(|e| {
                Ok(Equation::new(
                    parse_term(&e.lhs, &sig, &raw.vars)?,
                    parse_term(&e.rhs, &sig, &raw.vars)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        EqSystem::new(sig, raw.vars.clone(), equations)
    }
}

pub fn default_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// Wire form: `{"vars":["x","y"],"equations":[{"lhs":"mul(x,inv(y))","rhs":"e"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub vars: Vec<String>,
    pub equations: Vec<EquationJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationJson {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Var(usize),
    Const(usize),
    App(usize, Vec<usize>),
}

/// Merge-and-propagate congruence closure over a hash-consed term graph.
#[derive(Debug, Default)]
pub struct CongruenceClosure {
    nodes: Vec<Node>,
    hashcons: HashMap<Node, usize>,
    classes: DisjointSets,
    /// Application nodes having a child in the class, keyed by class root.
    uses: Vec<Vec<usize>>,
    signatures: HashMap<(usize, Vec<usize>), usize>,
    pending: Vec<(usize, usize)>,
}

impl CongruenceClosure {
    pub fn new() -> Self {
        Self::default()
    }

    fn dsu(&mut self) -> &mut DisjointSets {
        &mut self.classes
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Interns a term, returning its node.
    pub fn add_term(&mut self, t: &Term) -> usize {
        let node = match t {
            Term::Var(i) => Node::Var(*i),
            Term::Const(c) => Node::Const(*c),
            Term::App(op, ch) => Node::App(*op, ch.iter().map(|c| self.add_term(c)).collect()),
        };
        if let Some(&id) = self.hashcons.get(&node) {
            return id;
        }
        let id = self.dsu().push();
        debug_assert_eq!(id, self.nodes.len());
        self.uses.push(Vec::new());
        if let Node::App(op, children) = &node {
            let key = (*op, children.iter().map(|&c| self.dsu().find(c)).collect::<Vec<_>>());
            for &r in &key.1 {
                self.uses[r].push(id);
            }
            match self.signatures.get(&key) {
                Some(&other) => self.pending.push((id, other)),
                None => {
                    self.signatures.insert(key, id);
                }
            }
        }
        self.hashcons.insert(node.clone(), id);
        self.nodes.push(node);
        self.propagate();
        id
    }

    pub fn merge(&mut self, a: usize, b: usize) {
        self.pending.push((a, b));
        self.propagate();
    }

    fn propagate(&mut self) {
        while let Some((a, b)) = self.pending.pop() {
            let Some((absorbed, surviving)) = self.dsu().union(a, b) else {
                continue;
            };
            let moved = std::mem::take(&mut self.uses[absorbed]);
            for &p in &moved {
                let Node::App(op, children) = &self.nodes[p] else {
                    unreachable!("only applications are registered as uses")
                };
                let op = *op;
                let children = children.clone();
                let key = (op, children.iter().map(|&c| self.dsu().find(c)).collect());
                match self.signatures.get(&key) {
                    Some(&q) => {
                        if self.dsu().find(q) != self.dsu().find(p) {
                            self.pending.push((p, q));
                        }
                    }
                    None => {
                        self.signatures.insert(key, p);
                    }
                }
            }
            self.uses[surviving].extend(moved);
        }
    }

    pub fn equivalent(&mut self, a: usize, b: usize) -> bool {
        self.dsu().find(a) == self.dsu().find(b)
    }

    pub fn assert_equation(&mut self, e: &Equation) {
        let l = self.add_term(&e.lhs);
        let r = self.add_term(&e.rhs);
        self.merge(l, r);
    }

    /// Closure of a whole system.
    pub fn of_system(s: &EqSystem) -> Self {
        let mut cc = CongruenceClosure::new();
        for e in s.equations() {
            cc.assert_equation(e);
        }
        cc
    }
}

/// Is `e` in the ideal generated by `s`?
pub fn ideal_member(s: &EqSystem, e: &Equation) -> Result<bool> {
    s.check_equation(e)?;
    let mut cc = CongruenceClosure::of_system(s);
    let l = cc.add_term(&e.lhs);
    let r = cc.add_term(&e.rhs);
    Ok(cc.equivalent(l, r))
}

/// `Ok(None)` when no two distinct listed constants are merged by `[S]`;
/// otherwise the first merged pair in list order.
pub fn is_a_ideal(s: &EqSystem, coefficients: &[usize]) -> Result<Option<(usize, usize)>> {
    let ncons = s.sig().constants().len();
    if let Some(&c) = coefficients.iter().find(|&&c| c >= ncons) {
        return Err(Error::UnknownSymbol(format!("constant #{c}")));
    }
    let mut cc = CongruenceClosure::of_system(s);
    let nodes: Vec<usize> = coefficients
        .iter()
        .map(|&c| cc.add_term(&Term::Const(c)))
        .collect();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if coefficients[i] != coefficients[j] && cc.equivalent(nodes[i], nodes[j]) {
                return Ok(Some((coefficients[i], coefficients[j])));
            }
        }
    }
    Ok(None)
}

/// First `(member index, point)` in family order solving `s`.
pub fn consistent_over(
    family: &[AEmbedding],
    s: &EqSystem,
    limits: &Limits,
) -> Result<Option<(usize, Vec<usize>)>> {
    for (k, member) in family.iter().enumerate() {
        let b = &member.codomain;
        if b.sig() != s.sig().as_ref() {
            return Err(Error::SignatureMismatch(format!(
                "family member {k} does not interpret the system's language"
            )));
        }
        if let Some(p) = geometry::first_solution(b, s, limits)? {
            return Ok(Some((k, p)));
        }
    }
    Ok(None)
}
