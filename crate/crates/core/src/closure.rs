//! Pointwise closure of term functions.
//!
//! Given a list of coordinates `(B_k, b̄_k)`, every term `p` determines the
//! tuple `(p^{B_k}(b̄_k))_k`. The set of these tuples is the subalgebra of
//! `∏ B_k` generated by the projection tuples and the constant tuples. It
//! is built here by rounds: each round applies every operation to argument
//! tuples that use at least one element discovered in the previous round,
//! and names every new element by the term that produced it.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::FiniteAlgebra;
use crate::signature::Signature;
use crate::terms::{advance, Term};
use crate::{checked_pow, Error, Limits, Result};

/// One coordinate of the evaluation map: an algebra and a point in it.
#[derive(Debug, Clone, Copy)]
pub struct Coordinate<'a> {
    pub algebra: &'a FiniteAlgebra,
    pub point: &'a [usize],
}

/// Term functions on a coordinate list, closed under the operations.
#[derive(Debug, Clone)]
pub struct FunctionAlgebra {
    /// The closure as an algebra; element `i` is `values[i]`.
    pub algebra: FiniteAlgebra,
    pub values: Vec<Vec<usize>>,
    pub witnesses: Vec<Term>,
    /// Element for each variable.
    pub generators: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

impl FunctionAlgebra {
    pub fn element_of(&self, values: &[usize]) -> Option<usize> {
        self.index.get(values).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Closes the projections `x_1..x_n` and all constants of `sig` over `coords`.
///
/// Every coordinate algebra must have signature `sig`. Seeds come first in
/// the element order: projections, then constants, each kept only if its
/// tuple is new.
pub fn close_functions(
    sig: &Arc<Signature>,
    nvars: usize,
    coords: &[Coordinate<'_>],
    limits: &Limits,
) -> Result<FunctionAlgebra> {
    for c in coords {
        if c.algebra.sig() != sig.as_ref() {
            return Err(Error::SignatureMismatch(
                "coordinate algebra does not share the closure signature".into(),
            ));
        }
        if c.point.len() != nvars {
            return Err(Error::VariableMismatch(format!(
                "point of length {} for {nvars} variable(s)",
                c.point.len()
            )));
        }
    }
    let mut acc = Accumulator {
        values: Vec::new(),
        witnesses: Vec::new(),
        index: HashMap::new(),
        cap: limits.product_cap,
    };
    let mut generators = Vec::with_capacity(nvars);
    for j in 0..nvars {
        let tuple = coords.iter().map(|c| c.point[j]).collect();
        generators.push(acc.insert(tuple, Term::Var(j))?);
    }
    let mut consts = Vec::with_capacity(sig.constants().len());
    for k in 0..sig.constants().len() {
        let tuple = coords.iter().map(|c| c.algebra.constant(k)).collect();
        consts.push(acc.insert(tuple, Term::Const(k))?);
    }

    let apply = |op: usize, args: &[usize], values: &[Vec<usize>], scratch: &mut Vec<usize>| {
        coords
            .iter()
            .enumerate()
            .map(|(k, c)| {
                scratch.clear();
                scratch.extend(args.iter().map(|&a| values[a][k]));
                c.algebra.apply(op, scratch)
            })
            .collect::<Vec<usize>>()
    };

    let mut scratch = Vec::new();
    let mut done = 0;
    while done < acc.values.len() {
        let (old, cur) = (done, acc.values.len());
        for (op, sym) in sig.ops().iter().enumerate() {
            let mut idx = vec![0; sym.arity];
            loop {
                if idx.iter().any(|&i| i >= old) {
                    let tuple = apply(op, &idx, &acc.values, &mut scratch);
                    if !acc.index.contains_key(&tuple) {
                        let term = Term::App(
                            op,
                            idx.iter().map(|&i| acc.witnesses[i].clone()).collect(),
                        );
                        acc.insert(tuple, term)?;
                    }
                }
                if !advance(&mut idx, cur) {
                    break;
                }
            }
        }
        done = cur;
    }

    let Accumulator {
        values,
        witnesses,
        index,
        ..
    } = acc;
    let size = values.len();
    for sym in sig.ops() {
        let entries = checked_pow(size, sym.arity);
        if entries > limits.scan_cap {
            return Err(Error::cap("function algebra table", entries, limits.scan_cap));
        }
    }
    let mut tables = Vec::with_capacity(sig.ops().len());
    for (op, sym) in sig.ops().iter().enumerate() {
        let mut table = Vec::with_capacity(checked_pow(size, sym.arity) as usize);
        let mut idx = vec![0; sym.arity];
        loop {
            let tuple = apply(op, &idx, &values, &mut scratch);
            table.push(index[&tuple]);
            if !advance(&mut idx, size) {
                break;
            }
        }
        tables.push(table);
    }
    let algebra = FiniteAlgebra::new(sig.clone(), size, tables, consts)?;
    Ok(FunctionAlgebra {
        algebra,
        values,
        witnesses,
        generators,
        index,
    })
}

struct Accumulator {
    values: Vec<Vec<usize>>,
    witnesses: Vec<Term>,
    index: HashMap<Vec<usize>, usize>,
    cap: u64,
}

impl Accumulator {
    fn insert(&mut self, tuple: Vec<usize>, term: Term) -> Result<usize> {
        if let Some(&i) = self.index.get(&tuple) {
            return Ok(i);
        }
        let i = self.values.len();
        if i as u64 >= self.cap {
            return Err(Error::cap("function algebra carrier", i as u64 + 1, self.cap));
        }
        self.index.insert(tuple.clone(), i);
        self.values.push(tuple);
        self.witnesses.push(term);
        Ok(i)
    }
}
