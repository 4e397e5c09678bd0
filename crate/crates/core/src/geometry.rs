//! Algebraic sets, radicals, coordinate algebras and Zariski closure.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{product_coordinates, FiniteAlgebra};
use crate::closure::{close_functions, Coordinate, FunctionAlgebra};
use crate::equations::{EqSystem, Equation};
use crate::terms::{evaluate, Term};
use crate::{checked_pow, Error, Limits, Result};

/// A finite set of points of `Bⁿ`, kept sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicSet {
    n: usize,
    points: Vec<Vec<usize>>,
    system: Option<EqSystem>,
}

impl AlgebraicSet {
    /// Sorts and deduplicates. Panics if a point has the wrong length.
    pub fn new(n: usize, mut points: Vec<Vec<usize>>) -> Self {
        assert!(points.iter().all(|p| p.len() == n), "point of wrong length");
        points.sort_unstable();
        points.dedup();
        AlgebraicSet {
            n,
            points,
            system: None,
        }
    }

    pub fn try_new(n: usize, points: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::VariableMismatch(format!(
                "point of length {} in a set of {n}-tuples",
                p.len()
            )));
        }
        Ok(Self::new(n, points))
    }

    /// All of `Bⁿ` for a carrier of size `m`.
    pub fn full(m: usize, n: usize, limits: &Limits) -> Result<Self> {
        let count = scan_size(m, n, limits)?;
        let sizes = vec![m; n];
        let points = (0..count as usize).map(|i| product_coordinates(&sizes, i)).collect();
        Ok(AlgebraicSet {
            n,
            points,
            system: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Vec<usize>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    pub fn is_subset(&self, other: &AlgebraicSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    pub fn intersection(&self, other: &AlgebraicSet) -> AlgebraicSet {
        AlgebraicSet {
            n: self.n,
            points: self.points.iter().filter(|p| other.contains(p)).cloned().collect(),
            system: None,
        }
    }

    /// The system this set was solved from, if any.
    pub fn system(&self) -> Option<&EqSystem> {
        self.system.as_ref()
    }

    /// Every point lies in `Bⁿ`.
    pub fn check_in(&self, b: &FiniteAlgebra) -> Result<()> {
        match self.points.iter().flatten().find(|&&v| v >= b.size()) {
            Some(v) => Err(Error::InvalidAlgebra(format!(
                "point coordinate {v} outside a carrier of size {}",
                b.size()
            ))),
            None => Ok(()),
        }
    }

    pub fn to_json(&self) -> PointsJson {
        PointsJson {
            n: self.n,
            points: self.points.clone(),
        }
    }
}

/// `{"n":1,"points":[[0],[2]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointsJson {
    pub n: usize,
    pub points: Vec<Vec<usize>>,
}

impl PointsJson {
    pub fn to_set(&self) -> Result<AlgebraicSet> {
        AlgebraicSet::try_new(self.n, self.points.clone())
    }
}

/// A finite union of algebraic sets in one `Bⁿ`; no components means empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSet {
    pub n: usize,
    pub components: Vec<AlgebraicSet>,
}

impl ClosedSet {
    pub fn empty(n: usize) -> Self {
        ClosedSet {
            n,
            components: Vec::new(),
        }
    }

    pub fn add(&mut self, y: AlgebraicSet) -> Result<()> {
        if y.n != self.n {
            return Err(Error::VariableMismatch(format!(
                "{}-tuples added to a closed set of {}-tuples",
                y.n, self.n
            )));
        }
        self.components.push(y);
        Ok(())
    }

    pub fn union(&self, other: &ClosedSet) -> Result<ClosedSet> {
        let mut out = self.clone();
        for y in &other.components {
            out.add(y.clone())?;
        }
        Ok(out)
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.components.iter().any(|y| y.contains(p))
    }

    pub fn points(&self) -> AlgebraicSet {
        AlgebraicSet::new(
            self.n,
            self.components.iter().flat_map(|y| y.points.iter().cloned()).collect(),
        )
    }
}

fn scan_size(m: usize, n: usize, limits: &Limits) -> Result<u64> {
    let count = checked_pow(m, n);
    if count > limits.scan_cap {
        return Err(Error::cap("point scan", count, limits.scan_cap));
    }
    Ok(count)
}

fn check_language(b: &FiniteAlgebra, s: &EqSystem) -> Result<()> {
    if b.sig() != s.sig().as_ref() {
        return Err(Error::SignatureMismatch(
            "algebra does not interpret the system's language".into(),
        ));
    }
    Ok(())
}

fn satisfies(b: &FiniteAlgebra, equations: &[Equation], p: &[usize]) -> bool {
    equations
        .iter()
        .all(|e| evaluate(&e.lhs, b, p) == evaluate(&e.rhs, b, p))
}

/// `V_B(S)` by exhaustive scan of `Bⁿ` in lexicographic order.
pub fn solve(b: &FiniteAlgebra, s: &EqSystem, limits: &Limits) -> Result<AlgebraicSet> {
    check_language(b, s)?;
    let n = s.nvars();
    let count = scan_size(b.size(), n, limits)? as usize;
    let sizes = vec![b.size(); n];
    let test = |i: usize| {
        let p = product_coordinates(&sizes, i);
        satisfies(b, s.equations(), &p).then_some(p)
    };
    let points: Vec<Vec<usize>> = if limits.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(limits.jobs)
            .build()
            .map_err(|e| Error::SelfCheck(format!("thread pool: {e}")))?;
        pool.install(|| (0..count).into_par_iter().filter_map(test).collect())
    } else {
        (0..count).filter_map(test).collect()
    };
    Ok(AlgebraicSet {
        n,
        points,
        system: Some(s.clone()),
    })
}

/// Lexicographically first point of `V_B(S)`.
pub fn first_solution(b: &FiniteAlgebra, s: &EqSystem, limits: &Limits) -> Result<Option<Vec<usize>>> {
    check_language(b, s)?;
    let n = s.nvars();
    let count = scan_size(b.size(), n, limits)? as usize;
    let sizes = vec![b.size(); n];
    Ok((0..count)
        .map(|i| product_coordinates(&sizes, i))
        .find(|p| satisfies(b, s.equations(), p)))
}

/// `V_B(S_1 ∪ … ∪ S_k)`, checked against `V_B(S_1) ∩ … ∩ V_B(S_k)`.
pub fn intersect_by_union(
    b: &FiniteAlgebra,
    n: usize,
    systems: &[EqSystem],
    limits: &Limits,
) -> Result<AlgebraicSet> {
    if systems.iter().any(|s| s.nvars() != n) {
        return Err(Error::VariableMismatch(format!(
            "systems must all have {n} variable(s)"
        )));
    }
    let Some(union) = EqSystem::union(systems)? else {
        return AlgebraicSet::full(b.size(), n, limits);
    };
    let joint = solve(b, &union, limits)?;
    let mut meet = AlgebraicSet::full(b.size(), n, limits)?;
    for s in systems {
        meet = meet.intersection(&solve(b, s, limits)?);
    }
    if joint.points != meet.points {
        return Err(Error::SelfCheck(format!(
            "solution of the union has {} points, intersection has {}",
            joint.len(),
            meet.len()
        )));
    }
    Ok(joint)
}

/// Does `e` hold at every point of `Y`?
pub fn radical_member(b: &FiniteAlgebra, y: &AlgebraicSet, e: &Equation) -> Result<bool> {
    e.lhs.check(b.sig(), y.n)?;
    e.rhs.check(b.sig(), y.n)?;
    y.check_in(b)?;
    Ok(y.points.iter().all(|p| satisfies(b, std::slice::from_ref(e), p)))
}

/// The algebra of term functions `Y → B`, each named by a witnessing term.
#[derive(Debug, Clone)]
pub struct CoordinateAlgebra {
    functions: FunctionAlgebra,
    points: Vec<Vec<usize>>,
}

impl CoordinateAlgebra {
    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.functions.algebra
    }

    /// Value tuple of each element over the points of `Y`, in order.
    pub fn values(&self) -> &[Vec<usize>] {
        &self.functions.values
    }

    pub fn witnesses(&self) -> &[Term] {
        &self.functions.witnesses
    }

    pub fn generators(&self) -> &[usize] {
        &self.functions.generators
    }

    pub fn points(&self) -> &[Vec<usize>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// The element `[t]_Y`.
    pub fn element_of_term(&self, t: &Term, b: &FiniteAlgebra) -> Option<usize> {
        let v: Vec<usize> = self.points.iter().map(|p| evaluate(t, b, p)).collect();
        self.functions.element_of(&v)
    }

    pub fn element_of_values(&self, v: &[usize]) -> Option<usize> {
        self.functions.element_of(v)
    }
}

fn coordinates<'a>(b: &'a FiniteAlgebra, points: &'a [Vec<usize>]) -> Vec<Coordinate<'a>> {
    points
        .iter()
        .map(|p| Coordinate {
            algebra: b,
            point: p,
        })
        .collect()
}

/// `Γ(Y)`, realized as the term functions on `Y`.
pub fn coordinate_algebra(b: &FiniteAlgebra, y: &AlgebraicSet, limits: &Limits) -> Result<CoordinateAlgebra> {
    if y.is_empty() {
        return Err(Error::EmptyAlgebraicSet);
    }
    y.check_in(b)?;
    let functions = close_functions(b.sig_arc(), y.n, &coordinates(b, &y.points), limits)?;
    Ok(CoordinateAlgebra {
        functions,
        points: y.points.clone(),
    })
}

/// `V_B(Rad_B(Y))`.
///
/// `c̄` is in the closure iff no two term functions agree on `Y` and differ at
/// `c̄`. Restriction from `Y ∪ {c̄}` to `Y` is onto, so this holds exactly
/// when both function algebras have the same size.
pub fn zariski_closure(b: &FiniteAlgebra, y: &AlgebraicSet, limits: &Limits) -> Result<AlgebraicSet> {
    if y.is_empty() {
        return Ok(y.clone());
    }
    y.check_in(b)?;
    let base = close_functions(b.sig_arc(), y.n, &coordinates(b, &y.points), limits)?.len();
    let mut out = Vec::new();
    let mut extended = y.points.clone();
    for c in AlgebraicSet::full(b.size(), y.n, limits)?.points {
        if y.contains(&c) {
            out.push(c);
            continue;
        }
        extended.push(c);
        let size = close_functions(b.sig_arc(), y.n, &coordinates(b, &extended), limits)?.len();
        let c = extended.pop().expect("pushed above");
        if size == base {
            out.push(c);
        }
    }
    Ok(AlgebraicSet {
        n: y.n,
        points: out,
        system: None,
    })
}

/// Greedy finite subsystem with the same solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    /// Indices into the input system, increasing.
    pub kept: Vec<usize>,
    pub solution: AlgebraicSet,
}

impl Certificate {
    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            kept: self.kept.clone(),
            solution_size: self.solution.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kept: Vec<usize>,
    pub solution_size: usize,
}

/// Keeps exactly the equations that shrink the running solution set, in input order.
pub fn noetherian_certificate(b: &FiniteAlgebra, s: &EqSystem, limits: &Limits) -> Result<Certificate> {
    check_language(b, s)?;
    let mut running = AlgebraicSet::full(b.size(), s.nvars(), limits)?.points;
    let mut kept = Vec::new();
    for (i, e) in s.equations().iter().enumerate() {
        let before = running.len();
        running.retain(|p| satisfies(b, std::slice::from_ref(e), p));
        if running.len() < before {
            kept.push(i);
        }
    }
    Ok(Certificate {
        solution: AlgebraicSet {
            n: s.nvars(),
            points: running,
            system: Some(s.select(&kept)),
        },
        kept,
    })
}

/// Solution sets along an ascending chain of systems.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescendingChain {
    pub sets: Vec<AlgebraicSet>,
    /// `proper[i]`: `sets[i+1]` is strictly smaller than `sets[i]`.
    pub proper: Vec<bool>,
}

impl DescendingChain {
    /// Number of distinct sets along the chain.
    pub fn distinct_len(&self) -> usize {
        usize::from(!self.sets.is_empty()) + self.proper.iter().filter(|&&p| p).count()
    }
}

/// Each system must list every equation of its predecessor first.
pub fn descending_chain(b: &FiniteAlgebra, systems: &[EqSystem], limits: &Limits) -> Result<DescendingChain> {
    for (i, w) in systems.windows(2).enumerate() {
        if !w[0].same_ambient(&w[1]) || !w[1].equations().starts_with(w[0].equations()) {
            return Err(Error::InvalidChain(format!(
                "system {} does not extend system {i}",
                i + 1
            )));
        }
    }
    let sets = systems
        .iter()
        .map(|s| solve(b, s, limits))
        .collect::<Result<Vec<_>>>()?;
    let proper = sets.windows(2).map(|w| w[1].len() < w[0].len()).collect();
    Ok(DescendingChain { sets, proper })
}

/// All prefixes `S[..0], S[..1], …, S` of a system.
pub fn prefix_chain(s: &EqSystem) -> Vec<EqSystem> {
    (0..=s.len()).map(|k| s.prefix(k)).collect()
}

/// Points satisfying at least one of the component systems.
pub fn solve_closed(b: &FiniteAlgebra, systems: &[EqSystem], n: usize, limits: &Limits) -> Result<ClosedSet> {
    let mut out = ClosedSet::empty(n);
    for s in systems {
        out.add(solve(b, s, limits)?)?;
    }
    Ok(out)
}
