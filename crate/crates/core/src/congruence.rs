//! Congruences on finite algebras.
//!
//! A [`Congruence`] stores, for every element, the id of its block; blocks
//! are numbered by their least member, so two congruences are equal exactly
//! when their assignments are. Generation is a scan-to-fixpoint over the
//! operation tables on top of a disjoint-set forest.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{AEmbedding, FiniteAlgebra};
use crate::dsu::DisjointSets;
use crate::terms::advance;
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    assignment: Vec<usize>,
    num_blocks: usize,
}

/// Two argument tuples related blockwise whose results land in different blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub op: String,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub result_blocks: (usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{:?} and {}{:?} have related arguments but results in blocks {} and {}",
            self.op, self.left, self.op, self.right, self.result_blocks.0, self.result_blocks.1
        )
    }
}

impl Congruence {
    pub fn diagonal(m: usize) -> Self {
        Congruence {
            assignment: (0..m).collect(),
            num_blocks: m,
        }
    }

    pub fn all(m: usize) -> Self {
        Congruence {
            assignment: vec![0; m],
            num_blocks: usize::from(m > 0),
        }
    }

    /// Canonicalizes an arbitrary labelling (equal labels = same block).
    pub fn from_labels<T: Eq + std::hash::Hash + Clone>(labels: &[T]) -> Self {
        let mut ids = std::collections::HashMap::new();
        let assignment: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = ids.len();
                *ids.entry(l.clone()).or_insert(next)
            })
            .collect();
        Congruence {
            num_blocks: ids.len(),
            assignment,
        }
    }

    /// A partition of `0..m` given as explicit blocks.
    pub fn from_blocks(m: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut label = vec![usize::MAX; m];
        for (k, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in block {
                if x >= m {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} outside the carrier 0..{m}"
                    )));
                }
                if label[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} appears in two blocks"
                    )));
                }
                label[x] = k;
            }
        }
        if let Some(x) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!("element {x} is in no block")));
        }
        Ok(Congruence::from_labels(&label))
    }

    pub fn size(&self) -> usize {
        self.assignment.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.assignment[a] == self.assignment[b]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_blocks];
        for (x, &k) in self.assignment.iter().enumerate() {
            out[k].push(x);
        }
        out
    }

    /// Least member of each block, in block order.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.num_blocks];
        for (x, &k) in self.assignment.iter().enumerate() {
            if reps[k] == usize::MAX {
                reps[k] = x;
            }
        }
        reps
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        let reps = self.representatives();
        self.assignment
            .iter()
            .enumerate()
            .all(|(x, &k)| other.related(x, reps[k]))
    }

    /// `(least member, member)` for every non-least member, in element order.
    pub fn spanning_pairs(&self) -> Vec<(usize, usize)> {
        let reps = self.representatives();
        self.assignment
            .iter()
            .enumerate()
            .filter(|&(x, &k)| reps[k] != x)
            .map(|(x, &k)| (reps[k], x))
            .collect()
    }

    pub fn is_diagonal(&self) -> bool {
        self.num_blocks == self.size()
    }

    /// Full scan of every table, one argument position at a time.
    pub fn check_compatible(&self, b: &FiniteAlgebra) -> Result<(), Violation> {
        let reps = self.representatives();
        for (op, sym) in b.sig().ops().iter().enumerate() {
            let mut args = vec![0; sym.arity];
            loop {
                let here = self.block_of(b.apply(op, &args));
                for i in 0..sym.arity {
                    let rep = reps[self.block_of(args[i])];
                    if rep == args[i] {
                        continue;
                    }
                    let mut moved = args.clone();
                    moved[i] = rep;
                    let there = self.block_of(b.apply(op, &moved));
                    if there != here {
                        return Err(Violation {
                            op: sym.name.clone(),
                            left: args,
                            right: moved,
                            result_blocks: (here, there),
                        });
                    }
                }
                if !advance(&mut args, b.size()) {
                    break;
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> CongruenceJson {
        CongruenceJson {
            blocks: self.blocks(),
        }
    }
}

/// Wire form: `{"blocks":[[0,2],[1,3]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceJson {
    pub blocks: Vec<Vec<usize>>,
}

impl CongruenceJson {
    pub fn to_congruence(&self, m: usize) -> Result<Congruence> {
        Congruence::from_blocks(m, &self.blocks)
    }
}

/// Least congruence of `b` containing `pairs`.
pub fn congruence_generated(b: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Congruence {
    let mut dsu = DisjointSets::new(b.size());
    for &(x, y) in pairs {
        dsu.union(x, y);
    }
    close(b, &mut dsu);
    Congruence::from_labels(&dsu.canonical_assignment())
}

fn close(b: &FiniteAlgebra, dsu: &mut DisjointSets) {
    loop {
        let mut changed = false;
        for (op, sym) in b.sig().ops().iter().enumerate() {
            let mut args = vec![0; sym.arity];
            let mut moved = vec![0; sym.arity];
            loop {
                let here = b.apply(op, &args);
                for i in 0..sym.arity {
                    let root = dsu.find(args[i]);
                    if root == args[i] {
                        continue;
                    }
                    moved.copy_from_slice(&args);
                    moved[i] = root;
                    let there = b.apply(op, &moved);
                    changed |= dsu.union(here, there).is_some();
                }
                if !advance(&mut args, b.size()) {
                    break;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

/// `Ok` when no two distinct coefficients share a block; otherwise the least offending pair of `A`.
pub fn is_a_congruence(r: &Congruence, e: &AEmbedding) -> Result<(), (usize, usize)> {
    a_congruence_by_map(r, &e.map)
}

pub(crate) fn a_congruence_by_map(r: &Congruence, map: &[usize]) -> Result<(), (usize, usize)> {
    for a1 in 0..map.len() {
        for a2 in a1 + 1..map.len() {
            if r.related(map[a1], map[a2]) {
                return Err((a1, a2));
            }
        }
    }
    Ok(())
}

pub fn join(r1: &Congruence, r2: &Congruence, b: &FiniteAlgebra) -> Congruence {
    let mut pairs = r1.spanning_pairs();
    pairs.extend(r2.spanning_pairs());
    congruence_generated(b, &pairs)
}

/// Blockwise intersection.
pub fn meet(r1: &Congruence, r2: &Congruence) -> Congruence {
    let labels: Vec<(usize, usize)> = r1
        .assignment
        .iter()
        .zip(&r2.assignment)
        .map(|(&a, &b)| (a, b))
        .collect();
    Congruence::from_labels(&labels)
}

/// Finest first: descending block count, then by assignment.
fn lattice_order(a: &Congruence, b: &Congruence) -> std::cmp::Ordering {
    b.num_blocks
        .cmp(&a.num_blocks)
        .then_with(|| a.assignment.cmp(&b.assignment))
}

/// All congruences of `b`: the join-closure of the principal congruences.
pub fn congruence_lattice(b: &FiniteAlgebra, limits: &Limits) -> Result<Vec<Congruence>> {
    if b.size() > limits.lattice_cap {
        return Err(Error::cap(
            "lattice carrier",
            b.size() as u64,
            limits.lattice_cap as u64,
        ));
    }
    let m = b.size();
    let mut principals = BTreeSet::new();
    for x in 0..m {
        for y in x + 1..m {
            principals.insert(congruence_generated(b, &[(x, y)]));
        }
    }
    let principals: Vec<Congruence> = principals.into_iter().collect();
    let mut seen: HashSet<Congruence> = HashSet::new();
    let mut queue = vec![Congruence::diagonal(m)];
    seen.insert(queue[0].clone());
    while let Some(c) = queue.pop() {
        for p in &principals {
            if p.refines(&c) {
                continue;
            }
            let j = join(&c, p, b);
            if seen.insert(j.clone()) {
                queue.push(j);
            }
        }
    }
    let mut out: Vec<Congruence> = seen.into_iter().collect();
    out.sort_by(lattice_order);
    Ok(out)
}

/// Maximal chains of (A-)congruences, bottom to top along covering steps.
///
/// Chains longer than `maxlen` are cut at `maxlen` members.
pub fn ascending_chains(
    b: &FiniteAlgebra,
    e: Option<&AEmbedding>,
    maxlen: usize,
    limits: &Limits,
) -> Result<Vec<Vec<Congruence>>> {
    if maxlen == 0 {
        return Err(Error::InvalidChain("maximum chain length must be positive".into()));
    }
    let lattice: Vec<Congruence> = congruence_lattice(b, limits)?
        .into_iter()
        .filter(|c| e.is_none_or(|e| is_a_congruence(c, e).is_ok()))
        .collect();
    let n = lattice.len();
    let below = |i: usize, j: usize| i != j && lattice[i].refines(&lattice[j]);
    let covers: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| below(i, j) && !(0..n).any(|k| below(i, k) && below(k, j)))
                .collect()
        })
        .collect();
    let minimal: Vec<usize> = (0..n).filter(|&j| !(0..n).any(|i| below(i, j))).collect();

    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = minimal.iter().rev().map(|&i| vec![i]).collect();
    while let Some(path) = stack.pop() {
        let last = *path.last().expect("nonempty path");
        if path.len() == maxlen || covers[last].is_empty() {
            if !chains.contains(&path) {
                chains.push(path);
            }
            continue;
        }
        for &next in covers[last].iter().rev() {
            let mut p = path.clone();
            p.push(next);
            stack.push(p);
        }
    }
    Ok(chains
        .into_iter()
        .map(|c| c.into_iter().map(|i| lattice[i].clone()).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::{cyclic_group, meet_semilattice2};
    use crate::algebra::{coefficient_names, product};
    use std::sync::Arc;

    /// Least relation containing `pairs` closed under reflexivity, symmetry,
    /// transitivity and every table, by saturating a boolean matrix.
    fn brute_congruence(b: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Vec<Vec<bool>> {
        let m = b.size();
        let mut rel = vec![vec![false; m]; m];
        for x in 0..m {
            rel[x][x] = true;
        }
        for &(x, y) in pairs {
            rel[x][y] = true;
            rel[y][x] = true;
        }
        loop {
            let mut changed = false;
            for x in 0..m {
                for y in 0..m {
                    for z in 0..m {
                        if rel[x][y] && rel[y][z] && !rel[x][z] {
                            rel[x][z] = true;
                            changed = true;
                        }
                    }
                }
            }
            for (op, sym) in b.sig().ops().iter().enumerate() {
                let mut xs = vec![0; sym.arity];
                loop {
                    let mut ys = vec![0; sym.arity];
                    loop {
                        if xs.iter().zip(&ys).all(|(&a, &c)| rel[a][c]) {
                            let (u, v) = (b.apply(op, &xs), b.apply(op, &ys));
                            if !rel[u][v] {
                                rel[u][v] = true;
                                rel[v][u] = true;
                                changed = true;
                            }
                        }
                        if !advance(&mut ys, m) {
                            break;
                        }
                    }
                    if !advance(&mut xs, m) {
                        break;
                    }
                }
            }
            if !changed {
                return rel;
            }
        }
    }

    fn as_matrix(c: &Congruence) -> Vec<Vec<bool>> {
        let m = c.size();
        (0..m)
            .map(|x| (0..m).map(|y| c.related(x, y)).collect())
            .collect()
    }

    #[test]
    fn generated_examples() {
        let z4 = cyclic_group(4);
        let r = congruence_generated(&z4, &[(0, 2)]);
        assert_eq!(r.blocks(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(as_matrix(&r), brute_congruence(&z4, &[(0, 2)]));
        assert_eq!(congruence_generated(&z4, &[]), Congruence::diagonal(4));
        assert_eq!(congruence_generated(&z4, &[(0, 1)]), Congruence::all(4));
    }

    #[test]
    fn generated_matches_brute_force() {
        let lim = Limits::default();
        let z2 = cyclic_group(2);
        let klein = product(&[&z2, &z2], &lim).unwrap();
        let semi = meet_semilattice2();
        let s3 = product(&[&semi, &semi], &lim).unwrap();
        for b in [cyclic_group(5), cyclic_group(6), klein, s3] {
            let m = b.size();
            for x in 0..m {
                for y in 0..m {
                    for z in 0..m {
                        let pairs = [(x, y), (y, z)];
                        let c = congruence_generated(&b, &pairs);
                        assert_eq!(as_matrix(&c), brute_congruence(&b, &pairs));
                        assert!(c.check_compatible(&b).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn a_congruence_examples() {
        let z2 = Arc::new(cyclic_group(2));
        let z4 = cyclic_group(4);
        let e = AEmbedding::attach(z2, &z4, vec![0, 2], &coefficient_names(2)).unwrap();
        assert_eq!(is_a_congruence(&Congruence::diagonal(4), &e), Ok(()));
        assert_eq!(is_a_congruence(&Congruence::all(4), &e), Err((0, 1)));
        let r = Congruence::from_blocks(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(is_a_congruence(&r, &e), Err((0, 1)));
    }

    #[test]
    fn join_and_meet_examples() {
        let z4 = cyclic_group(4);
        let r = Congruence::from_blocks(4, &[vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(join(&r, &Congruence::diagonal(4), &z4), r);
        assert_eq!(meet(&r, &Congruence::all(4)), r);
        let gen13 = congruence_generated(&z4, &[(1, 3)]);
        assert_eq!(join(&Congruence::diagonal(4), &gen13, &z4), r);
    }

    #[test]
    fn lattice_examples() {
        let lim = Limits::default();
        let l = congruence_lattice(&cyclic_group(4), &lim).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l[0], Congruence::diagonal(4));
        assert_eq!(l[1].blocks(), vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(l[2], Congruence::all(4));
        assert_eq!(congruence_lattice(&cyclic_group(1), &lim).unwrap().len(), 1);
        assert_eq!(congruence_lattice(&cyclic_group(2), &lim).unwrap().len(), 2);
        // Z6 has subgroups 1, 2, 3, 6
        assert_eq!(congruence_lattice(&cyclic_group(6), &lim).unwrap().len(), 4);
        assert!(matches!(
            congruence_lattice(&cyclic_group(9), &lim),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn lattice_of_structureless_set_is_all_partitions() {
        let sig = crate::signature::Signature::new(vec![], vec![]).unwrap();
        let set = FiniteAlgebra::new(Arc::new(sig), 5, vec![], vec![]).unwrap();
        // Bell number B5
        assert_eq!(
            congruence_lattice(&set, &Limits::default()).unwrap().len(),
            52
        );
    }

    #[test]
    fn lattice_laws() {
        let lim = Limits::default();
        let z2 = cyclic_group(2);
        let algebras = [
            cyclic_group(4),
            product(&[&z2, &z2], &lim).unwrap(),
            meet_semilattice2(),
            product(&[&meet_semilattice2(), &meet_semilattice2()], &lim).unwrap(),
        ];
        for b in &algebras {
            let l = congruence_lattice(b, &lim).unwrap();
            for x in &l {
                for y in &l {
                    let j = join(x, y, b);
                    let m = meet(x, y);
                    assert!(l.contains(&j) && l.contains(&m));
                    assert_eq!(meet(x, &j), *x);
                    assert_eq!(join(x, &m, b), *x);
                    assert_eq!(j, join(y, x, b));
                    assert!(x.refines(&j) && m.refines(x));
                }
            }
        }
    }

    #[test]
    fn chain_examples() {
        let lim = Limits::default();
        let chains = ascending_chains(&cyclic_group(4), None, 10, &lim).unwrap();
        assert_eq!(chains.len(), 1);
        assert_eq!(chains[0].len(), 3);
        assert_eq!(chains[0][1].num_blocks(), 2);
        let one = ascending_chains(&cyclic_group(1), None, 10, &lim).unwrap();
        assert_eq!(one, vec![vec![Congruence::diagonal(1)]]);
        let two = ascending_chains(&cyclic_group(2), None, 10, &lim).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].len(), 2);
        let z2 = cyclic_group(2);
        let klein = product(&[&z2, &z2], &lim).unwrap();
        let k = ascending_chains(&klein, None, 10, &lim).unwrap();
        assert_eq!(k.len(), 3);
        assert!(k.iter().all(|c| c.len() == 3));
        let cut = ascending_chains(&klein, None, 2, &lim).unwrap();
        assert!(cut.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn chains_respect_coefficients() {
        let lim = Limits::default();
        let z2 = Arc::new(cyclic_group(2));
        let z4 = cyclic_group(4);
        let e = AEmbedding::attach(z2, &z4, vec![0, 2], &coefficient_names(2)).unwrap();
        let chains = ascending_chains(&z4, Some(&e), 10, &lim).unwrap();
        assert_eq!(chains, vec![vec![Congruence::diagonal(4)]]);
    }

    #[test]
    fn chain_length_bounded_by_carrier() {
        let lim = Limits::default();
        for m in 1..=8 {
            for chain in ascending_chains(&cyclic_group(m), None, usize::MAX, &lim).unwrap() {
                assert!(chain.len() <= m);
                for w in chain.windows(2) {
                    assert!(w[0].num_blocks() > w[1].num_blocks());
                }
            }
        }
    }
}
