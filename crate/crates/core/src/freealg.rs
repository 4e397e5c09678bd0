//! Relatively free algebras of the pre-variety generated by a finite family,
//! and the two directions of the noetherian correspondence run on concrete
//! systems and congruence chains.

use std::sync::Arc;

use serde::ser::Serializer;
use serde::Serialize;

use crate::algebra::{find_trivial_subalgebras, product, quotient, AEmbedding, FiniteAlgebra, Homomorphism};
use crate::closure::{close_functions, Coordinate};
use crate::congruence::{a_congruence_by_map, congruence_generated, Congruence};
use crate::equations::{EqSystem, Equation};
use crate::geometry::{solve, AlgebraicSet};
use crate::signature::Signature;
use crate::terms::{evaluate, Term};
use crate::{Error, Limits, Result};

/// Coefficient data: one algebra `A` and its embedding into every member.
#[derive(Debug, Clone)]
pub struct Coefficients {
    pub algebra: Arc<FiniteAlgebra>,
    pub embeddings: Vec<AEmbedding>,
}

/// A nonempty list of algebras of one signature.
#[derive(Debug, Clone)]
pub struct Family {
    members: Vec<Arc<FiniteAlgebra>>,
    coefficients: Option<Coefficients>,
}

impl Family {
    pub fn plain(members: Vec<Arc<FiniteAlgebra>>) -> Result<Family> {
        let Some(first) = members.first() else {
            return Err(Error::InvalidAlgebra("empty family".into()));
        };
        if let Some(k) = members.iter().position(|b| b.sig() != first.sig()) {
            return Err(Error::SignatureMismatch(format!(
                "family member {k} has a different signature"
            )));
        }
        Ok(Family {
            members,
            coefficients: None,
        })
    }

    /// Members are the codomains of `embeddings`, each an A-algebra over `a`.
    pub fn with_coefficients(a: Arc<FiniteAlgebra>, embeddings: Vec<AEmbedding>) -> Result<Family> {
        for (k, e) in embeddings.iter().enumerate() {
            if e.domain.as_ref() != a.as_ref() {
                return Err(Error::InvalidEmbedding(format!(
                    "family member {k} embeds a different coefficient algebra"
                )));
            }
            e.check()
                .map_err(|w| Error::InvalidEmbedding(format!("family member {k}: {w}")))?;
        }
        let mut f = Family::plain(embeddings.iter().map(|e| e.codomain.clone()).collect())?;
        f.coefficients = Some(Coefficients {
            algebra: a,
            embeddings,
        });
        Ok(f)
    }

    pub fn members(&self) -> &[Arc<FiniteAlgebra>] {
        &self.members
    }

    pub fn coefficients(&self) -> Option<&Coefficients> {
        self.coefficients.as_ref()
    }

    pub fn sig(&self) -> &Arc<Signature> {
        self.members[0].sig_arc()
    }
}

/// `F(X)` realized inside `∏_{(B, b̄)} B`.
#[derive(Debug, Clone)]
pub struct FreeAlgebra {
    pub base: Arc<FiniteAlgebra>,
    /// Element of `base` for each variable.
    pub generators: Vec<usize>,
    /// Product coordinates, in order: `(member index, point)`.
    pub coords: Vec<(usize, Vec<usize>)>,
    /// Value tuple of each element over `coords`.
    pub values: Vec<Vec<usize>>,
    pub witnesses: Vec<Term>,
    /// `A → base` through the constant tuples, when the family has coefficients.
    pub embedding: Option<AEmbedding>,
    pub family: Family,
}

impl FreeAlgebra {
    pub fn nvars(&self) -> usize {
        self.generators.len()
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    /// The element named by `t`.
    pub fn element_of(&self, t: &Term) -> usize {
        evaluate(t, &self.base, &self.generators)
    }

    /// The equation `witness(p) ≈ witness(q)`.
    pub fn equation(&self, p: usize, q: usize) -> Equation {
        Equation::new(self.witnesses[p].clone(), self.witnesses[q].clone())
    }

    fn coordinate(&self, member: usize, point: &[usize]) -> Option<usize> {
        self.coords
            .iter()
            .position(|(k, p)| *k == member && p.as_slice() == point)
    }
}

/// Subalgebra of the product over every `(B, b̄)` generated by projections and constants.
pub fn free_algebra(family: &Family, n: usize, limits: &Limits) -> Result<FreeAlgebra> {
    let mut total: u64 = 0;
    for b in family.members() {
        total = total.saturating_add(crate::checked_pow(b.size(), n));
    }
    if total > limits.scan_cap {
        return Err(Error::cap("free algebra coordinates", total, limits.scan_cap));
    }
    let mut coords = Vec::with_capacity(total as usize);
    for (k, b) in family.members().iter().enumerate() {
        for p in AlgebraicSet::full(b.size(), n, limits)?.points() {
            coords.push((k, p.clone()));
        }
    }
    let view: Vec<Coordinate> = coords
        .iter()
        .map(|(k, p)| Coordinate {
            algebra: &family.members()[*k],
            point: p,
        })
        .collect();
    let f = close_functions(family.sig(), n, &view, limits)?;
    let base = Arc::new(f.algebra);
    let embedding = match family.coefficients() {
        None => None,
        Some(c) => {
            let e = AEmbedding {
                domain: c.algebra.clone(),
                codomain: base.clone(),
                map: (0..c.algebra.size())
                    .map(|a| base.constant(c.embeddings[0].coefficient_constant(a)))
                    .collect(),
            };
            e.check()
                .map_err(|w| Error::InvalidEmbedding(format!("free algebra: {w}")))?;
            Some(e)
        }
    };
    Ok(FreeAlgebra {
        base,
        generators: f.generators,
        coords,
        values: f.values,
        witnesses: f.witnesses,
        embedding,
        family: family.clone(),
    })
}

/// The homomorphism `F → B` sending the generators to `point`.
pub fn universal_map(f: &FreeAlgebra, member: usize, point: &[usize]) -> Result<Homomorphism> {
    let Some(b) = f.family.members().get(member) else {
        return Err(Error::InvalidAlgebra(format!("no family member {member}")));
    };
    let Some(k) = f.coordinate(member, point) else {
        return Err(Error::VariableMismatch(format!(
            "{point:?} is not a point of member {member} in {} variable(s)",
            f.nvars()
        )));
    };
    Ok(Homomorphism {
        domain: f.base.clone(),
        codomain: b.clone(),
        map: f.values.iter().map(|v| v[k]).collect(),
    })
}

/// `F/R` with the tuple of generator classes.
#[derive(Debug, Clone)]
pub struct GenericPoint {
    pub algebra: Arc<FiniteAlgebra>,
    pub point: Vec<usize>,
}

pub fn generic_point(f: &FreeAlgebra, r: &Congruence) -> Result<GenericPoint> {
    let (q, proj) = quotient(&f.base, r)?;
    let point: Vec<usize> = f.generators.iter().map(|&g| proj.map[g]).collect();
    for (p, t) in r.spanning_pairs() {
        let lhs = evaluate(&f.witnesses[p], &q, &point);
        let rhs = evaluate(&f.witnesses[t], &q, &point);
        if lhs != rhs {
            return Err(Error::SelfCheck(format!(
                "generic point separates related elements {p} and {t}"
            )));
        }
    }
    Ok(GenericPoint {
        algebra: Arc::new(q),
        point,
    })
}

/// Greedy generating subset of `pairs`, in order: indices of pairs not yet
/// implied by the ones kept before them.
fn greedy_generators(b: &FiniteAlgebra, pairs: &[(usize, usize)]) -> Vec<usize> {
    let mut kept: Vec<usize> = Vec::new();
    let mut current = Congruence::diagonal(b.size());
    for (i, &(p, q)) in pairs.iter().enumerate() {
        if !current.related(p, q) {
            kept.push(i);
            let chosen: Vec<(usize, usize)> = kept.iter().map(|&j| pairs[j]).collect();
            current = congruence_generated(b, &chosen);
        }
    }
    kept
}

fn check_system(f: &Family, n: usize, s: &EqSystem) -> Result<()> {
    if s.sig() != f.sig() {
        return Err(Error::SignatureMismatch(
            "system and family use different languages".into(),
        ));
    }
    if s.nvars() != n {
        return Err(Error::VariableMismatch(format!(
            "system has {} variable(s), expected {n}",
            s.nvars()
        )));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberCheck {
    pub member: usize,
    #[serde(rename = "V_S")]
    pub v_s: usize,
    #[serde(rename = "V_S0")]
    pub v_s0: usize,
    pub confirmed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ForwardReport {
    pub free_size: usize,
    pub congruence_blocks: usize,
    /// False when `[Θ_S]` identifies two coefficients.
    pub a_congruence: bool,
    pub merged_coefficients: Option<(usize, usize)>,
    /// Indices into `S` whose pairs generate `[Θ_S]`.
    pub kept: Vec<usize>,
    /// `S₀` written with the stored witnesses.
    pub s0: Vec<String>,
    pub members: Vec<MemberCheck>,
    pub all_confirmed: bool,
}

/// From `Θ_S` to a finite `S₀`, checked by `V_B(S) = V_B(S₀)` on every member.
pub fn theorem_forward(family: &Family, n: usize, s: &EqSystem, limits: &Limits) -> Result<ForwardReport> {
    check_system(family, n, s)?;
    let f = free_algebra(family, n, limits)?;
    let theta: Vec<(usize, usize)> = s
        .equations()
        .iter()
        .map(|e| (f.element_of(&e.lhs), f.element_of(&e.rhs)))
        .collect();
    let r = congruence_generated(&f.base, &theta);
    let merged = match &f.embedding {
        Some(e) => a_congruence_by_map(&r, &e.map).err(),
        None => None,
    };
    let kept = greedy_generators(&f.base, &theta);
    let s0_eqs: Vec<Equation> = kept.iter().map(|&i| f.equation(theta[i].0, theta[i].1)).collect();
    let s0 = s.with_equations(s0_eqs)?;
    let subsystem = s.select(&kept);
    let mut members = Vec::with_capacity(family.members().len());
    for (k, b) in family.members().iter().enumerate() {
        let v = solve(b, s, limits)?;
        let v0 = solve(b, &s0, limits)?;
        let v_sub = solve(b, &subsystem, limits)?;
        let equal = v.points() == v0.points() && v.points() == v_sub.points();
        members.push(MemberCheck {
            member: k,
            v_s: v.len(),
            v_s0: v0.len(),
            confirmed: equal && (merged.is_none() || v.is_empty()),
        });
    }
    Ok(ForwardReport {
        free_size: f.size(),
        congruence_blocks: r.num_blocks(),
        a_congruence: merged.is_none(),
        merged_coefficients: merged,
        kept,
        s0: s0.equations().iter().map(|e| s0.display_equation(e)).collect(),
        all_confirmed: members.iter().all(|m| m.confirmed),
        members,
    })
}

/// Outcome of checking the padded generic point at one step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessFlag {
    Confirmed,
    Refuted,
    Skipped,
}

impl Serialize for WitnessFlag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            WitnessFlag::Confirmed => s.serialize_bool(true),
            WitnessFlag::Refuted => s.serialize_bool(false),
            WitnessFlag::Skipped => s.serialize_str("skipped"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    #[serde(rename = "V_size")]
    pub v_size: usize,
    pub proper: bool,
    pub witness_confirmed: WitnessFlag,
    /// The separating equation added to the generators of `R_step`.
    pub separator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConverseReport {
    pub free_size: usize,
    pub product_size: usize,
    pub steps: Vec<StepRecord>,
    #[serde(rename = "final_V_size")]
    pub final_v_size: usize,
    pub all_proper: bool,
    /// Why witness checks were skipped, if they were.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_note: Option<String>,
}

/// From a strictly ascending chain of A-congruences on `F` to a descending
/// chain of algebraic sets over `∏ F/R_i`.
pub fn theorem_converse(
    family: &Family,
    n: usize,
    chain: &[Congruence],
    limits: &Limits,
) -> Result<ConverseReport> {
    if chain.is_empty() {
        return Err(Error::InvalidChain("empty chain".into()));
    }
    let f = free_algebra(family, n, limits)?;
    validate_chain(&f, chain)?;
    let quotients: Vec<Arc<FiniteAlgebra>> = chain
        .iter()
        .map(|r| quotient(&f.base, r).map(|(q, _)| Arc::new(q)))
        .collect::<Result<_>>()?;
    let factors: Vec<&FiniteAlgebra> = quotients.iter().map(|q| q.as_ref()).collect();
    let b = product(&factors, limits)?;

    let system = |pairs: &[(usize, usize)]| -> Result<EqSystem> {
        let kept = greedy_generators(&f.base, pairs);
        EqSystem::with_default_vars(
            family.sig().clone(),
            n,
            kept.iter().map(|&i| f.equation(pairs[i].0, pairs[i].1)).collect(),
        )
    };
    let mut systems = Vec::with_capacity(chain.len());
    for r in chain {
        systems.push(system(&r.spanning_pairs())?);
    }
    let sets = systems
        .iter()
        .map(|s| solve(&b, s, limits))
        .collect::<Result<Vec<_>>>()?;

    let (padding, witness_note) = padding(&f, &quotients);
    let sizes: Vec<usize> = quotients.iter().map(|q| q.size()).collect();
    let mut steps = Vec::with_capacity(chain.len() - 1);
    for i in 0..chain.len() - 1 {
        let separator = first_difference(&chain[i], &chain[i + 1]);
        let mut pairs = chain[i].spanning_pairs();
        pairs.push(separator);
        let t = system(&pairs)?;
        let witness_confirmed = match &padding {
            None => WitnessFlag::Skipped,
            Some(pad) => {
                let gp = generic_point(&f, &chain[i])?;
                let point: Vec<usize> = (0..n)
                    .map(|j| {
                        let mut c = pad.clone();
                        c[i] = gp.point[j];
                        crate::algebra::product_index(&sizes, &c)
                    })
                    .collect();
                let in_si = sets[i].contains(&point);
                let in_ti = solve(&b, &t, limits)?.contains(&point);
                if in_si && !in_ti {
                    WitnessFlag::Confirmed
                } else {
                    WitnessFlag::Refuted
                }
            }
        };
        steps.push(StepRecord {
            step: i,
            v_size: sets[i].len(),
            proper: sets[i + 1].len() < sets[i].len() && sets[i + 1].is_subset(&sets[i]),
            witness_confirmed,
            separator: t.display_equation(&f.equation(separator.0, separator.1)),
        });
    }
    Ok(ConverseReport {
        free_size: f.size(),
        product_size: b.size(),
        final_v_size: sets.last().map_or(0, |s| s.len()),
        all_proper: steps.iter().all(|s| s.proper),
        steps,
        witness_note,
    })
}

fn validate_chain(f: &FreeAlgebra, chain: &[Congruence]) -> Result<()> {
    for (i, r) in chain.iter().enumerate() {
        if r.size() != f.size() {
            return Err(Error::InvalidChain(format!(
                "congruence {i} partitions {} elements, the free algebra has {}",
                r.size(),
                f.size()
            )));
        }
        r.check_compatible(&f.base).map_err(Error::Incompatible)?;
        if let Some(e) = &f.embedding {
            if let Err((a1, a2)) = a_congruence_by_map(r, &e.map) {
                return Err(Error::InvalidChain(format!(
                    "congruence {i} identifies coefficients {a1} and {a2}"
                )));
            }
        }
    }
    for (i, w) in chain.windows(2).enumerate() {
        if !w[0].refines(&w[1]) || w[0] == w[1] {
            return Err(Error::InvalidChain(format!(
                "congruence {} does not properly contain congruence {i}",
                i + 1
            )));
        }
    }
    Ok(())
}

/// Least pair `(p, q)`, `p < q`, related in `larger` but not in `smaller`.
fn first_difference(smaller: &Congruence, larger: &Congruence) -> (usize, usize) {
    let m = smaller.size();
    (0..m)
        .flat_map(|p| (p + 1..m).map(move |q| (p, q)))
        .find(|&(p, q)| larger.related(p, q) && !smaller.related(p, q))
        .expect("validated as a proper extension")
}

/// Per-factor padding element: the image of a trivial subalgebra `{t} ≤ A`.
fn padding(f: &FreeAlgebra, quotients: &[Arc<FiniteAlgebra>]) -> (Option<Vec<usize>>, Option<String>) {
    let Some(c) = f.family.coefficients() else {
        return (None, Some("no coefficient algebra".into()));
    };
    let Some(&t) = find_trivial_subalgebras(&c.algebra).first() else {
        return (None, Some("coefficient algebra has no trivial subalgebra".into()));
    };
    let k = c.embeddings[0].coefficient_constant(t);
    (Some(quotients.iter().map(|q| q.constant(k)).collect()), None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests::cyclic_group;
    use crate::algebra::coefficient_names;
    use crate::congruence::{ascending_chains, congruence_lattice};
    use crate::equations::SystemJson;
    use crate::terms::enumerate_terms;

    fn z(m: usize) -> Arc<FiniteAlgebra> {
        Arc::new(cyclic_group(m))
    }

    fn sys(sig: &Arc<Signature>, vars: &[&str], eqs: &[(&str, &str)]) -> EqSystem {
        let raw: SystemJson = serde_json::from_value(serde_json::json!({
            "vars": vars,
            "equations": eqs.iter().map(|(l, r)| serde_json::json!({"lhs": l, "rhs": r})).collect::<Vec<_>>(),
        }))
        .unwrap();
        EqSystem::from_json(&raw, sig.clone()).unwrap()
    }

    fn z2_over_trivial() -> Family {
        let a = Arc::new(
            FiniteAlgebra::from_fn(Arc::new(crate::algebra::additive_signature()), 1, vec![0], |_, _| 0)
                .unwrap(),
        );
        let e = AEmbedding::attach(a.clone(), &cyclic_group(2), vec![0], &coefficient_names(1)).unwrap();
        Family::with_coefficients(a, vec![e]).unwrap()
    }

    fn z2_z4_over_z2() -> Family {
        let a = z(2);
        let names = coefficient_names(2);
        let e2 = AEmbedding::attach(a.clone(), &a, vec![0, 1], &names).unwrap();
        let e4 = AEmbedding::attach(a.clone(), &cyclic_group(4), vec![0, 2], &names).unwrap();
        Family::with_coefficients(a, vec![e2, e4]).unwrap()
    }

    #[test]
    fn free_algebra_examples() {
        let lim = Limits::default();
        let f = free_algebra(&Family::plain(vec![z(2)]).unwrap(), 1, &lim).unwrap();
        assert_eq!(f.size(), 2);
        let f = free_algebra(&Family::plain(vec![z(2)]).unwrap(), 2, &lim).unwrap();
        assert_eq!(f.size(), 4);
        let f = free_algebra(&Family::plain(vec![z(3)]).unwrap(), 1, &lim).unwrap();
        assert_eq!(f.size(), 3);
        let f = free_algebra(&Family::plain(vec![z(2), z(3)]).unwrap(), 1, &lim).unwrap();
        assert_eq!(f.size(), 6);
    }

    #[test]
    fn free_algebra_with_coefficients() {
        let lim = Limits::default();
        let f = free_algebra(&z2_z4_over_z2(), 2, &lim).unwrap();
        let e = f.embedding.as_ref().unwrap();
        assert!(e.check().is_ok());
        assert_eq!(f.coords.len(), 4 + 16);
        assert!(f.size() <= 2usize.pow(4) * 4usize.pow(16));
    }

    #[test]
    fn witnesses_name_their_elements() {
        let f = free_algebra(&z2_z4_over_z2(), 2, &Limits::default()).unwrap();
        for (i, w) in f.witnesses.iter().enumerate() {
            assert_eq!(f.element_of(w), i);
        }
    }

    #[test]
    fn universal_map_examples() {
        let lim = Limits::default();
        let f = free_algebra(&Family::plain(vec![z(2)]).unwrap(), 1, &lim).unwrap();
        let h = universal_map(&f, 0, &[1]).unwrap();
        assert!(h.check().is_ok());
        assert_eq!(h.map[f.generators[0]], 1);
        let zero = f.element_of(&Term::Const(0));
        assert_eq!(h.map[zero], 0);
        assert!(universal_map(&f, 0, &[5]).is_err());
        assert!(universal_map(&f, 3, &[0]).is_err());
    }

    #[test]
    fn universal_map_commutes_with_evaluation() {
        let lim = Limits::default();
        let fam = z2_z4_over_z2();
        let f = free_algebra(&fam, 2, &lim).unwrap();
        let terms = enumerate_terms(fam.sig(), 2, 2, &lim).unwrap();
        for (k, b) in fam.members().iter().enumerate() {
            for p in AlgebraicSet::full(b.size(), 2, &lim).unwrap().points() {
                let h = universal_map(&f, k, p).unwrap();
                assert!(h.check().is_ok());
                for t in terms.iter().step_by(7) {
                    assert_eq!(h.map[f.element_of(t)], evaluate(t, b, p));
                }
            }
        }
    }

    #[test]
    fn generic_point_examples() {
        let lim = Limits::default();
        let fam = Family::plain(vec![z(2)]).unwrap();
        let f = free_algebra(&fam, 2, &lim).unwrap();
        let diag = generic_point(&f, &Congruence::diagonal(4)).unwrap();
        assert_eq!(diag.point, f.generators);
        let all = generic_point(&f, &Congruence::all(4)).unwrap();
        assert_eq!(all.algebra.size(), 1);
        let r = congruence_generated(&f.base, &[(f.generators[0], f.generators[1])]);
        let gp = generic_point(&f, &r).unwrap();
        assert_eq!(gp.point[0], gp.point[1]);
        let s = sys(fam.sig(), &["x", "y"], &[("x", "y")]);
        assert!(solve(&gp.algebra, &s, &lim).unwrap().contains(&gp.point));
    }

    #[test]
    fn forward_examples() {
        let lim = Limits::default();
        let fam = z2_z4_over_z2();
        let incons = sys(fam.sig(), &["x"], &[("add(x,c1)", "x")]);
        let rep = theorem_forward(&fam, 1, &incons, &lim).unwrap();
        assert!(!rep.a_congruence);
        assert!(rep.members.iter().all(|m| m.v_s == 0));
        assert!(rep.all_confirmed);

        let single = sys(fam.sig(), &["x"], &[("add(x,x)", "zero")]);
        let rep = theorem_forward(&fam, 1, &single, &lim).unwrap();
        assert_eq!(rep.kept, vec![0]);
        assert!(rep.all_confirmed);

        let mut eqs = vec![("add(x,x)", "zero")];
        eqs.extend(std::iter::repeat(("add(add(x,x),x)", "x")).take(10));
        eqs.extend(std::iter::repeat(("add(x,add(x,add(x,x)))", "zero")).take(9));
        let redundant = sys(fam.sig(), &["x"], &eqs);
        let rep = theorem_forward(&fam, 1, &redundant, &lim).unwrap();
        assert_eq!(rep.kept, vec![0]);
        assert!(rep.all_confirmed);
    }

    #[test]
    fn converse_examples() {
        let lim = Limits::default();
        let fam = z2_over_trivial();
        let f = free_algebra(&fam, 2, &lim).unwrap();
        assert_eq!(f.size(), 4);
        let one = theorem_converse(&fam, 2, &[Congruence::diagonal(4)], &lim).unwrap();
        assert!(one.steps.is_empty());
        assert_eq!(one.final_v_size, 16);

        let chains = ascending_chains(&f.base, f.embedding.as_ref(), 8, &lim).unwrap();
        assert_eq!(chains.len(), 3);
        for c in &chains {
            let rep = theorem_converse(&fam, 2, c, &lim).unwrap();
            assert_eq!(rep.steps.len(), 2);
            assert!(rep.all_proper, "{rep:?}");
            assert!(rep.steps.iter().all(|s| s.witness_confirmed == WitnessFlag::Confirmed));
        }

        let repeated = [Congruence::diagonal(4), Congruence::diagonal(4)];
        assert!(matches!(
            theorem_converse(&fam, 2, &repeated, &lim),
            Err(Error::InvalidChain(_))
        ));
    }

    #[test]
    fn converse_without_coefficients_skips_witness() {
        let lim = Limits::default();
        let fam = Family::plain(vec![z(2)]).unwrap();
        let f = free_algebra(&fam, 1, &lim).unwrap();
        let lattice = congruence_lattice(&f.base, &lim).unwrap();
        let rep = theorem_converse(&fam, 1, &lattice, &lim).unwrap();
        assert_eq!(rep.steps[0].witness_confirmed, WitnessFlag::Skipped);
        let json = serde_json::to_string(&rep.steps[0]).unwrap();
        assert!(json.contains(r#""witness_confirmed":"skipped""#), "{json}");
    }
}
