//! Finite algebras given by operation tables.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use indexmap::IndexMap;
use serde_json::{Map, Value};

use crate::congruence::Congruence;
use crate::signature::{OpSymbol, Signature, SignatureJson};
use crate::terms::advance;
use crate::{checked_pow, Error, Limits, Result};

/// An algebra on the carrier `0..size` with one total table per operation.
///
/// Tables are stored flat in row-major order: the first argument is the most
/// significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    sig: Arc<Signature>,
    size: usize,
    tables: Vec<Vec<usize>>,
    consts: Vec<usize>,
}

impl FiniteAlgebra {
    pub fn new(
        sig: Arc<Signature>,
        size: usize,
        tables: Vec<Vec<usize>>,
        consts: Vec<usize>,
    ) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidAlgebra("carrier must be nonempty".into()));
        }
        if tables.len() != sig.ops().len() {
            return Err(Error::InvalidAlgebra(format!(
                "{} tables for {} operations",
                tables.len(),
                sig.ops().len()
            )));
        }
        for (op, table) in sig.ops().iter().zip(&tables) {
            let want = checked_pow(size, op.arity);
            if table.len() as u64 != want {
                return Err(Error::InvalidAlgebra(format!(
                    "table for {} has {} entries, expected {want}",
                    op.name,
                    table.len()
                )));
            }
            if let Some(v) = table.iter().find(|&&v| v >= size) {
                return Err(Error::InvalidAlgebra(format!(
                    "table for {} contains {v}, outside the carrier 0..{size}",
                    op.name
                )));
            }
        }
        if consts.len() != sig.constants().len() {
            return Err(Error::InvalidAlgebra(format!(
                "{} constant values for {} constants",
                consts.len(),
                sig.constants().len()
            )));
        }
        if let Some((k, v)) = consts.iter().enumerate().find(|(_, &v)| v >= size) {
            return Err(Error::InvalidAlgebra(format!(
                "constant {} interpreted as {v}, outside the carrier",
                sig.constants()[k]
            )));
        }
        Ok(FiniteAlgebra {
            sig,
            size,
            tables,
            consts,
        })
    }

    /// Tabulates `f(op, args)` over the whole carrier.
    pub fn from_fn(
        sig: Arc<Signature>,
        size: usize,
        consts: Vec<usize>,
        mut f: impl FnMut(usize, &[usize]) -> usize,
    ) -> Result<Self> {
        let mut tables = Vec::with_capacity(sig.ops().len());
        for (op, sym) in sig.ops().iter().enumerate() {
            let mut table = Vec::with_capacity(checked_pow(size, sym.arity) as usize);
            let mut args = vec![0; sym.arity];
            loop {
                table.push(f(op, &args));
                if !advance(&mut args, size) {
                    break;
                }
            }
            tables.push(table);
        }
        FiniteAlgebra::new(sig, size, tables, consts)
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn sig_arc(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn constant(&self, c: usize) -> usize {
        self.consts[c]
    }

    pub fn consts(&self) -> &[usize] {
        &self.consts
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        let idx = args.iter().fold(0, |acc, &a| acc * self.size + a);
        self.tables[op][idx]
    }

    /// The same tables read in the language extended by `names`, interpreted as `values`.
    pub fn with_constants<S: AsRef<str>>(&self, names: &[S], values: &[usize]) -> Result<Self> {
        if names.len() != values.len() {
            return Err(Error::InvalidAlgebra(format!(
                "{} names for {} constant values",
                names.len(),
                values.len()
            )));
        }
        let sig = Arc::new(self.sig.extend_with_constants(names)?);
        let mut consts = self.consts.clone();
        consts.extend_from_slice(values);
        FiniteAlgebra::new(sig, self.size, self.tables.clone(), consts)
    }

    /// Forgets constants beyond the first `keep`, yielding an algebra of the smaller language.
    pub fn reduct(&self, sig: Arc<Signature>) -> Result<Self> {
        if !self.sig.extends(&sig) {
            return Err(Error::SignatureMismatch(
                "reduct signature is not a prefix of the algebra's".into(),
            ));
        }
        let keep = sig.constants().len();
        FiniteAlgebra::new(sig, self.size, self.tables.clone(), self.consts[..keep].to_vec())
    }

    pub fn to_json(&self) -> AlgebraJson {
        let mut tables = Map::new();
        for (op, sym) in self.sig.ops().iter().enumerate() {
            tables.insert(sym.name.clone(), nest(&self.tables[op], self.size, sym.arity));
        }
        let consts = self
            .sig
            .constants()
            .iter()
            .cloned()
            .zip(self.consts.iter().copied())
            .collect();
        AlgebraJson {
            signature: self.sig.to_json(),
            size: self.size,
            tables,
            consts,
            embedding: None,
        }
    }

    pub fn from_json(raw: &AlgebraJson) -> Result<Self> {
        let validated = raw.signature.validate();
        if let Err(d) = validated {
            return Err(Error::InvalidSignature(d.to_string()));
        }
        let sig = Arc::new(Signature::try_from(raw.signature.clone())?);
        let size = raw.size;
        if size == 0 {
            return Err(Error::InvalidAlgebra("carrier must be nonempty".into()));
        }
        for name in raw.tables.keys() {
            if !sig.has_symbol(name) {
                return Err(Error::UnknownSymbol(name.clone()));
            }
        }
        for name in raw.consts.keys() {
            if sig.constant_index(name).is_none() {
                return Err(Error::UnknownSymbol(name.clone()));
            }
        }
        let mut tables = Vec::new();
        for sym in sig.ops() {
            let value = raw
                .tables
                .get(&sym.name)
                .ok_or_else(|| Error::InvalidAlgebra(format!("missing table for {}", sym.name)))?;
            let mut flat = Vec::new();
            flatten(value, size, sym.arity, &sym.name, &mut flat)?;
            tables.push(flat);
        }
        let mut consts = Vec::new();
        for name in sig.constants() {
            // a nullary operation may give its value as a 0-dimensional table
            let v = match (raw.consts.get(name), raw.tables.get(name)) {
                (Some(&v), _) => v,
                (None, Some(Value::Number(n))) => n.as_u64().map(|v| v as usize).ok_or_else(
                    || Error::InvalidAlgebra(format!("bad value for constant {name}")),
                )?,
                _ => {
                    return Err(Error::InvalidAlgebra(format!(
                        "missing interpretation of constant {name}"
                    )))
                }
            };
            consts.push(v);
        }
        FiniteAlgebra::new(sig, size, tables, consts)
    }
}

fn nest(flat: &[usize], size: usize, arity: usize) -> Value {
    if arity == 0 {
        return Value::from(flat[0]);
    }
    if arity == 1 {
        return Value::from(flat.to_vec());
    }
    let stride = flat.len() / size;
    Value::Array(
        flat.chunks(stride)
            .map(|chunk| nest(chunk, size, arity - 1))
            .collect(),
    )
}

fn flatten(v: &Value, size: usize, arity: usize, name: &str, out: &mut Vec<usize>) -> Result<()> {
    let bad = || Error::InvalidAlgebra(format!("malformed table for {name}"));
    if arity == 0 {
        let n = v.as_u64().ok_or_else(bad)?;
        out.push(n as usize);
        return Ok(());
    }
    let rows = v.as_array().ok_or_else(bad)?;
    if rows.len() != size {
        return Err(Error::InvalidAlgebra(format!(
            "table for {name} has a dimension of length {}, expected {size}",
            rows.len()
        )));
    }
    for row in rows {
        flatten(row, size, arity - 1, name, out)?;
    }
    Ok(())
}

/// Wire form of an algebra, with an optional reference to a coefficient embedding.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub signature: SignatureJson,
    pub size: usize,
    pub tables: Map<String, Value>,
    #[serde(default)]
    pub consts: IndexMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingJson>,
}

/// `{"of": "A.json", "map": [0, 2]}`; `of` is resolved relative to the referencing file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingJson {
    pub of: String,
    pub map: Vec<usize>,
}

/// A map between two algebras of one signature, claimed to be a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    pub domain: Arc<FiniteAlgebra>,
    pub codomain: Arc<FiniteAlgebra>,
    pub map: Vec<usize>,
}

/// The coefficient structure of an A-algebra: `A` embedded into `B`.
///
/// `codomain` is an algebra of the language `L(A)`: the language of `domain`
/// followed by one constant per element of `domain`, in element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AEmbedding {
    pub domain: Arc<FiniteAlgebra>,
    pub codomain: Arc<FiniteAlgebra>,
    pub map: Vec<usize>,
}

/// A concrete failure of a structure-preservation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapViolation {
    Shape(String),
    NotInjective {
        first: usize,
        second: usize,
        image: usize,
    },
    Constant {
        constant: String,
        image: usize,
        expected: usize,
    },
    Operation {
        op: String,
        args: Vec<usize>,
        image: usize,
        expected: usize,
    },
    Coefficient {
        element: usize,
        image: usize,
        expected: usize,
    },
}

impl fmt::Display for MapViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapViolation::Shape(s) => write!(f, "{s}"),
            MapViolation::NotInjective {
                first,
                second,
                image,
            } => write!(f, "{first} and {second} both map to {image}"),
            MapViolation::Constant {
                constant,
                image,
                expected,
            } => write!(f, "constant {constant}: image {image} != {expected}"),
            MapViolation::Operation {
                op,
                args,
                image,
                expected,
            } => write!(f, "{op}{args:?}: image {image} != map of result {expected}"),
            MapViolation::Coefficient {
                element,
                image,
                expected,
            } => write!(
                f,
                "coefficient constant of {element} is {image}, embedding sends it to {expected}"
            ),
        }
    }
}

fn check_map_range(map: &[usize], dom: usize, cod: usize) -> Result<(), MapViolation> {
    if map.len() != dom {
        return Err(MapViolation::Shape(format!(
            "map has {} entries for a domain of size {dom}",
            map.len()
        )));
    }
    if let Some(v) = map.iter().find(|&&v| v >= cod) {
        return Err(MapViolation::Shape(format!("image {v} outside the codomain")));
    }
    Ok(())
}

fn check_constants(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    map: &[usize],
) -> Result<(), MapViolation> {
    for (c, name) in dom.sig().constants().iter().enumerate() {
        let image = map[dom.constant(c)];
        let expected = cod.constant(c);
        if image != expected {
            return Err(MapViolation::Constant {
                constant: name.clone(),
                image,
                expected,
            });
        }
    }
    Ok(())
}

fn check_ops(dom: &FiniteAlgebra, cod: &FiniteAlgebra, map: &[usize]) -> Result<(), MapViolation> {
    for (op, sym) in dom.sig().ops().iter().enumerate() {
        let mut args = vec![0; sym.arity];
        let mut mapped = vec![0; sym.arity];
        loop {
            for (m, &a) in mapped.iter_mut().zip(&args) {
                *m = map[a];
            }
            let image = cod.apply(op, &mapped);
            let expected = map[dom.apply(op, &args)];
            if image != expected {
                return Err(MapViolation::Operation {
                    op: sym.name.clone(),
                    args,
                    image,
                    expected,
                });
            }
            if !advance(&mut args, dom.size()) {
                break;
            }
        }
    }
    Ok(())
}

impl Homomorphism {
    /// Constants first, then every table entry.
    pub fn check(&self) -> Result<(), MapViolation> {
        if self.domain.sig() != self.codomain.sig() {
            return Err(MapViolation::Shape("signatures differ".into()));
        }
        check_map_range(&self.map, self.domain.size(), self.codomain.size())?;
        check_constants(&self.domain, &self.codomain, &self.map)?;
        check_ops(&self.domain, &self.codomain, &self.map)
    }

    pub fn is_surjective(&self) -> bool {
        let image: BTreeSet<_> = self.map.iter().collect();
        image.len() == self.codomain.size()
    }
}

/// Default names for the coefficient constants of an algebra of the given size.
pub fn coefficient_names(size: usize) -> Vec<String> {
    (0..size).map(|a| format!("c{a}")).collect()
}

impl AEmbedding {
    /// Turns an `L`-algebra `b` into an A-algebra by adding one constant per
    /// element of `a`, interpreted through `map`.
    pub fn attach<S: AsRef<str>>(
        a: Arc<FiniteAlgebra>,
        b: &FiniteAlgebra,
        map: Vec<usize>,
        names: &[S],
    ) -> Result<AEmbedding> {
        if b.sig() != a.sig() {
            return Err(Error::SignatureMismatch(
                "coefficient algebra and target have different languages".into(),
            ));
        }
        if names.len() != a.size() {
            return Err(Error::InvalidEmbedding(format!(
                "{} coefficient names for {} elements",
                names.len(),
                a.size()
            )));
        }
        let values: Vec<usize> = map.clone();
        if let Some(v) = values.iter().find(|&&v| v >= b.size()) {
            return Err(Error::InvalidEmbedding(format!("image {v} outside the target")));
        }
        let codomain = Arc::new(b.with_constants(names, &values)?);
        let e = AEmbedding {
            domain: a,
            codomain,
            map,
        };
        e.check()
            .map_err(|w| Error::InvalidEmbedding(w.to_string()))?;
        Ok(e)
    }

    /// Signature index of the coefficient constant naming element `a`.
    pub fn coefficient_constant(&self, a: usize) -> usize {
        self.domain.sig().constants().len() + a
    }

    /// Injectivity, base constants, operation tables, then coefficient constants.
    pub fn check(&self) -> Result<(), MapViolation> {
        let a = &self.domain;
        let b = &self.codomain;
        if b.sig().ops() != a.sig().ops()
            || !b.sig().constants().starts_with(a.sig().constants())
            || b.sig().constants().len() != a.sig().constants().len() + a.size()
        {
            return Err(MapViolation::Shape(
                "codomain language is not the coefficient extension of the domain's".into(),
            ));
        }
        check_map_range(&self.map, a.size(), b.size())?;
        for x in 0..a.size() {
            for y in x + 1..a.size() {
                if self.map[x] == self.map[y] {
                    return Err(MapViolation::NotInjective {
                        first: x,
                        second: y,
                        image: self.map[x],
                    });
                }
            }
        }
        check_constants(a, b, &self.map)?;
        check_ops(a, b, &self.map)?;
        for x in 0..a.size() {
            let image = b.constant(self.coefficient_constant(x));
            if image != self.map[x] {
                return Err(MapViolation::Coefficient {
                    element: x,
                    image,
                    expected: self.map[x],
                });
            }
        }
        Ok(())
    }

    /// Same embedding with a codomain sharing the coefficient language.
    pub fn retarget(&self, codomain: Arc<FiniteAlgebra>, map: Vec<usize>) -> AEmbedding {
        AEmbedding {
            domain: self.domain.clone(),
            codomain,
            map,
        }
    }
}

/// Mixed-radix coordinates of a product element; first factor most significant.
pub fn product_coordinates(sizes: &[usize], mut element: usize) -> Vec<usize> {
    let mut coords = vec![0; sizes.len()];
    for (slot, &m) in coords.iter_mut().zip(sizes).rev() {
        *slot = element % m;
        element /= m;
    }
    coords
}

/// Inverse of [`product_coordinates`].
pub fn product_index(sizes: &[usize], coords: &[usize]) -> usize {
    coords
        .iter()
        .zip(sizes)
        .fold(0, |acc, (&c, &m)| acc * m + c)
}

/// Direct product with coordinatewise operations and diagonal constants.
pub fn product(factors: &[&FiniteAlgebra], limits: &Limits) -> Result<FiniteAlgebra> {
    let first = factors
        .first()
        .ok_or_else(|| Error::InvalidAlgebra("product of no factors".into()))?;
    if let Some(f) = factors.iter().find(|f| f.sig() != first.sig()) {
        return Err(Error::SignatureMismatch(format!(
            "factor with {} operations and {} constants differs from the first factor",
            f.sig().ops().len(),
            f.sig().constants().len()
        )));
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let total = sizes
        .iter()
        .fold(1u64, |acc, &m| acc.saturating_mul(m as u64));
    if total > limits.product_cap {
        return Err(Error::cap("product carrier", total, limits.product_cap));
    }
    let total = total as usize;
    for sym in first.sig().ops() {
        let entries = checked_pow(total, sym.arity);
        if entries > limits.scan_cap {
            return Err(Error::cap("product table", entries, limits.scan_cap));
        }
    }
    let consts = (0..first.sig().constants().len())
        .map(|c| {
            let coords: Vec<usize> = factors.iter().map(|f| f.constant(c)).collect();
            product_index(&sizes, &coords)
        })
        .collect();
    let decoded: Vec<Vec<usize>> = (0..total).map(|e| product_coordinates(&sizes, e)).collect();
    let mut scratch = Vec::new();
    FiniteAlgebra::from_fn(first.sig_arc().clone(), total, consts, |op, args| {
        let coords: Vec<usize> = factors
            .iter()
            .enumerate()
            .map(|(i, f)| {
                scratch.clear();
                scratch.extend(args.iter().map(|&a| decoded[a][i]));
                f.apply(op, &scratch)
            })
            .collect();
        product_index(&sizes, &coords)
    })
}

/// `B/R` with blocks ordered by least member, and the canonical projection.
pub fn quotient(b: &Arc<FiniteAlgebra>, r: &Congruence) -> Result<(FiniteAlgebra, Homomorphism)> {
    if r.size() != b.size() {
        return Err(Error::InvalidPartition(format!(
            "partition of {} elements applied to an algebra of size {}",
            r.size(),
            b.size()
        )));
    }
    r.check_compatible(b).map_err(Error::Incompatible)?;
    let reps = r.representatives();
    let consts = b.consts().iter().map(|&c| r.block_of(c)).collect();
    let mut lifted = Vec::new();
    let q = FiniteAlgebra::from_fn(b.sig_arc().clone(), r.num_blocks(), consts, |op, args| {
        lifted.clear();
        lifted.extend(args.iter().map(|&k| reps[k]));
        r.block_of(b.apply(op, &lifted))
    })?;
    let q = Arc::new(q);
    let projection = Homomorphism {
        domain: b.clone(),
        codomain: q.clone(),
        map: r.assignment().to_vec(),
    };
    Ok((Arc::unwrap_or_clone(q), projection))
}

/// Least subset containing `gens` (and the constants, if asked) closed under every table.
pub fn subalgebra_generated(b: &FiniteAlgebra, gens: &[usize], include_constants: bool) -> Vec<usize> {
    let mut member = vec![false; b.size()];
    let mut elems: Vec<usize> = Vec::new();
    let seeds = gens
        .iter()
        .copied()
        .chain(include_constants.then(|| b.consts().to_vec()).into_iter().flatten());
    for g in seeds {
        if !member[g] {
            member[g] = true;
            elems.push(g);
        }
    }
    loop {
        let before = elems.len();
        for (op, sym) in b.sig().ops().iter().enumerate() {
            if elems.is_empty() {
                break;
            }
            let snapshot = elems.clone();
            let mut idx = vec![0; sym.arity];
            let mut args = vec![0; sym.arity];
            loop {
                for (a, &i) in args.iter_mut().zip(&idx) {
                    *a = snapshot[i];
                }
                let v = b.apply(op, &args);
                if !member[v] {
                    member[v] = true;
                    elems.push(v);
                }
                if !advance(&mut idx, snapshot.len()) {
                    break;
                }
            }
        }
        if elems.len() == before {
            break;
        }
    }
    elems.sort_unstable();
    elems
}

/// Elements `e` with `f(e, ..., e) = e` for every operation `f` (constants ignored).
pub fn find_trivial_subalgebras(b: &FiniteAlgebra) -> Vec<usize> {
    (0..b.size())
        .filter(|&e| {
            b.sig()
                .ops()
                .iter()
                .enumerate()
                .all(|(op, sym)| b.apply(op, &vec![e; sym.arity]) == e)
        })
        .collect()
}

/// Brute-force isomorphism search over all bijections; carriers up to 8.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<usize>> {
    if a.sig() != b.sig() || a.size() != b.size() || a.size() > 8 {
        return None;
    }
    let n = a.size();
    let mut perm: Vec<usize> = (0..n).collect();
    let dom = Arc::new(a.clone());
    let cod = Arc::new(b.clone());
    loop {
        let h = Homomorphism {
            domain: dom.clone(),
            codomain: cod.clone(),
            map: perm.clone(),
        };
        if h.check().is_ok() {
            return Some(perm);
        }
        if !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// `{add/2, neg/1; zero}`.
pub fn additive_signature() -> Signature {
    Signature::new(
        vec![OpSymbol::new("add", 2), OpSymbol::new("neg", 1)],
        vec!["zero".into()],
    )
    .expect("static signature")
}

/// ℤ_m as an additive group.
pub fn cyclic_group(m: usize) -> FiniteAlgebra {
    FiniteAlgebra::from_fn(Arc::new(additive_signature()), m, vec![0], |op, args| match op {
        0 => (args[0] + args[1]) % m,
        _ => (m - args[0]) % m,
    })
    .expect("well-formed cyclic group")
}
