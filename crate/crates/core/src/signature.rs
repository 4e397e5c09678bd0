//! Algebraic languages and their extension by coefficient constants.
//!
//! A [`Signature`] lists operation symbols of positive arity together with an
//! ordered list of constant symbols. Nullary symbols are always constants;
//! the index of a constant is its identity everywhere else in the crate.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OpSymbol {
    pub name: String,
    pub arity: usize,
}

impl OpSymbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        OpSymbol {
            name: name.into(),
            arity,
        }
    }
}

/// First violated invariant found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    DuplicateSymbol(String),
    EmptyName { position: usize },
    NullaryOperation(String),
    ReservedCharacter(String),
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::DuplicateSymbol(s) => write!(f, "duplicate symbol {s}"),
            Diagnostic::EmptyName { position } => {
                write!(f, "empty symbol name at position {position}")
            }
            Diagnostic::NullaryOperation(s) => {
                write!(f, "operation {s} has arity 0; nullary symbols must be constants")
            }
            Diagnostic::ReservedCharacter(s) => {
                write!(f, "symbol {s:?} contains whitespace, '(', ')' or ','")
            }
        }
    }
}

/// Checks the signature invariants on raw parts.
///
/// Symbols are visited operations first, then constants; positions in
/// diagnostics count in that order.
pub fn validate(ops: &[OpSymbol], constants: &[String]) -> Result<(), Diagnostic> {
    let mut seen = HashSet::new();
    let names = ops
        .iter()
        .map(|o| o.name.as_str())
        .chain(constants.iter().map(String::as_str));
    for (position, name) in names.enumerate() {
        if name.is_empty() {
            return Err(Diagnostic::EmptyName { position });
        }
        if name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ','))
        {
            return Err(Diagnostic::ReservedCharacter(name.to_string()));
        }
        if !seen.insert(name) {
            return Err(Diagnostic::DuplicateSymbol(name.to_string()));
        }
    }
    if let Some(op) = ops.iter().find(|o| o.arity == 0) {
        return Err(Diagnostic::NullaryOperation(op.name.clone()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    ops: Vec<OpSymbol>,
    constants: Vec<String>,
}

impl Signature {
    pub fn new(ops: Vec<OpSymbol>, constants: Vec<String>) -> Result<Self> {
        validate(&ops, &constants).map_err(|d| match d {
            Diagnostic::DuplicateSymbol(s) => Error::DuplicateSymbol(s),
            other => Error::InvalidSignature(other.to_string()),
        })?;
        Ok(Signature { ops, constants })
    }

    /// Builds a signature, moving nullary operations into the constant list
    /// (after the declared constants, in declaration order).
    pub fn normalized(ops: Vec<OpSymbol>, mut constants: Vec<String>) -> Result<Self> {
        let (nullary, ops): (Vec<_>, Vec<_>) = ops.into_iter().partition(|o| o.arity == 0);
        constants.extend(nullary.into_iter().map(|o| o.name));
        Signature::new(ops, constants)
    }

    pub fn ops(&self) -> &[OpSymbol] {
        &self.ops
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    pub fn arity(&self, op: usize) -> usize {
        self.ops[op].arity
    }

    pub fn op_index(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn constant_index(&self, name: &str) -> Option<usize> {
        self.constants.iter().position(|c| c == name)
    }

    pub fn has_symbol(&self, name: &str) -> bool {
        self.op_index(name).is_some() || self.constant_index(name).is_some()
    }

    /// Appends coefficient constants, producing the extended language.
    pub fn extend_with_constants<S: AsRef<str>>(&self, names: &[S]) -> Result<Signature> {
        let mut constants = self.constants.clone();
        constants.extend(names.iter().map(|n| n.as_ref().to_string()));
        Signature::new(self.ops.clone(), constants)
    }

    /// True when `self` has the same operations and `other`'s constants are a prefix of ours.
    pub fn extends(&self, other: &Signature) -> bool {
        self.ops == other.ops && self.constants.starts_with(&other.constants)
    }

    pub fn to_json(&self) -> SignatureJson {
        SignatureJson {
            ops: self.ops.clone(),
            constants: self.constants.clone(),
        }
    }
}

/// Wire form: `{"ops":[{"name":"mul","arity":2}],"constants":["e"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureJson {
    pub ops: Vec<OpSymbol>,
    #[serde(default)]
    pub constants: Vec<String>,
}

impl SignatureJson {
    /// Runs [`validate`] on the normalized form.
    pub fn validate(&self) -> Result<(), Diagnostic> {
        let (nullary, ops): (Vec<_>, Vec<_>) =
            self.ops.iter().cloned().partition(|o| o.arity == 0);
        let mut constants = self.constants.clone();
        constants.extend(nullary.into_iter().map(|o| o.name));
        validate(&ops, &constants)
    }
}

impl TryFrom<SignatureJson> for Signature {
    type Error = Error;

    fn try_from(raw: SignatureJson) -> Result<Self> {
        Signature::normalized(raw.ops, raw.constants)
    }
}

#[cfg(test)]
pub(crate) fn group_signature() -> Signature {
    Signature::new(
        vec![OpSymbol::new("mul", 2), OpSymbol::new("inv", 1)],
        vec!["e".into()],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn extend_with_nothing_is_identity() {
        let g = group_signature();
        let empty: [&str; 0] = [];
        assert_eq!(g.extend_with_constants(&empty).unwrap(), g);
    }

    #[test]
    fn extend_appends_in_order() {
        let g = group_signature().extend_with_constants(&["a1", "a2"]).unwrap();
        assert_eq!(g.constants(), ["e", "a1", "a2"]);
        assert_eq!(g.ops(), group_signature().ops());
    }

    #[test]
    fn extend_rejects_clash() {
        let err = group_signature().extend_with_constants(&["mul"]).unwrap_err();
        assert!(matches!(err, Error::DuplicateSymbol(ref s) if s == "mul"));
    }

    #[test]
    fn validate_cases() {
        let g = group_signature();
        assert_eq!(validate(g.ops(), g.constants()), Ok(()));

        let dup = [OpSymbol::new("f", 1), OpSymbol::new("f", 2)];
        let d = validate(&dup, &[]).unwrap_err();
        assert_eq!(d.to_string(), "duplicate symbol f");

        let empty = [OpSymbol::new("", 1)];
        assert_eq!(
            validate(&empty, &[]),
            Err(Diagnostic::EmptyName { position: 0 })
        );
        assert!(matches!(
            validate(&[OpSymbol::new("c", 0)], &[]),
            Err(Diagnostic::NullaryOperation(_))
        ));
    }

    #[test]
    fn nullary_ops_become_constants() {
        let raw: SignatureJson = serde_json::from_str(
            r#"{"ops":[{"name":"mul","arity":2},{"name":"e","arity":0}],"constants":["a"]}"#,
        )
        .unwrap();
        assert_eq!(raw.validate(), Ok(()));
        let s = Signature::try_from(raw).unwrap();
        assert_eq!(s.ops().len(), 1);
        assert_eq!(s.constants(), ["a", "e"]);
    }

    fn names(prefix: &'static str) -> impl Strategy<Value = Vec<String>> {
        prop::collection::btree_set(0u8..20, 0..5)
            .prop_map(move |s| s.into_iter().map(|i| format!("{prefix}{i}")).collect())
    }

    proptest! {
        #[test]
        fn extension_is_associative(a in names("p"), b in names("q")) {
            let g = group_signature();
            let stepwise = g.extend_with_constants(&a).unwrap().extend_with_constants(&b).unwrap();
            let mut both = a.clone();
            both.extend(b.iter().cloned());
            let at_once = g.extend_with_constants(&both).unwrap();
            prop_assert_eq!(&stepwise, &at_once);
            prop_assert_eq!(validate(stepwise.ops(), stepwise.constants()), Ok(()));
            prop_assert!(stepwise.extends(&g));
        }
    }
}
