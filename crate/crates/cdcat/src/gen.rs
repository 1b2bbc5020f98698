//! Generator signatures and the generator registry.
//!
//! A generator is an opaque morphism symbol with a fixed domain and codomain.
//! It may optionally carry a numeric body (the name of a compiled-in builtin),
//! a registered symbolic derivative of type `dom x dom -> cod`, and a
//! linearity flag.  The registry is read-only after load.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::model::BuiltinKind;
use crate::mor::Mor;
use crate::obj::ObjExpr;

pub struct GenSig {
    pub name: String,
    pub dom: ObjExpr,
    pub cod: ObjExpr,
    pub body: Option<BuiltinKind>,
    pub linear: bool,
    /// Set once while the registry is loaded; never mutated afterwards.
    derivative: OnceLock<Option<Mor>>,
}

impl GenSig {
    pub fn new(
        name: impl Into<String>,
        dom: ObjExpr,
        cod: ObjExpr,
        body: Option<BuiltinKind>,
        linear: bool,
    ) -> GenSig {
        GenSig {
            name: name.into(),
            dom,
            cod,
            body,
            linear,
            derivative: OnceLock::new(),
        }
    }

    /// The registered derivative, if any.  A linear generator without an
    /// explicit derivative gets `gen o pi1` synthesized at registry load.
    pub fn derivative(&self) -> Option<&Mor> {
        self.derivative.get().and_then(|d| d.as_ref())
    }

    pub fn set_derivative(&self, d: Option<Mor>) {
        let _ = self.derivative.set(d);
    }
}

// Identity of a generator is its name and signature; the derivative is
// deliberately excluded so that self-referential derivatives (exp' mentions
// exp) do not recurse.
impl PartialEq for GenSig {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.dom == other.dom
            && self.cod == other.cod
            && self.linear == other.linear
    }
}
impl Eq for GenSig {}

impl Hash for GenSig {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state);
        self.dom.hash(state);
        self.cod.hash(state);
        self.linear.hash(state);
    }
}

impl fmt::Debug for GenSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self.name, self.dom, self.cod)
    }
}

/// Read-only table of generators, keyed by name.
#[derive(Debug, Default)]
pub struct Registry {
    gens: BTreeMap<String, Arc<GenSig>>,
}

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    pub fn insert(&mut self, sig: GenSig) -> Arc<GenSig> {
        let arc = Arc::new(sig);
        self.gens.insert(arc.name.clone(), arc.clone());
        arc
    }

    pub fn get(&self, name: &str) -> Option<&Arc<GenSig>> {
        self.gens.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<GenSig>> {
        self.gens.values()
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}
