//! Deliberately broken instances used to show that the checkers reject bad
//! data.

use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet};
use crate::functor::{Finiteness, Functor};
use crate::monad::Monad;

use super::builtin::NonemptyPowerset;

/// Wraps a monad but ignores the argument of `F(f)`: every `u` is sent to
/// `ι(f(x₀))` where `x₀` is the least element of `dom f`. Breaks the identity
/// law wherever `|F(X)| ≥ 2` and the composition law whenever `f(x₀)` is not
/// the least element of `cod f`.
#[derive(Clone, Debug)]
pub struct IgnoresArgument<M> {
    inner: M,
    name: String,
}

impl<M: Monad> IgnoresArgument<M> {
    pub fn new(inner: M) -> Self {
        let name = format!("mutant-{}", inner.name());
        IgnoresArgument { inner, name }
    }

    /// Keeps the wrapped instance's name, for swapping into a catalog.
    pub fn impersonating(inner: M) -> Self {
        let name = inner.name().to_string();
        IgnoresArgument { inner, name }
    }
}

impl<M: Monad> Functor for IgnoresArgument<M> {
    fn name(&self) -> &str {
        &self.name
    }

    fn finiteness(&self) -> Finiteness {
        self.inner.finiteness()
    }

    fn on_object(&self, x: &FinSet) -> Result<FinSet> {
        self.inner.on_object(x)
    }

    fn map_elem(&self, f: &FinMap, _u: &Elem) -> Result<Elem> {
        let x0 = f
            .dom()
            .elems()
            .first()
            .ok_or_else(|| Error::Inconsistent("no element to map from ∅".into()))?;
        self.inner.unit_at(f.cod(), f.apply(x0)?)
    }
}

impl<M: Monad> Monad for IgnoresArgument<M> {
    fn unit_at(&self, x: &FinSet, a: &Elem) -> Result<Elem> {
        self.inner.unit_at(x, a)
    }

    fn mult_at(&self, x: &FinSet, w: &Elem) -> Result<Elem> {
        self.inner.mult_at(x, w)
    }
}

/// Nonempty powerset whose multiplication keeps only the least member of a
/// family instead of the union.
#[derive(Clone, Copy, Debug, Default)]
pub struct WrongMult;

impl Functor for WrongMult {
    fn name(&self) -> &str {
        "mutant-wrong-mult"
    }

    fn on_object(&self, x: &FinSet) -> Result<FinSet> {
        NonemptyPowerset.on_object(x)
    }

    fn map_elem(&self, f: &FinMap, u: &Elem) -> Result<Elem> {
        NonemptyPowerset.map_elem(f, u)
    }
}

impl Monad for WrongMult {
    fn unit_at(&self, x: &FinSet, a: &Elem) -> Result<Elem> {
        NonemptyPowerset.unit_at(x, a)
    }

    fn mult_at(&self, _x: &FinSet, w: &Elem) -> Result<Elem> {
        w.as_set()
            .and_then(|s| s.elems().first().cloned())
            .ok_or_else(|| Error::Inconsistent(format!("{w} is not a nonempty family")))
    }
}
