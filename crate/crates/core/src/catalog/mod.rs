//! Concrete instances and the registry that validates their declared flags.

pub mod builtin;
pub mod custom;
pub mod mutant;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::connected::{has_constant, is_connected, Connectedness};
use crate::error::{Error, Result};
use crate::functor::{Finiteness, Functor, Identity};
use crate::monad::Monad;

pub use builtin::{BoundedList, DiagQuotient, FullPowerset, Maybe, NonemptyPowerset, RectBand, Trivial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Functor,
    Monad,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub kind: Kind,
    pub connected: bool,
    pub has_constant: bool,
    pub finiteness: Finiteness,
    /// Expected outcome of the product sweep, when known.
    pub preserves_products: Option<bool>,
    /// Expected outcome of the constant-pullback sweep, when known.
    pub preserves_constant_pullbacks: Option<bool>,
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let fin = match self.finiteness {
            Finiteness::Finite => "finite".to_string(),
            Finiteness::Bounded(k) => format!("bounded({k})"),
        };
        let kind = match self.kind {
            Kind::Functor => "functor",
            Kind::Monad => "monad",
        };
        write!(
            f,
            "{:<18} kind={kind:<7} connected={} constant={} finiteness={fin}",
            self.name,
            yn(self.connected),
            yn(self.has_constant)
        )
    }
}

#[derive(Clone)]
pub enum Instance {
    Functor(Arc<dyn Functor>),
    Monad(Arc<dyn Monad>),
}

impl fmt::Debug for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.kind(), self.functor().name())
    }
}

impl Instance {
    pub fn functor(&self) -> &dyn Functor {
        match self {
            Instance::Functor(f) => f.as_ref(),
            Instance::Monad(m) => m.as_ref(),
        }
    }

    pub fn monad(&self) -> Option<&dyn Monad> {
        match self {
            Instance::Monad(m) => Some(m.as_ref()),
            Instance::Functor(_) => None,
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Instance::Functor(_) => Kind::Functor,
            Instance::Monad(_) => Kind::Monad,
        }
    }
}

pub fn make_identity() -> Arc<dyn Monad> {
    Arc::new(Identity)
}

pub fn make_maybe() -> Arc<dyn Monad> {
    Arc::new(Maybe)
}

pub fn make_list(bound: usize) -> Result<Arc<dyn Monad>> {
    Ok(Arc::new(BoundedList::new(bound)?))
}

pub fn make_nonempty_powerset() -> Arc<dyn Monad> {
    Arc::new(NonemptyPowerset)
}

pub fn make_full_powerset() -> Arc<dyn Monad> {
    Arc::new(FullPowerset)
}

pub fn make_rect_band() -> Arc<dyn Monad> {
    Arc::new(RectBand)
}

pub fn make_diag_quotient() -> Arc<dyn Functor> {
    Arc::new(DiagQuotient)
}

pub fn make_trivial() -> Arc<dyn Functor> {
    Arc::new(Trivial)
}

/// Connectedness and constant verdicts as registration sees them. Bounded
/// functors can only be refuted, never confirmed, as connected.
pub fn computed_flags(f: &dyn Functor) -> Result<(Option<bool>, bool)> {
    let connected = match is_connected(f)? {
        Connectedness::Connected(_) => Some(true),
        Connectedness::NotConnected(..) | Connectedness::Empty => Some(false),
        Connectedness::UnknownUnderBound(_) => None,
    };
    Ok((connected, has_constant(f)?.is_some()))
}

#[derive(Clone, Default)]
pub struct Registry {
    entries: Vec<(CatalogEntry, Instance)>,
}

/// Instance with connected, constant, products and pullbacks flags.
type Row<T> = (Arc<T>, bool, bool, bool, bool);

impl Registry {
    pub fn builtin() -> Self {
        let mut reg = Registry::default();
        let monads: [Row<dyn Monad>; 6] = [
            (make_identity(), true, false, true, true),
            (make_maybe(), false, true, false, true),
            (make_list(2).expect("bound 2"), false, true, false, true),
            (make_nonempty_powerset(), true, false, true, true),
            (make_full_powerset(), false, true, false, true),
            (make_rect_band(), true, false, true, true),
        ];
        for (m, connected, constant, products, pullbacks) in monads {
            let entry = CatalogEntry {
                name: m.name().to_string(),
                kind: Kind::Monad,
                connected,
                has_constant: constant,
                finiteness: m.finiteness(),
                preserves_products: Some(products),
                preserves_constant_pullbacks: Some(pullbacks),
            };
            reg.register(entry, Instance::Monad(m))
                .expect("built-in flags are correct");
        }
        let functors: [Row<dyn Functor>; 2] = [
            (make_diag_quotient(), true, true, true, false),
            (make_trivial(), false, false, true, true),
        ];
        for (f, connected, constant, products, pullbacks) in functors {
            let entry = CatalogEntry {
                name: f.name().to_string(),
                kind: Kind::Functor,
                connected,
                has_constant: constant,
                finiteness: f.finiteness(),
                preserves_products: Some(products),
                preserves_constant_pullbacks: Some(pullbacks),
            };
            reg.register(entry, Instance::Functor(f))
                .expect("built-in flags are correct");
        }
        reg
    }

    /// Adds an instance after checking its declared flags against the
    /// computed verdicts. A name already present is replaced.
    pub fn register(&mut self, entry: CatalogEntry, instance: Instance) -> Result<()> {
        let (connected, constant) = computed_flags(instance.functor())?;
        match connected {
            Some(c) if c != entry.connected => {
                return Err(Error::Rejected(format!(
                    "{}: declared connected={} but computed {c}",
                    entry.name, entry.connected
                )));
            }
            None if entry.connected => {
                return Err(Error::Rejected(format!(
                    "{}: connectedness cannot be concluded under a bound",
                    entry.name
                )));
            }
            _ => {}
        }
        if constant != entry.has_constant {
            return Err(Error::Rejected(format!(
                "{}: declared has_constant={} but computed {constant}",
                entry.name, entry.has_constant
            )));
        }
        if entry.kind != instance.kind() {
            return Err(Error::Rejected(format!("{}: kind does not match instance", entry.name)));
        }
        self.entries.retain(|(e, _)| e.name != entry.name);
        self.entries.push((entry, instance));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&(CatalogEntry, Instance)> {
        self.entries.iter().find(|(e, _)| e.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(CatalogEntry, Instance)> {
        self.entries.iter()
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(e, _)| e.name.as_str()).collect()
    }
}
