//! Extensional endofunctors on finite sets and the generic law checkers.

use std::collections::HashMap;

use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::finset::{all_maps, compose, FinMap, FinSet};
use crate::report::{Expect, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Finiteness {
    Finite,
    /// Only structures of size at most `k` are enumerated.
    Bounded(usize),
}

impl Finiteness {
    pub fn bound(self) -> Option<usize> {
        match self {
            Finiteness::Finite => None,
            Finiteness::Bounded(k) => Some(k),
        }
    }
}

/// The sets and maps a checker is allowed to evaluate a functor on.
#[derive(Clone, Debug)]
pub enum Universe {
    /// `{0..n-1}` for every `n <= max`, with all maps between them.
    Standard(usize),
    /// Explicitly tabulated sets and maps (custom functors).
    Listed { sets: Vec<FinSet>, maps: Vec<FinMap> },
}

impl Universe {
    pub fn sets(&self) -> Vec<FinSet> {
        match self {
            Universe::Standard(max) => (0..=*max).map(FinSet::standard).collect(),
            Universe::Listed { sets, .. } => sets.clone(),
        }
    }

    pub fn maps_between(&self, a: &FinSet, b: &FinSet) -> Vec<FinMap> {
        match self {
            Universe::Standard(_) => all_maps(a, b).collect(),
            Universe::Listed { maps, .. } => maps.iter().filter(|m| m.dom() == a && m.cod() == b).cloned().collect(),
        }
    }

    pub fn maps(&self) -> Vec<FinMap> {
        let sets = self.sets();
        let mut out = Vec::new();
        for a in &sets {
            for b in &sets {
                out.extend(self.maps_between(a, b));
            }
        }
        out
    }

    pub fn contains_map(&self, m: &FinMap) -> bool {
        match self {
            Universe::Standard(max) => {
                let ok = |s: &FinSet| s.len() <= *max && *s == FinSet::standard(s.len());
                ok(m.dom()) && ok(m.cod())
            }
            Universe::Listed { maps, .. } => maps.contains(m),
        }
    }
}

pub trait Functor: Send + Sync {
    fn name(&self) -> &str;

    fn finiteness(&self) -> Finiteness {
        Finiteness::Finite
    }

    fn on_object(&self, x: &FinSet) -> Result<FinSet>;

    /// `F(f)(u)` for a single `u ∈ F(dom f)`. Implementations may assume
    /// `u` is well formed and need not enumerate `F(cod f)`.
    fn map_elem(&self, f: &FinMap, u: &Elem) -> Result<Elem>;

    fn on_morphism(&self, f: &FinMap) -> Result<FinMap> {
        let dom = self.on_object(f.dom())?;
        let cod = self.on_object(f.cod())?;
        let table = dom.iter().map(|u| self.map_elem(f, u)).collect::<Result<Vec<_>>>()?;
        for (u, v) in dom.iter().zip(&table) {
            if !cod.contains(v) {
                return Err(match self.finiteness() {
                    Finiteness::Bounded(bound) => Error::BoundExceeded {
                        bound,
                        detail: format!("F(f)({u}) = {v} is not enumerated in F({})", f.cod()),
                    },
                    Finiteness::Finite => Error::NotMember {
                        elem: v.clone(),
                        set: format!("F({})", f.cod()),
                    },
                });
            }
        }
        FinMap::new(dom, cod, table)
    }

    fn f_empty(&self) -> Result<FinSet> {
        self.on_object(&FinSet::empty())
    }

    fn f_one(&self) -> Result<FinSet> {
        self.on_object(&FinSet::one())
    }

    fn universe(&self, max_size: usize) -> Universe {
        Universe::Standard(max_size)
    }
}

/// `Id`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Identity;

impl Functor for Identity {
    fn name(&self) -> &str {
        "identity"
    }

    fn on_object(&self, x: &FinSet) -> Result<FinSet> {
        Ok(x.clone())
    }

    fn map_elem(&self, f: &FinMap, u: &Elem) -> Result<Elem> {
        f.apply(u).cloned()
    }
}

/// `C₁`, constantly `{0}` with identity on maps.
#[derive(Clone, Copy, Debug, Default)]
pub struct ConstantOne;

impl Functor for ConstantOne {
    fn name(&self) -> &str {
        "constant-one"
    }

    fn on_object(&self, _x: &FinSet) -> Result<FinSet> {
        Ok(FinSet::one())
    }

    fn map_elem(&self, _f: &FinMap, u: &Elem) -> Result<Elem> {
        Ok(u.clone())
    }
}

fn table_diff(lhs: &FinMap, rhs: &FinMap) -> Option<String> {
    if lhs.dom() != rhs.dom() {
        return Some(format!("domains differ: {} vs {}", lhs.dom(), rhs.dom()));
    }
    lhs.iter()
        .zip(rhs.images())
        .find(|((_, a), b)| a != b)
        .map(|((u, a), b)| format!("at {u}: {a} vs {b}"))
}

/// Checks identity and composition laws on every set and map of the
/// functor's universe up to `max_size`.
pub fn check_functor_laws(f: &dyn Functor, max_size: usize) -> Report {
    let mut report = Report::new(f.name()).under_bound(f.finiteness().bound());
    let universe = f.universe(max_size);
    let sets = universe.sets();

    let mut id_witness = None;
    for x in &sets {
        let fx = match f.on_object(x) {
            Ok(s) => s,
            Err(e) => {
                id_witness = Some(format!("F({x}) unavailable: {e}"));
                break;
            }
        };
        match f.on_morphism(&FinMap::identity(x)) {
            Ok(fid) => {
                if let Some(d) = table_diff(&fid, &FinMap::identity(&fx)) {
                    id_witness = Some(format!("F(id_{x}) differs from id: {d}"));
                    break;
                }
            }
            Err(Error::MissingTable(_)) => {}
            Err(e) => {
                id_witness = Some(format!("F(id_{x}) failed: {e}"));
                break;
            }
        }
    }
    report.outcome(format!("identity law ({} sets)", sets.len()), Expect::Holds, id_witness);

    let mut images: HashMap<FinMap, Result<FinMap>> = HashMap::new();
    let mut image = |m: &FinMap| images.entry(m.clone()).or_insert_with(|| f.on_morphism(m)).clone();
    let mut checked = 0usize;
    let mut comp_witness = None;
    'outer: for x in &sets {
        for y in &sets {
            let fs = universe.maps_between(x, y);
            if fs.is_empty() {
                continue;
            }
            for z in &sets {
                for g in universe.maps_between(y, z) {
                    for fm in &fs {
                        let gf = compose(&g, fm).expect("composable by construction");
                        if !universe.contains_map(&gf) {
                            continue;
                        }
                        let lhs = match image(&gf) {
                            Ok(m) => m,
                            Err(Error::MissingTable(_)) => continue,
                            Err(e) => {
                                comp_witness = Some(format!("F(g∘f) failed for f = {fm}, g = {g}: {e}"));
                                break 'outer;
                            }
                        };
                        let rhs = match (image(fm), image(&g)) {
                            (Ok(ff), Ok(fg)) => compose(&fg, &ff),
                            (Err(e), _) | (_, Err(e)) => Err(e),
                        };
                        checked += 1;
                        let diff = match rhs {
                            Ok(rhs) => table_diff(&lhs, &rhs),
                            Err(e) => Some(e.to_string()),
                        };
                        if let Some(d) = diff {
                            comp_witness = Some(format!("f = {fm}; g = {g}; F(g∘f) vs F(g)∘F(f) {d}"));
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    report.outcome(
        format!("composition law ({checked} pairs)"),
        Expect::Holds,
        comp_witness,
    );
    report
}

pub type Component<'a> = Box<dyn Fn(&FinSet) -> Result<FinMap> + 'a>;

/// A family of maps `source(X) -> target(X)`, computed on demand.
pub struct NatTrans<'a> {
    pub source: &'a dyn Functor,
    pub target: &'a dyn Functor,
    pub component: Component<'a>,
    /// Skip naturality squares whose domain object is `∅`.
    pub exempt_empty: bool,
}

impl NatTrans<'_> {
    /// Returns a witness for the first non-commuting square, if any. Squares
    /// whose functor images are not tabulated are skipped.
    pub fn check(&self, universe: &Universe) -> Result<Option<String>> {
        for m in universe.maps() {
            if self.exempt_empty && m.dom().is_empty() {
                continue;
            }
            let (fm, gm) = match (self.target.on_morphism(&m), self.source.on_morphism(&m)) {
                (Ok(fm), Ok(gm)) => (fm, gm),
                (Err(Error::MissingTable(_)), _) | (_, Err(Error::MissingTable(_))) => continue,
                (Err(e), _) | (_, Err(e)) => return Err(e),
            };
            let lhs = compose(&fm, &(self.component)(m.dom())?)?;
            let rhs = compose(&(self.component)(m.cod())?, &gm)?;
            if let Some(d) = table_diff(&lhs, &rhs) {
                return Ok(Some(format!("square for f = {m} fails {d}")));
            }
        }
        Ok(None)
    }
}
