//! Connectedness, connected decomposition, Yoneda transformations and
//! constants of a functor.
//!
//! A constant is detected at a two-element set: `e ∈ F(1)` is a constant iff
//! the two points `1 -> {a,b}` send it to the same element. Any two points of
//! any set factor through a two-element set, so the induced family
//! `u_X = F(x̄)(e)` is then natural away from `∅`; the checkers below confirm
//! this empirically on every tested set.

use std::collections::BTreeMap;

use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet};
use crate::functor::{ConstantOne, Functor, Identity, NatTrans};
use crate::report::{Expect, Report, Verdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Connectedness {
    /// `F(1)` has exactly one element.
    Connected(Elem),
    /// Two distinct elements of `F(1)`.
    NotConnected(Elem, Elem),
    /// `F(1) = ∅`, so `F` is the trivial functor.
    Empty,
    /// A bounded enumeration of `F(1)` shows at most one element.
    UnknownUnderBound(usize),
}

impl Connectedness {
    pub fn is_connected(&self) -> bool {
        matches!(self, Connectedness::Connected(_))
    }
}

pub fn is_connected(f: &dyn Functor) -> Result<Connectedness> {
    let one = f.f_one()?;
    let elems = one.elems();
    Ok(match (elems, f.finiteness().bound()) {
        ([a, b, ..], _) => Connectedness::NotConnected(a.clone(), b.clone()),
        (_, Some(k)) => Connectedness::UnknownUnderBound(k),
        ([e], None) => Connectedness::Connected(e.clone()),
        ([], None) => Connectedness::Empty,
    })
}

/// `F_e(X)`: the elements of `F(X)` sent to `e` by `F(!_X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub tag: Elem,
    pub members: FinSet,
}

/// Partitions `F(X)` by the image under `F(!_X)`. Empty components are
/// omitted.
pub fn decompose_connected(f: &dyn Functor, x: &FinSet) -> Result<Vec<Component>> {
    let bang = f.on_morphism(&FinMap::terminal(x))?;
    let one = f.f_one()?;
    let mut parts: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
    for (u, e) in bang.iter() {
        one.require(e)?;
        parts.entry(e.clone()).or_default().push(u.clone());
    }
    Ok(parts
        .into_iter()
        .map(|(tag, members)| Component {
            tag,
            members: FinSet::new(members),
        })
        .collect())
}

/// Checks that the components partition `F(X)` and that every `F(f)` maps
/// `F_e(X)` into `F_e(Y)`.
pub fn check_decomposition(f: &dyn Functor, max_size: usize) -> Result<Option<String>> {
    let universe = f.universe(max_size);
    for x in universe.sets() {
        let comps = decompose_connected(f, &x)?;
        let union: usize = comps.iter().map(|c| c.members.len()).sum();
        let fx = f.on_object(&x)?;
        if union != fx.len() || FinSet::new(comps.iter().flat_map(|c| c.members.iter().cloned())) != fx {
            return Ok(Some(format!("components of F({x}) do not partition it")));
        }
        for y in universe.sets() {
            let targets = decompose_connected(f, &y)?;
            let tag_of = |v: &Elem| targets.iter().find(|c| c.members.contains(v)).map(|c| &c.tag);
            for m in universe.maps_between(&x, &y) {
                for c in &comps {
                    for u in &c.members {
                        let v = f.map_elem(&m, u)?;
                        if tag_of(&v) != Some(&c.tag) {
                            return Ok(Some(format!("F(f) moves {u} out of component {} for f = {m}", c.tag)));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// `ι_X(x) = F(x̄)(e)`, the component at `X` of the transformation `Id -> F`
/// determined by `e ∈ F(1)`.
pub fn yoneda_iota(f: &dyn Functor, e: &Elem, x: &FinSet) -> Result<FinMap> {
    if !f.f_one()?.contains(e) {
        return Err(Error::InvalidComponent(e.clone()));
    }
    let fx = f.on_object(x)?;
    FinMap::from_fn(x.clone(), fx, |a| f.map_elem(&FinMap::point(x, a)?, e))
}

/// Naturality of [`yoneda_iota`] on nonempty sets of the universe.
pub fn check_yoneda_naturality(f: &dyn Functor, e: &Elem, max_size: usize) -> Result<Option<String>> {
    let nt = NatTrans {
        source: &Identity,
        target: f,
        component: Box::new(move |x| yoneda_iota(f, e, x)),
        exempt_empty: true,
    };
    nt.check(&f.universe(max_size))
}

/// A two-element set of the universe whose two points are available.
fn two_point_set(f: &dyn Functor) -> Result<FinSet> {
    let universe = f.universe(2);
    universe
        .sets()
        .into_iter()
        .filter(|s| s.len() == 2)
        .find(|s| {
            s.iter()
                .all(|x| FinMap::point(s, x).is_ok_and(|p| universe.contains_map(&p)))
        })
        .ok_or_else(|| Error::MissingTable("no two-element set with its points".into()))
}

/// Returns an `e ∈ F(1)` fused by the two points of a two-element set.
pub fn has_constant(f: &dyn Functor) -> Result<Option<Elem>> {
    let two = two_point_set(f)?;
    let pa = FinMap::point(&two, &two.elems()[0])?;
    let pb = FinMap::point(&two, &two.elems()[1])?;
    for e in f.f_one()?.iter() {
        if f.map_elem(&pa, e)? == f.map_elem(&pb, e)? {
            return Ok(Some(e.clone()));
        }
    }
    Ok(None)
}

/// The family `u_X = F(x̄)(e)` for nonempty `X`.
pub fn constant_family(f: &dyn Functor, e: &Elem, x: &FinSet) -> Result<FinMap> {
    let first = x
        .elems()
        .first()
        .ok_or_else(|| Error::Precondition("constant family is not defined at ∅".into()))?;
    let u = f.map_elem(&FinMap::point(x, first)?, e)?;
    FinMap::constant(&FinSet::one(), &f.on_object(x)?, &u)
}

/// Naturality of the constant family from `C₁`, exempting `∅`.
pub fn check_constant_family(f: &dyn Functor, e: &Elem, max_size: usize) -> Result<Option<String>> {
    let nt = NatTrans {
        source: &ConstantOne,
        target: f,
        component: Box::new(move |x| constant_family(f, e, x)),
        exempt_empty: true,
    };
    nt.check(&f.universe(max_size))
}

/// Whether `F(c_y^X)` is constant and, for connected `F`, whether it equals
/// `c_{ι_Y(y)}`.
pub fn check_constant_map_preservation(f: &dyn Functor, x: &FinSet, y: &FinSet, value: &Elem) -> Result<Report> {
    if x.is_empty() {
        return Err(Error::Precondition("X must be nonempty".into()));
    }
    y.require(value)?;
    let mut report = Report::new(f.name()).under_bound(f.finiteness().bound());
    let c = FinMap::constant(x, y, value)?;
    let fc = f.on_morphism(&c)?;
    let connected = is_connected(f)?;
    let label = format!("F(c_{value}) constant on F({x})");
    let witness = (!fc.is_constant()).then(|| {
        let mut it = fc.iter();
        let (u0, v0) = it.next().expect("nonempty F(X)");
        let (u1, v1) = it.find(|(_, v)| *v != v0).expect("non-constant table");
        format!("F(c_{value})({u0}) = {v0} but F(c_{value})({u1}) = {v1}")
    });
    let expect = if connected.is_connected() {
        Expect::Holds
    } else {
        Expect::Any
    };
    report.outcome(label, expect, witness);
    if let Connectedness::Connected(e) = connected {
        let target = yoneda_iota(f, &e, y)?.apply(value)?.clone();
        let want = FinMap::constant(fc.dom(), fc.cod(), &target)?;
        let witness = fc
            .iter()
            .zip(want.images())
            .find(|((_, a), b)| a != b)
            .map(|((u, a), b)| format!("F(c_{value})({u}) = {a}, ι_Y({value}) = {b}"));
        report.outcome(format!("F(c_{value}) = c_ι({value})"), Expect::Holds, witness);
    }
    Ok(report)
}

/// For connected `F`: exactly one of "every ι_X injective" and "F has a
/// constant" is confirmed on the tested sets.
pub fn check_identity_subfunctor_dichotomy(f: &dyn Functor, max_size: usize) -> Result<Report> {
    let e = match is_connected(f)? {
        Connectedness::Connected(e) => e,
        other => return Err(Error::Precondition(format!("functor is not connected: {other:?}"))),
    };
    let mut report = Report::new(f.name());
    let mut non_injective = None;
    for x in f.universe(max_size).sets() {
        let iota = yoneda_iota(f, &e, &x)?;
        if !iota.is_injective() {
            non_injective = Some(format!("ι_{x} = {iota}"));
            break;
        }
    }
    let injective = non_injective.is_none();
    report.record(
        "identity subfunctor (all ι_X injective)",
        if injective { Verdict::Holds } else { Verdict::Fails },
        Expect::Any,
        non_injective,
    );
    let constant = has_constant(f)?;
    report.record(
        "possesses a constant",
        if constant.is_some() {
            Verdict::Holds
        } else {
            Verdict::Fails
        },
        Expect::Any,
        constant
            .is_none()
            .then(|| "no element of F(1) is fused by the two points".to_string()),
    );
    let exactly_one = injective != constant.is_some();
    report.outcome(
        "exactly one branch",
        Expect::Holds,
        (!exactly_one).then(|| format!("injective = {injective}, constant = {constant:?}")),
    );
    if let Some(c) = constant {
        report.outcome(
            format!("constant {c} is natural away from ∅"),
            Expect::Holds,
            check_constant_family(f, &c, max_size)?,
        );
    }
    Ok(report)
}
