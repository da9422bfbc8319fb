//! The category of finite sets: objects, maps, limits and sections.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::elem::Elem;
use crate::error::{Error, Result};

/// A finite set stored as a sorted, duplicate-free slice.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Elem>", into = "Vec<Elem>")]
pub struct FinSet(Arc<[Elem]>);

impl FinSet {
    pub fn new(items: impl IntoIterator<Item = Elem>) -> Self {
        let mut v: Vec<Elem> = items.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        FinSet(v.into())
    }

    pub fn empty() -> Self {
        FinSet(Arc::from(Vec::new()))
    }

    /// The set of atoms `0, 1, .., n-1`.
    pub fn standard(n: usize) -> Self {
        FinSet::new((0..n).map(|i| Elem::atom(i.to_string())))
    }

    /// The terminal object `{0}`.
    pub fn one() -> Self {
        FinSet::standard(1)
    }

    pub fn of_atoms<S: AsRef<str>>(labels: impl IntoIterator<Item = S>) -> Self {
        FinSet::new(labels.into_iter().map(Elem::atom))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Elem> {
        self.0.iter()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.0
    }

    pub fn index_of(&self, e: &Elem) -> Option<usize> {
        self.0.binary_search(e).ok()
    }

    pub fn contains(&self, e: &Elem) -> bool {
        self.index_of(e).is_some()
    }

    pub fn require(&self, e: &Elem) -> Result<usize> {
        self.index_of(e).ok_or_else(|| Error::NotMember {
            elem: e.clone(),
            set: self.to_string(),
        })
    }

    pub fn is_subset(&self, other: &FinSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }
}

impl From<Vec<Elem>> for FinSet {
    fn from(v: Vec<Elem>) -> Self {
        FinSet::new(v)
    }
}

impl From<FinSet> for Vec<Elem> {
    fn from(s: FinSet) -> Self {
        s.0.to_vec()
    }
}

impl FromIterator<Elem> for FinSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        FinSet::new(iter)
    }
}

impl<'a> IntoIterator for &'a FinSet {
    type Item = &'a Elem;
    type IntoIter = std::slice::Iter<'a, Elem>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}

impl std::str::FromStr for FinSet {
    type Err = Error;

    /// Parses a set literal such as `{a,b}`.
    fn from_str(s: &str) -> Result<Self> {
        match s.parse::<Elem>()? {
            Elem::Set(set) => Ok(set),
            other => Err(Error::Parse(format!("{other} is not a set literal"))),
        }
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A total function between finite sets. `table[i]` is the image of the
/// `i`-th element of `dom` in canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MapRepr", into = "MapRepr")]
pub struct FinMap {
    dom: FinSet,
    cod: FinSet,
    table: Arc<[Elem]>,
}

#[derive(Serialize, Deserialize)]
struct MapRepr {
    dom: FinSet,
    cod: FinSet,
    table: Vec<(Elem, Elem)>,
}

impl TryFrom<MapRepr> for FinMap {
    type Error = Error;

    fn try_from(r: MapRepr) -> Result<Self> {
        FinMap::from_pairs(r.dom, r.cod, r.table)
    }
}

impl From<FinMap> for MapRepr {
    fn from(m: FinMap) -> Self {
        let table = m.iter().map(|(x, y)| (x.clone(), y.clone())).collect();
        MapRepr {
            dom: m.dom,
            cod: m.cod,
            table,
        }
    }
}

impl FinMap {
    /// Builds a map from images listed in domain order.
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<Elem>) -> Result<Self> {
        if table.len() != dom.len() {
            return Err(Error::NotTotal(format!(
                "{} images for a domain of {} elements",
                table.len(),
                dom.len()
            )));
        }
        for y in &table {
            cod.require(y)?;
        }
        Ok(FinMap {
            dom,
            cod,
            table: table.into(),
        })
    }

    pub fn from_fn(dom: FinSet, cod: FinSet, mut f: impl FnMut(&Elem) -> Result<Elem>) -> Result<Self> {
        let table = dom.iter().map(&mut f).collect::<Result<Vec<_>>>()?;
        FinMap::new(dom, cod, table)
    }

    /// Builds a map from an association list; every domain element must
    /// appear exactly once.
    pub fn from_pairs(dom: FinSet, cod: FinSet, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Result<Self> {
        let mut slots: Vec<Option<Elem>> = vec![None; dom.len()];
        for (x, y) in pairs {
            let i = dom.require(&x)?;
            if slots[i].replace(y).is_some() {
                return Err(Error::NotTotal(format!("{x} listed twice")));
            }
        }
        let table = slots
            .into_iter()
            .zip(dom.iter())
            .map(|(s, x)| s.ok_or_else(|| Error::NotTotal(format!("{x} has no image"))))
            .collect::<Result<Vec<_>>>()?;
        FinMap::new(dom, cod, table)
    }

    pub fn identity(x: &FinSet) -> Self {
        FinMap {
            dom: x.clone(),
            cod: x.clone(),
            table: x.elems().into(),
        }
    }

    /// `c_y^X`, the constant map `X -> cod` with value `y`.
    pub fn constant(x: &FinSet, cod: &FinSet, y: &Elem) -> Result<Self> {
        FinMap::new(x.clone(), cod.clone(), vec![y.clone(); x.len()])
    }

    /// `!_X`, the unique map into `{0}`.
    pub fn terminal(x: &FinSet) -> Self {
        let one = FinSet::one();
        let zero = one.elems()[0].clone();
        FinMap {
            dom: x.clone(),
            cod: one,
            table: vec![zero; x.len()].into(),
        }
    }

    /// The point `1 -> X` picking out `x`.
    pub fn point(target: &FinSet, x: &Elem) -> Result<Self> {
        FinMap::constant(&FinSet::one(), target, x)
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn images(&self) -> &[Elem] {
        &self.table
    }

    pub fn apply(&self, x: &Elem) -> Result<&Elem> {
        let i = self.dom.require(x)?;
        Ok(&self.table[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Elem, &Elem)> {
        self.dom.iter().zip(self.table.iter())
    }

    pub fn image(&self) -> FinSet {
        FinSet::new(self.table.iter().cloned())
    }

    pub fn is_constant(&self) -> bool {
        self.table.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.dom.len()
    }

    /// The same table viewed with a larger codomain.
    pub fn with_cod(&self, cod: FinSet) -> Result<Self> {
        FinMap::new(self.dom.clone(), cod, self.table.to_vec())
    }
}

impl fmt::Display for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [", self.dom, self.cod)?;
        for (i, (x, y)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}:{y}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `g ∘ f`.
pub fn compose(g: &FinMap, f: &FinMap) -> Result<FinMap> {
    if f.cod != g.dom {
        return Err(Error::Compose {
            left: f.cod.to_string(),
            right: g.dom.to_string(),
        });
    }
    let table = f
        .table
        .iter()
        .map(|y| g.apply(y).cloned())
        .collect::<Result<Vec<_>>>()?;
    Ok(FinMap {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        table: table.into(),
    })
}

/// A limit cone over two objects, with pair-encoded apex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub apex: FinSet,
    pub left: FinMap,
    pub right: FinMap,
    /// The cospan, for pullbacks.
    pub legs: Option<(FinMap, FinMap)>,
}

fn projections(apex: &FinSet, a: &FinSet, b: &FinSet) -> (FinMap, FinMap) {
    let (l, r): (Vec<Elem>, Vec<Elem>) = apex
        .iter()
        .map(|p| {
            let (x, y) = p.as_pair().expect("apex elements are pairs");
            (x.clone(), y.clone())
        })
        .unzip();
    (
        FinMap {
            dom: apex.clone(),
            cod: a.clone(),
            table: l.into(),
        },
        FinMap {
            dom: apex.clone(),
            cod: b.clone(),
            table: r.into(),
        },
    )
}

pub fn product(a: &FinSet, b: &FinSet) -> Cone {
    let apex = FinSet::new(
        a.iter()
            .flat_map(|x| b.iter().map(move |y| Elem::pair(x.clone(), y.clone()))),
    );
    let (left, right) = projections(&apex, a, b);
    Cone {
        apex,
        left,
        right,
        legs: None,
    }
}

pub fn pullback(f: &FinMap, g: &FinMap) -> Result<Cone> {
    if f.cod != g.cod {
        return Err(Error::Pullback(f.cod.to_string(), g.cod.to_string()));
    }
    let mut pairs = Vec::new();
    for (x, fx) in f.iter() {
        for (y, gy) in g.iter() {
            if fx == gy {
                pairs.push(Elem::pair(x.clone(), y.clone()));
            }
        }
    }
    let apex = FinSet::new(pairs);
    let (left, right) = projections(&apex, &f.dom, &g.dom);
    Ok(Cone {
        apex,
        left,
        right,
        legs: Some((f.clone(), g.clone())),
    })
}

/// The mediating map `d` into a product or pullback with `left ∘ d = q1`
/// and `right ∘ d = q2`.
pub fn tupling(q1: &FinMap, q2: &FinMap, target: &Cone) -> Result<FinMap> {
    if q1.dom != q2.dom {
        return Err(Error::Mediator(format!(
            "competitor legs have domains {} and {}",
            q1.dom, q2.dom
        )));
    }
    if q1.cod != *target.left.cod() || q2.cod != *target.right.cod() {
        return Err(Error::Mediator("competitor legs do not land in the cone's base".into()));
    }
    if let Some((f, g)) = &target.legs {
        for ((x, a), b) in q1.iter().zip(q2.images()) {
            if f.apply(a)? != g.apply(b)? {
                return Err(Error::Mediator(format!("cone condition fails at {x}")));
            }
        }
    }
    let table: Vec<Elem> = q1
        .images()
        .iter()
        .zip(q2.images())
        .map(|(a, b)| Elem::pair(a.clone(), b.clone()))
        .collect();
    FinMap::new(q1.dom.clone(), target.apex.clone(), table).map_err(|e| Error::Mediator(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Surjectivity {
    Surjective,
    Misses(Elem),
}

impl Surjectivity {
    pub fn holds(&self) -> bool {
        matches!(self, Surjectivity::Surjective)
    }
}

pub fn is_surjective(f: &FinMap) -> Surjectivity {
    let mut hit = vec![false; f.cod.len()];
    for y in f.table.iter() {
        if let Some(i) = f.cod.index_of(y) {
            hit[i] = true;
        }
    }
    match hit.iter().position(|h| !h) {
        None => Surjectivity::Surjective,
        Some(i) => Surjectivity::Misses(f.cod.elems()[i].clone()),
    }
}

/// A section `e` with `s ∘ e = id`, choosing the least preimage of each
/// codomain element.
pub fn right_inverse(s: &FinMap) -> Result<FinMap> {
    let mut choice: Vec<Option<Elem>> = vec![None; s.cod.len()];
    for (x, y) in s.iter() {
        let slot = &mut choice[s.cod.require(y)?];
        if slot.is_none() {
            *slot = Some(x.clone());
        }
    }
    let table = choice
        .into_iter()
        .zip(s.cod.iter())
        .map(|(c, y)| c.ok_or_else(|| Error::NoSection(y.clone())))
        .collect::<Result<Vec<_>>>()?;
    FinMap::new(s.cod.clone(), s.dom.clone(), table)
}

/// Classes of `Ker f ∧ Ker g`, each encoded as a set-kind element.
pub fn kernel_meet_quotient(f: &FinMap, g: &FinMap) -> Result<FinSet> {
    if f.dom != g.dom {
        return Err(Error::Kernel(f.dom.to_string(), g.dom.to_string()));
    }
    let mut classes: BTreeMap<(&Elem, &Elem), Vec<Elem>> = BTreeMap::new();
    for ((x, fx), gx) in f.iter().zip(g.images()) {
        classes.entry((fx, gx)).or_default().push(x.clone());
    }
    Ok(classes.into_values().map(Elem::set).collect())
}

/// Every map `dom -> cod`, in lexicographic order of image tables.
pub fn all_maps(dom: &FinSet, cod: &FinSet) -> AllMaps {
    let done = cod.is_empty() && !dom.is_empty();
    AllMaps {
        dom: dom.clone(),
        cod: cod.clone(),
        digits: vec![0; dom.len()],
        done,
    }
}

pub struct AllMaps {
    dom: FinSet,
    cod: FinSet,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for AllMaps {
    type Item = FinMap;

    fn next(&mut self) -> Option<FinMap> {
        if self.done {
            return None;
        }
        let table: Vec<Elem> = self.digits.iter().map(|&d| self.cod.elems()[d].clone()).collect();
        let out = FinMap {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            table: table.into(),
        };
        // odometer, last position fastest
        let mut i = self.digits.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.digits[i] += 1;
            if self.digits[i] < self.cod.len() {
                break;
            }
            self.digits[i] = 0;
        }
        Some(out)
    }
}
