//! User-defined functors and monads given by explicit tables.
//!
//! A document names some base sets, tabulates `F` on each of them, and
//! tabulates `F(f)` for each listed map. All checks on a loaded instance are
//! restricted to the listed sets and maps. A monad document additionally
//! carries `unit` tables (`X -> F(X)`) and `mult` tables (`F(F(X)) -> F(X)`);
//! a `mult` table for `X` needs `F(X)` itself to be a listed set.
//!
//! ```json
//! {
//!   "name": "my-maybe",
//!   "kind": "monad",
//!   "sets": { "one": ["0"], "two": ["0", "1"] },
//!   "objects": { "one": ["none()", "some(0)"], "two": ["none()", "some(0)", "some(1)"] },
//!   "morphisms": [
//!     { "dom": "one", "cod": "two", "table": [["0", "1"]],
//!       "image": [["none()", "none()"], ["some(0)", "some(1)"]] }
//!   ],
//!   "unit": { "one": [["0", "some(0)"]] },
//!   "mult": {}
//! }
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::finset::{all_maps, FinMap, FinSet};
use crate::functor::{check_functor_laws, Finiteness, Functor, Universe};
use crate::monad::{check_unit_laws, Monad};
use crate::report::Report;

use super::{computed_flags, CatalogEntry, Instance, Kind};

pub type Table = Vec<(Elem, Elem)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismTable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dom: String,
    pub cod: String,
    pub table: Table,
    /// `F(f)` as a table `F(dom) -> F(cod)`.
    pub image: Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Declared {
    pub connected: bool,
    pub has_constant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub name: String,
    pub kind: Kind,
    pub sets: BTreeMap<String, Vec<Elem>>,
    pub objects: BTreeMap<String, Vec<Elem>>,
    #[serde(default)]
    pub morphisms: Vec<MorphismTable>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub unit: BTreeMap<String, Table>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub mult: BTreeMap<String, Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared: Option<Declared>,
}

impl TableDocument {
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Err(Error::Schema("empty document".into()));
        }
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

/// A functor known only on listed sets and maps.
#[derive(Clone, Debug)]
pub struct TableFunctor {
    name: String,
    objects: Vec<(FinSet, FinSet)>,
    morphisms: Vec<(FinMap, FinMap)>,
}

impl TableFunctor {
    fn lookup_map(&self, f: &FinMap) -> Option<&FinMap> {
        self.morphisms.iter().find(|(m, _)| m == f).map(|(_, img)| img)
    }
}

impl Functor for TableFunctor {
    fn name(&self) -> &str {
        &self.name
    }

    fn on_object(&self, x: &FinSet) -> Result<FinSet> {
        self.objects
            .iter()
            .find(|(s, _)| s == x)
            .map(|(_, fx)| fx.clone())
            .ok_or_else(|| Error::MissingTable(format!("F({x}) is not tabulated")))
    }

    fn map_elem(&self, f: &FinMap, u: &Elem) -> Result<Elem> {
        if let Some(img) = self.lookup_map(f) {
            return img.apply(u).cloned();
        }
        if f.dom() == f.cod() && f.images() == f.dom().elems() {
            return Ok(u.clone());
        }
        Err(Error::MissingTable(format!("F({f}) is not tabulated")))
    }

    /// Listed sets all of whose points `1 -> S` are tabulated, with the
    /// listed maps between them. Sets present only to type `μ` drop out.
    fn universe(&self, _max_size: usize) -> Universe {
        let listed = |m: &FinMap| self.lookup_map(m).is_some();
        let ones: Vec<&FinSet> = self.objects.iter().map(|(s, _)| s).filter(|s| s.len() == 1).collect();
        let sets: Vec<FinSet> = self
            .objects
            .iter()
            .map(|(s, _)| s)
            .filter(|s| {
                s.is_empty()
                    || ones
                        .iter()
                        .any(|o| s.iter().all(|x| FinMap::constant(o, s, x).is_ok_and(|p| listed(&p))))
            })
            .cloned()
            .collect();
        let maps = self
            .morphisms
            .iter()
            .map(|(m, _)| m)
            .filter(|m| sets.contains(m.dom()) && sets.contains(m.cod()))
            .cloned()
            .collect();
        Universe::Listed { sets, maps }
    }
}

#[derive(Clone, Debug)]
pub struct TableMonad {
    functor: TableFunctor,
    units: Vec<(FinSet, FinMap)>,
    mults: Vec<(FinSet, FinMap)>,
}

impl TableMonad {
    /// Sets carrying both a unit and a multiplication table.
    pub fn checkable_sets(&self) -> Vec<FinSet> {
        self.units
            .iter()
            .filter(|(x, _)| self.mults.iter().any(|(y, _)| y == x))
            .map(|(x, _)| x.clone())
            .collect()
    }
}

impl Functor for TableMonad {
    fn name(&self) -> &str {
        self.functor.name()
    }

    fn finiteness(&self) -> Finiteness {
        Finiteness::Finite
    }

    fn on_object(&self, x: &FinSet) -> Result<FinSet> {
        self.functor.on_object(x)
    }

    fn map_elem(&self, f: &FinMap, u: &Elem) -> Result<Elem> {
        self.functor.map_elem(f, u)
    }

    fn universe(&self, max_size: usize) -> Universe {
        self.functor.universe(max_size)
    }
}

impl Monad for TableMonad {
    fn unit_at(&self, x: &FinSet, a: &Elem) -> Result<Elem> {
        let (_, t) = self
            .units
            .iter()
            .find(|(s, _)| s == x)
            .ok_or_else(|| Error::MissingTable(format!("unit at {x}")))?;
        t.apply(a).cloned()
    }

    fn mult_at(&self, x: &FinSet, w: &Elem) -> Result<Elem> {
        let (_, t) = self
            .mults
            .iter()
            .find(|(s, _)| s == x)
            .ok_or_else(|| Error::MissingTable(format!("mult at {x}")))?;
        t.apply(w).cloned()
    }
}

fn schema(e: Error) -> Error {
    match e {
        Error::Schema(_) => e,
        other => Error::Schema(other.to_string()),
    }
}

fn build_functor(doc: &TableDocument) -> Result<(TableFunctor, BTreeMap<String, FinSet>)> {
    if doc.name.trim().is_empty() {
        return Err(Error::Schema("name must be nonempty".into()));
    }
    if doc.sets.is_empty() {
        return Err(Error::Schema("at least one base set is required".into()));
    }
    let mut sets = BTreeMap::new();
    let mut objects = Vec::new();
    for (name, elems) in &doc.sets {
        let x = FinSet::new(elems.iter().cloned());
        if x.len() != elems.len() {
            return Err(Error::Schema(format!("set {name} lists duplicates")));
        }
        let fx = doc
            .objects
            .get(name)
            .ok_or_else(|| Error::Schema(format!("no object table for set {name}")))?;
        if objects.iter().any(|(s, _)| *s == x) {
            return Err(Error::Schema(format!("set {name} is listed twice")));
        }
        objects.push((x.clone(), FinSet::new(fx.iter().cloned())));
        sets.insert(name.clone(), x);
    }
    if let Some(extra) = doc.objects.keys().find(|k| !sets.contains_key(*k)) {
        return Err(Error::Schema(format!("object table for unknown set {extra}")));
    }
    let functor_of = |x: &FinSet| objects.iter().find(|(s, _)| s == x).map(|(_, fx)| fx.clone());
    let mut morphisms = Vec::new();
    for (i, m) in doc.morphisms.iter().enumerate() {
        let label = m.name.clone().unwrap_or_else(|| format!("morphism #{i}"));
        let dom = sets
            .get(&m.dom)
            .ok_or_else(|| Error::Schema(format!("{label}: unknown domain {}", m.dom)))?;
        let cod = sets
            .get(&m.cod)
            .ok_or_else(|| Error::Schema(format!("{label}: unknown codomain {}", m.cod)))?;
        let f = FinMap::from_pairs(dom.clone(), cod.clone(), m.table.iter().cloned())
            .map_err(|e| Error::Schema(format!("{label}: {e}")))?;
        let img = FinMap::from_pairs(
            functor_of(dom).expect("listed"),
            functor_of(cod).expect("listed"),
            m.image.iter().cloned(),
        )
        .map_err(|e| Error::Schema(format!("{label} image: {e}")))?;
        if morphisms.iter().any(|(g, _)| *g == f) {
            return Err(Error::Schema(format!("{label} duplicates an earlier map")));
        }
        morphisms.push((f, img));
    }
    let functor = TableFunctor {
        name: doc.name.clone(),
        objects,
        morphisms,
    };
    Ok((functor, sets))
}

fn build_monad(doc: &TableDocument, functor: TableFunctor, sets: &BTreeMap<String, FinSet>) -> Result<TableMonad> {
    if doc.unit.is_empty() {
        return Err(Error::Schema("a monad document needs unit tables".into()));
    }
    let set = |name: &str| {
        sets.get(name)
            .cloned()
            .ok_or_else(|| Error::Schema(format!("table for unknown set {name}")))
    };
    let mut units = Vec::new();
    for (name, t) in &doc.unit {
        let x = set(name)?;
        let fx = functor.on_object(&x).map_err(schema)?;
        let map = FinMap::from_pairs(x.clone(), fx, t.iter().cloned())
            .map_err(|e| Error::Schema(format!("unit at {name}: {e}")))?;
        units.push((x, map));
    }
    let mut mults = Vec::new();
    for (name, t) in &doc.mult {
        let x = set(name)?;
        let fx = functor.on_object(&x).map_err(schema)?;
        let ffx = functor
            .on_object(&fx)
            .map_err(|_| Error::Schema(format!("mult at {name} needs F({name}) as a listed set")))?;
        let map = FinMap::from_pairs(ffx, fx, t.iter().cloned())
            .map_err(|e| Error::Schema(format!("mult at {name}: {e}")))?;
        mults.push((x, map));
    }
    Ok(TableMonad { functor, units, mults })
}

fn rejection(report: &Report) -> Option<Error> {
    report
        .first_unexpected()
        .map(|c| Error::Rejected(format!("{}: {}", c.check, c.witness.clone().unwrap_or_default())))
}

/// Parses, validates and law-checks a document. Schema problems give
/// [`Error::Schema`], law violations [`Error::Rejected`] with a witness.
pub fn load_custom(text: &str) -> Result<(CatalogEntry, Instance)> {
    let doc = TableDocument::parse(text)?;
    let (functor, sets) = build_functor(&doc)?;
    let (instance, checkable) = match doc.kind {
        Kind::Functor => (Instance::Functor(Arc::new(functor)), Vec::new()),
        Kind::Monad => {
            let monad = build_monad(&doc, functor, &sets)?;
            let checkable = monad.checkable_sets();
            (Instance::Monad(Arc::new(monad)), checkable)
        }
    };
    let laws = check_functor_laws(instance.functor(), 0);
    if let Some(e) = rejection(&laws) {
        return Err(e);
    }
    if let Instance::Monad(m) = &instance {
        for x in checkable {
            let report = match check_unit_laws(m.as_ref(), &x) {
                Ok(r) => r,
                Err(Error::MissingTable(t)) => {
                    return Err(Error::Schema(format!("unit laws at {x} need {t}")));
                }
                Err(e) => return Err(Error::Rejected(e.to_string())),
            };
            if let Some(e) = rejection(&report) {
                return Err(e);
            }
        }
    }
    let (connected, constant) = computed_flags(instance.functor()).map_err(schema)?;
    let connected = connected.unwrap_or(false);
    if let Some(d) = &doc.declared {
        if d.connected != connected || d.has_constant != constant {
            return Err(Error::Rejected(format!(
                "declared connected={}, has_constant={} but computed {connected}, {constant}",
                d.connected, d.has_constant
            )));
        }
    }
    let entry = CatalogEntry {
        name: doc.name.clone(),
        kind: doc.kind,
        connected,
        has_constant: constant,
        finiteness: Finiteness::Finite,
        preserves_products: None,
        preserves_constant_pullbacks: None,
    };
    Ok((entry, instance))
}

/// Tabulates an instance on `{0..n-1}` for `n <= max_size` and all maps
/// between them. Monads also get `F(X)` listed with `ι_X`, `unit` and
/// `mult` tables, enough to replay the unit laws.
pub fn export_tables(name: &str, instance: &Instance, max_size: usize) -> Result<TableDocument> {
    let f = instance.functor();
    let monad = match instance.monad() {
        Some(m) if f.finiteness() == Finiteness::Finite => Some(m),
        Some(_) => {
            return Err(Error::Precondition(
                "bounded monads can only be exported as functors".into(),
            ))
        }
        None => None,
    };
    let base: Vec<FinSet> = (0..=max_size).map(FinSet::standard).collect();
    let mut named: Vec<(String, FinSet)> = base.iter().map(|s| (format!("S{}", s.len()), s.clone())).collect();
    let name_of =
        |named: &Vec<(String, FinSet)>, s: &FinSet| named.iter().find(|(_, t)| t == s).map(|(n, _)| n.clone());
    if monad.is_some() {
        for s in &base {
            let fs = f.on_object(s)?;
            if name_of(&named, &fs).is_none() {
                named.push((format!("F(S{})", s.len()), fs));
            }
        }
    }
    let mut doc = TableDocument {
        name: name.to_string(),
        kind: instance.kind(),
        sets: BTreeMap::new(),
        objects: BTreeMap::new(),
        morphisms: Vec::new(),
        unit: BTreeMap::new(),
        mult: BTreeMap::new(),
        declared: None,
    };
    for (n, s) in &named {
        doc.sets.insert(n.clone(), s.elems().to_vec());
        doc.objects.insert(n.clone(), f.on_object(s)?.elems().to_vec());
    }
    let pairs = |m: &FinMap| m.iter().map(|(a, b)| (a.clone(), b.clone())).collect::<Table>();
    let push = |doc: &mut TableDocument, m: FinMap| -> Result<()> {
        let img = f.on_morphism(&m)?;
        doc.morphisms.push(MorphismTable {
            name: None,
            dom: name_of(&named, m.dom()).expect("named"),
            cod: name_of(&named, m.cod()).expect("named"),
            table: pairs(&m),
            image: pairs(&img),
        });
        Ok(())
    };
    for a in &base {
        for b in &base {
            for m in all_maps(a, b) {
                push(&mut doc, m)?;
            }
        }
    }
    if let Some(m) = monad {
        for s in &base {
            let unit = m.unit(s)?;
            if !doc
                .morphisms
                .iter()
                .any(|t| t.table == pairs(&unit) && t.cod == name_of(&named, unit.cod()).expect("named"))
            {
                push(&mut doc, unit.clone())?;
            }
        }
        for (n, s) in &named {
            doc.unit.insert(n.clone(), pairs(&m.unit(s)?));
        }
        for s in &base {
            doc.mult.insert(name_of(&named, s).expect("named"), pairs(&m.mult(s)?));
        }
    }
    Ok(doc)
}
