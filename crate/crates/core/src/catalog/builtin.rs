//! Built-in functors and monads.

use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet};
use crate::functor::{Finiteness, Functor};
use crate::monad::Monad;

const MAX_POWERSET_BASE: usize = 16;
const MAX_LIST_ENUMERATION: usize = 1 << 20;

fn none() -> Elem {
    Elem::node("none", [])
}

fn some(x: Elem) -> Elem {
    Elem::node("some", [x])
}

fn malformed(what: &str, u: &Elem) -> Error {
    Error::Inconsistent(format!("{u} is not a {what} value"))
}

/// `X ↦ {none} ∪ {some x}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Maybe;

impl Functor for Maybe {
    fn name(&self) -> &str {
        "maybe"
    }

    fn on_object(&self, x: &FinSet) -> Result<FinSet> {
        Ok(std::iter::once(none()).chain(x.iter().cloned().map(some)).collect())
    }

    fn map_elem(&self, f: &FinMap, u: &Elem) -> Result<Elem> {
        match u.as_node() {
            Some(("none", [])) => Ok(none()),
            Some(("some", [x])) => Ok(some(f.apply(x)?.clone())),
            _ => Err(malformed("maybe", u)),
        }
    }
}

impl Monad for Maybe {
    fn unit_at(&self, x: &FinSet, a: &Elem) -> Result<Elem> {
        x.require(a)?;
        Ok(some(a.clone()))
    }

    fn mult_at(&self, _x: &FinSet, w: &Elem) -> Result<Elem> {
        match w.as_node() {
            Some(("none", [])) => Ok(none()),
            Some(("some", [inner])) => Ok(inner.clone()),
            _ => Err(malformed("maybe", w)),
        }
    }
}

/// Lists of length at most `bound`.
#[derive(Clone, Debug)]
pub struct BoundedList {
    bound: usize,
    name: String,
}

impl BoundedList {
    pub fn new(bound: usize) -> Result<Self> {
        if bound == 0 {
            return Err(Error::Precondition("list bound must be at least 1".into()));
        }
        let name = if bound == 2 {
            "list".to_string()
        } else {
            format!("list{bound}")
        };
        Ok(BoundedList { bound, name })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }
}

impl Functor for BoundedList {
    fn name(&self) -> &str {
        &self.name
    }

    fn finiteness(&self) -> Finiteness {
        Finiteness::Bounded(self.bound)
    }

    fn on_object(&self, x: &FinSet) -> Result<FinSet> {
        let n = x.len();
        let total =
            (0..=self.bound as u32).try_fold(0usize, |acc, i| n.checked_pow(i).and_then(|p| acc.checked_add(p)));
        match total {
            Some(t) if t <= MAX_LIST_ENUMERATION => {}
            _ => {
                return Err(Error::TooLarge(format!(
                    "lists of length ≤ {} over {n} elements",
                    self.bound
                )))
            }
        }
        let mut out = vec![Elem::list([])];
        let mut layer: Vec<Vec<Elem>> = vec![Vec::new()];
        for _ in 0..self.bound {
            layer = layer
                .iter()
                .flat_map(|prefix| {
                    x.iter().map(move |e| {
                        let mut next = prefix.clone();
                        next.push(e.clone());
                        next
                    })
                })
                .collect();
            out.extend(layer.iter().cloned().map(Elem::list));
        }
        Ok(FinSet::new(out))
    }

    fn map_elem(&self, f: &FinMap, u: &Elem) -> Result<Elem> {
        let items = u.as_list().ok_or_else(|| malformed("list", u))?;
        Ok(Elem::list(
            items.iter().map(|x| f.apply(x).cloned()).collect::<Result<Vec<_>>>()?,
        ))
    }
}

impl Monad for BoundedList {
    fn unit_at(&self, x: &FinSet, a: &Elem) -> Result<Elem> {
        x.require(a)?;
        Ok(Elem::list([a.clone()]))
    }

    fn mult_at(&self, _x: &FinSet, w: &Elem) -> Result<Elem> {
        let outer = w.as_list().ok_or_else(|| malformed("list", w))?;
        let mut flat = Vec::new();
        for inner in outer {
            flat.extend(inner.as_list().ok_or_else(|| malformed("list", inner))?.iter().cloned());
        }
        if flat.len() > self.bound {
            return Err(Error::BoundExceeded {
                bound: self.bound,
                detail: format!("flattening {w} has length {}", flat.len()),
            });
        }
        Ok(Elem::list(flat))
    }
}

fn subsets(x: &FinSet, include_empty: bool) -> Result<FinSet> {
    if x.len() > MAX_POWERSET_BASE {
        return Err(Error::TooLarge(format!("subsets of a {}-element set", x.len())));
    }
    let start = if include_empty { 0u64 } else { 1 };
    Ok((start..1u64 << x.len())
        .map(|mask| {
            Elem::set(
                x.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, e)| e.clone()),
            )
        })
        .collect())
}

fn direct_image(f: &FinMap, u: &Elem) -> Result<Elem> {
    let s = u.as_set().ok_or_else(|| malformed("set", u))?;
    Ok(Elem::set(
        s.iter().map(|x| f.apply(x).cloned()).collect::<Result<Vec<_>>>()?,
    ))
}

fn union(w: &Elem) -> Result<Elem> {
    let family = w.as_set().ok_or_else(|| malformed("set", w))?;
    let mut out = Vec::new();
    for member in family {
        out.extend(member.as_set().ok_or_else(|| malformed("set", member))?.iter().cloned());
    }
    Ok(Elem::set(out))
}

/// Nonempty finite subsets: the free semilattice.
#[derive(Clone, Copy, Debug, Default)]
pub struct NonemptyPowerset;

impl Functor for NonemptyPowerset {
    fn name(&self) -> &str {
        "nonempty-powerset"
    }

    fn on_object(&self, x: &FinSet) -> Result<FinSet> {
        subsets(x, false)
    }

    fn map_elem(&self, f: &FinMap, u: &Elem) -> Result<Elem> {
        direct_image(f, u)
    }
}

impl Monad for NonemptyPowerset {
    fn unit_at(&self, x: &FinSet, a: &Elem) -> Result<Elem> {
        x.require(a)?;
        Ok(Elem::set([a.clone()]))
    }

    fn mult_at(&self, _x: &FinSet, w: &Elem) -> Result<Elem> {
        union(w)
    }
}

/// All subsets, including `∅`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FullPowerset;

impl Functor for FullPowerset {
    fn name(&self) -> &str {
        "full-powerset"
    }

    fn on_object(&self, x: &FinSet) -> Result<FinSet> {
        subsets(x, true)
    }

    fn map_elem(&self, f: &FinMap, u: &Elem) -> Result<Elem> {
        direct_image(f, u)
    }
}

impl Monad for FullPowerset {
    fn unit_at(&self, x: &FinSet, a: &Elem) -> Result<Elem> {
        x.require(a)?;
        Ok(Elem::set([a.clone()]))
    }

    fn mult_at(&self, _x: &FinSet, w: &Elem) -> Result<Elem> {
        union(w)
    }
}

/// Free rectangular band: `X×X` with `(a,b)(c,d) = (a,d)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct RectBand;

fn pair_of(u: &Elem) -> Result<(&Elem, &Elem)> {
    u.as_pair().ok_or_else(|| malformed("pair", u))
}

impl Functor for RectBand {
    fn name(&self) -> &str {
        "rect-band"
    }

    fn on_object(&self, x: &FinSet) -> Result<FinSet> {
        Ok(x.iter()
            .flat_map(|a| x.iter().map(move |b| Elem::pair(a.clone(), b.clone())))
            .collect())
    }

    fn map_elem(&self, f: &FinMap, u: &Elem) -> Result<Elem> {
        let (a, b) = pair_of(u)?;
        Ok(Elem::pair(f.apply(a)?.clone(), f.apply(b)?.clone()))
    }
}

impl Monad for RectBand {
    fn unit_at(&self, x: &FinSet, a: &Elem) -> Result<Elem> {
        x.require(a)?;
        Ok(Elem::pair(a.clone(), a.clone()))
    }

    fn mult_at(&self, _x: &FinSet, w: &Elem) -> Result<Elem> {
        let (left, right) = pair_of(w)?;
        let (a, _) = pair_of(left)?;
        let (_, d) = pair_of(right)?;
        Ok(Elem::pair(a.clone(), d.clone()))
    }
}

/// `T(X) = X²/Δ`: off-diagonal pairs plus one point `bot()` for the
/// collapsed diagonal (absent when `X = ∅`).
#[derive(Clone, Copy, Debug, Default)]
pub struct DiagQuotient;

pub fn bottom() -> Elem {
    Elem::node("bot", [])
}

impl Functor for DiagQuotient {
    fn name(&self) -> &str {
        "diag-quotient"
    }

    fn on_object(&self, x: &FinSet) -> Result<FinSet> {
        if x.is_empty() {
            return Ok(FinSet::empty());
        }
        let pairs = x.iter().flat_map(|a| {
            x.iter()
                .filter(move |b| *b != a)
                .map(move |b| Elem::pair(a.clone(), b.clone()))
        });
        Ok(std::iter::once(bottom()).chain(pairs).collect())
    }

    fn map_elem(&self, f: &FinMap, u: &Elem) -> Result<Elem> {
        if *u == bottom() {
            return Ok(bottom());
        }
        let (a, b) = pair_of(u)?;
        let (fa, fb) = (f.apply(a)?, f.apply(b)?);
        Ok(if fa == fb {
            bottom()
        } else {
            Elem::pair(fa.clone(), fb.clone())
        })
    }
}

/// The functor with constant value `∅`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Trivial;

impl Functor for Trivial {
    fn name(&self) -> &str {
        "trivial"
    }

    fn on_object(&self, _x: &FinSet) -> Result<FinSet> {
        Ok(FinSet::empty())
    }

    fn map_elem(&self, _f: &FinMap, u: &Elem) -> Result<Elem> {
        Err(Error::NotMember {
            elem: u.clone(),
            set: "∅".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(s: &str) -> Elem {
        s.parse().unwrap()
    }

    #[test]
    fn cardinalities_up_to_four() {
        let list = BoundedList::new(2).unwrap();
        for n in 0..=4usize {
            let x = FinSet::standard(n);
            assert_eq!(Maybe.on_object(&x).unwrap().len(), n + 1);
            assert_eq!(list.on_object(&x).unwrap().len(), 1 + n + n * n);
            assert_eq!(NonemptyPowerset.on_object(&x).unwrap().len(), (1 << n) - 1);
            assert_eq!(FullPowerset.on_object(&x).unwrap().len(), 1 << n);
            assert_eq!(RectBand.on_object(&x).unwrap().len(), n * n);
            let t = DiagQuotient.on_object(&x).unwrap().len();
            assert_eq!(t, if n == 0 { 0 } else { n * n - n + 1 });
            assert!(Trivial.on_object(&x).unwrap().is_empty());
        }
    }

    #[test]
    fn list_flatten_and_bound() {
        let list = BoundedList::new(3).unwrap();
        let x = FinSet::of_atoms(["a", "b", "c"]);
        assert_eq!(list.mult_at(&x, &e("[[a],[b],[c]]")).unwrap(), e("[a,b,c]"));
        assert!(matches!(
            list.mult_at(&x, &e("[[a,b],[c,a]]")),
            Err(Error::BoundExceeded { bound: 3, .. })
        ));
        assert!(BoundedList::new(0).is_err());
    }

    #[test]
    fn rect_band_multiplication() {
        let x = FinSet::of_atoms(["a", "b"]);
        assert_eq!(RectBand.mult_at(&x, &e("((a,b),(c,d))")).unwrap(), e("(a,d)"));
        assert_eq!(RectBand.mult_at(&x, &e("((a,b),(a,b))")).unwrap(), e("(a,b)"));
    }

    #[test]
    fn diag_quotient_collapses_on_fused_pairs() {
        let x = FinSet::of_atoms(["a", "b"]);
        let y = FinSet::of_atoms(["0", "1"]);
        let c = FinMap::constant(&x, &y, &e("0")).unwrap();
        assert_eq!(DiagQuotient.map_elem(&c, &e("(a,b)")).unwrap(), bottom());
        let swap = FinMap::from_pairs(x.clone(), y, [(e("a"), e("1")), (e("b"), e("0"))]).unwrap();
        assert_eq!(DiagQuotient.map_elem(&swap, &e("(a,b)")).unwrap(), e("(1,0)"));
    }

    #[test]
    fn powerset_enumeration_is_capped() {
        assert!(matches!(
            NonemptyPowerset.on_object(&FinSet::standard(MAX_POWERSET_BASE + 1)),
            Err(Error::TooLarge(_))
        ));
    }
}
