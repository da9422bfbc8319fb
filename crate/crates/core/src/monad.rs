//! Monad structure (unit and multiplication) and its law checkers.
//!
//! Associativity of the multiplication is reported but never required.

use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::finset::{FinMap, FinSet};
use crate::functor::{Finiteness, Functor, Identity, NatTrans};
use crate::report::{Expect, Report, Verdict};

pub trait Monad: Functor {
    /// `ι_X(a)`.
    fn unit_at(&self, x: &FinSet, a: &Elem) -> Result<Elem>;

    /// `μ_X(w)` for `w ∈ F(F(X))`.
    fn mult_at(&self, x: &FinSet, w: &Elem) -> Result<Elem>;

    fn unit(&self, x: &FinSet) -> Result<FinMap> {
        FinMap::from_fn(x.clone(), self.on_object(x)?, |a| self.unit_at(x, a))
    }

    /// The full table of `μ_X`. Fails for bounded monads whose flattening
    /// leaves the bound somewhere on `F(F(X))`.
    fn mult(&self, x: &FinSet) -> Result<FinMap> {
        let fx = self.on_object(x)?;
        let ffx = self.on_object(&fx)?;
        FinMap::from_fn(ffx, fx, |w| self.mult_at(x, w))
    }
}

impl Monad for Identity {
    fn unit_at(&self, x: &FinSet, a: &Elem) -> Result<Elem> {
        x.require(a)?;
        Ok(a.clone())
    }

    fn mult_at(&self, _x: &FinSet, w: &Elem) -> Result<Elem> {
        Ok(w.clone())
    }
}

fn bound_guard(m: &dyn Monad, set: &FinSet, v: &Elem, what: &str) -> Result<()> {
    if let Finiteness::Bounded(bound) = m.finiteness() {
        if !set.contains(v) {
            return Err(Error::BoundExceeded {
                bound,
                detail: format!("{what} = {v} is not enumerated"),
            });
        }
    }
    Ok(())
}

/// `μ_X ∘ ι_{F(X)} = id = μ_X ∘ F(ι_X)` on `F(X)`.
pub fn check_unit_laws(m: &dyn Monad, x: &FinSet) -> Result<Report> {
    let mut report = Report::new(m.name()).under_bound(m.finiteness().bound());
    let fx = m.on_object(x)?;
    let iota = m.unit(x)?;
    let ffx = match m.finiteness() {
        Finiteness::Bounded(_) => Some(m.on_object(&fx)?),
        Finiteness::Finite => None,
    };
    let mut left = None;
    let mut right = None;
    for u in fx.iter() {
        if left.is_none() {
            let w = m.unit_at(&fx, u)?;
            if let Some(ffx) = &ffx {
                bound_guard(m, ffx, &w, "ι_F(X)(u)")?;
            }
            let back = m.mult_at(x, &w)?;
            if back != *u {
                left = Some(format!("μ(ι_F(X)({u})) = {back} on X = {x}"));
            }
        }
        if right.is_none() {
            let w = m.map_elem(&iota, u)?;
            if let Some(ffx) = &ffx {
                bound_guard(m, ffx, &w, "F(ι_X)(u)")?;
            }
            let back = m.mult_at(x, &w)?;
            if back != *u {
                right = Some(format!("μ(F(ι_X)({u})) = {back} on X = {x}"));
            }
        }
    }
    report.outcome(format!("left unit law on {x}"), Expect::Holds, left);
    report.outcome(format!("right unit law on {x}"), Expect::Holds, right);
    Ok(report)
}

/// Naturality of `ι` on the monad's universe.
pub fn check_unit_naturality(m: &dyn Monad, max_size: usize) -> Result<Option<String>> {
    let nt = NatTrans {
        source: &Identity,
        target: m,
        component: Box::new(|x| m.unit(x)),
        exempt_empty: false,
    };
    nt.check(&m.universe(max_size))
}

/// `μ_Y ∘ F(F(f)) = F(f) ∘ μ_X`, elementwise over `F(F(X))`. Elements whose
/// flattening leaves a bound are skipped (both sides must then overflow).
pub fn check_mult_naturality(m: &dyn Monad, f: &FinMap) -> Result<Report> {
    let mut report = Report::new(m.name()).under_bound(m.finiteness().bound());
    let (x, y) = (f.dom(), f.cod());
    let ff = m.on_morphism(f)?;
    let ffx = m.on_object(&m.on_object(x)?)?;
    let mut witness = None;
    let mut skipped = 0usize;
    for w in ffx.iter() {
        let right = m.mult_at(x, w).and_then(|v| m.map_elem(f, &v));
        let left = m.map_elem(&ff, w).and_then(|fw| m.mult_at(y, &fw));
        match (left, right) {
            (Ok(l), Ok(r)) if l == r => {}
            (Ok(l), Ok(r)) => {
                witness = Some(format!("at {w}: μ_Y(FFf(w)) = {l}, Ff(μ_X(w)) = {r}; f = {f}"));
                break;
            }
            (Err(Error::BoundExceeded { .. }), Err(Error::BoundExceeded { .. })) => skipped += 1,
            (l, r) => {
                witness = Some(format!(
                    "at {w}: sides disagree on definedness ({l:?} vs {r:?}); f = {f}"
                ));
                break;
            }
        }
    }
    let mut label = format!("μ natural along {f}");
    if skipped > 0 {
        label.push_str(&format!(" ({skipped} elements beyond bound)"));
    }
    report.outcome(label, Expect::Holds, witness);
    Ok(report)
}

/// `μ_X ∘ μ_{F(X)} = μ_X ∘ F(μ_X)` on `F³(X)`; informative only.
pub fn check_associativity(m: &dyn Monad, x: &FinSet) -> Result<Report> {
    let mut report = Report::new(m.name()).under_bound(m.finiteness().bound());
    let fx = m.on_object(x)?;
    let ffx = m.on_object(&fx)?;
    let fffx = m.on_object(&ffx)?;
    // F(μ_X) elementwise needs μ_X as a map; restrict to the defined part.
    let mut pairs = Vec::new();
    for w in ffx.iter() {
        match m.mult_at(x, w) {
            Ok(v) => pairs.push((w.clone(), v)),
            Err(Error::BoundExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    let mu_x = FinMap::from_pairs(FinSet::new(pairs.iter().map(|(w, _)| w.clone())), fx.clone(), pairs)?;
    let mut witness = None;
    for z in fffx.iter() {
        let a = m.mult_at(&fx, z).and_then(|v| m.mult_at(x, &v));
        let b = m.map_elem(&mu_x, z).and_then(|v| m.mult_at(x, &v));
        match (a, b) {
            (Ok(a), Ok(b)) if a != b => {
                witness = Some(format!("at {z}: μ∘μF = {a}, μ∘Fμ = {b}"));
                break;
            }
            _ => {}
        }
    }
    let verdict = if witness.is_some() {
        Verdict::Fails
    } else {
        Verdict::Holds
    };
    report.record(format!("associativity on {x}"), verdict, Expect::Any, witness);
    Ok(report)
}
