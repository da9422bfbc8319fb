//! The canonical map `δ = (Fπ₁, Fπ₂)`, the constructive product splitting for
//! connected monads, and the weak-limit preservation checkers built on them.

use crate::connected::{has_constant, is_connected, Connectedness};
use crate::elem::Elem;
use crate::error::{Error, Result};
use crate::finset::{
    compose, is_surjective, kernel_meet_quotient, product, pullback, right_inverse, tupling, Cone, FinMap, FinSet,
    Surjectivity,
};
use crate::functor::Functor;
use crate::monad::Monad;
use crate::report::{Expect, Report, Verdict};

/// `δ: F(A₁×A₂) -> F(A₁)×F(A₂)`.
pub fn delta(f: &dyn Functor, a1: &FinSet, a2: &FinSet) -> Result<FinMap> {
    let p = product(a1, a2);
    delta_on(f, &p)
}

fn delta_on(f: &dyn Functor, p: &Cone) -> Result<FinMap> {
    let fp1 = f.on_morphism(&p.left)?;
    let fp2 = f.on_morphism(&p.right)?;
    let target = product(fp1.cod(), fp2.cod());
    tupling(&fp1, &fp2, &target)
}

/// `f × g: A₁×A₂ -> A₁'×A₂'`.
pub fn product_map(f: &FinMap, g: &FinMap) -> Result<FinMap> {
    let src = product(f.dom(), g.dom());
    let dst = product(f.cod(), g.cod());
    tupling(&compose(f, &src.left)?, &compose(g, &src.right)?, &dst)
}

/// `(Ff × Fg) ∘ δ = δ' ∘ F(f × g)`.
pub fn check_delta_naturality(func: &dyn Functor, f: &FinMap, g: &FinMap) -> Result<Report> {
    let mut report = Report::new(func.name()).under_bound(func.finiteness().bound());
    let d = delta(func, f.dom(), g.dom())?;
    let d2 = delta(func, f.cod(), g.cod())?;
    let lhs = compose(&product_map(&func.on_morphism(f)?, &func.on_morphism(g)?)?, &d)?;
    let rhs = compose(&d2, &func.on_morphism(&product_map(f, g)?)?)?;
    let witness = lhs
        .iter()
        .zip(rhs.images())
        .find(|((_, a), b)| a != b)
        .map(|((u, a), b)| format!("at {u}: {a} vs {b}; f = {f}; g = {g}"));
    report.outcome(format!("δ natural along {f} × {g}"), Expect::Holds, witness);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    /// `t ∈ F(A₁×A₂)` with `Fπ₁(t) = p` and `Fπ₂(t) = q`.
    pub t: Elem,
    /// `τ: A₁ -> F(A₁×A₂)`, `τ(a) = F(σ_a)(q)`.
    pub tau: FinMap,
    /// `F(τ)(p) ∈ F(F(A₁×A₂))`.
    pub f_tau_p: Elem,
}

/// Precomputed data for splitting many `(p, q)` over fixed `A₁, A₂`.
pub struct Splitter<'a> {
    monad: &'a dyn Monad,
    a1: FinSet,
    a2: FinSet,
    prod: Cone,
    f_prod: FinSet,
    sigmas: Vec<FinMap>,
    units: Vec<Elem>,
}

impl<'a> Splitter<'a> {
    pub fn new(monad: &'a dyn Monad, a1: &FinSet, a2: &FinSet) -> Result<Self> {
        match is_connected(monad)? {
            Connectedness::Connected(_) => {}
            other => {
                return Err(Error::NotConnected(format!("{}: {other:?}", monad.name())));
            }
        }
        if a1.is_empty() || a2.is_empty() {
            return Err(Error::Precondition("A₁ and A₂ must be nonempty".into()));
        }
        let prod = product(a1, a2);
        let f_prod = monad.on_object(&prod.apex)?;
        let sigmas = a1
            .iter()
            .map(|a| FinMap::from_fn(a2.clone(), prod.apex.clone(), |b| Ok(Elem::pair(a.clone(), b.clone()))))
            .collect::<Result<Vec<_>>>()?;
        let units = a1.iter().map(|a| monad.unit_at(a1, a)).collect::<Result<Vec<_>>>()?;
        Ok(Splitter {
            monad,
            a1: a1.clone(),
            a2: a2.clone(),
            prod,
            f_prod,
            sigmas,
            units,
        })
    }

    pub fn split(&self, p: &Elem, q: &Elem) -> Result<SplitResult> {
        let m = self.monad;
        m.on_object(&self.a1)?.require(p)?;
        m.on_object(&self.a2)?.require(q)?;
        let taus = self
            .sigmas
            .iter()
            .map(|s| m.map_elem(s, q))
            .collect::<Result<Vec<_>>>()?;
        // auxiliary lemma: Fπ₁ ∘ τ = ι and Fπ₂ ∘ τ = c_q
        for ((a, ta), unit) in self.a1.iter().zip(&taus).zip(&self.units) {
            let first = m.map_elem(&self.prod.left, ta)?;
            if first != *unit {
                return Err(Error::Inconsistent(format!(
                    "Fπ₁(τ({a})) = {first} but ι({a}) = {unit}"
                )));
            }
            let second = m.map_elem(&self.prod.right, ta)?;
            if second != *q {
                return Err(Error::Inconsistent(format!("Fπ₂(τ({a})) = {second} but q = {q}")));
            }
        }
        let tau = FinMap::new(self.a1.clone(), self.f_prod.clone(), taus)?;
        let f_tau_p = m.map_elem(&tau, p)?;
        let t = m.mult_at(&self.prod.apex, &f_tau_p)?;
        let tp = m.map_elem(&self.prod.left, &t)?;
        let tq = m.map_elem(&self.prod.right, &t)?;
        if tp != *p || tq != *q {
            return Err(Error::Inconsistent(format!(
                "t = {t} projects to ({tp}, {tq}), wanted ({p}, {q})"
            )));
        }
        Ok(SplitResult { t, tau, f_tau_p })
    }

    pub fn a2(&self) -> &FinSet {
        &self.a2
    }
}

/// Finds `t ∈ F(A₁×A₂)` over `(p, q)` by `t = μ(F(τ)(p))`.
pub fn split_product(m: &dyn Monad, a1: &FinSet, a2: &FinSet, p: &Elem, q: &Elem) -> Result<SplitResult> {
    Splitter::new(m, a1, a2)?.split(p, q)
}

/// Surjectivity of a canonical map, with a section or an unhit element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreservationVerdict {
    Preserved { section: FinMap },
    NotPreserved { unhit: Elem },
}

impl PreservationVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, PreservationVerdict::Preserved { .. })
    }

    fn of(map: &FinMap) -> Result<Self> {
        Ok(match is_surjective(map) {
            Surjectivity::Surjective => PreservationVerdict::Preserved {
                section: right_inverse(map)?,
            },
            Surjectivity::Misses(unhit) => PreservationVerdict::NotPreserved { unhit },
        })
    }
}

pub fn check_weakly_preserves_product(f: &dyn Functor, a1: &FinSet, a2: &FinSet) -> Result<PreservationVerdict> {
    PreservationVerdict::of(&delta(f, a1, a2)?)
}

/// Whether `F` sends the pullback of `c_{y1}^{X1}` and `c_{y2}^{X2}` to a
/// weak pullback of their images.
pub fn check_weakly_preserves_constant_pullbacks(
    f: &dyn Functor,
    x1: &FinSet,
    x2: &FinSet,
    y: &FinSet,
    y1: &Elem,
    y2: &Elem,
) -> Result<PreservationVerdict> {
    if x1.is_empty() || x2.is_empty() {
        return Err(Error::Precondition("X₁ and X₂ must be nonempty".into()));
    }
    let c1 = FinMap::constant(x1, y, y1)?;
    let c2 = FinMap::constant(x2, y, y2)?;
    let pb = pullback(&c1, &c2)?;
    let fp1 = f.on_morphism(&pb.left)?;
    let fp2 = f.on_morphism(&pb.right)?;
    let image_pb = pullback(&f.on_morphism(&c1)?, &f.on_morphism(&c2)?)?;
    PreservationVerdict::of(&tupling(&fp1, &fp2, &image_pb)?)
}

fn verdict_of(ok: bool) -> Verdict {
    if ok {
        Verdict::Holds
    } else {
        Verdict::Fails
    }
}

/// First failure of product preservation over all `|A_i| <= max_size`.
pub fn product_sweep(f: &dyn Functor, min_size: usize, max_size: usize) -> Result<Option<String>> {
    for i in min_size..=max_size {
        for j in min_size..=max_size {
            let (a1, a2) = (FinSet::standard(i), FinSet::standard(j));
            if let PreservationVerdict::NotPreserved { unhit } = check_weakly_preserves_product(f, &a1, &a2)? {
                return Ok(Some(format!("A₁ = {a1}, A₂ = {a2}: δ misses {unhit}")));
            }
        }
    }
    Ok(None)
}

/// First failure of constant-pullback preservation over nonempty
/// `|X_i| <= max_size`, `Y = {0,1}` and all `y1, y2`.
pub fn constant_pullback_sweep(f: &dyn Functor, max_size: usize) -> Result<Option<String>> {
    let y = FinSet::standard(2);
    for i in 1..=max_size {
        for j in 1..=max_size {
            let (x1, x2) = (FinSet::standard(i), FinSet::standard(j));
            for y1 in y.iter() {
                for y2 in y.iter() {
                    if let PreservationVerdict::NotPreserved { unhit } =
                        check_weakly_preserves_constant_pullbacks(f, &x1, &x2, &y, y1, y2)?
                    {
                        return Ok(Some(format!(
                            "X₁ = {x1}, X₂ = {x2}, y1 = {y1}, y2 = {y2}: mediator misses {unhit}"
                        )));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Runs `split_product` on every `(p, q)` for nonempty `|A_i| <= max_size`.
/// Returns the number of splits and the first failure.
pub fn split_sweep(m: &dyn Monad, max_size: usize) -> Result<(usize, Option<String>)> {
    let mut count = 0;
    for i in 1..=max_size {
        for j in 1..=max_size {
            let (a1, a2) = (FinSet::standard(i), FinSet::standard(j));
            let splitter = Splitter::new(m, &a1, &a2)?;
            let fa1 = m.on_object(&a1)?;
            let fa2 = m.on_object(&a2)?;
            for p in fa1.iter() {
                for q in fa2.iter() {
                    if let Err(e) = splitter.split(p, q) {
                        return Ok((count, Some(format!("A₁ = {a1}, A₂ = {a2}, p = {p}, q = {q}: {e}"))));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok((count, None))
}

/// Both sides of "δ is always surjective iff F(1) ≅ 1" over all
/// `|A_i| <= max_size`, plus the splitting when a monad is supplied.
pub fn verify_main_theorem(f: &dyn Functor, monad: Option<&dyn Monad>, max_size: usize) -> Report {
    let mut report = Report::new(f.name()).under_bound(f.finiteness().bound());
    if let Err(e) = main_theorem_into(&mut report, f, monad, max_size) {
        report.error(&e);
    }
    report
}

fn main_theorem_into(report: &mut Report, f: &dyn Functor, monad: Option<&dyn Monad>, max_size: usize) -> Result<()> {
    let conn = is_connected(f)?;
    let failure = product_sweep(f, 0, max_size)?;
    let preserved = failure.is_none();
    let conn_verdict = match &conn {
        Connectedness::Connected(_) => Verdict::Holds,
        Connectedness::UnknownUnderBound(_) => Verdict::UnknownUnderBound,
        _ => Verdict::Fails,
    };
    let conn_witness = match &conn {
        Connectedness::NotConnected(a, b) => Some(format!("F(1) ∋ {a}, {b}")),
        Connectedness::Empty => Some("F(1) = ∅".to_string()),
        _ => None,
    };
    report.record("F(1) ≅ 1", conn_verdict, Expect::Any, conn_witness);
    report.record(
        format!("δ surjective for all |A_i| ≤ {max_size}"),
        verdict_of(preserved),
        Expect::Any,
        failure.clone(),
    );
    // Only a monad is covered by the theorem; for bare functors the
    // biconditional is informative.
    let expect = if monad.is_some() { Expect::Holds } else { Expect::Any };
    match conn {
        Connectedness::Connected(_) => {
            report.outcome("connected ⟹ products weakly preserved", expect, failure);
        }
        Connectedness::NotConnected(..) => {
            let witness = preserved.then(|| "every δ surjective although F(1) has two elements".to_string());
            report.outcome("products weakly preserved ⟹ connected", expect, witness);
        }
        Connectedness::Empty => {
            let nonempty = (0..=max_size)
                .map(FinSet::standard)
                .find_map(|x| match f.on_object(&x) {
                    Ok(fx) if !fx.is_empty() => Some(format!("F({x}) = {fx}")),
                    _ => None,
                });
            if nonempty.is_some() {
                report.outcome("F(1) = ∅ forces F(X) = ∅", Expect::Holds, nonempty);
            } else {
                report.record(
                    "trivial functor with constant value ∅",
                    Verdict::VacuousPass,
                    Expect::Holds,
                    None,
                );
            }
        }
        Connectedness::UnknownUnderBound(k) => {
            report.record(
                format!("biconditional under bound {k}"),
                Verdict::UnknownUnderBound,
                Expect::Any,
                None,
            );
        }
    }
    if let (Some(m), true) = (monad, is_connected(f)?.is_connected()) {
        let (count, failure) = split_sweep(m, max_size)?;
        report.outcome(
            format!("split_product on all (p,q) ({count} splits)"),
            Expect::Holds,
            failure,
        );
    }
    Ok(())
}

/// The two clauses of the constant-pullback equivalence for a nontrivial
/// functor: (1) no constant and weak product preservation, (2) connected and
/// weak preservation of pullbacks of constant maps.
pub fn verify_theorem_equivalence(f: &dyn Functor, max_size: usize) -> Report {
    let mut report = Report::new(f.name()).under_bound(f.finiteness().bound());
    if let Err(e) = equivalence_into(&mut report, f, max_size) {
        report.error(&e);
    }
    report
}

fn equivalence_into(report: &mut Report, f: &dyn Functor, max_size: usize) -> Result<()> {
    if f.on_object(&FinSet::standard(2))?.is_empty() {
        report.record("nontrivial (F({0,1}) ≠ ∅)", Verdict::VacuousPass, Expect::Any, None);
        return Ok(());
    }
    let constant = has_constant(f)?;
    let products = product_sweep(f, 0, max_size)?;
    let conn = is_connected(f)?;
    let pullbacks = constant_pullback_sweep(f, max_size)?;

    report.record(
        "has no constant",
        verdict_of(constant.is_none()),
        Expect::Any,
        constant.as_ref().map(|e| format!("constant {e}")),
    );
    report.record(
        "weakly preserves products",
        verdict_of(products.is_none()),
        Expect::Any,
        products.clone(),
    );
    report.record(
        "connected",
        verdict_of(conn.is_connected()),
        Expect::Any,
        (!conn.is_connected()).then(|| format!("{conn:?}")),
    );
    report.record(
        "weakly preserves constant pullbacks",
        verdict_of(pullbacks.is_none()),
        Expect::Any,
        pullbacks.clone(),
    );
    let clause1 = constant.is_none() && products.is_none();
    let clause2 = conn.is_connected() && pullbacks.is_none();
    report.record(
        "clause (1)",
        verdict_of(clause1),
        Expect::Any,
        (!clause1).then(|| "see above".into()),
    );
    report.record(
        "clause (2)",
        verdict_of(clause2),
        Expect::Any,
        (!clause2).then(|| "see above".into()),
    );
    report.outcome(
        "(1) ⟺ (2)",
        Expect::Holds,
        (clause1 != clause2).then(|| format!("clause (1) = {clause1}, clause (2) = {clause2}")),
    );
    Ok(())
}

/// Compares the classes of `Ker Fπ₁ ∧ Ker Fπ₂` on `F(A×B)` with
/// `F(A)×F(B)`.
pub fn quotient_iso_check(f: &dyn Functor, a: &FinSet, b: &FinSet) -> Result<Report> {
    let mut report = Report::new(f.name()).under_bound(f.finiteness().bound());
    let p = product(a, b);
    let fp1 = f.on_morphism(&p.left)?;
    let fp2 = f.on_morphism(&p.right)?;
    let classes = kernel_meet_quotient(&fp1, &fp2)?;
    let d = delta_on(f, &p)?;
    let image = d.image();
    let target = fp1.cod().len() * fp2.cod().len();
    report.outcome(
        format!("classes on F({a}×{b}) = |image δ|"),
        Expect::Holds,
        (classes.len() != image.len()).then(|| format!("{} classes, image of size {}", classes.len(), image.len())),
    );
    let expect = match is_connected(f)? {
        Connectedness::Connected(_) => Expect::Holds,
        Connectedness::NotConnected(..) if !a.is_empty() && !b.is_empty() => Expect::Fails,
        _ => Expect::Any,
    };
    report.outcome(
        format!("{} classes = |F(A)|·|F(B)| = {target}", classes.len()),
        expect,
        (classes.len() != target).then(|| match is_surjective(&d) {
            Surjectivity::Misses(u) => format!("{u} is not the image of any class"),
            Surjectivity::Surjective => "class count differs".to_string(),
        }),
    );
    Ok(report)
}
