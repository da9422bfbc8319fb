use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;

use weakprod::catalog::{
    make_diag_quotient, make_full_powerset, make_identity, make_maybe, make_nonempty_powerset, make_rect_band,
    make_trivial,
};
use weakprod::finset::{compose, kernel_meet_quotient, product, right_inverse};
use weakprod::preservation::{
    check_delta_naturality, check_weakly_preserves_constant_pullbacks, check_weakly_preserves_product, delta,
    quotient_iso_check, split_product, verify_main_theorem, verify_theorem_equivalence, PreservationVerdict,
};
use weakprod::{Elem, Error, FinMap, FinSet, Functor, Monad, Verdict};

fn e(s: &str) -> Elem {
    s.parse().unwrap()
}

fn set(labels: &[&str]) -> FinSet {
    FinSet::of_atoms(labels.iter().copied())
}

/// The image of `F(A×B)` in `F(A)×F(B)`, projecting element by element.
fn delta_image(f: &dyn Functor, a: &FinSet, b: &FinSet) -> BTreeSet<(Elem, Elem)> {
    let p = product(a, b);
    f.on_object(&p.apex)
        .unwrap()
        .iter()
        .map(|u| (f.map_elem(&p.left, u).unwrap(), f.map_elem(&p.right, u).unwrap()))
        .collect()
}

fn targets(f: &dyn Functor, a: &FinSet, b: &FinSet) -> BTreeSet<(Elem, Elem)> {
    let fa = f.on_object(a).unwrap();
    let fb = f.on_object(b).unwrap();
    fa.iter()
        .flat_map(|x| fb.iter().map(move |y| (x.clone(), y.clone())))
        .collect()
}

#[test]
fn delta_agrees_with_elementwise_projection() {
    let functors: Vec<Arc<dyn Functor>> = vec![
        make_identity(),
        make_maybe(),
        make_nonempty_powerset(),
        make_full_powerset(),
        make_rect_band(),
        make_diag_quotient(),
        make_trivial(),
    ];
    for f in &functors {
        for i in 0..=3 {
            for j in 0..=3 {
                let (a, b) = (FinSet::standard(i), FinSet::standard(j));
                let image = delta_image(f.as_ref(), &a, &b);
                let d = delta(f.as_ref(), &a, &b).unwrap();
                let hit: BTreeSet<(Elem, Elem)> = d
                    .image()
                    .iter()
                    .map(|t| {
                        let (x, y) = t.as_pair().unwrap();
                        (x.clone(), y.clone())
                    })
                    .collect();
                assert_eq!(hit, image, "{}", f.name());
                let onto = image == targets(f.as_ref(), &a, &b);
                let verdict = check_weakly_preserves_product(f.as_ref(), &a, &b).unwrap();
                assert_eq!(verdict.holds(), onto, "{} at {i}×{j}", f.name());
                if let PreservationVerdict::NotPreserved { unhit } = verdict {
                    let (x, y) = unhit.as_pair().unwrap();
                    assert!(!image.contains(&(x.clone(), y.clone())));
                }
            }
        }
    }
}

#[test]
fn free_semilattice_two_by_two() {
    let pow = make_nonempty_powerset();
    let a = set(&["a", "b"]);
    let d = delta(pow.as_ref(), &a, &a).unwrap();
    assert_eq!(d.dom().len(), 15);
    assert_eq!(d.cod().len(), 9);
    assert_eq!(delta_image(pow.as_ref(), &a, &a).len(), 9);
    let section = right_inverse(&d).unwrap();
    assert_eq!(compose(&d, &section).unwrap(), FinMap::identity(d.cod()));

    let p = product(&a, &a);
    let classes =
        kernel_meet_quotient(&pow.on_morphism(&p.left).unwrap(), &pow.on_morphism(&p.right).unwrap()).unwrap();
    assert_eq!(classes.len(), 9);
    let r = quotient_iso_check(pow.as_ref(), &a, &a).unwrap();
    assert!(r.all_confirmed(), "{r}");
}

#[test]
fn non_connected_monads_miss_specific_pairs() {
    let a = set(&["a"]);
    let b = set(&["b"]);
    let maybe = delta_image(make_maybe().as_ref(), &a, &b);
    assert!(!maybe.contains(&(e("some(a)"), e("none()"))));
    assert!(!check_weakly_preserves_product(make_maybe().as_ref(), &a, &b)
        .unwrap()
        .holds());
    let full = delta_image(make_full_powerset().as_ref(), &a, &b);
    assert!(!full.contains(&(e("{a}"), e("{}"))));
}

#[test]
fn rect_band_split() {
    let rb = make_rect_band();
    let a = set(&["a", "b"]);
    let r = split_product(rb.as_ref(), &a, &a, &e("(a,b)"), &e("(b,a)")).unwrap();
    assert_eq!(r.tau.apply(&e("a")).unwrap(), &e("((a,b),(a,a))"));
    assert_eq!(r.tau.apply(&e("b")).unwrap(), &e("((b,b),(b,a))"));
    assert_eq!(r.t, e("((a,b),(b,a))"));
    // projections by hand: F(π_i)((u,v)) = (π_i u, π_i v)
    let (u, v) = r.t.as_pair().unwrap();
    let (u1, u2) = u.as_pair().unwrap();
    let (v1, v2) = v.as_pair().unwrap();
    assert_eq!(Elem::pair(u1.clone(), v1.clone()), e("(a,b)"));
    assert_eq!(Elem::pair(u2.clone(), v2.clone()), e("(b,a)"));

    let xy = set(&["x", "y"]);
    let r = split_product(rb.as_ref(), &a, &xy, &e("(a,b)"), &e("(y,x)")).unwrap();
    assert_eq!(r.t, e("((a,y),(b,x))"));
}

#[test]
fn powerset_split_is_cartesian_product() {
    let pow = make_nonempty_powerset();
    let a = set(&["a", "b"]);
    let b = set(&["x", "y", "z"]);
    for p in pow.on_object(&a).unwrap().iter() {
        for q in pow.on_object(&b).unwrap().iter() {
            let r = split_product(pow.as_ref(), &a, &b, p, q).unwrap();
            let expected = Elem::set(p.as_set().unwrap().iter().flat_map(|x| {
                q.as_set()
                    .unwrap()
                    .iter()
                    .map(move |y| Elem::pair(x.clone(), y.clone()))
            }));
            assert_eq!(r.t, expected);
        }
    }
}

#[test]
fn identity_split_and_preconditions() {
    let a = set(&["a"]);
    let b = set(&["b"]);
    let r = split_product(make_identity().as_ref(), &a, &b, &e("a"), &e("b")).unwrap();
    assert_eq!(r.t, e("(a,b)"));
    assert!(matches!(
        split_product(make_maybe().as_ref(), &a, &b, &e("none()"), &e("none()")),
        Err(Error::NotConnected(_))
    ));
    assert!(split_product(make_identity().as_ref(), &a, &FinSet::empty(), &e("a"), &e("b")).is_err());
    assert!(split_product(make_identity().as_ref(), &a, &b, &e("z"), &e("b")).is_err());
}

#[test]
fn diag_quotient_products_and_pullbacks() {
    let t = make_diag_quotient();
    let x = set(&["p", "q", "r"]);
    let y = set(&["u", "v"]);
    let image = delta_image(t.as_ref(), &x, &y);
    assert_eq!(image, targets(t.as_ref(), &x, &y));
    let prod = product(&x, &y);
    let pre = |u: &str| {
        let u = e(u);
        (
            t.map_elem(&prod.left, &u).unwrap(),
            t.map_elem(&prod.right, &u).unwrap(),
        )
    };
    assert_eq!(pre("((p,u),(q,u))"), (e("(p,q)"), e("bot()")));
    assert_eq!(pre("bot()"), (e("bot()"), e("bot()")));
    for i in 0..=3 {
        for j in 0..=3 {
            assert!(
                check_weakly_preserves_product(t.as_ref(), &FinSet::standard(i), &FinSet::standard(j))
                    .unwrap()
                    .holds()
            );
        }
    }
    let two = FinSet::standard(2);
    for n in 2..=3 {
        let x = FinSet::standard(n);
        let v = check_weakly_preserves_constant_pullbacks(t.as_ref(), &x, &x, &two, &e("0"), &e("1")).unwrap();
        assert!(!v.holds());
        // F(∅) is empty while T(X)×T(X) is not
        assert!(t.f_empty().unwrap().is_empty());
        assert!(!t.on_object(&x).unwrap().is_empty());
    }
}

#[test]
fn constant_pullbacks_for_powerset() {
    let pow = make_nonempty_powerset();
    let two = FinSet::standard(2);
    for n in 1..=3 {
        let x = FinSet::standard(n);
        for (y1, y2) in [("0", "0"), ("0", "1")] {
            let v = check_weakly_preserves_constant_pullbacks(pow.as_ref(), &x, &x, &two, &e(y1), &e(y2)).unwrap();
            assert!(v.holds(), "{y1} {y2}");
        }
    }
}

#[test]
fn delta_naturality_examples() {
    let two = FinSet::standard(2);
    for f in weakprod::finset::all_maps(&two, &two) {
        for g in weakprod::finset::all_maps(&two, &two) {
            assert!(check_delta_naturality(make_nonempty_powerset().as_ref(), &f, &g)
                .unwrap()
                .all_confirmed());
        }
    }
    let c = FinMap::constant(&two, &two, &e("1")).unwrap();
    let id = FinMap::identity(&two);
    assert!(check_delta_naturality(make_maybe().as_ref(), &c, &id)
        .unwrap()
        .all_confirmed());
}

#[test]
fn main_theorem_reports() {
    let pow = make_nonempty_powerset();
    let r = verify_main_theorem(pow.as_ref(), Some(pow.as_ref() as &dyn Monad), 3);
    assert!(r.all_confirmed(), "{r}");
    assert!(r
        .checks
        .iter()
        .any(|c| c.check.starts_with("split_product") && c.verdict == Verdict::Holds));

    let maybe = make_maybe();
    let r = verify_main_theorem(maybe.as_ref(), Some(maybe.as_ref() as &dyn Monad), 3);
    assert!(r.all_confirmed(), "{r}");
    assert!(r
        .checks
        .iter()
        .any(|c| c.verdict == Verdict::Fails && c.witness.is_some()));

    let r = verify_main_theorem(make_trivial().as_ref(), None, 3);
    assert!(r.all_confirmed());
    assert!(r.checks.iter().any(|c| c.verdict == Verdict::VacuousPass));
}

#[test]
fn equivalence_clauses() {
    let clauses = |f: &dyn Functor| {
        let r = verify_theorem_equivalence(f, 3);
        assert!(r.all_confirmed(), "{r}");
        let get = |name: &str| r.find(name).unwrap().verdict;
        (get("clause (1)"), get("clause (2)"))
    };
    assert_eq!(
        clauses(make_nonempty_powerset().as_ref()),
        (Verdict::Holds, Verdict::Holds)
    );
    assert_eq!(clauses(make_diag_quotient().as_ref()), (Verdict::Fails, Verdict::Fails));
    assert_eq!(clauses(make_maybe().as_ref()), (Verdict::Fails, Verdict::Fails));
    assert_eq!(clauses(make_rect_band().as_ref()), (Verdict::Holds, Verdict::Holds));
}

#[test]
fn quotient_class_counts() {
    let id = make_identity();
    let rb = make_rect_band();
    for i in 1..=3 {
        for j in 1..=3 {
            let (a, b) = (FinSet::standard(i), FinSet::standard(j));
            assert!(quotient_iso_check(id.as_ref(), &a, &b).unwrap().all_confirmed());
            assert!(quotient_iso_check(rb.as_ref(), &a, &b).unwrap().all_confirmed());
        }
    }
    let a = FinSet::standard(2);
    let d = delta(rb.as_ref(), &a, &a).unwrap();
    assert_eq!((d.dom().len(), d.cod().len()), (16, 16));
    assert!(d.is_injective());
    // not connected with nonempty factors: fewer classes than targets
    let maybe = make_maybe();
    let r = quotient_iso_check(maybe.as_ref(), &a, &a).unwrap();
    assert!(r.all_confirmed(), "{r}");
}

fn connected_monad(k: usize) -> Arc<dyn Monad> {
    match k {
        0 => make_nonempty_powerset(),
        1 => make_rect_band(),
        _ => make_identity(),
    }
}

proptest! {
    #[test]
    fn splits_project_back(k in 0usize..3, i in 1usize..=3, j in 1usize..=3, pi in 0usize..64, qi in 0usize..64) {
        let m = connected_monad(k);
        let (a1, a2) = (FinSet::standard(i), FinSet::standard(j));
        let fa1 = m.on_object(&a1).unwrap();
        let fa2 = m.on_object(&a2).unwrap();
        let p = &fa1.elems()[pi % fa1.len()];
        let q = &fa2.elems()[qi % fa2.len()];
        let r = split_product(m.as_ref(), &a1, &a2, p, q).unwrap();
        let prod = product(&a1, &a2);
        prop_assert_eq!(&m.map_elem(&prod.left, &r.t).unwrap(), p);
        prop_assert_eq!(&m.map_elem(&prod.right, &r.t).unwrap(), q);
        for (a, ta) in r.tau.iter() {
            prop_assert_eq!(m.map_elem(&prod.left, ta).unwrap(), m.unit_at(&a1, a).unwrap());
            prop_assert_eq!(&m.map_elem(&prod.right, ta).unwrap(), q);
        }
    }

    #[test]
    fn sections_of_surjective_deltas(k in 0usize..3, i in 1usize..=3, j in 1usize..=3) {
        let m = connected_monad(k);
        let (a, b) = (FinSet::standard(i), FinSet::standard(j));
        let d = delta(m.as_ref(), &a, &b).unwrap();
        let PreservationVerdict::Preserved { section } = check_weakly_preserves_product(m.as_ref(), &a, &b).unwrap() else {
            panic!("connected monad must preserve products");
        };
        prop_assert_eq!(compose(&d, &section).unwrap(), FinMap::identity(d.cod()));
    }
}
