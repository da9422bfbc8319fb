use std::collections::BTreeMap;

use weakprod::catalog::custom::{export_tables, load_custom};
use weakprod::catalog::mutant::{IgnoresArgument, WrongMult};
use weakprod::catalog::{
    make_diag_quotient, make_full_powerset, make_identity, make_list, make_maybe, make_nonempty_powerset,
    make_rect_band, make_trivial, Instance, Registry,
};
use weakprod::connected::{
    check_constant_map_preservation, check_decomposition, check_identity_subfunctor_dichotomy, check_yoneda_naturality,
    decompose_connected, has_constant, is_connected, yoneda_iota, Connectedness,
};
use weakprod::functor::{check_functor_laws, Identity};
use weakprod::monad::{check_associativity, check_mult_naturality, check_unit_laws};
use weakprod::{Elem, Expect, FinMap, FinSet, Verdict};

fn e(s: &str) -> Elem {
    s.parse().unwrap()
}

fn set(labels: &[&str]) -> FinSet {
    FinSet::of_atoms(labels.iter().copied())
}

#[test]
fn cardinalities_follow_counting_formulas() {
    let pow = |n: usize| 1usize << n;
    for n in 0..=4usize {
        let x = FinSet::standard(n);
        assert_eq!(make_identity().on_object(&x).unwrap().len(), n);
        assert_eq!(make_maybe().on_object(&x).unwrap().len(), n + 1);
        assert_eq!(make_list(2).unwrap().on_object(&x).unwrap().len(), 1 + n + n * n);
        assert_eq!(
            make_list(3).unwrap().on_object(&x).unwrap().len(),
            1 + n + n * n + n * n * n
        );
        assert_eq!(make_nonempty_powerset().on_object(&x).unwrap().len(), pow(n) - 1);
        assert_eq!(make_full_powerset().on_object(&x).unwrap().len(), pow(n));
        assert_eq!(make_rect_band().on_object(&x).unwrap().len(), n * n);
        let t = if n == 0 { 0 } else { n * n - n + 1 };
        assert_eq!(make_diag_quotient().on_object(&x).unwrap().len(), t);
        assert!(make_trivial().on_object(&x).unwrap().is_empty());
    }
}

#[test]
fn every_catalog_instance_is_lawful() {
    for (entry, instance) in Registry::builtin().iter() {
        let r = check_functor_laws(instance.functor(), 3);
        assert!(r.all_confirmed(), "{}: {r}", entry.name);
        if let Some(m) = instance.monad() {
            for n in 0..=3 {
                let r = check_unit_laws(m, &FinSet::standard(n)).unwrap();
                assert!(r.all_confirmed(), "{}: {r}", entry.name);
            }
        }
    }
}

#[test]
fn mutants_are_rejected_with_witnesses() {
    let r = check_functor_laws(&IgnoresArgument::new(Identity), 2);
    let comp = r.checks.iter().find(|c| c.check.starts_with("composition")).unwrap();
    assert_eq!(comp.verdict, Verdict::Fails);
    assert!(comp.witness.as_deref().unwrap().contains("f = "));

    let r = check_unit_laws(&WrongMult, &FinSet::standard(2)).unwrap();
    let bad = r.first_unexpected().unwrap();
    assert!(bad.witness.is_some());
}

#[test]
fn connectedness_examples() {
    assert_eq!(
        is_connected(make_nonempty_powerset().as_ref()).unwrap(),
        Connectedness::Connected(e("{0}"))
    );
    assert_eq!(
        is_connected(make_maybe().as_ref()).unwrap(),
        Connectedness::NotConnected(e("none()"), e("some(0)"))
    );
    assert!(matches!(
        is_connected(make_list(1).unwrap().as_ref()).unwrap(),
        Connectedness::NotConnected(..)
    ));
    assert!(matches!(
        is_connected(make_full_powerset().as_ref()).unwrap(),
        Connectedness::NotConnected(..)
    ));
    assert_eq!(
        is_connected(make_rect_band().as_ref()).unwrap(),
        Connectedness::Connected(e("(0,0)"))
    );
    assert_eq!(
        is_connected(make_diag_quotient().as_ref()).unwrap(),
        Connectedness::Connected(e("bot()"))
    );
    assert_eq!(is_connected(make_trivial().as_ref()).unwrap(), Connectedness::Empty);
}

#[test]
fn list_decomposes_by_length() {
    let list = make_list(2).unwrap();
    let x = set(&["a", "b"]);
    let comps = decompose_connected(list.as_ref(), &x).unwrap();
    let mut by_len: BTreeMap<usize, Vec<Elem>> = BTreeMap::new();
    for u in list.on_object(&x).unwrap().iter() {
        by_len.entry(u.as_list().unwrap().len()).or_default().push(u.clone());
    }
    let expected: Vec<FinSet> = by_len.into_values().map(FinSet::new).collect();
    let got: Vec<FinSet> = comps.iter().map(|c| c.members.clone()).collect();
    assert_eq!(got, expected);
    assert_eq!(got.iter().map(FinSet::len).collect::<Vec<_>>(), vec![1, 2, 4]);
    assert_eq!(check_decomposition(list.as_ref(), 3).unwrap(), None);
}

#[test]
fn maybe_decomposes_into_none_and_somes() {
    let x = set(&["a", "b", "c"]);
    let comps = decompose_connected(make_maybe().as_ref(), &x).unwrap();
    assert_eq!(comps.len(), 2);
    assert_eq!(comps[0].members, FinSet::new([e("none()")]));
    assert_eq!(
        comps[1].members,
        FinSet::new(["a", "b", "c"].map(|a| e(&format!("some({a})"))))
    );
    let one = decompose_connected(make_nonempty_powerset().as_ref(), &x).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].members, make_nonempty_powerset().on_object(&x).unwrap());
}

#[test]
fn yoneda_transformation_equals_catalog_unit() {
    for (m, tag) in [
        (make_nonempty_powerset(), "{0}"),
        (make_rect_band(), "(0,0)"),
        (make_identity(), "0"),
    ] {
        for n in 1..=3 {
            let x = FinSet::standard(n);
            assert_eq!(
                yoneda_iota(m.as_ref(), &e(tag), &x).unwrap(),
                m.unit(&x).unwrap(),
                "{}",
                m.name()
            );
        }
        assert_eq!(check_yoneda_naturality(m.as_ref(), &e(tag), 3).unwrap(), None);
    }
    let x = set(&["a", "b"]);
    let iota = yoneda_iota(make_rect_band().as_ref(), &e("(0,0)"), &x).unwrap();
    assert_eq!(iota.apply(&e("a")).unwrap(), &e("(a,a)"));
}

#[test]
fn constants() {
    assert_eq!(has_constant(make_diag_quotient().as_ref()).unwrap(), Some(e("bot()")));
    assert_eq!(has_constant(make_nonempty_powerset().as_ref()).unwrap(), None);
    assert_eq!(has_constant(make_maybe().as_ref()).unwrap(), Some(e("none()")));
    assert_eq!(has_constant(make_full_powerset().as_ref()).unwrap(), Some(e("{}")));
    assert_eq!(has_constant(make_rect_band().as_ref()).unwrap(), None);
    assert_eq!(has_constant(make_trivial().as_ref()).unwrap(), None);
}

#[test]
fn list_does_not_preserve_constant_maps() {
    let list = make_list(2).unwrap();
    let x = set(&["a"]);
    let y = set(&["y"]);
    let fc = list.on_morphism(&FinMap::constant(&x, &y, &e("y")).unwrap()).unwrap();
    assert_eq!(fc.apply(&e("[]")).unwrap(), &e("[]"));
    assert_eq!(fc.apply(&e("[a]")).unwrap(), &e("[y]"));
    let r = check_constant_map_preservation(list.as_ref(), &x, &y, &e("y")).unwrap();
    assert_eq!(r.checks[0].verdict, Verdict::Fails);
    assert_eq!(r.checks[0].expected, Expect::Any);
}

#[test]
fn connected_functors_send_constants_to_constants() {
    for f in [
        make_nonempty_powerset() as std::sync::Arc<dyn weakprod::Functor>,
        make_rect_band(),
        make_diag_quotient(),
        make_identity(),
    ] {
        for n in 1..=3 {
            for k in 1..=3 {
                let (x, y) = (FinSet::standard(n), FinSet::standard(k));
                for v in y.iter() {
                    let r = check_constant_map_preservation(f.as_ref(), &x, &y, v).unwrap();
                    assert!(r.all_confirmed(), "{}: {r}", f.name());
                    assert_eq!(r.checks.len(), 2);
                }
            }
        }
    }
}

#[test]
fn identity_subfunctor_dichotomy() {
    let branch = |f: &dyn weakprod::Functor| {
        let r = check_identity_subfunctor_dichotomy(f, 3).unwrap();
        assert!(r.all_confirmed(), "{r}");
        (r.checks[0].verdict, r.checks[1].verdict)
    };
    assert_eq!(
        branch(make_nonempty_powerset().as_ref()),
        (Verdict::Holds, Verdict::Fails)
    );
    assert_eq!(branch(make_rect_band().as_ref()), (Verdict::Holds, Verdict::Fails));
    assert_eq!(branch(make_diag_quotient().as_ref()), (Verdict::Fails, Verdict::Holds));
    assert!(check_identity_subfunctor_dichotomy(make_maybe().as_ref(), 2).is_err());
}

#[test]
fn unit_law_instances() {
    let pow = make_nonempty_powerset();
    let x = set(&["a", "b"]);
    for u in pow.on_object(&x).unwrap().iter() {
        let outer = pow.mult_at(&x, &Elem::set([u.clone()])).unwrap();
        assert_eq!(&outer, u);
        let singletons = Elem::set(u.as_set().unwrap().iter().map(|a| Elem::set([a.clone()])));
        assert_eq!(&pow.mult_at(&x, &singletons).unwrap(), u);
    }
    let rb = make_rect_band();
    for u in rb.on_object(&x).unwrap().iter() {
        assert_eq!(&rb.mult_at(&x, &Elem::pair(u.clone(), u.clone())).unwrap(), u);
    }
    assert_eq!(rb.mult_at(&x, &e("((a,b),(b,a))")).unwrap(), e("(a,a)"));
    let list = make_list(3).unwrap();
    let three = set(&["a", "b", "c"]);
    assert_eq!(list.mult_at(&three, &e("[[a],[b],[c]]")).unwrap(), e("[a,b,c]"));
    assert!(list.mult_at(&three, &e("[[a,b],[c,a]]")).is_err());
}

#[test]
fn multiplication_is_natural_on_examples() {
    let ab = set(&["a", "b"]);
    let two = FinSet::standard(2);
    for f in weakprod::finset::all_maps(&ab, &two) {
        assert!(check_mult_naturality(make_rect_band().as_ref(), &f)
            .unwrap()
            .all_confirmed());
    }
    let one = FinSet::standard(1);
    let bang = FinMap::constant(&ab, &one, &e("0")).unwrap();
    let pow = make_nonempty_powerset();
    assert!(check_mult_naturality(pow.as_ref(), &bang).unwrap().all_confirmed());
    for w in pow.on_object(&pow.on_object(&ab).unwrap()).unwrap().iter() {
        let pushed = pow.map_elem(&pow.on_morphism(&bang).unwrap(), w).unwrap();
        assert_eq!(pow.mult_at(&one, &pushed).unwrap(), e("{0}"));
    }
    assert!(check_mult_naturality(pow.as_ref(), &FinMap::identity(&ab))
        .unwrap()
        .all_confirmed());
}

#[test]
fn associativity_is_informative() {
    for m in [make_nonempty_powerset(), make_identity(), make_rect_band()] {
        let r = check_associativity(m.as_ref(), &FinSet::standard(2)).unwrap();
        assert!(r.checks.iter().all(|c| c.expected == Expect::Any));
        assert!(
            r.checks.iter().all(|c| c.verdict == Verdict::Holds),
            "{}: {r}",
            m.name()
        );
    }
}

#[test]
fn exported_tables_reload_with_matching_flags() {
    let reg = Registry::builtin();
    for name in [
        "identity",
        "maybe",
        "nonempty-powerset",
        "full-powerset",
        "rect-band",
        "diag-quotient",
        "trivial",
    ] {
        let (entry, instance) = reg.get(name).unwrap();
        let doc = export_tables(name, instance, 2).unwrap();
        let (loaded, inst) = load_custom(&doc.to_json()).unwrap();
        assert_eq!(
            (loaded.connected, loaded.has_constant),
            (entry.connected, entry.has_constant),
            "{name}"
        );
        assert_eq!(inst.kind(), instance.kind());
    }
}

#[test]
fn broken_tables_are_rejected() {
    let inst = Instance::Functor(make_diag_quotient());
    let mut doc = export_tables("broken", &inst, 2).unwrap();
    let swap = doc
        .morphisms
        .iter_mut()
        .find(|m| m.dom == "S2" && m.cod == "S2" && m.table[0].1 == e("1") && m.table[1].1 == e("0"))
        .unwrap();
    for row in swap.image.iter_mut() {
        row.1 = e("bot()");
    }
    let err = load_custom(&doc.to_json()).unwrap_err();
    assert!(matches!(err, weakprod::Error::Rejected(_)), "{err}");
    assert!(err.to_string().contains("composition law"));
}

#[test]
fn registry_rejects_false_declarations() {
    let mut reg = Registry::builtin();
    let (entry, instance) = reg.get("rect-band").unwrap().clone();
    let mut lie = entry.clone();
    lie.has_constant = true;
    assert!(reg.register(lie, instance.clone()).is_err());
    let mut lie = entry;
    lie.connected = false;
    assert!(reg.register(lie, instance).is_err());
}
