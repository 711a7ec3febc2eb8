use skewpbw::corpus::{corpus_get, corpus_text, run_example, CORPUS};
use skewpbw::instance::{verify_map, Instance, KappaInput};
use skewpbw::pbw::check_pbw;
use skewpbw::{Error, GroupAlgebraElem};

#[test]
fn every_entry_reproduces_its_verdicts() {
    for entry in CORPUS {
        let report = run_example(entry.name).unwrap();
        for c in &report.checks {
            assert!(
                c.passed(),
                "{}: {} expected {} got {}",
                entry.name,
                c.label,
                c.expected,
                c.actual
            );
        }
        assert!(!report.checks.is_empty());
        assert_eq!(report.digest.len(), 64);
    }
}

#[test]
fn cyclic_p2_matches_the_defining_relations() {
    let inst = corpus_get("cyclic-p2").unwrap();
    let grp = inst.rep.group();
    let g = grp.parse_element("g").unwrap();
    let f = inst.field();
    assert_eq!(grp.order(), 2);
    assert_eq!(
        inst.lambda.get(g, 1),
        &GroupAlgebraElem::term(grp.identity(), f.one())
    );
    assert!(inst.lambda.get(g, 0).is_zero());
    let kappa = inst.plain_kappa().unwrap();
    assert_eq!(kappa.get(0, 1), GroupAlgebraElem::term(g, f.one()));
    assert!(check_pbw(&inst.lambda, kappa, &inst.rep).unwrap().holds());
}

#[test]
fn skew_trivial_has_zero_parameters() {
    let inst = corpus_get("skew-trivial").unwrap();
    assert!(inst.lambda.is_zero());
    assert!(inst.plain_kappa().unwrap().is_zero());
}

#[test]
fn general_kappa_fix_carries_the_map() {
    let inst = corpus_get("general-kappa-fix").unwrap();
    let KappaInput::General(kappa) = &inst.kappa else {
        panic!("expected a general kappa");
    };
    let grp = inst.rep.group();
    let g = grp.parse_element("g").unwrap();
    let value = kappa.get(0, 1);
    let f = inst.field();
    assert_eq!(value.constant, GroupAlgebraElem::term(g, f.one()));
    // -v g^-1 with g^-1 = g and -1 = 1 in F_2
    assert_eq!(value.linear[0], GroupAlgebraElem::term(grp.inv(g), f.one()));
    assert!(value.linear[1].is_zero());
    let report = verify_map(&inst).unwrap();
    assert!(report.is_verified() && report.has_inverse);
}

#[test]
fn wrong_map_is_reported() {
    let text = corpus_text("general-kappa-fix")
        .unwrap()
        .replace("[map]\ng = g\nv = g + v", "[map]\ng = g\nv = v");
    let inst = Instance::parse(&text).unwrap();
    let report = verify_map(&inst).unwrap();
    let failure = report.forward_failure.unwrap();
    assert_eq!(failure.relation, "g w - ^g w g - lambda");
}

#[test]
fn bad_identity_lambda_fails_condition_one_at_the_identity() {
    let inst = corpus_get("bad-identity-lambda").unwrap();
    let report = check_pbw(&inst.lambda, inst.plain_kappa().unwrap(), &inst.rep).unwrap();
    assert_eq!(report.failing()[0], 1);
    let e = inst.rep.group().identity();
    let w = report.condition(1).witness.as_ref().unwrap();
    assert_eq!(w.groups, vec![e, e]);
}

#[test]
fn every_entry_round_trips() {
    for entry in CORPUS {
        let text = corpus_text(entry.name).unwrap();
        let once = Instance::parse(&text).unwrap().render();
        let twice = Instance::parse(&once).unwrap().render();
        assert_eq!(once, twice);
        assert_eq!(once, text);
    }
}

#[test]
fn unknown_entry_lists_names() {
    let err = corpus_get("nope").unwrap_err();
    let Error::UnknownCorpus { available, .. } = err else {
        panic!("unexpected {err:?}");
    };
    for entry in CORPUS {
        assert!(available.contains(entry.name));
    }
}
