use skewpbw::params::{GeneralKappa, GeneralValue, KappaParam, LambdaParam};
use skewpbw::pbw::check_pbw;
use skewpbw::rewrite::{
    extract_mu, filtered_dimensions, graded_dimension, iso_search, overlap_words, params_from_mu,
    plain_kappa_sources, resolve_ambiguities, source_relations, verify_homomorphism, FreeElem,
    Grading, HomImages, Letter, Normalizer, ReductionSystem, SourceAlgebra,
};
use skewpbw::{
    close_generators, Field, GroupAlgebraElem, Matrix, Representation, SkewElem, SkewMonomial,
};

fn cyclic(p: u64) -> (Representation, LambdaParam, KappaParam) {
    let f = Field::prime(p).unwrap();
    let rep = close_generators(&[Matrix::from_i64(f, &[&[1, 1], &[0, 1]])], &["g"], 64).unwrap();
    let grp = rep.group();
    let g = grp.parse_element("g").unwrap();
    let mut lambda = LambdaParam::zero(grp.order(), 2);
    for i in 0..p as i64 {
        lambda.set(
            grp.pow(g, i),
            1,
            GroupAlgebraElem::term(grp.pow(g, i - 1), f.from_i64(i)),
        );
    }
    let mut kappa = KappaParam::zero(2);
    kappa.set(0, 1, GroupAlgebraElem::term(g, f.one())).unwrap();
    (rep, lambda, kappa)
}

fn names() -> Vec<String> {
    vec!["v".into(), "w".into()]
}

fn render(x: &SkewElem, rep: &Representation) -> String {
    x.render(&names(), rep.group())
}

#[test]
fn cyclic_p2_rule_examples() {
    let (rep, lambda, kappa) = cyclic(2);
    let sys = ReductionSystem::from_plain(&rep, &lambda, &kappa, Grading::Untwisted).unwrap();
    let g = rep.group().parse_element("g").unwrap() as u16;
    let one = rep.field().one();
    let gw = sys.normal_form(&FreeElem::word(
        vec![Letter::G(g), Letter::V(1)],
        one.clone(),
    ));
    let expected = {
        let mut x = SkewElem::basis_vector(rep.field(), 2, 1, g as usize);
        x = x.add(&SkewElem::basis_vector(rep.field(), 2, 0, g as usize));
        x.add(&SkewElem::one(rep.field(), 2, rep.group()))
    };
    assert_eq!(gw, expected, "{}", render(&gw, &rep));
    let wv = sys.normal_form(&FreeElem::word(
        vec![Letter::V(1), Letter::V(0)],
        one.clone(),
    ));
    let mut vw = SkewElem::monomial(SkewMonomial::new(0, vec![1, 1], 0), one.clone());
    vw = vw.add(&SkewElem::group_elem(2, g as usize, one.clone()));
    assert_eq!(wv, vw);
    let gg = sys.normal_form(&FreeElem::word(
        vec![Letter::G(g), Letter::G(g)],
        one.clone(),
    ));
    assert_eq!(gg, SkewElem::one(rep.field(), 2, rep.group()));
}

#[test]
fn cyclic_examples_are_confluent() {
    for p in [2, 3, 5] {
        let (rep, lambda, kappa) = cyclic(p);
        let sys = ReductionSystem::from_plain(&rep, &lambda, &kappa, Grading::Untwisted).unwrap();
        let report = resolve_ambiguities(&sys);
        assert_eq!(report.ambiguities.len(), overlap_words(&sys).len());
        assert!(report.is_confluent(), "p={p}");
    }
}

#[test]
fn identity_lambda_breaks_identity_overlap() {
    let (rep, _, _) = cyclic(3);
    let f = rep.field();
    let e = rep.group().identity();
    let mut lambda = LambdaParam::zero(3, 2);
    lambda.set(e, 0, GroupAlgebraElem::term(e, f.one()));
    let sys = ReductionSystem::from_plain(&rep, &lambda, &KappaParam::zero(2), Grading::Untwisted)
        .unwrap();
    let report = resolve_ambiguities(&sys);
    let first = report.first_failure().expect("fails");
    assert_eq!(
        first.word,
        vec![Letter::G(e as u16), Letter::G(e as u16), Letter::V(0)]
    );
    // (ee)v gives v + 1 while e(ev) gives v + 2
    assert_eq!(
        first.difference.as_group_algebra(),
        Some(GroupAlgebraElem::term(e, -&f.one()))
    );
}

#[test]
fn zero_parameters_resolve() {
    let (rep, _, _) = cyclic(5);
    let sys = ReductionSystem::from_plain(
        &rep,
        &LambdaParam::zero(5, 2),
        &KappaParam::zero(2),
        Grading::Untwisted,
    )
    .unwrap();
    assert!(sys.is_confluent());
}

#[test]
fn graded_dimensions_of_cyclic_examples() {
    for p in [2, 3] {
        let (rep, lambda, kappa) = cyclic(p);
        let sys = ReductionSystem::from_plain(&rep, &lambda, &kappa, Grading::Untwisted).unwrap();
        assert_eq!(graded_dimension(&sys, 0).unwrap(), p as usize);
        let dims = filtered_dimensions(&sys, 4).unwrap();
        for n in 1..=4 {
            assert_eq!(dims[n] - dims[n - 1], (n + 1) * p as usize);
        }
    }
}

#[test]
fn non_confluent_instance_loses_dimension() {
    let (rep, _, kappa) = cyclic(3);
    let e = rep.group().identity();
    let mut lambda = LambdaParam::zero(3, 2);
    lambda.set(e, 0, GroupAlgebraElem::term(e, rep.field().one()));
    assert!(!check_pbw(&lambda, &kappa, &rep).unwrap().holds());
    let sys = ReductionSystem::from_plain(&rep, &lambda, &kappa, Grading::Untwisted).unwrap();
    assert!(!sys.is_confluent());
    let dims = filtered_dimensions(&sys, 3).unwrap();
    let pbw: Vec<usize> = (0..=3).map(|n| 3 * (n + 1) * (n + 2) / 2).collect();
    assert!(dims.iter().zip(&pbw).any(|(a, b)| a < b), "{dims:?}");
}

#[test]
fn induced_product_is_associative_on_normal_forms() {
    let (rep, lambda, kappa) = cyclic(3);
    let sys = ReductionSystem::from_plain(&rep, &lambda, &kappa, Grading::Untwisted).unwrap();
    let mut norm = Normalizer::new(&sys);
    let f = rep.field();
    let a = SkewElem::basis_vector(f, 2, 1, 1).add(&SkewElem::group_elem(2, 2, f.from_i64(2)));
    let b = SkewElem::basis_vector(f, 2, 0, 2).add(&SkewElem::basis_vector(f, 2, 1, 0));
    let c = SkewElem::monomial(SkewMonomial::new(0, vec![1, 1], 1), f.one());
    let left = norm.product(&[&a, &b, &c]);
    let ab_c = {
        let ab = norm.multiply(&a, &b);
        norm.multiply(&ab, &c)
    };
    let a_bc = {
        let bc = norm.multiply(&b, &c);
        norm.multiply(&a, &bc)
    };
    assert_eq!(ab_c, a_bc);
    assert_eq!(left, ab_c);
}

#[test]
fn reduction_steps_stay_bounded() {
    let (rep, lambda, kappa) = cyclic(3);
    let sys = ReductionSystem::from_plain(&rep, &lambda, &kappa, Grading::Untwisted).unwrap();
    let mut norm = Normalizer::new(&sys);
    let word = vec![
        Letter::V(1),
        Letter::G(1),
        Letter::V(1),
        Letter::V(0),
        Letter::G(2),
        Letter::V(0),
    ];
    norm.normal_form_word(&word);
    // distinct words reachable of length <= 6 over 5 letters
    assert!(norm.steps() < 5u64.pow(6));
}

#[test]
fn mu_maps_recover_parameters() {
    for p in [2, 3] {
        let (rep, lambda, kappa) = cyclic(p);
        let sys = ReductionSystem::from_plain(&rep, &lambda, &kappa, Grading::Graded).unwrap();
        let (l2, k2) = params_from_mu(&sys).unwrap();
        assert_eq!(l2, lambda);
        assert_eq!(k2, kappa);
        let f = rep.field();
        let mut norm = Normalizer::new(&sys);
        let v = SkewElem::basis_vector(f, 2, 0, 0);
        let w = SkewElem::basis_vector(f, 2, 1, 0);
        assert!(extract_mu(&mut norm, 1, &v, &w).unwrap().is_zero());
        assert!(extract_mu(&mut norm, 1, &w, &v).unwrap().is_zero());
    }
}

#[test]
fn collapsed_grading_needs_zero_lambda() {
    let (rep, lambda, kappa) = cyclic(2);
    assert!(ReductionSystem::from_plain(&rep, &lambda, &kappa, Grading::Collapsed).is_err());
}

fn general_fix_target(rep: &Representation) -> ReductionSystem {
    let f = rep.field();
    let g = rep.group().parse_element("g").unwrap();
    let ginv = rep.group().inv(g);
    let mut kappa = GeneralKappa::zero(2);
    let mut value = GeneralValue::zero(2);
    value.constant = GroupAlgebraElem::term(g, f.one());
    value.linear[0] = GroupAlgebraElem::term(ginv, -&f.one());
    kappa.set(0, 1, value).unwrap();
    ReductionSystem::new(
        rep,
        &LambdaParam::zero(rep.group().order(), 2),
        &kappa,
        Grading::Untwisted,
    )
    .unwrap()
}

#[test]
fn fix_map_is_a_homomorphism() {
    let (rep, lambda, kappa) = cyclic(2);
    let f = rep.field();
    let g = rep.group().parse_element("g").unwrap();
    let ginv = rep.group().inv(g);
    let target = general_fix_target(&rep);
    assert!(target.is_confluent());
    let relations = source_relations(&rep, &lambda, &GeneralKappa::from_kappa(&kappa), &names());
    let mut norm = Normalizer::new(&target);
    let fv = SkewElem::basis_vector(f, 2, 0, 0).sub(&SkewElem::group_elem(2, ginv, f.one()));
    let images = HomImages::from_generators(
        &target,
        &mut norm,
        &[SkewElem::group_elem(2, g, f.one())],
        vec![fv, SkewElem::basis_vector(f, 2, 1, 0)],
    );
    assert_eq!(
        verify_homomorphism(&images, &relations, &target).unwrap(),
        None
    );
}

#[test]
fn identity_into_deformed_algebra_fails_on_gw() {
    let (rep, lambda, kappa) = cyclic(2);
    let f = rep.field();
    let target = ReductionSystem::from_plain(&rep, &lambda, &kappa, Grading::Untwisted).unwrap();
    let relations = source_relations(
        &rep,
        &LambdaParam::zero(2, 2),
        &GeneralKappa::zero(2),
        &names(),
    );
    let images = HomImages {
        groups: (0..2)
            .map(|h| SkewElem::group_elem(2, h, f.one()))
            .collect(),
        vectors: (0..2).map(|i| SkewElem::basis_vector(f, 2, i, 0)).collect(),
    };
    let failure = verify_homomorphism(&images, &relations, &target)
        .unwrap()
        .unwrap();
    assert_eq!(failure.relation, "g w - ^g w g - lambda");
    // both sides share ^g w = v + w, so only lambda(g, w) = 1 survives
    assert_eq!(failure.residual, SkewElem::one(f, 2, rep.group()));
}

#[test]
fn modular_counterexample_has_no_isomorphism() {
    let (rep, lambda, kappa) = cyclic(2);
    let target = ReductionSystem::from_plain(&rep, &lambda, &kappa, Grading::Untwisted).unwrap();
    let sources = plain_kappa_sources(&rep).unwrap();
    assert_eq!(sources.len(), 4);
    let result = iso_search(&target, &sources).unwrap();
    assert_eq!(result.candidates, 65_536);
    assert!(result.found.is_empty());
}

#[test]
fn search_finds_identity_and_fix_map() {
    let (rep, lambda, kappa) = cyclic(2);
    let f = rep.field();
    let trivial = ReductionSystem::from_plain(
        &rep,
        &LambdaParam::zero(2, 2),
        &KappaParam::zero(2),
        Grading::Untwisted,
    )
    .unwrap();
    let zero_source = SourceAlgebra {
        label: "H_{0,0}".into(),
        lambda: LambdaParam::zero(2, 2),
        kappa: GeneralKappa::zero(2),
    };
    let found = iso_search(&trivial, &[zero_source]).unwrap().found;
    let g = rep.group().parse_element("g").unwrap();
    let v = SkewElem::basis_vector(f, 2, 0, 0);
    let w = SkewElem::basis_vector(f, 2, 1, 0);
    let gimg = SkewElem::group_elem(2, g, f.one());
    assert!(found
        .iter()
        .any(|x| x.generator_images == vec![gimg.clone()]
            && x.vector_images == vec![v.clone(), w.clone()]));

    let target = general_fix_target(&rep);
    let source = SourceAlgebra {
        label: "cyclic".into(),
        lambda,
        kappa: GeneralKappa::from_kappa(&kappa),
    };
    let found = iso_search(&target, &[source]).unwrap().found;
    let fv = v.sub(&SkewElem::group_elem(2, rep.group().inv(g), f.one()));
    assert!(found
        .iter()
        .any(|x| x.generator_images == vec![gimg.clone()]
            && x.vector_images == vec![fv.clone(), w.clone()]));
}
