use skewpbw::convert::{build_conversion_iso, gamma, kappa_from_gamma};
use skewpbw::matrix::{vec_add, vec_scale, vec_sub};
use skewpbw::params::{build_lambda_coxeter, KappaParam, LambdaParam};
use skewpbw::pbw::check_pbw;
use skewpbw::{close_generators, Error, Field, GroupAlgebraElem, Matrix, Representation};

fn s3() -> Representation {
    let q = Field::Rationals;
    close_generators(
        &[
            Matrix::from_i64(q, &[&[-1, 1], &[0, 1]]),
            Matrix::from_i64(q, &[&[1, 0], &[1, -1]]),
        ],
        &["s", "t"],
        64,
    )
    .unwrap()
}

fn s3_lambda(rep: &Representation) -> LambdaParam {
    let q = rep.field();
    let s = rep.group().parse_element("s").unwrap();
    let t = rep.group().parse_element("t").unwrap();
    build_lambda_coxeter(
        rep,
        &[s, t],
        &[vec![q.one(), q.zero()], vec![q.zero(), q.one()]],
        &[q.one(), q.one()],
    )
    .unwrap()
}

fn d4() -> (Representation, LambdaParam) {
    let q = Field::Rationals;
    let rep = close_generators(
        &[
            Matrix::from_i64(q, &[&[0, 1], &[1, 0]]),
            Matrix::from_i64(q, &[&[1, 0], &[0, -1]]),
        ],
        &["s", "t"],
        64,
    )
    .unwrap();
    let s = rep.group().parse_element("s").unwrap();
    let t = rep.group().parse_element("t").unwrap();
    let lambda = build_lambda_coxeter(
        &rep,
        &[s, t],
        &[vec![q.one(), q.from_i64(-1)], vec![q.zero(), q.one()]],
        &[q.one(), q.from_i64(2)],
    )
    .unwrap();
    (rep, lambda)
}

/// γ by the literal double sum over (a, b).
fn gamma_oracle(lambda: &LambdaParam, rep: &Representation, i: usize) -> GroupAlgebraElem {
    let grp = rep.group();
    let f = rep.field();
    let n = grp.order();
    let mut out = GroupAlgebraElem::zero();
    for a in 0..n {
        let mut sum = f.zero();
        for b in 0..n {
            let v = rep.act_basis(grp.inv(b), i);
            sum = &sum + &lambda.component(grp.mul(a, b), b, &v, f);
        }
        out.add_term(a, &sum * &f.from_i64(n as i64).inv().unwrap());
    }
    out
}

#[test]
fn gamma_matches_double_sum() {
    let rep = s3();
    let lambda = s3_lambda(&rep);
    let g = gamma(&lambda, &rep).unwrap();
    assert!(!g.is_zero());
    for i in 0..2 {
        assert_eq!(g.get(i), &gamma_oracle(&lambda, &rep, i));
    }
    let (rep, lambda) = d4();
    let g = gamma(&lambda, &rep).unwrap();
    for i in 0..2 {
        assert_eq!(g.get(i), &gamma_oracle(&lambda, &rep, i));
    }
}

#[test]
fn gamma_is_linear() {
    let rep = s3();
    let q = rep.field();
    let g = gamma(&s3_lambda(&rep), &rep).unwrap();
    let u = vec![q.from_i64(3), q.from_ratio(-1, 2).unwrap()];
    let v = vec![q.from_i64(-2), q.from_i64(5)];
    let (a, b) = (q.from_i64(7), q.from_ratio(2, 3).unwrap());
    let combo = vec_add(&vec_scale(&u, &a), &vec_scale(&v, &b));
    assert_eq!(
        g.eval(&combo),
        g.eval(&u).scale(&a).add(&g.eval(&v).scale(&b))
    );
}

#[test]
fn gamma_identity_from_condition_three() {
    let rep = s3();
    let lambda = s3_lambda(&rep);
    let g = gamma(&lambda, &rep).unwrap();
    let q = rep.field();
    for a in 0..rep.group().order() {
        let ga = |i: usize| g.get(i).coeff(a).cloned().unwrap_or_else(|| q.zero());
        let unit = |i: usize| skewpbw::matrix::unit_vector(q, 2, i);
        let lhs = vec_scale(&vec_sub(&unit(0), &rep.act_basis(a, 0)), &ga(1));
        let rhs = vec_scale(&vec_sub(&unit(1), &rep.act_basis(a, 1)), &ga(0));
        assert_eq!(lhs, rhs, "a = {}", rep.group().name(a));
    }
}

#[test]
fn zero_lambda_converts_trivially() {
    let rep = s3();
    let lambda = LambdaParam::zero(6, 2);
    let g = gamma(&lambda, &rep).unwrap();
    assert!(g.is_zero());
    assert!(kappa_from_gamma(&lambda, &g, &rep).unwrap().is_zero());
    let iso = build_conversion_iso(&lambda, &rep).unwrap();
    assert!(iso.is_verified());
    for (i, v) in iso.forward.vectors.iter().enumerate() {
        assert_eq!(
            v,
            &skewpbw::SkewElem::basis_vector(rep.field(), 2, i, rep.group().identity())
        );
    }
}

#[test]
fn modular_gamma_is_refused() {
    let f = Field::prime(2).unwrap();
    let rep = close_generators(&[Matrix::from_i64(f, &[&[1, 1], &[0, 1]])], &["g"], 8).unwrap();
    assert_eq!(
        gamma(&LambdaParam::zero(2, 2), &rep),
        Err(Error::Modular {
            characteristic: 2,
            order: 2
        })
    );
}

#[test]
fn s3_conversion_end_to_end() {
    let rep = s3();
    let lambda = s3_lambda(&rep);
    assert!(check_pbw(&lambda, &KappaParam::zero(2), &rep)
        .unwrap()
        .holds());
    let iso = build_conversion_iso(&lambda, &rep).unwrap();
    assert!(check_pbw(&LambdaParam::zero(6, 2), &iso.kappa, &rep)
        .unwrap()
        .holds());
    assert_eq!(iso.forward_failure, None);
    assert_eq!(iso.inverse_failure, None);
    assert!(iso.composite_failures.is_empty());
    assert!(!iso.kappa.is_zero());
    // alternating by construction
    assert_eq!(iso.kappa.get(1, 0), iso.kappa.get(0, 1).neg());
}

#[test]
fn d4_conversion_end_to_end() {
    let (rep, lambda) = d4();
    assert!(check_pbw(&lambda, &KappaParam::zero(2), &rep)
        .unwrap()
        .holds());
    let iso = build_conversion_iso(&lambda, &rep).unwrap();
    assert!(iso.is_verified(), "{iso:?}");
    assert!(check_pbw(&LambdaParam::zero(8, 2), &iso.kappa, &rep)
        .unwrap()
        .holds());
}

#[test]
fn non_pbw_lambda_is_refused() {
    let rep = s3();
    let e = rep.group().identity();
    let mut lambda = LambdaParam::zero(6, 2);
    lambda.set(e, 0, GroupAlgebraElem::term(e, rep.field().one()));
    assert!(matches!(
        build_conversion_iso(&lambda, &rep),
        Err(Error::Precondition(_))
    ));
}
