use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElem;
use crate::matrix::{vec_is_zero, vec_sub, Vector};
use crate::pbw::condition1;
use crate::representation::{ElementClass, Representation};
use crate::scalar::Scalar;

use super::LambdaParam;

/// Extends `λ` from seed values `λ(s, v_i)` on a generating set.
///
/// Elements are reached breadth-first by right multiplication with the seed
/// elements; along that tree `λ(xs, v) = λ(x, ^s v) s + x λ(s, v)` and
/// `λ(1, ·) = 0`. The result is then checked against
/// `λ(gh, v) = λ(g, ^h v) h + g λ(h, v)` on every pair, since other words
/// for the same element may disagree.
pub fn extend_lambda_by_recursion(
    seed: &BTreeMap<usize, Vec<GroupAlgebraElem>>,
    rep: &Representation,
) -> Result<LambdaParam> {
    let grp = rep.group();
    let n = grp.order();
    let m = rep.dim();
    for (&s, values) in seed {
        if s >= n || values.len() != m {
            return Err(Error::Parameter(format!("bad seed entry for element {s}")));
        }
    }
    let gens: Vec<usize> = seed.keys().copied().collect();
    let mut lambda = LambdaParam::zero(n, m);
    let mut done = vec![false; n];
    done[grp.identity()] = true;
    let mut queue = VecDeque::from([grp.identity()]);
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let y = grp.mul(x, s);
            if done[y] {
                continue;
            }
            done[y] = true;
            for (i, si) in seed[&s].iter().enumerate().take(m) {
                let first = lambda.eval(x, &rep.act_basis(s, i)).right_mul_group(s, grp);
                let second = si.left_mul_group(x, grp);
                lambda.set(y, i, first.add(&second));
            }
            queue.push_back(y);
        }
    }
    if done.iter().any(|d| !d) {
        return Err(Error::Parameter(
            "seed elements do not generate the group".into(),
        ));
    }
    for g in 0..n {
        for h in 0..n {
            for i in 0..m {
                if !condition1(&lambda, rep, g, h, i).is_zero() {
                    return Err(Error::LambdaInconsistent { g, h, v: i });
                }
            }
        }
    }
    Ok(lambda)
}

/// Scalar `μ` with `u = μ α`, if `u` is a multiple of `α ≠ 0`.
fn multiple_of(u: &[Scalar], alpha: &[Scalar]) -> Option<Scalar> {
    let pivot = alpha.iter().position(|x| !x.is_zero())?;
    let mu = u[pivot].checked_div(&alpha[pivot]).ok()?;
    let scaled: Vector = alpha.iter().map(|a| a * &mu).collect();
    vec_is_zero(&vec_sub(u, &scaled)).then_some(mu)
}

/// `λ` for a reflection group from simple reflections `s`, root vectors
/// `α_s` and a class function `c`.
///
/// On each listed `s`, `λ(s, v) = c_s μ · 1` where `v − ^s v = μ α_s`; the
/// remaining values come from [`extend_lambda_by_recursion`].
pub fn build_lambda_coxeter(
    rep: &Representation,
    reflections: &[usize],
    roots: &[Vector],
    c: &[Scalar],
) -> Result<LambdaParam> {
    if reflections.len() != roots.len() || reflections.len() != c.len() {
        return Err(Error::Parameter(
            "one root and one parameter per reflection".into(),
        ));
    }
    let grp = rep.group();
    for (a, &s) in reflections.iter().enumerate() {
        if rep.classify_element(s)? != ElementClass::Reflection {
            return Err(Error::Parameter(format!(
                "{} is not a reflection",
                grp.name(s)
            )));
        }
        let alpha = &roots[a];
        if alpha.len() != rep.dim() || vec_is_zero(alpha) {
            return Err(Error::Parameter(format!(
                "bad root vector for {}",
                grp.name(s)
            )));
        }
        if rep
            .image_of_shift(s)
            .iter()
            .any(|col| multiple_of(col, alpha).is_none())
        {
            return Err(Error::Parameter(format!(
                "root for {} does not span the image of the reflection",
                grp.name(s)
            )));
        }
        for (b, &t) in reflections.iter().enumerate() {
            if grp.class_of(s) == grp.class_of(t) && c[a] != c[b] {
                return Err(Error::Parameter(format!(
                    "parameter is not constant on the class of {}",
                    grp.name(s)
                )));
            }
        }
    }
    let identity = grp.identity();
    let mut seed = BTreeMap::new();
    for (a, &s) in reflections.iter().enumerate() {
        let mut values = Vec::with_capacity(rep.dim());
        for i in 0..rep.dim() {
            let mut v = vec![rep.field().zero(); rep.dim()];
            v[i] = rep.field().one();
            let diff = vec_sub(&v, &rep.act_basis(s, i));
            let mu = multiple_of(&diff, &roots[a]).expect("checked above");
            values.push(GroupAlgebraElem::term(identity, &c[a] * &mu));
        }
        seed.insert(s, values);
    }
    extend_lambda_by_recursion(&seed, rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::params::KappaParam;
    use crate::pbw::check_pbw;
    use crate::representation::close_generators;
    use crate::scalar::Field;

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

    fn s3_lambda(rep: &Representation, c: i64, scale: i64) -> LambdaParam {
        let q = rep.field();
        let s = rep.group().parse_element("s").unwrap();
        let t = rep.group().parse_element("t").unwrap();
        build_lambda_coxeter(
            rep,
            &[s, t],
            &[
                vec![q.from_i64(scale), q.zero()],
                vec![q.zero(), q.from_i64(scale)],
            ],
            &[q.from_i64(c), q.from_i64(c)],
        )
        .unwrap()
    }

    #[test]
    fn s3_coxeter_values() {
        let rep = s3();
        let q = rep.field();
        let lambda = s3_lambda(&rep, 1, 1);
        let s = rep.group().parse_element("s").unwrap();
        let e = rep.group().identity();
        // α_s = v_1 and ^s α_s = −α_s
        assert_eq!(lambda.get(s, 0), &GroupAlgebraElem::term(e, q.from_i64(2)));
        // v_1 + 2 v_2 is fixed by s
        let fixed = vec![q.from_i64(1), q.from_i64(2)];
        assert_eq!(rep.act(s, &fixed), fixed);
        assert!(lambda.eval(s, &fixed).is_zero());
        assert!(check_pbw(&lambda, &KappaParam::zero(2), &rep)
            .unwrap()
            .holds());
        for v in 0..2 {
            assert!(lambda.get(e, v).is_zero());
        }
    }

    #[test]
    fn zero_class_function_gives_zero() {
        let rep = s3();
        assert!(s3_lambda(&rep, 0, 1).is_zero());
    }

    #[test]
    fn doubling_root_halves_lambda() {
        let rep = s3();
        let a = s3_lambda(&rep, 1, 1);
        let b = s3_lambda(&rep, 1, 2);
        let s = rep.group().parse_element("s").unwrap();
        let half = rep.field().from_ratio(1, 2).unwrap();
        for i in 0..2 {
            assert_eq!(b.get(s, i), &a.get(s, i).scale(&half));
        }
    }

    #[test]
    fn rejects_non_reflection_and_bad_class_function() {
        let rep = s3();
        let q = rep.field();
        let st = rep.group().parse_element("s.t").unwrap();
        let err = build_lambda_coxeter(&rep, &[st], &[vec![q.one(), q.zero()]], &[q.one()]);
        assert!(matches!(err, Err(Error::Parameter(_))));
        let s = rep.group().parse_element("s").unwrap();
        let t = rep.group().parse_element("t").unwrap();
        let err = build_lambda_coxeter(
            &rep,
            &[s, t],
            &[vec![q.one(), q.zero()], vec![q.zero(), q.one()]],
            &[q.one(), q.from_i64(2)],
        );
        assert!(matches!(err, Err(Error::Parameter(_))));
        let err = build_lambda_coxeter(&rep, &[s], &[vec![q.zero(), q.one()]], &[q.one()]);
        assert!(matches!(err, Err(Error::Parameter(_))));
    }

    #[test]
    fn inconsistent_seed_is_detected() {
        // Z/2 acting trivially on Q^2: λ(g,v) = 1 forces λ(1,v) = 2g on (g, g)
        let q = Field::Rationals;
        let grp = crate::group::FiniteGroup::cyclic(2, "g");
        let rep = Representation::new(grp, q, 2, vec![Matrix::identity(q, 2); 2]).unwrap();
        let g = rep.group().parse_element("g").unwrap();
        let e = rep.group().identity();
        let seed = BTreeMap::from([(
            g,
            vec![GroupAlgebraElem::term(e, q.one()), GroupAlgebraElem::zero()],
        )]);
        let err = extend_lambda_by_recursion(&seed, &rep).unwrap_err();
        assert_eq!(err, Error::LambdaInconsistent { g, h: g, v: 0 });
    }

    #[test]
    fn recursion_reproduces_cyclic_example() {
        for p in [2u64, 3, 5] {
            let f = Field::prime(p).unwrap();
            let rep =
                close_generators(&[Matrix::from_i64(f, &[&[1, 1], &[0, 1]])], &["g"], 8).unwrap();
            let grp = rep.group();
            let g = grp.parse_element("g").unwrap();
            let seed = BTreeMap::from([(
                g,
                vec![
                    GroupAlgebraElem::zero(),
                    GroupAlgebraElem::term(grp.identity(), f.one()),
                ],
            )]);
            let lambda = extend_lambda_by_recursion(&seed, &rep).unwrap();
            for i in 0..p as i64 {
                let gi = grp.pow(g, i);
                assert!(lambda.get(gi, 0).is_zero());
                let expect = GroupAlgebraElem::term(grp.pow(g, i - 1), f.from_i64(i));
                assert_eq!(lambda.get(gi, 1), &expect, "p={p} i={i}");
            }
        }
    }
}
