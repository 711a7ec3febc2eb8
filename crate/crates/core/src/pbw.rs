//! The five combinatorial conditions characterizing the PBW property of
//! `H_{λ,κ}`, evaluated on basis tuples.

use std::fmt;

use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElem;
use crate::matrix::{unit_vector, vec_is_zero, vec_sub, Vector};
use crate::params::{KappaParam, LambdaParam};
use crate::representation::Representation;

/// What a condition evaluates to on one tuple; zero means it holds there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    Group(GroupAlgebraElem),
    Vector(Vector),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Group(x) => x.is_zero(),
            Residual::Vector(v) => vec_is_zero(v),
        }
    }

    pub fn render(&self, rep: &Representation) -> String {
        match self {
            Residual::Group(x) => crate::skew::SkewElem::from_group_algebra(x, rep.dim())
                .render(&default_basis_names(rep.dim()), rep.group()),
            Residual::Vector(v) => {
                let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
                format!("({})", parts.join(", "))
            }
        }
    }
}

pub(crate) fn default_basis_names(dim: usize) -> Vec<String> {
    match dim {
        2 => vec!["v".into(), "w".into()],
        3 => vec!["u".into(), "v".into(), "w".into()],
        _ => (1..=dim).map(|i| format!("v{i}")).collect(),
    }
}

/// The first failing tuple of a condition: group elements, basis indices and
/// the nonzero residual there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub groups: Vec<usize>,
    pub basis: Vec<usize>,
    pub residual: Residual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionStatus {
    pub id: u8,
    pub checked: usize,
    pub failures: usize,
    pub witness: Option<Witness>,
}

impl ConditionStatus {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub conditions: Vec<ConditionStatus>,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.conditions.iter().all(ConditionStatus::holds)
    }

    pub fn condition(&self, id: u8) -> &ConditionStatus {
        &self.conditions[usize::from(id) - 1]
    }

    pub fn failing(&self) -> Vec<u8> {
        self.conditions
            .iter()
            .filter(|c| !c.holds())
            .map(|c| c.id)
            .collect()
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.conditions {
            let status = if c.holds() { "pass" } else { "FAIL" };
            writeln!(
                f,
                "condition {}: {} ({} tuples, {} failures)",
                c.id, status, c.checked, c.failures
            )?;
        }
        Ok(())
    }
}

fn e(rep: &Representation, i: usize) -> Vector {
    unit_vector(rep.field(), rep.dim(), i)
}

/// `λ(gh, v_i) − λ(g, ^h v_i) h − g λ(h, v_i)`.
pub fn condition1(
    lambda: &LambdaParam,
    rep: &Representation,
    g: usize,
    h: usize,
    i: usize,
) -> GroupAlgebraElem {
    let grp = rep.group();
    let lhs = lambda.get(grp.mul(g, h), i).clone();
    let first = lambda.eval(g, &rep.act_basis(h, i)).right_mul_group(h, grp);
    let second = lambda.get(h, i).left_mul_group(g, grp);
    lhs.sub(&first).sub(&second)
}

/// `κ(^g u, ^g v) g − g κ(u, v) − λ(λ(g, v), u) + λ(λ(g, u), v)` for
/// `u = v_i`, `v = v_j`.
pub fn condition2(
    lambda: &LambdaParam,
    kappa: &KappaParam,
    rep: &Representation,
    g: usize,
    i: usize,
    j: usize,
) -> GroupAlgebraElem {
    let grp = rep.group();
    let (u, v) = (e(rep, i), e(rep, j));
    let left = kappa
        .eval(&rep.act_basis(g, i), &rep.act_basis(g, j))
        .right_mul_group(g, grp);
    let mid = kappa.get(i, j).left_mul_group(g, grp);
    let a = lambda.eval_ga(lambda.get(g, j), &u);
    let b = lambda.eval_ga(lambda.get(g, i), &v);
    left.sub(&mid).sub(&a).add(&b)
}

/// `λ_h(g, v)(^h u − ^g u) − λ_h(g, u)(^h v − ^g v)` for `u = v_i`, `v = v_j`.
pub fn condition3(
    lambda: &LambdaParam,
    rep: &Representation,
    g: usize,
    h: usize,
    i: usize,
    j: usize,
) -> Vector {
    let field = rep.field();
    let zero = field.zero();
    let lv = lambda.get(g, j).coeff(h).unwrap_or(&zero).clone();
    let lu = lambda.get(g, i).coeff(h).unwrap_or(&zero).clone();
    let du = vec_sub(&rep.act_basis(h, i), &rep.act_basis(g, i));
    let dv = vec_sub(&rep.act_basis(h, j), &rep.act_basis(g, j));
    du.iter()
        .zip(&dv)
        .map(|(a, b)| &(&lv * a) - &(&lu * b))
        .collect()
}

/// `κ_g(u,v)(^g w − w) + κ_g(v,w)(^g u − u) + κ_g(w,u)(^g v − v)` for
/// `u = v_i`, `v = v_j`, `w = v_k`.
pub fn condition4(
    kappa: &KappaParam,
    rep: &Representation,
    g: usize,
    i: usize,
    j: usize,
    k: usize,
) -> Vector {
    let field = rep.field();
    let comp = |a: usize, b: usize| {
        kappa
            .get(a, b)
            .coeff(g)
            .cloned()
            .unwrap_or_else(|| field.zero())
    };
    let shift = |a: usize| vec_sub(&rep.act_basis(g, a), &e(rep, a));
    let mut out = vec![field.zero(); rep.dim()];
    for (c, d) in [
        (comp(i, j), shift(k)),
        (comp(j, k), shift(i)),
        (comp(k, i), shift(j)),
    ] {
        for (o, x) in out.iter_mut().zip(&d) {
            *o = &*o + &(&c * x);
        }
    }
    out
}

/// `λ(κ(u,v), w) + λ(κ(v,w), u) + λ(κ(w,u), v)`.
pub fn condition5(
    lambda: &LambdaParam,
    kappa: &KappaParam,
    rep: &Representation,
    i: usize,
    j: usize,
    k: usize,
) -> GroupAlgebraElem {
    lambda
        .eval_ga(&kappa.get(i, j), &e(rep, k))
        .add(&lambda.eval_ga(&kappa.get(j, k), &e(rep, i)))
        .add(&lambda.eval_ga(&kappa.get(k, i), &e(rep, j)))
}

/// Re-evaluates condition `id` on a witness tuple.
pub fn evaluate_condition(
    id: u8,
    groups: &[usize],
    basis: &[usize],
    lambda: &LambdaParam,
    kappa: &KappaParam,
    rep: &Representation,
) -> Result<Residual> {
    let bad = || Error::Precondition(format!("wrong tuple shape for condition {id}"));
    Ok(match (id, groups, basis) {
        (1, &[g, h], &[i]) => Residual::Group(condition1(lambda, rep, g, h, i)),
        (2, &[g], &[i, j]) => Residual::Group(condition2(lambda, kappa, rep, g, i, j)),
        (3, &[g, h], &[i, j]) => Residual::Vector(condition3(lambda, rep, g, h, i, j)),
        (4, &[g], &[i, j, k]) => Residual::Vector(condition4(kappa, rep, g, i, j, k)),
        (5, &[], &[i, j, k]) => Residual::Group(condition5(lambda, kappa, rep, i, j, k)),
        _ => return Err(bad()),
    })
}

struct Tally {
    status: ConditionStatus,
}

impl Tally {
    fn new(id: u8) -> Self {
        Tally {
            status: ConditionStatus {
                id,
                checked: 0,
                failures: 0,
                witness: None,
            },
        }
    }

    fn record(&mut self, groups: &[usize], basis: &[usize], residual: Residual) {
        self.status.checked += 1;
        if !residual.is_zero() {
            self.status.failures += 1;
            if self.status.witness.is_none() {
                self.status.witness = Some(Witness {
                    groups: groups.to_vec(),
                    basis: basis.to_vec(),
                    residual,
                });
            }
        }
    }
}

/// Evaluates all five conditions on every basis tuple. Tuples are visited
/// in lexicographic order of (group elements, basis indices); the witness is
/// the first failure in that order.
pub fn check_pbw(
    lambda: &LambdaParam,
    kappa: &KappaParam,
    rep: &Representation,
) -> Result<ConditionReport> {
    lambda.check_against(rep)?;
    kappa.check_against(rep)?;
    let n = rep.group().order();
    let m = rep.dim();
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let triples: Vec<(usize, usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).flat_map(move |j| (j + 1..m).map(move |k| (i, j, k))))
        .collect();

    let mut t1 = Tally::new(1);
    for g in 0..n {
        for h in 0..n {
            for i in 0..m {
                t1.record(
                    &[g, h],
                    &[i],
                    Residual::Group(condition1(lambda, rep, g, h, i)),
                );
            }
        }
    }
    let mut t2 = Tally::new(2);
    for g in 0..n {
        for &(i, j) in &pairs {
            t2.record(
                &[g],
                &[i, j],
                Residual::Group(condition2(lambda, kappa, rep, g, i, j)),
            );
        }
    }
    let mut t3 = Tally::new(3);
    for g in 0..n {
        for h in 0..n {
            for &(i, j) in &pairs {
                t3.record(
                    &[g, h],
                    &[i, j],
                    Residual::Vector(condition3(lambda, rep, g, h, i, j)),
                );
            }
        }
    }
    let mut t4 = Tally::new(4);
    for g in 0..n {
        for &(i, j, k) in &triples {
            t4.record(
                &[g],
                &[i, j, k],
                Residual::Vector(condition4(kappa, rep, g, i, j, k)),
            );
        }
    }
    let mut t5 = Tally::new(5);
    for &(i, j, k) in &triples {
        t5.record(
            &[],
            &[i, j, k],
            Residual::Group(condition5(lambda, kappa, rep, i, j, k)),
        );
    }
    Ok(ConditionReport {
        conditions: vec![t1.status, t2.status, t3.status, t4.status, t5.status],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::representation::close_generators;
    use crate::scalar::Field;

    fn cyclic(p: u64) -> (Representation, LambdaParam, KappaParam) {
        let f = Field::prime(p).unwrap();
        let rep =
            close_generators(&[Matrix::from_i64(f, &[&[1, 1], &[0, 1]])], &["g"], 64).unwrap();
        let grp = rep.group();
        let g = grp.parse_element("g").unwrap();
        let mut lambda = LambdaParam::zero(grp.order(), 2);
        for i in 0..p as i64 {
            let gi = grp.pow(g, i);
            let gim1 = grp.pow(g, i - 1);
            lambda.set(gi, 1, GroupAlgebraElem::term(gim1, f.from_i64(i)));
        }
        let mut kappa = KappaParam::zero(2);
        kappa.set(0, 1, GroupAlgebraElem::term(g, f.one())).unwrap();
        (rep, lambda, kappa)
    }

    #[test]
    fn cyclic_examples_pass() {
        for p in [2, 3, 5, 7] {
            let (rep, lambda, kappa) = cyclic(p);
            let report = check_pbw(&lambda, &kappa, &rep).unwrap();
            assert!(report.holds(), "p={p}\n{report}");
        }
    }

    #[test]
    fn zero_parameters_pass() {
        let (rep, _, _) = cyclic(3);
        let report = check_pbw(&LambdaParam::zero(3, 2), &KappaParam::zero(2), &rep).unwrap();
        assert!(report.holds());
    }

    #[test]
    fn nonzero_identity_lambda_fails_condition_one() {
        let (rep, mut lambda, kappa) = cyclic(2);
        let f = rep.field();
        let e = rep.group().identity();
        lambda.set(e, 0, GroupAlgebraElem::term(e, f.one()));
        let report = check_pbw(&lambda, &kappa, &rep).unwrap();
        assert!(!report.holds());
        let w = report.condition(1).witness.clone().unwrap();
        assert_eq!(w.groups, vec![e, e]);
        assert_eq!(w.basis, vec![0]);
        let again = evaluate_condition(1, &w.groups, &w.basis, &lambda, &kappa, &rep).unwrap();
        assert!(!again.is_zero());
        assert_eq!(again, w.residual);
    }
}
