use super::system::{Grading, Normalizer, ReductionSystem};
use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElem;
use crate::params::{KappaParam, LambdaParam};
use crate::skew::SkewElem;

/// `μ_j(a ⊗ b)`: the coefficient of `t^j` in the normal form of `a·b` in a
/// `t`-graded system. Each pair of monomials must give a result of degree
/// `deg a + deg b − j`, or `deg a + deg b − 2j` after the `t² ↦ t` collapse.
pub fn extract_mu(
    norm: &mut Normalizer<'_>,
    j: u32,
    a: &SkewElem,
    b: &SkewElem,
) -> Result<SkewElem> {
    let sys = norm.system();
    let step = match sys.grading() {
        Grading::Graded => 1,
        Grading::Collapsed => 2,
        Grading::Untwisted => {
            return Err(Error::Precondition(
                "mu extraction needs a t-graded system".into(),
            ))
        }
    };
    if !sys.is_confluent() {
        return Err(Error::NotConfluent);
    }
    if a.max_t().unwrap_or(0) > 0 || b.max_t().unwrap_or(0) > 0 {
        return Err(Error::Precondition("arguments must be t-free".into()));
    }
    let mut out = SkewElem::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let pa = SkewElem::monomial(ma.clone(), ca.field().one());
            let pb = SkewElem::monomial(mb.clone(), cb.field().one());
            let part = norm.multiply(&pa, &pb).t_coefficient(j);
            let expected = i64::from(ma.degree() + mb.degree()) - i64::from(step * j);
            if part.terms().any(|(m, _)| i64::from(m.degree()) != expected) {
                return Err(Error::Homogeneity(format!(
                    "mu_{j} of degrees {} and {} is not of degree {expected}",
                    ma.degree(),
                    mb.degree()
                )));
            }
            out.add_scaled(&part, &(ca * cb));
        }
    }
    Ok(out)
}

fn as_group(x: SkewElem, what: &str) -> Result<GroupAlgebraElem> {
    x.as_group_algebra()
        .ok_or_else(|| Error::Homogeneity(format!("{what} is not in kG")))
}

/// Recovers `λ(g, v) = μ₁(g ⊗ v) − μ₁(^g v ⊗ g)` and
/// `κ(v, w) = μ₂(v ⊗ w) − μ₂(w ⊗ v)` from a graded system. After the
/// `t² ↦ t` collapse `λ` is zero and `κ` sits in `μ₁`.
pub fn params_from_mu(sys: &ReductionSystem) -> Result<(LambdaParam, KappaParam)> {
    let rep = sys.rep();
    let f = rep.field();
    let m = rep.dim();
    let n = rep.group().order();
    let mut norm = Normalizer::new(sys);
    let collapsed = sys.grading() == Grading::Collapsed;
    let mut lambda = LambdaParam::zero(n, m);
    for g in (0..n).filter(|_| !collapsed) {
        let gg = SkewElem::group_elem(m, g, f.one());
        for i in 0..m {
            let v = SkewElem::basis_vector(f, m, i, rep.group().identity());
            let gv = SkewElem::vector(&rep.act_basis(g, i), rep.group().identity());
            let value =
                extract_mu(&mut norm, 1, &gg, &v)?.sub(&extract_mu(&mut norm, 1, &gv, &gg)?);
            lambda.set(g, i, as_group(value, "mu_1(g, v) - mu_1(gv, g)")?);
        }
    }
    let kj = if collapsed { 1 } else { 2 };
    let mut kappa = KappaParam::zero(m);
    for i in 0..m {
        for j in i + 1..m {
            let vi = SkewElem::basis_vector(f, m, i, rep.group().identity());
            let vj = SkewElem::basis_vector(f, m, j, rep.group().identity());
            let value =
                extract_mu(&mut norm, kj, &vi, &vj)?.sub(&extract_mu(&mut norm, kj, &vj, &vi)?);
            kappa.set(i, j, as_group(value, "mu_2(v, w) - mu_2(w, v)")?)?;
        }
    }
    Ok((lambda, kappa))
}
