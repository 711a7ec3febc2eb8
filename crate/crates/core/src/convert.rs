//! Trading `λ` for `κ` when the characteristic does not divide `|G|`.

use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElem;
use crate::params::{GeneralKappa, KappaParam, LambdaParam};
use crate::pbw::{check_pbw, default_basis_names};
use crate::representation::Representation;
use crate::rewrite::{
    apply_to_normal, source_relations, verify_homomorphism, Grading, HomFailure, HomImages,
    Normalizer, ReductionSystem,
};
use crate::scalar::Scalar;
use crate::skew::SkewElem;

/// `γ(v_i) ∈ kG` for every basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaMap {
    values: Vec<GroupAlgebraElem>,
}

impl GammaMap {
    pub fn get(&self, i: usize) -> &GroupAlgebraElem {
        &self.values[i]
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(GroupAlgebraElem::is_zero)
    }

    /// `γ(v)` for a coordinate vector.
    pub fn eval(&self, v: &[Scalar]) -> GroupAlgebraElem {
        let mut out = GroupAlgebraElem::zero();
        for (x, c) in self.values.iter().zip(v) {
            out = out.add(&x.scale(c));
        }
        out
    }
}

/// `γ_a(v) = (1/|G|) Σ_b λ_{ab}(b, ^{b⁻¹} v)`.
pub fn gamma(lambda: &LambdaParam, rep: &Representation) -> Result<GammaMap> {
    lambda.check_against(rep)?;
    let grp = rep.group();
    let field = rep.field();
    let n = grp.order();
    let p = field.characteristic();
    if p != 0 && (n as u64).is_multiple_of(p) {
        return Err(Error::Modular {
            characteristic: p,
            order: n,
        });
    }
    let inv_order = field.from_i64(n as i64).inv()?;
    let mut values = Vec::with_capacity(rep.dim());
    for i in 0..rep.dim() {
        let mut out = GroupAlgebraElem::zero();
        for b in 0..n {
            let moved = rep.act_basis(grp.inv(b), i);
            // λ(b, ^{b⁻¹}v) = Σ_h λ_h h; the term at h = ab contributes to a = h b⁻¹
            for (h, c) in lambda.eval(b, &moved).terms() {
                out.add_term(grp.mul(h, grp.inv(b)), c * &inv_order);
            }
        }
        values.push(out);
    }
    Ok(GammaMap { values })
}

/// `κ(u,v) = γ(u)γ(v) − γ(v)γ(u) + λ(γ(u),v) − λ(γ(v),u)` on basis pairs.
pub fn kappa_from_gamma(
    lambda: &LambdaParam,
    gamma: &GammaMap,
    rep: &Representation,
) -> Result<KappaParam> {
    let grp = rep.group();
    let m = rep.dim();
    let unit = |i: usize| crate::matrix::unit_vector(rep.field(), m, i);
    let mut kappa = KappaParam::zero(m);
    for i in 0..m {
        for j in i + 1..m {
            let (gu, gv) = (gamma.get(i), gamma.get(j));
            let value = gu
                .mul(gv, grp)
                .sub(&gv.mul(gu, grp))
                .add(&lambda.eval_ga(gu, &unit(j)))
                .sub(&lambda.eval_ga(gv, &unit(i)));
            kappa.set(i, j, value)?;
        }
    }
    Ok(kappa)
}

/// `f: H_{0,κ} → H_{λ,0}` with `f(v) = v + γ(v)` and its inverse
/// `v ↦ v − γ(v)`, each checked against every defining relation.
#[derive(Clone, Debug)]
pub struct ConversionIso {
    pub gamma: GammaMap,
    pub kappa: KappaParam,
    pub forward: HomImages,
    pub inverse: HomImages,
    pub forward_failure: Option<HomFailure>,
    pub inverse_failure: Option<HomFailure>,
    /// Generators (labelled) on which a composite is not the identity.
    pub composite_failures: Vec<String>,
}

impl ConversionIso {
    pub fn is_verified(&self) -> bool {
        self.forward_failure.is_none()
            && self.inverse_failure.is_none()
            && self.composite_failures.is_empty()
    }
}

fn images(rep: &Representation, gamma: &GammaMap, sign: &Scalar) -> HomImages {
    let field = rep.field();
    let m = rep.dim();
    HomImages {
        groups: (0..rep.group().order())
            .map(|g| SkewElem::group_elem(m, g, field.one()))
            .collect(),
        vectors: (0..m)
            .map(|i| {
                SkewElem::basis_vector(field, m, i, rep.group().identity())
                    .add(&SkewElem::from_group_algebra(gamma.get(i), m).scale(sign))
            })
            .collect(),
    }
}

pub fn build_conversion_iso(lambda: &LambdaParam, rep: &Representation) -> Result<ConversionIso> {
    let gamma = gamma(lambda, rep)?;
    let m = rep.dim();
    let zero_kappa = KappaParam::zero(m);
    if !check_pbw(lambda, &zero_kappa, rep)?.holds() {
        return Err(Error::Precondition(
            "H_{lambda,0} does not have the PBW property".into(),
        ));
    }
    let kappa = kappa_from_gamma(lambda, &gamma, rep)?;
    let zero_lambda = LambdaParam::zero(rep.group().order(), m);
    let deformed = ReductionSystem::from_plain(rep, lambda, &zero_kappa, Grading::Untwisted)?;
    let plain = ReductionSystem::from_plain(rep, &zero_lambda, &kappa, Grading::Untwisted)?;
    if !plain.is_confluent() {
        return Err(Error::Precondition(
            "H_{0,kappa} does not have the PBW property".into(),
        ));
    }
    let basis = default_basis_names(m);
    let one = rep.field().one();
    let forward = images(rep, &gamma, &one);
    let inverse = images(rep, &gamma, &-&one);
    let plain_relations =
        source_relations(rep, &zero_lambda, &GeneralKappa::from_kappa(&kappa), &basis);
    let deformed_relations = source_relations(rep, lambda, &GeneralKappa::zero(m), &basis);
    let forward_failure = verify_homomorphism(&forward, &plain_relations, &deformed)?;
    let inverse_failure = verify_homomorphism(&inverse, &deformed_relations, &plain)?;

    let mut composite_failures = Vec::new();
    let mut into_deformed = Normalizer::new(&deformed);
    let mut into_plain = Normalizer::new(&plain);
    let generators: Vec<(String, SkewElem)> = (0..m)
        .map(|i| {
            (
                basis[i].clone(),
                SkewElem::basis_vector(rep.field(), m, i, rep.group().identity()),
            )
        })
        .chain(rep.group().generators().iter().map(|&g| {
            (
                rep.group().name(g).to_string(),
                SkewElem::group_elem(m, g, one.clone()),
            )
        }))
        .collect();
    for (label, x) in &generators {
        // f(f⁻¹(x)) computed in H_{λ,0}, f⁻¹(f(x)) in H_{0,κ}
        let back = apply_to_normal(
            &mut into_deformed,
            &forward,
            &apply_to_normal(&mut into_plain, &inverse, x),
        );
        if &back != x {
            composite_failures.push(format!("f(f^-1({label}))"));
        }
        let back = apply_to_normal(
            &mut into_plain,
            &inverse,
            &apply_to_normal(&mut into_deformed, &forward, x),
        );
        if &back != x {
            composite_failures.push(format!("f^-1(f({label}))"));
        }
    }
    Ok(ConversionIso {
        gamma,
        kappa,
        forward,
        inverse,
        forward_failure,
        inverse_failure,
        composite_failures,
    })
}
