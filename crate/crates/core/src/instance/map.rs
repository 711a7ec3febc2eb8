use super::Instance;
use crate::error::{Error, Result};
use crate::params::GeneralKappa;
use crate::rewrite::{
    apply_to_normal, source_relations, verify_homomorphism, Grading, HomFailure, HomImages,
    Normalizer, ReductionSystem,
};
use crate::skew::SkewElem;

/// Outcome of checking an instance's `[map]` (and `[inverse-map]`).
#[derive(Clone, Debug)]
pub struct MapReport {
    pub forward_failure: Option<HomFailure>,
    pub inverse_failure: Option<HomFailure>,
    /// Generators on which a composite is not the identity.
    pub composite_failures: Vec<String>,
    pub has_inverse: bool,
}

impl MapReport {
    pub fn is_verified(&self) -> bool {
        self.forward_failure.is_none()
            && self.inverse_failure.is_none()
            && self.composite_failures.is_empty()
    }
}

/// Checks that the map sends every relation of the source to zero in the
/// instance's algebra, and likewise for the inverse; if both are given,
/// both composites are compared with the identity on generators.
pub fn verify_map(inst: &Instance) -> Result<MapReport> {
    let map = inst
        .map
        .as_ref()
        .ok_or_else(|| Error::Precondition("instance has no [map] section".into()))?;
    let rep = &inst.rep;
    let grp = rep.group();
    let m = rep.dim();
    let target = inst.reduction_system(Grading::Untwisted)?;
    let source = ReductionSystem::from_plain(
        rep,
        &map.source_lambda,
        &map.source_kappa,
        Grading::Untwisted,
    )?;

    let relations = source_relations(
        rep,
        &map.source_lambda,
        &GeneralKappa::from_kappa(&map.source_kappa),
        &inst.basis,
    );
    let mut into_target = Normalizer::new(&target);
    let forward = HomImages::from_generators(
        &target,
        &mut into_target,
        &map.generator_images,
        map.vector_images.clone(),
    );
    let forward_failure = verify_homomorphism(&forward, &relations, &target)?;

    let Some((inv_groups, inv_vectors)) = &map.inverse else {
        return Ok(MapReport {
            forward_failure,
            inverse_failure: None,
            composite_failures: Vec::new(),
            has_inverse: false,
        });
    };
    let target_relations = source_relations(rep, &inst.lambda, &inst.general_kappa(), &inst.basis);
    let mut into_source = Normalizer::new(&source);
    let inverse =
        HomImages::from_generators(&source, &mut into_source, inv_groups, inv_vectors.clone());
    let inverse_failure = verify_homomorphism(&inverse, &target_relations, &source)?;

    let one = rep.field().one();
    let generators: Vec<(String, SkewElem)> = grp
        .generators()
        .iter()
        .map(|&g| {
            (
                grp.name(g).to_string(),
                SkewElem::group_elem(m, g, one.clone()),
            )
        })
        .chain((0..m).map(|i| {
            (
                inst.basis[i].clone(),
                SkewElem::basis_vector(rep.field(), m, i, grp.identity()),
            )
        }))
        .collect();
    let mut composite_failures = Vec::new();
    for (label, x) in &generators {
        let back = apply_to_normal(
            &mut into_source,
            &inverse,
            &apply_to_normal(&mut into_target, &forward, x),
        );
        if &back != x {
            composite_failures.push(format!("f^-1(f({label}))"));
        }
        let back = apply_to_normal(
            &mut into_target,
            &forward,
            &apply_to_normal(&mut into_source, &inverse, x),
        );
        if &back != x {
            composite_failures.push(format!("f(f^-1({label}))"));
        }
    }
    Ok(MapReport {
        forward_failure,
        inverse_failure,
        composite_failures,
        has_inverse: true,
    })
}
