use std::fmt;

use super::chains::Mid;
use super::cochain::{
    circle_product, coboundary, extend_kappa, extend_lambda, gerstenhaber_bracket, Cochain,
};
use crate::error::{Error, Result};
use crate::params::{KappaParam, LambdaParam};
use crate::pbw::default_basis_names;
use crate::representation::Representation;
use crate::rewrite::{params_from_mu, Grading, ReductionSystem};
use crate::skew::SkewElem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityStatus {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
    /// First middle-basis element with a nonzero residual.
    pub witness: Option<(Mid, SkewElem)>,
}

impl IdentityStatus {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }

    fn from_residual(name: &'static str, residual: &Cochain, checked: usize) -> Self {
        let mut support = residual.support();
        let witness = support.next().map(|(m, v)| (m.clone(), v.clone()));
        IdentityStatus {
            name,
            checked,
            failures: witness.iter().count() + support.count(),
            witness,
        }
    }
}

/// The three cochain identities on `X_3`.
#[derive(Clone, Debug)]
pub struct HomologicalReport {
    pub identities: Vec<IdentityStatus>,
    /// `[λ,λ] − 2d*(κ)` evaluated exactly as written. Agrees with the
    /// second identity whenever 2 is invertible; in characteristic 2 it
    /// vanishes identically and carries no information.
    pub literal_bracket_identity: IdentityStatus,
    pub basis: Vec<String>,
    pub rep: Representation,
}

impl HomologicalReport {
    pub fn holds(&self) -> bool {
        self.identities.iter().all(IdentityStatus::holds)
    }
}

impl fmt::Display for HomologicalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.identities {
            write!(f, "{}: {}", s.name, if s.holds() { "pass" } else { "fail" })?;
            write!(
                f,
                " ({} of {} basis elements nonzero)",
                s.failures, s.checked
            )?;
            if let Some((mid, v)) = &s.witness {
                write!(
                    f,
                    "\n  at {}: {}",
                    mid.render(&self.rep, &self.basis),
                    v.render(&self.basis, self.rep.group())
                )?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "verdict: {}",
            if self.holds() { "PBW" } else { "not PBW" }
        )
    }
}

pub const COCYCLE: &str = "d*(lambda) = 0";
pub const FIRST_OBSTRUCTION: &str = "[lambda,lambda] = 2 d*(kappa)";
pub const SECOND_OBSTRUCTION: &str = "[lambda,kappa] = 0";

/// Evaluates `d*(λ) = 0`, `[λ,λ] = 2d*(κ)` and `[λ,κ] = 0` on every
/// middle-basis element of `X_3`.
///
/// The first obstruction is decided through `λ∘λ − d*(κ)`, which is half of
/// `[λ,λ] − 2d*(κ)` and stays meaningful in characteristic 2.
pub fn check_homological(
    lambda: &LambdaParam,
    kappa: &KappaParam,
    rep: &Representation,
) -> Result<HomologicalReport> {
    let l = extend_lambda(lambda, rep)?;
    let k = extend_kappa(kappa, rep)?;
    let checked = super::chains::middle_basis(rep, 3).len();
    let dl = coboundary(&l, rep)?;
    let dk = coboundary(&k, rep)?;
    let half = circle_product(&l, &l, rep)?.sub(&dk);
    let literal = gerstenhaber_bracket(&l, &l, rep)?.sub(&dk.scale(&rep.field().from_i64(2)));
    let mixed = gerstenhaber_bracket(&l, &k, rep)?;
    Ok(HomologicalReport {
        identities: vec![
            IdentityStatus::from_residual(COCYCLE, &dl, checked),
            IdentityStatus::from_residual(FIRST_OBSTRUCTION, &half, checked),
            IdentityStatus::from_residual(SECOND_OBSTRUCTION, &mixed, checked),
        ],
        literal_bracket_identity: IdentityStatus::from_residual(
            FIRST_OBSTRUCTION,
            &literal,
            checked,
        ),
        basis: default_basis_names(rep.dim()),
        rep: rep.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftMode {
    /// `t`-graded: `λ` at `t`, `κ` at `t²`.
    Graded,
    /// `t² ↦ t`; only for `λ ≡ 0`.
    Collapsed,
}

/// A graded deformation realizing `H_{λ,κ}`, with the parameters read back
/// from its multiplication maps.
#[derive(Debug)]
pub struct Deformation {
    pub system: ReductionSystem,
    pub lambda: LambdaParam,
    pub kappa: KappaParam,
}

pub fn lift_to_deformation(
    lambda: &LambdaParam,
    kappa: &KappaParam,
    rep: &Representation,
    mode: LiftMode,
) -> Result<Deformation> {
    if mode == LiftMode::Collapsed && !lambda.is_zero() {
        return Err(Error::Precondition(
            "t^2 -> t collapse needs lambda identically zero".into(),
        ));
    }
    let report = check_homological(lambda, kappa, rep)?;
    if !report.holds() {
        return Err(Error::Precondition(format!(
            "homological conditions fail:\n{report}"
        )));
    }
    let grading = match mode {
        LiftMode::Graded => Grading::Graded,
        LiftMode::Collapsed => Grading::Collapsed,
    };
    let system = ReductionSystem::from_plain(rep, lambda, kappa, grading)?;
    if !system.is_confluent() {
        return Err(Error::NotConfluent);
    }
    let (l, k) = params_from_mu(&system)?;
    Ok(Deformation {
        system,
        lambda: l,
        kappa: k,
    })
}
