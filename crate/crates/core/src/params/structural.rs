//! Necessary conditions on the supports of `λ` and `κ`. These are fast
//! pre-filters; [`crate::pbw::check_pbw`] is the authority.

use std::fmt;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::representation::Representation;

use super::{KappaParam, LambdaParam};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructuralViolation {
    /// `κ_g ≠ 0` although `codim V^g ≥ 3`.
    KappaCodimTooLarge { g: usize, codim: usize },
    /// `codim V^g = 1` but `κ_g` is nonzero on `V^g ∧ V^g`.
    KappaOnFixedPlane { g: usize },
    /// `codim V^g = 2` but the radical of `κ_g` differs from `V^g`.
    KappaKernel { g: usize },
    /// `λ_h(g, ·) ≠ 0` although `h⁻¹g` is neither trivial on `V` nor a
    /// reflection.
    LambdaSupport { g: usize, h: usize },
    /// `λ_h(g, ·)` is nonzero on the reflecting hyperplane of `h⁻¹g`.
    LambdaHyperplane { g: usize, h: usize },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructuralReport {
    pub violations: Vec<StructuralViolation>,
}

impl StructuralReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for StructuralViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::KappaCodimTooLarge { g, codim } => {
                write!(f, "kappa_{g} nonzero with codim V^g = {codim}")
            }
            Self::KappaOnFixedPlane { g } => write!(f, "kappa_{g} nonzero on V^g for a reflection"),
            Self::KappaKernel { g } => write!(f, "ker kappa_{g} differs from V^g (codim 2)"),
            Self::LambdaSupport { g, h } => {
                write!(
                    f,
                    "lambda_{h}({g}, -) nonzero but h^-1 g is not a reflection"
                )
            }
            Self::LambdaHyperplane { g, h } => {
                write!(f, "lambda_{h}({g}, -) nonzero on the reflecting hyperplane")
            }
        }
    }
}

/// Gram matrix `K[i][j] = κ_g(v_i, v_j)`.
fn kappa_matrix(kappa: &KappaParam, rep: &Representation, g: usize) -> Matrix {
    let f = rep.field();
    let m = rep.dim();
    let rows = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    kappa
                        .get(i, j)
                        .coeff(g)
                        .cloned()
                        .unwrap_or_else(|| f.zero())
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(f, rows).expect("square")
}

pub fn validate_structural(
    lambda: &LambdaParam,
    kappa: &KappaParam,
    rep: &Representation,
) -> Result<StructuralReport> {
    let grp = rep.group();
    let n = grp.order();
    let m = rep.dim();
    let f = rep.field();
    let mut violations = Vec::new();

    for g in 0..n {
        let k = kappa_matrix(kappa, rep, g);
        if k.rank() == 0 {
            continue;
        }
        let (fixed, codim) = rep.fixed_space(g)?;
        match codim {
            0 => {}
            1 => {
                let nonzero = fixed.iter().any(|u| {
                    fixed.iter().any(|w| {
                        let ku = k.apply(w).expect("dim");
                        u.iter()
                            .zip(&ku)
                            .fold(f.zero(), |acc, (a, b)| &acc + &(a * b))
                            != f.zero()
                    })
                });
                if nonzero {
                    violations.push(StructuralViolation::KappaOnFixedPlane { g });
                }
            }
            2 => {
                // radical {u : u^T K = 0} is the kernel of K^T = −K
                let radical = k.kernel();
                let contains = fixed
                    .iter()
                    .all(|u| k.apply(u).expect("dim").iter().all(|x| x.is_zero()));
                if radical.len() != fixed.len() || !contains {
                    violations.push(StructuralViolation::KappaKernel { g });
                }
            }
            codim => violations.push(StructuralViolation::KappaCodimTooLarge { g, codim }),
        }
    }

    for g in 0..n {
        for h in 0..n {
            let values: Vec<_> = (0..m)
                .map(|i| {
                    lambda
                        .get(g, i)
                        .coeff(h)
                        .cloned()
                        .unwrap_or_else(|| f.zero())
                })
                .collect();
            if values.iter().all(|x| x.is_zero()) {
                continue;
            }
            let x = grp.mul(grp.inv(h), g);
            let (fixed, codim) = rep.fixed_space(x)?;
            match codim {
                0 => {}
                1 => {
                    let on_plane = fixed.iter().any(|u| {
                        u.iter()
                            .zip(&values)
                            .fold(f.zero(), |acc, (a, b)| &acc + &(a * b))
                            != f.zero()
                    });
                    if on_plane {
                        violations.push(StructuralViolation::LambdaHyperplane { g, h });
                    }
                }
                _ => violations.push(StructuralViolation::LambdaSupport { g, h }),
            }
        }
    }
    Ok(StructuralReport { violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::group_algebra::GroupAlgebraElem;
    use crate::representation::close_generators;
    use crate::scalar::Field;

    #[test]
    fn modular_example_is_clean() {
        let f = Field::prime(2).unwrap();
        let rep = close_generators(&[Matrix::from_i64(f, &[&[1, 1], &[0, 1]])], &["g"], 8).unwrap();
        let grp = rep.group();
        let g = grp.parse_element("g").unwrap();
        let mut lambda = LambdaParam::zero(2, 2);
        lambda.set(g, 1, GroupAlgebraElem::term(grp.identity(), f.one()));
        let mut kappa = KappaParam::zero(2);
        kappa.set(0, 1, GroupAlgebraElem::term(g, f.one())).unwrap();
        assert!(validate_structural(&lambda, &kappa, &rep)
            .unwrap()
            .is_clean());
        let mut kappa1 = KappaParam::zero(2);
        kappa1
            .set(0, 1, GroupAlgebraElem::term(grp.identity(), f.one()))
            .unwrap();
        assert!(validate_structural(&LambdaParam::zero(2, 2), &kappa1, &rep)
            .unwrap()
            .is_clean());
    }

    #[test]
    fn codim_three_kappa_is_flagged() {
        let q = Field::Rationals;
        let grp = FiniteGroup::cyclic(2, "z");
        let minus = Matrix::from_i64(q, &[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]]);
        let rep = Representation::new(grp, q, 3, vec![Matrix::identity(q, 3), minus]).unwrap();
        let mut kappa = KappaParam::zero(3);
        kappa.set(0, 1, GroupAlgebraElem::term(1, q.one())).unwrap();
        let report = validate_structural(&LambdaParam::zero(2, 3), &kappa, &rep).unwrap();
        assert_eq!(
            report.violations,
            vec![StructuralViolation::KappaCodimTooLarge { g: 1, codim: 3 }]
        );
    }

    #[test]
    fn lambda_on_hyperplane_is_flagged() {
        let f = Field::prime(2).unwrap();
        let rep = close_generators(&[Matrix::from_i64(f, &[&[1, 1], &[0, 1]])], &["g"], 8).unwrap();
        let grp = rep.group();
        let g = grp.parse_element("g").unwrap();
        let mut lambda = LambdaParam::zero(2, 2);
        // v spans V^g, so λ_1(g, v) must vanish
        lambda.set(g, 0, GroupAlgebraElem::term(grp.identity(), f.one()));
        let report = validate_structural(&lambda, &KappaParam::zero(2), &rep).unwrap();
        assert_eq!(
            report.violations,
            vec![StructuralViolation::LambdaHyperplane {
                g,
                h: grp.identity()
            }]
        );
    }
}
