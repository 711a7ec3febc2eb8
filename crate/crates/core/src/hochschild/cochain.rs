use std::collections::BTreeMap;

use super::bar::{phi_generator, psi2, slice_gen, BarChain, SliceGen};
use super::chains::{differential_generator, middle_basis, mono, mul, Mid, XChain};
use crate::error::{Error, Result};
use crate::params::{KappaParam, LambdaParam};
use crate::representation::Representation;
use crate::skew::SkewElem;

/// An `A`-bimodule map on `X_n`, given by its values on the middle basis
/// (missing entries are zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    /// Homological degree `n`.
    pub degree: usize,
    /// Graded (polynomial) degree of the map.
    pub graded_degree: i32,
    values: BTreeMap<Mid, SkewElem>,
}

impl Cochain {
    pub fn zero(degree: usize, graded_degree: i32) -> Self {
        Cochain {
            degree,
            graded_degree,
            values: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, mid: Mid, value: SkewElem) {
        if value.is_zero() {
            self.values.remove(&mid);
        } else {
            self.values.insert(mid, value);
        }
    }

    pub fn value(&self, mid: &Mid) -> SkewElem {
        self.values.get(mid).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero values in middle-basis order.
    pub fn support(&self) -> impl Iterator<Item = (&Mid, &SkewElem)> {
        self.values.iter()
    }

    /// `Σ c · a · value(mid) · b` over the terms of `x`.
    pub fn evaluate(&self, rep: &Representation, x: &XChain) -> SkewElem {
        let mut out = SkewElem::zero();
        for (a, mid, b, c) in x.terms() {
            if let Some(v) = self.values.get(mid) {
                let left = mul(rep, &mono(rep, a), v);
                out.add_scaled(&mul(rep, &left, &mono(rep, b)), c);
            }
        }
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        for (mid, v) in &other.values {
            let value = out.value(mid).sub(v);
            out.set(mid.clone(), value);
        }
        out
    }

    pub fn scale(&self, c: &crate::scalar::Scalar) -> Cochain {
        let mut out = Cochain::zero(self.degree, self.graded_degree);
        for (mid, v) in &self.values {
            out.set(mid.clone(), v.scale(c));
        }
        out
    }
}

/// `λ` as a degree −1 cochain supported on `X_{1,1}`.
pub fn extend_lambda(lambda: &LambdaParam, rep: &Representation) -> Result<Cochain> {
    lambda.check_against(rep)?;
    let mut c = Cochain::zero(2, -1);
    for g in 0..rep.group().order() {
        for i in 0..rep.dim() {
            c.set(
                Mid {
                    groups: vec![g],
                    wedge: vec![i],
                },
                SkewElem::from_group_algebra(lambda.get(g, i), rep.dim()),
            );
        }
    }
    Ok(c)
}

/// `κ` as a degree −2 cochain supported on `X_{0,2}`.
pub fn extend_kappa(kappa: &KappaParam, rep: &Representation) -> Result<Cochain> {
    kappa.check_against(rep)?;
    let mut c = Cochain::zero(2, -2);
    for i in 0..rep.dim() {
        for j in i + 1..rep.dim() {
            c.set(
                Mid {
                    groups: vec![],
                    wedge: vec![i, j],
                },
                SkewElem::from_group_algebra(&kappa.get(i, j), rep.dim()),
            );
        }
    }
    Ok(c)
}

/// `(d*c)(1 ⊗ mid ⊗ 1) = c(d(1 ⊗ mid ⊗ 1))` on the whole middle basis of
/// degree `c.degree + 1`.
pub fn coboundary(c: &Cochain, rep: &Representation) -> Result<Cochain> {
    let mut out = Cochain::zero(c.degree + 1, c.graded_degree);
    for mid in middle_basis(rep, c.degree + 1) {
        let value = c.evaluate(rep, &differential_generator(rep, &mid)?);
        out.set(mid, value);
    }
    Ok(out)
}

/// A bilinear map on `span(V ∪ G)`, given on pairs of slice generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceCochain {
    values: BTreeMap<(SliceGen, SliceGen), SkewElem>,
}

impl SliceCochain {
    /// `ψ₂*(c)`: `(x, y) ↦ c(ψ₂(1 ⊗ x ⊗ y ⊗ 1))`.
    pub fn pull_back(c: &Cochain, rep: &Representation) -> Result<Self> {
        if c.degree != 2 {
            return Err(Error::Dimension("psi2 pulls back 2-cochains".into()));
        }
        let field = rep.field();
        let m = rep.dim();
        let grp = rep.group();
        let gens: Vec<(SliceGen, SkewElem)> = (0..m)
            .map(|i| {
                (
                    SliceGen::V(i),
                    SkewElem::basis_vector(field, m, i, grp.identity()),
                )
            })
            .chain(
                (0..grp.order()).map(|g| (SliceGen::G(g), SkewElem::group_elem(m, g, field.one()))),
            )
            .collect();
        let one = SkewElem::one(field, m, grp);
        let mut values = BTreeMap::new();
        for (x, ex) in &gens {
            for (y, ey) in &gens {
                let mut bar = BarChain::zero();
                bar.add_tensor(
                    &[one.clone(), ex.clone(), ey.clone(), one.clone()],
                    &field.one(),
                );
                let value = c.evaluate(rep, &psi2(rep, &bar)?);
                if !value.is_zero() {
                    values.insert((*x, *y), value);
                }
            }
        }
        Ok(SliceCochain { values })
    }

    pub fn get(&self, x: SliceGen, y: SliceGen) -> SkewElem {
        self.values.get(&(x, y)).cloned().unwrap_or_default()
    }

    /// Bilinear evaluation; both arguments must lie in `span(V ∪ G)`.
    pub fn eval(&self, rep: &Representation, x: &SkewElem, y: &SkewElem) -> Result<SkewElem> {
        let mut out = SkewElem::zero();
        for (mx, cx) in x.terms() {
            let gx = slice_gen(rep, mx)?;
            for (my, cy) in y.terms() {
                let gy = slice_gen(rep, my)?;
                if let Some(v) = self.values.get(&(gx, gy)) {
                    out.add_scaled(v, &(cx * cy));
                }
            }
        }
        Ok(out)
    }
}

/// `(μ ∘ ν)(a ⊗ b ⊗ c) = μ(ν(a ⊗ b) ⊗ c) − μ(a ⊗ ν(b ⊗ c))`.
pub fn circle(
    rep: &Representation,
    mu: &SliceCochain,
    nu: &SliceCochain,
    a: &SkewElem,
    b: &SkewElem,
    c: &SkewElem,
) -> Result<SkewElem> {
    Ok(mu
        .eval(rep, &nu.eval(rep, a, b)?, c)?
        .sub(&mu.eval(rep, a, &nu.eval(rep, b, c)?)?))
}

/// Pulls a trilinear slice map back along `φ₃` to a 3-cochain on `X`.
fn pull_back_phi3<F>(rep: &Representation, graded_degree: i32, mut f: F) -> Result<Cochain>
where
    F: FnMut(&SkewElem, &SkewElem, &SkewElem) -> Result<SkewElem>,
{
    let mut out = Cochain::zero(3, graded_degree);
    for mid in middle_basis(rep, 3) {
        let image = phi_generator(rep, &mid)?;
        let mut value = SkewElem::zero();
        for (k, coeff) in image.terms() {
            let [a0, a1, a2, a3, a4] = k else {
                return Err(Error::Dimension("phi3 produces 5 tensor factors".into()));
            };
            let inner = f(&mono(rep, a1), &mono(rep, a2), &mono(rep, a3))?;
            let left = mul(rep, &mono(rep, a0), &inner);
            value.add_scaled(&mul(rep, &left, &mono(rep, a4)), coeff);
        }
        out.set(mid, value);
    }
    Ok(out)
}

/// `φ₃*(ψ₂*c₁ ∘ ψ₂*c₂)`.
pub fn circle_product(c1: &Cochain, c2: &Cochain, rep: &Representation) -> Result<Cochain> {
    let mu = SliceCochain::pull_back(c1, rep)?;
    let nu = SliceCochain::pull_back(c2, rep)?;
    pull_back_phi3(rep, c1.graded_degree + c2.graded_degree, |a, b, c| {
        circle(rep, &mu, &nu, a, b, c)
    })
}

/// `[c₁, c₂] = φ₃*[ψ₂*c₁, ψ₂*c₂]` with
/// `[μ, ν] = μ ∘ ν + ν ∘ μ` on 2-cochains.
pub fn gerstenhaber_bracket(c1: &Cochain, c2: &Cochain, rep: &Representation) -> Result<Cochain> {
    let mu = SliceCochain::pull_back(c1, rep)?;
    let nu = SliceCochain::pull_back(c2, rep)?;
    pull_back_phi3(rep, c1.graded_degree + c2.graded_degree, |a, b, c| {
        Ok(circle(rep, &mu, &nu, a, b, c)?.add(&circle(rep, &nu, &mu, a, b, c)?))
    })
}
