use std::collections::BTreeMap;

use super::chains::{mono, mul, Mid, XChain};
use crate::error::{Error, Result};
use crate::representation::Representation;
use crate::scalar::Scalar;
use crate::skew::{SkewElem, SkewMonomial};

/// An element of the bar resolution `A^{⊗(n+2)}`, multilinear in normal
/// monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BarChain {
    terms: BTreeMap<Vec<SkewMonomial>, Scalar>,
}

impl BarChain {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[SkewMonomial], &Scalar)> {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    fn add_term(&mut self, key: Vec<SkewMonomial>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(x) => {
                let sum = &*x + &c;
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *x = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Adds `c · f_0 ⊗ ⋯ ⊗ f_{n+1}`, expanding every factor.
    pub fn add_tensor(&mut self, factors: &[SkewElem], c: &Scalar) {
        let mut partial: Vec<(Vec<SkewMonomial>, Scalar)> = vec![(Vec::new(), c.clone())];
        for f in factors {
            let mut next = Vec::new();
            for (key, x) in &partial {
                for (m, y) in f.terms() {
                    let mut k = key.clone();
                    k.push(m.clone());
                    next.push((k, x * y));
                }
            }
            partial = next;
        }
        for (k, x) in partial {
            self.add_term(k, x);
        }
    }

    pub fn add_scaled(&mut self, other: &BarChain, c: &Scalar) {
        for (k, x) in &other.terms {
            self.add_term(k.clone(), c * x);
        }
    }

    pub fn sub(&self, other: &BarChain) -> BarChain {
        let mut out = self.clone();
        for (k, x) in &other.terms {
            out.add_term(k.clone(), -x);
        }
        out
    }

    /// `a · self · b`, multiplying into the outermost factors.
    pub fn sandwich(&self, rep: &Representation, a: &SkewElem, b: &SkewElem) -> BarChain {
        let mut out = BarChain::zero();
        for (k, c) in &self.terms {
            let mut factors: Vec<SkewElem> = k.iter().map(|m| mono(rep, m)).collect();
            let last = factors.len() - 1;
            factors[0] = mul(rep, a, &factors[0]);
            factors[last] = mul(rep, &factors[last], b);
            out.add_tensor(&factors, c);
        }
        out
    }
}

/// `δ(a_0 ⊗ ⋯ ⊗ a_{n+1}) = Σ_k (−1)^k a_0 ⊗ ⋯ ⊗ a_k a_{k+1} ⊗ ⋯ ⊗ a_{n+1}`.
pub fn bar_differential(rep: &Representation, x: &BarChain) -> BarChain {
    let field = rep.field();
    let mut out = BarChain::zero();
    for (k, c) in x.terms() {
        let factors: Vec<SkewElem> = k.iter().map(|m| mono(rep, m)).collect();
        for pos in 0..factors.len() - 1 {
            let mut merged = factors[..pos].to_vec();
            merged.push(mul(rep, &factors[pos], &factors[pos + 1]));
            merged.extend_from_slice(&factors[pos + 2..]);
            let sign = if pos % 2 == 0 {
                field.one()
            } else {
                -&field.one()
            };
            out.add_tensor(&merged, &(c * &sign));
        }
    }
    out
}

/// `φ(1 ⊗ mid ⊗ 1)` for total degree ≤ 3.
pub fn phi_generator(rep: &Representation, mid: &Mid) -> Result<BarChain> {
    let field = rep.field();
    let grp = rep.group();
    let m = rep.dim();
    let one = SkewElem::one(field, m, grp);
    let pos = field.one();
    let neg = -&field.one();
    let g_ = |g: usize| SkewElem::group_elem(m, g, field.one());
    let v_ = |i: usize| SkewElem::basis_vector(field, m, i, grp.identity());
    let act = |g: usize, i: usize| SkewElem::vector(&rep.act_basis(g, i), grp.identity());
    let mut out = BarChain::zero();
    match (mid.groups.as_slice(), mid.wedge.as_slice()) {
        ([], []) => out.add_tensor(&[one.clone(), one], &pos),
        ([g], []) => out.add_tensor(&[one.clone(), g_(*g), one], &pos),
        ([], [a]) => out.add_tensor(&[one.clone(), v_(*a), one], &pos),
        ([g, h], []) => out.add_tensor(&[one.clone(), g_(*g), g_(*h), one], &pos),
        ([g], [a]) => {
            out.add_tensor(&[one.clone(), g_(*g), v_(*a), one.clone()], &pos);
            out.add_tensor(&[one.clone(), act(*g, *a), g_(*g), one], &neg);
        }
        ([], [a, b]) => {
            out.add_tensor(&[one.clone(), v_(*a), v_(*b), one.clone()], &pos);
            out.add_tensor(&[one.clone(), v_(*b), v_(*a), one], &neg);
        }
        ([g, h, l], []) => out.add_tensor(&[one.clone(), g_(*g), g_(*h), g_(*l), one], &pos),
        ([g, h], [a]) => {
            let gh = grp.mul(*g, *h);
            out.add_tensor(&[one.clone(), g_(*g), g_(*h), v_(*a), one.clone()], &pos);
            out.add_tensor(
                &[one.clone(), g_(*g), act(*h, *a), g_(*h), one.clone()],
                &neg,
            );
            out.add_tensor(&[one.clone(), act(gh, *a), g_(*g), g_(*h), one], &pos);
        }
        ([g], [a, b]) => {
            let (gv, gw) = (act(*g, *a), act(*g, *b));
            out.add_tensor(&[one.clone(), g_(*g), v_(*a), v_(*b), one.clone()], &pos);
            out.add_tensor(&[one.clone(), g_(*g), v_(*b), v_(*a), one.clone()], &neg);
            out.add_tensor(
                &[one.clone(), gv.clone(), gw.clone(), g_(*g), one.clone()],
                &pos,
            );
            out.add_tensor(
                &[one.clone(), gw.clone(), gv.clone(), g_(*g), one.clone()],
                &neg,
            );
            out.add_tensor(&[one.clone(), gv, g_(*g), v_(*b), one.clone()], &neg);
            out.add_tensor(&[one.clone(), gw, g_(*g), v_(*a), one], &pos);
        }
        ([], [a, b, c]) => {
            let idx = [*a, *b, *c];
            for (perm, odd) in [
                ([0, 1, 2], false),
                ([1, 2, 0], false),
                ([2, 0, 1], false),
                ([1, 0, 2], true),
                ([0, 2, 1], true),
                ([2, 1, 0], true),
            ] {
                let fs: Vec<SkewElem> = std::iter::once(one.clone())
                    .chain(perm.iter().map(|&p| v_(idx[p])))
                    .chain(std::iter::once(one.clone()))
                    .collect();
                out.add_tensor(&fs, if odd { &neg } else { &pos });
            }
        }
        _ => {
            return Err(Error::OutOfRange(format!(
                "phi is implemented up to degree 3, got bidegree {:?}",
                mid.bidegree()
            )))
        }
    }
    Ok(out)
}

/// `φ` extended as an `A`-bimodule map.
pub fn phi(rep: &Representation, x: &XChain) -> Result<BarChain> {
    let mut out = BarChain::zero();
    for (a, mid, b, c) in x.terms() {
        let image = phi_generator(rep, mid)?;
        out.add_scaled(&image.sandwich(rep, &mono(rep, a), &mono(rep, b)), c);
    }
    Ok(out)
}

/// A basis element of the generator slice `span(V ∪ G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SliceGen {
    V(usize),
    G(usize),
}

/// Reads a normal monomial as a slice generator.
pub fn slice_gen(rep: &Representation, m: &SkewMonomial) -> Result<SliceGen> {
    if m.t != 0 {
        return Err(Error::SliceViolation(
            "monomial carries a power of t".into(),
        ));
    }
    match m.degree() {
        0 => Ok(SliceGen::G(m.group)),
        1 if m.group == rep.group().identity() => Ok(SliceGen::V(
            m.exps.iter().position(|&e| e == 1).expect("degree one"),
        )),
        _ => Err(Error::SliceViolation(format!(
            "monomial of degree {} with group factor {} is not in span(V ∪ G)",
            m.degree(),
            rep.group().name(m.group)
        ))),
    }
}

/// `ψ₂(1 ⊗ x ⊗ y ⊗ 1)` for slice generators.
pub fn psi2_generator(x: SliceGen, y: SliceGen) -> Option<Mid> {
    match (x, y) {
        (SliceGen::G(g), SliceGen::G(h)) => Some(Mid {
            groups: vec![g, h],
            wedge: vec![],
        }),
        (SliceGen::G(g), SliceGen::V(i)) => Some(Mid {
            groups: vec![g],
            wedge: vec![i],
        }),
        (SliceGen::V(_), SliceGen::G(_)) => None,
        (SliceGen::V(i), SliceGen::V(j)) => (i < j).then(|| Mid {
            groups: vec![],
            wedge: vec![i, j],
        }),
    }
}

/// `ψ₂` on bar 2-chains whose middle factors lie in the generator slice.
pub fn psi2(rep: &Representation, x: &BarChain) -> Result<XChain> {
    let mut out = XChain::zero();
    for (k, c) in x.terms() {
        let [a, p, q, b] = k else {
            return Err(Error::Dimension(format!(
                "psi2 needs 4 tensor factors, got {}",
                k.len()
            )));
        };
        if let Some(mid) = psi2_generator(slice_gen(rep, p)?, slice_gen(rep, q)?) {
            out.add_outer(&mono(rep, a), mid, &mono(rep, b), c);
        }
    }
    Ok(out)
}
