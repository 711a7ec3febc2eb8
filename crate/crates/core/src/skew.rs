//! The skew group algebra `S(V)#G`, optionally with a central variable `t`.
//!
//! Elements are stored in the basis `t^k v_1^{i_1} ⋯ v_m^{i_m} g`, group
//! factor on the right.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::group_algebra::GroupAlgebraElem;
use crate::representation::Representation;
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewMonomial {
    pub t: u32,
    pub exps: Vec<u32>,
    pub group: usize,
}

impl SkewMonomial {
    pub fn new(t: u32, exps: Vec<u32>, group: usize) -> Self {
        SkewMonomial { t, exps, group }
    }

    /// Polynomial degree in the `v_i` (ignores `t`).
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewElem {
    terms: BTreeMap<SkewMonomial, Scalar>,
}

type Poly = BTreeMap<Vec<u32>, Scalar>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let c = ca * cb;
            let slot = out.entry(e).or_insert_with(|| c.field().zero());
            *slot = &*slot + &c;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// `^g (v_1^{e_1} ⋯ v_m^{e_m})` expanded as a polynomial.
fn act_monomial(rep: &Representation, g: usize, exps: &[u32]) -> Poly {
    let field = rep.field();
    let m = rep.dim();
    let mut acc: Poly = BTreeMap::from([(vec![0; m], field.one())]);
    for (i, &e) in exps.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let column = rep.act_basis(g, i);
        let linear: Poly = column
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let mut ex = vec![0; m];
                ex[j] = 1;
                (ex, c)
            })
            .collect();
        for _ in 0..e {
            acc = poly_mul(&acc, &linear);
        }
    }
    acc
}

impl SkewElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(mono: SkewMonomial, c: Scalar) -> Self {
        let mut x = Self::zero();
        x.add_term(mono, c);
        x
    }

    /// `c · g` in degree zero.
    pub fn group_elem(dim: usize, g: usize, c: Scalar) -> Self {
        Self::monomial(SkewMonomial::new(0, vec![0; dim], g), c)
    }

    /// `1` of the algebra.
    pub fn one(field: Field, dim: usize, group: &FiniteGroup) -> Self {
        Self::group_elem(dim, group.identity(), field.one())
    }

    /// `v_i · g`.
    pub fn basis_vector(field: Field, dim: usize, i: usize, g: usize) -> Self {
        let mut exps = vec![0; dim];
        exps[i] = 1;
        Self::monomial(SkewMonomial::new(0, exps, g), field.one())
    }

    /// `(Σ c_i v_i) · g`.
    pub fn vector(coords: &[Scalar], g: usize) -> Self {
        let dim = coords.len();
        let mut x = Self::zero();
        for (i, c) in coords.iter().enumerate() {
            let mut exps = vec![0; dim];
            exps[i] = 1;
            x.add_term(SkewMonomial::new(0, exps, g), c.clone());
        }
        x
    }

    pub fn from_group_algebra(x: &GroupAlgebraElem, dim: usize) -> Self {
        let mut out = Self::zero();
        for (g, c) in x.terms() {
            out.add_term(SkewMonomial::new(0, vec![0; dim], g), c.clone());
        }
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (SkewMonomial, Scalar)>) -> Self {
        let mut x = Self::zero();
        for (m, c) in terms {
            x.add_term(m, c);
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SkewMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &SkewMonomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: SkewMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Scalar) {
        for (m, x) in other.terms() {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms().map(|(m, c)| (m.clone(), -c)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms().map(|(m, x)| (m.clone(), x * c)))
    }

    /// Largest polynomial degree among the terms (`None` for zero).
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(SkewMonomial::degree).max()
    }

    /// Every term has polynomial degree `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Terms of polynomial degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Coefficient of `t^j`, as a `t`-free element.
    pub fn t_coefficient(&self, j: u32) -> Self {
        Self::from_terms(self.terms().filter(|(m, _)| m.t == j).map(|(m, c)| {
            let mut m = m.clone();
            m.t = 0;
            (m, c.clone())
        }))
    }

    pub fn max_t(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.t).max()
    }

    /// Multiplies by `t^k`.
    pub fn shift_t(&self, k: u32) -> Self {
        Self::from_terms(self.terms().map(|(m, c)| {
            let mut m = m.clone();
            m.t += k;
            (m, c.clone())
        }))
    }

    /// Replaces `t^{2k}` by `t^k`; fails on odd powers.
    pub fn halve_t(&self) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in self.terms() {
            if m.t % 2 == 1 {
                return Err(Error::Precondition("odd power of t present".into()));
            }
            let mut m = m.clone();
            m.t /= 2;
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    /// The element as a member of `kG` if it has no polynomial or `t` part.
    pub fn as_group_algebra(&self) -> Option<GroupAlgebraElem> {
        if self.terms.keys().any(|m| m.degree() > 0 || m.t > 0) {
            return None;
        }
        Some(GroupAlgebraElem::from_terms(
            self.terms().map(|(m, c)| (m.group, c.clone())),
        ))
    }

    /// The element as `Σ v_i ⊗ x_i ∈ V ⊗ kG` if it is homogeneous of degree 1
    /// and `t`-free; returns one `kG` coefficient per basis vector.
    pub fn as_vector_group(&self, dim: usize) -> Option<Vec<GroupAlgebraElem>> {
        let mut out = vec![GroupAlgebraElem::zero(); dim];
        for (m, c) in self.terms() {
            if m.degree() != 1 || m.t > 0 {
                return None;
            }
            let i = m.exps.iter().position(|&e| e == 1)?;
            out[i].add_term(m.group, c.clone());
        }
        Some(out)
    }

    /// Text form: terms separated by ` + ` / ` - `, each term a coefficient
    /// (omitted when 1), optional `t^k`, basis powers, and a group name
    /// (omitted for the identity).
    pub fn render(&self, basis: &[String], group: &FiniteGroup) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    out.push_str("- ");
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if m.t == 1 {
                factors.push("t".to_string());
            } else if m.t > 1 {
                factors.push(format!("t^{}", m.t));
            }
            for (i, &e) in m.exps.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(basis[i].clone()),
                    _ => factors.push(format!("{}^{}", basis[i], e)),
                }
            }
            if m.group != group.identity() {
                factors.push(group.name(m.group).to_string());
            }
            if factors.is_empty() || !mag.is_one() {
                factors.insert(0, mag.to_string());
            }
            out.push_str(&factors.join(" "));
        }
        out
    }
}

/// Product in `S(V)#G[t]`: `(r g)(s h) = r (^g s) gh`.
pub fn skew_multiply(a: &SkewElem, b: &SkewElem, rep: &Representation) -> Result<SkewElem> {
    let field = rep.field();
    let dim = rep.dim();
    for (m, c) in a.terms().chain(b.terms()) {
        if c.field() != field {
            return Err(Error::FieldMismatch(
                c.field().to_string(),
                field.to_string(),
            ));
        }
        if m.exps.len() != dim || m.group >= rep.group().order() {
            return Err(Error::Representation(
                "element does not belong to this skew group algebra".into(),
            ));
        }
    }
    let group = rep.group();
    let mut out = SkewElem::zero();
    let mut cache: BTreeMap<(usize, Vec<u32>), Poly> = BTreeMap::new();
    for (m1, c1) in a.terms() {
        for (m2, c2) in b.terms() {
            let acted = cache
                .entry((m1.group, m2.exps.clone()))
                .or_insert_with(|| act_monomial(rep, m1.group, &m2.exps));
            let gh = group.mul(m1.group, m2.group);
            let c12 = c1 * c2;
            for (e, c) in acted.iter() {
                let exps = m1.exps.iter().zip(e).map(|(x, y)| x + y).collect();
                out.add_term(SkewMonomial::new(m1.t + m2.t, exps, gh), &c12 * c);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::representation::close_generators;
    use proptest::prelude::*;

    fn unipotent(p: u64) -> Representation {
        let f = Field::prime(p).unwrap();
        close_generators(&[Matrix::from_i64(f, &[&[1, 1], &[0, 1]])], &["g"], 64).unwrap()
    }

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

    #[test]
    fn skew_products_over_f2() {
        let rep = unipotent(2);
        let f = rep.field();
        let e = rep.group().identity();
        let g = rep.group().parse_element("g").unwrap();
        let gg = SkewElem::group_elem(2, g, f.one());
        let w = SkewElem::basis_vector(f, 2, 1, e);
        let v = SkewElem::basis_vector(f, 2, 0, e);
        let expect = SkewElem::basis_vector(f, 2, 0, g).add(&SkewElem::basis_vector(f, 2, 1, g));
        assert_eq!(skew_multiply(&gg, &w, &rep).unwrap(), expect);
        assert_eq!(
            skew_multiply(&w, &v, &rep).unwrap(),
            skew_multiply(&v, &w, &rep).unwrap()
        );
        assert_eq!(
            skew_multiply(&gg, &gg, &rep).unwrap(),
            SkewElem::one(f, 2, rep.group())
        );
    }

    #[test]
    fn rendering() {
        let rep = unipotent(3);
        let f = rep.field();
        let g = rep.group().parse_element("g").unwrap();
        let names = vec!["v".to_string(), "w".to_string()];
        let x = SkewElem::basis_vector(f, 2, 0, g).add(&SkewElem::group_elem(
            2,
            rep.group().identity(),
            f.from_i64(2),
        ));
        assert_eq!(x.render(&names, rep.group()), "2 + v g");
        let q = s3();
        let y = SkewElem::basis_vector(q.field(), 2, 1, q.group().identity())
            .scale(&q.field().from_i64(-1));
        assert_eq!(y.render(&names, q.group()), "- w");
    }

    fn random_elem(rep: &Representation, seed: &mut u64, terms: usize) -> SkewElem {
        let mut next = |k: u64| {
            *seed = seed
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (*seed >> 33) % k
        };
        let f = rep.field();
        let mut x = SkewElem::zero();
        for _ in 0..terms {
            let deg = next(4) as u32;
            let a = next(deg as u64 + 1) as u32;
            let mono = SkewMonomial::new(
                0,
                vec![a, deg - a],
                next(rep.group().order() as u64) as usize,
            );
            x.add_term(mono, f.from_i64(next(7) as i64 - 3));
        }
        x
    }

    proptest! {
        #[test]
        fn associative_and_unital(seed in any::<u64>(), which in 0usize..3) {
            let rep = match which { 0 => unipotent(2), 1 => unipotent(3), _ => s3() };
            let mut s = seed;
            let a = random_elem(&rep, &mut s, 3);
            let b = random_elem(&rep, &mut s, 3);
            let c = random_elem(&rep, &mut s, 3);
            let ab_c = skew_multiply(&skew_multiply(&a, &b, &rep).unwrap(), &c, &rep).unwrap();
            let a_bc = skew_multiply(&a, &skew_multiply(&b, &c, &rep).unwrap(), &rep).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let one = SkewElem::one(rep.field(), 2, rep.group());
            prop_assert_eq!(skew_multiply(&one, &a, &rep).unwrap(), a.clone());
            prop_assert_eq!(skew_multiply(&a, &one, &rep).unwrap(), a);
        }
    }
}
