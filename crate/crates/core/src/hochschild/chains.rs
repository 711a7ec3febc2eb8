use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Vector;
use crate::representation::Representation;
use crate::scalar::Scalar;
use crate::skew::{skew_multiply, SkewElem, SkewMonomial};

/// Highest total degree of the resolution that is implemented.
pub const MAX_DEGREE: usize = 3;

/// Middle factor of a free generator of `X_{i,j}`: `g_1 ⊗ ⋯ ⊗ g_i ⊗ v_{a_1} ∧ ⋯ ∧ v_{a_j}`
/// with `a_1 < ⋯ < a_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mid {
    pub groups: Vec<usize>,
    pub wedge: Vec<usize>,
}

impl Mid {
    pub fn new(groups: Vec<usize>, wedge: Vec<usize>) -> Result<Self> {
        if wedge.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter(
                "wedge indices must be strictly increasing".into(),
            ));
        }
        Ok(Mid { groups, wedge })
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.groups.len(), self.wedge.len())
    }

    pub fn degree(&self) -> usize {
        self.groups.len() + self.wedge.len()
    }

    pub fn render(&self, rep: &Representation, basis: &[String]) -> String {
        let mut parts: Vec<String> = self
            .groups
            .iter()
            .map(|&g| rep.group().name(g).to_string())
            .collect();
        if !self.wedge.is_empty() {
            parts.push(
                self.wedge
                    .iter()
                    .map(|&i| basis[i].clone())
                    .collect::<Vec<_>>()
                    .join("^"),
            );
        }
        if parts.is_empty() {
            "1 (x) 1".into()
        } else {
            format!("1 (x) {} (x) 1", parts.join(" (x) "))
        }
    }
}

/// Every middle-basis element of total degree `n`, ordered by bidegree
/// `(n,0), (n−1,1), …` and then lexicographically.
pub fn middle_basis(rep: &Representation, n: usize) -> Vec<Mid> {
    let order = rep.group().order();
    let m = rep.dim();
    let mut out = Vec::new();
    for i in (0..=n).rev() {
        let j = n - i;
        let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..i {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    (0..order).map(move |g| {
                        let mut t = t.clone();
                        t.push(g);
                        t
                    })
                })
                .collect();
        }
        let wedges = increasing_tuples(m, j);
        for t in &tuples {
            for w in &wedges {
                out.push(Mid {
                    groups: t.clone(),
                    wedge: w.clone(),
                });
            }
        }
    }
    out
}

fn increasing_tuples(m: usize, j: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for a in start..m {
            cur.push(a);
            rec(a + 1, m, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, j, &mut Vec::new(), &mut out);
    out
}

/// `w_1 ∧ ⋯ ∧ w_j` for coordinate vectors, expanded in the sorted wedge basis.
pub fn wedge_of(vectors: &[Vector]) -> Vec<(Vec<usize>, Scalar)> {
    let Some(first) = vectors.first() else {
        return Vec::new();
    };
    let field = first[0].field();
    let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::from([(Vec::new(), field.one())]);
    for v in vectors {
        let mut next: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for (idx, c) in &acc {
            for (k, x) in v.iter().enumerate() {
                if x.is_zero() || idx.contains(&k) {
                    continue;
                }
                // moving v_k left past the larger indices
                let passes = idx.iter().filter(|&&a| a > k).count();
                let mut key = idx.clone();
                let pos = key.partition_point(|&a| a < k);
                key.insert(pos, k);
                let mut coeff = c * x;
                if passes % 2 == 1 {
                    coeff = -coeff;
                }
                let slot = next.entry(key).or_insert_with(|| field.zero());
                *slot = &*slot + &coeff;
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc.into_iter().collect()
}

pub(crate) fn mul(rep: &Representation, a: &SkewElem, b: &SkewElem) -> SkewElem {
    skew_multiply(a, b, rep).expect("factors live in the same skew group algebra")
}

pub(crate) fn mono(rep: &Representation, m: &SkewMonomial) -> SkewElem {
    SkewElem::monomial(m.clone(), rep.field().one())
}

/// An element `Σ c · a ⊗ mid ⊗ b` of `X`, with `a`, `b` normal monomials of `A`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct XChain {
    terms: BTreeMap<(SkewMonomial, Mid, SkewMonomial), Scalar>,
}

impl XChain {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `1 ⊗ mid ⊗ 1`.
    pub fn generator(rep: &Representation, mid: Mid) -> Self {
        let mut x = Self::zero();
        let one = SkewElem::one(rep.field(), rep.dim(), rep.group());
        x.add_outer(&one, mid, &one, &rep.field().one());
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SkewMonomial, &Mid, &SkewMonomial, &Scalar)> {
        self.terms.iter().map(|((a, mid, b), c)| (a, mid, b, c))
    }

    fn add_term(&mut self, key: (SkewMonomial, Mid, SkewMonomial), c: Scalar) {
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

    /// Adds `c · a ⊗ mid ⊗ b` for elements `a`, `b` of `A`.
    pub fn add_outer(&mut self, a: &SkewElem, mid: Mid, b: &SkewElem, c: &Scalar) {
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                self.add_term((ma.clone(), mid.clone(), mb.clone()), &(c * ca) * cb);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &XChain, c: &Scalar) {
        for ((a, mid, b), x) in &other.terms {
            self.add_term((a.clone(), mid.clone(), b.clone()), c * x);
        }
    }

    pub fn sub(&self, other: &XChain) -> XChain {
        let mut out = self.clone();
        for ((a, mid, b), x) in &other.terms {
            out.add_term((a.clone(), mid.clone(), b.clone()), -x);
        }
        out
    }

    /// `a · self · b`.
    pub fn sandwich(&self, rep: &Representation, a: &SkewElem, b: &SkewElem) -> XChain {
        let mut out = XChain::zero();
        for ((ma, mid, mb), c) in &self.terms {
            let left = mul(rep, a, &mono(rep, ma));
            let right = mul(rep, &mono(rep, mb), b);
            out.add_outer(&left, mid.clone(), &right, c);
        }
        out
    }

    pub fn render(&self, rep: &Representation, basis: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let grp = rep.group();
        self.terms
            .iter()
            .map(|((a, mid, b), c)| {
                let a = SkewElem::monomial(a.clone(), c.clone()).render(basis, grp);
                let b = SkewElem::monomial(b.clone(), rep.field().one()).render(basis, grp);
                let inner = mid.render(rep, basis);
                let inner = inner
                    .trim_start_matches("1 (x) ")
                    .trim_end_matches(" (x) 1");
                format!("({a}) (x) {inner} (x) ({b})")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Sign on the vertical differential: `d(1 ⊗ v ⊗ 1) = v ⊗ 1 − 1 ⊗ v`.
const VERTICAL_SIGN: i64 = -1;

/// `d(1 ⊗ mid ⊗ 1)`; in degree 0 this is the multiplication map, returned
/// as a chain with empty middle.
pub fn differential_generator(rep: &Representation, mid: &Mid) -> Result<XChain> {
    let (i, j) = mid.bidegree();
    if i + j > MAX_DEGREE {
        return Err(Error::OutOfRange(format!(
            "resolution degree {} is not implemented",
            i + j
        )));
    }
    let field = rep.field();
    let grp = rep.group();
    let m = rep.dim();
    let one = SkewElem::one(field, m, grp);
    let sign = |k: usize| {
        if k.is_multiple_of(2) {
            field.one()
        } else {
            -&field.one()
        }
    };
    let basis_vec = |k: usize| crate::matrix::unit_vector(field, m, k);
    let mut out = XChain::zero();
    if i == 0 && j == 0 {
        return Err(Error::Precondition(
            "use the augmentation in degree 0".into(),
        ));
    }
    if i > 0 {
        let g = &mid.groups;
        let rest = Mid {
            groups: g[1..].to_vec(),
            wedge: mid.wedge.clone(),
        };
        out.add_outer(
            &SkewElem::group_elem(m, g[0], field.one()),
            rest,
            &one,
            &field.one(),
        );
        for l in 1..i {
            let mut merged = g[..l - 1].to_vec();
            merged.push(grp.mul(g[l - 1], g[l]));
            merged.extend_from_slice(&g[l + 1..]);
            out.add_outer(
                &one,
                Mid {
                    groups: merged,
                    wedge: mid.wedge.clone(),
                },
                &one,
                &sign(l),
            );
        }
        let last = g[i - 1];
        let moved: Vec<Vector> = mid.wedge.iter().map(|&a| rep.act_basis(last, a)).collect();
        let right = SkewElem::group_elem(m, last, field.one());
        let head = g[..i - 1].to_vec();
        if j == 0 {
            out.add_outer(
                &one,
                Mid {
                    groups: head,
                    wedge: Vec::new(),
                },
                &right,
                &sign(i),
            );
        } else {
            for (w, c) in wedge_of(&moved) {
                out.add_outer(
                    &one,
                    Mid {
                        groups: head.clone(),
                        wedge: w,
                    },
                    &right,
                    &(&sign(i) * &c),
                );
            }
        }
    }
    if j > 0 {
        let total = mid
            .groups
            .iter()
            .fold(grp.identity(), |acc, &g| grp.mul(acc, g));
        for l in 1..=j {
            let a = mid.wedge[l - 1];
            let mut hat = mid.wedge.clone();
            hat.remove(l - 1);
            let rest = Mid {
                groups: mid.groups.clone(),
                wedge: hat,
            };
            let c = &(&sign(i) * &sign(l)) * &field.from_i64(VERTICAL_SIGN);
            let left = SkewElem::vector(&rep.act_basis(total, a), grp.identity());
            let right = SkewElem::vector(&basis_vec(a), grp.identity());
            out.add_outer(&left, rest.clone(), &one, &c);
            out.add_outer(&one, rest, &right, &-&c);
        }
    }
    Ok(out)
}

/// `d` extended as an `A`-bimodule map, on chains of degree ≥ 1.
pub fn differential(rep: &Representation, x: &XChain) -> Result<XChain> {
    let mut out = XChain::zero();
    for (a, mid, b, c) in x.terms() {
        if mid.degree() == 0 {
            return Err(Error::Precondition(
                "use the augmentation in degree 0".into(),
            ));
        }
        let image = differential_generator(rep, mid)?;
        out.add_scaled(&image.sandwich(rep, &mono(rep, a), &mono(rep, b)), c);
    }
    Ok(out)
}

/// The multiplication map `X_0 = A ⊗ A → A`.
pub fn augmentation(rep: &Representation, x: &XChain) -> Result<SkewElem> {
    let mut out = SkewElem::zero();
    for (a, mid, b, c) in x.terms() {
        if mid.degree() != 0 {
            return Err(Error::Precondition(
                "augmentation is defined on degree 0 only".into(),
            ));
        }
        out.add_scaled(&mul(rep, &mono(rep, a), &mono(rep, b)), c);
    }
    Ok(out)
}
