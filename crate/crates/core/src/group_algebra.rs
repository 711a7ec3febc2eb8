//! Elements of the group algebra `kG`, stored sparsely.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::scalar::Scalar;

/// `Σ c_g g` with zero coefficients omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupAlgebraElem {
    terms: BTreeMap<usize, Scalar>,
}

impl GroupAlgebraElem {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c · g`.
    pub fn term(g: usize, c: Scalar) -> Self {
        let mut x = Self::zero();
        x.add_term(g, c);
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut x = Self::zero();
        for (g, c) in terms {
            x.add_term(g, c);
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `g` (the component `x_g`), `None` meaning zero.
    pub fn coeff(&self, g: usize) -> Option<&Scalar> {
        self.terms.get(&g)
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.terms.iter().map(|(&g, c)| (g, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn add_term(&mut self, g: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&g) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&g);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(g, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self::from_terms(self.terms().map(|(g, c)| (g, -c)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::from_terms(self.terms().map(|(g, x)| (g, x * c)))
    }

    /// Convolution product; indices are trusted to be valid for `group`.
    pub fn mul(&self, other: &Self, group: &FiniteGroup) -> Self {
        let mut out = Self::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                out.add_term(group.mul(a, b), x * y);
            }
        }
        out
    }

    /// `g · self`.
    pub fn left_mul_group(&self, g: usize, group: &FiniteGroup) -> Self {
        Self::from_terms(self.terms().map(|(h, c)| (group.mul(g, h), c.clone())))
    }

    /// `self · g`.
    pub fn right_mul_group(&self, g: usize, group: &FiniteGroup) -> Self {
        Self::from_terms(self.terms().map(|(h, c)| (group.mul(h, g), c.clone())))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }
}

/// Product in `kG`, checking that both factors live over `group`.
pub fn ga_multiply(
    x: &GroupAlgebraElem,
    y: &GroupAlgebraElem,
    group: &FiniteGroup,
) -> Result<GroupAlgebraElem> {
    for e in [x, y] {
        if let Some(m) = e.max_index() {
            if m >= group.order() {
                return Err(Error::GroupMismatch(format!(
                    "index {m} is not an element of a group of order {}",
                    group.order()
                )));
            }
        }
        let fields: Vec<_> = e.terms().map(|(_, c)| c.field()).collect();
        if fields.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::FieldMismatch(fields[0].to_string(), "mixed".into()));
        }
    }
    if let (Some((_, a)), Some((_, b))) = (x.terms().next(), y.terms().next()) {
        if a.field() != b.field() {
            return Err(Error::FieldMismatch(
                a.field().to_string(),
                b.field().to_string(),
            ));
        }
    }
    Ok(x.mul(y, group))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use proptest::prelude::*;

    fn elem(field: Field, coeffs: &[i64]) -> GroupAlgebraElem {
        GroupAlgebraElem::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(g, &c)| (g, field.from_i64(c))),
        )
    }

    #[test]
    fn z2_over_q() {
        let g = FiniteGroup::cyclic(2, "g");
        let q = Field::Rationals;
        let prod = ga_multiply(&elem(q, &[1, 1]), &elem(q, &[1, -1]), &g).unwrap();
        assert!(prod.is_zero());
    }

    #[test]
    fn z2_over_f2() {
        let g = FiniteGroup::cyclic(2, "g");
        let f2 = Field::prime(2).unwrap();
        let x = elem(f2, &[1, 1]);
        assert!(ga_multiply(&x, &x, &g).unwrap().is_zero());
    }

    #[test]
    fn unit_and_mismatch() {
        let g = FiniteGroup::cyclic(3, "g");
        let q = Field::Rationals;
        let x = elem(q, &[2, 0, -5]);
        let one = GroupAlgebraElem::term(g.identity(), q.one());
        assert_eq!(ga_multiply(&one, &x, &g).unwrap(), x);
        let bad = GroupAlgebraElem::term(7, q.one());
        assert!(matches!(
            ga_multiply(&bad, &x, &g),
            Err(Error::GroupMismatch(_))
        ));
        let other = GroupAlgebraElem::term(0, Field::prime(3).unwrap().one());
        assert!(ga_multiply(&other, &x, &g).is_err());
    }

    fn dihedral(n: usize) -> FiniteGroup {
        // r^a s^b encoded as a + n*b
        let table = (0..2 * n)
            .map(|x| {
                (0..2 * n)
                    .map(|y| {
                        let (a1, b1) = (x % n, x / n);
                        let (a2, b2) = (y % n, y / n);
                        let a = if b1 == 0 {
                            (a1 + a2) % n
                        } else {
                            (a1 + n - a2) % n
                        };
                        a + n * ((b1 + b2) % 2)
                    })
                    .collect()
            })
            .collect();
        let names = (0..2 * n).map(|i| format!("x{i}")).collect();
        FiniteGroup::from_table(table, names).unwrap()
    }

    proptest! {
        #[test]
        fn associative_and_unital(n in 1usize..=12, seed in any::<u64>()) {
            let g = dihedral(n);
            let q = Field::Rationals;
            let mut s = seed;
            let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); ((s >> 33) % 7) as i64 - 3 };
            let mut rand_elem = || GroupAlgebraElem::from_terms((0..g.order()).map(|i| (i, q.from_i64(next()))));
            let (a, b, c) = (rand_elem(), rand_elem(), rand_elem());
            prop_assert_eq!(a.mul(&b, &g).mul(&c, &g), a.mul(&b.mul(&c, &g), &g));
            let one = GroupAlgebraElem::term(g.identity(), q.one());
            prop_assert_eq!(a.mul(&one, &g), a.clone());
            prop_assert_eq!(one.mul(&a, &g), a);
        }
    }
}
