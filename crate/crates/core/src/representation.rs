//! Linear actions of finite groups on `V = k^m`.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::group::{word_name, FiniteGroup};
use crate::matrix::{Matrix, Vector};
use crate::scalar::{Field, Scalar};

/// `ρ: G → GL(V)`. Column `i` of `ρ(g)` holds the coordinates of `^g v_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    group: FiniteGroup,
    field: Field,
    dim: usize,
    matrices: Vec<Matrix>,
}

/// Coarse type of a group element by the codimension of its fixed space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementClass {
    IdentityAction,
    Reflection,
    Codim2,
    Other,
}

impl Representation {
    /// Checks `ρ(e) = I`, invertibility and `ρ(g)ρ(h) = ρ(gh)` on all pairs.
    pub fn new(
        group: FiniteGroup,
        field: Field,
        dim: usize,
        matrices: Vec<Matrix>,
    ) -> Result<Representation> {
        if matrices.len() != group.order() {
            return Err(Error::Representation(format!(
                "{} matrices for a group of order {}",
                matrices.len(),
                group.order()
            )));
        }
        for m in &matrices {
            if m.field() != field {
                return Err(Error::FieldMismatch(
                    m.field().to_string(),
                    field.to_string(),
                ));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Representation(format!(
                    "expected {dim}x{dim} matrices"
                )));
            }
            if !m.is_invertible() {
                return Err(Error::Representation(format!("singular matrix {m}")));
            }
        }
        if !matrices[group.identity()].is_identity() {
            return Err(Error::Representation("identity must act trivially".into()));
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                if matrices[g].mul(&matrices[h])? != matrices[group.mul(g, h)] {
                    return Err(Error::Representation(format!(
                        "not a homomorphism at ({}, {})",
                        group.name(g),
                        group.name(h)
                    )));
                }
            }
        }
        Ok(Representation {
            group,
            field,
            dim,
            matrices,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, g: usize) -> &Matrix {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// `^g v` for a coordinate vector `v`.
    pub fn act(&self, g: usize, v: &[Scalar]) -> Vector {
        self.matrices[g]
            .apply(v)
            .expect("vector length matches dim")
    }

    /// `^g v_i`.
    pub fn act_basis(&self, g: usize, i: usize) -> Vector {
        self.matrices[g].column(i)
    }

    /// Basis of `V^g` (kernel of `ρ(g) − I` in reduced echelon order) and the
    /// codimension `m − dim V^g`.
    pub fn fixed_space(&self, g: usize) -> Result<(Vec<Vector>, usize)> {
        if g >= self.group.order() {
            return Err(Error::OutOfRange(format!("no group element {g}")));
        }
        let shifted = self.matrices[g].sub(&Matrix::identity(self.field, self.dim))?;
        let basis = shifted.kernel();
        let codim = self.dim - basis.len();
        Ok((basis, codim))
    }

    pub fn classify_element(&self, g: usize) -> Result<ElementClass> {
        Ok(match self.fixed_space(g)?.1 {
            0 => ElementClass::IdentityAction,
            1 => ElementClass::Reflection,
            2 => ElementClass::Codim2,
            _ => ElementClass::Other,
        })
    }

    /// Image of `ρ(g) − I` as a spanning list (its nonzero columns).
    pub fn image_of_shift(&self, g: usize) -> Vec<Vector> {
        let shifted = self.matrices[g]
            .sub(&Matrix::identity(self.field, self.dim))
            .expect("square");
        (0..self.dim)
            .map(|c| shifted.column(c))
            .filter(|c| c.iter().any(|x| !x.is_zero()))
            .collect()
    }

    /// Same group and action on `dim` coordinates after the change of basis
    /// `P` (new basis vectors are the columns of `P`): `ρ'(g) = P⁻¹ρ(g)P`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Representation> {
        let p_inv = p.inverse()?;
        let matrices = self
            .matrices
            .iter()
            .map(|m| p_inv.mul(m)?.mul(p))
            .collect::<Result<Vec<_>>>()?;
        Ok(Representation {
            group: self.group.clone(),
            field: self.field,
            dim: self.dim,
            matrices,
        })
    }
}

/// Closes `mats` under multiplication, naming each element by the shortest
/// word in `names` found breadth-first. The group's generators are the
/// given matrices, in order.
pub fn close_generators(mats: &[Matrix], names: &[&str], cap: usize) -> Result<Representation> {
    let first = mats
        .first()
        .ok_or_else(|| Error::Representation("at least one generator is required".into()))?;
    if names.len() != mats.len() {
        return Err(Error::Representation(
            "one name per generator is required".into(),
        ));
    }
    let field = first.field();
    let dim = first.rows();
    for m in mats {
        if m.field() != field {
            return Err(Error::FieldMismatch(
                m.field().to_string(),
                field.to_string(),
            ));
        }
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::Representation(
                "generators must be square of equal size".into(),
            ));
        }
        if !m.is_invertible() {
            return Err(Error::Representation(format!("singular generator {m}")));
        }
    }

    let mut elements = vec![Matrix::identity(field, dim)];
    let mut index: HashMap<Matrix, usize> = HashMap::from([(elements[0].clone(), 0)]);
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    // right[x][s] = x * mats[s]
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let mut row = Vec::with_capacity(mats.len());
        for (s, m) in mats.iter().enumerate() {
            let y = elements[x].mul(m)?;
            let id = match index.get(&y) {
                Some(&id) => id,
                None => {
                    if elements.len() == cap {
                        return Err(Error::GroupTooLarge(cap));
                    }
                    let id = elements.len();
                    index.insert(y.clone(), id);
                    elements.push(y);
                    let mut w = words[x].clone();
                    w.push(s);
                    words.push(w);
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        if right.len() <= x {
            right.resize(x + 1, Vec::new());
        }
        right[x] = row;
    }

    let n = elements.len();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| words[b].iter().fold(a, |acc, &s| right[acc][s]))
                .collect()
        })
        .collect();
    let elem_names = words
        .iter()
        .map(|w| word_name(&w.iter().map(|&s| names[s]).collect::<Vec<_>>()))
        .collect();
    let mut group = FiniteGroup::from_table_trusted(table, elem_names)?;
    let gen_ids = mats.iter().map(|m| index[m]).collect();
    group.set_generators(gen_ids)?;
    Representation::new(group, field, dim, elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unipotent_over_f2() {
        let f2 = Field::prime(2).unwrap();
        let rep =
            close_generators(&[Matrix::from_i64(f2, &[&[1, 1], &[0, 1]])], &["g"], 1024).unwrap();
        assert_eq!(rep.group().order(), 2);
        let g = rep.group().parse_element("g").unwrap();
        let (basis, codim) = rep.fixed_space(g).unwrap();
        assert_eq!(codim, 1);
        assert_eq!(basis, vec![vec![f2.one(), f2.zero()]]);
        assert_eq!(rep.classify_element(g).unwrap(), ElementClass::Reflection);
        assert_eq!(
            rep.classify_element(rep.group().identity()).unwrap(),
            ElementClass::IdentityAction
        );
    }

    #[test]
    fn trivial_and_infinite() {
        let q = Field::Rationals;
        let rep = close_generators(&[Matrix::identity(q, 2)], &["e"], 1024).unwrap();
        assert_eq!(rep.group().order(), 1);
        let err = close_generators(&[Matrix::from_i64(q, &[&[1, 1], &[0, 1]])], &["g"], 1024);
        assert_eq!(err.unwrap_err(), Error::GroupTooLarge(1024));
        let singular = close_generators(&[Matrix::from_i64(q, &[&[1, 1], &[1, 1]])], &["g"], 8);
        assert!(singular.is_err());
    }

    #[test]
    fn minus_identity_has_codim_two() {
        let q = Field::Rationals;
        let rep =
            close_generators(&[Matrix::from_i64(q, &[&[-1, 0], &[0, -1]])], &["z"], 8).unwrap();
        let z = rep.group().parse_element("z").unwrap();
        let (basis, codim) = rep.fixed_space(z).unwrap();
        assert!(basis.is_empty());
        assert_eq!(codim, 2);
        assert_eq!(rep.classify_element(z).unwrap(), ElementClass::Codim2);
    }

    #[test]
    fn s3_reflection_representation() {
        let q = Field::Rationals;
        let s = Matrix::from_i64(q, &[&[-1, 1], &[0, 1]]);
        let t = Matrix::from_i64(q, &[&[1, 0], &[1, -1]]);
        let rep = close_generators(&[s, t], &["s", "t"], 1024).unwrap();
        let g = rep.group();
        assert_eq!(g.order(), 6);
        for x in 0..6 {
            let (basis, codim) = rep.fixed_space(x).unwrap();
            assert_eq!(basis.len() + codim, 2);
            for u in &basis {
                assert_eq!(&rep.act(x, u), u);
            }
            for h in 0..6 {
                let conj = g.mul(g.mul(h, x), g.inv(h));
                assert_eq!(
                    rep.classify_element(x).unwrap(),
                    rep.classify_element(conj).unwrap()
                );
            }
        }
        let refl = (0..6)
            .filter(|&x| rep.classify_element(x).unwrap() == ElementClass::Reflection)
            .count();
        assert_eq!(refl, 3);
    }
}
