//! The parameter maps `λ: kG ⊗ V → kG` and `κ: V ⊗ V → kG`.

mod builders;
mod structural;

use std::collections::BTreeMap;

use rand::Rng;

pub use builders::{build_lambda_coxeter, extend_lambda_by_recursion};
pub use structural::{validate_structural, StructuralReport, StructuralViolation};

use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElem;
use crate::matrix::Matrix;
use crate::representation::Representation;
use crate::scalar::{Field, Scalar};
use crate::skew::{SkewElem, SkewMonomial};

/// `λ(g, v_i)` for every group element and basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LambdaParam {
    order: usize,
    dim: usize,
    table: Vec<GroupAlgebraElem>,
}

impl LambdaParam {
    pub fn zero(order: usize, dim: usize) -> Self {
        LambdaParam {
            order,
            dim,
            table: vec![GroupAlgebraElem::zero(); order * dim],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, g: usize, i: usize) -> &GroupAlgebraElem {
        &self.table[g * self.dim + i]
    }

    pub fn set(&mut self, g: usize, i: usize, x: GroupAlgebraElem) {
        self.table[g * self.dim + i] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(GroupAlgebraElem::is_zero)
    }

    /// `λ(g, v)` for a coordinate vector `v`.
    pub fn eval(&self, g: usize, v: &[Scalar]) -> GroupAlgebraElem {
        let mut out = GroupAlgebraElem::zero();
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (h, x) in self.get(g, i).terms() {
                out.add_term(h, x * c);
            }
        }
        out
    }

    /// `λ(x, v)` with `λ` extended linearly over `kG` in its first slot.
    pub fn eval_ga(&self, x: &GroupAlgebraElem, v: &[Scalar]) -> GroupAlgebraElem {
        let mut out = GroupAlgebraElem::zero();
        for (g, c) in x.terms() {
            for (h, y) in self.eval(g, v).terms() {
                out.add_term(h, y * c);
            }
        }
        out
    }

    /// `λ_h(g, v)`: the coefficient of `h` in `λ(g, v)`.
    pub fn component(&self, h: usize, g: usize, v: &[Scalar], field: Field) -> Scalar {
        self.eval(g, v)
            .coeff(h)
            .cloned()
            .unwrap_or_else(|| field.zero())
    }

    /// Checks that table shapes and group indices fit `rep`.
    pub fn check_against(&self, rep: &Representation) -> Result<()> {
        if self.order != rep.group().order() || self.dim != rep.dim() {
            return Err(Error::Parameter(format!(
                "lambda table is {}x{}, representation is {}x{}",
                self.order,
                self.dim,
                rep.group().order(),
                rep.dim()
            )));
        }
        check_values(self.table.iter(), rep)
    }

    /// The same map written in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix) -> LambdaParam {
        let mut out = LambdaParam::zero(self.order, self.dim);
        for g in 0..self.order {
            for i in 0..self.dim {
                out.set(g, i, self.eval(g, &p.column(i)));
            }
        }
        out
    }
}

/// Alternating `κ`, stored on pairs `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KappaParam {
    dim: usize,
    table: BTreeMap<(usize, usize), GroupAlgebraElem>,
}

impl KappaParam {
    pub fn zero(dim: usize) -> Self {
        KappaParam {
            dim,
            table: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `κ(v_i, v_j) = x` (and implicitly `κ(v_j, v_i) = −x`).
    pub fn set(&mut self, i: usize, j: usize, x: GroupAlgebraElem) -> Result<()> {
        if i >= self.dim || j >= self.dim {
            return Err(Error::Parameter(format!(
                "kappa index out of range: ({i}, {j})"
            )));
        }
        match i.cmp(&j) {
            std::cmp::Ordering::Equal if !x.is_zero() => Err(Error::Parameter(
                "kappa must vanish on equal arguments".into(),
            )),
            std::cmp::Ordering::Equal => Ok(()),
            std::cmp::Ordering::Less => {
                self.store(i, j, x);
                Ok(())
            }
            std::cmp::Ordering::Greater => {
                self.store(j, i, x.neg());
                Ok(())
            }
        }
    }

    fn store(&mut self, i: usize, j: usize, x: GroupAlgebraElem) {
        if x.is_zero() {
            self.table.remove(&(i, j));
        } else {
            self.table.insert((i, j), x);
        }
    }

    /// `κ(v_i, v_j)`.
    pub fn get(&self, i: usize, j: usize) -> GroupAlgebraElem {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => GroupAlgebraElem::zero(),
            std::cmp::Ordering::Less => self.table.get(&(i, j)).cloned().unwrap_or_default(),
            std::cmp::Ordering::Greater => self
                .table
                .get(&(j, i))
                .map(GroupAlgebraElem::neg)
                .unwrap_or_default(),
        }
    }

    /// Nonzero entries `(i, j, κ(v_i, v_j))` with `i < j`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GroupAlgebraElem)> {
        self.table.iter().map(|(&(i, j), x)| (i, j, x))
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// Bilinear extension `κ(u, v)`.
    pub fn eval(&self, u: &[Scalar], v: &[Scalar]) -> GroupAlgebraElem {
        let mut out = GroupAlgebraElem::zero();
        for (&(i, j), x) in &self.table {
            // κ(u,v) = Σ_{i<j} (u_i v_j − u_j v_i) κ(v_i, v_j)
            let c = &(&u[i] * &v[j]) - &(&u[j] * &v[i]);
            if c.is_zero() {
                continue;
            }
            for (h, y) in x.terms() {
                out.add_term(h, y * &c);
            }
        }
        out
    }

    /// `κ_g(u, v)`.
    pub fn component(&self, g: usize, u: &[Scalar], v: &[Scalar], field: Field) -> Scalar {
        self.eval(u, v)
            .coeff(g)
            .cloned()
            .unwrap_or_else(|| field.zero())
    }

    pub fn check_against(&self, rep: &Representation) -> Result<()> {
        if self.dim != rep.dim() {
            return Err(Error::Parameter("kappa dimension does not match V".into()));
        }
        check_values(self.table.values(), rep)
    }

    pub fn change_basis(&self, p: &Matrix) -> KappaParam {
        let mut out = KappaParam::zero(self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                out.store(i, j, self.eval(&p.column(i), &p.column(j)));
            }
        }
        out
    }
}

/// A value of a generalized `κ` in `kG ⊕ (V ⊗ kG)`:
/// `constant + Σ_k v_k · linear[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralValue {
    pub constant: GroupAlgebraElem,
    pub linear: Vec<GroupAlgebraElem>,
}

impl GeneralValue {
    pub fn zero(dim: usize) -> Self {
        GeneralValue {
            constant: GroupAlgebraElem::zero(),
            linear: vec![GroupAlgebraElem::zero(); dim],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.linear.iter().all(GroupAlgebraElem::is_zero)
    }

    pub fn neg(&self) -> Self {
        GeneralValue {
            constant: self.constant.neg(),
            linear: self.linear.iter().map(GroupAlgebraElem::neg).collect(),
        }
    }

    pub fn to_skew(&self) -> SkewElem {
        let dim = self.linear.len();
        let mut out = SkewElem::from_group_algebra(&self.constant, dim);
        for (k, x) in self.linear.iter().enumerate() {
            let mut exps = vec![0; dim];
            exps[k] = 1;
            for (g, c) in x.terms() {
                out.add_term(SkewMonomial::new(0, exps.clone(), g), c.clone());
            }
        }
        out
    }

    /// Inverse of [`GeneralValue::to_skew`]; `None` if `x` has terms of
    /// degree above one or carries `t`.
    pub fn from_skew(x: &SkewElem, dim: usize) -> Option<Self> {
        let mut out = GeneralValue::zero(dim);
        for (m, c) in x.terms() {
            if m.t > 0 {
                return None;
            }
            match m.degree() {
                0 => out.constant.add_term(m.group, c.clone()),
                1 => {
                    let k = m.exps.iter().position(|&e| e == 1)?;
                    out.linear[k].add_term(m.group, c.clone());
                }
                _ => return None,
            }
        }
        Some(out)
    }
}

/// Alternating `κ` with values in `kG ⊕ (V ⊗ kG)`, stored on pairs `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralKappa {
    dim: usize,
    table: BTreeMap<(usize, usize), GeneralValue>,
}

impl GeneralKappa {
    pub fn zero(dim: usize) -> Self {
        GeneralKappa {
            dim,
            table: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, i: usize, j: usize, x: GeneralValue) -> Result<()> {
        if i >= self.dim || j >= self.dim || x.linear.len() != self.dim {
            return Err(Error::Parameter("general kappa entry out of range".into()));
        }
        let (key, val) = match i.cmp(&j) {
            std::cmp::Ordering::Equal if x.is_zero() => return Ok(()),
            std::cmp::Ordering::Equal => {
                return Err(Error::Parameter(
                    "kappa must vanish on equal arguments".into(),
                ))
            }
            std::cmp::Ordering::Less => ((i, j), x),
            std::cmp::Ordering::Greater => ((j, i), x.neg()),
        };
        if val.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, val);
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> GeneralValue {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => GeneralValue::zero(self.dim),
            std::cmp::Ordering::Less => self
                .table
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| GeneralValue::zero(self.dim)),
            std::cmp::Ordering::Greater => self
                .table
                .get(&(j, i))
                .map(GeneralValue::neg)
                .unwrap_or_else(|| GeneralValue::zero(self.dim)),
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &GeneralValue)> {
        self.table.iter().map(|(&(i, j), x)| (i, j, x))
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    /// True when no value has a `V ⊗ kG` part.
    pub fn is_plain(&self) -> bool {
        self.table
            .values()
            .all(|x| x.linear.iter().all(GroupAlgebraElem::is_zero))
    }

    pub fn from_kappa(kappa: &KappaParam) -> Self {
        let mut out = GeneralKappa::zero(kappa.dim());
        for (i, j, x) in kappa.entries() {
            let mut val = GeneralValue::zero(kappa.dim());
            val.constant = x.clone();
            out.table.insert((i, j), val);
        }
        out
    }

    /// The `kG`-valued part, if there is no `V ⊗ kG` part.
    pub fn to_kappa(&self) -> Option<KappaParam> {
        if !self.is_plain() {
            return None;
        }
        let mut out = KappaParam::zero(self.dim);
        for (&(i, j), x) in &self.table {
            out.store(i, j, x.constant.clone());
        }
        Some(out)
    }

    pub fn check_against(&self, rep: &Representation) -> Result<()> {
        if self.dim != rep.dim() {
            return Err(Error::Parameter("kappa dimension does not match V".into()));
        }
        check_values(
            self.table
                .values()
                .flat_map(|x| std::iter::once(&x.constant).chain(x.linear.iter())),
            rep,
        )
    }
}

fn check_values<'a>(
    values: impl Iterator<Item = &'a GroupAlgebraElem>,
    rep: &Representation,
) -> Result<()> {
    for x in values {
        if let Some(m) = x.max_index() {
            if m >= rep.group().order() {
                return Err(Error::GroupMismatch(format!(
                    "group index {m} out of range"
                )));
            }
        }
        for (_, c) in x.terms() {
            if c.field() != rep.field() {
                return Err(Error::FieldMismatch(
                    c.field().to_string(),
                    rep.field().to_string(),
                ));
            }
        }
    }
    Ok(())
}

/// A uniformly random scalar: over `F_p` any residue, over `Q` an integer in
/// `[-bound, bound]`.
pub fn random_scalar<R: Rng>(field: Field, rng: &mut R, bound: i64) -> Scalar {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        Field::Rationals => field.from_i64(rng.gen_range(-bound..=bound)),
    }
}

pub fn random_group_algebra<R: Rng>(field: Field, order: usize, rng: &mut R) -> GroupAlgebraElem {
    GroupAlgebraElem::from_terms((0..order).map(|g| (g, random_scalar(field, rng, 2))))
}

/// Random `λ` with `λ(1, ·) = 0`, every other entry uniform over `kG`.
pub fn random_lambda<R: Rng>(rep: &Representation, rng: &mut R) -> LambdaParam {
    let order = rep.group().order();
    let mut out = LambdaParam::zero(order, rep.dim());
    for g in (0..order).filter(|&g| g != rep.group().identity()) {
        for i in 0..rep.dim() {
            out.set(g, i, random_group_algebra(rep.field(), order, rng));
        }
    }
    out
}

pub fn random_kappa<R: Rng>(rep: &Representation, rng: &mut R) -> KappaParam {
    let mut out = KappaParam::zero(rep.dim());
    for i in 0..rep.dim() {
        for j in i + 1..rep.dim() {
            out.store(
                i,
                j,
                random_group_algebra(rep.field(), rep.group().order(), rng),
            );
        }
    }
    out
}

/// Random invertible matrix (retrying until one is found).
pub fn random_invertible<R: Rng>(field: Field, dim: usize, rng: &mut R) -> Matrix {
    loop {
        let rows = (0..dim)
            .map(|_| (0..dim).map(|_| random_scalar(field, rng, 3)).collect())
            .collect();
        let m = Matrix::from_rows(field, rows).expect("square");
        if m.is_invertible() {
            return m;
        }
    }
}
