//! Deterministic streams of `(λ, κ)` instances over fixed table slots.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElem;
use crate::params::{random_group_algebra, KappaParam, LambdaParam};
use crate::representation::Representation;
use crate::scalar::{Field, Scalar};

/// A free entry of the parameter tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// `λ(g, v_i)`.
    Lambda { g: usize, i: usize },
    /// `κ(v_i, v_j)` with `i < j`.
    Kappa { i: usize, j: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnumerationMode {
    /// Every assignment of `kG` values to the slots.
    Exhaustive,
    /// `count` seeded uniform draws.
    Random { count: usize },
}

/// Slots range over all of `kG`; everything else is taken from the base
/// tables.
#[derive(Clone, Debug)]
pub struct EnumerationSpec {
    pub field: Field,
    pub order: usize,
    pub slots: Vec<Slot>,
    pub base_lambda: LambdaParam,
    pub base_kappa: KappaParam,
    pub mode: EnumerationMode,
}

impl EnumerationSpec {
    /// All slots `λ(g, v_i)` for `g ≠ 1` and `κ(v_i, v_j)`, zero base.
    pub fn all_slots(rep: &Representation, mode: EnumerationMode) -> Self {
        let grp = rep.group();
        let m = rep.dim();
        let mut slots = Vec::new();
        for g in (0..grp.order()).filter(|&g| g != grp.identity()) {
            for i in 0..m {
                slots.push(Slot::Lambda { g, i });
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                slots.push(Slot::Kappa { i, j });
            }
        }
        EnumerationSpec {
            field: rep.field(),
            order: grp.order(),
            slots,
            base_lambda: LambdaParam::zero(grp.order(), m),
            base_kappa: KappaParam::zero(m),
            mode,
        }
    }
}

pub struct InstanceStream {
    spec: EnumerationSpec,
    elements: Vec<Scalar>,
    next: u64,
    total: u64,
    rng: ChaCha8Rng,
}

impl InstanceStream {
    pub fn total(&self) -> u64 {
        self.total
    }

    fn build(&self, values: Vec<GroupAlgebraElem>) -> (LambdaParam, KappaParam) {
        let mut lambda = self.spec.base_lambda.clone();
        let mut kappa = self.spec.base_kappa.clone();
        for (slot, x) in self.spec.slots.iter().zip(values) {
            match *slot {
                Slot::Lambda { g, i } => lambda.set(g, i, x),
                Slot::Kappa { i, j } => kappa.set(i, j, x).expect("validated slot"),
            }
        }
        (lambda, kappa)
    }

    /// The `index`-th `kG` value in base-`q` digit order (coefficient of
    /// element 0 least significant).
    fn ga_value(&self, mut index: u64) -> GroupAlgebraElem {
        let q = self.elements.len() as u64;
        let mut out = GroupAlgebraElem::zero();
        for g in 0..self.spec.order {
            out.add_term(g, self.elements[(index % q) as usize].clone());
            index /= q;
        }
        out
    }
}

impl Iterator for InstanceStream {
    type Item = (LambdaParam, KappaParam);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.total {
            return None;
        }
        let values = match self.spec.mode {
            EnumerationMode::Exhaustive => {
                let per_slot = (self.elements.len() as u64).pow(self.spec.order as u32);
                let mut index = self.next;
                (0..self.spec.slots.len())
                    .map(|_| {
                        let v = self.ga_value(index % per_slot);
                        index /= per_slot;
                        v
                    })
                    .collect()
            }
            EnumerationMode::Random { .. } => (0..self.spec.slots.len())
                .map(|_| random_group_algebra(self.spec.field, self.spec.order, &mut self.rng))
                .collect(),
        };
        self.next += 1;
        Some(self.build(values))
    }
}

pub fn enumerate_instances(spec: &EnumerationSpec, seed: u64) -> Result<InstanceStream> {
    for slot in &spec.slots {
        let ok = match *slot {
            Slot::Lambda { g, i } => g < spec.order && i < spec.base_lambda.dim(),
            Slot::Kappa { i, j } => i < j && j < spec.base_kappa.dim(),
        };
        if !ok {
            return Err(Error::Enumeration(format!("invalid slot {slot:?}")));
        }
    }
    let (elements, total) = match spec.mode {
        EnumerationMode::Exhaustive => {
            if !spec.field.is_finite() {
                return Err(Error::Enumeration(
                    "exhaustive enumeration needs a finite field".into(),
                ));
            }
            let elements = spec.field.elements()?;
            let exponent = spec.order * spec.slots.len();
            let total = (elements.len() as u64)
                .checked_pow(exponent as u32)
                .ok_or_else(|| Error::Enumeration("too many instances to enumerate".into()))?;
            (elements, total)
        }
        EnumerationMode::Random { count } => (Vec::new(), count as u64),
    };
    Ok(InstanceStream {
        spec: spec.clone(),
        elements,
        next: 0,
        total,
        rng: ChaCha8Rng::seed_from_u64(seed),
    })
}
