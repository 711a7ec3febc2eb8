use std::collections::{BTreeMap, HashMap, VecDeque};

use super::ambiguity::resolve_ambiguities;
use super::system::{Grading, Letter, Normalizer, ReductionSystem};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::skew::{SkewElem, SkewMonomial};

/// Echelon basis of sparse row vectors; pivots are the smallest column
/// index present in each row.
struct Echelon {
    rows: HashMap<usize, BTreeMap<usize, Scalar>>,
}

impl Echelon {
    fn new() -> Self {
        Echelon {
            rows: HashMap::new(),
        }
    }

    /// Reduces `v` against the basis; inserts it if independent.
    fn insert(&mut self, mut v: BTreeMap<usize, Scalar>) -> bool {
        while let Some((&col, c)) = v.iter().next() {
            let c = c.clone();
            match self.rows.get(&col) {
                Some(row) => {
                    for (k, x) in row {
                        let entry = v.entry(*k).or_insert_with(|| c.field().zero());
                        *entry = &*entry - &(&c * x);
                    }
                    v.retain(|_, x| !x.is_zero());
                }
                None => {
                    let inv = c.inv().expect("nonzero pivot");
                    let row = v.into_iter().map(|(k, x)| (k, &x * &inv)).collect();
                    self.rows.insert(col, row);
                    return true;
                }
            }
        }
        false
    }
}

/// Normal PBW monomials of degree `≤ max`, ordered by decreasing degree so
/// that echelon pivots sit in the top-degree part.
fn monomial_index(dim: usize, order: usize, max: u32) -> HashMap<SkewMonomial, usize> {
    let mut by_degree: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max as usize + 1];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
    }
    for d in 0..=max {
        let mut cur = vec![0; dim];
        if dim == 0 {
            if d == 0 {
                by_degree[0].push(Vec::new());
            }
            continue;
        }
        rec(0, d, &mut cur, &mut by_degree[d as usize]);
    }
    let mut index = HashMap::new();
    for d in (0..=max).rev() {
        for exps in &by_degree[d as usize] {
            for g in 0..order {
                let next = index.len();
                index.insert(SkewMonomial::new(0, exps.clone(), g), next);
            }
        }
    }
    index
}

/// Dimensions of the filtered pieces `F_0 ⊆ F_1 ⊆ … ⊆ F_{max}` of the
/// algebra presented by `sys`.
///
/// The span of normal words is cut down by the subspace generated from the
/// ambiguity differences under left and right multiplication by generators,
/// computed up to degree `max + 2`. For a confluent system nothing is cut
/// and the counts are the PBW counts.
pub fn filtered_dimensions(sys: &ReductionSystem, max: u32) -> Result<Vec<usize>> {
    if sys.grading() != Grading::Untwisted {
        return Err(Error::Precondition(
            "graded dimensions need the untwisted system".into(),
        ));
    }
    let bound = max + 2;
    let order = sys.rep().group().order();
    let dim = sys.dim();
    let index = monomial_index(dim, order, bound);
    let degree_of_col: Vec<u32> = {
        let mut v = vec![0; index.len()];
        for (m, &c) in &index {
            v[c] = m.degree();
        }
        v
    };

    let report = resolve_ambiguities(sys);
    let mut echelon = Echelon::new();
    if !report.is_confluent() {
        let to_row = |x: &SkewElem| -> Option<BTreeMap<usize, Scalar>> {
            if x.degree().is_some_and(|d| d > bound) {
                return None;
            }
            Some(x.terms().map(|(m, c)| (index[m], c.clone())).collect())
        };
        let mut letters: Vec<Letter> = (0..dim).map(|i| Letter::V(i as u16)).collect();
        letters.extend(
            sys.rep()
                .group()
                .generators()
                .iter()
                .map(|&g| Letter::G(g as u16)),
        );
        let letter_elems: Vec<SkewElem> = letters
            .iter()
            .map(|l| match *l {
                Letter::V(i) => SkewElem::basis_vector(
                    sys.rep().field(),
                    dim,
                    i as usize,
                    sys.rep().group().identity(),
                ),
                Letter::G(g) => SkewElem::group_elem(dim, g as usize, sys.rep().field().one()),
            })
            .collect();
        let mut norm = Normalizer::new(sys);
        let mut queue: VecDeque<SkewElem> =
            report.failures().map(|a| a.difference.clone()).collect();
        while let Some(x) = queue.pop_front() {
            let Some(row) = to_row(&x) else { continue };
            if !echelon.insert(row) {
                continue;
            }
            for l in &letter_elems {
                for y in [norm.multiply(l, &x), norm.multiply(&x, l)] {
                    if !y.is_zero() && y.degree().is_some_and(|d| d <= bound) {
                        queue.push_back(y);
                    }
                }
            }
        }
    }

    let mut out = Vec::with_capacity(max as usize + 1);
    for n in 0..=max {
        let words = index.values().filter(|&&c| degree_of_col[c] <= n).count();
        let cut = echelon
            .rows
            .keys()
            .filter(|&&pivot| degree_of_col[pivot] <= n)
            .count();
        out.push(words - cut);
    }
    Ok(out)
}

/// `dim F_n − dim F_{n−1}`.
pub fn graded_dimension(sys: &ReductionSystem, n: u32) -> Result<usize> {
    let dims = filtered_dimensions(sys, n)?;
    Ok(if n == 0 {
        dims[0]
    } else {
        dims[n as usize] - dims[n as usize - 1]
    })
}
