use rayon::prelude::*;

use super::system::{Letter, Normalizer, ReductionSystem, RuleRhs, Word};
use crate::skew::SkewElem;

/// An overlap `abc` with both `ab` and `bc` reducible, and the difference
/// of the normal forms reached by rewriting `ab` first versus `bc` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub word: Word,
    pub difference: SkewElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbiguityReport {
    pub ambiguities: Vec<Ambiguity>,
}

impl AmbiguityReport {
    pub fn is_confluent(&self) -> bool {
        self.ambiguities.iter().all(|a| a.difference.is_zero())
    }

    pub fn failures(&self) -> impl Iterator<Item = &Ambiguity> {
        self.ambiguities.iter().filter(|a| !a.difference.is_zero())
    }

    pub fn first_failure(&self) -> Option<&Ambiguity> {
        self.failures().next()
    }
}

/// All overlaps `g h v_i`, `g v_j v_i` (`j > i`) and `v_k v_j v_i`
/// (`k > j > i`), in that order.
pub fn overlap_words(sys: &ReductionSystem) -> Vec<Word> {
    let n = sys.rep().group().order() as u16;
    let m = sys.dim() as u16;
    let mut words = Vec::new();
    for g in 0..n {
        for h in 0..n {
            for i in 0..m {
                words.push(vec![Letter::G(g), Letter::G(h), Letter::V(i)]);
            }
        }
    }
    for g in 0..n {
        for j in 0..m {
            for i in 0..j {
                words.push(vec![Letter::G(g), Letter::V(j), Letter::V(i)]);
            }
        }
    }
    for k in 0..m {
        for j in 0..k {
            for i in 0..j {
                words.push(vec![Letter::V(k), Letter::V(j), Letter::V(i)]);
            }
        }
    }
    words
}

/// Rewrites the pair at `pos` once and normalizes the result.
fn reduce_at(norm: &mut Normalizer<'_>, w: &[Letter], pos: usize) -> SkewElem {
    let sys = norm.system();
    let mut out = SkewElem::zero();
    match sys
        .rule(w[pos], w[pos + 1])
        .expect("overlap pair is reducible")
    {
        RuleRhs::Group(gh) => {
            let mut nw = w[..pos].to_vec();
            nw.push(Letter::G(gh));
            nw.extend_from_slice(&w[pos + 2..]);
            out = norm.normal_form_word(&nw);
        }
        RuleRhs::Terms(terms) => {
            for (t, r, c) in terms.iter() {
                let mut nw = w[..pos].to_vec();
                nw.extend_from_slice(r);
                nw.extend_from_slice(&w[pos + 2..]);
                out.add_scaled(&norm.normal_form_word(&nw).shift_t(*t), c);
            }
        }
    }
    out
}

pub fn resolve_ambiguities(sys: &ReductionSystem) -> AmbiguityReport {
    let words = overlap_words(sys);
    let ambiguities = words
        .into_par_iter()
        .map_init(
            || Normalizer::new(sys),
            |norm, word| {
                let left = reduce_at(norm, &word, 0);
                let right = reduce_at(norm, &word, 1);
                Ambiguity {
                    difference: left.sub(&right),
                    word,
                }
            },
        )
        .collect();
    AmbiguityReport { ambiguities }
}
