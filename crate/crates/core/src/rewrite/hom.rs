use rayon::prelude::*;

use super::system::{FreeElem, Grading, Letter, Normalizer, ReductionSystem};
use crate::error::{Error, Result};
use crate::group_algebra::GroupAlgebraElem;
use crate::matrix::Matrix;
use crate::params::{GeneralKappa, LambdaParam};
use crate::representation::Representation;
use crate::skew::{SkewElem, SkewMonomial};

/// A defining relation of a source algebra, as an element of the free
/// algebra that must vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub elem: FreeElem,
}

/// Relations of `H_{λ,κ}`: `e − 1`, `g·h − (gh)`, `g v_i − ^g v_i g − λ(g, v_i)`
/// and `v_j v_i − v_i v_j − κ(v_j, v_i)` for `i < j`.
pub fn source_relations(
    rep: &Representation,
    lambda: &LambdaParam,
    kappa: &GeneralKappa,
    basis: &[String],
) -> Vec<Relation> {
    let grp = rep.group();
    let f = rep.field();
    let one = f.one();
    let minus = -&one;
    let names = grp.names();
    let g16 = |g: usize| Letter::G(g as u16);
    let v16 = |i: usize| Letter::V(i as u16);
    let mut out = Vec::new();

    let mut unit = FreeElem::word(vec![g16(grp.identity())], one.clone());
    unit.add_term(0, Vec::new(), minus.clone());
    out.push(Relation {
        label: format!("{} - 1", names[grp.identity()]),
        elem: unit,
    });
    for g in 0..grp.order() {
        for h in 0..grp.order() {
            let mut r = FreeElem::word(vec![g16(g), g16(h)], one.clone());
            r.add_term(0, vec![g16(grp.mul(g, h))], minus.clone());
            out.push(Relation {
                label: format!("{} {} - {}", names[g], names[h], names[grp.mul(g, h)]),
                elem: r,
            });
        }
    }
    for (g, gname) in names.iter().enumerate() {
        for (i, vname) in basis.iter().enumerate().take(rep.dim()) {
            let mut r = FreeElem::word(vec![g16(g), v16(i)], one.clone());
            for (j, c) in rep.act_basis(g, i).into_iter().enumerate() {
                r.add_term(0, vec![v16(j), g16(g)], -c);
            }
            for (h, c) in lambda.get(g, i).terms() {
                r.add_term(0, vec![g16(h)], -c);
            }
            out.push(Relation {
                label: format!("{gname} {vname} - ^{gname} {vname} {gname} - lambda"),
                elem: r,
            });
        }
    }
    for j in 0..rep.dim() {
        for i in 0..j {
            let mut r = FreeElem::word(vec![v16(j), v16(i)], one.clone());
            r.add_term(0, vec![v16(i), v16(j)], minus.clone());
            let val = kappa.get(j, i);
            for (h, c) in val.constant.terms() {
                r.add_term(0, vec![g16(h)], -c);
            }
            for (k, x) in val.linear.iter().enumerate() {
                for (h, c) in x.terms() {
                    r.add_term(0, vec![v16(k), g16(h)], -c);
                }
            }
            out.push(Relation {
                label: format!(
                    "{} {} - {} {} - kappa",
                    basis[j], basis[i], basis[i], basis[j]
                ),
                elem: r,
            });
        }
    }
    out
}

/// Images of all group elements and basis vectors in the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomImages {
    pub groups: Vec<SkewElem>,
    pub vectors: Vec<SkewElem>,
}

impl HomImages {
    pub fn image(&self, l: Letter) -> &SkewElem {
        match l {
            Letter::G(g) => &self.groups[g as usize],
            Letter::V(i) => &self.vectors[i as usize],
        }
    }

    /// Extends images of the group's generators multiplicatively along the
    /// group's fixed words (the empty word gives 1).
    pub fn from_generators(
        target: &ReductionSystem,
        norm: &mut Normalizer<'_>,
        generator_images: &[SkewElem],
        vectors: Vec<SkewElem>,
    ) -> Self {
        let grp = target.rep().group();
        let mut groups = vec![SkewElem::zero(); grp.order()];
        groups[grp.identity()] = SkewElem::one(target.rep().field(), target.dim(), grp);
        for &x in grp.bfs_order().iter().skip(1) {
            let (parent, pos) = grp.tree_parent(x).expect("non-identity has a parent");
            groups[x] = norm.multiply(&groups[parent].clone(), &generator_images[pos]);
        }
        HomImages { groups, vectors }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomFailure {
    pub relation: String,
    pub residual: SkewElem,
}

/// Image of a free element under the letter assignment.
pub fn apply_images(norm: &mut Normalizer<'_>, images: &HomImages, x: &FreeElem) -> SkewElem {
    let sys = norm.system();
    let one = SkewElem::one(sys.rep().field(), sys.dim(), sys.rep().group());
    let mut out = SkewElem::zero();
    for (t, w, c) in x.terms() {
        let mut acc = one.clone();
        for l in w {
            acc = norm.multiply(&acc, images.image(*l));
        }
        out.add_scaled(&acc.shift_t(t), c);
    }
    out
}

/// Checks that every relation maps to zero in the (confluent) target.
/// Returns the first relation that does not, with its residual.
pub fn verify_homomorphism(
    images: &HomImages,
    relations: &[Relation],
    target: &ReductionSystem,
) -> Result<Option<HomFailure>> {
    if !target.is_confluent() {
        return Err(Error::NotConfluent);
    }
    let mut norm = Normalizer::new(target);
    Ok(first_failure(&mut norm, images, relations))
}

fn first_failure(
    norm: &mut Normalizer<'_>,
    images: &HomImages,
    relations: &[Relation],
) -> Option<HomFailure> {
    relations.iter().find_map(|r| {
        let residual = apply_images(norm, images, &r.elem);
        (!residual.is_zero()).then(|| HomFailure {
            relation: r.label.clone(),
            residual,
        })
    })
}

/// A candidate source algebra for [`iso_search`].
#[derive(Clone, Debug)]
pub struct SourceAlgebra {
    pub label: String,
    pub lambda: LambdaParam,
    pub kappa: GeneralKappa,
}

/// Every `H_{0,κ'}` with `κ'` ranging over all alternating `kG`-valued tables.
pub fn plain_kappa_sources(rep: &Representation) -> Result<Vec<SourceAlgebra>> {
    let grp = rep.group();
    let m = rep.dim();
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let values = all_group_algebra(rep)?;
    let total = (values.len() as u64)
        .checked_pow(pairs.len() as u32)
        .filter(|&t| t <= 1 << 20)
        .ok_or_else(|| Error::OutOfRange("too many kappa candidates".into()))?;
    let mut out = Vec::new();
    for mut idx in 0..total {
        let mut kappa = crate::params::KappaParam::zero(m);
        let mut parts = Vec::new();
        for &(i, j) in &pairs {
            let x = values[(idx % values.len() as u64) as usize].clone();
            idx /= values.len() as u64;
            parts.push(
                SkewElem::from_group_algebra(&x, m)
                    .render(&crate::pbw::default_basis_names(m), grp),
            );
            kappa.set(i, j, x)?;
        }
        out.push(SourceAlgebra {
            label: format!("kappa' = [{}]", parts.join("; ")),
            lambda: LambdaParam::zero(grp.order(), m),
            kappa: GeneralKappa::from_kappa(&kappa),
        });
    }
    Ok(out)
}

fn all_group_algebra(rep: &Representation) -> Result<Vec<GroupAlgebraElem>> {
    let elements = rep.field().elements()?;
    let n = rep.group().order();
    let q = elements.len() as u64;
    let total = q
        .checked_pow(n as u32)
        .filter(|&t| t <= 1 << 16)
        .ok_or_else(|| Error::OutOfRange("group algebra too large to enumerate".into()))?;
    Ok((0..total)
        .map(|mut idx| {
            GroupAlgebraElem::from_terms((0..n).map(|g| {
                let c = elements[(idx % q) as usize].clone();
                idx /= q;
                (g, c)
            }))
        })
        .collect())
}

/// `Σ_j v_j a_j + b` from coefficient lists.
fn filtered_degree_one(
    dim: usize,
    linear: &[&GroupAlgebraElem],
    constant: &GroupAlgebraElem,
) -> SkewElem {
    let mut out = SkewElem::from_group_algebra(constant, dim);
    for (j, a) in linear.iter().enumerate() {
        for (h, c) in a.terms() {
            let mut exps = vec![0; dim];
            exps[j] = 1;
            out.add_term(SkewMonomial::new(0, exps, h), c.clone());
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct FoundIso {
    pub source: usize,
    pub source_label: String,
    /// `f` on the group's generators, in generator order.
    pub generator_images: Vec<SkewElem>,
    pub vector_images: Vec<SkewElem>,
}

#[derive(Clone, Debug)]
pub struct IsoSearchResult {
    pub candidates: u64,
    pub found: Vec<FoundIso>,
}

/// Rank of the coordinate matrix of `elems` over the normal monomials
/// they involve.
fn rank_of(field: crate::scalar::Field, elems: &[SkewElem]) -> usize {
    let mut cols: Vec<SkewMonomial> = elems
        .iter()
        .flat_map(|e| e.terms().map(|(m, _)| m.clone()))
        .collect();
    cols.sort();
    cols.dedup();
    let rows = elems
        .iter()
        .map(|e| {
            cols.iter()
                .map(|m| e.coeff(m).cloned().unwrap_or_else(|| field.zero()))
                .collect()
        })
        .collect();
    Matrix::from_rows(field, rows).expect("rectangular").rank()
}

/// Exhaustive search for filtered isomorphisms from each source onto
/// `target`.
///
/// Candidates send every group generator into `kG` and every basis vector
/// into `V ⊗ kG ⊕ kG`. A candidate survives when it respects the group
/// relations, is bijective on the degree ≤ 1 pieces (spanned by `h` and
/// `v_i h`), kills every source relation, and is onto the degree ≤ 2 piece.
pub fn iso_search(target: &ReductionSystem, sources: &[SourceAlgebra]) -> Result<IsoSearchResult> {
    let rep = target.rep();
    let field = rep.field();
    if !field.is_finite() {
        return Err(Error::Enumeration(
            "isomorphism search needs a finite field".into(),
        ));
    }
    if target.grading() != Grading::Untwisted || !target.is_confluent() {
        return Err(Error::NotConfluent);
    }
    let grp = rep.group();
    let n = grp.order();
    let m = rep.dim();
    let kg = all_group_algebra(rep)?;
    let gens = grp.generators().to_vec();

    // group parts first: they only need kG arithmetic
    let mut group_choices: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in &gens {
        group_choices = group_choices
            .into_iter()
            .flat_map(|c| {
                (0..kg.len()).map(move |k| {
                    let mut c = c.clone();
                    c.push(k);
                    c
                })
            })
            .collect();
    }
    let valid_groups: Vec<(Vec<usize>, Vec<GroupAlgebraElem>)> = group_choices
        .into_iter()
        .filter_map(|choice| {
            let mut images = vec![GroupAlgebraElem::zero(); n];
            images[grp.identity()] = GroupAlgebraElem::term(grp.identity(), field.one());
            for &x in grp.bfs_order().iter().skip(1) {
                let (parent, pos) = grp.tree_parent(x).expect("tree");
                images[x] = images[parent].mul(&kg[choice[pos]], grp);
            }
            let ok = (0..n)
                .all(|a| (0..n).all(|b| images[a].mul(&images[b], grp) == images[grp.mul(a, b)]));
            ok.then_some((choice, images))
        })
        .collect();

    let per_vector = (kg.len() as u64)
        .checked_pow(m as u32 + 1)
        .ok_or_else(|| Error::OutOfRange("too many vector images".into()))?;
    let total_vectors = per_vector
        .checked_pow(m as u32)
        .ok_or_else(|| Error::OutOfRange("too many vector images".into()))?;
    let group_total = (kg.len() as u64).pow(gens.len() as u32);
    let candidates = (sources.len() as u64)
        .checked_mul(group_total)
        .and_then(|x| x.checked_mul(total_vectors))
        .filter(|&x| x <= 50_000_000)
        .ok_or_else(|| Error::OutOfRange("isomorphism search space is too large".into()))?;

    let basis_names = crate::pbw::default_basis_names(m);
    let relations: Vec<Vec<Relation>> = sources
        .iter()
        .map(|s| {
            source_relations(rep, &s.lambda, &s.kappa, &basis_names)
                .into_iter()
                .filter(|r| {
                    r.elem
                        .terms()
                        .any(|(_, w, _)| w.iter().any(|l| matches!(l, Letter::V(_))))
                })
                .collect()
        })
        .collect();
    let kg_skew: Vec<SkewElem> = kg
        .iter()
        .map(|x| SkewElem::from_group_algebra(x, m))
        .collect();

    let vector_image = |idx: u64| -> SkewElem {
        let mut idx = idx;
        let mut parts = Vec::with_capacity(m + 1);
        for _ in 0..=m {
            parts.push(&kg[(idx % kg.len() as u64) as usize]);
            idx /= kg.len() as u64;
        }
        filtered_degree_one(m, &parts[..m], parts[m])
    };

    // Work items: (source, group choice, image of v_1).
    let items: Vec<(usize, usize, u64)> = (0..sources.len())
        .flat_map(|s| {
            (0..valid_groups.len()).flat_map(move |gi| (0..per_vector).map(move |v0| (s, gi, v0)))
        })
        .collect();

    let found: Vec<FoundIso> = items
        .par_iter()
        .map_init(
            || Normalizer::new(target),
            |norm, &(s, gi, v0)| {
                let (choice, group_imgs) = &valid_groups[gi];
                let group_skew: Vec<SkewElem> = group_imgs
                    .iter()
                    .map(|x| SkewElem::from_group_algebra(x, m))
                    .collect();
                let rest = per_vector.pow(m as u32 - 1);
                let mut hits = Vec::new();
                for r in 0..rest {
                    let mut vectors = vec![vector_image(v0)];
                    let mut idx = r;
                    for _ in 1..m {
                        vectors.push(vector_image(idx % per_vector));
                        idx /= per_vector;
                    }
                    // degree <= 1 bijectivity: images of h and v_i h
                    let mut deg1: Vec<SkewElem> = group_skew.clone();
                    for v in &vectors {
                        for h in &group_skew {
                            deg1.push(norm.multiply(v, h));
                        }
                    }
                    if rank_of(field, &deg1) < (m + 1) * n {
                        continue;
                    }
                    let images = HomImages {
                        groups: group_skew.clone(),
                        vectors: vectors.clone(),
                    };
                    if first_failure(norm, &images, &relations[s]).is_some() {
                        continue;
                    }
                    // onto the degree <= 2 piece
                    let mut deg2 = deg1.clone();
                    for a in 0..m {
                        for b in a..m {
                            let ab = norm.multiply(&vectors[a], &vectors[b]);
                            for h in &group_skew {
                                deg2.push(norm.multiply(&ab, h));
                            }
                        }
                    }
                    if rank_of(field, &deg2) < n * (1 + m + m * (m + 1) / 2) {
                        continue;
                    }
                    hits.push(FoundIso {
                        source: s,
                        source_label: sources[s].label.clone(),
                        generator_images: choice.iter().map(|&k| kg_skew[k].clone()).collect(),
                        vector_images: vectors,
                    });
                }
                hits
            },
        )
        .flatten()
        .collect();
    Ok(IsoSearchResult { candidates, found })
}

/// Image of a normal-form element of the source under the letter assignment.
pub fn apply_to_normal(norm: &mut Normalizer<'_>, images: &HomImages, x: &SkewElem) -> SkewElem {
    let mut free = FreeElem::zero();
    for (m, c) in x.terms() {
        free.add_term(m.t, super::system::monomial_word(m), c.clone());
    }
    apply_images(norm, images, &free)
}
