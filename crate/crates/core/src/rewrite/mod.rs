//! Presentations of `H_{λ,κ}` as rewriting systems on words in basis
//! vectors and group elements.

pub mod ambiguity;
pub mod dimension;
pub mod hom;
pub mod mu;
mod system;

pub use ambiguity::{overlap_words, resolve_ambiguities, Ambiguity, AmbiguityReport};
pub use dimension::{filtered_dimensions, graded_dimension};
pub use hom::{
    apply_images, apply_to_normal, iso_search, plain_kappa_sources, source_relations,
    verify_homomorphism, FoundIso, HomFailure, HomImages, IsoSearchResult, Relation, SourceAlgebra,
};
pub use mu::{extract_mu, params_from_mu};
pub use system::{
    letter_name, monomial_word, FreeElem, Grading, Letter, Normalizer, ReductionSystem, Word,
};
