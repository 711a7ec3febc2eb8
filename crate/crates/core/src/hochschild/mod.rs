//! The two-sided resolution `X` of `S(V)#G` in degrees ≤ 3, its comparison
//! maps with the bar resolution, cochains built from `λ` and `κ`, and the
//! cohomological form of the PBW test.

mod bar;
mod chains;
mod check;
mod cochain;

pub use bar::{
    bar_differential, phi, phi_generator, psi2, psi2_generator, slice_gen, BarChain, SliceGen,
};
pub use chains::{
    augmentation, differential, differential_generator, middle_basis, wedge_of, Mid, XChain,
    MAX_DEGREE,
};
pub use check::{
    check_homological, lift_to_deformation, Deformation, HomologicalReport, IdentityStatus,
    LiftMode, COCYCLE, FIRST_OBSTRUCTION, SECOND_OBSTRUCTION,
};
pub use cochain::{
    circle, circle_product, coboundary, extend_kappa, extend_lambda, gerstenhaber_bracket, Cochain,
    SliceCochain,
};
