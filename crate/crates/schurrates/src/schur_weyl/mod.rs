//! Permutation action on `(C^d)^{⊗n}`, the projectors `P_f`, `P_λ`, `P_{f,λ}`, Young
//! symmetrizers and the special vectors `v_k`, `v_g` at desk scale.
//!
//! Basis strings are letter vectors over `0..d`; string `x_1 … x_n` sits at index
//! `Σ x_i d^{n-i}`.

mod block;
mod permutation;
mod projectors;
mod vectors;

pub use block::{index_string, string_index, Block};
pub use permutation::{permute_vector, permute_vector_block, Permutation};
pub use projectors::{
    projector_f, projector_f_lambda, projector_lambda, projector_lambda_spectral, Isotypic,
    ProjectorBlock, ProjectorMethod, SchurWeylCaps,
};
pub use vectors::{
    antisym_vector, antisym_vector_scaled, highest_weight_vector, sym_type_vector,
    young_symmetrizer_apply, SpecialVector, StandardTableau,
};
