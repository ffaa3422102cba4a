//! Additive 1-perfect codes in Doob graphs D(m, n′+n″).
//!
//! A Doob graph is the Cartesian product of m Shrikhande graphs and n′+n″
//! copies of K4, a distance-regular graph sharing the parameters of the
//! Hamming graph H(2m+n′+n″, 4).  Additive codes live in the group
//! Z4^2m × Z2^2n′ × Z4^n″ and are kernels of check matrices over Z4; a code
//! is 1-perfect when the radius-1 balls around codewords tile the space.
//!
//! The crate provides:
//! * [`galois`] — arithmetic in the Galois rings GR(4^Δ) driving the
//!   constructions (Teichmüller sets, Frobenius, unit enumeration);
//! * [`space`] — the Doob metric, vertices, and weight-1 error patterns;
//! * [`matrix`] — check matrices, syndromes, and the 1-perfect verifier;
//! * [`format`] — the DOOBPC text format for matrices;
//! * [`construct`] — admissible parameters and all constructions (literal
//!   base matrices, quasi-cyclic families, Δ-recursion, middle-pair
//!   replacement, Γ-extension, and their combinatorial helpers);
//! * [`analysis`] — syndrome decoding and structure reports (weight-3
//!   census, quasi-cyclic column permutations).

pub mod analysis;
pub mod construct;
pub mod format;
pub mod galois;
pub mod matrix;
pub mod space;

pub use analysis::{
    quasi_cyclic_permutation, weight3_last_part, AnalysisError, DecoderTable, Weight3Counts,
};
pub use construct::{
    admissible_params, alt_d707, base_d814, build_admissible, cyclotomic_cosets, delta_step,
    gamma_step, gf4_triple_partition, increase_npp, quasi_cyclic, ConstructError,
    ConstructionParams,
};
pub use format::{parse_matrix, write_matrix, FormatError};
pub use galois::{halve_order2, preset_modulus, RingContext, RingElement, RingError};
pub use matrix::{CheckMatrix, MatrixError, SyndromeVector, VerificationReport};
pub use space::{
    distance, enumerate_weight1, shrikhande_weight, ErrorPattern, Shape, Vertex, VertexError,
};
