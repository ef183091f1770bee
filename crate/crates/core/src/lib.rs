//! Exact computational algebra for pairs of companion matrices.
//!
//! Given monic polynomials `f`, `g` of equal degree `n` over an exact
//! coefficient ring (`Z`, `Q`, `Z/m`, `GF(p)`, `Z[i]`), this crate builds the
//! companion matrices `C`, `D` and computes the invariants of the algebra
//! they generate: the structure matrix and its determinant identity
//! `det M_{f,g} = Res(f,g)^(n-1)`, the index of the generated lattice in the
//! full matrix lattice, generation verdicts, relation polynomials, rank and
//! basis of the generated module, and finite presentations backed by a
//! word-rewriting normal form.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod companion;
pub mod error;
pub mod factor;
pub mod matrix;
pub mod poly;
pub mod presentation;
pub mod ring;
pub mod span;

pub use companion::{
    common_invariant_subspaces, companion, coords, BasisReport, Commutant, CompanionPair,
    DetIdentity, IndexReport, PSequence, StructureMatrix,
};
pub use error::{Error, Result};
pub use matrix::{hermite_row_basis, smith_normal_form, HermiteBasis, Matrix, SmithDecomposition};
pub use poly::{poly_gcd, poly_sub_same_degree, resultant, sylvester_matrix, Monic, Poly};
pub use presentation::{
    emit_presentation, evaluate_normal_form, reduce_word, verify_presentation, NormalForm,
    Presentation, Variant, Word,
};
pub use ring::{Ring, Scalar};
pub use span::{generates_full, span_closure_oracle, GenerationVerdict, GenerationWitness};
