//! Extended Burrows-Wheeler transform between words and multisets of
//! necklaces, computed through standard permutations.
//!
//! Built on top of the transform:
//!
//! * [`debruijn`]: de Bruijn sets from words of `Γ(k,n)`, and the least de
//!   Bruijn word obtained by inverting `(01⋯(k-1))^(k^(n-1))`.
//! * [`semigroup`]: the semigroup generated by the letter maps of a necklace,
//!   and the syntactic semigroup of the powers of a word.
//! * [`factors`]: distinct factor counts and their envelopes.

pub mod debruijn;
pub mod ebwt;
pub mod error;
pub mod factors;
pub mod interchange;
pub mod semigroup;
pub mod words;

pub use ebwt::{
    build_table, inverse_transform, standard_permutation, transform, word_action, NecklaceMultiset,
    RotationTable, StandardPermutation,
};
pub use error::{Error, Result};
pub use words::{
    conjugate_shift, cyclic_factors, has_border, is_primitive, lyndon_representative,
    omega_compare, root, Alphabet, Necklace, Symbol, Word,
};
