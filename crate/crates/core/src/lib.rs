//! Constructive PBW structure of connected graded Hopf algebras.
//!
//! A presentation `k<X>/I` with a comultiplication on the generators is
//! analysed through Lyndon words and the standard bracketing: a truncated
//! Gröbner basis of `I` yields the irreducible Lyndon words, whose brackets
//! form ordered PBW generators, the Hilbert series, heights, an iterated Ore
//! extension tower and, for primitively generated algebras, Lie generators of
//! the ideal. Every verdict is certified up to an explicit degree bound.

pub mod coalg;
pub mod error;
pub mod parse;
pub mod poly;
pub mod rewrite;
pub mod scalar;
pub mod structure;
pub mod word;

pub use error::AlgebraError;
pub use poly::{LinearCombination, Polynomial, Tensor3, TensorElement};
pub use rewrite::{Height, IrreducibleData, TruncatedGB, WordKind};
pub use scalar::{Field, Scalar};
pub use word::{Alphabet, Letter, Word};
