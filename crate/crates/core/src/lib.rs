//! Combinatorics on words around the Fibonacci word.
//!
//! * [`word`] and [`morphism`]: alphabets, words, substitutions, m-bonacci
//!   fixed points and the Sturmian generators.
//! * [`complexity`]: factor and arithmetic complexity, square-free censuses,
//!   the `δ` coding, palindrome counts.
//! * [`density`]: symbol frequencies, the balance bound, `F(n)/F(n+1) → φ−1`
//!   and Perron–Frobenius/Pisot data.
//! * [`modfib`]: Fibonacci and Lucas numbers modulo `m`, Pisano periods and
//!   the exact limiting density of Fibonacci residues modulo prime powers.
//! * [`factorial_word`]: the word of concatenated factorials and its
//!   coverage, leading-digit and equidistribution diagnostics.

pub mod cli;
pub mod complexity;
pub mod density;
pub mod error;
pub mod factorial_word;
pub mod modfib;
pub mod morphism;
pub mod report;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use morphism::{AdjacencyMatrix, Morphism, SturmianGenerator};
pub use word::{Alphabet, Symbol, Word};
