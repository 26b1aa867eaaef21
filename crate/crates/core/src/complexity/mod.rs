//! Factor and arithmetic complexity, Sturmian detection, square-free words,
//! the `δ` coding of ternary words and palindrome counts.

mod arithmetic;
mod delta;
mod factor;
mod palindrome;
mod profile;
mod squarefree;

pub use arithmetic::{arithmetic_closure_sample, arithmetic_complexity, ArithmeticClosureSample, ProgressionWitness};
pub use delta::{delta_apply, delta_factorize, delta_morphism};
pub use factor::{distinct_factors, factor_complexity, factor_complexity_with, FactorBackend};
pub use palindrome::{
    palindromic_factor_count, scattered_palindrome_count, scattered_palindromes, ScatteredPalindromes,
    DEFAULT_PALINDROME_LIMIT,
};
pub use profile::{is_sturmian_profile, ComplexityProfile, ProfileKind};
pub use squarefree::{
    count_square_free, enumerate_square_free, is_square_free, SquareFreeCensus, DEFAULT_NODE_BUDGET,
};
