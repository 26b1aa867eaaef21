use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::complexity::profile::{ComplexityProfile, ProfileKind};
use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// Position data `(i, d, k)` for the word `a_i a_{i+d} ⋯ a_{i+kd}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProgressionWitness {
    pub start: usize,
    pub step: usize,
    pub k: usize,
}

/// Distinct length-`n` members of the arithmetic closure of a finite word,
/// each with the first progression that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct ArithmeticClosureSample {
    pub source: Word,
    pub length: usize,
    pub words: Vec<(Word, ProgressionWitness)>,
}

fn bits_per_symbol(k: usize) -> u32 {
    usize::BITS - (k.max(2) - 1).leading_zeros()
}

/// Calls `f(start, step)` for every progression of `n` positions inside `0..len`.
fn for_each_progression(len: usize, n: usize, mut f: impl FnMut(usize, usize)) {
    if n == 0 || n > len {
        return;
    }
    if n == 1 {
        for i in 0..len {
            f(i, 1);
        }
        return;
    }
    let span = n - 1;
    for d in 1..=(len - 1) / span {
        for i in 0..len - span * d {
            f(i, d);
        }
    }
}

fn count_length(w: &[Symbol], alphabet_size: usize, n: usize) -> u64 {
    let bits = bits_per_symbol(alphabet_size);
    if n as u32 * bits <= 128 {
        let mut seen: HashSet<u128> = HashSet::new();
        for_each_progression(w.len(), n, |i, d| {
            let code = (0..n).fold(0u128, |acc, t| (acc << bits) | u128::from(w[i + t * d]));
            seen.insert(code);
        });
        seen.len() as u64
    } else {
        let mut seen: HashSet<Vec<Symbol>> = HashSet::new();
        for_each_progression(w.len(), n, |i, d| {
            seen.insert((0..n).map(|t| w[i + t * d]).collect());
        });
        seen.len() as u64
    }
}

/// Number of distinct words `a_i a_{i+d} ⋯ a_{i+(n−1)d}` with `d ≥ 1` and all
/// positions inside `w`, for `n = 1..=n_max`. For a prefix of an infinite
/// word these are lower bounds of its arithmetic complexity.
pub fn arithmetic_complexity(w: &Word, n_max: usize) -> Result<ComplexityProfile> {
    if n_max > w.len() {
        return Err(Error::Range { requested: n_max, available: w.len() });
    }
    let k = w.alphabet().len();
    let counts = (1..=n_max).map(|n| count_length(w.symbols(), k, n)).collect();
    Ok(ComplexityProfile::new(ProfileKind::Arithmetic, k, w.len(), counts))
}

pub fn arithmetic_closure_sample(w: &Word, n: usize) -> Result<ArithmeticClosureSample> {
    if n == 0 || n > w.len() {
        return Err(Error::Range { requested: n, available: w.len() });
    }
    let sym = w.symbols();
    let mut first: HashMap<Vec<Symbol>, ProgressionWitness> = HashMap::new();
    for_each_progression(w.len(), n, |i, d| {
        let word: Vec<Symbol> = (0..n).map(|t| sym[i + t * d]).collect();
        first.entry(word).or_insert(ProgressionWitness { start: i, step: d, k: n - 1 });
    });
    let mut words: Vec<(Word, ProgressionWitness)> = first
        .into_iter()
        .map(|(s, wit)| (Word::from_symbols_unchecked(w.alphabet(), s), wit))
        .collect();
    words.sort_by(|a, b| a.0.symbols().cmp(b.0.symbols()));
    Ok(ArithmeticClosureSample { source: w.clone(), length: n, words })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::factor_complexity;
    use crate::morphism::fibonacci_morphism;
    use crate::word::Alphabet;

    /// Exhaustive (i, d) enumeration without pruning on the step bound.
    fn oracle(w: &[Symbol], n: usize) -> usize {
        let mut set = HashSet::new();
        for i in 0..w.len() {
            for d in 1..=w.len() {
                let idx: Vec<usize> = (0..n).map(|t| i + t * d).collect();
                if idx.iter().all(|&p| p < w.len()) {
                    set.insert(idx.iter().map(|&p| w[p]).collect::<Vec<_>>());
                }
            }
        }
        set.len()
    }

    #[test]
    fn aab_has_two_progression_pairs() {
        let w = Alphabet::binary_ab().parse("aab").unwrap();
        let p = arithmetic_complexity(&w, 3).unwrap();
        assert_eq!(p.count(1), Some(2));
        assert_eq!(p.count(2), Some(2));
        assert_eq!(oracle(w.symbols(), 2), 2);
        assert!(p.prefix_restricted);
    }

    #[test]
    fn matches_oracle_on_small_words() {
        let abc = Alphabet::ternary_abc();
        for text in ["abcacb", "aaaa", "abcabcab", "cbbacab", "a"] {
            let w = abc.parse(text).unwrap();
            let p = arithmetic_complexity(&w, w.len()).unwrap();
            for n in 1..=w.len() {
                assert_eq!(p.count(n).unwrap() as usize, oracle(w.symbols(), n), "{text} n={n}");
            }
        }
    }

    #[test]
    fn fibonacci_arithmetic_dominates_factor() {
        let w = fibonacci_morphism().fixed_point_prefix(0, 2000).unwrap();
        let a = arithmetic_complexity(&w, 12).unwrap();
        let f = factor_complexity(&w, 12).unwrap();
        for n in 1..=12 {
            assert!(a.count(n).unwrap() >= f.count(n).unwrap());
            assert!(a.count(n).unwrap() <= 1 << n);
        }
    }

    #[test]
    fn wide_words_use_vector_keys() {
        // 65 binary symbols do not fit in a packed u128 code
        let w = fibonacci_morphism().fixed_point_prefix(0, 140).unwrap();
        let p = arithmetic_complexity(&w, 130).unwrap();
        assert_eq!(p.count(130).unwrap() as usize, oracle(w.symbols(), 130));
    }

    #[test]
    fn witnesses_reproduce_words() {
        let w = Alphabet::binary_ab().parse("abaababaab").unwrap();
        let sample = arithmetic_closure_sample(&w, 3).unwrap();
        assert_eq!(sample.words.len(), oracle(w.symbols(), 3));
        for (word, wit) in &sample.words {
            assert!(wit.step >= 1);
            assert!(wit.start + wit.k * wit.step < w.len());
            let rebuilt: Vec<Symbol> = (0..=wit.k).map(|t| w.symbols()[wit.start + t * wit.step]).collect();
            assert_eq!(word.symbols(), rebuilt.as_slice());
        }
    }
}
