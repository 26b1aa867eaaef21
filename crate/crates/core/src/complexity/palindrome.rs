//! Distinct palindromic factors and distinct palindromic subsequences
//! ("scattered palindromes").

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// Longest word accepted by [`scattered_palindrome_count`].
pub const DEFAULT_PALINDROME_LIMIT: usize = 128;

/// Distinct palindromic subsequences of a word, split by length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScatteredPalindromes {
    /// `per_length[t − 1]` counts the distinct palindromic subsequences of length `t`.
    #[serde(serialize_with = "crate::report::biguints_as_strings")]
    pub per_length: Vec<BigUint>,
}

impl ScatteredPalindromes {
    pub fn total(&self) -> BigUint {
        self.per_length.iter().sum()
    }
}

/// Number of distinct nonempty palindromic subsequences of `w`.
pub fn scattered_palindrome_count(w: &Word) -> Result<BigUint> {
    Ok(scattered_palindromes(w, DEFAULT_PALINDROME_LIMIT)?.total())
}

/// Per-length counts. Palindromes inside `w[i..=j]` are grouped by their
/// outer letter `c`: with `l` the first and `r` the last occurrence of `c`
/// they are `c`, `cc` (when `l < r`) and `c·p·c` for every palindrome `p`
/// inside `w[l+1..r]`.
pub fn scattered_palindromes(w: &Word, limit: usize) -> Result<ScatteredPalindromes> {
    if w.len() > limit {
        return Err(Error::Resource(format!(
            "scattered palindrome count limited to words of length {limit}, got {}",
            w.len()
        )));
    }
    let n = w.len();
    if n == 0 {
        return Ok(ScatteredPalindromes { per_length: Vec::new() });
    }
    let k = w.alphabet().len();
    let s = w.symbols();
    // first[c][i]: first position >= i holding c; last[c][j]: last position <= j
    let mut first = vec![vec![usize::MAX; n + 1]; k];
    let mut last = vec![vec![usize::MAX; n]; k];
    for c in 0..k {
        for i in (0..n).rev() {
            first[c][i] = if usize::from(s[i]) == c { i } else { first[c][i + 1] };
        }
        let mut prev = usize::MAX;
        for j in 0..n {
            if usize::from(s[j]) == c {
                prev = j;
            }
            last[c][j] = prev;
        }
    }
    let mut solver = IntervalSolver { k, first, last, memo: HashMap::new() };
    let per_length = solver.solve(0, n - 1);
    let mut per_length = per_length.as_ref().clone();
    per_length.resize(n, BigUint::zero());
    Ok(ScatteredPalindromes { per_length })
}

struct IntervalSolver {
    k: usize,
    first: Vec<Vec<usize>>,
    last: Vec<Vec<usize>>,
    memo: HashMap<(usize, usize), std::rc::Rc<Vec<BigUint>>>,
}

impl IntervalSolver {
    fn solve(&mut self, i: usize, j: usize) -> std::rc::Rc<Vec<BigUint>> {
        if let Some(hit) = self.memo.get(&(i, j)) {
            return hit.clone();
        }
        let mut counts = vec![BigUint::zero(); j - i + 1];
        for c in 0..self.k {
            let l = self.first[c][i];
            if l > j {
                continue;
            }
            let r = self.last[c][j];
            counts[0] += 1u32;
            if l < r {
                counts[1] += 1u32;
                if l + 1 < r {
                    let inner = self.solve(l + 1, r - 1);
                    for (t, v) in inner.iter().enumerate() {
                        counts[t + 2] += v;
                    }
                }
            }
        }
        while counts.len() > 1 && counts.last().is_some_and(Zero::is_zero) {
            counts.pop();
        }
        let rc = std::rc::Rc::new(counts);
        self.memo.insert((i, j), rc.clone());
        rc
    }
}

/// Number of distinct nonempty palindromic factors, via a palindromic tree.
pub fn palindromic_factor_count(w: &Word) -> usize {
    Eertree::build(w.symbols()).distinct()
}

struct Eertree {
    len: Vec<isize>,
    link: Vec<usize>,
    next: Vec<Vec<(Symbol, usize)>>,
}

impl Eertree {
    // node 0: imaginary root of length −1, node 1: empty palindrome
    fn build(s: &[Symbol]) -> Self {
        let mut t = Eertree { len: vec![-1, 0], link: vec![0, 0], next: vec![Vec::new(), Vec::new()] };
        let mut last = 1usize;
        for (i, &c) in s.iter().enumerate() {
            let fits = |t: &Eertree, v: usize| {
                let l = t.len[v];
                let j = i as isize - l - 1;
                j >= 0 && s[j as usize] == c
            };
            let mut cur = last;
            while !fits(&t, cur) {
                cur = t.link[cur];
            }
            if let Some(&(_, node)) = t.next[cur].iter().find(|(x, _)| *x == c) {
                last = node;
                continue;
            }
            let node = t.len.len();
            t.len.push(t.len[cur] + 2);
            t.next.push(Vec::new());
            let link = if t.len[node] == 1 {
                1
            } else {
                let mut v = t.link[cur];
                while !fits(&t, v) {
                    v = t.link[v];
                }
                t.next[v].iter().find(|(x, _)| *x == c).map(|&(_, u)| u).expect("suffix palindrome exists")
            };
            t.link.push(link);
            t.next[cur].push((c, node));
            last = node;
        }
        t
    }

    fn distinct(&self) -> usize {
        self.len.len() - 2
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use crate::word::Alphabet;
    use proptest::prelude::*;

    fn subsequence_oracle(s: &[Symbol]) -> Vec<usize> {
        let mut seen: HashSet<Vec<Symbol>> = HashSet::new();
        for mask in 1u32..(1 << s.len()) {
            let sub: Vec<Symbol> = (0..s.len()).filter(|&i| mask >> i & 1 == 1).map(|i| s[i]).collect();
            if sub.iter().eq(sub.iter().rev()) {
                seen.insert(sub);
            }
        }
        let mut per = vec![0; s.len()];
        for p in seen {
            per[p.len() - 1] += 1;
        }
        per
    }

    fn factor_oracle(s: &[Symbol]) -> usize {
        let mut seen = HashSet::new();
        for i in 0..s.len() {
            for j in i + 1..=s.len() {
                let f = &s[i..j];
                if f.iter().eq(f.iter().rev()) {
                    seen.insert(f);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn named_examples() {
        let ab = Alphabet::binary_ab();
        assert_eq!(scattered_palindrome_count(&ab.parse("a").unwrap()).unwrap(), 1u32.into());
        assert_eq!(scattered_palindrome_count(&ab.parse("aabb").unwrap()).unwrap(), 4u32.into());
        assert_eq!(palindromic_factor_count(&ab.parse("aa").unwrap()), 2);
        assert_eq!(palindromic_factor_count(&ab.parse("aabb").unwrap()), 4);
        let per = scattered_palindromes(&ab.parse("aabb").unwrap(), 16).unwrap();
        let per: Vec<u32> = per.per_length.iter().map(|v| v.try_into().unwrap()).collect();
        assert_eq!(per, [2, 2, 0, 0]);
    }

    #[test]
    fn abaab_against_subset_enumeration() {
        let w = Alphabet::binary_ab().parse("abaab").unwrap();
        let oracle = subsequence_oracle(w.symbols());
        let got = scattered_palindromes(&w, 16).unwrap();
        let got: Vec<usize> = got.per_length.iter().map(|v| usize::try_from(v).unwrap()).collect();
        assert_eq!(got, oracle);
    }

    #[test]
    fn limit_is_enforced() {
        let w = Alphabet::binary_ab().parse(&"ab".repeat(10)).unwrap();
        assert!(matches!(scattered_palindromes(&w, 5), Err(Error::Resource(_))));
    }

    #[test]
    fn empty_word() {
        let w = Word::empty(&Alphabet::binary_ab());
        assert_eq!(scattered_palindrome_count(&w).unwrap(), BigUint::zero());
        assert_eq!(palindromic_factor_count(&w), 0);
    }

    #[test]
    fn long_words_exceed_u32() {
        let w = Alphabet::binary_ab().parse(&"ab".repeat(64)).unwrap();
        let total = scattered_palindrome_count(&w).unwrap();
        assert!(total.bits() > 32);
    }

    proptest! {
        #[test]
        fn agrees_with_oracles(sym in proptest::collection::vec(0u8..3, 1..13)) {
            let w = Word::from_symbols(&Alphabet::ternary_abc(), sym.clone()).unwrap();
            let per = scattered_palindromes(&w, 64).unwrap();
            let per: Vec<usize> = per.per_length.iter().map(|v| usize::try_from(v).unwrap()).collect();
            prop_assert_eq!(per, subsequence_oracle(&sym));
            prop_assert_eq!(palindromic_factor_count(&w), factor_oracle(&sym));
        }

        #[test]
        fn factors_bounded_by_subsequences(sym in proptest::collection::vec(0u8..2, 0..60)) {
            let w = Word::from_symbols(&Alphabet::binary_ab(), sym).unwrap();
            let factors = BigUint::from(palindromic_factor_count(&w));
            prop_assert!(factors <= scattered_palindrome_count(&w).unwrap());
        }
    }
}
