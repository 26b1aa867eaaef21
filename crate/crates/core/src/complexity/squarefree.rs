use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

/// Default cap on backtracking nodes for census and enumeration runs.
pub const DEFAULT_NODE_BUDGET: u64 = 200_000_000;

/// True iff `w` has no factor `uu` with `u` nonempty.
pub fn is_square_free(w: &Word) -> bool {
    let s = w.symbols();
    (1..=s.len()).all(|end| !has_square_suffix(&s[..end]))
}

/// Does `s` end with a square? Any square created by appending the last
/// symbol must end there, so this is the only check backtracking needs.
fn has_square_suffix(s: &[Symbol]) -> bool {
    let n = s.len();
    (1..=n / 2).any(|half| s[n - 2 * half..n - half] == s[n - half..])
}

/// Exact number of square-free words of each length over `k` letters.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SquareFreeCensus {
    pub alphabet_size: usize,
    /// `counts[n]` is `a(n)` for `0 ≤ n ≤ n_max`.
    pub counts: Vec<u64>,
    /// Backtracking nodes visited.
    pub nodes: u64,
}

impl SquareFreeCensus {
    /// Counts every length up to `n_max` in one depth-first sweep. With
    /// `workers > 1` the subtrees below each first letter run on separate
    /// threads; results do not depend on the worker count.
    pub fn compute(alphabet_size: usize, n_max: usize, node_budget: u64, workers: usize) -> Result<Self> {
        if alphabet_size == 0 || alphabet_size > 256 {
            return Err(Error::Domain(format!("alphabet size {alphabet_size} not in 1..=256")));
        }
        let mut counts = vec![0u64; n_max + 1];
        counts[0] = 1;
        let nodes = AtomicU64::new(0);
        if n_max == 0 {
            return Ok(SquareFreeCensus { alphabet_size, counts, nodes: 0 });
        }
        let first_letters: Vec<Symbol> = (0..alphabet_size).map(|s| s as Symbol).collect();
        let partials: Vec<Result<Vec<u64>>> = if workers <= 1 {
            first_letters
                .iter()
                .map(|&s| subtree_counts(alphabet_size, n_max, s, node_budget, &nodes))
                .collect()
        } else {
            let chunk = first_letters.len().div_ceil(workers);
            std::thread::scope(|scope| {
                let handles: Vec<_> = first_letters
                    .chunks(chunk)
                    .map(|letters| {
                        let nodes = &nodes;
                        scope.spawn(move || {
                            letters
                                .iter()
                                .map(|&s| subtree_counts(alphabet_size, n_max, s, node_budget, nodes))
                                .collect::<Vec<_>>()
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("census worker panicked"))
                    .collect()
            })
        };
        for part in partials {
            for (total, c) in counts.iter_mut().zip(part?) {
                *total += c;
            }
        }
        Ok(SquareFreeCensus { alphabet_size, counts, nodes: nodes.into_inner() })
    }

    pub fn count(&self, n: usize) -> Option<u64> {
        self.counts.get(n).copied()
    }

    /// `a(n)^{1/n}` for `n ≥ 1` with `a(n) > 0`.
    pub fn growth_estimates(&self) -> Vec<(usize, f64)> {
        self.counts
            .iter()
            .enumerate()
            .skip(1)
            .filter(|&(_, &c)| c > 0)
            .map(|(n, &c)| (n, (c as f64).powf(1.0 / n as f64)))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }
}

/// `counts[n]` for words of length `n` starting with `first`; index 0 unused.
fn subtree_counts(k: usize, n_max: usize, first: Symbol, budget: u64, nodes: &AtomicU64) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; n_max + 1];
    let mut word: Vec<Symbol> = Vec::with_capacity(n_max);
    // next symbol to try at each depth
    let mut next: Vec<usize> = Vec::with_capacity(n_max);
    word.push(first);
    counts[1] += 1;
    next.push(0);
    let mut local = 0u64;
    while let Some(&candidate) = next.last() {
        if word.len() == n_max || candidate == k {
            word.pop();
            next.pop();
            continue;
        }
        *next.last_mut().expect("nonempty") += 1;
        word.push(candidate as Symbol);
        local += 1;
        if local % 4096 == 0 && nodes.fetch_add(4096, Ordering::Relaxed) + 4096 > budget {
            return Err(budget_error(budget));
        }
        if has_square_suffix(&word) {
            word.pop();
        } else {
            counts[word.len()] += 1;
            next.push(0);
        }
    }
    if nodes.fetch_add(local % 4096, Ordering::Relaxed) + local % 4096 > budget {
        return Err(budget_error(budget));
    }
    Ok(counts)
}

fn budget_error(budget: u64) -> Error {
    Error::Resource(format!("square-free search exceeded node budget {budget}"))
}

/// `a(n)`: the number of square-free words of length `n` over `k` letters.
pub fn count_square_free(alphabet_size: usize, n: usize) -> Result<u64> {
    let census = SquareFreeCensus::compute(alphabet_size, n, DEFAULT_NODE_BUDGET, 1)?;
    Ok(census.counts[n])
}

/// All nonempty square-free words over the first `k` letters (`a`, `b`, …),
/// up to `max_len` when given. Without a length cap the search only ends by
/// itself for `k ≤ 2`; larger alphabets hit the node budget.
pub fn enumerate_square_free(alphabet_size: usize, max_len: Option<usize>, node_budget: u64) -> Result<Vec<Word>> {
    let alphabet = Alphabet::letters(alphabet_size)?;
    let k = alphabet_size;
    let mut out = Vec::new();
    let mut word: Vec<Symbol> = Vec::new();
    let mut next: Vec<usize> = vec![0];
    let mut nodes = 0u64;
    while let Some(&candidate) = next.last() {
        if candidate == k || max_len.is_some_and(|m| word.len() == m) {
            word.pop();
            next.pop();
            continue;
        }
        *next.last_mut().expect("nonempty") += 1;
        word.push(candidate as Symbol);
        nodes += 1;
        if nodes > node_budget {
            return Err(budget_error(node_budget));
        }
        if has_square_suffix(&word) {
            word.pop();
        } else {
            out.push(Word::from_symbols_unchecked(&alphabet, word.clone()));
            next.push(0);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.symbols().cmp(b.symbols())));
    Ok(out)
}
