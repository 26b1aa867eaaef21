use std::collections::{BTreeSet, HashMap};

use crate::complexity::profile::{ComplexityProfile, ProfileKind};
use crate::error::{Error, Result};
use crate::word::{Symbol, Word};

/// How distinct factors are counted. Both backends give identical counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FactorBackend {
    /// One suffix automaton for all lengths at once, `O(|w|)`.
    #[default]
    SuffixAutomaton,
    /// Per-length rolling hash over sliding windows; equal hashes are
    /// confirmed by comparing the windows themselves.
    Hashing,
}

/// Number of distinct factors of each length `1..=n_max`.
pub fn factor_complexity(w: &Word, n_max: usize) -> Result<ComplexityProfile> {
    factor_complexity_with(w, n_max, FactorBackend::default())
}

pub fn factor_complexity_with(w: &Word, n_max: usize, backend: FactorBackend) -> Result<ComplexityProfile> {
    if n_max > w.len() {
        return Err(Error::Range { requested: n_max, available: w.len() });
    }
    let counts = match backend {
        FactorBackend::SuffixAutomaton => SuffixAutomaton::build(w.symbols()).counts_by_length(n_max),
        FactorBackend::Hashing => (1..=n_max).map(|n| count_by_hashing(w.symbols(), n)).collect(),
    };
    Ok(ComplexityProfile::new(ProfileKind::Factor, w.alphabet().len(), w.len(), counts))
}

/// The distinct length-`n` factors of `w`, in lexicographic symbol order.
pub fn distinct_factors(w: &Word, n: usize) -> Result<Vec<Word>> {
    if n > w.len() {
        return Err(Error::Range { requested: n, available: w.len() });
    }
    let set: BTreeSet<&[Symbol]> = w.symbols().windows(n.max(1)).collect();
    if n == 0 {
        return Ok(vec![Word::empty(w.alphabet())]);
    }
    Ok(set
        .into_iter()
        .map(|s| Word::from_symbols_unchecked(w.alphabet(), s.to_vec()))
        .collect())
}

const MERSENNE_61: u64 = (1 << 61) - 1;
const HASH_BASE: u64 = 0x1f3d_5b79_a2c4_e683 % MERSENNE_61;

fn mul_mod(a: u64, b: u64) -> u64 {
    let p = u128::from(a) * u128::from(b);
    let lo = (p as u64) & MERSENNE_61;
    let hi = (p >> 61) as u64;
    let s = lo + hi;
    if s >= MERSENNE_61 {
        s - MERSENNE_61
    } else {
        s
    }
}

fn add_mod(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MERSENNE_61 {
        s - MERSENNE_61
    } else {
        s
    }
}

fn count_by_hashing(w: &[Symbol], n: usize) -> u64 {
    if n == 0 || n > w.len() {
        return 0;
    }
    let top = (1..n).fold(1u64, |acc, _| mul_mod(acc, HASH_BASE));
    // hash → start positions of pairwise distinct windows with that hash
    let mut seen: HashMap<u64, Vec<usize>> = HashMap::with_capacity(w.len().min(1 << 20));
    let mut distinct = 0u64;
    let mut h = 0u64;
    for &s in &w[..n] {
        h = add_mod(mul_mod(h, HASH_BASE), u64::from(s) + 1);
    }
    for start in 0..=w.len() - n {
        if start > 0 {
            let out = mul_mod(u64::from(w[start - 1]) + 1, top);
            h = add_mod(h, MERSENNE_61 - out);
            h = add_mod(mul_mod(h, HASH_BASE), u64::from(w[start + n - 1]) + 1);
        }
        let window = &w[start..start + n];
        let bucket = seen.entry(h).or_default();
        if !bucket.iter().any(|&p| &w[p..p + n] == window) {
            bucket.push(start);
            distinct += 1;
        }
    }
    distinct
}

/// Suffix automaton over small integer symbols with sparse transitions.
struct SuffixAutomaton {
    len: Vec<usize>,
    link: Vec<Option<usize>>,
    next: Vec<Vec<(Symbol, usize)>>,
    last: usize,
}

impl SuffixAutomaton {
    fn build(w: &[Symbol]) -> Self {
        let cap = 2 * w.len() + 1;
        let mut sam = SuffixAutomaton {
            len: Vec::with_capacity(cap),
            link: Vec::with_capacity(cap),
            next: Vec::with_capacity(cap),
            last: 0,
        };
        sam.push_state(0, None, Vec::new());
        for &c in w {
            sam.extend(c);
        }
        sam
    }

    fn push_state(&mut self, len: usize, link: Option<usize>, next: Vec<(Symbol, usize)>) -> usize {
        self.len.push(len);
        self.link.push(link);
        self.next.push(next);
        self.len.len() - 1
    }

    fn go(&self, v: usize, c: Symbol) -> Option<usize> {
        self.next[v].iter().find(|&&(s, _)| s == c).map(|&(_, u)| u)
    }

    fn set(&mut self, v: usize, c: Symbol, u: usize) {
        match self.next[v].iter_mut().find(|(s, _)| *s == c) {
            Some(slot) => slot.1 = u,
            None => self.next[v].push((c, u)),
        }
    }

    fn extend(&mut self, c: Symbol) {
        let cur = self.push_state(self.len[self.last] + 1, None, Vec::new());
        let mut p = Some(self.last);
        while let Some(v) = p {
            if self.go(v, c).is_some() {
                break;
            }
            self.set(v, c, cur);
            p = self.link[v];
        }
        match p {
            None => self.link[cur] = Some(0),
            Some(v) => {
                let q = self.go(v, c).expect("transition exists");
                if self.len[v] + 1 == self.len[q] {
                    self.link[cur] = Some(q);
                } else {
                    let clone = self.push_state(self.len[v] + 1, self.link[q], self.next[q].clone());
                    let mut p = Some(v);
                    while let Some(u) = p {
                        if self.go(u, c) != Some(q) {
                            break;
                        }
                        self.set(u, c, clone);
                        p = self.link[u];
                    }
                    self.link[q] = Some(clone);
                    self.link[cur] = Some(clone);
                }
            }
        }
        self.last = cur;
    }

    /// Each non-initial state represents exactly one factor of every length in
    /// `(len(link), len]`.
    fn counts_by_length(&self, n_max: usize) -> Vec<u64> {
        let mut diff = vec![0i64; n_max + 2];
        for v in 1..self.len.len() {
            let lo = self.len[self.link[v].expect("non-root state has a link")] + 1;
            let hi = self.len[v];
            if lo > n_max {
                continue;
            }
            diff[lo] += 1;
            diff[hi.min(n_max) + 1] -= 1;
        }
        let mut acc = 0i64;
        (1..=n_max)
            .map(|n| {
                acc += diff[n];
                acc as u64
            })
            .collect()
    }
}
