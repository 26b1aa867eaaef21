use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Factor,
    Arithmetic,
}

/// Table `n → count` for `1 ≤ n ≤ n_max`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexityProfile {
    pub kind: ProfileKind,
    pub alphabet_size: usize,
    /// Length of the finite word the counts were taken from.
    pub word_length: usize,
    /// Arithmetic counts on a prefix only witness membership in the closure of
    /// the infinite word, so they are lower bounds.
    pub prefix_restricted: bool,
    counts: Vec<u64>,
}

impl ComplexityProfile {
    pub(crate) fn new(kind: ProfileKind, alphabet_size: usize, word_length: usize, counts: Vec<u64>) -> Self {
        ComplexityProfile {
            kind,
            alphabet_size,
            word_length,
            prefix_restricted: kind == ProfileKind::Arithmetic,
            counts,
        }
    }

    pub fn n_max(&self) -> usize {
        self.counts.len()
    }

    /// Count for length `n`; `count(0)` is 1 (the empty word).
    pub fn count(&self, n: usize) -> Option<u64> {
        if n == 0 {
            Some(1)
        } else {
            self.counts.get(n - 1).copied()
        }
    }

    /// Counts for `n = 1, …, n_max`.
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts.iter().enumerate().map(|(i, &c)| (i + 1, c))
    }

    /// Two-column `n,count` CSV with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.iter() {
            let _ = writeln!(out, "{n},{c}");
        }
        out
    }
}

/// True iff the factor profile reaches `n_max` and equals `n + 1` throughout.
pub fn is_sturmian_profile(profile: &ComplexityProfile, n_max: usize) -> bool {
    profile.kind == ProfileKind::Factor
        && profile.n_max() >= n_max
        && (1..=n_max).all(|n| profile.count(n) == Some(n as u64 + 1))
}
