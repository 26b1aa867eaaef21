//! The infinite word obtained by writing `0!, 1!, 2!, …` in base `b` one
//! after another, with finite witnesses for its factor complexity:
//! factor searches, coverage of all length-`k` words, leading-digit
//! searches and an equidistribution diagnostic for `{log_b(n!)}`.

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::{Alphabet, Symbol, Word};

/// Largest number of cells the coverage bitmap may use.
pub const MAX_COVERAGE_CELLS: u64 = 1 << 26;

/// Missing factors listed in a [`CoverageReport`].
pub const MISSING_EXAMPLES: usize = 20;

fn check_base(base: u32) -> Result<Alphabet> {
    Alphabet::digits(base)
}

/// Sequential digit stream of the concatenated factorials. Factorials are
/// accumulated incrementally; each block is converted to base `b` once.
#[derive(Debug, Clone)]
pub struct FactorialWordStream {
    base: u32,
    next_n: u64,
    factorial: BigUint,
    block: Vec<u8>,
    pos: usize,
    emitted: u64,
}

impl FactorialWordStream {
    pub fn new(base: u32) -> Result<Self> {
        check_base(base)?;
        Ok(FactorialWordStream {
            base,
            next_n: 0,
            factorial: BigUint::one(),
            block: Vec::new(),
            pos: 0,
            emitted: 0,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Digits handed out so far.
    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    /// Index `n` of the block the next digit belongs to.
    pub fn current_block(&self) -> u64 {
        if self.pos < self.block.len() {
            self.next_n - 1
        } else {
            self.next_n
        }
    }

    fn advance_factorial(&mut self) -> (u64, Vec<u8>) {
        let n = self.next_n;
        if n > 1 {
            self.factorial *= n;
        }
        self.next_n += 1;
        (n, self.factorial.to_radix_be(self.base))
    }

    /// The next whole block `(n, digits of n!)`. Skips any partially read block.
    pub fn next_block(&mut self) -> (u64, Vec<u8>) {
        if self.pos < self.block.len() {
            let rest = self.block[self.pos..].to_vec();
            self.emitted += rest.len() as u64;
            self.pos = self.block.len();
            return (self.next_n - 1, rest);
        }
        let (n, digits) = self.advance_factorial();
        self.emitted += digits.len() as u64;
        (n, digits)
    }
}

impl Iterator for FactorialWordStream {
    type Item = Symbol;

    fn next(&mut self) -> Option<Symbol> {
        if self.pos == self.block.len() {
            let (_, digits) = self.advance_factorial();
            self.block = digits;
            self.pos = 0;
        }
        let d = self.block[self.pos];
        self.pos += 1;
        self.emitted += 1;
        Some(d)
    }
}

/// First `digit_count` digits of the concatenated-factorial word in base `b`.
pub fn factorial_word_prefix(base: u32, digit_count: usize) -> Result<Word> {
    let alphabet = check_base(base)?;
    let digits: Vec<Symbol> = FactorialWordStream::new(base)?.take(digit_count).collect();
    Ok(Word::from_symbols_unchecked(&alphabet, digits))
}

fn check_digit_word(base: u32, w: &Word, what: &str) -> Result<()> {
    if w.alphabet().len() != base as usize {
        return Err(Error::Domain(format!("{what} {w} is not over the base-{base} digits")));
    }
    if w.is_empty() {
        return Err(Error::Precondition(format!("{what} must be nonempty")));
    }
    Ok(())
}

/// Position of the first occurrence of `target` within the first
/// `digit_budget` digits, or `None` when the budget runs out first.
///
/// The stream is matched with a Knuth–Morris–Pratt automaton, so occurrences
/// straddling block boundaries are found without materializing the prefix.
pub fn factor_search(base: u32, target: &Word, digit_budget: u64) -> Result<Option<u64>> {
    check_digit_word(base, target, "search target")?;
    let pat = target.symbols();
    let mut fail = vec![0usize; pat.len()];
    let mut k = 0;
    for i in 1..pat.len() {
        while k > 0 && pat[i] != pat[k] {
            k = fail[k - 1];
        }
        if pat[i] == pat[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut state = 0usize;
    for (pos, d) in FactorialWordStream::new(base)?.take(digit_budget as usize).enumerate() {
        while state > 0 && d != pat[state] {
            state = fail[state - 1];
        }
        if d == pat[state] {
            state += 1;
        }
        if state == pat.len() {
            return Ok(Some(pos as u64 + 1 - pat.len() as u64));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverageReport {
    pub base: u32,
    pub k: usize,
    pub digit_budget: u64,
    /// Digits read; less than the budget when every factor was seen early.
    pub digits_scanned: u64,
    pub found: u64,
    pub total: u64,
    pub coverage: f64,
    /// Prefix length at which the last missing factor appeared.
    pub full_at: Option<u64>,
    /// Up to [`MISSING_EXAMPLES`] factors never seen.
    pub missing: Vec<String>,
    /// First occurrence of each factor in numeric order, when requested.
    pub first_positions: Option<Vec<Option<u64>>>,
}

/// Slides a length-`k` window over the first `digit_budget` digits and marks
/// every factor seen. The window is a rolling base-`b` code of the last `k`
/// digits, so factors across block boundaries count.
pub fn coverage_profile(base: u32, k: usize, digit_budget: u64, record_positions: bool) -> Result<CoverageReport> {
    let alphabet = check_base(base)?;
    if k == 0 {
        return Err(Error::Domain("factor length must be at least 1".into()));
    }
    let total = u64::from(base)
        .checked_pow(k as u32)
        .filter(|&t| t <= MAX_COVERAGE_CELLS)
        .ok_or_else(|| {
            Error::Resource(format!(
                "{base}^{k} factors exceed the {MAX_COVERAGE_CELLS}-cell coverage bitmap; try a smaller k"
            ))
        })?;
    let mut seen = vec![false; total as usize];
    let mut positions = record_positions.then(|| vec![None; total as usize]);
    let mut found = 0u64;
    let mut code = 0u64;
    let mut scanned = 0u64;
    let mut full_at = None;
    for d in FactorialWordStream::new(base)?.take(digit_budget as usize) {
        code = (code * u64::from(base) + u64::from(d)) % total;
        scanned += 1;
        if scanned < k as u64 {
            continue;
        }
        let cell = code as usize;
        if !seen[cell] {
            seen[cell] = true;
            found += 1;
            if let Some(p) = positions.as_mut() {
                p[cell] = Some(scanned - k as u64);
            }
            if found == total {
                full_at = Some(scanned);
                break;
            }
        }
    }
    let missing = seen
        .iter()
        .enumerate()
        .filter(|(_, &hit)| !hit)
        .take(MISSING_EXAMPLES)
        .map(|(cell, _)| decode_factor(&alphabet, cell as u64, k).to_string())
        .collect();
    Ok(CoverageReport {
        base,
        k,
        digit_budget,
        digits_scanned: scanned,
        found,
        total,
        coverage: found as f64 / total as f64,
        full_at,
        missing,
        first_positions: positions,
    })
}

/// The length-`k` word whose base-`b` value is `code`.
pub fn decode_factor(alphabet: &Alphabet, mut code: u64, k: usize) -> Word {
    let b = alphabet.len() as u64;
    let mut digits = vec![0 as Symbol; k];
    for slot in digits.iter_mut().rev() {
        *slot = (code % b) as Symbol;
        code /= b;
    }
    Word::from_symbols_unchecked(alphabet, digits)
}

/// Kahan–Babuška–Neumaier summation with a running bound on its own error.
#[derive(Debug, Clone, Copy, Default)]
struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeadingDigitsHit {
    pub n: u64,
    /// Total base-`b` digits of `n!`.
    pub digit_count: u64,
}

/// Smallest `n ≤ n_budget` whose factorial, written in base `b`, starts with
/// `prefix`. Candidates are prefiltered with a compensated running sum of
/// `log_b(j)` and every answer is confirmed on the exact factorial.
pub fn leading_digits_search(base: u32, prefix: &Word, n_budget: u64) -> Result<Option<LeadingDigitsHit>> {
    check_digit_word(base, prefix, "leading-digit prefix")?;
    let pat = prefix.symbols();
    if pat[0] == 0 {
        return Err(Error::Precondition(format!("prefix {prefix} has a leading zero")));
    }
    let b = f64::from(base);
    let m = pat.len();
    // prefix value scaled into [1, b): window for the fractional part of log_b(n!)
    let lead: f64 = pat.iter().take(18).enumerate().map(|(i, &d)| f64::from(d) * b.powi(-(i as i32))).sum();
    let lo = lead.log(b);
    let hi = (lead + b.powi(1 - m.min(18) as i32)).log(b);
    let ln_b = b.ln();

    let mut factorial = BigUint::one();
    let mut log_sum = CompensatedSum::default();
    let mut abs_terms = 0.0f64;
    for n in 0..=n_budget {
        if n > 1 {
            factorial *= n;
            let t = (n as f64).ln() / ln_b;
            log_sum.add(t);
            abs_terms += t;
        }
        let log = log_sum.value();
        let margin = 1e-9 + 8.0 * f64::EPSILON * (abs_terms + 1.0);
        let candidate = if log < (m + 2) as f64 {
            true
        } else {
            let frac = log - log.floor();
            [frac - 1.0, frac, frac + 1.0].iter().any(|&f| f >= lo - margin && f < hi + margin)
        };
        if candidate {
            let digits = factorial.to_radix_be(base);
            if digits.starts_with(pat) {
                return Ok(Some(LeadingDigitsHit { n, digit_count: digits.len() as u64 }));
            }
        }
    }
    Ok(None)
}

/// Equidistribution diagnostic for the fractional parts of `log_b(n!)`,
/// `n = 1..=n_max`. The Weyl-sum threshold used elsewhere is a regression
/// tripwire, not a proven rate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeylDiagnostic {
    pub label: &'static str,
    pub base: u32,
    pub n_max: u64,
    pub frequency: i64,
    /// Counts of `{log_b(n!)}` in `[i/100, (i+1)/100)`.
    pub histogram: Vec<u64>,
    /// `|1/n Σ exp(2πi·N·log_b(j!))|`
    pub weyl_magnitude: f64,
    /// Bound on the absolute error of any computed `log_b(j!)`.
    pub log_error_bound: f64,
    /// Resulting bound on the error of `weyl_magnitude`.
    pub weyl_error_bound: f64,
}

impl WeylDiagnostic {
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("bin,count\n");
        for (i, c) in self.histogram.iter().enumerate() {
            out.push_str(&format!("{i},{c}\n"));
        }
        out
    }
}

pub const HISTOGRAM_BINS: usize = 100;

pub fn logfactorial_equidistribution(base: u32, n_max: u64, frequency: i64) -> Result<WeylDiagnostic> {
    check_base(base)?;
    if n_max == 0 {
        return Err(Error::Domain("n_max must be at least 1".into()));
    }
    if frequency == 0 {
        return Err(Error::Domain("Weyl frequency N must be nonzero".into()));
    }
    let ln_b = f64::from(base).ln();
    let mut log = CompensatedSum::default();
    let mut term_error = 0.0f64;
    let mut histogram = vec![0u64; HISTOGRAM_BINS];
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for j in 1..=n_max {
        if j > 1 {
            let t = (j as f64).ln() / ln_b;
            log.add(t);
            term_error += 3.0 * f64::EPSILON * t;
        }
        let l = log.value();
        let frac = l - l.floor();
        let bin = ((frac * HISTOGRAM_BINS as f64) as usize).min(HISTOGRAM_BINS - 1);
        histogram[bin] += 1;
        // N·log ≡ N·frac (mod 1) for integer N
        let phase = frequency as f64 * frac;
        let angle = std::f64::consts::TAU * (phase - phase.floor());
        re.add(angle.cos());
        im.add(angle.sin());
    }
    let n = n_max as f64;
    let magnitude = re.value().hypot(im.value()) / n;
    let log_error_bound = term_error + 2.0 * f64::EPSILON * log.value().abs();
    // |e^{ix} − e^{iy}| ≤ |x − y|, plus rounding of each term
    let weyl_error_bound =
        std::f64::consts::TAU * frequency.unsigned_abs() as f64 * log_error_bound + 4.0 * f64::EPSILON;
    Ok(WeylDiagnostic {
        label: "diagnostic",
        base,
        n_max,
        frequency,
        histogram,
        weyl_magnitude: magnitude,
        log_error_bound,
        weyl_error_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_factorial(n: u64) -> BigUint {
        (1..=n).fold(BigUint::one(), |acc, k| acc * k)
    }

    #[test]
    fn decimal_prefix() {
        assert_eq!(factorial_word_prefix(10, 21).unwrap().to_string(), "112624120720504040320");
        assert_eq!(factorial_word_prefix(10, 1).unwrap().to_string(), "1");
        assert_eq!(factorial_word_prefix(10, 0).unwrap().len(), 0);
    }

    #[test]
    fn binary_prefix() {
        // 1, 1, 10, 110, 11000
        assert_eq!(factorial_word_prefix(2, 8).unwrap().to_string(), "11101101");
    }

    #[test]
    fn blocks_are_factorials() {
        let mut s = FactorialWordStream::new(7).unwrap();
        for n in 0..200 {
            let (idx, digits) = s.next_block();
            assert_eq!(idx, n);
            assert_eq!(digits, exact_factorial(n).to_radix_be(7));
        }
    }

    #[test]
    fn block_tracking_while_streaming() {
        let mut s = FactorialWordStream::new(10).unwrap();
        let first: Vec<u8> = s.by_ref().take(4).collect(); // 1 1 2 6
        assert_eq!(first, [1, 1, 2, 6]);
        assert_eq!(s.current_block(), 4);
        assert_eq!(s.next(), Some(2)); // 24
        assert_eq!(s.current_block(), 4);
        assert_eq!(s.next_block(), (4, vec![4]));
        assert_eq!(s.next_block(), (5, vec![1, 2, 0]));
        assert_eq!(s.emitted(), 9);
    }

    #[test]
    fn searches() {
        let d = Alphabet::digits(10).unwrap();
        assert_eq!(factor_search(10, &d.parse("5040").unwrap(), 30).unwrap(), Some(12));
        assert_eq!(factor_search(10, &d.parse("1").unwrap(), 1).unwrap(), Some(0));
        // "26" straddles the blocks 2! and 3!
        assert_eq!(factor_search(10, &d.parse("26").unwrap(), 10).unwrap(), Some(2));
        assert_eq!(factor_search(10, &d.parse("9").unwrap(), 21).unwrap(), None);
        assert!(factor_search(10, &Word::empty(&d), 10).is_err());
        assert!(factor_search(2, &d.parse("1").unwrap(), 10).is_err());
    }

    #[test]
    fn search_result_reextracts() {
        let d = Alphabet::digits(10).unwrap();
        let target = d.parse("999").unwrap();
        let pos = factor_search(10, &target, 1_000_000).unwrap().expect("999 occurs");
        let prefix = factorial_word_prefix(10, pos as usize + 3).unwrap();
        assert_eq!(prefix.factor(pos as usize, pos as usize + 3).unwrap(), target);
        assert!(factor_search(10, &target, pos + 2).unwrap().is_none());
    }

    #[test]
    fn coverage_small() {
        let r = coverage_profile(10, 1, 21, false).unwrap();
        assert_eq!(r.found, 8);
        assert_eq!(r.missing, ["8", "9"]);
        // binary word starts 1,1,10,…: the first 0 is digit 4
        let r = coverage_profile(2, 1, 3, false).unwrap();
        assert_eq!((r.found, r.total), (1, 2));
        let r = coverage_profile(2, 1, 4, false).unwrap();
        assert_eq!((r.found, r.total), (2, 2));
        assert_eq!(r.full_at, Some(4));
    }

    #[test]
    fn coverage_positions_reverify() {
        let r = coverage_profile(10, 2, 5_000, true).unwrap();
        let prefix = factorial_word_prefix(10, 5_000).unwrap();
        let alphabet = Alphabet::digits(10).unwrap();
        for (cell, pos) in r.first_positions.unwrap().iter().enumerate() {
            if let Some(p) = pos {
                let p = *p as usize;
                assert_eq!(prefix.factor(p, p + 2).unwrap(), decode_factor(&alphabet, cell as u64, 2));
            }
        }
    }

    #[test]
    fn coverage_grows_with_budget() {
        let mut last = 0.0;
        for budget in [10, 50, 100, 500, 1000, 3000] {
            let r = coverage_profile(10, 2, budget, false).unwrap();
            assert!(r.coverage >= last);
            last = r.coverage;
        }
    }

    #[test]
    fn coverage_memory_guard() {
        assert!(matches!(coverage_profile(10, 9, 100, false), Err(Error::Resource(_))));
    }

    #[test]
    fn leading_digits() {
        let d = Alphabet::digits(10).unwrap();
        assert_eq!(leading_digits_search(10, &d.parse("1").unwrap(), 10).unwrap().unwrap().n, 0);
        assert_eq!(leading_digits_search(10, &d.parse("5040").unwrap(), 100).unwrap().unwrap().n, 7);
        assert!(leading_digits_search(10, &d.parse("05").unwrap(), 100).is_err());
        let hit = leading_digits_search(10, &d.parse("99").unwrap(), 10_000).unwrap().unwrap();
        let exact = exact_factorial(hit.n).to_string();
        assert!(exact.starts_with("99"));
        // no smaller n works
        for n in 0..hit.n {
            assert!(!exact_factorial(n).to_string().starts_with("99"));
        }
    }

    #[test]
    fn leading_digits_other_base() {
        let d = Alphabet::digits(3).unwrap();
        let target = d.parse("2102").unwrap();
        let hit = leading_digits_search(3, &target, 2_000).unwrap().unwrap();
        let brute = (0..=2_000u64)
            .find(|&n| exact_factorial(n).to_radix_be(3).starts_with(target.symbols()))
            .unwrap();
        assert_eq!(hit.n, brute);
    }

    #[test]
    fn weyl_single_term() {
        let w = logfactorial_equidistribution(10, 1, 1).unwrap();
        assert_eq!(w.histogram[0], 1);
        assert!((w.weyl_magnitude - 1.0).abs() < 1e-15);
        assert!(logfactorial_equidistribution(10, 10, 0).is_err());
    }
}
