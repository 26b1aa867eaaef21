//! Self-check behind `fibword verify`: the eleven acceptance criteria, each
//! run against small exhaustive oracles kept in this module.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::complexity::{
    arithmetic_complexity, delta_apply, delta_factorize, enumerate_square_free, factor_complexity,
    palindromic_factor_count, scattered_palindrome_count, SquareFreeCensus, DEFAULT_NODE_BUDGET,
};
use crate::density::{balance_check, golden_conjugate, golden_density, perron_eigenvalue, symbol_frequency};
use crate::error::Result;
use crate::factorial_word::{coverage_profile, decode_factor, factorial_word_prefix};
use crate::modfib::{density_formula, residue_density_bruteforce, DEFAULT_MODULUS_BUDGET};
use crate::morphism::{fibonacci_morphism, mbonacci_morphism};
use crate::word::{Alphabet, Symbol, Word};

/// Digits of the base-10 factorial word after which every two-digit factor
/// has appeared. Found by the implementation's own scan and frozen here.
pub const COVERAGE_BUDGET_B10_K2: u64 = 608;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionOutcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
    #[serde(skip)]
    pub time_limit: Duration,
}

impl CriterionOutcome {
    pub fn within_time(&self) -> bool {
        self.elapsed <= self.time_limit
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    pub workers: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { seed: DEFAULT_SEED, workers: 1 }
    }
}

type Check = fn(&VerifyOptions) -> Result<(bool, String)>;

const CRITERIA: [(u32, &str, u64, Check); 11] = [
    (1, "modular density exactness", 4, modular_density),
    (2, "brute-force density agreement", 10, brute_force_density),
    (3, "Sturmian factor complexity", 5, sturmian_complexity),
    (4, "balance bound", 30, balance_bound),
    (5, "golden density", 1, golden_limit),
    (6, "Perron-Frobenius data", 1, perron_data),
    (7, "Tribonacci frequencies", 5, tribonacci_frequencies),
    (8, "square-free census", 60, square_free_census),
    (9, "factorial word", 60, factorial_word),
    (10, "delta round trip and palindromes", 10, delta_and_palindromes),
    (11, "complexity sandwich", 30, sandwich),
];

pub fn criterion_count() -> usize {
    CRITERIA.len()
}

/// Runs criterion `id` (1-based). An error inside a check counts as a failure.
pub fn run_criterion(id: u32, opts: &VerifyOptions) -> Option<CriterionOutcome> {
    let &(id, name, secs, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let (passed, detail) = match check(opts) {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Some(CriterionOutcome {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
        time_limit: Duration::from_secs(secs),
    })
}

pub fn run_all(opts: &VerifyOptions) -> Vec<CriterionOutcome> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.0, opts)).collect()
}

/// One line per criterion, `PASS`/`FAIL` first.
pub fn table(outcomes: &[CriterionOutcome], timings: bool) -> String {
    let mut out = String::new();
    for o in outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("{status}  {:>2}  {:<34} {}", o.id, o.name, o.detail));
        if timings {
            out.push_str(&format!("  [{:.3}s]", o.elapsed.as_secs_f64()));
        }
        out.push('\n');
    }
    out
}

fn ratio(n: u64, d: u64) -> Ratio<BigUint> {
    Ratio::new(BigUint::from(n), BigUint::from(d))
}

fn modular_density(_: &VerifyOptions) -> Result<(bool, String)> {
    // p, dens, pisano, restricted, lucas zeros
    let cases: [(u64, (u64, u64), u64, u64, &[u64]); 4] = [
        (13, (9, 13), 28, 7, &[]),
        (19, (441, 760), 18, 18, &[9]),
        (31, (19, 31), 30, 30, &[15]),
        (7, (41, 56), 16, 8, &[4, 12]),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (p, (num, den), pisano, restricted, zeros) in cases {
        let t = Instant::now();
        let d = density_formula(p)?;
        ok &= d.dens == ratio(num, den)
            && d.pisano == pisano
            && d.restricted == restricted
            && d.lucas_zeros == zeros
            && t.elapsed() < Duration::from_secs(1);
        parts.push(format!("dens({p})={}", d.dens_string()));
    }
    Ok((ok, parts.join(" ")))
}

fn brute_force_density(_: &VerifyOptions) -> Result<(bool, String)> {
    let b = DEFAULT_MODULUS_BUDGET;
    let d1 = residue_density_bruteforce(19, 1, b)?;
    let d2 = residue_density_bruteforce(19, 2, b)?;
    let s13 = (1..=2)
        .map(|l| residue_density_bruteforce(13, l, b))
        .collect::<Result<Vec<_>>>()?;
    let ok = d1 == ratio(12, 19) && d2 == ratio(210, 361) && s13.iter().all(|d| *d == ratio(9, 13));
    Ok((ok, format!("p=19: {d1}, {d2}; p=13: {}, {}", s13[0], s13[1])))
}

fn fibonacci_prefix(len: usize) -> Result<Word> {
    fibonacci_morphism().fixed_point_prefix(0, len)
}

fn sturmian_complexity(_: &VerifyOptions) -> Result<(bool, String)> {
    let w = fibonacci_prefix(20_000)?;
    let profile = factor_complexity(&w, 200)?;
    let bad = (1..=200).find(|&n| profile.count(n) != Some(n as u64 + 1));
    Ok(match bad {
        None => (true, "p(n) = n+1 for n <= 200 on 20000 letters".into()),
        Some(n) => (false, format!("p({n}) = {:?}", profile.count(n))),
    })
}

fn balance_bound(_: &VerifyOptions) -> Result<(bool, String)> {
    let w = fibonacci_prefix(100_000)?;
    let target = golden_conjugate() * golden_conjugate();
    match balance_check(&w, 1, target, 10..=1000) {
        Ok(r) => Ok((
            true,
            format!("worst n={} deviation {:.3e} <= {:.3e}", r.worst.window, r.worst.deviation, r.worst.bound),
        )),
        Err(e) => Ok((false, e.to_string())),
    }
}

fn golden_limit(_: &VerifyOptions) -> Result<(bool, String)> {
    let seq = golden_density(40)?;
    let term = &seq.terms[39];
    let bound = Ratio::new(BigUint::from(1u32), BigUint::from(10u32).pow(15));
    let ok = term.deviation.upper < bound;
    Ok((ok, format!("|F(40)/F(41) - (phi-1)| <= {:.3e}", term.approx_deviation)))
}

fn perron_data(_: &VerifyOptions) -> Result<(bool, String)> {
    let mut ok = true;
    let mut rho3 = f64::NAN;
    for m in 2..=8 {
        let d = perron_eigenvalue(m)?;
        ok &= d.polynomial_residual < 1e-10
            && (d.eigenvector_sum - 1.0).abs() < 1e-10
            && d.eigenvector_residual < 1e-9
            && d.pisot;
        if m == 3 {
            rho3 = d.eigenvalue.value;
        }
    }
    ok &= (rho3 - 1.839_286_755_2).abs() < 1e-10;
    Ok((ok, format!("m=2..8 Pisot, rho_3 = {rho3:.10}")))
}

fn tribonacci_frequencies(_: &VerifyOptions) -> Result<(bool, String)> {
    let w = mbonacci_morphism(3)?.fixed_point_prefix(0, 100_000)?;
    let tau = perron_eigenvalue(3)?.eigenvalue.value;
    let mut worst = 0f64;
    for s in 0..3u8 {
        let f = symbol_frequency(&w, s)?;
        let x = *f.frequency.numer() as f64 / *f.frequency.denom() as f64;
        worst = worst.max((x - tau.powi(-(i32::from(s) + 1))).abs());
    }
    Ok((worst <= 1e-3, format!("max |freq - tau^-i| = {worst:.2e}")))
}

fn has_square(s: &[Symbol]) -> bool {
    (0..s.len()).any(|i| (1..=(s.len() - i) / 2).any(|h| s[i..i + h] == s[i + h..i + 2 * h]))
}

fn filter_count(k: usize, n: usize) -> u64 {
    let total = (k as u64).pow(n as u32);
    (0..total)
        .filter(|&code| {
            let mut c = code;
            let s: Vec<Symbol> = (0..n)
                .map(|_| {
                    let d = (c % k as u64) as Symbol;
                    c /= k as u64;
                    d
                })
                .collect();
            !has_square(&s)
        })
        .count() as u64
}

fn square_free_census(opts: &VerifyOptions) -> Result<(bool, String)> {
    let census = SquareFreeCensus::compute(3, 20, DEFAULT_NODE_BUDGET, opts.workers)?;
    let filter_ok = (0..=12).all(|n| census.counts[n] == filter_count(3, n));
    let outside: Vec<usize> = (3..=20)
        .filter(|&n| {
            let a = census.counts[n] as f64;
            a < 6.0 * 1.032f64.powi(n as i32) || a > 6.0 * 1.379f64.powi(n as i32)
        })
        .collect();
    let bounds_ok = outside.is_empty();
    let binary: Vec<String> =
        enumerate_square_free(2, None, DEFAULT_NODE_BUDGET)?.iter().map(|w| w.to_string()).collect();
    let mut sorted = binary.clone();
    sorted.sort();
    let binary_ok = sorted == ["a", "ab", "aba", "b", "ba", "bab"];
    Ok((
        filter_ok && bounds_ok && binary_ok,
        format!(
            "a(12)={} a(20)={} binary={{{}}} bounds fail at n={:?}",
            census.counts[12],
            census.counts[20],
            binary.join(","),
            outside
        ),
    ))
}

fn factorial_word(_: &VerifyOptions) -> Result<(bool, String)> {
    let prefix_ok = factorial_word_prefix(10, 21)?.to_string() == "112624120720504040320";
    let r = coverage_profile(10, 2, COVERAGE_BUDGET_B10_K2, true)?;
    let stream = factorial_word_prefix(10, COVERAGE_BUDGET_B10_K2 as usize)?;
    let digits = Alphabet::digits(10)?;
    let positions_ok = r.first_positions.as_ref().is_some_and(|ps| {
        ps.iter().enumerate().all(|(code, p)| {
            p.is_some_and(|p| {
                let f = decode_factor(&digits, code as u64, 2);
                stream.symbols()[p as usize..p as usize + 2] == *f.symbols()
            })
        })
    });
    let ok = prefix_ok && r.found == 100 && r.full_at == Some(COVERAGE_BUDGET_B10_K2) && positions_ok;
    Ok((ok, format!("coverage {}/{} at {:?} digits", r.found, r.total, r.full_at)))
}

fn random_word(rng: &mut ChaCha8Rng, alphabet: &Alphabet, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let symbols = (0..len).map(|_| rng.gen_range(0..alphabet.len()) as Symbol).collect();
    Word::from_symbols(alphabet, symbols).expect("symbols drawn from the alphabet")
}

fn delta_and_palindromes(opts: &VerifyOptions) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let abc = Alphabet::ternary_abc();
    let mut failures = 0;
    for _ in 0..10_000 {
        let w = random_word(&mut rng, &abc, 24);
        if delta_factorize(&delta_apply(&w)?)? != w {
            failures += 1;
        }
        let letters = Alphabet::letters(rng.gen_range(2..=3))?;
        let v = random_word(&mut rng, &letters, 24);
        if BigUint::from(palindromic_factor_count(&v)) > scattered_palindrome_count(&v)? {
            failures += 1;
        }
    }
    Ok((failures == 0, format!("10000 words, {failures} failures")))
}

fn brute_factor_count(s: &[Symbol], n: usize) -> u64 {
    s.windows(n).collect::<HashSet<_>>().len() as u64
}

fn brute_arithmetic_count(s: &[Symbol], n: usize) -> u64 {
    let mut seen = HashSet::new();
    for i in 0..s.len() {
        for d in 1..=s.len() {
            if i + (n - 1) * d >= s.len() {
                break;
            }
            seen.insert((0..n).map(|t| s[i + t * d]).collect::<Vec<_>>());
        }
    }
    seen.len() as u64
}

fn sandwich(opts: &VerifyOptions) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5a5a);
    let mut failures = 0;
    for _ in 0..500 {
        let k = rng.gen_range(2..=3);
        let len = rng.gen_range(1..=12);
        let alphabet = Alphabet::letters(k)?;
        let symbols = (0..len).map(|_| rng.gen_range(0..k) as Symbol).collect();
        let w = Word::from_symbols(&alphabet, symbols)?;
        let f = factor_complexity(&w, len)?;
        let a = arithmetic_complexity(&w, len)?;
        for n in 1..=len {
            let (fc, ac) = (f.count(n).unwrap_or(0), a.count(n).unwrap_or(0));
            let ok = fc == brute_factor_count(w.symbols(), n)
                && ac == brute_arithmetic_count(w.symbols(), n)
                && fc <= ac
                && ac <= (k as u64).pow(n as u32);
            if !ok {
                failures += 1;
            }
        }
    }
    Ok((failures == 0, format!("500 words, {failures} failures")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_arithmetic_small() {
        // "aab": progressions of length 2 read aa, ab, ab
        assert_eq!(brute_arithmetic_count(&[0, 0, 1], 2), 2);
        assert_eq!(filter_count(3, 3), 12);
    }

    #[test]
    fn cheap_criteria_pass() {
        let opts = VerifyOptions::default();
        for id in [1, 2, 5, 6, 9] {
            let o = run_criterion(id, &opts).unwrap();
            assert!(o.passed, "criterion {id}: {}", o.detail);
        }
    }
}
