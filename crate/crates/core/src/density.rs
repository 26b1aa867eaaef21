//! Symbol frequencies, window envelopes and the balance bound, the golden
//! ratio limit of `F(n)/F(n+1)`, and Perron–Frobenius data of the m-bonacci
//! substitutions.

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::morphism::mbonacci_morphism;
use crate::report::{ratio_as_string, Approx};
use crate::word::{Symbol, Word};

/// `|w|_s / |w|` as an exact rational.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymbolFrequency {
    pub symbol: char,
    pub count: u64,
    pub length: u64,
    #[serde(serialize_with = "ratio_as_string")]
    pub frequency: Ratio<u64>,
    /// Set when `w` is empty; the frequency is then reported as 0.
    pub empty_word: bool,
}

fn check_symbol(w: &Word, s: Symbol) -> Result<char> {
    w.alphabet()
        .label(s)
        .ok_or_else(|| Error::Domain(format!("symbol index {s} outside alphabet {}", w.alphabet())))
}

pub fn symbol_frequency(w: &Word, s: Symbol) -> Result<SymbolFrequency> {
    let symbol = check_symbol(w, s)?;
    let count = w.occurrences(s) as u64;
    let length = w.len() as u64;
    let frequency = if length == 0 { Ratio::zero() } else { Ratio::new(count, length) };
    Ok(SymbolFrequency { symbol, count, length, frequency, empty_word: length == 0 })
}

/// Smallest and largest number of `s` over all length-`n` windows, with the
/// start of the first window attaining each.
fn window_extremes(w: &[Symbol], s: Symbol, n: usize) -> ((u64, usize), (u64, usize)) {
    let mut count = w[..n].iter().filter(|&&x| x == s).count() as u64;
    let mut min = (count, 0);
    let mut max = (count, 0);
    for start in 1..=w.len() - n {
        if w[start - 1] == s {
            count -= 1;
        }
        if w[start + n - 1] == s {
            count += 1;
        }
        if count < min.0 {
            min = (count, start);
        }
        if count > max.0 {
            max = (count, start);
        }
    }
    (min, max)
}

fn check_window(w: &Word, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("window length must be at least 1".into()));
    }
    if n > w.len() {
        return Err(Error::Range { requested: n, available: w.len() });
    }
    Ok(())
}

/// `max |v|_s / n` over the length-`n` factors `v` of `w`.
pub fn window_frequency_sup(w: &Word, s: Symbol, n: usize) -> Result<Ratio<u64>> {
    check_symbol(w, s)?;
    check_window(w, n)?;
    let (_, (max, _)) = window_extremes(w.symbols(), s, n);
    Ok(Ratio::new(max, n as u64))
}

/// Global frequency and the window envelope for one window length. A finite
/// prefix can only show the envelope, never certify a uniform limit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrequencyReport {
    pub symbol: char,
    pub window: usize,
    #[serde(serialize_with = "ratio_as_string")]
    pub global: Ratio<u64>,
    #[serde(serialize_with = "ratio_as_string")]
    pub window_sup: Ratio<u64>,
    #[serde(serialize_with = "ratio_as_string")]
    pub window_inf: Ratio<u64>,
    pub target: f64,
    /// `max |count/n − target|` over all windows.
    pub max_deviation: f64,
}

pub fn frequency_report(w: &Word, s: Symbol, n: usize, target: f64) -> Result<FrequencyReport> {
    let symbol = check_symbol(w, s)?;
    check_window(w, n)?;
    let ((min, _), (max, _)) = window_extremes(w.symbols(), s, n);
    let nf = n as f64;
    Ok(FrequencyReport {
        symbol,
        window: n,
        global: symbol_frequency(w, s)?.frequency,
        window_sup: Ratio::new(max, n as u64),
        window_inf: Ratio::new(min, n as u64),
        target,
        max_deviation: (max as f64 / nf - target).abs().max((min as f64 / nf - target).abs()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WindowDeviation {
    pub window: usize,
    pub start: usize,
    pub deviation: f64,
    /// `1/n`
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BalanceReport {
    pub symbol: char,
    pub target: f64,
    pub windows: Vec<WindowDeviation>,
    /// The window whose deviation comes closest to its bound.
    pub worst: WindowDeviation,
}

/// Checks `|count/n − target| ≤ 1/n` over every length-`n` window for each
/// `n` in `lengths`. A violation is returned as [`Error::Balance`] naming the
/// offending window.
pub fn balance_check<I>(w: &Word, s: Symbol, target: f64, lengths: I) -> Result<BalanceReport>
where
    I: IntoIterator<Item = usize>,
{
    let symbol = check_symbol(w, s)?;
    let mut windows = Vec::new();
    for n in lengths {
        check_window(w, n)?;
        let ((min, min_at), (max, max_at)) = window_extremes(w.symbols(), s, n);
        let nf = n as f64;
        let hi = (max as f64 / nf - target).abs();
        let lo = (min as f64 / nf - target).abs();
        let (deviation, start) = if hi >= lo { (hi, max_at) } else { (lo, min_at) };
        let wd = WindowDeviation { window: n, start, deviation, bound: 1.0 / nf };
        if deviation > wd.bound {
            return Err(Error::Balance { window: n, start, deviation, bound: wd.bound });
        }
        windows.push(wd);
    }
    let worst = windows
        .iter()
        .copied()
        .max_by(|a, b| (a.deviation / a.bound).total_cmp(&(b.deviation / b.bound)))
        .ok_or_else(|| Error::Domain("balance check needs at least one window length".into()))?;
    Ok(BalanceReport { symbol, target, windows, worst })
}

/// `φ − 1 = (√5 − 1)/2`.
pub fn golden_conjugate() -> f64 {
    (5f64.sqrt() - 1.0) / 2.0
}

/// Exact position of `p/q` relative to `φ − 1`.
///
/// `p/q − (√5−1)/2 = (2p+q − q√5)/(2q)`; multiplying by the conjugate gives
/// `|·| = Δ / (2q(2p+q+q√5))` with `Δ = |(2p+q)² − 5q²|`, and `q√5` is
/// bracketed by the integer square root of `5q²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoldenDeviation {
    pub above_limit: bool,
    #[serde(serialize_with = "ratio_as_string")]
    pub lower: Ratio<BigUint>,
    #[serde(serialize_with = "ratio_as_string")]
    pub upper: Ratio<BigUint>,
}

pub fn golden_deviation(p: &BigUint, q: &BigUint) -> GoldenDeviation {
    let s = BigUint::from(2u32) * p + q;
    let five_q2 = BigUint::from(5u32) * q * q;
    let s2 = &s * &s;
    let above_limit = s2 > five_q2;
    let delta = if above_limit { &s2 - &five_q2 } else { &five_q2 - &s2 };
    let root = five_q2.sqrt(); // root ≤ q√5 < root + 1
    let two_q = BigUint::from(2u32) * q;
    let upper = Ratio::new(delta.clone(), &two_q * (&s + &root));
    let lower = Ratio::new(delta, &two_q * (&s + &root + BigUint::one()));
    GoldenDeviation { above_limit, lower, upper }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoldenTerm {
    pub n: usize,
    /// `F(n)/F(n+1)`, unreduced consecutive Fibonacci numbers.
    #[serde(serialize_with = "crate::report::biguint_as_string")]
    pub numerator: BigUint,
    #[serde(serialize_with = "crate::report::biguint_as_string")]
    pub denominator: BigUint,
    pub deviation: GoldenDeviation,
    pub approx_deviation: f64,
}

impl GoldenTerm {
    pub fn ratio(&self) -> Ratio<BigUint> {
        Ratio::new(self.numerator.clone(), self.denominator.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GoldenDensitySequence {
    pub limit: Approx,
    pub terms: Vec<GoldenTerm>,
}

/// `D(n) = F(n)/F(n+1)` for `1 ≤ n ≤ n_max`.
pub fn golden_density(n_max: usize) -> Result<GoldenDensitySequence> {
    if n_max == 0 {
        return Err(Error::Domain("golden_density needs n_max >= 1".into()));
    }
    let mut terms = Vec::with_capacity(n_max);
    let (mut a, mut b) = (BigUint::one(), BigUint::one()); // F(1), F(2)
    for n in 1..=n_max {
        let deviation = golden_deviation(&a, &b);
        let approx_deviation = deviation.upper.numer().to_f64().unwrap_or(f64::NAN)
            / deviation.upper.denom().to_f64().unwrap_or(f64::NAN);
        terms.push(GoldenTerm {
            n,
            numerator: a.clone(),
            denominator: b.clone(),
            deviation,
            approx_deviation,
        });
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    Ok(GoldenDensitySequence { limit: Approx::new(golden_conjugate(), f64::EPSILON), terms })
}

/// Perron–Frobenius data of the m-bonacci substitution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerronData {
    pub m: usize,
    /// Dominant root of `x^m − x^{m−1} − ⋯ − 1`.
    pub eigenvalue: Approx,
    /// `(ρ^{-1}, …, ρ^{-m})`.
    pub left_eigenvector: Vec<f64>,
    /// `Σ ρ^{-i}`, equal to 1 by the defining polynomial.
    pub eigenvector_sum: f64,
    /// Moduli of the remaining roots, descending.
    pub conjugate_moduli: Vec<f64>,
    pub pisot: bool,
    /// `|poly(ρ)|`
    pub polynomial_residual: f64,
    /// `‖dA − ρd‖_∞` against the adjacency matrix of the substitution.
    pub eigenvector_residual: f64,
}

fn mbonacci_poly(m: usize, x: f64) -> (f64, f64) {
    // Horner for x^m − Σ_{i<m} x^i and its derivative
    let mut p = 1.0;
    let mut dp = 0.0;
    for _ in 0..m {
        dp = dp * x + p;
        p = p * x - 1.0;
    }
    (p, dp)
}

/// Bisection on `(1, 2)`, where the polynomial changes sign, then Newton.
fn dominant_root(m: usize) -> (f64, f64) {
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    while hi - lo > 1e-6 {
        let mid = 0.5 * (lo + hi);
        if mbonacci_poly(m, mid).0 < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..50 {
        let (p, dp) = mbonacci_poly(m, x);
        let step = p / dp;
        let nx = (x - step).clamp(lo, hi);
        if (nx - x).abs() <= 1e-16 * x {
            x = nx;
            break;
        }
        x = nx;
    }
    let (p, dp) = mbonacci_poly(m, x);
    // first-order error estimate, floored at a few ulps
    let tol = (p / dp).abs().max(4.0 * f64::EPSILON * x);
    (x, tol)
}

pub fn perron_eigenvalue(m: usize) -> Result<PerronData> {
    let sigma = mbonacci_morphism(m)?;
    let (rho, tol) = dominant_root(m);
    let left_eigenvector: Vec<f64> = (1..=m as i32).map(|i| rho.powi(-i)).collect();
    let eigenvector_sum = left_eigenvector.iter().sum();

    let a = sigma.adjacency_matrix();
    let eigenvector_residual = (0..m)
        .map(|j| {
            let dj: f64 = (0..m).map(|i| left_eigenvector[i] * a.get(i, j) as f64).sum();
            (dj - rho * left_eigenvector[j]).abs()
        })
        .fold(0.0, f64::max);

    // companion matrix of x^m − x^{m−1} − ⋯ − 1
    // first row of ones, ones on the subdiagonal
    let companion = DMatrix::from_fn(m, m, |i, j| if i == 0 || i == j + 1 { 1.0 } else { 0.0 });
    let mut roots: Vec<_> = companion.complex_eigenvalues().iter().copied().collect();
    let dominant = roots
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - rho).norm().total_cmp(&(b.1 - rho).norm()))
        .map(|(i, _)| i)
        .expect("m >= 2 roots");
    roots.remove(dominant);
    let mut conjugate_moduli: Vec<f64> = roots.iter().map(|z| z.norm()).collect();
    conjugate_moduli.sort_by(|a, b| b.total_cmp(a));
    let pisot = rho > 1.0 && conjugate_moduli.iter().all(|&r| r < 1.0);

    Ok(PerronData {
        m,
        eigenvalue: Approx::new(rho, tol),
        left_eigenvector,
        eigenvector_sum,
        conjugate_moduli,
        pisot,
        polynomial_residual: mbonacci_poly(m, rho).0.abs(),
        eigenvector_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::fibonacci_morphism;
    use crate::word::Alphabet;

    fn fib(n: usize) -> u64 {
        let (mut a, mut b) = (0u64, 1u64);
        for _ in 0..n {
            (a, b) = (b, a + b);
        }
        a
    }

    #[test]
    fn frequencies() {
        let ab = Alphabet::binary_ab();
        let f = symbol_frequency(&ab.parse("aaaa").unwrap(), 0).unwrap();
        assert_eq!(f.frequency, Ratio::from_integer(1));
        let e = symbol_frequency(&Word::empty(&ab), 0).unwrap();
        assert!(e.empty_word);
        assert_eq!(e.frequency, Ratio::zero());
        assert!(symbol_frequency(&ab.parse("a").unwrap(), 2).is_err());
    }

    #[test]
    fn fibonacci_prefix_frequency_is_exact() {
        let w = fibonacci_morphism().fixed_point_prefix(0, 6765).unwrap();
        let f = symbol_frequency(&w, 1).unwrap();
        assert_eq!(f.frequency, Ratio::new(2584, 6765));
        for n in 10..=25 {
            let w = fibonacci_morphism().fixed_point_prefix(0, fib(n) as usize).unwrap();
            assert_eq!(symbol_frequency(&w, 1).unwrap().frequency, Ratio::new(fib(n - 2), fib(n)));
        }
    }

    #[test]
    fn window_sup_examples() {
        let ab = Alphabet::binary_ab();
        assert_eq!(window_frequency_sup(&ab.parse("abab").unwrap(), 0, 2).unwrap(), Ratio::new(1, 2));
        assert_eq!(window_frequency_sup(&ab.parse("aab").unwrap(), 0, 2).unwrap(), Ratio::from_integer(1));
        assert!(matches!(window_frequency_sup(&ab.parse("aab").unwrap(), 0, 4), Err(Error::Range { .. })));
        let w = fibonacci_morphism().fixed_point_prefix(0, 5000).unwrap();
        let sup = window_frequency_sup(&w, 1, 100).unwrap();
        let target = 1.0 / (golden_conjugate() + 1.0).powi(2);
        assert!((*sup.numer() as f64 / *sup.denom() as f64 - target).abs() <= 0.01);
    }

    #[test]
    fn balance_examples() {
        let ab = Alphabet::binary_ab();
        let constant = ab.parse(&"a".repeat(50)).unwrap();
        let r = balance_check(&constant, 0, 1.0, 1..=20).unwrap();
        assert_eq!(r.worst.deviation, 0.0);
        let alt = ab.parse(&"ab".repeat(40)).unwrap();
        let r = balance_check(&alt, 0, 0.5, (2..=40).step_by(2)).unwrap();
        assert!(r.windows.iter().all(|w| w.deviation == 0.0));
    }

    #[test]
    fn balance_violation_names_window() {
        let w = Alphabet::binary_ab().parse("aaaaabbbbb").unwrap();
        match balance_check(&w, 0, 0.5, [4]) {
            Err(Error::Balance { window, start, .. }) => {
                assert_eq!(window, 4);
                assert_eq!(start, 0);
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn golden_terms() {
        let g = golden_density(40).unwrap();
        assert_eq!(g.terms[0].ratio(), Ratio::from_integer(BigUint::one()));
        assert_eq!(g.terms[9].ratio(), Ratio::new(BigUint::from(55u32), BigUint::from(89u32)));
        // alternation around the limit: D(1) = 1 is above
        for t in &g.terms {
            assert_eq!(t.deviation.above_limit, t.n % 2 == 1, "n={}", t.n);
            let q2 = &t.denominator * &t.denominator;
            assert!(t.deviation.upper < Ratio::new(BigUint::one(), q2));
            assert!(t.deviation.lower <= t.deviation.upper);
        }
        let bound = Ratio::new(BigUint::one(), BigUint::from(10u32).pow(15));
        assert!(g.terms[39].deviation.upper < bound);
        assert!(golden_density(0).is_err());
    }

    #[test]
    fn golden_deviation_against_float() {
        let p = BigUint::from(8u32);
        let q = BigUint::from(13u32);
        let d = golden_deviation(&p, &q);
        let exact = (8.0 / 13.0 - golden_conjugate()).abs();
        let lo = d.lower.numer().to_f64().unwrap() / d.lower.denom().to_f64().unwrap();
        let hi = d.upper.numer().to_f64().unwrap() / d.upper.denom().to_f64().unwrap();
        assert!(lo <= exact * (1.0 + 1e-12) && exact <= hi * (1.0 + 1e-12));
    }

    #[test]
    fn perron_known_constants() {
        let two = perron_eigenvalue(2).unwrap();
        assert!((two.eigenvalue.value - 1.618_033_988_749_895).abs() < 1e-12);
        let three = perron_eigenvalue(3).unwrap();
        assert!((three.eigenvalue.value - 1.839_286_755_214_161).abs() < 1e-12);
        assert!(perron_eigenvalue(1).is_err());
    }

    #[test]
    fn perron_invariants() {
        for m in 2..=8 {
            let d = perron_eigenvalue(m).unwrap();
            assert!(d.eigenvalue.value > 1.0 && d.eigenvalue.value < 2.0);
            assert!(d.polynomial_residual < 1e-10);
            assert!((d.eigenvector_sum - 1.0).abs() < 1e-10);
            assert!(d.eigenvector_residual < 1e-9);
            assert_eq!(d.conjugate_moduli.len(), m - 1);
            assert!(d.pisot, "m={m}");
        }
    }

    #[test]
    fn row_sums_of_powers_give_iterate_lengths() {
        for m in 2..=5 {
            let sigma = mbonacci_morphism(m).unwrap();
            let a = sigma.adjacency_matrix();
            for k in 0..=10u32 {
                let sums = a.checked_pow(k).unwrap().row_sums();
                for (i, &len) in sums.iter().enumerate() {
                    let w = Word::from_symbols(sigma.source(), vec![i as Symbol]).unwrap();
                    assert_eq!(sigma.iterate(&w, k as usize).unwrap().len() as u64, len);
                }
            }
        }
    }
}
