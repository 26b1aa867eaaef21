//! Fibonacci and Lucas numbers modulo `m`, Pisano and restricted periods,
//! Lucas zeros, and the limiting density of Fibonacci residues modulo `p^λ`.
//!
//! All density arithmetic is exact.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::report::{ratio_as_string, ratio_string};

/// Largest modulus `p^λ` the brute-force density scan accepts by default.
pub const DEFAULT_MODULUS_BUDGET: u64 = 10_000_000;

fn check_modulus(m: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::Domain("modulus must be at least 1".into()));
    }
    Ok(())
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(m)) as u64
}

fn addmod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) + u128::from(b)) % u128::from(m)) as u64
}

fn submod(a: u64, b: u64, m: u64) -> u64 {
    addmod(a, m - b % m, m)
}

/// One fast-doubling step from `(F(k), F(k+1))` to `(F(2k), F(2k+1))`, then
/// optionally forward by one.
fn doubling_step((a, b): (u64, u64), bit: bool, m: u64) -> (u64, u64) {
    let c = mulmod(a, submod(addmod(b, b, m), a, m), m); // F(2k) = F(k)(2F(k+1) − F(k))
    let d = addmod(mulmod(a, a, m), mulmod(b, b, m), m); // F(2k+1) = F(k)² + F(k+1)²
    if bit {
        (d, addmod(c, d, m))
    } else {
        (c, d)
    }
}

/// `(F(n) mod m, F(n+1) mod m)` by fast doubling.
pub fn fib_pair_mod(n: u64, m: u64) -> Result<(u64, u64)> {
    check_modulus(m)?;
    let mut pair = (0, 1 % m);
    for i in (0..u64::BITS - n.leading_zeros()).rev() {
        pair = doubling_step(pair, n >> i & 1 == 1, m);
    }
    Ok(pair)
}

/// [`fib_pair_mod`] for an arbitrary-precision index.
pub fn fib_pair_mod_big(n: &BigUint, m: u64) -> Result<(u64, u64)> {
    check_modulus(m)?;
    let mut pair = (0, 1 % m);
    for i in (0..n.bits()).rev() {
        pair = doubling_step(pair, n.bit(i), m);
    }
    Ok(pair)
}

/// `L(n) mod m` via `L(n) = 2F(n+1) − F(n)`.
pub fn lucas_mod(n: u64, m: u64) -> Result<u64> {
    let (f, g) = fib_pair_mod(n, m)?;
    Ok(submod(addmod(g, g, m), f, m))
}

/// `(F(n), F(n+1))` exactly.
pub fn fib_pair_big(n: u64) -> (BigUint, BigUint) {
    let mut a = BigUint::zero();
    let mut b = BigUint::one();
    for i in (0..u64::BITS - n.leading_zeros()).rev() {
        let two_b = &b << 1u32;
        let c = &a * (&two_b - &a);
        let d = &a * &a + &b * &b;
        if n >> i & 1 == 1 {
            b = &c + &d;
            a = d;
        } else {
            a = c;
            b = d;
        }
    }
    (a, b)
}

/// Least `k ≥ 1` with `F(n+k) ≡ F(n) (mod m)` for all `n`, found by walking
/// the state `(F(k), F(k+1))` until it returns to `(0, 1)`.
pub fn pisano_period(m: u64) -> Result<u64> {
    check_modulus(m)?;
    if m == 1 {
        return Ok(1);
    }
    let (mut a, mut b) = (0u64, 1u64);
    let mut k = 0u64;
    loop {
        (a, b) = (b, addmod(a, b, m));
        k += 1;
        if a == 0 && b == 1 {
            return Ok(k);
        }
    }
}

/// Least `k ≥ 1` with `F(k) ≡ 0 (mod m)`.
pub fn restricted_period(m: u64) -> Result<u64> {
    check_modulus(m)?;
    let (mut a, mut b) = (1 % m, 1 % m);
    let mut k = 1u64;
    while a != 0 {
        (a, b) = (b, addmod(a, b, m));
        k += 1;
    }
    Ok(k)
}

/// Indices `i ∈ [0, π(m))` with `L(i) ≡ 0 (mod m)`, ascending.
pub fn lucas_zeros(m: u64) -> Result<Vec<u64>> {
    let period = pisano_period(m)?;
    let (mut l0, mut l1) = (2 % m, 1 % m);
    let mut zeros = Vec::new();
    for i in 0..period {
        if l0 == 0 {
            zeros.push(i);
        }
        (l0, l1) = (l1, addmod(l0, l1, m));
    }
    Ok(zeros)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Per-prime data behind the density formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeContext {
    pub p: u64,
    /// `+1` when 5 is a square modulo `p` (`p ≡ ±1 mod 5`), else `−1`.
    pub epsilon: i8,
    /// `ν_p(F(p − ε))`
    pub e: u32,
    pub pisano: u64,
    pub restricted: u64,
}

fn unsupported(p: u64, reason: &str) -> Error {
    Error::UnsupportedPrime { prime: p, reason: reason.into() }
}

pub fn prime_context(p: u64) -> Result<PrimeContext> {
    if !is_prime(p) {
        return Err(unsupported(p, "not a prime"));
    }
    if p == 2 {
        return Err(unsupported(p, "the density formula requires an odd prime (p != 2)"));
    }
    if p == 5 {
        return Err(unsupported(p, "p = 5 divides the discriminant of x^2 - x - 1; use the brute-force density"));
    }
    let epsilon: i8 = if matches!(p % 5, 1 | 4) { 1 } else { -1 };
    let index = if epsilon == 1 { p - 1 } else { p + 1 };
    let (f, _) = fib_pair_big(index);
    let big_p = BigUint::from(p);
    let mut e = 0u32;
    let mut rest = f;
    loop {
        let (q, r) = rest.div_rem(&big_p);
        if !r.is_zero() {
            break;
        }
        rest = q;
        e += 1;
    }
    if e == 0 {
        return Err(Error::Precondition(format!(
            "p = {p} does not divide F({index}); the choice of epsilon = {epsilon} is inconsistent"
        )));
    }
    Ok(PrimeContext { p, epsilon, e, pisano: pisano_period(p)?, restricted: restricted_period(p)? })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub lambda: u32,
    #[serde(serialize_with = "ratio_as_string")]
    pub density: Ratio<BigUint>,
}

/// Limiting density of Fibonacci residues modulo powers of an odd prime
/// `p ≠ 5`, from `N(p)/p^e + Z(p)/(2p^{2e−1}(p+1))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityResult {
    pub p: u64,
    pub epsilon: i8,
    pub e: u32,
    pub pisano: u64,
    pub restricted: u64,
    pub lucas_zeros: Vec<u64>,
    /// `{F(i) mod p^e : i ∈ [0, π(p)) a Lucas non-zero}`
    pub residues: Vec<u64>,
    #[serde(rename = "N")]
    pub n: u64,
    #[serde(rename = "Z")]
    pub z: u64,
    #[serde(serialize_with = "ratio_as_string")]
    pub dens: Ratio<BigUint>,
    /// Brute-force densities modulo `p^λ`, `λ = 0, 1, …`.
    pub brute_force_trace: Vec<TraceEntry>,
    pub warnings: Vec<String>,
}

pub fn density_formula(p: u64) -> Result<DensityResult> {
    let ctx = prime_context(p)?;
    let modulus = p
        .checked_pow(ctx.e)
        .filter(|&q| q < 1 << 62)
        .ok_or_else(|| Error::Resource(format!("p^e = {p}^{} does not fit in 62 bits", ctx.e)))?;

    let mut nonzero_residues = BTreeSet::new();
    let mut zero_indices = Vec::new();
    let (mut f0, mut f1) = (0u64, 1 % modulus);
    let (mut l0, mut l1) = (2 % p, 1 % p);
    for i in 0..ctx.pisano {
        if l0 == 0 {
            zero_indices.push((i, f0));
        } else {
            nonzero_residues.insert(f0);
        }
        (f0, f1) = (f1, addmod(f0, f1, modulus));
        (l0, l1) = (l1, addmod(l0, l1, p));
    }

    let outside: Vec<(u64, u64)> =
        zero_indices.iter().copied().filter(|(_, r)| !nonzero_residues.contains(r)).collect();
    let mut warnings = Vec::new();
    let distinct_outside: BTreeSet<u64> = outside.iter().map(|&(_, r)| r).collect();
    if distinct_outside.len() < outside.len() {
        warnings.push(format!(
            "{} Lucas-zero indices share {} residues outside the non-zero set; Z counts indices",
            outside.len(),
            distinct_outside.len()
        ));
    }

    let n = nonzero_residues.len() as u64;
    let z = outside.len() as u64;
    let pe = BigUint::from(modulus);
    let big_p = BigUint::from(p);
    let tail_den = BigUint::from(2u32) * big_p.pow(2 * ctx.e - 1) * (&big_p + 1u32);
    let dens = Ratio::new(BigUint::from(n), pe) + Ratio::new(BigUint::from(z), tail_den);

    Ok(DensityResult {
        p,
        epsilon: ctx.epsilon,
        e: ctx.e,
        pisano: ctx.pisano,
        restricted: ctx.restricted,
        lucas_zeros: zero_indices.iter().map(|&(i, _)| i).collect(),
        residues: nonzero_residues.into_iter().collect(),
        n,
        z,
        dens,
        brute_force_trace: Vec::new(),
        warnings,
    })
}

impl DensityResult {
    /// Attaches brute-force densities for `λ = 0..=lambda_max`.
    pub fn with_trace(mut self, lambda_max: u32, budget: u64) -> Result<Self> {
        self.brute_force_trace = residue_density_trace(self.p, lambda_max, budget)?;
        Ok(self)
    }

    pub fn dens_string(&self) -> String {
        ratio_string(&self.dens)
    }
}

fn power_within(p: u64, lambda: u32, budget: u64) -> Result<u64> {
    p.checked_pow(lambda).filter(|&m| m <= budget).ok_or_else(|| {
        Error::Resource(format!("modulus {p}^{lambda} exceeds the budget {budget}"))
    })
}

/// Residues attained by `F(n) mod m` over one period, as a bitmap.
fn attained_residues(m: u64) -> Vec<bool> {
    let mut seen = vec![false; m as usize];
    let (mut a, mut b) = (0u64, 1 % m);
    loop {
        seen[a as usize] = true;
        (a, b) = (b, addmod(a, b, m));
        if a == 0 && b == 1 % m {
            return seen;
        }
    }
}

/// `|{F(n) mod p^λ}| / p^λ`, scanning a full period.
pub fn residue_density_bruteforce(p: u64, lambda: u32, budget: u64) -> Result<Ratio<BigUint>> {
    if p < 2 {
        return Err(Error::Domain(format!("base {p} must be at least 2")));
    }
    let m = power_within(p, lambda, budget)?;
    let hits = attained_residues(m).into_iter().filter(|&b| b).count();
    Ok(Ratio::new(BigUint::from(hits), BigUint::from(m)))
}

pub fn residue_density_trace(p: u64, lambda_max: u32, budget: u64) -> Result<Vec<TraceEntry>> {
    (0..=lambda_max)
        .map(|lambda| Ok(TraceEntry { lambda, density: residue_density_bruteforce(p, lambda, budget)? }))
        .collect()
}

/// How the attained residues modulo `p^λ` split into attained residues
/// modulo `p^{λ+1}`: `children → number of parents` with that many.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueTreeLevel {
    pub lambda: u32,
    pub attained: u64,
    pub children_histogram: BTreeMap<u64, u64>,
}

pub fn residue_tree(p: u64, lambda_max: u32, budget: u64) -> Result<Vec<ResidueTreeLevel>> {
    if p < 2 {
        return Err(Error::Domain(format!("base {p} must be at least 2")));
    }
    let mut levels = Vec::new();
    let mut parent = attained_residues(1);
    for lambda in 0..lambda_max {
        let m = power_within(p, lambda, budget)?;
        let child = attained_residues(power_within(p, lambda + 1, budget)?);
        let mut per_parent = vec![0u64; m as usize];
        for (r, _) in child.iter().enumerate().filter(|(_, &hit)| hit) {
            per_parent[r % m as usize] += 1;
        }
        let mut children_histogram = BTreeMap::new();
        for (r, &c) in per_parent.iter().enumerate() {
            if parent[r] {
                *children_histogram.entry(c).or_insert(0) += 1;
            }
        }
        levels.push(ResidueTreeLevel {
            lambda,
            attained: parent.iter().filter(|&&b| b).count() as u64,
            children_histogram,
        });
        parent = child;
    }
    Ok(levels)
}
