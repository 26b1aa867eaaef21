//! The word of concatenated factorials: prefix, factor coverage, a factor
//! search, a leading-digit search and the log-factorial diagnostic.
//!
//! cargo run --example factorial_word [base]

use fibword::factorial_word::{
    coverage_profile, factor_search, factorial_word_prefix, leading_digits_search,
    logfactorial_equidistribution,
};
use fibword::Alphabet;

fn main() -> fibword::Result<()> {
    let base: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(10);
    let alphabet = Alphabet::digits(base)?;

    println!("prefix(40) = {}", factorial_word_prefix(base, 40)?);

    for k in 1..=3 {
        let r = coverage_profile(base, k, 1_000_000, false)?;
        println!(
            "k={k}: {}/{} factors in {} digits (full at {:?})",
            r.found, r.total, r.digits_scanned, r.full_at
        );
    }

    let target = alphabet.parse("5040")?;
    println!("first {target} at {:?}", factor_search(base, &target, 1_000_000)?);

    let lead = alphabet.parse("999")?;
    match leading_digits_search(base, &lead, 100_000)? {
        Some(hit) => println!("{}! starts with {lead} ({} digits)", hit.n, hit.digit_count),
        None => println!("no factorial below the budget starts with {lead}"),
    }

    let weyl = logfactorial_equidistribution(base, 100_000, 1)?;
    println!(
        "diagnostic: |weyl sum| = {:.6} (error bound {:.2e})",
        weyl.weyl_magnitude, weyl.weyl_error_bound
    );
    Ok(())
}
