//! The Fibonacci word: prefix, factor complexity, frequency of `b` and the
//! balance bound for windows of length 10..=1000.

use fibword::complexity::{factor_complexity, is_sturmian_profile, palindromic_factor_count};
use fibword::density::{balance_check, golden_conjugate, golden_density, symbol_frequency};
use fibword::morphism::fibonacci_morphism;

fn main() -> fibword::Result<()> {
    let phi = fibonacci_morphism();
    println!("morphism {phi}");
    for k in 0..6 {
        println!("phi^{k}(a) = {}", phi.iterate(&phi.source().parse("a")?, k)?);
    }

    let w = phi.fixed_point_prefix(0, 100_000)?;
    let profile = factor_complexity(&w, 50)?;
    println!("p(1..10) = {:?}", &profile.counts()[..10]);
    println!("Sturmian up to n=50: {}", is_sturmian_profile(&profile, 50));
    println!("distinct palindromic factors of the first 1000 letters: {}", palindromic_factor_count(&w.prefix(1000)?));

    let f = symbol_frequency(&w, 1)?;
    let target = golden_conjugate().powi(2);
    println!("freq(b) = {} ~ {:.8}, limit 1/phi^2 = {target:.8}", f.frequency, *f.frequency.numer() as f64 / *f.frequency.denom() as f64);

    let report = balance_check(&w, 1, target, 10..=1000)?;
    println!(
        "balance: worst window n={} at {} deviates {:.3e} (bound {:.3e})",
        report.worst.window, report.worst.start, report.worst.deviation, report.worst.bound
    );

    let golden = golden_density(40)?;
    let last = golden.terms.last().expect("40 terms");
    println!("F(40)/F(41) = {}/{}, |. - (phi-1)| <= {:.3e}", last.numerator, last.denominator, last.approx_deviation);
    Ok(())
}
