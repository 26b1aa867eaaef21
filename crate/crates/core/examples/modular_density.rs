//! Density of Fibonacci residues modulo prime powers: the closed form
//! against brute force, for a few primes or the ones given on the command line.
//!
//! cargo run --example modular_density -- 7 13 19 31 41

use fibword::modfib::{density_formula, residue_tree, DEFAULT_MODULUS_BUDGET};
use fibword::report::ratio_string;

fn main() -> fibword::Result<()> {
    let mut primes: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if primes.is_empty() {
        primes = vec![7, 11, 13, 19, 29, 31];
    }
    for p in primes {
        let d = match density_formula(p) {
            Ok(d) => d.with_trace(3, DEFAULT_MODULUS_BUDGET)?,
            Err(e) => {
                println!("p={p}: {e}");
                continue;
            }
        };
        let trace: Vec<String> = d.brute_force_trace.iter().map(|t| ratio_string(&t.density)).collect();
        println!(
            "p={p:>3} eps={:+} e={} pi={} alpha={} zeros={:?} N={} Z={} dens={}  brute: {}",
            d.epsilon, d.e, d.pisano, d.restricted, d.lucas_zeros, d.n, d.z, d.dens_string(), trace.join(", ")
        );
        for w in &d.warnings {
            println!("    warning: {w}");
        }
    }

    println!("residue tree for p=19:");
    for level in residue_tree(19, 3, DEFAULT_MODULUS_BUDGET)? {
        println!("    lambda={} attained={} children->parents {:?}", level.lambda, level.attained, level.children_histogram);
    }
    Ok(())
}
