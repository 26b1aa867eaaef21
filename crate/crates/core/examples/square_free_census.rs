//! Square-free words: the binary language is finite, the ternary census
//! grows exponentially.
//!
//! cargo run --release --example square_free_census -- 30 4

use fibword::complexity::{enumerate_square_free, SquareFreeCensus, DEFAULT_NODE_BUDGET};

fn main() -> fibword::Result<()> {
    let mut args = std::env::args().skip(1).filter_map(|a| a.parse::<usize>().ok());
    let n_max = args.next().unwrap_or(24);
    let workers = args.next().unwrap_or(1);

    let binary: Vec<String> = enumerate_square_free(2, None, DEFAULT_NODE_BUDGET)?.iter().map(|w| w.to_string()).collect();
    println!("binary square-free words: {}", binary.join(" "));

    let census = SquareFreeCensus::compute(3, n_max, DEFAULT_NODE_BUDGET, workers)?;
    println!("ternary census, {} nodes", census.nodes);
    println!("{:>3} {:>10} {:>10} {:>12} {:>8}", "n", "a(n)", "6*1.032^n", "6*1.379^n", "a(n)^1/n");
    for (n, root) in census.growth_estimates() {
        let a = census.counts[n];
        let (lo, hi) = (6.0 * 1.032f64.powi(n as i32), 6.0 * 1.379f64.powi(n as i32));
        let flag = if n >= 3 && ((a as f64) < lo || (a as f64) > hi) { "  outside" } else { "" };
        println!("{n:>3} {a:>10} {lo:>10.2} {hi:>12.2} {root:>8.4}{flag}");
    }
    Ok(())
}
