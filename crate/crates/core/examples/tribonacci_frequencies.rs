//! Letter frequencies of the Tribonacci word against powers of the
//! Tribonacci constant, with window envelopes.

use fibword::density::{frequency_report, perron_eigenvalue, symbol_frequency};
use fibword::morphism::mbonacci_morphism;

fn main() -> fibword::Result<()> {
    let sigma = mbonacci_morphism(3)?;
    println!("morphism {sigma}");
    let w = sigma.fixed_point_prefix(0, 100_000)?;
    println!("prefix {}", w.prefix(40)?);

    let tau = perron_eigenvalue(3)?.eigenvalue.value;
    println!("tau = {tau:.12}");
    for s in 0..3u8 {
        let f = symbol_frequency(&w, s)?;
        let target = tau.powi(-(i32::from(s) + 1));
        let x = *f.frequency.numer() as f64 / *f.frequency.denom() as f64;
        println!("{}: {} = {x:.6}, tau^-{} = {target:.6}, diff {:.1e}", f.symbol, f.frequency, s + 1, (x - target).abs());
        for n in [10, 100, 1000] {
            let r = frequency_report(&w, s, n, target)?;
            println!("    window {n:>4}: [{}, {}] max deviation {:.4}", r.window_inf, r.window_sup, r.max_deviation);
        }
    }
    Ok(())
}
