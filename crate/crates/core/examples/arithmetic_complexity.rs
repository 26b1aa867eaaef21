//! Factor complexity against arithmetic complexity on prefixes of the
//! Fibonacci, Thue-Morse and Tribonacci words.

use fibword::complexity::{arithmetic_closure_sample, arithmetic_complexity, factor_complexity};
use fibword::morphism::{fibonacci_morphism, mbonacci_morphism, thue_morse_morphism};

fn main() -> fibword::Result<()> {
    let words = [
        ("fibonacci", fibonacci_morphism().fixed_point_prefix(0, 400)?),
        ("thue-morse", thue_morse_morphism().fixed_point_prefix(0, 400)?),
        ("tribonacci", mbonacci_morphism(3)?.fixed_point_prefix(0, 400)?),
    ];
    for (name, w) in &words {
        let f = factor_complexity(w, 8)?;
        let a = arithmetic_complexity(w, 8)?;
        let k = w.alphabet().len() as u64;
        println!("{name} (prefix of {} letters)", w.len());
        println!("  n  factor  arithmetic  k^n");
        for n in 1..=8 {
            println!("{n:>3} {:>7} {:>11} {:>5}", f.count(n).unwrap_or(0), a.count(n).unwrap_or(0), k.pow(n as u32));
        }
    }

    let sample = arithmetic_closure_sample(&words[0].1.prefix(30)?, 3)?;
    println!("length-3 progressions of the first 30 Fibonacci letters:");
    for (w, at) in &sample.words {
        println!("  {w}  start {} step {}", at.start, at.step);
    }
    Ok(())
}
