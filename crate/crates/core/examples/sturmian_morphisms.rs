//! Compositions of the Sturmian generators E, phi and phit, their matrices
//! and the images of the Fibonacci word.

use fibword::complexity::factor_complexity;
use fibword::morphism::{compose_sturmian, fibonacci_morphism, SturmianGenerator};
use fibword::Morphism;

fn main() -> fibword::Result<()> {
    let fib = fibonacci_morphism().fixed_point_prefix(0, 2000)?;
    let words: [&[&str]; 5] = [&["E"], &["phi"], &["E", "phi"], &["phi", "phit"], &["phit", "E", "phi", "phi"]];
    for names in words {
        let gens = names.iter().map(|n| n.parse()).collect::<fibword::Result<Vec<SturmianGenerator>>>()?;
        let sigma = compose_sturmian(&gens);
        let image = sigma.apply(&fib)?;
        let p = factor_complexity(&image, 20)?;
        let sturmian = (1..=20).all(|n| p.count(n) == Some(n as u64 + 1));
        println!(
            "{:<24} {:<18} matrix {:?} image {}… p(n)=n+1 to 20: {sturmian}",
            names.join(" then "),
            sigma.to_string(),
            sigma.adjacency_matrix().rows(),
            image.prefix(16)?,
        );
    }

    let custom = Morphism::parse("a->aab,b->ab")?;
    println!("JSON form of {custom}: {}", serde_json::to_string(&custom).expect("serializes"));
    Ok(())
}
