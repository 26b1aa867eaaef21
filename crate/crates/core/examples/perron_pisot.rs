//! Perron-Frobenius eigenvalue, frequency vector and Pisot check for the
//! m-bonacci substitutions.

use fibword::density::perron_eigenvalue;
use fibword::morphism::mbonacci_morphism;

fn main() -> fibword::Result<()> {
    for m in 2..=8 {
        let d = perron_eigenvalue(m)?;
        let matrix = mbonacci_morphism(m)?.adjacency_matrix();
        println!(
            "m={m} rho={:.12} (±{:.0e}) char poly {:?}",
            d.eigenvalue.value,
            d.eigenvalue.tolerance,
            matrix.characteristic_polynomial()
        );
        let freqs: Vec<String> = d.left_eigenvector.iter().map(|x| format!("{x:.5}")).collect();
        let conj: Vec<String> = d.conjugate_moduli.iter().map(|x| format!("{x:.4}")).collect();
        println!(
            "    frequencies [{}] sum {:.2e} off 1; conjugate moduli [{}]; Pisot {}",
            freqs.join(", "),
            (d.eigenvector_sum - 1.0).abs(),
            conj.join(", "),
            d.pisot
        );
    }
    Ok(())
}
