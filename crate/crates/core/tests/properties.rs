use fibword::complexity::{
    arithmetic_complexity, delta_apply, delta_factorize, factor_complexity, factor_complexity_with, FactorBackend,
    SquareFreeCensus,
};
use fibword::density::window_frequency_sup;
use fibword::factorial_word::{coverage_profile, factor_search, factorial_word_prefix};
use fibword::modfib::{fib_pair_big, fib_pair_mod, pisano_period, restricted_period};
use fibword::morphism::{compose_sturmian, mbonacci_morphism, SturmianGenerator};
use fibword::{Alphabet, Morphism, Word};
use num_bigint::BigUint;
use proptest::prelude::*;

fn word_over(k: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..k as u8, 0..=max_len)
        .prop_map(move |s| Word::from_symbols(&Alphabet::letters(k).unwrap(), s).unwrap())
}

fn generator() -> impl Strategy<Value = SturmianGenerator> {
    prop_oneof![
        Just(SturmianGenerator::Exchange),
        Just(SturmianGenerator::Phi),
        Just(SturmianGenerator::PhiTilde),
    ]
}

/// A finite binary word is balanced when any two factors of the same
/// length differ by at most one in their count of `b`.
fn balanced(w: &Word) -> bool {
    let s = w.symbols();
    (1..=s.len()).all(|n| {
        let counts: Vec<usize> = s.windows(n).map(|f| f.iter().filter(|&&x| x == 1).count()).collect();
        counts.iter().max().unwrap() - counts.iter().min().unwrap() <= 1
    })
}

proptest! {
    #[test]
    fn fixed_point_prefixes_are_consistent(m in 2usize..6, len in 0usize..400) {
        let sigma = mbonacci_morphism(m).unwrap();
        let long = sigma.fixed_point_prefix(0, 400).unwrap();
        let short = sigma.fixed_point_prefix(0, len).unwrap();
        prop_assert!(short.is_prefix_of(&long));
        // σ maps the fixed point onto itself
        let image = sigma.apply(&short).unwrap();
        let cut = image.len().min(400);
        prop_assert_eq!(image.prefix(cut).unwrap(), long.prefix(cut).unwrap());
    }

    #[test]
    fn sturmian_compositions_preserve_balance(gens in prop::collection::vec(generator(), 0..6)) {
        let sigma = compose_sturmian(&gens);
        let ab = Alphabet::binary_ab();
        let fib = compose_sturmian(&[SturmianGenerator::Phi]).fixed_point_prefix(0, 200).unwrap();
        let image = sigma.apply(&fib).unwrap();
        prop_assert!(balanced(&image.prefix(image.len().min(120)).unwrap()));
        // composition order: the first generator acts first
        let w = ab.parse("abba").unwrap();
        let stepwise = gens.iter().fold(w.clone(), |acc, g| g.morphism().apply(&acc).unwrap());
        prop_assert_eq!(sigma.apply(&w).unwrap(), stepwise);
    }

    #[test]
    fn morphism_text_and_json_round_trip(gens in prop::collection::vec(generator(), 1..5)) {
        let sigma = compose_sturmian(&gens);
        let text = sigma.to_string();
        prop_assert_eq!(&Morphism::parse(&text).unwrap(), &sigma);
        let json = serde_json::to_string(&sigma).unwrap();
        let back: Morphism = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, sigma);
    }

    #[test]
    fn backends_agree_and_profiles_are_monotone(w in word_over(3, 60)) {
        let n = w.len();
        let a = factor_complexity_with(&w, n, FactorBackend::SuffixAutomaton).unwrap();
        let b = factor_complexity_with(&w, n, FactorBackend::Hashing).unwrap();
        prop_assert_eq!(a.counts(), b.counts());
        // p(n+1) ≥ p(n) − 1 holds for any finite word: each factor but the suffix extends
        for k in 1..n {
            prop_assert!(a.count(k + 1).unwrap() + 1 >= a.count(k).unwrap());
        }
        let ar = arithmetic_complexity(&w, n.min(6)).unwrap();
        for k in 1..=n.min(6) {
            prop_assert!(a.count(k).unwrap() <= ar.count(k).unwrap());
        }
    }

    #[test]
    fn delta_round_trip(w in word_over(3, 80)) {
        let abc = Alphabet::ternary_abc();
        let w = w.relabel(&abc).unwrap();
        prop_assert_eq!(delta_factorize(&delta_apply(&w).unwrap()).unwrap(), w);
    }

    #[test]
    fn window_sup_dominates_global_frequency(w in word_over(2, 80), n in 1usize..20) {
        prop_assume!(n <= w.len());
        let sup = window_frequency_sup(&w, 1, n).unwrap();
        let global = w.occurrences(1) as f64 / w.len() as f64;
        prop_assert!(*sup.numer() as f64 / *sup.denom() as f64 + 1e-12 >= global - 1.0 / n as f64);
    }

    #[test]
    fn modular_fibonacci_matches_big_integers(n in 0u64..2000, m in 1u64..5000) {
        let (f, g) = fib_pair_mod(n, m).unwrap();
        let (bf, bg) = fib_pair_big(n);
        prop_assert_eq!(BigUint::from(f), bf % m);
        prop_assert_eq!(BigUint::from(g), bg % m);
    }

    #[test]
    fn periods_are_periods(m in 2u64..400) {
        let pi = pisano_period(m).unwrap();
        prop_assert_eq!(fib_pair_mod(pi, m).unwrap(), (0, 1));
        let alpha = restricted_period(m).unwrap();
        prop_assert_eq!(pi % alpha, 0);
        prop_assert_eq!(fib_pair_mod(alpha, m).unwrap().0, 0);
    }

    #[test]
    fn found_factors_occur_in_the_stream(base in 2u32..12, k in 1usize..3, budget in 1u64..3000) {
        let r = coverage_profile(base, k, budget, true).unwrap();
        let stream = factorial_word_prefix(base, r.digits_scanned as usize).unwrap();
        let positions = r.first_positions.unwrap();
        let digits = Alphabet::digits(base).unwrap();
        prop_assert_eq!(positions.iter().filter(|p| p.is_some()).count() as u64, r.found);
        for (code, p) in positions.iter().enumerate() {
            if let Some(p) = p {
                let f = fibword::factorial_word::decode_factor(&digits, code as u64, k);
                let p = *p as usize;
                prop_assert_eq!(&stream.symbols()[p..p + k], f.symbols());
                prop_assert_eq!(factor_search(base, &f, budget).unwrap(), Some(p as u64));
            }
        }
    }
}

#[test]
fn census_is_independent_of_worker_count() {
    let one = SquareFreeCensus::compute(3, 18, u64::MAX, 1).unwrap();
    let four = SquareFreeCensus::compute(3, 18, u64::MAX, 4).unwrap();
    assert_eq!(one.counts, four.counts);
    let four_letters = SquareFreeCensus::compute(4, 9, u64::MAX, 3).unwrap();
    assert_eq!(four_letters.counts[..4], [1, 4, 12, 36]);
}

#[test]
fn fibonacci_prefix_is_sturmian() {
    let w = mbonacci_morphism(2).unwrap().fixed_point_prefix(0, 5000).unwrap();
    let p = factor_complexity(&w, 100).unwrap();
    assert!((1..=100).all(|n| p.count(n) == Some(n as u64 + 1)));
}

#[test]
fn brute_force_densities_descend_to_the_formula() {
    use fibword::modfib::{density_formula, is_prime, residue_density_trace, DEFAULT_MODULUS_BUDGET};
    for p in (3..200u64).filter(|&p| is_prime(p) && p != 5) {
        let d = density_formula(p).unwrap();
        let trace = residue_density_trace(p, 2, DEFAULT_MODULUS_BUDGET).unwrap();
        for pair in trace.windows(2) {
            assert!(pair[1].density <= pair[0].density, "p={p}: trace increases");
        }
        let last = &trace.last().unwrap().density;
        assert!(*last >= d.dens, "p={p}: brute force below the limit");
        // without outside Lucas zeros the sequence is constant from λ = e on
        if d.z == 0 {
            for t in trace.iter().filter(|t| t.lambda >= d.e) {
                assert_eq!(t.density, d.dens, "p={p} lambda={}", t.lambda);
            }
        }
    }
}
