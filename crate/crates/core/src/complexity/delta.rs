//! The coding `δ: {a,b,c}* → {a,b}*` with `c ↦ a`, `b ↦ ab`, `a ↦ abb`.

use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::word::{Alphabet, Word};

pub fn delta_morphism() -> Morphism {
    let ab = Alphabet::binary_ab();
    let images = ["abb", "ab", "a"].map(|s| ab.parse(s).expect("static image"));
    Morphism::new(&Alphabet::ternary_abc(), &ab, images.to_vec()).expect("static morphism")
}

/// Image of a word over `{a,b,c}`; nonempty results start with `a`.
pub fn delta_apply(w: &Word) -> Result<Word> {
    delta_morphism().apply(w)
}

/// Inverse of [`delta_apply`]. Every block `a`, `ab`, `abb` starts with the
/// only `a` it contains, so cutting before each `a` recovers the blocks.
pub fn delta_factorize(v: &Word) -> Result<Word> {
    let ab = Alphabet::binary_ab();
    if v.alphabet() != &ab {
        return Err(Error::Domain(format!("δ-factorization needs a word over {ab}, got {}", v.alphabet())));
    }
    let fail = |reason: String| Error::Factorization { word: v.to_string(), reason };
    let s = v.symbols();
    let mut out = Vec::with_capacity(s.len());
    let mut i = 0;
    while i < s.len() {
        if s[i] != 0 {
            return Err(fail(format!("position {i} starts a block with 'b'")));
        }
        let bs = s[i + 1..].iter().take_while(|&&x| x == 1).count();
        let block = match bs {
            0 => 2, // c
            1 => 1, // b
            2 => 0, // a
            _ => return Err(fail(format!("block at position {i} has {bs} trailing b's"))),
        };
        out.push(block);
        i += 1 + bs;
    }
    Word::from_symbols(&Alphabet::ternary_abc(), out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn images() {
        let abc = Alphabet::ternary_abc();
        assert_eq!(delta_apply(&abc.parse("b").unwrap()).unwrap().to_string(), "ab");
        assert_eq!(delta_apply(&abc.parse("abc").unwrap()).unwrap().to_string(), "abbaba");
        assert!(delta_apply(&Word::empty(&abc)).unwrap().is_empty());
    }

    #[test]
    fn factorizations() {
        let ab = Alphabet::binary_ab();
        assert_eq!(delta_factorize(&ab.parse("abbaba").unwrap()).unwrap().to_string(), "abc");
        assert_eq!(delta_factorize(&ab.parse("a").unwrap()).unwrap().to_string(), "c");
        assert!(matches!(delta_factorize(&ab.parse("bab").unwrap()), Err(Error::Factorization { .. })));
        assert!(delta_factorize(&ab.parse("abbb").unwrap()).is_err());
        assert!(delta_factorize(&Word::empty(&ab)).unwrap().is_empty());
    }

    proptest! {
        #[test]
        fn round_trip(sym in proptest::collection::vec(0u8..3, 0..80)) {
            let w = Word::from_symbols(&Alphabet::ternary_abc(), sym).unwrap();
            let image = delta_apply(&w).unwrap();
            if !w.is_empty() {
                prop_assert_eq!(image.symbols()[0], 0);
            }
            prop_assert_eq!(delta_factorize(&image).unwrap(), w);
        }
    }
}
