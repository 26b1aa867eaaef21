//! Serialization helpers shared by the report types: exact rationals as
//! `"num/den"` strings, big integers as decimal strings, and approximate
//! reals paired with their tolerance.

use std::fmt::Display;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

/// A floating-point result with an explicit error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Approx {
    pub value: f64,
    pub tolerance: f64,
}

impl Approx {
    pub fn new(value: f64, tolerance: f64) -> Self {
        Approx { value, tolerance }
    }

    pub fn contains(&self, x: f64) -> bool {
        (self.value - x).abs() <= self.tolerance
    }
}

/// `"num/den"`, always with an explicit denominator.
pub fn ratio_string<T: Clone + Integer + Display>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn ratio_as_string<T, S>(r: &Ratio<T>, s: S) -> Result<S::Ok, S::Error>
where
    T: Clone + Integer + Display,
    S: Serializer,
{
    s.serialize_str(&ratio_string(r))
}

pub fn ratios_as_strings<T, S>(rs: &[Ratio<T>], s: S) -> Result<S::Ok, S::Error>
where
    T: Clone + Integer + Display,
    S: Serializer,
{
    s.collect_seq(rs.iter().map(ratio_string))
}

pub fn biguint_as_string<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn biguints_as_strings<S: Serializer>(vs: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(vs.iter().map(|v| v.to_string()))
}

/// Parses `"num/den"` or a bare integer.
pub fn parse_ratio(text: &str) -> Option<Ratio<BigUint>> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
        None => (text.trim().parse().ok()?, BigUint::from(1u32)),
    };
    if d == BigUint::from(0u32) {
        return None;
    }
    Some(Ratio::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_strings() {
        let r = Ratio::new(BigUint::from(82u32), BigUint::from(112u32));
        assert_eq!(ratio_string(&r), "41/56");
        assert_eq!(ratio_string(&Ratio::new(4u64, 4)), "1/1");
        assert_eq!(parse_ratio("41/56"), Some(r));
        assert_eq!(parse_ratio("3"), Some(Ratio::from_integer(BigUint::from(3u32))));
        assert_eq!(parse_ratio("1/0"), None);
    }
}
