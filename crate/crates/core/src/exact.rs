//! Exact integer helpers shared by the counting modules.

use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serializer;

/// Serializes a big integer as a plain JSON number with every digit.
pub fn serialize_big<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&json_number(x), s)
}

pub fn json_number(x: &BigUint) -> serde_json::Number {
    serde_json::Number::from_str(&x.to_string()).expect("decimal digits form a JSON number")
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(10, 5), BigUint::from(252u32));
        assert_eq!(binomial(3, 5), BigUint::default());
        assert_eq!(binomial(0, 0), BigUint::one());
    }

    #[test]
    fn big_numbers_keep_all_digits() {
        let x = binomial(200, 100);
        let text = serde_json::to_string(&json_number(&x)).unwrap();
        assert_eq!(text, x.to_string());
        assert!(!text.contains('e'));
    }
}
