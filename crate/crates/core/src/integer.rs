//! Exact integer helpers: binomial coefficients extended polynomially to
//! arbitrary integer upper arguments.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{QkError, Result};

/// Arbitrary-precision signed integer used for every coefficient.
pub type Integer = BigInt;

/// `binomial(x, k) = x (x-1) ... (x-k+1) / k!` for `k >= 0`, and `0` for `k < 0`.
///
/// Works for negative `x`. Each intermediate value is itself a binomial
/// coefficient, so every division is exact.
pub fn binomial(x: &Integer, k: i64) -> Integer {
    if k < 0 {
        return Integer::zero();
    }
    let mut acc = Integer::one();
    for i in 0..k {
        acc *= x - i;
        acc /= i + 1;
    }
    acc
}

/// [`binomial`] for machine-sized upper arguments.
pub fn binom(x: i64, k: i64) -> Integer {
    binomial(&Integer::from(x), k)
}

/// `(-1)^e` as an [`Integer`].
pub fn sign(e: i64) -> Integer {
    if e.rem_euclid(2) == 0 {
        Integer::one()
    } else {
        -Integer::one()
    }
}

/// `binomial(n, k) - sum_{j=0}^{k} (-1)^j binomial(n+m-j, k-j) binomial(m, j)`.
///
/// The inclusion-exclusion identity makes this zero for all integers `n`, `m`
/// and `k >= 0`; it serves as a self-test of the negative-argument extension.
pub fn kittens_identity_residual(n: i64, m: i64, k: i64) -> Result<Integer> {
    if k < 0 {
        return Err(QkError::Domain(format!(
            "kittens identity needs k >= 0, got {k}"
        )));
    }
    let rhs: Integer = (0..=k)
        .map(|j| sign(j) * binom(n + m - j, k - j) * binom(m, j))
        .sum();
    Ok(binom(n, k) - rhs)
}

/// Serde adapter writing an [`Integer`] as a bare JSON number of any size.
pub mod json_int {
    use std::str::FromStr;

    use serde::{
        de::Error as _, ser::Error as _, Deserialize, Deserializer, Serialize, Serializer,
    };
    use serde_json::Number;

    use super::Integer;

    pub fn serialize<S: Serializer>(x: &Integer, s: S) -> Result<S::Ok, S::Error> {
        Number::from_str(&x.to_string())
            .map_err(S::Error::custom)?
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Integer, D::Error> {
        let n = Number::deserialize(d)?;
        Integer::from_str(&n.to_string()).map_err(D::Error::custom)
    }
}
