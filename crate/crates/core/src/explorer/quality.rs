//! ABC/Szpiro triple quality and the `F_k`/`P_l` class membership filters.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::{factorize, omega_and_k, radical};
use crate::error::{Error, Result};
use crate::explorer::ln_f64;

/// A coprime triple `a + b = c` with its radical and the two log ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct QualityRecord {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    /// `N(abc)`: product of the distinct primes of `|abc|`.
    pub radical_abc: BigUint,
    /// `ln max(|a|,|b|,|c|) / ln N(abc)`.
    pub quality: f64,
    /// `ln |abc| / ln N(abc)`.
    pub szpiro_ratio: f64,
}

/// Compute the quality record of a coprime triple `a + b = c`.
pub fn abc_szpiro_quality(
    a: &BigInt,
    b: &BigInt,
    c: &BigInt,
    factor_budget: u64,
) -> Result<QualityRecord> {
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return Err(Error::InvalidInput("triple entries must be nonzero".into()));
    }
    if &(a + b) != c {
        return Err(Error::InvalidInput(format!("{a} + {b} != {c}")));
    }
    for (x, y) in [(a, b), (a, c), (b, c)] {
        if !x.gcd(y).is_one() {
            return Err(Error::InvalidInput(format!(
                "triple is not pairwise coprime: gcd({x}, {y}) > 1"
            )));
        }
    }
    let abc = (a * b * c).magnitude().clone();
    // Pairwise coprimality forbids |abc| = 1 (1 + 1 = 2 is the smallest).
    debug_assert!(abc > BigUint::one());
    let radical_abc = radical(&factorize(&abc, factor_budget)?);
    let max_abs = [a, b, c]
        .into_iter()
        .map(|x| x.magnitude().clone())
        .max()
        .unwrap();
    let ln_rad = ln_f64(&radical_abc);
    Ok(QualityRecord {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        radical_abc,
        quality: ln_f64(&max_abs) / ln_rad,
        szpiro_ratio: ln_f64(&abc) / ln_rad,
    })
}

/// Membership of `x` in `F_k = {K(x) < k}` and `P_l = {omega(x) < l}`.
pub fn class_membership(x: &BigUint, k: u32, l: u64, factor_budget: u64) -> Result<(bool, bool)> {
    if x.is_zero() {
        return Err(Error::InvalidInput("class membership needs x >= 1".into()));
    }
    if k < 2 || l < 2 {
        return Err(Error::InvalidInput("class parameters require k, l >= 2".into()));
    }
    let (omega, max_exp) = omega_and_k(&factorize(x, factor_budget)?);
    Ok((u64::from(max_exp) < k as u64, omega < l))
}
