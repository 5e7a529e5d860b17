//! Effective crossover bounds: the least `N` past which a factorial-type
//! left side provably outgrows the conjectural right side. Searches and
//! verdicts run in log space over certified rational enclosures; desk-scale
//! crossovers are additionally confirmed at the integer level with rational
//! brackets for powers of e.

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::One;

use crate::arith::factorize_u64;
use crate::bracket::{e_pow, ln2, ln_big, ln_u64, Enclosure};
use crate::error::{Error, Result};
use crate::explorer::PosRational;
use crate::sequences::{ProductSpec, SequenceFamily};

/// Search cap: crossovers beyond 2^62 are reported as budget failures.
const SEARCH_CAP: u64 = 1 << 62;

/// How far past the crossover the predicate is re-verified.
const VERIFY_WINDOW: u64 = 100;

/// An effective bound `n_bound` with its local crossover verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossoverBound {
    /// Least `N` such that the growth predicate holds for every `n >= N`.
    pub n_bound: u64,
    /// Largest `n` where the predicate fails (`None` if it never fails).
    pub fails_at: Option<u64>,
    /// The predicate was re-checked to hold on `[n_bound, verified_through]`.
    pub verified_through: u64,
}

/// Evaluate a predicate given as enclosure builder `lhs(n) > rhs(n)`,
/// escalating precision until the enclosures separate. Ties are impossible:
/// both sides differ by `ln` of a rational times nonzero rational plus a
/// nonzero rational, which never vanishes.
fn decide_gt(
    n: u64,
    lhs: impl Fn(u64, u32) -> Enclosure,
    rhs: impl Fn(u64, u32) -> Enclosure,
) -> bool {
    let mut prec = 96u32;
    loop {
        if let Some(v) = lhs(n, prec).definitely_gt(&rhs(n, prec)) {
            return v;
        }
        prec *= 2;
        assert!(prec <= 1 << 14, "crossover enclosure failed to separate at n={n}");
    }
}

/// Exponential bracketing plus bisection for the first `n` (of the given
/// stride class `start, start + stride, ...`) where the monotone predicate
/// holds.
fn first_true(start: u64, stride: u64, holds: impl Fn(u64) -> bool) -> Result<u64> {
    if holds(start) {
        return Ok(start);
    }
    // Find i with holds(start + stride * 2^j) by doubling.
    let mut lo_i = 0u64; // predicate false at index lo_i
    let mut hi_i = 1u64;
    loop {
        let n = start
            .checked_add(stride.checked_mul(hi_i).ok_or_else(cap_err)?)
            .ok_or_else(cap_err)?;
        if n > SEARCH_CAP {
            return Err(cap_err());
        }
        if holds(n) {
            break;
        }
        lo_i = hi_i;
        hi_i *= 2;
    }
    while hi_i - lo_i > 1 {
        let mid = lo_i + (hi_i - lo_i) / 2;
        if holds(start + stride * mid) {
            hi_i = mid;
        } else {
            lo_i = mid;
        }
    }
    Ok(start + stride * hi_i)
}

fn cap_err() -> Error {
    Error::BudgetExceeded(format!("crossover search exceeded {SEARCH_CAP}"))
}

/// Re-verify the crossover locally and package the report.
fn verified_bound(n_bound: u64, holds: impl Fn(u64) -> bool) -> CrossoverBound {
    for n in n_bound..=n_bound + VERIFY_WINDOW {
        assert!(holds(n), "predicate must hold on the verified window at {n}");
    }
    let fails_at = if n_bound >= 2 {
        let prev = n_bound - 1;
        assert!(!holds(prev), "predicate must fail just below the bound");
        Some(prev)
    } else {
        None
    };
    CrossoverBound {
        n_bound,
        fails_at,
        verified_through: n_bound + VERIFY_WINDOW,
    }
}

/// The Szpiro-side growth predicate at a single `n`, decided exactly:
/// `(n/e)^n > 4 u^2 * (prod N(A_i))^s * 4^(s r n)`. Scaled by the denominator
/// of `s`, every exponent is an integer and the verdict reduces to comparing
/// log-space enclosures.
pub fn szpiro_growth_holds(s: PosRational, spec: &ProductSpec, u: u64, n: u64) -> bool {
    let r = spec.arity() as u64;
    let radical_product: BigUint = spec
        .terms()
        .iter()
        .map(|t| factorize_u64(t.multiplier()).radical())
        .product();
    let four_u_sq = BigUint::from(4u32) * BigUint::from(u) * BigUint::from(u);
    let (p, q) = (s.num, s.den);
    // q n (ln n - 1) > q ln(4u^2) + p ln(prod N(A_i)) + 2 p r n ln 2.
    decide_gt(
        n,
        |n, prec| {
            ln_u64(n, prec)
                .sub(&Enclosure::point(Ratio::one()))
                .scale(q as u128 * n as u128)
        },
        |n, prec| {
            ln_big(&four_u_sq, prec)
                .scale(q)
                .add(&ln_big(&radical_product, prec).scale(p))
                .add(&ln2(prec).scale(2 * p as u128 * r as u128 * n as u128))
        },
    )
}

/// The k-free growth predicate at a single `n`, decided exactly:
/// `C^n (n/e)^ceil(n/2) > M exp(3 d n r k)`.
pub fn kfree_growth_holds(k: u64, r: u64, d: u64, m: u64, c: u64, n: u64) -> bool {
    let rate = 3u128 * d as u128 * r as u128 * k as u128;
    let half = n.div_ceil(2);
    decide_gt(
        n,
        move |n, prec| {
            ln_u64(c, prec).scale(n).add(
                &ln_u64(n, prec)
                    .sub(&Enclosure::point(Ratio::one()))
                    .scale(half),
            )
        },
        move |n, prec| {
            ln_u64(m, prec).add(&Enclosure::point(Ratio::from_integer(
                BigInt::from(rate) * BigInt::from(n),
            )))
        },
    )
}

/// Least `N` such that `(n/e)^n > 4 u^2 * (prod N(A_i))^s * 4^(s r n)` for
/// every `n >= N`: past this point no `x^2 - u^2` can equal the factorial
/// product under the Szpiro-type inequality with exponent `s`.
pub fn szpiro_n_bound(s: PosRational, spec: &ProductSpec, u: u64) -> Result<CrossoverBound> {
    if u == 0 {
        return Err(Error::InvalidInput("u must be >= 1".into()));
    }
    if spec
        .terms()
        .iter()
        .any(|t| t.family() != SequenceFamily::Factorial)
    {
        return Err(Error::InvalidInput(
            "the Szpiro bound applies to all-factorial specs".into(),
        ));
    }
    let r = spec.arity() as u64;
    let radical_product: BigUint = spec
        .terms()
        .iter()
        .map(|t| factorize_u64(t.multiplier()).radical())
        .product();
    let four_u_sq = BigUint::from(4u32) * BigUint::from(u) * BigUint::from(u);
    let (p, q) = (s.num, s.den);

    let holds = |n: u64| szpiro_growth_holds(s, spec, u, n);
    let n_bound = first_true(1, 1, holds)?;
    let bound = verified_bound(n_bound, holds);

    // Desk-scale integer confirmation with rational brackets of e^(nq):
    // (n/e)^(nq) > R^q  <=>  n^(nq) > e^(nq) R^q.
    if n_bound * q <= 4096 && p * r * n_bound <= 100_000 {
        let rhs_base = |n: u64| -> BigUint {
            four_u_sq.pow(q as u32)
                * radical_product.pow(p as u32)
                * BigUint::from(4u32).pow((p * r * n) as u32)
        };
        let confirm_gt = |n: u64| -> bool {
            let lhs = BigUint::from(n).pow((n * q) as u32);
            let rhs = e_pow(n * q, 96).scale_big(&rhs_base(n));
            Ratio::from_integer(BigInt::from(lhs)) > rhs.hi
        };
        let confirm_le = |n: u64| -> bool {
            let lhs = BigUint::from(n).pow((n * q) as u32);
            let rhs = e_pow(n * q, 96).scale_big(&rhs_base(n));
            Ratio::from_integer(BigInt::from(lhs)) < rhs.lo
        };
        assert!(confirm_gt(n_bound), "integer-level confirmation at the bound");
        if let Some(prev) = bound.fails_at {
            assert!(confirm_le(prev), "integer-level confirmation below the bound");
        }
    }
    Ok(bound)
}

/// Least `N` such that `C^n (n/e)^ceil(n/2) > M exp(3 d n r k)` for every
/// `n >= N`: the double-factorial growth bound behind the k-free finiteness
/// argument. The two parity classes cross separately; the reported bound
/// covers both.
pub fn kfree_growth_bound(k: u64, r: u64, d: u64, m: u64, c: u64) -> Result<CrossoverBound> {
    if k < 2 {
        return Err(Error::InvalidInput("k must be >= 2".into()));
    }
    if r == 0 || d == 0 || m == 0 || c == 0 {
        return Err(Error::InvalidInput("parameters must be >= 1".into()));
    }
    3u64.checked_mul(d)
        .and_then(|x| x.checked_mul(r))
        .and_then(|x| x.checked_mul(k))
        .ok_or_else(|| Error::BudgetExceeded("3drk overflows".into()))?;

    let holds = |n: u64| kfree_growth_holds(k, r, d, m, c, n);

    let first_even = first_true(2, 2, holds)?;
    let first_odd = first_true(1, 2, holds)?;
    // Within each parity the predicate is monotone; the overall bound starts
    // one past the larger last failure.
    let n_bound = first_even.max(first_odd).saturating_sub(1).max(1);
    let n_bound = if holds(n_bound) { n_bound } else { n_bound + 1 };
    Ok(verified_bound(n_bound, holds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::SequenceTerm;

    fn fact_spec(multipliers: &[u64]) -> ProductSpec {
        ProductSpec::new(
            multipliers
                .iter()
                .map(|&a| SequenceTerm::with_default_mode(SequenceFamily::Factorial, a).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn s(num: u64, den: u64) -> PosRational {
        PosRational::new(num, den).unwrap()
    }

    #[test]
    fn szpiro_bound_s2_single_factorial() {
        // Crossover of n(ln n - 1) against (2n+1) ln 4.
        let bound = szpiro_n_bound(s(2, 1), &fact_spec(&[1]), 1).unwrap();
        assert_eq!(bound.n_bound, 45);
        assert_eq!(bound.fails_at, Some(44));
        assert_eq!(bound.verified_through, 145);
    }

    #[test]
    fn szpiro_bound_s1_single_factorial() {
        // Crossover of n(ln n - 1) against (n+1) ln 4: first holds at 13
        // (12 * (ln 12 - 1) = 17.82 < 13 ln 4 = 18.02).
        let bound = szpiro_n_bound(s(1, 1), &fact_spec(&[1]), 1).unwrap();
        assert_eq!(bound.n_bound, 13);
        assert_eq!(bound.fails_at, Some(12));
    }

    #[test]
    fn szpiro_bound_two_factorials() {
        // Crossover of n(ln n - 1) against (4n+1) ln 4; a close call at 697.
        let bound = szpiro_n_bound(s(2, 1), &fact_spec(&[1, 1]), 1).unwrap();
        assert_eq!(bound.n_bound, 698);
        assert_eq!(bound.fails_at, Some(697));
    }

    #[test]
    fn szpiro_bound_rational_s() {
        // s = 3/2 sits between the s=1 and s=2 bounds.
        let b1 = szpiro_n_bound(s(1, 1), &fact_spec(&[1]), 1).unwrap().n_bound;
        let b32 = szpiro_n_bound(s(3, 2), &fact_spec(&[1]), 1).unwrap().n_bound;
        let b2 = szpiro_n_bound(s(2, 1), &fact_spec(&[1]), 1).unwrap().n_bound;
        assert!(b1 < b32 && b32 < b2, "{b1} {b32} {b2}");
    }

    #[test]
    fn szpiro_bound_rejects_non_factorial() {
        let spec = ProductSpec::new(vec![
            SequenceTerm::with_default_mode(SequenceFamily::Primorial, 1).unwrap(),
        ])
        .unwrap();
        assert!(szpiro_n_bound(s(1, 1), &spec, 1).is_err());
    }

    #[test]
    fn kfree_growth_bound_small_case() {
        // (k=2, r=1, d=1, M=1, C=1): even crossover needs ln n > 13, odd
        // slightly earlier; e^13 = 442413.39..., largest failing even 442412.
        let bound = kfree_growth_bound(2, 1, 1, 1, 1).unwrap();
        assert_eq!(bound.n_bound, 442_413);
        assert_eq!(bound.fails_at, Some(442_412));
    }

    #[test]
    fn kfree_growth_bound_large_case() {
        // (k=2, r=1, d=2, M=1, C=1): even side needs ln n > 25,
        // e^25 = 72004899337.38...
        let bound = kfree_growth_bound(2, 1, 2, 1, 1).unwrap();
        assert_eq!(bound.n_bound, 72_004_899_337);
        assert_eq!(bound.fails_at, Some(72_004_899_336));
    }

    #[test]
    fn kfree_growth_bound_monotone_in_c() {
        let c1 = kfree_growth_bound(2, 1, 2, 1, 1).unwrap().n_bound;
        let c3 = kfree_growth_bound(2, 1, 2, 1, 3).unwrap().n_bound;
        assert!(c3 < c1, "extra C^n growth must lower the bound: {c3} vs {c1}");
    }

    #[test]
    fn kfree_growth_bound_rejects_bad_parameters() {
        assert!(kfree_growth_bound(1, 1, 1, 1, 1).is_err());
        assert!(kfree_growth_bound(2, 0, 1, 1, 1).is_err());
    }
}
