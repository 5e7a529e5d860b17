//! Exact prime, factorization, valuation and radical arithmetic over
//! arbitrary-precision integers.
//!
//! Everything here is deterministic: primality is decided by trial division
//! and factorization carries an explicit budget with a hard failure mode, so
//! results feeding certificates are never probabilistic.

use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Hard memory cap for sieving (`~128 MiB` of odd flags at the cap).
pub const MAX_SIEVE_LIMIT: u64 = 1 << 28;

/// Default trial-division bound used when callers do not pick one.
pub const DEFAULT_FACTOR_BUDGET: u64 = 1_000_000;

/// All primes up to a fixed limit, with rank queries.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Sieve of Eratosthenes over odd numbers.
    pub fn sieve(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::InvalidInput(format!(
                "sieve limit must be >= 2, got {limit}"
            )));
        }
        if limit > MAX_SIEVE_LIMIT {
            return Err(Error::BudgetExceeded(format!(
                "sieve limit {limit} exceeds memory cap {MAX_SIEVE_LIMIT}"
            )));
        }
        // composite[i] marks the odd number 2i+1.
        let half = ((limit + 1) / 2) as usize;
        let mut composite = vec![false; half];
        composite[0] = true; // 1 is not prime
        let mut i = 1usize;
        while {
            let p = 2 * i as u64 + 1;
            p * p <= limit
        } {
            if !composite[i] {
                let p = 2 * i as u64 + 1;
                let mut j = (p * p) / 2;
                while j < half as u64 {
                    composite[j as usize] = true;
                    j += p;
                }
            }
            i += 1;
        }
        let mut primes = Vec::with_capacity(pi_upper_estimate(limit));
        primes.push(2);
        for (i, &c) in composite.iter().enumerate() {
            if !c {
                primes.push(2 * i as u64 + 1);
            }
        }
        Ok(PrimeTable { limit, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Prime-counting function. Only valid for `n <= limit`.
    pub fn pi(&self, n: u64) -> u64 {
        assert!(n <= self.limit, "pi({n}) beyond table limit {}", self.limit);
        self.primes.partition_point(|&p| p <= n) as u64
    }

    /// Membership test for `n <= limit`.
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(n <= self.limit, "is_prime({n}) beyond table limit");
        self.primes.binary_search(&n).is_ok()
    }

    /// 1-based: `nth(1) = 2`.
    pub fn nth(&self, n: usize) -> Option<u64> {
        if n == 0 {
            None
        } else {
            self.primes.get(n - 1).copied()
        }
    }

    /// Smallest prime in the open interval `(lo, hi)`, requiring
    /// `hi - 1 <= limit`.
    pub fn prime_in_interval(&self, lo: u64, hi: u64) -> Result<Option<u64>> {
        if lo >= hi {
            return Err(Error::InvalidInput(format!(
                "empty interval ({lo}, {hi})"
            )));
        }
        assert!(hi - 1 <= self.limit, "interval end beyond table limit");
        let idx = self.primes.partition_point(|&p| p <= lo);
        Ok(self.primes.get(idx).copied().filter(|&p| p < hi))
    }
}

fn pi_upper_estimate(limit: u64) -> usize {
    if limit < 17 {
        8
    } else {
        let n = limit as f64;
        (1.3 * n / n.ln()) as usize + 8
    }
}

/// Spec-level constructor for [`PrimeTable`].
pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    PrimeTable::sieve(limit)
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = 5u64;
    while d * d <= n {
        if n % d == 0 || n % (d + 2) == 0 {
            return false;
        }
        d += 6;
    }
    true
}

// Grow-only shared prime cache. Immutable snapshots are handed to closures, so
// concurrent readers never block each other once the table is large enough.
static PRIME_CACHE: RwLock<Option<PrimeTable>> = RwLock::new(None);

pub(crate) fn with_primes_upto<T>(limit: u64, f: impl FnOnce(&PrimeTable) -> T) -> Result<T> {
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "prime cache request {limit} exceeds cap {MAX_SIEVE_LIMIT}"
        )));
    }
    {
        let guard = PRIME_CACHE.read().unwrap();
        if let Some(t) = guard.as_ref() {
            if t.limit() >= limit {
                return Ok(f(t));
            }
        }
    }
    let mut guard = PRIME_CACHE.write().unwrap();
    let need_grow = guard.as_ref().map_or(true, |t| t.limit() < limit);
    if need_grow {
        let new_limit = limit.max(1 << 12).next_power_of_two().min(MAX_SIEVE_LIMIT);
        *guard = Some(PrimeTable::sieve(new_limit)?);
    }
    Ok(f(guard.as_ref().unwrap()))
}

/// The n-th prime with the convention `nth_prime(1) = 2`.
pub fn nth_prime(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidInput("nth_prime(0) is undefined".into()));
    }
    const SMALL: [u64; 6] = [0, 2, 3, 5, 7, 11];
    if (n as usize) < SMALL.len() {
        return Ok(SMALL[n as usize]);
    }
    // p_n < n (ln n + ln ln n) for n >= 6; pad and retry on the off chance the
    // float estimate rounds low.
    let nf = n as f64;
    let mut bound = (nf * (nf.ln() + nf.ln().ln())).ceil() as u64 + 16;
    loop {
        if let Some(p) = with_primes_upto(bound, |t| t.nth(n as usize))? {
            return Ok(p);
        }
        bound = bound.saturating_mul(2);
    }
}

/// Rank of a prime: `prime_rank(p) = pi(p)`, so `prime_rank(2) = 1`.
pub(crate) fn prime_rank(p: u64) -> Result<u64> {
    debug_assert!(is_prime(p));
    with_primes_upto(p, |t| t.pi(p))
}

/// Smallest prime strictly between `lo` and `hi`, if any.
pub fn prime_in_interval(lo: u64, hi: u64) -> Result<Option<u64>> {
    if lo >= hi {
        return Err(Error::InvalidInput(format!(
            "prime_in_interval: need lo < hi, got ({lo}, {hi})"
        )));
    }
    for q in lo + 1..hi {
        if is_prime(q) {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

/// Exact prime factorization: ordered `(prime, exponent)` entries whose
/// product reconstructs `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    entries: Vec<(u64, u32)>,
    value: BigUint,
}

impl Factorization {
    /// Validating constructor: primes strictly increasing and prime, all
    /// exponents >= 1.
    pub fn new(entries: Vec<(u64, u32)>) -> Result<Self> {
        let mut value = BigUint::one();
        let mut last = 0u64;
        for &(p, e) in &entries {
            if p <= last {
                return Err(Error::InvalidInput(format!(
                    "factorization primes not strictly increasing at {p}"
                )));
            }
            if !is_prime(p) {
                return Err(Error::InvalidInput(format!("{p} is not prime")));
            }
            if e == 0 {
                return Err(Error::InvalidInput(format!("zero exponent at prime {p}")));
            }
            last = p;
            value *= BigUint::from(p).pow(e);
        }
        Ok(Factorization { entries, value })
    }

    /// The factorization of 1: no entries.
    pub fn unit() -> Self {
        Factorization {
            entries: Vec::new(),
            value: BigUint::one(),
        }
    }

    pub fn entries(&self) -> &[(u64, u32)] {
        &self.entries
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> u64 {
        self.entries.len() as u64
    }

    /// Maximum exponent; 0 for the unit by convention.
    pub fn max_exponent(&self) -> u32 {
        self.entries.iter().map(|&(_, e)| e).max().unwrap_or(0)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.entries
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Product of the distinct primes; 1 for the unit.
    pub fn radical(&self) -> BigUint {
        self.entries
            .iter()
            .fold(BigUint::one(), |acc, &(p, _)| acc * BigUint::from(p))
    }
}

/// `(omega, K)`: distinct prime count and maximum exponent.
pub fn omega_and_k(f: &Factorization) -> (u64, u32) {
    (f.omega(), f.max_exponent())
}

/// Algebraic radical of a factored integer.
pub fn radical(f: &Factorization) -> BigUint {
    f.radical()
}

/// Complete factorization by trial division with an explicit budget.
///
/// After removing every prime factor `<= budget`, a remaining cofactor is
/// prime whenever it is `<= budget^2`; anything larger is reported as
/// [`Error::FactorizationIncomplete`], never silently mislabeled.
pub fn factorize(x: &BigUint, budget: u64) -> Result<Factorization> {
    if x.is_zero() {
        return Err(Error::InvalidInput("cannot factorize 0".into()));
    }
    if budget < 2 {
        return Err(Error::InvalidInput("factorization budget must be >= 2".into()));
    }
    if budget > u32::MAX as u64 {
        return Err(Error::InvalidInput(
            "factorization budget above 2^32 is unsupported".into(),
        ));
    }
    let value = x.clone();
    let mut rem = x.clone();
    let mut entries: Vec<(u64, u32)> = Vec::new();

    let divide_out = |rem: &mut BigUint, d: u64, entries: &mut Vec<(u64, u32)>| {
        let db = BigUint::from(d);
        let mut e = 0u32;
        loop {
            let (q, r) = rem.div_rem(&db);
            if r.is_zero() {
                *rem = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            entries.push((d, e));
        }
    };

    for d in [2u64, 3] {
        if d > budget {
            break;
        }
        divide_out(&mut rem, d, &mut entries);
    }
    let mut d = 5u64;
    while d <= budget {
        // 6k±1 wheel; composite d cannot divide once its prime parts are gone.
        if BigUint::from(d) * BigUint::from(d) > rem {
            break;
        }
        divide_out(&mut rem, d, &mut entries);
        if d + 2 <= budget {
            divide_out(&mut rem, d + 2, &mut entries);
        }
        d += 6;
    }

    if !rem.is_one() {
        let bound = BigUint::from(budget) * BigUint::from(budget);
        if rem <= bound {
            // No factor <= budget and rem <= budget^2 forces primality.
            let p = u64::try_from(&rem).expect("cofactor fits u64 under budget cap");
            entries.push((p, 1));
        } else {
            return Err(Error::FactorizationIncomplete {
                cofactor: rem,
                budget,
            });
        }
    }
    entries.sort_unstable_by_key(|&(p, _)| p);
    Ok(Factorization { entries, value })
}

/// Factorization of a `u64`, always complete.
pub fn factorize_u64(x: u64) -> Factorization {
    assert!(x >= 1, "factorize_u64 requires x >= 1");
    let mut rem = x;
    let mut entries = Vec::new();
    let strip = |rem: &mut u64, d: u64, entries: &mut Vec<(u64, u32)>| {
        let mut e = 0u32;
        while *rem % d == 0 {
            *rem /= d;
            e += 1;
        }
        if e > 0 {
            entries.push((d, e));
        }
    };
    strip(&mut rem, 2, &mut entries);
    strip(&mut rem, 3, &mut entries);
    let mut d = 5u64;
    while d * d <= rem {
        strip(&mut rem, d, &mut entries);
        strip(&mut rem, d + 2, &mut entries);
        d += 6;
    }
    if rem > 1 {
        entries.push((rem, 1));
    }
    Factorization {
        entries,
        value: BigUint::from(x),
    }
}

/// Largest `e` with `p^e | x`, for nonzero `x`.
pub fn valuation(x: &BigUint, p: u64) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::InvalidInput(
            "valuation of 0 is infinite".into(),
        ));
    }
    debug_assert!(is_prime(p));
    let pb = BigUint::from(p);
    let mut rem = x.clone();
    let mut e = 0u64;
    loop {
        let (q, r) = rem.div_rem(&pb);
        if r.is_zero() {
            rem = q;
            e += 1;
        } else {
            return Ok(e);
        }
    }
}

/// Valuation of a signed integer via its magnitude.
pub fn valuation_signed(x: &BigInt, p: u64) -> Result<u64> {
    valuation(x.magnitude(), p)
}

/// Legendre's formula: valuation of `n!` as the finite floor sum.
pub fn legendre_valuation(n: u64, p: u64) -> u64 {
    debug_assert!(is_prime(p));
    let mut sum = 0u64;
    let mut pk = p as u128;
    while pk <= n as u128 {
        sum += n / pk as u64;
        pk *= p as u128;
    }
    sum
}

/// Least `n0` in `[lo, hi]` such that the two-sided Chebyshev bounds
/// `n/ln n <= pi(n) <= (3/2) n/ln n` hold for every `n` in `[n0, hi]`, or
/// `None` if they fail at `hi` itself. Verdicts are certified (no floating
/// point decides a borderline case).
pub fn chebyshev_first_valid(table: &PrimeTable, lo: u64, hi: u64) -> Option<u64> {
    assert!(2 <= lo && lo <= hi && hi <= table.limit());
    let holds = |n: u64| -> bool {
        let pi = table.pi(n);
        // lower: pi * ln n >= n; upper: 2 pi * ln n <= 3 n.
        pi > 0
            && crate::bracket::cmp_scaled_ln(pi, n, n) != std::cmp::Ordering::Less
            && crate::bracket::cmp_scaled_ln(2 * pi, n, 3 * n) != std::cmp::Ordering::Greater
    };
    let mut first = None;
    for n in lo..=hi {
        if holds(n) {
            first.get_or_insert(n);
        } else {
            first = None;
        }
    }
    first
}
