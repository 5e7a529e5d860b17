//! The divisible-sequence families `H_n` (factorial, double factorial,
//! primorial, nth-prime primorial, lcm[1..n]) with multipliers `A^n` or
//! `A^{p_n}`, exact evaluation, closed-form p-adic valuations that never
//! evaluate the term, exact radicals, and the zero-valuation cutoffs the
//! certified solver enumerates over.

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{self, legendre_valuation, nth_prime};
use crate::error::{Error, Result};

/// Default cap on the bit size of any evaluated term or product.
pub const DEFAULT_BIT_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SequenceFamily {
    /// `H_n = n!`
    Factorial,
    /// `H_n = n!! = n (n-2) (n-4) ...`
    DoubleFactorial,
    /// `H_n = n# =` product of primes `<= n`
    Primorial,
    /// `H_n = p_n# =` product of the first `n` primes
    NthPrimePrimorial,
    /// `H_n = lcm[1..n] =` product of `p^floor(log_p n)` over primes `p <= n`
    Lcm,
}

impl SequenceFamily {
    pub const ALL: [SequenceFamily; 5] = [
        SequenceFamily::Factorial,
        SequenceFamily::DoubleFactorial,
        SequenceFamily::Primorial,
        SequenceFamily::NthPrimePrimorial,
        SequenceFamily::Lcm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SequenceFamily::Factorial => "factorial",
            SequenceFamily::DoubleFactorial => "dfact",
            SequenceFamily::Primorial => "primorial",
            SequenceFamily::NthPrimePrimorial => "pprimorial",
            SequenceFamily::Lcm => "lcm",
        }
    }
}

/// Whether the multiplier enters as `A^n` or as `A^{p_n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExponentMode {
    Linear,
    NthPrime,
}

impl ExponentMode {
    pub fn name(self) -> &'static str {
        match self {
            ExponentMode::Linear => "linear",
            ExponentMode::NthPrime => "nth_prime",
        }
    }
}

/// One factor `A^{e(n)} * H_n` of the right-hand side product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SequenceTerm {
    family: SequenceFamily,
    multiplier: u64,
    exponent_mode: ExponentMode,
}

impl SequenceTerm {
    pub fn new(family: SequenceFamily, multiplier: u64, mode: ExponentMode) -> Result<Self> {
        if multiplier == 0 {
            return Err(Error::InvalidInput("multiplier A must be >= 1".into()));
        }
        if mode == ExponentMode::NthPrime && family != SequenceFamily::NthPrimePrimorial {
            return Err(Error::InvalidInput(format!(
                "exponent mode nth_prime is only legal for pprimorial terms, not {}",
                family.name()
            )));
        }
        Ok(SequenceTerm {
            family,
            multiplier,
            exponent_mode: mode,
        })
    }

    /// Family default: `A^{p_n}` for nth-prime primorials, `A^n` otherwise.
    pub fn with_default_mode(family: SequenceFamily, multiplier: u64) -> Result<Self> {
        let mode = if family == SequenceFamily::NthPrimePrimorial {
            ExponentMode::NthPrime
        } else {
            ExponentMode::Linear
        };
        SequenceTerm::new(family, multiplier, mode)
    }

    pub fn family(&self) -> SequenceFamily {
        self.family
    }

    pub fn multiplier(&self) -> u64 {
        self.multiplier
    }

    pub fn exponent_mode(&self) -> ExponentMode {
        self.exponent_mode
    }

    /// The multiplier exponent `e(n)`.
    fn exponent_at(&self, n: u64) -> Result<u64> {
        match self.exponent_mode {
            ExponentMode::Linear => Ok(n),
            ExponentMode::NthPrime => nth_prime(n),
        }
    }
}

/// Ordered nonempty list of terms; its length is the arity `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpec {
    terms: Vec<SequenceTerm>,
}

impl ProductSpec {
    pub fn new(terms: Vec<SequenceTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput("product spec needs at least one term".into()));
        }
        Ok(ProductSpec { terms })
    }

    pub fn terms(&self) -> &[SequenceTerm] {
        &self.terms
    }

    pub fn arity(&self) -> usize {
        self.terms.len()
    }

    fn check_dim(&self, nvec: &[u64]) -> Result<()> {
        if nvec.len() != self.terms.len() {
            return Err(Error::InvalidInput(format!(
                "exponent vector has length {}, spec has arity {}",
                nvec.len(),
                self.terms.len()
            )));
        }
        if nvec.iter().any(|&n| n == 0) {
            return Err(Error::InvalidInput("sequence indices start at 1".into()));
        }
        Ok(())
    }
}

fn check_bits(x: &BigUint, budget: u64, what: &str) -> Result<()> {
    if x.bits() > budget {
        return Err(Error::BudgetExceeded(format!(
            "{what} exceeds the {budget}-bit budget"
        )));
    }
    Ok(())
}

fn family_value(family: SequenceFamily, n: u64, budget: u64) -> Result<BigUint> {
    let mut acc = BigUint::one();
    match family {
        SequenceFamily::Factorial => {
            for k in 2..=n {
                acc *= k;
                check_bits(&acc, budget, "factorial")?;
            }
        }
        SequenceFamily::DoubleFactorial => {
            let mut k = n;
            while k > 1 {
                acc *= k;
                check_bits(&acc, budget, "double factorial")?;
                k = k.saturating_sub(2);
            }
        }
        SequenceFamily::Primorial => {
            arith::with_primes_upto(n.max(2), |t| {
                for &p in t.primes().iter().take_while(|&&p| p <= n) {
                    acc *= p;
                    check_bits(&acc, budget, "primorial")?;
                }
                Ok(())
            })??;
        }
        SequenceFamily::NthPrimePrimorial => {
            let pn = nth_prime(n)?;
            arith::with_primes_upto(pn, |t| {
                for &p in &t.primes()[..n as usize] {
                    acc *= p;
                    check_bits(&acc, budget, "nth-prime primorial")?;
                }
                Ok(())
            })??;
        }
        SequenceFamily::Lcm => {
            arith::with_primes_upto(n.max(2), |t| {
                for &p in t.primes().iter().take_while(|&&p| p <= n) {
                    acc *= BigUint::from(p).pow(floor_log(p, n));
                    check_bits(&acc, budget, "lcm")?;
                }
                Ok(())
            })??;
        }
    }
    Ok(acc)
}

/// Largest `e >= 1` with `p^e <= n`, assuming `p <= n`.
fn floor_log(p: u64, n: u64) -> u32 {
    debug_assert!(2 <= p && p <= n);
    let mut e = 0u32;
    let mut pk = 1u128;
    while pk * p as u128 <= n as u128 {
        pk *= p as u128;
        e += 1;
    }
    e
}

/// Exact value `A^{e(n)} * H_n` under the default bit budget.
pub fn eval_term(term: &SequenceTerm, n: u64) -> Result<BigUint> {
    eval_term_budgeted(term, n, DEFAULT_BIT_BUDGET)
}

pub fn eval_term_budgeted(term: &SequenceTerm, n: u64, bit_budget: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidInput("sequence indices start at 1".into()));
    }
    let h = family_value(term.family, n, bit_budget)?;
    let value = if term.multiplier == 1 {
        h
    } else {
        let e = term.exponent_at(n)?;
        let a_bits = 64 - term.multiplier.leading_zeros() as u64;
        if a_bits * e > bit_budget {
            return Err(Error::BudgetExceeded(format!(
                "multiplier power exceeds the {bit_budget}-bit budget"
            )));
        }
        let e = u32::try_from(e).map_err(|_| {
            Error::BudgetExceeded("multiplier exponent exceeds 2^32".into())
        })?;
        h * BigUint::from(term.multiplier).pow(e)
    };
    check_bits(&value, bit_budget, "term value")?;
    Ok(value)
}

/// `v_p(A^{e(n)} H_n)` from closed forms, without evaluating the term.
///
/// Double factorials split by parity: `(2m)!! = 2^m m!` and
/// `(2m+1)!! = (2m+1)!/(2^m m!)`; the other families reduce to Legendre's
/// formula, membership indicators, or `floor(log_p n)`.
pub fn term_valuation(term: &SequenceTerm, n: u64, p: u64) -> u64 {
    assert!(n >= 1, "sequence indices start at 1");
    debug_assert!(arith::is_prime(p));
    let multiplier_val = {
        let vp_a = valuation_u64(term.multiplier, p);
        if vp_a == 0 {
            0
        } else {
            let e = term
                .exponent_at(n)
                .expect("nth prime within sieve cap for valuation");
            e * vp_a
        }
    };
    multiplier_val + family_valuation(term.family, n, p)
}

fn valuation_u64(mut x: u64, p: u64) -> u64 {
    debug_assert!(x >= 1);
    let mut e = 0;
    while x % p == 0 {
        x /= p;
        e += 1;
    }
    e
}

fn family_valuation(family: SequenceFamily, n: u64, p: u64) -> u64 {
    match family {
        SequenceFamily::Factorial => legendre_valuation(n, p),
        SequenceFamily::DoubleFactorial => {
            if n % 2 == 0 {
                let m = n / 2;
                if p == 2 {
                    m + legendre_valuation(m, 2)
                } else {
                    legendre_valuation(m, p)
                }
            } else {
                let m = n / 2;
                let even_part = if p == 2 {
                    m + legendre_valuation(m, 2)
                } else {
                    legendre_valuation(m, p)
                };
                legendre_valuation(n, p) - even_part
            }
        }
        SequenceFamily::Primorial => u64::from(p <= n),
        SequenceFamily::NthPrimePrimorial => {
            let rank = arith::prime_rank(p).expect("prime rank within sieve cap");
            u64::from(rank <= n)
        }
        SequenceFamily::Lcm => {
            if p > n {
                0
            } else {
                floor_log(p, n) as u64
            }
        }
    }
}

/// Zero-valuation cutoff of a term at `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroValuationBound {
    /// `p` divides the multiplier, so `v_p >= 1` for every `n >= 1`.
    NeverZero,
    /// Least `B` with `n >= B  =>  v_p(term, n) >= 1`; always `B <= 2p`.
    Bound(u64),
    /// `v_p(term, n) = 0` for infinitely many `n` (odd double factorials at
    /// `p = 2` are odd), so no finite cutoff exists.
    Unbounded,
}

/// Cutoff past which the term is guaranteed divisible by `p`.
pub fn zero_valuation_bound(term: &SequenceTerm, p: u64) -> ZeroValuationBound {
    debug_assert!(arith::is_prime(p));
    if term.multiplier % p == 0 {
        // Exponent e(n) >= 1 in both modes, so the A-part always contributes.
        return ZeroValuationBound::NeverZero;
    }
    match term.family {
        SequenceFamily::Factorial | SequenceFamily::Primorial | SequenceFamily::Lcm => {
            ZeroValuationBound::Bound(p)
        }
        SequenceFamily::NthPrimePrimorial => {
            let rank = arith::prime_rank(p).expect("prime rank within sieve cap");
            ZeroValuationBound::Bound(rank)
        }
        SequenceFamily::DoubleFactorial => {
            if p == 2 {
                ZeroValuationBound::Unbounded
            } else {
                // Largest n with v_p = 0 is the even 2p-2; odd n >= p contain
                // the factor p itself.
                ZeroValuationBound::Bound(2 * p - 1)
            }
        }
    }
}

/// Sorted distinct primes dividing `A^{e(n)} H_n`.
pub(crate) fn term_support(term: &SequenceTerm, n: u64) -> Result<Vec<u64>> {
    assert!(n >= 1);
    let mut support: Vec<u64> = arith::factorize_u64(term.multiplier)
        .entries()
        .iter()
        .map(|&(p, _)| p)
        .collect();
    let push_primes_upto = |m: u64, odd_only: bool, support: &mut Vec<u64>| -> Result<()> {
        if m < 2 {
            return Ok(());
        }
        arith::with_primes_upto(m, |t| {
            for &p in t.primes().iter().take_while(|&&p| p <= m) {
                if !(odd_only && p == 2) {
                    support.push(p);
                }
            }
        })
    };
    match term.family {
        SequenceFamily::Factorial | SequenceFamily::Primorial | SequenceFamily::Lcm => {
            push_primes_upto(n, false, &mut support)?;
        }
        SequenceFamily::NthPrimePrimorial => {
            let pn = nth_prime(n)?;
            arith::with_primes_upto(pn, |t| {
                support.extend_from_slice(&t.primes()[..n as usize]);
            })?;
        }
        SequenceFamily::DoubleFactorial => {
            if n % 2 == 0 {
                support.push(2);
                push_primes_upto(n / 2, true, &mut support)?;
            } else {
                push_primes_upto(n, true, &mut support)?;
            }
        }
    }
    support.sort_unstable();
    support.dedup();
    Ok(support)
}

/// Exact radical of `eval_term(term, n)` from prime supports alone.
pub fn term_radical(term: &SequenceTerm, n: u64) -> BigUint {
    term_support(term, n)
        .expect("support primes within sieve cap")
        .into_iter()
        .fold(BigUint::one(), |acc, p| acc * BigUint::from(p))
}

/// Exact product over paired terms and indices, under the default budget.
pub fn eval_product(spec: &ProductSpec, nvec: &[u64]) -> Result<BigUint> {
    eval_product_budgeted(spec, nvec, DEFAULT_BIT_BUDGET)
}

pub fn eval_product_budgeted(spec: &ProductSpec, nvec: &[u64], bit_budget: u64) -> Result<BigUint> {
    spec.check_dim(nvec)?;
    let mut acc = BigUint::one();
    for (term, &n) in spec.terms().iter().zip(nvec) {
        acc *= eval_term_budgeted(term, n, bit_budget)?;
        check_bits(&acc, bit_budget, "product value")?;
    }
    Ok(acc)
}

/// `v_p` of the whole product: the sum of the per-term closed forms.
pub fn product_valuation(spec: &ProductSpec, nvec: &[u64], p: u64) -> Result<u64> {
    spec.check_dim(nvec)?;
    Ok(spec
        .terms()
        .iter()
        .zip(nvec)
        .map(|(term, &n)| term_valuation(term, n, p))
        .sum())
}
