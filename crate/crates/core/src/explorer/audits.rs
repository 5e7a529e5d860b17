//! Exhaustive divisor-bound audits: for every divisor `x` of `A^n n!^s`,
//! check the two upper bounds in terms of `omega(x)` and `K(x)` by exact
//! arithmetic (powers of e enter through certified rational enclosures).

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Signed};

use crate::arith::{factorize_u64, legendre_valuation};
use crate::bracket::e_pow;
use crate::error::{Error, Result};
use crate::explorer::ln_f64;

/// Cap on the divisor count a single audit may enumerate.
const DIVISOR_BUDGET: u128 = 1 << 22;

/// A concrete counterexample tuple; expected to never occur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub x: BigUint,
    pub omega: u64,
    pub max_exp: u32,
    /// Which inequality failed ("main" or "refinement").
    pub check: &'static str,
}

/// The tightest `ln x / ln bound` ratio observed, and where.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalRatio {
    pub ratio: f64,
    pub x: BigUint,
    pub omega: u64,
    pub max_exp: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    /// Human-readable description of the audited parameter point.
    pub grid: String,
    pub checked_count: u64,
    pub violations: Vec<Violation>,
    pub extremal: Option<ExtremalRatio>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Factorization entries of `A^n * n!^s`, built from Legendre's formula
/// without evaluating the number.
fn power_factorial_entries(a: u64, s: u32, n: u64) -> Vec<(u64, u32)> {
    let mut exps: HashMap<u64, u64> = HashMap::new();
    for &(p, e) in factorize_u64(a).entries() {
        *exps.entry(p).or_default() += n * e as u64;
    }
    if n >= 2 {
        crate::arith::with_primes_upto(n, |t| {
            for &p in t.primes().iter().take_while(|&&p| p <= n) {
                *exps.entry(p).or_default() += s as u64 * legendre_valuation(n, p);
            }
        })
        .expect("audit sieve within cap");
    }
    let mut entries: Vec<(u64, u32)> = exps
        .into_iter()
        .map(|(p, e)| (p, u32::try_from(e).expect("exponent fits u32")))
        .collect();
    entries.sort_unstable_by_key(|&(p, _)| p);
    entries
}

fn divisor_count(entries: &[(u64, u32)]) -> u128 {
    entries
        .iter()
        .fold(1u128, |acc, &(_, e)| acc * (e as u128 + 1))
}

/// Visit every divisor as `(value, omega, max_exponent)`.
fn for_each_divisor(entries: &[(u64, u32)], mut visit: impl FnMut(&BigUint, u64, u32)) {
    let powers: Vec<Vec<BigUint>> = entries
        .iter()
        .map(|&(p, e)| {
            let mut row = Vec::with_capacity(e as usize + 1);
            let mut acc = BigUint::one();
            for _ in 0..=e {
                row.push(acc.clone());
                acc *= p;
            }
            row
        })
        .collect();
    let mut exps = vec![0u32; entries.len()];
    loop {
        let mut value = BigUint::one();
        let mut omega = 0u64;
        let mut max_exp = 0u32;
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                value *= &powers[i][e as usize];
                omega += 1;
                max_exp = max_exp.max(e);
            }
        }
        visit(&value, omega, max_exp);
        // Odometer increment.
        let mut i = 0;
        loop {
            if i == entries.len() {
                return;
            }
            if exps[i] < entries[i].1 {
                exps[i] += 1;
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Integer bracket of `scale * e^t`: any integer `<= lo_floor` is certainly
/// below, any integer `> hi_floor` certainly above (an integer exceeding
/// `floor(hi)` exceeds `hi` itself).
#[derive(Debug, Clone)]
struct ScaledEPow {
    scale: BigUint,
    t: u64,
    prec: u32,
    lo_floor: BigUint,
    hi_floor: BigUint,
    exact: bool,
}

impl ScaledEPow {
    fn new(scale: BigUint, t: u64, prec: u32) -> Self {
        let enc = e_pow(t, prec).scale_big(&scale);
        debug_assert!(!enc.lo.is_negative());
        ScaledEPow {
            scale,
            t,
            prec,
            lo_floor: enc.lo.floor().to_integer().magnitude().clone(),
            hi_floor: enc.hi.floor().to_integer().magnitude().clone(),
            exact: t == 0,
        }
    }

    /// Decide `value <= scale * e^t`, escalating precision as needed. The
    /// right side is irrational for `t >= 1`, so separation always succeeds.
    fn ge(&mut self, value: &BigUint) -> bool {
        loop {
            if value <= &self.lo_floor {
                return true;
            }
            if value > &self.hi_floor || self.exact {
                return false;
            }
            self.prec *= 2;
            assert!(self.prec <= 1 << 14, "e^t enclosure failed to separate");
            *self = ScaledEPow::new(self.scale.clone(), self.t, self.prec);
        }
    }
}

struct ExtremalTracker {
    best: Option<ExtremalRatio>,
}

impl ExtremalTracker {
    fn new() -> Self {
        ExtremalTracker { best: None }
    }

    fn observe(&mut self, x: &BigUint, omega: u64, max_exp: u32, ln_bound: f64) {
        if x <= &BigUint::one() || ln_bound <= 0.0 {
            return;
        }
        let ratio = ln_f64(x) / ln_bound;
        if self.best.as_ref().is_none_or(|b| ratio > b.ratio) {
            self.best = Some(ExtremalRatio {
                ratio,
                x: x.clone(),
                omega,
                max_exp,
            });
        }
    }
}

fn check_budget(a: u64, s: u32, n: u64, entries: &[(u64, u32)]) -> Result<()> {
    let count = divisor_count(entries);
    if count > DIVISOR_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "A={a} s={s} n={n}: {count} divisors exceed the audit budget"
        )));
    }
    let bits: u64 = entries
        .iter()
        .map(|&(p, e)| (64 - p.leading_zeros() as u64) * e as u64)
        .sum();
    if bits > crate::sequences::DEFAULT_BIT_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "A={a} s={s} n={n}: value exceeds the bit budget"
        )));
    }
    Ok(())
}

/// Check `x <= A^(K(x) omega(x)) * exp(3 n s K(x) / 2)` for every divisor `x`
/// of `A^n n!^s` (compared as `x^2 <= A^(2 K omega) e^(3 n s K)` to clear the
/// half-integer exponent), plus the refinement `x <= exp(3 n s K(x))` when
/// `n >= A`.
pub fn audit_exp_divisor_bound(a: u64, s: u32, n: u64) -> Result<AuditReport> {
    if a == 0 || s == 0 || n == 0 {
        return Err(Error::InvalidInput("audit parameters must be positive".into()));
    }
    let entries = power_factorial_entries(a, s, n);
    check_budget(a, s, n, &entries)?;
    let max_omega = entries.len() as u64;
    let max_k = entries.iter().map(|&(_, e)| e).max().unwrap_or(0) as u64;
    if 2 * max_omega * max_k > u32::MAX as u64 || 3 * n * s as u64 * max_k > u32::MAX as u64 {
        return Err(Error::BudgetExceeded("audit exponents exceed u32".into()));
    }

    let a_big = BigUint::from(a);
    let mut main_bounds: HashMap<(u64, u32), ScaledEPow> = HashMap::new();
    let mut refinement_bounds: HashMap<u32, ScaledEPow> = HashMap::new();
    let mut violations = Vec::new();
    let mut checked = 0u64;
    let mut extremal = ExtremalTracker::new();
    let check_refinement = n >= a;

    for_each_divisor(&entries, |x, omega, k| {
        checked += 1;
        let t = 3 * n * s as u64 * k as u64;
        let main = main_bounds.entry((omega, k)).or_insert_with(|| {
            ScaledEPow::new(a_big.pow((2 * omega * k as u64) as u32), t, 64)
        });
        if !main.ge(&(x * x)) {
            violations.push(Violation {
                x: x.clone(),
                omega,
                max_exp: k,
                check: "main",
            });
        }
        if check_refinement {
            let refined = refinement_bounds
                .entry(k)
                .or_insert_with(|| ScaledEPow::new(BigUint::one(), t, 64));
            if !refined.ge(x) {
                violations.push(Violation {
                    x: x.clone(),
                    omega,
                    max_exp: k,
                    check: "refinement",
                });
            }
        }
        // ln bound = K omega ln A + 3 n s K / 2 (display only).
        let ln_bound =
            (k as u64 * omega) as f64 * (a as f64).ln() + 1.5 * (n * s as u64 * k as u64) as f64;
        extremal.observe(x, omega, k, ln_bound);
    });

    Ok(AuditReport {
        grid: format!("divisor bound (exp form): A={a} s={s} n={n}"),
        checked_count: checked,
        violations,
        extremal: extremal.best,
    })
}

/// Check `x <= (a omega + 1)^(n omega (beta + s)) * (A n^s)^(n (beta omega + s/a))`
/// for every divisor `x` of `A^n n!^s`, with `beta = K(A)`. Both sides are
/// raised to the a-th power, which clears the rational exponent `s/a`
/// exactly. At `A = 1` (`beta = 0`) the checked instance is literally the
/// simplified form `x <= (a omega + 1)^(n omega s) (n^s)^(n s / a)`.
pub fn audit_power_divisor_bound(multiplier: u64, s: u32, a: u64, n: u64) -> Result<AuditReport> {
    if multiplier == 0 || s == 0 || a == 0 || n == 0 {
        return Err(Error::InvalidInput("audit parameters must be positive".into()));
    }
    let entries = power_factorial_entries(multiplier, s, n);
    check_budget(multiplier, s, n, &entries)?;

    let beta = factorize_u64(multiplier).max_exponent() as u64;
    let max_omega = entries.len() as u64;
    if a * n * max_omega * (beta + s as u64) > u32::MAX as u64 {
        return Err(Error::BudgetExceeded("audit exponents exceed u32".into()));
    }
    let base = BigUint::from(multiplier) * BigUint::from(n).pow(s); // A n^s
    let a32 = u32::try_from(a).map_err(|_| Error::InvalidInput("a too large".into()))?;

    // bound^a depends only on omega(x); cache per omega.
    let mut bound_cache: HashMap<u64, BigUint> = HashMap::new();
    let mut violations = Vec::new();
    let mut checked = 0u64;
    let mut extremal = ExtremalTracker::new();
    for_each_divisor(&entries, |x, omega, k| {
        checked += 1;
        let rhs = bound_cache.entry(omega).or_insert_with(|| {
            let e1 = (a * n * omega * (beta + s as u64)) as u32;
            let e2 = (a * n * beta * omega) as u32;
            let e3 = (n * s as u64) as u32;
            BigUint::from(a * omega + 1).pow(e1) * base.pow(e2 + e3)
        });
        if &x.pow(a32) > rhs {
            violations.push(Violation {
                x: x.clone(),
                omega,
                max_exp: k,
                check: "main",
            });
        }
        let ln_bound = (n * omega * (beta + s as u64)) as f64 * ((a * omega + 1) as f64).ln()
            + (n as f64 * (beta * omega) as f64 + (n * s as u64) as f64 / a as f64)
                * ln_f64(&base);
        extremal.observe(x, omega, k, ln_bound);
    });

    Ok(AuditReport {
        grid: format!("divisor bound (power form): A={multiplier} s={s} a={a} n={n}"),
        checked_count: checked,
        violations,
        extremal: extremal.best,
    })
}
