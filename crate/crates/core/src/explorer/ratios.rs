//! Radical decay tables: along the diagonal `nvec = (n, ..., n)` compute the
//! exact ratio `N(F)^(1+eps) / F` for the product `F` and its radical `N(F)`.
//! Trend and threshold verdicts are exact integer-power comparisons; the
//! displayed ratio is a floating-point rendering only.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::explorer::{ln_f64, PosRational};
use crate::sequences::{self, ProductSpec, SequenceFamily, DEFAULT_BIT_BUDGET};

#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    pub n: u64,
    /// Radical of the diagonal product value.
    pub radical: BigUint,
    /// The diagonal product value itself.
    pub value: BigUint,
    /// Display-only decimal rendering of `radical^(1+eps) / value`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioTable {
    eps: PosRational,
    rows: Vec<RatioRow>,
    /// Whether every primorial/lcm term has multiplier > 1, the hypothesis
    /// under which the decay claim applies to those families.
    pub decay_hypothesis_met: bool,
}

impl RatioTable {
    pub fn eps(&self) -> PosRational {
        self.eps
    }

    pub fn rows(&self) -> &[RatioRow] {
        &self.rows
    }

    fn row(&self, n: u64) -> &RatioRow {
        &self.rows[(n - 1) as usize]
    }

    /// Exact comparison of the ratios at rows `n_a` and `n_b`: with
    /// `eps = p/q`, `ratio(a) < ratio(b)` iff
    /// `N_a^(q+p) F_b^q < N_b^(q+p) F_a^q`.
    pub fn cmp_ratios(&self, n_a: u64, n_b: u64) -> Ordering {
        let (p, q) = (self.eps.num, self.eps.den);
        let ea = u32::try_from(q + p).expect("eps exponent fits u32");
        let eq = u32::try_from(q).expect("eps exponent fits u32");
        let a = self.row(n_a);
        let b = self.row(n_b);
        let lhs = a.radical.pow(ea) * b.value.pow(eq);
        let rhs = b.radical.pow(ea) * a.value.pow(eq);
        lhs.cmp(&rhs)
    }

    /// Exact test `ratio(n) < 10^-neg_exp10`.
    pub fn ratio_below_pow10(&self, n: u64, neg_exp10: u32) -> bool {
        let (p, q) = (self.eps.num, self.eps.den);
        let row = self.row(n);
        let lhs = row.radical.pow(u32::try_from(q + p).unwrap())
            * BigUint::from(10u32).pow(neg_exp10 * u32::try_from(q).unwrap());
        let rhs = row.value.pow(u32::try_from(q).unwrap());
        lhs < rhs
    }

    pub fn strictly_decreasing(&self, n_lo: u64, n_hi: u64) -> bool {
        (n_lo..n_hi).all(|n| self.cmp_ratios(n, n + 1) == Ordering::Greater)
    }

    pub fn strictly_increasing(&self, n_lo: u64, n_hi: u64) -> bool {
        (n_lo..n_hi).all(|n| self.cmp_ratios(n, n + 1) == Ordering::Less)
    }

    /// Least `n0` such that the ratios strictly decrease from `n0` through
    /// the last row; `None` when even the final step increases.
    pub fn decreasing_from(&self) -> Option<u64> {
        self.monotone_from(Ordering::Greater)
    }

    pub fn increasing_from(&self) -> Option<u64> {
        self.monotone_from(Ordering::Less)
    }

    fn monotone_from(&self, step: Ordering) -> Option<u64> {
        let last = self.rows.len() as u64;
        if last < 2 {
            return Some(1);
        }
        let mut n0 = last;
        while n0 > 1 && self.cmp_ratios(n0 - 1, n0) == step {
            n0 -= 1;
        }
        if n0 == last {
            None
        } else {
            Some(n0)
        }
    }
}

/// Build the diagonal table for `n = 1..=nmax`.
pub fn radical_ratio_table(spec: &ProductSpec, eps: PosRational, nmax: u64) -> Result<RatioTable> {
    radical_ratio_table_budgeted(spec, eps, nmax, DEFAULT_BIT_BUDGET)
}

pub fn radical_ratio_table_budgeted(
    spec: &ProductSpec,
    eps: PosRational,
    nmax: u64,
    bit_budget: u64,
) -> Result<RatioTable> {
    if nmax < 1 {
        return Err(Error::InvalidInput("nmax must be >= 1".into()));
    }
    if eps.den > 10_000 || eps.num > 10_000 {
        return Err(Error::BudgetExceeded(
            "eps numerator/denominator above 10^4 makes exact powers infeasible".into(),
        ));
    }
    let decay_hypothesis_met = spec.terms().iter().all(|t| {
        !matches!(
            t.family(),
            SequenceFamily::Primorial | SequenceFamily::Lcm
        ) || t.multiplier() > 1
    });
    let mut rows = Vec::with_capacity(nmax as usize);
    for n in 1..=nmax {
        let nvec = vec![n; spec.arity()];
        let value = sequences::eval_product_budgeted(spec, &nvec, bit_budget)?;
        let mut support: BTreeSet<u64> = BTreeSet::new();
        for term in spec.terms() {
            support.extend(sequences::term_support(term, n)?);
        }
        let radical = support
            .iter()
            .fold(BigUint::one(), |acc, &p| acc * BigUint::from(p));
        let e = 1.0 + eps.num as f64 / eps.den as f64;
        let ratio = (e * ln_f64(&radical) - ln_f64(&value)).exp();
        rows.push(RatioRow {
            n,
            radical,
            value,
            ratio,
        });
    }
    Ok(RatioTable {
        eps,
        rows,
        decay_hypothesis_met,
    })
}
