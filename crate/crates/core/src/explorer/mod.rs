//! Empirical side of the toolkit: exhaustive divisor-bound audits, radical
//! decay tables, ABC/Szpiro triple quality, class membership, effective
//! crossover bounds, and the generators for the known infinite solution
//! families. Verdicts are exact; floating point appears only in display
//! fields.

mod audits;
mod bounds;
mod families;
mod quality;
mod ratios;

pub use audits::{audit_exp_divisor_bound, audit_power_divisor_bound, AuditReport, ExtremalRatio, Violation};
pub use bounds::{
    kfree_growth_bound, kfree_growth_holds, szpiro_growth_holds, szpiro_n_bound, CrossoverBound,
};
pub use families::{family_solutions, family_solutions_budgeted, SolutionFamily};
pub use quality::{abc_szpiro_quality, class_membership, QualityRecord};
pub use ratios::{radical_ratio_table, radical_ratio_table_budgeted, RatioRow, RatioTable};

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// A strictly positive rational parameter (epsilon exponents, Szpiro s).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PosRational {
    pub num: u64,
    pub den: u64,
}

impl PosRational {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::InvalidInput(
                "rational parameter must be positive".into(),
            ));
        }
        let g = num_integer::gcd(num, den);
        Ok(PosRational {
            num: num / g,
            den: den / g,
        })
    }

    pub fn from_u64(n: u64) -> Result<Self> {
        PosRational::new(n, 1)
    }
}

impl std::fmt::Display for PosRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Display-only natural log of a big integer (top 53 bits + exponent).
pub(crate) fn ln_f64(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return (u64::try_from(x).unwrap() as f64).ln();
    }
    let shift = bits - 53;
    let top = u64::try_from(&(x >> shift)).unwrap();
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}
