//! Generators for the known infinite solution families of `x^2 = product`,
//! each member re-verified exactly on construction.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::Result;
use crate::poly::IntPolynomial;
use crate::sequences::{
    eval_term_budgeted, ProductSpec, SequenceFamily, SequenceTerm, DEFAULT_BIT_BUDGET,
};
use crate::solver::SolutionRecord;

/// The three generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionFamily {
    /// `x^2 = l! * (2l)!!` with even `l`: `x = 2^(l/2) l!`.
    SqFactDfact,
    /// `x^2 = n# * n#`: `x = n#`.
    SqPrimorials,
    /// `x^2 = n! * 1# * n!`: `x = n!`.
    SqFactPrimFact,
}

impl SolutionFamily {
    pub const ALL: [SolutionFamily; 3] = [
        SolutionFamily::SqFactDfact,
        SolutionFamily::SqPrimorials,
        SolutionFamily::SqFactPrimFact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolutionFamily::SqFactDfact => "sq_fact_dfact",
            SolutionFamily::SqPrimorials => "sq_primorials",
            SolutionFamily::SqFactPrimFact => "sq_fact_prim_fact",
        }
    }

    pub fn parse(text: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == text)
    }

    /// The product shape this family solves against.
    pub fn spec(self) -> ProductSpec {
        let term = |family, a| SequenceTerm::with_default_mode(family, a).unwrap();
        let terms = match self {
            SolutionFamily::SqFactDfact => vec![
                term(SequenceFamily::Factorial, 1),
                term(SequenceFamily::DoubleFactorial, 1),
            ],
            SolutionFamily::SqPrimorials => vec![
                term(SequenceFamily::Primorial, 1),
                term(SequenceFamily::Primorial, 1),
            ],
            SolutionFamily::SqFactPrimFact => vec![
                term(SequenceFamily::Factorial, 1),
                term(SequenceFamily::Primorial, 1),
                term(SequenceFamily::Factorial, 1),
            ],
        };
        ProductSpec::new(terms).unwrap()
    }
}

/// First `count` members of the family, verified against `x^2 = product`.
pub fn family_solutions(
    family: SolutionFamily,
    count: u64,
) -> Result<(ProductSpec, Vec<SolutionRecord>)> {
    family_solutions_budgeted(family, count, DEFAULT_BIT_BUDGET)
}

pub fn family_solutions_budgeted(
    family: SolutionFamily,
    count: u64,
    bit_budget: u64,
) -> Result<(ProductSpec, Vec<SolutionRecord>)> {
    if count < 1 {
        return Err(crate::error::Error::InvalidInput(
            "count must be >= 1".into(),
        ));
    }
    let spec = family.spec();
    let square = IntPolynomial::monomial(2);
    let factorial = SequenceTerm::with_default_mode(SequenceFamily::Factorial, 1).unwrap();
    let primorial = SequenceTerm::with_default_mode(SequenceFamily::Primorial, 1).unwrap();
    let mut records = Vec::with_capacity(count as usize);
    for i in 1..=count {
        let (x, nvec): (BigUint, Vec<u64>) = match family {
            SolutionFamily::SqFactDfact => {
                // l = 2i keeps l even; x = 2^(l/2) l!.
                let l = 2 * i;
                let x = eval_term_budgeted(&factorial, l, bit_budget)?
                    * (BigUint::one() << i as usize);
                (x, vec![l, 2 * l])
            }
            SolutionFamily::SqPrimorials => {
                let n = i + 1;
                (eval_term_budgeted(&primorial, n, bit_budget)?, vec![n, n])
            }
            SolutionFamily::SqFactPrimFact => {
                let n = i + 1;
                (
                    eval_term_budgeted(&factorial, n, bit_budget)?,
                    vec![n, 1, n],
                )
            }
        };
        records.push(SolutionRecord::verified(
            &square,
            &spec,
            BigInt::from(x),
            nvec,
            bit_budget,
        )?);
    }
    Ok((spec, records))
}
