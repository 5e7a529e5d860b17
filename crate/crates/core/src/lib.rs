//! Exact solvers, machine-checkable certificates, and desk-scale audits for
//! Diophantine equations of the form `P(x) = H_{n_1} * ... * H_{n_r}`, where
//! each `H_n` is a divisible sequence (`A^n n!`, `A^n n!!`, `A^n n#`,
//! `A^{p_n} p_n#`, or `A^n lcm[1..n]`).
//!
//! All number theory is exact over arbitrary-precision integers. Wherever a
//! verdict involves e or a logarithm, the comparison goes through certified
//! rational enclosures ([`bracket`]); floating point only ever renders
//! display values.

pub mod arith;
pub mod bracket;
pub mod error;
pub mod explorer;
pub mod poly;
pub mod sequences;
pub mod solver;

pub use error::{Error, Result};
