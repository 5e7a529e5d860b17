//! Integer polynomials: exact Horner evaluation, exhaustive root sets modulo
//! a prime, and complete integer solution sets of `P(x) = M` certified by the
//! monotone-tail method (no floating point anywhere).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Cap on the central scan `[-B, B]`; hit only by adversarial coefficients.
const SCAN_LIMIT: u64 = 1 << 22;

/// Dense integer polynomial `c_0 + c_1 x + ... + c_d x^d` in canonical form
/// (no trailing zero coefficients; the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The monomial `x^d`.
    pub fn monomial(d: u32) -> Self {
        let mut coeffs = vec![BigInt::zero(); d as usize + 1];
        coeffs[d as usize] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with both the zero polynomial and constants reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `Some(d)` iff this is exactly `x^d` with `d >= 1`.
    pub fn monic_monomial_degree(&self) -> Option<u32> {
        let d = self.degree();
        if d >= 1
            && self.coeffs[d].is_one()
            && self.coeffs[..d].iter().all(Zero::is_zero)
        {
            u32::try_from(d).ok()
        } else {
            None
        }
    }
}

/// All residues `x` in `[0, p)` with `P(x) = 0 (mod p)`, by exhaustive
/// evaluation over the full residue ring.
pub fn roots_mod_p(poly: &IntPolynomial, p: u64) -> Vec<u64> {
    debug_assert!(crate::arith::is_prime(p));
    let pb = BigInt::from(p);
    let reduced: Vec<u64> = poly
        .coeffs
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            u64::try_from(&r).expect("residue fits u64")
        })
        .collect();
    let mut roots = Vec::new();
    for x in 0..p {
        let mut acc: u64 = 0;
        for &c in reduced.iter().rev() {
            acc = ((acc as u128 * x as u128 + c as u128) % p as u128) as u64;
        }
        if acc == 0 {
            roots.push(x);
        }
    }
    roots
}

/// The complete set `{x : P(x) = M}`, sorted ascending.
///
/// For degree >= 2 every real critical point of `P` lies in `[-B, B]` with
/// `B = 1 + ceil(max |c_i| / |c_d|)` (a Cauchy bound that also covers `P'`),
/// so the integers in `[-B, B]` are scanned exhaustively and each strictly
/// monotone tail is searched by exact integer bisection.
pub fn integer_solutions(poly: &IntPolynomial, m: &BigInt) -> Result<Vec<BigInt>> {
    if poly.is_zero() || poly.degree() < 1 {
        return Err(Error::PreconditionViolated(
            "integer_solutions needs degree >= 1".into(),
        ));
    }
    if poly.degree() == 1 {
        // c0 + c1 x = M has the single candidate (M - c0)/c1.
        let c1 = &poly.coeffs[1];
        let num = m - &poly.coeffs[0];
        let (q, r) = num.div_rem(c1);
        return Ok(if r.is_zero() { vec![q] } else { vec![] });
    }

    let lead = poly.leading().unwrap().magnitude().clone();
    let max_low = poly.coeffs[..poly.degree()]
        .iter()
        .map(|c| c.magnitude().clone())
        .max()
        .unwrap_or_default();
    // B = 1 + ceil(max / |lead|)
    let bound_big = BigUint::one() + (&max_low + &lead - BigUint::one()) / &lead;
    let bound = u64::try_from(&bound_big).unwrap_or(u64::MAX);
    if bound > SCAN_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "central scan bound {bound} exceeds cap {SCAN_LIMIT}"
        )));
    }

    let mut solutions = Vec::new();
    let b = BigInt::from(bound);
    let mut x = -b.clone();
    while x <= b {
        if &poly.eval(&x) == m {
            solutions.push(x.clone());
        }
        x += 1;
    }

    // Tails: strictly monotone beyond B in each direction.
    for positive in [true, false] {
        let start = if positive {
            &b + 1
        } else {
            -&b - 1
        };
        if let Some(x) = tail_solution(poly, m, start, positive) {
            solutions.push(x);
        }
    }
    solutions.sort();
    solutions.dedup();
    Ok(solutions)
}

/// Search the strictly monotone tail beginning at `start` (inclusive) going
/// away from zero. Returns the unique solution if one exists.
fn tail_solution(poly: &IntPolynomial, m: &BigInt, start: BigInt, positive: bool) -> Option<BigInt> {
    let d = poly.degree();
    let lead_pos = poly.leading().unwrap().is_positive();
    // Does P tend to +inf along this tail?
    let to_plus_infinity = if positive {
        lead_pos
    } else {
        lead_pos == (d % 2 == 0)
    };
    let first = poly.eval(&start);
    if &first == m {
        return Some(start);
    }
    // m must lie strictly beyond the first value in the unbounded direction.
    if to_plus_infinity && &first > m {
        return None;
    }
    if !to_plus_infinity && &first < m {
        return None;
    }

    // Exponential bracketing: find far with P(far) past m.
    let dir: BigInt = if positive { BigInt::one() } else { -BigInt::one() };
    let mut step = BigInt::one();
    let mut far;
    loop {
        far = &start + &dir * &step;
        let v = poly.eval(&far);
        let past = if to_plus_infinity { &v >= m } else { &v <= m };
        if past {
            break;
        }
        step *= 2;
    }

    // Bisection on magnitudes with the invariant: P at near_abs strictly
    // short of m, P at far_abs at-or-past m, in tail order.
    let mut far_abs = if positive { far } else { -far };
    let mut near_abs = if positive { start } else { -start };
    while &far_abs - &near_abs > BigInt::one() {
        let mid_abs: BigInt = (&near_abs + &far_abs) / 2;
        let mid = if positive { mid_abs.clone() } else { -mid_abs.clone() };
        let v = poly.eval(&mid);
        let past = if to_plus_infinity { &v >= m } else { &v <= m };
        if past {
            far_abs = mid_abs;
        } else {
            near_abs = mid_abs;
        }
    }
    let candidate = if positive { far_abs } else { -far_abs };
    if &poly.eval(&candidate) == m {
        Some(candidate)
    } else {
        None
    }
}
