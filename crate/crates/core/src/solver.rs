//! Complete, certificate-producing solvers for `P(x) = H_{n_1} ... H_{n_r}`.
//!
//! The certified route finds an obstruction prime `p` — `P` has no root mod
//! `p`, so any solution forces `v_p` of the whole product to vanish — and the
//! per-term zero-valuation windows then confine every exponent vector to a
//! finite box that is enumerated exhaustively. The perfect-power route uses
//! the interval-prime valuation argument, which bounds every index by
//! `16 * max A_i` once `d > r`.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arith::{self, DEFAULT_FACTOR_BUDGET};
use crate::error::{Error, Result};
use crate::poly::{integer_solutions, roots_mod_p, IntPolynomial};
use crate::sequences::{
    eval_product_budgeted, term_valuation, zero_valuation_bound, ProductSpec, ZeroValuationBound,
    DEFAULT_BIT_BUDGET,
};

/// Cap on the number of exponent vectors a single solve may enumerate.
const BOX_LIMIT: u128 = 1 << 24;

/// Default search limit for obstruction primes.
pub const DEFAULT_OBSTRUCTION_LIMIT: u64 = 10_000;

/// Floor for the perfect-power enumeration bound: the interval `(n/4, n/2)`
/// is guaranteed a prime once `n/4 >= 2`.
const POWER_BOUND_FLOOR: u64 = 8;

/// Per-term enumeration window of an obstruction certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermWindow {
    /// `A mod p`, nonzero: the multiplier contributes no forced `p`.
    pub multiplier_mod_p: u64,
    /// `v_p(term, n) >= 1` for every `n >= bound`; `bound <= 2p`.
    pub bound: u64,
    /// Exactly `{ n in [1, bound) : v_p(term, n) = 0 }`, ascending.
    pub zero_ns: Vec<u64>,
}

/// Machine-checkable proof that a certified search was exhaustive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionCertificate {
    pub p: u64,
    /// Residue count exhaustively evaluated; always equals `p`.
    pub residues_checked: u64,
    pub term_windows: Vec<TermWindow>,
}

impl ObstructionCertificate {
    /// Re-check every stored claim from scratch.
    pub fn verify(&self, poly: &IntPolynomial, spec: &ProductSpec) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidInput(format!("certificate invalid: {msg}")));
        if !arith::is_prime(self.p) {
            return fail(format!("{} is not prime", self.p));
        }
        if self.residues_checked != self.p {
            return fail("residue count does not cover the full ring".into());
        }
        if !roots_mod_p(poly, self.p).is_empty() {
            return fail(format!("P has a root mod {}", self.p));
        }
        if self.term_windows.len() != spec.arity() {
            return fail("window count does not match spec arity".into());
        }
        for (term, window) in spec.terms().iter().zip(&self.term_windows) {
            if term.multiplier() % self.p != window.multiplier_mod_p
                || window.multiplier_mod_p == 0
            {
                return fail("multiplier coprimality evidence is wrong".into());
            }
            if window.bound > 2 * self.p {
                return fail(format!("window bound {} exceeds 2p", window.bound));
            }
            match zero_valuation_bound(term, self.p) {
                ZeroValuationBound::Bound(b) if b == window.bound => {}
                other => {
                    return fail(format!(
                        "stored bound {} disagrees with recomputed {other:?}",
                        window.bound
                    ))
                }
            }
            let recomputed: Vec<u64> = (1..window.bound)
                .filter(|&n| term_valuation(term, n, self.p) == 0)
                .collect();
            if recomputed != window.zero_ns {
                return fail("zero-valuation window does not match".into());
            }
            for n in window.bound..=window.bound + 2 * self.p {
                if term_valuation(term, n, self.p) == 0 {
                    return fail(format!("v_p vanishes at n={n} beyond the bound"));
                }
            }
        }
        Ok(())
    }
}

/// One verified solution `(x, nvec)` with the common value of both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionRecord {
    pub x: BigInt,
    pub nvec: Vec<u64>,
    pub value: BigUint,
    /// Set when a filter could not fully vet the record (e.g. incomplete
    /// factorization under the k-free filter).
    pub flag: Option<String>,
}

impl SolutionRecord {
    /// Checked constructor: recomputes both sides and refuses mismatches.
    pub fn verified(
        poly: &IntPolynomial,
        spec: &ProductSpec,
        x: BigInt,
        nvec: Vec<u64>,
        bit_budget: u64,
    ) -> Result<Self> {
        let value = eval_product_budgeted(spec, &nvec, bit_budget)?;
        let px = poly.eval(&x);
        if px.is_negative() || px.magnitude() != &value {
            return Err(Error::InvalidInput(format!(
                "solution record failed re-verification at x={x}, nvec={nvec:?}"
            )));
        }
        Ok(SolutionRecord {
            x,
            nvec,
            value,
            flag: None,
        })
    }

    fn sort_key(&self) -> (Vec<u64>, BigInt) {
        (self.nvec.clone(), self.x.clone())
    }
}

/// Why a report may claim completeness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompletenessEvidence {
    Obstruction(ObstructionCertificate),
    PowerBound(PowerBoundRecord),
}

/// Effective enumeration bound for the perfect-power solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerBoundRecord {
    pub degree: u32,
    pub bstar: u64,
    /// True when the floor guard, not `16 * max A_i`, decided the bound.
    pub floor_guard_binding: bool,
}

#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    pub candidates_examined: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    /// Deduplicated, sorted by (nvec lexicographic, x).
    pub solutions: Vec<SolutionRecord>,
    pub complete: bool,
    pub evidence: Option<CompletenessEvidence>,
    pub stats: SearchStats,
}

/// Optional `K(x - shift) < k` restriction on reported solutions.
#[derive(Debug, Clone)]
pub struct KfreeFilter {
    pub shift: BigInt,
    pub k: u32,
    pub factor_budget: u64,
}

impl KfreeFilter {
    pub fn new(shift: BigInt, k: u32) -> Self {
        KfreeFilter {
            shift,
            k,
            factor_budget: DEFAULT_FACTOR_BUDGET,
        }
    }
}

/// Smallest obstruction prime `p <= search_limit`: empty root set mod `p` and
/// a finite zero-valuation window for every term.
pub fn find_obstruction_prime(
    poly: &IntPolynomial,
    spec: &ProductSpec,
    search_limit: u64,
) -> Result<ObstructionCertificate> {
    if poly.degree() < 2 {
        return Err(Error::PreconditionViolated(
            "obstruction search needs degree >= 2".into(),
        ));
    }
    let primes = arith::with_primes_upto(search_limit.max(2), |t| {
        t.primes()
            .iter()
            .take_while(|&&p| p <= search_limit)
            .copied()
            .collect::<Vec<u64>>()
    })?;
    'primes: for p in primes {
        if !roots_mod_p(poly, p).is_empty() {
            continue;
        }
        let mut windows = Vec::with_capacity(spec.arity());
        for term in spec.terms() {
            match zero_valuation_bound(term, p) {
                ZeroValuationBound::Bound(bound) => {
                    let zero_ns = (1..bound)
                        .filter(|&n| term_valuation(term, n, p) == 0)
                        .collect();
                    windows.push(TermWindow {
                        multiplier_mod_p: term.multiplier() % p,
                        bound,
                        zero_ns,
                    });
                }
                // A never-zero multiplier or an unbounded zero set (odd
                // double factorials at p = 2) cannot certify completeness.
                ZeroValuationBound::NeverZero | ZeroValuationBound::Unbounded => {
                    continue 'primes;
                }
            }
        }
        return Ok(ObstructionCertificate {
            p,
            residues_checked: p,
            term_windows: windows,
        });
    }
    Err(Error::CertificateNotFound {
        limit: search_limit,
    })
}

fn box_total(windows: &[Vec<u64>]) -> Result<u64> {
    let mut total: u128 = 1;
    for w in windows {
        total *= w.len() as u128;
        if total > BOX_LIMIT {
            return Err(Error::BudgetExceeded(format!(
                "enumeration box exceeds {BOX_LIMIT} candidates"
            )));
        }
    }
    Ok(total as u64)
}

/// Decode a mixed-radix index into an exponent vector. The first term is the
/// most significant digit, so index order equals nvec lexicographic order.
fn decode_nvec(windows: &[Vec<u64>], mut idx: u64) -> Vec<u64> {
    let mut nvec = vec![0u64; windows.len()];
    for i in (0..windows.len()).rev() {
        let len = windows[i].len() as u64;
        nvec[i] = windows[i][(idx % len) as usize];
        idx /= len;
    }
    nvec
}

/// Enumerate the box, solve `P(x) = product` exactly for every cell, and
/// return verified records in canonical order. Work units are disjoint and
/// pure, so the parallel fold is merged deterministically by the final sort.
fn solve_over_box(
    poly: &IntPolynomial,
    spec: &ProductSpec,
    windows: &[Vec<u64>],
    bit_budget: u64,
    prefilter_degree: Option<u32>,
) -> Result<(Vec<SolutionRecord>, u64)> {
    let total = box_total(windows)?;
    let chunks: Vec<Vec<SolutionRecord>> = (0..total)
        .into_par_iter()
        .map(|idx| -> Result<Vec<SolutionRecord>> {
            let nvec = decode_nvec(windows, idx);
            if let Some(d) = prefilter_degree {
                if !valuation_prefilter(spec, &nvec, d)? {
                    return Ok(Vec::new());
                }
            }
            let product = eval_product_budgeted(spec, &nvec, bit_budget)?;
            let target = BigInt::from(product);
            let mut records = Vec::new();
            for x in integer_solutions(poly, &target)? {
                records.push(SolutionRecord::verified(
                    poly,
                    spec,
                    x,
                    nvec.clone(),
                    bit_budget,
                )?);
            }
            Ok(records)
        })
        .collect::<Result<_>>()?;
    let mut solutions: Vec<SolutionRecord> = chunks.into_iter().flatten().collect();
    solutions.sort_by_key(SolutionRecord::sort_key);
    solutions.dedup();
    Ok((solutions, total))
}

/// Necessary condition for `x^d = product`: every prime valuation of the
/// product is a multiple of `d`. Checked for all primes `q <= max n_i`.
fn valuation_prefilter(spec: &ProductSpec, nvec: &[u64], d: u32) -> Result<bool> {
    let max_n = *nvec.iter().max().unwrap();
    arith::with_primes_upto(max_n.max(2), |t| {
        for &q in t.primes().iter().take_while(|&&q| q <= max_n) {
            let v: u64 = spec
                .terms()
                .iter()
                .zip(nvec)
                .map(|(term, &n)| term_valuation(term, n, q))
                .sum();
            if v % d as u64 != 0 {
                return false;
            }
        }
        true
    })
}

/// Certified complete solve via an obstruction prime.
pub fn solve_certified(
    poly: &IntPolynomial,
    spec: &ProductSpec,
    search_limit: u64,
) -> Result<SolveReport> {
    solve_certified_budgeted(poly, spec, search_limit, DEFAULT_BIT_BUDGET)
}

pub fn solve_certified_budgeted(
    poly: &IntPolynomial,
    spec: &ProductSpec,
    search_limit: u64,
    bit_budget: u64,
) -> Result<SolveReport> {
    let start = Instant::now();
    let cert = find_obstruction_prime(poly, spec, search_limit)?;
    // Soundness is re-established on every run, not trusted from the search.
    cert.verify(poly, spec)?;
    let windows: Vec<Vec<u64>> = cert
        .term_windows
        .iter()
        .map(|w| w.zero_ns.clone())
        .collect();
    let (solutions, candidates) = solve_over_box(poly, spec, &windows, bit_budget, None)?;
    Ok(SolveReport {
        solutions,
        complete: true,
        evidence: Some(CompletenessEvidence::Obstruction(cert)),
        stats: SearchStats {
            candidates_examined: candidates,
            elapsed: start.elapsed(),
        },
    })
}

/// Bounded (possibly incomplete) search over all `nvec` with entries
/// `<= nmax`, with an optional k-free filter on `x - shift`.
pub fn solve_bounded(
    poly: &IntPolynomial,
    spec: &ProductSpec,
    nmax: u64,
    kfree: Option<&KfreeFilter>,
) -> Result<SolveReport> {
    solve_bounded_budgeted(poly, spec, nmax, kfree, DEFAULT_BIT_BUDGET)
}

pub fn solve_bounded_budgeted(
    poly: &IntPolynomial,
    spec: &ProductSpec,
    nmax: u64,
    kfree: Option<&KfreeFilter>,
    bit_budget: u64,
) -> Result<SolveReport> {
    if nmax < 1 {
        return Err(Error::InvalidInput("nmax must be >= 1".into()));
    }
    let start = Instant::now();
    let range: Vec<u64> = (1..=nmax).collect();
    let windows = vec![range; spec.arity()];
    let (mut solutions, candidates) = solve_over_box(poly, spec, &windows, bit_budget, None)?;
    if let Some(filter) = kfree {
        solutions = apply_kfree_filter(solutions, filter)?;
    }
    Ok(SolveReport {
        solutions,
        complete: false,
        evidence: None,
        stats: SearchStats {
            candidates_examined: candidates,
            elapsed: start.elapsed(),
        },
    })
}

/// Keep records with `K(x - shift) < k`. A shifted value of 0 is never
/// k-free; an incomplete factorization keeps the record but flags it.
fn apply_kfree_filter(
    solutions: Vec<SolutionRecord>,
    filter: &KfreeFilter,
) -> Result<Vec<SolutionRecord>> {
    let mut kept = Vec::new();
    for mut record in solutions {
        let shifted = &record.x - &filter.shift;
        if shifted.is_zero() {
            continue;
        }
        match arith::factorize(shifted.magnitude(), filter.factor_budget) {
            Ok(f) => {
                if f.max_exponent() < filter.k {
                    kept.push(record);
                }
            }
            Err(Error::FactorizationIncomplete { budget, .. }) => {
                record.flag = Some(format!(
                    "k-free status unverified: factorization of x - {} incomplete at budget {budget}",
                    filter.shift
                ));
                kept.push(record);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(kept)
}

/// Complete solve of `x^d = product` for `d > r` via the effective bound
/// `B* = max(16 * max A_i, 8)`.
pub fn solve_perfect_power(d: u32, spec: &ProductSpec) -> Result<SolveReport> {
    solve_perfect_power_opts(d, spec, true, DEFAULT_BIT_BUDGET)
}

pub fn solve_perfect_power_opts(
    d: u32,
    spec: &ProductSpec,
    prefilter: bool,
    bit_budget: u64,
) -> Result<SolveReport> {
    if d < 1 {
        return Err(Error::InvalidInput("d must be >= 1".into()));
    }
    if (d as usize) <= spec.arity() {
        return Err(Error::PreconditionViolated(format!(
            "perfect-power solver needs d > r (got d = {d}, r = {})",
            spec.arity()
        )));
    }
    let start = Instant::now();
    let max_a = spec
        .terms()
        .iter()
        .map(|t| t.multiplier())
        .max()
        .expect("spec is nonempty");
    let bstar = (16 * max_a).max(POWER_BOUND_FLOOR);
    let record = PowerBoundRecord {
        degree: d,
        bstar,
        floor_guard_binding: POWER_BOUND_FLOOR > 16 * max_a,
    };

    let poly = IntPolynomial::monomial(d);
    let windows: Vec<Vec<u64>> = vec![(1..=bstar).collect(); spec.arity()];
    let total = box_total(&windows)?;
    let chunks: Vec<Vec<SolutionRecord>> = (0..total)
        .into_par_iter()
        .map(|idx| -> Result<Vec<SolutionRecord>> {
            let nvec = decode_nvec(&windows, idx);
            if prefilter && !valuation_prefilter(spec, &nvec, d)? {
                return Ok(Vec::new());
            }
            let product = eval_product_budgeted(spec, &nvec, bit_budget)?;
            let root = product.nth_root(d);
            if root.pow(d) != product {
                return Ok(Vec::new());
            }
            let mut records = vec![SolutionRecord::verified(
                &poly,
                spec,
                BigInt::from(root.clone()),
                nvec.clone(),
                bit_budget,
            )?];
            if d % 2 == 0 {
                records.insert(
                    0,
                    SolutionRecord::verified(&poly, spec, -BigInt::from(root), nvec, bit_budget)?,
                );
            }
            Ok(records)
        })
        .collect::<Result<_>>()?;
    let mut solutions: Vec<SolutionRecord> = chunks.into_iter().flatten().collect();
    solutions.sort_by_key(SolutionRecord::sort_key);
    solutions.dedup();
    Ok(SolveReport {
        solutions,
        complete: true,
        evidence: Some(CompletenessEvidence::PowerBound(record)),
        stats: SearchStats {
            candidates_examined: total,
            elapsed: start.elapsed(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequences::{ExponentMode, SequenceFamily, SequenceTerm};

    fn term(family: SequenceFamily, a: u64) -> SequenceTerm {
        SequenceTerm::with_default_mode(family, a).unwrap()
    }

    fn spec(terms: Vec<SequenceTerm>) -> ProductSpec {
        ProductSpec::new(terms).unwrap()
    }

    fn fact_spec(r: usize) -> ProductSpec {
        spec(vec![term(SequenceFamily::Factorial, 1); r])
    }

    fn sols(report: &SolveReport) -> Vec<(i64, Vec<u64>)> {
        report
            .solutions
            .iter()
            .map(|s| (i64::try_from(&s.x).unwrap(), s.nvec.clone()))
            .collect()
    }

    #[test]
    fn obstruction_prime_examples() {
        let plus_one = IntPolynomial::from_i64(&[1, 0, 1]);
        let cert = find_obstruction_prime(&plus_one, &fact_spec(1), 100).unwrap();
        assert_eq!(cert.p, 3);
        assert_eq!(cert.term_windows[0].zero_ns, vec![1, 2]);
        cert.verify(&plus_one, &fact_spec(1)).unwrap();

        let brocard = IntPolynomial::from_i64(&[-1, 0, 1]);
        assert!(matches!(
            find_obstruction_prime(&brocard, &fact_spec(1), 10_000),
            Err(Error::CertificateNotFound { limit: 10_000 })
        ));

        let with_a3 = spec(vec![term(SequenceFamily::Factorial, 3)]);
        let cert = find_obstruction_prime(&plus_one, &with_a3, 100).unwrap();
        assert_eq!(cert.p, 7);
    }

    #[test]
    fn obstruction_requires_degree_two() {
        let linear = IntPolynomial::from_i64(&[1, 1]);
        assert!(matches!(
            find_obstruction_prime(&linear, &fact_spec(1), 100),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let plus_one = IntPolynomial::from_i64(&[1, 0, 1]);
        let spec1 = fact_spec(1);
        let good = find_obstruction_prime(&plus_one, &spec1, 100).unwrap();

        let mut bad = good.clone();
        bad.term_windows[0].zero_ns = vec![1];
        assert!(bad.verify(&plus_one, &spec1).is_err());

        let mut bad = good.clone();
        bad.residues_checked = 2;
        assert!(bad.verify(&plus_one, &spec1).is_err());

        // A prime with roots must be rejected outright.
        let mut bad = good;
        bad.p = 5;
        assert!(bad.verify(&plus_one, &spec1).is_err());
    }

    #[test]
    fn certified_solve_single_factorial() {
        let plus_one = IntPolynomial::from_i64(&[1, 0, 1]);
        let report = solve_certified(&plus_one, &fact_spec(1), 100).unwrap();
        assert!(report.complete);
        assert_eq!(sols(&report), vec![(0, vec![1]), (-1, vec![2]), (1, vec![2])]);
    }

    #[test]
    fn certified_solve_two_factorials() {
        let plus_one = IntPolynomial::from_i64(&[1, 0, 1]);
        let report = solve_certified(&plus_one, &fact_spec(2), 100).unwrap();
        assert_eq!(
            sols(&report),
            vec![
                (0, vec![1, 1]),
                (-1, vec![1, 2]),
                (1, vec![1, 2]),
                (-1, vec![2, 1]),
                (1, vec![2, 1]),
            ]
        );
    }

    #[test]
    fn certified_solve_primorial() {
        // x^2 + 2 = n#: obstruction at p = 5, windows 1..=4, values 1,2,6,6.
        let plus_two = IntPolynomial::from_i64(&[2, 0, 1]);
        let prim = spec(vec![term(SequenceFamily::Primorial, 1)]);
        let report = solve_certified(&plus_two, &prim, 100).unwrap();
        match report.evidence {
            Some(CompletenessEvidence::Obstruction(ref c)) => {
                assert_eq!(c.p, 5);
                assert_eq!(c.term_windows[0].zero_ns, vec![1, 2, 3, 4]);
            }
            ref other => panic!("unexpected evidence {other:?}"),
        }
        // Values 1, 2, 6, 6: x^2+2 hits 2 at x = 0 and 6 at x = +/-2.
        assert_eq!(
            sols(&report),
            vec![(0, vec![2]), (-2, vec![3]), (2, vec![3]), (-2, vec![4]), (2, vec![4])]
        );
    }

    #[test]
    fn bounded_solve_brocard() {
        let brocard = IntPolynomial::from_i64(&[-1, 0, 1]);
        let report = solve_bounded(&brocard, &fact_spec(1), 12, None).unwrap();
        assert!(!report.complete);
        assert_eq!(
            sols(&report),
            vec![
                (-5, vec![4]),
                (5, vec![4]),
                (-11, vec![5]),
                (11, vec![5]),
                (-71, vec![7]),
                (71, vec![7]),
            ]
        );
        let empty = solve_bounded(&brocard, &fact_spec(1), 3, None).unwrap();
        assert!(empty.solutions.is_empty());
    }

    #[test]
    fn bounded_solve_primorial_square() {
        let square = IntPolynomial::monomial(2);
        let prim2 = spec(vec![
            term(SequenceFamily::Primorial, 1),
            term(SequenceFamily::Primorial, 1),
        ]);
        let report = solve_bounded(&square, &prim2, 10, None).unwrap();
        assert!(sols(&report).contains(&(210, vec![10, 10])));
    }

    #[test]
    fn kfree_filter_prunes_and_flags() {
        let brocard = IntPolynomial::from_i64(&[-1, 0, 1]);
        let filter = KfreeFilter::new(BigInt::from(1), 2);
        let report = solve_bounded(&brocard, &fact_spec(1), 12, Some(&filter)).unwrap();
        // x - 1 over {-71,-11,-5,5,11,71}: squarefree only for -5, 11, 71.
        assert_eq!(
            sols(&report),
            vec![(-5, vec![4]), (11, vec![5]), (71, vec![7])]
        );
        assert!(report.solutions.iter().all(|s| s.flag.is_none()));
    }

    #[test]
    fn perfect_power_rejects_small_degree() {
        assert!(matches!(
            solve_perfect_power(2, &fact_spec(2)),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn perfect_power_single_factorial_squares() {
        let report = solve_perfect_power(2, &fact_spec(1)).unwrap();
        assert!(report.complete);
        match report.evidence {
            Some(CompletenessEvidence::PowerBound(ref b)) => {
                assert_eq!(b.bstar, 16);
                assert!(!b.floor_guard_binding);
            }
            ref other => panic!("unexpected evidence {other:?}"),
        }
        assert_eq!(sols(&report), vec![(-1, vec![1]), (1, vec![1])]);
    }

    #[test]
    fn perfect_power_prefilter_is_transparent() {
        let with_pp = spec(vec![SequenceTerm::new(
            SequenceFamily::NthPrimePrimorial,
            2,
            ExponentMode::NthPrime,
        )
        .unwrap()]);
        for s in [fact_spec(2), with_pp] {
            let d = s.arity() as u32 + 1;
            let filtered = solve_perfect_power_opts(d, &s, true, DEFAULT_BIT_BUDGET).unwrap();
            let unfiltered = solve_perfect_power_opts(d, &s, false, DEFAULT_BIT_BUDGET).unwrap();
            assert_eq!(filtered.solutions, unfiltered.solutions);
        }
    }

    #[test]
    fn certified_agrees_with_bounded_on_max_window() {
        let plus_one = IntPolynomial::from_i64(&[1, 0, 1]);
        let dfact = spec(vec![term(SequenceFamily::DoubleFactorial, 1)]);
        let certified = solve_certified(&plus_one, &dfact, 1000).unwrap();
        let nmax = match certified.evidence {
            Some(CompletenessEvidence::Obstruction(ref c)) => {
                c.term_windows.iter().map(|w| w.bound).max().unwrap()
            }
            _ => unreachable!(),
        };
        let bounded = solve_bounded(&plus_one, &dfact, nmax, None).unwrap();
        assert_eq!(certified.solutions, bounded.solutions);
    }
}
