//! Cross-module invariants: closed forms against brute-force oracles, the
//! classical inequality audits at desk scale, and randomized agreement
//! between the solver routes.

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dioprod_core::arith::{
    chebyshev_first_valid, factorize, factorize_u64, legendre_valuation, prime_in_interval,
    radical, sieve_primes, valuation, PrimeTable,
};
use dioprod_core::bracket::e_pow;
use dioprod_core::explorer::abc_szpiro_quality;
use dioprod_core::poly::{integer_solutions, roots_mod_p, IntPolynomial};
use dioprod_core::sequences::{
    eval_product, eval_term, term_radical, term_valuation, zero_valuation_bound, ExponentMode,
    ProductSpec, SequenceFamily, SequenceTerm, ZeroValuationBound,
};
use dioprod_core::solver::{solve_bounded, solve_certified, CompletenessEvidence};

fn term(family: SequenceFamily, a: u64) -> SequenceTerm {
    SequenceTerm::with_default_mode(family, a).unwrap()
}

const TEST_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

#[test]
fn legendre_matches_brute_force_valuation_of_factorials() {
    // v_p(n!) by Legendre's sum vs direct division of the computed factorial,
    // for all n <= 500 and primes p <= 50.
    let primes: Vec<u64> = (2..=50).filter(|&p| dioprod_core::arith::is_prime(p)).collect();
    let mut factorial = BigUint::one();
    for n in 1..=500u64 {
        factorial *= n;
        for &p in &primes {
            assert_eq!(
                legendre_valuation(n, p),
                valuation(&factorial, p).unwrap(),
                "n={n} p={p}"
            );
        }
    }
}

#[test]
fn legendre_respects_geometric_bound() {
    // v_p(n!) <= n/(p-1), compared exactly as v * (p-1) <= n.
    for n in 0..=500u64 {
        for p in [2u64, 3, 5, 7, 11, 13, 47] {
            assert!(legendre_valuation(n, p) * (p - 1) <= n, "n={n} p={p}");
        }
    }
}

#[test]
fn radical_divides_and_is_squarefree() {
    for x in 1..=100_000u64 {
        let f = factorize_u64(x);
        let rad = radical(&f);
        let rad64 = u64::try_from(&rad).unwrap();
        assert_eq!(x % rad64, 0, "radical must divide x={x}");
        // Squarefree: no prime square divides the radical.
        let rf = factorize_u64(rad64);
        assert!(rf.entries().iter().all(|&(_, e)| e == 1), "x={x}");
        // Same support.
        assert_eq!(
            rf.entries().iter().map(|&(p, _)| p).collect::<Vec<_>>(),
            f.entries().iter().map(|&(p, _)| p).collect::<Vec<_>>(),
            "x={x}"
        );
    }
}

#[test]
fn chebyshev_bounds_hold_from_11() {
    let table = sieve_primes(100_000).unwrap();
    // The two-sided bound n/ln n <= pi(n) <= 1.5 n/ln n first holds at 11
    // within the tested range (the lower bound fails on 2..=10).
    assert_eq!(chebyshev_first_valid(&table, 2, 100_000), Some(11));
}

#[test]
fn bertrand_interval_always_contains_a_prime() {
    // A prime strictly inside (n, 2n) exists for 2 <= n <= 10^5. (At n = 1
    // the open interval (1, 2) contains no integer at all, so the check
    // starts at 2; closed-end callers adjust by one.)
    let table = PrimeTable::sieve(200_001).unwrap();
    for n in 2..=100_000u64 {
        assert!(
            table.prime_in_interval(n, 2 * n).unwrap().is_some(),
            "no prime in ({n}, {})",
            2 * n
        );
    }
    assert_eq!(prime_in_interval(1, 3).unwrap(), Some(2));
}

#[test]
fn closed_form_valuations_and_radicals_match_oracles() {
    for family in SequenceFamily::ALL {
        for a in [1u64, 2, 6] {
            let t = term(family, a);
            for n in 1..=60u64 {
                let value = eval_term(&t, n).unwrap();
                for &p in &TEST_PRIMES {
                    assert_eq!(
                        term_valuation(&t, n, p),
                        valuation(&value, p).unwrap(),
                        "family={family:?} A={a} n={n} p={p}"
                    );
                }
                let f = factorize(&value, 300).unwrap();
                assert_eq!(
                    term_radical(&t, n),
                    radical(&f),
                    "family={family:?} A={a} n={n}"
                );
            }
        }
    }
}

#[test]
fn nth_prime_exponent_mode_matches_oracle() {
    let t = SequenceTerm::new(SequenceFamily::NthPrimePrimorial, 6, ExponentMode::NthPrime)
        .unwrap();
    for n in 1..=40u64 {
        let value = eval_term(&t, n).unwrap();
        for &p in &TEST_PRIMES {
            assert_eq!(
                term_valuation(&t, n, p),
                valuation(&value, p).unwrap(),
                "n={n} p={p}"
            );
        }
    }
}

#[test]
fn divisibility_ladder() {
    use SequenceFamily::*;
    for family in [Factorial, Primorial, NthPrimePrimorial, Lcm] {
        let t = term(family, 1);
        let mut prev = eval_term(&t, 1).unwrap();
        for n in 2..=200u64 {
            let next = eval_term(&t, n).unwrap();
            assert!((&next % &prev).is_zero(), "family={family:?} n={n}");
            prev = next;
        }
    }
    // Double factorials divide within their parity class.
    let t = term(DoubleFactorial, 1);
    for start in [1u64, 2] {
        let mut prev = eval_term(&t, start).unwrap();
        let mut n = start + 2;
        while n <= 200 {
            let next = eval_term(&t, n).unwrap();
            assert!((&next % &prev).is_zero(), "n={n}");
            prev = next;
            n += 2;
        }
    }
}

#[test]
fn factorial_radical_equals_primorial() {
    // N(n!) = n# for 2 <= n <= 300, via the closed-form support route.
    let fact = term(SequenceFamily::Factorial, 1);
    let prim = term(SequenceFamily::Primorial, 1);
    for n in 2..=300u64 {
        assert_eq!(term_radical(&fact, n), eval_term(&prim, n).unwrap(), "n={n}");
    }
}

#[test]
fn radical_growth_bounds() {
    // N(A^n n!) <= N(A) 4^n (same for n!!), N(A^n n#) <= N(A) n#,
    // N(A^n lcm) <= N(A) n#, plus n# <= 4^n itself; exact integers, n <= 200.
    let four = BigUint::from(4u32);
    for a in [1u64, 2, 12] {
        let na = radical(&factorize_u64(a));
        for n in 1..=200u64 {
            let pow4 = four.pow(n as u32);
            let primorial = eval_term(&term(SequenceFamily::Primorial, 1), n).unwrap();
            assert!(primorial <= pow4, "n# > 4^n at {n}");
            assert!(
                term_radical(&term(SequenceFamily::Factorial, a), n) <= &na * &pow4,
                "factorial A={a} n={n}"
            );
            assert!(
                term_radical(&term(SequenceFamily::DoubleFactorial, a), n) <= &na * &pow4,
                "dfact A={a} n={n}"
            );
            assert!(
                term_radical(&term(SequenceFamily::Primorial, a), n) <= &na * &primorial,
                "primorial A={a} n={n}"
            );
            assert!(
                term_radical(&term(SequenceFamily::Lcm, a), n) <= &na * &primorial,
                "lcm A={a} n={n}"
            );
        }
    }
}

#[test]
fn zero_valuation_bounds_are_tight() {
    for family in SequenceFamily::ALL {
        for a in [1u64, 2, 6] {
            let t = term(family, a);
            for &p in &TEST_PRIMES {
                match zero_valuation_bound(&t, p) {
                    ZeroValuationBound::NeverZero => {
                        assert_eq!(a % p, 0);
                        for n in 1..=50 {
                            assert!(term_valuation(&t, n, p) >= 1, "{family:?} A={a} p={p} n={n}");
                        }
                    }
                    ZeroValuationBound::Bound(b) => {
                        assert!(b <= 2 * p, "{family:?} A={a} p={p}: bound {b}");
                        for n in b..=b + 2 * p {
                            assert!(term_valuation(&t, n, p) >= 1, "{family:?} A={a} p={p} n={n}");
                        }
                        if b > 1 {
                            assert!(
                                (1..b).any(|n| term_valuation(&t, n, p) == 0),
                                "{family:?} A={a} p={p}: no zero below {b}"
                            );
                        }
                    }
                    ZeroValuationBound::Unbounded => {
                        assert_eq!((family, p), (SequenceFamily::DoubleFactorial, 2));
                        // Odd double factorials are odd: zeros keep appearing.
                        for m in 0..20 {
                            assert_eq!(term_valuation(&t, 2 * m + 1, 2), 0);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn stirling_sandwich() {
    // (n/e)^n <= n! <= n^n for n <= 200, the left side certified via the
    // rational lower bracket of e^n.
    let mut factorial = BigUint::one();
    for n in 1..=200u64 {
        factorial *= n;
        let n_pow_n = BigUint::from(n).pow(n as u32);
        assert!(factorial <= n_pow_n, "n={n}");
        let rhs = e_pow(n, 96).scale_big(&factorial);
        assert!(
            Ratio::from_integer(BigInt::from(n_pow_n)) <= rhs.lo,
            "n^n > n! e^n at n={n}"
        );
    }
}

#[test]
fn double_factorial_stirling_lower_bound() {
    // n!! >= (n/e)^ceil(n/2): the growth floor used by the k-free bound.
    let dfact = term(SequenceFamily::DoubleFactorial, 1);
    for n in 1..=300u64 {
        let value = eval_term(&dfact, n).unwrap();
        let m = n.div_ceil(2);
        let lhs = Ratio::from_integer(BigInt::from(BigUint::from(n).pow(m as u32)));
        let rhs = e_pow(m, 96).scale_big(&value);
        assert!(lhs <= rhs.lo, "n={n}");
    }
}

#[test]
fn brocard_solutions_yield_coprime_triples() {
    // Each bounded Brocard solution x (odd) gives the triple
    // (1, (x-1)/2, (x+1)/2), which must pass the coprimality gate and have
    // the radical of the full product.
    let brocard = IntPolynomial::from_i64(&[-1, 0, 1]);
    let spec = ProductSpec::new(vec![term(SequenceFamily::Factorial, 1)]).unwrap();
    let report = solve_bounded(&brocard, &spec, 12, None).unwrap();
    let positive: Vec<BigInt> = report
        .solutions
        .iter()
        .filter(|s| s.x > BigInt::from(0))
        .map(|s| s.x.clone())
        .collect();
    assert_eq!(positive.len(), 3);
    for x in positive {
        let b = (&x - 1) / 2;
        let c = (&x + 1) / 2;
        let record = abc_szpiro_quality(&BigInt::one(), &b, &c, 1 << 20).unwrap();
        let product = (&b * &c).magnitude().clone();
        let expected = radical(&factorize(&product, 1 << 20).unwrap());
        assert_eq!(record.radical_abc, expected);
        assert!(record.szpiro_ratio >= 1.0);
    }
}

#[test]
fn certified_and_bounded_routes_agree_on_random_instances() {
    // 20 randomized (P, spec) instances that admit certificates: the
    // certified solution set must equal the bounded set at
    // nmax = max window bound, and the certificate must re-verify.
    let mut rng = ChaCha8Rng::seed_from_u64(0xD10F);
    let families = [
        SequenceFamily::Factorial,
        SequenceFamily::DoubleFactorial,
        SequenceFamily::Primorial,
        SequenceFamily::NthPrimePrimorial,
        SequenceFamily::Lcm,
    ];
    let mut found = 0;
    let mut attempts = 0;
    while found < 20 {
        attempts += 1;
        assert!(attempts < 3000, "instance generation stalled");
        let degree = rng.gen_range(2..=3);
        let mut coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-6..=6)).collect();
        if coeffs[degree] == 0 {
            coeffs[degree] = 1;
        }
        let poly = IntPolynomial::from_i64(&coeffs);
        let arity = rng.gen_range(1..=2);
        let terms: Vec<SequenceTerm> = (0..arity)
            .map(|_| term(families[rng.gen_range(0..families.len())], rng.gen_range(1..=4)))
            .collect();
        let spec = ProductSpec::new(terms).unwrap();

        let certified = match solve_certified(&poly, &spec, 31) {
            Ok(report) => report,
            Err(_) => continue, // no small obstruction prime; draw again
        };
        let cert = match &certified.evidence {
            Some(CompletenessEvidence::Obstruction(c)) => c.clone(),
            other => panic!("unexpected evidence {other:?}"),
        };
        cert.verify(&poly, &spec).unwrap();
        let nmax = cert.term_windows.iter().map(|w| w.bound).max().unwrap();
        let bounded = solve_bounded(&poly, &spec, nmax.max(1), None).unwrap();
        assert_eq!(
            certified.solutions, bounded.solutions,
            "instance coeffs={coeffs:?} spec={spec:?} p={}",
            cert.p
        );
        assert!(certified.complete && !bounded.complete);
        found += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integer_solutions_match_brute_force(
        coeffs in proptest::collection::vec(-20i64..=20, 3..=5),
        m in -1_000_000i64..=1_000_000,
    ) {
        let mut coeffs = coeffs;
        let d = coeffs.len() - 1;
        if coeffs[d] == 0 {
            coeffs[d] = 1;
        }
        let poly = IntPolynomial::from_i64(&coeffs);
        prop_assume!(poly.degree() >= 2);
        let target = BigInt::from(m);
        let got = integer_solutions(&poly, &target).unwrap();
        // Oracle: brute force over |x| <= 10^4. With degree >= 2, |lead| >= 1
        // and |coeff| <= 20, |P(x)| > 10^6 + lower-order slack beyond 10^4,
        // so no solutions exist outside the scan.
        let mut expected = Vec::new();
        for x in -10_000i64..=10_000 {
            if poly.eval(&BigInt::from(x)) == target {
                expected.push(BigInt::from(x));
            }
        }
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn roots_mod_p_matches_pointwise_evaluation(
        coeffs in proptest::collection::vec(-50i64..=50, 1..=6),
        p_idx in 0usize..12,
    ) {
        let p = TEST_PRIMES[p_idx];
        let poly = IntPolynomial::from_i64(&coeffs);
        let roots = roots_mod_p(&poly, p);
        for x in 0..p {
            let direct = poly.eval(&BigInt::from(x));
            let is_root = (direct % BigInt::from(p)) == BigInt::from(0);
            prop_assert_eq!(roots.contains(&x), is_root, "x={} p={}", x, p);
        }
    }

    #[test]
    fn eval_mod_p_depends_only_on_residue(
        coeffs in proptest::collection::vec(-50i64..=50, 1..=6),
        x in -1000i64..=1000,
        k in -5i64..=5,
        p_idx in 0usize..12,
    ) {
        let p = TEST_PRIMES[p_idx] as i64;
        let poly = IntPolynomial::from_i64(&coeffs);
        let a = poly.eval(&BigInt::from(x));
        let b = poly.eval(&BigInt::from(x + k * p));
        let pb = BigInt::from(p);
        prop_assert_eq!(((a - b) % pb), BigInt::from(0));
    }

    #[test]
    fn product_valuation_matches_direct(
        n1 in 1u64..=30,
        n2 in 1u64..=30,
        p_idx in 0usize..6,
    ) {
        let p = TEST_PRIMES[p_idx];
        let spec = ProductSpec::new(vec![
            term(SequenceFamily::Factorial, 2),
            term(SequenceFamily::Lcm, 1),
        ]).unwrap();
        let nvec = [n1, n2];
        let value = eval_product(&spec, &nvec).unwrap();
        let direct = valuation(&value, p).unwrap();
        prop_assert_eq!(
            dioprod_core::sequences::product_valuation(&spec, &nvec, p).unwrap(),
            direct
        );
    }
}
