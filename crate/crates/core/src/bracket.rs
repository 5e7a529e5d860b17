//! Certified rational enclosures for the transcendental quantities the crate
//! compares against: natural logarithms and integer powers of e.
//!
//! Every inequality that feeds a pass/fail verdict is decided by comparing
//! exact rationals against an enclosure `[lo, hi]` that provably contains the
//! true value. `ln` enclosures come from the atanh series
//! `ln m = 2*sum z^(2j+1)/(2j+1)` with `z = (m-1)/(m+1)` and a geometric tail
//! bound; `e` comes from the Taylor series `sum 1/k!` with tail `< 2/(K+1)!`.
//! No floating point is involved anywhere in this module.

use std::cmp::Ordering;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

type Rat = Ratio<BigInt>;

/// Closed rational interval guaranteed to contain the (irrational) value it
/// stands for.
#[derive(Debug, Clone, PartialEq)]
pub struct Enclosure {
    pub lo: Rat,
    pub hi: Rat,
}

impl Enclosure {
    pub fn point(r: Rat) -> Self {
        Enclosure { lo: r.clone(), hi: r }
    }

    pub fn zero() -> Self {
        Enclosure::point(Rat::zero())
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    /// Scale by a nonnegative integer.
    pub fn scale(&self, k: impl Into<BigInt>) -> Enclosure {
        let k = Rat::from_integer(k.into());
        debug_assert!(!k.is_negative());
        Enclosure {
            lo: &self.lo * &k,
            hi: &self.hi * &k,
        }
    }

    pub fn scale_big(&self, k: &BigUint) -> Enclosure {
        let k = Rat::from_integer(BigInt::from(k.clone()));
        Enclosure {
            lo: &self.lo * &k,
            hi: &self.hi * &k,
        }
    }

    /// `Some(true)` iff the enclosed value is certainly greater than `other`'s,
    /// `Some(false)` iff certainly not greater, `None` if the enclosures
    /// overlap and the comparison is undecided at this precision.
    pub fn definitely_gt(&self, other: &Enclosure) -> Option<bool> {
        if self.lo > other.hi {
            Some(true)
        } else if self.hi <= other.lo {
            Some(false)
        } else {
            None
        }
    }

    /// Decide how the exact rational `r` compares to the enclosed value.
    pub fn compare_rat(&self, r: &Rat) -> Option<Ordering> {
        if r < &self.lo {
            Some(Ordering::Less)
        } else if r > &self.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

fn rat(n: i64, d: i64) -> Rat {
    Ratio::new(BigInt::from(n), BigInt::from(d))
}

/// atanh-series enclosure of `ln(num/den)` for `num/den` in `[1, 2]`.
/// `tail_bound` of the truncated series is added to the upper endpoint.
fn ln_mantissa(num: &BigInt, den: &BigInt, prec_bits: u32) -> Enclosure {
    debug_assert!(num >= den && num <= &(den * BigInt::from(2)));
    if num == den {
        return Enclosure::zero();
    }
    let z = Ratio::new(num - den, num + den); // in (0, 1/3]
    let z2 = &z * &z;
    let target: Rat = Ratio::new(BigInt::one(), BigInt::one() << prec_bits as usize);

    let mut sum = Rat::zero();
    let mut power = z.clone(); // z^(2j+1)
    let mut j: u64 = 0;
    loop {
        sum += &power / Rat::from_integer(BigInt::from(2 * j + 1));
        // Tail after term j is bounded by the geometric series starting at the
        // next power: z^(2j+3) / ((2j+3)(1 - z^2)).
        let next_power = &power * &z2;
        let tail = &next_power * rat(2, 1)
            / (Rat::from_integer(BigInt::from(2 * j + 3)) * (Rat::one() - z2.clone()));
        if tail < target {
            let lo = &sum * rat(2, 1);
            let hi = &lo + tail;
            return Enclosure { lo, hi };
        }
        power = next_power;
        j += 1;
    }
}

static LN2_CACHE: RwLock<Option<(u32, Enclosure)>> = RwLock::new(None);

/// Enclosure of ln 2 with absolute width below `2^-prec_bits`.
pub fn ln2(prec_bits: u32) -> Enclosure {
    {
        let guard = LN2_CACHE.read().unwrap();
        if let Some((p, enc)) = guard.as_ref() {
            if *p >= prec_bits {
                return enc.clone();
            }
        }
    }
    let enc = ln_mantissa(&BigInt::from(2), &BigInt::one(), prec_bits);
    let mut guard = LN2_CACHE.write().unwrap();
    match guard.as_ref() {
        Some((p, _)) if *p >= prec_bits => guard.as_ref().unwrap().1.clone(),
        _ => {
            *guard = Some((prec_bits, enc.clone()));
            enc
        }
    }
}

/// Enclosure of `ln n` for a positive integer, width below roughly
/// `2^-prec_bits * (1 + log2 n)`.
pub fn ln_big(n: &BigUint, prec_bits: u32) -> Enclosure {
    assert!(!n.is_zero(), "ln of zero");
    if n.is_one() {
        return Enclosure::zero();
    }
    // n = 2^k * m with m in [1, 2): ln n = k ln2 + ln m.
    let k = n.bits() - 1;
    let num = BigInt::from(n.clone());
    let den = BigInt::one() << k as usize;
    let mantissa = ln_mantissa(&num, &den, prec_bits);
    ln2(prec_bits).scale(k).add(&mantissa)
}

pub fn ln_u64(n: u64, prec_bits: u32) -> Enclosure {
    ln_big(&BigUint::from(n), prec_bits)
}

/// Enclosure of `e` with Taylor tail below `2^-prec_bits`.
fn e_enclosure(prec_bits: u32) -> Enclosure {
    let target: Rat = Ratio::new(BigInt::one(), BigInt::one() << prec_bits as usize);
    let mut sum = Rat::one();
    let mut term = Rat::one(); // 1/k!
    let mut k: u64 = 1;
    loop {
        term = term / Rat::from_integer(BigInt::from(k));
        sum += &term;
        // Remaining tail < 2 * 1/(k+1)!.
        let tail = &term / Rat::from_integer(BigInt::from(k + 1)) * rat(2, 1);
        if tail < target {
            return Enclosure {
                lo: sum.clone(),
                hi: sum + tail,
            };
        }
        k += 1;
    }
}

/// Enclosure of `e^t` for a nonnegative integer exponent.
pub fn e_pow(t: u64, prec_bits: u32) -> Enclosure {
    if t == 0 {
        return Enclosure::point(Rat::one());
    }
    // Relative widths multiply by t under powering; pad the base precision.
    let pad = 64 - (t.leading_zeros() as u32).min(63);
    let base = e_enclosure(prec_bits + pad + 2);
    let t = u32::try_from(t).expect("e_pow exponent too large");
    let pow = |r: &Rat| Ratio::new(r.numer().pow(t), r.denom().pow(t));
    Enclosure {
        lo: pow(&base.lo),
        hi: pow(&base.hi),
    }
}

/// Certified comparison of `a * ln n` against the integer `b` (`n >= 2`,
/// `a >= 1`). Equality is impossible (`e^b` is irrational), so this always
/// terminates at some precision.
pub fn cmp_scaled_ln(a: u64, n: u64, b: u64) -> Ordering {
    assert!(n >= 2 && a >= 1);
    // Fast path: f64 with a generous safety margin around the verdict.
    let approx = a as f64 * (n as f64).ln();
    let margin = approx.abs() * 1e-9 + 1e-9;
    if approx - b as f64 > margin {
        return Ordering::Greater;
    }
    if (b as f64) - approx > margin {
        return Ordering::Less;
    }
    let target = Rat::from_integer(BigInt::from(b));
    let mut prec = 96;
    loop {
        let enc = ln_u64(n, prec).scale(a);
        if enc.lo > target {
            return Ordering::Greater;
        }
        if enc.hi < target {
            return Ordering::Less;
        }
        prec *= 2;
        assert!(prec <= 1 << 16, "cmp_scaled_ln: enclosure failed to separate");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn width(e: &Enclosure) -> f64 {
        (&e.hi - &e.lo).to_f64().unwrap()
    }

    #[test]
    fn ln2_matches_reference() {
        let enc = ln2(80);
        let lo = enc.lo.to_f64().unwrap();
        let hi = enc.hi.to_f64().unwrap();
        assert!(lo <= std::f64::consts::LN_2 && std::f64::consts::LN_2 <= hi);
        assert!(width(&enc) < 1e-20);
    }

    #[test]
    fn ln_of_integers_bracket_f64() {
        for n in [2u64, 3, 10, 720, 9_699_690, u64::MAX] {
            let enc = ln_u64(n, 64);
            let truth = (n as f64).ln();
            assert!(enc.lo.to_f64().unwrap() <= truth + 1e-12, "n={n}");
            assert!(enc.hi.to_f64().unwrap() >= truth - 1e-12, "n={n}");
        }
    }

    #[test]
    fn ln_one_is_exact_zero() {
        let enc = ln_big(&BigUint::one(), 64);
        assert!(enc.lo.is_zero() && enc.hi.is_zero());
    }

    #[test]
    fn e_pow_brackets_truth() {
        for t in [0u64, 1, 3, 25] {
            let enc = e_pow(t, 64);
            let truth = (t as f64).exp();
            assert!(enc.lo.to_f64().unwrap() <= truth * (1.0 + 1e-10));
            assert!(enc.hi.to_f64().unwrap() >= truth * (1.0 - 1e-10));
        }
        // e^0 must be the exact point 1 so that ties at 1 are decidable.
        let one = e_pow(0, 32);
        assert_eq!(one.lo, one.hi);
    }

    #[test]
    fn e_pow_stays_tight_at_large_exponents() {
        let enc = e_pow(1056, 32);
        let rel = (&enc.hi / &enc.lo - Rat::one()).to_f64().unwrap();
        assert!(rel < 1e-9, "relative width {rel}");
    }

    #[test]
    fn cmp_scaled_ln_decides_close_calls() {
        // 5*ln(11) = 11.989... vs 11 and 12: straddles the f64 margin path.
        assert_eq!(cmp_scaled_ln(5, 11, 11), Ordering::Greater);
        assert_eq!(cmp_scaled_ln(5, 11, 12), Ordering::Less);
        // a*ln(n) with n = e^b rounded: 72004899337 ~ e^25.
        assert_eq!(cmp_scaled_ln(1, 72_004_899_337, 25), Ordering::Less);
        assert_eq!(cmp_scaled_ln(1, 72_004_899_338, 25), Ordering::Greater);
    }
}
