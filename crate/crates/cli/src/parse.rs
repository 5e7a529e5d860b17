//! Text-level parsing: polynomial expressions, product-spec term lists, and
//! small rational parameters.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use dioprod_core::explorer::PosRational;
use dioprod_core::poly::IntPolynomial;
use dioprod_core::sequences::{ExponentMode, ProductSpec, SequenceFamily, SequenceTerm};

/// Parse failure with the byte offset where it happened.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (at position {})", self.msg, self.pos)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

const MAX_DEGREE: usize = 1 << 16;

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner {
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<BigUint> {
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
            Some(s.parse().unwrap())
        }
    }
}

/// Parse `expr := sign? term (('+'|'-') term)*` with
/// `term := coeff | coeff? 'x' ('^' uint)?` into canonical coefficients.
pub fn parse_polynomial(text: &str) -> Result<IntPolynomial, ParseError> {
    let mut sc = Scanner::new(text);
    let mut coeffs: Vec<BigInt> = Vec::new();
    let mut add = |deg: usize, c: BigInt, pos: usize| -> Result<(), ParseError> {
        if deg > MAX_DEGREE {
            return err(pos, format!("exponent exceeds the {MAX_DEGREE} cap"));
        }
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, BigInt::zero());
        }
        coeffs[deg] += c;
        Ok(())
    };

    sc.skip_ws();
    if sc.peek().is_none() {
        return err(0, "empty polynomial");
    }
    let mut sign: BigInt = BigInt::one();
    if sc.eat(b'-') {
        sign = -sign;
    } else {
        sc.eat(b'+');
    }
    loop {
        sc.skip_ws();
        let term_pos = sc.pos;
        let coeff = sc.digits();
        sc.skip_ws();
        if sc.eat(b'x') {
            let magnitude = coeff.unwrap_or_else(BigUint::one);
            let degree = if sc.eat(b'^') {
                match sc.digits() {
                    Some(d) => match usize::try_from(&d) {
                        Ok(d) if d <= MAX_DEGREE => d,
                        _ => return err(sc.pos, format!("exponent exceeds the {MAX_DEGREE} cap")),
                    },
                    None => return err(sc.pos, "expected an exponent after '^'"),
                }
            } else {
                1
            };
            add(degree, &sign * BigInt::from(magnitude), term_pos)?;
        } else {
            match coeff {
                Some(c) => add(0, &sign * BigInt::from(c), term_pos)?,
                None => return err(sc.pos, "expected a coefficient or 'x'"),
            }
        }
        sc.skip_ws();
        match sc.peek() {
            None => break,
            Some(b'+') => {
                sc.pos += 1;
                sign = BigInt::one();
            }
            Some(b'-') => {
                sc.pos += 1;
                sign = -BigInt::one();
            }
            Some(c) => return err(sc.pos, format!("unexpected character '{}'", c as char)),
        }
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Canonical compact rendering; `parse_polynomial(print_polynomial(p)) == p`.
pub fn print_polynomial(poly: &IntPolynomial) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (deg, c) in poly.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c < &BigInt::zero();
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push(if negative { '-' } else { '+' });
        }
        let mag = c.magnitude();
        if deg == 0 {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push('x');
            if deg > 1 {
                out.push_str(&format!("^{deg}"));
            }
        }
    }
    out
}

/// Parse a comma-separated term list:
/// `family[:A=<int>][:exp=<linear|nth_prime>]` with families
/// factorial | dfact | primorial | pprimorial | lcm.
pub fn parse_terms(text: &str) -> Result<ProductSpec, ParseError> {
    let mut terms = Vec::new();
    let mut offset = 0usize;
    for part in text.split(',') {
        let part_start = offset;
        offset += part.len() + 1;
        let mut family: Option<SequenceFamily> = None;
        let mut multiplier: u64 = 1;
        let mut mode: Option<ExponentMode> = None;
        for (i, field) in part.split(':').enumerate() {
            let field = field.trim();
            if i == 0 {
                family = Some(match field {
                    "factorial" => SequenceFamily::Factorial,
                    "dfact" => SequenceFamily::DoubleFactorial,
                    "primorial" => SequenceFamily::Primorial,
                    "pprimorial" => SequenceFamily::NthPrimePrimorial,
                    "lcm" => SequenceFamily::Lcm,
                    other => {
                        return err(part_start, format!("unknown sequence family '{other}'"))
                    }
                });
            } else if let Some(v) = field.strip_prefix("A=") {
                multiplier = v
                    .parse()
                    .map_err(|_| ParseError {
                        pos: part_start,
                        msg: format!("invalid multiplier '{v}'"),
                    })?;
            } else if let Some(v) = field.strip_prefix("exp=") {
                mode = Some(match v {
                    "linear" => ExponentMode::Linear,
                    "nth_prime" => ExponentMode::NthPrime,
                    other => {
                        return err(part_start, format!("unknown exponent mode '{other}'"))
                    }
                });
            } else {
                return err(part_start, format!("unknown term field '{field}'"));
            }
        }
        let family = family.unwrap();
        let term = match mode {
            Some(mode) => SequenceTerm::new(family, multiplier, mode),
            None => SequenceTerm::with_default_mode(family, multiplier),
        }
        .map_err(|e| ParseError {
            pos: part_start,
            msg: e.to_string(),
        })?;
        terms.push(term);
    }
    ProductSpec::new(terms).map_err(|e| ParseError {
        pos: 0,
        msg: e.to_string(),
    })
}

/// Canonical rendering of a term list in the same mini-syntax.
pub fn print_terms(spec: &ProductSpec) -> String {
    spec.terms()
        .iter()
        .map(|t| {
            let mut s = format!("{}:A={}", t.family().name(), t.multiplier());
            let default_mode = if t.family() == SequenceFamily::NthPrimePrimorial {
                ExponentMode::NthPrime
            } else {
                ExponentMode::Linear
            };
            if t.exponent_mode() != default_mode {
                s.push_str(&format!(":exp={}", t.exponent_mode().name()));
            }
            s
        })
        .collect::<Vec<_>>()
        .join(",")
}

/// Parse a positive rational given as `p/q`, a decimal like `0.1`, or an
/// integer.
pub fn parse_pos_rational(text: &str) -> Result<PosRational, ParseError> {
    let bad = |msg: String| ParseError { pos: 0, msg };
    let make = |num: u64, den: u64| {
        PosRational::new(num, den).map_err(|e| bad(format!("invalid rational '{text}': {e}")))
    };
    if let Some((num, den)) = text.split_once('/') {
        let num: u64 = num.trim().parse().map_err(|_| bad(format!("invalid numerator '{num}'")))?;
        let den: u64 = den.trim().parse().map_err(|_| bad(format!("invalid denominator '{den}'")))?;
        return make(num, den);
    }
    if let Some((int_part, frac_part)) = text.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(format!("invalid decimal '{text}'")));
        }
        let int: u64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad(format!("invalid decimal '{text}'")))?
        };
        if frac_part.len() > 18 {
            return Err(bad("too many decimal digits".into()));
        }
        let den = 10u64.pow(frac_part.len() as u32);
        let frac: u64 = frac_part.parse().unwrap();
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac))
            .ok_or_else(|| bad("decimal overflows".into()))?;
        return make(num, den);
    }
    let n: u64 = text.trim().parse().map_err(|_| bad(format!("invalid rational '{text}'")))?;
    make(n, 1)
}

/// Parse a comma-separated list of signed big integers.
pub fn parse_bigint_list(text: &str) -> Result<Vec<BigInt>, ParseError> {
    text.split(',')
        .map(|s| {
            s.trim().parse().map_err(|_| ParseError {
                pos: 0,
                msg: format!("invalid integer '{s}'"),
            })
        })
        .collect()
}

/// Parse a comma-separated list of u64s.
pub fn parse_u64_list(text: &str) -> Result<Vec<u64>, ParseError> {
    text.split(',')
        .map(|s| {
            s.trim().parse().map_err(|_| ParseError {
                pos: 0,
                msg: format!("invalid integer '{s}'"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(text: &str) -> Vec<i64> {
        parse_polynomial(text)
            .unwrap()
            .coeffs()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn polynomial_examples() {
        assert_eq!(coeffs("x^2 - 1"), vec![-1, 0, 1]);
        assert_eq!(coeffs("3x^4+2x-7"), vec![-7, 2, 0, 0, 3]);
        assert_eq!(coeffs("x^2 + x^2"), vec![0, 0, 2]);
        assert_eq!(coeffs("-x^3+5"), vec![5, 0, 0, -1]);
        assert_eq!(coeffs("42"), vec![42]);
        assert_eq!(coeffs("x"), vec![0, 1]);
        assert!(parse_polynomial("0").unwrap().is_zero());
        assert_eq!(coeffs("2x - x"), vec![0, 1]);
    }

    #[test]
    fn polynomial_errors_carry_positions() {
        assert_eq!(parse_polynomial("x^").unwrap_err().pos, 2);
        assert!(parse_polynomial("").is_err());
        assert!(parse_polynomial("x + * 3").is_err());
        assert!(parse_polynomial("x^999999999").is_err());
        assert!(parse_polynomial("3y").is_err());
    }

    #[test]
    fn polynomial_print_round_trip() {
        for text in ["x^2-1", "3x^4+2x-7", "-x^3+5", "0", "42", "x", "-x"] {
            let p = parse_polynomial(text).unwrap();
            assert_eq!(parse_polynomial(&print_polynomial(&p)).unwrap(), p);
        }
        assert_eq!(print_polynomial(&parse_polynomial("x^2 - 1").unwrap()), "x^2-1");
    }

    #[test]
    fn terms_examples() {
        let spec = parse_terms("factorial:A=1,dfact:A=2").unwrap();
        assert_eq!(spec.arity(), 2);
        assert_eq!(spec.terms()[0].family(), SequenceFamily::Factorial);
        assert_eq!(spec.terms()[1].multiplier(), 2);

        let spec = parse_terms("pprimorial:A=3:exp=linear").unwrap();
        assert_eq!(spec.terms()[0].exponent_mode(), ExponentMode::Linear);
        // Default mode for pprimorial is nth_prime.
        let spec = parse_terms("pprimorial:A=3").unwrap();
        assert_eq!(spec.terms()[0].exponent_mode(), ExponentMode::NthPrime);
        // Bare family name defaults A to 1.
        let spec = parse_terms("lcm").unwrap();
        assert_eq!(spec.terms()[0].multiplier(), 1);

        assert!(parse_terms("factorial:A=0").is_err());
        assert!(parse_terms("factorial:exp=nth_prime").is_err());
        assert!(parse_terms("frobnicate").is_err());
    }

    #[test]
    fn terms_print_round_trip() {
        for text in [
            "factorial:A=1",
            "factorial:A=2,dfact:A=1",
            "pprimorial:A=3:exp=linear",
            "pprimorial:A=3",
        ] {
            let spec = parse_terms(text).unwrap();
            assert_eq!(parse_terms(&print_terms(&spec)).unwrap(), spec);
        }
    }

    #[test]
    fn rational_forms() {
        let r = parse_pos_rational("0.1").unwrap();
        assert_eq!((r.num, r.den), (1, 10));
        let r = parse_pos_rational("1/10").unwrap();
        assert_eq!((r.num, r.den), (1, 10));
        let r = parse_pos_rational("2").unwrap();
        assert_eq!((r.num, r.den), (2, 1));
        let r = parse_pos_rational("0.05").unwrap();
        assert_eq!((r.num, r.den), (1, 20));
        assert!(parse_pos_rational("0").is_err());
        assert!(parse_pos_rational("x").is_err());
        assert!(parse_pos_rational("1/0").is_err());
    }

    #[test]
    fn list_parsers() {
        assert_eq!(
            parse_bigint_list("1,35,-36").unwrap(),
            vec![BigInt::from(1), BigInt::from(35), BigInt::from(-36)]
        );
        assert_eq!(parse_u64_list("2,1,2,1,1").unwrap(), vec![2, 1, 2, 1, 1]);
        assert!(parse_u64_list("2,x").is_err());
    }
}
