//! Exact rational coefficients and their `p/q` text form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Coeff = BigRational;

pub fn int(v: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(v))
}

pub fn frac(p: i64, q: i64) -> Coeff {
    Coeff::new(BigInt::from(p), BigInt::from(q))
}

/// `(-1)^k`
pub fn sign_pow(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, v| acc * BigInt::from(v))
}

/// Always `p/q` with `q > 0` and `gcd(p, q) = 1`, including integers (`2/1`).
pub fn to_pq(c: &Coeff) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Integers bare, everything else `p/q`.
pub fn to_short(c: &Coeff) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        to_pq(c)
    }
}

pub fn parse(s: &str) -> Result<Coeff> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Coeff::new(p, q))
        }
        None => Ok(Coeff::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Renders `c` in front of a (non-empty) monomial: `""`, `"-"`, `"3/2·"`.
pub(crate) fn prefix_for_monomial(c: &Coeff) -> String {
    if c.is_one() {
        String::new()
    } else if (-c).is_one() {
        "-".to_string()
    } else {
        format!("{}·", to_short(c))
    }
}

/// Joins signed term renderings into `a + b - c`.
pub(crate) fn join_terms(terms: Vec<(bool, String)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (negative, body)) in terms.into_iter().enumerate() {
        match (idx, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    out
}

/// Splits `c` into a sign flag and the rendering of `|c|` as a monomial prefix.
pub(crate) fn split_sign(c: &Coeff) -> (bool, Coeff) {
    (c.is_negative(), c.abs())
}

/// Splits `a - b + c` at top-level signs (outside brackets, not after `/`).
pub(crate) fn split_signed_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut negative = false;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '[' => {
                depth += 1;
                cur.push(ch);
            }
            ']' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' | '−' if depth == 0 && !cur.trim().ends_with('/') => {
                if !cur.trim().is_empty() {
                    out.push((negative, cur.trim().to_string()));
                    cur.clear();
                    negative = false;
                }
                if ch != '+' {
                    negative = !negative;
                }
            }
            _ => cur.push(ch),
        }
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("dangling sign in {s:?}")));
    }
    out.push((negative, cur.trim().to_string()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_is_reduced_with_positive_denominator() {
        assert_eq!(to_pq(&frac(4, -6)), "-2/3");
        assert_eq!(to_pq(&int(2)), "2/1");
        assert_eq!(to_short(&int(-5)), "-5");
        assert_eq!(parse(" -2/3 ").unwrap(), frac(-2, 3));
        assert_eq!(parse("7").unwrap(), int(7));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }
}
