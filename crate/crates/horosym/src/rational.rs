//! Thin helpers around `BigRational`: construction, parsing of `"p/q"`
//! strings, and lossy conversion to `f64` for the numerical layer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::str::FromStr;

/// Exact rational scalar used throughout the exact layer.
pub type Rat = BigRational;

/// `p/q` from machine integers.
pub fn rat(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer as a rational.
pub fn rint(p: i64) -> Rat {
    BigRational::from(BigInt::from(p))
}

/// Parse `"p"`, `"-p"`, or `"p/q"`.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    match s.split_once('/') {
        None => BigInt::from_str(s)
            .map(BigRational::from)
            .map_err(|e| format!("bad integer {s:?}: {e}")),
        Some((num, den)) => {
            let n = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator: {e}"))?;
            let d = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator: {e}"))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(n, d))
        }
    }
}

/// Render in lowest terms as `p` or `p/q`.
pub fn fmt_rat(x: &Rat) -> String {
    if x.denom() == &BigInt::from(1) {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Best-effort conversion to `f64` (falls back to a scaled quotient for
/// numerators/denominators too large for direct conversion).
pub fn rat_to_f64(x: &Rat) -> f64 {
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // shift both parts down by a common power of two
    let bits = x.numer().bits().max(x.denom().bits());
    let shift = bits.saturating_sub(900);
    let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Exact sign as -1, 0, or 1.
pub fn sign(x: &Rat) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["3", "-7", "112/19", "-5/3"] {
            let x = parse_rat(s).unwrap();
            assert_eq!(fmt_rat(&x), s);
        }
        assert_eq!(fmt_rat(&parse_rat("4/2").unwrap()), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(rat_to_f64(&rat(1, 4)), 0.25);
        assert!((rat_to_f64(&rat(112, 19)) - 112.0 / 19.0).abs() < 1e-15);
    }
}
