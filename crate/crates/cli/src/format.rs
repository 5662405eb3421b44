//! Deterministic, locale-free number formatting for CSV output.

use liouville::Rational;
use num_bigint::{BigInt, Sign};
use num_traits::{pow, Signed, Zero};

/// Significant digits used for trajectory tables.
pub const SIG_DIGITS: usize = 17;

/// Shortest round-trip form, always with a decimal point or exponent (`1.0`, `0.1`).
pub fn short(v: f64) -> String {
    format!("{v:?}")
}

/// `d.dddddddddddddddde<exp>`, the same layout as `{:.16e}`.
pub fn sci(v: f64) -> String {
    format!("{:.*e}", SIG_DIGITS - 1, v)
}

/// Exact rational rounded (half away from zero) to 17 significant digits, laid
/// out like [`sci`].
pub fn sci_rational(r: &Rational) -> String {
    if r.is_zero() {
        return sci(0.0);
    }
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();
    let digits = SIG_DIGITS as i64;
    let ten = BigInt::from(10);
    let lower = pow(ten.clone(), SIG_DIGITS - 1);
    let upper = pow(ten.clone(), SIG_DIGITS);

    // initial guess for floor(log10 |r|) from bit lengths
    let mut exp = ((num.bits() as f64 - den.bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let mantissa = loop {
        let shift = digits - 1 - exp;
        let (n, d) = if shift >= 0 {
            (&num * pow(ten.clone(), shift as usize), den.clone())
        } else {
            (num.clone(), &den * pow(ten.clone(), (-shift) as usize))
        };
        // round half away from zero
        let m: BigInt = (n * 2 + &d) / (d * 2);
        if m < lower {
            exp -= 1;
        } else if m >= upper {
            exp += 1;
        } else {
            break m;
        }
    };
    let s = mantissa.to_str_radix(10);
    debug_assert_eq!(mantissa.sign(), Sign::Plus);
    format!("{}{}.{}e{}", if neg { "-" } else { "" }, &s[..1], &s[1..], exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rational_layout_matches_float_layout() {
        // dyadic values are exact in both representations
        for (n, d) in [(1, 1), (-3, 4), (5, 2), (123456789, 1), (1, 1024), (-7, 1)] {
            let v = n as f64 / d as f64;
            assert_eq!(sci_rational(&q(n, d)), sci(v), "{n}/{d}");
        }
        assert_eq!(sci_rational(&q(0, 1)), sci(0.0));
        assert_eq!(sci_rational(&q(1, 3)), "3.3333333333333333e-1");
        assert_eq!(sci_rational(&q(-2, 3)), "-6.6666666666666667e-1");
        assert_eq!(sci_rational(&q(1, 1000)), "1.0000000000000000e-3");
    }

    #[test]
    fn rounding_carries_into_the_exponent() {
        // 0.99999999999999999999 rounds up to 1.0e0 at 17 digits
        let r = Rational::new(pow(BigInt::from(10), 20) - 1, pow(BigInt::from(10), 20));
        assert_eq!(sci_rational(&r), "1.0000000000000000e0");
    }

    #[test]
    fn huge_values_do_not_overflow() {
        let r = Rational::from_integer(pow(BigInt::from(7), 2000));
        assert!(sci_rational(&r).ends_with("e1690"));
    }

    #[test]
    fn short_form() {
        assert_eq!(short(1.0), "1.0");
        assert_eq!(short(0.1), "0.1");
        assert_eq!(short(-2.5), "-2.5");
    }
}
