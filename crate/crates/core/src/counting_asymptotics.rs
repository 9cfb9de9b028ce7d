//! Exact ratio of the number of maximal good sets to `C(mn, m+n-1)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::good_sets::count_maximal_good;
use crate::linalg::binomial;

/// Significant digits used for decimal renderings unless overridden.
pub const DEFAULT_PRECISION: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioRecord {
    pub m: usize,
    pub n: usize,
    #[serde(serialize_with = "as_string")]
    pub tree_count: BigUint,
    #[serde(serialize_with = "as_string")]
    pub binom: BigUint,
    #[serde(serialize_with = "as_string")]
    pub ratio: BigRational,
    pub ratio_decimal: String,
}

fn as_string<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn big(v: &BigUint) -> BigInt {
    BigInt::from(v.clone())
}

pub fn ratio_exact(m: usize, n: usize) -> RatioRecord {
    ratio_record(m, n, DEFAULT_PRECISION)
}

/// `m^(n-1) n^(m-1) / C(mn, m+n-1)` with a decimal rendering to
/// `precision` significant digits.
pub fn ratio_record(m: usize, n: usize, precision: usize) -> RatioRecord {
    assert!(m >= 1 && n >= 1, "grid dimensions must be positive");
    let tree_count = count_maximal_good(m, n);
    let binom = binomial((m * n) as u64, (m + n - 1) as u64)
        .to_biguint()
        .expect("binomial is nonnegative");
    let ratio = BigRational::new(big(&tree_count), big(&binom));
    let ratio_decimal = render_decimal(&ratio, precision);
    RatioRecord {
        m,
        n,
        tree_count,
        binom,
        ratio,
        ratio_decimal,
    }
}

/// `a^(m1+n1-1) m1^(n1-1) n1^(m1-1) / C(a m1 n1, m1+n1-1)`: the
/// maximal G-good count over the bound when every block holds `a` orbits.
pub fn ratio_constant_alpha(m1: usize, n1: usize, a: usize) -> BigRational {
    assert!(m1 >= 1 && n1 >= 1 && a >= 1, "arguments must be positive");
    let num = num_traits::pow(BigInt::from(a), m1 + n1 - 1) * big(&count_maximal_good(m1, n1));
    let den = binomial((a * m1 * n1) as u64, (m1 + n1 - 1) as u64);
    BigRational::new(num, den)
}

/// Records for every `(m, n)` in the product of the ranges, row-major.
pub fn ratio_table(
    m_range: std::ops::RangeInclusive<usize>,
    n_range: std::ops::RangeInclusive<usize>,
    precision: usize,
) -> Vec<RatioRecord> {
    m_range
        .flat_map(|m| n_range.clone().map(move |n| (m, n)))
        .map(|(m, n)| ratio_record(m, n, precision))
        .collect()
}

/// Records along the diagonal `m = n`.
pub fn ratio_diagonal(range: std::ops::RangeInclusive<usize>, precision: usize) -> Vec<RatioRecord> {
    range.map(|k| ratio_record(k, k, precision)).collect()
}

/// Decimal rendering of an exact rational to `digits` significant digits,
/// rounding half away from zero. Plain positional notation, no exponent.
pub fn render_decimal(value: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if value.is_zero() {
        return "0".to_string();
    }
    let neg = value.is_negative();
    let v = value.abs();
    let ten = BigInt::from(10);
    let (num, den) = (v.numer().clone(), v.denom().clone());

    // exponent e with 10^e <= v < 10^(e+1)
    let mut e: i64 = num.to_string().len() as i64 - den.to_string().len() as i64;
    let ge_pow = |e: i64| -> bool {
        if e >= 0 {
            num >= &den * num_traits::pow(ten.clone(), e as usize)
        } else {
            &num * num_traits::pow(ten.clone(), (-e) as usize) >= den
        }
    };
    while !ge_pow(e) {
        e -= 1;
    }
    while ge_pow(e + 1) {
        e += 1;
    }

    // scaled = round(v * 10^(digits-1-e))
    let shift = digits as i64 - 1 - e;
    let (sn, sd) = if shift >= 0 {
        (&num * num_traits::pow(ten.clone(), shift as usize), den.clone())
    } else {
        (num.clone(), &den * num_traits::pow(ten.clone(), (-shift) as usize))
    };
    let (q, r) = sn.div_rem(&sd);
    let mut scaled = if &r * 2 >= sd { q + BigInt::one() } else { q };
    let mut shift = shift;
    if scaled.to_string().len() > digits {
        // rounding carried into a new digit
        scaled /= &ten;
        shift -= 1;
    }

    let s = scaled.to_string();
    let body = if shift <= 0 {
        format!("{s}{}", "0".repeat((-shift) as usize))
    } else {
        let shift = shift as usize;
        if s.len() > shift {
            format!("{}.{}", &s[..s.len() - shift], &s[s.len() - shift..])
        } else {
            format!("0.{}{s}", "0".repeat(shift - s.len()))
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}
