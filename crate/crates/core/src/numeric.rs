//! Small numeric helpers shared by the exact and floating-point code paths.

use num_bigint::{BigInt, Sign};

/// `m * 2^e` without intermediate overflow or underflow.
pub fn ldexp(mut m: f64, mut e: i64) -> f64 {
    while e > 1000 {
        m *= 2f64.powi(1000);
        e -= 1000;
        if m.is_infinite() {
            return m;
        }
    }
    while e < -1000 {
        m *= 2f64.powi(-1000);
        e += 1000;
        if m == 0.0 {
            return m;
        }
    }
    m * 2f64.powi(e as i32)
}

/// Nearest double to `x / 2^shift`, usable when `x` itself does not fit in an `f64`.
pub fn big_to_f64_scaled(x: &BigInt, shift: u64) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return 0.0;
    }
    let drop = bits.saturating_sub(64);
    let top: BigInt = x.magnitude().clone().into();
    let top = top >> drop;
    let (_, digits) = top.to_u64_digits();
    let mantissa = digits.first().copied().unwrap_or(0) as f64;
    let v = ldexp(mantissa, drop as i64 - shift as i64);
    if x.sign() == Sign::Minus {
        -v
    } else {
        v
    }
}

/// Nearest double to a big rational whose numerator and denominator may both overflow `f64`.
pub fn rational_to_f64(x: &num_rational::BigRational) -> f64 {
    let (n, d) = (x.numer(), x.denom());
    if n.bits() == 0 {
        return 0.0;
    }
    let (nb, db) = (n.bits(), d.bits());
    let ratio = big_to_f64_scaled(n, nb) / big_to_f64_scaled(d, db);
    ldexp(ratio, nb as i64 - db as i64)
}

/// Natural logarithm of a positive big integer.
pub fn big_ln(x: &BigInt) -> f64 {
    let bits = x.bits();
    let drop = bits.saturating_sub(64);
    (big_to_f64_scaled(x, drop)).ln() + drop as f64 * std::f64::consts::LN_2
}

/// Formats a double like C's `%.17g`: 17 significant digits, trailing zeros removed.
pub fn fmt_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("exponent digits");
    let negative = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if negative { "-" } else { "" };
    if !(-4..17).contains(&exp) {
        let (head, tail) = digits.split_at(1);
        let tail = tail.trim_end_matches('0');
        let esign = if exp < 0 { '-' } else { '+' };
        if tail.is_empty() {
            format!("{sign}{head}e{esign}{:02}", exp.abs())
        } else {
            format!("{sign}{head}.{tail}e{esign}{:02}", exp.abs())
        }
    } else if exp >= 0 {
        let split = exp as usize + 1;
        let (int, frac) = digits.split_at(split);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    } else {
        let zeros = "0".repeat((-exp - 1) as usize);
        let frac = format!("{zeros}{digits}");
        format!("{sign}0.{}", frac.trim_end_matches('0'))
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}
