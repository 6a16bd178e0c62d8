//! Binary fixed-point reals for logarithms and roots of exact integers.
//!
//! A [`Fixed`] stores `raw / 2^bits`. Every operation runs with 64 guard bits
//! and truncates back, so results carry far more than the 12 decimals the
//! growth tables print.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

const GUARD: u32 = 64;

/// Decimal digits requested by default for growth-rate roots.
pub const DEFAULT_DIGITS: u32 = 40;

/// Number of fractional bits needed for `digits` significant decimal digits
/// of values of moderate size.
pub fn bits_for_digits(digits: u32) -> u32 {
    (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + 16
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    raw: BigInt,
    bits: u32,
}

impl Fixed {
    pub fn from_int(n: impl Into<BigInt>, bits: u32) -> Fixed {
        Fixed { raw: n.into() << bits, bits }
    }

    pub fn zero(bits: u32) -> Fixed {
        Fixed { raw: BigInt::zero(), bits }
    }

    pub fn one(bits: u32) -> Fixed {
        Fixed::from_int(1, bits)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn widen(&self, extra: u32) -> BigInt {
        &self.raw << extra
    }

    fn from_wide(raw: BigInt, bits: u32, extra: u32) -> Fixed {
        // floor division keeps truncation direction uniform for negatives
        let r = raw.div_floor(&(BigInt::one() << extra));
        Fixed { raw: r, bits }
    }

    /// Natural logarithm of a positive integer.
    pub fn ln(n: &BigUint, bits: u32) -> Fixed {
        assert!(!n.is_zero(), "ln of zero");
        let p = bits + GUARD;
        let e = n.bits() - 1;
        // mantissa m = n / 2^e in [1, 2) as a p-bit fixed-point number
        let m = (BigInt::from(n.clone()) << p) >> e;
        let wide = ln_mantissa(&m, p) + ln2_raw(p) * BigInt::from(e);
        Fixed::from_wide(wide, bits, GUARD)
    }

    pub fn ln2(bits: u32) -> Fixed {
        Fixed::from_wide(ln2_raw(bits + GUARD), bits, GUARD)
    }

    pub fn exp(&self) -> Fixed {
        let p = self.bits + GUARD;
        let x = self.widen(GUARD);
        let ln2 = ln2_raw(p);
        let k = x.div_floor(&ln2);
        let r = &x - &k * &ln2;
        let one = BigInt::one() << p;
        let mut sum = one.clone();
        let mut term = one;
        let mut j = 1u32;
        loop {
            term = ((&term * &r) >> p) / BigInt::from(j);
            if term.is_zero() {
                break;
            }
            sum += &term;
            j += 1;
        }
        let k = k.to_i64().expect("exponent out of range");
        let scaled = if k >= 0 { sum << (k as u64) } else { sum >> ((-k) as u64) };
        Fixed::from_wide(scaled, self.bits, GUARD)
    }

    pub fn div_int(&self, d: &BigUint) -> Fixed {
        assert!(!d.is_zero(), "division by zero");
        Fixed { raw: self.raw.div_floor(&BigInt::from(d.clone())), bits: self.bits }
    }

    pub fn sub(&self, other: &Fixed) -> Fixed {
        assert_eq!(self.bits, other.bits);
        Fixed { raw: &self.raw - &other.raw, bits: self.bits }
    }

    /// `n^(1/k)` for positive integers.
    pub fn root(n: &BigUint, k: &BigUint, bits: u32) -> Fixed {
        Fixed::ln(n, bits + 8).div_int(k).exp().round_to(bits)
    }

    fn round_to(&self, bits: u32) -> Fixed {
        if bits >= self.bits {
            Fixed { raw: &self.raw << (bits - self.bits), bits }
        } else {
            Fixed::from_wide(self.raw.clone(), bits, self.bits - bits)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (int, frac) = self.raw.div_mod_floor(&(BigInt::one() << self.bits));
        let top = if self.bits > 60 { frac >> (self.bits - 60) } else { frac << (60 - self.bits) };
        int.to_f64().unwrap_or(f64::INFINITY) + top.to_f64().unwrap_or(0.0) / (1u64 << 60) as f64
    }

    /// Decimal rendering with exactly `places` fractional digits,
    /// rounding half to even.
    pub fn to_decimal(&self, places: u32) -> String {
        let neg = self.raw.is_negative();
        let mag = self.raw.abs() * BigInt::from(10u32).pow(places);
        let unit = BigInt::one() << self.bits;
        let (mut q, rem) = mag.div_rem(&unit);
        let twice = rem << 1usize;
        match twice.cmp(&unit) {
            Ordering::Greater => q += 1,
            Ordering::Equal if q.is_odd() => q += 1,
            _ => {}
        }
        let digits = q.to_string();
        let places = places as usize;
        let padded = if digits.len() <= places {
            format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (ip, fp) = padded.split_at(padded.len() - places);
        let sign = if neg && q.sign() != Sign::NoSign { "-" } else { "" };
        if places == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fixed {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.bits.cmp(&other.bits) {
            Ordering::Equal => self.raw.cmp(&other.raw),
            Ordering::Less => (&self.raw << (other.bits - self.bits)).cmp(&other.raw),
            Ordering::Greater => self.raw.cmp(&(&other.raw << (self.bits - other.bits))),
        }
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(12))
    }
}

/// `2 atanh(z) = ln((1+z)/(1-z))`, with `z` given in `p`-bit fixed point.
fn two_atanh(z: &BigInt, p: u32) -> BigInt {
    let z2 = (z * z) >> p;
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut j = 1u32;
    loop {
        power = (&power * &z2) >> p;
        let term = &power / BigInt::from(2 * j + 1);
        if term.is_zero() {
            break;
        }
        sum += term;
        j += 1;
    }
    sum << 1usize
}

fn ln2_raw(p: u32) -> BigInt {
    // ln 2 = 2 atanh(1/3)
    let third = (BigInt::one() << p) / BigInt::from(3);
    two_atanh(&third, p)
}

fn ln_mantissa(m: &BigInt, p: u32) -> BigInt {
    let one = BigInt::one() << p;
    let z = ((m - &one) << p) / (m + &one);
    two_atanh(&z, p)
}
