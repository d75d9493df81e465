//! Exact dyadic rationals `k / 2^m` restricted to the unit interval.
//!
//! Values are kept in lowest terms (odd numerator, except for zero) with a
//! fixed-width `u64` numerator and a `u32` exponent; operations that would
//! leave `[0, 1]` or exceed the representable precision fail loudly instead
//! of rounding.
//!
//! Two text forms are supported: the fraction form `k/2^m` written with an
//! explicit power-of-two denominator (`3/8`, `0`, `1`) and the binary form
//! `.011` (digits after the binary point).

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest representable exponent: numerators stay below `2^63`.
pub const MAX_EXP: u32 = 63;

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum DyadicError {
    #[error("result exceeds the representable precision (2^-{MAX_EXP})")]
    Overflow,
    #[error("result leaves the interval [0, 1]")]
    OutOfRange,
    #[error("invalid dyadic literal `{0}`")]
    Parse(String),
}

/// A dyadic rational in `[0, 1]`, always in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    /// Numerator; odd unless the value is zero.
    num: u64,
    /// The value is `num / 2^exp`.
    exp: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { num: 0, exp: 0 };
    pub const ONE: Dyadic = Dyadic { num: 1, exp: 0 };

    /// Builds `num / 2^exp`, reducing to lowest terms.
    ///
    /// Fails if the value lies outside `[0, 1]` or `exp` exceeds [`MAX_EXP`].
    pub fn new(num: u64, exp: u32) -> Result<Dyadic, DyadicError> {
        if exp > MAX_EXP {
            // A reducible numerator might still fit; normalise first.
            if num == 0 {
                return Ok(Dyadic::ZERO);
            }
            let shift = num.trailing_zeros().min(exp);
            if exp - shift > MAX_EXP {
                return Err(DyadicError::Overflow);
            }
            return Dyadic::new(num >> shift, exp - shift);
        }
        if (num as u128) > (1u128 << exp) {
            return Err(DyadicError::OutOfRange);
        }
        if num == 0 {
            return Ok(Dyadic::ZERO);
        }
        let shift = num.trailing_zeros().min(exp);
        Ok(Dyadic {
            num: num >> shift,
            exp: exp - shift,
        })
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    /// Exponent of the lowest-terms denominator `2^exp`.
    pub fn exponent(self) -> u32 {
        self.exp
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_one(self) -> bool {
        self.num == 1 && self.exp == 0
    }

    /// Number of ones in the binary expansion `.b1 b2 ...` of the value
    /// (for `1` the expansion is taken as the single digit `1`).
    ///
    /// Because the value is in lowest terms this is the popcount of the
    /// numerator.
    pub fn digit_sum(self) -> u32 {
        self.num.count_ones()
    }

    pub fn add(self, other: Dyadic) -> Result<Dyadic, DyadicError> {
        let e = self.exp.max(other.exp);
        let a = (self.num as u128) << (e - self.exp);
        let b = (other.num as u128) << (e - other.exp);
        let sum = a + b;
        if sum > (1u128 << e) {
            return Err(DyadicError::OutOfRange);
        }
        Dyadic::new(sum as u64, e)
    }

    pub fn sub(self, other: Dyadic) -> Result<Dyadic, DyadicError> {
        let e = self.exp.max(other.exp);
        let a = (self.num as u128) << (e - self.exp);
        let b = (other.num as u128) << (e - other.exp);
        if b > a {
            return Err(DyadicError::OutOfRange);
        }
        Dyadic::new((a - b) as u64, e)
    }

    /// Halves the value; fails only when the precision limit is reached.
    pub fn half(self) -> Result<Dyadic, DyadicError> {
        if self.num == 0 {
            return Ok(Dyadic::ZERO);
        }
        if self.exp == MAX_EXP {
            return Err(DyadicError::Overflow);
        }
        Ok(Dyadic {
            num: self.num,
            exp: self.exp + 1,
        })
    }

    /// Doubles the value; fails if the result exceeds 1.
    pub fn double(self) -> Result<Dyadic, DyadicError> {
        self.mul_pow2(1)
    }

    /// Multiplies by `2^k` (either sign), staying inside `[0, 1]`.
    pub fn mul_pow2(self, k: i32) -> Result<Dyadic, DyadicError> {
        if self.num == 0 {
            return Ok(Dyadic::ZERO);
        }
        let e = self.exp as i64 - k as i64;
        if e < 0 {
            return Err(DyadicError::OutOfRange);
        }
        if e > MAX_EXP as i64 {
            return Err(DyadicError::Overflow);
        }
        if (self.num as u128) > (1u128 << e) {
            return Err(DyadicError::OutOfRange);
        }
        Ok(Dyadic {
            num: self.num,
            exp: e as u32,
        })
    }

    /// Exact midpoint of two values.
    pub fn midpoint(self, other: Dyadic) -> Result<Dyadic, DyadicError> {
        let e = self.exp.max(other.exp);
        let a = (self.num as u128) << (e - self.exp);
        let b = (other.num as u128) << (e - other.exp);
        if e + 1 > MAX_EXP {
            return Err(DyadicError::Overflow);
        }
        Dyadic::new((a + b) as u64, e + 1)
    }

    /// Binary expansion digits after the point, in lowest terms (empty for 0;
    /// `1` is rendered as the single digit before the point by `Display`).
    pub fn binary_digits(self) -> Vec<u8> {
        if self.exp == 0 {
            return Vec::new();
        }
        (0..self.exp)
            .map(|i| ((self.num >> (self.exp - 1 - i)) & 1) as u8)
            .collect()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Dyadic) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Dyadic) -> Ordering {
        let e = self.exp.max(other.exp);
        let a = (self.num as u128) << (e - self.exp);
        let b = (other.num as u128) << (e - other.exp);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, 1u64 << self.exp)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Dyadic {
    type Err = DyadicError;

    fn from_str(s: &str) -> Result<Dyadic, DyadicError> {
        let bad = || DyadicError::Parse(s.to_string());
        if let Some(bits) = s.strip_prefix('.').or_else(|| s.strip_prefix("0.")) {
            if bits.is_empty() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(bad());
            }
            if bits.len() > MAX_EXP as usize {
                return Err(DyadicError::Overflow);
            }
            let mut num: u64 = 0;
            for b in bits.bytes() {
                num = (num << 1) | (b - b'0') as u64;
            }
            return Dyadic::new(num, bits.len() as u32);
        }
        if let Some((n, d)) = s.split_once('/') {
            let num: u64 = n.parse().map_err(|_| bad())?;
            let den: u64 = d.parse().map_err(|_| bad())?;
            if den == 0 || !den.is_power_of_two() {
                return Err(bad());
            }
            return Dyadic::new(num, den.trailing_zeros());
        }
        match s {
            "0" => Ok(Dyadic::ZERO),
            "1" => Ok(Dyadic::ONE),
            _ => Err(bad()),
        }
    }
}
