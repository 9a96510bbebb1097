//! Configurable-precision real scalar.
//!
//! `Real` wraps an MPFR float. Binary operations produce a result at the
//! larger of the two operand precisions, so values built from one
//! [`Precision`] stay at that precision through every formula.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::error::{Error, Result};

/// Guard bits added on top of the requested decimal digits.
const GUARD_BITS: u32 = 8;

/// Working precision, requested in decimal digits and carried in bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Precision {
    digits: u32,
    bits: u32,
}

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 40;

    pub fn from_digits(digits: u32) -> Self {
        let bits = (f64::from(digits) * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS;
        Self { digits, bits }
    }

    /// Inverse of [`Precision::from_digits`] for a bit count it produced.
    pub fn from_bits(bits: u32) -> Self {
        let digits = (f64::from(bits.saturating_sub(GUARD_BITS)) / std::f64::consts::LOG2_10).floor() as u32;
        Self { digits, bits }
    }

    pub fn digits(self) -> u32 {
        self.digits
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Decimal digits needed so that printing and re-parsing at this
    /// precision reproduces the exact binary value.
    pub fn roundtrip_digits(self) -> usize {
        (f64::from(self.bits) * std::f64::consts::LOG10_2).ceil() as usize + 1
    }

    /// `10^-(digits - slack)`, the usual "working precision" tolerance.
    pub fn epsilon(self, slack: u32) -> Real {
        let e = self.digits.saturating_sub(slack) as i32;
        Real::from_i64(self, 10).powi(-e)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::from_digits(Self::DEFAULT_DIGITS)
    }
}

#[derive(Clone, PartialEq, PartialOrd)]
pub struct Real(Float);

impl Real {
    pub fn zero(p: Precision) -> Self {
        Real(Float::new(p.bits))
    }

    pub fn one(p: Precision) -> Self {
        Self::from_i64(p, 1)
    }

    pub fn from_i64(p: Precision, n: i64) -> Self {
        Real(Float::with_val(p.bits, n))
    }

    pub fn from_f64(p: Precision, x: f64) -> Self {
        Real(Float::with_val(p.bits, x))
    }

    /// Exact-as-possible `num / den`.
    pub fn ratio(p: Precision, num: i64, den: i64) -> Self {
        Self::from_i64(p, num) / den
    }

    pub fn pi(p: Precision) -> Self {
        Real(Float::with_val(p.bits, Constant::Pi))
    }

    /// Parse a decimal literal such as `"1.42142623201e-2"`.
    pub fn parse(p: Precision, s: &str) -> Result<Self> {
        let parsed = Float::parse(s.trim()).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        Ok(Real(Float::with_val(p.bits, parsed)))
    }

    pub fn from_float(f: Float) -> Self {
        Real(f)
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn bits(&self) -> u32 {
        self.0.prec()
    }

    pub fn precision(&self) -> Precision {
        Precision::from_bits(self.0.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_sign_negative() && !self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn abs(&self) -> Real {
        Real(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Real {
        Real(self.0.clone().sqrt())
    }

    pub fn cbrt(&self) -> Real {
        Real(self.0.clone().cbrt())
    }

    pub fn exp(&self) -> Real {
        Real(self.0.clone().exp())
    }

    pub fn ln(&self) -> Real {
        Real(self.0.clone().ln())
    }

    pub fn sin(&self) -> Real {
        Real(self.0.clone().sin())
    }

    pub fn cos(&self) -> Real {
        Real(self.0.clone().cos())
    }

    pub fn sin_cos(&self) -> (Real, Real) {
        let (s, c) = self.0.clone().sin_cos(Float::new(self.0.prec()));
        (Real(s), Real(c))
    }

    pub fn asin(&self) -> Real {
        Real(self.0.clone().asin())
    }

    pub fn acos(&self) -> Real {
        Real(self.0.clone().acos())
    }

    pub fn powi(&self, n: i32) -> Real {
        Real(self.0.clone().pow(n))
    }

    pub fn pow(&self, e: &Real) -> Real {
        Real(self.0.clone().pow(&e.0))
    }

    pub fn square(&self) -> Real {
        Real(self.0.clone().square())
    }

    pub fn max(self, other: Real) -> Real {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `self += a * b` with a single rounding.
    pub fn mul_add_assign(&mut self, a: &Real, b: &Real) {
        self.0 += &a.0 * &b.0;
    }

    /// `self -= a * b` with a single rounding.
    pub fn mul_sub_assign(&mut self, a: &Real, b: &Real) {
        self.0 -= &a.0 * &b.0;
    }

    /// Total order for finite values (NaN sorts last).
    pub fn total_cmp(&self, other: &Real) -> Ordering {
        self.0.partial_cmp(&other.0).unwrap_or_else(|| {
            self.0.is_nan().cmp(&other.0.is_nan())
        })
    }

    /// Scientific notation with `sig` significant digits, e.g. `1.44162661711e-2`.
    pub fn to_sci(&self, sig: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        let s = self.0.to_string_radix(10, Some(sig.max(1)));
        tidy_exponent(&s)
    }

    /// Lossless decimal form at this value's own precision.
    pub fn to_decimal(&self) -> String {
        let digits = (f64::from(self.0.prec()) * std::f64::consts::LOG10_2).ceil() as usize + 1;
        self.0.to_string_radix(10, Some(digits))
    }
}

fn tidy_exponent(s: &str) -> String {
    match s.split_once('e') {
        Some((m, "0")) => m.to_string(),
        Some((m, e)) => format!("{m}e{e}"),
        None => s.to_string(),
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(17);
        f.write_str(&self.to_sci(sig))
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_sci(25))
    }
}

impl PartialEq<f64> for Real {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for Real {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

macro_rules! real_binop {
    ($Tr:ident, $m:ident, $TrA:ident, $ma:ident) => {
        impl $Tr<&Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                let p = self.0.prec().max(rhs.0.prec());
                Real(Float::with_val(p, $Tr::$m(&self.0, &rhs.0)))
            }
        }
        impl $Tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                $Tr::$m(self, &rhs)
            }
        }
        impl $Tr<&Real> for Real {
            type Output = Real;
            fn $m(mut self, rhs: &Real) -> Real {
                $TrA::$ma(&mut self, rhs);
                self
            }
        }
        impl $Tr<Real> for Real {
            type Output = Real;
            fn $m(mut self, rhs: Real) -> Real {
                $TrA::$ma(&mut self, &rhs);
                self
            }
        }
        impl $TrA<&Real> for Real {
            fn $ma(&mut self, rhs: &Real) {
                if self.0.prec() < rhs.0.prec() {
                    self.0.set_prec(rhs.0.prec());
                }
                $TrA::$ma(&mut self.0, &rhs.0);
            }
        }
        impl $TrA<Real> for Real {
            fn $ma(&mut self, rhs: Real) {
                $TrA::$ma(self, &rhs);
            }
        }
        impl $Tr<i64> for &Real {
            type Output = Real;
            fn $m(self, rhs: i64) -> Real {
                Real(Float::with_val(self.0.prec(), $Tr::$m(&self.0, rhs)))
            }
        }
        impl $Tr<i64> for Real {
            type Output = Real;
            fn $m(mut self, rhs: i64) -> Real {
                $TrA::$ma(&mut self.0, rhs);
                self
            }
        }
        impl $TrA<i64> for Real {
            fn $ma(&mut self, rhs: i64) {
                $TrA::$ma(&mut self.0, rhs);
            }
        }
    };
}

real_binop!(Add, add, AddAssign, add_assign);
real_binop!(Sub, sub, SubAssign, sub_assign);
real_binop!(Mul, mul, MulAssign, mul_assign);
real_binop!(Div, div, DivAssign, div_assign);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real(-self.0.clone())
    }
}
