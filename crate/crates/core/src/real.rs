//! Arbitrary-precision reals for logarithms, square roots and the sl₂ oracle.

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use dashu_int::IBig;

use crate::exact::Rational;

pub type Real = FBig<HalfEven, 2>;

pub const DEFAULT_DIGITS: u32 = 50;

/// Working precision in significant decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    digits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision::new(DEFAULT_DIGITS)
    }
}

impl Precision {
    pub fn new(digits: u32) -> Self {
        Precision {
            digits: digits.max(4),
        }
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Binary precision with a few guard bits.
    pub fn bits(&self) -> usize {
        (self.digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 16
    }

    /// Relative threshold below which two values are indistinguishable.
    pub fn epsilon(&self) -> Real {
        self.from_f64(10f64).powi(IBig::from(-(self.digits as i64)))
    }

    pub fn from_int(&self, n: i64) -> Real {
        Real::from(IBig::from(n))
            .with_precision(self.bits())
            .value()
    }

    /// Exact conversion of the binary value of `x`.
    pub fn from_f64(&self, x: f64) -> Real {
        Real::try_from(x)
            .expect("finite float")
            .with_precision(self.bits())
            .value()
    }

    pub fn from_rational(&self, r: &Rational) -> Real {
        r.to_float::<HalfEven, 2>(self.bits()).value()
    }

    pub fn sqrt_rational(&self, r: &Rational) -> Real {
        let x = self.from_rational(r);
        if x == Real::ZERO {
            return x;
        }
        x.sqrt()
    }

    /// Natural logarithm of a positive float.
    pub fn ln_f64(&self, x: f64) -> Real {
        self.from_f64(x).ln()
    }
}

pub fn to_f64(x: &Real) -> f64 {
    x.to_f64().value()
}

pub fn abs(x: &Real) -> Real {
    if *x < Real::ZERO {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Decimal rendering with `digits` significant digits.
pub fn render(x: &Real, digits: u32) -> String {
    if *x == Real::ZERO {
        return "0".to_string();
    }
    x.clone()
        .with_base_and_precision::<10>(digits as usize)
        .value()
        .to_string()
}
