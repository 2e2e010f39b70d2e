use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Degree, IntPoly};
use crate::{Error, Result};

/// An integer polynomial over a positive integer denominator, kept reduced:
/// `gcd(den, content(num)) = 1`, and the zero polynomial has `den = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatPoly {
    num: IntPoly,
    den: BigInt,
}

impl RatPoly {
    pub fn new(num: IntPoly, den: BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: IntPoly, den: BigInt) -> Self {
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num, den) };
        if num.is_zero() {
            return RatPoly { num, den: BigInt::one() };
        }
        let g = num.content().gcd(&den);
        if g.is_one() {
            return RatPoly { num, den };
        }
        let num = num.div_exact_int(&g).expect("gcd divides every coefficient");
        RatPoly { num, den: den / g }
    }

    pub fn from_int(num: IntPoly) -> Self {
        RatPoly { num, den: BigInt::one() }
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn degree(&self) -> Degree {
        self.num.degree()
    }

    /// Re-applies normalization; a no-op on any value built through this API.
    pub fn reduce(&self) -> Self {
        Self::reduced(self.num.clone(), self.den.clone())
    }

    pub fn mul(&self, rhs: &RatPoly) -> RatPoly {
        Self::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn sub(&self, rhs: &RatPoly) -> RatPoly {
        let l = self.den.lcm(&rhs.den);
        let a = self.num.scale(&(&l / &self.den));
        let b = rhs.num.scale(&(&l / &rhs.den));
        Self::reduced(&a - &b, l)
    }

    pub fn pow(&self, exponent: u32) -> Result<RatPoly> {
        Ok(Self::reduced(self.num.pow(exponent)?, num_traits::pow(self.den.clone(), exponent as usize)))
    }

    pub fn eval(&self, t0: &BigInt) -> BigRational {
        BigRational::new(self.num.eval(t0), self.den.clone())
    }
}

/// Exact `x^3 - y^2` over the common denominator, reduced.
pub fn rat_sub_cube_square(x: &RatPoly, y: &RatPoly) -> RatPoly {
    let x3 = x.pow(3).expect("exponent within bound");
    let y2 = y.pow(2).expect("exponent within bound");
    x3.sub(&y2)
}

impl From<IntPoly> for RatPoly {
    fn from(p: IntPoly) -> Self {
        RatPoly::from_int(p)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / {}", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}
