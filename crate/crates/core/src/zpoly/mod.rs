//! Dense univariate polynomials in `t` with arbitrary-precision integer
//! coefficients.
//!
//! Coefficients are stored ascending by power and kept normalized: the last
//! stored coefficient is nonzero and the zero polynomial is the empty vector.

mod json;
mod rat;
mod text;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub use json::{parse_decimal, PolyJson};
pub use rat::{rat_sub_cube_square, RatPoly};

/// Largest exponent accepted by [`IntPoly::pow`].
pub const DEFAULT_POW_BOUND: u32 = 8;

/// Below this operand length products use the schoolbook loop.
const KARATSUBA_THRESHOLD: usize = 64;

/// Degree of a polynomial. The zero polynomial has degree
/// [`Degree::NegInfinity`], which orders below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// `c * t^power`.
    pub fn monomial(c: impl Into<BigInt>, power: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); power + 1];
        coeffs[power] = c.into();
        Self::from_coeffs(coeffs)
    }

    /// Builds a polynomial from ascending coefficients, trimming high zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    /// Convenience for small literal polynomials, ascending by power.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `t^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Finite degree, or `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiplies by `t^n`.
    pub fn shift(&self, n: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn pow(&self, exponent: u32) -> Result<IntPoly> {
        self.pow_bounded(exponent, DEFAULT_POW_BOUND)
    }

    pub fn pow_bounded(&self, exponent: u32, bound: u32) -> Result<IntPoly> {
        if exponent > bound {
            return Err(Error::ExponentTooLarge { exponent, bound });
        }
        let mut acc = IntPoly::one();
        for _ in 0..exponent {
            acc = &acc * self;
        }
        Ok(acc)
    }

    /// Exact Horner evaluation at an integer point.
    pub fn eval(&self, t0: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t0 + c)
    }

    /// gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides every coefficient by `c`, which must divide each exactly.
    pub fn div_exact_int(&self, c: &BigInt) -> Result<IntPoly> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (index, x) in self.coeffs.iter().enumerate() {
            let (q, r) = x.div_rem(c);
            if !r.is_zero() {
                return Err(Error::NotDivisibleAt { index });
            }
            coeffs.push(q);
        }
        Ok(IntPoly { coeffs })
    }

    /// Exact quotient `self / divisor` over `Z[t]`.
    ///
    /// Fails with [`Error::NotDivisible`] when the remainder is nonzero or a
    /// quotient coefficient would leave `Z`.
    pub fn div_exact(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let (q, r) = self.div_rem_exact(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    fn div_rem_exact(&self, divisor: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let lead = divisor.leading().ok_or(Error::DivisionByZero)?;
        let dlen = divisor.coeffs.len();
        if self.coeffs.len() < dlen {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dlen - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// Composition `self(inner)`.
    pub fn compose(&self, inner: &IntPoly) -> IntPoly {
        self.coeffs.iter().rev().fold(IntPoly::zero(), |acc, c| &(&acc * inner) + &IntPoly::constant(c.clone()))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    out
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn karatsuba(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.len().min(b.len()) <= KARATSUBA_THRESHOLD {
        return schoolbook(a, b);
    }
    let m = a.len().max(b.len()) / 2;
    if a.len() <= m || b.len() <= m {
        // Unbalanced: chunk the longer operand by the shorter one's length.
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (c, chunk) in long.chunks(short.len()).enumerate() {
            for (i, x) in karatsuba(chunk, short).into_iter().enumerate() {
                out[c * short.len() + i] += x;
            }
        }
        return out;
    }
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m);
    let z0 = karatsuba(a0, b0);
    let z2 = karatsuba(a1, b1);
    let mut z1 = karatsuba(&add_slices(a0, a1), &add_slices(b0, b1));
    for (i, x) in z0.iter().enumerate() {
        z1[i] -= x;
    }
    for (i, x) in z2.iter().enumerate() {
        z1[i] -= x;
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in z0.into_iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in z1.into_iter().enumerate() {
        if i + m < out.len() {
            out[i + m] += x;
        } else {
            debug_assert!(x.is_zero());
        }
    }
    for (i, x) in z2.into_iter().enumerate() {
        out[i + 2 * m] += x;
    }
    out
}

/// Schoolbook product, exposed so tests can cross-check the fast path.
pub fn mul_schoolbook(a: &IntPoly, b: &IntPoly) -> IntPoly {
    IntPoly::from_coeffs(schoolbook(&a.coeffs, &b.coeffs))
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::from_coeffs(add_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.coeffs.clone();
        if out.len() < rhs.coeffs.len() {
            out.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (o, r) in out.iter_mut().zip(&rhs.coeffs) {
            *o -= r;
        }
        IntPoly::from_coeffs(out)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::from_coeffs(karatsuba(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: &IntPoly) -> IntPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<IntPoly> for &IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&IntPoly> for IntPoly {
    fn sub_assign(&mut self, rhs: &IntPoly) {
        *self = &*self - rhs;
    }
}

impl From<BigInt> for IntPoly {
    fn from(c: BigInt) -> Self {
        IntPoly::constant(c)
    }
}

impl From<i64> for IntPoly {
    fn from(c: i64) -> Self {
        IntPoly::constant(c)
    }
}
