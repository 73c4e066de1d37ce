use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::poly::{primitive_gcd, IntPoly, RatPoly};
use crate::error::{Error, Result};

/// A rational function `num / den` over ℤ in canonical form:
///
/// * `gcd(num, den)` is a constant,
/// * the combined integer content of `num` and `den` is 1,
/// * the lowest-order nonzero coefficient of `den` is positive.
///
/// Canonical form is unique, so `==` is equality of rational functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntPoly,
    den: IntPoly,
}

impl RationalFunction {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::input("rational function with zero denominator"));
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let g = primitive_gcd(&num, &den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let content = num.content().gcd(&den.content());
        if !content.is_zero() && content != 1.into() {
            num = num.div_scalar_exact(&content)?;
            den = den.div_scalar_exact(&content)?;
        }
        if den.lowest().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: IntPoly) -> Self {
        let content = p.content();
        if content.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            num: p,
            den: IntPoly::one(),
        }
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(IntPoly::one())
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn into_parts(self) -> (IntPoly, IntPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::input("division by the zero rational function"));
        }
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFunction::one().div(self)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Canonical form of `num / den` given over ℚ.
pub fn ratfun_canonicalize(num: &RatPoly, den: &RatPoly) -> Result<RationalFunction> {
    if den.is_zero() {
        return Err(Error::input("rational function with zero denominator"));
    }
    // Clear all denominators with one common positive factor so the ratio is
    // unchanged.
    let joint = RatPoly::new(num.coeffs().iter().chain(den.coeffs()).cloned().collect());
    let (lcm, _) = joint.clear_denominators();
    let k = num_rational::BigRational::from_integer(lcm);
    let (_, n) = num.scale(&k).clear_denominators();
    let (_, d) = den.scale(&k).clear_denominators();
    RationalFunction::new(n, d)
}
