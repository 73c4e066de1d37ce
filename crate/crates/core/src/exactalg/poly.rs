use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense univariate polynomial over ℤ, lowest degree first.
///
/// Trailing zero coefficients are never stored, so the zero polynomial has an
/// empty coefficient vector and structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// `c·x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly::new(coeffs)
    }

    /// `x^k`.
    pub fn x_pow(k: usize) -> Self {
        IntPoly::monomial(BigInt::one(), k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest-order nonzero coefficient.
    pub fn lowest(&self) -> Option<&BigInt> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    /// Multiplicity of the root at zero (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content, keeping the sign of every coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    pub fn div_scalar_exact(&self, k: &BigInt) -> Result<IntPoly> {
        if k.is_zero() {
            return Err(Error::internal("division of a polynomial by zero"));
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            let (q, r) = a.div_rem(k);
            if !r.is_zero() {
                return Err(Error::internal(format!(
                    "{k} does not divide coefficient {a}"
                )));
            }
            out.push(q);
        }
        Ok(IntPoly::new(out))
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divides by `x^k`, which must divide the polynomial.
    pub fn unshift(&self, k: usize) -> IntPoly {
        debug_assert!(self.valuation() >= k || self.is_zero());
        IntPoly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Keeps the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> IntPoly {
        IntPoly::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    /// Sign of the value at a rational point, computed without fractions:
    /// `den^deg · p(num/den)` has the same sign since `den > 0`.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let (num, den) = (x.numer(), x.denom());
        let mut iter = self.coeffs.iter().rev();
        let Some(lead) = iter.next() else {
            return Ordering::Equal;
        };
        let mut acc = lead.clone();
        let mut pow = BigInt::one();
        for c in iter {
            pow *= den;
            acc = acc * num + c * &pow;
        }
        acc.cmp(&BigInt::zero())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// Exact quotient in ℤ\[x\]; any remainder is an error.
    pub fn exact_div(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let (dl, dd) = match (divisor.leading(), divisor.degree()) {
            (Some(l), Some(d)) => (l, d),
            _ => return Err(Error::internal("exact division by the zero polynomial")),
        };
        let Some(nd) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if nd < dd {
            return Err(Error::internal(format!(
                "{divisor} does not divide {self} (degree too small)"
            )));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(dl);
            if !r.is_zero() {
                return Err(Error::internal(format!("{divisor} does not divide {self}")));
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::internal(format!("{divisor} does not divide {self}")));
        }
        Ok(IntPoly::new(quot))
    }

    /// Pseudo-remainder: the remainder of `lc(d)^(deg a − deg d + 1) · a` by `d`.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let (Some(dd), Some(dl)) = (divisor.degree(), divisor.leading()) else {
            panic!("pseudo-remainder by the zero polynomial");
        };
        let n = match self.degree() {
            Some(n) if n >= dd => n,
            _ => return self.clone(),
        };
        let mut rem = self.coeffs.clone();
        for k in (0..=n - dd).rev() {
            let top = std::mem::take(&mut rem[k + dd]);
            for c in rem[..k + dd].iter_mut() {
                *c *= dl;
            }
            if !top.is_zero() {
                for (j, d) in divisor.coeffs[..dd].iter().enumerate() {
                    rem[k + j] -= &top * d;
                }
            }
        }
        rem.truncate(dd);
        IntPoly::new(rem)
    }
}

impl From<Vec<BigInt>> for IntPoly {
    fn from(coeffs: Vec<BigInt>) -> Self {
        IntPoly::new(coeffs)
    }
}

fn add_coeffs<T: Clone + Zero>(a: &[T], b: &[T], sub: impl Fn(&T, &T) -> T) -> Vec<T> {
    let n = a.len().max(b.len());
    let zero = T::zero();
    (0..n)
        .map(|i| sub(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect()
}

fn mul_coeffs<T: Clone + Zero>(a: &[T], b: &[T]) -> Vec<T>
where
    for<'x> &'x T: Mul<&'x T, Output = T>,
{
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x * y;
        }
    }
    out
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::new(add_coeffs(&self.coeffs, &rhs.coeffs, |a, b| a + b))
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::new(add_coeffs(&self.coeffs, &rhs.coeffs, |a, b| a - b))
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        IntPoly::new(mul_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
    )*};
}

forward_owned!(IntPoly, Add add, Sub sub, Mul mul);
forward_owned!(RatPoly, Add add, Sub sub, Mul mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

fn write_terms<T: fmt::Display + Signed>(f: &mut fmt::Formatter<'_>, coeffs: &[T]) -> fmt::Result {
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        }
        first = false;
        let unit = mag.is_one();
        match i {
            0 => write!(f, "{mag}")?,
            _ if !unit => write!(f, "{mag}*")?,
            _ => {}
        }
        match i {
            0 => {}
            1 => write!(f, "x")?,
            _ => write!(f, "x^{i}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

/// Dense univariate polynomial over ℚ.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::from_i64(coeffs).to_rat()
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, k: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|a| a * k).collect())
    }

    pub fn monic(&self) -> Result<RatPoly> {
        let lead = self
            .leading()
            .ok_or_else(|| Error::input("the zero polynomial has no monic form"))?;
        Ok(self.scale(&lead.recip()))
    }

    /// Euclidean division over ℚ.
    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let (Some(dd), Some(dl)) = (divisor.degree(), divisor.leading()) else {
            return Err(Error::input("division by the zero polynomial"));
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((RatPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / dl;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * d;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        Ok((RatPoly::new(quot), RatPoly::new(rem)))
    }

    /// Multiplies through by the positive lcm of the coefficient denominators.
    pub fn clear_denominators(&self) -> (BigInt, IntPoly) {
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        (lcm, IntPoly::new(ints))
    }

    /// A positive multiple of `self` with integer coefficients and content 1.
    pub fn to_primitive(&self) -> IntPoly {
        self.clear_denominators().1.primitive_part()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        RatPoly::new(add_coeffs(&self.coeffs, &rhs.coeffs, |a, b| a + b))
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        RatPoly::new(add_coeffs(&self.coeffs, &rhs.coeffs, |a, b| a - b))
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        RatPoly::new(mul_coeffs(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

/// Gcd of two integer polynomials with content and primitive part split:
/// the result is `gcd(content p, content q) · gcd(pp(p), pp(q))`, with a
/// positive leading coefficient.
pub fn poly_gcd(p: &IntPoly, q: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::input("gcd of two zero polynomials is undefined"));
    }
    let content = p.content().gcd(&q.content());
    Ok(primitive_gcd(p, q).scale(&content))
}

/// Gcd with content 1 and positive leading coefficient, via the primitive
/// remainder sequence. Returns the zero polynomial only when both inputs are
/// zero.
pub fn primitive_gcd(p: &IntPoly, q: &IntPoly) -> IntPoly {
    let (mut a, mut b) = (p.primitive_part(), q.primitive_part());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = a.pseudo_rem(&b).primitive_part();
        a = b;
        b = r;
    }
    if a.leading().is_some_and(Signed::is_negative) {
        a = -a;
    }
    a
}

/// `p / gcd(p, p')`, primitive with positive leading coefficient.
pub fn squarefree_part(p: &IntPoly) -> Result<IntPoly> {
    if p.is_constant() {
        return Ok(p.primitive_part());
    }
    let g = primitive_gcd(p, &p.derivative());
    let mut sf = p.primitive_part().exact_div(&g)?.primitive_part();
    if sf.leading().is_some_and(Signed::is_negative) {
        sf = -sf;
    }
    Ok(sf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&p(&[1, 1]) * &p(&[1, -1]), p(&[1, 0, -1]));
        assert_eq!(&p(&[1, -1, -1]) + &p(&[0, 1, 1]), p(&[1]));
        assert_eq!(p(&[-1, 0, 1]).exact_div(&p(&[-1, 1])).unwrap(), p(&[1, 1]));
        assert!(p(&[1, 0, 1]).exact_div(&p(&[-1, 1])).is_err());
        assert!(p(&[1, 2]).exact_div(&p(&[0, 2])).is_err());
        assert!(p(&[1]).exact_div(&IntPoly::zero()).is_err());
        assert_eq!(&p(&[3, 4]) - &p(&[3, 4]), IntPoly::zero());
        assert_eq!(IntPoly::zero().degree(), None);
        assert_eq!(p(&[0, 0, 5, 0]).degree(), Some(2));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(),
            p(&[-1, 1])
        );
        assert_eq!(poly_gcd(&p(&[1, -1, -1]), &p(&[1, 1])).unwrap(), p(&[1]));
        assert_eq!(poly_gcd(&p(&[0, 2]), &p(&[0, 0, 4])).unwrap(), p(&[0, 2]));
        assert_eq!(
            poly_gcd(&p(&[0, -3]), &IntPoly::zero()).unwrap(),
            p(&[0, 3])
        );
        assert!(poly_gcd(&IntPoly::zero(), &IntPoly::zero()).is_err());
    }

    #[test]
    fn pseudo_remainder_matches_rational_remainder() {
        let a = p(&[3, -2, 0, 5, 7]);
        let b = p(&[1, 0, 3]);
        let prem = a.pseudo_rem(&b);
        let (_, r) = a.to_rat().div_rem(&b.to_rat()).unwrap();
        // prem = 3^3 · r
        assert_eq!(
            prem.to_rat(),
            r.scale(&BigRational::from_integer(27.into()))
        );
    }

    #[test]
    fn sign_at_rational_points() {
        let f = p(&[1, -1, -1]);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.sign_at(&half), Ordering::Greater);
        assert_eq!(f.sign_at(&BigRational::one()), Ordering::Less);
        assert_eq!(p(&[-1, 2]).sign_at(&half), Ordering::Equal);
        assert_eq!(f.eval_rational(&half), BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn squarefree() {
        let sq = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[2, 1]);
        assert_eq!(squarefree_part(&sq).unwrap(), &p(&[-1, 1]) * &p(&[2, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, -1]).to_string(), "1 - x - x^2");
        assert_eq!(p(&[0, 2, 0, -3]).to_string(), "2*x - 3*x^3");
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(p(&[-4]).to_string(), "-4");
    }

    #[test]
    fn rational_helpers() {
        let r = RatPoly::new(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-2).into(), 3.into()),
        ]);
        assert_eq!(r.to_primitive(), p(&[3, -4]));
        assert_eq!(
            r.monic().unwrap(),
            RatPoly::new(vec![
                BigRational::new((-3).into(), 4.into()),
                BigRational::one(),
            ])
        );
        assert!(RatPoly::zero().monic().is_err());
    }
}
