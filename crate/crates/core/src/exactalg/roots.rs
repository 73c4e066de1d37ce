//! Certified real-root isolation with Sturm sequences.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{squarefree_part, IntPoly};
use crate::error::{Error, Result};

/// A closed rational interval holding exactly one real root of the polynomial
/// it was computed for. `lo == hi` means the root is that rational exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// Sturm sequence of a square-free polynomial. Remainders are taken over ℚ
/// and rescaled by positive factors to primitive integer polynomials, which
/// keeps every sign intact.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::input("Sturm sequence of the zero polynomial"));
        }
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq[seq.len() - 1].is_zero() {
            let a = &seq[seq.len() - 2];
            let b = &seq[seq.len() - 1];
            let (_, r) = a.to_rat().div_rem(&b.to_rat())?;
            seq.push(-r.to_primitive());
        }
        seq.pop();
        Ok(SturmChain { seq })
    }

    pub fn polys(&self) -> &[IntPoly] {
        &self.seq
    }

    pub fn sign_changes(&self, x: &BigRational) -> usize {
        let mut changes = 0;
        let mut last = Ordering::Equal;
        for s in self.seq.iter().map(|p| p.sign_at(x)) {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// Distinct real roots in `(a, b]`.
    pub fn count_roots(&self, a: &BigRational, b: &BigRational) -> usize {
        self.sign_changes(a).saturating_sub(self.sign_changes(b))
    }
}

/// Cauchy bound: every root has absolute value below `1 + max |a_i / a_n|`.
pub fn cauchy_bound(p: &IntPoly) -> BigRational {
    let lead = p.leading().map(Signed::abs).unwrap_or_else(BigInt::one);
    let max = p
        .coeffs()
        .iter()
        .map(Signed::abs)
        .max()
        .unwrap_or_else(BigInt::zero);
    BigRational::one() + BigRational::new(max, lead)
}

/// Isolates the smallest positive real root of `p` to width at most `tol`.
///
/// Roots are searched in `(0, U]` where `U` is the upper end of `hint` if
/// given, else the Cauchy bound. If `hint`'s lower end is positive and
/// certified root-free from below, the search starts there. The result
/// satisfies `0 < lo <= hi`, `hi - lo <= tol`, the root lies in `[lo, hi]`,
/// and no root of `p` lies in `(0, lo)`.
pub fn smallest_positive_root(
    p: &IntPoly,
    tol: &BigRational,
    hint: Option<&RootInterval>,
) -> Result<RootInterval> {
    if !tol.is_positive() {
        return Err(Error::input("root tolerance must be positive"));
    }
    if p.is_zero() {
        return Err(Error::input("the zero polynomial has no isolated roots"));
    }
    let sf = squarefree_part(&p.unshift(p.valuation()))?;
    if sf.is_constant() {
        return Err(Error::NoRoot(format!("{p} has no positive real root")));
    }
    let chain = SturmChain::new(&sf)?;
    let zero = BigRational::zero();
    let upper = hint.map_or_else(|| cauchy_bound(&sf), |h| h.hi.clone());
    let mut lo = zero.clone();
    if let Some(h) = hint {
        if h.lo.is_positive() && h.lo < upper && chain.count_roots(&zero, &h.lo) == 0 {
            lo = h.lo.clone();
        }
    }
    let mut hi = upper;
    if chain.count_roots(&lo, &hi) == 0 {
        return Err(Error::NoRoot(format!(
            "{p} has no root in ({}, {}]",
            lo, hi
        )));
    }
    let two = BigRational::from_integer(2.into());

    // Shrink (lo, hi] around the smallest root until it is the only one.
    while chain.count_roots(&lo, &hi) > 1 {
        let mid = (&lo + &hi) / &two;
        if chain.count_roots(&lo, &mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if sf.sign_at(&hi) == Ordering::Equal {
        return Ok(RootInterval { lo: hi.clone(), hi });
    }

    // One simple root in (lo, hi) and neither endpoint is a root: bisect on
    // sign. sf(0) != 0 because the factor x^k was stripped.
    let lo_sign = sf.sign_at(&lo);
    while &hi - &lo > *tol || lo.is_zero() {
        let mid = (&lo + &hi) / &two;
        match sf.sign_at(&mid) {
            Ordering::Equal => {
                return Ok(RootInterval {
                    lo: mid.clone(),
                    hi: mid,
                })
            }
            s if s == lo_sign => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(RootInterval { lo, hi })
}
