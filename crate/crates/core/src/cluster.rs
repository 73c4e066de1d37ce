//! The Goulden–Jackson cluster engine.
//!
//! For a reduced forbidden set `F = {v_1, …, v_r}` the weighted cluster
//! generating functions `g^(v)` (clusters whose last marked word is `v`)
//! satisfy the linear system
//!
//! ```text
//! g^(v) + Σ_u h_{u,v} · g^(u) = −x^{|v|}        for every v ∈ F,
//! ```
//!
//! where `h_{u,v}` is the correlation polynomial of `u` followed by `v`. The
//! cluster generating function is `g = Σ_v g^(v)` and the count generating
//! function is `f = 1 / (1 − qx − g)`. Clusters themselves are never
//! enumerated.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{IntPoly, PolyMatrix, RationalFunction};
use crate::words::{ForbiddenSet, Word};

/// `f_F = T / S` in canonical form, with the alphabet size and `ℓ(F)` it was
/// computed for.
///
/// Invariants: `gcd(T, S)` is constant, the joint content is 1, `S(0) > 0` and
/// `T(0) = S(0)` (the empty string is the only word of length 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenFun {
    t: IntPoly,
    s: IntPoly,
    q: usize,
    ell: Option<usize>,
}

impl GenFun {
    /// Canonicalizes `t / s` and checks `f(0) = 1`.
    pub fn new(t: IntPoly, s: IntPoly, q: usize, ell: Option<usize>) -> Result<Self> {
        let (t, s) = RationalFunction::new(t, s)?.into_parts();
        if s.coeff(0).is_zero() || t.coeff(0) != s.coeff(0) {
            return Err(Error::input(format!(
                "({t}) / ({s}) does not have constant term 1 as a power series"
            )));
        }
        Ok(GenFun { t, s, q, ell })
    }

    /// Numerator `T`.
    pub fn t(&self) -> &IntPoly {
        &self.t
    }

    /// Denominator `S`.
    pub fn s(&self) -> &IntPoly {
        &self.s
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn ell(&self) -> Option<usize> {
        self.ell
    }

    pub fn as_ratfun(&self) -> RationalFunction {
        RationalFunction::new(self.t.clone(), self.s.clone()).expect("canonical by construction")
    }

    /// Finitely many nonzero counts, i.e. `S` is constant.
    pub fn is_polynomial(&self) -> bool {
        self.s.is_constant()
    }
}

/// Lengths `k` with the length-`k` suffix of `u` equal to the length-`k`
/// prefix of `v`, for `1 <= k < min(|u|, |v|)`. Proper suffixes and prefixes
/// only: neither word counts as its own suffix or prefix.
pub fn overlap_lengths<'a>(u: &'a [u16], v: &'a [u16]) -> impl Iterator<Item = usize> + 'a {
    let max = u.len().min(v.len()).saturating_sub(1);
    (1..=max).filter(move |&k| u[u.len() - k..] == v[..k])
}

/// `Suf(u) ∩ Pre(v)`, shortest first.
pub fn overlap_set(u: &Word, v: &Word) -> Vec<Word> {
    overlap_lengths(u, v)
        .map(|k| Word::new(v[..k].to_vec()))
        .collect()
}

/// `h_{u,v}(x) = Σ x^{|v| − |ω|}` over `ω ∈ Overlap(u, v)`.
pub fn correlation_poly(u: &Word, v: &Word) -> IntPoly {
    let mut coeffs = vec![BigInt::zero(); v.len()];
    for k in overlap_lengths(u, v) {
        coeffs[v.len() - k] += 1;
    }
    IntPoly::new(coeffs)
}

/// The `|F| × |F|` cluster system. Entry `(i, j)` of `matrix` is
/// `h_{v_i, v_j}` plus 1 on the diagonal; `rhs[j] = −x^{|v_j|}`. The unknowns
/// `g^(v_i)` satisfy `Σ_i matrix[i][j] · g^(v_i) = rhs[j]` for every `j`.
#[derive(Clone, Debug)]
pub struct ClusterSystem {
    order: Vec<Word>,
    matrix: PolyMatrix,
    rhs: Vec<IntPoly>,
}

impl ClusterSystem {
    pub fn build(set: &ForbiddenSet) -> Result<Self> {
        set.require_reduced()?;
        if set.is_empty() {
            return Err(Error::input(
                "the cluster system of the empty set has no unknowns",
            ));
        }
        let order = set.words().to_vec();
        let matrix = PolyMatrix::from_fn(order.len(), |i, j| {
            let h = correlation_poly(&order[i], &order[j]);
            if i == j {
                &h + &IntPoly::one()
            } else {
                h
            }
        })?;
        let rhs = order
            .iter()
            .map(|v| IntPoly::monomial(BigInt::from(-1), v.len()))
            .collect();
        Ok(ClusterSystem { order, matrix, rhs })
    }

    pub fn order(&self) -> &[Word] {
        &self.order
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &[IntPoly] {
        &self.rhs
    }

    /// Solves for `g^(v)`, one per word in [`ClusterSystem::order`], by
    /// Gaussian elimination over ℚ(x). Every operation returns a canonical
    /// rational function, which keeps coefficient growth in check.
    ///
    /// All off-diagonal entries vanish at `x = 0` and the diagonal is 1 there,
    /// so every pivot is 1 at `x = 0` throughout elimination and never zero.
    pub fn solve(&self) -> Result<Vec<RationalFunction>> {
        let n = self.order.len();
        // Row j holds equation j: coefficients matrix[i][j] for unknown i.
        let mut rows: Vec<Vec<RationalFunction>> = (0..n)
            .map(|j| {
                let mut row: Vec<RationalFunction> = (0..n)
                    .map(|i| RationalFunction::from_poly(self.matrix.get(i, j).clone()))
                    .collect();
                row.push(RationalFunction::from_poly(self.rhs[j].clone()));
                row
            })
            .collect();

        for k in 0..n {
            if rows[k][k].is_zero() {
                return Err(Error::internal(
                    "cluster system became singular during elimination",
                ));
            }
            let pivot_row = rows[k].clone();
            for row in rows.iter_mut().skip(k + 1) {
                if row[k].is_zero() {
                    continue;
                }
                let factor = row[k].div(&pivot_row[k])?;
                row[k] = RationalFunction::zero();
                for c in k + 1..=n {
                    if pivot_row[c].is_zero() {
                        continue;
                    }
                    row[c] = row[c].sub(&factor.mul(&pivot_row[c])?)?;
                }
            }
        }

        let mut solution = vec![RationalFunction::zero(); n];
        for k in (0..n).rev() {
            let mut acc = rows[k][n].clone();
            for c in k + 1..n {
                if !rows[k][c].is_zero() {
                    acc = acc.sub(&rows[k][c].mul(&solution[c])?)?;
                }
            }
            solution[k] = acc.div(&rows[k][k])?;
        }
        Ok(solution)
    }
}

/// The cluster generating function `g_F` and the count generating function
/// `f_F = 1 / (1 − qx − g_F)` for a reduced set.
///
/// The degree bound `deg T, deg S <= |F|·ℓ(F)` is checked on every call; a
/// violation is reported as an internal error.
pub fn cluster_genfun(set: &ForbiddenSet) -> Result<(RationalFunction, GenFun)> {
    set.require_reduced()?;
    let q = set.q();
    let one_minus_qx = IntPoly::from_i64(&[1, -(q as i64)]);
    let g = if set.is_empty() {
        RationalFunction::zero()
    } else {
        let parts = ClusterSystem::build(set)?.solve()?;
        parts
            .iter()
            .try_fold(RationalFunction::zero(), |acc, gv| acc.add(gv))?
    };
    let (num, den) = (g.numerator(), g.denominator());
    // 1 / (1 − qx − N/D) = D / ((1 − qx)·D − N)
    let genfun = GenFun::new(den.clone(), &(&one_minus_qx * den) - num, q, set.ell())?;
    if let Some(ell) = set.ell() {
        let bound = set.len() * ell;
        let too_big = |p: &IntPoly| p.degree().is_some_and(|d| d > bound);
        if too_big(genfun.t()) || too_big(genfun.s()) {
            return Err(Error::internal(format!(
                "generating function ({}) / ({}) exceeds the degree bound |F|·ℓ(F) = {bound}",
                genfun.t(),
                genfun.s()
            )));
        }
    }
    Ok((g, genfun))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{family_generate, Alphabet, Family};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn w(s: &str) -> Word {
        Word::lit(s)
    }

    #[test]
    fn overlaps() {
        assert_eq!(overlap_set(&w("11"), &w("11")), vec![w("1")]);
        assert_eq!(
            overlap_set(&w("010010"), &w("010010")),
            vec![w("0"), w("010")]
        );
        assert!(overlap_set(&w("01"), &w("23")).is_empty());
        assert_eq!(overlap_set(&w("0110"), &w("011")), vec![w("0")]);
    }

    #[test]
    fn correlation_polys() {
        assert_eq!(correlation_poly(&w("11"), &w("11")), p(&[0, 1]));
        assert_eq!(
            correlation_poly(&w("010010"), &w("010010")),
            p(&[0, 0, 0, 1, 0, 1])
        );
        assert_eq!(correlation_poly(&w("01"), &w("23")), IntPoly::zero());
        // 0000 then 000100: overlaps 0, 00, 000 → x^5 + x^4 + x^3
        assert_eq!(
            correlation_poly(&w("0000"), &w("000100")),
            p(&[0, 0, 0, 1, 1, 1])
        );
    }

    #[test]
    fn single_word_systems() {
        let sys = ClusterSystem::build(&ForbiddenSet::with_size(2, &["11"]).unwrap()).unwrap();
        assert_eq!(sys.matrix().get(0, 0), &p(&[1, 1]));
        assert_eq!(sys.rhs(), &[p(&[0, 0, -1])]);

        let unary = ForbiddenSet::parse(Alphabet::new(["a"]).unwrap(), &["aaa"]).unwrap();
        let sys = ClusterSystem::build(&unary).unwrap();
        assert_eq!(sys.matrix().get(0, 0), &p(&[1, 1, 1]));
        assert_eq!(sys.rhs(), &[p(&[0, 0, 0, -1])]);

        let sys = ClusterSystem::build(&ForbiddenSet::with_size(2, &["01"]).unwrap()).unwrap();
        assert_eq!(sys.matrix().get(0, 0), &p(&[1]));
    }

    #[test]
    fn build_requires_reduced() {
        let f = ForbiddenSet::with_size(2, &["01", "010"]).unwrap();
        assert!(matches!(
            ClusterSystem::build(&f),
            Err(Error::Validation(_))
        ));
        assert!(matches!(cluster_genfun(&f), Err(Error::Validation(_))));
    }

    #[test]
    fn fibonacci() {
        let (g, f) = cluster_genfun(&ForbiddenSet::with_size(2, &["11"]).unwrap()).unwrap();
        assert_eq!(
            g,
            RationalFunction::new(p(&[0, 0, -1]), p(&[1, 1])).unwrap()
        );
        assert_eq!((f.t(), f.s()), (&p(&[1, 1]), &p(&[1, -1, -1])));
        assert_eq!(f.ell(), Some(2));
    }

    #[test]
    fn lpa_6_3_closed_form() {
        let set = family_generate(&Family::Lpa { ell: 6, p: 3 }, &Alphabet::binary()).unwrap();
        let (_, f) = cluster_genfun(&set).unwrap();
        assert_eq!(f.t(), &p(&[1, 1, 1, 1, 1, 2]));
        assert_eq!(f.s(), &p(&[1, -1, -1, -1, -1]));
    }

    #[test]
    fn pa_6_closed_form() {
        let set = family_generate(&Family::Pa { ell: 6 }, &Alphabet::binary()).unwrap();
        let (_, f) = cluster_genfun(&set).unwrap();
        assert_eq!(f.t(), &p(&[1, 1, 2, 3, 6, 10, 10, 14, 14, 16, 12, 8, 6]));
        assert_eq!(f.s(), &p(&[1, -1, 0, -1, 0, -2, -2, 0, -2]));
    }

    #[test]
    fn empty_set() {
        let (g, f) = cluster_genfun(&ForbiddenSet::empty(Alphabet::with_size(3).unwrap())).unwrap();
        assert!(g.is_zero());
        assert_eq!((f.t(), f.s()), (&p(&[1]), &p(&[1, -3])));
        assert_eq!(f.ell(), None);
    }

    #[test]
    fn unary_alphabet() {
        // Over one symbol, avoiding aaa leaves lengths 0, 1, 2.
        let unary = ForbiddenSet::parse(Alphabet::new(["a"]).unwrap(), &["aaa"]).unwrap();
        let (_, f) = cluster_genfun(&unary).unwrap();
        assert_eq!((f.t(), f.s()), (&p(&[1, 1, 1]), &p(&[1])));
        assert!(f.is_polynomial());
    }

    #[test]
    fn genfun_rejects_bad_constant_term() {
        assert!(GenFun::new(p(&[2]), p(&[1, -1]), 2, None).is_err());
        assert!(GenFun::new(p(&[1]), p(&[0, 1]), 2, None).is_err());
        let f = GenFun::new(p(&[-2, -2]), p(&[-2, 2, 2]), 2, Some(2)).unwrap();
        assert_eq!((f.t(), f.s()), (&p(&[1, 1]), &p(&[1, -1, -1])));
    }
}
