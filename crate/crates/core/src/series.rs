//! Counts `N_F(n)` from a generating function, plus a brute-force oracle.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::cluster::GenFun;
use crate::error::{Error, Result};
use crate::words::{ForbiddenSet, Symbol};

/// `a_0 N(n) + a_1 N(n−1) + … + a_s N(n−s) = b_n`, where `a` are the
/// coefficients of `S` and `b` those of `T` (zero past its degree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    a: Vec<BigInt>,
    b: Vec<BigInt>,
}

impl Recurrence {
    pub fn from_genfun(f: &GenFun) -> Self {
        Recurrence {
            a: f.s().coeffs().to_vec(),
            b: f.t().coeffs().to_vec(),
        }
    }

    pub fn a(&self) -> &[BigInt] {
        &self.a
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    /// Order `s = deg S`.
    pub fn order(&self) -> usize {
        self.a.len() - 1
    }

    pub fn rhs(&self, n: usize) -> BigInt {
        self.b.get(n).cloned().unwrap_or_default()
    }

    pub fn stream(&self) -> CountStream {
        CountStream {
            rec: self.clone(),
            history: VecDeque::with_capacity(self.order()),
            n: 0,
        }
    }
}

/// Yields `N(0), N(1), …` in memory linear in the recurrence order.
#[derive(Clone, Debug)]
pub struct CountStream {
    rec: Recurrence,
    // Most recent first: history[i] = N(n − 1 − i).
    history: VecDeque<BigInt>,
    n: usize,
}

impl CountStream {
    /// Index of the next value to be produced.
    pub fn position(&self) -> usize {
        self.n
    }

    fn step(&mut self) -> Result<BigInt> {
        let mut acc = self.rec.rhs(self.n);
        for (a, prev) in self.rec.a[1..].iter().zip(&self.history) {
            acc -= a * prev;
        }
        let (value, rem) = acc.div_rem(&self.rec.a[0]);
        if !rem.is_zero() {
            return Err(Error::internal(format!(
                "N({}) is not an integer: {acc} / {}",
                self.n, self.rec.a[0]
            )));
        }
        if value.is_negative() {
            return Err(Error::internal(format!(
                "N({}) = {value} is negative",
                self.n
            )));
        }
        if self.rec.order() > 0 {
            if self.history.len() == self.rec.order() {
                self.history.pop_back();
            }
            self.history.push_front(value.clone());
        }
        self.n += 1;
        Ok(value)
    }
}

impl Iterator for CountStream {
    type Item = Result<BigInt>;

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.step())
    }
}

pub fn recurrence_from_genfun(f: &GenFun) -> Recurrence {
    Recurrence::from_genfun(f)
}

/// `N_F(n)` from the generating function.
pub fn count(f: &GenFun, n: usize) -> Result<BigInt> {
    Recurrence::from_genfun(f)
        .stream()
        .nth(n)
        .expect("stream is infinite")
}

/// `N_F(0), …, N_F(n_max)`.
pub fn count_range(f: &GenFun, n_max: usize) -> Result<Vec<BigInt>> {
    Recurrence::from_genfun(f)
        .stream()
        .take(n_max + 1)
        .collect()
}

/// Largest number of strings the brute-force oracle visits unless told
/// otherwise.
pub const DEFAULT_BRUTE_FORCE_BUDGET: u128 = 1 << 32;

/// `N_F(0), …, N_F(n_max)` by enumerating every `F`-free string with one
/// depth-first walk that extends only `F`-free prefixes.
///
/// Refuses with [`Error::Resource`] when `q^n_max` exceeds `budget`. The set
/// need not be reduced.
pub fn brute_force_counts(set: &ForbiddenSet, n_max: usize, budget: u128) -> Result<Vec<BigInt>> {
    let q = set.q() as u128;
    let total = (0..n_max).try_fold(1u128, |acc, _| acc.checked_mul(q));
    if total.is_none_or(|t| t > budget) {
        return Err(Error::Resource(format!(
            "brute force over {}^{n_max} strings exceeds the budget of {budget}",
            set.q()
        )));
    }
    let mut counts = vec![0u64; n_max + 1];
    let walker = Walker::new(set);
    walker.walk(0, 0, n_max, &mut counts);
    Ok(counts.into_iter().map(BigInt::from).collect())
}

/// `N_F(n)` by brute force.
pub fn brute_force_count(set: &ForbiddenSet, n: usize, budget: u128) -> Result<BigInt> {
    Ok(brute_force_counts(set, n, budget)?
        .pop()
        .expect("n_max + 1 entries"))
}

/// Largest `q^ℓ` for which the walker keeps per-length lookup tables.
const TABLE_CAP: u128 = 1 << 20;

/// Depth-first enumeration. The last `ℓ` symbols are kept as a base-`q`
/// number; a forbidden word of length `L` ends at the new symbol iff the
/// number mod `q^L` is marked in the table for `L`. Without tables (huge
/// `q^ℓ`) the current string is compared directly.
struct Walker<'a> {
    set: &'a ForbiddenSet,
    q: u64,
    modulus: u64,
    // (L, q^L, marked codes) per distinct word length.
    tables: Option<Vec<(usize, u64, Vec<bool>)>>,
}

impl<'a> Walker<'a> {
    fn new(set: &'a ForbiddenSet) -> Self {
        let q = set.q() as u64;
        let ell = set.ell().unwrap_or(0);
        let size = (q as u128)
            .checked_pow(ell as u32)
            .filter(|&s| s <= TABLE_CAP);
        let tables = size.map(|_| {
            let mut lengths: Vec<usize> = set.words().iter().map(|w| w.len()).collect();
            lengths.sort_unstable();
            lengths.dedup();
            lengths
                .into_iter()
                .map(|len| {
                    let m = q.pow(len as u32);
                    let mut marked = vec![false; m as usize];
                    for w in set.words().iter().filter(|w| w.len() == len) {
                        let code = w.iter().fold(0, |acc, &c| acc * q + u64::from(c));
                        marked[code as usize] = true;
                    }
                    (len, m, marked)
                })
                .collect()
        });
        Walker {
            set,
            q,
            modulus: size.unwrap_or(1) as u64,
            tables,
        }
    }

    fn walk(&self, depth: usize, code: u64, n_max: usize, counts: &mut [u64]) {
        counts[depth] += 1;
        if depth == n_max {
            return;
        }
        let Some(tables) = &self.tables else {
            let mut buf = Vec::with_capacity(n_max);
            self.walk_direct(&mut buf, n_max, counts);
            return;
        };
        for s in 0..self.q {
            let next = (code * self.q + s) % self.modulus;
            let len = depth + 1;
            let hit = tables
                .iter()
                .any(|(l, m, marked)| *l <= len && marked[(next % m) as usize]);
            if !hit {
                self.walk(len, next, n_max, counts);
            }
        }
    }

    fn walk_direct(&self, buf: &mut Vec<Symbol>, n_max: usize, counts: &mut [u64]) {
        if !buf.is_empty() {
            counts[buf.len()] += 1;
        }
        if buf.len() == n_max {
            return;
        }
        for s in 0..self.q {
            buf.push(s as Symbol);
            // Only a forbidden word ending at the new symbol can be new.
            if !self.set.words().iter().any(|w| buf.ends_with(w)) {
                self.walk_direct(buf, n_max, counts);
            }
            buf.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::cluster_genfun;
    use crate::exactalg::IntPoly;

    fn genfun(t: &[i64], s: &[i64], q: usize) -> GenFun {
        GenFun::new(IntPoly::from_i64(t), IntPoly::from_i64(s), q, None).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn fibonacci_counts() {
        let f = genfun(&[1, 1], &[1, -1, -1], 2);
        assert_eq!(count_range(&f, 5).unwrap(), ints(&[1, 2, 3, 5, 8, 13]));
        assert_eq!(count(&f, 30).unwrap(), BigInt::from(2_178_309));
        let rec = recurrence_from_genfun(&f);
        assert_eq!(rec.order(), 2);
        assert_eq!(rec.rhs(7), BigInt::zero());
    }

    #[test]
    fn free_strings() {
        let f = genfun(&[1], &[1, -3], 3);
        assert_eq!(count(&f, 4).unwrap(), BigInt::from(81));
    }

    #[test]
    fn polynomial_genfun() {
        let f = genfun(&[1, 1, 1], &[1], 1);
        assert_eq!(count_range(&f, 4).unwrap(), ints(&[1, 1, 1, 0, 0]));
    }

    #[test]
    fn detects_non_integer() {
        let f = genfun(&[2, 1], &[2, -2], 2);
        assert!(matches!(count(&f, 1), Err(Error::Internal(_))));
    }

    #[test]
    fn detects_negative() {
        let f = genfun(&[1, -2], &[1], 2);
        assert!(matches!(count(&f, 1), Err(Error::Internal(_))));
    }

    #[test]
    fn brute_force_fibonacci() {
        let set = ForbiddenSet::with_size(2, &["11"]).unwrap();
        assert_eq!(
            brute_force_counts(&set, 6, 1 << 10).unwrap(),
            ints(&[1, 2, 3, 5, 8, 13, 21])
        );
        assert_eq!(
            brute_force_count(&set, 4, 1 << 10).unwrap(),
            BigInt::from(8)
        );
    }

    #[test]
    fn brute_force_budget() {
        let set = ForbiddenSet::with_size(2, &["11"]).unwrap();
        assert!(matches!(
            brute_force_counts(&set, 11, 1 << 10),
            Err(Error::Resource(_))
        ));
        assert!(brute_force_counts(&set, 10, 1 << 10).is_ok());
    }

    #[test]
    fn brute_force_without_tables() {
        // 36^4 is above the table cap, so strings are compared directly.
        let set = ForbiddenSet::with_size(36, &["0000", "12"]).unwrap();
        let counts = brute_force_counts(&set, 4, 1 << 21).unwrap();
        let expect = 36u64.pow(4) - 1 - 3 * 36 * 36 + 1;
        assert_eq!(counts[4], BigInt::from(expect));
        assert_eq!(counts[1], BigInt::from(36));
    }

    #[test]
    fn brute_force_matches_cluster() {
        let set = ForbiddenSet::with_size(3, &["00", "121", "2012"]).unwrap();
        let (_, f) = cluster_genfun(&set).unwrap();
        assert_eq!(
            count_range(&f, 9).unwrap(),
            brute_force_counts(&set, 9, DEFAULT_BRUTE_FORCE_BUDGET).unwrap()
        );
    }
}
