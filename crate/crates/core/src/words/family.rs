//! Generators for the standard constraint families.

use serde::{Deserialize, Serialize};

use super::{Alphabet, ForbiddenSet, Symbol, Word};
use crate::error::{Error, Result};

/// Largest `q^ℓ` the generators will enumerate.
const ENUMERATION_CAP: u128 = 1 << 24;

/// A named constraint family and its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", deny_unknown_fields)]
pub enum Family {
    /// `(d,k)` run-length limited: ones separated by at least `d` and at most
    /// `k` zeros. Binary only.
    #[serde(rename = "RLL")]
    Rll { d: u32, k: u32 },
    /// `(ℓ,δ)` locally balanced: every window of length `ℓ` has weight in
    /// `[ℓ/2 − δ, ℓ/2 + δ]`. Binary only.
    #[serde(rename = "LB")]
    Lb { ell: u32, delta: u32 },
    /// No palindrome of length `ℓ`.
    #[serde(rename = "PA")]
    Pa { ell: u32 },
    /// `(ℓ,p)` least-periodicity avoiding: no window of length `ℓ` has a
    /// period smaller than `p`.
    #[serde(rename = "LPA")]
    Lpa { ell: u32, p: u32 },
}

impl Family {
    fn check(&self, q: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::input(msg));
        match *self {
            Family::Rll { d, k } => {
                if q != 2 {
                    return bad(format!(
                        "RLL is defined over the binary alphabet, got q = {q}"
                    ));
                }
                if d > k || k == 0 {
                    return bad(format!("RLL needs d <= k and k >= 1, got d = {d}, k = {k}"));
                }
            }
            Family::Lb { ell, delta } => {
                if q != 2 {
                    return bad(format!(
                        "LB is defined over the binary alphabet, got q = {q}"
                    ));
                }
                if ell < 2 || 2 * delta >= ell {
                    return bad(format!(
                        "LB needs ell >= 2 and delta < ell/2, got ell = {ell}, delta = {delta}"
                    ));
                }
            }
            Family::Pa { ell } => {
                if q < 2 || ell < 2 {
                    return bad(format!(
                        "PA needs q >= 2 and ell >= 2, got q = {q}, ell = {ell}"
                    ));
                }
            }
            Family::Lpa { ell, p } => {
                if q < 2 || p < 2 || ell < p {
                    return bad(format!(
                        "LPA needs q >= 2 and ell >= p >= 2, got q = {q}, ell = {ell}, p = {p}"
                    ));
                }
            }
        }
        Ok(())
    }
}

/// The family's defining word set, exactly as written, before reduction.
pub fn family_members(family: &Family, q: usize) -> Result<Vec<Word>> {
    family.check(q)?;
    let words = match *family {
        Family::Rll { d, k } => {
            let mut words: Vec<Word> = (0..d)
                .map(|t| {
                    let mut w = vec![1];
                    w.extend(std::iter::repeat_n(0, t as usize));
                    w.push(1);
                    Word::new(w)
                })
                .collect();
            words.push(Word::new(vec![0; k as usize + 1]));
            words
        }
        Family::Lb { ell, delta } => {
            // Bounds compared as 2·wt against ℓ ± 2δ so odd ℓ stays exact.
            let (ell2, delta2) = (i64::from(ell), 2 * i64::from(delta));
            all_words(2, ell as usize)?
                .filter(|w| {
                    let wt2 = 2 * w.iter().filter(|&&s| s == 1).count() as i64;
                    wt2 > ell2 + delta2 || wt2 < ell2 - delta2
                })
                .collect()
        }
        Family::Pa { ell } => all_words(q, ell as usize)?
            .filter(|w| w.iter().eq(w.iter().rev()))
            .collect(),
        Family::Lpa { ell, p } => all_words(q, ell as usize)?
            .filter(|w| (1..p as usize).any(|period| has_period(w, period)))
            .collect(),
    };
    Ok(words)
}

/// Generates the family over `alphabet` and reduces it.
pub fn family_generate(family: &Family, alphabet: &Alphabet) -> Result<ForbiddenSet> {
    let words = family_members(family, alphabet.size())?;
    ForbiddenSet::new(alphabet.clone(), words)?.reduce()
}

fn has_period(w: &[Symbol], period: usize) -> bool {
    w.iter().zip(w.iter().skip(period)).all(|(a, b)| a == b)
}

/// All words of length `len` over `0..q`, in lexicographic order.
fn all_words(q: usize, len: usize) -> Result<impl Iterator<Item = Word>> {
    let total = (q as u128)
        .checked_pow(len as u32)
        .filter(|&t| t <= ENUMERATION_CAP);
    let total = total.ok_or_else(|| {
        Error::Resource(format!(
            "enumerating {q}^{len} words exceeds the generator cap"
        ))
    })? as u64;
    Ok((0..total).map(move |mut code| {
        let mut letters = vec![0 as Symbol; len];
        for slot in letters.iter_mut().rev() {
            *slot = (code % q as u64) as Symbol;
            code /= q as u64;
        }
        Word::new(letters)
    }))
}
