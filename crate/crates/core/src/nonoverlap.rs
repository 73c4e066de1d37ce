//! Variable-length non-overlapping (cross-bifix-free) codes: the predicate,
//! the closed-form generating function of the codes they forbid, the
//! Levenshtein-type bound on `C(q, <= n)`, and an exhaustive maximizer for
//! small instances.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::cluster::{overlap_lengths, GenFun};
use crate::error::{Error, Result};
use crate::exactalg::IntPoly;
use crate::words::{is_substring, Alphabet, Symbol, Word};

/// A finite set of nonempty words over an alphabet, sorted and duplicate-free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSet {
    alphabet: Alphabet,
    words: Vec<Word>,
}

impl CodeSet {
    pub fn new(alphabet: Alphabet, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut words: Vec<Word> = words.into_iter().collect();
        for w in &words {
            if w.is_empty() {
                return Err(Error::input("code words must be nonempty"));
            }
            alphabet.check_word(w)?;
        }
        words.sort();
        words.dedup();
        Ok(CodeSet { alphabet, words })
    }

    pub fn parse(alphabet: Alphabet, words: &[&str]) -> Result<Self> {
        let parsed = words
            .iter()
            .map(|w| alphabet.parse_word(w))
            .collect::<Result<Vec<_>>>()?;
        CodeSet::new(alphabet, parsed)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn formatted(&self) -> Vec<String> {
        self.words
            .iter()
            .map(|w| self.alphabet.format_word(w))
            .collect()
    }
}

/// No proper prefix of `u` equals a proper suffix of `u`.
pub fn self_nonoverlapping(u: &[Symbol]) -> bool {
    overlap_lengths(u, u).next().is_none()
}

/// `u` and `v` (distinct) may share a code: no proper prefix of one is a
/// proper suffix of the other, and neither is a substring of the other.
pub fn compatible(u: &[Symbol], v: &[Symbol]) -> bool {
    overlap_lengths(u, v).next().is_none()
        && overlap_lengths(v, u).next().is_none()
        && !is_substring(u, v)
        && !is_substring(v, u)
}

pub fn is_nonoverlapping(code: &CodeSet) -> bool {
    let w = code.words();
    w.iter().all(|u| self_nonoverlapping(u))
        && (0..w.len()).all(|i| (i + 1..w.len()).all(|j| compatible(&w[i], &w[j])))
}

/// `1 / (1 − qx + Σ_i |C ∩ Σ^i| x^i)` for a non-overlapping code with all
/// words of length at least 2; equal to the cluster result for the same set.
pub fn nonoverlap_genfun(code: &CodeSet) -> Result<GenFun> {
    if !is_nonoverlapping(code) {
        return Err(Error::input("the code is not non-overlapping"));
    }
    if code.words().iter().any(|w| w.len() < 2) {
        return Err(Error::input(
            "the closed form needs all words of length >= 2",
        ));
    }
    let q = code.alphabet().size();
    let ell = code.words().iter().map(|w| w.len()).max();
    let mut s = vec![BigInt::zero(); ell.unwrap_or(1).max(1) + 1];
    s[0] = BigInt::one();
    s[1] = -BigInt::from(q);
    for w in code.words() {
        s[w.len()] += 1;
    }
    GenFun::new(IntPoly::one(), IntPoly::new(s), q, ell)
}

/// `((n−1)/n)^(n−1) · q^n / n` exactly, and its floor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub q: usize,
    pub n: usize,
    pub bound: BigRational,
    pub floor: BigInt,
}

pub fn levenshtein_bound(q: usize, n: usize) -> Result<BoundReport> {
    if q < 2 || n < 2 {
        return Err(Error::input(format!(
            "the bound needs q >= 2 and n >= 2, got q={q}, n={n}"
        )));
    }
    let nb = BigInt::from(n);
    let ratio = BigRational::new(nb.clone() - 1, nb.clone());
    let bound = Pow::pow(ratio, n - 1) * BigRational::new(Pow::pow(BigInt::from(q), n), nb);
    let floor = bound.numer().div_floor(bound.denom());
    Ok(BoundReport { q, n, bound, floor })
}

/// Default node budget for [`max_variable_length_code`].
pub const DEFAULT_SEARCH_BUDGET: u64 = 50_000_000;

/// Largest variable-length non-overlapping code with word lengths in
/// `[1, n]`, with a witness.
pub fn max_variable_length_code(q: usize, n: usize, budget: u64) -> Result<(usize, CodeSet)> {
    max_code_with_lengths(q, 1, n, budget)
}

/// Largest non-overlapping code with word lengths in `[min_len, max_len]`.
///
/// Length-1 words are handled by the split `C = C_1 ∪ C'`: the symbols in
/// `C_1` cannot occur in any other codeword, and by symmetry only the number
/// `s` of them matters, so the search runs once per `s` over the remaining
/// `q − s` symbols. The rest is a branch-and-bound maximum-clique search on
/// the compatibility graph of self-non-overlapping words.
pub fn max_code_with_lengths(
    q: usize,
    min_len: usize,
    max_len: usize,
    budget: u64,
) -> Result<(usize, CodeSet)> {
    if q < 1 || min_len < 1 || max_len < min_len {
        return Err(Error::input(format!(
            "invalid search parameters q={q}, lengths [{min_len}, {max_len}]"
        )));
    }
    let alphabet = Alphabet::with_size(q)?;
    let total: u128 = (min_len.max(2)..=max_len)
        .map(|l| (q as u128).saturating_pow(l as u32))
        .sum();
    if total > 1 << 16 {
        return Err(Error::Resource(format!(
            "{total} candidate words exceed the search cap of 65536"
        )));
    }
    let mut nodes = 0u64;
    let mut best: Vec<Word> = Vec::new();
    let singles = if min_len <= 1 { q } else { 0 };
    for s in 0..=singles {
        let mut chosen: Vec<Word> = (0..s).map(|c| Word::new(vec![c as Symbol])).collect();
        let candidates = candidates(q, s, min_len.max(2), max_len);
        let clique = max_clique(
            &candidates,
            best.len().saturating_sub(s),
            &mut nodes,
            budget,
        )?;
        if let Some(c) = clique {
            if s + c.len() > best.len() {
                chosen.extend(c);
                best = chosen;
            }
        } else if s > best.len() {
            best = chosen;
        }
    }
    let size = best.len();
    Ok((size, CodeSet::new(alphabet, best)?))
}

/// Self-non-overlapping words with lengths in `[lo, hi]` that use only the
/// symbols `first..q`.
fn candidates(q: usize, first: usize, lo: usize, hi: usize) -> Vec<Word> {
    let mut out = Vec::new();
    if first >= q {
        return out;
    }
    for len in lo..=hi {
        let mut digits: Vec<Symbol> = vec![first as Symbol; len];
        loop {
            if self_nonoverlapping(&digits) {
                out.push(Word::new(digits.clone()));
            }
            let Some(pos) = digits.iter().rposition(|&d| (d as usize) < q - 1) else {
                break;
            };
            digits[pos] += 1;
            digits[pos + 1..].fill(first as Symbol);
        }
    }
    out
}

type Bits = Vec<u64>;

fn bit(set: &Bits, i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

fn first_one(set: &Bits) -> Option<usize> {
    set.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(k, &w)| k * 64 + w.trailing_zeros() as usize)
}

/// Maximum clique strictly larger than `floor`, or `None` if there is none.
fn max_clique(
    words: &[Word],
    floor: usize,
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<Vec<Word>>> {
    let n = words.len();
    let blocks = n.div_ceil(64).max(1);
    let mut adj: Vec<Bits> = vec![vec![0; blocks]; n];
    for i in 0..n {
        for j in i + 1..n {
            if compatible(&words[i], &words[j]) {
                adj[i][j / 64] |= 1 << (j % 64);
                adj[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    let mut all = vec![0u64; blocks];
    for i in 0..n {
        all[i / 64] |= 1 << (i % 64);
    }
    let mut search = Clique {
        adj: &adj,
        best: Vec::new(),
        floor,
        nodes,
        budget,
    };
    search.expand(&mut Vec::new(), all)?;
    let best = search.best;
    Ok((!best.is_empty()).then(|| best.iter().map(|&i| words[i].clone()).collect()))
}

struct Clique<'a> {
    adj: &'a [Bits],
    best: Vec<usize>,
    floor: usize,
    nodes: &'a mut u64,
    budget: u64,
}

impl Clique<'_> {
    fn target(&self) -> usize {
        self.best.len().max(self.floor)
    }

    /// Greedy colouring of `cand`: vertices in order with their colour
    /// number, which bounds the clique size reachable from each prefix.
    fn colour(&self, cand: &Bits) -> Vec<(usize, usize)> {
        let mut uncoloured = cand.clone();
        let mut order = Vec::new();
        let mut colour = 0;
        while uncoloured.iter().any(|&w| w != 0) {
            colour += 1;
            let mut avail = uncoloured.clone();
            while let Some(v) = first_one(&avail) {
                avail[v / 64] &= !(1 << (v % 64));
                uncoloured[v / 64] &= !(1 << (v % 64));
                for (a, m) in avail.iter_mut().zip(&self.adj[v]) {
                    *a &= !m;
                }
                order.push((v, colour));
            }
        }
        order
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut cand: Bits) -> Result<()> {
        *self.nodes += 1;
        if *self.nodes > self.budget {
            return Err(Error::Resource(format!(
                "code search exceeded the budget of {} nodes",
                self.budget
            )));
        }
        if current.len() > self.target() {
            self.best = current.clone();
        }
        let order = self.colour(&cand);
        for &(v, colour) in order.iter().rev() {
            if current.len() + colour <= self.target() {
                return Ok(());
            }
            if !bit(&cand, v) {
                continue;
            }
            let next: Bits = cand.iter().zip(&self.adj[v]).map(|(c, a)| c & a).collect();
            current.push(v);
            self.expand(current, next)?;
            current.pop();
            cand[v / 64] &= !(1 << (v % 64));
        }
        Ok(())
    }
}
