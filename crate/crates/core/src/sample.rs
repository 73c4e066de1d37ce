//! Seeded random instances for the property suites and `verify --random`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::nonoverlap::{is_nonoverlapping, CodeSet};
use crate::words::{Alphabet, ForbiddenSet, Symbol, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_word(rng: &mut impl Rng, q: usize, lo: usize, hi: usize) -> Word {
    let len = rng.gen_range(lo..=hi);
    Word::new((0..len).map(|_| rng.gen_range(0..q) as Symbol).collect())
}

/// A reduced set over `q ∈ {2, 3}` with 1 to `max_size` words of lengths
/// 2 to `max_len`. Reduction may drop words, never below one.
pub fn random_forbidden_set(rng: &mut impl Rng, max_size: usize, max_len: usize) -> ForbiddenSet {
    let q = *[2, 3].choose(rng).expect("nonempty");
    let alphabet = Alphabet::with_size(q).expect("small q");
    let size = rng.gen_range(1..=max_size);
    let words: Vec<Word> = (0..size).map(|_| random_word(rng, q, 2, max_len)).collect();
    ForbiddenSet::new(alphabet, words)
        .and_then(|f| f.reduce())
        .expect("words of length >= 2 reduce cleanly")
}

/// A non-overlapping code over `q ∈ {2, 3}` with words of lengths 2 to
/// `max_len`, grown greedily from random proposals. May be empty.
pub fn random_nonoverlapping_code(rng: &mut impl Rng, max_size: usize, max_len: usize) -> CodeSet {
    let q = *[2, 3].choose(rng).expect("nonempty");
    let alphabet = Alphabet::with_size(q).expect("small q");
    let target = rng.gen_range(1..=max_size);
    let mut words: Vec<Word> = Vec::new();
    for _ in 0..200 {
        if words.len() == target {
            break;
        }
        let w = random_word(rng, q, 2, max_len);
        let mut trial = words.clone();
        trial.push(w);
        let code = CodeSet::new(alphabet.clone(), trial.clone()).expect("valid words");
        if code.len() == trial.len() && is_nonoverlapping(&code) {
            words = trial;
        }
    }
    CodeSet::new(alphabet, words).expect("valid words")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_and_reduced() {
        let a: Vec<_> = (0..20)
            .map(|_| random_forbidden_set(&mut rng(7), 6, 6))
            .collect();
        let b: Vec<_> = (0..20)
            .map(|_| random_forbidden_set(&mut rng(7), 6, 6))
            .collect();
        assert_eq!(a, b);
        let mut r = rng(1);
        for _ in 0..100 {
            let f = random_forbidden_set(&mut r, 6, 6);
            assert!(f.is_reduced() && !f.is_empty() && f.len() <= 6);
            assert!(f.ell().unwrap() <= 6);
        }
    }

    #[test]
    fn codes_are_nonoverlapping() {
        let mut r = rng(3);
        for _ in 0..50 {
            let c = random_nonoverlapping_code(&mut r, 4, 6);
            assert!(is_nonoverlapping(&c));
            assert!(c.words().iter().all(|w| w.len() >= 2));
        }
    }
}
