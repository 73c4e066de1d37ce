//! The de Bruijn graph of `F`-free words of length `ℓ(F)` and the spectral
//! side of the theory: walk counts, `det(I − xA)`, the spectral radius and a
//! polynomial identity tying the graph to the cluster generating function.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::cluster::GenFun;
use crate::error::{Error, Result};
use crate::exactalg::{smallest_positive_root, IntPoly, PolyMatrix, RootInterval};
use crate::series::{brute_force_counts, DEFAULT_BRUTE_FORCE_BUDGET};
use crate::words::{ForbiddenSet, Symbol, Word};

/// Largest `ℓ(F)·log2(q)` for which the graph is built: at most 2^12
/// candidate words and a dense adjacency of at most 16M entries.
pub const MAX_GRAPH_BITS: f64 = 12.0;

/// `G_F`: vertices are the `F`-free words of length `ℓ`, in lexicographic
/// order; `ω1 → ω2` iff `ω1` without its first symbol equals `ω2` without its
/// last.
#[derive(Clone, Debug)]
pub struct DeBruijnGraph {
    ell: usize,
    q: usize,
    vertices: Vec<Word>,
    // Dense m×m row-major 0/1 adjacency.
    adjacency: Vec<u8>,
    succ: Vec<Vec<usize>>,
}

impl DeBruijnGraph {
    pub fn build(set: &ForbiddenSet) -> Result<Self> {
        set.require_reduced()?;
        let Some(ell) = set.ell() else {
            return Err(Error::input(
                "the de Bruijn graph needs a nonempty forbidden set",
            ));
        };
        let q = set.q();
        let bits = ell as f64 * (q as f64).log2();
        if bits > MAX_GRAPH_BITS {
            return Err(Error::Resource(format!(
                "de Bruijn graph over {q}^{ell} words is above the size cap of 2^{MAX_GRAPH_BITS}"
            )));
        }
        // Base-q odometer in lexicographic order.
        let mut vertices = Vec::new();
        let mut digits: Vec<Symbol> = vec![0; ell];
        loop {
            if set.avoids(&digits) {
                vertices.push(Word::new(digits.clone()));
            }
            let Some(pos) = digits.iter().rposition(|&d| (d as usize) < q - 1) else {
                break;
            };
            digits[pos] += 1;
            digits[pos + 1..].fill(0);
        }
        let index: HashMap<&[Symbol], usize> = vertices
            .iter()
            .enumerate()
            .map(|(i, w)| (w.letters(), i))
            .collect();
        let m = vertices.len();
        let mut adjacency = vec![0u8; m * m];
        let mut succ = vec![Vec::new(); m];
        let mut next: Vec<Symbol> = vec![0; ell];
        for (i, w) in vertices.iter().enumerate() {
            next[..ell - 1].copy_from_slice(&w[1..]);
            for s in 0..q {
                next[ell - 1] = s as Symbol;
                if let Some(&j) = index.get(next.as_slice()) {
                    adjacency[i * m + j] = 1;
                    succ[i].push(j);
                }
            }
        }
        Ok(DeBruijnGraph {
            ell,
            q,
            vertices,
            adjacency,
            succ,
        })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Entry `(i, j)` of the adjacency matrix.
    pub fn edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.size() + j] == 1
    }

    pub fn successors(&self, i: usize) -> &[usize] {
        &self.succ[i]
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// Sum of all entries of `A^(n − ℓ)`, which is `N_F(n)` for `n >= ℓ`.
    pub fn walk_count(&self, n: usize) -> Result<BigInt> {
        if n < self.ell {
            return Err(Error::input(format!(
                "walk counts give N(n) only for n >= {}",
                self.ell
            )));
        }
        // v = A^k · 1, so 1ᵀ v is the entry sum of A^k.
        let mut v = vec![BigInt::one(); self.size()];
        for _ in self.ell..n {
            v = self
                .succ
                .iter()
                .map(|js| js.iter().map(|&j| &v[j]).sum())
                .collect();
        }
        Ok(v.into_iter().sum())
    }

    /// True if the graph has no vertices or no cycle, i.e. only finitely many
    /// strings avoid `F`.
    pub fn is_acyclic(&self) -> bool {
        let m = self.size();
        let mut indeg = vec![0usize; m];
        for js in &self.succ {
            for &j in js {
                indeg[j] += 1;
            }
        }
        let mut stack: Vec<usize> = (0..m).filter(|&i| indeg[i] == 0).collect();
        let mut removed = 0;
        while let Some(i) = stack.pop() {
            removed += 1;
            for &j in &self.succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    stack.push(j);
                }
            }
        }
        removed == m
    }

    /// `(det(I − xA), det(I − xA − J))`, with `J` the all-ones matrix.
    ///
    /// Vertices with identical out-neighbourhoods are merged first (state
    /// amalgamation). If `A = DE` with `D` the class indicator, then
    /// `det(I_m − xA − 1bᵀ) = det(I_k − xED − 1(Dᵀb)ᵀ)` by
    /// `det(I − UV) = det(I − VU)`, so both determinants survive the merge
    /// with the all-ones row turning into class sizes.
    pub fn det_polys(&self) -> Result<(IntPoly, IntPoly)> {
        if self.is_empty() {
            return Err(Error::Degenerate(
                "the de Bruijn graph has no vertices".into(),
            ));
        }
        let mut rows: Vec<Vec<(usize, u64)>> = self
            .succ
            .iter()
            .map(|js| js.iter().map(|&j| (j, 1)).collect())
            .collect();
        let mut weights = vec![1u64; rows.len()];
        loop {
            let mut class_of = vec![0usize; rows.len()];
            let mut reps: Vec<usize> = Vec::new();
            let mut seen: HashMap<&[(usize, u64)], usize> = HashMap::new();
            for (i, row) in rows.iter().enumerate() {
                class_of[i] = *seen.entry(row.as_slice()).or_insert_with(|| {
                    reps.push(i);
                    reps.len() - 1
                });
            }
            if reps.len() == rows.len() {
                break;
            }
            let mut new_weights = vec![0u64; reps.len()];
            for (i, &c) in class_of.iter().enumerate() {
                new_weights[c] += weights[i];
            }
            let new_rows = reps
                .iter()
                .map(|&r| {
                    let mut acc: Vec<u64> = vec![0; reps.len()];
                    for &(j, a) in &rows[r] {
                        acc[class_of[j]] += a;
                    }
                    acc.into_iter()
                        .enumerate()
                        .filter(|&(_, a)| a != 0)
                        .collect()
                })
                .collect();
            rows = new_rows;
            weights = new_weights;
        }
        let k = rows.len();
        let mut dense = vec![0u64; k * k];
        for (i, row) in rows.iter().enumerate() {
            for &(j, a) in row {
                dense[i * k + j] = a;
            }
        }
        let entry = |i: usize, j: usize, ones: bool| {
            let diag = i64::from(i == j);
            let a = -(dense[i * k + j] as i64);
            let w = if ones { -(weights[j] as i64) } else { 0 };
            IntPoly::from_i64(&[diag + w, a])
        };
        let d1 = PolyMatrix::from_fn(k, |i, j| entry(i, j, false))?.bareiss_det()?;
        let d2 = PolyMatrix::from_fn(k, |i, j| entry(i, j, true))?.bareiss_det()?;
        Ok((d1, d2))
    }

    /// Same as [`DeBruijnGraph::det_polys`] without the amalgamation step.
    /// Cubic in `m`; kept as an independent route for testing.
    pub fn det_polys_unreduced(&self) -> Result<(IntPoly, IntPoly)> {
        if self.is_empty() {
            return Err(Error::Degenerate(
                "the de Bruijn graph has no vertices".into(),
            ));
        }
        let m = self.size();
        let entry = |i: usize, j: usize, ones: i64| {
            let a = -i64::from(self.adjacency[i * m + j]);
            IntPoly::from_i64(&[i64::from(i == j) - ones, a])
        };
        let d1 = PolyMatrix::from_fn(m, |i, j| entry(i, j, 0))?.bareiss_det()?;
        let d2 = PolyMatrix::from_fn(m, |i, j| entry(i, j, 1))?.bareiss_det()?;
        Ok((d1, d2))
    }

    /// Vertex list and adjacency rows as plain text.
    pub fn dump(&self, set: &ForbiddenSet) -> String {
        let mut out = String::new();
        let alpha = set.alphabet();
        let _ = writeln!(out, "vertices {} edges {}", self.size(), self.edge_count());
        for (i, w) in self.vertices.iter().enumerate() {
            let targets: Vec<String> = self.succ[i]
                .iter()
                .map(|&j| alpha.format_word(&self.vertices[j]))
                .collect();
            let _ = writeln!(out, "{} -> {}", alpha.format_word(w), targets.join(" "));
        }
        out
    }
}

pub fn build_debruijn(set: &ForbiddenSet) -> Result<DeBruijnGraph> {
    DeBruijnGraph::build(set)
}

/// True iff only finitely many strings avoid `F`. The empty set is never
/// degenerate.
pub fn is_degenerate(set: &ForbiddenSet) -> Result<bool> {
    if set.is_empty() {
        return Ok(false);
    }
    Ok(DeBruijnGraph::build(set)?.is_acyclic())
}

/// Decides degeneracy and records the answer on the set.
pub fn check_nondegenerate(set: &mut ForbiddenSet) -> Result<bool> {
    let nondegenerate = !is_degenerate(set)?;
    set.set_nondegenerate(nondegenerate);
    Ok(nondegenerate)
}

/// Certified enclosure of the spectral radius `λ` of `A` together with the
/// root interval of `det(I − xA)` it came from.
#[derive(Clone, Debug)]
pub struct SpectralEstimate {
    pub lambda_lo: BigRational,
    pub lambda_hi: BigRational,
    pub x0: RootInterval,
}

impl SpectralEstimate {
    pub fn midpoint(&self) -> f64 {
        ((&self.lambda_lo + &self.lambda_hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// `λ(A)` to within `tol`, as `1/x0` where `x0` is the smallest positive
/// root of `det(I − xA)`.
pub fn spectral_radius(graph: &DeBruijnGraph, tol: &BigRational) -> Result<SpectralEstimate> {
    if graph.is_acyclic() {
        return Err(Error::Degenerate(
            "the de Bruijn graph has no cycle, so its spectral radius is 0".into(),
        ));
    }
    let (det, _) = graph.det_polys()?;
    let q2 = BigRational::from_integer(BigInt::from(graph.q() * graph.q()));
    let mut x_tol = tol / (q2 * BigRational::from_integer(2.into()));
    let mut hint = None;
    loop {
        let x0 = smallest_positive_root(&det, &x_tol, hint.as_ref())?;
        let lambda_lo = x0.hi.recip();
        let lambda_hi = x0.lo.recip();
        if &(&lambda_hi - &lambda_lo) <= tol {
            return Ok(SpectralEstimate {
                lambda_lo,
                lambda_hi,
                x0,
            });
        }
        x_tol /= BigRational::from_integer(2.into());
        hint = Some(x0);
    }
}

/// `(h_F·d1 − x^ℓ·d2, d1)` with `d1 = det(I − xA)`, `d2 = det(I − xA − J)`
/// and `h_F = Σ_{n<ℓ} N(n) x^n + x^ℓ`. The low counts come from brute force,
/// not from the cluster method.
fn identity_parts(set: &ForbiddenSet) -> Result<(IntPoly, IntPoly)> {
    let Some(ell) = set.ell() else {
        return Err(Error::input("the identity needs a nonempty forbidden set"));
    };
    let mut h = brute_force_counts(set, ell - 1, DEFAULT_BRUTE_FORCE_BUDGET)?;
    h.push(BigInt::one());
    let h = IntPoly::new(h);
    let graph = DeBruijnGraph::build(set)?;
    let (d1, d2) = if graph.is_empty() {
        // Determinants of 0×0 matrices.
        (IntPoly::one(), IntPoly::one())
    } else {
        graph.det_polys()?
    };
    Ok((&(&h * &d1) - &(&IntPoly::x_pow(ell) * &d2), d1))
}

/// Checks `f = h_F − x^ℓ det(I − xA − J) / det(I − xA)` by cross
/// multiplication.
pub fn verify_thm4(set: &ForbiddenSet, f: &GenFun) -> Result<bool> {
    let (num, d1) = identity_parts(set)?;
    Ok(f.t() * &d1 == f.s() * &num)
}

/// The same right-hand side as one canonical generating function.
pub fn spectral_genfun(set: &ForbiddenSet) -> Result<GenFun> {
    let (num, d1) = identity_parts(set)?;
    GenFun::new(num, d1, set.q(), set.ell())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::cluster_genfun;
    use crate::words::{family_generate, Alphabet, Family};

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    fn set(q: usize, words: &[&str]) -> ForbiddenSet {
        ForbiddenSet::with_size(q, words).unwrap()
    }

    #[test]
    fn fibonacci_graph() {
        let g = DeBruijnGraph::build(&set(2, &["11"])).unwrap();
        assert_eq!(
            g.vertices(),
            &[Word::lit("00"), Word::lit("01"), Word::lit("10")]
        );
        let rows: Vec<Vec<bool>> = (0..3)
            .map(|i| (0..3).map(|j| g.edge(i, j)).collect())
            .collect();
        assert_eq!(
            rows,
            vec![
                vec![true, true, false],
                vec![false, false, true],
                vec![true, true, false]
            ]
        );
        assert_eq!(g.walk_count(2).unwrap(), BigInt::from(3));
        assert_eq!(g.walk_count(5).unwrap(), BigInt::from(13));
        assert!(g.walk_count(1).is_err());
        assert_eq!(g.det_polys().unwrap().0, p(&[1, -1, -1]));
        assert_eq!(g.det_polys().unwrap(), g.det_polys_unreduced().unwrap());
    }

    #[test]
    fn all_pairs_forbidden() {
        let f = set(2, &["00", "01", "10", "11"]);
        let g = DeBruijnGraph::build(&f).unwrap();
        assert!(g.is_empty());
        assert!(is_degenerate(&f).unwrap());
        assert!(matches!(g.det_polys(), Err(Error::Degenerate(_))));
        let (_, gf) = cluster_genfun(&f).unwrap();
        assert!(verify_thm4(&f, &gf).unwrap());
    }

    #[test]
    fn degeneracy() {
        let mut f = set(2, &["00", "11"]);
        assert!(check_nondegenerate(&mut f).unwrap());
        assert_eq!(f.nondegenerate(), crate::words::Tri::Yes);
        // Nothing longer than 2 avoids these.
        let mut g = set(2, &["00", "11", "010", "101"]);
        assert!(!check_nondegenerate(&mut g).unwrap());
        assert!(!is_degenerate(&ForbiddenSet::empty(Alphabet::binary())).unwrap());
    }

    #[test]
    fn identity_on_examples() {
        for words in [
            &["11"][..],
            &["00", "111"],
            &["0110", "101"],
            &["010010", "0000", "11"],
        ] {
            let f = set(2, words);
            let (_, gf) = cluster_genfun(&f).unwrap();
            assert!(verify_thm4(&f, &gf).unwrap(), "{words:?}");
            assert_eq!(spectral_genfun(&f).unwrap(), gf);
        }
        let f = family_generate(&Family::Pa { ell: 6 }, &Alphabet::binary()).unwrap();
        let (_, gf) = cluster_genfun(&f).unwrap();
        assert!(verify_thm4(&f, &gf).unwrap());
    }

    #[test]
    fn amalgamation_matches_direct() {
        for words in [&["0110", "101"][..], &["00", "121", "2012"], &["012", "20"]] {
            let q = if words.iter().any(|w| w.contains('2')) {
                3
            } else {
                2
            };
            let g = DeBruijnGraph::build(&set(q, words)).unwrap();
            assert_eq!(
                g.det_polys().unwrap(),
                g.det_polys_unreduced().unwrap(),
                "{words:?}"
            );
        }
    }

    #[test]
    fn golden_ratio_radius() {
        let g = DeBruijnGraph::build(&set(2, &["11"])).unwrap();
        let tol = BigRational::new(1.into(), 1_000_000_000.into());
        let est = spectral_radius(&g, &tol).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(est.lambda_lo.to_f64().unwrap() <= phi + 1e-15);
        assert!(phi - 1e-15 <= est.lambda_hi.to_f64().unwrap());
        assert!(&est.lambda_hi - &est.lambda_lo <= tol);
    }

    #[test]
    fn size_cap() {
        let long = "0".repeat(13) + "1";
        let f = ForbiddenSet::with_size(2, &[long.as_str()]).unwrap();
        assert!(matches!(DeBruijnGraph::build(&f), Err(Error::Resource(_))));
    }

    #[test]
    fn dump_lists_edges() {
        let f = set(2, &["11"]);
        let text = DeBruijnGraph::build(&f).unwrap().dump(&f);
        assert!(text.starts_with("vertices 3 edges 5\n00 -> 00 01\n"));
    }
}
