use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Square matrix of integer polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<IntPoly>,
}

impl PolyMatrix {
    pub fn new(rows: Vec<Vec<IntPoly>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::input("polynomial matrix must be at least 1x1"));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::input("polynomial matrix must be square"));
        }
        Ok(PolyMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> IntPoly) -> Result<Self> {
        if dim == 0 {
            return Err(Error::input("polynomial matrix must be at least 1x1"));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Ok(PolyMatrix { dim, entries })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        PolyMatrix::from_fn(dim, |i, j| {
            if i == j {
                IntPoly::one()
            } else {
                IntPoly::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &IntPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: IntPoly) {
        self.entries[i * self.dim + j] = value;
    }

    pub fn transpose(&self) -> PolyMatrix {
        let n = self.dim;
        PolyMatrix {
            dim: n,
            entries: (0..n * n)
                .map(|k| self.entries[(k % n) * n + k / n].clone())
                .collect(),
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination. Every division is
    /// exact by Sylvester's identity; a remainder means a bug and surfaces as
    /// [`Error::Internal`].
    pub fn bareiss_det(&self) -> Result<IntPoly> {
        let n = self.dim;
        let mut m: Vec<Vec<IntPoly>> = self.entries.chunks(n).map(<[_]>::to_vec).collect();
        let mut negate = false;
        let mut prev = IntPoly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(pivot) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return Ok(IntPoly::zero());
                };
                m.swap(k, pivot);
                negate = !negate;
            }
            let (top, bottom) = m.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in bottom.iter_mut() {
                for j in k + 1..n {
                    let cross = &(&row[j] * &pivot_row[k]) - &(&row[k] * &pivot_row[j]);
                    row[j] = cross.exact_div(&prev)?;
                }
                row[k] = IntPoly::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }
}
