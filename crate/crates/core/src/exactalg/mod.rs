//! Exact univariate algebra over ℤ and ℚ: polynomials, gcds, canonical
//! rational functions, fraction-free determinants and certified real-root
//! isolation. Nothing here touches floating point.

mod matrix;
mod poly;
mod ratfun;
mod roots;

pub use matrix::PolyMatrix;
pub use poly::{poly_gcd, primitive_gcd, squarefree_part, IntPoly, RatPoly};
pub use ratfun::{ratfun_canonicalize, RationalFunction};
pub use roots::{cauchy_bound, smallest_positive_root, RootInterval, SturmChain};
