//! Capacities `cap(F) = log_q(1/x0)` with a guaranteed error, where `x0` is
//! the smallest positive root of the denominator of `f_F`.

use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cluster::GenFun;
use crate::error::{Error, Result};
use crate::exactalg::{smallest_positive_root, squarefree_part, IntPoly, RatPoly, RootInterval};
use crate::spectral::DeBruijnGraph;
use crate::words::ForbiddenSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Cluster,
    Spectral,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Cluster => "cluster",
            Method::Spectral => "spectral",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `value` is within `eps` of the true capacity; `x0` encloses the root.
#[derive(Clone, Debug)]
pub struct CapacityEstimate {
    pub x0: RootInterval,
    pub value: f64,
    pub eps: f64,
    pub method: Method,
}

/// Root tolerance `eps / (2 q ln q)`: if `|x − x0|` is below it, `log_q(1/x)`
/// is within `eps` of `log_q(1/x0)` because `x0 >= 1/q`.
pub fn root_tolerance(q: usize, eps: f64) -> Result<BigRational> {
    let tol = eps / (2.0 * q as f64 * (q as f64).ln());
    BigRational::from_float(tol)
        .filter(Signed::is_positive)
        .ok_or_else(|| Error::input(format!("cannot derive a root tolerance from eps = {eps}")))
}

fn check_args(q: usize, eps: f64) -> Result<()> {
    if q < 2 {
        return Err(Error::input(
            "capacity needs an alphabet of at least two symbols",
        ));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::input(format!("eps must lie in (0, 1), got {eps}")));
    }
    Ok(())
}

/// Capacity from the cluster generating function.
pub fn capacity(f: &GenFun, eps: f64) -> Result<CapacityEstimate> {
    check_args(f.q(), eps)?;
    if f.is_polynomial() {
        return Err(Error::Degenerate(
            "only finitely many strings avoid F, so the capacity is undefined".into(),
        ));
    }
    from_denominator(f.s(), f.q(), eps, Method::Cluster)
}

/// Capacity as `log_q λ(G_F)`, from `det(I − xA)`.
pub fn capacity_spectral(set: &ForbiddenSet, eps: f64) -> Result<CapacityEstimate> {
    check_args(set.q(), eps)?;
    if set.is_empty() {
        return Ok(CapacityEstimate {
            x0: RootInterval {
                lo: BigRational::new(1.into(), BigInt::from(set.q())),
                hi: BigRational::new(1.into(), BigInt::from(set.q())),
            },
            value: 1.0,
            eps: 0.0,
            method: Method::Spectral,
        });
    }
    let graph = DeBruijnGraph::build(set)?;
    if graph.is_acyclic() {
        return Err(Error::Degenerate(
            "the de Bruijn graph has no cycle, so the capacity is undefined".into(),
        ));
    }
    let (det, _) = graph.det_polys()?;
    from_denominator(&det, set.q(), eps, Method::Spectral)
}

/// Isolates the smallest positive root of `den` in `(0, 1]` and turns it into
/// a capacity. The error bound is recomputed from the exact endpoints, and
/// the interval is refined until that bound is at most `eps`.
fn from_denominator(den: &IntPoly, q: usize, eps: f64, method: Method) -> Result<CapacityEstimate> {
    let ln_q = (q as f64).ln();
    let mut tol = root_tolerance(q, eps)?;
    let mut window = RootInterval {
        lo: BigRational::zero(),
        hi: BigRational::one(),
    };
    loop {
        let x0 = match smallest_positive_root(den, &tol, Some(&window)) {
            Err(Error::NoRoot(msg)) => {
                return Err(Error::internal(format!(
                    "denominator of a nondegenerate constraint has no root in (0, 1]: {msg}"
                )))
            }
            r => r?,
        };
        let lo = x0.lo.to_f64().unwrap_or(0.0);
        let mid = x0.midpoint().to_f64().unwrap_or(f64::NAN);
        // log_q(1/x) over [lo, hi] spans ln(hi/lo)/ln q = ln(1 + (hi−lo)/lo)/ln q.
        let rel = (x0.width() / &x0.lo).to_f64().unwrap_or(f64::INFINITY);
        let spread = rel.ln_1p() / ln_q;
        // Outward rounding for the float evaluations of ln and the midpoint.
        let err = spread * (1.0 + 1e-12) + 4.0 * f64::EPSILON;
        if lo > 0.0 && err <= eps {
            // `+ 0.0` maps the -0 from ln(1) to 0.
            let value = (-mid.ln() / ln_q).clamp(0.0, 1.0) + 0.0;
            return Ok(CapacityEstimate {
                x0,
                value,
                eps: err,
                method,
            });
        }
        tol /= BigRational::from_integer(16.into());
        window = x0;
    }
}

/// `CM(h)`: ones on the subdiagonal and `−a_0, …, −a_{n−1}` in the last
/// column, so that `h` is its characteristic polynomial.
pub fn companion_matrix(h: &RatPoly) -> Result<Vec<Vec<BigRational>>> {
    let n = match h.degree() {
        Some(d) if d >= 1 && h.is_monic() => d,
        _ => {
            return Err(Error::input(
                "companion matrix needs a monic polynomial of degree >= 1",
            ))
        }
    };
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        if i > 0 {
            row[i - 1] = BigRational::one();
        }
        row[n - 1] = -h.coeffs()[i].clone();
    }
    Ok(m)
}

/// Distinct positive real roots of `p` as eigenvalues of the companion
/// matrix of its square-free part, by the QR-based Schur decomposition in
/// floating point. No error guarantee; used only to cross-check the certified
/// route. Multiple roots would otherwise scatter into complex clusters.
pub fn companion_positive_roots(p: &IntPoly) -> Result<Vec<f64>> {
    if p.is_zero() {
        return Err(Error::input("the zero polynomial has no isolated roots"));
    }
    let p = squarefree_part(&p.unshift(p.valuation()))?;
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let cm = companion_matrix(&p.to_rat().monic()?)?;
    let n = cm.len();
    let dm = DMatrix::from_fn(n, n, |i, j| cm[i][j].to_f64().unwrap_or(f64::NAN));
    let mut roots: Vec<f64> = dm
        .complex_eigenvalues()
        .iter()
        .filter(|z| z.im.abs() <= 1e-9 * z.re.abs().max(1.0) && z.re > 0.0)
        .map(|z| z.re)
        .collect();
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

/// Upper bound `1 − (q−1)² log_q(e) / (2 q^{ℓ−p+3})` on `cap(LPA(ℓ, p))`.
pub fn lpa_capacity_bound(q: usize, ell: usize, p: usize) -> Result<f64> {
    if q < 2 || p < 2 || ell < p {
        return Err(Error::input(format!(
            "LPA bound needs q >= 2 and ell >= p >= 2, got q={q}, ell={ell}, p={p}"
        )));
    }
    let qf = q as f64;
    let exp = i32::try_from(ell - p + 3).map_err(|_| Error::input("ell - p is too large"))?;
    Ok(1.0 - (qf - 1.0).powi(2) / qf.ln() / (2.0 * qf.powi(exp)))
}
