//! JSON shapes shared by the CLI and the C interface.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::capacity::CapacityEstimate;
use crate::cluster::GenFun;
use crate::error::{Error, Result};
use crate::exactalg::IntPoly;
use crate::nonoverlap::{BoundReport, CodeSet};

/// `{"T": [...], "S": [...], "q": q, "ellF": ℓ}`, coefficients lowest degree
/// first as decimal strings. `ellF` is `null` for the empty set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenFunJson {
    #[serde(rename = "T")]
    pub t: Vec<String>,
    #[serde(rename = "S")]
    pub s: Vec<String>,
    pub q: usize,
    #[serde(rename = "ellF")]
    pub ell: Option<usize>,
}

fn coeff_strings(p: &IntPoly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".into()];
    }
    p.coeffs().iter().map(BigInt::to_string).collect()
}

fn parse_coeffs(v: &[String]) -> Result<IntPoly> {
    v.iter()
        .map(|c| {
            c.parse::<BigInt>()
                .map_err(|_| Error::input(format!("bad coefficient {c:?}")))
        })
        .collect::<Result<Vec<_>>>()
        .map(IntPoly::new)
}

impl From<&GenFun> for GenFunJson {
    fn from(f: &GenFun) -> Self {
        GenFunJson {
            t: coeff_strings(f.t()),
            s: coeff_strings(f.s()),
            q: f.q(),
            ell: f.ell(),
        }
    }
}

impl GenFunJson {
    pub fn to_genfun(&self) -> Result<GenFun> {
        GenFun::new(
            parse_coeffs(&self.t)?,
            parse_coeffs(&self.s)?,
            self.q,
            self.ell,
        )
    }
}

pub fn genfun_to_json(f: &GenFun) -> String {
    serde_json::to_string(&GenFunJson::from(f)).expect("plain data serializes")
}

/// Parses and canonicalizes; canonical input re-emits byte for byte.
pub fn genfun_from_json(text: &str) -> Result<GenFun> {
    serde_json::from_str::<GenFunJson>(text)
        .map_err(|e| Error::input(format!("bad generating function JSON: {e}")))?
        .to_genfun()
}

/// `r` in fixed point with `digits` fractional digits, rounded down
/// (`up = false`) or up (`up = true`).
pub fn decimal(r: &BigRational, digits: usize, up: bool) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r * BigRational::from_integer(scale.clone());
    let n = if up { scaled.ceil() } else { scaled.floor() }.to_integer();
    let (int, frac) = n.abs().div_mod_floor(&scale);
    let sign = if n.is_negative() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{frac:0>digits$}")
}

/// Fractional digits used for root endpoints.
pub const ROOT_DIGITS: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub capacity: f64,
    pub eps: f64,
    /// Rounded outward, so the root stays inside.
    pub x0: [String; 2],
    pub method: String,
}

impl From<&CapacityEstimate> for CapacityReport {
    fn from(est: &CapacityEstimate) -> Self {
        CapacityReport {
            capacity: est.value,
            eps: est.eps,
            x0: [
                decimal(&est.x0.lo, ROOT_DIGITS, false),
                decimal(&est.x0.hi, ROOT_DIGITS, true),
            ],
            method: est.method.as_str().into(),
        }
    }
}

impl CapacityReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchJson {
    pub size: usize,
    pub witness: Vec<String>,
    pub min_length: usize,
    pub within_bound: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundJson {
    pub q: usize,
    pub n: usize,
    /// Exact value as `num/den` (or an integer).
    pub bound: String,
    pub bound_decimal: f64,
    pub floor: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchJson>,
}

impl BoundJson {
    pub fn new(report: &BoundReport, search: Option<(usize, &CodeSet, usize)>) -> Self {
        BoundJson {
            q: report.q,
            n: report.n,
            bound: report.bound.to_string(),
            bound_decimal: report.bound.to_f64().unwrap_or(f64::NAN),
            floor: report.floor.to_string(),
            search: search.map(|(size, witness, min_length)| SearchJson {
                size,
                witness: witness.formatted(),
                min_length,
                within_bound: BigInt::from(size) <= report.floor,
            }),
        }
    }
}

/// One count row as `{"n": n, "count": "..."}`.
pub fn count_row_json(n: usize, count: &BigInt) -> String {
    serde_json::json!({ "n": n, "count": count.to_string() }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genfun_round_trip() {
        let f = GenFun::new(
            IntPoly::from_i64(&[1, 1, 1, 1, 1, 2]),
            IntPoly::from_i64(&[1, -1, -1, -1, -1]),
            2,
            Some(6),
        )
        .unwrap();
        let text = genfun_to_json(&f);
        assert_eq!(
            text,
            r#"{"T":["1","1","1","1","1","2"],"S":["1","-1","-1","-1","-1"],"q":2,"ellF":6}"#
        );
        assert_eq!(genfun_to_json(&genfun_from_json(&text).unwrap()), text);
    }

    #[test]
    fn genfun_json_canonicalizes() {
        let f =
            genfun_from_json(r#"{"T":["2","2"],"S":["2","-2","-2"],"q":2,"ellF":null}"#).unwrap();
        assert_eq!(
            genfun_to_json(&f),
            r#"{"T":["1","1"],"S":["1","-1","-1"],"q":2,"ellF":null}"#
        );
        assert!(genfun_from_json(r#"{"T":["x"],"S":["1"],"q":2,"ellF":null}"#).is_err());
        assert!(genfun_from_json(r#"{"T":["1"],"S":["0"],"q":2,"ellF":null}"#).is_err());
    }

    #[test]
    fn decimals() {
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(decimal(&third, 4, false), "0.3333");
        assert_eq!(decimal(&third, 4, true), "0.3334");
        assert_eq!(
            decimal(&BigRational::from_integer(2.into()), 2, true),
            "2.00"
        );
        assert_eq!(decimal(&-third, 2, false), "-0.34");
        assert_eq!(
            decimal(&BigRational::new(5.into(), 2.into()), 0, false),
            "2"
        );
    }
}
