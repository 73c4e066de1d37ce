//! Cross-checks of one forbidden set: cluster counts against brute force and
//! de Bruijn walks, the spectral identity, capacity agreement between the two
//! methods, the degree bound and JSON round-tripping.

use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::capacity::{capacity, capacity_spectral};
use crate::cluster::{cluster_genfun, GenFun};
use crate::error::{Error, Result};
use crate::report::{genfun_from_json, genfun_to_json};
use crate::series::{brute_force_counts, count_range};
use crate::spectral::{verify_thm4, DeBruijnGraph};
use crate::words::ForbiddenSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub check: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(check: &'static str, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            check,
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn skip(check: &'static str, detail: impl Into<String>) -> Self {
        Check {
            check,
            status: Status::Skip,
            detail: detail.into(),
        }
    }

    /// Resource trips become skips; anything else is a failure.
    fn from_error(check: &'static str, e: &Error) -> Self {
        match e {
            Error::Resource(_) => Check::skip(check, e.to_string()),
            _ => Check::new(check, false, e.to_string()),
        }
    }
}

/// Capacity tolerance for the cross-method check.
pub const BRIDGE_EPS: f64 = 1e-9;

/// Runs every check on a reduced set, comparing counts for `n <= n_max`.
pub fn verify_set(set: &ForbiddenSet, n_max: usize, budget: u128) -> Result<Vec<Check>> {
    let (_, f) = cluster_genfun(set)?;
    let counts = count_range(&f, n_max)?;
    let mut checks = Vec::new();

    checks.push(match brute_force_counts(set, n_max, budget) {
        Ok(brute) => {
            let bad = (0..=n_max).find(|&n| brute[n] != counts[n]);
            Check::new(
                "oracle",
                bad.is_none(),
                match bad {
                    None => format!("cluster counts equal brute force for n <= {n_max}"),
                    Some(n) => {
                        format!("n = {n}: cluster {} vs brute force {}", counts[n], brute[n])
                    }
                },
            )
        }
        Err(e) => Check::from_error("oracle", &e),
    });

    let graph = if set.is_empty() {
        None
    } else {
        Some(DeBruijnGraph::build(set))
    };
    checks.push(match &graph {
        None => Check::skip("walk", "no de Bruijn graph for the empty set"),
        Some(Err(e)) => Check::from_error("walk", e),
        Some(Ok(g)) => {
            let mut bad = None;
            for (n, c) in counts.iter().enumerate().skip(g.ell()) {
                let w = g.walk_count(n)?;
                if &w != c {
                    bad = Some(format!("n = {n}: cluster {c} vs walks {w}"));
                    break;
                }
            }
            let range = format!("{} <= n <= {n_max}", g.ell());
            Check::new(
                "walk",
                bad.is_none(),
                bad.unwrap_or(format!("walk counts equal cluster counts for {range}")),
            )
        }
    });

    checks.push(degree_check(set, &f));

    checks.push(if set.is_empty() {
        Check::skip("identity", "no de Bruijn graph for the empty set")
    } else {
        match verify_thm4(set, &f) {
            Ok(ok) => Check::new(
                "identity",
                ok,
                if ok {
                    "f = h - x^l det(I - xA - J) / det(I - xA) holds exactly"
                } else {
                    "f differs from the de Bruijn expression"
                },
            ),
            Err(e) => Check::from_error("identity", &e),
        }
    });

    checks.push(bridge_check(set, &f));

    let json = genfun_to_json(&f);
    checks.push(match genfun_from_json(&json) {
        Ok(back) => Check::new(
            "roundtrip",
            genfun_to_json(&back) == json && back == f,
            "generating function JSON re-emits byte for byte",
        ),
        Err(e) => Check::new("roundtrip", false, e.to_string()),
    });
    Ok(checks)
}

fn degree_check(set: &ForbiddenSet, f: &GenFun) -> Check {
    let Some(ell) = set.ell() else {
        return Check::skip("degree", "no bound for the empty set");
    };
    let bound = set.len() * ell;
    let dt = f.t().degree().unwrap_or(0);
    let ds = f.s().degree().unwrap_or(0);
    Check::new(
        "degree",
        dt <= bound && ds <= bound,
        format!("deg T = {dt}, deg S = {ds}, |F| l(F) = {bound}"),
    )
}

fn bridge_check(set: &ForbiddenSet, f: &GenFun) -> Check {
    if set.q() < 2 {
        return Check::skip("bridge", "capacity needs q >= 2");
    }
    let cluster = capacity(f, BRIDGE_EPS);
    let spectral = capacity_spectral(set, BRIDGE_EPS);
    match (cluster, spectral) {
        (Ok(c), Ok(s)) => {
            let diff = (c.value - s.value).abs();
            let gap = if c.x0.hi < s.x0.lo {
                (&s.x0.lo - &c.x0.hi).to_f64().unwrap_or(f64::INFINITY)
            } else if s.x0.hi < c.x0.lo {
                (&c.x0.lo - &s.x0.hi).to_f64().unwrap_or(f64::INFINITY)
            } else {
                0.0
            };
            Check::new(
                "bridge",
                diff <= 2.0 * BRIDGE_EPS && gap <= 1e-9,
                format!(
                    "cluster {:.12} vs spectral {:.12} (|diff| = {diff:.1e}, root gap {gap:.1e})",
                    c.value, s.value
                ),
            )
        }
        (Err(Error::Degenerate(_)), Err(Error::Degenerate(_))) => Check::new(
            "bridge",
            true,
            "both methods report a degenerate constraint",
        ),
        (Err(e), _) | (_, Err(e)) if matches!(e, Error::Resource(_)) => {
            Check::from_error("bridge", &e)
        }
        (c, s) => Check::new(
            "bridge",
            false,
            format!(
                "methods disagree: cluster {}, spectral {}",
                c.map_or_else(|e| e.to_string(), |c| c.value.to_string()),
                s.map_or_else(|e| e.to_string(), |s| s.value.to_string())
            ),
        ),
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.status != Status::Fail)
}
