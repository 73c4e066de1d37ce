//! JSON constraint specifications.
//!
//! ```json
//! {"q": 2, "forbidden": ["11", "0000"]}
//! {"q": 2, "family": {"name": "LPA", "ell": 6, "p": 3}}
//! {"q": 2, "combine": [{"family": {"name": "LB", "ell": 6, "delta": 1}},
//!                      {"family": {"name": "PA", "ell": 6}},
//!                      {"forbidden": ["11", "0000"]}]}
//! ```
//!
//! All parts are united and the union is reduced.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{family_members, Alphabet, Family, ForbiddenSet, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintSpec {
    pub q: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbols: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub combine: Option<Vec<Part>>,
}

/// One entry of `combine`: exactly one of `forbidden` or `family`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Part {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub forbidden: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
}

impl ConstraintSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("bad constraint spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// A spec listing the words of `set` explicitly.
    pub fn from_set(set: &ForbiddenSet) -> Self {
        let alphabet = set.alphabet();
        ConstraintSpec {
            q: alphabet.size(),
            symbols: (!alphabet.is_default()).then(|| alphabet.symbols().to_vec()),
            forbidden: Some(set.formatted()),
            family: None,
            combine: None,
        }
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        match &self.symbols {
            None => Alphabet::with_size(self.q),
            Some(symbols) if symbols.len() == self.q => Alphabet::new(symbols.iter().cloned()),
            Some(symbols) => Err(Error::input(format!(
                "q = {} but {} symbols were listed",
                self.q,
                symbols.len()
            ))),
        }
    }

    /// The reduced union of every part.
    pub fn resolve(&self) -> Result<ForbiddenSet> {
        if self.forbidden.is_some() && self.family.is_some() {
            return Err(Error::input(
                "give either `forbidden` or `family`, not both",
            ));
        }
        if self.forbidden.is_none() && self.family.is_none() && self.combine.is_none() {
            return Err(Error::input(
                "the spec needs `forbidden`, `family` or `combine`",
            ));
        }
        let alphabet = self.alphabet()?;
        let mut words = Vec::new();
        collect(
            &alphabet,
            self.forbidden.as_deref(),
            self.family.as_ref(),
            &mut words,
        )?;
        for part in self.combine.iter().flatten() {
            if part.forbidden.is_some() == part.family.is_some() {
                return Err(Error::input(
                    "each `combine` entry needs exactly one of `forbidden` or `family`",
                ));
            }
            collect(
                &alphabet,
                part.forbidden.as_deref(),
                part.family.as_ref(),
                &mut words,
            )?;
        }
        ForbiddenSet::new(alphabet, words)?.reduce()
    }
}

fn collect(
    alphabet: &Alphabet,
    forbidden: Option<&[String]>,
    family: Option<&Family>,
    out: &mut Vec<Word>,
) -> Result<()> {
    for w in forbidden.into_iter().flatten() {
        out.push(alphabet.parse_word(w)?);
    }
    if let Some(family) = family {
        let members = family_members(family, alphabet.size())?;
        // Family generators use symbols 0..q; the alphabet only names them.
        out.extend(members);
    }
    Ok(())
}
