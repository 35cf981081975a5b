//! Coefficients over pairs of same-shape standard tableaux.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Partition, YoungTableau};
use crate::rational::{self, Coeff};
use crate::{Error, Result};

/// A finite linear combination of tableau pairs `(left, right)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StdExpansion {
    terms: BTreeMap<(YoungTableau, YoungTableau), Coeff>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    left: YoungTableau,
    right: YoungTableau,
    coeff: String,
}

impl StdExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, left: YoungTableau, right: YoungTableau, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let slot = self.terms.entry(key.clone()).or_insert_with(Coeff::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn get(&self, left: &YoungTableau, right: &YoungTableau) -> Coeff {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    pub fn terms(&self) -> &BTreeMap<(YoungTableau, YoungTableau), Coeff> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Shapes that carry a nonzero coefficient.
    pub fn shapes(&self) -> BTreeSet<Partition> {
        self.terms.keys().map(|(l, _)| l.shape().clone()).collect()
    }

    /// Restriction to pairs of a given weight.
    pub fn of_weight(&self, h: usize) -> StdExpansion {
        StdExpansion {
            terms: self
                .terms
                .iter()
                .filter(|((l, _), _)| l.weight() == h)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<TermJson> = self
            .terms
            .iter()
            .map(|((l, r), c)| TermJson {
                left: l.clone(),
                right: r.clone(),
                coeff: rational::to_pq(c),
            })
            .collect();
        serde_json::to_string(&rows).expect("expansion serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let rows: Vec<TermJson> =
            serde_json::from_str(s).map_err(|e| Error::Parse(format!("expansion JSON: {e}")))?;
        let mut out = StdExpansion::new();
        for t in rows {
            if t.left.shape() != t.right.shape() {
                return Err(Error::InvalidTableau(format!(
                    "pair {} | {} has unequal shapes",
                    t.left, t.right
                )));
            }
            out.add(t.left, t.right, rational::parse(&t.coeff)?);
        }
        Ok(out)
    }

    /// One `coeff left | right` line per term; `0` when empty.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|((l, r), c)| format!("{} {} | {}", rational::to_short(c), l, r))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for StdExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
