//! Homology and Borel cohomology read off from a decomposition.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DimTable, Window};
use crate::m2algebra::{Bidegree, Decomposition, M2Monomial, StandardSummand};

/// A summand of RO(C₂)-graded homology. The dual of 𝕄₂ is 𝕄₂ reflected
/// through the origin, with ρ of degree (−1,−1) and τ of degree (0,−1); the
/// dual of A_n occupies the same strip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum DualSummand {
    #[serde(rename = "M2*")]
    FreeDual { p: i64, q: i64 },
    #[serde(rename = "A*")]
    AntipodalDual { r: i64, n: u32 },
}

impl DualSummand {
    pub fn present(&self, b: Bidegree) -> bool {
        match *self {
            DualSummand::FreeDual { p, q } => M2Monomial::at(Bidegree::new(p - b.p, q - b.q)).is_some(),
            DualSummand::AntipodalDual { r, n } => r <= b.p && b.p <= r + n as i64,
        }
    }
}

impl fmt::Display for DualSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DualSummand::FreeDual { p, q } => write!(f, "Σ_{{{p},{q}}}M2*"),
            DualSummand::AntipodalDual { r, n } => write!(f, "Σ_{{{r},0}}A_{n}*"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DualDecomposition {
    pub summands: Vec<DualSummand>,
}

impl fmt::Display for DualDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

pub fn dualize(d: &Decomposition) -> DualDecomposition {
    let mut summands: Vec<DualSummand> = d
        .summands()
        .iter()
        .map(|&s| match s {
            StandardSummand::Free { p, q } => DualSummand::FreeDual { p, q },
            StandardSummand::Antipodal { r, n } => DualSummand::AntipodalDual { r, n },
        })
        .collect();
    summands.sort();
    DualDecomposition { summands }
}

/// dim H_{p,q} on a window.
pub fn homology_dims(d: &DualDecomposition, window: Window) -> DimTable {
    let mut t = DimTable::zeros(window);
    for b in window.bidegrees() {
        t.set(b, d.summands.iter().filter(|s| s.present(b)).count());
    }
    t
}

/// A cyclic summand of Borel cohomology as a module over F₂[x], |x| = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum BorelSummand {
    /// Σʳ F₂[x].
    FreePoly { r: i64 },
    /// Σʳ F₂[x]/(xˡ).
    TorsionPoly { r: i64, len: u32 },
}

impl fmt::Display for BorelSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BorelSummand::FreePoly { r } => write!(f, "Σ^{r}F2[x]"),
            BorelSummand::TorsionPoly { r, len } => write!(f, "Σ^{r}F2[x]/(x^{len})"),
        }
    }
}

pub fn borel(d: &Decomposition) -> Vec<BorelSummand> {
    let mut out: Vec<BorelSummand> = d
        .summands()
        .iter()
        .map(|&s| match s {
            StandardSummand::Free { p, .. } => BorelSummand::FreePoly { r: p },
            StandardSummand::Antipodal { r, n } => BorelSummand::TorsionPoly { r, len: n + 1 },
        })
        .collect();
    out.sort();
    out
}

/// dim H^k of the Borel summands for k in `0..=top`.
pub fn borel_dims(summands: &[BorelSummand], top: i64) -> Vec<usize> {
    (0..=top)
        .map(|k| {
            summands
                .iter()
                .filter(|s| match **s {
                    BorelSummand::FreePoly { r } => k >= r,
                    BorelSummand::TorsionPoly { r, len } => r <= k && k < r + len as i64,
                })
                .count()
        })
        .collect()
}
