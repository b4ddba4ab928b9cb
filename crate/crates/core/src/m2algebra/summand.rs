use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Bidegree, M2Monomial};

/// A shifted copy of 𝕄₂ or of A_n.
///
/// Antipodal summands carry no weight shift: τ is invertible on A_n, so
/// Σ^{r,q}A_n ≅ Σ^{r,0}A_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum StandardSummand {
    /// Σ^{p,q}𝕄₂.
    #[serde(rename = "M2")]
    Free { p: i64, q: i64 },
    /// Σ^{r,0}A_n, a strip of width n+1 starting at topological dimension r.
    #[serde(rename = "A")]
    Antipodal { r: i64, n: u32 },
}

impl StandardSummand {
    pub fn free(p: i64, q: i64) -> Self {
        StandardSummand::Free { p, q }
    }

    pub fn antipodal(r: i64, n: u32) -> Self {
        StandardSummand::Antipodal { r, n }
    }

    pub fn is_free(&self) -> bool {
        matches!(self, StandardSummand::Free { .. })
    }

    /// Largest topological dimension that carries a generator or strip end.
    pub fn top(&self) -> i64 {
        match *self {
            StandardSummand::Free { p, .. } => p,
            StandardSummand::Antipodal { r, n } => r + n as i64,
        }
    }
}

impl fmt::Display for StandardSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            StandardSummand::Free { p, q } => write!(f, "Σ^{{{p},{q}}}M2"),
            StandardSummand::Antipodal { r, n } => write!(f, "Σ^{{{r},0}}A_{n}"),
        }
    }
}

/// Closed-form data of one summand at one bidegree: whether it is nonzero
/// there and whether ρ, τ, θ act nontrivially on that element.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SummandData {
    pub dim: bool,
    pub rho: bool,
    pub tau: bool,
    pub theta: bool,
}

pub fn summand_data(s: StandardSummand, d: Bidegree) -> SummandData {
    match s {
        StandardSummand::Free { p, q } => {
            let rel = d - Bidegree::new(p, q);
            match M2Monomial::at(rel) {
                None => SummandData::default(),
                Some(m) => SummandData {
                    dim: true,
                    rho: m.mul(M2Monomial::RHO).is_some(),
                    tau: m.mul(M2Monomial::TAU).is_some(),
                    theta: m.mul(M2Monomial::THETA).is_some(),
                },
            }
        }
        StandardSummand::Antipodal { r, n } => {
            let top = r + n as i64;
            if r <= d.p && d.p <= top {
                SummandData {
                    dim: true,
                    rho: d.p < top,
                    tau: true,
                    theta: false,
                }
            } else {
                SummandData::default()
            }
        }
    }
}

/// A finite multiset of standard summands, kept in canonical sorted order so
/// that equality is multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Decomposition {
    summands: Vec<StandardSummand>,
}

impl Decomposition {
    pub fn new(mut summands: Vec<StandardSummand>) -> Self {
        summands.sort();
        Decomposition { summands }
    }

    pub fn empty() -> Self {
        Decomposition::default()
    }

    pub fn summands(&self) -> &[StandardSummand] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn free_part(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.summands.iter().filter_map(|s| match *s {
            StandardSummand::Free { p, q } => Some((p, q)),
            _ => None,
        })
    }

    pub fn antipodal_part(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.summands.iter().filter_map(|s| match *s {
            StandardSummand::Antipodal { r, n } => Some((r, n)),
            _ => None,
        })
    }

    /// Multiset union.
    pub fn union(&self, other: &Decomposition) -> Decomposition {
        let mut all = self.summands.clone();
        all.extend_from_slice(&other.summands);
        Decomposition::new(all)
    }

    /// Removes one copy of Σ^{0,0}𝕄₂ (the basepoint), if present.
    pub fn reduced(&self) -> Option<Decomposition> {
        let unit = StandardSummand::free(0, 0);
        let idx = self.summands.iter().position(|&s| s == unit)?;
        let mut rest = self.summands.clone();
        rest.remove(idx);
        Some(Decomposition::new(rest))
    }

    /// Smallest m such that every summand satisfies the finite-complex bounds
    /// `0 ≤ q ≤ p ≤ m` and `0 ≤ r`, `r + n ≤ m`; `None` if no m works.
    pub fn dimension_bound(&self) -> Option<usize> {
        let mut m = 0i64;
        for s in &self.summands {
            match *s {
                StandardSummand::Free { p, q } if 0 <= q && q <= p => m = m.max(p),
                StandardSummand::Antipodal { r, .. } if r >= 0 => m = m.max(s.top()),
                _ => return None,
            }
        }
        Some(m as usize)
    }

    pub fn satisfies_bounds(&self, m: usize) -> bool {
        self.dimension_bound().is_some_and(|b| b <= m)
    }
}

impl FromIterator<StandardSummand> for Decomposition {
    fn from_iter<I: IntoIterator<Item = StandardSummand>>(iter: I) -> Self {
        Decomposition::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_module_values() {
        let pt = StandardSummand::free(0, 0);
        assert!(summand_data(pt, Bidegree::new(2, 3)).dim);
        let one = summand_data(pt, Bidegree::new(0, 0));
        assert!(one.theta && one.rho && one.tau);
        // θ itself: ρθ = τθ = θθ = 0
        let theta = summand_data(pt, Bidegree::new(0, -2));
        assert!(theta.dim && !theta.rho && !theta.tau && !theta.theta);
        // θ/ρ is ρ-divisible into θ, killed by τ
        let theta_rho = summand_data(pt, Bidegree::new(-1, -3));
        assert!(theta_rho.rho && !theta_rho.tau);
        assert!(!summand_data(StandardSummand::free(1, 1), Bidegree::new(1, 0)).dim);
    }

    #[test]
    fn antipodal_values() {
        let a2 = StandardSummand::antipodal(0, 2);
        for q in -5..5 {
            let top = summand_data(a2, Bidegree::new(2, q));
            assert!(top.dim && !top.rho && top.tau && !top.theta);
            assert!(summand_data(a2, Bidegree::new(1, q)).rho);
            assert!(!summand_data(a2, Bidegree::new(3, q)).dim);
        }
    }

    #[test]
    fn json_schema() {
        let d = Decomposition::new(vec![StandardSummand::antipodal(1, 2), StandardSummand::free(2, 1)]);
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(text, r#"[{"type":"M2","p":2,"q":1},{"type":"A","r":1,"n":2}]"#);
        let back: Decomposition = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn reduced_and_bounds() {
        let d = Decomposition::new(vec![StandardSummand::free(0, 0), StandardSummand::antipodal(1, 1)]);
        assert_eq!(
            d.reduced().unwrap(),
            Decomposition::new(vec![StandardSummand::antipodal(1, 1)])
        );
        assert!(d.reduced().unwrap().reduced().is_none());
        assert_eq!(d.dimension_bound(), Some(2));
        assert_eq!(
            Decomposition::new(vec![StandardSummand::free(1, 2)]).dimension_bound(),
            None
        );
    }
}
