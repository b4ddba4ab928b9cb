//! Spaces of 𝕄₂-module maps between standard summands.
//!
//! Every such space is zero or one dimensional. A basis element is recorded
//! by what it does to the canonical generator(s) of the source, which keeps
//! the description exact without reference to any finite window.

use serde::{Deserialize, Serialize};

use super::{Bidegree, M2Monomial, StandardSummand};

/// The image of the source's canonical generator under a basis map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HomImage {
    /// Free source into free target: the generator goes to this monomial
    /// times the target generator.
    Monomial { monomial: M2Monomial },
    /// The generator (or the τ-family of bottom generators of an antipodal
    /// source) goes to the nonzero strip element in the target bidegree.
    StripPoint,
    /// Antipodal source into free target: the bottom τ-family goes to the
    /// lower-cone column θ/(ρᵃτ^•) of the target, ρ-divisibility `a ≤ n`.
    LowerSeed { a: u32 },
}

/// Basis of degree-`shift` module maps `src → dst`.
pub fn hom_basis(src: StandardSummand, dst: StandardSummand, shift: Bidegree) -> Vec<HomImage> {
    use StandardSummand::{Antipodal, Free};
    match (src, dst) {
        (Free { p, q }, Free { p: p2, q: q2 }) => {
            let rel = Bidegree::new(p, q) + shift - Bidegree::new(p2, q2);
            M2Monomial::at(rel)
                .map(|monomial| HomImage::Monomial { monomial })
                .into_iter()
                .collect()
        }
        (Free { p, .. }, Antipodal { r, n }) => {
            let c = p + shift.p;
            if r <= c && c <= r + n as i64 {
                vec![HomImage::StripPoint]
            } else {
                vec![]
            }
        }
        (Antipodal { r, n }, Antipodal { r: r2, n: n2 }) => {
            let c = r + shift.p;
            let top2 = r2 + n2 as i64;
            // ρ^{n+1} must die in the target
            if r2 <= c && c <= top2 && c + n as i64 >= top2 {
                vec![HomImage::StripPoint]
            } else {
                vec![]
            }
        }
        (Antipodal { r, n }, Free { p: p2, .. }) => {
            let col = r + shift.p - p2;
            if col <= 0 && -col <= n as i64 {
                vec![HomImage::LowerSeed { a: (-col) as u32 }]
            } else {
                vec![]
            }
        }
    }
}

impl HomImage {
    /// Matrix entry of this basis map from the source element at `at` to the
    /// target element at `at + shift` (both summands at most one-dimensional
    /// per bidegree).
    pub fn entry(self, src: StandardSummand, dst: StandardSummand, shift: Bidegree, at: Bidegree) -> bool {
        use StandardSummand::{Antipodal, Free};
        let target = at + shift;
        match (self, src, dst) {
            (HomImage::Monomial { monomial }, Free { p, q }, Free { .. }) => M2Monomial::at(at - Bidegree::new(p, q))
                .and_then(|x| x.mul(monomial))
                .is_some(),
            (HomImage::StripPoint, Free { p, q }, Antipodal { r, n }) => {
                let upper = M2Monomial::at(at - Bidegree::new(p, q)).is_some_and(|m| m.is_upper());
                upper && r <= target.p && target.p <= r + n as i64
            }
            (HomImage::StripPoint, Antipodal { r, n }, Antipodal { r: r2, n: n2 }) => {
                r <= at.p && at.p <= r + n as i64 && r2 <= target.p && target.p <= r2 + n2 as i64
            }
            (HomImage::LowerSeed { .. }, Antipodal { r, n }, Free { p, q }) => {
                r <= at.p
                    && at.p <= r + n as i64
                    && M2Monomial::at(target - Bidegree::new(p, q)).is_some_and(|m| !m.is_upper())
            }
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use StandardSummand as S;

    #[test]
    fn free_to_free() {
        let basis = hom_basis(S::free(3, 0), S::free(4, 0), Bidegree::new(1, 0));
        assert_eq!(
            basis,
            vec![HomImage::Monomial {
                monomial: M2Monomial::ONE
            }]
        );
        let basis = hom_basis(S::free(2, 2), S::free(2, 1), Bidegree::new(1, 0));
        assert_eq!(
            basis,
            vec![HomImage::Monomial {
                monomial: M2Monomial::RHO
            }]
        );
        let basis = hom_basis(S::free(2, 2), S::free(2, 1), Bidegree::new(0, 0));
        assert_eq!(
            basis,
            vec![HomImage::Monomial {
                monomial: M2Monomial::TAU
            }]
        );
        assert!(hom_basis(S::free(0, 0), S::free(0, 1), Bidegree::new(0, 0)).is_empty());
    }

    #[test]
    fn antipodal_into_free_uses_lower_cone() {
        // A_0 → Σ^{k+1,0}𝕄₂ in degree (1,0): the τ-family lands on θ/τ^•
        let basis = hom_basis(S::antipodal(2, 0), S::free(3, 0), Bidegree::new(1, 0));
        assert_eq!(basis, vec![HomImage::LowerSeed { a: 0 }]);
        // ρ-divisibility must not exceed n
        assert!(hom_basis(S::antipodal(0, 0), S::free(1, 0), Bidegree::new(0, 0)).is_empty());
        assert_eq!(
            hom_basis(S::antipodal(0, 1), S::free(1, 0), Bidegree::new(0, 0)),
            vec![HomImage::LowerSeed { a: 1 }]
        );
    }

    #[test]
    fn antipodal_to_antipodal_respects_nilpotence() {
        // A_0 → A_1 must land in the top column
        assert!(hom_basis(S::antipodal(0, 0), S::antipodal(0, 1), Bidegree::new(0, 0)).is_empty());
        assert_eq!(
            hom_basis(S::antipodal(0, 0), S::antipodal(0, 1), Bidegree::new(1, 0)).len(),
            1
        );
        // A_1 → A_0 onto the bottom is fine
        assert_eq!(
            hom_basis(S::antipodal(0, 1), S::antipodal(0, 0), Bidegree::new(0, 0)).len(),
            1
        );
    }

    #[test]
    fn free_to_antipodal() {
        let d = hom_basis(S::free(1, 0), S::antipodal(2, 0), Bidegree::new(1, 0));
        assert_eq!(d, vec![HomImage::StripPoint]);
        // the generator maps to the strip; ρ·generator falls off a width-1 strip
        assert!(d[0].entry(
            S::free(1, 0),
            S::antipodal(2, 0),
            Bidegree::new(1, 0),
            Bidegree::new(1, 0)
        ));
        assert!(!d[0].entry(
            S::free(1, 0),
            S::antipodal(2, 0),
            Bidegree::new(1, 0),
            Bidegree::new(2, 1)
        ));
        assert!(!d[0].entry(
            S::free(1, 0),
            S::antipodal(2, 0),
            Bidegree::new(1, 0),
            Bidegree::new(1, -2)
        ));
    }
}
