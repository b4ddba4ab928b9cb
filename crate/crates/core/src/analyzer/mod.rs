//! From cell data to a decomposition: exact invariants, candidate
//! enumeration and pruning, plus the extension tool for a two-stage
//! filtration.

pub mod enumerate;
pub mod les;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cwcell::{derived_complexes, EquivariantCellComplex};
use crate::error::{Error, Result};
use crate::gridmodule::{cohomology_dims, DimTable, Window};
use crate::m2algebra::{summand_data, Bidegree, Decomposition, StandardSummand};

pub use les::{les_extension, GeneralMap, MapEntry};

/// The exactly computable invariants of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub dimension: usize,
    pub dims: DimTable,
    pub fixed_dims: Vec<usize>,
    pub underlying_dims: Vec<usize>,
    pub quotient_dims: Vec<usize>,
}

impl InvariantProfile {
    pub fn window(&self) -> Window {
        self.dims.window
    }
}

pub fn compute_profile(x: &EquivariantCellComplex) -> Result<InvariantProfile> {
    let dc = derived_complexes(x)?;
    let m = x.dimension();
    let window = Window::default_for(m);
    let dims = cohomology_dims(&dc.scalar, window);
    let profile = InvariantProfile {
        dimension: m,
        dims,
        fixed_dims: dc.fixed.cohomology(),
        underlying_dims: dc.underlying.cohomology(),
        quotient_dims: dc.quotient.cohomology(),
    };
    for p in window.p_min..=window.p_max {
        let want = usize::try_from(p)
            .ok()
            .and_then(|i| profile.quotient_dims.get(i))
            .copied()
            .unwrap_or(0);
        let got = profile.dims.get(Bidegree::new(p, 0));
        if got != want {
            return Err(Error::Internal(format!(
                "weight-zero row disagrees with the quotient at p = {p}: {got} vs {want}"
            )));
        }
    }
    let mi = m as i64;
    for b in window.bidegrees() {
        let vanishes = (b.p < 0 && b.q > b.p - 2) || (b.p > mi && b.q < b.p - mi);
        if vanishes && profile.dims.get(b) != 0 {
            return Err(Error::Internal(format!(
                "cohomology is nonzero in a vanishing region at {b}"
            )));
        }
    }
    Ok(profile)
}

fn dim_at(d: &Decomposition, b: Bidegree) -> i64 {
    d.summands().iter().filter(|&&s| summand_data(s, b).dim).count() as i64
}

fn rho_rank(d: &Decomposition, b: Bidegree) -> i64 {
    d.summands().iter().filter(|&&s| summand_data(s, b).rho).count() as i64
}

/// Rank bookkeeping forced by exactness of the forgetful sequence: for all
/// (p,q) in a band, u_{p+1} equals coker ρ into (p+1,q+1) plus ker ρ on
/// (p+1,q). Entries of `u` beyond its length count as zero.
pub fn forgetful_feasible(d: &Decomposition, u: &[usize]) -> bool {
    let top = d.summands().iter().map(|s| match *s {
        StandardSummand::Free { p, q } => p.abs().max(q.abs()),
        StandardSummand::Antipodal { r, n } => r.abs().max((r + n as i64).abs()),
    });
    let reach = top.chain([u.len() as i64]).max().unwrap_or(0) + 2;
    let u_at = |j: i64| usize::try_from(j).ok().and_then(|j| u.get(j)).copied().unwrap_or(0) as i64;
    for q in -2 * reach - 4..=reach + 2 {
        for p in -reach - 1..=reach + 1 {
            let coker = dim_at(d, Bidegree::new(p + 1, q + 1)) - rho_rank(d, Bidegree::new(p, q));
            let ker = dim_at(d, Bidegree::new(p + 1, q)) - rho_rank(d, Bidegree::new(p + 1, q));
            if coker + ker != u_at(p + 1) {
                return false;
            }
        }
    }
    true
}

/// The underlying space of a complex with this decomposition has
/// cohomology given by one class per free summand at p and the two
/// endpoints of each strip.
pub fn endpoint_counts(d: &Decomposition, len: usize) -> Vec<usize> {
    let mut out = vec![0usize; len];
    let mut bump = |j: i64| {
        if let Some(c) = usize::try_from(j).ok().and_then(|j| out.get_mut(j)) {
            *c += 1;
        }
    };
    for s in d.summands() {
        match *s {
            StandardSummand::Free { p, .. } => bump(p),
            StandardSummand::Antipodal { r, n } => {
                bump(r);
                bump(r + n as i64);
            }
        }
    }
    out
}

fn endpoints_match(d: &Decomposition, u: &[usize]) -> bool {
    let inside = d.summands().iter().all(|s| match *s {
        StandardSummand::Free { p, .. } => 0 <= p && (p as usize) < u.len(),
        StandardSummand::Antipodal { r, .. } => 0 <= r && (s.top() as usize) < u.len(),
    });
    inside && endpoint_counts(d, u.len()) == u
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AnalysisResult {
    Unique {
        decomposition: Decomposition,
    },
    Ambiguous {
        candidates: Vec<Decomposition>,
        diagnostics: Vec<String>,
    },
}

impl AnalysisResult {
    pub fn candidates(&self) -> Vec<&Decomposition> {
        match self {
            AnalysisResult::Unique { decomposition } => vec![decomposition],
            AnalysisResult::Ambiguous { candidates, .. } => candidates.iter().collect(),
        }
    }

    pub fn unique(&self) -> Option<&Decomposition> {
        match self {
            AnalysisResult::Unique { decomposition } => Some(decomposition),
            AnalysisResult::Ambiguous { .. } => None,
        }
    }

    /// Removes the basepoint copy of 𝕄₂ from every candidate.
    pub fn reduced(&self) -> Result<AnalysisResult> {
        let reduce = |d: &Decomposition| {
            d.reduced()
                .ok_or_else(|| Error::Input("no copy of Σ^{0,0}M2 to remove for the reduced answer".into()))
        };
        Ok(match self {
            AnalysisResult::Unique { decomposition } => AnalysisResult::Unique {
                decomposition: reduce(decomposition)?,
            },
            AnalysisResult::Ambiguous {
                candidates,
                diagnostics,
            } => AnalysisResult::Ambiguous {
                candidates: candidates.iter().map(reduce).collect::<Result<_>>()?,
                diagnostics: diagnostics.clone(),
            },
        })
    }
}

impl fmt::Display for AnalysisResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisResult::Unique { decomposition } => write!(f, "unique: {decomposition}"),
            AnalysisResult::Ambiguous { candidates, .. } => {
                writeln!(f, "ambiguous between {} candidates:", candidates.len())?;
                for c in candidates {
                    writeln!(f, "  {c}")?;
                }
                Ok(())
            }
        }
    }
}

/// Everything `analyze` keeps: the surviving candidates and their evidence.
#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub result: AnalysisResult,
    pub profile: InvariantProfile,
}

pub fn analyze(x: &EquivariantCellComplex) -> Result<AnalysisResult> {
    Ok(analyze_with_profile(x)?.result)
}

pub fn analyze_with_profile(x: &EquivariantCellComplex) -> Result<Analysis> {
    let profile = compute_profile(x)?;
    let result = analyze_profile(&profile)?;
    Ok(Analysis { result, profile })
}

/// Enumerates and filters candidates for a profile.
pub fn analyze_profile(profile: &InvariantProfile) -> Result<AnalysisResult> {
    let m = profile.dimension;
    let row = m as i64 + 1;
    let free_count = profile.dims.get(Bidegree::new(row, row));
    let frees = enumerate::free_parts(m, free_count, Some(&profile.fixed_dims));
    let all = enumerate::candidates(&profile.dims, m, &frees);
    let mut survivors: Vec<Decomposition> = all
        .into_par_iter()
        .filter(|d| {
            DimTable::of_decomposition(d, profile.window()) == profile.dims
                && forgetful_feasible(d, &profile.underlying_dims)
                && endpoints_match(d, &profile.underlying_dims)
        })
        .collect();
    survivors.sort();
    match survivors.len() {
        0 => Err(Error::InconsistentInvariants(format!(
            "no decomposition matches the invariants (free count {free_count}, fixed dims {:?}, underlying dims {:?})",
            profile.fixed_dims, profile.underlying_dims
        ))),
        1 => Ok(AnalysisResult::Unique {
            decomposition: survivors.remove(0),
        }),
        n => Ok(AnalysisResult::Ambiguous {
            diagnostics: ambiguity_diagnostics(&survivors, n),
            candidates: survivors,
        }),
    }
}

fn ambiguity_diagnostics(survivors: &[Decomposition], n: usize) -> Vec<String> {
    let mut out = vec![
        format!("{n} candidates agree on every bidegree dimension in the window"),
        "all candidates have the same fixed-set marginal and free count".to_string(),
        "all candidates satisfy the forgetful rank bookkeeping".to_string(),
        "all candidates have the same underlying endpoint multiset".to_string(),
    ];
    let frees: Vec<Vec<(i64, i64)>> = survivors.iter().map(|d| d.free_part().collect()).collect();
    if frees.iter().all(|f| *f == frees[0]) {
        out.push("candidates differ only in how strips partition the residual coverage".to_string());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwcell::{build, SpaceExpr};
    use crate::m2algebra::StandardSummand as S;

    fn d(v: Vec<S>) -> Decomposition {
        Decomposition::new(v)
    }

    fn unique(e: SpaceExpr) -> Decomposition {
        let x = build(&e).unwrap();
        match analyze(&x).unwrap() {
            AnalysisResult::Unique { decomposition } => decomposition,
            other => panic!("{e}: {other}"),
        }
    }

    #[test]
    fn profiles() {
        let p = compute_profile(&build(&SpaceExpr::TwistedProjectivePlane).unwrap()).unwrap();
        assert_eq!(p.quotient_dims, vec![1, 0, 0]);
        assert_eq!(p.fixed_dims, vec![2, 1, 0]);
        assert_eq!(p.underlying_dims, vec![1, 1, 1]);
        let p = compute_profile(&build(&SpaceExpr::AntipodalSphere(3)).unwrap()).unwrap();
        assert_eq!(p.fixed_dims, vec![0; 4]);
        assert_eq!(p.underlying_dims, vec![1, 0, 0, 1]);
        assert_eq!(p.quotient_dims, vec![1, 1, 1, 1]);
        let p = compute_profile(&build(&SpaceExpr::Point).unwrap()).unwrap();
        assert_eq!(
            (p.fixed_dims, p.underlying_dims, p.quotient_dims),
            (vec![1], vec![1], vec![1])
        );
    }

    #[test]
    fn forgetful_examples() {
        assert!(forgetful_feasible(&d(vec![S::antipodal(0, 1)]), &[1, 1]));
        assert!(!forgetful_feasible(
            &d(vec![S::antipodal(0, 0), S::antipodal(1, 0)]),
            &[1, 1]
        ));
        assert!(forgetful_feasible(&d(vec![S::free(0, 0)]), &[1]));
        assert!(forgetful_feasible(
            &d(vec![S::free(0, 0), S::free(1, 1), S::free(2, 1)]),
            &[1, 1, 1]
        ));
    }

    #[test]
    fn analyze_examples() {
        assert_eq!(unique(SpaceExpr::AntipodalSphere(2)), d(vec![S::antipodal(0, 2)]));
        assert_eq!(
            unique(SpaceExpr::TwistedProjectivePlane),
            d(vec![S::free(0, 0), S::free(1, 1), S::free(2, 1)])
        );
        assert_eq!(
            unique(SpaceExpr::WhiskerSphere),
            d(vec![S::free(0, 0), S::antipodal(1, 1)])
        );
        assert_eq!(
            unique(SpaceExpr::RepSphere(3, 2)),
            d(vec![S::free(0, 0), S::free(3, 2)])
        );
    }

    #[test]
    fn inconsistent_data_is_reported() {
        let mut p = compute_profile(&build(&SpaceExpr::AntipodalSphere(1)).unwrap()).unwrap();
        p.underlying_dims = vec![2, 0];
        assert!(matches!(analyze_profile(&p), Err(Error::InconsistentInvariants(_))));
    }

    /// S¹ with the antipodal action times a trivial circle, as one free
    /// orbit of cells in each dimension pattern (1, 2, 1).
    pub(crate) fn free_torus() -> EquivariantCellComplex {
        let mut x = EquivariantCellComplex::with_counts("torus", vec![0, 0, 0], vec![1, 2, 1]).unwrap();
        *x.aa_first_mut(0) = crate::f2linalg::F2Matrix::from_rows(&[vec![0], vec![1]], 1).unwrap();
        *x.aa_second_mut(0) = crate::f2linalg::F2Matrix::from_rows(&[vec![0], vec![1]], 1).unwrap();
        *x.aa_first_mut(1) = crate::f2linalg::F2Matrix::from_rows(&[vec![1, 0]], 2).unwrap();
        *x.aa_second_mut(1) = crate::f2linalg::F2Matrix::from_rows(&[vec![1, 0]], 2).unwrap();
        x
    }

    #[test]
    fn strip_partitions_can_be_invisible() {
        let torus = free_torus();
        let orbit = build(&SpaceExpr::FreeOrbit).unwrap();
        let x = crate::cwcell::disjoint_union(&torus, &orbit);
        let r = analyze(&x).unwrap();
        let AnalysisResult::Ambiguous {
            candidates,
            diagnostics,
        } = r
        else {
            panic!("{r}")
        };
        assert_eq!(
            candidates,
            vec![
                d(vec![S::antipodal(0, 0), S::antipodal(0, 1), S::antipodal(1, 1)]),
                d(vec![S::antipodal(0, 0), S::antipodal(0, 2), S::antipodal(1, 0)]),
            ]
        );
        assert!(!diagnostics.is_empty());
    }

    #[test]
    fn result_json_has_status() {
        let r = AnalysisResult::Unique {
            decomposition: d(vec![S::free(0, 0)]),
        };
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["status"], "unique");
        let back: AnalysisResult = serde_json::from_value(json).unwrap();
        assert_eq!(back, r);
    }
}
