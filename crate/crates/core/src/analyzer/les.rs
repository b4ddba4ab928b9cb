//! Solving the extension problem of a two-stage filtration A ⊆ X.
//!
//! The differential d: H̃(A) → H̃(X/A) raises p by one. The cohomology of X
//! sits in 0 → coker d → H̃(X) → ker d → 0, so its dimensions are known and
//! the extension is found by search: every candidate must carry at least the
//! operator ranks already present on the two pieces.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{enumerate, forgetful_feasible};
use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, Quotient};
use crate::gridmodule::{check_consequences, realize, DimTable, Operator, Window};
use crate::m2algebra::{hom_basis, summand_data, Bidegree, Decomposition, HomImage, StandardSummand};

fn default_shift() -> Bidegree {
    Bidegree::new(1, 0)
}

/// One block of a map: coefficients against `hom_basis` for the pair of
/// summands (indices into the sorted summand lists).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub source: usize,
    pub target: usize,
    pub coefficients: Vec<u8>,
}

/// A module map between two decompositions, stored blockwise.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralMap {
    pub source: Decomposition,
    pub target: Decomposition,
    #[serde(default = "default_shift")]
    pub shift: Bidegree,
    pub entries: Vec<MapEntry>,
}

impl GeneralMap {
    pub fn new(source: Decomposition, target: Decomposition, shift: Bidegree, entries: Vec<MapEntry>) -> Result<Self> {
        let map = GeneralMap {
            source,
            target,
            shift,
            entries,
        };
        map.validate()?;
        Ok(map)
    }

    /// The map taking each listed source summand to the basis map into the
    /// listed target summand.
    pub fn from_pairs(source: Decomposition, target: Decomposition, pairs: &[(usize, usize)]) -> Result<Self> {
        let entries = pairs
            .iter()
            .map(|&(s, t)| MapEntry {
                source: s,
                target: t,
                coefficients: vec![1],
            })
            .collect();
        Self::new(source, target, default_shift(), entries)
    }

    pub fn zero(source: Decomposition, target: Decomposition) -> Self {
        GeneralMap {
            source,
            target,
            shift: default_shift(),
            entries: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let map: GeneralMap = serde_json::from_str(text)?;
        map.validate()?;
        Ok(map)
    }

    pub fn validate(&self) -> Result<()> {
        let (ns, nt) = (self.source.len(), self.target.len());
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.entries {
            if e.source >= ns || e.target >= nt {
                return Err(Error::Input(format!(
                    "map entry ({}, {}) is out of range for {ns} source and {nt} target summands",
                    e.source, e.target
                )));
            }
            if !seen.insert((e.source, e.target)) {
                return Err(Error::Input(format!(
                    "map entry ({}, {}) is repeated",
                    e.source, e.target
                )));
            }
            let basis = self.basis(e.source, e.target);
            if e.coefficients.iter().any(|&c| c > 1) {
                return Err(Error::Input("map coefficients must be 0 or 1".into()));
            }
            let beyond = e.coefficients.iter().skip(basis.len()).any(|&c| c != 0);
            if beyond || e.coefficients.len() > basis.len().max(1) {
                return Err(Error::Input(format!(
                    "map entry ({}, {}) lies outside the {}-dimensional space of maps {} → {} of degree {}",
                    e.source,
                    e.target,
                    basis.len(),
                    self.source.summands()[e.source],
                    self.target.summands()[e.target],
                    self.shift
                )));
            }
        }
        Ok(())
    }

    fn basis(&self, s: usize, t: usize) -> Vec<HomImage> {
        hom_basis(self.source.summands()[s], self.target.summands()[t], self.shift)
    }

    /// The matrix from the source group at `b` to the target group at
    /// `b + shift`, in the summand-order bases used by `realize`.
    pub fn matrix_at(&self, b: Bidegree) -> F2Matrix {
        let here = present(&self.source, b);
        let there = present(&self.target, b + self.shift);
        let mut m = F2Matrix::zeros(there.len(), here.len());
        for e in &self.entries {
            let (Some(col), Some(row)) = (
                here.iter().position(|&i| i == e.source),
                there.iter().position(|&j| j == e.target),
            ) else {
                continue;
            };
            let src = self.source.summands()[e.source];
            let dst = self.target.summands()[e.target];
            let mut bit = false;
            for (c, image) in e.coefficients.iter().zip(self.basis(e.source, e.target)) {
                if *c == 1 && image.entry(src, dst, self.shift, b) {
                    bit = !bit;
                }
            }
            if bit {
                m.set(row, col, true);
            }
        }
        m
    }
}

fn present(d: &Decomposition, b: Bidegree) -> Vec<usize> {
    (0..d.len()).filter(|&i| summand_data(d.summands()[i], b).dim).collect()
}

fn op_rank(d: &Decomposition, op: Operator, b: Bidegree) -> usize {
    d.summands()
        .iter()
        .filter(|&&s| {
            let data = summand_data(s, b);
            match op {
                Operator::Rho => data.rho,
                Operator::Tau => data.tau,
                Operator::Theta => data.theta,
            }
        })
        .count()
}

/// A lower bound on an operator's rank in the extension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct RankBound {
    op: Operator,
    at: Bidegree,
    rank: usize,
}

/// Candidate cohomologies of X given the differential `d` from the
/// subcomplex's reduced cohomology to the cofiber's. Survivors match the
/// dimensions of coker d ⊕ ker d, carry at least the operator ranks of both
/// pieces, pass the consequence checks and, if `underlying` is given, the
/// forgetful bookkeeping.
pub fn les_extension(d: &GeneralMap, underlying: Option<&[usize]>) -> Result<Vec<Decomposition>> {
    d.validate()?;
    let bound = |x: &Decomposition, side: &str| {
        x.dimension_bound()
            .ok_or_else(|| Error::Input(format!("the {side} {x} is not the cohomology of a finite complex")))
    };
    let m = bound(&d.source, "source")?.max(bound(&d.target, "target")?) + 1;
    let window = Window::default_for(m);
    let src = realize(&d.source, window);
    let tgt = realize(&d.target, window);

    let mut table = DimTable::zeros(window);
    let mut bounds = Vec::new();
    for b in window.bidegrees() {
        let into = d.matrix_at(b - d.shift);
        let out = d.matrix_at(b);
        let coker = Quotient::new(tgt.dim(b), &into.row_reduce().image_basis);
        let kernel = out.row_reduce().kernel_basis;
        table.set(b, coker.dim() + kernel.len());
        for op in Operator::ALL {
            let t = b + op.degree();
            if !window.contains(t) {
                continue;
            }
            let target_coker = Quotient::new(tgt.dim(t), &d.matrix_at(t - d.shift).row_reduce().image_basis);
            let on_coker = coker.induced(tgt.op_ref(op, b), &target_coker).rank();
            let on_ker = if kernel.is_empty() {
                0
            } else {
                src.op_ref(op, b)
                    .mul(&F2Matrix::from_columns(src.dim(b), &kernel))
                    .map_err(|e| Error::Internal(format!("restricting {} to the kernel: {e}", op.name())))?
                    .rank()
            };
            let rank = on_coker.max(on_ker);
            if rank > 0 {
                bounds.push(RankBound { op, at: b, rank });
            }
        }
    }

    let row = m as i64 + 1;
    let frees = enumerate::free_parts(m, table.get(Bidegree::new(row, row)), None);
    let mut survivors: Vec<Decomposition> = enumerate::candidates(&table, m, &frees)
        .into_par_iter()
        .filter(|c| {
            DimTable::of_decomposition(c, window) == table
                && bounds.iter().all(|rb| op_rank(c, rb.op, rb.at) >= rb.rank)
                && check_consequences(&realize(c, window), Some(m)).is_empty()
                && underlying.is_none_or(|u| forgetful_feasible(c, u))
        })
        .collect();
    survivors.sort();
    Ok(survivors)
}

/// Convenience: the unique solution, or an error listing what survived.
pub fn les_unique(d: &GeneralMap, underlying: Option<&[usize]>) -> Result<Decomposition> {
    let mut all = les_extension(d, underlying)?;
    if all.len() == 1 {
        return Ok(all.remove(0));
    }
    let listed: Vec<String> = all.iter().map(|c| c.to_string()).collect();
    Err(Error::Classification(format!(
        "the extension has {} solutions: [{}]",
        all.len(),
        listed.join("; ")
    )))
}

/// Reduced cohomology of a single summand, as a one-summand decomposition.
pub fn single(s: StandardSummand) -> Decomposition {
    Decomposition::new(vec![s])
}
