//! Finite C₂-CW complexes stored as mod-2 incidence data.
//!
//! Cells come in two kinds: fixed cells C₂/C₂ × Dᵏ and free orbits C₂ × Dᵏ.
//! A free orbit has two sheets, σ and gσ; the data records where σ attaches
//! and the action determines gσ. Fixed cells attach only to fixed cells.

mod build;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2linalg::F2Matrix;

pub use build::{build, disjoint_union, suspend, wedge, SpaceExpr};

/// Largest dimension accepted from any source.
pub const MAX_DIMENSION: usize = 32;
/// Largest total number of cells (fixed cells plus free orbits).
pub const MAX_CELLS: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantCellComplex {
    pub name: String,
    fixed: Vec<usize>,
    free: Vec<usize>,
    // index k holds the attaching data of (k+1)-cells onto k-cells
    alpha: Vec<F2Matrix>,
    e: Vec<F2Matrix>,
    aa_first: Vec<F2Matrix>,
    aa_second: Vec<F2Matrix>,
}

/// An F₂ cochain complex C⁰ → C¹ → … with `d[k]: C^k → C^{k+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    pub dims: Vec<usize>,
    pub d: Vec<F2Matrix>,
}

impl CochainComplex {
    pub fn cohomology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.d.iter().map(F2Matrix::rank).collect();
        (0..self.dims.len())
            .map(|k| {
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                self.dims[k] - out - inc
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) })
            .sum()
    }
}

/// The cellular chains as permutation modules over F₂[C₂]: fixed cells
/// give F₂, free orbits give F₂[C₂]. Incidences are fixed-to-fixed (`mm`),
/// free-onto-fixed (`ma`) and free-to-free, where a free generator goes to
/// `aa_first` times a generator plus `aa_second` times its translate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarComplex {
    pub fixed: Vec<usize>,
    pub free: Vec<usize>,
    pub mm: Vec<F2Matrix>,
    pub ma: Vec<F2Matrix>,
    pub aa_first: Vec<F2Matrix>,
    pub aa_second: Vec<F2Matrix>,
}

impl ScalarComplex {
    pub fn dimension(&self) -> usize {
        self.fixed.len() - 1
    }
}

#[derive(Clone, Debug)]
pub struct DerivedComplexes {
    pub fixed: CochainComplex,
    pub underlying: CochainComplex,
    pub quotient: CochainComplex,
    pub scalar: ScalarComplex,
}

impl EquivariantCellComplex {
    /// Complex with the given cell counts and all incidences zero.
    pub fn with_counts(name: &str, fixed: Vec<usize>, free: Vec<usize>) -> Result<Self> {
        check_counts(&fixed, &free)?;
        let m = fixed.len() - 1;
        let block = |rows: &[usize], cols: &[usize], k: usize| F2Matrix::zeros(rows[k + 1], cols[k]);
        Ok(EquivariantCellComplex {
            name: name.to_string(),
            alpha: (0..m).map(|k| block(&fixed, &fixed, k)).collect(),
            e: (0..m).map(|k| block(&free, &fixed, k)).collect(),
            aa_first: (0..m).map(|k| block(&free, &free, k)).collect(),
            aa_second: (0..m).map(|k| block(&free, &free, k)).collect(),
            fixed,
            free,
        })
    }

    pub fn dimension(&self) -> usize {
        self.fixed.len() - 1
    }

    pub fn fixed_counts(&self) -> &[usize] {
        &self.fixed
    }

    pub fn free_counts(&self) -> &[usize] {
        &self.free
    }

    pub fn cell_count(&self) -> usize {
        self.fixed.iter().sum::<usize>() + self.free.iter().sum::<usize>()
    }

    pub fn alpha(&self, k: usize) -> &F2Matrix {
        &self.alpha[k]
    }

    pub fn e(&self, k: usize) -> &F2Matrix {
        &self.e[k]
    }

    pub fn aa_first(&self, k: usize) -> &F2Matrix {
        &self.aa_first[k]
    }

    pub fn aa_second(&self, k: usize) -> &F2Matrix {
        &self.aa_second[k]
    }

    pub fn alpha_mut(&mut self, k: usize) -> &mut F2Matrix {
        &mut self.alpha[k]
    }

    pub fn e_mut(&mut self, k: usize) -> &mut F2Matrix {
        &mut self.e[k]
    }

    pub fn aa_first_mut(&mut self, k: usize) -> &mut F2Matrix {
        &mut self.aa_first[k]
    }

    pub fn aa_second_mut(&mut self, k: usize) -> &mut F2Matrix {
        &mut self.aa_second[k]
    }

    /// Incidence matrix of (k+1)-cells onto k-cells in the underlying space.
    /// Cells of each dimension are ordered fixed cells, first sheets, second
    /// sheets; the second sheet sees the two sheets below swapped.
    fn underlying_incidence(&self, k: usize) -> F2Matrix {
        let (f0, a0) = (self.fixed[k], self.free[k]);
        let (f1, a1) = (self.fixed[k + 1], self.free[k + 1]);
        let mut m = F2Matrix::zeros(f1 + 2 * a1, f0 + 2 * a0);
        for i in 0..f1 {
            for j in 0..f0 {
                m.set(i, j, self.alpha[k].get(i, j));
            }
        }
        for i in 0..a1 {
            for j in 0..f0 {
                let v = self.e[k].get(i, j);
                m.set(f1 + i, j, v);
                m.set(f1 + a1 + i, j, v);
            }
            for j in 0..a0 {
                let (x, y) = (self.aa_first[k].get(i, j), self.aa_second[k].get(i, j));
                m.set(f1 + i, f0 + j, x);
                m.set(f1 + i, f0 + a0 + j, y);
                m.set(f1 + a1 + i, f0 + j, y);
                m.set(f1 + a1 + i, f0 + a0 + j, x);
            }
        }
        m
    }

    fn quotient_incidence(&self, k: usize) -> F2Matrix {
        let (f0, a0) = (self.fixed[k], self.free[k]);
        let (f1, a1) = (self.fixed[k + 1], self.free[k + 1]);
        let mut m = F2Matrix::zeros(f1 + a1, f0 + a0);
        for i in 0..f1 {
            for j in 0..f0 {
                m.set(i, j, self.alpha[k].get(i, j));
            }
        }
        for i in 0..a1 {
            for j in 0..f0 {
                m.set(f1 + i, j, self.e[k].get(i, j));
            }
            for j in 0..a0 {
                m.set(f1 + i, f0 + j, self.aa_first[k].get(i, j) ^ self.aa_second[k].get(i, j));
            }
        }
        m
    }

    /// Flips sheet labels so each orbit's (first, second) rows are
    /// lexicographically ordered, working upward through the dimensions.
    /// Flipping a (k+1)-orbit swaps its row of the aa_k pair and its column
    /// of the aa_{k+1} pair; nothing gauge-invariant changes.
    pub fn normalize_gauge(&self) -> EquivariantCellComplex {
        let mut x = self.clone();
        for k in 0..x.dimension() {
            for j in 0..x.free[k + 1] {
                let first = x.aa_first[k].row(j).to_bits();
                let second = x.aa_second[k].row(j).to_bits();
                if first <= second {
                    continue;
                }
                for c in 0..x.free[k] {
                    let (a, b) = (x.aa_first[k].get(j, c), x.aa_second[k].get(j, c));
                    x.aa_first[k].set(j, c, b);
                    x.aa_second[k].set(j, c, a);
                }
                if k + 1 < x.dimension() {
                    for r in 0..x.free[k + 2] {
                        let (a, b) = (x.aa_first[k + 1].get(r, j), x.aa_second[k + 1].get(r, j));
                        x.aa_first[k + 1].set(r, j, b);
                        x.aa_second[k + 1].set(r, j, a);
                    }
                }
            }
        }
        x
    }
}

fn check_counts(fixed: &[usize], free: &[usize]) -> Result<()> {
    if fixed.is_empty() || fixed.len() != free.len() {
        return Err(Error::InvalidComplex(format!(
            "fixed and free counts must both have length dimension+1 (got {} and {})",
            fixed.len(),
            free.len()
        )));
    }
    if fixed.len() - 1 > MAX_DIMENSION {
        return Err(Error::InvalidComplex(format!(
            "dimension {} exceeds the limit {MAX_DIMENSION}",
            fixed.len() - 1
        )));
    }
    let total: usize = fixed.iter().chain(free).sum();
    if total > MAX_CELLS {
        return Err(Error::InvalidComplex(format!(
            "{total} cells exceeds the limit {MAX_CELLS}; only finite complexes are supported"
        )));
    }
    Ok(())
}

fn check_shape(name: &str, k: usize, m: &F2Matrix, rows: usize, cols: usize) -> Result<()> {
    if m.shape() != (rows, cols) {
        return Err(Error::InvalidComplex(format!(
            "block {name}_{k} has shape {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Checks block shapes and that both the underlying and the fixed boundary
/// square to zero. Reports the first failure.
pub fn validate_complex(x: &EquivariantCellComplex) -> Result<()> {
    check_counts(&x.fixed, &x.free)?;
    let m = x.dimension();
    for (name, blocks) in [
        ("alpha", &x.alpha),
        ("e", &x.e),
        ("aa_first", &x.aa_first),
        ("aa_second", &x.aa_second),
    ] {
        if blocks.len() != m {
            return Err(Error::InvalidComplex(format!(
                "expected {m} {name} blocks, found {}",
                blocks.len()
            )));
        }
    }
    for k in 0..m {
        check_shape("alpha", k, &x.alpha[k], x.fixed[k + 1], x.fixed[k])?;
        check_shape("e", k, &x.e[k], x.free[k + 1], x.fixed[k])?;
        check_shape("aa_first", k, &x.aa_first[k], x.free[k + 1], x.free[k])?;
        check_shape("aa_second", k, &x.aa_second[k], x.free[k + 1], x.free[k])?;
    }
    for k in 1..m {
        let sq = x.underlying_incidence(k).mul(&x.underlying_incidence(k - 1))?;
        if !sq.is_zero() {
            return Err(Error::InvalidComplex(format!(
                "underlying boundary does not square to zero from dimension {} to {}",
                k + 1,
                k - 1
            )));
        }
        if !x.alpha[k].mul(&x.alpha[k - 1])?.is_zero() {
            return Err(Error::InvalidComplex(format!(
                "fixed boundary (alpha_{k} after alpha_{}) does not square to zero",
                k - 1
            )));
        }
    }
    Ok(())
}

/// The fixed, underlying and quotient cochain complexes, plus the scalar
/// data for the equivariant computation.
pub fn derived_complexes(x: &EquivariantCellComplex) -> Result<DerivedComplexes> {
    validate_complex(x)?;
    let m = x.dimension();
    let fixed = CochainComplex {
        dims: x.fixed.clone(),
        d: x.alpha.clone(),
    };
    let underlying = CochainComplex {
        dims: (0..=m).map(|k| x.fixed[k] + 2 * x.free[k]).collect(),
        d: (0..m).map(|k| x.underlying_incidence(k)).collect(),
    };
    let quotient = CochainComplex {
        dims: (0..=m).map(|k| x.fixed[k] + x.free[k]).collect(),
        d: (0..m).map(|k| x.quotient_incidence(k)).collect(),
    };
    let scalar = ScalarComplex {
        fixed: x.fixed.clone(),
        free: x.free.clone(),
        mm: x.alpha.clone(),
        ma: x.e.clone(),
        aa_first: x.aa_first.clone(),
        aa_second: x.aa_second.clone(),
    };
    Ok(DerivedComplexes {
        fixed,
        underlying,
        quotient,
        scalar,
    })
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    #[serde(default)]
    name: String,
    dimension: usize,
    fixed: Vec<usize>,
    free: Vec<usize>,
    #[serde(default)]
    alpha: Option<Vec<Vec<Vec<u8>>>>,
    #[serde(default)]
    e: Option<Vec<Vec<Vec<u8>>>>,
    #[serde(default)]
    aa_first: Option<Vec<Vec<Vec<u8>>>>,
    #[serde(default)]
    aa_second: Option<Vec<Vec<Vec<u8>>>>,
}

fn read_blocks(name: &str, blocks: Option<Vec<Vec<Vec<u8>>>>, rows: &[usize], cols: &[usize]) -> Result<Vec<F2Matrix>> {
    let m = rows.len() - 1;
    let Some(blocks) = blocks else {
        return Ok((0..m).map(|k| F2Matrix::zeros(rows[k + 1], cols[k])).collect());
    };
    if blocks.len() != m {
        return Err(Error::InvalidComplex(format!(
            "\"{name}\" has {} blocks, expected {m}",
            blocks.len()
        )));
    }
    blocks
        .into_iter()
        .enumerate()
        .map(|(k, b)| {
            if b.len() != rows[k + 1] {
                return Err(Error::InvalidComplex(format!(
                    "block {name}_{k} has {} rows, expected {}",
                    b.len(),
                    rows[k + 1]
                )));
            }
            F2Matrix::from_rows(&b, cols[k]).map_err(|e| Error::InvalidComplex(format!("block {name}_{k}: {e}")))
        })
        .collect()
}

impl EquivariantCellComplex {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_str(text)?;
        check_counts(&raw.fixed, &raw.free)?;
        if raw.dimension + 1 != raw.fixed.len() {
            return Err(Error::InvalidComplex(format!(
                "dimension {} needs {} cell counts, found {}",
                raw.dimension,
                raw.dimension + 1,
                raw.fixed.len()
            )));
        }
        let x = EquivariantCellComplex {
            alpha: read_blocks("alpha", raw.alpha, &raw.fixed, &raw.fixed)?,
            e: read_blocks("e", raw.e, &raw.free, &raw.fixed)?,
            aa_first: read_blocks("aa_first", raw.aa_first, &raw.free, &raw.free)?,
            aa_second: read_blocks("aa_second", raw.aa_second, &raw.free, &raw.free)?,
            name: raw.name,
            fixed: raw.fixed,
            free: raw.free,
        };
        validate_complex(&x)?;
        Ok(x)
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let rows = |b: &[F2Matrix]| Some(b.iter().map(F2Matrix::to_rows).collect());
        let raw = ComplexJson {
            name: self.name.clone(),
            dimension: self.dimension(),
            fixed: self.fixed.clone(),
            free: self.free.clone(),
            alpha: rows(&self.alpha),
            e: rows(&self.e),
            aa_first: rows(&self.aa_first),
            aa_second: rows(&self.aa_second),
        };
        let out = if pretty {
            serde_json::to_string_pretty(&raw)
        } else {
            serde_json::to_string(&raw)
        };
        out.expect("complex serialization cannot fail")
    }
}
