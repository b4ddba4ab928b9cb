//! Splitting a module into shifted copies of 𝕄₂ and of A_n.
//!
//! θ detects the free generators. Past the free generators' rows the
//! quotient by the free part is τ-periodic, so one row of it, with
//! x = τ⁻¹ρ, is a finite graded F₂[x]-module whose cyclic summands are the
//! antipodal strips.

use super::{BigradedModule, Operator, Window};
use crate::error::{Error, Result};
use crate::f2linalg::{F2Matrix, F2Vector, Quotient};
use crate::m2algebra::{Bidegree, Decomposition, StandardSummand};

/// A graded F₂[x]-module concentrated in degrees `start .. start+dims.len()`,
/// with `x[i]` mapping degree `start+i` to degree `start+i+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedXModule {
    pub start: i64,
    pub dims: Vec<usize>,
    pub x: Vec<F2Matrix>,
}

impl GradedXModule {
    pub fn new(start: i64, dims: Vec<usize>, x: Vec<F2Matrix>) -> Result<Self> {
        if x.len() + 1 != dims.len() && !(dims.is_empty() && x.is_empty()) {
            return Err(Error::Dimension(format!(
                "{} degrees need {} maps, found {}",
                dims.len(),
                dims.len().saturating_sub(1),
                x.len()
            )));
        }
        for (i, m) in x.iter().enumerate() {
            if m.shape() != (dims[i + 1], dims[i]) {
                return Err(Error::Dimension(format!(
                    "x out of degree {} has shape {}x{}, expected {}x{}",
                    start + i as i64,
                    m.rows(),
                    m.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        Ok(GradedXModule { start, dims, x })
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// rank of x^k out of degree `start + i`; zero once it leaves the module.
    pub fn power_rank(&self, i: usize, k: usize) -> usize {
        if i >= self.dims.len() {
            return 0;
        }
        if k == 0 {
            return self.dims[i];
        }
        if i + k >= self.dims.len() {
            return 0;
        }
        let mut acc = self.x[i].clone();
        for j in i + 1..i + k {
            acc = self.x[j].mul(&acc).expect("consecutive x maps compose");
        }
        acc.rank()
    }
}

/// Cyclic decomposition by rank statistics: with R_k(r) = rank x^k out of
/// degree r and D_k = R_k − R_{k+1}, the number of summands Σʳ F₂[x]/(xˡ) is
/// D_{ℓ−1}(r) − D_ℓ(r−1). Returns `(r, ℓ)` pairs with multiplicity.
pub fn pid_decompose(v: &GradedXModule) -> Result<Vec<(i64, usize)>> {
    let n = v.dims.len();
    // ranks[i][k] for k ≤ n
    let ranks: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..=n + 1).map(|k| v.power_rank(i, k)).collect())
        .collect();
    let r = |i: i64, k: usize| -> i64 {
        if i < 0 || i as usize >= n {
            0
        } else {
            ranks[i as usize][k] as i64
        }
    };
    let d = |i: i64, k: usize| r(i, k) - r(i, k + 1);
    let mut out = Vec::new();
    for i in 0..n as i64 {
        for len in 1..=n {
            let c = d(i, len - 1) - d(i - 1, len);
            if c < 0 {
                return Err(Error::Internal(format!(
                    "negative multiplicity {c} for a length-{len} summand in degree {}",
                    v.start + i
                )));
            }
            for _ in 0..c {
                out.push((v.start + i, len));
            }
        }
    }
    Ok(out)
}

fn apply(m: &BigradedModule, op: Operator, b: Bidegree, v: &F2Vector) -> F2Vector {
    m.op_ref(op, b)
        .mul_vec(v)
        .expect("vector lives at the operator's source")
}

/// Images ρᵃτᵇ·g of the generators lying at (p, row).
fn free_span(m: &BigradedModule, gens: &[(Bidegree, F2Vector)], p: i64, row: i64) -> Vec<F2Vector> {
    let mut out = Vec::new();
    for (g, v) in gens {
        let a = p - g.p;
        let b = row - g.q - a;
        if a < 0 || b < 0 {
            continue;
        }
        let mut at = *g;
        let mut x = v.clone();
        for _ in 0..b {
            x = apply(m, Operator::Tau, at, &x);
            at = at + Bidegree::new(0, 1);
        }
        for _ in 0..a {
            x = apply(m, Operator::Rho, at, &x);
            at = at + Bidegree::new(1, 1);
        }
        out.push(x);
    }
    out
}

/// The quotient by the submodule generated by `gens`, on row `row`, as an
/// F₂[x]-module with x = τ̄⁻¹ρ̄. Checks θ̄ = 0 and τ̄ invertible there.
pub fn quotient_row_module(m: &BigradedModule, gens: &[(Bidegree, F2Vector)], row: i64) -> Result<GradedXModule> {
    let w = m.window();
    if row - 2 < w.q_min || row + 1 > w.q_max {
        return Err(Error::Input(format!(
            "window q ∈ [{}, {}] must contain rows {} to {}",
            w.q_min,
            w.q_max,
            row - 2,
            row + 1
        )));
    }
    let quotient = |p: i64, r: i64| Quotient::new(m.dim(Bidegree::new(p, r)), &free_span(m, gens, p, r));
    let cols: Vec<i64> = (w.p_min..=w.p_max).collect();
    let here: Vec<Quotient> = cols.iter().map(|&p| quotient(p, row)).collect();
    let above: Vec<Quotient> = cols.iter().map(|&p| quotient(p, row + 1)).collect();
    let mut tau_bar = Vec::new();
    for (i, &p) in cols.iter().enumerate() {
        let b = Bidegree::new(p, row);
        let below = quotient(p, row - 2);
        if !here[i].induced(m.op_ref(Operator::Theta, b), &below).is_zero() {
            return Err(Error::NotFiniteComplexModule(format!(
                "θ is nonzero on the quotient by the free part at {b}"
            )));
        }
        let t = here[i].induced(m.op_ref(Operator::Tau, b), &above[i]);
        if t.rows() != t.cols() || t.rank() != t.cols() {
            return Err(Error::NotFiniteComplexModule(format!(
                "τ is not an isomorphism on the quotient by the free part at {b}"
            )));
        }
        tau_bar.push(t);
    }
    let dims: Vec<usize> = here.iter().map(Quotient::dim).collect();
    let mut x = Vec::new();
    for i in 0..cols.len().saturating_sub(1) {
        let b = Bidegree::new(cols[i], row);
        let rho_bar = here[i].induced(m.op_ref(Operator::Rho, b), &above[i + 1]);
        let columns: Vec<F2Vector> = rho_bar
            .columns()
            .iter()
            .map(|c| tau_bar[i + 1].solve(c).expect("shapes agree").expect("τ̄ is invertible"))
            .collect();
        x.push(F2Matrix::from_columns(dims[i + 1], &columns));
    }
    GradedXModule::new(w.p_min, dims, x)
}

/// Unit vectors at θ's pivot columns: a basis whose θ-images are independent.
fn theta_generators(m: &BigradedModule, b: Bidegree) -> Vec<(Bidegree, F2Vector)> {
    let red = m.op_ref(Operator::Theta, b).row_reduce();
    red.pivots.iter().map(|&c| (b, F2Vector::unit(m.dim(b), c))).collect()
}

fn in_triangle(b: Bidegree, m: i64) -> bool {
    0 <= b.q && b.q <= b.p && b.p <= m
}

/// Decomposes the cohomology module of a dimension-`dim` complex.
pub fn decompose_module(module: &BigradedModule, dim: usize) -> Result<Decomposition> {
    let w = module.window();
    let m = dim as i64;
    let needed = Window::new(0, m, -2, m + 2)?;
    if w.p_min > needed.p_min || w.p_max < needed.p_max || w.q_min > needed.q_min || w.q_max < needed.q_max {
        return Err(Error::Input(format!(
            "window must contain p ∈ [0, {m}] and q ∈ [-2, {}]",
            m + 2
        )));
    }
    let mut summands = Vec::new();
    let mut gens = Vec::new();
    for b in w.bidegrees() {
        if !w.contains(b + Operator::Theta.degree()) {
            continue;
        }
        let rank = module.op_ref(Operator::Theta, b).rank();
        if rank == 0 {
            continue;
        }
        if !in_triangle(b, m) {
            return Err(Error::NotFiniteComplexModule(format!(
                "θ has rank {rank} at {b}, outside 0 ≤ q ≤ p ≤ {m}"
            )));
        }
        summands.extend(std::iter::repeat_n(StandardSummand::free(b.p, b.q), rank));
        gens.extend(theta_generators(module, b));
    }
    let v = quotient_row_module(module, &gens, m + 1)?;
    for i in 0..v.dims.len() {
        if v.power_rank(i, dim + 1) != 0 {
            return Err(Error::NotFiniteComplexModule(format!(
                "x^{} is nonzero out of p = {}; the quotient has a free F₂[x] part",
                dim + 1,
                v.start + i as i64
            )));
        }
    }
    for (r, len) in pid_decompose(&v)? {
        summands.push(StandardSummand::antipodal(r, (len - 1) as u32));
    }
    Ok(Decomposition::new(summands))
}

/// Compares dims and θ-ranks, then x-power ranks on the quotient row just
/// above the free generators. Together these determine a standard-form module.
pub fn is_standard_isomorphic(a: &BigradedModule, b: &BigradedModule) -> Result<bool> {
    if a.window() != b.window() {
        return Err(Error::Dimension("modules live on different windows".into()));
    }
    let w = a.window();
    if a.dims() != b.dims() {
        return Ok(false);
    }
    let mut top = w.q_min + 1;
    for d in w.bidegrees() {
        if !w.contains(d + Operator::Theta.degree()) {
            continue;
        }
        let (ra, rb) = (a.op_ref(Operator::Theta, d).rank(), b.op_ref(Operator::Theta, d).rank());
        if ra != rb {
            return Ok(false);
        }
        if ra > 0 {
            top = top.max(d.q);
        }
    }
    let row = top + 1;
    let gens = |m: &BigradedModule| -> Vec<(Bidegree, F2Vector)> {
        w.bidegrees()
            .filter(|&d| w.contains(d + Operator::Theta.degree()))
            .flat_map(|d| theta_generators(m, d))
            .collect()
    };
    let va = quotient_row_module(a, &gens(a), row)?;
    let vb = quotient_row_module(b, &gens(b), row)?;
    if va.dims != vb.dims {
        return Ok(false);
    }
    let span = (w.p_max - w.p_min) as usize;
    for i in 0..va.dims.len() {
        for k in 1..=span {
            if va.power_rank(i, k) != vb.power_rank(i, k) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
