//! Exact group dimensions of H^{p,q} from the cellular chains.
//!
//! Cellular chains of X are a complex of permutation modules over F₂[C₂]
//! (F₂ for a fixed cell, F₂[C₂] for a free orbit). Smashing HF₂ with the
//! representation sphere S^{qσ} is modelled by a second such complex: the
//! reduced chains of S^{qσ} for q ≥ 0 and their dual for q < 0. Maps
//! between permutation modules compute maps of HF₂-modules, so
//! H^{p,q}(X) is the cohomology in degree p − q of the equivariant Hom
//! complex from the first to the second.

use rayon::prelude::*;

use super::{DimTable, Window};
use crate::cwcell::{CochainComplex, ScalarComplex};
use crate::f2linalg::F2Matrix;
use crate::m2algebra::Bidegree;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    /// F₂ with trivial action.
    Trivial,
    /// F₂[C₂], basis (g, γg).
    Free,
}

impl Kind {
    fn size(self) -> usize {
        match self {
            Kind::Trivial => 1,
            Kind::Free => 2,
        }
    }
}

/// Dimension of Hom_{F₂[C₂]}(src, dst).
fn hom_dim(src: Kind, dst: Kind) -> usize {
    if (src, dst) == (Kind::Free, Kind::Free) {
        2
    } else {
        1
    }
}

/// A small dense matrix over F₂ (at most 2 × 2), row-major.
type Small = [[bool; 2]; 2];

/// The equivariant map with parameters `c` as an underlying matrix. On free
/// sources the parameters give the image of g; a trivial target of a free
/// source sees g and γg alike; a free target of a trivial source is hit in
/// the norm element g + γg.
fn embed(src: Kind, dst: Kind, c: [bool; 2]) -> Small {
    match (src, dst) {
        (Kind::Trivial, Kind::Trivial) => [[c[0], false], [false, false]],
        (Kind::Free, Kind::Trivial) => [[c[0], c[0]], [false, false]],
        (Kind::Trivial, Kind::Free) => [[c[0], false], [c[0], false]],
        (Kind::Free, Kind::Free) => [[c[0], c[1]], [c[1], c[0]]],
    }
}

fn extract(src: Kind, dst: Kind, m: &Small) -> [bool; 2] {
    match (src, dst) {
        (Kind::Free, Kind::Free) => [m[0][0], m[1][0]],
        _ => [m[0][0], false],
    }
}

/// `a ∘ b` for b: X → Y and a: Y → Z with the given underlying sizes.
fn compose(a: &Small, b: &Small, x: usize, y: usize, z: usize) -> Small {
    let mut out = [[false; 2]; 2];
    for (i, row) in out.iter_mut().enumerate().take(z) {
        for (j, cell) in row.iter_mut().enumerate().take(x) {
            *cell = (0..y).fold(false, |acc, k| acc ^ (a[i][k] & b[k][j]));
        }
    }
    out
}

/// A bounded complex of permutation modules with homological boundary
/// ∂_k: C_k → C_{k−1}, stored sparsely per generator pair.
struct PermComplex {
    lo: i64,
    gens: Vec<Vec<Kind>>,
    /// `bd[k − lo]` lists (source, target, underlying matrix) for ∂ out of
    /// degree k.
    bd: Vec<Vec<(usize, usize, Small)>>,
}

impl PermComplex {
    fn hi(&self) -> i64 {
        self.lo + self.gens.len() as i64 - 1
    }

    fn gens(&self, k: i64) -> &[Kind] {
        if k < self.lo || k > self.hi() {
            &[]
        } else {
            &self.gens[(k - self.lo) as usize]
        }
    }

    fn boundary(&self, k: i64) -> &[(usize, usize, Small)] {
        if k < self.lo || k > self.hi() {
            &[]
        } else {
            &self.bd[(k - self.lo) as usize]
        }
    }

    fn cells(sc: &ScalarComplex) -> Self {
        let m = sc.dimension();
        let gens: Vec<Vec<Kind>> = (0..=m)
            .map(|k| {
                let mut g = vec![Kind::Trivial; sc.fixed[k]];
                g.extend(std::iter::repeat_n(Kind::Free, sc.free[k]));
                g
            })
            .collect();
        let mut bd = vec![Vec::new(); m + 1];
        for k in 0..m {
            let nf = sc.fixed[k];
            let mut out = Vec::new();
            for (j, i) in nonzero(&sc.mm[k]) {
                out.push((j, i, embed(Kind::Trivial, Kind::Trivial, [true, false])));
            }
            for (j, i) in nonzero(&sc.ma[k]) {
                out.push((sc.fixed[k + 1] + j, i, embed(Kind::Free, Kind::Trivial, [true, false])));
            }
            for i in 0..sc.free[k] {
                for j in 0..sc.free[k + 1] {
                    let c = [sc.aa_first[k].get(j, i), sc.aa_second[k].get(j, i)];
                    if c != [false, false] {
                        out.push((sc.fixed[k + 1] + j, nf + i, embed(Kind::Free, Kind::Free, c)));
                    }
                }
            }
            bd[k + 1] = out;
        }
        PermComplex { lo: 0, gens, bd }
    }

    /// HF₂ ∧ S^{qσ}: reduced cells of S^{qσ} (a fixed point and one free
    /// orbit in each dimension 1..q), dualized for negative q.
    fn sphere(q: i64) -> Self {
        let b = q.unsigned_abs() as usize;
        let norm = embed(Kind::Free, Kind::Free, [true, true]);
        if q >= 0 {
            let mut gens = vec![vec![Kind::Trivial]];
            gens.extend(std::iter::repeat_n(vec![Kind::Free], b));
            let mut bd = vec![Vec::new(); b + 1];
            for (k, out) in bd.iter_mut().enumerate().skip(1) {
                let m = if k == 1 {
                    embed(Kind::Free, Kind::Trivial, [true, false])
                } else {
                    norm
                };
                out.push((0, 0, m));
            }
            PermComplex { lo: 0, gens, bd }
        } else {
            let mut gens: Vec<Vec<Kind>> = vec![vec![Kind::Free]; b];
            gens.push(vec![Kind::Trivial]);
            let mut bd = vec![Vec::new(); b + 1];
            for (idx, out) in bd.iter_mut().enumerate().skip(1) {
                let m = if idx == b {
                    embed(Kind::Trivial, Kind::Free, [true, false])
                } else {
                    norm
                };
                out.push((0, 0, m));
            }
            PermComplex {
                lo: -(b as i64),
                gens,
                bd,
            }
        }
    }
}

fn nonzero(m: &F2Matrix) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if m.get(r, c) {
                out.push((r, c));
            }
        }
    }
    out
}

/// Coordinates of Hom^a = ∏_k Hom(C_k, N_{k−a}): one block per
/// (k, cell, target generator).
struct HomLayout {
    offsets: std::collections::HashMap<(i64, usize, usize), usize>,
    dim: usize,
}

fn layout(c: &PermComplex, n: &PermComplex, a: i64) -> HomLayout {
    let mut offsets = std::collections::HashMap::new();
    let mut dim = 0;
    for k in c.lo..=c.hi() {
        for (i, &ci) in c.gens(k).iter().enumerate() {
            for (j, &nj) in n.gens(k - a).iter().enumerate() {
                offsets.insert((k, i, j), dim);
                dim += hom_dim(ci, nj);
            }
        }
    }
    HomLayout { offsets, dim }
}

/// D f = ∂_N ∘ f + f ∘ ∂_C from Hom^a to Hom^{a+1}.
fn hom_differential(c: &PermComplex, n: &PermComplex, a: i64, from: &HomLayout, to: &HomLayout) -> F2Matrix {
    let mut d = F2Matrix::zeros(to.dim, from.dim);
    let mut add = |block: (i64, usize, usize), src: Kind, dst: Kind, m: &Small, col: usize| {
        let base = to.offsets[&block];
        let coeffs = extract(src, dst, m);
        for (v, &bit) in coeffs.iter().enumerate().take(hom_dim(src, dst)) {
            if bit {
                d.flip(base + v, col);
            }
        }
    };
    for (&(k, i, j), &base) in &from.offsets {
        let ci = c.gens(k)[i];
        let nj = n.gens(k - a)[j];
        for v in 0..hom_dim(ci, nj) {
            let mut coeffs = [false; 2];
            coeffs[v] = true;
            let f = embed(ci, nj, coeffs);
            // ∂_N ∘ f lands in N_{k−a−1}
            for &(src, dst, ref bn) in n.boundary(k - a) {
                if src == j {
                    let nt = n.gens(k - a - 1)[dst];
                    let m = compose(bn, &f, ci.size(), nj.size(), nt.size());
                    add((k, i, dst), ci, nt, &m, base + v);
                }
            }
            // f ∘ ∂_C starts from C_{k+1}
            for &(src, dst, ref bc) in c.boundary(k + 1) {
                if dst == i {
                    let cs = c.gens(k + 1)[src];
                    let m = compose(&f, bc, cs.size(), ci.size(), nj.size());
                    add((k + 1, src, j), cs, nj, &m, base + v);
                }
            }
        }
    }
    d
}

/// The weight-q cochain complex, returned with the topological degree p of
/// its first group.
pub fn weight_complex(sc: &ScalarComplex, q: i64) -> (i64, CochainComplex) {
    let c = PermComplex::cells(sc);
    let n = PermComplex::sphere(q);
    let (a_lo, a_hi) = (c.lo - n.hi(), c.hi() - n.lo);
    let layouts: Vec<HomLayout> = (a_lo..=a_hi).map(|a| layout(&c, &n, a)).collect();
    let d = (a_lo..a_hi)
        .map(|a| {
            let i = (a - a_lo) as usize;
            hom_differential(&c, &n, a, &layouts[i], &layouts[i + 1])
        })
        .collect();
    let dims = layouts.iter().map(|l| l.dim).collect();
    (a_lo + q, CochainComplex { dims, d })
}

/// dim H^{p,q} for every bidegree of the window.
pub fn cohomology_dims(sc: &ScalarComplex, window: Window) -> DimTable {
    let columns: Vec<(i64, Vec<(i64, usize)>)> = (window.q_min..=window.q_max)
        .into_par_iter()
        .map(|q| {
            let (n_lo, cx) = weight_complex(sc, q);
            let h = cx.cohomology();
            let vals = h.into_iter().enumerate().map(|(i, d)| (n_lo + i as i64, d)).collect();
            (q, vals)
        })
        .collect();
    let mut t = DimTable::zeros(window);
    for (q, vals) in columns {
        for (p, d) in vals {
            let b = Bidegree::new(p, q);
            if window.contains(b) {
                t.set(b, d);
            }
        }
    }
    t
}
