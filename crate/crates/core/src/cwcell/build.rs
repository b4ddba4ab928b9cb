use std::fmt;

use super::{validate_complex, EquivariantCellComplex};
use crate::error::{Error, Result};
use crate::f2linalg::F2Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceExpr {
    Point,
    FreeOrbit,
    TrivialSphere(u32),
    AntipodalSphere(u32),
    /// S^{p,q}: the one-point compactification of ℝ^{p−q} ⊕ ℝ^q_sign.
    RepSphere(u32, u32),
    TwistedProjectivePlane,
    WhiskerSphere,
    Suspend(Box<SpaceExpr>),
    Wedge(Box<SpaceExpr>, Box<SpaceExpr>),
    DisjointUnion(Box<SpaceExpr>, Box<SpaceExpr>),
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Point => write!(f, "point"),
            SpaceExpr::FreeOrbit => write!(f, "c2"),
            SpaceExpr::TrivialSphere(p) => write!(f, "sphere:{p},0"),
            SpaceExpr::AntipodalSphere(n) => write!(f, "antipodal:{n}"),
            SpaceExpr::RepSphere(p, q) => write!(f, "sphere:{p},{q}"),
            SpaceExpr::TwistedProjectivePlane => write!(f, "rp2tw"),
            SpaceExpr::WhiskerSphere => write!(f, "whisker"),
            SpaceExpr::Suspend(x) => write!(f, "susp({x})"),
            SpaceExpr::Wedge(x, y) => write!(f, "wedge({x},{y})"),
            SpaceExpr::DisjointUnion(x, y) => write!(f, "disjoint({x},{y})"),
        }
    }
}

fn matrix(rows: &[Vec<u8>], cols: usize) -> F2Matrix {
    F2Matrix::from_rows(rows, cols).expect("builder matrices are well-formed")
}

pub fn build(expr: &SpaceExpr) -> Result<EquivariantCellComplex> {
    let mut x = build_raw(expr)?;
    x.name = expr.to_string();
    validate_complex(&x)?;
    Ok(x)
}

fn build_raw(expr: &SpaceExpr) -> Result<EquivariantCellComplex> {
    match expr {
        SpaceExpr::Point => EquivariantCellComplex::with_counts("", vec![1], vec![0]),
        SpaceExpr::FreeOrbit => EquivariantCellComplex::with_counts("", vec![0], vec![1]),
        SpaceExpr::TrivialSphere(p) => build_raw(&SpaceExpr::RepSphere(*p, 0)),
        SpaceExpr::AntipodalSphere(n) => {
            let n = *n as usize;
            let mut x = EquivariantCellComplex::with_counts("", vec![0; n + 1], vec![1; n + 1])?;
            for k in 0..n {
                x.aa_first[k] = matrix(&[vec![1]], 1);
                x.aa_second[k] = matrix(&[vec![1]], 1);
            }
            Ok(x)
        }
        SpaceExpr::RepSphere(p, q) => {
            if q > p {
                return Err(Error::Construction(format!(
                    "sphere:{p},{q} needs weight at most dimension (q ≤ p)"
                )));
            }
            let mut x = sign_sphere(*q as usize)?;
            for _ in 0..(p - q) {
                x = suspend(&x)?;
            }
            Ok(x)
        }
        SpaceExpr::TwistedProjectivePlane => {
            // fixed point v, fixed circle w ∪ c¹, a free arc from v to w and
            // a free disc whose sheets meet along c¹
            let mut x = EquivariantCellComplex::with_counts("", vec![2, 1, 0], vec![0, 1, 1])?;
            x.e[0] = matrix(&[vec![1, 1]], 2);
            x.e[1] = matrix(&[vec![1]], 1);
            x.aa_first[1] = matrix(&[vec![1]], 1);
            x.aa_second[1] = matrix(&[vec![1]], 1);
            Ok(x)
        }
        SpaceExpr::WhiskerSphere => {
            let s = sign_sphere(2)?;
            let mut x = EquivariantCellComplex::with_counts("", vec![2, 1, 0], vec![0, 1, 1])?;
            x.e = s.e.clone();
            x.aa_first = s.aa_first.clone();
            x.aa_second = s.aa_second.clone();
            x.e[1] = F2Matrix::zeros(1, 1);
            x.alpha[0] = matrix(&[vec![1, 1]], 2);
            Ok(x)
        }
        SpaceExpr::Suspend(inner) => suspend(&build_raw(inner)?),
        SpaceExpr::Wedge(a, b) => wedge(&build_raw(a)?, &build_raw(b)?),
        SpaceExpr::DisjointUnion(a, b) => Ok(disjoint_union(&build_raw(a)?, &build_raw(b)?)),
    }
}

/// S^{q,q}: two fixed poles joined by one free orbit in each dimension 1..q.
fn sign_sphere(q: usize) -> Result<EquivariantCellComplex> {
    let mut fixed = vec![0; q + 1];
    fixed[0] = 2;
    let mut free = vec![1; q + 1];
    free[0] = 0;
    let mut x = EquivariantCellComplex::with_counts("", fixed, free)?;
    if q >= 1 {
        x.e[0] = matrix(&[vec![1, 1]], 2);
    }
    for k in 1..q {
        x.aa_first[k] = matrix(&[vec![1]], 1);
        x.aa_second[k] = matrix(&[vec![1]], 1);
    }
    Ok(x)
}

/// Adds a disjoint fixed basepoint as the first fixed 0-cell.
fn add_basepoint(x: &EquivariantCellComplex) -> EquivariantCellComplex {
    let mut fixed = x.fixed.clone();
    fixed[0] += 1;
    let mut y =
        EquivariantCellComplex::with_counts("", fixed, x.free.clone()).expect("one extra cell stays within limits");
    if x.dimension() > 0 {
        y.alpha[0] = shift_columns(&x.alpha[0], 1, x.fixed[0] + 1);
        y.e[0] = shift_columns(&x.e[0], 1, x.fixed[0] + 1);
        for k in 1..x.dimension() {
            y.alpha[k] = x.alpha[k].clone();
            y.e[k] = x.e[k].clone();
        }
        y.aa_first = x.aa_first.clone();
        y.aa_second = x.aa_second.clone();
    }
    y
}

fn shift_columns(m: &F2Matrix, offset: usize, cols: usize) -> F2Matrix {
    let mut out = F2Matrix::zeros(m.rows(), cols);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out.set(r, c + offset, m.get(r, c));
        }
    }
    out
}

fn drop_first_column(m: &F2Matrix) -> F2Matrix {
    let mut out = F2Matrix::zeros(m.rows(), m.cols() - 1);
    for r in 0..m.rows() {
        for c in 1..m.cols() {
            out.set(r, c - 1, m.get(r, c));
        }
    }
    out
}

/// Reduced suspension by the trivial circle, based at the first fixed 0-cell
/// (a disjoint basepoint is added first if there is none). Every other cell
/// moves up one dimension; incidences onto the basepoint are collapsed.
pub fn suspend(x: &EquivariantCellComplex) -> Result<EquivariantCellComplex> {
    let x = if x.fixed[0] == 0 { add_basepoint(x) } else { x.clone() };
    let m = x.dimension();
    let mut fixed = vec![1];
    fixed.extend_from_slice(&x.fixed);
    fixed[1] -= 1;
    let mut free = vec![0];
    free.extend_from_slice(&x.free);
    let mut y = EquivariantCellComplex::with_counts("", fixed, free)?;
    for k in 0..m {
        let (alpha, e) = if k == 0 {
            (drop_first_column(&x.alpha[0]), drop_first_column(&x.e[0]))
        } else {
            (x.alpha[k].clone(), x.e[k].clone())
        };
        y.alpha[k + 1] = alpha;
        y.e[k + 1] = e;
        y.aa_first[k + 1] = x.aa_first[k].clone();
        y.aa_second[k + 1] = x.aa_second[k].clone();
    }
    Ok(y)
}

fn pad_counts(v: &[usize], m: usize) -> Vec<usize> {
    let mut v = v.to_vec();
    v.resize(m + 1, 0);
    v
}

/// Places `m` at row/column offsets inside a zero matrix of the given shape.
fn embed(out: &mut F2Matrix, m: Option<&F2Matrix>, row0: usize, col0: usize) {
    if let Some(m) = m {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                if m.get(r, c) {
                    out.set(row0 + r, col0 + c, true);
                }
            }
        }
    }
}

pub fn disjoint_union(a: &EquivariantCellComplex, b: &EquivariantCellComplex) -> EquivariantCellComplex {
    let m = a.dimension().max(b.dimension());
    let (fa, fb) = (pad_counts(&a.fixed, m), pad_counts(&b.fixed, m));
    let (ga, gb) = (pad_counts(&a.free, m), pad_counts(&b.free, m));
    let fixed: Vec<usize> = (0..=m).map(|k| fa[k] + fb[k]).collect();
    let free: Vec<usize> = (0..=m).map(|k| ga[k] + gb[k]).collect();
    let mut y = EquivariantCellComplex::with_counts("", fixed, free).expect("sum of two bounded complexes");
    for k in 0..m {
        embed(&mut y.alpha[k], a.alpha.get(k), 0, 0);
        embed(&mut y.alpha[k], b.alpha.get(k), fa[k + 1], fa[k]);
        embed(&mut y.e[k], a.e.get(k), 0, 0);
        embed(&mut y.e[k], b.e.get(k), ga[k + 1], fa[k]);
        embed(&mut y.aa_first[k], a.aa_first.get(k), 0, 0);
        embed(&mut y.aa_first[k], b.aa_first.get(k), ga[k + 1], ga[k]);
        embed(&mut y.aa_second[k], a.aa_second.get(k), 0, 0);
        embed(&mut y.aa_second[k], b.aa_second.get(k), ga[k + 1], ga[k]);
    }
    y
}

/// One-point union along the first fixed 0-cell of each summand.
pub fn wedge(a: &EquivariantCellComplex, b: &EquivariantCellComplex) -> Result<EquivariantCellComplex> {
    if a.fixed[0] == 0 || b.fixed[0] == 0 {
        return Err(Error::Construction(
            "wedge needs a fixed 0-cell in both summands".into(),
        ));
    }
    let y = disjoint_union(a, b);
    // fold b's basepoint column into a's, then delete it
    let base_b = a.fixed[0];
    let mut fixed = y.fixed.clone();
    fixed[0] -= 1;
    let mut z = EquivariantCellComplex::with_counts("", fixed, y.free.clone())?;
    z.alpha = y.alpha.clone();
    z.e = y.e.clone();
    z.aa_first = y.aa_first.clone();
    z.aa_second = y.aa_second.clone();
    if y.dimension() > 0 {
        z.alpha[0] = merge_column(&y.alpha[0], base_b);
        z.e[0] = merge_column(&y.e[0], base_b);
    }
    Ok(z)
}

fn merge_column(m: &F2Matrix, col: usize) -> F2Matrix {
    let mut out = F2Matrix::zeros(m.rows(), m.cols() - 1);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m.get(r, c) {
                continue;
            }
            let target = match c.cmp(&col) {
                std::cmp::Ordering::Less => c,
                std::cmp::Ordering::Equal => 0,
                std::cmp::Ordering::Greater => c - 1,
            };
            out.flip(r, target);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cwcell::derived_complexes;

    fn cohomologies(e: SpaceExpr) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let d = derived_complexes(&build(&e).unwrap()).unwrap();
        (d.fixed.cohomology(), d.underlying.cohomology(), d.quotient.cohomology())
    }

    #[test]
    fn documented_cell_structures() {
        let x = build(&SpaceExpr::AntipodalSphere(1)).unwrap();
        assert_eq!(x.fixed_counts(), &[0, 0]);
        assert_eq!(x.free_counts(), &[1, 1]);
        assert_eq!(x.aa_first(0).to_rows(), vec![vec![1]]);
        assert_eq!(x.aa_second(0).to_rows(), vec![vec![1]]);

        let x = build(&SpaceExpr::Point).unwrap();
        assert_eq!((x.fixed_counts(), x.free_counts()), (&[1][..], &[0][..]));

        let x = build(&SpaceExpr::RepSphere(1, 1)).unwrap();
        assert_eq!(x.fixed_counts(), &[2, 0]);
        assert_eq!(x.free_counts(), &[0, 1]);
        assert_eq!(x.e(0).to_rows(), vec![vec![1, 1]]);
    }

    #[test]
    fn antipodal_spheres() {
        for n in 0..6 {
            let (f, u, q) = cohomologies(SpaceExpr::AntipodalSphere(n));
            let mut sphere = vec![0; n as usize + 1];
            sphere[0] += 1;
            sphere[n as usize] += 1;
            assert!(f.iter().all(|&d| d == 0));
            assert_eq!(u, sphere);
            // ℝPⁿ has F₂ in every degree
            assert_eq!(q, vec![1; n as usize + 1]);
        }
    }

    #[test]
    fn rep_spheres() {
        for p in 0..5u32 {
            for q in 0..=p {
                let (f, u, _) = cohomologies(SpaceExpr::RepSphere(p, q));
                let fixed_sphere = (p - q) as usize;
                let mut want = vec![0; f.len()];
                want[0] += 1;
                want[fixed_sphere] += 1;
                assert_eq!(f, want, "fixed set of S^{{{p},{q}}}");
                let mut want = vec![0; u.len()];
                want[0] += 1;
                want[p as usize] += 1;
                assert_eq!(u, want, "underlying S^{{{p},{q}}}");
            }
        }
        // quotient S^{2,1}/C₂ is contractible
        let (_, _, q) = cohomologies(SpaceExpr::RepSphere(2, 1));
        assert_eq!(q, vec![1, 0, 0]);
    }

    #[test]
    fn twisted_projective_plane() {
        let (f, u, q) = cohomologies(SpaceExpr::TwistedProjectivePlane);
        assert_eq!(f, vec![2, 1, 0]);
        assert_eq!(u, vec![1, 1, 1]);
        assert_eq!(q, vec![1, 0, 0]);
    }

    #[test]
    fn whisker_sphere() {
        let (f, u, q) = cohomologies(SpaceExpr::WhiskerSphere);
        // fixed set is an interval; joining the poles makes U(X) ≃ S² ∨ S¹
        assert_eq!(f, vec![1, 0, 0]);
        assert_eq!(u, vec![1, 1, 1]);
        // S^{2,2}/C₂ is again a 2-sphere
        assert_eq!(q, vec![1, 1, 1]);
    }

    #[test]
    fn wedge_and_union_are_block_diagonal() {
        let a = SpaceExpr::RepSphere(1, 1);
        let b = SpaceExpr::AntipodalSphere(1);
        let (_, u, _) = cohomologies(SpaceExpr::DisjointUnion(Box::new(a.clone()), Box::new(b.clone())));
        assert_eq!(u, vec![2, 2]);
        let (f, u, _) = cohomologies(SpaceExpr::Wedge(Box::new(a.clone()), Box::new(a.clone())));
        assert_eq!(f, vec![3, 0]);
        assert_eq!(u, vec![1, 2]);
        assert!(build(&SpaceExpr::Wedge(Box::new(a), Box::new(b))).is_err());
    }

    #[test]
    fn suspending_a_free_space_adds_a_basepoint() {
        // Σ(C₂₊) = S¹ ∨ S¹ with the circles swapped
        let x = build(&SpaceExpr::Suspend(Box::new(SpaceExpr::FreeOrbit))).unwrap();
        assert_eq!(x.fixed_counts(), &[1, 0]);
        assert_eq!(x.free_counts(), &[0, 1]);
        let (f, u, q) = cohomologies(SpaceExpr::Suspend(Box::new(SpaceExpr::FreeOrbit)));
        assert_eq!((f, u, q), (vec![1, 0], vec![1, 2], vec![1, 1]));
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(build(&SpaceExpr::RepSphere(1, 2)).is_err());
    }
}
