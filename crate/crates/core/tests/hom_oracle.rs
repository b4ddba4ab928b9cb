//! Checks `hom_basis` against a brute-force solve of the module-map equations
//! on a finite window.
//!
//! Every summand is at most one-dimensional per bidegree, so a degree-`shift`
//! map is a scalar `c_x` per source bidegree, and each relation
//! `f(μx) = μ f(x)` for a ring generator μ involves at most two unknowns.
//! The solution space is then the number of union-find classes that are not
//! forced to zero.

use bredon::m2algebra::{hom_basis, Bidegree, M2Monomial, StandardSummand};

const P_RANGE: (i64, i64) = (-7, 9);
const Q_RANGE: (i64, i64) = (-14, 11);

fn in_window(b: Bidegree) -> bool {
    (P_RANGE.0..=P_RANGE.1).contains(&b.p) && (Q_RANGE.0..=Q_RANGE.1).contains(&b.q)
}

fn nonzero(s: StandardSummand, b: Bidegree) -> bool {
    match s {
        StandardSummand::Free { p, q } => {
            let (s, t) = (b.p - p, b.q - q);
            (0 <= s && s <= t) || (s <= 0 && t <= s - 2)
        }
        StandardSummand::Antipodal { r, n } => r <= b.p && b.p <= r + n as i64,
    }
}

/// Whether μ carries the (unique) element of `s` at `b` to a nonzero element.
fn acts(s: StandardSummand, b: Bidegree, mu: M2Monomial) -> bool {
    if !nonzero(s, b) {
        return false;
    }
    match s {
        StandardSummand::Free { p, q } => {
            let (x, y) = (b.p - p, b.q - q);
            match mu {
                // upper times anything lands where it would by degree, unless
                // it pushes a lower-cone element out of the cone
                M2Monomial::Upper(a, c) => {
                    let (a, c) = (a as i64, c as i64);
                    let (x2, y2) = (x + a, y + a + c);
                    if 0 <= x && x <= y {
                        true
                    } else {
                        x2 <= 0 && y2 <= x2 - 2
                    }
                }
                // lower only acts on the upper cone, landing in the lower cone
                M2Monomial::Lower(a, c) => {
                    let (a, c) = (a as i64, c as i64);
                    0 <= x && x <= y && {
                        let (x2, y2) = (x - a, y - 2 - a - c);
                        x2 <= 0 && y2 <= x2 - 2
                    }
                }
            }
        }
        StandardSummand::Antipodal { r, n } => match mu {
            M2Monomial::Upper(a, _) => b.p + a as i64 <= r + n as i64,
            M2Monomial::Lower(..) => false,
        },
    }
}

struct Dsu {
    parent: Vec<usize>,
    zero: Vec<bool>,
}

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        self.parent[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a] = b;
            self.zero[b] |= self.zero[a];
        }
    }
    fn kill(&mut self, a: usize) {
        let r = self.find(a);
        self.zero[r] = true;
    }
}

fn generators() -> Vec<M2Monomial> {
    let mut g = vec![M2Monomial::RHO, M2Monomial::TAU];
    for a in 0..=18 {
        for b in 0..=28 {
            g.push(M2Monomial::Lower(a, b));
        }
    }
    g
}

fn oracle_dim(src: StandardSummand, dst: StandardSummand, shift: Bidegree, gens: &[M2Monomial]) -> usize {
    let mut index = std::collections::HashMap::new();
    let mut points = Vec::new();
    for p in P_RANGE.0..=P_RANGE.1 {
        for q in Q_RANGE.0..=Q_RANGE.1 {
            let b = Bidegree::new(p, q);
            if nonzero(src, b) && nonzero(dst, b + shift) && in_window(b + shift) {
                index.insert(b, points.len());
                points.push(b);
            }
        }
    }
    let mut dsu = Dsu {
        parent: (0..points.len()).collect(),
        zero: vec![false; points.len()],
    };
    // relations out of source elements whose target is zero matter too
    for p in P_RANGE.0..=P_RANGE.1 {
        for q in Q_RANGE.0..=Q_RANGE.1 {
            let x = Bidegree::new(p, q);
            if !nonzero(src, x) || !in_window(x + shift) {
                continue;
            }
            let i = index.get(&x).copied();
            for &mu in gens {
                let y = x + mu.bidegree();
                if !in_window(y) || !in_window(y + shift) {
                    continue;
                }
                let lhs = acts(src, x, mu).then(|| index.get(&y).copied()).flatten();
                let rhs = i.filter(|_| acts(dst, x + shift, mu));
                match (lhs, rhs) {
                    (Some(j), Some(i)) => dsu.union(i, j),
                    (Some(j), None) => dsu.kill(j),
                    (None, Some(i)) => dsu.kill(i),
                    (None, None) => {}
                }
            }
        }
    }
    (0..points.len()).filter(|&i| dsu.find(i) == i && !dsu.zero[i]).count()
}

/// The basis element's window expansion must satisfy every relation too.
fn check_expansion(src: StandardSummand, dst: StandardSummand, shift: Bidegree, gens: &[M2Monomial]) {
    for img in hom_basis(src, dst, shift) {
        let c = |b: Bidegree| img.entry(src, dst, shift, b);
        let mut any = false;
        for p in P_RANGE.0..=P_RANGE.1 {
            for q in Q_RANGE.0..=Q_RANGE.1 {
                let x = Bidegree::new(p, q);
                if !c(x) {
                    continue;
                }
                any = true;
                assert!(nonzero(src, x) && nonzero(dst, x + shift));
                for &mu in gens {
                    let y = x + mu.bidegree();
                    if !in_window(y) || !in_window(y + shift) {
                        continue;
                    }
                    let lhs = acts(src, x, mu) && c(y);
                    let rhs = acts(dst, x + shift, mu);
                    assert_eq!(lhs, rhs, "{src} -> {dst} shift {shift} at {x} by {mu}");
                }
            }
        }
        assert!(any, "basis map {img:?} for {src} -> {dst} vanishes on the window");
    }
}

#[test]
fn hom_basis_matches_window_solve() {
    let gens = generators();
    let summands = [
        StandardSummand::free(0, 0),
        StandardSummand::free(1, 1),
        StandardSummand::free(2, 0),
        StandardSummand::free(2, 1),
        StandardSummand::antipodal(0, 0),
        StandardSummand::antipodal(1, 0),
        StandardSummand::antipodal(0, 1),
        StandardSummand::antipodal(1, 2),
    ];
    let mut nonzero_cases = 0;
    for &src in &summands {
        for &dst in &summands {
            for sp in -2..=2 {
                for sq in -3..=3 {
                    let shift = Bidegree::new(sp, sq);
                    let expected = oracle_dim(src, dst, shift, &gens);
                    let basis = hom_basis(src, dst, shift);
                    assert_eq!(basis.len(), expected, "{src} -> {dst} shift {shift}");
                    check_expansion(src, dst, shift, &gens);
                    nonzero_cases += expected;
                }
            }
        }
    }
    assert!(nonzero_cases > 100);
}
