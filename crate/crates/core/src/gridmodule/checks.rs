//! Necessary conditions on the cohomology module of any finite complex.

use std::fmt;

use serde::Serialize;

use super::{BigradedModule, Operator};
use crate::f2linalg::{span_contains, F2Vector};
use crate::m2algebra::Bidegree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Consequence {
    /// ker θ ⊆ im ρ + im τ
    ThetaKernel,
    /// ker ρ ∩ ker τ ⊆ im θ
    JointKernel,
    /// ker τ ⊆ im ρ
    TauKernel,
    /// ker ρ ⊆ im τ
    RhoKernel,
    /// zero whenever p < 0 and q > p − 2
    NegativeRegion,
    /// zero whenever p > m and q < p − m
    HighRegion,
}

impl Consequence {
    pub fn statement(self) -> &'static str {
        match self {
            Consequence::ThetaKernel => "ker θ ⊆ im ρ + im τ",
            Consequence::JointKernel => "ker ρ ∩ ker τ ⊆ im θ",
            Consequence::TauKernel => "ker τ ⊆ im ρ",
            Consequence::RhoKernel => "ker ρ ⊆ im τ",
            Consequence::NegativeRegion => "vanishing for p < 0, q > p − 2",
            Consequence::HighRegion => "vanishing for p > m, q < p − m",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub at: Bidegree,
    pub consequence: Consequence,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {}", self.consequence.statement(), self.at)
    }
}

fn kernel(m: &BigradedModule, op: Operator, b: Bidegree) -> Vec<F2Vector> {
    m.op_ref(op, b).row_reduce().kernel_basis
}

fn image(m: &BigradedModule, op: Operator, from: Bidegree) -> Vec<F2Vector> {
    m.op_ref(op, from).row_reduce().image_basis
}

fn intersect(n: usize, a: &[F2Vector], b: &[F2Vector]) -> Vec<F2Vector> {
    // vectors of a's span that also lie in b's span: solve [A | B] y = 0
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut cols = a.to_vec();
    cols.extend_from_slice(b);
    let m = crate::f2linalg::F2Matrix::from_columns(n, &cols);
    m.row_reduce()
        .kernel_basis
        .iter()
        .map(|y| {
            let mut v = F2Vector::zeros(n);
            for i in y.ones().filter(|&i| i < a.len()) {
                v.xor_assign(&a[i]);
            }
            v
        })
        .filter(|v| !v.is_zero())
        .collect()
}

/// Runs every check on bidegrees where the operators involved stay inside
/// the window. The high vanishing region is checked only when the complex
/// dimension `m` is known.
pub fn check_consequences(module: &BigradedModule, m: Option<usize>) -> Vec<Violation> {
    use Operator::{Rho, Tau, Theta};
    let w = module.window();
    let inside = |bs: &[Bidegree]| bs.iter().all(|&b| w.contains(b));
    let mut out = Vec::new();
    let mut flag = |at: Bidegree, consequence: Consequence| out.push(Violation { at, consequence });
    for b in w.bidegrees() {
        let n = module.dim(b);
        if b.p < 0 && b.q > b.p - 2 && n > 0 {
            flag(b, Consequence::NegativeRegion);
        }
        if let Some(m) = m {
            let m = m as i64;
            if b.p > m && b.q < b.p - m && n > 0 {
                flag(b, Consequence::HighRegion);
            }
        }
        if n == 0 {
            continue;
        }
        let rho_src = b - Rho.degree();
        let tau_src = b - Tau.degree();
        let theta_src = b - Theta.degree();
        if inside(&[b + Theta.degree(), rho_src, tau_src]) {
            let mut span = image(module, Rho, rho_src);
            span.extend(image(module, Tau, tau_src));
            if !span_contains(n, &span, &kernel(module, Theta, b)) {
                flag(b, Consequence::ThetaKernel);
            }
        }
        if inside(&[b + Rho.degree(), b + Tau.degree(), theta_src]) {
            let joint = intersect(n, &kernel(module, Rho, b), &kernel(module, Tau, b));
            if !span_contains(n, &image(module, Theta, theta_src), &joint) {
                flag(b, Consequence::JointKernel);
            }
        }
        if inside(&[b + Tau.degree(), rho_src])
            && !span_contains(n, &image(module, Rho, rho_src), &kernel(module, Tau, b))
        {
            flag(b, Consequence::TauKernel);
        }
        if inside(&[b + Rho.degree(), tau_src])
            && !span_contains(n, &image(module, Tau, tau_src), &kernel(module, Rho, b))
        {
            flag(b, Consequence::RhoKernel);
        }
    }
    out
}
