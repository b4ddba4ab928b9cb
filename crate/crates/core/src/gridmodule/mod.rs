//! Bigraded 𝕄₂-modules materialized on a finite window of bidegrees.

mod checks;
mod cohomology;
mod decompose;
mod dual;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2linalg::F2Matrix;
use crate::m2algebra::{summand_data, Bidegree, Decomposition, StandardSummand};

pub use checks::{check_consequences, Consequence, Violation};
pub use cohomology::{cohomology_dims, weight_complex};
pub use decompose::{decompose_module, is_standard_isomorphic, pid_decompose, quotient_row_module, GradedXModule};
pub use dual::{borel, borel_dims, dualize, homology_dims, BorelSummand, DualDecomposition, DualSummand};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub p_min: i64,
    pub p_max: i64,
    pub q_min: i64,
    pub q_max: i64,
}

impl Window {
    pub fn new(p_min: i64, p_max: i64, q_min: i64, q_max: i64) -> Result<Self> {
        if p_min > p_max || q_min > q_max {
            return Err(Error::Input(format!(
                "empty window p ∈ [{p_min},{p_max}], q ∈ [{q_min},{q_max}]"
            )));
        }
        Ok(Window {
            p_min,
            p_max,
            q_min,
            q_max,
        })
    }

    /// Large enough for every structural feature of a dimension-`m` complex
    /// plus the margins the consequence checks need.
    pub fn default_for(m: usize) -> Self {
        let m = m as i64;
        Window {
            p_min: -2,
            p_max: m + 2,
            q_min: -m - 6,
            q_max: m + 3,
        }
    }

    pub fn contains(&self, b: Bidegree) -> bool {
        self.p_min <= b.p && b.p <= self.p_max && self.q_min <= b.q && b.q <= self.q_max
    }

    pub fn width(&self) -> usize {
        (self.p_max - self.p_min + 1) as usize
    }

    pub fn height(&self) -> usize {
        (self.q_max - self.q_min + 1) as usize
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        (self.p_min..=self.p_max).flat_map(move |p| (self.q_min..=self.q_max).map(move |q| Bidegree::new(p, q)))
    }

    fn index(&self, b: Bidegree) -> (usize, usize) {
        ((b.p - self.p_min) as usize, (b.q - self.q_min) as usize)
    }
}

/// A table of dimensions indexed `[p − p_min][q − q_min]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimTable {
    pub window: Window,
    pub dims: Vec<Vec<usize>>,
}

impl DimTable {
    pub fn zeros(window: Window) -> Self {
        DimTable {
            window,
            dims: vec![vec![0; window.height()]; window.width()],
        }
    }

    /// Zero outside the window.
    pub fn get(&self, b: Bidegree) -> usize {
        if !self.window.contains(b) {
            return 0;
        }
        let (i, j) = self.window.index(b);
        self.dims[i][j]
    }

    pub fn set(&mut self, b: Bidegree, value: usize) {
        let (i, j) = self.window.index(b);
        self.dims[i][j] = value;
    }

    /// Dims of the realization of `d`, from closed forms.
    pub fn of_decomposition(d: &Decomposition, window: Window) -> Self {
        let mut t = DimTable::zeros(window);
        for b in window.bidegrees() {
            let n = d.summands().iter().filter(|&&s| summand_data(s, b).dim).count();
            t.set(b, n);
        }
        t
    }

    /// First bidegree (in p-major order) where the tables differ.
    pub fn first_difference(&self, other: &DimTable) -> Option<Bidegree> {
        self.window.bidegrees().find(|&b| self.get(b) != other.get(b))
    }
}

/// The three operator families, each an F₂-matrix per bidegree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Operator {
    Rho,
    Tau,
    Theta,
}

impl Operator {
    pub const ALL: [Operator; 3] = [Operator::Rho, Operator::Tau, Operator::Theta];

    pub fn degree(self) -> Bidegree {
        match self {
            Operator::Rho => crate::m2algebra::RHO_DEGREE,
            Operator::Tau => crate::m2algebra::TAU_DEGREE,
            Operator::Theta => crate::m2algebra::THETA_DEGREE,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Operator::Rho => "rho",
            Operator::Tau => "tau",
            Operator::Theta => "theta",
        }
    }
}

/// A bigraded F₂-vector space with ρ, τ, θ actions, on a window. Operators
/// whose target bidegree leaves the window have zero rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigradedModule {
    window: Window,
    dims: DimTable,
    // [operator][p index][q index]
    ops: [Vec<Vec<F2Matrix>>; 3],
}

fn op_index(op: Operator) -> usize {
    match op {
        Operator::Rho => 0,
        Operator::Tau => 1,
        Operator::Theta => 2,
    }
}

impl BigradedModule {
    /// All operators zero.
    pub fn with_dims(dims: DimTable) -> Self {
        let window = dims.window;
        let make = |op: Operator| {
            (window.p_min..=window.p_max)
                .map(|p| {
                    (window.q_min..=window.q_max)
                        .map(|q| {
                            let b = Bidegree::new(p, q);
                            F2Matrix::zeros(dims.get(b + op.degree()), dims.get(b))
                        })
                        .collect()
                })
                .collect()
        };
        BigradedModule {
            window,
            ops: [make(Operator::Rho), make(Operator::Tau), make(Operator::Theta)],
            dims,
        }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn dims(&self) -> &DimTable {
        &self.dims
    }

    pub fn dim(&self, b: Bidegree) -> usize {
        self.dims.get(b)
    }

    /// The operator out of `b`; a 0×0 matrix outside the window.
    pub fn op(&self, op: Operator, b: Bidegree) -> F2Matrix {
        if !self.window.contains(b) {
            return F2Matrix::zeros(0, 0);
        }
        let (i, j) = self.window.index(b);
        self.ops[op_index(op)][i][j].clone()
    }

    pub fn op_ref(&self, op: Operator, b: Bidegree) -> &F2Matrix {
        let (i, j) = self.window.index(b);
        &self.ops[op_index(op)][i][j]
    }

    pub fn set_op(&mut self, op: Operator, b: Bidegree, m: F2Matrix) -> Result<()> {
        let want = (self.dim(b + op.degree()), self.dim(b));
        if m.shape() != want {
            return Err(Error::Dimension(format!(
                "{} at {b} has shape {}x{}, expected {}x{}",
                op.name(),
                m.rows(),
                m.cols(),
                want.0,
                want.1
            )));
        }
        let (i, j) = self.window.index(b);
        self.ops[op_index(op)][i][j] = m;
        Ok(())
    }

    /// Verifies the 𝕄₂ relations wherever both composites stay in the window.
    pub fn check_relations(&self) -> Result<()> {
        use Operator::{Rho, Tau, Theta};
        let pairs = [
            (Rho, Tau, false),
            (Rho, Theta, true),
            (Tau, Theta, true),
            (Theta, Rho, true),
            (Theta, Tau, true),
            (Theta, Theta, true),
        ];
        for b in self.window.bidegrees() {
            for &(a, c, must_vanish) in &pairs {
                let mid_ac = b + a.degree();
                let end = mid_ac + c.degree();
                if !self.window.contains(mid_ac) || !self.window.contains(end) {
                    continue;
                }
                let ac = self.op_ref(c, mid_ac).mul(self.op_ref(a, b))?;
                let ok = if must_vanish {
                    ac.is_zero()
                } else {
                    let mid_ca = b + c.degree();
                    !self.window.contains(mid_ca) || ac == self.op_ref(a, mid_ca).mul(self.op_ref(c, b))?
                };
                if !ok {
                    return Err(Error::Input(format!(
                        "relation fails at {b}: {} then {}",
                        a.name(),
                        c.name()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ModuleJson = serde_json::from_str(text)?;
        let w = raw.window;
        Window::new(w.p_min, w.p_max, w.q_min, w.q_max)?;
        if raw.dims.len() != w.width() || raw.dims.iter().any(|c| c.len() != w.height()) {
            return Err(Error::Input(format!(
                "dims must be a {}x{} array indexed [p - p_min][q - q_min]",
                w.width(),
                w.height()
            )));
        }
        let mut m = BigradedModule::with_dims(DimTable {
            window: w,
            dims: raw.dims,
        });
        for (op, data) in [
            (Operator::Rho, raw.rho),
            (Operator::Tau, raw.tau),
            (Operator::Theta, raw.theta),
        ] {
            let Some(data) = data else { continue };
            if data.len() != w.width() || data.iter().any(|c| c.len() != w.height()) {
                return Err(Error::Input(format!(
                    "\"{}\" must be a {}x{} array of matrices",
                    op.name(),
                    w.width(),
                    w.height()
                )));
            }
            for (i, col) in data.into_iter().enumerate() {
                for (j, rows) in col.into_iter().enumerate() {
                    let b = Bidegree::new(w.p_min + i as i64, w.q_min + j as i64);
                    let target = m.dim(b + op.degree());
                    let cols = m.dim(b);
                    if rows.len() != target {
                        return Err(Error::Input(format!(
                            "{} at {b} has {} rows, expected {target}",
                            op.name(),
                            rows.len()
                        )));
                    }
                    m.set_op(op, b, F2Matrix::from_rows(&rows, cols)?)?;
                }
            }
        }
        m.check_relations()?;
        Ok(m)
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let dump = |op: Operator| {
            Some(
                self.ops[op_index(op)]
                    .iter()
                    .map(|col| col.iter().map(F2Matrix::to_rows).collect())
                    .collect(),
            )
        };
        let raw = ModuleJson {
            window: self.window,
            dims: self.dims.dims.clone(),
            rho: dump(Operator::Rho),
            tau: dump(Operator::Tau),
            theta: dump(Operator::Theta),
        };
        let out = if pretty {
            serde_json::to_string_pretty(&raw)
        } else {
            serde_json::to_string(&raw)
        };
        out.expect("module serialization cannot fail")
    }
}

type MatrixGrid = Vec<Vec<Vec<Vec<u8>>>>;

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    window: Window,
    dims: Vec<Vec<usize>>,
    #[serde(default)]
    rho: Option<MatrixGrid>,
    #[serde(default)]
    tau: Option<MatrixGrid>,
    #[serde(default)]
    theta: Option<MatrixGrid>,
}

/// Direct sum of the closed-form summand modules. The basis at each
/// bidegree lists the summands present there in decomposition order.
pub fn realize(d: &Decomposition, window: Window) -> BigradedModule {
    let summands = d.summands();
    let present = |b: Bidegree| -> Vec<usize> {
        (0..summands.len())
            .filter(|&i| summand_data(summands[i], b).dim)
            .collect()
    };
    let mut m = BigradedModule::with_dims(DimTable::of_decomposition(d, window));
    for b in window.bidegrees() {
        let here = present(b);
        if here.is_empty() {
            continue;
        }
        for op in Operator::ALL {
            let t = b + op.degree();
            if !window.contains(t) {
                continue;
            }
            let there = present(t);
            let mut mat = F2Matrix::zeros(there.len(), here.len());
            for (col, &i) in here.iter().enumerate() {
                let data = summand_data(summands[i], b);
                let acts = match op {
                    Operator::Rho => data.rho,
                    Operator::Tau => data.tau,
                    Operator::Theta => data.theta,
                };
                if acts {
                    let row = there
                        .iter()
                        .position(|&j| j == i)
                        .expect("image lies in the same summand");
                    mat.set(row, col, true);
                }
            }
            m.set_op(op, b, mat).expect("shapes follow the dim table");
        }
    }
    m
}

/// Convenience for building small modules by hand.
pub fn single_summand(s: StandardSummand, window: Window) -> BigradedModule {
    realize(&Decomposition::new(vec![s]), window)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_realization_matches_both_cones() {
        let w = Window::default_for(2);
        let m = single_summand(StandardSummand::free(0, 0), w);
        for b in w.bidegrees() {
            let (s, t) = (b.p, b.q);
            let want = (0 <= s && s <= t) || (s <= 0 && t <= s - 2);
            assert_eq!(m.dim(b) == 1, want, "{b}");
        }
        m.check_relations().unwrap();
        assert_eq!(m.op(Operator::Theta, Bidegree::new(0, 0)).rank(), 1);
        assert_eq!(m.op(Operator::Theta, Bidegree::new(1, 1)).rank(), 0);
    }

    #[test]
    fn antipodal_strip() {
        let w = Window::default_for(4);
        let m = single_summand(StandardSummand::antipodal(0, 4), w);
        for b in w.bidegrees() {
            assert_eq!(m.dim(b), usize::from((0..=4).contains(&b.p)));
        }
        m.check_relations().unwrap();
        let empty = realize(&Decomposition::empty(), w);
        assert!(w.bidegrees().all(|b| empty.dim(b) == 0));
    }

    #[test]
    fn json_round_trip() {
        let w = Window::new(-1, 2, -3, 2).unwrap();
        let d = Decomposition::new(vec![StandardSummand::free(0, 0), StandardSummand::antipodal(1, 1)]);
        let m = realize(&d, w);
        let back = BigradedModule::from_json(&m.to_json(false)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn json_rejects_broken_relations() {
        let w = Window::new(0, 1, 0, 2).unwrap();
        let mut m = realize(&Decomposition::new(vec![StandardSummand::free(0, 0)]), w);
        // kill ρ on τ so that τρ ≠ ρτ out of (0,0)
        m.set_op(Operator::Rho, Bidegree::new(0, 1), F2Matrix::zeros(1, 1))
            .unwrap();
        let err = BigradedModule::from_json(&m.to_json(false)).unwrap_err();
        assert!(err.to_string().contains("(0,0)"), "{err}");
    }
}
