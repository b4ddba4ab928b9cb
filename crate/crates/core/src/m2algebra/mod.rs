//! The coefficient ring 𝕄₂ = H^{*,*}(pt) and the antipodal modules A_n.
//! Graded ideals live here too, since they show 𝕄₂ is self-injective.

mod element;
mod hom;
mod ideal;
mod summand;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

pub use element::{mul_m2, M2Element, M2Monomial};
pub use hom::{hom_basis, HomImage};
pub use ideal::{baer_extend, classify_ideal, GradedIdeal, IdealType};
pub use summand::{summand_data, Decomposition, StandardSummand, SummandData};

/// An RO(C₂) bidegree: `p` is the topological dimension, `q` the weight.
/// The fixed-set dimension is `p − q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bidegree {
    pub p: i64,
    pub q: i64,
}

impl Bidegree {
    pub const fn new(p: i64, q: i64) -> Self {
        Bidegree { p, q }
    }

    pub fn fixed_dim(self) -> i64 {
        self.p - self.q
    }
}

impl Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.p + o.p, self.q + o.q)
    }
}

impl Sub for Bidegree {
    type Output = Bidegree;
    fn sub(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.p - o.p, self.q - o.q)
    }
}

impl Neg for Bidegree {
    type Output = Bidegree;
    fn neg(self) -> Bidegree {
        Bidegree::new(-self.p, -self.q)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// The bidegrees carried by ρ, τ and θ.
pub const RHO_DEGREE: Bidegree = Bidegree::new(1, 1);
pub const TAU_DEGREE: Bidegree = Bidegree::new(0, 1);
pub const THETA_DEGREE: Bidegree = Bidegree::new(0, -2);
