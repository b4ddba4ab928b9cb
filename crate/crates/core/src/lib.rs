//! Exact RO(C₂)-graded Bredon cohomology of finite C₂-CW complexes with
//! constant F₂ coefficients, together with its decomposition into shifted
//! copies of 𝕄₂ and of the antipodal-sphere modules A_n.

pub mod analyzer;
pub mod cli;
pub mod cwcell;
pub mod error;
pub mod f2linalg;
pub mod gridmodule;
pub mod m2algebra;

pub use error::{Error, Result};
