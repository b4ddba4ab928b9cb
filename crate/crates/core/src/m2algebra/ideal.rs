//! Graded ideals of 𝕄₂ and the Baer-criterion extension of ideal maps.
//!
//! Every graded ideal either contains an upper-cone monomial, in which case it
//! is finitely generated in the upper cone and contains the whole lower cone
//! (type I), or lies entirely in the lower cone (type II). A map from an ideal
//! into 𝕄₂ is pinned down by one nonzero value and is always multiplication by
//! some λ ∈ 𝕄₂.

use super::{M2Element, M2Monomial};
use crate::error::{Error, Result};

use M2Monomial::{Lower, Upper};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealType {
    /// Finitely many upper-cone generators; contains the full lower cone.
    I,
    /// No upper-cone elements.
    II,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdeal {
    kind: IdealType,
    /// Minimal generators: upper-cone monomials for type I, lower-cone
    /// monomials for type II. Sorted.
    generators: Vec<M2Monomial>,
}

fn exps(m: M2Monomial) -> (u32, u32) {
    match m {
        Upper(a, b) | Lower(a, b) => (a, b),
    }
}

pub fn classify_ideal(gens: &[M2Monomial]) -> Result<GradedIdeal> {
    if gens.is_empty() {
        return Err(Error::Input("an ideal needs at least one generator".into()));
    }
    let upper: Vec<(u32, u32)> = gens.iter().filter(|g| g.is_upper()).map(|&g| exps(g)).collect();
    if !upper.is_empty() {
        // drop anything divisible by another generator
        let mut minimal: Vec<(u32, u32)> = upper
            .iter()
            .copied()
            .filter(|&(c, d)| !upper.iter().any(|&(m, n)| m <= c && n <= d && (m, n) != (c, d)))
            .collect();
        minimal.sort();
        minimal.dedup();
        return Ok(GradedIdeal {
            kind: IdealType::I,
            generators: minimal.into_iter().map(|(a, b)| Upper(a, b)).collect(),
        });
    }
    // θ/(ρᵃτᵇ) generates every θ/(ρᶜτᵈ) with c ≤ a, d ≤ b; keep the maximal ones
    let lower: Vec<(u32, u32)> = gens.iter().map(|&g| exps(g)).collect();
    let mut maximal: Vec<(u32, u32)> = lower
        .iter()
        .copied()
        .filter(|&(c, d)| !lower.iter().any(|&(a, b)| c <= a && d <= b && (a, b) != (c, d)))
        .collect();
    maximal.sort();
    maximal.dedup();
    Ok(GradedIdeal {
        kind: IdealType::II,
        generators: maximal.into_iter().map(|(a, b)| Lower(a, b)).collect(),
    })
}

impl GradedIdeal {
    pub fn kind(&self) -> IdealType {
        self.kind
    }

    pub fn generators(&self) -> &[M2Monomial] {
        &self.generators
    }

    pub fn contains(&self, x: M2Monomial) -> bool {
        match (self.kind, x) {
            (IdealType::I, Lower(..)) => true,
            (IdealType::I, Upper(c, d)) => self
                .generators
                .iter()
                .any(|&g| matches!(g, Upper(m, n) if m <= c && n <= d)),
            (IdealType::II, Upper(..)) => false,
            (IdealType::II, Lower(c, d)) => self
                .generators
                .iter()
                .any(|&g| matches!(g, Lower(a, b) if c <= a && d <= b)),
        }
    }
}

fn require(ok: bool, what: &str, lhs: (&str, u32), rhs: (&str, u32)) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Classification(format!(
            "{what} violated ({} = {}, {} = {})",
            lhs.0, lhs.1, rhs.0, rhs.1
        )))
    }
}

/// Finds λ with `f(x) = λx` on all of `ideal`, given the value of `f` on one
/// element `generator` of the ideal.
pub fn baer_extend(ideal: &GradedIdeal, generator: M2Monomial, image: &M2Element) -> Result<M2Element> {
    if !ideal.contains(generator) {
        return Err(Error::Classification(format!(
            "{generator} is not an element of the ideal"
        )));
    }
    if image.is_zero() {
        return Ok(M2Element::zero());
    }
    let Some(value) = image.as_monomial() else {
        return Err(Error::Classification(format!("image {image} is not homogeneous")));
    };
    let lambda = match (generator, value) {
        (Upper(m, n), Upper(a, b)) => {
            require(a >= m, "a ≥ m", ("a", a), ("m", m))?;
            require(b >= n, "b ≥ n", ("b", b), ("n", n))?;
            Upper(a - m, b - n)
        }
        (Upper(m, n), Lower(a, b)) => Lower(a + m, b + n),
        (Lower(m, n), Lower(a, b)) => {
            require(m >= a, "m ≥ a", ("m", m), ("a", a))?;
            require(n >= b, "n ≥ b", ("n", n), ("b", b))?;
            Upper(m - a, n - b)
        }
        (Lower(..), Upper(..)) => {
            return Err(Error::Classification(format!(
                "lower-cone element {generator} cannot map to upper-cone {value}"
            )))
        }
    };
    Ok(lambda.into())
}
