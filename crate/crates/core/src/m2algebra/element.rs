//! Monomials and elements of the coefficient ring 𝕄₂.
//!
//! 𝕄₂ is F₂ in every bidegree of two cones: the upper cone F₂[ρ, τ] and the
//! lower cone of the elements θ/(ρᵃτᵇ). Elements are stored by cone and two
//! exponents, which turns multiplication into pattern matching.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Bidegree;
use crate::error::{Error, Result};

/// A nonzero monomial of 𝕄₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum M2Monomial {
    /// ρᵃτᵇ in bidegree (a, a+b).
    Upper(u32, u32),
    /// θ/(ρᵃτᵇ) in bidegree (−a, −2−a−b).
    Lower(u32, u32),
}

pub use M2Monomial::{Lower, Upper};

impl M2Monomial {
    pub const ONE: M2Monomial = Upper(0, 0);
    pub const RHO: M2Monomial = Upper(1, 0);
    pub const TAU: M2Monomial = Upper(0, 1);
    pub const THETA: M2Monomial = Lower(0, 0);

    pub fn bidegree(self) -> Bidegree {
        match self {
            Upper(a, b) => Bidegree::new(a as i64, (a + b) as i64),
            Lower(a, b) => Bidegree::new(-(a as i64), -2 - a as i64 - b as i64),
        }
    }

    /// The unique monomial in bidegree `d`, if 𝕄₂ is nonzero there.
    pub fn at(d: Bidegree) -> Option<M2Monomial> {
        let (s, t) = (d.p, d.q);
        if 0 <= s && s <= t {
            Some(Upper(s as u32, (t - s) as u32))
        } else if s <= 0 && t <= s - 2 {
            Some(Lower((-s) as u32, (s - 2 - t) as u32))
        } else {
            None
        }
    }

    pub fn is_upper(self) -> bool {
        matches!(self, Upper(..))
    }

    /// The product, or `None` when it vanishes.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: M2Monomial) -> Option<M2Monomial> {
        match (self, other) {
            (Upper(a, b), Upper(c, d)) => Some(Upper(a + c, b + d)),
            (Upper(a, b), Lower(c, d)) | (Lower(c, d), Upper(a, b)) => (c >= a && d >= b).then(|| Lower(c - a, d - b)),
            (Lower(..), Lower(..)) => None,
        }
    }
}

fn power(out: &mut Vec<String>, sym: &str, e: u32) {
    match e {
        0 => {}
        1 => out.push(sym.to_string()),
        _ => out.push(format!("{sym}^{e}")),
    }
}

impl fmt::Display for M2Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match *self {
            Upper(a, b) => {
                power(&mut parts, "r", a);
                power(&mut parts, "t", b);
                if parts.is_empty() {
                    write!(f, "1")
                } else {
                    write!(f, "{}", parts.join(" "))
                }
            }
            Lower(a, b) => {
                power(&mut parts, "r", a);
                power(&mut parts, "t", b);
                match parts.len() {
                    0 => write!(f, "T"),
                    1 => write!(f, "T/{}", parts[0]),
                    _ => write!(f, "T/({})", parts.join(" ")),
                }
            }
        }
    }
}

/// A homogeneous-or-not finite F₂-sum of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct M2Element {
    monomials: BTreeSet<M2Monomial>,
}

impl M2Element {
    pub fn zero() -> Self {
        M2Element::default()
    }

    pub fn one() -> Self {
        M2Monomial::ONE.into()
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> impl Iterator<Item = M2Monomial> + '_ {
        self.monomials.iter().copied()
    }

    /// The single monomial of a nonzero homogeneous element.
    pub fn as_monomial(&self) -> Option<M2Monomial> {
        if self.monomials.len() == 1 {
            self.monomials.iter().next().copied()
        } else {
            None
        }
    }

    pub fn add_monomial(&mut self, m: M2Monomial) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn add(&self, other: &M2Element) -> M2Element {
        let mut out = self.clone();
        for m in other.monomials() {
            out.add_monomial(m);
        }
        out
    }

    pub fn mul(&self, other: &M2Element) -> M2Element {
        let mut out = M2Element::zero();
        for x in self.monomials() {
            for y in other.monomials() {
                if let Some(z) = x.mul(y) {
                    out.add_monomial(z);
                }
            }
        }
        out
    }
}

impl From<M2Monomial> for M2Element {
    fn from(m: M2Monomial) -> Self {
        M2Element {
            monomials: BTreeSet::from([m]),
        }
    }
}

impl FromIterator<M2Monomial> for M2Element {
    fn from_iter<I: IntoIterator<Item = M2Monomial>>(iter: I) -> Self {
        let mut out = M2Element::zero();
        for m in iter {
            out.add_monomial(m);
        }
        out
    }
}

/// Multiplication in 𝕄₂, extended bilinearly from the monomial rules.
pub fn mul_m2(x: &M2Element, y: &M2Element) -> M2Element {
    x.mul(y)
}

impl fmt::Display for M2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.monomials().map(|m| m.to_string()).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c == ' ') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected exponent"))
    }

    /// Parses `r^a t^b` style factors, stopping at anything else.
    fn factors(&mut self) -> Result<(u32, u32)> {
        let (mut a, mut b) = (0, 0);
        let mut seen = false;
        loop {
            self.skip_ws();
            let sym = match self.peek() {
                Some(c @ ('r' | 't')) => c,
                _ => break,
            };
            self.pos += 1;
            let e = if self.eat('^') { self.number()? } else { 1 };
            if sym == 'r' {
                a += e;
            } else {
                b += e;
            }
            seen = true;
        }
        if !seen {
            return Err(self.err("expected r or t"));
        }
        Ok((a, b))
    }

    fn monomial(&mut self) -> Result<M2Monomial> {
        self.skip_ws();
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                Ok(Upper(0, 0))
            }
            Some('T') => {
                self.pos += 1;
                if !self.eat('/') {
                    return Ok(Lower(0, 0));
                }
                let (a, b) = if self.eat('(') {
                    let ab = self.factors()?;
                    if !self.eat(')') {
                        return Err(self.err("expected )"));
                    }
                    ab
                } else {
                    self.factors()?
                };
                Ok(Lower(a, b))
            }
            Some('r' | 't') => {
                let (a, b) = self.factors()?;
                Ok(Upper(a, b))
            }
            _ => Err(self.err("expected monomial")),
        }
    }
}

impl FromStr for M2Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor { src: s, pos: 0 };
        let m = cur.monomial()?;
        cur.skip_ws();
        if cur.pos != s.len() {
            return Err(cur.err("trailing input"));
        }
        Ok(m)
    }
}

impl FromStr for M2Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(M2Element::zero());
        }
        let mut cur = Cursor { src: s, pos: 0 };
        let mut out = M2Element::zero();
        loop {
            out.add_monomial(cur.monomial()?);
            if !cur.eat('+') {
                break;
            }
        }
        cur.skip_ws();
        if cur.pos != s.len() {
            return Err(cur.err("trailing input"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(m: M2Monomial) -> M2Element {
        m.into()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(mul_m2(&e(M2Monomial::RHO), &e(M2Monomial::TAU)), e(Upper(1, 1)));
        assert!(mul_m2(&e(M2Monomial::THETA), &e(M2Monomial::THETA)).is_zero());
        assert_eq!(mul_m2(&e(Upper(2, 1)), &e(Lower(3, 2))), e(Lower(1, 1)));
        assert!(mul_m2(&e(M2Monomial::TAU), &e(M2Monomial::THETA)).is_zero());
        assert!(mul_m2(&e(M2Monomial::RHO), &e(M2Monomial::THETA)).is_zero());
    }

    fn small_monomials() -> Vec<M2Monomial> {
        let mut out = Vec::new();
        for a in 0..=4 {
            for b in 0..=4 {
                out.push(Upper(a, b));
                out.push(Lower(a, b));
            }
        }
        out
    }

    #[test]
    fn commutative_associative_unital() {
        let ms = small_monomials();
        for &x in &ms {
            assert_eq!(x.mul(M2Monomial::ONE), Some(x));
            for &y in &ms {
                assert_eq!(x.mul(y), y.mul(x));
                if let Some(z) = x.mul(y) {
                    assert_eq!(z.bidegree(), x.bidegree() + y.bidegree());
                }
                for &w in &ms {
                    let left = x.mul(y).and_then(|xy| xy.mul(w));
                    let right = y.mul(w).and_then(|yw| x.mul(yw));
                    assert_eq!(left, right, "{x} {y} {w}");
                }
            }
        }
    }

    #[test]
    fn theta_detects_free_generator() {
        // θ·1 ≠ 0, so every ρᵐτⁿ and θ/(ρᵐτⁿ) multiple of 1 is nonzero
        let x = M2Monomial::ONE;
        assert!(M2Monomial::THETA.mul(x).is_some());
        for m in 0..6 {
            for n in 0..6 {
                assert!(Upper(m, n).mul(x).is_some());
                assert!(Lower(m, n).mul(x).is_some());
            }
        }
    }

    #[test]
    fn monomial_lookup_by_bidegree() {
        for m in small_monomials() {
            assert_eq!(M2Monomial::at(m.bidegree()), Some(m));
        }
        assert_eq!(M2Monomial::at(Bidegree::new(0, -1)), None);
        assert_eq!(M2Monomial::at(Bidegree::new(1, 0)), None);
        assert_eq!(M2Monomial::at(Bidegree::new(-1, -2)), None);
    }

    #[test]
    fn text_rendering() {
        assert_eq!(Upper(2, 1).to_string(), "r^2 t");
        assert_eq!(Lower(1, 3).to_string(), "T/(r t^3)");
        assert_eq!(Lower(0, 0).to_string(), "T");
        assert_eq!(Lower(1, 0).to_string(), "T/r");
        assert_eq!(Upper(0, 0).to_string(), "1");
        assert_eq!("T/(r t^3)".parse::<M2Monomial>().unwrap(), Lower(1, 3));
        assert_eq!("r^2 t".parse::<M2Monomial>().unwrap(), Upper(2, 1));
        let sum: M2Element = "r + T/t^2".parse().unwrap();
        assert_eq!(sum, M2Element::from_iter([Upper(1, 0), Lower(0, 2)]));
        assert!("r^".parse::<M2Monomial>().is_err());
        assert!("x".parse::<M2Element>().is_err());
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn monomial() -> impl Strategy<Value = M2Monomial> {
            (any::<bool>(), 0u32..12, 0u32..12).prop_map(|(up, a, b)| if up { Upper(a, b) } else { Lower(a, b) })
        }

        proptest! {
            #[test]
            fn element_text_round_trip(ms in proptest::collection::vec(monomial(), 0..5)) {
                let x: M2Element = ms.into_iter().collect();
                let back: M2Element = x.to_string().parse().unwrap();
                prop_assert_eq!(back, x);
            }
        }
    }
}
