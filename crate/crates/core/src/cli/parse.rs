//! Builder expressions and input-file detection.

use crate::cwcell::{EquivariantCellComplex, SpaceExpr};
use crate::error::{Error, Result};
use crate::gridmodule::BigradedModule;
use crate::m2algebra::Decomposition;

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, at: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: at,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            let found = self.text[self.pos..]
                .chars()
                .next()
                .map_or("end of input".to_string(), |f| format!("'{f}'"));
            self.err(self.pos, format!("expected '{c}', found {found}"))
        }
    }

    fn word(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let len = self.text[start..]
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.text.len() - start);
        self.pos += len;
        (start, &self.text[start..start + len])
    }

    fn number(&mut self) -> Result<u32> {
        let (at, w) = self.word();
        if w.is_empty() || !w.bytes().all(|b| b.is_ascii_digit()) {
            return self.err(at, format!("expected a non-negative integer, found '{w}'"));
        }
        w.parse()
            .or_else(|_| self.err(at, format!("integer '{w}' is too large")))
    }

    fn expr(&mut self) -> Result<SpaceExpr> {
        let (at, name) = self.word();
        match name {
            "point" => Ok(SpaceExpr::Point),
            "c2" => Ok(SpaceExpr::FreeOrbit),
            "rp2tw" => Ok(SpaceExpr::TwistedProjectivePlane),
            "whisker" => Ok(SpaceExpr::WhiskerSphere),
            "antipodal" => {
                self.expect(':')?;
                Ok(SpaceExpr::AntipodalSphere(self.number()?))
            }
            "sphere" => {
                self.expect(':')?;
                let p = self.number()?;
                self.expect(',')?;
                let q_at = {
                    self.skip_ws();
                    self.pos
                };
                let q = self.number()?;
                if q > p {
                    return self.err(q_at, format!("sphere:{p},{q} needs weight at most dimension (q ≤ p)"));
                }
                Ok(if q == 0 {
                    SpaceExpr::TrivialSphere(p)
                } else {
                    SpaceExpr::RepSphere(p, q)
                })
            }
            "susp" => {
                self.expect('(')?;
                let x = self.expr()?;
                self.expect(')')?;
                Ok(SpaceExpr::Suspend(Box::new(x)))
            }
            "wedge" | "disjoint" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                Ok(if name == "wedge" {
                    SpaceExpr::Wedge(Box::new(a), Box::new(b))
                } else {
                    SpaceExpr::DisjointUnion(Box::new(a), Box::new(b))
                })
            }
            "" => self.err(at, "expected a space expression"),
            other => self.err(at, format!("unknown builder '{other}'")),
        }
    }
}

/// Parses the builder grammar: `point`, `c2`, `sphere:p,q`, `antipodal:n`,
/// `rp2tw`, `whisker`, `susp(E)`, `wedge(E,E)`, `disjoint(E,E)`.
/// Positions in errors are byte offsets into `text`.
pub fn parse_space(text: &str) -> Result<SpaceExpr> {
    let mut p = Parser { text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.err(p.pos, format!("unexpected trailing input '{}'", &text[p.pos..]));
    }
    Ok(e)
}

/// A parsed input file, told apart by its JSON shape.
#[derive(Debug)]
pub enum InputFile {
    Complex(EquivariantCellComplex),
    Module(BigradedModule),
    Decomposition(Decomposition),
}

pub fn parse_file(text: &str) -> Result<InputFile> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if value.is_array() {
        let d: Decomposition = serde_json::from_value(value)?;
        return Ok(InputFile::Decomposition(d));
    }
    let has = |key: &str| value.get(key).is_some();
    if has("window") {
        Ok(InputFile::Module(BigradedModule::from_json(text)?))
    } else if has("fixed") || has("free") {
        Ok(InputFile::Complex(EquivariantCellComplex::from_json(text)?))
    } else {
        Err(Error::Input(
            "unrecognized JSON: expected a cell complex, a bigraded module or a decomposition".into(),
        ))
    }
}
