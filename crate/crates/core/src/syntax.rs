//! Text syntax for sheaves and tilted objects.
//!
//! ```text
//! sheaf   := "0" | atom ("+" atom)*
//! atom    := ("O(" int ["/" int] ")" | "O") ["^" int] ["[1]"]
//!          | "T(" label "," "[" int ("," int)* "]" ")"
//! tilted  := "tilted(" sheaf ";" sheaf ")" | sheaf
//! ```
//!
//! A `[1]` suffix moves a stable atom into degree -1. Printing lists torsion
//! first, then bundles by decreasing slope, so `parse(print(x)) == x`.

use crate::error::{Error, Result};
use crate::sheaf::{normalize, CoherentSheaf, RawSheaf};
use crate::slope::fmt_ratio;
use crate::tilt::TiltedObject;

/// A parsed expression, before it is read as a sheaf or a tilted object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Sheaf(CoherentSheaf),
    Tilted(TiltedObject),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

#[derive(Default)]
struct Parts {
    degree0: RawSheaf,
    shifted: RawSheaf,
    any_shift: bool,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        let found = match self.rest().chars().next() {
            Some(c) => c.to_string(),
            None => "end of input".to_string(),
        };
        Err(Error::Parse {
            pos: self.src[..self.pos].chars().count(),
            expected: expected.to_string(),
            found,
        })
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(&format!("`{token}`"))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = self.rest();
        let sign = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return self.error("integer");
        }
        let text = &rest[..sign + digits];
        match text.parse::<i64>() {
            Ok(v) => {
                self.pos += text.len();
                Ok(v)
            }
            Err(_) => self.error("integer in range"),
        }
    }

    fn label(&mut self) -> Result<String> {
        self.skip_ws();
        if self.eat("∞") {
            return Ok("inf".to_string());
        }
        let len: usize = self
            .rest()
            .chars()
            .take_while(|c| c.is_alphanumeric() || *c == '_')
            .map(char::len_utf8)
            .sum();
        if len == 0 {
            return self.error("point label");
        }
        let s = self.rest()[..len].to_string();
        self.pos += len;
        Ok(s)
    }

    fn atom(&mut self, parts: &mut Parts) -> Result<()> {
        self.skip_ws();
        let twist = if self.eat("O(") {
            let d = self.int()?;
            let h = if self.eat("/") {
                let start = self.pos;
                let h = self.int()?;
                if h <= 0 {
                    self.pos = start;
                    return self.error("positive denominator");
                }
                h
            } else {
                1
            };
            self.expect(")")?;
            Some((d, h))
        } else if self.eat("O") {
            Some((0, 1))
        } else {
            None
        };
        if let Some((d, h)) = twist {
            let m = if self.eat("^") {
                let start = self.pos;
                let m = self.int()?;
                if m <= 0 {
                    self.pos = start;
                    return self.error("positive multiplicity");
                }
                m
            } else {
                1
            };
            if self.eat("[1]") {
                parts.any_shift = true;
                parts.shifted.bundles.push((d, h, m));
            } else {
                parts.degree0.bundles.push((d, h, m));
            }
            Ok(())
        } else if self.eat("T(") {
            let label = self.label()?;
            self.expect(",")?;
            self.expect("[")?;
            let mut factors = Vec::new();
            loop {
                let start = self.pos;
                let k = self.int()?;
                if k <= 0 {
                    self.pos = start;
                    return self.error("positive length");
                }
                factors.push(k);
                if !self.eat(",") {
                    break;
                }
            }
            self.expect("]")?;
            self.expect(")")?;
            if self.rest().trim_start().starts_with("[1]") {
                self.skip_ws();
                return self.error("no shift on torsion");
            }
            parts.degree0.torsion.push((label, factors));
            Ok(())
        } else {
            self.error("`O`, `O(` or `T(`")
        }
    }

    fn sum(&mut self, parts: &mut Parts) -> Result<()> {
        self.skip_ws();
        if self.rest().starts_with('0')
            && !self.rest()[1..].starts_with(|c: char| c.is_ascii_digit())
        {
            self.pos += 1;
            return Ok(());
        }
        self.atom(parts)?;
        while self.eat("+") {
            self.atom(parts)?;
        }
        Ok(())
    }

    fn parse(mut self) -> Result<Object> {
        if self.eat("tilted(") {
            let mut neg = Parts::default();
            self.sum(&mut neg)?;
            self.expect(";")?;
            let mut pos = Parts::default();
            self.sum(&mut pos)?;
            self.expect(")")?;
            if !self.at_end() {
                return self.error("end of input");
            }
            if neg.any_shift || pos.any_shift {
                return Err(Error::SlopeCondition(
                    "`[1]` is not allowed inside tilted(..)".into(),
                ));
            }
            let t = TiltedObject::new(normalize(&neg.degree0)?, normalize(&pos.degree0)?)?;
            return Ok(Object::Tilted(t));
        }
        let mut parts = Parts::default();
        self.sum(&mut parts)?;
        if !self.at_end() {
            return self.error("`+` or end of input");
        }
        let degree0 = normalize(&parts.degree0)?;
        if parts.any_shift {
            let t = TiltedObject::new(normalize(&parts.shifted)?, degree0)?;
            Ok(Object::Tilted(t))
        } else {
            Ok(Object::Sheaf(degree0))
        }
    }
}

/// Parses either a sheaf or a tilted object.
pub fn parse_object(src: &str) -> Result<Object> {
    Parser::new(src).parse()
}

/// Parses a coherent sheaf; shifts are rejected.
pub fn parse_sheaf(src: &str) -> Result<CoherentSheaf> {
    match parse_object(src)? {
        Object::Sheaf(f) => Ok(f),
        Object::Tilted(_) => Err(Error::Parse {
            pos: 0,
            expected: "a sheaf without shifts".into(),
            found: src.to_string(),
        }),
    }
}

/// Parses a tilted object. A plain sheaf is accepted when all its slopes are
/// non-negative.
pub fn parse_tilted(src: &str) -> Result<TiltedObject> {
    match parse_object(src)? {
        Object::Tilted(t) => Ok(t),
        Object::Sheaf(f) => TiltedObject::unshifted(f),
    }
}

fn pow(m: u32) -> String {
    if m == 1 {
        String::new()
    } else {
        format!("^{m}")
    }
}

fn atoms(f: &CoherentSheaf, shift: &str) -> Vec<String> {
    let mut out = Vec::new();
    for (point, factors) in f.torsion_parts() {
        let ks: Vec<String> = factors.iter().map(u32::to_string).collect();
        out.push(format!("T({point},[{}])", ks.join(",")));
    }
    for (lambda, m) in f.bundle_parts() {
        out.push(format!("O({}){}{shift}", fmt_ratio(&lambda), pow(m)));
    }
    out
}

pub fn print_sheaf(f: &CoherentSheaf) -> String {
    let parts = atoms(f, "");
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

pub fn print_tilted(t: &TiltedObject) -> String {
    format!("tilted({}; {})", print_sheaf(t.neg()), print_sheaf(t.pos()))
}

/// Compact form using `[1]` suffixes instead of `tilted(..)`.
pub fn print_tilted_shifted(t: &TiltedObject) -> String {
    let mut parts = atoms(t.pos(), "");
    parts.extend(atoms(t.neg(), "[1]"));
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}
