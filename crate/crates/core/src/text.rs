//! Text grammars for objects, Kronecker objects, pure-injectives and
//! localizing classes:
//!
//! ```text
//! object := term ("(+)" term)*
//! term   := ["s^" INT] indec
//! indec  := "O(" INT ")" | "T(" point "," INT ")"
//! kterm  := ["s^" INT] ("P(" NAT ")" | "I(" NAT ")" | "R(" point "," INT ")")
//! pi     := "PI:" (indec | "Prufer(" point ")" | "Adic(" point ")" | "Generic")
//! class  := "Zero" | "Full" | "Twist(" INT ")"
//!         | "Ideal{" [points] "}" ["+eta"]
//! points := point ("," point)* | "*" [" - " point ("," point)*]
//! point  := "inf" | "[" poly "]"
//! ```

use crate::error::{Error, Result};
use crate::exact::{ClosedPoint, ClosedPoints, FieldSpec, PointSet, Poly};
use crate::kron::{DKronObject, KronIndec};
use crate::lattice::LocClass;
use crate::pureinj::PureInj;
use crate::sheaf::{CohIndec, DObject};

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.s[self.pos..]
            .chars()
            .next()
            .filter(|c| c.is_whitespace())
        {
            self.pos += c.len_utf8();
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.s.len()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.err(format!("expected {tok:?}")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.s[self.pos..];
        let mut len = 0;
        if rest.starts_with(['-', '+']) {
            len = 1;
        }
        len += rest[len..].bytes().take_while(u8::is_ascii_digit).count();
        let text = &rest[..len];
        let v = text
            .parse::<i64>()
            .map_err(|_| self.err("expected an integer"))?;
        self.pos = start + len;
        Ok(v)
    }

    fn point(&mut self, field: FieldSpec) -> Result<ClosedPoint> {
        if self.eat("inf") {
            return Ok(ClosedPoint::AtInfinity);
        }
        self.expect("[")?;
        let start = self.pos;
        let len = self.s[start..]
            .find(']')
            .ok_or_else(|| self.err("unclosed '['"))?;
        let inner = &self.s[start..start + len];
        let p = Poly::parse(field, inner).map_err(|e| match e {
            Error::Parse { pos, msg } => Error::Parse {
                pos: start + pos,
                msg,
            },
            other => other,
        })?;
        let x = ClosedPoint::finite(p).map_err(|e| match e {
            Error::Domain(msg) => Error::Domain(format!("at position {start}: {msg}")),
            other => other,
        })?;
        self.pos = start + len + 1;
        Ok(x)
    }

    fn length(&mut self) -> Result<u32> {
        self.skip_ws();
        let at = self.pos;
        let l = self.int()?;
        if l < 1 || l > u32::MAX as i64 {
            return Err(Error::Parse {
                pos: at,
                msg: format!("length {l} must be at least 1"),
            });
        }
        Ok(l as u32)
    }

    fn nat(&mut self) -> Result<u32> {
        self.skip_ws();
        let at = self.pos;
        let n = self.int()?;
        u32::try_from(n).map_err(|_| Error::Parse {
            pos: at,
            msg: format!("index {n} must be non-negative"),
        })
    }

    fn shift(&mut self) -> Result<i64> {
        if self.eat("s^") {
            self.int()
        } else {
            Ok(0)
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("trailing input"))
        }
    }

    fn term(&mut self, field: FieldSpec) -> Result<(i64, CohIndec)> {
        let shift = self.shift()?;
        Ok((shift, self.indec(field)?))
    }

    fn indec(&mut self, field: FieldSpec) -> Result<CohIndec> {
        if self.eat("O(") {
            let i = self.int()?;
            self.expect(")")?;
            return Ok(CohIndec::Twist(i));
        }
        if self.eat("T(") {
            let x = self.point(field)?;
            self.expect(",")?;
            let l = self.length()?;
            self.expect(")")?;
            return Ok(CohIndec::Torsion(x, l));
        }
        Err(self.err("expected \"O(\" or \"T(\""))
    }

    fn kterm(&mut self, field: FieldSpec) -> Result<(i64, KronIndec)> {
        let shift = self.shift()?;
        let k = if self.eat("P(") {
            KronIndec::Preproj(self.nat()?)
        } else if self.eat("I(") {
            KronIndec::Preinj(self.nat()?)
        } else if self.eat("R(") {
            let x = self.point(field)?;
            self.expect(",")?;
            KronIndec::Regular(x, self.length()?)
        } else {
            return Err(self.err("expected \"P(\", \"I(\" or \"R(\""));
        };
        self.expect(")")?;
        Ok((shift, k))
    }

    fn point_list(&mut self, field: FieldSpec, close: &str) -> Result<Vec<ClosedPoint>> {
        let mut out = Vec::new();
        if self.eat(close) {
            return Ok(out);
        }
        loop {
            out.push(self.point(field)?);
            if self.eat(close) {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }
}

/// Runs `item` over a `(+)`-separated list; empty text and `0` give nothing.
fn sum_of<T>(text: &str, mut item: impl FnMut(&mut Cursor) -> Result<T>) -> Result<Vec<T>> {
    let mut c = Cursor { s: text, pos: 0 };
    let mut out = Vec::new();
    if c.at_end() || (c.eat("0") && c.at_end()) {
        return Ok(out);
    }
    c.pos = 0;
    loop {
        out.push(item(&mut c)?);
        if c.at_end() {
            return Ok(out);
        }
        c.expect("(+)")?;
    }
}

pub fn parse_object(field: FieldSpec, text: &str) -> Result<DObject> {
    let mut out = DObject::zero(field);
    for (s, t) in sum_of(text, |c| c.term(field))? {
        out.add_term(s, t, 1)?;
    }
    Ok(out)
}

pub fn parse_kron_object(field: FieldSpec, text: &str) -> Result<DKronObject> {
    let mut out = DKronObject::zero(field);
    for (s, k) in sum_of(text, |c| c.kterm(field))? {
        out.add(s, k, 1);
    }
    Ok(out)
}

pub fn parse_pure_inj(field: FieldSpec, text: &str) -> Result<PureInj> {
    let mut c = Cursor { s: text, pos: 0 };
    c.expect("PI:")?;
    let y = if c.eat("Prufer(") {
        let x = c.point(field)?;
        c.expect(")")?;
        PureInj::Prufer(x)
    } else if c.eat("Adic(") {
        let x = c.point(field)?;
        c.expect(")")?;
        PureInj::Adic(x)
    } else if c.eat("Generic") {
        PureInj::Generic
    } else {
        PureInj::CohPI(c.indec(field)?)
    };
    c.finish()?;
    Ok(y)
}

pub fn parse_loc_class(field: FieldSpec, text: &str) -> Result<LocClass> {
    let mut c = Cursor { s: text, pos: 0 };
    let class = if c.eat("Zero") {
        LocClass::zero()
    } else if c.eat("Full") {
        LocClass::full()
    } else if c.eat("Twist(") {
        let i = c.int()?;
        c.expect(")")?;
        LocClass::Twist(i)
    } else if c.eat("Ideal{") {
        let closed = if c.eat("*") {
            if c.eat("-") {
                ClosedPoints::cofinite(c.point_list(field, "}")?)
            } else {
                c.expect("}")?;
                ClosedPoints::all()
            }
        } else {
            ClosedPoints::finite(c.point_list(field, "}")?)
        };
        LocClass::Ideal(PointSet::new(closed, c.eat("+eta")))
    } else {
        return Err(c.err("expected a class"));
    };
    c.finish()?;
    Ok(class)
}
