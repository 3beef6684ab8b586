use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use super::field::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Dense univariate polynomial in `t`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: FieldSpec, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        Poly { field, coeffs }
    }

    pub fn from_i64s(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: FieldSpec) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::new(c.field(), vec![c])
    }

    /// The variable `t`.
    pub fn t(field: FieldSpec) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn monomial(c: Scalar, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lead().is_some_and(Scalar::is_one)
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        Poly::new(self.field, c)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect();
        Poly::new(self.field, c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, c)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lead().unwrap().inv().unwrap();
        let mut r = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Poly::zero(self.field), Poly::zero(self.field));
        };
        if nd < dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut q = vec![self.field.zero(); nd - dd + 1];
        for k in (dd..=nd).rev() {
            if r[k].is_zero() {
                continue;
            }
            let c = &r[k] * &inv;
            for (j, b) in d.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                r[idx] = &r[idx] - &(&c * b);
            }
            q[k - dd] = c;
        }
        r.truncate(dd);
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.lead().and_then(Scalar::inv) {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            None => (r0, s0, t0),
        }
    }

    pub fn derivative(&self) -> Poly {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| &self.field.from_i64(k as i64) * a)
            .collect();
        Poly::new(self.field, c)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// `self^e mod m` for an arbitrary-precision exponent.
    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(self.field).rem(m);
        let base = self.rem(m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        if e.is_zero() {
            return Poly::one(self.field).rem(m);
        }
        acc
    }

    /// Coefficients reversed against degree `d`: `t^d * self(1/t)`.
    pub fn reversed(&self, d: usize) -> Poly {
        let mut c: Vec<Scalar> = (0..=d).map(|k| self.coeff(k)).collect();
        c.reverse();
        Poly::new(self.field, c)
    }

    /// Parses an ASCII expression in `t`, e.g. `t^2+t+1`, `2*t^3-1/2*t`.
    pub fn parse(field: FieldSpec, s: &str) -> Result<Poly> {
        PolyParser {
            field,
            src: s.as_bytes(),
            pos: 0,
        }
        .parse()
    }
}

struct PolyParser<'a> {
    field: FieldSpec,
    src: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn parse(mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.field);
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let mut first = true;
        while self.peek().is_some() {
            let mut negative = false;
            match self.peek() {
                Some(b'+') if !first => self.pos += 1,
                Some(b'-') => {
                    negative = true;
                    self.pos += 1;
                }
                Some(_) if first => {}
                _ => return Err(self.err("expected '+' or '-'")),
            }
            first = false;
            let coeff = match self.number() {
                Some(num) => {
                    let text = if self.peek() == Some(b'/') {
                        self.pos += 1;
                        let den = self
                            .number()
                            .ok_or_else(|| self.err("expected denominator"))?;
                        format!("{num}/{den}")
                    } else {
                        num
                    };
                    let c = self.field.parse_scalar(&text)?;
                    if self.peek() == Some(b'*') {
                        self.pos += 1;
                        if self.peek() != Some(b't') {
                            return Err(self.err("expected 't' after '*'"));
                        }
                    }
                    Some(c)
                }
                None => None,
            };
            let exp = if self.peek() == Some(b't') {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.number().ok_or_else(|| self.err("expected exponent"))?;
                    e.parse::<usize>()
                        .map_err(|_| self.err("exponent too large"))?
                } else {
                    1
                }
            } else if coeff.is_none() {
                return Err(self.err("expected coefficient or 't'"));
            } else {
                0
            };
            let mut c = coeff.unwrap_or_else(|| self.field.one());
            if negative {
                c = -c;
            }
            acc = acc.add(&Poly::monomial(c, exp));
        }
        Ok(acc)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut text = c.to_string();
            let negative = text.starts_with('-');
            if negative {
                text.remove(0);
            }
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            }
            first = false;
            let unit = text == "1";
            match k {
                0 => write!(f, "{text}")?,
                _ => {
                    if !unit {
                        write!(f, "{text}*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by field, then degree, then coefficients from the top down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then(self.coeffs.len().cmp(&other.coeffs.len()))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}
