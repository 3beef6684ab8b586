//! Closed points of the projective line and the finite/cofinite Boolean
//! algebra of point sets.
//!
//! The finite chart has coordinate `t = x1/x0`; `AtInfinity` is the point
//! `x0 = 0`. A finite closed point is a monic irreducible polynomial in `t`.

use std::fmt;

use serde_json::{json, Value};

use super::factor::{is_monic_irreducible, poly_factor};
use super::field::FieldSpec;
use super::poly::Poly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedPoint {
    AtInfinity,
    Finite(Poly),
}

impl ClosedPoint {
    /// Validates that `p` is monic irreducible of degree at least one.
    pub fn finite(p: Poly) -> Result<Self> {
        if p.degree().unwrap_or(0) == 0 {
            return Err(Error::Domain(format!(
                "point polynomial {p} must have degree at least 1"
            )));
        }
        if !p.is_monic() {
            return Err(Error::Domain(format!("point polynomial {p} is not monic")));
        }
        if !is_monic_irreducible(&p)? {
            let fac = poly_factor(&p)?;
            let parts: Vec<String> = fac
                .factors
                .iter()
                .map(|(f, m)| {
                    if *m == 1 {
                        format!("({f})")
                    } else {
                        format!("({f})^{m}")
                    }
                })
                .collect();
            return Err(Error::Domain(format!(
                "point polynomial {p} is reducible: {}",
                parts.join("*")
            )));
        }
        Ok(ClosedPoint::Finite(p))
    }

    /// The degree-one point `t = c`.
    pub fn rational(field: FieldSpec, c: i64) -> Self {
        ClosedPoint::Finite(Poly::new(field, vec![field.from_i64(-c), field.one()]))
    }

    pub fn degree(&self) -> usize {
        match self {
            ClosedPoint::AtInfinity => 1,
            ClosedPoint::Finite(p) => p.degree().unwrap(),
        }
    }

    pub fn field(&self) -> Option<FieldSpec> {
        match self {
            ClosedPoint::AtInfinity => None,
            ClosedPoint::Finite(p) => Some(p.field()),
        }
    }

    /// The homogeneous form cutting out `l` times this point, as `(F(1, t), deg F)`.
    pub fn form(&self, field: FieldSpec, l: usize) -> (Poly, usize) {
        match self {
            ClosedPoint::AtInfinity => (Poly::one(field), l),
            ClosedPoint::Finite(p) => (p.pow(l as u64), l * self.degree()),
        }
    }

    pub fn parse(field: FieldSpec, s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" {
            return Ok(ClosedPoint::AtInfinity);
        }
        let inner = s
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("expected 'inf' or '[poly]', got {s:?}"),
            })?;
        ClosedPoint::finite(Poly::parse(field, inner)?)
    }

    pub fn to_json(&self) -> Value {
        match self {
            ClosedPoint::AtInfinity => json!({"inf": true}),
            ClosedPoint::Finite(p) => json!({"poly": p.to_string()}),
        }
    }

    pub fn from_json(field: FieldSpec, v: &Value) -> Result<Self> {
        if v.get("inf").and_then(Value::as_bool) == Some(true) {
            return Ok(ClosedPoint::AtInfinity);
        }
        match v.get("poly").and_then(Value::as_str) {
            Some(s) => ClosedPoint::finite(Poly::parse(field, s)?),
            None => Err(Error::Parse {
                pos: 0,
                msg: format!("bad point JSON {v}"),
            }),
        }
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPoint::AtInfinity => write!(f, "inf"),
            ClosedPoint::Finite(p) => write!(f, "[{p}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Closed(ClosedPoint),
    Generic,
}

/// A finite or cofinite set of closed points, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClosedPoints {
    Finite(Vec<ClosedPoint>),
    Cofinite(Vec<ClosedPoint>),
}

fn canon(mut v: Vec<ClosedPoint>) -> Vec<ClosedPoint> {
    v.sort();
    v.dedup();
    v
}

fn merged(a: &[ClosedPoint], b: &[ClosedPoint]) -> Vec<ClosedPoint> {
    canon(a.iter().chain(b).cloned().collect())
}

fn common(a: &[ClosedPoint], b: &[ClosedPoint]) -> Vec<ClosedPoint> {
    a.iter()
        .filter(|x| b.binary_search(x).is_ok())
        .cloned()
        .collect()
}

fn minus(a: &[ClosedPoint], b: &[ClosedPoint]) -> Vec<ClosedPoint> {
    a.iter()
        .filter(|x| b.binary_search(x).is_err())
        .cloned()
        .collect()
}

impl ClosedPoints {
    pub fn empty() -> Self {
        ClosedPoints::Finite(Vec::new())
    }

    pub fn all() -> Self {
        ClosedPoints::Cofinite(Vec::new())
    }

    pub fn finite(points: impl IntoIterator<Item = ClosedPoint>) -> Self {
        ClosedPoints::Finite(canon(points.into_iter().collect()))
    }

    pub fn cofinite(excluded: impl IntoIterator<Item = ClosedPoint>) -> Self {
        ClosedPoints::Cofinite(canon(excluded.into_iter().collect()))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, ClosedPoints::Finite(v) if v.is_empty())
    }

    pub fn is_all(&self) -> bool {
        matches!(self, ClosedPoints::Cofinite(v) if v.is_empty())
    }

    pub fn contains(&self, x: &ClosedPoint) -> bool {
        match self {
            ClosedPoints::Finite(v) => v.binary_search(x).is_ok(),
            ClosedPoints::Cofinite(v) => v.binary_search(x).is_err(),
        }
    }

    /// The explicitly listed points (members, or exclusions for cofinite sets).
    pub fn listed(&self) -> &[ClosedPoint] {
        match self {
            ClosedPoints::Finite(v) | ClosedPoints::Cofinite(v) => v,
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        use ClosedPoints::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(merged(a, b)),
            (Finite(a), Cofinite(e)) | (Cofinite(e), Finite(a)) => Cofinite(minus(e, a)),
            (Cofinite(a), Cofinite(b)) => Cofinite(common(a, b)),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        use ClosedPoints::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(common(a, b)),
            (Finite(a), Cofinite(e)) | (Cofinite(e), Finite(a)) => Finite(minus(a, e)),
            (Cofinite(a), Cofinite(b)) => Cofinite(merged(a, b)),
        }
    }

    pub fn complement(&self) -> Self {
        match self {
            ClosedPoints::Finite(v) => ClosedPoints::Cofinite(v.clone()),
            ClosedPoints::Cofinite(v) => ClosedPoints::Finite(v.clone()),
        }
    }

    /// Subset test; there are infinitely many closed points over any field,
    /// so a cofinite set is never contained in a finite one.
    pub fn is_subset(&self, other: &Self) -> bool {
        use ClosedPoints::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.iter().all(|x| b.binary_search(x).is_ok()),
            (Finite(a), Cofinite(e)) => a.iter().all(|x| e.binary_search(x).is_err()),
            (Cofinite(_), Finite(_)) => false,
            (Cofinite(a), Cofinite(b)) => b.iter().all(|x| a.binary_search(x).is_ok()),
        }
    }

    fn json_parts(&self) -> (&'static str, Value) {
        let (kind, v) = match self {
            ClosedPoints::Finite(v) => ("finite", v),
            ClosedPoints::Cofinite(v) => ("cofinite", v),
        };
        (
            kind,
            Value::Array(v.iter().map(ClosedPoint::to_json).collect()),
        )
    }

    pub fn to_json(&self) -> Value {
        let (kind, points) = self.json_parts();
        json!({"kind": kind, "points": points})
    }

    pub fn from_json(field: FieldSpec, v: &Value) -> Result<Self> {
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("bad point-set JSON {v}"),
        };
        let points = v
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(bad)?
            .iter()
            .map(|p| ClosedPoint::from_json(field, p))
            .collect::<Result<Vec<_>>>()?;
        match v.get("kind").and_then(Value::as_str) {
            Some("finite") => Ok(ClosedPoints::finite(points)),
            Some("cofinite") => Ok(ClosedPoints::cofinite(points)),
            _ => Err(bad()),
        }
    }
}

/// A subset of P^1: a finite/cofinite set of closed points plus a flag for
/// the generic point.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    pub closed: ClosedPoints,
    pub eta: bool,
}

impl PointSet {
    pub fn new(closed: ClosedPoints, eta: bool) -> Self {
        PointSet { closed, eta }
    }

    pub fn empty() -> Self {
        PointSet::new(ClosedPoints::empty(), false)
    }

    /// All of P^1, generic point included.
    pub fn full() -> Self {
        PointSet::new(ClosedPoints::all(), true)
    }

    pub fn generic() -> Self {
        PointSet::new(ClosedPoints::empty(), true)
    }

    pub fn single(x: ClosedPoint) -> Self {
        PointSet::new(ClosedPoints::finite([x]), false)
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty() && !self.eta
    }

    pub fn is_full(&self) -> bool {
        self.closed.is_all() && self.eta
    }

    pub fn contains(&self, p: &Point) -> bool {
        match p {
            Point::Generic => self.eta,
            Point::Closed(x) => self.closed.contains(x),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        PointSet::new(self.closed.union(&other.closed), self.eta || other.eta)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        PointSet::new(self.closed.intersect(&other.closed), self.eta && other.eta)
    }

    pub fn complement(&self) -> Self {
        PointSet::new(self.closed.complement(), !self.eta)
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        (!self.eta || other.eta) && self.closed.is_subset(&other.closed)
    }

    /// Field of the listed points, if any carries one; errors on a mix.
    pub fn field(&self) -> Result<Option<FieldSpec>> {
        unify_fields(self.closed.listed().iter().filter_map(ClosedPoint::field))
    }

    pub fn to_json(&self) -> Value {
        let (kind, points) = self.closed.json_parts();
        json!({"kind": kind, "points": points, "eta": self.eta})
    }

    pub fn from_json(field: FieldSpec, v: &Value) -> Result<Self> {
        let closed = ClosedPoints::from_json(field, v)?;
        let eta = v
            .get("eta")
            .and_then(Value::as_bool)
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("point-set JSON without eta flag: {v}"),
            })?;
        Ok(PointSet::new(closed, eta))
    }
}

/// Checks that all fields agree.
pub fn unify_fields(fields: impl IntoIterator<Item = FieldSpec>) -> Result<Option<FieldSpec>> {
    let mut out: Option<FieldSpec> = None;
    for f in fields {
        match out {
            None => out = Some(f),
            Some(g) if g != f => return Err(Error::FieldMismatch(g, f)),
            _ => {}
        }
    }
    Ok(out)
}

/// Upper limit on candidate polynomials examined by [`enumerate_points`].
pub const ENUMERATION_LIMIT: u64 = 2_000_000;

/// `AtInfinity` plus every monic irreducible of degree `<= max_degree`, sorted.
pub fn enumerate_points(field: FieldSpec, max_degree: usize) -> Result<Vec<ClosedPoint>> {
    let FieldSpec::Prime(p) = field else {
        return Err(Error::Unsupported(
            "point enumeration needs a finite prime field".into(),
        ));
    };
    if max_degree == 0 {
        return Err(Error::Domain("max degree must be at least 1".into()));
    }
    let p = p as u64;
    let mut total: u64 = 0;
    for d in 1..=max_degree {
        total = total.saturating_add(p.saturating_pow(d as u32));
    }
    if total > ENUMERATION_LIMIT {
        return Err(Error::Unsupported(format!(
            "enumerating {total} candidate polynomials exceeds the limit {ENUMERATION_LIMIT}"
        )));
    }
    let mut out = vec![ClosedPoint::AtInfinity];
    for d in 1..=max_degree {
        for code in 0..p.pow(d as u32) {
            let mut c = Vec::with_capacity(d + 1);
            let mut x = code;
            for _ in 0..d {
                c.push(field.from_i64((x % p) as i64));
                x /= p;
            }
            c.push(field.one());
            let f = Poly::new(field, c);
            if d == 1 || is_monic_irreducible(&f)? {
                out.push(ClosedPoint::Finite(f));
            }
        }
    }
    out.sort();
    Ok(out)
}
