//! Objects of the bounded derived category of coherent sheaves on the
//! projective line, modelled as finite sums of shifted indecomposables.
//!
//! Every object of the derived category of a hereditary abelian category
//! splits into shifted sheaves, and every coherent sheaf on P^1 splits into
//! line bundles `O(i)` and indecomposable torsion sheaves `T(x, l)`.

pub mod oracle;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::exact::{ClosedPoint, ClosedPoints, FieldSpec, PointSet};

pub use oracle::{cech_oracle, oracle_hom, oracle_tensor, OracleKind, OracleOutput};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CohIndec {
    /// The line bundle `O(i)`.
    Twist(i64),
    /// The indecomposable torsion sheaf of length `l` at a closed point.
    Torsion(ClosedPoint, u32),
}

impl CohIndec {
    pub fn rank(&self) -> i64 {
        match self {
            CohIndec::Twist(_) => 1,
            CohIndec::Torsion(..) => 0,
        }
    }

    pub fn degree(&self) -> i64 {
        match self {
            CohIndec::Twist(i) => *i,
            CohIndec::Torsion(x, l) => *l as i64 * x.degree() as i64,
        }
    }

    pub fn point(&self) -> Option<&ClosedPoint> {
        match self {
            CohIndec::Twist(_) => None,
            CohIndec::Torsion(x, _) => Some(x),
        }
    }

    fn check_field(&self, field: FieldSpec) -> Result<()> {
        match self {
            CohIndec::Torsion(_, 0) => Err(Error::Domain("torsion sheaf of length 0".into())),
            CohIndec::Torsion(x, _) => match x.field() {
                Some(f) if f != field => Err(Error::FieldMismatch(f, field)),
                _ => Ok(()),
            },
            CohIndec::Twist(_) => Ok(()),
        }
    }
}

impl fmt::Display for CohIndec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohIndec::Twist(i) => write!(f, "O({i})"),
            CohIndec::Torsion(x, l) => write!(f, "T({x},{l})"),
        }
    }
}

/// A finite direct sum of shifted indecomposable sheaves. The key is
/// `(shift, summand)` where shift `j` stands for the `j`-fold suspension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DObject {
    pub field: FieldSpec,
    pub terms: BTreeMap<(i64, CohIndec), usize>,
}

impl DObject {
    pub fn zero(field: FieldSpec) -> Self {
        DObject {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn indec(field: FieldSpec, c: CohIndec) -> Result<Self> {
        DObject::shifted(field, 0, c)
    }

    pub fn shifted(field: FieldSpec, shift: i64, c: CohIndec) -> Result<Self> {
        c.check_field(field)?;
        let mut x = DObject::zero(field);
        x.terms.insert((shift, c), 1);
        Ok(x)
    }

    pub fn line(field: FieldSpec, i: i64) -> Self {
        DObject::indec(field, CohIndec::Twist(i)).unwrap()
    }

    pub fn torsion(field: FieldSpec, x: ClosedPoint, l: u32) -> Result<Self> {
        DObject::indec(field, CohIndec::Torsion(x, l))
    }

    pub fn add_term(&mut self, shift: i64, c: CohIndec, mult: usize) -> Result<()> {
        c.check_field(self.field)?;
        if mult > 0 {
            *self.terms.entry((shift, c)).or_insert(0) += mult;
        }
        Ok(())
    }

    pub fn sum(&self, other: &DObject) -> Result<DObject> {
        same_field(self, other)?;
        let mut out = self.clone();
        for (k, m) in &other.terms {
            *out.terms.entry(k.clone()).or_insert(0) += m;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Suspends every summand `n` times.
    pub fn shift(&self, n: i64) -> DObject {
        DObject {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|((s, c), m)| ((s + n, c.clone()), *m))
                .collect(),
        }
    }

    pub fn summands(&self) -> impl Iterator<Item = (i64, &CohIndec, usize)> {
        self.terms.iter().map(|((s, c), m)| (*s, c, *m))
    }

    pub fn parse(field: FieldSpec, text: &str) -> Result<DObject> {
        crate::text::parse_object(field, text)
    }
}

impl fmt::Display for DObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (s, c, m) in self.summands() {
            for _ in 0..m {
                if !first {
                    write!(f, " (+) ")?;
                }
                first = false;
                if s != 0 {
                    write!(f, "s^{s} ")?;
                }
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

fn same_field(x: &DObject, y: &DObject) -> Result<()> {
    if x.field != y.field {
        return Err(Error::FieldMismatch(x.field, y.field));
    }
    Ok(())
}

/// `n -> dim Hom(X, S^n Y)`, storing only nonzero entries.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedDims(pub BTreeMap<i64, usize>);

impl GradedDims {
    pub fn add(&mut self, degree: i64, dim: usize) {
        if dim > 0 {
            *self.0.entry(degree).or_insert(0) += dim;
        }
    }

    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let dims: Map<String, Value> = self
            .0
            .iter()
            .map(|(d, n)| (d.to_string(), json!(n)))
            .collect();
        json!({ "dims": dims })
    }
}

/// `(dim Hom, dim Ext^1)` between indecomposable sheaves.
pub fn hom_ext_indec(u: &CohIndec, v: &CohIndec) -> (usize, usize) {
    use CohIndec::*;
    match (u, v) {
        (Twist(i), Twist(j)) => ((j - i + 1).max(0) as usize, (i - j - 1).max(0) as usize),
        (Twist(_), Torsion(..)) => (v.degree() as usize, 0),
        (Torsion(..), Twist(_)) => (0, u.degree() as usize),
        (Torsion(x, l), Torsion(y, m)) => {
            if x == y {
                let d = (*l).min(*m) as usize * x.degree();
                (d, d)
            } else {
                (0, 0)
            }
        }
    }
}

/// Graded Hom dimensions; `Hom(S^a U, S^n S^b V)` is `Hom(U, V)` for
/// `n = a - b` and `Ext^1(U, V)` for `n = a - b + 1`.
pub fn hom_dims(x: &DObject, y: &DObject) -> Result<GradedDims> {
    same_field(x, y)?;
    let mut out = GradedDims::default();
    for (a, u, mu) in x.summands() {
        for (b, v, mv) in y.summands() {
            let (h, e) = hom_ext_indec(u, v);
            out.add(a - b, mu * mv * h);
            out.add(a - b + 1, mu * mv * e);
        }
    }
    Ok(out)
}

/// Derived tensor product, fully decomposed.
pub fn tensor(x: &DObject, y: &DObject) -> Result<DObject> {
    same_field(x, y)?;
    use CohIndec::*;
    let mut out = DObject::zero(x.field);
    for (a, u, mu) in x.summands() {
        for (b, v, mv) in y.summands() {
            let m = mu * mv;
            match (u, v) {
                (Twist(i), Twist(j)) => out.add_term(a + b, Twist(i + j), m)?,
                (Twist(_), t @ Torsion(..)) | (t @ Torsion(..), Twist(_)) => {
                    out.add_term(a + b, t.clone(), m)?
                }
                (Torsion(p, l), Torsion(q, k)) => {
                    if p == q {
                        let t = Torsion(p.clone(), (*l).min(*k));
                        out.add_term(a + b, t.clone(), m)?;
                        out.add_term(a + b + 1, t, m)?;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `X (x) O(n)`.
pub fn twist(x: &DObject, n: i64) -> DObject {
    DObject {
        field: x.field,
        terms: x
            .terms
            .iter()
            .map(|((s, c), m)| {
                let c = match c {
                    CohIndec::Twist(i) => CohIndec::Twist(i + n),
                    t => t.clone(),
                };
                ((*s, c), *m)
            })
            .collect(),
    }
}

pub fn support(x: &DObject) -> PointSet {
    let mut points = Vec::new();
    for (_, c, _) in x.summands() {
        match c {
            CohIndec::Twist(_) => return PointSet::full(),
            CohIndec::Torsion(p, _) => points.push(p.clone()),
        }
    }
    PointSet::new(ClosedPoints::finite(points), false)
}
