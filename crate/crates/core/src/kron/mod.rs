//! Finite-dimensional representations of the Kronecker quiver.
//!
//! Both arrows point from the source vertex to the target vertex, so a
//! representation is a pair of `d_tgt x d_src` matrices `(A, B)`. The
//! regular block with `B = c A` sits at the point `t - c`; blocks where `A`
//! degenerates sit at infinity.

mod decompose;

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{ClosedPoint, FieldSpec, Matrix, Scalar};

pub use decompose::{find_intertwiner, kron_decompose, kron_iso_check};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KronRep {
    pub field: FieldSpec,
    pub a: Matrix,
    pub b: Matrix,
}

impl KronRep {
    pub fn new(a: Matrix, b: Matrix) -> Result<Self> {
        if a.shape() != b.shape() {
            return Err(Error::DimensionMismatch(format!(
                "arrow matrices of shapes {:?} and {:?}",
                a.shape(),
                b.shape()
            )));
        }
        if a.field() != b.field() {
            return Err(Error::FieldMismatch(a.field(), b.field()));
        }
        Ok(KronRep {
            field: a.field(),
            a,
            b,
        })
    }

    pub fn zero(field: FieldSpec) -> Self {
        KronRep {
            field,
            a: Matrix::zeros(field, 0, 0),
            b: Matrix::zeros(field, 0, 0),
        }
    }

    pub fn d_src(&self) -> usize {
        self.a.cols()
    }

    pub fn d_tgt(&self) -> usize {
        self.a.rows()
    }

    /// Dimension vector `(d_src, d_tgt)`.
    pub fn dims(&self) -> (usize, usize) {
        (self.d_src(), self.d_tgt())
    }

    /// The dual representation: transposed maps, vertices swapped.
    /// Exchanges preprojectives and preinjectives and fixes regular blocks.
    pub fn dual(&self) -> KronRep {
        KronRep {
            field: self.field,
            a: self.a.transpose(),
            b: self.b.transpose(),
        }
    }

    pub fn direct_sum(field: FieldSpec, parts: &[KronRep]) -> KronRep {
        let a: Vec<&Matrix> = parts.iter().map(|r| &r.a).collect();
        let b: Vec<&Matrix> = parts.iter().map(|r| &r.b).collect();
        KronRep {
            field,
            a: Matrix::block_diag(field, &a),
            b: Matrix::block_diag(field, &b),
        }
    }

    /// Applies the base change `(A, B) -> (T A S^-1, T B S^-1)`.
    pub fn conjugate(&self, s: &Matrix, t: &Matrix) -> Result<KronRep> {
        let s_inv = s
            .inverse()
            .ok_or_else(|| Error::Domain("source base change is not invertible".into()))?;
        KronRep::new(t.mul(&self.a).mul(&s_inv), t.mul(&self.b).mul(&s_inv))
    }

    pub fn to_json(&self) -> Value {
        let rows = |m: &Matrix| -> Value {
            Value::Array(
                (0..m.rows())
                    .map(|r| Value::Array(m.row(r).iter().map(|x| json!(x.to_string())).collect()))
                    .collect(),
            )
        };
        json!({
            "field": self.field.to_string(),
            "d_src": self.d_src(),
            "d_tgt": self.d_tgt(),
            "A": rows(&self.a),
            "B": rows(&self.b),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            pos: 0,
            msg: format!("representation JSON: {msg}"),
        };
        let field = match v.get("field") {
            Some(Value::String(s)) => FieldSpec::parse(s)?,
            Some(Value::Number(n)) => FieldSpec::parse(&n.to_string())?,
            _ => return Err(bad("missing field")),
        };
        let dim = |key: &str| {
            v.get(key)
                .and_then(Value::as_u64)
                .map(|x| x as usize)
                .ok_or_else(|| bad(&format!("missing {key}")))
        };
        let (d_src, d_tgt) = (dim("d_src")?, dim("d_tgt")?);
        let matrix = |key: &str| -> Result<Matrix> {
            let rows = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(&format!("missing {key}")))?;
            if rows.len() != d_tgt {
                return Err(bad(&format!(
                    "{key} has {} rows, expected {d_tgt}",
                    rows.len()
                )));
            }
            let mut data = Vec::with_capacity(d_src * d_tgt);
            for row in rows {
                let row = row.as_array().ok_or_else(|| bad("row is not a list"))?;
                if row.len() != d_src {
                    return Err(bad(&format!(
                        "{key} row of length {}, expected {d_src}",
                        row.len()
                    )));
                }
                for x in row {
                    data.push(match x {
                        Value::String(s) => field.parse_scalar(s)?,
                        Value::Number(n) => field.parse_scalar(&n.to_string())?,
                        _ => return Err(bad("entry is not a scalar")),
                    });
                }
            }
            Matrix::new(field, d_tgt, d_src, data)
        };
        KronRep::new(matrix("A")?, matrix("B")?)
    }
}

/// Indecomposable representations up to isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KronIndec {
    /// Dimension vector `(n, n + 1)`.
    Preproj(u32),
    /// Dimension vector `(l deg x, l deg x)`.
    Regular(ClosedPoint, u32),
    /// Dimension vector `(n + 1, n)`.
    Preinj(u32),
}

impl KronIndec {
    pub fn dims(&self) -> (usize, usize) {
        match self {
            KronIndec::Preproj(n) => (*n as usize, *n as usize + 1),
            KronIndec::Preinj(n) => (*n as usize + 1, *n as usize),
            KronIndec::Regular(x, l) => (x.degree() * *l as usize, x.degree() * *l as usize),
        }
    }

    pub fn to_json(&self, mult: usize) -> Value {
        match self {
            KronIndec::Preproj(n) => json!({"type": "preproj", "n": n, "mult": mult}),
            KronIndec::Preinj(n) => json!({"type": "preinj", "n": n, "mult": mult}),
            KronIndec::Regular(x, l) => {
                json!({"type": "regular", "point": x.to_json(), "length": l, "mult": mult})
            }
        }
    }
}

impl fmt::Display for KronIndec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KronIndec::Preproj(n) => write!(f, "P({n})"),
            KronIndec::Preinj(n) => write!(f, "I({n})"),
            KronIndec::Regular(x, l) => write!(f, "R({x},{l})"),
        }
    }
}

/// Canonical matrix model of an indecomposable.
pub fn indec_rep(field: FieldSpec, k: &KronIndec) -> Result<KronRep> {
    match k {
        KronIndec::Preproj(n) => {
            let n = *n as usize;
            let mut a = Matrix::zeros(field, n + 1, n);
            let mut b = Matrix::zeros(field, n + 1, n);
            for i in 0..n {
                a.set(i, i, field.one());
                b.set(i + 1, i, field.one());
            }
            KronRep::new(a, b)
        }
        KronIndec::Preinj(n) => {
            let n = *n as usize;
            let mut a = Matrix::zeros(field, n, n + 1);
            let mut b = Matrix::zeros(field, n, n + 1);
            for i in 0..n {
                a.set(i, i, field.one());
                b.set(i, i + 1, field.one());
            }
            KronRep::new(a, b)
        }
        KronIndec::Regular(x, l) => {
            if *l == 0 {
                return Err(Error::Domain("regular block of length 0".into()));
            }
            if let Some(f) = x.field() {
                if f != field {
                    return Err(Error::FieldMismatch(f, field));
                }
            }
            let l = *l as usize;
            match x {
                ClosedPoint::AtInfinity => {
                    let mut j = Matrix::zeros(field, l, l);
                    for i in 0..l - 1 {
                        j.set(i, i + 1, field.one());
                    }
                    KronRep::new(j, Matrix::identity(field, l))
                }
                ClosedPoint::Finite(p) => {
                    let c = Matrix::companion(&p.pow(l as u64));
                    KronRep::new(Matrix::identity(field, c.rows()), c)
                }
            }
        }
    }
}

/// Dimensions of `Hom(M, N)` and `Ext^1(M, N)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomExt {
    pub hom_dim: usize,
    pub ext1_dim: usize,
}

/// Euler form `<(a,b),(c,d)> = ac + bd - 2ad` on dimension vectors.
pub fn euler_form(m: (usize, usize), n: (usize, usize)) -> i64 {
    let (a, b) = (m.0 as i64, m.1 as i64);
    let (c, d) = (n.0 as i64, n.1 as i64);
    a * c + b * d - 2 * a * d
}

/// Coefficient matrix of the intertwining system; unknowns are the
/// source map (row-major) followed by the target map (row-major).
fn intertwining_system(m: &KronRep, n: &KronRep) -> Matrix {
    let field = m.field;
    let (sm, tm) = m.dims();
    let (sn, tn) = n.dims();
    let nx = sn * sm;
    let mut sys = Matrix::zeros(field, 2 * tn * sm, nx + tn * tm);
    for (blk, (am, an)) in [(&m.a, &n.a), (&m.b, &n.b)].into_iter().enumerate() {
        for r in 0..tn {
            for c in 0..sm {
                let row = blk * tn * sm + r * sm + c;
                for k in 0..tm {
                    let v = am.get(k, c);
                    if !v.is_zero() {
                        sys.set(row, nx + r * tm + k, v.clone());
                    }
                }
                for k in 0..sn {
                    let v = an.get(r, k);
                    if !v.is_zero() {
                        sys.set(row, k * sm + c, -v);
                    }
                }
            }
        }
    }
    sys
}

/// Basis of `Hom(M, N)` as pairs `(phi_src, phi_tgt)`.
pub fn hom_basis(m: &KronRep, n: &KronRep) -> Result<Vec<(Matrix, Matrix)>> {
    if m.field != n.field {
        return Err(Error::FieldMismatch(m.field, n.field));
    }
    let (sm, tm) = m.dims();
    let (sn, tn) = n.dims();
    let ker = intertwining_system(m, n).kernel();
    Ok((0..ker.cols())
        .map(|j| {
            let v = ker.column(j);
            let src = Matrix::new(m.field, sn, sm, v[..sn * sm].to_vec()).unwrap();
            let tgt = Matrix::new(m.field, tn, tm, v[sn * sm..].to_vec()).unwrap();
            (src, tgt)
        })
        .collect())
}

pub fn kron_hom(m: &KronRep, n: &KronRep) -> Result<HomExt> {
    if m.field != n.field {
        return Err(Error::FieldMismatch(m.field, n.field));
    }
    let sys = intertwining_system(m, n);
    let hom_dim = sys.cols() - sys.rank();
    let ext = hom_dim as i64 - euler_form(m.dims(), n.dims());
    if ext < 0 {
        return Err(Error::Internal(format!("negative ext dimension {ext}")));
    }
    Ok(HomExt {
        hom_dim,
        ext1_dim: ext as usize,
    })
}

/// A formal direct sum of shifted indecomposables in the derived category
/// of Kronecker representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DKronObject {
    pub field: FieldSpec,
    pub terms: BTreeMap<(i64, KronIndec), usize>,
}

impl DKronObject {
    pub fn zero(field: FieldSpec) -> Self {
        DKronObject {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, shift: i64, k: KronIndec, mult: usize) {
        if mult > 0 {
            *self.terms.entry((shift, k)).or_insert(0) += mult;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The underlying representation with shifts forgotten.
    pub fn rep(&self) -> Result<KronRep> {
        let mut parts = Vec::new();
        for ((_, k), m) in &self.terms {
            let r = indec_rep(self.field, k)?;
            parts.extend(std::iter::repeat_n(r, *m));
        }
        Ok(KronRep::direct_sum(self.field, &parts))
    }
}

impl fmt::Display for DKronObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((s, k), m) in &self.terms {
            for _ in 0..*m {
                if !first {
                    write!(f, " (+) ")?;
                }
                first = false;
                if *s != 0 {
                    write!(f, "s^{s} ")?;
                }
                write!(f, "{k}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn random_scalar(field: FieldSpec, rng: &mut impl rand::Rng) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-4..=4)),
    }
}
