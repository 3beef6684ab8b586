use std::fmt;

use super::field::{inv_mod, FieldSpec, Scalar};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Dense row-major matrix over a single field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Rank, kernel basis (as columns) and column-reduced echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearKit {
    pub rank: usize,
    pub kernel: Matrix,
    pub column_reduced: Matrix,
}

pub fn linear_kit(m: &Matrix) -> LinearKit {
    LinearKit {
        rank: m.rank(),
        kernel: m.kernel(),
        column_reduced: m.transpose().rref().0.transpose(),
    }
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let data = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged rows");
                row.iter().map(|&x| field.from_i64(x))
            })
            .collect();
        Matrix {
            field,
            rows: r,
            cols: c,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        if let FieldSpec::Prime(p) = self.field {
            let p64 = p as u64;
            let a = self.residues();
            let b = other.residues();
            let mut acc = vec![0u64; other.cols];
            for i in 0..self.rows {
                acc.iter_mut().for_each(|x| *x = 0);
                for k in 0..self.cols {
                    let x = a[i * self.cols + k] as u64;
                    if x == 0 {
                        continue;
                    }
                    let brow = &b[k * other.cols..(k + 1) * other.cols];
                    for (slot, &y) in acc.iter_mut().zip(brow) {
                        *slot = (*slot + x * y as u64) % p64;
                    }
                }
                for (j, &v) in acc.iter().enumerate() {
                    out.data[i * other.cols + j] = Scalar::Fp { v: v as u32, p };
                }
            }
            return out;
        }
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = &out.data[i * other.cols + j] + &(x * other.get(k, j));
                    out.data[i * other.cols + j] = v;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        self.with_data(data)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        self.with_data(data)
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * c).collect();
        self.with_data(data)
    }

    fn with_data(&self, data: Vec<Scalar>) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diag(field: FieldSpec, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut out = Matrix::zeros(self.field, rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    fn residues(&self) -> Vec<u32> {
        self.data.iter().map(|s| s.residue().unwrap()).collect()
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        match self.field {
            FieldSpec::Prime(p) => {
                let mut d = self.residues();
                let piv = rref_fp(&mut d, self.rows, self.cols, p);
                let data = d.into_iter().map(|v| Scalar::Fp { v, p }).collect();
                (
                    Matrix {
                        field: self.field,
                        rows: self.rows,
                        cols: self.cols,
                        data,
                    },
                    piv,
                )
            }
            FieldSpec::Rationals => {
                let mut m = self.clone();
                let piv = m.rref_generic();
                (m, piv)
            }
        }
    }

    fn rref_generic(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, row * self.cols + c);
                }
            }
            let inv = self.get(row, col).inv().unwrap();
            for c in col..self.cols {
                let v = self.get(row, c) * &inv;
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row || self.get(r, col).is_zero() {
                    continue;
                }
                let f = self.get(r, col).clone();
                for c in col..self.cols {
                    let v = self.get(r, c) - &(&f * self.get(row, c));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel, one vector per column.
    pub fn kernel(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        pivots.iter().for_each(|&c| is_pivot[c] = true);
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut k = Matrix::zeros(self.field, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, self.field.one());
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, -r.get(i, fc));
            }
        }
        k
    }

    /// Solves `self * x = b`; `Ok(None)` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let bm = Matrix::from_columns(self.field, self.rows, &[b.to_vec()]);
        Ok(self.solve_matrix(&bm)?.map(|x| x.column(0)))
    }

    /// Solves `self * X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side with {} rows for {} rows",
                b.rows, self.rows
            )));
        }
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let id = Matrix::identity(self.field, self.rows);
        let x = self.solve_matrix(&id).ok()??;
        (self.rank() == self.rows).then_some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Linearly independent columns spanning the column space.
    pub fn column_basis(&self) -> Matrix {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Evaluates a polynomial at a square matrix.
    pub fn eval_poly(&self, f: &Poly) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Companion matrix of a monic polynomial (acts on `k[t]/(f)` in the monomial basis).
    pub fn companion(f: &Poly) -> Matrix {
        let n = f.degree().expect("nonzero polynomial");
        let field = f.field();
        let mut m = Matrix::zeros(field, n, n);
        for i in 1..n {
            m.set(i, i - 1, field.one());
        }
        for i in 0..n {
            m.set(i, n - 1, -&f.coeff(i));
        }
        m
    }

    /// Characteristic polynomial `det(t I - self)` via Hessenberg reduction.
    pub fn charpoly(&self) -> Poly {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let field = self.field;
        let mut h = self.clone();
        // Reduce to upper Hessenberg form by similarity transforms.
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                for c in 0..n {
                    h.data.swap(i * n + c, m * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let inv = h.get(m, m - 1).inv().unwrap();
            for i in m + 1..n {
                let u = h.get(i, m - 1) * &inv;
                if u.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let v = h.get(i, c) - &(&u * h.get(m, c));
                    h.set(i, c, v);
                }
                for r in 0..n {
                    let v = h.get(r, m) + &(&u * h.get(r, i));
                    h.set(r, m, v);
                }
            }
        }
        // Recurrence on leading principal submatrices.
        let t = Poly::t(field);
        let mut p: Vec<Poly> = vec![Poly::one(field)];
        for m in 1..=n {
            let diag = Poly::constant(h.get(m - 1, m - 1).clone());
            let mut pm = t.sub(&diag).mul(&p[m - 1]);
            let mut prod = field.one();
            for i in 1..m {
                prod = &prod * h.get(m - i, m - i - 1);
                let coef = &prod * h.get(m - i - 1, m - 1);
                pm = pm.sub(&p[m - i - 1].scale(&coef));
            }
            p.push(pm);
        }
        p.pop().unwrap()
    }
}

fn rref_fp(d: &mut [u32], rows: usize, cols: usize, p: u32) -> Vec<usize> {
    let p64 = p as u64;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(pr) = (row..rows).find(|&r| d[r * cols + col] != 0) else {
            continue;
        };
        if pr != row {
            for c in 0..cols {
                d.swap(pr * cols + c, row * cols + c);
            }
        }
        let inv = inv_mod(d[row * cols + col], p) as u64;
        for c in col..cols {
            d[row * cols + c] = ((d[row * cols + c] as u64 * inv) % p64) as u32;
        }
        let (before, rest) = d.split_at_mut(row * cols);
        let (pivot_row, after) = rest.split_at_mut(cols);
        let eliminate = |target: &mut [u32]| {
            let f = target[col] as u64;
            if f == 0 {
                return;
            }
            let nf = p64 - f;
            for c in col..cols {
                target[c] = ((target[c] as u64 + nf * pivot_row[c] as u64) % p64) as u32;
            }
        };
        for target in before.chunks_mut(cols) {
            eliminate(target);
        }
        for target in after.chunks_mut(cols) {
            eliminate(target);
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Subspace spanned by the columns of `a` intersected with that of `b` (both in the same space).
pub fn intersect(a: &Matrix, b: &Matrix) -> Matrix {
    let k = a.hstack(&b.scale(&-a.field().one())).kernel();
    let coeffs = k.submatrix(0..a.cols(), 0..k.cols());
    a.mul(&coeffs).column_basis()
}

/// Preimage `{v : m v in span(s)}` as a column basis.
pub fn preimage(m: &Matrix, s: &Matrix) -> Matrix {
    let k = m.hstack(&s.scale(&-m.field().one())).kernel();
    k.submatrix(0..m.cols(), 0..k.cols()).column_basis()
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
