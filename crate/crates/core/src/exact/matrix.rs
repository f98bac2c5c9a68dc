use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single exact field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row echelon form together with the pivot column of each nonzero row.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let x = f(r, c);
                debug_assert_eq!(x.field(), field);
                data.push(x);
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "ragged rows: expected {cols} entries, found {}",
                    row.len()
                )));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::FieldMismatch(format!(
                        "entry in {} inside a matrix over {field}",
                        x.field()
                    )));
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Small integer matrices, mostly for fixtures and tests.
    pub fn from_ints(field: Field, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_fn(field, rows.len(), cols, |r, c| field.from_i64(rows[r][c]))
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Matrix {
        for c in columns {
            assert_eq!(c.len(), rows, "column length mismatch");
        }
        Matrix::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn column_vector(field: Field, v: &[Scalar]) -> Matrix {
        Matrix::from_fn(field, v.len(), 1, |r, _| v[r].clone())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        debug_assert_eq!(x.field(), self.field);
        self.data[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Matrix product. Panics on shape or field mismatch; use [`Matrix::checked_mul`]
    /// when the operands come from user input.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).expect("matrix product")
    }

    pub fn checked_mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(format!("{} · {}", self.field, rhs.field)));
        }
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "{}×{} · {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| dot(self.field, self.row(r), v))
            .collect()
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    fn zip(&self, rhs: &Matrix, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> Matrix {
        assert_eq!(
            (self.rows, self.cols, self.field),
            (rhs.rows, rhs.cols, rhs.field),
            "shape mismatch"
        );
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows);
        Matrix::from_fn(self.field, self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        })
    }

    /// Reduced row echelon form. Over `Q` the elimination runs on primitive
    /// integer rows and divides by the pivots only at the end.
    pub fn rref(&self) -> Rref {
        match self.field {
            Field::Rational => rref_fraction_free(self),
            Field::Prime(_) => rref_field(self),
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right null space as plain coordinate vectors.
    pub fn kernel_vectors(&self) -> Vec<Vec<Scalar>> {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, f);
                }
                v
            })
            .collect()
    }

    /// Basis of the right null space, each vector as a column matrix.
    /// Empty iff the matrix is injective.
    pub fn kernel_basis(&self) -> Vec<Matrix> {
        self.kernel_vectors()
            .iter()
            .map(|v| Matrix::column_vector(self.field, v))
            .collect()
    }

    /// Some `x` with `self · x = b`, or `None` when the system is inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>> {
        if self.field != b.field {
            return Err(Error::FieldMismatch(format!(
                "system over {} with right-hand side over {}",
                self.field, b.field
            )));
        }
        if self.rows != b.rows {
            return Err(Error::Shape(format!(
                "{} equations, right-hand side has {} rows",
                self.rows, b.rows
            )));
        }
        let Rref { matrix, pivots } = self.hstack(b).rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for k in 0..b.cols {
                x.set(p, k, matrix.get(r, self.cols + k).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn solve_vector(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        Ok(self
            .solve(&Matrix::column_vector(self.field, b))?
            .map(|x| x.column(0)))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let Rref { matrix, pivots } = self.hstack(&Matrix::identity(self.field, n)).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(self.field, n, n, |r, c| {
            matrix.get(r, n + c).clone()
        }))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Determinant by elimination over the field.
    pub fn det(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.to_rows();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            let pivot = m[c][c].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in c + 1..n {
                if m[r][c].is_zero() {
                    continue;
                }
                let factor = &m[r][c] * &inv;
                for j in c..n {
                    let t = &factor * &m[c][j];
                    m[r][j] = &m[r][j] - &t;
                }
            }
        }
        det
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(short).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Compact rendering: integers without the `/1`, residues without `mod p`.
pub fn short(x: &Scalar) -> String {
    match x {
        Scalar::Rational(q) if q.is_integer() => q.numer().to_string(),
        Scalar::Rational(q) => format!("{}/{}", q.numer(), q.denom()),
        Scalar::Prime { residue, .. } => residue.to_string(),
    }
}

pub fn dot(field: Field, a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc = &acc + &(x * y);
    }
    acc
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * s).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

fn rref_field(m: &Matrix) -> Rref {
    let (nr, nc) = (m.rows, m.cols);
    let mut rows = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for j in c..nc {
            rows[r][j] = &rows[r][j] * &inv;
        }
        for i in 0..nr {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in c..nc {
                let t = &factor * &rows[r][j];
                rows[i][j] = &rows[i][j] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        matrix: Matrix {
            field: m.field,
            rows: nr,
            cols: nc,
            data: rows.into_iter().flatten().collect(),
        },
        pivots,
    }
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

fn rref_fraction_free(m: &Matrix) -> Rref {
    let (nr, nc) = (m.rows, m.cols);
    let mut rows: Vec<Vec<BigInt>> = (0..nr)
        .map(|r| {
            let row = m.row(r);
            let lcm = row.iter().fold(BigInt::one(), |l, x| match x {
                Scalar::Rational(q) => l.lcm(q.denom()),
                _ => unreachable!("rational matrix"),
            });
            let mut ints: Vec<BigInt> = row
                .iter()
                .map(|x| match x {
                    Scalar::Rational(q) => q.numer() * (&lcm / q.denom()),
                    _ => unreachable!(),
                })
                .collect();
            make_primitive(&mut ints);
            ints
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr)
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| (rows[i][c].bits(), i))
        else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row");
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&other[c]);
            let a = &pivot_row[c] / &g;
            let b = &other[c] / &g;
            for (x, y) in other.iter_mut().zip(pivot_row.iter()) {
                *x = &a * &*x - &b * y;
            }
            make_primitive(other);
        }
        pivots.push(c);
        r += 1;
    }

    let data = rows
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            let denom = if i < pivots.len() {
                row[pivots[i]].clone()
            } else {
                BigInt::one()
            };
            row.iter()
                .map(move |x| Scalar::Rational(BigRational::new(x.clone(), denom.clone())))
                .collect::<Vec<_>>()
        })
        .collect();
    Rref {
        matrix: Matrix {
            field: m.field,
            rows: nr,
            cols: nc,
            data,
        },
        pivots,
    }
}

/// A subspace of `field^n` given by spanning vectors, with reduction modulo
/// the subspace and coordinates with respect to the spanning family.
#[derive(Clone, Debug)]
pub struct Span {
    field: Field,
    ambient: usize,
    generators: usize,
    /// RREF rows of the span.
    echelon: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    /// `echelon[r] = Σ_i transform[r][i] · generator_i`.
    transform: Vec<Vec<Scalar>>,
}

impl Span {
    pub fn new(field: Field, ambient: usize, vectors: &[Vec<Scalar>]) -> Span {
        let k = vectors.len();
        let aug = Matrix::from_fn(field, k, ambient + k, |r, c| {
            if c < ambient {
                vectors[r][c].clone()
            } else if c - ambient == r {
                field.one()
            } else {
                field.zero()
            }
        });
        let Rref { matrix, pivots } = aug.rref();
        let rank = pivots.iter().take_while(|&&p| p < ambient).count();
        let echelon = (0..rank).map(|r| matrix.row(r)[..ambient].to_vec()).collect();
        let transform = (0..rank).map(|r| matrix.row(r)[ambient..].to_vec()).collect();
        Span {
            field,
            ambient,
            generators: k,
            echelon,
            pivots: pivots[..rank].to_vec(),
            transform,
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// RREF basis of the subspace.
    pub fn echelon_basis(&self) -> &[Vec<Scalar>] {
        &self.echelon
    }

    /// `v` minus its component along the echelon basis; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient);
        let mut w = v.to_vec();
        for (row, &p) in self.echelon.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    w[j] = &w[j] - &(&f * x);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coefficients `c` with `Σ c_i generator_i = v`, or `None` if `v` is outside the span.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        let mut c = vec![self.field.zero(); self.generators];
        for (t, &p) in self.transform.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            for (ci, ti) in c.iter_mut().zip(t) {
                if !ti.is_zero() {
                    *ci = &*ci + &(&v[p] * ti);
                }
            }
        }
        Some(c)
    }
}
