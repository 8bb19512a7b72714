//! Dense exact linear algebra over [`Scalar`].

mod jordan;
mod poly;
mod subspace;

pub use jordan::{is_nilpotent, jordan_basis_nilpotent, jordan_type, Partition};
pub use poly::Poly;
pub use subspace::Subspace;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{QuadField, Scalar};

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: QuadField,
    data: Vec<Scalar>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn zeros(field: QuadField, rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: QuadField, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Matrix unit `e_ij` (0-based indices).
    pub fn unit(field: QuadField, n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        m.set(i, j, field.one());
        m
    }

    pub fn diag(field: QuadField, entries: &[Scalar]) -> Mat {
        let n = entries.len();
        let mut m = Mat::zeros(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn from_rows(field: QuadField, rows: Vec<Vec<Scalar>>) -> Result<Mat> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::Shape("matrix with no rows".into()));
        }
        let c = rows[0].len();
        if c == 0 || rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged or empty rows".into()));
        }
        let data: Vec<Scalar> = rows.into_iter().flatten().collect();
        if let Some(bad) = data.iter().find(|s| s.p() != field.p()) {
            return Err(Error::MixedPrime(field.p(), bad.p()));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            field,
            data,
        })
    }

    pub fn from_ints(field: QuadField, rows: &[&[i64]]) -> Mat {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&k| field.int(k)).collect())
            .collect();
        Mat::from_rows(field, rows).expect("well-formed integer matrix")
    }

    /// Reshapes a row-major vector of length `n*n` into an `n x n` matrix.
    pub fn from_vec(field: QuadField, n: usize, v: &[Scalar]) -> Mat {
        assert_eq!(v.len(), n * n, "vector length does not match n^2");
        Mat {
            rows: n,
            cols: n,
            field,
            data: v.to_vec(),
        }
    }

    pub fn to_vec(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t += self.get(i, i);
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Mat {
        let mut acc = Mat::identity(self.field, self.rows);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Commutator `self * other - other * self`.
    pub fn bracket(&self, other: &Mat) -> Mat {
        &(self * other) - &(other * self)
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(0, self.cols, other);
        m
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut m = Mat::zeros(self.field, self.rows + other.rows, self.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, 0, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Mat) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        m
    }

    /// Builds a matrix from column vectors.
    pub fn from_columns(field: QuadField, rows: usize, columns: &[Vec<Scalar>]) -> Mat {
        let mut m = Mat::zeros(field, rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, piv);
            let inv = m.get(row, col).inv().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    if m.get(row, c).is_zero() {
                        continue;
                    }
                    let v = m.get(r, c) - &(&factor * m.get(row, c));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right null space.
    pub fn kernel(&self) -> Subspace {
        let Rref { matrix, pivots, .. } = self.rref();
        let field = self.field;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&fc| {
                let mut v = vec![field.zero(); self.cols];
                v[fc] = field.one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -matrix.get(r, fc);
                }
                v
            })
            .collect();
        Subspace::span(field, self.cols, basis)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        let cols = (0..self.cols).map(|c| self.column(c)).collect();
        Subspace::span(self.field, self.rows, cols)
    }

    /// Some `x` with `self * x = b`, if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let rhs = Mat::from_columns(self.field, self.rows, &[b.to_vec()]);
        let aug = self.hstack(&rhs);
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.field, n));
        let Rref { matrix, rank, pivots } = aug.rref();
        if rank < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(matrix.block(0, n, n, n))
    }

    pub fn det(&self) -> Scalar {
        assert!(self.is_square());
        let mut m = self.clone();
        let n = self.rows;
        let mut det = self.field.one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return self.field.zero();
            };
            if piv != col {
                m.swap_rows(piv, col);
                det = -det;
            }
            let pv = m.get(col, col).clone();
            det = &det * &pv;
            let inv = pv.inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) * &inv;
                for c in col..n {
                    let v = m.get(r, c) - &(&factor * m.get(col, c));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && !self.det().is_zero()
    }

    /// Monic characteristic polynomial `det(x I - M)`, via reduction to
    /// upper Hessenberg form.
    pub fn charpoly(&self) -> Poly {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        let field = self.field;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let t_inv = h.get(m, m - 1).inv().expect("nonzero pivot");
            for i in m + 1..n {
                let u = h.get(i, m - 1) * &t_inv;
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
        // p_k is the characteristic polynomial of the leading k x k block
        let x = Poly::x(field);
        let mut ps: Vec<Poly> = vec![Poly::one(field)];
        for m in 1..=n {
            let lin = &x - &Poly::constant(h.get(m - 1, m - 1).clone());
            let mut pm = &lin * &ps[m - 1];
            let mut prod = field.one();
            for i in (1..m).rev() {
                prod = &prod * h.get(i, i - 1);
                let coeff = &prod * h.get(i - 1, m - 1);
                if !coeff.is_zero() {
                    pm = &pm - &ps[i - 1].scale(&coeff);
                }
            }
            ps.push(pm);
        }
        ps.pop().expect("n >= 0")
    }

    /// Whether the minimal polynomial has no repeated factors, i.e. the
    /// matrix is semisimple.
    pub fn minpoly_squarefree(&self) -> bool {
        let chi = self.charpoly();
        let sqfree = chi.squarefree_part();
        sqfree.eval_mat(self).is_zero()
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

impl<'a> Mul<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Mat::zeros(self.field, self.rows, rhs.cols);
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
                    let idx = r * rhs.cols + c;
                    out.data[idx] += &(a * b);
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a Mat> for &'a Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}
