//! Adjoint and twisted-Frobenius operators on `gl_n^f` as explicit matrices.
//!
//! Every operator here acts on `gl_n^f` in one fixed coordinate system:
//! slot-major, then row-major inside each slot, so coordinate
//! `slot * n^2 + r * n + c` is entry `(r, c)` of slot `slot`.

use crate::error::{Error, Result};
use crate::field::{QuadField, Scalar};
use crate::linalg::{Mat, Subspace};

/// Tag written next to serialized operators.
pub const BASIS_ORDERING: &str = "slot-major,row-major";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TupleKind {
    /// Frobenius data: every component invertible.
    Group,
    /// Lie algebra elements.
    Lie,
}

/// A cyclic `f`-tuple of `n x n` matrices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FrobTuple {
    kind: TupleKind,
    mats: Vec<Mat>,
}

impl FrobTuple {
    pub fn new(kind: TupleKind, mats: Vec<Mat>) -> Result<FrobTuple> {
        let first = mats
            .first()
            .ok_or_else(|| Error::Shape("empty tuple".into()))?;
        let n = first.rows();
        let field = first.field();
        for m in &mats {
            if !m.is_square() || m.rows() != n {
                return Err(Error::Shape(format!(
                    "tuple components must all be {n}x{n}, found {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::MixedPrime(field.p(), m.field().p()));
            }
            if kind == TupleKind::Group && !m.is_invertible() {
                return Err(Error::Singular);
            }
        }
        Ok(FrobTuple { kind, mats })
    }

    pub fn group(mats: Vec<Mat>) -> Result<FrobTuple> {
        FrobTuple::new(TupleKind::Group, mats)
    }

    pub fn lie(mats: Vec<Mat>) -> Result<FrobTuple> {
        FrobTuple::new(TupleKind::Lie, mats)
    }

    /// The constant tuple `(m, ..., m)`.
    pub fn repeat(kind: TupleKind, m: Mat, f: usize) -> Result<FrobTuple> {
        FrobTuple::new(kind, vec![m; f])
    }

    pub fn zero_lie(field: QuadField, n: usize, f: usize) -> FrobTuple {
        FrobTuple {
            kind: TupleKind::Lie,
            mats: vec![Mat::zeros(field, n, n); f],
        }
    }

    pub fn kind(&self) -> TupleKind {
        self.kind
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn f(&self) -> usize {
        self.mats.len()
    }

    pub fn n(&self) -> usize {
        self.mats[0].rows()
    }

    pub fn field(&self) -> QuadField {
        self.mats[0].field()
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Mat::is_zero)
    }

    /// `Phi_1 Phi_2 ... Phi_f`.
    pub fn norm(&self) -> Mat {
        let mut acc = Mat::identity(self.field(), self.n());
        for m in &self.mats {
            acc = &acc * m;
        }
        acc
    }

    /// Flattened coordinates in the canonical ordering.
    pub fn to_vec(&self) -> Vec<Scalar> {
        tuple_to_vec(&self.mats)
    }
}

pub fn tuple_to_vec(mats: &[Mat]) -> Vec<Scalar> {
    mats.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

pub fn vec_to_tuple(field: QuadField, n: usize, v: &[Scalar]) -> Vec<Mat> {
    assert_eq!(v.len() % (n * n), 0, "length is not a multiple of n^2");
    v.chunks(n * n).map(|c| Mat::from_vec(field, n, c)).collect()
}

/// An operator on `gl_n^f` in the canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigOp {
    n: usize,
    f: usize,
    matrix: Mat,
}

impl BigOp {
    pub fn from_matrix(n: usize, f: usize, matrix: Mat) -> Result<BigOp> {
        let dim = f * n * n;
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::Shape(format!(
                "operator on gl_{n}^{f} must be {dim}x{dim}"
            )));
        }
        Ok(BigOp { n, f, matrix })
    }

    pub fn identity(field: QuadField, n: usize, f: usize) -> BigOp {
        BigOp {
            n,
            f,
            matrix: Mat::identity(field, f * n * n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn dim(&self) -> usize {
        self.f * self.n * self.n
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn into_matrix(self) -> Mat {
        self.matrix
    }

    fn check_compatible(&self, other: &BigOp) -> Result<()> {
        if (self.n, self.f) != (other.n, other.f) {
            return Err(Error::Shape(format!(
                "operators on gl_{}^{} and gl_{}^{} cannot be combined",
                self.n, self.f, other.n, other.f
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &BigOp) -> Result<BigOp> {
        self.check_compatible(other)?;
        Ok(BigOp {
            matrix: &self.matrix + &other.matrix,
            ..*self
        })
    }

    pub fn sub(&self, other: &BigOp) -> Result<BigOp> {
        self.check_compatible(other)?;
        Ok(BigOp {
            matrix: &self.matrix - &other.matrix,
            ..*self
        })
    }

    pub fn compose(&self, other: &BigOp) -> Result<BigOp> {
        self.check_compatible(other)?;
        Ok(BigOp {
            matrix: &self.matrix * &other.matrix,
            ..*self
        })
    }

    pub fn scale(&self, s: &Scalar) -> BigOp {
        BigOp {
            matrix: self.matrix.scale(s),
            ..*self
        }
    }

    pub fn pow(&self, k: u32) -> BigOp {
        BigOp {
            matrix: self.matrix.pow(k),
            ..*self
        }
    }

    /// Applies the operator to a tuple of `f` matrices.
    pub fn apply(&self, xs: &[Mat]) -> Vec<Mat> {
        assert_eq!(xs.len(), self.f);
        let v = self.matrix.mul_vec(&tuple_to_vec(xs));
        vec_to_tuple(self.matrix.field(), self.n, &v)
    }

    pub fn kernel(&self) -> Subspace {
        self.matrix.kernel()
    }

    /// The `n^2 x n^2` block mapping input slot `col` to output slot `row`.
    pub fn block(&self, row: usize, col: usize) -> Mat {
        let d = self.n * self.n;
        self.matrix.block(row * d, col * d, d, d)
    }
}

/// Matrix of `X -> phi X phi^-1` on `gl_n`.
pub fn ad_single(phi: &Mat) -> Result<BigOp> {
    if !phi.is_square() {
        return Err(Error::Shape("Ad of a non-square matrix".into()));
    }
    let inv = phi.inverse()?;
    let n = phi.rows();
    let mut m = Mat::zeros(phi.field(), n * n, n * n);
    // (phi e_rc phi^-1)_ij = phi_ir * inv_cj
    for i in 0..n {
        for r in 0..n {
            let a = phi.get(i, r);
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                for c in 0..n {
                    let b = inv.get(c, j);
                    if !b.is_zero() {
                        m.set(i * n + j, r * n + c, a * b);
                    }
                }
            }
        }
    }
    Ok(BigOp { n, f: 1, matrix: m })
}

/// Matrix of `X -> N X - X N` on `gl_n`.
pub fn ad_lie(nil: &Mat) -> BigOp {
    assert!(nil.is_square());
    let n = nil.rows();
    let field = nil.field();
    let mut m = Mat::zeros(field, n * n, n * n);
    for i in 0..n {
        for j in 0..n {
            for r in 0..n {
                for c in 0..n {
                    let mut v = field.zero();
                    if j == c {
                        v += nil.get(i, r);
                    }
                    if i == r {
                        v -= nil.get(c, j);
                    }
                    if !v.is_zero() {
                        m.set(i * n + j, r * n + c, v);
                    }
                }
            }
        }
    }
    BigOp { n, f: 1, matrix: m }
}

/// `(X_1, ..., X_f) -> (Ad(Phi_1) X_2, ..., Ad(Phi_f) X_1)`.
pub fn ad_frobenius(phi: &FrobTuple) -> Result<BigOp> {
    if phi.kind() != TupleKind::Group {
        return Err(Error::Invalid("Frobenius operator needs a group tuple".into()));
    }
    let (n, f) = (phi.n(), phi.f());
    let d = n * n;
    let mut m = Mat::zeros(phi.field(), f * d, f * d);
    for (i, p) in phi.mats().iter().enumerate() {
        let block = ad_single(p)?;
        m.set_block(i * d, ((i + 1) % f) * d, block.matrix());
    }
    Ok(BigOp { n, f, matrix: m })
}

/// Block-diagonal `ad_(N_i)`.
pub fn ad_n(nil: &FrobTuple) -> Result<BigOp> {
    if nil.kind() != TupleKind::Lie {
        return Err(Error::Invalid("ad_N needs a Lie tuple".into()));
    }
    let (n, f) = (nil.n(), nil.f());
    let d = n * n;
    let mut m = Mat::zeros(nil.field(), f * d, f * d);
    for (i, x) in nil.mats().iter().enumerate() {
        m.set_block(i * d, i * d, ad_lie(x).matrix());
    }
    Ok(BigOp { n, f, matrix: m })
}

/// `1 - p Ad(Phi)`.
pub fn one_minus_pad(phi: &FrobTuple) -> Result<BigOp> {
    let field = phi.field();
    let pad = ad_frobenius(phi)?.scale(&field.p_scalar());
    BigOp::identity(field, phi.n(), phi.f()).sub(&pad)
}

/// `p Ad(Phi) - 1`.
pub fn pad_minus_one(phi: &FrobTuple) -> Result<BigOp> {
    let field = phi.field();
    let pad = ad_frobenius(phi)?.scale(&field.p_scalar());
    pad.sub(&BigOp::identity(field, phi.n(), phi.f()))
}
