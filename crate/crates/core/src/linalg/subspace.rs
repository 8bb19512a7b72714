use std::fmt;

use super::Mat;
use crate::field::{QuadField, Scalar};

/// A linear subspace of `field^ambient`, stored by its reduced echelon
/// basis. Two subspaces are equal exactly when their bases are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    field: QuadField,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(field: QuadField, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            field,
            basis: Vec::new(),
        }
    }

    pub fn full(field: QuadField, ambient: usize) -> Subspace {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Subspace {
            ambient,
            field,
            basis,
        }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(field: QuadField, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Subspace {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let rows = vectors.len();
        let mut m = Mat::zeros(field, rows, ambient);
        for (r, v) in vectors.into_iter().enumerate() {
            assert_eq!(v.len(), ambient, "vector outside the ambient space");
            for (c, x) in v.into_iter().enumerate() {
                m.set(r, c, x);
            }
        }
        let rref = m.rref();
        let basis = (0..rref.rank).map(|r| rref.matrix.row(r).to_vec()).collect();
        Subspace {
            ambient,
            field,
            basis,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient);
        if v.iter().all(Scalar::is_zero) {
            return true;
        }
        let mut vs = self.basis.clone();
        vs.push(v.to_vec());
        Subspace::span(self.field, self.ambient, vs).dim() == self.dim()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, vs)
    }

    /// Basis of the annihilator, as coefficient vectors of linear
    /// functionals vanishing on the subspace.
    pub fn annihilator(&self) -> Vec<Vec<Scalar>> {
        if self.basis.is_empty() {
            return Subspace::full(self.field, self.ambient).basis;
        }
        let m = Mat::from_rows(self.field, self.basis.clone()).expect("nonempty basis");
        m.kernel().basis
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut eqs = self.annihilator();
        eqs.extend(other.annihilator());
        if eqs.is_empty() {
            return Subspace::full(self.field, self.ambient);
        }
        Mat::from_rows(self.field, eqs).expect("nonempty").kernel()
    }

    /// Image under a linear map given as a matrix acting on columns.
    pub fn map(&self, op: &Mat) -> Subspace {
        assert_eq!(op.cols(), self.ambient);
        let imgs = self.basis.iter().map(|v| op.mul_vec(v)).collect();
        Subspace::span(self.field, op.rows(), imgs)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {{", self.dim(), self.ambient)?;
        for v in &self.basis {
            write!(f, " {v:?}")?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(f: QuadField, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![f.zero(); n];
        v[i] = f.one();
        v
    }

    #[test]
    fn canonical_representation() {
        let f = QuadField::new(3).unwrap();
        let a = Subspace::span(f, 3, vec![vec![f.int(1), f.int(1), f.int(0)], e(f, 3, 1)]);
        let b = Subspace::span(f, 3, vec![e(f, 3, 0), e(f, 3, 1), vec![f.int(2), f.int(5), f.int(0)]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_and_sum() {
        let f = QuadField::new(2).unwrap();
        let xy = Subspace::span(f, 3, vec![e(f, 3, 0), e(f, 3, 1)]);
        let yz = Subspace::span(f, 3, vec![e(f, 3, 1), e(f, 3, 2)]);
        assert_eq!(xy.intersect(&yz), Subspace::span(f, 3, vec![e(f, 3, 1)]));
        assert_eq!(xy.sum(&yz), Subspace::full(f, 3));
        assert!(xy.intersect(&Subspace::zero(f, 3)).is_zero());
        assert_eq!(Subspace::full(f, 3).intersect(&xy), xy);
    }
}
