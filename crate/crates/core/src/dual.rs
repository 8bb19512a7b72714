//! Dual numbers `a + b eps` with `eps^2 = 0` over [`Scalar`], and matrices
//! over them. Used to check linearizations by direct substitution.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{QuadField, Scalar};
use crate::linalg::Mat;
use crate::moduli::ModuliPoint;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dual {
    pub re: Scalar,
    pub eps: Scalar,
}

impl Dual {
    pub fn new(re: Scalar, eps: Scalar) -> Dual {
        Dual { re, eps }
    }

    pub fn constant(re: Scalar) -> Dual {
        let eps = re.zero_like();
        Dual { re, eps }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }

    pub fn inv(&self) -> Result<Dual> {
        let r = self.re.inv()?;
        let eps = -&(&(&r * &r) * &self.eps);
        Ok(Dual { re: r, eps })
    }
}

impl<'a> Add<&'a Dual> for &'a Dual {
    type Output = Dual;
    fn add(self, o: &Dual) -> Dual {
        Dual::new(&self.re + &o.re, &self.eps + &o.eps)
    }
}

impl<'a> Sub<&'a Dual> for &'a Dual {
    type Output = Dual;
    fn sub(self, o: &Dual) -> Dual {
        Dual::new(&self.re - &o.re, &self.eps - &o.eps)
    }
}

impl<'a> Mul<&'a Dual> for &'a Dual {
    type Output = Dual;
    fn mul(self, o: &Dual) -> Dual {
        Dual::new(
            &self.re * &o.re,
            &(&self.re * &o.eps) + &(&self.eps * &o.re),
        )
    }
}

impl Neg for &Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual::new(-&self.re, -&self.eps)
    }
}

/// Square matrix over dual numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualMat {
    n: usize,
    data: Vec<Dual>,
}

impl DualMat {
    /// `re + eps * eps_part`.
    pub fn from_parts(re: &Mat, eps_part: &Mat) -> DualMat {
        assert!(re.is_square() && re.rows() == eps_part.rows() && eps_part.is_square());
        let data = re
            .entries()
            .iter()
            .zip(eps_part.entries())
            .map(|(a, b)| Dual::new(a.clone(), b.clone()))
            .collect();
        DualMat { n: re.rows(), data }
    }

    pub fn from_duals(n: usize, data: Vec<Dual>) -> DualMat {
        assert_eq!(data.len(), n * n);
        DualMat { n, data }
    }

    pub fn constant(m: &Mat) -> DualMat {
        DualMat::from_parts(m, &Mat::zeros(m.field(), m.rows(), m.cols()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Dual {
        &self.data[r * self.n + c]
    }

    fn field(&self) -> QuadField {
        self.data[0].re.field()
    }

    pub fn re(&self) -> Mat {
        Mat::from_vec(self.field(), self.n, &self.data.iter().map(|d| d.re.clone()).collect::<Vec<_>>())
    }

    pub fn eps(&self) -> Mat {
        Mat::from_vec(self.field(), self.n, &self.data.iter().map(|d| d.eps.clone()).collect::<Vec<_>>())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Dual::is_zero)
    }

    pub fn scale(&self, s: &Dual) -> DualMat {
        DualMat {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn trace(&self) -> Dual {
        let mut acc = Dual::constant(self.field().zero());
        for i in 0..self.n {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// Determinant by cofactor expansion; fine for the small sizes used.
    pub fn det(&self) -> Dual {
        fn rec(m: &DualMat, rows: &[usize], cols: &[usize]) -> Dual {
            if rows.len() == 1 {
                return m.get(rows[0], cols[0]).clone();
            }
            let mut acc = Dual::constant(m.field().zero());
            for (k, &c) in cols.iter().enumerate() {
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = m.get(rows[0], c) * &rec(m, &rows[1..], &rest);
                acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
        let idx: Vec<usize> = (0..self.n).collect();
        rec(self, &idx, &idx)
    }

    /// Gauss-Jordan inverse; pivots are chosen with invertible real part.
    pub fn inverse(&self) -> Result<DualMat> {
        let n = self.n;
        let field = self.field();
        let zero = Dual::constant(field.zero());
        let one = Dual::constant(field.one());
        let mut a = self.data.clone();
        let mut inv: Vec<Dual> = (0..n * n)
            .map(|k| if k / n == k % n { one.clone() } else { zero.clone() })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !a[r * n + col].re.is_zero())
                .ok_or(Error::Singular)?;
            for c in 0..n {
                a.swap(col * n + c, piv * n + c);
                inv.swap(col * n + c, piv * n + c);
            }
            let s = a[col * n + col].inv()?;
            for c in 0..n {
                a[col * n + c] = &a[col * n + c] * &s;
                inv[col * n + c] = &inv[col * n + c] * &s;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let k = a[r * n + col].clone();
                for c in 0..n {
                    a[r * n + c] = &a[r * n + c] - &(&k * &a[col * n + c]);
                    inv[r * n + c] = &inv[r * n + c] - &(&k * &inv[col * n + c]);
                }
            }
        }
        Ok(DualMat { n, data: inv })
    }
}

impl<'a> Mul<&'a DualMat> for &'a DualMat {
    type Output = DualMat;
    fn mul(self, o: &DualMat) -> DualMat {
        let n = self.n;
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Dual::constant(self.field().zero());
                for k in 0..n {
                    acc = &acc + &(self.get(i, k) * o.get(k, j));
                }
                data.push(acc);
            }
        }
        DualMat { n, data }
    }
}

impl<'a> Sub<&'a DualMat> for &'a DualMat {
    type Output = DualMat;
    fn sub(self, o: &DualMat) -> DualMat {
        DualMat {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

/// `N~_i - p Phi~_i N~_{i+1} Phi~_i^-1` for `Phi~_i = (1 + eps A_i) Phi_i`
/// and `N~_i = N_i + eps M_i`.
pub fn relation_residuals(pt: &ModuliPoint, a: &[Mat], m: &[Mat]) -> Result<Vec<DualMat>> {
    let (n, f) = (pt.n(), pt.f());
    if a.len() != f || m.len() != f {
        return Err(Error::Shape("perturbation has the wrong number of slots".into()));
    }
    let field = pt.field();
    let id = Mat::identity(field, n);
    let p = Dual::constant(field.p_scalar());
    let phis: Vec<DualMat> = (0..f)
        .map(|i| &DualMat::from_parts(&id, &a[i]) * &DualMat::constant(&pt.phi().mats()[i]))
        .collect();
    let nils: Vec<DualMat> = (0..f)
        .map(|i| DualMat::from_parts(&pt.nil().mats()[i], &m[i]))
        .collect();
    (0..f)
        .map(|i| {
            let inv = phis[i].inverse()?;
            let twisted = &(&phis[i] * &nils[(i + 1) % f]) * &inv;
            Ok(&nils[i] - &twisted.scale(&p))
        })
        .collect()
}

/// Whether the tangent vector `(A, M)` (flattened, `A` first) satisfies the
/// relations to first order.
pub fn is_first_order_solution(pt: &ModuliPoint, v: &[Scalar]) -> Result<bool> {
    let d = pt.dim_lie();
    if v.len() != 2 * d {
        return Err(Error::Shape("tangent vector has the wrong length".into()));
    }
    let (n, field) = (pt.n(), pt.field());
    let a = crate::adjoint::vec_to_tuple(field, n, &v[..d]);
    let m = crate::adjoint::vec_to_tuple(field, n, &v[d..]);
    Ok(relation_residuals(pt, &a, &m)?.iter().all(DualMat::is_zero))
}

/// Gradient of a function of several variables, one dual evaluation per
/// coordinate.
pub fn gradient(point: &[Scalar], func: impl Fn(&[Dual]) -> Dual) -> Vec<Scalar> {
    (0..point.len())
        .map(|k| {
            let args: Vec<Dual> = point
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    let eps = if j == k { x.one_like() } else { x.zero_like() };
                    Dual::new(x.clone(), eps)
                })
                .collect();
            func(&args).eps
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_inverse() {
        let f = QuadField::new(3).unwrap();
        let m = DualMat::from_parts(
            &Mat::from_ints(f, &[&[2, 1], &[1, 1]]),
            &Mat::from_ints(f, &[&[0, 5], &[-1, 2]]),
        );
        let inv = m.inverse().unwrap();
        let id = DualMat::constant(&Mat::identity(f, 2));
        assert_eq!(&m * &inv, id);
        assert_eq!(&inv * &m, id);
    }

    #[test]
    fn derivative_of_det() {
        let f = QuadField::new(2).unwrap();
        // d det at X in direction E is tr(adj(X) E)
        let x = Mat::from_ints(f, &[&[1, 2], &[3, 4]]);
        let g = gradient(x.entries(), |v| {
            DualMat::from_duals(2, v.to_vec()).det()
        });
        assert_eq!(g, vec![f.int(4), f.int(-3), f.int(-2), f.int(1)]);
    }
}
