use std::ops::{Add, Mul, Sub};

use super::Mat;
use crate::error::{Error, Result};
use crate::field::{QuadField, Scalar};

/// Dense univariate polynomial over [`Scalar`], coefficients in ascending
/// degree order. The zero polynomial has no coefficients; otherwise the
/// leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: QuadField,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: QuadField, coeffs: Vec<Scalar>) -> Poly {
        let mut p = Poly { field, coeffs };
        p.normalize();
        p
    }

    pub fn from_ints(field: QuadField, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&k| field.int(k)).collect())
    }

    pub fn zero(field: QuadField) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: QuadField) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::new(c.field(), vec![c])
    }

    pub fn x(field: QuadField) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &self.field.int(k as i64))
            .collect();
        Poly::new(self.field, coeffs)
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.leading().expect("nonzero").inv()?;
        let mut rem = self.clone();
        let mut quot = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().expect("nonzero") * &lead_inv;
            let shift = rd - dd;
            for (k, dc) in d.coeffs.iter().enumerate() {
                rem.coeffs[shift + k] -= &(&c * dc);
            }
            quot[shift] = c;
            rem.normalize();
        }
        Ok((Poly::new(self.field, quot), rem))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("b is nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        let (q, _) = self.div_rem(&g).expect("gcd is nonzero");
        q.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        let n = m.rows();
        let mut acc = Mat::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * m;
            for i in 0..n {
                let v = acc.get(i, i) + c;
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// All roots in Q(sqrt p) of a polynomial of degree at most 2, without
    /// multiplicity. Returns `Unsupported` when a quadratic factor has no
    /// roots in the field.
    pub fn roots_low_degree(&self) -> Result<Vec<Scalar>> {
        match self.degree() {
            None => Err(Error::Invalid("roots of the zero polynomial".into())),
            Some(0) => Ok(Vec::new()),
            Some(1) => {
                let r = (-&self.coeffs[0]).checked_div(&self.coeffs[1])?;
                Ok(vec![r])
            }
            Some(2) => {
                let (c, b, a) = (&self.coeffs[0], &self.coeffs[1], &self.coeffs[2]);
                let disc = &(b * b) - &(&self.field.int(4) * &(a * c));
                let s = disc.sqrt().ok_or_else(|| {
                    Error::Unsupported(format!(
                        "quadratic with discriminant {disc} has no roots in Q(sqrt {})",
                        self.field.p()
                    ))
                })?;
                let two_a = &self.field.int(2) * a;
                let r1 = (&(-b) + &s).checked_div(&two_a)?;
                let r2 = (&(-b) - &s).checked_div(&two_a)?;
                Ok(if r1 == r2 { vec![r1] } else { vec![r1, r2] })
            }
            Some(d) => Err(Error::Unsupported(format!("root finding in degree {d}"))),
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            self.field,
            (0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect(),
        )
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            self.field,
            (0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect(),
        )
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Poly::new(self.field, out)
    }
}
