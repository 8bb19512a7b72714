//! Seeded random generation of matrices and valid moduli points, for
//! property checks and the self-test.

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adjoint::FrobTuple;
use crate::error::Result;
use crate::field::{QuadField, Scalar};
use crate::linalg::{Mat, Partition};
use crate::moduli::{canonical_point, validate_point, ModuliPoint};

pub type Rng = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small rational, occasionally a proper fraction.
pub fn scalar(rng: &mut Rng, field: QuadField) -> Scalar {
    let num = rng.random_range(-4i64..=4);
    if rng.random_bool(0.25) {
        field.frac(num, rng.random_range(2i64..=3)).expect("nonzero denominator")
    } else {
        field.int(num)
    }
}

pub fn nonzero_scalar(rng: &mut Rng, field: QuadField) -> Scalar {
    loop {
        let s = scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn matrix(rng: &mut Rng, field: QuadField, n: usize) -> Mat {
    let v: Vec<Scalar> = (0..n * n).map(|_| scalar(rng, field)).collect();
    Mat::from_vec(field, n, &v)
}

pub fn invertible(rng: &mut Rng, field: QuadField, n: usize) -> Mat {
    loop {
        let m = matrix(rng, field, n);
        if m.is_invertible() {
            return m;
        }
    }
}

pub fn group_tuple(rng: &mut Rng, field: QuadField, n: usize, f: usize) -> FrobTuple {
    FrobTuple::group((0..f).map(|_| invertible(rng, field, n)).collect())
        .expect("components are invertible")
}

/// A random conjugate of the Jordan matrix of `partition`.
pub fn nilpotent(rng: &mut Rng, field: QuadField, partition: &Partition) -> Mat {
    let g = invertible(rng, field, partition.total());
    let j = partition.jordan_matrix(field);
    &(&g * &j) * &g.inverse().expect("invertible")
}

/// Moves a point along `a . (Phi, N) = (a_i Phi_i a_{i+1}^-1, a_i N_i a_i^-1)`.
pub fn transport(pt: &ModuliPoint, a: &[Mat]) -> Result<ModuliPoint> {
    let f = pt.f();
    let inv = a.iter().map(Mat::inverse).collect::<Result<Vec<_>>>()?;
    let phi = (0..f)
        .map(|i| &(&a[i] * &pt.phi().mats()[i]) * &inv[(i + 1) % f])
        .collect();
    let nil = (0..f)
        .map(|i| &(&a[i] * &pt.nil().mats()[i]) * &inv[i])
        .collect();
    validate_point(FrobTuple::group(phi)?, FrobTuple::lie(nil)?)
}

/// A valid point over the orbit of `nil`: the canonical point, with each
/// `Phi_i` multiplied on the right by an invertible polynomial in `N`,
/// `N` rescaled, then transported by a random element of `GL_n^f`.
pub fn point_over(rng: &mut Rng, nil: &Mat, f: usize) -> Result<ModuliPoint> {
    let field = nil.field();
    let n = nil.rows();
    let base = canonical_point(nil, f)?;
    let t = nonzero_scalar(rng, field);
    let phi = base
        .phi()
        .mats()
        .iter()
        .map(|ph| {
            // c = a + b N + c N^2 + ... commutes with N and is invertible
            let mut c = Mat::identity(field, n).scale(&nonzero_scalar(rng, field));
            let mut power = nil.clone();
            for _ in 1..n {
                c = &c + &power.scale(&scalar(rng, field));
                power = &power * nil;
            }
            ph * &c
        })
        .collect();
    let scaled = validate_point(
        FrobTuple::group(phi)?,
        FrobTuple::lie(vec![nil.scale(&t); f])?,
    )?;
    let a: Vec<Mat> = (0..f).map(|_| invertible(rng, field, n)).collect();
    transport(&scaled, &a)
}

/// `(Phi, 0)` with random invertible `Phi`.
pub fn point_with_zero_nil(rng: &mut Rng, field: QuadField, n: usize, f: usize) -> ModuliPoint {
    validate_point(
        group_tuple(rng, field, n, f),
        FrobTuple::zero_lie(field, n, f),
    )
    .expect("N = 0 satisfies every relation")
}

/// A tuple of `GL_2` matrices whose norm `Phi_1 ... Phi_f` has eigenvalue
/// ratio `p^f`, i.e. a point of the divisor.
pub fn gl2_divisor_tuple(rng: &mut Rng, field: QuadField, f: usize) -> FrobTuple {
    let pf = field.p_power(f as i32);
    let mut mats: Vec<Mat> = (0..f - 1).map(|_| invertible(rng, field, 2)).collect();
    let head = mats.iter().fold(Mat::identity(field, 2), |acc, m| &acc * m);
    let h = invertible(rng, field, 2);
    let s = nonzero_scalar(rng, field);
    let b = scalar(rng, field);
    let upper = Mat::from_rows(field, vec![vec![field.one(), b], vec![field.zero(), pf]])
        .expect("2x2");
    let nm = (&(&h * &upper) * &h.inverse().expect("invertible")).scale(&s);
    mats.push(&head.inverse().expect("invertible") * &nm);
    FrobTuple::group(mats).expect("components are invertible")
}
