//! Independent reference computations used to cross-check the library.
#![allow(dead_code)]

use phinmod::field::{QuadField, Scalar};
use phinmod::Mat;

/// Characteristic polynomial `det(x I - m)` by Faddeev-LeVerrier,
/// ascending coefficients.
pub fn faddeev_leverrier(m: &Mat) -> Vec<Scalar> {
    let n = m.rows();
    let field = m.field();
    let id = Mat::identity(field, n);
    // c[n] = 1, M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
    let mut coeffs = vec![field.zero(); n + 1];
    coeffs[n] = field.one();
    let mut mk = Mat::zeros(field, n, n);
    for k in 1..=n {
        mk = &(m * &mk) + &id.scale(&coeffs[n - k + 1]);
        let am = m * &mk;
        coeffs[n - k] = -&am.trace().checked_div(&field.int(k as i64)).unwrap();
    }
    coeffs
}

/// Leibniz expansion of the determinant.
pub fn leibniz_det(m: &Mat) -> Scalar {
    fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
        if n == 0 {
            return vec![(Vec::new(), true)];
        }
        let mut out = Vec::new();
        for (p, even) in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                // moving n-1 from the end to `pos` costs n-1-pos transpositions
                out.push((q, even == ((n - 1 - pos).is_multiple_of(2))));
            }
        }
        out
    }
    let n = m.rows();
    let mut acc = m.field().zero();
    for (p, even) in perms(n) {
        let mut term = m.field().one();
        for (r, &c) in p.iter().enumerate() {
            term = &term * m.get(r, c);
        }
        acc = if even { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Matrix of `X -> phi X phi^-1`, column by column from matrix units.
pub fn brute_ad(phi: &Mat) -> Mat {
    let n = phi.rows();
    let field = phi.field();
    let inv = phi.inverse().unwrap();
    let cols: Vec<Vec<Scalar>> = (0..n * n)
        .map(|k| (&(phi * &Mat::unit(field, n, k / n, k % n)) * &inv).to_vec())
        .collect();
    Mat::from_columns(field, n * n, &cols)
}

pub fn fields(ps: &[u64]) -> Vec<QuadField> {
    ps.iter().map(|&p| QuadField::new(p).unwrap()).collect()
}

pub fn diag_p_powers(f: QuadField, e: &[i32]) -> Mat {
    let d: Vec<Scalar> = e.iter().map(|&k| f.p_power(k)).collect();
    Mat::diag(f, &d)
}
