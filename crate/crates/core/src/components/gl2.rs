//! `GL_2`: the divisor `p^f tr(Nm)^2 = (p^f + 1)^2 det(Nm)` along which the
//! two components of the moduli space meet.

use crate::adjoint::{ad_single, one_minus_pad, FrobTuple};
use crate::dual::{gradient, Dual, DualMat};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Mat;

/// Characteristic polynomial of `Ad(phi)` from the closed formula
/// `x^4 - r x^3 + 2(r - 1) x^2 - r x + 1`, `r = tr(phi)^2 / det(phi)`.
/// Coefficients in ascending degree.
pub fn gl2_charpoly_formula(phi: &Mat) -> Result<Vec<Scalar>> {
    if phi.rows() != 2 || phi.cols() != 2 {
        return Err(Error::Shape("expected a 2x2 matrix".into()));
    }
    let det = phi.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let field = phi.field();
    let tr = phi.trace();
    let r = (&tr * &tr).checked_div(&det)?;
    let two = field.int(2);
    Ok(vec![
        field.one(),
        -&r,
        &two * &(&r - &field.one()),
        -&r,
        field.one(),
    ])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gl2Report {
    pub trace_nm: Scalar,
    pub det_nm: Scalar,
    pub divisor_value: Scalar,
    pub on_divisor: bool,
    /// Characteristic polynomial of `Ad(Nm)`, ascending.
    pub charpoly_ad: Vec<Scalar>,
    pub kernel_dim: usize,
}

fn check_gl2(phi: &FrobTuple) -> Result<()> {
    if phi.n() != 2 {
        return Err(Error::Shape(format!("expected 2x2 components, got {}x{}", phi.n(), phi.n())));
    }
    Ok(())
}

/// `p^f tr(m)^2 - (p^f + 1)^2 det(m)`.
pub fn divisor_value(nm: &Mat, f: usize) -> Scalar {
    let field = nm.field();
    let pf = field.p_power(f as i32);
    let tr = nm.trace();
    let s = &pf + &field.one();
    &(&pf * &(&tr * &tr)) - &(&(&s * &s) * &nm.det())
}

pub fn gl2_report(phi: &FrobTuple) -> Result<Gl2Report> {
    check_gl2(phi)?;
    let nm = phi.norm();
    let divisor_value = divisor_value(&nm, phi.f());
    let on_divisor = divisor_value.is_zero();
    let kernel_dim = one_minus_pad(phi)?.kernel().dim();
    if kernel_dim > 1 {
        return Err(Error::Internal(format!("kernel of 1 - p Ad Phi has dimension {kernel_dim}")));
    }
    if on_divisor != (kernel_dim == 1) {
        return Err(Error::Internal("divisor test and kernel disagree".into()));
    }
    Ok(Gl2Report {
        trace_nm: nm.trace(),
        det_nm: nm.det(),
        divisor_value,
        on_divisor,
        charpoly_ad: ad_single(&nm)?.matrix().charpoly().coeffs().to_vec(),
        kernel_dim,
    })
}

/// Gradient of the divisor polynomial in the `4f` entries of the tuple
/// (slot-major, row-major).
pub fn divisor_gradient(phi: &FrobTuple) -> Result<Vec<Scalar>> {
    check_gl2(phi)?;
    let field = phi.field();
    let f = phi.f();
    let pf = Dual::constant(field.p_power(f as i32));
    let s = Dual::constant(&field.p_power(f as i32) + &field.one());
    let s2 = &s * &s;
    Ok(gradient(&phi.to_vec(), |v| {
        let nm = v
            .chunks(4)
            .map(|c| DualMat::from_duals(2, c.to_vec()))
            .reduce(|acc, m| &acc * &m)
            .expect("f >= 1");
        let tr = nm.trace();
        &(&pf * &(&tr * &tr)) - &(&s2 * &nm.det())
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Gl2X0Tangent {
    pub divisor_tangent_dim: usize,
    pub kernel_dim: usize,
    pub total: usize,
}

/// Tangent dimension at `(Phi, 0)` of the component containing the points
/// with `N != 0`: tangent space of the divisor plus `ker(1 - p Ad Phi)`.
pub fn gl2_x0_tangent(phi: &FrobTuple) -> Result<Gl2X0Tangent> {
    let report = gl2_report(phi)?;
    if !report.on_divisor {
        return Err(Error::Invalid("Phi is not on the divisor".into()));
    }
    let grad = divisor_gradient(phi)?;
    let rank = usize::from(grad.iter().any(|g| !g.is_zero()));
    let divisor_tangent_dim = 4 * phi.f() - rank;
    Ok(Gl2X0Tangent {
        divisor_tangent_dim,
        kernel_dim: report.kernel_dim,
        total: divisor_tangent_dim + report.kernel_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::QuadField;

    #[test]
    fn charpoly_formula_examples() {
        let f = QuadField::new(2).unwrap();
        let id = gl2_charpoly_formula(&Mat::identity(f, 2)).unwrap();
        let expected: Vec<Scalar> = [1, -4, 6, -4, 1].iter().map(|&k| f.int(k)).collect();
        assert_eq!(id, expected);

        let phi = Mat::diag(f, &[f.int(1), f.int(2)]);
        let formula = gl2_charpoly_formula(&phi).unwrap();
        assert_eq!(formula, ad_single(&phi).unwrap().matrix().charpoly().coeffs());
        assert!(gl2_charpoly_formula(&Mat::unit(f, 2, 0, 1)).is_err());
    }

    #[test]
    fn report_examples() {
        for p in [2, 3, 5] {
            let f = QuadField::new(p).unwrap();
            let t = FrobTuple::group(vec![Mat::diag(f, &[f.one(), f.p_scalar()])]).unwrap();
            let r = gl2_report(&t).unwrap();
            assert!(r.on_divisor);
            assert_eq!(r.kernel_dim, 1);

            let t = FrobTuple::group(vec![Mat::identity(f, 2)]).unwrap();
            let r = gl2_report(&t).unwrap();
            assert!(!r.on_divisor);
            assert_eq!(r.kernel_dim, 0);
        }
        let f = QuadField::new(2).unwrap();
        let t = FrobTuple::group(vec![Mat::diag(f, &[f.int(1), f.int(2)]), Mat::identity(f, 2)]).unwrap();
        let r = gl2_report(&t).unwrap();
        assert_eq!(r.divisor_value, f.int(36 - 50));
        assert!(!r.on_divisor);
    }

    #[test]
    fn x0_tangent_examples() {
        let f = QuadField::new(2).unwrap();
        let t = FrobTuple::group(vec![Mat::diag(f, &[f.int(1), f.int(2)])]).unwrap();
        let r = gl2_x0_tangent(&t).unwrap();
        assert_eq!((r.divisor_tangent_dim, r.kernel_dim, r.total), (3, 1, 4));

        let t = FrobTuple::group(vec![Mat::diag(f, &[f.int(1), f.int(4)]), Mat::identity(f, 2)]).unwrap();
        assert_eq!(gl2_x0_tangent(&t).unwrap().total, 8);

        let off = FrobTuple::group(vec![Mat::identity(f, 2)]).unwrap();
        assert!(matches!(gl2_x0_tangent(&off), Err(Error::Invalid(_))));
    }
}
