//! Regular nilpotents, `f = 1`: the parabolic of `N` recovered from `Phi`.
//!
//! At a valid point with `N` regular, `Phi` lies in the Borel attached to
//! `N` and `Ad(Phi)` acts on `g_{>=2i} / g_{>=2i+2}` by `p^-i`. Since `Phi`
//! is then semisimple with eigenvalue ratios `p`, each graded piece is the
//! eigenspace `ker(1 - p^i Ad Phi)`.

use crate::adjoint::ad_single;
use crate::error::{Error, Result};
use crate::linalg::{jordan_type, Mat, Subspace};
use crate::moduli::ModuliPoint;
use crate::nilpotent::{parabolic_of, Cochar, LieFiltration, ParabolicData};

/// Rebuilds the filtration `g_{>=k}` from `Phi` alone, top weight first,
/// and checks it against [`parabolic_of`]`(N)`.
pub fn reg_filtration_reconstruct(pt: &ModuliPoint) -> Result<ParabolicData> {
    if pt.f() != 1 {
        return Err(Error::Unsupported("regular reconstruction needs f = 1".into()));
    }
    let n = pt.n();
    let field = pt.field();
    let phi = &pt.phi().mats()[0];
    let nil = &pt.nil().mats()[0];
    if jordan_type(nil)?.parts() != [n] {
        return Err(Error::Invalid("N is not regular".into()));
    }
    let ad = ad_single(phi)?;
    let id = Mat::identity(field, n * n);
    let top = n as i32 - 1;

    let mut current = Subspace::zero(field, n * n);
    let mut steps = vec![(2 * top + 1, current.clone())];
    for i in (-top..=top).rev() {
        let op = &id - &ad.matrix().scale(&field.p_power(i));
        current = current.sum(&op.kernel());
        steps.push((2 * i, current.clone()));
        steps.push((2 * i - 1, current.clone()));
    }
    if current.dim() != n * n {
        return Err(Error::Internal("graded pieces do not fill gl_n".into()));
    }
    let filtration = LieFiltration::from_steps(field, n * n, steps);

    // Phi has eigenvalues mu, mu p, ..., mu p^(n-1); the mu p^k line has
    // weight n - 1 - 2k.
    let geometric = (0..n as i32).fold(field.zero(), |acc, k| &acc + &field.p_power(k));
    let mu = phi.trace().checked_div(&geometric)?;
    let mut columns = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for k in 0..n as i32 {
        let shift = Mat::identity(field, n).scale(&(&mu * &field.p_power(k)));
        let eig = (phi - &shift).kernel();
        if eig.dim() != 1 {
            return Err(Error::Internal("Phi is not regular semisimple".into()));
        }
        columns.push(eig.basis()[0].clone());
        weights.push(top - 2 * k);
    }
    let cochar = Cochar::new(Mat::from_columns(field, n, &columns), weights)?;
    let data = ParabolicData::from_cochar(&cochar);
    if data.filtration != filtration {
        return Err(Error::Internal("eigenvalue grading disagrees with the kernels".into()));
    }
    if data != parabolic_of(nil)? {
        return Err(Error::Internal("reconstruction differs from the parabolic of N".into()));
    }
    Ok(data)
}
