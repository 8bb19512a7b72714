//! Points of the moduli of pairs `(Phi, N)` with
//! `N_i = p Ad(Phi_i) N_{i+1}` (indices mod `f`), their deformation
//! complexes and tangent spaces.
//!
//! The complex is
//! `C^0 = gl^f --d0--> C^1 = gl^f + gl^f --d1--> C^2 = gl^f` with
//! `d0(u) = ((1 - Ad Phi) u, ad_N u)` and
//! `d1(x, y) = ad_N x + (p Ad Phi - 1) y`.

use crate::adjoint::{ad_frobenius, ad_n, one_minus_pad, pad_minus_one, FrobTuple, TupleKind};
use crate::error::{Error, Result};
use crate::field::QuadField;
use crate::linalg::{is_nilpotent, Mat, Subspace};
use crate::nilpotent::{associated_cocharacter, threshold, Cochar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliPoint {
    phi: FrobTuple,
    nil: FrobTuple,
}

impl ModuliPoint {
    pub fn phi(&self) -> &FrobTuple {
        &self.phi
    }

    pub fn nil(&self) -> &FrobTuple {
        &self.nil
    }

    pub fn n(&self) -> usize {
        self.phi.n()
    }

    pub fn f(&self) -> usize {
        self.phi.f()
    }

    pub fn p(&self) -> u32 {
        self.phi.field().p()
    }

    pub fn field(&self) -> QuadField {
        self.phi.field()
    }

    /// `f * n^2`.
    pub fn dim_lie(&self) -> usize {
        self.f() * self.n() * self.n()
    }
}

/// Checks the defining relations and returns the point. A violated
/// relation is reported with its (0-based) index.
pub fn validate_point(phi: FrobTuple, nil: FrobTuple) -> Result<ModuliPoint> {
    if phi.kind() != TupleKind::Group || nil.kind() != TupleKind::Lie {
        return Err(Error::Invalid("expected a group tuple and a Lie tuple".into()));
    }
    if phi.field() != nil.field() {
        return Err(Error::MixedPrime(phi.field().p(), nil.field().p()));
    }
    if phi.n() != nil.n() || phi.f() != nil.f() {
        return Err(Error::Shape(format!(
            "Phi is a {}-tuple of {}x{} matrices but N is a {}-tuple of {}x{} matrices",
            phi.f(),
            phi.n(),
            phi.n(),
            nil.f(),
            nil.n(),
            nil.n()
        )));
    }
    let f = phi.f();
    let p = phi.field().p_scalar();
    for i in 0..f {
        let ph = &phi.mats()[i];
        let next = &nil.mats()[(i + 1) % f];
        let rhs = (&(ph * next) * &ph.inverse()?).scale(&p);
        if rhs != nil.mats()[i] {
            return Err(Error::RelationViolated { index: i });
        }
    }
    if !nil.mats().iter().all(is_nilpotent) {
        return Err(Error::NotNilpotent);
    }
    Ok(ModuliPoint { phi, nil })
}

/// `(lambda(p^-1/2), N)` repeated over `f` slots, with `lambda` the
/// associated cocharacter of `nil`.
pub fn canonical_point(nil: &Mat, f: usize) -> Result<ModuliPoint> {
    if f == 0 {
        return Err(Error::Invalid("f must be positive".into()));
    }
    let c = associated_cocharacter(nil)?;
    let phi0 = c.eval_sqrt_p_power(-1);
    validate_point(
        FrobTuple::repeat(TupleKind::Group, phi0, f)?,
        FrobTuple::repeat(TupleKind::Lie, nil.clone(), f)?,
    )
}

/// `d0`, a `2fn^2 x fn^2` matrix.
pub fn d0_matrix(pt: &ModuliPoint) -> Result<Mat> {
    let one_minus_ad = {
        let ad = ad_frobenius(&pt.phi)?;
        &Mat::identity(pt.field(), pt.dim_lie()) - ad.matrix()
    };
    Ok(one_minus_ad.vstack(ad_n(&pt.nil)?.matrix()))
}

/// `d1`, a `fn^2 x 2fn^2` matrix.
pub fn d1_matrix(pt: &ModuliPoint) -> Result<Mat> {
    Ok(ad_n(&pt.nil)?
        .matrix()
        .hstack(pad_minus_one(&pt.phi)?.matrix()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ComplexReport {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
    pub rank_d0: usize,
    pub rank_d1: usize,
    pub filtered: bool,
    pub tangent_dim: usize,
}

pub fn complex_dims(pt: &ModuliPoint) -> Result<ComplexReport> {
    let d0 = d0_matrix(pt)?;
    let d1 = d1_matrix(pt)?;
    if !(&d1 * &d0).is_zero() {
        return Err(Error::Internal("d1 d0 != 0".into()));
    }
    let dim = pt.dim_lie();
    let (r0, r1) = (d0.rank(), d1.rank());
    let h0 = dim - r0;
    let h2 = dim - r1;
    let h1 = (2 * dim - r1) - r0;
    Ok(ComplexReport {
        h0,
        h1,
        h2,
        rank_d0: r0,
        rank_d1: r1,
        filtered: false,
        tangent_dim: dim + h2,
    })
}

/// A filtration of `gl_n` by a cocharacter, applied in every slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    pub cochar: Cochar,
    pub fil0: Subspace,
}

impl Filtration {
    pub fn new(cochar: Cochar, f: usize) -> Filtration {
        let n = cochar.n();
        let d = n * n;
        let single = threshold(&cochar, 0);
        let mut vecs = Vec::with_capacity(f * single.dim());
        for slot in 0..f {
            for b in single.basis() {
                let mut v = vec![cochar.field().zero(); f * d];
                v[slot * d..(slot + 1) * d].clone_from_slice(b);
                vecs.push(v);
            }
        }
        let fil0 = Subspace::span(cochar.field(), f * d, vecs);
        Filtration { cochar, fil0 }
    }

    /// Filtration of a weight vector in the standard frame.
    pub fn from_weights(field: QuadField, weights: Vec<i32>, f: usize) -> Filtration {
        Filtration::new(Cochar::diagonal(field, weights), f)
    }

    /// `fn^2 - dim Fil^0`.
    pub fn quotient_dim(&self) -> usize {
        self.fil0.ambient_dim() - self.fil0.dim()
    }
}

/// The complex with `gl^f / Fil^0` added in degree 1.
pub fn filtered_complex_dims(pt: &ModuliPoint, fil: &Filtration) -> Result<ComplexReport> {
    let dim = pt.dim_lie();
    if fil.fil0.ambient_dim() != dim || fil.cochar.n() != pt.n() {
        return Err(Error::Shape("filtration does not match the point".into()));
    }
    if fil.cochar.field() != pt.field() {
        return Err(Error::MixedPrime(pt.p(), fil.cochar.field().p()));
    }
    let d0 = d0_matrix(pt)?;
    let d1 = d1_matrix(pt)?;
    let q = fil.quotient_dim();
    let d0f = if q == 0 {
        d0.clone()
    } else {
        // coordinates on gl^f / Fil^0 are the annihilating functionals
        let proj = Mat::from_rows(pt.field(), fil.fil0.annihilator())?;
        d0.vstack(&proj)
    };
    let d1f = d1.hstack(&Mat::zeros(pt.field(), dim, q));
    if !(&d1f * &d0f).is_zero() {
        return Err(Error::Internal("filtered d1 d0 != 0".into()));
    }
    let (r0, r1) = (d0f.rank(), d1f.rank());
    let h2 = dim - r1;
    Ok(ComplexReport {
        h0: dim - r0,
        h1: (2 * dim + q - r1) - r0,
        h2,
        rank_d0: r0,
        rank_d1: r1,
        filtered: true,
        tangent_dim: dim + h2,
    })
}

/// The linearized relations `M_i - p Ad(Phi_i) M_{i+1} - [A_i, N_i]` as a
/// `fn^2 x 2fn^2` matrix on coordinates `(A, M)`, for the perturbation
/// `Phi_i -> (1 + eps A_i) Phi_i`, `N_i -> N_i + eps M_i`.
///
/// Columns are obtained by evaluating the relations on unit perturbations.
pub fn tangent_equations(pt: &ModuliPoint) -> Result<Mat> {
    let (n, f) = (pt.n(), pt.f());
    let field = pt.field();
    let d = n * n;
    let p = field.p_scalar();
    let phis = pt.phi.mats();
    let inverses = phis.iter().map(Mat::inverse).collect::<Result<Vec<_>>>()?;
    let mut t = Mat::zeros(field, f * d, 2 * f * d);

    let mut put = |col: usize, slot: usize, m: &Mat| {
        for (k, x) in m.entries().iter().enumerate() {
            if !x.is_zero() {
                let v = t.get(slot * d + k, col) + x;
                t.set(slot * d + k, col, v);
            }
        }
    };

    for s in 0..f {
        for r in 0..n {
            for c in 0..n {
                let e = Mat::unit(field, n, r, c);
                let k = s * d + r * n + c;
                // A_s = e
                put(k, s, &-&e.bracket(&pt.nil.mats()[s]));
                // M_s = e enters relation s directly and relation s-1 through Ad
                put(f * d + k, s, &e);
                let prev = (s + f - 1) % f;
                let twisted = &(&phis[prev] * &e) * &inverses[prev];
                put(f * d + k, prev, &-&twisted.scale(&p));
            }
        }
    }
    Ok(t)
}

/// Tangent space at `pt`, inside `gl^f + gl^f` with coordinates `(A, M)`.
pub fn tangent_space(pt: &ModuliPoint) -> Result<Subspace> {
    Ok(tangent_equations(pt)?.kernel())
}

/// `ker(1 - p Ad Phi)` at the point.
pub fn frobenius_kernel(pt: &ModuliPoint) -> Result<Subspace> {
    Ok(one_minus_pad(&pt.phi)?.kernel())
}
