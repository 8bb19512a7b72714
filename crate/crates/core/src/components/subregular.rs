//! `GL_3`, subregular orbit, `f = 1`: fibers of the resolution over points
//! `(Phi, 0)`, tangent images and singularity certificates.
//!
//! The resolution parametrizes `(Phi, N, P)` with `P` a parabolic of type
//! `(2, 1)`, `Phi in P`, `N in p_2` and `1 - p Ad Phi` vanishing on `p_2`.
//! Over `(Phi, 0)` its points are the lines in `K = ker(1 - p Ad Phi)`
//! spanned by rank-one nilpotents.

use crate::adjoint::{ad_lie, ad_single, one_minus_pad, FrobTuple};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Mat, Poly, Subspace};
use crate::nilpotent::{parabolic_of, ParabolicData};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cardinality {
    Finite(usize),
    /// A whole projective line of preimages.
    InfiniteP1,
}

impl Cardinality {
    pub fn at_least_two(self) -> bool {
        match self {
            Cardinality::Finite(k) => k >= 2,
            Cardinality::InfiniteP1 => true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FiberRay {
    pub ray: Mat,
    pub parabolic: ParabolicData,
    pub phi_in_parabolic: bool,
}

#[derive(Debug, Clone)]
pub struct SubFiber {
    pub base_phi: Mat,
    pub kernel: Subspace,
    /// All preimages when finite; for a `P1` fiber, the rays through the
    /// kernel basis as representatives.
    pub rays: Vec<FiberRay>,
    pub cardinality: Cardinality,
}

fn check_gl3(phi: &Mat) -> Result<()> {
    if phi.rows() != 3 || phi.cols() != 3 {
        return Err(Error::Shape("expected a 3x3 matrix".into()));
    }
    if !phi.is_invertible() {
        return Err(Error::Singular);
    }
    Ok(())
}

fn frobenius_kernel(phi: &Mat) -> Result<Subspace> {
    Ok(one_minus_pad(&FrobTuple::group(vec![phi.clone()])?)?.kernel())
}

fn as_matrix(phi: &Mat, v: &[Scalar]) -> Mat {
    Mat::from_vec(phi.field(), 3, v)
}

/// The 2x2 minors of `a X + b Y` as binary quadratic forms `(c_aa, c_ab, c_bb)`.
fn pencil_minors(x: &Mat, y: &Mat) -> Vec<[Scalar; 3]> {
    let minor = |m: &Mat, r: (usize, usize), c: (usize, usize)| {
        &(m.get(r.0, c.0) * m.get(r.1, c.1)) - &(m.get(r.0, c.1) * m.get(r.1, c.0))
    };
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let sum = x + y;
    let mut out = Vec::with_capacity(9);
    for r in pairs {
        for c in pairs {
            let aa = minor(x, r, c);
            let bb = minor(y, r, c);
            let ab = &(&minor(&sum, r, c) - &aa) - &bb;
            out.push([aa, ab, bb]);
        }
    }
    out
}

fn ray(phi: &Mat, m: Mat) -> Result<FiberRay> {
    let parabolic = parabolic_of(&m)?;
    let phi_in_parabolic = parabolic.contains_group_element(phi)?;
    Ok(FiberRay {
        ray: m,
        parabolic,
        phi_in_parabolic,
    })
}

pub fn sub_fiber(phi: &Mat) -> Result<SubFiber> {
    check_gl3(phi)?;
    let kernel = frobenius_kernel(phi)?;
    let basis: Vec<Mat> = kernel.basis().iter().map(|v| as_matrix(phi, v)).collect();
    let (rays, cardinality) = match basis.len() {
        0 => (Vec::new(), Cardinality::Finite(0)),
        1 => {
            if basis[0].rank() == 1 {
                (vec![ray(phi, basis[0].clone())?], Cardinality::Finite(1))
            } else {
                (Vec::new(), Cardinality::Finite(0))
            }
        }
        2 => {
            let (x, y) = (&basis[0], &basis[1]);
            let minors = pencil_minors(x, y);
            if minors.iter().flatten().all(Scalar::is_zero) {
                let rays = basis
                    .iter()
                    .map(|m| ray(phi, m.clone()))
                    .collect::<Result<Vec<_>>>()?;
                (rays, Cardinality::InfiniteP1)
            } else {
                let mut found = Vec::new();
                // the point (1 : 0)
                if minors.iter().all(|q| q[0].is_zero()) {
                    found.push(x.clone());
                }
                // points (a : 1): common roots of c_aa a^2 + c_ab a + c_bb
                let field = phi.field();
                let common = minors
                    .iter()
                    .map(|q| Poly::new(field, vec![q[2].clone(), q[1].clone(), q[0].clone()]))
                    .filter(|q| !q.is_zero())
                    .fold(Poly::zero(field), |acc, q| acc.gcd(&q));
                if common.degree().unwrap_or(0) > 0 {
                    for a in common.roots_low_degree()? {
                        found.push(&x.scale(&a) + y);
                    }
                }
                let rays = found
                    .into_iter()
                    .map(|m| ray(phi, m))
                    .collect::<Result<Vec<_>>>()?;
                let k = rays.len();
                (rays, Cardinality::Finite(k))
            }
        }
        d => {
            return Err(Error::Unsupported(format!(
                "ker(1 - p Ad Phi) has dimension {d}"
            )))
        }
    };
    if let Cardinality::Finite(_) = cardinality {
        for (i, a) in rays.iter().enumerate() {
            if rays[..i].iter().any(|b| b.parabolic == a.parabolic) {
                return Err(Error::Internal("two preimages share a parabolic".into()));
            }
        }
    }
    Ok(SubFiber {
        base_phi: phi.clone(),
        kernel,
        rays,
        cardinality,
    })
}

/// Image in `(A, M)` coordinates of the tangent space of the resolution at
/// `(Phi, 0, P)`.
///
/// Unknowns are `A`, `g` (the direction moving `P`) and `c`, subject to
/// `Ad(Phi^-1)(A - g) + g in p` and `(1 - p Ad Phi)[g, N_P] = [A, N_P]`,
/// with `M = c N_P` for `N_P` spanning `p_2`.
pub fn sub_tangent_image(phi: &Mat, par: &ParabolicData) -> Result<Subspace> {
    check_gl3(phi)?;
    let field = phi.field();
    let p2 = par.filtration.at(2);
    if p2.dim() != 1 {
        return Err(Error::Invalid("parabolic is not of subregular type".into()));
    }
    if !par.contains_group_element(phi)? {
        return Err(Error::Invalid("Phi is not in the parabolic".into()));
    }
    let n_p = as_matrix(phi, &p2.basis()[0]);
    let omp = one_minus_pad(&FrobTuple::group(vec![phi.clone()])?)?;
    if !omp.matrix().mul_vec(&n_p.to_vec()).iter().all(Scalar::is_zero) {
        return Err(Error::Invalid("1 - p Ad Phi does not vanish on p_2".into()));
    }

    let ad_inv = ad_single(&phi.inverse()?)?.into_matrix();
    let id = Mat::identity(field, 9);
    let ad_np = ad_lie(&n_p).into_matrix();
    let ann = Mat::from_rows(field, par.p_lie.annihilator())?;

    // columns: A (9), g (9), c (1)
    let k = ann.rows();
    let mut eqs = Mat::zeros(field, k + 9, 19);
    // Ad(Phi^-1) A + (1 - Ad(Phi^-1)) g, read modulo p
    eqs.set_block(0, 0, &(&ann * &ad_inv));
    eqs.set_block(0, 9, &(&ann * &(&id - &ad_inv)));
    // [X, N_P] = -ad_{N_P} X, so the bracket condition reads
    // ad_{N_P} A - (1 - p Ad Phi) ad_{N_P} g = 0
    eqs.set_block(k, 0, &ad_np);
    eqs.set_block(k, 9, &-&(omp.matrix() * &ad_np));

    let solutions = eqs.kernel();
    let images = solutions
        .basis()
        .iter()
        .map(|s| {
            let mut v = s[..9].to_vec();
            v.extend(n_p.scale(&s[18]).to_vec());
            v
        })
        .collect();
    Ok(Subspace::span(field, 18, images))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Singular,
    SmoothUnknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Singular => "SINGULAR",
            Verdict::SmoothUnknown => "SMOOTH_UNKNOWN",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SingularityCertificate {
    pub phi: Mat,
    pub preimages: Cardinality,
    pub kernel_dim: usize,
    /// Dimension of the span of two tangent images, when two preimages are
    /// available.
    pub tangent_span_dim: Option<usize>,
    /// All brackets of elements of `ker(1 - p Ad Phi)` vanish.
    pub kernel_abelian: bool,
    /// `(Phi, 0)` lies on the closure of the regular locus.
    pub in_x_reg: bool,
    pub verdict: Verdict,
}

/// The point `(Phi, 0)` is on the closure of the regular locus exactly when
/// `ker(1 - p Ad Phi)` contains a regular nilpotent: then `(Phi, t N)` is a
/// regular point for every `t != 0`, and conversely a Borel through `Phi`
/// whose weight-2 space is killed by `1 - p Ad Phi` supplies one.
pub fn singularity_certificate(phi: &Mat) -> Result<SingularityCertificate> {
    let fiber = sub_fiber(phi)?;
    let basis: Vec<Mat> = fiber
        .kernel
        .basis()
        .iter()
        .map(|v| as_matrix(phi, v))
        .collect();
    let kernel_abelian = basis
        .iter()
        .enumerate()
        .all(|(i, a)| basis[i + 1..].iter().all(|b| a.bracket(b).is_zero()));
    let in_x_reg = match basis.len() {
        0 => false,
        1 => basis[0].rank() == 2,
        _ => fiber.cardinality != Cardinality::InfiniteP1,
    };
    if basis.len() >= 2 && kernel_abelian && in_x_reg {
        return Err(Error::Internal("abelian kernel with a regular element".into()));
    }
    let tangent_span_dim = if fiber.rays.len() >= 2 {
        let a = sub_tangent_image(phi, &fiber.rays[0].parabolic)?;
        let b = sub_tangent_image(phi, &fiber.rays[1].parabolic)?;
        Some(a.sum(&b).dim())
    } else {
        None
    };
    let verdict = if fiber.cardinality.at_least_two() {
        Verdict::Singular
    } else {
        Verdict::SmoothUnknown
    };
    Ok(SingularityCertificate {
        phi: phi.clone(),
        preimages: fiber.cardinality,
        kernel_dim: fiber.kernel.dim(),
        tangent_span_dim,
        kernel_abelian,
        in_x_reg,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::QuadField;

    fn diag(f: QuadField, e: [i32; 3]) -> Mat {
        Mat::diag(f, &e.map(|k| f.p_power(k)))
    }

    fn pattern(rows: [&str; 3]) -> Option<Vec<String>> {
        Some(rows.map(String::from).to_vec())
    }

    #[test]
    fn two_point_fiber() {
        for p in [2, 3] {
            let f = QuadField::new(p).unwrap();
            let fib = sub_fiber(&diag(f, [0, 1, 2])).unwrap();
            assert_eq!(fib.cardinality, Cardinality::Finite(2));
            let mut pats: Vec<_> = fib.rays.iter().map(|r| r.parabolic.entry_pattern()).collect();
            pats.sort();
            let mut expected = vec![
                pattern(["* * *", "0 * 0", "0 * *"]),
                pattern(["* 0 *", "* * *", "0 0 *"]),
            ];
            expected.sort();
            assert_eq!(pats, expected);
            assert!(fib.rays.iter().all(|r| r.phi_in_parabolic));
        }
    }

    #[test]
    fn projective_line_fiber() {
        let f = QuadField::new(3).unwrap();
        let fib = sub_fiber(&diag(f, [0, 1, 1])).unwrap();
        assert_eq!(fib.cardinality, Cardinality::InfiniteP1);
        let expected = Subspace::span(
            f,
            9,
            vec![Mat::unit(f, 3, 0, 1).to_vec(), Mat::unit(f, 3, 0, 2).to_vec()],
        );
        assert_eq!(fib.kernel, expected);
    }

    #[test]
    fn empty_fiber() {
        let f = QuadField::new(2).unwrap();
        let fib = sub_fiber(&Mat::identity(f, 3)).unwrap();
        assert_eq!(fib.cardinality, Cardinality::Finite(0));
        let cert = singularity_certificate(&Mat::identity(f, 3)).unwrap();
        assert_eq!(cert.verdict, Verdict::SmoothUnknown);
        assert!(!cert.in_x_reg);
    }

    #[test]
    fn tangent_images() {
        let f = QuadField::new(2).unwrap();
        let phi = diag(f, [0, 1, 1]);
        let a = sub_tangent_image(&phi, &parabolic_of(&Mat::unit(f, 3, 0, 1)).unwrap()).unwrap();
        let b = sub_tangent_image(&phi, &parabolic_of(&Mat::unit(f, 3, 0, 2)).unwrap()).unwrap();
        assert_eq!(a.dim(), 8);
        assert_eq!(b.dim(), 8);
        assert!(a.sum(&b).dim() >= 10);

        // with finitely many preimages no fiber direction collapses
        let phi = diag(f, [0, 1, 2]);
        let a = sub_tangent_image(&phi, &parabolic_of(&Mat::unit(f, 3, 0, 1)).unwrap()).unwrap();
        let b = sub_tangent_image(&phi, &parabolic_of(&Mat::unit(f, 3, 1, 2)).unwrap()).unwrap();
        assert_eq!((a.dim(), b.dim()), (9, 9));
        assert!(a.sum(&b).dim() >= 10);
    }

    #[test]
    fn certificates() {
        let f = QuadField::new(2).unwrap();
        let cert = singularity_certificate(&diag(f, [0, 1, 1])).unwrap();
        assert_eq!(cert.verdict, Verdict::Singular);
        assert_eq!(cert.preimages, Cardinality::InfiniteP1);
        assert!(cert.kernel_abelian);
        assert!(!cert.in_x_reg);
        assert!(cert.tangent_span_dim.unwrap() >= 10);

        let cert = singularity_certificate(&diag(f, [0, 1, 2])).unwrap();
        assert_eq!(cert.verdict, Verdict::Singular);
        assert_eq!(cert.preimages, Cardinality::Finite(2));
        assert!(cert.in_x_reg);
    }
}
