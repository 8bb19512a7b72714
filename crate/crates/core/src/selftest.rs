//! Built-in invariant suite behind the `selftest` command. Every check is
//! deterministic (fixed seeds) and small enough to run in a few seconds.

use rayon::prelude::*;

use crate::adjoint::{ad_single, one_minus_pad, FrobTuple};
use crate::components::{
    gl2_charpoly_formula, gl2_report, gl2_x0_tangent, reg_filtration_reconstruct, singularity_certificate, sub_fiber,
    Cardinality, Verdict,
};
use crate::dual::is_first_order_solution;
use crate::field::QuadField;
use crate::linalg::{jordan_type, Mat, Partition};
use crate::moduli::{
    canonical_point, complex_dims, d0_matrix, d1_matrix, filtered_complex_dims, tangent_space, Filtration,
};
use crate::nilpotent::{associated_cocharacter, centralizer_lie, threshold, weight_two_in_image};
use crate::sample;

type Check = fn() -> std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lift<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn fields() -> Vec<QuadField> {
    [2, 3, 5].iter().map(|&p| QuadField::new(p).expect("prime")).collect()
}

fn nilpotent_types() -> Vec<Partition> {
    let mut out = Partition::all(2);
    out.extend(Partition::all(3));
    out
}

fn field_arithmetic() -> std::result::Result<(), String> {
    let mut r = sample::rng(1);
    for f in fields() {
        for _ in 0..20 {
            let a = &sample::scalar(&mut r, f) + &f.sqrt_p().scale_rational(sample::scalar(&mut r, f).a());
            if a.is_zero() {
                continue;
            }
            let inv = lift(a.inv())?;
            ensure((&a * &inv).is_one(), || format!("{a} * {inv} != 1"))?;
        }
    }
    Ok(())
}

fn cayley_hamilton() -> std::result::Result<(), String> {
    let mut r = sample::rng(2);
    for f in fields() {
        for n in 1..=4 {
            let m = sample::matrix(&mut r, f, n);
            ensure(m.charpoly().eval_mat(&m).is_zero(), || format!("charpoly of {m:?} does not vanish"))?;
        }
    }
    Ok(())
}

fn adjoint_kernels() -> std::result::Result<(), String> {
    for f in fields() {
        let pp = f.p_scalar();
        let t = lift(FrobTuple::group(vec![Mat::diag(f, &[f.one(), pp.clone(), pp])]))?;
        let k = lift(one_minus_pad(&t))?.kernel();
        ensure(k.dim() == 2, || format!("kernel dimension {} at diag(1,p,p)", k.dim()))?;
    }
    Ok(())
}

fn cocharacters() -> std::result::Result<(), String> {
    let mut r = sample::rng(3);
    let f = QuadField::new(3).expect("prime");
    for part in nilpotent_types() {
        for k in 0..3 {
            let nil = if k == 0 {
                part.jordan_matrix(f)
            } else {
                sample::nilpotent(&mut r, f, &part)
            };
            let c = lift(associated_cocharacter(&nil))?;
            for t in [2, 3, 5] {
                let lt = lift(c.eval(&f.int(t)))?;
                let lhs = &(&lt * &nil) * &lift(lt.inverse())?;
                ensure(lhs == nil.scale(&f.int(t * t)), || format!("Ad(lambda({t})) N != t^2 N for {part:?}"))?;
            }
            let cent = lift(centralizer_lie(&nil))?;
            ensure(cent.is_subspace_of(&threshold(&c, 0)), || "centralizer not in g_>=0".into())?;
            let split = cent.intersect(&c.piece(0)).dim() + cent.intersect(&threshold(&c, 1)).dim();
            ensure(split == cent.dim(), || "graded centralizer does not split".into())?;
            ensure(lift(weight_two_in_image(&nil))?, || "weight 2 not in image of ad_N".into())?;
        }
    }
    Ok(())
}

fn complexes() -> std::result::Result<(), String> {
    let mut r = sample::rng(4);
    let f = QuadField::new(2).expect("prime");
    for part in nilpotent_types() {
        for fdeg in 1..=2 {
            let nil = sample::nilpotent(&mut r, f, &part);
            let pt = lift(sample::point_over(&mut r, &nil, fdeg))?;
            let d0 = lift(d0_matrix(&pt))?;
            let d1 = lift(d1_matrix(&pt))?;
            ensure((&d1 * &d0).is_zero(), || "d1 d0 != 0".into())?;
            let rep = lift(complex_dims(&pt))?;
            ensure(rep.h0 + rep.h2 == rep.h1, || "Euler characteristic".into())?;
            let t = lift(tangent_space(&pt))?.dim();
            ensure(t == pt.dim_lie() + rep.h2, || format!("tangent {t} vs fn^2 + h2"))?;
        }
    }
    Ok(())
}

fn canonical_h2() -> std::result::Result<(), String> {
    for f in fields() {
        for part in nilpotent_types() {
            if part.parts().iter().all(|&k| k == 1) {
                continue;
            }
            let pt = lift(canonical_point(&part.jordan_matrix(f), 1))?;
            let rep = lift(complex_dims(&pt))?;
            ensure(rep.h2 == 0, || format!("h2 = {} at canonical point of {part:?}", rep.h2))?;
        }
    }
    Ok(())
}

fn filtered_identity() -> std::result::Result<(), String> {
    let f = QuadField::new(2).expect("prime");
    let reg3 = Partition::new(vec![3]).expect("partition").jordan_matrix(f);
    let reg2 = Partition::new(vec![2]).expect("partition").jordan_matrix(f);
    for (nil, w) in [(reg2, vec![1, 0]), (reg3.clone(), vec![1, 0, 0]), (reg3, vec![2, 1, 0])] {
        let pt = lift(canonical_point(&nil, 1))?;
        let fil = Filtration::from_weights(f, w, 1);
        let rep = lift(filtered_complex_dims(&pt, &fil))?;
        ensure(rep.h2 == 0, || "h2 != 0".into())?;
        ensure(rep.h1 == fil.quotient_dim() + rep.h0, || "h1_F identity".into())?;
    }
    Ok(())
}

fn gl2() -> std::result::Result<(), String> {
    let mut r = sample::rng(5);
    for f in fields() {
        for _ in 0..10 {
            let phi = sample::invertible(&mut r, f, 2);
            let formula = lift(gl2_charpoly_formula(&phi))?;
            ensure(formula == lift(ad_single(&phi))?.matrix().charpoly().coeffs(), || "charpoly formula".into())?;
        }
        for fdeg in 1..=3 {
            let t = sample::group_tuple(&mut r, f, 2, fdeg);
            let rep = lift(gl2_report(&t))?;
            ensure(rep.kernel_dim <= 1, || "kernel bound".into())?;
            let d = sample::gl2_divisor_tuple(&mut r, f, fdeg);
            let rep = lift(gl2_report(&d))?;
            ensure(rep.on_divisor && rep.kernel_dim == 1, || "divisor point".into())?;
            let x0 = lift(gl2_x0_tangent(&d))?;
            ensure(x0.total == 4 * fdeg, || format!("x0 tangent {} for f = {fdeg}", x0.total))?;
        }
    }
    Ok(())
}

fn regular() -> std::result::Result<(), String> {
    let mut r = sample::rng(6);
    let f = QuadField::new(3).expect("prime");
    for n in 2..=3 {
        let nil = sample::nilpotent(&mut r, f, &Partition::new(vec![n]).expect("partition"));
        let pt = lift(sample::point_over(&mut r, &nil, 1))?;
        lift(reg_filtration_reconstruct(&pt))?;
    }
    Ok(())
}

fn subregular() -> std::result::Result<(), String> {
    for p in [2, 3] {
        let f = QuadField::new(p).expect("prime");
        let d = |e: [i32; 3]| Mat::diag(f, &e.map(|k| f.p_power(k)));
        let fib = lift(sub_fiber(&d([0, 1, 2])))?;
        ensure(fib.cardinality == Cardinality::Finite(2), || "two preimages".into())?;
        for ray in &fib.rays {
            ensure(ray.phi_in_parabolic, || "Phi not in parabolic".into())?;
            let part = lift(jordan_type(&ray.ray))?;
            ensure(part.parts() == [2, 1], || format!("ray of type {part:?}"))?;
        }
        let cert = lift(singularity_certificate(&d([0, 1, 1])))?;
        ensure(cert.verdict == Verdict::Singular && !cert.in_x_reg, || "diag(1,p,p) certificate".into())?;
        ensure(cert.tangent_span_dim.is_some_and(|k| k >= 10), || "tangent span".into())?;
    }
    Ok(())
}

fn dual_oracle() -> std::result::Result<(), String> {
    let mut r = sample::rng(7);
    let f = QuadField::new(2).expect("prime");
    for part in nilpotent_types() {
        let nil = sample::nilpotent(&mut r, f, &part);
        let pt = lift(sample::point_over(&mut r, &nil, 1))?;
        let ts = lift(tangent_space(&pt))?;
        for v in ts.basis() {
            ensure(lift(is_first_order_solution(&pt, v))?, || "tangent vector fails".into())?;
        }
    }
    Ok(())
}

const CHECKS: &[(&str, Check)] = &[
    ("field_arithmetic", field_arithmetic),
    ("cayley_hamilton", cayley_hamilton),
    ("adjoint_kernels", adjoint_kernels),
    ("associated_cocharacters", cocharacters),
    ("deformation_complexes", complexes),
    ("canonical_h2_vanishing", canonical_h2),
    ("filtered_identity", filtered_identity),
    ("gl2_divisor", gl2),
    ("regular_reconstruction", regular),
    ("subregular_fibers", subregular),
    ("dual_number_oracle", dual_oracle),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub error: Option<String>,
}

/// Runs every check; order of the result matches the suite order.
pub fn run_all() -> Vec<CheckOutcome> {
    CHECKS
        .par_iter()
        .map(|(name, check)| {
            let error = match std::panic::catch_unwind(check) {
                Ok(r) => r.err(),
                Err(_) => Some("panicked".to_string()),
            };
            CheckOutcome { name, error }
        })
        .collect()
}

pub fn names() -> Vec<&'static str> {
    CHECKS.iter().map(|(n, _)| *n).collect()
}
