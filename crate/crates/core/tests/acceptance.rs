//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::{brute_ad, diag_p_powers, faddeev_leverrier, fields, leibniz_det};
use phinmod::adjoint::{ad_lie, ad_single, one_minus_pad, FrobTuple};
use phinmod::components::{
    divisor_value, gl2_charpoly_formula, gl2_report, gl2_x0_tangent, reg_filtration_reconstruct,
    singularity_certificate, sub_fiber, sub_tangent_image, Cardinality, Verdict,
};
use phinmod::dual::is_first_order_solution;
use phinmod::field::QuadField;
use phinmod::linalg::{Mat, Partition, Subspace};
use phinmod::moduli::{
    canonical_point, complex_dims, d0_matrix, d1_matrix, filtered_complex_dims, tangent_space, Filtration,
    ModuliPoint,
};
use phinmod::nilpotent::{associated_cocharacter, centralizer_lie, parabolic_of, threshold};
use phinmod::sample::{self, Rng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn e(err: phinmod::Error) -> String {
    err.to_string()
}

/// `det(I - p^f Ad(Nm))`, with the operator built by explicit conjugation
/// and the determinant by permutation expansion.
fn twisted_det(nm: &Mat, f: usize) -> phinmod::Scalar {
    let field = nm.field();
    let op = &Mat::identity(field, 4) - &brute_ad(nm).scale(&field.p_power(f as i32));
    leibniz_det(&op)
}

/// The shared sample for criteria 2 and 3: random tuples, every fourth a
/// constructed divisor point.
fn gl2_sample() -> Vec<(FrobTuple, bool)> {
    let mut r = sample::rng(2002);
    let mut out = Vec::with_capacity(200);
    for k in 0..200 {
        let field = QuadField::new(if k % 2 == 0 { 2 } else { 3 }).unwrap();
        let f = 1 + (k / 2) % 3;
        if k % 4 == 3 {
            out.push((sample::gl2_divisor_tuple(&mut r, field, f), true));
        } else {
            out.push((sample::group_tuple(&mut r, field, 2, f), false));
        }
    }
    out
}

fn adversarial_gl2() -> Vec<FrobTuple> {
    let mut out = Vec::new();
    for field in fields(&[2, 3, 5]) {
        let p = field.p_scalar();
        let id = Mat::identity(field, 2);
        let unip = Mat::from_ints(field, &[&[1, 1], &[0, 1]]);
        let ratio = |k: i32| Mat::diag(field, &[field.one(), field.p_power(k)]);
        for f in 1..=3usize {
            out.push(FrobTuple::repeat(phinmod::adjoint::TupleKind::Group, id.scale(&p), f).unwrap());
            out.push(FrobTuple::repeat(phinmod::adjoint::TupleKind::Group, unip.clone(), f).unwrap());
            // all of the ratio p^f in one slot
            let mut mats = vec![id.clone(); f];
            mats[0] = ratio(f as i32);
            out.push(FrobTuple::group(mats).unwrap());
            // ratio p in every slot
            out.push(FrobTuple::repeat(phinmod::adjoint::TupleKind::Group, ratio(1), f).unwrap());
            // inverse ratio
            out.push(FrobTuple::repeat(phinmod::adjoint::TupleKind::Group, ratio(-1), f).unwrap());
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let mut r = sample::rng(1001);
    let field = QuadField::new(2).unwrap();
    for _ in 0..200 {
        let phi = sample::invertible(&mut r, field, 2);
        let formula = gl2_charpoly_formula(&phi).map_err(e)?;
        let ad = ad_single(&phi).map_err(e)?;
        check!(formula == ad.matrix().charpoly().coeffs(), "formula differs from charpoly at {phi:?}");
        check!(formula == faddeev_leverrier(&brute_ad(&phi)), "formula differs from the reference at {phi:?}");
    }
    Ok("200 matrices, exact equality".into())
}

fn criterion_2() -> Outcome {
    let mut on = 0;
    for (t, _) in gl2_sample() {
        let nm = t.norm();
        let lhs = twisted_det(&nm, t.f()).is_zero();
        let rhs = divisor_value(&nm, t.f()).is_zero();
        check!(lhs == rhs, "equivalence fails at {t:?}");
        on += usize::from(rhs);
    }
    check!(on >= 50, "only {on} sample points on the divisor");
    Ok(format!("200 tuples, {on} on the divisor"))
}

fn criterion_3() -> Outcome {
    let mut tested = 0;
    let mut exact = 0;
    let sample = gl2_sample().into_iter().chain(adversarial_gl2().into_iter().map(|t| (t, false)));
    for (t, constructed) in sample {
        let k = one_minus_pad(&t).map_err(e)?.kernel().dim();
        check!(k <= 1, "kernel dimension {k} at {t:?}");
        if constructed {
            check!(k == 1, "kernel dimension {k} at constructed divisor point {t:?}");
            exact += 1;
        }
        tested += 1;
    }
    Ok(format!("{tested} tuples with dim <= 1, {exact} divisor points with dim = 1"))
}

fn criterion_4() -> Outcome {
    let mut r = sample::rng(4004);
    let mut counts = [0; 3];
    for k in 0..20 {
        let field = QuadField::new([2, 3, 5][k % 3]).unwrap();
        let f = 1 + k % 3;
        let nil = sample::nilpotent(&mut r, field, &Partition::new(vec![2]).unwrap());
        let pt = sample::point_over(&mut r, &nil, f).map_err(e)?;
        let dim = tangent_space(&pt).map_err(e)?.dim();
        check!(dim == 4 * f, "tangent dimension {dim} at a point with N != 0, f = {f}");
        counts[0] += 1;
    }
    while counts[1] < 20 {
        let k = counts[1];
        let field = QuadField::new([2, 3][k % 2]).unwrap();
        let f = 1 + k % 3;
        let pt = sample::point_with_zero_nil(&mut r, field, 2, f);
        if gl2_report(pt.phi()).map_err(e)?.on_divisor {
            continue;
        }
        let dim = tangent_space(&pt).map_err(e)?.dim();
        check!(dim == 4 * f, "tangent dimension {dim} at (Phi, 0) off the divisor, f = {f}");
        counts[1] += 1;
    }
    for k in 0..10 {
        let field = QuadField::new([2, 3][k % 2]).unwrap();
        let f = 1 + k % 3;
        let t = sample::gl2_divisor_tuple(&mut r, field, f);
        let x0 = gl2_x0_tangent(&t).map_err(e)?;
        check!(x0.total == 4 * f, "x0 tangent {} at f = {f}", x0.total);
        check!(x0.divisor_tangent_dim == 4 * f - 1, "divisor tangent {} at f = {f}", x0.divisor_tangent_dim);
        counts[2] += 1;
    }
    Ok(format!(
        "{} points with N != 0, {} off-divisor points, {} divisor points",
        counts[0], counts[1], counts[2]
    ))
}

fn random_point(r: &mut Rng, k: usize) -> Result<ModuliPoint, String> {
    let field = QuadField::new([2, 3, 5][k % 3]).unwrap();
    let n = 2 + k % 2;
    let f = 1 + (k / 2) % 3;
    let parts = Partition::all(n);
    let part = &parts[(k / 6) % parts.len()];
    let nil = sample::nilpotent(r, field, part);
    sample::point_over(r, &nil, f).map_err(e)
}

fn criterion_5() -> Outcome {
    let mut r = sample::rng(5005);
    let mut max_h2 = 0;
    for k in 0..100 {
        // every tenth point is (diag(1,p,p^j), 0), where h2 jumps
        let pt = if k % 10 == 9 {
            let field = QuadField::new([2, 3][k % 2]).unwrap();
            sample_point_zero(&diag_p_powers(field, &[0, 1, 1 + (k / 10) as i32 % 2]))?
        } else {
            random_point(&mut r, k)?
        };
        let d0 = d0_matrix(&pt).map_err(e)?;
        let d1 = d1_matrix(&pt).map_err(e)?;
        check!((&d1 * &d0).is_zero(), "d1 d0 != 0 at sample {k}");
        let rep = complex_dims(&pt).map_err(e)?;
        check!(rep.h0 + rep.h2 == rep.h1, "Euler characteristic fails at sample {k}: {rep:?}");
        let t = tangent_space(&pt).map_err(e)?.dim();
        check!(t == pt.dim_lie() + rep.h2, "tangent {t} != fn^2 + h2 at sample {k}");
        max_h2 = max_h2.max(rep.h2);
    }
    Ok(format!("100 points, largest h2 = {max_h2}"))
}

fn criterion_6() -> Outcome {
    let mut types = Partition::all(2);
    types.extend(Partition::all(3));
    for field in fields(&[2, 3, 5]) {
        for part in &types {
            for f in 1..=3 {
                let nil = part.jordan_matrix(field);
                let pt = canonical_point(&nil, f).map_err(e)?;
                let rep = complex_dims(&pt).map_err(e)?;
                check!(rep.h2 == 0, "h2 = {} at canonical point of {part:?}, p = {}, f = {f}", rep.h2, field.p());
            }
        }
        let canon = canonical_point(&Mat::unit(field, 2, 0, 1), 1).map_err(e)?;
        let phi0 = &canon.phi().mats()[0];
        check!(!phi0.get(0, 0).is_rational(), "GL_2 canonical Phi is rational");
    }
    Ok(format!("{} types x p in {{2,3,5}} x f in {{1,2,3}}", types.len()))
}

fn criterion_7() -> Outcome {
    let mut r = sample::rng(7007);
    let mut count = 0;
    for field in fields(&[2, 3]) {
        for n in 2..=3 {
            for part in Partition::all(n) {
                for k in 0..=20 {
                    let nil = if k == 0 {
                        part.jordan_matrix(field)
                    } else {
                        sample::nilpotent(&mut r, field, &part)
                    };
                    let c = associated_cocharacter(&nil).map_err(e)?;
                    for t in [2, 3, 5] {
                        let lt = c.eval(&field.int(t)).map_err(e)?;
                        let lhs = &(&lt * &nil) * &lt.inverse().map_err(e)?;
                        check!(lhs == nil.scale(&field.int(t * t)), "Ad(lambda({t})) N != t^2 N for {nil:?}");
                    }
                    let ad = ad_lie(&nil);
                    check!(ad.matrix().solve(&c.generator().to_vec()).is_some(), "d lambda(1) not in [N, g]");
                    let cent = centralizer_lie(&nil).map_err(e)?;
                    let g0 = threshold(&c, 0);
                    check!(cent.is_subspace_of(&g0), "centralizer not in g_>=0 for {nil:?}");
                    let a = cent.intersect(&c.piece(0)).dim();
                    let b = cent.intersect(&threshold(&c, 1)).dim();
                    check!(a + b == cent.dim(), "centralizer does not split for {nil:?}");
                    for v in c.piece(2).basis() {
                        check!(ad.matrix().solve(v).is_some(), "weight 2 not in im ad_N for {nil:?}");
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} nilpotents"))
}

fn criterion_8() -> Outcome {
    let mut r = sample::rng(8008);
    let field = QuadField::new(3).unwrap();
    let cases = [(vec![1, 0], vec![2]), (vec![1, 0, 0], vec![3]), (vec![2, 1, 0], vec![3]), (vec![2, 1, 0], vec![2, 1])];
    let mut done = 0;
    let mut attempts = 0;
    while done < 20 {
        attempts += 1;
        check!(attempts < 200, "could not find 20 points with h2 = 0");
        let (w, part) = &cases[done % cases.len()];
        let f = 1 + done % 2;
        let nil = Partition::new(part.clone()).unwrap().jordan_matrix(field);
        let pt = if done < cases.len() {
            canonical_point(&nil, f).map_err(e)?
        } else {
            let random = sample::nilpotent(&mut r, field, &Partition::new(part.clone()).unwrap());
            sample::point_over(&mut r, &random, f).map_err(e)?
        };
        if complex_dims(&pt).map_err(e)?.h2 != 0 {
            continue;
        }
        let fil = Filtration::from_weights(field, w.clone(), f);
        let rep = filtered_complex_dims(&pt, &fil).map_err(e)?;
        check!(rep.h2 == 0, "filtered h2 = {}", rep.h2);
        let q = pt.dim_lie() - fil.fil0.dim();
        check!(rep.h1 == q + rep.h0, "h1_F = {} but quotient {} + h0_F {}", rep.h1, q, rep.h0);
        let kernel = d0_matrix(&pt).map_err(e)?.kernel();
        check!(rep.h0 == kernel.intersect(&fil.fil0).dim(), "h0_F is not dim(H0 cap Fil0)");
        done += 1;
    }
    Ok("20 points across weights (1,0), (1,0,0), (2,1,0)".into())
}

fn criterion_9() -> Outcome {
    for field in fields(&[2, 3]) {
        let fib = sub_fiber(&diag_p_powers(field, &[0, 1, 2])).map_err(e)?;
        check!(fib.cardinality == Cardinality::Finite(2), "diag(1,p,p^2): {:?}", fib.cardinality);
        let mut pats: Vec<_> = fib.rays.iter().map(|r| r.parabolic.entry_pattern()).collect();
        pats.sort();
        let mut expected: Vec<_> = [["* * *", "0 * 0", "0 * *"], ["* 0 *", "* * *", "0 0 *"]]
            .map(|rows| Some(rows.map(String::from).to_vec()))
            .to_vec();
        expected.sort();
        check!(pats == expected, "parabolics {pats:?}");
        for (ray, unit) in fib.rays.iter().zip([(0, 1), (1, 2)]) {
            let line = Subspace::span(field, 9, vec![ray.ray.to_vec()]);
            let want = Subspace::span(field, 9, vec![Mat::unit(field, 3, unit.0, unit.1).to_vec()]);
            check!(line == want, "unexpected ray {:?}", ray.ray);
            check!(ray.phi_in_parabolic, "Phi not in the parabolic");
        }
        let fib = sub_fiber(&diag_p_powers(field, &[0, 1, 1])).map_err(e)?;
        check!(fib.cardinality == Cardinality::InfiniteP1, "diag(1,p,p): {:?}", fib.cardinality);
        let expected = Subspace::span(
            field,
            9,
            vec![Mat::unit(field, 3, 0, 1).to_vec(), Mat::unit(field, 3, 0, 2).to_vec()],
        );
        check!(fib.kernel == expected, "kernel {:?}", fib.kernel);
    }
    Ok("p in {2, 3}".into())
}

fn criterion_10() -> Outcome {
    let mut spans = Vec::new();
    let mut generic = Vec::new();
    for field in fields(&[2, 3]) {
        let phi = diag_p_powers(field, &[0, 1, 1]);
        let cert = singularity_certificate(&phi).map_err(e)?;
        check!(cert.verdict == Verdict::Singular, "diag(1,p,p) verdict {:?}", cert.verdict);
        let span = cert.tangent_span_dim.ok_or("no tangent span")?;
        check!(span >= 10, "tangent span {span}");
        check!(cert.kernel_abelian && !cert.in_x_reg, "diag(1,p,p) kernel test");
        // each image sits inside the tangent space of the moduli at (Phi, 0)
        let pt = sample_point_zero(&phi)?;
        let ambient = tangent_space(&pt).map_err(e)?;
        for nil in [Mat::unit(field, 3, 0, 1), Mat::unit(field, 3, 0, 2)] {
            let img = sub_tangent_image(&phi, &parabolic_of(&nil).map_err(e)?).map_err(e)?;
            check!(img.dim() == 8, "image dimension {}", img.dim());
            check!(img.is_subspace_of(&ambient), "image not tangent to the moduli");
        }
        spans.push(span);

        let cert = singularity_certificate(&diag_p_powers(field, &[0, 1, 2])).map_err(e)?;
        check!(cert.verdict == Verdict::Singular, "diag(1,p,p^2) verdict {:?}", cert.verdict);
        check!(cert.preimages == Cardinality::Finite(2), "diag(1,p,p^2) preimages");
        let phi = diag_p_powers(field, &[0, 1, 2]);
        for ray in sub_fiber(&phi).map_err(e)?.rays {
            generic.push(sub_tangent_image(&phi, &ray.parabolic).map_err(e)?.dim());
        }
    }
    Ok(format!("tangent spans {spans:?}, images at diag(1,p,p^2) {generic:?}"))
}

fn sample_point_zero(phi: &Mat) -> Result<ModuliPoint, String> {
    phinmod::moduli::validate_point(
        FrobTuple::group(vec![phi.clone()]).map_err(e)?,
        FrobTuple::zero_lie(phi.field(), phi.rows(), 1),
    )
    .map_err(e)
}

fn criterion_11() -> Outcome {
    let mut r = sample::rng(1111);
    let mut count = 0;
    for k in 0..20 {
        let field = QuadField::new([2, 3, 5][k % 3]).unwrap();
        let n = 2 + k % 2;
        let part = Partition::new(vec![n]).unwrap();
        let pt = if k < 2 {
            canonical_point(&part.jordan_matrix(field), 1).map_err(e)?
        } else {
            let random = sample::nilpotent(&mut r, field, &part);
            sample::point_over(&mut r, &random, 1).map_err(e)?
        };
        let rebuilt = reg_filtration_reconstruct(&pt).map_err(e)?;
        let direct = parabolic_of(&pt.nil().mats()[0]).map_err(e)?;
        check!(rebuilt == direct, "reconstruction differs at sample {k}");
        count += 1;
    }
    Ok(format!("{count} regular points"))
}

fn criterion_12() -> Outcome {
    let mut r = sample::rng(1212);
    let mut vectors = 0;
    for k in 0..50 {
        let pt = if k % 5 == 4 {
            let field = QuadField::new(2).unwrap();
            sample::point_with_zero_nil(&mut r, field, 2 + k % 2, 1 + k % 3)
        } else {
            random_point(&mut r, k)?
        };
        let ts = tangent_space(&pt).map_err(e)?;
        for v in ts.basis() {
            check!(is_first_order_solution(&pt, v).map_err(e)?, "basis vector fails at sample {k}");
            vectors += 1;
        }
        let outside = loop {
            let v: Vec<_> = (0..2 * pt.dim_lie()).map(|_| sample::scalar(&mut r, pt.field())).collect();
            if !ts.contains(&v) {
                break v;
            }
        };
        check!(!is_first_order_solution(&pt, &outside).map_err(e)?, "vector outside passes at sample {k}");
    }
    Ok(format!("50 points, {vectors} basis vectors"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("GL2 characteristic polynomial formula", criterion_1),
        ("GL2 divisor equivalence", criterion_2),
        ("GL2 kernel lemma", criterion_3),
        ("GL2 component dimensions", criterion_4),
        ("deformation complex structure", criterion_5),
        ("H2 vanishing at canonical points", criterion_6),
        ("associated cocharacter invariants", criterion_7),
        ("filtered dimension identity", criterion_8),
        ("GL3 subregular fibers", criterion_9),
        ("singularity certificates", criterion_10),
        ("regular-model uniqueness", criterion_11),
        ("dual-number oracle", criterion_12),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
