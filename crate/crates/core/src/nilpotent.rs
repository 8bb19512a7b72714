//! Associated cocharacters of nilpotents in `gl_n`, the gradings and
//! parabolic filtrations they induce, and Lie-algebra centralizers.
//!
//! For a nilpotent `N` with Jordan basis `g` (columns grouped in chains,
//! largest blocks first), the cocharacter
//! `t -> g diag(t^w) g^-1` with weights `m-1, m-3, ..., 1-m` on each block of
//! size `m` satisfies `Ad(lambda(t)) N = t^2 N`. The weight of the matrix
//! unit `g e_ij g^-1` under this cocharacter is `w_i - w_j`.

use std::collections::BTreeMap;

use crate::adjoint::{ad_lie, ad_single};
use crate::error::{Error, Result};
use crate::field::{QuadField, Scalar};
use crate::linalg::{is_nilpotent, jordan_basis_nilpotent, Mat, Subspace};

/// A cocharacter `t -> g diag(t^w_1, ..., t^w_n) g^-1` of `GL_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochar {
    g: Mat,
    g_inv: Mat,
    weights: Vec<i32>,
}

impl Cochar {
    pub fn new(g: Mat, weights: Vec<i32>) -> Result<Cochar> {
        if !g.is_square() || g.rows() != weights.len() {
            return Err(Error::Shape("conjugator and weight vector disagree".into()));
        }
        let g_inv = g.inverse()?;
        Ok(Cochar { g, g_inv, weights })
    }

    /// Diagonal cocharacter in the standard frame.
    pub fn diagonal(field: QuadField, weights: Vec<i32>) -> Cochar {
        let n = weights.len();
        Cochar {
            g: Mat::identity(field, n),
            g_inv: Mat::identity(field, n),
            weights,
        }
    }

    pub fn conjugator(&self) -> &Mat {
        &self.g
    }

    pub fn weights(&self) -> &[i32] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn field(&self) -> QuadField {
        self.g.field()
    }

    pub fn is_trivial(&self) -> bool {
        self.weights.iter().all(|&w| w == 0)
    }

    /// Conjugate cocharacter `h lambda h^-1`.
    pub fn conjugate(&self, h: &Mat) -> Result<Cochar> {
        Cochar::new(h * &self.g, self.weights.clone())
    }

    /// `g diag(value(w_i)) g^-1`.
    pub fn eval_with(&self, value: impl Fn(i32) -> Scalar) -> Mat {
        let d: Vec<Scalar> = self.weights.iter().map(|&w| value(w)).collect();
        &(&self.g * &Mat::diag(self.field(), &d)) * &self.g_inv
    }

    /// `lambda(t)` for nonzero `t`.
    pub fn eval(&self, t: &Scalar) -> Result<Mat> {
        if t.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let t = t.clone();
        Ok(self.eval_with(|w| t.pow(w).expect("t is nonzero")))
    }

    /// `lambda((sqrt p)^e)`; `e = -1` gives `lambda(p^-1/2)`.
    pub fn eval_sqrt_p_power(&self, e: i32) -> Mat {
        let field = self.field();
        self.eval_with(|w| field.sqrt_p_power(e * w))
    }

    /// Derivative at 1: `g diag(w) g^-1`.
    pub fn generator(&self) -> Mat {
        let field = self.field();
        self.eval_with(|w| field.int(w as i64))
    }

    /// Distinct weights of the adjoint action, decreasing.
    pub fn adjoint_weights(&self) -> Vec<i32> {
        let mut ws: Vec<i32> = self
            .weights
            .iter()
            .flat_map(|a| self.weights.iter().map(move |b| a - b))
            .collect();
        ws.sort_unstable_by(|a, b| b.cmp(a));
        ws.dedup();
        ws
    }

    /// The weight-`k` eigenspace of `Ad(lambda)` on `gl_n`.
    pub fn piece(&self, k: i32) -> Subspace {
        let n = self.n();
        let field = self.field();
        let mut vecs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.weights[i] - self.weights[j] == k {
                    let col = self.g.column(i);
                    let row = self.g_inv.row(j);
                    let mut v = Vec::with_capacity(n * n);
                    for a in &col {
                        for b in row {
                            v.push(a * b);
                        }
                    }
                    vecs.push(v);
                }
            }
        }
        Subspace::span(field, n * n, vecs)
    }
}

/// Eigenspace decomposition of `gl_n` under a cocharacter.
#[derive(Debug, Clone)]
pub struct GradedDecomp {
    pub cochar: Cochar,
    pub pieces: BTreeMap<i32, Subspace>,
}

pub fn grading(c: &Cochar) -> GradedDecomp {
    let pieces = c
        .adjoint_weights()
        .into_iter()
        .map(|k| (k, c.piece(k)))
        .collect();
    GradedDecomp {
        cochar: c.clone(),
        pieces,
    }
}

/// `g_{>= k}`: the sum of the pieces of weight at least `k`.
pub fn threshold(c: &Cochar, k: i32) -> Subspace {
    let n = c.n();
    c.adjoint_weights()
        .into_iter()
        .filter(|&w| w >= k)
        .fold(Subspace::zero(c.field(), n * n), |acc, w| acc.sum(&c.piece(w)))
}

/// A decreasing filtration of `gl_n`, stored at its jumps: the entries are
/// `(k, g_{>=k})` for exactly those `k` with `g_{>=k} != g_{>=k+1}`,
/// in decreasing `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieFiltration {
    jumps: Vec<(i32, Subspace)>,
    field: QuadField,
    ambient: usize,
}

impl LieFiltration {
    /// Builds the filtration from graded steps `g_{>=k}` given for a
    /// contiguous decreasing run of `k`, starting above the top weight.
    pub fn from_steps(field: QuadField, ambient: usize, steps: Vec<(i32, Subspace)>) -> Self {
        let mut jumps = Vec::new();
        let mut prev = Subspace::zero(field, ambient);
        for (k, s) in steps {
            if s != prev {
                jumps.push((k, s.clone()));
            }
            prev = s;
        }
        LieFiltration {
            jumps,
            field,
            ambient,
        }
    }

    pub fn from_cochar(c: &Cochar) -> Self {
        let ws = c.adjoint_weights();
        let steps = ws.iter().map(|&k| (k, threshold(c, k))).collect();
        LieFiltration::from_steps(c.field(), c.n() * c.n(), steps)
    }

    pub fn jumps(&self) -> &[(i32, Subspace)] {
        &self.jumps
    }

    /// `g_{>=k}`.
    pub fn at(&self, k: i32) -> Subspace {
        self.jumps
            .iter()
            .rev()
            .find(|(kk, _)| *kk >= k)
            .map(|(_, s)| s.clone())
            .unwrap_or_else(|| Subspace::zero(self.field, self.ambient))
    }

    /// Whether `Ad(phi)` preserves every step.
    pub fn is_stable_under(&self, phi: &Mat) -> Result<bool> {
        let ad = ad_single(phi)?;
        Ok(self
            .jumps
            .iter()
            .all(|(_, s)| s.map(ad.matrix()) == *s))
    }
}

/// The parabolic `P(lambda)` through its Lie algebra: `p = g_{>=0}`,
/// `u = g_{>0}`, a Levi `g_0`, and the full filtration.
#[derive(Debug, Clone)]
pub struct ParabolicData {
    pub cochar: Cochar,
    pub p_lie: Subspace,
    pub u_lie: Subspace,
    pub levi_lie: Subspace,
    pub filtration: LieFiltration,
}

/// Equality of the filtered subalgebras. The Levi factor is not part of
/// the comparison: it depends on the chosen cocharacter, not on `P`.
impl PartialEq for ParabolicData {
    fn eq(&self, other: &Self) -> bool {
        self.p_lie == other.p_lie && self.u_lie == other.u_lie && self.filtration == other.filtration
    }
}

impl ParabolicData {
    pub fn from_cochar(c: &Cochar) -> ParabolicData {
        ParabolicData {
            cochar: c.clone(),
            p_lie: threshold(c, 0),
            u_lie: threshold(c, 1),
            levi_lie: c.piece(0),
            filtration: LieFiltration::from_cochar(c),
        }
    }

    pub fn n(&self) -> usize {
        self.cochar.n()
    }

    /// `Phi in P`, tested as `Ad(Phi)`-stability of every filtration step.
    pub fn contains_group_element(&self, phi: &Mat) -> Result<bool> {
        self.filtration.is_stable_under(phi)
    }

    /// Rows like `"* * 0"` when `p` is spanned by matrix units, `None`
    /// otherwise.
    pub fn entry_pattern(&self) -> Option<Vec<String>> {
        coordinate_pattern(&self.p_lie, self.n())
    }
}

/// Star pattern of a subspace of `gl_n` spanned by matrix units.
pub fn coordinate_pattern(s: &Subspace, n: usize) -> Option<Vec<String>> {
    let field = s.field();
    let mut count = 0;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut cells = Vec::with_capacity(n);
        for j in 0..n {
            let inside = s.contains(&Mat::unit(field, n, i, j).to_vec());
            count += inside as usize;
            cells.push(if inside { "*" } else { "0" });
        }
        rows.push(cells.join(" "));
    }
    (count == s.dim()).then_some(rows)
}

/// Associated cocharacter built from the Jordan basis of `nil`.
///
/// The result is checked before it is returned: `Ad(lambda(t)) N = t^2 N`
/// for `t = 2, 3`, and `H = d lambda(1)` satisfies `[H, N] = 2N` with
/// `H in [N, gl_n]`.
pub fn associated_cocharacter(nil: &Mat) -> Result<Cochar> {
    if !is_nilpotent(nil) {
        return Err(Error::NotNilpotent);
    }
    let field = nil.field();
    let n = nil.rows();
    if nil.is_zero() {
        return Ok(Cochar::diagonal(field, vec![0; n]));
    }
    let (g, partition) = jordan_basis_nilpotent(nil)?;
    let mut weights = Vec::with_capacity(n);
    for &m in partition.parts() {
        let m = m as i32;
        weights.extend((0..m).map(|k| m - 1 - 2 * k));
    }
    let c = Cochar::new(g, weights)?;

    for t in [2, 3] {
        let lt = c.eval(&field.int(t))?;
        let lhs = &(&lt * nil) * &lt.inverse()?;
        if lhs != nil.scale(&field.int(t * t)) {
            return Err(Error::Internal("Ad(lambda(t)) N != t^2 N".into()));
        }
    }
    let h = c.generator();
    if h.bracket(nil) != nil.scale(&field.int(2)) {
        return Err(Error::Internal("[H, N] != 2N".into()));
    }
    if ad_lie(nil).matrix().solve(&h.to_vec()).is_none() {
        return Err(Error::Internal("H is not in [N, gl_n]".into()));
    }
    Ok(c)
}

pub fn parabolic_of(nil: &Mat) -> Result<ParabolicData> {
    if !is_nilpotent(nil) {
        return Err(Error::NotNilpotent);
    }
    if nil.is_zero() {
        return Err(Error::Invalid("the zero nilpotent has no attached parabolic".into()));
    }
    Ok(ParabolicData::from_cochar(&associated_cocharacter(nil)?))
}

/// `ker(ad_N)` on `gl_n`.
pub fn centralizer_lie(nil: &Mat) -> Result<Subspace> {
    if !nil.is_square() {
        return Err(Error::Shape("centralizer of a non-square matrix".into()));
    }
    Ok(ad_lie(nil).kernel())
}

/// Whether the weight-2 piece of the associated grading lies in `[N, gl_n]`.
pub fn weight_two_in_image(nil: &Mat) -> Result<bool> {
    let c = associated_cocharacter(nil)?;
    let ad = ad_lie(nil);
    Ok(c.piece(2)
        .basis()
        .iter()
        .all(|v| ad.matrix().solve(v).is_some()))
}
