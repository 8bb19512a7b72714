use std::fmt;

use super::{Mat, Subspace};
use crate::error::{Error, Result};
use crate::field::Scalar;

/// A partition of `n` in weakly decreasing order; labels nilpotent orbits.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::Invalid("partition with a zero part".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// All partitions of `n`, largest first in lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=rem.min(max)).rev() {
                cur.push(k);
                rec(rem - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Nilpotent matrix in Jordan form with this block structure
    /// (ones on the superdiagonal inside each block).
    pub fn jordan_matrix(&self, field: crate::field::QuadField) -> Mat {
        let n = self.total();
        let mut m = Mat::zeros(field, n, n);
        let mut start = 0;
        for &size in &self.0 {
            for k in 0..size - 1 {
                m.set(start + k, start + k + 1, field.one());
            }
            start += size;
        }
        m
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

pub fn is_nilpotent(m: &Mat) -> bool {
    m.is_square() && m.pow(m.rows() as u32).is_zero()
}

/// Jordan type read off the rank sequence `r_k = rank(m^k)`: the number
/// of parts of size at least `k` is `r_(k-1) - r_k`.
pub fn jordan_type(m: &Mat) -> Result<Partition> {
    if !is_nilpotent(m) {
        return Err(Error::NotNilpotent);
    }
    let n = m.rows();
    let mut ranks = vec![n];
    let mut power = Mat::identity(m.field(), n);
    while *ranks.last().expect("nonempty") > 0 {
        power = &power * m;
        ranks.push(power.rank());
    }
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for (k, &cnt) in at_least.iter().enumerate() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(k + 1, cnt - next));
    }
    Partition::new(parts)
}

/// Invertible `g` whose columns form Jordan chains, so that `g^-1 m g` is
/// the Jordan form of the returned partition. Chain generators are picked
/// greedily from echelon bases, so the result is deterministic.
pub fn jordan_basis_nilpotent(m: &Mat) -> Result<(Mat, Partition)> {
    if !is_nilpotent(m) {
        return Err(Error::NotNilpotent);
    }
    let field = m.field();
    let n = m.rows();
    // kernels[j] = ker m^j
    let mut kernels = vec![Subspace::zero(field, n)];
    let mut power = Mat::identity(field, n);
    while kernels.last().expect("nonempty").dim() < n {
        power = &power * m;
        kernels.push(power.kernel());
    }
    let height = kernels.len() - 1;

    let apply = |v: &[Scalar], times: usize| {
        let mut w = v.to_vec();
        for _ in 0..times {
            w = m.mul_vec(&w);
        }
        w
    };

    // (size, generator)
    let mut chains: Vec<(usize, Vec<Scalar>)> = Vec::new();
    for level in (1..=height).rev() {
        let mut covered = kernels[level - 1].clone();
        for (size, v) in &chains {
            let w = apply(v, size - level);
            covered = covered.sum(&Subspace::span(field, n, vec![w]));
        }
        for b in kernels[level].basis() {
            if !covered.contains(b) {
                covered = covered.sum(&Subspace::span(field, n, vec![b.clone()]));
                chains.push((level, b.clone()));
            }
        }
    }

    let mut columns = Vec::with_capacity(n);
    for (size, v) in &chains {
        for k in (0..*size).rev() {
            columns.push(apply(v, k));
        }
    }
    let g = Mat::from_columns(field, n, &columns);
    let partition = Partition::new(chains.iter().map(|(s, _)| *s).collect())?;
    Ok((g, partition))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::QuadField;

    fn f() -> QuadField {
        QuadField::new(2).unwrap()
    }

    #[test]
    fn jordan_types() {
        let fld = f();
        assert_eq!(jordan_type(&Mat::zeros(fld, 3, 3)).unwrap().parts(), &[1, 1, 1]);
        assert_eq!(jordan_type(&Mat::unit(fld, 3, 0, 1)).unwrap().parts(), &[2, 1]);
        let reg = &Mat::unit(fld, 3, 0, 1) + &Mat::unit(fld, 3, 1, 2);
        assert_eq!(jordan_type(&reg).unwrap().parts(), &[3]);
        assert_eq!(jordan_type(&Mat::identity(fld, 2)), Err(Error::NotNilpotent));
    }

    #[test]
    fn jordan_basis_examples() {
        let fld = f();
        let e12 = Mat::unit(fld, 2, 0, 1);
        let (g, part) = jordan_basis_nilpotent(&e12).unwrap();
        assert_eq!(g, Mat::identity(fld, 2));
        assert_eq!(part.parts(), &[2]);

        let e21 = Mat::unit(fld, 2, 1, 0);
        let (g, part) = jordan_basis_nilpotent(&e21).unwrap();
        assert_eq!(g, Mat::from_ints(fld, &[&[0, 1], &[1, 0]]));
        assert_eq!(part.parts(), &[2]);

        let e13 = Mat::unit(fld, 3, 0, 2);
        let (g, part) = jordan_basis_nilpotent(&e13).unwrap();
        assert_eq!(g, Mat::from_ints(fld, &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]));
        assert_eq!(part.parts(), &[2, 1]);
        let j = &(&g.inverse().unwrap() * &e13) * &g;
        assert_eq!(j, part.jordan_matrix(fld));
    }

    #[test]
    fn partitions_enumerated() {
        assert_eq!(Partition::all(3).len(), 3);
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(Partition::all(3)[0].parts(), &[3]);
    }
}
