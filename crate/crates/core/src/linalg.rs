//! Sparse coefficient vectors and small dense solvers.

use std::collections::BTreeMap;

use crate::scalar::Scalar;

/// Coefficient vector stored as `(index, value)` pairs sorted by index with
/// no zero entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseVec<S> {
    entries: Vec<(usize, S)>,
}

impl<S: Scalar> Default for SparseVec<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> SparseVec<S> {
    pub fn zero() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn basis(i: usize) -> Self {
        Self::single(i, S::one())
    }

    pub fn single(i: usize, c: S) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { entries: vec![(i, c)] }
        }
    }

    pub fn from_dense(coeffs: &[S]) -> Self {
        Self {
            entries: coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i, c.clone()))
                .collect(),
        }
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, S)>) -> Self {
        let mut acc = Accumulator::new();
        for (i, c) in pairs {
            acc.add(i, &c);
        }
        acc.finish()
    }

    pub fn to_dense(&self, dim: usize) -> Vec<S> {
        let mut out = vec![S::zero(); dim];
        for (i, c) in &self.entries {
            out[*i] = c.clone();
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &S)> + '_ {
        self.entries.iter().map(|(i, c)| (*i, c))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|(_, c)| c.is_zero())
    }

    pub fn get(&self, i: usize) -> S {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(pos) => self.entries[pos].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            entries: self
                .entries
                .iter()
                .map(|(i, x)| (*i, x.mul(c)))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(i, x)| (*i, x.conj())).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(i, x)| (*i, x.neg())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, subtract: bool) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (j, y) = b.next().unwrap();
                    out.push((*j, if subtract { y.neg() } else { y.clone() }));
                }
                (Some((i, _)), Some((j, _))) => {
                    if i < j {
                        out.push(a.next().unwrap().clone());
                    } else if j < i {
                        let (j, y) = b.next().unwrap();
                        out.push((*j, if subtract { y.neg() } else { y.clone() }));
                    } else {
                        let (i, x) = a.next().unwrap();
                        let (_, y) = b.next().unwrap();
                        let v = if subtract { x.sub(y) } else { x.add(y) };
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                    }
                }
            }
        }
        Self { entries: out }
    }

    /// Smallest index where `self` and `other` differ, if any.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.sub(other).entries.iter().find(|(_, c)| !c.is_zero()).map(|(i, _)| *i)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    /// Kronecker product with row-major index `i * right_dim + j`.
    pub fn kron(&self, other: &Self, right_dim: usize) -> Self {
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (i, x) in &self.entries {
            for (j, y) in &other.entries {
                let v = x.mul(y);
                if !v.is_zero() {
                    entries.push((i * right_dim + j, v));
                }
            }
        }
        Self { entries }
    }

    /// Euclidean pairing without conjugation, `Σ x_i y_i`.
    pub fn dot(&self, other: &Self) -> S {
        let mut acc = S::zero();
        let mut b = other.entries.iter().peekable();
        for (i, x) in &self.entries {
            while let Some((j, _)) = b.peek() {
                if j < i {
                    b.next();
                } else {
                    break;
                }
            }
            if let Some((j, y)) = b.peek() {
                if j == i {
                    acc.add_assign(&x.mul(y));
                }
            }
        }
        acc
    }

    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        Self::from_pairs(self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }
}

/// Sparse accumulation buffer with deterministic (ascending) output order.
#[derive(Debug)]
pub struct Accumulator<S> {
    map: BTreeMap<usize, S>,
}

impl<S: Scalar> Default for Accumulator<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar> Accumulator<S> {
    pub fn new() -> Self {
        Self { map: BTreeMap::new() }
    }

    pub fn add(&mut self, i: usize, c: &S) {
        if c.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(v) => v.add_assign(c),
            None => {
                self.map.insert(i, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, v: &SparseVec<S>, c: &S) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (i, x) in v.iter() {
            if unit {
                self.add(i, x);
            } else {
                self.add(i, &x.mul(c));
            }
        }
    }

    pub fn finish(self) -> SparseVec<S> {
        SparseVec {
            entries: self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

/// Outcome of a linear solve.
#[derive(Clone, Debug, PartialEq)]
pub enum Solution<S> {
    Unique(Vec<S>),
    Inconsistent,
    Underdetermined { nullity: usize },
}

struct Echelon<S> {
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

/// Gauss–Jordan elimination to reduced row echelon form on an augmented
/// matrix; pivots are searched only among the first `pivot_cols` columns.
fn rref<S: Scalar>(mut rows: Vec<Vec<S>>, pivot_cols: usize) -> Echelon<S> {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let nrows = rows.len();
    let mut pivots = Vec::new();
    let mut k = 0;
    for col in 0..pivot_cols {
        if k == nrows {
            break;
        }
        let (best, weight) = (k..nrows)
            .map(|r| (r, rows[r][col].pivot_weight()))
            .fold((k, 0.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if weight == 0.0 {
            continue;
        }
        rows.swap(k, best);
        let inv = rows[k][col].inv().expect("nonzero pivot");
        let width = rows[k].len();
        for j in col..width {
            rows[k][j] = rows[k][j].mul(&inv);
        }
        let pivot_row = rows[k].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == k || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for j in col..width {
                if !pivot_row[j].is_zero() {
                    row[j] = row[j].sub(&f.mul(&pivot_row[j]));
                }
            }
        }
        pivots.push(col);
        k += 1;
    }
    Echelon { rows, pivots }
}

/// Solve `rows · x = rhs` for `x` with `unknowns` entries.
pub fn solve<S: Scalar>(rows: &[Vec<S>], rhs: &[S], unknowns: usize) -> Solution<S> {
    let aug: Vec<Vec<S>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(b.clone());
            v
        })
        .collect();
    let ech = rref(aug, unknowns);
    for row in ech.rows.iter().skip(ech.pivots.len()) {
        if !row[unknowns].is_zero() {
            return Solution::Inconsistent;
        }
    }
    if ech.pivots.len() < unknowns {
        return Solution::Underdetermined {
            nullity: unknowns - ech.pivots.len(),
        };
    }
    let mut x = vec![S::zero(); unknowns];
    for (r, &c) in ech.pivots.iter().enumerate() {
        x[c] = ech.rows[r][unknowns].clone();
    }
    Solution::Unique(x)
}

/// Rank of a set of sparse vectors by incremental echelon form keyed on the
/// leading index. Cheap when the vectors stay sparse.
pub fn sparse_rank<S: Scalar>(vectors: impl IntoIterator<Item = SparseVec<S>>) -> usize {
    let mut basis: BTreeMap<usize, SparseVec<S>> = BTreeMap::new();
    for mut v in vectors {
        while let Some((p, c)) = v.entries.first().cloned() {
            match basis.get(&p) {
                Some(b) => v = v.sub(&b.scale(&c)),
                None => {
                    let inv = c.inv().expect("nonzero pivot");
                    basis.insert(p, v.scale(&inv));
                    break;
                }
            }
        }
    }
    basis.len()
}

/// Dimension of the solution space of the homogeneous system `rows · x = 0`.
pub fn nullity<S: Scalar>(rows: &[Vec<S>], unknowns: usize) -> usize {
    unknowns - rref(rows.to_vec(), unknowns).pivots.len()
}

/// Inverse of a square matrix given by rows.
pub fn invert<S: Scalar>(m: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = m.len();
    let aug: Vec<Vec<S>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..n).map(|j| if i == j { S::one() } else { S::zero() }));
            v
        })
        .collect();
    let ech = rref(aug, n);
    if ech.pivots.len() < n {
        return None;
    }
    Some(ech.rows.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    fn q(n: i64) -> Exact {
        Exact::from_i64(n)
    }

    #[test]
    fn sparse_rank_matches_dense_rank() {
        let v = vec![
            SparseVec::from_dense(&[q(1), q(2), q(0)]),
            SparseVec::from_dense(&[q(2), q(4), q(0)]),
            SparseVec::from_dense(&[q(0), q(1), q(1)]),
            SparseVec::from_dense(&[q(1), q(3), q(1)]),
        ];
        assert_eq!(sparse_rank(v.clone()), 2);
        assert_eq!(sparse_rank(v.clone()), Exact::rank(v.iter().map(|x| x.to_dense(3)).collect()));
        assert_eq!(sparse_rank(Vec::<SparseVec<Exact>>::new()), 0);
        assert_eq!(sparse_rank(vec![SparseVec::<Exact>::zero()]), 0);
    }

    #[test]
    fn sparse_arithmetic() {
        let a = SparseVec::from_pairs(vec![(2, q(1)), (0, q(3)), (2, q(-1))]);
        assert_eq!(a.nnz(), 1);
        assert_eq!(a.get(0), q(3));
        let b = SparseVec::basis(0).scale(&q(3));
        assert!(a.approx_eq(&b));
        assert_eq!(a.sub(&SparseVec::basis(1)).first_difference(&a), Some(1));
        let k = SparseVec::<Exact>::basis(1).kron(&SparseVec::basis(2), 3);
        assert_eq!(k.to_dense(6)[5], q(1));
    }

    #[test]
    fn solve_and_invert() {
        let rows = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        match solve(&rows, &[q(3), q(4)], 2) {
            Solution::Unique(x) => assert_eq!(x, vec![q(1), q(1)]),
            other => panic!("{other:?}"),
        }
        let inv = invert(&rows).unwrap();
        assert_eq!(inv[0][0], Exact::from_ratio(3, 5));
        assert!(invert(&[vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
        assert_eq!(solve(&[vec![q(1), q(1)]], &[q(1)], 2), Solution::Underdetermined { nullity: 1 });
        assert_eq!(solve(&[vec![q(0), q(0)]], &[q(1)], 2), Solution::Inconsistent);
        assert_eq!(nullity(&[vec![q(1), q(1)]], 2), 1);
    }
}
