//! Linear maps between coefficient spaces, stored column-sparse.

use crate::error::{Error, Result};
use crate::linalg::{invert, Accumulator, SparseVec};
use crate::scalar::Scalar;

/// Matrix of a linear map `source → target`; column `j` is the image of the
/// `j`-th source basis vector.
#[derive(Clone, Debug)]
pub struct LinearMap<S> {
    source_dim: usize,
    target_dim: usize,
    cols: Vec<SparseVec<S>>,
    pub source: String,
    pub target: String,
}

impl<S: Scalar> LinearMap<S> {
    pub fn from_columns(target_dim: usize, cols: Vec<SparseVec<S>>) -> Result<Self> {
        if let Some(bad) = cols.iter().position(|c| c.max_index().is_some_and(|m| m >= target_dim)) {
            return Err(Error::Dimension(format!(
                "column {bad} has an entry outside target dimension {target_dim}"
            )));
        }
        Ok(Self {
            source_dim: cols.len(),
            target_dim,
            cols,
            source: String::new(),
            target: String::new(),
        })
    }

    /// Build from a dense `target_dim × source_dim` matrix given by rows.
    pub fn from_rows(rows: &[Vec<S>], source_dim: usize) -> Result<Self> {
        if let Some(r) = rows.iter().position(|r| r.len() != source_dim) {
            return Err(Error::Dimension(format!("row {r} does not have {source_dim} entries")));
        }
        let mut cols = vec![Vec::new(); source_dim];
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    cols[j].push((i, x.clone()));
                }
            }
        }
        Self::from_columns(rows.len(), cols.into_iter().map(SparseVec::from_pairs).collect())
    }

    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        Self::from_columns(target_dim, vec![SparseVec::zero(); source_dim]).expect("zero map")
    }

    pub fn identity(n: usize) -> Self {
        Self::from_columns(n, (0..n).map(SparseVec::basis).collect()).expect("identity map")
    }

    /// The map sending basis vector `j` to basis vector `perm[j]`.
    pub fn permutation(perm: &[usize], target_dim: usize) -> Result<Self> {
        Self::from_columns(target_dim, perm.iter().map(|&i| SparseVec::basis(i)).collect())
    }

    /// A functional (`1 × n` matrix) from its values on the basis.
    pub fn functional(values: &[S]) -> Self {
        Self::from_columns(1, values.iter().map(|v| SparseVec::single(0, v.clone())).collect())
            .expect("functional")
    }

    pub fn labelled(mut self, source: impl Into<String>, target: impl Into<String>) -> Self {
        self.source = source.into();
        self.target = target.into();
        self
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn col(&self, j: usize) -> &SparseVec<S> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<S>] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> S {
        self.cols[j].get(i)
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        let mut rows = vec![vec![S::zero(); self.source_dim]; self.target_dim];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                rows[i][j] = x.clone();
            }
        }
        rows
    }

    pub fn apply(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let mut acc = Accumulator::new();
        for (j, c) in v.iter() {
            acc.add_scaled(&self.cols[j], c);
        }
        acc.finish()
    }

    pub fn apply_dense(&self, v: &[S]) -> Vec<S> {
        self.apply(&SparseVec::from_dense(v)).to_dense(self.target_dim)
    }

    /// `(self ⊗ id)(v)` where the untouched right factor has dimension `right_dim`.
    pub fn apply_left_factor(&self, v: &SparseVec<S>, right_dim: usize) -> SparseVec<S> {
        let mut acc = Accumulator::new();
        for (idx, c) in v.iter() {
            let (i, j) = (idx / right_dim, idx % right_dim);
            for (k, x) in self.cols[i].iter() {
                acc.add(k * right_dim + j, &x.mul(c));
            }
        }
        acc.finish()
    }

    /// `(id ⊗ self)(v)`.
    pub fn apply_right_factor(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let mut acc = Accumulator::new();
        for (idx, c) in v.iter() {
            let (i, j) = (idx / self.source_dim, idx % self.source_dim);
            for (k, x) in self.cols[j].iter() {
                acc.add(i * self.target_dim + k, &x.mul(c));
            }
        }
        acc.finish()
    }

    /// Value of a functional (`target_dim == 1`) on `v`.
    pub fn eval(&self, v: &SparseVec<S>) -> S {
        debug_assert_eq!(self.target_dim, 1);
        let mut acc = S::zero();
        for (j, c) in v.iter() {
            acc.add_assign(&self.cols[j].get(0).mul(c));
        }
        acc
    }

    /// Values of a functional on the basis.
    pub fn values(&self) -> Vec<S> {
        self.cols.iter().map(|c| c.get(0)).collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if inner.target_dim != self.source_dim {
            return Err(Error::Dimension(format!(
                "cannot compose {}→{} after {}→{}",
                self.source_dim, self.target_dim, inner.source_dim, inner.target_dim
            )));
        }
        Ok(Self {
            source_dim: inner.source_dim,
            target_dim: self.target_dim,
            cols: inner.cols.iter().map(|c| self.apply(c)).collect(),
            source: inner.source.clone(),
            target: self.target.clone(),
        })
    }

    /// Tensor product `self ⊗ other` on row-major tensor bases.
    pub fn kron(&self, other: &Self) -> Self {
        let mut cols = Vec::with_capacity(self.source_dim * other.source_dim);
        for a in &self.cols {
            for b in &other.cols {
                cols.push(a.kron(b, other.target_dim));
            }
        }
        Self {
            source_dim: self.source_dim * other.source_dim,
            target_dim: self.target_dim * other.target_dim,
            cols,
            source: join_labels(&self.source, &other.source),
            target: join_labels(&self.target, &other.target),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Self {
            cols: self.cols.iter().map(|v| v.scale(c)).collect(),
            ..self.clone()
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect(),
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect(),
            ..self.clone()
        })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.source_dim != other.source_dim || self.target_dim != other.target_dim {
            return Err(Error::Dimension(format!(
                "{}×{} vs {}×{}",
                self.target_dim, self.source_dim, other.target_dim, other.source_dim
            )));
        }
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut cols = vec![Vec::new(); self.target_dim];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c.iter() {
                cols[i].push((j, x.clone()));
            }
        }
        Self {
            source_dim: self.target_dim,
            target_dim: self.source_dim,
            cols: cols.into_iter().map(SparseVec::from_pairs).collect(),
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    /// First `(row, col)` where the matrices differ; shape mismatches report
    /// `(usize::MAX, usize::MAX)`.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.source_dim != other.source_dim || self.target_dim != other.target_dim {
            return Some((usize::MAX, usize::MAX));
        }
        self.cols
            .iter()
            .zip(&other.cols)
            .enumerate()
            .find_map(|(j, (a, b))| a.first_difference(b).map(|i| (i, j)))
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }

    pub fn rank(&self) -> usize {
        S::rank(self.transpose().cols.iter().map(|c| c.to_dense(self.source_dim)).collect())
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.source_dim != self.target_dim {
            return Err(Error::Dimension("inverse of a non-square map".into()));
        }
        let inv = invert(&self.to_rows())
            .ok_or_else(|| Error::LinearSystem("map is not invertible".into()))?;
        Ok(Self::from_rows(&inv, self.source_dim)?.labelled(self.target.clone(), self.source.clone()))
    }
}

fn join_labels(a: &str, b: &str) -> String {
    if a.is_empty() && b.is_empty() {
        String::new()
    } else {
        format!("{a}⊗{b}")
    }
}

/// The flip `A ⊗ B → B ⊗ A`.
pub fn flip<S: Scalar>(dim_a: usize, dim_b: usize) -> LinearMap<S> {
    let perm: Vec<usize> = (0..dim_a * dim_b)
        .map(|idx| {
            let (i, j) = (idx / dim_b, idx % dim_b);
            j * dim_a + i
        })
        .collect();
    LinearMap::permutation(&perm, dim_a * dim_b).expect("flip permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    #[test]
    fn flip_is_involutive_and_swaps_factors() {
        let f: LinearMap<Exact> = flip(2, 3);
        let g: LinearMap<Exact> = flip(3, 2);
        assert!(g.compose(&f).unwrap().approx_eq(&LinearMap::identity(6)));
        // e_0 ⊗ f_1 ↦ f_1 ⊗ e_0
        let image = f.apply(&SparseVec::basis(1));
        assert!(image.approx_eq(&SparseVec::basis(2)));
    }

    #[test]
    fn kron_matches_componentwise_action() {
        let a = LinearMap::from_rows(&[vec![Exact::from_i64(1), Exact::from_i64(2)]], 2).unwrap();
        let b: LinearMap<Exact> = LinearMap::identity(2);
        let k = a.kron(&b);
        assert_eq!((k.source_dim(), k.target_dim()), (4, 2));
        // (a ⊗ id)(e_1 ⊗ f_0) = 2 f_0
        assert_eq!(k.apply(&SparseVec::basis(2)).get(0), Exact::from_i64(2));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = LinearMap::from_rows(
            &[
                vec![Exact::from_i64(1), Exact::from_i64(1)],
                vec![Exact::from_i64(0), Exact::from_i64(2)],
            ],
            2,
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.compose(&inv).unwrap().approx_eq(&LinearMap::identity(2)));
        assert_eq!(m.rank(), 2);
    }
}
