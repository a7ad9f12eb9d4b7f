//! Finite-dimensional *-algebras given by structure constants.
//!
//! Elements are coefficient vectors on a fixed basis `e_0, …, e_{n-1}`. The
//! product is `e_i e_j = Σ_k m[i][j][k] e_k` and the involution is the
//! conjugate-linear map `(Σ c_i e_i)* = Σ conj(c_i) St(e_i)`. Tensor products
//! use the row-major basis `e_i ⊗ f_j ↦ i·dim(B) + j`.

use std::borrow::Cow;

use crate::error::{Error, Result};
use crate::linalg::{Accumulator, SparseVec};
use crate::map::LinearMap;
use crate::report::{sweep, CheckResult, Report};
use crate::scalar::Scalar;

/// Anything with a basis, a bilinear product, a unit and an involution.
pub trait Algebra<S: Scalar>: Sync {
    fn dim(&self) -> usize;
    fn basis_product(&self, i: usize, j: usize) -> Cow<'_, SparseVec<S>>;
    fn basis_star(&self, i: usize) -> Cow<'_, SparseVec<S>>;
    fn unit(&self) -> Cow<'_, SparseVec<S>>;
    fn label(&self) -> String;

    /// `acc += coeff · e_i e_j`.
    fn accumulate_product(&self, i: usize, j: usize, coeff: &S, acc: &mut Accumulator<S>) {
        acc.add_scaled(&self.basis_product(i, j), coeff);
    }

    fn multiply(&self, x: &SparseVec<S>, y: &SparseVec<S>) -> SparseVec<S> {
        let mut acc = Accumulator::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                self.accumulate_product(i, j, &a.mul(b), &mut acc);
            }
        }
        acc.finish()
    }

    fn star(&self, x: &SparseVec<S>) -> SparseVec<S> {
        let mut acc = Accumulator::new();
        for (i, c) in x.iter() {
            acc.add_scaled(&self.basis_star(i), &c.conj());
        }
        acc.finish()
    }
}

/// A *-algebra stored by its structure constants.
#[derive(Clone, Debug)]
pub struct StarAlgebra<S> {
    label: String,
    dim: usize,
    /// `mult[i * dim + j] = e_i e_j`
    mult: Vec<SparseVec<S>>,
    unit: SparseVec<S>,
    /// `star[i] = e_i*`
    star: Vec<SparseVec<S>>,
}

impl<S: Scalar> StarAlgebra<S> {
    pub fn new(
        label: impl Into<String>,
        dim: usize,
        mult: Vec<SparseVec<S>>,
        unit: SparseVec<S>,
        star: Vec<SparseVec<S>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Dimension("algebra dimension must be positive".into()));
        }
        if mult.len() != dim * dim || star.len() != dim {
            return Err(Error::Dimension(format!(
                "expected {} products and {dim} star images, got {} and {}",
                dim * dim,
                mult.len(),
                star.len()
            )));
        }
        let out_of_range = |v: &SparseVec<S>| v.max_index().is_some_and(|m| m >= dim);
        if mult.iter().any(out_of_range) || star.iter().any(out_of_range) || out_of_range(&unit) {
            return Err(Error::Dimension(format!("basis index out of range for dimension {dim}")));
        }
        Ok(Self {
            label: label.into(),
            dim,
            mult,
            unit,
            star,
        })
    }

    /// Build from a list of nonzero structure constants `(i, j, k, m[i][j][k])`.
    pub fn from_constants(
        label: impl Into<String>,
        dim: usize,
        constants: impl IntoIterator<Item = (usize, usize, usize, S)>,
        unit: SparseVec<S>,
        star: Vec<SparseVec<S>>,
    ) -> Result<Self> {
        let mut buckets: Vec<Vec<(usize, S)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::Dimension(format!("structure constant ({i},{j},{k}) out of range")));
            }
            buckets[i * dim + j].push((k, c));
        }
        Self::new(label, dim, buckets.into_iter().map(SparseVec::from_pairs).collect(), unit, star)
    }

    /// The one-dimensional algebra ℂ.
    pub fn scalars() -> Self {
        Self::new("C", 1, vec![SparseVec::basis(0)], SparseVec::basis(0), vec![SparseVec::basis(0)])
            .expect("scalar algebra")
    }

    /// Functions on a finite set of `n` points: orthogonal idempotents with
    /// trivial involution.
    pub fn functions_on_points(n: usize, label: impl Into<String>) -> Result<Self> {
        let constants = (0..n).map(|i| (i, i, i, S::one()));
        let unit = SparseVec::from_dense(&vec![S::one(); n]);
        Self::from_constants(label, n, constants, unit, (0..n).map(SparseVec::basis).collect())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Nonzero structure constants in `(i, j, k)` order.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, usize, &S)> + '_ {
        self.mult.iter().enumerate().flat_map(move |(ij, v)| {
            let (i, j) = (ij / self.dim, ij % self.dim);
            v.iter().map(move |(k, c)| (i, j, k, c))
        })
    }

    /// Matrix of the involution on the basis (conjugation applies to inputs).
    pub fn star_matrix(&self) -> LinearMap<S> {
        LinearMap::from_columns(self.dim, self.star.clone()).expect("star matrix")
    }

    /// `true` when the basis consists of orthogonal self-adjoint idempotents,
    /// i.e. the algebra is literally functions on the index set.
    pub fn is_function_algebra_basis(&self) -> bool {
        (0..self.dim).all(|i| {
            self.star[i].approx_eq(&SparseVec::basis(i))
                && (0..self.dim).all(|j| {
                    let expected = if i == j { SparseVec::basis(i) } else { SparseVec::zero() };
                    self.mult[i * self.dim + j].approx_eq(&expected)
                })
        })
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (i + 1..self.dim).all(|j| self.mult[i * self.dim + j].approx_eq(&self.mult[j * self.dim + i])))
    }

    /// Structural equality (labels ignored).
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.unit.approx_eq(&other.unit)
            && self.mult.iter().zip(&other.mult).all(|(a, b)| a.approx_eq(b))
            && self.star.iter().zip(&other.star).all(|(a, b)| a.approx_eq(b))
    }
}

impl<S: Scalar> Algebra<S> for StarAlgebra<S> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn basis_product(&self, i: usize, j: usize) -> Cow<'_, SparseVec<S>> {
        Cow::Borrowed(&self.mult[i * self.dim + j])
    }

    fn basis_star(&self, i: usize) -> Cow<'_, SparseVec<S>> {
        Cow::Borrowed(&self.star[i])
    }

    fn unit(&self) -> Cow<'_, SparseVec<S>> {
        Cow::Borrowed(&self.unit)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// Lazy view of `L ⊗ R`: products are computed factorwise on demand, so large
/// tensor products never materialize their structure constants.
pub struct Tensor<'a, L: ?Sized, R: ?Sized> {
    pub left: &'a L,
    pub right: &'a R,
}

impl<'a, L: ?Sized, R: ?Sized> Tensor<'a, L, R> {
    pub fn new(left: &'a L, right: &'a R) -> Self {
        Self { left, right }
    }
}

impl<S, L, R> Algebra<S> for Tensor<'_, L, R>
where
    S: Scalar,
    L: Algebra<S> + ?Sized,
    R: Algebra<S> + ?Sized,
{
    fn dim(&self) -> usize {
        self.left.dim() * self.right.dim()
    }

    fn basis_product(&self, p: usize, q: usize) -> Cow<'_, SparseVec<S>> {
        let m = self.right.dim();
        let a = self.left.basis_product(p / m, q / m);
        let b = self.right.basis_product(p % m, q % m);
        Cow::Owned(a.kron(&b, m))
    }

    fn accumulate_product(&self, p: usize, q: usize, coeff: &S, acc: &mut Accumulator<S>) {
        let m = self.right.dim();
        let a = self.left.basis_product(p / m, q / m);
        if a.is_zero() {
            return;
        }
        let b = self.right.basis_product(p % m, q % m);
        for (k, x) in a.iter() {
            let xc = x.mul(coeff);
            for (l, y) in b.iter() {
                acc.add(k * m + l, &xc.mul(y));
            }
        }
    }

    fn basis_star(&self, p: usize) -> Cow<'_, SparseVec<S>> {
        let m = self.right.dim();
        Cow::Owned(self.left.basis_star(p / m).kron(&self.right.basis_star(p % m), m))
    }

    fn unit(&self) -> Cow<'_, SparseVec<S>> {
        Cow::Owned(self.left.unit().kron(&self.right.unit(), self.right.dim()))
    }

    fn label(&self) -> String {
        format!("{}⊗{}", self.left.label(), self.right.label())
    }
}

/// Materialized tensor product `A ⊗ B`.
pub fn tensor_algebra<S: Scalar>(a: &StarAlgebra<S>, b: &StarAlgebra<S>) -> StarAlgebra<S> {
    let view = Tensor::new(a, b);
    let n = view.dim();
    let mult = (0..n * n).map(|pq| view.basis_product(pq / n, pq % n).into_owned()).collect();
    let star = (0..n).map(|p| view.basis_star(p).into_owned()).collect();
    StarAlgebra::new(view.label(), n, mult, view.unit().into_owned(), star).expect("tensor algebra")
}

/// Rank of the span of a list of coefficient vectors of length `dim`.
pub fn rank_of_span<S: Scalar>(vectors: &[SparseVec<S>], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    S::rank(vectors.iter().filter(|v| !v.is_zero()).map(|v| v.to_dense(dim)).collect())
}

/// Check the *-algebra axioms on all basis tuples.
pub fn verify_star_algebra<S: Scalar, A: Algebra<S> + ?Sized>(a: &A) -> Report {
    let n = a.dim();
    let mut report = Report::new::<S>(format!("star algebra {}", a.label()));
    let basis = |i: usize| SparseVec::<S>::basis(i);
    report.push(sweep("associativity", &[n, n, n], |t| {
        let left = a.multiply(&a.basis_product(t[0], t[1]), &basis(t[2]));
        let right = a.multiply(&basis(t[0]), &a.basis_product(t[1], t[2]));
        left.approx_eq(&right)
    }));
    let unit = a.unit();
    report.push(sweep("unit_left", &[n], |t| a.multiply(&unit, &basis(t[0])).approx_eq(&basis(t[0]))));
    report.push(sweep("unit_right", &[n], |t| a.multiply(&basis(t[0]), &unit).approx_eq(&basis(t[0]))));
    report.push(sweep("star_involutive", &[n], |t| a.star(&a.basis_star(t[0])).approx_eq(&basis(t[0]))));
    report.push(sweep("star_antimultiplicative", &[n, n], |t| {
        let lhs = a.star(&a.basis_product(t[0], t[1]));
        let rhs = a.multiply(&a.basis_star(t[1]), &a.basis_star(t[0]));
        lhs.approx_eq(&rhs)
    }));
    report
}

/// Unital, multiplicative and *-preserving checks for `map: src → tgt`.
/// Check names are `"{prefix}unital"`, `"{prefix}multiplicative"` and
/// `"{prefix}star"`.
pub fn check_star_hom<S, A, B>(prefix: &str, map: &LinearMap<S>, src: &A, tgt: &B) -> Vec<CheckResult>
where
    S: Scalar,
    A: Algebra<S> + ?Sized,
    B: Algebra<S> + ?Sized,
{
    let n = src.dim();
    let unital = map.apply(&src.unit()).first_difference(&tgt.unit());
    let images: Vec<&SparseVec<S>> = (0..n).map(|i| map.col(i)).collect();
    vec![
        CheckResult::from_witness(format!("{prefix}unital"), unital.map(|k| vec![k])),
        sweep(&format!("{prefix}multiplicative"), &[n, n], |t| {
            let lhs = map.apply(&src.basis_product(t[0], t[1]));
            let rhs = tgt.multiply(images[t[0]], images[t[1]]);
            lhs.approx_eq(&rhs)
        }),
        sweep(&format!("{prefix}star"), &[n], |t| {
            map.apply(&src.basis_star(t[0])).approx_eq(&tgt.star(images[t[0]]))
        }),
    ]
}

/// Direct sum `⊕ M_{n_b}` with matrix-unit basis, conjugate-transpose
/// involution and the weighted trace `τ(E^b_ij) = w_b δ_ij`.
#[derive(Clone, Debug)]
pub struct BlockAlgebra<S> {
    pub blocks: Vec<usize>,
    pub weights: Vec<S>,
    pub algebra: StarAlgebra<S>,
}

impl<S: Scalar> BlockAlgebra<S> {
    /// Blocks with unit trace weights.
    pub fn new(blocks: &[usize]) -> Result<Self> {
        Self::with_weights(blocks, vec![S::one(); blocks.len()])
    }

    pub fn with_weights(blocks: &[usize], weights: Vec<S>) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::Dimension("block sizes must be positive".into()));
        }
        if weights.len() != blocks.len() || !weights.iter().all(Scalar::is_positive_real) {
            return Err(Error::Dimension("need one positive trace weight per block".into()));
        }
        let offsets = Self::offsets(blocks);
        let dim = offsets[blocks.len()];
        let mut constants = Vec::new();
        let mut unit = Vec::new();
        let mut star = vec![SparseVec::zero(); dim];
        for (b, &n) in blocks.iter().enumerate() {
            let idx = |i: usize, j: usize| offsets[b] + i * n + j;
            for i in 0..n {
                unit.push((idx(i, i), S::one()));
                for j in 0..n {
                    star[idx(i, j)] = SparseVec::basis(idx(j, i));
                    for l in 0..n {
                        constants.push((idx(i, j), idx(j, l), idx(i, l), S::one()));
                    }
                }
            }
        }
        let label = blocks
            .iter()
            .map(|n| if *n == 1 { "C".to_string() } else { format!("M{n}") })
            .collect::<Vec<_>>()
            .join("+");
        let algebra = StarAlgebra::from_constants(label, dim, constants, SparseVec::from_pairs(unit), star)?;
        Ok(Self {
            blocks: blocks.to_vec(),
            weights,
            algebra,
        })
    }

    fn offsets(blocks: &[usize]) -> Vec<usize> {
        let mut out = vec![0];
        for n in blocks {
            out.push(out.last().unwrap() + n * n);
        }
        out
    }

    /// Basis index of the matrix unit `E_ij` in block `b`.
    pub fn matrix_unit(&self, b: usize, i: usize, j: usize) -> usize {
        Self::offsets(&self.blocks)[b] + i * self.blocks[b] + j
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// The weighted trace as a functional.
    pub fn trace(&self) -> LinearMap<S> {
        let mut values = vec![S::zero(); self.dim()];
        for (b, &n) in self.blocks.iter().enumerate() {
            for i in 0..n {
                values[self.matrix_unit(b, i, i)] = self.weights[b].clone();
            }
        }
        LinearMap::functional(&values)
    }

    /// Gram matrix `[τ(e_i* e_j)]` of the trace on the basis.
    pub fn trace_gram(&self) -> Vec<Vec<S>> {
        let tr = self.trace();
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let p = self.algebra.multiply(&self.algebra.basis_star(i), &SparseVec::basis(j));
                        tr.eval(&p)
                    })
                    .collect()
            })
            .collect()
    }

    /// Faithfulness and positivity of the trace via Sylvester's criterion.
    pub fn trace_is_faithful_positive(&self) -> bool {
        S::leading_minors_positive(&self.trace_gram()).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    fn fz2() -> StarAlgebra<Exact> {
        StarAlgebra::functions_on_points(2, "F(Z2)").unwrap()
    }

    #[test]
    fn function_algebra_products() {
        let a = fz2();
        let p = a.multiply(&SparseVec::basis(0), &SparseVec::basis(1));
        assert!(p.is_zero());
        let x = SparseVec::from_dense(&[Exact::from_ratio(2, 3), Exact::from_i64(-5)]);
        assert!(a.multiply(&a.unit(), &x).approx_eq(&x));
        // (i δ_0)* = -i δ_0
        let i = Exact::imag_unit();
        let s = a.star(&SparseVec::single(0, i.clone()));
        assert!(s.approx_eq(&SparseVec::single(0, i.neg())));
        assert!(verify_star_algebra(&a).passed());
        assert!(a.is_function_algebra_basis());
    }

    #[test]
    fn perturbed_structure_constant_breaks_associativity() {
        let a = fz2();
        let mut constants: Vec<_> = a.constants().map(|(i, j, k, c)| (i, j, k, c.clone())).collect();
        constants.push((0, 1, 0, Exact::one()));
        let bad = StarAlgebra::from_constants("bad", 2, constants, a.unit().into_owned(), vec![SparseVec::basis(0), SparseVec::basis(1)]).unwrap();
        let report = verify_star_algebra(&bad);
        assert!(!report.check_passed("associativity"));
    }

    #[test]
    fn tensor_of_function_algebras() {
        let t = tensor_algebra(&fz2(), &fz2());
        assert_eq!(t.dim(), 4);
        assert!(t.unit().approx_eq(&SparseVec::from_dense(&vec![Exact::one(); 4])));
        let f4 = StarAlgebra::<Exact>::functions_on_points(4, "F(Z2xZ2)").unwrap();
        assert!(t.approx_eq(&f4));
        assert!(verify_star_algebra(&t).passed());
    }

    #[test]
    fn block_algebra_m2_plus_c() {
        let b = BlockAlgebra::<Exact>::new(&[2, 1]).unwrap();
        assert_eq!(b.dim(), 5);
        assert!(verify_star_algebra(&b.algebra).passed());
        assert!(b.trace_is_faithful_positive());
        let e12 = b.matrix_unit(0, 0, 1);
        let e21 = b.matrix_unit(0, 1, 0);
        let e11 = b.matrix_unit(0, 0, 0);
        assert!(b.algebra.multiply(&SparseVec::basis(e12), &SparseVec::basis(e21)).approx_eq(&SparseVec::basis(e11)));
        assert!(b.algebra.basis_star(e12).approx_eq(&SparseVec::basis(e21)));
        assert!(!b.algebra.is_commutative());
    }

    #[test]
    fn rank_of_span_examples() {
        let v = vec![
            SparseVec::<Exact>::basis(0),
            SparseVec::basis(1),
            SparseVec::basis(0).add(&SparseVec::basis(1)),
        ];
        assert_eq!(rank_of_span(&v, 2), 2);
        assert_eq!(rank_of_span::<Exact>(&[], 2), 0);
    }
}
