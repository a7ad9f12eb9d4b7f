//! Built-in families and matrices, positive and negative, used by the
//! self-test and the test suites.

use std::sync::Arc;

use crate::algebra::{Algebra, BlockAlgebra, StarAlgebra};
use crate::classical::{universal_family_on, MagicMatrix};
use crate::constructors::{function_algebra, group_algebra};
use crate::error::Result;
use crate::family::{Duality, QuantumFamily};
use crate::group::{cyclic, klein4, symmetric, FiniteGroup};
use crate::hopf::QuantumGroup;
use crate::linalg::SparseVec;
use crate::map::LinearMap;
use crate::scalar::Scalar;

/// Which algebra of the classical group a family lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourceKind {
    Functions,
    GroupAlgebra,
}

/// A family together with the duality of its source and the expected
/// outcomes.
#[derive(Clone, Debug)]
pub struct FamilyFixture<S> {
    pub name: &'static str,
    pub family: QuantumFamily<S>,
    pub duality: Arc<Duality<S>>,
    pub group: FiniteGroup,
    pub kind: SourceKind,
    pub expect_automorphism: bool,
    /// Expected outcome of the action equation, when the parameter algebra
    /// carries a coproduct.
    pub expect_action: Option<bool>,
}

/// A magic-matrix fixture without a family behind it.
#[derive(Clone, Debug)]
pub struct MatrixFixture<S> {
    pub name: &'static str,
    pub matrix: MagicMatrix<S>,
    pub expect_magic: bool,
}

struct Source<S> {
    group: FiniteGroup,
    kind: SourceKind,
    qg: Arc<QuantumGroup<S>>,
    duality: Arc<Duality<S>>,
}

impl<S: Scalar> Source<S> {
    fn new(group: FiniteGroup, kind: SourceKind) -> Result<Self> {
        let qg = Arc::new(match kind {
            SourceKind::Functions => function_algebra(&group),
            SourceKind::GroupAlgebra => group_algebra(&group),
        });
        let duality = Arc::new(Duality::new(qg.clone())?);
        Ok(Self { group, kind, qg, duality })
    }

    fn fixture(&self, name: &'static str, family: QuantumFamily<S>, expect_automorphism: bool, expect_action: Option<bool>) -> FamilyFixture<S> {
        FamilyFixture {
            name,
            family: family.with_label(name),
            duality: self.duality.clone(),
            group: self.group.clone(),
            kind: self.kind,
            expect_automorphism,
            expect_action,
        }
    }
}

/// `a ↦ a⊗1` with parameter algebra `F(trivial group)`, so that it also
/// carries a (trivial) coproduct.
pub fn identity_with_trivial_hopf<S: Scalar>(source: Arc<QuantumGroup<S>>) -> Result<QuantumFamily<S>> {
    let trivial = function_algebra::<S>(&cyclic(1)?);
    let n = source.dim();
    QuantumFamily::new(
        "identity",
        source,
        Arc::new(trivial.algebra.clone()),
        LinearMap::identity(n),
        Some(Arc::new(trivial.bialgebra())),
    )
}

/// `a ↦ ε(a)1⊗1` with `B = ℂ`.
pub fn counit_collapse<S: Scalar>(source: Arc<QuantumGroup<S>>) -> Result<QuantumFamily<S>> {
    let n = source.dim();
    let unit = source.algebra.unit().into_owned();
    let cols = (0..n).map(|i| unit.scale(&source.counit.entry(0, i))).collect();
    let alpha = LinearMap::from_columns(n, cols)?;
    QuantumFamily::new("counit collapse", source, Arc::new(StarAlgebra::scalars()), alpha, None)
}

/// Left translation `α(δ_y) = Σ_g δ_{gy}⊗δ_g` on `F(Γ)` with `B = F(Γ)`.
pub fn translation<S: Scalar>(source: Arc<QuantumGroup<S>>, g: &FiniteGroup) -> Result<QuantumFamily<S>> {
    let n = g.order();
    let b = function_algebra::<S>(g);
    let cols = (0..n)
        .map(|y| SparseVec::from_pairs((0..n).map(|h| (g.mul(h, y) * n + h, S::one()))))
        .collect();
    let alpha = LinearMap::from_columns(n * n, cols)?;
    QuantumFamily::new("translation", source, Arc::new(b.algebra.clone()), alpha, Some(Arc::new(b.bialgebra())))
}

/// `a ↦ c·a⊗1` for a diagonal rescaling `δ_g ↦ c_g δ_g` with `B = ℂ`.
pub fn diagonal_twist<S: Scalar>(source: Arc<QuantumGroup<S>>, weights: &[S]) -> Result<QuantumFamily<S>> {
    let n = source.dim();
    let cols = weights.iter().enumerate().map(|(i, c)| SparseVec::single(i, c.clone())).collect();
    let alpha = LinearMap::from_columns(n, cols)?;
    QuantumFamily::new("diagonal twist", source, Arc::new(StarAlgebra::scalars()), alpha, None)
}

/// The universal family with the points of `Aut(Γ)` relabelled by swapping
/// the first two, which breaks the action equation but nothing else.
fn permuted_parameters<S: Scalar>(source: Arc<QuantumGroup<S>>, g: &FiniteGroup) -> Result<QuantumFamily<S>> {
    let u = universal_family_on(source, g)?;
    let qf = u.family;
    let m = qf.dim_target();
    let swap = |k: usize| match k {
        0 => 1,
        1 => 0,
        k => k,
    };
    let cols = qf.alpha.columns().iter().map(|c| c.map_indices(|idx| (idx / m) * m + swap(idx % m))).collect();
    let alpha = LinearMap::from_columns(qf.alpha.target_dim(), cols)?;
    QuantumFamily::new("permuted parameters", qf.source, qf.target, alpha, qf.hopf_on_target)
}

/// `α(λ_x) = λ_x⊗g` on `ℂ[Γ]` where `g` is the sign function on `Z_2`.
fn grouplike_scaling<S: Scalar>(source: Arc<QuantumGroup<S>>) -> Result<QuantumFamily<S>> {
    let b = function_algebra::<S>(&cyclic(2)?);
    let n = source.dim();
    let g = SparseVec::from_dense(&[S::one(), S::one().neg()]);
    let cols = (0..n).map(|x| SparseVec::basis(x).kron(&g, 2)).collect();
    let alpha = LinearMap::from_columns(2 * n, cols)?;
    QuantumFamily::new("grouplike scaling", source, Arc::new(b.algebra.clone()), alpha, Some(Arc::new(b.bialgebra())))
}

/// Sign of a permutation in `S_3`, read off from element orders.
fn sign_on_s3<S: Scalar>(g: &FiniteGroup) -> Vec<S> {
    g.orders()
        .into_iter()
        .map(|o| if o == 2 { S::one().neg() } else { S::one() })
        .collect()
}

/// The family catalog. Every entry records whether it should be an
/// automorphism family; the negative entries each break a different set of
/// predicates.
pub fn family_catalog<S: Scalar>() -> Result<Vec<FamilyFixture<S>>> {
    let fz4 = Source::<S>::new(cyclic(4)?, SourceKind::Functions)?;
    let gz4 = Source::<S>::new(cyclic(4)?, SourceKind::GroupAlgebra)?;
    let fz3 = Source::<S>::new(cyclic(3)?, SourceKind::Functions)?;
    let fs3 = Source::<S>::new(symmetric(3)?, SourceKind::Functions)?;
    let fk4 = Source::<S>::new(klein4()?, SourceKind::Functions)?;
    let universal = |s: &Source<S>| universal_family_on(s.qg.clone(), &s.group).map(|u| u.family);
    let phase = vec![S::imag_unit(); fz3.group.order()];
    Ok(vec![
        fz4.fixture("identity on F(Z4)", identity_with_trivial_hopf(fz4.qg.clone())?, true, Some(true)),
        gz4.fixture("identity on C[Z4]", identity_with_trivial_hopf(gz4.qg.clone())?, true, Some(true)),
        fz4.fixture("universal Aut(Z4)", universal(&fz4)?, true, Some(true)),
        fs3.fixture("universal Aut(S3)", universal(&fs3)?, true, Some(true)),
        fk4.fixture("universal Aut(K4)", universal(&fk4)?, true, Some(true)),
        fs3.fixture("counit collapse on F(S3)", counit_collapse(fs3.qg.clone())?, false, None),
        fs3.fixture("translation on F(S3)", translation(fs3.qg.clone(), &fs3.group)?, false, Some(true)),
        fs3.fixture("sign twist on F(S3)", diagonal_twist(fs3.qg.clone(), &sign_on_s3(&fs3.group))?, false, None),
        fz3.fixture("phase twist on F(Z3)", diagonal_twist(fz3.qg.clone(), &phase)?, false, None),
        fs3.fixture("permuted parameters on F(S3)", permuted_parameters(fs3.qg.clone(), &fs3.group)?, true, Some(false)),
        gz4.fixture("grouplike scaling on C[Z4]", grouplike_scaling(gz4.qg.clone())?, false, Some(true)),
    ])
}

/// Stand-alone matrices for the magic-unitary check.
pub fn matrix_catalog<S: Scalar>() -> Result<Vec<MatrixFixture<S>>> {
    let c2 = Arc::new(StarAlgebra::<S>::functions_on_points(2, "C+C")?);
    let (a, b) = (SparseVec::basis(0), SparseVec::basis(1));
    let rows_only = MagicMatrix::from_entries(c2, vec![vec![a.clone(), b.clone()], vec![a, b]], None)?;

    let m2 = BlockAlgebra::<S>::new(&[2])?;
    let half = S::from_ratio(1, 2);
    let q = SparseVec::from_pairs((0..4).map(|k| (k, half.clone())));
    let unit = m2.algebra.unit().into_owned();
    let q_perp = unit.sub(&q);
    let magic = MagicMatrix::from_entries(
        Arc::new(m2.algebra.clone()),
        vec![vec![q.clone(), q_perp.clone()], vec![q_perp, q]],
        None,
    )?;
    Ok(vec![
        MatrixFixture {
            name: "rows-only stochastic over C+C",
            matrix: rows_only,
            expect_magic: false,
        },
        MatrixFixture {
            name: "2x2 magic over M2",
            matrix: magic,
            expect_magic: true,
        },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::check_magic_unitary;
    use crate::family::{check_family, is_automorphism_family};
    use crate::scalar::Exact;

    #[test]
    fn catalog_matches_expectations() {
        for f in family_catalog::<Exact>().unwrap() {
            let v = is_automorphism_family(&f.family, &f.duality).unwrap();
            assert_eq!(v.is_automorphism, f.expect_automorphism, "{}\n{}", f.name, v.report.render_table());
        }
    }

    #[test]
    fn counit_collapse_fails_podles_only_among_family_checks() {
        let g = Arc::new(function_algebra::<Exact>(&symmetric(3).unwrap()));
        let r = check_family(&counit_collapse(g).unwrap());
        assert!(r.check_passed("unital_star_hom"));
        assert!(!r.check_passed("podles"));
    }

    #[test]
    fn matrices() {
        for m in matrix_catalog::<Exact>().unwrap() {
            assert_eq!(check_magic_unitary(&m.matrix).passed(), m.expect_magic, "{}", m.name);
        }
    }
}
