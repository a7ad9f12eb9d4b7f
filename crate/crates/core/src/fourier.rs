//! Convolution calculus, the Fourier transform and the dual quantum group.
//!
//! The dual `Â` is written in the abstract dual basis `e_i*` with
//! `e_i*(e_j) = δ_ij`, so `𝓕(a) = h(· a)` has matrix `F[i][j] = h(e_i e_j)`.
//! The double dual is identified with `A` by evaluation, `e_i** = e_i`.

use std::sync::Arc;

use crate::algebra::{Algebra, StarAlgebra};
use crate::error::{Error, Result};
use crate::hopf::{verify_quantum_group, QuantumGroup};
use crate::linalg::{Accumulator, SparseVec};
use crate::map::LinearMap;
use crate::report::{sweep, CheckResult, Report};
use crate::scalar::Scalar;

/// `a ⋆ b = (h⊗id)(((S⊗id)Δ(b))(a⊗1))`.
pub fn convolve<S: Scalar>(g: &QuantumGroup<S>, a: &SparseVec<S>, b: &SparseVec<S>) -> SparseVec<S> {
    let n = g.dim();
    // h(S(e_i) a) for each i that occurs in Δ(b)
    let mut weights: Vec<Option<S>> = vec![None; n];
    let mut acc = Accumulator::new();
    for (j, bj) in b.iter() {
        for (idx, c) in g.coproduct.col(j).iter() {
            let i = idx / n;
            let w = weights[i].get_or_insert_with(|| g.h(&g.algebra.multiply(g.antipode.col(i), a)));
            if !w.is_zero() {
                acc.add(idx % n, &c.mul(bj).mul(w));
            }
        }
    }
    acc.finish()
}

/// `a• = S(a*)`.
pub fn conv_adjoint<S: Scalar>(g: &QuantumGroup<S>, a: &SparseVec<S>) -> SparseVec<S> {
    g.antipode.apply(&g.algebra.star(a))
}

/// `A` with the convolution product, unit `η/h(η)` and involution `•`.
pub fn conv_algebra<S: Scalar>(g: &QuantumGroup<S>) -> Result<StarAlgebra<S>> {
    let n = g.dim();
    let mut mult = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            mult.push(convolve(g, &SparseVec::basis(i), &SparseVec::basis(j)));
        }
    }
    let inv = g
        .haar_of_eta()
        .inv()
        .ok_or_else(|| Error::Duality("h(eta) vanishes".into()))?;
    let star = (0..n).map(|i| conv_adjoint(g, &SparseVec::basis(i))).collect();
    StarAlgebra::new(format!("conv {}", g.label()), n, mult, g.haar_element.scale(&inv), star)
}

/// Fourier matrix `F[i][j] = h(e_i e_j)`.
pub fn fourier_matrix<S: Scalar>(g: &QuantumGroup<S>) -> LinearMap<S> {
    let n = g.dim();
    let cols = (0..n)
        .map(|j| SparseVec::from_pairs((0..n).map(|i| (i, g.h(&g.algebra.basis_product(i, j))))))
        .collect();
    LinearMap::from_columns(n, cols).expect("square Fourier matrix")
}

/// A quantum group together with its dual and both Fourier transforms.
#[derive(Clone, Debug)]
pub struct DualPair<S> {
    pub primal: Arc<QuantumGroup<S>>,
    pub dual: Arc<QuantumGroup<S>>,
    /// `𝓕: A → Â`.
    pub fourier: LinearMap<S>,
    pub fourier_inverse: LinearMap<S>,
    /// `𝓕̂: Â → A` (double dual identified with `A`).
    pub fourier_dual: LinearMap<S>,
}

/// Hopf data of `Â` on the dual basis, before the Haar data is attached.
fn dual_structure<S: Scalar>(g: &QuantumGroup<S>) -> Result<(StarAlgebra<S>, LinearMap<S>, LinearMap<S>, LinearMap<S>)> {
    let n = g.dim();
    let a = &g.algebra;
    // e_i* e_j* = Σ_k ⟨Δ(e_k), e_i⊗e_j⟩ e_k*
    let mut constants = Vec::new();
    for k in 0..n {
        for (idx, c) in g.coproduct.col(k).iter() {
            constants.push((idx / n, idx % n, k, c.clone()));
        }
    }
    let unit = SparseVec::from_dense(&g.counit.values());
    // (e_i*)*(e_k) = conj(e_i*(S(e_k)*))
    let mut star_pairs: Vec<Vec<(usize, S)>> = vec![Vec::new(); n];
    for k in 0..n {
        let v = a.star(g.antipode.col(k));
        for (i, c) in v.iter() {
            star_pairs[i].push((k, c.conj()));
        }
    }
    let star = star_pairs.into_iter().map(SparseVec::from_pairs).collect();
    let algebra = StarAlgebra::from_constants(format!("dual {}", g.label()), n, constants, unit, star)?;
    // Δ̂(e_k*) = Σ m[i][j][k] e_i*⊗e_j*
    let mut co: Vec<Vec<(usize, S)>> = vec![Vec::new(); n];
    for (i, j, k, c) in g.algebra.constants() {
        co[k].push((i * n + j, c.clone()));
    }
    let coproduct = LinearMap::from_columns(n * n, co.into_iter().map(SparseVec::from_pairs).collect())?;
    let counit = LinearMap::functional(&a.unit().to_dense(n));
    let antipode = g.antipode.transpose();
    Ok((algebra, coproduct, counit, antipode))
}

/// Build `Ĝ` and the Fourier transforms.
pub fn build_dual<S: Scalar>(g: Arc<QuantumGroup<S>>) -> Result<DualPair<S>> {
    let n = g.dim();
    let fourier = fourier_matrix(&g);
    let fourier_inverse = fourier
        .inverse()
        .map_err(|_| Error::Duality(format!("Fourier transform of {} is singular", g.label())))?;
    let h_eta = g.haar_of_eta();
    let (algebra, coproduct, counit, antipode) = dual_structure(&g)?;
    // ĥ(e_i*) = h(η) ε(𝓕⁻¹ e_i*)
    let haar: Vec<S> = (0..n).map(|i| h_eta.mul(&g.epsilon(fourier_inverse.col(i)))).collect();
    let haar_element = fourier.apply(&algebra_unit(&g));
    let dual = QuantumGroup::new(
        algebra,
        coproduct,
        counit,
        antipode,
        Some(LinearMap::functional(&haar)),
        Some(haar_element),
    )?;
    let fourier_dual = fourier_matrix(&dual);
    Ok(DualPair {
        primal: g,
        dual: Arc::new(dual),
        fourier,
        fourier_inverse,
        fourier_dual,
    })
}

fn algebra_unit<S: Scalar>(g: &QuantumGroup<S>) -> SparseVec<S> {
    g.algebra.unit().into_owned()
}

impl<S: Scalar> DualPair<S> {
    pub fn dim(&self) -> usize {
        self.primal.dim()
    }

    /// `𝓕(a)` in dual-basis coordinates.
    pub fn fourier(&self, a: &SparseVec<S>) -> SparseVec<S> {
        self.fourier.apply(a)
    }

    /// The pair for `Ĝ`, whose dual is the double dual of `G`.
    pub fn of_dual(&self) -> Result<DualPair<S>> {
        build_dual(self.dual.clone())
    }
}

/// Every convolution and Fourier identity on all basis elements and pairs.
pub fn verify_fourier_identities<S: Scalar>(p: &DualPair<S>) -> Report {
    let g = &*p.primal;
    let d = &*p.dual;
    let n = g.dim();
    let mut report = Report::new::<S>(format!("Fourier identities for {}", g.label()));
    let e = |i: usize| SparseVec::<S>::basis(i);
    let f = |v: &SparseVec<S>| p.fourier.apply(v);
    let h_eta = g.haar_of_eta();
    let unit = algebra_unit(g);

    report.push(CheckResult::from_bool("fourier_invertible", p.fourier.rank() == n));
    report.push(sweep("fourier_convolution", &[n, n], |t| {
        f(&convolve(g, &e(t[0]), &e(t[1]))).approx_eq(&d.algebra.multiply(&f(&e(t[0])), &f(&e(t[1]))))
    }));
    report.push(sweep("fourier_adjoint", &[n], |t| {
        d.algebra.star(&f(&e(t[0]))).approx_eq(&f(&conv_adjoint(g, &e(t[0]))))
    }));
    report.push(CheckResult::from_witness(
        "antipode_fourier",
        d.antipode
            .compose(&p.fourier)
            .expect("shapes")
            .first_difference(&p.fourier.compose(&g.antipode).expect("shapes"))
            .map(|(i, j)| vec![i, j]),
    ));
    report.push(sweep("dual_convolution", &[n, n], |t| {
        let lhs = f(&g.algebra.basis_product(t[0], t[1])).scale(&h_eta);
        lhs.approx_eq(&convolve(d, &f(&e(t[1])), &f(&e(t[0]))))
    }));
    report.push(sweep("counit_convolution", &[n, n], |t| {
        let lhs = g.epsilon(&convolve(g, &e(t[0]), &e(t[1])));
        lhs.approx_eq(&g.h(&g.algebra.multiply(g.antipode.col(t[1]), &e(t[0]))))
    }));
    report.push(sweep("fourier_conv_adjoint", &[n], |t| {
        conv_adjoint(d, &f(&e(t[0]))).approx_eq(&f(&g.algebra.basis_star(t[0])))
    }));
    report.push(sweep("convolution_associative", &[n, n, n], |t| {
        let left = convolve(g, &convolve(g, &e(t[0]), &e(t[1])), &e(t[2]));
        left.approx_eq(&convolve(g, &e(t[0]), &convolve(g, &e(t[1]), &e(t[2]))))
    }));
    report.push(sweep("convolution_unit", &[n], |t| {
        let expected = unit.scale(&g.h(&e(t[0])));
        convolve(g, &unit, &e(t[0])).approx_eq(&expected) && convolve(g, &e(t[0]), &unit).approx_eq(&expected)
    }));
    report.push(sweep("conv_adjoint_involutive", &[n], |t| {
        conv_adjoint(g, &conv_adjoint(g, &e(t[0]))).approx_eq(&e(t[0]))
    }));
    report.push(sweep("conv_adjoint_antimultiplicative", &[n, n], |t| {
        let lhs = conv_adjoint(g, &convolve(g, &e(t[0]), &e(t[1])));
        lhs.approx_eq(&convolve(g, &conv_adjoint(g, &e(t[1])), &conv_adjoint(g, &e(t[0]))))
    }));
    report.push(CheckResult::from_bool("dual_haar_of_eta", d.haar_of_eta().approx_eq(&h_eta)));
    let dual_unit = match h_eta.inv() {
        Some(inv) => f(&g.haar_element.scale(&inv)).approx_eq(&d.algebra.unit()),
        None => false,
    };
    report.push(CheckResult::from_bool("dual_unit", dual_unit));
    report.absorb("dual", verify_quantum_group(d));
    report
}

/// `𝓕̂∘𝓕 = h(η)S` and `(𝓕̂∘𝓕)² = h(η)² id`.
pub fn check_iteration_lemma<S: Scalar>(p: &DualPair<S>) -> Report {
    let g = &*p.primal;
    let n = g.dim();
    let h_eta = g.haar_of_eta();
    let mut report = Report::new::<S>(format!("Fourier iteration on {}", g.label()));
    let ff = p.fourier_dual.compose(&p.fourier).expect("square maps");
    report.push(CheckResult::from_witness(
        "fourier_twice_is_antipode",
        ff.first_difference(&g.antipode.scale(&h_eta)).map(|(i, j)| vec![i, j]),
    ));
    let ff2 = ff.compose(&ff).expect("square maps");
    report.push(CheckResult::from_witness(
        "fourier_four_times_is_identity",
        ff2.first_difference(&LinearMap::identity(n).scale(&h_eta.mul(&h_eta))).map(|(i, j)| vec![i, j]),
    ));
    report
}

/// `build_dual(build_dual(G))` equals `G` under the evaluation map.
pub fn check_double_dual<S: Scalar>(p: &DualPair<S>) -> Result<CheckResult> {
    let again = p.of_dual()?;
    let diffs = again.dual.differences(&p.primal);
    Ok(if diffs.is_empty() {
        CheckResult::pass("double_dual")
    } else {
        CheckResult::fail("double_dual", vec![0]).with_note(format!("differs in {}", diffs.join(", ")))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{function_algebra, group_algebra};
    use crate::group::{cyclic, dihedral, symmetric};
    use crate::scalar::Exact;

    fn q(num: i64, den: i64) -> Exact {
        Exact::from_ratio(num, den)
    }

    #[test]
    fn convolution_on_function_algebra() {
        let s3 = symmetric(3).unwrap();
        let f = function_algebra::<Exact>(&s3);
        for a in 0..6 {
            for b in 0..6 {
                let got = convolve(&f, &SparseVec::basis(a), &SparseVec::basis(b));
                assert!(got.approx_eq(&SparseVec::single(s3.mul(a, b), q(1, 6))));
            }
            let adj = conv_adjoint(&f, &SparseVec::basis(a));
            assert!(adj.approx_eq(&SparseVec::basis(s3.inv(a))));
        }
    }

    #[test]
    fn convolution_on_group_algebra() {
        let z3 = cyclic(3).unwrap();
        let g = group_algebra::<Exact>(&z3);
        for a in 0..3 {
            for b in 0..3 {
                let got = convolve(&g, &SparseVec::basis(a), &SparseVec::basis(b));
                let expected = if a == b { SparseVec::basis(b) } else { SparseVec::zero() };
                assert!(got.approx_eq(&expected));
            }
            assert!(conv_adjoint(&g, &SparseVec::basis(a)).approx_eq(&SparseVec::basis(a)));
        }
    }

    #[test]
    fn fourier_of_group_algebra_is_inverse_point_mass() {
        let d4 = dihedral(4).unwrap();
        let p = build_dual(Arc::new(group_algebra::<Exact>(&d4))).unwrap();
        for x in 0..8 {
            assert!(p.fourier(&SparseVec::basis(x)).approx_eq(&SparseVec::basis(d4.inv(x))));
        }
        assert!(verify_fourier_identities(&p).passed());
    }

    #[test]
    fn iteration_on_z5() {
        for g in [function_algebra::<Exact>(&cyclic(5).unwrap()), group_algebra::<Exact>(&cyclic(5).unwrap())] {
            let p = build_dual(Arc::new(g)).unwrap();
            let ff = p.fourier_dual.compose(&p.fourier).unwrap();
            assert!(ff.approx_eq(&p.primal.antipode.scale(&q(1, 5))));
            assert!(check_iteration_lemma(&p).passed());
            assert!(check_double_dual(&p).unwrap().pass);
        }
    }

    #[test]
    fn wrong_antipode_breaks_fourier_identities() {
        let mut g = function_algebra::<Exact>(&symmetric(3).unwrap());
        // a cyclic shift of the points; not symmetric, so Ŝ = Sᵀ cannot match
        let shift: Vec<usize> = (0..6).map(|i| (i + 1) % 6).collect();
        g.antipode = LinearMap::permutation(&shift, 6).unwrap();
        let p = build_dual(Arc::new(g)).unwrap();
        let r = verify_fourier_identities(&p);
        assert!(!r.check_passed("antipode_fourier"));
    }
}
