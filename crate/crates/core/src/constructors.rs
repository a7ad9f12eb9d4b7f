//! Function algebras `F(Γ)` and group algebras `ℂ[Γ]` of finite groups.
//!
//! Both use the group's element indices as basis indices: `δ_g` and `λ_g`
//! are basis vector `g`.

use std::sync::Arc;

use crate::algebra::{Algebra, StarAlgebra};
use crate::error::Result;
use crate::fourier::{build_dual, conv_adjoint, convolve, DualPair};
use crate::group::{cyclic, FiniteGroup};
use crate::hopf::{transport, verify_quantum_group, QuantumGroup};
use crate::linalg::SparseVec;
use crate::map::LinearMap;
use crate::report::{sweep, CheckResult, Report};
use crate::scalar::{Float, Scalar};

/// `F(Γ)`: pointwise product, `Δ(δ_g) = Σ_{ab=g} δ_a⊗δ_b`,
/// `ε(δ_g) = δ_{g,e}`, `S(δ_g) = δ_{g⁻¹}`, `h(δ_g) = 1/|Γ|`, `η = δ_e`.
pub fn function_algebra<S: Scalar>(g: &FiniteGroup) -> QuantumGroup<S> {
    let n = g.order();
    let algebra = StarAlgebra::functions_on_points(n, format!("F({})", g.name)).expect("function algebra");
    let mut co = vec![Vec::new(); n];
    for a in 0..n {
        for b in 0..n {
            co[g.mul(a, b)].push((a * n + b, S::one()));
        }
    }
    let coproduct = LinearMap::from_columns(n * n, co.into_iter().map(SparseVec::from_pairs).collect()).expect("coproduct");
    let mut eps = vec![S::zero(); n];
    eps[g.identity()] = S::one();
    let antipode = LinearMap::permutation(&(0..n).map(|x| g.inv(x)).collect::<Vec<_>>(), n).expect("antipode");
    let haar = LinearMap::functional(&vec![S::from_ratio(1, n as i64); n]);
    QuantumGroup::new(
        algebra,
        coproduct,
        LinearMap::functional(&eps),
        antipode,
        Some(haar),
        Some(SparseVec::basis(g.identity())),
    )
    .expect("function algebra data")
}

/// `ℂ[Γ]`: `λ_g λ_h = λ_{gh}`, `λ_g* = λ_{g⁻¹}`, `Δ(λ_g) = λ_g⊗λ_g`,
/// `ε(λ_g) = 1`, `S(λ_g) = λ_{g⁻¹}`, `h(λ_g) = δ_{g,e}`, `η = (1/|Γ|)Σ λ_g`.
pub fn group_algebra<S: Scalar>(g: &FiniteGroup) -> QuantumGroup<S> {
    let n = g.order();
    let constants = (0..n).flat_map(|a| (0..n).map(move |b| (a, b, g.mul(a, b), S::one())));
    let star = (0..n).map(|x| SparseVec::basis(g.inv(x))).collect();
    let algebra = StarAlgebra::from_constants(format!("C[{}]", g.name), n, constants, SparseVec::basis(g.identity()), star)
        .expect("group algebra");
    let coproduct = LinearMap::permutation(&(0..n).map(|x| x * n + x).collect::<Vec<_>>(), n * n).expect("coproduct");
    let antipode = LinearMap::permutation(&(0..n).map(|x| g.inv(x)).collect::<Vec<_>>(), n).expect("antipode");
    let mut haar = vec![S::zero(); n];
    haar[g.identity()] = S::one();
    let eta = SparseVec::from_dense(&vec![S::from_ratio(1, n as i64); n]);
    QuantumGroup::new(
        algebra,
        coproduct,
        LinearMap::functional(&vec![S::one(); n]),
        antipode,
        Some(LinearMap::functional(&haar)),
        Some(eta),
    )
    .expect("group algebra data")
}

/// Cocommutativity: `flip∘Δ = Δ`.
pub fn is_cocommutative<S: Scalar>(g: &QuantumGroup<S>) -> bool {
    let n = g.dim();
    let flip = crate::map::flip::<S>(n, n);
    flip.compose(&g.coproduct).expect("shapes").approx_eq(&g.coproduct)
}

/// The displayed identities for `F(Γ)` and `ℂ[Γ]` and the Hopf isomorphisms
/// `dual(F(Γ)) = ℂ[Γ]`, `dual(ℂ[Γ]) = F(Γ)` on the dual basis.
pub fn check_fundamental_examples<S: Scalar>(g: &FiniteGroup) -> Result<Report> {
    let fun = Arc::new(function_algebra::<S>(g));
    let grp = Arc::new(group_algebra::<S>(g));
    let fun_pair = build_dual(fun.clone())?;
    let grp_pair = build_dual(grp.clone())?;
    let mut report = Report::new::<S>(format!("fundamental examples for {}", g.name));
    report.extend(fundamental_checks(g, &fun_pair, &grp_pair));
    report.push(CheckResult::from_bool("function_algebra_commutative", fun.algebra.is_commutative()));
    report.push(CheckResult::from_bool("group_algebra_cocommutative", is_cocommutative(&grp)));
    report.push(CheckResult::from_bool(
        "function_algebra_cocommutative_iff_abelian",
        is_cocommutative(&fun) == g.is_abelian(),
    ));
    Ok(report)
}

fn fundamental_checks<S: Scalar>(g: &FiniteGroup, fun: &DualPair<S>, grp: &DualPair<S>) -> Vec<CheckResult> {
    let n = g.order();
    let inv_n = S::from_ratio(1, n as i64);
    let e = |i: usize| SparseVec::<S>::basis(i);
    let f = &*fun.primal;
    let c = &*grp.primal;
    let mut out = Vec::new();
    out.push(CheckResult::from_bool("function_eta", f.haar_element.approx_eq(&e(g.identity()))));
    out.push(CheckResult::from_bool(
        "group_eta",
        c.haar_element.approx_eq(&SparseVec::from_dense(&vec![inv_n.clone(); n])) && c.haar_of_eta().approx_eq(&inv_n),
    ));
    out.push(sweep("function_convolution", &[n, n], |t| {
        convolve(f, &e(t[0]), &e(t[1])).approx_eq(&e(g.mul(t[0], t[1])).scale(&inv_n))
    }));
    out.push(sweep("group_convolution", &[n, n], |t| {
        let expected = if t[0] == t[1] { e(t[1]) } else { SparseVec::zero() };
        convolve(c, &e(t[0]), &e(t[1])).approx_eq(&expected)
    }));
    out.push(sweep("function_conv_adjoint", &[n], |t| conv_adjoint(f, &e(t[0])).approx_eq(&e(g.inv(t[0])))));
    out.push(sweep("group_conv_adjoint", &[n], |t| conv_adjoint(c, &e(t[0])).approx_eq(&e(t[0]))));
    // 𝓕(δ_g) = (1/|Γ|) δ_g*, which the isomorphism sends to λ_g/|Γ|
    out.push(sweep("function_fourier", &[n], |t| fun.fourier(&e(t[0])).approx_eq(&e(t[0]).scale(&inv_n))));
    out.push(sweep("function_fourier_product", &[n, n], |t| {
        let lhs = fun.dual.algebra.multiply(&fun.fourier(&e(t[0])), &fun.fourier(&e(t[1])));
        lhs.approx_eq(&fun.fourier(&e(g.mul(t[0], t[1]))).scale(&inv_n))
    }));
    // Δ̂(𝓕(δ_g)) evaluated on c_1⊗c_2 is h(c_1 c_2 δ_g) = c_1(g)c_2(g)/|Γ|,
    // which is |Γ| times 𝓕(δ_g)⊗𝓕(δ_g); this is the scaling the Hopf
    // isomorphism 𝓕(δ_g) ↦ λ_g/|Γ| requires.
    let order = S::from_i64(n as i64);
    out.push(sweep("function_fourier_coproduct", &[n], |t| {
        let x = fun.fourier(&e(t[0]));
        fun.dual.coproduct.apply(&x).approx_eq(&x.kron(&x, n).scale(&order))
    }));
    out.push(sweep("group_fourier", &[n], |t| grp.fourier(&e(t[0])).approx_eq(&e(g.inv(t[0])))));
    let iso = fun.dual.differences(c);
    out.push(CheckResult::from_bool("dual_of_function_algebra", iso.is_empty()).with_note(describe(&iso)));
    let iso = grp.dual.differences(f);
    out.push(CheckResult::from_bool("dual_of_group_algebra", iso.is_empty()).with_note(describe(&iso)));
    out
}

fn describe(diffs: &[&str]) -> String {
    if diffs.is_empty() {
        "equal on all structure constants".into()
    } else {
        format!("differs in {}", diffs.join(", "))
    }
}

/// Float-only check that `ℂ[Z_n]` becomes `F(Z_n)` in the basis
/// `e_k = (1/n) Σ_g ω^{-kg} λ_g`, `ω = exp(2πi/n)`.
pub fn check_pontryagin_cyclic(n: usize) -> Result<Report> {
    let z = cyclic(n)?;
    let grp = group_algebra::<Float>(&z);
    let fun = function_algebra::<Float>(&z);
    let cols = (0..n)
        .map(|k| {
            SparseVec::from_dense(
                &(0..n)
                    .map(|g| {
                        let theta = -2.0 * std::f64::consts::PI * ((k * g) % n) as f64 / n as f64;
                        Float::from_polar(1.0 / n as f64, theta)
                    })
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let t = LinearMap::from_columns(n, cols)?;
    let moved = transport(&grp, &t, format!("C[{}] in character basis", z.name))?;
    let mut report = Report::new::<Float>(format!("Pontryagin duality for {}", z.name));
    let diffs = moved.differences(&fun);
    report.push(CheckResult::from_bool("character_basis_matches_function_algebra", diffs.is_empty()).with_note(describe(&diffs)));
    report.absorb("transported", verify_quantum_group(&moved));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{named_group, symmetric};
    use crate::hopf::{check_hw_identity, solve_haar_element, solve_haar_state};
    use crate::scalar::Exact;

    #[test]
    fn z2_coproduct_and_eta() {
        let z2 = cyclic(2).unwrap();
        let f = function_algebra::<Exact>(&z2);
        // Δ(δ_1) = δ_0⊗δ_1 + δ_1⊗δ_0
        assert!(f.coproduct.col(1).approx_eq(&SparseVec::from_pairs([(1, Exact::one()), (2, Exact::one())])));
        assert!(f.haar_element.approx_eq(&SparseVec::basis(0)));
        assert!(f.algebra.is_commutative());
    }

    #[test]
    fn group_law_in_group_algebra() {
        let z3 = cyclic(3).unwrap();
        let c = group_algebra::<Exact>(&z3);
        let p = c.algebra.multiply(&SparseVec::basis(1), &SparseVec::basis(2));
        assert!(p.approx_eq(&SparseVec::basis(0)));
        let s3 = symmetric(3).unwrap();
        let c = group_algebra::<Exact>(&s3);
        for g in 0..6 {
            assert!(c.algebra.basis_star(g).approx_eq(&SparseVec::basis(s3.inv(g))));
        }
    }

    #[test]
    fn solvers_match_constructors() {
        // hand values: h(δ_g) = 1/3 on F(Z_3), h(λ_g) = δ_{g,e} on C[Z_2]
        let z3 = cyclic(3).unwrap();
        let f = function_algebra::<Exact>(&z3);
        let h = solve_haar_state(&f.algebra, &f.coproduct).unwrap();
        assert_eq!(h.values(), vec![Exact::from_ratio(1, 3); 3]);
        let z2 = cyclic(2).unwrap();
        let c = group_algebra::<Exact>(&z2);
        let h = solve_haar_state(&c.algebra, &c.coproduct).unwrap();
        assert_eq!(h.values(), vec![Exact::one(), Exact::zero()]);
        let eta = solve_haar_element(&c.algebra, &c.counit).unwrap();
        assert!(eta.approx_eq(&SparseVec::from_dense(&[Exact::from_ratio(1, 2), Exact::from_ratio(1, 2)])));
        let z6 = cyclic(6).unwrap();
        assert_eq!(function_algebra::<Exact>(&z6).haar_of_eta(), Exact::from_ratio(1, 6));
    }

    #[test]
    fn verification_passes_and_detects_broken_coproduct() {
        let z4 = cyclic(4).unwrap();
        let f = function_algebra::<Exact>(&z4);
        assert!(verify_quantum_group(&f).passed());
        assert!(check_hw_identity(&f).passed());
        let c = group_algebra::<Exact>(&symmetric(3).unwrap());
        assert!(verify_quantum_group(&c).passed());
        let mut broken = f.clone();
        // swap the roles of δ_1 and δ_3 in the output of Δ
        let perm = LinearMap::permutation(&[0, 3, 2, 1], 4).unwrap();
        broken.coproduct = perm.kron(&LinearMap::identity(4)).compose(&f.coproduct).unwrap();
        let r = verify_quantum_group(&broken);
        assert!(!r.check_passed("coassociativity") || !r.check_passed("antipode_left"));
    }

    #[test]
    fn fundamental_examples_small_groups() {
        for name in ["Z4", "S3", "Q8"] {
            let g = named_group(name).unwrap();
            let r = check_fundamental_examples::<Exact>(&g).unwrap();
            assert!(r.passed(), "{}", r.render_table());
        }
    }

    #[test]
    fn dual_coproduct_scaling_on_function_algebra() {
        let z3 = cyclic(3).unwrap();
        let pair = build_dual(Arc::new(function_algebra::<Exact>(&z3))).unwrap();
        let x = pair.fourier(&SparseVec::basis(1));
        let co = pair.dual.coproduct.apply(&x);
        assert!(co.approx_eq(&x.kron(&x, 3).scale(&Exact::from_i64(3))));
        assert!(!co.approx_eq(&x.kron(&x, 3).scale(&Exact::from_ratio(1, 3))));
    }

    #[test]
    fn pontryagin_float() {
        for n in [2, 5, 6] {
            let r = check_pontryagin_cyclic(n).unwrap();
            assert!(r.passed(), "{}", r.render_table());
        }
    }
}
