//! Values recomputed by hand or by brute force, independently of the
//! library code paths they are compared against.

use std::collections::BTreeSet;
use std::sync::Arc;

use fqg_core::algebra::{tensor_algebra, Algebra};
use fqg_core::classical::{
    check_dualact_consequences, check_order_properties, enumerate_automorphisms, extract_matrix,
    universal_classical_family,
};
use fqg_core::constructors::{function_algebra, group_algebra};
use fqg_core::family::{check_action, check_convolution_preservation, compose, is_automorphism_family, Duality, QuantumFamily};
use fqg_core::fixtures::counit_collapse;
use fqg_core::fourier::{convolve, fourier_matrix};
use fqg_core::group::{cyclic, dihedral, klein4, quaternion8, symmetric, FiniteGroup};
use fqg_core::linalg::SparseVec;
use fqg_core::oracle::brute_force_automorphisms;
use fqg_core::{Exact, Scalar};

fn q(num: i64, den: i64) -> Exact {
    Exact::from_ratio(num, den)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Point of the parameter space selected by `k`, read off the columns of `α`.
fn slice_at(qf: &QuantumFamily<Exact>, k: usize) -> Vec<usize> {
    let m = qf.dim_target();
    (0..qf.dim_source())
        .map(|y| {
            let hits: Vec<usize> = qf
                .alpha
                .col(y)
                .iter()
                .filter(|(idx, c)| idx % m == k && c.is_one())
                .map(|(idx, _)| idx / m)
                .collect();
            assert_eq!(hits.len(), 1, "slice {k} at {y} is not a point map");
            hits[0]
        })
        .collect()
}

#[test]
fn cyclic_automorphisms_are_multiplication_by_units() {
    for n in 2..=9 {
        let g = cyclic(n).unwrap();
        let expected: BTreeSet<Vec<usize>> = (1..n)
            .filter(|&k| gcd(k, n) == 1)
            .map(|k| (0..n).map(|x| (k * x) % n).collect())
            .collect();
        let found: BTreeSet<Vec<usize>> = enumerate_automorphisms(&g).into_iter().collect();
        assert_eq!(found, expected, "Z{n}");
    }
    assert_eq!(enumerate_automorphisms(&cyclic(1).unwrap()).len(), 1);
}

#[test]
fn known_automorphism_orders_agree_with_brute_force() {
    let cases: Vec<(FiniteGroup, usize)> = vec![
        (cyclic(8).unwrap(), 4),
        (klein4().unwrap(), 6),
        (symmetric(3).unwrap(), 6),
        (dihedral(4).unwrap(), 8),
        (quaternion8().unwrap(), 24),
        (cyclic(2).unwrap().product(&cyclic(4).unwrap()), 8),
    ];
    for (g, order) in cases {
        let fast: BTreeSet<Vec<usize>> = enumerate_automorphisms(&g).into_iter().collect();
        let slow: BTreeSet<Vec<usize>> = brute_force_automorphisms(&g).unwrap().into_iter().collect();
        assert_eq!(fast, slow, "{}", g.name);
        assert_eq!(fast.len(), order, "{}", g.name);
    }
    assert_eq!(enumerate_automorphisms(&symmetric(4).unwrap()).len(), 24);
}

#[test]
fn haar_data_by_hand() {
    for n in [2usize, 3] {
        let g = cyclic(n).unwrap();
        let f = function_algebra::<Exact>(&g);
        assert_eq!(f.haar_state.values(), vec![q(1, n as i64); n]);
        assert!(f.haar_element.approx_eq(&SparseVec::basis(0)));
        assert_eq!(f.haar_of_eta(), q(1, n as i64));

        let c = group_algebra::<Exact>(&g);
        let mut expected = vec![Exact::zero(); n];
        expected[0] = Exact::one();
        assert_eq!(c.haar_state.values(), expected);
        assert!(c.haar_element.approx_eq(&SparseVec::from_dense(&vec![q(1, n as i64); n])));
        assert_eq!(c.haar_of_eta(), q(1, n as i64));
    }
}

#[test]
fn tensor_of_function_algebras_is_function_algebra_of_product() {
    let z2 = cyclic(2).unwrap();
    let f = function_algebra::<Exact>(&z2);
    let t = tensor_algebra(&f.algebra, &f.algebra);
    let p = function_algebra::<Exact>(&z2.product(&z2));
    assert!(t.approx_eq(&p.algebra));
    let z3 = cyclic(3).unwrap();
    let f3 = function_algebra::<Exact>(&z3);
    let t = tensor_algebra(&f.algebra, &f3.algebra);
    assert!(t.approx_eq(&function_algebra::<Exact>(&z2.product(&z3)).algebra));
}

#[test]
fn convolution_by_hand() {
    // δ_a⋆δ_b = δ_{ab}/|Γ| on F(Γ); λ_a⋆λ_b = δ_{a,b}λ_a on ℂ[Γ]
    for g in [dihedral(4).unwrap(), quaternion8().unwrap()] {
        let n = g.order();
        let f = function_algebra::<Exact>(&g);
        let c = group_algebra::<Exact>(&g);
        for a in 0..n {
            for b in 0..n {
                let lhs = convolve(&f, &SparseVec::basis(a), &SparseVec::basis(b));
                assert!(lhs.approx_eq(&SparseVec::single(g.mul(a, b), q(1, n as i64))));
                let lhs = convolve(&c, &SparseVec::basis(a), &SparseVec::basis(b));
                let rhs = if a == b { SparseVec::basis(a) } else { SparseVec::zero() };
                assert!(lhs.approx_eq(&rhs));
            }
        }
    }
}

#[test]
fn fourier_matrices_by_hand() {
    // F[i][j] = h(e_i e_j)
    let g = symmetric(3).unwrap();
    let n = g.order();
    let f = fourier_matrix(&function_algebra::<Exact>(&g));
    let c = fourier_matrix(&group_algebra::<Exact>(&g));
    for i in 0..n {
        for j in 0..n {
            let expected_f = if i == j { q(1, n as i64) } else { Exact::zero() };
            let expected_c = if g.mul(i, j) == g.identity() { Exact::one() } else { Exact::zero() };
            assert_eq!(f.entry(i, j), expected_f);
            assert_eq!(c.entry(i, j), expected_c);
        }
    }
}

#[test]
fn universal_matrix_entries_count_automorphisms() {
    // p_{x,y} = Σ_{ψ(y)=x} δ_ψ
    let g = cyclic(5).unwrap();
    let u = universal_classical_family::<Exact>(&g).unwrap();
    let m = extract_matrix(&u.family, &g).unwrap();
    for x in 0..5 {
        for y in 0..5 {
            let expected = SparseVec::from_pairs(
                u.automorphisms
                    .iter()
                    .enumerate()
                    .filter(|(_, psi)| psi[y] == x)
                    .map(|(k, _)| (k, Exact::one())),
            );
            assert!(m.p(x, y).approx_eq(&expected), "p({x},{y})");
        }
    }
}

#[test]
fn counit_collapse_matrix() {
    // every δ_y goes to δ_{y,e}·1, so p_{x,y} = δ_{y,e} for every x
    let g = symmetric(3).unwrap();
    let qf = counit_collapse(Arc::new(function_algebra::<Exact>(&g))).unwrap();
    let m = extract_matrix(&qf, &g).unwrap();
    for x in 0..6 {
        for y in 0..6 {
            let expected = if y == g.identity() { SparseVec::basis(0) } else { SparseVec::zero() };
            assert!(m.p(x, y).approx_eq(&expected), "p({x},{y})");
        }
    }
}

#[test]
fn composition_slices_compose_automorphisms() {
    for g in [cyclic(5).unwrap(), symmetric(3).unwrap()] {
        let u = universal_classical_family::<Exact>(&g).unwrap();
        let m = u.automorphisms.len();
        let c = compose(&u.family, &u.family).unwrap();
        assert_eq!(c.dim_target(), m * m);
        for (k1, phi) in u.automorphisms.iter().enumerate() {
            for (k2, psi) in u.automorphisms.iter().enumerate() {
                let composed: Vec<usize> = psi.iter().map(|&y| phi[y]).collect();
                assert_eq!(slice_at(&c, k1 * m + k2), composed, "{} ({k1},{k2})", g.name);
            }
        }
        let d = Duality::new(c.source.clone()).unwrap();
        assert!(is_automorphism_family(&c, &d).unwrap().is_automorphism, "{}", g.name);
    }
}

#[test]
fn composition_is_associative() {
    let g = cyclic(3).unwrap();
    let u = universal_classical_family::<Exact>(&g).unwrap().family;
    let left = compose(&compose(&u, &u).unwrap(), &u).unwrap();
    let right = compose(&u, &compose(&u, &u).unwrap()).unwrap();
    assert!(left.alpha.approx_eq(&right.alpha));
    assert_eq!(left.dim_target(), 8);
}

#[test]
fn translation_is_not_an_automorphism_but_is_an_action() {
    use fqg_core::fixtures::translation;
    let g = symmetric(3).unwrap();
    let source = Arc::new(function_algebra::<Exact>(&g));
    let qf = translation(source.clone(), &g).unwrap();
    assert!(check_action(&qf).unwrap().passed());
    let d = Duality::new(source).unwrap();
    assert!(!is_automorphism_family(&qf, &d).unwrap().is_automorphism);
}

#[test]
fn order_mismatch_on_z6() {
    let g = cyclic(6).unwrap();
    let u = universal_classical_family::<Exact>(&g).unwrap();
    let m = extract_matrix(&u.family, &g).unwrap();
    let orders = g.orders();
    for x in 0..6 {
        for y in 0..6 {
            if orders[x] != orders[y] {
                assert!(m.p(x, y).is_zero(), "p({x},{y})");
            }
        }
    }
    assert!(check_order_properties(&m).unwrap().passed());
    assert!(check_dualact_consequences(&m).unwrap().passed());
}

#[test]
fn unit_of_tensor_is_product_of_units() {
    let f = function_algebra::<Exact>(&cyclic(3).unwrap());
    let c = group_algebra::<Exact>(&cyclic(2).unwrap());
    let t = tensor_algebra(&f.algebra, &c.algebra);
    let expected = f.algebra.unit().kron(&c.algebra.unit(), 2);
    assert!(t.unit().approx_eq(&expected));
}

#[test]
fn counit_collapse_breaks_convolution() {
    // ε(δ_a⋆δ_b) = δ_{ab,e}/|Γ| while ε(δ_a)ε(δ_b)h(1) = δ_{a,e}δ_{b,e}
    let g = symmetric(3).unwrap();
    let qf = counit_collapse(Arc::new(function_algebra::<Exact>(&g))).unwrap();
    let d = Duality::new(qf.source.clone()).unwrap();
    let r = check_convolution_preservation(&qf, &d).unwrap();
    assert_eq!(r.failures(), vec!["conv_product", "haar_element", "haar_state"]);
}

#[test]
fn composing_with_the_identity_family() {
    // B⊗ℂ and ℂ⊗B carry the same indices as B
    let g = symmetric(3).unwrap();
    let u = universal_classical_family::<Exact>(&g).unwrap().family;
    let id = QuantumFamily::identity(u.source.clone());
    for c in [compose(&id, &u).unwrap(), compose(&u, &id).unwrap()] {
        assert_eq!(c.dim_target(), u.dim_target());
        assert!(c.alpha.approx_eq(&u.alpha));
        assert!(c.target.approx_eq(&u.target));
    }
}
