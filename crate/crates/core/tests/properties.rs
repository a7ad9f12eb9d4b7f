//! Property tests for the algebraic invariants, on random exact data.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use fqg_core::algebra::{tensor_algebra, Algebra, BlockAlgebra, StarAlgebra};
use fqg_core::classical::enumerate_automorphisms;
use fqg_core::constructors::{function_algebra, group_algebra};
use fqg_core::family::{compose, double_hat, hat, hat_formulas, is_automorphism_family, Duality, QuantumFamily};
use fqg_core::fourier::convolve;
use fqg_core::group::{cyclic, symmetric, FiniteGroup};
use fqg_core::hopf::QuantumGroup;
use fqg_core::linalg::SparseVec;
use fqg_core::map::LinearMap;
use fqg_core::{Exact, Scalar};

struct Setting {
    group: FiniteGroup,
    source: Arc<QuantumGroup<Exact>>,
    duality: Duality<Exact>,
    auts: Vec<Vec<usize>>,
}

impl Setting {
    fn new(group: FiniteGroup, functions: bool) -> Self {
        let source = Arc::new(if functions {
            function_algebra(&group)
        } else {
            group_algebra(&group)
        });
        let duality = Duality::new(source.clone()).unwrap();
        let auts = enumerate_automorphisms(&group);
        Self {
            group,
            source,
            duality,
            auts,
        }
    }
}

fn settings() -> &'static [Setting] {
    static CELL: OnceLock<Vec<Setting>> = OnceLock::new();
    CELL.get_or_init(|| {
        vec![
            Setting::new(symmetric(3).unwrap(), true),
            Setting::new(symmetric(3).unwrap(), false),
            Setting::new(cyclic(4).unwrap(), true),
            Setting::new(cyclic(5).unwrap(), false),
        ]
    })
}

fn scalar() -> impl Strategy<Value = Exact> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3).prop_map(|(a, b, c, d)| Exact::complex(a, b, c, d))
}

fn element(dim: usize) -> impl Strategy<Value = SparseVec<Exact>> {
    prop::collection::vec(scalar(), dim).prop_map(|v| SparseVec::from_dense(&v))
}

/// The first `dim` coordinates of a random vector.
fn cut(v: &SparseVec<Exact>, dim: usize) -> SparseVec<Exact> {
    SparseVec::from_pairs(v.iter().filter(|(i, _)| *i < dim).map(|(i, c)| (i, c.clone())))
}

fn block_algebra() -> impl Strategy<Value = StarAlgebra<Exact>> {
    prop::collection::vec(1usize..=2, 1..=2).prop_map(|b| BlockAlgebra::<Exact>::new(&b).unwrap().algebra)
}

/// A family with `B = ℂ^k` whose k slices are the given permutations.
fn point_family(s: &Setting, perms: &[Vec<usize>]) -> QuantumFamily<Exact> {
    let n = s.group.order();
    let k = perms.len();
    let target = Arc::new(StarAlgebra::functions_on_points(k, format!("C^{k}")).unwrap());
    let cols = (0..n)
        .map(|y| SparseVec::from_pairs(perms.iter().enumerate().map(|(j, p)| (p[y] * k + j, Exact::one()))))
        .collect();
    let alpha = LinearMap::from_columns(n * k, cols).unwrap();
    QuantumFamily::new("points", s.source.clone(), target, alpha, None).unwrap()
}

/// Permutations fixing the identity element, so both automorphisms and
/// arbitrary relabellings occur.
fn perms_for(s: &Setting, picks: &[(bool, usize, Vec<usize>)]) -> Vec<Vec<usize>> {
    let n = s.group.order();
    let e = s.group.identity();
    picks
        .iter()
        .map(|(use_aut, idx, shuffle)| {
            if *use_aut {
                s.auts[idx % s.auts.len()].clone()
            } else {
                let mut rest: Vec<usize> = (0..n).filter(|&x| x != e).collect();
                let len = rest.len();
                for (i, r) in shuffle.iter().enumerate().take(len) {
                    rest.swap(i, i + r % (len - i));
                }
                let mut p = vec![e; n];
                let others: Vec<usize> = (0..n).filter(|&x| x != e).collect();
                for (x, y) in others.into_iter().zip(rest) {
                    p[x] = y;
                }
                p
            }
        })
        .collect()
}

fn pick() -> impl Strategy<Value = (bool, usize, Vec<usize>)> {
    (any::<bool>(), 0usize..64, prop::collection::vec(0usize..64, 6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hat_formulas_agree_on_linear_maps(which in 0usize..4, m in 1usize..=2, seed in prop::collection::vec(scalar(), 72)) {
        let s = &settings()[which];
        let n = s.source.dim();
        let target = Arc::new(StarAlgebra::functions_on_points(m, "B").unwrap());
        let cols = (0..n)
            .map(|j| SparseVec::from_dense(&(0..n * m).map(|i| seed[(j * n * m + i) % seed.len()].clone()).collect::<Vec<_>>()))
            .collect();
        let alpha = LinearMap::from_columns(n * m, cols).unwrap();
        let qf = QuantumFamily::new("random", s.source.clone(), target, alpha, None).unwrap();
        let (first, second) = hat_formulas(&qf, &s.duality.pair).unwrap();
        prop_assert!(first.approx_eq(&second));
        let (twice, expected) = double_hat(&qf, &s.duality).unwrap();
        prop_assert!(twice.alpha.approx_eq(&expected));
    }

    #[test]
    fn tensor_product_is_associative(a in block_algebra(), b in block_algebra(), c in block_algebra()) {
        let left = tensor_algebra(&tensor_algebra(&a, &b), &c);
        let right = tensor_algebra(&a, &tensor_algebra(&b, &c));
        prop_assert!(left.approx_eq(&right));
    }

    #[test]
    fn star_is_an_antimultiplicative_involution(alg in block_algebra(), x in element(8), y in element(8)) {
        let d = alg.dim();
        let x = cut(&x, d);
        let y = cut(&y, d);
        prop_assert!(alg.star(&alg.star(&x)).approx_eq(&x));
        let lhs = alg.star(&alg.multiply(&x, &y));
        let rhs = alg.multiply(&alg.star(&y), &alg.star(&x));
        prop_assert!(lhs.approx_eq(&rhs));
    }

    #[test]
    fn star_on_quantum_groups(which in 0usize..4, x in element(6), y in element(6)) {
        let g = &settings()[which].source;
        let a = &g.algebra;
        let d = g.dim();
        let x = cut(&x, d);
        let y = cut(&y, d);
        prop_assert!(a.star(&a.star(&x)).approx_eq(&x));
        prop_assert!(a.star(&a.multiply(&x, &y)).approx_eq(&a.multiply(&a.star(&y), &a.star(&x))));
    }

    #[test]
    fn convolution_is_associative_with_unit_absorbing(which in 0usize..4, x in element(6), y in element(6), z in element(6)) {
        let g = &*settings()[which].source;
        let d = g.dim();
        let (x, y, z) = (
            cut(&x, d),
            cut(&y, d),
            cut(&z, d),
        );
        let left = convolve(g, &convolve(g, &x, &y), &z);
        let right = convolve(g, &x, &convolve(g, &y, &z));
        prop_assert!(left.approx_eq(&right));
        let unit = g.algebra.unit().into_owned();
        prop_assert!(convolve(g, &unit, &x).approx_eq(&unit.scale(&g.h(&x))));
    }

    #[test]
    fn fourier_turns_convolution_into_product(which in 0usize..4, x in element(6), y in element(6)) {
        let p = &settings()[which].duality.pair;
        let g = &*p.primal;
        let d = g.dim();
        let (x, y) = (cut(&x, d), cut(&y, d));
        let lhs = p.fourier(&convolve(g, &x, &y));
        let rhs = p.dual.algebra.multiply(&p.fourier(&x), &p.fourier(&y));
        prop_assert!(lhs.approx_eq(&rhs));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn automorphism_verdict_survives_the_hat(which in 0usize..4, picks in prop::collection::vec(pick(), 1..=2)) {
        let s = &settings()[which];
        let qf = point_family(s, &perms_for(s, &picks));
        let verdict = is_automorphism_family(&qf, &s.duality).unwrap().is_automorphism;
        let hat_qf = hat(&qf, &s.duality.pair).unwrap();
        let hat_verdict = is_automorphism_family(&hat_qf, &s.duality.swapped()).unwrap().is_automorphism;
        prop_assert_eq!(verdict, hat_verdict);
    }

    #[test]
    fn composition_preserves_automorphism_families(which in 0usize..4, a in prop::collection::vec(0usize..64, 1..=2), b in prop::collection::vec(0usize..64, 1..=2)) {
        let s = &settings()[which];
        let beta = point_family(s, &a.iter().map(|&i| s.auts[i % s.auts.len()].clone()).collect::<Vec<_>>());
        let gamma = point_family(s, &b.iter().map(|&i| s.auts[i % s.auts.len()].clone()).collect::<Vec<_>>());
        let c = compose(&beta, &gamma).unwrap();
        prop_assert_eq!(c.dim_target(), a.len() * b.len());
        prop_assert!(is_automorphism_family(&c, &s.duality).unwrap().is_automorphism);
    }
}
