//! Finite quantum groups: Hopf *-algebra data on a [`StarAlgebra`].

use crate::algebra::{check_star_hom, verify_star_algebra, Algebra, StarAlgebra, Tensor};
use crate::error::{Error, Result};
use crate::linalg::{nullity, solve, Accumulator, Solution, SparseVec};
use crate::map::LinearMap;
use crate::report::{sweep, CheckResult, Report};
use crate::scalar::Scalar;

/// Coproduct and counit, as carried by the parameter algebra of a family.
#[derive(Clone, Debug)]
pub struct Bialgebra<S> {
    pub coproduct: LinearMap<S>,
    pub counit: LinearMap<S>,
}

/// The algebra of functions on a finite quantum group with all of its Hopf
/// and Haar data. Functionals (`counit`, `haar_state`) are `1 × n` maps.
#[derive(Clone, Debug)]
pub struct QuantumGroup<S> {
    pub algebra: StarAlgebra<S>,
    pub coproduct: LinearMap<S>,
    pub counit: LinearMap<S>,
    pub antipode: LinearMap<S>,
    pub haar_state: LinearMap<S>,
    pub haar_element: SparseVec<S>,
}

fn expect_shape<S: Scalar>(name: &str, m: &LinearMap<S>, source: usize, target: usize) -> Result<()> {
    if m.source_dim() != source || m.target_dim() != target {
        return Err(Error::Dimension(format!(
            "{name} must be {target}×{source}, got {}×{}",
            m.target_dim(),
            m.source_dim()
        )));
    }
    Ok(())
}

impl<S: Scalar> QuantumGroup<S> {
    /// Assemble a quantum group; a missing Haar state or Haar element is
    /// solved for from the other data.
    pub fn new(
        algebra: StarAlgebra<S>,
        coproduct: LinearMap<S>,
        counit: LinearMap<S>,
        antipode: LinearMap<S>,
        haar_state: Option<LinearMap<S>>,
        haar_element: Option<SparseVec<S>>,
    ) -> Result<Self> {
        let n = algebra.dim();
        expect_shape("coproduct", &coproduct, n, n * n)?;
        expect_shape("counit", &counit, n, 1)?;
        expect_shape("antipode", &antipode, n, n)?;
        let haar_state = match haar_state {
            Some(h) => {
                expect_shape("haar_state", &h, n, 1)?;
                h
            }
            None => solve_haar_state(&algebra, &coproduct)?,
        };
        let haar_element = match haar_element {
            Some(e) => {
                if e.max_index().is_some_and(|m| m >= n) {
                    return Err(Error::Dimension(format!("haar_element has more than {n} entries")));
                }
                e
            }
            None => solve_haar_element(&algebra, &counit)?,
        };
        Ok(Self {
            algebra,
            coproduct,
            counit,
            antipode,
            haar_state,
            haar_element,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn label(&self) -> String {
        self.algebra.label()
    }

    /// `h(η)`.
    pub fn haar_of_eta(&self) -> S {
        self.haar_state.eval(&self.haar_element)
    }

    pub fn h(&self, a: &SparseVec<S>) -> S {
        self.haar_state.eval(a)
    }

    pub fn epsilon(&self, a: &SparseVec<S>) -> S {
        self.counit.eval(a)
    }

    pub fn bialgebra(&self) -> Bialgebra<S> {
        Bialgebra {
            coproduct: self.coproduct.clone(),
            counit: self.counit.clone(),
        }
    }

    /// Coordinatewise equality of every piece of data.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.algebra.approx_eq(&other.algebra)
            && self.coproduct.approx_eq(&other.coproduct)
            && self.counit.approx_eq(&other.counit)
            && self.antipode.approx_eq(&other.antipode)
            && self.haar_state.approx_eq(&other.haar_state)
            && self.haar_element.approx_eq(&other.haar_element)
    }

    /// Names of the data that differ from `other`, in a fixed order.
    pub fn differences(&self, other: &Self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.algebra.approx_eq(&other.algebra) {
            out.push("algebra");
        }
        if !self.coproduct.approx_eq(&other.coproduct) {
            out.push("coproduct");
        }
        if !self.counit.approx_eq(&other.counit) {
            out.push("counit");
        }
        if !self.antipode.approx_eq(&other.antipode) {
            out.push("antipode");
        }
        if !self.haar_state.approx_eq(&other.haar_state) {
            out.push("haar_state");
        }
        if !self.haar_element.approx_eq(&other.haar_element) {
            out.push("haar_element");
        }
        out
    }
}

/// Coassociativity, counit laws, and the *-homomorphism property of the
/// coproduct and counit.
pub fn verify_bialgebra<S: Scalar>(a: &StarAlgebra<S>, data: &Bialgebra<S>) -> Vec<CheckResult> {
    let n = a.dim();
    let delta = &data.coproduct;
    let eps = &data.counit;
    let mut out = vec![
        sweep("coassociativity", &[n], |t| {
            let d = delta.col(t[0]);
            delta.apply_left_factor(d, n).approx_eq(&delta.apply_right_factor(d))
        }),
        sweep("counit_left", &[n], |t| eps.apply_left_factor(delta.col(t[0]), n).approx_eq(&SparseVec::basis(t[0]))),
        sweep("counit_right", &[n], |t| eps.apply_right_factor(delta.col(t[0])).approx_eq(&SparseVec::basis(t[0]))),
    ];
    out.extend(check_star_hom("coproduct_", delta, a, &Tensor::new(a, a)));
    out.extend(check_star_hom("counit_", eps, a, &StarAlgebra::scalars()));
    out
}

/// `m(S⊗id)Δ(x)` when `left` is true, `m(id⊗S)Δ(x)` otherwise.
fn antipode_contraction<S: Scalar>(g: &QuantumGroup<S>, i: usize, left: bool) -> SparseVec<S> {
    let n = g.dim();
    let mut acc = Accumulator::new();
    for (idx, c) in g.coproduct.col(i).iter() {
        let (p, q) = (idx / n, idx % n);
        let prod = if left {
            g.algebra.multiply(g.antipode.col(p), &SparseVec::basis(q))
        } else {
            g.algebra.multiply(&SparseVec::basis(p), g.antipode.col(q))
        };
        acc.add_scaled(&prod, c);
    }
    acc.finish()
}

/// Gram matrix `M[i][j] = h(e_i* e_j)`.
pub fn haar_gram<S: Scalar, A: Algebra<S> + ?Sized>(a: &A, h: &LinearMap<S>) -> Vec<Vec<S>> {
    let n = a.dim();
    (0..n)
        .map(|i| {
            let si = a.basis_star(i);
            (0..n).map(|j| h.eval(&a.multiply(&si, &SparseVec::basis(j)))).collect()
        })
        .collect()
}

/// Positive-definiteness of a Hermitian Gram matrix as a single check.
pub fn check_gram_positive<S: Scalar>(name: &str, gram: &[Vec<S>]) -> CheckResult {
    let n = gram.len();
    let hermitian = sweep(name, &[n, n], |t| gram[t[0]][t[1]].approx_eq(&gram[t[1]][t[0]].conj()));
    if !hermitian.pass {
        return hermitian.with_note("not Hermitian");
    }
    match S::leading_minors_positive(gram) {
        Ok(()) => CheckResult::pass(name),
        Err(k) => CheckResult::fail(name, vec![k]).with_note(format!("leading minor of size {k} is not positive")),
    }
}

/// Check every Hopf and Haar axiom of `g`.
pub fn verify_quantum_group<S: Scalar>(g: &QuantumGroup<S>) -> Report {
    let n = g.dim();
    let a = &g.algebra;
    let mut report = Report::new::<S>(format!("quantum group {}", g.label()));
    report.absorb("algebra", verify_star_algebra(a));
    report.extend(verify_bialgebra(a, &g.bialgebra()));

    let unit = a.unit().into_owned();
    let s = &g.antipode;
    report.push(sweep("antipode_left", &[n], |t| {
        antipode_contraction(g, t[0], true).approx_eq(&unit.scale(&g.counit.entry(0, t[0])))
    }));
    report.push(sweep("antipode_right", &[n], |t| {
        antipode_contraction(g, t[0], false).approx_eq(&unit.scale(&g.counit.entry(0, t[0])))
    }));
    report.push(sweep("antipode_involutive", &[n], |t| s.apply(s.col(t[0])).approx_eq(&SparseVec::basis(t[0]))));
    report.push(sweep("antipode_star", &[n], |t| {
        s.apply(&a.basis_star(t[0])).approx_eq(&a.star(s.col(t[0])))
    }));

    let h = &g.haar_state;
    report.push(CheckResult::from_bool("haar_normalized", h.eval(&unit).is_one()));
    report.push(sweep("haar_left_invariant", &[n], |t| {
        h.apply_right_factor(g.coproduct.col(t[0])).approx_eq(&unit.scale(&h.entry(0, t[0])))
    }));
    report.push(sweep("haar_right_invariant", &[n], |t| {
        h.apply_left_factor(g.coproduct.col(t[0]), n).approx_eq(&unit.scale(&h.entry(0, t[0])))
    }));
    report.push(sweep("haar_trace", &[n, n], |t| {
        h.eval(&a.basis_product(t[0], t[1])).approx_eq(&h.eval(&a.basis_product(t[1], t[0])))
    }));
    report.push(sweep("haar_antipode_invariant", &[n], |t| h.eval(s.col(t[0])).approx_eq(&h.entry(0, t[0]))));
    report.push(check_gram_positive("haar_faithful_positive", &haar_gram(a, h)));
    report.push(match solve_haar_state(a, &g.coproduct) {
        Ok(solved) => CheckResult::from_witness("haar_state_solved", solved.first_difference(h).map(|(_, j)| vec![j])),
        Err(e) => CheckResult::fail("haar_state_solved", vec![0]).with_note(e.to_string()),
    });

    let eta = &g.haar_element;
    report.push(CheckResult::from_bool("haar_element_counit", g.epsilon(eta).is_one()));
    report.push(sweep("haar_element_absorbs", &[n], |t| {
        a.multiply(&SparseVec::basis(t[0]), eta).approx_eq(&eta.scale(&g.counit.entry(0, t[0])))
    }));
    let expected = S::from_ratio(1, n as i64);
    report.push(
        CheckResult::from_bool("haar_of_eta", g.haar_of_eta().approx_eq(&expected))
            .with_note(format!("h(eta) = {}", g.haar_of_eta())),
    );
    report
}

/// Rows of the linear system `(id⊗h)Δ(e_a) = h(e_a)1` in the unknowns `h_j`.
fn invariance_rows<S: Scalar>(a: &StarAlgebra<S>, coproduct: &LinearMap<S>) -> Vec<Vec<S>> {
    let n = a.dim();
    let unit = a.unit();
    let mut rows = vec![vec![S::zero(); n]; n * n];
    for col in 0..n {
        for (idx, c) in coproduct.col(col).iter() {
            let (i, j) = (idx / n, idx % n);
            rows[col * n + i][j].add_assign(c);
        }
        for (i, u) in unit.iter() {
            rows[col * n + i][col] = rows[col * n + i][col].sub(u);
        }
    }
    rows
}

/// The unique left-invariant functional with `h(1) = 1`.
pub fn solve_haar_state<S: Scalar>(a: &StarAlgebra<S>, coproduct: &LinearMap<S>) -> Result<LinearMap<S>> {
    let n = a.dim();
    let mut rows = invariance_rows(a, coproduct);
    let mut rhs = vec![S::zero(); rows.len()];
    rows.push(a.unit().to_dense(n));
    rhs.push(S::one());
    match solve(&rows, &rhs, n) {
        Solution::Unique(x) => Ok(LinearMap::functional(&x)),
        Solution::Inconsistent => Err(Error::NotQuantumGroup("no invariant state exists".into())),
        Solution::Underdetermined { nullity } => Err(Error::NotQuantumGroup(format!(
            "invariant functionals form a space of dimension {}",
            nullity + 1
        ))),
    }
}

/// Dimension of the space of left-invariant functionals (1 for a quantum group).
pub fn haar_solution_dimension<S: Scalar>(a: &StarAlgebra<S>, coproduct: &LinearMap<S>) -> usize {
    nullity(&invariance_rows(a, coproduct), a.dim())
}

/// The unique `η` with `aη = ε(a)η` for all `a` and `ε(η) = 1`.
pub fn solve_haar_element<S: Scalar>(a: &StarAlgebra<S>, counit: &LinearMap<S>) -> Result<SparseVec<S>> {
    let n = a.dim();
    let mut rows = vec![vec![S::zero(); n]; n * n];
    for p in 0..n {
        let e = counit.entry(0, p);
        for j in 0..n {
            for (k, c) in a.basis_product(p, j).iter() {
                rows[p * n + k][j].add_assign(c);
            }
            rows[p * n + j][j] = rows[p * n + j][j].sub(&e);
        }
    }
    let mut rhs = vec![S::zero(); rows.len()];
    rows.push(counit.values());
    rhs.push(S::one());
    match solve(&rows, &rhs, n) {
        Solution::Unique(x) => Ok(SparseVec::from_dense(&x)),
        Solution::Inconsistent => Err(Error::NotQuantumGroup("no Haar element exists".into())),
        Solution::Underdetermined { nullity } => Err(Error::NotQuantumGroup(format!(
            "Haar element is not unique (nullity {nullity})"
        ))),
    }
}

/// `S((id⊗h)(Δ(b)(1⊗c))) = (id⊗h)((1⊗b)Δ(c))` on all basis pairs.
pub fn check_hw_identity<S: Scalar>(g: &QuantumGroup<S>) -> Report {
    let n = g.dim();
    let a = &g.algebra;
    let h = &g.haar_state;
    let mut report = Report::new::<S>(format!("antipode/Haar identity on {}", g.label()));
    report.push(sweep("hw_identity", &[n, n], |t| {
        let (b, c) = (t[0], t[1]);
        let mut left = Accumulator::new();
        for (idx, x) in g.coproduct.col(b).iter() {
            let v = h.eval(&a.basis_product(idx % n, c));
            left.add(idx / n, &x.mul(&v));
        }
        let mut right = Accumulator::new();
        for (idx, x) in g.coproduct.col(c).iter() {
            let v = h.eval(&a.basis_product(b, idx % n));
            right.add(idx / n, &x.mul(&v));
        }
        g.antipode.apply(&left.finish()).approx_eq(&right.finish())
    }));
    report
}

/// Re-express `g` in the basis whose `k`-th vector is column `k` of `t`
/// (given in old coordinates).
pub fn transport<S: Scalar>(g: &QuantumGroup<S>, t: &LinearMap<S>, label: impl Into<String>) -> Result<QuantumGroup<S>> {
    let n = g.dim();
    if t.source_dim() != n || t.target_dim() != n {
        return Err(Error::Dimension("basis change must be square of the algebra dimension".into()));
    }
    let tinv = t.inverse()?;
    let a = &g.algebra;
    let mut mult = Vec::with_capacity(n * n);
    for k in 0..n {
        for l in 0..n {
            mult.push(tinv.apply(&a.multiply(t.col(k), t.col(l))));
        }
    }
    let star = (0..n).map(|k| tinv.apply(&a.star(t.col(k)))).collect();
    let algebra = StarAlgebra::new(label, n, mult, tinv.apply(&a.unit()), star)?;
    let coproduct = LinearMap::from_columns(
        n * n,
        (0..n)
            .map(|k| {
                let d = g.coproduct.apply(t.col(k));
                tinv.apply_right_factor(&tinv.apply_left_factor(&d, n))
            })
            .collect(),
    )?;
    let antipode = tinv.compose(&g.antipode.compose(t)?)?;
    QuantumGroup::new(
        algebra,
        coproduct,
        g.counit.compose(t)?,
        antipode,
        Some(g.haar_state.compose(t)?),
        Some(tinv.apply(&g.haar_element)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    /// F(Z_2) written out by hand.
    fn fz2() -> QuantumGroup<Exact> {
        let a = StarAlgebra::functions_on_points(2, "F(Z2)").unwrap();
        let one = Exact::one;
        // Δ(δ_0) = δ_0⊗δ_0 + δ_1⊗δ_1, Δ(δ_1) = δ_0⊗δ_1 + δ_1⊗δ_0
        let delta = LinearMap::from_columns(
            4,
            vec![SparseVec::from_pairs([(0, one()), (3, one())]), SparseVec::from_pairs([(1, one()), (2, one())])],
        )
        .unwrap();
        let eps = LinearMap::functional(&[one(), Exact::zero()]);
        QuantumGroup::new(a, delta, eps, LinearMap::identity(2), None, None).unwrap()
    }

    #[test]
    fn solved_haar_data_for_z2() {
        let g = fz2();
        assert_eq!(g.haar_state.values(), vec![Exact::from_ratio(1, 2); 2]);
        assert!(g.haar_element.approx_eq(&SparseVec::basis(0)));
        assert_eq!(g.haar_of_eta(), Exact::from_ratio(1, 2));
        assert_eq!(haar_solution_dimension(&g.algebra, &g.coproduct), 1);
        let report = verify_quantum_group(&g);
        assert!(report.passed(), "{}", report.render_table());
        assert!(check_hw_identity(&g).passed());
    }

    #[test]
    fn perturbed_haar_state_breaks_hw_identity() {
        let mut g = fz2();
        g.haar_state = LinearMap::functional(&[Exact::from_ratio(1, 3), Exact::from_ratio(2, 3)]);
        assert!(!check_hw_identity(&g).passed());
        let report = verify_quantum_group(&g);
        assert!(!report.check_passed("haar_left_invariant"));
        assert!(!report.check_passed("haar_state_solved"));
    }

    #[test]
    fn transport_by_identity_is_identity() {
        let g = fz2();
        let t = transport(&g, &LinearMap::identity(2), "F(Z2)").unwrap();
        assert!(t.approx_eq(&g));
    }

    #[test]
    fn shape_errors_are_reported() {
        let g = fz2();
        let bad = QuantumGroup::new(g.algebra.clone(), LinearMap::identity(2), g.counit.clone(), g.antipode.clone(), None, None);
        assert!(matches!(bad, Err(Error::Dimension(_))));
    }
}
