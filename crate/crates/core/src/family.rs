//! Quantum families of maps `α: A → A⊗B` and their automorphism predicates.

use std::sync::Arc;

use crate::algebra::{check_star_hom, tensor_algebra, Algebra, StarAlgebra, Tensor};
use crate::error::{Error, Result};
use crate::fourier::{build_dual, conv_algebra, DualPair};
use crate::hopf::{verify_bialgebra, Bialgebra, QuantumGroup};
use crate::linalg::{sparse_rank, Accumulator, SparseVec};
use crate::map::LinearMap;
use crate::report::{sweep, CheckResult, Report};
use crate::scalar::Scalar;

/// A linear map `α: A → A⊗B` on the algebra of a quantum group, indexed by
/// the parameter algebra `B`.
#[derive(Clone, Debug)]
pub struct QuantumFamily<S> {
    pub label: String,
    pub source: Arc<QuantumGroup<S>>,
    pub target: Arc<StarAlgebra<S>>,
    pub alpha: LinearMap<S>,
    /// Coproduct and counit on `B` when it is itself a quantum group.
    pub hopf_on_target: Option<Arc<Bialgebra<S>>>,
}

impl<S: Scalar> QuantumFamily<S> {
    pub fn new(
        label: impl Into<String>,
        source: Arc<QuantumGroup<S>>,
        target: Arc<StarAlgebra<S>>,
        alpha: LinearMap<S>,
        hopf_on_target: Option<Arc<Bialgebra<S>>>,
    ) -> Result<Self> {
        let (n, m) = (source.dim(), target.dim());
        if alpha.source_dim() != n || alpha.target_dim() != n * m {
            return Err(Error::Dimension(format!(
                "alpha must be {}×{n}, got {}×{}",
                n * m,
                alpha.target_dim(),
                alpha.source_dim()
            )));
        }
        if let Some(h) = &hopf_on_target {
            if h.coproduct.source_dim() != m || h.coproduct.target_dim() != m * m || h.counit.source_dim() != m || h.counit.target_dim() != 1 {
                return Err(Error::Dimension("coproduct/counit on the parameter algebra have the wrong shape".into()));
            }
        }
        Ok(Self {
            label: label.into(),
            source,
            target,
            alpha,
            hopf_on_target,
        })
    }

    /// `a ↦ a⊗1` with `B = ℂ`.
    pub fn identity(source: Arc<QuantumGroup<S>>) -> Self {
        let n = source.dim();
        let label = format!("identity on {}", source.label());
        Self::new(label, source, Arc::new(StarAlgebra::scalars()), LinearMap::identity(n), None).expect("identity family")
    }

    pub fn dim_source(&self) -> usize {
        self.source.dim()
    }

    pub fn dim_target(&self) -> usize {
        self.target.dim()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `(id⊗ω_j)α(e_i)` for all `i` and dual basis functionals `ω_j` of `B`.
    pub fn slices(&self) -> Vec<SparseVec<S>> {
        let m = self.dim_target();
        let mut out = Vec::with_capacity(self.dim_source() * m);
        for col in self.alpha.columns() {
            let mut parts: Vec<Vec<(usize, S)>> = vec![Vec::new(); m];
            for (idx, c) in col.iter() {
                parts[idx % m].push((idx / m, c.clone()));
            }
            out.extend(parts.into_iter().map(SparseVec::from_pairs));
        }
        out
    }
}

/// Fold several checks into one named check. The witness is the failing
/// part's position followed by its own witness.
pub fn combine(name: &str, parts: Vec<CheckResult>) -> CheckResult {
    let failing: Vec<(usize, &CheckResult)> = parts.iter().enumerate().filter(|(_, c)| !c.pass).collect();
    match failing.first() {
        None => CheckResult::pass(name),
        Some((pos, first)) => {
            let mut witness = vec![*pos];
            witness.extend(&first.witness);
            CheckResult {
                violations: failing.iter().map(|(_, c)| c.violations).sum(),
                ..CheckResult::fail(name, witness)
            }
            .with_note(format!(
                "fails: {}",
                failing.iter().map(|(_, c)| c.name.as_str()).collect::<Vec<_>>().join(", ")
            ))
        }
    }
}

fn unital_star_hom<S: Scalar>(qf: &QuantumFamily<S>) -> CheckResult {
    let a = &qf.source.algebra;
    let parts = check_star_hom("", &qf.alpha, a, &Tensor::new(a, &*qf.target));
    combine("unital_star_hom", parts)
}

/// `α(A)(1⊗B) = A⊗B`, decided by the rank of `α(e_i)(1⊗f_k)` over all
/// basis pairs.
fn podles<S: Scalar>(qf: &QuantumFamily<S>) -> CheckResult {
    let (n, m) = (qf.dim_source(), qf.dim_target());
    let b = &*qf.target;
    let products = qf.alpha.columns().iter().flat_map(|col| {
        (0..m).map(move |k| {
            let mut acc = Accumulator::new();
            for (idx, c) in col.iter() {
                let (x, j) = (idx / m, idx % m);
                for (l, d) in b.basis_product(j, k).iter() {
                    acc.add(x * m + l, &c.mul(d));
                }
            }
            acc.finish()
        })
    });
    let rank = sparse_rank(products);
    let check = if rank == n * m {
        CheckResult::pass("podles")
    } else {
        CheckResult::fail("podles", vec![rank])
    };
    check.with_note(format!("rank {rank} of {}", n * m))
}

/// Unital *-homomorphism and Podleś condition.
pub fn check_family<S: Scalar>(qf: &QuantumFamily<S>) -> Report {
    let mut report = Report::new::<S>(format!("family {}", qf.label));
    report.push(unital_star_hom(qf));
    report.push(podles(qf));
    report
}

/// A quantum group, its dual, the double-dual pair, and both convolution
/// algebras, computed once and shared by the family predicates.
#[derive(Clone, Debug)]
pub struct Duality<S> {
    pub pair: DualPair<S>,
    /// Pair for `Ĝ`; its dual is checked to coincide with `G`.
    pub dual_pair: DualPair<S>,
    pub conv: Arc<StarAlgebra<S>>,
    pub conv_dual: Arc<StarAlgebra<S>>,
}

impl<S: Scalar> Duality<S> {
    pub fn new(g: Arc<QuantumGroup<S>>) -> Result<Self> {
        let pair = build_dual(g.clone())?;
        let dual_pair = build_dual(pair.dual.clone())?;
        let diffs = dual_pair.dual.differences(&g);
        if !diffs.is_empty() {
            return Err(Error::Duality(format!(
                "double dual of {} differs in {}",
                g.label(),
                diffs.join(", ")
            )));
        }
        // use the primal itself on the far side so both pairs share data
        let dual_pair = DualPair { dual: g.clone(), ..dual_pair };
        Ok(Self {
            conv: Arc::new(conv_algebra(&g)?),
            conv_dual: Arc::new(conv_algebra(&pair.dual)?),
            pair,
            dual_pair,
        })
    }

    pub fn group(&self) -> &Arc<QuantumGroup<S>> {
        &self.pair.primal
    }

    pub fn dual_group(&self) -> &Arc<QuantumGroup<S>> {
        &self.pair.dual
    }

    /// The same data seen from `Ĝ`.
    pub fn swapped(&self) -> Self {
        Self {
            pair: self.dual_pair.clone(),
            dual_pair: self.pair.clone(),
            conv: self.conv_dual.clone(),
            conv_dual: self.conv.clone(),
        }
    }
}

fn same_source<S: Scalar>(qf: &QuantumFamily<S>, g: &Arc<QuantumGroup<S>>) -> Result<()> {
    if Arc::ptr_eq(&qf.source, g) || qf.source.approx_eq(g) {
        Ok(())
    } else {
        Err(Error::Dimension(format!(
            "family {} is not defined on {}",
            qf.label,
            g.label()
        )))
    }
}

fn push_left<S: Scalar>(f: &LinearMap<S>, m: &LinearMap<S>, right_dim: usize) -> LinearMap<S> {
    let cols = m.columns().iter().map(|c| f.apply_left_factor(c, right_dim)).collect();
    LinearMap::from_columns(f.target_dim() * right_dim, cols).expect("tensor shapes")
}

/// `α̂` by `(1/h(η))(𝓕⊗id)∘α∘𝓕̂∘Ŝ` and by `(𝓕⊗id)∘α∘𝓕⁻¹`.
pub fn hat_formulas<S: Scalar>(qf: &QuantumFamily<S>, pair: &DualPair<S>) -> Result<(LinearMap<S>, LinearMap<S>)> {
    same_source(qf, &pair.primal)?;
    let m = qf.dim_target();
    let inv_h = pair
        .primal
        .haar_of_eta()
        .inv()
        .ok_or_else(|| Error::Duality("h(eta) vanishes".into()))?;
    let inner = pair.fourier_dual.compose(&pair.dual.antipode)?;
    let first = push_left(&pair.fourier, &qf.alpha.compose(&inner)?, m).scale(&inv_h);
    let second = push_left(&pair.fourier, &qf.alpha.compose(&pair.fourier_inverse)?, m);
    Ok((first, second))
}

/// The family `α̂` on `Ĝ`. Both formulas are evaluated and must agree.
pub fn hat<S: Scalar>(qf: &QuantumFamily<S>, pair: &DualPair<S>) -> Result<QuantumFamily<S>> {
    let (first, second) = hat_formulas(qf, pair)?;
    if let Some((i, j)) = first.first_difference(&second) {
        return Err(Error::Duality(format!("hat formulas disagree at entry ({i}, {j})")));
    }
    QuantumFamily::new(
        format!("hat({})", qf.label),
        pair.dual.clone(),
        qf.target.clone(),
        first,
        qf.hopf_on_target.clone(),
    )
}

/// `hat(hat(α))` together with `(S⊗id)∘α∘S`.
pub fn double_hat<S: Scalar>(qf: &QuantumFamily<S>, d: &Duality<S>) -> Result<(QuantumFamily<S>, LinearMap<S>)> {
    let once = hat(qf, &d.pair)?;
    let twice = hat(&once, &d.dual_pair)?;
    let s = &qf.source.antipode;
    let expected = push_left(s, &qf.alpha.compose(s)?, qf.dim_target());
    Ok((twice, expected))
}

/// Convolution product, convolution adjoint, Haar element, counit and Haar
/// state preservation.
pub fn check_convolution_preservation<S: Scalar>(qf: &QuantumFamily<S>, d: &Duality<S>) -> Result<Report> {
    same_source(qf, d.group())?;
    let g = &*qf.source;
    let (n, m) = (qf.dim_source(), qf.dim_target());
    let b = &*qf.target;
    let conv = &*d.conv;
    let mut report = Report::new::<S>(format!("convolution structure of {}", qf.label));
    let parts = check_star_hom("", &qf.alpha, conv, &Tensor::new(conv, b));
    for part in parts {
        match part.name.as_str() {
            "multiplicative" => report.push(CheckResult { name: "conv_product".into(), ..part }),
            "star" => report.push(CheckResult { name: "conv_adjoint".into(), ..part }),
            _ => {}
        }
    }
    let unit_b = b.unit().into_owned();
    let eta_image = qf.alpha.apply(&g.haar_element);
    report.push(CheckResult::from_witness(
        "haar_element",
        eta_image.first_difference(&g.haar_element.kron(&unit_b, m)).map(|k| vec![k]),
    ));
    report.push(sweep("counit", &[n], |t| {
        g.counit.apply_left_factor(qf.alpha.col(t[0]), m).approx_eq(&unit_b.scale(&g.counit.entry(0, t[0])))
    }));
    report.push(sweep("haar_state", &[n], |t| {
        g.haar_state.apply_left_factor(qf.alpha.col(t[0]), m).approx_eq(&unit_b.scale(&g.haar_state.entry(0, t[0])))
    }));
    Ok(report)
}

/// Outcome of comparing the two sides of each duality equivalence.
#[derive(Clone, Debug)]
pub struct DualEquivalences {
    /// `(property of α̂, property of α)` for items (1)–(4).
    pub items: [(bool, bool); 4],
    pub report: Report,
}

/// For each item evaluate both sides and require them to agree:
/// (1) α̂ multiplicative ⇔ α preserves `⋆`; (2) α̂ preserves `*` ⇔ α
/// preserves `•`; (3) α̂ unital ⇔ `α(η) = η⊗1`; (4) α̂ preserves `ĥ` ⇔ α
/// preserves `ε`.
pub fn verify_dual_equivalences<S: Scalar>(qf: &QuantumFamily<S>, d: &Duality<S>) -> Result<DualEquivalences> {
    let conv = check_convolution_preservation(qf, d)?;
    let hat_qf = hat(qf, &d.pair)?;
    let dual = &*d.pair.dual;
    let hom = check_star_hom("", &hat_qf.alpha, &dual.algebra, &Tensor::new(&dual.algebra, &*qf.target));
    let unit_b = qf.target.unit().into_owned();
    let m = qf.dim_target();
    let hat_haar = sweep("hat_haar", &[dual.dim()], |t| {
        dual.haar_state
            .apply_left_factor(hat_qf.alpha.col(t[0]), m)
            .approx_eq(&unit_b.scale(&dual.haar_state.entry(0, t[0])))
    });
    let items = [
        (hom[1].pass, conv.check_passed("conv_product")),
        (hom[2].pass, conv.check_passed("conv_adjoint")),
        (hom[0].pass, conv.check_passed("haar_element")),
        (hat_haar.pass, conv.check_passed("counit")),
    ];
    let describe = [
        ("item1", "hat multiplicative", "alpha preserves convolution"),
        ("item2", "hat preserves adjoint", "alpha preserves convolution adjoint"),
        ("item3", "hat unital", "alpha preserves Haar element"),
        ("item4", "hat preserves dual Haar state", "alpha preserves counit"),
    ];
    let mut report = Report::new::<S>(format!("duality equivalences for {}", qf.label));
    for ((name, l, r), (lhs, rhs)) in describe.iter().zip(items) {
        report.push(CheckResult::from_bool(*name, lhs == rhs).with_note(format!("{l} = {lhs}, {r} = {rhs}")));
    }
    Ok(DualEquivalences { items, report })
}

/// Verdict of the automorphism test with the full report.
#[derive(Clone, Debug)]
pub struct AutomorphismVerdict {
    pub is_automorphism: bool,
    pub report: Report,
}

const CORE: [&str; 5] = ["unital_star_hom", "podles", "conv_product", "conv_adjoint", "haar_element"];

fn core_predicates<S: Scalar>(qf: &QuantumFamily<S>, d: &Duality<S>) -> Result<(Report, Report)> {
    let mut core = check_family(qf);
    let conv = check_convolution_preservation(qf, d)?;
    for c in &conv.checks {
        if CORE.contains(&c.name.as_str()) {
            core.push(c.clone());
        }
    }
    Ok((core, conv))
}

/// Unital *-homomorphism, Podleś, convolution product, convolution adjoint
/// and Haar element. When these hold the consequences are checked too:
/// `hat(hat(α)) = α`, `α̂` satisfies the same predicates on `Ĝ`, and `α`
/// preserves the counit and the Haar state.
pub fn is_automorphism_family<S: Scalar>(qf: &QuantumFamily<S>, d: &Duality<S>) -> Result<AutomorphismVerdict> {
    let (core, conv) = core_predicates(qf, d)?;
    let is_automorphism = core.passed();
    let mut report = Report::new::<S>(format!("automorphism family {}", qf.label));
    report.extend(core.checks);
    if is_automorphism {
        match double_hat(qf, d) {
            Ok((twice, _)) => report.push(CheckResult::from_witness(
                "double_hat",
                twice.alpha.first_difference(&qf.alpha).map(|(i, j)| vec![i, j]),
            )),
            Err(e) => report.push(CheckResult::fail("double_hat", vec![0]).with_note(e.to_string())),
        }
        match hat(qf, &d.pair) {
            Ok(h) => {
                let (hat_core, _) = core_predicates(&h, &d.swapped())?;
                report.push(combine("dual_family", hat_core.checks));
            }
            Err(e) => report.push(CheckResult::fail("dual_family", vec![0]).with_note(e.to_string())),
        }
        for c in conv.checks {
            if c.name == "counit" || c.name == "haar_state" {
                report.push(c);
            }
        }
    }
    Ok(AutomorphismVerdict { is_automorphism, report })
}

/// `β△γ = (β⊗id)∘γ` with parameter algebra `B⊗C`.
pub fn compose<S: Scalar>(beta: &QuantumFamily<S>, gamma: &QuantumFamily<S>) -> Result<QuantumFamily<S>> {
    same_source(gamma, &beta.source)?;
    let alpha = push_left(&beta.alpha, &gamma.alpha, gamma.dim_target());
    QuantumFamily::new(
        format!("({})△({})", beta.label, gamma.label),
        beta.source.clone(),
        Arc::new(tensor_algebra(&beta.target, &gamma.target)),
        alpha,
        None,
    )
}

/// `(id⊗Δ_B)∘α = (α⊗id)∘α`, plus the bialgebra axioms of `B`.
pub fn check_action<S: Scalar>(qf: &QuantumFamily<S>) -> Result<Report> {
    let hopf = qf
        .hopf_on_target
        .as_ref()
        .ok_or_else(|| Error::Unsupported(format!("family {} has no coproduct on its parameter algebra", qf.label)))?;
    let mut report = Report::new::<S>(format!("action equation for {}", qf.label));
    let mut target = Report::new::<S>("parameter algebra");
    target.extend(verify_bialgebra(&qf.target, hopf));
    report.absorb("target", target);
    let m = qf.dim_target();
    report.push(sweep("action_equation", &[qf.dim_source()], |t| {
        let v = qf.alpha.col(t[0]);
        hopf.coproduct.apply_right_factor(v).approx_eq(&qf.alpha.apply_left_factor(v, m))
    }));
    Ok(report)
}

/// `ψ_x = (id⊗ξ_x)∘α` for a parameter algebra of functions on points.
pub fn slice_commutative<S: Scalar>(qf: &QuantumFamily<S>) -> Result<Vec<LinearMap<S>>> {
    if !qf.target.is_function_algebra_basis() {
        return Err(Error::Unsupported(format!(
            "parameter algebra {} is not an algebra of functions on points",
            qf.target.label()
        )));
    }
    let (n, m) = (qf.dim_source(), qf.dim_target());
    let mut cols: Vec<Vec<Vec<(usize, S)>>> = vec![vec![Vec::new(); n]; m];
    for (i, col) in qf.alpha.columns().iter().enumerate() {
        for (idx, c) in col.iter() {
            cols[idx % m][i].push((idx / m, c.clone()));
        }
    }
    cols.into_iter()
        .map(|c| LinearMap::from_columns(n, c.into_iter().map(SparseVec::from_pairs).collect()))
        .collect()
}

/// Each slice must be a Hopf *-algebra automorphism preserving `h`.
pub fn verify_slices<S: Scalar>(g: &QuantumGroup<S>, slices: &[LinearMap<S>]) -> Report {
    let n = g.dim();
    let a = &g.algebra;
    let k = slices.len();
    let mut report = Report::new::<S>(format!("slices on {}", g.label()));
    report.push(sweep("bijective", &[k], |t| slices[t[0]].rank() == n));
    report.push(sweep("star_hom", &[k], |t| check_star_hom("", &slices[t[0]], a, a).iter().all(|c| c.pass)));
    report.push(sweep("antipode", &[k], |t| {
        let psi = &slices[t[0]];
        psi.compose(&g.antipode).expect("shapes").approx_eq(&g.antipode.compose(psi).expect("shapes"))
    }));
    report.push(sweep("coproduct", &[k], |t| {
        let psi = &slices[t[0]];
        (0..n).all(|i| {
            let lhs = psi.apply_right_factor(&psi.apply_left_factor(g.coproduct.col(i), n));
            lhs.approx_eq(&g.coproduct.apply(psi.col(i)))
        })
    }));
    report.push(sweep("counit", &[k], |t| g.counit.compose(&slices[t[0]]).expect("shapes").approx_eq(&g.counit)));
    report.push(sweep("haar_state", &[k], |t| {
        g.haar_state.compose(&slices[t[0]]).expect("shapes").approx_eq(&g.haar_state)
    }));
    report
}
