//! Single-query discrimination of the translates `Θ(g)|ψ⟩`.
//!
//! The best achievable success is `d_Θ/|G|`, where `d_Θ = Σ_k min(m_k, d_k)·d_k`
//! is the largest dimension of a cyclic subspace. An optimal input is any state
//! whose group-averaged projector is a multiple of the projector onto its cyclic
//! subspace; the matching measurement is generated by `μ = sqrt(d_Θ/|G|)·ψ`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // f64 methods are inherent whenever std is linked
use num_traits::Float;

use crate::decompose::IsotypicDecomposition;
use crate::error::{Error, Result};
use crate::linalg::{add_projector, inner, norm, scale_vec, CMatrix, HermitianEigen};
use crate::rep::UnitaryRep;

/// Absolute tolerance for probability comparisons.
pub const TAU_PROB: f64 = 1e-9;
/// Tolerance of the group-averaged projector test.
pub const TAU_OPTIMAL: f64 = 1e-8;
/// Eigenvalues of `T_ψ` below this fraction of the largest are treated as zero.
const SUPPORT_REL_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct OptimalInput {
    pub state: Vec<Complex64>,
    pub measurement_vector: Vec<Complex64>,
    pub cyclic_dim: usize,
    pub success_probability: f64,
}

/// Symmetric measurement `M_h = Θ(h)|μ⟩⟨μ|Θ(h)†`, completed on the full space by
/// the failure outcome `I − Π`.
#[derive(Clone, Debug)]
pub struct SymmetricPOVM {
    pub generator: Vec<Complex64>,
    /// Projector onto the span of the translates of the input state.
    pub cyclic_projector: CMatrix,
    pub cyclic_dim: usize,
}

impl SymmetricPOVM {
    /// Largest entrywise deviation of `Σ_h M_h` from the cyclic projector.
    pub fn completeness_residual(&self, rep: &UnitaryRep) -> f64 {
        let mut acc = CMatrix::zeros(rep.dim(), rep.dim());
        for h in 0..rep.group().order() {
            add_projector(&mut acc, &rep.apply(h, &self.generator));
        }
        acc.max_abs_diff(&self.cyclic_projector)
    }
}

/// `P(h|g)` for every pair, plus the failure probability of each hidden `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfusionMatrix {
    order: usize,
    /// Row-major: entry `h·order + g` is `P(h|g)`.
    probs: Vec<f64>,
    pub fail: Vec<f64>,
}

impl ConfusionMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn prob(&self, h: usize, g: usize) -> f64 {
        self.probs[h * self.order + g]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.probs.chunks(self.order).map(<[f64]>::to_vec).collect()
    }

    /// Largest deviation of a column sum (including failure) from 1.
    pub fn column_sum_defect(&self) -> f64 {
        (0..self.order)
            .map(|g| ((0..self.order).map(|h| self.prob(h, g)).sum::<f64>() + self.fail[g] - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Result of the group-averaged projector test on a state.
#[derive(Clone, Debug)]
pub struct OptimalityDiagnostic {
    pub optimal: bool,
    /// Operator norm of `T_ψ − (|G|/dim V_ψ)·Π_{V_ψ}`.
    pub residual: f64,
    pub cyclic_dim: usize,
    pub expected_dim: usize,
    pub cyclic_projector: CMatrix,
}

/// `d_Θ = Σ_k min(m_k, d_k)·d_k`.
pub fn max_cyclic_dimension(decomp: &IsotypicDecomposition) -> usize {
    decomp.isotypes.iter().map(|t| t.usable_copies() * t.irrep_dim).sum()
}

/// Builds the canonical optimal input on the maximal cyclic submodule spanned by
/// the first `l_k = min(m_k, d_k)` copies of each isotype. Inside isotype `k`
/// the state is `(1/√l_k) Σ_{i<l_k} α_{k,i}(e_i)`, weighted by `sqrt(l_k d_k/d_Θ)`
/// with zero relative phases.
pub fn construct_optimal_input(decomp: &IsotypicDecomposition) -> OptimalInput {
    let dim = decomp.rep.dim();
    let d_theta = max_cyclic_dimension(decomp);
    let mut state = vec![Complex64::new(0.0, 0.0); dim];
    for t in &decomp.isotypes {
        let l = t.usable_copies();
        // sqrt(l d / d_Θ) · (1/√l) = sqrt(d / d_Θ)
        let w = (t.irrep_dim as f64 / d_theta as f64).sqrt();
        for (i, copy) in t.copies.iter().take(l).enumerate() {
            for (s, a) in state.iter_mut().zip(copy.column(i)) {
                *s += a * w;
            }
        }
    }
    let order = decomp.group().order() as f64;
    let measurement_vector = scale_vec(&state, (d_theta as f64 / order).sqrt());
    let success_probability = inner(&measurement_vector, &state).norm_sqr();
    OptimalInput { state, measurement_vector, cyclic_dim: d_theta, success_probability }
}

/// `T_ψ = Σ_g Θ(g)|ψ⟩⟨ψ|Θ(g)†`.
pub fn averaged_projector(rep: &UnitaryRep, psi: &[Complex64]) -> CMatrix {
    let mut t = CMatrix::zeros(rep.dim(), rep.dim());
    for g in 0..rep.group().order() {
        add_projector(&mut t, &rep.apply(g, psi));
    }
    t
}

fn check_normalized(psi: &[Complex64]) -> Result<()> {
    let n = norm(psi);
    if (n - 1.0).abs() > TAU_PROB {
        return Err(Error::NotNormalized(n));
    }
    Ok(())
}

/// Tests `T_ψ = (|G|/dim V_ψ)·Π_{V_ψ}` and `dim V_ψ = d_Θ`.
pub fn is_optimal_input(
    rep: &UnitaryRep,
    psi: &[Complex64],
    decomp: &IsotypicDecomposition,
) -> Result<OptimalityDiagnostic> {
    check_normalized(psi)?;
    let t = averaged_projector(rep, psi);
    let eig = HermitianEigen::new(&t);
    let support = eig.support(SUPPORT_REL_TOL);
    let cyclic_dim = support.len();
    let lambda = rep.group().order() as f64 / cyclic_dim as f64;
    let residual = eig
        .values
        .iter()
        .enumerate()
        .map(|(i, &v)| if support.contains(&i) { (v - lambda).abs() } else { v.abs() })
        .fold(0.0, f64::max);
    let expected_dim = max_cyclic_dimension(decomp);
    let cyclic_projector = eig.spectral_sum(&support, |_| 1.0);
    Ok(OptimalityDiagnostic {
        optimal: residual <= TAU_OPTIMAL && cyclic_dim == expected_dim,
        residual,
        cyclic_dim,
        expected_dim,
        cyclic_projector,
    })
}

/// The symmetric measurement generated by `μ = sqrt(d_Θ/|G|)·ψ` for an optimal `ψ`.
pub fn srm_povm(rep: &UnitaryRep, psi: &[Complex64], decomp: &IsotypicDecomposition) -> Result<SymmetricPOVM> {
    let diag = is_optimal_input(rep, psi, decomp)?;
    if !diag.optimal {
        return Err(Error::NotOptimalInput {
            residual: diag.residual,
            cyclic_dim: diag.cyclic_dim,
            expected: diag.expected_dim,
        });
    }
    let scale = (diag.cyclic_dim as f64 / rep.group().order() as f64).sqrt();
    Ok(SymmetricPOVM {
        generator: scale_vec(psi, scale),
        cyclic_projector: diag.cyclic_projector,
        cyclic_dim: diag.cyclic_dim,
    })
}

/// Square-root measurement of the pure-state ensemble `{Θ(g)|ψ⟩}` for an
/// arbitrary input: `μ = T_ψ^{-1/2}|ψ⟩` on the support of `T_ψ`.
pub fn square_root_measurement(rep: &UnitaryRep, psi: &[Complex64]) -> Result<SymmetricPOVM> {
    check_normalized(psi)?;
    let eig = HermitianEigen::new(&averaged_projector(rep, psi));
    let support = eig.support(SUPPORT_REL_TOL);
    let inv_sqrt = eig.spectral_sum(&support, |v| 1.0 / v.sqrt());
    Ok(SymmetricPOVM {
        generator: inv_sqrt.matvec(psi),
        cyclic_projector: eig.spectral_sum(&support, |_| 1.0),
        cyclic_dim: support.len(),
    })
}

/// Direct evaluation `P(h|g) = |⟨μ|Θ(h)†Θ(g)|ψ⟩|²`, with the failure outcome
/// `P(fail|g) = ⟨ψ_g|(I − Π)|ψ_g⟩`.
pub fn confusion_matrix(rep: &UnitaryRep, povm: &SymmetricPOVM, psi: &[Complex64]) -> ConfusionMatrix {
    let n = rep.group().order();
    let states: Vec<Vec<Complex64>> = (0..n).map(|g| rep.apply(g, psi)).collect();
    let effects: Vec<Vec<Complex64>> = (0..n).map(|h| rep.apply(h, &povm.generator)).collect();
    let mut probs = Vec::with_capacity(n * n);
    for mu_h in &effects {
        for psi_g in &states {
            probs.push(clamp_prob(inner(mu_h, psi_g).norm_sqr()));
        }
    }
    let fail = states
        .iter()
        .map(|s| {
            let inside = povm.cyclic_projector.matvec(s);
            clamp_prob(inner(s, s).re - inner(&inside, &inside).re)
        })
        .collect();
    ConfusionMatrix { order: n, probs, fail }
}

fn clamp_prob(p: f64) -> f64 {
    debug_assert!((-1e-12..=1.0 + 1e-12).contains(&p), "probability {p} out of range");
    p.clamp(0.0, 1.0)
}

/// Closed-form `P(h|g) = |Σ_k d_k χ_k(h⁻¹g)|² / (d_Θ·|G|)`, valid when every
/// present irreducible has at least `d_k` copies (so the cyclic submodule holds
/// exactly `d_k` of each).
pub fn confusion_by_character(decomp: &IsotypicDecomposition, g: usize, h: usize) -> Result<f64> {
    for (k, t) in decomp.isotypes.iter().enumerate() {
        if t.multiplicity() < t.irrep_dim {
            return Err(Error::HypothesisViolated { isotype: k, multiplicity: t.multiplicity(), dim: t.irrep_dim });
        }
    }
    let group = decomp.group();
    let q = group.mul(group.inv(h), g);
    let chi: Complex64 = decomp.isotypes.iter().map(|t| t.character.at(group, q) * t.irrep_dim as f64).sum();
    let d_theta = max_cyclic_dimension(decomp) as f64;
    Ok(chi.norm_sqr() / (d_theta * group.order() as f64))
}

/// Mean of the diagonal of a confusion matrix.
pub fn success_probability(confusion: &ConfusionMatrix) -> f64 {
    let n = confusion.order();
    (0..n).map(|g| confusion.prob(g, g)).sum::<f64>() / n as f64
}

/// `p ≤ d_Θ/|G|` up to `TAU_PROB`.
pub fn dimension_bound_check(decomp: &IsotypicDecomposition, p: f64) -> bool {
    p <= max_cyclic_dimension(decomp) as f64 / decomp.group().order() as f64 + TAU_PROB
}

/// Best single-query success with an `r`-dimensional ancilla:
/// `(1/|G|) Σ_k min(r·m_k, d_k)·d_k`.
pub fn ancilla_success(decomp: &IsotypicDecomposition, r: usize) -> f64 {
    let total: usize = decomp.isotypes.iter().map(|t| (r * t.multiplicity()).min(t.irrep_dim) * t.irrep_dim).sum();
    total as f64 / decomp.group().order() as f64
}

/// Smallest ancilla dimension giving success 1, i.e. `max_k ⌈d_k/m_k⌉`, when
/// every irreducible of the group occurs; `None` otherwise.
pub fn min_ancilla_for_certainty(decomp: &IsotypicDecomposition) -> Option<usize> {
    if !decomp.contains_every_irrep() {
        return None;
    }
    decomp.isotypes.iter().map(|t| t.irrep_dim.div_ceil(t.multiplicity())).max()
}
