//! Single-query group multiplication.
//!
//! The oracle `O_{(g0,g1)}|j, r⟩ = |j, g_j r⟩` on `C² ⊗ C^G` is a
//! representation of `G × G`. Discriminating the pair `(g0, g1)` with the
//! optimal symmetric measurement and reporting the product `h0·h1` of the
//! measured pair gives the right product with probability `2/|G|`, which is
//! also the best any single-query strategy can do.
//!
//! Basis index of `|j, r⟩` is `j·|G| + r`; element `(g0, g1)` of `G × G` has
//! index `g0·|G| + g1`.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // f64 methods are inherent whenever std is linked
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::decompose::{decompose, dual_isotype_index, restrict_to_complement_of_isotype, IsotypicDecomposition};
use crate::discrimination::{
    confusion_matrix, construct_optimal_input, srm_povm, ConfusionMatrix, OptimalInput, SymmetricPOVM,
};
use crate::error::{Error, Result};
use crate::group::{direct_product_with, FiniteGroup, Limits};
use crate::linalg::{inner, norm, random_unit_vector, CMatrix, HermitianEigen};
use crate::rep::{regular_representation, RepTag, SubRep, UnitaryRep};

/// Tolerance for the norm-balance condition on optimal product inputs.
pub const TAU_BALANCE: f64 = 1e-8;

/// The oracle representation of `G × G` on `C² ⊗ C^G`.
pub fn group_mult_rep(g: &Arc<FiniteGroup>) -> Result<UnitaryRep> {
    group_mult_rep_with(g, &Limits::default())
}

pub fn group_mult_rep_with(g: &Arc<FiniteGroup>, limits: &Limits) -> Result<UnitaryRep> {
    let n = g.order();
    let product = Arc::new(direct_product_with(g, g, limits)?);
    limits.check_dim(2 * n)?;
    let perms = (0..n * n)
        .map(|pair| {
            let (g0, g1) = (pair / n, pair % n);
            (0..2 * n).map(|x| if x < n { g.mul(g0, x) } else { n + g.mul(g1, x - n) }).collect()
        })
        .collect();
    UnitaryRep::from_permutations(product, perms, RepTag::Custom("group-multiplication".into()))
}

/// Closed-form confusion entry `(t·n − 2)² / (2(n−1)n²)` for the all-nontrivial
/// construction, where `t` counts the coordinates with `h_j = g_j`.
pub fn group_mult_confusion_term(n: usize, t: usize) -> Result<f64> {
    if n < 2 || t > 2 {
        return Err(Error::InvalidParameter("need n >= 2 and t in {0, 1, 2}".into()));
    }
    let n = n as f64;
    let num = t as f64 * n - 2.0;
    Ok(num * num / (2.0 * (n - 1.0) * n * n))
}

/// Probability of reporting the right product, over all hidden pairs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProductSuccess {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

impl ProductSuccess {
    /// Largest deviation between hidden pairs.
    pub fn spread(&self) -> f64 {
        self.max - self.min
    }
}

/// Which subspace of `C² ⊗ C^G` the query uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    /// Everything except the two trivial copies (dimension `2(|G| − 1)`).
    AllNontrivial,
    /// `|0⟩⊗Y ⊕ |1⟩⊗Y*` for the isotype `Y` of one nontrivial irreducible `W`
    /// (index into the regular decomposition) and its dual.
    SingleIrrep(usize),
}

#[derive(Clone, Debug)]
pub struct GroupMultInstance {
    pub base_group: Arc<FiniteGroup>,
    pub construction: Construction,
    /// Isotypic decomposition of the regular representation `C^G`.
    pub regular: IsotypicDecomposition,
    pub oracle_rep: UnitaryRep,
    pub working: SubRep,
    pub working_decomp: IsotypicDecomposition,
    /// Optimal input in working-space coordinates.
    pub optimal: OptimalInput,
    pub povm: SymmetricPOVM,
    pub product_success: ProductSuccess,
}

impl GroupMultInstance {
    pub fn new(g: &Arc<FiniteGroup>, construction: Construction, seed: u64) -> Result<Self> {
        Self::new_with(g, construction, seed, &Limits::default())
    }

    pub fn new_with(g: &Arc<FiniteGroup>, construction: Construction, seed: u64, limits: &Limits) -> Result<Self> {
        let n = g.order();
        if n < 2 {
            return Err(Error::InvalidParameter("group multiplication needs |G| >= 2".into()));
        }
        let regular = decompose(&regular_representation(g)?, seed)?;
        let oracle_rep = group_mult_rep_with(g, limits)?;
        let working = match construction {
            Construction::AllNontrivial => {
                let full = decompose(&oracle_rep, seed)?;
                let trivial = full.trivial_index().expect("the oracle fixes the uniform vectors");
                restrict_to_complement_of_isotype(&full, trivial)?
            }
            Construction::SingleIrrep(k) => {
                let iso = regular.isotype(k)?;
                if iso.character.is_trivial() {
                    return Err(Error::TrivialIsotype(k));
                }
                let dual = dual_isotype_index(&regular, k)?;
                let y = iso.subspace_basis();
                let y_dual = regular.isotypes[dual].subspace_basis();
                oracle_rep.restrict_to(&y.direct_sum(&y_dual))?
            }
        };
        let working_decomp = decompose(&working.rep, seed)?;
        let optimal = construct_optimal_input(&working_decomp);
        let povm = srm_povm(&working.rep, &optimal.state, &working_decomp)?;
        let product_success = product_success(&working.rep, &povm, &optimal.state);
        Ok(GroupMultInstance {
            base_group: g.clone(),
            construction,
            regular,
            oracle_rep,
            working,
            working_decomp,
            optimal,
            povm,
            product_success,
        })
    }

    /// Optimal input lifted into `C² ⊗ C^G`.
    pub fn full_state(&self) -> Vec<Complex64> {
        self.working.lift(&self.optimal.state)
    }

    /// Full pair-confusion matrix on the working space.
    pub fn confusion(&self) -> ConfusionMatrix {
        confusion_matrix(&self.working.rep, &self.povm, &self.optimal.state)
    }

    /// Largest deviation of the simulated pair-confusion entries from
    /// `(t·n − 2)²/(2(n−1)n²)`, stratified by `t`. Index `t` of the result is
    /// `None` when no pair has that `t` (only possible for `|G| = 2`).
    pub fn stratified_confusion_deviation(&self) -> Result<[Option<f64>; 3]> {
        let n = self.base_group.order();
        let c = self.confusion();
        let expected =
            [group_mult_confusion_term(n, 0)?, group_mult_confusion_term(n, 1)?, group_mult_confusion_term(n, 2)?];
        let mut worst = [None; 3];
        for h in 0..n * n {
            for g in 0..n * n {
                let t = usize::from(h / n == g / n) + usize::from(h % n == g % n);
                let dev = (c.prob(h, g) - expected[t]).abs();
                worst[t] = Some(worst[t].map_or(dev, |w: f64| w.max(dev)));
            }
        }
        Ok(worst)
    }
}

/// For each hidden pair, the total probability of measuring a pair with the same product.
pub fn product_success(rep: &UnitaryRep, povm: &SymmetricPOVM, psi: &[Complex64]) -> ProductSuccess {
    let pg = rep.group();
    let n2 = pg.order();
    let n = (n2 as f64).sqrt().round() as usize;
    debug_assert_eq!(n * n, n2);
    let base_mul = |a: usize, b: usize| pg.mul(a * n, b * n) / n; // first factor of (a,e)(b,e)
    let base_inv = |a: usize| pg.inv(a * n) / n;
    let states: Vec<Vec<Complex64>> = (0..n2).map(|g| rep.apply(g, psi)).collect();
    let effects: Vec<Vec<Complex64>> = (0..n2).map(|h| rep.apply(h, &povm.generator)).collect();
    let mut stats = ProductSuccess { min: f64::INFINITY, max: f64::NEG_INFINITY, mean: 0.0 };
    for (pair, state) in states.iter().enumerate() {
        let target = base_mul(pair / n, pair % n);
        let p: f64 = (0..n)
            .map(|h0| {
                let h1 = base_mul(base_inv(h0), target);
                inner(&effects[h0 * n + h1], state).norm_sqr()
            })
            .sum();
        stats.min = stats.min.min(p);
        stats.max = stats.max.max(p);
        stats.mean += p / n2 as f64;
    }
    stats
}

/// Product success of the all-nontrivial construction for `G`.
pub fn group_mult_success(g: &Arc<FiniteGroup>, seed: u64) -> Result<ProductSuccess> {
    Ok(GroupMultInstance::new(g, Construction::AllNontrivial, seed)?.product_success)
}

/// Product success of the single-irreducible construction for isotype `k` of `C^G`.
pub fn group_mult_irrep_variant(g: &Arc<FiniteGroup>, k: usize, seed: u64) -> Result<ProductSuccess> {
    Ok(GroupMultInstance::new(g, Construction::SingleIrrep(k), seed)?.product_success)
}

/// Per canonical summand `W_i` of `C^G`: `‖π_i(ψ0)‖` and `‖π_{i*}(ψ1)‖`.
#[derive(Clone, Debug)]
pub struct DualBalance {
    pub norms: Vec<(f64, f64)>,
    pub max_gap: f64,
    pub balanced: bool,
}

/// Norm balance of a state `ψ = |0⟩ψ0 + |1⟩ψ1` in `C² ⊗ C^G` against the
/// isotypic summands of `C^G`.
pub fn dual_balance(regular: &IsotypicDecomposition, psi: &[Complex64]) -> Result<DualBalance> {
    let n = regular.rep.dim();
    assert_eq!(psi.len(), 2 * n, "state must live in C^2 ⊗ C^G");
    let (psi0, psi1) = psi.split_at(n);
    let component_norm = |k: usize, v: &[Complex64]| norm(&regular.isotypes[k].subspace_basis().adjoint_matvec(v));
    let mut norms = Vec::with_capacity(regular.len());
    let mut max_gap = 0.0f64;
    for k in 0..regular.len() {
        let dual = dual_isotype_index(regular, k)?;
        let pair = (component_norm(k, psi0), component_norm(dual, psi1));
        max_gap = max_gap.max((pair.0 - pair.1).abs());
        norms.push(pair);
    }
    Ok(DualBalance { norms, max_gap, balanced: max_gap <= TAU_BALANCE })
}

pub fn check_dual_balance(instance: &GroupMultInstance) -> Result<DualBalance> {
    dual_balance(&instance.regular, &instance.full_state())
}

/// Square-root-measurement success for the mixed states
/// `ρ_c = (1/n) Σ_{g0 g1 = c} O_{g0,g1}|ψ⟩⟨ψ|O_{g0,g1}†` with equal priors.
pub fn mixed_srm_product_success(oracle: &UnitaryRep, psi: &[Complex64]) -> f64 {
    let pg = oracle.group();
    let n = (pg.order() as f64).sqrt().round() as usize;
    let dim = oracle.dim();
    let mul = |a: usize, b: usize| pg.mul(a * n, b * n) / n;
    let inv = |a: usize| pg.inv(a * n) / n;
    let weight = 1.0 / n as f64;
    let rhos: Vec<CMatrix> = (0..n)
        .map(|c| {
            let mut rho = CMatrix::zeros(dim, dim);
            for g0 in 0..n {
                let g1 = mul(inv(g0), c);
                crate::linalg::add_projector(&mut rho, &oracle.apply(g0 * n + g1, psi));
            }
            rho.scale_real(weight)
        })
        .collect();
    let mut total = CMatrix::zeros(dim, dim);
    for rho in &rhos {
        total = &total + rho;
    }
    let total = total.scale_real(weight);
    let eig = HermitianEigen::new(&total);
    let support = eig.support(1e-10);
    let inv_sqrt = eig.spectral_sum(&support, |v| 1.0 / v.sqrt());
    rhos.iter()
        .map(|rho| {
            let m = inv_sqrt.matmul(rho).matmul(&inv_sqrt).scale_real(weight);
            weight * m.matmul(rho).trace().re
        })
        .sum()
}

/// Outcome of the randomized optimality check.
#[derive(Clone, Debug)]
pub struct OptimalityTrials {
    /// Mixed-state SRM success per trial; trial 0 uses the optimal construction.
    pub successes: Vec<f64>,
    pub max_success: f64,
    /// Product success of the optimal construction with its own pure-state measurement.
    pub construction_success: f64,
    pub bound: f64,
}

/// Draws `trials` inputs in `C² ⊗ C^G` (trial 0 is the optimal construction,
/// the rest uniformly random with a per-trial RNG stream) and evaluates the
/// mixed-state square-root measurement on each.
pub fn verify_mult_optimality(g: &Arc<FiniteGroup>, trials: usize, seed: u64) -> Result<OptimalityTrials> {
    if trials < 1 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let instance = GroupMultInstance::new(g, Construction::AllNontrivial, seed)?;
    let dim = instance.oracle_rep.dim();
    let mut successes = Vec::with_capacity(trials);
    for t in 0..trials {
        let psi = if t == 0 {
            instance.full_state()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            random_unit_vector(&mut rng, dim)
        };
        successes.push(mixed_srm_product_success(&instance.oracle_rep, &psi));
    }
    let max_success = successes.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(OptimalityTrials {
        successes,
        max_success,
        construction_success: instance.product_success.mean,
        bound: 2.0 / g.order() as f64,
    })
}
