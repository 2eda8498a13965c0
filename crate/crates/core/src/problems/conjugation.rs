//! Hidden conjugating element: identify `g` from one query to `|x⟩ ↦ |g x g⁻¹⟩`.
//!
//! The conjugation representation contains irreducible `χ` exactly
//! `Σ_c χ(c)` times, the sum running over one representative per class. With
//! no ancilla the best success is `d_Θ/|G|`; central elements act trivially,
//! so a nontrivial center always forces failure without an ancilla.

use alloc::sync::Arc;
use alloc::vec::Vec;

#[allow(unused_imports)] // f64 methods are inherent whenever std is linked
use num_traits::Float;

use crate::chartable::{character_table, CharacterTable};
use crate::decompose::{decompose, IsotypicDecomposition};
use crate::discrimination::{
    ancilla_success, confusion_matrix, construct_optimal_input, max_cyclic_dimension, min_ancilla_for_certainty,
    srm_povm, success_probability,
};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rep::{permutation_representation, tensor_with_trivial, RepTag, UnitaryRep};

/// Largest ancilla-extended dimension for which the ancilla success is also simulated.
pub const SIMULATE_ANCILLA_MAX_DIM: usize = 256;

/// `Θ(g)|x⟩ = |g x g⁻¹⟩` on `C^G`.
pub fn conjugation_rep(g: &Arc<FiniteGroup>) -> Result<UnitaryRep> {
    let group = g.clone();
    Ok(permutation_representation(g, g.order(), move |a, x| group.conjugate(a, x))?.with_tag(RepTag::Conjugation))
}

/// Multiplicity of each row of `table` in the conjugation representation,
/// from the row sums over class representatives.
pub fn conjugation_multiplicities(table: &CharacterTable) -> Result<Vec<usize>> {
    (0..table.rows.len())
        .map(|i| {
            let s = table.row_sum(i);
            let rounded = s.re.round();
            if s.im.abs() > 1e-6 || (s.re - rounded).abs() > 1e-6 || rounded < 0.0 {
                return Err(Error::NotInteger(s.re));
            }
            Ok(rounded as usize)
        })
        .collect()
}

/// Best classical single-query guess: the largest conjugacy class over `|G|`.
pub fn classical_conjugation_baseline(g: &FiniteGroup) -> f64 {
    let largest = g.classes().sizes().into_iter().max().unwrap_or(1);
    largest as f64 / g.order() as f64
}

#[derive(Clone, Debug)]
pub struct ConjugationReport {
    pub order: usize,
    pub center_size: usize,
    /// A nontrivial center makes certainty impossible without an ancilla.
    pub center_obstruction: bool,
    pub irrep_dims: Vec<usize>,
    /// Multiplicities from character row sums, one per irreducible.
    pub multiplicities: Vec<usize>,
    /// Multiplicities counted by the numerical decomposition, same order.
    pub decomposition_multiplicities: Vec<usize>,
    pub classical_baseline: f64,
    /// `d_Θ/|G|` from the row-sum multiplicities.
    pub quantum_bound: f64,
    /// Success of the constructed input and measurement.
    pub quantum_no_ancilla: f64,
    pub min_ancilla: Option<usize>,
    /// Ancilla dimension used for the with-ancilla figures.
    pub ancilla: usize,
    pub quantum_with_ancilla: f64,
    /// Simulated with-ancilla success, when the extended space is small enough.
    pub quantum_with_ancilla_simulated: Option<f64>,
}

/// Full analysis of the hidden-conjugation problem. With `ancilla = None` the
/// with-ancilla figures use the minimal ancilla for certainty, or the largest
/// irreducible dimension when some irreducible is missing.
pub fn hidden_conjugation_report(g: &Arc<FiniteGroup>, ancilla: Option<usize>, seed: u64) -> Result<ConjugationReport> {
    if ancilla == Some(0) {
        return Err(Error::InvalidParameter("ancilla dimension must be >= 1".into()));
    }
    let table = character_table(g, seed)?;
    let multiplicities = conjugation_multiplicities(&table)?;
    let rep = conjugation_rep(g)?;
    let decomp = decompose(&rep, seed)?;
    let decomposition_multiplicities =
        table.rows.iter().map(|chi| decomp.find(chi).map_or(0, |k| decomp.isotypes[k].multiplicity())).collect();

    let irrep_dims = table.dims();
    let n = g.order();
    let d_theta: usize = irrep_dims.iter().zip(&multiplicities).map(|(&d, &m)| m.min(d) * d).sum();
    let quantum_no_ancilla = simulated_success(&rep, &decomp)?;

    let min_ancilla = min_ancilla_for_certainty(&decomp);
    let r = ancilla.or(min_ancilla).unwrap_or_else(|| irrep_dims.iter().copied().max().unwrap_or(1));
    let quantum_with_ancilla = ancilla_success(&decomp, r);
    let quantum_with_ancilla_simulated = if r > 1 && r * n <= SIMULATE_ANCILLA_MAX_DIM {
        let extended = tensor_with_trivial(&rep, r)?;
        Some(simulated_success(&extended, &decompose(&extended, seed)?)?)
    } else if r == 1 {
        Some(quantum_no_ancilla)
    } else {
        None
    };

    let center_size = g.center().len();
    Ok(ConjugationReport {
        order: n,
        center_size,
        center_obstruction: center_size > 1,
        irrep_dims,
        multiplicities,
        decomposition_multiplicities,
        classical_baseline: classical_conjugation_baseline(g),
        quantum_bound: d_theta as f64 / n as f64,
        quantum_no_ancilla,
        min_ancilla,
        ancilla: r,
        quantum_with_ancilla,
        quantum_with_ancilla_simulated,
    })
}

fn simulated_success(rep: &UnitaryRep, decomp: &IsotypicDecomposition) -> Result<f64> {
    let optimal = construct_optimal_input(decomp);
    debug_assert_eq!(optimal.cyclic_dim, max_cyclic_dimension(decomp));
    let povm = srm_povm(rep, &optimal.state, decomp)?;
    Ok(success_probability(&confusion_matrix(rep, &povm, &optimal.state)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_group, dihedral_group, symmetric_group};
    use alloc::vec;

    fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    #[test]
    fn d3_report() {
        let r = hidden_conjugation_report(&arc(dihedral_group(3).unwrap()), None, 0).unwrap();
        assert_eq!(r.center_size, 1);
        assert!(!r.center_obstruction);
        assert_eq!(r.irrep_dims, vec![1, 1, 2]);
        assert_eq!(r.multiplicities, r.decomposition_multiplicities);
        assert!((r.quantum_no_ancilla - 2.0 / 3.0).abs() < 1e-9);
        assert!((r.quantum_bound - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(r.min_ancilla, Some(2));
        assert!((r.quantum_with_ancilla - 1.0).abs() < 1e-12);
        assert!((r.quantum_with_ancilla_simulated.unwrap() - 1.0).abs() < 1e-9);
        assert!((r.classical_baseline - 0.5).abs() < 1e-12);
    }

    #[test]
    fn d5_multiplicities() {
        let g = arc(dihedral_group(5).unwrap());
        let mut m = conjugation_multiplicities(&character_table(&g, 0).unwrap()).unwrap();
        m.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(m, vec![4, 2, 1, 1]);
    }

    #[test]
    fn abelian_group_cannot_be_distinguished() {
        let r = hidden_conjugation_report(&arc(cyclic_group(4).unwrap()), Some(3), 0).unwrap();
        assert!(r.center_obstruction);
        let mut m = r.multiplicities.clone();
        m.sort_unstable();
        assert_eq!(m, vec![0, 0, 0, 4]);
        assert!((r.quantum_no_ancilla - 0.25).abs() < 1e-9);
        assert_eq!(r.min_ancilla, None);
        assert!((r.quantum_with_ancilla - 0.25).abs() < 1e-12);
    }

    #[test]
    fn s4_has_every_irrep() {
        let r = hidden_conjugation_report(&arc(symmetric_group(4).unwrap()), None, 0).unwrap();
        assert!(r.multiplicities.iter().all(|&m| m > 0));
        assert!((r.quantum_with_ancilla - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_ancilla_rejected() {
        assert!(hidden_conjugation_report(&arc(cyclic_group(2).unwrap()), Some(0), 0).is_err());
    }
}
