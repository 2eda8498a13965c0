//! Property tests over small groups and representations.

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symdisc_core::linalg::{polar_unitary, random_unit_vector};
use symdisc_core::problems::conjugation_rep;
use symdisc_core::*;

fn small_group(family: u8, param: usize) -> Arc<FiniteGroup> {
    let g = match family % 4 {
        0 => cyclic_group(1 + param % 12),
        1 => dihedral_group(2 + param % 6),
        2 => symmetric_group(1 + param % 4),
        _ => direct_product(&cyclic_group(2 + param % 3).unwrap(), &cyclic_group(2 + param % 2).unwrap()),
    };
    Arc::new(g.unwrap())
}

fn random_unitary(dim: usize, seed: u64) -> CMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cols: Vec<Vec<Complex64>> = (0..dim).map(|_| random_unit_vector(&mut rng, dim)).collect();
    polar_unitary(&CMatrix::from_columns(dim, &cols)).expect("random matrix is invertible")
}

/// The same representation in a random orthonormal basis, with dense storage.
fn scrambled(rep: &UnitaryRep, seed: u64) -> UnitaryRep {
    let u = random_unitary(rep.dim(), seed);
    let ms = (0..rep.group().order()).map(|g| u.adjoint().matmul(&rep.matrix(g)).matmul(&u)).collect();
    UnitaryRep::from_matrices(rep.group().clone(), ms, RepTag::Custom("scrambled".into())).unwrap()
}

/// `⟨χ_rep, χ⟩` straight from the matrix traces, summed over every element.
fn multiplicity_from_traces(rep: &UnitaryRep, chi: &Character) -> f64 {
    let g = rep.group();
    let s: Complex64 = (0..g.order()).map(|x| rep.trace(x) * chi.at(g, x).conj()).sum();
    s.re / g.order() as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_partition_is_consistent(family in 0u8..4, param in 0usize..24) {
        let g = small_group(family, param);
        let cl = g.classes();
        prop_assert_eq!(cl.sizes().iter().sum::<usize>(), g.order());
        prop_assert_eq!(&cl.classes[0], &vec![g.identity()]);
        for (c, members) in cl.classes.iter().enumerate() {
            prop_assert_eq!(cl.representatives[c], members[0]);
            for &x in members {
                prop_assert_eq!(cl.class_of[x], c);
                // Brute-force orbit.
                let mut orbit: Vec<usize> = (0..g.order()).map(|a| g.conjugate(a, x)).collect();
                orbit.sort_unstable();
                orbit.dedup();
                prop_assert_eq!(&orbit, members);
            }
        }
        prop_assert_eq!(g.center().len(), cl.sizes().iter().filter(|&&s| s == 1).count());
    }

    #[test]
    fn regular_decomposition_invariants(family in 0u8..4, param in 0usize..24, seed in any::<u64>()) {
        let g = small_group(family, param);
        let d = decompose(&regular_representation(&g).unwrap(), seed).unwrap();
        prop_assert_eq!(d.shape().iter().map(|&(dim, _)| dim * dim).sum::<usize>(), g.order());
        prop_assert_eq!(d.len(), g.classes().len());
        for t in &d.isotypes {
            prop_assert_eq!(t.multiplicity(), t.irrep_dim);
            prop_assert!((t.character.norm_sqr(&g) - 1.0).abs() < 1e-8);
        }
        prop_assert!(d.reassembly_residual() < 1e-8);
        prop_assert!(d.orthonormality_defect() < 1e-8);
        let table = character_table(&g, seed).unwrap();
        prop_assert!(table.row_orthogonality_residual() < 1e-8);
        prop_assert!(table.column_orthogonality_residual() < 1e-8);
    }

    #[test]
    fn decomposition_is_basis_independent(family in 0u8..4, param in 0usize..12, seed in any::<u64>()) {
        let g = small_group(family, param);
        let rep = scrambled(&conjugation_rep(&g).unwrap(), seed);
        let d = decompose(&rep, seed).unwrap();
        prop_assert!(d.reassembly_residual() < 1e-8);
        let mut total = 0;
        for t in &d.isotypes {
            let m = multiplicity_from_traces(&rep, &t.character);
            prop_assert!((m - t.multiplicity() as f64).abs() < 1e-6);
            total += t.multiplicity() * t.irrep_dim;
        }
        prop_assert_eq!(total, g.order());
    }

    #[test]
    fn constructed_input_attains_dimension_bound(family in 0u8..4, param in 0usize..12, seed in any::<u64>()) {
        let g = small_group(family, param);
        let rep = scrambled(&conjugation_rep(&g).unwrap(), seed);
        let d = decompose(&rep, seed).unwrap();
        let opt = construct_optimal_input(&d);
        let povm = srm_povm(&rep, &opt.state, &d).unwrap();
        prop_assert!(povm.completeness_residual(&rep) < 1e-8);
        let c = confusion_matrix(&rep, &povm, &opt.state);
        prop_assert!(c.column_sum_defect() < 1e-9);
        let bound = max_cyclic_dimension(&d) as f64 / g.order() as f64;
        prop_assert!((success_probability(&c) - bound).abs() < 1e-9);
    }

    #[test]
    fn random_inputs_respect_dimension_bound(family in 0u8..4, param in 0usize..12, seed in any::<u64>()) {
        let g = small_group(family, param);
        let rep = conjugation_rep(&g).unwrap();
        let d = decompose(&rep, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_unit_vector(&mut rng, rep.dim());
        let povm = square_root_measurement(&rep, &psi).unwrap();
        let c = confusion_matrix(&rep, &povm, &psi);
        prop_assert!(c.column_sum_defect() < 1e-9);
        prop_assert!(dimension_bound_check(&d, success_probability(&c)));
    }

    #[test]
    fn ancilla_formula_matches_extended_decomposition(family in 0u8..4, param in 0usize..8, r in 1usize..4) {
        let g = small_group(family, param);
        let rep = conjugation_rep(&g).unwrap();
        let d = decompose(&rep, 0).unwrap();
        let extended = tensor_with_trivial(&rep, r).unwrap();
        let de = decompose(&extended, 0).unwrap();
        let formula = ancilla_success(&d, r);
        prop_assert!((formula - max_cyclic_dimension(&de) as f64 / g.order() as f64).abs() < 1e-12);
        let opt = construct_optimal_input(&de);
        let c = confusion_matrix(&extended, &srm_povm(&extended, &opt.state, &de).unwrap(), &opt.state);
        prop_assert!((success_probability(&c) - formula).abs() < 1e-9);
        prop_assert!(ancilla_success(&d, r + 1) >= formula);
    }
}

#[test]
fn character_confusion_matches_simulation_on_regular_reps() {
    for g in [cyclic_group(5), dihedral_group(4), symmetric_group(3), symmetric_group(4)] {
        let g = Arc::new(g.unwrap());
        let rep = regular_representation(&g).unwrap();
        let d = decompose(&rep, 3).unwrap();
        let opt = construct_optimal_input(&d);
        let c = confusion_matrix(&rep, &srm_povm(&rep, &opt.state, &d).unwrap(), &opt.state);
        for h in 0..g.order() {
            for x in 0..g.order() {
                assert!((confusion_by_character(&d, x, h).unwrap() - c.prob(h, x)).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn character_confusion_rejects_thin_isotypes() {
    let g = Arc::new(dihedral_group(3).unwrap());
    let d = decompose(&conjugation_rep(&g).unwrap(), 0).unwrap();
    assert!(matches!(confusion_by_character(&d, 0, 1), Err(Error::HypothesisViolated { .. })));
}

#[test]
fn non_optimal_input_is_rejected() {
    let g = Arc::new(symmetric_group(3).unwrap());
    let rep = regular_representation(&g).unwrap();
    let d = decompose(&rep, 0).unwrap();
    let mut psi = [Complex64::new(0.0, 0.0); 6];
    psi[0] = Complex64::new(1.0, 0.0);
    psi[1] = Complex64::new(0.6, 0.0);
    let psi: Vec<Complex64> = psi.iter().map(|x| x / 1.36f64.sqrt()).collect();
    assert!(matches!(srm_povm(&rep, &psi, &d), Err(Error::NotOptimalInput { .. })));
    assert!(!is_optimal_input(&rep, &psi, &d).unwrap().optimal);
}

#[test]
fn minimum_ancilla_needs_every_irrep() {
    let s3 = Arc::new(symmetric_group(3).unwrap());
    let d = decompose(&conjugation_rep(&s3).unwrap(), 0).unwrap();
    assert_eq!(min_ancilla_for_certainty(&d), Some(2));
    let z3 = Arc::new(cyclic_group(3).unwrap());
    let d = decompose(&conjugation_rep(&z3).unwrap(), 0).unwrap();
    assert_eq!(min_ancilla_for_certainty(&d), None);
}
