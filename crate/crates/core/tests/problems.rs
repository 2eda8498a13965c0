use std::sync::Arc;

use symdisc_core::linalg::inner;
use symdisc_core::problems::*;
use symdisc_core::*;

/// Product success recomputed from dense oracle matrices in the full space,
/// looping over every measured pair.
fn brute_force_product_success(inst: &GroupMultInstance) -> Vec<f64> {
    let g = &inst.base_group;
    let n = g.order();
    let psi = inst.full_state();
    let mu = inst.working.lift(&inst.povm.generator);
    let dense: Vec<CMatrix> = (0..n * n).map(|p| inst.oracle_rep.matrix(p)).collect();
    (0..n * n)
        .map(|hidden| {
            let state = dense[hidden].matvec(&psi);
            let product = g.mul(hidden / n, hidden % n);
            (0..n * n)
                .filter(|m| g.mul(m / n, m % n) == product)
                .map(|m| inner(&dense[m].matvec(&mu), &state).norm_sqr())
                .sum()
        })
        .collect()
}

#[test]
fn product_success_matches_brute_force() {
    for g in [cyclic_group(4), symmetric_group(3), dihedral_group(4)] {
        let g = Arc::new(g.unwrap());
        let inst = GroupMultInstance::new(&g, Construction::AllNontrivial, 5).unwrap();
        for p in brute_force_product_success(&inst) {
            assert!((p - 2.0 / g.order() as f64).abs() < 1e-9);
            assert!((p - inst.product_success.mean).abs() < 1e-9);
        }
    }
}

#[test]
fn single_irrep_variant_for_every_nontrivial_summand() {
    for g in [cyclic_group(3), symmetric_group(3), dihedral_group(5)] {
        let g = Arc::new(g.unwrap());
        let table = character_table(&g, 0).unwrap();
        for (k, chi) in table.rows.iter().enumerate() {
            if chi.is_trivial() {
                continue;
            }
            let inst = GroupMultInstance::new(&g, Construction::SingleIrrep(k), 0).unwrap();
            assert_eq!(inst.working.rep.dim(), 2 * chi.dim() * chi.dim());
            assert!((inst.product_success.min - 2.0 / g.order() as f64).abs() < 1e-9);
            assert!(inst.product_success.spread() < 1e-9);
            assert!(check_dual_balance(&inst).unwrap().balanced);
        }
    }
}

#[test]
fn group_mult_on_s4() {
    let g = Arc::new(symmetric_group(4).unwrap());
    let inst = GroupMultInstance::new(&g, Construction::AllNontrivial, 0).unwrap();
    assert!((inst.product_success.min - 1.0 / 12.0).abs() < 1e-9);
    assert!(inst.product_success.spread() < 1e-9);
    assert!(check_dual_balance(&inst).unwrap().balanced);
}

#[test]
fn vandam_matches_binomial_sum() {
    for n in 1..=4 {
        for k in 0..=n {
            let f = vandam_rep(n, k, 0).unwrap();
            assert!((f.p_success - vandam_formula(n, k)).abs() < 1e-9, "n={n} k={k}");
            assert!((f.p_bound - f.p_success).abs() < 1e-9);
        }
    }
}

#[test]
fn conjugation_row_sums_match_trace_multiplicities() {
    for g in [
        dihedral_group(4),
        dihedral_group(6),
        symmetric_group(4),
        direct_product(&symmetric_group(3).unwrap(), &cyclic_group(2).unwrap()),
    ] {
        let g = Arc::new(g.unwrap());
        let table = character_table(&g, 1).unwrap();
        let m = conjugation_multiplicities(&table).unwrap();
        let rep = conjugation_rep(&g).unwrap();
        for (chi, &mult) in table.rows.iter().zip(&m) {
            let s: Complex64 = (0..g.order()).map(|x| rep.trace(x) * chi.at(&g, x).conj()).sum();
            assert!((s.re / g.order() as f64 - mult as f64).abs() < 1e-8);
        }
    }
}
