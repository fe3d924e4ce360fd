//! Agreement between the two independent routes to the factor structure of
//! H^0(m): the p-adic reflection combinatorics and the matrix spin oracle.
//! The full grids run in the acceptance suite; this battery keeps the
//! per-module loop fast.

use std::collections::BTreeSet;

use indmod_core::fforacle::{spin_analysis, SpinAnalysis};
use indmod_core::sl2lab::{factor_set, submodule_lattice, SubmoduleLattice};
use indmod_core::Caps;

/// Map a descriptor's factor-weight set to the spin-lattice coordinate set
/// it should correspond to: the union of the single-coordinate spins of the
/// generating weight lines.
fn descriptor_to_coords(
    analysis: &SpinAnalysis,
    weights: &BTreeSet<i128>,
) -> BTreeSet<usize> {
    let m = analysis.m as i128;
    let mut out = BTreeSet::new();
    for &nu in weights {
        let coord = ((m - nu) / 2) as usize;
        out.extend(analysis.principal[coord].iter().copied());
    }
    out
}

fn check_order_isomorphism(lattice: &SubmoduleLattice, analysis: &SpinAnalysis) {
    let images: Vec<BTreeSet<usize>> = lattice
        .members
        .iter()
        .map(|d| descriptor_to_coords(analysis, &d.factor_weights))
        .collect();
    // bijective onto the spin lattice
    let mut sorted = images.clone();
    sorted.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
    sorted.dedup();
    assert_eq!(
        sorted, analysis.lattice,
        "descriptor images must exhaust the spin lattice (m={}, p={})",
        lattice.m, lattice.p
    );
    // order-preserving in both directions
    for (i, a) in lattice.members.iter().enumerate() {
        for (j, b) in lattice.members.iter().enumerate() {
            let descriptor_leq = a.factor_weights.is_subset(&b.factor_weights);
            let image_leq = images[i].is_subset(&images[j]);
            assert_eq!(
                descriptor_leq, image_leq,
                "containment mismatch at ({i},{j}) for m={} p={}",
                lattice.m, lattice.p
            );
        }
    }
}

#[test]
fn factor_sets_match_spin_oracle_p2() {
    let caps = Caps::default();
    for m in 0..=16usize {
        let combinatorial = factor_set(m as i128, 2).unwrap().weights;
        let analysis = spin_analysis(m, 2, &caps).unwrap();
        assert_eq!(combinatorial, analysis.factor_weights, "m={m} p=2");
    }
}

#[test]
fn factor_sets_match_spin_oracle_p3() {
    let caps = Caps::default();
    for m in 0..=14usize {
        let combinatorial = factor_set(m as i128, 3).unwrap().weights;
        let analysis = spin_analysis(m, 3, &caps).unwrap();
        assert_eq!(combinatorial, analysis.factor_weights, "m={m} p=3");
    }
}

#[test]
fn factor_sets_match_spin_oracle_p5_spot() {
    let caps = Caps::default();
    for m in [4usize, 7, 11] {
        let combinatorial = factor_set(m as i128, 5).unwrap().weights;
        let analysis = spin_analysis(m, 5, &caps).unwrap();
        assert_eq!(combinatorial, analysis.factor_weights, "m={m} p=5");
    }
}

#[test]
fn lattices_order_isomorphic() {
    let caps = Caps::default();
    for (m, p) in [(14usize, 2u64), (8, 3), (12, 2), (10, 2), (6, 3)] {
        let lattice = submodule_lattice(m as i128, p as i128).unwrap();
        let analysis = spin_analysis(m, p, &caps).unwrap();
        assert_eq!(lattice.members.len(), analysis.lattice.len(), "m={m} p={p}");
        check_order_isomorphism(&lattice, &analysis);
        // composition length equals the factor count on both sides
        assert_eq!(analysis.chain.len() - 1, analysis.factor_weights.len());
        assert_eq!(
            lattice.members.last().unwrap().factor_weights.len(),
            analysis.factor_weights.len()
        );
    }
}

#[test]
fn two_family_description_matches_both_routes() {
    use indmod_core::sl2lab::h0_frobenius_factors;
    let caps = Caps::default();
    for (lambda, q, r) in [(1i128, 2i128, 4u32), (1, 2, 3), (1, 3, 2), (2, 3, 2), (3, 4, 2)] {
        let p: i128 = if q % 2 == 0 { 2 } else { 3 };
        let mu_r = q.pow(r) - 1 - lambda;
        let families = h0_frobenius_factors(lambda, q, r).unwrap();
        assert_eq!(families, factor_set(mu_r, p).unwrap().weights);
        let analysis = spin_analysis(mu_r as usize, p as u64, &caps).unwrap();
        assert_eq!(families, analysis.factor_weights, "lambda={lambda} q={q} r={r}");
    }
}

#[test]
fn chain_certificate_confirmed_by_spin() {
    use indmod_core::fforacle::verify_chain;
    use indmod_core::sl2lab::strict_chain_certificate;
    let caps = Caps::default();
    for (lambda, q, a, t, tp) in [(1usize, 2u64, 1u32, 2u32, 2u32), (1, 3, 1, 2, 2)] {
        let cert = strict_chain_certificate(lambda as i128, q as i128, a, t, tp).unwrap();
        assert!(cert.is_valid());
        let witness = verify_chain(lambda, q, a, t, tp, &caps).unwrap();
        assert!(witness.ok(), "spin confirms the certificate for ({lambda},{q},{a},{t},{tp})");
        assert_eq!(witness.distinguishing_index, cert.distinguishing_index);
    }
}
