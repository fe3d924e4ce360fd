//! Explicit SL2 costandard modules H^0(m) as matrices over a finite field,
//! the spinning (submodule-generation) closure, and the brute-force
//! extraction of composition-factor highest weights from the resulting
//! coordinate lattice.
//!
//! The group acting is SL2 of a chosen subfield, generated by the upper
//! unipotents u_b over an F_p-basis b of the subfield together with the
//! Weyl representative s; torus elements are products of those, and
//! h(t)-stability of spun subspaces is asserted post hoc in the tests.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::field::{AmbientField, El};
use super::linalg::{unit_vector, Matrix, SubspaceBasis};
use crate::{Caps, Error, Result};

/// H^0(m) with a fixed acting subfield: dimension m+1, coordinate i carries
/// weight m - 2i, u_a lower-triangular-indexed by binomials, s the signed
/// antidiagonal.
pub struct FqModule {
    pub dim: usize,
    pub highest_weight: i128,
    pub acting_degree: usize,
    pub weights: Vec<i128>,
    /// u_b for b in the fixed F_p-basis of the acting subfield, then s.
    generators: Vec<Matrix>,
    /// Pascal triangle mod p up to the module dimension.
    binom: Vec<Vec<u64>>,
}

pub fn make_h0(m: usize, field: &AmbientField, acting_degree: usize) -> Result<FqModule> {
    make_h0_with_caps(m, field, acting_degree, &Caps::default())
}

pub fn make_h0_with_caps(
    m: usize,
    field: &AmbientField,
    acting_degree: usize,
    caps: &Caps,
) -> Result<FqModule> {
    let dim = m + 1;
    if dim > caps.max_module_dim {
        return Err(Error::CapExceeded {
            what: "module dimension",
            limit: caps.max_module_dim as u128,
            requested: dim as u128,
        });
    }
    if (m as u128) >= (field.p() as u128).pow(field.degree() as u32) {
        return Err(Error::precondition(
            "m must be smaller than the ambient field size (weight disambiguation)",
        ));
    }
    if acting_degree == 0 || field.degree() % acting_degree != 0 {
        return Err(Error::precondition("acting subfield must sit inside the ambient field"));
    }

    // Pascal triangle mod p, independent of the Lucas route
    let p = field.p();
    let mut binom = vec![vec![0u64; dim]; dim];
    for i in 0..dim {
        binom[i][0] = 1;
        for k in 1..=i {
            binom[i][k] = (binom[i - 1][k - 1] + if k <= i - 1 { binom[i - 1][k] } else { 0 }) % p;
        }
    }

    let weights: Vec<i128> = (0..dim).map(|i| m as i128 - 2 * i as i128).collect();
    let mut module = FqModule {
        dim,
        highest_weight: m as i128,
        acting_degree,
        weights,
        generators: Vec::new(),
        binom,
    };
    let mut gens = Vec::new();
    for b in field.subfield_p_basis(acting_degree)? {
        gens.push(module.u_matrix(field, b));
    }
    gens.push(module.s_matrix(field));
    module.generators = gens;
    Ok(module)
}

impl FqModule {
    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn unipotent_generators(&self) -> &[Matrix] {
        &self.generators[..self.generators.len() - 1]
    }

    pub fn binom_mod_p(&self, i: usize, k: usize) -> u64 {
        self.binom[i][k]
    }

    /// u_a v_i = sum_{k <= i} binom(i, k) a^{i-k} v_k.
    pub fn u_matrix(&self, field: &AmbientField, a: El) -> Matrix {
        let mut m = Matrix::zero(self.dim, self.dim);
        for i in 0..self.dim {
            for k in 0..=i {
                let c = self.binom[i][k];
                if c == 0 {
                    continue;
                }
                let coeff = field.mul(field.from_scalar(c), field.pow(a, (i - k) as u128));
                m.set(i, k, coeff);
            }
        }
        m
    }

    /// s v_i = (-1)^{m-i} v_{m-i}.
    pub fn s_matrix(&self, field: &AmbientField) -> Matrix {
        let mut s = Matrix::zero(self.dim, self.dim);
        let m = self.dim - 1;
        for i in 0..self.dim {
            s.set(i, m - i, field.sign((m - i) as i128));
        }
        s
    }

    /// h(t) v_i = t^{m-2i} v_i.
    pub fn h_matrix(&self, field: &AmbientField, t: El) -> Matrix {
        let mut h = Matrix::zero(self.dim, self.dim);
        for i in 0..self.dim {
            h.set(i, i, field.pow_signed(t, self.weights[i]));
        }
        h
    }
}

/// Smallest generator-stable subspace containing the seeds. Monotone,
/// idempotent, and independent of seed order by canonicality of the
/// echelon form.
pub fn spin(field: &AmbientField, module: &FqModule, seeds: &[Vec<El>]) -> SubspaceBasis {
    spin_under(field, module.generators(), module.dim, seeds)
}

/// Spin under an explicit generator list.
pub fn spin_under(
    field: &AmbientField,
    generators: &[Matrix],
    dim: usize,
    seeds: &[Vec<El>],
) -> SubspaceBasis {
    let mut basis = SubspaceBasis::new(dim);
    let mut queue: Vec<Vec<El>> = Vec::new();
    for seed in seeds {
        if basis.insert(field, seed) {
            queue.push(seed.clone());
        }
    }
    // every vector ever inserted is processed once; the span only grows,
    // so images of stale row forms still certify stability
    while let Some(v) = queue.pop() {
        for g in generators {
            let image = g.apply(field, &v);
            if basis.insert(field, &image) {
                queue.push(image);
            }
        }
    }
    basis
}

/// Everything the spin oracle extracts from H^0(m) at one go: the
/// coordinate supports of the single-coordinate spins, the full submodule
/// lattice as coordinate sets, a maximal chain, and the factor weights
/// read off the unipotent-fixed line of each chain quotient.
pub struct SpinAnalysis {
    pub m: usize,
    pub p: u64,
    pub field_degree: usize,
    /// coords of spin(v_i), for i = 0..=m.
    pub principal: Vec<BTreeSet<usize>>,
    /// all distinct submodules as coordinate sets, sorted by (size, lex).
    pub lattice: Vec<BTreeSet<usize>>,
    /// one maximal chain through the lattice.
    pub chain: Vec<BTreeSet<usize>>,
    /// composition-factor highest weights, from the chain quotients.
    pub factor_weights: BTreeSet<i128>,
}

pub fn spin_analysis(m: usize, p: u64, caps: &Caps) -> Result<SpinAnalysis> {
    let mut k = 1usize;
    while (p as u128).pow(k as u32) <= m as u128 {
        k += 1;
    }
    spin_analysis_at_degree(m, p, k, caps)
}

pub fn spin_analysis_at_degree(
    m: usize,
    p: u64,
    field_degree: usize,
    caps: &Caps,
) -> Result<SpinAnalysis> {
    let field = AmbientField::new_with_caps(p, field_degree, caps)?;
    let module = make_h0_with_caps(m, &field, field_degree, caps)?;

    let mut principal = Vec::with_capacity(module.dim);
    for i in 0..module.dim {
        let basis = spin(&field, &module, &[unit_vector(module.dim, &field, i)]);
        let coords = basis.coordinate_support().ok_or_else(|| {
            Error::precondition("spin of a weight vector is not coordinate-split")
        })?;
        principal.push(coords);
    }

    // all submodules are sums of single-coordinate spins
    let mut lattice: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    lattice.insert(BTreeSet::new());
    let mut worklist: Vec<BTreeSet<usize>> = vec![BTreeSet::new()];
    while let Some(current) = worklist.pop() {
        for coords in &principal {
            let unioned: BTreeSet<usize> = current.union(coords).copied().collect();
            if !lattice.contains(&unioned) {
                if lattice.len() >= caps.max_lattice_size {
                    return Err(Error::CapExceeded {
                        what: "spin lattice size",
                        limit: caps.max_lattice_size as u128,
                        requested: caps.max_lattice_size as u128 + 1,
                    });
                }
                lattice.insert(unioned.clone());
                worklist.push(unioned);
            }
        }
    }
    let mut lattice: Vec<BTreeSet<usize>> = lattice.into_iter().collect();
    lattice.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));

    // maximal chain: always step to the smallest strictly-larger member
    let top: BTreeSet<usize> = (0..module.dim).collect();
    debug_assert!(lattice.contains(&top));
    let mut chain = vec![BTreeSet::new()];
    while chain.last().unwrap() != &top {
        let current = chain.last().unwrap();
        let next = lattice
            .iter()
            .filter(|s| s.len() > current.len() && current.is_subset(s))
            .min_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()))
            .expect("top of the lattice is reachable")
            .clone();
        chain.push(next);
    }

    // factor weight per quotient: the unique new coordinate fixed by every
    // unipotent generator modulo the lower term
    let mut factor_weights = BTreeSet::new();
    for step in chain.windows(2) {
        let (lower, upper) = (&step[0], &step[1]);
        let fresh: Vec<usize> = upper.difference(lower).copied().collect();
        let mut fixed = Vec::new();
        for &j in &fresh {
            let is_fixed = module.unipotent_generators().iter().all(|g| {
                (0..module.dim).all(|c| c == j || g.get(j, c) == 0 || lower.contains(&c))
            });
            if is_fixed {
                fixed.push(j);
            }
        }
        if fixed.len() != 1 {
            return Err(Error::precondition(
                "chain quotient does not have a unique unipotent-fixed coordinate",
            ));
        }
        let weight = module.weights[fixed[0]];
        if !factor_weights.insert(weight) {
            return Err(Error::precondition("repeated factor weight in a maximal chain"));
        }
    }

    Ok(SpinAnalysis { m, p, field_degree, principal, lattice, chain, factor_weights })
}

/// Composition-factor highest weights of H^0(m) by brute force.
pub fn brute_factors(m: usize, p: u64, caps: &Caps) -> Result<BTreeSet<i128>> {
    Ok(spin_analysis(m, p, caps)?.factor_weights)
}

/// Check that spins of random vectors are coordinate-split: any member
/// with a nonzero j-th coordinate drags the whole coordinate line in.
pub fn verify_coordinate_splitness(m: usize, p: u64, k: usize, samples: usize, seed: u64) -> Result<bool> {
    let caps = Caps::default();
    if (p as u128).pow(k as u32) <= m as u128 {
        return Err(Error::precondition("need p^k > m"));
    }
    let field = AmbientField::new_with_caps(p, k, &caps)?;
    let module = make_h0_with_caps(m, &field, k, &caps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let v: Vec<El> = (0..module.dim)
            .map(|_| {
                let digits: Vec<u64> =
                    (0..field.degree()).map(|_| rng.next_u32() as u64 % p).collect();
                field.from_digits(&digits)
            })
            .collect();
        let basis = spin(&field, &module, &[v]);
        if basis.coordinate_support().is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finite proxy for the submodule-restriction theorem: for m below the
/// acting subfield size, re-spinning a G_{q^a}-spin with G_{q^{2a}}
/// generators does not grow it.
pub fn verify_restriction_proxy(m: usize, p: u64, a_deg: usize, caps: &Caps) -> Result<bool> {
    if (p as u128).pow(a_deg as u32) <= m as u128 {
        return Err(Error::precondition("need p^a > m"));
    }
    let field = AmbientField::new_with_caps(p, 2 * a_deg, caps)?;
    let small = make_h0_with_caps(m, &field, a_deg, caps)?;
    let big = make_h0_with_caps(m, &field, 2 * a_deg, caps)?;
    for i in 0..small.dim {
        let seed = unit_vector(small.dim, &field, i);
        let spun = spin(&field, &small, &[seed]);
        let respun = spin_under(&field, big.generators(), big.dim, spun.rows());
        if spun != respun {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_module_matrices() {
        // m = 1: the 2-dimensional natural module; s is the signed antidiagonal
        let field = AmbientField::new(2, 2).unwrap();
        let module = make_h0(1, &field, 2).unwrap();
        let s = module.s_matrix(&field);
        assert_eq!(s.get(0, 1), field.sign(1));
        assert_eq!(s.get(1, 0), field.sign(0));
        assert_eq!(s.get(0, 0), field.zero());
        // h(t) v_0 = t^m v_0
        let g = field.multiplicative_generator();
        let h = module.h_matrix(&field, g);
        assert_eq!(h.get(0, 0), g);
        assert_eq!(h.get(1, 1), field.inv(g));
    }

    #[test]
    fn u_matrix_entries_match_binomials() {
        // m = 14, p = 2: entries binom(i, k) a^{i-k} mod 2
        let field = AmbientField::new(2, 4).unwrap();
        let module = make_h0(14, &field, 4).unwrap();
        let g = field.multiplicative_generator();
        let u = module.u_matrix(&field, g);
        for i in 0..15 {
            for k in 0..=i {
                let expected = if module.binom_mod_p(i, k) == 0 {
                    field.zero()
                } else {
                    field.pow(g, (i - k) as u128)
                };
                assert_eq!(u.get(i, k), expected, "entry ({i},{k})");
            }
            assert_eq!(u.get(i, i), field.one());
        }
        // unipotent upper-triangular in the v-basis ordering
        for i in 0..15 {
            for k in i + 1..15 {
                assert_eq!(u.get(i, k), field.zero());
            }
        }
    }

    #[test]
    fn defining_sl2_relations_hold() {
        for (p, n, m) in [(2u64, 4usize, 6usize), (3, 2, 5), (5, 2, 4)] {
            let field = AmbientField::new(p, n).unwrap();
            let module = make_h0(m, &field, n).unwrap();
            let s = module.s_matrix(&field);
            // s^2 = h(-1)
            let s2 = s.matmul(&field, &s);
            let h_neg1 = module.h_matrix(&field, field.neg_one());
            assert_eq!(s2, h_neg1, "p={p} m={m}");
            // u_a u_b = u_{a+b}
            let g = field.multiplicative_generator();
            let ua = module.u_matrix(&field, g);
            let ub = module.u_matrix(&field, field.mul(g, g));
            let uab = module.u_matrix(&field, field.add(g, field.mul(g, g)));
            assert_eq!(ua.matmul(&field, &ub), uab);
            // h(t) u_a h(t)^-1 = u_{t^2 a}; with the row-vector convention
            // the matrix of g1 g2 is M_{g2} M_{g1}, so conjugation reads
            // M_h^-1 M_u M_h
            let h = module.h_matrix(&field, g);
            let h_inv = module.h_matrix(&field, field.inv(g));
            let conj = h_inv.matmul(&field, &ua).matmul(&field, &h);
            let expected = module.u_matrix(&field, field.mul(field.mul(g, g), g));
            assert_eq!(conj, expected);
        }
    }

    #[test]
    fn spin_trivial_cases() {
        let field = AmbientField::new(2, 4).unwrap();
        let module = make_h0(14, &field, 4).unwrap();
        // zero seed spins to zero
        let zero = vec![field.zero(); module.dim];
        assert_eq!(spin(&field, &module, &[zero]).dim(), 0);
        // whole basis spins to the whole space
        let all: Vec<Vec<El>> =
            (0..module.dim).map(|i| unit_vector(module.dim, &field, i)).collect();
        assert_eq!(spin(&field, &module, &all).dim(), module.dim);
    }

    #[test]
    fn highest_weight_spin_in_h0_14_is_the_socle() {
        // seed v_0 does not generate all of H^0(14): the closure stops at
        // the 8-dimensional simple socle on the even coordinates
        let field = AmbientField::new(2, 4).unwrap();
        let module = make_h0(14, &field, 4).unwrap();
        let basis = spin(&field, &module, &[unit_vector(module.dim, &field, 0)]);
        assert_eq!(basis.dim(), 8);
        assert_eq!(
            basis.coordinate_support(),
            Some((0..=14).step_by(2).collect())
        );
    }

    #[test]
    fn spin_monotone_idempotent_order_independent() {
        let field = AmbientField::new(2, 4).unwrap();
        let module = make_h0(10, &field, 4).unwrap();
        let a = unit_vector(module.dim, &field, 3);
        let b = unit_vector(module.dim, &field, 7);
        let one = spin(&field, &module, &[a.clone()]);
        let both = spin(&field, &module, &[a.clone(), b.clone()]);
        let both_swapped = spin(&field, &module, &[b, a]);
        assert!(both.contains_basis(&field, &one), "monotone in seeds");
        assert_eq!(both, both_swapped, "seed order irrelevant");
        let respun = spin(&field, &module, both.rows());
        assert_eq!(respun, both, "idempotent");
    }

    #[test]
    fn spun_subspaces_are_torus_stable() {
        // h(t) is a product of the generators, so spun spaces must be
        // h(t)-stable; check explicitly
        let field = AmbientField::new(3, 2).unwrap();
        let module = make_h0(7, &field, 2).unwrap();
        let basis = spin(&field, &module, &[unit_vector(module.dim, &field, 2)]);
        for t in field.subfield_elements(2).unwrap() {
            if t == field.zero() {
                continue;
            }
            let h = module.h_matrix(&field, t);
            for row in basis.rows() {
                assert!(basis.contains(&field, &h.apply(&field, row)));
            }
        }
    }

    #[test]
    fn h0_2_at_p2_splits_as_expected() {
        // spin(v_0) = {v_0, v_2} (the Frobenius-twisted line plus top),
        // spin(v_1) = everything
        let caps = Caps::default();
        let analysis = spin_analysis(2, 2, &caps).unwrap();
        assert_eq!(analysis.principal[0], BTreeSet::from([0usize, 2]));
        assert_eq!(analysis.principal[1], BTreeSet::from([0usize, 1, 2]));
        assert_eq!(analysis.factor_weights, BTreeSet::from([0i128, 2]));
    }

    #[test]
    fn brute_factors_examples() {
        let caps = Caps::default();
        // m < p: irreducible
        assert_eq!(brute_factors(1, 2, &caps).unwrap(), BTreeSet::from([1i128]));
        assert_eq!(brute_factors(2, 3, &caps).unwrap(), BTreeSet::from([2i128]));
        // frozen richer case
        assert_eq!(
            brute_factors(14, 2, &caps).unwrap(),
            BTreeSet::from([0i128, 8, 12, 14])
        );
    }

    #[test]
    fn brute_factors_independent_of_field_degree() {
        let caps = Caps::default();
        let at4 = spin_analysis_at_degree(14, 2, 4, &caps).unwrap();
        let at5 = spin_analysis_at_degree(14, 2, 5, &caps).unwrap();
        assert_eq!(at4.factor_weights, at5.factor_weights);
        assert_eq!(at4.lattice, at5.lattice);
    }

    #[test]
    fn coordinate_splitness_sampled() {
        assert!(verify_coordinate_splitness(14, 2, 4, 40, 0xC0FFEE).unwrap());
        assert!(verify_coordinate_splitness(8, 3, 2, 40, 7).unwrap());
        assert!(verify_coordinate_splitness(14, 2, 4, 10, 99).unwrap()); // different seed
    }

    #[test]
    fn restriction_proxy_no_growth() {
        let caps = Caps::default();
        assert!(verify_restriction_proxy(2, 2, 2, &caps).unwrap());
        assert!(verify_restriction_proxy(5, 3, 2, &caps).unwrap());
    }
}
