//! The verification suites behind `verify-all` and the acceptance test
//! target: one function per criterion, each returning a timed pass/fail
//! record with a human-readable detail line.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigUint;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use indmod_core::charlat::RationalCharacter;
use indmod_core::decomp::{decompose, dimension_identity_check, Mode, ThetaInput};
use indmod_core::fforacle::{
    solve_sus, spin_analysis, verify_chain, verify_exact_sequence, verify_extend,
    verify_power_sum_range, AmbientField, SpinAnalysis,
};
use indmod_core::klpoly::{transition_matrix, KlTable, Transition};
use indmod_core::poly::IntPolynomial;
use indmod_core::rootsys::Weight;
use indmod_core::sl2lab::{
    factor_set, h0_frobenius_factors, lucas_binom_mod_p, strict_chain_certificate,
    submodule_lattice, SubmoduleLattice,
};
use indmod_core::weyl::WeylGroup;
use indmod_core::{Caps, Subset};

use crate::hecke::certify_kl_table;

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
    /// Runtime budget from the acceptance criteria, wall-clock seconds.
    pub budget_secs: u64,
}

impl CheckResult {
    /// With timing, for test logs.
    pub fn line(&self) -> String {
        format!(
            "{}: {} ({} ms) - {}",
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.millis,
            self.detail
        )
    }

    /// Without timing; CLI output stays byte-identical across runs.
    pub fn line_stable(&self) -> String {
        format!(
            "{}: {} - {}",
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub quick: bool,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { quick: false, seed: 0x1D40D, jobs: 1 }
    }
}

fn timed(
    name: &str,
    budget_secs: u64,
    body: impl FnOnce() -> (bool, String),
) -> CheckResult {
    let start = Instant::now();
    let (passed, detail) = body();
    CheckResult {
        name: name.to_string(),
        passed,
        detail,
        millis: start.elapsed().as_millis(),
        budget_secs,
    }
}

fn random_theta(rng: &mut ChaCha8Rng, rank: usize) -> Weight {
    Weight::new((0..rank).map(|_| (rng.next_u32() % 11) as i64 - 5).collect())
}

/// Criterion 1: cross-mode factor counts are exactly 2^{|I(theta)|} with
/// pairwise distinct labels, over a seeded random battery per type.
pub fn factor_count_reproduction(opts: &SuiteOptions) -> CheckResult {
    timed("criterion 1: cross-mode factor count", 5, || {
        let battery = if opts.quick { 10 } else { 50 };
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut cases = 0usize;
        for name in ["A1", "A2", "A3", "B2", "G2"] {
            let group = match WeylGroup::from_preset(name) {
                Ok(g) => g,
                Err(e) => return (false, format!("{name}: {e}")),
            };
            for _ in 0..battery {
                let theta = RationalCharacter::new(random_theta(&mut rng, group.rank()));
                let itheta = indmod_core::charlat::i_theta(&theta);
                let report =
                    match decompose(&group, &ThetaInput::Rational(theta), Mode::Cross) {
                        Ok(r) => r,
                        Err(e) => return (false, format!("{name}: {e}")),
                    };
                if !report.series_exists || report.factors.len() != 1 << itheta.len() {
                    return (
                        false,
                        format!("{name}: expected {} factors", 1 << itheta.len()),
                    );
                }
                let labels: BTreeSet<Subset> = report.factors.iter().map(|f| f.j).collect();
                if labels.len() != report.factors.len() {
                    return (false, format!("{name}: duplicate factor labels"));
                }
                cases += 1;
            }
        }
        (true, format!("{cases} random characters across 5 types"))
    })
}

/// Criterion 2: natural-mode existence iff antidominant, with a positive
/// witness coordinate otherwise.
pub fn existence_criterion(opts: &SuiteOptions) -> CheckResult {
    timed("criterion 2: natural-mode existence", 1, || {
        let battery = if opts.quick { 10 } else { 50 };
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed);
        let mut cases = 0usize;
        for name in ["A1", "A2", "A3", "B2", "G2"] {
            let group = match WeylGroup::from_preset(name) {
                Ok(g) => g,
                Err(e) => return (false, format!("{name}: {e}")),
            };
            for _ in 0..battery {
                let weight = random_theta(&mut rng, group.rank());
                let antidominant = weight.coords.iter().all(|&c| c <= 0);
                let theta = RationalCharacter::new(weight.clone());
                let report =
                    match decompose(&group, &ThetaInput::Rational(theta), Mode::Natural) {
                        Ok(r) => r,
                        Err(e) => return (false, format!("{name}: {e}")),
                    };
                if report.series_exists != antidominant {
                    return (false, format!("{name}: existence mismatch for {weight:?}"));
                }
                if !report.series_exists {
                    match report.witness {
                        Some(i) if weight.coords[i] > 0 => {}
                        _ => return (false, format!("{name}: bad witness for {weight:?}")),
                    }
                }
                cases += 1;
            }
        }
        (true, format!("{cases} random characters across 5 types"))
    })
}

/// Criterion 3: the coset partition and the dimension identity over every
/// (type, I(theta), J), plus the frozen A2 Poincare value.
pub fn partition_identity(opts: &SuiteOptions) -> CheckResult {
    timed("criterion 3: partition identity", 10, || {
        let types: &[&str] = if opts.quick {
            &["A1", "A2", "A3", "B2", "B3", "G2"]
        } else {
            &["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "G2"]
        };
        let mut checks = 0usize;
        for &name in types {
            let group = match WeylGroup::from_preset(name) {
                Ok(g) => g,
                Err(e) => return (false, format!("{name}: {e}")),
            };
            let full = Subset::full(group.rank());
            for itheta in full.subsets() {
                for j in itheta.subsets() {
                    let cert = match group.partition_check(j, itheta) {
                        Ok(c) => c,
                        Err(e) => return (false, format!("{name}: {e}")),
                    };
                    let total: usize = cert.z_cardinalities.iter().map(|&(_, n)| n).sum();
                    if !cert.ok || total != cert.x_cardinality {
                        return (
                            false,
                            format!("{name}: partition fails at J={j:?} Itheta={itheta:?}"),
                        );
                    }
                    match dimension_identity_check(&group, itheta, j) {
                        Ok(true) => {}
                        _ => {
                            return (
                                false,
                                format!("{name}: dimension identity fails at J={j:?}"),
                            )
                        }
                    }
                    checks += 1;
                }
            }
        }
        // frozen A2 value: factors of the trivial character sum to the
        // Poincare polynomial 1 + 2t + 2t^2 + t^3
        let a2 = WeylGroup::from_preset("A2").unwrap();
        let report = decompose(
            &a2,
            &ThetaInput::Rational(RationalCharacter::zero(2)),
            Mode::Cross,
        )
        .unwrap();
        let total = report
            .factors
            .iter()
            .fold(IntPolynomial::zero(), |acc, f| acc.add(&f.dim_poly));
        if total != IntPolynomial::from_coeffs(vec![1, 2, 2, 1]) {
            return (false, "A2 Poincare value mismatch".to_string());
        }
        (true, format!("{checks} (type, Itheta, J) triples"))
    })
}

/// Criterion 4: the KL table certified by Hecke multiplication, and the
/// two triangular transition matrices are exact mutual inverses.
pub fn kl_layer(opts: &SuiteOptions) -> CheckResult {
    timed("criterion 4: KL layer", 30, || {
        let types: &[&str] = if opts.quick { &["A2", "B2"] } else { &["A3", "B2"] };
        for &name in types {
            let group = WeylGroup::from_preset(name).unwrap();
            let table = KlTable::build(&group);
            if let Err(msg) = certify_kl_table(&group, &table) {
                return (false, format!("{name}: {msg}"));
            }
            for j in Subset::full(group.rank()).subsets() {
                let a = match transition_matrix(&table, &group, j, Transition::CanonicalOverTranslated)
                {
                    Ok(m) => m,
                    Err(e) => return (false, format!("{name}: {e}")),
                };
                let b = match transition_matrix(&table, &group, j, Transition::TranslatedOverCanonical)
                {
                    Ok(m) => m,
                    Err(e) => return (false, format!("{name}: {e}")),
                };
                let n = a.len();
                for r in 0..n {
                    if a[r][r] != 1 || b[r][r] != 1 {
                        return (false, format!("{name}: not unitriangular at J={j:?}"));
                    }
                    for c in 0..n {
                        if c > r && (a[r][c] != 0 || b[r][c] != 0) {
                            return (false, format!("{name}: not triangular at J={j:?}"));
                        }
                        let prod: i64 = (0..n).map(|k| a[r][k] * b[k][c]).sum();
                        if prod != i64::from(r == c) {
                            return (false, format!("{name}: not mutually inverse at J={j:?}"));
                        }
                    }
                }
            }
        }
        (true, format!("types {types:?}: Hecke-certified, transitions inverse"))
    })
}

/// Shared logic for criterion 5: factor-set equality and lattice order
/// isomorphism for one (m, p).
fn check_sl2_oracle_pair(m: usize, p: u64, caps: &Caps) -> Result<(), String> {
    let combinatorial = factor_set(m as i128, p as i128)
        .map_err(|e| format!("factor_set({m},{p}): {e}"))?
        .weights;
    let analysis =
        spin_analysis(m, p, caps).map_err(|e| format!("spin_analysis({m},{p}): {e}"))?;
    if combinatorial != analysis.factor_weights {
        return Err(format!(
            "factor sets differ at m={m} p={p}: {combinatorial:?} vs {:?}",
            analysis.factor_weights
        ));
    }
    let lattice = submodule_lattice(m as i128, p as i128)
        .map_err(|e| format!("lattice({m},{p}): {e}"))?;
    lattice_order_isomorphic(&lattice, &analysis)
        .map_err(|e| format!("m={m} p={p}: {e}"))
}

/// Descriptor lattice vs spin lattice: bijection preserving containment in
/// both directions, through the natural coordinate realization.
pub fn lattice_order_isomorphic(
    lattice: &SubmoduleLattice,
    analysis: &SpinAnalysis,
) -> Result<(), String> {
    if lattice.members.len() != analysis.lattice.len() {
        return Err(format!(
            "lattice sizes differ: {} descriptors vs {} spin members",
            lattice.members.len(),
            analysis.lattice.len()
        ));
    }
    let m = analysis.m as i128;
    let images: Vec<BTreeSet<usize>> = lattice
        .members
        .iter()
        .map(|d| {
            let mut coords = BTreeSet::new();
            for &nu in &d.factor_weights {
                coords.extend(analysis.principal[((m - nu) / 2) as usize].iter().copied());
            }
            coords
        })
        .collect();
    let mut sorted = images.clone();
    sorted.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
    sorted.dedup();
    if sorted != analysis.lattice {
        return Err("descriptor images do not exhaust the spin lattice".to_string());
    }
    for (i, a) in lattice.members.iter().enumerate() {
        for (j, b) in lattice.members.iter().enumerate() {
            let descriptor_leq = a.factor_weights.is_subset(&b.factor_weights);
            let image_leq = images[i].is_subset(&images[j]);
            if descriptor_leq != image_leq {
                return Err(format!("containment mismatch between members {i} and {j}"));
            }
        }
    }
    Ok(())
}

/// Criterion 5: SL2 factor combinatorics vs the spin oracle, full grid.
pub fn sl2_factor_oracle_equivalence(opts: &SuiteOptions) -> CheckResult {
    timed("criterion 5: SL2 factor oracle equivalence", 300, || {
        let caps = Caps::default();
        let (max2, max3) = if opts.quick { (12usize, 9usize) } else { (24, 26) };
        let mut grid: Vec<(usize, u64)> = (0..=max2).map(|m| (m, 2u64)).collect();
        grid.extend((0..=max3).map(|m| (m, 3u64)));
        let run = |&(m, p): &(usize, u64)| check_sl2_oracle_pair(m, p, &caps);
        let outcomes: Vec<Result<(), String>> = if opts.jobs > 1 {
            use rayon::prelude::*;
            rayon::ThreadPoolBuilder::new()
                .num_threads(opts.jobs)
                .build()
                .map(|pool| pool.install(|| grid.par_iter().map(run).collect()))
                .unwrap_or_else(|_| grid.iter().map(run).collect())
        } else {
            grid.iter().map(run).collect()
        };
        for outcome in outcomes {
            if let Err(msg) = outcome {
                return (false, msg);
            }
        }
        (true, format!("{} (m, p) pairs, factor sets and lattices agree", grid.len()))
    })
}

/// Criterion 6: the two-family description equals the direct enumeration
/// over the whole small-parameter grid.
pub fn two_family_consistency(opts: &SuiteOptions) -> CheckResult {
    timed("criterion 6: two-family consistency", 60, || {
        let mut cases = 0usize;
        for p in [2i128, 3] {
            let mut q = p;
            while q <= 9 {
                let mut r = 1u32;
                while q.pow(r) <= 82 {
                    for lambda in 1..q.min(q.pow(r)) {
                        if opts.quick && cases % 3 != 0 {
                            cases += 1;
                            continue;
                        }
                        let mu_r = q.pow(r) - 1 - lambda;
                        let families = match h0_frobenius_factors(lambda, q, r) {
                            Ok(f) => f,
                            Err(e) => {
                                return (false, format!("({lambda},{q},{r}): {e}"));
                            }
                        };
                        let direct = match factor_set(mu_r, p) {
                            Ok(s) => s.weights,
                            Err(e) => {
                                return (false, format!("factor_set({mu_r},{p}): {e}"));
                            }
                        };
                        if families != direct {
                            return (
                                false,
                                format!("families differ at (lambda,q,r)=({lambda},{q},{r})"),
                            );
                        }
                        cases += 1;
                    }
                    r += 1;
                }
                q *= p;
            }
        }
        (true, format!("{cases} (p,d,r,lambda) tuples"))
    })
}

/// Criterion 7: the induced-module exact sequence for every q and lambda.
pub fn exact_sequence_suite(opts: &SuiteOptions) -> CheckResult {
    timed("criterion 7: exact sequence", 120, || {
        let caps = Caps::default();
        let qs: &[u64] = if opts.quick { &[2, 3, 4, 5] } else { &[2, 3, 4, 5, 7, 9] };
        let mut cases = 0usize;
        for &q in qs {
            let p = if q % 2 == 0 { 2 } else if q % 3 == 0 { 3 } else { q };
            let mut d = 0usize;
            let mut v = 1u64;
            while v < q {
                v *= p;
                d += 1;
            }
            let field = match AmbientField::new(p, d) {
                Ok(f) => f,
                Err(e) => return (false, format!("F_{q}: {e}")),
            };
            for lambda in 1..q as usize {
                let report = match verify_exact_sequence(lambda, q, &field, &caps) {
                    Ok(r) => r,
                    Err(e) => return (false, format!("(q={q}, lambda={lambda}): {e}")),
                };
                if !report.ok() || report.kernel_dim != q as usize - lambda {
                    return (
                        false,
                        format!(
                            "(q={q}, lambda={lambda}): kernel {} quotient {}",
                            report.kernel_dim, report.quotient_dim
                        ),
                    );
                }
                cases += 1;
            }
        }
        (true, format!("{cases} (q, lambda) pairs, kernel dimension q - lambda"))
    })
}

/// Criterion 8: the strict spin chain at desk scale, with the predicted
/// separating coordinate, for both parameter tuples.
pub fn strict_chain_suite(_opts: &SuiteOptions) -> CheckResult {
    timed("criterion 8: strict chain", 120, || {
        let caps = Caps::default();
        // (1,2,1,2,2): full spin inside H^0(14) over F_16
        let witness = match verify_chain(1, 2, 1, 2, 2, &caps) {
            Ok(w) => w,
            Err(e) => return (false, format!("(1,2,1,2,2): {e}")),
        };
        if !witness.ok() || witness.distinguishing_index != 7 {
            return (false, format!("(1,2,1,2,2): witness failed: {witness:?}"));
        }
        // (1,3,1,2,2): inside H^0(79) over F_81, within the dimension cap
        let cert = match strict_chain_certificate(1, 3, 1, 2, 2) {
            Ok(c) => c,
            Err(e) => return (false, format!("certificate (1,3,1,2,2): {e}")),
        };
        if !cert.is_valid() {
            return (false, "certificate (1,3,1,2,2) invalid".to_string());
        }
        let within_cap = cert.mu_s + 1 <= caps.max_module_dim as i128;
        if within_cap {
            let witness = match verify_chain(1, 3, 1, 2, 2, &caps) {
                Ok(w) => w,
                Err(e) => return (false, format!("(1,3,1,2,2): {e}")),
            };
            if !witness.ok() || witness.distinguishing_index != cert.distinguishing_index {
                return (false, format!("(1,3,1,2,2): witness failed: {witness:?}"));
            }
            (true, "both tuples spin-verified; separating coordinates 7 and 26".to_string())
        } else {
            (true, "(1,2,1,2,2) spin-verified; (1,3,1,2,2) certificate-only".to_string())
        }
    })
}

/// Criterion 9: power sums, Lucas vs exact binomials, the level-raising
/// embedding, and the Bruhat rewriting, all exact.
pub fn identity_suites(opts: &SuiteOptions) -> CheckResult {
    timed("criterion 9: identity suites", 60, || {
        let caps = Caps::default();

        // power sums over every subfield of F_{2^12} and F_{3^6}
        let towers: &[(u64, usize)] = if opts.quick { &[(2, 6), (3, 3)] } else { &[(2, 12), (3, 6)] };
        for &(p, n) in towers {
            let field = match AmbientField::new(p, n) {
                Ok(f) => f,
                Err(e) => return (false, format!("F_{p}^{n}: {e}")),
            };
            for d in 1..=n {
                if n % d != 0 {
                    continue;
                }
                let k_max = 2 * (p as u128).pow(d as u32);
                match verify_power_sum_range(&field, d, k_max) {
                    Ok(true) => {}
                    Ok(false) => {
                        return (false, format!("power sum fails in F_{p}^{d} <= F_{p}^{n}"));
                    }
                    Err(e) => return (false, format!("power sums: {e}")),
                }
            }
        }

        // Lucas vs exact big-integer binomials
        let bound = if opts.quick { 60u64 } else { 200 };
        let mut row: Vec<BigUint> = vec![BigUint::from(1u32)];
        for m in 0..bound {
            for n in 0..=m {
                let exact = &row[n as usize];
                for p in [2u64, 3, 5] {
                    let expected = (exact % BigUint::from(p)).to_u64_digits();
                    let expected = expected.first().copied().unwrap_or(0);
                    if lucas_binom_mod_p(m as u128, n as u128, p) != expected {
                        return (false, format!("Lucas mismatch at binom({m},{n}) mod {p}"));
                    }
                }
            }
            // next Pascal row
            let mut next = vec![BigUint::from(1u32)];
            for n in 1..=m as usize {
                next.push(&row[n - 1] + &row[n]);
            }
            next.push(BigUint::from(1u32));
            row = next;
        }

        // level-raising embeddings
        let extend_cases: &[(usize, u64, u32, u64, usize)] =
            &[(1, 2, 2, 2, 2), (1, 2, 4, 2, 4), (2, 4, 2, 2, 4), (1, 3, 2, 3, 2)];
        for &(lambda, qt, r, p, n) in extend_cases {
            let field = match AmbientField::new(p, n) {
                Ok(f) => f,
                Err(e) => return (false, format!("extend field: {e}")),
            };
            match verify_extend(lambda, qt, r, &field, &caps) {
                Ok(true) => {}
                Ok(false) => {
                    return (false, format!("extend fails at ({lambda},{qt},{r})"));
                }
                Err(e) => return (false, format!("extend ({lambda},{qt},{r}): {e}")),
            }
        }

        // Bruhat rewriting for random nonzero a in several fields
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x505);
        let sus_rounds = if opts.quick { 5 } else { 20 };
        for (p, n) in [(2u64, 4usize), (3, 2), (5, 2), (7, 1)] {
            let field = match AmbientField::new(p, n) {
                Ok(f) => f,
                Err(e) => return (false, format!("sus field: {e}")),
            };
            let g = field.multiplicative_generator();
            let order = field.size() - 1;
            for _ in 0..sus_rounds {
                let a = field.pow(g, (rng.next_u64() % order) as u128 + 1);
                if let Err(e) = solve_sus(&field, a) {
                    return (false, format!("sus in F_{p}^{n}: {e}"));
                }
            }
        }

        (true, "power sums, Lucas grid, embeddings, Bruhat rewriting all exact".to_string())
    })
}

/// Extra oracle-side checks outside the numbered criteria: sampled
/// coordinate-splitness of spins and the no-growth restriction proxy.
pub fn splitness_and_restriction(opts: &SuiteOptions) -> CheckResult {
    timed("oracle extras: weight-vector splitness and restriction proxy", 60, || {
        let caps = Caps::default();
        let samples = if opts.quick { 20 } else { 100 };
        for (m, p, k) in [(14usize, 2u64, 4usize), (8, 3, 2)] {
            match indmod_core::fforacle::verify_coordinate_splitness(m, p, k, samples, opts.seed) {
                Ok(true) => {}
                Ok(false) => {
                    return (false, format!("spin of a sample not coordinate-split at m={m}"));
                }
                Err(e) => return (false, format!("splitness check ({m},{p},{k}): {e}")),
            }
        }
        for (m, p, a) in [(2usize, 2u64, 2usize), (5, 3, 2), (13, 2, 4)] {
            match indmod_core::fforacle::verify_restriction_proxy(m, p, a, &caps) {
                Ok(true) => {}
                Ok(false) => {
                    return (false, format!("restriction proxy grew at m={m} p={p}"));
                }
                Err(e) => return (false, format!("restriction proxy ({m},{p},{a}): {e}")),
            }
        }
        (true, "sampled spins coordinate-split; larger-field re-spins stable".to_string())
    })
}

/// Criterion 10 is a documentation note: the infinite-dimensional
/// irreducibility statements are covered by the descriptor-level and
/// finite-level checks above, not by direct computation.
pub fn descriptor_coverage_note(_opts: &SuiteOptions) -> CheckResult {
    timed("criterion 10: coverage note", 1, || {
        (
            true,
            "infinite-dimensional statements are exercised through descriptor counts, \
             basis cardinalities, and the finite-level oracle checks above"
                .to_string(),
        )
    })
}

pub fn run_all(opts: &SuiteOptions) -> Vec<CheckResult> {
    vec![
        factor_count_reproduction(opts),
        existence_criterion(opts),
        partition_identity(opts),
        kl_layer(opts),
        sl2_factor_oracle_equivalence(opts),
        two_family_consistency(opts),
        exact_sequence_suite(opts),
        strict_chain_suite(opts),
        identity_suites(opts),
        descriptor_coverage_note(opts),
    ]
}
