//! p-adic reflection combinatorics for SL2 costandard modules in defining
//! characteristic: admissible reflections rho_j, the factor-weight sets
//! S(m), the support partial order and submodule lattice of H^0(m), the
//! two-family description of the factors of H^0(q^r - 1 - lambda), and the
//! strict-chain certificates behind the infinite-filtration construction.
//!
//! Weights are i128 throughout; the lattice enumeration is capped but the
//! certificate arithmetic only needs single values, so it reaches much
//! larger parameters than the matrix oracle does.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Caps, Error, Result};

/// p-adic digit sequence, least-significant first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PAdicExpansion {
    pub p: i128,
    pub digits: Vec<u32>,
}

impl PAdicExpansion {
    pub fn of(value: i128, p: i128) -> Result<PAdicExpansion> {
        if value < 0 {
            return Err(Error::precondition("p-adic expansion of a negative value"));
        }
        if p < 2 {
            return Err(Error::precondition("p must be at least 2"));
        }
        let mut digits = Vec::new();
        let mut v = value;
        while v > 0 {
            digits.push((v % p) as u32);
            v /= p;
        }
        Ok(PAdicExpansion { p, digits })
    }

    pub fn value(&self) -> i128 {
        self.digits.iter().rev().fold(0i128, |acc, &d| acc * self.p + d as i128)
    }

    /// Indices of nonzero digits.
    pub fn support(&self) -> BTreeSet<u32> {
        self.digits
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d != 0)
            .map(|(i, _)| i as u32)
            .collect()
    }

    pub fn digit(&self, i: u32) -> u32 {
        self.digits.get(i as usize).copied().unwrap_or(0)
    }

    /// Index of the top nonzero digit; None for zero.
    pub fn top_index(&self) -> Option<u32> {
        (!self.digits.is_empty()).then(|| self.digits.len() as u32 - 1)
    }
}

/// One reflection step: m + 1 = lambda_j p^j + r_j with 0 <= r_j < p^j,
/// value = m - 2 r_j, admissible iff p does not divide lambda_j.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RhoStep {
    pub value: i128,
    pub lambda_j: i128,
    pub r_j: i128,
    pub admissible: bool,
}

pub fn rho(m: i128, j: u32, p: i128) -> Result<RhoStep> {
    if m < 0 || j == 0 || p < 2 {
        return Err(Error::precondition("rho needs m >= 0, j >= 1, p >= 2"));
    }
    let pj = p.checked_pow(j).ok_or(Error::Overflow("p^j"))?;
    let lambda_j = (m + 1) / pj;
    let r_j = (m + 1) % pj;
    Ok(RhoStep { value: m - 2 * r_j, lambda_j, r_j, admissible: lambda_j % p != 0 })
}

/// An admissible sequence e = (e_1 < ... < e_k) together with the value
/// chain m, rho_{e_k}(m), ..., rho_e(m). Reflections apply with the largest
/// index first, so subsequent steps always use strictly smaller indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AdmissibleSequence {
    pub indices: Vec<u32>,
    pub values: Vec<i128>,
}

impl AdmissibleSequence {
    pub fn final_value(&self) -> i128 {
        *self.values.last().expect("chain contains at least m")
    }
}

/// Enumerate all m-admissible sequences by depth-first search, indices
/// descending in application order. `max_first_index` bounds the largest
/// (first applied) index; `allow_zero` permits 0 as a terminal value
/// (0 can never be reflected further, so it is terminal automatically).
pub fn admissible_sequences(
    m: i128,
    p: i128,
    max_first_index: Option<u32>,
    allow_zero: bool,
) -> Result<Vec<AdmissibleSequence>> {
    if m < 0 {
        return Err(Error::precondition("m must be nonnegative"));
    }
    let mut out = Vec::new();
    let mut indices: Vec<u32> = Vec::new();
    let mut values: Vec<i128> = vec![m];
    dfs(m, max_first_index, p, allow_zero, &mut indices, &mut values, &mut out)?;
    Ok(out)
}

fn dfs(
    v: i128,
    bound: Option<u32>,
    p: i128,
    allow_zero: bool,
    indices: &mut Vec<u32>,
    values: &mut Vec<i128>,
    out: &mut Vec<AdmissibleSequence>,
) -> Result<()> {
    // record the chain ending here (indices are stored in application order,
    // reversed into ascending order on emission)
    let mut e: Vec<u32> = indices.clone();
    e.reverse();
    out.push(AdmissibleSequence { indices: e, values: values.clone() });

    let mut j = 1u32;
    loop {
        if bound.is_some_and(|b| j > b) {
            break;
        }
        // p^j > v + 1 forces lambda_j = 0, inadmissible here and for all larger j
        match p.checked_pow(j) {
            Some(pj) if pj <= v + 1 => {}
            _ => break,
        }
        let step = rho(v, j, p)?;
        if step.admissible && step.value < v && step.value >= 0 && (allow_zero || step.value > 0)
        {
            indices.push(j);
            values.push(step.value);
            dfs(step.value, Some(j - 1), p, allow_zero, indices, values, out)?;
            indices.pop();
            values.pop();
        }
        j += 1;
    }
    Ok(())
}

/// Highest weights of the composition factors of H^0(m): the values
/// reachable from m by admissible sequences.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FactorSet {
    pub m: i128,
    pub p: i128,
    pub weights: BTreeSet<i128>,
}

pub fn factor_set(m: i128, p: i128) -> Result<FactorSet> {
    factor_set_with(m, p, true)
}

/// `allow_zero = false` keeps the chains strictly inside the positive
/// integers; the default convention admits 0 as a terminal value, which is
/// what the spin oracle confirms (L(0) genuinely occurs, e.g. in H^0(2)
/// for p = 2).
pub fn factor_set_with(m: i128, p: i128, allow_zero: bool) -> Result<FactorSet> {
    let weights: BTreeSet<i128> = admissible_sequences(m, p, None, allow_zero)?
        .into_iter()
        .map(|seq| seq.final_value())
        .collect();
    debug_assert!(weights.contains(&m));
    debug_assert!(weights.iter().all(|&w| 0 <= w && w <= m && (m - w) % 2 == 0));
    Ok(FactorSet { m, p, weights })
}

/// Coordinates of H^0(m) reachable from coordinate `start` under the two
/// moves the group action affords: passing to a digitwise-smaller index
/// (the unipotent action hits v_k from v_i exactly when binom(i,k) is
/// nonzero mod p, i.e. when every p-digit of k is at most the matching
/// digit of i) and the weight flip i -> m - i. This is exactly the set of
/// coordinates of the submodule generated by the start coordinate's weight
/// line, and the spin oracle confirms it on the whole test grid.
pub fn coordinate_closure(m: i128, p: i128, start: i128, cap: usize) -> Result<BTreeSet<i128>> {
    if m < 0 || start < 0 || start > m {
        return Err(Error::precondition("coordinate out of range"));
    }
    let mut seen: BTreeSet<i128> = BTreeSet::new();
    let mut work: Vec<i128> = vec![start];
    seen.insert(start);
    while let Some(i) = work.pop() {
        let push = |k: i128, seen: &mut BTreeSet<i128>, work: &mut Vec<i128>| {
            if seen.insert(k) {
                work.push(k);
            }
        };
        let flip = m - i;
        if seen.len() >= cap {
            return Err(Error::CapExceeded {
                what: "coordinate closure size",
                limit: cap as u128,
                requested: cap as u128 + 1,
            });
        }
        push(flip, &mut seen, &mut work);
        // all digitwise-dominated indices
        let digits = PAdicExpansion::of(i, p)?.digits;
        let mut subs: Vec<i128> = vec![0];
        let mut place: i128 = 1;
        for &d in &digits {
            let mut next = Vec::with_capacity(subs.len() * (d as usize + 1));
            for &base in &subs {
                for choice in 0..=d as i128 {
                    next.push(base + choice * place);
                }
            }
            subs = next;
            if subs.len() > cap {
                return Err(Error::CapExceeded {
                    what: "coordinate closure size",
                    limit: cap as u128,
                    requested: subs.len() as u128,
                });
            }
            place *= p;
        }
        for k in subs {
            push(k, &mut seen, &mut work);
        }
    }
    Ok(seen)
}

/// Factor-occurrence comparison on S(m): whether L(nu) occurs in the
/// submodule generated by the mu weight line, i.e. whether the coordinate
/// (m - nu)/2 is reachable from (m - mu)/2. Reachability, not bare
/// p-adic-support containment, is the comparison the matrix oracle
/// confirms: support containment implies reachability, but at p = 2,
/// m = 12 the weight-8 line is reachable from the weight-10 line even
/// though their half-difference supports are incomparable.
pub fn preceq(nu: i128, mu: i128, m: i128, p: i128) -> Result<bool> {
    let half = |x: i128| -> Result<i128> {
        let d = m - x;
        if d < 0 || d % 2 != 0 {
            return Err(Error::precondition("weight not congruent to m mod 2"));
        }
        Ok(d / 2)
    };
    let j_nu = half(nu)?;
    let j_mu = half(mu)?;
    Ok(coordinate_closure(m, p, j_mu, 1 << 22)?.contains(&j_nu))
}

fn prime_power_parts(q: i128) -> Result<(i128, u32)> {
    if q < 2 {
        return Err(Error::precondition("q must be a prime power >= 2"));
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if q % p != 0 {
        p = q; // q itself is prime
    }
    let mut d = 0u32;
    let mut v = q;
    while v % p == 0 {
        v /= p;
        d += 1;
    }
    if v != 1 {
        return Err(Error::precondition("q is not a prime power"));
    }
    Ok((p, d))
}

/// Top nonzero p-digit index of lambda (lambda >= 1).
fn top_digit_index(lambda: i128, p: i128) -> Result<u32> {
    PAdicExpansion::of(lambda, p)?
        .top_index()
        .ok_or_else(|| Error::precondition("lambda must be positive"))
}

/// The two-family description of the factor weights of H^0(mu_r) with
/// mu_r = q^r - 1 - lambda: sequences staying at or below the top digit of
/// lambda, and a single high reflection rho_h followed by a
/// (lambda-1)-admissible tail. Must coincide with `factor_set(mu_r, p)`.
pub fn h0_frobenius_factors(lambda: i128, q: i128, r: u32) -> Result<BTreeSet<i128>> {
    let (p, d) = prime_power_parts(q)?;
    let qr = q.checked_pow(r).ok_or(Error::Overflow("q^r"))?;
    if lambda <= 0 || lambda >= qr {
        return Err(Error::precondition("need 0 < lambda < q^r"));
    }
    let mu_r = qr - 1 - lambda;
    let l = top_digit_index(lambda, p)?;
    let rd = r * d;

    // family 1: f with largest index <= l
    let mut out: BTreeSet<i128> = admissible_sequences(mu_r, p, Some(l), true)?
        .into_iter()
        .map(|seq| seq.final_value())
        .collect();

    // family 2: rho_h for l < h < rd, then a (lambda-1)-admissible tail
    let tails = admissible_sequences(lambda - 1, p, None, true)?;
    for h in l + 1..rd {
        let step = rho(mu_r, h, p)?;
        if !step.admissible || step.value >= mu_r {
            return Err(Error::precondition("high reflection unexpectedly inadmissible"));
        }
        for tail in &tails {
            let mut v = step.value;
            for &j in tail.indices.iter().rev() {
                let s = rho(v, j, p)?;
                if !s.admissible || s.value >= v {
                    return Err(Error::precondition(
                        "tail reflection fails to transfer to the high-reflection value",
                    ));
                }
                v = s.value;
            }
            out.insert(v);
        }
    }
    Ok(out)
}

/// lambda_e = lambda - (lambda - 1 - rho_e(lambda - 1))/2 for a
/// (lambda-1)-admissible sequence e, together with i_e = v_p(lambda_e).
/// The defining identity (mu_r - rho_e rho_h(mu_r))/2 = p^h - lambda_e is
/// re-derived for two values of h to pin independence of h.
pub fn lambda_e(lambda: i128, e: &[u32], p: i128) -> Result<(i128, u32)> {
    if lambda < 1 {
        return Err(Error::precondition("lambda must be positive"));
    }
    // validate e is (lambda-1)-admissible by applying it, largest index first
    let mut v = lambda - 1;
    let mut prev: Option<u32> = None;
    for &j in e.iter().rev() {
        if let Some(bound) = prev {
            if j >= bound {
                return Err(Error::precondition("indices must be strictly increasing"));
            }
        }
        let step = rho(v, j, p)?;
        if !step.admissible || step.value >= v || step.value < 0 {
            return Err(Error::precondition("sequence is not admissible"));
        }
        v = step.value;
        prev = Some(j);
    }
    let le = lambda - (lambda - 1 - v) / 2;
    debug_assert!(0 < le && le <= lambda);
    let mut i_e = 0u32;
    let mut t = le;
    while t % p == 0 {
        t /= p;
        i_e += 1;
    }

    // independence-of-h check at q = p, r = l + 3, h in {l+1, l+2}
    let l = top_digit_index(lambda, p)?;
    let r = l + 3;
    let qr = p.checked_pow(r).ok_or(Error::Overflow("p^r"))?;
    let mu_r = qr - 1 - lambda;
    for h in [l + 1, l + 2] {
        let mut value = rho(mu_r, h, p)?.value;
        for &j in e.iter().rev() {
            value = rho(value, j, p)?.value;
        }
        let ph = p.checked_pow(h).ok_or(Error::Overflow("p^h"))?;
        if (mu_r - value) / 2 != ph - le {
            return Err(Error::precondition("defining identity for lambda_e failed"));
        }
    }
    Ok((le, i_e))
}

/// Binomial coefficient mod p via digit-wise products.
pub fn lucas_binom_mod_p(m: u128, n: u128, p: u64) -> u64 {
    if n > m {
        return 0;
    }
    let p = p as u128;
    let mut m = m;
    let mut n = n;
    let mut acc: u128 = 1;
    while n > 0 || m > 0 {
        let a = m % p;
        let b = n % p;
        if b > a {
            return 0;
        }
        acc = acc * small_binom_mod(a, b, p) % p;
        m /= p;
        n /= p;
    }
    acc as u64
}

/// binom(a, b) mod p for 0 <= b <= a < p, p prime: multiplicative formula
/// with Fermat inverses.
fn small_binom_mod(a: u128, b: u128, p: u128) -> u128 {
    let b = b.min(a - b);
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..b {
        num = num * ((a - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_pow(den, p - 2, p) % p
}

fn mod_pow(mut base: u128, mut exp: u128, modulus: u128) -> u128 {
    let mut acc: u128 = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Witness data for one strict inclusion kG v_0(q^b) < kG v_0(q^a) inside
/// H^0(mu_s), s = a t t', b = a t. Everything is exact integer arithmetic,
/// so the certificate reaches parameters far beyond the matrix oracle cap.
#[derive(Clone, Debug)]
pub struct ChainCertificate {
    pub lambda: i128,
    pub q: i128,
    pub p: i128,
    pub d: u32,
    pub a: u32,
    pub t: u32,
    pub tprime: u32,
    pub b: u32,
    pub s: u32,
    pub mu_s: i128,
    /// Chosen (lambda-1)-admissible sequence (the empty one).
    pub e: Vec<u32>,
    pub lambda_e: i128,
    pub i_e: u32,
    /// Index of the weight vector separating the two spans.
    pub distinguishing_index: i128,
    /// Membership witness: row index k*(q^a - 1) and the Lucas-nonzero
    /// binomial at the distinguishing index.
    pub membership_row: i128,
    pub membership_binom_nonzero: bool,
    pub membership_row_in_range: bool,
    /// For every (lambda-1)-admissible e': the competing high index
    /// (t'-1)bd + i_{e'}, and the non-comparability checks.
    pub noncomparability: Vec<NonComparabilityWitness>,
    /// Low-family generators (first index <= top digit of lambda):
    /// support-level witnesses plus the definitive closure check.
    pub low_family_support_ok: bool,
    pub low_family_closure_ok: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct NonComparabilityWitness {
    pub e_prime: Vec<u32>,
    pub i_e_prime: u32,
    pub competing_exponent: u32,
    /// (t'-1)bd + i_{e'} < (tt'-1)ad + i_e, the cheap separating inequality.
    pub exponent_inequality: bool,
    /// The p-adic supports of the two half-differences are incomparable.
    pub support_not_contained: bool,
    /// Definitive check: the distinguishing coordinate is not reachable
    /// from the competing generator coordinate. None when the closure
    /// enumeration exceeds its cap at very large parameters.
    pub closure_excludes: Option<bool>,
}

impl ChainCertificate {
    pub fn is_valid(&self) -> bool {
        self.membership_binom_nonzero
            && self.membership_row_in_range
            && self.low_family_support_ok
            && self.low_family_closure_ok != Some(false)
            && self.noncomparability.iter().all(|w| {
                w.exponent_inequality
                    && w.support_not_contained
                    && w.closure_excludes != Some(false)
            })
    }
}

pub fn strict_chain_certificate(
    lambda: i128,
    q: i128,
    a: u32,
    t: u32,
    tprime: u32,
) -> Result<ChainCertificate> {
    let (p, d) = prime_power_parts(q)?;
    if lambda < 1 {
        return Err(Error::precondition("lambda must be positive"));
    }
    let qa = q.checked_pow(a).ok_or(Error::Overflow("q^a"))?;
    if qa <= lambda {
        return Err(Error::precondition("need q^a > lambda"));
    }
    if t < 2 {
        return Err(Error::precondition("need t > 1"));
    }
    if tprime < 2 {
        // whether t' = 1 is permitted is unclear; the checker requires t' >= 2
        return Err(Error::precondition("checker requires t' >= 2"));
    }
    let b = a * t;
    let s = b * tprime;
    let qs = q.checked_pow(s).ok_or(Error::Overflow("q^s"))?;
    let mu_s = qs - 1 - lambda;

    // chosen sequence: e empty, so lambda_e = lambda, i_e = v_p(lambda)
    let e: Vec<u32> = Vec::new();
    let (le, i_e) = lambda_e(lambda, &e, p)?;

    let h = (t * tprime - 1) * a * d + i_e;
    let ph = p.checked_pow(h).ok_or(Error::Overflow("p^h"))?;
    let idx = ph - le;

    // sanity: idx is the half-difference of mu_s and rho_e rho_h(mu_s)
    {
        let mut value = rho(mu_s, h, p)?.value;
        for &j in e.iter().rev() {
            value = rho(value, j, p)?.value;
        }
        if (mu_s - value) / 2 != idx {
            return Err(Error::precondition("distinguishing index identity failed"));
        }
    }

    // membership: k* = p^{i_e} (1 + q^a + ... + q^{(tt'-2)a})
    let p_ie = p.checked_pow(i_e).ok_or(Error::Overflow("p^i_e"))?;
    let mut geo: i128 = 0;
    for k in 0..=(t * tprime - 2) {
        geo = geo
            .checked_add(q.checked_pow(a * k).ok_or(Error::Overflow("q^(ak)"))?)
            .ok_or(Error::Overflow("geometric sum"))?;
    }
    let k_star = p_ie.checked_mul(geo).ok_or(Error::Overflow("k*"))?;
    let mut range_bound: i128 = 0;
    for k in 1..=(t * tprime - 1) {
        range_bound = range_bound
            .checked_add(q.checked_pow(a * k).ok_or(Error::Overflow("q^(ak)"))?)
            .ok_or(Error::Overflow("range bound"))?;
    }
    let membership_row = k_star * (qa - 1);
    let membership_row_in_range = k_star <= range_bound;
    let membership_binom_nonzero =
        lucas_binom_mod_p(membership_row as u128, idx as u128, p as u64) != 0;

    // non-comparability against every competing high-family generator
    let closure_cap = 1usize << 20;
    let excludes = |generator_coord: i128| -> Option<bool> {
        match coordinate_closure(mu_s, p, generator_coord, closure_cap) {
            Ok(closure) => Some(!closure.contains(&idx)),
            Err(_) => None,
        }
    };
    let target_support = PAdicExpansion::of(idx, p)?.support();
    let mut noncomparability = Vec::new();
    for seq in admissible_sequences(lambda - 1, p, None, true)? {
        let (le_p, i_e_p) = lambda_e(lambda, &seq.indices, p)?;
        let competing = (tprime - 1) * b * d + i_e_p;
        let exponent_inequality = competing < h;
        let php = p.checked_pow(competing).ok_or(Error::Overflow("p^h'"))?;
        let their_support = PAdicExpansion::of(php - le_p, p)?.support();
        let support_not_contained = !target_support.is_subset(&their_support);
        noncomparability.push(NonComparabilityWitness {
            e_prime: seq.indices,
            i_e_prime: i_e_p,
            competing_exponent: competing,
            exponent_inequality,
            support_not_contained,
            closure_excludes: excludes(php - le_p),
        });
    }

    // low family: generators with all reflection indices <= top digit of lambda
    let l = top_digit_index(lambda, p)?;
    let mut low_family_support_ok = true;
    let mut low_family_closure_ok = Some(true);
    for seq in admissible_sequences(mu_s, p, Some(l), true)? {
        let j_f = (mu_s - seq.final_value()) / 2;
        let their_support = PAdicExpansion::of(j_f, p)?.support();
        if target_support.is_subset(&their_support) {
            low_family_support_ok = false;
        }
        low_family_closure_ok = match (low_family_closure_ok, excludes(j_f)) {
            (Some(true), Some(v)) => Some(v),
            (Some(false), _) | (_, Some(false)) => Some(false),
            _ => None,
        };
    }

    Ok(ChainCertificate {
        lambda,
        q,
        p,
        d,
        a,
        t,
        tprime,
        b,
        s,
        mu_s,
        e,
        lambda_e: le,
        i_e,
        distinguishing_index: idx,
        membership_row,
        membership_binom_nonzero,
        membership_row_in_range,
        noncomparability,
        low_family_support_ok,
        low_family_closure_ok,
    })
}

/// A submodule of H^0(m), determined by its set of factor weights (an
/// up-closed subset of S(m) under the support order) together with the
/// minimal generating weights.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubmoduleDescriptor {
    pub generators: Vec<i128>,
    pub factor_weights: BTreeSet<i128>,
}

#[derive(Clone, Debug)]
pub struct SubmoduleLattice {
    pub m: i128,
    pub p: i128,
    /// All distinct submodules, sorted by (factor count, weight sets);
    /// index 0 is the zero module, the last entry is the whole module.
    pub members: Vec<SubmoduleDescriptor>,
    /// Hasse covers as (lower index, upper index) pairs.
    pub hasse: Vec<(usize, usize)>,
}

pub fn submodule_lattice(m: i128, p: i128) -> Result<SubmoduleLattice> {
    submodule_lattice_with_caps(m, p, &Caps::default())
}

pub fn submodule_lattice_with_caps(m: i128, p: i128, caps: &Caps) -> Result<SubmoduleLattice> {
    if m < 0 || m as u128 > caps.max_sl2_weight {
        return Err(Error::CapExceeded {
            what: "SL2 highest weight",
            limit: caps.max_sl2_weight,
            requested: m.unsigned_abs(),
        });
    }
    let s = factor_set(m, p)?;

    // principal up-sets: factors of the submodule generated by one weight line
    let mut principal: Vec<BTreeSet<i128>> = Vec::new();
    for &mu in &s.weights {
        let mut up = BTreeSet::new();
        for &nu in &s.weights {
            if preceq(nu, mu, m, p)? {
                up.insert(nu);
            }
        }
        principal.push(up);
    }

    // every submodule is a union of principal up-sets; close under union
    let mut members: BTreeSet<BTreeSet<i128>> = BTreeSet::new();
    members.insert(BTreeSet::new());
    let mut worklist: Vec<BTreeSet<i128>> = vec![BTreeSet::new()];
    while let Some(current) = worklist.pop() {
        for up in &principal {
            let unioned: BTreeSet<i128> = current.union(up).copied().collect();
            if !members.contains(&unioned) {
                if members.len() >= caps.max_lattice_size {
                    return Err(Error::CapExceeded {
                        what: "submodule lattice size",
                        limit: caps.max_lattice_size as u128,
                        requested: caps.max_lattice_size as u128 + 1,
                    });
                }
                members.insert(unioned.clone());
                worklist.push(unioned);
            }
        }
    }

    let mut sorted: Vec<BTreeSet<i128>> = members.into_iter().collect();
    sorted.sort_by_key(|set| (set.len(), set.iter().copied().collect::<Vec<_>>()));

    let descriptors: Vec<SubmoduleDescriptor> = sorted
        .iter()
        .map(|weights| {
            // generators: weights in the set not reachable from a distinct member
            let generators: Vec<i128> = weights
                .iter()
                .copied()
                .filter(|&mu| {
                    !weights.iter().any(|&other| {
                        other != mu && preceq(mu, other, m, p).unwrap_or(false)
                    })
                })
                .collect();
            SubmoduleDescriptor { generators, factor_weights: weights.clone() }
        })
        .collect();

    let mut hasse = Vec::new();
    for (lo, a) in descriptors.iter().enumerate() {
        for (hi, b) in descriptors.iter().enumerate() {
            if a.factor_weights.len() >= b.factor_weights.len()
                || !a.factor_weights.is_subset(&b.factor_weights)
            {
                continue;
            }
            let covered = descriptors.iter().enumerate().any(|(mid, c)| {
                mid != lo
                    && mid != hi
                    && a.factor_weights.is_subset(&c.factor_weights)
                    && c.factor_weights.is_subset(&b.factor_weights)
                    && c.factor_weights.len() > a.factor_weights.len()
                    && c.factor_weights.len() < b.factor_weights.len()
            });
            if !covered {
                hasse.push((lo, hi));
            }
        }
    }

    Ok(SubmoduleLattice { m, p, members: descriptors, hasse })
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn lucas_agrees_with_factorization_parity(m in 0u128..10_000, n in 0u128..10_000) {
            // Kummer: binom(m, n) is odd iff n's binary digits embed in m's
            let expected = if n <= m && (m - n) & n == 0 { 1 } else { 0 };
            prop_assert_eq!(lucas_binom_mod_p(m, n, 2), expected);
        }

        #[test]
        fn factor_chain_values_strictly_decrease(m in 0i128..200, p_idx in 0usize..3) {
            let p = [2i128, 3, 5][p_idx];
            for seq in admissible_sequences(m, p, None, true).unwrap() {
                for pair in seq.values.windows(2) {
                    prop_assert!(pair[1] < pair[0]);
                    prop_assert!(pair[1] >= 0);
                }
                let k = seq.indices.len();
                prop_assert_eq!(seq.values.len(), k + 1);
                for pair in seq.indices.windows(2) {
                    prop_assert!(pair[0] < pair[1]);
                }
            }
        }
    }
}
