//! Kazhdan-Lusztig polynomials, the signed canonical-basis elements C_w at
//! q = 1, and the triangular basis expansions over translated parabolic
//! sums that the composition-factor bookkeeping rests on.
//!
//! All computation is over exact integers; characteristic-p behavior is
//! obtained by reducing finished integer coefficients mod p. The expansions
//! are unitriangular with respect to the Bruhat order, so reduction commutes
//! with inversion over any coefficient ring.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::poly::IntPolynomial;
use crate::subset::Subset;
use crate::weyl::{ElementId, WeylGroup, IDENTITY};
use crate::{Error, Result};

/// Table of all Kazhdan-Lusztig polynomials P_{y,w} for an enumerated group.
/// Built eagerly in one single-writer pass; read-only afterwards.
pub struct KlTable {
    order: usize,
    /// polys[w] maps y to P_{y,w}, for y <= w only. P_{w,w} = 1 is stored.
    polys: Vec<BTreeMap<u32, IntPolynomial>>,
}

impl KlTable {
    /// Standard KL recursion on a fixed left descent, by increasing length.
    pub fn build(group: &WeylGroup) -> KlTable {
        let order = group.order();
        let mut polys: Vec<BTreeMap<u32, IntPolynomial>> = vec![BTreeMap::new(); order];
        let mut ids: Vec<ElementId> = group.elements().collect();
        ids.sort_by_key(|&w| group.length(w));

        for &w in &ids {
            if w == IDENTITY {
                polys[w.0 as usize].insert(0, IntPolynomial::one());
                continue;
            }
            let s = group.word(w)[0] as usize;
            let v = group.left_mul_simple(w, s);
            debug_assert!(group.length(v) + 1 == group.length(w));

            // mu-terms: z <= v with sz < z and mu(z, v) nonzero
            let mu_terms: Vec<(ElementId, i64)> = group
                .elements()
                .filter(|&z| {
                    group.bruhat_leq(z, v)
                        && group.length(group.left_mul_simple(z, s)) < group.length(z)
                })
                .filter_map(|z| {
                    let m = mu_from(&polys, group, z, v);
                    (m != 0).then_some((z, m))
                })
                .collect();

            let mut row: BTreeMap<u32, IntPolynomial> = BTreeMap::new();
            for y in group.elements() {
                if !group.bruhat_leq(y, w) {
                    continue;
                }
                let sy = group.left_mul_simple(y, s);
                let descent = group.length(sy) < group.length(y);
                // q^{1-c} P_{sy,v} + q^c P_{y,v}, with c = 1 iff sy < y
                let p_sy_v = lookup(&polys, group, sy, v);
                let p_y_v = lookup(&polys, group, y, v);
                let mut p = if descent {
                    p_sy_v.add(&p_y_v.shift(1))
                } else {
                    p_sy_v.shift(1).add(&p_y_v)
                };
                for &(z, m) in &mu_terms {
                    if !group.bruhat_leq(y, z) {
                        continue;
                    }
                    let half = (group.length(w) - group.length(z)) / 2;
                    debug_assert_eq!((group.length(w) - group.length(z)) % 2, 0);
                    let term = lookup(&polys, group, y, z).shift(half).scale(m);
                    p = p.sub(&term);
                }
                debug_assert!(
                    y == w
                        || p.degree().map_or(true, |d| {
                            2 * d + 1 <= group.length(w) - group.length(y)
                        }),
                    "KL degree bound"
                );
                if !p.is_zero() {
                    row.insert(y.0, p);
                }
            }
            debug_assert_eq!(row.get(&w.0), Some(&IntPolynomial::one()));
            polys[w.0 as usize] = row;
        }
        KlTable { order, polys }
    }

    /// P_{y,w}; zero unless y <= w, and P_{w,w} = 1.
    pub fn polynomial(&self, y: ElementId, w: ElementId) -> IntPolynomial {
        self.polys[w.0 as usize].get(&y.0).cloned().unwrap_or_else(IntPolynomial::zero)
    }

    /// Coefficient of q^{(l(w)-l(y)-1)/2} in P_{y,w}; zero when the length
    /// difference is even.
    pub fn mu(&self, group: &WeylGroup, y: ElementId, w: ElementId) -> i64 {
        mu_from(&self.polys, group, y, w)
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

fn lookup(
    polys: &[BTreeMap<u32, IntPolynomial>],
    group: &WeylGroup,
    y: ElementId,
    w: ElementId,
) -> IntPolynomial {
    if y == w {
        return IntPolynomial::one();
    }
    if !group.bruhat_leq(y, w) {
        return IntPolynomial::zero();
    }
    polys[w.0 as usize].get(&y.0).cloned().unwrap_or_else(IntPolynomial::zero)
}

fn mu_from(
    polys: &[BTreeMap<u32, IntPolynomial>],
    group: &WeylGroup,
    y: ElementId,
    w: ElementId,
) -> i64 {
    if !group.bruhat_leq(y, w) || y == w {
        return 0;
    }
    let diff = group.length(w) - group.length(y);
    if diff % 2 == 0 {
        return 0;
    }
    lookup(polys, group, y, w).coeff((diff - 1) / 2)
}

/// Integer vector in the group algebra, supported on the enumerated group.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GroupAlgebraVector {
    coeffs: BTreeMap<u32, i64>,
}

impl GroupAlgebraVector {
    pub fn zero() -> Self {
        GroupAlgebraVector { coeffs: BTreeMap::new() }
    }

    pub fn basis(w: ElementId) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(w.0, 1);
        GroupAlgebraVector { coeffs }
    }

    pub fn coeff(&self, w: ElementId) -> i64 {
        self.coeffs.get(&w.0).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = (ElementId, i64)> + '_ {
        self.coeffs.iter().map(|(&w, &c)| (ElementId(w), c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn set(&mut self, w: ElementId, c: i64) {
        if c == 0 {
            self.coeffs.remove(&w.0);
        } else {
            self.coeffs.insert(w.0, c);
        }
    }

    pub fn add_scaled(&mut self, other: &Self, scale: i64) {
        for (&w, &c) in &other.coeffs {
            let entry = self.coeffs.entry(w).or_insert(0);
            *entry += c * scale;
            if *entry == 0 {
                self.coeffs.remove(&w);
            }
        }
    }

    /// Left multiplication by a group element: g . (sum c_y y) = sum c_y (g y).
    pub fn left_mul(&self, group: &WeylGroup, g: ElementId) -> Self {
        let mut out = GroupAlgebraVector::zero();
        for (&y, &c) in &self.coeffs {
            let gy = group.multiply(g, ElementId(y));
            let entry = out.coeffs.entry(gy.0).or_insert(0);
            *entry += c;
            if *entry == 0 {
                out.coeffs.remove(&gy.0);
            }
        }
        out
    }

    /// Coefficients reduced into [0, p).
    pub fn reduce_mod(&self, p: i64) -> BTreeMap<u32, i64> {
        self.coeffs.iter().map(|(&w, &c)| (w, c.rem_euclid(p))).collect()
    }

    /// Support element maximal in (length, id) order.
    pub fn leading_element(&self, group: &WeylGroup) -> Option<ElementId> {
        self.coeffs
            .keys()
            .map(|&w| ElementId(w))
            .max_by_key(|&w| (group.length(w), w.0))
    }
}

/// C_w = sum_{y <= w} (-1)^{l(w)-l(y)} P_{y,w}(1) y.
pub fn c_element(table: &KlTable, group: &WeylGroup, w: ElementId) -> GroupAlgebraVector {
    let mut out = GroupAlgebraVector::zero();
    for y in group.elements() {
        if !group.bruhat_leq(y, w) {
            continue;
        }
        let value = table.polynomial(y, w).eval_i64(1);
        let sign = if (group.length(w) - group.length(y)) % 2 == 0 { 1 } else { -1 };
        out.set(y, sign * value);
    }
    out
}

/// Triangular elimination of `v` against basis vectors with pairwise
/// distinct leading elements (leading coefficient 1). The `leading` map
/// sends a leading element to its basis key; `basis` produces the vector.
fn eliminate<K: Ord + Clone>(
    group: &WeylGroup,
    mut v: GroupAlgebraVector,
    leading: &BTreeMap<ElementId, K>,
    mut basis: impl FnMut(&K) -> GroupAlgebraVector,
) -> Result<BTreeMap<K, i64>> {
    let mut out = BTreeMap::new();
    while let Some(g) = v.leading_element(group) {
        let key = leading.get(&g).ok_or(Error::NotInSpan)?;
        let c = v.coeff(g);
        v.add_scaled(&basis(key), -c);
        debug_assert_eq!(v.coeff(g), 0);
        *out.entry(key.clone()).or_insert(0) += c;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// Expansion x C_{w_J} = C_{x w_J} + sum_{y < x, y in X_J} a'_y C_{y w_J}.
/// Returns the full coefficient map {y -> a'_y} including the leading 1 at x.
pub fn expand_in_translates(
    table: &KlTable,
    group: &WeylGroup,
    x: ElementId,
    j: Subset,
) -> Result<BTreeMap<ElementId, i64>> {
    let reps = group.min_coset_reps(j).reps;
    if !reps.contains(&x) {
        return Err(Error::precondition("x is not a minimal coset representative"));
    }
    let w_j = group.longest_element(j);
    let leading: BTreeMap<ElementId, ElementId> =
        reps.iter().map(|&y| (group.multiply(y, w_j), y)).collect();
    let v = c_element(table, group, w_j).left_mul(group, x);
    eliminate(group, v, &leading, |&y| {
        c_element(table, group, group.multiply(y, w_j))
    })
}

/// Inverse expansion C_{x w_J} = x C_{w_J} + sum_{y < x} a_y y C_{w_J}.
pub fn expand_c_in_translated(
    table: &KlTable,
    group: &WeylGroup,
    x: ElementId,
    j: Subset,
) -> Result<BTreeMap<ElementId, i64>> {
    let reps = group.min_coset_reps(j).reps;
    if !reps.contains(&x) {
        return Err(Error::precondition("x is not a minimal coset representative"));
    }
    let w_j = group.longest_element(j);
    let c_wj = c_element(table, group, w_j);
    let leading: BTreeMap<ElementId, ElementId> =
        reps.iter().map(|&y| (group.multiply(y, w_j), y)).collect();
    let v = c_element(table, group, group.multiply(x, w_j));
    eliminate(group, v, &leading, |&y| c_wj.left_mul(group, y))
}

/// Expansion over the basis {w C_{w_K} : J <= K <= I(theta), w in Z_K} of
/// the span of {x C_{w_J} : x in X_J}. Errors with `NotInSpan` if `v` is
/// outside that span.
pub fn kl_basis_expand(
    table: &KlTable,
    group: &WeylGroup,
    v: &GroupAlgebraVector,
    j: Subset,
    itheta: Subset,
) -> Result<BTreeMap<(Subset, ElementId), i64>> {
    if !j.is_subset_of(itheta) {
        return Err(Error::precondition("J must be contained in I(theta)"));
    }
    let mut leading: BTreeMap<ElementId, (Subset, ElementId)> = BTreeMap::new();
    for k in itheta.subsets() {
        if !j.is_subset_of(k) {
            continue;
        }
        let w_k = group.longest_element(k);
        for w in group.z_set(k, itheta)? {
            let product = group.multiply(w, w_k);
            if leading.insert(product, (k, w)).is_some() {
                return Err(Error::precondition("Z_K translates fail to be disjoint"));
            }
        }
    }
    eliminate(group, v.clone(), &leading, |&(k, w)| {
        c_element(table, group, group.longest_element(k)).left_mul(group, w)
    })
}

/// Reconstruct the vector from an (equ2)-style coefficient map, for
/// round-trip checks.
pub fn reconstruct_from_translates(
    table: &KlTable,
    group: &WeylGroup,
    coeffs: &BTreeMap<ElementId, i64>,
    j: Subset,
) -> GroupAlgebraVector {
    let w_j = group.longest_element(j);
    let mut out = GroupAlgebraVector::zero();
    for (&y, &c) in coeffs {
        out.add_scaled(&c_element(table, group, group.multiply(y, w_j)), c);
    }
    out
}

/// Which family is expanded over which in `transition_matrix`.
pub enum Transition {
    /// rows = coefficients of C_{x w_J} over {y C_{w_J}}
    CanonicalOverTranslated,
    /// rows = coefficients of x C_{w_J} over {C_{y w_J}}
    TranslatedOverCanonical,
}

/// Transition matrix between {x C_{w_J}}_{x in X_J} and {C_{x w_J}}_{x in X_J},
/// rows and columns indexed by X_J sorted by (length, id).
pub fn transition_matrix(
    table: &KlTable,
    group: &WeylGroup,
    j: Subset,
    direction: Transition,
) -> Result<Vec<Vec<i64>>> {
    let mut reps = group.min_coset_reps(j).reps;
    reps.sort_by_key(|&x| (group.length(x), x.0));
    let pos: BTreeMap<ElementId, usize> =
        reps.iter().enumerate().map(|(k, &x)| (x, k)).collect();
    let n = reps.len();
    let mut matrix = vec![vec![0i64; n]; n];
    for (row, &x) in reps.iter().enumerate() {
        let coeffs = match direction {
            Transition::CanonicalOverTranslated => expand_c_in_translated(table, group, x, j)?,
            Transition::TranslatedOverCanonical => expand_in_translates(table, group, x, j)?,
        };
        for (y, c) in coeffs {
            matrix[row][pos[&y]] = c;
        }
    }
    Ok(matrix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::WeylGroup;

    #[test]
    fn kl_base_cases() {
        let group = WeylGroup::from_preset("A2").unwrap();
        let table = KlTable::build(&group);
        for w in group.elements() {
            assert_eq!(table.polynomial(w, w), IntPolynomial::one());
            for y in group.elements() {
                if !group.bruhat_leq(y, w) {
                    assert!(table.polynomial(y, w).is_zero());
                }
            }
        }
    }

    #[test]
    fn kl_degree_bound_and_constant_term() {
        for name in ["A3", "B2", "G2"] {
            let group = WeylGroup::from_preset(name).unwrap();
            let table = KlTable::build(&group);
            for w in group.elements() {
                for y in group.elements() {
                    if !group.bruhat_leq(y, w) || y == w {
                        continue;
                    }
                    let p = table.polynomial(y, w);
                    assert_eq!(p.coeff(0), 1, "constant term is 1 for y <= w");
                    if let Some(d) = p.degree() {
                        assert!(2 * d + 1 <= group.length(w) - group.length(y));
                    }
                }
            }
        }
    }

    #[test]
    fn a3_famous_nontrivial_polynomial() {
        // P_{s2, s2 s1 s3 s2} = 1 + q in W(A3) = S4
        let group = WeylGroup::from_preset("A3").unwrap();
        let table = KlTable::build(&group);
        let y = group.simple(1);
        let w = group.from_word(&[1, 0, 2, 1]);
        assert_eq!(group.length(w), 4);
        assert_eq!(table.polynomial(y, w), IntPolynomial::from_coeffs(vec![1, 1]));
    }

    #[test]
    fn c_element_examples() {
        let group = WeylGroup::from_preset("A2").unwrap();
        let table = KlTable::build(&group);
        assert_eq!(c_element(&table, &group, IDENTITY), GroupAlgebraVector::basis(IDENTITY));

        // C_{s1} = s1 - e
        let c_s1 = c_element(&table, &group, group.simple(0));
        assert_eq!(c_s1.coeff(group.simple(0)), 1);
        assert_eq!(c_s1.coeff(IDENTITY), -1);
        assert_eq!(c_s1.len(), 2);

        // C_{w_0} = sum_y (-1)^{l(w_0 y)} y
        let w0 = group.longest_element(Subset::full(2));
        let c_w0 = c_element(&table, &group, w0);
        for y in group.elements() {
            let expected = if (group.length(group.multiply(w0, y))) % 2 == 0 { 1 } else { -1 };
            assert_eq!(c_w0.coeff(y), expected, "coefficient of {:?}", group.word(y));
        }
    }

    #[test]
    fn c_element_of_longest_parabolic_matches_signed_sum() {
        // C_{w_J} = sum_{y in W_J} (-1)^{l(w_J y)} y, all types, all J
        for name in ["A3", "B2", "G2"] {
            let group = WeylGroup::from_preset(name).unwrap();
            let table = KlTable::build(&group);
            for j in Subset::full(group.rank()).subsets() {
                let w_j = group.longest_element(j);
                let c = c_element(&table, &group, w_j);
                let members = group.parabolic_elements(j);
                assert_eq!(c.len(), members.len());
                for y in members {
                    let sign =
                        if group.length(group.multiply(w_j, y)) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(c.coeff(y), sign);
                }
            }
        }
    }

    #[test]
    fn simple_reflection_negates_parabolic_c_element() {
        // s_j C_{w_J} = -C_{w_J} for j in J
        let group = WeylGroup::from_preset("A3").unwrap();
        let table = KlTable::build(&group);
        for j in Subset::full(3).subsets() {
            let c = c_element(&table, &group, group.longest_element(j));
            for i in j.iter() {
                let negated = c.left_mul(&group, group.simple(i));
                let mut expected = GroupAlgebraVector::zero();
                expected.add_scaled(&c, -1);
                assert_eq!(negated, expected);
            }
        }
    }

    #[test]
    fn expand_in_translates_examples() {
        let group = WeylGroup::from_preset("A2").unwrap();
        let table = KlTable::build(&group);
        let j = Subset::singleton(0);

        // x = e: single term with coefficient 1
        let coeffs = expand_in_translates(&table, &group, IDENTITY, j).unwrap();
        assert_eq!(coeffs.len(), 1);
        assert_eq!(coeffs[&IDENTITY], 1);

        // x = s2: s2 C_{s1} = C_{s2 s1} + C_{s1}, solved from the triangular system
        let s2 = group.simple(1);
        let coeffs = expand_in_translates(&table, &group, s2, j).unwrap();
        assert_eq!(coeffs[&s2], 1, "unitriangular leading coefficient");
        assert_eq!(coeffs[&IDENTITY], 1);
        assert_eq!(coeffs.len(), 2);

        // reconstruction is exact
        let reconstructed = reconstruct_from_translates(&table, &group, &coeffs, j);
        let direct = c_element(&table, &group, group.longest_element(j)).left_mul(&group, s2);
        assert_eq!(reconstructed, direct);

        // error on x outside X_J
        assert!(expand_in_translates(&table, &group, group.simple(0), j).is_err());
    }

    #[test]
    fn expand_round_trip_a3() {
        let group = WeylGroup::from_preset("A3").unwrap();
        let table = KlTable::build(&group);
        let j = Subset::singleton(1);
        let x = group.from_word(&[0, 2]);
        let coeffs = expand_in_translates(&table, &group, x, j).unwrap();
        assert_eq!(coeffs[&x], 1);
        let reconstructed = reconstruct_from_translates(&table, &group, &coeffs, j);
        let direct = c_element(&table, &group, group.longest_element(j)).left_mul(&group, x);
        assert_eq!(reconstructed, direct);
    }

    #[test]
    fn transition_matrices_unitriangular_mutual_inverses() {
        for name in ["A2", "B2", "A3"] {
            let group = WeylGroup::from_preset(name).unwrap();
            let table = KlTable::build(&group);
            for j in Subset::full(group.rank()).subsets() {
                let a = transition_matrix(&table, &group, j, Transition::CanonicalOverTranslated)
                    .unwrap();
                let b = transition_matrix(&table, &group, j, Transition::TranslatedOverCanonical)
                    .unwrap();
                let n = a.len();
                for r in 0..n {
                    assert_eq!(a[r][r], 1);
                    assert_eq!(b[r][r], 1);
                    for c in r + 1..n {
                        assert_eq!(a[r][c], 0, "upper part vanishes (Bruhat-compatible order)");
                        assert_eq!(b[r][c], 0);
                    }
                }
                // exact mutual inverses over the integers
                for r in 0..n {
                    for c in 0..n {
                        let prod: i64 = (0..n).map(|k| a[r][k] * b[k][c]).sum();
                        assert_eq!(prod, i64::from(r == c), "{name} J={j:?} at ({r},{c})");
                    }
                }
            }
        }
    }

    #[test]
    fn transition_matrix_invertible_mod_p() {
        // unitriangular integer matrices stay invertible after reduction mod p
        let group = WeylGroup::from_preset("A3").unwrap();
        let table = KlTable::build(&group);
        let j = Subset::singleton(0);
        let a = transition_matrix(&table, &group, j, Transition::CanonicalOverTranslated).unwrap();
        for p in [2i64, 3, 5] {
            for (r, row) in a.iter().enumerate() {
                assert_eq!(row[r].rem_euclid(p), 1);
                for &c in &row[r + 1..] {
                    assert_eq!(c.rem_euclid(p), 0);
                }
            }
        }
    }

    #[test]
    fn kl_basis_expand_examples() {
        let group = WeylGroup::from_preset("A2").unwrap();
        let table = KlTable::build(&group);
        let full = Subset::full(2);

        // v = C_{w_J} expands as the single basis element (K = J, w = e)
        for j in full.subsets() {
            let v = c_element(&table, &group, group.longest_element(j));
            let coeffs = kl_basis_expand(&table, &group, &v, j, full).unwrap();
            assert_eq!(coeffs.len(), 1);
            assert_eq!(coeffs[&(j, IDENTITY)], 1);
        }

        // v = s1 . C_e = basis vector at s1, J = empty
        let v = GroupAlgebraVector::basis(group.simple(0));
        let coeffs = kl_basis_expand(&table, &group, &v, Subset::EMPTY, full).unwrap();
        for &(k, w) in coeffs.keys() {
            assert!(k.is_subset_of(full));
            assert!(group.z_set(k, full).unwrap().contains(&w));
        }
        // round-trip
        let mut reconstructed = GroupAlgebraVector::zero();
        for (&(k, w), &c) in &coeffs {
            let b = c_element(&table, &group, group.longest_element(k)).left_mul(&group, w);
            reconstructed.add_scaled(&b, c);
        }
        assert_eq!(reconstructed, v);
    }

    #[test]
    fn kl_basis_expand_full_span_b2() {
        // every x C_{w_J} expands and reconstructs exactly
        let group = WeylGroup::from_preset("B2").unwrap();
        let table = KlTable::build(&group);
        let full = Subset::full(2);
        for itheta in full.subsets() {
            for j in itheta.subsets() {
                let c_wj = c_element(&table, &group, group.longest_element(j));
                for x in group.min_coset_reps(j).reps {
                    let v = c_wj.left_mul(&group, x);
                    let coeffs = kl_basis_expand(&table, &group, &v, j, itheta).unwrap();
                    let mut reconstructed = GroupAlgebraVector::zero();
                    for (&(k, w), &c) in &coeffs {
                        let b = c_element(&table, &group, group.longest_element(k))
                            .left_mul(&group, w);
                        reconstructed.add_scaled(&b, c);
                    }
                    assert_eq!(reconstructed, v, "J={j:?} Itheta={itheta:?}");
                }
            }
        }
    }

    #[test]
    fn kl_basis_expand_rejects_vectors_outside_span() {
        let group = WeylGroup::from_preset("A2").unwrap();
        let table = KlTable::build(&group);
        // span of {x C_{w_J} : x in X_J} for J = {0} does not contain the
        // bare identity basis vector
        let v = GroupAlgebraVector::basis(IDENTITY);
        let out = kl_basis_expand(&table, &group, &v, Subset::singleton(0), Subset::full(2));
        assert_eq!(out, Err(Error::NotInSpan));
    }
}
