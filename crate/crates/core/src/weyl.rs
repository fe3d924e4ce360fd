//! Weyl group enumeration and coset combinatorics: lengths, descent sets,
//! Bruhat order, longest elements w_J, minimal coset representatives X_J,
//! and the refined representative sets Z_K cut out by the descent condition
//! relative to I(theta).
//!
//! Elements are canonically represented by their signed action on the
//! positive roots; equality of elements is equality of action tables, and
//! multiplication is table composition.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::poly::IntPolynomial;
use crate::rootsys::{RootDatum, Weight};
use crate::subset::Subset;
use crate::{Caps, Error, Result};

/// Index of an element in the enumerated group. Identity is always id 0;
/// ids are sorted by (length, action table), so the order is deterministic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementId(pub u32);

pub const IDENTITY: ElementId = ElementId(0);

/// Signed image of positive root j: `table[j] = (root index, negated)`.
type ActionTable = Vec<(u16, bool)>;

/// Minimal-length left-coset representatives of a standard parabolic W_J.
#[derive(Clone, Debug)]
pub struct CosetData {
    pub j: Subset,
    pub reps: Vec<ElementId>,
}

/// Outcome of the partition check X_J w_J = union of Z_K w_K.
#[derive(Clone, Debug)]
pub struct PartitionCertificate {
    pub ok: bool,
    /// Cardinality |Z_K| per K in the range J <= K <= I(theta).
    pub z_cardinalities: Vec<(Subset, usize)>,
    pub x_cardinality: usize,
    /// Elements of X_J w_J covered zero or more than one time.
    pub violations: Vec<ElementId>,
}

pub struct WeylGroup {
    datum: RootDatum,
    tables: Vec<ActionTable>,
    lengths: Vec<u32>,
    inverses: Vec<u32>,
    /// right_cayley[w][i] = w * s_i
    right_cayley: Vec<Vec<u32>>,
    /// left_cayley[w][i] = s_i * w
    left_cayley: Vec<Vec<u32>>,
    /// ShortLex reduced word (smallest left descent first).
    words: Vec<Vec<u8>>,
    /// Bruhat order as a bitmatrix: leq[y * order + w] set iff y <= w.
    leq: BruhatMatrix,
}

struct BruhatMatrix {
    order: usize,
    bits: Vec<u64>,
}

impl BruhatMatrix {
    fn new(order: usize) -> Self {
        BruhatMatrix { order, bits: vec![0u64; (order * order + 63) / 64] }
    }

    fn set(&mut self, y: usize, w: usize) {
        let k = y * self.order + w;
        self.bits[k / 64] |= 1 << (k % 64);
    }

    fn get(&self, y: usize, w: usize) -> bool {
        let k = y * self.order + w;
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }
}

impl WeylGroup {
    /// Breadth-first enumeration from the identity by simple reflections.
    pub fn enumerate(datum: RootDatum) -> Result<Self> {
        Self::enumerate_with_caps(datum, &Caps::default())
    }

    pub fn enumerate_with_caps(datum: RootDatum, caps: &Caps) -> Result<Self> {
        let rank = datum.rank();
        let num_roots = datum.num_positive_roots();

        // Action table of each simple reflection on the positive roots.
        let mut simple_tables: Vec<ActionTable> = Vec::with_capacity(rank);
        for i in 0..rank {
            let mut table = Vec::with_capacity(num_roots);
            for alpha in datum.positive_roots() {
                let image = datum.reflect_root(i, alpha)?;
                if image.is_positive() {
                    table.push((datum.positive_index(&image).unwrap() as u16, false));
                } else {
                    table.push((datum.positive_index(&image.negate()).unwrap() as u16, true));
                }
            }
            simple_tables.push(table);
        }

        let identity: ActionTable = (0..num_roots as u16).map(|j| (j, false)).collect();
        let mut seen: BTreeMap<ActionTable, u32> = BTreeMap::new();
        seen.insert(identity.clone(), 0);
        let mut elements = vec![identity];
        let mut frontier = vec![0usize];
        while let Some(idx) = frontier.pop() {
            let current = elements[idx].clone();
            for table in &simple_tables {
                // right multiplication: (w s_i)(alpha) = w(s_i(alpha))
                let product = compose(&current, table);
                if !seen.contains_key(&product) {
                    if elements.len() >= caps.max_group_order {
                        return Err(Error::CapExceeded {
                            what: "Weyl group order",
                            limit: caps.max_group_order as u128,
                            requested: caps.max_group_order as u128 + 1,
                        });
                    }
                    seen.insert(product.clone(), elements.len() as u32);
                    frontier.push(elements.len());
                    elements.push(product);
                }
            }
        }

        // Canonical id order: by (length, table).
        elements.sort_by_key(|t| (table_length(t), t.clone()));
        let order = elements.len();
        let index: BTreeMap<ActionTable, u32> = elements
            .iter()
            .enumerate()
            .map(|(k, t)| (t.clone(), k as u32))
            .collect();

        let lengths: Vec<u32> = elements.iter().map(|t| table_length(t)).collect();
        let mut right_cayley = vec![vec![0u32; rank]; order];
        let mut left_cayley = vec![vec![0u32; rank]; order];
        for (w, table) in elements.iter().enumerate() {
            for i in 0..rank {
                right_cayley[w][i] = index[&compose(table, &simple_tables[i])];
                left_cayley[w][i] = index[&compose(&simple_tables[i], table)];
            }
        }

        let mut inverses = vec![0u32; order];
        for (w, table) in elements.iter().enumerate() {
            inverses[w] = index[&invert(table)];
        }

        // ShortLex reduced words by smallest left descent.
        let mut words: Vec<Vec<u8>> = vec![Vec::new(); order];
        let mut by_length: Vec<usize> = (0..order).collect();
        by_length.sort_by_key(|&w| lengths[w]);
        for &w in &by_length {
            if lengths[w] == 0 {
                continue;
            }
            let i = (0..rank)
                .find(|&i| lengths[left_cayley[w][i] as usize] < lengths[w])
                .expect("nonidentity element has a left descent");
            let rest = left_cayley[w][i] as usize;
            let mut word = Vec::with_capacity(lengths[w] as usize);
            word.push(i as u8);
            word.extend_from_slice(&words[rest]);
            words[w] = word;
        }

        // Bruhat order by length induction with the lifting property:
        // for s with sw < w, y <= w iff (sy < y ? sy <= sw : y <= sw).
        let mut leq = BruhatMatrix::new(order);
        for &w in &by_length {
            if lengths[w] == 0 {
                leq.set(w, w);
                continue;
            }
            let s = words[w][0] as usize;
            let sw = left_cayley[w][s] as usize;
            for y in 0..order {
                let sy = left_cayley[y][s] as usize;
                let le = if lengths[sy] < lengths[y] { leq.get(sy, sw) } else { leq.get(y, sw) };
                if le {
                    leq.set(y, w);
                }
            }
        }

        Ok(WeylGroup {
            datum,
            tables: elements,
            lengths,
            inverses,
            right_cayley,
            left_cayley,
            words,
            leq,
        })
    }

    pub fn from_preset(name: &str) -> Result<Self> {
        Self::enumerate(RootDatum::preset(name)?)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn order(&self) -> usize {
        self.tables.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.order() as u32).map(ElementId)
    }

    pub fn length(&self, w: ElementId) -> usize {
        self.lengths[w.0 as usize] as usize
    }

    pub fn simple(&self, i: usize) -> ElementId {
        ElementId(self.left_cayley[0][i])
    }

    pub fn inverse(&self, w: ElementId) -> ElementId {
        ElementId(self.inverses[w.0 as usize])
    }

    pub fn right_mul_simple(&self, w: ElementId, i: usize) -> ElementId {
        ElementId(self.right_cayley[w.0 as usize][i])
    }

    pub fn left_mul_simple(&self, w: ElementId, i: usize) -> ElementId {
        ElementId(self.left_cayley[w.0 as usize][i])
    }

    /// Group product a * b, via the reduced word of b.
    pub fn multiply(&self, a: ElementId, b: ElementId) -> ElementId {
        let mut acc = a;
        for &i in &self.words[b.0 as usize] {
            acc = self.right_mul_simple(acc, i as usize);
        }
        acc
    }

    /// Product of a word in the simple generators (empty word = identity).
    pub fn from_word(&self, word: &[usize]) -> ElementId {
        let mut acc = IDENTITY;
        for &i in word {
            acc = self.right_mul_simple(acc, i);
        }
        acc
    }

    /// ShortLex reduced word of w (0-based generator indices).
    pub fn word(&self, w: ElementId) -> &[u8] {
        &self.words[w.0 as usize]
    }

    /// Signed action on positive root j.
    pub fn act_on_root(&self, w: ElementId, j: usize) -> (usize, bool) {
        let (idx, neg) = self.tables[w.0 as usize][j];
        (idx as usize, neg)
    }

    /// w(theta) in fundamental-weight coordinates, by applying the reduced
    /// word of w (rightmost letter first).
    pub fn apply_to_weight(&self, w: ElementId, theta: &Weight) -> Weight {
        let mut current = theta.clone();
        for &i in self.words[w.0 as usize].iter().rev() {
            current = self.datum.reflect_weight(i as usize, &current);
        }
        current
    }

    /// R(w) = { i : w s_i < w } = { i : w(alpha_i) negative }.
    pub fn right_descents(&self, w: ElementId) -> Subset {
        let mut out = Subset::EMPTY;
        for i in 0..self.rank() {
            let (_, neg) = self.tables[w.0 as usize][self.datum.simple_index(i)];
            if neg {
                out.insert(i);
            }
        }
        out
    }

    pub fn left_descents(&self, w: ElementId) -> Subset {
        self.right_descents(self.inverse(w))
    }

    /// Bruhat order.
    pub fn bruhat_leq(&self, y: ElementId, w: ElementId) -> bool {
        self.leq.get(y.0 as usize, w.0 as usize)
    }

    /// Support of w: the set of generator indices in a reduced word.
    pub fn support(&self, w: ElementId) -> Subset {
        let mut out = Subset::EMPTY;
        for &i in self.word(w) {
            out.insert(i as usize);
        }
        out
    }

    /// Elements of the standard parabolic subgroup W_J.
    pub fn parabolic_elements(&self, j: Subset) -> Vec<ElementId> {
        self.elements().filter(|&w| self.support(w).is_subset_of(j)).collect()
    }

    /// Longest element of W_J, by greedy ascent within W_J.
    pub fn longest_element(&self, j: Subset) -> ElementId {
        let mut w = IDENTITY;
        'outer: loop {
            for i in j.iter() {
                let next = self.right_mul_simple(w, i);
                if self.length(next) > self.length(w) {
                    w = next;
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// X_J = { x : l(x s_j) > l(x) for all j in J }, sorted by id.
    pub fn min_coset_reps(&self, j: Subset) -> CosetData {
        let reps = self
            .elements()
            .filter(|&x| {
                j.iter().all(|i| self.length(self.right_mul_simple(x, i)) > self.length(x))
            })
            .collect();
        CosetData { j, reps }
    }

    /// Factor w = x * u with x in X_J, u in W_J, lengths additive.
    pub fn coset_factorize(&self, w: ElementId, j: Subset) -> (ElementId, ElementId) {
        let mut x = w;
        let mut u = IDENTITY;
        // peel right descents lying in J
        loop {
            match j.iter().find(|&i| {
                self.length(self.right_mul_simple(x, i)) < self.length(x)
            }) {
                Some(i) => {
                    x = self.right_mul_simple(x, i);
                    u = self.left_mul_simple(u, i);
                }
                None => break,
            }
        }
        (x, u)
    }

    /// Z_K = { w in X_K : R(w w_K) contained in K union (I minus I(theta)) },
    /// for K contained in I(theta).
    pub fn z_set(&self, k: Subset, itheta: Subset) -> Result<Vec<ElementId>> {
        if !k.is_subset_of(itheta) {
            return Err(Error::precondition("J must be contained in I(theta)"));
        }
        let full = Subset::full(self.rank());
        let allowed = k.union(Subset(full.0 & !itheta.0));
        let w_k = self.longest_element(k);
        Ok(self
            .min_coset_reps(k)
            .reps
            .into_iter()
            .filter(|&w| {
                self.right_descents(self.multiply(w, w_k)).is_subset_of(allowed)
            })
            .collect())
    }

    /// Check that X_J w_J is the disjoint union of the Z_K w_K over
    /// J <= K <= I(theta).
    pub fn partition_check(&self, j: Subset, itheta: Subset) -> Result<PartitionCertificate> {
        if !j.is_subset_of(itheta) {
            return Err(Error::precondition("J must be contained in I(theta)"));
        }
        let w_j = self.longest_element(j);
        let target: Vec<ElementId> = self
            .min_coset_reps(j)
            .reps
            .iter()
            .map(|&x| self.multiply(x, w_j))
            .collect();
        let mut counts: BTreeMap<ElementId, usize> = target.iter().map(|&g| (g, 0)).collect();
        let mut z_cardinalities = Vec::new();
        let mut stray = Vec::new();
        for k in itheta.subsets() {
            if !j.is_subset_of(k) {
                continue;
            }
            let w_k = self.longest_element(k);
            let z = self.z_set(k, itheta)?;
            z_cardinalities.push((k, z.len()));
            for &w in &z {
                let g = self.multiply(w, w_k);
                match counts.get_mut(&g) {
                    Some(c) => *c += 1,
                    None => stray.push(g),
                }
            }
        }
        let mut violations: Vec<ElementId> = counts
            .iter()
            .filter(|&(_, &c)| c != 1)
            .map(|(&g, _)| g)
            .collect();
        violations.extend(stray);
        violations.sort();
        Ok(PartitionCertificate {
            ok: violations.is_empty(),
            z_cardinalities,
            x_cardinality: target.len(),
            violations,
        })
    }

    /// Length generating function of the full group.
    pub fn poincare_polynomial(&self) -> IntPolynomial {
        let top = self.lengths.iter().copied().max().unwrap_or(0) as usize;
        let mut coeffs = vec![0i64; top + 1];
        for &l in &self.lengths {
            coeffs[l as usize] += 1;
        }
        IntPolynomial::from_coeffs(coeffs)
    }

    /// Bruhat covers: pairs (y, w) with y < w and l(w) = l(y) + 1.
    pub fn bruhat_covers(&self) -> Vec<(ElementId, ElementId)> {
        let mut out = Vec::new();
        for w in self.elements() {
            for y in self.elements() {
                if self.length(w) == self.length(y) + 1 && self.bruhat_leq(y, w) {
                    out.push((y, w));
                }
            }
        }
        out
    }
}

fn compose(outer: &ActionTable, inner: &ActionTable) -> ActionTable {
    inner
        .iter()
        .map(|&(idx, neg)| {
            let (oidx, oneg) = outer[idx as usize];
            (oidx, oneg ^ neg)
        })
        .collect()
}

fn invert(table: &ActionTable) -> ActionTable {
    let mut out = vec![(0u16, false); table.len()];
    for (j, &(idx, neg)) in table.iter().enumerate() {
        out[idx as usize] = (j as u16, neg);
    }
    out
}

fn table_length(table: &ActionTable) -> u32 {
    table.iter().filter(|&&(_, neg)| neg).count() as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn subset(indices: &[usize]) -> Subset {
        Subset::from_indices(indices)
    }

    #[test]
    fn enumerate_orders() {
        for &(name, _, order) in crate::rootsys::PRESETS {
            let group = WeylGroup::from_preset(name).unwrap();
            assert_eq!(group.order(), order, "type {name}");
        }
    }

    #[test]
    fn a2_lengths_by_hand() {
        // Hand enumeration of S3: lengths {0,1,1,2,2,3}.
        let group = WeylGroup::from_preset("A2").unwrap();
        let mut lengths: Vec<usize> = group.elements().map(|w| group.length(w)).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn b2_longest_length() {
        let group = WeylGroup::from_preset("B2").unwrap();
        let max = group.elements().map(|w| group.length(w)).max().unwrap();
        assert_eq!(max, 4);
    }

    #[test]
    fn length_of_inverse_and_products() {
        let group = WeylGroup::from_preset("B2").unwrap();
        for w in group.elements() {
            assert_eq!(group.length(w), group.length(group.inverse(w)));
            assert_eq!(group.inverse(group.inverse(w)), w);
            assert_eq!(group.multiply(w, group.inverse(w)), IDENTITY);
        }
    }

    #[test]
    fn right_descent_examples() {
        let group = WeylGroup::from_preset("A2").unwrap();
        assert_eq!(group.right_descents(IDENTITY), Subset::EMPTY);
        let w0 = group.longest_element(Subset::full(2));
        assert_eq!(group.right_descents(w0), Subset::full(2));
        // A2, w = s1 s2 has right descent set {2} (0-based: {1})
        let s1s2 = group.from_word(&[0, 1]);
        assert_eq!(group.right_descents(s1s2), subset(&[1]));
        // descent criterion: i in R(w) iff w(alpha_i) negative iff l(w s_i) < l(w)
        for w in group.elements() {
            for i in 0..2 {
                let by_length = group.length(group.right_mul_simple(w, i)) < group.length(w);
                assert_eq!(group.right_descents(w).contains(i), by_length);
            }
        }
    }

    #[test]
    fn bruhat_examples() {
        let group = WeylGroup::from_preset("A2").unwrap();
        let s1 = group.simple(0);
        let s2 = group.simple(1);
        let s2s1 = group.from_word(&[1, 0]);
        for w in group.elements() {
            assert!(group.bruhat_leq(IDENTITY, w));
            if w != IDENTITY {
                assert!(!group.bruhat_leq(w, IDENTITY));
            }
        }
        assert!(group.bruhat_leq(s1, s2s1));
        assert!(!group.bruhat_leq(s1, s2));
    }

    /// Independent Bruhat oracle: y <= w iff some reduced word of y is a
    /// subsequence of a fixed reduced word of w. Exponential, so only run on
    /// small groups.
    fn bruhat_by_subwords(group: &WeylGroup, y: ElementId, w: ElementId) -> bool {
        let word = group.word(w);
        let n = word.len();
        let target_len = group.length(y);
        (0u32..1 << n).any(|mask| {
            if mask.count_ones() as usize != target_len {
                return false;
            }
            let sub: Vec<usize> = (0..n)
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| word[k] as usize)
                .collect();
            group.from_word(&sub) == y
        })
    }

    #[test]
    fn bruhat_matches_subword_oracle() {
        for name in ["A2", "B2", "A3"] {
            let group = WeylGroup::from_preset(name).unwrap();
            for y in group.elements() {
                for w in group.elements() {
                    assert_eq!(
                        group.bruhat_leq(y, w),
                        bruhat_by_subwords(&group, y, w),
                        "{name}: {:?} vs {:?}",
                        group.word(y),
                        group.word(w)
                    );
                }
            }
        }
    }

    #[test]
    fn longest_element_examples() {
        let group = WeylGroup::from_preset("A2").unwrap();
        assert_eq!(group.longest_element(Subset::EMPTY), IDENTITY);
        assert_eq!(group.longest_element(subset(&[0])), group.simple(0));
        let w0 = group.longest_element(Subset::full(2));
        assert_eq!(group.length(w0), 3);
        assert_eq!(w0, group.from_word(&[0, 1, 0]));
        // involution and full descent set within J
        for name in ["B2", "A3", "G2"] {
            let group = WeylGroup::from_preset(name).unwrap();
            for j in Subset::full(group.rank()).subsets() {
                let wj = group.longest_element(j);
                assert_eq!(group.multiply(wj, wj), IDENTITY);
                assert_eq!(group.right_descents(wj).intersection(j), j);
                assert!(group.support(wj).is_subset_of(j));
            }
        }
    }

    #[test]
    fn min_coset_reps_examples() {
        let group = WeylGroup::from_preset("A2").unwrap();
        assert_eq!(group.min_coset_reps(Subset::EMPTY).reps.len(), 6);
        assert_eq!(group.min_coset_reps(Subset::full(2)).reps, vec![IDENTITY]);
        let x1: BTreeSet<ElementId> =
            group.min_coset_reps(subset(&[0])).reps.into_iter().collect();
        let expected: BTreeSet<ElementId> =
            [IDENTITY, group.simple(1), group.from_word(&[0, 1])].into_iter().collect();
        assert_eq!(x1, expected);
    }

    #[test]
    fn coset_factorization_unique_and_additive() {
        for name in ["A3", "B2", "G2"] {
            let group = WeylGroup::from_preset(name).unwrap();
            for j in Subset::full(group.rank()).subsets() {
                let x_j: BTreeSet<ElementId> =
                    group.min_coset_reps(j).reps.iter().copied().collect();
                let w_j_elems: BTreeSet<ElementId> =
                    group.parabolic_elements(j).into_iter().collect();
                assert_eq!(x_j.len() * w_j_elems.len(), group.order());
                for w in group.elements() {
                    let (x, u) = group.coset_factorize(w, j);
                    assert!(x_j.contains(&x));
                    assert!(w_j_elems.contains(&u));
                    assert_eq!(group.multiply(x, u), w);
                    assert_eq!(group.length(x) + group.length(u), group.length(w));
                }
            }
        }
    }

    #[test]
    fn x_j_length_additivity_with_longest() {
        let group = WeylGroup::from_preset("B2").unwrap();
        for j in Subset::full(2).subsets() {
            let wj = group.longest_element(j);
            for &x in &group.min_coset_reps(j).reps {
                assert_eq!(
                    group.length(group.multiply(x, wj)),
                    group.length(x) + group.length(wj)
                );
            }
        }
    }

    #[test]
    fn z_set_examples() {
        let group = WeylGroup::from_preset("A2").unwrap();
        let full = Subset::full(2);
        // Z_empty with I(theta) = I: descent condition forces w = e
        assert_eq!(group.z_set(Subset::EMPTY, full).unwrap(), vec![IDENTITY]);
        // Z_{1}: {e, s2}
        let z1: BTreeSet<ElementId> = group.z_set(subset(&[0]), full).unwrap().into_iter().collect();
        let expected: BTreeSet<ElementId> = [IDENTITY, group.simple(1)].into_iter().collect();
        assert_eq!(z1, expected);
        // Z_I = X_I = {e}
        assert_eq!(group.z_set(full, full).unwrap(), vec![IDENTITY]);
        // precondition
        assert!(group.z_set(full, Subset::EMPTY).is_err());
    }

    #[test]
    fn partition_check_examples() {
        let a2 = WeylGroup::from_preset("A2").unwrap();
        let cert = a2.partition_check(Subset::EMPTY, Subset::full(2)).unwrap();
        assert!(cert.ok);
        assert_eq!(cert.x_cardinality, 6);
        let sizes: Vec<usize> = cert.z_cardinalities.iter().map(|&(_, n)| n).collect();
        assert_eq!(sizes, vec![1, 2, 2, 1]);

        // trivial case I(theta) = empty
        let cert = a2.partition_check(Subset::EMPTY, Subset::EMPTY).unwrap();
        assert!(cert.ok);
        assert_eq!(cert.x_cardinality, 6);

        let b2 = WeylGroup::from_preset("B2").unwrap();
        let cert = b2.partition_check(Subset::EMPTY, Subset::full(2)).unwrap();
        assert!(cert.ok);
        let total: usize = cert.z_cardinalities.iter().map(|&(_, n)| n).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn partition_check_all_small_types() {
        for &(name, _, _) in crate::rootsys::PRESETS {
            let group = WeylGroup::from_preset(name).unwrap();
            let full = Subset::full(group.rank());
            for itheta in full.subsets() {
                for j in itheta.subsets() {
                    let cert = group.partition_check(j, itheta).unwrap();
                    assert!(cert.ok, "{name} J={j:?} Itheta={itheta:?}");
                }
            }
        }
    }

    #[test]
    fn poincare_product_formula() {
        // degrees of the fundamental invariants per type
        let degrees: &[(&str, &[usize])] = &[
            ("A1", &[2]),
            ("A2", &[2, 3]),
            ("A3", &[2, 3, 4]),
            ("A4", &[2, 3, 4, 5]),
            ("B2", &[2, 4]),
            ("B3", &[2, 4, 6]),
            ("C3", &[2, 4, 6]),
            ("D4", &[2, 4, 4, 6]),
            ("G2", &[2, 6]),
        ];
        for &(name, degs) in degrees {
            let group = WeylGroup::from_preset(name).unwrap();
            let mut product = IntPolynomial::one();
            for &d in degs {
                product = product.mul(&IntPolynomial::from_coeffs(vec![1; d]));
            }
            assert_eq!(group.poincare_polynomial(), product, "type {name}");
        }
    }

    #[test]
    fn weight_orbit_agrees_between_models() {
        // orbit of a coordinate vector under repeated simple reflections
        // equals the orbit computed through the enumerated group action
        use crate::rootsys::Weight;
        for name in ["A2", "B2", "A3", "G2"] {
            let group = WeylGroup::from_preset(name).unwrap();
            let samples: Vec<Vec<i64>> = vec![
                vec![0; group.rank()],
                (0..group.rank() as i64).map(|k| k - 1).collect(),
                (0..group.rank() as i64).map(|k| 2 * k + 1).collect(),
            ];
            for coords in samples {
                let theta = Weight::new(coords);
                // closure under the reflection model
                let mut orbit: BTreeSet<Weight> = BTreeSet::new();
                let mut frontier = vec![theta.clone()];
                orbit.insert(theta.clone());
                while let Some(current) = frontier.pop() {
                    for i in 0..group.rank() {
                        let image = group.datum().reflect_weight(i, &current);
                        if orbit.insert(image.clone()) {
                            frontier.push(image);
                        }
                    }
                }
                // orbit under the enumerated permutation model
                let via_group: BTreeSet<Weight> =
                    group.elements().map(|w| group.apply_to_weight(w, &theta)).collect();
                assert_eq!(orbit, via_group, "{name} orbit of {theta:?}");
            }
        }
    }

    #[test]
    fn words_are_reduced_and_shortlex() {
        let group = WeylGroup::from_preset("B2").unwrap();
        for w in group.elements() {
            let word: Vec<usize> = group.word(w).iter().map(|&i| i as usize).collect();
            assert_eq!(word.len(), group.length(w));
            assert_eq!(group.from_word(&word), w);
        }
    }
}
