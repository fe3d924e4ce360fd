//! Rational characters of the maximal torus, in fundamental-weight
//! coordinates: the vanishing set I(theta), antidominance tests, the
//! W-stabilizer, and the minimal parabolic containing it.
//!
//! For a rational character, triviality on the rank-one torus T_i reads off
//! a single coordinate: theta(alpha_i^vee(t)) = t^{<theta, alpha_i^vee>},
//! and t -> t^m is trivial on the multiplicative group of an algebraic
//! closure iff m = 0.

use alloc::vec::Vec;

use crate::rootsys::Weight;
use crate::subset::Subset;
use crate::weyl::{ElementId, WeylGroup};

/// A rational character of the torus, theta in X(T).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalCharacter {
    pub weight: Weight,
}

impl RationalCharacter {
    pub fn new(weight: Weight) -> Self {
        RationalCharacter { weight }
    }

    pub fn zero(rank: usize) -> Self {
        RationalCharacter { weight: Weight::zero(rank) }
    }

    /// `<theta, alpha_i^vee> <= 0` for every simple root.
    pub fn is_antidominant(&self) -> bool {
        self.weight.coords.iter().all(|&c| c <= 0)
    }

    /// `<theta, alpha_i^vee> < 0` for every simple root.
    pub fn is_strongly_antidominant(&self) -> bool {
        self.weight.coords.iter().all(|&c| c < 0)
    }

    /// First simple index with positive pairing, if any.
    pub fn dominance_witness(&self) -> Option<usize> {
        self.weight.coords.iter().position(|&c| c > 0)
    }
}

/// I(theta) = { i : theta restricted to T_i is trivial } = { i : coords[i] = 0 }.
pub fn i_theta(theta: &RationalCharacter) -> Subset {
    let mut out = Subset::EMPTY;
    for (i, &c) in theta.weight.coords.iter().enumerate() {
        if c == 0 {
            out.insert(i);
        }
    }
    out
}

/// The stabilizer of theta in W, with its parabolic classification.
#[derive(Clone, Debug)]
pub struct StabilizerData {
    pub elements: Vec<ElementId>,
    pub is_parabolic: bool,
    /// Minimal K with W_theta contained in W_K (union of supports).
    pub j_theta: Subset,
}

/// Exhaustive stabilizer computation: w fixes theta iff w(theta) = theta.
pub fn stabilizer(group: &WeylGroup, theta: &RationalCharacter) -> StabilizerData {
    let elements: Vec<ElementId> = group
        .elements()
        .filter(|&w| group.apply_to_weight(w, &theta.weight) == theta.weight)
        .collect();
    let mut j_theta = Subset::EMPTY;
    for &w in &elements {
        j_theta = j_theta.union(group.support(w));
    }
    let parabolic_order = group.parabolic_elements(j_theta).len();
    let is_parabolic = parabolic_order == elements.len();
    if is_parabolic {
        // a parabolic stabilizer of a rational character is exactly W_{I(theta)}
        assert_eq!(j_theta, i_theta(theta));
    }
    StabilizerData { elements, is_parabolic, j_theta }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Weight;
    use crate::weyl::IDENTITY;
    use alloc::collections::BTreeSet;
    use alloc::vec;

    fn theta(coords: Vec<i64>) -> RationalCharacter {
        RationalCharacter::new(Weight::new(coords))
    }

    #[test]
    fn i_theta_examples() {
        assert_eq!(i_theta(&RationalCharacter::zero(2)), Subset::full(2));
        assert_eq!(i_theta(&theta(vec![0, -3])), Subset::singleton(0));
        assert_eq!(i_theta(&theta(vec![-1, -2])), Subset::EMPTY);
    }

    #[test]
    fn antidominance_examples() {
        let zero = RationalCharacter::zero(2);
        assert!(zero.is_antidominant());
        assert!(!zero.is_strongly_antidominant());

        let t = theta(vec![-1, -2]);
        assert!(t.is_antidominant() && t.is_strongly_antidominant());

        let t = theta(vec![1, -2]);
        assert!(!t.is_antidominant() && !t.is_strongly_antidominant());
        assert_eq!(t.dominance_witness(), Some(0));
    }

    #[test]
    fn stabilizer_examples() {
        let group = WeylGroup::from_preset("A2").unwrap();

        // theta = 0: everything stabilizes, J(theta) = I
        let data = stabilizer(&group, &RationalCharacter::zero(2));
        assert_eq!(data.elements.len(), 6);
        assert!(data.is_parabolic);
        assert_eq!(data.j_theta, Subset::full(2));

        // theta = (0, -3): W_{(0)} = {e, s1}
        let data = stabilizer(&group, &theta(vec![0, -3]));
        let got: BTreeSet<ElementId> = data.elements.iter().copied().collect();
        let expected: BTreeSet<ElementId> = [IDENTITY, group.simple(0)].into_iter().collect();
        assert_eq!(got, expected);
        assert!(data.is_parabolic);
        assert_eq!(data.j_theta, Subset::singleton(0));
    }

    #[test]
    fn stabilizer_can_be_nonparabolic() {
        // A2, theta = (3, -3): the orbit check finds a non-simple stabilizing
        // element (the rotation taking theta through (3,-3) -> ... -> itself),
        // so W_theta is not parabolic and J(theta) is the support union.
        let group = WeylGroup::from_preset("A2").unwrap();
        let data = stabilizer(&group, &theta(vec![3, -3]));
        assert!(data.elements.len() > 1);
        assert!(!data.is_parabolic);
        assert_eq!(data.j_theta, Subset::full(2));
        // I(theta) is empty here, and W_{I(theta)} = {e} is still contained
        assert_eq!(i_theta(&theta(vec![3, -3])), Subset::EMPTY);
    }

    #[test]
    fn parabolic_part_always_stabilizes() {
        // W_{I(theta)} is contained in W_theta; s_i theta = theta for i in I(theta)
        let group = WeylGroup::from_preset("B2").unwrap();
        let battery = [
            vec![0, 0],
            vec![0, -1],
            vec![-2, 0],
            vec![-1, -1],
            vec![2, 0],
            vec![0, 5],
            vec![3, -3],
            vec![-4, 2],
        ];
        for coords in battery {
            let t = theta(coords);
            let data = stabilizer(&group, &t);
            let stab: BTreeSet<ElementId> = data.elements.iter().copied().collect();
            for w in group.parabolic_elements(i_theta(&t)) {
                assert!(stab.contains(&w));
            }
            for i in i_theta(&t).iter() {
                assert_eq!(group.apply_to_weight(group.simple(i), &t.weight), t.weight);
            }
        }
    }

    #[test]
    fn j_theta_is_minimal() {
        // dropping any index from J(theta) loses containment of W_theta
        let group = WeylGroup::from_preset("A3").unwrap();
        let battery = [vec![0, 0, -1], vec![0, -2, 0], vec![2, -2, 2], vec![0, 0, 0]];
        for coords in battery {
            let t = theta(coords);
            let data = stabilizer(&group, &t);
            let stab: BTreeSet<ElementId> = data.elements.iter().copied().collect();
            for dropped in data.j_theta.iter() {
                let smaller = Subset(data.j_theta.0 & !(1 << dropped));
                let smaller_parabolic: BTreeSet<ElementId> =
                    group.parabolic_elements(smaller).into_iter().collect();
                assert!(
                    !stab.is_subset(&smaller_parabolic),
                    "J(theta) not minimal for {:?}",
                    t.weight
                );
            }
        }
    }
}
