//! The decomposition engine: given a root datum, a torus character, and a
//! coefficient-characteristic mode, decide whether the induced module has a
//! finite composition series and enumerate the factor descriptors.
//!
//! Factors are descriptors, never materialized modules: each carries its
//! index set Z_J and the generating function of the dimensions of its
//! finite-level pieces (variable t standing for q^a). Everything testable
//! lives in these descriptors.

use alloc::string::String;
use alloc::vec::Vec;

use crate::charlat::{i_theta, RationalCharacter};
use crate::poly::IntPolynomial;
use crate::rootsys::Weight;
use crate::subset::Subset;
use crate::weyl::{ElementId, WeylGroup};
use crate::{Error, Result};

/// Coefficient characteristic relative to the defining characteristic.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    /// char k != p: a composition series always exists.
    Cross,
    /// k = algebraic closure of F_q: existence is governed by antidominance.
    Natural,
}

/// Character input: a rational character, or a directly supplied I(theta)
/// for characters that are not rational (cross characteristic only; the
/// factor classification depends only on I(theta)).
#[derive(Clone, Debug)]
pub enum ThetaInput {
    Rational(RationalCharacter),
    DirectItheta(Subset),
}

/// One composition factor, labelled by (theta, J) with J inside I(theta).
#[derive(Clone, Debug)]
pub struct FactorDescriptor {
    pub j: Subset,
    /// The index set Z_J of the factor basis.
    pub z_set: Vec<ElementId>,
    /// Sum over w in Z_J of t^{l(w w_J)}; evaluating at t = q^a gives the
    /// dimension of the F_{q^a}-level piece.
    pub dim_poly: IntPolynomial,
    /// Always 1: the factors occur with multiplicity one.
    pub multiplicity: u32,
    /// The factor has a Borel-fixed line exactly when J is empty.
    pub has_fixed_line: bool,
}

/// Decomposition outcome. When `series_exists` is false the factor list is
/// empty and `witness` names a simple index with positive pairing.
#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub mode: Mode,
    pub itheta: Subset,
    /// Present for rational input, absent in direct-I(theta) mode.
    pub theta: Option<Weight>,
    pub series_exists: bool,
    pub witness: Option<usize>,
    pub factors: Vec<FactorDescriptor>,
    /// Label of the simple head (theta, empty set), present when a series exists.
    pub head: Option<Subset>,
    pub irreducible: bool,
    /// Documentation-only remarks carried along with the report.
    pub notes: Vec<String>,
}

const NOTE_INDECOMPOSABLE: &str =
    "endomorphism ring of the full induced module is the ground field, so the module \
     is indecomposable (recorded, not machine-checked)";
const NOTE_DIRECT_ITHETA: &str =
    "I(theta) supplied directly: the factor classification depends only on I(theta), \
     but stabilizer hypotheses cannot be validated for non-rational characters";

/// Enumerate the composition-factor descriptors of the induced module.
pub fn decompose(
    group: &WeylGroup,
    theta: &ThetaInput,
    mode: Mode,
) -> Result<DecompositionReport> {
    let rank = group.rank();
    let mut notes = Vec::new();
    notes.push(String::from(NOTE_INDECOMPOSABLE));

    let (itheta, weight) = match theta {
        ThetaInput::Rational(t) => {
            if t.weight.rank() != rank {
                return Err(Error::precondition("character rank mismatch"));
            }
            (i_theta(t), Some(t.weight.clone()))
        }
        ThetaInput::DirectItheta(set) => {
            if !set.is_subset_of(Subset::full(rank)) {
                return Err(Error::precondition("I(theta) indices out of range"));
            }
            notes.push(String::from(NOTE_DIRECT_ITHETA));
            (*set, None)
        }
    };

    let series_exists = match (mode, theta) {
        (Mode::Cross, _) => true,
        (Mode::Natural, ThetaInput::Rational(t)) => t.is_antidominant(),
        (Mode::Natural, ThetaInput::DirectItheta(_)) => {
            return Err(Error::precondition(
                "natural mode needs a rational character to decide antidominance",
            ));
        }
    };

    if !series_exists {
        let witness = match theta {
            ThetaInput::Rational(t) => t.dominance_witness(),
            ThetaInput::DirectItheta(_) => unreachable!(),
        };
        return Ok(DecompositionReport {
            mode,
            itheta,
            theta: weight,
            series_exists: false,
            witness,
            factors: Vec::new(),
            head: None,
            irreducible: false,
            notes,
        });
    }

    let mut factors = Vec::new();
    for j in itheta.subsets() {
        let z = group.z_set(j, itheta)?;
        let w_j = group.longest_element(j);
        let mut dim = IntPolynomial::zero();
        for &w in &z {
            let exponent = group.length(group.multiply(w, w_j));
            debug_assert_eq!(exponent, group.length(w) + group.length(w_j));
            dim = dim.add(&IntPolynomial::monomial(exponent));
        }
        factors.push(FactorDescriptor {
            j,
            z_set: z,
            dim_poly: dim,
            multiplicity: 1,
            has_fixed_line: j.is_empty(),
        });
    }

    let strongly = match theta {
        ThetaInput::Rational(t) => t.is_strongly_antidominant(),
        ThetaInput::DirectItheta(_) => false,
    };
    let irreducible = (mode == Mode::Natural && strongly) || factors.len() == 1;

    Ok(DecompositionReport {
        mode,
        itheta,
        theta: weight,
        series_exists: true,
        witness: None,
        factors,
        head: Some(Subset::EMPTY),
        irreducible,
        notes,
    })
}

/// Check the dimension identity
///   sum_{J <= K <= I(theta)} sum_{w in Z_K} t^{l(w w_K)}
///     = sum_{x in X_J} t^{l(x w_J)}
/// exactly, for one J. At J = empty, I(theta) = I, the right side is the
/// Poincare polynomial of W shifted by nothing (w_J = e).
pub fn dimension_identity_check(group: &WeylGroup, itheta: Subset, j: Subset) -> Result<bool> {
    if !j.is_subset_of(itheta) {
        return Err(Error::precondition("J must be contained in I(theta)"));
    }
    let mut left = IntPolynomial::zero();
    for k in itheta.subsets() {
        if !j.is_subset_of(k) {
            continue;
        }
        let w_k = group.longest_element(k);
        for w in group.z_set(k, itheta)? {
            left = left.add(&IntPolynomial::monomial(group.length(group.multiply(w, w_k))));
        }
    }
    let w_j = group.longest_element(j);
    let mut right = IntPolynomial::zero();
    for x in group.min_coset_reps(j).reps {
        right = right.add(&IntPolynomial::monomial(group.length(group.multiply(x, w_j))));
    }
    Ok(left == right)
}

/// Evaluate every factor's dimension polynomial at t = q^a.
pub fn finite_level_dimensions(
    report: &DecompositionReport,
    q: u64,
    a: u32,
) -> Result<Vec<u128>> {
    if !report.series_exists {
        return Err(Error::precondition("no composition series exists"));
    }
    let t = (q as u128)
        .checked_pow(a)
        .ok_or(Error::Overflow("q^a"))?;
    report.factors.iter().map(|f| f.dim_poly.eval_u128(t)).collect()
}
