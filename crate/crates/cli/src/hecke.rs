//! Independent certification of the Kazhdan-Lusztig table by brute-force
//! Hecke-algebra arithmetic.
//!
//! The table under test supplies candidate polynomials P_{y,w}; this module
//! rebuilds the elements C'_w = v^{-l(w)} sum_y P_{y,w}(v^2) T_y inside the
//! Hecke algebra over Z[v, v^-1] and checks the three conditions that
//! uniquely characterize the canonical basis: unitriangularity with
//! P_{w,w} = 1, the strict degree bound for y < w, and invariance under the
//! bar involution (computed from scratch via T-basis inverses). Nothing
//! here calls the KL recursion.

use std::collections::BTreeMap;

use indmod_core::klpoly::KlTable;
use indmod_core::weyl::{ElementId, WeylGroup};

/// Laurent polynomial in v with integer coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Laurent {
    lo: i32,
    coeffs: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent { lo: 0, coeffs: Vec::new() }
    }

    pub fn monomial(exp: i32) -> Laurent {
        Laurent { lo: exp, coeffs: vec![1] }
    }

    pub fn from_poly_in_q(coeffs: &[i64], shift: i32) -> Laurent {
        // p(q) with q = v^2, multiplied by v^shift
        let mut out = Laurent::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                out = out.add(&Laurent { lo: 2 * k as i32 + shift, coeffs: vec![c] });
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn normalized(mut self) -> Laurent {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let leading_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if leading_zeros > 0 {
            self.coeffs.drain(..leading_zeros);
            self.lo += leading_zeros as i32;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len() as i32).max(other.lo + other.coeffs.len() as i32);
        let mut coeffs = vec![0i64; (hi - lo) as usize];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo - lo) as usize + k] += c;
        }
        for (k, &c) in other.coeffs.iter().enumerate() {
            coeffs[(other.lo - lo) as usize + k] += c;
        }
        Laurent { lo, coeffs }.normalized()
    }

    pub fn scale(&self, c: i64) -> Laurent {
        if c == 0 {
            return Laurent::zero();
        }
        Laurent { lo: self.lo, coeffs: self.coeffs.iter().map(|&a| a * c).collect() }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Laurent { lo: self.lo + other.lo, coeffs }.normalized()
    }

    /// v -> v^{-1}.
    pub fn bar(&self) -> Laurent {
        if self.is_zero() {
            return Laurent::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Laurent { lo: -(self.lo + self.coeffs.len() as i32 - 1), coeffs }.normalized()
    }
}

type HeckeVec = BTreeMap<u32, Laurent>;

fn vec_add_scaled(target: &mut HeckeVec, source: &HeckeVec, scale: &Laurent) {
    for (&y, c) in source {
        let term = c.mul(scale);
        let entry = target.entry(y).or_insert_with(Laurent::zero);
        *entry = entry.add(&term);
        if entry.is_zero() {
            target.remove(&y);
        }
    }
}

pub struct HeckeAlgebra<'g> {
    group: &'g WeylGroup,
    /// inverse_table[y] = expansion of T_y^{-1} in the T-basis.
    inverse_table: Vec<HeckeVec>,
}

impl<'g> HeckeAlgebra<'g> {
    pub fn new(group: &'g WeylGroup) -> HeckeAlgebra<'g> {
        let mut algebra = HeckeAlgebra { group, inverse_table: Vec::new() };
        let mut table = vec![HeckeVec::new(); group.order()];
        for w in group.elements() {
            // T_w^{-1} = T_{s_k}^{-1} ... T_{s_1}^{-1} for w = s_1 ... s_k
            let mut v = HeckeVec::new();
            v.insert(0, Laurent::monomial(0));
            for &i in group.word(w).iter().rev() {
                v = algebra.right_mul_ts_inv(&v, i as usize);
            }
            table[w.0 as usize] = v;
        }
        algebra.inverse_table = table;
        algebra
    }

    /// X T_s: T_y T_s = T_{ys} when l grows, else (q-1) T_y + q T_{ys}.
    pub fn right_mul_ts(&self, x: &HeckeVec, i: usize) -> HeckeVec {
        let mut out = HeckeVec::new();
        let q = Laurent::monomial(2);
        let q_minus_1 = Laurent::monomial(2).add(&Laurent::monomial(0).scale(-1));
        for (&y, c) in x {
            let y_id = ElementId(y);
            let ys = self.group.right_mul_simple(y_id, i);
            if self.group.length(ys) > self.group.length(y_id) {
                let entry = out.entry(ys.0).or_insert_with(Laurent::zero);
                *entry = entry.add(c);
            } else {
                let e1 = out.entry(y).or_insert_with(Laurent::zero);
                *e1 = e1.add(&c.mul(&q_minus_1));
                if e1.is_zero() {
                    out.remove(&y);
                }
                let e2 = out.entry(ys.0).or_insert_with(Laurent::zero);
                *e2 = e2.add(&c.mul(&q));
                if e2.is_zero() {
                    out.remove(&ys.0);
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// X T_s^{-1} = q^{-1} (X T_s) + (q^{-1} - 1) X.
    pub fn right_mul_ts_inv(&self, x: &HeckeVec, i: usize) -> HeckeVec {
        let q_inv = Laurent::monomial(-2);
        let q_inv_minus_1 = Laurent::monomial(-2).add(&Laurent::monomial(0).scale(-1));
        let mut out = HeckeVec::new();
        vec_add_scaled(&mut out, &self.right_mul_ts(x, i), &q_inv);
        vec_add_scaled(&mut out, x, &q_inv_minus_1);
        out
    }

    /// bar(sum a_y T_y) = sum bar(a_y) T_{y^{-1}}^{-1}.
    pub fn bar(&self, x: &HeckeVec) -> HeckeVec {
        let mut out = HeckeVec::new();
        for (&y, c) in x {
            let y_inv = self.group.inverse(ElementId(y));
            vec_add_scaled(&mut out, &self.inverse_table[y_inv.0 as usize], &c.bar());
        }
        out
    }

    /// C'_w = v^{-l(w)} sum_{y} P_{y,w}(v^2) T_y from the candidate table.
    pub fn canonical_element(&self, table: &KlTable, w: ElementId) -> HeckeVec {
        let shift = -(self.group.length(w) as i32);
        let mut out = HeckeVec::new();
        for y in self.group.elements() {
            let p = table.polynomial(y, w);
            if p.is_zero() {
                continue;
            }
            out.insert(y.0, Laurent::from_poly_in_q(p.coeffs(), shift));
        }
        out
    }

    /// Multiplication sanity: T_x T_y computed letter by letter.
    pub fn t_basis_product(&self, x: ElementId, y: ElementId) -> HeckeVec {
        let mut v = HeckeVec::new();
        v.insert(x.0, Laurent::monomial(0));
        for &i in self.group.word(y) {
            v = self.right_mul_ts(&v, i as usize);
        }
        v
    }
}

/// Certify a whole KL table against the canonical-basis characterization:
/// support within the Bruhat interval, P_{w,w} = 1, strict degree bounds,
/// and bar-invariance of every C'_w. Any violation is reported with its
/// pair; Ok(()) means the table is the KL table.
pub fn certify_kl_table(group: &WeylGroup, table: &KlTable) -> Result<(), String> {
    let algebra = HeckeAlgebra::new(group);
    for w in group.elements() {
        for y in group.elements() {
            let p = table.polynomial(y, w);
            if y == w {
                if p.coeffs() != [1] {
                    return Err(format!("P_ww != 1 at w id {}", w.0));
                }
                continue;
            }
            if !group.bruhat_leq(y, w) {
                if !p.is_zero() {
                    return Err(format!("nonzero P below non-comparable pair ({}, {})", y.0, w.0));
                }
                continue;
            }
            if let Some(d) = p.degree() {
                if 2 * d + 1 > group.length(w) - group.length(y) {
                    return Err(format!("degree bound violated at ({}, {})", y.0, w.0));
                }
            }
        }
        let c = algebra.canonical_element(table, w);
        if algebra.bar(&c) != c {
            return Err(format!("C'_w not bar-invariant at w id {}", w.0));
        }
    }
    Ok(())
}
