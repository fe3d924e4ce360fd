//! Explicit finite fields F_{p^n} as polynomial rings modulo a
//! deterministically chosen irreducible polynomial.
//!
//! One ambient field hosts a whole computation; subfields are realized
//! internally through the Frobenius fixed-point test, which avoids any
//! compatible-embedding bookkeeping across extensions.
//!
//! Elements are packed into a single u64 (bits for p = 2, one nibble per
//! digit otherwise), so they are Copy and equality is integer equality.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Caps, Error, Result};

/// Packed field element. Canonical: digits reduced mod p, high bits zero.
pub type El = u64;

pub struct AmbientField {
    p: u64,
    n: usize,
    /// Defining polynomial coefficients c_0..c_{n-1} (f = x^n + sum c_i x^i).
    defining: Vec<u64>,
    /// p = 2 fast path: f packed as bits, including the x^n bit.
    poly_bits: u64,
    /// p > 2: packed digits of x^{n+j} mod f for j = 0..n-1.
    red_rows: Vec<El>,
    generator: El,
    /// Distinct prime factors of p^n - 1.
    order_prime_factors: Vec<u64>,
}

impl AmbientField {
    pub fn new(p: u64, n: usize) -> Result<AmbientField> {
        Self::new_with_caps(p, n, &Caps::default())
    }

    pub fn new_with_caps(p: u64, n: usize, caps: &Caps) -> Result<AmbientField> {
        if !is_prime(p) {
            return Err(Error::precondition("p must be prime"));
        }
        if n == 0 || n > caps.max_field_degree {
            return Err(Error::CapExceeded {
                what: "field degree",
                limit: caps.max_field_degree as u128,
                requested: n as u128,
            });
        }
        if p > 2 && n > 16 {
            return Err(Error::precondition("nibble packing supports degree <= 16"));
        }
        if p == 2 && n > 32 {
            return Err(Error::precondition("bit packing supports degree <= 32"));
        }
        let size = (p as u128).checked_pow(n as u32).ok_or(Error::Overflow("p^n"))?;
        if size > 1 << 40 {
            return Err(Error::CapExceeded {
                what: "field size",
                limit: 1 << 40,
                requested: size,
            });
        }

        let defining = find_irreducible(p, n)?;
        let poly_bits = if p == 2 {
            defining
                .iter()
                .enumerate()
                .fold(1u64 << n, |acc, (i, &c)| acc | (c << i))
        } else {
            0
        };

        let mut field = AmbientField {
            p,
            n,
            defining,
            poly_bits,
            red_rows: Vec::new(),
            generator: 0,
            order_prime_factors: Vec::new(),
        };
        if p > 2 {
            field.red_rows = field.build_reduction_rows();
        }
        field.order_prime_factors = prime_factors(size as u64 - 1);
        field.generator = field.find_generator()?;
        Ok(field)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> u64 {
        (self.p).pow(self.n as u32)
    }

    pub fn defining_polynomial(&self) -> &[u64] {
        &self.defining
    }

    pub fn zero(&self) -> El {
        0
    }

    pub fn one(&self) -> El {
        self.from_scalar(1)
    }

    /// Constant polynomial from an integer mod p (digit 0 in both packings).
    pub fn from_scalar(&self, c: u64) -> El {
        c % self.p
    }

    /// -1 as a field element.
    pub fn neg_one(&self) -> El {
        self.from_scalar(self.p - 1)
    }

    /// Integer sign (-1)^k.
    pub fn sign(&self, k: i128) -> El {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.neg_one()
        }
    }

    pub fn digits(&self, x: El) -> Vec<u64> {
        (0..self.n).map(|i| self.digit(x, i)).collect()
    }

    fn digit(&self, x: El, i: usize) -> u64 {
        if self.p == 2 {
            x >> i & 1
        } else {
            x >> (4 * i) & 0xf
        }
    }

    pub fn from_digits(&self, digits: &[u64]) -> El {
        let mut x = 0u64;
        for (i, &d) in digits.iter().enumerate().take(self.n) {
            let d = d % self.p;
            if self.p == 2 {
                x |= d << i;
            } else {
                x |= d << (4 * i);
            }
        }
        x
    }

    pub fn add(&self, a: El, b: El) -> El {
        if self.p == 2 {
            a ^ b
        } else {
            let mut out = 0u64;
            for i in 0..self.n {
                let d = (self.digit(a, i) + self.digit(b, i)) % self.p;
                out |= d << (4 * i);
            }
            out
        }
    }

    pub fn neg(&self, a: El) -> El {
        if self.p == 2 {
            a
        } else {
            let mut out = 0u64;
            for i in 0..self.n {
                let d = (self.p - self.digit(a, i)) % self.p;
                out |= d << (4 * i);
            }
            out
        }
    }

    pub fn sub(&self, a: El, b: El) -> El {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: El, b: El) -> El {
        if self.p == 2 {
            self.mul2(a, b)
        } else {
            self.mul_odd(a, b)
        }
    }

    fn mul2(&self, a: El, b: El) -> El {
        let mut acc = 0u64;
        for i in 0..self.n {
            if a >> i & 1 == 1 {
                acc ^= b << i;
            }
        }
        let n = self.n;
        let mut k = 2 * n;
        while k > n {
            k -= 1;
            if acc >> k & 1 == 1 {
                acc ^= self.poly_bits << (k - n);
            }
        }
        acc
    }

    fn mul_odd(&self, a: El, b: El) -> El {
        let n = self.n;
        let mut buf = [0u64; 31];
        for i in 0..n {
            let ai = self.digit(a, i);
            if ai == 0 {
                continue;
            }
            for j in 0..n {
                buf[i + j] += ai * self.digit(b, j);
            }
        }
        for v in buf.iter_mut() {
            *v %= self.p;
        }
        // fold x^{n+j} terms down using the precomputed reduction rows
        let mut k = 2 * n - 1;
        while k >= n {
            let c = buf[k];
            if c != 0 {
                buf[k] = 0;
                let row = self.red_rows[k - n];
                for i in 0..n {
                    buf[i] = (buf[i] + c * (row >> (4 * i) & 0xf)) % self.p;
                }
            }
            if k == n {
                break;
            }
            k -= 1;
        }
        let mut out = 0u64;
        for (i, &d) in buf.iter().enumerate().take(n) {
            out |= d << (4 * i);
        }
        out
    }

    fn build_reduction_rows(&self) -> Vec<El> {
        // x^n = -sum c_i x^i; then x^{n+j} = x * x^{n+j-1} reduced
        let n = self.n;
        let mut rows = Vec::with_capacity(n);
        let row0: Vec<u64> = self.defining.iter().map(|&c| (self.p - c) % self.p).collect();
        rows.push(self.from_digits(&row0));
        for j in 1..n {
            let prev = self.digits(rows[j - 1]);
            let mut next = vec![0u64; n];
            // multiply by x: shift, then reduce the overflowing top digit
            let top = prev[n - 1];
            for i in (1..n).rev() {
                next[i] = prev[i - 1];
            }
            next[0] = 0;
            if top != 0 {
                for i in 0..n {
                    next[i] = (next[i] + top * row0[i]) % self.p;
                }
            }
            rows.push(self.from_digits(&next));
        }
        rows
    }

    pub fn pow(&self, x: El, mut e: u128) -> El {
        let mut base = x;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero (callers check).
    pub fn inv(&self, x: El) -> El {
        assert!(x != 0, "inverse of zero");
        self.pow(x, self.size() as u128 - 2)
    }

    pub fn div(&self, a: El, b: El) -> El {
        self.mul(a, self.inv(b))
    }

    /// t^e for a signed integer exponent.
    pub fn pow_signed(&self, x: El, e: i128) -> El {
        if e >= 0 {
            self.pow(x, e as u128)
        } else {
            self.pow(self.inv(x), (-e) as u128)
        }
    }

    /// x^{p^d}.
    pub fn frobenius(&self, x: El, d: usize) -> El {
        self.pow(x, (self.p as u128).pow(d as u32))
    }

    /// Subfield membership test: x in F_{p^d} iff x^{p^d} = x.
    pub fn in_subfield(&self, x: El, d: usize) -> bool {
        self.frobenius(x, d) == x
    }

    /// Fixed multiplicative generator of the ambient field.
    pub fn multiplicative_generator(&self) -> El {
        self.generator
    }

    fn find_generator(&self) -> Result<El> {
        let order = self.size() - 1;
        if order == 1 {
            return Ok(self.one());
        }
        // deterministic scan over packed values
        for candidate in 1..self.size() {
            let x = self.canonical_from_index(candidate);
            if x == 0 {
                continue;
            }
            let primitive = self
                .order_prime_factors
                .iter()
                .all(|&r| self.pow(x, (order / r) as u128) != self.one());
            if primitive {
                return Ok(x);
            }
        }
        Err(Error::precondition("no multiplicative generator found"))
    }

    /// k-th element in the deterministic digit encoding.
    fn canonical_from_index(&self, k: u64) -> El {
        let mut digits = vec![0u64; self.n];
        let mut v = k;
        for d in digits.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        self.from_digits(&digits)
    }

    /// Generator of the subfield F_{p^d} (d | n).
    pub fn subfield_generator(&self, d: usize) -> Result<El> {
        if d == 0 || self.n % d != 0 {
            return Err(Error::precondition("subfield degree must divide the ambient degree"));
        }
        let order = self.size() as u128 - 1;
        let sub_order = (self.p as u128).pow(d as u32) - 1;
        Ok(self.pow(self.generator, order / sub_order))
    }

    /// All elements of the subfield F_{p^d}, sorted by packed value.
    pub fn subfield_elements(&self, d: usize) -> Result<Vec<El>> {
        let gamma = self.subfield_generator(d)?;
        let sub_order = (self.p).pow(d as u32) - 1;
        let mut out = Vec::with_capacity(sub_order as usize + 1);
        out.push(self.zero());
        let mut x = self.one();
        for _ in 0..sub_order {
            out.push(x);
            x = self.mul(x, gamma);
        }
        debug_assert_eq!(x, self.one());
        out.sort_unstable();
        out.dedup();
        debug_assert_eq!(out.len() as u64, sub_order + 1);
        Ok(out)
    }

    /// F_p-basis {1, gamma, ..., gamma^{d-1}} of the subfield F_{p^d}.
    pub fn subfield_p_basis(&self, d: usize) -> Result<Vec<El>> {
        let gamma = self.subfield_generator(d)?;
        let mut out = Vec::with_capacity(d);
        let mut x = self.one();
        for _ in 0..d {
            out.push(x);
            x = self.mul(x, gamma);
        }
        Ok(out)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            while v % d == 0 {
                v /= d;
            }
        }
        d += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

// ---- construction-time polynomial arithmetic over F_p (digit vectors) ----

fn poly_mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let n = f.len() - 1; // f monic of degree n, coefficients c_0..c_n with c_n = 1
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // reduce mod f
    for k in (n..prod.len()).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..n {
            prod[k - n + i] = (prod[k - n + i] + c * (p - f[i]) % p) % p;
        }
    }
    prod.truncate(n);
    prod
}

fn poly_pow_p(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    // a^p by square and multiply
    let n = f.len() - 1;
    let mut acc = vec![0u64; n];
    acc[0] = 1;
    let mut base = a.to_vec();
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &base, f, p);
        }
        base = poly_mul_mod(&base, &base, f, p);
        e >>= 1;
    }
    acc
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    let deg = |v: &[u64]| v.iter().rposition(|&c| c != 0);
    loop {
        if poly_is_zero(&b) {
            return a;
        }
        // a mod b
        let db = deg(&b).unwrap();
        let lead_inv = mod_inverse(b[db], p);
        while let Some(da) = deg(&a) {
            if da < db {
                break;
            }
            let factor = a[da] * lead_inv % p;
            for i in 0..=db {
                let idx = da - db + i;
                a[idx] = (a[idx] + (p - factor * b[i] % p)) % p;
            }
        }
        core::mem::swap(&mut a, &mut b);
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Rabin irreducibility test for the monic polynomial with low coefficients
/// `coeffs` (degree n implied).
fn is_irreducible(coeffs: &[u64], p: u64) -> bool {
    let n = coeffs.len();
    let mut f = coeffs.to_vec();
    f.push(1);
    let x: Vec<u64> = {
        let mut v = vec![0u64; n.max(2)];
        if n == 1 {
            // degree-1 polynomials are irreducible
            return true;
        }
        v[1] = 1;
        v.truncate(n);
        v
    };
    // x^{p^n} == x mod f
    let mut t = x.clone();
    for _ in 0..n {
        t = poly_pow_p(&t, &f, p);
    }
    let mut diff = t.clone();
    for i in 0..n {
        diff[i] = (diff[i] + p - x.get(i).copied().unwrap_or(0)) % p;
    }
    if !poly_is_zero(&diff) {
        return false;
    }
    // gcd(x^{p^{n/r}} - x, f) = 1 for each prime r | n
    for r in prime_factors(n as u64) {
        let k = n / r as usize;
        let mut t = x.clone();
        for _ in 0..k {
            t = poly_pow_p(&t, &f, p);
        }
        let mut diff = t;
        for i in 0..n {
            diff[i] = (diff[i] + p - x.get(i).copied().unwrap_or(0)) % p;
        }
        let g = poly_gcd(f.clone(), diff, p);
        let deg = g.iter().rposition(|&c| c != 0);
        if deg != Some(0) {
            return false;
        }
    }
    true
}

/// Deterministic search in ascending lexicographic order of the coefficient
/// tuple (c_{n-1}, ..., c_0).
fn find_irreducible(p: u64, n: usize) -> Result<Vec<u64>> {
    let total = (p as u128).pow(n as u32);
    let mut k: u128 = 0;
    while k < total {
        let mut coeffs = vec![0u64; n];
        let mut v = k;
        for i in 0..n {
            coeffs[i] = (v % p as u128) as u64;
            v /= p as u128;
        }
        if is_irreducible(&coeffs, p) {
            return Ok(coeffs);
        }
        k += 1;
    }
    Err(Error::precondition("no irreducible polynomial found"))
}
