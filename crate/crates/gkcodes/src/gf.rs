//! Exact arithmetic in finite fields GF(p^m).
//!
//! A field is created from its characteristic `p` and extension degree `m`.
//! The modulus is chosen deterministically: the lexicographically smallest
//! monic irreducible polynomial of degree `m` over GF(p), comparing the
//! coefficient tuples `(c0, ..., c_{m-1})` of the non-leading coefficients.
//! The same `(p, m)` therefore always yields the same field, so encodings
//! are portable across runs.
//!
//! Elements are represented by their canonical integer encoding: the integer
//! whose base-`p` digits, least significant first, are the coefficients of
//! the polynomial representative. Zero is `0` and one is `1`.
//!
//! Multiplication uses log/antilog tables for orders up to 2^16 and plain
//! polynomial arithmetic above that; the two paths agree exactly. Tables are
//! built once behind a `OnceLock`, so a field and its elements can be shared
//! freely across threads.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

/// Largest supported extension degree.
pub const MAX_EXTENSION_DEGREE: u32 = 12;
/// Largest supported field order (element enumeration and the fiber tables
/// used by the curve module hold O(order) entries in memory).
pub const MAX_ORDER: u64 = 1 << 26;
/// Log/antilog tables are built for orders up to this bound.
const LOG_TABLE_LIMIT: u64 = 1 << 16;
/// A full addition table is built for odd characteristic up to this bound.
const ADD_TABLE_LIMIT: u64 = 1 << 10;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} outside 1..={MAX_EXTENSION_DEGREE}")]
    DegreeOutOfRange(u32),
    #[error("field order {0} exceeds the supported maximum {MAX_ORDER}")]
    OrderTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} does not divide the extension degree {1}")]
    NotADivisor(u32, u32),
    #[error("encoding {0} is not an element of a field of order {1}")]
    InvalidEncoding(u64, u64),
}

/// An element of a [`GaloisField`], stored as its canonical integer encoding
/// plus a tag identifying the owning field. Mixing elements of different
/// fields in arithmetic is a programming error and panics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    key: u32,
    val: u32,
}

impl FieldElement {
    /// The canonical integer encoding: base-p digits are the coefficients,
    /// least significant digit first.
    pub fn encoding(self) -> u32 {
        self.val
    }

    pub fn is_zero(self) -> bool {
        self.val == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.val)
    }
}

struct LogTables {
    /// exp[i] = g^i for a fixed generator g, i in 0..order-1.
    exp: Vec<u32>,
    /// log[v] = i with exp[i] = v; log[0] is a sentinel.
    log: Vec<u32>,
}

/// The field GF(p^m) with its deterministically chosen modulus.
pub struct GaloisField {
    p: u64,
    m: u32,
    order: u64,
    key: u32,
    /// m+1 coefficients of the monic irreducible modulus, low degree first.
    modulus: Vec<u64>,
    logs: OnceLock<Option<LogTables>>,
    adds: OnceLock<Option<Vec<u32>>>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GaloisField")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("order", &self.order)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl GaloisField {
    /// Create GF(p^m). The modulus is the lexicographically smallest monic
    /// irreducible polynomial of degree m over GF(p) under the coefficient
    /// order `(c0, ..., c_{m-1})`.
    pub fn new(p: u64, m: u32) -> Result<GaloisField, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if !(1..=MAX_EXTENSION_DEGREE).contains(&m) {
            return Err(GfError::DegreeOutOfRange(m));
        }
        let mut order: u64 = 1;
        for _ in 0..m {
            order = order
                .checked_mul(p)
                .ok_or(GfError::OrderTooLarge(u64::MAX))?;
            if order > MAX_ORDER {
                return Err(GfError::OrderTooLarge(order));
            }
        }
        let modulus = smallest_irreducible(p, m);
        let key = ((p as u32) << 5) | m;
        Ok(GaloisField {
            p,
            m,
            order,
            key,
            modulus,
            logs: OnceLock::new(),
            adds: OnceLock::new(),
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Coefficients of the modulus, low degree first (length m+1, monic).
    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            key: self.key,
            val: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            key: self.key,
            val: 1,
        }
    }

    pub fn from_encoding(&self, enc: u64) -> Result<FieldElement, GfError> {
        if enc >= self.order {
            return Err(GfError::InvalidEncoding(enc, self.order));
        }
        Ok(FieldElement {
            key: self.key,
            val: enc as u32,
        })
    }

    /// Build an element from coefficients (low degree first); entries are
    /// reduced mod p, and only the first m coefficients are read. A shorter
    /// list is padded with zeros.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        let mut val: u64 = 0;
        for (i, &c) in coeffs.iter().take(self.m as usize).enumerate() {
            val += (c % self.p) * self.p.pow(i as u32);
        }
        FieldElement {
            key: self.key,
            val: val as u32,
        }
    }

    /// Embed an integer into the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let r = v.rem_euclid(self.p as i64) as u32;
        FieldElement {
            key: self.key,
            val: r,
        }
    }

    /// Coefficient vector of an element, low degree first, length m.
    pub fn coeffs(&self, e: FieldElement) -> Vec<u64> {
        self.check(e);
        let mut v = e.val as u64;
        let mut out = Vec::with_capacity(self.m as usize);
        for _ in 0..self.m {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    /// All elements in ascending encoding order; the first is zero.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let key = self.key;
        (0..self.order).map(move |v| FieldElement { key, val: v as u32 })
    }

    fn check(&self, e: FieldElement) {
        assert_eq!(
            e.key,
            self.key,
            "field mismatch: element of GF({}^{}) used in GF({}^{})",
            e.key >> 5,
            e.key & 31,
            self.p,
            self.m
        );
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        FieldElement {
            key: self.key,
            val: self.raw_add(a.val, b.val),
        }
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        FieldElement {
            key: self.key,
            val: self.raw_sub(a.val, b.val),
        }
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        FieldElement {
            key: self.key,
            val: self.raw_neg(a.val),
        }
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        FieldElement {
            key: self.key,
            val: self.raw_mul(a.val, b.val),
        }
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        self.check(a);
        if a.val == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(FieldElement {
            key: self.key,
            val: self.raw_inv(a.val),
        })
    }

    /// Exponentiation by square-and-multiply; negative exponents invert the
    /// base first, so `pow(0, e)` with `e < 0` is a division by zero.
    /// `pow(0, 0)` is 1.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement, GfError> {
        self.check(a);
        if e < 0 {
            let inv = self.inv(a)?;
            return Ok(FieldElement {
                key: self.key,
                val: self.raw_pow(inv.val, e.unsigned_abs()),
            });
        }
        Ok(FieldElement {
            key: self.key,
            val: self.raw_pow(a.val, e as u64),
        })
    }

    /// The Frobenius map e -> e^p.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        FieldElement {
            key: self.key,
            val: self.raw_pow(a.val, self.p),
        }
    }

    /// True iff the element lies in the subfield GF(p^d), i.e. is fixed by
    /// the d-fold Frobenius: e^{p^d} = e.
    pub fn in_subfield(&self, e: FieldElement, d: u32) -> Result<bool, GfError> {
        self.check(e);
        if d == 0 || !self.m.is_multiple_of(d) {
            return Err(GfError::NotADivisor(d, self.m));
        }
        let mut v = e.val;
        for _ in 0..d {
            v = self.raw_pow(v, self.p);
        }
        Ok(v == e.val)
    }

    // ---- raw arithmetic on encodings -------------------------------------
    //
    // Unchecked fast path used by the matrix code (whose entries are raw
    // encodings); arguments must be encodings of this field's elements.

    pub fn raw_add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if let Some(table) = self.add_table() {
            return table[a as usize * self.order as usize + b as usize];
        }
        self.digitwise_add(a, b)
    }

    pub fn raw_neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut v = a as u64;
        let mut out: u64 = 0;
        let mut scale: u64 = 1;
        for _ in 0..self.m {
            let d = v % self.p;
            if d != 0 {
                out += (self.p - d) * scale;
            }
            v /= self.p;
            scale *= self.p;
        }
        out as u32
    }

    pub fn raw_sub(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        self.raw_add(a, self.raw_neg(b))
    }

    pub fn raw_mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = self.log_tables() {
            let q1 = self.order - 1;
            let s = (t.log[a as usize] as u64 + t.log[b as usize] as u64) % q1;
            return t.exp[s as usize];
        }
        self.poly_mul(a, b)
    }

    pub fn raw_inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        if let Some(t) = self.log_tables() {
            let q1 = self.order - 1;
            let s = (q1 - t.log[a as usize] as u64) % q1;
            return t.exp[s as usize];
        }
        // a^(q-2) in the multiplicative group of order q-1
        self.raw_pow(a, self.order - 2)
    }

    pub fn raw_pow(&self, a: u32, mut e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        if let Some(t) = self.log_tables() {
            let q1 = self.order - 1;
            let s = (t.log[a as usize] as u64 % q1) * (e % q1) % q1;
            return t.exp[s as usize];
        }
        let mut base = a;
        let mut acc: u32 = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul_nolookup(acc, base);
            }
            base = self.raw_mul_nolookup(base, base);
            e >>= 1;
        }
        acc
    }

    fn digitwise_add(&self, a: u32, b: u32) -> u32 {
        let (mut va, mut vb) = (a as u64, b as u64);
        let mut out: u64 = 0;
        let mut scale: u64 = 1;
        for _ in 0..self.m {
            let s = (va % self.p + vb % self.p) % self.p;
            out += s * scale;
            va /= self.p;
            vb /= self.p;
            scale *= self.p;
        }
        out as u32
    }

    /// Plain polynomial multiplication modulo the field modulus; the
    /// reference path that the lookup tables must agree with.
    pub(crate) fn raw_mul_nolookup(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.poly_mul(a, b)
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let m = self.m as usize;
        let mut da = [0u64; MAX_EXTENSION_DEGREE as usize];
        let mut db = [0u64; MAX_EXTENSION_DEGREE as usize];
        to_digits(a as u64, self.p, &mut da[..m]);
        to_digits(b as u64, self.p, &mut db[..m]);
        let mut prod = [0u64; 2 * MAX_EXTENSION_DEGREE as usize];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                if db[j] != 0 {
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
                }
            }
        }
        // reduce by the monic modulus
        for d in (m..2 * m - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (k, &mc) in self.modulus.iter().enumerate().take(m) {
                if mc != 0 {
                    let idx = d - m + k;
                    prod[idx] = (prod[idx] + (self.p - mc) * c) % self.p;
                }
            }
        }
        from_digits(&prod[..m], self.p) as u32
    }

    fn log_tables(&self) -> Option<&LogTables> {
        self.logs
            .get_or_init(|| {
                if self.order > LOG_TABLE_LIMIT {
                    return None;
                }
                Some(self.build_log_tables())
            })
            .as_ref()
    }

    fn add_table(&self) -> Option<&Vec<u32>> {
        self.adds
            .get_or_init(|| {
                if self.order > ADD_TABLE_LIMIT {
                    return None;
                }
                let n = self.order as usize;
                let mut t = vec![0u32; n * n];
                for a in 0..n {
                    for b in 0..=a {
                        let s = self.digitwise_add(a as u32, b as u32);
                        t[a * n + b] = s;
                        t[b * n + a] = s;
                    }
                }
                Some(t)
            })
            .as_ref()
    }

    fn build_log_tables(&self) -> LogTables {
        let q = self.order as usize;
        let q1 = q - 1;
        'cand: for g in 2..q as u32 {
            let mut exp = vec![0u32; q1];
            let mut cur: u32 = 1;
            for (i, slot) in exp.iter_mut().enumerate() {
                *slot = cur;
                cur = self.raw_mul_nolookup(cur, g);
                if cur == 1 && i + 1 < q1 {
                    continue 'cand; // order too small, not a generator
                }
            }
            if cur != 1 {
                continue;
            }
            let mut log = vec![u32::MAX; q];
            for (i, &v) in exp.iter().enumerate() {
                log[v as usize] = i as u32;
            }
            return LogTables { exp, log };
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }
}

fn to_digits(mut v: u64, p: u64, out: &mut [u64]) {
    for d in out.iter_mut() {
        *d = v % p;
        v /= p;
    }
}

fn from_digits(digits: &[u64], p: u64) -> u64 {
    let mut v = 0u64;
    for &d in digits.iter().rev() {
        v = v * p + d;
    }
    v
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree m
/// over GF(p), comparing coefficient tuples (c0, ..., c_{m-1}). Found by
/// exhaustive search with trial division by all lower-degree monic
/// polynomials.
fn smallest_irreducible(p: u64, m: u32) -> Vec<u64> {
    let m = m as usize;
    let mut coeffs = vec![0u64; m + 1];
    coeffs[m] = 1;
    let total = p.pow(m as u32);
    for t in 0..total {
        // lexicographic order on (c0, ..., c_{m-1}): c0 is the most
        // significant digit of the counter
        let mut v = t;
        for i in (0..m).rev() {
            coeffs[i] = v % p;
            v /= p;
        }
        if is_irreducible(&coeffs, p) {
            return coeffs.clone();
        }
    }
    unreachable!("irreducible polynomials of degree {m} exist over GF({p})");
}

fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let m = poly.len() - 1;
    if m == 1 {
        return true;
    }
    if poly[0] == 0 {
        return false; // divisible by x
    }
    let mut divisor = Vec::new();
    for d in 1..=m / 2 {
        divisor.resize(d + 1, 0);
        divisor[d] = 1;
        let total = p.pow(d as u32);
        for t in 0..total {
            let mut v = t;
            for slot in divisor.iter_mut().take(d) {
                *slot = v % p;
                v /= p;
            }
            if poly_rem_is_zero(poly, &divisor, p) {
                return false;
            }
        }
    }
    true
}

/// True iff `divisor` (monic) divides `poly` over GF(p).
fn poly_rem_is_zero(poly: &[u64], divisor: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = poly.to_vec();
    let d = divisor.len() - 1;
    for top in (d..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        rem[top] = 0;
        for (k, &dc) in divisor.iter().enumerate().take(d) {
            if dc != 0 {
                rem[top - d + k] = (rem[top - d + k] + (p - dc) * c) % p;
            }
        }
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn creates_expected_orders() {
        assert_eq!(GaloisField::new(2, 6).unwrap().order(), 64);
        assert_eq!(GaloisField::new(3, 6).unwrap().order(), 729);
        let f2 = GaloisField::new(2, 1).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.modulus_coeffs().len(), 2);
        assert_eq!(f2.modulus_coeffs()[1], 1);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(GaloisField::new(4, 2).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(GaloisField::new(1, 2).unwrap_err(), GfError::NotPrime(1));
        assert_eq!(
            GaloisField::new(2, 0).unwrap_err(),
            GfError::DegreeOutOfRange(0)
        );
        assert_eq!(
            GaloisField::new(2, 13).unwrap_err(),
            GfError::DegreeOutOfRange(13)
        );
    }

    #[test]
    fn gf64_modulus_is_lex_smallest() {
        // over GF(2) the first irreducible under the (c0..c5) order is
        // 1 + x^5 + x^6
        let f = GaloisField::new(2, 6).unwrap();
        assert_eq!(f.modulus_coeffs(), &[1, 0, 0, 0, 0, 1, 1]);
    }

    #[test]
    fn gf4_modulus() {
        let f = GaloisField::new(2, 2).unwrap();
        assert_eq!(f.modulus_coeffs(), &[1, 1, 1]); // x^2 + x + 1
    }

    #[test]
    fn mod3_arithmetic() {
        let f = GaloisField::new(3, 1).unwrap();
        let two = f.from_int(2);
        assert_eq!(f.add(two, two), f.one()); // 2 + 2 = 1 mod 3
    }

    #[test]
    fn every_nonzero_element_inverts() {
        let f = GaloisField::new(2, 6).unwrap();
        for e in f.elements().skip(1) {
            let inv = f.inv(e).unwrap();
            assert_eq!(f.mul(e, inv), f.one());
            assert_eq!(f.pow(e, 63).unwrap(), f.one());
        }
    }

    #[test]
    fn inv_of_zero_fails() {
        let f = GaloisField::new(3, 6).unwrap();
        assert_eq!(f.inv(f.zero()).unwrap_err(), GfError::DivisionByZero);
        assert_eq!(f.pow(f.zero(), -1).unwrap_err(), GfError::DivisionByZero);
        assert_eq!(f.pow(f.zero(), 0).unwrap(), f.one());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let f4 = GaloisField::new(2, 2).unwrap();
        let f8 = GaloisField::new(2, 3).unwrap();
        let a = f4.one();
        let b = f8.one();
        let _ = f4.add(a, b);
    }

    #[test]
    fn enumeration_is_complete_and_starts_at_zero() {
        let f = GaloisField::new(2, 1).unwrap();
        let all: Vec<u32> = f.elements().map(|e| e.encoding()).collect();
        assert_eq!(all, vec![0, 1]);
        assert_eq!(GaloisField::new(2, 6).unwrap().elements().count(), 64);
        assert_eq!(GaloisField::new(3, 6).unwrap().elements().count(), 729);
        assert!(GaloisField::new(3, 6)
            .unwrap()
            .elements()
            .next()
            .unwrap()
            .is_zero());
    }

    #[test]
    fn subfield_counts() {
        let f64 = GaloisField::new(2, 6).unwrap();
        let c4 = f64
            .elements()
            .filter(|&e| f64.in_subfield(e, 2).unwrap())
            .count();
        assert_eq!(c4, 4);
        let c8 = f64
            .elements()
            .filter(|&e| f64.in_subfield(e, 3).unwrap())
            .count();
        assert_eq!(c8, 8);

        let f729 = GaloisField::new(3, 6).unwrap();
        let c9 = f729
            .elements()
            .filter(|&e| f729.in_subfield(e, 2).unwrap())
            .count();
        assert_eq!(c9, 9);
        assert!(f729.in_subfield(f729.zero(), 1).unwrap());
        assert_eq!(
            f729.in_subfield(f729.one(), 4).unwrap_err(),
            GfError::NotADivisor(4, 6)
        );
    }

    #[test]
    fn subfield_elements_form_a_field() {
        // exhaustive closure check for subfields of order <= 81
        for (p, m, d) in [(2u64, 6u32, 2u32), (2, 6, 3), (3, 6, 2), (3, 4, 2)] {
            let f = GaloisField::new(p, m).unwrap();
            let sub: Vec<FieldElement> = f
                .elements()
                .filter(|&e| f.in_subfield(e, d).unwrap())
                .collect();
            assert_eq!(sub.len() as u64, p.pow(d));
            for &a in &sub {
                for &b in &sub {
                    assert!(f.in_subfield(f.add(a, b), d).unwrap());
                    assert!(f.in_subfield(f.mul(a, b), d).unwrap());
                }
            }
        }
    }

    #[test]
    fn tables_agree_with_polynomial_path() {
        let f = GaloisField::new(3, 6).unwrap();
        for a in (0..729u32).step_by(7) {
            for b in (0..729u32).step_by(11) {
                assert_eq!(f.raw_mul(a, b), f.raw_mul_nolookup(a, b));
            }
        }
        let f = GaloisField::new(2, 6).unwrap();
        for a in 0..64u32 {
            for b in 0..64u32 {
                assert_eq!(f.raw_mul(a, b), f.raw_mul_nolookup(a, b));
            }
        }
    }

    #[test]
    fn encoding_round_trip() {
        let f = GaloisField::new(3, 6).unwrap();
        let e = f.from_encoding(500).unwrap();
        assert_eq!(f.from_coeffs(&f.coeffs(e)), e);
        assert!(f.from_encoding(729).is_err());
    }

    fn gf64_and_gf729() -> (GaloisField, GaloisField) {
        (
            GaloisField::new(2, 6).unwrap(),
            GaloisField::new(3, 6).unwrap(),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn field_axioms(a in 0u64..729, b in 0u64..729, c in 0u64..729) {
            let (f64, f729) = gf64_and_gf729();
            for f in [&f64, &f729] {
                let q = f.order();
                let (x, y, z) = (
                    f.from_encoding(a % q).unwrap(),
                    f.from_encoding(b % q).unwrap(),
                    f.from_encoding(c % q).unwrap(),
                );
                prop_assert_eq!(f.add(x, y), f.add(y, x));
                prop_assert_eq!(f.mul(x, y), f.mul(y, x));
                prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
                prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
                prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                prop_assert_eq!(f.add(x, f.neg(x)), f.zero());
                prop_assert_eq!(f.sub(x, y), f.add(x, f.neg(y)));
            }
        }

        #[test]
        fn frobenius_is_additive(a in 0u64..729, b in 0u64..729) {
            let (f64, f729) = gf64_and_gf729();
            for f in [&f64, &f729] {
                let q = f.order();
                let (x, y) = (f.from_encoding(a % q).unwrap(), f.from_encoding(b % q).unwrap());
                prop_assert_eq!(
                    f.frobenius(f.add(x, y)),
                    f.add(f.frobenius(x), f.frobenius(y))
                );
            }
        }
    }
}
