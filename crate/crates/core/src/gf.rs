//! Exact arithmetic in small finite fields `F_q`, `q = p^m`.
//!
//! Elements are encoded as integers in `[0, q)`: the element with base-`p`
//! digits `d_0, d_1, ..., d_{m-1}` (low degree first) is the coset
//! representative `d_0 + d_1*x + ... + d_{m-1}*x^(m-1)` modulo the field's
//! defining polynomial, so the encodings of a field are exactly `0..q`.
//! Prime fields are plain integers mod `p`.
//!
//! For `q <= 256` full add/mul/neg/inv lookup tables are built eagerly at
//! construction; enumeration workloads are then pure table lookups. Larger
//! fields fall back to on-the-fly polynomial arithmetic.
//!
//! A [`FieldCtx`] is immutable after construction and safe to share across
//! threads. Every context gets a unique id; a [`Felt`] carries the id of the
//! context that minted it, and mixing elements from different contexts is
//! reported as [`Error::MixedFields`].

use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::Arc;

use crate::{Error, Result};

/// Default defining polynomials (coefficients low degree first, monic) for
/// the extension fields constructed without an explicit modulus. These are
/// the Conway polynomials for the listed orders; fixing them keeps element
/// encodings reproducible across runs and implementations.
const DEFAULT_MODULI: &[(u32, &[u32])] = &[
    (4, &[1, 1, 1]),
    (8, &[1, 1, 0, 1]),
    (9, &[2, 2, 1]),
    (16, &[1, 1, 0, 0, 1]),
    (25, &[2, 4, 1]),
    (27, &[1, 2, 0, 1]),
    (32, &[1, 0, 1, 0, 0, 1]),
    (49, &[3, 6, 1]),
    (64, &[1, 1, 0, 1, 1, 0, 1]),
    (81, &[2, 0, 0, 2, 1]),
    (121, &[2, 7, 1]),
    (125, &[3, 3, 0, 1]),
    (128, &[1, 1, 0, 0, 0, 0, 0, 1]),
];

/// Largest field order for which full lookup tables are precomputed.
const TABLE_LIMIT: u32 = 256;

static NEXT_CTX_ID: AtomicU32 = AtomicU32::new(1);

struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// A finite field `F_q` with `q = p^m`.
pub struct FieldCtx {
    id: u32,
    p: u32,
    m: u32,
    q: u32,
    /// Monic degree-`m` defining polynomial, low degree first; empty for
    /// prime fields, which need none.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// An element of a [`FieldCtx`], stored as its integer encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Felt {
    code: u32,
    ctx_id: u32,
}

impl Felt {
    /// Integer encoding in `[0, q)`.
    pub fn code(self) -> u32 {
        self.code
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }

    /// Id of the context that minted this element.
    pub fn ctx_id(self) -> u32 {
        self.ctx_id
    }
}

impl FieldCtx {
    /// Construct `F_q` with the default defining polynomial.
    ///
    /// For prime `q` this is the integers mod `q`. For prime powers the
    /// modulus comes from the built-in table above, falling back to the
    /// irreducible monic polynomial of smallest encoding when the order is
    /// not listed (still deterministic).
    pub fn new(q: u64) -> Result<Arc<FieldCtx>> {
        Self::build(q, None)
    }

    /// Construct `F_q` with an explicit defining polynomial (coefficients
    /// low degree first; must be monic of degree `m` and irreducible).
    pub fn with_modulus(q: u64, modulus: &[u32]) -> Result<Arc<FieldCtx>> {
        Self::build(q, Some(modulus))
    }

    fn build(q: u64, supplied: Option<&[u32]>) -> Result<Arc<FieldCtx>> {
        if q < 2 {
            return Err(Error::NotAPrimePower(q));
        }
        let (p, m) = factor_prime_power(q).ok_or(Error::NotAPrimePower(q))?;
        if q > u32::MAX as u64 {
            return Err(Error::Infeasible(format!("field order {q} too large")));
        }
        let q = q as u32;

        let modulus: Vec<u32> = if m == 1 {
            // Prime field; any supplied degree-1 modulus is accepted and
            // irrelevant to the arithmetic.
            if let Some(coeffs) = supplied {
                if coeffs.len() != 2 || coeffs[1] != 1 || coeffs[0] >= p {
                    return Err(Error::ReduciblePolynomial);
                }
            }
            Vec::new()
        } else {
            let coeffs: Vec<u32> = match supplied {
                Some(coeffs) => coeffs.to_vec(),
                None => match DEFAULT_MODULI.iter().find(|(order, _)| *order == q) {
                    Some((_, coeffs)) => coeffs.to_vec(),
                    None => smallest_irreducible(p, m),
                },
            };
            if coeffs.len() != m as usize + 1
                || coeffs[m as usize] != 1
                || coeffs.iter().any(|&c| c >= p)
            {
                return Err(Error::ReduciblePolynomial);
            }
            if !poly_is_irreducible(&coeffs, p) {
                return Err(Error::ReduciblePolynomial);
            }
            coeffs
        };

        let mut ctx = FieldCtx {
            id: NEXT_CTX_ID.fetch_add(1, Ordering::Relaxed),
            p,
            m,
            q,
            modulus,
            tables: None,
        };
        if q <= TABLE_LIMIT {
            ctx.tables = Some(ctx.build_tables());
        }
        Ok(Arc::new(ctx))
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for a in 0..self.q {
            neg[a as usize] = self.neg_raw(a) as u16;
            for b in 0..self.q {
                add[(a * self.q + b) as usize] = self.add_raw(a, b) as u16;
                mul[(a * self.q + b) as usize] = self.mul_raw(a, b) as u16;
            }
        }
        for a in 1..self.q {
            inv[a as usize] = self.inv_raw(a) as u16;
        }
        Tables { add, mul, neg, inv }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn id(&self) -> u32 {
        self.id
    }

    /// Defining polynomial, low degree first (empty for prime fields).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Two contexts describe the same field presentation (same `p`, `m`,
    /// and modulus), regardless of construction order.
    pub fn same_field(&self, other: &FieldCtx) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }

    /// The element with the given integer encoding.
    ///
    /// Panics if `code >= q`; encodings are exactly `0..q`.
    pub fn felt(&self, code: u32) -> Felt {
        assert!(code < self.q, "element encoding {code} out of range for F_{}", self.q);
        Felt { code, ctx_id: self.id }
    }

    pub fn zero(&self) -> Felt {
        self.felt(0)
    }

    pub fn one(&self) -> Felt {
        self.felt(1)
    }

    /// All `q` elements in increasing encoding order, starting at 0.
    pub fn elements(&self) -> impl Iterator<Item = Felt> + '_ {
        (0..self.q).map(move |code| self.felt(code))
    }

    fn check(&self, a: Felt) -> Result<()> {
        if a.ctx_id != self.id {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn add(&self, a: Felt, b: Felt) -> Result<Felt> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.felt(self.addc(a.code, b.code)))
    }

    pub fn sub(&self, a: Felt, b: Felt) -> Result<Felt> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.felt(self.subc(a.code, b.code)))
    }

    pub fn mul(&self, a: Felt, b: Felt) -> Result<Felt> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.felt(self.mulc(a.code, b.code)))
    }

    pub fn neg(&self, a: Felt) -> Result<Felt> {
        self.check(a)?;
        Ok(self.felt(self.negc(a.code)))
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        self.check(a)?;
        if a.code == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.felt(self.invc(a.code)))
    }

    pub fn pow(&self, a: Felt, e: u64) -> Result<Felt> {
        self.check(a)?;
        let mut acc = 1u32;
        let mut base = a.code;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulc(acc, base);
            }
            base = self.mulc(base, base);
            e >>= 1;
        }
        Ok(self.felt(acc))
    }

    // Raw-code operations; the fast path for enumeration loops.

    #[inline]
    pub(crate) fn addc(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.add[(a * self.q + b) as usize] as u32,
            None => self.add_raw(a, b),
        }
    }

    #[inline]
    pub(crate) fn subc(&self, a: u32, b: u32) -> u32 {
        self.addc(a, self.negc(b))
    }

    #[inline]
    pub(crate) fn mulc(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.mul[(a * self.q + b) as usize] as u32,
            None => self.mul_raw(a, b),
        }
    }

    #[inline]
    pub(crate) fn negc(&self, a: u32) -> u32 {
        match &self.tables {
            Some(t) => t.neg[a as usize] as u32,
            None => self.neg_raw(a),
        }
    }

    /// Multiplicative inverse of a nonzero code. Panics on zero; callers
    /// check first.
    #[inline]
    pub(crate) fn invc(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        match &self.tables {
            Some(t) => t.inv[a as usize] as u32,
            None => self.inv_raw(a),
        }
    }

    // Table-free arithmetic on integer encodings via base-p digits.

    fn digits(&self, code: u32) -> Vec<u64> {
        let mut out = vec![0u64; self.m as usize];
        let mut v = code;
        for d in out.iter_mut() {
            *d = (v % self.p) as u64;
            v /= self.p;
        }
        out
    }

    fn recompose(&self, digits: &[u64]) -> u32 {
        let mut v = 0u64;
        for &d in digits.iter().rev() {
            v = v * self.p as u64 + d;
        }
        v as u32
    }

    fn add_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
        self.recompose(&sum)
    }

    fn neg_raw(&self, a: u32) -> u32 {
        let p = self.p as u64;
        let da = self.digits(a);
        let neg: Vec<u64> = da.iter().map(|&x| (p - x) % p).collect();
        self.recompose(&neg)
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let m = self.m as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut conv = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                conv[i + j] = (conv[i + j] + x * y) % p;
            }
        }
        // Reduce by the monic modulus, top coefficient down.
        for d in (m..2 * m - 1).rev() {
            let c = conv[d];
            if c == 0 {
                continue;
            }
            for i in 0..m {
                let sub = c * self.modulus[i] as u64 % p;
                conv[d - m + i] = (conv[d - m + i] + p - sub) % p;
            }
            conv[d] = 0;
        }
        self.recompose(&conv[..m])
    }

    fn inv_raw(&self, a: u32) -> u32 {
        // Fermat: a^(q-2) for a != 0.
        let mut acc = 1u32;
        let mut base = a;
        let mut e = self.q as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }
}

impl std::fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldCtx(q={}, p={}, m={})", self.q, self.p, self.m)
    }
}

/// Factor `q` as `p^m` with `p` prime, `m >= 1`.
fn factor_prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_prime_factor(q);
    let mut m = 0u32;
    let mut t = q;
    while t.is_multiple_of(p) {
        t /= p;
        m += 1;
    }
    if t != 1 {
        return None;
    }
    Some((p as u32, m))
}

fn smallest_prime_factor(q: u64) -> u64 {
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return d;
        }
        d += 1;
    }
    q
}

/// Irreducibility over `F_p` by trial division against every monic
/// polynomial of degree `1..=deg/2`. `m` is tiny here, so simplicity wins.
fn poly_is_irreducible(coeffs: &[u32], p: u32) -> bool {
    let deg = coeffs.len() - 1;
    for d in 1..=deg / 2 {
        // Monic divisors of degree d: iterate the p^d lower coefficients.
        let count = (p as u64).pow(d as u32);
        for enc in 0..count {
            let mut div = vec![0u64; d + 1];
            let mut v = enc;
            for c in div.iter_mut().take(d) {
                *c = v % p as u64;
                v /= p as u64;
            }
            div[d] = 1;
            if poly_rem_is_zero(coeffs, &div, p) {
                return false;
            }
        }
    }
    true
}

/// Whether the monic `divisor` divides `poly` exactly over `F_p`.
fn poly_rem_is_zero(poly: &[u32], divisor: &[u64], p: u32) -> bool {
    let p = p as u64;
    let d = divisor.len() - 1;
    let mut rem: Vec<u64> = poly.iter().map(|&c| c as u64).collect();
    for top in (d..rem.len()).rev() {
        let c = rem[top];
        if c == 0 {
            continue;
        }
        for i in 0..=d {
            let sub = c * divisor[i] % p;
            rem[top - d + i] = (rem[top - d + i] + p - sub) % p;
        }
    }
    rem.iter().all(|&c| c == 0)
}

/// The monic irreducible polynomial of degree `m` over `F_p` whose
/// coefficient encoding is smallest. Deterministic fallback for field
/// orders without a table entry.
fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for enc in 0..count {
        let mut coeffs = vec![0u32; m as usize + 1];
        let mut v = enc;
        for c in coeffs.iter_mut().take(m as usize) {
            *c = (v % p as u64) as u32;
            v /= p as u64;
        }
        coeffs[m as usize] = 1;
        if poly_is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of degree m exists over every F_p")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f2 = FieldCtx::new(2).unwrap();
        assert_eq!(f2.q(), 2);
        let one = f2.one();
        assert_eq!(f2.add(one, one).unwrap(), f2.zero());
        let elems: Vec<u32> = f2.elements().map(Felt::code).collect();
        assert_eq!(elems, vec![0, 1]);
    }

    #[test]
    fn f3_inverse() {
        let f3 = FieldCtx::new(3).unwrap();
        let two = f3.felt(2);
        assert_eq!(f3.inv(two).unwrap(), two); // 2*2 = 4 = 1 mod 3
        let elems: Vec<u32> = f3.elements().map(Felt::code).collect();
        assert_eq!(elems, vec![0, 1, 2]);
    }

    #[test]
    fn f4_polynomial_arithmetic() {
        // x^2 + x + 1: enc 2 = x, enc 3 = x + 1.
        let f4 = FieldCtx::with_modulus(4, &[1, 1, 1]).unwrap();
        let x = f4.felt(2);
        let x1 = f4.felt(3);
        assert_eq!(f4.mul(x, x1).unwrap(), f4.one()); // x(x+1) = x^2+x = 1
        assert_eq!(f4.mul(x, x).unwrap(), x1); // x^2 = x + 1
        assert_eq!(f4.mul(x1, x1).unwrap(), x); // (x+1)^2 = x
        let elems: Vec<u32> = f4.elements().map(Felt::code).collect();
        assert_eq!(elems, vec![0, 1, 2, 3]);
    }

    #[test]
    fn f8_and_f9_defaults() {
        let f8 = FieldCtx::new(8).unwrap();
        // x^3 + x + 1: x * x^2 = x^3 = x + 1 -> enc 3.
        assert_eq!(f8.mul(f8.felt(2), f8.felt(4)).unwrap(), f8.felt(3));
        let f9 = FieldCtx::new(9).unwrap();
        // x^2 + 2x + 2: x^2 = x + 1 -> enc 4.
        assert_eq!(f9.mul(f9.felt(3), f9.felt(3)).unwrap(), f9.felt(4));
    }

    #[test]
    fn rejects_non_prime_power() {
        assert_eq!(FieldCtx::new(6).unwrap_err(), Error::NotAPrimePower(6));
        assert_eq!(FieldCtx::new(12).unwrap_err(), Error::NotAPrimePower(12));
        assert_eq!(FieldCtx::new(1).unwrap_err(), Error::NotAPrimePower(1));
    }

    #[test]
    fn rejects_bad_modulus() {
        // x^2 + 1 = (x+1)^2 over F_2.
        assert_eq!(
            FieldCtx::with_modulus(4, &[1, 0, 1]).unwrap_err(),
            Error::ReduciblePolynomial
        );
        // Not monic of degree 2.
        assert_eq!(
            FieldCtx::with_modulus(4, &[1, 1]).unwrap_err(),
            Error::ReduciblePolynomial
        );
    }

    #[test]
    fn division_by_zero_and_mixed_fields() {
        let f5 = FieldCtx::new(5).unwrap();
        assert_eq!(f5.inv(f5.zero()).unwrap_err(), Error::DivisionByZero);
        let other = FieldCtx::new(5).unwrap();
        assert_eq!(f5.add(f5.one(), other.one()).unwrap_err(), Error::MixedFields);
    }

    #[test]
    fn default_table_orders_all_construct() {
        for &(q, _) in DEFAULT_MODULI {
            let ctx = FieldCtx::new(q as u64).unwrap();
            assert_eq!(ctx.q(), q);
        }
    }

    #[test]
    fn orders_without_default_modulus_use_deterministic_search() {
        // 169 = 13^2 has no built-in modulus; the fallback must be stable.
        let a = FieldCtx::new(169).unwrap();
        let b = FieldCtx::new(169).unwrap();
        assert_eq!(a.modulus(), b.modulus());
        assert!(a.same_field(&b));
        // Spot-check an inverse in the untabled field.
        let x = a.felt(47);
        let xi = a.inv(x).unwrap();
        assert_eq!(a.mul(x, xi).unwrap(), a.one());
    }
}
