//! Exact arithmetic in GF(p^k).
//!
//! Elements are coefficient vectors over GF(p) modulo a fixed monic
//! irreducible polynomial, packed into a single integer `Σ c_i p^i`
//! (coefficients low to high). This packing doubles as the deterministic
//! element order: `0, 1, ..., q-1`. Over GF(4) with modulus `x^2+x+1` that is
//! `0, 1, ω, ω+1 = ω^2`.
//!
//! Fields with at most 256 elements get full addition/multiplication tables;
//! larger ones fall back to polynomial arithmetic on the packed digits.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const TABLE_LIMIT: u64 = 256;

/// An element of a finite field, stored as its packed coefficient vector.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElem(pub u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// JSON-facing description of a field: `{"char": 2, "degree": 2, "modulus": [1,1,1]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(rename = "char")]
    pub characteristic: u32,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    add: Option<Vec<u32>>,
    mul: Option<Vec<u32>>,
    inv: Option<Vec<u32>>,
}

/// A finite field context. Immutable after construction and cheap to clone.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.k == other.inner.k
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}) mod {:?}",
            self.inner.p, self.inner.k, self.inner.modulus
        )
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.k == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.k)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Built-in moduli, coefficients low to high.
fn table_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    match (p, k) {
        (2, 1) | (3, 1) | (5, 1) => Some(vec![0, 1]),
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        _ => None,
    }
}

// ---- polynomial helpers over the prime field, used only for the modulus ----

fn prime_poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = prime_inv(m[dm], p);
    while r.len() > dm {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = (top as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = r.len() - 1 - dm;
            for (i, &mc) in m.iter().enumerate() {
                let sub = (c as u64 * mc as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn prime_inv(a: u32, p: u32) -> u32 {
    // a^(p-2) mod p
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Irreducibility of a monic polynomial over GF(p) by trial division with
/// every monic polynomial of degree at most half its degree.
pub(crate) fn prime_poly_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    for d in 1..=n / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                g.push((c % p as u64) as u32);
                c /= p as u64;
            }
            g.push(1);
            if prime_poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Least monic irreducible of degree `k`, ordered lexicographically on the
/// coefficients from degree `k-1` down to the constant term.
fn search_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for code in 0..count {
        // code's most significant base-p digit is the x^(k-1) coefficient
        let mut f = vec![0u32; k as usize + 1];
        let mut c = code;
        for slot in f.iter_mut().take(k as usize) {
            *slot = (c % p as u64) as u32;
            c /= p as u64;
        }
        f[k as usize] = 1;
        if prime_poly_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// Build GF(p^k). With `modulus = None` the built-in table or a
    /// deterministic search supplies the defining polynomial.
    pub fn new(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(Error::DegreeMismatch(
                "field degree must be at least 1".into(),
            ));
        }
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= u32::MAX as u64 / 2)
            .ok_or_else(|| Error::DegreeMismatch(format!("GF({p}^{k}) is too large")))?;
        let modulus = match modulus {
            Some(m) => {
                let mut m = m;
                while m.last() == Some(&0) {
                    m.pop();
                }
                if m.len() != k as usize + 1 {
                    return Err(Error::DegreeMismatch(format!(
                        "modulus {:?} has degree {}, expected {k}",
                        m,
                        m.len() as i64 - 1
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::DegreeMismatch(format!(
                        "modulus {m:?} has coefficients outside GF({p})"
                    )));
                }
                if m[k as usize] != 1 {
                    return Err(Error::DegreeMismatch(format!("modulus {m:?} is not monic")));
                }
                if !prime_poly_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(m, p));
                }
                m
            }
            None => table_modulus(p, k).unwrap_or_else(|| search_modulus(p, k)),
        };
        let mut inner = Inner {
            p,
            k,
            q: q as u32,
            modulus,
            add: None,
            mul: None,
            inv: None,
        };
        if q <= TABLE_LIMIT {
            let qs = q as usize;
            let mut add = vec![0u32; qs * qs];
            let mut mul = vec![0u32; qs * qs];
            let mut inv = vec![0u32; qs];
            for a in 0..qs as u32 {
                for b in 0..qs as u32 {
                    add[a as usize * qs + b as usize] = slow_add(&inner, a, b);
                    let m = slow_mul(&inner, a, b);
                    mul[a as usize * qs + b as usize] = m;
                    if m == 1 {
                        inv[a as usize] = b;
                    }
                }
            }
            inner.add = Some(add);
            inner.mul = Some(mul);
            inner.inv = Some(inv);
        }
        Ok(Field {
            inner: Arc::new(inner),
        })
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        Field::new(spec.characteristic, spec.degree, spec.modulus.clone())
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            characteristic: self.inner.p,
            degree: self.inner.k,
            modulus: Some(self.inner.modulus.clone()),
        }
    }

    /// GF(2), GF(4) and friends, panicking on the impossible.
    pub fn gf(p: u32, k: u32) -> Field {
        Field::new(p, k, None).expect("valid built-in field")
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// The residue class of `x`; ω for GF(4).
    pub fn generator(&self) -> FieldElem {
        if self.inner.k == 1 {
            // the modulus is x - a, so x ≡ a
            let a = (self.inner.p - self.inner.modulus[0]) % self.inner.p;
            FieldElem(a)
        } else {
            FieldElem(self.inner.p)
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.inner.q).map(FieldElem)
    }

    /// Image of an integer under Z → GF(p) ⊆ GF(q).
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.inner.p as i64) as u32)
    }

    pub fn elem(&self, packed: u32) -> Result<FieldElem> {
        if packed < self.inner.q {
            Ok(FieldElem(packed))
        } else {
            Err(Error::Parse(format!(
                "{packed} is not an element of {self}"
            )))
        }
    }

    /// Coefficients over GF(p), low to high, exactly `k` of them.
    pub fn digits(&self, a: FieldElem) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.inner.k as usize);
        let mut c = a.0;
        for _ in 0..self.inner.k {
            out.push(c % self.inner.p);
            c /= self.inner.p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> FieldElem {
        let mut acc = 0u32;
        for &d in digits.iter().rev() {
            acc = acc * self.inner.p + d % self.inner.p;
        }
        FieldElem(acc)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.inner.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        match &self.inner.add {
            Some(t) => FieldElem(t[a.index() * self.inner.q as usize + b.index()]),
            None => FieldElem(slow_add(&self.inner, a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if self.inner.p == 2 || a.0 == 0 {
            return a;
        }
        let d: Vec<u32> = self
            .digits(a)
            .into_iter()
            .map(|c| (self.inner.p - c) % self.inner.p)
            .collect();
        self.from_digits(&d)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.inner.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        match &self.inner.mul {
            Some(t) => FieldElem(t[a.index() * self.inner.q as usize + b.index()]),
            None => FieldElem(slow_mul(&self.inner, a.0, b.0)),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.is_zero() {
            return None;
        }
        match &self.inner.inv {
            Some(t) => Some(FieldElem(t[a.index()])),
            None => Some(self.pow(a, self.inner.q as u64 - 2)),
        }
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FieldElem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut x = a;
        let mut n = 1u64;
        while x != FieldElem::ONE {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    /// The unique p-th root (Frobenius is bijective on a finite field).
    pub fn pth_root(&self, a: FieldElem) -> FieldElem {
        // a^(q/p)
        self.pow(a, (self.inner.q / self.inner.p) as u64)
    }

    /// `dst += c * src`, the inner loop of every row operation.
    #[inline]
    pub fn axpy(&self, dst: &mut [FieldElem], c: FieldElem, src: &[FieldElem]) {
        debug_assert_eq!(dst.len(), src.len());
        if c.is_zero() {
            return;
        }
        let q = self.inner.q as usize;
        match (&self.inner.mul, self.inner.p == 2) {
            (Some(mul), true) => {
                if c == FieldElem::ONE {
                    for (d, s) in dst.iter_mut().zip(src) {
                        d.0 ^= s.0;
                    }
                } else {
                    let row = &mul[c.index() * q..(c.index() + 1) * q];
                    for (d, s) in dst.iter_mut().zip(src) {
                        d.0 ^= row[s.index()];
                    }
                }
            }
            (Some(mul), false) => {
                let add = self.inner.add.as_ref().unwrap();
                let row = &mul[c.index() * q..(c.index() + 1) * q];
                for (d, s) in dst.iter_mut().zip(src) {
                    d.0 = add[d.index() * q + row[s.index()] as usize];
                }
            }
            _ => {
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = self.add(*d, self.mul(c, *s));
                }
            }
        }
    }

    /// `v *= c` in place.
    #[inline]
    pub fn scale_slice(&self, v: &mut [FieldElem], c: FieldElem) {
        if c == FieldElem::ONE {
            return;
        }
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    /// Human-readable name of an element: `0`, `1`, `w`, `w^2` for GF(4),
    /// the residue for prime fields, and the packed integer otherwise.
    pub fn format(&self, a: FieldElem) -> String {
        if self.inner.p == 2 && self.inner.k == 2 {
            return ["0", "1", "w", "w^2"][a.index()].to_string();
        }
        a.0.to_string()
    }
}

fn slow_add(f: &Inner, a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut acc = 0u32;
    let mut place = 1u32;
    for _ in 0..f.k {
        let d = (a % f.p + b % f.p) % f.p;
        acc += d * place;
        place = place.wrapping_mul(f.p);
        a /= f.p;
        b /= f.p;
    }
    acc
}

fn slow_mul(f: &Inner, a: u32, b: u32) -> u32 {
    let p = f.p as u64;
    let k = f.k as usize;
    let digits = |mut x: u32| {
        let mut v = vec![0u64; k];
        for slot in v.iter_mut() {
            *slot = (x % f.p) as u64;
            x /= f.p;
        }
        v
    };
    let da = digits(a);
    let db = digits(b);
    let mut prod = vec![0u64; 2 * k];
    for i in 0..k {
        if da[i] == 0 {
            continue;
        }
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    // reduce by the monic modulus
    for top in (k..2 * k).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (i, &m) in f.modulus.iter().enumerate().take(k) {
            let idx = top - k + i;
            prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
        }
    }
    let mut acc = 0u64;
    for &d in prod[..k].iter().rev() {
        acc = acc * p + d;
    }
    acc as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gf4_default_modulus_and_omega() {
        let f = Field::gf(2, 2);
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let w = f.generator();
        assert_eq!(w, FieldElem(2));
        let w2 = f.mul(w, w);
        // ω² = ω + 1
        assert_eq!(w2, f.add(w, FieldElem::ONE));
        assert_eq!(f.add(f.add(w2, w), FieldElem::ONE), FieldElem::ZERO);
        assert_eq!(f.pow(w, 3), FieldElem::ONE);
        assert_ne!(w, FieldElem::ONE);
        // ω and ω+1 are mutually inverse
        assert_eq!(f.inv(w), Some(FieldElem(3)));
    }

    #[test]
    fn prime_fields() {
        let f2 = Field::gf(2, 1);
        assert_eq!(f2.elements().count(), 2);
        let f5 = Field::gf(5, 1);
        assert_eq!(f5.mul(FieldElem(2), FieldElem(3)), FieldElem::ONE);
        assert_eq!(f5.inv(FieldElem(2)), Some(FieldElem(3)));
        assert_eq!(f5.neg(FieldElem(2)), FieldElem(3));
        assert_eq!(f5.from_int(-1), FieldElem(4));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            Field::new(2, 2, Some(vec![1, 0, 1])),
            Err(Error::ReducibleModulus(..))
        ));
        assert!(matches!(
            Field::new(2, 3, Some(vec![1, 1, 1])),
            Err(Error::DegreeMismatch(_))
        ));
        assert!(matches!(
            Field::new(3, 0, None),
            Err(Error::DegreeMismatch(_))
        ));
    }

    #[test]
    fn searched_moduli_are_irreducible() {
        let f9 = Field::gf(3, 2);
        assert!(prime_poly_irreducible(f9.modulus(), 3));
        // x^2 + 1 is the least candidate for GF(9)
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let f16 = Field::gf(2, 4);
        assert_eq!(f16.modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(Field::gf(7, 1).order(), 7);
    }

    #[test]
    fn explicit_modulus_accepted() {
        let f = Field::new(2, 3, Some(vec![1, 0, 1, 1])).unwrap();
        assert_eq!(f.order(), 8);
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
        }
    }

    #[test]
    fn slow_path_matches_tables() {
        // GF(3^6) = 729 elements has no tables
        let big = Field::gf(3, 6);
        assert!(big.inner.mul.is_none());
        let a = FieldElem(500);
        let inv = big.inv(a).unwrap();
        assert_eq!(big.mul(a, inv), FieldElem::ONE);
        assert_eq!(big.pow(a, 728), FieldElem::ONE);
    }

    fn fields() -> Vec<Field> {
        vec![
            Field::gf(2, 1),
            Field::gf(2, 2),
            Field::gf(2, 3),
            Field::gf(3, 1),
            Field::gf(3, 2),
            Field::gf(5, 1),
            Field::gf(7, 1),
        ]
    }

    proptest! {
        #[test]
        fn field_axioms(fi in 0usize..7, a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
            let f = &fields()[fi];
            let q = f.order();
            let (a, b, c) = (FieldElem(a % q), FieldElem(b % q), FieldElem(c % q));
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
            }
            prop_assert_eq!(f.mul(f.add(a, b), c), f.add(f.mul(a, c), f.mul(b, c)));
            let p = f.characteristic() as u64;
            prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
            prop_assert_eq!(f.sub(f.add(a, b), b), a);
            prop_assert_eq!(f.pow(f.pth_root(a), p), a);
        }
    }
}
