//! Univariate polynomials over a [`Field`] and their factorization.
//!
//! Factorization runs square-free decomposition first, then splits each
//! square-free part with Berlekamp's algorithm. Parts of degree at most 4 are
//! handled by exhaustive search for factors of degree at most 2 instead.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::linalg::Mat;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<FieldElem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.field.format(c);
            match (i, c == FieldElem::ONE) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{cs}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{cs}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<FieldElem>) -> Poly {
        let mut p = Poly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn from_u32(field: &Field, coeffs: &[u32]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| FieldElem(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, vec![])
    }

    pub fn one(field: &Field) -> Poly {
        Poly::new(field, vec![FieldElem::ONE])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![FieldElem::ZERO, FieldElem::ONE])
    }

    /// `x - a`
    pub fn linear(field: &Field, a: FieldElem) -> Poly {
        Poly::new(field, vec![field.neg(a), FieldElem::ONE])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElem::ONE
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lead()) {
            Some(li) => self.scale(li),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: FieldElem) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            f,
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            f,
            (0..n)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(d.lead()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let mut q = vec![FieldElem::ZERO; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(r[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            q[top - dd] = c;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = f.sub(r[idx], f.mul(c, dc));
            }
        }
        r.truncate(dd);
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match f.inv(r0.lead()) {
            Some(li) => (r0.scale(li), s0.scale(li), t0.scale(li)),
            None => (r0, s0, t0),
        }
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Evaluate at a square matrix by Horner's rule.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        let n = m.rows();
        let mut acc = Mat::zero(&self.field, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let v = self.field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }

    /// Substitute `x ↦ x^(1/p)` coefficientwise: the p-th root of a
    /// polynomial whose derivative vanishes.
    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| f.pth_root(c))
            .collect();
        Poly::new(f, coeffs)
    }

    /// Deterministic total order used to sort factors: by degree, then by
    /// coefficients from the top down.
    fn sort_key(&self) -> (usize, Vec<u32>) {
        (
            self.coeffs.len(),
            self.coeffs.iter().rev().map(|c| c.0).collect(),
        )
    }
}

/// Factor a nonzero polynomial into monic irreducibles with multiplicities.
///
/// Output is sorted by degree then coefficients; the leading coefficient of
/// `f` is not included.
pub fn factor(f: &Poly) -> Result<Vec<(Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (part, mult) in square_free(&f.monic()) {
        let pieces = if part.degree().unwrap_or(0) <= 4 {
            small_factor(&part)
        } else {
            berlekamp(&part)
        };
        for piece in pieces {
            match out.iter_mut().find(|(g, _)| *g == piece) {
                Some((_, e)) => *e += mult,
                None => out.push((piece, mult)),
            }
        }
    }
    out.sort_by_key(|a| a.0.sort_key());
    Ok(out)
}

/// Square-free decomposition of a monic polynomial: pairs `(g, i)` with
/// `f = Π g^i` and each `g` square-free.
fn square_free(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let p = field.characteristic() as usize;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        for (g, e) in square_free(&f.pth_root()) {
            out.push((g, e * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if !c.is_one() {
        for (g, e) in square_free(&c.monic().pth_root()) {
            out.push((g, e * p));
        }
    }
    out
}

/// Complete factorization of a square-free polynomial of degree at most 4 by
/// trial division with every monic polynomial of degree 1 and 2.
fn small_factor(f: &Poly) -> Vec<Poly> {
    let field = f.field();
    let mut rest = f.monic();
    let mut out = Vec::new();
    for d in 1..=2usize {
        let count = (field.order() as u64).pow(d as u32);
        for code in 0..count {
            if rest.degree().unwrap_or(0) < 2 * d {
                break;
            }
            let mut c = code;
            let mut coeffs = Vec::with_capacity(d + 1);
            for _ in 0..d {
                coeffs.push(FieldElem((c % field.order() as u64) as u32));
                c /= field.order() as u64;
            }
            coeffs.push(FieldElem::ONE);
            let g = Poly::new(field, coeffs);
            let (q, r) = rest.div_rem(&g);
            if r.is_zero() {
                out.push(g);
                rest = q;
            }
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest);
    }
    out
}

/// Berlekamp's algorithm for a monic square-free polynomial.
fn berlekamp(f: &Poly) -> Vec<Poly> {
    let field = f.field();
    let n = f.degree().unwrap();
    let q = field.order() as u64;
    // row i holds x^(i q) mod f
    let xq = Poly::x(field).pow_mod(q, f);
    let mut rows = Mat::zero(field, n, n);
    let mut cur = Poly::one(field);
    for i in 0..n {
        for j in 0..n {
            rows.set(i, j, cur.coeff(j));
        }
        cur = cur.mul(&xq).rem(f);
    }
    for i in 0..n {
        let v = field.sub(rows.get(i, i), FieldElem::ONE);
        rows.set(i, i, v);
    }
    // g with g^q ≡ g are the left kernel vectors of (Q - I)
    let kernel = rows.transpose().nullspace();
    let r = kernel.rows();
    let mut factors = vec![f.clone()];
    if r <= 1 {
        return factors;
    }
    for b in 0..r {
        if factors.len() == r {
            break;
        }
        let g = Poly::new(field, kernel.row(b).to_vec());
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.degree().unwrap() == 1 {
                next.push(u);
                continue;
            }
            let mut pending = u;
            for s in field.elements() {
                let shifted = g.sub(&Poly::new(field, vec![s]));
                let d = pending.gcd(&shifted);
                if !d.is_one() && d.degree() != pending.degree() {
                    pending = pending.div_rem(&d).0.monic();
                    next.push(d);
                }
                if pending.degree().unwrap() == 0 {
                    break;
                }
            }
            if pending.degree().unwrap() > 0 {
                next.push(pending);
            }
        }
        factors = next;
    }
    factors
}

impl Poly {
    /// `self^e mod m`
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn product(f: &Field, factors: &[(Poly, usize)]) -> Poly {
        factors
            .iter()
            .fold(Poly::one(f), |acc, (g, e)| acc.mul(&g.pow(*e as u64)))
    }

    #[test]
    fn factor_x2_plus_x_gf2() {
        let f = Field::gf(2, 1);
        let p = Poly::from_u32(&f, &[0, 1, 1]);
        let fac = factor(&p).unwrap();
        assert_eq!(
            fac,
            vec![
                (Poly::from_u32(&f, &[0, 1]), 1),
                (Poly::from_u32(&f, &[1, 1]), 1)
            ]
        );
    }

    #[test]
    fn x2_plus_x_plus_1_irreducible_over_gf2() {
        let f = Field::gf(2, 1);
        let p = Poly::from_u32(&f, &[1, 1, 1]);
        assert_eq!(factor(&p).unwrap(), vec![(p.clone(), 1)]);
    }

    #[test]
    fn x3_plus_1_over_gf4_splits() {
        let f = Field::gf(2, 2);
        let p = Poly::from_u32(&f, &[1, 0, 0, 1]);
        let fac = factor(&p).unwrap();
        // roots by enumeration over the four field elements
        let roots: Vec<FieldElem> = f.elements().filter(|&a| p.eval(a).is_zero()).collect();
        assert_eq!(roots, vec![FieldElem(1), FieldElem(2), FieldElem(3)]);
        let expected: Vec<(Poly, usize)> =
            roots.iter().map(|&r| (Poly::linear(&f, r), 1)).collect();
        assert_eq!(fac, expected);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let f = Field::gf(3, 1);
        assert_eq!(factor(&Poly::zero(&f)).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn repeated_and_inseparable_factors() {
        let f = Field::gf(2, 1);
        // (x+1)^4 (x^2+x+1)^2 x^3
        let p = Poly::from_u32(&f, &[1, 1])
            .pow(4)
            .mul(&Poly::from_u32(&f, &[1, 1, 1]).pow(2))
            .mul(&Poly::x(&f).pow(3));
        let fac = factor(&p).unwrap();
        assert_eq!(
            fac,
            vec![
                (Poly::from_u32(&f, &[0, 1]), 3),
                (Poly::from_u32(&f, &[1, 1]), 4),
                (Poly::from_u32(&f, &[1, 1, 1]), 2),
            ]
        );
    }

    #[test]
    fn berlekamp_on_large_degree() {
        let f = Field::gf(2, 1);
        // x^15 - 1 = product of all irreducibles of degree dividing 4 except x
        let mut c = vec![0u32; 16];
        c[0] = 1;
        c[15] = 1;
        let p = Poly::from_u32(&f, &c);
        let fac = factor(&p).unwrap();
        let degs: Vec<usize> = fac.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 2, 4, 4, 4]);
        assert_eq!(product(&f, &fac), p);
    }

    #[test]
    fn eval_mat_matches_scalar() {
        let f = Field::gf(5, 1);
        let p = Poly::from_u32(&f, &[2, 0, 1]);
        let m = Mat::from_u32(&f, 1, 1, &[3]);
        assert_eq!(p.eval_mat(&m).get(0, 0), p.eval(FieldElem(3)));
    }

    fn fields() -> Vec<Field> {
        vec![
            Field::gf(2, 1),
            Field::gf(2, 2),
            Field::gf(3, 1),
            Field::gf(5, 1),
        ]
    }

    proptest! {
        #[test]
        fn factors_remultiply(fi in 0usize..4, raw in proptest::collection::vec(0u32..64, 1..14)) {
            let f = &fields()[fi];
            let q = f.order();
            let p = Poly::new(f, raw.iter().map(|&c| FieldElem(c % q)).collect());
            prop_assume!(!p.is_zero());
            let fac = factor(&p).unwrap();
            prop_assert_eq!(product(f, &fac).scale(p.lead()), p);
            for (g, _) in &fac {
                prop_assert_eq!(g.lead(), FieldElem::ONE);
                // irreducible: no proper factorization
                let again = factor(g).unwrap();
                prop_assert_eq!(again.len(), 1);
                prop_assert_eq!(again[0].1, 1);
            }
        }
    }
}
