//! Dense matrices and subspaces over a finite field.
//!
//! Everything is canonical: row reduction always produces the unique reduced
//! row echelon form, so two subspaces are equal exactly when their bases are
//! bit-identical. Matrices over GF(2) are row-reduced on packed 64-bit words.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElem>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|&c| self.field.format(c)).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn from_elems(field: &Field, rows: usize, cols: usize, data: Vec<FieldElem>) -> Mat {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_u32(field: &Field, rows: usize, cols: usize, data: &[u32]) -> Mat {
        Mat::from_elems(
            field,
            rows,
            cols,
            data.iter().map(|&c| FieldElem(c)).collect(),
        )
    }

    /// Stack equal-length vectors as rows.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<FieldElem>]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Mat::from_elems(field, rows.len(), cols, data)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> FieldElem {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        self.data[r * self.cols + c] = v;
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[FieldElem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, r: usize) -> &mut [FieldElem] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn data(&self) -> &[FieldElem] {
        &self.data
    }

    pub fn column(&self, c: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    self.get(r, c)
                        == if r == c {
                            FieldElem::ONE
                        } else {
                            FieldElem::ZERO
                        }
                })
            })
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Mat::zero(&self.field, self.rows, other.cols);
        let n = other.cols;
        for i in 0..self.rows {
            let dst = &mut out.data[i * n..(i + 1) * n];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if !a.is_zero() {
                    self.field.axpy(dst, a, &other.data[k * n..(k + 1) * n]);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        self.field.axpy(&mut out.data, FieldElem::ONE, &other.data);
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        let minus = self.field.neg(FieldElem::ONE);
        let mut out = self.clone();
        self.field.axpy(&mut out.data, minus, &other.data);
        out
    }

    pub fn scale(&self, c: FieldElem) -> Mat {
        let mut out = self.clone();
        self.field.scale_slice(&mut out.data, c);
        out
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: FieldElem, other: &Mat) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.field.axpy(&mut self.data, c, &other.data);
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(FieldElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![FieldElem::ZERO; self.cols];
        for (r, &c) in v.iter().enumerate() {
            self.field.axpy(&mut out, c, self.row(r));
        }
        out
    }

    /// Stack `self` above `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat::from_elems(&self.field, self.rows + other.rows, self.cols, data)
    }

    /// Place `self` left of `other`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Mat::from_elems(&self.field, self.rows, cols, data)
    }

    pub fn block_diag(field: &Field, blocks: &[&Mat]) -> Mat {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zero(field, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(r0 + r, c0 + c, b.get(r, c));
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Rows `range` as a new matrix.
    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend_from_slice(self.row(r));
        }
        Mat::from_elems(&self.field, idx.len(), self.cols, data)
    }

    /// Canonical reduced row echelon form, rank and pivot columns.
    pub fn rref(&self) -> (Mat, usize, Vec<usize>) {
        if self.field.order() == 2 {
            return gf2::rref(self);
        }
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        let cols = m.cols;
        for c in 0..cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    m.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            f.scale_slice(m.row_mut(r), inv);
            let pivot_row: Vec<FieldElem> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let x = m.get(i, c);
                if !x.is_zero() {
                    f.axpy(m.row_mut(i), f.neg(x), &pivot_row);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, r, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis (as rows) of `{x : self · x = 0}`, deterministic: one vector per
    /// free column, in column order.
    pub fn nullspace(&self) -> Mat {
        let (r, rank, pivots) = self.rref();
        nullspace_from_rref(&r, rank, &pivots)
    }

    /// Basis (as rows) of `{y : y · self = 0}`.
    pub fn left_nullspace(&self) -> Mat {
        self.transpose().nullspace()
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(&self.field, n));
        let (r, _, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zero(&self.field, n, n);
        for i in 0..n {
            inv.row_mut(i).copy_from_slice(&r.row(i)[n..]);
        }
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Characteristic polynomial coefficients (monic, low to high) via
    /// reduction to upper Hessenberg form.
    pub fn charpoly(&self) -> Vec<FieldElem> {
        assert_eq!(self.rows, self.cols);
        let f = &self.field;
        let n = self.rows;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&i| !h.get(i, j).is_zero()) else {
                continue;
            };
            if p != j + 1 {
                for c in 0..n {
                    h.data.swap(p * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + p, r * n + j + 1);
                }
            }
            let pivot_inv = f.inv(h.get(j + 1, j)).unwrap();
            for i in j + 2..n {
                let u = f.mul(h.get(i, j), pivot_inv);
                if u.is_zero() {
                    continue;
                }
                // row_i -= u row_{j+1}; col_{j+1} += u col_i
                let src: Vec<FieldElem> = h.row(j + 1).to_vec();
                f.axpy(h.row_mut(i), f.neg(u), &src);
                for r in 0..n {
                    let v = f.add(h.get(r, j + 1), f.mul(u, h.get(r, i)));
                    h.set(r, j + 1, v);
                }
            }
        }
        // p_0 = 1; p_m = (x - h_mm) p_{m-1} - Σ_{i<m} h_im (Π_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
        let mut polys: Vec<Vec<FieldElem>> = vec![vec![FieldElem::ONE]];
        for m in 0..n {
            let prev = &polys[m];
            let mut next = vec![FieldElem::ZERO; m + 2];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = f.add(next[d + 1], c);
                next[d] = f.sub(next[d], f.mul(h.get(m, m), c));
            }
            let mut prod = FieldElem::ONE;
            for i in (0..m).rev() {
                prod = f.mul(prod, h.get(i + 1, i));
                if prod.is_zero() {
                    break;
                }
                let coef = f.mul(h.get(i, m), prod);
                if coef.is_zero() {
                    continue;
                }
                for (d, &c) in polys[i].iter().enumerate() {
                    next[d] = f.sub(next[d], f.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

fn nullspace_from_rref(r: &Mat, rank: usize, pivots: &[usize]) -> Mat {
    let f = &r.field;
    let cols = r.cols;
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut out = Mat::zero(f, free.len(), cols);
    for (k, &fc) in free.iter().enumerate() {
        out.set(k, fc, FieldElem::ONE);
        for (i, &pc) in pivots.iter().enumerate().take(rank) {
            out.set(k, pc, f.neg(r.get(i, fc)));
        }
    }
    out
}

/// Solve `a · x = b`. Returns a particular solution together with a basis
/// (rows) of the nullspace of `a`, or `None` when inconsistent.
pub fn solve(a: &Mat, b: &Mat) -> Result<Option<(Mat, Mat)>> {
    if a.rows != b.rows {
        return Err(Error::ShapeMismatch(format!(
            "solve: a has {} rows, b has {}",
            a.rows, b.rows
        )));
    }
    let f = &a.field;
    let aug = a.hstack(b);
    let (r, _, pivots) = aug.rref();
    if pivots.iter().any(|&p| p >= a.cols) {
        return Ok(None);
    }
    let mut x = Mat::zero(f, a.cols, b.cols);
    for (i, &pc) in pivots.iter().enumerate() {
        for j in 0..b.cols {
            x.set(pc, j, r.get(i, a.cols + j));
        }
    }
    Ok(Some((x, a.nullspace())))
}

/// A subspace of `F^n`, stored as a canonical RREF basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Mat,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}) ", self.dim(), self.ambient())?;
        self.basis.fmt(f)
    }
}

impl Subspace {
    /// The span of the rows of `m`.
    pub fn from_rows(m: &Mat) -> Subspace {
        let (r, rank, pivots) = m.rref();
        let basis = r.select_rows(&(0..rank).collect::<Vec<_>>());
        Subspace { basis, pivots }
    }

    pub fn span(field: &Field, ambient: usize, vectors: &[Vec<FieldElem>]) -> Subspace {
        Subspace::from_rows(&Mat::from_rows(field, ambient, vectors))
    }

    pub fn zero(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Mat::zero(field, 0, ambient),
            pivots: vec![],
        }
    }

    pub fn full(field: &Field, ambient: usize) -> Subspace {
        Subspace {
            basis: Mat::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.basis.field
    }

    pub fn dim(&self) -> usize {
        self.basis.rows
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<FieldElem>> {
        (0..self.dim())
            .map(|i| self.basis.row(i).to_vec())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    /// Columns that are not pivots; the standard unit vectors on them span a
    /// complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient()];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient()).filter(|&c| !is_pivot[c]).collect()
    }

    /// Canonical representative of `v` modulo this subspace.
    pub fn reduce(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let f = self.field();
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = out[p];
            if !c.is_zero() {
                f.axpy(&mut out, f.neg(c), self.basis.row(i));
            }
        }
        out
    }

    pub fn contains(&self, v: &[FieldElem]) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Coordinates of a vector known to lie in the subspace.
    pub fn coords(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        self.pivots.iter().map(|&p| v[p]).collect()
    }

    /// Coordinates in `F^n / self` relative to the non-pivot unit vectors.
    pub fn quotient_coords(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        let r = self.reduce(v);
        self.non_pivots().iter().map(|&c| r[c]).collect()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch(self.ambient(), other.ambient()));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_rows(&self.basis.vstack(&other.basis)))
    }

    /// Zassenhaus: row-reduce `[[U, U], [V, 0]]`; rows with vanishing left
    /// half span `U ∩ V`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let f = self.field();
        let n = self.ambient();
        let top = self.basis.hstack(&self.basis);
        let bottom = other.basis.hstack(&Mat::zero(f, other.dim(), n));
        let (r, rank, _) = top.vstack(&bottom).rref();
        let rows: Vec<Vec<FieldElem>> = (0..rank)
            .filter(|&i| r.row(i)[..n].iter().all(|c| c.is_zero()))
            .map(|i| r.row(i)[n..].to_vec())
            .collect();
        Ok(Subspace::span(f, n, &rows))
    }

    /// `(sum, intersection)` in one call.
    pub fn sum_and_intersection(&self, other: &Subspace) -> Result<(Subspace, Subspace)> {
        Ok((self.sum(other)?, self.intersection(other)?))
    }

    /// `{v : u · v = 0 for all u in self}`.
    pub fn annihilator(&self) -> Subspace {
        Subspace::from_rows(&self.basis.nullspace())
    }
}

/// Incrementally built semi-echelon basis; the workhorse of spinning.
#[derive(Clone)]
pub struct Echelon {
    field: Field,
    ambient: usize,
    rows: Vec<Vec<FieldElem>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: &Field, ambient: usize) -> Echelon {
        Echelon {
            field: field.clone(),
            ambient,
            rows: vec![],
            pivots: vec![],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &mut [FieldElem]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if !c.is_zero() {
                f.axpy(v, f.neg(c), row);
            }
        }
    }

    /// Add `v` if it is new; returns the normalized new row.
    pub fn insert(&mut self, v: &[FieldElem]) -> Option<&[FieldElem]> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let p = w.iter().position(|c| !c.is_zero())?;
        let inv = self.field.inv(w[p]).unwrap();
        self.field.scale_slice(&mut w, inv);
        self.rows.push(w);
        self.pivots.push(p);
        self.rows.last().map(|r| r.as_slice())
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace::span(&self.field, self.ambient, &self.rows)
    }
}

pub(crate) mod gf2 {
    //! Bit-packed row reduction over GF(2).

    use super::Mat;
    use crate::field::FieldElem;

    pub fn rref(m: &Mat) -> (Mat, usize, Vec<usize>) {
        let words = m.cols.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = (0..m.rows)
            .map(|r| {
                let mut w = vec![0u64; words];
                for (c, &x) in m.row(r).iter().enumerate() {
                    if x.0 & 1 == 1 {
                        w[c / 64] |= 1 << (c % 64);
                    }
                }
                w
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..m.cols {
            if rank == rows.len() {
                break;
            }
            let (wi, bit) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][wi] & bit != 0) else {
                continue;
            };
            rows.swap(p, rank);
            let pivot = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row[wi] & bit != 0 {
                    for (a, b) in row.iter_mut().zip(&pivot) {
                        *a ^= b;
                    }
                }
            }
            pivots.push(c);
            rank += 1;
        }
        let mut out = Mat::zero(&m.field, m.rows, m.cols);
        for (r, row) in rows.iter().enumerate() {
            for c in 0..m.cols {
                if row[c / 64] >> (c % 64) & 1 == 1 {
                    out.set(r, c, FieldElem::ONE);
                }
            }
        }
        (out, rank, pivots)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_mat(f: &Field, rng: &mut ChaCha8Rng, r: usize, c: usize, sparsity: u32) -> Mat {
        let q = f.order();
        let data = (0..r * c)
            .map(|_| {
                if rng.gen_range(0..sparsity.max(1)) == 0 {
                    FieldElem(rng.gen_range(0..q))
                } else {
                    FieldElem::ZERO
                }
            })
            .collect();
        Mat::from_elems(f, r, c, data)
    }

    #[test]
    fn rref_identity_and_zero() {
        let f = Field::gf(3, 1);
        let i = Mat::identity(&f, 3);
        let (r, rank, piv) = i.rref();
        assert_eq!(r, i);
        assert_eq!(rank, 3);
        assert_eq!(piv, vec![0, 1, 2]);
        let z = Mat::zero(&f, 2, 4);
        let (r, rank, piv) = z.rref();
        assert_eq!(r, z);
        assert_eq!(rank, 0);
        assert!(piv.is_empty());
    }

    #[test]
    fn rref_gf2_all_ones() {
        let f = Field::gf(2, 1);
        let m = Mat::from_u32(&f, 2, 2, &[1, 1, 1, 1]);
        // adding row 0 to row 1 is the only elementary operation needed
        let mut e = Mat::identity(&f, 2);
        e.set(1, 0, FieldElem::ONE);
        let (r, rank, _) = m.rref();
        assert_eq!(r, e.mul(&m));
        assert_eq!(r, Mat::from_u32(&f, 2, 2, &[1, 1, 0, 0]));
        assert_eq!(rank, 1);
    }

    #[test]
    fn solve_examples() {
        let f = Field::gf(2, 2);
        let b = Mat::from_u32(&f, 2, 1, &[3, 1]);
        let (x, _) = solve(&Mat::identity(&f, 2), &b).unwrap().unwrap();
        assert_eq!(x, b);
        assert!(solve(&Mat::zero(&f, 2, 2), &b).unwrap().is_none());
        let a = Mat::from_u32(&f, 1, 1, &[2]); // ω
        let (x, _) = solve(&a, &Mat::from_u32(&f, 1, 1, &[1])).unwrap().unwrap();
        assert_eq!(x.get(0, 0), FieldElem(3)); // ω²
        assert!(matches!(
            solve(&a, &Mat::zero(&f, 2, 1)),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn subspace_basics() {
        let f = Field::gf(2, 1);
        let u = Subspace::span(&f, 2, &[vec![FieldElem(1), FieldElem(0)]]);
        let v = Subspace::span(&f, 2, &[vec![FieldElem(1), FieldElem(1)]]);
        let (s, i) = u.sum_and_intersection(&v).unwrap();
        assert!(s.is_full());
        assert!(i.is_zero());
        let (s, i) = u.sum_and_intersection(&u).unwrap();
        assert_eq!(s, u);
        assert_eq!(i, u);
        let w = Subspace::zero(&f, 3);
        assert_eq!(u.sum(&w).unwrap_err(), Error::AmbientMismatch(2, 3));
    }

    #[test]
    fn ideals_of_truncated_polynomial_ring() {
        // k[X,Y]/(X^2,Y^2) with basis 1, X, Y, XY
        let f = Field::gf(2, 1);
        let e = |i: usize| {
            let mut v = vec![FieldElem::ZERO; 4];
            v[i] = FieldElem::ONE;
            v
        };
        let ideal_x = Subspace::span(&f, 4, &[e(1), e(3)]);
        let ideal_y = Subspace::span(&f, 4, &[e(2), e(3)]);
        let (s, i) = ideal_x.sum_and_intersection(&ideal_y).unwrap();
        assert_eq!(i, Subspace::span(&f, 4, &[e(3)]));
        assert_eq!(s, Subspace::span(&f, 4, &[e(1), e(2), e(3)]));
    }

    #[test]
    fn charpoly_companion() {
        let f = Field::gf(5, 1);
        // companion of x^3 - 2x - 1 = x^3 + 3x + 4
        let c = Mat::from_u32(&f, 3, 3, &[0, 0, 1, 1, 0, 2, 0, 1, 0]);
        let cp = c.charpoly();
        assert_eq!(
            cp,
            vec![FieldElem(4), FieldElem(3), FieldElem(0), FieldElem(1)]
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let f = Field::gf(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut found = 0;
        for _ in 0..50 {
            let m = random_mat(&f, &mut rng, 4, 4, 1);
            if let Some(inv) = m.inverse() {
                assert!(m.mul(&inv).is_identity());
                found += 1;
            } else {
                assert!(m.rank() < 4);
            }
        }
        assert!(found > 0);
    }

    #[test]
    fn rank_nullity_random() {
        let fields = [
            Field::gf(2, 1),
            Field::gf(2, 2),
            Field::gf(3, 1),
            Field::gf(5, 1),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in &fields {
            for _ in 0..200 {
                let r = rng.gen_range(0..9);
                let c = rng.gen_range(0..9);
                let sparsity = rng.gen_range(1..4);
                let m = random_mat(f, &mut rng, r, c, sparsity);
                let ns = m.nullspace();
                assert_eq!(m.rank() + ns.rows(), c);
                for k in 0..ns.rows() {
                    assert!(m.mul_vec(ns.row(k)).iter().all(|x| x.is_zero()));
                }
            }
        }
    }

    #[test]
    fn gf2_fast_path_matches_generic() {
        // compare packed GF(2) reduction with GF(2) arithmetic done by hand
        let f = Field::gf(2, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let m = random_mat(&f, &mut rng, 7, 70, 2);
            let (r, rank, piv) = m.rref();
            assert_eq!(rank, piv.len());
            // r is row-equivalent: same row space, and r is reduced
            let rs = Subspace::from_rows(&m);
            for i in 0..rank {
                assert!(rs.contains(r.row(i)));
                assert_eq!(r.get(i, piv[i]), FieldElem::ONE);
                for j in 0..rank {
                    if j != i {
                        assert!(r.get(j, piv[i]).is_zero());
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn rref_is_canonical(seed in 0u64..10_000, fi in 0usize..3) {
            let f = [Field::gf(2, 1), Field::gf(2, 2), Field::gf(3, 1)][fi].clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = random_mat(&f, &mut rng, 5, 6, 2);
            let (r, _, _) = m.rref();
            prop_assert_eq!(&r.rref().0, &r);
            // a random invertible left factor leaves the RREF unchanged
            let mut e;
            loop {
                e = random_mat(&f, &mut rng, 5, 5, 1);
                if e.is_invertible() { break; }
            }
            prop_assert_eq!(e.mul(&m).rref().0, r);
        }

        #[test]
        fn modular_dimension_law(seed in 0u64..10_000, fi in 0usize..3) {
            let f = [Field::gf(2, 1), Field::gf(2, 2), Field::gf(5, 1)][fi].clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..8);
            let a = rng.gen_range(0..=n);
            let b = rng.gen_range(0..=n);
            let u = Subspace::from_rows(&random_mat(&f, &mut rng, a, n, 2));
            let v = Subspace::from_rows(&random_mat(&f, &mut rng, b, n, 2));
            let (s, i) = u.sum_and_intersection(&v).unwrap();
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
            prop_assert!(u.contains_subspace(&i) && v.contains_subspace(&i));
            prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&v));
        }
    }
}
