//! Dense `n x n` matrix algebra over a [`FieldCtx`], canonical enumeration
//! of `M_n(F_q)` and `GL_n(F_q)`, the trace form, and rank normal form.
//!
//! The canonical order on matrices is the integer order of [`MatIndex`]:
//! reading the row-major entries `a_11, a_12, ..., a_nn` as the base-`q`
//! digits of an integer, most significant digit first. Index 0 is the zero
//! matrix, and the order is lexicographic on row-major entry tuples. The
//! subsequence of invertible matrices in this order is the column order used
//! by the code construction, so codeword coordinates are pinned bit-exactly.
//!
//! Invertibility here means `det != 0`. (Over `F_2` this coincides with the
//! determinant-one convention some sources use for the 2 x 2 case.)

use std::sync::Arc;

use crate::gf::{Felt, FieldCtx};
use crate::{Error, Result};

/// Position of a matrix in the canonical enumeration of `M_n(F_q)`.
///
/// The base-`q` digits of the value, most significant first, are the
/// row-major entry encodings; values run over `0..q^(n^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatIndex(pub u64);

/// An `n x n` matrix with entries in a shared [`FieldCtx`].
#[derive(Clone)]
pub struct Mat {
    n: usize,
    ctx: Arc<FieldCtx>,
    /// Row-major element encodings.
    entries: Vec<u32>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.ctx.same_field(&other.ctx) && self.entries == other.entries
    }
}

impl Eq for Mat {}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Mat({} over F_{})", self.to_text(), self.ctx.q())
    }
}

impl std::fmt::Display for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Mat {
    /// Build a matrix from row-major elements minted by `ctx`.
    pub fn new(n: usize, ctx: &Arc<FieldCtx>, entries: &[Felt]) -> Result<Mat> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch);
        }
        if entries.iter().any(|e| e.ctx_id() != ctx.id()) {
            return Err(Error::MixedFields);
        }
        Ok(Mat {
            n,
            ctx: Arc::clone(ctx),
            entries: entries.iter().map(|e| e.code()).collect(),
        })
    }

    /// Build a matrix from row-major integer encodings.
    pub fn from_codes(n: usize, ctx: &Arc<FieldCtx>, codes: &[u32]) -> Result<Mat> {
        if codes.len() != n * n {
            return Err(Error::DimensionMismatch);
        }
        if codes.iter().any(|&c| c >= ctx.q()) {
            return Err(Error::OutOfRange("matrix entry encoding must be < q"));
        }
        Ok(Mat { n, ctx: Arc::clone(ctx), entries: codes.to_vec() })
    }

    pub fn zero(n: usize, ctx: &Arc<FieldCtx>) -> Mat {
        Mat { n, ctx: Arc::clone(ctx), entries: vec![0; n * n] }
    }

    pub fn identity(n: usize, ctx: &Arc<FieldCtx>) -> Mat {
        let mut m = Mat::zero(n, ctx);
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    /// The matrix unit `E_ij` (single 1 at row `i`, column `j`).
    pub fn matrix_unit(n: usize, ctx: &Arc<FieldCtx>, i: usize, j: usize) -> Mat {
        let mut m = Mat::zero(n, ctx);
        m.entries[i * n + j] = 1;
        m
    }

    /// The rank-`r` idempotent `diag(1, ..., 1, 0, ..., 0)`.
    pub fn partial_identity(n: usize, ctx: &Arc<FieldCtx>, r: usize) -> Mat {
        assert!(r <= n);
        let mut m = Mat::zero(n, ctx);
        for i in 0..r {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn get(&self, i: usize, j: usize) -> Felt {
        self.ctx.felt(self.entries[i * self.n + j])
    }

    /// Raw encoding of entry `(i, j)`.
    pub fn code_at(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub(crate) fn codes(&self) -> &[u32] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&c| c == 0)
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.n).all(|i| (i + 1..self.n).all(|j| self.entries[i * self.n + j] == 0))
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.entries[i * self.n + j] == 0))
    }

    fn compatible(&self, other: &Mat) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch);
        }
        if !self.ctx.same_field(&other.ctx) {
            return Err(Error::MixedFields);
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.ctx.addc(a, b))
            .collect();
        Ok(Mat { n: self.n, ctx: Arc::clone(&self.ctx), entries })
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.compatible(other)?;
        let n = self.n;
        let ctx = &self.ctx;
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u32;
                for k in 0..n {
                    acc = ctx.addc(acc, ctx.mulc(self.entries[i * n + k], other.entries[k * n + j]));
                }
                entries[i * n + j] = acc;
            }
        }
        Ok(Mat { n, ctx: Arc::clone(ctx), entries })
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        Mat { n, ctx: Arc::clone(&self.ctx), entries }
    }

    /// Determinant by Gaussian elimination with column pivot search.
    /// Arithmetic over `F_q` is exact, so no pivot-size concerns arise.
    pub fn det(&self) -> Felt {
        let n = self.n;
        let ctx = &self.ctx;
        let mut work = self.entries.clone();
        let mut det = 1u32;
        let mut swaps = 0usize;
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| work[r * n + col] != 0) {
                Some(r) => r,
                None => return ctx.zero(),
            };
            if pivot_row != col {
                for j in 0..n {
                    work.swap(pivot_row * n + j, col * n + j);
                }
                swaps += 1;
            }
            let pivot = work[col * n + col];
            det = ctx.mulc(det, pivot);
            let pinv = ctx.invc(pivot);
            for r in col + 1..n {
                let factor = ctx.mulc(work[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = ctx.mulc(factor, work[col * n + j]);
                    work[r * n + j] = ctx.subc(work[r * n + j], sub);
                }
            }
        }
        if swaps % 2 == 1 {
            det = ctx.negc(det);
        }
        ctx.felt(det)
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<u32>> = (0..self.n)
            .map(|i| self.entries[i * self.n..(i + 1) * self.n].to_vec())
            .collect();
        row_echelon_rank(&self.ctx, &mut rows)
    }

    pub fn is_invertible(&self) -> bool {
        !self.det().is_zero()
    }

    /// Inverse by Gauss-Jordan on the augmented matrix.
    pub fn inverse(&self) -> Result<Mat> {
        let n = self.n;
        let ctx = &self.ctx;
        let mut work = self.entries.clone();
        let mut inv = Mat::identity(n, ctx).entries;
        for col in 0..n {
            let pivot_row =
                (col..n).find(|&r| work[r * n + col] != 0).ok_or(Error::Singular)?;
            if pivot_row != col {
                for j in 0..n {
                    work.swap(pivot_row * n + j, col * n + j);
                    inv.swap(pivot_row * n + j, col * n + j);
                }
            }
            let pinv = ctx.invc(work[col * n + col]);
            for j in 0..n {
                work[col * n + j] = ctx.mulc(work[col * n + j], pinv);
                inv[col * n + j] = ctx.mulc(inv[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = work[r * n + col];
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    let s = ctx.mulc(factor, work[col * n + j]);
                    work[r * n + j] = ctx.subc(work[r * n + j], s);
                    let s = ctx.mulc(factor, inv[col * n + j]);
                    inv[r * n + j] = ctx.subc(inv[r * n + j], s);
                }
            }
        }
        Ok(Mat { n, ctx: Arc::clone(ctx), entries: inv })
    }

    /// The leading principal `k x k` submatrix.
    pub fn principal_submatrix(&self, k: usize) -> Mat {
        assert!(k >= 1 && k <= self.n);
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                entries.push(self.entries[i * self.n + j]);
            }
        }
        Mat { n: k, ctx: Arc::clone(&self.ctx), entries }
    }

    /// Rank of the leading `rows x cols` block.
    pub(crate) fn leading_block_rank(&self, rows: usize, cols: usize) -> usize {
        let mut block: Vec<Vec<u32>> = (0..rows)
            .map(|i| self.entries[i * self.n..i * self.n + cols].to_vec())
            .collect();
        row_echelon_rank(&self.ctx, &mut block)
    }

    /// `trace_form(A, B) = tr(A B^T) = sum_ij A_ij B_ij`, the nondegenerate
    /// pairing on the matrix space.
    pub fn trace_form(&self, other: &Mat) -> Result<Felt> {
        self.compatible(other)?;
        Ok(self.ctx.felt(self.trace_form_code(other.codes())))
    }

    #[inline]
    pub(crate) fn trace_form_code(&self, other_codes: &[u32]) -> u32 {
        let ctx = &self.ctx;
        let mut acc = 0u32;
        for (&a, &b) in self.entries.iter().zip(other_codes) {
            acc = ctx.addc(acc, ctx.mulc(a, b));
        }
        acc
    }

    pub fn trace(&self) -> Felt {
        let mut acc = 0u32;
        for i in 0..self.n {
            acc = self.ctx.addc(acc, self.entries[i * self.n + i]);
        }
        self.ctx.felt(acc)
    }

    /// Canonical position of this matrix.
    pub fn index(&self) -> MatIndex {
        let q = self.ctx.q() as u64;
        let mut v = 0u64;
        for &e in &self.entries {
            v = v * q + e as u64;
        }
        MatIndex(v)
    }

    /// Matrix at a canonical position; `idx` must be `< q^(n^2)`.
    pub fn from_index(n: usize, ctx: &Arc<FieldCtx>, idx: MatIndex) -> Result<Mat> {
        let total = space_size(n, ctx.q() as u64)
            .ok_or_else(|| Error::Infeasible(format!("index space q^(n^2) overflows for n={n}")))?;
        if idx.0 >= total {
            return Err(Error::OutOfRange("matrix index must be < q^(n^2)"));
        }
        Ok(Self::from_index_unchecked(n, ctx, idx.0))
    }

    pub(crate) fn from_index_unchecked(n: usize, ctx: &Arc<FieldCtx>, idx: u64) -> Mat {
        let q = ctx.q() as u64;
        let mut entries = vec![0u32; n * n];
        let mut v = idx;
        for e in entries.iter_mut().rev() {
            *e = (v % q) as u32;
            v /= q;
        }
        Mat { n, ctx: Arc::clone(ctx), entries }
    }

    /// Parse the text form "a,b;c,d" (rows separated by ';', entries by ',',
    /// entries are integer encodings). The matrix must be square.
    pub fn parse(ctx: &Arc<FieldCtx>, text: &str) -> Result<Mat> {
        let rows: Vec<&str> = text.trim().split(';').collect();
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            let cells: Vec<&str> = row.split(',').collect();
            if cells.len() != n {
                return Err(Error::DimensionMismatch);
            }
            for cell in cells {
                let code: u32 = cell
                    .trim()
                    .parse()
                    .map_err(|_| Error::OutOfRange("matrix entry must be an integer"))?;
                if code >= ctx.q() {
                    return Err(Error::OutOfRange("matrix entry encoding must be < q"));
                }
                entries.push(code);
            }
        }
        Ok(Mat { n, ctx: Arc::clone(ctx), entries })
    }

    /// Text form "a,b;c,d".
    pub fn to_text(&self) -> String {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| self.entries[i * self.n + j].to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// `q^(n^2)` if it fits in a `u64`.
pub fn space_size(n: usize, q: u64) -> Option<u64> {
    q.checked_pow((n * n) as u32)
}

/// Row echelon form in place; returns the rank. Works on rectangular data.
pub(crate) fn row_echelon_rank(ctx: &FieldCtx, rows: &mut [Vec<u32>]) -> usize {
    if rows.is_empty() || rows[0].is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let nrows = rows.len();
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let pivot = match (rank..nrows).find(|&r| rows[r][col] != 0) {
            Some(r) => r,
            None => continue,
        };
        rows.swap(rank, pivot);
        let pinv = ctx.invc(rows[rank][col]);
        for cell in rows[rank][col..].iter_mut() {
            *cell = ctx.mulc(*cell, pinv);
        }
        for r in 0..nrows {
            if r == rank || rows[r][col] == 0 {
                continue;
            }
            let factor = rows[r][col];
            // Indexes two distinct rows of `rows`, so stays a range loop.
            #[allow(clippy::needless_range_loop)]
            for j in col..ncols {
                let s = ctx.mulc(factor, rows[rank][j]);
                rows[r][j] = ctx.subc(rows[r][j], s);
            }
        }
        rank += 1;
    }
    rank
}

/// All `q^(n^2)` matrices in canonical [`MatIndex`] order.
pub fn enumerate_all(n: usize, ctx: &Arc<FieldCtx>) -> Result<AllMatrices> {
    let total = space_size(n, ctx.q() as u64)
        .ok_or_else(|| Error::Infeasible(format!("q^(n^2) overflows u64 for n={n}, q={}", ctx.q())))?;
    Ok(AllMatrices { n, ctx: Arc::clone(ctx), next: 0, total })
}

pub struct AllMatrices {
    n: usize,
    ctx: Arc<FieldCtx>,
    next: u64,
    total: u64,
}

impl Iterator for AllMatrices {
    type Item = Mat;

    fn next(&mut self) -> Option<Mat> {
        if self.next >= self.total {
            return None;
        }
        let m = Mat::from_index_unchecked(self.n, &self.ctx, self.next);
        self.next += 1;
        Some(m)
    }
}

/// The invertible matrices, as the det != 0 subsequence of
/// [`enumerate_all`]. This order is THE canonical column order of the code
/// construction; its length is `gamma(n, q)`.
pub fn enumerate_gl(n: usize, ctx: &Arc<FieldCtx>) -> Result<GlMatrices> {
    Ok(GlMatrices { inner: enumerate_all(n, ctx)? })
}

pub struct GlMatrices {
    inner: AllMatrices,
}

impl Iterator for GlMatrices {
    type Item = Mat;

    fn next(&mut self) -> Option<Mat> {
        self.inner.by_ref().find(Mat::is_invertible)
    }
}

/// Rank normal form: invertible `D`, `E` with `D * B^T * E^(-1) = e_r`,
/// the rank-`r` idempotent, `r = rank(B)`. `B` may be singular or zero.
/// The factorization is re-multiplied and checked before returning.
///
/// Computed by full-pivot Gauss-Jordan on `B^T`, recording row operations in
/// `D` and column operations in `E^(-1)` as they are applied.
pub fn rank_normal_form(b: &Mat) -> (Mat, Mat, usize) {
    let n = b.n();
    let ctx = b.ctx();
    let mut x = b.transpose();
    let mut d = Mat::identity(n, ctx);
    let mut c = Mat::identity(n, ctx); // accumulates column ops; equals E^(-1)
    let mut r = 0;
    while r < n {
        // Full pivot search in the trailing block.
        let pivot = (r..n)
            .flat_map(|i| (r..n).map(move |j| (i, j)))
            .find(|&(i, j)| x.entries[i * n + j] != 0);
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        if pi != r {
            for j in 0..n {
                x.entries.swap(pi * n + j, r * n + j);
                d.entries.swap(pi * n + j, r * n + j);
            }
        }
        if pj != r {
            for i in 0..n {
                x.entries.swap(i * n + pj, i * n + r);
                c.entries.swap(i * n + pj, i * n + r);
            }
        }
        let pinv = ctx.invc(x.entries[r * n + r]);
        for j in 0..n {
            x.entries[r * n + j] = ctx.mulc(x.entries[r * n + j], pinv);
            d.entries[r * n + j] = ctx.mulc(d.entries[r * n + j], pinv);
        }
        for i in 0..n {
            if i == r {
                continue;
            }
            let factor = x.entries[i * n + r];
            if factor == 0 {
                continue;
            }
            for j in 0..n {
                let s = ctx.mulc(factor, x.entries[r * n + j]);
                x.entries[i * n + j] = ctx.subc(x.entries[i * n + j], s);
                let s = ctx.mulc(factor, d.entries[r * n + j]);
                d.entries[i * n + j] = ctx.subc(d.entries[i * n + j], s);
            }
        }
        for j in 0..n {
            if j == r {
                continue;
            }
            let factor = x.entries[r * n + j];
            if factor == 0 {
                continue;
            }
            for i in 0..n {
                let s = ctx.mulc(factor, x.entries[i * n + r]);
                x.entries[i * n + j] = ctx.subc(x.entries[i * n + j], s);
                let s = ctx.mulc(factor, c.entries[i * n + r]);
                c.entries[i * n + j] = ctx.subc(c.entries[i * n + j], s);
            }
        }
        r += 1;
    }
    let check = d.mul(&b.transpose()).unwrap().mul(&c).unwrap();
    assert_eq!(
        check,
        Mat::partial_identity(n, ctx, r),
        "rank normal form must reduce B^T to the rank-r idempotent"
    );
    debug_assert_eq!(r, b.rank());
    let e = c.inverse().expect("column-operation product is invertible");
    (d, e, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Arc<FieldCtx> {
        FieldCtx::new(q).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let ctx = f(3);
        let a = Mat::parse(&ctx, "1,2;0,2").unwrap();
        let i = Mat::identity(2, &ctx);
        assert_eq!(i.mul(&a).unwrap(), a);
        assert_eq!(a.mul(&i).unwrap(), a);
    }

    #[test]
    fn swap_squares_to_identity_over_f2() {
        let ctx = f(2);
        let s = Mat::parse(&ctx, "0,1;1,0").unwrap();
        assert_eq!(s.mul(&s).unwrap(), Mat::identity(2, &ctx));
    }

    #[test]
    fn transpose_is_an_involution() {
        let ctx = f(3);
        let a = Mat::parse(&ctx, "1,2,0;0,1,1;2,2,1").unwrap();
        assert_eq!(a.transpose().transpose(), a);
    }

    #[test]
    fn det_and_rank_examples() {
        let ctx2 = f(2);
        assert_eq!(Mat::identity(2, &ctx2).det(), ctx2.one());
        let ones = Mat::parse(&ctx2, "1,1;1,1").unwrap();
        assert!(ones.det().is_zero());
        assert_eq!(ones.rank(), 1);

        let ctx3 = f(3);
        let a = Mat::parse(&ctx3, "1,2;1,1").unwrap();
        assert_eq!(a.det(), ctx3.felt(2)); // 1 - 2 = -1 = 2 mod 3
    }

    #[test]
    fn det_sign_under_row_swap_odd_char() {
        let ctx = f(3);
        // Antidiagonal(1, 1): det = -1 = 2 mod 3.
        let a = Mat::parse(&ctx, "0,1;1,0").unwrap();
        assert_eq!(a.det(), ctx.felt(2));
    }

    #[test]
    fn trace_form_examples() {
        let ctx = f(2);
        let a = Mat::parse(&ctx, "1,1;0,1").unwrap();
        let i = Mat::identity(2, &ctx);
        assert_eq!(a.trace_form(&i).unwrap(), a.trace());
        let e11 = Mat::matrix_unit(2, &ctx, 0, 0);
        assert_eq!(e11.trace_form(&e11).unwrap(), ctx.one());
        // Symmetry.
        let b = Mat::parse(&ctx, "0,1;1,1").unwrap();
        assert_eq!(a.trace_form(&b).unwrap(), b.trace_form(&a).unwrap());
    }

    #[test]
    fn enumeration_counts_and_order() {
        let ctx2 = f(2);
        let all1: Vec<Mat> = enumerate_all(1, &ctx2).unwrap().collect();
        assert_eq!(all1.len(), 2);
        assert!(all1[0].is_zero());

        let all2: Vec<Mat> = enumerate_all(2, &ctx2).unwrap().collect();
        assert_eq!(all2.len(), 16);
        assert!(all2[0].is_zero());

        let ctx3 = f(3);
        assert_eq!(enumerate_all(2, &ctx3).unwrap().count(), 81);

        assert_eq!(enumerate_gl(2, &ctx2).unwrap().count(), 6);
        assert_eq!(enumerate_gl(3, &ctx2).unwrap().count(), 168);
        assert_eq!(enumerate_gl(1, &ctx3).unwrap().count(), 2);
    }

    #[test]
    fn mat_index_round_trip() {
        let ctx = f(3);
        for idx in [0u64, 1, 17, 80] {
            let m = Mat::from_index(2, &ctx, MatIndex(idx)).unwrap();
            assert_eq!(m.index(), MatIndex(idx));
        }
        assert!(Mat::from_index(2, &ctx, MatIndex(81)).is_err());
    }

    #[test]
    fn rank_normal_form_examples() {
        let ctx = f(2);
        let (_, _, r) = rank_normal_form(&Mat::identity(2, &ctx));
        assert_eq!(r, 2);
        let (_, _, r) = rank_normal_form(&Mat::zero(2, &ctx));
        assert_eq!(r, 0);
        let b = Mat::parse(&ctx, "0,1;0,0").unwrap();
        let (d, e, r) = rank_normal_form(&b);
        assert_eq!(r, 1);
        let check = d.mul(&b.transpose()).unwrap().mul(&e.inverse().unwrap()).unwrap();
        assert_eq!(check, Mat::partial_identity(2, &ctx, 1));
    }

    #[test]
    fn parse_round_trip_and_errors() {
        let ctx = f(5);
        let text = "0,1,2;3,4,0;1,1,1";
        let m = Mat::parse(&ctx, text).unwrap();
        assert_eq!(m.to_text(), text);
        assert_eq!(Mat::parse(&ctx, "0,1;2").unwrap_err(), Error::DimensionMismatch);
        assert!(Mat::parse(&ctx, "0,9;1,1").is_err());
    }

    #[test]
    fn dimension_and_field_mismatches() {
        let ctx = f(2);
        let a = Mat::identity(2, &ctx);
        let b = Mat::identity(3, &ctx);
        assert_eq!(a.mul(&b).unwrap_err(), Error::DimensionMismatch);
        let ctx3 = f(3);
        let c = Mat::identity(2, &ctx3);
        assert_eq!(a.add(&c).unwrap_err(), Error::MixedFields);
    }

    #[test]
    fn inverse_round_trip() {
        let ctx = f(5);
        let a = Mat::parse(&ctx, "1,2;3,4").unwrap();
        let ainv = a.inverse().unwrap();
        assert_eq!(a.mul(&ainv).unwrap(), Mat::identity(2, &ctx));
        let singular = Mat::parse(&ctx, "1,2;2,4").unwrap();
        assert_eq!(singular.inverse().unwrap_err(), Error::Singular);
    }
}
