//! LPU factorization of invertible matrices and the cell structure it
//! induces.
//!
//! Every invertible `A` factors as `A = L * P_w * U` with `L` lower
//! triangular invertible, `U` upper triangular invertible, and `P_w` a
//! permutation matrix; the permutation `w` is unique (the `L`, `U` pair is
//! not). Permutation matrices use the column convention
//! `(P_w)[w(j)][j] = 1`, i.e. `P_w` maps the `j`-th basis vector to the
//! `w(j)`-th.
//!
//! Grouping `GL_n(F_q)` by `w` partitions it into cells of size
//! `(q-1)^n * q^(n(n-1) - l(w))`, where `l` is the inversion count. The
//! permutation part is pinned down without reference to any elimination
//! order by leading-block ranks: `rank(A[..i, ..j]) = #{l <= j : w(l) <= i}`
//! (these ranks are invariant under lower-left and upper-right translation).
//! [`bruhat_decompose`] extracts `w` during elimination and re-derives it
//! from the rank characterization, asserting agreement, then verifies
//! `L * P_w * U = A` by multiplication before returning.
//!
//! The locus `a_11 = 0` meets exactly the cells with `w(1) != 1`: for
//! lower-triangular `b'` and upper-triangular `b`, the `(1,1)` entry of
//! `b' * P_w * b` is `b'_11 * b_11 * (P_w)_11`, a unit times `(P_w)_11`.
//! Summing those cell sizes gives `f_1(n, q)`, the minimal zero-shift
//! section count. The big cell (`w = id`) has its complement of size
//! `gamma(n,q) - (q-1)^n q^(n(n-1))`; for `n = 2` that complement count
//! equals `f_1(2, q)` for every `q`, but for `n >= 3` the two differ (at
//! `n = 3, q = 2`: 104 versus 72). [`complement_report`] measures both numbers
//! and reports whether they agree rather than asserting either way.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigUint;

use crate::formulas::{gamma, stanley_f, QInt};
use crate::gf::FieldCtx;
use crate::matrix::{enumerate_gl, Mat};
use crate::sections::partial_trace_count;
use crate::{Error, Result};

/// A permutation of `{1, ..., n}`, stored as 0-based images.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    /// Build from 0-based images; must be a bijection on `0..n`.
    pub fn new(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n || seen[v] {
                return Err(Error::OutOfRange("not a permutation"));
            }
            seen[v] = true;
        }
        Ok(Perm { images })
    }

    /// Build from 1-based one-line notation `w(1), ..., w(n)`.
    pub fn from_one_line(line: &[usize]) -> Result<Perm> {
        if line.contains(&0) {
            return Err(Error::OutOfRange("one-line notation is 1-based"));
        }
        Perm::new(line.iter().map(|&v| v - 1).collect())
    }

    pub fn identity(n: usize) -> Perm {
        Perm { images: (0..n).collect() }
    }

    /// The order-reversing longest element `(n, n-1, ..., 1)`.
    pub fn longest(n: usize) -> Perm {
        Perm { images: (0..n).rev().collect() }
    }

    /// The simple transposition `s_i` exchanging `i` and `i+1` (1-based,
    /// `1 <= i <= n-1`).
    pub fn simple(n: usize, i: usize) -> Result<Perm> {
        if i < 1 || i >= n {
            return Err(Error::OutOfRange("simple transposition needs 1 <= i <= n-1"));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i - 1, i);
        Ok(Perm { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of 0-based `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &v)| j == v)
    }

    /// Coxeter length: the inversion count.
    pub fn length(&self) -> usize {
        let n = self.n();
        let mut inv = 0;
        for a in 0..n {
            for b in a + 1..n {
                if self.images[a] > self.images[b] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// `(self o other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm { images: other.images.iter().map(|&j| self.images[j]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for (j, &v) in self.images.iter().enumerate() {
            images[v] = j;
        }
        Perm { images }
    }

    /// The permutation matrix `P_w` with `(P_w)[w(j)][j] = 1`.
    pub fn matrix(&self, ctx: &Arc<FieldCtx>) -> Mat {
        let n = self.n();
        let mut codes = vec![0u32; n * n];
        for (j, &i) in self.images.iter().enumerate() {
            codes[i * n + j] = 1;
        }
        Mat::from_codes(n, ctx, &codes).expect("a permutation matrix is well formed")
    }

    /// All permutations of `0..n` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        build_perms(n, &mut current, &mut used, &mut out);
        out
    }
}

fn build_perms(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
    if current.len() == n {
        out.push(Perm { images: current.clone() });
        return;
    }
    for v in 0..n {
        if !used[v] {
            used[v] = true;
            current.push(v);
            build_perms(n, current, used, out);
            current.pop();
            used[v] = false;
        }
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let line: Vec<String> = self.one_line().iter().map(|v| v.to_string()).collect();
        write!(f, "({})", line.join(","))
    }
}

/// Result of [`bruhat_decompose`]: `lower * perm.matrix() * upper` equals
/// the input exactly.
#[derive(Debug, Clone)]
pub struct BruhatFactorization {
    pub lower: Mat,
    pub perm: Perm,
    pub upper: Mat,
}

/// The permutation part of an invertible matrix, from leading-block ranks
/// alone: `w(j)` is the smallest `i` with
/// `rank(A[..i, ..j]) - rank(A[..i, ..j-1]) = 1`.
pub fn permutation_from_ranks(a: &Mat) -> Result<Perm> {
    if a.det().is_zero() {
        return Err(Error::Singular);
    }
    let n = a.n();
    let mut images = vec![0usize; n];
    for j in 1..=n {
        let mut image = None;
        for i in 1..=n {
            if a.leading_block_rank(i, j) - a.leading_block_rank(i, j - 1) == 1 {
                image = Some(i - 1);
                break;
            }
        }
        images[j - 1] = image.expect("every column of an invertible matrix adds a pivot");
    }
    Perm::new(images)
}

/// Factor an invertible matrix as `L * P_w * U`.
///
/// Elimination sweeps columns left to right; in each column the topmost
/// not-yet-pivoted nonzero row becomes the pivot, rows below it are cleared
/// with downward row operations (folded into `L`) and the pivot row is
/// cleared rightward with column operations (folded into `U`). The pivot
/// permutation must match [`permutation_from_ranks`], and the product
/// `L * P_w * U` is compared with the input before returning.
pub fn bruhat_decompose(a: &Mat) -> Result<BruhatFactorization> {
    if a.det().is_zero() {
        return Err(Error::Singular);
    }
    let n = a.n();
    let ctx = a.ctx().clone();
    let mut m = a.codes().to_vec();
    let mut row_ops = Mat::identity(n, &ctx).codes().to_vec();
    let mut col_ops = Mat::identity(n, &ctx).codes().to_vec();
    let mut used = vec![false; n];
    let mut pivot_row_of_col = vec![0usize; n];

    for j in 0..n {
        let i = (0..n)
            .find(|&i| !used[i] && m[i * n + j] != 0)
            .expect("an invertible matrix always offers a pivot");
        used[i] = true;
        pivot_row_of_col[j] = i;

        let pivot = m[i * n + j];
        if pivot != 1 {
            let pinv = ctx.invc(pivot);
            for t in 0..n {
                m[i * n + t] = ctx.mulc(m[i * n + t], pinv);
                row_ops[i * n + t] = ctx.mulc(row_ops[i * n + t], pinv);
            }
        }
        // Clear below the pivot: row_k -= m[k][j] * row_i for k > i.
        for k in i + 1..n {
            let factor = m[k * n + j];
            if factor == 0 {
                continue;
            }
            for t in 0..n {
                let s = ctx.mulc(factor, m[i * n + t]);
                m[k * n + t] = ctx.subc(m[k * n + t], s);
                let s = ctx.mulc(factor, row_ops[i * n + t]);
                row_ops[k * n + t] = ctx.subc(row_ops[k * n + t], s);
            }
        }
        // Clear to the right of the pivot: col_t -= m[i][t] * col_j for
        // t > j. Column j is e_i at this point, so only row i changes.
        for t in j + 1..n {
            let factor = m[i * n + t];
            if factor == 0 {
                continue;
            }
            for r in 0..n {
                let s = ctx.mulc(factor, m[r * n + j]);
                m[r * n + t] = ctx.subc(m[r * n + t], s);
                let s = ctx.mulc(factor, col_ops[r * n + j]);
                col_ops[r * n + t] = ctx.subc(col_ops[r * n + t], s);
            }
        }
    }

    let perm = Perm::new(pivot_row_of_col)?;
    let from_ranks = permutation_from_ranks(a)?;
    assert_eq!(
        perm, from_ranks,
        "pivot permutation must agree with the rank characterization"
    );

    let row_mat = Mat::from_codes(n, &ctx, &row_ops)?;
    let col_mat = Mat::from_codes(n, &ctx, &col_ops)?;
    let lower = row_mat.inverse().expect("row-operation product is invertible");
    let upper = col_mat.inverse().expect("column-operation product is invertible");
    assert!(lower.is_lower_triangular() && !lower.det().is_zero());
    assert!(upper.is_upper_triangular() && !upper.det().is_zero());
    let product = lower.mul(&perm.matrix(&ctx))?.mul(&upper)?;
    assert_eq!(product, *a, "factorization must reproduce the input");
    Ok(BruhatFactorization { lower, perm, upper })
}

/// Size of the cell of `w`: `(q-1)^n * q^(n(n-1) - l(w))`. Summed over all
/// of `S_n` this gives `gamma(n, q)`.
pub fn cell_count(w: &Perm, q: u64) -> QInt {
    let n = w.n() as u64;
    let exp = n * (n - 1) - w.length() as u64;
    (BigUint::from(q) - 1u32).pow(n as u32) * BigUint::from(q).pow(exp as u32)
}

/// Whether an invertible matrix lies in the big cell (`w = id`), which is
/// equivalent to all leading principal minors being nonzero. Both
/// characterizations are computed and must agree.
pub fn big_cell_membership(a: &Mat) -> Result<bool> {
    if a.det().is_zero() {
        return Err(Error::Singular);
    }
    let via_minors = (1..=a.n()).all(|k| !a.principal_submatrix(k).det().is_zero());
    let via_perm = bruhat_decompose(a)?.perm.is_identity();
    assert_eq!(via_minors, via_perm, "minor and permutation tests must agree");
    Ok(via_minors)
}

/// Brute-force bucket sizes of `GL_n(F_q)` by permutation part.
pub fn cell_sizes(n: usize, q: u64) -> Result<BTreeMap<Perm, u64>> {
    check_bucket_feasible(n, q)?;
    let ctx = FieldCtx::new(q)?;
    let mut sizes: BTreeMap<Perm, u64> = BTreeMap::new();
    for a in enumerate_gl(n, &ctx)? {
        let w = bruhat_decompose(&a)?.perm;
        *sizes.entry(w).or_insert(0) += 1;
    }
    Ok(sizes)
}

/// The permutations whose whole cell lies inside the locus `a_11 = 0`,
/// found by bucketing every invertible matrix and testing every member.
/// The result is exactly `{w : w(1) != 1}`, and the matching cell sizes sum
/// to `f_1(n, q)`.
pub fn a11_zero_cell_spectrum(n: usize, q: u64) -> Result<BTreeSet<Perm>> {
    check_bucket_feasible(n, q)?;
    let ctx = FieldCtx::new(q)?;
    let mut contained: BTreeMap<Perm, bool> = BTreeMap::new();
    for a in enumerate_gl(n, &ctx)? {
        let w = bruhat_decompose(&a)?.perm;
        let inside = a.code_at(0, 0) == 0;
        contained.entry(w).and_modify(|c| *c &= inside).or_insert(inside);
    }
    Ok(contained.into_iter().filter(|(_, c)| *c).map(|(w, _)| w).collect())
}

fn check_bucket_feasible(n: usize, q: u64) -> Result<()> {
    if n > 3 || q > 3 {
        return Err(Error::Infeasible(format!(
            "exhaustive cell bucketing supports n <= 3 and q <= 3, got n={n}, q={q}"
        )));
    }
    Ok(())
}

/// How [`complement_report`] obtains its two cardinalities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportMode {
    /// Closed forms: complement `gamma - (q-1)^n q^(n(n-1))`, minimum
    /// section `f_1(n, q)`.
    Formula,
    /// Brute force (`n <= 3`, `q <= 3`): count matrices outside the big cell
    /// by leading minors, count the `a_11 = 0` section directly, and check
    /// both against the closed forms.
    Oracle,
}

/// Side-by-side comparison of the big-cell complement size and the minimal
/// zero-shift hyperplane-section count. Nothing is asserted about their
/// equality; the function measures it. They agree for `n = 2` (both are
/// `q(q-1)^2`) and differ for `n >= 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplementReport {
    pub complement_count: QInt,
    pub min_section_count: QInt,
    pub equal: bool,
}

pub fn complement_report(n: usize, q: u64, mode: ReportMode) -> Result<ComplementReport> {
    if n < 2 {
        return Err(Error::OutOfRange("report needs n >= 2"));
    }
    let big_cell =
        (BigUint::from(q) - 1u32).pow(n as u32) * BigUint::from(q).pow((n * (n - 1)) as u32);
    let complement = gamma(n, q) - big_cell;
    let min_section = stanley_f(1, n, q)?;
    if mode == ReportMode::Oracle {
        check_bucket_feasible(n, q)?;
        let ctx = FieldCtx::new(q)?;
        let mut outside = 0u64;
        for a in enumerate_gl(n, &ctx)? {
            if !big_cell_membership(&a)? {
                outside += 1;
            }
        }
        assert_eq!(
            BigUint::from(outside),
            complement,
            "measured big-cell complement must match the closed form"
        );
        let brute_min = partial_trace_count(1, n, q)?;
        assert_eq!(
            brute_min, min_section,
            "measured minimal section must match the closed form"
        );
    }
    let equal = complement == min_section;
    Ok(ComplementReport { complement_count: complement, min_section_count: min_section, equal })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn perm_lengths() {
        assert_eq!(Perm::identity(4).length(), 0);
        assert_eq!(Perm::longest(3).length(), 3);
        assert_eq!(Perm::simple(3, 1).unwrap().length(), 1);
        assert_eq!(Perm::longest(5).length(), 10);
    }

    #[test]
    fn perm_validation() {
        assert!(Perm::new(vec![0, 2, 1]).is_ok());
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3, 1]).is_err());
        assert_eq!(Perm::from_one_line(&[2, 1, 3]).unwrap(), Perm::new(vec![1, 0, 2]).unwrap());
    }

    #[test]
    fn decompose_identity() {
        let ctx = FieldCtx::new(2).unwrap();
        let i = Mat::identity(3, &ctx);
        let f = bruhat_decompose(&i).unwrap();
        assert!(f.perm.is_identity());
    }

    #[test]
    fn decompose_antidiagonal_is_longest() {
        let ctx = FieldCtx::new(2).unwrap();
        let a = Mat::parse(&ctx, "0,0,1;0,1,0;1,0,0").unwrap();
        let f = bruhat_decompose(&a).unwrap();
        assert_eq!(f.perm, Perm::longest(3));
    }

    #[test]
    fn decompose_swap_is_simple() {
        let ctx = FieldCtx::new(2).unwrap();
        let a = Mat::parse(&ctx, "0,1;1,0").unwrap();
        let f = bruhat_decompose(&a).unwrap();
        assert_eq!(f.perm, Perm::simple(2, 1).unwrap());
    }

    #[test]
    fn lower_triangular_matrix_sits_in_the_big_cell() {
        // The leading-block rank characterization must classify a lower
        // unitriangular matrix as w = id even though its southwest corner
        // is full.
        let ctx = FieldCtx::new(2).unwrap();
        let a = Mat::parse(&ctx, "1,0;1,1").unwrap();
        assert_eq!(permutation_from_ranks(&a).unwrap(), Perm::identity(2));
        let f = bruhat_decompose(&a).unwrap();
        assert!(f.perm.is_identity());
        assert!(big_cell_membership(&a).unwrap());
    }

    #[test]
    fn cell_count_examples() {
        assert_eq!(cell_count(&Perm::identity(2), 2), big(4));
        assert_eq!(cell_count(&Perm::simple(2, 1).unwrap(), 2), big(2));
        let total: BigUint = Perm::all(3).iter().map(|w| cell_count(w, 2)).sum();
        assert_eq!(total, gamma(3, 2));
    }

    #[test]
    fn big_cell_examples() {
        let ctx = FieldCtx::new(2).unwrap();
        assert!(big_cell_membership(&Mat::identity(2, &ctx)).unwrap());
        let swap = Mat::parse(&ctx, "0,1;1,0").unwrap();
        assert!(!big_cell_membership(&swap).unwrap());
        let ctx3 = FieldCtx::new(3).unwrap();
        let singular = Mat::parse(&ctx3, "1,2;2,1").unwrap(); // det = 1 - 4 = 0 mod 3
        assert_eq!(big_cell_membership(&singular).unwrap_err(), Error::Singular);
    }

    #[test]
    fn h0_spectrum_small() {
        let spectrum = a11_zero_cell_spectrum(2, 2).unwrap();
        let expected: BTreeSet<Perm> = [Perm::simple(2, 1).unwrap()].into_iter().collect();
        assert_eq!(spectrum, expected);
        let total: BigUint = spectrum.iter().map(|w| cell_count(w, 2)).sum();
        assert_eq!(total, stanley_f(1, 2, 2).unwrap());
    }

    #[test]
    fn complement_report_examples() {
        let r = complement_report(2, 2, ReportMode::Oracle).unwrap();
        assert_eq!((r.complement_count, r.min_section_count, r.equal), (big(2), big(2), true));
        let r = complement_report(3, 2, ReportMode::Oracle).unwrap();
        assert_eq!(
            (r.complement_count, r.min_section_count, r.equal),
            (big(104), big(72), false)
        );
        assert!(matches!(
            complement_report(3, 5, ReportMode::Oracle),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn singular_input_is_rejected() {
        let ctx = FieldCtx::new(2).unwrap();
        let z = Mat::zero(2, &ctx);
        assert_eq!(bruhat_decompose(&z).unwrap_err(), Error::Singular);
        assert_eq!(permutation_from_ranks(&z).unwrap_err(), Error::Singular);
    }
}
