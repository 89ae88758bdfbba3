//! Hyperplane sections of `GL_n(F_q)`: exact brute-force counts,
//! canonicalization to rank/shift form, and extremal-section search.
//!
//! A hyperplane is the locus `tr(A B^T) = c` for a nonzero matrix `B` and a
//! scalar `c`. Left-right translation `B -> D B E` by invertible `D`, `E`
//! permutes `GL_n`, so the section count depends on `B` only through
//! `r = rank(B)`. The dependence on the shift `c` is two-regime:
//!
//! * `c = 0`: the count is `f_r(n, q)` (the partial-trace count of
//!   [`crate::formulas::stanley_f`]);
//! * `c != 0`: scaling the section by units shows all nonzero shifts give
//!   one common count, `(gamma(n, q) - f_r(n, q)) / (q - 1)`.
//!
//! The two regimes genuinely differ: over `F_2` with `n = 2` the full-trace
//! section has 4 points at `c = 0` but only 2 at `c = 1`, and over `F_3` the
//! nonzero-shift count 15 of the full-trace section is not any `f_r` at all.
//! Minimum-distance computations only ever use `c = 0` sections, where the
//! maximal count is `f_2` and the minimal one is `f_1`.

use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::formulas::{gamma, stanley_f, QInt};
use crate::gf::{Felt, FieldCtx};
use crate::matrix::{enumerate_gl, space_size, Mat};
use crate::{Error, Result};

/// The locus `tr(A B^T) = c` in the matrix space, with `B` nonzero.
#[derive(Debug, Clone)]
pub struct Hyperplane {
    normal: Mat,
    shift: Felt,
}

impl Hyperplane {
    pub fn new(normal: Mat, shift: Felt) -> Result<Hyperplane> {
        if normal.is_zero() {
            return Err(Error::ZeroNormal);
        }
        if shift.ctx_id() != normal.ctx().id() {
            return Err(Error::MixedFields);
        }
        Ok(Hyperplane { normal, shift })
    }

    pub fn normal(&self) -> &Mat {
        &self.normal
    }

    pub fn shift(&self) -> Felt {
        self.shift
    }

    pub fn n(&self) -> usize {
        self.normal.n()
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.normal.ctx()
    }
}

/// Canonical form of a hyperplane section: only the rank of the normal and
/// the shift value influence the count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalSection {
    pub rank: usize,
    pub shift: Felt,
}

/// Exact `|H intersect GL_n(F_q)|` by full enumeration.
pub fn section_count(h: &Hyperplane) -> QInt {
    let target = h.shift.code();
    let normal_codes = h.normal.codes().to_vec();
    let count = enumerate_gl(h.n(), h.ctx())
        .expect("section enumeration within index range")
        .filter(|a| a.trace_form_code(&normal_codes) == target)
        .count();
    BigUint::from(count)
}

/// Reduce a hyperplane to `(rank(B), c)`.
///
/// The section count of the original hyperplane equals the count for the
/// rank-`r` idempotent normal with the same shift: `f_r(n, q)` when `c = 0`
/// and `(gamma - f_r) / (q - 1)` for every `c != 0`.
pub fn canonicalize(h: &Hyperplane) -> CanonicalSection {
    CanonicalSection { rank: h.normal.rank(), shift: h.shift }
}

/// Count of invertible matrices with `a_11 + ... + a_kk = 0`, by brute
/// force. Agrees with the closed form [`stanley_f`].
pub fn partial_trace_count(k: usize, n: usize, q: u64) -> Result<QInt> {
    if k < 1 || k > n {
        return Err(Error::OutOfRange("partial trace needs 1 <= k <= n"));
    }
    let ctx = FieldCtx::new(q)?;
    let count = enumerate_gl(n, &ctx)?
        .filter(|a| {
            let mut acc = 0u32;
            for i in 0..k {
                acc = ctx.addc(acc, a.code_at(i, i));
            }
            acc == 0
        })
        .count();
    Ok(BigUint::from(count))
}

/// How [`extremal_sections`] searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    /// Evaluate the closed forms only.
    Formula,
    /// Exhaust every `(B != 0, c)` pair, verify each observed count against
    /// the two-regime law, and cross-check the extrema against formula mode.
    /// With `full_shift_sweep` off and `q > 2`, only `c` in `{0, 1}` is
    /// swept; scaling `B` by units permutes the nonzero shifts, so no counts
    /// are missed.
    Oracle { full_shift_sweep: bool },
}

/// Extremal zero-shift section counts and the ranks attaining them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionExtrema {
    pub max_count: QInt,
    pub min_count: QInt,
    pub argmax_rank: usize,
    pub argmin_rank: usize,
}

/// Largest and smallest section counts over the hyperplanes through the
/// origin (`c = 0`); these are `f_2` and `f_1` at ranks 2 and 1. Oracle mode
/// is exhaustive over all `(B, c)` pairs and is limited to `n = 2, q <= 3`
/// and `n = 3, q = 2`.
pub fn extremal_sections(n: usize, q: u64, mode: SearchMode) -> Result<SectionExtrema> {
    if n < 2 {
        return Err(Error::OutOfRange("extremal sections need n >= 2"));
    }
    let formula = SectionExtrema {
        max_count: stanley_f(2, n, q)?,
        min_count: stanley_f(1, n, q)?,
        argmax_rank: 2,
        argmin_rank: 1,
    };
    let full_shift_sweep = match mode {
        SearchMode::Formula => return Ok(formula),
        SearchMode::Oracle { full_shift_sweep } => full_shift_sweep,
    };
    let oracle_ok = (n == 2 && q <= 3) || (n == 3 && q == 2);
    if !oracle_ok {
        return Err(Error::Infeasible(format!(
            "oracle sweep supports n=2 with q<=3 and n=3 with q=2, got n={n}, q={q}"
        )));
    }

    let ctx = FieldCtx::new(q)?;
    let points: Vec<Mat> = enumerate_gl(n, &ctx)?.collect();
    let zero_counts: Vec<BigUint> =
        (1..=n).map(|r| stanley_f(r, n, q)).collect::<Result<_>>()?;
    let total = gamma(n, q);
    let nonzero_counts: Vec<BigUint> = zero_counts
        .iter()
        .map(|f| (&total - f) / (q - 1))
        .collect();
    let shifts: Vec<u32> = if q > 2 && !full_shift_sweep {
        vec![0, 1]
    } else {
        (0..q as u32).collect()
    };

    let space = space_size(n, q).expect("oracle sizes fit u64");

    // (count, rank) folds; rank 0 marks "nothing seen yet". Ties prefer the
    // smaller rank, so the merge is commutative and associative and the
    // result is independent of how rayon partitions the range.
    fn fold_max(a: (u64, usize), b: (u64, usize)) -> (u64, usize) {
        match (a.1, b.1) {
            (0, _) => b,
            (_, 0) => a,
            _ if a.0 != b.0 => {
                if a.0 > b.0 {
                    a
                } else {
                    b
                }
            }
            _ => {
                if a.1 <= b.1 {
                    a
                } else {
                    b
                }
            }
        }
    }
    fn fold_min(a: (u64, usize), b: (u64, usize)) -> (u64, usize) {
        match (a.1, b.1) {
            (0, _) => b,
            (_, 0) => a,
            _ if a.0 != b.0 => {
                if a.0 < b.0 {
                    a
                } else {
                    b
                }
            }
            _ => {
                if a.1 <= b.1 {
                    a
                } else {
                    b
                }
            }
        }
    }

    // For each nonzero normal, check every swept shift against the expected
    // count and fold the zero-shift extrema.
    let (max, min) = (1..space)
        .into_par_iter()
        .map(|b_idx| {
            let b = Mat::from_index_unchecked(n, &ctx, b_idx);
            let r = b.rank();
            let b_codes = b.codes().to_vec();
            let mut zero_count = 0u64;
            for &c in &shifts {
                let count = points
                    .iter()
                    .filter(|a| a.trace_form_code(&b_codes) == c)
                    .count() as u64;
                let expected = if c == 0 { &zero_counts[r - 1] } else { &nonzero_counts[r - 1] };
                assert_eq!(
                    &BigUint::from(count),
                    expected,
                    "section count law failed at B={}, c={c}",
                    b.to_text()
                );
                if c == 0 {
                    zero_count = count;
                }
            }
            ((zero_count, r), (zero_count, r))
        })
        .reduce(
            || ((0, 0), (0, 0)),
            |(amax, amin), (bmax, bmin)| (fold_max(amax, bmax), fold_min(amin, bmin)),
        );

    let observed = SectionExtrema {
        max_count: BigUint::from(max.0),
        min_count: BigUint::from(min.0),
        argmax_rank: max.1,
        argmin_rank: min.1,
    };
    assert_eq!(
        (&observed.max_count, &observed.min_count),
        (&formula.max_count, &formula.min_count),
        "observed zero-shift extrema must match the closed forms"
    );
    assert_eq!((observed.argmax_rank, observed.argmin_rank), (2, 1));
    Ok(observed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn zero_normal_is_rejected() {
        let ctx = FieldCtx::new(2).unwrap();
        let zero = Mat::zero(2, &ctx);
        assert_eq!(Hyperplane::new(zero, ctx.zero()).unwrap_err(), Error::ZeroNormal);
    }

    #[test]
    fn section_count_examples() {
        let ctx = FieldCtx::new(2).unwrap();
        let e11 = Mat::matrix_unit(2, &ctx, 0, 0);
        let h = Hyperplane::new(e11, ctx.zero()).unwrap();
        assert_eq!(section_count(&h), big(2));

        let i = Mat::identity(2, &ctx);
        let h = Hyperplane::new(i, ctx.zero()).unwrap();
        assert_eq!(section_count(&h), big(4));
    }

    #[test]
    fn canonicalize_examples() {
        let ctx = FieldCtx::new(2).unwrap();
        let e11 = Mat::matrix_unit(2, &ctx, 0, 0);
        let h = Hyperplane::new(e11, ctx.zero()).unwrap();
        let cs = canonicalize(&h);
        assert_eq!((cs.rank, cs.shift), (1, ctx.zero()));
        assert_eq!(section_count(&h), stanley_f(1, 2, 2).unwrap());

        let i = Mat::identity(2, &ctx);
        let h = Hyperplane::new(i, ctx.one()).unwrap();
        assert_eq!(canonicalize(&h).rank, 2);
        // Nonzero shift: the count is (gamma - f_2)/(q - 1) = 2, not f_2 = 4.
        assert_eq!(section_count(&h), big(2));
    }

    #[test]
    fn nonzero_shift_counts_follow_the_second_regime() {
        // Over F_3 the full-trace section with nonzero shift counts
        // (48 - 18)/2 = 15, which is not any f_r.
        let ctx = FieldCtx::new(3).unwrap();
        let i = Mat::identity(2, &ctx);
        for c in 1..3 {
            let h = Hyperplane::new(i.clone(), ctx.felt(c)).unwrap();
            assert_eq!(section_count(&h), big(15));
        }
        // Rank-1 normals with nonzero shift count (48 - 12)/2 = 18.
        let e11 = Mat::matrix_unit(2, &ctx, 0, 0);
        let h = Hyperplane::new(e11, ctx.felt(2)).unwrap();
        assert_eq!(section_count(&h), big(18));
    }

    #[test]
    fn partial_trace_examples() {
        assert_eq!(partial_trace_count(1, 2, 2).unwrap(), big(2));
        assert_eq!(partial_trace_count(2, 3, 2).unwrap(), big(88));
        assert_eq!(partial_trace_count(3, 3, 2).unwrap(), big(80));
        assert!(partial_trace_count(0, 2, 2).is_err());
        assert!(partial_trace_count(3, 2, 2).is_err());
    }

    #[test]
    fn extremal_oracle_small() {
        let e = extremal_sections(2, 2, SearchMode::Oracle { full_shift_sweep: true }).unwrap();
        assert_eq!(e.max_count, big(4));
        assert_eq!(e.min_count, big(2));
        assert_eq!((e.argmax_rank, e.argmin_rank), (2, 1));

        let f = extremal_sections(2, 2, SearchMode::Formula).unwrap();
        assert_eq!(e, f);

        assert!(matches!(
            extremal_sections(3, 3, SearchMode::Oracle { full_shift_sweep: false }),
            Err(Error::Infeasible(_))
        ));
    }
}
