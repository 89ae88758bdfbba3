//! Construction of the evaluation code on the invertible matrices.
//!
//! The points are the `gamma(n, q)` invertible matrices in canonical
//! [`MatIndex`](crate::matrix::MatIndex) order. Messages are coefficient
//! vectors of linear forms on the matrix space: a message reshapes row-major
//! to a matrix `B`, and its codeword evaluates `tr(A B^T)` at every point
//! `A`. The generator matrix row for the coordinate functional `a_ij` is
//! therefore exactly the `(i, j)` entries of the points, and its rank is the
//! full `n^2` (no hyperplane contains every invertible matrix).
//!
//! The weight of a nonzero codeword is `gamma(n, q)` minus the zero-shift
//! section count of its reshaped message, so the minimum distance can be
//! computed three independent ways: exhaustive codeword scan (scalar classes
//! only, since scaling preserves weight), hyperplane counting over the rank
//! idempotents, and the closed formula.
//!
//! Over `F_2` with `n = 2` the code is the `[6, 4, 2]` code whose sixteen
//! codewords all have even weight:
//!
//! ```
//! use glcode::code::{all_codeword_vectors, build_code};
//!
//! // Every codeword is orthogonal to the all-ones vector, i.e. the code is
//! // a subcode of the dual of the length-6 repetition code.
//! let code = build_code(2, 2).unwrap();
//! for v in all_codeword_vectors(&code).unwrap() {
//!     let weight: u32 = v.iter().sum();
//!     assert_eq!(weight % 2, 0);
//! }
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;
use std::sync::OnceLock;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::formulas::{code_params, gamma, CodeParams, QInt};
use crate::gf::{Felt, FieldCtx};
use crate::matrix::{enumerate_gl, space_size, Mat};
use crate::{Error, Result};

/// Default ceiling on both the number of code columns and the number of
/// scalar classes scanned by weight enumeration.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The evaluation code on `GL_n(F_q)`.
pub struct EvaluationCode {
    n: usize,
    ctx: Arc<FieldCtx>,
    points: Vec<Mat>,
    budget: u64,
    params: OnceLock<CodeParams>,
}

/// One codeword: the values of a linear form at every point, in canonical
/// column order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    symbols: Vec<Felt>,
    weight: usize,
}

impl Codeword {
    pub fn symbols(&self) -> &[Felt] {
        &self.symbols
    }

    /// Number of nonzero symbols.
    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn to_codes(&self) -> Vec<u32> {
        self.symbols.iter().map(|s| s.code()).collect()
    }
}

/// Exact weight enumerator: `weight -> number of codewords of that weight`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: BTreeMap<usize, QInt>,
    total: QInt,
}

impl WeightDistribution {
    pub fn counts(&self) -> &BTreeMap<usize, QInt> {
        &self.counts
    }

    /// Sum of all counts, `q^(n^2)`.
    pub fn total(&self) -> &QInt {
        &self.total
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.counts.keys().find(|&&w| w > 0).copied()
    }
}

impl EvaluationCode {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.ctx.q() as u64
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    /// The evaluation points in canonical order; the code length is their
    /// number, `gamma(n, q)`.
    pub fn points(&self) -> &[Mat] {
        &self.points
    }

    pub fn length(&self) -> usize {
        self.points.len()
    }

    pub fn dimension(&self) -> usize {
        self.n * self.n
    }

    /// Exact parameters from the closed forms, computed once on demand.
    pub fn params(&self) -> &CodeParams {
        self.params.get_or_init(|| {
            code_params(self.n, self.q()).expect("build_code enforces n >= 2")
        })
    }

    /// Generator matrix rows: row `i*n + j` holds the `(i, j)` entry of
    /// every point.
    pub fn generator_rows(&self) -> Vec<Vec<u32>> {
        let k = self.dimension();
        let mut rows = vec![Vec::with_capacity(self.points.len()); k];
        for p in &self.points {
            for (t, row) in rows.iter_mut().enumerate() {
                row.push(p.codes()[t]);
            }
        }
        rows
    }

    /// Rank of the generator matrix (always `n^2`; asserted at build time
    /// and recomputable here).
    pub fn generator_rank(&self) -> usize {
        let mut rows = self.generator_rows();
        crate::matrix::row_echelon_rank(&self.ctx, &mut rows)
    }

    /// Text form: one generator row per line, symbols space-separated.
    pub fn generator_text(&self) -> String {
        self.generator_rows()
            .iter()
            .map(|row| {
                row.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    fn message_space(&self) -> u64 {
        space_size(self.n, self.q()).expect("budget check bounds the space")
    }

    /// Codeword symbols for a message given as raw codes.
    fn encode_codes(&self, message: &[u32]) -> Vec<u32> {
        self.points
            .iter()
            .map(|p| p.trace_form_code(message))
            .collect()
    }
}

/// Build the code with the default budget.
pub fn build_code(n: usize, q: u64) -> Result<EvaluationCode> {
    build_code_with_budget(n, q, DEFAULT_BUDGET)
}

/// Build the code, refusing point sets larger than `max_columns`.
pub fn build_code_with_budget(n: usize, q: u64, max_columns: u64) -> Result<EvaluationCode> {
    let ctx = FieldCtx::new(q)?;
    build_code_with_ctx(n, &ctx, max_columns)
}

/// Build the code over an explicit field context (for alternate defining
/// polynomials; the counts do not depend on the presentation, the symbol
/// encodings do).
pub fn build_code_with_ctx(
    n: usize,
    ctx: &Arc<FieldCtx>,
    max_columns: u64,
) -> Result<EvaluationCode> {
    if n < 2 {
        return Err(Error::OutOfRange("evaluation codes need n >= 2"));
    }
    let q = ctx.q() as u64;
    let columns = gamma(n, q);
    if columns > BigUint::from(max_columns) {
        return Err(Error::Infeasible(format!(
            "gamma({n}, {q}) = {columns} exceeds the column budget {max_columns}"
        )));
    }
    if space_size(n, q).is_none() {
        return Err(Error::Infeasible(format!(
            "q^(n^2) overflows the enumeration index for n={n}, q={q}"
        )));
    }
    let points: Vec<Mat> = enumerate_gl(n, ctx)?.collect();
    assert_eq!(BigUint::from(points.len()), columns, "point count must equal gamma(n, q)");
    let code = EvaluationCode {
        n,
        ctx: Arc::clone(ctx),
        points,
        budget: max_columns,
        params: OnceLock::new(),
    };
    assert_eq!(code.generator_rank(), n * n, "the generator matrix has full rank n^2");
    Ok(code)
}

/// Evaluate the linear form with the given coefficients (row-major, length
/// `n^2`) at every point.
pub fn encode(code: &EvaluationCode, message: &[Felt]) -> Result<Codeword> {
    if message.len() != code.dimension() {
        return Err(Error::DimensionMismatch);
    }
    if message.iter().any(|m| m.ctx_id() != code.ctx.id()) {
        return Err(Error::MixedFields);
    }
    let codes: Vec<u32> = message.iter().map(|m| m.code()).collect();
    let symbols: Vec<Felt> = code
        .encode_codes(&codes)
        .into_iter()
        .map(|c| code.ctx.felt(c))
        .collect();
    let weight = symbols.iter().filter(|s| !s.is_zero()).count();
    Ok(Codeword { symbols, weight })
}

/// Scan one representative of every scalar class of nonzero messages
/// (weight is invariant under scaling). Representatives are the messages
/// whose leading base-`q` digit is 1, i.e. the index ranges
/// `q^t .. 2*q^t`; each stands for `q - 1` messages.
fn scan_class_weights(code: &EvaluationCode) -> Result<BTreeMap<usize, u64>> {
    let q = code.q();
    let space = code.message_space();
    let classes = (space - 1) / (q - 1);
    if classes > code.budget {
        return Err(Error::Infeasible(format!(
            "{classes} scalar classes exceed the scan budget {}",
            code.budget
        )));
    }
    let k = code.dimension();
    let mut merged: BTreeMap<usize, u64> = BTreeMap::new();
    let mut power = 1u64;
    for _ in 0..k {
        let hi = (2 * power).min(space);
        let partial = (power..hi)
            .into_par_iter()
            .fold(BTreeMap::<usize, u64>::new, |mut acc, idx| {
                let mut message = vec![0u32; k];
                let mut v = idx;
                for slot in message.iter_mut().rev() {
                    *slot = (v % q) as u32;
                    v /= q;
                }
                let weight = code
                    .points
                    .iter()
                    .filter(|p| p.trace_form_code(&message) != 0)
                    .count();
                *acc.entry(weight).or_insert(0) += 1;
                acc
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (w, c) in b {
                    *a.entry(w).or_insert(0) += c;
                }
                a
            });
        for (w, c) in partial {
            *merged.entry(w).or_insert(0) += c;
        }
        power *= q;
        if power >= space {
            break;
        }
    }
    Ok(merged)
}

/// Exact weight distribution over all `q^(n^2)` messages.
pub fn weight_distribution(code: &EvaluationCode) -> Result<WeightDistribution> {
    let q = code.q();
    let class_counts = scan_class_weights(code)?;
    let mut counts: BTreeMap<usize, QInt> = BTreeMap::new();
    counts.insert(0, BigUint::from(1u32));
    for (w, c) in class_counts {
        *counts.entry(w).or_insert_with(|| BigUint::from(0u32)) +=
            BigUint::from(c) * BigUint::from(q - 1);
    }
    let total = BigUint::from(q).pow(code.dimension() as u32);
    let check: BigUint = counts.values().sum();
    assert_eq!(check, total, "weight counts must cover the whole message space");
    Ok(WeightDistribution { counts, total })
}

/// Which route `min_distance` takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceMethod {
    /// Scan every scalar class of nonzero codewords.
    Exhaustive,
    /// `gamma - max_r |{A : tr(A e_r) = 0}|` over the rank idempotents
    /// `e_1, ..., e_n` (zero-shift hyperplane counting on the point set).
    Hyperplane,
    /// The closed formula.
    Formula,
}

/// Minimum distance by the requested route; all three agree.
pub fn min_distance(code: &EvaluationCode, method: DistanceMethod) -> Result<QInt> {
    match method {
        DistanceMethod::Exhaustive => {
            let class_counts = scan_class_weights(code)?;
            let min = class_counts
                .keys()
                .find(|&&w| w > 0)
                .copied()
                .expect("a code with full-rank generator has nonzero codewords");
            Ok(BigUint::from(min))
        }
        DistanceMethod::Hyperplane => {
            let n = code.n;
            let max_section = (1..=n)
                .map(|r| {
                    let e_r = Mat::partial_identity(n, &code.ctx, r);
                    code.points
                        .iter()
                        .filter(|p| p.trace_form_code(e_r.codes()) == 0)
                        .count()
                })
                .max()
                .expect("n >= 2");
            Ok(BigUint::from(code.length() - max_section))
        }
        DistanceMethod::Formula => Ok(code.params().min_distance.clone()),
    }
}

/// Every codeword as its symbol-encoding vector, message index order.
/// Intended for small codes; gated by the build budget.
pub fn all_codeword_vectors(code: &EvaluationCode) -> Result<Vec<Vec<u32>>> {
    let space = code.message_space();
    if space > code.budget {
        return Err(Error::Infeasible(format!(
            "{space} messages exceed the scan budget {}",
            code.budget
        )));
    }
    let k = code.dimension();
    let q = code.q();
    let mut out = Vec::with_capacity(space as usize);
    for idx in 0..space {
        let mut message = vec![0u32; k];
        let mut v = idx;
        for slot in message.iter_mut().rev() {
            *slot = (v % q) as u32;
            v /= q;
        }
        out.push(code.encode_codes(&message));
    }
    Ok(out)
}

/// All column permutations carrying the first codeword set onto the second
/// (as sets of symbol vectors). Intended for short codes; the search is a
/// plain sweep over all `length!` permutations and refuses lengths above 8.
///
/// The two-sided translations and the transpose map of the point set induce
/// column permutations that preserve the codeword set, so when a match
/// exists it is never unique; callers should expect a whole family.
pub fn column_matchings(ours: &[Vec<u32>], reference: &[Vec<u32>]) -> Result<Vec<Vec<usize>>> {
    use std::collections::BTreeSet;

    if ours.is_empty() || reference.is_empty() {
        return Err(Error::OutOfRange("empty codeword sets cannot be matched"));
    }
    let len = ours[0].len();
    if len > 8 {
        return Err(Error::Infeasible(format!(
            "column matching sweeps length! permutations; length {len} > 8"
        )));
    }
    let target: BTreeSet<&[u32]> = reference.iter().map(|v| v.as_slice()).collect();
    let mut found = Vec::new();
    for perm in crate::bruhat::Perm::all(len) {
        let mapped: BTreeSet<Vec<u32>> = ours
            .iter()
            .map(|v| (0..len).map(|t| v[perm.apply(t)]).collect())
            .collect();
        if mapped.len() == target.len()
            && mapped.iter().all(|v| target.contains(v.as_slice()))
        {
            found.push(perm.images().to_vec());
        }
    }
    Ok(found)
}

/// The sixteen codewords of the binary `n = 2` code `[6, 4, 2]` in one
/// fixed published column order. The verification harness matches this set
/// against the canonical column order via [`column_matchings`].
pub const REFERENCE_CODEWORDS_2_2: [[u32; 6]; 16] = [
    [1, 1, 1, 1, 0, 0],
    [1, 0, 0, 0, 1, 0],
    [0, 1, 0, 0, 0, 1],
    [0, 0, 1, 0, 1, 0],
    [0, 0, 0, 1, 0, 1],
    [0, 0, 1, 1, 1, 1],
    [0, 1, 1, 0, 1, 1],
    [1, 0, 0, 1, 1, 1],
    [1, 1, 0, 0, 1, 1],
    [1, 0, 1, 0, 0, 0],
    [0, 1, 0, 1, 0, 0],
    [1, 1, 1, 0, 0, 1],
    [1, 1, 0, 1, 1, 0],
    [1, 0, 1, 1, 0, 1],
    [0, 1, 1, 1, 1, 0],
    [0, 0, 0, 0, 0, 0],
];
