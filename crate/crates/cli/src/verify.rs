//! The `verify` subcommand: run the invariant suites of every module at the
//! requested scale and print a report table.
//!
//! Checks come in three kinds: assertive checks (PASS/FAIL, failures set
//! exit code 1), informational measurements (INFO, never failing), and
//! checks skipped because they are out of range for the requested `(n, q)`
//! (SKIP). A request whose core enumerations are infeasible exits 3 before
//! running anything.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use glcode::bruhat::{
    big_cell_membership, bruhat_decompose, cell_count, cell_sizes, a11_zero_cell_spectrum,
    complement_report, Perm, ReportMode,
};
use glcode::code::{
    all_codeword_vectors, build_code_with_budget, column_matchings, encode, min_distance,
    weight_distribution, DistanceMethod, REFERENCE_CODEWORDS_2_2,
};
use glcode::formulas::{
    code_params, extremal_k, gamma, gamma_recurrence_check, griesmer_defect, singleton_defect,
    stanley_f,
};
use glcode::matrix::{enumerate_gl, space_size, Mat, MatIndex};
use glcode::sections::{partial_trace_count, section_count, Hyperplane};
use glcode::{Error, FieldCtx, QInt as BigUint, Result};

enum Status {
    Pass,
    Fail,
    Info,
    Skip,
}

pub struct Report {
    pub text: String,
    pub failed: usize,
}

struct Reporter {
    lines: Vec<(String, Status, String)>,
}

impl Reporter {
    fn new() -> Self {
        Reporter { lines: Vec::new() }
    }

    fn record(&mut self, name: &str, status: Status, detail: String) {
        self.lines.push((name.to_string(), status, detail));
    }

    fn check(&mut self, name: &str, outcome: std::result::Result<String, String>) {
        match outcome {
            Ok(detail) => self.record(name, Status::Pass, detail),
            Err(detail) => self.record(name, Status::Fail, detail),
        }
    }

    fn finish(self) -> Report {
        let width = self.lines.iter().map(|(n, _, _)| n.len()).max().unwrap_or(0);
        let mut text = String::new();
        let mut failed = 0;
        for (name, status, detail) in &self.lines {
            let tag = match status {
                Status::Pass => "PASS",
                Status::Fail => {
                    failed += 1;
                    "FAIL"
                }
                Status::Info => "INFO",
                Status::Skip => "SKIP",
            };
            let _ = writeln!(text, "{name:<width$}  {tag}  {detail}");
        }
        let passed = self
            .lines
            .iter()
            .filter(|(_, s, _)| matches!(s, Status::Pass))
            .count();
        let _ = writeln!(
            text,
            "RESULT: {} ({passed} passed, {failed} failed, {} other)",
            if failed == 0 { "PASS" } else { "FAIL" },
            self.lines.len() - passed - failed,
        );
        Report { text, failed }
    }
}

fn ensure(cond: bool, detail: String) -> std::result::Result<String, String> {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// Feasibility gate for the whole run: the request must allow enumerating
/// the matrix space and building the code within budget.
fn gate(n: usize, q: u64, budget: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange("verify needs n >= 2"));
    }
    let space = space_size(n, q)
        .ok_or_else(|| Error::Infeasible(format!("q^(n^2) overflows for n={n}, q={q}")))?;
    if space > 1 << 24 {
        return Err(Error::Infeasible(format!(
            "enumerating q^(n^2) = {space} matrices is out of range"
        )));
    }
    if gamma(n, q) > BigUint::from(budget) {
        return Err(Error::Infeasible(format!(
            "gamma({n}, {q}) exceeds the column budget {budget}"
        )));
    }
    Ok(())
}

pub fn run(n: usize, q: u64, full: bool, budget: u64) -> Result<Report> {
    gate(n, q, budget)?;
    let ctx = FieldCtx::new(q)?;
    let mut r = Reporter::new();

    field_axioms(&mut r, q);
    formula_identities(&mut r, n, q);
    enumeration_count(&mut r, n, q, &ctx, full);
    stanley_bruteforce(&mut r, n, q, full);
    section_sweeps(&mut r, n, q, &ctx, full);
    bruhat_checks(&mut r, n, q, full);
    complement_info(&mut r, n, q);
    code_checks(&mut r, n, q, budget, full);

    Ok(r.finish())
}

fn field_axioms(r: &mut Reporter, q: u64) {
    let name = format!("field axioms (q={q})");
    if q > 16 {
        r.record(&name, Status::Skip, "exhaustive axiom sweep covers q <= 16".into());
        return;
    }
    let ctx = FieldCtx::new(q).expect("gate checked q");
    let elems: Vec<_> = ctx.elements().collect();
    let mut ok = true;
    for &a in &elems {
        for &b in &elems {
            ok &= ctx.add(a, b).unwrap() == ctx.add(b, a).unwrap();
            ok &= ctx.mul(a, b).unwrap() == ctx.mul(b, a).unwrap();
            for &c in &elems {
                let assoc_add = ctx.add(ctx.add(a, b).unwrap(), c).unwrap()
                    == ctx.add(a, ctx.add(b, c).unwrap()).unwrap();
                let assoc_mul = ctx.mul(ctx.mul(a, b).unwrap(), c).unwrap()
                    == ctx.mul(a, ctx.mul(b, c).unwrap()).unwrap();
                let distrib = ctx.mul(a, ctx.add(b, c).unwrap()).unwrap()
                    == ctx.add(ctx.mul(a, b).unwrap(), ctx.mul(a, c).unwrap()).unwrap();
                ok &= assoc_add && assoc_mul && distrib;
            }
        }
        if !a.is_zero() {
            ok &= ctx.pow(a, q - 1).unwrap() == ctx.one();
            ok &= ctx.mul(a, ctx.inv(a).unwrap()).unwrap() == ctx.one();
        }
    }
    r.check(&name, ensure(ok, format!("{} elements, all axioms hold", elems.len())));
}

fn formula_identities(r: &mut Reporter, n: usize, q: u64) {
    let rec = (2..=n.max(2)).all(|m| gamma_recurrence_check(m, q));
    r.check("gamma recurrence", ensure(rec, format!("checked n = 2..={n}")));

    let (kmax, kmin) = extremal_k(n.max(2), q);
    r.check(
        "extremal section ranks",
        ensure((kmax, kmin) == (2, 1), format!("argmax f_k = {kmax}, argmin = {kmin}")),
    );

    match code_params(n, q) {
        Ok(p) => {
            let identity = p.min_distance == (&p.length - stanley_f(2, n, q).unwrap());
            r.check(
                "distance identity",
                ensure(identity, "min_distance = length - f_2".into()),
            );
            let sd = singleton_defect(&p);
            let gd = griesmer_defect(&p);
            let mut ok = true;
            let mut detail = format!("singleton {sd}, griesmer {gd}");
            if n == 2 {
                let expected_sd = BigUint::from(q * q * q - q * q - 3);
                let expected_gd = BigUint::from(q - 1);
                ok = sd == expected_sd && gd == expected_gd;
                detail = format!("singleton {sd} = q^3-q^2-3, griesmer {gd} = q-1");
            }
            r.check("bound defects", ensure(ok, detail));
        }
        Err(e) => r.check("code parameters", Err(format!("{e}"))),
    }
}

fn enumeration_count(r: &mut Reporter, n: usize, q: u64, ctx: &std::sync::Arc<FieldCtx>, full: bool) {
    if !full {
        r.record("invertible count", Status::Skip, "full level only".into());
        return;
    }
    let count = enumerate_gl(n, ctx).unwrap().count();
    let expected = gamma(n, q);
    r.check(
        "invertible count",
        ensure(
            BigUint::from(count) == expected,
            format!("enumerated {count}, gamma = {expected}"),
        ),
    );
}

fn stanley_bruteforce(r: &mut Reporter, n: usize, q: u64, full: bool) {
    let ks: Vec<usize> = if full { (1..=n).collect() } else { vec![1, 2.min(n)] };
    let mut ok = true;
    let mut parts = Vec::new();
    for &k in &ks {
        let brute = partial_trace_count(k, n, q).unwrap();
        let formula = stanley_f(k, n, q).unwrap();
        ok &= brute == formula;
        parts.push(format!("f_{k} = {formula}"));
    }
    r.check(
        "partial-trace counts",
        ensure(ok, format!("brute force matches formula: {}", parts.join(", "))),
    );
}

/// Exhaustive sweep over every (B != 0, c): zero-shift counts must be
/// f_rank(B), nonzero-shift counts must be (gamma - f_rank)/(q - 1), and
/// the shifted counts must be equal for all nonzero shifts.
fn section_sweeps(
    r: &mut Reporter,
    n: usize,
    q: u64,
    ctx: &std::sync::Arc<FieldCtx>,
    full: bool,
) {
    let name = "section sweep (all B, c)";
    if !full {
        r.record(name, Status::Skip, "full level only".into());
        return;
    }
    if !((n == 2 && q <= 3) || (n == 3 && q == 2)) {
        r.record(name, Status::Skip, "oracle range is n=2, q<=3 and n=3, q=2".into());
        return;
    }
    let total = gamma(n, q);
    let f: Vec<BigUint> = (1..=n).map(|k| stanley_f(k, n, q).unwrap()).collect();
    let off: Vec<BigUint> = f.iter().map(|fk| (&total - fk) / (q - 1)).collect();
    let space = space_size(n, q).unwrap();
    let mut ok = true;
    let mut sum_ok = true;
    for b_idx in 1..space {
        let b = Mat::from_index(n, ctx, MatIndex(b_idx)).unwrap();
        let rank = b.rank();
        let mut across = BigUint::from(0u32);
        for c in 0..q as u32 {
            let h = Hyperplane::new(b.clone(), ctx.felt(c)).unwrap();
            let count = section_count(&h);
            let expected = if c == 0 { &f[rank - 1] } else { &off[rank - 1] };
            ok &= &count == expected;
            across += count;
        }
        sum_ok &= across == total;
    }
    r.check(
        name,
        ensure(
            ok && sum_ok,
            format!(
                "{} normals x {q} shifts follow the two-regime law; counts sum to gamma",
                space - 1
            ),
        ),
    );
    // The law itself shows the nonzero-shift counts can escape {f_1..f_n};
    // report the measured example rather than asserting the contrary.
    let example = &off[n - 1];
    if !f.contains(example) {
        r.record(
            "shifted-section note",
            Status::Info,
            format!(
                "rank-{n} sections with nonzero shift count {example}, outside {{f_1..f_{n}}}"
            ),
        );
    }
}

fn bruhat_checks(r: &mut Reporter, n: usize, q: u64, full: bool) {
    if !full {
        r.record("bruhat cells", Status::Skip, "full level only".into());
        return;
    }
    match cell_sizes(n, q) {
        Ok(sizes) => {
            let mut ok = sizes.len() == Perm::all(n).len();
            let mut total = BigUint::from(0u32);
            for (w, size) in &sizes {
                ok &= BigUint::from(*size) == cell_count(w, q);
                total += BigUint::from(*size);
            }
            ok &= total == gamma(n, q);
            r.check(
                "bruhat cells",
                ensure(ok, format!("{} cells partition gamma = {total}", sizes.len())),
            );
            match a11_zero_cell_spectrum(n, q) {
                Ok(spectrum) => {
                    let expected: BTreeSet<Perm> =
                        Perm::all(n).into_iter().filter(|w| w.apply(0) != 0).collect();
                    let sum: BigUint = spectrum.iter().map(|w| cell_count(w, q)).sum();
                    let ok = spectrum == expected && sum == stanley_f(1, n, q).unwrap();
                    r.check(
                        "a_11 = 0 cell spectrum",
                        ensure(
                            ok,
                            format!(
                                "{} cells, exactly {{w : w(1) != 1}}, sizes sum to f_1 = {sum}",
                                spectrum.len()
                            ),
                        ),
                    );
                }
                Err(e) => r.record("a_11 = 0 cell spectrum", Status::Skip, format!("{e}")),
            }
        }
        Err(e) => {
            r.record("bruhat cells", Status::Skip, format!("{e}"));
            r.record("a_11 = 0 cell spectrum", Status::Skip, format!("{e}"));
        }
    }
}

fn complement_info(r: &mut Reporter, n: usize, q: u64) {
    let mode = if n <= 3 && q <= 3 { ReportMode::Oracle } else { ReportMode::Formula };
    match complement_report(n, q, mode) {
        Ok(rep) => {
            let verdict = if rep.equal { "equal" } else { "differ" };
            r.record(
                "big-cell complement vs min section",
                Status::Info,
                format!(
                    "complement {} vs min section {} ({verdict})",
                    rep.complement_count, rep.min_section_count
                ),
            );
        }
        Err(e) => r.record("big-cell complement vs min section", Status::Info, format!("{e}")),
    }
}

fn code_checks(r: &mut Reporter, n: usize, q: u64, budget: u64, full: bool) {
    let code = match build_code_with_budget(n, q, budget) {
        Ok(code) => code,
        Err(e) => {
            r.check("code build", Err(format!("{e}")));
            return;
        }
    };
    r.check(
        "generator rank",
        ensure(
            code.generator_rank() == n * n,
            format!("rank {} = n^2 over {} columns", n * n, code.length()),
        ),
    );

    let formula = min_distance(&code, DistanceMethod::Formula).unwrap();
    let hyper = min_distance(&code, DistanceMethod::Hyperplane).unwrap();
    r.check(
        "min distance (hyperplane route)",
        ensure(hyper == formula, format!("hyperplane {hyper} = formula {formula}")),
    );

    // Linearity spot checks with a fixed seed.
    let ctx = code.ctx().clone();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let k = code.dimension();
    let mut linear_ok = true;
    for _ in 0..200 {
        let m1: Vec<_> = (0..k).map(|_| ctx.felt(rng.random_range(0..ctx.q()))).collect();
        let m2: Vec<_> = (0..k).map(|_| ctx.felt(rng.random_range(0..ctx.q()))).collect();
        let sum: Vec<_> = m1
            .iter()
            .zip(&m2)
            .map(|(&a, &b)| ctx.add(a, b).unwrap())
            .collect();
        let lhs = encode(&code, &sum).unwrap();
        let rhs: Vec<_> = encode(&code, &m1)
            .unwrap()
            .symbols()
            .iter()
            .zip(encode(&code, &m2).unwrap().symbols())
            .map(|(&a, &b)| ctx.add(a, b).unwrap())
            .collect();
        linear_ok &= lhs.symbols() == rhs.as_slice();
    }
    r.check("encode linearity", ensure(linear_ok, "200 random message pairs".into()));

    if !full {
        r.record("weight distribution", Status::Skip, "full level only".into());
        finish_code_checks(r, n, q, &code);
        return;
    }
    if space_size(n, q).map(|s| s > 1 << 16).unwrap_or(true) {
        r.record(
            "weight distribution",
            Status::Skip,
            "message space above the exhaustive-scan gate".into(),
        );
        finish_code_checks(r, n, q, &code);
        return;
    }
    match weight_distribution(&code) {
        Ok(wd) => {
            let zero_ok = wd.counts().get(&0) == Some(&BigUint::from(1u32));
            let exhaustive = min_distance(&code, DistanceMethod::Exhaustive).unwrap();
            let min_ok = exhaustive == formula
                && wd.min_nonzero_weight() == Some(usize::try_from(&formula).unwrap());
            r.check(
                "weight distribution",
                ensure(
                    zero_ok && min_ok,
                    format!("total {}, min nonzero weight {formula}", wd.total()),
                ),
            );
        }
        Err(e) => r.record("weight distribution", Status::Skip, format!("{e}")),
    }

    // Weight/section duality: weight(m) = gamma - section_count(reshape(m), 0).
    // Each message costs a full enumeration, so keep this to small spaces.
    let space = space_size(n, q).unwrap();
    if space > 2048 {
        r.record(
            "weight/section duality",
            Status::Skip,
            "message space above the per-message enumeration gate".into(),
        );
        finish_code_checks(r, n, q, &code);
        return;
    }
    let mut dual_ok = true;
    for idx in 1..space {
        let b = Mat::from_index(n, code.ctx(), MatIndex(idx)).unwrap();
        let message: Vec<_> =
            (0..n).flat_map(|i| (0..n).map(|j| b.get(i, j)).collect::<Vec<_>>()).collect();
        let weight = encode(&code, &message).unwrap().weight();
        let h = Hyperplane::new(b, ctx.zero()).unwrap();
        dual_ok &= BigUint::from(code.length() - weight) == section_count(&h);
    }
    r.check(
        "weight/section duality",
        ensure(dual_ok, format!("all {} nonzero messages", space - 1)),
    );
    finish_code_checks(r, n, q, &code);
}

fn finish_code_checks(r: &mut Reporter, n: usize, q: u64, code: &glcode::EvaluationCode) {
    if (n, q) == (2, 2) {
        let ours = all_codeword_vectors(code).unwrap();
        let reference: Vec<Vec<u32>> =
            REFERENCE_CODEWORDS_2_2.iter().map(|v| v.to_vec()).collect();
        let matchings = column_matchings(&ours, &reference).unwrap();
        r.check(
            "reference codeword set",
            ensure(
                !matchings.is_empty(),
                format!(
                    "codeword set matches the published [6,4,2] table ({} column matchings)",
                    matchings.len()
                ),
            ),
        );
    }

    // Low-cost decomposition spot check through the public API.
    let mut spot_ok = true;
    for a in enumerate_gl(n, code.ctx()).unwrap().take(64) {
        let f = bruhat_decompose(&a).unwrap();
        spot_ok &= big_cell_membership(&a).unwrap() == f.perm.is_identity();
    }
    r.check("factorization spot check", ensure(spot_ok, "first 64 invertible points".into()));
}
