//! Closed-form q-analog combinatorics, in exact arbitrary-precision
//! arithmetic: no floating point anywhere.
//!
//! * `[r]_q = 1 + q + ... + q^(r-1)` with the convention `[0]_q = 1`, and
//!   the factorial `[r]_q! = [r]_q [r-1]_q ... [1]_q`.
//! * `gamma(n, q) = |GL_n(F_q)| = prod_{i=0}^{n-1} (q^n - q^i)
//!   = q^C(n,2) (q-1)^n [n]_q!` (both forms are evaluated and compared).
//! * `f_k(n)`, the number of invertible matrices with
//!   `a_11 + ... + a_kk = 0`.
//! * The `[n, k, d]_q` parameters of the code obtained by evaluating all
//!   linear forms on the invertible matrices, plus Singleton and Griesmer
//!   defects.
//!
//! Everything here is polynomial in `q`, so any integer `q >= 2` is
//! accepted; only the field-backed modules require prime powers.

use num_bigint::{BigInt, BigUint, Sign};

use crate::{Error, Result};

/// Exact nonnegative integer used for all formula outputs.
pub type QInt = BigUint;

/// Parameters `[length, dimension, min_distance]_q` of the code built on
/// the invertible `n x n` matrices over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeParams {
    pub n: usize,
    pub q: u64,
    pub length: QInt,
    pub dimension: usize,
    pub min_distance: QInt,
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn qpow(q: u64, e: u64) -> BigUint {
    big(q).pow(u32::try_from(e).expect("exponent fits u32"))
}

fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// `[r]_q`. By convention `[0]_q = 1`.
pub fn q_int(r: usize, q: u64) -> QInt {
    assert!(q >= 2, "q must be at least 2");
    if r == 0 {
        return big(1);
    }
    (qpow(q, r as u64) - 1u32) / (big(q) - 1u32)
}

/// `[r]_q! = prod_{i=1}^{r} [i]_q`.
pub fn q_factorial(r: usize, q: u64) -> QInt {
    (1..=r).fold(big(1), |acc, i| acc * q_int(i, q))
}

/// `gamma(n, q) = |GL_n(F_q)|`, with `gamma(0, q) = 1`.
///
/// Evaluates both the product `prod (q^n - q^i)` and the factored form
/// `q^C(n,2) (q-1)^n [n]_q!` and checks they agree before returning.
pub fn gamma(n: usize, q: u64) -> QInt {
    assert!(q >= 2, "q must be at least 2");
    let qn = qpow(q, n as u64);
    let product: BigUint = (0..n).fold(big(1), |acc, i| acc * (&qn - qpow(q, i as u64)));
    let factored =
        qpow(q, binom2(n as u64)) * (big(q) - 1u32).pow(n as u32) * q_factorial(n, q);
    assert_eq!(product, factored, "the two gamma forms must agree");
    product
}

/// Whether `gamma(n, q) = q^(n-1) (q^n - 1) gamma(n-1, q)` holds exactly.
pub fn gamma_recurrence_check(n: usize, q: u64) -> bool {
    assert!(n >= 2, "the recurrence needs n >= 2");
    let rhs = qpow(q, n as u64 - 1) * (qpow(q, n as u64) - 1u32) * gamma(n - 1, q);
    gamma(n, q) == rhs
}

/// `f_k(n)`: the number of invertible `n x n` matrices over `F_q` with
/// `a_11 + a_22 + ... + a_kk = 0`, by the closed form
/// `(1/q) (gamma(n,q) + (-1)^k (q-1) q^(k(2n-k-1)/2) gamma(n-k,q))`.
/// The division by `q` must be exact and is asserted.
pub fn stanley_f(k: usize, n: usize, q: u64) -> Result<QInt> {
    if k > n {
        return Err(Error::OutOfRange("stanley_f needs 0 <= k <= n"));
    }
    // k(2n - k - 1)/2; the factor k keeps it at 0 when k = 0.
    let exponent = if k == 0 { 0 } else { (k as u64) * (2 * n as u64 - k as u64 - 1) / 2 };
    let correction = BigInt::from(big(q) - 1u32)
        * BigInt::from(qpow(q, exponent))
        * BigInt::from(gamma(n - k, q));
    let signed = if k.is_multiple_of(2) { correction } else { -correction };
    let total = BigInt::from(gamma(n, q)) + signed;
    let (sign, mag) = total.into_parts();
    assert_ne!(sign, Sign::Minus, "f_k(n) is a cardinality");
    assert_eq!(&mag % &big(q), big(0), "f_k(n) formula must be divisible by q");
    Ok(mag / q)
}

/// `(argmax_k f_k, argmin_k f_k)` over `k` in `1..=n`, ties broken by the
/// smallest `k`. For every `n >= 2`, `q >= 2` this is `(2, 1)`.
pub fn extremal_k(n: usize, q: u64) -> (usize, usize) {
    assert!(n >= 2, "extremal_k needs n >= 2");
    let values: Vec<QInt> = (1..=n).map(|k| stanley_f(k, n, q).unwrap()).collect();
    let mut k_max = 1;
    let mut k_min = 1;
    for k in 2..=n {
        if values[k - 1] > values[k_max - 1] {
            k_max = k;
        }
        if values[k - 1] < values[k_min - 1] {
            k_min = k;
        }
    }
    (k_max, k_min)
}

/// Exact `[length, dimension, min_distance]` of the code on the invertible
/// `n x n` matrices:
///
/// * `length = gamma(n, q)`,
/// * `dimension = n^2`,
/// * `min_distance = q^(C(n,2)-1) (q-1)^(n-1) ((q-1)^2 [n]_q! - [n-2]_q!)`.
///
/// Also asserts the identity `min_distance = length - f_2(n)`.
pub fn code_params(n: usize, q: u64) -> Result<CodeParams> {
    if n < 2 {
        return Err(Error::OutOfRange("code parameters need n >= 2"));
    }
    assert!(q >= 2, "q must be at least 2");
    let length = gamma(n, q);
    let qm1 = big(q) - 1u32;
    let inner = qm1.pow(2) * q_factorial(n, q) - q_factorial(n - 2, q);
    let min_distance = qpow(q, binom2(n as u64) - 1) * qm1.pow(n as u32 - 1) * inner;
    let via_sections = &length - stanley_f(2, n, q)?;
    assert_eq!(min_distance, via_sections, "min distance must equal length - f_2(n)");
    assert!(min_distance >= big(1), "minimum distance is at least 1");
    assert!(
        min_distance <= &length - big(n as u64 * n as u64) + 1u32,
        "Singleton bound"
    );
    Ok(CodeParams { n, q, length, dimension: n * n, min_distance })
}

/// The `n = 2` specialization in polynomial form:
/// `(q^4 - q^3 - q^2 + q, 4, q^4 - 2q^3 + q)`. Checked against
/// [`code_params`] before returning.
pub fn params_n2_closed_form(q: u64) -> CodeParams {
    assert!(q >= 2, "q must be at least 2");
    let length = qpow(q, 4) - qpow(q, 3) - qpow(q, 2) + big(q);
    let min_distance = qpow(q, 4) - big(2) * qpow(q, 3) + big(q);
    let params = CodeParams { n: 2, q, length, dimension: 4, min_distance };
    let general = code_params(2, q).unwrap();
    assert_eq!(params, general, "polynomial specialization must match the general form");
    params
}

/// Singleton defect `(length - dimension + 1) - min_distance >= 0`.
pub fn singleton_defect(p: &CodeParams) -> QInt {
    let bound = &p.length - big(p.dimension as u64) + 1u32;
    assert!(bound >= p.min_distance, "the Singleton bound holds for every linear code");
    bound - &p.min_distance
}

/// Griesmer defect `length - sum_{i=0}^{dimension-1} ceil(d / q^i) >= 0`.
///
/// The sum runs over `i = 0 .. dimension-1`, the standard Griesmer
/// convention; for `n = 2` it makes the defect exactly `q - 1`.
pub fn griesmer_defect(p: &CodeParams) -> QInt {
    let mut sum = big(0);
    for i in 0..p.dimension {
        let divisor = qpow(p.q, i as u64);
        sum += (&p.min_distance + &divisor - 1u32) / divisor;
    }
    assert!(p.length >= sum, "the Griesmer bound holds for every linear code");
    &p.length - sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_int_examples() {
        assert_eq!(q_int(0, 7), big(1));
        assert_eq!(q_int(3, 2), big(7));
        assert_eq!(q_factorial(3, 2), big(21));
        assert_eq!(q_factorial(0, 5), big(1));
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(2, 2), big(6));
        assert_eq!(gamma(0, 5), big(1));
        assert_eq!(gamma(3, 2), big(168));
        assert_eq!(gamma(2, 3), big(48));
        assert_eq!(gamma(3, 3), big(11232));
    }

    #[test]
    fn gamma_recurrence_examples() {
        assert!(gamma_recurrence_check(2, 2));
        assert!(gamma_recurrence_check(3, 2));
        assert!(gamma_recurrence_check(2, 3));
    }

    #[test]
    fn stanley_examples() {
        // k = 0 collapses to gamma itself.
        assert_eq!(stanley_f(0, 3, 2).unwrap(), gamma(3, 2));
        assert_eq!(stanley_f(1, 3, 2).unwrap(), big(72));
        assert_eq!(stanley_f(2, 3, 2).unwrap(), big(88));
        assert_eq!(stanley_f(3, 3, 2).unwrap(), big(80));
        assert_eq!(stanley_f(1, 2, 2).unwrap(), big(2));
        assert_eq!(stanley_f(2, 2, 2).unwrap(), big(4));
        assert_eq!(stanley_f(1, 2, 3).unwrap(), big(12));
        assert_eq!(stanley_f(2, 2, 3).unwrap(), big(18));
        assert!(stanley_f(4, 3, 2).is_err());
    }

    #[test]
    fn extremal_examples() {
        assert_eq!(extremal_k(3, 2), (2, 1));
        assert_eq!(extremal_k(2, 2), (2, 1));
        assert_eq!(extremal_k(2, 3), (2, 1));
    }

    #[test]
    fn code_params_examples() {
        let p = code_params(2, 2).unwrap();
        assert_eq!((p.length, p.dimension, p.min_distance), (big(6), 4, big(2)));
        let p = code_params(2, 3).unwrap();
        assert_eq!((p.length, p.dimension, p.min_distance), (big(48), 4, big(30)));
        let p = code_params(3, 2).unwrap();
        assert_eq!((p.length, p.dimension, p.min_distance), (big(168), 9, big(80)));
        assert!(code_params(1, 2).is_err());
    }

    #[test]
    fn n2_closed_form_examples() {
        let p = params_n2_closed_form(2);
        assert_eq!((p.length.clone(), p.min_distance.clone()), (big(6), big(2)));
        let p = params_n2_closed_form(3);
        assert_eq!((p.length.clone(), p.min_distance.clone()), (big(48), big(30)));
        let p = params_n2_closed_form(5);
        assert_eq!((p.length.clone(), p.min_distance.clone()), (big(480), big(380)));
    }

    #[test]
    fn defect_examples() {
        let p = code_params(2, 2).unwrap();
        assert_eq!(singleton_defect(&p), big(1)); // q^3 - q^2 - 3 at q = 2
        assert_eq!(griesmer_defect(&p), big(1)); // q - 1 at q = 2
        let p = code_params(2, 3).unwrap();
        assert_eq!(singleton_defect(&p), big(15));
        assert_eq!(griesmer_defect(&p), big(2));
    }
}
