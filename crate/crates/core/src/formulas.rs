//! Closed-form values of `c(k, beta)`, exact over arbitrary-precision integers.
//!
//! Everything here depends on `beta` only through its cycle type. The
//! auxiliary sequences are `f(k)`, the number of `k`-cycles of `{1..k}`
//! avoiding every successor `i -> i + 1 mod k`, and `a(j)`, the number of
//! perfect matchings of `j` couples avoiding every original couple.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{binomial, factorial, pow};
use crate::error::{Error, Result};
use crate::perm::CycleType;

/// Which result produced a count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// `k = 0`: the centralizer order.
    Centralizer,
    /// `k = 1, 2` never occur.
    NoSmallDistance,
    /// `k` beyond twice the support size.
    SupportBound,
    Transposition,
    FpfInvolution,
    NCycle,
    GenericK3,
    GenericK4,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Provenance::Centralizer => "centralizer",
            Provenance::NoSmallDistance => "no_small_distance",
            Provenance::SupportBound => "support_bound",
            Provenance::Transposition => "transposition",
            Provenance::FpfInvolution => "fpf_involution",
            Provenance::NCycle => "n_cycle",
            Provenance::GenericK3 => "generic_k3",
            Provenance::GenericK4 => "generic_k4",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaResult {
    pub value: BigUint,
    pub provenance: Provenance,
}

/// `f(k) = sum_{i<k} (-1)^i C(k,i) (k-i-1)! + (-1)^k`.
pub fn f(k: usize) -> BigUint {
    let mut acc = BigInt::zero();
    for i in 0..k {
        let term = BigInt::from(binomial(k, i) * factorial(k - i - 1));
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    if k % 2 == 0 {
        acc += 1;
    } else {
        acc -= 1;
    }
    acc.to_biguint().expect("f(k) is a count")
}

/// `a(j) = 2 (j-1) (a(j-1) + a(j-2))`, `a(0) = 1`, `a(1) = 0`.
pub fn a(j: usize) -> BigUint {
    a_table(j).pop().expect("non-empty table")
}

/// `a(0..=j)`.
pub fn a_table(j: usize) -> Vec<BigUint> {
    let mut t = vec![BigUint::one(), BigUint::zero()];
    for i in 2..=j {
        let next = BigUint::from(2 * (i - 1)) * (&t[i - 1] + &t[i - 2]);
        t.push(next);
    }
    t.truncate(j + 1);
    t
}

pub fn c0(t: &CycleType) -> BigUint {
    t.centralizer_order()
}

pub fn c1(_t: &CycleType) -> BigUint {
    BigUint::zero()
}

pub fn c2(_t: &CycleType) -> BigUint {
    BigUint::zero()
}

/// `r0 |C(beta)| prod_{l} C(c_l, h_l) / (h_l! l^{h_l})`: the number of
/// `alpha` failing to commute on exactly `h_l` cycles of each length `l`,
/// given `r0` ways to build `alpha` on those cycles.
pub fn partecentral(r0: &BigUint, t: &CycleType, touched: &BTreeMap<usize, usize>) -> Result<BigUint> {
    let mut numerator = r0 * t.centralizer_order();
    let mut denominator = BigUint::one();
    for (&len, &h) in touched {
        let c = t.count(len);
        if h > c {
            return Err(Error::OutOfRange(format!(
                "h_{len} = {h} exceeds c_{len} = {c}"
            )));
        }
        numerator *= binomial(c, h);
        denominator *= factorial(h) * pow(len, h);
    }
    let (q, r) = numerator.div_rem(&denominator);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "partecentral: {numerator} not divisible by {denominator}"
        )));
    }
    Ok(q)
}

/// `c([k], beta) = |C(beta)| sum_{l >= k} c_l C(l, k) f(k)`, for `k >= 3`.
pub fn c_lambda_k1(t: &CycleType, k: usize) -> Result<BigUint> {
    if k < 3 {
        return Err(Error::OutOfRange(format!("single-cycle profile needs k >= 3, got {k}")));
    }
    let sum: BigUint = (k..=t.degree())
        .map(|l| BigUint::from(t.count(l)) * binomial(l, k))
        .sum();
    Ok(t.centralizer_order() * sum * f(k))
}

/// `T(k, n) = n C(n, k) f(k)`: permutations k-commuting with an `n`-cycle.
#[allow(non_snake_case)]
pub fn T(k: usize, n: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::OutOfRange(format!("T(k, n) needs k <= n, got k={k}, n={n}")));
    }
    Ok(t_from_f(k, n, &f(k)))
}

/// `n C(n, k) fk` for a supplied value `fk` of `f(k)`.
pub fn t_from_f(k: usize, n: usize, fk: &BigUint) -> BigUint {
    BigUint::from(n) * binomial(n, k) * fk
}

fn c(t: &CycleType, len: usize) -> BigUint {
    BigUint::from(t.count(len))
}

/// `c(3, beta) = (sum_{l>=3} c_l C(l,3) + sum_{1<=l<m} l m c_l c_m) |C(beta)|`.
pub fn c3(t: &CycleType) -> BigUint {
    let n = t.degree();
    let single: BigUint = (3..=n).map(|l| c(t, l) * binomial(l, 3)).sum();
    let mut pairs = BigUint::zero();
    for l in 1..=n {
        for m in l + 1..=n {
            pairs += BigUint::from(l * m) * c(t, l) * c(t, m);
        }
    }
    (single + pairs) * t.centralizer_order()
}

/// Profile `[4]`.
pub fn c4_single(t: &CycleType) -> BigUint {
    let sum: BigUint = (4..=t.degree()).map(|i| c(t, i) * binomial(i, 4)).sum();
    t.centralizer_order() * sum
}

/// Profile `[3, 1]`: `|C| sum_{i>=1, j>=i+2} i j (j-i-1) c_i c_j`.
pub fn c4_31(t: &CycleType) -> BigUint {
    let n = t.degree();
    let mut sum = BigUint::zero();
    for i in 1..=n {
        for j in i + 2..=n {
            sum += BigUint::from(i * j * (j - i - 1)) * c(t, i) * c(t, j);
        }
    }
    t.centralizer_order() * sum
}

/// Profile `[2, 2]`.
pub fn c4_22(t: &CycleType) -> BigUint {
    let n = t.degree();
    let mut sum = BigUint::zero();
    for i in 2..=n {
        sum += BigUint::from(i) * binomial(i, 2) * binomial(t.count(i), 2);
        for j in i + 1..=n {
            sum += BigUint::from(i * (i - 1) * j) * c(t, i) * c(t, j);
        }
    }
    t.centralizer_order() * sum
}

/// Profile `[2, 1, 1]`.
pub fn c4_211(t: &CycleType) -> BigUint {
    let n = t.degree();
    let mut sum = BigUint::zero();
    for i in 1..=n {
        sum += pow(i, 3) * c(t, 2 * i) * binomial(t.count(i), 2);
        for j in i + 1..=n {
            sum += BigUint::from(i * j * (i + j)) * c(t, i) * c(t, j) * c(t, i + j);
        }
    }
    t.centralizer_order() * sum
}

pub fn c4(t: &CycleType) -> BigUint {
    c4_single(t) + c4_31(t) + c4_22(t) + c4_211(t)
}

/// `c(k, beta)` for a transposition `beta` in `S_n`.
pub fn c_transposition(k: usize, n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("a transposition needs n >= 2, got {n}")));
    }
    let base = factorial(n - 2);
    Ok(match k {
        0 => BigUint::from(2u32) * base,
        3 => BigUint::from(4 * (n - 2)) * base,
        4 if n > 2 => BigUint::from((n - 2) * (n - 3)) * base,
        _ => BigUint::zero(),
    })
}

/// `c(k, beta)` for a fixed-point-free involution `beta` in `S_{2m}`.
pub fn c_fpf_involution(k: usize, m: usize) -> Result<BigUint> {
    if m < 2 {
        return Err(Error::OutOfRange(format!("fixed-point-free involution needs m >= 2, got {m}")));
    }
    if k % 2 == 1 || k / 2 > m {
        return Ok(BigUint::zero());
    }
    let j = k / 2;
    Ok(pow(2, m) * factorial(m) * binomial(m, j) * a(j))
}

/// `2 |supp(beta)|`, the largest possible `k`.
pub fn support_bound(t: &CycleType) -> usize {
    2 * t.support_size()
}

/// `T(n - m, n) / n!`.
pub fn limit_ratio(n: usize, m: usize) -> Result<BigRational> {
    if m >= n {
        return Err(Error::OutOfRange(format!("limit_ratio needs m < n, got n={n}, m={m}")));
    }
    let num = T(n - m, n)?;
    Ok(BigRational::new(BigInt::from(num), BigInt::from(factorial(n))))
}

/// `|limit_ratio(n, m) - target|`.
pub fn limit_deviation(n: usize, m: usize, target: &BigRational) -> Result<BigRational> {
    Ok((limit_ratio(n, m)? - target).abs())
}

/// `c(k, beta)` from the most specific closed form that applies.
pub fn count(t: &CycleType, k: usize) -> Result<FormulaResult> {
    let n = t.degree();
    let ok = |value, provenance| Ok(FormulaResult { value, provenance });
    if t.is_transposition() {
        return ok(c_transposition(k, n)?, Provenance::Transposition);
    }
    if let Some(m) = t.fpf_involution_half().filter(|&m| m >= 2) {
        return ok(c_fpf_involution(k, m)?, Provenance::FpfInvolution);
    }
    if t.is_full_cycle() {
        let value = if k <= n { T(k, n)? } else { BigUint::zero() };
        return ok(value, Provenance::NCycle);
    }
    match k {
        0 => ok(c0(t), Provenance::Centralizer),
        1 | 2 => ok(BigUint::zero(), Provenance::NoSmallDistance),
        _ if k > support_bound(t) => ok(BigUint::zero(), Provenance::SupportBound),
        3 => ok(c3(t), Provenance::GenericK3),
        4 => ok(c4(t), Provenance::GenericK4),
        _ => Err(Error::NoClosedForm {
            k,
            cycle_type: t.to_string(),
        }),
    }
}
