//! Truncated power series in two variables `z`, `u` with exact rational
//! coefficients, and the generating-function identities checked with them.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::factorial;
use crate::error::{Error, Result};
use crate::oracle::{a_brute, f_brute, A_BRUTE_MAX, F_BRUTE_MAX};

/// `sum c[i][j] z^i u^j` for `i <= order_z`, `j <= order_u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateSeries {
    order_z: usize,
    order_u: usize,
    coeffs: Vec<Vec<BigRational>>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_big(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}

impl BivariateSeries {
    pub fn zero(order_z: usize, order_u: usize) -> Self {
        Self {
            order_z,
            order_u,
            coeffs: vec![vec![BigRational::zero(); order_u + 1]; order_z + 1],
        }
    }

    pub fn constant(order_z: usize, order_u: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order_z, order_u);
        s.coeffs[0][0] = c;
        s
    }

    pub fn one(order_z: usize, order_u: usize) -> Self {
        Self::constant(order_z, order_u, BigRational::one())
    }

    /// The monomial `c z^i u^j`, or zero if it lies beyond the truncation.
    pub fn monomial(order_z: usize, order_u: usize, i: usize, j: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order_z, order_u);
        if i <= order_z && j <= order_u {
            s.coeffs[i][j] = c;
        }
        s
    }

    pub fn z(order_z: usize, order_u: usize) -> Self {
        Self::monomial(order_z, order_u, 1, 0, BigRational::one())
    }

    pub fn u(order_z: usize, order_u: usize) -> Self {
        Self::monomial(order_z, order_u, 0, 1, BigRational::one())
    }

    pub fn from_fn(order_z: usize, order_u: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let coeffs = (0..=order_z)
            .map(|i| (0..=order_u).map(|j| f(i, j)).collect())
            .collect();
        Self { order_z, order_u, coeffs }
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.order_z, self.order_u)
    }

    /// `[z^i u^j]`; zero beyond the truncation.
    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.orders() != other.orders() {
            return Err(Error::OrderMismatch(self.orders(), other.orders()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_fn(self.order_z, self.order_u, |i, j| {
            &self.coeffs[i][j] + &other.coeffs[i][j]
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_fn(self.order_z, self.order_u, |i, j| {
            &self.coeffs[i][j] - &other.coeffs[i][j]
        }))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.order_z, self.order_u);
        for (i1, row) in self.coeffs.iter().enumerate() {
            for (j1, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=self.order_z - i1 {
                    for j2 in 0..=self.order_u - j1 {
                        let b = &other.coeffs[i2][j2];
                        if !b.is_zero() {
                            out.coeffs[i1 + i2][j1 + j2] += a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::from_fn(self.order_z, self.order_u, |i, j| &self.coeffs[i][j] * s)
    }

    pub fn neg(&self) -> Self {
        self.scale(&rat(-1))
    }

    fn require_zero_constant(&self, op: &'static str) -> Result<()> {
        if self.coeffs[0][0].is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroConstant(op))
        }
    }

    /// `sum_i w_i s^i`. With a zero constant term, `s^i` vanishes once
    /// `i > order_z + order_u`, so the sum is finite.
    fn power_sum(&self, weight: impl Fn(usize) -> BigRational) -> Self {
        let top = self.order_z + self.order_u;
        let mut out = Self::constant(self.order_z, self.order_u, weight(0));
        let mut power = Self::one(self.order_z, self.order_u);
        for i in 1..=top {
            power = power.mul(self).expect("same orders");
            let w = weight(i);
            if !w.is_zero() {
                out = out.add(&power.scale(&w)).expect("same orders");
            }
        }
        out
    }

    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant("exp")?;
        Ok(self.power_sum(|i| BigRational::new(BigInt::one(), BigInt::from(factorial(i)))))
    }

    /// `log(1 + s)`.
    pub fn log_one_plus(&self) -> Result<Self> {
        self.require_zero_constant("log_one_plus")?;
        Ok(self.power_sum(|i| match i {
            0 => BigRational::zero(),
            _ if i % 2 == 1 => BigRational::new(BigInt::one(), BigInt::from(i)),
            _ => BigRational::new(BigInt::from(-1), BigInt::from(i)),
        }))
    }

    /// `1 / (1 - s)`.
    pub fn inv_one_minus(&self) -> Result<Self> {
        self.require_zero_constant("inv_one_minus")?;
        Ok(self.power_sum(|_| BigRational::one()))
    }

    /// `sqrt(1 + s)` as `exp(log(1 + s) / 2)`.
    pub fn sqrt_one_plus(&self) -> Result<Self> {
        self.log_one_plus()?
            .scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
            .exp()
    }
}

impl Add for &BivariateSeries {
    type Output = BivariateSeries;
    fn add(self, rhs: Self) -> BivariateSeries {
        BivariateSeries::add(self, rhs).expect("truncation orders differ")
    }
}

impl Sub for &BivariateSeries {
    type Output = BivariateSeries;
    fn sub(self, rhs: Self) -> BivariateSeries {
        BivariateSeries::sub(self, rhs).expect("truncation orders differ")
    }
}

impl Mul for &BivariateSeries {
    type Output = BivariateSeries;
    fn mul(self, rhs: Self) -> BivariateSeries {
        BivariateSeries::mul(self, rhs).expect("truncation orders differ")
    }
}

impl Neg for &BivariateSeries {
    type Output = BivariateSeries;
    fn neg(self) -> BivariateSeries {
        BivariateSeries::neg(self)
    }
}

/// `z e^{z(1-u)} ((1 - log(1 - zu))(1 - u) + u/(1 - zu))` to order `n` in both variables.
pub fn tkn_egf(n: usize) -> Result<BivariateSeries> {
    if n == 0 {
        return Err(Error::OutOfRange("order must be at least 1".into()));
    }
    let one = BivariateSeries::one(n, n);
    let z = BivariateSeries::z(n, n);
    let u = BivariateSeries::u(n, n);
    let zu = &z * &u;
    let e = (&z - &zu).exp()?;
    let log_part = &one - &(-&zu).log_one_plus()?;
    let rational = &u * &zu.inv_one_minus()?;
    let inner = &(&log_part * &(&one - &u)) + &rational;
    Ok(&(&z * &e) * &inner)
}

/// `((1 - 2z) sqrt(1 - 4zu/(1 - 2z)) exp(2zu/(1 - 2z)))^{-1}` to order `m` in both variables.
pub fn fpf_egf(m: usize) -> Result<BivariateSeries> {
    if m < 2 {
        return Err(Error::OutOfRange("order must be at least 2".into()));
    }
    let one = BivariateSeries::one(m, m);
    let z = BivariateSeries::z(m, m);
    let u = BivariateSeries::u(m, m);
    let two_z = z.scale(&rat(2));
    let x = &(&z * &u) * &two_z.inv_one_minus()?;
    let root = x.scale(&rat(-4)).sqrt_one_plus()?;
    let e = x.scale(&rat(2)).exp()?;
    let denom = &(&(&one - &two_z) * &root) * &e;
    (&one - &denom).inv_one_minus()
}

fn to_integer(q: BigRational, what: &str) -> Result<BigInt> {
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(Error::Internal(format!("{what} is not an integer: {q}")))
    }
}

/// `table[n][k] = n! [z^n u^k]` of [`tkn_egf`], for `0 <= k, n <= order`.
pub fn tkn_table(order: usize) -> Result<Vec<Vec<BigInt>>> {
    let s = tkn_egf(order)?;
    (0..=order)
        .map(|n| {
            let nf = rat_big(&factorial(n));
            (0..=order)
                .map(|k| to_integer(s.coeff(n, k) * &nf, "cleared coefficient"))
                .collect()
        })
        .collect()
}

/// `table[m][j] = m! j! [z^m u^j]` of [`fpf_egf`], for `0 <= j, m <= order`.
pub fn fpf_table(order: usize) -> Result<Vec<Vec<BigInt>>> {
    let s = fpf_egf(order)?;
    (0..=order)
        .map(|m| {
            let mf = rat_big(&factorial(m));
            (0..=order)
                .map(|j| to_integer(s.coeff(m, j) * &mf * rat_big(&factorial(j)), "cleared coefficient"))
                .collect()
        })
        .collect()
}

/// `sum_{j <= order} values[j] x^j / j!` as a series in `z` alone.
fn egf_from(values: &[BigUint], order: usize) -> BivariateSeries {
    BivariateSeries::from_fn(order, 0, |i, _| match values.get(i) {
        Some(v) => rat_big(v) / rat_big(&factorial(i)),
        None => BigRational::zero(),
    })
}

/// Whether `A(x) exp(x) sqrt(1 - 2x) = 1` to order `order`, where
/// `A(x) = sum values[j] x^j / j!`.
pub fn a_egf_check_with(values: &[BigUint], order: usize) -> bool {
    if values.len() <= order {
        return false;
    }
    let x = BivariateSeries::z(order, 0);
    let (Ok(e), Ok(root)) = (x.exp(), x.scale(&rat(-2)).sqrt_one_plus()) else {
        return false;
    };
    let product = &(&egf_from(values, order) * &e) * &root;
    product == BivariateSeries::one(order, 0)
}

/// [`a_egf_check_with`] on values counted by brute force where feasible.
pub fn a_egf_check(order: usize) -> bool {
    let values: Vec<BigUint> = (0..=order)
        .map(|j| if j <= A_BRUTE_MAX { a_brute(j).expect("within bound") } else { crate::formulas::a(j) })
        .collect();
    a_egf_check_with(&values, order)
}

/// Whether `sum values[k] x^k / k! = e^{-x} (1 - log(1 - x))` to order `order`.
pub fn f_egf_check_with(values: &[BigUint], order: usize) -> bool {
    if values.len() <= order {
        return false;
    }
    let x = BivariateSeries::z(order, 0);
    let one = BivariateSeries::one(order, 0);
    let (Ok(e), Ok(log)) = (x.neg().exp(), x.neg().log_one_plus()) else {
        return false;
    };
    let rhs = &e * &(&one - &log);
    egf_from(values, order) == rhs
}

/// [`f_egf_check_with`] on values counted by brute force where feasible.
pub fn f_egf_check(order: usize) -> bool {
    let values: Vec<BigUint> = (0..=order)
        .map(|k| if k <= F_BRUTE_MAX { f_brute(k).expect("within bound") } else { crate::formulas::f(k) })
        .collect();
    f_egf_check_with(&values, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{c_fpf_involution, T};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_series(rng: &mut ChaCha8Rng, nz: usize, nu: usize, constant: bool) -> BivariateSeries {
        BivariateSeries::from_fn(nz, nu, |i, j| {
            if !constant && i == 0 && j == 0 {
                BigRational::zero()
            } else {
                BigRational::new(BigInt::from(rng.gen_range(-5..=5)), BigInt::from(rng.gen_range(1..=4)))
            }
        })
    }

    #[test]
    fn ring_basics() {
        let z = BivariateSeries::z(3, 2);
        let one = BivariateSeries::one(3, 2);
        let zz = &z * &z;
        assert_eq!(zz.coeff(2, 0), BigRational::one());
        assert_eq!(&z * &one, z);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_series(&mut rng, 4, 3, true);
            let b = random_series(&mut rng, 4, 3, true);
            let c = random_series(&mut rng, 4, 3, true);
            assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            assert_eq!(&a * &BivariateSeries::one(4, 3), a);
        }
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = BivariateSeries::z(3, 3);
        let b = BivariateSeries::z(3, 2);
        assert!(matches!(a.mul(&b), Err(Error::OrderMismatch(..))));
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn transcendental_kernels() {
        assert_eq!(BivariateSeries::zero(4, 4).exp().unwrap(), BivariateSeries::one(4, 4));
        assert!(BivariateSeries::one(4, 4).exp().is_err());
        assert!(BivariateSeries::one(4, 4).log_one_plus().is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let one = BivariateSeries::one(5, 4);
        for _ in 0..5 {
            let s = random_series(&mut rng, 5, 4, false);
            let back = (&s.exp().unwrap() - &one).log_one_plus().unwrap();
            assert_eq!(back, s);
            let r = s.sqrt_one_plus().unwrap();
            assert_eq!(&r * &r, &one + &s);
            let inv = s.inv_one_minus().unwrap();
            assert_eq!(&inv * &(&one - &s), one);
        }
    }

    #[test]
    fn tkn_matches_formula() {
        let table = tkn_table(10).unwrap();
        for n in 1..=10 {
            for k in 0..=n {
                let want = BigInt::from(T(k, n).unwrap());
                assert_eq!(table[n][k], want, "n={n} k={k}");
            }
            assert!(table[n][1].is_zero());
        }
        assert_eq!(table[5][3], BigInt::from(50));
    }

    #[test]
    fn fpf_matches_formula() {
        let table = fpf_table(8).unwrap();
        for m in 2..=8 {
            for j in 0..=m {
                let want = BigInt::from(c_fpf_involution(2 * j, m).unwrap());
                assert_eq!(table[m][j], want, "m={m} j={j}");
            }
            assert!(table[m][1].is_zero());
        }
        assert_eq!(table[2][2], BigInt::from(16));
        assert_eq!(table[3][0], BigInt::from(48));
    }

    #[test]
    fn univariate_identities() {
        assert!(a_egf_check(7));
        assert!(a_egf_check(0));
        assert!(f_egf_check(9));
        let mut values: Vec<BigUint> = (0..=7).map(|j| a_brute(j).unwrap()).collect();
        values[3] += 1u32;
        assert!(!a_egf_check_with(&values, 7));
        let mut fv: Vec<BigUint> = (0..=9).map(|k| f_brute(k).unwrap()).collect();
        fv[4] += 1u32;
        assert!(!f_egf_check_with(&fv, 9));
    }
}
