//! Truncated formal power series over arbitrary-precision integers.
//!
//! An [`IntSeries`] holds the coefficients of `c_0 + c_1 q + ... + c_N q^N`
//! where `N` is the truncation order. All arithmetic is exact: coefficients
//! are `BigInt` and every operation truncates eagerly to the minimum order of
//! its operands. Multiplication is a schoolbook Cauchy product with an
//! optional data-parallel path for large orders (feature `parallel`).

use num_bigint::BigInt;
use num_traits::{One, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Orders at or above this use the parallel Cauchy product when available.
#[cfg(feature = "parallel")]
const PAR_MUL_MIN: usize = 2000;

/// Errors raised by exact series arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    /// Inversion (or unit division) requires the constant term to be +1 or -1.
    #[error("series constant term is not a unit (+1 or -1)")]
    NonUnitConstantTerm,
    /// An exact-division helper produced a nonzero remainder; this signals an
    /// implementation bug in the caller, not bad input.
    #[error("exact division left a non-integer quotient")]
    NonIntegerQuotient,
}

/// Number of factors in a Pochhammer-style product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochhammerOrder {
    Finite(u64),
    /// Take factors until their leading exponent exceeds the truncation order.
    Infinite,
}

/// A power series in `q` with integer coefficients, truncated at a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    /// The zero series truncated at order `trunc`.
    pub fn zero(trunc: usize) -> Self {
        IntSeries {
            coeffs: vec![BigInt::zero(); trunc + 1],
        }
    }

    /// The constant series 1 truncated at order `trunc`.
    pub fn one(trunc: usize) -> Self {
        Self::monomial(1, 0, trunc)
    }

    /// The single term `coeff * q^degree` truncated at order `trunc`.
    pub fn monomial(coeff: i64, degree: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if degree <= trunc {
            s.coeffs[degree] = BigInt::from(coeff);
        }
        s
    }

    /// Build a series from explicit coefficients; the truncation order is
    /// `coeffs.len() - 1`. Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        IntSeries { coeffs }
    }

    /// Convenience constructor from machine integers (mostly for tests).
    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn trunc_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^i`; zero beyond the truncation order.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Shorten the series to a smaller truncation order.
    pub fn truncate(&self, trunc: usize) -> Self {
        assert!(
            trunc <= self.trunc_order(),
            "cannot extend a truncated series (requested {} > {})",
            trunc,
            self.trunc_order()
        );
        IntSeries {
            coeffs: self.coeffs[..=trunc].to_vec(),
        }
    }

    /// Multiply by `q^m`, keeping the truncation order (top coefficients drop).
    pub fn shift_up(&self, m: usize) -> Self {
        let n = self.trunc_order();
        let mut out = Self::zero(n);
        for i in m..=n {
            out.coeffs[i] = self.coeffs[i - m].clone();
        }
        out
    }

    pub fn neg(&self) -> Self {
        IntSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale_i64(&self, factor: i64) -> Self {
        let f = BigInt::from(factor);
        IntSeries {
            coeffs: self.coeffs.iter().map(|c| c * &f).collect(),
        }
    }

    /// Pointwise sum, truncated to the minimum of the two orders.
    pub fn add(&self, other: &Self) -> Self {
        let n = self.trunc_order().min(other.trunc_order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        IntSeries { coeffs }
    }

    /// Pointwise difference, truncated to the minimum of the two orders.
    pub fn sub(&self, other: &Self) -> Self {
        let n = self.trunc_order().min(other.trunc_order());
        let coeffs = (0..=n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        IntSeries { coeffs }
    }

    /// Add `sign * q^shift * other` in place, ignoring terms beyond the
    /// truncation order of `self`.
    pub fn add_assign_shifted(&mut self, other: &Self, shift: usize, negate: bool) {
        let n = self.trunc_order();
        if shift > n {
            return;
        }
        let hi = n.min(other.trunc_order() + shift);
        for i in shift..=hi {
            if negate {
                self.coeffs[i] -= &other.coeffs[i - shift];
            } else {
                self.coeffs[i] += &other.coeffs[i - shift];
            }
        }
    }

    /// Cauchy product truncated to the minimum order. Dispatches to the
    /// parallel kernel for large orders when the `parallel` feature is on.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.trunc_order().min(other.trunc_order());
        #[cfg(feature = "parallel")]
        if n >= PAR_MUL_MIN {
            let coeffs = (0..=n)
                .into_par_iter()
                .map(|i| cauchy_coeff(&self.coeffs, &other.coeffs, i))
                .collect();
            return IntSeries { coeffs };
        }
        self.mul_sequential_to(other, n)
    }

    /// Cauchy product on the single-threaded kernel regardless of features;
    /// kept public so benchmarks can compare both paths.
    pub fn mul_sequential(&self, other: &Self) -> Self {
        let n = self.trunc_order().min(other.trunc_order());
        self.mul_sequential_to(other, n)
    }

    fn mul_sequential_to(&self, other: &Self, n: usize) -> Self {
        let coeffs = (0..=n)
            .map(|i| cauchy_coeff(&self.coeffs, &other.coeffs, i))
            .collect();
        IntSeries { coeffs }
    }

    /// Multiplicative inverse. Requires a unit constant term; the inverse of
    /// an integer series with unit constant again has integer coefficients.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        Self::one(self.trunc_order()).div_unit(self)
    }

    /// Exact division by a series with unit constant term, truncated to the
    /// minimum of the two orders.
    pub fn div_unit(&self, divisor: &Self) -> Result<Self, SeriesError> {
        let b0 = &divisor.coeffs[0];
        if !b0.is_one() && !(-b0).is_one() {
            return Err(SeriesError::NonUnitConstantTerm);
        }
        let negate_out = (-b0).is_one();
        let n = self.trunc_order().min(divisor.trunc_order());
        // Precollect the divisor's nonzero tail so sparse divisors (e.g. the
        // pentagonal-number series) divide in O(N * nonzero terms).
        let tail: Vec<(usize, &BigInt)> = (1..=n)
            .filter(|&i| !divisor.coeffs[i].is_zero())
            .map(|i| (i, &divisor.coeffs[i]))
            .collect();
        let mut out: Vec<BigInt> = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = self.coeffs[i].clone();
            for &(d, b) in tail.iter().take_while(|&&(d, _)| d <= i) {
                acc -= b * &out[i - d];
            }
            if negate_out {
                acc = -acc;
            }
            out.push(acc);
        }
        Ok(IntSeries { coeffs: out })
    }

    /// Multiply in place by `1 - q^m`.
    pub fn mul_one_minus_qm(&mut self, m: usize) {
        let n = self.trunc_order();
        if m == 0 || m > n {
            if m == 0 {
                self.coeffs.iter_mut().for_each(|c| c.set_zero());
            }
            return;
        }
        for i in (m..=n).rev() {
            let lower = self.coeffs[i - m].clone();
            self.coeffs[i] -= lower;
        }
    }

    /// Multiply in place by `1 + q^m`.
    pub fn mul_one_plus_qm(&mut self, m: usize) {
        let n = self.trunc_order();
        if m == 0 || m > n {
            if m == 0 {
                self.coeffs.iter_mut().for_each(|c| *c *= 2);
            }
            return;
        }
        for i in (m..=n).rev() {
            let lower = self.coeffs[i - m].clone();
            self.coeffs[i] += lower;
        }
    }

    /// Divide in place by `1 - q^m` (multiplication by the geometric series),
    /// which is always exact over the integers.
    pub fn div_one_minus_qm(&mut self, m: usize) {
        let n = self.trunc_order();
        assert!(m >= 1, "divisor 1 - q^m needs m >= 1");
        for i in m..=n {
            let lower = self.coeffs[i - m].clone();
            self.coeffs[i] += lower;
        }
    }

    /// Divide in place by `1 + q^m`, always exact over the integers.
    pub fn div_one_plus_qm(&mut self, m: usize) {
        let n = self.trunc_order();
        assert!(m >= 1, "divisor 1 + q^m needs m >= 1");
        for i in m..=n {
            let lower = self.coeffs[i - m].clone();
            self.coeffs[i] -= lower;
        }
    }

    /// Divide in place by a polynomial `1 + sum(sign_d q^d)` given as its
    /// nonconstant terms `(d, sign_d)` with `d >= 1`.
    pub fn div_unit_poly(&mut self, tail: &[(usize, i64)]) {
        let n = self.trunc_order();
        for i in 0..=n {
            for &(d, s) in tail {
                if d >= 1 && d <= i {
                    let prior = self.coeffs[i - d].clone();
                    if s >= 0 {
                        self.coeffs[i] -= prior * s;
                    } else {
                        self.coeffs[i] += prior * (-s);
                    }
                }
            }
        }
    }
}

fn cauchy_coeff(a: &[BigInt], b: &[BigInt], n: usize) -> BigInt {
    let lo = (n + 1).saturating_sub(b.len());
    let hi = n.min(a.len() - 1);
    let mut acc = BigInt::zero();
    for i in lo..=hi {
        let ai = &a[i];
        if ai.is_zero() {
            continue;
        }
        let bj = &b[n - i];
        if !bj.is_zero() {
            acc += ai * bj;
        }
    }
    acc
}

/// The q-Pochhammer product with factors `1 - q^(base_exp + j*step)` for
/// `j = 0, 1, ...` — finitely many, or (for `Infinite`) until the factor's
/// exponent exceeds the truncation order, at which point further factors are
/// the identity on the retained coefficients.
pub fn pochhammer(base_exp: u64, step: u64, order: PochhammerOrder, trunc: usize) -> IntSeries {
    pochhammer_with_sign(base_exp, step, order, trunc, false)
}

/// Pochhammer variant with plus signs: factors `1 + q^(base_exp + j*step)`.
pub fn pochhammer_neg(base_exp: u64, step: u64, order: PochhammerOrder, trunc: usize) -> IntSeries {
    pochhammer_with_sign(base_exp, step, order, trunc, true)
}

fn pochhammer_with_sign(
    base_exp: u64,
    step: u64,
    order: PochhammerOrder,
    trunc: usize,
    plus: bool,
) -> IntSeries {
    assert!(base_exp >= 1, "pochhammer base exponent must be >= 1");
    assert!(step >= 1, "pochhammer step must be >= 1");
    let mut out = IntSeries::one(trunc);
    let mut j: u64 = 0;
    loop {
        if let PochhammerOrder::Finite(n) = order {
            if j >= n {
                break;
            }
        }
        let exp = base_exp + j * step;
        if exp > trunc as u64 {
            match order {
                PochhammerOrder::Infinite => break,
                // Finite factors beyond the truncation act as the identity.
                PochhammerOrder::Finite(_) => break,
            }
        }
        if plus {
            out.mul_one_plus_qm(exp as usize);
        } else {
            out.mul_one_minus_qm(exp as usize);
        }
        j += 1;
    }
    out
}

/// Generalized pentagonal exponents `j(3j -+ 1)/2 <= trunc` for `j >= 1`,
/// each paired with the sign `(-1)^j`.
pub fn generalized_pentagonal(trunc: usize) -> Vec<(usize, i8)> {
    let mut out = Vec::new();
    let mut j: usize = 1;
    loop {
        let a = j * (3 * j - 1) / 2;
        if a > trunc {
            break;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        out.push((a, sign));
        let b = j * (3 * j + 1) / 2;
        if b <= trunc {
            out.push((b, sign));
        }
        j += 1;
    }
    out
}

/// The pentagonal-number expansion of `prod_{j>=1} (1 - q^j)`: coefficients
/// are +-1 at the generalized pentagonal numbers and 0 elsewhere.
pub fn euler_series(trunc: usize) -> IntSeries {
    let mut s = IntSeries::one(trunc);
    for (e, sign) in generalized_pentagonal(trunc) {
        s.coeffs[e] = BigInt::from(sign);
    }
    s
}

/// Partition generating series `1 / prod_{j>=1} (1 - q^j)` via the
/// pentagonal-number recurrence; coefficient of `q^n` is `p(n)`.
/// Time: O(N^1.5) big-integer additions.
pub fn euler_inverse(trunc: usize) -> IntSeries {
    let pent = generalized_pentagonal(trunc);
    let mut coeffs: Vec<BigInt> = Vec::with_capacity(trunc + 1);
    coeffs.push(BigInt::one());
    for n in 1..=trunc {
        let mut acc = BigInt::zero();
        for &(e, sign) in pent.iter().take_while(|&&(e, _)| e <= n) {
            // p(n) = sum_j -sign_j p(n - e_j) since the pentagonal series has
            // coefficient sign_j at e_j and p is its inverse.
            if sign > 0 {
                acc -= &coeffs[n - e];
            } else {
                acc += &coeffs[n - e];
            }
        }
        coeffs.push(acc);
    }
    IntSeries { coeffs }
}
