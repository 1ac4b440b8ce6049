//! Bivariate truncated series in `x` and `q` with integer coefficients.
//!
//! A [`BiSeries`] maps each x-degree `m` (up to a fixed x-order) to an
//! [`IntSeries`] in `q`; all columns share one q-truncation order. Products
//! truncate x and q independently to the minima of the operand orders.

use crate::series::IntSeries;
#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Column count at or above which `mul` uses the parallel path.
#[cfg(feature = "parallel")]
const PAR_COLS_MIN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSeries {
    cols: Vec<IntSeries>,
}

impl BiSeries {
    pub fn zero(x_order: usize, q_order: usize) -> Self {
        BiSeries {
            cols: vec![IntSeries::zero(q_order); x_order + 1],
        }
    }

    pub fn one(x_order: usize, q_order: usize) -> Self {
        Self::monomial(1, 0, 0, x_order, q_order)
    }

    /// The single term `coeff * x^x_deg * q^q_deg`.
    pub fn monomial(coeff: i64, x_deg: usize, q_deg: usize, x_order: usize, q_order: usize) -> Self {
        let mut s = Self::zero(x_order, q_order);
        if x_deg <= x_order {
            s.cols[x_deg] = IntSeries::monomial(coeff, q_deg, q_order);
        }
        s
    }

    /// Build from explicit columns; all must share one q-truncation order.
    pub fn from_cols(cols: Vec<IntSeries>) -> Self {
        assert!(!cols.is_empty(), "a bivariate series needs an x^0 column");
        let q = cols[0].trunc_order();
        assert!(
            cols.iter().all(|c| c.trunc_order() == q),
            "all columns must share the q-truncation order"
        );
        BiSeries { cols }
    }

    pub fn x_order(&self) -> usize {
        self.cols.len() - 1
    }

    pub fn q_order(&self) -> usize {
        self.cols[0].trunc_order()
    }

    /// The coefficient of `x^m` as a q-series (zero beyond the x-order).
    pub fn coefficient(&self, m: usize) -> IntSeries {
        self.cols
            .get(m)
            .cloned()
            .unwrap_or_else(|| IntSeries::zero(self.q_order()))
    }

    pub fn cols(&self) -> &[IntSeries] {
        &self.cols
    }

    pub fn add(&self, other: &Self) -> Self {
        let xo = self.x_order().min(other.x_order());
        let qo = self.q_order().min(other.q_order());
        let cols = (0..=xo)
            .map(|m| self.cols[m].truncate(qo).add(&other.cols[m]))
            .collect();
        BiSeries { cols }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let xo = self.x_order().min(other.x_order());
        let qo = self.q_order().min(other.q_order());
        let cols = (0..=xo)
            .map(|m| self.cols[m].truncate(qo).sub(&other.cols[m]))
            .collect();
        BiSeries { cols }
    }

    /// Product truncated to the minimum x-order and q-order of the operands.
    pub fn mul(&self, other: &Self) -> Self {
        let xo = self.x_order().min(other.x_order());
        let qo = self.q_order().min(other.q_order());
        let col_product = |m: usize| -> IntSeries {
            let mut acc = IntSeries::zero(qo);
            for i in 0..=m {
                let (a, b) = (&self.cols[i], &other.cols[m - i]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(b).truncate(qo));
            }
            acc
        };
        #[cfg(feature = "parallel")]
        if xo + 1 >= PAR_COLS_MIN {
            let cols = (0..=xo).into_par_iter().map(col_product).collect();
            return BiSeries { cols };
        }
        let cols = (0..=xo).map(col_product).collect();
        BiSeries { cols }
    }

    /// Multiply every column by a series in `q` alone.
    pub fn mul_series(&self, s: &IntSeries) -> Self {
        let qo = self.q_order().min(s.trunc_order());
        let cols = (0..self.cols.len())
            .map(|m| self.cols[m].truncate(qo).mul(s))
            .collect();
        BiSeries { cols }
    }

    /// Multiply by the monomial `coeff * x^x_deg * q^q_deg`, truncating in x.
    pub fn mul_monomial(&self, coeff: i64, x_deg: usize, q_deg: usize) -> Self {
        let xo = self.x_order();
        let qo = self.q_order();
        let mut cols = vec![IntSeries::zero(qo); xo + 1];
        for m in x_deg..=xo {
            cols[m] = self.cols[m - x_deg].shift_up(q_deg).scale_i64(coeff);
        }
        BiSeries { cols }
    }

    /// Substitute `x -> x * q^j`: the `x^m` column picks up a factor `q^(j*m)`.
    pub fn substitute_x_qpow(&self, j: usize) -> Self {
        let cols = (0..self.cols.len())
            .map(|m| self.cols[m].shift_up(j * m))
            .collect();
        BiSeries { cols }
    }

    /// Evaluate at `x = 1` by summing all columns. Exact for coefficients of
    /// `q^n` only when the x-order is at least the largest contributing
    /// x-degree (for counting series: x-order >= q-order).
    pub fn substitute_x1(&self) -> IntSeries {
        let mut acc = IntSeries::zero(self.q_order());
        for c in &self.cols {
            acc = acc.add(c);
        }
        acc
    }

    /// `1 / (xq; q)_inf` expanded by the q-binomial theorem: the `x^m`
    /// column is `q^m / (q; q)_m`.
    pub fn inv_pochhammer_xq(x_order: usize, q_order: usize) -> Self {
        let mut cols = Vec::with_capacity(x_order + 1);
        cols.push(IntSeries::one(q_order));
        for m in 1..=x_order {
            let mut next = cols[m - 1].shift_up(1);
            next.div_one_minus_qm(m);
            cols.push(next);
        }
        BiSeries { cols }
    }

    /// `(xq; q)_inf` expanded by the q-binomial theorem: the `x^m` column is
    /// `(-1)^m q^(m(m+1)/2) / (q; q)_m`.
    pub fn pochhammer_xq(x_order: usize, q_order: usize) -> Self {
        let mut cols = Vec::with_capacity(x_order + 1);
        cols.push(IntSeries::one(q_order));
        for m in 1..=x_order {
            let mut next = cols[m - 1].shift_up(m).neg();
            next.div_one_minus_qm(m);
            cols.push(next);
        }
        BiSeries { cols }
    }
}
