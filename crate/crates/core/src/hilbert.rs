//! Hilbert series `N(q) / (1-q)^n` with a Laurent polynomial numerator.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    /// Coefficients of the numerator by exponent of `q`.
    pub numerator: BTreeMap<i32, i64>,
    pub denominator_power: usize,
}

pub(crate) fn binom(n: i64, k: i64) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

impl HilbertSeries {
    pub fn new(mut numerator: BTreeMap<i32, i64>, denominator_power: usize) -> Self {
        numerator.retain(|_, v| *v != 0);
        HilbertSeries { numerator, denominator_power }
    }

    /// `dim M_d`.
    pub fn coefficient(&self, d: i32) -> i128 {
        let n = self.denominator_power as i64;
        self.numerator
            .iter()
            .filter(|(j, _)| **j <= d)
            .map(|(j, c)| {
                let e = (d - j) as i64;
                let series = if n == 0 { (e == 0) as i128 } else { binom(e + n - 1, n - 1) };
                *c as i128 * series
            })
            .sum()
    }

    pub fn coefficients(&self, from: i32, to: i32) -> Vec<i128> {
        (from..=to).map(|d| self.coefficient(d)).collect()
    }

    /// Multiplies the numerator by `q^s`.
    pub fn shifted(&self, s: i32) -> HilbertSeries {
        HilbertSeries {
            numerator: self.numerator.iter().map(|(j, c)| (j + s, *c)).collect(),
            denominator_power: self.denominator_power,
        }
    }
}

/// Polynomial in one variable with integer coefficients, lowest degree first.
pub type IntPoly = Vec<i128>;

/// Exact division of `p` by `(1-q)^e`; `None` if not divisible.
pub fn divide_by_one_minus_q(p: &[i128], e: usize) -> Option<IntPoly> {
    let mut cur: Vec<i128> = p.to_vec();
    for _ in 0..e {
        // p(q) = (1-q) r(q): r_0 = p_0, r_i = p_i + r_{i-1}
        if cur.is_empty() {
            return Some(cur);
        }
        let mut r = Vec::with_capacity(cur.len());
        let mut acc = 0i128;
        for &c in &cur {
            acc += c;
            r.push(acc);
        }
        if r.pop() != Some(0) {
            return None;
        }
        cur = r;
    }
    Some(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_ring_series() {
        // S = K[x]: 1/(1-q)
        let h = HilbertSeries::new([(0, 1)].into_iter().collect(), 1);
        assert_eq!(h.coefficients(0, 3), alloc::vec![1, 1, 1, 1]);
        // S(-d) in 3 variables
        let h = HilbertSeries::new([(2, 1)].into_iter().collect(), 3);
        assert_eq!(h.coefficients(0, 4), alloc::vec![0, 0, 1, 3, 6]);
    }

    #[test]
    fn exact_division() {
        // (1-q)^2 = 1 - 2q + q^2
        assert_eq!(divide_by_one_minus_q(&[1, -2, 1], 2), Some(alloc::vec![1]));
        assert_eq!(divide_by_one_minus_q(&[1, -2, 2], 1), None);
    }
}
