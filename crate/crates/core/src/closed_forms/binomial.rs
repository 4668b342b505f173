//! Exact and log-space binomial coefficients `[n, k]`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// `[n, k]` exactly; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `[n, 0], [n, 1], …, [n, n]`.
pub fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigUint::one();
    for i in 0..=n {
        row.push(c.clone());
        if i < n {
            c *= n - i;
            c /= i + 1;
        }
    }
    row
}

/// Table of `ln n!` for `n ≤ max`, accumulated with compensated summation.
#[derive(Clone, Debug)]
pub struct LnFactorial {
    table: Vec<f64>,
}

impl LnFactorial {
    pub fn new(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        let (mut sum, mut carry) = (0.0f64, 0.0f64);
        table.push(0.0);
        for i in 1..=max {
            let y = (i as f64).ln() - carry;
            let t = sum + y;
            carry = (t - sum) - y;
            sum = t;
            table.push(sum);
        }
        Self { table }
    }

    pub fn max(&self) -> usize {
        self.table.len() - 1
    }

    pub fn ln_factorial(&self, n: usize) -> f64 {
        self.table[n]
    }

    /// `ln [n, k]`, or `−∞` when `k > n`.
    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        if k > n {
            f64::NEG_INFINITY
        } else {
            self.table[n] - self.table[k] - self.table[n - k]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn small_values() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        let row = binomial_row(5);
        let want: Vec<BigUint> = [1u32, 5, 10, 10, 5, 1].iter().map(|&v| v.into()).collect();
        assert_eq!(row, want);
    }

    #[test]
    fn large_value_is_exact() {
        // [100, 50]
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
        assert_eq!(binomial_row(100)[50], binomial(100, 50));
    }

    #[test]
    fn log_space_agrees_with_exact() {
        let lf = LnFactorial::new(3000);
        for (n, k) in [(10, 3), (500, 250), (3000, 1234)] {
            let exact = binomial(n, k);
            let bits = exact.bits() as i32;
            let shift = (bits - 60).max(0);
            let mant = (&exact >> shift as usize).to_f64().unwrap();
            let ln_exact = mant.ln() + shift as f64 * std::f64::consts::LN_2;
            assert!((lf.ln_binomial(n, k) - ln_exact).abs() < 1e-9 * ln_exact.max(1.0));
        }
        assert_eq!(lf.ln_binomial(2, 3), f64::NEG_INFINITY);
    }
}
