//! Stirling numbers of the second kind and the OGF-derivative transform they
//! induce: sum_n n^k f_n z^n = sum_{j<=k} S(k,j) z^j F^(j)(z).
//!
//! The triangle is kept in exact big integers (values grow
//! super-exponentially) and converted to double only at the final multiply.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Triangle memoized to this depth on first use; derivative orders in scope
/// stay well below it.
pub const TRIANGLE_N_MAX: usize = 64;

/// Exact table of S(n,k) for 0 <= k <= n <= n_max, built from the
/// triangular recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1), S(0,0) = 1.
#[derive(Debug)]
pub struct StirlingTriangle {
    rows: Vec<Vec<BigUint>>,
}

impl StirlingTriangle {
    pub fn build(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            for k in 0..=n {
                let mut v = BigUint::zero();
                if k <= n - 1 {
                    v += prev[k].clone() * BigUint::from(k);
                }
                if k >= 1 && k - 1 <= n - 1 {
                    v += prev[k - 1].clone();
                }
                row.push(v);
            }
            rows.push(row);
        }
        Self { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        self.rows[n][k].clone()
    }

    /// Row sums are the Bell numbers.
    pub fn row_sum(&self, n: usize) -> BigUint {
        self.rows[n].iter().sum()
    }
}

/// The shared memoized triangle.
pub fn triangle() -> &'static StirlingTriangle {
    static TRIANGLE: OnceLock<StirlingTriangle> = OnceLock::new();
    TRIANGLE.get_or_init(|| StirlingTriangle::build(TRIANGLE_N_MAX))
}

/// S(n,k) by the triangular recurrence; 0 when k > n. Total function.
pub fn stirling2(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    if n <= TRIANGLE_N_MAX {
        return triangle().get(n, k);
    }
    // Beyond the memoized depth: roll the recurrence forward row by row.
    let mut row: Vec<BigUint> = (0..=TRIANGLE_N_MAX)
        .map(|j| triangle().get(TRIANGLE_N_MAX, j))
        .collect();
    for m in (TRIANGLE_N_MAX + 1)..=n {
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let mut v = BigUint::zero();
            if j < row.len() {
                v += row[j].clone() * BigUint::from(j);
            }
            if j >= 1 && j - 1 < row.len() {
                v += row[j - 1].clone();
            }
            next.push(v);
        }
        row = next;
    }
    row[k].clone()
}

/// S(n,k) as f64 (loses exactness past 2^53; fine for the double-precision
/// kernel sums where it is consumed).
pub fn stirling2_f64(n: usize, k: usize) -> f64 {
    stirling2(n, k).to_f64().unwrap_or(f64::INFINITY)
}

/// S(n,k) by the finite alternating sum k!^-1 sum_j C(k,j) (-1)^{k-j} j^n,
/// evaluated exactly in big integers. Independent route from the recurrence.
pub fn stirling2_explicit(n: usize, k: usize) -> BigUint {
    assert!(n <= 60, "explicit-sum route is kept to n <= 60");
    if k > n {
        return BigUint::zero();
    }
    if n == 0 && k == 0 {
        return BigUint::one();
    }
    if k == 0 {
        return BigUint::zero();
    }
    let mut sum = BigInt::zero();
    let mut binom = BigInt::one(); // C(k, 0)
    for j in 0..=k {
        if j > 0 {
            binom = binom * BigInt::from(k - j + 1) / BigInt::from(j);
        }
        let term = binom.clone() * BigInt::from(j).pow(n as u32);
        if (k - j) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let mut kfact = BigInt::one();
    for i in 1..=k {
        kfact *= BigInt::from(i);
    }
    let (quot, rem) = (sum.clone() / &kfact, sum % &kfact);
    assert!(rem.is_zero(), "alternating sum must be divisible by k!");
    quot.to_biguint().expect("Stirling numbers are non-negative")
}

/// The OGF of <n^k f_n> at z from the derivatives of the base OGF:
/// sum_{j=0..k} S(k,j) z^j F^(j)(z). `derivs[j]` must hold F^(j)(z).
pub fn ogf_power_transform(derivs: &[Complex64], z: Complex64, k: usize) -> Result<Complex64> {
    if derivs.len() != k + 1 {
        return Err(Error::LengthMismatch {
            got: derivs.len(),
            expected: k + 1,
        });
    }
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zpow = Complex64::new(1.0, 0.0);
    for (j, d) in derivs.iter().enumerate() {
        sum += stirling2_f64(k, j) * zpow * d;
        zpow *= z;
    }
    Ok(sum)
}

/// Negative-order polylogarithm sum_{n>=0} n^m x^n for m >= 1, through the
/// Stirling closed form sum_j S(m,j) x^j j! / (1-x)^{j+1}.
pub fn neg_polylog(m: usize, x: Complex64) -> Result<Complex64> {
    if !(1..=20).contains(&m) {
        return Err(Error::DomainError(format!(
            "neg_polylog order m = {m} outside 1..=20"
        )));
    }
    if x.norm() > 1.0 - 1e-9 {
        return Err(Error::DomainError(format!(
            "neg_polylog needs |x| <= 1 - 1e-9, got |x| = {}",
            x.norm()
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::new(0.0, 0.0);
    let mut xpow = one; // x^j
    let mut jfact = 1.0f64;
    let inv = one / (one - x);
    let mut invpow = inv; // (1-x)^{-(j+1)}
    for j in 0..=m {
        if j > 0 {
            xpow *= x;
            jfact *= j as f64;
            invpow *= inv;
        }
        sum += stirling2_f64(m, j) * xpow * jfact * invpow;
    }
    Ok(sum)
}
