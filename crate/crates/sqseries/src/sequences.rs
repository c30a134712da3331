//! The sequence families f_n behind the square series, their closed-form
//! OGFs and j-th derivatives, and the direct truncated-summation oracles
//! every integral representation is verified against.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::EvalResult;
use crate::stirling;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A sequence family f_n together with its parameters.
#[derive(Clone)]
pub enum SequenceKind {
    /// f_n = c^n
    Geometric { c: Complex64 },
    /// f_n = (a n + b) c^n
    AffineGeometric {
        a: Complex64,
        b: Complex64,
        c: Complex64,
    },
    /// f_n = (alpha n + beta)^m c^n
    PolyPowGeometric {
        alpha: Complex64,
        beta: Complex64,
        m: usize,
        c: Complex64,
    },
    /// f_n = r^n / n!
    Exponential { r: Complex64 },
    /// f_n = n (n-1) r^n / n!
    BinomialPowExponential { r: Complex64 },
    /// f_n = cos(alpha n + beta) c^n
    FourierCos {
        alpha: f64,
        beta: f64,
        c: Complex64,
    },
    /// f_n = sin(alpha n + beta) c^n
    FourierSin {
        alpha: f64,
        beta: f64,
        c: Complex64,
    },
    /// Caller-supplied terms; no closed-form OGF.
    Custom {
        f: Arc<dyn Fn(usize) -> Complex64 + Send + Sync>,
    },
}

impl fmt::Debug for SequenceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Geometric { c } => write!(f, "Geometric {{ c: {c} }}"),
            Self::AffineGeometric { a, b, c } => {
                write!(f, "AffineGeometric {{ a: {a}, b: {b}, c: {c} }}")
            }
            Self::PolyPowGeometric { alpha, beta, m, c } => write!(
                f,
                "PolyPowGeometric {{ alpha: {alpha}, beta: {beta}, m: {m}, c: {c} }}"
            ),
            Self::Exponential { r } => write!(f, "Exponential {{ r: {r} }}"),
            Self::BinomialPowExponential { r } => {
                write!(f, "BinomialPowExponential {{ r: {r} }}")
            }
            Self::FourierCos { alpha, beta, c } => {
                write!(f, "FourierCos {{ alpha: {alpha}, beta: {beta}, c: {c} }}")
            }
            Self::FourierSin { alpha, beta, c } => {
                write!(f, "FourierSin {{ alpha: {alpha}, beta: {beta}, c: {c} }}")
            }
            Self::Custom { .. } => write!(f, "Custom {{ .. }}"),
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// r^n / n! by an incremental product of r/k; stable past the point where
/// n! alone would overflow.
fn exp_term(r: Complex64, n: usize) -> Complex64 {
    let mut acc = ONE;
    for k in 1..=n {
        acc *= r / k as f64;
    }
    acc
}

/// The term f_n of the family.
pub fn term(kind: &SequenceKind, n: usize) -> Complex64 {
    let nf = n as f64;
    match kind {
        SequenceKind::Geometric { c } => c.powu(n as u32),
        SequenceKind::AffineGeometric { a, b, c } => (a * nf + b) * c.powu(n as u32),
        SequenceKind::PolyPowGeometric { alpha, beta, m, c } => {
            (alpha * nf + beta).powu(*m as u32) * c.powu(n as u32)
        }
        SequenceKind::Exponential { r } => exp_term(*r, n),
        SequenceKind::BinomialPowExponential { r } => nf * (nf - 1.0) * exp_term(*r, n),
        // Trig factors through complex exponentials, as the Fourier-type
        // kernels are assembled: c^n cos(an+b) = (e^{i b}(e^{i a} c)^n
        // + e^{-i b}(e^{-i a} c)^n)/2, avoiding big*small cancellation.
        SequenceKind::FourierCos { alpha, beta, c } => {
            let plus = (I * *beta).exp() * ((I * *alpha).exp() * c).powu(n as u32);
            let minus = (-I * *beta).exp() * ((-I * *alpha).exp() * c).powu(n as u32);
            (plus + minus) / 2.0
        }
        SequenceKind::FourierSin { alpha, beta, c } => {
            let plus = (I * *beta).exp() * ((I * *alpha).exp() * c).powu(n as u32);
            let minus = (-I * *beta).exp() * ((-I * *alpha).exp() * c).powu(n as u32);
            (plus - minus) / (2.0 * I)
        }
        SequenceKind::Custom { f } => f(n),
    }
}

fn check_geometric_region(c: Complex64, z: Complex64) -> Result<()> {
    if (c * z).norm() >= 1.0 - 1e-9 {
        return Err(Error::DomainError(format!(
            "|cz| = {} is outside the geometric OGF region |cz| < 1",
            (c * z).norm()
        )));
    }
    Ok(())
}

/// sum_{n>=0} n^k x^n for |x| < 1, any k >= 0 (k = 0 keeps the n = 0 term).
fn power_sum(k: usize, x: Complex64) -> Complex64 {
    if k == 0 {
        return ONE / (ONE - x);
    }
    let inv = ONE / (ONE - x);
    let mut sum = ZERO;
    let mut xpow = ONE;
    let mut jfact = 1.0f64;
    let mut invpow = inv;
    for j in 0..=k {
        if j > 0 {
            xpow *= x;
            jfact *= j as f64;
            invpow *= inv;
        }
        sum += stirling::stirling2_f64(k, j) * xpow * jfact * invpow;
    }
    sum
}

fn binom_f64(n: usize, k: usize) -> f64 {
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// j-th derivative of the (alpha n + beta)^m c^n OGF. Re-indexing the series
/// by k = n - j gives F^(j)(z) = c^j sum_k P(k) (cz)^k with
/// P(k) = (alpha k + alpha j + beta)^m prod_{i=1..j} (k + i), so the value is
/// a plain polynomial combination of the power sums sum k^d (cz)^k; no
/// z^{-j} factor, hence no small-z cancellation.
fn polypow_deriv(
    alpha: Complex64,
    beta: Complex64,
    m: usize,
    c: Complex64,
    z: Complex64,
    j: usize,
) -> Result<Complex64> {
    check_geometric_region(c, z)?;
    let u = c * z;
    // prod_{i=1..j} (k + i) as coefficients in k, by iterated convolution.
    let mut rising = vec![ONE];
    for i in 1..=j {
        let mut next = vec![ZERO; rising.len() + 1];
        for (d, &coef) in rising.iter().enumerate() {
            next[d + 1] += coef;
            next[d] += coef * i as f64;
        }
        rising = next;
    }
    // Multiply by (alpha k + shift)^m, shift = alpha j + beta.
    let shift = alpha * j as f64 + beta;
    let mut coeffs = vec![ZERO; rising.len() + m];
    for t in 0..=m {
        let factor = binom_f64(m, t) * alpha.powu(t as u32) * shift.powu((m - t) as u32);
        for (d, &coef) in rising.iter().enumerate() {
            coeffs[d + t] += coef * factor;
        }
    }
    let mut val = ZERO;
    for (d, &coef) in coeffs.iter().enumerate() {
        if coef != ZERO {
            val += coef * power_sum(d, u);
        }
    }
    Ok(c.powu(j as u32) * val)
}

/// Closed-form OGF F_f(z) of the family.
pub fn ogf(kind: &SequenceKind, z: Complex64) -> Result<Complex64> {
    ogf_deriv(kind, z, 0)
}

/// Closed-form j-th derivative F_f^(j)(z).
pub fn ogf_deriv(kind: &SequenceKind, z: Complex64, j: usize) -> Result<Complex64> {
    if j > 64 {
        return Err(Error::DomainError(format!(
            "derivative order {j} exceeds the supported 64"
        )));
    }
    let jf = factorial(j);
    let jn = j as f64;
    match kind {
        SequenceKind::Geometric { c } => {
            check_geometric_region(*c, z)?;
            Ok(c.powu(j as u32) * jf / (ONE - c * z).powu(j as u32 + 1))
        }
        SequenceKind::AffineGeometric { a, b, c } => {
            check_geometric_region(*c, z)?;
            let cz = c * z;
            Ok(c.powu(j as u32) * jf * ((a - b) * cz + a * jn + b)
                / (ONE - cz).powu(j as u32 + 2))
        }
        SequenceKind::PolyPowGeometric { alpha, beta, m, c } => {
            polypow_deriv(*alpha, *beta, *m, *c, z, j)
        }
        SequenceKind::Exponential { r } => Ok(r.powu(j as u32) * (r * z).exp()),
        SequenceKind::BinomialPowExponential { r } => {
            let rz = r * z;
            Ok(r.powu(j as u32) * rz.exp() * (rz * rz + 2.0 * jn * rz + jn * (jn - 1.0)))
        }
        SequenceKind::FourierCos { alpha, beta, c } => {
            check_geometric_region(*c, z)?;
            let cp = (I * *alpha).exp() * c;
            let cm = (-I * *alpha).exp() * c;
            let gp = cp.powu(j as u32) * jf / (ONE - cp * z).powu(j as u32 + 1);
            let gm = cm.powu(j as u32) * jf / (ONE - cm * z).powu(j as u32 + 1);
            Ok(((I * *beta).exp() * gp + (-I * *beta).exp() * gm) / 2.0)
        }
        SequenceKind::FourierSin { alpha, beta, c } => {
            check_geometric_region(*c, z)?;
            let cp = (I * *alpha).exp() * c;
            let cm = (-I * *alpha).exp() * c;
            let gp = cp.powu(j as u32) * jf / (ONE - cp * z).powu(j as u32 + 1);
            let gm = cm.powu(j as u32) * jf / (ONE - cm * z).powu(j as u32 + 1);
            Ok(((I * *beta).exp() * gp - (-I * *beta).exp() * gm) / (2.0 * I))
        }
        SequenceKind::Custom { .. } => Err(Error::UnsupportedDerivative),
    }
}

/// The data of a unilateral square series sum_{n>=0} f_n q^{n^2} z^n.
#[derive(Debug, Clone)]
pub struct SquareSeriesParams {
    pub q: Complex64,
    pub z: Complex64,
    pub kind: SequenceKind,
}

pub const DEFAULT_N_CAP: usize = 10_000;

/// Direct truncated summation of the square series: the ground-truth oracle.
///
/// Stops at the first index where three consecutive terms fall below
/// abs_tol * max(1, |partial|); the trailing-zero patterns of the Fourier
/// kinds make a single small term an unreliable stop signal.
pub fn square_series_sum(
    params: &SquareSeriesParams,
    abs_tol: f64,
    n_cap: usize,
) -> Result<EvalResult> {
    let q = params.q;
    if q.norm() > 1.0 + 1e-15 {
        return Err(Error::DomainError(format!(
            "square series needs |q| <= 1, got |q| = {}",
            q.norm()
        )));
    }
    // q = 0 degenerates to the n = 0 term under the 0^0 = 1 convention.
    if q.norm() == 0.0 {
        return Ok(EvalResult::exact(term(&params.kind, 0)));
    }
    let mut partial = ZERO;
    let mut qpow = ONE; // q^{n^2}
    let mut qstep = q; // q^{2n+1}
    let qsq = q * q;
    let mut zpow = ONE;
    let mut small_run = 0usize;
    let mut last_mag = 0.0f64;
    for n in 0..n_cap {
        let t = term(&params.kind, n) * qpow * zpow;
        partial += t;
        last_mag = t.norm();
        if last_mag <= abs_tol * partial.norm().max(1.0) {
            small_run += 1;
            if small_run == 3 {
                return Ok(EvalResult {
                    value: partial,
                    error_estimate: last_mag,
                    nodes_used: (n + 1) as u64,
                    converged: true,
                    warnings: Vec::new(),
                });
            }
        } else {
            small_run = 0;
        }
        qpow *= qstep;
        qstep *= qsq;
        zpow *= params.z;
    }
    Err(Error::NoConvergence {
        value: partial,
        error_estimate: last_mag,
        nodes_used: n_cap as u64,
    })
}

/// The tuple (a, b, r2, r1, r0, q) of a bilateral series
/// sum_{n in Z} (-1)^n (a n + b) q^{(r2 n^2 + r1 n + r0)/2}.
#[derive(Debug, Clone)]
pub struct BilateralSpec {
    pub a: f64,
    pub b: f64,
    pub r2: f64,
    pub r1: f64,
    pub r0: f64,
    pub q: Complex64,
}

/// One unilateral half of a folded bilateral series:
/// prefactor * sum_{n>=0} (a n + b) q_eff^{n^2} c_eff^n.
#[derive(Debug, Clone)]
pub struct UnilateralPart {
    pub prefactor: Complex64,
    pub q_eff: Complex64,
    pub c_eff: Complex64,
    pub a: Complex64,
    pub b: Complex64,
}

impl UnilateralPart {
    pub fn kind(&self) -> SequenceKind {
        SequenceKind::AffineGeometric {
            a: self.a,
            b: self.b,
            c: self.c_eff,
        }
    }
}

/// Fold the bilateral series into two unilateral square series: the n >= 0
/// half as-is, the n <= -1 half re-indexed and shifted so both run over
/// non-negative n with effective parameters q_eff = q^{r2/2} and
/// c_eff = -q^{r1/2} (resp. -q^{(2 r2 - r1)/2}).
pub fn bilateral_fold(spec: &BilateralSpec) -> Result<[UnilateralPart; 2]> {
    if spec.r2 <= 0.0 {
        return Err(Error::DomainError(
            "bilateral series needs r2 > 0 for convergence".into(),
        ));
    }
    if spec.q.norm() >= 1.0 {
        return Err(Error::DomainError(format!(
            "bilateral series needs |q| < 1, got {}",
            spec.q.norm()
        )));
    }
    let q = spec.q;
    let q_eff = q.powf(spec.r2 / 2.0);
    let first = UnilateralPart {
        prefactor: q.powf(spec.r0 / 2.0),
        q_eff,
        c_eff: -q.powf(spec.r1 / 2.0),
        a: Complex64::new(spec.a, 0.0),
        b: Complex64::new(spec.b, 0.0),
    };
    let second = UnilateralPart {
        prefactor: q.powf((spec.r2 - spec.r1 + spec.r0) / 2.0),
        q_eff,
        c_eff: -q.powf((2.0 * spec.r2 - spec.r1) / 2.0),
        a: Complex64::new(spec.a, 0.0),
        b: Complex64::new(spec.a - spec.b, 0.0),
    };
    Ok([first, second])
}

/// The bilateral value by summing both folded halves.
pub fn bilateral_sum(spec: &BilateralSpec, abs_tol: f64) -> Result<EvalResult> {
    if spec.q.norm() == 0.0 {
        // Only the n = 0 term q^{r0/2} b survives (0^0 = 1).
        let v = if spec.r0 == 0.0 {
            Complex64::new(spec.b, 0.0)
        } else {
            ZERO
        };
        return Ok(EvalResult::exact(v));
    }
    let parts = bilateral_fold(spec)?;
    let mut total = ZERO;
    let mut err = 0.0;
    let mut nodes = 0;
    for part in &parts {
        let r = square_series_sum(
            &SquareSeriesParams {
                q: part.q_eff,
                z: ONE,
                kind: part.kind(),
            },
            abs_tol,
            DEFAULT_N_CAP,
        )?;
        total += part.prefactor * r.value;
        err += part.prefactor.norm() * r.error_estimate;
        nodes += r.nodes_used;
    }
    Ok(EvalResult {
        value: total,
        error_estimate: err,
        nodes_used: nodes,
        converged: true,
        warnings: Vec::new(),
    })
}

/// Finite q-Pochhammer symbol (a; q)_n = prod_{i=0..n-1} (1 - a q^i).
pub fn qpochhammer(a: Complex64, q: Complex64, n: usize) -> Complex64 {
    let mut acc = ONE;
    let mut aq = a;
    for _ in 0..n {
        acc *= ONE - aq;
        aq *= q;
    }
    acc
}

/// Truncated Euler function prod_{k=1..n} (1 - q^k).
pub fn euler_product(q: Complex64, n: usize) -> Complex64 {
    qpochhammer(q, q, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn re(k: SequenceKind, z: f64) -> f64 {
        ogf(&k, c(z)).unwrap().re
    }

    #[test]
    fn term_examples() {
        assert_eq!(term(&SequenceKind::Geometric { c: c(0.5) }, 3), c(0.125));
        assert_eq!(
            term(
                &SequenceKind::AffineGeometric {
                    a: c(2.0),
                    b: c(1.0),
                    c: c(1.0)
                },
                4
            ),
            c(9.0)
        );
        let e5 = term(&SequenceKind::Exponential { r: c(1.0) }, 5);
        assert!((e5.re - 1.0 / 120.0).abs() < 1e-18);
        let b3 = term(&SequenceKind::BinomialPowExponential { r: c(2.0) }, 3);
        assert!((b3.re - 6.0 * 8.0 / 6.0).abs() < 1e-14);
        let f0 = term(
            &SequenceKind::FourierCos {
                alpha: 0.7,
                beta: 0.2,
                c: c(0.9),
            },
            5,
        );
        assert!((f0.re - (0.7f64 * 5.0 + 0.2).cos() * 0.9f64.powi(5)).abs() < 1e-13);
        assert!(f0.im.abs() < 1e-15);
    }

    #[test]
    fn custom_terms_and_unsupported_derivative() {
        let k = SequenceKind::Custom {
            f: Arc::new(|n| c((n * n) as f64)),
        };
        assert_eq!(term(&k, 7), c(49.0));
        assert!(matches!(
            ogf(&k, c(0.5)),
            Err(Error::UnsupportedDerivative)
        ));
    }

    #[test]
    fn ogf_matches_series_for_every_closed_form_kind() {
        let kinds: Vec<SequenceKind> = vec![
            SequenceKind::Geometric { c: c(0.8) },
            SequenceKind::AffineGeometric {
                a: c(2.0),
                b: c(-0.5),
                c: c(-0.7),
            },
            SequenceKind::PolyPowGeometric {
                alpha: c(1.5),
                beta: c(0.25),
                m: 3,
                c: c(0.6),
            },
            SequenceKind::Exponential { r: c(1.3) },
            SequenceKind::BinomialPowExponential { r: c(-0.9) },
            SequenceKind::FourierCos {
                alpha: 1.1,
                beta: 0.4,
                c: c(0.75),
            },
            SequenceKind::FourierSin {
                alpha: 0.9,
                beta: -0.3,
                c: c(0.7),
            },
        ];
        let z = c(0.95);
        for kind in &kinds {
            let closed = ogf(kind, z).unwrap();
            let mut series = ZERO;
            let mut zp = ONE;
            for n in 0..400 {
                series += term(kind, n) * zp;
                zp *= z;
            }
            assert!(
                (closed - series).norm() <= 1e-11 * series.norm().max(1.0),
                "{kind:?}: closed {closed} vs series {series}"
            );
        }
    }

    #[test]
    fn ogf_deriv_examples_from_the_table() {
        // Geometric c=1 at z=1/2, j=1: 1!/(1-z)^2 = 4.
        assert!(
            (ogf_deriv(&SequenceKind::Geometric { c: c(1.0) }, c(0.5), 1)
                .unwrap()
                .re
                - 4.0)
                .abs()
                < 1e-13
        );
        // Exponential r=2 at z=0, j=3: r^3 = 8.
        assert!(
            (ogf_deriv(&SequenceKind::Exponential { r: c(2.0) }, c(0.0), 3)
                .unwrap()
                .re
                - 8.0)
                .abs()
                < 1e-13
        );
        // n(n-1)c^n row at c=1, z=1/3: 2(cz)^2/(1-cz)^3 = 0.75, reached as
        // the m=2 minus m=1 polynomial-power combination.
        let m2 = SequenceKind::PolyPowGeometric {
            alpha: c(1.0),
            beta: c(0.0),
            m: 2,
            c: c(1.0),
        };
        let m1 = SequenceKind::PolyPowGeometric {
            alpha: c(1.0),
            beta: c(0.0),
            m: 1,
            c: c(1.0),
        };
        let got = re(m2, 1.0 / 3.0) - re(m1, 1.0 / 3.0);
        let table = 2.0 * (1.0f64 / 3.0).powi(2) / (1.0f64 - 1.0 / 3.0).powi(3);
        assert!((table - 0.75).abs() < 1e-15);
        assert!((got - table).abs() < 1e-13, "{got} vs {table}");
    }

    #[test]
    fn ogf_deriv_matches_finite_differences() {
        // Central difference of F^(j-1) approximates F^(j) to ~1e-6 relative.
        let kinds: Vec<SequenceKind> = vec![
            SequenceKind::Geometric { c: c(0.6) },
            SequenceKind::AffineGeometric {
                a: c(1.2),
                b: c(0.3),
                c: c(-0.5),
            },
            SequenceKind::PolyPowGeometric {
                alpha: c(2.0),
                beta: c(1.0),
                m: 2,
                c: c(0.45),
            },
            SequenceKind::Exponential { r: c(0.8) },
            SequenceKind::BinomialPowExponential { r: c(1.1) },
            SequenceKind::FourierCos {
                alpha: 0.8,
                beta: 0.1,
                c: c(0.55),
            },
            SequenceKind::FourierSin {
                alpha: 1.3,
                beta: 0.6,
                c: c(0.5),
            },
        ];
        let mut rng = crate::rng::SplitMix64::new(0x5eed);
        for kind in &kinds {
            for _ in 0..20 {
                // Stay away from z ~ 0, where the fixed step 1e-5 is no
                // longer small against the z^{-j} scale of the derivatives.
                let z = c(rng.in_range(0.2, 0.9));
                for j in 1..=8usize {
                    let h = 1e-5;
                    let up = ogf_deriv(kind, z + c(h), j - 1).unwrap();
                    let dn = ogf_deriv(kind, z - c(h), j - 1).unwrap();
                    let fd = (up - dn) / (2.0 * h);
                    let exact = ogf_deriv(kind, z, j).unwrap();
                    let denom = exact.norm().max(1e-6);
                    assert!(
                        (fd - exact).norm() / denom < 1e-6,
                        "{kind:?} j={j} z={z}: fd {fd} vs {exact}"
                    );
                }
            }
        }
    }

    #[test]
    fn polypow_derivatives_match_brute_series() {
        // F^(j)(z) = sum_{n>=j} (alpha n + beta)^m c^n n!/(n-j)! z^{n-j},
        // summed directly as the independent route.
        let (alpha, beta, m, cc) = (c(2.0), c(1.0), 2usize, c(0.45));
        let kind = SequenceKind::PolyPowGeometric {
            alpha,
            beta,
            m,
            c: cc,
        };
        for z in [0.05f64, 0.3, 0.9] {
            for j in 0..=8usize {
                let exact = ogf_deriv(&kind, c(z), j).unwrap();
                let mut brute = ZERO;
                for n in j..500 {
                    let mut falling = 1.0f64;
                    for i in 0..j {
                        falling *= (n - i) as f64;
                    }
                    brute += (alpha * n as f64 + beta).powu(m as u32)
                        * cc.powu(n as u32)
                        * falling
                        * c(z).powu((n - j) as u32);
                }
                assert!(
                    (exact - brute).norm() <= 1e-10 * brute.norm().max(1.0),
                    "j={j} z={z}: {exact} vs {brute}"
                );
            }
        }
    }

    #[test]
    fn ogf_region_and_order_errors() {
        assert!(ogf(&SequenceKind::Geometric { c: c(1.0) }, c(1.0)).is_err());
        assert!(ogf_deriv(&SequenceKind::Geometric { c: c(0.5) }, c(0.5), 65).is_err());
    }

    #[test]
    fn square_series_plain_geometric_at_q_one() {
        let p = SquareSeriesParams {
            q: c(1.0),
            z: c(1.0),
            kind: SequenceKind::Geometric { c: c(0.25) },
        };
        let r = square_series_sum(&p, 1e-14, DEFAULT_N_CAP).unwrap();
        assert!((r.value.re - 4.0 / 3.0).abs() < 1e-13);
        assert!(r.converged);
    }

    #[test]
    fn square_series_super_geometric_tail() {
        // q = 0.1, c = 1, z = 1: 1 + 0.1 + 1e-4 + 1e-9 + ...
        let p = SquareSeriesParams {
            q: c(0.1),
            z: c(1.0),
            kind: SequenceKind::Geometric { c: c(1.0) },
        };
        let r = square_series_sum(&p, 1e-15, DEFAULT_N_CAP).unwrap();
        assert!((r.value.re - 1.1001000010000001).abs() < 1e-15);
    }

    #[test]
    fn square_series_exponential() {
        let p = SquareSeriesParams {
            q: c(0.5),
            z: c(1.0),
            kind: SequenceKind::Exponential { r: c(1.0) },
        };
        let r = square_series_sum(&p, 1e-16, DEFAULT_N_CAP).unwrap();
        // Direct check against an independently accumulated sum.
        let mut expect = 0.0f64;
        for n in 0..30usize {
            let mut t = 0.5f64.powi((n * n) as i32);
            for k in 1..=n {
                t /= k as f64;
            }
            expect += t;
        }
        assert!((r.value.re - expect).abs() < 1e-14, "{} vs {expect}", r.value.re);
    }

    #[test]
    fn square_series_domain_rules() {
        let p = SquareSeriesParams {
            q: c(1.5),
            z: c(1.0),
            kind: SequenceKind::Geometric { c: c(0.1) },
        };
        assert!(matches!(
            square_series_sum(&p, 1e-12, 100),
            Err(Error::DomainError(_))
        ));
        // q = 0 degenerates to f_0.
        let p = SquareSeriesParams {
            q: c(0.0),
            z: c(0.7),
            kind: SequenceKind::AffineGeometric {
                a: c(3.0),
                b: c(2.0),
                c: c(0.5),
            },
        };
        assert_eq!(square_series_sum(&p, 1e-12, 100).unwrap().value, c(2.0));
        // Diverging inputs exhaust the cap.
        let p = SquareSeriesParams {
            q: c(1.0),
            z: c(1.0),
            kind: SequenceKind::Geometric { c: c(1.1) },
        };
        assert!(matches!(
            square_series_sum(&p, 1e-12, 50),
            Err(Error::NoConvergence { .. })
        ));
    }

    #[test]
    fn square_series_at_q_one_equals_ogf() {
        for cc in [0.5f64, -0.73] {
            for z in [0.9, -0.4] {
                if (cc * z).abs() > 0.8 {
                    continue;
                }
                let kind = SequenceKind::Geometric { c: c(cc) };
                let p = SquareSeriesParams {
                    q: c(1.0),
                    z: c(z),
                    kind: kind.clone(),
                };
                let sum = square_series_sum(&p, 1e-15, DEFAULT_N_CAP).unwrap();
                let closed = ogf(&kind, c(z)).unwrap();
                assert!((sum.value - closed).norm() < 1e-12 * closed.norm().max(1.0));
            }
        }
    }

    #[test]
    fn fourier_zero_pattern_does_not_stop_the_sum_early() {
        // sin(pi n) vanishes at every n for alpha = pi, beta = 0 with c
        // replaced so that only odd terms vanish: alpha = pi/2 makes every
        // second cosine term zero; the 3-consecutive rule must ride across.
        let kind = SequenceKind::FourierCos {
            alpha: std::f64::consts::FRAC_PI_2,
            beta: 0.0,
            c: c(0.9),
        };
        let p = SquareSeriesParams {
            q: c(0.6),
            z: c(1.0),
            kind: kind.clone(),
        };
        let r = square_series_sum(&p, 1e-13, DEFAULT_N_CAP).unwrap();
        let mut brute = ZERO;
        for n in 0..200usize {
            brute += term(&kind, n) * c(0.6).powu((n * n) as u32);
        }
        assert!((r.value - brute).norm() < 1e-12);
    }

    #[test]
    fn bilateral_fold_matches_pentagonal_product() {
        // T = (0,1,3,1,0): the folded halves reproduce prod (1 - q^n).
        let spec = BilateralSpec {
            a: 0.0,
            b: 1.0,
            r2: 3.0,
            r1: 1.0,
            r0: 0.0,
            q: c(0.2),
        };
        let got = bilateral_sum(&spec, 1e-15).unwrap().value;
        let product = euler_product(c(0.2), 40);
        assert!(
            (got - product).norm() < 1e-13,
            "{got} vs {product}"
        );
    }

    #[test]
    fn bilateral_matches_two_sided_summation() {
        // T = (0,1,2,0,0) at q = 0.3: sum (-1)^n q^{n^2} over Z.
        let spec = BilateralSpec {
            a: 0.0,
            b: 1.0,
            r2: 2.0,
            r1: 0.0,
            r0: 0.0,
            q: c(0.3),
        };
        let got = bilateral_sum(&spec, 1e-15).unwrap().value;
        let mut two_sided = ZERO;
        for n in -40i32..=40 {
            let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            two_sided += c(sign) * c(0.3).powf((n * n) as f64);
        }
        assert!((got - two_sided).norm() < 1e-13, "{got} vs {two_sided}");

        // General parameters, including a linear weight.
        let spec = BilateralSpec {
            a: 1.5,
            b: 0.25,
            r2: 3.0,
            r1: -1.0,
            r0: 2.0,
            q: c(0.45),
        };
        let got = bilateral_sum(&spec, 1e-15).unwrap().value;
        let q = 0.45f64;
        let mut two_sided = ZERO;
        for n in -60i32..=60 {
            let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let expo = (spec.r2 * (n * n) as f64 + spec.r1 * n as f64 + spec.r0) / 2.0;
            two_sided += c(sign * (spec.a * n as f64 + spec.b)) * c(q).powf(expo);
        }
        assert!((got - two_sided).norm() < 1e-12, "{got} vs {two_sided}");
    }

    #[test]
    fn bilateral_edge_cases() {
        // Zero coefficient sequence sums to zero.
        let spec = BilateralSpec {
            a: 0.0,
            b: 0.0,
            r2: 2.0,
            r1: 1.0,
            r0: 0.0,
            q: c(0.4),
        };
        assert_eq!(bilateral_sum(&spec, 1e-14).unwrap().value, ZERO);
        // q = 0 leaves only the n = 0 term.
        let spec = BilateralSpec {
            a: 2.0,
            b: 0.7,
            r2: 2.0,
            r1: 1.0,
            r0: 0.0,
            q: c(0.0),
        };
        assert_eq!(bilateral_sum(&spec, 1e-14).unwrap().value, c(0.7));
        // r2 <= 0 is rejected.
        let spec = BilateralSpec {
            a: 0.0,
            b: 1.0,
            r2: 0.0,
            r1: 1.0,
            r0: 0.0,
            q: c(0.4),
        };
        assert!(bilateral_fold(&spec).is_err());
    }

    #[test]
    fn qpochhammer_products() {
        // (z; q)_3 = (1-z)(1-zq)(1-zq^2)
        let z = c(0.5);
        let q = c(0.3);
        let expect = (ONE - z) * (ONE - z * q) * (ONE - z * q * q);
        assert!((qpochhammer(z, q, 3) - expect).norm() < 1e-16);
        assert_eq!(qpochhammer(z, q, 0), ONE);
        let ep = euler_product(c(0.5), 60).re;
        assert!((ep - 0.288788095086602414).abs() < 1e-15);
    }
}
