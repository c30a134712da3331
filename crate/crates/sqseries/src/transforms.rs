//! The square series integral representations: the generic OGF transform,
//! the geometric family with its shifted, affine and polynomial-power
//! variants, the exponential family, the Fourier-type family, and the
//! double-integral binomial-theorem analog.
//!
//! Every kernel integrates against e^{-t^2/2}/sqrt(2 pi) on the half line,
//! with integrands already symmetrized over the b = +-1 branch pair.

use std::cell::Cell;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{gauss_double, gauss_halfline, EvalResult, QuadratureConfig};
use crate::sequences::{square_series_sum, SequenceKind, SquareSeriesParams, DEFAULT_N_CAP};
use crate::stirling;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Strict inequalities are enforced with this safety margin.
pub const REGION_MARGIN: f64 = 1e-9;

/// Denominator magnitudes below this emit a `near_pole` warning.
pub const NEAR_POLE_THRESHOLD: f64 = 1e-9;

/// A per-formula convergence region: bounds on |q| and |cz|, plus an
/// optional extra condition described in text.
#[derive(Debug, Clone)]
pub struct RegionConstraint {
    pub q_abs_max: f64,
    pub cz_abs_max: f64,
    pub extra: Option<String>,
}

impl RegionConstraint {
    /// Validate |q| in (0, q_abs_max) and |cz| < cz_abs_max, with margins.
    /// Returns whether the caller overrode a violation (results are then
    /// marked non-converged).
    pub fn check(&self, q_abs: f64, cz_abs: f64, cfg: &QuadratureConfig) -> Result<bool> {
        let mut violation = None;
        if !(q_abs > 0.0) {
            violation = Some("q = 0".to_string());
        } else if q_abs > self.q_abs_max - REGION_MARGIN {
            violation = Some(format!("|q| = {q_abs} not below {}", self.q_abs_max));
        } else if cz_abs > self.cz_abs_max - REGION_MARGIN {
            violation = Some(format!("|cz| = {cz_abs} not below {}", self.cz_abs_max));
        }
        match violation {
            None => Ok(false),
            Some(_) if cfg.region_override => Ok(true),
            Some(msg) => {
                let extra = self
                    .extra
                    .as_deref()
                    .map(|e| format!(" ({e})"))
                    .unwrap_or_default();
                Err(Error::RegionViolation(format!("{msg}{extra}")))
            }
        }
    }
}

fn mark_overridden(mut res: EvalResult, overridden: bool) -> EvalResult {
    if overridden {
        res.push_warning("region_override");
        res.converged = false;
    }
    res
}

/// The principal branch w = sqrt(2 Log q) appearing in every kernel, with
/// the real-q fast path cosh(t w) = cos(t sqrt(2 ln(1/q))).
#[derive(Debug, Clone, Copy)]
pub struct SqrtLogBranch {
    pub q: Complex64,
    pub w: Complex64,
}

impl SqrtLogBranch {
    pub fn new(q: Complex64) -> Self {
        Self {
            q,
            w: (2.0 * q.ln()).sqrt(),
        }
    }

    /// For a kernel argument sqrt(s * Log q) with a scale other than 2.
    pub fn with_scale(q: Complex64, scale: f64) -> Self {
        Self {
            q,
            w: (scale * q.ln()).sqrt(),
        }
    }

    /// cos frequency a with w = i a, available when q is real in (0, 1).
    pub fn real_frequency(&self) -> Option<f64> {
        if self.q.im == 0.0 && self.q.re > 0.0 && self.q.re < 1.0 {
            Some(self.w.im)
        } else {
            None
        }
    }

    /// cosh(t w), on the real fast path when q is real in (0, 1).
    pub fn cosh_at(&self, t: f64) -> Complex64 {
        match self.real_frequency() {
            Some(a) => Complex64::new((a * t).cos(), 0.0),
            None => (self.w * t).cosh(),
        }
    }

    /// e^{b t w} for b = +-1.
    pub fn exp_at(&self, t: f64, b: f64) -> Complex64 {
        match self.real_frequency() {
            Some(a) => Complex64::new(0.0, b * a * t).exp(),
            None => (self.w * (b * t)).exp(),
        }
    }
}

/// The geometric kernel (1 - y cosh(tw)) / (y^2 - 2 y cosh(tw) + 1) without
/// the leading factor 2, shared by the Fourier forms.
fn geom_kernel(y: Complex64, ch: Complex64, near_pole: &Cell<bool>) -> Complex64 {
    let den = y * y - 2.0 * y * ch + ONE;
    if den.norm() < NEAR_POLE_THRESHOLD {
        near_pole.set(true);
    }
    (ONE - y * ch) / den
}

fn finish(res: EvalResult, near_pole: &Cell<bool>, overridden: bool) -> EvalResult {
    let mut res = res;
    if near_pole.get() {
        res.push_warning("near_pole");
    }
    mark_overridden(res, overridden)
}

/// The main transform: int w(t) sum_{b=+-1} F(e^{b t sqrt(2 Log q)} z) dt,
/// for any caller-supplied OGF finite on the circle |z'| = |z|.
pub fn generic_square_integral(
    ogf_provider: &dyn Fn(Complex64) -> Complex64,
    q: Complex64,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    let region = RegionConstraint {
        q_abs_max: 1.0,
        cz_abs_max: f64::INFINITY,
        extra: Some("provider must be finite on |z'| = |z|".into()),
    };
    let overridden = region.check(q.norm(), 0.0, cfg)?;
    let w = SqrtLogBranch::new(q);
    let res = gauss_halfline(
        |t| ogf_provider(w.exp_at(t, 1.0) * z) + ogf_provider(w.exp_at(t, -1.0) * z),
        cfg,
    )?;
    Ok(mark_overridden(res, overridden))
}

/// Truncated diagnostic form of the main transform, expanding the kernel in
/// powers (e^{b t w} - 1)^j weighted by z^j F^(j)(z)/j!. The j-series has no
/// stated truncation rule, so this stays a validation aid: callers choose
/// j_max and the region where the tail is negligible.
pub fn generic_square_integral_deriv_form(
    deriv_provider: &dyn Fn(usize) -> Complex64,
    j_max: usize,
    q: Complex64,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    let region = RegionConstraint {
        q_abs_max: 1.0,
        cz_abs_max: f64::INFINITY,
        extra: None,
    };
    let overridden = region.check(q.norm(), 0.0, cfg)?;
    let w = SqrtLogBranch::new(q);
    let weights: Vec<Complex64> = (0..=j_max)
        .map(|j| {
            let jfact = (1..=j).fold(1.0, |acc, i| acc * i as f64);
            z.powu(j as u32) * deriv_provider(j) / jfact
        })
        .collect();
    let res = gauss_halfline(
        |t| {
            let mut sum = ZERO;
            for b in [1.0, -1.0] {
                let e = w.exp_at(t, b) - ONE;
                let mut epow = ONE;
                for wgt in &weights {
                    sum += wgt * epow;
                    epow *= e;
                }
            }
            sum
        },
        cfg,
    )?;
    Ok(mark_overridden(res, overridden))
}

/// Ordinary geometric square series sum q^{n^2} (cz)^n via the cosh kernel
/// 2 (1 - cz cosh(tw)) / (c^2 z^2 - 2 cz cosh(tw) + 1).
///
/// Exact for q on (0, 1), where e^{b t w} stays on the unit circle. Complex
/// q evaluates best-effort: the integral then differs from the series by a
/// term of order exp(-(ln(1/|cz|)/Re w)^2 / 2), negligible near the axis and
/// growing as arg(q) does.
pub fn gsq(
    q: Complex64,
    c: Complex64,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    let region = RegionConstraint {
        q_abs_max: 1.0,
        cz_abs_max: 1.0,
        extra: None,
    };
    let y = c * z;
    let overridden = region.check(q.norm(), y.norm(), cfg)?;
    let w = SqrtLogBranch::new(q);
    let near_pole = Cell::new(false);
    let res = gauss_halfline(|t| 2.0 * geom_kernel(y, w.cosh_at(t), &near_pole), cfg)?;
    Ok(finish(res, &near_pole, overridden))
}

/// Shifted geometric square series sum_{n>=d} q^{n^2} (cz)^n, as
/// (q^d cz)^d G_sq(q, q^{2d} c, z).
pub fn theta_shifted(
    d: u32,
    q: Complex64,
    c: Complex64,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    if d == 0 {
        return Err(Error::DomainError("shift order d must be positive".into()));
    }
    let y = c * z;
    let y_shift = q.powu(2 * d) * y;
    // The kernel after shifting needs |q^{2d} cz| < 1; the unshifted |cz|
    // may sit on or past the unit circle (the tail series still converges).
    let region = RegionConstraint {
        q_abs_max: 1.0,
        cz_abs_max: 1.0,
        extra: Some("|q^{2d} cz| < 1".into()),
    };
    let overridden = region.check(q.norm(), y_shift.norm(), cfg)?;
    let w = SqrtLogBranch::new(q);
    let near_pole = Cell::new(false);
    let res = gauss_halfline(
        |t| 2.0 * geom_kernel(y_shift, w.cosh_at(t), &near_pole),
        cfg,
    )?;
    let prefactor = (q.powu(d) * y).powu(d);
    Ok(finish(res.scale_add(prefactor, ZERO), &near_pole, overridden))
}

/// Affine-weight geometric square series sum (a n + b) q^{n^2} (cz)^n: the
/// z-derivative kernel term times a plus b G_sq, in a single quadrature pass.
pub fn qab(
    a: Complex64,
    b: Complex64,
    q: Complex64,
    c: Complex64,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    let region = RegionConstraint {
        q_abs_max: 1.0,
        cz_abs_max: 1.0,
        extra: None,
    };
    let y = c * z;
    let overridden = region.check(q.norm(), y.norm(), cfg)?;
    let w = SqrtLogBranch::new(q);
    let near_pole = Cell::new(false);
    let res = gauss_halfline(
        |t| {
            let ch = w.cosh_at(t);
            let den = y * y - 2.0 * y * ch + ONE;
            if den.norm() < NEAR_POLE_THRESHOLD {
                near_pole.set(true);
            }
            let deriv_term = 2.0 * a * y * ((y * y + ONE) * ch - 2.0 * y) / (den * den);
            let geom_term = b * 2.0 * (ONE - y * ch) / den;
            deriv_term + geom_term
        },
        cfg,
    )?;
    Ok(finish(res, &near_pole, overridden))
}

/// G_sq(p, m; q, +-c) = sum (q^p)^{n^2} (+-c q^m)^n, i.e. the ordinary
/// geometric square series at q^p and c q^m (the series fixes z = 1).
pub fn gsq_pm(
    p: f64,
    m: f64,
    q: Complex64,
    c: Complex64,
    sign: i32,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    if p <= 0.0 || m <= 0.0 {
        return Err(Error::DomainError("p and m must be positive".into()));
    }
    if !(sign == 1 || sign == -1) {
        return Err(Error::DomainError("sign must be +1 or -1".into()));
    }
    let q_eff = q.powf(p);
    let c_eff = c * q.powf(m) * sign as f64;
    gsq(q_eff, c_eff, ONE, cfg)
}

fn binom_u128(n: usize, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Numerator polynomial Num_k(w, y) = sum_{b=+-1} e^{-bkw} (1 - e^{bw} y)^{k+1},
/// assembled from the exact binomial expansion
/// 2 sum_i C(k+1, i) (-y)^i cosh((i - k) w).
pub fn numerator_poly(k: usize, w: Complex64, y: Complex64) -> Complex64 {
    assert!(k <= 43, "binomials stay exact in integers only to k = 43");
    let mut sum = ZERO;
    let mut ypow = ONE;
    for i in 0..=(k + 1) {
        let coef = binom_u128(k + 1, i) as f64;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let order = (i as i64 - k as i64).unsigned_abs() as u32;
        sum += sign * coef * ypow * (w * order as f64).cosh();
        ypow *= y;
    }
    2.0 * sum
}

/// cosh(j t w) for j = 0..=order via the doubling recurrence
/// cosh((j+1)x) = 2 cosh(x) cosh(jx) - cosh((j-1)x).
fn cosh_table(w: &SqrtLogBranch, t: f64, order: usize) -> Vec<Complex64> {
    let mut ch = Vec::with_capacity(order + 1);
    ch.push(ONE);
    if order == 0 {
        return ch;
    }
    let c1 = w.cosh_at(t);
    ch.push(c1);
    for j in 2..=order {
        let next = 2.0 * c1 * ch[j - 1] - ch[j - 2];
        ch.push(next);
    }
    ch
}

fn numerator_from_table(k: usize, ch: &[Complex64], y: Complex64) -> Complex64 {
    let mut sum = ZERO;
    let mut ypow = ONE;
    for i in 0..=(k + 1) {
        let coef = binom_u128(k + 1, i) as f64;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let order = (i as i64 - k as i64).unsigned_abs() as usize;
        sum += sign * coef * ypow * ch[order];
        ypow *= y;
    }
    2.0 * sum
}

/// Polynomial-power geometric square series sum n^m q^{n^2} (cz)^n through
/// the Stirling-weighted Num_k kernels.
pub fn theta_poly_power(
    m: usize,
    q: Complex64,
    c: Complex64,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    if m > 20 {
        return Err(Error::DomainError(format!("power m = {m} exceeds 20")));
    }
    let region = RegionConstraint {
        q_abs_max: 1.0,
        cz_abs_max: 1.0,
        extra: None,
    };
    let y = c * z;
    let overridden = region.check(q.norm(), y.norm(), cfg)?;
    let w = SqrtLogBranch::new(q);
    let near_pole = Cell::new(false);
    let stirling_row: Vec<f64> = (0..=m).map(|k| stirling::stirling2_f64(m, k)).collect();
    let res = gauss_halfline(
        |t| {
            let ch = cosh_table(&w, t, m + 1);
            let den = y * y - 2.0 * y * ch[1] + ONE;
            if den.norm() < NEAR_POLE_THRESHOLD {
                near_pole.set(true);
            }
            let mut sum = ZERO;
            let mut ypow = ONE; // y^k
            let mut kfact = 1.0;
            let mut denpow = den; // den^{k+1}
            for k in 0..=m {
                if k > 0 {
                    ypow *= y;
                    kfact *= k as f64;
                    denpow *= den;
                }
                if stirling_row[k] != 0.0 {
                    sum += stirling_row[k] * ypow * kfact * numerator_from_table(k, &ch, y)
                        / denpow;
                }
            }
            sum
        },
        cfg,
    )?;
    Ok(finish(res, &near_pole, overridden))
}

/// Affine-power geometric square series sum (alpha n + beta)^m q^{n^2} (cz)^n
/// via the double binomial sum over Num_k kernels.
pub fn theta_affine_power(
    alpha: Complex64,
    beta: Complex64,
    m: usize,
    q: Complex64,
    c: Complex64,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    if m > 20 {
        return Err(Error::DomainError(format!("power m = {m} exceeds 20")));
    }
    let region = RegionConstraint {
        q_abs_max: 1.0,
        cz_abs_max: 1.0,
        extra: None,
    };
    let y = c * z;
    let overridden = region.check(q.norm(), y.norm(), cfg)?;
    let w = SqrtLogBranch::new(q);
    let near_pole = Cell::new(false);
    // (alpha i + beta)^m and the C(k,i)(-1)^{k-i} weights are t-independent:
    // weights[k] multiplies y^k Num_k / den^{k+1}.
    let powers: Vec<Complex64> = (0..=m)
        .map(|i| (alpha * i as f64 + beta).powu(m as u32))
        .collect();
    let mut weights = vec![ZERO; m + 1];
    for (k, w_k) in weights.iter_mut().enumerate() {
        let mut acc = ZERO;
        for (i, p_i) in powers.iter().enumerate().take(k + 1) {
            let sign = if (k - i) % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * binom_u128(k, i) as f64 * p_i;
        }
        *w_k = acc;
    }
    let res = gauss_halfline(
        |t| {
            let ch = cosh_table(&w, t, m + 1);
            let den = y * y - 2.0 * y * ch[1] + ONE;
            if den.norm() < NEAR_POLE_THRESHOLD {
                near_pole.set(true);
            }
            let mut sum = ZERO;
            let mut ypow = ONE;
            let mut denpow = den;
            for k in 0..=m {
                if k > 0 {
                    ypow *= y;
                    denpow *= den;
                }
                if weights[k] != ZERO {
                    sum += weights[k] * ypow * numerator_from_table(k, &ch, y) / denpow;
                }
            }
            sum
        },
        cfg,
    )?;
    Ok(finish(res, &near_pole, overridden))
}

/// Regions for the exponential kernels: |q| in (0, 1], q on the positive
/// real axis. Off the axis sqrt(2 Log q) gains a real part and the integrand
/// exp(e^{tw} rz) grows doubly exponentially, so the printed representation
/// only converges for positive real q.
fn check_exponential_region(q: Complex64, cfg: &QuadratureConfig) -> Result<bool> {
    let mut violation = None;
    if !(q.norm() > 0.0) {
        violation = Some("q = 0".to_string());
    } else if q.norm() > 1.0 + 1e-15 {
        violation = Some(format!("|q| = {} exceeds 1", q.norm()));
    } else if q.im != 0.0 || q.re <= 0.0 {
        violation = Some("q must be positive real for the exponential kernels".to_string());
    }
    match violation {
        None => Ok(false),
        Some(_) if cfg.region_override => Ok(true),
        Some(msg) => Err(Error::RegionViolation(msg)),
    }
}

/// Exponential square series sum q^{n^2} (rz)^n / n! via
/// int w(t) [exp(e^{tw} rz) + exp(e^{-tw} rz)] dt.
pub fn esq(
    q: Complex64,
    r: Complex64,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    let overridden = check_exponential_region(q, cfg)?;
    if q == ONE {
        // w = 0 collapses the integrand to 2 e^{rz}.
        return Ok(EvalResult::exact((r * z).exp()));
    }
    let w = SqrtLogBranch::new(q);
    let rz = r * z;
    let res = gauss_halfline(
        |t| (w.exp_at(t, 1.0) * rz).exp() + (w.exp_at(t, -1.0) * rz).exp(),
        cfg,
    )?;
    Ok(mark_overridden(res, overridden))
}

/// Binomial-power exponential square series sum q^{C(n,2)} (rz)^n / n! via
/// the sqrt(Log q) kernel with argument rz / sqrt(q).
pub fn etilde(
    q: Complex64,
    r: Complex64,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    let overridden = check_exponential_region(q, cfg)?;
    if q == ONE {
        return Ok(EvalResult::exact((r * z).exp()));
    }
    let w = SqrtLogBranch::with_scale(q, 1.0);
    let arg = r * z / q.sqrt();
    let res = gauss_halfline(
        |t| (w.exp_at(t, 1.0) * arg).exp() + (w.exp_at(t, -1.0) * arg).exp(),
        cfg,
    )?;
    Ok(mark_overridden(res, overridden))
}

/// Which trigonometric weight a Fourier-type series carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKind {
    Cos,
    Sin,
}

fn fourier_impl(
    which: TrigKind,
    alpha: f64,
    beta: f64,
    q: Complex64,
    c: Complex64,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    let region = RegionConstraint {
        q_abs_max: 1.0,
        cz_abs_max: 1.0,
        extra: Some("|e^{+-i alpha} cz| = |cz|".into()),
    };
    let y = c * z;
    let overridden = region.check(q.norm(), y.norm(), cfg)?;
    let w = SqrtLogBranch::new(q);
    let near_pole = Cell::new(false);
    let y_plus = (I * alpha).exp() * y;
    let y_minus = (-I * alpha).exp() * y;
    let e_plus = (I * beta).exp();
    let e_minus = (-I * beta).exp();
    let res = gauss_halfline(
        |t| {
            let ch = w.cosh_at(t);
            let kp = geom_kernel(y_plus, ch, &near_pole);
            let km = geom_kernel(y_minus, ch, &near_pole);
            match which {
                TrigKind::Cos => e_plus * kp + e_minus * km,
                TrigKind::Sin => (e_plus * kp - e_minus * km) / I,
            }
        },
        cfg,
    )?;
    Ok(finish(res, &near_pole, overridden))
}

/// Fourier-type square series sum q^{n^2} cos(alpha n + beta) (cz)^n.
pub fn fourier_cos(
    alpha: f64,
    beta: f64,
    q: Complex64,
    c: Complex64,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    fourier_impl(TrigKind::Cos, alpha, beta, q, c, z, cfg)
}

/// Fourier-type square series sum q^{n^2} sin(alpha n + beta) (cz)^n.
pub fn fourier_sin(
    alpha: f64,
    beta: f64,
    q: Complex64,
    c: Complex64,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    fourier_impl(TrigKind::Sin, alpha, beta, q, c, z, cfg)
}

/// The abbreviated single-sum form of the Fourier-type integrals. Degenerate
/// when e^{2 i alpha} = 1; callers fall back to the two-term form there.
pub fn fourier_compact(
    which: TrigKind,
    alpha: f64,
    beta: f64,
    q: Complex64,
    c: Complex64,
    z: Complex64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    let e2ia = (2.0 * I * alpha).exp();
    if (e2ia - ONE).norm() < 1e-8 {
        return Err(Error::DegenerateAlpha);
    }
    let region = RegionConstraint {
        q_abs_max: 1.0,
        cz_abs_max: 1.0,
        extra: None,
    };
    let y = c * z;
    let overridden = region.check(q.norm(), y.norm(), cfg)?;
    let w = SqrtLogBranch::new(q);
    let near_pole = Cell::new(false);
    let sc = |x: f64| match which {
        TrigKind::Cos => x.cos(),
        TrigKind::Sin => x.sin(),
    };
    let eia = (I * alpha).exp();
    let denom = e2ia - ONE;
    let coef_plus = 2.0 * eia * (eia * sc(beta) - sc(beta - alpha)) / denom;
    let coef_minus = -2.0 * eia * ((-I * alpha).exp() * sc(beta) - sc(beta - alpha)) / denom;
    let y_plus = eia * y;
    let y_minus = (-I * alpha).exp() * y;
    let res = gauss_halfline(
        |t| {
            let ch = w.cosh_at(t);
            coef_plus * geom_kernel(y_plus, ch, &near_pole)
                + coef_minus * geom_kernel(y_minus, ch, &near_pole)
        },
        cfg,
    )?;
    Ok(finish(res, &near_pole, overridden))
}

/// Square series analog of the binomial theorem:
/// sum_k C(n,k) c^k q^{k^2} d^{n-k} r^{(n-k)^2} as a double integral over the
/// four sign combinations of (c e^{+-t sqrt(2 Log q)} + d e^{+-s sqrt(2 Log r)})^n.
pub fn binomial_analog(
    n: u32,
    c: Complex64,
    q: Complex64,
    d: Complex64,
    r: Complex64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    if n > 20 {
        return Err(Error::DomainError(format!("n = {n} exceeds 20")));
    }
    let mut overridden = false;
    for (name, v) in [("q", q), ("r", r)] {
        if !(v.norm() > 0.0 && v.norm() <= 1.0 + 1e-15) {
            if cfg.region_override {
                overridden = true;
            } else {
                return Err(Error::RegionViolation(format!(
                    "|{name}| = {} outside (0, 1]",
                    v.norm()
                )));
            }
        }
    }
    let wq = SqrtLogBranch::new(q);
    let wr = SqrtLogBranch::new(r);
    let res = gauss_double(
        |t, s| {
            let mut sum = ZERO;
            for bt in [1.0, -1.0] {
                for bs in [1.0, -1.0] {
                    sum += (c * wq.exp_at(t, bt) + d * wr.exp_at(s, bs)).powu(n);
                }
            }
            sum
        },
        cfg,
    )?;
    Ok(mark_overridden(res, overridden))
}

/// The direct-summation oracle matching the transforms, for tests and the
/// compare tooling: dispatches on the sequence family.
pub fn series_oracle(
    kind: &SequenceKind,
    q: Complex64,
    z: Complex64,
    abs_tol: f64,
) -> Result<EvalResult> {
    square_series_sum(
        &SquareSeriesParams {
            q,
            z,
            kind: kind.clone(),
        },
        abs_tol,
        DEFAULT_N_CAP,
    )
}
