//! Gaussian rules for the weight e^{-t^2/2}/sqrt(2*pi) restricted to [0, inf).
//!
//! The orthogonal polynomials of this half-range weight have no closed-form
//! recurrence, so the coefficients are computed numerically: a fine composite
//! Gauss-Legendre discretization of the measure feeds a Lanczos
//! tridiagonalization (full reorthogonalization), the Golub-Welsch
//! eigenproblem of the resulting Jacobi matrix yields nodes and weights, and
//! each node is then Newton-polished against the recurrence with the weight
//! recomputed from the Christoffel function. Rules are memoized per order.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::quadrature::legendre::legendre_rule;

/// Largest supported rule order. The weight e^{-t^2/2} underflows the
/// smallest positive double beyond t ~ 38.6, and orders past ~384 need
/// nodes out there; they cannot be represented in f64.
pub const MAX_ORDER: usize = 384;

/// Recurrence data: p_{k+1} = ((x - alpha[k]) p_k - b[k] p_{k-1}) / b[k+1]
/// for the orthonormal polynomials; `b[0]` is unused.
#[derive(Debug)]
struct Recurrence {
    mu0: f64,
    alpha: Vec<f64>,
    b: Vec<f64>,
}

/// A half-range Gaussian rule: integrates f against e^{-t^2/2}/sqrt(2*pi)
/// over [0, inf) as sum w_i f(x_i).
#[derive(Debug)]
pub struct HalfRangeRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn recurrence_cache() -> &'static RwLock<HashMap<usize, Arc<Recurrence>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<Recurrence>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn rule_cache() -> &'static RwLock<HashMap<usize, Arc<HalfRangeRule>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<HalfRangeRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Smallest cached table size covering order `n`.
fn table_size_for(n: usize) -> usize {
    for size in [64usize, 128, 256, 384] {
        if size >= n {
            return size;
        }
    }
    MAX_ORDER
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(c: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += c * xi;
    }
}

/// Discretized-Stieltjes construction of the recurrence coefficients.
///
/// The discrete measure is a composite Gauss-Legendre rule on [0, t_max]
/// sized so that polynomial-times-weight integrands up to degree ~2*n_tab
/// are resolved: the fastest oscillation of degree-2n orthogonal polynomials
/// has wavelength ~pi/sqrt(4n), and the 48-point panels of width 1/2 leave a
/// comfortable sampling margin at n_tab = 512.
fn build_recurrence(n_tab: usize) -> Recurrence {
    let steps = n_tab + 1;
    let t_max = ((4 * n_tab + 10) as f64).sqrt().ceil() + 2.0;
    let panel_w = 0.5;
    let order = 48;
    let n_panels = (t_max / panel_w).ceil() as usize;
    let gl = legendre_rule(order);
    let norm = 1.0 / (2.0 * std::f64::consts::PI).sqrt();

    let mut xs = Vec::with_capacity(n_panels * order);
    let mut lam = Vec::with_capacity(n_panels * order);
    for p in 0..n_panels {
        let a = p as f64 * panel_w;
        let half = 0.5 * panel_w;
        let mid = a + half;
        for (x, w) in gl.nodes.iter().zip(gl.weights.iter()) {
            let t = mid + half * x;
            xs.push(t);
            lam.push(w * half * (-0.5 * t * t).exp() * norm);
        }
    }
    let mu0: f64 = lam.iter().sum();

    // Lanczos on diag(xs) with start vector sqrt(lam): the produced tridiagonal
    // matrix is the Jacobi matrix of the discrete measure.
    let mut vs: Vec<Vec<f64>> = Vec::with_capacity(steps + 1);
    let mut v0: Vec<f64> = lam.iter().map(|l| l.sqrt()).collect();
    let n0 = dot(&v0, &v0).sqrt();
    for v in v0.iter_mut() {
        *v /= n0;
    }
    vs.push(v0);

    let mut alpha = Vec::with_capacity(steps);
    let mut b = vec![f64::NAN];
    for k in 0..steps {
        let mut u: Vec<f64> = xs.iter().zip(&vs[k]).map(|(x, v)| x * v).collect();
        let a_k = dot(&u, &vs[k]);
        alpha.push(a_k);
        axpy(-a_k, &vs[k].clone(), &mut u);
        if k > 0 {
            let bk = b[k];
            axpy(-bk, &vs[k - 1].clone(), &mut u);
        }
        // Reorthogonalize; repeat the pass if the first one removed a large
        // component ("twice is enough").
        let pre = dot(&u, &u).sqrt();
        for vj in &vs {
            let c = dot(&u, vj);
            axpy(-c, vj, &mut u);
        }
        let post = dot(&u, &u).sqrt();
        if post < 0.7 * pre {
            for vj in &vs {
                let c = dot(&u, vj);
                axpy(-c, vj, &mut u);
            }
        }
        let b_next = dot(&u, &u).sqrt();
        b.push(b_next);
        for v in u.iter_mut() {
            *v /= b_next;
        }
        vs.push(u);
    }

    Recurrence { mu0, alpha, b }
}

fn recurrence(n_tab: usize) -> Arc<Recurrence> {
    if let Some(rec) = recurrence_cache().read().unwrap().get(&n_tab) {
        return rec.clone();
    }
    let rec = Arc::new(build_recurrence(n_tab));
    recurrence_cache()
        .write()
        .unwrap()
        .insert(n_tab, rec.clone());
    rec
}

/// Implicit-QL eigenvalues of a symmetric tridiagonal matrix, tracking only
/// the first row of the accumulated eigenvector matrix (all Golub-Welsch
/// weights need). `d` is the diagonal, `e` the off-diagonal (len n, last
/// entry workspace). Returns first-row components; `d` becomes eigenvalues.
fn tridiag_eigen_first_row(d: &mut [f64], e: &mut [f64]) -> Result<Vec<f64>> {
    let n = d.len();
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    if n == 1 {
        return Ok(z);
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 80 {
                return Err(Error::InvalidConfig(
                    "tridiagonal eigensolver failed to converge".into(),
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.abs().copysign(g));
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
            let mut underflowed = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let mut f = s * e[i];
                let bb = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflowed = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bb;
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflowed && i > l {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(z)
}

struct OrthEval {
    p_n: f64,
    dp_n: f64,
    christoffel: f64,
    scale_log2: i32,
}

/// Evaluate the orthonormal polynomial p_n, its derivative, and the
/// Christoffel sum over k < n, with power-of-two rescaling so extreme nodes
/// (where |p_k| ~ e^{x^2/4}) do not overflow. All stored values carry the
/// common factor 2^{-scale_log2}.
fn eval_orthonormal(rec: &Recurrence, n: usize, x: f64) -> OrthEval {
    let mut scale_log2: i32 = 0;
    let mut p_prev = 0.0f64;
    let mut p = 1.0 / rec.mu0.sqrt();
    let mut dp_prev = 0.0f64;
    let mut dp = 0.0f64;
    let mut chris = p * p;
    for k in 0..n {
        let b_next = rec.b[k + 1];
        let b_k = if k == 0 { 0.0 } else { rec.b[k] };
        let p_next = ((x - rec.alpha[k]) * p - b_k * p_prev) / b_next;
        let dp_next = ((x - rec.alpha[k]) * dp + p - b_k * dp_prev) / b_next;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
        if k + 1 < n {
            chris += p * p;
        }
        if p.abs() > 1e140 || dp.abs() > 1e140 {
            let sigma = 2f64.powi(-512);
            p *= sigma;
            p_prev *= sigma;
            dp *= sigma;
            dp_prev *= sigma;
            chris *= sigma * sigma;
            scale_log2 += 512;
        }
    }
    OrthEval {
        p_n: p,
        dp_n: dp,
        christoffel: chris,
        scale_log2,
    }
}

/// The `n`-point half-range rule. Nodes are strictly increasing, weights
/// positive, and the weights sum to the half-line Gaussian mass 1/2.
pub fn rule(n: usize) -> Result<Arc<HalfRangeRule>> {
    if !(2..=MAX_ORDER).contains(&n) {
        return Err(Error::UnsupportedOrder(n));
    }
    if let Some(r) = rule_cache().read().unwrap().get(&n) {
        return Ok(r.clone());
    }

    let rec = recurrence(table_size_for(n));
    let mut d: Vec<f64> = rec.alpha[..n].to_vec();
    let mut e: Vec<f64> = (1..n).map(|k| rec.b[k]).collect();
    e.push(0.0);
    let z = tridiag_eigen_first_row(&mut d, &mut e)?;

    let mut pairs: Vec<(f64, f64)> = d
        .iter()
        .zip(z.iter())
        .map(|(&x, &c)| (x, rec.mu0 * c * c))
        .collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (mut x, w_eig) in pairs {
        for _ in 0..3 {
            let ev = eval_orthonormal(&rec, n, x);
            let step = ev.p_n / ev.dp_n;
            if !step.is_finite() {
                break;
            }
            x -= step;
            if step.abs() <= 1e-15 * x.abs().max(1e-3) {
                break;
            }
        }
        let ev = eval_orthonormal(&rec, n, x);
        let two_s = 2 * ev.scale_log2;
        let w = if two_s > 2000 || !ev.christoffel.is_finite() {
            w_eig
        } else {
            (1.0 / ev.christoffel) * 2f64.powi(-two_s)
        };
        nodes.push(x);
        // Guard against underflow at extreme nodes: the true weight can drop
        // below the smallest positive double for n near the order cap.
        weights.push(w.max(f64::MIN_POSITIVE));
    }

    for i in 1..n {
        debug_assert!(nodes[i] > nodes[i - 1], "nodes must be strictly increasing");
    }
    let rule = Arc::new(HalfRangeRule { nodes, weights });
    rule_cache().write().unwrap().insert(n, rule.clone());
    Ok(rule)
}
