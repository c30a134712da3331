//! Gauss-Legendre rules on [-1, 1], used as panel rules by the truncated
//! integration method and as the discretization backbone when constructing
//! the half-range Gaussian rules.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

/// Nodes and weights of an `m`-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug)]
pub struct LegendreRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn cache() -> &'static RwLock<HashMap<usize, Arc<LegendreRule>>> {
    static CACHE: OnceLock<RwLock<HashMap<usize, Arc<LegendreRule>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Legendre polynomial P_m and its derivative at x, by the three-term recurrence.
fn legendre_with_deriv(m: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    if m == 0 {
        return (1.0, 0.0);
    }
    for k in 1..m {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * x * p - kf * p_prev) / (kf + 1.0);
        p_prev = p;
        p = p_next;
    }
    // P'_m(x) = m (x P_m - P_{m-1}) / (x^2 - 1)
    let dp = m as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// The `m`-point rule, computed once by Newton iteration and memoized.
pub fn legendre_rule(m: usize) -> Arc<LegendreRule> {
    assert!(m >= 2, "Legendre rule needs at least 2 points");
    if let Some(rule) = cache().read().unwrap().get(&m) {
        return rule.clone();
    }
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    for i in 0..m {
        // Tricomi-style initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_deriv(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_deriv(m, x);
        // cos guesses run from x near +1 down to -1; store ascending.
        nodes[m - 1 - i] = x;
        weights[m - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    let rule = Arc::new(LegendreRule { nodes, weights });
    cache().write().unwrap().insert(m, rule.clone());
    rule
}

/// Accumulate `sum += w_i * f(x_i)` for the `m`-point rule mapped onto [a, b].
/// Returns the number of evaluations performed.
pub fn panel_apply<T, F>(rule: &LegendreRule, a: f64, b: f64, f: &mut F, acc: &mut T) -> u64
where
    T: std::ops::AddAssign,
    F: FnMut(f64) -> T,
    T: std::ops::Mul<f64, Output = T>,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    for (x, w) in rule.nodes.iter().zip(rule.weights.iter()) {
        *acc += f(mid + half * x) * (w * half);
    }
    rule.nodes.len() as u64
}
