//! The deterministic invariant suite behind the CLI `selftest` subcommand:
//! one line per check, reproducible for a fixed seed, nonzero exit on any
//! failure. Covers the quadrature contracts, the Stirling suite, the
//! sequence oracles, integral-vs-series equivalence for every transform, and
//! the special-function identities.

use std::time::{Duration, Instant};

use num_complex::Complex64;

use crate::quadrature::{
    gauss_halfline, halfline_refinement_errors, hermite_rule, Method, QuadratureConfig,
};
use crate::rng::SplitMix64;
use crate::sequences::{self, euler_product, ogf, ogf_deriv, SequenceKind};
use crate::special::{self, ThetaIndex};
use crate::stirling;
use crate::transforms::{self, TrigKind};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

type CheckResult = std::result::Result<String, String>;

/// Outcome of one named check.
#[derive(Debug)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// The whole run: ordered outcomes plus wall time.
#[derive(Debug)]
pub struct SelftestReport {
    pub checks: Vec<CheckOutcome>,
    pub elapsed: Duration,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn c64(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn rel_err(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm().max(1.0)
}

fn expect(cond: bool, detail: String) -> CheckResult {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn quadrature_trivials(cfg: &QuadratureConfig) -> CheckResult {
    let mut worst = 0.0f64;
    for method in [Method::Hermite, Method::TruncatedAdaptive] {
        let cfg = QuadratureConfig {
            method,
            ..cfg.clone()
        };
        let half = gauss_halfline(|_| ONE, &cfg).map_err(|e| e.to_string())?;
        worst = worst.max((half.value.re - 0.5).abs());
        let second = gauss_halfline(|t| c64(t * t), &cfg).map_err(|e| e.to_string())?;
        worst = worst.max((second.value.re - 0.5).abs());
        let a = (2.0 * std::f64::consts::PI).sqrt();
        let cosine = gauss_halfline(|t| c64((a * t).cos()), &cfg).map_err(|e| e.to_string())?;
        worst = worst.max((cosine.value.re - 0.5 * (-0.5 * a * a).exp()).abs());
    }
    expect(worst < 1e-12, format!("worst abs err {worst:.3e}"))
}

fn hermite_mass_and_exactness() -> CheckResult {
    let mut worst = 0.0f64;
    for n in [2usize, 8, 32] {
        let rule = hermite_rule(n).map_err(|e| e.to_string())?;
        let mass: f64 = rule.iter().map(|(_, w)| w).sum();
        worst = worst.max((mass - 0.5).abs());
        let mut moment = 0.5; // m_0
        let mut moment_prev = 1.0 / (2.0 * std::f64::consts::PI).sqrt(); // m_1 placeholder
        for k in 0..(2 * n) {
            let exact = match k {
                0 => 0.5,
                1 => 1.0 / (2.0 * std::f64::consts::PI).sqrt(),
                _ => {
                    let next = (k as f64 - 1.0) * moment;
                    moment = moment_prev;
                    moment_prev = next;
                    next
                }
            };
            let got: f64 = rule.iter().map(|(x, w)| w * x.powi(k as i32)).sum();
            worst = worst.max(((got - exact) / exact).abs());
        }
    }
    expect(worst < 1e-12, format!("worst rel err {worst:.3e}"))
}

fn refinement_monotonicity(cfg: &QuadratureConfig) -> CheckResult {
    for a in [1.0, 2.45, 5.0] {
        for method in [Method::Hermite, Method::TruncatedAdaptive] {
            let cfg = QuadratureConfig {
                method,
                ..cfg.clone()
            };
            let errs = halfline_refinement_errors(|t| c64((a * t).cos()), &cfg, 4)
                .map_err(|e| e.to_string())?;
            for w in errs.windows(2) {
                if w[1] > w[0] + 1e-15 {
                    return Err(format!("a={a} {method:?}: errors increased {errs:?}"));
                }
            }
        }
    }
    Ok("non-increasing across doubling rounds".into())
}

fn determinism(cfg: &QuadratureConfig) -> CheckResult {
    let r1 = transforms::gsq(c64(0.22), c64(0.61), c64(0.8), cfg).map_err(|e| e.to_string())?;
    let r2 = transforms::gsq(c64(0.22), c64(0.61), c64(0.8), cfg).map_err(|e| e.to_string())?;
    expect(
        r1.value.re.to_bits() == r2.value.re.to_bits()
            && r1.value.im.to_bits() == r2.value.im.to_bits(),
        "bit-identical repeat".into(),
    )
}

fn oscillation_safety() -> CheckResult {
    let a = (2.0 * (1.0f64 / 0.05).ln()).sqrt();
    let cfg = QuadratureConfig {
        method: Method::Hermite,
        max_nodes: 256,
        ..Default::default()
    };
    let r = gauss_halfline(|t| c64((a * t).cos()), &cfg).map_err(|e| e.to_string())?;
    let closed = 0.5 * (-0.5 * a * a).exp();
    let rel = ((r.value.re - closed) / closed).abs();
    expect(rel < 1e-11, format!("a={a:.3}: rel err {rel:.3e}"))
}

fn stirling_suite() -> CheckResult {
    for n in 0..=40usize {
        for k in 0..=n {
            if stirling::stirling2(n, k) != stirling::stirling2_explicit(n, k) {
                return Err(format!("recurrence vs explicit differ at S({n},{k})"));
            }
        }
    }
    // EGF partial-sum identity behind the kernel expansion.
    for j in 0..=6usize {
        for w in [0.3f64, 1.0, -0.8] {
            let mut lhs = 0.0f64;
            let mut fact = 1.0f64;
            let mut wpow = 1.0f64;
            for k in 0..=40usize {
                if k > 0 {
                    fact *= (2 * k - 1) as f64 * (2 * k) as f64;
                    wpow *= w * w;
                }
                lhs += stirling::stirling2_f64(2 * k, j) * wpow / fact;
            }
            let jfact: f64 = (1..=j).product::<usize>() as f64;
            let rhs = ((w.exp() - 1.0).powi(j as i32) + ((-w).exp() - 1.0).powi(j as i32))
                / (2.0 * jfact);
            if (lhs - rhs).abs() > 1e-10 {
                return Err(format!("EGF identity off at j={j}, w={w}: {lhs} vs {rhs}"));
            }
        }
    }
    // Transform route reproduces the polylog closed form.
    let cc = c64(0.65);
    let z = c64(0.9);
    for m in 1..=8usize {
        let derivs: Vec<Complex64> = (0..=m)
            .map(|j| {
                let jf = (1..=j).product::<usize>() as f64;
                cc.powu(j as u32) * jf / (ONE - cc * z).powu(j as u32 + 1)
            })
            .collect();
        let via_transform = stirling::ogf_power_transform(&derivs, z, m).unwrap();
        let via_polylog = stirling::neg_polylog(m, cc * z).unwrap();
        if (via_transform - via_polylog).norm() > 1e-11 * via_polylog.norm().max(1.0) {
            return Err(format!("transform vs polylog differ at m={m}"));
        }
    }
    Ok("recurrence = explicit to (40,40); EGF and polylog identities hold".into())
}

fn sequence_ogfs(seed: u64) -> CheckResult {
    let mut rng = SplitMix64::new(seed);
    let kinds: Vec<SequenceKind> = vec![
        SequenceKind::Geometric { c: c64(0.8) },
        SequenceKind::AffineGeometric {
            a: c64(1.7),
            b: c64(-0.4),
            c: c64(-0.6),
        },
        SequenceKind::PolyPowGeometric {
            alpha: c64(1.5),
            beta: c64(0.25),
            m: 3,
            c: c64(0.55),
        },
        SequenceKind::Exponential { r: c64(1.3) },
        SequenceKind::BinomialPowExponential { r: c64(-0.9) },
        SequenceKind::FourierCos {
            alpha: 1.1,
            beta: 0.4,
            c: c64(0.7),
        },
        SequenceKind::FourierSin {
            alpha: 0.9,
            beta: -0.3,
            c: c64(0.55),
        },
    ];
    let mut worst = 0.0f64;
    for kind in &kinds {
        for _ in 0..4 {
            let z = c64(rng.in_range(0.2, 0.9));
            let closed = ogf(kind, z).map_err(|e| e.to_string())?;
            let mut series = ZERO;
            let mut zp = ONE;
            for n in 0..400 {
                series += sequences::term(kind, n) * zp;
                zp *= z;
            }
            worst = worst.max((closed - series).norm() / series.norm().max(1.0));
            // Central difference of the level below approximates each
            // derivative order.
            for j in 1..=8usize {
                let h = 1e-5;
                let up = ogf_deriv(kind, z + c64(h), j - 1).map_err(|e| e.to_string())?;
                let dn = ogf_deriv(kind, z - c64(h), j - 1).map_err(|e| e.to_string())?;
                let fd = (up - dn) / (2.0 * h);
                let exact = ogf_deriv(kind, z, j).map_err(|e| e.to_string())?;
                let rel = (fd - exact).norm() / exact.norm().max(1e-6);
                if rel > 1e-6 {
                    return Err(format!("derivative FD off: {kind:?} j={j} rel {rel:.3e}"));
                }
            }
        }
    }
    expect(worst < 1e-11, format!("worst OGF-vs-series rel err {worst:.3e}"))
}

fn square_series_oracles() -> CheckResult {
    let p = sequences::SquareSeriesParams {
        q: ONE,
        z: ONE,
        kind: SequenceKind::Geometric { c: c64(0.25) },
    };
    let four_thirds = sequences::square_series_sum(&p, 1e-14, 10_000)
        .map_err(|e| e.to_string())?
        .value;
    if (four_thirds.re - 4.0 / 3.0).abs() > 1e-13 {
        return Err(format!("geometric q=1 sum {four_thirds} != 4/3"));
    }
    let p = sequences::SquareSeriesParams {
        q: c64(0.1),
        z: ONE,
        kind: SequenceKind::Geometric { c: ONE },
    };
    let tail = sequences::square_series_sum(&p, 1e-15, 10_000)
        .map_err(|e| e.to_string())?
        .value;
    if (tail.re - 1.1001000010000001).abs() > 1e-14 {
        return Err(format!("super-geometric tail sum {tail}"));
    }
    // Bilateral fold against the pentagonal product.
    let spec = sequences::BilateralSpec {
        a: 0.0,
        b: 1.0,
        r2: 3.0,
        r1: 1.0,
        r0: 0.0,
        q: c64(0.2),
    };
    let folded = sequences::bilateral_sum(&spec, 1e-15)
        .map_err(|e| e.to_string())?
        .value;
    let product = euler_product(c64(0.2), 60);
    expect(
        (folded - product).norm() < 1e-12,
        format!("pentagonal fold err {:.3e}", (folded - product).norm()),
    )
}

fn transforms_oracle_equivalence(seed: u64, cfg: &QuadratureConfig) -> CheckResult {
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    let push = |name: &str, got: Complex64, want: Complex64, worst: &mut f64| {
        let rel = rel_err(got, want);
        *worst = worst.max(rel);
        if rel > 1e-9 {
            return Err(format!("{name}: rel err {rel:.3e} ({got} vs {want})"));
        }
        Ok(())
    };
    for _ in 0..8 {
        let q = c64(rng.in_range(0.05, 0.4));
        let cc = c64(rng.in_range(-0.85, 0.85));
        let z = c64(rng.in_range(0.2, 0.95));

        let kind = SequenceKind::Geometric { c: cc };
        let want = transforms::series_oracle(&kind, q, z, 1e-16)
            .map_err(|e| e.to_string())?
            .value;
        let got = transforms::gsq(q, cc, z, cfg).map_err(|e| e.to_string())?.value;
        push("gsq", got, want, &mut worst)?;

        let (a, b) = (c64(rng.in_range(-2.0, 2.0)), c64(rng.in_range(-2.0, 2.0)));
        let kind = SequenceKind::AffineGeometric { a, b, c: cc };
        let want = transforms::series_oracle(&kind, q, z, 1e-16)
            .map_err(|e| e.to_string())?
            .value;
        let got = transforms::qab(a, b, q, cc, z, cfg)
            .map_err(|e| e.to_string())?
            .value;
        push("qab", got, want, &mut worst)?;

        let m = (rng.next_u64() % 6) as usize;
        let kind = SequenceKind::PolyPowGeometric {
            alpha: ONE,
            beta: ZERO,
            m,
            c: cc,
        };
        let want = transforms::series_oracle(&kind, q, z, 1e-16)
            .map_err(|e| e.to_string())?
            .value;
        let got = transforms::theta_poly_power(m, q, cc, z, cfg)
            .map_err(|e| e.to_string())?
            .value;
        push("theta_poly_power", got, want, &mut worst)?;

        let (alpha, beta) = (c64(rng.in_range(-1.5, 1.5)), c64(rng.in_range(-1.5, 1.5)));
        let ma = (rng.next_u64() % 4) as usize;
        let kind = SequenceKind::PolyPowGeometric {
            alpha,
            beta,
            m: ma,
            c: cc,
        };
        let want = transforms::series_oracle(&kind, q, z, 1e-16)
            .map_err(|e| e.to_string())?
            .value;
        let got = transforms::theta_affine_power(alpha, beta, ma, q, cc, z, cfg)
            .map_err(|e| e.to_string())?
            .value;
        push("theta_affine_power", got, want, &mut worst)?;

        // Shifted form through the splitting identity.
        let d = 1 + (rng.next_u64() % 3) as u32;
        let full = transforms::gsq(q, cc, z, cfg).map_err(|e| e.to_string())?.value;
        let mut partial = ZERO;
        for i in 0..d {
            partial += q.powu(i * i) * (cc * z).powu(i);
        }
        let tail = transforms::theta_shifted(d, q, cc, z, cfg)
            .map_err(|e| e.to_string())?
            .value;
        push("theta_shifted", partial + tail, full, &mut worst)?;

        // gsq_pm against a direct sum.
        let (p, mm) = (rng.in_range(0.5, 2.0), rng.in_range(0.5, 2.5));
        let sign = if rng.next_u64() % 2 == 0 { 1 } else { -1 };
        let got = transforms::gsq_pm(p, mm, q, cc, sign, cfg)
            .map_err(|e| e.to_string())?
            .value;
        let q_eff = q.powf(p);
        let c_eff = cc * q.powf(mm) * sign as f64;
        let want = transforms::series_oracle(&SequenceKind::Geometric { c: c_eff }, q_eff, ONE, 1e-16)
            .map_err(|e| e.to_string())?
            .value;
        push("gsq_pm", got, want, &mut worst)?;

        // Exponential kernels.
        let qe = c64(rng.in_range(0.3, 0.95));
        let r = c64(rng.in_range(-1.4, 1.4));
        let ze = c64(rng.in_range(-1.0, 1.0));
        let want = transforms::series_oracle(&SequenceKind::Exponential { r }, qe, ze, 1e-16)
            .map_err(|e| e.to_string())?
            .value;
        let got = transforms::esq(qe, r, ze, cfg).map_err(|e| e.to_string())?.value;
        push("esq", got, want, &mut worst)?;

        let identity_gap = (transforms::etilde(qe, r, ze, cfg)
            .map_err(|e| e.to_string())?
            .value
            - transforms::esq(qe.sqrt(), r / qe.sqrt(), ze, cfg)
                .map_err(|e| e.to_string())?
                .value)
            .norm();
        if identity_gap > 1e-12 {
            return Err(format!("etilde/esq identity gap {identity_gap:.3e}"));
        }

        // Fourier pair plus the compact form.
        let (alpha, beta) = (rng.in_range(0.2, 2.9), rng.in_range(-1.5, 1.5));
        let qf = c64(rng.in_range(0.05, 0.3));
        let cf = c64(rng.in_range(-0.8, 0.8));
        let kind = SequenceKind::FourierCos {
            alpha,
            beta,
            c: cf,
        };
        let want = transforms::series_oracle(&kind, qf, ONE, 1e-16)
            .map_err(|e| e.to_string())?
            .value;
        let got = transforms::fourier_cos(alpha, beta, qf, cf, ONE, cfg)
            .map_err(|e| e.to_string())?
            .value;
        push("fourier_cos", got, want, &mut worst)?;
        let kind = SequenceKind::FourierSin {
            alpha,
            beta,
            c: cf,
        };
        let want = transforms::series_oracle(&kind, qf, ONE, 1e-16)
            .map_err(|e| e.to_string())?
            .value;
        let got = transforms::fourier_sin(alpha, beta, qf, cf, ONE, cfg)
            .map_err(|e| e.to_string())?
            .value;
        push("fourier_sin", got, want, &mut worst)?;
        let compact = transforms::fourier_compact(TrigKind::Sin, alpha, beta, qf, cf, ONE, cfg)
            .map_err(|e| e.to_string())?
            .value;
        if (compact - got).norm() > 1e-10 {
            return Err(format!(
                "compact vs two-term gap {:.3e}",
                (compact - got).norm()
            ));
        }
    }
    Ok(format!("worst rel err {worst:.3e} over the sampled grid"))
}

fn binomial_analog_sample(cfg: &QuadratureConfig) -> CheckResult {
    let hermite = QuadratureConfig {
        method: Method::Hermite,
        ..cfg.clone()
    };
    let mut worst = 0.0f64;
    for (n, c, d, q, r) in [
        (0u32, 1.0, 1.0, 0.5, 0.5),
        (2, 1.0, 2.0, 0.5, 0.4),
        (4, 0.7, -0.3, 0.3, 0.6),
    ] {
        let (c, d, q, r) = (c64(c), c64(d), c64(q), c64(r));
        let got = transforms::binomial_analog(n, c, q, d, r, &hermite)
            .map_err(|e| e.to_string())?
            .value;
        let mut want = ZERO;
        let mut binom = 1.0f64;
        for k in 0..=n {
            if k > 0 {
                binom = binom * (n - k + 1) as f64 / k as f64;
            }
            want += binom * c.powu(k) * q.powu(k * k) * d.powu(n - k) * r.powu((n - k) * (n - k));
        }
        worst = worst.max(rel_err(got, want));
    }
    expect(worst < 1e-7, format!("worst rel err {worst:.3e}"))
}

fn numerator_table(seed: u64) -> CheckResult {
    let mut rng = SplitMix64::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let s = Complex64::new(rng.in_range(-3.0, 3.0), 0.0);
        let y = Complex64::new(rng.in_range(-0.9, 0.9), 0.0);
        let ch = s.cosh();
        let ch2 = (2.0 * s).cosh();
        let ch3 = (3.0 * s).cosh();
        let ch4 = (4.0 * s).cosh();
        let table: [Complex64; 5] = [
            ONE - y * ch,
            -2.0 * y + (y * y + ONE) * ch,
            3.0 * y * y - (y * y * y + 3.0 * y) * ch + ch2,
            -4.0 * y.powu(3) + (y.powu(4) + 6.0 * y * y) * ch - 4.0 * y * ch2 + ch3,
            5.0 * y.powu(4) - (y.powu(5) + 10.0 * y.powu(3)) * ch + 10.0 * y * y * ch2
                - 5.0 * y * ch3
                + ch4,
        ];
        for (k, entry) in table.iter().enumerate() {
            let got = transforms::numerator_poly(k, s, y);
            // Scaled by the entry magnitude: at |s| = 3 the k = 4 row reaches
            // cosh(12) ~ 8e4, where a double ulp already exceeds 1e-12.
            let scale = (2.0 * entry).norm().max(1.0);
            worst = worst.max((got - 2.0 * entry).norm() / scale);
        }
    }
    expect(worst < 1e-12, format!("worst scaled err {worst:.3e}"))
}

fn special_identities(seed: u64, cfg: &QuadratureConfig) -> CheckResult {
    let mut rng = SplitMix64::new(seed);
    // phi = theta_3 on the common region.
    for _ in 0..10 {
        let q = c64(rng.in_range(0.01, 0.2));
        let phi = special::ramanujan_phi(q, cfg).map_err(|e| e.to_string())?.value;
        let t3 = special::theta3(q, cfg).map_err(|e| e.to_string())?.value;
        if (phi - t3).norm() > 1e-10 * t3.norm() {
            return Err(format!("phi != theta3 at q={q}"));
        }
    }
    // Parity zeros are exact.
    for (i, j) in [(1u8, 0usize), (2, 3), (3, 1), (4, 5)] {
        let r = special::theta_deriv(ThetaIndex::new(i, j).unwrap(), c64(0.2), cfg)
            .map_err(|e| e.to_string())?;
        if r.value != ZERO {
            return Err(format!("parity zero violated at theta_{i}^({j})"));
        }
    }
    // f(a,b) symmetry.
    for _ in 0..20 {
        let a = c64(rng.in_range(0.05, 0.6));
        let b = c64(rng.in_range(0.05, 0.6));
        let fab = special::ramanujan_f(a, b, cfg).map_err(|e| e.to_string())?.value;
        let fba = special::ramanujan_f(b, a, cfg).map_err(|e| e.to_string())?.value;
        if (fab - fba).norm() > 1e-10 * fab.norm() {
            return Err(format!("f(a,b) symmetry broken at a={a}, b={b}"));
        }
    }
    // The three (q)_inf routes against the product at q = 0.05.
    let q = c64(0.05);
    let product = euler_product(q, 200);
    let routes = [
        ("two-integral", special::euler_qp(q, cfg).map_err(|e| e.to_string())?.value),
        (
            "theta2-form",
            special::euler_qp_theta2_form(q, cfg)
                .map_err(|e| e.to_string())?
                .value,
        ),
        (
            "bilateral",
            special::bilateral_eval(
                &sequences::BilateralSpec {
                    a: 0.0,
                    b: 1.0,
                    r2: 3.0,
                    r1: 1.0,
                    r0: 0.0,
                    q,
                },
                cfg,
            )
            .map_err(|e| e.to_string())?
            .value,
        ),
    ];
    for (name, got) in routes {
        if rel_err(got, product) > 1e-7 {
            return Err(format!("(q)_inf route {name} off: {got} vs {product}"));
        }
    }
    // Cube route vs theta_1'.
    for q in [0.05, 0.1, 0.2] {
        let qc = c64(q);
        let cubed = special::euler_qp_cubed(qc, cfg).map_err(|e| e.to_string())?.value;
        let deriv = special::theta_deriv(ThetaIndex::new(1, 1).unwrap(), qc.sqrt(), cfg)
            .map_err(|e| e.to_string())?
            .value;
        let via_deriv = deriv / (2.0 * qc.powf(0.125));
        if rel_err(cubed, via_deriv) > 1e-8 {
            return Err(format!("(q)^3 vs theta_1' at q={q}"));
        }
    }
    Ok("phi/theta3, parity, f(a,b) symmetry, Euler routes all hold".into())
}

fn chromatic_and_zagier(cfg: &QuadratureConfig) -> CheckResult {
    let got = special::chromatic_mk(2, c64(0.5), cfg).map_err(|e| e.to_string())?.value;
    let want = special::chromatic_mk_oracle(2, c64(0.5), 60);
    if rel_err(got, want) > 1e-8 {
        return Err(format!("chromatic k=2: {got} vs {want}"));
    }
    for (q, z) in [(0.3, 0.5), (0.1, 1.0)] {
        let report = special::zagier_first(c64(q), c64(z), cfg).map_err(|e| e.to_string())?;
        if !report.within_tol {
            return Err(format!(
                "zagier (q,z)=({q},{z}) rel err {:.3e}",
                report.rel_err
            ));
        }
    }
    Ok("chromatic power and Zagier identity hold".into())
}

fn gamma_and_theta_u(cfg: &QuadratureConfig) -> CheckResult {
    let lhs = special::gamma_ref(0.25).unwrap() * special::gamma_ref(0.75).unwrap();
    let rhs = std::f64::consts::PI / (std::f64::consts::PI / 4.0).sin();
    if ((lhs - rhs) / rhs).abs() > 1e-12 {
        return Err("gamma duplication check failed".into());
    }
    let q = c64(0.2);
    let zero = special::theta_u(1, 0.0, q, cfg).map_err(|e| e.to_string())?.value;
    if zero.norm() > 1e-12 {
        return Err(format!("theta_1(0, q) = {zero} != 0"));
    }
    for i in [2u8, 3] {
        let qq = if i == 2 { c64(0.2) } else { c64(0.1) };
        let got = special::theta_u(i, 0.7, qq, cfg).map_err(|e| e.to_string())?.value;
        let want = special::theta_u_oracle(i, 0.7, qq).map_err(|e| e.to_string())?;
        if rel_err(got, want) > 1e-8 {
            return Err(format!("theta_{i}(0.7) vs oracle"));
        }
    }
    Ok("gamma duplication and theta_u reductions hold".into())
}

fn mellin_single(cfg: &QuadratureConfig) -> CheckResult {
    let report = special::mellin_theta(4.0, 3, cfg).map_err(|e| e.to_string())?;
    expect(
        report.within_tol,
        format!("s=4, i=3 rel err {:.3e}", report.rel_err),
    )
}

/// Run every check with sampling derived from `seed`.
pub fn run(seed: u64) -> SelftestReport {
    let started = Instant::now();
    let cfg = QuadratureConfig::default();
    let mut checks: Vec<CheckOutcome> = Vec::new();
    let add = |name: &str, result: CheckResult, checks: &mut Vec<CheckOutcome>| {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            detail,
        });
    };

    add("quadrature trivial integrals", quadrature_trivials(&cfg), &mut checks);
    add("half-range rule mass and exactness", hermite_mass_and_exactness(), &mut checks);
    add("refinement monotonicity", refinement_monotonicity(&cfg), &mut checks);
    add("determinism", determinism(&cfg), &mut checks);
    add("oscillation safety at 256 nodes", oscillation_safety(), &mut checks);
    add("stirling suite", stirling_suite(), &mut checks);
    add("sequence OGFs and derivatives", sequence_ogfs(seed ^ 0x11), &mut checks);
    add("square series oracles", square_series_oracles(), &mut checks);
    add(
        "transforms vs series oracles",
        transforms_oracle_equivalence(seed ^ 0x22, &cfg),
        &mut checks,
    );
    add("binomial analog sample", binomial_analog_sample(&cfg), &mut checks);
    add("numerator table identity", numerator_table(seed ^ 0x33), &mut checks);
    add("special function identities", special_identities(seed ^ 0x44, &cfg), &mut checks);
    add("chromatic and Zagier", chromatic_and_zagier(&cfg), &mut checks);
    add("gamma and theta_u", gamma_and_theta_u(&cfg), &mut checks);
    add("mellin transform spot check", mellin_single(&cfg), &mut checks);

    SelftestReport {
        checks,
        elapsed: started.elapsed(),
    }
}
