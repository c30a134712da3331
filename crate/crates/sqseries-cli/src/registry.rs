//! Name-keyed registry of every evaluatable operation: parameter lists, the
//! integral-side evaluator, and the independent series/product oracle used
//! by `compare`, `sweep` and `bench`.

use std::collections::HashMap;

use num_complex::Complex64;
use sqseries::quadrature::EvalResult;
use sqseries::sequences::{self, euler_product, BilateralSpec, SequenceKind};
use sqseries::special::{self, LabeledGraphKind, ThetaIndex};
use sqseries::transforms::{self, TrigKind};
use sqseries::QuadratureConfig;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Errors split by exit-code class: bad usage (2) versus evaluation errors
/// (3 region, 4 convergence).
#[derive(Debug)]
pub enum RunError {
    Usage(String),
    Eval(sqseries::Error),
}

impl From<sqseries::Error> for RunError {
    fn from(e: sqseries::Error) -> Self {
        RunError::Eval(e)
    }
}

pub type RunResult<T> = Result<T, RunError>;

/// Parse a complex literal: "re" or "re+imi" / "re-imi" (e.g. 0.5, 1e-3,
/// 0.25+0.5i, -0.2-1e-3i).
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t = s.trim();
    if let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('I')) {
        // Split the imaginary part at the last sign that is neither leading
        // nor part of an exponent.
        let bytes = body.as_bytes();
        let mut split = None;
        for pos in (1..bytes.len()).rev() {
            let ch = bytes[pos];
            if (ch == b'+' || ch == b'-') && bytes[pos - 1] != b'e' && bytes[pos - 1] != b'E' {
                split = Some(pos);
                break;
            }
        }
        let (re_str, im_str) = match split {
            Some(pos) => (&body[..pos], &body[pos..]),
            None => ("0", body),
        };
        let re: f64 = if re_str.is_empty() {
            0.0
        } else {
            re_str
                .parse()
                .map_err(|e| format!("bad real part in {s:?}: {e}"))?
        };
        let im_str = match im_str {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        let im: f64 = im_str
            .parse()
            .map_err(|e| format!("bad imaginary part in {s:?}: {e}"))?;
        Ok(Complex64::new(re, im))
    } else {
        let re: f64 = t.parse().map_err(|e| format!("bad number {s:?}: {e}"))?;
        Ok(Complex64::new(re, 0.0))
    }
}

/// One resolved point of the parameter grid.
#[derive(Debug, Clone)]
pub struct ParamSet {
    values: HashMap<&'static str, String>,
}

impl ParamSet {
    pub fn new(values: HashMap<&'static str, String>) -> Self {
        Self { values }
    }

    fn raw(&self, name: &'static str) -> RunResult<&str> {
        self.values
            .get(name)
            .map(|s| s.as_str())
            .ok_or_else(|| RunError::Usage(format!("missing required parameter --{name}")))
    }

    pub fn complex(&self, name: &'static str) -> RunResult<Complex64> {
        parse_complex(self.raw(name)?).map_err(RunError::Usage)
    }

    pub fn real(&self, name: &'static str) -> RunResult<f64> {
        let v = self.complex(name)?;
        if v.im != 0.0 {
            return Err(RunError::Usage(format!("--{name} must be real")));
        }
        Ok(v.re)
    }

    pub fn integer(&self, name: &'static str) -> RunResult<i64> {
        self.raw(name)?
            .trim()
            .parse()
            .map_err(|e| RunError::Usage(format!("--{name} must be an integer: {e}")))
    }

    pub fn unsigned(&self, name: &'static str) -> RunResult<u32> {
        let v = self.integer(name)?;
        u32::try_from(v).map_err(|_| RunError::Usage(format!("--{name} must be non-negative")))
    }

    /// Canonical "k=v;k=v" rendering in registry parameter order.
    pub fn render(&self, order: &[&'static str]) -> String {
        order
            .iter()
            .filter_map(|name| self.values.get(name).map(|v| format!("{name}={v}")))
            .collect::<Vec<_>>()
            .join(";")
    }
}

pub struct FnEntry {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub integral: fn(&ParamSet, &QuadratureConfig) -> RunResult<EvalResult>,
    pub oracle: Option<fn(&ParamSet) -> RunResult<Complex64>>,
}

const ORACLE_TOL: f64 = 1e-15;

fn series(kind: SequenceKind, q: Complex64, z: Complex64) -> RunResult<Complex64> {
    Ok(transforms::series_oracle(&kind, q, z, ORACLE_TOL)?.value)
}

fn report_result(r: &special::SpecialValueReport) -> EvalResult {
    EvalResult {
        value: r.computed,
        error_estimate: r.abs_err,
        nodes_used: 0,
        converged: r.within_tol,
        warnings: Vec::new(),
    }
}

/// Sequence family selector for the direct summation entry: the family name
/// decides which of the shared parameter slots are read.
fn family_kind(p: &ParamSet) -> RunResult<SequenceKind> {
    match p.raw("family")? {
        "geometric" => Ok(SequenceKind::Geometric { c: p.complex("c")? }),
        "affine" => Ok(SequenceKind::AffineGeometric {
            a: p.complex("a")?,
            b: p.complex("b")?,
            c: p.complex("c")?,
        }),
        "polypow" => Ok(SequenceKind::PolyPowGeometric {
            alpha: p.complex("alpha")?,
            beta: p.complex("beta")?,
            m: p.unsigned("m")? as usize,
            c: p.complex("c")?,
        }),
        "exponential" => Ok(SequenceKind::Exponential { r: p.complex("r")? }),
        "binomial_exponential" => Ok(SequenceKind::BinomialPowExponential { r: p.complex("r")? }),
        "fourier_cos" => Ok(SequenceKind::FourierCos {
            alpha: p.real("alpha")?,
            beta: p.real("beta")?,
            c: p.complex("c")?,
        }),
        "fourier_sin" => Ok(SequenceKind::FourierSin {
            alpha: p.real("alpha")?,
            beta: p.real("beta")?,
            c: p.complex("c")?,
        }),
        other => Err(RunError::Usage(format!(
            "unknown family {other:?}; one of geometric, affine, polypow, exponential, \
             binomial_exponential, fourier_cos, fourier_sin"
        ))),
    }
}

fn trig_kind(p: &ParamSet) -> RunResult<TrigKind> {
    match p.raw("which")? {
        "cos" => Ok(TrigKind::Cos),
        "sin" => Ok(TrigKind::Sin),
        other => Err(RunError::Usage(format!(
            "--which must be cos or sin, got {other:?}"
        ))),
    }
}

fn theta_deriv_oracle_kind(i: u8, j: usize, q: Complex64) -> (SequenceKind, Complex64, Complex64, Complex64) {
    // (kind, z, prefactor, offset) of the derivative series.
    let two = Complex64::new(2.0, 0.0);
    match i {
        1 | 2 => (
            SequenceKind::PolyPowGeometric {
                alpha: two,
                beta: ONE,
                m: j,
                c: q,
            },
            -ONE,
            2.0 * q.powf(0.25),
            Complex64::new(0.0, 0.0),
        ),
        3 => (
            SequenceKind::PolyPowGeometric {
                alpha: two,
                beta: two,
                m: j,
                c: q * q,
            },
            ONE,
            2.0 * q,
            if j == 0 { ONE } else { Complex64::new(0.0, 0.0) },
        ),
        _ => (
            SequenceKind::PolyPowGeometric {
                alpha: two,
                beta: two,
                m: j,
                c: q * q,
            },
            -ONE,
            -2.0 * q,
            if j == 0 { ONE } else { Complex64::new(0.0, 0.0) },
        ),
    }
}

pub static REGISTRY: &[FnEntry] = &[
    FnEntry {
        name: "gsq",
        params: &["q", "c", "z"],
        integral: |p, cfg| Ok(transforms::gsq(p.complex("q")?, p.complex("c")?, p.complex("z")?, cfg)?),
        oracle: Some(|p| {
            series(
                SequenceKind::Geometric { c: p.complex("c")? },
                p.complex("q")?,
                p.complex("z")?,
            )
        }),
    },
    FnEntry {
        name: "theta_shifted",
        params: &["d", "q", "c", "z"],
        integral: |p, cfg| {
            Ok(transforms::theta_shifted(
                p.unsigned("d")?,
                p.complex("q")?,
                p.complex("c")?,
                p.complex("z")?,
                cfg,
            )?)
        },
        oracle: Some(|p| {
            let (d, q, c, z) = (
                p.unsigned("d")?,
                p.complex("q")?,
                p.complex("c")?,
                p.complex("z")?,
            );
            let full = series(SequenceKind::Geometric { c }, q, z)?;
            let mut partial = Complex64::new(0.0, 0.0);
            for i in 0..d {
                partial += q.powu(i * i) * (c * z).powu(i);
            }
            Ok(full - partial)
        }),
    },
    FnEntry {
        name: "qab",
        params: &["a", "b", "q", "c", "z"],
        integral: |p, cfg| {
            Ok(transforms::qab(
                p.complex("a")?,
                p.complex("b")?,
                p.complex("q")?,
                p.complex("c")?,
                p.complex("z")?,
                cfg,
            )?)
        },
        oracle: Some(|p| {
            series(
                SequenceKind::AffineGeometric {
                    a: p.complex("a")?,
                    b: p.complex("b")?,
                    c: p.complex("c")?,
                },
                p.complex("q")?,
                p.complex("z")?,
            )
        }),
    },
    FnEntry {
        name: "gsq_pm",
        params: &["p", "m", "q", "c", "sign"],
        integral: |p, cfg| {
            Ok(transforms::gsq_pm(
                p.real("p")?,
                p.real("m")?,
                p.complex("q")?,
                p.complex("c")?,
                p.integer("sign")? as i32,
                cfg,
            )?)
        },
        oracle: Some(|p| {
            let q = p.complex("q")?;
            let q_eff = q.powf(p.real("p")?);
            let c_eff = p.complex("c")? * q.powf(p.real("m")?) * p.integer("sign")? as f64;
            series(SequenceKind::Geometric { c: c_eff }, q_eff, ONE)
        }),
    },
    FnEntry {
        name: "theta_poly_power",
        params: &["m", "q", "c", "z"],
        integral: |p, cfg| {
            Ok(transforms::theta_poly_power(
                p.unsigned("m")? as usize,
                p.complex("q")?,
                p.complex("c")?,
                p.complex("z")?,
                cfg,
            )?)
        },
        oracle: Some(|p| {
            series(
                SequenceKind::PolyPowGeometric {
                    alpha: ONE,
                    beta: Complex64::new(0.0, 0.0),
                    m: p.unsigned("m")? as usize,
                    c: p.complex("c")?,
                },
                p.complex("q")?,
                p.complex("z")?,
            )
        }),
    },
    FnEntry {
        name: "theta_affine_power",
        params: &["alpha", "beta", "m", "q", "c", "z"],
        integral: |p, cfg| {
            Ok(transforms::theta_affine_power(
                p.complex("alpha")?,
                p.complex("beta")?,
                p.unsigned("m")? as usize,
                p.complex("q")?,
                p.complex("c")?,
                p.complex("z")?,
                cfg,
            )?)
        },
        oracle: Some(|p| {
            series(
                SequenceKind::PolyPowGeometric {
                    alpha: p.complex("alpha")?,
                    beta: p.complex("beta")?,
                    m: p.unsigned("m")? as usize,
                    c: p.complex("c")?,
                },
                p.complex("q")?,
                p.complex("z")?,
            )
        }),
    },
    FnEntry {
        name: "esq",
        params: &["q", "r", "z"],
        integral: |p, cfg| Ok(transforms::esq(p.complex("q")?, p.complex("r")?, p.complex("z")?, cfg)?),
        oracle: Some(|p| {
            series(
                SequenceKind::Exponential { r: p.complex("r")? },
                p.complex("q")?,
                p.complex("z")?,
            )
        }),
    },
    FnEntry {
        name: "etilde",
        params: &["q", "r", "z"],
        integral: |p, cfg| Ok(transforms::etilde(p.complex("q")?, p.complex("r")?, p.complex("z")?, cfg)?),
        oracle: Some(|p| {
            let (q, r, z) = (p.complex("q")?, p.complex("r")?, p.complex("z")?);
            let mut sum = Complex64::new(0.0, 0.0);
            for n in 0..200u32 {
                let mut t = q.powu(n * n.saturating_sub(1) / 2) * (r * z).powu(n);
                for v in 1..=n {
                    t /= v as f64;
                }
                sum += t;
                if t.norm() < 1e-18 && n > 3 {
                    break;
                }
            }
            Ok(sum)
        }),
    },
    FnEntry {
        name: "fourier_cos",
        params: &["alpha", "beta", "q", "c", "z"],
        integral: |p, cfg| {
            Ok(transforms::fourier_cos(
                p.real("alpha")?,
                p.real("beta")?,
                p.complex("q")?,
                p.complex("c")?,
                p.complex("z")?,
                cfg,
            )?)
        },
        oracle: Some(|p| {
            series(
                SequenceKind::FourierCos {
                    alpha: p.real("alpha")?,
                    beta: p.real("beta")?,
                    c: p.complex("c")?,
                },
                p.complex("q")?,
                p.complex("z")?,
            )
        }),
    },
    FnEntry {
        name: "fourier_sin",
        params: &["alpha", "beta", "q", "c", "z"],
        integral: |p, cfg| {
            Ok(transforms::fourier_sin(
                p.real("alpha")?,
                p.real("beta")?,
                p.complex("q")?,
                p.complex("c")?,
                p.complex("z")?,
                cfg,
            )?)
        },
        oracle: Some(|p| {
            series(
                SequenceKind::FourierSin {
                    alpha: p.real("alpha")?,
                    beta: p.real("beta")?,
                    c: p.complex("c")?,
                },
                p.complex("q")?,
                p.complex("z")?,
            )
        }),
    },
    FnEntry {
        name: "fourier_compact",
        params: &["which", "alpha", "beta", "q", "c", "z"],
        integral: |p, cfg| {
            Ok(transforms::fourier_compact(
                trig_kind(p)?,
                p.real("alpha")?,
                p.real("beta")?,
                p.complex("q")?,
                p.complex("c")?,
                p.complex("z")?,
                cfg,
            )?)
        },
        oracle: Some(|p| {
            let kind = match trig_kind(p)? {
                TrigKind::Cos => SequenceKind::FourierCos {
                    alpha: p.real("alpha")?,
                    beta: p.real("beta")?,
                    c: p.complex("c")?,
                },
                TrigKind::Sin => SequenceKind::FourierSin {
                    alpha: p.real("alpha")?,
                    beta: p.real("beta")?,
                    c: p.complex("c")?,
                },
            };
            series(kind, p.complex("q")?, p.complex("z")?)
        }),
    },
    FnEntry {
        name: "binomial_analog",
        params: &["n", "c", "q", "d", "r"],
        integral: |p, cfg| {
            Ok(transforms::binomial_analog(
                p.unsigned("n")?,
                p.complex("c")?,
                p.complex("q")?,
                p.complex("d")?,
                p.complex("r")?,
                cfg,
            )?)
        },
        oracle: Some(|p| {
            let n = p.unsigned("n")?;
            let (c, q, d, r) = (
                p.complex("c")?,
                p.complex("q")?,
                p.complex("d")?,
                p.complex("r")?,
            );
            let mut sum = Complex64::new(0.0, 0.0);
            let mut binom = 1.0f64;
            for k in 0..=n {
                if k > 0 {
                    binom = binom * (n - k + 1) as f64 / k as f64;
                }
                sum += binom * c.powu(k) * q.powu(k * k) * d.powu(n - k) * r.powu((n - k) * (n - k));
            }
            Ok(sum)
        }),
    },
    FnEntry {
        name: "theta2",
        params: &["q"],
        integral: |p, cfg| Ok(special::theta2(p.complex("q")?, cfg)?),
        oracle: Some(|p| {
            let q = p.complex("q")?;
            Ok(2.0 * q.powf(0.25) * series(SequenceKind::Geometric { c: q }, q, ONE)?)
        }),
    },
    FnEntry {
        name: "theta3",
        params: &["q"],
        integral: |p, cfg| Ok(special::theta3(p.complex("q")?, cfg)?),
        oracle: Some(|p| {
            let q = p.complex("q")?;
            Ok(ONE + 2.0 * q * series(SequenceKind::Geometric { c: q * q }, q, ONE)?)
        }),
    },
    FnEntry {
        name: "theta4",
        params: &["q"],
        integral: |p, cfg| Ok(special::theta4(p.complex("q")?, cfg)?),
        oracle: Some(|p| {
            let q = p.complex("q")?;
            Ok(ONE - 2.0 * q * series(SequenceKind::Geometric { c: q * q }, q, -ONE)?)
        }),
    },
    FnEntry {
        name: "theta_deriv",
        params: &["i", "j", "q"],
        integral: |p, cfg| {
            let idx = ThetaIndex::new(p.unsigned("i")? as u8, p.unsigned("j")? as usize)?;
            Ok(special::theta_deriv(idx, p.complex("q")?, cfg)?)
        },
        oracle: Some(|p| {
            let (i, j, q) = (
                p.unsigned("i")? as u8,
                p.unsigned("j")? as usize,
                p.complex("q")?,
            );
            let idx = ThetaIndex::new(i, j)?;
            if !idx.parity_allowed() {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let (kind, z, prefactor, offset) = theta_deriv_oracle_kind(i, j, q);
            Ok(prefactor * series(kind, q, z)? + offset)
        }),
    },
    FnEntry {
        name: "ramanujan_phi",
        params: &["q"],
        integral: |p, cfg| Ok(special::ramanujan_phi(p.complex("q")?, cfg)?),
        oracle: Some(|p| {
            let q = p.complex("q")?;
            Ok(ONE + 2.0 * q * series(SequenceKind::Geometric { c: q * q }, q, ONE)?)
        }),
    },
    FnEntry {
        name: "ramanujan_psi",
        params: &["q"],
        integral: |p, cfg| Ok(special::ramanujan_psi(p.complex("q")?, cfg)?),
        oracle: Some(|p| {
            let s = p.complex("q")?.sqrt();
            series(SequenceKind::Geometric { c: s }, s, ONE)
        }),
    },
    FnEntry {
        name: "phi_value",
        params: &["k"],
        integral: |p, cfg| Ok(report_result(&special::phi_exp_value(p.real("k")?, cfg)?)),
        oracle: Some(|p| {
            let cfg = QuadratureConfig::default();
            Ok(special::phi_exp_value(p.real("k")?, &cfg)?.reference)
        }),
    },
    FnEntry {
        name: "psi_value",
        params: &["k"],
        integral: |p, cfg| Ok(report_result(&special::psi_exp_value(p.real("k")?, cfg)?)),
        oracle: Some(|p| {
            let cfg = QuadratureConfig::default();
            Ok(special::psi_exp_value(p.real("k")?, &cfg)?.reference)
        }),
    },
    FnEntry {
        name: "gamma_ref",
        params: &["x"],
        integral: |p, _cfg| {
            Ok(EvalResult::exact(Complex64::new(
                special::gamma_ref(p.real("x")?)?,
                0.0,
            )))
        },
        oracle: None,
    },
    FnEntry {
        name: "euler_qp",
        params: &["q"],
        integral: |p, cfg| Ok(special::euler_qp(p.complex("q")?, cfg)?),
        oracle: Some(|p| Ok(euler_product(p.complex("q")?, 400))),
    },
    FnEntry {
        name: "euler_qp_cubed",
        params: &["q"],
        integral: |p, cfg| Ok(special::euler_qp_cubed(p.complex("q")?, cfg)?),
        oracle: Some(|p| Ok(euler_product(p.complex("q")?, 400).powu(3))),
    },
    FnEntry {
        name: "euler_qp_theta2_form",
        params: &["q"],
        integral: |p, cfg| Ok(special::euler_qp_theta2_form(p.complex("q")?, cfg)?),
        oracle: Some(|p| Ok(euler_product(p.complex("q")?, 400))),
    },
    FnEntry {
        name: "ramanujan_f",
        params: &["a", "b"],
        integral: |p, cfg| Ok(special::ramanujan_f(p.complex("a")?, p.complex("b")?, cfg)?),
        oracle: Some(|p| Ok(special::ramanujan_f_oracle(p.complex("a")?, p.complex("b")?))),
    },
    FnEntry {
        name: "mellin_theta",
        params: &["s", "i"],
        integral: |p, cfg| {
            Ok(report_result(&special::mellin_theta(
                p.real("s")?,
                p.unsigned("i")? as u8,
                cfg,
            )?))
        },
        oracle: Some(|p| {
            let cfg = QuadratureConfig::default();
            Ok(special::mellin_theta(p.real("s")?, p.unsigned("i")? as u8, &cfg)?.reference)
        }),
    },
    FnEntry {
        name: "theta_u",
        params: &["i", "u", "q"],
        integral: |p, cfg| {
            Ok(special::theta_u(
                p.unsigned("i")? as u8,
                p.real("u")?,
                p.complex("q")?,
                cfg,
            )?)
        },
        oracle: Some(|p| {
            Ok(special::theta_u_oracle(
                p.unsigned("i")? as u8,
                p.real("u")?,
                p.complex("q")?,
            )?)
        }),
    },
    FnEntry {
        name: "zagier_first",
        params: &["q", "z"],
        integral: |p, cfg| {
            Ok(report_result(&special::zagier_first(
                p.complex("q")?,
                p.complex("z")?,
                cfg,
            )?))
        },
        oracle: Some(|p| {
            let cfg = QuadratureConfig::default();
            Ok(special::zagier_first(p.complex("q")?, p.complex("z")?, &cfg)?.reference)
        }),
    },
    FnEntry {
        name: "chromatic_mk",
        params: &["k", "z"],
        integral: |p, cfg| Ok(special::chromatic_mk(p.unsigned("k")?, p.complex("z")?, cfg)?),
        oracle: Some(|p| {
            Ok(special::chromatic_mk_oracle(
                p.unsigned("k")?,
                p.complex("z")?,
                80,
            ))
        }),
    },
    FnEntry {
        name: "labeled_graph_edges",
        params: &["kind", "z"],
        integral: |p, cfg| {
            let kind = match p.raw("kind")? {
                "ordinary" => LabeledGraphKind::Ordinary,
                "exponential" => LabeledGraphKind::Exponential,
                other => {
                    return Err(RunError::Usage(format!(
                        "--kind must be ordinary or exponential, got {other:?}"
                    )))
                }
            };
            Ok(special::labeled_graph_edges(kind, p.complex("z")?, cfg)?)
        },
        oracle: None,
    },
    FnEntry {
        name: "labeled_graph_generic",
        params: &["q", "c", "z"],
        integral: |p, cfg| {
            Ok(special::labeled_graph_edges_generic(
                p.complex("q")?,
                p.complex("c")?,
                p.complex("z")?,
                cfg,
            )?)
        },
        oracle: Some(|p| {
            let (q, c, z) = (p.complex("q")?, p.complex("c")?, p.complex("z")?);
            let mut sum = Complex64::new(0.0, 0.0);
            for n in 0..200u32 {
                sum += 0.25
                    * (n * n.saturating_sub(1)) as f64
                    * q.powu(n * n)
                    * (c * z).powu(n);
            }
            Ok(sum)
        }),
    },
    FnEntry {
        name: "square_series_sum",
        params: &["family", "q", "z", "c", "a", "b", "alpha", "beta", "m", "r"],
        integral: |p, _cfg| {
            let kind = family_kind(p)?;
            Ok(sequences::square_series_sum(
                &sequences::SquareSeriesParams {
                    q: p.complex("q")?,
                    z: p.complex("z")?,
                    kind,
                },
                1e-15,
                sequences::DEFAULT_N_CAP,
            )?)
        },
        oracle: None,
    },
    FnEntry {
        name: "neg_polylog",
        params: &["m", "x"],
        integral: |p, _cfg| {
            Ok(EvalResult::exact(sqseries::stirling::neg_polylog(
                p.unsigned("m")? as usize,
                p.complex("x")?,
            )?))
        },
        oracle: None,
    },
    FnEntry {
        name: "stirling2",
        params: &["n", "k"],
        integral: |p, _cfg| {
            Ok(EvalResult::exact(Complex64::new(
                sqseries::stirling::stirling2_f64(
                    p.unsigned("n")? as usize,
                    p.unsigned("k")? as usize,
                ),
                0.0,
            )))
        },
        oracle: None,
    },
    FnEntry {
        name: "bilateral_eval",
        params: &["a", "b", "r2", "r1", "r0", "q"],
        integral: |p, cfg| {
            let spec = BilateralSpec {
                a: p.real("a")?,
                b: p.real("b")?,
                r2: p.real("r2")?,
                r1: p.real("r1")?,
                r0: p.real("r0")?,
                q: p.complex("q")?,
            };
            Ok(special::bilateral_eval(&spec, cfg)?)
        },
        oracle: Some(|p| {
            let spec = BilateralSpec {
                a: p.real("a")?,
                b: p.real("b")?,
                r2: p.real("r2")?,
                r1: p.real("r1")?,
                r0: p.real("r0")?,
                q: p.complex("q")?,
            };
            Ok(sequences::bilateral_sum(&spec, ORACLE_TOL)?.value)
        }),
    },
];

pub fn lookup(name: &str) -> Option<&'static FnEntry> {
    REGISTRY.iter().find(|e| e.name == name)
}

pub fn names() -> Vec<&'static str> {
    REGISTRY.iter().map(|e| e.name).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_parsing() {
        assert_eq!(parse_complex("0.5").unwrap(), Complex64::new(0.5, 0.0));
        assert_eq!(parse_complex("-2e-3").unwrap(), Complex64::new(-2e-3, 0.0));
        assert_eq!(
            parse_complex("0.5+0.3i").unwrap(),
            Complex64::new(0.5, 0.3)
        );
        assert_eq!(
            parse_complex("-0.2-1e-3i").unwrap(),
            Complex64::new(-0.2, -1e-3)
        );
        assert_eq!(parse_complex("2i").unwrap(), Complex64::new(0.0, 2.0));
        assert_eq!(parse_complex("1e-2i").unwrap(), Complex64::new(0.0, 1e-2));
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn registry_names_unique_and_lookup_works() {
        let mut names = names();
        let before = names.len();
        names.sort_unstable();
        names.dedup();
        assert_eq!(before, names.len(), "duplicate registry names");
        assert!(lookup("gsq").is_some());
        assert!(lookup("nope").is_none());
    }

    #[test]
    fn gsq_entry_compares_against_oracle() {
        let mut values = HashMap::new();
        values.insert("q", "0.2".to_string());
        values.insert("c", "0.5".to_string());
        values.insert("z", "1".to_string());
        let p = ParamSet::new(values);
        let entry = lookup("gsq").unwrap();
        let got = (entry.integral)(&p, &QuadratureConfig::default()).unwrap();
        let want = (entry.oracle.unwrap())(&p).unwrap();
        assert!((got.value - want).norm() < 1e-10 * want.norm());
    }

    #[test]
    fn missing_parameter_is_usage_error() {
        let p = ParamSet::new(HashMap::new());
        let entry = lookup("gsq").unwrap();
        match (entry.integral)(&p, &QuadratureConfig::default()) {
            Err(RunError::Usage(msg)) => assert!(msg.contains("--q")),
            other => panic!("expected usage error, got {other:?}"),
        }
    }
}
