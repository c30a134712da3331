//! Row model and the text / CSV / JSON-lines emitters shared by the
//! compare, sweep and bench subcommands.

use num_complex::Complex64;

/// One comparison row: integral value against the series oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRow {
    pub function: String,
    pub params: String,
    pub integral: Complex64,
    pub oracle: Option<Complex64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub nodes_used: u64,
    pub elapsed_ns: u128,
}

impl OutputRow {
    pub fn new(
        function: &str,
        params: String,
        integral: Complex64,
        oracle: Option<Complex64>,
        nodes_used: u64,
        elapsed_ns: u128,
    ) -> Self {
        let abs_err = oracle.map(|o| (integral - o).norm());
        let rel_err = oracle
            .zip(abs_err)
            .map(|(o, abs)| abs / o.norm().max(1e-300));
        Self {
            function: function.to_string(),
            params,
            integral,
            oracle,
            abs_err,
            rel_err,
            nodes_used,
            elapsed_ns,
        }
    }
}

pub const CSV_HEADER: &str =
    "function,params,integral_re,integral_im,oracle_re,oracle_im,abs_err,rel_err,nodes_used,elapsed_ns";

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn to_csv_line(row: &OutputRow) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        row.function,
        row.params,
        row.integral.re,
        row.integral.im,
        opt(row.oracle.map(|o| o.re)),
        opt(row.oracle.map(|o| o.im)),
        opt(row.abs_err),
        opt(row.rel_err),
        row.nodes_used,
        row.elapsed_ns
    )
}

pub fn to_csv(rows: &[OutputRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&to_csv_line(row));
        out.push('\n');
    }
    out
}

/// Parse CSV produced by `to_csv`; round-trips byte-identically. Kept as
/// the executable statement of the round-trip contract.
#[cfg_attr(not(test), allow(dead_code))]
pub fn from_csv(text: &str) -> Result<Vec<OutputRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CSV_HEADER => {}
        other => return Err(format!("unexpected CSV header: {other:?}")),
    }
    let mut rows = Vec::new();
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 10 {
            return Err(format!("expected 10 fields, got {}: {line}", fields.len()));
        }
        let f = |s: &str| -> Result<f64, String> {
            s.parse().map_err(|e| format!("bad float {s}: {e}"))
        };
        let fo = |s: &str| -> Result<Option<f64>, String> {
            if s.is_empty() {
                Ok(None)
            } else {
                f(s).map(Some)
            }
        };
        let oracle = match (fo(fields[4])?, fo(fields[5])?) {
            (Some(re), Some(im)) => Some(Complex64::new(re, im)),
            (None, None) => None,
            _ => return Err("oracle fields must be both present or both empty".into()),
        };
        rows.push(OutputRow {
            function: fields[0].to_string(),
            params: fields[1].to_string(),
            integral: Complex64::new(f(fields[2])?, f(fields[3])?),
            oracle,
            abs_err: fo(fields[6])?,
            rel_err: fo(fields[7])?,
            nodes_used: fields[8].parse().map_err(|e| format!("bad nodes: {e}"))?,
            elapsed_ns: fields[9].parse().map_err(|e| format!("bad ns: {e}"))?,
        });
    }
    Ok(rows)
}

fn json_opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x}")).unwrap_or_else(|| "null".into())
}

pub fn to_json_line(row: &OutputRow) -> String {
    format!(
        "{{\"function\":\"{}\",\"params\":\"{}\",\"integral_re\":{},\"integral_im\":{},\"oracle_re\":{},\"oracle_im\":{},\"abs_err\":{},\"rel_err\":{},\"nodes_used\":{},\"elapsed_ns\":{}}}",
        row.function,
        row.params,
        row.integral.re,
        row.integral.im,
        json_opt(row.oracle.map(|o| o.re)),
        json_opt(row.oracle.map(|o| o.im)),
        json_opt(row.abs_err),
        json_opt(row.rel_err),
        row.nodes_used,
        row.elapsed_ns
    )
}

pub fn to_text(row: &OutputRow) -> String {
    let mut s = format!(
        "{} [{}]\n  integral = {:+.15e} {:+.15e}i   ({} evals, {} ns)",
        row.function, row.params, row.integral.re, row.integral.im, row.nodes_used, row.elapsed_ns
    );
    if let Some(o) = row.oracle {
        s.push_str(&format!(
            "\n  oracle   = {:+.15e} {:+.15e}i\n  abs_err  = {:.3e}   rel_err = {:.3e}",
            o.re,
            o.im,
            row.abs_err.unwrap_or(f64::NAN),
            row.rel_err.unwrap_or(f64::NAN)
        ));
    }
    s
}
