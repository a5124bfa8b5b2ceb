//! Deterministic serialization: CSV traces and JSON reports with floats
//! printed at 17 significant digits, so identical inputs produce
//! byte-identical artifacts fit for golden-file comparison.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::harmonic::HarmonicEstimate;
use crate::orbits::OrbitTrace;
use crate::rates::RateReport;

/// 17 significant digits; round-trips every f64 exactly.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "null".to_string()
    } else if x > 0.0 {
        "1e999".to_string()
    } else {
        "-1e999".to_string()
    }
}

pub fn json_str(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Header matching the stable trace schema; h columns appended last.
pub const TRACE_CSV_HEADER: &str =
    "t,re,im,disk_re,disk_im,eucl_to_dw,hyp_from_start,horodisk_param,h_re,h_im";

pub fn trace_to_csv(trace: &OrbitTrace) -> String {
    let mut out = String::new();
    out.push_str(TRACE_CSV_HEADER);
    out.push('\n');
    for k in 0..trace.ts.len() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            fmt_f64(trace.ts[k]),
            fmt_f64(trace.points[k].re),
            fmt_f64(trace.points[k].im),
            fmt_f64(trace.disk_points[k].re),
            fmt_f64(trace.disk_points[k].im),
            fmt_f64(trace.eucl_to_dw[k]),
            fmt_f64(trace.hyp_from_start[k]),
            fmt_f64(trace.horodisk_param[k]),
            fmt_f64(trace.h_values[k].re),
            fmt_f64(trace.h_values[k].im),
        );
    }
    out
}

fn json_complex(z: Complex64) -> String {
    format!("{{\"re\":{},\"im\":{}}}", fmt_f64(z.re), fmt_f64(z.im))
}

pub fn trace_to_json(trace: &OrbitTrace) -> String {
    let mut rows = String::new();
    for k in 0..trace.ts.len() {
        if k > 0 {
            rows.push(',');
        }
        let _ = write!(
            rows,
            "{{\"t\":{},\"point\":{},\"disk\":{},\"h\":{},\"eucl_to_dw\":{},\"hyp_from_start\":{},\"horodisk_param\":{}}}",
            fmt_f64(trace.ts[k]),
            json_complex(trace.points[k]),
            json_complex(trace.disk_points[k]),
            json_complex(trace.h_values[k]),
            fmt_f64(trace.eucl_to_dw[k]),
            fmt_f64(trace.hyp_from_start[k]),
            fmt_f64(trace.horodisk_param[k]),
        );
    }
    format!(
        "{{\"model\":{},\"z0\":{},\"samples\":[{}]}}\n",
        json_str(&trace.model_id),
        json_complex(trace.z0),
        rows
    )
}

pub fn estimate_to_json(e: &HarmonicEstimate) -> String {
    format!(
        "{{\"value\":{},\"stderr\":{},\"method\":{},\"paths\":{},\"seed\":{}}}",
        fmt_f64(e.value),
        fmt_f64(e.stderr),
        json_str(e.method.as_str()),
        e.paths,
        e.seed
    )
}

pub fn rate_report_to_json(r: &RateReport) -> String {
    let bracket = match r.bracket {
        Some((lo, hi)) => format!("[{},{}]", fmt_f64(lo), fmt_f64(hi)),
        None => "null".to_string(),
    };
    format!(
        "{{\"kind\":{},\"slope\":{},\"intercept\":{},\"r_squared\":{},\"window\":[{},{}],\"bracket\":{},\"verdict\":{},\"tol\":{},\"claim\":{}}}",
        json_str(r.kind.as_str()),
        fmt_f64(r.slope),
        fmt_f64(r.intercept),
        fmt_f64(r.r_squared),
        fmt_f64(r.window.0),
        fmt_f64(r.window.1),
        bracket,
        json_str(r.verdict.as_str()),
        fmt_f64(r.tol),
        json_str(&r.claim),
    )
}
