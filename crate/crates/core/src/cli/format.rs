//! Text renderings shared by the commands.

use std::fmt::Write;

use crate::analysis::ErrorGrid;

/// Formats like C's `%.{digits}g`: `digits` significant digits, trailing
/// zeros dropped, exponent form outside `1e-4 ≤ |x| < 10^digits`.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_fraction(mantissa), sign, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Significant digits used for every floating-point CSV field.
pub const CSV_DIGITS: usize = 12;

pub fn g12(x: f64) -> String {
    format_sig(x, CSV_DIGITS)
}

/// `axis1,axis2,Ebar` header, then one row per node with axis1 slowest.
pub fn grid_csv(grid: &ErrorGrid) -> String {
    let mut out = String::with_capacity(40 * grid.values.len() + 20);
    out.push_str("axis1,axis2,Ebar\n");
    for (x, y, e) in grid.nodes() {
        writeln!(out, "{},{},{}", g12(x), g12(y), g12(e)).expect("write to String");
    }
    out
}

/// Two-column `key,value` table.
pub fn key_value_csv<'a>(rows: impl IntoIterator<Item = (&'a str, String)>) -> String {
    let mut out = String::from("quantity,value\n");
    for (k, v) in rows {
        writeln!(out, "{k},{v}").expect("write to String");
    }
    out
}
