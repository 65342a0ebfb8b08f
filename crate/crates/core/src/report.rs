//! Residual reports for named identities and their JSON and table writers.

use std::io::{self, Write};

/// Outcome of checking one identity at one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub name: String,
    pub params: Vec<(String, f64)>,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_residual: f64,
    pub tolerance: f64,
    pub tail_bound: Option<f64>,
    pub pass: bool,
    pub method_lhs: String,
    pub method_rhs: String,
    pub terms_used: Option<usize>,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let mut report = Self {
            name: name.into(),
            params: Vec::new(),
            lhs,
            rhs,
            abs_residual: (lhs - rhs).abs(),
            tolerance,
            tail_bound: None,
            pass: false,
            method_lhs: String::new(),
            method_rhs: String::new(),
            terms_used: None,
        };
        report.pass = report.passes();
        report
    }

    pub fn param(mut self, key: impl Into<String>, value: f64) -> Self {
        self.params.push((key.into(), value));
        self
    }

    pub fn tail(mut self, bound: f64) -> Self {
        self.tail_bound = Some(bound);
        self.pass = self.passes();
        self
    }

    pub fn methods(mut self, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        self.method_lhs = lhs.into();
        self.method_rhs = rhs.into();
        self
    }

    pub fn terms(mut self, n: usize) -> Self {
        self.terms_used = Some(n);
        self
    }

    /// `abs_residual ≤ tolerance + tail_bound`; false for any NaN.
    pub fn passes(&self) -> bool {
        self.abs_residual <= self.tolerance + self.tail_bound.unwrap_or(0.0)
    }

    pub fn get_param(&self, key: &str) -> Option<f64> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }
}

/// Output formats understood by [`write_reports`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Table,
}

/// Formats a real with 17 significant digits; non-finite values become `null`.
pub fn json_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("string serialisation cannot fail")
}

fn json_object(r: &IdentityReport) -> String {
    let params = r
        .params
        .iter()
        .map(|(k, v)| format!("{}: {}", json_string(k), json_real(*v)))
        .collect::<Vec<_>>()
        .join(", ");
    let tail = r.tail_bound.map_or_else(|| "null".to_string(), json_real);
    let terms = r
        .terms_used
        .map_or_else(|| "null".to_string(), |n| n.to_string());
    format!(
        "  {{\"name\": {}, \"params\": {{{}}}, \"lhs\": {}, \"rhs\": {}, \"abs_residual\": {}, \
         \"tolerance\": {}, \"tail_bound\": {}, \"pass\": {}, \"method_lhs\": {}, \
         \"method_rhs\": {}, \"terms_used\": {}}}",
        json_string(&r.name),
        params,
        json_real(r.lhs),
        json_real(r.rhs),
        json_real(r.abs_residual),
        json_real(r.tolerance),
        tail,
        r.pass,
        json_string(&r.method_lhs),
        json_string(&r.method_rhs),
        terms,
    )
}

pub fn write_json<W: Write>(reports: &[IdentityReport], out: &mut W) -> io::Result<()> {
    if reports.is_empty() {
        return writeln!(out, "[]");
    }
    writeln!(out, "[")?;
    for (i, r) in reports.iter().enumerate() {
        let sep = if i + 1 < reports.len() { "," } else { "" };
        writeln!(out, "{}{}", json_object(r), sep)?;
    }
    writeln!(out, "]")
}

fn short(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.3e}")
    } else {
        "nan".to_string()
    }
}

pub fn write_table<W: Write>(reports: &[IdentityReport], out: &mut W) -> io::Result<()> {
    writeln!(
        out,
        "{:<12} {:<44} {:>24} {:>24} {:>10} {:>10} {:>10} {:<4}",
        "name", "params", "lhs", "rhs", "residual", "tolerance", "tail", "pass"
    )?;
    for r in reports {
        let params = r
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",");
        writeln!(
            out,
            "{:<12} {:<44} {:>24.17} {:>24.17} {:>10} {:>10} {:>10} {:<4}",
            r.name,
            params,
            r.lhs,
            r.rhs,
            short(r.abs_residual),
            short(r.tolerance),
            r.tail_bound.map_or_else(|| "-".to_string(), short),
            if r.pass { "PASS" } else { "FAIL" }
        )?;
    }
    Ok(())
}

pub fn write_reports<W: Write>(
    reports: &[IdentityReport],
    format: ReportFormat,
    out: &mut W,
) -> io::Result<()> {
    match format {
        ReportFormat::Json => write_json(reports, out),
        ReportFormat::Table => write_table(reports, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(reports: &[IdentityReport], format: ReportFormat) -> String {
        let mut buf = Vec::new();
        write_reports(reports, format, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn pass_rule() {
        let r = IdentityReport::new("x", 1.0, 1.0 + 2e-10, 1e-10);
        assert!(!r.pass);
        let r = r.tail(1.5e-10);
        assert!(r.pass);
        let nan = IdentityReport::new("x", f64::NAN, 0.0, 1.0);
        assert!(!nan.pass);
    }

    #[test]
    fn empty_outputs() {
        assert_eq!(render(&[], ReportFormat::Json), "[]\n");
        let table = render(&[], ReportFormat::Table);
        assert_eq!(table.lines().count(), 1);
        assert!(table.starts_with("name"));
    }

    #[test]
    fn single_report_json() {
        let r = IdentityReport::new("remark1", 0.5, 0.5, 1e-10)
            .param("K", 10.0)
            .methods("series", "series")
            .terms(10);
        let json = render(&[r], ReportFormat::Json);
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        let obj = &parsed[0];
        assert_eq!(obj["pass"], true);
        assert_eq!(obj["params"]["K"], 10.0);
        assert!(obj["tail_bound"].is_null());
        assert_eq!(obj["terms_used"], 10);
        assert_eq!(obj.as_object().unwrap().len(), 11);
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(json_real(0.1), "1.0000000000000001e-1");
        assert_eq!(json_real(f64::NAN), "null");
        let back: f64 = json_real(std::f64::consts::PI).parse().unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }
}
