//! Serialized report forms: a JSON document that round-trips the full
//! `AuditReport`, and a flat CSV summary for plotting. Both are pure
//! functions of the report with fixed field order and fixed float
//! formatting, so identical runs produce identical bytes.

use std::path::Path;

use hankelet_core::audit::{AuditReport, EntryStatus, Rect};
use hankelet_core::{Error, Result};

pub fn status_label(status: EntryStatus) -> &'static str {
    match status {
        EntryStatus::Pass => "pass",
        EntryStatus::Fail => "fail",
        EntryStatus::Refused => "precondition_failed",
        EntryStatus::Info => "info",
    }
}

fn float(v: f64) -> String {
    format!("{v:.11e}")
}

fn opt_float(v: Option<f64>) -> String {
    v.map(float).unwrap_or_default()
}

fn rect(r: &Rect) -> String {
    format!(
        "[{:.11e},{:.11e}]x[{:.11e},{:.11e}]",
        r.scale_lo, r.scale_hi, r.position_lo, r.position_hi
    )
}

/// Minimal CSV quoting: fields with commas, quotes, or newlines are
/// wrapped and inner quotes doubled; everything else passes through.
fn field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render_csv(report: &AuditReport) -> String {
    let mut out = String::from(
        "id,alpha,wavelet,function,beta,s,p,region,region_measure,epsilon,\
         lhs,rhs,ratio,margin,tolerance,status,notes\n",
    );
    for e in &report.entries {
        let cols = [
            e.id.to_string(),
            opt_float(e.alpha),
            e.wavelet.clone().unwrap_or_default(),
            e.function.clone().unwrap_or_default(),
            opt_float(e.params.beta),
            opt_float(e.params.s),
            opt_float(e.params.p),
            e.params.region.as_ref().map(rect).unwrap_or_default(),
            opt_float(e.params.region_measure),
            opt_float(e.params.epsilon),
            opt_float(e.lhs),
            opt_float(e.rhs),
            opt_float(e.ratio),
            opt_float(e.margin),
            float(e.tolerance),
            status_label(e.status).to_string(),
            e.notes.clone(),
        ];
        let row: Vec<String> = cols.iter().map(|c| field(c)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn render_json(report: &AuditReport) -> Result<String> {
    let mut text = serde_json::to_string_pretty(report)
        .map_err(|e| Error::Numerical(format!("cannot serialize the report: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hankelet_core::audit::{run_battery, BatteryConfig, CheckSpec, InequalityId, WaveletSpec};
    use hankelet_core::radial::TestFamily;

    fn tiny_report() -> AuditReport {
        let cfg = BatteryConfig {
            alphas: vec![0.5],
            wavelets: vec![WaveletSpec { order: 2, width: 2.0 }],
            functions: vec![TestFamily::gaussian(1.0).unwrap()],
            checks: vec![
                CheckSpec::new(InequalityId::HeisHankelSum),
                CheckSpec::new(InequalityId::LinfBound),
            ],
            ..BatteryConfig::default()
        };
        run_battery(&cfg).unwrap()
    }

    #[test]
    fn json_round_trips_field_for_field() {
        let report = tiny_report();
        let text = render_json(&report).unwrap();
        let back: AuditReport = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_value(&back).unwrap(), serde_json::to_value(&report).unwrap());
    }

    #[test]
    fn csv_has_one_row_per_entry_and_quotes_the_wavelet_tag() {
        let report = tiny_report();
        let csv = render_csv(&report);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 1 + report.entries.len());
        // the tag bessel_hat(k=2,sigma=2) carries a comma
        assert!(csv.contains("\"bessel_hat(k=2,sigma=2)\""), "{csv}");
        for line in &lines[1..] {
            assert!(
                line.contains(",pass,") || line.ends_with(",pass")
                    || line.contains(",fail,") || line.contains(",precondition_failed,")
                    || line.contains(",info,"),
                "row without status: {line}"
            );
        }
    }

    #[test]
    fn floats_carry_twelve_significant_digits() {
        assert_eq!(super::float(0.03125), "3.12500000000e-2");
        assert_eq!(super::float(-1.0), "-1.00000000000e0");
    }
}
