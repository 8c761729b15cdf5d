//! Pass/fail records and conservation summaries.

use std::io::Write;

use crate::diagnostics::series::DiagnosticsSeries;
use crate::{CoreError, Result};

/// One diagnostic check: name, target description, measured value, tolerance
/// (or threshold), and the verdict.
#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub name: String,
    pub target: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(name: &str, target: &str, measured: f64, tolerance: f64, pass: bool) -> Self {
        Self {
            name: name.into(),
            target: target.into(),
            measured,
            tolerance,
            pass,
        }
    }
}

/// Write check records as CSV (`name,target,measured,tolerance,pass`).
pub fn write_report_csv<W: Write>(records: &[CheckRecord], mut w: W) -> Result<()> {
    writeln!(w, "name,target,measured,tolerance,pass")?;
    for r in records {
        writeln!(
            w,
            "{},{},{:.16e},{:.16e},{}",
            r.name, r.target, r.measured, r.tolerance, r.pass
        )?;
    }
    Ok(())
}

/// Render check records as aligned text, one line per check.
pub fn render_report(records: &[CheckRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&format!(
            "[{}] {:<32} target: {:<28} measured: {:>13.6e}  tol: {:>9.3e}\n",
            if r.pass { "pass" } else { "FAIL" },
            r.name,
            r.target,
            r.measured,
            r.tolerance
        ));
    }
    out
}

/// Drift summary for one conserved channel.
#[derive(Debug, Clone)]
pub struct DriftEntry {
    pub channel: String,
    pub max_rel_drift: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Time index of the worst drift (0 if the channel is constant).
    pub worst_index: usize,
}

/// Conservation summary across the requested channels.
#[derive(Debug, Clone)]
pub struct ConservationReport {
    pub entries: Vec<DriftEntry>,
}

impl ConservationReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn to_checks(&self) -> Vec<CheckRecord> {
        self.entries
            .iter()
            .map(|e| {
                CheckRecord::new(
                    &format!("conservation_{}", e.channel),
                    "max relative drift",
                    e.max_rel_drift,
                    e.tolerance,
                    e.pass,
                )
            })
            .collect()
    }
}

/// Max relative drift of each named channel against its initial value,
/// checked against the corresponding tolerance.
pub fn conservation_report(
    series: &DiagnosticsSeries,
    channels: &[(&str, f64)],
) -> Result<ConservationReport> {
    let mut entries = Vec::with_capacity(channels.len());
    for &(name, tol) in channels {
        let data = series
            .channel(name)
            .ok_or_else(|| CoreError::Series(format!("missing channel '{name}'")))?;
        if data.is_empty() {
            return Err(CoreError::Series(format!("empty channel '{name}'")));
        }
        let first = data[0];
        let scale = first.abs().max(1e-300);
        let mut worst = 0.0f64;
        let mut worst_index = 0usize;
        for (i, &v) in data.iter().enumerate() {
            let drift = ((v - first) / scale).abs();
            if drift > worst {
                worst = drift;
                worst_index = i;
            }
        }
        entries.push(DriftEntry {
            channel: name.into(),
            max_rel_drift: worst,
            tolerance: tol,
            pass: worst <= tol,
            worst_index,
        });
    }
    Ok(ConservationReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series_with(values: &[f64]) -> DiagnosticsSeries {
        let mut s = DiagnosticsSeries::new(&["mass_f", "mass_psi"]);
        for (i, &v) in values.iter().enumerate() {
            s.push_row(i as f64 + 1.0, &[v, 1.0]).unwrap();
        }
        s
    }

    #[test]
    fn constant_channels_pass_with_zero_drift() {
        let s = series_with(&[2.0, 2.0, 2.0]);
        let rep = conservation_report(&s, &[("mass_f", 1e-10), ("mass_psi", 1e-10)]).unwrap();
        assert!(rep.all_pass());
        assert_eq!(rep.entries[0].max_rel_drift, 0.0);
    }

    #[test]
    fn drifting_channel_fails_and_names_the_offender() {
        let s = series_with(&[1.0, 1.0 + 1e-6, 1.0]);
        let rep = conservation_report(&s, &[("mass_f", 1e-10)]).unwrap();
        assert!(!rep.all_pass());
        assert_eq!(rep.entries[0].worst_index, 1);
        assert!((rep.entries[0].max_rel_drift - 1e-6).abs() <= 1e-12);
    }

    #[test]
    fn missing_channel_is_an_error() {
        let s = series_with(&[1.0]);
        assert!(conservation_report(&s, &[("nope", 1.0)]).is_err());
    }

    #[test]
    fn report_rendering_marks_failures() {
        let records = vec![
            CheckRecord::new("a", "x <= tol", 0.5, 1.0, true),
            CheckRecord::new("b", "y <= tol", 2.0, 1.0, false),
        ];
        let text = render_report(&records);
        assert!(text.contains("[pass]"));
        assert!(text.contains("[FAIL]"));
        let mut buf = Vec::new();
        write_report_csv(&records, &mut buf).unwrap();
        let csv = String::from_utf8(buf).unwrap();
        assert!(csv.starts_with("name,target,measured,tolerance,pass\n"));
        assert!(csv.contains(",false"));
    }
}
