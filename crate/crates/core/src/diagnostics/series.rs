//! Time-stamped diagnostic channels.

use std::io::Write;

use crate::{CoreError, Result};

/// Aligned time series of named real channels. Entries are validated on
/// insertion: times strictly increase and no NaN/Inf is accepted.
#[derive(Debug, Clone)]
pub struct DiagnosticsSeries {
    names: Vec<String>,
    times: Vec<f64>,
    channels: Vec<Vec<f64>>,
}

impl DiagnosticsSeries {
    pub fn new(names: &[&str]) -> Self {
        Self {
            names: names.iter().map(|s| s.to_string()).collect(),
            times: Vec::new(),
            channels: vec![Vec::new(); names.len()],
        }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn push_row(&mut self, t: f64, values: &[f64]) -> Result<()> {
        if values.len() != self.channels.len() {
            return Err(CoreError::Series(format!(
                "row has {} values for {} channels",
                values.len(),
                self.channels.len()
            )));
        }
        if !t.is_finite() || values.iter().any(|v| !v.is_finite()) {
            return Err(CoreError::Series(format!(
                "non-finite entry at t = {t}: {values:?}"
            )));
        }
        if let Some(&last) = self.times.last() {
            if t <= last {
                return Err(CoreError::Series(format!(
                    "times must increase: {t} after {last}"
                )));
            }
        }
        self.times.push(t);
        for (c, &v) in self.channels.iter_mut().zip(values) {
            c.push(v);
        }
        Ok(())
    }

    pub fn channel(&self, name: &str) -> Option<&[f64]> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.channels[i].as_slice())
    }

    /// Write the series as CSV with a header row; fixed column order, fixed
    /// float formatting, so identical runs produce identical bytes.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        write!(w, "t")?;
        for n in &self.names {
            write!(w, ",{n}")?;
        }
        writeln!(w)?;
        for (i, t) in self.times.iter().enumerate() {
            write!(w, "{t:.16e}")?;
            for c in &self.channels {
                write!(w, ",{:.16e}", c[i])?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}
