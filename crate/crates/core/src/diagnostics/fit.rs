//! Least-squares decay-rate fits in transformed coordinates.

use crate::{CoreError, Result};

/// Fit model: `y ≈ A e^{-rate t}` or `y ≈ A (1+t)^{-rate}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitModel {
    Exponential,
    Power,
}

/// A fitted decay law. `rate > 0` means decay. Fits with `r² < 0.98` are
/// flagged (and logged) but still returned.
#[derive(Debug, Clone)]
pub struct RateFit {
    pub model: FitModel,
    pub rate: f64,
    pub amplitude: f64,
    pub window: (f64, f64),
    pub r_squared: f64,
    pub samples: usize,
}

/// Fit the channel on the window. Values at or below `1e-14` truncate the
/// usable window (the decay statements are about the resolvable regime).
pub fn fit_rate(
    times: &[f64],
    values: &[f64],
    model: FitModel,
    window: (f64, f64),
) -> Result<RateFit> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&t, &y) in times.iter().zip(values) {
        if t < window.0 || t > window.1 {
            continue;
        }
        if y <= 1e-14 {
            break;
        }
        let x = match model {
            FitModel::Exponential => t,
            FitModel::Power => (1.0 + t).ln(),
        };
        xs.push(x);
        ys.push(y.ln());
    }
    if xs.len() < 8 {
        return Err(CoreError::InsufficientData(format!(
            "{} usable samples in window [{}, {}], need at least 8",
            xs.len(),
            window.0,
            window.1
        )));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return Err(CoreError::InsufficientData(
            "degenerate window: all samples at one abscissa".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        let f = intercept + slope * x;
        ss_res += (y - f) * (y - f);
        ss_tot += (y - my) * (y - my);
    }
    let r_squared = if ss_tot == 0.0 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    if r_squared < 0.98 {
        log::warn!(
            "rate fit r² = {r_squared:.4} below 0.98 on window [{}, {}]",
            window.0,
            window.1
        );
    }
    Ok(RateFit {
        model,
        rate: -slope,
        amplitude: intercept.exp(),
        window,
        r_squared,
        samples: xs.len(),
    })
}
