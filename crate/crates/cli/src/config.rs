//! Run configuration: structured-text parsing with exhaustive validation.
//!
//! The format is `key = value` sections. Unknown sections or keys are
//! rejected, and validation reports every problem found, not just the first.

use std::collections::BTreeMap;

use thermalcloud_core::kinetic::OperatorKind;
use thermalcloud_core::spectral::symbols::KernelKind;
use thermalcloud_core::CoreError;

/// Named experiment the runner executes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    L1Relaxation,
    L2Decay,
    PoincareCheck,
    NormalFormResidual,
    NlsEquilibrium,
    CoupledSmalldata,
    Picard,
}

impl Scenario {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "l1_relaxation" => Some(Self::L1Relaxation),
            "l2_decay" => Some(Self::L2Decay),
            "poincare_check" => Some(Self::PoincareCheck),
            "normal_form_residual" => Some(Self::NormalFormResidual),
            "nls_equilibrium" => Some(Self::NlsEquilibrium),
            "coupled_smalldata" => Some(Self::CoupledSmalldata),
            "picard" => Some(Self::Picard),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::L1Relaxation => "l1_relaxation",
            Self::L2Decay => "l2_decay",
            Self::PoincareCheck => "poincare_check",
            Self::NormalFormResidual => "normal_form_residual",
            Self::NlsEquilibrium => "nls_equilibrium",
            Self::CoupledSmalldata => "coupled_smalldata",
            Self::Picard => "picard",
        }
    }
}

/// Field-dump policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DumpFields {
    #[default]
    None,
    Final,
    Every(usize),
}

impl DumpFields {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "none" => Some(Self::None),
            "final" => Some(Self::Final),
            other => other
                .strip_prefix("every-")
                .and_then(|k| k.parse::<usize>().ok())
                .filter(|&k| k >= 1)
                .map(Self::Every),
        }
    }
}

/// Grid block of the configuration.
#[derive(Debug, Clone)]
pub struct GridConfig {
    pub dim_r: usize,
    pub dim_p: usize,
    pub n_r: usize,
    pub n_p: usize,
    pub length_r: f64,
    pub p_max: f64,
    pub p_shift: Option<f64>,
}

/// Fully validated run configuration. Every scenario starts from pinned
/// defaults, then applies overrides from the config file.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub grid: GridConfig,
    pub operator: OperatorKind,
    pub kernel: KernelKind,
    pub weight_epsilon: f64,
    /// Constant coupling strength for kinetic-only scenarios, realized as the
    /// uniform background `Ψ ≡ sqrt(N)` (the normalized kernel then gives
    /// `N_c ≡ N` exactly, for all time).
    pub coupling_constant: f64,
    pub dt: f64,
    pub t_end: f64,
    pub record_every: usize,
    pub preset: String,
    pub amplitude: f64,
    pub psi_amplitude: f64,
    pub m_f0: f64,
    pub seed: u64,
    pub energy_delta: f64,
    pub small_data_delta: f64,
    /// Rate-fit window; `None` means "discard the initial transient fraction".
    pub fit_window: Option<(f64, f64)>,
    pub fit_transient_fraction: f64,
    pub n_samples: usize,
    pub n_iter: usize,
    pub tolerances: BTreeMap<String, f64>,
    pub dump_fields: DumpFields,
}

impl RunConfig {
    /// Pinned per-scenario defaults (grids, horizons, amplitudes, windows).
    pub fn defaults(scenario: Scenario) -> Self {
        let base = Self {
            scenario,
            grid: GridConfig {
                dim_r: 1,
                dim_p: 1,
                n_r: 32,
                n_p: 48,
                length_r: 20.0,
                p_max: 14.0,
                p_shift: None,
            },
            operator: OperatorKind::L1,
            kernel: KernelKind::Exponential,
            weight_epsilon: 0.5,
            coupling_constant: 1.0,
            dt: 0.01,
            t_end: 10.0,
            record_every: 5,
            preset: "equilibrium-plus-mode".into(),
            amplitude: 0.05,
            psi_amplitude: 0.005,
            m_f0: 1.0,
            seed: 42,
            energy_delta: 0.05,
            small_data_delta: 0.01,
            fit_window: None,
            fit_transient_fraction: 0.1,
            n_samples: 1000,
            n_iter: 6,
            tolerances: BTreeMap::new(),
            dump_fields: DumpFields::None,
        };
        match scenario {
            Scenario::L1Relaxation => Self {
                grid: GridConfig {
                    n_r: 16,
                    n_p: 64,
                    p_max: 16.0,
                    ..base.grid
                },
                t_end: 2.0,
                record_every: 10,
                preset: "homogeneous-bump".into(),
                ..base
            },
            Scenario::L2Decay => Self {
                grid: GridConfig {
                    dim_p: 3,
                    n_r: 2,
                    // p_max keeps the equilibrium below 1e-10 of its peak at
                    // the box faces while staying within 24 modes per axis.
                    n_p: 24,
                    p_max: 26.0,
                    ..base.grid
                },
                operator: OperatorKind::L2,
                weight_epsilon: 0.0,
                dt: 0.05,
                t_end: 24.0,
                record_every: 1,
                preset: "projected-bump".into(),
                amplitude: 1e-3,
                fit_window: Some((12.0, 24.0)),
                ..base
            },
            Scenario::PoincareCheck => Self {
                grid: GridConfig {
                    dim_p: 3,
                    n_r: 2,
                    n_p: 24,
                    p_max: 12.0,
                    ..base.grid
                },
                weight_epsilon: 0.0,
                n_samples: 1000,
                ..base
            },
            Scenario::NormalFormResidual => Self {
                grid: GridConfig {
                    n_r: 16,
                    n_p: 4,
                    length_r: std::f64::consts::TAU,
                    p_max: 1.0,
                    ..base.grid
                },
                ..base
            },
            Scenario::NlsEquilibrium => Self {
                preset: "equilibrium".into(),
                amplitude: 0.0,
                psi_amplitude: 0.0,
                record_every: 10,
                ..base
            },
            Scenario::CoupledSmalldata => Self {
                operator: OperatorKind::L2,
                preset: "momentum-bump".into(),
                amplitude: 5e-3,
                t_end: 25.0,
                fit_window: Some((2.0, 22.0)),
                ..base
            },
            Scenario::Picard => Self {
                grid: GridConfig {
                    length_r: 4.0 * std::f64::consts::PI,
                    ..base.grid
                },
                operator: OperatorKind::L2,
                preset: "equilibrium-plus-mode".into(),
                amplitude: 0.8,
                psi_amplitude: 0.02,
                // Density 10 per unit volume keeps five contraction steps
                // resolvable above roundoff (see the README notes).
                m_f0: 10.0 * 4.0 * std::f64::consts::PI,
                dt: 0.005,
                t_end: 1.0,
                n_iter: 6,
                ..base
            },
        }
    }

    /// Tolerance override with a pinned default.
    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }
}

struct Walker<'a> {
    errors: Vec<String>,
    table: &'a toml::Table,
}

impl<'a> Walker<'a> {
    fn section(&mut self, name: &str) -> Option<&'a toml::Table> {
        match self.table.get(name) {
            None => None,
            Some(toml::Value::Table(t)) => Some(t),
            Some(_) => {
                self.errors.push(format!("[{name}] must be a section"));
                None
            }
        }
    }
}

fn take_f64(errors: &mut Vec<String>, section: &str, key: &str, v: &toml::Value) -> Option<f64> {
    match v {
        toml::Value::Float(x) => Some(*x),
        toml::Value::Integer(x) => Some(*x as f64),
        _ => {
            errors.push(format!("{section}.{key}: expected a number"));
            None
        }
    }
}

fn take_usize(errors: &mut Vec<String>, section: &str, key: &str, v: &toml::Value) -> Option<usize> {
    match v {
        toml::Value::Integer(x) if *x >= 0 => Some(*x as usize),
        _ => {
            errors.push(format!("{section}.{key}: expected a nonnegative integer"));
            None
        }
    }
}

fn take_str<'v>(
    errors: &mut Vec<String>,
    section: &str,
    key: &str,
    v: &'v toml::Value,
) -> Option<&'v str> {
    match v {
        toml::Value::String(s) => Some(s.as_str()),
        _ => {
            errors.push(format!("{section}.{key}: expected a string"));
            None
        }
    }
}

/// Parse and validate a configuration, collecting every error.
pub fn parse_config(text: &str) -> Result<RunConfig, CoreError> {
    let table: toml::Table = text
        .parse()
        .map_err(|e| CoreError::Config(vec![format!("syntax: {e}")]))?;

    let mut errors = Vec::new();

    let scenario = match table.get("scenario") {
        Some(toml::Value::String(s)) => match Scenario::parse(s) {
            Some(sc) => sc,
            None => {
                return Err(CoreError::Config(vec![format!(
                    "unknown scenario '{s}' (expected one of l1_relaxation, l2_decay, \
                     poincare_check, normal_form_residual, nls_equilibrium, \
                     coupled_smalldata, picard)"
                )]))
            }
        },
        Some(_) => return Err(CoreError::Config(vec!["scenario: expected a string".into()])),
        None => return Err(CoreError::Config(vec!["missing required key 'scenario'".into()])),
    };

    let mut cfg = RunConfig::defaults(scenario);
    let known_sections = [
        "grid",
        "kinetic",
        "coupling",
        "time",
        "initial",
        "diagnostics",
        "tolerances",
        "output",
    ];
    for key in table.keys() {
        if key != "scenario" && !known_sections.contains(&key.as_str()) {
            errors.push(format!("unknown section or key '{key}'"));
        }
    }

    let mut walker = Walker {
        errors: Vec::new(),
        table: &table,
    };

    if let Some(grid) = walker.section("grid") {
        for (k, v) in grid {
            match k.as_str() {
                "dim_r" => cfg.grid.dim_r = take_usize(&mut errors, "grid", k, v).unwrap_or(cfg.grid.dim_r),
                "dim_p" => cfg.grid.dim_p = take_usize(&mut errors, "grid", k, v).unwrap_or(cfg.grid.dim_p),
                "n_r" => cfg.grid.n_r = take_usize(&mut errors, "grid", k, v).unwrap_or(cfg.grid.n_r),
                "n_p" => cfg.grid.n_p = take_usize(&mut errors, "grid", k, v).unwrap_or(cfg.grid.n_p),
                "length_r" => {
                    cfg.grid.length_r = take_f64(&mut errors, "grid", k, v).unwrap_or(cfg.grid.length_r)
                }
                "p_max" => cfg.grid.p_max = take_f64(&mut errors, "grid", k, v).unwrap_or(cfg.grid.p_max),
                "p_shift" => cfg.grid.p_shift = take_f64(&mut errors, "grid", k, v),
                _ => errors.push(format!("grid.{k}: unknown key")),
            }
        }
    }

    if let Some(kin) = walker.section("kinetic") {
        for (k, v) in kin {
            match k.as_str() {
                "operator" => {
                    if let Some(s) = take_str(&mut errors, "kinetic", k, v) {
                        match s {
                            "l1" => cfg.operator = OperatorKind::L1,
                            "l2" => cfg.operator = OperatorKind::L2,
                            other => errors.push(format!(
                                "kinetic.operator: unknown operator '{other}' (expected l1 or l2)"
                            )),
                        }
                    }
                }
                "epsilon" => {
                    cfg.weight_epsilon = take_f64(&mut errors, "kinetic", k, v).unwrap_or(cfg.weight_epsilon)
                }
                "coupling_constant" => {
                    cfg.coupling_constant =
                        take_f64(&mut errors, "kinetic", k, v).unwrap_or(cfg.coupling_constant)
                }
                _ => errors.push(format!("kinetic.{k}: unknown key")),
            }
        }
    }

    if let Some(cpl) = walker.section("coupling") {
        for (k, v) in cpl {
            match k.as_str() {
                "kernel" => {
                    if let Some(s) = take_str(&mut errors, "coupling", k, v) {
                        match s {
                            "exponential" => cfg.kernel = KernelKind::Exponential,
                            "gaussian" => cfg.kernel = KernelKind::Gaussian,
                            other => errors.push(format!(
                                "coupling.kernel: unknown kernel '{other}' (expected exponential or gaussian)"
                            )),
                        }
                    }
                }
                _ => errors.push(format!("coupling.{k}: unknown key")),
            }
        }
    }

    if let Some(time) = walker.section("time") {
        for (k, v) in time {
            match k.as_str() {
                "dt" => cfg.dt = take_f64(&mut errors, "time", k, v).unwrap_or(cfg.dt),
                "t_end" => cfg.t_end = take_f64(&mut errors, "time", k, v).unwrap_or(cfg.t_end),
                "record_every" => {
                    cfg.record_every = take_usize(&mut errors, "time", k, v).unwrap_or(cfg.record_every)
                }
                _ => errors.push(format!("time.{k}: unknown key")),
            }
        }
    }

    if let Some(init) = walker.section("initial") {
        for (k, v) in init {
            match k.as_str() {
                "preset" => {
                    if let Some(s) = take_str(&mut errors, "initial", k, v) {
                        cfg.preset = s.to_string();
                    }
                }
                "amplitude" => cfg.amplitude = take_f64(&mut errors, "initial", k, v).unwrap_or(cfg.amplitude),
                "psi_amplitude" => {
                    cfg.psi_amplitude = take_f64(&mut errors, "initial", k, v).unwrap_or(cfg.psi_amplitude)
                }
                "m_f0" => cfg.m_f0 = take_f64(&mut errors, "initial", k, v).unwrap_or(cfg.m_f0),
                "seed" => {
                    cfg.seed = match v {
                        toml::Value::Integer(x) if *x >= 0 => *x as u64,
                        _ => {
                            errors.push("initial.seed: expected a nonnegative integer".into());
                            cfg.seed
                        }
                    }
                }
                _ => errors.push(format!("initial.{k}: unknown key")),
            }
        }
    }

    if let Some(diag) = walker.section("diagnostics") {
        for (k, v) in diag {
            match k.as_str() {
                "energy_delta" => {
                    cfg.energy_delta = take_f64(&mut errors, "diagnostics", k, v).unwrap_or(cfg.energy_delta)
                }
                "small_data_delta" => {
                    cfg.small_data_delta =
                        take_f64(&mut errors, "diagnostics", k, v).unwrap_or(cfg.small_data_delta)
                }
                "fit_window_lo" => {
                    let lo = take_f64(&mut errors, "diagnostics", k, v).unwrap_or(0.0);
                    let hi = cfg.fit_window.map(|w| w.1).unwrap_or(f64::INFINITY);
                    cfg.fit_window = Some((lo, hi));
                }
                "fit_window_hi" => {
                    let hi = take_f64(&mut errors, "diagnostics", k, v).unwrap_or(f64::INFINITY);
                    let lo = cfg.fit_window.map(|w| w.0).unwrap_or(0.0);
                    cfg.fit_window = Some((lo, hi));
                }
                "fit_transient_fraction" => {
                    cfg.fit_transient_fraction =
                        take_f64(&mut errors, "diagnostics", k, v).unwrap_or(cfg.fit_transient_fraction)
                }
                "n_samples" => {
                    cfg.n_samples = take_usize(&mut errors, "diagnostics", k, v).unwrap_or(cfg.n_samples)
                }
                "n_iter" => cfg.n_iter = take_usize(&mut errors, "diagnostics", k, v).unwrap_or(cfg.n_iter),
                _ => errors.push(format!("diagnostics.{k}: unknown key")),
            }
        }
    }

    if let Some(tols) = walker.section("tolerances") {
        for (k, v) in tols {
            if let Some(x) = take_f64(&mut errors, "tolerances", k, v) {
                cfg.tolerances.insert(k.clone(), x);
            }
        }
    }

    if let Some(out) = walker.section("output") {
        for (k, v) in out {
            match k.as_str() {
                "dump_fields" => {
                    if let Some(s) = take_str(&mut errors, "output", k, v) {
                        match DumpFields::parse(s) {
                            Some(d) => cfg.dump_fields = d,
                            None => errors.push(format!(
                                "output.dump_fields: '{s}' is not none, final, or every-<k>"
                            )),
                        }
                    }
                }
                _ => errors.push(format!("output.{k}: unknown key")),
            }
        }
    }

    errors.extend(walker.errors);
    validate(&cfg, &mut errors);
    if errors.is_empty() {
        Ok(cfg)
    } else {
        Err(CoreError::Config(errors))
    }
}

fn validate(cfg: &RunConfig, errors: &mut Vec<String>) {
    let g = &cfg.grid;
    if !(1..=3).contains(&g.dim_r) || !(1..=3).contains(&g.dim_p) {
        errors.push(format!(
            "grid: dimensions must lie in 1..=3 (dim_r = {}, dim_p = {})",
            g.dim_r, g.dim_p
        ));
    }
    if g.dim_p < g.dim_r {
        errors.push("grid: dim_p must be at least dim_r".into());
    }
    if g.n_r < 2 || g.n_r % 2 != 0 {
        errors.push(format!("grid.n_r: must be a positive even integer, got {}", g.n_r));
    }
    if g.n_p < 2 || g.n_p % 2 != 0 {
        errors.push(format!("grid.n_p: must be a positive even integer, got {}", g.n_p));
    }
    if !(g.length_r > 0.0) {
        errors.push(format!("grid.length_r: must be positive, got {}", g.length_r));
    }
    if !(g.p_max > 0.0) {
        errors.push(format!("grid.p_max: must be positive, got {}", g.p_max));
    }
    if !(cfg.dt > 0.0) {
        errors.push(format!("time.dt: must be positive, got {}", cfg.dt));
    }
    if !(cfg.t_end > 0.0) {
        errors.push(format!("time.t_end: must be positive, got {}", cfg.t_end));
    }
    if cfg.record_every == 0 {
        errors.push("time.record_every: must be at least 1".into());
    }
    if cfg.weight_epsilon < 0.0 {
        errors.push(format!(
            "kinetic.epsilon: must be nonnegative, got {}",
            cfg.weight_epsilon
        ));
    }
    if cfg.weight_epsilon == 0.0 && cfg.grid.dim_p < 2 {
        errors.push("kinetic.epsilon: a positive regularization is required for dim_p = 1".into());
    }
    if !(cfg.coupling_constant > 0.0) {
        errors.push(format!(
            "kinetic.coupling_constant: must be positive, got {}",
            cfg.coupling_constant
        ));
    }
    if !(cfg.m_f0 >= 0.0) {
        errors.push(format!("initial.m_f0: must be nonnegative, got {}", cfg.m_f0));
    }
    if !cfg.amplitude.is_finite() || !cfg.psi_amplitude.is_finite() {
        errors.push("initial amplitudes must be finite".into());
    }
    if cfg.n_samples == 0 {
        errors.push("diagnostics.n_samples: must be at least 1".into());
    }
    if cfg.n_iter < 2 {
        errors.push("diagnostics.n_iter: picard needs at least 2 iterations".into());
    }
    if !(cfg.energy_delta >= 0.0) {
        errors.push(format!(
            "diagnostics.energy_delta: must be nonnegative, got {}",
            cfg.energy_delta
        ));
    }
    if let Some((lo, hi)) = cfg.fit_window {
        if !(lo >= 0.0 && hi > lo) {
            errors.push(format!("diagnostics: fit window [{lo}, {hi}] is not increasing"));
        }
    }
    let known_presets = [
        "equilibrium",
        "equilibrium-plus-mode",
        "homogeneous-bump",
        "projected-bump",
        "momentum-bump",
        "random-smooth",
    ];
    if !known_presets.contains(&cfg.preset.as_str()) {
        errors.push(format!(
            "initial.preset: unknown preset '{}' (expected one of {})",
            cfg.preset,
            known_presets.join(", ")
        ));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_fills_defaults() {
        let cfg = parse_config("scenario = \"l1_relaxation\"\n").unwrap();
        assert_eq!(cfg.scenario, Scenario::L1Relaxation);
        assert_eq!(cfg.grid.n_p, 64);
        assert_eq!(cfg.t_end, 2.0);
        assert_eq!(cfg.preset, "homogeneous-bump");
    }

    #[test]
    fn negative_dt_is_rejected_by_name() {
        let err = parse_config("scenario = \"l1_relaxation\"\n[time]\ndt = -0.1\n").unwrap_err();
        let text = err.to_string();
        assert!(text.contains("time.dt"), "message was: {text}");
    }

    #[test]
    fn unknown_keys_are_rejected_by_name() {
        let err = parse_config("scenario = \"l1_relaxation\"\nfoo = 1\n[grid]\nbar = 2\n")
            .unwrap_err();
        let text = err.to_string();
        assert!(text.contains("'foo'"));
        assert!(text.contains("grid.bar"));
    }

    #[test]
    fn all_errors_are_collected() {
        let err = parse_config(
            "scenario = \"coupled_smalldata\"\n[time]\ndt = -1\nt_end = 0\n[grid]\nn_r = 7\n",
        )
        .unwrap_err();
        match err {
            CoreError::Config(list) => {
                assert!(list.len() >= 3, "expected three errors, got {list:?}");
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn unknown_scenario_is_rejected() {
        assert!(parse_config("scenario = \"warp_drive\"\n").is_err());
        assert!(parse_config("").is_err());
    }

    #[test]
    fn overrides_apply() {
        let cfg = parse_config(
            "scenario = \"coupled_smalldata\"\n\
             [kinetic]\noperator = \"l1\"\n\
             [time]\ndt = 0.02\nt_end = 4.0\n\
             [initial]\nseed = 7\namplitude = 0.01\n\
             [tolerances]\nmass_drift = 1e-9\n",
        )
        .unwrap();
        assert_eq!(cfg.operator, OperatorKind::L1);
        assert_eq!(cfg.dt, 0.02);
        assert_eq!(cfg.seed, 7);
        assert_eq!(cfg.tolerance("mass_drift", 1e-10), 1e-9);
        assert_eq!(cfg.tolerance("other", 0.5), 0.5);
    }
}
