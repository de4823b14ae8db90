//! Run configuration: a sectioned `key = value` file (TOML syntax).
//!
//! Frequencies are linear, ω/2π in GHz; energies are E/h in GHz; times in ns.
//!
//! ```text
//! [qubit]
//! delta = 0.2
//! eps0 = 62.0
//!
//! [drive]
//! amplitude = 70.0
//!
//! [decay]
//! gamma = 5e-3
//!
//! [grid]
//! omega_start = 7.72
//! omega_stop = 7.78
//! points = 61
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use drivenq_core::dissipation::{BathParams, DephasingSum, SingleQubitDecay};
use drivenq_core::model::{DriveSpec, QubitParams, ResonatorFilter, TwoQubitParams};
use drivenq_core::propagator::IntegratorConfig;
use drivenq_core::units;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Dynamics,
    Scan,
    RwaScan,
    BsShift,
    ReduceCheck,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Dynamics => "dynamics",
            Mode::Scan => "scan",
            Mode::RwaScan => "rwa-scan",
            Mode::BsShift => "bs-shift",
            Mode::ReduceCheck => "reduce-check",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [
            Mode::Dynamics,
            Mode::Scan,
            Mode::RwaScan,
            Mode::BsShift,
            Mode::ReduceCheck,
        ]
        .into_iter()
        .find(|m| m.name() == s)
        .ok_or_else(|| format!("unknown mode `{s}`"))
    }
}

/// Problem with a configuration file, located by key and line when possible.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{}{}: {message}", line.map(|l| format!("line {l}: ")).unwrap_or_default(), key.as_deref().map(|k| format!("`{k}`")).unwrap_or_else(|| "config".into()))]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: Option<String>,
    pub message: String,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    run: Option<RawRun>,
    qubit: Option<RawQubit>,
    qubit1: Option<RawQubit>,
    qubit2: Option<RawQubit>,
    coupling: Option<RawCoupling>,
    drive: Option<RawDrive>,
    filter: Option<RawFilter>,
    decay: Option<RawDecay>,
    bath: Option<RawBath>,
    grid: Option<RawGrid>,
    integrator: Option<RawIntegrator>,
    analysis: Option<RawAnalysis>,
    output: Option<RawOutput>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawRun {
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    workers: Option<usize>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawQubit {
    delta: Option<f64>,
    eps0: Option<f64>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawCoupling {
    j: Option<f64>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawDrive {
    amplitude: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    frequency: Option<f64>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawFilter {
    resonator_frequency: Option<f64>,
    fwhm: Option<f64>,
    apply_phase: Option<bool>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawDecay {
    gamma: Option<f64>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawBath {
    alpha: Option<f64>,
    kbt: Option<f64>,
    dephasing: Option<Dephasing>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawGrid {
    omega_start: Option<f64>,
    omega_stop: Option<f64>,
    points: Option<usize>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawIntegrator {
    steps_per_period: Option<u32>,
    sample_stride: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    t_end: Option<f64>,
    strict: Option<bool>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawAnalysis {
    #[serde(skip_serializing_if = "Option::is_none")]
    photon_number: Option<u32>,
    settle_decay_times: Option<f64>,
    window_periods: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    l_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    zeta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_max: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    level_pair: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eigenstate_index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    leakage_threshold: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    polarization_threshold: Option<f64>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    path: Option<PathBuf>,
}

/// Which sum over intermediate levels enters the two-qubit dephasing rates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dephasing {
    AllLevels,
    ExcludeEndpoints,
}

impl From<Dephasing> for DephasingSum {
    fn from(d: Dephasing) -> Self {
        match d {
            Dephasing::AllLevels => DephasingSum::AllLevels,
            Dephasing::ExcludeEndpoints => DephasingSum::ExcludeEndpoints,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SystemSpec {
    Single {
        qubit: QubitParams,
        /// Γ as an energy (GHz·h).
        gamma: f64,
    },
    Double {
        qubits: TwoQubitParams,
        bath: BathParams,
        dephasing: Dephasing,
    },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FilterSpec {
    /// ω0/2π (GHz).
    pub resonator_frequency: f64,
    /// κ/2π (GHz).
    pub fwhm: f64,
    pub apply_phase: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DriveConfig {
    /// A (GHz·h).
    pub amplitude: f64,
    /// ω/2π (GHz). Scans take it from the grid; two-qubit runs without it
    /// drive the `level_pair` resonance.
    pub frequency: Option<f64>,
    pub filter: Option<FilterSpec>,
}

impl DriveConfig {
    /// Drive at angular frequency `omega` with the filter attached.
    pub fn spec(&self, omega: f64) -> drivenq_core::Result<DriveSpec> {
        let d = DriveSpec::new(self.amplitude, omega)?;
        Ok(match self.filter {
            Some(f) => {
                let mut filter = ResonatorFilter::new(
                    units::angular(f.resonator_frequency),
                    units::angular(f.fwhm),
                )?;
                filter.apply_phase = f.apply_phase;
                d.with_filter(filter)
            }
            None => d,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    /// ω/2π at both ends (GHz).
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorSpec {
    pub steps_per_period: u32,
    pub sample_stride: u32,
    pub t_end: Option<f64>,
    pub strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisSpec {
    pub photon_number: Option<u32>,
    pub settle_decay_times: f64,
    pub window_periods: u32,
    pub l_max: u32,
    pub zeta: Option<f64>,
    pub n_max: Option<u32>,
    pub level_pair: Option<(usize, usize)>,
    pub eigenstate_index: usize,
    pub leakage_threshold: f64,
    pub polarization_threshold: f64,
}

/// Validated run description with every default filled in.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub workers: Option<usize>,
    pub system: SystemSpec,
    pub drive: DriveConfig,
    pub grid: Option<GridSpec>,
    pub integrator: IntegratorSpec,
    pub analysis: AnalysisSpec,
    pub output: Option<PathBuf>,
}

pub const DEFAULT_REDUCTION_T_END: f64 = 100.0;

/// Tracks where keys sit in the source so validation errors can name a line.
struct Locator<'a> {
    text: &'a str,
}

impl Locator<'_> {
    fn line_of(&self, section: &str, key: &str) -> Option<usize> {
        let mut current = "";
        for (i, raw) in self.text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                current = name.trim();
                if key.is_empty() && current == section {
                    return Some(i + 1);
                }
                continue;
            }
            if current == section {
                if let Some((k, _)) = line.split_once('=') {
                    if k.trim() == key {
                        return Some(i + 1);
                    }
                }
            }
        }
        None
    }

    fn error(&self, section: &str, key: &str, message: impl Into<String>) -> ConfigError {
        ConfigError {
            line: self.line_of(section, key),
            key: Some(if key.is_empty() {
                format!("[{section}]")
            } else {
                format!("{section}.{key}")
            }),
            message: message.into(),
        }
    }

    fn missing(&self, section: &str, key: &str, mode: Mode) -> ConfigError {
        ConfigError {
            line: self.line_of(section, ""),
            key: Some(format!("{section}.{key}")),
            message: format!("required for mode `{mode}`"),
        }
    }
}

fn line_of_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())]
        .bytes()
        .filter(|&b| b == b'\n')
        .count()
        + 1
}

/// Extracts the backquoted field name from a serde message, if any.
fn quoted_key(message: &str) -> Option<String> {
    let start = message.find('`')? + 1;
    let end = start + message[start..].find('`')?;
    Some(message[start..end].to_string())
}

/// Parses and validates a configuration. `mode` (from the command line)
/// takes precedence over `[run] mode`; the two must agree when both are given.
pub fn parse_config(text: &str, mode: Option<Mode>) -> Result<RunConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| {
        let message = e.message().trim().to_string();
        ConfigError {
            line: e.span().map(|s| line_of_offset(text, s.start)),
            key: quoted_key(&message),
            message,
        }
    })?;
    let loc = Locator { text };
    validate(raw, mode, &loc)
}

fn positive(loc: &Locator, section: &str, key: &str, v: f64) -> Result<f64, ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(loc.error(section, key, format!("must be positive, got {v}")))
    }
}

fn non_negative(loc: &Locator, section: &str, key: &str, v: f64) -> Result<f64, ConfigError> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(loc.error(section, key, format!("must be non-negative, got {v}")))
    }
}

fn finite(loc: &Locator, section: &str, key: &str, v: f64) -> Result<f64, ConfigError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(loc.error(section, key, "must be finite"))
    }
}

fn qubit(
    loc: &Locator,
    section: &str,
    q: &RawQubit,
    mode: Mode,
) -> Result<QubitParams, ConfigError> {
    let delta = q.delta.ok_or_else(|| loc.missing(section, "delta", mode))?;
    let eps0 = q.eps0.ok_or_else(|| loc.missing(section, "eps0", mode))?;
    let delta = non_negative(loc, section, "delta", delta)?;
    let eps0 = finite(loc, section, "eps0", eps0)?;
    if delta == 0.0 && eps0 == 0.0 {
        return Err(loc.error(section, "eps0", "Δ and ε0 cannot both vanish"));
    }
    QubitParams::new(delta, eps0).map_err(|e| loc.error(section, "delta", e.to_string()))
}

fn validate(
    raw: RawConfig,
    cli_mode: Option<Mode>,
    loc: &Locator,
) -> Result<RunConfig, ConfigError> {
    let run = raw.run.unwrap_or_default();
    let mode = match (cli_mode, run.mode) {
        (Some(a), Some(b)) if a != b => {
            return Err(loc.error(
                "run",
                "mode",
                format!("config says `{b}` but `{a}` was requested"),
            ))
        }
        (Some(m), _) | (None, Some(m)) => m,
        (None, None) => {
            return Err(ConfigError {
                line: None,
                key: Some("run.mode".into()),
                message: "no mode given on the command line or in the config".into(),
            })
        }
    };
    if let Some(w) = run.workers {
        if w == 0 {
            return Err(loc.error("run", "workers", "must be at least 1"));
        }
    }

    let single = raw.qubit.is_some();
    let double = raw.qubit1.is_some() || raw.qubit2.is_some();
    let system = match (single, double) {
        (true, true) => {
            return Err(loc.error(
                "qubit",
                "",
                "give either [qubit] or [qubit1]/[qubit2], not both",
            ))
        }
        (false, false) => {
            return Err(ConfigError {
                line: None,
                key: Some("[qubit]".into()),
                message: format!("mode `{mode}` needs a [qubit] or [qubit1]/[qubit2] section"),
            })
        }
        (true, false) => {
            for (present, section) in [
                (raw.coupling.is_some(), "coupling"),
                (raw.bath.is_some(), "bath"),
            ] {
                if present {
                    return Err(loc.error(section, "", "only applies to the two-qubit system"));
                }
            }
            let q = qubit(loc, "qubit", raw.qubit.as_ref().unwrap(), mode)?;
            let gamma = raw
                .decay
                .as_ref()
                .and_then(|d| d.gamma)
                .ok_or_else(|| loc.missing("decay", "gamma", mode))?;
            let gamma = non_negative(loc, "decay", "gamma", gamma)?;
            if mode != Mode::Dynamics && gamma == 0.0 {
                return Err(loc.error(
                    "decay",
                    "gamma",
                    "time averaging needs a positive decay rate",
                ));
            }
            SystemSpec::Single { qubit: q, gamma }
        }
        (false, true) => {
            if raw.decay.is_some() {
                return Err(loc.error(
                    "decay",
                    "",
                    "only applies to the single-qubit system; use [bath]",
                ));
            }
            let q1 = qubit(
                loc,
                "qubit1",
                raw.qubit1
                    .as_ref()
                    .ok_or_else(|| loc.missing("qubit1", "delta", mode))?,
                mode,
            )?;
            let q2 = qubit(
                loc,
                "qubit2",
                raw.qubit2
                    .as_ref()
                    .ok_or_else(|| loc.missing("qubit2", "delta", mode))?,
                mode,
            )?;
            let j = raw
                .coupling
                .as_ref()
                .and_then(|c| c.j)
                .ok_or_else(|| loc.missing("coupling", "j", mode))?;
            let j = finite(loc, "coupling", "j", j)?;
            let bath = raw
                .bath
                .as_ref()
                .ok_or_else(|| loc.missing("bath", "alpha", mode))?;
            let alpha = non_negative(
                loc,
                "bath",
                "alpha",
                bath.alpha
                    .ok_or_else(|| loc.missing("bath", "alpha", mode))?,
            )?;
            let kbt = non_negative(
                loc,
                "bath",
                "kbt",
                bath.kbt.ok_or_else(|| loc.missing("bath", "kbt", mode))?,
            )?;
            SystemSpec::Double {
                qubits: TwoQubitParams::new(q1, q2, j)
                    .map_err(|e| loc.error("coupling", "j", e.to_string()))?,
                bath: BathParams::new(alpha, kbt)
                    .map_err(|e| loc.error("bath", "alpha", e.to_string()))?,
                dephasing: bath.dephasing.unwrap_or(Dephasing::AllLevels),
            }
        }
    };
    let is_single = matches!(system, SystemSpec::Single { .. });
    match mode {
        Mode::Scan | Mode::RwaScan | Mode::BsShift if !is_single => {
            return Err(loc.error(
                "qubit1",
                "",
                format!("mode `{mode}` needs a single qubit ([qubit])"),
            ))
        }
        Mode::ReduceCheck if is_single => {
            return Err(loc.error(
                "qubit",
                "",
                "mode `reduce-check` needs two qubits ([qubit1]/[qubit2])",
            ))
        }
        _ => {}
    }

    let raw_drive = raw.drive.unwrap_or_default();
    let amplitude = non_negative(
        loc,
        "drive",
        "amplitude",
        raw_drive
            .amplitude
            .ok_or_else(|| loc.missing("drive", "amplitude", mode))?,
    )?;
    let frequency = match raw_drive.frequency {
        Some(f) => Some(positive(loc, "drive", "frequency", f)?),
        None => None,
    };
    match mode {
        Mode::ReduceCheck if frequency.is_some() => {
            return Err(loc.error(
                "drive",
                "frequency",
                "reduce-check drives at the level_pair resonance; remove this key",
            ))
        }
        _ => {}
    }
    let filter = match raw.filter {
        Some(f) => Some(FilterSpec {
            resonator_frequency: positive(
                loc,
                "filter",
                "resonator_frequency",
                f.resonator_frequency
                    .ok_or_else(|| loc.missing("filter", "resonator_frequency", mode))?,
            )?,
            fwhm: positive(
                loc,
                "filter",
                "fwhm",
                f.fwhm.ok_or_else(|| loc.missing("filter", "fwhm", mode))?,
            )?,
            apply_phase: f.apply_phase.unwrap_or(true),
        }),
        None => None,
    };

    let needs_grid = matches!(mode, Mode::Scan | Mode::RwaScan | Mode::BsShift);
    let grid = match raw.grid {
        Some(g) => {
            let start = g
                .omega_start
                .ok_or_else(|| loc.missing("grid", "omega_start", mode))?;
            let stop = g
                .omega_stop
                .ok_or_else(|| loc.missing("grid", "omega_stop", mode))?;
            let points = g
                .points
                .ok_or_else(|| loc.missing("grid", "points", mode))?;
            let start = positive(loc, "grid", "omega_start", start)?;
            let stop = positive(loc, "grid", "omega_stop", stop)?;
            if stop <= start {
                return Err(loc.error("grid", "omega_stop", "must exceed omega_start"));
            }
            if points < 2 {
                return Err(loc.error("grid", "points", "need at least 2 grid points"));
            }
            Some(GridSpec {
                start,
                stop,
                points,
            })
        }
        None if needs_grid => return Err(loc.missing("grid", "omega_start", mode)),
        None => None,
    };

    let defaults = IntegratorConfig::default();
    let ri = raw.integrator.unwrap_or_default();
    let steps_per_period = ri.steps_per_period.unwrap_or(defaults.steps_per_period);
    if steps_per_period < IntegratorConfig::MIN_STEPS_PER_PERIOD {
        return Err(loc.error(
            "integrator",
            "steps_per_period",
            format!(
                "must be at least {}",
                IntegratorConfig::MIN_STEPS_PER_PERIOD
            ),
        ));
    }
    let sample_stride = ri.sample_stride.unwrap_or(defaults.sample_stride);
    if sample_stride == 0 {
        return Err(loc.error("integrator", "sample_stride", "must be at least 1"));
    }
    let t_end = match ri.t_end {
        Some(t) => Some(positive(loc, "integrator", "t_end", t)?),
        None if mode == Mode::Dynamics => return Err(loc.missing("integrator", "t_end", mode)),
        None if mode == Mode::ReduceCheck => Some(DEFAULT_REDUCTION_T_END),
        None => None,
    };
    let integrator = IntegratorSpec {
        steps_per_period,
        sample_stride,
        t_end,
        strict: ri.strict.unwrap_or(false),
    };

    let ra = raw.analysis.unwrap_or_default();
    let photon_number = match ra.photon_number {
        Some(0) => return Err(loc.error("analysis", "photon_number", "must be at least 1")),
        Some(k) => Some(k),
        None if matches!(mode, Mode::RwaScan | Mode::BsShift) => {
            return Err(loc.missing("analysis", "photon_number", mode))
        }
        None => None,
    };
    let settle_decay_times = non_negative(
        loc,
        "analysis",
        "settle_decay_times",
        ra.settle_decay_times.unwrap_or(8.0),
    )?;
    let window_periods = ra.window_periods.unwrap_or(500);
    if window_periods == 0 {
        return Err(loc.error("analysis", "window_periods", "must be at least 1"));
    }
    let l_max = ra.l_max.unwrap_or(drivenq_core::analysis::DEFAULT_L_MAX);
    if let Some(k) = photon_number {
        if l_max < k {
            return Err(loc.error("analysis", "l_max", "must be at least photon_number"));
        }
    }
    let zeta = match ra.zeta {
        Some(z) => Some(positive(loc, "analysis", "zeta", z)?),
        None => None,
    };
    if ra.n_max == Some(0) {
        return Err(loc.error("analysis", "n_max", "must be at least 1"));
    }
    let level_pair = match ra.level_pair {
        Some([a, b]) if (1..=4).contains(&a) && (1..=4).contains(&b) && a < b => Some((a, b)),
        Some(_) => {
            return Err(loc.error("analysis", "level_pair", "need [a, b] with 1 ≤ a < b ≤ 4"))
        }
        None if mode == Mode::ReduceCheck => {
            return Err(loc.missing("analysis", "level_pair", mode))
        }
        None => None,
    };
    let eigenstate_index = ra.eigenstate_index.unwrap_or(1);
    if !(1..=4).contains(&eigenstate_index) {
        return Err(loc.error("analysis", "eigenstate_index", "must lie in 1..=4"));
    }
    let analysis = AnalysisSpec {
        photon_number,
        settle_decay_times,
        window_periods,
        l_max,
        zeta,
        n_max: ra.n_max,
        level_pair,
        eigenstate_index,
        leakage_threshold: positive(
            loc,
            "analysis",
            "leakage_threshold",
            ra.leakage_threshold.unwrap_or(0.05),
        )?,
        polarization_threshold: positive(
            loc,
            "analysis",
            "polarization_threshold",
            ra.polarization_threshold.unwrap_or(0.1),
        )?,
    };

    if mode == Mode::Dynamics
        && frequency.is_none()
        && !(analysis.level_pair.is_some() && !is_single)
    {
        return Err(loc.missing("drive", "frequency", mode));
    }

    Ok(RunConfig {
        mode,
        workers: run.workers,
        system,
        drive: DriveConfig {
            amplitude,
            frequency,
            filter,
        },
        grid,
        integrator,
        analysis,
        output: raw.output.and_then(|o| o.path),
    })
}

impl RunConfig {
    pub fn decay(&self) -> Option<SingleQubitDecay> {
        match self.system {
            SystemSpec::Single { gamma, .. } => SingleQubitDecay::from_energy(gamma).ok(),
            SystemSpec::Double { .. } => None,
        }
    }

    /// Effective configuration in the input format; parsing it back yields
    /// the same `RunConfig`.
    pub fn to_config_text(&self) -> String {
        let q = |p: &QubitParams| RawQubit {
            delta: Some(p.delta),
            eps0: Some(p.eps0),
        };
        let mut raw = RawConfig {
            run: Some(RawRun {
                mode: Some(self.mode),
                workers: self.workers,
            }),
            drive: Some(RawDrive {
                amplitude: Some(self.drive.amplitude),
                frequency: self.drive.frequency,
            }),
            filter: self.drive.filter.map(|f| RawFilter {
                resonator_frequency: Some(f.resonator_frequency),
                fwhm: Some(f.fwhm),
                apply_phase: Some(f.apply_phase),
            }),
            grid: self.grid.map(|g| RawGrid {
                omega_start: Some(g.start),
                omega_stop: Some(g.stop),
                points: Some(g.points),
            }),
            integrator: Some(RawIntegrator {
                steps_per_period: Some(self.integrator.steps_per_period),
                sample_stride: Some(self.integrator.sample_stride),
                t_end: self.integrator.t_end,
                strict: Some(self.integrator.strict),
            }),
            analysis: Some(RawAnalysis {
                photon_number: self.analysis.photon_number,
                settle_decay_times: Some(self.analysis.settle_decay_times),
                window_periods: Some(self.analysis.window_periods),
                l_max: Some(self.analysis.l_max),
                zeta: self.analysis.zeta,
                n_max: self.analysis.n_max,
                level_pair: self.analysis.level_pair.map(|(a, b)| [a, b]),
                eigenstate_index: Some(self.analysis.eigenstate_index),
                leakage_threshold: Some(self.analysis.leakage_threshold),
                polarization_threshold: Some(self.analysis.polarization_threshold),
            }),
            output: self.output.clone().map(|p| RawOutput { path: Some(p) }),
            ..RawConfig::default()
        };
        match self.system {
            SystemSpec::Single { qubit, gamma } => {
                raw.qubit = Some(q(&qubit));
                raw.decay = Some(RawDecay { gamma: Some(gamma) });
            }
            SystemSpec::Double {
                qubits,
                bath,
                dephasing,
            } => {
                raw.qubit1 = Some(q(&qubits.q1));
                raw.qubit2 = Some(q(&qubits.q2));
                raw.coupling = Some(RawCoupling { j: Some(qubits.j) });
                raw.bath = Some(RawBath {
                    alpha: Some(bath.alpha),
                    kbt: Some(bath.kbt),
                    dephasing: Some(dephasing),
                });
            }
        }
        toml::to_string(&raw).expect("configuration serializes")
    }
}
