//! Mode dispatch.

use std::path::{Path, PathBuf};

use drivenq_core::analysis::{
    bloch_siegert_shift, default_search, diabatic_population, evaluate, least_squares_shift,
    linear_grid, pair_resonance, polarizations, rwa_averaged_population, rwa_curve,
    stationary_populations, two_qubit_reduction_check, AveragingSpec, CubicSpline,
    ReductionSettings, RwaParams, ScanPoint, ScanSettings,
};
use drivenq_core::dissipation::{rate_set, SingleQubitDecay};
use drivenq_core::model::QubitParams;
use drivenq_core::propagator::{
    evolve_from, initial_state_2, initial_state_4, InitialLevel, IntegratorConfig, System,
};
use drivenq_core::units;
use rayon::prelude::*;

use crate::config::{Mode, RunConfig, SystemSpec};
use crate::output::{sidecar_path, write_atomic, Cell, Table};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Numerical(#[from] drivenq_core::Error),
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// Table plus scalar results of one run.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub table: Table,
    /// `(name, value)` pairs printed to stdout and recorded in the sidecar.
    pub summary: Vec<(&'static str, String)>,
    /// Grid points that produced no value.
    pub failed_points: usize,
}

impl Report {
    fn new(table: Table) -> Self {
        Report {
            table,
            summary: Vec::new(),
            failed_points: 0,
        }
    }

    fn note(&mut self, name: &'static str, value: impl ToString) {
        self.summary.push((name, value.to_string()));
    }
}

/// Options that come from the environment rather than the config file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Per-step invariant assertions, on top of `[integrator] strict`.
    pub seed_check: bool,
}

impl RunOptions {
    pub fn from_env() -> Self {
        RunOptions {
            seed_check: std::env::var("DRIVENQ_SEED_CHECK").is_ok_and(|v| v == "1"),
        }
    }
}

pub fn run(config: &RunConfig, options: RunOptions) -> Result<Report, RunError> {
    let strict = config.integrator.strict || options.seed_check;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = config.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder.build()?;
    pool.install(|| match config.mode {
        Mode::Dynamics => dynamics(config, strict),
        Mode::Scan => scan(config, strict),
        Mode::RwaScan => rwa_scan(config),
        Mode::BsShift => bs_shift(config, strict),
        Mode::ReduceCheck => reduce_check(config),
    })
}

fn single(config: &RunConfig) -> (QubitParams, SingleQubitDecay) {
    match config.system {
        SystemSpec::Single { qubit, gamma } => (
            qubit,
            SingleQubitDecay::from_energy(gamma).expect("validated decay rate"),
        ),
        SystemSpec::Double { .. } => unreachable!("mode validated against the system"),
    }
}

/// Grid in GHz and the matching angular frequencies.
fn grid(config: &RunConfig) -> Result<(Vec<f64>, Vec<f64>), RunError> {
    let g = config.grid.expect("validated grid");
    let freqs = linear_grid(g.start, g.stop, g.points)?;
    let omegas = freqs.iter().map(|&f| units::angular(f)).collect();
    Ok((freqs, omegas))
}

fn scan_settings(config: &RunConfig, strict: bool) -> ScanSettings {
    ScanSettings {
        steps_per_period: config.integrator.steps_per_period,
        averaging: AveragingSpec {
            settle_decay_times: config.analysis.settle_decay_times,
            window_periods: config.analysis.window_periods,
        },
        strict,
    }
}

/// Numerical scan, points distributed over the current pool in grid order.
fn numeric_points(
    config: &RunConfig,
    omegas: &[f64],
    strict: bool,
) -> Result<Vec<ScanPoint>, RunError> {
    let (qubit, decay) = single(config);
    let system = System::single(qubit, config.drive.spec(omegas[0])?, decay);
    let settings = scan_settings(config, strict);
    Ok(omegas
        .par_iter()
        .map(|&w| evaluate(&system, w, &settings))
        .collect())
}

fn error_text(p: &ScanPoint) -> String {
    p.error
        .as_ref()
        .map(ToString::to_string)
        .unwrap_or_default()
}

fn scan(config: &RunConfig, strict: bool) -> Result<Report, RunError> {
    let (freqs, omegas) = grid(config)?;
    let points = numeric_points(config, &omegas, strict)?;
    let mut report = Report::new(Table::new(vec![
        "omega_over_2pi_GHz",
        "p_down",
        "p_up",
        "ok",
        "error",
    ]));
    for (f, p) in freqs.iter().zip(&points) {
        report.table.push(vec![
            (*f).into(),
            p.p_down.into(),
            p.p_up.into(),
            p.ok().into(),
            error_text(p).into(),
        ]);
    }
    report.failed_points = points.iter().filter(|p| !p.ok()).count();
    if let Some((f, p)) = freqs
        .iter()
        .zip(&points)
        .filter(|(_, p)| p.ok())
        .max_by(|a, b| a.1.p_down.total_cmp(&b.1.p_down))
    {
        report.note("peak_omega_over_2pi_GHz", f);
        report.note("peak_p_down", p.p_down);
    }
    report.note("failed_points", report.failed_points);
    Ok(report)
}

fn rwa_scan(config: &RunConfig) -> Result<Report, RunError> {
    let (qubit, decay) = single(config);
    let k = config
        .analysis
        .photon_number
        .expect("validated photon number");
    let (freqs, omegas) = grid(config)?;
    let mut report = Report::new(Table::new(vec![
        "omega_over_2pi_GHz",
        "p_down",
        "p_up",
        "validity_ratio",
        "warning",
    ]));
    let mut warnings = 0;
    for (f, &w) in freqs.iter().zip(&omegas) {
        let drive = config.drive.spec(w)?;
        let rp = RwaParams::new(&qubit, &drive, k, &decay)?;
        let avg = rwa_averaged_population(&qubit, &drive, &rp);
        warnings += usize::from(avg.warning);
        report.table.push(vec![
            (*f).into(),
            avg.p_down.into(),
            avg.p_up.into(),
            avg.validity_ratio.into(),
            avg.warning.into(),
        ]);
    }
    report.note("photon_number", k);
    report.note("points_beyond_validity_bound", warnings);
    Ok(report)
}

fn bs_shift(config: &RunConfig, strict: bool) -> Result<Report, RunError> {
    let (qubit, decay) = single(config);
    let k = config
        .analysis
        .photon_number
        .expect("validated photon number");
    let (freqs, omegas) = grid(config)?;
    let points = numeric_points(config, &omegas, strict)?;
    let numeric: Vec<f64> = points.iter().map(|p| p.p_down).collect();
    let analytic = rwa_curve(&qubit, &config.drive.spec(omegas[0])?, k, &decay, &omegas)?;

    let failed = points.iter().filter(|p| !p.ok()).count();
    let fit = if failed == 0 {
        let (zeta, n_max) = default_search(&analytic, &numeric, &freqs)?;
        let zeta = config.analysis.zeta.unwrap_or(zeta);
        let n_max = config.analysis.n_max.unwrap_or(n_max);
        Some(least_squares_shift(
            &analytic, &numeric, &freqs, zeta, n_max,
        )?)
    } else {
        None
    };
    let centre = config
        .drive
        .frequency
        .unwrap_or(qubit.splitting() / k as f64);
    let bs = bloch_siegert_shift(
        &qubit,
        &config.drive.spec(units::angular(centre))?,
        k,
        config.analysis.l_max,
    )?;

    let spline = CubicSpline::new(&freqs, &analytic)?;
    let shift = fit.as_ref().map_or(f64::NAN, |f| f.shift);
    let mut report = Report::new(Table::new(vec![
        "omega_over_2pi_GHz",
        "p_down_numeric",
        "p_down_rwa",
        "p_down_rwa_shifted",
        "ok",
        "error",
    ]));
    for ((f, p), a) in freqs.iter().zip(&points).zip(&analytic) {
        let shifted = spline.eval(f - shift).unwrap_or(f64::NAN);
        report.table.push(vec![
            (*f).into(),
            p.p_down.into(),
            (*a).into(),
            shifted.into(),
            p.ok().into(),
            error_text(p).into(),
        ]);
    }
    report.failed_points = failed;
    match &fit {
        Some(fit) => {
            report.note("least_squares_shift_GHz", fit.shift);
            report.note("shift_index", fit.n);
            report.note("zeta_GHz", fit.zeta);
            report.note("n_max", fit.n_max);
        }
        None => report.note(
            "least_squares_shift_GHz",
            "not computed: scan points failed",
        ),
    }
    report.note("bloch_siegert_shift_GHz", bs.shift);
    report.note("bloch_siegert_truncation_GHz", bs.truncation_estimate);
    report.note("ratio", shift / bs.shift);
    report.note("failed_points", failed);
    Ok(report)
}

fn two_qubit(
    config: &RunConfig,
) -> Result<
    (
        drivenq_core::model::TwoQubitParams,
        drivenq_core::dissipation::RateSet,
        f64,
    ),
    RunError,
> {
    match config.system {
        SystemSpec::Double {
            qubits,
            bath,
            dephasing,
        } => {
            let rates = rate_set(&bath, &qubits, dephasing.into());
            let omega = match (config.drive.frequency, config.analysis.level_pair) {
                (Some(f), _) => units::angular(f),
                (None, Some((a, b))) => pair_resonance(&qubits, a, b)?,
                (None, None) => unreachable!("validated drive frequency"),
            };
            Ok((qubits, rates, omega))
        }
        SystemSpec::Single { .. } => unreachable!("mode validated against the system"),
    }
}

fn dynamics(config: &RunConfig, strict: bool) -> Result<Report, RunError> {
    let integrator = IntegratorConfig {
        steps_per_period: config.integrator.steps_per_period,
        sample_stride: config.integrator.sample_stride,
        t_end: config.integrator.t_end.expect("validated t_end"),
        record_from: 0.0,
        strict,
    };
    let mut report;
    match config.system {
        SystemSpec::Single { .. } => {
            let (qubit, decay) = single(config);
            let omega = units::angular(config.drive.frequency.expect("validated drive frequency"));
            let drive = config.drive.spec(omega)?;
            let system = System::single(qubit, drive, decay);
            let initial = initial_state_2(&qubit, &drive)?;
            let frame = system.frame_at(0.0)?;
            report = Report::new(Table::new(vec![
                "t_ns", "p_minus", "p_plus", "p_down", "p_up",
            ]));
            let table = &mut report.table;
            let meta = evolve_from(&system, &initial, &frame, &integrator, |s| {
                let p = s.state.populations();
                let (down, up) = diabatic_population(&s.state, &s.frame);
                table.push(vec![
                    s.t().into(),
                    p[0].into(),
                    p[1].into(),
                    down.into(),
                    up.into(),
                ]);
            })?;
            report.note("steps", meta.steps);
            report.note("positivity_flags", meta.positivity_flags);
        }
        SystemSpec::Double { .. } => {
            let (qubits, rates, omega) = two_qubit(config)?;
            let drive = config.drive.spec(omega)?;
            let system = System::double(qubits, drive, rates);
            let initial = initial_state_4(
                &qubits,
                &drive,
                InitialLevel::Eigen(config.analysis.eigenstate_index),
            )?;
            let frame = system.frame_at(0.0)?;
            let stationary = rates.stationary_frame;
            report = Report::new(Table::new(vec![
                "t_ns", "p1", "p2", "p3", "p4", "sz1", "sz2",
            ]));
            let table = &mut report.table;
            let meta = evolve_from(&system, &initial, &frame, &integrator, |s| {
                let p = stationary_populations(&s.state.rho, &s.frame, &stationary);
                let sz = polarizations(&s.state.rho, &s.frame);
                let mut row: Vec<Cell> = vec![s.t().into()];
                row.extend(p.iter().map(|&v| Cell::from(v)));
                row.extend(sz.iter().map(|&v| Cell::from(v)));
                table.push(row);
            })?;
            report.note("drive_omega_over_2pi_GHz", units::linear(omega));
            report.note("steps", meta.steps);
            report.note("positivity_flags", meta.positivity_flags);
        }
    }
    Ok(report)
}

fn reduce_check(config: &RunConfig) -> Result<Report, RunError> {
    let (qubits, rates, omega) = two_qubit(config)?;
    let pair = config.analysis.level_pair.expect("validated level pair");
    let settings = ReductionSettings {
        t_end: config.integrator.t_end.expect("validated t_end"),
        steps_per_period: config.integrator.steps_per_period,
        sample_stride: config.integrator.sample_stride,
        threshold: config.analysis.leakage_threshold,
        polarization_threshold: config.analysis.polarization_threshold,
        initial: None,
    };
    let r =
        two_qubit_reduction_check(&qubits, &config.drive.spec(omega)?, &rates, pair, &settings)?;
    let mut report = Report::new(Table::new(vec![
        "level_a",
        "level_b",
        "omega_over_2pi_GHz",
        "max_leakage",
        "max_leakage_at_ns",
        "swing_sz1",
        "swing_sz2",
        "reducible",
        "single_qubit_like",
    ]));
    report.table.push(vec![
        r.pair.0.into(),
        r.pair.1.into(),
        units::linear(r.omega).into(),
        r.max_leakage.into(),
        r.max_leakage_at.into(),
        r.polarization_swing[0].into(),
        r.polarization_swing[1].into(),
        r.reducible.into(),
        r.single_qubit_like().into(),
    ]);
    report.note("max_leakage", r.max_leakage);
    report.note("reducible", r.reducible);
    report.note("single_qubit_like", r.single_qubit_like());
    Ok(report)
}

/// Sidecar text: version and results as comments, then the effective
/// configuration, which parses back to `config`.
pub fn sidecar_text(config: &RunConfig, report: &Report) -> String {
    let mut s = format!(
        "# drivenq {}\n# mode: {}\n# rows: {}\n",
        env!("CARGO_PKG_VERSION"),
        config.mode,
        report.table.rows.len()
    );
    for (k, v) in &report.summary {
        s.push_str(&format!("# {k}: {v}\n"));
    }
    s.push('\n');
    s.push_str(&config.to_config_text());
    s
}

/// Writes the CSV and its sidecar; `config.output` must already hold `out`.
pub fn write_outputs(config: &RunConfig, report: &Report, out: &Path) -> Result<(), RunError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| RunError::Io { path, source }
    };
    let csv = report.table.to_csv().map_err(io(out))?;
    write_atomic(out, &csv).map_err(io(out))?;
    let meta = sidecar_path(out);
    write_atomic(&meta, sidecar_text(config, report).as_bytes()).map_err(io(&meta))?;
    Ok(())
}
