//! Resolution of user settings into a concrete run, execution with
//! snapshot output, and parameter sweeps.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use crate::cases::{build_case, CaseOptions, NoiseSpec, Quantity, TestCase};
use crate::config::Overrides;
use crate::error::{ConfigError, Error};
use crate::euler::GasModel;
use crate::grid::{AbortDiagnostic, Field2D, Order, RunConfig, Solver};
use crate::metrics;
use crate::output::{snapshot_stem, write_field, write_slice_scatter, RunManifest};
use crate::roe::{BetaSource, ViscosityMode, ViscosityModel};

/// A fully resolved run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRequest {
    pub case: TestCase,
    pub config: RunConfig,
    /// Files are written only when set.
    pub outdir: Option<PathBuf>,
}

impl RunRequest {
    /// Builds a run from layered settings; anything unset takes the case or
    /// library default.
    pub fn resolve(o: &Overrides) -> Result<Self, ConfigError> {
        let name = o
            .case
            .as_deref()
            .ok_or_else(|| ConfigError::invalid("case", "no case given"))?;
        let gas = match o.gamma {
            Some(g) => GasModel::new(g).map_err(|e| ConfigError::invalid("gamma", e.to_string()))?,
            None => GasModel::default(),
        };
        let mut case = build_case(name, &CaseOptions { gas, nx: o.nx, ny: o.ny })?;
        if case.nx == 0 || case.ny == 0 {
            return Err(ConfigError::invalid("nx/ny", "grid must have at least one cell"));
        }
        if let Some(a) = o.noise {
            if !(a >= 0.0 && a.is_finite()) {
                return Err(ConfigError::invalid("noise", format!("{a} is negative")));
            }
            case.noise = NoiseSpec { amplitude: a, ..NoiseSpec::primitive(a) };
        }

        let order = o.order.or(case.required_order).unwrap_or(Order::First);
        if let Some(required) = case.required_order {
            if order != required {
                return Err(ConfigError::invalid(
                    "order",
                    format!("case `{name}` requires order {}", required.as_u8()),
                ));
            }
        }

        let mut model = ViscosityModel::new(o.mode.unwrap_or(ViscosityMode::Standard));
        model.phi = o.phi.unwrap_or(model.phi);
        model.delta_frac = o.delta_frac.unwrap_or(model.delta_frac);
        model.scaling = o.indicator_scaling.unwrap_or_default();
        model.beta = match (o.indicator, o.beta_fixed) {
            (Some(true), Some(_)) => {
                return Err(ConfigError::invalid("beta_fixed", "a fixed β requires the indicator off"))
            }
            (Some(false), None) => {
                return Err(ConfigError::invalid("indicator", "indicator off requires beta_fixed"))
            }
            (_, Some(b)) => BetaSource::Fixed(b),
            (_, None) => BetaSource::Indicator,
        };

        let mut config = RunConfig {
            cfl: o.cfl.unwrap_or(RunConfig::DEFAULT_CFL),
            t_end: o.t_end.unwrap_or(case.t_end),
            order,
            model,
            gas,
            seed: o.seed.unwrap_or(RunConfig::DEFAULT_SEED),
            output_times: o.output_times.clone().unwrap_or_default(),
            max_steps: o.max_steps.unwrap_or(RunConfig::default().max_steps),
        };
        config.output_times.sort_by(f64::total_cmp);
        config.output_times.dedup();
        config.validate()?;
        case.t_end = config.t_end;
        Ok(RunRequest {
            case,
            config,
            outdir: o.outdir.clone(),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Completed,
    Aborted(AbortDiagnostic),
}

impl Outcome {
    pub fn is_completed(&self) -> bool {
        matches!(self, Outcome::Completed)
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub case: String,
    pub mode: ViscosityMode,
    pub order: Order,
    pub seed: u64,
    pub outcome: Outcome,
    pub time: f64,
    pub steps: u64,
    /// State at the final time, or the partially updated state at the abort.
    pub field: Field2D,
    /// Density oscillation over the case's plateau window, when it has one.
    pub oscillation: Option<f64>,
    pub max_transverse: f64,
    pub wall: Duration,
    pub files: Vec<PathBuf>,
}

impl RunReport {
    /// Single-line human summary.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} mode={} order={} seed={} ",
            self.case,
            self.mode,
            self.order.as_u8(),
            self.seed
        );
        match &self.outcome {
            Outcome::Completed => write!(s, "completed t={} steps={}", self.time, self.steps),
            Outcome::Aborted(d) => write!(s, "ABORTED {d}"),
        }
        .unwrap();
        if let Some(osc) = self.oscillation {
            write!(s, " oscillation={osc:.3e}").unwrap();
        }
        write!(s, " max|v|={:.3e} wall={:.2}s", self.max_transverse, self.wall.as_secs_f64()).unwrap();
        s
    }
}

fn manifest(req: &RunRequest) -> RunManifest {
    let (case, c) = (&req.case, &req.config);
    let mut m = RunManifest::default();
    m.push("case", &case.name);
    m.push("mode", c.model.mode);
    m.push("order", c.order.as_u8());
    m.push("phi", c.model.phi);
    m.push("delta_frac", c.model.delta_frac);
    match c.model.beta {
        BetaSource::Indicator => {
            m.push("indicator", "on");
            m.push("indicator_scaling", c.model.scaling.name());
        }
        BetaSource::Fixed(b) => {
            m.push("indicator", "off");
            m.push("beta_fixed", b);
        }
    }
    m.push("cfl", c.cfl);
    m.push("t_end", c.t_end);
    let times: Vec<String> = c.output_times.iter().map(f64::to_string).collect();
    m.push("output_times", times.join(" "));
    m.push("seed", c.seed);
    m.push("nx", case.nx);
    m.push("ny", case.ny);
    m.push("gamma", c.gas.gamma);
    m.push("noise", case.noise.amplitude);
    m.push("max_steps", c.max_steps);
    m
}

fn write_snapshot(req: &RunRequest, dir: &Path, field: &Field2D, t: f64) -> Result<Vec<PathBuf>, Error> {
    let c = &req.config;
    let stem = snapshot_stem(&req.case.name, c.model.mode.name(), c.order.as_u8(), t);
    let dat = dir.join(format!("{stem}.dat"));
    write_slice_scatter(field, req.case.quantity, &req.case.name, t, &c.gas, &dat)?;
    let vtk = dir.join(format!("{stem}.vtk"));
    let title = format!("{} t={t}", req.case.name);
    write_field(field, &Quantity::ALL, &title, &c.gas, &vtk)?;
    Ok(vec![dat, vtk])
}

/// Runs `req` to its final time. Physical failure is reported as
/// [`Outcome::Aborted`]; `Err` is reserved for configuration and I/O.
pub fn execute(req: &RunRequest) -> Result<RunReport, Error> {
    let started = Instant::now();
    let c = &req.config;
    let field = req.case.initial_field(c.seed, &c.gas)?;
    let mut solver = Solver::new(field, req.case.boundaries.clone(), c.clone())?;
    if let Some(dir) = &req.outdir {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }

    let mut targets = c.output_times.clone();
    if targets.last() != Some(&c.t_end) {
        targets.push(c.t_end);
    }
    let mut files = Vec::new();
    let mut outcome = Outcome::Completed;
    for t in targets {
        if let Err(d) = solver.advance_to(t) {
            log::info!("{} aborted: {d}", req.case.name);
            outcome = Outcome::Aborted(d);
            break;
        }
        if let Some(dir) = &req.outdir {
            files.extend(write_snapshot(req, dir, &solver.field, t)?);
        }
    }

    let mut m = manifest(req);
    match &outcome {
        Outcome::Completed => m.push("outcome", "completed"),
        Outcome::Aborted(d) => {
            m.push("outcome", "aborted");
            m.push("abort_time", d.time);
            m.push("abort_step", d.step);
            m.push("abort_stage", d.stage);
            m.push("abort_cell", format!("{} {}", d.cell.0, d.cell.1));
            m.push("abort_cause", &d.cause);
        }
    }
    m.push("final_time", solver.time);
    m.push("steps", solver.steps);
    if let Some(dir) = &req.outdir {
        let names: Vec<String> = files
            .iter()
            .filter_map(|p| p.file_name().map(|n| n.to_string_lossy().into_owned()))
            .collect();
        m.push("files", names.join(" "));
        let path = dir.join(format!(
            "{}_{}_ord{}.manifest",
            req.case.name,
            c.model.mode,
            c.order.as_u8()
        ));
        m.write(&path)?;
        files.push(path);
    }

    let completed = outcome.is_completed();
    Ok(RunReport {
        case: req.case.name.clone(),
        mode: c.model.mode,
        order: c.order,
        seed: c.seed,
        oscillation: req
            .case
            .plateau
            .filter(|_| completed)
            .and_then(|w| metrics::plateau_oscillation(&solver.field, &w)),
        max_transverse: metrics::max_transverse_velocity(&solver.field),
        outcome,
        time: solver.time,
        steps: solver.steps,
        field: solver.field,
        wall: started.elapsed(),
        files,
    })
}

/// Runs every mode/order combination with the shared settings in `base`.
/// Aborts are recorded in the reports; only configuration and I/O errors
/// stop the sweep.
pub fn sweep(base: &Overrides, modes: &[ViscosityMode], orders: &[Order]) -> Result<Vec<RunReport>, Error> {
    if modes.is_empty() {
        return Err(ConfigError::invalid("modes", "empty mode list").into());
    }
    if orders.is_empty() {
        return Err(ConfigError::invalid("orders", "empty order list").into());
    }
    let requests = orders
        .iter()
        .flat_map(|&order| {
            modes.iter().map(move |&mode| {
                RunRequest::resolve(&Overrides {
                    mode: Some(mode),
                    order: Some(order),
                    ..base.clone()
                })
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    requests.iter().map(execute).collect()
}

/// Comparison table of a sweep, one row per run.
pub fn sweep_table(reports: &[RunReport]) -> String {
    let mut out = String::new();
    if let Some(first) = reports.first() {
        writeln!(out, "case {}  seed {}", first.case, first.seed).unwrap();
    }
    writeln!(
        out,
        "{:<12} {:>5} {:<10} {:>10} {:>12} {:>12} {:>9}",
        "mode", "order", "outcome", "time", "oscillation", "max|v|", "wall[s]"
    )
    .unwrap();
    for r in reports {
        let outcome = if r.outcome.is_completed() { "completed" } else { "aborted" };
        let osc = r.oscillation.map_or("-".to_string(), |o| format!("{o:.4e}"));
        writeln!(
            out,
            "{:<12} {:>5} {:<10} {:>10.4} {:>12} {:>12.4e} {:>9.2}",
            r.mode.name(),
            r.order.as_u8(),
            outcome,
            r.time,
            osc,
            r.max_transverse,
            r.wall.as_secs_f64()
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    fn resolve(text: &str) -> Result<RunRequest, ConfigError> {
        RunRequest::resolve(&parse_config(text).unwrap())
    }

    #[test]
    fn defaults_follow_the_case() {
        let r = resolve("case = kelvin_helmholtz").unwrap();
        assert_eq!(r.config.order, Order::Second);
        assert_eq!(r.config.t_end, 4.0);
        assert_eq!(r.config.seed, RunConfig::DEFAULT_SEED);
        assert!(resolve("case = kelvin_helmholtz, order = 1").is_err());
        assert!(resolve("mode = standard").is_err());
    }

    #[test]
    fn beta_switches() {
        let r = resolve("case = shear_1d\nmode = blend_geo, beta_fixed = 0.5, indicator = off").unwrap();
        assert_eq!(r.config.model.beta, BetaSource::Fixed(0.5));
        assert!(resolve("case = shear_1d, indicator = off").is_err());
        assert!(resolve("case = shear_1d, indicator = on, beta_fixed = 0.2").is_err());
        assert!(resolve("case = shear_1d, beta_fixed = 1.5").is_err());
    }

    #[test]
    fn overrides_reach_the_case() {
        let r = resolve("case = quirk, nx = 80, ny = 4, noise = 0, t_end = 2").unwrap();
        assert_eq!((r.case.nx, r.case.ny, r.case.t_end), (80, 4, 2.0));
        assert_eq!(r.case.noise.amplitude, 0.0);
    }

    #[test]
    fn short_run_reports_and_writes() {
        let dir = tempfile::tempdir().unwrap();
        let text = format!(
            "case = shear_1d, t_end = 0.1, output_times = 0.05, outdir = {}",
            dir.path().display()
        );
        let report = execute(&resolve(&text).unwrap()).unwrap();
        assert!(report.outcome.is_completed());
        assert_eq!(report.time, 0.1);
        assert_eq!(report.files.len(), 5);
        let manifest = fs::read_to_string(dir.path().join("shear_1d_standard_ord1.manifest")).unwrap();
        assert!(manifest.contains("outcome = completed\n"));
        assert!(dir.path().join("shear_1d_standard_ord1_t0.05.dat").exists());
        assert!(report.summary().starts_with("shear_1d mode=standard order=1"));
    }

    #[test]
    fn sweep_rows() {
        let base = parse_config("case = colliding_1d, t_end = 0.5, nx = 30").unwrap();
        let reports = sweep(&base, &ViscosityMode::ALL, &[Order::First]).unwrap();
        assert_eq!(reports.len(), 5);
        let table = sweep_table(&reports);
        assert_eq!(table.lines().count(), 7);
        assert!(table.contains("seed 20210614"));
        assert!(sweep(&base, &[], &[Order::First]).is_err());
    }
}
