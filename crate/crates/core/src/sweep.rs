//! Sweeps over states and confinement radii, with CSV and plot-data output.

use crate::error::{Error, Result};
use crate::free_hydrogen::{table1, StateLabel};
use crate::measures::{measure_state, PipelineOptions, StateMeasures};
use crate::momentum::{free_table, MomentumOptions};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

pub const CSV_HEADER: &str =
    "n,m,r0,alpha_opt,energy,v_pos,f_pos,cr_pos,v_mom,f_mom,cr_mom,pos_norm_residual,mom_norm_residual";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Log,
    Linear,
}

impl Spacing {
    fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "log" => Ok(Spacing::Log),
            "linear" => Ok(Spacing::Linear),
            other => Err(Error::Usage(format!("spacing must be log or linear, got {other:?}"))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Spacing::Log => "log",
            Spacing::Linear => "linear",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub states: Vec<(u32, u32)>,
    pub r0_min: f64,
    pub r0_max: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub quadrature_order: usize,
    pub p_tail_tolerance: f64,
    /// Output directory.
    pub output_path: PathBuf,
    pub emit_plot_data: bool,
    /// Worker threads; `None` lets the pool decide.
    pub jobs: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            states: vec![(1, 0), (2, 0), (2, 1), (3, 2)],
            r0_min: 0.5,
            r0_max: 40.0,
            points: 40,
            spacing: Spacing::Log,
            quadrature_order: 200,
            p_tail_tolerance: 1e-6,
            output_path: PathBuf::from("sweep_out"),
            emit_plot_data: true,
            jobs: None,
        }
    }
}

/// Parses `"1,0;2,0"`.
pub fn parse_states(s: &str) -> Result<Vec<(u32, u32)>> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let bad = || Error::Usage(format!("state must be written n,m; got {t:?}"));
            let (n, m) = t.split_once(',').ok_or_else(bad)?;
            Ok((n.trim().parse().map_err(|_| bad())?, m.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

fn format_states(states: &[(u32, u32)]) -> String {
    states.iter().map(|(n, m)| format!("{n},{m}")).collect::<Vec<_>>().join(";")
}

impl SweepConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let num = |v: &str| -> Result<f64> {
            v.trim().parse().map_err(|_| Error::Usage(format!("{key}: not a number: {v:?}")))
        };
        let int = |v: &str| -> Result<usize> {
            v.trim().parse().map_err(|_| Error::Usage(format!("{key}: not an integer: {v:?}")))
        };
        match key.trim() {
            "states" => self.states = parse_states(value)?,
            "r0_min" => self.r0_min = num(value)?,
            "r0_max" => self.r0_max = num(value)?,
            "points" => self.points = int(value)?,
            "spacing" => self.spacing = Spacing::parse(value)?,
            "quadrature_order" => self.quadrature_order = int(value)?,
            "p_tail_tolerance" => self.p_tail_tolerance = num(value)?,
            "output_path" => self.output_path = PathBuf::from(value.trim()),
            "emit_plot_data" => {
                self.emit_plot_data = match value.trim() {
                    "true" => true,
                    "false" => false,
                    v => return Err(Error::Usage(format!("emit_plot_data must be true or false, got {v:?}"))),
                }
            }
            "jobs" => self.jobs = Some(int(value)?),
            other => return Err(Error::Usage(format!("unknown configuration key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a `key = value` file on top of the current settings.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("line {}: expected key = value", i + 1)))?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut cfg = SweepConfig::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let usage = |m: String| Err(Error::Usage(m));
        if self.states.is_empty() {
            return usage("no states requested".into());
        }
        for &(n, m) in &self.states {
            if n == 0 || m >= n {
                return usage(format!("invalid state ({n},{m}): need 0 <= m <= n-1"));
            }
        }
        if !(self.r0_min >= crate::confined::MIN_RADIUS && self.r0_min < self.r0_max && self.r0_max.is_finite()) {
            return usage(format!(
                "need {} <= r0_min < r0_max, got [{}, {}]",
                crate::confined::MIN_RADIUS,
                self.r0_min,
                self.r0_max
            ));
        }
        if self.points < 2 {
            return usage(format!("points must be >= 2, got {}", self.points));
        }
        if !(self.p_tail_tolerance > 0.0 && self.p_tail_tolerance <= 1e-3) {
            return usage(format!("p_tail_tolerance must lie in (0, 1e-3], got {}", self.p_tail_tolerance));
        }
        if self.quadrature_order < 8 {
            return usage(format!("quadrature_order must be >= 8, got {}", self.quadrature_order));
        }
        if self.jobs == Some(0) {
            return usage("jobs must be >= 1".into());
        }
        Ok(())
    }

    pub fn radii(&self) -> Vec<f64> {
        let k = self.points - 1;
        (0..=k)
            .map(|i| {
                if i == k {
                    return self.r0_max;
                }
                let t = i as f64 / k as f64;
                match self.spacing {
                    Spacing::Log => self.r0_min * (self.r0_max / self.r0_min).powf(t),
                    Spacing::Linear => self.r0_min + (self.r0_max - self.r0_min) * t,
                }
            })
            .collect()
    }

    pub fn pipeline_options(&self) -> PipelineOptions {
        let mut o = PipelineOptions::default();
        o.solver.quadrature_order = self.quadrature_order;
        o.momentum = MomentumOptions { tail_tolerance: self.p_tail_tolerance, ..MomentumOptions::default() };
        o
    }

    /// The resolved configuration in the file format.
    pub fn echo(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "states = {}", format_states(&self.states));
        let _ = writeln!(s, "r0_min = {:e}", self.r0_min);
        let _ = writeln!(s, "r0_max = {:e}", self.r0_max);
        let _ = writeln!(s, "points = {}", self.points);
        let _ = writeln!(s, "spacing = {}", self.spacing.name());
        let _ = writeln!(s, "quadrature_order = {}", self.quadrature_order);
        let _ = writeln!(s, "p_tail_tolerance = {:e}", self.p_tail_tolerance);
        let _ = writeln!(s, "output_path = {}", self.output_path.display());
        let _ = writeln!(s, "emit_plot_data = {}", self.emit_plot_data);
        if let Some(j) = self.jobs {
            let _ = writeln!(s, "jobs = {j}");
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: u32,
    pub m: u32,
    pub r0: f64,
    pub alpha_opt: f64,
    pub energy: f64,
    pub v_pos: f64,
    pub f_pos: f64,
    pub cr_pos: f64,
    pub v_mom: f64,
    pub f_mom: f64,
    pub cr_mom: f64,
    pub pos_norm_residual: f64,
    pub mom_norm_residual: f64,
}

impl SweepRow {
    fn failed(n: u32, m: u32, r0: f64) -> Self {
        let nan = f64::NAN;
        SweepRow {
            n,
            m,
            r0,
            alpha_opt: nan,
            energy: nan,
            v_pos: nan,
            f_pos: nan,
            cr_pos: nan,
            v_mom: nan,
            f_mom: nan,
            cr_mom: nan,
            pos_norm_residual: nan,
            mom_norm_residual: nan,
        }
    }

    pub fn is_failed(&self) -> bool {
        self.energy.is_nan()
    }

    fn values(&self) -> [f64; 11] {
        [
            self.r0,
            self.alpha_opt,
            self.energy,
            self.v_pos,
            self.f_pos,
            self.cr_pos,
            self.v_mom,
            self.f_mom,
            self.cr_mom,
            self.pos_norm_residual,
            self.mom_norm_residual,
        ]
    }
}

impl From<&StateMeasures> for SweepRow {
    fn from(s: &StateMeasures) -> Self {
        let c = &s.confined;
        SweepRow {
            n: c.state.n(),
            m: c.state.m(),
            r0: c.r0,
            alpha_opt: c.alpha,
            energy: c.energy,
            v_pos: s.position.variance,
            f_pos: s.position.fisher,
            cr_pos: s.position.cramer_rao,
            v_mom: s.momentum.variance,
            f_mom: s.momentum.fisher,
            cr_mom: s.momentum.cramer_rao,
            pos_norm_residual: s.position.norm_residual,
            mom_norm_residual: s.momentum.norm_residual,
        }
    }
}

/// One (state, radius) point of a sweep with its full result.
#[derive(Debug)]
pub struct SweepPoint {
    pub state: StateLabel,
    pub r0: f64,
    pub result: Result<StateMeasures>,
}

impl SweepPoint {
    pub fn row(&self) -> SweepRow {
        match &self.result {
            Ok(m) => SweepRow::from(m),
            Err(_) => SweepRow::failed(self.state.n(), self.state.m(), self.r0),
        }
    }
}

/// Every point of the sweep, sorted by `(n, m, r₀)`; failures are kept.
pub fn sweep_points(cfg: &SweepConfig) -> Result<Vec<SweepPoint>> {
    cfg.validate()?;
    let mut states: Vec<StateLabel> =
        cfg.states.iter().map(|&(n, m)| StateLabel::new(n, m)).collect::<Result<_>>()?;
    states.sort_by_key(|s| (s.n(), s.m()));
    states.dedup();
    let radii = cfg.radii();
    let tasks: Vec<(StateLabel, f64)> =
        states.iter().flat_map(|&s| radii.iter().map(move |&r| (s, r))).collect();
    let opts = cfg.pipeline_options();
    let work = || {
        tasks
            .par_iter()
            .map(|&(state, r0)| SweepPoint { state, r0, result: measure_state(&state, r0, &opts) })
            .collect::<Vec<_>>()
    };
    match cfg.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Usage(format!("cannot start {j} workers: {e}")))
            .map(|pool| pool.install(work)),
        None => Ok(work()),
    }
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    Ok(sweep_points(cfg)?.iter().map(SweepPoint::row).collect())
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn csv_string(rows: &[SweepRow]) -> String {
    let mut s = String::with_capacity(200 * (rows.len() + 1));
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let _ = write!(s, "{},{}", r.n, r.m);
        for v in r.values() {
            let _ = write!(s, ",{v:e}");
        }
        s.push('\n');
    }
    s
}

pub fn emit_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Usage("refusing to write a CSV without rows".into()));
    }
    write(path, &csv_string(rows))
}

pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::Usage("unexpected CSV header".into()));
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            let bad = || Error::Usage(format!("CSV line {}: malformed row", i + 2));
            let f: Vec<&str> = l.split(',').collect();
            if f.len() != 13 {
                return Err(bad());
            }
            let x = |k: usize| f[k].parse::<f64>().map_err(|_| bad());
            Ok(SweepRow {
                n: f[0].parse().map_err(|_| bad())?,
                m: f[1].parse().map_err(|_| bad())?,
                r0: x(2)?,
                alpha_opt: x(3)?,
                energy: x(4)?,
                v_pos: x(5)?,
                f_pos: x(6)?,
                cr_pos: x(7)?,
                v_mom: x(8)?,
                f_mom: x(9)?,
                cr_mom: x(10)?,
                pos_norm_residual: x(11)?,
                mom_norm_residual: x(12)?,
            })
        })
        .collect()
}

/// The free-atom table with four-decimal entries, plus the quadrature
/// verdict on the 2s momentum Fisher information.
pub fn table1_string() -> Result<String> {
    let mut s = String::from("state,v_pos,v_mom,f_pos,f_mom,cr_pos,cr_mom\n");
    for (state, m) in table1() {
        let _ = writeln!(s, "{},{}", state.label(), m.display_row().join(","));
    }
    let two_s = StateLabel::new(2, 0)?;
    let f = crate::measures::momentum_measures(&free_table(&two_s, &MomentumOptions::default())?)?.fisher;
    let _ = writeln!(
        s,
        "# f_mom(2s): closed form 58.5; momentum-density quadrature gives {f:.6}; the printed 58.2000 is not reproduced"
    );
    Ok(s)
}

pub fn emit_table1(path: &Path) -> Result<()> {
    write(path, &table1_string()?)
}

/// Plot-file stems and the row quantity each one carries.
pub const PLOT_QUANTITIES: [(&str, fn(&SweepRow) -> f64); 6] = [
    ("fig1_E", |r| r.energy),
    ("fig2_Vrho", |r| r.v_pos),
    ("fig3_Vgamma", |r| r.v_mom),
    ("fig4_CRrho", |r| r.cr_pos),
    ("fig5_CRgamma", |r| r.cr_mom),
    ("fisher_product", |r| r.f_pos * r.f_mom),
];

/// Writes one `r0 value` file per (state, quantity); returns the paths.
pub fn emit_plot_data(rows: &[SweepRow], dir: &Path) -> Result<Vec<PathBuf>> {
    if rows.is_empty() {
        return Err(Error::Usage("no rows to plot".into()));
    }
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut states: Vec<(u32, u32)> = rows.iter().map(|r| (r.n, r.m)).collect();
    states.dedup();
    let mut out = Vec::new();
    for (n, m) in states {
        for (stem, q) in PLOT_QUANTITIES {
            let mut s = String::new();
            for r in rows.iter().filter(|r| r.n == n && r.m == m && !r.is_failed()) {
                let _ = writeln!(s, "{:e} {:e}", r.r0, q(r));
            }
            let path = dir.join(format!("{stem}_n{n}m{m}.dat"));
            write(&path, &s)?;
            out.push(path);
        }
    }
    Ok(out)
}

/// Summary of a completed sweep run.
#[derive(Debug)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub failures: Vec<(StateLabel, f64, String)>,
    pub files: Vec<PathBuf>,
}

/// Runs the sweep and writes `sweep.csv`, `sweep_errors.csv`,
/// `sweep_config.txt` and, if enabled, the plot files into the output path.
pub fn execute(cfg: &SweepConfig) -> Result<SweepOutcome> {
    cfg.validate()?;
    let dir = &cfg.output_path;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let config_path = dir.join("sweep_config.txt");
    write(&config_path, &cfg.echo())?;
    let points = sweep_points(cfg)?;
    let rows: Vec<SweepRow> = points.iter().map(SweepPoint::row).collect();
    let failures: Vec<(StateLabel, f64, String)> = points
        .iter()
        .filter_map(|p| p.result.as_ref().err().map(|e| (p.state, p.r0, e.to_string())))
        .collect();
    let csv = dir.join("sweep.csv");
    emit_csv(&rows, &csv)?;
    let mut err = String::from("n,m,r0,error\n");
    for (s, r0, e) in &failures {
        let _ = writeln!(err, "{},{},{r0:e},\"{}\"", s.n(), s.m(), e.replace('"', "'"));
    }
    let err_path = dir.join("sweep_errors.csv");
    write(&err_path, &err)?;
    let mut files = vec![config_path, csv, err_path];
    if cfg.emit_plot_data {
        files.extend(emit_plot_data(&rows, dir)?);
    }
    Ok(SweepOutcome { rows, failures, files })
}
