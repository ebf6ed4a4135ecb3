//! The acceptance property suite. Each criterion returns a report instead of
//! panicking so that the CLI and the test harness can print every line.

use std::fmt;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::confined;
use crate::error::Result;
use crate::free_hydrogen::{self as fh, table1, FreeMeasures, FreeRadialState, StateLabel};
use crate::measures::{
    fisher_uncertainty_check, measure_state, momentum_measures, position_measures, PipelineOptions,
    StateMeasures, NORM_TOLERANCE,
};
use crate::momentum::{free_table, MomentumOptions};
use crate::oracle;
use crate::sweep::{sweep_points, SweepConfig, SweepPoint};

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        let limit = self.limit.map(|l| format!(" / {}s", l.as_secs())).unwrap_or_default();
        write!(
            f,
            "[{verdict}] criterion {}: {} ({:.2}s{limit}) {}",
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

fn timed(
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    body: impl FnOnce() -> Result<(bool, String)>,
) -> CriterionReport {
    let t = Instant::now();
    let outcome = body();
    let elapsed = t.elapsed();
    let (mut passed, mut detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    if let Some(l) = limit {
        if elapsed > l {
            passed = false;
            detail.push_str(&format!("; over time limit of {}s", l.as_secs()));
        }
    }
    CriterionReport { id, title, passed, detail, elapsed, limit }
}

fn st(n: u32, m: u32) -> StateLabel {
    StateLabel::new(n, m).expect("valid planar state")
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Four-decimal reference values, columns as in [`FreeMeasures::display_row`].
pub const REFERENCE_TABLE: [(&str, [&str; 6]); 4] = [
    ("1s", ["0.1250", "1.5326", "16.0000", "1.5000", "2.0000", "2.2989"]),
    ("2s", ["2.3750", "0.2902", "1.7777", "58.2000", "4.2220", "16.8896"]),
    ("2p", ["2.2500", "0.0975", "0.5925", "18.0000", "1.3331", "1.7550"]),
    ("3d", ["9.3750", "0.0245", "0.1280", "62.5000", "1.2000", "1.5312"]),
];

pub fn criterion_1() -> CriterionReport {
    timed(1, "free-atom table", Some(Duration::from_secs(1)), || {
        let mut literal = 0;
        let mut misses = Vec::new();
        let rows = table1();
        for ((s, m), (label, reference)) in rows.iter().zip(REFERENCE_TABLE) {
            let shown = m.display_row();
            for (j, (got, want)) in shown.iter().zip(reference).enumerate() {
                // F[γ] and C[γ] of 2s are the documented exception
                if s.label() == "2s" && (j == 3 || j == 5) {
                    continue;
                }
                if s.label() != label || got != want {
                    misses.push(format!("{label}[{j}] {got} != {want}"));
                } else {
                    literal += 1;
                }
            }
        }
        let two_s = &rows[1].1;
        let shown = two_s.display_row();
        let opts = MomentumOptions::default();
        let quad = momentum_measures(&free_table(&st(2, 0), &opts)?)?.fisher;
        let closed_ok = shown[3] == "58.5000" && rel(quad, 58.5) < 1e-5;
        // four-decimal complexity from the artifact's own displayed factors
        let product = (shown[1].parse::<f64>().unwrap() * shown[3].parse::<f64>().unwrap() * 1e4).floor();
        let product_ok = shown[5] == format!("{:.4}", product / 1e4);
        let passed = misses.is_empty() && literal == 22 && closed_ok && product_ok;
        Ok((
            passed,
            format!(
                "{literal}/22 literal entries; F[gamma](2s) = {} (quadrature {quad:.6}, reference 58.2000); \
                 C[gamma](2s) = {} from V*F{}",
                shown[3],
                shown[5],
                if misses.is_empty() { String::new() } else { format!("; mismatches: {}", misses.join(", ")) }
            ),
        ))
    })
}

pub fn criterion_2() -> CriterionReport {
    timed(2, "quadrature oracle on free densities", Some(Duration::from_secs(10)), || {
        let opts = MomentumOptions::default();
        let mut worst = (0.0f64, 0.0f64);
        for s in [st(1, 0), st(2, 1), st(3, 2)] {
            let p = position_measures(&FreeRadialState::new(s)?)?;
            let q = momentum_measures(&free_table(&s, &opts)?)?;
            worst.0 = worst.0.max(rel(p.variance, fh::position_variance(&s))).max(rel(p.fisher, fh::position_fisher(&s)));
            worst.1 = worst.1
                .max(rel(q.variance, fh::momentum_variance(&s)?))
                .max(rel(q.fisher, fh::momentum_fisher(&s)));
        }
        Ok((
            worst.0 <= 1e-6 && worst.1 <= 1e-5,
            format!("1s,2p,3d worst relative error: position {:.2e} (tol 1e-6), momentum {:.2e} (tol 1e-5)", worst.0, worst.1),
        ))
    })
}

pub fn criterion_3() -> CriterionReport {
    timed(3, "free limit of the confined pipeline at r0 = 40", Some(Duration::from_secs(120)), || {
        let opts = PipelineOptions::default();
        let results: Vec<(StateLabel, FreeMeasures, Result<StateMeasures>)> = table1()
            .into_par_iter()
            .map(|(s, free)| (s, free, measure_state(&s, 40.0, &opts)))
            .collect();
        let mut passed = true;
        let mut notes = Vec::new();
        for (s, free, got) in results {
            let got = got?;
            let de = (got.confined.energy - free.energy).abs();
            if de > 1e-3 {
                passed = false;
                notes.push(format!("{s} |dE|={de:.2e}"));
            }
            let pairs = [
                ("V_pos", got.position.variance, free.v_pos),
                ("F_pos", got.position.fisher, free.f_pos),
                ("C_pos", got.position.cramer_rao, free.cr_pos),
                ("V_mom", got.momentum.variance, free.v_mom),
                ("F_mom", got.momentum.fisher, free.f_mom),
                ("C_mom", got.momentum.cramer_rao, free.cr_mom),
            ];
            for (name, a, b) in pairs {
                let e = rel(a, b);
                if e > 0.02 {
                    passed = false;
                    notes.push(format!("{s} {name} {a:.5} vs {b:.5} ({:+.2}%)", 100.0 * (a - b) / b));
                }
            }
        }
        let detail = if notes.is_empty() {
            "energies within 1e-3, all 24 measures within 2%".to_string()
        } else {
            format!("outside tolerance: {}", notes.join("; "))
        };
        Ok((passed, detail))
    })
}

pub fn criterion_4() -> CriterionReport {
    timed(4, "variational upper bound on the default grid", Some(Duration::from_secs(300)), || {
        let cfg = SweepConfig::default();
        let jobs: Vec<(StateLabel, f64)> = cfg
            .states
            .iter()
            .flat_map(|&(n, m)| cfg.radii().into_iter().map(move |r0| (st(n, m), r0)))
            .collect();
        let margins: Vec<Result<(StateLabel, f64, f64)>> = jobs
            .par_iter()
            .map(|&(s, r0)| {
                let e = confined::solve(&s, r0)?.energy;
                let k = s.radial_nodes() as usize;
                let exact = oracle::reference_levels(s.m(), r0, k + 1)?[k];
                Ok((s, r0, e - exact))
            })
            .collect();
        let margins = margins.into_iter().collect::<Result<Vec<_>>>()?;
        let (s, r0, worst) = margins
            .iter()
            .copied()
            .min_by(|a, b| a.2.total_cmp(&b.2))
            .expect("non-empty grid");
        Ok((
            worst >= -1e-9,
            format!("{} points; smallest margin {worst:.3e} ({s} at r0 = {r0:.4})", margins.len()),
        ))
    })
}

/// Sign changes of `f` on `xs`, each located by linear interpolation.
fn crossings(xs: &[f64], f: &[f64]) -> Vec<f64> {
    (1..xs.len())
        .filter(|&i| f[i - 1].signum() != f[i].signum())
        .map(|i| xs[i - 1] + (xs[i] - xs[i - 1]) * f[i - 1] / (f[i - 1] - f[i]))
        .collect()
}

fn grid(lo: f64, step: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| lo + step * i as f64).collect()
}

pub fn criterion_5() -> CriterionReport {
    timed(5, "(2s;3d) energy inversion in [0.8, 1.3]", None, || {
        let radii = grid(0.8, 0.05, 11);
        let diff: Vec<f64> = radii
            .par_iter()
            .map(|&r| Ok(confined::solve(&st(2, 0), r)?.energy - confined::solve(&st(3, 2), r)?.energy))
            .collect::<Result<_>>()?;
        let x = crossings(&radii, &diff);
        Ok((x.len() == 1, format!("{} sign change(s) of E20 - E32 at r0 = {x:.3?}", x.len())))
    })
}

/// Measures for each state at each radius, in state-major order.
fn measure_grid(states: &[StateLabel], radii: &[f64]) -> Result<Vec<Vec<StateMeasures>>> {
    let opts = PipelineOptions::default();
    states
        .iter()
        .map(|s| radii.par_iter().map(|&r| measure_state(s, r, &opts)).collect())
        .collect()
}

pub fn criterion_6() -> CriterionReport {
    timed(6, "Cramer-Rao ordering at r0 = 30", None, || {
        let order = [st(3, 2), st(2, 1), st(1, 0), st(2, 0)];
        let m = measure_grid(&order, &[30.0])?;
        let pos: Vec<f64> = m.iter().map(|v| v[0].position.cramer_rao).collect();
        let mom: Vec<f64> = m.iter().map(|v| v[0].momentum.cramer_rao).collect();
        let ordered = |c: &[f64]| c.windows(2).all(|w| w[0] < w[1]);
        Ok((
            ordered(&pos) && ordered(&mom),
            format!("3d < 2p < 1s < 2s: position {pos:.4?}, momentum {mom:.4?}"),
        ))
    })
}

/// Abscissae of the strict interior local minima (or maxima) of a scan.
fn local_extrema(xs: &[f64], f: &[f64], maximum: bool) -> Vec<f64> {
    let sign = if maximum { -1.0 } else { 1.0 };
    (1..f.len().saturating_sub(1))
        .filter(|&i| sign * f[i] < sign * f[i - 1] && sign * f[i] < sign * f[i + 1])
        .map(|i| xs[i])
        .collect()
}

pub fn criterion_7() -> CriterionReport {
    timed(7, "structural extrema of the complexities", None, || {
        let radii = grid(2.5, 0.25, 29);
        let m = measure_grid(&[st(2, 0), st(2, 1), st(3, 2)], &radii)?;
        let curve = |k: usize, pos: bool| -> Vec<f64> {
            m[k].iter().map(|x| if pos { x.position.cramer_rao } else { x.momentum.cramer_rao }).collect()
        };
        let min_pos = local_extrema(&radii, &curve(0, true), false);
        let max_mom = local_extrema(&radii, &curve(0, false), true);
        let d: Vec<f64> = curve(1, false).iter().zip(curve(2, false)).map(|(a, b)| a - b).collect();
        let cross = crossings(&radii, &d);
        let inside = |x: &[f64], lo: f64, hi: f64| x.iter().any(|x| (lo..=hi).contains(x));
        let checks = [
            inside(&min_pos, 4.0, 8.0),
            inside(&max_mom, 3.5, 7.0),
            cross.len() == 1 && inside(&cross, 4.5, 7.5),
        ];
        Ok((
            checks.iter().all(|&c| c),
            format!(
                "2s position minima at {min_pos:?} [4, 8] {}; 2s momentum maxima at {max_mom:?} [3.5, 7] {}; \
                 2p/3d momentum crossing at {cross:.3?} [4.5, 7.5] {}",
                mark(checks[0]),
                mark(checks[1]),
                mark(checks[2])
            ),
        ))
    })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISS"
    }
}

static DEFAULT_SWEEP: OnceLock<Vec<SweepPoint>> = OnceLock::new();

/// The default sweep, computed once per process.
pub fn default_sweep() -> Result<&'static [SweepPoint]> {
    if let Some(p) = DEFAULT_SWEEP.get() {
        return Ok(p);
    }
    let points = sweep_points(&SweepConfig::default())?;
    Ok(DEFAULT_SWEEP.get_or_init(|| points))
}

pub fn criterion_8() -> CriterionReport {
    timed(8, "uncertainty and bound properties on the default sweep", None, || {
        let points = default_sweep()?;
        let mut bad = Vec::new();
        for p in points {
            let m = match &p.result {
                Ok(m) => m,
                Err(e) => {
                    bad.push(format!("{} r0={:.3}: {e}", p.state, p.r0));
                    continue;
                }
            };
            let (x, q) = (&m.position, &m.momentum);
            let checks = [
                ("F_pos*F_mom >= 16", p.state.m() != 0 || fisher_uncertainty_check(x, q, &p.state)),
                ("<r2>F >= 4", x.satisfies_moment_bound()),
                ("<p2>F >= 4", q.satisfies_moment_bound()),
                ("norm residuals", x.norm_residual <= NORM_TOLERANCE && q.norm_residual <= NORM_TOLERANCE),
                ("Parseval", m.parseval_residual <= 1e-4),
                ("kinetic", m.kinetic_residual <= 1e-4),
            ];
            for (name, ok) in checks {
                if !ok {
                    bad.push(format!("{} r0={:.3}: {name}", p.state, p.r0));
                }
            }
        }
        let worst_kin = points
            .iter()
            .filter_map(|p| p.result.as_ref().ok())
            .map(|m| m.kinetic_residual)
            .fold(0.0, f64::max);
        let detail = if bad.is_empty() {
            format!("{} points, all properties hold; largest kinetic residual {worst_kin:.2e}", points.len())
        } else {
            format!("{} violations: {}", bad.len(), bad.join("; "))
        };
        Ok((bad.is_empty(), detail))
    })
}

pub fn criterion_9() -> CriterionReport {
    timed(9, "momentum-variance crossings with the ground state", None, || {
        let radii = grid(0.8, 0.05, 57);
        let states = [st(1, 0), st(2, 1), st(3, 2), st(2, 0)];
        let m = measure_grid(&states, &radii)?;
        let var = |k: usize| -> Vec<f64> { m[k].iter().map(|x| x.momentum.variance).collect() };
        let ground = var(0);
        let windows = [(1, "1s;2p", 1.0, 1.5), (2, "1s;3d", 1.5, 2.2), (3, "1s;2s", 2.3, 3.2)];
        let mut passed = true;
        let mut parts = Vec::new();
        for (k, name, lo, hi) in windows {
            let d: Vec<f64> = ground.iter().zip(var(k)).map(|(a, b)| a - b).collect();
            let x = crossings(&radii, &d);
            let ok = x.len() == 1 && (lo..=hi).contains(&x[0]);
            passed &= ok;
            parts.push(format!("({name}) at {x:.3?} [{lo}, {hi}] {}", mark(ok)));
        }
        Ok((passed, parts.join("; ")))
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ]
}
