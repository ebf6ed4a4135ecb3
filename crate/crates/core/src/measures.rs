//! Variance, Fisher information and Cramér–Rao complexity in both spaces.
//!
//! Densities are θ-independent, so the planar Fisher functional reduces to
//! `F = 4∫ R'² r dr` in position and `F = 4∫ φ'² p dp` in momentum. That form
//! is finite at the nodes of `R` and `φ`, where `(ρ')²/ρ` is 0/0.

use crate::confined::{self, ConfinedState, SolverOptions};
use crate::error::{Error, Result};
use crate::free_hydrogen::StateLabel;
use crate::momentum::{build_table_with, MomentumOptions, RadialMomentumTable};
use crate::radial::RadialFunction;

/// Largest accepted deviation of a norm from one.
pub const NORM_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Space {
    Position,
    Momentum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureReport {
    pub space: Space,
    pub mean: f64,
    pub second_moment: f64,
    pub variance: f64,
    pub fisher: f64,
    pub cramer_rao: f64,
    pub norm_residual: f64,
}

impl MeasureReport {
    fn new(space: Space, norm: f64, mean: f64, second_moment: f64, fisher: f64) -> Result<Self> {
        let norm_residual = (norm - 1.0).abs();
        if !(norm_residual <= NORM_TOLERANCE) {
            return Err(Error::Accuracy(format!(
                "{space:?} norm {norm} deviates from 1 by {norm_residual:.3e}"
            )));
        }
        let variance = second_moment - mean * mean;
        if !(variance > 0.0) || !fisher.is_finite() {
            return Err(Error::Numeric(format!(
                "{space:?} variance {variance} or Fisher information {fisher} is invalid"
            )));
        }
        Ok(MeasureReport {
            space,
            mean,
            second_moment,
            variance,
            fisher,
            cramer_rao: fisher * variance,
            norm_residual,
        })
    }

    /// `⟨x²⟩·F ≥ d²` in the plane.
    pub fn satisfies_moment_bound(&self) -> bool {
        self.second_moment * self.fisher >= 4.0
    }
}

pub fn position_measures(f: &impl RadialFunction) -> Result<MeasureReport> {
    let rule = f.position_rule();
    let mut acc = [0.0; 4];
    for (&r, &w) in rule.nodes.iter().zip(&rule.weights) {
        let (v, d) = f.eval(r);
        let rho = w * v * v * r;
        acc[0] += rho;
        acc[1] += rho * r;
        acc[2] += rho * r * r;
        acc[3] += w * d * d * r;
    }
    MeasureReport::new(Space::Position, acc[0], acc[1], acc[2], 4.0 * acc[3])
}

pub fn momentum_measures(table: &RadialMomentumTable) -> Result<MeasureReport> {
    MeasureReport::new(Space::Momentum, table.norm(), table.moment(1), table.moment(2), table.fisher())
}

/// Whether `F_ρ·F_γ ≥ 16`. Guaranteed for real wavefunctions, that is `m = 0`;
/// for `m ≠ 0` the product is informative only.
pub fn fisher_uncertainty_check(pos: &MeasureReport, mom: &MeasureReport, _state: &StateLabel) -> bool {
    pos.fisher * mom.fisher >= 16.0
}

/// `|⟨p²⟩ - 2(E - ⟨V⟩)| / ⟨p²⟩`.
pub fn kinetic_residual(cs: &ConfinedState, mom: &MeasureReport) -> f64 {
    let kin = 2.0 * (cs.energy - cs.potential_expectation());
    (mom.second_moment - kin).abs() / mom.second_moment
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PipelineOptions {
    pub solver: SolverOptions,
    pub momentum: MomentumOptions,
}

/// Everything computed for one state at one radius.
#[derive(Debug, Clone)]
pub struct StateMeasures {
    pub confined: ConfinedState,
    pub position: MeasureReport,
    pub momentum: MeasureReport,
    /// `|momentum norm - position norm|`.
    pub parseval_residual: f64,
    pub kinetic_residual: f64,
}

pub fn measure_state(state: &StateLabel, r0: f64, opts: &PipelineOptions) -> Result<StateMeasures> {
    let cs = confined::solve_with(state, r0, &opts.solver)?;
    let position = position_measures(&cs)?;
    let table = build_table_with(&cs, &opts.momentum)?;
    let momentum = momentum_measures(&table)?;
    let parseval_residual = (table.norm() - cs.norm()).abs();
    let kinetic_residual = kinetic_residual(&cs, &momentum);
    Ok(StateMeasures { confined: cs, position, momentum, parseval_residual, kinetic_residual })
}
