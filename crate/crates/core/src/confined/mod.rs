//! Variational states of the planar hydrogen atom inside an impenetrable
//! circular wall of radius `r₀`.
//!
//! Each trial function is `e^{-αr}(2αr)^m L_{n-m-1}^{2m}(2αr)(1 - r/r₀)`.
//! States with radial nodes are obtained from the small generalised
//! eigenproblem in the span of the already optimised lower trial functions of
//! the same `m` plus the node-carrying trial of the target state; the
//! `(n-m)`-th root bounds the corresponding exact level from above and is
//! minimised over the target's `α`. Nodeless states reduce to the plain
//! Rayleigh quotient.

pub mod minimize;
mod trial;

pub use minimize::{brent, scan_minimize, Minimum, ScanOptions};
pub use trial::{trial_radial_wf, RadialJet};

use crate::error::{Error, Result};
use crate::free_hydrogen::StateLabel;
use crate::radial::RadialFunction;
use crate::specfun::{gauss_legendre, QuadratureRule};
use nalgebra::{DMatrix, SymmetricEigen};

/// Smallest confinement radius accepted by the solver.
pub const MIN_RADIUS: f64 = 0.05;

/// Gauss–Legendre nodes mapped onto `[0, r₀]`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid {
    r0: f64,
    rule: QuadratureRule,
}

impl RadialGrid {
    pub fn new(r0: f64, order: usize) -> Result<Self> {
        if !(r0 > 0.0) || !r0.is_finite() {
            return Err(Error::domain(format!("confinement radius must be > 0, got {r0}")));
        }
        Ok(RadialGrid { r0, rule: gauss_legendre(order)?.mapped(0.0, r0) })
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn order(&self) -> usize {
        self.rule.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.rule.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.rule.weights
    }

    pub fn rule(&self) -> &QuadratureRule {
        &self.rule
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    pub quadrature_order: usize,
    pub scan: ScanOptions,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { quadrature_order: 200, scan: ScanOptions::default() }
    }
}

/// One trial function in the expansion of a confined state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialComponent {
    pub radial_nodes: u32,
    pub alpha: f64,
    pub coefficient: f64,
}

/// Optimised variational solution at one confinement radius.
#[derive(Debug, Clone)]
pub struct ConfinedState {
    pub state: StateLabel,
    pub r0: f64,
    pub alpha: f64,
    pub energy: f64,
    /// Coefficient of the state's own trial function in the normalised
    /// expansion.
    pub norm_constant: f64,
    pub quadrature_order: usize,
    components: Vec<TrialComponent>,
    grid: RadialGrid,
}

impl ConfinedState {
    pub fn components(&self) -> &[TrialComponent] {
        &self.components
    }

    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }

    /// Normalised `R`, `R'`, `R''` at `r`.
    pub fn jet(&self, r: f64) -> RadialJet {
        let m = self.state.m();
        let mut out = RadialJet { value: 0.0, first: 0.0, second: 0.0 };
        for c in &self.components {
            let j = trial::jet(c.radial_nodes, m, self.r0, c.alpha, r);
            out.value += c.coefficient * j.value;
            out.first += c.coefficient * j.first;
            out.second += c.coefficient * j.second;
        }
        out
    }

    /// `∫ R² r dr`.
    pub fn norm(&self) -> f64 {
        self.grid.rule.integrate(|r| {
            let v = self.jet(r).value;
            v * v * r
        })
    }

    /// Expectation value of the Coulomb potential `-1/r`.
    pub fn potential_expectation(&self) -> f64 {
        -self.grid.rule.integrate(|r| self.jet(r).value.powi(2))
    }
}

impl RadialFunction for ConfinedState {
    fn angular_m(&self) -> u32 {
        self.state.m()
    }

    fn eval(&self, r: f64) -> (f64, f64) {
        let j = self.jet(r);
        (j.value, j.first)
    }

    fn extent(&self) -> f64 {
        self.r0
    }

    fn wall_slope(&self) -> f64 {
        self.jet(self.r0).first
    }

    fn origin_coefficient(&self) -> f64 {
        let m = self.state.m();
        self.components
            .iter()
            .map(|c| c.coefficient * trial::origin_coefficient(c.radial_nodes, m, self.r0, c.alpha))
            .sum()
    }

    fn position_rule(&self) -> &QuadratureRule {
        &self.grid.rule
    }
}

/// Trial function sampled on the grid.
struct Sampled {
    value: Vec<f64>,
    first: Vec<f64>,
}

fn sample(nodes: u32, m: u32, alpha: f64, grid: &RadialGrid) -> Sampled {
    let (value, first) = grid
        .nodes()
        .iter()
        .map(|&r| {
            let j = trial::jet(nodes, m, grid.r0, alpha, r);
            (j.value, j.first)
        })
        .unzip();
    Sampled { value, first }
}

/// Hamiltonian and overlap elements in weak form.
fn elements(a: &Sampled, b: &Sampled, m: u32, grid: &RadialGrid) -> (f64, f64) {
    let c = 0.5 * (m * m) as f64;
    let mut h = 0.0;
    let mut s = 0.0;
    for (k, (&r, &w)) in grid.nodes().iter().zip(grid.weights()).enumerate() {
        let vv = a.value[k] * b.value[k];
        h += w * (0.5 * a.first[k] * b.first[k] * r + c * vv / r - vv);
        s += w * vv * r;
    }
    (h, s)
}

/// Rayleigh quotient of the bare trial function `E(α)`.
pub fn energy_functional(state: &StateLabel, r0: f64, alpha: f64) -> Result<f64> {
    energy_functional_with(state, r0, alpha, SolverOptions::default().quadrature_order)
}

pub fn energy_functional_with(state: &StateLabel, r0: f64, alpha: f64, order: usize) -> Result<f64> {
    check_inputs(state, r0)?;
    if !(alpha > 0.0) {
        return Err(Error::domain(format!("alpha must be > 0, got {alpha}")));
    }
    let grid = RadialGrid::new(r0, order)?;
    let t = sample(state.radial_nodes(), state.m(), alpha, &grid);
    let (h, s) = elements(&t, &t, state.m(), &grid);
    finite(h / s, state, alpha)
}

fn finite(e: f64, state: &StateLabel, alpha: f64) -> Result<f64> {
    if e.is_finite() {
        Ok(e)
    } else {
        Err(Error::Numeric(format!("energy of {} at alpha = {alpha} is {e}", state.label())))
    }
}

fn check_inputs(state: &StateLabel, r0: f64) -> Result<()> {
    if state.dim() != 2 {
        return Err(Error::UnsupportedState {
            label: state.label(),
            reason: "the confined solver is planar".into(),
        });
    }
    if !(r0 >= MIN_RADIUS) || !r0.is_finite() {
        return Err(Error::domain(format!(
            "confinement radius must be finite and >= {MIN_RADIUS}, got {r0}"
        )));
    }
    Ok(())
}

/// Variational problem for one state above a fixed set of lower trials.
///
/// The sampled trials are orthonormalised pointwise (Gram–Schmidt, two
/// passes). At small `r₀` neighbouring trials are nearly parallel and
/// forming the overlap matrix first would square that cancellation.
pub struct Objective {
    state: StateLabel,
    grid: RadialGrid,
    lower: Vec<(u32, f64)>,
    orth: Vec<Sampled>,
    /// Row `j` expresses orthonormal function `j` in the raw trials.
    transform: Vec<Vec<f64>>,
    lower_h: DMatrix<f64>,
}

impl Objective {
    fn new(state: StateLabel, grid: RadialGrid, lower: Vec<(u32, f64)>) -> Result<Self> {
        let m = state.m();
        let mut obj = Objective {
            state,
            grid,
            lower: Vec::new(),
            orth: Vec::new(),
            transform: Vec::new(),
            lower_h: DMatrix::zeros(0, 0),
        };
        for &(nodes, alpha) in &lower {
            let (q, row) = obj.orthonormalise(sample(nodes, m, alpha, &obj.grid), alpha)?;
            obj.orth.push(q);
            obj.transform.push(row);
        }
        let k = lower.len();
        let mut h = DMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..=i {
                let (hij, _) = elements(&obj.orth[i], &obj.orth[j], m, &obj.grid);
                h[(i, j)] = hij;
                h[(j, i)] = hij;
            }
        }
        obj.lower = lower;
        obj.lower_h = h;
        Ok(obj)
    }

    /// Orthonormalises `t` against the stored functions; also returns its
    /// expansion in raw trials (the new trial last).
    fn orthonormalise(&self, mut t: Sampled, alpha: f64) -> Result<(Sampled, Vec<f64>)> {
        let k = self.orth.len();
        let mut row = vec![0.0; k + 1];
        row[k] = 1.0;
        let start = overlap(&t, &t, &self.grid).sqrt();
        for _ in 0..2 {
            for (q, qrow) in self.orth.iter().zip(&self.transform) {
                let c = overlap(q, &t, &self.grid);
                for (i, (tv, tf)) in t.value.iter_mut().zip(t.first.iter_mut()).enumerate() {
                    *tv -= c * q.value[i];
                    *tf -= c * q.first[i];
                }
                for (r, &x) in row.iter_mut().zip(qrow) {
                    *r -= c * x;
                }
            }
        }
        let norm = overlap(&t, &t, &self.grid).sqrt();
        if !(norm > 1e-13 * start) {
            return Err(Error::Numeric(format!(
                "trial of {} at alpha = {alpha} is linearly dependent on the lower states",
                self.state.label()
            )));
        }
        t.value.iter_mut().chain(t.first.iter_mut()).for_each(|x| *x /= norm);
        row.iter_mut().for_each(|x| *x /= norm);
        Ok((t, row))
    }

    /// Variational energy for trial parameter `alpha`.
    pub fn energy(&self, alpha: f64) -> Result<f64> {
        self.solve(alpha).map(|(e, _)| e)
    }

    fn solve(&self, alpha: f64) -> Result<(f64, Vec<f64>)> {
        if !(alpha > 0.0) {
            return Err(Error::domain(format!("alpha must be > 0, got {alpha}")));
        }
        let m = self.state.m();
        let raw = sample(self.state.radial_nodes(), m, alpha, &self.grid);
        let (q, row) = self.orthonormalise(raw, alpha)?;
        let k = self.orth.len();
        let (hqq, _) = elements(&q, &q, m, &self.grid);
        if k == 0 {
            return Ok((finite(hqq, &self.state, alpha)?, row));
        }
        let mut h = DMatrix::zeros(k + 1, k + 1);
        h.view_mut((0, 0), (k, k)).copy_from(&self.lower_h);
        for (i, b) in self.orth.iter().enumerate() {
            let (hi, _) = elements(b, &q, m, &self.grid);
            h[(i, k)] = hi;
            h[(k, i)] = hi;
        }
        h[(k, k)] = hqq;
        let eig = SymmetricEigen::new(h);
        let mut order: Vec<usize> = (0..=k).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let top = order[k];
        let v = eig.eigenvectors.column(top);
        let mut coefs = vec![0.0; k + 1];
        for (j, tr) in self.transform.iter().chain(std::iter::once(&row)).enumerate() {
            for (c, &x) in coefs.iter_mut().zip(tr) {
                *c += v[j] * x;
            }
        }
        Ok((finite(eig.eigenvalues[top], &self.state, alpha)?, coefs))
    }
}

fn overlap(a: &Sampled, b: &Sampled, grid: &RadialGrid) -> f64 {
    grid.nodes()
        .iter()
        .zip(grid.weights())
        .zip(a.value.iter().zip(&b.value))
        .map(|((&r, &w), (&x, &y))| w * x * y * r)
        .sum()
}

/// Optimised confined state with default options.
pub fn solve(state: &StateLabel, r0: f64) -> Result<ConfinedState> {
    solve_with(state, r0, &SolverOptions::default())
}

pub fn solve_with(state: &StateLabel, r0: f64, opts: &SolverOptions) -> Result<ConfinedState> {
    Ok(solve_ladder(state, r0, opts)?.pop().expect("ladder ends with the target"))
}

/// Solutions for `(m+1, m), …, (n, m)` at one radius, lowest first.
pub fn solve_ladder(state: &StateLabel, r0: f64, opts: &SolverOptions) -> Result<Vec<ConfinedState>> {
    check_inputs(state, r0)?;
    let grid = RadialGrid::new(r0, opts.quadrature_order)?;
    let m = state.m();
    let mut lower: Vec<(u32, f64)> = Vec::new();
    let mut out = Vec::new();
    for n in (m + 1)..=state.n() {
        let target = StateLabel::new(n, m)?;
        let objective = Objective::new(target, grid.clone(), lower.clone())?;
        let eta = target.eta();
        let found = scan_minimize(|a| objective.energy(a), 0.2 / eta, 5.0 / eta, opts.scan).map_err(|e| {
            match e {
                Error::Convergence(msg) => Error::Convergence(format!("{} at r0 = {r0}: {msg}", target.label())),
                other => other,
            }
        })?;
        let (energy, coefs) = objective.solve(found.x)?;
        let mut components: Vec<TrialComponent> = lower
            .iter()
            .zip(&coefs)
            .map(|(&(radial_nodes, alpha), &coefficient)| TrialComponent { radial_nodes, alpha, coefficient })
            .collect();
        components.push(TrialComponent {
            radial_nodes: target.radial_nodes(),
            alpha: found.x,
            coefficient: coefs[coefs.len() - 1],
        });
        let mut cs = ConfinedState {
            state: target,
            r0,
            alpha: found.x,
            energy,
            norm_constant: 0.0,
            quadrature_order: opts.quadrature_order,
            components,
            grid: grid.clone(),
        };
        // positive near the nucleus
        if cs.jet(1e-3 * r0.min(1.0)).value < 0.0 {
            for c in &mut cs.components {
                c.coefficient = -c.coefficient;
            }
        }
        cs.norm_constant = cs.components.last().map_or(0.0, |c| c.coefficient);
        lower.push((target.radial_nodes(), found.x));
        out.push(cs);
    }
    Ok(out)
}

/// Free energy and the quoted radius beyond which the confined energy is
/// indistinguishable from it.
pub fn reference_energies(state: &StateLabel) -> Result<(f64, f64)> {
    let rc = match (state.n(), state.m(), state.dim()) {
        (1, 0, 2) => 2.0,
        (2, 0, 2) | (2, 1, 2) => 3.0,
        (3, 2, 2) => 5.0,
        _ => {
            return Err(Error::UnsupportedState {
                label: state.label(),
                reason: "reference radii are tabulated for 1s, 2s, 2p and 3d only".into(),
            })
        }
    };
    Ok((crate::free_hydrogen::free_energy(state), rc))
}
