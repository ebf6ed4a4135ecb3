use super::{
    free_energy, momentum_fisher, momentum_variance, position_fisher, position_variance, StateLabel,
};
use crate::error::Result;

/// Variance, Fisher information and Cramér-Rao complexity of a free state in
/// both spaces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeMeasures {
    pub energy: f64,
    pub v_pos: f64,
    pub f_pos: f64,
    pub v_mom: f64,
    pub f_mom: f64,
    pub cr_pos: f64,
    pub cr_mom: f64,
}

impl FreeMeasures {
    pub fn for_state(s: &StateLabel) -> Result<Self> {
        let v_pos = position_variance(s);
        let f_pos = position_fisher(s);
        let v_mom = momentum_variance(s)?;
        let f_mom = momentum_fisher(s);
        Ok(FreeMeasures {
            energy: free_energy(s),
            v_pos,
            f_pos,
            v_mom,
            f_mom,
            cr_pos: f_pos * v_pos,
            cr_mom: f_mom * v_mom,
        })
    }

    /// Four-decimal rendering in the column order
    /// `V[rho], V[gamma], F[rho], F[gamma], C[rho], C[gamma]`.
    ///
    /// Variances are rounded, Fisher informations truncated, and each
    /// complexity is the truncated product of the two displayed factors.
    pub fn display_row(&self) -> [String; 6] {
        let v_pos = rounded(self.v_pos);
        let v_mom = rounded(self.v_mom);
        let f_pos = truncated(self.f_pos);
        let f_mom = truncated(self.f_mom);
        let cr_pos = v_pos * f_pos / 10_000;
        let cr_mom = v_mom * f_mom / 10_000;
        [v_pos, v_mom, f_pos, f_mom, cr_pos, cr_mom].map(fixed4)
    }
}

// values in units of 1e-4
fn rounded(x: f64) -> i64 {
    (x * 1e4).round() as i64
}

fn truncated(x: f64) -> i64 {
    (x * 1e4 + 1e-7).floor() as i64
}

fn fixed4(units: i64) -> String {
    format!("{}.{:04}", units / 10_000, units % 10_000)
}

/// Free measures of the 1s, 2s, 2p and 3d planar states.
pub fn table1() -> Vec<(StateLabel, FreeMeasures)> {
    [(1, 0), (2, 0), (2, 1), (3, 2)]
        .into_iter()
        .map(|(n, m)| {
            let s = StateLabel::new(n, m).expect("tabulated state");
            (s, FreeMeasures::for_state(&s).expect("ns or circular state"))
        })
        .collect()
}
