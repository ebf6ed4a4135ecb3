//! Closed-form informational quantities of the free hydrogen atom in `d`
//! dimensions, specialised to the plane where the confined solver needs them.

mod families;
mod table;
mod wavefunctions;

pub use families::{
    circular_momentum_fisher, circular_momentum_power, circular_position_fisher,
    circular_position_power, circular_uncertainty_products, ground_momentum_power,
    ns_momentum_fisher, ns_position_fisher,
};
pub use table::{table1, FreeMeasures};
pub use wavefunctions::{free_radial_momentum_wf, free_radial_position_wf, FreeRadialState};

use crate::error::{Error, Result};
use crate::specfun::gamma_pos;
use std::fmt;

const ORBITAL_LETTERS: &[u8] = b"spdfghiklmnoqrtuv";

/// Quantum numbers `(n, m)` of a hydrogenic state in dimension `d`.
///
/// `m` stands for the magnitude of the magnetic quantum number in the plane
/// and for the orbital number `l` when `d > 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateLabel {
    n: u32,
    m: u32,
    d: u32,
}

impl StateLabel {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        Self::with_dimension(n, m, 2)
    }

    pub fn with_dimension(n: u32, m: u32, d: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("principal quantum number must be >= 1"));
        }
        if m >= n {
            return Err(Error::domain(format!("need 0 <= m <= n-1, got n={n}, m={m}")));
        }
        if d < 2 {
            return Err(Error::domain(format!("dimension must be >= 2, got {d}")));
        }
        Ok(StateLabel { n, m, d })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn dim(&self) -> u32 {
        self.d
    }

    /// Grand quantum number `n + (d-3)/2`.
    pub fn eta(&self) -> f64 {
        self.n as f64 + (self.d as f64 - 3.0) / 2.0
    }

    /// Shifted angular number `m + (d-3)/2`.
    pub fn big_l(&self) -> f64 {
        self.m as f64 + (self.d as f64 - 3.0) / 2.0
    }

    /// Number of radial nodes.
    pub fn radial_nodes(&self) -> u32 {
        self.n - self.m - 1
    }

    pub fn is_ns(&self) -> bool {
        self.m == 0
    }

    pub fn is_circular(&self) -> bool {
        self.m + 1 == self.n
    }

    /// Spectroscopic label such as `2s` or `3d`.
    pub fn label(&self) -> String {
        match ORBITAL_LETTERS.get(self.m as usize) {
            Some(&c) => format!("{}{}", self.n, c as char),
            None => format!("n{}m{}", self.n, self.m),
        }
    }

    fn require_plane(&self, what: &str) -> Result<()> {
        if self.d != 2 {
            return Err(Error::UnsupportedState {
                label: self.label(),
                reason: format!("{what} is only available for d = 2"),
            });
        }
        Ok(())
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d == 2 {
            f.write_str(&self.label())
        } else {
            write!(f, "{} (d={})", self.label(), self.d)
        }
    }
}

pub fn free_energy(s: &StateLabel) -> f64 {
    -0.5 / (s.eta() * s.eta())
}

/// `(<r>, <r^2>)` of the free state.
pub fn position_moments(s: &StateLabel) -> (f64, f64) {
    let eta = s.eta();
    let ll = s.big_l() * (s.big_l() + 1.0);
    let mean = 0.5 * (3.0 * eta * eta - ll);
    let second = 0.5 * eta * eta * (5.0 * eta * eta - 3.0 * ll + 1.0);
    (mean, second)
}

pub fn position_variance(s: &StateLabel) -> f64 {
    let eta2 = s.eta() * s.eta();
    let l = s.big_l();
    0.25 * (eta2 * (eta2 + 2.0) - l * l * (l + 1.0) * (l + 1.0))
}

pub fn position_fisher(s: &StateLabel) -> f64 {
    let eta = s.eta();
    4.0 / eta.powi(3) * (eta - s.m as f64)
}

pub fn momentum_p2(s: &StateLabel) -> f64 {
    1.0 / (s.eta() * s.eta())
}

pub fn momentum_fisher(s: &StateLabel) -> f64 {
    let eta = s.eta();
    let l = s.big_l();
    let m = s.m as f64;
    2.0 * eta * eta * (5.0 * eta * eta - 3.0 * l * (l + 1.0) - m * (8.0 * eta - 6.0 * l - 3.0) + 1.0)
}

/// Mean momentum of the planar `ns` state as a finite alternating sum.
pub fn momentum_mean_ns(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("principal quantum number must be >= 1"));
    }
    let mut sum = 0.0;
    for j in 0..n {
        let jf = j as f64;
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let g = gamma_pos(jf + 0.5);
        let f = gamma_pos(jf + 1.0);
        let ratio = gamma_pos(n as f64 + jf) / gamma_pos((n - j) as f64);
        sum += sign * (2.0 * jf + 1.0) / (2.0 * jf + 2.0) * g * g / (f * f * f * f) * ratio;
    }
    Ok(sum)
}

/// Mean momentum of a planar circular state `(n, n-1)`.
pub fn momentum_mean_circular(s: &StateLabel) -> Result<f64> {
    s.require_plane("circular mean momentum")?;
    if !s.is_circular() {
        return Err(Error::domain(format!("{} is not a circular state", s.label())));
    }
    let n = s.n as f64;
    let g = gamma_pos(n + 0.5);
    let h = gamma_pos(n);
    Ok(2.0 * g * g / (n * (2.0 * n - 1.0) * h * h))
}

/// Mean momentum for the families where a closed form is known.
pub fn momentum_mean(s: &StateLabel) -> Result<f64> {
    s.require_plane("mean momentum")?;
    if s.is_circular() {
        momentum_mean_circular(s)
    } else if s.is_ns() {
        momentum_mean_ns(s.n)
    } else {
        Err(Error::UnsupportedState {
            label: s.label(),
            reason: "mean momentum is only known for ns and circular states".into(),
        })
    }
}

pub fn momentum_variance(s: &StateLabel) -> Result<f64> {
    if s.is_circular() && s.d == 2 {
        // direct form, avoids cancellation in <p^2> - <p>^2
        let n = s.n as f64;
        let ratio = gamma_pos(n + 0.5) / gamma_pos(n);
        let r4 = ratio * ratio * ratio * ratio;
        return Ok(4.0 / ((2.0 * n - 1.0) * (2.0 * n - 1.0)) * (1.0 - r4 / (n * n)));
    }
    let mean = momentum_mean(s)?;
    Ok(momentum_p2(s) - mean * mean)
}
