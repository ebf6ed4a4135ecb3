use crate::error::{Error, Result};
use crate::free_hydrogen::StateLabel;
use crate::specfun::{laguerre, laguerre_derivative, laguerre_second_derivative};

/// Value and first two derivatives of a radial function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialJet {
    pub value: f64,
    pub first: f64,
    pub second: f64,
}

/// Unnormalised trial function
/// `e^{-αr} (2αr)^m L_{n-m-1}^{2m}(2αr) (1 - r/r₀)` and its derivatives.
///
/// At `α = 1/η` the product without the cutoff factor is the free
/// eigenfunction, so the family contains the unconfined limit.
pub fn trial_radial_wf(state: &StateLabel, r0: f64, alpha: f64, r: f64) -> Result<RadialJet> {
    if !(alpha > 0.0) {
        return Err(Error::domain(format!("alpha must be > 0, got {alpha}")));
    }
    if !(r >= 0.0 && r <= r0) {
        return Err(Error::domain(format!("r = {r} outside [0, {r0}]")));
    }
    Ok(jet(state.radial_nodes(), state.m(), r0, alpha, r))
}

pub(crate) fn jet(nodes: u32, m: u32, r0: f64, alpha: f64, r: f64) -> RadialJet {
    let a = 2.0 * m as f64;
    let x = 2.0 * alpha * r;
    let l0 = laguerre(nodes, a, x);
    let l1 = laguerre_derivative(nodes, a, x);
    let l2 = laguerre_second_derivative(nodes, a, x);
    let mf = m as f64;
    let pw = |k: i32| if k < 0 { 0.0 } else { x.powi(k) };
    let mi = m as i32;
    // h(x) = x^m L(x)
    let h0 = pw(mi) * l0;
    let h1 = mf * pw(mi - 1) * l0 + pw(mi) * l1;
    let h2 = mf * (mf - 1.0) * pw(mi - 2) * l0 + 2.0 * mf * pw(mi - 1) * l1 + pw(mi) * l2;
    let e = (-alpha * r).exp();
    let g0 = e * h0;
    let g1 = e * alpha * (2.0 * h1 - h0);
    let g2 = e * alpha * alpha * (h0 - 4.0 * h1 + 4.0 * h2);
    let chi = 1.0 - r / r0;
    RadialJet {
        value: g0 * chi,
        first: g1 * chi - g0 / r0,
        second: g2 * chi - 2.0 * g1 / r0,
    }
}

/// Coefficient of `r^{m+1}` in the unnormalised trial function.
pub(crate) fn origin_coefficient(nodes: u32, m: u32, r0: f64, alpha: f64) -> f64 {
    let a = 2.0 * m as f64;
    let l0 = laguerre(nodes, a, 0.0);
    let l1 = laguerre_derivative(nodes, a, 0.0);
    (2.0 * alpha).powi(m as i32) * (-alpha * l0 + 2.0 * alpha * l1 - l0 / r0)
}
