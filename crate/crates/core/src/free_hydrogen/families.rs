//! Closed forms for the `ns` and circular families in `d` dimensions.
//!
//! These are independent of the general-state formulas in the parent module
//! and are used to cross-check them.

use crate::error::{Error, Result};
use crate::specfun::gamma_pos;

fn check_dim(d: u32) -> Result<f64> {
    if d < 2 {
        return Err(Error::domain(format!("dimension must be >= 2, got {d}")));
    }
    Ok(d as f64)
}

/// `<p^a>` of the ground state, valid for `-d < a < d + 2`.
pub fn ground_momentum_power(alpha: f64, d: u32) -> Result<f64> {
    let df = check_dim(d)?;
    if !(alpha > -df && alpha < df + 2.0) {
        return Err(Error::domain(format!("need -d < alpha < d+2, got {alpha}")));
    }
    let g = gamma_pos(df / 2.0);
    Ok((2.0 / (df - 1.0)).powf(alpha) * 2.0 * gamma_pos((df - alpha) / 2.0 + 1.0)
        * gamma_pos((df + alpha) / 2.0)
        / (df * g * g))
}

pub fn ns_position_fisher(n: u32, d: u32) -> Result<f64> {
    let df = check_dim(d)?;
    let eta = n as f64 + (df - 3.0) / 2.0;
    Ok((2.0 / eta).powi(2))
}

pub fn ns_momentum_fisher(n: u32, d: u32) -> Result<f64> {
    let df = check_dim(d)?;
    let eta = n as f64 + (df - 3.0) / 2.0;
    Ok(eta * eta * (10.0 * eta * eta - 1.5 * (df - 3.0) * (df - 1.0) + 2.0))
}

/// `<r^a>` of the circular state `(n, n-1)`.
pub fn circular_position_power(n: u32, d: u32, alpha: f64) -> Result<f64> {
    let df = check_dim(d)?;
    let k = 2.0 * n as f64 + df;
    if !(alpha > 2.0 - k) {
        return Err(Error::domain(format!("need alpha > -2n-d+2, got {alpha}")));
    }
    Ok(((k - 3.0) / 4.0).powf(alpha) * gamma_pos(k - 2.0 + alpha) / gamma_pos(k - 2.0))
}

/// `<p^a>` of the circular state `(n, n-1)`.
pub fn circular_momentum_power(n: u32, d: u32, alpha: f64) -> Result<f64> {
    let df = check_dim(d)?;
    let nf = n as f64;
    let k = 2.0 * nf + df;
    if !(alpha > 2.0 - k && alpha < k) {
        return Err(Error::domain(format!("need -2n-d+2 < alpha < 2n+d, got {alpha}")));
    }
    let c = nf + (df - 2.0) / 2.0;
    let g = gamma_pos(c);
    Ok((2.0 / (k - 3.0)).powf(alpha)
        * gamma_pos(nf + (df + alpha - 2.0) / 2.0)
        * gamma_pos(nf + (df - alpha) / 2.0)
        / (c * g * g))
}

pub fn circular_position_fisher(n: u32, d: u32) -> Result<f64> {
    let df = check_dim(d)?;
    Ok(16.0 * (df - 1.0) / (2.0 * n as f64 + df - 3.0).powi(3))
}

pub fn circular_momentum_fisher(n: u32, d: u32) -> Result<f64> {
    let df = check_dim(d)?;
    let k = 2.0 * n as f64 + df;
    Ok(0.25 * (k - 3.0).powi(2) * (k * (df - 1.0) + 2.0))
}

/// `(<r^2> F[rho], <p^2> F[gamma])` for the circular state `(n, n-1)`.
pub fn circular_uncertainty_products(n: u32, d: u32) -> Result<(f64, f64)> {
    let df = check_dim(d)?;
    let k = 2.0 * n as f64 + df;
    Ok((
        (df - 1.0) * (k - 1.0) * (k - 2.0) / (k - 3.0),
        k * (df - 1.0) + 2.0,
    ))
}
