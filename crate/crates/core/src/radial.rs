//! Common view of a planar radial wavefunction `R(r)` with angular number `m`.

use crate::specfun::QuadratureRule;

pub trait RadialFunction: Sync {
    fn angular_m(&self) -> u32;

    /// `(R(r), R'(r))`.
    fn eval(&self, r: f64) -> (f64, f64);

    /// Radius beyond which `R` vanishes (hard wall) or is negligible.
    fn extent(&self) -> f64;

    /// `R'` at a hard wall; zero when the function simply decays.
    fn wall_slope(&self) -> f64;

    /// Coefficient `c` in `R(r) = r^m (c_m + c r + O(r²))` near the origin.
    fn origin_coefficient(&self) -> f64;

    /// Quadrature on `[0, extent]` adequate for position-space moments.
    fn position_rule(&self) -> &QuadratureRule;
}
