use super::StateLabel;
use crate::error::{Error, Result};
use crate::radial::RadialFunction;
use crate::specfun::{gauss_legendre, gegenbauer_orthonormal, orthonormal_laguerre, QuadratureRule};

/// Radial position eigenfunction `R(r)` of the free atom and its derivative.
///
/// Normalised so that `∫ R² r^(d-1) dr = 1`; the angular factor carries the
/// rest of the normalisation.
pub fn free_radial_position_wf(s: &StateLabel, r: f64) -> Result<(f64, f64)> {
    if !(r >= 0.0) {
        return Err(Error::domain(format!("radius must be >= 0, got {r}")));
    }
    let eta = s.eta();
    let d = s.dim() as f64;
    let l = s.m();
    let lambda = 0.5 * eta;
    let c = (lambda.powf(-d) / (2.0 * eta)).sqrt();
    let x = r / lambda;
    let poly = orthonormal_laguerre(s.radial_nodes(), 2.0 * l as f64 + d - 2.0, x)?;
    let e = (-0.5 * x).exp();
    let xl = x.powi(l as i32);
    let dxl = if l == 0 { 0.0 } else { l as f64 * x.powi(l as i32 - 1) };
    let value = c * xl * e * poly.value;
    let dx = c * e * (dxl * poly.value - 0.5 * xl * poly.value + xl * poly.derivative);
    Ok((value, dx / lambda))
}

/// Radial momentum eigenfunction `M(p)` of the free atom and its derivative.
///
/// Unit nuclear charge. Normalised so that `∫ M² p^(d-1) dp = 1`.
pub fn free_radial_momentum_wf(s: &StateLabel, p: f64) -> Result<(f64, f64)> {
    if !(p >= 0.0) {
        return Err(Error::domain(format!("momentum must be >= 0, got {p}")));
    }
    let eta = s.eta();
    let d = s.dim() as f64;
    let l = s.m();
    // (1+y)^a (1-y)^b with a + b = l + (d+1)/2 and b = l/2, written in p
    let expo = l as f64 + 0.5 * (d + 1.0);
    let u = eta * p;
    let q = 1.0 + u * u;
    let y = (1.0 - u * u) / q;
    let dy = -4.0 * eta * u / (q * q);
    let poly = gegenbauer_orthonormal(s.radial_nodes(), l as f64 + 0.5 * (d - 1.0), y)?;
    let pre = eta.powf(0.5 * d) * 2f64.powf(expo);
    let ul = u.powi(l as i32);
    let dul = if l == 0 { 0.0 } else { l as f64 * eta * u.powi(l as i32 - 1) };
    let env = q.powf(-expo);
    let denv = -expo * env / q * 2.0 * eta * u;
    let value = pre * ul * env * poly.value;
    let deriv = pre * (dul * env * poly.value + ul * denv * poly.value + ul * env * poly.derivative * dy);
    Ok((value, deriv))
}

/// A free planar eigenstate viewed as a radial function on a truncated range.
#[derive(Debug, Clone)]
pub struct FreeRadialState {
    state: StateLabel,
    extent: f64,
    rule: QuadratureRule,
}

impl FreeRadialState {
    pub fn new(state: StateLabel) -> Result<Self> {
        if state.dim() != 2 {
            return Err(Error::UnsupportedState {
                label: state.label(),
                reason: "radial transforms are planar only".into(),
            });
        }
        let eta = state.eta();
        // R² r³ has fallen below 1e-18 of its peak well before this radius
        let extent = eta * (50.0 + 4.0 * state.n() as f64);
        let panels = (2.0 * extent / eta).ceil() as usize;
        let breaks: Vec<f64> = (0..=panels).map(|i| extent * i as f64 / panels as f64).collect();
        let rule = gauss_legendre(16)?.composite(&breaks);
        Ok(FreeRadialState { state, extent, rule })
    }

    pub fn state(&self) -> StateLabel {
        self.state
    }
}

impl RadialFunction for FreeRadialState {
    fn angular_m(&self) -> u32 {
        self.state.m()
    }

    fn eval(&self, r: f64) -> (f64, f64) {
        free_radial_position_wf(&self.state, r).unwrap_or((f64::NAN, f64::NAN))
    }

    fn extent(&self) -> f64 {
        self.extent
    }

    fn wall_slope(&self) -> f64 {
        0.0
    }

    fn origin_coefficient(&self) -> f64 {
        let s = &self.state;
        let eta = s.eta();
        let lambda = 0.5 * eta;
        let c = (lambda.powi(-2) / (2.0 * eta)).sqrt();
        let m = s.m();
        let poly = orthonormal_laguerre(s.radial_nodes(), 2.0 * m as f64, 0.0)
            .expect("valid Laguerre order");
        c * lambda.powi(-(m as i32)) * (poly.derivative / lambda - 0.5 * poly.value / lambda)
    }

    fn position_rule(&self) -> &QuadratureRule {
        &self.rule
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn table_states() -> Vec<StateLabel> {
        [(1, 0), (2, 0), (2, 1), (3, 2)]
            .iter()
            .map(|&(n, m)| StateLabel::new(n, m).unwrap())
            .collect()
    }

    fn radial_integral(s: &StateLabel, f: impl Fn(f64, f64, f64) -> f64) -> f64 {
        let fr = FreeRadialState::new(*s).unwrap();
        fr.position_rule().integrate(|r| {
            let (v, dv) = free_radial_position_wf(s, r).unwrap();
            f(r, v, dv)
        })
    }

    fn momentum_integral(s: &StateLabel, f: impl Fn(f64, f64, f64) -> f64) -> f64 {
        // p = tan(u)/eta maps [0, π/2) onto [0, ∞)
        let eta = s.eta();
        let rule = gauss_legendre(32)
            .unwrap()
            .composite(&(0..=64).map(|i| std::f64::consts::FRAC_PI_2 * i as f64 / 64.0).collect::<Vec<_>>());
        rule.integrate(|u| {
            let p = u.tan() / eta;
            let jac = 1.0 / (eta * u.cos() * u.cos());
            let (v, dv) = free_radial_momentum_wf(s, p).unwrap();
            f(p, v, dv) * jac
        })
    }

    #[test]
    fn ground_state_shape() {
        let s = StateLabel::new(1, 0).unwrap();
        for &r in &[0.0, 0.3, 1.7] {
            let (v, dv) = free_radial_position_wf(&s, r).unwrap();
            assert_relative_eq!(v, 4.0 * (-2.0 * r).exp(), max_relative = 1e-14);
            assert_relative_eq!(dv, -8.0 * (-2.0 * r).exp(), max_relative = 1e-14);
        }
        for &p in &[0.0, 0.5, 2.0] {
            let (v, _) = free_radial_momentum_wf(&s, p).unwrap();
            assert_relative_eq!(v * v, (1.0 + p * p / 4.0).powi(-3), max_relative = 1e-13);
        }
    }

    #[test]
    fn position_normalisation_and_moments() {
        for s in table_states() {
            let norm = radial_integral(&s, |r, v, _| v * v * r);
            assert!((norm - 1.0).abs() < 1e-9, "{s}: {norm}");
            let mean = radial_integral(&s, |r, v, _| v * v * r * r);
            let second = radial_integral(&s, |r, v, _| v * v * r * r * r);
            let (cm, cs) = super::super::position_moments(&s);
            assert!((mean - cm).abs() < 1e-9 * cm, "{s}");
            assert!((second - cs).abs() < 1e-9 * cs, "{s}");
        }
    }

    #[test]
    fn three_dimensional_normalisation() {
        for &(n, l) in &[(1, 0), (2, 1), (3, 1)] {
            let s = StateLabel::with_dimension(n, l, 3).unwrap();
            let rule = gauss_legendre(16)
                .unwrap()
                .composite(&(0..=400).map(|i| i as f64 * 0.5).collect::<Vec<_>>());
            let norm = rule.integrate(|r| free_radial_position_wf(&s, r).unwrap().0.powi(2) * r * r);
            assert!((norm - 1.0).abs() < 1e-9, "{s}: {norm}");
        }
        // 1s in three dimensions is 2 e^{-r}
        let s = StateLabel::with_dimension(1, 0, 3).unwrap();
        assert_relative_eq!(free_radial_position_wf(&s, 1.0).unwrap().0, 2.0 * (-1f64).exp(), max_relative = 1e-14);
    }

    #[test]
    fn node_count() {
        for n in 1..=5u32 {
            for m in 0..n {
                let s = StateLabel::new(n, m).unwrap();
                let mut sign_changes = 0;
                let mut last = free_radial_position_wf(&s, 1e-3).unwrap().0;
                for i in 1..20000 {
                    let r = 1e-3 + i as f64 * 0.01;
                    let v = free_radial_position_wf(&s, r).unwrap().0;
                    if v * last < 0.0 {
                        sign_changes += 1;
                    }
                    if v != 0.0 {
                        last = v;
                    }
                }
                assert_eq!(sign_changes, n - m - 1, "{s}");
            }
        }
    }

    #[test]
    fn momentum_normalisation() {
        for s in table_states() {
            let norm = momentum_integral(&s, |p, v, _| v * v * p);
            assert!((norm - 1.0).abs() < 1e-8, "{s}: {norm}");
        }
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let h = 1e-4;
        for s in table_states() {
            for &x in &[0.37, 1.3, 4.1] {
                let f = |r: f64| free_radial_position_wf(&s, r).unwrap().0;
                let fd = (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
                let d = free_radial_position_wf(&s, x).unwrap().1;
                assert!((fd - d).abs() <= 1e-6 * d.abs().max(1e-3), "{s} r={x}");
                let g = |p: f64| free_radial_momentum_wf(&s, p).unwrap().0;
                let fd = (g(x - 2.0 * h) - 8.0 * g(x - h) + 8.0 * g(x + h) - g(x + 2.0 * h)) / (12.0 * h);
                let d = free_radial_momentum_wf(&s, x).unwrap().1;
                assert!((fd - d).abs() <= 1e-6 * d.abs().max(1e-3), "{s} p={x}");
            }
        }
    }

    #[test]
    fn momentum_fisher_of_2s_is_four_r_squared() {
        // 4 ∫ M'² p dp with the analytic momentum wavefunction
        let s = StateLabel::new(2, 0).unwrap();
        let fisher = 4.0 * momentum_integral(&s, |p, _, dv| dv * dv * p);
        let r2 = radial_integral(&s, |r, v, _| v * v * r * r * r);
        assert!((fisher - 58.5).abs() < 1e-6, "{fisher}");
        assert!((4.0 * r2 - 58.5).abs() < 1e-6);
        assert!((fisher - 58.2).abs() > 0.29);
    }

    #[test]
    fn ns_mean_momentum_by_quadrature() {
        for n in 1..=3u32 {
            let s = StateLabel::new(n, 0).unwrap();
            let mean = momentum_integral(&s, |p, v, _| v * v * p * p);
            let closed = super::super::momentum_mean_ns(n).unwrap();
            assert!((mean - closed).abs() < 1e-8, "n={n}: {mean} vs {closed}");
        }
        // the three terms of the n = 3 sum are π/2, -9π/8 and 45π/64
        let expected = 5.0 * std::f64::consts::PI / 64.0;
        assert!((super::super::momentum_mean_ns(3).unwrap() - expected).abs() < 1e-13);
    }

    #[test]
    fn circular_mean_momentum_by_quadrature() {
        let s = StateLabel::new(2, 1).unwrap();
        let mean = momentum_integral(&s, |p, v, _| v * v * p * p);
        assert!((mean - 3.0 * std::f64::consts::PI / 16.0).abs() < 1e-8);
    }

    #[test]
    fn origin_coefficient_matches_slope() {
        for s in table_states() {
            let fr = FreeRadialState::new(s).unwrap();
            let m = s.m() as i32;
            let r = 1e-5;
            let c0 = fr.eval(r).0 / r.powi(m);
            let c0b = fr.eval(2.0 * r).0 / (2.0 * r).powi(m);
            let slope = (c0b - c0) / r;
            assert!(
                (slope - fr.origin_coefficient()).abs() < 1e-3 * fr.origin_coefficient().abs(),
                "{s}: {} vs {}",
                slope,
                fr.origin_coefficient()
            );
        }
    }
}
