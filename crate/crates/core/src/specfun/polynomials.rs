use super::gamma::ln_gamma;
use crate::error::{Error, Result};

/// A polynomial value together with its derivative with respect to the argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolynomialEval {
    pub value: f64,
    pub derivative: f64,
}

/// Standard associated Laguerre polynomial `L_k^{(a)}(x)` and its derivative.
///
/// Three-term recurrence; the derivative uses `d/dx L_k^{(a)} = -L_{k-1}^{(a+1)}`.
pub fn assoc_laguerre(k: u32, a: f64, x: f64) -> Result<PolynomialEval> {
    check_laguerre_order(a)?;
    Ok(PolynomialEval {
        value: laguerre(k, a, x),
        derivative: laguerre_derivative(k, a, x),
    })
}

/// Laguerre polynomial orthonormal under the weight `x^a e^{-x}` on `[0, ∞)`.
pub fn orthonormal_laguerre(k: u32, a: f64, x: f64) -> Result<PolynomialEval> {
    let raw = assoc_laguerre(k, a, x)?;
    let scale = laguerre_norm_factor(k, a)?;
    Ok(PolynomialEval {
        value: raw.value * scale,
        derivative: raw.derivative * scale,
    })
}

/// `[k! / Γ(k + a + 1)]^{1/2}`, the factor turning `L_k^{(a)}` into its orthonormal form.
pub fn laguerre_norm_factor(k: u32, a: f64) -> Result<f64> {
    check_laguerre_order(a)?;
    let k = k as f64;
    Ok((0.5 * (ln_gamma(k + 1.0)? - ln_gamma(k + a + 1.0)?)).exp())
}

/// Gegenbauer polynomial orthonormal under `(1 - y²)^{α - 1/2}` on `[-1, 1]`.
pub fn gegenbauer_orthonormal(k: u32, alpha: f64, y: f64) -> Result<PolynomialEval> {
    if !(alpha > -0.5) || alpha == 0.0 {
        return Err(Error::domain(format!(
            "Gegenbauer order must satisfy alpha > -1/2, alpha != 0; got {alpha}"
        )));
    }
    if !(y.abs() <= 1.0) {
        return Err(Error::domain(format!(
            "Gegenbauer argument must lie in [-1, 1], got {y}"
        )));
    }
    let scale = gegenbauer_norm(k, alpha)?.sqrt().recip();
    let value = gegenbauer(k, alpha, y);
    let derivative = if k == 0 {
        0.0
    } else {
        2.0 * alpha * gegenbauer(k - 1, alpha + 1.0, y)
    };
    Ok(PolynomialEval {
        value: value * scale,
        derivative: derivative * scale,
    })
}

/// `∫_{-1}^{1} (1 - y²)^{α - 1/2} [C_k^{α}(y)]² dy`.
fn gegenbauer_norm(k: u32, alpha: f64) -> Result<f64> {
    use std::f64::consts::PI;
    if k == 0 {
        return Ok((PI.sqrt().ln() + ln_gamma(alpha + 0.5)? - ln_gamma(alpha + 1.0)?).exp());
    }
    let kf = k as f64;
    // Γ(α)² written as Γ(α + 1)² / α² so that -1/2 < α < 0 stays on positive arguments
    let ln_h = PI.ln() + (1.0 - 2.0 * alpha) * 2f64.ln() + 2.0 * alpha.abs().ln()
        + ln_gamma(kf + 2.0 * alpha)?
        - ln_gamma(kf + 1.0)?
        - (kf + alpha).ln()
        - 2.0 * ln_gamma(alpha + 1.0)?;
    Ok(ln_h.exp())
}

fn check_laguerre_order(a: f64) -> Result<()> {
    if !(a > -1.0) {
        return Err(Error::domain(format!(
            "Laguerre parameter must satisfy a > -1, got {a}"
        )));
    }
    Ok(())
}

/// `L_k^{(a)}(x)` without argument checks, for inner loops.
pub(crate) fn laguerre(k: u32, a: f64, x: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => 1.0 + a - x,
        _ => {
            let mut prev = 1.0;
            let mut cur = 1.0 + a - x;
            for j in 1..k {
                let j = j as f64;
                let next = ((2.0 * j + 1.0 + a - x) * cur - (j + a) * prev) / (j + 1.0);
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

pub(crate) fn laguerre_derivative(k: u32, a: f64, x: f64) -> f64 {
    if k == 0 {
        0.0
    } else {
        -laguerre(k - 1, a + 1.0, x)
    }
}

pub(crate) fn laguerre_second_derivative(k: u32, a: f64, x: f64) -> f64 {
    if k < 2 {
        0.0
    } else {
        laguerre(k - 2, a + 2.0, x)
    }
}

/// Unnormalized `C_k^{α}(y)`.
pub(crate) fn gegenbauer(k: u32, alpha: f64, y: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => 2.0 * alpha * y,
        _ => {
            let mut prev = 1.0;
            let mut cur = 2.0 * alpha * y;
            for j in 2..=k {
                let j = j as f64;
                let next = (2.0 * y * (j + alpha - 1.0) * cur - (j + 2.0 * alpha - 2.0) * prev) / j;
                prev = cur;
                cur = next;
            }
            cur
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::quadrature::gauss_legendre;
    use approx::assert_relative_eq;

    /// ∫₀^∞ f(x) dx via x = L·t/(1 - t) on a high-order rule; f must decay like e^{-x}.
    fn semi_infinite(order: usize, f: impl Fn(f64) -> f64) -> f64 {
        let rule = gauss_legendre(order).unwrap();
        let scale = 8.0;
        rule.nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&u, &w)| {
                let t = 0.5 * (u + 1.0);
                let x = scale * t / (1.0 - t);
                let jac = scale / (1.0 - t).powi(2);
                0.5 * w * jac * f(x)
            })
            .sum()
    }

    fn laguerre_inner(j: u32, k: u32, a: f64, order: usize) -> f64 {
        semi_infinite(order, |x| {
            let lj = orthonormal_laguerre(j, a, x).unwrap().value;
            let lk = orthonormal_laguerre(k, a, x).unwrap().value;
            x.powf(a) * (-x).exp() * lj * lk
        })
    }

    #[test]
    fn low_degree_laguerre() {
        let p = assoc_laguerre(0, 1.3, 4.0).unwrap();
        assert_eq!((p.value, p.derivative), (1.0, 0.0));
        let p = assoc_laguerre(1, 2.0, 1.0).unwrap();
        assert_eq!(p.value, 2.0);
        assert_eq!(p.derivative, -1.0);
        assert_eq!(assoc_laguerre(2, 0.0, 0.0).unwrap().value, 1.0);
        // L_3^{(2)}(0) = binom(5, 3)
        assert_relative_eq!(assoc_laguerre(3, 2.0, 0.0).unwrap().value, 10.0, epsilon = 1e-14);
    }

    #[test]
    fn laguerre_rejects_bad_parameter() {
        assert!(assoc_laguerre(2, -1.0, 0.5).is_err());
        assert!(orthonormal_laguerre(2, -3.0, 0.5).is_err());
    }

    #[test]
    fn orthonormal_laguerre_constants() {
        assert_relative_eq!(orthonormal_laguerre(0, 0.0, 3.3).unwrap().value, 1.0);
        assert_relative_eq!(
            orthonormal_laguerre(0, 2.0, 0.7).unwrap().value,
            0.5f64.sqrt(),
            max_relative = 1e-14
        );
    }

    #[test]
    fn orthonormal_laguerre_unit_norm_on_truncated_interval() {
        // 64-node rule mapped onto [0, 80]
        let rule = gauss_legendre(64).unwrap().mapped(0.0, 80.0);
        let integral: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&x, &w)| {
                let l = orthonormal_laguerre(1, 1.0, x).unwrap().value;
                w * x * (-x).exp() * l * l
            })
            .sum();
        assert_relative_eq!(integral, 1.0, epsilon = 1e-10);
    }

    #[test]
    fn laguerre_orthonormality_matrix() {
        for &a in &[0.0, 1.0, 2.0, 3.0, 5.0] {
            for j in 0..=12 {
                for k in j..=12 {
                    let ip = laguerre_inner(j, k, a, 160);
                    let expected = if j == k { 1.0 } else { 0.0 };
                    assert!(
                        (ip - expected).abs() < 1e-9,
                        "a={a} j={j} k={k}: {ip}"
                    );
                }
            }
        }
    }

    fn gegenbauer_inner(j: u32, k: u32, alpha: f64) -> f64 {
        // y = cos θ removes the endpoint weight singularity
        let rule = gauss_legendre(200).unwrap().mapped(0.0, std::f64::consts::PI);
        rule.nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&t, &w)| {
                let y = t.cos();
                let s = t.sin();
                let cj = gegenbauer_orthonormal(j, alpha, y).unwrap().value;
                let ck = gegenbauer_orthonormal(k, alpha, y).unwrap().value;
                w * s.powf(2.0 * alpha) * cj * ck
            })
            .sum()
    }

    #[test]
    fn gegenbauer_constant_term() {
        let c = gegenbauer_orthonormal(0, 1.0, 0.3).unwrap();
        assert_relative_eq!(
            c.value,
            (2.0 / std::f64::consts::PI).sqrt(),
            max_relative = 1e-14
        );
        assert_eq!(gegenbauer_orthonormal(1, 0.75, 0.0).unwrap().value, 0.0);
    }

    #[test]
    fn gegenbauer_orthonormality_matrix() {
        assert_relative_eq!(gegenbauer_inner(2, 2, 1.5), 1.0, epsilon = 1e-10);
        for &alpha in &[0.5, 1.0, 1.5, 2.5] {
            for j in 0..=10 {
                for k in j..=10 {
                    let ip = gegenbauer_inner(j, k, alpha);
                    let expected = if j == k { 1.0 } else { 0.0 };
                    assert!(
                        (ip - expected).abs() < 1e-9,
                        "alpha={alpha} j={j} k={k}: {ip}"
                    );
                }
            }
        }
    }

    #[test]
    fn gegenbauer_domain() {
        assert!(gegenbauer_orthonormal(1, 1.0, 1.2).is_err());
        assert!(gegenbauer_orthonormal(1, -0.7, 0.2).is_err());
        assert!(gegenbauer_orthonormal(1, -0.25, 0.2).is_ok());
    }

    fn five_point(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for k in 0..8 {
            for &a in &[0.0, 1.0, 2.5] {
                for &x in &[0.37, 1.9, 6.2] {
                    let exact = assoc_laguerre(k, a, x).unwrap().derivative;
                    let fd = five_point(|t| laguerre(k, a, t), x, 1e-3);
                    if exact.abs() > 1e-3 {
                        assert_relative_eq!(exact, fd, max_relative = 1e-6);
                    }
                }
            }
            for &alpha in &[0.5, 1.5] {
                for &y in &[-0.63, 0.21, 0.8] {
                    let exact = gegenbauer_orthonormal(k, alpha, y).unwrap().derivative;
                    let fd = five_point(
                        |t| gegenbauer_orthonormal(k, alpha, t).unwrap().value,
                        y,
                        1e-4,
                    );
                    if exact.abs() > 1e-3 {
                        assert_relative_eq!(exact, fd, max_relative = 1e-6);
                    }
                }
            }
        }
    }

    #[test]
    fn second_derivative_consistent() {
        let (k, a, x) = (4, 2.0, 1.3);
        let fd = five_point(|t| laguerre_derivative(k, a, t), x, 1e-3);
        assert_relative_eq!(laguerre_second_derivative(k, a, x), fd, max_relative = 1e-8);
    }
}
