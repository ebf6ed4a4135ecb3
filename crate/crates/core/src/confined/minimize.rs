//! Derivative-free one-dimensional minimisation.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
    /// Final bracket `[lo, hi]` containing `x`.
    pub bracket: (f64, f64),
}

/// Brent's method (golden section with parabolic steps) on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `2·(abs_tol + rel_tol·|x|)`.
pub fn brent<F>(mut f: F, lo: f64, hi: f64, abs_tol: f64, rel_tol: f64) -> Result<Minimum>
where
    F: FnMut(f64) -> Result<f64>,
{
    const GOLD: f64 = 0.381_966_011_250_105_1;
    let (mut a, mut b) = if lo < hi { (lo, hi) } else { (hi, lo) };
    let mut x = a + GOLD * (b - a);
    let mut w = x;
    let mut v = x;
    let mut fx = f(x)?;
    let mut fw = fx;
    let mut fv = fx;
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    let mut evaluations = 1;
    for _ in 0..500 {
        let mid = 0.5 * (a + b);
        let tol1 = abs_tol + rel_tol * x.abs();
        let tol2 = 2.0 * tol1;
        if (x - mid).abs() <= tol2 - 0.5 * (b - a) {
            return Ok(Minimum { x, value: fx, evaluations, bracket: (a, b) });
        }
        let mut golden = true;
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let e_prev = e;
            if p.abs() < (0.5 * q * e_prev).abs() && p > q * (a - x) && p < q * (b - x) {
                e = d;
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(mid - x);
                }
                golden = false;
            }
        }
        if golden {
            e = if x >= mid { a - x } else { b - x };
            d = GOLD * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = f(u)?;
        evaluations += 1;
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            fv = fw;
            w = x;
            fw = fx;
            x = u;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                fv = fw;
                w = u;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Err(Error::Convergence(format!(
        "Brent iteration limit reached near x = {x}, bracket [{a}, {b}]"
    )))
}

/// Options for [`scan_minimize`].
#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    pub scan_points: usize,
    pub max_expansions: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { scan_points: 24, max_expansions: 8, abs_tol: 1e-10, rel_tol: 1e-8 }
    }
}

/// Global search on a positive interval: a coarse logarithmic scan locates the
/// lowest sample, the interval is doubled outward while that sample sits on an
/// edge, and Brent's method refines between the neighbouring samples.
pub fn scan_minimize<F>(mut f: F, lo: f64, hi: f64, opts: ScanOptions) -> Result<Minimum>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::domain(format!("invalid scan interval [{lo}, {hi}]")));
    }
    let k = opts.scan_points.max(3);
    let (mut lo, mut hi) = (lo, hi);
    let mut evaluations = 0;
    for expansion in 0..=opts.max_expansions {
        let ratio = (hi / lo).powf(1.0 / (k - 1) as f64);
        let xs: Vec<f64> = (0..k).map(|i| lo * ratio.powi(i as i32)).collect();
        let mut best = 0;
        let mut best_val = f64::INFINITY;
        for (i, &x) in xs.iter().enumerate() {
            let v = f(x)?;
            evaluations += 1;
            if v < best_val {
                best_val = v;
                best = i;
            }
        }
        if best > 0 && best < k - 1 {
            let mut m = brent(&mut f, xs[best - 1], xs[best + 1], opts.abs_tol, opts.rel_tol)?;
            m.evaluations += evaluations;
            if m.value > best_val {
                // parabolic search landed in a worse basin; keep the sample
                return Err(Error::Convergence(format!(
                    "refinement rose above the scanned minimum at x = {}",
                    xs[best]
                )));
            }
            return Ok(m);
        }
        if expansion == opts.max_expansions {
            break;
        }
        if best == 0 {
            lo *= 0.5;
        } else {
            hi *= 2.0;
        }
    }
    Err(Error::Convergence(format!(
        "minimum stayed on the edge of the search interval [{lo}, {hi}] after {} expansions",
        opts.max_expansions
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn quadratic_minimum() {
        let m = brent(|x| Ok((x - 1.234).powi(2) + 3.0), 0.0, 5.0, 1e-12, 1e-10).unwrap();
        assert!((m.x - 1.234).abs() < 1e-8);
        assert!((m.value - 3.0).abs() < 1e-14);
    }

    #[test]
    fn non_smooth_minimum() {
        let m = brent(|x| Ok((x - 0.3).abs()), -1.0, 2.0, 1e-12, 1e-10).unwrap();
        assert!((m.x - 0.3).abs() < 1e-9);
    }

    #[test]
    fn scan_expands_toward_small_values() {
        let m = scan_minimize(|x| Ok((x.ln() - (0.01f64).ln()).powi(2)), 0.2, 5.0, ScanOptions::default()).unwrap();
        assert!((m.x - 0.01).abs() < 1e-8);
    }

    #[test]
    fn scan_expands_toward_large_values() {
        let m = scan_minimize(|x| Ok((x - 30.0).powi(2)), 0.2, 5.0, ScanOptions::default()).unwrap();
        assert!((m.x - 30.0).abs() < 1e-6);
    }

    #[test]
    fn exhausted_bracket_is_an_error() {
        let r = scan_minimize(|x| Ok(x), 0.2, 5.0, ScanOptions::default());
        assert!(matches!(r, Err(Error::Convergence(_))));
    }

    #[test]
    fn errors_propagate() {
        let r = brent(|_| Err(Error::Numeric("nan".into())), 0.0, 1.0, 1e-10, 1e-8);
        assert!(matches!(r, Err(Error::Numeric(_))));
    }

    proptest! {
        #[test]
        fn finds_quartic_minimum(c in 0.3f64..4.0, s in 0.1f64..10.0) {
            let m = scan_minimize(|x| Ok(s * (x - c).powi(4) + (x - c).powi(2)), 0.2, 5.0, ScanOptions::default()).unwrap();
            prop_assert!((m.x - c).abs() < 1e-6 * c.max(1.0));
            prop_assert!(m.bracket.0 <= m.x && m.x <= m.bracket.1);
        }
    }
}
