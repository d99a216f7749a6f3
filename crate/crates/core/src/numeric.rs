//! Small numerical building blocks: log-sum-exp, bracketed bisection,
//! golden-section search and adaptive Simpson quadrature.

use crate::error::{Error, Result};

/// `ln Σ wᵢ exp(xᵢ)` over entries with `wᵢ > 0`, shifted by the largest
/// exponent so that nothing overflows.
///
/// Returns `-inf` when every weight is zero.
pub fn log_sum_exp_weighted(xs: &[f64], weights: &[f64]) -> f64 {
    debug_assert_eq!(xs.len(), weights.len());
    let shift = xs
        .iter()
        .zip(weights)
        .filter(|(_, &w)| w > 0.0)
        .map(|(&x, _)| x)
        .fold(f64::NEG_INFINITY, f64::max);
    if shift == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let sum: f64 = xs
        .iter()
        .zip(weights)
        .filter(|(_, &w)| w > 0.0)
        .map(|(&x, &w)| w * (x - shift).exp())
        .sum();
    shift + sum.ln()
}

/// Bisection for a root of `f` on `[lo, hi]`.
///
/// `f(lo)` and `f(hi)` must have opposite signs (a zero at an endpoint is
/// returned as is). Iterates until the bracket is narrower than `tol`.
pub fn bisect<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a)?;
    let fb = f(b)?;
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::Numerical(format!(
            "no sign change on [{lo}, {hi}]: f = ({fa}, {fb})"
        )));
    }
    // 200 halvings exhaust f64 resolution for any finite bracket.
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if (b - a) <= tol || mid == a || mid == b {
            return Ok(mid);
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Maximizes a unimodal `f` on `[lo, hi]` by golden-section search.
/// Returns `(argmax, max)`.
pub fn golden_section_max<F>(f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a) > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    // Compare the final interior point against the endpoints so a maximum
    // sitting on the boundary of the bracket is not missed.
    let mid = 0.5 * (a + b);
    [(mid, f(mid)), (lo, f(lo)), (hi, f(hi))]
        .into_iter()
        .fold((mid, f64::NEG_INFINITY), |best, cand| {
            if cand.1 > best.1 {
                cand
            } else {
                best
            }
        })
}

/// Recursion cap of the adaptive Simpson rule.
pub const SIMPSON_MAX_DEPTH: u32 = 40;

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance
/// `tol`. Fails if some subinterval reaches the recursion cap without
/// meeting its share of the tolerance, or if `f` produces a non-finite value.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let mut failed = false;
    let value = simpson_step(&f, a, b, fa, fm, fb, whole, tol, SIMPSON_MAX_DEPTH, &mut failed);
    if failed || !value.is_finite() {
        return Err(Error::Numerical(format!(
            "adaptive quadrature did not converge on [{a}, {b}]"
        )));
    }
    Ok(value)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    failed: &mut bool,
) -> f64
where
    F: Fn(f64) -> f64,
{
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    if depth == 0 {
        *failed = true;
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, failed)
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, failed)
}

/// Integrates piecewise over consecutive `breaks`, splitting `tol` evenly.
pub fn integrate_pieces<F>(f: F, breaks: &[f64], tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if breaks.len() < 2 {
        return Ok(0.0);
    }
    let share = tol / (breaks.len() - 1) as f64;
    breaks
        .windows(2)
        .map(|w| adaptive_simpson(&f, w[0], w[1], share))
        .sum()
}
