//! Quadrature primitives shared by the transform and audit layers.
//!
//! Everything here is deterministic: node generation is iteration-order
//! stable and the summations are plain left-to-right folds, so repeated
//! runs produce bit-identical results.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // used in no_std builds; std test builds shadow it
use num_traits::Float;

use crate::error::{Error, Result};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Newton iteration on the three-term recurrence. The rule integrates
/// polynomials of degree 2n - 1 exactly; nodes come out in increasing
/// order and symmetric about zero.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "a Gauss-Legendre rule needs at least two nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-like initial guess for the i-th root, counted from +1.
        let mut x = (core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        weights[i] = w;
        nodes[n - 1 - i] = x;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// P_n(x) and its derivative from the recurrence; n >= 2, |x| < 1.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (p0 - x * p1) / (1.0 - x * x);
    (p1, d)
}

/// Appends the reference rule mapped onto [a, b] to `nodes`/`weights`.
pub fn map_panel(
    ref_nodes: &[f64],
    ref_weights: &[f64],
    a: f64,
    b: f64,
    nodes: &mut Vec<f64>,
    weights: &mut Vec<f64>,
) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    for (t, w) in ref_nodes.iter().zip(ref_weights) {
        nodes.push(mid + half * t);
        weights.push(half * w);
    }
}

/// Gauss-Legendre panels in u = ln a covering [lo, hi].
///
/// Returns scale nodes a_q and du-weights; summing g(a_q) against the
/// weights approximates the scale-invariant integral of g(a) da / a.
pub fn log_panels(lo: f64, hi: f64, panels: usize, per_panel: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(lo > 0.0 && hi > lo, "log panels need 0 < lo < hi");
    assert!(panels >= 1);
    let (rn, rw) = gauss_legendre(per_panel);
    let u_lo = lo.ln();
    let u_hi = hi.ln();
    let step = (u_hi - u_lo) / panels as f64;
    let mut u_nodes = Vec::with_capacity(panels * per_panel);
    let mut weights = Vec::with_capacity(panels * per_panel);
    for p in 0..panels {
        let a = u_lo + step * p as f64;
        map_panel(&rn, &rw, a, a + step, &mut u_nodes, &mut weights);
    }
    let nodes = u_nodes.iter().map(|u| u.exp()).collect();
    (nodes, weights)
}

/// Tanh-sinh quadrature of `f` over the open interval (a, b).
///
/// The double-exponential substitution damps integrable endpoint
/// singularities, so profiles like sin(t)^(2q) with q > -1/2 need no
/// special casing. Node density doubles until two consecutive levels
/// agree to `tol` relative to max(1, |I|); if eight levels never
/// stabilize the integral is reported as non-convergent rather than
/// returned at reduced accuracy.
pub fn tanh_sinh<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    assert!(b > a && a.is_finite() && b.is_finite());
    let half = 0.5 * (b - a);
    let eval = |t: f64| -> f64 {
        let s = core::f64::consts::FRAC_PI_2 * t.sinh();
        // Distance from the nearer endpoint, kept cancellation-free:
        // mid + half*tanh(s) rounds onto the endpoint once the distance
        // drops below ~1e-16, yet for singular integrands those nodes
        // still carry visible mass. With an endpoint at zero the
        // abscissa is exact down to the underflow threshold.
        let delta = 2.0 * half / (1.0 + (2.0 * s.abs()).exp());
        let x = if t < 0.0 { a + delta } else { b - delta };
        if x <= a || x >= b || delta == 0.0 {
            return 0.0;
        }
        let c = s.cosh();
        let w = half * core::f64::consts::FRAC_PI_2 * t.cosh() / (c * c);
        if w == 0.0 || !w.is_finite() {
            return 0.0;
        }
        f(x) * w
    };

    // Weights underflow long before |t| = 4.5 for any finite interval.
    const T_MAX: f64 = 4.5;
    let mut h = 1.0;
    let mut sum = eval(0.0);
    let mut k = 1.0;
    while k <= T_MAX {
        sum += eval(k) + eval(-k);
        k += 1.0;
    }
    let mut prev = h * sum;
    for _ in 0..8 {
        h *= 0.5;
        let mut t = h;
        while t <= T_MAX {
            sum += eval(t) + eval(-t);
            t += 2.0 * h;
        }
        let cur = h * sum;
        if (cur - prev).abs() <= tol * cur.abs().max(1.0) {
            return Ok(cur);
        }
        prev = cur;
    }
    Err(Error::Numerical(format!(
        "tanh-sinh quadrature on [{a}, {b}] did not stabilize to {tol:e}"
    )))
}
