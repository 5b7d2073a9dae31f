//! The Hankel transform as a dense quadrature plan on a radial grid.
//!
//! H(f)(s) = int_0^inf f(x) j_a(xs) dmu(x). The transform is its own
//! inverse on L^2 of the measure, and the plan realizes it as a cached
//! kernel matrix applied against the grid's quadrature weights, sharing
//! the same grid for both sides so that H(H(f)) lands back on f's nodes.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::radial::{RadialFunction, RadialGrid};
use crate::special::bessel_j_norm;

pub struct HankelPlan {
    grid: Arc<RadialGrid>,
    kernel: Vec<f64>, // row-major; kernel[i * n + j] = j_a(x_i x_j)
}

impl HankelPlan {
    pub fn new(grid: Arc<RadialGrid>) -> Self {
        let n = grid.len();
        let alpha = grid.alpha();
        let nodes = grid.nodes();
        let mut kernel = vec![0.0; n * n];
        // j_a(x_i x_j) is symmetric in (i, j); fill the upper triangle once
        for i in 0..n {
            for j in i..n {
                let v = bessel_j_norm(alpha, nodes[i] * nodes[j]);
                kernel[i * n + j] = v;
                kernel[j * n + i] = v;
            }
        }
        HankelPlan { grid, kernel }
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    fn check_grid(&self, f: &RadialFunction) -> Result<()> {
        if Arc::ptr_eq(self.grid(), f.grid()) || self.grid.same_layout(f.grid()) {
            Ok(())
        } else {
            Err(Error::Usage(format!(
                "profile lives on a different grid than the plan \
                 (plan: alpha {}, radius {}, {} nodes)",
                self.grid.alpha().get(),
                self.grid.radius(),
                self.grid.len()
            )))
        }
    }

    /// Applies the transform.
    ///
    /// The result carries an exact evaluator, the quadrature sum
    /// s -> sum_j w_j f(x_j) j_a(s x_j), so transforms can be dilated or
    /// translated off-grid without an interpolation step.
    pub fn transform(&self, f: &RadialFunction) -> Result<RadialFunction> {
        self.check_grid(f)?;
        let n = self.grid.len();
        let mut weighted = Vec::with_capacity(n);
        for (w, s) in self.grid.weights().iter().zip(f.samples()) {
            weighted.push(w * s);
        }
        let mut out = vec![0.0; n];
        for i in 0..n {
            let row = &self.kernel[i * n..(i + 1) * n];
            let mut acc = 0.0;
            for (k, ws) in row.iter().zip(&weighted) {
                acc += k * ws;
            }
            out[i] = acc;
        }
        let grid = self.grid.clone();
        let eval_grid = grid.clone();
        let alpha = grid.alpha();
        let mut result = RadialFunction::from_samples(grid, out)?;
        result = result.with_evaluator(Arc::new(move |s: f64| {
            let mut acc = 0.0;
            for (x, ws) in eval_grid.nodes().iter().zip(&weighted) {
                acc += ws * bessel_j_norm(alpha, s * x);
            }
            acc
        }));
        Ok(result)
    }
}

/// Quadrature synthesis sum_j w_j c_j j_a(x s_j) over the grid nodes s_j.
///
/// This is H applied to the coefficient profile, evaluated at a single
/// point; the scale-space layer leans on it for off-grid evaluations.
pub fn synthesize(grid: &RadialGrid, coeffs: &[f64], x: f64) -> f64 {
    assert_eq!(coeffs.len(), grid.len(), "coefficients from a different grid");
    let alpha = grid.alpha();
    let mut acc = 0.0;
    for ((w, s), c) in grid.weights().iter().zip(grid.nodes()).zip(coeffs) {
        acc += w * c * bessel_j_norm(alpha, x * s);
    }
    acc
}
