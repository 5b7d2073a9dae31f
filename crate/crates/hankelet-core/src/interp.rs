//! Piecewise cubic Hermite interpolation.
//!
//! Two slope policies cover the two uses in this crate. Resampling a
//! sampled radial profile onto dilated abscissae wants shape
//! preservation, so it uses Fritsch-Butland limited slopes that cannot
//! overshoot near the support edge. The dense wavelet time table wants
//! raw accuracy on an oscillatory profile, so it uses five-point
//! finite-difference slopes on its uniform grid, which keep the Hermite
//! error at O(h^4) through the extrema a slope limiter would flatten.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;


use crate::error::{Error, Result};

enum Spacing {
    Uniform { x0: f64, h: f64 },
    Graded(Vec<f64>),
}

// Three-point endpoint slope, arguments ordered from the boundary
// inward. Clipped so a monotone data run stays monotone through the
// end interval.
fn edge_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if m * d0 <= 0.0 {
        0.0
    } else if d0 * d1 < 0.0 && m.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        m
    }
}

pub struct CubicHermite {
    spacing: Spacing,
    ys: Vec<f64>,
    slopes: Vec<f64>,
}

impl CubicHermite {
    /// Shape-preserving interpolant on a strictly increasing grid.
    ///
    /// Interior slopes are the centered three-point estimate clamped
    /// into the Fritsch-Carlson monotone box (zero at data extrema, and
    /// never more than three times the smaller neighboring secant), so
    /// monotone data produce a monotone interpolant while smooth flat
    /// stretches keep their second-order accuracy; a harmonic mean
    /// would bias slopes low near a flat extremum by a quarter of the
    /// local spacing. Endpoint slopes use the three-point one-sided
    /// rule clipped against the nearest secant.
    pub fn monotone(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        let n = xs.len();
        if n < 2 || n != ys.len() {
            return Err(Error::Usage(format!(
                "interpolation needs matching grids of at least two points, got {} and {}",
                n,
                ys.len()
            )));
        }
        for i in 1..n {
            if !(xs[i] > xs[i - 1]) {
                return Err(Error::Usage(
                    "interpolation abscissae must be strictly increasing".into(),
                ));
            }
        }
        let mut d = vec![0.0; n - 1];
        let mut h = vec![0.0; n - 1];
        for i in 0..n - 1 {
            h[i] = xs[i + 1] - xs[i];
            d[i] = (ys[i + 1] - ys[i]) / h[i];
        }
        let mut m = vec![0.0; n];
        m[0] = if n > 2 { edge_slope(h[0], h[1], d[0], d[1]) } else { d[0] };
        m[n - 1] = if n > 2 { edge_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]) } else { d[n - 2] };
        for i in 1..n - 1 {
            if d[i - 1] * d[i] <= 0.0 {
                m[i] = 0.0; // local extremum in the data
            } else {
                let c = (h[i] * d[i - 1] + h[i - 1] * d[i]) / (h[i - 1] + h[i]);
                let cap = 3.0 * d[i - 1].abs().min(d[i].abs());
                m[i] = c.clamp(-cap, cap);
            }
        }
        Ok(CubicHermite { spacing: Spacing::Graded(xs), ys, slopes: m })
    }

    /// High-order interpolant on a uniform grid starting at x0.
    ///
    /// Slopes from the five-point centered stencil (one-sided fourth
    /// order stencils at the edges); no shape constraint.
    pub fn uniform_smooth(x0: f64, h: f64, ys: Vec<f64>) -> Result<Self> {
        let n = ys.len();
        if n < 5 {
            return Err(Error::Usage(
                "the five-point slope stencil needs at least five samples".into(),
            ));
        }
        if !(h > 0.0) || !h.is_finite() || !x0.is_finite() {
            return Err(Error::Usage(format!(
                "uniform spacing must be positive and finite, got x0 = {x0}, h = {h}"
            )));
        }
        let mut m = vec![0.0; n];
        let inv12h = 1.0 / (12.0 * h);
        m[0] = (-25.0 * ys[0] + 48.0 * ys[1] - 36.0 * ys[2] + 16.0 * ys[3] - 3.0 * ys[4]) * inv12h;
        m[1] = (-3.0 * ys[0] - 10.0 * ys[1] + 18.0 * ys[2] - 6.0 * ys[3] + ys[4]) * inv12h;
        for i in 2..n - 2 {
            m[i] = (ys[i - 2] - 8.0 * ys[i - 1] + 8.0 * ys[i + 1] - ys[i + 2]) * inv12h;
        }
        m[n - 2] =
            (3.0 * ys[n - 1] + 10.0 * ys[n - 2] - 18.0 * ys[n - 3] + 6.0 * ys[n - 4] - ys[n - 5])
                * inv12h;
        m[n - 1] =
            (25.0 * ys[n - 1] - 48.0 * ys[n - 2] + 36.0 * ys[n - 3] - 16.0 * ys[n - 4]
                + 3.0 * ys[n - 5])
                * inv12h;
        Ok(CubicHermite { spacing: Spacing::Uniform { x0, h }, ys, slopes: m })
    }

    fn first(&self) -> f64 {
        match &self.spacing {
            Spacing::Uniform { x0, .. } => *x0,
            Spacing::Graded(xs) => xs[0],
        }
    }

    fn last(&self) -> f64 {
        match &self.spacing {
            Spacing::Uniform { x0, h } => x0 + h * (self.ys.len() - 1) as f64,
            Spacing::Graded(xs) => *xs.last().unwrap(),
        }
    }

    /// Evaluates the interpolant.
    ///
    /// Left of the first abscissa the value is held flat (radial
    /// profiles continue evenly through the origin); right of the last
    /// it is zero (profiles are compactly supported on their grid).
    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.first() {
            return self.ys[0];
        }
        if x >= self.last() {
            return 0.0;
        }
        let (i, xi, hi) = match &self.spacing {
            Spacing::Uniform { x0, h } => {
                let mut i = ((x - x0) / h) as usize;
                i = i.min(self.ys.len() - 2);
                (i, x0 + h * i as f64, *h)
            }
            Spacing::Graded(xs) => {
                let i = xs.partition_point(|&v| v <= x).saturating_sub(1).min(xs.len() - 2);
                (i, xs[i], xs[i + 1] - xs[i])
            }
        };
        let t = (x - xi) / hi;
        let t2 = t * t;
        let omt = 1.0 - t;
        let h00 = (1.0 + 2.0 * t) * omt * omt;
        let h10 = t * omt * omt;
        let h01 = t2 * (3.0 - 2.0 * t);
        let h11 = t2 * (t - 1.0);
        h00 * self.ys[i]
            + h10 * hi * self.slopes[i]
            + h01 * self.ys[i + 1]
            + h11 * hi * self.slopes[i + 1]
    }
}
