//! Rectangles in scale space: their measure, the transform energy they
//! capture, and the concentration defect derived from it.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)] // used in no_std builds; std test builds shadow it
use num_traits::Float;

use crate::error::{Error, Result};
use crate::quad;
use crate::radial::{radial_interval_measure, scale_interval_measure, RadialFunction};
use crate::special::{bessel_j_norm, gamma, Alpha};
use crate::wavelet::Wavelet;

/// Axis-aligned rectangle [scale_lo, scale_hi] x [position_lo, position_hi].
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Rect {
    pub scale_lo: f64,
    pub scale_hi: f64,
    pub position_lo: f64,
    pub position_hi: f64,
}

impl Rect {
    pub fn new(scale_lo: f64, scale_hi: f64, position_lo: f64, position_hi: f64) -> Result<Rect> {
        let r = Rect { scale_lo, scale_hi, position_lo, position_hi };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.scale_lo > 0.0
            && self.scale_lo < self.scale_hi
            && self.scale_hi.is_finite()
            && self.position_lo >= 0.0
            && self.position_lo < self.position_hi
            && self.position_hi.is_finite();
        if ok {
            Ok(())
        } else {
            Err(Error::Usage(format!(
                "degenerate region: scales [{}, {}] must be positive and increasing, \
                 positions [{}, {}] nonnegative and increasing",
                self.scale_lo, self.scale_hi, self.position_lo, self.position_hi
            )))
        }
    }

    /// Product-measure content of the rectangle, in closed form.
    pub fn nu_measure(&self, alpha: Alpha) -> f64 {
        scale_interval_measure(alpha, self.scale_lo, self.scale_hi)
            * radial_interval_measure(alpha, self.position_lo, self.position_hi)
    }
}

/// Transform energy inside a rectangle:
/// int_rect |W f(a, x)|^2 dnu, by spectral quadrature from hf = H(f).
///
/// The scale rule refines logarithmically (a panel per 0.35 of ln a) and
/// the position rule linearly (a panel per 0.5 of x), so thin slabs stay
/// cheap and wide ones stay resolved. The kernel values j(x xi) over
/// position nodes are hoisted out of the scale loop; that matrix is what
/// keeps the cost at one Bessel call per (position, frequency) pair.
pub fn region_energy(wavelet: &Wavelet, hf: &RadialFunction, rect: &Rect) -> Result<f64> {
    rect.validate()?;
    let grid = wavelet.grid();
    if !alloc::sync::Arc::ptr_eq(grid, hf.grid()) && !grid.same_layout(hf.grid()) {
        return Err(Error::Usage("wavelet and transform live on different grids".into()));
    }
    let alpha = grid.alpha();
    let a_val = alpha.get();
    let mu_density = 1.0 / (2f64.powf(a_val) * gamma(a_val + 1.0));

    let span = rect.position_hi - rect.position_lo;
    let x_panels = ((span / 0.5).ceil() as usize).max(1);
    let (ref_n, ref_w) = quad::gauss_legendre(16);
    let mut x_nodes = Vec::with_capacity(x_panels * 16);
    let mut x_weights = Vec::with_capacity(x_panels * 16);
    for i in 0..x_panels {
        let lo = rect.position_lo + span * i as f64 / x_panels as f64;
        let hi = rect.position_lo + span * (i + 1) as f64 / x_panels as f64;
        quad::map_panel(&ref_n, &ref_w, lo, hi, &mut x_nodes, &mut x_weights);
    }
    for (w, x) in x_weights.iter_mut().zip(&x_nodes) {
        *w *= libm::pow(*x, 2.0 * a_val + 1.0) * mu_density;
    }

    let s_panels = (((rect.scale_hi / rect.scale_lo).ln() / 0.35).ceil() as usize).max(2);
    let (s_nodes, s_du) = quad::log_panels(rect.scale_lo, rect.scale_hi, s_panels, 8);

    // j(x xi) for every position node against every grid frequency.
    let n = grid.len();
    let nx = x_nodes.len();
    let mut bessel = alloc::vec![0.0f64; nx * n];
    for (i, &x) in x_nodes.iter().enumerate() {
        let row = &mut bessel[i * n..(i + 1) * n];
        for (b, xi) in row.iter_mut().zip(grid.nodes()) {
            *b = bessel_j_norm(alpha, x * xi);
        }
    }

    let c_half = wavelet.admissibility().sqrt();
    let mut coeff = alloc::vec![0.0f64; n];
    let mut energy = 0.0;
    for (&a, du) in s_nodes.iter().zip(&s_du) {
        let norm = libm::pow(a, -(a_val + 1.0)) / c_half;
        for ((c, (gw, xi)), h) in coeff
            .iter_mut()
            .zip(grid.weights().iter().zip(grid.nodes()))
            .zip(hf.samples())
        {
            *c = norm * gw * h * wavelet.spectrum_eval(xi / a);
        }
        let mut slab = 0.0;
        for (i, xw) in x_weights.iter().enumerate() {
            let row = &bessel[i * n..(i + 1) * n];
            let mut v = 0.0;
            for (b, c) in row.iter().zip(&coeff) {
                v += b * c;
            }
            slab += xw * v * v;
        }
        energy += du * libm::pow(a, 2.0 * a_val + 2.0) * slab;
    }
    if !energy.is_finite() {
        return Err(Error::Numerical("region energy is not finite".into()));
    }
    Ok(energy)
}

/// Energy fraction outside a rectangle, as the defect
/// eps = 1 - E_rect / |f|^2, clamped to [0, 1]. Quadrature noise can push
/// the raw value slightly outside; the flag records that it happened.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Concentration {
    pub energy: f64,
    pub epsilon: f64,
    pub clamped: bool,
}

pub fn concentration(
    wavelet: &Wavelet,
    hf: &RadialFunction,
    norm_sq: f64,
    rect: &Rect,
) -> Result<Concentration> {
    if !(norm_sq > 1e-24) {
        return Err(Error::Domain(
            "profile norm is numerically zero; concentration is undefined".into(),
        ));
    }
    let energy = region_energy(wavelet, hf, rect)?;
    let raw = 1.0 - energy / norm_sq;
    let epsilon = raw.clamp(0.0, 1.0);
    Ok(Concentration { energy, epsilon, clamped: raw != epsilon })
}

/// A far-field rectangle sized so its measure is one tenth of the
/// annihilation threshold c / |psi|^2: scales in [1, 2], positions
/// starting at 8, outer edge solved from the closed-form measure.
pub fn far_field_rect(alpha: Alpha, admissibility: f64, psi_norm_sq: f64) -> Result<Rect> {
    if !(admissibility > 0.0) || !(psi_norm_sq > 0.0) {
        return Err(Error::Domain("admissibility and norm must be positive".into()));
    }
    let a = alpha.get();
    let e = 2.0 * a + 2.0;
    let threshold = admissibility / psi_norm_sq;
    let scale_part = (2f64.powf(e) - 1.0) / e;
    let radial_gap = 0.1 * threshold / scale_part * 2f64.powf(a + 1.0) * gamma(a + 2.0);
    let hi = (8f64.powf(e) + radial_gap).powf(1.0 / e);
    Rect::new(1.0, 2.0, 8.0, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hankel::HankelPlan;
    use crate::radial::{RadialGrid, TestFamily};

    #[test]
    fn measure_matches_a_hand_integral() {
        let r = Rect::new(1.0, 2.0, 0.0, 3.0).unwrap();
        // alpha 0: scale part (4 - 1)/2, radial part 9/2
        let got = r.nu_measure(Alpha::new(0.0).unwrap());
        assert!((got - 1.5 * 4.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_rectangles_are_rejected() {
        assert!(Rect::new(0.0, 1.0, 0.0, 1.0).is_err());
        assert!(Rect::new(2.0, 1.0, 0.0, 1.0).is_err());
        assert!(Rect::new(0.5, 1.0, 3.0, 2.0).is_err());
        assert!(Rect::new(0.5, 1.0, -1.0, 2.0).is_err());
    }

    #[test]
    fn far_field_rect_hits_the_target_measure() {
        for a in [0.0, 0.5, 2.5] {
            let alpha = Alpha::new(a).unwrap();
            let r = far_field_rect(alpha, 1.0 / 32.0, 1.0 / 50.0).unwrap();
            let want = 0.1 * (1.0 / 32.0) * 50.0;
            // the measure recomputes x_hi^(2a+2) - x_lo^(2a+2), whose
            // rounding noise grows with the power; 1e-8 covers a = 2.5
            assert!((r.nu_measure(alpha) - want).abs() < 1e-8 * want, "alpha {a}");
        }
    }

    #[test]
    fn band_wide_energy_recovers_the_norm() {
        let grid = RadialGrid::with_default_resolution(Alpha::new(0.5).unwrap());
        let plan = HankelPlan::new(grid.clone());
        let w = Wavelet::bessel_hat(&plan, 2, 1.0).unwrap();
        let f = TestFamily::gaussian(1.0).unwrap().realize(&grid);
        let hf = plan.transform(&f).unwrap();
        // fine scales smear mass past the spectral radius, so the
        // near-total rectangle must extend well beyond it in position
        let rect = Rect::new(1.0 / 256.0, 256.0, 0.0, 48.0).unwrap();
        let e = region_energy(&w, &hf, &rect).unwrap();
        let nsq = f.l2_norm_sq();
        assert!((e - nsq).abs() < 1e-3 * nsq, "{e} vs {nsq}");
        let c = concentration(&w, &hf, nsq, &rect).unwrap();
        assert!(c.epsilon < 2e-3);
    }

    #[test]
    fn energy_is_monotone_in_the_rectangle() {
        let grid = RadialGrid::with_default_resolution(Alpha::new(1.0).unwrap());
        let plan = HankelPlan::new(grid.clone());
        let w = Wavelet::bessel_hat(&plan, 2, 1.0).unwrap();
        let f = TestFamily::gaussian(0.7).unwrap().realize(&grid);
        let hf = plan.transform(&f).unwrap();
        let small = Rect::new(0.5, 2.0, 0.0, 3.0).unwrap();
        let big = Rect::new(0.25, 4.0, 0.0, 6.0).unwrap();
        let e_small = region_energy(&w, &hf, &small).unwrap();
        let e_big = region_energy(&w, &hf, &big).unwrap();
        assert!(e_small > 0.0);
        assert!(e_small <= e_big * (1.0 + 1e-9));
    }
}
