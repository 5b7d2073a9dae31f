//! Scale-space identities of the wavelet transform: norm preservation,
//! covariance under dilation, the Mellin weight exchange, the
//! logarithmic bookkeeping chain, and agreement between the spectral
//! and direct evaluation routes.

use std::sync::Arc;

use hankelet_core::audit::log_uncertainty_constant;
use hankelet_core::radial::{RadialGrid, ScaleSpaceGrid, TestFamily};
use hankelet_core::special::{bessel_j_norm, Alpha};
use hankelet_core::{dilate, hwt_forward, hwt_point, hwt_point_direct, wavelet_atom};
use hankelet_core::{HankelPlan, Wavelet};

fn mix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    ((z ^ (z >> 31)) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[test]
fn widening_the_scale_band_does_not_worsen_the_norm_defect() {
    // The missing norm is exactly the energy outside the band, so a
    // strictly larger band can only recover more of it; the slack term
    // covers roundoff on cells that sit within 1e-6 of exact.
    let alpha = Alpha::new(0.0).unwrap();
    let grid = RadialGrid::with_default_resolution(alpha);
    let plan = HankelPlan::new(grid.clone());
    let w = Wavelet::bessel_hat(&plan, 2, 2.0).unwrap();
    let f = TestFamily::gaussian(1.0).unwrap().realize(&grid);
    let nsq = f.l2_norm_sq();
    let narrow = ScaleSpaceGrid::with_default_window(alpha);
    let wide = ScaleSpaceGrid::new(
        narrow.position().clone(),
        1.0 / 512.0,
        512.0,
        22,
        8,
    )
    .unwrap();
    let d_narrow = (hwt_forward(&plan, &w, &f, &narrow).unwrap().l2_norm_sq() / nsq - 1.0).abs();
    let d_wide = (hwt_forward(&plan, &w, &f, &wide).unwrap().l2_norm_sq() / nsq - 1.0).abs();
    assert!(d_narrow < 1e-3, "narrow-band defect {d_narrow:.3e}");
    assert!(d_wide <= d_narrow + 1e-7, "{d_wide:.3e} vs {d_narrow:.3e}");
}

#[test]
fn transform_commutes_with_dilation_by_swapping_scale_and_position() {
    // W(D_l f)(a, x) = W(f)(a/l, l x): dilating the profile slides the
    // whole scale-space picture along the scale axis.
    let alpha = Alpha::new(0.5).unwrap();
    let grid = RadialGrid::with_default_resolution(alpha);
    let plan = HankelPlan::new(grid.clone());
    let w = Wavelet::bessel_hat(&plan, 2, 2.0).unwrap();
    let f = TestFamily::gaussian(1.0).unwrap().realize(&grid);
    let hf = plan.transform(&f).unwrap();
    let sup = hwt_forward(&plan, &w, &f, &ScaleSpaceGrid::with_default_window(alpha))
        .unwrap()
        .sup_abs();
    for lambda in [0.5, 2.0] {
        let hg = plan.transform(&dilate(&f, lambda).unwrap()).unwrap();
        for a in [0.35, 1.0, 2.7] {
            for x in [0.4, 1.3, 3.8] {
                let left = hwt_point(&w, &hg, a, x).unwrap();
                let right = hwt_point(&w, &hf, a / lambda, lambda * x).unwrap();
                assert!(
                    (left - right).abs() <= 1e-5 * sup,
                    "lambda {lambda}, (a, x) = ({a}, {x}): {left} vs {right}"
                );
            }
        }
    }
}

#[test]
fn scale_moments_trade_for_spectral_moments_at_the_mellin_rate() {
    // The a^s-weighted scale-space norm equals the xi^s-weighted
    // spectral norm times M(2s)/c, where M is the reciprocal-power
    // moment of the squared spectral profile; finite for k > s only.
    let alpha = Alpha::new(0.5).unwrap();
    let grid = RadialGrid::with_default_resolution(alpha);
    let plan = HankelPlan::new(grid.clone());
    let w = Wavelet::bessel_hat(&plan, 2, 2.0).unwrap();
    let f = TestFamily::gaussian(1.0).unwrap().realize(&grid);
    let hf = plan.transform(&f).unwrap();
    let wf = hwt_forward(&plan, &w, &f, &ScaleSpaceGrid::with_default_window(alpha)).unwrap();
    let s = 1.0;
    let lhs = wf.moment(2.0 * s, 0.0);
    let rhs = w.mellin_moment(2.0 * s).unwrap() / w.admissibility() * hf.power_moment(2.0 * s);
    assert!((lhs / rhs - 1.0).abs() < 1e-3, "s = 1: {lhs} vs {rhs}");
}

#[test]
fn mellin_exchange_at_the_half_power_needs_a_long_scale_band() {
    // For k = 1 the a^(1/2)-weighted integrand decays like 1/a^2, so
    // the band has to run out to 2^16 before truncation drops under
    // the tolerance; the bottom end is harmless.
    let alpha = Alpha::new(0.0).unwrap();
    let grid = RadialGrid::with_default_resolution(alpha);
    let plan = HankelPlan::new(grid.clone());
    let w = Wavelet::bessel_hat(&plan, 1, 2.0).unwrap();
    let f = TestFamily::gaussian(1.0).unwrap().realize(&grid);
    let hf = plan.transform(&f).unwrap();
    let window = RadialGrid::new(alpha, 128.0, 32, 32).unwrap();
    let band = ScaleSpaceGrid::new(window, 1.0 / 256.0, 65536.0, 30, 8).unwrap();
    let wf = hwt_forward(&plan, &w, &f, &band).unwrap();
    let s = 0.5;
    let lhs = wf.moment(2.0 * s, 0.0);
    let rhs = w.mellin_moment(2.0 * s).unwrap() / w.admissibility() * hf.power_moment(2.0 * s);
    assert!((lhs / rhs - 1.0).abs() < 1e-3, "s = 1/2: {lhs} vs {rhs}");
}

#[test]
fn log_moment_bookkeeping_matches_across_the_two_decompositions() {
    // The scale log moment of W equals the spectral log moment of H(f)
    // minus C_psi times the norm, so the scale-space log slack and the
    // spectral log slack are the same number written two ways.
    let alpha = Alpha::new(0.5).unwrap();
    let grid = RadialGrid::with_default_resolution(alpha);
    let plan = HankelPlan::new(grid.clone());
    let w = Wavelet::bessel_hat(&plan, 2, 2.0).unwrap();
    let f = TestFamily::gaussian(0.7).unwrap().realize(&grid);
    let hf = plan.transform(&f).unwrap();
    let nsq = f.l2_norm_sq();
    let wf = hwt_forward(&plan, &w, &f, &ScaleSpaceGrid::with_default_window(alpha)).unwrap();
    let c_alpha = log_uncertainty_constant(alpha);
    let slack_scale = wf.log_moment_scale() + wf.log_moment_position()
        - (c_alpha - w.log_scale_moment()) * nsq;
    let slack_spectral = wf.log_moment_position() + hf.log_moment() - c_alpha * nsq;
    assert!(
        (slack_scale - slack_spectral).abs() < 1e-3 * nsq,
        "{slack_scale} vs {slack_spectral}"
    );
}

#[test]
fn atom_spectrum_is_the_scaled_profile_under_a_bessel_modulation() {
    // H maps the atom at (a, x) to c^(-1/2) a^-(alpha+1) S(xi/a) j(x xi),
    // which is the formula the fast evaluation route integrates against;
    // transforming the synthesized atom checks the slow route against it.
    // Scales below ~1 stretch the atom past the grid edge and the
    // transform would truncate its tail, so both stay above it.
    for (a_param, scale, x) in [(0.5, 1.7, 2.3), (0.0, 1.4, 1.1)] {
        let alpha = Alpha::new(a_param).unwrap();
        let grid = RadialGrid::with_default_resolution(alpha);
        let plan = HankelPlan::new(grid.clone());
        let w = Wavelet::bessel_hat(&plan, 2, 2.0).unwrap();
        let atom = wavelet_atom(&w, scale, x).unwrap();
        let ha = plan.transform(&atom).unwrap();
        let amp = w.admissibility().sqrt().recip() * scale.powf(-(a_param + 1.0));
        let mut sup = 0.0f64;
        let mut mag = 0.0f64;
        for (&got, &xi) in ha.samples().iter().zip(grid.nodes()) {
            let want = amp * w.spectrum_eval(xi / scale) * bessel_j_norm(alpha, x * xi);
            sup = sup.max((got - want).abs());
            mag = mag.max(want.abs());
        }
        assert!(sup < 1e-6 * mag, "alpha {a_param}: sup {sup:.3e}, scale {mag:.3e}");
    }
}

#[test]
fn spectral_and_direct_evaluations_agree_at_random_points() {
    let alpha = Alpha::new(0.5).unwrap();
    let grid = RadialGrid::with_default_resolution(alpha);
    let plan = HankelPlan::new(grid.clone());
    let w = Wavelet::bessel_hat(&plan, 2, 2.0).unwrap();
    let f = TestFamily::PolyGaussian.realize(&grid);
    let hf = plan.transform(&f).unwrap();
    let sup = hwt_forward(&plan, &w, &f, &ScaleSpaceGrid::with_default_window(alpha))
        .unwrap()
        .sup_abs();
    let mut state = 0x5eed5eed5eed5eedu64;
    for _ in 0..6 {
        let a = 0.25 * (16.0f64).powf(mix(&mut state));
        let x = 6.0 * mix(&mut state);
        let fast = hwt_point(&w, &hf, a, x).unwrap();
        let slow = hwt_point_direct(&w, &f, a, x).unwrap();
        assert!(
            (fast - slow).abs() <= 1e-5 * sup,
            "(a, x) = ({a:.4}, {x:.4}): {fast} vs {slow}"
        );
    }
}

#[test]
fn atoms_live_on_the_grid_they_were_built_from() {
    let alpha = Alpha::new(1.0).unwrap();
    let grid = RadialGrid::with_default_resolution(alpha);
    let plan = HankelPlan::new(grid.clone());
    let w = Wavelet::bessel_hat(&plan, 2, 2.0).unwrap();
    let atom = wavelet_atom(&w, 1.3, 0.9).unwrap();
    assert!(Arc::ptr_eq(atom.grid(), &grid));
}

