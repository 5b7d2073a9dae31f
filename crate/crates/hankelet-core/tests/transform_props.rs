//! Cross-module identities of the transform: how it interacts with
//! generalized translation, dilation, and convolution. Each identity is
//! checked through two independent computational routes.

use hankelet_core::radial::{RadialGrid, TestFamily};
use hankelet_core::special::{bessel_j_norm, Alpha};
use hankelet_core::{dilate, hankel_convolve, hankel_translate, HankelPlan};

#[test]
fn translation_multiplies_the_spectrum_by_a_bessel_factor() {
    // tau_y on the profile side is multiplication by j(y xi) on the
    // spectral side; alpha below and above 1/2 exercise both kernel
    // quadrature routes.
    for a in [0.0, 1.5] {
        let alpha = Alpha::new(a).unwrap();
        let grid = RadialGrid::with_default_resolution(alpha);
        let plan = HankelPlan::new(grid.clone());
        for fam in [TestFamily::gaussian(1.0).unwrap(), TestFamily::PolyGaussian] {
            let f = fam.realize(&grid);
            let hf = plan.transform(&f).unwrap();
            for y in [0.7, 2.0] {
                let shifted = hankel_translate(&f, y).unwrap();
                let h_shifted = plan.transform(&shifted).unwrap();
                let mut sup = 0.0f64;
                for ((&got, &h), &xi) in
                    h_shifted.samples().iter().zip(hf.samples()).zip(grid.nodes())
                {
                    let want = bessel_j_norm(alpha, y * xi) * h;
                    sup = sup.max((got - want).abs());
                }
                assert!(sup < 1e-6, "alpha {a}, {} shifted by {y}: sup {sup:.3e}", fam.tag());
            }
        }
    }
}

#[test]
fn transform_swaps_dilation_for_its_reciprocal() {
    // The profile is narrow enough that even the 1/4 dilation stays
    // decayed at the grid edge; a wider one would leak truncation error
    // into the forward integral.
    for a in [0.0, 1.0] {
        let alpha = Alpha::new(a).unwrap();
        let grid = RadialGrid::with_default_resolution(alpha);
        let plan = HankelPlan::new(grid.clone());
        let f = TestFamily::gaussian(0.5).unwrap().realize(&grid);
        let hf = plan.transform(&f).unwrap();
        for s in [0.25, 2.0, 8.0] {
            let left = plan.transform(&dilate(&f, s).unwrap()).unwrap();
            let right = dilate(&hf, 1.0 / s).unwrap();
            let mut sup = 0.0f64;
            let mut mag = 0.0f64;
            for (&l, &r) in left.samples().iter().zip(right.samples()) {
                sup = sup.max((l - r).abs());
                mag = mag.max(r.abs());
            }
            assert!(sup < 1e-6 * mag, "alpha {a}, scale {s}: sup {sup:.3e} of {mag:.3e}");
        }
    }
}

#[test]
fn convolution_agrees_with_the_translation_inner_product() {
    // f * g at x equals the mu-inner product of tau_x f with g; the left
    // side goes through three transforms, the right through the kernel
    // quadrature, so the two share no code path.
    let alpha = Alpha::new(1.0).unwrap();
    let grid = RadialGrid::with_default_resolution(alpha);
    let plan = HankelPlan::new(grid.clone());
    let f = TestFamily::gaussian(1.0).unwrap().realize(&grid);
    let g = TestFamily::gaussian(0.7).unwrap().realize(&grid);
    let conv = hankel_convolve(&plan, &f, &g).unwrap();
    for idx in [40usize, 170, 300] {
        let x = grid.nodes()[idx];
        let shifted = hankel_translate(&f, x).unwrap();
        let mut direct = 0.0;
        for ((w, a), b) in grid.weights().iter().zip(shifted.samples()).zip(g.samples()) {
            direct += w * a * b;
        }
        let got = conv.samples()[idx];
        assert!((got - direct).abs() < 1e-6, "x = {x}: {got} vs {direct}");
    }
}

#[test]
fn self_inversion_holds_on_every_battery_profile() {
    for a in [0.0, 0.5, 1.0, 2.5] {
        let grid = RadialGrid::with_default_resolution(Alpha::new(a).unwrap());
        let plan = HankelPlan::new(grid.clone());
        for fam in [
            TestFamily::gaussian(0.7).unwrap(),
            TestFamily::gaussian(1.0).unwrap(),
            TestFamily::gaussian(1.5).unwrap(),
            TestFamily::PolyGaussian,
        ] {
            let f = fam.realize(&grid);
            let back = plan.transform(&plan.transform(&f).unwrap()).unwrap();
            let mut sup = 0.0f64;
            let mut scale = 0.0f64;
            for (&b, &orig) in back.samples().iter().zip(f.samples()) {
                sup = sup.max((b - orig).abs());
                scale = scale.max(orig.abs());
            }
            assert!(sup < 1e-6 * scale, "alpha {a}, {}: sup {sup:.3e}", fam.tag());
        }
    }
}
