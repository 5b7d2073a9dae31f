//! Radial harmonic analysis for a one-parameter family of measures:
//! the symmetric transform built on normalized Bessel kernels, the
//! generalized translation it induces, continuous wavelet analysis in
//! scale space, and numerical certification of the uncertainty
//! inequalities that govern all of it.
//!
//! The crate is freestanding (alloc only); IO, configuration, and the
//! command line live in the companion crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod audit;
pub mod error;
pub mod hankel;
pub mod interp;
pub mod quad;
pub mod radial;
pub mod special;
pub mod translate;
pub mod wavelet;

pub use error::{Error, Result};
pub use hankel::{synthesize, HankelPlan};
pub use radial::{
    radial_interval_measure, scale_interval_measure, Evaluator, RadialFunction, RadialGrid,
    ScaleSpaceFunction, ScaleSpaceGrid, TestFamily,
};
pub use special::{bessel_j_norm, bessel_j_poisson, digamma, gamma, Alpha};
pub use translate::{dilate, hankel_convolve, hankel_translate, kernel_mass, translation_kernel};
pub use wavelet::{hwt_forward, hwt_point, hwt_point_direct, wavelet_atom, Wavelet, WaveletKind};
