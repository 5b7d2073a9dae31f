//! Numerical certification of uncertainty inequalities.
//!
//! Every statement the library can certify is an `InequalityId`. A check
//! takes prepared cell data (a profile, its transform, optionally a
//! wavelet and its scale-space transform), evaluates both sides of the
//! statement by quadrature, and reports the margin against an explicit
//! constant. Nothing is asserted: a violated bound produces a `Fail`
//! entry, an unmet precondition produces `Refused`, and parameter ranges
//! without a certified constant produce `Info`.
//!
//! Sign conventions: for lower bounds the margin is lhs - rhs, for upper
//! bounds rhs - lhs, so passing always means margin >= -tol * scale. The
//! ratio is arranged so that values >= 1 mean the bound holds.

pub mod battery;
pub mod region;
pub mod report;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;

#[allow(unused_imports)] // used in no_std builds; std test builds shadow it
use num_traits::Float;

use crate::error::{Error, Result};
use crate::hankel::HankelPlan;
use crate::radial::{RadialFunction, ScaleSpaceFunction};
use crate::special::{digamma, gamma, Alpha};
use crate::wavelet::Wavelet;

pub use battery::{
    plan_cells, prepare, run_battery, run_cell, BatteryConfig, CellKind, CheckSpec,
    SharedArtifacts, WaveletSpec,
};
pub use region::{concentration, far_field_rect, region_energy, Concentration, Rect};
pub use report::{AuditEntry, AuditReport, EntryParams, EntryStatus, Summary};

const LN_2: f64 = core::f64::consts::LN_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "SCREAMING_SNAKE_CASE"))]
pub enum InequalityId {
    /// |x f|^2 + |xi Hf|^2 >= (2 alpha + 2) |f|^2.
    HeisHankelSum,
    /// |x f| |xi Hf| >= (alpha + 1) |f|^2; Gaussians saturate it.
    HeisHankelProd,
    /// |x f| |xi Hf| >= 2 exp(digamma((alpha+1)/2)) |f|^2.
    HeisHankelDigamma,
    /// int ln(x)|f|^2 + int ln(xi)|Hf|^2 >= (ln 2 + digamma((alpha+1)/2)) |f|^2.
    LogHankel,
    /// Entropy sum of |f|^2 and |Hf|^2 against its sharp Gaussian value.
    EntropyHankel,
    /// |xi^-beta Hf| <= 2^-beta Gamma((alpha-beta+1)/2)/Gamma((alpha+beta+1)/2) |x^beta f|.
    PittHankel,
    /// |x W|^2 + |xi Hf|^2 >= (2 alpha + 2) |f|^2, position spread in scale space.
    HeisMixedSum,
    /// |x W| |xi Hf| >= (alpha + 1) |f|^2.
    HeisMixedProd,
    /// |a^-beta W| <= sqrt(M(-2 beta)/c) 2^-beta Gamma-ratio |x^beta W|.
    PittHwt,
    /// int (ln a + ln x) |W|^2 >= (ln 2 + digamma((alpha+1)/2) - C_psi) |f|^2.
    LogHwt,
    /// |a W| |x W| >= exp(ln 2 + digamma((alpha+1)/2) - C_psi) |f|^2.
    HeisHwtLog,
    /// Scale-space entropy >= |f|^2 ln(c / (|psi|^2 |f|^2)); needs |psi|^2 <= c.
    EntropyHwt,
    /// |a^s W|^2 + |x^beta W|^2 >= C_{s,alpha,beta} |f|^2; needs |psi|^2 <= c.
    HeisHwtSum,
    /// |a^s W|^beta |x^beta W|^s against the product form of the same constant.
    HeisHwtProd,
    /// |a W| |x W| >= sqrt(M(2)/c) (alpha + 1) |f|^2; needs the second
    /// Mellin moment, i.e. spectral order > 1. Certified only at s = beta = 1.
    HeisHwtMellin,
    /// sup |W| <= sqrt(|f|^2 |psi|^2 / c).
    LinfBound,
    /// |W|_p <= (|psi|^2/c)^(1/2 - 1/p) |f| for p >= 2.
    LiebLp,
    /// nu(Sigma) >= (c/|psi|^2)(1 - eps) for the region's concentration defect eps.
    DonohoStark,
    /// nu(Sigma) >= (c/|psi|^2)(1 - eps)^(p/(p-2)) for p > 2.
    LiebSupport,
    /// Energy outside Sigma >= (1 - (|psi|^2/c) nu(Sigma)) |f|^2;
    /// needs nu(Sigma) below the annihilation threshold.
    Annihilation,
    /// 0 <= (x^2 - x^p)/(p - 2) <= -x^2 ln x on [0, 1) for p in (2, 3].
    ScalarEntropyLemma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckClass {
    /// Runs on a profile and its transform alone.
    Hankel,
    /// Needs a wavelet and the scale-space transform.
    Wavelet,
    /// Pure real-variable statement; no cell data at all.
    Scalar,
}

const ID_NAMES: [(InequalityId, &str); 21] = [
    (InequalityId::HeisHankelSum, "HEIS_HANKEL_SUM"),
    (InequalityId::HeisHankelProd, "HEIS_HANKEL_PROD"),
    (InequalityId::HeisHankelDigamma, "HEIS_HANKEL_DIGAMMA"),
    (InequalityId::LogHankel, "LOG_HANKEL"),
    (InequalityId::EntropyHankel, "ENTROPY_HANKEL"),
    (InequalityId::PittHankel, "PITT_HANKEL"),
    (InequalityId::HeisMixedSum, "HEIS_MIXED_SUM"),
    (InequalityId::HeisMixedProd, "HEIS_MIXED_PROD"),
    (InequalityId::PittHwt, "PITT_HWT"),
    (InequalityId::LogHwt, "LOG_HWT"),
    (InequalityId::HeisHwtLog, "HEIS_HWT_LOG"),
    (InequalityId::EntropyHwt, "ENTROPY_HWT"),
    (InequalityId::HeisHwtSum, "HEIS_HWT_SUM"),
    (InequalityId::HeisHwtProd, "HEIS_HWT_PROD"),
    (InequalityId::HeisHwtMellin, "HEIS_HWT_MELLIN"),
    (InequalityId::LinfBound, "LINF_BOUND"),
    (InequalityId::LiebLp, "LIEB_LP"),
    (InequalityId::DonohoStark, "DONOHO_STARK"),
    (InequalityId::LiebSupport, "LIEB_SUPPORT"),
    (InequalityId::Annihilation, "ANNIHILATION"),
    (InequalityId::ScalarEntropyLemma, "SCALAR_ENTROPY_LEMMA"),
];

impl InequalityId {
    pub fn all() -> impl Iterator<Item = InequalityId> {
        ID_NAMES.iter().map(|(id, _)| *id)
    }

    pub fn as_str(self) -> &'static str {
        ID_NAMES.iter().find(|(id, _)| *id == self).map(|(_, s)| *s).unwrap()
    }

    pub fn class(self) -> CheckClass {
        use InequalityId::*;
        match self {
            HeisHankelSum | HeisHankelProd | HeisHankelDigamma | LogHankel | EntropyHankel
            | PittHankel => CheckClass::Hankel,
            ScalarEntropyLemma => CheckClass::Scalar,
            _ => CheckClass::Wavelet,
        }
    }

    /// True when the statement bounds the left side from above.
    pub fn is_upper_bound(self) -> bool {
        use InequalityId::*;
        matches!(self, PittHankel | PittHwt | LiebLp | LinfBound)
    }
}

impl core::fmt::Display for InequalityId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl core::str::FromStr for InequalityId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ID_NAMES
            .iter()
            .find(|(_, name)| *name == s)
            .map(|(id, _)| *id)
            .ok_or_else(|| Error::Usage(format!("unknown inequality id {s:?}")))
    }
}

/// Sharp constant in the product-form spread bound, (alpha + 1).
pub fn heisenberg_product_constant(alpha: Alpha) -> f64 {
    alpha.get() + 1.0
}

/// Alternative product-form constant 2 exp(digamma((alpha+1)/2)); weaker
/// than (alpha + 1) everywhere but asymptotically equivalent.
pub fn heisenberg_digamma_constant(alpha: Alpha) -> f64 {
    2.0 * digamma((alpha.get() + 1.0) / 2.0).exp()
}

/// Constant in the logarithmic uncertainty bound, ln 2 + digamma((alpha+1)/2).
pub fn log_uncertainty_constant(alpha: Alpha) -> f64 {
    LN_2 + digamma((alpha.get() + 1.0) / 2.0)
}

/// Sharp constant in the weighted-norm transform bound,
/// 2^-beta Gamma((alpha-beta+1)/2) / Gamma((alpha+beta+1)/2), for
/// 0 <= beta < alpha + 1.
pub fn pitt_constant(alpha: Alpha, beta: f64) -> Result<f64> {
    let a = alpha.get();
    if !(beta >= 0.0) || !(beta < a + 1.0) {
        return Err(Error::Domain(format!(
            "weight exponent must satisfy 0 <= beta < alpha + 1 = {}, got {beta}",
            a + 1.0
        )));
    }
    Ok(2f64.powf(-beta) * gamma((a - beta + 1.0) / 2.0) / gamma((a + beta + 1.0) / 2.0))
}

/// Constant C_{s,alpha,beta} in the scale-space sum bound, for a wavelet
/// with admissibility-to-norm ratio r = c / |psi|^2 >= 1:
///
///   C = ((alpha+1)(s+beta)/(s beta))
///       * exp(-1 + (s beta / ((alpha+1)(s+beta)))
///             * ln(2^(alpha+2) s beta Gamma(alpha+1)
///                  / (Gamma((alpha+1)/s) Gamma((alpha+1)/beta)) * r))
pub fn concentration_sum_constant(alpha: Alpha, s: f64, beta: f64, ratio: f64) -> Result<f64> {
    for (name, v) in [("s", s), ("beta", beta)] {
        if !(0.05..=20.0).contains(&v) {
            return Err(Error::Domain(format!(
                "spread exponent {name} must lie in [0.05, 20], got {v}"
            )));
        }
    }
    if !(ratio > 0.0) || !ratio.is_finite() {
        return Err(Error::Domain(format!(
            "admissibility-to-norm ratio must be positive and finite, got {ratio}"
        )));
    }
    let a = alpha.get();
    let front = (a + 1.0) * (s + beta) / (s * beta);
    let exponent_weight = s * beta / ((a + 1.0) * (s + beta));
    let log_arg = 2f64.powf(a + 2.0) * s * beta * gamma(a + 1.0)
        / (gamma((a + 1.0) / s) * gamma((a + 1.0) / beta))
        * ratio;
    Ok(front * (-1.0 + exponent_weight * log_arg.ln()).exp())
}

/// Prepared inputs for one audit cell: a profile, its transform, and for
/// scale-space statements the wavelet with its transform of f.
pub struct CellData<'a> {
    pub plan: &'a HankelPlan,
    pub f: &'a RadialFunction,
    pub hf: &'a RadialFunction,
    pub norm_sq: f64,
    pub wavelet: Option<&'a Arc<Wavelet>>,
    pub wf: Option<&'a ScaleSpaceFunction>,
}

/// Resolved parameters for a single check invocation.
#[derive(Debug, Clone, Default)]
pub struct CheckRequest {
    pub beta: Option<f64>,
    pub s: Option<f64>,
    pub p: Option<f64>,
    pub region: Option<Rect>,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub ratio: Option<f64>,
    pub margin: Option<f64>,
    pub status: EntryStatus,
    pub notes: String,
    pub params: EntryParams,
}

fn decided(lhs: f64, rhs: f64, upper: bool, floor: f64, tol: f64, params: EntryParams) -> CheckResult {
    let margin = if upper { rhs - lhs } else { lhs - rhs };
    let denom = if upper { lhs } else { rhs };
    let scale = lhs.abs().max(rhs.abs()).max(floor);
    let status = if margin >= -tol * scale { EntryStatus::Pass } else { EntryStatus::Fail };
    CheckResult {
        lhs: Some(lhs),
        rhs: Some(rhs),
        ratio: if denom > 0.0 { Some(if upper { rhs / lhs } else { lhs / rhs }) } else { None },
        margin: Some(margin),
        status,
        notes: String::new(),
        params,
    }
}

fn refused(notes: String, params: EntryParams) -> CheckResult {
    CheckResult {
        lhs: None,
        rhs: None,
        ratio: None,
        margin: None,
        status: EntryStatus::Refused,
        notes,
        params,
    }
}

/// Runs one inequality check against prepared cell data. `tol` is the
/// relative slack granted to the margin; preconditions and uncertified
/// parameter ranges surface as `Refused` / `Info` entries, while broken
/// invariants (wrong grids, out-of-domain exponents) are hard errors.
pub fn run_check(cell: &CellData, id: InequalityId, req: &CheckRequest, tol: f64) -> Result<CheckResult> {
    let alpha = cell.plan.grid().alpha();
    let a = alpha.get();
    let nsq = cell.norm_sq;
    if !(nsq > 1e-24) {
        return Err(Error::Domain(
            "profile norm is numerically zero; nothing can be certified against it".into(),
        ));
    }
    let need_wavelet = || -> Result<(&Arc<Wavelet>, &ScaleSpaceFunction)> {
        match (cell.wavelet, cell.wf) {
            (Some(w), Some(wf)) => Ok((w, wf)),
            _ => Err(Error::Usage(format!(
                "{id} needs a wavelet and a scale-space transform in its cell"
            ))),
        }
    };

    use InequalityId::*;
    let r = match id {
        HeisHankelSum => {
            let lhs = cell.f.power_moment(2.0) + cell.hf.power_moment(2.0);
            let rhs = (2.0 * a + 2.0) * nsq;
            decided(lhs, rhs, false, nsq, tol, EntryParams::default())
        }
        HeisHankelProd => {
            let lhs = (cell.f.power_moment(2.0) * cell.hf.power_moment(2.0)).sqrt();
            let rhs = heisenberg_product_constant(alpha) * nsq;
            decided(lhs, rhs, false, nsq, tol, EntryParams::default())
        }
        HeisHankelDigamma => {
            let lhs = (cell.f.power_moment(2.0) * cell.hf.power_moment(2.0)).sqrt();
            let rhs = heisenberg_digamma_constant(alpha) * nsq;
            decided(lhs, rhs, false, nsq, tol, EntryParams::default())
        }
        LogHankel => {
            let lhs = cell.f.log_moment() + cell.hf.log_moment();
            let rhs = log_uncertainty_constant(alpha) * nsq;
            decided(lhs, rhs, false, nsq, tol, EntryParams::default())
        }
        EntropyHankel => {
            let lhs = cell.f.entropy() + cell.hf.entropy();
            let rhs = ((2.0 * a + 2.0) * (1.0 - LN_2) - 2.0 * nsq.ln()) * nsq;
            decided(lhs, rhs, false, nsq, tol, EntryParams::default())
        }
        PittHankel => {
            let beta = req.beta.ok_or_else(|| {
                Error::Domain("the weighted-norm bound needs a weight exponent beta".into())
            })?;
            let c = pitt_constant(alpha, beta)?;
            let lhs = cell.hf.power_moment(-2.0 * beta).sqrt();
            let rhs = c * cell.f.power_moment(2.0 * beta).sqrt();
            let params = EntryParams { beta: Some(beta), ..EntryParams::default() };
            decided(lhs, rhs, true, nsq.sqrt(), tol, params)
        }
        HeisMixedSum => {
            let (_, wf) = need_wavelet()?;
            let lhs = wf.moment(0.0, 2.0) + cell.hf.power_moment(2.0);
            let rhs = (2.0 * a + 2.0) * nsq;
            decided(lhs, rhs, false, nsq, tol, EntryParams::default())
        }
        HeisMixedProd => {
            let (_, wf) = need_wavelet()?;
            let lhs = (wf.moment(0.0, 2.0) * cell.hf.power_moment(2.0)).sqrt();
            let rhs = heisenberg_product_constant(alpha) * nsq;
            decided(lhs, rhs, false, nsq, tol, EntryParams::default())
        }
        PittHwt => {
            let (w, wf) = need_wavelet()?;
            let beta = req.beta.ok_or_else(|| {
                Error::Domain("the weighted-norm bound needs a weight exponent beta".into())
            })?;
            let c = pitt_constant(alpha, beta)?;
            let mell = w.mellin_moment(-2.0 * beta)?;
            let factor = (mell / w.admissibility()).sqrt() * c;
            let lhs = wf.moment(-2.0 * beta, 0.0).sqrt();
            let rhs = factor * wf.moment(0.0, 2.0 * beta).sqrt();
            let params = EntryParams { beta: Some(beta), ..EntryParams::default() };
            decided(lhs, rhs, true, nsq.sqrt(), tol, params)
        }
        LogHwt => {
            let (w, wf) = need_wavelet()?;
            let lhs = wf.log_moment_scale() + wf.log_moment_position();
            let rhs = (log_uncertainty_constant(alpha) - w.log_scale_moment()) * nsq;
            decided(lhs, rhs, false, nsq, tol, EntryParams::default())
        }
        HeisHwtLog => {
            let (w, wf) = need_wavelet()?;
            let lhs = (wf.moment(2.0, 0.0) * wf.moment(0.0, 2.0)).sqrt();
            let rhs = (log_uncertainty_constant(alpha) - w.log_scale_moment()).exp() * nsq;
            decided(lhs, rhs, false, nsq, tol, EntryParams::default())
        }
        EntropyHwt => {
            let (w, wf) = need_wavelet()?;
            if w.norm_sq() > w.admissibility() {
                refused(
                    format!(
                        "wavelet norm^2 {} exceeds its admissibility constant {}; \
                         the entropy bound assumes the reverse ordering",
                        w.norm_sq(),
                        w.admissibility()
                    ),
                    EntryParams::default(),
                )
            } else {
                let lhs = wf.entropy();
                let rhs = nsq * (w.admissibility() / (w.norm_sq() * nsq)).ln();
                decided(lhs, rhs, false, nsq, tol, EntryParams::default())
            }
        }
        HeisHwtSum => {
            let (w, wf) = need_wavelet()?;
            let s = req.s.unwrap_or(1.0);
            let beta = req.beta.unwrap_or(1.0);
            if w.norm_sq() > w.admissibility() {
                refused(
                    format!(
                        "wavelet norm^2 {} exceeds its admissibility constant {}; \
                         the concentration bound assumes the reverse ordering",
                        w.norm_sq(),
                        w.admissibility()
                    ),
                    EntryParams { beta: Some(beta), s: Some(s), ..EntryParams::default() },
                )
            } else {
                let c = concentration_sum_constant(alpha, s, beta, w.admissibility() / w.norm_sq())?;
                let lhs = wf.moment(2.0 * s, 0.0) + wf.moment(0.0, 2.0 * beta);
                let rhs = c * nsq;
                let params = EntryParams { beta: Some(beta), s: Some(s), ..EntryParams::default() };
                decided(lhs, rhs, false, nsq, tol, params)
            }
        }
        HeisHwtProd => {
            let (w, wf) = need_wavelet()?;
            let s = req.s.unwrap_or(1.0);
            let beta = req.beta.unwrap_or(1.0);
            if w.norm_sq() > w.admissibility() {
                refused(
                    format!(
                        "wavelet norm^2 {} exceeds its admissibility constant {}; \
                         the concentration bound assumes the reverse ordering",
                        w.norm_sq(),
                        w.admissibility()
                    ),
                    EntryParams { beta: Some(beta), s: Some(s), ..EntryParams::default() },
                )
            } else {
                let c = concentration_sum_constant(alpha, s, beta, w.admissibility() / w.norm_sq())?;
                let lhs = wf.moment(2.0 * s, 0.0).powf(beta / 2.0)
                    * wf.moment(0.0, 2.0 * beta).powf(s / 2.0);
                let rhs = (s / beta).powf(s / 2.0)
                    * ((beta / (s + beta)) * c).powf((s + beta) / 2.0)
                    * nsq.powf((s + beta) / 2.0);
                let floor = nsq.powf((s + beta) / 2.0);
                let params = EntryParams { beta: Some(beta), s: Some(s), ..EntryParams::default() };
                decided(lhs, rhs, false, floor, tol, params)
            }
        }
        HeisHwtMellin => {
            let (w, wf) = need_wavelet()?;
            let s = req.s.unwrap_or(1.0);
            let beta = req.beta.unwrap_or(1.0);
            let params = EntryParams { beta: Some(beta), s: Some(s), ..EntryParams::default() };
            if s != 1.0 || beta != 1.0 {
                let lhs = wf.moment(2.0 * s, 0.0).sqrt() * wf.moment(0.0, 2.0 * beta).sqrt();
                CheckResult {
                    lhs: Some(lhs),
                    rhs: None,
                    ratio: None,
                    margin: None,
                    status: EntryStatus::Info,
                    notes: "no certified constant at these exponents; spreads reported only".into(),
                    params,
                }
            } else {
                match w.mellin_moment(2.0) {
                    Err(e) => refused(
                        format!("second Mellin moment unavailable: {}", e.message()),
                        params,
                    ),
                    Ok(m2) => {
                        let lhs = (wf.moment(2.0, 0.0) * wf.moment(0.0, 2.0)).sqrt();
                        let rhs = (m2 / w.admissibility()).sqrt() * (a + 1.0) * nsq;
                        decided(lhs, rhs, false, nsq, tol, params)
                    }
                }
            }
        }
        LinfBound => {
            let (w, wf) = need_wavelet()?;
            let lhs = wf.sup_abs();
            let rhs = (nsq * w.norm_sq() / w.admissibility()).sqrt();
            decided(lhs, rhs, true, nsq.sqrt(), tol, EntryParams::default())
        }
        LiebLp => {
            let (w, wf) = need_wavelet()?;
            let p = req.p.ok_or_else(|| {
                Error::Domain("the L^p transform bound needs an exponent p".into())
            })?;
            if !(p >= 2.0) || !p.is_finite() {
                return Err(Error::Domain(format!(
                    "the L^p transform bound holds for p >= 2, got {p}"
                )));
            }
            let lhs = wf.lp_norm_p(p)?.powf(1.0 / p);
            let rhs = (w.norm_sq() / w.admissibility()).powf(0.5 - 1.0 / p) * nsq.sqrt();
            let params = EntryParams { p: Some(p), ..EntryParams::default() };
            decided(lhs, rhs, true, nsq.sqrt(), tol, params)
        }
        DonohoStark | LiebSupport => {
            let (w, _) = need_wavelet()?;
            let p = if id == LiebSupport {
                let p = req.p.ok_or_else(|| {
                    Error::Domain("the support bound needs an exponent p > 2".into())
                })?;
                if !(p > 2.0) || !p.is_finite() {
                    return Err(Error::Domain(format!(
                        "the support bound holds for p > 2, got {p}"
                    )));
                }
                Some(p)
            } else {
                None
            };
            let rect = req.region.unwrap_or(DEFAULT_CONCENTRATION_RECT);
            let conc = concentration(w, cell.hf, nsq, &rect)?;
            let threshold = w.admissibility() / w.norm_sq();
            let lhs = rect.nu_measure(alpha);
            let rhs = match p {
                None => threshold * (1.0 - conc.epsilon),
                Some(p) => threshold * (1.0 - conc.epsilon).powf(p / (p - 2.0)),
            };
            let params = EntryParams {
                p,
                region: Some(rect),
                region_measure: Some(lhs),
                epsilon: Some(conc.epsilon),
                epsilon_clamped: Some(conc.clamped),
                ..EntryParams::default()
            };
            decided(lhs, rhs, false, threshold, tol, params)
        }
        Annihilation => {
            let (w, wf) = need_wavelet()?;
            let rect = match req.region {
                Some(r) => r,
                None => far_field_rect(alpha, w.admissibility(), w.norm_sq())?,
            };
            let measure = rect.nu_measure(alpha);
            let threshold = w.admissibility() / w.norm_sq();
            let mut params = EntryParams {
                region: Some(rect),
                region_measure: Some(measure),
                ..EntryParams::default()
            };
            if measure >= threshold {
                refused(
                    format!(
                        "region measure {measure} reaches the annihilation threshold \
                         {threshold}; no energy floor follows"
                    ),
                    params,
                )
            } else {
                let inside = region_energy(w, cell.hf, &rect)?;
                let lhs = wf.l2_norm_sq() - inside;
                let rhs = (1.0 - measure / threshold) * nsq;
                params.epsilon = Some((1.0 - inside / nsq).clamp(0.0, 1.0));
                decided(lhs, rhs, false, nsq, tol, params)
            }
        }
        ScalarEntropyLemma => {
            return Err(Error::Usage(
                "the scalar lemma takes no cell data; run it through run_scalar".into(),
            ))
        }
    };
    Ok(r)
}

/// Default concentration region for the support bounds: moderate scales,
/// positions through the bulk of every battery profile.
pub const DEFAULT_CONCENTRATION_RECT: Rect =
    Rect { scale_lo: 0.25, scale_hi: 4.0, position_lo: 0.0, position_hi: 6.0 };

/// Exact check of the pointwise inequality behind the entropy bounds:
/// 0 <= (x^2 - x^p)/(p - 2) <= -x^2 ln x on [0, 1), for p in (2, 3].
/// Sampled on a uniform grid in x with zero tolerance; lhs and rhs
/// report the worst slack of the lower and upper part respectively.
pub fn run_scalar(p: f64) -> Result<CheckResult> {
    if !(p > 2.0) || !(p <= 3.0) {
        return Err(Error::Domain(format!(
            "the scalar lemma is stated for p in (2, 3], got {p}"
        )));
    }
    let n = 300;
    let mut worst_lower = f64::INFINITY;
    let mut worst_upper = f64::INFINITY;
    for i in 0..n {
        let x: f64 = 0.99 * i as f64 / (n - 1) as f64;
        let mid = (x * x - libm::pow(x, p)) / (p - 2.0);
        let cap = if x == 0.0 { 0.0 } else { -x * x * x.ln() };
        worst_lower = worst_lower.min(mid);
        worst_upper = worst_upper.min(cap - mid);
    }
    let status = if worst_lower >= 0.0 && worst_upper >= 0.0 {
        EntryStatus::Pass
    } else {
        EntryStatus::Fail
    };
    Ok(CheckResult {
        lhs: Some(worst_lower),
        rhs: Some(worst_upper),
        ratio: None,
        margin: Some(worst_lower.min(worst_upper)),
        status,
        notes: "worst lower / upper slack over the sample grid".into(),
        params: EntryParams { p: Some(p), ..EntryParams::default() },
    })
}
