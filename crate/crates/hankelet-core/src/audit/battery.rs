//! The audit battery: a grid of inequality checks over measure indices,
//! wavelets, and test profiles, decomposed into independent cells so a
//! runner can scatter them across threads and still assemble a
//! deterministic report.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hankel::HankelPlan;
use crate::radial::{RadialGrid, ScaleSpaceGrid, TestFamily};
use crate::special::Alpha;
use crate::wavelet::{hwt_forward, Wavelet};

use super::report::{AuditEntry, AuditReport};
use super::{run_check, run_scalar, CellData, CheckClass, CheckRequest, InequalityId, Rect};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveletSpec {
    pub order: u32,
    pub width: f64,
}

/// One inequality with the parameters it should run at. `beta_ratio`
/// states the weight exponent as a fraction of alpha + 1, so a single
/// spec stays inside the Pitt domain at every measure index; it is
/// mutually exclusive with an absolute `beta`.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckSpec {
    pub id: InequalityId,
    pub beta: Option<f64>,
    pub beta_ratio: Option<f64>,
    pub s: Option<f64>,
    pub p: Option<f64>,
    pub region: Option<Rect>,
}

impl CheckSpec {
    pub fn new(id: InequalityId) -> CheckSpec {
        CheckSpec { id, beta: None, beta_ratio: None, s: None, p: None, region: None }
    }

    pub fn resolve(&self, alpha: Alpha) -> Result<CheckRequest> {
        let beta = match (self.beta, self.beta_ratio) {
            (Some(_), Some(_)) => {
                return Err(Error::Usage(format!(
                    "{}: beta and beta_ratio are mutually exclusive",
                    self.id
                )))
            }
            (Some(b), None) => Some(b),
            (None, Some(r)) => {
                if !(r > 0.0) || !(r < 1.0) {
                    return Err(Error::Usage(format!(
                        "{}: beta_ratio must lie strictly inside (0, 1), got {r}",
                        self.id
                    )));
                }
                Some(r * (alpha.get() + 1.0))
            }
            (None, None) => None,
        };
        if let Some(r) = &self.region {
            r.validate()?;
        }
        Ok(CheckRequest { beta, s: self.s, p: self.p, region: self.region })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BatteryConfig {
    pub grid_radius: f64,
    pub grid_panels: usize,
    pub grid_per_panel: usize,
    /// Position extent of the scale-space window. Coarse scales smear
    /// mass well past the spectral radius, so nu-integrals run on their
    /// own wider grid (same per-panel count as the spectral one).
    pub window_radius: f64,
    pub window_panels: usize,
    pub scale_lo: f64,
    pub scale_hi: f64,
    pub scale_panels: usize,
    pub scale_per_panel: usize,
    pub alphas: Vec<f64>,
    pub wavelets: Vec<WaveletSpec>,
    pub functions: Vec<TestFamily>,
    pub checks: Vec<CheckSpec>,
    pub mu_tolerance: f64,
    pub nu_tolerance: f64,
}

impl Default for BatteryConfig {
    /// The full certification battery: four measure indices, three
    /// wavelet orders, four profiles, every registered inequality.
    fn default() -> Self {
        let mut checks = Vec::new();
        for id in [
            InequalityId::HeisHankelSum,
            InequalityId::HeisHankelProd,
            InequalityId::HeisHankelDigamma,
            InequalityId::LogHankel,
            InequalityId::EntropyHankel,
        ] {
            checks.push(CheckSpec::new(id));
        }
        checks.push(CheckSpec { beta_ratio: Some(0.5), ..CheckSpec::new(InequalityId::PittHankel) });
        checks.push(CheckSpec::new(InequalityId::HeisMixedSum));
        checks.push(CheckSpec::new(InequalityId::HeisMixedProd));
        checks.push(CheckSpec { beta_ratio: Some(0.5), ..CheckSpec::new(InequalityId::PittHwt) });
        checks.push(CheckSpec::new(InequalityId::LogHwt));
        checks.push(CheckSpec::new(InequalityId::HeisHwtLog));
        checks.push(CheckSpec::new(InequalityId::EntropyHwt));
        checks.push(CheckSpec {
            s: Some(1.0),
            beta: Some(1.0),
            ..CheckSpec::new(InequalityId::HeisHwtSum)
        });
        checks.push(CheckSpec {
            s: Some(1.0),
            beta: Some(1.0),
            ..CheckSpec::new(InequalityId::HeisHwtProd)
        });
        checks.push(CheckSpec {
            s: Some(1.0),
            beta: Some(1.0),
            ..CheckSpec::new(InequalityId::HeisHwtMellin)
        });
        checks.push(CheckSpec::new(InequalityId::LinfBound));
        checks.push(CheckSpec { p: Some(3.0), ..CheckSpec::new(InequalityId::LiebLp) });
        checks.push(CheckSpec { p: Some(4.0), ..CheckSpec::new(InequalityId::LiebLp) });
        checks.push(CheckSpec::new(InequalityId::DonohoStark));
        checks.push(CheckSpec { p: Some(3.0), ..CheckSpec::new(InequalityId::LiebSupport) });
        checks.push(CheckSpec::new(InequalityId::Annihilation));
        for p in [2.01, 2.25, 2.5, 2.75, 3.0] {
            checks.push(CheckSpec { p: Some(p), ..CheckSpec::new(InequalityId::ScalarEntropyLemma) });
        }
        BatteryConfig {
            grid_radius: 12.0,
            grid_panels: 16,
            grid_per_panel: 32,
            window_radius: 128.0,
            window_panels: 32,
            scale_lo: 1.0 / 256.0,
            scale_hi: 256.0,
            scale_panels: 20,
            scale_per_panel: 8,
            alphas: vec![0.0, 0.5, 1.0, 2.5],
            wavelets: vec![
                WaveletSpec { order: 1, width: 2.0 },
                WaveletSpec { order: 2, width: 2.0 },
                WaveletSpec { order: 3, width: 2.0 },
            ],
            functions: vec![
                TestFamily::gaussian(0.7).unwrap(),
                TestFamily::gaussian(1.0).unwrap(),
                TestFamily::gaussian(1.5).unwrap(),
                TestFamily::PolyGaussian,
            ],
            checks,
            mu_tolerance: 1e-6,
            nu_tolerance: 1e-3,
        }
    }
}

/// Everything expensive, built once per measure index and shared by all
/// cells at that index: the grid, the transform plan, the scale band,
/// and the wavelets.
pub struct AlphaArtifacts {
    pub alpha: Alpha,
    pub grid: Arc<RadialGrid>,
    pub plan: Arc<HankelPlan>,
    pub scale_grid: Arc<ScaleSpaceGrid>,
    pub wavelets: Vec<Arc<Wavelet>>,
    pub wavelet_tags: Vec<String>,
}

pub struct SharedArtifacts {
    pub per_alpha: Vec<AlphaArtifacts>,
}

pub fn prepare(cfg: &BatteryConfig) -> Result<SharedArtifacts> {
    for (name, t) in [("mu_tolerance", cfg.mu_tolerance), ("nu_tolerance", cfg.nu_tolerance)] {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::Usage(format!("{name} must be a finite nonnegative real, got {t}")));
        }
    }
    if cfg.alphas.is_empty() || cfg.checks.is_empty() {
        return Err(Error::Usage("the battery needs at least one alpha and one check".into()));
    }
    let mut per_alpha = Vec::with_capacity(cfg.alphas.len());
    for &a in &cfg.alphas {
        let alpha = Alpha::new(a)?;
        let grid = RadialGrid::new(alpha, cfg.grid_radius, cfg.grid_panels, cfg.grid_per_panel)?;
        let plan = Arc::new(HankelPlan::new(grid.clone()));
        let window = if cfg.window_radius == cfg.grid_radius && cfg.window_panels == cfg.grid_panels
        {
            grid.clone()
        } else {
            RadialGrid::new(alpha, cfg.window_radius, cfg.window_panels, cfg.grid_per_panel)?
        };
        let scale_grid = ScaleSpaceGrid::new(
            window,
            cfg.scale_lo,
            cfg.scale_hi,
            cfg.scale_panels,
            cfg.scale_per_panel,
        )?;
        let mut wavelets = Vec::with_capacity(cfg.wavelets.len());
        let mut wavelet_tags = Vec::with_capacity(cfg.wavelets.len());
        for spec in &cfg.wavelets {
            wavelets.push(Wavelet::bessel_hat(&plan, spec.order, spec.width)?);
            wavelet_tags.push(format!("bessel_hat(k={},sigma={})", spec.order, spec.width));
        }
        per_alpha.push(AlphaArtifacts { alpha, grid, plan, scale_grid, wavelets, wavelet_tags });
    }
    Ok(SharedArtifacts { per_alpha })
}

/// One independent unit of battery work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    /// Transform-side checks for (alpha, function).
    Hankel { alpha: usize, function: usize },
    /// Scale-space checks for (alpha, wavelet, function).
    Wavelet { alpha: usize, wavelet: usize, function: usize },
    /// The parameter-only lemmas, one cell for all of them.
    Scalar,
}

/// Cells in report order: transform-side first, then scale-space, then
/// scalar lemmas. Concatenating each cell's entries in this order yields
/// the battery report regardless of which thread ran which cell.
pub fn plan_cells(cfg: &BatteryConfig) -> Vec<CellKind> {
    let has = |class: CheckClass| cfg.checks.iter().any(|c| c.id.class() == class);
    let mut cells = Vec::new();
    if has(CheckClass::Hankel) {
        for alpha in 0..cfg.alphas.len() {
            for function in 0..cfg.functions.len() {
                cells.push(CellKind::Hankel { alpha, function });
            }
        }
    }
    if has(CheckClass::Wavelet) && !cfg.wavelets.is_empty() {
        for alpha in 0..cfg.alphas.len() {
            for wavelet in 0..cfg.wavelets.len() {
                for function in 0..cfg.functions.len() {
                    cells.push(CellKind::Wavelet { alpha, wavelet, function });
                }
            }
        }
    }
    if has(CheckClass::Scalar) {
        cells.push(CellKind::Scalar);
    }
    cells
}

pub fn run_cell(
    cfg: &BatteryConfig,
    artifacts: &SharedArtifacts,
    cell: CellKind,
) -> Result<Vec<AuditEntry>> {
    let mut entries = Vec::new();
    match cell {
        CellKind::Scalar => {
            for spec in cfg.checks.iter().filter(|c| c.id.class() == CheckClass::Scalar) {
                let p = spec.p.ok_or_else(|| {
                    Error::Usage(format!("{}: the scalar lemma needs an exponent p", spec.id))
                })?;
                let r = run_scalar(p)?;
                entries.push(AuditEntry {
                    id: spec.id,
                    alpha: None,
                    wavelet: None,
                    function: None,
                    params: r.params,
                    lhs: r.lhs,
                    rhs: r.rhs,
                    ratio: r.ratio,
                    margin: r.margin,
                    tolerance: 0.0,
                    status: r.status,
                    notes: r.notes,
                });
            }
        }
        CellKind::Hankel { alpha, function } => {
            let art = &artifacts.per_alpha[alpha];
            let family = &cfg.functions[function];
            let f = family.realize(&art.grid);
            let hf = art.plan.transform(&f)?;
            let cell_data = CellData {
                plan: &art.plan,
                f: &f,
                hf: &hf,
                norm_sq: f.l2_norm_sq(),
                wavelet: None,
                wf: None,
            };
            for spec in cfg.checks.iter().filter(|c| c.id.class() == CheckClass::Hankel) {
                let req = spec.resolve(art.alpha)?;
                let r = run_check(&cell_data, spec.id, &req, cfg.mu_tolerance)?;
                entries.push(AuditEntry {
                    id: spec.id,
                    alpha: Some(art.alpha.get()),
                    wavelet: None,
                    function: Some(family.tag()),
                    params: r.params,
                    lhs: r.lhs,
                    rhs: r.rhs,
                    ratio: r.ratio,
                    margin: r.margin,
                    tolerance: cfg.mu_tolerance,
                    status: r.status,
                    notes: r.notes,
                });
            }
        }
        CellKind::Wavelet { alpha, wavelet, function } => {
            let art = &artifacts.per_alpha[alpha];
            let family = &cfg.functions[function];
            let w = &art.wavelets[wavelet];
            let f = family.realize(&art.grid);
            let hf = art.plan.transform(&f)?;
            let wf = hwt_forward(&art.plan, w, &f, &art.scale_grid)?;
            let cell_data = CellData {
                plan: &art.plan,
                f: &f,
                hf: &hf,
                norm_sq: f.l2_norm_sq(),
                wavelet: Some(w),
                wf: Some(&wf),
            };
            for spec in cfg.checks.iter().filter(|c| c.id.class() == CheckClass::Wavelet) {
                let req = spec.resolve(art.alpha)?;
                let r = run_check(&cell_data, spec.id, &req, cfg.nu_tolerance)?;
                entries.push(AuditEntry {
                    id: spec.id,
                    alpha: Some(art.alpha.get()),
                    wavelet: Some(art.wavelet_tags[wavelet].clone()),
                    function: Some(family.tag()),
                    params: r.params,
                    lhs: r.lhs,
                    rhs: r.rhs,
                    ratio: r.ratio,
                    margin: r.margin,
                    tolerance: cfg.nu_tolerance,
                    status: r.status,
                    notes: r.notes,
                });
            }
        }
    }
    Ok(entries)
}

/// Runs the whole battery on the current thread.
pub fn run_battery(cfg: &BatteryConfig) -> Result<AuditReport> {
    let artifacts = prepare(cfg)?;
    let mut entries = Vec::new();
    for cell in plan_cells(cfg) {
        entries.extend(run_cell(cfg, &artifacts, cell)?);
    }
    Ok(AuditReport::from_entries(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::audit::EntryStatus;

    fn small_config() -> BatteryConfig {
        BatteryConfig {
            alphas: vec![0.5],
            wavelets: vec![WaveletSpec { order: 2, width: 2.0 }],
            functions: vec![TestFamily::gaussian(1.0).unwrap()],
            ..BatteryConfig::default()
        }
    }

    #[test]
    fn default_battery_has_the_expected_shape() {
        let cfg = BatteryConfig::default();
        let cells = plan_cells(&cfg);
        // 4 alphas x 4 functions + 4 x 3 x 4 + scalar
        assert_eq!(cells.len(), 16 + 48 + 1);
        assert_eq!(cfg.checks.len(), 26);
    }

    #[test]
    fn small_battery_passes_end_to_end() {
        let report = run_battery(&small_config()).unwrap();
        assert_eq!(report.summary.total, 6 + 15 + 5);
        assert_eq!(report.summary.failed, 0, "{:?}", report
            .entries
            .iter()
            .filter(|e| e.status == EntryStatus::Fail)
            .map(|e| (e.id, e.margin))
            .collect::<Vec<_>>());
        assert_eq!(report.summary.refused, 0);
        assert!(report.all_clear());
    }

    #[test]
    fn battery_is_deterministic() {
        let cfg = small_config();
        let a = run_battery(&cfg).unwrap();
        let b = run_battery(&cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn first_order_wavelets_refuse_the_mellin_bound() {
        let cfg = BatteryConfig {
            wavelets: vec![WaveletSpec { order: 1, width: 2.0 }],
            ..small_config()
        };
        let report = run_battery(&cfg).unwrap();
        assert_eq!(report.summary.refused, 1);
        assert_eq!(report.summary.failed, 0);
        let refused: Vec<_> = report
            .entries
            .iter()
            .filter(|e| e.status == EntryStatus::Refused)
            .collect();
        assert_eq!(refused[0].id, InequalityId::HeisHwtMellin);
    }

    #[test]
    fn conflicting_beta_settings_are_rejected() {
        let spec = CheckSpec {
            beta: Some(0.5),
            beta_ratio: Some(0.5),
            ..CheckSpec::new(InequalityId::PittHankel)
        };
        assert!(spec.resolve(Alpha::new(1.0).unwrap()).is_err());
    }
}
