//! Audit configuration: a TOML document mapping onto `BatteryConfig`
//! plus output paths. Every section is optional and falls back to the
//! built-in defaults, so the empty document runs the default battery.
//! Parameter ranges are re-validated here with key names in the
//! messages; the numerical layer would catch them too, but only after
//! grids have been built.

use std::path::{Path, PathBuf};

use hankelet_core::audit::{BatteryConfig, CheckSpec, InequalityId, Rect, WaveletSpec};
use hankelet_core::radial::TestFamily;
use hankelet_core::{Error, Result};
use serde::Deserialize;

#[derive(Debug, Clone)]
pub struct Outputs {
    pub report: PathBuf,
    pub summary: PathBuf,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    grid: Option<GridSection>,
    scales: Option<ScaleSection>,
    battery: Option<BatterySection>,
    checks: Option<Vec<CheckSection>>,
    tolerances: Option<ToleranceSection>,
    output: Option<OutputSection>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct GridSection {
    radius: Option<f64>,
    panels: Option<usize>,
    per_panel: Option<usize>,
    window_radius: Option<f64>,
    window_panels: Option<usize>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ScaleSection {
    lo: Option<f64>,
    hi: Option<f64>,
    panels: Option<usize>,
    per_panel: Option<usize>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct BatterySection {
    alphas: Option<Vec<f64>>,
    wavelets: Option<Vec<WaveletSection>>,
    functions: Option<Vec<FunctionSection>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WaveletSection {
    order: u32,
    width: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FunctionSection {
    family: String,
    width: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CheckSection {
    id: String,
    beta: Option<f64>,
    beta_ratio: Option<f64>,
    s: Option<f64>,
    p: Option<f64>,
    region: Option<RegionSection>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RegionSection {
    scale_lo: f64,
    scale_hi: f64,
    position_lo: f64,
    position_hi: f64,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ToleranceSection {
    mu: Option<f64>,
    nu: Option<f64>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    report: Option<PathBuf>,
    summary: Option<PathBuf>,
}

/// A test-function tag: `polygauss`, `gauss` (unit width), or
/// `gauss(W)` with an explicit width.
pub fn parse_family(tag: &str) -> Result<TestFamily> {
    let tag = tag.trim();
    if tag == "polygauss" {
        return Ok(TestFamily::PolyGaussian);
    }
    if tag == "gauss" {
        return TestFamily::gaussian(1.0);
    }
    if let Some(rest) = tag.strip_prefix("gauss(") {
        if let Some(inner) = rest.strip_suffix(')') {
            let width = inner.trim().parse::<f64>().map_err(|_| {
                Error::Usage(format!("cannot read a width from function tag {tag:?}"))
            })?;
            return TestFamily::gaussian(width);
        }
    }
    Err(Error::Usage(format!(
        "unknown function family {tag:?}; expected polygauss, gauss, or gauss(W)"
    )))
}

fn function_from_section(section: &FunctionSection, index: usize) -> Result<TestFamily> {
    let key = format!("battery.functions[{index}]");
    match section.family.as_str() {
        "polygauss" => {
            if section.width.is_some() {
                return Err(Error::Usage(format!("{key}: polygauss takes no width")));
            }
            Ok(TestFamily::PolyGaussian)
        }
        "gauss" => TestFamily::gaussian(section.width.unwrap_or(1.0))
            .map_err(|e| Error::Usage(format!("{key}: {}", e.message()))),
        other => Err(Error::Usage(format!(
            "{key}: unknown family {other:?}; expected gauss or polygauss"
        ))),
    }
}

fn check_from_section(section: &CheckSection, index: usize) -> Result<CheckSpec> {
    let key = format!("checks[{index}]");
    let id: InequalityId = section
        .id
        .parse()
        .map_err(|e: Error| Error::Usage(format!("{key}.id: {}", e.message())))?;
    let region = match &section.region {
        None => None,
        Some(r) => Some(
            Rect::new(r.scale_lo, r.scale_hi, r.position_lo, r.position_hi)
                .map_err(|e| Error::Usage(format!("{key}.region: {}", e.message())))?,
        ),
    };
    let mut spec = CheckSpec::new(id);
    spec.beta = section.beta;
    spec.beta_ratio = section.beta_ratio;
    spec.s = section.s;
    spec.p = section.p;
    spec.region = region;
    Ok(spec)
}

/// Range checks that only the config layer can phrase with key names.
/// Everything here is also enforced downstream; failing early keeps the
/// diagnostics attached to the document instead of the grid builder.
fn validate(cfg: &BatteryConfig) -> Result<()> {
    for (i, &a) in cfg.alphas.iter().enumerate() {
        if !(a >= -0.5) || !a.is_finite() {
            return Err(Error::Usage(format!(
                "battery.alphas[{i}]: alpha must be a finite real >= -1/2, got {a}"
            )));
        }
    }
    for (i, w) in cfg.wavelets.iter().enumerate() {
        if w.order == 0 {
            return Err(Error::Usage(format!(
                "battery.wavelets[{i}]: the spectral order k must be at least 1"
            )));
        }
        if !(w.width > 0.0) || !w.width.is_finite() {
            return Err(Error::Usage(format!(
                "battery.wavelets[{i}]: width must be a positive finite real, got {}",
                w.width
            )));
        }
    }
    for (i, c) in cfg.checks.iter().enumerate() {
        let key = format!("checks[{i}]");
        if c.beta.is_some() && c.beta_ratio.is_some() {
            return Err(Error::Usage(format!(
                "{key}: beta and beta_ratio are mutually exclusive"
            )));
        }
        if let Some(r) = c.beta_ratio {
            if !(r > 0.0) || !(r < 1.0) {
                return Err(Error::Usage(format!(
                    "{key}.beta_ratio: must lie strictly inside (0, 1), got {r}"
                )));
            }
        }
        if let Some(b) = c.beta {
            if !(b >= 0.0) || !b.is_finite() {
                return Err(Error::Usage(format!(
                    "{key}.beta: must be a finite nonnegative real, got {b}"
                )));
            }
            // For the weighted transform bounds beta is a Pitt weight
            // and must stay below alpha + 1 at every measure index the
            // battery will run at. Elsewhere beta is a plain moment
            // exponent with no such ceiling.
            let pitt = matches!(c.id, InequalityId::PittHankel | InequalityId::PittHwt);
            if pitt {
                for &a in &cfg.alphas {
                    if b >= a + 1.0 {
                        return Err(Error::Usage(format!(
                            "{key}.beta: the weighted bound requires 0 <= beta < alpha + 1, \
                             and beta = {b} is not below alpha + 1 = {} at alpha = {a}",
                            a + 1.0
                        )));
                    }
                }
            }
        }
        if let Some(p) = c.p {
            if !(p > 0.0) || !p.is_finite() {
                return Err(Error::Usage(format!(
                    "{key}.p: must be a positive finite real, got {p}"
                )));
            }
        }
    }
    Ok(())
}

fn build(raw: RawConfig) -> Result<(BatteryConfig, Outputs)> {
    let mut cfg = BatteryConfig::default();
    if let Some(grid) = &raw.grid {
        if let Some(v) = grid.radius {
            cfg.grid_radius = v;
        }
        if let Some(v) = grid.panels {
            cfg.grid_panels = v;
        }
        if let Some(v) = grid.per_panel {
            cfg.grid_per_panel = v;
        }
        if let Some(v) = grid.window_radius {
            cfg.window_radius = v;
        }
        if let Some(v) = grid.window_panels {
            cfg.window_panels = v;
        }
    }
    if let Some(scales) = &raw.scales {
        if let Some(v) = scales.lo {
            cfg.scale_lo = v;
        }
        if let Some(v) = scales.hi {
            cfg.scale_hi = v;
        }
        if let Some(v) = scales.panels {
            cfg.scale_panels = v;
        }
        if let Some(v) = scales.per_panel {
            cfg.scale_per_panel = v;
        }
    }
    if let Some(battery) = &raw.battery {
        if let Some(alphas) = &battery.alphas {
            cfg.alphas = alphas.clone();
        }
        if let Some(wavelets) = &battery.wavelets {
            cfg.wavelets =
                wavelets.iter().map(|w| WaveletSpec { order: w.order, width: w.width }).collect();
        }
        if let Some(functions) = &battery.functions {
            cfg.functions = functions
                .iter()
                .enumerate()
                .map(|(i, s)| function_from_section(s, i))
                .collect::<Result<Vec<_>>>()?;
        }
    }
    if let Some(checks) = &raw.checks {
        cfg.checks = checks
            .iter()
            .enumerate()
            .map(|(i, s)| check_from_section(s, i))
            .collect::<Result<Vec<_>>>()?;
    }
    if let Some(tol) = &raw.tolerances {
        if let Some(v) = tol.mu {
            cfg.mu_tolerance = v;
        }
        if let Some(v) = tol.nu {
            cfg.nu_tolerance = v;
        }
    }
    validate(&cfg)?;
    let output = raw.output.unwrap_or_default();
    let outputs = Outputs {
        report: output.report.unwrap_or_else(|| PathBuf::from("audit_report.json")),
        summary: output.summary.unwrap_or_else(|| PathBuf::from("audit_summary.csv")),
    };
    Ok((cfg, outputs))
}

pub fn parse(text: &str) -> Result<(BatteryConfig, Outputs)> {
    let raw: RawConfig =
        toml::from_str(text).map_err(|e| Error::Usage(format!("config parse error: {e}")))?;
    build(raw)
}

pub fn load(path: &Path) -> Result<(BatteryConfig, Outputs)> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::Usage(format!("cannot read config file {}: {e}", path.display()))
    })?;
    parse(&text)
}
