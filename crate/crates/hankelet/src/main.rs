use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hankelet::{config, info, report_io, runner};
use hankelet_core::radial::TestFamily;
use hankelet_core::{Alpha, Error, HankelPlan, RadialGrid, Result};

#[derive(Parser)]
#[command(
    name = "hankelet",
    version,
    about = "Hankel transforms, scale-space wavelets, and uncertainty audits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an inequality battery described by a TOML file and write reports
    Audit {
        /// Battery description; an empty file runs the default battery
        config: PathBuf,
    },
    /// Tabulate the transform of a named profile into a CSV file
    Transform {
        /// Profile tag: gauss, gauss(W), polygauss, or zero
        #[arg(long)]
        family: String,
        /// Bessel order parameter, at least -1/2
        #[arg(long)]
        alpha: f64,
        /// Grid radius
        #[arg(long, default_value_t = 12.0)]
        radius: f64,
        /// Number of grid panels
        #[arg(long, default_value_t = 16)]
        panels: usize,
        /// Gauss-Legendre nodes per panel
        #[arg(long, default_value_t = 32)]
        per_panel: usize,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
    },
    /// Print a Bessel-hat wavelet's constants, closed form against quadrature
    WaveletInfo {
        /// Spectral order
        #[arg(long)]
        k: u32,
        /// Spectral width
        #[arg(long)]
        sigma: f64,
        /// Bessel order parameter, at least -1/2
        #[arg(long)]
        alpha: f64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Numerical(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Audit { config } => audit(&config),
        Command::Transform { family, alpha, radius, panels, per_panel, out } => {
            transform(&family, alpha, radius, panels, per_panel, &out)
        }
        Command::WaveletInfo { k, sigma, alpha } => {
            let report = info::wavelet_info(k, sigma, alpha)?;
            print!("{}", info::render(&report));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn audit(path: &Path) -> Result<ExitCode> {
    let (battery, outputs) = config::load(path)?;
    let threads = runner::thread_cap()?;
    let report = runner::run(&battery, threads)?;
    report_io::write(&outputs.report, &report_io::render_json(&report)?)?;
    report_io::write(&outputs.summary, &report_io::render_csv(&report))?;
    let s = &report.summary;
    println!(
        "{} checks: {} passed, {} failed, {} precondition_failed, {} info",
        s.total, s.passed, s.failed, s.refused, s.info
    );
    println!("wrote {} and {}", outputs.report.display(), outputs.summary.display());
    Ok(if s.failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn transform(
    family: &str,
    alpha: f64,
    radius: f64,
    panels: usize,
    per_panel: usize,
    out: &Path,
) -> Result<ExitCode> {
    let alpha = Alpha::new(alpha)?;
    let grid = RadialGrid::new(alpha, radius, panels, per_panel)?;
    let mut csv = String::from("xi,hf\n");
    let mut deviation = None;
    if family == "zero" {
        for &xi in grid.nodes() {
            csv.push_str(&format!("{xi:.11e},{:.11e}\n", 0.0));
        }
    } else {
        let profile = config::parse_family(family)?;
        let plan = HankelPlan::new(grid.clone());
        let f = profile.realize(&grid);
        let hf = plan.transform(&f)?;
        for (&xi, &v) in grid.nodes().iter().zip(hf.samples()) {
            csv.push_str(&format!("{xi:.11e},{v:.11e}\n"));
        }
        if let TestFamily::Gaussian { width } = profile {
            // the one profile with an elementary image, so the table
            // carries its own accuracy certificate
            let exponent = 2.0 * alpha.get() + 2.0;
            let mut worst = 0.0f64;
            for (&xi, &v) in grid.nodes().iter().zip(hf.samples()) {
                let exact = width.powf(exponent) * (-0.5 * width * width * xi * xi).exp();
                worst = worst.max((v - exact).abs());
            }
            deviation = Some(worst);
        }
    }
    if let Some(dev) = deviation {
        csv.push_str(&format!("# max deviation from the closed-form image: {dev:.11e}\n"));
    }
    report_io::write(out, &csv)?;
    match deviation {
        Some(dev) => println!(
            "wrote {}; max deviation from the closed-form image: {dev:.11e}",
            out.display()
        ),
        None => println!("wrote {}", out.display()),
    }
    Ok(ExitCode::SUCCESS)
}
