//! Battery execution with a worker pool. Cells are independent pure
//! functions of the shared artifacts, so threads only race for the next
//! index; results land in per-cell slots and are concatenated in plan
//! order, which makes the report independent of the worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use hankelet_core::audit::{plan_cells, prepare, run_cell, AuditReport, BatteryConfig};
use hankelet_core::{Error, Result};

/// Worker cap: `HANKELET_THREADS` when set, otherwise the machine's
/// available parallelism. The variable must be a positive integer.
pub fn thread_cap() -> Result<usize> {
    match std::env::var("HANKELET_THREADS") {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::Usage(format!(
                "HANKELET_THREADS must be a positive integer, got {raw:?}"
            ))),
        },
        Err(std::env::VarError::NotPresent) => {
            Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
        }
        Err(std::env::VarError::NotUnicode(_)) => {
            Err(Error::Usage("HANKELET_THREADS must be a positive integer".into()))
        }
    }
}

pub fn run(cfg: &BatteryConfig, threads: usize) -> Result<AuditReport> {
    let artifacts = prepare(cfg)?;
    let cells = plan_cells(cfg);
    let workers = threads.max(1).min(cells.len().max(1));
    if workers <= 1 {
        let mut entries = Vec::new();
        for &cell in &cells {
            entries.extend(run_cell(cfg, &artifacts, cell)?);
        }
        return Ok(AuditReport::from_entries(entries));
    }

    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<Result<Vec<_>>>>> =
        cells.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, Ordering::Relaxed);
                let Some(&cell) = cells.get(idx) else { break };
                let outcome = run_cell(cfg, &artifacts, cell);
                let failed = outcome.is_err();
                *slots[idx].lock().unwrap() = Some(outcome);
                if failed {
                    break;
                }
            });
        }
    });

    let mut entries = Vec::new();
    for slot in slots {
        match slot.into_inner().unwrap() {
            Some(Ok(cell_entries)) => entries.extend(cell_entries),
            Some(Err(e)) => return Err(e),
            // A worker bailed after an error elsewhere; the error slot
            // itself is reported above in plan order.
            None => {
                return Err(Error::Numerical(
                    "a battery cell was abandoned after an earlier failure".into(),
                ))
            }
        }
    }
    Ok(AuditReport::from_entries(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use hankelet_core::audit::{CheckSpec, InequalityId, WaveletSpec};
    use hankelet_core::radial::TestFamily;

    fn small_config() -> BatteryConfig {
        BatteryConfig {
            alphas: vec![0.0, 0.5],
            wavelets: vec![WaveletSpec { order: 2, width: 2.0 }],
            functions: vec![
                TestFamily::gaussian(1.0).unwrap(),
                TestFamily::PolyGaussian,
            ],
            checks: vec![
                CheckSpec::new(InequalityId::HeisHankelProd),
                CheckSpec::new(InequalityId::LinfBound),
                CheckSpec::new(InequalityId::LogHwt),
            ],
            ..BatteryConfig::default()
        }
    }

    #[test]
    fn worker_count_does_not_change_the_report() {
        let cfg = small_config();
        let one = run(&cfg, 1).unwrap();
        let four = run(&cfg, 4).unwrap();
        assert_eq!(one.entries.len(), four.entries.len());
        for (a, b) in one.entries.iter().zip(&four.entries) {
            assert_eq!(a.id, b.id);
            assert_eq!(a.lhs, b.lhs);
            assert_eq!(a.rhs, b.rhs);
            assert_eq!(a.status, b.status);
        }
    }
}
