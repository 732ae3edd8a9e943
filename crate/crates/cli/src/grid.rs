//! `start:stop:step` grids of μ values.

use crate::error::CliError;

const MAX_POINTS: usize = 100_000;

/// Inclusive grid, each point snapped to 12 decimals.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Input(format!("grid {spec:?}: {why}"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(bad("expected start:stop:step"));
    };
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|_| bad("not a number"));
    let (start, stop, step) = (parse(start)?, parse(stop)?, parse(step)?);
    if !(0.0 <= start && start <= stop && stop <= 0.5) {
        return Err(bad("need 0 <= start <= stop <= 0.5"));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(bad("step must be positive"));
    }
    let steps = ((stop - start) / step + 1e-9).floor();
    if steps >= MAX_POINTS as f64 {
        return Err(bad("too many points"));
    }
    Ok((0..=steps as usize)
        .map(|k| snap(start + k as f64 * step).min(0.5))
        .collect())
}

pub fn snap(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}
