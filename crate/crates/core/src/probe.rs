//! Second divided differences under grid refinement.

use crate::error::{Error, Result};

/// Observed convergence order regarded as smooth.
pub const SMOOTH_ORDER: f64 = 1.7;

/// Relative size below which refinement gaps count as converged.
pub const GAP_FLOOR: f64 = 1e-6;

/// `intervals` equal steps on `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub intervals: usize,
}

impl Grid {
    pub fn new(start: f64, end: f64, intervals: usize) -> Result<Self> {
        if !(start.is_finite() && end.is_finite() && start < end) {
            return Err(Error::BadParameter(format!(
                "bad grid interval [{start}, {end}]"
            )));
        }
        if intervals < 2 {
            return Err(Error::BadParameter(
                "grid needs at least 2 intervals".into(),
            ));
        }
        Ok(Grid {
            start,
            end,
            intervals,
        })
    }

    /// Points of the grid refined `2^level` times.
    pub fn points(&self, level: u32) -> Vec<f64> {
        let n = self.intervals << level;
        let h = (self.end - self.start) / n as f64;
        (0..=n).map(|k| self.start + k as f64 * h).collect()
    }
}

/// Second differences at the interior coarse points with steps `h`, `h/2`
/// and `h/4`, compared level by level.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceStudy {
    /// Per component, the largest |D_{h/4}| over interior coarse points.
    pub max_second_difference: Vec<f64>,
    /// `max |D_h - D_{h/2}|` and `max |D_{h/2} - D_{h/4}|`.
    pub refinement_gaps: [f64; 2],
    /// `log2` of the ratio of the gaps; `None` when both gaps are below the floor.
    pub observed_order: Option<f64>,
    pub smooth: bool,
}

/// Runs the study on samples taken at `grid.points(2)`.
pub fn study_samples(grid: &Grid, samples: &[Vec<f64>]) -> Result<DifferenceStudy> {
    let n = grid.intervals;
    if samples.len() != 4 * n + 1 {
        return Err(Error::DimensionMismatch {
            expected: 4 * n + 1,
            found: samples.len(),
        });
    }
    let width = samples[0].len();
    if let Some(bad) = samples.iter().find(|s| s.len() != width) {
        return Err(Error::DimensionMismatch {
            expected: width,
            found: bad.len(),
        });
    }
    let h = (grid.end - grid.start) / n as f64;
    // Step h/2^level spans 4/2^level fine cells.
    let diff = |k: usize, level: u32, c: usize| {
        let span = 4 >> level;
        let step = h / f64::from(1u32 << level);
        let mid = 4 * k;
        (samples[mid + span][c] - 2.0 * samples[mid][c] + samples[mid - span][c]) / (step * step)
    };
    let mut max_d = vec![0.0f64; width];
    let mut gaps = [0.0f64; 2];
    let mut finite = true;
    for k in 1..n {
        for (c, best) in max_d.iter_mut().enumerate() {
            let d = [diff(k, 0, c), diff(k, 1, c), diff(k, 2, c)];
            finite &= d.iter().all(|x| x.is_finite());
            *best = best.max(d[2].abs());
            gaps[0] = gaps[0].max((d[0] - d[1]).abs());
            gaps[1] = gaps[1].max((d[1] - d[2]).abs());
        }
    }
    let scale = max_d.iter().fold(1.0f64, |a, &b| a.max(b));
    let floor = GAP_FLOOR * scale;
    let observed_order = if gaps[0] <= floor && gaps[1] <= floor {
        None
    } else {
        Some((gaps[0] / gaps[1]).log2())
    };
    let smooth = finite && observed_order.is_none_or(|p| p >= SMOOTH_ORDER || gaps[0] <= floor);
    Ok(DifferenceStudy {
        max_second_difference: max_d,
        refinement_gaps: gaps,
        observed_order,
        smooth,
    })
}

/// Samples `f` on the finest grid and runs [`study_samples`].
pub fn study<F>(grid: &Grid, mut f: F) -> Result<DifferenceStudy>
where
    F: FnMut(f64) -> Result<Vec<f64>>,
{
    let samples = grid
        .points(2)
        .into_iter()
        .map(&mut f)
        .collect::<Result<Vec<_>>>()?;
    study_samples(grid, &samples)
}
