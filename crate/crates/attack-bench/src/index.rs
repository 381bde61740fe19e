//! The invulnerability index I_q: signed area between a performance curve
//! and the baseline s = 1 - r over r in (0, q].
//!
//! Discretization: left-Riemann sum over the M removal events,
//!
//! ```text
//! I_q = (1/M) * sum_{k=1}^{floor(q*M)} ( s(k/M) - (1 - k/M) )
//! ```
//!
//! Positive values mean robust, negative fragile. The analytic ceiling
//! K(K+1)/(2 M^2) with K = floor(q*M) is attained only by s identically 1.

use thiserror::Error;

use crate::attack::{Measure, PerformanceCurve};

#[derive(Debug, Error, PartialEq)]
pub enum IndexError {
    #[error("threshold {0} outside (0, 1]")]
    ThresholdOutOfRange(f64),
    #[error("thresholds must be sorted in ascending order")]
    UnsortedThresholds,
    #[error("performance curve is empty")]
    EmptyCurve,
}

/// I_q values for a list of thresholds, for one network x strategy run.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexReport {
    pub thresholds: Vec<f64>,
    pub values: Vec<f64>,
    pub measure: Measure,
    pub strategy: String,
}

/// Number of removal steps covered by threshold `q`: floor(q * M), with a
/// tiny slack so exact products are not lost to float rounding.
pub(crate) fn threshold_steps(q: f64, m_total: usize) -> usize {
    (q * m_total as f64 + 1e-9).floor() as usize
}

/// Signed area between the curve and the baseline 1 - r over (0, q].
pub fn i_index(curve: &PerformanceCurve, q: f64) -> Result<f64, IndexError> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(IndexError::ThresholdOutOfRange(q));
    }
    if curve.points.is_empty() {
        return Err(IndexError::EmptyCurve);
    }
    let m = curve.m_total as f64;
    let steps = threshold_steps(q, curve.m_total);
    let mut sum = 0.0;
    for k in 1..=steps {
        let s = curve.points[k - 1].1;
        let baseline = 1.0 - k as f64 / m;
        sum += s - baseline;
    }
    Ok(sum / m)
}

/// One I_q per threshold. Thresholds must be ascending, each in (0, 1].
pub fn index_report(
    curve: &PerformanceCurve,
    thresholds: &[f64],
    strategy: &str,
) -> Result<IndexReport, IndexError> {
    if thresholds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(IndexError::UnsortedThresholds);
    }
    let values = thresholds
        .iter()
        .map(|&q| i_index(curve, q))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(IndexReport {
        thresholds: thresholds.to_vec(),
        values,
        measure: curve.measure,
        strategy: strategy.to_owned(),
    })
}

/// Largest I_q any curve with M edges can reach at threshold `q`; attained
/// only when the giant component keeps every node until step floor(q*M).
pub fn ceiling(q: f64, m_total: usize) -> f64 {
    let k = threshold_steps(q, m_total) as f64;
    let m = m_total as f64;
    k * (k + 1.0) / (2.0 * m * m)
}

pub const DEFAULT_THRESHOLDS: [f64; 4] = [0.2, 0.5, 0.7, 1.0];
