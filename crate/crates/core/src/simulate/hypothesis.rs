use serde::Serialize;

use super::{ExperimentConfig, ExperimentRecord, SimError};
use crate::cspath::Variant;

#[derive(Clone, Debug, Serialize)]
pub struct ExceedanceRow {
    pub c: f64,
    pub m3: u64,
    /// Points with `p_ei > ceil(c * p_n * i * ln n) + m3`.
    pub exceeding: usize,
    pub fraction: f64,
}

/// Fit of `p_ei <= ceil(c * p_n(n) * i * ln n) + M3` over all observed points.
#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub k: usize,
    pub n: usize,
    pub topology: String,
    pub variant: Variant,
    pub trials: usize,
    pub points: usize,
    pub fit_degree: u32,
    /// `p_n(n) = n^fit_degree`.
    pub p_n: f64,
    pub m3: u64,
    pub max_p_e: usize,
    pub max_p_e_trial: usize,
    /// Smallest `c` with `c * p_n * i * ln n + M3 >= p_ei` everywhere; it
    /// also satisfies the ceiling form.
    pub c_fit: f64,
    /// Infimum of the `c` satisfying the ceiling form (not itself attained
    /// when positive).
    pub c_infimum: f64,
    pub n_squared: usize,
    pub all_within_n_squared: bool,
    pub exceedance: Vec<ExceedanceRow>,
    /// For each `c` in the grid, exceedance never increases with `M3`.
    pub monotone_in_m3: bool,
}

const C_GRID: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 4.0];
const M3_GRID: [u64; 8] = [0, 1, 2, 3, 5, 10, 15, 20];

fn bound(c: f64, p_n: f64, i: usize, ln_n: f64, m3: u64) -> f64 {
    (c * p_n * i as f64 * ln_n).ceil() + m3 as f64
}

/// Fits the growth constant and tabulates exceedance over a grid of `c`
/// (including the fitted value) and `M3` values.
pub fn hypothesis_report(records: &[ExperimentRecord], cfg: &ExperimentConfig) -> Result<HypothesisReport, SimError> {
    let first = records.first().ok_or(SimError::Empty)?;
    let n = first.series.len() + 1;
    let p_n = (n as f64).powi(cfg.fit_degree as i32);
    let ln_n = (n as f64).ln();
    let points: Vec<(usize, usize)> =
        records.iter().flat_map(|r| r.series.iter().enumerate().map(|(j, &p)| (j + 1, p))).collect();
    let (mut c_fit, mut c_infimum) = (0.0f64, 0.0f64);
    for &(i, p) in &points {
        let scale = p_n * i as f64 * ln_n;
        let excess = p as f64 - cfg.m3 as f64;
        if excess > 0.0 {
            c_fit = c_fit.max(excess / scale);
            c_infimum = c_infimum.max((excess - 1.0) / scale);
        }
    }
    let mut c_grid: Vec<f64> = C_GRID.to_vec();
    c_grid.push(c_fit);
    c_grid.sort_by(f64::total_cmp);
    c_grid.dedup();
    let mut m3_grid: Vec<u64> = M3_GRID.to_vec();
    m3_grid.push(cfg.m3);
    m3_grid.sort_unstable();
    m3_grid.dedup();
    let mut exceedance = Vec::with_capacity(c_grid.len() * m3_grid.len());
    let mut monotone_in_m3 = true;
    for &c in &c_grid {
        let mut previous = usize::MAX;
        for &m3 in &m3_grid {
            let exceeding = points.iter().filter(|&&(i, p)| p as f64 > bound(c, p_n, i, ln_n, m3)).count();
            monotone_in_m3 &= exceeding <= previous;
            previous = exceeding;
            exceedance.push(ExceedanceRow {
                c,
                m3,
                exceeding,
                fraction: if points.is_empty() { 0.0 } else { exceeding as f64 / points.len() as f64 },
            });
        }
    }
    let (max_p_e_trial, max_p_e) =
        records.iter().map(|r| (r.trial, r.p_e)).max_by_key(|&(t, p)| (p, std::cmp::Reverse(t))).unwrap_or((0, 0));
    let n_squared = n * n;
    Ok(HypothesisReport {
        k: cfg.k,
        n,
        topology: cfg.topology.name(),
        variant: cfg.variant,
        trials: records.len(),
        points: points.len(),
        fit_degree: cfg.fit_degree,
        p_n,
        m3: cfg.m3,
        max_p_e,
        max_p_e_trial,
        c_fit,
        c_infimum,
        n_squared,
        all_within_n_squared: points.iter().all(|&(_, p)| p <= n_squared),
        exceedance,
        monotone_in_m3,
    })
}
