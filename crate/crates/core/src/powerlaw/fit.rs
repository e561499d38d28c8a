use serde::{Deserialize, Serialize};

use super::zeta::zeta_scaled;
use crate::error::{Error, Result};

/// Cutoff, exponent and goodness of fit of the best power-law tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailFit {
    pub xmin: u64,
    pub alpha: f64,
    pub ks_statistic: f64,
    pub n_tail: usize,
}

const PREFERRED_TAIL: usize = 10;

fn check_positive(data: &[u64]) -> Result<()> {
    if data.contains(&0) {
        return Err(Error::InvalidArgument(
            "power-law data must be positive integers".into(),
        ));
    }
    Ok(())
}

fn alpha_from_sums(n_tail: usize, log_sum: f64, xmin: u64) -> f64 {
    1.0 + n_tail as f64 / (log_sum - n_tail as f64 * (xmin as f64 - 0.5).ln())
}

/// Discrete maximum-likelihood exponent for the tail `x >= xmin`, using the
/// `xmin - 1/2` approximation.
pub fn fit_alpha(data: &[u64], xmin: u64) -> Result<f64> {
    check_positive(data)?;
    if xmin == 0 {
        return Err(Error::InvalidArgument("xmin must be at least 1".into()));
    }
    let tail: Vec<f64> = data
        .iter()
        .filter(|&&x| x >= xmin)
        .map(|&x| (x as f64).ln())
        .collect();
    if tail.len() < 2 {
        return Err(Error::Degenerate {
            what: "power-law fit",
            reason: format!("{} observations at or above xmin {xmin}", tail.len()),
        });
    }
    Ok(alpha_from_sums(tail.len(), tail.iter().sum(), xmin))
}

/// Continuous maximum-likelihood exponent, as a cross-check of [`fit_alpha`].
pub fn fit_alpha_continuous(data: &[u64], xmin: u64) -> Result<f64> {
    check_positive(data)?;
    let xm = xmin as f64;
    let logs: Vec<f64> = data
        .iter()
        .filter(|&&x| x >= xmin)
        .map(|&x| (x as f64 / xm).ln())
        .collect();
    let sum: f64 = logs.iter().sum();
    if logs.len() < 2 || sum <= 0.0 {
        return Err(Error::Degenerate {
            what: "power-law fit",
            reason: "tail too small for the continuous estimator".into(),
        });
    }
    Ok(1.0 + logs.len() as f64 / sum)
}

/// Kolmogorov-Smirnov distance between the empirical tail and the fitted
/// discrete power law. `values` are the distinct tail values ascending,
/// `counts` their multiplicities.
fn ks_distance(values: &[u64], counts: &[usize], n_tail: usize, alpha: f64, xmin: u64) -> f64 {
    let base = xmin as f64;
    let zmin = zeta_scaled(alpha, base, base);
    let term = |x: u64| (-alpha * (x as f64 / base).ln()).exp();
    let nt = n_tail as f64;
    let mut cum = 0usize;
    let mut ks = 0.0f64;
    let mut prev: Option<(u64, f64)> = None;
    for (&v, &c) in values.iter().zip(counts) {
        // z = sum_{x >= v} (x / xmin)^-alpha
        let z = match prev {
            Some((p, zp)) if p + 1 == v => zp - term(p),
            _ if v == xmin => zmin,
            _ => zeta_scaled(alpha, v as f64, base),
        };
        if v > xmin {
            // just below v: empirical mass so far against model P(X <= v - 1)
            let model = 1.0 - z / zmin;
            ks = ks.max((cum as f64 / nt - model).abs());
        }
        cum += c;
        let model = 1.0 - (z - term(v)) / zmin;
        ks = ks.max((cum as f64 / nt - model).abs());
        prev = Some((v, z));
    }
    ks
}

/// Scan candidate cutoffs and keep the one whose fitted tail has the smallest
/// KS distance, preferring the smaller cutoff on ties.
///
/// Candidates are the distinct observed values leaving at least 10 tail
/// observations, or at least 2 when the sample itself is smaller than 10.
pub fn select_xmin(data: &[u64]) -> Result<TailFit> {
    check_positive(data)?;
    let mut sorted = data.to_vec();
    sorted.sort_unstable();
    select_sorted(&sorted)
}

pub(crate) fn select_sorted(sorted: &[u64]) -> Result<TailFit> {
    let n = sorted.len();
    let mut values = Vec::new();
    let mut starts = Vec::new();
    for (i, &x) in sorted.iter().enumerate() {
        if values.last() != Some(&x) {
            values.push(x);
            starts.push(i);
        }
    }
    if values.len() < 2 {
        return Err(Error::Degenerate {
            what: "power-law fit",
            reason: "fewer than two distinct values".into(),
        });
    }
    let counts: Vec<usize> = starts
        .iter()
        .zip(starts.iter().skip(1).chain(std::iter::once(&n)))
        .map(|(a, b)| b - a)
        .collect();
    // suffix sums of ln x over the sorted data, one per distinct value
    let mut log_suffix = vec![0.0; values.len()];
    let mut acc = 0.0;
    for k in (0..values.len()).rev() {
        acc += counts[k] as f64 * (values[k] as f64).ln();
        log_suffix[k] = acc;
    }
    let min_tail = if n >= PREFERRED_TAIL {
        PREFERRED_TAIL
    } else {
        2
    };
    let mut best: Option<TailFit> = None;
    for k in 0..values.len() {
        let n_tail = n - starts[k];
        if n_tail < min_tail {
            break;
        }
        let xmin = values[k];
        let alpha = alpha_from_sums(n_tail, log_suffix[k], xmin);
        let ks = ks_distance(&values[k..], &counts[k..], n_tail, alpha, xmin);
        if best.is_none_or(|b| ks < b.ks_statistic) {
            best = Some(TailFit {
                xmin,
                alpha,
                ks_statistic: ks,
                n_tail,
            });
        }
    }
    best.ok_or_else(|| Error::Degenerate {
        what: "power-law fit",
        reason: "no cutoff leaves two tail observations".into(),
    })
}
