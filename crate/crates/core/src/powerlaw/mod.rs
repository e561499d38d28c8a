//! Discrete power-law fitting of degree sequences: maximum-likelihood
//! exponent, KS-based cutoff selection and a bootstrap goodness-of-fit test.

mod fit;
mod sampler;
mod zeta;

use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::stream_rng;

pub use fit::{fit_alpha, fit_alpha_continuous, select_xmin, TailFit};
pub use sampler::DiscretePowerLaw;
pub use zeta::hurwitz_zeta;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub alpha: f64,
    pub xmin: u64,
    pub ks_statistic: f64,
    pub p_value: f64,
    pub n_tail: usize,
    /// Replicates that produced a usable fit; the p-value denominator.
    pub bootstrap_n: usize,
}

pub const MIN_REPLICATES: usize = 100;

/// KS statistics of `replicates` synthetic datasets drawn from the fitted
/// model (tail) and the empirical data (body), each refitted from scratch.
///
/// Replicate `r` draws from its own stream of `seed`, so the result does not
/// depend on scheduling. Replicates whose refit is degenerate are dropped.
pub fn bootstrap_ks(data: &[u64], fit: &TailFit, replicates: usize, seed: u64) -> Result<Vec<f64>> {
    if data.is_empty() {
        return Err(Error::InvalidArgument("no data to resample".into()));
    }
    let model = DiscretePowerLaw::new(fit.alpha, fit.xmin)?;
    let body: Vec<u64> = data.iter().copied().filter(|&x| x < fit.xmin).collect();
    let n = data.len();
    let p_tail = fit.n_tail as f64 / n as f64;
    let ks: Vec<Option<f64>> = (0..replicates as u64)
        .into_par_iter()
        .map_init(Vec::new, |sample, r| {
            let mut rng = stream_rng(seed, r);
            sample.clear();
            sample.extend((0..n).map(|_| {
                if body.is_empty() || rng.random::<f64>() < p_tail {
                    model.sample(&mut rng)
                } else {
                    body[rng.random_range(0..body.len())]
                }
            }));
            sample.sort_unstable();
            fit::select_sorted(sample).ok().map(|f| f.ks_statistic)
        })
        .collect();
    Ok(ks.into_iter().flatten().collect())
}

/// Fraction of replicate statistics at least as large as `observed`.
pub fn pvalue_from_replicates(observed: f64, replicate_ks: &[f64]) -> f64 {
    if replicate_ks.is_empty() {
        return 0.0;
    }
    replicate_ks.iter().filter(|&&k| k >= observed).count() as f64 / replicate_ks.len() as f64
}

fn check_replicates(replicates: usize) -> Result<()> {
    if replicates < MIN_REPLICATES {
        return Err(Error::InvalidArgument(format!(
            "at least {MIN_REPLICATES} bootstrap replicates are required, got {replicates}"
        )));
    }
    Ok(())
}

pub fn gof_pvalue(data: &[u64], fit: &TailFit, replicates: usize, seed: u64) -> Result<f64> {
    check_replicates(replicates)?;
    let ks = bootstrap_ks(data, fit, replicates, seed)?;
    Ok(pvalue_from_replicates(fit.ks_statistic, &ks))
}

/// Cutoff selection, exponent and bootstrap p-value in one call.
pub fn fit_power_law(data: &[u64], replicates: usize, seed: u64) -> Result<PowerLawFit> {
    check_replicates(replicates)?;
    let tail = select_xmin(data)?;
    let ks = bootstrap_ks(data, &tail, replicates, seed)?;
    if ks.is_empty() {
        return Err(Error::Degenerate {
            what: "power-law fit",
            reason: "no bootstrap replicate could be refitted".into(),
        });
    }
    Ok(PowerLawFit {
        alpha: tail.alpha,
        xmin: tail.xmin,
        ks_statistic: tail.ks_statistic,
        p_value: pvalue_from_replicates(tail.ks_statistic, &ks),
        n_tail: tail.n_tail,
        bootstrap_n: ks.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreeCount {
    pub degree: u64,
    pub count: usize,
    /// Fraction of observations with degree >= this one.
    pub ccdf: f64,
}

/// Frequency table of a degree sequence, ascending by degree.
pub fn degree_distribution(degrees: &[u64]) -> Vec<DegreeCount> {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let n = sorted.len() as f64;
    let mut rows: Vec<DegreeCount> = Vec::new();
    for (i, &d) in sorted.iter().enumerate() {
        match rows.last_mut() {
            Some(row) if row.degree == d => row.count += 1,
            _ => rows.push(DegreeCount {
                degree: d,
                count: 1,
                ccdf: (sorted.len() - i) as f64 / n,
            }),
        }
    }
    rows
}

pub fn write_degree_csv(rows: &[DegreeCount], out: &mut dyn Write) -> Result<()> {
    writeln!(out, "degree,count,ccdf")?;
    for r in rows {
        writeln!(out, "{},{},{}", r.degree, r.count, r.ccdf)?;
    }
    Ok(())
}
